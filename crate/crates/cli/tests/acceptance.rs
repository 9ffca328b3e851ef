//! Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails. Runs without the libtest harness so the lines are
//! always visible.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use excover::atlas::{catalogue, example_three_cover};
use excover::bounds::{check_intersections, divisibility_lower_bound, IntersectionKind};
use excover::cover::{enumerate_covers, verify_cover, CoverCertificate};
use excover::covering::{iterated_common_covering, lift_cover, structure_check, verify_covering};
use excover::io::{read_cover, read_ggf};
use excover::pipeline::{build_all_covers, vertex_count, Strategy};
use excover::transit::{extreme_point_construction, in_region, transit_probabilities};
use excover::{BigUint, GeneralizedGraph, Rat};
use excover_cli::run_with;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["excover"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn read_dir_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

fn criterion_1() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out_dir = dir.path().to_str().unwrap();
    let (code, out, err) = cli(&["build", "--degree", "3", "--strategy", "minimal", "--out-dir", out_dir]);
    within(start, Duration::from_secs(1), "d=3 build")?;
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    ensure(out.contains("vertices 40"), || format!("unexpected output {out}"))?;
    let g = read_ggf(&fs::read_to_string(dir.path().join("graph.ggf")).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        g.n_vertices() == 40 && g.is_simple() && g.regular_degree() == Some(3),
        || "graph is not a simple 3-regular graph on 40 vertices".into(),
    )?;
    for r in 1..=3 {
        let c = read_cover(&fs::read_to_string(dir.path().join(format!("cover_r{r}.txt"))).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(verify_cover(&g, &c).map_err(|e| e.to_string())?.ok, || {
            format!("cover r={r} rejected")
        })?;
    }
    Ok("simple 3-regular, 40 vertices, r=1,2,3 verify".into())
}

fn criterion_2() -> Check {
    let mut seen = Vec::new();
    for (d, want) in [(4, 210), (5, 6048), (6, 9240)] {
        let start = Instant::now();
        let b = build_all_covers(d, Strategy::Minimal).map_err(|e| e.to_string())?;
        let n = b.graph.n_vertices();
        ensure(n == want, || format!("d={d}: {n} vertices, expected {want}"))?;
        ensure(b.graph.is_simple(), || format!("d={d}: not simple"))?;
        ensure(b.covers.len() == d, || format!("d={d}: {} covers", b.covers.len()))?;
        for c in &b.covers {
            let ok = verify_cover(&b.graph, c).map_err(|e| e.to_string())?.ok;
            ensure(ok, || format!("d={d}: cover r={} rejected", c.r()))?;
        }
        within(start, Duration::from_secs(10), &format!("d={d} build"))?;
        seen.push(format!("d={d}:{n}"));
    }
    Ok(seen.join(" "))
}

fn criterion_3() -> Check {
    for (d, want) in [(3, 40u64), (4, 210), (5, 6048), (6, 9240), (7, 1_235_520)] {
        let got = divisibility_lower_bound(d).combined_lb;
        ensure(got == BigUint::from(want), || {
            format!("d={d}: lower bound {got}, expected {want}")
        })?;
    }
    let ub = vertex_count(7, Strategy::Minimal);
    ensure(ub == BigUint::from(2_471_040u64), || format!("vertex_count(7) = {ub}"))?;
    ensure(
        ub == BigUint::from(2u32) * divisibility_lower_bound(7).combined_lb,
        || "d=7 gap is not a factor of 2".into(),
    )?;
    Ok("40 210 6048 9240 1235520; d=7 gap 2471040/1235520 = 2".into())
}

fn criterion_4() -> Check {
    let mut total = 0;
    for d in 1..=6 {
        let b = build_all_covers(d, Strategy::Minimal).map_err(|e| e.to_string())?;
        let rep = check_intersections(&b.graph, &b.covers).map_err(|e| e.to_string())?;
        if let Some(bad) = rep.checks.iter().find(|c| c.asserted() && !c.holds) {
            return Err(format!(
                "d={d}: {:?} actual {} expected {}",
                bad.rs, bad.actual, bad.expected
            ));
        }
        let pairs = rep.checks.iter().filter(|c| c.kind == IntersectionKind::Pair).count();
        let triples = rep
            .checks
            .iter()
            .filter(|c| c.kind == IntersectionKind::TripleWithD)
            .count();
        ensure(pairs == d * (d - 1) / 2, || format!("d={d}: {pairs} pair checks"))?;
        ensure(triples == (d - 1) * d.saturating_sub(2) / 2, || {
            format!("d={d}: {triples} triple checks")
        })?;
        total += pairs + triples;
        if d == 3 {
            let s13 = rep.find(IntersectionKind::Pair, &[1, 3]).map(|c| c.actual);
            ensure(s13 == Some(5), || format!("d=3 |S1∩S3| = {s13:?}"))?;
        }
    }
    Ok(format!("{total} exact intersection laws hold; d=3 |S1∩S3| = 5"))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let ex = example_three_cover().map_err(|e| e.to_string())?;
    let g = &ex.graph;
    let n = g.n_vertices();
    ensure(n == 2184 && g.regular_degree() == Some(105), || format!("{n} vertices"))?;
    for (c, r) in ex.covers.iter().zip([77, 21, 35]) {
        ensure(c.r() == r && verify_cover(g, c).map_err(|e| e.to_string())?.ok, || {
            format!("cover r={r} rejected")
        })?;
    }
    let masks: Vec<Vec<bool>> = ex.covers.iter().map(|c| c.membership(n)).collect();
    let meet = |idx: &[usize]| (0..n).filter(|&v| idx.iter().all(|&i| masks[i][v])).count();
    let (s23, s123) = (meet(&[1, 2]), meet(&[0, 1, 2]));
    ensure(s23 == 91 && s123 == 91, || {
        format!("|S2∩S3| = {s23}, |S1∩S2∩S3| = {s123}")
    })?;
    let product = ex.covers.iter().fold(Rat::from_integer(1.into()), |a, c| {
        a * Rat::from_integer(c.len().into())
    }) / Rat::from_integer((n * n).into());
    ensure(product == Rat::new(77.into(), 2.into()), || {
        format!("product {product}")
    })?;
    ensure(Rat::from_integer(s123.into()) > product, || {
        "no strict inequality".into()
    })?;
    within(start, Duration::from_secs(60), "three-cover example")?;
    Ok("2184 vertices, 105-regular; |S2∩S3| = |S1∩S2∩S3| = 91 > 77/2".into())
}

fn criterion_6() -> Check {
    let mut maps = 0;
    for strategy in [Strategy::Minimal, Strategy::SimpleFactors] {
        let top = if strategy == Strategy::Minimal { 6 } else { 4 };
        for d in 1..=top {
            let b = build_all_covers(d, strategy).map_err(|e| e.to_string())?;
            for p in &b.projections {
                if let Some(v) = verify_covering(p).first_violation {
                    return Err(format!("d={d} {strategy}: {v}"));
                }
                let s = structure_check(p).map_err(|e| e.to_string())?;
                ensure(s.ok(), || format!("d={d} {strategy}: {:?}", s.first_violation))?;
                maps += 1;
            }
        }
    }
    let atlas = catalogue(6).map_err(|e| e.to_string())?;
    let seeds = 128u64;
    for seed in 0..seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=6);
        let pool: Vec<_> = atlas.iter().filter(|e| e.d() == d).collect();
        let mut picked: Vec<_> = (0..rng.gen_range(1..=3))
            .map(|_| *pool.choose(&mut rng).unwrap())
            .collect();
        while picked.iter().map(|e| e.graph.n_vertices()).product::<usize>() > 4000 {
            picked.pop();
        }
        let inputs: Vec<_> = picked
            .iter()
            .map(|e| (Arc::new(e.graph.clone()), e.matching.clone()))
            .collect();
        let folded = iterated_common_covering(&inputs).map_err(|e| format!("seed {seed}: {e}"))?;
        for (entry, p) in picked.iter().zip(&folded.projections) {
            if let Some(v) = verify_covering(p).first_violation {
                return Err(format!("seed {seed}: {v}"));
            }
            ensure(structure_check(p).map_err(|e| e.to_string())?.ok(), || {
                format!("seed {seed}: structure")
            })?;
            let lifted = lift_cover(p, &entry.cover).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(
                verify_cover(&folded.graph, &lifted).map_err(|e| e.to_string())?.ok,
                || format!("seed {seed}: lifted cover rejected"),
            )?;
            maps += 1;
        }
    }
    Ok(format!("{maps} covering maps sound, {seeds} random seeds"))
}

fn unpruned_covers(g: &GeneralizedGraph, r: usize, d: usize) -> Vec<Vec<usize>> {
    let n = g.n_vertices();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| CoverCertificate::new(s.clone(), r, d).is_ok_and(|c| verify_cover(g, &c).is_ok_and(|rep| rep.ok)))
        .sorted()
        .collect()
}

fn criterion_7() -> Check {
    let (mut graphs, mut pairs) = (0, 0);
    for entry in catalogue(11).map_err(|e| e.to_string())? {
        let g = &entry.graph;
        if g.n_vertices() > 12 {
            continue;
        }
        graphs += 1;
        for r in 1..=entry.d() {
            let fast: Vec<Vec<usize>> = enumerate_covers(g, r)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|c| c.subset().to_vec())
                .collect();
            let slow = unpruned_covers(g, r, entry.d());
            ensure(fast == slow, || {
                format!(
                    "{} d={} r={r}: {} vs {} covers",
                    entry.construction_case,
                    entry.d(),
                    fast.len(),
                    slow.len()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{graphs} atlas graphs, {pairs} (graph, r) pairs agree"))
}

/// Simple `d`-regular graphs on `n` vertices, one per isomorphism class.
///
/// Vertex 0 is fixed adjacent to `1..=d` (every class has such a labelling),
/// the rest is completed by backtracking, and classes are separated by an
/// exact isomorphism test.
fn regular_graphs(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn complete(n: usize, d: usize, adj: &mut Vec<u32>, found: &mut Vec<Vec<u32>>) {
        let Some(u) = (0..n).find(|&u| (adj[u].count_ones() as usize) < d) else {
            found.push(adj.clone());
            return;
        };
        let last = (0..n).filter(|&w| adj[u] >> w & 1 == 1).max();
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 || (adj[v].count_ones() as usize) >= d {
                continue;
            }
            // keep each vertex's new neighbours increasing to avoid repeats
            if last.is_some_and(|l| l > u && v < l) {
                continue;
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            complete(n, d, adj, found);
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
    }
    fn isomorphic(a: &[u32], b: &[u32]) -> bool {
        fn extend(a: &[u32], b: &[u32], map: &mut Vec<usize>, used: u32) -> bool {
            let i = map.len();
            if i == a.len() {
                return true;
            }
            for j in 0..b.len() {
                if used >> j & 1 == 1 {
                    continue;
                }
                if (0..i).all(|k| (a[i] >> k & 1) == (b[j] >> map[k] & 1)) {
                    map.push(j);
                    if extend(a, b, map, used | 1 << j) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        extend(a, b, &mut Vec::new(), 0)
    }
    let mut adj = vec![0u32; n];
    for v in 1..=d {
        adj[0] |= 1 << v;
        adj[v] |= 1;
    }
    let mut labelled = Vec::new();
    complete(n, d, &mut adj, &mut labelled);
    let invariant = |g: &[u32]| -> Vec<u32> {
        let mut t: Vec<u32> = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&v| g[u] >> v & 1 == 1)
                    .map(|v| (g[u] & g[v]).count_ones())
                    .sum()
            })
            .collect();
        t.sort_unstable();
        t
    };
    let mut reps: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for g in labelled {
        let inv = invariant(&g);
        if !reps.iter().any(|(i, h)| *i == inv && isomorphic(&g, h)) {
            reps.push((inv, g));
        }
    }
    reps.into_iter().map(|(_, g)| g).collect()
}

fn to_graph(adj: &[u32]) -> GeneralizedGraph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)))
        .collect();
    GeneralizedGraph::from_edges(n, &edges, &[], &[]).unwrap()
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let b = build_all_covers(3, Strategy::Minimal).map_err(|e| e.to_string())?;
    let rat = |p: usize, q: usize| Rat::new(p.into(), q.into());
    let (big, red) = extreme_point_construction(&b.graph, &b.covers[0]).map_err(|e| e.to_string())?;
    ensure(2 * red.len() == big.n_vertices(), || "unbalanced red set".into())?;
    let pair = transit_probabilities(&big, &red).map_err(|e| e.to_string())?;
    ensure(pair == (rat(2, 3), rat(4, 9)), || format!("r=1 gives {pair:?}"))?;
    let (big, red) = extreme_point_construction(&b.graph, &b.covers[2]).map_err(|e| e.to_string())?;
    let pair = transit_probabilities(&big, &red).map_err(|e| e.to_string())?;
    ensure(pair == (rat(0, 1), rat(0, 1)), || format!("r=d gives {pair:?}"))?;

    // classes of simple regular graphs on an even number of vertices up to 8
    let expected_classes: BTreeMap<(usize, usize), usize> = [
        ((2, 1), 1),
        ((4, 1), 1),
        ((4, 2), 1),
        ((4, 3), 1),
        ((6, 1), 1),
        ((6, 2), 2),
        ((6, 3), 2),
        ((6, 4), 1),
        ((6, 5), 1),
        ((8, 1), 1),
        ((8, 2), 3),
        ((8, 3), 6),
        ((8, 4), 6),
        ((8, 5), 3),
        ((8, 6), 1),
        ((8, 7), 1),
    ]
    .into_iter()
    .collect();
    let (mut graphs, mut colorings) = (0, 0);
    for (&(n, d), &count) in &expected_classes {
        let classes = regular_graphs(n, d);
        ensure(classes.len() == count, || {
            format!("n={n} d={d}: {} classes, expected {count}", classes.len())
        })?;
        for adj in classes {
            let g = to_graph(&adj);
            graphs += 1;
            for red in (0..n).combinations(n / 2) {
                let (pr, pb) = transit_probabilities(&g, &red).map_err(|e| e.to_string())?;
                ensure(in_region(&(pr.clone(), pb.clone()), d), || {
                    format!("n={n} d={d} red={red:?}: ({pr}, {pb}) outside the region")
                })?;
                colorings += 1;
            }
        }
    }
    within(start, Duration::from_secs(60), "transit checks")?;
    Ok(format!(
        "(2/3, 4/9) at r=1, (0, 0) at r=d; {colorings} balanced colorings of {graphs} graphs inside the region"
    ))
}

fn criterion_9() -> Check {
    let mut compared = 0;
    for (d, strategy) in [
        (3, "minimal"),
        (4, "minimal"),
        (5, "minimal"),
        (6, "minimal"),
        (3, "simple"),
    ] {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        for dir in [&a, &b] {
            let (code, _, err) = cli(&[
                "build",
                "--degree",
                &d.to_string(),
                "--strategy",
                strategy,
                "--out-dir",
                dir.path().to_str().unwrap(),
            ]);
            ensure(code == 0, || format!("d={d}: exit {code}: {err}"))?;
        }
        let (fa, fb) = (read_dir_files(a.path()), read_dir_files(b.path()));
        ensure(fa == fb, || format!("d={d} {strategy}: outputs differ"))?;
        compared += fa.len();
    }
    Ok(format!("{compared} files byte-identical across two runs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 degree-3 build", criterion_1),
        ("2 degree 4-6 builds", criterion_2),
        ("3 divisibility lower bounds", criterion_3),
        ("4 intersection laws", criterion_4),
        ("5 three-cover example", criterion_5),
        ("6 covering soundness", criterion_6),
        ("7 cover enumeration oracle", criterion_7),
        ("8 transit probabilities", criterion_8),
        ("9 determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({:.2?})", start.elapsed()),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
