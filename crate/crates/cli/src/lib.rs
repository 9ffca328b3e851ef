//! The `excover` command line: build, verify, atlas, example3, lowerbound,
//! transit and convert.
//!
//! Exit codes: 0 on success, 1 when an input is unreadable or malformed or a
//! check fails, 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use excover::atlas::{catalogue, complete_entry, compressed_graph, dipole_entry, example_three_cover, small_graph};
use excover::bounds::{check_intersections, divisibility_lower_bound, exact_bound_values};
use excover::cover::verify_cover;
use excover::covering::{structure_check, verify_covering};
use excover::io::{
    read_cover, read_covmap, read_edges, read_ggf, read_vertex_set, write_cover, write_covmap, write_edges, write_ggf,
};
use excover::pipeline::{build_all_covers, vertex_count, LARGE_BUILD_DEGREE};
use excover::transit::{transit_probabilities, RegionDd};
use excover::{AtlasEntry, CoveringMap, GeneralizedGraph, Rat, Strategy};
use serde_json::json;
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) | Failure::Check(_) => 1,
        }
    }
}

impl From<excover::Error> for Failure {
    fn from(e: excover::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

#[derive(Debug, Parser)]
#[command(name = "excover", version, about = "Regular graphs with independent exact r-covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a d-regular simple graph carrying an exact r-cover for every r <= d.
    Build(BuildArgs),
    /// Check a cover certificate and/or a covering map.
    Verify(VerifyArgs),
    /// Emit one small factor graph, or list them all.
    Atlas(AtlasArgs),
    /// Emit the 2184-vertex graph with three exact covers and report its intersections.
    Example3(Example3Args),
    /// Divisibility lower bounds and construction sizes for one degree.
    Lowerbound(LowerboundArgs),
    /// Exact 2-step transit probabilities of a balanced coloring.
    Transit(TransitArgs),
    /// Convert between GGF and edge-list files.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Minimal,
    Simple,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Minimal => Strategy::Minimal,
            StrategyArg::Simple => Strategy::SimpleFactors,
        }
    }
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[arg(long)]
    degree: usize,
    #[arg(long, value_enum, default_value = "minimal")]
    strategy: StrategyArg,
    #[arg(long)]
    out_dir: PathBuf,
    /// Permit degrees whose builds run to millions of vertices.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Covering map from `--graph` onto `--target`.
    #[arg(long, requires = "target")]
    covmap: Option<PathBuf>,
    #[arg(long, requires = "covmap")]
    target: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Small,
    Compressed,
    Complete,
    Dipole,
}

#[derive(Debug, Args)]
struct AtlasArgs {
    #[arg(long, value_enum, required_unless_present = "list")]
    family: Option<Family>,
    #[arg(long, required_unless_present = "list")]
    degree: Option<usize>,
    /// Cover parameter; fixed to 1 for `complete` and to d for `dipole`.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// List every entry up to `--max-degree`.
    #[arg(long, conflicts_with_all = ["family", "out_dir"])]
    list: bool,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
}

#[derive(Debug, Args)]
struct Example3Args {
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LowerboundArgs {
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct TransitArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Red vertex ids, whitespace separated.
    #[arg(long)]
    red: PathBuf,
    /// Also test membership in the attainable region; exit 1 when outside.
    #[arg(long)]
    check_region: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ggf,
    Edges,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Input format; detected from the first line when omitted.
    #[arg(long, value_enum)]
    from: Option<Format>,
    #[arg(long, value_enum)]
    to: Format,
}

/// Runs the CLI on `argv` (program name first), printing to the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    let mut text = String::new();
    let result = match cli.command {
        Command::Build(a) => build(a, &mut text),
        Command::Verify(a) => verify(a, &mut text),
        Command::Atlas(a) => atlas(a, &mut text),
        Command::Example3(a) => example3(a, &mut text),
        Command::Lowerbound(a) => lowerbound(a, &mut text),
        Command::Transit(a) => transit(a, &mut text),
        Command::Convert(a) => convert(a, &mut text),
    };
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<GeneralizedGraph, Failure> {
    read_ggf(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes files in order and returns `(name, sha256)` for each.
fn write_files(dir: &Path, files: &[(String, String)]) -> Result<Vec<(String, String)>, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    files
        .iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok((name.clone(), format!("{:x}", Sha256::digest(body.as_bytes()))))
        })
        .collect()
}

fn fraction(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn build(a: BuildArgs, out: &mut String) -> Outcome {
    if a.degree == 0 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    if a.degree >= LARGE_BUILD_DEGREE && !a.allow_large {
        let n = vertex_count(a.degree, a.strategy.into());
        return Err(Failure::Usage(format!(
            "degree {} builds a graph on {n} vertices; pass --allow-large to proceed",
            a.degree
        )));
    }
    let strategy: Strategy = a.strategy.into();
    let b = build_all_covers(a.degree, strategy)?;
    for (r, p) in (1..).zip(&b.projections) {
        if let Some(v) = verify_covering(p).first_violation {
            return Err(Failure::Check(format!("projection r={r}: {v}")));
        }
        if let Some(v) = structure_check(p)?.first_violation {
            return Err(Failure::Check(format!("projection r={r}: {v}")));
        }
    }
    let mut files = vec![("graph.ggf".to_string(), write_ggf(&b.graph))];
    for ((entry, cover), proj) in b.factor_list.iter().zip(&b.covers).zip(&b.projections) {
        let r = cover.r();
        files.push((format!("cover_r{r}.txt"), write_cover(cover)));
        files.push((format!("factor_r{r}.ggf"), write_ggf(&entry.graph)));
        files.push((format!("factor_cover_r{r}.txt"), write_cover(&entry.cover)));
        files.push((format!("proj_r{r}.covmap"), write_covmap(proj.dart_map())));
    }
    let digests = write_files(&a.out_dir, &files)?;
    let manifest = json!({
        "degree": a.degree,
        "strategy": strategy.as_str(),
        "vertex_count": b.graph.n_vertices(),
        "simple": b.graph.is_simple(),
        "factor_orders": b.factor_list.iter().map(|e| e.graph.n_vertices()).collect::<Vec<_>>(),
        "factor_cases": b.factor_list.iter().map(|e| e.construction_case.as_str()).collect::<Vec<_>>(),
        "files": digests.iter().map(|(name, sha)| json!({"name": name, "sha256": sha})).collect::<Vec<_>>(),
    });
    let mut body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    body.push('\n');
    write_files(&a.out_dir, &[("manifest.json".to_string(), body)])?;
    writeln!(
        out,
        "degree {} strategy {} vertices {}",
        a.degree,
        strategy,
        b.graph.n_vertices()
    )
    .unwrap();
    writeln!(out, "simple {}", b.graph.is_simple()).unwrap();
    for c in &b.covers {
        writeln!(out, "cover r={} size={} ok", c.r(), c.len()).unwrap();
    }
    writeln!(out, "wrote {} files to {}", files.len() + 1, a.out_dir.display()).unwrap();
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut String) -> Outcome {
    if a.cover.is_none() && a.covmap.is_none() {
        return Err(Failure::Usage("nothing to verify: pass --cover and/or --covmap".into()));
    }
    let g = Arc::new(read_graph(&a.graph)?);
    if let Some(path) = &a.cover {
        let c = read_cover(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let report = verify_cover(&g, &c).map_err(|e| Failure::Check(format!("cover rejected: {e}")))?;
        if let Some(first) = report.failures.first() {
            return Err(Failure::Check(format!("cover rejected: {first}")));
        }
        writeln!(out, "cover ok d={} r={} size={}", c.d(), c.r(), c.len()).unwrap();
    }
    if let (Some(map_path), Some(target_path)) = (&a.covmap, &a.target) {
        let target = Arc::new(read_graph(target_path)?);
        let dart_map =
            read_covmap(&read_text(map_path)?).map_err(|e| Failure::Input(format!("{}: {e}", map_path.display())))?;
        let cm = CoveringMap::from_dart_map(g.clone(), target, dart_map)
            .map_err(|e| Failure::Check(format!("covering rejected: {e}")))?;
        if let Some(v) = verify_covering(&cm).first_violation {
            return Err(Failure::Check(format!("covering rejected (item {}): {v}", v.item())));
        }
        if let Some(v) = structure_check(&cm)?.first_violation {
            return Err(Failure::Check(format!("covering structure rejected: {v}")));
        }
        writeln!(
            out,
            "covering ok source={} target={}",
            cm.source().n_vertices(),
            cm.target().n_vertices()
        )
        .unwrap();
    }
    Ok(())
}

fn atlas_entry(family: Family, d: usize, r: Option<usize>) -> Result<AtlasEntry, Failure> {
    let need_r = || r.ok_or_else(|| Failure::Usage("--r is required for this family".into()));
    let fixed = |want: usize| match r {
        Some(given) if given != want => Err(Failure::Usage(format!("this family only has r = {want}"))),
        _ => Ok(()),
    };
    Ok(match family {
        Family::Small => small_graph(d, need_r()?)?,
        Family::Compressed => compressed_graph(d, need_r()?)?,
        Family::Complete => {
            fixed(1)?;
            complete_entry(d)?
        }
        Family::Dipole => {
            fixed(d)?;
            dipole_entry(d)?
        }
    })
}

fn describe(e: &AtlasEntry) -> String {
    let class = e.graph.classify();
    format!(
        "d={} r={} case={} vertices={} simple={} semi_edges={} cover={:?}",
        e.d(),
        e.r(),
        e.construction_case,
        e.graph.n_vertices(),
        class.is_simple(),
        class.has_semi_edge,
        e.cover.subset()
    )
}

fn atlas(a: AtlasArgs, out: &mut String) -> Outcome {
    if a.list {
        for e in catalogue(a.max_degree)? {
            writeln!(out, "{}", describe(&e)).unwrap();
        }
        return Ok(());
    }
    let (family, d) = (a.family.expect("required by clap"), a.degree.expect("required by clap"));
    let e = atlas_entry(family, d, a.r)?;
    writeln!(out, "{}", describe(&e)).unwrap();
    if let Some(dir) = &a.out_dir {
        let mut files = vec![
            ("graph.ggf".to_string(), write_ggf(&e.graph)),
            ("cover.txt".to_string(), write_cover(&e.cover)),
        ];
        if let Some(m) = &e.matching {
            let ids: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            files.push(("matching.txt".to_string(), format!("{}\n", ids.join(" "))));
        }
        write_files(dir, &files)?;
        writeln!(out, "wrote {} files to {}", files.len(), dir.display()).unwrap();
    }
    Ok(())
}

fn example3(a: Example3Args, out: &mut String) -> Outcome {
    let ex = example_three_cover()?;
    let g = &ex.graph;
    let n = g.n_vertices();
    writeln!(out, "vertices {n} degree {}", g.regular_degree().unwrap_or(0)).unwrap();
    for (i, c) in ex.covers.iter().enumerate() {
        writeln!(out, "S{} r={} size={} ok", i + 1, c.r(), c.len()).unwrap();
    }
    let masks: Vec<Vec<bool>> = ex.covers.iter().map(|c| c.membership(n)).collect();
    let meet = |idx: &[usize]| (0..n).filter(|&v| idx.iter().all(|&i| masks[i][v])).count();
    writeln!(out, "|S1∩S2| {}", meet(&[0, 1])).unwrap();
    writeln!(out, "|S1∩S3| {}", meet(&[0, 2])).unwrap();
    writeln!(out, "|S2∩S3| {}", meet(&[1, 2])).unwrap();
    writeln!(out, "|S1∩S2∩S3| {}", meet(&[0, 1, 2])).unwrap();
    let product = ex.covers.iter().fold(Rat::from_integer(1.into()), |acc, c| {
        acc * Rat::from_integer(c.len().into())
    }) / Rat::from_integer((n * n).into());
    writeln!(out, "|S1||S2||S3|/n^2 {}", fraction(&product)).unwrap();
    let report = check_intersections(g, &ex.covers)?;
    writeln!(out, "pairwise laws {}", if report.ok() { "hold" } else { "FAIL" }).unwrap();
    if let Some(dir) = &a.out_dir {
        let mut files = vec![("graph.ggf".to_string(), write_ggf(g))];
        for (i, c) in ex.covers.iter().enumerate() {
            files.push((format!("cover_s{}.txt", i + 1), write_cover(c)));
        }
        write_files(dir, &files)?;
        writeln!(out, "wrote {} files to {}", files.len(), dir.display()).unwrap();
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Check("an intersection law failed".into()))
    }
}

fn lowerbound(a: LowerboundArgs, out: &mut String) -> Outcome {
    if a.degree == 0 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    let rep = divisibility_lower_bound(a.degree);
    let exact = exact_bound_values(a.degree);
    let gap = Rat::new(
        rep.construction_ub_minimal.clone().into(),
        rep.combined_lb.clone().into(),
    );
    if a.json {
        let triples = |v: &[(usize, usize, excover::BigUint)]| {
            v.iter()
                .map(|(r1, r2, m)| json!({"r1": r1, "r2": r2, "divisor": m.to_string()}))
                .collect::<Vec<_>>()
        };
        let value = json!({
            "d": a.degree,
            "star_divisors": rep.star_divisors.iter().map(|(r, m)| json!({"r": r, "divisor": m.to_string()})).collect::<Vec<_>>(),
            "star_lcm": rep.star_lcm.to_string(),
            "pair_constraints": triples(&rep.pair_constraints),
            "triple_constraints": triples(&rep.triple_constraints),
            "combined_lb": rep.combined_lb.to_string(),
            "diamond_lb": fraction(&rep.diamond_lb),
            "construction_ub_minimal": rep.construction_ub_minimal.to_string(),
            "construction_ub_simple": rep.construction_ub_simple.to_string(),
            "gap": fraction(&gap),
            "log_ratios": exact.log_ratios.iter().map(|(k, v)| json!({"bound": k, "ln_over_d": v})).collect::<Vec<_>>(),
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).expect("report serializes")
        )
        .unwrap();
        return Ok(());
    }
    writeln!(out, "d {}", a.degree).unwrap();
    writeln!(out, "star_lcm {}", rep.star_lcm).unwrap();
    writeln!(out, "combined_lb {}", rep.combined_lb).unwrap();
    writeln!(out, "diamond_lb {}", fraction(&rep.diamond_lb)).unwrap();
    writeln!(out, "construction_ub_minimal {}", rep.construction_ub_minimal).unwrap();
    writeln!(out, "construction_ub_simple {}", rep.construction_ub_simple).unwrap();
    writeln!(out, "gap {}", fraction(&gap)).unwrap();
    for (k, v) in &exact.log_ratios {
        writeln!(out, "ln({k})/d {v}").unwrap();
    }
    Ok(())
}

fn transit(a: TransitArgs, out: &mut String) -> Outcome {
    let g = read_graph(&a.graph)?;
    let red = read_vertex_set(&read_text(&a.red)?).map_err(|e| Failure::Input(format!("{}: {e}", a.red.display())))?;
    let (pr, pb) = transit_probabilities(&g, &red)?;
    writeln!(out, "{} {}", fraction(&pr), fraction(&pb)).unwrap();
    if a.check_region {
        let d = g.regular_degree().unwrap_or(0);
        let inside = RegionDd::new(d)?.contains(&(pr, pb));
        writeln!(out, "in_region {inside}").unwrap();
        if !inside {
            return Err(Failure::Check(format!("pair lies outside the region for d = {d}")));
        }
    }
    Ok(())
}

fn convert(a: ConvertArgs, out: &mut String) -> Outcome {
    let text = read_text(&a.input)?;
    let from = a.from.unwrap_or_else(|| {
        if text.trim_start().starts_with("ggf") {
            Format::Ggf
        } else {
            Format::Edges
        }
    });
    let g = match from {
        Format::Ggf => read_ggf(&text),
        Format::Edges => read_edges(&text, None),
    }
    .map_err(|e| Failure::Input(format!("{}: {e}", a.input.display())))?;
    let body = match a.to {
        Format::Ggf => write_ggf(&g),
        Format::Edges => write_edges(&g)?,
    };
    match &a.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => out.push_str(&body),
    }
    Ok(())
}
