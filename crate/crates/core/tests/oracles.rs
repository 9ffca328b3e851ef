//! Independent oracles: unpruned subset search for covers, and closed-form
//! intersection laws on every build up to degree 6.

use excover::atlas::catalogue;
use excover::bounds::{check_intersections, IntersectionKind};
use excover::cover::{enumerate_covers, verify_cover, CoverCertificate};
use excover::covering::{structure_check, verify_covering};
use excover::pipeline::{build_all_covers, Strategy};
use excover::GeneralizedGraph;

/// Every subset of the vertex set, with no size prune, kept when `verify_cover` accepts it.
fn unpruned_covers(g: &GeneralizedGraph, r: usize, d: usize) -> Vec<Vec<usize>> {
    let n = g.n_vertices();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let Ok(c) = CoverCertificate::new(subset.clone(), r, d) else {
            continue;
        };
        if verify_cover(g, &c).unwrap().ok {
            out.push(subset);
        }
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_unpruned_search() {
    let mut graphs = 0;
    for entry in catalogue(11).unwrap() {
        let g = &entry.graph;
        if g.n_vertices() > 12 {
            continue;
        }
        graphs += 1;
        let d = entry.d();
        for r in 1..=d {
            let fast: Vec<Vec<usize>> = enumerate_covers(g, r)
                .unwrap()
                .into_iter()
                .map(|c| c.subset().to_vec())
                .collect();
            assert_eq!(
                fast,
                unpruned_covers(g, r, d),
                "{} d={d} r={r}",
                entry.construction_case
            );
        }
        assert!(enumerate_covers(g, entry.r()).unwrap().contains(&entry.cover));
    }
    assert!(graphs > 40);
}

#[test]
fn builds_satisfy_intersection_laws() {
    for d in 1..=6 {
        let b = build_all_covers(d, Strategy::Minimal).unwrap();
        assert!(b.graph.is_simple(), "d={d}");
        let rep = check_intersections(&b.graph, &b.covers).unwrap();
        assert!(
            rep.ok(),
            "d={d}: {:?}",
            rep.checks.iter().find(|c| c.asserted() && !c.holds)
        );
        let pairs = rep.checks.iter().filter(|c| c.kind == IntersectionKind::Pair).count();
        assert_eq!(pairs, d * (d - 1) / 2);
        for p in &b.projections {
            assert!(verify_covering(p).ok());
            assert!(structure_check(p).unwrap().ok());
        }
    }
    let b = build_all_covers(3, Strategy::Minimal).unwrap();
    let rep = check_intersections(&b.graph, &b.covers).unwrap();
    assert_eq!(rep.find(IntersectionKind::Pair, &[1, 3]).unwrap().actual, 5);
}

#[test]
fn simple_strategy_builds_verify() {
    for d in 1..=3 {
        let b = build_all_covers(d, Strategy::SimpleFactors).unwrap();
        let expected: usize = (1..=d).map(|r| d + r).product();
        assert_eq!(b.graph.n_vertices(), expected);
        assert!(check_intersections(&b.graph, &b.covers).unwrap().ok());
    }
}
