//! Exact 2-step transit probabilities of balanced red/blue colorings and the
//! region of attainable pairs.
//!
//! For a red set `R`, `P2(R)` is the probability that a simple random walk
//! started at a uniformly random red vertex stays red for its next two steps.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cover::{require_cover, CoverCertificate};
use crate::error::{Error, Result};
use crate::graph::GeneralizedGraph;

/// Exact rational used for probabilities and hull coordinates.
pub type Rat = BigRational;

pub type Point = (Rat, Rat);

fn rat(n: usize, d: usize) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Sign of the turn `a -> b -> c`: positive for counterclockwise.
fn orient(a: &Point, b: &Point, c: &Point) -> Rat {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

/// Convex hull of `(0,0)`, `(l/d, l²/d²)`, `(l²/d², l/d)` for `1 <= l < d`, and `(1,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionDd {
    d: usize,
    hull_vertices: Vec<Point>,
}

impl RegionDd {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameters("degree must be at least 1".into()));
        }
        let mut pts: Vec<Point> = vec![(rat(0, 1), rat(0, 1)), (rat(1, 1), rat(1, 1))];
        for l in 1..d {
            pts.push((rat(l, d), rat(l * l, d * d)));
            pts.push((rat(l * l, d * d), rat(l, d)));
        }
        Ok(RegionDd {
            d,
            hull_vertices: convex_hull(pts),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Hull vertices in counterclockwise order starting from `(0,0)`; collinear points removed.
    pub fn hull_vertices(&self) -> &[Point] {
        &self.hull_vertices
    }

    /// Exact membership; the boundary counts as inside.
    pub fn contains(&self, p: &Point) -> bool {
        let h = &self.hull_vertices;
        match h.len() {
            0 => false,
            1 => &h[0] == p,
            2 => {
                orient(&h[0], &h[1], p).is_zero()
                    && p.0 >= h[0].0.clone().min(h[1].0.clone())
                    && p.0 <= h[0].0.clone().max(h[1].0.clone())
                    && p.1 >= h[0].1.clone().min(h[1].1.clone())
                    && p.1 <= h[0].1.clone().max(h[1].1.clone())
            }
            k => (0..k).all(|i| !orient(&h[i], &h[(i + 1) % k], p).is_negative()),
        }
    }
}

/// Monotone-chain hull, counterclockwise from the lexicographically smallest point.
fn convex_hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort_by(|a, b| match a.0.cmp(&b.0) {
        Ordering::Equal => a.1.cmp(&b.1),
        o => o,
    });
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2 && !orient(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive() {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull
}

pub fn in_region(p: &Point, d: usize) -> bool {
    RegionDd::new(d).is_ok_and(|region| region.contains(p))
}

fn stay_probability(nbrs: &[Vec<usize>], member: &[bool], d: usize) -> Rat {
    let size = member.iter().filter(|&&m| m).count();
    let inside = |v: usize| nbrs[v].iter().filter(|&&w| member[w]).count();
    let total: usize = (0..nbrs.len())
        .filter(|&v| member[v])
        .map(|v0| {
            nbrs[v0]
                .iter()
                .filter(|&&v1| member[v1])
                .map(|&v1| inside(v1))
                .sum::<usize>()
        })
        .sum();
    rat(total, size * d * d)
}

/// `(P2(R), P2(B))` for a balanced coloring with red set `red` and blue set its complement.
pub fn transit_probabilities(g: &GeneralizedGraph, red: &[usize]) -> Result<(Rat, Rat)> {
    let nbrs = g.neighbour_lists()?;
    let n = g.n_vertices();
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidParameters("graph is not regular".into()))?;
    if d == 0 {
        return Err(Error::InvalidParameters("graph has no edges".into()));
    }
    let mut member = vec![false; n];
    for &v in red {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut member[v], true) {
            return Err(Error::InvalidParameters(format!("vertex {v} listed twice")));
        }
    }
    if !n.is_multiple_of(2) || 2 * red.len() != n {
        return Err(Error::InvalidParameters(format!(
            "coloring is not balanced: {} red of {n} vertices",
            red.len()
        )));
    }
    let blue: Vec<bool> = member.iter().map(|m| !m).collect();
    Ok((stay_probability(&nbrs, &member, d), stay_probability(&nbrs, &blue, d)))
}

/// `2d` disjoint copies of `g`; red is all of the first `d - r` copies plus the cover in the rest.
pub fn extreme_point_construction(
    g: &GeneralizedGraph,
    c: &CoverCertificate,
) -> Result<(GeneralizedGraph, Vec<usize>)> {
    require_cover(g, c)?;
    let (d, r, n) = (c.d(), c.r(), g.n_vertices());
    let big = g.disjoint_copies(2 * d);
    let mut red: Vec<usize> = (0..(d - r) * n).collect();
    for copy in d - r..2 * d {
        red.extend(c.subset().iter().map(|&v| copy * n + v));
    }
    Ok((big, red))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{circulant, complete_graph};

    fn pt(a: (usize, usize), b: (usize, usize)) -> Point {
        (rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn four_cycle() {
        let g = circulant(4, &[1]).unwrap();
        let (pr, pb) = transit_probabilities(&g, &[0, 1]).unwrap();
        assert_eq!(pr, rat(1, 4));
        assert_eq!(pb, rat(1, 4));
        let (pr, pb) = transit_probabilities(&g, &[0, 2]).unwrap();
        assert!(pr.is_zero() && pb.is_zero());
    }

    #[test]
    fn complete_bipartite_side() {
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        let g = GeneralizedGraph::from_edges(6, &edges, &[], &[]).unwrap();
        let (pr, pb) = transit_probabilities(&g, &[0, 1, 2]).unwrap();
        assert!(pr.is_zero() && pb.is_zero());
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = circulant(4, &[1]).unwrap();
        assert!(transit_probabilities(&g, &[0]).is_err());
        assert!(transit_probabilities(&g, &[0, 0]).is_err());
        assert!(transit_probabilities(&g, &[0, 9]).is_err());
        let multi = GeneralizedGraph::from_edges(2, &[(0, 1), (0, 1)], &[], &[]).unwrap();
        assert!(transit_probabilities(&multi, &[0]).is_err());
    }

    #[test]
    fn hull_vertices() {
        let region = RegionDd::new(3).unwrap();
        let expected = vec![
            pt((0, 1), (0, 1)),
            pt((1, 3), (1, 9)),
            pt((2, 3), (4, 9)),
            pt((1, 1), (1, 1)),
            pt((4, 9), (2, 3)),
            pt((1, 9), (1, 3)),
        ];
        assert_eq!(region.hull_vertices(), expected.as_slice());
        assert_eq!(RegionDd::new(1).unwrap().hull_vertices().len(), 2);
        assert_eq!(RegionDd::new(2).unwrap().hull_vertices().len(), 4);
    }

    #[test]
    fn membership() {
        for d in 1..=8 {
            assert!(in_region(&pt((0, 1), (0, 1)), d));
            assert!(in_region(&pt((1, 1), (1, 1)), d));
            assert!(!in_region(&pt((1, 1), (0, 1)), d));
            assert!(in_region(&pt((d - 1, d), ((d - 1) * (d - 1), d * d)), d));
            assert!(in_region(&pt((1, 2), (1, 2)), d));
        }
        assert!(!in_region(&pt((1, 2), (1, 8)), 3));
        assert!(!in_region(&pt((2, 1), (2, 1)), 1));
        assert!(!in_region(&pt((0, 1), (0, 1)), 0));
    }

    #[test]
    fn extreme_point_on_complete_graph() {
        // K4 with the single-vertex 1-cover: red = two full copies and one vertex in each of four more
        let g = complete_graph(4);
        let c = CoverCertificate::new(vec![3], 1, 3).unwrap();
        let (big, red) = extreme_point_construction(&g, &c).unwrap();
        assert_eq!(big.n_vertices(), 24);
        assert_eq!(red.len(), 12);
        let (pr, pb) = transit_probabilities(&big, &red).unwrap();
        assert_eq!((pr.clone(), pb.clone()), (rat(2, 3), rat(4, 9)));
        let swapped: Vec<usize> = (0..24).filter(|v| !red.contains(v)).collect();
        assert_eq!(transit_probabilities(&big, &swapped).unwrap(), (pb, pr));
    }
}
