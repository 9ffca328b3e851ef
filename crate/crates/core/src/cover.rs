//! Independent exact r-covers: certificates, verification and a brute-force oracle.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{GeneralizedGraph, OrbitKind};

/// Largest graph `enumerate_covers` will search.
pub const MAX_ENUMERATION_VERTICES: usize = 24;

/// A claimed independent exact `r`-cover of a `d`-regular graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverCertificate {
    subset: Vec<usize>,
    r: usize,
    d: usize,
}

impl CoverCertificate {
    /// `subset` must be strictly increasing and `1 <= r <= d`.
    pub fn new(subset: Vec<usize>, r: usize, d: usize) -> Result<Self> {
        if r == 0 || r > d {
            return Err(Error::InvalidCertificate(format!("r = {r} outside 1..={d}")));
        }
        if let Some(w) = subset.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCertificate(format!(
                "subset not strictly increasing at {} {}",
                w[0], w[1]
            )));
        }
        Ok(Self { subset, r, d })
    }

    /// Sorts and deduplicates `subset` before validating.
    pub fn from_unsorted(mut subset: Vec<usize>, r: usize, d: usize) -> Result<Self> {
        subset.sort_unstable();
        subset.dedup();
        Self::new(subset, r, d)
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.subset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subset.is_empty()
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.subset {
            if v < n {
                mask[v] = true;
            }
        }
        mask
    }
}

/// Why a vertex fails the cover conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverFailure {
    OutOfRange {
        vertex: usize,
    },
    /// A vertex of S carries a loop or semi-edge.
    NotIndependentSelf {
        vertex: usize,
    },
    /// Ordinary edge with both ends in S.
    EdgeInside {
        u: usize,
        v: usize,
    },
    /// Vertex outside S with the wrong number of edges into S.
    WrongCount {
        vertex: usize,
        count: usize,
    },
}

impl fmt::Display for CoverFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverFailure::OutOfRange { vertex } => write!(f, "vertex {vertex} is out of range"),
            CoverFailure::NotIndependentSelf { vertex } => {
                write!(f, "vertex {vertex} of the cover carries a loop or semi-edge")
            }
            CoverFailure::EdgeInside { u, v } => write!(f, "edge {u}-{v} has both ends in the cover"),
            CoverFailure::WrongCount { vertex, count } => {
                write!(f, "vertex {vertex} outside the cover has {count} edges into it")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub ok: bool,
    pub failures: Vec<CoverFailure>,
}

/// Failures are reported at most this many at a time.
const MAX_REPORTED: usize = 16;

/// Checks that `c` is an independent exact `c.r()`-cover of `g`.
///
/// Edges from a vertex outside S into S are counted with multiplicity.
pub fn verify_cover(g: &GeneralizedGraph, c: &CoverCertificate) -> Result<CoverReport> {
    g.require_regular(c.d)?;
    let n = g.n_vertices();
    let mut failures = Vec::new();
    for &v in &c.subset {
        if v >= n {
            failures.push(CoverFailure::OutOfRange { vertex: v });
        }
    }
    if !failures.is_empty() {
        return Ok(CoverReport { ok: false, failures });
    }
    let in_s = c.membership(n);
    for &v in &c.subset {
        for &x in g.darts_at(v) {
            match g.orbit_kind(x) {
                OrbitKind::Semi | OrbitKind::Loop => {
                    failures.push(CoverFailure::NotIndependentSelf { vertex: v });
                    break;
                }
                OrbitKind::Ordinary => {
                    let w = g.head(x);
                    if in_s[w] && v < w {
                        failures.push(CoverFailure::EdgeInside { u: v, v: w });
                    }
                }
            }
        }
        if failures.len() >= MAX_REPORTED {
            break;
        }
    }
    for v in (0..n).filter(|&v| !in_s[v]) {
        if failures.len() >= MAX_REPORTED {
            break;
        }
        let count = g
            .darts_at(v)
            .iter()
            .filter(|&&x| !g.is_semi(x) && in_s[g.head(x)])
            .count();
        if count != c.r {
            failures.push(CoverFailure::WrongCount { vertex: v, count });
        }
    }
    Ok(CoverReport {
        ok: failures.is_empty(),
        failures,
    })
}

/// Convenience wrapper turning a failed report into an error.
pub fn require_cover(g: &GeneralizedGraph, c: &CoverCertificate) -> Result<()> {
    let report = verify_cover(g, c)?;
    if report.ok {
        Ok(())
    } else {
        Err(Error::CoverRejected(report.failures[0].to_string()))
    }
}

/// Size `r*n/(d+r)` every exact r-cover must have, if it is an integer.
pub fn cover_size(n: usize, d: usize, r: usize) -> Option<usize> {
    let num = r * n;
    num.is_multiple_of(d + r).then(|| num / (d + r))
}

/// All independent exact `r`-covers of a regular graph, in lexicographic order.
///
/// Only subsets of the forced size `r*n/(d+r)` are examined.
pub fn enumerate_covers(g: &GeneralizedGraph, r: usize) -> Result<Vec<CoverCertificate>> {
    let n = g.n_vertices();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let d = g.regular_degree().ok_or(Error::NotRegular { expected: 0 })?;
    if r == 0 || r > d {
        return Err(Error::InvalidCertificate(format!("r = {r} outside 1..={d}")));
    }
    let Some(size) = cover_size(n, d, r) else {
        return Ok(Vec::new());
    };
    let adj = NeighbourMasks::new(g);
    Ok((0..n)
        .combinations(size)
        .filter(|s| {
            let mask = s.iter().fold(0u32, |m, &v| m | (1 << v));
            adj.is_cover(mask, r)
        })
        .map(|s| CoverCertificate { subset: s, r, d })
        .collect())
}

/// Per-vertex ordinary-edge targets plus a self-blocking flag, for bitmask checks.
struct NeighbourMasks {
    heads: Vec<Vec<usize>>,
    blocked: Vec<bool>,
}

impl NeighbourMasks {
    fn new(g: &GeneralizedGraph) -> Self {
        let n = g.n_vertices();
        let mut heads = vec![Vec::new(); n];
        let mut blocked = vec![false; n];
        for v in 0..n {
            for &x in g.darts_at(v) {
                match g.orbit_kind(x) {
                    OrbitKind::Ordinary => heads[v].push(g.head(x)),
                    _ => blocked[v] = true,
                }
            }
        }
        Self { heads, blocked }
    }

    fn is_cover(&self, mask: u32, r: usize) -> bool {
        self.heads.iter().enumerate().all(|(v, hs)| {
            let inside = hs.iter().filter(|&&w| mask >> w & 1 == 1).count();
            if mask >> v & 1 == 1 {
                !self.blocked[v] && inside == 0
            } else {
                inside == r
            }
        })
    }
}
