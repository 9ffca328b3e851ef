//! Builders for regular simple graphs carrying an independent exact r-cover
//! for every `r` in `1..=d`.
//!
//! One small factor graph is chosen per `r`; the factors are folded into a
//! common covering and each factor's cover is lifted along its projection.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::atlas::{complete_entry, compressed_graph, dipole_entry, small_graph, AtlasEntry};
use crate::cover::{require_cover, CoverCertificate};
use crate::covering::{iterated_common_covering, lift_cover, CoveringMap};
use crate::error::{Error, Result};
use crate::factorize::Factorization;
use crate::graph::GeneralizedGraph;

/// Degrees from which builds get large enough to be opt-in.
pub const LARGE_BUILD_DEGREE: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Smallest factor per `r`: `(d + r) / gcd(d, r)` vertices.
    Minimal,
    /// The simple-ish factor on `d + r` vertices for every `r`.
    SimpleFactors,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Minimal => "minimal",
            Strategy::SimpleFactors => "simple",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimal" => Ok(Strategy::Minimal),
            "simple" | "simple_factors" | "simple-factors" => Ok(Strategy::SimpleFactors),
            other => Err(Error::InvalidParameters(format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BuildResult {
    pub graph: Arc<GeneralizedGraph>,
    pub factorization: Factorization,
    /// `covers[i]` is the exact `(i + 1)`-cover.
    pub covers: Vec<CoverCertificate>,
    /// `projections[i]` maps onto `factor_list[i]`.
    pub projections: Vec<CoveringMap>,
    pub factor_list: Vec<AtlasEntry>,
}

impl BuildResult {
    pub fn degree(&self) -> usize {
        self.covers.first().map_or(0, |c| c.d())
    }

    pub fn cover(&self, r: usize) -> Option<&CoverCertificate> {
        self.covers.iter().find(|c| c.r() == r)
    }
}

/// Factor used for `r` under the minimal strategy.
///
/// `K_{d+1}` for `r = 1`, the dipole for `r = d`, the `d + r` vertex graph
/// when `gcd(d, r) = 1`, and the compressed multigraph otherwise.
pub fn minimal_factor(d: usize, r: usize) -> Result<AtlasEntry> {
    if r == 1 {
        complete_entry(d)
    } else if r == d {
        dipole_entry(d)
    } else if d.gcd(&r) == 1 {
        small_graph(d, r)
    } else {
        compressed_graph(d, r)
    }
}

/// Factor list for `r = 1..=d`, ascending in `r`.
pub fn factor_list(d: usize, strategy: Strategy) -> Result<Vec<AtlasEntry>> {
    if d == 0 {
        return Err(Error::InvalidParameters("degree must be at least 1".into()));
    }
    (1..=d)
        .map(|r| match strategy {
            Strategy::Minimal => minimal_factor(d, r),
            Strategy::SimpleFactors => small_graph(d, r),
        })
        .collect()
}

pub fn build_all_covers(d: usize, strategy: Strategy) -> Result<BuildResult> {
    build_from_factors(factor_list(d, strategy)?)
}

/// Common covering of arbitrary atlas entries of one degree, with every cover lifted.
pub fn build_from_factors(factors: Vec<AtlasEntry>) -> Result<BuildResult> {
    let inputs: Vec<(Arc<GeneralizedGraph>, Option<Vec<usize>>)> = factors
        .iter()
        .map(|e| (Arc::new(e.graph.clone()), e.matching.clone()))
        .collect();
    let folded = iterated_common_covering(&inputs)?;
    let mut covers = Vec::with_capacity(factors.len());
    for (entry, proj) in factors.iter().zip(&folded.projections) {
        let lifted = lift_cover(proj, &entry.cover)?;
        require_cover(&folded.graph, &lifted)?;
        covers.push(lifted);
    }
    Ok(BuildResult {
        graph: folded.graph,
        factorization: folded.factorization,
        covers,
        projections: folded.projections,
        factor_list: factors,
    })
}

/// Order of the graph [`build_all_covers`] produces, without building it.
pub fn vertex_count(d: usize, strategy: Strategy) -> BigUint {
    (1..=d)
        .map(|r| match strategy {
            Strategy::Minimal => BigUint::from((d + r) / d.gcd(&r)),
            Strategy::SimpleFactors => BigUint::from(d + r),
        })
        .product()
}
