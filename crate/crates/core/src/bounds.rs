//! Divisibility lower bounds on the order of graphs with independent exact
//! r-covers for all `r <= d`, and exact intersection laws.
//!
//! Every `r`-cover has `r n / (d + r)` vertices. Two covers with distinct
//! parameters meet in `r1 r2 n / ((d + r1)(d + r2))` vertices, and together
//! with an exact `d`-cover three of them meet in half of that.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cover::{require_cover, CoverCertificate};
use crate::error::Result;
use crate::graph::GeneralizedGraph;
use crate::pipeline::{vertex_count, Strategy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub d: usize,
    /// `(r, (d + r) / gcd(d, r))` for each `r`.
    pub star_divisors: Vec<(usize, BigUint)>,
    pub star_lcm: BigUint,
    /// `(r1, r2, m)`: `m` is the least positive integer with `r1 r2 m ≡ 0 mod (d+r1)(d+r2)`.
    pub pair_constraints: Vec<(usize, usize, BigUint)>,
    /// `(r1, r2, m)` for `r1 < r2 < d`, modulus `2 (d+r1)(d+r2)`.
    pub triple_constraints: Vec<(usize, usize, BigUint)>,
    pub combined_lb: BigUint,
    /// `2 lcm{(d+r1)(d+r2) : 0 <= r1 < r2 <= d} / d^2`.
    pub diamond_lb: BigRational,
    pub construction_ub_simple: BigUint,
    pub construction_ub_minimal: BigUint,
}

/// Least `m >= 1` with `coeff * m ≡ 0 (mod modulus)`.
pub fn forced_divisor(coeff: &BigUint, modulus: &BigUint) -> BigUint {
    modulus / coeff.gcd(modulus)
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

pub fn diamond_lcm(d: usize) -> BigUint {
    let mut l = BigUint::one();
    for r1 in 0..=d {
        for r2 in r1 + 1..=d {
            l = l.lcm(&(big(d + r1) * big(d + r2)));
        }
    }
    l
}

pub fn diamond_bound(d: usize) -> BigRational {
    let num = big(2) * diamond_lcm(d);
    BigRational::new(num.into(), (big(d) * big(d)).into())
}

pub fn divisibility_lower_bound(d: usize) -> BoundReport {
    let star_divisors: Vec<(usize, BigUint)> = (1..=d).map(|r| (r, forced_divisor(&big(r), &big(d + r)))).collect();
    let star_lcm = star_divisors.iter().fold(BigUint::one(), |acc, (_, m)| acc.lcm(m));
    let mut pair_constraints = Vec::new();
    let mut triple_constraints = Vec::new();
    for r1 in 1..=d {
        for r2 in r1 + 1..=d {
            let coeff = big(r1 * r2);
            let modulus = big(d + r1) * big(d + r2);
            pair_constraints.push((r1, r2, forced_divisor(&coeff, &modulus)));
            if r2 < d {
                triple_constraints.push((r1, r2, forced_divisor(&coeff, &(big(2) * modulus))));
            }
        }
    }
    let combined_lb = pair_constraints
        .iter()
        .chain(&triple_constraints)
        .fold(star_lcm.clone(), |acc, (_, _, m)| acc.lcm(m));
    BoundReport {
        d,
        star_divisors,
        star_lcm,
        pair_constraints,
        triple_constraints,
        combined_lb,
        diamond_lb: diamond_bound(d),
        construction_ub_simple: vertex_count(d, Strategy::SimpleFactors),
        construction_ub_minimal: vertex_count(d, Strategy::Minimal),
    }
}

/// Exact finite bound values plus `ln(value) / d` for display.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactBounds {
    pub diamond_lb: BigRational,
    pub ub_simple: BigUint,
    pub ub_minimal: BigUint,
    /// `(label, ln(value) / d)` rendered with six decimals.
    pub log_ratios: Vec<(&'static str, String)>,
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().map_or(f64::NAN, f64::ln)
    } else {
        let shift = bits - 1000;
        (x >> shift).to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
    }
}

fn ln_rational(x: &BigRational) -> f64 {
    if x.numer().sign() != num_bigint::Sign::Plus {
        return f64::NAN;
    }
    let (n, d) = (x.numer().magnitude(), x.denom().magnitude());
    ln_big(n) - ln_big(d)
}

pub fn exact_bound_values(d: usize) -> ExactBounds {
    let diamond_lb = diamond_bound(d);
    let ub_simple = vertex_count(d, Strategy::SimpleFactors);
    let ub_minimal = vertex_count(d, Strategy::Minimal);
    let combined = divisibility_lower_bound(d).combined_lb;
    let per_d = |v: f64| format!("{:.6}", v / d as f64);
    let log_ratios = vec![
        ("diamond_lb", per_d(ln_rational(&diamond_lb))),
        ("combined_lb", per_d(ln_big(&combined))),
        ("ub_minimal", per_d(ln_big(&ub_minimal))),
        ("ub_simple", per_d(ln_big(&ub_simple))),
    ];
    ExactBounds {
        diamond_lb,
        ub_simple,
        ub_minimal,
        log_ratios,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionKind {
    /// Two covers with distinct parameters.
    Pair,
    /// Two covers with distinct parameters below `d`, plus the exact `d`-cover.
    TripleWithD,
    /// Three covers with distinct parameters, none equal to `d`. The product
    /// formula is reported but not required to hold.
    TripleIndependence,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionCheck {
    pub kind: IntersectionKind,
    pub rs: Vec<usize>,
    pub actual: usize,
    pub expected: BigRational,
    pub holds: bool,
}

impl IntersectionCheck {
    /// Whether a mismatch here contradicts a law (as opposed to an informational comparison).
    pub fn asserted(&self) -> bool {
        self.kind != IntersectionKind::TripleIndependence
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    pub checks: Vec<IntersectionCheck>,
}

impl IntersectionReport {
    /// All asserted laws hold.
    pub fn ok(&self) -> bool {
        self.checks.iter().filter(|c| c.asserted()).all(|c| c.holds)
    }

    pub fn find(&self, kind: IntersectionKind, rs: &[usize]) -> Option<&IntersectionCheck> {
        self.checks.iter().find(|c| c.kind == kind && c.rs == rs)
    }
}

fn rat(x: usize) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Compares every pairwise and triple intersection with its closed form.
pub fn check_intersections(g: &GeneralizedGraph, covers: &[CoverCertificate]) -> Result<IntersectionReport> {
    for c in covers {
        require_cover(g, c)?;
    }
    let n = g.n_vertices();
    let masks: Vec<Vec<bool>> = covers.iter().map(|c| c.membership(n)).collect();
    let count = |idx: &[usize]| (0..n).filter(|&v| idx.iter().all(|&i| masks[i][v])).count();
    let mut checks = Vec::new();
    for i in 0..covers.len() {
        for j in i + 1..covers.len() {
            let (r1, r2, d) = (covers[i].r(), covers[j].r(), covers[i].d());
            if r1 == r2 {
                continue;
            }
            let expected = rat(r1 * r2 * n) / (rat(d + r1) * rat(d + r2));
            let actual = count(&[i, j]);
            checks.push(IntersectionCheck {
                kind: IntersectionKind::Pair,
                rs: vec![r1, r2],
                actual,
                holds: rat(actual) == expected,
                expected,
            });
        }
    }
    let full = covers.iter().position(|c| c.r() == c.d());
    for i in 0..covers.len() {
        for j in i + 1..covers.len() {
            let (r1, r2, d) = (covers[i].r(), covers[j].r(), covers[i].d());
            if r1 == r2 || r1 == d || r2 == d {
                continue;
            }
            if let Some(k) = full {
                let expected = rat(r1 * r2 * n) / (rat(2) * rat(d + r1) * rat(d + r2));
                let actual = count(&[i, j, k]);
                checks.push(IntersectionCheck {
                    kind: IntersectionKind::TripleWithD,
                    rs: vec![r1, r2, d],
                    actual,
                    holds: rat(actual) == expected,
                    expected,
                });
            }
            for k in j + 1..covers.len() {
                let r3 = covers[k].r();
                if r3 == d || r3 == r1 || r3 == r2 {
                    continue;
                }
                let sizes = [i, j, k].map(|t| rat(covers[t].len()));
                let expected = sizes.iter().fold(BigRational::one(), |a, s| a * s) / (rat(n) * rat(n));
                let actual = count(&[i, j, k]);
                checks.push(IntersectionCheck {
                    kind: IntersectionKind::TripleIndependence,
                    rs: vec![r1, r2, r3],
                    actual,
                    holds: rat(actual) == expected,
                    expected,
                });
            }
        }
    }
    if n == 0 {
        debug_assert!(checks.iter().all(|c| c.expected.is_zero()));
    }
    Ok(IntersectionReport { checks })
}
