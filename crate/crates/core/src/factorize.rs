//! Decomposition of regular generalized graphs into 1-factors and oriented
//! 2-factors.
//!
//! Even-degree multigraphs (loops allowed) are 2-factorized by orienting an
//! Euler tour of every component and splitting the resulting out/in bipartite
//! multigraph into perfect matchings. Odd-degree graphs need an explicit
//! 1-factor containing every semi-edge; the remainder is then even.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{GeneralizedGraph, OrbitKind};

/// Dart colouring into `a` 1-factor classes followed by `b` oriented 2-factor classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    a: usize,
    b: usize,
    color: Vec<usize>,
    // meaningful only for darts whose colour is >= a; false elsewhere
    forward: Vec<bool>,
}

/// Per-vertex darts for every colour class, in slot order.
///
/// Slot layout at each vertex: one slot per 1-factor class, then a forward
/// and a backward slot per 2-factor class, so there are `a + 2b` slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    a: usize,
    b: usize,
    slots: Vec<usize>,
}

impl Factorization {
    /// Validates the colouring against `g`.
    pub fn new(g: &GeneralizedGraph, a: usize, b: usize, color: Vec<usize>, forward: Vec<bool>) -> Result<Self> {
        let f = Self { a, b, color, forward };
        f.check(g)?;
        Ok(f)
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn color(&self) -> &[usize] {
        &self.color
    }

    pub fn forward(&self) -> &[bool] {
        &self.forward
    }

    pub fn n_classes(&self) -> usize {
        self.a + self.b
    }

    /// Checks every class invariant against `g`.
    pub fn check(&self, g: &GeneralizedGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFactorization(msg));
        let m = g.n_darts();
        let classes = self.a + self.b;
        if self.color.len() != m || self.forward.len() != m {
            return bad(format!("arrays cover {} darts, graph has {m}", self.color.len()));
        }
        for x in 0..m {
            let c = self.color[x];
            if c >= classes {
                return bad(format!("dart {x} has colour {c} >= {classes}"));
            }
            let p = g.partner(x);
            if self.color[p] != c {
                return bad(format!("paired darts {x} and {p} differ in colour"));
            }
            if c < self.a {
                if self.forward[x] {
                    return bad(format!("dart {x} in a 1-factor class marked forward"));
                }
            } else {
                if p == x {
                    return bad(format!("semi-edge {x} in 2-factor class {c}"));
                }
                if self.forward[x] == self.forward[p] {
                    return bad(format!("orbit {{{x}, {p}}} needs exactly one forward dart"));
                }
            }
        }
        let mut count = vec![0usize; classes];
        let mut fwd = vec![0usize; classes];
        for v in 0..g.n_vertices() {
            count.iter_mut().for_each(|c| *c = 0);
            fwd.iter_mut().for_each(|c| *c = 0);
            for &x in g.darts_at(v) {
                count[self.color[x]] += 1;
                if self.forward[x] {
                    fwd[self.color[x]] += 1;
                }
            }
            for j in 0..classes {
                let want = if j < self.a { 1 } else { 2 };
                if count[j] != want {
                    return bad(format!(
                        "vertex {v} has {} darts of class {j}, expected {want}",
                        count[j]
                    ));
                }
                if j >= self.a && fwd[j] != 1 {
                    return bad(format!("vertex {v} has {} forward darts of class {j}", fwd[j]));
                }
            }
        }
        Ok(())
    }

    /// Slot table for the common-covering construction.
    pub fn orientation(&self, g: &GeneralizedGraph) -> Orientation {
        let width = self.a + 2 * self.b;
        let mut slots = vec![usize::MAX; g.n_vertices() * width];
        for v in 0..g.n_vertices() {
            for &x in g.darts_at(v) {
                let c = self.color[x];
                let s = if c < self.a {
                    c
                } else {
                    self.a + 2 * (c - self.a) + usize::from(!self.forward[x])
                };
                slots[v * width + s] = x;
            }
        }
        Orientation {
            a: self.a,
            b: self.b,
            slots,
        }
    }

    /// Text dump: header, colour line, then forward bits over 2-factor darts.
    pub fn dump(&self) -> String {
        let mut out = format!("factor a={} b={}\ncolor", self.a, self.b);
        for c in &self.color {
            write!(out, " {c}").unwrap();
        }
        out.push_str("\nforward ");
        for (x, &c) in self.color.iter().enumerate() {
            if c >= self.a {
                out.push(if self.forward[x] { '1' } else { '0' });
            }
        }
        out.push('\n');
        out
    }
}

impl Orientation {
    pub fn width(&self) -> usize {
        self.a + 2 * self.b
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Dart occupying `slot` at vertex `v`.
    #[inline]
    pub fn slot_dart(&self, v: usize, slot: usize) -> usize {
        self.slots[v * self.width() + slot]
    }

    /// Forward dart of 2-factor class `j` (absolute class id, `j >= a`) at `v`.
    pub fn out_dart(&self, v: usize, j: usize) -> usize {
        self.slot_dart(v, self.a + 2 * (j - self.a))
    }

    pub fn in_dart(&self, v: usize, j: usize) -> usize {
        self.slot_dart(v, self.a + 2 * (j - self.a) + 1)
    }
}

/// Closed trails, one per connected component, as sequences of departure darts.
///
/// Each trail starts at the smallest vertex of its component; at every step
/// the unused dart with the smallest id is taken. A loop is traversed once.
pub fn euler_orientation(g: &GeneralizedGraph) -> Result<Vec<Vec<usize>>> {
    for x in 0..g.n_darts() {
        if g.is_semi(x) {
            return Err(Error::SemiEdgePresent { dart: x });
        }
    }
    for v in 0..g.n_vertices() {
        let d = g.deg(v);
        if d % 2 == 1 {
            return Err(Error::OddDegree { vertex: v, degree: d });
        }
    }
    let mut used = vec![false; g.n_darts()];
    let mut cursor = vec![0usize; g.n_vertices()];
    let mut trails = Vec::new();
    for comp in g.components() {
        let start = comp[0];
        // (vertex, dart used to arrive there)
        let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
        let mut circuit = Vec::new();
        while let Some(&(v, arrived)) = stack.last() {
            let star = g.darts_at(v);
            while cursor[v] < star.len() && used[star[cursor[v]]] {
                cursor[v] += 1;
            }
            if cursor[v] < star.len() {
                let x = star[cursor[v]];
                used[x] = true;
                used[g.partner(x)] = true;
                stack.push((g.head(x), Some(x)));
            } else {
                stack.pop();
                if let Some(x) = arrived {
                    circuit.push(x);
                }
            }
        }
        circuit.reverse();
        trails.push(circuit);
    }
    Ok(trails)
}

/// Bipartite multigraph with `left` and `right` vertex classes; edge `i` joins
/// `edges[i].0` on the left to `edges[i].1` on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteMultigraph {
    fn regular_degree(&self) -> Result<usize> {
        if self.left != self.right {
            return Err(Error::NotBipartiteRegular(format!(
                "class sizes {} and {} differ",
                self.left, self.right
            )));
        }
        let mut dl = vec![0usize; self.left];
        let mut dr = vec![0usize; self.right];
        for &(l, r) in &self.edges {
            if l >= self.left || r >= self.right {
                return Err(Error::NotBipartiteRegular(format!("edge ({l}, {r}) out of range")));
            }
            dl[l] += 1;
            dr[r] += 1;
        }
        let k = dl.first().copied().unwrap_or(0);
        if dl.iter().chain(&dr).any(|&d| d != k) {
            return Err(Error::NotBipartiteRegular("degrees differ".into()));
        }
        Ok(k)
    }
}

/// Splits a k-regular bipartite multigraph into k perfect matchings.
///
/// Each matching is returned as edge indices indexed by left vertex. Matchings
/// are extracted one at a time by augmenting-path search over left vertices in
/// ascending order, trying candidate edges by ascending index.
pub fn bipartite_matching_decomposition(bg: &BipartiteMultigraph) -> Result<Vec<Vec<usize>>> {
    let k = bg.regular_degree()?;
    let n = bg.left;
    let mut alive = vec![true; bg.edges.len()];
    let mut adj = vec![Vec::new(); n];
    for (i, &(l, _)) in bg.edges.iter().enumerate() {
        adj[l].push(i);
    }
    let mut matchings = Vec::with_capacity(k);
    for _ in 0..k {
        let mut match_left = vec![usize::MAX; n];
        let mut match_right = vec![usize::MAX; n];
        for l in 0..n {
            let mut visited = vec![false; n];
            if !augment(l, bg, &adj, &alive, &mut visited, &mut match_left, &mut match_right) {
                // cannot happen for a regular bipartite multigraph (Hall)
                return Err(Error::NotBipartiteRegular(format!(
                    "no augmenting path from left vertex {l}"
                )));
            }
        }
        for &e in &match_left {
            alive[e] = false;
        }
        matchings.push(match_left);
    }
    Ok(matchings)
}

fn augment(
    l: usize,
    bg: &BipartiteMultigraph,
    adj: &[Vec<usize>],
    alive: &[bool],
    visited: &mut [bool],
    match_left: &mut [usize],
    match_right: &mut [usize],
) -> bool {
    for &e in &adj[l] {
        if !alive[e] {
            continue;
        }
        let r = bg.edges[e].1;
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let owner = match_right[r];
        if owner == usize::MAX || augment(bg.edges[owner].0, bg, adj, alive, visited, match_left, match_right) {
            match_left[l] = e;
            match_right[r] = e;
            return true;
        }
    }
    false
}

/// 2-factorization of an even-regular multigraph (loops allowed, no semi-edges).
pub fn two_factorize(g: &GeneralizedGraph) -> Result<Factorization> {
    let trails = euler_orientation(g)?;
    let n = g.n_vertices();
    let d = if n == 0 { 0 } else { g.deg(0) };
    if n > 0 {
        g.require_regular(d)?;
    }
    let departures: Vec<usize> = trails.into_iter().flatten().collect();
    let bg = BipartiteMultigraph {
        left: n,
        right: n,
        edges: departures.iter().map(|&x| (g.vertex_of(x), g.head(x))).collect(),
    };
    let matchings = bipartite_matching_decomposition(&bg)?;
    let m = g.n_darts();
    let mut color = vec![usize::MAX; m];
    let mut forward = vec![false; m];
    for (j, matching) in matchings.iter().enumerate() {
        for &e in matching {
            let x = departures[e];
            color[x] = j;
            color[g.partner(x)] = j;
            forward[x] = true;
        }
    }
    Factorization::new(g, 0, d / 2, color, forward)
}

/// Factorization with the 1-factor `matching` as class 0 and a 2-factorization
/// of the remainder as classes `1..`.
pub fn factorize_with_matching(g: &GeneralizedGraph, matching: &[usize]) -> Result<Factorization> {
    let in_m = check_one_factor(g, matching)?;
    let keep: Vec<bool> = in_m.iter().map(|&b| !b).collect();
    let (rest, old_ids) = g.restrict_darts(&keep)?;
    let inner = two_factorize(&rest)?;
    let m = g.n_darts();
    let mut color = vec![0usize; m];
    let mut forward = vec![false; m];
    for (new, &old) in old_ids.iter().enumerate() {
        color[old] = inner.color[new] + 1;
        forward[old] = inner.forward[new];
    }
    Factorization::new(g, 1, inner.b, color, forward)
}

/// Validates that `matching` is a 1-factor holding every semi-edge; returns its mask.
pub fn check_one_factor(g: &GeneralizedGraph, matching: &[usize]) -> Result<Vec<bool>> {
    let m = g.n_darts();
    let mut in_m = vec![false; m];
    for &x in matching {
        if x >= m {
            return Err(Error::DartOutOfRange { dart: x, m });
        }
        if in_m[x] {
            return Err(Error::NotOneFactor(format!("dart {x} listed twice")));
        }
        in_m[x] = true;
    }
    for x in 0..m {
        if in_m[x] != in_m[g.partner(x)] {
            return Err(Error::NotOneFactor(format!("not closed under pairing at dart {x}")));
        }
        if g.is_semi(x) && !in_m[x] {
            return Err(Error::NotOneFactor(format!("misses semi-edge {x}")));
        }
        if in_m[x] && g.orbit_kind(x) == OrbitKind::Loop {
            return Err(Error::NotOneFactor(format!("contains loop dart {x}")));
        }
    }
    for v in 0..g.n_vertices() {
        let k = g.darts_at(v).iter().filter(|&&x| in_m[x]).count();
        if k != 1 {
            return Err(Error::NotOneFactor(format!("vertex {v} meets {k} darts")));
        }
    }
    Ok(in_m)
}
