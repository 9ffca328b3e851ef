//! Small regular graphs carrying one independent exact r-cover each, standard
//! generators, and the 2184-vertex three-cover example.

use std::fmt;
use std::ops::Range;

use num_integer::Integer;

use crate::cover::{require_cover, CoverCertificate};
use crate::error::{Error, Result};
use crate::factorize::check_one_factor;
use crate::graph::{GeneralizedGraph, GraphBuilder};

/// Which construction produced an [`AtlasEntry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionCase {
    /// `K_{d,r}` plus a circulant on the large side (`d ≡ r mod 2`).
    Simple1,
    /// `K_{d,r}` plus a circulant with the antipodal matching (`d` even, `r` odd).
    Simple2,
    /// `K_{d,r}` plus a circulant, a near-matching and one semi-edge (`d` odd, `r` even).
    Simple3,
    Compress1,
    Compress2,
    Compress3,
    Dipole,
    Complete,
}

impl ConstructionCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionCase::Simple1 => "simple-1",
            ConstructionCase::Simple2 => "simple-2",
            ConstructionCase::Simple3 => "simple-3",
            ConstructionCase::Compress1 => "compress-1",
            ConstructionCase::Compress2 => "compress-2",
            ConstructionCase::Compress3 => "compress-3",
            ConstructionCase::Dipole => "dipole",
            ConstructionCase::Complete => "complete",
        }
    }
}

impl fmt::Display for ConstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A `d`-regular graph with a verified independent exact `r`-cover and, for
/// odd `d`, a 1-factor containing every semi-edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasEntry {
    pub graph: GeneralizedGraph,
    pub cover: CoverCertificate,
    pub matching: Option<Vec<usize>>,
    pub construction_case: ConstructionCase,
}

impl AtlasEntry {
    pub fn d(&self) -> usize {
        self.cover.d()
    }

    pub fn r(&self) -> usize {
        self.cover.r()
    }

    /// Re-checks the cover and the 1-factor.
    pub fn validate(&self) -> Result<()> {
        require_cover(&self.graph, &self.cover)?;
        match (&self.matching, self.d() % 2) {
            (Some(m), 1) => {
                check_one_factor(&self.graph, m)?;
            }
            (None, 0) => {}
            _ => {
                return Err(Error::InvalidParameters(
                    "a 1-factor is present exactly when the degree is odd".into(),
                ))
            }
        }
        Ok(())
    }
}

/// Edge accumulator that remembers edge indices for picking 1-factors.
struct EdgeList {
    n: usize,
    edges: Vec<(usize, usize)>,
    semis: Vec<usize>,
}

impl EdgeList {
    fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            semis: Vec::new(),
        }
    }

    fn push(&mut self, u: usize, v: usize) -> usize {
        self.edges.push((u.min(v), u.max(v)));
        self.edges.len() - 1
    }

    fn push_times(&mut self, u: usize, v: usize, k: usize) {
        for _ in 0..k {
            self.push(u, v);
        }
    }

    fn find(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges
            .iter()
            .position(|&e| e == key)
            .unwrap_or_else(|| panic!("edge {key:?} missing from construction"))
    }

    /// Builds the graph; `one_factor` lists edge indices, semi-edges are always included.
    fn build(self, one_factor: Option<Vec<usize>>) -> Result<(GeneralizedGraph, Option<Vec<usize>>)> {
        let base = 2 * self.edges.len();
        let matching = one_factor.map(|idx| {
            let mut darts: Vec<usize> = idx.iter().flat_map(|&e| [2 * e, 2 * e + 1]).collect();
            darts.extend((0..self.semis.len()).map(|i| base + i));
            darts.sort_unstable();
            darts
        });
        let g = GeneralizedGraph::from_edges(self.n, &self.edges, &[], &self.semis)?;
        Ok((g, matching))
    }
}

fn circulant_edges(n: usize, generators: &[i64]) -> Result<Vec<(usize, usize)>> {
    let mut present = vec![false; n / 2 + 1];
    for &g in generators {
        let s = g.rem_euclid(n as i64) as usize;
        if s == 0 {
            return Err(Error::InvalidParameters(format!("generator {g} is zero mod {n}")));
        }
        present[s.min(n - s)] = true;
    }
    let mut edges = Vec::new();
    for s in (1..present.len()).filter(|&s| present[s]) {
        let count = if 2 * s == n { n / 2 } else { n };
        edges.extend((0..count).map(|i| (i, (i + s) % n)));
    }
    Ok(edges)
}

pub fn complete_graph(k: usize) -> GeneralizedGraph {
    let edges: Vec<_> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    GeneralizedGraph::from_edges(k, &edges, &[], &[]).expect("complete graph")
}

/// Cayley graph of `Z/n` with the symmetric closure of `generators`.
pub fn circulant(n: usize, generators: &[i64]) -> Result<GeneralizedGraph> {
    if n == 0 {
        return Err(Error::InvalidParameters("circulant on zero vertices".into()));
    }
    GeneralizedGraph::from_edges(n, &circulant_edges(n, generators)?, &[], &[])
}

/// Replaces every ordinary edge by `k` parallel copies.
pub fn multiply_edges(g: &GeneralizedGraph, k: usize) -> Result<GeneralizedGraph> {
    let class = g.classify();
    if class.has_loop || class.has_semi_edge {
        return Err(Error::InvalidParameters(
            "multiply_edges needs a loop-free multigraph".into(),
        ));
    }
    let mut b = GraphBuilder::new(g.n_vertices());
    for (x, y) in g.orbits() {
        for _ in 0..k {
            b.edge(g.vertex_of(x), g.vertex_of(y))?;
        }
    }
    Ok(b.build())
}

/// Two vertices joined by `d` parallel edges.
pub fn dipole(d: usize) -> GeneralizedGraph {
    GeneralizedGraph::from_edges(2, &vec![(0, 1); d], &[], &[]).expect("dipole")
}

fn check_range(d: usize, r: usize) -> Result<()> {
    if r == 0 || r > d {
        Err(Error::InvalidParameters(format!("need 1 <= r <= d, got d={d}, r={r}")))
    } else {
        Ok(())
    }
}

fn finish(
    list: EdgeList,
    one_factor: Option<Vec<usize>>,
    cover: Vec<usize>,
    d: usize,
    r: usize,
    case: ConstructionCase,
) -> Result<AtlasEntry> {
    let (graph, matching) = list.build(one_factor)?;
    let entry = AtlasEntry {
        graph,
        cover: CoverCertificate::new(cover, r, d)?,
        matching,
        construction_case: case,
    };
    entry.validate()?;
    Ok(entry)
}

/// `K_{d+1}` with the cover `{d}` at `r = 1`.
pub fn complete_entry(d: usize) -> Result<AtlasEntry> {
    check_range(d, 1)?;
    let mut list = EdgeList::new(d + 1);
    for i in 0..=d {
        for j in i + 1..=d {
            list.push(i, j);
        }
    }
    let one_factor = (d % 2 == 1).then(|| (0..=d).step_by(2).map(|i| list.find(i, i + 1)).collect());
    finish(list, one_factor, vec![d], d, 1, ConstructionCase::Complete)
}

/// Dipole `D_d` with the cover `{1}` at `r = d`.
pub fn dipole_entry(d: usize) -> Result<AtlasEntry> {
    check_range(d, d)?;
    let mut list = EdgeList::new(2);
    list.push_times(0, 1, d);
    let one_factor = (d % 2 == 1).then(|| vec![0]);
    finish(list, one_factor, vec![1], d, d, ConstructionCase::Dipole)
}

/// Graph on `d + r` vertices without loops or parallel edges: `K_{d,r}` between
/// `A = 0..d` and `S = d..d+r`, plus a `(d - r)`-regular graph on `A`.
pub fn small_graph(d: usize, r: usize) -> Result<AtlasEntry> {
    check_range(d, r)?;
    let mut list = EdgeList::new(d + r);
    for i in 0..d {
        for j in 0..r {
            list.push(i, d + j);
        }
    }
    let bipartite_rung = |i: usize| i * r + i;
    let gens = |top: usize| (1..=top as i64).collect::<Vec<_>>();
    let (case, one_factor) = if (d - r).is_multiple_of(2) {
        for (u, v) in circulant_edges(d, &gens((d - r) / 2))? {
            list.push(u, v);
        }
        let one_factor = (d % 2 == 1).then(|| {
            let mut m: Vec<usize> = (0..r).map(bipartite_rung).collect();
            m.extend((r..d).step_by(2).map(|i| list.find(i, i + 1)));
            m
        });
        (ConstructionCase::Simple1, one_factor)
    } else if d.is_multiple_of(2) {
        let mut g = gens((d - r - 1) / 2);
        g.push((d / 2) as i64);
        for (u, v) in circulant_edges(d, &g)? {
            list.push(u, v);
        }
        (ConstructionCase::Simple2, None)
    } else {
        for (u, v) in circulant_edges(d, &gens((d - r - 1) / 2))? {
            list.push(u, v);
        }
        let half = (d - 1) / 2;
        for i in 0..half {
            list.push(i, i + half);
        }
        list.semis.push(d - 1);
        let mut m: Vec<usize> = (0..r).map(bipartite_rung).collect();
        m.extend((r..d - 1).step_by(2).map(|i| list.find(i, i + 1)));
        (ConstructionCase::Simple3, Some(m))
    };
    finish(list, one_factor, (d..d + r).collect(), d, r, case)
}

/// Multigraph on `(d + r) / gcd(d, r)` vertices: `K_{d/k, r/k}` with every edge
/// `k`-fold, plus a `(d - r)`-regular multigraph on the large side.
pub fn compressed_graph(d: usize, r: usize) -> Result<AtlasEntry> {
    check_range(d, r)?;
    let k = d.gcd(&r);
    let (dk, rk) = (d / k, r / k);
    if dk == 1 {
        return dipole_entry(d);
    }
    let mut list = EdgeList::new(dk + rk);
    for i in 0..dk {
        for j in 0..rk {
            list.push_times(i, dk + j, k);
        }
    }
    let rung = |i: usize| (i * rk + i) * k;
    let cycle = |list: &mut EdgeList, mult: usize| {
        if dk == 2 {
            list.push_times(0, 1, 2 * mult);
        } else {
            for i in 0..dk {
                list.push_times(i, (i + 1) % dk, mult);
            }
        }
    };
    let (case, one_factor) = if (d - r).is_multiple_of(2) {
        cycle(&mut list, (d - r) / 2);
        let one_factor = (d % 2 == 1).then(|| {
            let mut m: Vec<usize> = (0..rk).map(rung).collect();
            m.extend((rk..dk).step_by(2).map(|i| list.find(i, i + 1)));
            m
        });
        (ConstructionCase::Compress1, one_factor)
    } else if d.is_multiple_of(2) {
        for t in 0..dk / 2 {
            list.push_times(2 * t, 2 * t + 1, d - r);
        }
        (ConstructionCase::Compress2, None)
    } else {
        cycle(&mut list, (d - r - 1) / 2);
        for t in 0..(dk - 1) / 2 {
            list.push(2 * t, 2 * t + 1);
        }
        list.semis.push(dk - 1);
        let mut m: Vec<usize> = (0..rk).map(rung).collect();
        m.extend((rk..dk - 1).step_by(2).map(|i| list.find(i, i + 1)));
        (ConstructionCase::Compress3, Some(m))
    };
    finish(list, one_factor, (dk..dk + rk).collect(), d, r, case)
}

/// Every construction above for `1 <= r <= d <= max_d`, deduplicated by graph
/// and cover, in order of `d`, then `r`, then construction.
pub fn catalogue(max_d: usize) -> Result<Vec<AtlasEntry>> {
    let mut out: Vec<AtlasEntry> = Vec::new();
    for d in 1..=max_d {
        for r in 1..=d {
            let mut candidates = vec![small_graph(d, r)?, compressed_graph(d, r)?];
            if r == 1 {
                candidates.push(complete_entry(d)?);
            }
            if r == d {
                candidates.push(dipole_entry(d)?);
            }
            for e in candidates {
                if !out.iter().any(|o| o.graph == e.graph && o.cover == e.cover) {
                    out.push(e);
                }
            }
        }
    }
    Ok(out)
}

/// Edges `(left, right)` of a greedy biregular bipartite realization.
///
/// Left vertices are processed in index order; each takes the `dl` right
/// vertices with the largest remaining capacity, ties to the smaller index.
pub fn biregular_edges(nl: usize, nr: usize, dl: usize, dr: usize) -> Result<Vec<(usize, usize)>> {
    if nl * dl != nr * dr || dl > nr || dr > nl {
        return Err(Error::InvalidParameters(format!(
            "no biregular bipartite graph with sides {nl}, {nr} and degrees {dl}, {dr}"
        )));
    }
    let mut cap = vec![dr; nr];
    let mut order: Vec<usize> = (0..nr).collect();
    let mut edges = Vec::with_capacity(nl * dl);
    for l in 0..nl {
        order.sort_by_key(|&j| (std::cmp::Reverse(cap[j]), j));
        let mut chosen: Vec<usize> = order[..dl].to_vec();
        if chosen.iter().any(|&j| cap[j] == 0) {
            return Err(Error::InvalidParameters(format!(
                "greedy realization stuck at left vertex {l}"
            )));
        }
        chosen.sort_unstable();
        for j in chosen {
            cap[j] -= 1;
            edges.push((l, j));
        }
    }
    Ok(edges)
}

/// Simple bipartite graph with left vertices `0..nl` of degree `dl` and right
/// vertices `nl..nl+nr` of degree `dr`.
pub fn biregular_bipartite(nl: usize, nr: usize, dl: usize, dr: usize) -> Result<GeneralizedGraph> {
    let edges: Vec<_> = biregular_edges(nl, nr, dl, dr)?
        .into_iter()
        .map(|(l, r)| (l, nl + r))
        .collect();
    let g = GeneralizedGraph::from_edges(nl + nr, &edges, &[], &[])?;
    let ok =
        g.is_simple() && (0..nl).all(|v| g.darts_at(v).len() == dl) && (nl..nl + nr).all(|v| g.darts_at(v).len() == dr);
    if !ok {
        return Err(Error::InvalidParameters(
            "biregular realization failed its own check".into(),
        ));
    }
    Ok(g)
}

/// Class labels `V_000 .. V_111` in layout order.
pub const EXAMPLE_CLASS_LABELS: [&str; 8] = ["000", "001", "010", "011", "100", "101", "110", "111"];

/// Class sizes in layout order.
pub const EXAMPLE_CLASS_SIZES: [usize; 8] = [735, 630, 210, 63, 315, 140, 0, 91];

/// Nonzero bipartite densities `(class, class, numerator, denominator)` between distinct classes.
pub const EXAMPLE_DENSITIES: [(usize, usize, usize, usize); 11] = [
    (0, 1, 1, 15),
    (0, 2, 1, 105),
    (0, 3, 2, 21),
    (0, 4, 2, 105),
    (0, 5, 4, 35),
    (0, 7, 1, 7),
    (1, 2, 1, 10),
    (1, 4, 1, 9),
    (2, 4, 1, 15),
    (2, 5, 1, 10),
    (3, 4, 1, 9),
];

/// Circulant generators `±1..±10` for the 20-regular graph on `V_000`.
pub const EXAMPLE_INNER_GENERATORS: [i64; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

/// Degree of the three-cover example.
pub const EXAMPLE_DEGREE: usize = 105;

/// Cover parameters of `S1`, `S2`, `S3`.
pub const EXAMPLE_RS: [usize; 3] = [77, 21, 35];

/// The 2184-vertex, 105-regular graph with three independent exact covers.
#[derive(Debug, Clone)]
pub struct ThreeCoverExample {
    pub graph: GeneralizedGraph,
    pub classes: Vec<Range<usize>>,
    pub covers: [CoverCertificate; 3],
}

/// Builds the three-cover example; `S_i` is the union of classes whose label
/// has bit `i` set (reading labels right to left).
pub fn example_three_cover() -> Result<ThreeCoverExample> {
    let mut classes = Vec::with_capacity(8);
    let mut start = 0;
    for &size in &EXAMPLE_CLASS_SIZES {
        classes.push(start..start + size);
        start += size;
    }
    let n = start;
    let mut b = GraphBuilder::new(n);
    for (u, v) in circulant_edges(EXAMPLE_CLASS_SIZES[0], &EXAMPLE_INNER_GENERATORS)? {
        b.edge(u, v)?;
    }
    for &(x, y, num, den) in &EXAMPLE_DENSITIES {
        let (nx, ny) = (EXAMPLE_CLASS_SIZES[x], EXAMPLE_CLASS_SIZES[y]);
        if (num * ny) % den != 0 || (num * nx) % den != 0 {
            return Err(Error::InvalidParameters(format!(
                "density {num}/{den} not integral on {x},{y}"
            )));
        }
        for (l, r) in biregular_edges(nx, ny, num * ny / den, num * nx / den)? {
            b.edge(classes[x].start + l, classes[y].start + r)?;
        }
    }
    let graph = b.build();
    graph.require_regular(EXAMPLE_DEGREE)?;
    let cover = |bit: usize, r: usize| {
        let subset = (0..8)
            .filter(|c| c >> bit & 1 == 1)
            .flat_map(|c| classes[c].clone())
            .collect();
        CoverCertificate::new(subset, r, EXAMPLE_DEGREE)
    };
    let covers = [
        cover(0, EXAMPLE_RS[0])?,
        cover(1, EXAMPLE_RS[1])?,
        cover(2, EXAMPLE_RS[2])?,
    ];
    for c in &covers {
        require_cover(&graph, c)?;
    }
    Ok(ThreeCoverExample { graph, classes, covers })
}
