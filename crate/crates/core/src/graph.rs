//! Dart-based generalized graphs.
//!
//! A generalized graph is a set of vertices together with darts (half-edges).
//! Every dart is incident to exactly one vertex, and an involution on the
//! darts pairs them up: two darts at distinct vertices form an ordinary edge,
//! two distinct darts at the same vertex form a loop, and a dart fixed by the
//! involution is a semi-edge.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// A finite generalized graph with darts `0..m` and vertices `0..n`.
///
/// Values are immutable once built; every constructor validates the
/// involution and incidence arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedGraph {
    n_vertices: usize,
    incidence: Vec<usize>,
    pairing: Vec<usize>,
    // CSR index of dart neighbourhoods, darts ascending within each vertex.
    star_offsets: Vec<usize>,
    star: Vec<usize>,
}

/// How a single pairing orbit looks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    Ordinary,
    Loop,
    Semi,
}

/// Structural flags of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GraphClass {
    pub has_semi_edge: bool,
    pub has_loop: bool,
    pub has_parallel_edge: bool,
    pub regular_degree: Option<usize>,
}

impl GraphClass {
    pub fn is_simple(&self) -> bool {
        !(self.has_semi_edge || self.has_loop || self.has_parallel_edge)
    }

    /// No semi-edges (loops and parallel edges allowed).
    pub fn is_multigraph(&self) -> bool {
        !self.has_semi_edge
    }
}

impl GeneralizedGraph {
    /// Builds a graph from raw dart arrays, checking every invariant.
    pub fn from_darts(n_vertices: usize, incidence: Vec<usize>, pairing: Vec<usize>) -> Result<Self> {
        let m = incidence.len();
        if pairing.len() != m {
            return Err(Error::InvalidParameters(format!(
                "incidence has {} darts but pairing has {}",
                m,
                pairing.len()
            )));
        }
        if let Some(&v) = incidence.iter().find(|&&v| v >= n_vertices) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: n_vertices,
            });
        }
        for (x, &y) in pairing.iter().enumerate() {
            if y >= m {
                return Err(Error::DartOutOfRange { dart: y, m });
            }
            if pairing[y] != x {
                return Err(Error::NotInvolution { dart: x });
            }
        }
        let mut star_offsets = vec![0usize; n_vertices + 1];
        for &v in &incidence {
            star_offsets[v + 1] += 1;
        }
        for v in 0..n_vertices {
            star_offsets[v + 1] += star_offsets[v];
        }
        let mut fill = star_offsets.clone();
        let mut star = vec![0usize; m];
        for (x, &v) in incidence.iter().enumerate() {
            star[fill[v]] = x;
            fill[v] += 1;
        }
        Ok(Self {
            n_vertices,
            incidence,
            pairing,
            star_offsets,
            star,
        })
    }

    /// Builds a graph from ordinary edges, loops and semi-edges.
    ///
    /// Darts are numbered in input order: edges first (lower endpoint's dart
    /// first), then loops (two darts each), then semi-edges (one dart each).
    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops: &[usize], semis: &[usize]) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.edge(u, v)?;
        }
        for &v in loops {
            b.loop_at(v)?;
        }
        for &v in semis {
            b.semi(v)?;
        }
        Ok(b.build())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_darts(&self) -> usize {
        self.incidence.len()
    }

    pub fn incidence(&self) -> &[usize] {
        &self.incidence
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    #[inline]
    pub fn vertex_of(&self, dart: usize) -> usize {
        self.incidence[dart]
    }

    #[inline]
    pub fn partner(&self, dart: usize) -> usize {
        self.pairing[dart]
    }

    /// Vertex at the far end of `dart`; for a semi-edge this is the dart's own vertex.
    #[inline]
    pub fn head(&self, dart: usize) -> usize {
        self.incidence[self.pairing[dart]]
    }

    /// Dart neighbourhood of `v`, ascending by dart id.
    #[inline]
    pub fn darts_at(&self, v: usize) -> &[usize] {
        &self.star[self.star_offsets[v]..self.star_offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n_vertices {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n_vertices,
            });
        }
        Ok(self.star_offsets[v + 1] - self.star_offsets[v])
    }

    #[inline]
    pub(crate) fn deg(&self, v: usize) -> usize {
        self.star_offsets[v + 1] - self.star_offsets[v]
    }

    pub fn orbit_kind(&self, dart: usize) -> OrbitKind {
        let p = self.pairing[dart];
        if p == dart {
            OrbitKind::Semi
        } else if self.incidence[p] == self.incidence[dart] {
            OrbitKind::Loop
        } else {
            OrbitKind::Ordinary
        }
    }

    pub fn is_semi(&self, dart: usize) -> bool {
        self.pairing[dart] == dart
    }

    /// Pairing orbits as `(smaller, larger)` dart pairs, ascending; semi-edges appear as `(x, x)`.
    pub fn orbits(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairing
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x <= y)
            .map(|(x, &y)| (x, y))
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n_vertices == 0 {
            return None;
        }
        let d = self.deg(0);
        (1..self.n_vertices).all(|v| self.deg(v) == d).then_some(d)
    }

    pub fn require_regular(&self, d: usize) -> Result<()> {
        if self.regular_degree() == Some(d) {
            Ok(())
        } else {
            Err(Error::NotRegular { expected: d })
        }
    }

    pub fn classify(&self) -> GraphClass {
        let mut class = GraphClass {
            regular_degree: self.regular_degree(),
            ..GraphClass::default()
        };
        let mut seen = HashSet::new();
        for (x, y) in self.orbits() {
            match self.orbit_kind(x) {
                OrbitKind::Semi => class.has_semi_edge = true,
                OrbitKind::Loop => class.has_loop = true,
                OrbitKind::Ordinary => {
                    let (u, v) = (self.incidence[x], self.incidence[y]);
                    if !seen.insert((u.min(v), u.max(v))) {
                        class.has_parallel_edge = true;
                    }
                }
            }
        }
        class
    }

    pub fn is_simple(&self) -> bool {
        self.classify().is_simple()
    }

    /// Ordinary edges as sorted `(u, v)` pairs with `u < v`, with multiplicity.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .orbits()
            .filter(|&(x, _)| self.orbit_kind(x) == OrbitKind::Ordinary)
            .map(|(x, y)| {
                let (u, v) = (self.incidence[x], self.incidence[y]);
                (u.min(v), u.max(v))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Sorted simple-graph neighbour lists. Fails on non-simple graphs.
    pub fn neighbour_lists(&self) -> Result<Vec<Vec<usize>>> {
        let class = self.classify();
        if !class.is_simple() {
            return Err(Error::NotSimple("loops, semi-edges or parallel edges present"));
        }
        Ok((0..self.n_vertices)
            .map(|v| {
                let mut ns: Vec<usize> = self.darts_at(v).iter().map(|&x| self.head(x)).collect();
                ns.sort_unstable();
                ns
            })
            .collect())
    }

    /// Tensor (categorical) product.
    ///
    /// Vertex `(u, v)` is flattened to `u * |V(h)| + v` and dart `(x, y)` to
    /// `x * |D(h)| + y`. Dart `(x, y)` is paired with `(pair(x), pair(y))`, so
    /// a semi-edge on either side behaves as a fixed point of its coordinate.
    pub fn tensor_product(&self, h: &GeneralizedGraph) -> GeneralizedGraph {
        let (mg, mh) = (self.n_darts(), h.n_darts());
        let nh = h.n_vertices;
        let mut incidence = Vec::with_capacity(mg * mh);
        let mut pairing = Vec::with_capacity(mg * mh);
        for x in 0..mg {
            for y in 0..mh {
                incidence.push(self.incidence[x] * nh + h.incidence[y]);
                pairing.push(self.pairing[x] * mh + h.pairing[y]);
            }
        }
        GeneralizedGraph::from_darts(self.n_vertices * nh, incidence, pairing)
            .expect("tensor product of valid graphs is valid")
    }

    /// Disjoint union of `copies` copies; copy `i` occupies vertices `i*n..(i+1)*n`.
    pub fn disjoint_copies(&self, copies: usize) -> GeneralizedGraph {
        let (n, m) = (self.n_vertices, self.n_darts());
        let mut incidence = Vec::with_capacity(m * copies);
        let mut pairing = Vec::with_capacity(m * copies);
        for c in 0..copies {
            incidence.extend(self.incidence.iter().map(|&v| v + c * n));
            pairing.extend(self.pairing.iter().map(|&x| x + c * m));
        }
        GeneralizedGraph::from_darts(n * copies, incidence, pairing).expect("copies of a valid graph are valid")
    }

    /// Keeps the darts with `keep[x]` set, renumbering them in ascending order.
    ///
    /// Returns the subgraph and the original id of each kept dart. The kept
    /// set must be closed under pairing.
    pub fn restrict_darts(&self, keep: &[bool]) -> Result<(GeneralizedGraph, Vec<usize>)> {
        let m = self.n_darts();
        if keep.len() != m {
            return Err(Error::InvalidParameters("dart mask length mismatch".into()));
        }
        let mut new_id = vec![usize::MAX; m];
        let mut old_ids = Vec::new();
        for x in (0..m).filter(|&x| keep[x]) {
            new_id[x] = old_ids.len();
            old_ids.push(x);
        }
        let mut incidence = Vec::with_capacity(old_ids.len());
        let mut pairing = Vec::with_capacity(old_ids.len());
        for &x in &old_ids {
            let p = self.pairing[x];
            if !keep[p] {
                return Err(Error::InvalidParameters(format!(
                    "dart set not closed under pairing at dart {x}"
                )));
            }
            incidence.push(self.incidence[x]);
            pairing.push(new_id[p]);
        }
        let g = GeneralizedGraph::from_darts(self.n_vertices, incidence, pairing)?;
        Ok((g, old_ids))
    }

    /// Connected components as ascending vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n_vertices];
        let mut out = Vec::new();
        for s in 0..self.n_vertices {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &x in self.darts_at(v) {
                    let w = self.head(x);
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Incremental builder producing darts in creation order.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    incidence: Vec<usize>,
    pairing: Vec<usize>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            incidence: Vec::new(),
            pairing: Vec::new(),
        }
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds an ordinary edge (or a loop when `u == v`); returns its first dart.
    pub fn edge(&mut self, u: usize, v: usize) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        let x = self.incidence.len();
        self.incidence.extend([u.min(v), u.max(v)]);
        self.pairing.extend([x + 1, x]);
        Ok(x)
    }

    pub fn loop_at(&mut self, v: usize) -> Result<usize> {
        self.edge(v, v)
    }

    pub fn semi(&mut self, v: usize) -> Result<usize> {
        self.check(v)?;
        let x = self.incidence.len();
        self.incidence.push(v);
        self.pairing.push(x);
        Ok(x)
    }

    pub fn n_darts(&self) -> usize {
        self.incidence.len()
    }

    pub fn build(self) -> GeneralizedGraph {
        GeneralizedGraph::from_darts(self.n, self.incidence, self.pairing).expect("builder keeps invariants")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> GeneralizedGraph {
        let edges: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        GeneralizedGraph::from_edges(4, &edges, &[], &[]).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = GeneralizedGraph::from_edges(2, &[(0, 1)], &[], &[]).unwrap();
        assert_eq!(g.n_darts(), 2);
        assert_eq!(g.pairing(), &[1, 0]);
        assert_eq!(g.orbit_kind(0), OrbitKind::Ordinary);
        assert!(g.is_simple());
    }

    #[test]
    fn loop_counts_two() {
        let g = GeneralizedGraph::from_edges(1, &[], &[0], &[]).unwrap();
        assert_eq!(g.n_darts(), 2);
        assert_eq!(g.degree(0).unwrap(), 2);
        assert_eq!(g.orbit_kind(0), OrbitKind::Loop);
        assert!(g.classify().has_loop);
    }

    #[test]
    fn semi_edge_counts_one() {
        let g = GeneralizedGraph::from_edges(1, &[], &[], &[0]).unwrap();
        assert_eq!(g.n_darts(), 1);
        assert_eq!(g.degree(0).unwrap(), 1);
        assert!(g.is_semi(0));
        assert!(!g.classify().is_multigraph());
    }

    #[test]
    fn edge_order_puts_lower_endpoint_first() {
        let g = GeneralizedGraph::from_edges(3, &[(2, 0)], &[], &[]).unwrap();
        assert_eq!(g.incidence(), &[0, 2]);
    }

    #[test]
    fn out_of_range() {
        assert_eq!(
            GeneralizedGraph::from_edges(2, &[(0, 2)], &[], &[]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        let g = k4();
        assert!(g.degree(4).is_err());
    }

    #[test]
    fn rejects_non_involution() {
        assert_eq!(
            GeneralizedGraph::from_darts(2, vec![0, 1, 1], vec![1, 2, 0]),
            Err(Error::NotInvolution { dart: 0 })
        );
    }

    #[test]
    fn classify_k4_and_dipole() {
        let c = k4().classify();
        assert!(c.is_simple());
        assert_eq!(c.regular_degree, Some(3));
        let d6 = GeneralizedGraph::from_edges(2, &[(0, 1); 6], &[], &[]).unwrap();
        let c = d6.classify();
        assert!(c.has_parallel_edge && !c.has_loop && !c.has_semi_edge);
        assert_eq!(c.regular_degree, Some(6));
    }

    #[test]
    fn tensor_of_loops() {
        let l = GeneralizedGraph::from_edges(1, &[], &[0], &[]).unwrap();
        let p = l.tensor_product(&l);
        assert_eq!(p.n_vertices(), 1);
        assert_eq!(p.degree(0).unwrap(), 4);
        // (a,a)-(b,b) and (a,b)-(b,a)
        assert_eq!(p.pairing(), &[3, 2, 1, 0]);
        let c = p.classify();
        assert!(c.has_loop && !c.has_semi_edge);
    }

    #[test]
    fn tensor_with_semi_edge_vertex_is_identity() {
        let s = GeneralizedGraph::from_edges(1, &[], &[], &[0]).unwrap();
        let g = k4();
        let p = g.tensor_product(&s);
        assert_eq!(p, g);
    }

    #[test]
    fn restrict_requires_closure() {
        let g = k4();
        let mut keep = vec![true; g.n_darts()];
        keep[0] = false;
        assert!(g.restrict_darts(&keep).is_err());
        keep[1] = false;
        let (h, ids) = g.restrict_darts(&keep).unwrap();
        assert_eq!(h.n_darts(), 10);
        assert_eq!(ids[0], 2);
    }

    #[test]
    fn components_of_copies() {
        let g = k4().disjoint_copies(3);
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[1], vec![4, 5, 6, 7]);
    }
}
