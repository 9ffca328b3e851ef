//! Covering maps between generalized graphs and common coverings.
//!
//! A covering map is a map on darts. It must be surjective, send each dart
//! neighbourhood bijectively onto a dart neighbourhood, and respect pairing:
//! paired darts go to paired (or equal) darts, semi-edges to semi-edges.

use std::fmt;
use std::sync::Arc;

use crate::cover::{require_cover, CoverCertificate};
use crate::error::{Error, Result};
use crate::factorize::{factorize_with_matching, two_factorize, Factorization};
use crate::graph::{GeneralizedGraph, OrbitKind};

/// Dart-level map from `source` onto `target` with its induced vertex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    source: Arc<GeneralizedGraph>,
    target: Arc<GeneralizedGraph>,
    dart_map: Vec<usize>,
    vertex_map: Vec<usize>,
}

impl CoveringMap {
    /// Wraps raw maps without checking them; use [`verify_covering`].
    pub fn new(
        source: Arc<GeneralizedGraph>,
        target: Arc<GeneralizedGraph>,
        dart_map: Vec<usize>,
        vertex_map: Vec<usize>,
    ) -> Self {
        Self {
            source,
            target,
            dart_map,
            vertex_map,
        }
    }

    /// Derives the vertex map from the first dart at each source vertex.
    pub fn from_dart_map(
        source: Arc<GeneralizedGraph>,
        target: Arc<GeneralizedGraph>,
        dart_map: Vec<usize>,
    ) -> Result<Self> {
        if dart_map.len() != source.n_darts() {
            return Err(Error::CoveringRejected(format!(
                "dart map has {} entries, source has {} darts",
                dart_map.len(),
                source.n_darts()
            )));
        }
        let mut vertex_map = Vec::with_capacity(source.n_vertices());
        for v in 0..source.n_vertices() {
            let &x = source
                .darts_at(v)
                .first()
                .ok_or_else(|| Error::CoveringRejected(format!("isolated vertex {v} has no image")))?;
            let y = dart_map[x];
            if y >= target.n_darts() {
                return Err(Error::DartOutOfRange {
                    dart: y,
                    m: target.n_darts(),
                });
            }
            vertex_map.push(target.vertex_of(y));
        }
        Ok(Self::new(source, target, dart_map, vertex_map))
    }

    pub fn identity(g: Arc<GeneralizedGraph>) -> Self {
        let dart_map = (0..g.n_darts()).collect();
        let vertex_map = (0..g.n_vertices()).collect();
        Self::new(g.clone(), g, dart_map, vertex_map)
    }

    pub fn source(&self) -> &Arc<GeneralizedGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GeneralizedGraph> {
        &self.target
    }

    pub fn dart_map(&self) -> &[usize] {
        &self.dart_map
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// `outer ∘ self`: follows `self` and then `outer`, whose source must be `self`'s target.
    pub fn then(&self, outer: &CoveringMap) -> Result<CoveringMap> {
        if *self.target != *outer.source {
            return Err(Error::CoveringRejected("composition: target and source differ".into()));
        }
        Ok(CoveringMap {
            source: self.source.clone(),
            target: outer.target.clone(),
            dart_map: self.dart_map.iter().map(|&y| outer.dart_map[y]).collect(),
            vertex_map: self.vertex_map.iter().map(|&w| outer.vertex_map[w]).collect(),
        })
    }

    /// Source vertices over each target vertex.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.target.n_vertices()];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            if w < fibers.len() {
                fibers[w].push(v);
            }
        }
        fibers
    }

    /// Preimages of every target dart.
    fn dart_fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.target.n_darts()];
        for (x, &y) in self.dart_map.iter().enumerate() {
            fibers[y].push(x);
        }
        fibers
    }
}

/// First broken covering condition, numbered as in the usual four-item definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoveringViolation {
    /// Array lengths or ids out of range.
    Malformed(String),
    /// Item 1: `target_dart` has no preimage.
    NotSurjective { target_dart: usize },
    /// Item 2: `dart` at `vertex` lands away from `vertex_map[vertex]`.
    VertexMismatch { dart: usize, vertex: usize },
    /// Item 3: paired darts `dart`, `partner` map to unpaired distinct darts.
    PairingBroken { dart: usize, partner: usize },
    /// Item 3: semi-edge `dart` maps to a paired dart.
    SemiEdgeImage { dart: usize },
    /// Item 4: the dart neighbourhood of `vertex` is not mapped bijectively.
    NotLocalBijection { vertex: usize },
}

impl CoveringViolation {
    pub fn item(&self) -> u8 {
        match self {
            CoveringViolation::Malformed(_) => 0,
            CoveringViolation::NotSurjective { .. } => 1,
            CoveringViolation::VertexMismatch { .. } => 2,
            CoveringViolation::PairingBroken { .. } | CoveringViolation::SemiEdgeImage { .. } => 3,
            CoveringViolation::NotLocalBijection { .. } => 4,
        }
    }
}

impl fmt::Display for CoveringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "item {}: {:?}", self.item(), self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringReport {
    pub first_violation: Option<CoveringViolation>,
}

impl CoveringReport {
    pub fn ok(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks all four covering-map conditions.
pub fn verify_covering(cm: &CoveringMap) -> CoveringReport {
    CoveringReport {
        first_violation: find_violation(cm).err(),
    }
}

fn find_violation(cm: &CoveringMap) -> std::result::Result<(), CoveringViolation> {
    let (s, t) = (&*cm.source, &*cm.target);
    if cm.dart_map.len() != s.n_darts() || cm.vertex_map.len() != s.n_vertices() {
        return Err(CoveringViolation::Malformed(
            "map lengths do not match the source".into(),
        ));
    }
    if let Some(&y) = cm.dart_map.iter().find(|&&y| y >= t.n_darts()) {
        return Err(CoveringViolation::Malformed(format!("image dart {y} out of range")));
    }
    if let Some(&w) = cm.vertex_map.iter().find(|&&w| w >= t.n_vertices()) {
        return Err(CoveringViolation::Malformed(format!("image vertex {w} out of range")));
    }
    let mut hit = vec![false; t.n_darts()];
    for &y in &cm.dart_map {
        hit[y] = true;
    }
    if let Some(y) = hit.iter().position(|&h| !h) {
        return Err(CoveringViolation::NotSurjective { target_dart: y });
    }
    for x in 0..s.n_darts() {
        let v = s.vertex_of(x);
        if t.vertex_of(cm.dart_map[x]) != cm.vertex_map[v] {
            return Err(CoveringViolation::VertexMismatch { dart: x, vertex: v });
        }
    }
    for x in 0..s.n_darts() {
        let p = s.partner(x);
        let (y, yp) = (cm.dart_map[x], cm.dart_map[p]);
        if p == x {
            if !t.is_semi(y) {
                return Err(CoveringViolation::SemiEdgeImage { dart: x });
            }
        } else if t.partner(y) != yp && y != yp {
            return Err(CoveringViolation::PairingBroken { dart: x, partner: p });
        }
    }
    let mut stamp = vec![usize::MAX; t.n_darts()];
    for v in 0..s.n_vertices() {
        let w = cm.vertex_map[v];
        let star = s.darts_at(v);
        if star.len() != t.darts_at(w).len() {
            return Err(CoveringViolation::NotLocalBijection { vertex: v });
        }
        for &x in star {
            let y = cm.dart_map[x];
            if stamp[y] == v {
                return Err(CoveringViolation::NotLocalBijection { vertex: v });
            }
            stamp[y] = v;
        }
    }
    Ok(())
}

/// Tally of target orbits whose preimage structure was confirmed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureReport {
    /// Ordinary edges whose preimage is a perfect matching between fibers.
    pub matchings: usize,
    /// Loops whose preimage is a spanning union of cycles of the fiber.
    pub cycle_families: usize,
    /// Semi-edges whose preimage is a 1-factor of the fiber.
    pub one_factors: usize,
    /// Source loops and semi-edges whose images were confirmed loops and semi-edges.
    pub image_checks: usize,
    pub first_violation: Option<String>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Classifies the preimage of every target orbit and checks the image of
/// every source loop and semi-edge.
pub fn structure_check(cm: &CoveringMap) -> Result<StructureReport> {
    if let Some(v) = verify_covering(cm).first_violation {
        return Err(Error::CoveringRejected(v.to_string()));
    }
    let (s, t) = (&*cm.source, &*cm.target);
    let pre = cm.dart_fibers();
    let fibers = cm.fibers();
    let mut rep = StructureReport::default();
    let fail = |rep: &mut StructureReport, msg: String| {
        if rep.first_violation.is_none() {
            rep.first_violation = Some(msg);
        }
    };
    for (y, yp) in t.orbits() {
        let u = t.vertex_of(y);
        match t.orbit_kind(y) {
            OrbitKind::Ordinary => {
                let w = t.vertex_of(yp);
                let ok = pre[y].len() == fibers[u].len()
                    && pre[yp].len() == fibers[w].len()
                    && pre[y].len() == pre[yp].len()
                    && pre[y].iter().all(|&x| {
                        let p = s.partner(x);
                        p != x && cm.dart_map[p] == yp && cm.vertex_map[s.vertex_of(p)] == w
                    });
                if ok {
                    rep.matchings += 1;
                } else {
                    fail(&mut rep, format!("edge orbit ({y}, {yp}) does not lift to a matching"));
                }
            }
            OrbitKind::Loop => {
                // every fiber vertex meets exactly one dart over y and one over yp
                let ok = pre[y].len() == fibers[u].len()
                    && pre[yp].len() == fibers[u].len()
                    && pre[y].iter().chain(&pre[yp]).all(|&x| {
                        let p = s.partner(x);
                        p != x && matches!(cm.dart_map[p], z if z == y || z == yp)
                    });
                if ok {
                    rep.cycle_families += 1;
                } else {
                    fail(&mut rep, format!("loop orbit ({y}, {yp}) does not lift to cycles"));
                }
            }
            OrbitKind::Semi => {
                let ok = pre[y].len() == fibers[u].len() && pre[y].iter().all(|&x| cm.dart_map[s.partner(x)] == y);
                if ok {
                    rep.one_factors += 1;
                } else {
                    fail(&mut rep, format!("semi-edge {y} does not lift to a 1-factor"));
                }
            }
        }
    }
    for (x, xp) in s.orbits() {
        match s.orbit_kind(x) {
            OrbitKind::Ordinary => {}
            OrbitKind::Loop => {
                let (y, yp) = (cm.dart_map[x], cm.dart_map[xp]);
                if y != yp && t.partner(y) == yp && t.orbit_kind(y) == OrbitKind::Loop {
                    rep.image_checks += 1;
                } else {
                    fail(&mut rep, format!("loop ({x}, {xp}) maps to a non-loop"));
                }
            }
            OrbitKind::Semi => {
                if t.is_semi(cm.dart_map[x]) {
                    rep.image_checks += 1;
                } else {
                    fail(&mut rep, format!("semi-edge {x} maps to a non-semi-edge"));
                }
            }
        }
    }
    Ok(rep)
}

/// A common covering of two graphs with its coordinate projections.
#[derive(Debug, Clone)]
pub struct CommonCovering {
    pub graph: Arc<GeneralizedGraph>,
    pub factorization: Factorization,
    pub first: CoveringMap,
    pub second: CoveringMap,
}

/// Diagonal common covering of two regular graphs with factorizations of the
/// same signature.
///
/// Vertex `(u, v)` is numbered `u * |V(g2)| + v` and carries `d` darts in slot
/// order: one per 1-factor colour, then forward and backward darts per
/// 2-factor colour. The projections send each slot to the corresponding dart
/// of the factor.
pub fn common_covering(
    g1: &Arc<GeneralizedGraph>,
    f1: &Factorization,
    g2: &Arc<GeneralizedGraph>,
    f2: &Factorization,
) -> Result<CommonCovering> {
    let d = g1
        .regular_degree()
        .ok_or_else(|| Error::SignatureMismatch("first graph is not regular".into()))?;
    if g2.regular_degree() != Some(d) {
        return Err(Error::SignatureMismatch(format!("second graph is not {d}-regular")));
    }
    if f1.signature() != f2.signature() {
        return Err(Error::SignatureMismatch(format!(
            "factorizations {:?} and {:?}",
            f1.signature(),
            f2.signature()
        )));
    }
    let (a, b) = f1.signature();
    if a + 2 * b != d {
        return Err(Error::SignatureMismatch(format!(
            "a + 2b = {} but degree is {d}",
            a + 2 * b
        )));
    }
    f1.check(g1)?;
    f2.check(g2)?;
    let (o1, o2) = (f1.orientation(g1), f2.orientation(g2));
    let (n1, n2) = (g1.n_vertices(), g2.n_vertices());
    let n = n1 * n2;
    let m = n * d;

    // slot -> (class colour, forward flag, partner slot)
    let slot_info: Vec<(usize, bool, usize)> = (0..d)
        .map(|s| {
            if s < a {
                (s, false, s)
            } else {
                let k = s - a;
                let fwd = k % 2 == 0;
                (a + k / 2, fwd, if fwd { s + 1 } else { s - 1 })
            }
        })
        .collect();

    let mut incidence = Vec::with_capacity(m);
    let mut pairing = Vec::with_capacity(m);
    let mut color = Vec::with_capacity(m);
    let mut forward = Vec::with_capacity(m);
    let mut map1 = Vec::with_capacity(m);
    let mut map2 = Vec::with_capacity(m);
    for u in 0..n1 {
        for v in 0..n2 {
            let p = u * n2 + v;
            for (s, &(c, fwd, ps)) in slot_info.iter().enumerate() {
                let (x1, x2) = (o1.slot_dart(u, s), o2.slot_dart(v, s));
                let q = g1.head(x1) * n2 + g2.head(x2);
                incidence.push(p);
                pairing.push(q * d + ps);
                color.push(c);
                forward.push(fwd);
                map1.push(x1);
                map2.push(x2);
            }
        }
    }
    let graph = Arc::new(GeneralizedGraph::from_darts(n, incidence, pairing)?);
    let factorization = Factorization::new(&graph, a, b, color, forward)?;
    let first = CoveringMap::new(graph.clone(), g1.clone(), map1, (0..n).map(|p| p / n2).collect());
    let second = CoveringMap::new(graph.clone(), g2.clone(), map2, (0..n).map(|p| p % n2).collect());
    Ok(CommonCovering {
        graph,
        factorization,
        first,
        second,
    })
}

/// Result of folding the common covering over a list of graphs.
#[derive(Debug, Clone)]
pub struct IteratedCovering {
    pub graph: Arc<GeneralizedGraph>,
    pub factorization: Factorization,
    /// One covering map per input, in input order.
    pub projections: Vec<CoveringMap>,
}

/// Factorization used for one input of the iterated construction.
pub fn factorize_input(g: &GeneralizedGraph, matching: Option<&[usize]>) -> Result<Factorization> {
    let d = g.regular_degree().ok_or(Error::NotRegular { expected: 0 })?;
    if d % 2 == 0 {
        two_factorize(g)
    } else {
        let m = matching.ok_or_else(|| Error::NotOneFactor("odd degree requires a 1-factor".into()))?;
        factorize_with_matching(g, m)
    }
}

/// Left fold of [`common_covering`] over `graphs`.
///
/// Even degree uses pure 2-factorizations; odd degree needs a 1-factor holding
/// every semi-edge for each input.
pub fn iterated_common_covering(graphs: &[(Arc<GeneralizedGraph>, Option<Vec<usize>>)]) -> Result<IteratedCovering> {
    let ((g0, m0), rest) = graphs
        .split_first()
        .ok_or_else(|| Error::InvalidParameters("empty graph list".into()))?;
    let d = g0.regular_degree().ok_or(Error::NotRegular { expected: 0 })?;
    for (g, _) in graphs {
        g.require_regular(d)?;
    }
    let mut acc = IteratedCovering {
        graph: g0.clone(),
        factorization: factorize_input(g0, m0.as_deref())?,
        projections: vec![CoveringMap::identity(g0.clone())],
    };
    for (g, m) in rest {
        let f = factorize_input(g, m.as_deref())?;
        let cc = common_covering(&acc.graph, &acc.factorization, g, &f)?;
        let mut projections = Vec::with_capacity(acc.projections.len() + 1);
        for p in &acc.projections {
            projections.push(cc.first.then(p)?);
        }
        projections.push(cc.second);
        acc = IteratedCovering {
            graph: cc.graph,
            factorization: cc.factorization,
            projections,
        };
    }
    Ok(acc)
}

/// Pulls a verified cover of the target back along a covering map.
pub fn lift_cover(cm: &CoveringMap, c: &CoverCertificate) -> Result<CoverCertificate> {
    if let Some(v) = verify_covering(cm).first_violation {
        return Err(Error::CoveringRejected(v.to_string()));
    }
    require_cover(&cm.target, c)?;
    let in_s = c.membership(cm.target.n_vertices());
    let subset = (0..cm.source.n_vertices())
        .filter(|&v| in_s[cm.vertex_map[v]])
        .collect();
    CoverCertificate::new(subset, c.r(), c.d())
}
