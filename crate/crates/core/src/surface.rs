//! Horizontal surfaces over a graph manifold, their slopes and spirality.
//!
//! Cutting a horizontal surface along the preimage of the JSJ tori leaves
//! pieces, each a finite cover of its block's base. A circle of the preimage
//! is recorded twice, once per side, as boundary circles of the adjacent
//! pieces; an edge joins the two records. Orienting an edge `Forward` means
//! crossing from the near side of its torus to the far side.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use petgraph::graph::{NodeIndex, UnGraph};
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::algebra::{reduce, wedge, AlgebraError, BasisTag, HomologyClass, PositiveRational};
use crate::manifold::{
    validate_manifold, BoundaryRef, GraphManifold, JsjTorus, Side, ValidationReport, Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("unknown circle {0}")]
    UnknownCircle(String),
    #[error("unknown piece {0}")]
    UnknownPiece(String),
    #[error("piece {piece} is not an endpoint of edge {edge}")]
    NotEndpoint { edge: String, piece: String },
    #[error("walk is not closed: step {step} starts at {found} but the previous step ended at {expected}")]
    BrokenCycle {
        step: usize,
        expected: String,
        found: String,
    },
    #[error("surface has no edges, governor is undefined")]
    NoEdges,
    #[error("torus {torus}: fibers meet with intersection number {wedge}, expected ±1")]
    FiberBasis { torus: String, wedge: BigInt },
    #[error("surface is invalid:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePiece {
    pub id: String,
    pub block: String,
    pub degree: u64,
    pub genus: u64,
}

impl SurfacePiece {
    pub fn new(id: impl Into<String>, block: impl Into<String>, degree: u64, genus: u64) -> Self {
        SurfacePiece {
            id: id.into(),
            block: block.into(),
            degree,
            genus,
        }
    }
}

/// Where a boundary circle of a piece lies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attachment {
    /// On one side of a JSJ torus.
    Torus { torus: String, side: Side },
    /// On a free boundary torus of the manifold.
    Boundary(BoundaryRef),
}

impl Attachment {
    pub fn basis(&self) -> BasisTag {
        match self {
            Attachment::Torus { torus, side } => BasisTag::torus_side(torus, side.as_str()),
            Attachment::Boundary(b) => BasisTag::boundary(&b.block, &b.label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceCircle {
    pub id: String,
    pub piece: String,
    pub attachment: Attachment,
    pub class: HomologyClass,
}

impl SurfaceCircle {
    /// The class `(a, b)` is read in the basis of the attachment side.
    pub fn new(
        id: impl Into<String>,
        piece: impl Into<String>,
        attachment: Attachment,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
    ) -> Self {
        let class = HomologyClass::new(a, b, attachment.basis());
        SurfaceCircle {
            id: id.into(),
            piece: piece.into(),
            attachment,
            class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceEdge {
    pub id: String,
    pub near_circle: String,
    pub far_circle: String,
}

impl SurfaceEdge {
    pub fn new(id: impl Into<String>, near: impl Into<String>, far: impl Into<String>) -> Self {
        SurfaceEdge {
            id: id.into(),
            near_circle: near.into(),
            far_circle: far.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Near side to far side.
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn sign(self) -> char {
        match self {
            Direction::Forward => '+',
            Direction::Backward => '-',
        }
    }

    fn initial_side(self) -> Side {
        match self {
            Direction::Forward => Side::Near,
            Direction::Backward => Side::Far,
        }
    }
}

/// One oriented edge of a walk.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: String,
    pub direction: Direction,
}

impl Step {
    pub fn new(edge: impl Into<String>, direction: Direction) -> Self {
        Step {
            edge: edge.into(),
            direction,
        }
    }

    pub fn reversed(&self) -> Step {
        Step::new(self.edge.clone(), self.direction.reversed())
    }
}

/// A closed walk `e₁·e₂⋯e_m` in the piece graph Ω_S.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Cycle {
    steps: Vec<Step>,
}

impl Cycle {
    pub fn new(steps: Vec<Step>) -> Self {
        Cycle { steps }
    }

    pub fn empty() -> Self {
        Cycle::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> Cycle {
        Cycle::new(self.steps.iter().rev().map(Step::reversed).collect())
    }

    pub fn concat(&self, other: &Cycle) -> Cycle {
        Cycle::new(self.steps.iter().chain(&other.steps).cloned().collect())
    }

    pub fn rotated(&self, k: usize) -> Cycle {
        let mut steps = self.steps.clone();
        if !steps.is_empty() {
            let n = steps.len();
            steps.rotate_left(k % n);
        }
        Cycle::new(steps)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|s| format!("{}:{}", s.edge, s.direction.sign()))
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HorizontalSurface {
    pub manifold: GraphManifold,
    pub pieces: BTreeMap<String, SurfacePiece>,
    pub circles: BTreeMap<String, SurfaceCircle>,
    pub edges: BTreeMap<String, SurfaceEdge>,
}

impl HorizontalSurface {
    pub fn new(
        manifold: GraphManifold,
        pieces: Vec<SurfacePiece>,
        circles: Vec<SurfaceCircle>,
        edges: Vec<SurfaceEdge>,
    ) -> Self {
        HorizontalSurface {
            manifold,
            pieces: pieces.into_iter().map(|p| (p.id.clone(), p)).collect(),
            circles: circles.into_iter().map(|c| (c.id.clone(), c)).collect(),
            edges: edges.into_iter().map(|e| (e.id.clone(), e)).collect(),
        }
    }

    /// Boundary circles of a piece, in id order.
    pub fn circles_of<'a>(
        &'a self,
        piece: &'a str,
    ) -> impl Iterator<Item = &'a SurfaceCircle> + 'a {
        self.circles.values().filter(move |c| c.piece == piece)
    }

    /// 2 − 2·genus − #circles.
    pub fn piece_euler(&self, piece: &SurfacePiece) -> i128 {
        2 - 2 * piece.genus as i128 - self.circles_of(&piece.id).count() as i128
    }

    pub fn euler_sum(&self) -> i128 {
        self.pieces.values().map(|p| self.piece_euler(p)).sum()
    }

    /// No circle lies on a free boundary torus.
    pub fn is_closed(&self) -> bool {
        self.circles
            .values()
            .all(|c| matches!(c.attachment, Attachment::Torus { .. }))
    }

    /// Vertices of Ω_S: (start piece, end piece) of an oriented edge.
    pub fn endpoints(&self, step: &Step) -> Result<(&str, &str), SurfaceError> {
        let e = self
            .edges
            .get(&step.edge)
            .ok_or_else(|| SurfaceError::UnknownEdge(step.edge.clone()))?;
        let near = self.circle_piece(&e.near_circle)?;
        let far = self.circle_piece(&e.far_circle)?;
        Ok(match step.direction {
            Direction::Forward => (near, far),
            Direction::Backward => (far, near),
        })
    }

    /// The direction in which `edge` leaves `piece`. A loop edge leaves its
    /// piece in both directions; `Forward` is reported.
    pub fn direction_from(&self, edge: &str, piece: &str) -> Result<Direction, SurfaceError> {
        if !self.pieces.contains_key(piece) {
            return Err(SurfaceError::UnknownPiece(piece.to_string()));
        }
        let fwd = Step::new(edge, Direction::Forward);
        let (start, end) = self.endpoints(&fwd)?;
        if start == piece {
            Ok(Direction::Forward)
        } else if end == piece {
            Ok(Direction::Backward)
        } else {
            Err(SurfaceError::NotEndpoint {
                edge: edge.to_string(),
                piece: piece.to_string(),
            })
        }
    }

    fn circle_piece(&self, circle: &str) -> Result<&str, SurfaceError> {
        self.circles
            .get(circle)
            .map(|c| c.piece.as_str())
            .ok_or_else(|| SurfaceError::UnknownCircle(circle.to_string()))
    }

    fn edge_parts(
        &self,
        edge: &str,
    ) -> Result<(&SurfaceCircle, &SurfaceCircle, &JsjTorus), SurfaceError> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| SurfaceError::UnknownEdge(edge.to_string()))?;
        let circle = |id: &String| {
            self.circles
                .get(id)
                .ok_or_else(|| SurfaceError::UnknownCircle(id.clone()))
        };
        let near = circle(&e.near_circle)?;
        let far = circle(&e.far_circle)?;
        let torus = match &near.attachment {
            Attachment::Torus { torus, .. } => self.manifold.tori.get(torus),
            Attachment::Boundary(_) => None,
        };
        let torus = torus.ok_or_else(|| SurfaceError::UnknownCircle(e.near_circle.clone()))?;
        Ok((near, far, torus))
    }
}

/// The piece graph Ω_S: vertices are piece ids, edges are surface edge ids.
pub fn surface_graph(s: &HorizontalSurface) -> UnGraph<String, String> {
    let mut g = UnGraph::new_undirected();
    let idx: BTreeMap<&str, NodeIndex> = s
        .pieces
        .keys()
        .map(|id| (id.as_str(), g.add_node(id.clone())))
        .collect();
    for e in s.edges.values() {
        let ends = (s.circles.get(&e.near_circle), s.circles.get(&e.far_circle));
        if let (Some(a), Some(b)) = ends {
            if let (Some(&u), Some(&v)) = (idx.get(a.piece.as_str()), idx.get(b.piece.as_str())) {
                g.add_edge(u, v, e.id.clone());
            }
        }
    }
    g
}

pub fn validate_surface(s: &HorizontalSurface) -> ValidationReport {
    let mut report = validate_manifold(&s.manifold);
    report.extend(validate_surface_only(s));
    report
}

fn validate_surface_only(s: &HorizontalSurface) -> ValidationReport {
    let m = &s.manifold;
    let mut report = ValidationReport::default();
    if s.pieces.is_empty() {
        report.push(Violation::NoPieces);
    }

    // boundary of the manifold each circle sits over
    let mut over: BTreeMap<&str, BoundaryRef> = BTreeMap::new();
    for c in s.circles.values() {
        let piece = match s.pieces.get(&c.piece) {
            Some(p) => p,
            None => {
                report.push(Violation::CircleUnknownPiece {
                    circle: c.id.clone(),
                    piece: c.piece.clone(),
                });
                continue;
            }
        };
        if !c.class.is_horizontal_admissible() {
            report.push(Violation::NotHorizontal {
                circle: c.id.clone(),
            });
        }
        let expected = c.attachment.basis();
        if c.class.basis() != &expected {
            report.push(Violation::CircleBasis {
                circle: c.id.clone(),
                expected,
                actual: c.class.basis().clone(),
            });
        }
        let boundary = match &c.attachment {
            Attachment::Torus { torus, side } => match m.tori.get(torus) {
                Some(t) => t.side(*side).clone(),
                None => {
                    report.push(Violation::CircleUnknownTorus {
                        circle: c.id.clone(),
                        torus: torus.clone(),
                    });
                    continue;
                }
            },
            Attachment::Boundary(b) => {
                if m.torus_at(b).is_some() {
                    report.push(Violation::CircleOnGluedBoundary {
                        circle: c.id.clone(),
                        boundary: b.clone(),
                    });
                }
                b.clone()
            }
        };
        if boundary.block != piece.block {
            report.push(Violation::CircleWrongBlock {
                circle: c.id.clone(),
                expected: piece.block.clone(),
                actual: boundary.block.clone(),
            });
        }
        over.insert(&c.id, boundary);
    }

    for p in s.pieces.values() {
        let Some(block) = m.blocks.get(&p.block) else {
            report.push(Violation::PieceUnknownBlock {
                piece: p.id.clone(),
                block: p.block.clone(),
            });
            continue;
        };
        if p.degree == 0 {
            report.push(Violation::ZeroDegree {
                piece: p.id.clone(),
            });
        }
        let expected = p.degree as i128 * block.euler_characteristic();
        let actual = s.piece_euler(p);
        if expected != actual {
            report.push(Violation::PieceEuler {
                piece: p.id.clone(),
                expected,
                actual,
            });
        }
        for label in &block.boundary {
            let boundary = BoundaryRef::new(&block.id, label);
            let total: BigInt = s
                .circles_of(&p.id)
                .filter(|c| over.get(c.id.as_str()) == Some(&boundary))
                .map(|c| c.class.a().abs())
                .sum();
            if total != BigInt::from(p.degree) {
                report.push(Violation::DegreeSum {
                    piece: p.id.clone(),
                    boundary,
                    expected: p.degree,
                    actual: total,
                });
            }
        }
    }

    let mut usage: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for e in s.edges.values() {
        let mut ends = Vec::new();
        for (cid, want) in [(&e.near_circle, Side::Near), (&e.far_circle, Side::Far)] {
            usage.entry(cid).or_default().push(e.id.clone());
            match s.circles.get(cid) {
                None => report.push(Violation::EdgeUnknownCircle {
                    edge: e.id.clone(),
                    circle: cid.clone(),
                }),
                Some(c) => match &c.attachment {
                    Attachment::Torus { torus, side } if *side == want => {
                        ends.push((c, torus.clone()))
                    }
                    _ => report.push(Violation::EdgeSideMismatch {
                        edge: e.id.clone(),
                        detail: format!("circle {cid} is not on the {want} side of a torus"),
                    }),
                },
            }
        }
        if let [(near, tn), (far, tf)] = ends.as_slice() {
            if tn != tf {
                report.push(Violation::EdgeSideMismatch {
                    edge: e.id.clone(),
                    detail: format!("circles lie on different tori {tn} and {tf}"),
                });
            } else if let Some(t) = m.tori.get(tn) {
                let carried = t.carry(&near.class, Side::Near);
                if !carried.is_some_and(|c| c.equals_up_to_sign(&far.class)) {
                    report.push(Violation::IncompatibleClasses {
                        edge: e.id.clone(),
                        near: near.class.clone(),
                        far: far.class.clone(),
                    });
                }
            }
        }
    }
    for c in s.circles.values() {
        let used = usage.get(c.id.as_str()).map_or(0, Vec::len);
        if used > 1 {
            report.push(Violation::CircleReused {
                circle: c.id.clone(),
                edges: usage[c.id.as_str()].clone(),
            });
        }
        if used == 0 && matches!(c.attachment, Attachment::Torus { .. }) {
            report.push(Violation::UnmatchedCircle {
                circle: c.id.clone(),
            });
        }
    }

    if !s.pieces.is_empty() {
        let components = petgraph::algo::connected_components(&surface_graph(s));
        if components != 1 {
            report.push(Violation::Disconnected {
                what: "piece",
                components,
            });
        }
    }
    report
}

/// Slope of an oriented edge from section coefficients: `|m / m'|`, where
/// `m` is the `α`-coefficient of the circle on the initial side and `m'` on
/// the terminal side, each in its own side's basis.
pub fn slope(
    s: &HorizontalSurface,
    edge: &str,
    direction: Direction,
) -> Result<PositiveRational, SurfaceError> {
    let (near, far, _) = s.edge_parts(edge)?;
    let (init, term) = match direction {
        Direction::Forward => (near, far),
        Direction::Backward => (far, near),
    };
    Ok(reduce(init.class.a(), term.class.a())?)
}

/// Slope of an oriented edge from the fiber decomposition
/// `[c] = a·β_init + b·β_term` on the torus, solved by Cramer's rule with
/// intersection numbers; returns `|b / a|`.
///
/// Everything is computed in the far basis from the near circle's class and
/// the gluing matrix alone; the far circle's stored class is not read.
pub fn slope_fiber_decomposition(
    s: &HorizontalSurface,
    edge: &str,
    direction: Direction,
) -> Result<PositiveRational, SurfaceError> {
    let (near, _, torus) = s.edge_parts(edge)?;
    let far_basis = torus.basis(Side::Far);
    let (qa, qb) = torus.matrix.apply(near.class.a(), near.class.b());
    let c = HomologyClass::new(qa, qb, far_basis.clone());
    let (fa, fb) = torus.matrix.apply(&BigInt::zero(), &BigInt::one());
    let near_fiber = HomologyClass::new(fa, fb, far_basis.clone());
    let far_fiber = HomologyClass::new(0, 1, far_basis);
    let (init, term) = match direction.initial_side() {
        Side::Near => (near_fiber, far_fiber),
        Side::Far => (far_fiber, near_fiber),
    };
    let det = wedge(&init, &term)?;
    if !det.abs().is_one() {
        return Err(SurfaceError::FiberBasis {
            torus: torus.id.clone(),
            wedge: det,
        });
    }
    // det = ±1 so both quotients are exact
    let a = wedge(&c, &term)? / &det;
    let b = wedge(&c, &init)? / -&det;
    Ok(reduce(&b, &a)?)
}

/// Largest slope over all oriented edges.
pub fn governor(s: &HorizontalSurface) -> Result<PositiveRational, SurfaceError> {
    let mut best: Option<PositiveRational> = None;
    for id in s.edges.keys() {
        for d in [Direction::Forward, Direction::Backward] {
            let v = slope(s, id, d)?;
            if best.as_ref().is_none_or(|b| &v > b) {
                best = Some(v);
            }
        }
    }
    best.ok_or(SurfaceError::NoEdges)
}

/// Checks that the walk is closed and connected.
pub fn check_cycle(s: &HorizontalSurface, cycle: &Cycle) -> Result<(), SurfaceError> {
    let mut first: Option<&str> = None;
    let mut prev: Option<&str> = None;
    for (i, step) in cycle.steps().iter().enumerate() {
        let (start, end) = s.endpoints(step)?;
        if let Some(p) = prev {
            if p != start {
                return Err(SurfaceError::BrokenCycle {
                    step: i,
                    expected: p.to_string(),
                    found: start.to_string(),
                });
            }
        }
        first.get_or_insert(start);
        prev = Some(end);
    }
    if let (Some(f), Some(p)) = (first, prev) {
        if f != p {
            return Err(SurfaceError::BrokenCycle {
                step: 0,
                expected: p.to_string(),
                found: f.to_string(),
            });
        }
    }
    Ok(())
}

/// Product of the slopes along a closed walk.
pub fn spirality(s: &HorizontalSurface, cycle: &Cycle) -> Result<PositiveRational, SurfaceError> {
    check_cycle(s, cycle)?;
    cycle
        .steps()
        .iter()
        .map(|st| slope(s, &st.edge, st.direction))
        .product()
}

/// Number of times the walk crosses the preimage of the JSJ tori.
pub fn crossing_number(cycle: &Cycle) -> usize {
    cycle.len()
}

/// Order in which edges are offered to the spanning tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    #[default]
    Ascending,
    Descending,
}

/// Fundamental cycles of a spanning forest of Ω_S, edges taken by ascending id.
pub fn cycle_basis(s: &HorizontalSurface) -> Vec<Cycle> {
    cycle_basis_with_order(s, EdgeOrder::Ascending)
}

/// Fundamental cycles of the spanning forest grown greedily from the edges in
/// the given order. Each cycle traverses its non-tree edge forward, then
/// returns through the tree.
pub fn cycle_basis_with_order(s: &HorizontalSurface, order: EdgeOrder) -> Vec<Cycle> {
    let index: BTreeMap<&str, usize> = s
        .pieces
        .keys()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let mut edges: Vec<(&str, usize, usize)> = s
        .edges
        .values()
        .filter_map(|e| {
            let u = index.get(s.circles.get(&e.near_circle)?.piece.as_str())?;
            let v = index.get(s.circles.get(&e.far_circle)?.piece.as_str())?;
            Some((e.id.as_str(), *u, *v))
        })
        .collect();
    if order == EdgeOrder::Descending {
        edges.reverse();
    }

    let n = index.len();
    let mut uf = UnionFind::<usize>::new(n);
    let mut adj: Vec<Vec<(usize, Step)>> = vec![Vec::new(); n];
    let mut chords = Vec::new();
    for &(id, u, v) in &edges {
        if uf.union(u, v) {
            adj[u].push((v, Step::new(id, Direction::Forward)));
            adj[v].push((u, Step::new(id, Direction::Backward)));
        } else {
            chords.push((id, u, v));
        }
    }

    // root every tree at its smallest piece; parent[x] = (parent, step x→parent)
    let mut parent: Vec<Option<(usize, Step)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for (y, step) in &adj[x] {
                if depth[*y] == usize::MAX {
                    depth[*y] = depth[x] + 1;
                    parent[*y] = Some((x, step.reversed()));
                    queue.push_back(*y);
                }
            }
        }
    }

    let tree_path = |from: usize, to: usize| -> Vec<Step> {
        let (mut a, mut b) = (from, to);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                let (p, step) = parent[a].clone().expect("same tree");
                up.push(step);
                a = p;
            } else {
                let (p, step) = parent[b].clone().expect("same tree");
                down.push(step.reversed());
                b = p;
            }
        }
        down.reverse();
        up.extend(down);
        up
    };

    chords
        .into_iter()
        .map(|(id, u, v)| {
            let mut steps = vec![Step::new(id, Direction::Forward)];
            steps.extend(tree_path(v, u));
            Cycle::new(steps)
        })
        .collect()
}

/// First Betti number of Ω_S: |edges| − |pieces| + #components.
pub fn cycle_rank(s: &HorizontalSurface) -> usize {
    let g = surface_graph(s);
    g.edge_count() + petgraph::algo::connected_components(&g) - g.node_count()
}

/// Spiralities of the basis cycles; they generate the image of the
/// spirality homomorphism.
pub fn spirality_image_generators(
    s: &HorizontalSurface,
) -> Result<Vec<PositiveRational>, SurfaceError> {
    spirality_image_generators_with_order(s, EdgeOrder::Ascending)
}

pub fn spirality_image_generators_with_order(
    s: &HorizontalSurface,
    order: EdgeOrder,
) -> Result<Vec<PositiveRational>, SurfaceError> {
    cycle_basis_with_order(s, order)
        .iter()
        .map(|c| spirality(s, c))
        .collect()
}

/// Separable iff the spirality homomorphism is trivial.
pub fn is_separable(s: &HorizontalSurface) -> Result<bool, SurfaceError> {
    is_separable_with_order(s, EdgeOrder::Ascending)
}

pub fn is_separable_with_order(
    s: &HorizontalSurface,
    order: EdgeOrder,
) -> Result<bool, SurfaceError> {
    Ok(spirality_image_generators_with_order(s, order)?
        .iter()
        .all(PositiveRational::is_one))
}

/// Validates and returns the surface, or the report as an error.
pub fn ensure_valid(s: &HorizontalSurface) -> Result<(), SurfaceError> {
    let report = validate_surface(s);
    if report.is_valid() {
        Ok(())
    } else {
        Err(SurfaceError::Invalid(report))
    }
}

/// Pieces that appear on a given oriented boundary label; used by doubling.
pub(crate) fn boundary_circles<'a>(
    s: &'a HorizontalSurface,
    boundary: &'a BoundaryRef,
) -> impl Iterator<Item = &'a SurfaceCircle> + 'a {
    s.circles
        .values()
        .filter(move |c| matches!(&c.attachment, Attachment::Boundary(b) if b == boundary))
}

pub(crate) fn pieces_with_free_circles(s: &HorizontalSurface) -> BTreeSet<String> {
    s.circles
        .values()
        .filter(|c| matches!(c.attachment, Attachment::Boundary(_)))
        .map(|c| c.piece.clone())
        .collect()
}
