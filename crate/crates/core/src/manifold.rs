//! Simple graph manifolds as decorated graphs.
//!
//! A block is a trivial circle bundle `F × S¹` over an orientable surface `F`
//! with boundary; it is described by the genus of `F` and a label per boundary
//! circle. A JSJ torus glues the boundary torus `(near.block, near.label)` to
//! `(far.block, far.label)`, and its matrix maps near-side `(α, β)` coordinates
//! to far-side coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use petgraph::graph::{NodeIndex, UnGraph};

use crate::algebra::{wedge, BasisTag, HomologyClass, Matrix2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Near,
    Far,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Near => "near",
            Side::Far => "far",
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Near => Side::Far,
            Side::Far => Side::Near,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A boundary circle of a block base, i.e. one boundary torus of the block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryRef {
    pub block: String,
    pub label: String,
}

impl BoundaryRef {
    pub fn new(block: impl Into<String>, label: impl Into<String>) -> Self {
        BoundaryRef {
            block: block.into(),
            label: label.into(),
        }
    }
}

impl fmt::Display for BoundaryRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.block, self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertBlock {
    pub id: String,
    pub genus: u64,
    pub boundary: Vec<String>,
}

impl SeifertBlock {
    pub fn new(id: impl Into<String>, genus: u64, boundary: &[&str]) -> Self {
        SeifertBlock {
            id: id.into(),
            genus,
            boundary: boundary.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// χ(F) = 2 − 2·genus − #boundary.
    pub fn euler_characteristic(&self) -> i128 {
        2 - 2 * self.genus as i128 - self.boundary.len() as i128
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsjTorus {
    pub id: String,
    pub near: BoundaryRef,
    pub far: BoundaryRef,
    pub matrix: Matrix2,
}

impl JsjTorus {
    pub fn side(&self, side: Side) -> &BoundaryRef {
        match side {
            Side::Near => &self.near,
            Side::Far => &self.far,
        }
    }

    pub fn basis(&self, side: Side) -> BasisTag {
        BasisTag::torus_side(&self.id, side.as_str())
    }

    /// The matrix acting from `from` coordinates to the opposite side's.
    /// Far→near uses the exact inverse; `None` if the matrix is singular
    /// over the integers.
    pub fn matrix_from(&self, from: Side) -> Option<Matrix2> {
        match from {
            Side::Near => Some(self.matrix.clone()),
            Side::Far => self.matrix.inverse(),
        }
    }

    /// Re-expresses a class given in the `from` basis in the opposite basis.
    pub fn carry(&self, c: &HomologyClass, from: Side) -> Option<HomologyClass> {
        if c.basis() != &self.basis(from) {
            return None;
        }
        let m = self.matrix_from(from)?;
        let (a, b) = m.apply(c.a(), c.b());
        Some(HomologyClass::new(a, b, self.basis(from.opposite())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphManifold {
    pub blocks: BTreeMap<String, SeifertBlock>,
    pub tori: BTreeMap<String, JsjTorus>,
    pub closed: bool,
}

impl GraphManifold {
    pub fn new(blocks: Vec<SeifertBlock>, tori: Vec<JsjTorus>, closed: bool) -> Self {
        GraphManifold {
            blocks: blocks.into_iter().map(|b| (b.id.clone(), b)).collect(),
            tori: tori.into_iter().map(|t| (t.id.clone(), t)).collect(),
            closed,
        }
    }

    /// Which torus side, if any, uses the given boundary.
    pub fn torus_at(&self, boundary: &BoundaryRef) -> Option<(&JsjTorus, Side)> {
        self.tori.values().find_map(|t| {
            if &t.near == boundary {
                Some((t, Side::Near))
            } else if &t.far == boundary {
                Some((t, Side::Far))
            } else {
                None
            }
        })
    }

    /// Boundary tori not glued to anything, in block/label order.
    pub fn free_boundaries(&self) -> Vec<BoundaryRef> {
        let used: BTreeSet<&BoundaryRef> =
            self.tori.values().flat_map(|t| [&t.near, &t.far]).collect();
        self.blocks
            .values()
            .flat_map(|b| b.boundary.iter().map(|l| BoundaryRef::new(&b.id, l)))
            .filter(|r| !used.contains(r))
            .collect()
    }

    pub fn base_euler_sum(&self) -> i128 {
        self.blocks
            .values()
            .map(SeifertBlock::euler_characteristic)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonNegativeEuler {
        block: String,
        euler: i128,
    },
    NoBoundary {
        block: String,
    },
    DuplicateLabel {
        block: String,
        label: String,
    },
    UnknownBlock {
        torus: String,
        block: String,
    },
    UnknownLabel {
        torus: String,
        boundary: BoundaryRef,
    },
    DegenerateTorus {
        torus: String,
    },
    BoundaryReused {
        boundary: BoundaryRef,
        tori: Vec<String>,
    },
    NotUnimodular {
        torus: String,
        det: BigInt,
    },
    NotSimple {
        torus: String,
        intersection: BigInt,
    },
    NoJsjTorus,
    Disconnected {
        what: &'static str,
        components: usize,
    },
    ClosednessMismatch {
        claimed: bool,
        free_boundaries: usize,
    },

    NoPieces,
    PieceUnknownBlock {
        piece: String,
        block: String,
    },
    ZeroDegree {
        piece: String,
    },
    PieceEuler {
        piece: String,
        expected: i128,
        actual: i128,
    },
    DegreeSum {
        piece: String,
        boundary: BoundaryRef,
        expected: u64,
        actual: BigInt,
    },
    CircleUnknownPiece {
        circle: String,
        piece: String,
    },
    CircleUnknownTorus {
        circle: String,
        torus: String,
    },
    CircleWrongBlock {
        circle: String,
        expected: String,
        actual: String,
    },
    CircleOnGluedBoundary {
        circle: String,
        boundary: BoundaryRef,
    },
    CircleBasis {
        circle: String,
        expected: BasisTag,
        actual: BasisTag,
    },
    NotHorizontal {
        circle: String,
    },
    EdgeUnknownCircle {
        edge: String,
        circle: String,
    },
    EdgeSideMismatch {
        edge: String,
        detail: String,
    },
    IncompatibleClasses {
        edge: String,
        near: HomologyClass,
        far: HomologyClass,
    },
    CircleReused {
        circle: String,
        edges: Vec<String>,
    },
    UnmatchedCircle {
        circle: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NonNegativeEuler { block, euler } => {
                write!(f, "block {block}: base Euler characteristic {euler} is not negative")
            }
            NoBoundary { block } => write!(f, "block {block}: base surface has no boundary"),
            DuplicateLabel { block, label } => {
                write!(f, "block {block}: boundary label {label} is repeated")
            }
            UnknownBlock { torus, block } => write!(f, "torus {torus}: unknown block {block}"),
            UnknownLabel { torus, boundary } => {
                write!(f, "torus {torus}: block has no boundary {boundary}")
            }
            DegenerateTorus { torus } => {
                write!(f, "torus {torus}: near and far sides are the same boundary")
            }
            BoundaryReused { boundary, tori } => {
                write!(f, "boundary {boundary} is used by several torus sides: {}", tori.join(", "))
            }
            NotUnimodular { torus, det } => {
                write!(f, "torus {torus}: gluing matrix determinant {det} is not ±1")
            }
            NotSimple { torus, intersection } => write!(
                f,
                "torus {torus}: simplicity violated, fibers meet with intersection number {intersection} (need absolute value 1)"
            ),
            NoJsjTorus => write!(f, "manifold has no JSJ torus"),
            Disconnected { what, components } => {
                write!(f, "{what} graph is disconnected ({components} components)")
            }
            ClosednessMismatch { claimed, free_boundaries } => write!(
                f,
                "manifold claims closed = {claimed} but has {free_boundaries} free boundary tori"
            ),
            NoPieces => write!(f, "surface has no pieces"),
            PieceUnknownBlock { piece, block } => write!(f, "piece {piece}: unknown block {block}"),
            ZeroDegree { piece } => write!(f, "piece {piece}: covering degree is zero"),
            PieceEuler { piece, expected, actual } => write!(
                f,
                "piece {piece}: Euler characteristic {actual} differs from degree·χ(F) = {expected}"
            ),
            DegreeSum { piece, boundary, expected, actual } => write!(
                f,
                "piece {piece}: circles over {boundary} have total section degree {actual}, expected {expected}"
            ),
            CircleUnknownPiece { circle, piece } => write!(f, "circle {circle}: unknown piece {piece}"),
            CircleUnknownTorus { circle, torus } => write!(f, "circle {circle}: unknown torus {torus}"),
            CircleWrongBlock { circle, expected, actual } => write!(
                f,
                "circle {circle}: attached to block {actual} but its piece lies over {expected}"
            ),
            CircleOnGluedBoundary { circle, boundary } => write!(
                f,
                "circle {circle}: boundary {boundary} is glued, attach the circle to the torus instead"
            ),
            CircleBasis { circle, expected, actual } => {
                write!(f, "circle {circle}: class is in basis {actual}, expected {expected}")
            }
            NotHorizontal { circle } => {
                write!(f, "circle {circle}: section coefficient is 0, circle is not horizontal")
            }
            EdgeUnknownCircle { edge, circle } => write!(f, "edge {edge}: unknown circle {circle}"),
            EdgeSideMismatch { edge, detail } => write!(f, "edge {edge}: {detail}"),
            IncompatibleClasses { edge, near, far } => write!(
                f,
                "edge {edge}: near class {near} does not map to ± far class {far}"
            ),
            CircleReused { circle, edges } => {
                write!(f, "circle {circle} appears in several edges: {}", edges.join(", "))
            }
            UnmatchedCircle { circle } => {
                write!(f, "circle {circle} lies on a JSJ torus but is in no edge")
            }
        }
    }
}

/// Diagnostics from validation. Warnings do not affect validity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub(crate) fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

/// Absolute intersection number of the two fibers on the torus: the near
/// fiber `(0, 1)` is carried to the far side and wedged with the far fiber.
pub fn fiber_intersection(t: &JsjTorus) -> BigInt {
    let far = t.basis(Side::Far);
    let (a, b) = t.matrix.apply(&BigInt::from(0), &BigInt::from(1));
    let near_fiber = HomologyClass::new(a, b, far.clone());
    let far_fiber = HomologyClass::new(0, 1, far);
    wedge(&near_fiber, &far_fiber).expect("same basis").abs()
}

/// The dual graph Ω: one vertex per block, one edge per torus (loops allowed).
/// Vertex weights are block ids, edge weights torus ids.
pub fn dual_graph(m: &GraphManifold) -> UnGraph<String, String> {
    let mut g = UnGraph::new_undirected();
    let idx: BTreeMap<&str, NodeIndex> = m
        .blocks
        .keys()
        .map(|id| (id.as_str(), g.add_node(id.clone())))
        .collect();
    for t in m.tori.values() {
        if let (Some(&u), Some(&v)) = (
            idx.get(t.near.block.as_str()),
            idx.get(t.far.block.as_str()),
        ) {
            g.add_edge(u, v, t.id.clone());
        }
    }
    g
}

pub fn validate_manifold(m: &GraphManifold) -> ValidationReport {
    let mut report = ValidationReport::default();

    for b in m.blocks.values() {
        let chi = b.euler_characteristic();
        if chi >= 0 {
            report.push(Violation::NonNegativeEuler {
                block: b.id.clone(),
                euler: chi,
            });
        }
        if b.boundary.is_empty() {
            report.push(Violation::NoBoundary {
                block: b.id.clone(),
            });
        }
        let mut seen = BTreeSet::new();
        for l in &b.boundary {
            if !seen.insert(l) {
                report.push(Violation::DuplicateLabel {
                    block: b.id.clone(),
                    label: l.clone(),
                });
            }
        }
    }

    let mut usage: BTreeMap<&BoundaryRef, Vec<String>> = BTreeMap::new();
    for t in m.tori.values() {
        for side in [&t.near, &t.far] {
            match m.blocks.get(&side.block) {
                None => report.push(Violation::UnknownBlock {
                    torus: t.id.clone(),
                    block: side.block.clone(),
                }),
                Some(b) if !b.boundary.contains(&side.label) => {
                    report.push(Violation::UnknownLabel {
                        torus: t.id.clone(),
                        boundary: side.clone(),
                    })
                }
                Some(_) => {}
            }
            usage.entry(side).or_default().push(t.id.clone());
        }
        if t.near == t.far {
            report.push(Violation::DegenerateTorus {
                torus: t.id.clone(),
            });
        }
        let det = t.matrix.det();
        if det.abs() != BigInt::one() {
            report.push(Violation::NotUnimodular {
                torus: t.id.clone(),
                det: det.clone(),
            });
        } else if det.is_positive() {
            report.warnings.push(format!(
                "torus {}: determinant is +1 (convention is −1)",
                t.id
            ));
        }
        let i = fiber_intersection(t);
        if !i.is_one() {
            report.push(Violation::NotSimple {
                torus: t.id.clone(),
                intersection: i,
            });
        }
    }
    for (boundary, tori) in usage {
        if tori.len() > 1 {
            report.push(Violation::BoundaryReused {
                boundary: boundary.clone(),
                tori,
            });
        }
    }

    if m.tori.is_empty() {
        report.push(Violation::NoJsjTorus);
    }
    if !m.blocks.is_empty() {
        let components = petgraph::algo::connected_components(&dual_graph(m));
        if components != 1 {
            report.push(Violation::Disconnected {
                what: "block",
                components,
            });
        }
    }

    let free = m.free_boundaries().len();
    if m.closed != (free == 0) {
        report.push(Violation::ClosednessMismatch {
            claimed: m.closed,
            free_boundaries: free,
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(id: &str, near: (&str, &str), far: (&str, &str), m: (i64, i64, i64, i64)) -> JsjTorus {
        JsjTorus {
            id: id.into(),
            near: BoundaryRef::new(near.0, near.1),
            far: BoundaryRef::new(far.0, far.1),
            matrix: Matrix2::new(m.0, m.1, m.2, m.3),
        }
    }

    fn open_pair(m: (i64, i64, i64, i64)) -> GraphManifold {
        GraphManifold::new(
            vec![
                SeifertBlock::new("left", 1, &["alpha"]),
                SeifertBlock::new("middle", 1, &["alpha", "alpha'"]),
            ],
            vec![torus("T1", ("left", "alpha"), ("middle", "alpha"), m)],
            false,
        )
    }

    #[test]
    fn open_pair_is_valid() {
        let m = open_pair((1, 1, 2, 1));
        let r = validate_manifold(&m);
        assert!(r.is_valid(), "{r}");
        assert!(r.warnings.is_empty());
        assert_eq!(
            m.free_boundaries(),
            vec![BoundaryRef::new("middle", "alpha'")]
        );
    }

    #[test]
    fn identity_matrix_breaks_simplicity() {
        let r = validate_manifold(&open_pair((1, 0, 0, 1)));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotSimple { intersection, .. } if intersection == &BigInt::from(0))));
        assert!(r.to_string().contains("absolute value 1"));
    }

    #[test]
    fn sphere_with_one_hole_is_rejected() {
        let mut m = open_pair((1, 1, 2, 1));
        m.blocks.get_mut("left").unwrap().genus = 0;
        let r = validate_manifold(&m);
        assert!(r.violations.contains(&Violation::NonNegativeEuler {
            block: "left".into(),
            euler: 1
        }));
    }

    #[test]
    fn positive_determinant_is_only_a_warning() {
        // (2 1 / 1 1): det 1, q 1
        let r = validate_manifold(&open_pair((2, 1, 1, 1)));
        assert!(r.is_valid());
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn structural_violations() {
        let mut m = open_pair((1, 1, 2, 1));
        m.closed = true;
        m.tori.insert(
            "T2".into(),
            torus("T2", ("left", "alpha"), ("ghost", "x"), (0, 1, -1, 0)),
        );
        m.blocks
            .insert("island".into(), SeifertBlock::new("island", 2, &["z", "z"]));
        let r = validate_manifold(&m);
        let has = |f: &dyn Fn(&Violation) -> bool| r.violations.iter().any(f);
        assert!(has(
            &|v| matches!(v, Violation::UnknownBlock { block, .. } if block == "ghost")
        ));
        assert!(has(&|v| matches!(v, Violation::BoundaryReused { .. })));
        assert!(has(&|v| matches!(v, Violation::DuplicateLabel { .. })));
        assert!(has(&|v| matches!(
            v,
            Violation::Disconnected { components: 2, .. }
        )));
        assert!(has(&|v| matches!(
            v,
            Violation::ClosednessMismatch { claimed: true, .. }
        )));
    }

    #[test]
    fn no_torus_is_a_violation() {
        let m = GraphManifold::new(vec![SeifertBlock::new("a", 1, &["x"])], vec![], false);
        assert!(validate_manifold(&m)
            .violations
            .contains(&Violation::NoJsjTorus));
    }

    #[test]
    fn fiber_intersection_examples() {
        let t = |m| torus("T", ("a", "x"), ("b", "y"), m);
        assert_eq!(fiber_intersection(&t((1, 1, 2, 1))), BigInt::from(1));
        assert_eq!(fiber_intersection(&t((0, 1, -1, 0))), BigInt::from(1));
        assert_eq!(fiber_intersection(&t((1, 2, 1, 1))), BigInt::from(2));
        let r = validate_manifold(&GraphManifold::new(
            vec![
                SeifertBlock::new("a", 1, &["x"]),
                SeifertBlock::new("b", 1, &["y"]),
            ],
            vec![t((1, 2, 1, 1))],
            true,
        ));
        assert_eq!(r.violations.len(), 1);
        assert!(matches!(r.violations[0], Violation::NotSimple { .. }));
    }

    #[test]
    fn dual_graph_counts() {
        let g = dual_graph(&open_pair((1, 1, 2, 1)));
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));

        let looped = GraphManifold::new(
            vec![SeifertBlock::new("a", 1, &["x", "y"])],
            vec![torus("T", ("a", "x"), ("a", "y"), (1, 1, 2, 1))],
            true,
        );
        assert!(validate_manifold(&looped).is_valid());
        let g = dual_graph(&looped);
        assert_eq!((g.node_count(), g.edge_count()), (1, 1));
        let e = g.edge_indices().next().unwrap();
        let (u, v) = g.edge_endpoints(e).unwrap();
        assert_eq!(u, v);
        let labels: usize = looped.blocks.values().map(|b| b.boundary.len()).sum();
        assert_eq!(labels, 2 * looped.tori.len());
    }

    #[test]
    fn carry_round_trips() {
        let t = torus("T", ("a", "x"), ("b", "y"), (1, 1, 2, 1));
        let c = HomologyClass::new(1, 2, t.basis(Side::Near));
        let far = t.carry(&c, Side::Near).unwrap();
        assert_eq!((far.a(), far.b()), (&BigInt::from(3), &BigInt::from(4)));
        assert_eq!(t.carry(&far, Side::Far).unwrap(), c);
        assert!(t.carry(&c, Side::Far).is_none());
    }
}
