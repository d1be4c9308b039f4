//! Building horizontal surfaces and the family `S_n ↬ N`.
//!
//! Pieces come from the Rubinstein–Wang criterion: curves `c_{i1}, c_{i2}`
//! on each boundary torus `T_i = α_i × β` of `F × S¹`, with classes
//! `u_{ij}[α_i] + v_{ij}[β]`, bound a connected horizontal surface when the
//! fiber coefficients cancel, every torus carries the same total section
//! degree `u`, and `u·χ(F)` is even. That surface covers `F` with degree `u`.
//!
//! The family is assembled over the two-block manifold `N′` glued by
//! `J = (1 1 / 2 1)` and then doubled along its free boundary.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Matrix2, PositiveRational};
use crate::manifold::{BoundaryRef, GraphManifold, JsjTorus, SeifertBlock, Side, ValidationReport};
use crate::surface::{
    crossing_number, cycle_rank, governor, spirality, validate_surface, Attachment, Cycle,
    Direction, HorizontalSurface, Step, SurfaceCircle, SurfaceEdge, SurfacePiece,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("Rubinstein–Wang conditions fail: {}", join(.0))]
    Rw(Vec<RwViolation>),
    #[error("genus formula (2 − 2t − u·χ(F))/2 gives {numerator}/2, not a non-negative integer")]
    Genus { numerator: BigInt },
    #[error("cannot double: {0}")]
    Doubling(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("construction bug: {0}")]
    ConstructionBug(String),
}

fn join(v: &[RwViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A failed hypothesis or condition of the Rubinstein–Wang criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RwViolation {
    BaseGenus,
    NoBoundary,
    BaseEuler {
        euler: i128,
    },
    NonPositiveSection {
        label: String,
        curve: usize,
    },
    /// Condition 1: Σ v_{ij} = 0.
    FiberSum {
        sum: BigInt,
    },
    /// Condition 2: u_{i1} + u_{i2} = u for every i.
    UnequalDegree {
        label: String,
        sum: BigInt,
        expected: BigInt,
    },
    /// Condition 3: u·χ(F) even.
    OddEuler {
        product: BigInt,
    },
}

impl fmt::Display for RwViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RwViolation::BaseGenus => write!(f, "base surface must have positive genus"),
            RwViolation::NoBoundary => write!(f, "base surface must have boundary"),
            RwViolation::BaseEuler { euler } => write!(f, "χ(F) = {euler} is not negative"),
            RwViolation::NonPositiveSection { label, curve } => {
                write!(
                    f,
                    "curve {curve} on {label} has non-positive section coefficient"
                )
            }
            RwViolation::FiberSum { sum } => write!(f, "∑v_ij = {sum} ≠ 0"),
            RwViolation::UnequalDegree {
                label,
                sum,
                expected,
            } => {
                write!(f, "u_i1 + u_i2 = {sum} on {label}, expected u = {expected}")
            }
            RwViolation::OddEuler { product } => write!(f, "u·χ(F) = {product} is odd"),
        }
    }
}

/// Two curves `(u, v)` on one boundary torus of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RwBoundary {
    pub label: String,
    pub curves: [(BigInt, BigInt); 2],
}

impl RwBoundary {
    pub fn new(label: impl Into<String>, c1: (i64, i64), c2: (i64, i64)) -> Self {
        RwBoundary {
            label: label.into(),
            curves: [
                (BigInt::from(c1.0), BigInt::from(c1.1)),
                (BigInt::from(c2.0), BigInt::from(c2.1)),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RwRequest {
    pub base_genus: u64,
    pub boundaries: Vec<RwBoundary>,
}

impl RwRequest {
    pub fn base_euler(&self) -> i128 {
        2 - 2 * self.base_genus as i128 - self.boundaries.len() as i128
    }
}

/// Returns the common degree `u`, or every violated condition.
pub fn rw_check(req: &RwRequest) -> Result<BigInt, Vec<RwViolation>> {
    let mut out = Vec::new();
    if req.base_genus == 0 {
        out.push(RwViolation::BaseGenus);
    }
    if req.boundaries.is_empty() {
        out.push(RwViolation::NoBoundary);
    }
    let chi = req.base_euler();
    if chi >= 0 {
        out.push(RwViolation::BaseEuler { euler: chi });
    }
    for b in &req.boundaries {
        for (j, (u, _)) in b.curves.iter().enumerate() {
            if !u.is_positive() {
                out.push(RwViolation::NonPositiveSection {
                    label: b.label.clone(),
                    curve: j + 1,
                });
            }
        }
    }

    let fiber: BigInt = req
        .boundaries
        .iter()
        .flat_map(|b| b.curves.iter().map(|(_, v)| v))
        .sum();
    if !fiber.is_zero() {
        out.push(RwViolation::FiberSum { sum: fiber });
    }

    let mut degree = None;
    for b in &req.boundaries {
        let sum = &b.curves[0].0 + &b.curves[1].0;
        match &degree {
            None => degree = Some(sum),
            Some(u) if u != &sum => out.push(RwViolation::UnequalDegree {
                label: b.label.clone(),
                sum,
                expected: u.clone(),
            }),
            Some(_) => {}
        }
    }
    let u = degree.unwrap_or_default();
    let product = &u * BigInt::from(chi);
    if (&product % 2u32) != BigInt::zero() {
        out.push(RwViolation::OddEuler { product });
    }

    if out.is_empty() {
        Ok(u)
    } else {
        Err(out)
    }
}

/// A piece built from an [`RwRequest`], before it is attached anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RwPiece {
    pub degree: u64,
    pub genus: u64,
    /// `(label, u, v)` for each of the `2t` boundary circles, in request order.
    pub circles: Vec<(String, BigInt, BigInt)>,
}

impl RwPiece {
    pub fn euler_characteristic(&self) -> i128 {
        2 - 2 * self.genus as i128 - self.circles.len() as i128
    }
}

pub fn rw_build_piece(req: &RwRequest) -> Result<RwPiece, ConstructError> {
    let u = rw_check(req).map_err(ConstructError::Rw)?;
    let t = req.boundaries.len() as i128;
    let numerator = BigInt::from(2 - 2 * t) - &u * BigInt::from(req.base_euler());
    if numerator.is_negative() || (&numerator % 2u32) != BigInt::zero() {
        return Err(ConstructError::Genus { numerator });
    }
    let genus = (&numerator / 2u32)
        .to_u64()
        .ok_or_else(|| ConstructError::Genus {
            numerator: numerator.clone(),
        })?;
    let degree = u
        .to_u64()
        .ok_or_else(|| ConstructError::Parameter(format!("degree {u} too large")))?;
    let circles = req
        .boundaries
        .iter()
        .flat_map(|b| {
            b.curves
                .iter()
                .map(|(u, v)| (b.label.clone(), u.clone(), v.clone()))
        })
        .collect();
    Ok(RwPiece {
        degree,
        genus,
        circles,
    })
}

pub const LEFT: &str = "left";
pub const MIDDLE: &str = "middle";
pub const TORUS: &str = "T1";
pub const ALPHA: &str = "alpha";
pub const ALPHA_PRIME: &str = "alpha'";

/// The gluing matrix of the family.
pub fn family_matrix() -> Matrix2 {
    Matrix2::new(1, 1, 2, 1)
}

/// The open pair `(N′, B_n)`: a once-punctured-torus block glued to a
/// twice-punctured-torus block, and the surface pasted from two
/// Rubinstein–Wang pieces. `n = 0` gives a separable control surface.
pub fn build_open_pair(n: u64) -> Result<HorizontalSurface, ConstructError> {
    let n = BigInt::from(n);
    let one = BigInt::one();
    let two_n = &n * 2u32;
    let odd = &two_n + 1u32;
    let even = &two_n + 2u32;

    let manifold = GraphManifold::new(
        vec![
            SeifertBlock::new(LEFT, 1, &[ALPHA]),
            SeifertBlock::new(MIDDLE, 1, &[ALPHA, ALPHA_PRIME]),
        ],
        vec![JsjTorus {
            id: TORUS.into(),
            near: BoundaryRef::new(LEFT, ALPHA),
            far: BoundaryRef::new(MIDDLE, ALPHA),
            matrix: family_matrix(),
        }],
        false,
    );

    let left = rw_build_piece(&RwRequest {
        base_genus: 1,
        boundaries: vec![RwBoundary {
            label: ALPHA.into(),
            curves: [(one.clone(), two_n.clone()), (odd.clone(), -&two_n)],
        }],
    })?;

    // The far-side classes of c1, c2 are the images under J of the near ones.
    let j = family_matrix();
    let [c1, c2] = [&left.circles[0], &left.circles[1]].map(|(_, u, v)| j.apply(u, v));
    let middle = rw_build_piece(&RwRequest {
        base_genus: 1,
        boundaries: vec![
            RwBoundary {
                label: ALPHA.into(),
                curves: [c1, c2],
            },
            RwBoundary {
                label: ALPHA_PRIME.into(),
                curves: [(one.clone(), -&even), (odd.clone(), -&even)],
            },
        ],
    })?;

    let near = Attachment::Torus {
        torus: TORUS.into(),
        side: Side::Near,
    };
    let far = Attachment::Torus {
        torus: TORUS.into(),
        side: Side::Far,
    };
    let free = Attachment::Boundary(BoundaryRef::new(MIDDLE, ALPHA_PRIME));

    let mut circles = Vec::new();
    for (i, (_, u, v)) in left.circles.iter().enumerate() {
        circles.push(SurfaceCircle::new(
            format!("c{}.left", i + 1),
            LEFT,
            near.clone(),
            u.clone(),
            v.clone(),
        ));
    }
    for (i, (label, u, v)) in middle.circles.iter().enumerate() {
        let (id, att) = if label == ALPHA {
            (format!("c{}.middle", i + 1), far.clone())
        } else {
            (format!("c{}", i + 1), free.clone())
        };
        circles.push(SurfaceCircle::new(id, MIDDLE, att, u.clone(), v.clone()));
    }

    let surface = HorizontalSurface::new(
        manifold,
        vec![
            SurfacePiece::new(LEFT, LEFT, left.degree, left.genus),
            SurfacePiece::new(MIDDLE, MIDDLE, middle.degree, middle.genus),
        ],
        circles,
        vec![
            SurfaceEdge::new("c1", "c1.left", "c1.middle"),
            SurfaceEdge::new("c2", "c2.left", "c2.middle"),
        ],
    );
    let report = validate_surface(&surface);
    if !report.is_valid() {
        return Err(ConstructError::ConstructionBug(report.to_string()));
    }
    Ok(surface)
}

/// Id of the mirror copy of an object.
pub fn mirror_id(id: &str) -> String {
    format!("{id}*")
}

fn report_error(what: &str, r: &ValidationReport) -> ConstructError {
    ConstructError::Doubling(format!("{what} is invalid:\n{r}"))
}

/// Doubles a manifold with boundary and a surface in it along their free
/// boundaries. Free boundary tori are glued to their mirrors by the identity
/// on `(α, β)`; fibers match there, so those tori are not JSJ tori and each
/// block meeting the free boundary merges with its mirror into one block
/// whose base is the double of the original base. Pieces with free circles
/// merge with their mirrors the same way.
pub fn double_pair(open: &HorizontalSurface) -> Result<HorizontalSurface, ConstructError> {
    let report = validate_surface(open);
    if !report.is_valid() {
        return Err(report_error("input pair", &report));
    }
    let m = &open.manifold;
    let free = m.free_boundaries();
    if free.is_empty() {
        return Err(ConstructError::Doubling(
            "manifold has no free boundary".into(),
        ));
    }
    for c in open.circles.values() {
        if let Attachment::Boundary(b) = &c.attachment {
            if !free.contains(b) {
                return Err(ConstructError::Doubling(format!(
                    "circle {} lies on {b}, which is not a free boundary",
                    c.id
                )));
            }
        }
    }
    // every free boundary torus must carry circles so the double is closed up
    for b in &free {
        if crate::surface::boundary_circles(open, b).next().is_none() {
            return Err(ConstructError::Doubling(format!(
                "free boundary {b} carries no circles of the surface"
            )));
        }
    }

    let merged_blocks: BTreeMap<&str, ()> = free.iter().map(|b| (b.block.as_str(), ())).collect();
    let is_free = |block: &str, label: &str| free.contains(&BoundaryRef::new(block, label));

    // where a boundary of the original block lands in the mirror half
    let mirror_ref = |r: &BoundaryRef| {
        if merged_blocks.contains_key(r.block.as_str()) {
            BoundaryRef::new(&r.block, mirror_id(&r.label))
        } else {
            BoundaryRef::new(mirror_id(&r.block), &r.label)
        }
    };

    let mut blocks = Vec::new();
    for b in m.blocks.values() {
        if merged_blocks.contains_key(b.id.as_str()) {
            let kept: Vec<String> = b
                .boundary
                .iter()
                .filter(|l| !is_free(&b.id, l))
                .cloned()
                .collect();
            let boundary: Vec<String> = kept
                .iter()
                .cloned()
                .chain(kept.iter().map(|l| mirror_id(l)))
                .collect();
            let euler = 2 * b.euler_characteristic();
            let genus = genus_from_euler(euler, boundary.len(), &b.id)?;
            blocks.push(SeifertBlock {
                id: b.id.clone(),
                genus,
                boundary,
            });
        } else {
            blocks.push(b.clone());
            blocks.push(SeifertBlock {
                id: mirror_id(&b.id),
                ..b.clone()
            });
        }
    }

    let mut tori = Vec::new();
    for t in m.tori.values() {
        tori.push(t.clone());
        tori.push(JsjTorus {
            id: mirror_id(&t.id),
            near: mirror_ref(&t.near),
            far: mirror_ref(&t.far),
            matrix: t.matrix.clone(),
        });
    }
    let manifold = GraphManifold::new(blocks, tori, true);

    let merged_pieces = crate::surface::pieces_with_free_circles(open);
    let mut pieces = Vec::new();
    for p in open.pieces.values() {
        if merged_pieces.contains(&p.id) {
            let circles = open
                .circles_of(&p.id)
                .filter(|c| matches!(c.attachment, Attachment::Torus { .. }))
                .count()
                * 2;
            let euler = 2 * open.piece_euler(p);
            pieces.push(SurfacePiece {
                genus: genus_from_euler(euler, circles, &p.id)?,
                ..p.clone()
            });
        } else {
            pieces.push(p.clone());
            pieces.push(SurfacePiece {
                id: mirror_id(&p.id),
                block: if merged_blocks.contains_key(p.block.as_str()) {
                    p.block.clone()
                } else {
                    mirror_id(&p.block)
                },
                ..p.clone()
            });
        }
    }

    let mut circles = Vec::new();
    for c in open.circles.values() {
        let Attachment::Torus { torus, side } = &c.attachment else {
            continue;
        };
        circles.push(c.clone());
        let piece = if merged_pieces.contains(&c.piece) {
            c.piece.clone()
        } else {
            mirror_id(&c.piece)
        };
        circles.push(SurfaceCircle::new(
            mirror_id(&c.id),
            piece,
            Attachment::Torus {
                torus: mirror_id(torus),
                side: *side,
            },
            c.class.a().clone(),
            c.class.b().clone(),
        ));
    }

    let mut edges = Vec::new();
    for e in open.edges.values() {
        edges.push(e.clone());
        edges.push(SurfaceEdge::new(
            mirror_id(&e.id),
            mirror_id(&e.near_circle),
            mirror_id(&e.far_circle),
        ));
    }

    let doubled = HorizontalSurface::new(manifold, pieces, circles, edges);
    let report = validate_surface(&doubled);
    if !report.is_valid() {
        return Err(report_error("doubled pair", &report));
    }
    Ok(doubled)
}

fn genus_from_euler(euler: i128, boundary: usize, what: &str) -> Result<u64, ConstructError> {
    let twice = 2 - euler - boundary as i128;
    if twice < 0 || twice % 2 != 0 {
        return Err(ConstructError::Doubling(format!(
            "{what}: Euler characteristic {euler} with {boundary} boundary circles gives no genus"
        )));
    }
    Ok((twice / 2) as u64)
}

/// The closed pair `(N, S_n)` with the curve `γ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub n: u64,
    pub surface: HorizontalSurface,
    pub gamma: Cycle,
}

impl FamilySpec {
    pub fn manifold(&self) -> &GraphManifold {
        &self.surface.manifold
    }
}

/// γ_n crosses c₁ from the middle piece to the left one and returns over c₂.
pub fn family_gamma() -> Cycle {
    Cycle::new(vec![
        Step::new("c1", Direction::Backward),
        Step::new("c2", Direction::Forward),
    ])
}

pub fn build_family(n: u64) -> Result<FamilySpec, ConstructError> {
    if n < 1 {
        return Err(ConstructError::Parameter(format!(
            "family index must be ≥ 1, got {n}"
        )));
    }
    let surface = double_pair(&build_open_pair(n)?)?;
    let gamma = family_gamma();

    let bug = |what: String| ConstructError::ConstructionBug(what);
    let eps = PositiveRational::integer(2 * n + 1).expect("positive");
    let got = governor(&surface).map_err(|e| bug(e.to_string()))?;
    if got != eps {
        return Err(bug(format!("governor {got}, expected {eps}")));
    }
    let w = spirality(&surface, &gamma).map_err(|e| bug(e.to_string()))?;
    if w != eps.pow(2) {
        return Err(bug(format!("w(γ) = {w}, expected {}", eps.pow(2))));
    }
    if crossing_number(&gamma) != 2 {
        return Err(bug("γ must cross the tori twice".into()));
    }
    let m = &surface.manifold;
    let counts = (
        m.blocks.len(),
        m.tori.len(),
        surface.pieces.len(),
        surface.edges.len(),
    );
    if counts != (3, 2, 3, 4) || cycle_rank(&surface) != 2 {
        return Err(bug(format!("unexpected shape {counts:?}")));
    }
    Ok(FamilySpec { n, surface, gamma })
}

/// τ(1) = 1, τ(j+1) = (2τ(j) + 1)² + 1.
pub fn sparse_index_set(k: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(k);
    let mut tau = BigUint::one();
    for _ in 0..k {
        let next = (&tau * 2u32 + 1u32).pow(2) + 1u32;
        out.push(std::mem::replace(&mut tau, next));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    NotCertified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::NotCertified => "NOT-CERTIFIED",
        })
    }
}

/// Witness that `(π₁N, π₁S_n)` and `(π₁N, π₁S_m)` are not quasi-isometric.
///
/// With `N ≥ M` the larger and smaller index, a quasi-isometry of pairs would
/// force `w(γ_N) ≤ ε_M⁴`, i.e. `2N + 1 ≤ (2M + 1)²`. The pair is certified
/// when the opposite strict inequality holds. `NotCertified` only means the
/// argument does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "as_string")]
    pub n: BigUint,
    #[serde(serialize_with = "as_string")]
    pub m: BigUint,
    /// w(γ) of the larger index.
    #[serde(serialize_with = "as_string")]
    pub w: PositiveRational,
    /// Governor of the smaller index.
    #[serde(serialize_with = "as_string")]
    pub epsilon: PositiveRational,
    pub verdict: Verdict,
    pub trace: String,
}

fn as_string<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.verdict, self.trace)
    }
}

pub fn certify_distinct(n: &BigUint, m: &BigUint) -> Certificate {
    let (big, small) = if n >= m { (n, m) } else { (m, n) };
    let lhs = (small * 2u32 + 1u32).pow(2);
    let rhs = big * 2u32 + 1u32;
    let w = PositiveRational::new((big * 2u32 + 1u32).pow(2), BigUint::one()).expect("positive");
    let epsilon = PositiveRational::new(small * 2u32 + 1u32, BigUint::one()).expect("positive");

    let (verdict, trace) = if n == m {
        (Verdict::NotCertified, format!("n = m = {n}: same surface"))
    } else if lhs < rhs {
        (
            Verdict::Certified,
            format!("(2·{small}+1)² = {lhs} < {rhs} = 2·{big}+1"),
        )
    } else {
        (
            Verdict::NotCertified,
            format!("(2·{small}+1)² = {lhs} ≥ {rhs} = 2·{big}+1"),
        )
    };
    debug_assert_eq!(
        verdict == Verdict::Certified,
        n != m && governor_inequality_witness(&w, &epsilon, 2)
    );
    Certificate {
        n: n.clone(),
        m: m.clone(),
        w,
        epsilon,
        verdict,
        trace,
    }
}

/// `w > ε^{2c}` as exact rationals. For γ_n (c = 2) this is the strict
/// negation of `w(γ_n) ≤ ε_m⁴`. Experimental beyond the family.
pub fn governor_inequality_witness(
    w: &PositiveRational,
    epsilon: &PositiveRational,
    c: u32,
) -> bool {
    w > &epsilon.pow(2 * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{is_separable, slope, spirality_image_generators};

    fn q(s: &str) -> PositiveRational {
        s.parse().unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn left_request(n: i64) -> RwRequest {
        RwRequest {
            base_genus: 1,
            boundaries: vec![RwBoundary::new(ALPHA, (1, 2 * n), (2 * n + 1, -2 * n))],
        }
    }

    #[test]
    fn rw_left_piece() {
        assert_eq!(rw_check(&left_request(1)), Ok(BigInt::from(4)));
        let p = rw_build_piece(&left_request(1)).unwrap();
        assert_eq!((p.degree, p.circles.len(), p.genus), (4, 2, 2));
    }

    #[test]
    fn rw_right_piece() {
        let req = RwRequest {
            base_genus: 1,
            boundaries: vec![
                RwBoundary::new(ALPHA, (3, 4), (1, 4)),
                RwBoundary::new(ALPHA_PRIME, (1, -4), (3, -4)),
            ],
        };
        let p = rw_build_piece(&req).unwrap();
        assert_eq!((p.degree, p.circles.len(), p.genus), (4, 4, 3));
    }

    #[test]
    fn rw_conditions_fail_independently() {
        let req = RwRequest {
            base_genus: 1,
            boundaries: vec![RwBoundary::new(ALPHA, (1, 2), (3, -1))],
        };
        assert_eq!(
            rw_check(&req),
            Err(vec![RwViolation::FiberSum {
                sum: BigInt::from(1)
            }])
        );

        let req = RwRequest {
            base_genus: 1,
            boundaries: vec![
                RwBoundary::new("x", (1, 1), (3, -1)),
                RwBoundary::new("y", (2, 1), (3, -1)),
            ],
        };
        assert_eq!(
            rw_check(&req),
            Err(vec![RwViolation::UnequalDegree {
                label: "y".into(),
                sum: BigInt::from(5),
                expected: BigInt::from(4)
            }])
        );

        // χ = −1 and u = 3
        let req = RwRequest {
            base_genus: 1,
            boundaries: vec![RwBoundary::new(ALPHA, (1, 1), (2, -1))],
        };
        assert_eq!(
            rw_check(&req),
            Err(vec![RwViolation::OddEuler {
                product: BigInt::from(-3)
            }])
        );
        assert!(matches!(rw_build_piece(&req), Err(ConstructError::Rw(_))));
    }

    #[test]
    fn rw_hypotheses() {
        let req = RwRequest {
            base_genus: 0,
            boundaries: vec![RwBoundary::new(ALPHA, (0, 1), (2, -1))],
        };
        let v = rw_check(&req).unwrap_err();
        assert!(v.contains(&RwViolation::BaseGenus));
        assert!(v.contains(&RwViolation::BaseEuler { euler: 1 }));
        assert!(v.contains(&RwViolation::NonPositiveSection {
            label: ALPHA.into(),
            curve: 1
        }));
    }

    #[test]
    fn open_pair_at_one() {
        let s = build_open_pair(1).unwrap();
        assert_eq!(s.manifold.blocks.len(), 2);
        assert_eq!(s.manifold.tori.len(), 1);
        assert_eq!(s.pieces.len(), 2);
        assert_eq!(s.edges.len(), 2);
        let free = s
            .circles
            .values()
            .filter(|c| matches!(c.attachment, Attachment::Boundary(_)))
            .count();
        assert_eq!(free, 2);
        let c = |id: &str| {
            let c = &s.circles[id];
            (c.class.a().clone(), c.class.b().clone())
        };
        let pair = |a: i64, b: i64| (BigInt::from(a), BigInt::from(b));
        assert_eq!(c("c1.left"), pair(1, 2));
        assert_eq!(c("c1.middle"), pair(3, 4));
        assert_eq!(c("c2.left"), pair(3, -2));
        assert_eq!(c("c2.middle"), pair(1, 4));
        assert_eq!(s.pieces[LEFT].genus, 2);
        assert_eq!(s.pieces[MIDDLE].genus, 3);
    }

    #[test]
    fn control_pair_has_unit_slopes() {
        let s = build_open_pair(0).unwrap();
        for e in ["c1", "c2"] {
            for d in [Direction::Forward, Direction::Backward] {
                assert_eq!(slope(&s, e, d).unwrap(), PositiveRational::one());
            }
        }
        let closed = double_pair(&s).unwrap();
        assert!(is_separable(&closed).unwrap());
    }

    #[test]
    fn doubling_at_one() {
        let s = double_pair(&build_open_pair(1).unwrap()).unwrap();
        assert!(s.manifold.closed);
        assert!(s.is_closed());
        assert_eq!(s.manifold.blocks.len(), 3);
        assert_eq!(s.manifold.tori.len(), 2);
        assert_eq!(s.pieces.len(), 3);
        assert_eq!(s.edges.len(), 4);
        let mid = &s.manifold.blocks[MIDDLE];
        assert_eq!(
            (mid.euler_characteristic(), mid.genus, mid.boundary.len()),
            (-4, 2, 2)
        );
        let piece = &s.pieces[MIDDLE];
        assert_eq!((piece.genus, s.circles_of(MIDDLE).count()), (7, 4));
        assert_eq!(s.euler_sum(), -24);
        assert_eq!((2 - s.euler_sum()) / 2, 13);
        assert_eq!(
            spirality_image_generators(&s).unwrap(),
            vec![q("9"), q("9")]
        );
    }

    #[test]
    fn doubling_needs_free_boundary() {
        let closed = double_pair(&build_open_pair(1).unwrap()).unwrap();
        assert!(matches!(
            double_pair(&closed),
            Err(ConstructError::Doubling(_))
        ));
    }

    #[test]
    fn family_values() {
        let f = build_family(1).unwrap();
        assert_eq!(governor(&f.surface).unwrap(), q("3"));
        assert_eq!(spirality(&f.surface, &f.gamma).unwrap(), q("9"));
        let f = build_family(10).unwrap();
        assert_eq!(governor(&f.surface).unwrap(), q("21"));
        assert_eq!(spirality(&f.surface, &f.gamma).unwrap(), q("441"));
        assert!(matches!(build_family(0), Err(ConstructError::Parameter(_))));
    }

    #[test]
    fn mirrored_gamma_matches() {
        let f = build_family(3).unwrap();
        let mirrored = Cycle::new(
            f.gamma
                .steps()
                .iter()
                .map(|s| Step::new(mirror_id(&s.edge), s.direction))
                .collect(),
        );
        assert_eq!(
            spirality(&f.surface, &mirrored).unwrap(),
            spirality(&f.surface, &f.gamma).unwrap()
        );
    }

    #[test]
    fn sparse_examples() {
        assert_eq!(sparse_index_set(3), vec![big(1), big(10), big(442)]);
        assert_eq!(sparse_index_set(1), vec![big(1)]);
        let five = sparse_index_set(5);
        let t4 = (big(2) * &five[2] + 1u32).pow(2) + 1u32;
        assert_eq!(five[3], t4);
        assert_eq!(five[4], (big(2) * &t4 + 1u32).pow(2) + 1u32);
        assert_eq!(five[4], "2453775001210".parse::<BigUint>().unwrap());
    }

    #[test]
    fn certificate_examples() {
        let c = certify_distinct(&big(10), &big(1));
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.to_string(), "CERTIFIED: (2·1+1)² = 9 < 21 = 2·10+1");
        assert_eq!(c.w, q("441"));
        assert_eq!(c.epsilon, q("3"));
        assert_eq!(
            certify_distinct(&big(1), &big(10)).verdict,
            Verdict::Certified
        );
        assert_eq!(
            certify_distinct(&big(2), &big(1)).verdict,
            Verdict::NotCertified
        );
        assert_eq!(
            certify_distinct(&big(5), &big(5)).verdict,
            Verdict::NotCertified
        );
    }

    #[test]
    fn inequality_witness_examples() {
        assert!(governor_inequality_witness(&q("441"), &q("3"), 2));
        assert!(!governor_inequality_witness(&q("9"), &q("3"), 2));
        for eps in ["1", "3/2", "7"] {
            for c in 0..4 {
                assert!(!governor_inequality_witness(
                    &PositiveRational::one(),
                    &q(eps),
                    c
                ));
            }
        }
    }
}
