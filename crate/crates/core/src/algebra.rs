//! Exact arithmetic on rank-2 torus homology.
//!
//! Every boundary torus of a Seifert block carries a basis `(α, β)` where `β`
//! is the fiber and `α` a section curve. Classes are integer pairs in such a
//! basis, tagged with the basis they live in so that classes from different
//! tori (or different sides of one torus) are never mixed silently.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("basis mismatch: {left} vs {right}")]
    Basis { left: BasisTag, right: BasisTag },
    #[error("zero coefficient in slope ratio {num}/{den}")]
    ZeroSlope { num: BigInt, den: BigInt },
    #[error("gluing matrix has determinant {det}, expected ±1")]
    NotUnimodular { det: BigInt },
    #[error("gluing matrix has q = {q}; adjacent fibers must meet with intersection number ±1")]
    NotSimple { q: BigInt },
}

/// Names the `(α, β)` basis of one side of a boundary torus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisTag(Arc<str>);

impl BasisTag {
    pub fn new(name: impl AsRef<str>) -> Self {
        BasisTag(Arc::from(name.as_ref()))
    }

    /// Basis of one side of a JSJ torus.
    pub fn torus_side(torus: &str, side: &str) -> Self {
        BasisTag::new(format!("{torus}#{side}"))
    }

    /// Basis of a free boundary torus `label` of `block`.
    pub fn boundary(block: &str, label: &str) -> Self {
        BasisTag::new(format!("{block}@{label}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The class `a·[α] + b·[β]` in the first homology of a boundary torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    a: BigInt,
    b: BigInt,
    basis: BasisTag,
}

impl HomologyClass {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, basis: BasisTag) -> Self {
        HomologyClass {
            a: a.into(),
            b: b.into(),
            basis,
        }
    }

    /// Coefficient on the section curve `α`.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Coefficient on the fiber `β`.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn basis(&self) -> &BasisTag {
        &self.basis
    }

    /// A horizontal circle is never parallel to the fiber.
    pub fn is_horizontal_admissible(&self) -> bool {
        !self.a.is_zero()
    }

    pub fn neg(&self) -> Self {
        HomologyClass::new(-&self.a, -&self.b, self.basis.clone())
    }

    pub fn with_basis(&self, basis: BasisTag) -> Self {
        HomologyClass::new(self.a.clone(), self.b.clone(), basis)
    }

    /// Equal up to the orientation of the underlying curve.
    pub fn equals_up_to_sign(&self, other: &HomologyClass) -> bool {
        self.basis == other.basis
            && ((self.a == other.a && self.b == other.b)
                || (self.a == -&other.a && self.b == -&other.b))
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})@{}", self.a, self.b, self.basis)
    }
}

/// Algebraic intersection number `u ∧ v = u.a·v.b − u.b·v.a`.
pub fn wedge(u: &HomologyClass, v: &HomologyClass) -> Result<BigInt, AlgebraError> {
    if u.basis != v.basis {
        return Err(AlgebraError::Basis {
            left: u.basis.clone(),
            right: v.basis.clone(),
        });
    }
    Ok(&u.a * &v.b - &u.b * &v.a)
}

/// An unchecked 2×2 integer matrix `(p q / r s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl Matrix2 {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Self {
        Matrix2 {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            s: s.into(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }

    /// Column-vector action `(a, b)ᵗ ↦ (p·a + q·b, r·a + s·b)ᵗ`.
    pub fn apply(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        (&self.p * a + &self.q * b, &self.r * a + &self.s * b)
    }

    /// Integer inverse, defined when `|det| = 1`.
    pub fn inverse(&self) -> Option<Matrix2> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return None;
        }
        // det = ±1 is its own inverse
        Some(Matrix2 {
            p: &det * &self.s,
            q: -(&det * &self.q),
            r: -(&det * &self.r),
            s: &det * &self.p,
        })
    }

    pub fn rows(&self) -> [[BigInt; 2]; 2] {
        [
            [self.p.clone(), self.q.clone()],
            [self.r.clone(), self.s.clone()],
        ]
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} / {} {})", self.p, self.q, self.r, self.s)
    }
}

/// A gluing matrix of a simple graph manifold: `|det| = 1` and `|q| = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GluingMatrix(Matrix2);

impl GluingMatrix {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Result<Self, AlgebraError> {
        GluingMatrix::try_from(Matrix2::new(p, q, r, s))
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn det(&self) -> BigInt {
        self.0.det()
    }

    pub fn inverse(&self) -> GluingMatrix {
        // |det| = 1 and the inverse has q' = ∓q, so both invariants survive.
        GluingMatrix(self.0.inverse().expect("unimodular"))
    }
}

impl TryFrom<Matrix2> for GluingMatrix {
    type Error = AlgebraError;

    fn try_from(m: Matrix2) -> Result<Self, Self::Error> {
        let det = m.det();
        if det.abs() != BigInt::one() {
            return Err(AlgebraError::NotUnimodular { det });
        }
        if m.q.abs() != BigInt::one() {
            return Err(AlgebraError::NotSimple { q: m.q.clone() });
        }
        Ok(GluingMatrix(m))
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Pushes a class across a torus: `c` must be in the `near` basis, the result
/// is tagged `far`.
pub fn transport(
    j: &GluingMatrix,
    c: &HomologyClass,
    near: &BasisTag,
    far: &BasisTag,
) -> Result<HomologyClass, AlgebraError> {
    if &c.basis != near {
        return Err(AlgebraError::Basis {
            left: c.basis.clone(),
            right: near.clone(),
        });
    }
    let (a, b) = j.0.apply(&c.a, &c.b);
    Ok(HomologyClass::new(a, b, far.clone()))
}

/// A positive rational number, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveRational {
    num: BigUint,
    den: BigUint,
}

impl PositiveRational {
    /// `None` when either part is zero.
    pub fn new(num: BigUint, den: BigUint) -> Option<Self> {
        if num.is_zero() || den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        Some(PositiveRational {
            num: num / &g,
            den: den / &g,
        })
    }

    pub fn one() -> Self {
        PositiveRational {
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    pub fn integer(n: impl Into<BigUint>) -> Option<Self> {
        PositiveRational::new(n.into(), BigUint::one())
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn recip(&self) -> Self {
        PositiveRational {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        PositiveRational {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }
}

impl Mul for &PositiveRational {
    type Output = PositiveRational;

    fn mul(self, rhs: &PositiveRational) -> PositiveRational {
        // cross-cancel first so the product is already reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        PositiveRational {
            num: (&self.num / &g1) * (&rhs.num / &g2),
            den: (&self.den / &g2) * (&rhs.den / &g1),
        }
    }
}

impl Mul for PositiveRational {
    type Output = PositiveRational;

    fn mul(self, rhs: PositiveRational) -> PositiveRational {
        &self * &rhs
    }
}

impl std::iter::Product for PositiveRational {
    fn product<I: Iterator<Item = PositiveRational>>(iter: I) -> Self {
        iter.fold(PositiveRational::one(), |acc, x| acc * x)
    }
}

impl Ord for PositiveRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for PositiveRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid positive fraction {0:?}")]
pub struct ParseFractionError(String);

impl FromStr for PositiveRational {
    type Err = ParseFractionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseFractionError(s.to_string());
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigUint = n.trim().parse().map_err(|_| err())?;
        let d: BigUint = d.trim().parse().map_err(|_| err())?;
        PositiveRational::new(n, d).ok_or_else(err)
    }
}

/// `|num / den|` in lowest terms.
pub fn reduce(num: &BigInt, den: &BigInt) -> Result<PositiveRational, AlgebraError> {
    if num.is_zero() || den.is_zero() {
        return Err(AlgebraError::ZeroSlope {
            num: num.clone(),
            den: den.clone(),
        });
    }
    let n = num.magnitude().clone();
    let d = den.magnitude().clone();
    Ok(PositiveRational::new(n, d).expect("nonzero"))
}
