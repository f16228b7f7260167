//! Exact rational and lattice arithmetic.
//!
//! Everything downstream (cone membership, Fujita thresholds, dimension
//! certificates) reduces to integer linear algebra in rank 1 or 2, so this
//! module works with arbitrary-precision integers and rationals and never
//! touches floating point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::ser::Error as SerError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CoreError, Result};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator (`BigRational` maintains both invariants on construction).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(CoreError::InvalidInput("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalWire {
    num: i64,
    den: i64,
}

// Reports and catalog files carry rationals as {"num", "den"} pairs.  Every
// quantity in scope is tiny, so the wire format uses i64 and refuses to emit
// anything larger rather than silently rounding.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let num = i64::try_from(self.numer().clone())
            .map_err(|_| S::Error::custom("rational numerator exceeds the i64 wire format"))?;
        let den = i64::try_from(self.denom().clone())
            .map_err(|_| S::Error::custom("rational denominator exceeds the i64 wire format"))?;
        RationalWire { num, den }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = RationalWire::deserialize(deserializer)?;
        if wire.den <= 0 {
            return Err(D::Error::custom("rational denominator must be positive"));
        }
        Ok(Rational(BigRational::new(wire.num.into(), wire.den.into())))
    }
}

/// An integral class vector in a numerical class group of rank 1 or 2.
///
/// The same representation serves divisor classes and curve classes; the
/// owning target fixes the basis and the rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassVector(Vec<BigInt>);

pub type CurveClass = ClassVector;
pub type DivisorClass = ClassVector;

impl ClassVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        match coords.len() {
            1 | 2 => Ok(ClassVector(coords)),
            r => Err(CoreError::UnsupportedRank(r)),
        }
    }

    pub fn of_i64(coords: &[i64]) -> Self {
        ClassVector::new(coords.iter().map(|&c| BigInt::from(c)).collect())
            .expect("rank 1 or 2 coordinate slice")
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: impl Into<BigInt>) -> Self {
        let f = factor.into();
        ClassVector(self.0.iter().map(|c| c * &f).collect())
    }

    pub fn add(&self, other: &ClassVector) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(CoreError::RankMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        Ok(ClassVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ClassVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: std::result::Result<Vec<i64>, _> =
            self.0.iter().map(|c| i64::try_from(c.clone())).collect();
        coords
            .map_err(|_| S::Error::custom("class coordinate exceeds the i64 wire format"))?
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ClassVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<i64>::deserialize(deserializer)?;
        ClassVector::new(coords.into_iter().map(BigInt::from).collect())
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// The intersection pairing between a divisor basis and a curve basis, as an
/// integer matrix with `matrix[i][j] = <divisor basis i, curve basis j>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    matrix: Vec<Vec<BigInt>>,
}

impl Pairing {
    pub fn new(matrix: Vec<Vec<BigInt>>) -> Result<Self> {
        let rows = matrix.len();
        if !(1..=2).contains(&rows) {
            return Err(CoreError::UnsupportedRank(rows));
        }
        let cols = matrix[0].len();
        if !(1..=2).contains(&cols) {
            return Err(CoreError::UnsupportedRank(cols));
        }
        if matrix.iter().any(|row| row.len() != cols) {
            return Err(CoreError::InvalidInput("ragged pairing matrix".into()));
        }
        Ok(Pairing { matrix })
    }

    pub fn of_i64(matrix: &[&[i64]]) -> Self {
        Pairing::new(
            matrix
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("static pairing matrix of rank 1 or 2")
    }

    pub fn divisor_rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn curve_rank(&self) -> usize {
        self.matrix[0].len()
    }
}

/// Evaluates the bilinear pairing of a divisor class against a curve class.
pub fn pair(p: &Pairing, divisor: &ClassVector, curve: &ClassVector) -> Result<Rational> {
    if divisor.rank() != p.divisor_rank() {
        return Err(CoreError::RankMismatch {
            expected: p.divisor_rank(),
            got: divisor.rank(),
        });
    }
    if curve.rank() != p.curve_rank() {
        return Err(CoreError::RankMismatch {
            expected: p.curve_rank(),
            got: curve.rank(),
        });
    }
    let mut acc = BigInt::zero();
    for (i, d) in divisor.coords().iter().enumerate() {
        for (j, c) in curve.coords().iter().enumerate() {
            acc += d * &p.matrix[i][j] * c;
        }
    }
    Ok(Rational::integer(acc))
}

/// A closed rational polyhedral cone of rank 1 or 2, stored by its generating
/// rays exactly as the catalog declares them (no normalization).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    rays: Vec<ClassVector>,
    rank: usize,
}

impl RationalCone {
    pub fn new(rays: Vec<ClassVector>) -> Result<Self> {
        if rays.is_empty() || rays.len() > 2 {
            return Err(CoreError::InvalidInput(format!(
                "a rank <= 2 cone needs 1 or 2 rays, got {}",
                rays.len()
            )));
        }
        let rank = rays[0].rank();
        if rays.iter().any(|r| r.rank() != rank) {
            return Err(CoreError::InvalidInput(
                "cone rays of differing rank".into(),
            ));
        }
        if rays.iter().any(ClassVector::is_zero) {
            return Err(CoreError::InvalidInput("cone ray is zero".into()));
        }
        if rays.len() == 2 {
            if rank != 2 {
                return Err(CoreError::InvalidInput(
                    "two rays require a rank-2 lattice".into(),
                ));
            }
            if det2(&rays[0], &rays[1]).is_zero() {
                return Err(CoreError::InvalidInput(
                    "cone rays are linearly dependent".into(),
                ));
            }
        }
        Ok(RationalCone { rays, rank })
    }

    pub fn of_i64(rays: &[&[i64]]) -> Self {
        RationalCone::new(rays.iter().map(|r| ClassVector::of_i64(r)).collect())
            .expect("static cone data")
    }

    pub fn rays(&self) -> &[ClassVector] {
        &self.rays
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

fn det2(a: &ClassVector, b: &ClassVector) -> BigInt {
    &a.coords()[0] * &b.coords()[1] - &a.coords()[1] * &b.coords()[0]
}

/// Tests membership of an integral class in the cone: is `v` a nonnegative
/// rational combination of the rays?  Rank 2 is an exact 2x2 solve; rank 1 a
/// proportionality and sign test.
pub fn cone_contains(cone: &RationalCone, v: &ClassVector) -> Result<bool> {
    if v.rank() != cone.rank() {
        return Err(CoreError::RankMismatch {
            expected: cone.rank(),
            got: v.rank(),
        });
    }
    let coords: Vec<BigRational> = v
        .coords()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    cone_contains_rational(cone, &coords)
}

/// Membership test for a vector with rational coordinates; used internally by
/// the threshold computation and by boundary tests.
pub fn cone_contains_rational(cone: &RationalCone, v: &[BigRational]) -> Result<bool> {
    if v.len() != cone.rank() {
        return Err(CoreError::RankMismatch {
            expected: cone.rank(),
            got: v.len(),
        });
    }
    if cone.rays.len() == 1 {
        let ray = &cone.rays[0];
        if cone.rank == 1 {
            let r0 = BigRational::from_integer(ray.coords()[0].clone());
            let c = &v[0] / &r0;
            return Ok(!c.is_negative() && &c * &r0 == v[0]);
        }
        // Single ray in a rank-2 lattice: v must be a nonnegative multiple.
        let (rx, ry) = (
            BigRational::from_integer(ray.coords()[0].clone()),
            BigRational::from_integer(ray.coords()[1].clone()),
        );
        let c = if !rx.is_zero() { &v[0] / &rx } else { &v[1] / &ry };
        return Ok(!c.is_negative() && &c * &rx == v[0] && &c * &ry == v[1]);
    }
    let (x, y) = solve_ray_coefficients(cone, v);
    Ok(!x.is_negative() && !y.is_negative())
}

/// Solves `v = x * ray0 + y * ray1` exactly (rays independent by invariant).
fn solve_ray_coefficients(cone: &RationalCone, v: &[BigRational]) -> (BigRational, BigRational) {
    let r0 = cone.rays[0].coords();
    let r1 = cone.rays[1].coords();
    let det = BigRational::from_integer(det2(&cone.rays[0], &cone.rays[1]));
    let r0 = (
        BigRational::from_integer(r0[0].clone()),
        BigRational::from_integer(r0[1].clone()),
    );
    let r1 = (
        BigRational::from_integer(r1[0].clone()),
        BigRational::from_integer(r1[1].clone()),
    );
    // Cramer's rule on [r0 r1] [x y]^T = v.
    let x = (&v[0] * &r1.1 - &v[1] * &r1.0) / &det;
    let y = (&r0.0 * &v[1] - &r0.1 * &v[0]) / &det;
    (x, y)
}

/// Outcome of [`cone_threshold`]: either the least admissible parameter or a
/// proof that no nonnegative parameter lands in the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Threshold {
    Least(Rational),
    NoThreshold,
}

impl Threshold {
    pub fn least(&self) -> Option<&Rational> {
        match self {
            Threshold::Least(t) => Some(t),
            Threshold::NoThreshold => None,
        }
    }
}

/// Computes the exact infimum `t >= 0` such that `base + t * direction` lies
/// in the cone (rank 2 only).  Cones are closed, so the infimum is attained.
///
/// This is the primitive behind Fujita-invariant computations: the least `t`
/// with `t*L + K` pseudo-effective.
pub fn cone_threshold(
    cone: &RationalCone,
    base: &ClassVector,
    direction: &ClassVector,
) -> Result<Threshold> {
    if cone.rank != 2 || cone.rays.len() != 2 {
        return Err(CoreError::UnsupportedRank(cone.rank));
    }
    if base.rank() != 2 || direction.rank() != 2 {
        return Err(CoreError::RankMismatch {
            expected: 2,
            got: base.rank().min(direction.rank()),
        });
    }
    if direction.is_zero() {
        return Err(CoreError::InvalidInput(
            "threshold direction must be nonzero".into(),
        ));
    }

    // Write base + t*direction in ray coordinates; each coefficient is an
    // affine function (p + q*t) / det, and membership needs both >= 0.
    let det = det2(&cone.rays[0], &cone.rays[1]);
    let r0 = cone.rays[0].coords();
    let r1 = cone.rays[1].coords();
    let b = base.coords();
    let d = direction.coords();

    // Numerators of Cramer coefficients, multiplied through by det's sign so
    // the constraints read p + q*t >= 0.
    let sign = if det.is_negative() {
        BigInt::from(-1)
    } else {
        BigInt::one()
    };
    let constraints = [
        (
            (&b[0] * &r1[1] - &b[1] * &r1[0]) * &sign,
            (&d[0] * &r1[1] - &d[1] * &r1[0]) * &sign,
        ),
        (
            (&r0[0] * &b[1] - &r0[1] * &b[0]) * &sign,
            (&r0[0] * &d[1] - &r0[1] * &d[0]) * &sign,
        ),
    ];

    let mut lower = BigRational::zero();
    let mut upper: Option<BigRational> = None;
    for (p, q) in &constraints {
        if q.is_zero() {
            if p.is_negative() {
                return Ok(Threshold::NoThreshold);
            }
        } else {
            let bound = BigRational::new(-p.clone(), q.clone());
            if q.is_negative() {
                upper = Some(match upper {
                    Some(u) if u < bound => u,
                    _ => bound,
                });
            } else if bound > lower {
                lower = bound;
            }
        }
    }
    if let Some(u) = upper {
        if lower > u {
            return Ok(Threshold::NoThreshold);
        }
    }
    Ok(Threshold::Least(Rational::from_ratio(lower)))
}
