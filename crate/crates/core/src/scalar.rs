//! Number types the solvers run over.
//!
//! Exact types ([`Rational`], [`QSqrt5`]) use zero tolerances everywhere, so
//! equalities such as "all charged vertices share the same cost" are decided
//! exactly. `f64` uses the small fixed tolerances below.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Mass below this is treated as uncharged in float mode.
pub const FLOAT_CHARGE_THRESHOLD: f64 = 1e-9;
/// Distribution totals may drift this far from `r` in float mode.
pub const FLOAT_MASS_TOLERANCE: f64 = 1e-9;
/// Default cost-gap tolerance for float equilibrium checks.
pub const FLOAT_EQ_TOLERANCE: f64 = 1e-9;
/// Pivots smaller than this are treated as zero by float elimination.
pub const FLOAT_PIVOT_TOLERANCE: f64 = 1e-11;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic is exact (tolerances are then all zero).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Nearest value of this type. Exact types convert the binary float exactly.
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn pivot_tolerance() -> Self;
    fn charge_threshold() -> Self;
    fn mass_tolerance() -> Self;
    fn eq_tolerance() -> Self;

    /// `|self| <= pivot_tolerance()`.
    fn is_negligible(&self) -> bool {
        self.abs() <= Self::pivot_tolerance()
    }
}

pub(crate) fn max_of<S: Scalar>(a: S, b: S) -> S {
    if b > a {
        b
    } else {
        a
    }
}

pub(crate) fn min_of<S: Scalar>(a: S, b: S) -> S {
    if b < a {
        b
    } else {
        a
    }
}

pub(crate) fn sum<S: Scalar>(values: &[S]) -> S {
    values.iter().cloned().fold(S::zero(), |acc, v| acc + v)
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        libm::fabs(*self)
    }
    fn pivot_tolerance() -> Self {
        FLOAT_PIVOT_TOLERANCE
    }
    fn charge_threshold() -> Self {
        FLOAT_CHARGE_THRESHOLD
    }
    fn mass_tolerance() -> Self {
        FLOAT_MASS_TOLERANCE
    }
    fn eq_tolerance() -> Self {
        FLOAT_EQ_TOLERANCE
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(Zero::zero)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn pivot_tolerance() -> Self {
        Zero::zero()
    }
    fn charge_threshold() -> Self {
        Zero::zero()
    }
    fn mass_tolerance() -> Self {
        Zero::zero()
    }
    fn eq_tolerance() -> Self {
        Zero::zero()
    }
}

/// Exact element `a + b·√5` of the quadratic field `Q(√5)`.
///
/// Needed for α-uniform games whose interesting coefficient is
/// `(√5 − 1)/2`, where float determinants cannot decide singularity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt5 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt5 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt5 { a, b }
    }

    pub fn sqrt5() -> Self {
        QSqrt5::new(Zero::zero(), One::one())
    }

    /// The golden-ratio conjugate `(√5 − 1)/2 ≈ 0.618`.
    pub fn golden_conjugate() -> Self {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        QSqrt5::new(-half.clone(), half)
    }

    pub fn conjugate(&self) -> Self {
        QSqrt5::new(self.a.clone(), -self.b.clone())
    }

    /// `a² − 5b²`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(5)) * &self.b * &self.b
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Zero::zero());
        let sb = self.b.cmp(&Zero::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // Opposite signs: the larger of a² and 5b² wins.
            (sa, _) => match self.norm().cmp(&Zero::zero()) {
                Ordering::Greater => sa,
                Ordering::Less => sa.reverse(),
                Ordering::Equal => Ordering::Equal,
            },
        }
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if Zero::is_zero(&self.a) {
            write!(f, "({})√5", self.b)
        } else {
            write!(f, "{} + ({})√5", self.a, self.b)
        }
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self.clone() - other.clone()).signum())
    }
}

impl Add for QSqrt5 {
    type Output = QSqrt5;
    fn add(self, rhs: Self) -> Self {
        QSqrt5::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, rhs: Self) -> Self {
        QSqrt5::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, rhs: Self) -> Self {
        let five = Rational::from_integer(BigInt::from(5));
        QSqrt5::new(
            &self.a * &rhs.a + five * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for QSqrt5 {
    type Output = QSqrt5;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!Zero::is_zero(&n), "division by zero in Q(√5)");
        let num = self * rhs.conjugate();
        QSqrt5::new(num.a / n.clone(), num.b / n)
    }
}

impl Neg for QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> Self {
        QSqrt5::new(-self.a, -self.b)
    }
}

impl Scalar for QSqrt5 {
    const EXACT: bool = true;

    fn zero() -> Self {
        QSqrt5::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        QSqrt5::new(One::one(), Zero::zero())
    }
    fn from_i64(v: i64) -> Self {
        QSqrt5::new(Rational::from_i64(v), Zero::zero())
    }
    fn from_rational(q: &Rational) -> Self {
        QSqrt5::new(q.clone(), Zero::zero())
    }
    fn from_f64(v: f64) -> Self {
        QSqrt5::new(<Rational as Scalar>::from_f64(v), Zero::zero())
    }
    fn to_f64(&self) -> f64 {
        Scalar::to_f64(&self.a) + Scalar::to_f64(&self.b) * libm::sqrt(5.0)
    }
    fn pivot_tolerance() -> Self {
        Self::zero()
    }
    fn charge_threshold() -> Self {
        Self::zero()
    }
    fn mass_tolerance() -> Self {
        Self::zero()
    }
    fn eq_tolerance() -> Self {
        Self::zero()
    }
}

/// Shorthand for an exact rational `num/den`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}
