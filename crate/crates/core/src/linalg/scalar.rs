//! Integer scalars used by the elimination kernels.
//!
//! Every kernel is generic over [`Scalar`] and written with checked
//! arithmetic. Callers run the `i64` instantiation first and redo the
//! computation over [`BigInt`] when any operation overflows, so results are
//! always exact.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Marker error: an `i64` kernel overflowed and must be rerun in big integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type Checked<T> = Result<T, Overflow>;

pub trait Scalar: Clone + Ord + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn add(&self, other: &Self) -> Checked<Self>;
    fn sub(&self, other: &Self) -> Checked<Self>;
    fn mul(&self, other: &Self) -> Checked<Self>;
    fn neg(&self) -> Checked<Self>;
    fn abs(&self) -> Checked<Self>;
    /// Floor division; `other` is nonzero.
    fn div_floor(&self, other: &Self) -> Checked<Self>;
    /// Exact division; `other` divides `self`.
    fn div_exact(&self, other: &Self) -> Checked<Self>;
    fn gcd(&self, other: &Self) -> Checked<Self>;
    fn from_big(value: &BigInt) -> Checked<Self>;
    fn to_big(&self) -> BigInt;

    /// `self - q * other`
    fn sub_mul(&self, q: &Self, other: &Self) -> Checked<Self> {
        self.sub(&q.mul(other)?)
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn add(&self, other: &Self) -> Checked<Self> {
        self.checked_add(*other).ok_or(Overflow)
    }
    fn sub(&self, other: &Self) -> Checked<Self> {
        self.checked_sub(*other).ok_or(Overflow)
    }
    fn mul(&self, other: &Self) -> Checked<Self> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn abs(&self) -> Checked<Self> {
        self.checked_abs().ok_or(Overflow)
    }
    fn div_floor(&self, other: &Self) -> Checked<Self> {
        if *self == i64::MIN && *other == -1 {
            return Err(Overflow);
        }
        Ok(Integer::div_floor(self, other))
    }
    fn div_exact(&self, other: &Self) -> Checked<Self> {
        self.checked_div(*other).ok_or(Overflow)
    }
    fn gcd(&self, other: &Self) -> Checked<Self> {
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        i64::try_from(a).map_err(|_| Overflow)
    }
    fn from_big(value: &BigInt) -> Checked<Self> {
        value.to_i64().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit(&self) -> bool {
        Signed::abs(self).is_one()
    }
    fn add(&self, other: &Self) -> Checked<Self> {
        Ok(self + other)
    }
    fn sub(&self, other: &Self) -> Checked<Self> {
        Ok(self - other)
    }
    fn mul(&self, other: &Self) -> Checked<Self> {
        Ok(self * other)
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn abs(&self) -> Checked<Self> {
        Ok(Signed::abs(self))
    }
    fn div_floor(&self, other: &Self) -> Checked<Self> {
        Ok(Integer::div_floor(self, other))
    }
    fn div_exact(&self, other: &Self) -> Checked<Self> {
        Ok(self / other)
    }
    fn gcd(&self, other: &Self) -> Checked<Self> {
        Ok(Integer::gcd(self, other))
    }
    fn from_big(value: &BigInt) -> Checked<Self> {
        Ok(value.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Runs `kernel` over `i64`, falling back to `BigInt` on overflow.
pub(crate) fn with_fallback<R>(
    fast: impl FnOnce() -> Checked<R>,
    slow: impl FnOnce() -> Checked<R>,
) -> R {
    match fast() {
        Ok(r) => r,
        Err(Overflow) => slow().expect("big integer arithmetic cannot overflow"),
    }
}

/// Compares absolute values without overflow.
pub(crate) fn abs_lt<T: Scalar>(a: &T, b: &T) -> bool {
    match (a.abs(), b.abs()) {
        (Ok(x), Ok(y)) => x < y,
        _ => a.to_big().magnitude() < b.to_big().magnitude(),
    }
}
