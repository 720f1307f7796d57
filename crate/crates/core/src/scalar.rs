//! Scalar abstractions shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// A value type the summation identities can be evaluated over.
///
/// Exact types (integers, rationals) compare with `==`. Floating-point types
/// compare with an absolute-or-relative tolerance, whichever is larger.
pub trait Scalar: Num + Clone + Debug {
    fn from_int(v: i64) -> Self;

    /// `true` when no rounding happens under ring operations.
    fn is_exact() -> bool;

    /// Equality for exact types; tolerance match for floats.
    fn agrees_with(&self, other: &Self) -> bool;
}

macro_rules! exact_scalar {
    ($($t:ty => $conv:expr),* $(,)?) => {$(
        impl Scalar for $t {
            #[inline]
            fn from_int(v: i64) -> Self {
                $conv(v)
            }
            fn is_exact() -> bool {
                true
            }
            fn agrees_with(&self, other: &Self) -> bool {
                self == other
            }
        }
    )*};
}

exact_scalar!(
    i64 => |v| v,
    i128 => |v: i64| v as i128,
    BigInt => BigInt::from,
    Ratio<i64> => Ratio::from_integer,
    Ratio<i128> => |v: i64| Ratio::from_integer(v as i128),
    BigRational => |v: i64| BigRational::from_integer(BigInt::from(v)),
);

/// Floating-point scalars: `f32` and `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Scalar + Sum + Display + Send + Sync + 'static
{
    /// Tolerance used by [`Scalar::agrees_with`].
    const TOLERANCE: Self;

    /// Lossy conversion from `f64`; the literal constants in this crate are all
    /// representable to the precision of `Self`.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn of_u64(n: u64) -> Self {
        Self::from_u64(n).expect("u64 fits a float")
    }
}

macro_rules! real_scalar {
    ($($t:ty => $tol:expr),*) => {$(
        impl Scalar for $t {
            #[inline]
            fn from_int(v: i64) -> Self {
                v as $t
            }
            fn is_exact() -> bool {
                false
            }
            fn agrees_with(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs());
                (self - other).abs() <= <$t as Real>::TOLERANCE.max(<$t as Real>::TOLERANCE * scale)
            }
        }

        impl Real for $t {
            const TOLERANCE: Self = $tol;
        }
    )*};
}

real_scalar!(f32 => 1e-4, f64 => 1e-9);
