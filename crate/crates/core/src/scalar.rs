//! Real scalar backends.
//!
//! Every structure in this crate is generic over a [`Real`] field. Two
//! families are provided: arbitrary-precision rationals ([`Rational`]), for
//! which all arithmetic is exact and comparisons are literal, and IEEE floats
//! (`f64`, `f32`), for which every comparison goes through a tolerance.
//! Complex scalars are `num_complex::Complex<R>`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational.
pub type Rational = BigRational;

/// Which arithmetic a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

/// An ordered real field usable as the base of the complex scalar.
pub trait Real:
    Num + Signed + Clone + PartialOrd + Debug + Send + Sync + 'static
{
    const BACKEND: Backend;

    fn from_i64(n: i64) -> Self;

    /// `n / d`; `d` must be nonzero.
    fn ratio(n: i64, d: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Square root if it is representable in this field.
    ///
    /// Floats always succeed for non-negative input; rationals succeed only
    /// for squares of rationals.
    fn try_sqrt(&self) -> Option<Self>;

    /// Absolute tolerance, per unit of magnitude, under which a computed
    /// residual counts as zero. Zero for exact backends.
    fn negligible() -> Self;

    /// Whether `x` vanishes relative to `scale` under [`Real::negligible`].
    fn is_negligible(x: &Self, scale: &Self) -> bool {
        let unit = if scale.abs() > Self::one() {
            scale.abs()
        } else {
            Self::one()
        };
        x.abs() <= Self::negligible() * unit
    }

    fn to_json(&self) -> serde_json::Value;
}

/// Marker for backends with exact, rounding-free arithmetic.
pub trait ExactReal: Real {}

impl ExactReal for BigRational {}

impl Real for BigRational {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(BigRational::new(rn, rd))
        } else {
            None
        }
    }

    fn negligible() -> Self {
        Self::zero()
    }

    fn is_negligible(x: &Self, _scale: &Self) -> bool {
        x.is_zero()
    }

    fn to_json(&self) -> serde_json::Value {
        if self.is_integer() {
            serde_json::Value::String(self.numer().to_string())
        } else {
            serde_json::Value::String(format!("{}/{}", self.numer(), self.denom()))
        }
    }
}

macro_rules! impl_float_real {
    ($t:ty, $tol:expr) => {
        impl Real for $t {
            const BACKEND: Backend = Backend::Float;

            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn ratio(n: i64, d: i64) -> Self {
                n as $t / d as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn try_sqrt(&self) -> Option<Self> {
                (*self >= 0.0).then(|| Float::sqrt(*self))
            }

            fn negligible() -> Self {
                $tol
            }

            fn to_json(&self) -> serde_json::Value {
                serde_json::json!(*self as f64)
            }
        }
    };
}

impl_float_real!(f64, 1e-9);
impl_float_real!(f32, 1e-3);

/// `re + i·im` built from small integers.
pub fn cplx<R: Real>(re: i64, im: i64) -> Complex<R> {
    Complex::new(R::from_i64(re), R::from_i64(im))
}

pub fn real<R: Real>(x: R) -> Complex<R> {
    Complex::new(x, R::zero())
}

pub fn imag_unit<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::one())
}

/// Modulus as `f64` (exact backends are converted first).
pub fn modulus<R: Real>(z: &Complex<R>) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

pub fn complex_to_json<R: Real>(z: &Complex<R>) -> serde_json::Value {
    serde_json::json!([z.re.to_json(), z.im.to_json()])
}
