//! Small dense complex matrices over a [`Real`] backend.
//!
//! `Mat<R, N>` is an `N×N` row-major array of `Complex<R>`. All values are
//! immutable after construction; operations return new matrices. Backend
//! homogeneity is a type-level property: two matrices can only be combined
//! when they share `R`, and moving from an exact matrix to a float one goes
//! through [`Mat::to_f64`].

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cplx, modulus, real, ExactReal, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<R, const N: usize> {
    entries: [[Complex<R>; N]; N],
}

pub type Mat4<R> = Mat<R, 4>;
pub type Mat2<R> = Mat<R, 2>;

/// Term-norm threshold at which the exponential series is truncated.
pub const EXP_SERIES_TOLERANCE: f64 = 1e-18;
const EXP_MAX_TERMS: usize = 200;

impl<R: Real, const N: usize> Mat<R, N> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<R>) -> Self {
        Self {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_rows(entries: [[Complex<R>; N]; N]) -> Self {
        Self { entries }
    }

    /// Matrix with Gaussian-integer entries `re + i·im`.
    pub fn from_int_rows(rows: [[(i64, i64); N]; N]) -> Self {
        Self::from_fn(|i, j| cplx(rows[i][j].0, rows[i][j].1))
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| Complex::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn diag(d: [Complex<R>; N]) -> Self {
        let mut d = d.map(Some);
        Self::from_fn(|i, j| {
            if i == j {
                d[i].take().unwrap_or_else(Complex::zero)
            } else {
                Complex::zero()
            }
        })
    }

    pub fn diag_int(d: [i64; N]) -> Self {
        Self::diag(d.map(|x| cplx(x, 0)))
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex<R> {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[[Complex<R>; N]; N] {
        &self.entries
    }

    pub fn scale(&self, s: &Complex<R>) -> Self {
        Self::from_fn(|i, j| &self.entries[i][j] * s)
    }

    pub fn scale_real(&self, s: &R) -> Self {
        self.scale(&real(s.clone()))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j].conj())
    }

    pub fn trace(&self) -> Complex<R> {
        (0..N).fold(Complex::zero(), |acc, i| acc + &self.entries[i][i])
    }

    /// `ab − ba`
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `ab + ba`
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn mul_vec(&self, v: &[Complex<R>]) -> Vec<Complex<R>> {
        assert_eq!(v.len(), N, "vector length must match matrix size");
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.is_zero())
    }

    /// Zero up to the backend's negligibility threshold (literal for exact).
    pub fn is_negligible(&self) -> bool {
        let scale = R::one();
        self.entries
            .iter()
            .flatten()
            .all(|z| R::is_negligible(&z.re, &scale) && R::is_negligible(&z.im, &scale))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(modulus).fold(0.0, f64::max)
    }

    /// Promotes every entry to `f64`.
    pub fn to_f64(&self) -> Mat<f64, N> {
        Mat::from_fn(|i, j| {
            let z = &self.entries[i][j];
            Complex::new(z.re.to_f64(), z.im.to_f64())
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|row| row.iter().map(crate::scalar::complex_to_json).collect())
                .collect(),
        )
    }
}

impl<R: ExactReal, const N: usize> Mat<R, N> {
    /// Literal entrywise equality; only available for exact backends.
    pub fn exact_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl<R: Real + Float, const N: usize> Mat<R, N> {
    /// Entrywise max-norm comparison.
    pub fn approx_eq(&self, other: &Self, tol: R) -> bool {
        (self - other).max_abs() <= Real::to_f64(&tol)
    }

    fn inf_norm(&self) -> R {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .fold(R::zero(), |acc, z| acc + Float::hypot(z.re, z.im))
            })
            .fold(R::zero(), Float::max)
    }

    /// Matrix exponential by scaling and squaring with a truncated Taylor
    /// series. The series stops once a term's norm drops below `tol`.
    pub fn exp(&self, tol: R) -> Result<Self> {
        let norm = self.inf_norm();
        let finite = self.entries.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite || !norm.is_finite() {
            return Err(Error::ExpDiverged);
        }
        let half = R::ratio(1, 2);
        let mut squarings = 0u32;
        let mut scaled_norm = norm;
        while scaled_norm > half {
            scaled_norm = scaled_norm * half;
            squarings += 1;
            if squarings > 1000 {
                return Err(Error::ExpDiverged);
            }
        }
        let scaled = self.scale_real(&Float::powi(half, squarings as i32));

        let mut sum = Self::identity();
        let mut term = Self::identity();
        let mut converged = false;
        for k in 1..=EXP_MAX_TERMS {
            term = (&term * &scaled).scale_real(&(R::one() / R::from_i64(k as i64)));
            sum = &sum + &term;
            if term.inf_norm() < tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::ExpDiverged);
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        if !sum.entries.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::ExpDiverged);
        }
        Ok(sum)
    }
}

/// Matrix exponential; see [`Mat::exp`].
pub fn mat_exp<R: Real + Float, const N: usize>(a: &Mat<R, N>, tol: R) -> Result<Mat<R, N>> {
    a.exp(tol)
}

impl<R: Real> Mat4<R> {
    /// Assembles `[[a, b], [c, d]]` from 2×2 blocks.
    pub fn from_blocks(a: &Mat2<R>, b: &Mat2<R>, c: &Mat2<R>, d: &Mat2<R>) -> Self {
        Self::from_fn(|i, j| {
            let block = match (i < 2, j < 2) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            block.get(i % 2, j % 2).clone()
        })
    }

    /// 2×2 block at block-row `r`, block-column `c`.
    pub fn block(&self, r: usize, c: usize) -> Mat2<R> {
        Mat2::from_fn(|i, j| self.entries[2 * r + i][2 * c + j].clone())
    }
}

/// Pauli matrices σ¹, σ², σ³.
pub fn pauli<R: Real>() -> [Mat2<R>; 3] {
    [
        Mat2::from_int_rows([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]),
        Mat2::from_int_rows([[(0, 0), (0, -1)], [(0, 1), (0, 0)]]),
        Mat2::from_int_rows([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]),
    ]
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<R: Real, const N: usize> $trait<&Mat<R, N>> for &Mat<R, N> {
            type Output = Mat<R, N>;
            fn $method(self, rhs: &Mat<R, N>) -> Mat<R, N> {
                $body(self, rhs)
            }
        }
        impl<R: Real, const N: usize> $trait for Mat<R, N> {
            type Output = Mat<R, N>;
            fn $method(self, rhs: Mat<R, N>) -> Mat<R, N> {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Mat<R, N>, b: &Mat<R, N>| {
    Mat::from_fn(|i, j| &a.entries[i][j] + &b.entries[i][j])
});
forward_binop!(Sub, sub, |a: &Mat<R, N>, b: &Mat<R, N>| {
    Mat::from_fn(|i, j| &a.entries[i][j] - &b.entries[i][j])
});
forward_binop!(Mul, mul, |a: &Mat<R, N>, b: &Mat<R, N>| {
    Mat::from_fn(|i, j| {
        (0..N).fold(Complex::zero(), |acc, k| {
            acc + &a.entries[i][k] * &b.entries[k][j]
        })
    })
});

impl<R: Real, const N: usize> Neg for &Mat<R, N> {
    type Output = Mat<R, N>;
    fn neg(self) -> Mat<R, N> {
        Mat::from_fn(|i, j| -self.entries[i][j].clone())
    }
}

impl<R: Real, const N: usize> Neg for Mat<R, N> {
    type Output = Mat<R, N>;
    fn neg(self) -> Mat<R, N> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn identity_squared_is_identity() {
        let i4 = Mat4::<Q>::identity();
        assert!((&i4 * &i4).exact_eq(&i4));
    }

    #[test]
    fn diagonal_projector_product() {
        let p1 = Mat4::<Q>::diag_int([1, 1, 1, 0]);
        let p2 = Mat4::<Q>::diag_int([1, 1, 0, 1]);
        assert!((&p1 * &p2).exact_eq(&Mat4::diag_int([1, 1, 0, 0])));
        assert!((&p1 * &p1).exact_eq(&p1));
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = Mat4::<Q>::from_fn(|i, j| cplx(i as i64 - 2 * j as i64, (i * j) as i64));
        assert!(a.commutator(&a).is_zero());
    }

    #[test]
    fn pauli_algebra() {
        let [s1, s2, s3] = pauli::<Q>();
        let i2 = Mat2::identity();
        for s in [&s1, &s2, &s3] {
            assert!((s * s).exact_eq(&i2));
        }
        // σ¹σ² = iσ³
        assert!((&s1 * &s2).exact_eq(&s3.scale(&cplx(0, 1))));
        assert!(s1.anticommutator(&s2).is_zero());
    }

    #[test]
    fn blocks_round_trip() {
        let [s1, s2, s3] = pauli::<Q>();
        let i2 = Mat2::identity();
        let m = Mat4::from_blocks(&s1, &s2, &s3, &i2);
        assert_eq!(m.block(0, 0), s1);
        assert_eq!(m.block(0, 1), s2);
        assert_eq!(m.block(1, 0), s3);
        assert_eq!(m.block(1, 1), i2);
    }

    #[test]
    fn approx_eq_below_tolerance() {
        let i4 = Mat4::<f64>::identity();
        let mut bumped = *i4.rows();
        bumped[0][0] += Complex::new(1e-15, 0.0);
        assert!(i4.approx_eq(&Mat4::from_rows(bumped), 1e-12));
        assert!(!i4.approx_eq(&Mat4::zero(), 1e-12));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = Mat4::<f64>::zero().exp(EXP_SERIES_TOLERANCE).unwrap();
        assert!(e.approx_eq(&Mat4::identity(), 0.0));
    }

    #[test]
    fn exp_of_diagonal() {
        for t in [-2.5, 0.3, 1.0, 4.0] {
            let a = Mat4::<f64>::diag_int([1, 0, 0, 0]).scale_real(&t);
            let e = a.exp(EXP_SERIES_TOLERANCE).unwrap();
            let expected = Mat4::diag([
                Complex::new(t.exp(), 0.0),
                Complex::one(),
                Complex::one(),
                Complex::one(),
            ]);
            assert!(e.approx_eq(&expected, 1e-13 * t.exp().max(1.0)), "t = {t}");
        }
    }

    #[test]
    fn exp_of_nilpotent_truncates() {
        let n = Mat2::<f64>::from_int_rows([[(0, 0), (3, 0)], [(0, 0), (0, 0)]]);
        let e = n.exp(EXP_SERIES_TOLERANCE).unwrap();
        assert!(e.approx_eq(&Mat2::from_int_rows([[(1, 0), (3, 0)], [(0, 0), (1, 0)]]), 1e-14));
    }

    #[test]
    fn exp_rejects_non_finite() {
        let a = Mat2::<f64>::diag([Complex::new(f64::NAN, 0.0), Complex::zero()]);
        assert_eq!(a.exp(EXP_SERIES_TOLERANCE), Err(Error::ExpDiverged));
    }

    #[test]
    fn promotion_to_float() {
        let a = Mat2::<Q>::from_fn(|i, j| Complex::new(Q::ratio(1 + i as i64, 4), Q::ratio(-(j as i64), 3)));
        let f = a.to_f64();
        assert_eq!(f.get(1, 1), &Complex::new(0.5, -1.0 / 3.0));
    }
}
