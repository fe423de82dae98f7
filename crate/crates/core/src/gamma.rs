//! Pinned gamma-matrix representations.
//!
//! Three representations are provided, all for the metric
//! `g = diag(1, −1, −1, −1)` and with `γ⁵ = −iγ⁰γ¹γ²γ³`:
//!
//! * [`RepName::Spinor`]: `γ⁰ = [[0, I], [I, 0]]`, `γᵏ = [[0, −σᵏ], [σᵏ, 0]]`.
//!   The spatial signs are fixed so that `γ^μ p_μ Ψ = mΨ` written out for
//!   `Ψ = (ξ¹, ξ², η₁̇, η₂̇)` gives the coupled ξ/η component system with
//!   `(p⁰ + σ·p)` in the upper-right block and `(p⁰ − σ·p)` in the
//!   lower-left; then `γ⁵ = diag(−1, −1, 1, 1)`.
//! * [`RepName::Standard`]: the Dirac form, `γ⁰ = diag(I, −I)`.
//! * [`RepName::Majorana`]: all four `γ^μ` purely imaginary.
//!
//! The unitary maps between them are pinned constants relative to the spinor
//! representation and are re-verified whenever an [`Intertwiner`] is made.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{pauli, Mat2, Mat4};
use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepName {
    Spinor,
    Standard,
    Majorana,
}

impl RepName {
    pub const ALL: [RepName; 3] = [RepName::Spinor, RepName::Standard, RepName::Majorana];

    pub fn as_str(self) -> &'static str {
        match self {
            RepName::Spinor => "spinor",
            RepName::Standard => "standard",
            RepName::Majorana => "majorana",
        }
    }
}

impl fmt::Display for RepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RepName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spinor" | "chiral" | "weyl" => Ok(RepName::Spinor),
            "standard" | "dirac" => Ok(RepName::Standard),
            "majorana" => Ok(RepName::Majorana),
            other => Err(Error::UnknownRep(other.to_string())),
        }
    }
}

/// `+1` for `μ = 0`, `−1` for spatial `μ`.
pub fn metric_sign(mu: usize) -> i64 {
    if mu == 0 {
        1
    } else {
        -1
    }
}

/// A set `{γ⁰, γ¹, γ², γ³}` together with `γ⁵` and the matrix `C` such that
/// charge conjugation acts as `Ψ ↦ C Ψ*`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaRep<R> {
    name: RepName,
    gammas: [Mat4<R>; 4],
    gamma5: Mat4<R>,
    charge: Mat4<R>,
}

/// `{γ^μ, γ^ν} − 2g^{μν}I` for one ordered pair `μ ≤ ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordResidual<R> {
    pub mu: usize,
    pub nu: usize,
    pub residual: Mat4<R>,
}

fn spinor_gammas<R: Real>() -> [Mat4<R>; 4] {
    let z = Mat2::zero();
    let i2 = Mat2::identity();
    let [s1, s2, s3] = pauli();
    let spatial = |s: &Mat2<R>| Mat4::from_blocks(&z, &-s, s, &z);
    [
        Mat4::from_blocks(&z, &i2, &i2, &z),
        spatial(&s1),
        spatial(&s2),
        spatial(&s3),
    ]
}

fn standard_gammas<R: Real>() -> [Mat4<R>; 4] {
    let z = Mat2::zero();
    let i2 = Mat2::identity();
    let [s1, s2, s3] = pauli();
    let spatial = |s: &Mat2<R>| Mat4::from_blocks(&z, s, &-s, &z);
    [
        Mat4::from_blocks(&i2, &z, &z, &-&i2),
        spatial(&s1),
        spatial(&s2),
        spatial(&s3),
    ]
}

fn majorana_gammas<R: Real>() -> [Mat4<R>; 4] {
    let z = Mat2::zero();
    let [s1, s2, s3] = pauli();
    let i = cplx(0, 1);
    let is3 = s3.scale(&i);
    let mis1 = s1.scale(&-i);
    [
        Mat4::from_blocks(&z, &s2, &s2, &z),
        Mat4::from_blocks(&is3, &z, &z, &is3),
        Mat4::from_blocks(&z, &-&s2, &s2, &z),
        Mat4::from_blocks(&mis1, &z, &z, &mis1),
    ]
}

/// Pinned `(M, k)` with `U = M/√k` unitary and `U γ^μ_spinor U† = γ^μ_target`.
fn pinned_from_spinor<R: Real>(target: RepName) -> (Mat4<R>, R) {
    match target {
        RepName::Spinor => (Mat4::identity(), R::one()),
        RepName::Standard => {
            let i2 = Mat2::identity();
            (Mat4::from_blocks(&i2, &i2, &i2, &-&i2), R::from_i64(2))
        }
        RepName::Majorana => (
            Mat4::from_int_rows([
                [(1, 0), (0, -1), (1, 0), (0, 1)],
                [(0, 1), (1, 0), (0, -1), (1, 0)],
                [(-1, 0), (0, -1), (1, 0), (0, -1)],
                [(0, 1), (-1, 0), (0, 1), (1, 0)],
            ]),
            R::from_i64(4),
        ),
    }
}

impl<R: Real> GammaRep<R> {
    /// Builds and validates a pinned representation.
    pub fn build(name: RepName) -> Result<Self> {
        let rep = Self::pinned(name);
        if rep.is_valid() {
            Ok(rep)
        } else {
            Err(Error::RepresentationInvalid(name))
        }
    }

    /// The pinned matrices without re-validating them.
    pub(crate) fn pinned(name: RepName) -> Self {
        let gammas = match name {
            RepName::Spinor => spinor_gammas(),
            RepName::Standard => standard_gammas(),
            RepName::Majorana => majorana_gammas(),
        };
        let (m, k) = pinned_from_spinor::<R>(name);
        let spinor_charge = spinor_gammas::<R>()[2].scale(&cplx(0, 1));
        let charge = (&(&m * &spinor_charge) * &m.transpose()).scale_real(&(R::one() / k));
        Self::with_charge(name, gammas, charge)
    }

    /// Parses a representation name and builds it.
    pub fn build_named(name: &str) -> Result<Self> {
        Self::build(name.parse()?)
    }

    /// Wraps arbitrary matrices without validation; `C` defaults to `iγ²`.
    ///
    /// Used to construct deliberately broken representations for negative
    /// controls.
    pub fn from_gammas(name: RepName, gammas: [Mat4<R>; 4]) -> Self {
        let charge = gammas[2].scale(&cplx(0, 1));
        Self::with_charge(name, gammas, charge)
    }

    fn with_charge(name: RepName, gammas: [Mat4<R>; 4], charge: Mat4<R>) -> Self {
        let gamma5 = (&(&(&gammas[0] * &gammas[1]) * &gammas[2]) * &gammas[3]).scale(&cplx(0, -1));
        Self {
            name,
            gammas,
            gamma5,
            charge,
        }
    }

    pub fn name(&self) -> RepName {
        self.name
    }

    /// `γ^μ` (upper index).
    pub fn gamma(&self, mu: usize) -> &Mat4<R> {
        &self.gammas[mu]
    }

    pub fn gammas(&self) -> &[Mat4<R>; 4] {
        &self.gammas
    }

    /// `γ_μ = g_{μμ} γ^μ`.
    pub fn lowered(&self, mu: usize) -> Mat4<R> {
        if mu == 0 {
            self.gammas[0].clone()
        } else {
            -&self.gammas[mu]
        }
    }

    pub fn gamma5(&self) -> &Mat4<R> {
        &self.gamma5
    }

    pub fn metric(&self) -> Mat4<R> {
        Mat4::diag_int([1, -1, -1, -1])
    }

    /// Matrix `C` with charge conjugation `Ψ ↦ C Ψ*`.
    ///
    /// Equals `iγ²` in the spinor and standard representations. In the
    /// Majorana representation the pinned intertwiner carries it to `−i·I`.
    pub fn charge_conjugation(&self) -> &Mat4<R> {
        &self.charge
    }

    /// `γ^μ p_μ` for contravariant components `p^μ`.
    pub fn slash(&self, p: &[R; 4]) -> Mat4<R> {
        (0..4).fold(Mat4::zero(), |acc, mu| {
            &acc + &self.gammas[mu].scale_real(&(p[mu].clone() * R::from_i64(metric_sign(mu))))
        })
    }

    /// `σ_{μν} = (i/2)(γ_μγ_ν − γ_νγ_μ)` with lowered indices; zero for `μ = ν`.
    pub fn sigma(&self, mu: usize, nu: usize) -> Mat4<R> {
        if mu == nu {
            return Mat4::zero();
        }
        self.lowered(mu)
            .commutator(&self.lowered(nu))
            .scale(&Complex::new(R::zero(), R::ratio(1, 2)))
    }

    /// The ten residuals `{γ^μ, γ^ν} − 2g^{μν}I`, `μ ≤ ν`.
    pub fn clifford_residuals(&self) -> Vec<CliffordResidual<R>> {
        let mut out = Vec::with_capacity(10);
        for mu in 0..4 {
            for nu in mu..4 {
                let target = if mu == nu {
                    Mat4::identity().scale_real(&R::from_i64(2 * metric_sign(mu)))
                } else {
                    Mat4::zero()
                };
                out.push(CliffordResidual {
                    mu,
                    nu,
                    residual: &self.gammas[mu].anticommutator(&self.gammas[nu]) - &target,
                });
            }
        }
        out
    }

    /// `(γ⁵)² − I` followed by `{γ⁵, γ^μ}` for `μ = 0..3`.
    pub fn gamma5_residuals(&self) -> [Mat4<R>; 5] {
        [
            &(&self.gamma5 * &self.gamma5) - &Mat4::identity(),
            self.gamma5.anticommutator(&self.gammas[0]),
            self.gamma5.anticommutator(&self.gammas[1]),
            self.gamma5.anticommutator(&self.gammas[2]),
            self.gamma5.anticommutator(&self.gammas[3]),
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.clifford_residuals().iter().all(|c| c.residual.is_negligible())
            && self.gamma5_residuals().iter().all(Mat4::is_negligible)
    }
}

/// A unitary `U = M/√k` with `U γ^μ_from U† = γ^μ_to`.
///
/// Kept as the pair `(M, k)` so conjugation `U A U† = M A M† / k` stays exact
/// even when `√k` is irrational.
#[derive(Clone, Debug, PartialEq)]
pub struct Intertwiner<R> {
    from: RepName,
    to: RepName,
    matrix: Mat4<R>,
    norm_sq: R,
}

impl<R: Real> Intertwiner<R> {
    pub fn from(&self) -> RepName {
        self.from
    }

    pub fn to(&self) -> RepName {
        self.to
    }

    /// The unnormalised matrix `M`.
    pub fn matrix(&self) -> &Mat4<R> {
        &self.matrix
    }

    /// `k` with `M M† = k I`.
    pub fn norm_sq(&self) -> &R {
        &self.norm_sq
    }

    /// `U A U†`
    pub fn conjugate(&self, a: &Mat4<R>) -> Mat4<R> {
        (&(&self.matrix * a) * &self.matrix.dagger()).scale_real(&(R::one() / self.norm_sq.clone()))
    }

    /// `U` itself, when `√k` is representable in the backend.
    pub fn unitary(&self) -> Option<Mat4<R>> {
        self.norm_sq
            .try_sqrt()
            .map(|r| self.matrix.scale_real(&(R::one() / r)))
    }

    /// `U v`, when `√k` is representable in the backend.
    pub fn apply(&self, v: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        let u = self.unitary().ok_or(Error::IrrationalTransport {
            from: self.from,
            to: self.to,
        })?;
        Ok(u.mul_vec(v))
    }

    pub fn inverse(&self) -> Self {
        Self {
            from: self.to,
            to: self.from,
            matrix: self.matrix.dagger(),
            norm_sq: self.norm_sq.clone(),
        }
    }
}

/// The pinned intertwiner between two representations, verified against the
/// given matrices.
pub fn intertwiner<R: Real>(from: &GammaRep<R>, to: &GammaRep<R>) -> Result<Intertwiner<R>> {
    let (m_from, k_from) = pinned_from_spinor::<R>(from.name);
    let (m_to, k_to) = pinned_from_spinor::<R>(to.name);
    let candidate = Intertwiner {
        from: from.name,
        to: to.name,
        matrix: &m_to * &m_from.dagger(),
        norm_sq: k_from * k_to,
    };
    let unitary = (&(&candidate.matrix * &candidate.matrix.dagger())
        - &Mat4::identity().scale_real(&candidate.norm_sq))
        .is_negligible();
    let maps = (0..4).all(|mu| (&candidate.conjugate(&from.gammas[mu]) - &to.gammas[mu]).is_negligible());
    if unitary && maps {
        Ok(candidate)
    } else {
        Err(Error::IntertwinerInvalid {
            from: from.name,
            to: to.name,
        })
    }
}

/// Transports an antilinear `Ψ ↦ C Ψ*` through `U`: `U C Uᵀ`.
pub fn conjugate_antilinear<R: Real>(u: &Intertwiner<R>, c: &Mat4<R>) -> Mat4<R> {
    (&(&u.matrix * c) * &u.matrix.transpose()).scale_real(&(R::one() / u.norm_sq.clone()))
}

impl<R: Real> Default for GammaRep<R> {
    fn default() -> Self {
        Self::build(RepName::Spinor).expect("pinned spinor representation is valid")
    }
}
