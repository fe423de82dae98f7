//! Four-momenta and finite sums of plane waves.
//!
//! A [`PlaneWaveField`] is a list of terms `a · exp(−i s p·x)` with a constant
//! amplitude vector `a`, an on-shell momentum `p` and a frequency sign
//! `s = ±1`. The momentum operator `p̂^μ = i∂^μ` acts on such a term by
//! multiplying the amplitude by `s p^μ`, and complex conjugation flips `s`.
//! Every linear constant-coefficient equation in momentum operators can
//! therefore be evaluated exactly, term by term.

use std::ops::{Add, Neg, Range, Sub};

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{pauli, Mat, Mat2, Mat4};
use crate::error::{Error, Result};
use crate::gamma::{intertwiner, metric_sign, GammaRep, RepName};
use crate::scalar::{complex_to_json, cplx, modulus, real, Real};

/// Sign `s` in `exp(−i s p·x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FreqSign {
    Positive,
    Negative,
}

impl FreqSign {
    pub fn flip(self) -> Self {
        match self {
            FreqSign::Positive => FreqSign::Negative,
            FreqSign::Negative => FreqSign::Positive,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            FreqSign::Positive => 1,
            FreqSign::Negative => -1,
        }
    }
}

/// Contravariant `(p⁰, p¹, p², p³)` together with the mass it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct FourMomentum<R> {
    p: [R; 4],
    mass: R,
}

impl<R: Real> FourMomentum<R> {
    /// Checked constructor: `m ≥ 0`, `p⁰ > 0` and `p·p = m²` (exactly, or
    /// within the float backend's tolerance).
    pub fn new(p: [R; 4], mass: R) -> Result<Self> {
        let k = Self { p, mass };
        if k.mass.is_negative() || !k.p[0].is_positive() || !k.is_on_shell() {
            return Err(Error::OffShell);
        }
        Ok(k)
    }

    /// No shell check. Only for building deliberately off-shell controls.
    pub fn new_unchecked(p: [R; 4], mass: R) -> Self {
        Self { p, mass }
    }

    pub fn from_ints(p: [i64; 4], mass: i64) -> Result<Self> {
        Self::new(p.map(R::from_i64), R::from_i64(mass))
    }

    pub fn components(&self) -> &[R; 4] {
        &self.p
    }

    /// `p^μ`
    pub fn contravariant(&self, mu: usize) -> &R {
        &self.p[mu]
    }

    /// `p_μ = g_{μμ} p^μ`
    pub fn covariant(&self, mu: usize) -> R {
        self.p[mu].clone() * R::from_i64(metric_sign(mu))
    }

    pub fn mass(&self) -> &R {
        &self.mass
    }

    /// Minkowski square `p·p`.
    pub fn square(&self) -> R {
        let [p0, p1, p2, p3] = &self.p;
        p0.clone() * p0.clone() - p1.clone() * p1.clone() - p2.clone() * p2.clone() - p3.clone() * p3.clone()
    }

    /// `p·p − m²`
    pub fn shell_residual(&self) -> R {
        self.square() - self.mass.clone() * self.mass.clone()
    }

    pub fn is_on_shell(&self) -> bool {
        let scale = self.p[0].clone() * self.p[0].clone();
        R::is_negligible(&self.shell_residual(), &scale)
    }

    pub fn to_f64(&self) -> FourMomentum<f64> {
        FourMomentum {
            p: [
                self.p[0].to_f64(),
                self.p[1].to_f64(),
                self.p[2].to_f64(),
                self.p[3].to_f64(),
            ],
            mass: self.mass.to_f64(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p.iter().map(Real::to_json).collect::<Vec<_>>(),
            "mass": self.mass.to_json(),
        })
    }
}

impl<R: Real + Float> FourMomentum<R> {
    /// On-shell momentum with `p⁰ = √(m² + |p|²)`.
    pub fn on_shell(spatial: [R; 3], mass: R) -> Self {
        let [x, y, z] = spatial;
        let p0 = (mass * mass + x * x + y * y + z * z).sqrt();
        Self {
            p: [p0, x, y, z],
            mass,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaveTerm<R> {
    amplitude: Vec<Complex<R>>,
    momentum: FourMomentum<R>,
    sign: FreqSign,
}

impl<R: Real> PlaneWaveTerm<R> {
    pub fn new(amplitude: Vec<Complex<R>>, momentum: FourMomentum<R>, sign: FreqSign) -> Result<Self> {
        if !momentum.is_on_shell() {
            return Err(Error::OffShell);
        }
        Ok(Self::new_unchecked(amplitude, momentum, sign))
    }

    pub fn new_unchecked(amplitude: Vec<Complex<R>>, momentum: FourMomentum<R>, sign: FreqSign) -> Self {
        Self {
            amplitude,
            momentum,
            sign,
        }
    }

    pub fn amplitude(&self) -> &[Complex<R>] {
        &self.amplitude
    }

    pub fn momentum(&self) -> &FourMomentum<R> {
        &self.momentum
    }

    pub fn sign(&self) -> FreqSign {
        self.sign
    }

    /// Eigenvalue `s p^μ` of `p̂^μ` on this term.
    pub fn momentum_eigenvalue(&self, mu: usize) -> R {
        self.momentum.p[mu].clone() * R::from_i64(self.sign.as_i64())
    }

    /// `a† a`
    pub fn norm_sqr(&self) -> R {
        self.amplitude.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Same momentum and frequency, so the two terms add.
    fn same_mode(&self, other: &Self) -> bool {
        self.sign == other.sign && self.momentum == other.momentum
    }

    /// Positive frequency first, then momenta lexicographically.
    fn mode_cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.sign.as_i64().cmp(&self.sign.as_i64()).then_with(|| {
            let (a, b) = (&self.momentum, &other.momentum);
            a.p.iter()
                .chain(std::iter::once(&a.mass))
                .zip(b.p.iter().chain(std::iter::once(&b.mass)))
                .map(|(x, y)| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }

    fn is_zero(&self) -> bool {
        self.amplitude.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "amplitude": self.amplitude.iter().map(complex_to_json).collect::<Vec<_>>(),
            "momentum": self.momentum.to_json(),
            "freq_sign": self.sign.as_i64(),
        })
    }
}

/// A finite plane-wave sum in canonical form: one term per
/// `(momentum, frequency sign)`, no zero-amplitude terms.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaveField<R> {
    terms: Vec<PlaneWaveTerm<R>>,
    rep: RepName,
    components: usize,
}

impl<R: Real> PlaneWaveField<R> {
    pub fn zero(rep: RepName, components: usize) -> Self {
        Self {
            terms: Vec::new(),
            rep,
            components,
        }
    }

    pub fn from_term(term: PlaneWaveTerm<R>, rep: RepName) -> Self {
        let components = term.amplitude.len();
        Self::canonical_from(vec![term], rep, components)
    }

    pub fn from_terms(terms: Vec<PlaneWaveTerm<R>>, rep: RepName, components: usize) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|t| t.amplitude.len() != components) {
            return Err(Error::ComponentMismatch {
                expected: components,
                got: bad.amplitude.len(),
            });
        }
        Ok(Self::canonical_from(terms, rep, components))
    }

    fn canonical_from(terms: Vec<PlaneWaveTerm<R>>, rep: RepName, components: usize) -> Self {
        let mut merged: Vec<PlaneWaveTerm<R>> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.iter_mut().find(|m| m.same_mode(&t)) {
                Some(m) => {
                    for (a, b) in m.amplitude.iter_mut().zip(t.amplitude) {
                        *a = a.clone() + b;
                    }
                }
                None => merged.push(t),
            }
        }
        merged.retain(|t| !t.is_zero());
        merged.sort_by(|a, b| a.mode_cmp(b));
        Self {
            terms: merged,
            rep,
            components,
        }
    }

    /// Re-canonicalised copy; a no-op on any value built through this API.
    pub fn canonical(&self) -> Self {
        Self::canonical_from(self.terms.clone(), self.rep, self.components)
    }

    pub fn terms(&self) -> &[PlaneWaveTerm<R>] {
        &self.terms
    }

    pub fn rep(&self) -> RepName {
        self.rep
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// No terms left.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest amplitude entry modulus over all terms.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .iter()
            .flat_map(|t| t.amplitude.iter())
            .map(modulus)
            .fold(0.0, f64::max)
    }

    /// Zero exactly (exact backend) or below the float tolerance scaled by
    /// `scale`.
    pub fn is_negligible(&self, scale: f64) -> bool {
        match R::BACKEND {
            crate::scalar::Backend::Exact => self.is_zero(),
            crate::scalar::Backend::Float => self.max_abs() <= R::negligible().to_f64() * scale.max(1.0),
        }
    }

    fn map_amplitudes(&self, mut f: impl FnMut(&PlaneWaveTerm<R>) -> Vec<Complex<R>>) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| PlaneWaveTerm {
                amplitude: f(t),
                momentum: t.momentum.clone(),
                sign: t.sign,
            })
            .collect();
        let components = self.terms.first().map_or(self.components, |t| t.amplitude.len());
        Self::canonical_from(terms, self.rep, components)
    }

    /// Applies `f` to every term, replacing momentum and amplitude.
    pub(crate) fn map_terms(
        &self,
        rep: RepName,
        components: usize,
        f: impl Fn(&PlaneWaveTerm<R>) -> PlaneWaveTerm<R>,
    ) -> Self {
        Self::canonical_from(self.terms.iter().map(f).collect(), rep, components)
    }

    /// `p̂^μ f`
    pub fn momentum(&self, mu: usize) -> Self {
        self.map_amplitudes(|t| {
            let e = real(t.momentum_eigenvalue(mu));
            t.amplitude.iter().map(|a| a * &e).collect()
        })
    }

    /// `f*`: conjugated amplitudes, flipped frequency signs.
    pub fn conjugate(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| PlaneWaveTerm {
                amplitude: t.amplitude.iter().map(Complex::conj).collect(),
                momentum: t.momentum.clone(),
                sign: t.sign.flip(),
            })
            .collect();
        Self::canonical_from(terms, self.rep, self.components)
    }

    /// `C f = C_rep f*`, with `C_rep = iγ²` in the spinor representation.
    pub fn charge_conjugate(&self) -> Result<Self> {
        if self.components != 4 {
            return Err(Error::ChargeConjugationNeedsBispinor);
        }
        let rep = GammaRep::<R>::pinned(self.rep);
        self.conjugate().left_mul(rep.charge_conjugation())
    }

    pub fn scale(&self, s: &Complex<R>) -> Self {
        self.map_amplitudes(|t| t.amplitude.iter().map(|a| a * s).collect())
    }

    pub fn scale_real(&self, s: &R) -> Self {
        self.scale(&real(s.clone()))
    }

    /// `M f` for an `N×N` matrix acting on an `N`-component field.
    pub fn left_mul<const N: usize>(&self, m: &Mat<R, N>) -> Result<Self> {
        self.expect_components(N)?;
        Ok(self.map_amplitudes(|t| m.mul_vec(&t.amplitude)))
    }

    /// `O(p̂) f` for an operator linear in the momentum operators.
    pub fn apply<const N: usize>(&self, op: &MomentumOperator<R, N>) -> Result<Self> {
        self.expect_components(N)?;
        Ok(self.map_amplitudes(|t| op.at(t).mul_vec(&t.amplitude)))
    }

    fn expect_components(&self, n: usize) -> Result<()> {
        if self.components == n {
            Ok(())
        } else {
            Err(Error::ComponentMismatch {
                expected: n,
                got: self.components,
            })
        }
    }

    /// One component as a scalar field.
    pub fn component(&self, i: usize) -> Self {
        self.slice(i..i + 1)
    }

    /// Components `range` as a smaller field.
    pub fn slice(&self, range: Range<usize>) -> Self {
        assert!(range.end <= self.components, "slice out of range");
        let n = range.len();
        let terms = self
            .terms
            .iter()
            .map(|t| PlaneWaveTerm {
                amplitude: t.amplitude[range.clone()].to_vec(),
                momentum: t.momentum.clone(),
                sign: t.sign,
            })
            .collect();
        Self::canonical_from(terms, self.rep, n)
    }

    /// Concatenates component lists; all parts must share a representation.
    pub fn stack(parts: &[&Self]) -> Result<Self> {
        let rep = parts.first().map_or(RepName::Spinor, |p| p.rep);
        if let Some(bad) = parts.iter().find(|p| p.rep != rep) {
            return Err(Error::RepMismatch(rep, bad.rep));
        }
        let total: usize = parts.iter().map(|p| p.components).sum();
        let mut terms: Vec<PlaneWaveTerm<R>> = Vec::new();
        let mut offset = 0;
        for part in parts {
            for t in &part.terms {
                let mut amplitude = vec![Complex::zero(); total];
                amplitude[offset..offset + part.components].clone_from_slice(&t.amplitude);
                terms.push(PlaneWaveTerm {
                    amplitude,
                    momentum: t.momentum.clone(),
                    sign: t.sign,
                });
            }
            offset += part.components;
        }
        Ok(Self::canonical_from(terms, rep, total))
    }

    /// Relabels the representation; amplitudes are untouched.
    pub(crate) fn relabel(mut self, rep: RepName) -> Self {
        self.rep = rep;
        self
    }

    /// `U f` for the pinned unitary `U` into `to`.
    ///
    /// Fails in an exact backend when `U` has irrational entries; see
    /// [`PlaneWaveField::transport_scaled`].
    pub fn transport(&self, to: RepName) -> Result<Self> {
        if to == self.rep {
            return Ok(self.clone());
        }
        self.expect_components(4)?;
        let u = intertwiner(&GammaRep::<R>::pinned(self.rep), &GammaRep::<R>::pinned(to))?;
        let unitary = u.unitary().ok_or(Error::IrrationalTransport { from: self.rep, to })?;
        Ok(self.left_mul(&unitary)?.relabel(to))
    }

    /// `√k · U f = M f`: transport by the unnormalised intertwiner matrix.
    ///
    /// Always exact. The result differs from [`PlaneWaveField::transport`]
    /// by a positive real factor, which no linear homogeneous equation and
    /// no self-conjugacy condition can detect.
    pub fn transport_scaled(&self, to: RepName) -> Result<Self> {
        if to == self.rep {
            return Ok(self.clone());
        }
        self.expect_components(4)?;
        let u = intertwiner(&GammaRep::<R>::pinned(self.rep), &GammaRep::<R>::pinned(to))?;
        Ok(self.left_mul(u.matrix())?.relabel(to))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rep": self.rep.as_str(),
            "components": self.components,
            "terms": self.terms.iter().map(PlaneWaveTerm::to_json).collect::<Vec<_>>(),
        })
    }
}

fn combine<R: Real>(a: &PlaneWaveField<R>, b: &PlaneWaveField<R>, negate_b: bool) -> PlaneWaveField<R> {
    assert_eq!(a.components, b.components, "component count mismatch");
    assert_eq!(a.rep, b.rep, "representation mismatch");
    let terms = a
        .terms
        .iter()
        .cloned()
        .chain(b.terms.iter().map(|t| {
            if negate_b {
                PlaneWaveTerm {
                    amplitude: t.amplitude.iter().map(|z| -z.clone()).collect(),
                    momentum: t.momentum.clone(),
                    sign: t.sign,
                }
            } else {
                t.clone()
            }
        }))
        .collect();
    PlaneWaveField::canonical_from(terms, a.rep, a.components)
}

impl<R: Real> Add for &PlaneWaveField<R> {
    type Output = PlaneWaveField<R>;

    /// # Panics
    /// When the operands differ in component count or representation.
    fn add(self, rhs: Self) -> PlaneWaveField<R> {
        combine(self, rhs, false)
    }
}

impl<R: Real> Sub for &PlaneWaveField<R> {
    type Output = PlaneWaveField<R>;

    fn sub(self, rhs: Self) -> PlaneWaveField<R> {
        combine(self, rhs, true)
    }
}

impl<R: Real> Neg for &PlaneWaveField<R> {
    type Output = PlaneWaveField<R>;

    fn neg(self) -> PlaneWaveField<R> {
        self.scale(&-Complex::<R>::one())
    }
}

/// `Σ_μ A_μ p̂^μ + B` acting on `N`-component fields.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumOperator<R, const N: usize> {
    coeffs: [Mat<R, N>; 4],
    constant: Mat<R, N>,
}

impl<R: Real, const N: usize> MomentumOperator<R, N> {
    pub fn new(coeffs: [Mat<R, N>; 4], constant: Mat<R, N>) -> Self {
        Self { coeffs, constant }
    }

    /// Drops every `p̂^μ` with `μ` not in `keep`.
    pub fn restricted(&self, keep: &[usize]) -> Self {
        Self {
            coeffs: std::array::from_fn(|mu| {
                if keep.contains(&mu) {
                    self.coeffs[mu].clone()
                } else {
                    Mat::zero()
                }
            }),
            constant: self.constant.clone(),
        }
    }

    /// The matrix this operator reduces to on one plane-wave term.
    pub fn at(&self, term: &PlaneWaveTerm<R>) -> Mat<R, N> {
        (0..4).fold(self.constant.clone(), |acc, mu| {
            &acc + &self.coeffs[mu].scale_real(&term.momentum_eigenvalue(mu))
        })
    }
}

impl<R: Real> MomentumOperator<R, 4> {
    /// `γ^μ p̂_μ − m`
    pub fn dirac(rep: &GammaRep<R>, mass: &R) -> Self {
        let slashed = Self::slashed(rep);
        Self {
            constant: Mat4::identity().scale_real(&-mass.clone()),
            ..slashed
        }
    }

    /// `γ^μ p̂_μ`
    pub fn slashed(rep: &GammaRep<R>) -> Self {
        Self {
            coeffs: std::array::from_fn(|mu| rep.gamma(mu).scale_real(&R::from_i64(metric_sign(mu)))),
            constant: Mat4::zero(),
        }
    }

    /// `M O(p̂) N` for constant matrices `M`, `N`.
    pub fn sandwiched(&self, left: &Mat4<R>, right: &Mat4<R>) -> Self {
        Self {
            coeffs: std::array::from_fn(|mu| &(left * &self.coeffs[mu]) * right),
            constant: &(left * &self.constant) * right,
        }
    }
}

impl<R: Real> MomentumOperator<R, 2> {
    /// `p̂⁰ + σ·p̂`
    pub fn sigma_plus() -> Self {
        let [s1, s2, s3] = pauli();
        Self {
            coeffs: [Mat2::identity(), s1, s2, s3],
            constant: Mat2::zero(),
        }
    }

    /// `p̂⁰ − σ·p̂`
    pub fn sigma_minus() -> Self {
        let [s1, s2, s3] = pauli();
        Self {
            coeffs: [Mat2::identity(), -s1, -s2, -s3],
            constant: Mat2::zero(),
        }
    }
}

/// `(γ^μ p̂_μ − m) f`
pub fn dirac_residual<R: Real>(f: &PlaneWaveField<R>, mass: &R) -> Result<PlaneWaveField<R>> {
    f.apply(&MomentumOperator::dirac(&GammaRep::pinned(f.rep()), mass))
}

/// Rest-frame spin basis: eigenvectors of `σ³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    fn basis<R: Real>(self) -> [Complex<R>; 2] {
        match self {
            Spin::Up => [Complex::one(), Complex::zero()],
            Spin::Down => [Complex::zero(), Complex::one()],
        }
    }
}

impl TryFrom<u8> for Spin {
    type Error = Error;

    fn try_from(label: u8) -> Result<Self> {
        match label {
            1 => Ok(Spin::Up),
            2 => Ok(Spin::Down),
            other => Err(Error::IndexOutOfRange(other as usize)),
        }
    }
}

/// Which two-component equation a massless solution satisfies:
/// `Left` has `(p⁰ + σ·p)η = 0`, lives in the lower components and is
/// selected by `Q₊`; `Right` has `(p⁰ − σ·p)ξ = 0`, upper components, `Q₋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    Left,
    Right,
}

/// Rescales to `a†a = 2p⁰` when the factor is representable in the backend.
fn normalize<R: Real>(amplitude: Vec<Complex<R>>, p0: &R) -> Vec<Complex<R>> {
    let norm: R = amplitude.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr());
    let factor = (R::from_i64(2) * p0.clone() / norm).try_sqrt();
    match factor {
        Some(f) => amplitude.into_iter().map(|z| z * real(f.clone())).collect(),
        None => amplitude,
    }
}

/// Lifts a spinor-representation amplitude into `rep` by the unnormalised
/// pinned intertwiner.
fn from_spinor_rep<R: Real>(rep: &GammaRep<R>, amplitude: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
    if rep.name() == RepName::Spinor {
        return Ok(amplitude.to_vec());
    }
    let u = intertwiner(&GammaRep::pinned(RepName::Spinor), rep)?;
    Ok(u.matrix().mul_vec(amplitude))
}

/// Positive-frequency solution of `(γ^μ p_μ − m)u = 0`.
///
/// Built as `(γ·p + m)χ` with `χ = (ζ, ζ)` the rest-frame spinor for the
/// `σ³` eigenvector `ζ`, then normalised to `u†u = 2p⁰` when the required
/// square root exists in the backend (always for floats; in the exact
/// backend only when it is rational, otherwise the unnormalised solution is
/// returned).
pub fn u_spinor<R: Real>(p: &FourMomentum<R>, rep: &GammaRep<R>, spin: Spin) -> Result<PlaneWaveTerm<R>> {
    if p.mass.is_zero() {
        return Err(Error::MasslessNeedsWeyl);
    }
    if p.mass.is_negative() || !p.p[0].is_positive() || !p.is_on_shell() {
        return Err(Error::OffShell);
    }
    u_spinor_unchecked(p, rep, spin)
}

/// [`u_spinor`] without the mass and shell checks; for negative controls.
pub fn u_spinor_unchecked<R: Real>(p: &FourMomentum<R>, rep: &GammaRep<R>, spin: Spin) -> Result<PlaneWaveTerm<R>> {
    let [a, b] = spin.basis::<R>();
    let rest = from_spinor_rep(rep, &[a.clone(), b.clone(), a, b])?;
    let op = &rep.slash(&p.p) + &Mat4::identity().scale_real(&p.mass);
    let amplitude = normalize(op.mul_vec(&rest), &p.p[0]);
    Ok(PlaneWaveTerm::new_unchecked(amplitude, p.clone(), FreqSign::Positive))
}

/// Massless positive-frequency solution of one chirality.
pub fn weyl_spinor<R: Real>(
    p: &FourMomentum<R>,
    rep: &GammaRep<R>,
    chirality: Chirality,
) -> Result<PlaneWaveTerm<R>> {
    if !p.mass.is_zero() {
        return Err(Error::WeylRequiresMassless);
    }
    if !p.p[0].is_positive() || !p.is_on_shell() {
        return Err(Error::OffShell);
    }
    let [p0, p1, p2, p3] = p.p.clone().map(real);
    let i = cplx::<R>(0, 1);
    let forward = !p.p[3].is_negative();
    let zero = Complex::zero();
    // a nonvanishing column of (p⁰ ∓ σ·p), which (p⁰ ± σ·p) annihilates
    let spinor_amp = match (chirality, forward) {
        (Chirality::Left, true) => vec![zero.clone(), zero, -p1 + &i * p2, p0 + p3],
        (Chirality::Left, false) => vec![zero.clone(), zero, p0 - p3, -p1 - &i * p2],
        (Chirality::Right, true) => vec![p0 + p3, p1 + &i * p2, zero.clone(), zero],
        (Chirality::Right, false) => vec![p1 - &i * p2, p0 - p3, zero.clone(), zero],
    };
    let amplitude = normalize(from_spinor_rep(rep, &spinor_amp)?, &p.p[0]);
    Ok(PlaneWaveTerm::new_unchecked(amplitude, p.clone(), FreqSign::Positive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn witness() -> FourMomentum<Q> {
        FourMomentum::from_ints([3, 2, 2, 0], 1).unwrap()
    }

    fn spinor() -> GammaRep<Q> {
        GammaRep::build(RepName::Spinor).unwrap()
    }

    #[test]
    fn on_shell_checks() {
        assert!(FourMomentum::<Q>::from_ints([3, 2, 2, 1], 1).is_err());
        assert!(FourMomentum::<Q>::from_ints([-3, 2, 2, 0], 1).is_err());
        assert!(FourMomentum::<Q>::from_ints([1, 0, 0, 1], 0).is_ok());
        let f = FourMomentum::<f64>::on_shell([1.5, -2.0, 0.25], 0.7);
        assert!(f.is_on_shell());
        assert!((f.square() - 0.49).abs() < 1e-14);
    }

    #[test]
    fn momentum_op_eigen_action() {
        let u = u_spinor(&witness(), &spinor(), Spin::Up).unwrap();
        let f = PlaneWaveField::from_term(u.clone(), RepName::Spinor);
        let p0f = f.momentum(0);
        assert_eq!(p0f, f.scale_real(&Q::from_i64(3)));
        let c = f.conjugate();
        assert_eq!(c.momentum(0), c.scale_real(&Q::from_i64(-3)));
    }

    #[test]
    fn mass_shell_on_single_term() {
        let rep = GammaRep::<Q>::build(RepName::Standard).unwrap();
        let f = PlaneWaveField::from_term(u_spinor(&witness(), &rep, Spin::Down).unwrap(), RepName::Standard);
        let pp = &(&f.momentum(0).momentum(0) - &f.momentum(1).momentum(1))
            - &(&f.momentum(2).momentum(2) + &f.momentum(3).momentum(3));
        assert_eq!(pp, f);
    }

    #[test]
    fn conjugate_is_involution_and_flips_momentum_sign() {
        let f = PlaneWaveField::from_term(u_spinor(&witness(), &spinor(), Spin::Up).unwrap(), RepName::Spinor);
        assert_eq!(f.conjugate().conjugate(), f);
        for mu in 0..4 {
            assert_eq!(f.conjugate().momentum(mu), -&f.momentum(mu).conjugate());
        }
        let real_term = PlaneWaveTerm::new(vec![cplx(1, 0), cplx(2, 0)], witness(), FreqSign::Positive).unwrap();
        let c = PlaneWaveField::from_term(real_term, RepName::Spinor).conjugate();
        assert_eq!(c.terms()[0].amplitude(), &[cplx(1, 0), cplx(2, 0)]);
        assert_eq!(c.terms()[0].sign(), FreqSign::Negative);
    }

    #[test]
    fn canonical_form_merges_and_drops() {
        let a = PlaneWaveTerm::new(vec![cplx::<Q>(1, 0), cplx(0, 0)], witness(), FreqSign::Positive).unwrap();
        let b = PlaneWaveTerm::new(vec![cplx::<Q>(-1, 0), cplx(0, 0)], witness(), FreqSign::Positive).unwrap();
        let c = PlaneWaveTerm::new(vec![cplx::<Q>(0, 1), cplx(2, 0)], witness(), FreqSign::Negative).unwrap();
        let f = PlaneWaveField::from_terms(vec![a, b, c.clone()], RepName::Spinor, 2).unwrap();
        assert_eq!(f.terms(), &[c]);
        assert_eq!(f.canonical(), f);
    }

    #[test]
    fn rest_frame_u_has_equal_halves() {
        let p = FourMomentum::<Q>::from_ints([1, 0, 0, 0], 1).unwrap();
        for spin in Spin::BOTH {
            let u = u_spinor(&p, &spinor(), spin).unwrap();
            let a = u.amplitude();
            assert_eq!(a[0], a[2]);
            assert_eq!(a[1], a[3]);
            // 2p⁰/(w†w) = 1/4 is a square: normalised exactly
            assert_eq!(u.norm_sqr(), Q::from_i64(2));
        }
    }

    #[test]
    fn witness_u_is_exact_solution() {
        for name in RepName::ALL {
            let rep = GammaRep::<Q>::build(name).unwrap();
            for spin in Spin::BOTH {
                let f = PlaneWaveField::from_term(u_spinor(&witness(), &rep, spin).unwrap(), name);
                assert!(dirac_residual(&f, &Q::from_i64(1)).unwrap().is_zero(), "{name} {spin:?}");
            }
        }
    }

    #[test]
    fn spin_labels_are_orthogonal() {
        let p = FourMomentum::<f64>::on_shell([0.3, -1.2, 2.5], 0.8);
        let rep = GammaRep::<f64>::build(RepName::Spinor).unwrap();
        let u1 = u_spinor(&p, &rep, Spin::Up).unwrap();
        let u2 = u_spinor(&p, &rep, Spin::Down).unwrap();
        let overlap = u1
            .amplitude()
            .iter()
            .zip(u2.amplitude())
            .fold(Complex::<f64>::zero(), |acc, (a, b)| acc + a.conj() * b);
        assert!(overlap.norm() < 1e-13);
        assert!((u1.norm_sqr() - 2.0 * p.components()[0]).abs() < 1e-12);
    }

    #[test]
    fn u_spinor_errors() {
        let rep = spinor();
        let massless = FourMomentum::<Q>::from_ints([1, 0, 0, 1], 0).unwrap();
        assert_eq!(u_spinor(&massless, &rep, Spin::Up), Err(Error::MasslessNeedsWeyl));
        let off = FourMomentum::<Q>::new_unchecked([3, 2, 2, 1].map(Q::from_i64), Q::from_i64(1));
        assert_eq!(u_spinor(&off, &rep, Spin::Up), Err(Error::OffShell));
        assert_eq!(Spin::try_from(3), Err(Error::IndexOutOfRange(3)));
    }

    #[test]
    fn weyl_spinor_along_z() {
        let p = FourMomentum::<Q>::from_ints([1, 0, 0, 1], 0).unwrap();
        let rep = spinor();
        let left = weyl_spinor(&p, &rep, Chirality::Left).unwrap();
        let a = left.amplitude();
        assert!(a[0].is_zero() && a[1].is_zero() && a[2].is_zero() && !a[3].is_zero());
        let right = weyl_spinor(&p, &rep, Chirality::Right).unwrap();
        let a = right.amplitude();
        assert!(!a[0].is_zero() && a[1].is_zero() && a[2].is_zero() && a[3].is_zero());
        assert_eq!(
            weyl_spinor(&witness(), &rep, Chirality::Left),
            Err(Error::WeylRequiresMassless)
        );
    }

    #[test]
    fn charge_conjugation_requires_bispinor() {
        let t = PlaneWaveTerm::new(vec![cplx::<Q>(1, 0), cplx(0, 0)], witness(), FreqSign::Positive).unwrap();
        let f = PlaneWaveField::from_term(t, RepName::Spinor);
        assert_eq!(f.charge_conjugate(), Err(Error::ChargeConjugationNeedsBispinor));
    }

    #[test]
    fn charge_conjugation_spinor_block_pattern() {
        let u = u_spinor(&witness(), &spinor(), Spin::Up).unwrap();
        let f = PlaneWaveField::from_term(u.clone(), RepName::Spinor);
        let c = f.charge_conjugate().unwrap();
        let [_, s2, _] = pauli::<Q>();
        let a = u.amplitude();
        let xi_star = [a[0].conj(), a[1].conj()];
        let eta_star = [a[2].conj(), a[3].conj()];
        let top = s2.scale(&cplx(0, -1)).mul_vec(&eta_star);
        let bottom = s2.scale(&cplx(0, 1)).mul_vec(&xi_star);
        let ct = &c.terms()[0];
        assert_eq!(ct.sign(), FreqSign::Negative);
        assert_eq!(&ct.amplitude()[..2], &top[..]);
        assert_eq!(&ct.amplitude()[2..], &bottom[..]);
        assert_eq!(c.charge_conjugate().unwrap(), f);
    }

    #[test]
    fn stack_and_slice_are_inverse() {
        let f = PlaneWaveField::from_term(u_spinor(&witness(), &spinor(), Spin::Down).unwrap(), RepName::Spinor);
        let parts: Vec<_> = (0..4).map(|i| f.component(i)).collect();
        let refs: Vec<_> = parts.iter().collect();
        assert_eq!(PlaneWaveField::stack(&refs).unwrap(), f);
        assert_eq!(
            PlaneWaveField::stack(&[&f.slice(0..2), &f.slice(2..4)]).unwrap(),
            f
        );
    }

    #[test]
    fn transport_between_reps() {
        let f = PlaneWaveField::from_term(u_spinor(&witness(), &spinor(), Spin::Up).unwrap(), RepName::Spinor);
        assert!(matches!(
            f.transport(RepName::Standard),
            Err(Error::IrrationalTransport { .. })
        ));
        let g = f.transport_scaled(RepName::Standard).unwrap();
        assert!(dirac_residual(&g, &Q::from_i64(1)).unwrap().is_zero());
        let m = f.transport(RepName::Majorana).unwrap();
        assert!(dirac_residual(&m, &Q::from_i64(1)).unwrap().is_zero());
        assert_eq!(m.transport(RepName::Spinor).unwrap(), f);
    }

    #[test]
    fn json_shape() {
        let f = PlaneWaveField::from_term(u_spinor(&witness(), &spinor(), Spin::Up).unwrap(), RepName::Spinor);
        let v = f.to_json();
        assert_eq!(v["rep"], "spinor");
        assert_eq!(v["terms"][0]["momentum"]["p"][0], "3");
        assert_eq!(v["terms"][0]["freq_sign"], 1);
        assert_eq!(v["terms"][0]["amplitude"].as_array().unwrap().len(), 4);
    }
}
