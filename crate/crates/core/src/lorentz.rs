//! Lorentz transforms of vectors and bispinors, the covariance condition
//! `S γ^μ S⁻¹ a^ν_μ = γ^ν`, and the special frame in which the two projected
//! systems only involve `p⁰` and `p¹`.
//!
//! Sign conventions: `I^{0k} = +1` for boosts, `I^{12} = I^{23} = I^{31} = −1`
//! for rotations, `I^{νμ} = −I^{μν}`. One ordered plane `(μ, ν)` gives
//! `S = exp(−(i/2) ω I^{μν} σ_{μν})` and `a = exp(ω G)` with
//! `G^α_β = I^{αρ} g_{ρβ}`.

use num_complex::Complex;
use num_traits::Float;

use crate::algebra::{Mat4, EXP_SERIES_TOLERANCE};
use crate::error::{Error, Result};
use crate::field::{FourMomentum, MomentumOperator, PlaneWaveField, PlaneWaveTerm};
use crate::gamma::{metric_sign, GammaRep, RepName};
use crate::projector::ProjectorSet;
use crate::residual::{EquationId, ResidualReport};
use crate::scalar::Real;
use crate::subsolution::SplitResult;

/// Agreement required between the series exponential and the closed form,
/// relative to the size of the result.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Boost,
    Rotation,
}

/// One-parameter transform in a single ordered coordinate plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzParams<R> {
    plane: (usize, usize),
    omega: R,
}

impl<R: Real + Float> LorentzParams<R> {
    pub fn new(mu: usize, nu: usize, omega: R) -> Result<Self> {
        if mu == nu || mu > 3 || nu > 3 {
            return Err(Error::InvalidPlane(mu, nu));
        }
        Ok(Self {
            plane: (mu, nu),
            omega,
        })
    }

    /// Boost along axis `k` with rapidity `omega`.
    pub fn boost(k: usize, omega: R) -> Result<Self> {
        Self::new(0, k, omega)
    }

    /// Rotation in the `(i, j)` plane by `omega` radians.
    pub fn rotation(i: usize, j: usize, omega: R) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::InvalidPlane(i, j));
        }
        Self::new(i, j, omega)
    }

    pub fn plane(&self) -> (usize, usize) {
        self.plane
    }

    pub fn omega(&self) -> R {
        self.omega
    }

    pub fn kind(&self) -> TransformKind {
        if self.plane.0 == 0 || self.plane.1 == 0 {
            TransformKind::Boost
        } else {
            TransformKind::Rotation
        }
    }

    /// `I^{μν}` for this ordered plane.
    pub fn generator_value(&self) -> i64 {
        let (mu, nu) = self.plane;
        let (lo, hi, flip) = if mu < nu { (mu, nu, 1) } else { (nu, mu, -1) };
        let base = match (lo, hi) {
            (0, _) => 1,
            (1, 3) => 1,
            _ => -1,
        };
        base * flip
    }

    /// Same plane and parameter with the opposite sign.
    pub fn inverse(&self) -> Self {
        Self {
            plane: self.plane,
            omega: -self.omega,
        }
    }
}

/// `a^ν_μ` as a real 4×4 matrix, with the residual of `aᵀ g a = g`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorTransform<R> {
    a: [[R; 4]; 4],
    metric_residual: f64,
}

impl<R: Real + Float> VectorTransform<R> {
    pub fn from_matrix(a: [[R; 4]; 4]) -> Self {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let mut s = R::zero();
                for k in 0..4 {
                    s = s + a[k][i] * R::from_i64(metric_sign(k)) * a[k][j];
                }
                let target = if i == j { R::from_i64(metric_sign(i)) } else { R::zero() };
                worst = worst.max(Real::to_f64(&(s - target)).abs());
            }
        }
        Self {
            a,
            metric_residual: worst,
        }
    }

    pub fn identity() -> Self {
        Self::from_matrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { R::one() } else { R::zero() })
        }))
    }

    pub fn matrix(&self) -> &[[R; 4]; 4] {
        &self.a
    }

    pub fn entry(&self, nu: usize, mu: usize) -> R {
        self.a[nu][mu]
    }

    /// Largest entry of `aᵀ g a − g`.
    pub fn metric_residual(&self) -> f64 {
        self.metric_residual
    }

    /// `p′^ν = a^ν_μ p^μ`
    pub fn apply(&self, p: &[R; 4]) -> [R; 4] {
        std::array::from_fn(|nu| (0..4).fold(R::zero(), |acc, mu| acc + self.a[nu][mu] * p[mu]))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_matrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).fold(R::zero(), |acc, k| acc + self.a[i][k] * other.a[k][j]))
        }))
    }
}

/// `a = exp(ωG)`, evaluated in closed form (`G` squares to `±1` on the plane).
pub fn vector_transform<R: Real + Float>(params: &LorentzParams<R>) -> VectorTransform<R> {
    let (mu, nu) = params.plane;
    let i = R::from_i64(params.generator_value());
    let w = params.omega;
    // G^μ_ν = I^{μν} g_νν, G^ν_μ = −I^{μν} g_μμ
    let g_mn = i * R::from_i64(metric_sign(nu));
    let g_nm = -i * R::from_i64(metric_sign(mu));
    let (c, s) = match params.kind() {
        TransformKind::Boost => (w.cosh(), w.sinh()),
        TransformKind::Rotation => (w.cos(), w.sin()),
    };
    let mut a: [[R; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|k| if r == k { R::one() } else { R::zero() }));
    a[mu][mu] = c;
    a[nu][nu] = c;
    a[mu][nu] = s * g_mn;
    a[nu][mu] = s * g_nm;
    VectorTransform::from_matrix(a)
}

/// A bispinor transform together with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorTransform<R> {
    s: Mat4<R>,
    s_inv: Mat4<R>,
}

impl<R: Real + Float> SpinorTransform<R> {
    pub fn new(s: Mat4<R>, s_inv: Mat4<R>) -> Self {
        Self { s, s_inv }
    }

    pub fn identity() -> Self {
        Self::new(Mat4::identity(), Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4<R> {
        &self.s
    }

    pub fn inverse(&self) -> &Mat4<R> {
        &self.s_inv
    }

    /// `self · other`
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(&self.s * &other.s, &other.s_inv * &self.s_inv)
    }

    /// `S M S⁻¹`
    pub fn conjugate(&self, m: &Mat4<R>) -> Mat4<R> {
        &(&self.s * m) * &self.s_inv
    }
}

/// `X = −(i/2) ω I^{μν} σ_{μν}`, so that `S = exp(X)`.
pub fn spinor_generator<R: Real + Float>(params: &LorentzParams<R>, rep: &GammaRep<R>) -> Mat4<R> {
    let (mu, nu) = params.plane;
    let coeff = Complex::new(R::zero(), -params.omega * R::from_i64(params.generator_value()) / R::from_i64(2));
    rep.sigma(mu, nu).scale(&coeff)
}

/// `exp(X)` from `X² = λ I`: `cosh`/`sinh` for `λ > 0`, `cos`/`sin` for
/// `λ < 0`, `I + X` for `λ = 0`.
pub fn closed_form_exp<R: Real + Float>(x: &Mat4<R>) -> Result<Mat4<R>> {
    let sq = x * x;
    let lambda = sq.get(0, 0).re;
    let scalar = Mat4::identity().scale_real(&lambda);
    let off = (&sq - &scalar).max_abs();
    if off > CLOSED_FORM_TOLERANCE * Real::to_f64(&lambda).abs().max(1.0) {
        return Err(Error::ExpCrossCheck(off));
    }
    let id = Mat4::<R>::identity();
    let (c, s_over) = if lambda > R::zero() {
        let r = lambda.sqrt();
        (r.cosh(), r.sinh() / r)
    } else if lambda < R::zero() {
        let r = (-lambda).sqrt();
        (r.cos(), r.sin() / r)
    } else {
        (R::one(), R::one())
    };
    Ok(&id.scale_real(&c) + &x.scale_real(&s_over))
}

/// `S = exp(−(i/2) ω I^{μν} σ_{μν})` by the series exponential, checked
/// against the closed form.
pub fn spinor_transform<R: Real + Float>(params: &LorentzParams<R>, rep: &GammaRep<R>) -> Result<SpinorTransform<R>> {
    let tol = <R as num_traits::NumCast>::from(EXP_SERIES_TOLERANCE).expect("representable tolerance");
    let x = spinor_generator(params, rep);
    let s = x.exp(tol)?;
    let s_inv = (-&x).exp(tol)?;
    for (series, neg) in [(&s, false), (&s_inv, true)] {
        let closed = closed_form_exp(&if neg { -&x } else { x.clone() })?;
        let gap = (series - &closed).max_abs();
        let size = closed.max_abs().max(1.0);
        if !(gap <= CLOSED_FORM_TOLERANCE * size) {
            return Err(Error::ExpCrossCheck(gap));
        }
    }
    Ok(SpinorTransform::new(s, s_inv))
}

/// `Σ_μ S γ^μ S⁻¹ a^ν_μ − γ^ν` for each `ν`, and idempotence of the
/// conjugated projectors `S P_k S⁻¹`.
pub fn covariance_residuals<R: Real + Float>(
    s: &SpinorTransform<R>,
    a: &VectorTransform<R>,
    rep: &GammaRep<R>,
) -> ResidualReport {
    let mut r = ResidualReport::for_backend::<R>();
    let conj: [Mat4<R>; 4] = std::array::from_fn(|mu| s.conjugate(rep.gamma(mu)));
    for nu in 0..4 {
        let lhs = (0..4).fold(Mat4::zero(), |acc, mu| &acc + &conj[mu].scale_real(&a.entry(nu, mu)));
        r.push_matrix(EquationId::CovarianceCondition, format!("nu={nu}"), &(&lhs - rep.gamma(nu)));
    }
    let proj = ProjectorSet::<R>::pinned(rep.name());
    for (i, p) in proj.all_p().iter().enumerate() {
        let pc = s.conjugate(p);
        r.push_matrix(
            EquationId::ConjugatedProjectorIdempotent,
            format!("P{}'", i + 1),
            &(&(&pc * &pc) - &pc),
        );
    }
    r
}

/// [`covariance_residuals`] for the `S` and `a` of one parameter set.
pub fn covariance_check<R: Real + Float>(params: &LorentzParams<R>, rep: &GammaRep<R>) -> Result<ResidualReport> {
    let s = spinor_transform(params, rep)?;
    let mut r = covariance_residuals(&s, &vector_transform(params), rep);
    r.push_value(
        EquationId::MetricPreservation,
        format!("{:?}", params.plane),
        vector_transform(params).metric_residual(),
    );
    Ok(r)
}

/// `Ψ′ = S Ψ` with every momentum mapped by `a`.
pub fn transform_field<R: Real + Float>(
    f: &PlaneWaveField<R>,
    s: &SpinorTransform<R>,
    a: &VectorTransform<R>,
) -> Result<PlaneWaveField<R>> {
    if f.components() != 4 {
        return Err(Error::ComponentMismatch {
            expected: 4,
            got: f.components(),
        });
    }
    Ok(f.map_terms(f.rep(), 4, |t| {
        let p = a.apply(t.momentum().components());
        PlaneWaveTerm::new_unchecked(
            s.matrix().mul_vec(t.amplitude()),
            FourMomentum::new_unchecked(p, *t.momentum().mass()),
            t.sign(),
        )
    }))
}

/// `(γ^μ p̂′_μ − m) SΨ` for a Dirac solution `Ψ` in `rep`.
pub fn transformed_dirac_residuals<R: Real + Float>(
    psi: &PlaneWaveField<R>,
    m: R,
    params: &LorentzParams<R>,
) -> Result<ResidualReport> {
    let rep = GammaRep::<R>::pinned(psi.rep());
    let s = spinor_transform(params, &rep)?;
    let moved = transform_field(psi, &s, &vector_transform(params))?;
    let mut r = ResidualReport::for_backend::<R>();
    r.push_field(
        EquationId::TransformedDirac,
        format!("{}: {:?} w={}", rep.name(), params.plane, Real::to_f64(&params.omega)),
        &moved.apply(&MomentumOperator::dirac(&rep, &m))?,
    );
    Ok(r)
}

/// `(γ^μ p̂′_μ − m) P′_k Ψ′₍ₖ₎` with `P′_k = S P_k S⁻¹` and `Ψ′₍ₖ₎ = S Ψ₍ₖ₎`.
pub fn transformed_projected_residuals<R: Real + Float>(
    sr: &SplitResult<R>,
    params: &LorentzParams<R>,
) -> Result<ResidualReport> {
    let rep = GammaRep::<R>::pinned(RepName::Spinor);
    let proj = ProjectorSet::<R>::pinned(RepName::Spinor);
    let s = spinor_transform(params, &rep)?;
    let a = vector_transform(params);
    let dirac = MomentumOperator::dirac(&rep, sr.mass());
    let mut r = ResidualReport::for_backend::<R>();
    for (k, psi_k) in [(1, sr.psi1()), (2, sr.psi2())] {
        let pk = s.conjugate(proj.p(k)?);
        let moved = transform_field(psi_k, &s, &a)?;
        r.push_field(
            EquationId::TransformedProjected,
            format!("k={k} {:?} w={}", params.plane, Real::to_f64(&params.omega)),
            &moved.left_mul(&pk)?.apply(&dirac)?,
        );
    }
    Ok(r)
}

/// Exact `[σ₀₃, P_k]` and `[σ₁₂, P_k]`, `k = 1, 2`. Works in any backend.
pub fn generator_commutators<R: Real>(rep: &GammaRep<R>) -> ResidualReport {
    let proj = ProjectorSet::<R>::pinned(rep.name());
    let mut r = ResidualReport::for_backend::<R>();
    for (mu, nu) in [(0, 3), (1, 2)] {
        let sigma = rep.sigma(mu, nu);
        for k in 1..=2 {
            r.push_matrix(
                EquationId::GeneratorCommutator,
                format!("{}: [s{mu}{nu}, P{k}]", rep.name()),
                &sigma.commutator(proj.p(k).expect("k in 1..=2")),
            );
        }
    }
    r
}

/// `[S(ω), P_k]`, `k = 1, 2`, for one transform.
pub fn projector_commutators<R: Real + Float>(params: &LorentzParams<R>, rep: &GammaRep<R>) -> Result<ResidualReport> {
    let proj = ProjectorSet::<R>::pinned(rep.name());
    let s = spinor_transform(params, rep)?;
    let mut r = ResidualReport::for_backend::<R>();
    for k in 1..=2 {
        r.push_matrix(
            EquationId::TransformCommutator,
            format!("{}: [S{:?}({}), P{k}]", rep.name(), params.plane, Real::to_f64(&params.omega)),
            &s.matrix().commutator(proj.p(k)?),
        );
    }
    Ok(r)
}

/// `[S₀₃(ω), P_k]` and `[S₁₂(ω), P_k]` over `grid`, plus the exact generator
/// commutators.
pub fn pi_commutation_check<R: Real + Float>(rep: &GammaRep<R>, grid: &[R]) -> Result<ResidualReport> {
    let mut r = generator_commutators(rep);
    for &w in grid {
        r.extend(projector_commutators(&LorentzParams::boost(3, w)?, rep)?);
        r.extend(projector_commutators(&LorentzParams::rotation(1, 2, w)?, rep)?);
    }
    Ok(r)
}

/// Rotation in `(1,2)` zeroing `p²`, then boost in `(0,3)` zeroing `p³`.
pub fn special_frame<R: Real + Float>(p: &FourMomentum<R>) -> Result<(LorentzParams<R>, LorentzParams<R>)> {
    let m = *p.mass();
    if m.is_zero() {
        return Err(Error::SpecialFrameRequiresMass);
    }
    let [p0, p1, p2, p3] = *p.components();
    assert!(p0 > p3.abs(), "on-shell massive momentum has p0 > |p3|");
    let angle = if p1.is_zero() && p2.is_zero() { R::zero() } else { p2.atan2(p1) };
    // p0² − p3² = m² + p1² + p2²; take the non-cancelling factor directly
    let transverse = m * m + p1 * p1 + p2 * p2;
    let (plus, minus) = if p3 >= R::zero() {
        (p0 + p3, transverse / (p0 + p3))
    } else {
        (transverse / (p0 - p3), p0 - p3)
    };
    let rapidity = (plus / minus).ln() / R::from_i64(2);
    Ok((LorentzParams::rotation(1, 2, angle)?, LorentzParams::boost(3, rapidity)?))
}

/// Combined `S` and `a` of [`special_frame`] for a single momentum.
pub fn special_frame_transform<R: Real + Float>(
    p: &FourMomentum<R>,
    rep: &GammaRep<R>,
) -> Result<(SpinorTransform<R>, VectorTransform<R>)> {
    let (rot, boost) = special_frame(p)?;
    let s = spinor_transform(&boost, rep)?.compose(&spinor_transform(&rot, rep)?);
    let a = vector_transform(&boost).compose(&vector_transform(&rot));
    Ok((s, a))
}

/// `γ⁰p̂⁰ − γ¹p̂¹ − m`
fn reduced_operator<R: Real>(rep: &GammaRep<R>, m: &R) -> MomentumOperator<R, 4> {
    MomentumOperator::dirac(rep, m).restricted(&[0, 1])
}

/// Moves a single-momentum split into its special frame and checks the
/// reduced equations and the `V` symmetry between them.
///
/// Every term of the split must share one momentum up to frequency sign.
pub fn special_frame_residuals<R: Real + Float>(sr: &SplitResult<R>) -> Result<ResidualReport> {
    let rep = GammaRep::<R>::pinned(RepName::Spinor);
    let proj = ProjectorSet::<R>::pinned(RepName::Spinor);
    let p = sr
        .original()
        .terms()
        .first()
        .map(|t| t.momentum().clone())
        .ok_or(Error::OffShell)?;
    let (s, a) = special_frame_transform(&p, &rep)?;
    let mut r = ResidualReport::for_backend::<R>();

    let moved = a.apply(p.components());
    let tiny = moved[2].abs().max(moved[3].abs());
    r.push_value(EquationId::SpecialFrameMomentum, "max(|p2'|, |p3'|)", Real::to_f64(&tiny));
    let m = *p.mass();
    let m_after = (moved[0] * moved[0] - moved[1] * moved[1] - moved[2] * moved[2] - moved[3] * moved[3]).sqrt();
    r.push_value(EquationId::SpecialFrameMass, "|m' - m|", Real::to_f64(&(m_after - m)).abs());

    let op = reduced_operator(&rep, &m);
    let v = proj.v();
    let v_inv = v.dagger();
    let mut frames = Vec::new();
    for (k, psi_k, id) in [
        (1, sr.psi1(), EquationId::SpecialFrame1),
        (2, sr.psi2(), EquationId::SpecialFrame2),
    ] {
        let moved = transform_field(psi_k, &s, &a)?;
        let projected = moved.left_mul(proj.p(k)?)?;
        r.push_field(id, format!("(g0 p0 - g1 p1 - m) P{k} psi({k})'"), &projected.apply(&op)?);
        frames.push(projected);
    }

    // V maps each reduced equation onto the other, term by term
    for (i, t) in frames[0].terms().iter().enumerate() {
        let at = op.at(t);
        r.push_matrix(
            EquationId::SwapSpecialFrameOperator,
            format!("term {i}: V D V^-1 - D"),
            &(&(&(v * &at) * &v_inv) - &at),
        );
    }
    r.push_matrix(
        EquationId::SwapSpecialFrameOperator,
        "V P1 V^-1 - P2",
        &(&(&(v * proj.p1()) * &v_inv) - proj.p2()),
    );
    for (from, to) in [(0usize, 2usize), (1, 1)] {
        let swapped = frames[from].left_mul(v)?;
        let target = proj.p(to)?;
        r.push_field(
            EquationId::SwapSpecialFrameField,
            format!("(g0 p0 - g1 p1 - m) P{to} V P{} psi({})'", from + 1, from + 1),
            &swapped.left_mul(target)?.apply(&op)?,
        );
    }
    Ok(r)
}

/// `S(−ω)` paired with `a(+ω)`: a wrong-sign generator convention.
pub fn flipped_generator_residuals<R: Real + Float>(
    params: &LorentzParams<R>,
    rep: &GammaRep<R>,
) -> Result<ResidualReport> {
    let s = spinor_transform(&params.inverse(), rep)?;
    Ok(covariance_residuals(&s, &vector_transform(params), rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{u_spinor, Spin};
    use crate::subsolution::split;

    fn rep(name: RepName) -> GammaRep<f64> {
        GammaRep::build(name).unwrap()
    }

    #[test]
    fn plane_validation() {
        assert_eq!(LorentzParams::new(1, 1, 0.3), Err(Error::InvalidPlane(1, 1)));
        assert_eq!(LorentzParams::new(0, 4, 0.3), Err(Error::InvalidPlane(0, 4)));
        assert_eq!(LorentzParams::rotation(0, 2, 0.3), Err(Error::InvalidPlane(0, 2)));
        assert_eq!(LorentzParams::boost(3, 0.5).unwrap().kind(), TransformKind::Boost);
        assert_eq!(LorentzParams::rotation(1, 2, 0.5).unwrap().kind(), TransformKind::Rotation);
    }

    #[test]
    fn pinned_generator_values() {
        let g = |m, n| LorentzParams::new(m, n, 1.0).unwrap().generator_value();
        assert_eq!(g(0, 3), 1);
        assert_eq!(g(3, 0), -1);
        assert_eq!(g(1, 2), -1);
        assert_eq!(g(2, 1), 1);
        assert_eq!(g(2, 3), -1);
        assert_eq!(g(3, 1), -1);
    }

    #[test]
    fn zero_parameter_is_identity() {
        for (m, n) in [(0, 3), (1, 2), (0, 1)] {
            let p = LorentzParams::new(m, n, 0.0).unwrap();
            assert_eq!(vector_transform(&p), VectorTransform::identity());
            let s = spinor_transform(&p, &rep(RepName::Spinor)).unwrap();
            assert!(s.matrix().approx_eq(&Mat4::identity(), 1e-15));
        }
    }

    #[test]
    fn quarter_turn_rotation() {
        let a = vector_transform(&LorentzParams::rotation(1, 2, std::f64::consts::FRAC_PI_2).unwrap());
        let p = a.apply(&[3.0, 2.0, 0.0, 0.0]);
        assert!((p[1]).abs() < 1e-15);
        assert!((p[2] + 2.0).abs() < 1e-15);
    }

    #[test]
    fn group_property_and_unitarity() {
        let r = rep(RepName::Standard);
        let s = |w| spinor_transform(&LorentzParams::boost(3, w).unwrap(), &r).unwrap();
        let prod = s(0.4).matrix() * s(1.1).matrix();
        assert!(prod.approx_eq(s(1.5).matrix(), 1e-10));

        let rot = spinor_transform(&LorentzParams::rotation(1, 2, 0.9).unwrap(), &r).unwrap();
        assert!((&rot.matrix().dagger() * rot.matrix()).approx_eq(&Mat4::identity(), 1e-12));
        let b = s(0.9);
        assert!(!(&b.matrix().dagger() * b.matrix()).approx_eq(&Mat4::identity(), 1e-3));
    }

    #[test]
    fn covariance_in_every_plane_and_rep() {
        for name in RepName::ALL {
            for (m, n) in [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1), (3, 0), (2, 1)] {
                for w in [-3.0, -0.5, 0.5, 1.0, 3.0] {
                    let p = LorentzParams::new(m, n, w).unwrap();
                    let r = covariance_check(&p, &rep(name)).unwrap();
                    assert!(r.all_within(1e-10), "{name} ({m},{n}) {w}: {:?}", r.first_violation(1e-10));
                }
            }
        }
    }

    #[test]
    fn flipped_sign_breaks_covariance() {
        let p = LorentzParams::boost(3, 1.0).unwrap();
        let r = flipped_generator_residuals(&p, &rep(RepName::Spinor)).unwrap();
        assert!(r.max_for(EquationId::CovarianceCondition) > 0.1);
    }

    #[test]
    fn privileged_planes_commute_with_projectors() {
        for name in RepName::ALL {
            let r = pi_commutation_check(&rep(name), &[-3.0, -1.0, 0.5, 1.3, 3.0]).unwrap();
            assert!(r.all_within(1e-12), "{name}");
            let off = projector_commutators(&LorentzParams::boost(1, 1.0).unwrap(), &rep(name)).unwrap();
            assert!(off.max_magnitude() > 0.1, "{name}");
        }
        let exact = generator_commutators(&GammaRep::<crate::Rational>::build(RepName::Majorana).unwrap());
        assert!(exact.all_exact_zero());
    }

    #[test]
    fn special_frame_examples() {
        let rest = FourMomentum::<f64>::on_shell([0.0, 0.0, 0.0], 2.0);
        let (rot, boost) = special_frame(&rest).unwrap();
        assert_eq!(rot.omega(), 0.0);
        assert_eq!(boost.omega(), 0.0);

        let p = FourMomentum::<f64>::new([3.0, 2.0, 2.0, 0.0], 1.0).unwrap();
        let (rot, boost) = special_frame(&p).unwrap();
        assert!(boost.omega().abs() < 1e-15);
        let a = vector_transform(&boost).compose(&vector_transform(&rot));
        let q = a.apply(p.components());
        let expected = [3.0, 8f64.sqrt(), 0.0, 0.0];
        for i in 0..4 {
            assert!((q[i] - expected[i]).abs() < 1e-12, "{q:?}");
        }
        let massless = FourMomentum::<f64>::on_shell([0.0, 0.0, 1.0], 0.0);
        assert_eq!(special_frame(&massless), Err(Error::SpecialFrameRequiresMass));
    }

    #[test]
    fn special_frame_reduces_projected_systems() {
        let r = rep(RepName::Spinor);
        let p = FourMomentum::<f64>::on_shell([1.2, -0.7, 4.5], 0.3);
        for spin in Spin::BOTH {
            let psi = PlaneWaveField::from_term(u_spinor(&p, &r, spin).unwrap(), RepName::Spinor);
            let sr = split(&psi, p.mass()).unwrap();
            let res = special_frame_residuals(&sr).unwrap();
            assert!(res.all_within(1e-10), "{:?}", res.first_violation(1e-10));
            assert!(res.max_for(EquationId::SpecialFrameMass) < 1e-12);
            assert!(transformed_projected_residuals(&sr, &LorentzParams::boost(2, 1.7).unwrap())
                .unwrap()
                .all_within(1e-10));
            assert!(transformed_dirac_residuals(&psi, 0.3, &LorentzParams::rotation(3, 1, -2.0).unwrap())
                .unwrap()
                .all_within(1e-10));
        }
    }
}
