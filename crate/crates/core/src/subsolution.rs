//! The two-constituent split of a massive Dirac solution, and the Weyl and
//! Majorana subsolutions.
//!
//! With `Ψ = (ξ¹, ξ², η₁, η₂)` in the spinor representation and `m ≠ 0`,
//!
//! ```text
//! m ξ₍₁₎¹ = (p̂⁰ + p̂³) η₁     m ξ₍₂₎¹ = (p̂¹ − ip̂²) η₂
//! m ξ₍₁₎² = (p̂¹ + ip̂²) η₁    m ξ₍₂₎² = (p̂⁰ − p̂³) η₂
//! ```
//!
//! and `Ψ₍ₖ₎ = (ξ₍ₖ₎¹, ξ₍ₖ₎², η₁, η₂)`. Each `P_k Ψ₍ₖ₎` then solves the Dirac
//! equation on its own and `P₁Ψ₍₁₎ + P₂Ψ₍₂₎ = Ψ`.


use crate::algebra::{pauli, Mat, Mat4};
use crate::error::{Error, Result};
use crate::field::{dirac_residual, MomentumOperator, PlaneWaveField};
use crate::gamma::{GammaRep, RepName};
use crate::projector::ProjectorSet;
use crate::residual::{EquationId, ResidualReport};
use crate::scalar::{cplx, Real};

type Coeffs = [(i64, i64); 4];

const P0_PLUS_P3: Coeffs = [(1, 0), (0, 0), (0, 0), (1, 0)];
const P0_MINUS_P3: Coeffs = [(1, 0), (0, 0), (0, 0), (-1, 0)];
const P1_PLUS_IP2: Coeffs = [(0, 0), (1, 0), (0, 1), (0, 0)];
const P1_MINUS_IP2: Coeffs = [(0, 0), (1, 0), (0, -1), (0, 0)];
const NEG_P1_PLUS_IP2: Coeffs = [(0, 0), (-1, 0), (0, 1), (0, 0)];
const NEG_P1_MINUS_IP2: Coeffs = [(0, 0), (-1, 0), (0, -1), (0, 0)];

/// `Σ c_μ p̂^μ` applied to a one-component field.
fn d<R: Real>(c: Coeffs, f: &PlaneWaveField<R>) -> PlaneWaveField<R> {
    let op = MomentumOperator::<R, 1>::new(c.map(|z| Mat::from_int_rows([[z]])), Mat::zero());
    f.apply(&op).expect("one-component field")
}

fn times<R: Real>(m: &R, f: &PlaneWaveField<R>) -> PlaneWaveField<R> {
    f.scale_real(m)
}

/// Moves a bispinor into `to`, by the unitary intertwiner when the backend
/// can represent it and by the unnormalised one otherwise.
fn into_rep<R: Real>(f: &PlaneWaveField<R>, to: RepName) -> Result<PlaneWaveField<R>> {
    match f.transport(to) {
        Err(Error::IrrationalTransport { .. }) => f.transport_scaled(to),
        other => other,
    }
}

/// `Ψ₍₁₎`, `Ψ₍₂₎` and the pieces they are built from, in the spinor
/// representation.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitResult<R> {
    psi1: PlaneWaveField<R>,
    psi2: PlaneWaveField<R>,
    xi1_pair: PlaneWaveField<R>,
    xi2_pair: PlaneWaveField<R>,
    mass: R,
    original: PlaneWaveField<R>,
}

impl<R: Real> SplitResult<R> {
    /// `Ψ₍₁₎ = (ξ₍₁₎¹, ξ₍₁₎², η₁, η₂)`
    pub fn psi1(&self) -> &PlaneWaveField<R> {
        &self.psi1
    }

    /// `Ψ₍₂₎ = (ξ₍₂₎¹, ξ₍₂₎², η₁, η₂)`
    pub fn psi2(&self) -> &PlaneWaveField<R> {
        &self.psi2
    }

    /// `(ξ₍₁₎¹, ξ₍₁₎²)`
    pub fn xi1_pair(&self) -> &PlaneWaveField<R> {
        &self.xi1_pair
    }

    /// `(ξ₍₂₎¹, ξ₍₂₎²)`
    pub fn xi2_pair(&self) -> &PlaneWaveField<R> {
        &self.xi2_pair
    }

    pub fn mass(&self) -> &R {
        &self.mass
    }

    pub fn original(&self) -> &PlaneWaveField<R> {
        &self.original
    }

    fn eta(&self) -> (PlaneWaveField<R>, PlaneWaveField<R>) {
        (self.original.component(2), self.original.component(3))
    }
}

/// Splits a massive spinor-representation Dirac solution.
pub fn split<R: Real>(psi: &PlaneWaveField<R>, m: &R) -> Result<SplitResult<R>> {
    if m.is_zero() {
        return Err(Error::SplitRequiresMass);
    }
    if psi.rep() != RepName::Spinor {
        return Err(Error::SplitRequiresSpinorRep);
    }
    let residual = dirac_residual(psi, m)?;
    let scale = psi.max_abs() * psi.terms().iter().map(|t| t.momentum().components()[0].to_f64()).fold(1.0, f64::max);
    if !residual.is_negligible(scale) {
        return Err(Error::NotASolution);
    }
    split_unchecked(psi, m)
}

/// [`split`] without the solution check; for negative controls.
pub fn split_unchecked<R: Real>(psi: &PlaneWaveField<R>, m: &R) -> Result<SplitResult<R>> {
    if m.is_zero() {
        return Err(Error::SplitRequiresMass);
    }
    if psi.components() != 4 {
        return Err(Error::ComponentMismatch {
            expected: 4,
            got: psi.components(),
        });
    }
    let inv_m = R::one() / m.clone();
    let eta1 = psi.component(2);
    let eta2 = psi.component(3);
    let xi11 = times(&inv_m, &d(P0_PLUS_P3, &eta1));
    let xi12 = times(&inv_m, &d(P1_PLUS_IP2, &eta1));
    let xi21 = times(&inv_m, &d(P1_MINUS_IP2, &eta2));
    let xi22 = times(&inv_m, &d(P0_MINUS_P3, &eta2));
    let xi1_pair = PlaneWaveField::stack(&[&xi11, &xi12])?;
    let xi2_pair = PlaneWaveField::stack(&[&xi21, &xi22])?;
    let eta = psi.slice(2..4);
    Ok(SplitResult {
        psi1: PlaneWaveField::stack(&[&xi1_pair, &eta])?,
        psi2: PlaneWaveField::stack(&[&xi2_pair, &eta])?,
        xi1_pair,
        xi2_pair,
        mass: m.clone(),
        original: psi.clone(),
    })
}

/// `ξ₍₁₎ + ξ₍₂₎ − ξ` componentwise, and `P₁Ψ₍₁₎ + P₂Ψ₍₂₎ − Ψ`.
pub fn recombination_residuals<R: Real>(sr: &SplitResult<R>) -> ResidualReport {
    let mut r = ResidualReport::for_backend::<R>();
    let xi = sr.original.slice(0..2);
    let sum = &sr.xi1_pair + &sr.xi2_pair;
    r.push_field(
        EquationId::SplitRecombinationUpper1,
        "xi(1)^1 + xi(2)^1 - xi^1",
        &(&sum.component(0) - &xi.component(0)),
    );
    r.push_field(
        EquationId::SplitRecombinationUpper2,
        "xi(1)^2 + xi(2)^2 - xi^2",
        &(&sum.component(1) - &xi.component(1)),
    );
    let proj = ProjectorSet::<R>::pinned(RepName::Spinor);
    r.push_field(
        EquationId::Recomposition,
        "P1 psi(1) + P2 psi(2) - psi",
        &recomposition(&proj, &sr.psi1, &sr.psi2, &sr.original),
    );
    r
}

fn recomposition<R: Real>(
    proj: &ProjectorSet<R>,
    psi1: &PlaneWaveField<R>,
    psi2: &PlaneWaveField<R>,
    psi: &PlaneWaveField<R>,
) -> PlaneWaveField<R> {
    let a = psi1.left_mul(proj.p1()).expect("bispinor");
    let b = psi2.left_mul(proj.p2()).expect("bispinor");
    &(&a + &b) - psi
}

/// The componentwise identities for `ξ₍₁₎`, `ξ₍₂₎` and their
/// representation-free form `(1 − P_k) γ^μp̂_μ P_k Ψ₍ₖ₎`.
pub fn identity_residuals<R: Real>(sr: &SplitResult<R>) -> ResidualReport {
    let mut r = ResidualReport::for_backend::<R>();
    let (x11, x12) = (sr.xi1_pair.component(0), sr.xi1_pair.component(1));
    let (x21, x22) = (sr.xi2_pair.component(0), sr.xi2_pair.component(1));
    r.push_field(
        EquationId::SplitIdentity1,
        "(p1+ip2) xi(1)^1 - (p0+p3) xi(1)^2",
        &(&d(P1_PLUS_IP2, &x11) - &d(P0_PLUS_P3, &x12)),
    );
    r.push_field(
        EquationId::SplitIdentity2,
        "(p0-p3) xi(2)^1 - (p1-ip2) xi(2)^2",
        &(&d(P0_MINUS_P3, &x21) - &d(P1_MINUS_IP2, &x22)),
    );
    let proj = ProjectorSet::<R>::pinned(RepName::Spinor);
    for (k, psi_k) in [(1, &sr.psi1), (2, &sr.psi2)] {
        let id = if k == 1 { EquationId::ProjectedIdentity1 } else { EquationId::ProjectedIdentity2 };
        r.push_field(id, format!("(1-P{k}) gp P{k} psi({k})"), &projected_identity(&proj, k, psi_k));
    }
    r
}

fn projected_identity<R: Real>(proj: &ProjectorSet<R>, k: usize, psi_k: &PlaneWaveField<R>) -> PlaneWaveField<R> {
    let p = proj.p(k).expect("k in 1..=2");
    let op = MomentumOperator::slashed(proj.rep()).sandwiched(&(&Mat4::identity() - p), p);
    psi_k.apply(&op).expect("bispinor")
}

/// The three-line systems, their fourth lines, and the projector forms
/// `(γ^μp̂_μ − m) P_k Ψ₍ₖ₎` and `P_k γ^μp̂_μ P_k Ψ₍ₖ₎ − m P_k Ψ₍ₖ₎`.
pub fn constituent_residuals<R: Real>(sr: &SplitResult<R>) -> ResidualReport {
    let mut r = ResidualReport::for_backend::<R>();
    let m = &sr.mass;
    let (eta1, eta2) = sr.eta();
    let (x11, x12) = (sr.xi1_pair.component(0), sr.xi1_pair.component(1));
    let (x21, x22) = (sr.xi2_pair.component(0), sr.xi2_pair.component(1));

    use EquationId::*;
    r.push_field(Constituent1, "row 1", &(&d(P0_PLUS_P3, &eta1) - &times(m, &x11)));
    r.push_field(Constituent1, "row 2", &(&d(P1_PLUS_IP2, &eta1) - &times(m, &x12)));
    r.push_field(
        Constituent1,
        "row 3",
        &(&(&d(P0_MINUS_P3, &x11) + &d(NEG_P1_PLUS_IP2, &x12)) - &times(m, &eta1)),
    );
    r.push_field(
        Constituent1Extended,
        "row 4",
        &(&d(P0_PLUS_P3, &x12) - &d(P1_PLUS_IP2, &x11)),
    );

    r.push_field(Constituent2, "row 1", &(&d(P1_MINUS_IP2, &eta2) - &times(m, &x21)));
    r.push_field(Constituent2, "row 2", &(&d(P0_MINUS_P3, &eta2) - &times(m, &x22)));
    r.push_field(
        Constituent2,
        "row 3",
        &(&(&d(NEG_P1_MINUS_IP2, &x21) + &d(P0_PLUS_P3, &x22)) - &times(m, &eta2)),
    );
    r.push_field(
        Constituent2Extended,
        "row 3",
        &(&d(P0_MINUS_P3, &x21) + &d(NEG_P1_PLUS_IP2, &x22)),
    );

    let proj = ProjectorSet::<R>::pinned(RepName::Spinor);
    push_projected_forms(&mut r, &proj, &sr.psi1, &sr.psi2, m);
    r
}

fn push_projected_forms<R: Real>(
    r: &mut ResidualReport,
    proj: &ProjectorSet<R>,
    psi1: &PlaneWaveField<R>,
    psi2: &PlaneWaveField<R>,
    m: &R,
) {
    let rep = proj.rep();
    let name = rep.name();
    let dirac = MomentumOperator::dirac(rep, m);
    let slashed = MomentumOperator::slashed(rep);
    for (k, psi_k) in [(1, psi1), (2, psi2)] {
        let (projected, system) = if k == 1 {
            (EquationId::Constituent1Projected, EquationId::ProjectedSystem1)
        } else {
            (EquationId::Constituent2Projected, EquationId::ProjectedSystem2)
        };
        let p = proj.p(k).expect("k in 1..=2");
        let pk_psi = psi_k.left_mul(p).expect("bispinor");
        r.push_field(
            projected,
            format!("{name}: (gp - m) P{k} psi({k})"),
            &pk_psi.apply(&dirac).expect("bispinor"),
        );
        let sandwiched = psi_k.apply(&slashed.sandwiched(p, p)).expect("bispinor");
        r.push_field(
            system,
            format!("{name}: P{k} gp P{k} psi({k}) - m P{k} psi({k})"),
            &(&sandwiched - &pk_psi.scale_real(m)),
        );
    }
}

/// The representation-free equations re-evaluated after moving `Ψ₍₁₎`,
/// `Ψ₍₂₎` and `Ψ` into `rep`.
///
/// In an exact backend the unnormalised intertwiner is used when the
/// unitary one is irrational; every equation checked here is linear and
/// homogeneous, so a common positive factor cannot change whether it holds.
pub fn projected_residuals<R: Real>(sr: &SplitResult<R>, rep: RepName) -> Result<ResidualReport> {
    let mut r = ResidualReport::for_backend::<R>();
    let psi1 = into_rep(&sr.psi1, rep)?;
    let psi2 = into_rep(&sr.psi2, rep)?;
    let psi = into_rep(&sr.original, rep)?;
    let proj = ProjectorSet::<R>::pinned(rep);
    push_projected_forms(&mut r, &proj, &psi1, &psi2, &sr.mass);
    for (k, psi_k) in [(1, &psi1), (2, &psi2)] {
        let id = if k == 1 { EquationId::ProjectedIdentity1 } else { EquationId::ProjectedIdentity2 };
        r.push_field(id, format!("{rep}: (1-P{k}) gp P{k} psi({k})"), &projected_identity(&proj, k, psi_k));
    }
    r.push_field(
        EquationId::Recomposition,
        format!("{rep}: P1 psi(1) + P2 psi(2) - psi"),
        &recomposition(&proj, &psi1, &psi2, &psi),
    );
    Ok(r)
}

/// `γ^μp̂_μ P_k Ψ₍ₖ₎` with the mass term dropped. Nonzero for every genuine
/// split: `P_k` commutes with `γ⁵`, but the projected equations are not
/// massless equations.
pub fn massless_projected<R: Real>(sr: &SplitResult<R>) -> ResidualReport {
    let mut r = ResidualReport::for_backend::<R>();
    let proj = ProjectorSet::<R>::pinned(RepName::Spinor);
    let slashed = MomentumOperator::slashed(proj.rep());
    for (k, psi_k) in [(1, &sr.psi1), (2, &sr.psi2)] {
        let p = proj.p(k).expect("k in 1..=2");
        let f = psi_k.left_mul(p).and_then(|f| f.apply(&slashed)).expect("bispinor");
        r.push_field(EquationId::MasslessProjected, format!("gp P{k} psi({k})"), &f);
    }
    r
}

/// Two-component Weyl equations on the chiral halves and the bispinor forms
/// `γ^μp̂_μ Q± Ψ`.
pub fn weyl_residuals<R: Real>(f: &PlaneWaveField<R>) -> Result<ResidualReport> {
    if f.terms().iter().any(|t| !t.momentum().mass().is_zero()) {
        return Err(Error::WeylRequiresMassless);
    }
    weyl_residuals_unchecked(f)
}

/// [`weyl_residuals`] without the masslessness check; for negative controls.
pub fn weyl_residuals_unchecked<R: Real>(f: &PlaneWaveField<R>) -> Result<ResidualReport> {
    if f.components() != 4 {
        return Err(Error::ComponentMismatch {
            expected: 4,
            got: f.components(),
        });
    }
    let mut r = ResidualReport::for_backend::<R>();
    let s = into_rep(f, RepName::Spinor)?;
    let eta = s.slice(2..4);
    let xi = s.slice(0..2);
    r.push_field(EquationId::WeylLeft, "(p0 + s.p) eta", &eta.apply(&MomentumOperator::sigma_plus())?);
    r.push_field(EquationId::WeylRight, "(p0 - s.p) xi", &xi.apply(&MomentumOperator::sigma_minus())?);

    let proj = ProjectorSet::<R>::pinned(f.rep());
    let slashed = MomentumOperator::slashed(proj.rep());
    r.push_field(
        EquationId::ChiralDiracPlus,
        "gp Q+ psi",
        &f.left_mul(proj.q_plus())?.apply(&slashed)?,
    );
    r.push_field(
        EquationId::ChiralDiracMinus,
        "gp Q- psi",
        &f.left_mul(proj.q_minus())?.apply(&slashed)?,
    );
    Ok(r)
}

/// `Ψ + CΨ`, self-conjugate because `C` is an involution.
pub fn majorana_build<R: Real>(psi: &PlaneWaveField<R>) -> Result<PlaneWaveField<R>> {
    Ok(psi + &psi.charge_conjugate()?)
}

/// Self-conjugacy, the two-component Majorana equations and the relations
/// `ξ = −iσ²η*`, `η = iσ²ξ*` (the latter three in the spinor representation).
pub fn majorana_residuals<R: Real>(f: &PlaneWaveField<R>, m: &R) -> Result<ResidualReport> {
    let gap = f - &f.charge_conjugate()?;
    if !gap.is_negligible(f.max_abs()) {
        return Err(Error::NotMajorana);
    }
    let mut r = ResidualReport::for_backend::<R>();
    r.push_field(EquationId::MajoranaSelfConjugate, "psi - C psi", &gap);

    let s = into_rep(f, RepName::Spinor)?;
    let xi = s.slice(0..2);
    let eta = s.slice(2..4);
    let [_, s2, _] = pauli::<R>();
    let i_s2 = s2.scale(&cplx(0, 1));
    let im_s2 = i_s2.scale_real(m);
    let eta_star_term = eta.conjugate().left_mul(&im_s2)?;
    let xi_star_term = xi.conjugate().left_mul(&im_s2)?;
    r.push_field(
        EquationId::MajoranaLeft,
        "(p0 + s.p) eta + i m s2 eta*",
        &(&eta.apply(&MomentumOperator::sigma_plus())? + &eta_star_term),
    );
    r.push_field(
        EquationId::MajoranaRight,
        "(p0 - s.p) xi - i m s2 xi*",
        &(&xi.apply(&MomentumOperator::sigma_minus())? - &xi_star_term),
    );
    r.push_field(
        EquationId::MajoranaXiRelation,
        "xi + i s2 eta*",
        &(&xi + &eta.conjugate().left_mul(&i_s2)?),
    );
    r.push_field(
        EquationId::MajoranaEtaRelation,
        "eta - i s2 xi*",
        &(&eta - &xi.conjugate().left_mul(&i_s2)?),
    );
    Ok(r)
}

/// `[γ⁵, P_k]` for `k = 1, 2`: the projected equations keep `γ⁵` as a
/// symmetry of the projector, which is not the same as being chiral.
pub fn gamma5_projector_commutators<R: Real>(rep: &GammaRep<R>) -> ResidualReport {
    let proj = ProjectorSet::<R>::pinned(rep.name());
    let mut r = ResidualReport::for_backend::<R>();
    for k in 1..=2 {
        r.push_matrix(
            EquationId::ProjectorGamma5Commutator,
            format!("[g5, P{k}]"),
            &rep.gamma5().commutator(proj.p(k).expect("k in 1..=2")),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{u_spinor, u_spinor_unchecked, weyl_spinor, Chirality, FourMomentum, FreqSign, PlaneWaveTerm, Spin};
    use crate::scalar::Rational;
    use num_traits::Zero;
    use num_traits::One;

    type Q = Rational;

    fn witness() -> FourMomentum<Q> {
        FourMomentum::from_ints([3, 2, 2, 0], 1).unwrap()
    }

    fn spinor() -> GammaRep<Q> {
        GammaRep::build(RepName::Spinor).unwrap()
    }

    fn u_field(p: &FourMomentum<Q>, spin: Spin) -> PlaneWaveField<Q> {
        PlaneWaveField::from_term(u_spinor(p, &spinor(), spin).unwrap(), RepName::Spinor)
    }

    #[test]
    fn rest_frame_example() {
        let p = FourMomentum::<Q>::from_ints([2, 0, 0, 0], 2).unwrap();
        let amp = vec![cplx(1, 0), cplx(0, 0), cplx(1, 0), cplx(0, 0)];
        let psi = PlaneWaveField::from_term(PlaneWaveTerm::new(amp, p, FreqSign::Positive).unwrap(), RepName::Spinor);
        let sr = split(&psi, &Q::from_i64(2)).unwrap();
        let a1 = sr.xi1_pair().terms()[0].amplitude();
        assert_eq!(a1, &[cplx(1, 0), cplx(0, 0)]);
        assert!(sr.xi2_pair().is_zero());
        assert!(recombination_residuals(&sr).all_exact_zero());
        assert!(constituent_residuals(&sr).all_exact_zero());
    }

    #[test]
    fn witness_all_exact() {
        for spin in Spin::BOTH {
            let sr = split(&u_field(&witness(), spin), &Q::from_i64(1)).unwrap();
            assert!(recombination_residuals(&sr).all_exact_zero());
            assert!(identity_residuals(&sr).all_exact_zero());
            assert!(constituent_residuals(&sr).all_exact_zero());
            for rep in RepName::ALL {
                let r = projected_residuals(&sr, rep).unwrap();
                assert!(r.all_exact_zero(), "{rep}: {:?}", r.first_violation(0.0));
            }
        }
    }

    #[test]
    fn errors() {
        let psi = u_field(&witness(), Spin::Up);
        assert_eq!(split(&psi, &Q::zero()), Err(Error::SplitRequiresMass));
        let std = psi.transport_scaled(RepName::Standard).unwrap();
        assert_eq!(split(&std, &Q::one()), Err(Error::SplitRequiresSpinorRep));
        assert_eq!(split(&psi, &Q::from_i64(2)), Err(Error::NotASolution));
    }

    #[test]
    fn zero_eta_gives_zero_xi() {
        // (ξ, 0) solves the equation only when ξ vanishes as well, so the
        // unchecked split is used here: the statement is about linearity.
        let amp = vec![cplx(1, 0), cplx(2, 1), cplx(0, 0), cplx(0, 0)];
        let psi = PlaneWaveField::from_term(PlaneWaveTerm::new(amp, witness(), FreqSign::Positive).unwrap(), RepName::Spinor);
        let sr = split_unchecked(&psi, &Q::one()).unwrap();
        assert!(sr.xi1_pair().is_zero() && sr.xi2_pair().is_zero());
        for k in 0..2 {
            assert!(sr.psi1().component(k).is_zero());
            assert!(sr.psi2().component(k).is_zero());
        }
    }

    #[test]
    fn linearity() {
        let other = FourMomentum::<Q>::from_ints([3, 2, -2, 0], 1).unwrap();
        let a = u_field(&witness(), Spin::Up);
        let b = u_field(&other, Spin::Down);
        let (ca, cb) = (cplx::<Q>(2, -1), cplx::<Q>(0, 3));
        let mixed = &a.scale(&ca) + &b.scale(&cb);
        let m = Q::one();
        let s = split(&mixed, &m).unwrap();
        let (sa, sb) = (split(&a, &m).unwrap(), split(&b, &m).unwrap());
        assert_eq!(s.psi1(), &(&sa.psi1().scale(&ca) + &sb.psi1().scale(&cb)));
        assert_eq!(s.psi2(), &(&sa.psi2().scale(&ca) + &sb.psi2().scale(&cb)));
    }

    #[test]
    fn off_shell_breaks_three_line_systems() {
        let p = FourMomentum::<Q>::new_unchecked([3, 2, 2, 1].map(Q::from_i64), Q::one());
        let psi = PlaneWaveField::from_term(u_spinor_unchecked(&p, &spinor(), Spin::Up).unwrap(), RepName::Spinor);
        assert!(dirac_residual(&psi, &Q::one()).unwrap().max_abs() > 1e-3);
        let sr = split_unchecked(&psi, &Q::one()).unwrap();
        let c = constituent_residuals(&sr);
        assert!(c.max_for(EquationId::Constituent1) > 1e-3 || c.max_for(EquationId::Constituent2) > 1e-3);
        assert!(!recombination_residuals(&sr).all_exact_zero());
    }

    #[test]
    fn projected_equations_are_not_massless() {
        let sr = split(&u_field(&witness(), Spin::Up), &Q::one()).unwrap();
        assert!(massless_projected(&sr).max_magnitude() > 0.5);
        assert!(gamma5_projector_commutators(&spinor()).all_exact_zero());
    }

    #[test]
    fn weyl() {
        let p = FourMomentum::<Q>::from_ints([1, 0, 0, 1], 0).unwrap();
        for name in RepName::ALL {
            let rep = GammaRep::<Q>::build(name).unwrap();
            for c in [Chirality::Left, Chirality::Right] {
                let f = PlaneWaveField::from_term(weyl_spinor(&p, &rep, c).unwrap(), name);
                assert!(weyl_residuals(&f).unwrap().all_exact_zero(), "{name} {c:?}");
            }
        }
        let massive = u_field(&witness(), Spin::Up);
        assert_eq!(weyl_residuals(&massive), Err(Error::WeylRequiresMassless));
        assert!(weyl_residuals_unchecked(&massive).unwrap().max_magnitude() > 1e-3);
    }

    #[test]
    fn weyl_projector_selection() {
        let p = FourMomentum::<Q>::from_ints([1, 0, 0, 1], 0).unwrap();
        let rep = spinor();
        let proj = ProjectorSet::build(&rep).unwrap();
        let left = PlaneWaveField::from_term(weyl_spinor(&p, &rep, Chirality::Left).unwrap(), RepName::Spinor);
        let right = PlaneWaveField::from_term(weyl_spinor(&p, &rep, Chirality::Right).unwrap(), RepName::Spinor);
        assert_eq!(left.left_mul(proj.q_plus()).unwrap(), left);
        assert!(left.left_mul(proj.q_minus()).unwrap().is_zero());
        assert_eq!(right.left_mul(proj.q_minus()).unwrap(), right);
    }

    #[test]
    fn majorana() {
        for name in RepName::ALL {
            let rep = GammaRep::<Q>::build(name).unwrap();
            let psi = PlaneWaveField::from_term(u_spinor(&witness(), &rep, Spin::Down).unwrap(), name);
            let maj = majorana_build(&psi).unwrap();
            assert_eq!(maj.charge_conjugate().unwrap(), maj);
            assert!(dirac_residual(&maj, &Q::one()).unwrap().is_zero());
            let r = majorana_residuals(&maj, &Q::one()).unwrap();
            assert!(r.all_exact_zero(), "{name}: {:?}", r.first_violation(0.0));
            assert_eq!(majorana_residuals(&psi, &Q::one()), Err(Error::NotMajorana));
        }
    }
}
