//! Chiral projectors `Q±`, the four mutually commuting rank-3 projectors
//! `P₁..P₄` built from `γ⁵`, `γ⁰γ³` and `iγ¹γ²`, and the swap `V = iγ²γ³`.

use num_complex::Complex;
use num_traits::One;

use crate::algebra::Mat4;
use crate::error::{Error, Result};
use crate::gamma::GammaRep;
use crate::residual::{EquationId, ResidualReport};
use crate::scalar::{cplx, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorSet<R> {
    rep: GammaRep<R>,
    q_plus: Mat4<R>,
    q_minus: Mat4<R>,
    p: [Mat4<R>; 4],
    v: Mat4<R>,
}

/// Sign pattern `(γ⁵, γ⁰γ³, iγ¹γ²)` of each `P_k = ¼(3 ± γ⁵ ± γ⁰γ³ ± iγ¹γ²)`.
const SIGNS: [[i64; 3]; 4] = [[-1, -1, 1], [-1, 1, -1], [1, 1, 1], [1, -1, -1]];

impl<R: Real> ProjectorSet<R> {
    /// Builds every operator from the representation's gammas and checks the
    /// projector algebra. Any violation means the representation is wrong.
    pub fn build(rep: &GammaRep<R>) -> Result<Self> {
        let set = Self::build_unchecked(rep);
        match set.algebra_residuals().first_violation(R::negligible().to_f64()) {
            Some(bad) => Err(Error::ProjectorAlgebraViolation(format!(
                "{} {}",
                bad.equation, bad.label
            ))),
            None => Ok(set),
        }
    }

    /// Projectors of a pinned representation without re-checking the algebra.
    pub(crate) fn pinned(name: crate::gamma::RepName) -> Self {
        Self::build_unchecked(&GammaRep::pinned(name))
    }

    fn build_unchecked(rep: &GammaRep<R>) -> Self {
        let id = Mat4::<R>::identity();
        let half = Complex::new(R::ratio(1, 2), R::zero());
        let g5 = rep.gamma5();
        let q_plus = (&id + g5).scale(&half);
        let q_minus = (&id - g5).scale(&half);

        let g03 = rep.gamma(0) * rep.gamma(3);
        let ig12 = (rep.gamma(1) * rep.gamma(2)).scale(&cplx(0, 1));
        let three = id.scale_real(&R::from_i64(3));
        let quarter = R::ratio(1, 4);
        let p = SIGNS.map(|[a, b, c]| {
            let sum = &(&(&three + &g5.scale_real(&R::from_i64(a))) + &g03.scale_real(&R::from_i64(b)))
                + &ig12.scale_real(&R::from_i64(c));
            sum.scale_real(&quarter)
        });
        let v = (rep.gamma(2) * rep.gamma(3)).scale(&cplx(0, 1));
        Self {
            rep: rep.clone(),
            q_plus,
            q_minus,
            p,
            v,
        }
    }

    pub fn rep(&self) -> &GammaRep<R> {
        &self.rep
    }

    pub fn q_plus(&self) -> &Mat4<R> {
        &self.q_plus
    }

    pub fn q_minus(&self) -> &Mat4<R> {
        &self.q_minus
    }

    /// `P_k` for `k ∈ 1..=4`.
    pub fn p(&self, k: usize) -> Result<&Mat4<R>> {
        match k {
            1..=4 => Ok(&self.p[k - 1]),
            _ => Err(Error::IndexOutOfRange(k)),
        }
    }

    pub fn p1(&self) -> &Mat4<R> {
        &self.p[0]
    }

    pub fn p2(&self) -> &Mat4<R> {
        &self.p[1]
    }

    pub fn all_p(&self) -> &[Mat4<R>; 4] {
        &self.p
    }

    pub fn v(&self) -> &Mat4<R> {
        &self.v
    }

    /// `ε_k = I − P_k`, the rank-1 complement.
    pub fn rank_one_complement(&self, k: usize) -> Result<Mat4<R>> {
        Ok(&Mat4::identity() - self.p(k)?)
    }

    /// Every algebraic fact about `Q±` and `P_k`, as residuals.
    pub fn algebra_residuals(&self) -> ResidualReport {
        let mut r = ResidualReport::for_backend::<R>();
        let id = Mat4::<R>::identity();
        let (qp, qm) = (&self.q_plus, &self.q_minus);
        r.push_matrix(EquationId::ChiralProjector, "Q+ + Q- - I", &(&(qp + qm) - &id));
        r.push_matrix(EquationId::ChiralProjector, "Q+^2 - Q+", &(&(qp * qp) - qp));
        r.push_matrix(EquationId::ChiralProjector, "Q-^2 - Q-", &(&(qm * qm) - qm));
        r.push_matrix(EquationId::ChiralProjector, "Q+ Q-", &(qp * qm));

        for (i, p) in self.p.iter().enumerate() {
            let k = i + 1;
            r.push_matrix(EquationId::ProjectorIdempotent, format!("P{k}"), &(&(p * p) - p));
            r.push_scalar(
                EquationId::ProjectorTrace,
                format!("P{k}"),
                &(p.trace() - Complex::new(R::from_i64(3), R::zero())),
            );
            r.push_matrix(
                EquationId::ProjectorGamma5Commutator,
                format!("P{k}"),
                &p.commutator(self.rep.gamma5()),
            );
            let eps = &id - p;
            r.push_matrix(EquationId::ProjectorComplement, format!("e{k}^2 - e{k}"), &(&(&eps * &eps) - &eps));
            r.push_matrix(EquationId::ProjectorComplement, format!("e{k} P{k}"), &(&eps * p));
            r.push_scalar(
                EquationId::ProjectorComplement,
                format!("tr e{k} - 1"),
                &(eps.trace() - Complex::one()),
            );
            for (j, q) in self.p.iter().enumerate().skip(i + 1) {
                r.push_matrix(EquationId::ProjectorCommutator, format!("P{k},P{}", j + 1), &p.commutator(q));
            }
        }
        let sum = self.p.iter().fold(Mat4::zero(), |acc, p| &acc + p);
        r.push_matrix(EquationId::ProjectorSum, "sum P - 3I", &(&sum - &id.scale_real(&R::from_i64(3))));
        r
    }

    /// `V P₁ V⁻¹ = P₂`, `V P₂ V⁻¹ = P₁`, `[V, γ⁰] = 0`, `[V, γ¹] = 0`, `V V† = I`.
    pub fn v_swap_check(&self) -> ResidualReport {
        self.v_swap_check_with(&self.v)
    }

    /// The swap checks with an arbitrary candidate in place of `V`; `V⁻¹` is
    /// taken as `V†`, so a non-unitary candidate shows up in the last entry.
    pub fn v_swap_check_with(&self, v: &Mat4<R>) -> ResidualReport {
        let mut r = ResidualReport::for_backend::<R>();
        let vd = v.dagger();
        let (p1, p2) = (self.p1(), self.p2());
        r.push_matrix(EquationId::SwapP1ToP2, "V P1 V^-1 - P2", &(&(&(v * p1) * &vd) - p2));
        r.push_matrix(EquationId::SwapP2ToP1, "V P2 V^-1 - P1", &(&(&(v * p2) * &vd) - p1));
        r.push_matrix(EquationId::SwapCommutesGamma0, "[V, g0]", &v.commutator(self.rep.gamma(0)));
        r.push_matrix(EquationId::SwapCommutesGamma1, "[V, g1]", &v.commutator(self.rep.gamma(1)));
        r.push_matrix(EquationId::SwapUnitary, "V V^+ - I", &(&(v * &vd) - &Mat4::identity()));
        r
    }
}

/// See [`ProjectorSet::build`].
pub fn build_projectors<R: Real>(rep: &GammaRep<R>) -> Result<ProjectorSet<R>> {
    ProjectorSet::build(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::RepName;
    use crate::scalar::Rational;

    type Q = Rational;

    fn set(name: RepName) -> ProjectorSet<Q> {
        ProjectorSet::build(&GammaRep::build(name).unwrap()).unwrap()
    }

    #[test]
    fn spinor_rep_diagonal_forms() {
        let s = set(RepName::Spinor);
        assert!(s.p1().exact_eq(&Mat4::diag_int([1, 1, 1, 0])));
        assert!(s.p2().exact_eq(&Mat4::diag_int([1, 1, 0, 1])));
        assert!(s.p(3).unwrap().exact_eq(&Mat4::diag_int([1, 0, 1, 1])));
        assert!(s.p(4).unwrap().exact_eq(&Mat4::diag_int([0, 1, 1, 1])));
        assert!(s.q_minus().exact_eq(&Mat4::diag_int([1, 1, 0, 0])));
        assert!(s.q_plus().exact_eq(&Mat4::diag_int([0, 0, 1, 1])));
    }

    #[test]
    fn complements() {
        let s = set(RepName::Spinor);
        assert!(s.rank_one_complement(1).unwrap().exact_eq(&Mat4::diag_int([0, 0, 0, 1])));
        for k in 1..=4 {
            let e = s.rank_one_complement(k).unwrap();
            assert!((&e * &e).exact_eq(&e));
            assert!((&e * s.p(k).unwrap()).is_zero());
        }
        assert_eq!(s.rank_one_complement(5), Err(Error::IndexOutOfRange(5)));
        assert_eq!(s.p(0).err(), Some(Error::IndexOutOfRange(0)));
    }

    #[test]
    fn algebra_exact_in_every_rep() {
        for name in RepName::ALL {
            let s = set(name);
            let r = s.algebra_residuals();
            assert!(r.all_exact_zero(), "{name}: {:?}", r.first_violation(0.0));
            assert!(s.v_swap_check().all_exact_zero(), "{name}");
        }
    }

    #[test]
    fn identity_in_place_of_v_fails_swap() {
        let s = set(RepName::Spinor);
        let r = s.v_swap_check_with(&Mat4::identity());
        assert!(r.max_for(EquationId::SwapP1ToP2) > 0.5);
        assert!(r.max_for(EquationId::SwapP2ToP1) > 0.5);
        // identity still commutes and is unitary
        assert_eq!(r.max_for(EquationId::SwapCommutesGamma0), 0.0);
        assert_eq!(r.max_for(EquationId::SwapUnitary), 0.0);
    }

    #[test]
    fn broken_rep_is_rejected() {
        let good = GammaRep::<Q>::build(RepName::Spinor).unwrap();
        let mut gs = good.gammas().clone();
        gs[1] = &gs[1] + &Mat4::identity();
        let bad = GammaRep::from_gammas(RepName::Spinor, gs);
        assert!(matches!(
            ProjectorSet::build(&bad),
            Err(Error::ProjectorAlgebraViolation(_))
        ));
    }

    #[test]
    fn float_backend_builds() {
        let s = ProjectorSet::<f64>::build(&GammaRep::build(RepName::Majorana).unwrap()).unwrap();
        assert!(s.algebra_residuals().all_within(1e-14));
    }
}
