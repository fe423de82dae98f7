//! Residual bookkeeping shared by every verification routine.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::Mat;
use crate::field::PlaneWaveField;
use crate::scalar::{modulus, Backend, Real};

/// Fixed enumeration of the equations and identities that get checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationId {
    CliffordRelation,
    Gamma5Square,
    Gamma5Anticommutator,
    SpinorPinning,
    IntertwinerConjugation,
    IntertwinerUnitarity,
    ChiralProjector,
    ProjectorIdempotent,
    ProjectorCommutator,
    ProjectorSum,
    ProjectorTrace,
    ProjectorGamma5Commutator,
    ProjectorComplement,
    SwapP1ToP2,
    SwapP2ToP1,
    SwapCommutesGamma0,
    SwapCommutesGamma1,
    SwapUnitary,
    Dirac,
    ChargeConjugation,
    SplitRecombinationUpper1,
    SplitRecombinationUpper2,
    SplitIdentity1,
    SplitIdentity2,
    Constituent1,
    Constituent2,
    Constituent1Extended,
    Constituent2Extended,
    Constituent1Projected,
    Constituent2Projected,
    ProjectedSystem1,
    ProjectedSystem2,
    ProjectedIdentity1,
    ProjectedIdentity2,
    Recomposition,
    MasslessProjected,
    WeylLeft,
    WeylRight,
    ChiralDiracPlus,
    ChiralDiracMinus,
    MajoranaSelfConjugate,
    MajoranaLeft,
    MajoranaRight,
    MajoranaXiRelation,
    MajoranaEtaRelation,
    ExpClosedForm,
    MetricPreservation,
    CovarianceCondition,
    ConjugatedProjectorIdempotent,
    TransformedDirac,
    TransformedProjected,
    GeneratorCommutator,
    TransformCommutator,
    SpecialFrameMomentum,
    SpecialFrameMass,
    SpecialFrame1,
    SpecialFrame2,
    SwapSpecialFrameOperator,
    SwapSpecialFrameField,
}

impl EquationId {
    pub fn as_str(self) -> &'static str {
        use EquationId::*;
        match self {
            CliffordRelation => "clifford-relation",
            Gamma5Square => "gamma5-square",
            Gamma5Anticommutator => "gamma5-anticommutator",
            SpinorPinning => "spinor-pinning",
            IntertwinerConjugation => "intertwiner-conjugation",
            IntertwinerUnitarity => "intertwiner-unitarity",
            ChiralProjector => "chiral-projector",
            ProjectorIdempotent => "projector-idempotent",
            ProjectorCommutator => "projector-commutator",
            ProjectorSum => "projector-sum",
            ProjectorTrace => "projector-trace",
            ProjectorGamma5Commutator => "projector-gamma5-commutator",
            ProjectorComplement => "projector-complement",
            SwapP1ToP2 => "swap-p1-to-p2",
            SwapP2ToP1 => "swap-p2-to-p1",
            SwapCommutesGamma0 => "swap-commutes-gamma0",
            SwapCommutesGamma1 => "swap-commutes-gamma1",
            SwapUnitary => "swap-unitary",
            Dirac => "dirac",
            ChargeConjugation => "charge-conjugation",
            SplitRecombinationUpper1 => "split-recombination-1",
            SplitRecombinationUpper2 => "split-recombination-2",
            SplitIdentity1 => "split-identity-1",
            SplitIdentity2 => "split-identity-2",
            Constituent1 => "constituent-1",
            Constituent2 => "constituent-2",
            Constituent1Extended => "constituent-1-extended",
            Constituent2Extended => "constituent-2-extended",
            Constituent1Projected => "constituent-1-projected",
            Constituent2Projected => "constituent-2-projected",
            ProjectedSystem1 => "projected-system-1",
            ProjectedSystem2 => "projected-system-2",
            ProjectedIdentity1 => "projected-identity-1",
            ProjectedIdentity2 => "projected-identity-2",
            Recomposition => "recomposition",
            MasslessProjected => "massless-projected",
            WeylLeft => "weyl-left",
            WeylRight => "weyl-right",
            ChiralDiracPlus => "chiral-dirac-plus",
            ChiralDiracMinus => "chiral-dirac-minus",
            MajoranaSelfConjugate => "majorana-self-conjugate",
            MajoranaLeft => "majorana-left",
            MajoranaRight => "majorana-right",
            MajoranaXiRelation => "majorana-xi-relation",
            MajoranaEtaRelation => "majorana-eta-relation",
            ExpClosedForm => "exp-closed-form",
            MetricPreservation => "metric-preservation",
            CovarianceCondition => "covariance-condition",
            ConjugatedProjectorIdempotent => "conjugated-projector-idempotent",
            TransformedDirac => "transformed-dirac",
            TransformedProjected => "transformed-projected",
            GeneratorCommutator => "generator-commutator",
            TransformCommutator => "transform-commutator",
            SpecialFrameMomentum => "special-frame-momentum",
            SpecialFrameMass => "special-frame-mass",
            SpecialFrame1 => "special-frame-1",
            SpecialFrame2 => "special-frame-2",
            SwapSpecialFrameOperator => "swap-special-frame-operator",
            SwapSpecialFrameField => "swap-special-frame-field",
        }
    }
}

impl std::fmt::Display for EquationId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub equation: EquationId,
    /// Which instance of the equation (index pair, projector number, ...).
    pub label: String,
    /// Largest entry modulus of the residual, converted to `f64`.
    pub magnitude: f64,
    /// Literally zero in an exact backend. Always false for floats.
    pub exact_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub backend: Backend,
    entries: Vec<ResidualEntry>,
}

impl ResidualReport {
    pub fn new(backend: Backend) -> Self {
        Self {
            backend,
            entries: Vec::new(),
        }
    }

    pub fn for_backend<R: Real>() -> Self {
        Self::new(R::BACKEND)
    }

    fn push_raw(&mut self, equation: EquationId, label: impl Into<String>, magnitude: f64, zero: bool) {
        self.entries.push(ResidualEntry {
            equation,
            label: label.into(),
            magnitude,
            exact_zero: zero && self.backend == Backend::Exact,
        });
    }

    pub fn push_matrix<R: Real, const N: usize>(
        &mut self,
        equation: EquationId,
        label: impl Into<String>,
        m: &Mat<R, N>,
    ) {
        self.push_raw(equation, label, m.max_abs(), m.is_zero());
    }

    pub fn push_scalar<R: Real>(&mut self, equation: EquationId, label: impl Into<String>, z: &Complex<R>) {
        self.push_raw(equation, label, modulus(z), z.is_zero());
    }

    pub fn push_field<R: Real>(&mut self, equation: EquationId, label: impl Into<String>, f: &PlaneWaveField<R>) {
        self.push_raw(equation, label, f.max_abs(), f.is_zero());
    }

    /// A residual measured directly as a float (never exact-zero).
    pub fn push_value(&mut self, equation: EquationId, label: impl Into<String>, magnitude: f64) {
        self.entries.push(ResidualEntry {
            equation,
            label: label.into(),
            magnitude,
            exact_zero: false,
        });
    }

    pub fn extend(&mut self, other: ResidualReport) {
        self.entries.extend(other.entries);
    }

    pub fn entries(&self) -> &[ResidualEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, equation: EquationId) -> impl Iterator<Item = &ResidualEntry> {
        self.entries.iter().filter(move |e| e.equation == equation)
    }

    pub fn contains(&self, equation: EquationId) -> bool {
        self.get(equation).next().is_some()
    }

    /// Largest magnitude for one equation; zero when absent.
    pub fn max_for(&self, equation: EquationId) -> f64 {
        self.get(equation).map(|e| e.magnitude).fold(0.0, f64::max)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.entries.iter().map(|e| e.magnitude).fold(0.0, f64::max)
    }

    pub fn all_exact_zero(&self) -> bool {
        self.entries.iter().all(|e| e.exact_zero)
    }

    pub fn all_within(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.exact_zero || e.magnitude < tol)
    }

    /// First entry whose magnitude is not negligible for the backend.
    pub fn first_violation(&self, tol: f64) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| match self.backend {
            Backend::Exact => !e.exact_zero,
            Backend::Float => !(e.magnitude <= tol),
        })
    }
}
