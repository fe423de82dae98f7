//! Exact and floating-point verification of the two-constituent split of
//! Dirac plane-wave solutions.
//!
//! Everything is generic over a real scalar implementing [`Real`]: an exact
//! rational backend and `f64`/`f32` float backends. The aliases at the crate
//! root pick the common instantiations.

pub mod algebra;
pub mod error;
pub mod field;
pub mod gamma;
pub mod lorentz;
pub mod projector;
pub mod residual;
pub mod scalar;
pub mod subsolution;
pub mod verify;

pub use algebra::{mat_exp, pauli, Mat, Mat2, Mat4};
pub use error::{Error, Result};
pub use field::{
    dirac_residual, u_spinor, weyl_spinor, Chirality, FourMomentum, FreqSign, MomentumOperator, PlaneWaveField,
    PlaneWaveTerm, Spin,
};
pub use gamma::{intertwiner, GammaRep, Intertwiner, RepName};
pub use projector::{build_projectors, ProjectorSet};
pub use residual::{EquationId, ResidualEntry, ResidualReport};
pub use scalar::{Backend, ExactReal, Rational, Real};

use num_complex::Complex;

pub type ExactScalar = Complex<Rational>;
pub type FloatScalar = Complex<f64>;
pub type ExactMat4 = Mat4<Rational>;
pub type FloatMat4 = Mat4<f64>;
pub type ExactGammaRep = GammaRep<Rational>;
pub type FloatGammaRep = GammaRep<f64>;
pub type ExactField = PlaneWaveField<Rational>;
pub type FloatField = PlaneWaveField<f64>;
pub type ExactMomentum = FourMomentum<Rational>;
pub type FloatMomentum = FourMomentum<f64>;
