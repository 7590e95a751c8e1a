//! Hardy's paradox and its weak-measurement implementation with photons.
//!
//! The crate is organised bottom-up:
//!
//! * [`state`] labeled tensor-product state vectors (plus the annihilation channel `GAMMA`),
//! * [`optics`] beamsplitters, polarizing beamsplitters, polarization rotations and
//!   two-photon interference on a Fock basis,
//! * [`weak`] the weak-value engine together with occupation-number and arrival-time
//!   observables,
//! * [`pointer`] finite-strength Gaussian arrival-time pointers,
//! * [`scenarios`] end-to-end presets (the gedankenexperiment, the counterfactual argument,
//!   the entanglement swap and the photonic weak measurement).
//!
//! All numerical code is generic over the real scalar `T: Real` (`f32` or `f64`).
//! The `*64` aliases at the crate root pin `f64`, which is what the tolerances quoted in
//! the tests refer to.

pub mod error;
pub mod optics;
pub mod pointer;
pub mod scenarios;
pub mod state;
pub mod weak;

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub use num_complex::Complex;

pub use crate::error::{Error, Result};
pub use crate::optics::fock::{hom_combine, FockModeState};
pub use crate::optics::BeamsplitterConvention;
pub use crate::pointer::{Measured, PointerMoments, PointerProfile, PointerSpec, SweepRow};
pub use crate::state::{BasisLabel, Layout, StateVector, Subnormalized, Subsystem};
pub use crate::weak::{WeakValueReport, WeightedProjectorSum};

/// Real scalar the simulator is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[cfg(test)]
pub(crate) fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(real(re), real(im))
}

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type Subnormalized64 = Subnormalized<f64>;
pub type FockModeState64 = FockModeState<f64>;
pub type WeightedProjectorSum64 = WeightedProjectorSum<f64>;
pub type WeakValueReport64 = WeakValueReport<f64>;
pub type PointerSpec64 = PointerSpec<f64>;
pub type PointerProfile64 = PointerProfile<f64>;
pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;
