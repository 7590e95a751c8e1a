//! End-to-end presets.

pub mod counterfactual;
pub mod hardy;
pub mod occupation;
pub mod photonic;
pub mod reference;
pub mod swap;

pub use counterfactual::{counterfactual_check, Assignment, Constraint, CounterfactualReport};
pub use hardy::{run_hardy_gedanken, ExitOutcome, HardyConfig, HardyRun};
pub use occupation::{verify_occupation_routes, OccupationCheck};
pub use photonic::{run_photonic_weak, PhotonicWeakReport};
pub use swap::{run_entanglement_swap, PhaseCalibration, SwapBranch, SwapMode, SwapResult};
