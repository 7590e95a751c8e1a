//! Closed-form states the simulated pipelines are checked against.

use num_complex::Complex;

use crate::optics::{ELECTRON, EXIT_C, EXIT_D, POSITRON};
use crate::scenarios::hardy::HardyConfig;
use crate::state::{BasisLabel, Layout, StateVector, Subsystem};
use crate::weak::{path_layout, photon_pair_layout};
use crate::{real, Real};

/// `+:{c,d} ⊗ -:{c,d}`.
pub fn exit_layout() -> Layout {
    Layout::new(vec![
        Subsystem::new(POSITRON, [EXIT_C, EXIT_D]),
        Subsystem::new(ELECTRON, [EXIT_C, EXIT_D]),
    ])
    .expect("distinct ids")
}

/// Final two-particle state for each beamsplitter configuration, written out term by term:
/// `(gamma, c⁺c⁻, c⁺d⁻, d⁺c⁻, d⁺d⁻)` amplitudes.
pub fn expected_exit_amplitudes<T: Real>(config: HardyConfig) -> [Complex<T>; 5] {
    let c = |re: f64, im: f64| Complex::new(real::<T>(re), real::<T>(im));
    let r2 = std::f64::consts::SQRT_2;
    let q = 1.0 / (2.0 * r2);
    match (config.bs2_positron_present, config.bs2_electron_present) {
        (true, true) => [
            c(-0.5, 0.0),
            c(-0.75, 0.0),
            c(0.0, 0.25),
            c(0.0, 0.25),
            c(-0.25, 0.0),
        ],
        (false, true) => [
            c(-r2 * q, 0.0),
            c(-q, 0.0),
            c(0.0, q),
            c(0.0, 2.0 * q),
            c(0.0, 0.0),
        ],
        (true, false) => [
            c(-r2 * q, 0.0),
            c(-q, 0.0),
            c(0.0, 2.0 * q),
            c(0.0, q),
            c(0.0, 0.0),
        ],
        (false, false) => [
            c(-0.5, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.5),
            c(0.0, 0.5),
            c(0.5, 0.0),
        ],
    }
}

pub fn expected_exit_state<T: Real>(config: HardyConfig) -> StateVector<T> {
    let layout = exit_layout();
    let amps = expected_exit_amplitudes::<T>(config);
    let labels = std::iter::once(BasisLabel::Gamma).chain(layout.product_labels());
    StateVector::from_amplitudes(
        layout.clone(),
        labels
            .zip(amps)
            .filter(|(_, a)| *a != Complex::default())
            .collect::<Vec<_>>(),
    )
    .expect("exit labels")
}

/// Electron and positron just after the annihilation point, given no annihilation:
/// `(|O⁺NO⁻⟩ + |NO⁺O⁻⟩ + |NO⁺NO⁻⟩)/√3`.
pub fn preselected_paths<T: Real>() -> StateVector<T> {
    let s = Complex::new(real::<T>(1.0 / 3f64.sqrt()), T::zero());
    StateVector::from_named(
        path_layout(),
        &[
            (&[(POSITRON, "O"), (ELECTRON, "NO")], s),
            (&[(POSITRON, "NO"), (ELECTRON, "O")], s),
            (&[(POSITRON, "NO"), (ELECTRON, "NO")], s),
        ],
    )
    .expect("path labels")
}

/// Both `d` detectors firing, on the path basis: `(|NO⁺⟩ − |O⁺⟩)(|NO⁻⟩ − |O⁻⟩)/2`.
pub fn postselected_paths<T: Real>() -> StateVector<T> {
    let h = real::<T>(0.5);
    let p = Complex::new(h, T::zero());
    let m = Complex::new(-h, T::zero());
    StateVector::from_named(
        path_layout(),
        &[
            (&[(POSITRON, "O"), (ELECTRON, "O")], p),
            (&[(POSITRON, "O"), (ELECTRON, "NO")], m),
            (&[(POSITRON, "NO"), (ELECTRON, "O")], m),
            (&[(POSITRON, "NO"), (ELECTRON, "NO")], p),
        ],
    )
    .expect("path labels")
}

/// Non-maximally entangled target of the swap: `(|H₂H₄⟩ + |H₂V₄⟩ + |V₂H₄⟩)/√3`.
pub fn hardy_photon_state<T: Real>() -> StateVector<T> {
    let s = Complex::new(real::<T>(1.0 / 3f64.sqrt()), T::zero());
    StateVector::from_named(
        photon_pair_layout(),
        &[
            (&[("2", "H"), ("4", "H")], s),
            (&[("2", "H"), ("4", "V")], s),
            (&[("2", "V"), ("4", "H")], s),
        ],
    )
    .expect("photon labels")
}

/// `(|H₂H₄⟩ − |H₂V₄⟩ − |V₂H₄⟩ + |V₂V₄⟩)/2`.
pub fn bipartite_postselection<T: Real>() -> StateVector<T> {
    let h = real::<T>(0.5);
    let p = Complex::new(h, T::zero());
    let m = Complex::new(-h, T::zero());
    StateVector::from_named(
        photon_pair_layout(),
        &[
            (&[("2", "H"), ("4", "H")], p),
            (&[("2", "H"), ("4", "V")], m),
            (&[("2", "V"), ("4", "H")], m),
            (&[("2", "V"), ("4", "V")], p),
        ],
    )
    .expect("photon labels")
}

/// Two maximally entangled pairs `(|HH⟩ + |VV⟩)/√2` on photons (1,2) and (3,4), written out.
pub fn four_photon_source<T: Real>() -> StateVector<T> {
    let layout = Layout::new((1..=4).map(crate::optics::photon).collect()).expect("distinct ids");
    let q = Complex::new(real::<T>(0.5), T::zero());
    StateVector::from_named(
        layout,
        &[
            (&[("1", "H"), ("2", "H"), ("3", "H"), ("4", "H")], q),
            (&[("1", "V"), ("2", "V"), ("3", "H"), ("4", "H")], q),
            (&[("1", "H"), ("2", "H"), ("3", "V"), ("4", "V")], q),
            (&[("1", "V"), ("2", "V"), ("3", "V"), ("4", "V")], q),
        ],
    )
    .expect("photon labels")
}
