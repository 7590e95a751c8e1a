//! Occupation weak values computed two ways: from the closed-form pre/post-selected path
//! states, and from the simulated interferometer with the `d⁺d⁻` post-selection pulled back
//! through the reunifying splitters. The two pre-selected states differ in term phases
//! (`1,1,1` against `i,i,1`), yet every weak value agrees.

use num_complex::Complex;

use crate::error::Result;
use crate::optics::{pull_back_second_beamsplitter, BeamsplitterConvention, Particle, ELECTRON, EXIT_D, POSITRON};
use crate::scenarios::hardy::after_annihilation;
use crate::scenarios::photonic::occupation_family;
use crate::scenarios::reference::{exit_layout, postselected_paths, preselected_paths};
use crate::state::StateVector;
use crate::weak::{occupation_operator, weak_value};
use crate::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct OccupationRow<T> {
    pub name: &'static str,
    pub closed_form: Complex<T>,
    pub simulated: Complex<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OccupationCheck<T> {
    pub rows: Vec<OccupationRow<T>>,
    pub overlap_closed_form: Complex<T>,
    pub overlap_simulated: Complex<T>,
    /// Probability that the particles annihilate (dropped from the pre-selection).
    pub annihilation_probability: T,
    pub max_route_difference: T,
}

/// Pre- and post-selection on the path basis as produced by the simulated interferometer.
pub fn simulated_path_states<T: Real>(
    convention: &BeamsplitterConvention<T>,
) -> Result<(StateVector<T>, StateVector<T>, T)> {
    let after = after_annihilation(convention)?;
    let annihilation = after.gamma_amplitude().norm_sqr();
    let pre = after.discard_gamma().renormalized()?;

    let dd = StateVector::basis(exit_layout(), &[(POSITRON, EXIT_D), (ELECTRON, EXIT_D)])?;
    let post = pull_back_second_beamsplitter(&dd, Particle::Positron, true, convention)?;
    let post = pull_back_second_beamsplitter(&post, Particle::Electron, true, convention)?;
    Ok((pre, post, annihilation))
}

pub fn verify_occupation_routes<T: Real>() -> Result<OccupationCheck<T>> {
    let (pre_a, post_a) = (preselected_paths::<T>(), postselected_paths::<T>());
    let (pre_b, post_b, annihilation) = simulated_path_states(&BeamsplitterConvention::default())?;

    let mut rows = Vec::new();
    let mut max_diff = T::zero();
    for (name, which) in occupation_family() {
        let op = occupation_operator(which);
        let a = weak_value(&op, &pre_a, &post_a)?;
        let b = weak_value(&op, &pre_b, &post_b)?;
        max_diff = max_diff.max((a.value[0] - b.value[0]).norm());
        rows.push(OccupationRow {
            name,
            closed_form: a.value[0],
            simulated: b.value[0],
        });
    }
    Ok(OccupationCheck {
        rows,
        overlap_closed_form: crate::state::inner(&post_a, &pre_a)?,
        overlap_simulated: crate::state::inner(&post_b, &pre_b)?,
        annihilation_probability: annihilation,
        max_route_difference: max_diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_agree_on_every_occupation() {
        let check = verify_occupation_routes::<f64>().unwrap();
        let want = [1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, -1.0];
        for (row, w) in check.rows.iter().zip(want) {
            assert!((row.closed_form.re - w).abs() < 1e-12, "{}", row.name);
            assert!((row.simulated.re - w).abs() < 1e-12, "{}", row.name);
            assert!(row.closed_form.im.abs() < 1e-12 && row.simulated.im.abs() < 1e-12);
        }
        assert!(check.max_route_difference < 1e-12);
        let o = -1.0 / (2.0 * 3f64.sqrt());
        assert!((check.overlap_closed_form - Complex::new(o, 0.0)).norm() < 1e-12);
        assert!((check.overlap_simulated - Complex::new(o, 0.0)).norm() < 1e-12);
        assert!((check.annihilation_probability - 0.25).abs() < 1e-12);
    }

    #[test]
    fn simulated_preselection_carries_different_phases() {
        let (pre, _, _) = simulated_path_states::<f64>(&BeamsplitterConvention::default()).unwrap();
        let a = pre.amplitude_of(&[(POSITRON, "O"), (ELECTRON, "NO")]).unwrap();
        assert!((a - Complex::new(0.0, 1.0 / 3f64.sqrt())).norm() < 1e-12);
        assert!(crate::state::inner(&preselected_paths(), &pre).unwrap().norm() < 1.0 - 1e-3);
    }
}
