//! Weak arrival-time measurement on the heralded photon pair.

use num_complex::Complex;

use crate::error::Result;
use crate::optics::{postselection_state, BeamsplitterConvention};
use crate::scenarios::swap::{run_entanglement_swap, PhaseCalibration, SwapMode};
use crate::state::StateVector;
use crate::weak::{
    arrival_time_operator, occupation_operator, path_layout, projector_weak_decomposition,
    recombine, weak_value, ArrivalKind, Arm, Occupation, PathDictionary, MEASURED_PHOTONS,
};
use crate::optics::Particle;
use crate::{real, Real};

/// One projector of the joint arrival-time operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionEntry<T> {
    /// Photon-basis ket, e.g. `H2V4`.
    pub label: String,
    /// The same ket in the path basis, e.g. `NO+O-`.
    pub path_label: String,
    pub weight: Vec<T>,
    pub weak_value: Complex<T>,
}

/// An occupation number evaluated on the photon states through [`PathDictionary`].
#[derive(Clone, Debug, PartialEq)]
pub struct OccupationEntry<T> {
    pub name: &'static str,
    pub weak_value: Complex<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhotonicWeakReport<T> {
    pub gamma: T,
    pub epsilon: T,
    pub phi: T,
    pub pre: StateVector<T>,
    pub post: StateVector<T>,
    pub herald_probability: T,
    pub overlap: Complex<T>,
    pub success_probability: T,
    pub photon2: Complex<T>,
    pub photon4: Complex<T>,
    pub joint: Vec<Complex<T>>,
    pub decomposition: Vec<DecompositionEntry<T>>,
    /// `Σ weight · weak value` over [`Self::decomposition`].
    pub recombined: Vec<Complex<T>>,
    pub occupations: Vec<OccupationEntry<T>>,
    /// Joint weak value equals `(γ,ε) + (ε,γ) − (γ,γ)` componentwise.
    pub paradox_identity_holds: bool,
}

/// The eight occupation numbers with their names.
pub fn occupation_family() -> [(&'static str, Occupation); 8] {
    use Arm::{NonOverlapping as NO, Overlapping as O};
    use Particle::{Electron, Positron};
    [
        ("N-_O", Occupation::Single(Electron, O)),
        ("N+_O", Occupation::Single(Positron, O)),
        ("N-_NO", Occupation::Single(Electron, NO)),
        ("N+_NO", Occupation::Single(Positron, NO)),
        ("N_O,O", Occupation::Joint(O, O)),
        ("N_O,NO", Occupation::Joint(O, NO)),
        ("N_NO,O", Occupation::Joint(NO, O)),
        ("N_NO,NO", Occupation::Joint(NO, NO)),
    ]
}

/// Heralds the pair (coherent, calibrated), post-selects both photons at basis angle `phi`,
/// and evaluates every arrival-time weak value.
pub fn run_photonic_weak<T: Real>(gamma: T, epsilon: T, phi: T) -> Result<PhotonicWeakReport<T>> {
    let convention = BeamsplitterConvention::default();
    let swap = run_entanglement_swap(SwapMode::Coherent, &PhaseCalibration::calibrated(), &convention)?;
    let pre = swap.heralded_state()?;
    let post = postselection_state(&MEASURED_PHOTONS, phi)?;

    let single2 = weak_value(&arrival_time_operator(ArrivalKind::Photon2, gamma, epsilon), &pre, &post)?;
    let single4 = weak_value(&arrival_time_operator(ArrivalKind::Photon4, gamma, epsilon), &pre, &post)?;
    let joint_op = arrival_time_operator(ArrivalKind::Joint, gamma, epsilon);
    let joint = weak_value(&joint_op, &pre, &post)?;

    let dictionary = PathDictionary;
    let terms = projector_weak_decomposition(&joint_op, &pre, &post)?;
    let recombined = recombine(&terms, joint_op.dim());
    let decomposition = terms
        .iter()
        .map(|t| {
            Ok(DecompositionEntry {
                label: pre.layout().label_name(&t.label),
                path_label: path_layout().label_name(&dictionary.to_path_label(&t.label)?),
                weight: t.weight.clone(),
                weak_value: t.weak_value,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let path_pre = dictionary.to_path_state(&pre)?;
    let path_post = dictionary.to_path_state(&post)?;
    let occupations = occupation_family()
        .into_iter()
        .map(|(name, which)| {
            Ok(OccupationEntry {
                name,
                weak_value: weak_value(&occupation_operator(which), &path_pre, &path_post)?.value[0],
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let expected = [epsilon, epsilon];
    let scale = T::one() + gamma.abs().max(epsilon.abs());
    let tol = real::<T>(1e-12) * scale;
    let paradox_identity_holds = joint
        .value
        .iter()
        .zip(expected)
        .all(|(w, e)| (*w - Complex::new(e, T::zero())).norm() <= tol);

    Ok(PhotonicWeakReport {
        gamma,
        epsilon,
        phi,
        herald_probability: swap.success_probability,
        overlap: joint.overlap,
        success_probability: joint.success_probability,
        photon2: single2.value[0],
        photon4: single4.value[0],
        joint: joint.value,
        decomposition,
        recombined,
        occupations,
        paradox_identity_holds,
        pre,
        post,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    type C = Complex<f64>;

    #[test]
    fn arrival_weak_values_at_unit_delay() {
        let r = run_photonic_weak(0.0, 1.0, -FRAC_PI_4).unwrap();
        assert!((r.photon2 - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r.photon4 - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r.joint[0] - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r.joint[1] - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!(r.paradox_identity_holds);
        assert!((r.success_probability - 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn equal_delays_are_trivial() {
        let r = run_photonic_weak(1.0, 1.0, -FRAC_PI_4).unwrap();
        for w in [r.photon2, r.photon4, r.joint[0], r.joint[1]] {
            assert!((w - C::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn decomposition_in_both_vocabularies() {
        let r = run_photonic_weak(0.3, 1.7, -FRAC_PI_4).unwrap();
        let got: Vec<_> = r
            .decomposition
            .iter()
            .map(|d| (d.label.as_str(), d.path_label.as_str(), d.weak_value.re))
            .collect();
        let want = [
            ("H2H4", "NO+NO-", -1.0),
            ("H2V4", "NO+O-", 1.0),
            ("V2H4", "O+NO-", 1.0),
            ("V2V4", "O+O-", 0.0),
        ];
        for (g, w) in got.iter().zip(want) {
            assert_eq!((g.0, g.1), (w.0, w.1));
            assert!((g.2 - w.2).abs() < 1e-12);
        }
        assert_eq!(r.decomposition[0].weight, vec![0.3, 0.3]);
        for (x, y) in r.recombined.iter().zip(&r.joint) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn occupation_translation() {
        let r = run_photonic_weak(0.0, 1.0, -FRAC_PI_4).unwrap();
        let want = [1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, -1.0];
        for (o, w) in r.occupations.iter().zip(want) {
            assert!((o.weak_value - C::new(w, 0.0)).norm() < 1e-12, "{}", o.name);
        }
    }

    #[test]
    fn other_angles_break_the_identity() {
        let r = run_photonic_weak(0.0, 1.0, -0.3).unwrap();
        assert!(!r.paradox_identity_holds);
    }
}
