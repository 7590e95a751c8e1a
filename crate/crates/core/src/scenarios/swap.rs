//! Heralding the non-maximally entangled photon pair by entanglement swapping.
//!
//! Photons 1 and 3 (one from each `(|HH⟩ + |VV⟩)/√2` pair) pass polarizing beamsplitters.
//! Their transmitted `H` components feed the two inputs `a` (photon 1) and `b` (photon 3) of
//! a 50/50 beamsplitter; the reflected `V` components leave undetected. A bucket detector D′
//! on output `c` must fire while output `d` stays dark. The `V₁V₃` term sends nothing to the
//! combining splitter, so `|V₂V₄⟩` is removed from the heralded state of photons 2 and 4.
//!
//! The combining splitter gives the surviving terms different phases (`i`, `i`, `1`), and the
//! undetected `V` photons carry which-term information. [`SwapMode::Coherent`] treats both as
//! erased and compensates the phases with per-input phase shifts ([`PhaseCalibration`]);
//! [`SwapMode::Decohered`] keeps one branch per environment record.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::optics::fock::{hom_combine, FockModeState};
use crate::optics::{apply_pbs, photon, BeamsplitterConvention, H_TRANSMIT};
use crate::state::{fidelity, tensor, BasisLabel, Layout, StateVector, Subnormalized};
use crate::weak::photon_pair_layout;
use crate::{real, Real};

/// Environment label of the merged branch in coherent mode.
pub const ERASED: &str = "erased";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SwapMode {
    Coherent,
    Decohered,
}

impl SwapMode {
    pub fn name(self) -> &'static str {
        match self {
            SwapMode::Coherent => "coherent",
            SwapMode::Decohered => "decohered",
        }
    }
}

/// Phase shifts (radians) applied to inputs `a` and `b` of the combining splitter.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseCalibration<T> {
    pub phases: Vec<T>,
}

impl<T: Real> PhaseCalibration<T> {
    pub const INPUTS: usize = 2;

    /// Delays input `b` by a quarter wave, which equalizes the three heralded terms under the
    /// default convention.
    pub fn calibrated() -> Self {
        Self {
            phases: vec![T::zero(), real(-FRAC_PI_2)],
        }
    }

    pub fn none() -> Self {
        Self {
            phases: vec![T::zero(); Self::INPUTS],
        }
    }
}

impl<T: Real> Default for PhaseCalibration<T> {
    fn default() -> Self {
        Self::calibrated()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwapBranch<T> {
    /// Which photons left through the reflect ports, e.g. `V1`; `none` if neither.
    pub environment: String,
    pub state: Subnormalized<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwapResult<T> {
    pub mode: SwapMode,
    pub branches: Vec<SwapBranch<T>>,
    pub success_probability: T,
}

impl<T: Real> SwapResult<T> {
    /// The normalized heralded state (coherent mode only).
    pub fn heralded_state(&self) -> Result<StateVector<T>> {
        match (self.mode, self.branches.as_slice()) {
            (SwapMode::Coherent, [branch]) => branch.state.renormalized(),
            _ => Err(Error::Structure(
                "a pure heralded state exists only in coherent mode".into(),
            )),
        }
    }

    /// `|⟨target|ψ⟩|²` of the heralded state.
    pub fn fidelity_to(&self, target: &StateVector<T>) -> Result<T> {
        fidelity(target, &self.heralded_state()?)
    }
}

fn bell_pair<T: Real>(a: u8, b: u8) -> StateVector<T> {
    let layout = Layout::new(vec![photon(a), photon(b)]).expect("distinct ids");
    let s = Complex::new(real::<T>(0.5).sqrt(), T::zero());
    let (ia, ib) = (a.to_string(), b.to_string());
    StateVector::from_named(
        layout,
        &[
            (&[(ia.as_str(), "H"), (ib.as_str(), "H")], s),
            (&[(ia.as_str(), "V"), (ib.as_str(), "V")], s),
        ],
    )
    .expect("photon labels")
}

/// The four photons before any optics: two independent maximally entangled pairs.
pub fn four_photon_state<T: Real>() -> StateVector<T> {
    tensor(&bell_pair(1, 2), &bell_pair(3, 4)).expect("disjoint pairs")
}

pub fn run_entanglement_swap<T: Real>(
    mode: SwapMode,
    calibration: &PhaseCalibration<T>,
    convention: &BeamsplitterConvention<T>,
) -> Result<SwapResult<T>> {
    if calibration.phases.len() != PhaseCalibration::<T>::INPUTS {
        return Err(Error::Calibration {
            expected: PhaseCalibration::<T>::INPUTS,
            got: calibration.phases.len(),
        });
    }
    let split = apply_pbs(&apply_pbs(&four_photon_state::<T>(), "1")?, "3")?;
    let layout = split.layout().clone();
    let pos = |id: &str| layout.position(id);
    let (p1, p2, p3, p4) = (pos("1")?, pos("2")?, pos("3")?, pos("4")?);
    let transmit = |p: usize| layout.subsystems()[p].level_index(H_TRANSMIT);
    let (t1, t3) = (transmit(p1)?, transmit(p3)?);

    let target_layout = photon_pair_layout();
    let mut branches: BTreeMap<String, BTreeMap<BasisLabel, Complex<T>>> = BTreeMap::new();

    for (label, amp) in split.iter() {
        let BasisLabel::Product(levels) = label else {
            continue;
        };
        let n_a = u8::from(levels[p1] == t1);
        let n_b = u8::from(levels[p3] == t3);
        let mut environment = String::new();
        if n_a == 0 {
            environment.push_str("V1");
        }
        if n_b == 0 {
            environment.push_str("V3");
        }
        if environment.is_empty() {
            environment.push_str("none");
        }

        let phase = calibration.phases[0] * real(f64::from(n_a))
            + calibration.phases[1] * real(f64::from(n_b));
        let input = FockModeState::new(["a", "b"])
            .with_term(&[n_a, n_b], *amp * Complex::from_polar(T::one(), phase))?;
        let output = hom_combine(&input, convention, ("c", "d"))?;

        let kept = BasisLabel::Product(vec![levels[p2], levels[p4]]);
        for (occ, a) in output.iter() {
            // D′ fires on one or more photons at `c`; `d` must stay empty
            if occ[0] >= 1 && occ[1] == 0 {
                let key = match mode {
                    SwapMode::Coherent => ERASED.to_owned(),
                    SwapMode::Decohered => environment.clone(),
                };
                *branches
                    .entry(key)
                    .or_default()
                    .entry(kept.clone())
                    .or_default() += *a;
            }
        }
    }

    let branches: Vec<SwapBranch<T>> = branches
        .into_iter()
        .map(|(environment, amps)| SwapBranch {
            environment,
            state: Subnormalized::new(StateVector::assemble(target_layout.clone(), amps)),
        })
        .collect();
    let success_probability = branches
        .iter()
        .fold(T::zero(), |acc, b| acc + b.state.weight);
    Ok(SwapResult {
        mode,
        branches,
        success_probability,
    })
}
