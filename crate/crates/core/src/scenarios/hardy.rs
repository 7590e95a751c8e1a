//! The two interleaved interferometers, run for one beamsplitter configuration.

use crate::error::Result;
use crate::optics::{
    apply_annihilation, apply_first_beamsplitter, apply_second_beamsplitter, hardy_source,
    BeamsplitterConvention, Particle, ELECTRON, EXIT_C, EXIT_D, POSITRON,
};
use crate::state::{BasisLabel, StateVector};
use crate::Real;

/// Which reunifying beamsplitters are in place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HardyConfig {
    pub bs2_positron_present: bool,
    pub bs2_electron_present: bool,
}

impl HardyConfig {
    pub const ALL: [HardyConfig; 4] = [
        HardyConfig::new(true, true),
        HardyConfig::new(false, true),
        HardyConfig::new(true, false),
        HardyConfig::new(false, false),
    ];

    pub const fn new(bs2_positron_present: bool, bs2_electron_present: bool) -> Self {
        Self {
            bs2_positron_present,
            bs2_electron_present,
        }
    }

    /// Case number 1..=4: both present, positron's removed, electron's removed, both removed.
    pub fn case(self) -> u8 {
        match (self.bs2_positron_present, self.bs2_electron_present) {
            (true, true) => 1,
            (false, true) => 2,
            (true, false) => 3,
            (false, false) => 4,
        }
    }

    pub fn from_case(case: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.case() == case)
    }
}

/// Detection outcomes after the interferometers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExitOutcome {
    Annihilation,
    CC,
    CD,
    DC,
    DD,
}

impl ExitOutcome {
    pub const ALL: [ExitOutcome; 5] = [
        ExitOutcome::Annihilation,
        ExitOutcome::CC,
        ExitOutcome::CD,
        ExitOutcome::DC,
        ExitOutcome::DD,
    ];

    /// Ket name, e.g. `c+d-`.
    pub fn ket(self) -> &'static str {
        match self {
            ExitOutcome::Annihilation => "gamma",
            ExitOutcome::CC => "c+c-",
            ExitOutcome::CD => "c+d-",
            ExitOutcome::DC => "d+c-",
            ExitOutcome::DD => "d+d-",
        }
    }

    /// Report key, e.g. `p_cd`.
    pub fn key(self) -> &'static str {
        match self {
            ExitOutcome::Annihilation => "p_gamma",
            ExitOutcome::CC => "p_cc",
            ExitOutcome::CD => "p_cd",
            ExitOutcome::DC => "p_dc",
            ExitOutcome::DD => "p_dd",
        }
    }

    fn exits(self) -> Option<(&'static str, &'static str)> {
        match self {
            ExitOutcome::Annihilation => None,
            ExitOutcome::CC => Some((EXIT_C, EXIT_C)),
            ExitOutcome::CD => Some((EXIT_C, EXIT_D)),
            ExitOutcome::DC => Some((EXIT_D, EXIT_C)),
            ExitOutcome::DD => Some((EXIT_D, EXIT_D)),
        }
    }

    pub fn label(self, state: &StateVector<impl Real>) -> Result<BasisLabel> {
        match self.exits() {
            None => Ok(BasisLabel::Gamma),
            Some((p, e)) => state.layout().label(&[(POSITRON, p), (ELECTRON, e)]),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HardyRun<T> {
    pub config: HardyConfig,
    pub state: StateVector<T>,
    /// Probability of each outcome, in [`ExitOutcome::ALL`] order.
    pub probabilities: Vec<(ExitOutcome, T)>,
}

impl<T: Real> HardyRun<T> {
    pub fn probability(&self, outcome: ExitOutcome) -> T {
        self.probabilities
            .iter()
            .find(|(o, _)| *o == outcome)
            .map(|(_, p)| *p)
            .unwrap_or_else(T::zero)
    }
}

/// Both particles after the first splitters and the annihilation point.
pub fn after_annihilation<T: Real>(convention: &BeamsplitterConvention<T>) -> Result<StateVector<T>> {
    let s = apply_first_beamsplitter(&hardy_source(), Particle::Positron, convention)?;
    let s = apply_first_beamsplitter(&s, Particle::Electron, convention)?;
    apply_annihilation(&s)
}

pub fn run_hardy_gedanken_with<T: Real>(
    config: HardyConfig,
    convention: &BeamsplitterConvention<T>,
) -> Result<HardyRun<T>> {
    let s = after_annihilation(convention)?;
    let s = apply_second_beamsplitter(&s, Particle::Positron, config.bs2_positron_present, convention)?;
    let state =
        apply_second_beamsplitter(&s, Particle::Electron, config.bs2_electron_present, convention)?;
    let probabilities = ExitOutcome::ALL
        .iter()
        .map(|&o| Ok((o, state.probability(&o.label(&state)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(HardyRun {
        config,
        state,
        probabilities,
    })
}

/// Runs the gedankenexperiment with the default beamsplitter convention.
pub fn run_hardy_gedanken<T: Real>(config: HardyConfig) -> Result<HardyRun<T>> {
    run_hardy_gedanken_with(config, &BeamsplitterConvention::default())
}
