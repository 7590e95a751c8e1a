//! The locality argument as a finite satisfiability problem.
//!
//! `C±(∞)` records whether the positron/electron exits at `c` with its reunifying splitter
//! removed, `D±(0)` whether it exits at `d` with the splitter in place. Local hidden values
//! would have to fix all four at once. Each constraint is read off a simulated configuration,
//! and an exhaustive search over the 16 assignments shows that none satisfies all of them.

use crate::error::Result;
use crate::scenarios::hardy::{run_hardy_gedanken, ExitOutcome, HardyConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub c_plus_removed: bool,
    pub c_minus_removed: bool,
    pub d_plus_present: bool,
    pub d_minus_present: bool,
}

impl Assignment {
    /// All 16 assignments, `(C⁺, C⁻, D⁺, D⁻)` counted in binary.
    pub fn all() -> impl Iterator<Item = Assignment> {
        (0u8..16).map(|bits| Assignment {
            c_plus_removed: bits & 8 != 0,
            c_minus_removed: bits & 4 != 0,
            d_plus_present: bits & 2 != 0,
            d_minus_present: bits & 1 != 0,
        })
    }

    /// `[C⁺(∞), C⁻(∞), D⁺(0), D⁻(0)]` as 0/1.
    pub fn bits(self) -> [u8; 4] {
        [
            self.c_plus_removed,
            self.c_minus_removed,
            self.d_plus_present,
            self.d_minus_present,
        ]
        .map(u8::from)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// `C⁺(∞)C⁻(∞) = 0`: with both splitters removed the particles never both exit at `c`.
    NoJointCWhenBothRemoved,
    /// `D⁺(0) = 1 ⇒ C⁻(∞) = 1`: electron's splitter removed, positron at `d` forces electron at `c`.
    PositronDForcesElectronC,
    /// `D⁻(0) = 1 ⇒ C⁺(∞) = 1`.
    ElectronDForcesPositronC,
    /// `D⁺(0)D⁻(0) = 1`: the coincidence that does occur with both splitters in place.
    JointDWhenBothPresent,
}

impl Constraint {
    pub const ALL: [Constraint; 4] = [
        Constraint::NoJointCWhenBothRemoved,
        Constraint::PositronDForcesElectronC,
        Constraint::ElectronDForcesPositronC,
        Constraint::JointDWhenBothPresent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constraint::NoJointCWhenBothRemoved => "C+(inf)*C-(inf) = 0",
            Constraint::PositronDForcesElectronC => "D+(0) = 1 => C-(inf) = 1",
            Constraint::ElectronDForcesPositronC => "D-(0) = 1 => C+(inf) = 1",
            Constraint::JointDWhenBothPresent => "D+(0)*D-(0) = 1",
        }
    }

    pub fn holds(self, a: Assignment) -> bool {
        match self {
            Constraint::NoJointCWhenBothRemoved => !(a.c_plus_removed && a.c_minus_removed),
            Constraint::PositronDForcesElectronC => !a.d_plus_present || a.c_minus_removed,
            Constraint::ElectronDForcesPositronC => !a.d_minus_present || a.c_plus_removed,
            Constraint::JointDWhenBothPresent => a.d_plus_present && a.d_minus_present,
        }
    }

    /// The configuration whose statistics justify the constraint, and the outcome probability
    /// that does so: zero for the three exclusions, non-zero for the coincidence.
    pub fn evidence(self) -> (HardyConfig, ExitOutcome) {
        match self {
            Constraint::NoJointCWhenBothRemoved => (HardyConfig::new(false, false), ExitOutcome::CC),
            // with the electron's splitter removed, d⁺ never pairs with d⁻
            Constraint::PositronDForcesElectronC => (HardyConfig::new(true, false), ExitOutcome::DD),
            Constraint::ElectronDForcesPositronC => (HardyConfig::new(false, true), ExitOutcome::DD),
            Constraint::JointDWhenBothPresent => (HardyConfig::new(true, true), ExitOutcome::DD),
        }
    }
}

/// Outcome of the exhaustive search.
#[derive(Clone, Debug, PartialEq)]
pub struct CounterfactualReport {
    pub constraints: Vec<Constraint>,
    /// Simulated probability backing each constraint (see [`Constraint::evidence`]).
    pub evidence: Vec<(Constraint, f64)>,
    /// Every assignment with the constraints it violates.
    pub failures: Vec<(Assignment, Vec<Constraint>)>,
    pub satisfying: Vec<Assignment>,
}

/// Assignments satisfying every constraint in `constraints`.
pub fn satisfying_assignments(constraints: &[Constraint]) -> Vec<Assignment> {
    Assignment::all()
        .filter(|&a| constraints.iter().all(|c| c.holds(a)))
        .collect()
}

pub fn counterfactual_check() -> Result<CounterfactualReport> {
    let constraints = Constraint::ALL.to_vec();
    let evidence = constraints
        .iter()
        .map(|&c| {
            let (config, outcome) = c.evidence();
            Ok((c, run_hardy_gedanken::<f64>(config)?.probability(outcome)))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures = Assignment::all()
        .map(|a| {
            let failed = constraints.iter().copied().filter(|c| !c.holds(a)).collect();
            (a, failed)
        })
        .collect();
    Ok(CounterfactualReport {
        satisfying: satisfying_assignments(&constraints),
        constraints,
        evidence,
        failures,
    })
}
