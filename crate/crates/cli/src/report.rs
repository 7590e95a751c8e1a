//! Scenario execution and the serializable report types.

use std::collections::BTreeMap;

use hardy_core::optics::postselection_state;
use hardy_core::pointer::{build_pointer_profile, pointer_moments, weak_limit_sweep};
use hardy_core::scenarios::counterfactual::satisfying_assignments;
use hardy_core::scenarios::hardy::HardyConfig;
use hardy_core::scenarios::reference::hardy_photon_state;
use hardy_core::scenarios::swap::{run_entanglement_swap, PhaseCalibration, SwapMode};
use hardy_core::scenarios::{counterfactual_check, run_hardy_gedanken, run_photonic_weak, Assignment, Constraint, ExitOutcome};
use hardy_core::weak::{arrival_time_operator, weak_value, MEASURED_PHOTONS};
use hardy_core::{BeamsplitterConvention, Complex64, Measured, PointerSpec, StateVector64};
use serde::Serialize;

use crate::config::{Parameters, RunConfig, Scenario, SwapModeName, Sweep};
use crate::error::CliError;
use crate::rational::nearest_rational;

/// Turns `-0.0` into `0.0` so reports never print a signed zero.
fn unsigned_zero(x: f64) -> f64 {
    x + 0.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cplx {
    fn from(c: Complex64) -> Self {
        Self {
            re: unsigned_zero(c.re),
            im: unsigned_zero(c.im),
        }
    }
}

fn state_amplitudes(state: &StateVector64) -> BTreeMap<String, Cplx> {
    state
        .iter()
        .map(|(label, a)| (state.layout().label_name(label), Cplx::from(*a)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HardyConfigOut {
    pub case: u8,
    pub bs2_plus: bool,
    pub bs2_minus: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HardyRow {
    pub key: &'static str,
    pub label: &'static str,
    pub amplitude: Cplx,
    pub probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HardyReport {
    pub config: HardyConfigOut,
    pub amplitudes: BTreeMap<String, Cplx>,
    pub probabilities: BTreeMap<String, serde_json::Value>,
    #[serde(skip)]
    pub rows: Vec<HardyRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssignmentOut {
    #[serde(rename = "C+(inf)")]
    pub c_plus: u8,
    #[serde(rename = "C-(inf)")]
    pub c_minus: u8,
    #[serde(rename = "D+(0)")]
    pub d_plus: u8,
    #[serde(rename = "D-(0)")]
    pub d_minus: u8,
}

impl From<Assignment> for AssignmentOut {
    fn from(a: Assignment) -> Self {
        let [c_plus, c_minus, d_plus, d_minus] = a.bits();
        Self {
            c_plus,
            c_minus,
            d_plus,
            d_minus,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintOut {
    pub name: &'static str,
    pub evidence_case: u8,
    pub evidence_outcome: &'static str,
    pub probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probability_rational: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssignmentCheck {
    pub assignment: AssignmentOut,
    pub violated: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelaxedSearch {
    pub dropped: &'static str,
    pub count: usize,
    pub satisfying_assignments: Vec<AssignmentOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterfactualOut {
    pub constraints: Vec<ConstraintOut>,
    pub satisfying_assignments: Vec<AssignmentOut>,
    pub without_joint_detection: RelaxedSearch,
    pub assignments: Vec<AssignmentCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapBranchOut {
    pub environment: String,
    pub weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_rational: Option<String>,
    /// Fidelity of the renormalized branch to the target pair state.
    pub fidelity: f64,
    pub amplitudes: BTreeMap<String, Cplx>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapOut {
    pub mode: &'static str,
    pub calibration_phases: Vec<f64>,
    pub success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success_probability_rational: Option<String>,
    pub fidelity: Option<f64>,
    pub branches: Vec<SwapBranchOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionOut {
    pub label: String,
    pub path_label: String,
    pub weight: Vec<f64>,
    pub weak_value: Cplx,
}

#[derive(Clone, Debug, Serialize)]
pub struct OccupationOut {
    pub name: &'static str,
    pub weak_value: Cplx,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhotonicOut {
    pub gamma: f64,
    pub epsilon: f64,
    pub phi: f64,
    pub herald_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub herald_probability_rational: Option<String>,
    pub overlap: Cplx,
    pub success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success_probability_rational: Option<String>,
    #[serde(rename = "A2_w")]
    pub a2_w: Cplx,
    #[serde(rename = "A4_w")]
    pub a4_w: Cplx,
    #[serde(rename = "A24_w")]
    pub a24_w: Vec<Cplx>,
    pub decomposition: Vec<DecompositionOut>,
    pub recombined: Vec<Cplx>,
    pub occupations: Vec<OccupationOut>,
    pub paradox_identity_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasurementOut {
    pub measured: &'static str,
    pub mean: Vec<f64>,
    pub variance: Vec<f64>,
    pub weak_value: Vec<Cplx>,
    pub deviation: Vec<f64>,
    pub success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success_probability_rational: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointerOut {
    pub gamma: f64,
    pub epsilon: f64,
    pub sigma: f64,
    pub phi: f64,
    pub r: f64,
    pub grid_points: usize,
    pub measurements: Vec<MeasurementOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRowOut {
    pub measured: &'static str,
    pub sigma: f64,
    pub r: f64,
    pub mean: Vec<f64>,
    pub deviation: Vec<f64>,
    pub success_probability: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointerSweepOut {
    pub gamma: f64,
    pub epsilon: f64,
    pub phi: f64,
    pub grid_points: usize,
    pub rows: Vec<SweepRowOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSpecOut {
    pub param: &'static str,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepOut {
    pub sweep: SweepSpecOut,
    pub runs: Vec<Report>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Hardy(HardyReport),
    Counterfactual(CounterfactualOut),
    Swap(SwapOut),
    Photonic(PhotonicOut),
    Pointer(PointerOut),
    PointerSweep(PointerSweepOut),
    Sweep(SweepOut),
}

fn hardy(p: &Parameters) -> Result<Report, CliError> {
    let config = HardyConfig::new(p.bs2_plus, p.bs2_minus);
    let run = run_hardy_gedanken::<f64>(config)?;
    let mut rows = Vec::new();
    let mut amplitudes = BTreeMap::new();
    let mut probabilities = BTreeMap::new();
    for outcome in ExitOutcome::ALL {
        let label = outcome.label(&run.state)?;
        let amplitude = Cplx::from(run.state.amplitude(&label));
        let probability = unsigned_zero(run.probability(outcome));
        let rational = nearest_rational(probability);
        amplitudes.insert(outcome.ket().to_owned(), amplitude);
        probabilities.insert(outcome.key().to_owned(), probability.into());
        if let Some(r) = &rational {
            probabilities.insert(format!("{}_rational", outcome.key()), r.clone().into());
        }
        rows.push(HardyRow {
            key: outcome.key(),
            label: outcome.ket(),
            amplitude,
            probability,
            rational,
        });
    }
    Ok(Report::Hardy(HardyReport {
        config: HardyConfigOut {
            case: config.case(),
            bs2_plus: p.bs2_plus,
            bs2_minus: p.bs2_minus,
        },
        amplitudes,
        probabilities,
        rows,
    }))
}

fn counterfactual() -> Result<Report, CliError> {
    let report = counterfactual_check()?;
    let constraints = report
        .evidence
        .iter()
        .map(|&(c, p)| {
            let (config, outcome) = c.evidence();
            let p = unsigned_zero(p);
            ConstraintOut {
                name: c.name(),
                evidence_case: config.case(),
                evidence_outcome: outcome.key(),
                probability: p,
                probability_rational: nearest_rational(p),
            }
        })
        .collect();
    let dropped = Constraint::JointDWhenBothPresent;
    let relaxed: Vec<Constraint> = Constraint::ALL.into_iter().filter(|&c| c != dropped).collect();
    let relaxed = satisfying_assignments(&relaxed);
    Ok(Report::Counterfactual(CounterfactualOut {
        constraints,
        satisfying_assignments: report.satisfying.into_iter().map(Into::into).collect(),
        without_joint_detection: RelaxedSearch {
            dropped: dropped.name(),
            count: relaxed.len(),
            satisfying_assignments: relaxed.into_iter().map(Into::into).collect(),
        },
        assignments: report
            .failures
            .into_iter()
            .map(|(a, failed)| AssignmentCheck {
                assignment: a.into(),
                violated: failed.into_iter().map(Constraint::name).collect(),
            })
            .collect(),
    }))
}

fn swap(p: &Parameters) -> Result<Report, CliError> {
    let mode = match p.swap_mode {
        SwapModeName::Coherent => SwapMode::Coherent,
        SwapModeName::Decohered => SwapMode::Decohered,
    };
    let calibration = PhaseCalibration::<f64>::calibrated();
    let result = run_entanglement_swap(mode, &calibration, &BeamsplitterConvention::default())?;
    let target = hardy_photon_state::<f64>();
    let fidelity = match mode {
        SwapMode::Coherent => Some(result.fidelity_to(&target)?),
        SwapMode::Decohered => None,
    };
    let branches = result
        .branches
        .iter()
        .map(|b| {
            let state = b.state.renormalized()?;
            Ok(SwapBranchOut {
                environment: b.environment.clone(),
                weight: b.state.weight,
                weight_rational: nearest_rational(b.state.weight),
                fidelity: hardy_core::state::fidelity(&target, &state)?,
                amplitudes: state_amplitudes(&b.state.state),
            })
        })
        .collect::<Result<Vec<_>, hardy_core::Error>>()?;
    Ok(Report::Swap(SwapOut {
        mode: mode.name(),
        calibration_phases: calibration.phases.iter().map(|&x| unsigned_zero(x)).collect(),
        success_probability: result.success_probability,
        success_probability_rational: nearest_rational(result.success_probability),
        fidelity,
        branches,
    }))
}

fn photonic(p: &Parameters) -> Result<Report, CliError> {
    let r = run_photonic_weak(p.gamma, p.epsilon, p.phi)?;
    let cplx = |v: &[Complex64]| v.iter().map(|&c| Cplx::from(c)).collect::<Vec<_>>();
    Ok(Report::Photonic(PhotonicOut {
        gamma: p.gamma,
        epsilon: p.epsilon,
        phi: p.phi,
        herald_probability: r.herald_probability,
        herald_probability_rational: nearest_rational(r.herald_probability),
        overlap: r.overlap.into(),
        success_probability: r.success_probability,
        success_probability_rational: nearest_rational(r.success_probability),
        a2_w: r.photon2.into(),
        a4_w: r.photon4.into(),
        a24_w: cplx(&r.joint),
        decomposition: r
            .decomposition
            .iter()
            .map(|d| DecompositionOut {
                label: d.label.clone(),
                path_label: d.path_label.clone(),
                weight: d.weight.iter().map(|&w| unsigned_zero(w)).collect(),
                weak_value: d.weak_value.into(),
            })
            .collect(),
        recombined: cplx(&r.recombined),
        occupations: r
            .occupations
            .iter()
            .map(|o| OccupationOut {
                name: o.name,
                weak_value: o.weak_value.into(),
            })
            .collect(),
        paradox_identity_holds: r.paradox_identity_holds,
    }))
}

/// Heralded pair and post-selection at basis angle `phi`.
fn pointer_states(phi: f64) -> Result<(StateVector64, StateVector64), CliError> {
    let swap = run_entanglement_swap(
        SwapMode::Coherent,
        &PhaseCalibration::calibrated(),
        &BeamsplitterConvention::default(),
    )?;
    Ok((swap.heralded_state()?, postselection_state(&MEASURED_PHOTONS, phi)?))
}

const MEASURED: [Measured; 3] = [Measured::Photon2, Measured::Photon4, Measured::Joint];

fn pointer(p: &Parameters) -> Result<Report, CliError> {
    let (pre, post) = pointer_states(p.phi)?;
    let spec = PointerSpec::with_points(p.gamma, p.epsilon, p.sigma, p.grid_points)?;
    let measurements = MEASURED
        .iter()
        .map(|&measured| {
            let op = arrival_time_operator(measured.arrival_kind(), p.gamma, p.epsilon);
            let predicted = weak_value(&op, &pre, &post)?.value;
            let profile = build_pointer_profile(&pre, &post, measured, &spec)?;
            let moments = pointer_moments(&profile)?;
            let deviation = moments
                .mean
                .iter()
                .zip(&predicted)
                .map(|(m, w)| (m - w.re).abs())
                .collect();
            Ok(MeasurementOut {
                measured: measured.name(),
                mean: moments.mean,
                variance: moments.variance,
                weak_value: predicted.into_iter().map(Cplx::from).collect(),
                deviation,
                success_probability: profile.success_probability,
                success_probability_rational: nearest_rational(profile.success_probability),
            })
        })
        .collect::<Result<Vec<_>, hardy_core::Error>>()?;
    Ok(Report::Pointer(PointerOut {
        gamma: p.gamma,
        epsilon: p.epsilon,
        sigma: p.sigma,
        phi: p.phi,
        r: spec.weakness_ratio(),
        grid_points: p.grid_points,
        measurements,
    }))
}

fn pointer_sweep(p: &Parameters, sigmas: &[f64]) -> Result<Report, CliError> {
    let (pre, post) = pointer_states(p.phi)?;
    let mut rows = Vec::new();
    for measured in MEASURED {
        let sweep = weak_limit_sweep(&pre, &post, measured, p.gamma, p.epsilon, sigmas, p.grid_points)?;
        rows.extend(sweep.into_iter().map(|row| SweepRowOut {
            measured: measured.name(),
            sigma: row.sigma,
            r: row.ratio,
            mean: row.mean,
            deviation: row.deviation,
            success_probability: row.success_probability,
        }));
    }
    Ok(Report::PointerSweep(PointerSweepOut {
        gamma: p.gamma,
        epsilon: p.epsilon,
        phi: p.phi,
        grid_points: p.grid_points,
        rows,
    }))
}

fn single(scenario: Scenario, p: &Parameters) -> Result<Report, CliError> {
    match scenario {
        Scenario::Hardy => hardy(p),
        Scenario::Counterfactual => counterfactual(),
        Scenario::Swap => swap(p),
        Scenario::PhotonicWeak => photonic(p),
        Scenario::Pointer => pointer(p),
        Scenario::PointerSweep => pointer_sweep(p, &[p.sigma]),
    }
}

/// Runs the configured scenario (and sweep, if any).
pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    let p = &config.parameters;
    match (&config.sweep, config.scenario) {
        (Some(Sweep { values, .. }), Scenario::PointerSweep) => pointer_sweep(p, values),
        (None, scenario) => single(scenario, p),
        (Some(sweep), scenario) => {
            let runs = sweep
                .values
                .iter()
                .map(|&v| single(scenario, &p.with(sweep.param, v)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Report::Sweep(SweepOut {
                sweep: SweepSpecOut {
                    param: sweep.param.as_str(),
                    values: sweep.values.clone(),
                },
                runs,
            }))
        }
    }
}

