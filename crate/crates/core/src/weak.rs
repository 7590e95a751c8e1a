//! Weak values `⟨post|A|pre⟩ / ⟨post|pre⟩` of diagonal observables.
//!
//! Observables are [`WeightedProjectorSum`]s: a list of basis labels, each carrying a real
//! weight vector of a common dimension `k`. `k = 1` covers occupation numbers and the
//! single-photon arrival-time operators; the joint arrival-time operator reads both photons'
//! delays at once and has `k = 2`.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::optics::{ELECTRON, H, NON_OVERLAPPING, OVERLAPPING, POSITRON, V};
use crate::state::{BasisLabel, Layout, StateVector};
use crate::{real, Real};

/// `|⟨post|pre⟩|` at or below this is treated as orthogonal post-selection.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// `Σ_l w_l |l⟩⟨l|` with real weight vectors `w_l ∈ ℝ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedProjectorSum<T> {
    layout: Layout,
    dim: usize,
    terms: Vec<(BasisLabel, Vec<T>)>,
}

impl<T: Real> WeightedProjectorSum<T> {
    pub fn new(layout: Layout, dim: usize, terms: Vec<(BasisLabel, Vec<T>)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Structure("weight dimension must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        for (label, w) in &terms {
            if w.len() != dim {
                return Err(Error::Structure(format!(
                    "weight of {} has dimension {}, expected {dim}",
                    layout.label_name(label),
                    w.len()
                )));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::Structure(format!(
                    "label {} appears twice",
                    layout.label_name(label)
                )));
            }
            if let BasisLabel::Product(levels) = label {
                let ok = levels.len() == layout.len()
                    && layout
                        .subsystems()
                        .iter()
                        .zip(levels)
                        .all(|(s, &l)| l < s.alphabet().len());
                if !ok {
                    return Err(Error::Structure(format!("label {label:?} outside layout")));
                }
            }
        }
        Ok(Self { layout, dim, terms })
    }

    /// Unit weight on every product label.
    pub fn identity(layout: Layout) -> Self {
        let terms = layout
            .product_labels()
            .into_iter()
            .map(|l| (l, vec![T::one()]))
            .collect();
        Self {
            layout,
            dim: 1,
            terms,
        }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(BasisLabel, Vec<T>)] {
        &self.terms
    }

    /// `alpha·self + beta·other`.
    pub fn linear_combination(&self, alpha: T, other: &Self, beta: T) -> Result<Self> {
        if self.layout != other.layout || self.dim != other.dim {
            return Err(Error::Structure(
                "operators act on different spaces or weight dimensions".into(),
            ));
        }
        let mut terms: Vec<(BasisLabel, Vec<T>)> = self
            .terms
            .iter()
            .map(|(l, w)| (l.clone(), w.iter().map(|&x| alpha * x).collect()))
            .collect();
        for (l, w) in &other.terms {
            match terms.iter_mut().find(|(m, _)| m == l) {
                Some((_, acc)) => {
                    for (a, &x) in acc.iter_mut().zip(w) {
                        *a += beta * x;
                    }
                }
                None => terms.push((l.clone(), w.iter().map(|&x| beta * x).collect())),
            }
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Self {
            layout: self.layout.clone(),
            dim: self.dim,
            terms,
        })
    }

    /// `⟨post|A|pre⟩`, one entry per weight component.
    pub fn sandwich(&self, pre: &StateVector<T>, post: &StateVector<T>) -> Result<Vec<Complex<T>>> {
        for s in [pre, post] {
            if s.layout() != &self.layout {
                return Err(Error::Structure(format!(
                    "operator acts on {}, state lives on {}",
                    self.layout,
                    s.layout()
                )));
            }
        }
        let mut acc = vec![Complex::new(T::zero(), T::zero()); self.dim];
        for (label, w) in &self.terms {
            let m = post.amplitude(label).conj() * pre.amplitude(label);
            for (a, &x) in acc.iter_mut().zip(w) {
                *a += m * x;
            }
        }
        Ok(acc)
    }
}

/// Weak value together with the post-selection overlap.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakValueReport<T> {
    pub value: Vec<Complex<T>>,
    pub overlap: Complex<T>,
    pub success_probability: T,
}

fn checked_overlap<T: Real>(pre: &StateVector<T>, post: &StateVector<T>) -> Result<Complex<T>> {
    if !pre.is_normalized() || !post.is_normalized() {
        return Err(Error::Structure(
            "weak values need normalized pre- and post-selection".into(),
        ));
    }
    let overlap = crate::state::inner(post, pre)?;
    if overlap.norm() <= real(DEGENERACY_THRESHOLD) {
        return Err(Error::OrthogonalPostSelection {
            overlap: overlap.norm().to_f64().unwrap_or(0.0),
        });
    }
    Ok(overlap)
}

pub fn weak_value<T: Real>(
    op: &WeightedProjectorSum<T>,
    pre: &StateVector<T>,
    post: &StateVector<T>,
) -> Result<WeakValueReport<T>> {
    let overlap = checked_overlap(pre, post)?;
    let value = op
        .sandwich(pre, post)?
        .into_iter()
        .map(|m| m / overlap)
        .collect();
    Ok(WeakValueReport {
        value,
        overlap,
        success_probability: overlap.norm_sqr(),
    })
}

/// One projector of an operator with its weight and its own weak value.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorTerm<T> {
    pub label: BasisLabel,
    pub weight: Vec<T>,
    pub weak_value: Complex<T>,
}

/// Splits `op` into its rank-one projectors and evaluates the weak value of each.
///
/// `Σ weight · weak_value` over the returned terms reproduces `weak_value(op)`.
pub fn projector_weak_decomposition<T: Real>(
    op: &WeightedProjectorSum<T>,
    pre: &StateVector<T>,
    post: &StateVector<T>,
) -> Result<Vec<ProjectorTerm<T>>> {
    let overlap = checked_overlap(pre, post)?;
    op.terms()
        .iter()
        .map(|(label, weight)| {
            let projector = WeightedProjectorSum::new(
                op.layout().clone(),
                1,
                vec![(label.clone(), vec![T::one()])],
            )?;
            let m = projector.sandwich(pre, post)?[0];
            Ok(ProjectorTerm {
                label: label.clone(),
                weight: weight.clone(),
                weak_value: m / overlap,
            })
        })
        .collect()
}

/// Re-assembles a decomposition into the operator's weak value.
pub fn recombine<T: Real>(terms: &[ProjectorTerm<T>], dim: usize) -> Vec<Complex<T>> {
    let mut acc = vec![Complex::new(T::zero(), T::zero()); dim];
    for t in terms {
        for (a, &w) in acc.iter_mut().zip(&t.weight) {
            *a += t.weak_value * w;
        }
    }
    acc
}

/// Interferometer arm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arm {
    Overlapping,
    NonOverlapping,
}

impl Arm {
    pub fn level(self) -> &'static str {
        match self {
            Arm::Overlapping => OVERLAPPING,
            Arm::NonOverlapping => NON_OVERLAPPING,
        }
    }
}

impl FromStr for Arm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "O" => Ok(Arm::Overlapping),
            "NO" => Ok(Arm::NonOverlapping),
            other => Err(Error::Parameter {
                name: "arm",
                reason: format!("unknown arm `{other}` (expected O or NO)"),
            }),
        }
    }
}

/// Which occupation number to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Occupation {
    /// `N^±_arm`: one particle in `arm`, the other anywhere.
    Single(crate::optics::Particle, Arm),
    /// `N^{+,-}_{arm⁺, arm⁻}`.
    Joint(Arm, Arm),
}

/// Layout `+:{O,NO} ⊗ -:{O,NO}` of the two particles between the splitters.
pub fn path_layout() -> Layout {
    use crate::state::Subsystem;
    Layout::new(vec![
        Subsystem::new(POSITRON, [OVERLAPPING, NON_OVERLAPPING]),
        Subsystem::new(ELECTRON, [OVERLAPPING, NON_OVERLAPPING]),
    ])
    .expect("distinct ids")
}

/// Projector onto a partial assignment of levels, identity on the rest of `layout`.
pub fn projector_onto<T: Real>(
    layout: &Layout,
    assignment: &[(&str, &str)],
) -> Result<WeightedProjectorSum<T>> {
    let mut wanted = Vec::with_capacity(assignment.len());
    for &(id, level) in assignment {
        let pos = layout.position(id)?;
        wanted.push((pos, layout.subsystems()[pos].level_index(level)?));
    }
    let terms = layout
        .product_labels()
        .into_iter()
        .filter(|l| match l {
            BasisLabel::Product(levels) => wanted.iter().all(|&(p, v)| levels[p] == v),
            BasisLabel::Gamma => false,
        })
        .map(|l| (l, vec![T::one()]))
        .collect();
    WeightedProjectorSum::new(layout.clone(), 1, terms)
}

/// Occupation-number operator on [`path_layout`].
pub fn occupation_operator<T: Real>(which: Occupation) -> WeightedProjectorSum<T> {
    let layout = path_layout();
    let assignment: Vec<(&str, &str)> = match which {
        Occupation::Single(p, arm) => vec![(p.id(), arm.level())],
        Occupation::Joint(plus, minus) => {
            vec![(POSITRON, plus.level()), (ELECTRON, minus.level())]
        }
    };
    projector_onto(&layout, &assignment).expect("path layout labels")
}

/// Photons carrying the arrival-time pointers.
pub const MEASURED_PHOTONS: [u8; 2] = [2, 4];

/// Layout `2:{H,V} ⊗ 4:{H,V}`.
pub fn photon_pair_layout() -> Layout {
    Layout::new(
        MEASURED_PHOTONS
            .iter()
            .map(|&n| crate::optics::photon(n))
            .collect(),
    )
    .expect("distinct ids")
}

/// Arrival-time observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrivalKind {
    /// Delay of photon 2 only (`k = 1`).
    Photon2,
    /// Delay of photon 4 only (`k = 1`).
    Photon4,
    /// Both delays as a two-vector (`k = 2`).
    Joint,
}

/// Arrival-time operator: `H` photons are delayed by `gamma`, `V` photons by `epsilon`.
pub fn arrival_time_operator<T: Real>(
    kind: ArrivalKind,
    gamma: T,
    epsilon: T,
) -> WeightedProjectorSum<T> {
    let layout = photon_pair_layout();
    let delay = |level: usize| if level == 0 { gamma } else { epsilon };
    let dim = if kind == ArrivalKind::Joint { 2 } else { 1 };
    let terms = layout
        .product_labels()
        .into_iter()
        .map(|label| {
            let BasisLabel::Product(levels) = &label else {
                unreachable!()
            };
            let w = match kind {
                ArrivalKind::Photon2 => vec![delay(levels[0])],
                ArrivalKind::Photon4 => vec![delay(levels[1])],
                ArrivalKind::Joint => vec![delay(levels[0]), delay(levels[1])],
            };
            (label, w)
        })
        .collect();
    WeightedProjectorSum::new(layout, dim, terms).expect("consistent weights")
}

/// Dictionary between the photon polarization basis and the interferometer path basis:
/// photon 2 plays the positron, photon 4 the electron, `H ↔ NO` and `V ↔ O`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathDictionary;

impl PathDictionary {
    pub fn particle_for_photon(self, photon: &str) -> Option<&'static str> {
        match photon {
            "2" => Some(POSITRON),
            "4" => Some(ELECTRON),
            _ => None,
        }
    }

    pub fn arm_for_polarization(self, level: &str) -> Option<&'static str> {
        match level {
            H => Some(NON_OVERLAPPING),
            V => Some(OVERLAPPING),
            _ => None,
        }
    }

    /// Translates a photon-pair label into the path label it corresponds to.
    pub fn to_path_label(self, label: &BasisLabel) -> Result<BasisLabel> {
        let photons = photon_pair_layout();
        let named = photons.describe(label);
        if named.is_empty() {
            return Err(Error::Structure("annihilation channel has no photon analogue".into()));
        }
        let mut pairs = Vec::with_capacity(named.len());
        for (id, level) in named {
            let particle = self
                .particle_for_photon(id)
                .ok_or_else(|| Error::UnknownSubsystem(id.to_owned()))?;
            let arm = self.arm_for_polarization(level).ok_or_else(|| Error::UnknownLevel {
                subsystem: id.to_owned(),
                level: level.to_owned(),
            })?;
            pairs.push((particle, arm));
        }
        path_layout().label(&pairs)
    }

    /// Carries a photon-pair state over to the path basis.
    pub fn to_path_state<T: Real>(self, state: &StateVector<T>) -> Result<StateVector<T>> {
        if state.layout() != &photon_pair_layout() {
            return Err(Error::Structure(format!(
                "dictionary expects {}, got {}",
                photon_pair_layout(),
                state.layout()
            )));
        }
        let terms = state
            .iter()
            .map(|(l, a)| Ok((self.to_path_label(l)?, *a)))
            .collect::<Result<Vec<_>>>()?;
        StateVector::from_amplitudes(path_layout(), terms)
    }
}
