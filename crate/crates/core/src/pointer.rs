//! Finite-strength arrival-time pointers.
//!
//! Each measured photon carries a Gaussian temporal wavepacket. Its polarization decides the
//! delay (`H → gamma`, `V → epsilon`), which entangles arrival time with polarization. After
//! the polarization post-selection the pointer amplitude is
//!
//! ```text
//! ψ(t) = Σ_l ⟨post|l⟩⟨l|pre⟩ · Π_axes f(t_axis − delay(l, axis))
//! ```
//!
//! with `f(t) = (2πσ²)^{-1/4} exp(−t²/4σ²)`, so `|f|²` has standard deviation `σ`. The
//! photon that is not measured contributes no delay and is summed over.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::state::{BasisLabel, StateVector};
use crate::weak::{arrival_time_operator, photon_pair_layout, weak_value, ArrivalKind};
use crate::{real, Real};

/// Padding, in units of `σ`, of the default grid beyond the delays.
pub const DEFAULT_PADDING: f64 = 8.0;
/// Padding, in units of `σ`, every grid must cover.
pub const MIN_PADDING: f64 = 6.0;
pub const DEFAULT_POINTS: usize = 4096;
pub const MIN_POINTS: usize = 64;

/// Uniform sampling of one pointer axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid<T> {
    pub t_min: T,
    pub t_max: T,
    pub n_points: usize,
}

impl<T: Real> Grid<T> {
    pub fn step(&self) -> T {
        (self.t_max - self.t_min) / real::<T>((self.n_points - 1) as f64)
    }

    pub fn point(&self, i: usize) -> T {
        self.t_min + self.step() * real::<T>(i as f64)
    }

    /// Trapezoid quadrature weights.
    pub fn weights(&self) -> Vec<T> {
        let h = self.step();
        let half = h * real(0.5);
        (0..self.n_points)
            .map(|i| if i == 0 || i + 1 == self.n_points { half } else { h })
            .collect()
    }
}

/// Delays, wavepacket width and sampling grid of the pointer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointerSpec<T> {
    pub gamma: T,
    pub epsilon: T,
    pub sigma: T,
    pub grid: Grid<T>,
}

impl<T: Real> PointerSpec<T> {
    /// Spec with the default grid: `±8σ` around the delays, 4096 points per axis.
    pub fn new(gamma: T, epsilon: T, sigma: T) -> Result<Self> {
        Self::with_points(gamma, epsilon, sigma, DEFAULT_POINTS)
    }

    /// Default span with `n_points` samples per axis.
    pub fn with_points(gamma: T, epsilon: T, sigma: T, n_points: usize) -> Result<Self> {
        let pad = sigma * real(DEFAULT_PADDING);
        let spec = Self {
            gamma,
            epsilon,
            sigma,
            grid: Grid {
                t_min: gamma.min(epsilon) - pad,
                t_max: gamma.max(epsilon) + pad,
                n_points,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_grid(gamma: T, epsilon: T, sigma: T, grid: Grid<T>) -> Result<Self> {
        let spec = Self {
            gamma,
            epsilon,
            sigma,
            grid,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > T::zero()) || !self.sigma.is_finite() {
            return Err(Error::Parameter {
                name: "sigma",
                reason: format!("must be positive and finite, got {}", self.sigma),
            });
        }
        if !self.gamma.is_finite() || !self.epsilon.is_finite() {
            return Err(Error::Parameter {
                name: "epsilon",
                reason: "delays must be finite".into(),
            });
        }
        if self.grid.n_points < MIN_POINTS {
            return Err(Error::Grid(format!(
                "{} points per axis, at least {MIN_POINTS} required",
                self.grid.n_points
            )));
        }
        let pad = self.sigma * real(MIN_PADDING);
        let lo = self.gamma.min(self.epsilon) - pad;
        let hi = self.gamma.max(self.epsilon) + pad;
        if self.grid.t_min > lo || self.grid.t_max < hi {
            return Err(Error::Grid(format!(
                "grid [{}, {}] does not cover [{lo}, {hi}]",
                self.grid.t_min, self.grid.t_max
            )));
        }
        Ok(())
    }

    /// `|ε − γ| / σ`; the weak regime is `r → 0`.
    pub fn weakness_ratio(&self) -> T {
        (self.epsilon - self.gamma).abs() / self.sigma
    }

    fn delay(&self, level: usize) -> T {
        if level == 0 {
            self.gamma
        } else {
            self.epsilon
        }
    }
}

/// Normalized Gaussian amplitude whose intensity has standard deviation `sigma`.
pub fn gaussian_amplitude<T: Real>(t: T, sigma: T) -> T {
    let two_pi_var = real::<T>(2.0) * T::PI() * sigma * sigma;
    two_pi_var.powf(real(-0.25)) * (-(t * t) / (real::<T>(4.0) * sigma * sigma)).exp()
}

/// `∫ f(t) f(t − delta) dt = exp(−delta² / 8σ²)`.
pub fn gaussian_overlap<T: Real>(delta: T, sigma: T) -> T {
    (-(delta * delta) / (real::<T>(8.0) * sigma * sigma)).exp()
}

/// Which photon(s) carry a pointer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measured {
    Photon2,
    Photon4,
    Joint,
}

impl Measured {
    pub fn axes(self) -> usize {
        match self {
            Measured::Joint => 2,
            _ => 1,
        }
    }

    pub fn arrival_kind(self) -> ArrivalKind {
        match self {
            Measured::Photon2 => ArrivalKind::Photon2,
            Measured::Photon4 => ArrivalKind::Photon4,
            Measured::Joint => ArrivalKind::Joint,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measured::Photon2 => "photon-2",
            Measured::Photon4 => "photon-4",
            Measured::Joint => "joint",
        }
    }
}

/// Post-selected pointer amplitude sampled on the grid.
///
/// One-axis profiles hold `n` samples; joint profiles hold `n × n` samples in row-major
/// order, the first index running over photon 2's arrival time.
#[derive(Clone, Debug, PartialEq)]
pub struct PointerProfile<T> {
    pub measured: Measured,
    pub spec: PointerSpec<T>,
    pub amplitude: Vec<Complex<T>>,
    /// `∫|ψ|²` from Gaussian overlaps (no quadrature).
    pub success_probability: T,
}

/// Polarization-resolved pointer components: `(delay per axis, coefficient)`.
fn components<T: Real>(
    pre: &StateVector<T>,
    post: &StateVector<T>,
    measured: Measured,
    spec: &PointerSpec<T>,
) -> Result<Vec<(Vec<T>, Complex<T>)>> {
    let layout = photon_pair_layout();
    for s in [pre, post] {
        if s.layout() != &layout {
            return Err(Error::Structure(format!(
                "pointer expects {layout}, got {}",
                s.layout()
            )));
        }
    }
    let mut out: Vec<(Vec<usize>, Complex<T>)> = Vec::new();
    for label in layout.product_labels() {
        let BasisLabel::Product(levels) = &label else {
            unreachable!()
        };
        let c = post.amplitude(&label).conj() * pre.amplitude(&label);
        let key = match measured {
            Measured::Photon2 => vec![levels[0]],
            Measured::Photon4 => vec![levels[1]],
            Measured::Joint => levels.clone(),
        };
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, acc)) => *acc += c,
            None => out.push((key, c)),
        }
    }
    Ok(out
        .into_iter()
        .map(|(key, c)| (key.into_iter().map(|l| spec.delay(l)).collect(), c))
        .collect())
}

pub fn build_pointer_profile<T: Real>(
    pre: &StateVector<T>,
    post: &StateVector<T>,
    measured: Measured,
    spec: &PointerSpec<T>,
) -> Result<PointerProfile<T>> {
    spec.validate()?;
    let comps = components(pre, post, measured, spec)?;
    let n = spec.grid.n_points;
    let times: Vec<T> = (0..n).map(|i| spec.grid.point(i)).collect();

    // f(t − d) sampled once per distinct delay
    let sample = |d: T| -> Vec<T> {
        times
            .iter()
            .map(|&t| gaussian_amplitude(t - d, spec.sigma))
            .collect()
    };
    let profiles: Vec<(Vec<Vec<T>>, Complex<T>)> = comps
        .iter()
        .filter(|(_, c)| *c != Complex::default())
        .map(|(delays, c)| (delays.iter().map(|&d| sample(d)).collect(), *c))
        .collect();

    let amplitude = match measured.axes() {
        1 => (0..n)
            .map(|i| {
                profiles
                    .iter()
                    .fold(Complex::default(), |acc, (f, c)| acc + *c * f[0][i])
            })
            .collect(),
        _ => {
            let mut amp = vec![Complex::default(); n * n];
            for (i, row) in amp.chunks_mut(n).enumerate() {
                for (f, c) in &profiles {
                    let ci = *c * f[0][i];
                    if ci == Complex::default() {
                        continue;
                    }
                    for (cell, &fj) in row.iter_mut().zip(&f[1]) {
                        *cell += ci * fj;
                    }
                }
            }
            amp
        }
    };

    let mut success = T::zero();
    for (da, ca) in &comps {
        for (db, cb) in &comps {
            let overlap = da
                .iter()
                .zip(db)
                .fold(T::one(), |acc, (&x, &y)| acc * gaussian_overlap(x - y, spec.sigma));
            success += (ca.conj() * cb).re * overlap;
        }
    }

    Ok(PointerProfile {
        measured,
        spec: *spec,
        amplitude,
        success_probability: success,
    })
}

/// Normalized first and second moments of `|ψ|²` per axis.
#[derive(Clone, Debug, PartialEq)]
pub struct PointerMoments<T> {
    pub mean: Vec<T>,
    pub variance: Vec<T>,
    /// Trapezoid estimate of `∫|ψ|²`.
    pub success_probability: T,
}

/// Trapezoid norm of a profile, with no normalization check.
pub fn trapezoid_norm<T: Real>(profile: &PointerProfile<T>) -> T {
    marginals(profile).0
}

/// `(norm, marginal density per axis)`, marginals unnormalized.
fn marginals<T: Real>(profile: &PointerProfile<T>) -> (T, Vec<Vec<T>>) {
    let w = profile.spec.grid.weights();
    let n = w.len();
    match profile.measured.axes() {
        1 => {
            let p: Vec<T> = profile.amplitude.iter().map(|a| a.norm_sqr()).collect();
            let norm = p.iter().zip(&w).fold(T::zero(), |acc, (&x, &wi)| acc + x * wi);
            (norm, vec![p])
        }
        _ => {
            let mut first = vec![T::zero(); n];
            let mut second = vec![T::zero(); n];
            for (i, row) in profile.amplitude.chunks(n).enumerate() {
                for (j, a) in row.iter().enumerate() {
                    let p = a.norm_sqr();
                    first[i] += p * w[j];
                    second[j] += p * w[i];
                }
            }
            let norm = first.iter().zip(&w).fold(T::zero(), |acc, (&x, &wi)| acc + x * wi);
            (norm, vec![first, second])
        }
    }
}

pub fn pointer_moments<T: Real>(profile: &PointerProfile<T>) -> Result<PointerMoments<T>> {
    let (norm, dens) = marginals(profile);
    if !(norm > real(1e-12)) {
        return Err(Error::EmptyPostSelection {
            norm: norm.to_f64().unwrap_or(0.0),
        });
    }
    let grid = profile.spec.grid;
    let w = grid.weights();
    let times: Vec<T> = (0..grid.n_points).map(|i| grid.point(i)).collect();
    let mut mean = Vec::with_capacity(dens.len());
    let mut variance = Vec::with_capacity(dens.len());
    for p in &dens {
        let m = p
            .iter()
            .zip(&w)
            .zip(&times)
            .fold(T::zero(), |acc, ((&x, &wi), &t)| acc + x * wi * t)
            / norm;
        let v = p
            .iter()
            .zip(&w)
            .zip(&times)
            .fold(T::zero(), |acc, ((&x, &wi), &t)| acc + x * wi * (t - m) * (t - m))
            / norm;
        mean.push(m);
        variance.push(v);
    }
    Ok(PointerMoments {
        mean,
        variance,
        success_probability: norm,
    })
}

/// One row of a weakness sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow<T> {
    pub sigma: T,
    pub ratio: T,
    pub mean: Vec<T>,
    /// `|mean − Re(weak value)|` per axis.
    pub deviation: Vec<T>,
    pub success_probability: T,
}

/// Pointer means against the weak-value prediction for a range of widths.
pub fn weak_limit_sweep<T: Real>(
    pre: &StateVector<T>,
    post: &StateVector<T>,
    measured: Measured,
    gamma: T,
    epsilon: T,
    sigmas: &[T],
    n_points: usize,
) -> Result<Vec<SweepRow<T>>> {
    if sigmas.iter().any(|&s| !(s > T::zero())) {
        return Err(Error::Parameter {
            name: "sigma",
            reason: "sweep widths must be positive".into(),
        });
    }
    if sigmas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter {
            name: "sigma",
            reason: "sweep widths must be strictly ascending".into(),
        });
    }
    let op = arrival_time_operator(measured.arrival_kind(), gamma, epsilon);
    let predicted = weak_value(&op, pre, post)?.value;

    sigmas
        .iter()
        .map(|&sigma| {
            let spec = PointerSpec::with_points(gamma, epsilon, sigma, n_points)?;
            let profile = build_pointer_profile(pre, post, measured, &spec)?;
            let moments = pointer_moments(&profile)?;
            let deviation = moments
                .mean
                .iter()
                .zip(&predicted)
                .map(|(&m, w)| (m - w.re).abs())
                .collect();
            Ok(SweepRow {
                sigma,
                ratio: spec.weakness_ratio(),
                mean: moments.mean,
                deviation,
                success_probability: moments.success_probability,
            })
        })
        .collect()
}
