//! Labeled tensor-product state vectors.
//!
//! A [`StateVector`] is a sparse map from [`BasisLabel`] to complex amplitude over a declared
//! [`Layout`]: an ordered list of subsystems, each with its own alphabet of level names
//! (`{H, V}`, `{O, NO}`, `{c, d}`, ...). The annihilation channel is the distinguished label
//! [`BasisLabel::Gamma`], orthogonal to every product label and available in every layout.
//!
//! Labels are kept in a `BTreeMap`, so iteration order (and therefore every report built
//! from a state) is canonical: `Gamma` first, then product labels ordered by the position
//! of their levels in the declared alphabets.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::{real, Real};

/// Amplitudes below this modulus may be dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Absolute tolerance on `Σ|a|² = 1` for the `normalized` flag (`f64`).
pub const NORM_TOLERANCE: f64 = 1e-12;

pub(crate) fn norm_tolerance<T: Real>() -> T {
    real::<T>(NORM_TOLERANCE).max(T::epsilon() * real(1e3))
}

/// One tensor factor: an identifier and the alphabet of levels it may occupy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subsystem {
    id: String,
    alphabet: Vec<String>,
}

impl Subsystem {
    pub fn new<I, S>(id: impl Into<String>, alphabet: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            id: id.into(),
            alphabet: alphabet.into_iter().map(Into::into).collect(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn level_index(&self, level: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|l| l == level)
            .ok_or_else(|| Error::UnknownLevel {
                subsystem: self.id.clone(),
                level: level.to_owned(),
            })
    }
}

/// Ordered subsystem structure shared by every label of a state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Layout {
    subsystems: Vec<Subsystem>,
}

impl Layout {
    pub fn new(subsystems: Vec<Subsystem>) -> Result<Self> {
        for (i, s) in subsystems.iter().enumerate() {
            if subsystems[..i].iter().any(|o| o.id == s.id) {
                return Err(Error::OverlappingSubsystems(s.id.clone()));
            }
            if s.alphabet.is_empty() {
                return Err(Error::Structure(format!(
                    "subsystem `{}` has an empty alphabet",
                    s.id
                )));
            }
        }
        Ok(Self { subsystems })
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.subsystems
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| Error::UnknownSubsystem(id.to_owned()))
    }

    pub fn subsystem(&self, id: &str) -> Result<&Subsystem> {
        Ok(&self.subsystems[self.position(id)?])
    }

    /// Builds a product label from `(subsystem, level)` pairs covering every subsystem.
    pub fn label(&self, levels: &[(&str, &str)]) -> Result<BasisLabel> {
        if levels.len() != self.subsystems.len() {
            return Err(Error::Structure(format!(
                "label addresses {} subsystems, layout has {}",
                levels.len(),
                self.subsystems.len()
            )));
        }
        let mut idx = vec![usize::MAX; self.subsystems.len()];
        for &(id, level) in levels {
            let pos = self.position(id)?;
            if idx[pos] != usize::MAX {
                return Err(Error::Structure(format!("subsystem `{id}` addressed twice")));
            }
            idx[pos] = self.subsystems[pos].level_index(level)?;
        }
        Ok(BasisLabel::Product(idx))
    }

    /// Every product label of the layout, in canonical order.
    pub fn product_labels(&self) -> Vec<BasisLabel> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for s in &self.subsystems {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..s.alphabet.len()).map(move |l| {
                        let mut p = prefix.clone();
                        p.push(l);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(BasisLabel::Product).collect()
    }

    /// `(subsystem, level)` pairs of a product label; empty for `Gamma`.
    pub fn describe(&self, label: &BasisLabel) -> Vec<(&str, &str)> {
        match label {
            BasisLabel::Gamma => Vec::new(),
            BasisLabel::Product(levels) => self
                .subsystems
                .iter()
                .zip(levels)
                .map(|(s, &l)| (s.id.as_str(), s.alphabet[l].as_str()))
                .collect(),
        }
    }

    /// Compact ket name: `gamma`, `c+c-`, `H2V4`, ...
    pub fn label_name(&self, label: &BasisLabel) -> String {
        match label {
            BasisLabel::Gamma => "gamma".to_owned(),
            BasisLabel::Product(_) => self
                .describe(label)
                .into_iter()
                .map(|(id, level)| format!("{level}{id}"))
                .collect(),
        }
    }

    fn check_label(&self, label: &BasisLabel) -> Result<()> {
        match label {
            BasisLabel::Gamma => Ok(()),
            BasisLabel::Product(levels) => {
                if levels.len() != self.len() {
                    return Err(Error::Structure(format!(
                        "label has {} levels, layout has {} subsystems",
                        levels.len(),
                        self.len()
                    )));
                }
                for (s, &l) in self.subsystems.iter().zip(levels) {
                    if l >= s.alphabet.len() {
                        return Err(Error::UnknownLevel {
                            subsystem: s.id.clone(),
                            level: format!("#{l}"),
                        });
                    }
                }
                Ok(())
            }
        }
    }

    fn ensure_same(&self, other: &Layout) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Structure(format!(
                "layouts differ: {self} vs {other}"
            )))
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .subsystems
            .iter()
            .map(|s| format!("{}:{{{}}}", s.id, s.alphabet.join(",")))
            .collect();
        write!(f, "[{}]", parts.join(" ⊗ "))
    }
}

/// A basis ket: either the annihilation channel or one level per subsystem (by alphabet index).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Gamma,
    Product(Vec<usize>),
}

/// Finite complex superposition over the labels of a [`Layout`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    layout: Layout,
    amplitudes: BTreeMap<BasisLabel, Complex<T>>,
    normalized: bool,
}

impl<T: Real> StateVector<T> {
    /// Builds a state from explicit amplitudes; repeated labels accumulate.
    pub fn from_amplitudes<I>(layout: Layout, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisLabel, Complex<T>)>,
    {
        let mut amplitudes = BTreeMap::new();
        for (label, amp) in terms {
            layout.check_label(&label)?;
            *amplitudes.entry(label).or_insert_with(Complex::default) += amp;
        }
        Ok(Self::assemble(layout, amplitudes))
    }

    /// Builds a state from named `(subsystem, level)` terms.
    pub fn from_named(layout: Layout, terms: &[(&[(&str, &str)], Complex<T>)]) -> Result<Self> {
        let labeled = terms
            .iter()
            .map(|(levels, amp)| Ok((layout.label(levels)?, *amp)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_amplitudes(layout, labeled)
    }

    /// A single product ket with amplitude one.
    pub fn basis(layout: Layout, levels: &[(&str, &str)]) -> Result<Self> {
        let label = layout.label(levels)?;
        Self::from_amplitudes(layout, [(label, Complex::new(T::one(), T::zero()))])
    }

    pub(crate) fn assemble(layout: Layout, amplitudes: BTreeMap<BasisLabel, Complex<T>>) -> Self {
        let norm: T = amplitudes
            .values()
            .fold(T::zero(), |acc, a: &Complex<T>| acc + a.norm_sqr());
        let normalized = (norm - T::one()).abs() <= norm_tolerance();
        Self {
            layout,
            amplitudes,
            normalized,
        }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Complex<T> {
        self.amplitudes.get(label).copied().unwrap_or_default()
    }

    /// Amplitude of a named product ket.
    pub fn amplitude_of(&self, levels: &[(&str, &str)]) -> Result<Complex<T>> {
        Ok(self.amplitude(&self.layout.label(levels)?))
    }

    pub fn gamma_amplitude(&self) -> Complex<T> {
        self.amplitude(&BasisLabel::Gamma)
    }

    /// Stored `(label, amplitude)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&BasisLabel, &Complex<T>)> {
        self.amplitudes.iter()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .values()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn probability(&self, label: &BasisLabel) -> T {
        self.amplitude(label).norm_sqr()
    }

    /// Rescaled to unit norm.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n <= T::epsilon() * T::epsilon() {
            return Err(Error::Structure("cannot normalize the zero vector".into()));
        }
        Ok(self.scale(Complex::new(T::one() / n.sqrt(), T::zero())))
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(l, a)| (l.clone(), *a * factor))
            .collect();
        Self::assemble(self.layout.clone(), amplitudes)
    }

    /// Linear combination `self + other` over an identical layout.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.layout.ensure_same(&other.layout)?;
        let mut amplitudes = self.amplitudes.clone();
        for (l, a) in &other.amplitudes {
            *amplitudes.entry(l.clone()).or_default() += *a;
        }
        Ok(Self::assemble(self.layout.clone(), amplitudes))
    }

    /// Drops amplitudes with modulus below `threshold`.
    pub fn prune(&self, threshold: T) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .filter(|(_, a)| a.norm() >= threshold)
            .map(|(l, a)| (l.clone(), *a))
            .collect();
        Self::assemble(self.layout.clone(), amplitudes)
    }

    /// Moves the amplitude of `label` onto `Gamma`, adding to whatever is already there.
    pub fn move_to_gamma(&self, label: &BasisLabel) -> Self {
        let mut amplitudes = self.amplitudes.clone();
        if let Some(a) = amplitudes.remove(label) {
            *amplitudes
                .entry(BasisLabel::Gamma)
                .or_default() += a;
        }
        Self::assemble(self.layout.clone(), amplitudes)
    }

    /// The product-label part of the state (annihilation channel removed).
    pub fn discard_gamma(&self) -> Subnormalized<T> {
        let mut amplitudes = self.amplitudes.clone();
        amplitudes.remove(&BasisLabel::Gamma);
        Subnormalized::new(Self::assemble(self.layout.clone(), amplitudes))
    }

    /// Applies a linear map to the levels of one subsystem.
    ///
    /// `image(level)` returns the image of basis level `level` (index into the current
    /// alphabet) as `(index into alphabet, coefficient)` pairs. The subsystem's alphabet is
    /// replaced by `alphabet`, which lets elements such as beamsplitters move a particle from
    /// one set of path labels to another. `Gamma` passes through unchanged.
    pub fn map_subsystem<F>(&self, id: &str, alphabet: Vec<String>, image: F) -> Result<Self>
    where
        F: Fn(usize) -> Result<Vec<(usize, Complex<T>)>>,
    {
        let pos = self.layout.position(id)?;
        let mut layout = self.layout.clone();
        layout.subsystems[pos].alphabet = alphabet;
        let out_len = layout.subsystems[pos].alphabet.len();

        let mut amplitudes: BTreeMap<BasisLabel, Complex<T>> = BTreeMap::new();
        for (label, amp) in &self.amplitudes {
            match label {
                BasisLabel::Gamma => {
                    *amplitudes.entry(BasisLabel::Gamma).or_default() += *amp;
                }
                BasisLabel::Product(levels) => {
                    for (to, coeff) in image(levels[pos])? {
                        if to >= out_len {
                            return Err(Error::UnknownLevel {
                                subsystem: id.to_owned(),
                                level: format!("#{to}"),
                            });
                        }
                        let mut next = levels.clone();
                        next[pos] = to;
                        *amplitudes.entry(BasisLabel::Product(next)).or_default() +=
                            *amp * coeff;
                    }
                }
            }
        }
        let threshold: T = real(PRUNE_THRESHOLD);
        amplitudes.retain(|_, a| a.norm() >= threshold);
        Ok(Self::assemble(layout, amplitudes))
    }
}

impl<T: Real> fmt::Display for StateVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (label, a) in &self.amplitudes {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)|{}⟩", a.re, a.im, self.layout.label_name(label))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An unnormalized conditional state together with its squared norm.
#[derive(Clone, Debug, PartialEq)]
pub struct Subnormalized<T> {
    pub state: StateVector<T>,
    pub weight: T,
}

impl<T: Real> Subnormalized<T> {
    pub fn new(state: StateVector<T>) -> Self {
        let weight = state.norm_sqr();
        Self { state, weight }
    }

    /// The conditional state rescaled to unit norm.
    pub fn renormalized(&self) -> Result<StateVector<T>> {
        self.state.normalize()
    }
}

/// Tensor product `a ⊗ b`; subsystem layouts are concatenated.
pub fn tensor<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<StateVector<T>> {
    for s in &b.layout.subsystems {
        if a.layout.position(&s.id).is_ok() {
            return Err(Error::OverlappingSubsystems(s.id.clone()));
        }
    }
    if a.amplitudes.contains_key(&BasisLabel::Gamma) || b.amplitudes.contains_key(&BasisLabel::Gamma)
    {
        return Err(Error::Structure(
            "tensor product of a state carrying the annihilation channel".into(),
        ));
    }
    let mut subsystems = a.layout.subsystems.clone();
    subsystems.extend(b.layout.subsystems.iter().cloned());
    let layout = Layout { subsystems };

    let mut amplitudes = BTreeMap::new();
    for (la, aa) in &a.amplitudes {
        for (lb, ab) in &b.amplitudes {
            let (BasisLabel::Product(pa), BasisLabel::Product(pb)) = (la, lb) else {
                unreachable!("gamma excluded above")
            };
            let mut levels = pa.clone();
            levels.extend_from_slice(pb);
            amplitudes.insert(BasisLabel::Product(levels), *aa * *ab);
        }
    }
    Ok(StateVector::assemble(layout, amplitudes))
}

/// `⟨bra|ket⟩`.
pub fn inner<T: Real>(bra: &StateVector<T>, ket: &StateVector<T>) -> Result<Complex<T>> {
    bra.layout.ensure_same(&ket.layout)?;
    let (small, large, conj_small) = if bra.amplitudes.len() <= ket.amplitudes.len() {
        (&bra.amplitudes, &ket.amplitudes, true)
    } else {
        (&ket.amplitudes, &bra.amplitudes, false)
    };
    let mut acc = Complex::new(T::zero(), T::zero());
    for (label, a) in small {
        if let Some(b) = large.get(label) {
            acc += if conj_small { a.conj() * b } else { b.conj() * a };
        }
    }
    Ok(acc)
}

/// Projects onto a partial assignment of subsystem levels and traces the addressed
/// subsystems out of the layout.
///
/// With a non-empty assignment the annihilation channel never matches. The returned weight
/// is the outcome probability when `state` is normalized.
pub fn condition<T: Real>(
    state: &StateVector<T>,
    outcome: &[(&str, &str)],
) -> Result<Subnormalized<T>> {
    if outcome.is_empty() {
        return Ok(Subnormalized::new(state.clone()));
    }
    let mut wanted = Vec::with_capacity(outcome.len());
    for &(id, level) in outcome {
        let pos = state.layout.position(id)?;
        if wanted.iter().any(|&(p, _)| p == pos) {
            return Err(Error::Structure(format!("subsystem `{id}` addressed twice")));
        }
        wanted.push((pos, state.layout.subsystems[pos].level_index(level)?));
    }
    let keep: Vec<usize> = (0..state.layout.len())
        .filter(|i| wanted.iter().all(|&(p, _)| p != *i))
        .collect();
    let layout = Layout {
        subsystems: keep
            .iter()
            .map(|&i| state.layout.subsystems[i].clone())
            .collect(),
    };

    let mut amplitudes = BTreeMap::new();
    for (label, amp) in &state.amplitudes {
        let BasisLabel::Product(levels) = label else {
            continue;
        };
        if wanted.iter().all(|&(p, l)| levels[p] == l) {
            let reduced = keep.iter().map(|&i| levels[i]).collect();
            amplitudes.insert(BasisLabel::Product(reduced), *amp);
        }
    }
    Ok(Subnormalized::new(StateVector::assemble(layout, amplitudes)))
}

/// `|⟨a|b⟩| ≥ 1 − tol` for two normalized states.
pub fn equal_up_to_global_phase<T: Real>(
    a: &StateVector<T>,
    b: &StateVector<T>,
    tol: T,
) -> Result<bool> {
    if !a.normalized || !b.normalized {
        return Err(Error::Structure(
            "global-phase comparison needs normalized states".into(),
        ));
    }
    Ok(inner(a, b)?.norm() >= T::one() - tol)
}

/// `|⟨target|state⟩|²` for normalized inputs.
pub fn fidelity<T: Real>(target: &StateVector<T>, state: &StateVector<T>) -> Result<T> {
    Ok(inner(target, state)?.norm_sqr())
}
