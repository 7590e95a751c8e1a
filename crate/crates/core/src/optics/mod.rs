//! Optical elements as linear maps on the levels of a single subsystem.
//!
//! The interferometer of the gedankenexperiment has one subsystem per particle (`+` for the
//! positron, `-` for the electron). A particle starts in the single level `in`; the first
//! beamsplitter moves it onto the path alphabet `{O, NO}` (overlapping / non-overlapping arm)
//! and the second beamsplitter, present or not, onto the exit alphabet `{c, d}`.
//!
//! Photons of the swap and weak-measurement setup are subsystems `1`..`4` over `{H, V}`.

pub mod fock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::state::{BasisLabel, Layout, StateVector, Subsystem};
use crate::{real, Real};

pub const POSITRON: &str = "+";
pub const ELECTRON: &str = "-";

pub const INPUT: &str = "in";
pub const OVERLAPPING: &str = "O";
pub const NON_OVERLAPPING: &str = "NO";
pub const EXIT_C: &str = "c";
pub const EXIT_D: &str = "d";

pub const H: &str = "H";
pub const V: &str = "V";
/// Horizontal component leaving a polarizing beamsplitter through the transmit port.
pub const H_TRANSMIT: &str = "Ht";
/// Vertical component leaving a polarizing beamsplitter through the reflect port.
pub const V_REFLECT: &str = "Vr";

/// Interferometer arm of one particle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Particle {
    Positron,
    Electron,
}

impl Particle {
    pub fn id(self) -> &'static str {
        match self {
            Particle::Positron => POSITRON,
            Particle::Electron => ELECTRON,
        }
    }
}

/// Dense linear map from the levels `from` of one subsystem onto the levels `to`.
///
/// `columns[j][i]` is the coefficient of output level `i` in the image of input level `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeMap<T> {
    from: Vec<String>,
    to: Vec<String>,
    columns: Vec<Vec<Complex<T>>>,
}

impl<T: Real> ModeMap<T> {
    pub fn new(from: &[&str], to: &[&str], columns: Vec<Vec<Complex<T>>>) -> Result<Self> {
        if columns.len() != from.len() || columns.iter().any(|c| c.len() != to.len()) {
            return Err(Error::Structure(format!(
                "mode map {}x{} given {} columns",
                to.len(),
                from.len(),
                columns.len()
            )));
        }
        Ok(Self {
            from: from.iter().map(|s| s.to_string()).collect(),
            to: to.iter().map(|s| s.to_string()).collect(),
            columns,
        })
    }

    pub fn from_levels(&self) -> &[String] {
        &self.from
    }

    pub fn to_levels(&self) -> &[String] {
        &self.to
    }

    pub fn coefficient(&self, to: usize, from: usize) -> Complex<T> {
        self.columns[from][to]
    }

    pub fn adjoint(&self) -> Self {
        let columns = (0..self.to.len())
            .map(|i| (0..self.from.len()).map(|j| self.columns[j][i].conj()).collect())
            .collect();
        Self {
            from: self.to.clone(),
            to: self.from.clone(),
            columns,
        }
    }

    /// Columns orthonormal within `tol`.
    pub fn is_isometry(&self, tol: T) -> bool {
        self.columns.iter().enumerate().all(|(j, cj)| {
            self.columns.iter().enumerate().all(|(k, ck)| {
                let dot = cj
                    .iter()
                    .zip(ck)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
                let expect = if j == k { T::one() } else { T::zero() };
                (dot - Complex::new(expect, T::zero())).norm() <= tol
            })
        })
    }

    /// Applies the map to subsystem `id`, whose alphabet must equal `from`.
    pub fn apply(&self, state: &StateVector<T>, id: &str) -> Result<StateVector<T>> {
        let sub = state.layout().subsystem(id)?;
        if sub.alphabet() != self.from.as_slice() {
            return Err(Error::Structure(format!(
                "subsystem `{id}` has levels {{{}}}, element expects {{{}}}",
                sub.alphabet().join(","),
                self.from.join(",")
            )));
        }
        state.map_subsystem(id, self.to.clone(), |level| {
            Ok(self.columns[level]
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != Complex::default())
                .map(|(i, c)| (i, *c))
                .collect())
        })
    }
}

/// Phase convention of a lossless symmetric 50/50 beamsplitter.
///
/// With reflection phase `r` (`|r| = 1`) the two input ports map as
/// `x → (p + r q)/√2`, `y → (−r̄ p + q)/√2`, which is unitary for every `r`.
/// For the default `r = i` this is the familiar `(p + i q)/√2`, `(i p + q)/√2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamsplitterConvention<T> {
    reflection_phase: Complex<T>,
}

impl<T: Real> Default for BeamsplitterConvention<T> {
    fn default() -> Self {
        Self {
            reflection_phase: Complex::new(T::zero(), T::one()),
        }
    }
}

impl<T: Real> BeamsplitterConvention<T> {
    pub fn new(reflection_phase: Complex<T>) -> Result<Self> {
        if (reflection_phase.norm() - T::one()).abs() > crate::state::norm_tolerance() {
            return Err(Error::Parameter {
                name: "reflection_phase",
                reason: format!("modulus {} is not 1", reflection_phase.norm()),
            });
        }
        Ok(Self { reflection_phase })
    }

    pub fn reflection_phase(&self) -> Complex<T> {
        self.reflection_phase
    }

    /// Images of the two input ports as `[coefficient on first output, on second output]`.
    pub fn port_images(&self) -> [[Complex<T>; 2]; 2] {
        let s = real::<T>(0.5).sqrt();
        let r = self.reflection_phase;
        let one = Complex::new(s, T::zero());
        [[one, r * s], [-r.conj() * s, one]]
    }

    /// The first splitter of each interferometer: `in → (r|O⟩ + |NO⟩)/√2`.
    ///
    /// The reflected beam is the one sent into the overlapping arm.
    pub fn first_splitter(&self) -> ModeMap<T> {
        let s = real::<T>(0.5).sqrt();
        ModeMap::new(
            &[INPUT],
            &[OVERLAPPING, NON_OVERLAPPING],
            vec![vec![self.reflection_phase * s, Complex::new(s, T::zero())]],
        )
        .expect("fixed shape")
    }

    /// The reunifying splitter, `O → (|c⟩ + r|d⟩)/√2`, `NO → (−r̄|c⟩ + |d⟩)/√2`, or the
    /// straight-through routing `O → c`, `NO → d` when it is removed.
    pub fn second_splitter(&self, present: bool) -> ModeMap<T> {
        let columns = if present {
            self.port_images().iter().map(|c| c.to_vec()).collect()
        } else {
            let (o, z) = (Complex::new(T::one(), T::zero()), Complex::default());
            vec![vec![o, z], vec![z, o]]
        };
        ModeMap::new(&[OVERLAPPING, NON_OVERLAPPING], &[EXIT_C, EXIT_D], columns)
            .expect("fixed shape")
    }
}

/// Both particles in their input level, over the layout `+:{in} ⊗ -:{in}`.
pub fn hardy_source<T: Real>() -> StateVector<T> {
    let layout = Layout::new(vec![
        Subsystem::new(POSITRON, [INPUT]),
        Subsystem::new(ELECTRON, [INPUT]),
    ])
    .expect("distinct ids");
    StateVector::basis(layout, &[(POSITRON, INPUT), (ELECTRON, INPUT)]).expect("valid label")
}

pub fn apply_first_beamsplitter<T: Real>(
    state: &StateVector<T>,
    particle: Particle,
    convention: &BeamsplitterConvention<T>,
) -> Result<StateVector<T>> {
    convention.first_splitter().apply(state, particle.id())
}

/// Moves the amplitude of `|O⁺O⁻⟩` onto the annihilation channel.
pub fn apply_annihilation<T: Real>(state: &StateVector<T>) -> Result<StateVector<T>> {
    for p in [POSITRON, ELECTRON] {
        let alphabet = state.layout().subsystem(p)?.alphabet();
        if alphabet != [OVERLAPPING, NON_OVERLAPPING] {
            return Err(Error::Structure(format!(
                "annihilation expects `{p}` over {{O,NO}}, found {{{}}}",
                alphabet.join(",")
            )));
        }
    }
    let collide = state
        .layout()
        .label(&[(POSITRON, OVERLAPPING), (ELECTRON, OVERLAPPING)])?;
    Ok(state.move_to_gamma(&collide))
}

pub fn apply_second_beamsplitter<T: Real>(
    state: &StateVector<T>,
    particle: Particle,
    present: bool,
    convention: &BeamsplitterConvention<T>,
) -> Result<StateVector<T>> {
    convention.second_splitter(present).apply(state, particle.id())
}

/// Maps an exit-port ket back through the (present or absent) reunifying splitter, so that a
/// post-selection on `{c, d}` can be expressed on the path alphabet `{O, NO}`.
pub fn pull_back_second_beamsplitter<T: Real>(
    state: &StateVector<T>,
    particle: Particle,
    present: bool,
    convention: &BeamsplitterConvention<T>,
) -> Result<StateVector<T>> {
    convention
        .second_splitter(present)
        .adjoint()
        .apply(state, particle.id())
}

/// Polarization subsystem of photon `n` over `{H, V}`.
pub fn photon(n: u8) -> Subsystem {
    Subsystem::new(n.to_string(), [H, V])
}

/// Polarizing beamsplitter: `H` leaves through the transmit port, `V` through the reflect port.
pub fn apply_pbs<T: Real>(state: &StateVector<T>, photon: &str) -> Result<StateVector<T>> {
    let (o, z) = (Complex::new(T::one(), T::zero()), Complex::default());
    ModeMap::new(&[H, V], &[H_TRANSMIT, V_REFLECT], vec![vec![o, z], vec![z, o]])?
        .apply(state, photon)
}

/// Real rotation of the polarization basis.
pub fn polarization_rotation<T: Real>(phi: T) -> ModeMap<T> {
    let (s, c) = phi.sin_cos();
    let z = T::zero();
    ModeMap::new(
        &[H, V],
        &[H, V],
        vec![
            vec![Complex::new(c, z), Complex::new(-s, z)],
            vec![Complex::new(s, z), Complex::new(c, z)],
        ],
    )
    .expect("fixed shape")
}

/// `|H⟩ → cos φ|H⟩ − sin φ|V⟩`, `|V⟩ → sin φ|H⟩ + cos φ|V⟩` on one photon.
pub fn apply_polarization_rotation<T: Real>(
    state: &StateVector<T>,
    photon: &str,
    phi: T,
) -> Result<StateVector<T>> {
    polarization_rotation(phi).apply(state, photon)
}

/// The ket selected by rotating one photon by `φ` and keeping the `H` output:
/// `cos φ|H⟩ + sin φ|V⟩`. The product over several photons is the bipartite post-selection.
pub fn postselection_state<T: Real>(photons: &[u8], phi: T) -> Result<StateVector<T>> {
    let layout = Layout::new(photons.iter().map(|&n| photon(n)).collect())?;
    let (s, c) = phi.sin_cos();
    let single = [Complex::new(c, T::zero()), Complex::new(s, T::zero())];
    let terms = layout.product_labels().into_iter().map(|label| {
        let BasisLabel::Product(levels) = &label else {
            unreachable!()
        };
        let amp = levels
            .iter()
            .fold(Complex::new(T::one(), T::zero()), |acc, &l| acc * single[l]);
        (label, amp)
    });
    StateVector::from_amplitudes(layout.clone(), terms.collect::<Vec<_>>())
}
