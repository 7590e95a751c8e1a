//! Occupation-number states of a few spatial modes and two-photon interference.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::optics::BeamsplitterConvention;
use crate::state::PRUNE_THRESHOLD;
use crate::{real, Real};

/// Largest occupation handled per mode, and per state.
pub const MAX_PHOTONS: u8 = 2;

/// Superposition over occupation tuples of named spatial modes.
#[derive(Clone, Debug, PartialEq)]
pub struct FockModeState<T> {
    modes: Vec<String>,
    amplitudes: BTreeMap<Vec<u8>, Complex<T>>,
}

impl<T: Real> FockModeState<T> {
    pub fn new<I, S>(modes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            modes: modes.into_iter().map(Into::into).collect(),
            amplitudes: BTreeMap::new(),
        }
    }

    pub fn vacuum<I, S>(modes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut s = Self::new(modes);
        let n = s.modes.len();
        s.amplitudes
            .insert(vec![0; n], Complex::new(T::one(), T::zero()));
        s
    }

    /// Adds `amplitude` to the occupation tuple `occupation`.
    pub fn with_term(mut self, occupation: &[u8], amplitude: Complex<T>) -> Result<Self> {
        if occupation.len() != self.modes.len() {
            return Err(Error::Structure(format!(
                "occupation tuple of length {} for {} modes",
                occupation.len(),
                self.modes.len()
            )));
        }
        if let Some(&n) = occupation.iter().find(|&&n| n > MAX_PHOTONS) {
            return Err(Error::UnsupportedOccupancy(format!(
                "{n} photons in one mode (at most {MAX_PHOTONS})"
            )));
        }
        *self
            .amplitudes
            .entry(occupation.to_vec())
            .or_default() += amplitude;
        Ok(self)
    }

    pub fn modes(&self) -> &[String] {
        &self.modes
    }

    pub fn amplitude(&self, occupation: &[u8]) -> Complex<T> {
        self.amplitudes.get(occupation).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u8], &Complex<T>)> {
        self.amplitudes.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .values()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Photon-number distribution: total photon count → probability.
    pub fn number_distribution(&self) -> BTreeMap<u32, T> {
        let mut out = BTreeMap::new();
        for (occ, a) in &self.amplitudes {
            let n = occ.iter().map(|&x| u32::from(x)).sum();
            let p = out.entry(n).or_insert_with(T::zero);
            *p += a.norm_sqr();
        }
        out
    }
}

fn factorial(n: u8) -> u32 {
    (1..=u32::from(n)).product()
}

/// Interferes modes `a` and `b` on a 50/50 beamsplitter with outputs `c` and `d`.
///
/// Creation operators transform as `a† → (c† + r d†)/√2`, `b† → (−r̄ c† + d†)/√2`
/// (`r` the reflection phase, `i` by default). Each occupation term `|n_a, n_b⟩` is expanded
/// as `(a†)^n_a (b†)^n_b / √(n_a! n_b!) |0⟩` and re-collected with `c†^p d†^q |0⟩ = √(p! q!) |p, q⟩`.
pub fn hom_combine<T: Real>(
    input: &FockModeState<T>,
    convention: &BeamsplitterConvention<T>,
    outputs: (&str, &str),
) -> Result<FockModeState<T>> {
    if input.modes.len() != 2 {
        return Err(Error::Structure(format!(
            "beamsplitter combines two modes, state has {}",
            input.modes.len()
        )));
    }
    let [img_a, img_b] = convention.port_images();
    let mut out: BTreeMap<Vec<u8>, Complex<T>> = BTreeMap::new();

    for (occ, amp) in &input.amplitudes {
        let (na, nb) = (occ[0], occ[1]);
        if na > MAX_PHOTONS || nb > MAX_PHOTONS || na + nb > MAX_PHOTONS {
            return Err(Error::UnsupportedOccupancy(format!(
                "|{na},{nb}⟩ exceeds {MAX_PHOTONS} photons"
            )));
        }
        // polynomial in (c†, d†): (power of c†, power of d†) → coefficient
        let mut poly: BTreeMap<(u8, u8), Complex<T>> = BTreeMap::new();
        poly.insert((0, 0), *amp / real::<T>(f64::from(factorial(na) * factorial(nb))).sqrt());
        let factors = std::iter::repeat_n(img_a, usize::from(na))
            .chain(std::iter::repeat_n(img_b, usize::from(nb)));
        for [to_c, to_d] in factors {
            let mut next = BTreeMap::new();
            for ((p, q), coeff) in poly {
                *next.entry((p + 1, q)).or_insert_with(Complex::default) += coeff * to_c;
                *next.entry((p, q + 1)).or_insert_with(Complex::default) += coeff * to_d;
            }
            poly = next;
        }
        for ((p, q), coeff) in poly {
            let norm = real::<T>(f64::from(factorial(p) * factorial(q))).sqrt();
            *out.entry(vec![p, q]).or_default() += coeff * norm;
        }
    }

    let threshold: T = real(PRUNE_THRESHOLD);
    out.retain(|_, a| a.norm() >= threshold);
    Ok(FockModeState {
        modes: vec![outputs.0.to_owned(), outputs.1.to_owned()],
        amplitudes: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    type C = Complex<f64>;

    fn combine(s: &FockModeState<f64>) -> FockModeState<f64> {
        hom_combine(s, &BeamsplitterConvention::default(), ("c", "d")).unwrap()
    }

    #[test]
    fn single_photon_splits_evenly() {
        let s = FockModeState::new(["a", "b"])
            .with_term(&[1, 0], C::new(1.0, 0.0))
            .unwrap();
        let out = combine(&s);
        assert_eq!(out.modes(), ["c", "d"]);
        assert!((out.amplitude(&[1, 0]) - C::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
        assert!((out.amplitude(&[0, 1]) - C::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-12);
    }

    #[test]
    fn hong_ou_mandel_bunching() {
        let s = FockModeState::new(["a", "b"])
            .with_term(&[1, 1], C::new(1.0, 0.0))
            .unwrap();
        let out = combine(&s);
        assert_eq!(out.amplitude(&[1, 1]), C::default());
        assert!((out.amplitude(&[2, 0]) - C::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-12);
        assert!((out.amplitude(&[0, 2]) - C::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-12);
        assert_eq!(out.iter().count(), 2);
    }

    #[test]
    fn vacuum_passes_through() {
        let out = combine(&FockModeState::vacuum(["a", "b"]));
        assert_eq!(out.iter().count(), 1);
        assert_eq!(out.amplitude(&[0, 0]), C::new(1.0, 0.0));
    }

    #[test]
    fn occupancy_limits() {
        assert!(matches!(
            FockModeState::<f64>::new(["a", "b"]).with_term(&[3, 0], C::new(1.0, 0.0)),
            Err(Error::UnsupportedOccupancy(_))
        ));
        let s = FockModeState::new(["a", "b"])
            .with_term(&[2, 1], C::new(1.0, 0.0))
            .unwrap();
        assert!(matches!(
            hom_combine(&s, &BeamsplitterConvention::default(), ("c", "d")),
            Err(Error::UnsupportedOccupancy(_))
        ));
        let three = FockModeState::<f64>::vacuum(["a", "b", "e"]);
        assert!(matches!(
            hom_combine(&three, &BeamsplitterConvention::default(), ("c", "d")),
            Err(Error::Structure(_))
        ));
    }

    fn arb_fock() -> impl Strategy<Value = FockModeState<f64>> {
        let occupations: [[u8; 2]; 6] = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6).prop_map(move |amps| {
            occupations
                .iter()
                .zip(amps)
                .fold(FockModeState::new(["a", "b"]), |s, (occ, (re, im))| {
                    s.with_term(occ, C::new(re, im)).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn photon_number_is_conserved(s in arb_fock(), theta in -3.0f64..3.0) {
            let conv = BeamsplitterConvention::new(C::from_polar(1.0, theta)).unwrap();
            let out = hom_combine(&s, &conv, ("c", "d")).unwrap();
            prop_assert!((out.norm_sqr() - s.norm_sqr()).abs() < 1e-12);
            let before = s.number_distribution();
            let after = out.number_distribution();
            for (n, p) in &before {
                let q = after.get(n).copied().unwrap_or(0.0);
                prop_assert!((p - q).abs() < 1e-12, "n={} before={} after={}", n, p, q);
            }
            for n in after.keys() {
                prop_assert!(before.contains_key(n));
            }
        }
    }
}
