use hardy_core::scenarios::{run_hardy_gedanken, ExitOutcome, HardyConfig};
use hardy_core::{BasisLabel, Complex64};

const TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Hand-expanded amplitudes `(γ, c⁺c⁻, c⁺d⁻, d⁺c⁻, d⁺d⁻)` per configuration.
fn table(config: HardyConfig) -> [Complex64; 5] {
    let k = 1.0 / (2.0 * 2f64.sqrt());
    match config.case() {
        1 => [c(-0.5, 0.0), c(-0.75, 0.0), c(0.0, 0.25), c(0.0, 0.25), c(-0.25, 0.0)],
        2 => [c(-0.5, 0.0), c(-k, 0.0), c(0.0, k), c(0.0, 2.0 * k), c(0.0, 0.0)],
        3 => [c(-0.5, 0.0), c(-k, 0.0), c(0.0, 2.0 * k), c(0.0, k), c(0.0, 0.0)],
        4 => [c(-0.5, 0.0), c(0.0, 0.0), c(0.0, 0.5), c(0.0, 0.5), c(0.5, 0.0)],
        _ => unreachable!(),
    }
}

const EXITS: [(&str, &str); 4] = [("c", "c"), ("c", "d"), ("d", "c"), ("d", "d")];

#[test]
fn every_configuration_matches_hand_expansion() {
    for config in HardyConfig::ALL {
        let run = run_hardy_gedanken::<f64>(config).unwrap();
        let want = table(config);
        let got_gamma = run.state.gamma_amplitude();
        assert!((got_gamma - want[0]).norm() < TOL, "case {}: gamma {got_gamma}", config.case());
        for ((p, e), w) in EXITS.iter().zip(&want[1..]) {
            let got = run.state.amplitude_of(&[("+", p), ("-", e)]).unwrap();
            assert!((got - w).norm() < TOL, "case {}: {p}{e} {got} vs {w}", config.case());
        }
        // nothing outside the five expected labels
        let listed: f64 = want.iter().map(|a| a.norm_sqr()).sum();
        assert!((run.state.norm_sqr() - listed).abs() < TOL);
        assert!((listed - 1.0).abs() < TOL);
    }
}

#[test]
fn probability_tables() {
    let both = run_hardy_gedanken::<f64>(HardyConfig::new(true, true)).unwrap();
    assert!((both.probability(ExitOutcome::DD) - 1.0 / 16.0).abs() < TOL);
    assert!((both.probability(ExitOutcome::Annihilation) - 0.25).abs() < TOL);
    assert!((both.probability(ExitOutcome::CC) - 9.0 / 16.0).abs() < TOL);

    let none = run_hardy_gedanken::<f64>(HardyConfig::new(false, false)).unwrap();
    assert!(none.probability(ExitOutcome::CC).abs() < TOL);

    let case2 = run_hardy_gedanken::<f64>(HardyConfig::new(false, true)).unwrap();
    assert!((case2.probability(ExitOutcome::DC) - 0.5).abs() < TOL);

    for config in HardyConfig::ALL {
        let run = run_hardy_gedanken::<f64>(config).unwrap();
        let total: f64 = run.probabilities.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < TOL);
    }
}

#[test]
fn single_precision_agrees() {
    for config in HardyConfig::ALL {
        let lo = run_hardy_gedanken::<f32>(config).unwrap();
        let hi = run_hardy_gedanken::<f64>(config).unwrap();
        for (label, a) in hi.state.iter() {
            let b = lo.state.amplitude(label);
            assert!((f64::from(b.re) - a.re).abs() < 1e-6);
            assert!((f64::from(b.im) - a.im).abs() < 1e-6);
        }
        assert!(lo.state.iter().all(|(l, _)| matches!(l, BasisLabel::Gamma | BasisLabel::Product(_))));
    }
}
