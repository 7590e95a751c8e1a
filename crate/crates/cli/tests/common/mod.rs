//! Golden-report cases shared by the golden and acceptance tests.

use std::fs;
use std::path::{Path, PathBuf};

use hardy_cli::run_cli;

pub const CASES: &[(&str, &[&str])] = &[
    ("hardy_case1.json", &["--scenario", "hardy", "--format", "json"]),
    ("hardy_case2.table", &["--scenario", "hardy", "--bs2-plus=false"]),
    ("hardy_case4.csv", &["--scenario", "hardy", "--bs2-plus=false", "--bs2-minus=false", "--format", "csv"]),
    ("counterfactual.json", &["--scenario", "counterfactual", "--format", "json"]),
    ("counterfactual.table", &["--scenario", "counterfactual"]),
    ("swap_coherent.table", &["--scenario", "swap"]),
    ("swap_decohered.json", &["--scenario", "swap", "--swap-mode", "decohered", "--format", "json"]),
    ("photonic_weak.table", &["--scenario", "photonic-weak"]),
    ("photonic_weak.json", &["--scenario", "photonic-weak", "--format", "json"]),
    ("photonic_weak_shifted.csv", &["--scenario", "photonic-weak", "--gamma", "0.3", "--epsilon", "1.7", "--format", "csv"]),
    ("photonic_epsilon_sweep.csv", &["--scenario", "photonic-weak", "--sweep", "epsilon=0.5,1,2", "--format", "csv"]),
    ("pointer.csv", &["--scenario", "pointer", "--sigma", "1", "--grid-points", "256", "--format", "csv"]),
    ("pointer_sweep.json", &["--scenario", "pointer-sweep", "--grid-points", "256", "--format", "json"]),
    ("pointer_sweep.csv", &["--scenario", "pointer-sweep", "--grid-points", "256", "--format", "csv"]),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run_to_file(args: &[&str], out: &Path) -> String {
    let mut argv = vec!["hardy", "run"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--out", out.to_str().unwrap()]);
    assert_eq!(run_cli(argv), 0, "{args:?}");
    fs::read_to_string(out).unwrap()
}

/// Drops the version header: the `# ` line of CSV/table output or the `meta` object of JSON.
pub fn strip_meta(text: &str) -> String {
    let mut out = String::new();
    let mut in_meta = false;
    for line in text.split_inclusive('\n') {
        if line.starts_with("# ") {
            continue;
        }
        if line.starts_with("  \"meta\": {") {
            in_meta = true;
            continue;
        }
        if in_meta {
            in_meta = !line.starts_with("  },");
            continue;
        }
        out.push_str(line);
    }
    out
}

/// Names of golden files whose current output differs (after stripping the header).
pub fn golden_mismatches() -> Vec<&'static str> {
    let dir = tempfile::tempdir().unwrap();
    CASES
        .iter()
        .filter(|(name, args)| {
            let got = strip_meta(&run_to_file(args, &dir.path().join(name)));
            fs::read_to_string(golden_dir().join(name)).map_or(true, |want| got != want)
        })
        .map(|(name, _)| *name)
        .collect()
}
