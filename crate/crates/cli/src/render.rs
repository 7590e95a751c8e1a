//! Report encodings: JSON, CSV and a human-readable table.

use serde::Serialize;

use crate::config::{OutputFormat, Scenario};
use crate::report::{Cplx, Report};

pub const PROGRAM: &str = "hardy";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Prefix of the metadata line in CSV and table output.
pub const META_PREFIX: &str = "# ";

#[derive(Serialize)]
struct Meta {
    program: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Document<'a> {
    meta: Meta,
    scenario: &'static str,
    #[serde(flatten)]
    report: &'a Report,
}

pub fn render(report: &Report, scenario: Scenario, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report, scenario),
        OutputFormat::Csv => to_csv(report, scenario),
        OutputFormat::Table => to_table(report, scenario),
    }
}

fn meta_line(scenario: Scenario) -> String {
    format!("{META_PREFIX}{PROGRAM} {VERSION} scenario={scenario}\n")
}

pub fn to_json(report: &Report, scenario: Scenario) -> String {
    let doc = Document {
        meta: Meta {
            program: PROGRAM,
            version: VERSION,
        },
        scenario: scenario.as_str(),
        report,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

/// Shortest text that parses back to the same `f64`, spelled as in the JSON output.
fn num(x: f64) -> String {
    serde_json::to_string(&(x + 0.0)).expect("finite float")
}

fn header_and_rows(report: &Report) -> (Vec<String>, Vec<Vec<String>>) {
    let h = |names: &[&str]| names.iter().map(|s| (*s).to_owned()).collect::<Vec<_>>();
    match report {
        Report::Hardy(r) => (
            h(&["outcome", "label", "re", "im", "probability", "rational"]),
            r.rows
                .iter()
                .map(|row| {
                    vec![
                        row.key.to_owned(),
                        row.label.to_owned(),
                        num(row.amplitude.re),
                        num(row.amplitude.im),
                        num(row.probability),
                        row.rational.clone().unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
        Report::Counterfactual(r) => (
            h(&["C+(inf)", "C-(inf)", "D+(0)", "D-(0)", "violated"]),
            r.assignments
                .iter()
                .map(|a| {
                    let x = &a.assignment;
                    vec![
                        x.c_plus.to_string(),
                        x.c_minus.to_string(),
                        x.d_plus.to_string(),
                        x.d_minus.to_string(),
                        a.violated.join("; "),
                    ]
                })
                .collect(),
        ),
        Report::Swap(r) => (
            h(&["environment", "weight", "fidelity", "basis", "re", "im"]),
            r.branches
                .iter()
                .flat_map(|b| {
                    b.amplitudes.iter().map(move |(label, a)| {
                        vec![
                            b.environment.clone(),
                            num(b.weight),
                            num(b.fidelity),
                            label.clone(),
                            num(a.re),
                            num(a.im),
                        ]
                    })
                })
                .collect(),
        ),
        Report::Photonic(r) => {
            let mut rows = Vec::new();
            let mut push = |quantity: &str, label: &str, index: usize, c: Cplx| {
                rows.push(vec![quantity.to_owned(), label.to_owned(), index.to_string(), num(c.re), num(c.im)]);
            };
            let real = |x: f64| Cplx { re: x, im: 0.0 };
            push("herald_probability", "", 0, real(r.herald_probability));
            push("overlap", "", 0, r.overlap);
            push("success_probability", "", 0, real(r.success_probability));
            push("A2_w", "", 0, r.a2_w);
            push("A4_w", "", 0, r.a4_w);
            for (i, w) in r.a24_w.iter().enumerate() {
                push("A24_w", "", i, *w);
            }
            for d in &r.decomposition {
                let label = format!("{} {}", d.label, d.path_label);
                for (i, w) in d.weight.iter().enumerate() {
                    push("term_weight", &label, i, real(*w));
                }
                push("term_weak_value", &label, 0, d.weak_value);
            }
            for o in &r.occupations {
                push("occupation", o.name, 0, o.weak_value);
            }
            (h(&["quantity", "label", "index", "re", "im"]), rows)
        }
        Report::Pointer(r) => (
            h(&[
                "measured",
                "axis",
                "mean",
                "variance",
                "weak_value_re",
                "weak_value_im",
                "deviation",
                "success_probability",
            ]),
            r.measurements
                .iter()
                .flat_map(|m| {
                    (0..m.mean.len()).map(move |i| {
                        vec![
                            m.measured.to_owned(),
                            i.to_string(),
                            num(m.mean[i]),
                            num(m.variance[i]),
                            num(m.weak_value[i].re),
                            num(m.weak_value[i].im),
                            num(m.deviation[i]),
                            num(m.success_probability),
                        ]
                    })
                })
                .collect(),
        ),
        Report::PointerSweep(r) => (
            h(&["measured", "sigma", "r", "axis", "mean", "deviation", "success_probability"]),
            r.rows
                .iter()
                .flat_map(|row| {
                    (0..row.mean.len()).map(move |i| {
                        vec![
                            row.measured.to_owned(),
                            num(row.sigma),
                            num(row.r),
                            i.to_string(),
                            num(row.mean[i]),
                            num(row.deviation[i]),
                            num(row.success_probability),
                        ]
                    })
                })
                .collect(),
        ),
        Report::Sweep(s) => {
            let mut header = vec![s.sweep.param.to_owned()];
            let mut rows = Vec::new();
            for (value, run) in s.sweep.values.iter().zip(&s.runs) {
                let (inner_header, inner_rows) = header_and_rows(run);
                if header.len() == 1 {
                    header.extend(inner_header);
                }
                rows.extend(inner_rows.into_iter().map(|mut row| {
                    row.insert(0, num(*value));
                    row
                }));
            }
            (header, rows)
        }
    }
}

pub fn to_csv(report: &Report, scenario: Scenario) -> String {
    let (header, rows) = header_and_rows(report);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
    meta_line(scenario) + &body
}

/// Rounded for reading: 12 decimals, trailing zeros dropped, tiny values shown as 0.
fn short(x: f64) -> String {
    if x.abs() < 5e-13 {
        return "0".into();
    }
    if x.abs() < 1e-4 || x.abs() >= 1e9 {
        return format!("{x:.6e}");
    }
    let s = format!("{x:.12}");
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}

pub fn complex(c: Cplx) -> String {
    let im = short(c.im);
    match im.strip_prefix('-') {
        Some(mag) => format!("{}-{mag}i", short(c.re)),
        None => format!("{}+{im}i", short(c.re)),
    }
}

fn vector(v: &[Cplx]) -> String {
    let parts: Vec<_> = v.iter().map(|c| complex(*c)).collect();
    format!("({})", parts.join(", "))
}

fn reals(v: &[f64]) -> String {
    let parts: Vec<_> = v.iter().map(|x| short(*x)).collect();
    format!("({})", parts.join(", "))
}

fn with_rational(p: f64, r: &Option<String>) -> String {
    match r {
        Some(r) => format!("{} ({r})", short(p)),
        None => short(p),
    }
}

fn table_lines(report: &Report, out: &mut Vec<String>) {
    match report {
        Report::Hardy(r) => {
            out.push(format!(
                "case = {} (bs2_plus = {}, bs2_minus = {})",
                r.config.case, r.config.bs2_plus, r.config.bs2_minus
            ));
            for row in &r.rows {
                out.push(format!(
                    "{:<8} amplitude = {:<22} {} = {}",
                    row.label,
                    complex(row.amplitude),
                    row.key,
                    with_rational(row.probability, &row.rational)
                ));
            }
        }
        Report::Counterfactual(r) => {
            for c in &r.constraints {
                out.push(format!(
                    "constraint {:<26} evidence: case {} {} = {}",
                    c.name,
                    c.evidence_case,
                    c.evidence_outcome,
                    with_rational(c.probability, &c.probability_rational)
                ));
            }
            out.push(format!("satisfying_assignments = {}", r.satisfying_assignments.len()));
            out.push(format!(
                "without \"{}\": {} satisfying",
                r.without_joint_detection.dropped, r.without_joint_detection.count
            ));
            out.push("C+ C- D+ D-  violated".into());
            for a in &r.assignments {
                let x = &a.assignment;
                let violated = if a.violated.is_empty() {
                    "-".to_owned()
                } else {
                    a.violated.join("; ")
                };
                out.push(format!(
                    " {}  {}  {}  {}  {violated}",
                    x.c_plus, x.c_minus, x.d_plus, x.d_minus
                ));
            }
        }
        Report::Swap(r) => {
            out.push(format!("mode = {}", r.mode));
            out.push(format!("calibration_phases = {}", reals(&r.calibration_phases)));
            out.push(format!(
                "success_probability = {}",
                with_rational(r.success_probability, &r.success_probability_rational)
            ));
            if let Some(f) = r.fidelity {
                out.push(format!("fidelity = {}", short(f)));
            }
            for b in &r.branches {
                out.push(format!(
                    "branch {}: weight = {}, fidelity = {}",
                    b.environment,
                    with_rational(b.weight, &b.weight_rational),
                    short(b.fidelity)
                ));
                for (label, a) in &b.amplitudes {
                    out.push(format!("  {label:<6} {}", complex(*a)));
                }
            }
        }
        Report::Photonic(r) => {
            out.push(format!("gamma = {}", short(r.gamma)));
            out.push(format!("epsilon = {}", short(r.epsilon)));
            out.push(format!("phi = {}", short(r.phi)));
            out.push(format!(
                "herald_probability = {}",
                with_rational(r.herald_probability, &r.herald_probability_rational)
            ));
            out.push(format!("overlap = {}", complex(r.overlap)));
            out.push(format!(
                "success_probability = {}",
                with_rational(r.success_probability, &r.success_probability_rational)
            ));
            out.push(format!("A2_w = {}", complex(r.a2_w)));
            out.push(format!("A4_w = {}", complex(r.a4_w)));
            out.push(format!("A24_w = {}", vector(&r.a24_w)));
            out.push("decomposition:".into());
            for d in &r.decomposition {
                out.push(format!(
                    "  {} ({}) weight = {} weak value = {}",
                    d.label,
                    d.path_label,
                    reals(&d.weight),
                    complex(d.weak_value)
                ));
            }
            out.push(format!("recombined = {}", vector(&r.recombined)));
            out.push("occupations:".into());
            for o in &r.occupations {
                out.push(format!("  {:<8} = {}", o.name, complex(o.weak_value)));
            }
            out.push(format!("paradox_identity_holds = {}", r.paradox_identity_holds));
        }
        Report::Pointer(r) => {
            out.push(format!(
                "gamma = {}, epsilon = {}, sigma = {}, phi = {}, r = {}, grid_points = {}",
                short(r.gamma),
                short(r.epsilon),
                short(r.sigma),
                short(r.phi),
                short(r.r),
                r.grid_points
            ));
            for m in &r.measurements {
                out.push(format!(
                    "{:<8} mean = {} variance = {} weak value = {} deviation = {} success = {}",
                    m.measured,
                    reals(&m.mean),
                    reals(&m.variance),
                    vector(&m.weak_value),
                    reals(&m.deviation),
                    with_rational(m.success_probability, &m.success_probability_rational)
                ));
            }
        }
        Report::PointerSweep(r) => {
            out.push(format!(
                "gamma = {}, epsilon = {}, phi = {}, grid_points = {}",
                short(r.gamma),
                short(r.epsilon),
                short(r.phi),
                r.grid_points
            ));
            out.push(format!(
                "{:<8} {:>8} {:>10}  {:<34} {:<34} success",
                "measured", "sigma", "r", "mean", "deviation"
            ));
            for row in &r.rows {
                out.push(format!(
                    "{:<8} {:>8} {:>10}  {:<34} {:<34} {}",
                    row.measured,
                    short(row.sigma),
                    short(row.r),
                    reals(&row.mean),
                    reals(&row.deviation),
                    short(row.success_probability)
                ));
            }
        }
        Report::Sweep(s) => {
            for (value, run) in s.sweep.values.iter().zip(&s.runs) {
                out.push(format!("[{} = {}]", s.sweep.param, short(*value)));
                table_lines(run, out);
            }
        }
    }
}

pub fn to_table(report: &Report, scenario: Scenario) -> String {
    let mut lines = Vec::new();
    table_lines(report, &mut lines);
    let mut s = meta_line(scenario);
    for l in lines {
        s.push_str(l.trim_end());
        s.push('\n');
    }
    s
}
