//! Run configuration: JSON file schema, defaults and validation.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_GAMMA: f64 = 0.0;
pub const DEFAULT_EPSILON: f64 = 1.0;
pub const DEFAULT_SIGMA: f64 = 8.0;
pub const DEFAULT_PHI: f64 = -std::f64::consts::FRAC_PI_4;
pub const DEFAULT_GRID_POINTS: usize = 4096;
pub const MIN_GRID_POINTS: usize = 64;
pub const DEFAULT_SWEEP_SIGMAS: [f64; 6] = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];

macro_rules! keyword_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                Self::ALL
                    .iter()
                    .copied()
                    .find(|v| v.as_str() == s)
                    .ok_or_else(|| {
                        let names: Vec<_> = Self::ALL.iter().map(|v| v.as_str()).collect();
                        format!("`{s}` is not one of {}", names.join(", "))
                    })
            }
        }
    };
}

keyword_enum!(Scenario {
    Hardy => "hardy",
    Counterfactual => "counterfactual",
    Swap => "swap",
    PhotonicWeak => "photonic-weak",
    Pointer => "pointer",
    PointerSweep => "pointer-sweep",
});

keyword_enum!(OutputFormat {
    Table => "table",
    Json => "json",
    Csv => "csv",
});

keyword_enum!(SwapModeName {
    Coherent => "coherent",
    Decohered => "decohered",
});

keyword_enum!(SweepParam {
    Gamma => "gamma",
    Epsilon => "epsilon",
    Sigma => "sigma",
    Phi => "phi",
});

/// Parameters as written in a file or on the command line; absent fields take defaults.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParameters {
    pub gamma: Option<f64>,
    pub epsilon: Option<f64>,
    pub sigma: Option<f64>,
    pub phi: Option<f64>,
    pub bs2_plus: Option<bool>,
    pub bs2_minus: Option<bool>,
    pub swap_mode: Option<SwapModeName>,
    pub grid_points: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// The config file as parsed, before defaults and flag overrides.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub scenario: Option<Scenario>,
    #[serde(default)]
    pub parameters: RawParameters,
    pub sweep: Option<RawSweep>,
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Parameters {
    pub gamma: f64,
    pub epsilon: f64,
    pub sigma: f64,
    pub phi: f64,
    pub bs2_plus: bool,
    pub bs2_minus: bool,
    pub swap_mode: SwapModeName,
    pub grid_points: usize,
}

impl Default for Parameters {
    fn default() -> Self {
        Self {
            gamma: DEFAULT_GAMMA,
            epsilon: DEFAULT_EPSILON,
            sigma: DEFAULT_SIGMA,
            phi: DEFAULT_PHI,
            bs2_plus: true,
            bs2_minus: true,
            swap_mode: SwapModeName::Coherent,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }
}

impl Parameters {
    pub fn with(mut self, param: SweepParam, value: f64) -> Self {
        match param {
            SweepParam::Gamma => self.gamma = value,
            SweepParam::Epsilon => self.epsilon = value,
            SweepParam::Sigma => self.sigma = value,
            SweepParam::Phi => self.phi = value,
        }
        self
    }

    fn validate(&self, prefix: &str) -> Result<(), CliError> {
        let field = |name: &str| format!("{prefix}{name}");
        for (name, v) in [("gamma", self.gamma), ("epsilon", self.epsilon), ("sigma", self.sigma), ("phi", self.phi)] {
            if !v.is_finite() {
                return Err(CliError::invalid(field(name), format!("must be finite, got {v}")));
            }
        }
        if self.epsilon < 0.0 {
            return Err(CliError::invalid(field("epsilon"), format!("must be >= 0, got {}", self.epsilon)));
        }
        if self.sigma <= 0.0 {
            return Err(CliError::invalid(field("sigma"), format!("must be > 0, got {}", self.sigma)));
        }
        if self.grid_points < MIN_GRID_POINTS {
            return Err(CliError::invalid(
                field("grid_points"),
                format!("must be >= {MIN_GRID_POINTS}, got {}", self.grid_points),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// A validated run with defaults applied.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub parameters: Parameters,
    pub sweep: Option<Sweep>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RawConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if inner.is_syntax() || inner.is_eof() {
                CliError::Parse {
                    line: inner.line(),
                    column: inner.column(),
                    message: inner.to_string(),
                }
            } else {
                let field = if path == "." { None } else { Some(path) };
                CliError::Schema {
                    field,
                    message: inner.to_string(),
                }
            }
        })
    }

    /// Overlays `other` onto `self`; fields set in `other` win.
    pub fn overlay(mut self, other: RawConfig) -> Self {
        let p = other.parameters;
        let q = &mut self.parameters;
        q.gamma = p.gamma.or(q.gamma);
        q.epsilon = p.epsilon.or(q.epsilon);
        q.sigma = p.sigma.or(q.sigma);
        q.phi = p.phi.or(q.phi);
        q.bs2_plus = p.bs2_plus.or(q.bs2_plus);
        q.bs2_minus = p.bs2_minus.or(q.bs2_minus);
        q.swap_mode = p.swap_mode.or(q.swap_mode);
        q.grid_points = p.grid_points.or(q.grid_points);
        self.scenario = other.scenario.or(self.scenario);
        self.sweep = other.sweep.or(self.sweep);
        self.output_format = other.output_format.or(self.output_format);
        self.output_path = other.output_path.or(self.output_path);
        self
    }

    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let scenario = self
            .scenario
            .ok_or_else(|| CliError::invalid("scenario", "no scenario given"))?;
        let defaults = Parameters::default();
        let p = self.parameters;
        let parameters = Parameters {
            gamma: p.gamma.unwrap_or(defaults.gamma),
            epsilon: p.epsilon.unwrap_or(defaults.epsilon),
            sigma: p.sigma.unwrap_or(defaults.sigma),
            phi: p.phi.unwrap_or(defaults.phi),
            bs2_plus: p.bs2_plus.unwrap_or(defaults.bs2_plus),
            bs2_minus: p.bs2_minus.unwrap_or(defaults.bs2_minus),
            swap_mode: p.swap_mode.unwrap_or(defaults.swap_mode),
            grid_points: p.grid_points.unwrap_or(defaults.grid_points),
        };
        parameters.validate("parameters.")?;

        let sweep = match (scenario, self.sweep) {
            (Scenario::PointerSweep, None) => Some(Sweep {
                param: SweepParam::Sigma,
                values: DEFAULT_SWEEP_SIGMAS.to_vec(),
            }),
            (Scenario::PointerSweep, Some(s)) if s.param != SweepParam::Sigma => {
                return Err(CliError::invalid("sweep.param", "pointer-sweep sweeps sigma only"));
            }
            (Scenario::Hardy | Scenario::Counterfactual | Scenario::Swap, Some(_)) => {
                return Err(CliError::invalid(
                    "sweep",
                    format!("scenario {scenario} has no numeric parameter to sweep"),
                ));
            }
            (Scenario::PhotonicWeak, Some(s)) if s.param == SweepParam::Sigma => {
                return Err(CliError::invalid("sweep.param", "photonic-weak does not depend on sigma"));
            }
            (_, s) => s.map(|s| Sweep {
                param: s.param,
                values: s.values,
            }),
        };
        if let Some(s) = &sweep {
            if s.values.is_empty() {
                return Err(CliError::invalid("sweep.values", "at least one value required"));
            }
            for &v in &s.values {
                parameters.with(s.param, v).validate("sweep.values: ")?;
            }
            if s.param == SweepParam::Sigma && s.values.windows(2).any(|w| w[1] <= w[0]) {
                return Err(CliError::invalid("sweep.values", "sigma values must be strictly ascending"));
            }
        }

        Ok(RunConfig {
            scenario,
            parameters,
            sweep,
            output_format: self.output_format.unwrap_or(OutputFormat::Table),
            output_path: self.output_path,
        })
    }
}

/// Parses and validates a JSON run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    RawConfig::from_json(text)?.resolve()
}
