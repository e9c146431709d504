//! Pair configuration files.
//!
//! ```json
//! { "components": [ {"mu": [0, 0], "sigma": [[1, 0], [0, 0.2]]},
//!                   {"mu": [1, 1], "sigma": [[0.2, 0], [0, 1]]} ],
//!   "c": 0.5 }
//! ```

use binormix::{GaussianPair, Spd2, Sym2, Vec2};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub mu: [f64; 2],
    pub sigma: [[f64; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairConfig {
    pub components: Vec<Component>,
    #[serde(default = "default_c")]
    pub c: f64,
}

fn default_c() -> f64 {
    0.5
}

impl PairConfig {
    pub fn new(
        mu1: [f64; 2],
        sigma1: [[f64; 2]; 2],
        mu2: [f64; 2],
        sigma2: [[f64; 2]; 2],
        c: f64,
    ) -> Self {
        PairConfig {
            components: vec![
                Component {
                    mu: mu1,
                    sigma: sigma1,
                },
                Component {
                    mu: mu2,
                    sigma: sigma2,
                },
            ],
            c,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config is always serializable")
    }

    /// Checks every invariant, naming the offending field.
    pub fn validate(&self) -> CliResult<()> {
        if self.components.len() != 2 {
            return Err(CliError::validation(
                "components",
                format!("expected exactly 2 entries, got {}", self.components.len()),
            ));
        }
        for (i, comp) in self.components.iter().enumerate() {
            if comp.mu.iter().any(|v| !v.is_finite()) {
                return Err(CliError::validation(
                    format!("components[{i}].mu"),
                    "must be finite",
                ));
            }
            sigma_of(comp, i)?;
        }
        if self.components[0].mu == self.components[1].mu {
            return Err(CliError::validation(
                "components[1].mu",
                "means must differ",
            ));
        }
        if !(0.0..=1.0).contains(&self.c) {
            return Err(CliError::validation(
                "c",
                format!("{} is outside [0, 1]", self.c),
            ));
        }
        Ok(())
    }

    pub fn pair(&self) -> CliResult<GaussianPair> {
        self.validate()?;
        let [a, b] = [&self.components[0], &self.components[1]];
        GaussianPair::from_params(
            v(a.mu),
            sigma_of(a, 0)?.sym(),
            v(b.mu),
            sigma_of(b, 1)?.sym(),
        )
        .map_err(|e| CliError::validation("components", e.to_string()))
    }
}

fn v(a: [f64; 2]) -> Vec2 {
    Vec2::new(a[0], a[1])
}

fn sigma_of(comp: &Component, i: usize) -> CliResult<Spd2> {
    let path = || format!("components[{i}].sigma");
    let [[a11, a12], [a21, a22]] = comp.sigma;
    if comp.sigma.iter().flatten().any(|v| !v.is_finite()) {
        return Err(CliError::validation(path(), "entries must be finite"));
    }
    let scale = a11.abs().max(a22.abs()).max(a12.abs()).max(a21.abs());
    if (a12 - a21).abs() > SYMMETRY_TOL * scale.max(1.0) {
        return Err(CliError::validation(
            path(),
            format!("not symmetric ({a12} vs {a21})"),
        ));
    }
    Spd2::try_from_sym(Sym2::new(a11, 0.5 * (a12 + a21), a22))
        .map_err(|_| CliError::validation(path(), "not positive definite"))
}

pub fn parse_config(text: &str) -> CliResult<PairConfig> {
    let cfg: PairConfig = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &std::path::Path) -> CliResult<PairConfig> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    parse_config(&text).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}
