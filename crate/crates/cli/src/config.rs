//! JSON system descriptions.
//!
//! ```json
//! { "v": { "delta": -2, "delta_prime": 4 }, "w": { "delta": -1, "delta_prime": 3 }, "q": 0.5 }
//! ```
//!
//! An interaction may instead give physical strengths `a` and `b`, in which
//! case a top-level `physical` block supplies `m`, `hbar`, `c` and optionally
//! the separation `d`.

use std::path::Path;

use deltaprime::units::{to_dimensionless, PhysicalParameters, UnitSystem};
use deltaprime::{CouplingKind, Couplings64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteractionConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_prime: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoupled: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalBlock {
    pub m: f64,
    pub hbar: f64,
    pub c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub v: InteractionConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<InteractionConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<PhysicalBlock>,
}

/// Dimensionless couplings after unit conversion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolvedSystem {
    pub v: Couplings64,
    pub w: Couplings64,
    pub q: Option<f64>,
}

pub fn load(path: &Path) -> Result<SystemConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<SystemConfig, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
}

fn units(config: &SystemConfig) -> Result<Option<UnitSystem<f64>>, CliError> {
    config
        .physical
        .as_ref()
        .map(|p| UnitSystem::new(p.hbar, p.c, p.m).map_err(|e| CliError::Usage(e.to_string())))
        .transpose()
}

fn interaction(
    name: &str,
    cfg: &InteractionConfig,
    units: Option<&UnitSystem<f64>>,
) -> Result<Couplings64, CliError> {
    let dimensionless = cfg.delta.is_some() || cfg.delta_prime.is_some();
    let physical = cfg.a.is_some() || cfg.b.is_some();
    let (c0, c1) = match (dimensionless, physical) {
        (true, false) => (cfg.delta.unwrap_or(0.0), cfg.delta_prime.unwrap_or(0.0)),
        (false, true) => {
            let units = units.ok_or_else(|| {
                CliError::Usage(format!("interaction {name} uses a, b but there is no physical block"))
            })?;
            let p = PhysicalParameters {
                delta_strength: cfg.a.unwrap_or(0.0),
                delta_prime_strength: cfg.b.unwrap_or(0.0),
                ..Default::default()
            };
            let d = to_dimensionless(&p, units).map_err(|e| CliError::Usage(e.to_string()))?;
            (d.w0, d.w1)
        }
        (true, true) => {
            return Err(CliError::Usage(format!(
                "interaction {name} mixes dimensionless and physical strengths"
            )))
        }
        (false, false) => {
            return Err(CliError::Usage(format!("interaction {name} has no strengths")))
        }
    };
    if cfg.decoupled == Some(true) {
        if c1 == 1.0 {
            Ok(Couplings64::decoupled_plus(c0))
        } else if c1 == -1.0 {
            Ok(Couplings64::decoupled_minus(c0))
        } else {
            Err(CliError::Usage(format!(
                "interaction {name} is marked decoupled but its delta-prime strength is {c1}, not ±1"
            )))
        }
    } else {
        Ok(Couplings64::regular(c0, c1)?)
    }
}

pub fn resolve(config: &SystemConfig) -> Result<ResolvedSystem, CliError> {
    let units = units(config)?;
    let v = interaction("v", &config.v, units.as_ref())?;
    let w = match &config.w {
        Some(w) => interaction("w", w, units.as_ref())?,
        None => Couplings64::free(),
    };
    let d = config.physical.as_ref().and_then(|p| p.d);
    let q = match (config.q, d, units) {
        (Some(_), Some(_), _) => {
            return Err(CliError::Usage("give the separation as q or as physical.d, not both".into()))
        }
        (Some(q), None, _) => Some(q),
        (None, Some(d), Some(units)) => {
            let p = PhysicalParameters {
                position: d,
                ..Default::default()
            };
            Some(to_dimensionless(&p, &units).map_err(|e| CliError::Usage(e.to_string()))?.q)
        }
        (None, _, _) => None,
    };
    if let Some(q) = q {
        if !(q.is_finite() && q >= 0.0) {
            return Err(CliError::Usage(format!("separation must be finite and non-negative, got {q}")));
        }
    }
    Ok(ResolvedSystem { v, w, q })
}

pub fn require_regular(name: &str, c: &Couplings64) -> Result<(), CliError> {
    match c.kind() {
        CouplingKind::Regular => Ok(()),
        _ => Err(CliError::Singular(format!(
            "interaction {name} is decoupled; use spectrum-decoupled for decoupled configurations"
        ))),
    }
}
