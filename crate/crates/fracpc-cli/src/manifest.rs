//! Resolved run manifests and the plain-text config file.
//!
//! Precedence for every setting: command-line flag, then `--config` file
//! entry, then builtin default. The resolved manifest is echoed into JSON
//! reports so a run can be reproduced from its own output.

use std::collections::HashMap;
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::CliError;

/// Keys accepted in a `--config` file (kebab-case, matching the flags).
const CONFIG_KEYS: [&str; 21] = [
    "problem",
    "scheme",
    "kind",
    "alpha",
    "beta",
    "dt",
    "t-end",
    "sweeps",
    "out",
    "report",
    "table",
    "emit-plot-script",
    "rho0",
    "rho",
    "c",
    "mu",
    "cprime",
    "rhoprime",
    "nu",
    "a0",
    "h0",
];

/// Parsed `key=value` config file.
#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: HashMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {} is not key=value: '{raw}'",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown config key '{key}' (line {}); valid keys: {}",
                    lineno + 1,
                    CONFIG_KEYS.join(", ")
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                CliError::Usage(format!("config key '{key}': cannot parse '{raw}': {e}"))
            }),
        }
    }
}

/// flag > config > default.
pub fn resolve<T: FromStr>(
    flag: Option<T>,
    config: &ConfigFile,
    key: &str,
    default: T,
) -> Result<T, CliError>
where
    T::Err: Display,
{
    Ok(flag.or(config.get(key)?).unwrap_or(default))
}

/// flag > config, erroring when neither is present.
pub fn resolve_required<T: FromStr>(
    flag: Option<T>,
    config: &ConfigFile,
    key: &str,
) -> Result<T, CliError>
where
    T::Err: Display,
{
    flag.or(config.get(key)?)
        .ok_or_else(|| CliError::Usage(format!("missing required option --{key}")))
}

/// Activator-inhibitor constants as they appear in reports.
#[derive(Debug, Clone, Serialize)]
pub struct GmParamsOut {
    pub rho0: f64,
    pub rho: f64,
    pub c: f64,
    pub mu: f64,
    pub cprime: f64,
    pub rhoprime: f64,
    pub nu: f64,
    pub a0: f64,
    pub h0: f64,
}

impl From<fracpc::gm::GmParams> for GmParamsOut {
    fn from(p: fracpc::gm::GmParams) -> Self {
        Self {
            rho0: p.rho0,
            rho: p.rho,
            c: p.c,
            mu: p.mu,
            cprime: p.cprime,
            rhoprime: p.rhoprime,
            nu: p.nu,
            a0: p.a0,
            h0: p.h0,
        }
    }
}

/// The fully resolved settings of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gm_params: Option<GmParamsOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrector_sweeps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
    pub emit_plot_script: bool,
}
