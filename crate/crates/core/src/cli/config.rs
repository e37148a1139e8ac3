//! Run configuration: JSON file merged with command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bs_spectra::{GridOptions, SupOptions};
use crate::critical_temps::{Target, DEFAULT_LAMBDAS};
use crate::interactions::InteractionModel;

/// Invalid configuration; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Tc,
    Sweep,
    Verify,
    KernelEval,
}

/// A named preset or an explicit model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InteractionSpec {
    Named(String),
    Model(InteractionModel),
}

impl Default for InteractionSpec {
    fn default() -> Self {
        Self::Named("gaussian".into())
    }
}

impl InteractionSpec {
    /// Presets: `gaussian` (unit amplitude and width), `gaussian_difference`
    /// (`V̂(0) = 2`, `V̂(2√μ) = −0.8`, widths 1 and 0.5), `square_well`, `delta`.
    pub fn resolve(&self, mu: f64) -> Result<InteractionModel, ConfigError> {
        match self {
            Self::Model(m) => Ok(*m),
            Self::Named(name) => match name.as_str() {
                "gaussian" => Ok(InteractionModel::gaussian(1.0, 1.0)),
                "gaussian_difference" => InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, mu)
                    .map_err(|e| ConfigError(e.to_string())),
                "square_well" => Ok(InteractionModel::square_well(1.0, 1.0)),
                "delta" => Ok(InteractionModel::delta(1.0)),
                other => bad(format!("unknown interaction '{other}'")),
            },
        }
    }
}

/// Tabulation window for `kernel-eval`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelTable {
    /// Any of `K`, `B`, `N`, `M`.
    pub kernels: Vec<String>,
    pub p_min: f64,
    pub p_max: f64,
    pub n_p: usize,
    pub qs: Vec<f64>,
    pub temps: Vec<f64>,
}

impl Default for KernelTable {
    fn default() -> Self {
        Self {
            kernels: vec!["K".into(), "B".into(), "N".into(), "M".into()],
            p_min: 0.0,
            p_max: 3.0,
            n_p: 61,
            qs: vec![0.0, 0.5, 1.0],
            temps: vec![0.1, 0.01],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub interaction: InteractionSpec,
    pub mu: f64,
    /// `None` means one dimension, except for the `regions` suite which then runs `d = 2, 3`.
    pub dim: Option<usize>,
    pub lambda: Option<f64>,
    pub lambdas: Option<Vec<f64>>,
    pub targets: Vec<Target>,
    pub rel_tol: f64,
    pub grid: GridOptions,
    pub sup: SupOptions,
    pub suites: Vec<String>,
    pub kernel_table: KernelTable,
    pub out: Option<PathBuf>,
    /// Free text copied into the outputs.
    pub note: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            interaction: InteractionSpec::default(),
            mu: 1.0,
            dim: None,
            lambda: None,
            lambdas: None,
            targets: vec![],
            rel_tol: 1e-6,
            grid: GridOptions::default(),
            sup: SupOptions::default(),
            suites: vec![],
            kernel_table: KernelTable::default(),
            out: None,
            note: None,
        }
    }
}

/// Verification suites with their accepted aliases.
pub const SUITES: [(&str, &str); 6] = [
    ("approximants", "lemma31"),
    ("log_bounds", "lemma32"),
    ("weighted_integrals", "lemma41"),
    ("regions", "regions"),
    ("strong_coupling", "strong_coupling"),
    ("chain", "chain"),
];

pub fn canonical_suite(name: &str) -> Option<&'static str> {
    SUITES.iter().find(|(a, b)| *a == name || *b == name).map(|(a, _)| *a)
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError(format!("config: {e}")))
    }

    pub fn dim_or_default(&self) -> usize {
        self.dim.unwrap_or(1)
    }

    pub fn lambda_list(&self) -> Vec<f64> {
        match (&self.lambdas, self.lambda) {
            (Some(l), _) => l.clone(),
            (None, Some(l)) => vec![l],
            (None, None) => DEFAULT_LAMBDAS.to_vec(),
        }
    }

    /// Checks everything that can be checked without running a computation.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let Some(cmd) = self.command else {
            return bad("no command given");
        };
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return bad(format!("mu must be positive and finite, got {}", self.mu));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return bad(format!("tolerance must lie in (0, 1), got {}", self.rel_tol));
        }
        if self.grid.nodes_per_panel < 2 || self.grid.nodes_per_panel > 64 {
            return bad(format!("grid nodes per panel must lie in [2, 64], got {}", self.grid.nodes_per_panel));
        }
        if let Some(q) = self.sup.q_max {
            if !(q > self.mu.sqrt()) {
                return bad(format!("q_max = {q} must exceed sqrt(mu)"));
            }
        }
        if let Some(d) = self.dim {
            if !(1..=3).contains(&d) {
                return bad(format!("dimension must be 1, 2 or 3, got {d}"));
            }
        }
        let model = self.interaction.resolve(self.mu)?;
        let check_model = |dim: usize| model.validate(dim).map_err(|e| ConfigError(e.to_string()));
        match cmd {
            Command::Tc | Command::Sweep => {
                let dim = self.dim_or_default();
                check_model(dim)?;
                if dim == 3 {
                    return bad("critical temperatures are solved in d = 1 (and T_c0 in d = 2)");
                }
                if dim == 2 && self.targets.iter().any(|t| *t != Target::Tc0) {
                    return bad("in d = 2 only target tc0 is available");
                }
                if cmd == Command::Tc && self.lambdas.is_some() && self.lambda.is_none() {
                    return bad("tc takes a single --lambda");
                }
                if cmd == Command::Tc && self.lambda.is_none() {
                    return bad("tc needs --lambda");
                }
                let ls = self.lambda_list();
                if ls.is_empty() {
                    return bad("empty coupling list");
                }
                if let Some(l) = ls.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
                    return bad(format!("couplings must be positive, got {l}"));
                }
            }
            Command::Verify => {
                if self.suites.is_empty() {
                    return bad("no suite given");
                }
                for s in &self.suites {
                    match canonical_suite(s) {
                        None => return bad(format!("unknown suite '{s}'")),
                        Some("regions") if matches!(self.dim, Some(d) if d < 2) => {
                            return bad("the regions suite is defined for d = 2 and 3");
                        }
                        Some("chain") => {
                            check_model(1)?;
                            if !model.has_nonnegative_transform(1) {
                                return bad(format!("the chain suite needs a non-negative transform; {} has none", model.name()));
                            }
                        }
                        Some("approximants") => check_model(1)?,
                        _ => {}
                    }
                }
            }
            Command::KernelEval => {
                let t = &self.kernel_table;
                for k in &t.kernels {
                    if !matches!(k.as_str(), "K" | "B" | "N" | "M") {
                        return bad(format!("unknown kernel '{k}'; expected K, B, N or M"));
                    }
                }
                if t.kernels.is_empty() || t.n_p == 0 || !(t.p_max >= t.p_min) {
                    return bad("empty kernel table");
                }
                if t.temps.iter().any(|x| !(*x > 0.0)) {
                    return bad("temperatures must be positive");
                }
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form without the output path, as lowercase hex.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(&Self { out: None, ..self.clone() }).expect("config serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}
