//! Command-line front end.
//!
//! Exit codes: 0 success, 1 numerical failure or failing verification, 2 invalid configuration.

pub mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bound_verifier::{
    verify_approximants, verify_chain, verify_log_bounds, verify_region_bounds, verify_strong_coupling,
    verify_weighted_integrals, Approximant, ApproximantOptions, BoundReport, ChainOptions, LogBoundOptions,
    RegionOptions, StrongCouplingOptions, WeightedIntegralOptions,
};
use crate::critical_temps::{solve, weak_coupling_sweep, SolveSpec, SweepResult, Target, TcResult};
use crate::error::Error;
use crate::interactions::InteractionModel;
use crate::kernels::{k_t, m_bound, n_t, b_t, PhysParams};
use crate::VERSION;

pub use config::{canonical_suite, Command, ConfigError, InteractionSpec, KernelTable, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "bcs-tc-lab", version, about = "Critical temperatures of BCS-type pair operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Solve for T_c0, T_l or T_u at one coupling.
    Tc(Flags),
    /// Solve over a list of couplings and fit the weak-coupling slope.
    Sweep(Flags),
    /// Run numerical bound checks.
    Verify(Flags),
    /// Tabulate kernels on a (p, q, T) grid.
    KernelEval(Flags),
}

fn parse_target(s: &str) -> Result<Target, String> {
    Target::parse(s).ok_or_else(|| format!("unknown target '{s}' (expected tc0, tl or tu)"))
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Preset name: gaussian, gaussian_difference, square_well, delta.
    #[arg(long)]
    pub interaction: Option<String>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Comma-separated couplings.
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Option<Vec<f64>>,
    /// Comma-separated targets among tc0, tl, tu.
    #[arg(long, value_delimiter = ',', value_parser = parse_target)]
    pub target: Option<Vec<Target>>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Relative tolerance of the temperature bisection.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Nodes per panel of the momentum grid.
    #[arg(long)]
    pub grid_nodes: Option<usize>,
    /// Upper end of the total-momentum scan.
    #[arg(long)]
    pub qmax: Option<f64>,
    /// Output directory; without it results go to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Verification suite; repeat or separate by commas.
    #[arg(long, value_delimiter = ',')]
    pub suite: Option<Vec<String>>,
    /// Kernels to tabulate (K, B, N, M).
    #[arg(long, value_delimiter = ',')]
    pub kernel: Option<Vec<String>>,
    #[arg(long)]
    pub note: Option<String>,
}

/// Builds the effective configuration: file first, then flags.
pub fn build_config(command: Command, flags: &Flags) -> Result<RunConfig, ConfigError> {
    let mut c = match &flags.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if c.command.is_some_and(|k| k != command) {
        return Err(ConfigError(format!("config file is for {:?}, not {:?}", c.command.unwrap(), command)));
    }
    c.command = Some(command);
    if let Some(i) = &flags.interaction {
        c.interaction = InteractionSpec::Named(i.clone());
    }
    if let Some(v) = flags.mu {
        c.mu = v;
    }
    if let Some(v) = flags.lambda {
        c.lambda = Some(v);
        c.lambdas = None;
    }
    if let Some(v) = &flags.lambdas {
        c.lambdas = Some(v.clone());
    }
    if let Some(v) = &flags.target {
        c.targets = v.clone();
    }
    if let Some(v) = flags.dim {
        c.dim = Some(v);
    }
    if let Some(v) = flags.tol {
        c.rel_tol = v;
    }
    if let Some(v) = flags.grid_nodes {
        c.grid.nodes_per_panel = v;
    }
    if let Some(v) = flags.qmax {
        c.sup.q_max = Some(v);
    }
    if let Some(v) = &flags.out {
        c.out = Some(v.clone());
    }
    if let Some(v) = &flags.suite {
        c.suites = v.clone();
    }
    if let Some(v) = &flags.kernel {
        c.kernel_table.kernels = v.clone();
    }
    if let Some(v) = &flags.note {
        c.note = Some(v.clone());
    }
    if command == Command::Tc && c.targets.is_empty() {
        c.targets = vec![Target::Tc0];
    }
    if command == Command::Sweep && c.targets.is_empty() {
        c.targets = if c.dim_or_default() == 2 { vec![Target::Tc0] } else { vec![Target::Tl, Target::Tu] };
    }
    c.validate()?;
    Ok(c)
}

/// Common header of every JSON document.
#[derive(Debug, Serialize)]
struct Document<'a, T: Serialize> {
    version: &'static str,
    config_digest: String,
    command: Command,
    note: Option<&'a str>,
    interaction: InteractionModel,
    mu: f64,
    result: T,
}

#[derive(Debug, Serialize)]
struct ErrorDocument {
    version: &'static str,
    config_digest: String,
    error: String,
    message: String,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Precondition(_) => "precondition",
        Error::Accuracy { .. } => "accuracy",
        Error::NoRoot { .. } => "no_root",
        Error::Numeric(_) => "numeric",
        Error::Fit(_) => "fit",
    }
}

/// Formats a float for CSV: shortest round-trip representation, `inf` for infinities.
pub fn csv_float(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x}")
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

struct Output {
    dir: Option<PathBuf>,
}

impl Output {
    fn emit(&self, name: &str, content: &str) -> std::io::Result<()> {
        match &self.dir {
            Some(d) => std::fs::write(d.join(name), content),
            None => std::io::stdout().lock().write_all(content.as_bytes()),
        }
    }
}

#[derive(Debug, Serialize)]
struct TcOutput {
    dim: usize,
    grid: crate::bs_spectra::GridOptions,
    sup: crate::bs_spectra::SupOptions,
    results: Vec<TcResult>,
}

fn spec_for(c: &RunConfig, model: InteractionModel, lambda: f64, target: Target) -> SolveSpec {
    let mut s = SolveSpec::new(lambda, target, c.mu, model);
    s.params.dim = c.dim_or_default();
    s.grid = c.grid;
    s.sup = c.sup;
    s.rel_tol = c.rel_tol;
    s
}

fn cmd_tc(c: &RunConfig, model: InteractionModel) -> Result<String, Error> {
    let lambda = c.lambda.expect("validated");
    let mut results = Vec::new();
    for &t in &c.targets {
        let r = solve(&spec_for(c, model, lambda, t))?;
        eprintln!(
            "{} lambda={} T={:.9e} q_star={} residual={:.2e}",
            t.as_str(),
            lambda,
            r.temp,
            r.q_star.map_or("-".to_string(), |q| format!("{q:.6}")),
            r.residual
        );
        results.push(r);
    }
    Ok(to_json(&document(c, model, TcOutput { dim: c.dim_or_default(), grid: c.grid, sup: c.sup, results })))
}

fn document<T: Serialize>(c: &RunConfig, model: InteractionModel, result: T) -> Document<'_, T> {
    Document {
        version: VERSION,
        config_digest: c.digest(),
        command: c.command.expect("validated"),
        note: c.note.as_deref(),
        interaction: model,
        mu: c.mu,
        result,
    }
}

/// Sweep table with header `lambda,temp,ln_mu_over_T,q_star,config_digest,version`.
pub fn sweep_csv(sweep: &SweepResult, digest: &str) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["lambda", "temp", "ln_mu_over_T", "q_star", "config_digest", "version"]).expect("in-memory");
    for r in &sweep.records {
        w.write_record([
            csv_float(r.lambda),
            csv_float(r.temp),
            csv_float(r.ln_ratio),
            r.q_star.map(csv_float).unwrap_or_default(),
            digest.to_string(),
            VERSION.to_string(),
        ])
        .expect("in-memory");
    }
    String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8")
}

fn cmd_sweep(c: &RunConfig, model: InteractionModel, out: &Output) -> Result<Vec<(String, String)>, Error> {
    let lambdas = c.lambda_list();
    let mut sweeps = Vec::new();
    for &t in &c.targets {
        let s = weak_coupling_sweep(&lambdas, &spec_for(c, model, lambdas[0], t))?;
        eprintln!(
            "{} slope={:.6} stderr={:.2e} r2={:.6} predicted={}",
            t.as_str(),
            s.fit.slope,
            s.fit.stderr,
            s.fit.r_squared,
            s.predicted_slope.map_or("-".to_string(), |p| format!("{p:.6}"))
        );
        sweeps.push(s);
    }
    let digest = c.digest();
    let mut files = Vec::new();
    if out.dir.is_some() {
        for s in &sweeps {
            let name = s.target.as_str();
            files.push((format!("sweep_{name}.csv"), sweep_csv(s, &digest)));
            files.push((format!("sweep_{name}.json"), to_json(&document(c, model, s))));
        }
    } else {
        files.push(("sweep.json".into(), to_json(&document(c, model, &sweeps))));
    }
    Ok(files)
}

/// Combines the reports of several runs of one suite.
fn merge(suite: &str, parts: Vec<(String, BoundReport)>) -> BoundReport {
    let mut out = BoundReport {
        suite: suite.to_string(),
        grid: String::new(),
        worst_margin: f64::MAX,
        c_emp: None,
        pass: true,
        checks: Vec::new(),
        notes: Vec::new(),
    };
    let single = parts.len() == 1;
    for (label, r) in parts {
        let prefix = if single { String::new() } else { format!("{label}/") };
        out.grid = if out.grid.is_empty() { r.grid.clone() } else { format!("{}; {}", out.grid, r.grid) };
        out.worst_margin = out.worst_margin.min(r.worst_margin);
        out.c_emp = match (out.c_emp, r.c_emp) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        out.pass &= r.pass;
        out.checks.extend(r.checks.into_iter().map(|mut ch| {
            ch.name = format!("{prefix}{}", ch.name);
            ch
        }));
        for n in r.notes {
            if !out.notes.contains(&n) {
                out.notes.push(n);
            }
        }
    }
    out
}

fn run_suite(name: &str, c: &RunConfig, model: &InteractionModel) -> Result<BoundReport, Error> {
    let mu = c.mu;
    let report = match name {
        "approximants" => merge(
            name,
            vec![
                ("Q".into(), verify_approximants(&ApproximantOptions::new(Approximant::Q, model, mu))?),
                ("W".into(), verify_approximants(&ApproximantOptions::new(Approximant::W, model, mu))?),
            ],
        ),
        "log_bounds" => verify_log_bounds(&LogBoundOptions::new(mu))?,
        "weighted_integrals" => verify_weighted_integrals(&WeightedIntegralOptions::new(mu))?,
        "regions" => {
            let dims = match c.dim {
                Some(d) => vec![d],
                None => vec![2, 3],
            };
            let mut parts = Vec::new();
            for d in dims {
                parts.push((format!("d{d}"), verify_region_bounds(&RegionOptions::new(mu, d, 0.3 * mu.sqrt()))?));
            }
            merge(name, parts)
        }
        "strong_coupling" => verify_strong_coupling(&StrongCouplingOptions::default())?,
        "chain" => {
            let lambdas = c.lambdas.clone().or(c.lambda.map(|l| vec![l])).unwrap_or_else(|| vec![1.0, 0.5]);
            let opts = ChainOptions { rel_tol: c.rel_tol.min(1e-9), sup: c.sup, ..ChainOptions::default() };
            verify_chain(model, mu, &lambdas, &opts)?
        }
        other => unreachable!("validated suite name {other}"),
    };
    Ok(report)
}

fn cmd_verify(c: &RunConfig, model: InteractionModel) -> Result<(Vec<(String, String)>, bool), Error> {
    let mut files = Vec::new();
    let mut reports = Vec::new();
    let mut all_pass = true;
    for s in &c.suites {
        let name = canonical_suite(s).expect("validated");
        let r = run_suite(name, c, &model)?;
        eprintln!("{} {} worst_margin={:.3e}", if r.pass { "PASS" } else { "FAIL" }, r.suite, r.worst_margin);
        all_pass &= r.pass;
        reports.push(r);
    }
    for r in &reports {
        files.push((format!("verify_{}.json", r.suite), to_json(&document(c, model, r))));
    }
    Ok((files, all_pass))
}

/// Kernel table with columns `p,q,temp,<kernels>,config_digest,version`.
pub fn kernel_csv(c: &RunConfig) -> String {
    let t = &c.kernel_table;
    let digest = c.digest();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["p".to_string(), "q".into(), "temp".into()];
    header.extend(t.kernels.iter().cloned());
    header.extend(["config_digest".to_string(), "version".into()]);
    w.write_record(&header).expect("in-memory");
    let ps: Vec<f64> = if t.n_p == 1 {
        vec![t.p_min]
    } else {
        (0..t.n_p).map(|i| t.p_min + (t.p_max - t.p_min) * i as f64 / (t.n_p - 1) as f64).collect()
    };
    for &temp in &t.temps {
        let params = PhysParams::new(c.mu, temp, 1);
        for &q in &t.qs {
            for &p in &ps {
                let mut row = vec![csv_float(p), csv_float(q), csv_float(temp)];
                for k in &t.kernels {
                    let v = match k.as_str() {
                        "K" => k_t(p, &params),
                        "B" => b_t(p, q, &params),
                        "N" => n_t(p, q, &params),
                        _ => m_bound(p, q, c.mu).value(),
                    };
                    row.push(csv_float(v));
                }
                row.push(digest.clone());
                row.push(VERSION.to_string());
                w.write_record(&row).expect("in-memory");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8")
}

fn fail(c: &RunConfig, e: &Error) -> i32 {
    let doc = ErrorDocument {
        version: VERSION,
        config_digest: c.digest(),
        error: error_kind(e).to_string(),
        message: e.to_string(),
    };
    eprintln!("error: {e}");
    print!("{}", to_json(&doc));
    1
}

fn write_all(out: &Output, files: &[(String, String)]) -> i32 {
    for (name, content) in files {
        if let Err(e) = out.emit(name, content) {
            eprintln!("error: cannot write {name}: {e}");
            return 1;
        }
    }
    0
}

/// Runs a validated configuration and returns the exit code.
pub fn run(c: &RunConfig) -> i32 {
    let model = match c.interaction.resolve(c.mu) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(d) = &c.out {
        if let Err(e) = std::fs::create_dir_all(d) {
            eprintln!("error: cannot create {}: {e}", d.display());
            return 2;
        }
    }
    let out = Output { dir: c.out.clone() };
    match c.command.expect("validated") {
        Command::Tc => match cmd_tc(c, model) {
            Ok(json) => write_all(&out, &[("tc.json".into(), json)]),
            Err(e) => fail(c, &e),
        },
        Command::Sweep => match cmd_sweep(c, model, &out) {
            Ok(files) => write_all(&out, &files),
            Err(e) => fail(c, &e),
        },
        Command::Verify => match cmd_verify(c, model) {
            Ok((files, pass)) => {
                let code = write_all(&out, &files);
                if code != 0 { code } else if pass { 0 } else { 1 }
            }
            Err(e) => fail(c, &e),
        },
        Command::KernelEval => write_all(&out, &[("kernels.csv".into(), kernel_csv(c))]),
    }
}

/// Parses `args`, runs the command and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (command, flags) = match &cli.command {
        Cmd::Tc(f) => (Command::Tc, f),
        Cmd::Sweep(f) => (Command::Sweep, f),
        Cmd::Verify(f) => (Command::Verify, f),
        Cmd::KernelEval(f) => (Command::KernelEval, f),
    };
    match build_config(command, flags) {
        Ok(c) => run(&c),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn main() -> i32 {
    main_with(std::env::args_os())
}

