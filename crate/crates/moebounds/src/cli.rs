//! Command-line front end.
//!
//! One subcommand per reportable quantity; every command is deterministic
//! given `--seed`. Quantities print with 12 significant digits; `--format
//! json` emits `{command, inputs, params, results, diagnostics}` with stable
//! (alphabetically ordered) keys. Exit codes: 0 success, 2 usage error,
//! 3 verification failure (file content or flag preconditions), 4 dimension
//! budget exceeded. `MOE_THREADS` caps oracle workers (unset or 0 = auto).

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bases::{gellmann_basis, weyl_basis, BasisError, TracelessBasis};
use crate::bounds::{c_add_test, capacity_bound, tensor_bound, BoundError};
use crate::channels::{
    channel_to_json, read_channel, ChannelDocument, ChannelError, ChannelReadError, FamilySpec,
    HermitianMap,
};
use crate::entropy::{g_curve, EntropyError};
use crate::oracle::{
    oracle_norm_1to2, oracle_norm_p2_complex, oracle_smin_alpha, oracle_tensor, OracleError,
    OracleResult, TensorObjective,
};
use crate::qubit_exact::{
    holevo_upper_bound, qubit_norm12, qubit_smin_alpha, smin_lower_bound, QubitExactError,
};
use crate::rep::{build_rep, gamma, gamma_dwcc, ChannelRep, GammaBranch, RepError};

/// Gram residual ceiling for `weyl-basis --check`.
const BASIS_CHECK_TOL: f64 = 1e-12;

/// Entry point: parses `argv` and returns the process exit code.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

#[derive(Parser)]
#[command(name = "moebounds", version, about = "Minimum output entropy bounds for quantum channels")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisChoice {
    Gellmann,
    Weyl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Objective {
    Norm12,
    Smin,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let alpha = match s {
        "inf" | "infinity" => f64::INFINITY,
        other => other.parse::<f64>().map_err(|e| e.to_string())?,
    };
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(format!("alpha must lie in (0, inf] (got {alpha})"));
    }
    Ok(alpha)
}

fn parse_p(s: &str) -> Result<f64, String> {
    let p = s.parse::<f64>().map_err(|e| e.to_string())?;
    if p.is_nan() || !(1.0..=2.0).contains(&p) {
        return Err(format!("p must lie in [1, 2] (got {p})"));
    }
    Ok(p)
}

#[derive(Subcommand)]
enum Cmd {
    /// Channel file operations.
    Channel {
        #[command(subcommand)]
        action: ChannelCmd,
    },
    /// Discrete Weyl basis labels and Gram residual.
    WeylBasis {
        #[arg(long)]
        n: usize,
        /// Fail (exit 3) if the Gram residual exceeds 1e-12.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact norm and entropy formulas for a qubit-input channel.
    QubitExact {
        file: PathBuf,
        #[arg(long, value_parser = parse_alpha, default_value = "2")]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Minimum output Renyi entropy via the seeded multistart oracle.
    Moe {
        file: PathBuf,
        #[arg(long, value_parser = parse_alpha, default_value = "2")]
        alpha: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// `1 -> 2` norm (or `p -> 2` over complex inputs with --p).
    Norm {
        file: PathBuf,
        #[arg(long, value_parser = parse_p)]
        p: Option<f64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Gamma functional of a unital trace-preserving channel.
    Gamma {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tensor-product norm and entropy bounds from per-factor gammas.
    Bound {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classical capacity upper bound from gamma.
    CapacityBound {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Holevo-quantity upper bound from the exact qubit-input norm.
    HolevoBound {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Additivity certificate for the gamma bound.
    AdditivityTest {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = BasisChoice::Gellmann)]
        basis: BasisChoice,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Direct numerical optimization over pure inputs.
    Oracle {
        #[arg(long, value_enum)]
        objective: Objective,
        file: PathBuf,
        /// Second channel: optimize the tensor product and report the gap.
        file2: Option<PathBuf>,
        #[arg(long, value_parser = parse_alpha, default_value = "2")]
        alpha: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Entropy envelope curve as CSV (`c,g,neg_log2_c`).
    Gcurve {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_parser = parse_alpha, default_value = "2")]
        alpha: f64,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ChannelCmd {
    /// Parse, validate, and describe a channel file.
    Show {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Verification(String),
    Budget(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Budget(m) => {
                write!(f, "{m}")
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<ChannelReadError> for CliError {
    fn from(e: ChannelReadError) -> Self {
        CliError::Verification(e.to_string())
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        CliError::Verification(e.to_string())
    }
}

impl From<BasisError> for CliError {
    fn from(e: BasisError) -> Self {
        CliError::Verification(e.to_string())
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        CliError::Verification(e.to_string())
    }
}

impl From<EntropyError> for CliError {
    fn from(e: EntropyError) -> Self {
        match e {
            EntropyError::PurityOutOfRange { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<QubitExactError> for CliError {
    fn from(e: QubitExactError) -> Self {
        match e {
            QubitExactError::Entropy(inner) => inner.into(),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::AlphaOutOfRange { .. }
            | OracleError::POutOfRange { .. }
            | OracleError::ZeroRestarts => CliError::Usage(e.to_string()),
            OracleError::DimensionBudget { .. } => CliError::Budget(e.to_string()),
            OracleError::NotTracePreserving
            | OracleError::NotCompletelyPositive => CliError::Verification(e.to_string()),
            OracleError::Channel(inner) => inner.into(),
        }
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::POutOfRange { .. } | BoundError::EmptyFactorList => {
                CliError::Usage(e.to_string())
            }
            BoundError::Rep(inner) => inner.into(),
            BoundError::Oracle(inner) => inner.into(),
            BoundError::Channel(inner) => inner.into(),
            BoundError::Basis(inner) => inner.into(),
        }
    }
}

/// Formats with 12 significant digits and trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..=14).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.11e}");
        match s.split_once('e') {
            Some((mantissa, exp)) => format!("{}e{exp}", trim_zeros(mantissa.to_string())),
            None => s,
        }
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn fmt_alpha(alpha: f64) -> String {
    if alpha.is_infinite() {
        "inf".into()
    } else {
        fmt_sig(alpha)
    }
}

fn alpha_json(alpha: f64) -> Value {
    if alpha.is_infinite() {
        Value::String("inf".into())
    } else {
        json!(alpha)
    }
}

/// Ordered key-value report rendered as text lines or the JSON envelope.
struct Report {
    command: &'static str,
    inputs: Vec<String>,
    params: Vec<(&'static str, Value)>,
    results: Vec<(String, Value)>,
    diagnostics: Vec<(String, Value)>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Vec::new(),
            params: Vec::new(),
            results: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn input(mut self, path: &Path) -> Self {
        self.inputs.push(path.display().to_string());
        self
    }

    fn param(mut self, key: &'static str, value: Value) -> Self {
        self.params.push((key, value));
        self
    }

    fn result(&mut self, key: impl Into<String>, value: Value) {
        self.results.push((key.into(), value));
    }

    fn diagnostic(&mut self, key: impl Into<String>, value: Value) {
        self.diagnostics.push((key.into(), value));
    }

    fn print(&self, format: Format) {
        let text = match format {
            Format::Text => {
                let mut lines = String::new();
                for (key, value) in &self.results {
                    lines.push_str(&format!("{key} = {}\n", text_value(value)));
                }
                lines
            }
            Format::Json => {
                let mut results = Map::new();
                for (key, value) in &self.results {
                    results.insert(key.clone(), value.clone());
                }
                let mut diagnostics = Map::new();
                for (key, value) in &self.diagnostics {
                    diagnostics.insert(key.clone(), value.clone());
                }
                let mut params = Map::new();
                for (key, value) in &self.params {
                    params.insert((*key).into(), value.clone());
                }
                let envelope = json!({
                    "command": self.command,
                    "inputs": self.inputs,
                    "params": Value::Object(params),
                    "results": Value::Object(results),
                    "diagnostics": Value::Object(diagnostics),
                });
                let mut text = serde_json::to_string_pretty(&envelope).expect("valid JSON");
                text.push('\n');
                text
            }
        };
        write_stdout(text.as_bytes());
    }
}

/// Writes to stdout treating a closed pipe as normal early termination, so
/// piping into `head` never aborts. Other write failures exit with code 1.
fn write_stdout(bytes: &[u8]) {
    let mut out = io::stdout().lock();
    if let Err(err) = out.write_all(bytes).and_then(|()| out.flush()) {
        if err.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {err}");
        std::process::exit(1);
    }
}

fn text_value(value: &Value) -> String {
    match value {
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), fmt_sig),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        other => serde_json::to_string(other).expect("valid JSON"),
    }
}

fn load_document(path: &Path) -> Result<ChannelDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Verification(format!("cannot read {}: {e}", path.display())))?;
    Ok(read_channel(&text)?)
}

fn rep_for(map: &HermitianMap) -> Result<ChannelRep, CliError> {
    let in_basis = gellmann_basis(map.in_dim())?;
    let out_basis = gellmann_basis(map.out_dim())?;
    Ok(build_rep(map, &in_basis, &out_basis)?)
}

fn flags_json(map: &HermitianMap) -> Value {
    serde_json::to_value(map.flags()).expect("flags serialize")
}

fn branch_name(branch: GammaBranch) -> &'static str {
    match branch {
        GammaBranch::Small => "small",
        GammaBranch::Large => "large",
    }
}

fn oracle_diagnostics(report: &mut Report, res: &OracleResult) {
    report.diagnostic("converged_fraction", json!(res.converged_fraction));
    report.diagnostic("restarts", json!(res.restarts));
    report.diagnostic("seed", json!(res.seed));
}

fn dispatch(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Channel { action } => match action {
            ChannelCmd::Show { file, format } => channel_show(&file, format),
        },
        Cmd::WeylBasis { n, check, format } => weyl_basis_cmd(n, check, format),
        Cmd::QubitExact { file, alpha, format } => qubit_exact_cmd(&file, alpha, format),
        Cmd::Moe { file, alpha, seed, restarts, format } => {
            moe_cmd(&file, alpha, seed, restarts, format)
        }
        Cmd::Norm { file, p, seed, restarts, format } => {
            norm_cmd(&file, p, seed, restarts, format)
        }
        Cmd::Gamma { file, format } => gamma_cmd(&file, format),
        Cmd::Bound { files, format } => bound_cmd(&files, format),
        Cmd::CapacityBound { file, format } => capacity_cmd(&file, format),
        Cmd::HolevoBound { file, format } => holevo_cmd(&file, format),
        Cmd::AdditivityTest { file, basis, seed, restarts, format } => {
            additivity_cmd(&file, basis, seed, restarts, format)
        }
        Cmd::Oracle { objective, file, file2, alpha, seed, restarts, format } => {
            oracle_cmd(objective, &file, file2.as_deref(), alpha, seed, restarts, format)
        }
        Cmd::Gcurve { from, to, steps, alpha, out } => {
            gcurve_cmd(from, to, steps, alpha, out.as_deref())
        }
    }
}

fn channel_show(file: &Path, format: Format) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let map = &doc.map;
    let mut report = Report::new("channel show").input(file);
    report.result("in_dim", json!(map.in_dim()));
    report.result("out_dim", json!(map.out_dim()));
    if let Some(ch) = map.as_channel() {
        report.result("kraus_count", json!(ch.kraus().len()));
    }
    if let Some(family) = &doc.family {
        report.result("family", family.to_json());
    }
    let flags = map.flags();
    report.result("trace_preserving", json!(flags.trace_preserving));
    report.result("unital", json!(flags.unital));
    report.result("completely_positive", json!(flags.completely_positive));
    match map.as_channel() {
        Some(ch) => report.result("channel", channel_to_json(ch)),
        None => {
            if let Some(family) = &doc.family {
                report.result("channel", family.to_json());
            }
        }
    }
    report.print(format);
    Ok(())
}

fn weyl_basis_cmd(n: usize, check: bool, format: Format) -> Result<(), CliError> {
    let basis = weyl_basis(n)?;
    let residual = basis.gram_residual();
    let mut report = Report::new("weyl-basis").param("n", json!(n));
    report.result("n", json!(n));
    report.result("elements", json!(basis.len()));
    report.result("gram_residual", json!(residual));
    report.result("labels", json!(basis.labels().join(" ")));
    report.print(format);
    if check && residual > BASIS_CHECK_TOL {
        return Err(CliError::Verification(format!(
            "Gram residual {residual:e} exceeds {BASIS_CHECK_TOL:e}"
        )));
    }
    Ok(())
}

fn qubit_exact_cmd(file: &Path, alpha: f64, format: Format) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let map = &doc.map;
    let exact = qubit_norm12(map)?;
    let mut report = Report::new("qubit-exact").input(file).param("alpha", alpha_json(alpha));
    report.result("norm_1to2", json!(exact.norm12));
    report.result("norm_sq", json!(exact.norm12 * exact.norm12));
    if map.out_dim() == 2 && map.flags().completely_positive {
        let smin = qubit_smin_alpha(map, alpha)?;
        report.result(format!("S_min,{}", fmt_alpha(alpha)), json!(smin));
    }
    if (1.0..=2.0).contains(&alpha) {
        let lower = smin_lower_bound(map, alpha, exact.norm12)?;
        report.result("smin_lower_bits", json!(lower.bits));
        report.result("smin_lower_exact", json!(lower.exact));
    }
    report.result("holevo_bound_bits", json!(holevo_upper_bound(map)?));
    report.diagnostic("bloch", json!(exact.bloch.to_vec()));
    report.diagnostic("trace_term", json!(exact.trace_term));
    report.diagnostic("hard_case", json!(exact.solution.hard_case));
    report.diagnostic("flags", flags_json(map));
    report.print(format);
    Ok(())
}

fn moe_cmd(
    file: &Path,
    alpha: f64,
    seed: u64,
    restarts: usize,
    format: Format,
) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let res = oracle_smin_alpha(&doc.map, alpha, seed, restarts)?;
    let mut report = Report::new("moe")
        .input(file)
        .param("alpha", alpha_json(alpha))
        .param("seed", json!(seed))
        .param("restarts", json!(restarts));
    report.result(format!("S_min,{}", fmt_alpha(alpha)), json!(res.value));
    oracle_diagnostics(&mut report, &res);
    report.print(format);
    Ok(())
}

fn norm_cmd(
    file: &Path,
    p: Option<f64>,
    seed: u64,
    restarts: usize,
    format: Format,
) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let mut report = Report::new("norm")
        .input(file)
        .param("seed", json!(seed))
        .param("restarts", json!(restarts));
    match p {
        None => {
            let res = oracle_norm_1to2(&doc.map, seed, restarts)?;
            report.result("norm_1to2", json!(res.value));
            oracle_diagnostics(&mut report, &res);
        }
        Some(p) => {
            report = report.param("p", json!(p));
            let res = oracle_norm_p2_complex(&doc.map, p, seed, restarts)?;
            report.result("norm_p2", json!(res.value));
            oracle_diagnostics(&mut report, &res);
        }
    }
    report.print(format);
    Ok(())
}

fn gamma_cmd(file: &Path, format: Format) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let rep = rep_for(&doc.map)?;
    let g = gamma(&rep)?;
    let mut report = Report::new("gamma").input(file);
    report.result("gamma", json!(g.gamma));
    report.result("branch", json!(branch_name(g.branch)));
    report.result("a_norm", json!(g.a_norm));
    report.diagnostic("top_multiplicity", json!(rep.top_multiplicity()));
    report.diagnostic("flags", flags_json(&doc.map));
    if let Some(closed) = closed_form_gamma(&doc)? {
        report.diagnostic("gamma_closed_form", json!(closed));
    }
    report.print(format);
    Ok(())
}

/// Closed-form gamma for Weyl-covariant family files, as a cross-check on
/// the dense path.
fn closed_form_gamma(doc: &ChannelDocument) -> Result<Option<f64>, CliError> {
    match &doc.family {
        Some(FamilySpec::Dwcc { n, weights }) => {
            Ok(Some(gamma_dwcc(*n, weights)?.gamma.gamma))
        }
        Some(FamilySpec::DwccUniformSubset { n, pairs }) => {
            let w = 1.0 / pairs.len() as f64;
            let weights: Vec<(usize, usize, f64)> =
                pairs.iter().map(|&(x, y)| (x, y, w)).collect();
            Ok(Some(gamma_dwcc(*n, &weights)?.gamma.gamma))
        }
        _ => Ok(None),
    }
}

fn bound_cmd(files: &[PathBuf], format: Format) -> Result<(), CliError> {
    let mut reps = Vec::with_capacity(files.len());
    for file in files {
        let doc = load_document(file)?;
        reps.push(rep_for(&doc.map)?);
    }
    let bound = tensor_bound(&reps)?;
    let mut report = Report::new("bound");
    for file in files {
        report = report.input(file);
    }
    report.result("norm12_bound", json!(bound.norm12_bound));
    report.result("smin_lower_bits", json!(bound.smin_lower_bits));
    for (i, g) in bound.per_factor.iter().enumerate() {
        report.diagnostic(format!("gamma[{i}]"), json!(g.gamma));
    }
    report.print(format);
    Ok(())
}

fn capacity_cmd(file: &Path, format: Format) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let rep = rep_for(&doc.map)?;
    let bound = capacity_bound(&rep)?;
    let mut report = Report::new("capacity-bound").input(file);
    report.result("capacity_bits", json!(bound.capacity_bits));
    report.result("regularized_smin_bits", json!(bound.regularized_smin_bits));
    report.result("gamma", json!(bound.gamma.gamma));
    report.result("branch", json!(branch_name(bound.gamma.branch)));
    report.print(format);
    Ok(())
}

fn holevo_cmd(file: &Path, format: Format) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let exact = qubit_norm12(&doc.map)?;
    let mut report = Report::new("holevo-bound").input(file);
    report.result("holevo_bound_bits", json!(holevo_upper_bound(&doc.map)?));
    report.diagnostic("norm_1to2", json!(exact.norm12));
    report.print(format);
    Ok(())
}

fn additivity_cmd(
    file: &Path,
    basis: BasisChoice,
    seed: u64,
    restarts: usize,
    format: Format,
) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let map = &doc.map;
    let in_basis: TracelessBasis = match basis {
        BasisChoice::Gellmann => gellmann_basis(map.in_dim())?,
        BasisChoice::Weyl => weyl_basis(map.in_dim())?,
    };
    let verdict = c_add_test(map, &in_basis, seed, restarts)?;
    let mut report = Report::new("additivity-test")
        .input(file)
        .param("seed", json!(seed))
        .param("restarts", json!(restarts))
        .param(
            "basis",
            json!(match basis {
                BasisChoice::Gellmann => "gellmann",
                BasisChoice::Weyl => "weyl",
            }),
        );
    report.result("status", json!(verdict.status.to_string()));
    report.result("gamma", json!(verdict.gamma));
    report.result("oracle_norm_sq", json!(verdict.oracle_norm_sq));
    report.result("gamma_equals_norm", json!(verdict.gamma_equals_norm));
    report.result("top_eigenspace_state_found", json!(verdict.top_eigenspace_state_found));
    report.result("branch_condition", json!(verdict.branch_condition));
    if let Some(witness) = &verdict.witness {
        let entries: Vec<Value> = witness.iter().map(|z| json!([z.re, z.im])).collect();
        report.diagnostic("witness", Value::Array(entries));
    }
    report.print(format);
    Ok(())
}

fn oracle_cmd(
    objective: Objective,
    file: &Path,
    file2: Option<&Path>,
    alpha: f64,
    seed: u64,
    restarts: usize,
    format: Format,
) -> Result<(), CliError> {
    let doc = load_document(file)?;
    let mut report = Report::new("oracle")
        .input(file)
        .param(
            "objective",
            json!(match objective {
                Objective::Norm12 => "norm12",
                Objective::Smin => "smin",
            }),
        )
        .param("seed", json!(seed))
        .param("restarts", json!(restarts));
    if matches!(objective, Objective::Smin) {
        report = report.param("alpha", alpha_json(alpha));
    }
    match file2 {
        None => {
            let res = match objective {
                Objective::Norm12 => oracle_norm_1to2(&doc.map, seed, restarts)?,
                Objective::Smin => oracle_smin_alpha(&doc.map, alpha, seed, restarts)?,
            };
            report.result("value", json!(res.value));
            oracle_diagnostics(&mut report, &res);
        }
        Some(path2) => {
            let doc2 = load_document(path2)?;
            report = report.input(path2);
            let tensor_objective = match objective {
                Objective::Norm12 => TensorObjective::Norm12,
                Objective::Smin => TensorObjective::SminAlpha(alpha),
            };
            let res = oracle_tensor(&doc.map, &doc2.map, tensor_objective, seed, restarts)?;
            report.result("joint", json!(res.joint.value));
            report.result("product", json!(res.product_value));
            report.result("gap", json!(res.gap));
            oracle_diagnostics(&mut report, &res.joint);
        }
    }
    report.print(format);
    Ok(())
}

fn gcurve_cmd(
    from: f64,
    to: f64,
    steps: usize,
    alpha: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let points = g_curve(from, to, steps, alpha)?;
    let mut csv = String::from("c,g,neg_log2_c\n");
    for pt in &points {
        csv.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", pt.c, pt.g, pt.neg_log2_c));
    }
    match out {
        Some(path) => std::fs::write(path, csv).map_err(|e| {
            CliError::Verification(format!("cannot write {}: {e}", path.display()))
        })?,
        None => write_stdout(csv.as_bytes()),
    }
    Ok(())
}
