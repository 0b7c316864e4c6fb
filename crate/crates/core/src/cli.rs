//! Command-line front end. Every command prints one JSON [`RunReport`] on
//! stdout and a short human summary on stderr; the exit status is 0 iff all
//! checks passed, 1 if a check failed and 2 on usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dense::{DenseOperator, DEFAULT_DENSE_BOUND};
use crate::error::{Error, Result};
use crate::fib::fib_verdict;
use crate::mcg::{
    bare_transform, gate_o, humphries_gate, humphries_indices, projective_image_order, relation_suite, theta_inverse,
    ExactDump, GateKind, GateOptions, ImageOrder, PlacedGate,
};
use crate::model::{validate_quadratic, AbelianAnyonModel, BUILTIN_MODELS};
use crate::model_file::{parse_model_source, ModelSource};
use crate::pauli::{classify_normalizer, is_clifford, NormalizerClass};
use crate::sim::{dense_simulate, parse_circuit, random_circuit, stabilizer_simulate, Circuit};

#[derive(Debug, Parser)]
#[command(name = "anyon-mcg", version, about = "Mapping-class-group gates of abelian anyon models")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Numerical tolerance for matrix comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest dense dimension |G|^g that may be materialized.
    #[arg(long, global = true, default_value_t = DEFAULT_DENSE_BOUND)]
    pub dense_bound: u64,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Model-spec operations.
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Gate-matrix emission.
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
    /// Checks that every Humphries image lies in the Clifford group.
    CliffordCheck {
        /// Builtin model name or model-spec file.
        model: Option<String>,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// Check the Fibonacci torus instead of an abelian model.
        #[arg(long)]
        fib_torus: bool,
    },
    /// Simulates a circuit with the stabilizer and/or dense backend.
    Sim {
        /// Circuit file; omit together with `--random`.
        circuit: Option<PathBuf>,
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value_t = Backend::Both)]
        backend: Backend,
        /// Simulate a seeded random Humphries word of this length instead.
        #[arg(long)]
        random: Option<usize>,
        /// Genus for `--random`.
        #[arg(long, default_value_t = 1)]
        genus: usize,
    },
    /// Checks the commutation and braid relations projectively.
    Relations {
        model: String,
        #[arg(long, default_value_t = 2)]
        genus: usize,
    },
    /// Order of the projective image of the Humphries generators.
    ImageOrder {
        model: String,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long, default_value_t = 100_000)]
        bound: usize,
    },
    /// Fibonacci torus: one-qubit Clifford group and the no-Clifford-basis check.
    Fib,
}

#[derive(Debug, Subcommand)]
pub enum ModelAction {
    /// Validates the quadratic form and reports modular data.
    Validate { model: String },
}

#[derive(Debug, Subcommand)]
pub enum RepAction {
    /// Writes gate matrices (`.mat`) and exact-phase dumps (`.json`).
    Emit {
        model: String,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// Humphries index, or `all`.
        #[arg(long, default_value = "all")]
        which: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Multiply T0, T1 and the odd twists by the anchor phase.
        #[arg(long)]
        with_anchor: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Stabilizer,
    Dense,
    Both,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelSummary {
    pub name: String,
    pub group: String,
    pub order: usize,
    pub modular: bool,
}

impl ModelSummary {
    fn of(m: &AbelianAnyonModel) -> Self {
        ModelSummary { name: m.name().to_string(), group: m.group().to_string(), order: m.order(), modular: m.is_modular() }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub model: Option<ModelSummary>,
    pub results: Value,
    pub elapsed_ms: f64,
    pub qft_count: Option<usize>,
    pub status: Status,
    pub exit_code: i32,
    pub error: Option<String>,
    /// Human-readable lines, also printed to stderr.
    #[serde(skip)]
    pub summary: Vec<String>,
}

struct Outcome {
    model: Option<ModelSummary>,
    results: Value,
    qft_count: Option<usize>,
    passed: bool,
    summary: Vec<String>,
}

impl Outcome {
    fn new(model: Option<&AbelianAnyonModel>, results: Value, passed: bool) -> Self {
        Outcome { model: model.map(ModelSummary::of), results, qft_count: None, passed, summary: Vec::new() }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// A builtin name (`semion`, `z3`, `z4`, `toric`, `trivial`) or a path to a
/// model-spec file.
pub fn load_model(arg: &str) -> Result<AbelianAnyonModel> {
    if BUILTIN_MODELS.contains(&arg) || arg == "trivial" {
        return AbelianAnyonModel::builtin(arg);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(Error::InvalidArgument(format!(
            "`{arg}` is neither a builtin model ({}, trivial) nor a readable file",
            BUILTIN_MODELS.join(", ")
        )));
    }
    parse_model_source(&fs::read_to_string(path)?)?.build()
}

fn gate_options(g: &GlobalOpts) -> GateOptions {
    GateOptions { include_anchor: false, dense_bound: g.dense_bound }
}

fn cmd_model_validate(arg: &str) -> Result<Outcome> {
    let model = if BUILTIN_MODELS.contains(&arg) || arg == "trivial" {
        AbelianAnyonModel::builtin(arg)?
    } else {
        let source = parse_model_source(&fs::read_to_string(arg)?)?;
        if let ModelSource::Table { q, .. } = &source {
            let report = validate_quadratic(q);
            if !report.is_valid() {
                let results = json!({ "quadratic_form_valid": false, "violations": report.violations });
                return Ok(Outcome::new(None, results, false)
                    .line(format!("quadratic form: INVALID ({} violation(s))", report.violations.len()))
                    .line(report.to_string()));
            }
        }
        source.build()?
    };
    let theta: Vec<Value> =
        model.elements().iter().map(|x| json!({ "elem": x.to_string(), "q": model.q(x) })).collect();
    let modular = model.is_modular();
    let (anchor, c) = match model.anchor_phase() {
        Ok(z) => (Some([z.re, z.im]), Some(model.central_charge_mod8()?)),
        Err(_) => (None, None),
    };
    let results = json!({
        "quadratic_form_valid": true,
        "violations": [],
        "modular": modular,
        "theta": theta,
        "gauss_sum": [model.gauss_sum().re, model.gauss_sum().im],
        "anchor_phase": anchor,
        "central_charge_mod8": c,
        "cocycle": model.cocycle().is_some(),
    });
    let mut out = Outcome::new(Some(&model), results, true)
        .line(format!("model {} on {}: quadratic form valid", model.name(), model.group()))
        .line(format!("modular: {}", if modular { "yes" } else { "NO (degenerate bilinear form)" }));
    if let (Some(a), Some(c)) = (anchor, c) {
        out = out.line(format!("anchor phase {:.12}{:+.12}i, central charge {c} mod 8", a[0], a[1]));
    }
    Ok(out)
}

fn gate_file_stem(k: usize, gate: &PlacedGate) -> String {
    let kind = match gate.kind {
        GateKind::L => "L",
        GateKind::M => "M",
        GateKind::O => "O",
    };
    format!("T{k}_{kind}{}", gate.qudit)
}

fn cmd_rep_emit(g: &GlobalOpts, arg: &str, genus: usize, which: &str, out: &Path, with_anchor: bool) -> Result<Outcome> {
    let model = load_model(arg)?;
    model.require_modular()?;
    let indices = if which == "all" {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        humphries_indices(genus)
    } else {
        vec![which.parse().map_err(|_| Error::InvalidArgument(format!("--which must be an index or `all`, got `{which}`")))?]
    };
    let opts = GateOptions { include_anchor: with_anchor, ..gate_options(g) };
    fs::create_dir_all(out)?;
    let mut rows = Vec::new();
    let mut ok = true;
    let mut lines = Vec::new();
    for k in indices {
        let gate = humphries_gate(genus, k)?;
        let dense = gate.dense(&model, &opts)?;
        let exact = gate.exact(&model)?;
        let stem = gate_file_stem(k, &gate);
        let mat = out.join(format!("{stem}.mat"));
        let dump = out.join(format!("{stem}.json"));
        fs::write(&mat, dense.to_text())?;
        let d = ExactDump::new(k, &gate, &exact, model.order());
        fs::write(&dump, serde_json::to_string_pretty(&d).map_err(|e| Error::Internal(e.to_string()))?)?;
        let residual = dense.unitarity_residual();
        ok &= residual < g.tol;
        lines.push(format!("T{k} = {gate}: {}x{} unitary residual {residual:.2e} -> {}", dense.dim(), dense.dim(), mat.display()));
        rows.push(json!({
            "index": k,
            "gate": gate.to_string(),
            "dim": dense.dim(),
            "matrix_file": mat.display().to_string(),
            "exact_file": dump.display().to_string(),
            "unitarity_residual": residual,
        }));
    }
    let mut o = Outcome::new(Some(&model), json!({ "genus": genus, "anchor_included": with_anchor, "gates": rows }), ok);
    o.summary = lines;
    Ok(o)
}

/// Normalizer family of a placed gate. `O` is not itself elementary: it is
/// reported as `fourier_composite` when its local factors classify as
/// quadratic phase, Fourier, quadratic phase.
pub fn gate_classification(model: &AbelianAnyonModel, gate: &PlacedGate, opts: &GateOptions, tol: f64) -> Result<String> {
    if gate.kind != GateKind::O {
        let u = gate.dense(model, opts)?;
        return Ok(classify_normalizer(&u, &model.group().power(gate.genus)?, tol)?.to_string());
    }
    let n = model.order();
    let spec = model.group();
    let f = bare_transform(model)?.to_dense(n);
    let t = theta_inverse(model).to_dense(n);
    let o = gate_o(model)?.to_dense(n);
    let parts_ok = classify_normalizer(&f, spec, tol)? == NormalizerClass::Fourier
        && classify_normalizer(&t, spec, tol)? == NormalizerClass::QuadraticPhase
        && t.matmul(&f).matmul(&t).max_abs_diff(&o) < tol;
    Ok(if parts_ok { "fourier_composite".into() } else { classify_normalizer(&o, spec, tol)?.to_string() })
}

fn cmd_clifford_check(g: &GlobalOpts, model: Option<&str>, genus: usize, fib_torus: bool) -> Result<Outcome> {
    if fib_torus {
        let v = fib_verdict()?;
        let results = json!({
            "fib_torus": true,
            "clifford_compatible": !v.holds,
            "min_projective_distance": v.min_distance,
            "class_count": v.class_count,
            "verdict": v,
        });
        return Ok(Outcome::new(None, results, v.holds)
            .line("Fibonacci torus: NOT Clifford-compatible (no basis makes both S and T Clifford)")
            .line(format!("minimum projective distance of normalized S to the 24 classes: {:.6}", v.min_distance)));
    }
    let arg = model.ok_or_else(|| Error::InvalidArgument("clifford-check needs a model unless --fib-torus is given".into()))?;
    let model = load_model(arg)?;
    model.require_modular()?;
    let opts = gate_options(g);
    let spec = model.group().power(genus)?;
    let mut rows = Vec::new();
    let mut all = true;
    let mut lines = Vec::new();
    for k in humphries_indices(genus) {
        let gate = humphries_gate(genus, k)?;
        let u = gate.dense(&model, &opts)?;
        let witness = is_clifford(&u, &spec, g.tol)?;
        let residual = match &witness {
            Some(w) => Some(w.residual(&u)?),
            None => None,
        };
        let class = gate_classification(&model, &gate, &opts, g.tol)?;
        all &= witness.is_some();
        lines.push(format!("T{k} = {gate}: {} ({class})", if witness.is_some() { "Clifford" } else { "NOT Clifford" }));
        rows.push(json!({ "index": k, "gate": gate.to_string(), "clifford": witness.is_some(), "witness_residual": residual, "classification": class }));
    }
    let n = rows.len();
    let o = Outcome::new(Some(&model), json!({ "genus": genus, "generators_checked": n, "generators": rows }), all);
    let mut o = o.line(format!("{} at genus {genus}: {} generators checked", model.name(), n));
    o.summary.extend(lines);
    Ok(o.line(format!("overall: {}", verdict(all))))
}

fn cmd_sim(g: &GlobalOpts, circuit: Option<&Path>, model: &str, backend: Backend, random: Option<usize>, genus: usize) -> Result<Outcome> {
    let model = Arc::new(load_model(model)?);
    let c: Circuit = match (circuit, random) {
        (Some(_), Some(_)) => return Err(Error::InvalidArgument("give a circuit file or --random, not both".into())),
        (None, None) => return Err(Error::InvalidArgument("sim needs a circuit file or --random".into())),
        (Some(path), None) => parse_circuit(&fs::read_to_string(path)?, model.clone())?,
        (None, Some(len)) => random_circuit(model.clone(), genus, len, &mut ChaCha8Rng::seed_from_u64(g.seed))?,
    };
    let mut results = json!({
        "genus": c.genus(),
        "init": c.init().to_string(),
        "gate_count": c.gates().len(),
        "twists": c.twist_indices(),
        "backend": backend,
    });
    let mut lines = vec![format!("{} gates on {} at genus {}, {} QFT-type", c.gates().len(), model.name(), c.genus(), c.qft_count())];
    let mut passed = true;
    let stab = match backend {
        Backend::Stabilizer | Backend::Both => Some(stabilizer_simulate(&c, g.dense_bound)?),
        Backend::Dense => None,
    };
    let dense = match backend {
        Backend::Dense | Backend::Both => Some(dense_simulate(&c, g.dense_bound)?),
        Backend::Stabilizer => None,
    };
    if let Some(s) = &stab {
        results["stabilizer"] = json!(s);
        lines.push(format!("stabilizer support size {}", s.support(1e-12).len()));
    }
    if let Some(d) = &dense {
        results["dense"] = json!(d);
        lines.push(format!("dense support size {}", d.support(1e-12).len()));
    }
    if let (Some(s), Some(d)) = (&stab, &dense) {
        let tv = s.total_variation(d)?;
        passed = tv < g.tol;
        results["total_variation"] = json!(tv);
        lines.push(format!("total variation {tv:.3e}: {}", verdict(passed)));
    }
    let mut o = Outcome::new(Some(&model), results, passed);
    o.qft_count = Some(c.qft_count());
    o.summary = lines;
    Ok(o)
}

fn cmd_relations(g: &GlobalOpts, model: &str, genus: usize) -> Result<Outcome> {
    let model = load_model(model)?;
    let rel = relation_suite(&model, genus, g.tol, &gate_options(g))?;
    let all = rel.iter().all(|r| r.holds);
    let mut o = Outcome::new(Some(&model), json!({ "genus": genus, "relations": rel }), all);
    for r in &rel {
        o = o.line(format!(
            "{:?} T{} T{}: residual {:.2e} {}",
            r.kind,
            r.curves.0,
            r.curves.1,
            r.residual,
            verdict(r.holds)
        ));
    }
    Ok(o.line(format!("overall: {}", verdict(all))))
}

fn cmd_image_order(g: &GlobalOpts, model: &str, genus: usize, bound: usize) -> Result<Outcome> {
    let model = load_model(model)?;
    let order = projective_image_order(&model, genus, bound, &gate_options(g))?;
    let (ok, line) = match order {
        ImageOrder::Finite(n) => (true, format!("projective image order at genus {genus}: {n}")),
        ImageOrder::BoundExceeded(b) => (false, format!("closure exceeded {b} elements")),
    };
    Ok(Outcome::new(Some(&model), json!({ "genus": genus, "bound": bound, "order": order }), ok).line(line))
}

fn cmd_fib() -> Result<Outcome> {
    let v = fib_verdict()?;
    let t = &v.involution_tally;
    let profile: Vec<String> = v.order_profile.iter().map(|(k, n)| format!("{n} of order {k}")).collect();
    let o = Outcome::new(None, json!(v), v.holds)
        .line(format!("T^5 = Id (residual {:.1e}); 5 divides 24: {}", v.t5_residual, v.t_order_divides_clifford_order))
        .line(format!("one-qubit Clifford classes: {} ({})", v.class_count, profile.join(", ")))
        .line(format!(
            "order-2 classes: {} equal off-diagonal, {} zero-sum off-diagonal, {} with a zero entry",
            t.equal_off_diagonal, t.zero_sum_off_diagonal, t.zero_entry
        ))
        .line(format!("normalized S off-diagonal shape: {:?}", v.normalized_s_shape))
        .line(format!("minimum projective distance to a Clifford class: {:.6}", v.min_distance))
        .line(format!("Pauli group: {} elements, {} Hermitian", v.pauli_group_order, v.hermitian_pauli_count));
    let mut o = o;
    for r in v.reference_rows.iter().filter(|r| !r.agrees) {
        o = o.line(format!("table row labeled {} acts as {} on the cube diagonals", r.printed, r.computed));
    }
    Ok(o.line(format!("no Clifford basis for S and T: {}", verdict(v.holds))))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Model { action: ModelAction::Validate { model } } => cmd_model_validate(model),
        Command::Rep { action: RepAction::Emit { model, genus, which, out, with_anchor } } => {
            cmd_rep_emit(g, model, *genus, which, out, *with_anchor)
        }
        Command::CliffordCheck { model, genus, fib_torus } => cmd_clifford_check(g, model.as_deref(), *genus, *fib_torus),
        Command::Sim { circuit, model, backend, random, genus } => {
            cmd_sim(g, circuit.as_deref(), model, *backend, *random, *genus)
        }
        Command::Relations { model, genus } => cmd_relations(g, model, *genus),
        Command::ImageOrder { model, genus, bound } => cmd_image_order(g, model, *genus, *bound),
        Command::Fib => cmd_fib(),
    }
}

/// Runs a parsed command and assembles its report.
pub fn execute(cli: &Cli, command: Vec<String>) -> RunReport {
    let start = Instant::now();
    let outcome = dispatch(cli);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    match outcome {
        Ok(o) => RunReport {
            command,
            model: o.model,
            results: o.results,
            elapsed_ms,
            qft_count: o.qft_count,
            status: if o.passed { Status::Pass } else { Status::Fail },
            exit_code: if o.passed { 0 } else { 1 },
            error: None,
            summary: o.summary,
        },
        Err(e) => error_report(command, e.to_string(), elapsed_ms),
    }
}

fn error_report(command: Vec<String>, message: String, elapsed_ms: f64) -> RunReport {
    RunReport {
        command,
        model: None,
        results: Value::Null,
        elapsed_ms,
        qft_count: None,
        status: Status::Error,
        exit_code: 2,
        summary: vec![format!("error: {message}")],
        error: Some(message),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `Err` carries clap's help or version text, which is not a run.
pub fn run<I, T>(args: I) -> std::result::Result<RunReport, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match Cli::try_parse_from(&args) {
        Ok(cli) => Ok(execute(&cli, command)),
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => Err(e),
        Err(e) => Ok(error_report(command, e.to_string().trim().to_string(), 0.0)),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run(args) {
        Ok(report) => {
            for line in &report.summary {
                eprintln!("{line}");
            }
            match serde_json::to_string_pretty(&report) {
                Ok(s) => {
                    let _ = writeln!(std::io::stdout().lock(), "{s}");
                }
                Err(e) => eprintln!("could not serialize report: {e}"),
            }
            report.exit_code
        }
        Err(e) => {
            let _ = e.print();
            0
        }
    }
}

/// Reads a matrix written by `rep emit`.
pub fn read_matrix_file(path: &Path) -> Result<DenseOperator> {
    DenseOperator::parse_text(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> RunReport {
        let mut v = vec!["anyon-mcg"];
        v.extend_from_slice(args);
        run(v).unwrap()
    }

    #[test]
    fn validate_builtin() {
        let r = run_ok(&["model", "validate", "semion"]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.results["modular"], true);
        let a = r.results["anchor_phase"].as_array().unwrap();
        assert!((a[0].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((a[1].as_f64().unwrap() + 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn unknown_model_is_an_error() {
        let r = run_ok(&["relations", "no-such-model"]);
        assert_eq!(r.exit_code, 2);
        assert!(matches!(r.status, Status::Error));
        let r = run_ok(&["frobnicate"]);
        assert_eq!(r.exit_code, 2);
    }

    #[test]
    fn classifications() {
        let m = AbelianAnyonModel::builtin("z3").unwrap();
        let opts = GateOptions::default();
        for (k, want) in [(0, "quadratic_phase"), (1, "quadratic_phase"), (2, "fourier_composite"), (3, "quadratic_phase")] {
            let g = humphries_gate(2, k).unwrap();
            assert_eq!(gate_classification(&m, &g, &opts, 1e-9).unwrap(), want, "T{k}");
        }
    }

    #[test]
    fn clifford_check_counts() {
        let r = run_ok(&["clifford-check", "semion", "--genus", "2"]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.results["generators_checked"], 5);
        let r = run_ok(&["clifford-check", "--fib-torus"]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.results["clifford_compatible"], false);
    }
}
