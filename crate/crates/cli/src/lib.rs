//! Command implementations for the `psl` binary.
//!
//! Every command returns an [`Outcome`] holding the rendered report and the
//! process exit code: 0 on success, 1 when a mathematical violation was found,
//! 2 for usage or parse errors.

use std::collections::BTreeMap;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use psl_core::lorentzcheck::LorentzianReport;
use psl_core::polynomial::Homogeneity;
use psl_core::pscalc::{degree_from_result, factorial, ps_from_interval};
use psl_core::weylgroup::DEFAULT_ORDER_CAP;
use psl_core::{
    check_mconvex, is_lorentzian, log_concavity_spot_check, ps_by_chevalley, ElementId, SparsePoly,
    WeylGroup,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "psl",
    version,
    about = "Postnikov-Stanley polynomials, Richardson degrees and Lorentzian checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for numeric spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Refuse Weyl groups with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// Root system type, e.g. A2, B3, G2.
    #[arg(long)]
    pub group: String,
    /// Lower element: `perm:213` (type A), `word:1,2,1` or `id`.
    #[arg(long)]
    pub u: String,
    /// Upper element.
    #[arg(long)]
    pub w: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute D_u^w by both algorithms.
    Ps(PairArgs),
    /// lambda-degree of the Richardson variety R_u^w.
    Degree {
        #[command(flatten)]
        pair: PairArgs,
        /// Dominant weight in the fundamental-weight basis, e.g. `1,1`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// List the Bruhat interval [u, w] with labelled cover edges.
    Interval(PairArgs),
    /// Enumerate or count saturated chains of [u, w].
    Chains {
        #[command(flatten)]
        pair: PairArgs,
        /// Print only the number of chains.
        #[arg(long)]
        count_only: bool,
    },
    /// Decide whether a polynomial (JSON) is Lorentzian.
    Lorentzian {
        /// Polynomial JSON: {"vars": r, "terms": [{"exp": [...], "num": "p", "den": "q"}]}.
        #[arg(long, conflicts_with = "poly_file")]
        poly: Option<String>,
        /// File holding the polynomial JSON.
        #[arg(long)]
        poly_file: Option<String>,
        /// Also run the numeric log-concavity spot check with this many samples.
        #[arg(long)]
        spot_check: Option<usize>,
    },
    /// Check every comparable pair of a group: both algorithms agree, D_u^w
    /// is Lorentzian and has M-convex support.
    VerifyTheorem {
        #[arg(long)]
        group: String,
    },
    /// Batch mode: JSON list of {"type", "u", "w", "lambda"?} tasks.
    Sweep {
        /// Task file; standard input when omitted or `-`.
        #[arg(long)]
        input: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    /// Diagnostics go to standard error, reports to standard output.
    pub is_error: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            code: EXIT_OK,
            is_error: false,
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            output: format!("error: {message}"),
            code: EXIT_USAGE,
            is_error: true,
        }
    }
}

fn render(global: &GlobalOpts, text: String, value: &Value) -> String {
    match global.output {
        OutputFormat::Text => text,
        OutputFormat::Json => {
            serde_json::to_string_pretty(value).expect("report JSON is serializable")
        }
    }
}

pub fn load_group(label: &str, cap: usize) -> Result<WeylGroup, psl_core::Error> {
    WeylGroup::from_label_with_cap(label, cap)
}

fn group_error(e: psl_core::Error) -> Outcome {
    match e {
        psl_core::Error::GroupTooLarge { .. } => {
            Outcome::usage(format!("{e}; try a smaller rank or raise --max-order"))
        }
        other => Outcome::usage(other),
    }
}

struct Pair {
    group: WeylGroup,
    u: ElementId,
    w: ElementId,
}

fn parse_pair(args: &PairArgs, global: &GlobalOpts) -> Result<Pair, Outcome> {
    let group = load_group(&args.group, global.max_order).map_err(group_error)?;
    let u = group.parse_element(&args.u).map_err(Outcome::usage)?;
    let w = group.parse_element(&args.w).map_err(Outcome::usage)?;
    Ok(Pair { group, u, w })
}

pub fn parse_lambda(text: &str, rank: usize) -> Result<Vec<i64>, String> {
    let values: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("lambda must be comma-separated integers, got {text:?}"))?;
    if values.len() != rank {
        return Err(format!(
            "lambda has {} entries but the rank is {rank}",
            values.len()
        ));
    }
    Ok(values)
}

pub fn run(cli: Cli) -> Outcome {
    let global = cli.global;
    match cli.command {
        Command::Ps(args) => cmd_ps(&args, &global),
        Command::Degree { pair, lambda } => cmd_degree(&pair, &lambda, &global),
        Command::Interval(args) => cmd_interval(&args, &global),
        Command::Chains { pair, count_only } => cmd_chains(&pair, count_only, &global),
        Command::Lorentzian {
            poly,
            poly_file,
            spot_check,
        } => cmd_lorentzian(poly, poly_file, spot_check, &global),
        Command::VerifyTheorem { group } => cmd_verify_theorem(&group, &global),
        Command::Sweep { input } => cmd_sweep(input.as_deref(), &global),
    }
}

/// Both algorithms for one pair.
struct PairComputation {
    poly: SparsePoly,
    chain_count: BigUint,
    comparable: bool,
    methods_agree: bool,
    degree: Option<usize>,
}

fn compute_pair(
    group: &WeylGroup,
    u: ElementId,
    w: ElementId,
) -> Result<PairComputation, psl_core::Error> {
    let interval = group.interval(u, w)?;
    let chains = ps_from_interval(group, &interval);
    let chev = ps_by_chevalley(group, u, w)?;
    let methods_agree = chains.poly == chev.poly
        && chains.chain_count == chev.chain_count
        && chains.comparable == chev.comparable;
    Ok(PairComputation {
        degree: chains.degree(group),
        poly: chains.poly,
        chain_count: chains.chain_count,
        comparable: chains.comparable,
        methods_agree,
    })
}

pub fn cmd_ps(args: &PairArgs, global: &GlobalOpts) -> Outcome {
    let pair = match parse_pair(args, global) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let g = &pair.group;
    let result = match compute_pair(g, pair.u, pair.w) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let poly_text = if result.comparable {
        result.poly.to_string()
    } else {
        "0 (incomparable)".to_string()
    };
    let degree_text = result
        .degree
        .map_or_else(|| "-".to_string(), |d| d.to_string());
    let text = format!(
        "D = {poly_text}\nchains = {}\ndegree = {degree_text}\nmethods_agree = {}",
        result.chain_count, result.methods_agree
    );
    let value = json!({
        "group": g.system().label(),
        "u": g.format_element(pair.u),
        "w": g.format_element(pair.w),
        "comparable": result.comparable,
        "poly": result.poly.to_json_value(),
        "poly_text": result.poly.to_string(),
        "chain_count": result.chain_count.to_string(),
        "degree": result.degree,
        "methods_agree": result.methods_agree,
    });
    let code = if result.methods_agree {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    Outcome {
        output: render(global, text, &value),
        code,
        is_error: false,
    }
}

pub fn cmd_degree(args: &PairArgs, lambda: &str, global: &GlobalOpts) -> Outcome {
    let pair = match parse_pair(args, global) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let g = &pair.group;
    let lambda = match parse_lambda(lambda, g.rank()) {
        Ok(l) => l,
        Err(msg) => return Outcome::usage(msg),
    };
    let degree = match psl_core::richardson_degree(g, pair.u, pair.w, &lambda) {
        Ok(d) => d,
        Err(e) => return Outcome::usage(e),
    };
    let text = if degree.empty_variety {
        "0 (empty Richardson variety: u is not below w)".to_string()
    } else {
        degree.value.to_string()
    };
    let value = json!({
        "group": g.system().label(),
        "u": g.format_element(pair.u),
        "w": g.format_element(pair.w),
        "lambda": lambda,
        "degree": degree.value.to_string(),
        "empty_variety": degree.empty_variety,
    });
    Outcome::ok(render(global, text, &value))
}

fn form_text(coeffs: &[i64]) -> String {
    psl_core::LinearForm::new(coeffs.to_vec())
        .to_poly()
        .to_string()
}

pub fn cmd_interval(args: &PairArgs, global: &GlobalOpts) -> Outcome {
    let pair = match parse_pair(args, global) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let g = &pair.group;
    let iv = match g.interval(pair.u, pair.w) {
        Ok(iv) => iv,
        Err(e) => return Outcome::usage(e),
    };
    let mut text = String::new();
    if iv.is_empty() {
        text.push_str("empty interval (u is not below w)");
    } else {
        text.push_str(&format!(
            "{} elements, {} cover edges\n",
            iv.elements().len(),
            iv.edges().len()
        ));
        for (k, stratum) in iv.strata().iter().enumerate() {
            let names: Vec<String> = stratum.iter().map(|&v| g.format_element(v)).collect();
            text.push_str(&format!(
                "length {}: {}\n",
                g.length(pair.u) + k,
                names.join(" ")
            ));
        }
        for e in iv.edges() {
            text.push_str(&format!(
                "{} -> {} [{}]\n",
                g.format_element(e.lower),
                g.format_element(e.upper),
                form_text(&e.multiplicity.coeffs)
            ));
        }
        text.pop();
    }
    let edges: Vec<Value> = iv
        .edges()
        .iter()
        .map(|e| {
            json!({
                "lower": g.format_element(e.lower),
                "upper": g.format_element(e.upper),
                "root": g.system().positive_roots()[e.root].coords,
                "multiplicity": e.multiplicity.coeffs,
            })
        })
        .collect();
    let strata: Vec<Vec<String>> = iv
        .strata()
        .iter()
        .map(|s| s.iter().map(|&v| g.format_element(v)).collect())
        .collect();
    let value = json!({
        "group": g.system().label(),
        "u": g.format_element(pair.u),
        "w": g.format_element(pair.w),
        "empty": iv.is_empty(),
        "strata": strata,
        "edges": edges,
    });
    Outcome::ok(render(global, text, &value))
}

pub fn cmd_chains(args: &PairArgs, count_only: bool, global: &GlobalOpts) -> Outcome {
    let pair = match parse_pair(args, global) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let g = &pair.group;
    let iv = match g.interval(pair.u, pair.w) {
        Ok(iv) => iv,
        Err(e) => return Outcome::usage(e),
    };
    if count_only {
        let count = iv.count_chains();
        let value = json!({ "count": count.to_string() });
        return Outcome::ok(render(global, count.to_string(), &value));
    }
    let mut lines = Vec::new();
    let mut chains_json = Vec::new();
    for chain in iv.saturated_chains() {
        let mut line = g.format_element(pair.u);
        let mut steps = Vec::new();
        for e in &chain {
            line.push_str(&format!(
                " -[{}]-> {}",
                form_text(&e.multiplicity.coeffs),
                g.format_element(e.upper)
            ));
            steps.push(json!({
                "upper": g.format_element(e.upper),
                "multiplicity": e.multiplicity.coeffs,
            }));
        }
        lines.push(line);
        chains_json.push(Value::Array(steps));
    }
    lines.push(format!("{} chains", chains_json.len()));
    let value = json!({
        "u": g.format_element(pair.u),
        "w": g.format_element(pair.w),
        "count": chains_json.len().to_string(),
        "chains": chains_json,
    });
    Outcome::ok(render(global, lines.join("\n"), &value))
}

pub fn cmd_lorentzian(
    poly: Option<String>,
    poly_file: Option<String>,
    spot_check: Option<usize>,
    global: &GlobalOpts,
) -> Outcome {
    let text = match (poly, poly_file) {
        (Some(p), None) => p,
        (None, Some(path)) => match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return Outcome::usage(format!("cannot read {path}: {e}")),
        },
        _ => return Outcome::usage("exactly one of --poly or --poly-file is required"),
    };
    let p = match SparsePoly::from_json(&text) {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e),
    };
    let report = is_lorentzian(&p);
    let spot = match spot_check {
        Some(samples) => match log_concavity_spot_check(&p, samples, global.seed) {
            Ok(v) => Some(v),
            Err(e) => return Outcome::usage(e),
        },
        None => None,
    };
    let mut lines = vec![
        format!("polynomial: {p}"),
        format!("lorentzian: {}", report.verdict),
    ];
    if let Some(reason) = report.reason {
        lines.push(format!("reason: {reason}"));
    }
    lines.push(format!("forms checked: {}", report.forms_checked));
    if let Some(cert) = &report.certificate {
        lines.push(format!(
            "certificate: {}",
            serde_json::to_string(cert).expect("certificate JSON")
        ));
    }
    if let Some(s) = spot {
        lines.push(format!(
            "log-concavity spot check: {}",
            if s { "no violation" } else { "violation found" }
        ));
    }
    let value = json!({
        "poly": p.to_json_value(),
        "report": report,
        "spot_check": spot,
    });
    Outcome {
        output: render(global, lines.join("\n"), &value),
        code: if report.verdict {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        },
        is_error: false,
    }
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, Outcome> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Outcome::usage(format!("cannot start {jobs} workers: {e}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub u: String,
    pub w: String,
    pub chain_count: String,
    pub forms_checked: u64,
    pub poly: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairFailure {
    pub u: String,
    pub w: String,
    pub check: String,
    pub detail: String,
    pub certificate: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub group: String,
    pub order: usize,
    pub pairs_tested: usize,
    pub forms_checked: u64,
    pub passed: bool,
    pub failure: Option<PairFailure>,
    pub pairs: Vec<PairRecord>,
}

/// All structural and theorem-level checks on one comparable pair.
fn check_pair(g: &WeylGroup, u: ElementId, w: ElementId) -> Result<PairRecord, Box<PairFailure>> {
    let fail = |check: &str, detail: String, certificate: Option<Value>| {
        Box::new(PairFailure {
            u: g.format_element(u),
            w: g.format_element(w),
            check: check.to_string(),
            detail,
            certificate,
        })
    };
    let result = compute_pair(g, u, w).map_err(|e| fail("computation", e.to_string(), None))?;
    if !result.methods_agree {
        return Err(fail(
            "method-disagreement",
            "chain enumeration and Chevalley recursion differ".into(),
            None,
        ));
    }
    let ell = g.length(w) - g.length(u);
    let poly = &result.poly;
    if poly.homogeneity() != Homogeneity::Homogeneous(ell as u32) {
        return Err(fail(
            "homogeneity",
            format!("{poly} is not homogeneous of degree {ell}"),
            None,
        ));
    }
    if !poly.has_nonnegative_coefficients() {
        return Err(fail(
            "nonnegativity",
            format!("{poly} has a negative coefficient"),
            None,
        ));
    }
    let scaled = poly.scale(&BigRational::from_integer(factorial(ell)));
    if !scaled.has_integer_coefficients() {
        return Err(fail(
            "integrality",
            format!("{ell}! * ({poly}) is not integral"),
            None,
        ));
    }
    if ell == 1 {
        let edge = g
            .covers(u)
            .ok()
            .and_then(|c| c.into_iter().find(|e| e.upper == w));
        if edge.is_none_or(|e| e.multiplicity.to_poly() != *poly) {
            return Err(fail(
                "cover-form",
                format!("{poly} differs from the cover multiplicity"),
                None,
            ));
        }
    }
    let ones = vec![1i64; g.rank()];
    let pseudo = psl_core::PsResult {
        u,
        w,
        poly: poly.clone(),
        chain_count: result.chain_count.clone(),
        method: psl_core::Method::ChainEnumeration,
        comparable: true,
    };
    let degree =
        degree_from_result(g, &pseudo, &ones).map_err(|e| fail("degree", e.to_string(), None))?;
    if !(degree.value.is_integer() && degree.value > BigRational::zero()) {
        return Err(fail(
            "degree",
            format!("degree at (1,...,1) is {}", degree.value),
            None,
        ));
    }
    let report: LorentzianReport = is_lorentzian(poly);
    if !report.verdict {
        return Err(fail(
            "lorentzian",
            format!(
                "{poly}: {}",
                report.reason.map(|r| r.to_string()).unwrap_or_default()
            ),
            report
                .certificate
                .as_ref()
                .map(|c| serde_json::to_value(c).expect("certificate JSON")),
        ));
    }
    let mconvex =
        check_mconvex(&poly.support()).map_err(|e| fail("m-convex", e.to_string(), None))?;
    if !mconvex.verdict {
        return Err(fail(
            "m-convex",
            format!("{poly} has support that is not M-convex"),
            mconvex
                .violation
                .as_ref()
                .map(|v| serde_json::to_value(v).expect("violation JSON")),
        ));
    }
    Ok(PairRecord {
        u: g.format_element(u),
        w: g.format_element(w),
        chain_count: result.chain_count.to_string(),
        forms_checked: report.forms_checked,
        poly: poly.to_json_value(),
    })
}

pub fn verify_theorem(g: &WeylGroup, jobs: usize) -> Result<TheoremReport, Outcome> {
    let pool = thread_pool(jobs)?;
    let top = g.length(g.longest_element());
    let pairs: Vec<(ElementId, ElementId)> = pool.install(|| {
        g.ids()
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(|u| {
                let mut above: Vec<ElementId> = g.up_set(u, top).into_iter().collect();
                above.sort();
                above.into_iter().map(move |w| (u, w))
            })
            .collect()
    });
    let results: Vec<Result<PairRecord, Box<PairFailure>>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(u, w)| check_pair(g, u, w))
            .collect()
    });

    let mut records = Vec::with_capacity(results.len());
    let mut failure = None;
    for result in results {
        match result {
            Ok(record) => records.push(record),
            Err(f) => {
                failure = Some(*f);
                break;
            }
        }
    }
    let passed = failure.is_none();
    Ok(TheoremReport {
        group: g.system().label(),
        order: g.order(),
        pairs_tested: records.len() + usize::from(!passed),
        forms_checked: records.iter().map(|r| r.forms_checked).sum(),
        passed,
        failure,
        pairs: records,
    })
}

pub fn cmd_verify_theorem(label: &str, global: &GlobalOpts) -> Outcome {
    let g = match load_group(label, global.max_order) {
        Ok(g) => g,
        Err(e) => return group_error(e),
    };
    let report = match verify_theorem(&g, global.jobs) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let mut text = format!(
        "group {}: {} elements\npairs tested: {}\nforms checked: {}\n",
        report.group, report.order, report.pairs_tested, report.forms_checked
    );
    match &report.failure {
        None => text.push_str(
            "result: all comparable pairs pass (methods agree, Lorentzian, M-convex support)",
        ),
        Some(f) => {
            text.push_str(&format!(
                "FAILED at u={} w={}: {} ({})",
                f.u, f.w, f.check, f.detail
            ));
            if let Some(c) = &f.certificate {
                text.push_str(&format!("\ncertificate: {c}"));
            }
        }
    }
    let value = serde_json::to_value(&report).expect("report JSON");
    Outcome {
        output: render(global, text, &value),
        code: if report.passed {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        },
        is_error: false,
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct SweepTask {
    #[serde(rename = "type")]
    pub group: String,
    pub u: String,
    pub w: String,
    #[serde(default)]
    pub lambda: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    #[serde(rename = "type")]
    pub group: String,
    pub u: String,
    pub w: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_variety: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn run_task(groups: &BTreeMap<String, Result<WeylGroup, String>>, task: &SweepTask) -> SweepResult {
    let mut out = SweepResult {
        group: task.group.clone(),
        u: task.u.clone(),
        w: task.w.clone(),
        comparable: None,
        poly: None,
        poly_text: None,
        chain_count: None,
        degree: None,
        empty_variety: None,
        methods_agree: None,
        error: None,
    };
    let mut attempt = || -> Result<(), String> {
        let g = groups[&task.group.trim().to_ascii_uppercase()]
            .as_ref()
            .map_err(Clone::clone)?;
        let u = g.parse_element(&task.u).map_err(|e| e.to_string())?;
        let w = g.parse_element(&task.w).map_err(|e| e.to_string())?;
        let result = compute_pair(g, u, w).map_err(|e| e.to_string())?;
        out.comparable = Some(result.comparable);
        out.poly = Some(result.poly.to_json_value());
        out.poly_text = Some(result.poly.to_string());
        out.chain_count = Some(result.chain_count.to_string());
        out.methods_agree = Some(result.methods_agree);
        if let Some(lambda) = &task.lambda {
            let degree = psl_core::richardson_degree(g, u, w, lambda).map_err(|e| e.to_string())?;
            out.degree = Some(degree.value.to_string());
            out.empty_variety = Some(degree.empty_variety);
        }
        Ok(())
    };
    if let Err(e) = attempt() {
        out.error = Some(e);
    }
    out
}

pub fn sweep(tasks: &[SweepTask], jobs: usize, cap: usize) -> Result<Vec<SweepResult>, Outcome> {
    let mut groups: BTreeMap<String, Result<WeylGroup, String>> = BTreeMap::new();
    for task in tasks {
        let key = task.group.trim().to_ascii_uppercase();
        if let std::collections::btree_map::Entry::Vacant(slot) = groups.entry(key) {
            let loaded = load_group(slot.key(), cap).map_err(|e| e.to_string());
            slot.insert(loaded);
        }
    }
    let pool = thread_pool(jobs)?;
    Ok(pool.install(|| tasks.par_iter().map(|t| run_task(&groups, t)).collect()))
}

pub fn cmd_sweep(input: Option<&str>, global: &GlobalOpts) -> Outcome {
    let raw = match input {
        None | Some("-") => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                return Outcome::usage(format!("cannot read standard input: {e}"));
            }
            buf
        }
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return Outcome::usage(format!("cannot read {path}: {e}")),
        },
    };
    let tasks: Vec<SweepTask> = match serde_json::from_str(&raw) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("malformed task list: {e}")),
    };
    let results = match sweep(&tasks, global.jobs, global.max_order) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let code = if results.iter().any(|r| r.error.is_some()) {
        EXIT_USAGE
    } else if results.iter().any(|r| r.methods_agree == Some(false)) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    // Batch output is always JSON.
    Outcome {
        output: serde_json::to_string_pretty(&results).expect("sweep JSON"),
        code,
        is_error: false,
    }
}
