//! Command-line surface: every operation of the engine behind one binary
//! with JSON/CSV/pretty emission and deterministic output.
//!
//! Exit codes: 0 on success with all checks passing, 1 on check failures,
//! 2 on usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cliffordian::blade::Signature;
use cliffordian::planar::{run_demo, trajectory_csv};
use cliffordian::prolong::{
    check_sa_identity, epsilon_signs_for, epsilon_table, first_prolongation, lie_algebra_basis,
    prolongation_to_json, Flavor, GroupSpec, OneForm, SxiChecker,
};
use cliffordian::rep::{
    classify, left_regular_rep, monomial_check, periodicity_rep, right_regular_rep, span_witness,
    verify_relations, RepKind, RepSet,
};
use cliffordian::report;

/// The identity table committed at the repository root; `report` checks that
/// a regenerated table matches it byte-for-byte.
pub const COMMITTED_EPSILON_TABLE: &str = include_str!("../../../epsilon-table.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "cliffordian",
    about = "Exact Clifford algebra representations, prolongations, and planar connection classes",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Number of product unities (square +E)
    #[arg(long)]
    s: Option<u32>,
    /// Number of complex unities (square -E)
    #[arg(long)]
    t: Option<u32>,
    /// Number of O-blocks in the flat model V = O^m
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Group flavor: clifford | cliffordian
    #[arg(long, default_value = "clifford")]
    flavor: String,
    /// Representation kind: left-regular | right-regular | periodicity
    #[arg(long, default_value = "periodicity")]
    kind: String,
    /// Output format: json | csv | pretty
    #[arg(long, default_value = "json")]
    emit: String,
    /// Seed for randomized demos
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Emit the matrices of a representation of Cl(s,t)
    Rep(Common),
    /// Verify every defining relation, the monomial property and the span witness
    Verify(Common),
    /// Decompose Cl(s,t) into base tensor factors
    Classify(Common),
    /// Derive the sign coefficients and check the structure identity
    Epsilons {
        #[command(flatten)]
        common: Common,
        /// Emit the full identity table for all signatures with s+t <= N
        #[arg(long)]
        table: Option<u32>,
    },
    /// Lie algebra and first prolongation dimensions with the exact basis
    Prolong(Common),
    /// S^xi membership in the first prolongation for all standard one-forms
    Sxi(Common),
    /// Deform the trivial connection and measure geodesic planarity
    PlanarDemo(Common),
    /// Run the full acceptance suite and emit a pass/fail table
    Report(Common),
}

enum Format {
    Json,
    Csv,
    Pretty,
}

fn parse_format(s: &str) -> Option<Format> {
    match s {
        "json" => Some(Format::Json),
        "csv" => Some(Format::Csv),
        "pretty" => Some(Format::Pretty),
        _ => None,
    }
}

struct Usage(String);

fn signature_of(common: &Common) -> Result<Signature, Usage> {
    let (Some(s), Some(t)) = (common.s, common.t) else {
        return Err(Usage("--s and --t are required for this subcommand".into()));
    };
    if s + t > 10 {
        return Err(Usage("s + t > 10 is beyond desk scale".into()));
    }
    Ok(Signature::new(s, t))
}

fn kind_of(common: &Common) -> Result<RepKind, Usage> {
    RepKind::parse(&common.kind)
        .ok_or_else(|| Usage(format!("unknown --kind '{}'", common.kind)))
}

fn flavor_of(common: &Common) -> Result<Flavor, Usage> {
    Flavor::parse(&common.flavor)
        .ok_or_else(|| Usage(format!("unknown --flavor '{}'", common.flavor)))
}

fn build_rep(sig: &Signature, kind: RepKind) -> Result<RepSet, Usage> {
    match kind {
        RepKind::LeftRegular => Ok(left_regular_rep(sig)),
        RepKind::RightRegular => Ok(right_regular_rep(sig)),
        RepKind::Periodicity => {
            periodicity_rep(sig).map_err(|e| Usage(format!("cannot build periodicity rep: {e}")))
        }
    }
}

fn pretty_matrix(m: &cliffordian::RationalMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        out.push_str("    ");
        for c in 0..m.cols() {
            let e = &m[(r, c)];
            let cell = if e == &cliffordian::matrix::rat(0, 1) {
                " .".to_string()
            } else if e == &cliffordian::matrix::rat(1, 1) {
                " +".to_string()
            } else if e == &cliffordian::matrix::rat(-1, 1) {
                " -".to_string()
            } else {
                format!(" {e}")
            };
            out.push_str(&cell);
        }
        out.push('\n');
    }
    out
}

fn emit(common: &Common, text: String) -> Result<(), Usage> {
    match &common.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| Usage(format!("cannot write {}: {e}", path.display()))),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_rep(common: &Common) -> Result<i32, Usage> {
    let sig = signature_of(common)?;
    let kind = kind_of(common)?;
    let rep = build_rep(&sig, kind)?;
    let text = match parse_format(&common.emit) {
        Some(Format::Json) => json_text(&rep.to_json()),
        Some(Format::Pretty) => {
            let mut out = String::new();
            let names = rep.blade_names();
            writeln!(out, "{} ({}), k = {}", sig, kind.as_str(), rep.k()).unwrap();
            for (name, m) in names.iter().zip(&rep.matrices) {
                writeln!(out, "  F[{name}]:").unwrap();
                out.push_str(&pretty_matrix(m));
            }
            out
        }
        _ => return Err(Usage("rep supports --emit json|pretty".into())),
    };
    emit(common, text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(common: &Common) -> Result<i32, Usage> {
    let sig = signature_of(common)?;
    let kind = kind_of(common)?;
    let rep = build_rep(&sig, kind)?;
    let relations = verify_relations(&rep);
    let monomial = monomial_check(&rep);
    let witness = span_witness(&rep).ok();
    let ok = relations.is_valid() && monomial && witness.as_ref().map(|w| w.rank) == Some(rep.k());
    let text = match parse_format(&common.emit) {
        Some(Format::Json) => json_text(&json!({
            "s": sig.s,
            "t": sig.t,
            "kind": kind.as_str(),
            "relations": relations.to_json(),
            "monomial": monomial,
            "span_rank": witness.as_ref().map(|w| w.rank),
            "ok": ok,
        })),
        Some(Format::Pretty) => {
            let mut out = String::new();
            writeln!(out, "{} ({})", sig, kind.as_str()).unwrap();
            writeln!(out, "  relations: {}", if relations.is_valid() { "ok" } else { "VIOLATED" })
                .unwrap();
            for v in &relations.violations {
                writeln!(out, "    {}", v.message).unwrap();
            }
            writeln!(out, "  monomial: {monomial}").unwrap();
            writeln!(
                out,
                "  span rank: {}",
                witness.map(|w| w.rank.to_string()).unwrap_or_else(|| "none".into())
            )
            .unwrap();
            out
        }
        _ => return Err(Usage("verify supports --emit json|pretty".into())),
    };
    emit(common, text)?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_classify(common: &Common) -> Result<i32, Usage> {
    let sig = signature_of(common)?;
    let recipe = classify(&sig).map_err(|e| Usage(e.to_string()))?;
    let text = match parse_format(&common.emit) {
        Some(Format::Json) => json_text(&json!({
            "s": sig.s,
            "t": sig.t,
            "factors": recipe.factor_names(),
        })),
        Some(Format::Pretty) => format!("{} = {}\n", sig, recipe.factor_names().join(" (x) ")),
        _ => return Err(Usage("classify supports --emit json|pretty".into())),
    };
    emit(common, text)?;
    Ok(EXIT_OK)
}

fn cmd_epsilons(common: &Common, table: Option<u32>) -> Result<i32, Usage> {
    if let Some(max_n) = table {
        if max_n == 0 || max_n > 6 {
            return Err(Usage("--table expects 1 <= N <= 6".into()));
        }
        let table = epsilon_table(max_n).map_err(|e| Usage(e.to_string()))?;
        emit(common, json_text(&table))?;
        return Ok(EXIT_OK);
    }
    let sig = signature_of(common)?;
    let eps = epsilon_signs_for(&sig).map_err(|e| Usage(e.to_string()))?;
    let rep = right_regular_rep(&sig);
    let identity = check_sa_identity(&rep, &eps);
    let text = match parse_format(&common.emit) {
        Some(Format::Json) => json_text(&json!({
            "s": sig.s,
            "t": sig.t,
            "signs": eps.signs,
            "exact_identity": identity.exact_all(),
            "hull_identity": identity.hull_all(),
        })),
        Some(Format::Pretty) => {
            let signs: Vec<String> = eps
                .signs
                .iter()
                .map(|s| if *s > 0 { "+1".into() } else { "-1".to_string() })
                .collect();
            format!(
                "{}: signs ({}), exact identity {}, hull identity {}\n",
                sig,
                signs.join(", "),
                identity.exact_all(),
                identity.hull_all()
            )
        }
        _ => return Err(Usage("epsilons supports --emit json|pretty".into())),
    };
    emit(common, text)?;
    Ok(EXIT_OK)
}

fn cmd_prolong(common: &Common) -> Result<i32, Usage> {
    let sig = signature_of(common)?;
    let flavor = flavor_of(common)?;
    let spec = GroupSpec::new(sig, common.m, flavor);
    let g = lie_algebra_basis(&spec);
    let basis = first_prolongation(&g);
    let mut body = json!({
        "s": sig.s,
        "t": sig.t,
        "m": common.m,
        "flavor": flavor.as_str(),
        "n": spec.model_dim(),
        "dim_g": g.basis.len(),
        "dim_g1": basis.len(),
    });
    let prol = prolongation_to_json(&basis);
    body["legend"] = prol["legend"].clone();
    body["basis"] = prol["basis"].clone();
    let text = match parse_format(&common.emit) {
        Some(Format::Json) => json_text(&body),
        Some(Format::Pretty) => format!(
            "{} m={} ({}): dim g = {}, dim g1 = {}\n",
            sig,
            common.m,
            flavor.as_str(),
            g.basis.len(),
            basis.len()
        ),
        _ => return Err(Usage("prolong supports --emit json|pretty".into())),
    };
    emit(common, text)?;
    Ok(EXIT_OK)
}

fn cmd_sxi(common: &Common) -> Result<i32, Usage> {
    let sig = signature_of(common)?;
    let spec = GroupSpec::new(sig, common.m, Flavor::Cliffordian);
    let checker = SxiChecker::new(&spec).map_err(|e| Usage(e.to_string()))?;
    let n = spec.model_dim();
    let memberships: Vec<bool> = (0..n)
        .map(|a| checker.check(&OneForm::standard(n, a)))
        .collect();
    let rank = checker.injectivity_rank();
    let ok = memberships.iter().all(|&b| b) && rank == n;
    let body = json!({
        "s": sig.s,
        "t": sig.t,
        "m": common.m,
        "dim_g1": checker.prolongation_dim(),
        "memberships": memberships,
        "injectivity_rank": rank,
        "ok": ok,
    });
    let text = match parse_format(&common.emit) {
        Some(Format::Json) => json_text(&body),
        Some(Format::Pretty) => format!(
            "{} m={}: dim g1 = {}, memberships {}/{}, injectivity rank {}\n",
            sig,
            common.m,
            checker.prolongation_dim(),
            memberships.iter().filter(|&&b| b).count(),
            n,
            rank
        ),
        _ => return Err(Usage("sxi supports --emit json|pretty".into())),
    };
    emit(common, text)?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_planar_demo(common: &Common) -> Result<i32, Usage> {
    let sig = signature_of(common)?;
    let demo = run_demo(&sig, common.m, common.seed, 1e-3, 1.0)
        .map_err(|e| Usage(e.to_string()))?;
    let ok = demo.torsion_preserved
        && demo.base_preserves_affinors
        && demo.forward_residual <= 1e-7
        && demo.reverse_residual <= 1e-7;
    let text = match parse_format(&common.emit) {
        Some(Format::Json) => json_text(&json!({
            "s": sig.s,
            "t": sig.t,
            "m": common.m,
            "seed": common.seed,
            "torsion_preserved": demo.torsion_preserved,
            "base_preserves_affinors": demo.base_preserves_affinors,
            "forward_residual": demo.forward_residual,
            "reverse_residual": demo.reverse_residual,
            "ok": ok,
        })),
        Some(Format::Csv) => trajectory_csv(&demo.trajectory, &demo.residuals),
        Some(Format::Pretty) => format!(
            "{} m={} seed={}: torsion {}, affinors {}, residuals {:.2e} / {:.2e} -> {}\n",
            sig,
            common.m,
            common.seed,
            demo.torsion_preserved,
            demo.base_preserves_affinors,
            demo.forward_residual,
            demo.reverse_residual,
            if ok { "ok" } else { "FAIL" }
        ),
        None => return Err(Usage(format!("unknown --emit '{}'", common.emit))),
    };
    emit(common, text)?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_report(common: &Common) -> Result<i32, Usage> {
    let mut outcomes = report::run_criteria(Some(COMMITTED_EPSILON_TABLE));
    outcomes.push(report::criterion_determinism(Some(COMMITTED_EPSILON_TABLE)));
    let all_pass = outcomes.iter().all(|o| o.passed);
    let text = match parse_format(&common.emit) {
        Some(Format::Json) => json_text(&report::report_json(&outcomes)),
        Some(Format::Pretty) => {
            let mut out = String::new();
            for o in &outcomes {
                out.push_str(&o.line());
                out.push('\n');
            }
            out.push_str(if all_pass {
                "all criteria passed\n"
            } else {
                "CRITERIA FAILED\n"
            });
            out
        }
        _ => return Err(Usage("report supports --emit json|pretty".into())),
    };
    emit(common, text)?;
    Ok(if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version on stdout with success status
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.cmd {
        Cmd::Rep(c) => cmd_rep(c),
        Cmd::Verify(c) => cmd_verify(c),
        Cmd::Classify(c) => cmd_classify(c),
        Cmd::Epsilons { common, table } => cmd_epsilons(common, *table),
        Cmd::Prolong(c) => cmd_prolong(c),
        Cmd::Sxi(c) => cmd_sxi(c),
        Cmd::PlanarDemo(c) => cmd_planar_demo(c),
        Cmd::Report(c) => cmd_report(c),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}
