//! Command-line driver.
//!
//! Subcommands: `verify` (the full check suite with a JSON report),
//! `type` (classification datum for one parameter tuple), `kernel`
//! (graded kernel of the screening operator), `relation` (the generator
//! relation coefficient). Exit codes: 0 all-pass, 1 check failure,
//! 2 usage or validation error. Rationals are written `num/den` and read
//! as `num/den` or bare integers — never floats.

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::rational::Rational;
use crate::report::Report;
use crate::state::WhittakerParams;
use crate::{checks, singlet, whittaker};

#[derive(Parser)]
#[command(
    name = "vsing",
    version,
    about = "Exact-rational calculator for the free-boson singlet algebra and its Whittaker modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Print the classification record of one parameter tuple.
    Type(TypeArgs),
    /// Print graded kernel reports for the screening operator.
    Kernel(KernelArgs),
    /// Solve for the coefficient of the generator relation.
    Relation(RelationArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Deformation parameter, an integer >= 2.
    #[arg(long)]
    p: u32,
    /// Write machine-readable JSON to this path, or `-` for stdout.
    #[arg(long)]
    json: Option<String>,
    /// Print every check, not only failures.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Largest PBW weight of the bracket sample states.
    #[arg(long, default_value_t = 6)]
    max_weight: u32,
    /// Mode indices sweep `[-window, window]`.
    #[arg(long, default_value_t = 4)]
    mode_window: i64,
    /// Seed for sample-grid shuffling (the mathematics is deterministic).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct TypeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated eigenvalue tuple, e.g. `0,2` or `1/2,1/3`.
    #[arg(long)]
    zeta: String,
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Compute kernels for weights `0..=max_weight`.
    #[arg(long, default_value_t = 6)]
    max_weight: u32,
}

#[derive(Args)]
struct RelationArgs {
    #[command(flatten)]
    common: CommonArgs,
}

const EXIT_OK: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

fn validation_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn write_json(target: Option<&str>, content: &str) -> std::io::Result<()> {
    let result = match target {
        None | Some("-") => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .and_then(|()| out.write_all(b"\n"))
        }
        Some(path) => std::fs::write(path, format!("{content}\n")),
    };
    match result {
        // a closed pipe on the reading side is not our error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn parse_zeta(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<Rational>()
                .map_err(|e| format!("invalid zeta entry: {e}"))
        })
        .collect()
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    if args.common.p < 2 {
        return validation_error("p must be >= 2");
    }
    let checks =
        match checks::run_suite(args.common.p, args.max_weight, args.mode_window, args.seed) {
            Ok(c) => c,
            Err(e) => return validation_error(&e.to_string()),
        };
    let config = serde_json::json!({
        "max_weight": args.max_weight,
        "mode_window": args.mode_window,
        "seed": args.seed,
    });
    let report = Report::new(args.common.p, config, checks);

    // with `--json -` stdout carries the report alone
    let json_to_stdout = matches!(args.common.json.as_deref(), Some("-"));
    if !json_to_stdout {
        for check in &report.checks {
            let show = args.common.verbose || !check.passed();
            if show {
                let status = match check.status {
                    crate::report::Status::Pass => "PASS",
                    crate::report::Status::Fail => "FAIL",
                    crate::report::Status::Skipped => "SKIP",
                };
                println!("{status} {} — {}", check.name, check.details);
            }
        }
        println!(
            "summary: {} passed, {} failed, {} skipped",
            report.summary.pass, report.summary.fail, report.summary.skipped
        );
    }
    if let Some(target) = args.common.json.as_deref() {
        if let Err(e) = write_json(Some(target), &report.to_json()) {
            return validation_error(&format!("cannot write report: {e}"));
        }
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_type(args: &TypeArgs) -> i32 {
    if args.common.p < 2 {
        return validation_error("p must be >= 2");
    }
    let zeta = match parse_zeta(&args.zeta) {
        Ok(z) => z,
        Err(e) => return validation_error(&e),
    };
    if zeta.len() < 2 {
        return validation_error("zeta must have length >= 2 (r >= 1)");
    }
    if zeta.last().expect("nonempty").is_zero() {
        return validation_error("zeta_r must be nonzero");
    }
    let params = match WhittakerParams::new(args.common.p, zeta) {
        Ok(p) => Arc::new(p),
        Err(e) => return validation_error(&e.to_string()),
    };
    match whittaker::classification_record(&params) {
        Ok(record) => {
            let json = serde_json::to_string_pretty(&record.to_json()).expect("serializable");
            match write_json(args.common.json.as_deref(), &json) {
                Ok(()) => EXIT_OK,
                Err(e) => validation_error(&format!("cannot write output: {e}")),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CHECK_FAILED
        }
    }
}

fn cmd_kernel(args: &KernelArgs) -> i32 {
    if args.common.p < 2 {
        return validation_error("p must be >= 2");
    }
    let mut reports = Vec::new();
    for w in 0..=args.max_weight {
        match singlet::kernel_basis(args.common.p, w) {
            Ok(r) => reports.push(r.to_json()),
            Err(e) => return validation_error(&e.to_string()),
        }
    }
    let json =
        serde_json::to_string_pretty(&serde_json::Value::Array(reports)).expect("serializable");
    match write_json(args.common.json.as_deref(), &json) {
        Ok(()) => EXIT_OK,
        Err(e) => validation_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_relation(args: &RelationArgs) -> i32 {
    let p = args.common.p;
    if p < 2 {
        return validation_error("p must be >= 2");
    }
    match singlet::solve_omega_h_relation(p) {
        Ok(sol) => {
            if let Some(target) = args.common.json.as_deref() {
                let json = serde_json::json!({
                    "p": p,
                    "coefficient": sol.coefficient.to_string(),
                    "residual_terms": {
                        "3/(2p)": sol.residual_at_small.num_terms(),
                        "2p/3": sol.residual_at_big.num_terms(),
                    },
                });
                let text = serde_json::to_string_pretty(&json).expect("serializable");
                if let Err(e) = write_json(Some(target), &text) {
                    return validation_error(&format!("cannot write output: {e}"));
                }
            } else {
                println!(
                    "c* = {} ; residual terms at 3/(2p): {} ; at 2p/3: {}",
                    sol.coefficient,
                    sol.residual_at_small.num_terms(),
                    sol.residual_at_big.num_terms()
                );
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CHECK_FAILED
        }
    }
}

/// Parses process arguments and dispatches; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Type(args) => cmd_type(args),
        Command::Kernel(args) => cmd_kernel(args),
        Command::Relation(args) => cmd_relation(args),
    }
}
