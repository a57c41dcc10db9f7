//! Command-line entry point.

use std::io::{stderr, stdout};
use std::path::PathBuf;
use std::process::exit;

use clap::Parser;

use divfrob::cli::{self, BlockChoice, FormatChoice, JobSpec, OrderChoice};

/// Exact divided-Frobenius matrices mod p for superelliptic curves
/// y^n = f(t).
#[derive(Debug, Parser)]
#[command(name = "divfrob", version, about)]
struct Args {
    /// Prime characteristic.
    #[arg(long)]
    p: Option<u64>,

    /// Exponent n in y^n = f(t).
    #[arg(long)]
    n: Option<u64>,

    /// Comma-separated integer coefficients of f, ascending degree.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,

    /// Which block of the matrix to emit.
    #[arg(long, value_enum, default_value_t)]
    block: BlockChoice,

    /// Row and column arrangement.
    #[arg(long, value_enum, default_value_t)]
    order: OrderChoice,

    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: FormatChoice,

    /// Run the lift, support, and determinant self-checks.
    #[arg(long, value_name = "on|off", value_parser = parse_switch,
          action = clap::ArgAction::Set, default_value = "on")]
    checks: bool,

    /// Also recompute the matrix structurally and compare.
    #[arg(long, value_name = "on|off", value_parser = parse_switch,
          action = clap::ArgAction::Set, default_value = "off")]
    oracle: bool,

    /// Load a complete JobSpec from a JSON file instead of flags.
    #[arg(long, conflicts_with_all = ["p", "n", "f", "block", "order", "format", "checks", "oracle"])]
    spec: Option<PathBuf>,

    /// Time the Hasse-Witt block across a prime sweep and exit.
    #[arg(long)]
    bench: bool,
}

fn parse_switch(value: &str) -> Result<bool, String> {
    match value {
        "on" => Ok(true),
        "off" => Ok(false),
        other => Err(format!("expected 'on' or 'off', got '{other}'")),
    }
}

fn parse_coeffs(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(str::trim)
        .map(|cell| {
            cell.parse::<i64>()
                .map_err(|_| format!("bad coefficient '{cell}'"))
        })
        .collect()
}

fn build_spec(args: &Args) -> Result<JobSpec, String> {
    if let Some(path) = &args.spec {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return serde_json::from_str(&text).map_err(|e| format!("bad job file: {e}"));
    }
    let p = args.p.ok_or("missing --p (or use --spec)")?;
    let n = args.n.ok_or("missing --n (or use --spec)")?;
    let f = parse_coeffs(args.f.as_deref().ok_or("missing --f (or use --spec)")?)?;
    Ok(JobSpec {
        p,
        n,
        f,
        block: args.block,
        order: args.order,
        format: args.format,
        checks: args.checks,
        oracle: args.oracle,
    })
}

fn main() {
    env_logger::init();
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if args.bench {
        exit(cli::bench(&mut stdout()));
    }
    let spec = match build_spec(&args) {
        Ok(spec) => spec,
        Err(message) => {
            eprintln!("{message}");
            exit(1);
        }
    };
    exit(cli::run(&spec, &mut stdout(), &mut stderr()));
}
