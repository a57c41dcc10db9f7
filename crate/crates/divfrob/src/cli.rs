//! Job specifications, output rendering, and exit-code policy.
//!
//! A job names a curve, which block of the matrix to emit, the basis
//! order, the output format, and which self-checks to run. Exit codes:
//!
//! - `0`: success, requested output emitted;
//! - `1`: the job itself could not be parsed (flags, files, coefficients);
//! - `2`: the curve failed a validity hypothesis;
//! - `3`: an internal identity failed (lift relation, singular matrix, or
//!   a disagreement with the structural recomputation) — never caused by
//!   user input.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::blocks::{
    assemble, det_mod_p, entries_match_by_labels, hasse_witt_quadrant, support_pattern_holds,
    DividedFrobeniusMatrix, MatrixOrder,
};
use crate::curve::{validate, Block, CurveParams};
use crate::froblift;
use crate::oracle::structural_phi;

/// Which part of the matrix to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[derive(clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BlockChoice {
    /// The full `2g × 2g` matrix.
    #[default]
    Full,
    /// The Hasse-Witt quadrant (`H¹ → H¹`).
    Hw,
    /// The Cartier quadrant (`H⁰ → H⁰`).
    Cartier,
    /// The `H¹ → H⁰` quadrant.
    UpperRight,
    /// The `H⁰ → H¹` quadrant.
    LowerLeft,
}

/// Row and column arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[derive(clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OrderChoice {
    /// `H⁰` then `H¹`, each by `(j, i)`.
    #[default]
    Filtration,
    /// Grouped by isotypic class (block diagonal).
    Isotypic,
}

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[derive(clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FormatChoice {
    /// Labelled, human-readable report.
    #[default]
    Text,
    /// One JSON object with a fixed key order.
    Json,
    /// Matrix entries only, for spreadsheet diffing.
    Csv,
}

fn default_checks() -> bool {
    true
}

/// A complete job description, loadable from a JSON file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobSpec {
    /// The prime characteristic.
    pub p: u64,
    /// The exponent `n` in `yⁿ = f(t)`.
    pub n: u64,
    /// Integer coefficients of `f`, ascending degree.
    pub f: Vec<i64>,
    /// Which block to emit.
    #[serde(default)]
    pub block: BlockChoice,
    /// Basis arrangement.
    #[serde(default)]
    pub order: OrderChoice,
    /// Output encoding.
    #[serde(default)]
    pub format: FormatChoice,
    /// Run the lift, support, and determinant self-checks.
    #[serde(default = "default_checks")]
    pub checks: bool,
    /// Also recompute the matrix structurally and compare.
    #[serde(default)]
    pub oracle: bool,
}

impl JobSpec {
    /// A job for the given curve with all options at their defaults.
    pub fn new(p: u64, n: u64, f: Vec<i64>) -> Self {
        JobSpec {
            p,
            n,
            f,
            block: BlockChoice::default(),
            order: OrderChoice::default(),
            format: FormatChoice::default(),
            checks: true,
            oracle: false,
        }
    }
}

/// Self-check outcomes included in reports; absent checks were not run.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChecksReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_relation: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_divisibility: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius_consistent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support_pattern: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant_nonzero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_match: Option<bool>,
}

impl ChecksReport {
    fn failures(&self) -> Vec<&'static str> {
        let named = [
            (self.lift_relation, "lift_relation"),
            (self.lift_divisibility, "lift_divisibility"),
            (self.frobenius_consistent, "frobenius_consistent"),
            (self.support_pattern, "support_pattern"),
            (self.determinant_nonzero, "determinant_nonzero"),
            (self.oracle_match, "oracle_match"),
        ];
        named
            .into_iter()
            .filter_map(|(flag, name)| (flag == Some(false)).then_some(name))
            .collect()
    }

    fn entries(&self) -> Vec<(&'static str, bool)> {
        [
            ("lift_relation", self.lift_relation),
            ("lift_divisibility", self.lift_divisibility),
            ("frobenius_consistent", self.frobenius_consistent),
            ("support_pattern", self.support_pattern),
            ("determinant_nonzero", self.determinant_nonzero),
            ("oracle_match", self.oracle_match),
        ]
        .into_iter()
        .filter_map(|(name, flag)| flag.map(|value| (name, value)))
        .collect()
    }
}

/// The JSON report, fields in canonical order. Serializing a parsed
/// report is byte-identical to the original.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub p: u64,
    pub n: u64,
    pub f: Vec<u64>,
    pub l: u64,
    pub r: u64,
    pub g: u64,
    pub order: String,
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<u64>>,
    pub checks: ChecksReport,
    pub det_hw: u64,
    pub det_full_nonzero: bool,
}

fn order_name(order: OrderChoice) -> &'static str {
    match order {
        OrderChoice::Filtration => "filtration",
        OrderChoice::Isotypic => "isotypic",
    }
}

fn block_entries(matrix: &DividedFrobeniusMatrix, block: BlockChoice) -> Vec<Vec<u64>> {
    match block {
        BlockChoice::Full => matrix.entries().to_vec(),
        BlockChoice::Hw => matrix.quadrant(Block::H1, Block::H1),
        BlockChoice::Cartier => matrix.quadrant(Block::H0, Block::H0),
        BlockChoice::UpperRight => matrix.quadrant(Block::H0, Block::H1),
        BlockChoice::LowerLeft => matrix.quadrant(Block::H1, Block::H0),
    }
}

fn emit_text(
    out: &mut dyn Write,
    spec: &JobSpec,
    report: &JsonReport,
) -> std::io::Result<()> {
    writeln!(out, "p: {}", report.p)?;
    writeln!(out, "n: {}", report.n)?;
    let f: Vec<String> = report.f.iter().map(u64::to_string).collect();
    writeln!(out, "f: {}", f.join(","))?;
    writeln!(out, "l: {}", report.l)?;
    writeln!(out, "r: {}", report.r)?;
    writeln!(out, "g: {}", report.g)?;
    writeln!(out, "order: {}", report.order)?;
    let block = match spec.block {
        BlockChoice::Full => "full",
        BlockChoice::Hw => "hw",
        BlockChoice::Cartier => "cartier",
        BlockChoice::UpperRight => "upper-right",
        BlockChoice::LowerLeft => "lower-left",
    };
    writeln!(out, "block: {block}")?;
    writeln!(out, "basis: {}", report.basis.join(","))?;
    writeln!(out, "matrix:")?;
    for row in &report.matrix {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        writeln!(out, "{}", cells.join(" "))?;
    }
    writeln!(out, "checks:")?;
    for (name, value) in report.checks.entries() {
        writeln!(out, "  {name}: {}", if value { "pass" } else { "FAIL" })?;
    }
    writeln!(out, "det_hw: {}", report.det_hw)?;
    writeln!(out, "det_full_nonzero: {}", report.det_full_nonzero)?;
    Ok(())
}

fn emit_csv(out: &mut dyn Write, report: &JsonReport) -> std::io::Result<()> {
    for row in &report.matrix {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Executes a job, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(spec: &JobSpec, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let params = CurveParams::new(spec.p, spec.n, spec.f.clone());
    let curve = match validate(&params) {
        Ok(curve) => curve,
        Err(e) => {
            let _ = writeln!(err, "invalid curve: {e}");
            return 2;
        }
    };

    let lift = match froblift::compute(&curve) {
        Ok(lift) => lift,
        Err(e) => {
            let _ = writeln!(err, "internal error: {e}");
            return 3;
        }
    };

    let order = match spec.order {
        OrderChoice::Filtration => MatrixOrder::Filtration,
        OrderChoice::Isotypic => MatrixOrder::Isotypic,
    };
    let matrix = match assemble(&curve, &lift, order) {
        Ok(matrix) => matrix,
        Err(e) => {
            let _ = writeln!(err, "internal error: {e}");
            return 3;
        }
    };

    let mut checks = ChecksReport::default();
    if spec.checks {
        let lift_report = froblift::check_lift(&curve, &lift);
        checks.lift_relation = Some(lift_report.relation_holds);
        checks.lift_divisibility = Some(lift_report.divisibility_holds);
        checks.frobenius_consistent = Some(lift_report.frobenius_consistent);
        checks.support_pattern = Some(support_pattern_holds(&matrix));
        checks.determinant_nonzero = Some(matrix.determinant() != 0);
    }
    if spec.oracle {
        match structural_phi(&curve, &lift) {
            Ok(recomputed) => {
                checks.oracle_match = Some(entries_match_by_labels(&matrix, &recomputed));
            }
            Err(e) => {
                let _ = writeln!(err, "internal error: {e}");
                return 3;
            }
        }
    }

    let report = JsonReport {
        p: curve.p(),
        n: curve.n(),
        f: curve.f().coeffs().to_vec(),
        l: curve.l(),
        r: curve.r(),
        g: curve.g(),
        order: order_name(spec.order).to_string(),
        basis: matrix.labels().iter().map(|elem| elem.label()).collect(),
        matrix: block_entries(&matrix, spec.block),
        checks,
        det_hw: det_mod_p(&matrix.quadrant(Block::H1, Block::H1), curve.p()),
        det_full_nonzero: matrix.determinant() != 0,
    };

    let emitted = match spec.format {
        FormatChoice::Text => emit_text(out, spec, &report),
        FormatChoice::Json => {
            let line = serde_json::to_string(&report).expect("report serializes");
            writeln!(out, "{line}")
        }
        FormatChoice::Csv => emit_csv(out, &report),
    };
    if emitted.is_err() {
        return 3;
    }

    let failures = report.checks.failures();
    if !failures.is_empty() {
        let _ = writeln!(err, "internal check failed: {}", failures.join(", "));
        return 3;
    }
    0
}

/// Times the Hasse-Witt quadrant across a prime sweep on a fixed quintic,
/// reporting wall time per prime and the growth ratio between steps.
pub fn bench(out: &mut dyn Write) -> i32 {
    let mut previous: Option<f64> = None;
    for p in [101u64, 211, 401] {
        let params = CurveParams::new(p, 3, vec![-120, 274, -225, 85, -15, 1]);
        let curve = match validate(&params) {
            Ok(curve) => curve,
            Err(e) => {
                let _ = writeln!(out, "p={p} skipped: {e}");
                continue;
            }
        };
        let start = Instant::now();
        let quadrant = hasse_witt_quadrant(&curve);
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let det = det_mod_p(&quadrant, p);
        match previous {
            Some(before) if before > 0.0 => {
                let _ = writeln!(
                    out,
                    "p={p} g={} hw_ms={elapsed_ms:.3} det_hw={det} ratio={:.2}",
                    curve.g(),
                    elapsed_ms / before
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    "p={p} g={} hw_ms={elapsed_ms:.3} det_hw={det}",
                    curve.g()
                );
            }
        }
        previous = Some(elapsed_ms);
    }
    0
}
