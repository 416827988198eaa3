//! Batch front end: axiom checks on input files, classification scans,
//! family audits, idempotent and quandle reports, and coloring counts.
//!
//! Every command writes a single JSON document to standard output (compact
//! by default, indented with `--pretty`) and reserves standard error for
//! diagnostics. Identical invocations produce byte-identical reports.
//!
//! Exit status: 0 when every requested check passed, 1 when a check failed
//! (the report carries the witnesses), 2 for usage or input errors.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use sdbialg::axioms::{
    check_associativity, check_coassociativity, check_consistency, check_cube_zero,
    check_sd_bialgebra, find_counit, find_unit, CheckReport,
};
use sdbialg::classify::{
    canonical_form_algebra, canonical_form_coalgebra, comultiplication_tensor,
    enumerate_associative_nonunital, family_catalog, full_catalog,
    match_reference_multiplication, verify_family_completeness, CanonicalClass,
    FamilyDescriptor,
};
use sdbialg::io::{load_bialgebra, load_diagram, load_quandle, LoadedBialgebra};
use sdbialg::knot::count_colorings;
use sdbialg::quandle::{idempotent_quandle_report, is_quandle, is_rack, IdempotentQuandleReport};
use sdbialg::tensor::{Bialgebra, Element};

#[derive(Parser)]
#[command(name = "sdbialg", version, about = "Checks, classifies, and audits two-dimensional self-distributive bialgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run axiom checks on a bialgebra file.
    Check {
        /// Bialgebra JSON file (comultiplication optional).
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Comma-separated checks that must pass: associativity, cube-zero,
        /// unital, non-unital, coassociativity, consistency, sd, counital,
        /// non-counital.
        #[arg(long, value_delimiter = ',', value_name = "LIST")]
        expect: Vec<String>,
        #[arg(long)]
        pretty: bool,
    },
    /// Canonical form of one algebra, or the full isomorphism scan for a prime.
    Classify {
        /// Algebra JSON file over a prime field.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        /// Scan every multiplication tensor over GF(p) instead.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        pretty: bool,
    },
    /// Compare a comultiplication type's family catalog against the full scan.
    Audit {
        /// Comultiplication type.
        #[arg(long = "type", value_name = "1..5", value_parser = clap::value_parser!(u8).range(1..=5))]
        comul_type: u8,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        pretty: bool,
    },
    /// Idempotents of an algebra and the magma they form.
    Idempotents {
        /// Algebra JSON file over a prime field.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Quandle and rack axioms of a Cayley table.
    Quandles {
        /// Quandle JSON file ({"order": n, "table": [[...]]}).
        #[arg(long, value_name = "FILE")]
        quandle: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Count colorings of a diagram by a quandle.
    Color {
        /// Diagram JSON file ({"pd": [[a, b, c, d], ...]}).
        #[arg(long, value_name = "FILE")]
        pd: PathBuf,
        #[arg(long, value_name = "FILE")]
        quandle: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Print the family catalog.
    Families {
        /// Restrict to one comultiplication type.
        #[arg(long = "type", value_name = "1..5", value_parser = clap::value_parser!(u8).range(1..=5))]
        comul_type: Option<u8>,
        #[arg(long)]
        pretty: bool,
    },
}

/// A usage or input problem; always exits with status 2.
#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError(e.to_string())
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError(message.into())
}

fn emit<T: Serialize>(value: &T, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value).expect("reports serialize")
    } else {
        serde_json::to_string(value).expect("reports serialize")
    };
    println!("{text}");
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Ok(true) = checks passed, Ok(false) = a check failed, Err = exit 2.
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Check { input, expect, pretty } => check(&input, &expect, pretty),
        Command::Classify { input, p, pretty } => classify(input.as_deref(), p, pretty),
        Command::Audit { comul_type, p, pretty } => {
            let report = verify_family_completeness(comul_type, p)?;
            let sound = report.sound;
            emit(&report, pretty);
            Ok(sound)
        }
        Command::Idempotents { input, pretty } => {
            let loaded = load_bialgebra(&input)?;
            let report = idempotent_quandle_report(&loaded.algebra)?;
            emit(&IdempotentsOutput { input: input.display().to_string(), report }, pretty);
            Ok(true)
        }
        Command::Quandles { quandle, pretty } => {
            let table = load_quandle(&quandle)?;
            let report = QuandlesOutput {
                input: quandle.display().to_string(),
                order: table.order(),
                table: table.rows().to_vec(),
                is_quandle: is_quandle(&table),
                is_rack: is_rack(&table),
            };
            let ok = report.is_quandle.verdict;
            emit(&report, pretty);
            Ok(ok)
        }
        Command::Color { pd, quandle, pretty } => {
            let diagram = load_diagram(&pd)?;
            let table = load_quandle(&quandle)?;
            emit(&ColorOutput { colorings: count_colorings(&diagram, &table) }, pretty);
            Ok(true)
        }
        Command::Families { comul_type, pretty } => {
            let families: Vec<FamilyDescriptor> = match comul_type {
                Some(t) => family_catalog(t),
                None => full_catalog(),
            };
            emit(&families, pretty);
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct ElementReport {
    exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    element: Option<String>,
}

impl ElementReport {
    fn from_solution(solution: Option<Element>) -> ElementReport {
        ElementReport {
            exists: solution.is_some(),
            element: solution.map(|e| e.render()),
        }
    }
}

#[derive(Serialize)]
struct CheckOutput {
    input: String,
    field: String,
    dim: usize,
    associativity: CheckReport,
    cube_zero: CheckReport,
    unit: ElementReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    coassociativity: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counit: Option<ElementReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    consistency: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sd: Option<CheckReport>,
    expect: Vec<String>,
    failed: Vec<String>,
}

const EXPECT_TOKENS: [&str; 9] = [
    "associativity",
    "cube-zero",
    "unital",
    "non-unital",
    "coassociativity",
    "consistency",
    "sd",
    "counital",
    "non-counital",
];

const COALGEBRA_TOKENS: [&str; 5] =
    ["coassociativity", "consistency", "sd", "counital", "non-counital"];

fn check(input: &Path, expect: &[String], pretty: bool) -> Result<bool, CliError> {
    for token in expect {
        if !EXPECT_TOKENS.contains(&token.as_str()) {
            return Err(usage(format!(
                "unknown check `{token}` in --expect; valid checks: {}",
                EXPECT_TOKENS.join(", ")
            )));
        }
    }
    let loaded = load_bialgebra(input)?;
    let LoadedBialgebra { algebra, coalgebra } = &loaded;
    if coalgebra.is_none() {
        if let Some(token) = expect.iter().find(|t| COALGEBRA_TOKENS.contains(&t.as_str())) {
            return Err(usage(format!(
                "--expect {token} needs a comultiplication, but {} defines none",
                input.display()
            )));
        }
    }
    let bialgebra: Option<Bialgebra> = match loaded.bialgebra() {
        Some(b) => Some(b?),
        None => None,
    };
    let unit = find_unit(algebra);
    let counit = coalgebra.as_ref().map(find_counit);
    let output = CheckOutput {
        input: input.display().to_string(),
        field: algebra.field().to_string(),
        dim: algebra.dim(),
        associativity: check_associativity(algebra),
        cube_zero: check_cube_zero(algebra),
        unit: ElementReport::from_solution(unit),
        coassociativity: coalgebra.as_ref().map(check_coassociativity),
        counit: counit.clone().map(ElementReport::from_solution),
        consistency: bialgebra.as_ref().map(check_consistency),
        sd: bialgebra.as_ref().map(check_sd_bialgebra),
        expect: expect.to_vec(),
        failed: Vec::new(),
    };
    let holds = |token: &str| match token {
        "associativity" => output.associativity.verdict,
        "cube-zero" => output.cube_zero.verdict,
        "unital" => output.unit.exists,
        "non-unital" => !output.unit.exists,
        "coassociativity" => output.coassociativity.as_ref().is_some_and(|r| r.verdict),
        "consistency" => output.consistency.as_ref().is_some_and(|r| r.verdict),
        "sd" => output.sd.as_ref().is_some_and(|r| r.verdict),
        "counital" => output.counit.as_ref().is_some_and(|r| r.exists),
        "non-counital" => output.counit.as_ref().is_some_and(|r| !r.exists),
        _ => unreachable!("tokens validated above"),
    };
    let failed: Vec<String> =
        expect.iter().filter(|t| !holds(t)).cloned().collect();
    let passed = failed.is_empty();
    emit(&CheckOutput { failed, ..output }, pretty);
    Ok(passed)
}

type Nested = Vec<Vec<Vec<u64>>>;

fn nest(flat: &[u64]) -> Nested {
    (0..2)
        .map(|i| (0..2).map(|j| (0..2).map(|k| flat[4 * i + 2 * j + k]).collect()).collect())
        .collect()
}

#[derive(Serialize)]
struct MulClassification {
    canonical: Nested,
    matches_case: Option<u8>,
}

#[derive(Serialize)]
struct ComulClassification {
    canonical: Nested,
    matches_printed_type: Option<u8>,
}

#[derive(Serialize)]
struct SingleClassification {
    input: String,
    field: String,
    multiplication: MulClassification,
    #[serde(skip_serializing_if = "Option::is_none")]
    comultiplication: Option<ComulClassification>,
}

#[derive(Serialize)]
struct ScanClassification {
    p: u64,
    classes: Vec<CanonicalClass>,
}

fn classify(input: Option<&Path>, p: Option<u64>, pretty: bool) -> Result<bool, CliError> {
    match (input, p) {
        (Some(path), None) => {
            let loaded = load_bialgebra(path)?;
            let algebra = &loaded.algebra;
            let multiplication = MulClassification {
                canonical: nest(&canonical_form_algebra(algebra)?),
                matches_case: match_reference_multiplication(algebra)?,
            };
            let comultiplication = match &loaded.coalgebra {
                Some(c) => {
                    let canonical = canonical_form_coalgebra(c)?;
                    let matches_printed_type = (1..=5u8).find(|&t| {
                        canonical_form_coalgebra(&comultiplication_tensor(t, algebra.field()))
                            .is_ok_and(|c| c == canonical)
                    });
                    Some(ComulClassification { canonical: nest(&canonical), matches_printed_type })
                }
                None => None,
            };
            emit(
                &SingleClassification {
                    input: path.display().to_string(),
                    field: algebra.field().to_string(),
                    multiplication,
                    comultiplication,
                },
                pretty,
            );
            Ok(true)
        }
        (None, Some(p)) => {
            let classes = enumerate_associative_nonunital(p)?;
            emit(&ScanClassification { p, classes }, pretty);
            Ok(true)
        }
        (None, None) => Err(usage("classify needs --in FILE or --p PRIME")),
        (Some(_), Some(_)) => {
            Err(usage("classify takes either --in FILE or --p PRIME, not both"))
        }
    }
}

#[derive(Serialize)]
struct IdempotentsOutput {
    input: String,
    #[serde(flatten)]
    report: IdempotentQuandleReport,
}

#[derive(Serialize)]
struct QuandlesOutput {
    input: String,
    order: usize,
    table: Vec<Vec<usize>>,
    is_quandle: CheckReport,
    is_rack: CheckReport,
}

#[derive(Serialize)]
struct ColorOutput {
    colorings: u64,
}
