//! `ec`: command-line front end. Every command prints one JSON document on
//! stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success / property holds, 1 property fails (or a
//! `--expect-extreme` operator is not extreme), 2 input or runtime error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use ec_core::audit::{audit_pair, Property};
use ec_core::catalog::{self, EntryKind};
use ec_core::enumerate::{brute_force_vertices, build_ball, enumerate_vertices};
use ec_core::extremal::{is_extreme, lp_image_check, span_check, weak_lp_holds};
use ec_core::json::{
    self, resolve_operator, resolve_space, AuditJson, CertificateJson, ErrorJson, ExtremalJson,
    LemmaJson, NormJson, OperatorJson, SpaceJson, VertexSetJson, WeakLpJson,
};
use ec_core::lemma::{lemma_check, Claim};
use ec_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "ec",
    version,
    about = "Extreme contractions between polygonal normed spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operator norm, attainment set and images of extreme points.
    Norm {
        /// Operator JSON file, or `catalog:NAME`.
        #[arg(long)]
        operator: String,
    },
    /// Extremality certificate plus the image-property verdicts.
    Extremal {
        #[arg(long)]
        operator: String,
        /// Exit with status 1 unless the operator is extreme.
        #[arg(long)]
        expect_extreme: bool,
    },
    /// All extreme contractions between two spaces.
    Enumerate {
        /// Catalog name or space JSON file.
        #[arg(long)]
        domain: String,
        #[arg(long)]
        codomain: String,
        #[arg(long)]
        count_only: bool,
        /// Cross-check against the brute-force vertex oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Check a pair of spaces for the weak-lp or lp property.
    Audit {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        codomain: String,
        #[arg(long, value_parser = ["weak-lp", "lp"])]
        property: String,
        /// Write the full violation list here (the report inlines at most 20).
        #[arg(long)]
        violations_file: Option<PathBuf>,
    },
    /// Exhaustive check of the support-set lemma.
    Lemma {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = ["i", "ii"])]
        claim: String,
    },
    /// Built-in spaces and operators.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

struct Outcome {
    body: serde_json::Value,
    success: bool,
}

fn ok(body: serde_json::Value) -> Outcome {
    Outcome {
        body,
        success: true,
    }
}

fn value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(command: Command) -> ec_core::Result<Outcome> {
    match command {
        Command::Norm { operator } => {
            let op = resolve_operator(&operator)?;
            Ok(ok(value(&NormJson::from_operator(&op))))
        }
        Command::Extremal {
            operator,
            expect_extreme,
        } => {
            let op = resolve_operator(&operator)?;
            let cert = is_extreme(&op)?;
            let extreme = cert.is_extreme();
            let span = match span_check(&op) {
                Ok(v) => Some(v),
                Err(Error::NormNotOne(_)) | Err(Error::ZeroOperator) => None,
                Err(e) => return Err(e),
            };
            let body = ExtremalJson {
                matrix: op.matrix().clone(),
                op_norm: op.op_norm(),
                certificate: CertificateJson::from_certificate(&cert),
                weak_lp: WeakLpJson::from(&weak_lp_holds(&op)),
                lp_image: lp_image_check(&op),
                span_check: span,
            };
            Ok(Outcome {
                body: value(&body),
                success: extreme || !expect_extreme,
            })
        }
        Command::Enumerate {
            domain,
            codomain,
            count_only,
            oracle,
        } => {
            let ball = build_ball(
                resolve_space(&domain, None)?,
                resolve_space(&codomain, None)?,
            )?;
            let vertices = enumerate_vertices(&ball)?;
            log::info(&format!("{} vertices", vertices.count()));
            let mut body = VertexSetJson::from_vertices(&vertices, count_only);
            let mut success = true;
            if oracle {
                let agrees = brute_force_vertices(&ball)?.same_set(&vertices);
                body.oracle_agrees = Some(agrees);
                success = agrees;
            }
            Ok(Outcome {
                body: value(&body),
                success,
            })
        }
        Command::Audit {
            domain,
            codomain,
            property,
            violations_file,
        } => {
            let property: Property = property.parse()?;
            let report = audit_pair(
                resolve_space(&domain, None)?,
                resolve_space(&codomain, None)?,
                property,
            )?;
            let (body, all) = AuditJson::from_report(&report);
            if let Some(path) = violations_file {
                std::fs::write(&path, json::to_json(&all))
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            } else if body.truncated {
                log::info(&format!(
                    "{} violations, {} shown; pass --violations-file for the full list",
                    body.violation_count,
                    body.violations.len()
                ));
            }
            Ok(Outcome {
                success: report.holds(),
                body: value(&body),
            })
        }
        Command::Lemma { m, k, claim } => {
            let claim: Claim = claim.parse()?;
            let report = lemma_check(m, k, claim)?;
            Ok(Outcome {
                body: value(&LemmaJson::from(&report)),
                success: report.holds,
            })
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let list = |kind: EntryKind| -> Vec<serde_json::Value> {
                    catalog::ENTRIES
                        .iter()
                        .filter(|e| e.kind == kind)
                        .map(|e| json!({ "name": e.name, "note": e.note }))
                        .collect()
                };
                Ok(ok(json!({
                    "spaces": list(EntryKind::Space),
                    "operators": list(EntryKind::Operator),
                })))
            }
            CatalogAction::Show { name } => {
                if catalog::operator_names().any(|n| n == name) {
                    let op = catalog::get_operator(&name)?;
                    return Ok(ok(value(&OperatorJson::from_operator(&op))));
                }
                let space = catalog::get_space(&name)?;
                Ok(ok(value(&SpaceJson::from_space(&space, true))))
            }
        },
    }
}

mod log {
    pub fn info(msg: &str) {
        if std::env::var_os("EC_QUIET").is_none() {
            eprintln!("ec: {msg}");
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("EC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn print(body: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(body).expect("serializable")
    );
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            let err = ErrorJson {
                error: json::ErrorBody {
                    kind: "UsageError".into(),
                    message: e.kind().to_string(),
                },
            };
            print(&value(&err));
            return ExitCode::from(2);
        }
    };
    configure_threads();
    match run(cli.command) {
        Ok(outcome) => {
            print(&outcome.body);
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            log::info(&e.to_string());
            print(&value(&ErrorJson::from(&e)));
            ExitCode::from(2)
        }
    }
}
