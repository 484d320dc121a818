//! `cauchykit`: exact Cauchy-matrix computations from the command line.
//!
//! Subcommands cover data generation, structured inversion and solving,
//! recognition, pair verification and classification, standard-basis
//! transition and Gram matrices, an identity checklist, and a benchmark of
//! the quadratic structured solve against cubic dense elimination.
//!
//! Exit codes: 0 for success and true verdicts, 1 for false/negative
//! verdicts (not Cauchy, not equivalent, a failed check), 2 for input
//! errors, with a message on standard error naming the offending token.

use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cauchykit::{
    classify, generate_data, identity_suite, is_equivalent, pair_from_data, recognize,
    BasisTag, CauchyData, CauchyPair, DenseMatrix, Frame, NotCauchyWitness, Recognition,
    Scalar, StructuredCauchy,
};

use cauchykit_cli::bench;
use cauchykit_cli::document::{
    parse_field_label, CauchyDataDocument, Document, MatrixDocument, PairDocument,
};

#[derive(Parser)]
#[command(
    name = "cauchykit",
    version,
    about = "Exact Cauchy-matrix toolkit over Q and GF(p)",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Shared `--out` flag: results always go to standard output and are
/// additionally written to this file when given.
#[derive(Args)]
struct OutArg {
    /// Also write the result to this file.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate defining data with 2n pairwise-distinct scalars, deterministically by seed.
    Gen {
        /// Matrix dimension n (at least 1).
        n: usize,
        /// Field: "Q" or "gf:p" / "GF(p)" with a prime p.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Seed for the documented 64-bit linear congruential generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Invert the Cauchy matrix of a cauchy_data document (structured, quadratic).
    Invert {
        /// Input document path, or "-" for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Solve C·y = rhs for the Cauchy matrix of a cauchy_data document.
    Solve {
        /// Input document path, or "-" for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Matrix document holding the right-hand side as an n x 1 column.
        #[arg(long, value_name = "PATH")]
        rhs: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Decide whether a matrix document is exactly a Cauchy matrix.
    Recognize {
        /// Input document path, or "-" for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Verify the defining conditions for the two matrices of a pair document.
    VerifyPair {
        /// Input document path, or "-" for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build the canonical matrix pair representing a cauchy_data document.
    PairFromData {
        /// Input document path, or "-" for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Decide whether two pair documents are equivalent (conjugation plus common shift).
    Equiv {
        /// First pair document path, or "-" for standard input.
        first: PathBuf,
        /// Second pair document path, or "-" for standard input.
        second: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Partition pair documents into equivalence classes.
    Classify {
        /// Pair document paths; each file holds one pair document or a JSON array of them.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Transition matrix between two standard bases of the frame of a cauchy_data document.
    Transition {
        /// Input document path, or "-" for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Source basis: eps | eps-tilde | eps-star | eps-tilde-star.
        #[arg(long)]
        from: String,
        /// Target basis: eps | eps-tilde | eps-star | eps-tilde-star.
        #[arg(long)]
        to: String,
        /// Nonzero frame parameter γ, as a scalar in the data's field.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        gamma: String,
        /// Nonzero frame parameter ρ, as a scalar in the data's field.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        rho: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Gram matrix of the invariant bilinear form between two standard bases.
    Gram {
        /// Input document path, or "-" for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Row-side basis: eps | eps-tilde | eps-star | eps-tilde-star.
        #[arg(long)]
        left: String,
        /// Column-side basis: eps | eps-tilde | eps-star | eps-tilde-star.
        #[arg(long)]
        right: String,
        /// Nonzero frame parameter γ, as a scalar in the data's field.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        gamma: String,
        /// Nonzero frame parameter ρ, as a scalar in the data's field.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        rho: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the named identity checklist on a cauchy_data document.
    Identities {
        /// Input document path, or "-" for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Time the structured solve against the dense oracle; CSV report.
    Bench {
        /// Comma-separated matrix sizes, each at least 2.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Independently timed trials per size (at least 1).
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Field: "Q" or "gf:p" / "GF(p)" with a prime p.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Seed for the deterministic instance stream.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest size at which the dense oracle also runs; larger sizes
        /// report an empty oracle column and "-" in the match column.
        #[arg(long, default_value_t = 256)]
        oracle_max: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Gen { n, field, seed, out } => {
            let field = parse_field_label(&field)?;
            let data = generate_data(&field, n, seed).map_err(|e| e.to_string())?;
            let doc = Document::CauchyData(CauchyDataDocument::from_data(&data));
            deliver(&doc.to_json(), &out)?;
            Ok(0)
        }
        Command::Invert { input, out } => {
            let data = expect_data(read_document(&input)?)?;
            let field = data.field();
            let inverse = StructuredCauchy::new(data).invert();
            let doc = Document::Matrix(MatrixDocument::from_matrix(&field, &inverse));
            deliver(&doc.to_json(), &out)?;
            Ok(0)
        }
        Command::Solve { input, rhs, out } => {
            let data = expect_data(read_document(&input)?)?;
            let field = data.field();
            let (_, rhs_matrix) = expect_matrix(read_document(&rhs)?)?;
            if rhs_matrix.n_cols() != 1 {
                return Err(format!(
                    "the right-hand side must be an n x 1 column, found {} x {}",
                    rhs_matrix.n_rows(),
                    rhs_matrix.n_cols()
                ));
            }
            let structured = StructuredCauchy::new(data);
            let solution = structured
                .solve(rhs_matrix.entries())
                .map_err(|e| e.to_string())?;
            let column =
                DenseMatrix::new(solution.len(), 1, solution).map_err(|e| e.to_string())?;
            let doc = Document::Matrix(MatrixDocument::from_matrix(&field, &column));
            deliver(&doc.to_json(), &out)?;
            Ok(0)
        }
        Command::Recognize { input, out } => {
            let (field, matrix) = expect_matrix(read_document(&input)?)?;
            match recognize(&matrix).map_err(|e| e.to_string())? {
                Recognition::Cauchy(data) => {
                    let value = json!({
                        "cauchy": true,
                        "data": Document::CauchyData(CauchyDataDocument::from_data(&data)),
                    });
                    deliver(&pretty(&value), &out)?;
                    let _ = field;
                    Ok(0)
                }
                Recognition::NotCauchy(witness) => {
                    let value = json!({
                        "cauchy": false,
                        "witness": witness_json(&witness),
                    });
                    deliver(&pretty(&value), &out)?;
                    Ok(1)
                }
            }
        }
        Command::VerifyPair { input, out } => {
            let pair = expect_pair(read_document(&input)?)?;
            let report = pair.verify();
            let eigen = pair
                .eigenvalue_data()
                .map(|data| Document::CauchyData(CauchyDataDocument::from_data(data)));
            let value = json!({
                "verdict": report.verdict,
                "checks": {
                    "x_splits": report.x_splits,
                    "x_diagonalizable": report.x_diagonalizable,
                    "x_multiplicity_free": report.x_multiplicity_free,
                    "x_tilde_splits": report.x_tilde_splits,
                    "x_tilde_diagonalizable": report.x_tilde_diagonalizable,
                    "x_tilde_multiplicity_free": report.x_tilde_multiplicity_free,
                    "spectra_disjoint": report.spectra_disjoint,
                    "rank_delta": report.rank_delta,
                    "irreducible": report.irreducible,
                },
                "witness": report.witness,
                "eigenvalue_data": eigen,
            });
            deliver(&pretty(&value), &out)?;
            Ok(if report.verdict { 0 } else { 1 })
        }
        Command::PairFromData { input, out } => {
            let data = expect_data(read_document(&input)?)?;
            let pair = pair_from_data(&data);
            let doc = Document::Pair(PairDocument::from_pair(&pair));
            deliver(&doc.to_json(), &out)?;
            Ok(0)
        }
        Command::Equiv { first, second, out } => {
            let p = expect_pair(read_document(&first)?)?;
            let q = expect_pair(read_document(&second)?)?;
            match is_equivalent(&p, &q).map_err(|e| e.to_string())? {
                Some(equivalence) => {
                    let phi =
                        MatrixDocument::from_matrix(&p.field(), &equivalence.phi);
                    let value = json!({
                        "equivalent": true,
                        "zeta": equivalence.zeta.to_string(),
                        "phi": Document::Matrix(phi),
                    });
                    deliver(&pretty(&value), &out)?;
                    Ok(0)
                }
                None => {
                    let value = json!({ "equivalent": false });
                    deliver(&pretty(&value), &out)?;
                    Ok(1)
                }
            }
        }
        Command::Classify { inputs, out } => {
            let mut pairs: Vec<CauchyPair> = Vec::new();
            for path in &inputs {
                for doc in read_document_list(path)? {
                    pairs.push(expect_pair(doc)?);
                }
            }
            let classes = classify(&pairs).map_err(|e| e.to_string())?;
            let rendered: Vec<_> = classes
                .iter()
                .map(|class| {
                    json!({
                        "label": Document::CauchyData(CauchyDataDocument::from_data(&class.label)),
                        "members": class.members,
                    })
                })
                .collect();
            let value = json!({ "classes": rendered });
            deliver(&pretty(&value), &out)?;
            Ok(0)
        }
        Command::Transition {
            input,
            from,
            to,
            gamma,
            rho,
            out,
        } => {
            let (field, frame) = frame_from_args(&input, &gamma, &rho)?;
            let from: BasisTag = from.parse().map_err(|e: cauchykit::FrameError| e.to_string())?;
            let to: BasisTag = to.parse().map_err(|e: cauchykit::FrameError| e.to_string())?;
            let matrix = frame.transition(from, to);
            let doc = Document::Matrix(MatrixDocument::from_matrix(&field, &matrix));
            deliver(&doc.to_json(), &out)?;
            Ok(0)
        }
        Command::Gram {
            input,
            left,
            right,
            gamma,
            rho,
            out,
        } => {
            let (field, frame) = frame_from_args(&input, &gamma, &rho)?;
            let left: BasisTag = left.parse().map_err(|e: cauchykit::FrameError| e.to_string())?;
            let right: BasisTag = right.parse().map_err(|e: cauchykit::FrameError| e.to_string())?;
            let matrix = frame.gram(left, right);
            let doc = Document::Matrix(MatrixDocument::from_matrix(&field, &matrix));
            deliver(&doc.to_json(), &out)?;
            Ok(0)
        }
        Command::Identities { input, out } => {
            let data = expect_data(read_document(&input)?)?;
            let structured = StructuredCauchy::new(data);
            let checks = identity_suite(&structured);
            let all_hold = checks.iter().all(|c| c.holds);
            let rendered: Vec<_> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "holds": c.holds }))
                .collect();
            let value = json!({ "all_hold": all_hold, "checks": rendered });
            deliver(&pretty(&value), &out)?;
            Ok(if all_hold { 0 } else { 1 })
        }
        Command::Bench {
            sizes,
            trials,
            field,
            seed,
            oracle_max,
            out,
        } => {
            if trials == 0 {
                return Err("the trial count must be at least 1".to_string());
            }
            if let Some(&bad) = sizes.iter().find(|&&n| n < 2) {
                return Err(format!("benchmark sizes must be at least 2, found {bad}"));
            }
            let field = parse_field_label(&field)?;
            let csv = bench::run(&bench::BenchConfig {
                sizes,
                trials,
                field,
                seed,
                oracle_max,
            })?;
            deliver(&csv, &out)?;
            Ok(0)
        }
    }
}

/// Reads a whole file, with `-` meaning standard input.
fn read_text(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
    }
}

fn read_document(path: &Path) -> Result<Document, String> {
    Document::from_json(&read_text(path)?)
}

/// Reads either a single document or a JSON array of documents.
fn read_document_list(path: &Path) -> Result<Vec<Document>, String> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('[') {
        serde_json::from_str(&text).map_err(|e| format!("not a valid document list: {e}"))
    } else {
        Ok(vec![Document::from_json(&text)?])
    }
}

fn expect_data(doc: Document) -> Result<CauchyData, String> {
    match doc {
        Document::CauchyData(inner) => inner.to_data(),
        other => Err(format!(
            "expected a cauchy_data document, found kind \"{}\"",
            other.kind_name()
        )),
    }
}

fn expect_matrix(doc: Document) -> Result<(cauchykit::Field, DenseMatrix), String> {
    match doc {
        Document::Matrix(inner) => inner.to_matrix(),
        other => Err(format!(
            "expected a matrix document, found kind \"{}\"",
            other.kind_name()
        )),
    }
}

fn expect_pair(doc: Document) -> Result<CauchyPair, String> {
    match doc {
        Document::Pair(inner) => inner.to_pair(),
        other => Err(format!(
            "expected a pair document, found kind \"{}\"",
            other.kind_name()
        )),
    }
}

/// Builds the frame shared by `transition` and `gram`.
fn frame_from_args(
    input: &Path,
    gamma: &str,
    rho: &str,
) -> Result<(cauchykit::Field, Frame), String> {
    let data = expect_data(read_document(input)?)?;
    let field = data.field();
    let gamma: Scalar = field.parse_scalar(gamma).map_err(|e| e.to_string())?;
    let rho: Scalar = field.parse_scalar(rho).map_err(|e| e.to_string())?;
    let frame = Frame::new(data, gamma, rho).map_err(|e| e.to_string())?;
    Ok((field, frame))
}

/// JSON rendering of a recognition failure witness, in one of the three
/// documented categories.
fn witness_json(witness: &NotCauchyWitness) -> serde_json::Value {
    match witness {
        NotCauchyWitness::ZeroEntry { row, col } => json!({
            "category": "zero_entry",
            "row": row,
            "col": col,
            "description": witness.to_string(),
        }),
        NotCauchyWitness::DuplicateScalar { description } => json!({
            "category": "duplicate_scalar",
            "description": description,
        }),
        NotCauchyWitness::EntryMismatch { row, col } => json!({
            "category": "entry_mismatch",
            "row": row,
            "col": col,
            "description": witness.to_string(),
        }),
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}

/// Prints to standard output and optionally also writes the file.
fn deliver(text: &str, out: &OutArg) -> Result<(), String> {
    print!("{text}");
    if let Some(path) = &out.out {
        fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    Ok(())
}
