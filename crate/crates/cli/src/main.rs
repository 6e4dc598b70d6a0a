//! `fourmove`: command-line front end for the 4-move obstruction checker.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use fourmove_core::catalog::{self, CatalogError};
use fourmove_core::freegroup::WordSyntaxError;
use fourmove_core::magnus::{expand_word, MagnusError};
use fourmove_core::milnor::{eta_word, longitudes, mu_mod2, MilnorError};
use fourmove_core::obstruction::{
    check_link_with, relator_conditions_selftest, CheckOptions, ObstructionError, Verdict,
};
use fourmove_core::underpass::{import_gauss, parse_link_file, to_json, LinkError};
use fourmove_core::{Exec, Meridian, UnderpassCode, Word};

const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;
const EXIT_SELFTEST_FAILED: u8 = 5;
const EXIT_OBSTRUCTED: u8 = 10;

const DEFAULT_SEED: u64 = 0x4d0e;

#[derive(Parser)]
#[command(name = "fourmove", version, about = "Magnus Z/2 obstructions to 4-move triviality of links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the necessary conditions for 4-triviality.
    Check {
        #[command(flatten)]
        input: Input,
        /// Nilpotency level (at least 5).
        #[arg(long, default_value_t = 5)]
        q: usize,
        /// Expansion degree; defaults to min(q-1, max(4, m)).
        #[arg(long = "D", alias = "degree")]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit with status 10 when the link is obstructed.
        #[arg(long)]
        fail_on_obstructed: bool,
        /// Disable data-parallel evaluation.
        #[arg(long)]
        sequential: bool,
    },
    /// Diagram-level Milnor invariant mod 2.
    Mu {
        #[command(flatten)]
        input: Input,
        /// Comma-separated indices k_1,...,k_j.
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<usize>,
        /// Component i whose longitude is expanded.
        #[arg(long)]
        target: usize,
        #[arg(long, default_value_t = 5)]
        q: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Linking numbers lk_{i/j}; writhes on the diagonal.
    Lk {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Longitude words, and their images under eta_q when --q is given.
    Longitudes {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Magnus Z/2 expansion of a word in a1..am.
    Expand {
        #[arg(long)]
        word: String,
        /// Number of variables; defaults to the largest index in the word.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "D", alias = "degree")]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Built-in example links.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Convert a signed Gauss code to the JSON link format.
    ImportGauss {
        /// Read the code from a file instead of stdin.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value = "gauss")]
        name: String,
    },
    /// Check the conditions on random products of conjugated relators.
    Selftest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print an entry in the JSON link format.
    Show { name: String },
}

#[derive(Args)]
struct Input {
    /// JSON link file; stdin when neither --file nor --catalog is given.
    #[arg(long, conflicts_with = "catalog")]
    file: Option<PathBuf>,
    /// Catalog entry name, e.g. hopf or milnor_chain(4).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure { code, message: message.to_string() }
    }
}

impl From<LinkError> for Failure {
    fn from(e: LinkError) -> Self {
        let code = if e.is_syntax() { EXIT_PARSE } else { EXIT_VALIDATION };
        Failure::new(code, e)
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::new(EXIT_VALIDATION, e)
    }
}

impl From<WordSyntaxError> for Failure {
    fn from(e: WordSyntaxError) -> Self {
        Failure::new(EXIT_PARSE, e)
    }
}

impl From<MilnorError> for Failure {
    fn from(e: MilnorError) -> Self {
        Failure::new(EXIT_PRECONDITION, e)
    }
}

impl From<MagnusError> for Failure {
    fn from(e: MagnusError) -> Self {
        Failure::new(EXIT_PRECONDITION, e)
    }
}

impl From<ObstructionError> for Failure {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Internal(_) => Failure::new(1, e),
            _ => Failure::new(EXIT_PRECONDITION, e),
        }
    }
}

struct Outcome {
    stdout: String,
    code: u8,
}

impl From<String> for Outcome {
    fn from(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn read_input(input: &Input) -> Result<UnderpassCode, Failure> {
    if let Some(name) = &input.catalog {
        return Ok(catalog::get(name)?.code);
    }
    let text = read_text(input.file.as_ref())?;
    Ok(parse_link_file(&text)?)
}

fn read_text(file: Option<&PathBuf>) -> Result<String, Failure> {
    match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Check { input, q, degree, format, fail_on_obstructed, sequential } => {
            if degree == Some(0) {
                return Err(Failure::new(EXIT_PRECONDITION, "--D must be at least 1"));
            }
            let code = read_input(&input)?;
            let exec = if sequential { Exec::Sequential } else { Exec::default() };
            let opts = CheckOptions { q, degree, ..CheckOptions::new(q) }.with_exec(exec);
            let report = check_link_with(&code, &opts)?;
            let stdout = match format {
                Format::Text => report.to_text(),
                Format::Json => pretty(&report.to_json()),
            };
            let code = if fail_on_obstructed && report.verdict == Verdict::Obstructed {
                EXIT_OBSTRUCTED
            } else {
                0
            };
            Ok(Outcome { stdout, code })
        }
        Command::Mu { input, seq, target, q, format } => {
            let code = read_input(&input)?;
            let value = u8::from(mu_mod2(&code, &seq, target, q)?);
            Ok(match format {
                Format::Text => format!("{value}\n"),
                Format::Json => pretty(&json!({ "seq": seq, "target": target, "q": q, "value": value })),
            }
            .into())
        }
        Command::Lk { input, format } => {
            let code = read_input(&input)?;
            let lk = code.linking_matrix();
            Ok(match format {
                Format::Text => lk.to_string(),
                Format::Json => pretty(&json!({ "name": code.name(), "matrix": lk.rows() })),
            }
            .into())
        }
        Command::Longitudes { input, q, format } => {
            let code = read_input(&input)?;
            let lon = longitudes(&code);
            let table = q.map(|q| eta_word(&code, q)).transpose()?;
            let rows: Vec<(usize, String, Option<String>)> = (1..=code.m())
                .map(|i| {
                    let l = lon.longitude(i);
                    let image = table.as_ref().map(|t| t.apply(&l).to_string());
                    (i, l.to_string(), image)
                })
                .collect();
            Ok(match format {
                Format::Text => {
                    let mut out = String::new();
                    for (i, l, image) in &rows {
                        let _ = write!(out, "lambda{i} = {l}");
                        if let (Some(img), Some(q)) = (image, q) {
                            let _ = write!(out, "\n  eta{q}(lambda{i}) = {img}");
                        }
                        out.push('\n');
                    }
                    out
                }
                Format::Json => {
                    let comps: Vec<_> = rows
                        .iter()
                        .map(|(i, l, image)| match image {
                            Some(img) => json!({ "i": i, "longitude": l, "image": img }),
                            None => json!({ "i": i, "longitude": l }),
                        })
                        .collect();
                    pretty(&json!({ "name": code.name(), "q": q, "components": comps }))
                }
            }
            .into())
        }
        Command::Expand { word, m, degree, format } => {
            let w: Word<Meridian> = word.parse()?;
            let m = m.unwrap_or_else(|| w.syllables().iter().map(|(g, _)| g.index()).max().unwrap_or(1));
            let series = expand_word(&w, m, degree)?;
            Ok(match format {
                Format::Text => format!("{series}\n"),
                Format::Json => {
                    let terms: Vec<String> = series.monomials().map(|mono| mono.to_string()).collect();
                    pretty(&json!({ "m": m, "degree": degree, "series": series.to_string(), "terms": terms }))
                }
            }
            .into())
        }
        Command::Catalog { action: CatalogAction::List { format } } => {
            let entries = catalog::list()
                .into_iter()
                .map(|n| catalog::get(&n))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match format {
                Format::Text => {
                    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
                    entries
                        .iter()
                        .map(|e| format!("{:width$}  {}\n", e.name, e.expected))
                        .collect()
                }
                Format::Json => {
                    let v: Vec<_> = entries
                        .iter()
                        .map(|e| {
                            json!({
                                "name": e.name,
                                "m": e.code.m(),
                                "provenance": e.provenance,
                                "expected": e.expected.to_string(),
                            })
                        })
                        .collect();
                    pretty(&json!(v))
                }
            }
            .into())
        }
        Command::Catalog { action: CatalogAction::Show { name } } => {
            let e = catalog::get(&name)?;
            Ok(format!("{}\n", to_json(&e.code)).into())
        }
        Command::ImportGauss { file, name } => {
            let text = read_text(file.as_ref())?;
            let code = import_gauss(&name, &text)?;
            Ok(format!("{}\n", to_json(&code)).into())
        }
        Command::Selftest { trials, m, seed, format } => {
            if m < 2 {
                return Err(Failure::new(EXIT_PRECONDITION, "selftest needs --m at least 2"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let summary = relator_conditions_selftest(trials, m, &mut rng, Exec::default())?;
            let stdout = match format {
                Format::Text => {
                    let mut out = format!(
                        "relator self-test: {} trials, m = {m}, seed = {seed}: {} failures\n",
                        summary.trials,
                        summary.failures.len()
                    );
                    for f in &summary.failures {
                        let _ = writeln!(out, "  trial {}: {} [{}]", f.trial, f.reason, f.word);
                    }
                    out
                }
                Format::Json => {
                    let failures: Vec<_> = summary
                        .failures
                        .iter()
                        .map(|f| json!({ "trial": f.trial, "word": f.word, "reason": f.reason }))
                        .collect();
                    pretty(&json!({
                        "trials": summary.trials, "m": m, "seed": seed,
                        "passed": summary.passed(), "failures": failures,
                    }))
                }
            };
            let code = if summary.passed() { 0 } else { EXIT_SELFTEST_FAILED };
            Ok(Outcome { stdout, code })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
