use std::io::{self, Read};
use std::process::ExitCode;

use braidforge::decomposition::{parse_normal_form, DEFAULT_BUDGET};
use braidforge::equivalence::{decide, Bounds, DEFAULT_MAX_NODES};
use braidforge::fusing_algebra::to_pure_times_coset;
use braidforge::symmetric_group::coset_map;
use braidforge::{derive_pure_relations, normal_form, parse_word, permutation_of, rewrite_r, suite, Error};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "braidforge", version, about = "Word problems in virtual singular braid groups")]
struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Strands {
    /// Number of strands.
    #[arg(short = 'n', required = true)]
    n: usize,
}

#[derive(Args)]
struct OracleFlags {
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: usize,
    /// Defaults to |u·v⁻¹| + 4.
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation image of a word.
    Pi {
        #[command(flatten)]
        strands: Strands,
        word: String,
    },
    /// Coset representative of a word.
    Coset {
        #[command(flatten)]
        strands: Strands,
        word: String,
    },
    /// Split a word into a pure fusing word times a coset representative.
    ToPure {
        #[command(flatten)]
        strands: Strands,
        word: String,
    },
    /// Rewrite a pure word into fusing generators.
    Rewrite {
        #[command(flatten)]
        strands: Strands,
        word: String,
    },
    /// Pure relations obtained by rewriting every conjugated relator.
    DeriveRelations {
        #[command(flatten)]
        strands: Strands,
        /// Omit literally trivial pairs.
        #[arg(long)]
        nontrivial: bool,
    },
    /// Layered normal form.
    NormalForm {
        #[command(flatten)]
        strands: Strands,
        word: String,
        #[arg(long, env = "BRAIDFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Standard word from a layered normal form (read from stdin when omitted).
    Recompose {
        #[command(flatten)]
        strands: Strands,
        form: Option<String>,
    },
    /// Bounded equivalence check.
    Decide {
        #[command(flatten)]
        strands: Strands,
        u: String,
        v: String,
        #[command(flatten)]
        oracle: OracleFlags,
    },
    /// Run the acceptance criteria.
    VerifySuite {
        /// Run a single criterion.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        criterion: Option<u8>,
    },
}

enum Failure {
    Domain(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceBound { .. } => Failure::Resource(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn emit(json: bool, text: String, value: Value) {
    if json {
        let mut v = value;
        v["schema"] = json!(1);
        println!("{v}");
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let j = cli.json;
    match cli.command {
        Command::Pi { strands, word } => {
            let w = parse_word(&word, strands.n).map_err(Error::from)?;
            let p = permutation_of(&w);
            emit(j, p.to_string(), json!({ "permutation": p.to_string(), "images": p.images() }));
        }
        Command::Coset { strands, word } => {
            let w = parse_word(&word, strands.n).map_err(Error::from)?;
            let c = coset_map(&w)?;
            emit(j, c.to_string(), json!({ "coset": c.to_string() }));
        }
        Command::ToPure { strands, word } => {
            let w = parse_word(&word, strands.n).map_err(Error::from)?;
            let d = to_pure_times_coset(&w)?;
            emit(
                j,
                format!("pure: {}\ncoset: {}", d.pure, d.coset),
                json!({ "pure": d.pure.to_string(), "coset": d.coset.to_string() }),
            );
        }
        Command::Rewrite { strands, word } => {
            let w = parse_word(&word, strands.n).map_err(Error::from)?;
            let r = rewrite_r(&w)?;
            emit(j, r.to_string(), json!({ "rewrite": r.to_string() }));
        }
        Command::DeriveRelations { strands, nontrivial } => {
            let derived = derive_pure_relations(strands.n)?;
            let kept: Vec<_> = derived.iter().filter(|d| !(nontrivial && d.trivial)).collect();
            let text = kept
                .iter()
                .map(|d| {
                    let tag = if d.trivial { " (trivial)" } else { "" };
                    format!("{} | {} | {} = {}{tag}", d.source, d.coset, d.lhs, d.rhs)
                })
                .collect::<Vec<_>>()
                .join("\n");
            let records: Vec<Value> = kept
                .iter()
                .map(|d| {
                    json!({
                        "family": d.source.family,
                        "relation": d.source.to_string(),
                        "coset": d.coset.to_string(),
                        "lhs": d.lhs.to_string(),
                        "rhs": d.rhs.to_string(),
                        "trivial": d.trivial,
                    })
                })
                .collect();
            emit(j, text, json!({ "relations": records }));
        }
        Command::NormalForm { strands, word, budget } => {
            let w = parse_word(&word, strands.n).map_err(Error::from)?;
            match normal_form(&w, budget) {
                Ok(nf) => emit(j, nf.to_string(), json!({ "normal_form": nf, "text": nf.to_string() })),
                Err(Error::ResourceBound { budget, partial }) => {
                    emit(j, partial.to_string(), json!({ "partial": *partial, "budget": budget }));
                    return Err(Failure::Resource(format!("rewrite step budget of {budget} exceeded")));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Recompose { strands, form } => {
            let text = match form {
                Some(t) => t,
                None => {
                    let mut buf = String::new();
                    io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Domain(e.to_string()))?;
                    buf
                }
            };
            let nf = parse_normal_form(&text, strands.n)?;
            let w = nf.recompose();
            emit(j, w.to_string(), json!({ "word": w.to_string() }));
        }
        Command::Decide { strands, u, v, oracle } => {
            let u = parse_word(&u, strands.n).map_err(Error::from)?;
            let v = parse_word(&v, strands.n).map_err(Error::from)?;
            let bounds = Bounds { max_len: oracle.max_len, max_nodes: oracle.max_nodes };
            let verdict = decide(&u, &v, &bounds);
            let value = serde_json::to_value(&verdict).expect("verdict serializes");
            emit(true, String::new(), value);
        }
        Command::VerifySuite { criterion } => {
            let reports = match criterion {
                Some(c) => suite::run_criterion(c).into_iter().collect(),
                None => suite::run_all(),
            };
            let ok = reports.iter().all(|r| r.passed);
            let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            emit(j, text, json!({ "criteria": reports, "passed": ok }));
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
