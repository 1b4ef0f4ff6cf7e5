use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use revfree_core::avoidance::{self, AvoidanceQuery};
use revfree_core::claims::{self, ClaimInputs, Status};
use revfree_core::search::{self, SearchOptions, SearchReport};
use revfree_core::text::render_word_list;
use revfree_core::{Builtin, Error, FactorSet, Morphism, StreamSpec, Word};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "revfree", version, about = "Words avoiding reversed subwords")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WordArgs {
    /// Word as a string of digits
    #[arg(long)]
    word: String,
    /// Alphabet size
    #[arg(short = 's', long = "alphabet", default_value_t = 5)]
    alphabet: usize,
}

#[derive(Args)]
struct QueryArgs {
    /// Minimum length of subwords whose reversal must not occur
    #[arg(short = 'k', long = "k")]
    k: usize,
    /// Also require the word to be squarefree
    #[arg(long)]
    squarefree: bool,
}

impl QueryArgs {
    fn query(&self) -> Result<AvoidanceQuery, Error> {
        AvoidanceQuery::new(self.k, self.squarefree)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a word; exit 0 when valid, 1 on a conflict
    Check {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print the length-n factors of a word
    Factors {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        json: bool,
    },
    /// Depth-first search for the longest valid word, printed as JSON
    Search {
        #[arg(short = 's', long = "alphabet")]
        alphabet: usize,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        /// Search depth-two subtrees in parallel
        #[arg(long)]
        parallel: bool,
        /// Restrict to words with letters in first-occurrence order
        #[arg(long)]
        symmetry: bool,
    },
    /// List every valid word of a given length
    Enumerate {
        #[arg(short = 's', long = "alphabet")]
        alphabet: usize,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        json: bool,
    },
    /// Morphism operations
    Morphic {
        #[command(subcommand)]
        op: MorphicOp,
    },
    /// Match a binary prefix against y'y^ω with y a rotation of 001011 or 110100
    MatchPeriodic {
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Re-run the eight reproduced claims; exit 1 if any fails
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Run a single claim, e.g. T6
        #[arg(long)]
        only: Option<String>,
        /// Replacement for 0 -> 0012, 1 -> 0112
        #[arg(long, value_name = "FILE")]
        h2: Option<PathBuf>,
        /// Replacement for 0 -> 0001011, 1 -> 0010111
        #[arg(long, value_name = "FILE")]
        h6: Option<PathBuf>,
        /// Replacement for 0 -> 012, 1 -> 013, 2 -> 014
        #[arg(long, value_name = "FILE")]
        h8: Option<PathBuf>,
    },
}

#[derive(Args)]
struct MorphismArg {
    /// Morphism file with `c -> image` lines
    #[arg(long, value_name = "FILE")]
    morphism: PathBuf,
}

#[derive(Subcommand)]
enum MorphicOp {
    /// Image of a word
    Apply {
        #[command(flatten)]
        morphism: MorphismArg,
        #[arg(long)]
        word: String,
    },
    /// Prefix of an infinite word, optionally through a morphism
    Stream {
        #[arg(long, value_name = "FILE")]
        morphism: Option<PathBuf>,
        /// Builtin inner word: thue-squarefree-ternary or nonperiodic-binary
        #[arg(long, conflicts_with = "period")]
        builtin: Option<String>,
        /// Inner word preamble·period^ω instead of a builtin
        #[arg(long)]
        period: Option<String>,
        #[arg(long, default_value = "")]
        preamble: String,
        /// Alphabet of --period/--preamble
        #[arg(short = 's', long = "alphabet", default_value_t = 2)]
        alphabet: usize,
        #[arg(long)]
        length: usize,
    },
    /// Factors of length k of the images of all length-m words
    FactorSet {
        #[command(flatten)]
        morphism: MorphismArg,
        #[arg(short = 'k', long = "k")]
        k: usize,
        #[arg(long, default_value_t = 2)]
        universe_length: usize,
        /// Only squarefree preimages
        #[arg(long)]
        squarefree_universe: bool,
        #[arg(long)]
        json: bool,
    },
    /// Where does a marker occur inside images of letter pairs
    Marker {
        #[command(flatten)]
        morphism: MorphismArg,
        #[arg(long)]
        marker: String,
    },
    /// Images of the 12 squarefree ternary words of length 3
    SquarefreeTest {
        #[command(flatten)]
        morphism: MorphismArg,
    },
    /// Split a word into image blocks of a uniform morphism
    Decode {
        #[command(flatten)]
        morphism: MorphismArg,
        #[arg(long)]
        word: String,
    },
}

fn load_morphism(path: &Path) -> Result<Morphism, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    text.parse()
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Check { word, query, json } => {
            let w = Word::parse(&word.word, word.alphabet)?;
            let q = query.query()?;
            let verdict = avoidance::check(&w, &q);
            if json {
                print_json(&json!({
                    "version": revfree_core::VERSION,
                    "query": { "alphabet": word.alphabet, "k": q.k, "squarefree": q.require_squarefree },
                    "word": w,
                    "valid": verdict.is_ok(),
                    "violation": verdict.as_ref().err(),
                }));
            } else {
                match &verdict {
                    Ok(()) => println!("valid"),
                    Err(v) => println!("invalid: {v}"),
                }
            }
            Ok(status(verdict.is_ok()))
        }
        Command::Factors { word, length, json } => {
            let w = Word::parse(&word.word, word.alphabet)?;
            let set = w.factors(length)?;
            if json {
                print_json(&json!({
                    "word": w,
                    "length": length,
                    "factors": set,
                    "reversal_conflict": avoidance::has_reversal_conflict(&set),
                }));
            } else {
                print!("{}", render_word_list(word.alphabet, set.iter()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { alphabet, query, cap, parallel, symmetry } => {
            let options = SearchOptions { parallel, symmetry_pruning: symmetry };
            let report = SearchReport::run(alphabet, &query.query()?, cap, options)?;
            print_json(&report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { alphabet, query, length, json } => {
            let words = search::enumerate_valid(alphabet, &query.query()?, length)?;
            if json {
                print_json(&json!({ "alphabet": alphabet, "length": length, "count": words.len(), "words": words }));
            } else {
                print!("{}", render_word_list(alphabet, &words));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Morphic { op } => run_morphic(op),
        Command::MatchPeriodic { word, json } => {
            let prefix = Word::parse(&word, 2)?;
            let periods: Vec<Word> = search::rotation_class(&Word::parse("001011", 2)?)?
                .into_iter()
                .collect();
            let found = search::match_ultimately_periodic(&prefix, &periods, &search::standard_preambles())?;
            if json {
                print_json(&json!({
                    "prefix": prefix,
                    "matched": found.is_some(),
                    "preamble": found.as_ref().map(|(p, _)| p),
                    "period": found.as_ref().map(|(_, y)| y),
                }));
            } else {
                match &found {
                    Some((p, y)) => println!("preamble={p} period={y}"),
                    None => println!("no match"),
                }
            }
            Ok(status(found.is_some()))
        }
        Command::VerifyPaper { json, only, h2, h6, h8 } => {
            let mut inputs = ClaimInputs::default();
            if let Some(path) = h2 {
                inputs.h2 = load_morphism(&path)?;
            }
            if let Some(path) = h6 {
                inputs.h6 = load_morphism(&path)?;
            }
            if let Some(path) = h8 {
                inputs.h8 = load_morphism(&path)?;
            }
            let report = match only {
                Some(id) => {
                    let entry = claims::run_claim(&id, &inputs)?
                        .ok_or_else(|| Error::Parse(format!("unknown claim {id:?}")))?;
                    let passed = usize::from(entry.status == Status::Pass);
                    claims::ClaimReport {
                        version: revfree_core::VERSION.to_string(),
                        entries: vec![entry],
                        passed,
                        total: 1,
                    }
                }
                None => claims::verify_all(&inputs)?,
            };
            if json {
                print_json(&report);
            } else {
                for entry in &report.entries {
                    let mark = match entry.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                    };
                    println!("{} {mark} ({} ms) {}", entry.id, entry.wall_time_ms, entry.claim);
                }
                println!("{}/{} passed", report.passed, report.total);
            }
            Ok(status(report.all_passed()))
        }
    }
}

fn run_morphic(op: MorphicOp) -> Result<ExitCode, Error> {
    match op {
        MorphicOp::Apply { morphism, word } => {
            let h = load_morphism(&morphism.morphism)?;
            let w = Word::parse(&word, h.domain_size())?;
            println!("{}", h.apply(&w)?);
            Ok(ExitCode::SUCCESS)
        }
        MorphicOp::Stream { morphism, builtin, period, preamble, alphabet, length } => {
            let inner = match (builtin, period) {
                (Some(name), None) => StreamSpec::Builtin(name.parse::<Builtin>()?),
                (None, Some(period)) => StreamSpec::periodic(
                    Word::parse(&preamble, alphabet)?,
                    Word::parse(&period, alphabet)?,
                )?,
                _ => return Err(Error::Parse("give exactly one of --builtin or --period".into())),
            };
            let spec = match morphism {
                Some(path) => StreamSpec::morphic_image(load_morphism(&path)?, inner)?,
                None => inner,
            };
            println!("{}", spec.prefix(length));
            Ok(ExitCode::SUCCESS)
        }
        MorphicOp::FactorSet { morphism, k, universe_length, squarefree_universe, json } => {
            let h = load_morphism(&morphism.morphism)?;
            let universe = FactorSet::universe(h.domain_size(), universe_length)?;
            let universe = if squarefree_universe {
                FactorSet::new(universe_length, universe.iter().filter(|u| u.is_squarefree()).cloned())?
            } else {
                universe
            };
            let set = h.image_factor_set(k, &universe)?;
            let conflict = avoidance::has_reversal_conflict(&set);
            if json {
                print_json(&json!({ "k": k, "factors": set, "reversal_conflict": conflict }));
            } else {
                print!("{}", render_word_list(h.codomain_size(), set.iter()));
                eprintln!("reversal conflict: {conflict}");
            }
            Ok(status(!conflict))
        }
        MorphicOp::Marker { morphism, marker } => {
            let h = load_morphism(&morphism.morphism)?;
            let report = h.marker_sync_check(&Word::parse(&marker, h.codomain_size())?)?;
            print_json(&report);
            Ok(status(report.synchronized))
        }
        MorphicOp::SquarefreeTest { morphism } => {
            let h = load_morphism(&morphism.morphism)?;
            let report = h.squarefree_morphism_test()?;
            print_json(&report);
            Ok(status(report.passed()))
        }
        MorphicOp::Decode { morphism, word } => {
            let h = load_morphism(&morphism.morphism)?;
            let y = Word::parse(&word, h.codomain_size())?;
            match h.decode_blocks(&y) {
                Some(u) => {
                    println!("{u}");
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not an image");
                    Ok(ExitCode::from(EXIT_FAIL))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
