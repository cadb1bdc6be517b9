use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use rookpart::algebra::{check_cocycle, verify_twisted_relations, AlgebraError, CocycleMode};
use rookpart::congruence::{verify_presentation, CongruenceError, Strategy, VerifyOptions};
use rookpart::enumeration::{
    closure, closure_of_tokens, search_generating_sets, EnumerationError, MonoidTable, SEARCH_LIMIT,
};
use rookpart::normal_form::{decompose, factor_bgd, factor_rook, NormalFormError};
use rookpart::presentation::{check_soundness, PresentationError};
use rookpart::report::{run_suite, ReportError, ReportOptions};
use rookpart::words::{atomic, evaluate_with_twist, token_in_range, WordError};
use rookpart::{
    instantiate, AlgebraElementZ, Alphabet, DiagramError, Presentation, Preset, RookPartition, Token, Word,
};

#[derive(Parser)]
#[command(
    name = "rookpart",
    version,
    about = "Rook partition monoids: arithmetic, presentations and checks"
)]
struct Cli {
    /// Degree.
    #[arg(short = 'n', global = true)]
    n: Option<usize>,
    /// Resource cap (closure size, coset classes or search subsets).
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Felsch,
    Hlt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MonoidArg {
    #[value(name = "RPn")]
    Rpn,
    #[value(name = "RPn-singular")]
    RpnSingular,
    #[value(name = "Pn")]
    Pn,
    #[value(name = "In")]
    In,
    #[value(name = "Jn")]
    Jn,
    #[value(name = "Rn")]
    Rn,
    #[value(name = "Sn")]
    Sn,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Export {
    Elements,
    Cayley,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word to its diagram.
    Eval { word: String },
    /// Multiply two diagram literals.
    Mult { left: String, right: String },
    /// Rank, domain, codomain, kernel, cokernel and support.
    Stats { diagram: String },
    /// Membership in the distinguished submonoids.
    Classify { diagram: String },
    /// Split off rook dots, then factor the rook-free core.
    Factor { diagram: String },
    /// A word evaluating to the diagram.
    Decompose { diagram: String },
    /// Generate a monoid and print its size.
    Enumerate {
        #[arg(long, value_enum, default_value = "RPn")]
        monoid: MonoidArg,
        #[arg(long, value_enum)]
        export: Option<Export>,
    },
    /// Check soundness and completeness of a presentation.
    Verify {
        #[arg(long, conflicts_with = "presentation")]
        preset: Option<String>,
        /// Presentation file: a `kind=monoid; alphabet=s1,e1; n=2` header, then `rel: u = v` lines.
        #[arg(long)]
        presentation: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Felsch)]
        strategy: StrategyArg,
    },
    /// Search for a generating set of a given size.
    RankSearch {
        #[arg(long, value_enum, default_value = "RPn-singular")]
        monoid: MonoidArg,
        #[arg(short = 'k', long)]
        size: usize,
    },
    /// Check the cocycle identity of the twist count.
    Cocycle {
        /// Sample this many triples instead of checking all of them.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Multiply two algebra elements `<poly> * (<diagram>) + ...`.
    AlgebraMult {
        left: String,
        right: String,
        /// Also substitute this integer for d.
        #[arg(long)]
        delta: Option<i64>,
    },
    /// Run the certification suite.
    Report {
        /// Degrees to cover, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        degrees: Vec<usize>,
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Usage(e.to_string())
            }
        }
    )*};
}
usage_from!(
    DiagramError,
    WordError,
    PresentationError,
    AlgebraError,
    NormalFormError,
    serde_json::Error
);

impl From<EnumerationError> for CliError {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::CapExceeded { .. } | EnumerationError::SearchTooLarge { .. } => {
                CliError::Cap(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CongruenceError> for CliError {
    fn from(e: CongruenceError) -> Self {
        match e {
            CongruenceError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            CongruenceError::Enumeration(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Io(io) => CliError::Io(io),
            ReportError::Congruence(c) => c.into(),
            ReportError::Enumeration(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Text and JSON renderings of one command result; `ok = false` maps to exit 1.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome {
            text: text.into(),
            json,
            ok: true,
        }
    }
}

fn diagram(s: &str) -> Result<RookPartition, CliError> {
    Ok(s.parse()?)
}

fn degree(cli: &Cli) -> Result<usize, CliError> {
    cli.n.ok_or_else(|| CliError::Usage("this command needs -n".into()))
}

fn monoid_tokens(monoid: MonoidArg, n: usize) -> (Vec<Token>, bool) {
    let units = (1..n).map(Token::S);
    let extra: Vec<Token> = match monoid {
        MonoidArg::Rpn => return (Alphabet::Seqo.generators(n), true),
        MonoidArg::RpnSingular => return (Alphabet::Eto.generators(n), false),
        MonoidArg::Pn => vec![Token::E(1), Token::Q(1)],
        MonoidArg::In => vec![Token::E(1)],
        MonoidArg::Jn => vec![Token::Q(1)],
        MonoidArg::Rn => vec![Token::O(1)],
        MonoidArg::Sn => vec![],
    };
    let tokens = units.chain(extra).filter(|&t| token_in_range(t, n)).collect();
    (tokens, true)
}

/// `J_n` needs a block bijection with unequal block sizes besides `S_n` and
/// `t_12`: blocks `{1,2,1'}` and `{3,2',3'}`, lines elsewhere.
fn uneven_block_bijection(n: usize) -> Result<RookPartition, CliError> {
    let lines: String = (4..=n).map(|i| format!("; {i},{i}'")).collect();
    diagram(&format!("n={n}; 1,2,1'; 3,2',3'{lines}"))
}

fn build_monoid(monoid: MonoidArg, n: usize, cap: Option<usize>) -> Result<MonoidTable, CliError> {
    let (tokens, monoid_kind) = monoid_tokens(monoid, n);
    let cap = cap.unwrap_or(usize::MAX);
    if monoid == MonoidArg::Jn && n >= 3 {
        let mut gens = tokens.iter().map(|&t| atomic(n, t)).collect::<Result<Vec<_>, _>>()?;
        gens.push(uneven_block_bijection(n)?);
        return Ok(closure(n, &gens, true, cap)?);
    }
    if tokens.is_empty() {
        // only the identity remains, e.g. S_1
        return Ok(closure(n, &[RookPartition::identity(n)], true, cap)?);
    }
    Ok(closure_of_tokens(n, &tokens, monoid_kind, cap)?)
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Eval { word } => {
            let n = degree(cli)?;
            let w = Word::parse_any(word)?;
            let (d, twist) = evaluate_with_twist(n, &w)?;
            Ok(Outcome::ok(
                d.to_string(),
                json!({ "word": w.to_string(), "alphabet": w.alphabet().to_string(), "diagram": d.to_string(), "twist": twist }),
            ))
        }
        Command::Mult { left, right } => {
            let (a, b) = (diagram(left)?, diagram(right)?);
            let (ab, m) = a.compose(&b)?;
            Ok(Outcome::ok(
                format!("{ab}\nfloating components: {m}"),
                json!({ "product": ab.to_string(), "floating": m }),
            ))
        }
        Command::Stats { diagram: text } => {
            let d = diagram(text)?;
            let s = d.stats();
            let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let supp = s.supp.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            let text = format!(
                "rank={}\ndom={{{}}}\ncodom={{{}}}\nker={}\ncoker={}\nsupp={{{}}}",
                s.rank,
                list(&s.dom),
                list(&s.codom),
                s.ker,
                s.coker,
                supp
            );
            Ok(Outcome::ok(
                text,
                json!({
                    "rank": s.rank, "dom": s.dom, "codom": s.codom,
                    "ker": s.ker.to_string(), "coker": s.coker.to_string(), "supp": supp,
                }),
            ))
        }
        Command::Classify { diagram: text } => {
            let m = diagram(text)?.classify();
            Ok(Outcome::ok(
                m.to_string(),
                json!({
                    "P_n": m.partition, "I_n": m.symmetric_inverse, "J_n": m.dual_symmetric_inverse,
                    "S_n": m.symmetric, "R_n": m.rook, "singular": m.singular,
                }),
            ))
        }
        Command::Factor { diagram: text } => {
            let d = diagram(text)?;
            let rook = factor_rook(&d);
            let parts = factor_bgd(&rook.core)?;
            let set = |v: &[usize]| format!("{{{}}}", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            let text = format!(
                "P={}\nQ={}\ncore={}\nleft={}\nmiddle={}\nright={}",
                set(&rook.upper_rooks),
                set(&rook.lower_rooks),
                rook.core,
                parts.left,
                parts.middle,
                parts.right
            );
            Ok(Outcome::ok(
                text,
                json!({
                    "upper_rooks": rook.upper_rooks, "lower_rooks": rook.lower_rooks,
                    "core": rook.core.to_string(), "left": parts.left.to_string(),
                    "middle": parts.middle.to_string(), "right": parts.right.to_string(),
                }),
            ))
        }
        Command::Decompose { diagram: text } => {
            let d = diagram(text)?;
            let w = decompose(&d);
            Ok(Outcome::ok(
                w.to_string(),
                json!({ "word": w.to_string(), "alphabet": w.alphabet().to_string(), "length": w.len() }),
            ))
        }
        Command::Enumerate { monoid, export } => {
            let n = degree(cli)?;
            let table = build_monoid(*monoid, n, cli.cap)?;
            let text = match export {
                None => table.len().to_string(),
                Some(Export::Elements) => table.export_elements(),
                Some(Export::Cayley) => table.export_cayley(),
                Some(Export::Table) => {
                    let mul = table.multiplication_table();
                    mul.chunks(table.len().max(1))
                        .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("\n")
                }
            };
            let elements: Vec<String> = table.elements().iter().map(ToString::to_string).collect();
            let json = match export {
                None => json!({ "n": n, "size": table.len() }),
                Some(_) => json!({ "n": n, "size": table.len(), "elements": elements }),
            };
            Ok(Outcome::ok(text.trim_end().to_string(), json))
        }
        Command::Verify {
            preset,
            presentation,
            strategy,
        } => {
            let (p, twisted): (Presentation, Option<Preset>) = match (preset, presentation) {
                (Some(name), None) => {
                    let preset: Preset = name.parse()?;
                    (instantiate(preset, degree(cli)?)?, preset.twisted.then_some(preset))
                }
                (None, Some(path)) => (Presentation::parse_text(&fs::read_to_string(path)?, cli.n)?, None),
                _ => return Err(CliError::Usage("verify needs --preset or --presentation".into())),
            };
            let options = VerifyOptions {
                strategy: match strategy {
                    StrategyArg::Felsch => Strategy::Felsch,
                    StrategyArg::Hlt => Strategy::Hlt,
                },
                cap: cli.cap,
                twisted: false,
            };
            let mut report = verify_presentation(&p, &options)?;
            report.wall_time = None;
            let mut text = format!(
                "preset={} n={} sound={} complete={} abstract={} concrete={}",
                report.preset, report.n, report.sound, report.complete, report.abstract_size, report.concrete_size
            );
            for f in &report.relation_failures {
                text.push_str(&format!("\n  {f}"));
            }
            let mut ok = report.passed();
            let mut json = serde_json::to_value(&report)?;
            if let Some(preset) = twisted {
                let counts = check_soundness(&p, true)?;
                let algebra = verify_twisted_relations(preset, p.n)?;
                let twisted_ok = counts.sound() && algebra.passed();
                text.push_str(&format!(" twisted={twisted_ok}"));
                for f in &algebra.failures {
                    text.push_str(&format!("\n  {}: {} vs {}", f.relation, f.lhs, f.rhs));
                }
                ok &= twisted_ok;
                json["twisted"] = serde_json::to_value(&algebra)?;
            }
            Ok(Outcome { text, json, ok })
        }
        Command::RankSearch { monoid, size } => {
            let n = degree(cli)?;
            let table = build_monoid(*monoid, n, None)?;
            let limit = cli.cap.map_or(SEARCH_LIMIT, |c| c as u128);
            let found = search_generating_sets(&table, *size, limit)?;
            let names: Option<Vec<String>> = found.map(|g| g.iter().map(ToString::to_string).collect());
            let text = match &names {
                Some(g) => format!("generating set of size {size}:\n{}", g.join("\n")),
                None => format!("no generating set of size {size} among {} elements", table.len()),
            };
            Ok(Outcome::ok(
                text,
                json!({ "n": n, "size": size, "elements": table.len(), "witness": names }),
            ))
        }
        Command::Cocycle { samples } => {
            let n = degree(cli)?;
            let mode = match samples {
                Some(count) => CocycleMode::Sampled {
                    count: *count,
                    seed: cli.seed,
                },
                None => CocycleMode::Exhaustive,
            };
            let report = check_cocycle(n, mode);
            let mut text = format!(
                "n={} mode={} triples={} failures={}",
                report.n, report.mode, report.triples, report.failure_count
            );
            for f in &report.failures {
                text.push_str(&format!(
                    "\n  {} | {} | {}: {} vs {}",
                    f.triple[0], f.triple[1], f.triple[2], f.left, f.right
                ));
            }
            Ok(Outcome {
                text,
                json: serde_json::to_value(&report)?,
                ok: report.passed(),
            })
        }
        Command::AlgebraMult { left, right, delta } => {
            let a = AlgebraElementZ::parse(left, cli.n)?;
            let b = AlgebraElementZ::parse(right, cli.n.or(Some(a.degree())))?;
            let ab = a.star(&b)?;
            let mut text = ab.to_string();
            let mut json = json!({ "product": ab.to_string() });
            if let Some(x) = delta {
                let values: Vec<String> = ab.eval_delta(x).iter().map(|(d, c)| format!("{c} * ({d})")).collect();
                let joined = if values.is_empty() {
                    "0".to_string()
                } else {
                    values.join(" + ")
                };
                text.push_str(&format!("\nat d={x}: {joined}"));
                json["evaluated"] = Value::String(joined);
            }
            Ok(Outcome::ok(text, json))
        }
        Command::Report {
            degrees,
            timing,
            samples,
        } => {
            let options = ReportOptions {
                degrees: cli.n.map_or_else(|| degrees.clone(), |n| vec![n]),
                timing: *timing,
                seed: cli.seed,
                cocycle_samples: *samples,
                ..ReportOptions::default()
            };
            let report = run_suite(&options)?;
            Ok(Outcome {
                text: report.to_text().trim_end().to_string(),
                json: serde_json::to_value(&report)?,
                ok: report.passed(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        let body = match cli.format {
            Format::Text => outcome.text.clone() + "\n",
            Format::Json => serde_json::to_string_pretty(&outcome.json)? + "\n",
        };
        match &cli.out {
            Some(path) => fs::write(path, body)?,
            None => print!("{body}"),
        }
        Ok(outcome.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Cap(_) => 3,
                _ => 2,
            })
        }
    }
}
