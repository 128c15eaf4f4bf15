//! `displace`: proof search, checking and structural-term tools for the
//! displacement calculus.
//!
//! Exit codes: 0 success, 1 negative answer (unprovable, inequivalent,
//! invalid derivation, no reading), 2 input error, 3 occurrence not extractable.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use displace_core::hd::{self, HDerivation, HSequent, Prover};
use displace_core::lexicon::Lexicon;
use displace_core::md::{self, MDerivation, MSequent};
use displace_core::serial;
use displace_core::syntax::{display_tokens, parse_config, parse_hsequent, parse_msequent, parse_term, HyperConfig, Signature};
use displace_core::term::{self, parse_path, path_to_string, RewriteTrace};

#[derive(Parser)]
#[command(name = "displace", version, about = "Displacement calculus workbench")]
struct Cli {
    /// Signature file of `name<TAB>sort` lines.
    #[arg(long, global = true)]
    sig: Option<PathBuf>,
    /// Extra atom declaration `name:sort`; repeatable.
    #[arg(long = "declare", short = 'd', global = true, value_name = "NAME:SORT")]
    declare: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    out: Format,
    /// Cap on the number of proofs enumerated.
    #[arg(long, global = true, default_value_t = 16)]
    limit: usize,
    /// Cap on rewrite steps when normalizing or lifting.
    #[arg(long, global = true, default_value_t = term::DEFAULT_BUDGET)]
    budget: usize,
    /// Seed for the randomized uniqueness check of `extract`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Calculus {
    Hd,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a cut-free proof.
    Prove {
        calculus: Calculus,
        sequent: String,
        /// Enumerate up to `--limit` proofs (hypersequent calculus only).
        #[arg(long)]
        all: bool,
    },
    /// Translate a structural term to its hyperconfiguration.
    Sharp { term: String },
    /// The canonical structural term of a hyperconfiguration.
    Termof { config: String },
    /// Whether two terms are interderivable by the structural rules.
    Equiv { left: String, right: String },
    /// Bring the type leaf at PATH (0 = left, 1 = right) to the outside.
    Extract {
        term: String,
        path: String,
        /// Also re-extract from this many rewritten variants.
        #[arg(long, default_value_t = 0)]
        trials: usize,
    },
    /// Rewrite a term to the canonical term of its translation.
    Normalize { term: String },
    /// Verify a derivation file.
    Check { calculus: Calculus, file: PathBuf },
    /// Parse a sentence with a lexicon by searching for proofs of TARGET.
    Parse {
        lexicon: PathBuf,
        /// Space-separated words, or with `--config` an explicit antecedent.
        sentence: String,
        target: String,
        /// Read SENTENCE as a hyperconfiguration over the lexicon's signature.
        #[arg(long)]
        config: bool,
    },
}

/// Result of a command: an exit code, or an input error (exit 2).
type Outcome = Result<u8, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn signature(cli: &Cli) -> Result<Signature, String> {
    let mut sig = match &cli.sig {
        Some(p) => Signature::parse(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?,
        None => Signature::new(),
    };
    for d in &cli.declare {
        let (name, sort) = d.split_once(':').ok_or_else(|| format!("bad declaration `{d}`, expected NAME:SORT"))?;
        let sort: usize = sort.trim().parse().map_err(|_| format!("bad sort in `{d}`"))?;
        sig.declare(name.trim(), sort).map_err(|e| e.to_string())?;
    }
    Ok(sig)
}

fn show_config(c: &HyperConfig) -> String {
    if c.is_empty() {
        "Lambda".into()
    } else {
        display_tokens(&c.flatten())
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn emit_hd(cli: &Cli, d: &HDerivation) -> String {
    match cli.out {
        Format::Json => pretty(&serial::hd_to_json(d)),
        Format::Latex => serial::hd_to_latex(d),
        Format::Text => serial::hd_to_text(d),
    }
}

fn emit_md(cli: &Cli, d: &MDerivation) -> String {
    match cli.out {
        Format::Json => pretty(&serial::md_to_json(d)),
        Format::Latex => serial::md_to_latex(d),
        Format::Text => serial::md_to_text(d),
    }
}

fn emit_trace(cli: &Cli, t: &RewriteTrace) -> String {
    match cli.out {
        Format::Json => pretty(&serial::trace_to_json(t)),
        _ => serial::trace_to_text(t),
    }
}

fn print(s: &str) {
    if s.ends_with('\n') {
        print!("{s}");
    } else {
        println!("{s}");
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Prove { calculus, sequent, all } => prove(cli, *calculus, sequent, *all),
        Command::Sharp { term } => {
            let t = parse_term(term, &signature(cli)?).map_err(|e| e.to_string())?;
            let c = term::sharp(&t);
            match cli.out {
                Format::Json => print(&pretty(&json!(show_config(&c)))),
                _ => print(&show_config(&c)),
            }
            Ok(0)
        }
        Command::Termof { config } => {
            let c = parse_config(config, &signature(cli)?).map_err(|e| e.to_string())?;
            let t = term::term_of_config(&c);
            match cli.out {
                Format::Json => print(&pretty(&json!(t.to_string()))),
                _ => print(&t.to_string()),
            }
            Ok(0)
        }
        Command::Equiv { left, right } => {
            let sig = signature(cli)?;
            let l = parse_term(left, &sig).map_err(|e| e.to_string())?;
            let r = parse_term(right, &sig).map_err(|e| e.to_string())?;
            let same = term::equiv(&l, &r);
            print(&same.to_string());
            Ok(if same { 0 } else { 1 })
        }
        Command::Extract { term: src, path, trials } => {
            let t = parse_term(src, &signature(cli)?).map_err(|e| e.to_string())?;
            let p = parse_path(path).ok_or_else(|| format!("bad path `{path}`, expected 0/1 digits"))?;
            let index = match term::extractable(&t, &p) {
                Err(e) => return Err(e.to_string()),
                Ok(None) => {
                    eprintln!("error: the leaf at {} is not extractable", path_to_string(&p));
                    return Ok(3);
                }
                Ok(Some(i)) => i,
            };
            let e = term::extract(&t, &p).map_err(|e| e.to_string())?;
            debug_assert_eq!(e.index, index);
            let unique = (*trials > 0).then(|| term::uniqueness_check_seeded(&t, &p, *trials, cli.seed));
            match cli.out {
                Format::Json => {
                    let mut v = json!({ "index": e.index, "rest": e.rest.to_string(), "trace": serial::trace_to_json(&e.trace) });
                    if let Some(u) = unique {
                        v["unique"] = json!(u);
                    }
                    print(&pretty(&v));
                }
                _ => {
                    print(&serial::trace_to_text(&e.trace));
                    println!("index {}, rest {}", e.index, e.rest);
                    if let Some(u) = unique {
                        println!("unique over {trials} trials: {u}");
                    }
                }
            }
            Ok(if unique == Some(false) { 1 } else { 0 })
        }
        Command::Normalize { term: src } => {
            let t = parse_term(src, &signature(cli)?).map_err(|e| e.to_string())?;
            let tr = term::normalize_with_budget(&t, cli.budget).map_err(|e| e.to_string())?;
            print(&emit_trace(cli, &tr));
            Ok(0)
        }
        Command::Check { calculus, file } => {
            let sig = signature(cli)?;
            let src = read(file)?;
            let verdict = match calculus {
                Calculus::Hd => hd::check(&serial::hd_from_json(&src, Some(&sig)).map_err(|e| e.to_string())?),
                Calculus::Md => md::check_m(&serial::md_from_json(&src, Some(&sig)).map_err(|e| e.to_string())?),
            };
            match verdict {
                Ok(()) => {
                    print("ok");
                    Ok(0)
                }
                Err(e) => {
                    print(&format!("invalid: {e}"));
                    Ok(1)
                }
            }
        }
        Command::Parse { lexicon, sentence, target, config } => parse(cli, lexicon, sentence, target, *config),
    }
}

fn prove(cli: &Cli, calculus: Calculus, src: &str, all: bool) -> Outcome {
    let sig = signature(cli)?;
    match calculus {
        Calculus::Hd => {
            let (g, t) = parse_hsequent(src, &sig).map_err(|e| e.to_string())?;
            let s = HSequent::new(g, t).map_err(|e| e.to_string())?;
            let proofs = if all { hd::prove_all(&s, cli.limit) } else { hd::prove(&s).into_iter().collect() };
            if proofs.is_empty() {
                print("not provable");
                return Ok(1);
            }
            if all && cli.out == Format::Json {
                print(&pretty(&Value::Array(proofs.iter().map(serial::hd_to_json).collect())));
            } else {
                for d in &proofs {
                    print(&emit_hd(cli, d));
                }
            }
            Ok(0)
        }
        Calculus::Md => {
            if all {
                return Err("--all is only available for the hypersequent calculus".into());
            }
            let (x, t) = parse_msequent(src, &sig).map_err(|e| e.to_string())?;
            let s = MSequent::new(x, t).map_err(|e| e.to_string())?;
            match md::prove_m_with_budget(&s, cli.budget) {
                Some(d) => {
                    print(&emit_md(cli, &d));
                    Ok(0)
                }
                None => {
                    print("not provable");
                    Ok(1)
                }
            }
        }
    }
}

fn parse(cli: &Cli, lexicon: &PathBuf, sentence: &str, target: &str, config: bool) -> Outcome {
    let lex = Lexicon::parse(&read(lexicon)?).map_err(|e| format!("{}: {e}", lexicon.display()))?;
    let goal = displace_core::syntax::parse_type(target, &lex.signature).map_err(|e| e.to_string())?;
    let readings: Vec<(Vec<String>, Vec<HDerivation>)> = if config {
        let ante = parse_config(sentence, &lex.signature).map_err(|e| e.to_string())?;
        let s = HSequent::new(ante, goal).map_err(|e| e.to_string())?;
        let proofs = Prover::new().prove_all(&s, cli.limit);
        if proofs.is_empty() {
            Vec::new()
        } else {
            vec![(Vec::new(), proofs)]
        }
    } else {
        let words: Vec<&str> = sentence.split_whitespace().collect();
        lex.readings(&words, &goal, cli.limit)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|r| (r.types.iter().map(ToString::to_string).collect(), r.proofs))
            .collect()
    };
    let total: usize = readings.iter().map(|(_, p)| p.len()).sum();
    match cli.out {
        Format::Json => {
            let v = json!({
                "readings": total,
                "assignments": readings.iter().map(|(types, proofs)| json!({
                    "types": types,
                    "proofs": proofs.iter().map(serial::hd_to_json).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            print(&pretty(&v));
        }
        _ => {
            println!("{total} reading{}", if total == 1 { "" } else { "s" });
            for (types, proofs) in &readings {
                if !types.is_empty() {
                    println!("types: {}", types.join(", "));
                }
                for d in proofs {
                    print(&emit_hd(cli, d));
                }
            }
        }
    }
    Ok(if total > 0 { 0 } else { 1 })
}
