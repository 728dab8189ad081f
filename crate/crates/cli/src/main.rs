use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use numeral_mg::config::RunConfig;
use numeral_mg::learner::{round_trip, train, trace, LearnerError};
use numeral_mg::lexicon::{KeyError, Lexicon};
use numeral_mg::teacher::{semantics_for, Orthography};
use numeral_mg::terms::{evaluate, format_term};
use numeral_mg::transducer::{derive_items, start_feature, Chart};

const EXIT_NO_RESULT: u8 = 1;
const EXIT_STUCK: u8 = 2;
const EXIT_BAD_LEXICON: u8 = 3;
const EXIT_KEY: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "numeral-mg", version, about = "Minimalist-grammar numeral learner and transducer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the counting teacher up to --max and write the learned lexicon and trace.
    Train {
        #[command(flatten)]
        run: RunArgs,
        /// Lexicon output file (stdout when absent).
        #[arg(long)]
        lexicon: Option<PathBuf>,
        /// JSONL trace output file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print every exponent the lexicon derives for a number's meaning.
    Generate {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        value: u64,
    },
    /// Print every meaning the lexicon derives for an utterance, with its value.
    Parse {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        utterance: String,
    },
    /// Derive from lexicon entries given in order (`exponent` or `exponent#i`, `eps` for ε).
    Derive {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        items: Vec<String>,
        /// Print full premise and conclusion signs.
        #[arg(long)]
        show_steps: bool,
    },
    /// Print a lexicon in canonical form, read from a file or replayed from a trace.
    LexiconShow {
        #[arg(long, conflicts_with = "trace", required_unless_present = "trace")]
        lexicon: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` run configuration; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    max: Option<u64>,
    #[arg(long)]
    orthography: Option<Orthography>,
    #[arg(long)]
    max_leaves: Option<usize>,
}

impl RunArgs {
    fn resolve(&self) -> anyhow::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => read(path)?.parse::<RunConfig>().with_context(|| format!("{}", path.display()))?,
            None => RunConfig::default(),
        };
        if let Some(m) = self.max {
            cfg.max_number = m;
        }
        if let Some(o) = self.orthography {
            cfg.orthography = o;
        }
        if let Some(l) = self.max_leaves {
            cfg.max_leaves = l;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Failure with a specific exit status.
struct Exit(u8, String);

fn load_lexicon(path: &Path) -> Result<Lexicon, Exit> {
    let text = read(path).map_err(|e| Exit(EXIT_BAD_LEXICON, format!("{e:#}")))?;
    text.parse().map_err(|e| Exit(EXIT_BAD_LEXICON, format!("{}: {e}", path.display())))
}

fn other(e: anyhow::Error) -> Exit {
    Exit(EXIT_NO_RESULT, format!("{e:#}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<(), Exit> {
    match command {
        Command::Train { run, lexicon, trace } => cmd_train(&run, lexicon.as_deref(), trace.as_deref()),
        Command::Generate { run, lexicon, value } => cmd_generate(&run, &lexicon, value),
        Command::Parse { run, lexicon, utterance } => cmd_parse(&run, &lexicon, &utterance),
        Command::Derive { lexicon, items, show_steps } => cmd_derive(&lexicon, &items, show_steps),
        Command::LexiconShow { lexicon, trace } => cmd_lexicon_show(lexicon.as_deref(), trace.as_deref()),
    }
}

fn cmd_train(run: &RunArgs, lexicon_out: Option<&Path>, trace_out: Option<&Path>) -> Result<(), Exit> {
    let cfg = run.resolve().map_err(other)?;
    let teacher = cfg.teacher();
    let training = match train(cfg.max_number, &teacher, cfg.learner()) {
        Ok(t) => t,
        Err(e) => {
            if let Some(path) = trace_out {
                write(path, &trace::to_jsonl(e.trace())).map_err(other)?;
            }
            let code = match e {
                LearnerError::Stuck { .. } | LearnerError::UnresolvablePunish { .. } => EXIT_STUCK,
                _ => EXIT_NO_RESULT,
            };
            return Err(Exit(code, e.to_string()));
        }
    };
    let text = training.lexicon.to_text();
    match lexicon_out {
        Some(path) => write(path, &text).map_err(other)?,
        None => print!("{text}"),
    }
    if let Some(path) = trace_out {
        write(path, &trace::to_jsonl(&training.trace)).map_err(other)?;
    }
    let rt = round_trip(&training.lexicon, &teacher, cfg.max_number, cfg.enumerate())
        .map_err(|e| Exit(EXIT_NO_RESULT, e.to_string()))?;
    eprintln!("entries: {}", training.lexicon.len());
    eprintln!("events: {}", training.trace.len());
    eprintln!("round-trip accuracy: {:.4} ({}/{})", rt.accuracy(), rt.total - rt.failures.len() as u64, rt.total);
    if !rt.failures.is_empty() {
        return Err(Exit(EXIT_STUCK, format!("not converged for {:?}", rt.failures)));
    }
    Ok(())
}

fn chart_for(run: &RunArgs, path: &Path) -> Result<Chart, Exit> {
    let lex = load_lexicon(path)?;
    let cfg = run.resolve().map_err(other)?;
    Chart::build(&lex, &start_feature(), cfg.enumerate()).map_err(|e| Exit(EXIT_NO_RESULT, e.to_string()))
}

fn cmd_generate(run: &RunArgs, lexicon: &Path, value: u64) -> Result<(), Exit> {
    let chart = chart_for(run, lexicon)?;
    let out = chart.generate(&semantics_for(value));
    if out.is_empty() {
        return Err(Exit(EXIT_NO_RESULT, String::new()));
    }
    for e in out {
        println!("{e}");
    }
    Ok(())
}

fn cmd_parse(run: &RunArgs, lexicon: &Path, utterance: &str) -> Result<(), Exit> {
    let chart = chart_for(run, lexicon)?;
    let out = chart.parse(utterance);
    if out.is_empty() {
        return Err(Exit(EXIT_NO_RESULT, String::new()));
    }
    for t in out {
        match evaluate(&t) {
            Ok(n) => println!("{}\t{n}", format_term(&t)),
            Err(_) => println!("{}", format_term(&t)),
        }
    }
    Ok(())
}

fn cmd_derive(lexicon: &Path, items: &[String], show_steps: bool) -> Result<(), Exit> {
    let lex = load_lexicon(lexicon)?;
    let idx = items
        .iter()
        .map(|k| lex.resolve_key(k))
        .collect::<Result<Vec<_>, KeyError>>()
        .map_err(|e| Exit(EXIT_KEY, e.to_string()))?;
    let d = derive_items(&lex, &idx, &start_feature()).map_err(|e| Exit(EXIT_NO_RESULT, e.to_string()))?;
    for step in &d.steps {
        if show_steps {
            println!("{step}");
        } else {
            println!("{}", step.rule);
        }
    }
    println!("=> {}", d.result);
    if d.complete {
        Ok(())
    } else {
        Err(Exit(EXIT_NO_RESULT, "no complete derivation from these items".into()))
    }
}

fn cmd_lexicon_show(lexicon: Option<&Path>, trace_in: Option<&Path>) -> Result<(), Exit> {
    let lex = match (lexicon, trace_in) {
        (Some(path), _) => load_lexicon(path)?,
        (None, Some(path)) => {
            let text = read(path).map_err(other)?;
            let events = trace::from_jsonl(&text).map_err(|e| Exit(EXIT_BAD_LEXICON, e.to_string()))?;
            trace::replay(&events).map_err(|e| Exit(EXIT_BAD_LEXICON, e.to_string()))?
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    print!("{}", lex.to_text());
    Ok(())
}
