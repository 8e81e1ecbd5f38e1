//! `ddecide`: δ-decisions for bounded sentences over the reals.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ddecide_core::{
    alpha_of_sentence, decide, lint_bounds, parse_rational, parse_sentence, qbf_encode, DecideError, DecideOptions, Delta,
    EvalConfig, Mode, Outcome, QbfInstance, Sentence, TraceRecord, Verdict,
};

const EXIT_TRUE: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "ddecide", version, about = "Decide bounded first-order sentences over the reals up to a perturbation delta")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sentence read from a file (`-` for stdin).
    Solve {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decide a QDIMACS instance through its real encoding.
    Qbf {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check that a sentence is well formed and report bound lints.
    Check { file: PathBuf },
    /// Print the min/max term the sentence is evaluated through.
    Alpha { file: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// Perturbation, as `p/q`, an integer or an exact decimal.
    #[arg(long, value_parser = parse_rational)]
    delta: ddecide_core::Rational,
    #[arg(long, default_value = "strengthen")]
    mode: Mode,
    /// Evaluate to at least this many bits; a larger derived `k` wins.
    #[arg(long)]
    tolerance_bits: Option<u32>,
    /// Maximum number of box splits in one evaluation.
    #[arg(long)]
    budget: Option<u64>,
    /// Write one JSON record per refinement step to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print the verdict as a JSON object.
    #[arg(long)]
    json: bool,
}

/// Failure that maps to the input-error exit code.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, InputError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_sentence(path: &Path) -> Result<Sentence, InputError> {
    let text = read_input(path)?;
    parse_sentence(&text).map_err(|e| InputError(format!("{}:{e}", path.display())))
}

fn load_qbf(path: &Path) -> Result<Sentence, InputError> {
    let text = read_input(path)?;
    let q = QbfInstance::parse_qdimacs(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(qbf_encode(&q))
}

fn run(phi: &Sentence, args: &RunArgs) -> Result<u8, InputError> {
    let delta = Delta::new(args.delta.clone())?;
    let mut config = EvalConfig::default();
    if let Some(b) = args.budget {
        config.max_splits = b;
    }
    let opts = DecideOptions { tolerance_bits: args.tolerance_bits, config };

    let mut trace_out = match &args.trace {
        Some(p) => Some(BufWriter::new(File::create(p).map_err(|e| InputError(format!("{}: {e}", p.display())))?)),
        None => None,
    };
    let mut write_failed = None;
    let mut sink = |r: &TraceRecord| {
        if let Some(w) = trace_out.as_mut() {
            let res = serde_json::to_writer(&mut *w, r).map_err(io::Error::from).and_then(|_| w.write_all(b"\n"));
            if let Err(e) = res {
                write_failed.get_or_insert(e);
            }
        }
    };
    let trace: Option<&mut dyn FnMut(&TraceRecord)> = if args.trace.is_some() { Some(&mut sink) } else { None };
    let verdict = decide(phi, &delta, args.mode, &opts, trace);
    if let Some(mut w) = trace_out {
        w.flush()?;
    }
    if let Some(e) = write_failed {
        return Err(InputError(format!("writing trace: {e}")));
    }
    let verdict = match verdict {
        Ok(v) => v,
        Err(DecideError::NonPositiveDelta(d)) => return Err(InputError(format!("delta must be positive, got {d}"))),
        Err(DecideError::Eval(e)) => return Err(InputError(e.to_string())),
    };
    report(&verdict, args.json);
    Ok(exit_code(verdict.outcome))
}

fn report(v: &Verdict, json: bool) {
    if json {
        println!("{}", v.to_json());
        return;
    }
    println!("{}", v.outcome);
    println!(
        "  delta' = {}, k = {}, approx = {}, threshold = {}, status = {}, {} ms",
        v.delta_prime,
        v.k,
        v.approx,
        v.threshold,
        serde_json::to_value(v.status).ok().and_then(|s| s.as_str().map(str::to_owned)).unwrap_or_default(),
        v.wall_time_ms
    );
    if v.outcome == Outcome::Unknown {
        eprintln!("note: {}", v.to_json()["note"].as_str().unwrap_or_default());
    }
}

fn exit_code(o: Outcome) -> u8 {
    if o.is_true() {
        EXIT_TRUE
    } else if o.is_false() {
        EXIT_FALSE
    } else {
        EXIT_UNKNOWN
    }
}

fn dispatch(cmd: Command) -> Result<u8, InputError> {
    match cmd {
        Command::Solve { file, run: args } => run(&load_sentence(&file)?, &args),
        Command::Qbf { file, run: args } => run(&load_qbf(&file)?, &args),
        Command::Check { file } => {
            let phi = load_sentence(&file)?;
            for note in lint_bounds(phi.formula()) {
                eprintln!("lint: {note}");
            }
            println!("ok");
            Ok(EXIT_TRUE)
        }
        Command::Alpha { file } => {
            println!("{}", alpha_of_sentence(&load_sentence(&file)?));
            Ok(EXIT_TRUE)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
