mod commands;
mod corpus;
mod input;
mod report;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use input::{Common, Input};
use report::{Format, Report, Status};

/// Proof search, proof checking and finite models for a relational type
/// logic.
#[derive(Parser, Debug)]
#[command(name = "itl", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and typecheck a term or sequent and print it canonically.
    Check(Input),
    /// Search for a proof of a sequent.
    Prove(Input),
    /// Saturate a branch of a sequent; succeeds on an open branch.
    Saturate(Input),
    /// Check a proof file with the kernel.
    VerifyProof {
        proof: PathBuf,
        /// Sequent the proof must establish.
        #[arg(long)]
        goal: Option<String>,
    },
    /// Check a model file, and optionally a sequent in it.
    ModelEval {
        model: PathBuf,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "refute")]
        mode: EvalMode,
    },
    /// Saturate, build a countermodel and validate it.
    Refute(Input),
    /// Check a sequent against the saturation conditions.
    HintikkaCheck(Input),
    /// Quotient a model by its defined identity.
    NormalizeModel {
        model: PathBuf,
        /// Sequent whose members serve as probes.
        #[command(flatten)]
        probes: Input,
    },
    /// Translate bracketed fragment structures, one per line.
    Translate(Input),
    /// Whether fragment sentences (or formulas) entail a conclusion.
    Entail {
        #[arg(long = "premise")]
        premises: Vec<String>,
        #[arg(long)]
        conclusion: String,
        /// Read premises and conclusion as formulas instead of structures.
        #[arg(long)]
        formulas: bool,
    },
    /// List the shipped goals about worlds, or run them.
    WorldsGoals {
        #[arg(long)]
        run: bool,
    },
    /// Run a batch of entries and compare with their expected outcomes.
    Corpus { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalMode {
    /// Every left member true and every right member false.
    Refute,
    /// The sequent is not refuted.
    Satisfy,
}

const STACK: usize = 1 << 30;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage.code() } else { 0 });
        }
    };
    let worker = std::thread::Builder::new().stack_size(STACK).spawn(move || run(cli));
    match worker.map(|h| h.join()) {
        Ok(Ok(code)) => ExitCode::from(code),
        _ => {
            eprintln!("itl: internal error");
            ExitCode::from(Status::Usage.code())
        }
    }
}

fn run(cli: Cli) -> u8 {
    let c = &cli.common;
    let result = match &cli.command {
        Command::Check(i) => commands::check(c, i),
        Command::Prove(i) => commands::prove(c, i),
        Command::Saturate(i) => commands::saturate(c, i),
        Command::VerifyProof { proof, goal } => commands::verify_proof(c, proof, goal.as_deref()),
        Command::ModelEval { model, input, mode } => commands::model_eval(c, model, input, *mode),
        Command::Refute(i) => commands::refute(c, i),
        Command::HintikkaCheck(i) => commands::hintikka_check(c, i),
        Command::NormalizeModel { model, probes } => commands::normalize(c, model, probes),
        Command::Translate(i) => commands::translate(c, i),
        Command::Entail { premises, conclusion, formulas } => commands::entail(c, premises, conclusion, *formulas),
        Command::WorldsGoals { run } => commands::worlds_goals(c, *run),
        Command::Corpus { file } => corpus::run(c, file),
    };
    let report = result.unwrap_or_else(|e| {
        if c.format == Format::Human {
            eprintln!("itl: {e:#}");
        }
        Report::new(command_name(&cli.command), Status::Usage, "error").with("error", format!("{e:#}"))
    });
    if !(report.status == Status::Usage && c.format == Format::Human) {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(report.render(c.format, !c.no_timestamp).as_bytes());
    }
    report.status.code()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Prove(_) => "prove",
        Command::Saturate(_) => "saturate",
        Command::VerifyProof { .. } => "verify-proof",
        Command::ModelEval { .. } => "model-eval",
        Command::Refute(_) => "refute",
        Command::HintikkaCheck(_) => "hintikka-check",
        Command::NormalizeModel { .. } => "normalize-model",
        Command::Translate(_) => "translate",
        Command::Entail { .. } => "entail",
        Command::WorldsGoals { .. } => "worlds-goals",
        Command::Corpus { .. } => "corpus",
    }
}
