use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context as _, Result};
use clap::Args;

use itl::calculus::Theory;
use itl::fragment::postulate_set;
use itl::models::FiniteModel;
use itl::prover::SearchBudget;
use itl::worlds::worlds_theory;
use itl::{parse_sequent, Sequent, Signature};

/// Flags shared by every command.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Signature file with `type e` and `const name : T` lines.
    #[arg(long, global = true)]
    pub sig: Option<PathBuf>,
    /// Named theory; repeat or join with `+` for unions.
    #[arg(long = "theory", global = true)]
    pub theories: Vec<String>,
    #[arg(long, global = true)]
    pub budget_depth: Option<usize>,
    #[arg(long, global = true)]
    pub budget_insts: Option<usize>,
    #[arg(long, global = true)]
    pub budget_axioms: Option<usize>,
    #[arg(long, global = true)]
    pub universe_depth: Option<usize>,
    /// Seconds.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    /// Where to write the artifact a command produces.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub format: crate::report::Format,
    /// Leave the timestamp line out of structured reports.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

/// A file argument or inline text.
#[derive(Args, Debug, Clone, Default)]
pub struct Input {
    pub input: Option<PathBuf>,
    /// Inline input instead of a file.
    #[arg(short = 'e', long = "expr")]
    pub expr: Option<String>,
}

impl Input {
    pub fn is_given(&self) -> bool {
        self.input.is_some() || self.expr.is_some()
    }

    pub fn text(&self) -> Result<String> {
        match (&self.input, &self.expr) {
            (Some(_), Some(_)) => bail!("give either a file or --expr, not both"),
            (Some(p), None) => read(p),
            (None, Some(e)) => Ok(e.clone()),
            (None, None) => bail!("missing input: give a file or --expr"),
        }
    }
}

pub fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
}

/// Splits declaration lines (`type`, `const`, comments) from the rest.
pub fn split_declarations(text: &str) -> (String, String) {
    let (mut decls, mut body) = (String::new(), String::new());
    for line in text.lines() {
        let t = line.trim_start();
        let target = if t.starts_with("type ") || t.starts_with("const ") || t.starts_with('#') {
            &mut decls
        } else {
            &mut body
        };
        target.push_str(line);
        target.push('\n');
    }
    (decls, body)
}

impl Common {
    /// The `--sig` signature merged with `extra`.
    pub fn signature(&self, extra: &Signature) -> Result<Signature> {
        let mut sig = match &self.sig {
            Some(p) => Signature::parse(&read(p)?).with_context(|| format!("in {}", p.display()))?,
            None => Signature::new(),
        };
        sig.merge(extra)?;
        Ok(sig)
    }

    /// A sequent with optional leading declarations, read in `--sig`
    /// extended by the declarations and by `base`.
    pub fn sequent(&self, input: &Input, base: &Signature) -> Result<(Sequent, Signature)> {
        let text = input.text()?;
        let (decls, body) = split_declarations(&text);
        let mut sig = self.signature(base)?;
        sig.merge(&Signature::parse(&decls)?)?;
        let body = body.trim();
        if body.is_empty() {
            bail!("no sequent in input");
        }
        let seq = parse_sequent(body, &sig).with_context(|| format!("cannot parse `{body}`"))?;
        Ok((seq, sig))
    }

    pub fn theory(&self) -> Result<Theory> {
        let mut th = Theory::empty("");
        for spec in &self.theories {
            for part in spec.split('+').map(str::trim).filter(|p| !p.is_empty()) {
                let next = named_theory(part)?;
                th = th.union(&next)?;
            }
        }
        Ok(th)
    }

    pub fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(n) = self.budget_depth {
            b.max_depth = n;
        }
        if let Some(n) = self.budget_insts {
            b.max_instantiations = n;
        }
        if let Some(n) = self.budget_axioms {
            b.max_axiom_instances = n;
        }
        if let Some(n) = self.universe_depth {
            b.term_universe_depth = n;
        }
        if let Some(s) = self.time_limit {
            b.time_limit = Duration::from_secs_f64(s.max(0.0));
        }
        b
    }
}

pub fn named_theory(name: &str) -> Result<Theory> {
    Ok(match name {
        "worlds" => worlds_theory(false),
        "worlds-actual" => worlds_theory(true),
        other => postulate_set(other).map_err(|_| {
            anyhow::anyhow!("unknown theory `{other}`; known: lambda-conv, names, worlds, worlds-actual, none")
        })?,
    })
}

pub fn load_model(p: &Path) -> Result<FiniteModel> {
    FiniteModel::from_json(&read(p)?).with_context(|| format!("in {}", p.display()))
}

/// The constants a model interprets, typed by their tokens.
pub fn model_signature(m: &FiniteModel) -> Signature {
    let mut sig = Signature::new();
    for (name, tok) in m.constants() {
        let _ = sig.declare(name, m.token(*tok).ty.clone());
    }
    sig
}
