//! Batch runs over a JSON list of entries.
//!
//! Each entry is either
//! `{"name", "kind": "entail", "premises": [..], "conclusion", "theory"?, "expect"}`
//! with fragment structures, or
//! `{"name", "kind": "sequent", "sequent", "signature"?: [lines], "theory"?, "expect"}`.
//! `expect` is `proof-found`, `open-branch` or `refuted`. A refuted entry
//! also counts as an open branch.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use anyhow::{Context as _, Result};
use serde::Deserialize;
use serde_json::json;

use itl::fragment::{fragment_entails, parse_structure};
use itl::models::build_countermodel;
use itl::prover::{goal_signature, prove_in, SearchBudget, SearchOutcome, Verdict};
use itl::{parse_sequent, Signature};

use crate::input::{named_theory, read, Common};
use crate::report::{Report, Status};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Entry {
    Entail {
        name: String,
        premises: Vec<String>,
        conclusion: String,
        #[serde(default)]
        theory: String,
        expect: String,
    },
    Sequent {
        name: String,
        sequent: String,
        #[serde(default)]
        signature: Vec<String>,
        #[serde(default)]
        theory: String,
        expect: String,
    },
}

impl Entry {
    fn name(&self) -> &str {
        match self {
            Entry::Entail { name, .. } | Entry::Sequent { name, .. } => name,
        }
    }

    fn expect(&self) -> &str {
        match self {
            Entry::Entail { expect, .. } | Entry::Sequent { expect, .. } => expect,
        }
    }
}

fn theory(spec: &str) -> Result<itl::calculus::Theory> {
    let mut th = itl::calculus::Theory::empty("");
    for part in spec.split('+').map(str::trim).filter(|p| !p.is_empty()) {
        th = th.union(&named_theory(part)?)?;
    }
    Ok(th)
}

fn outcome(e: &Entry, budget: &SearchBudget) -> Result<&'static str> {
    match e {
        Entry::Entail { premises, conclusion, theory: t, .. } => {
            let ps = premises.iter().map(|p| parse_structure(p)).collect::<Result<Vec<_>, _>>()?;
            let v = fragment_entails(&ps, &parse_structure(conclusion)?, &theory(t)?, budget)?;
            Ok(match v {
                Verdict::Yes(_) => "proof-found",
                Verdict::No(c) if c.is_validated() => "refuted",
                Verdict::No(_) => "open-branch",
                Verdict::Unknown(_) => "exhausted",
            })
        }
        Entry::Sequent { sequent, signature, theory: t, .. } => {
            let th = theory(t)?;
            let mut sig = Signature::parse(&signature.join("\n"))?;
            sig.merge(&th.signature)?;
            let seq = parse_sequent(sequent, &sig)?;
            let mut full = goal_signature(&seq, &th);
            full.merge(&sig)?;
            let run = prove_in(&full, &seq, &th, budget);
            Ok(match &run.outcome {
                SearchOutcome::ProofFound(_) => "proof-found",
                SearchOutcome::Exhausted(_) => "exhausted",
                SearchOutcome::OpenBranch(b, _) => match build_countermodel(b, &run.signature) {
                    Ok(m) if m.refutes(&seq).unwrap_or(false) => "refuted",
                    _ => "open-branch",
                },
            })
        }
    }
}

fn passes(expect: &str, got: &str) -> bool {
    expect == got || (expect == "open-branch" && got == "refuted")
}

const STACK: usize = 512 << 20;

pub fn run(c: &Common, path: &Path) -> Result<Report> {
    let entries: Vec<Entry> = serde_json::from_str(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let budget = c.budget();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(entries.len().max(1));
    let next = AtomicUsize::new(0);
    let mut results: Vec<Option<Result<&'static str, String>>> = (0..entries.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                std::thread::Builder::new()
                    .stack_size(STACK)
                    .spawn_scoped(s, || {
                        let mut done = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            let Some(e) = entries.get(i) else { break };
                            done.push((i, outcome(e, &budget).map_err(|err| format!("{err:#}"))));
                        }
                        done
                    })
                    .expect("spawn worker")
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                results[i] = Some(r);
            }
        }
    });

    let mut rows = Vec::new();
    let mut failed = 0;
    for (e, r) in entries.iter().zip(results) {
        let row = match r.expect("every entry ran") {
            Ok(got) => {
                let ok = passes(e.expect(), got);
                failed += usize::from(!ok);
                json!({ "name": e.name(), "expect": e.expect(), "got": got, "pass": ok })
            }
            Err(err) => {
                failed += 1;
                json!({ "name": e.name(), "expect": e.expect(), "error": err, "pass": false })
            }
        };
        rows.push(row);
    }
    let total = rows.len();
    let (status, verdict) = if failed == 0 {
        (Status::Achieved, format!("{total}/{total} passed"))
    } else {
        (Status::Negative, format!("{}/{total} passed", total - failed))
    };
    Ok(Report::new("corpus", status, verdict).with("entries", rows))
}
