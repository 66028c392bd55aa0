//! Bounded backward proof search and branch saturation.

mod entail;
mod search;
mod universe;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::Serialize;

use crate::calculus::{Proof, Theory};
use crate::syntax::{Sequent, Signature};

pub use entail::{entails, Certificate, Verdict};
pub use search::{prove, prove_guided, prove_in, saturate, SearchRun, SearchStats};
pub use universe::{canonical_inhabitant, TermUniverse};

/// Limits for one search. All dimensions must be positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Rule applications along one branch.
    pub max_depth: usize,
    /// Instances per SubL principal on one branch.
    pub max_instantiations: usize,
    /// Scheme instances requested from the theory.
    pub max_axiom_instances: usize,
    /// Levels of the term universe used once branch terms run out.
    pub term_universe_depth: usize,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_depth: 4000,
            max_instantiations: 64,
            max_axiom_instances: 256,
            term_universe_depth: 1,
            time_limit: Duration::from_secs(30),
        }
    }
}

/// The budget dimension a search ran into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dimension {
    Depth,
    Instantiations,
    AxiomInstances,
    Time,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Depth => "depth",
            Dimension::Instantiations => "instantiations",
            Dimension::AxiomInstances => "axiom-instances",
            Dimension::Time => "time",
        })
    }
}

/// Coverage of a saturated branch.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub members: usize,
    /// Candidate terms per type (printed) the branch was saturated over.
    pub universe: BTreeMap<String, usize>,
    pub universe_size: usize,
    pub fresh_constants: Vec<String>,
    /// Instances checked per Hintikka clause, keyed "1" to "6".
    pub clause_checks: BTreeMap<String, usize>,
    /// Clause violations found by the final Hintikka check; empty on success.
    pub violations: Vec<String>,
}

impl SaturationReport {
    /// Structured text form.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    ProofFound(Proof),
    OpenBranch(Sequent, SaturationReport),
    Exhausted(Dimension),
}

impl SearchOutcome {
    pub fn is_proof(&self) -> bool {
        matches!(self, SearchOutcome::ProofFound(_))
    }

    pub fn is_open(&self) -> bool {
        matches!(self, SearchOutcome::OpenBranch(..))
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            SearchOutcome::ProofFound(p) => Some(p),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::ProofFound(_) => "proof-found",
            SearchOutcome::OpenBranch(..) => "open-branch",
            SearchOutcome::Exhausted(_) => "exhausted",
        }
    }
}

/// The signature a goal is read in: its own constants plus the theory's.
pub fn goal_signature(goal: &Sequent, th: &Theory) -> Signature {
    let mut sig = th.signature.clone();
    for s in goal {
        for c in s.sentence.constants() {
            let _ = sig.declare(&c.name, c.ty.clone());
        }
    }
    for a in &th.axioms {
        for c in a.constants() {
            let _ = sig.declare(&c.name, c.ty.clone());
        }
    }
    sig
}
