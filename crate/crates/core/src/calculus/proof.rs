use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{Const, Sequent, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    W,
    Axiom,
    BottomL,
    LamL,
    LamR,
    SubL,
    SubR,
    TopR,
    ImpL,
    ImpR,
    AllL,
    AllR,
    EqL,
    EqR,
}

impl RuleId {
    pub const BASE: [RuleId; 7] =
        [RuleId::W, RuleId::Axiom, RuleId::BottomL, RuleId::LamL, RuleId::LamR, RuleId::SubL, RuleId::SubR];
    pub const DERIVED: [RuleId; 7] =
        [RuleId::TopR, RuleId::ImpL, RuleId::ImpR, RuleId::AllL, RuleId::AllR, RuleId::EqL, RuleId::EqR];

    pub fn is_derived(self) -> bool {
        RuleId::DERIVED.contains(&self)
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleId::W => "W",
            RuleId::Axiom => "Axiom",
            RuleId::BottomL => "BottomL",
            RuleId::LamL => "LamL",
            RuleId::LamR => "LamR",
            RuleId::SubL => "SubL",
            RuleId::SubR => "SubR",
            RuleId::TopR => "TopR",
            RuleId::ImpL => "ImpL",
            RuleId::ImpR => "ImpR",
            RuleId::AllL => "AllL",
            RuleId::AllR => "AllR",
            RuleId::EqL => "EqL",
            RuleId::EqR => "EqR",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        RuleId::BASE.iter().chain(RuleId::DERIVED.iter()).copied().find(|r| r.name() == s)
    }

    /// Number of premises the rule takes.
    pub fn arity(self) -> usize {
        match self {
            RuleId::Axiom | RuleId::BottomL | RuleId::TopR | RuleId::EqR => 0,
            RuleId::SubL | RuleId::ImpL => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rule-specific witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleData {
    /// W, BottomL, TopR.
    None,
    /// Axiom (the formula present on both sides), LamL/LamR (the redex
    /// sentence), ImpL/ImpR (the implication), EqR (the equation `A=A`).
    Principal(Term),
    /// SubL with closed `C⃗`; AllL with the single witness.
    Instantiate { principal: Term, args: Vec<Term> },
    /// SubR / AllR with the fresh constants.
    Fresh { principal: Term, fresh: Vec<Const> },
    /// EqL. `equation` is the L-member; `reversed` says it reads `B=A`.
    /// The premise has `context{hole:=A}` on the right, the conclusion
    /// `context{hole:=B}`.
    Equation { equation: Term, reversed: bool, hole: Var, context: Term },
}

impl RuleData {
    pub fn principal(&self) -> Option<&Term> {
        match self {
            RuleData::None => None,
            RuleData::Principal(t) => Some(t),
            RuleData::Instantiate { principal, .. } | RuleData::Fresh { principal, .. } => Some(principal),
            RuleData::Equation { equation, .. } => Some(equation),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub conclusion: Sequent,
    pub rule: RuleId,
    pub data: RuleData,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn new(conclusion: Sequent, rule: RuleId, data: RuleData, premises: Vec<Proof>) -> Proof {
        Proof { conclusion, rule, data, premises }
    }

    pub fn leaf(conclusion: Sequent, rule: RuleId, data: RuleData) -> Proof {
        Proof::new(conclusion, rule, data, Vec::new())
    }

    /// A W node concluding `conclusion` from `self`, or `self` if nothing is added.
    pub fn weaken_to(self, conclusion: &Sequent) -> Proof {
        if self.conclusion == *conclusion {
            self
        } else {
            Proof::new(conclusion.clone(), RuleId::W, RuleData::None, vec![self])
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    pub fn uses_derived(&self) -> bool {
        self.rule.is_derived() || self.premises.iter().any(Proof::uses_derived)
    }

    /// Every constant name mentioned anywhere in the tree, including fresh witnesses.
    pub fn constant_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        out.extend(self.conclusion.constant_names());
        if let RuleData::Fresh { fresh, .. } = &self.data {
            out.extend(fresh.iter().map(|c| c.name.to_string()));
        }
        for p in &self.premises {
            p.collect_names(out);
        }
    }

    pub fn count_rules(&self, counts: &mut std::collections::BTreeMap<RuleId, usize>) {
        *counts.entry(self.rule).or_default() += 1;
        for p in &self.premises {
            p.count_rules(counts);
        }
    }
}

/// Pool of witness constants: `_k1`, `_k2`, ... skipping names in `used`.
pub fn fresh_names(used: &BTreeSet<String>) -> impl Iterator<Item = String> + '_ {
    (1..).map(|i| format!("_k{i}")).filter(move |n| !used.contains(n))
}
