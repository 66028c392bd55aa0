//! Checking the downward saturation conditions on a finite sequent.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::calculus::check::contract_head;
use crate::prover::canonical_inhabitant;
use crate::syntax::normalize::has_head_redex;
use crate::syntax::{print_term, Sequent, Sign, Signature, SignedSentence, Term, Type};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: u8,
    pub member: SignedSentence,
    /// Arguments of a clause-5 instance.
    pub instance: Vec<Term>,
    /// Signed sentences any one of which would repair the violation.
    pub missing: Vec<SignedSentence>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {} at {}", self.clause, self.member)?;
        if !self.instance.is_empty() {
            let args: Vec<String> = self.instance.iter().map(print_term).collect();
            write!(f, " with [{}]", args.join(", "))?;
        }
        if !self.missing.is_empty() {
            let m: Vec<String> = self.missing.iter().map(|s| s.to_string()).collect();
            write!(f, "; missing {}", m.join(" or "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HintikkaReport {
    /// Instances examined per clause.
    pub checks: BTreeMap<u8, usize>,
    pub violations: Vec<Violation>,
}

impl HintikkaReport {
    pub fn is_hintikka(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn clauses_violated(&self) -> BTreeSet<u8> {
        self.violations.iter().map(|v| v.clause).collect()
    }
}

impl fmt::Display for HintikkaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, n) in &self.checks {
            writeln!(f, "clause {c}: {n} checked")?;
        }
        if self.violations.is_empty() {
            writeln!(f, "no violations")?;
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Closed terms the clause-5 arguments range over: those occurring in the
/// sequent plus a canonical inhabitant of each argument type.
pub fn occurring_universe(seq: &Sequent, sig: &Signature) -> BTreeMap<Type, Vec<Term>> {
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for s in seq {
        s.sentence.closed_subterms(&mut found, &mut seen);
    }
    let mut out: BTreeMap<Type, Vec<Term>> = BTreeMap::new();
    for t in found {
        out.entry(t.ty().clone()).or_default().push(t);
    }
    for s in seq.iter().filter(|s| s.sign == Sign::L) {
        if let Some((a, _)) = s.sentence.as_subset() {
            for ty in a.ty().args() {
                if let Some(t) = canonical_inhabitant(ty, sig) {
                    if seen.insert(t.clone()) {
                        out.entry(ty.clone()).or_default().push(t);
                    }
                }
            }
        }
    }
    out
}

/// Checks clauses 1 to 6; clause 5 over [`occurring_universe`]. Without a
/// signature the constants of the sequent are used.
pub fn check_hintikka(seq: &Sequent, sig: Option<&Signature>) -> HintikkaReport {
    let own;
    let sig = match sig {
        Some(s) => s,
        None => {
            own = sequent_signature(seq);
            &own
        }
    };
    let universe = occurring_universe(seq, sig);
    let mut r = HintikkaReport::default();
    let bump = |r: &mut HintikkaReport, c: u8| *r.checks.entry(c).or_default() += 1;
    for c in 1..=6 {
        r.checks.insert(c, 0);
    }
    for s in seq {
        let t = &s.sentence;
        if s.sign == Sign::L {
            bump(&mut r, 1);
            if seq.has(Sign::R, t) {
                r.violations.push(Violation { clause: 1, member: s.clone(), instance: vec![], missing: vec![] });
            }
            bump(&mut r, 2);
            if t.is_bottom() {
                r.violations.push(Violation { clause: 2, member: s.clone(), instance: vec![], missing: vec![] });
            }
        }
        if has_head_redex(t) {
            let clause = if s.sign == Sign::L { 3 } else { 4 };
            bump(&mut r, clause);
            if let Ok(c) = contract_head(t) {
                let want = SignedSentence { sign: s.sign, sentence: c };
                if !seq.contains(&want) {
                    r.violations.push(Violation { clause, member: s.clone(), instance: vec![], missing: vec![want] });
                }
            }
            continue;
        }
        let Some((a, b)) = t.as_subset() else { continue };
        match s.sign {
            Sign::L => {
                let lists: Vec<&[Term]> =
                    a.ty().args().iter().map(|ty| universe.get(ty).map_or(&[][..], Vec::as_slice)).collect();
                for_each_tuple(&lists, &mut |args| {
                    bump(&mut r, 5);
                    let bc = Term::apps(b.clone(), args.iter().cloned()).expect("typed");
                    let ac = Term::apps(a.clone(), args.iter().cloned()).expect("typed");
                    if seq.has(Sign::L, &bc) || seq.has(Sign::R, &ac) {
                        return;
                    }
                    let missing = [SignedSentence::l(bc), SignedSentence::r(ac)]
                        .into_iter()
                        .filter(|m| !seq.contains(&m.complement()) && !(m.sign == Sign::L && m.sentence.is_bottom()))
                        .collect();
                    r.violations.push(Violation { clause: 5, member: s.clone(), instance: args.to_vec(), missing });
                });
            }
            Sign::R => {
                bump(&mut r, 6);
                if !has_witness(seq, a, b) {
                    r.violations.push(Violation { clause: 6, member: s.clone(), instance: vec![], missing: vec![] });
                }
            }
        }
    }
    r
}

/// Constants c⃗ with `L:A c⃗` and `R:B c⃗` in the sequent.
fn has_witness(seq: &Sequent, a: &Term, b: &Term) -> bool {
    let n = a.ty().args().len();
    seq.left().any(|t| {
        let mut args = Vec::with_capacity(n);
        let mut cur = t;
        for _ in 0..n {
            match cur.as_app() {
                Some((f, x)) if x.as_const().is_some() => {
                    args.push(x.clone());
                    cur = f;
                }
                _ => return false,
            }
        }
        if cur != a {
            return false;
        }
        args.reverse();
        seq.has(Sign::R, &Term::apps(b.clone(), args).expect("typed"))
    })
}

fn for_each_tuple(lists: &[&[Term]], f: &mut impl FnMut(&[Term])) {
    fn go(lists: &[&[Term]], cur: &mut Vec<Term>, f: &mut impl FnMut(&[Term])) {
        let Some((first, rest)) = lists.split_first() else {
            f(cur);
            return;
        };
        for t in first.iter() {
            cur.push(t.clone());
            go(rest, cur, f);
            cur.pop();
        }
    }
    go(lists, &mut Vec::new(), f);
}

/// The constants of a sequent as a signature.
pub fn sequent_signature(seq: &Sequent) -> Signature {
    let mut sig = Signature::new();
    for s in seq {
        for c in s.sentence.constants() {
            let _ = sig.declare(&c.name, c.ty.clone());
        }
    }
    sig
}
