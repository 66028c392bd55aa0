//! Dropping unused steps from proofs.
//!
//! Every node is rebuilt over the members its subproof actually uses. A
//! step none of whose added members is used disappears, and so does a split
//! with one premise that does not need its added members.

use super::check::{apply_args, contract_head};
use super::proof::{Proof, RuleData, RuleId};
use crate::syntax::{Sequent, Sign, SignedSentence, Term};

/// An equivalent proof of a subsequent of the conclusion of `p`, weakened
/// back to that conclusion.
pub fn prune(p: &Proof) -> Proof {
    trim(p).weaken_to(&p.conclusion)
}

/// The principal and the members each premise adds, for the rules that
/// only add.
pub(crate) fn shape(rule: RuleId, data: &RuleData) -> Option<(SignedSentence, Vec<Sequent>)> {
    let one = |s: Sign, t: Term| SignedSentence { sign: s, sentence: t };
    match (rule, data) {
        (RuleId::LamL | RuleId::LamR, RuleData::Principal(t)) => {
            let sign = if rule == RuleId::LamL { Sign::L } else { Sign::R };
            let reduced = contract_head(t).ok()?;
            Some((one(sign, t.clone()), vec![[one(sign, reduced)].into_iter().collect()]))
        }
        (RuleId::SubL, RuleData::Instantiate { principal, args }) => {
            let (a, b) = principal.as_subset()?;
            let bc = one(Sign::L, apply_args(b, args).ok()?);
            let ac = one(Sign::R, apply_args(a, args).ok()?);
            Some((one(Sign::L, principal.clone()), vec![[bc].into_iter().collect(), [ac].into_iter().collect()]))
        }
        (RuleId::SubR, RuleData::Fresh { principal, fresh }) => {
            let (a, b) = principal.as_subset()?;
            let cs: Vec<Term> = fresh.iter().cloned().map(Term::constant).collect();
            let ac = one(Sign::L, apply_args(a, &cs).ok()?);
            let bc = one(Sign::R, apply_args(b, &cs).ok()?);
            Some((one(Sign::R, principal.clone()), vec![[ac, bc].into_iter().collect()]))
        }
        _ => None,
    }
}

/// A proof of the members of the conclusion of `p` that are actually used.
pub(crate) fn trim(p: &Proof) -> Proof {
    match (p.rule, &p.data) {
        (RuleId::W, _) => return trim(&p.premises[0]),
        (RuleId::Axiom, RuleData::Principal(phi)) => {
            let s: Sequent = [SignedSentence::l(phi.clone()), SignedSentence::r(phi.clone())].into_iter().collect();
            return Proof::leaf(s, p.rule, p.data.clone());
        }
        (RuleId::BottomL, _) => {
            let s: Sequent = [SignedSentence::l(Term::bottom())].into_iter().collect();
            return Proof::leaf(s, p.rule, p.data.clone());
        }
        _ => {}
    }
    let Some((principal, additions)) = shape(p.rule, &p.data) else {
        return keep(p);
    };
    let mut side = Sequent::new();
    side.insert(principal);
    let mut subs = Vec::with_capacity(p.premises.len());
    for (q, added) in p.premises.iter().zip(additions) {
        let t = trim(q);
        if !t.conclusion.iter().any(|s| added.contains(s)) && t.conclusion.is_subset(&p.conclusion) {
            return t;
        }
        side = side.union(&t.conclusion.difference(&added));
        subs.push((t, added));
    }
    let premises = subs.into_iter().map(|(t, added)| t.weaken_to(&side.union(&added))).collect();
    Proof::new(side, p.rule, p.data.clone(), premises)
}

/// The same proof with every premise carrying its whole conclusion plus
/// what the rule adds, and no weakenings.
pub fn cumulative(p: &Proof) -> Proof {
    build_cumulative(p, &p.conclusion)
}

fn build_cumulative(p: &Proof, concl: &Sequent) -> Proof {
    if p.rule == RuleId::W {
        return build_cumulative(&p.premises[0], concl);
    }
    match shape(p.rule, &p.data) {
        Some((_, additions)) if p.premises.len() == additions.len() => {
            let premises =
                p.premises.iter().zip(additions).map(|(q, added)| build_cumulative(q, &concl.union(&added))).collect();
            Proof::new(concl.clone(), p.rule, p.data.clone(), premises)
        }
        _ if p.premises.is_empty() => Proof::leaf(concl.clone(), p.rule, p.data.clone()),
        _ => p.clone().weaken_to(concl),
    }
}

/// The node unchanged, over pruned premises.
fn keep(p: &Proof) -> Proof {
    let premises = p.premises.iter().map(prune).collect();
    Proof::new(p.conclusion.clone(), p.rule, p.data.clone(), premises)
}
