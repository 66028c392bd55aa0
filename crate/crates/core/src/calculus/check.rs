//! The proof kernel. Only the seven base rules are accepted.
//!
//! Sequents are sets, so a rule figure `Π, P ⇒ ...` over premises
//! `Π, N_i ⇒ ...` matches when one `Π` fits the conclusion and every
//! premise simultaneously. [`set_rule`] decides that directly.

use std::collections::BTreeSet;

use thiserror::Error;

use super::proof::{Proof, RuleData, RuleId};
use crate::syntax::normalize::has_head_redex;
use crate::syntax::{subst1, Const, Sequent, Sign, Signature, SignedSentence, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule} node at {path:?}: {reason}")]
pub struct Rejection {
    /// Premise indices from the root to the failing node.
    pub path: Vec<usize>,
    pub rule: RuleId,
    pub reason: String,
}

/// Validates every node of `p` against the base rule schemas.
pub fn check_proof(p: &Proof, sig: &Signature) -> Result<(), Rejection> {
    let mut path = Vec::new();
    check_node(p, sig, None, &mut path)
}

fn check_node(p: &Proof, scope: &Signature, parent: Option<&Sequent>, path: &mut Vec<usize>) -> Result<(), Rejection> {
    let reject = |reason: String| Rejection { path: path.clone(), rule: p.rule, reason };
    if p.premises.len() != p.rule.arity() {
        return Err(reject(format!("expected {} premises, found {}", p.rule.arity(), p.premises.len())));
    }
    // Members of the parent's conclusion were checked in a narrower scope.
    match parent {
        Some(c) => check_declared(missing(p.conclusion.iter(), c).into_iter(), scope),
        None => check_declared(p.conclusion.iter(), scope),
    }
    .map_err(reject)?;
    let mut inner_scope = None;
    local_check(p, scope, &mut inner_scope).map_err(reject)?;
    let scope = inner_scope.as_ref().unwrap_or(scope);
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        check_node(q, scope, Some(&p.conclusion), path)?;
        path.pop();
    }
    Ok(())
}

fn check_declared<'a>(members: impl Iterator<Item = &'a SignedSentence>, scope: &Signature) -> Result<(), String> {
    for s in members {
        for c in s.sentence.constants() {
            match scope.constant(&c.name) {
                Some(ty) if *ty == c.ty => {}
                Some(ty) => return Err(format!("constant {} used at {} but declared at {}", c.name, c.ty, ty)),
                None => return Err(format!("undeclared constant {}", c.name)),
            }
        }
    }
    Ok(())
}

/// `Π ∪ {P}` is the conclusion and `Π ∪ N_i` the i-th premise, for one `Π`.
pub fn set_rule(
    conclusion: &Sequent,
    principal: &SignedSentence,
    premises: &[(&Sequent, Vec<SignedSentence>)],
) -> Result<(), String> {
    if !conclusion.contains(principal) {
        return Err(format!("principal {principal} not in conclusion"));
    }
    let mut kept_principal = false;
    for (prem, added) in premises {
        for n in added {
            if !prem.contains(n) {
                return Err(format!("premise lacks {n}"));
            }
        }
        let own = prem.iter().filter(|s| !added.contains(s));
        if let Some(s) = first_missing(own, conclusion) {
            return Err(format!("premise member {s} not in conclusion"));
        }
        if let Some(s) = first_missing(conclusion.iter().filter(|s| *s != principal), prem) {
            return Err(format!("side member {s} missing from a premise"));
        }
        kept_principal |= prem.contains(principal) && !added.contains(principal);
    }
    if kept_principal && premises.iter().any(|(prem, _)| !prem.contains(principal)) {
        return Err(format!("side member {principal} missing from a premise"));
    }
    Ok(())
}

/// The first member of the ascending sequence `xs` that `set` lacks.
fn first_missing<'a>(xs: impl Iterator<Item = &'a SignedSentence>, set: &Sequent) -> Option<&'a SignedSentence> {
    merge_missing(xs, set).next()
}

/// Every member of the ascending sequence `xs` that `set` lacks.
fn missing<'a>(xs: impl Iterator<Item = &'a SignedSentence>, set: &Sequent) -> Vec<&'a SignedSentence> {
    merge_missing(xs, set).collect()
}

/// Members of `xs` absent from `set`, by one merge over both in order.
fn merge_missing<'a, 'b, I: Iterator<Item = &'a SignedSentence>>(
    xs: I,
    set: &'b Sequent,
) -> impl Iterator<Item = &'a SignedSentence> + use<'a, 'b, I> {
    let mut ys = set.iter().peekable();
    xs.filter(move |x| loop {
        match ys.peek() {
            Some(y) if *y < *x => {
                ys.next();
            }
            Some(y) => break *y != *x,
            None => break true,
        }
    })
}

/// The sentence `(λx.A)B C⃗` contracted at its head, refusing capture.
pub fn contract_head(t: &Term) -> Result<Term, String> {
    if !has_head_redex(t) {
        return Err(format!("{t} has no head redex"));
    }
    let (head, args) = t.spine();
    let (x, body) = head.as_lam().expect("head redex");
    let reduced = subst1(body, x, args[0]).map_err(|e| e.to_string())?;
    Term::apps(reduced, args[1..].iter().map(|a| (*a).clone())).map_err(|e| e.to_string())
}

/// `t c1 ... cn`, checked against the argument types of `t`.
pub fn apply_args(t: &Term, args: &[Term]) -> Result<Term, String> {
    if t.ty().arity() != Some(args.len()) {
        return Err(format!("{} arguments for a relation of type {}", args.len(), t.ty()));
    }
    Term::apps(t.clone(), args.iter().cloned()).map_err(|e| e.to_string())
}

fn signed(sign: Sign, t: Term) -> Result<SignedSentence, String> {
    SignedSentence::new(sign, t).map_err(|e| e.to_string())
}

fn local_check(p: &Proof, scope: &Signature, inner: &mut Option<Signature>) -> Result<(), String> {
    let concl = &p.conclusion;
    let prem = |i: usize| &p.premises[i].conclusion;
    match (p.rule, &p.data) {
        (RuleId::W, RuleData::None) => {
            if prem(0).is_subset(concl) {
                Ok(())
            } else {
                Err("premise is not a subset of the conclusion".into())
            }
        }
        (RuleId::Axiom, RuleData::Principal(phi)) => {
            if concl.has(Sign::L, phi) && concl.has(Sign::R, phi) {
                Ok(())
            } else {
                Err(format!("{phi} is not on both sides"))
            }
        }
        (RuleId::BottomL, RuleData::None) => {
            if concl.has(Sign::L, &Term::bottom()) {
                Ok(())
            } else {
                Err("L:bot not in conclusion".into())
            }
        }
        (RuleId::LamL | RuleId::LamR, RuleData::Principal(t)) => {
            let sign = if p.rule == RuleId::LamL { Sign::L } else { Sign::R };
            let reduced = contract_head(t)?;
            set_rule(concl, &signed(sign, t.clone())?, &[(prem(0), vec![signed(sign, reduced)?])])
        }
        (RuleId::SubL, RuleData::Instantiate { principal, args }) => {
            let (a, b) = principal.as_subset().ok_or("principal is not an inclusion")?;
            for c in args {
                if !c.is_closed() {
                    return Err(format!("instantiating term {c} is not closed"));
                }
                for k in c.constants() {
                    if scope.constant(&k.name) != Some(&k.ty) {
                        return Err(format!("instantiating term uses undeclared constant {}", k.name));
                    }
                }
            }
            let bc = signed(Sign::L, apply_args(b, args)?)?;
            let ac = signed(Sign::R, apply_args(a, args)?)?;
            set_rule(concl, &signed(Sign::L, principal.clone())?, &[(prem(0), vec![bc]), (prem(1), vec![ac])])
        }
        (RuleId::SubR, RuleData::Fresh { principal, fresh }) => {
            let (a, b) = principal.as_subset().ok_or("principal is not an inclusion")?;
            let occurring = concl.constant_names();
            let mut seen = BTreeSet::new();
            let mut extended = scope.clone();
            for c in fresh {
                if !seen.insert(c.name.clone()) {
                    return Err(format!("witness {} repeated", c.name));
                }
                if occurring.contains(&*c.name) {
                    return Err(format!("witness {} is not fresh", c.name));
                }
                extended.declare(&c.name, c.ty.clone()).map_err(|e| e.to_string())?;
            }
            let cs: Vec<Term> = fresh.iter().cloned().map(Term::constant).collect();
            let ac = signed(Sign::L, apply_args(a, &cs)?)?;
            let bc = signed(Sign::R, apply_args(b, &cs)?)?;
            set_rule(concl, &signed(Sign::R, principal.clone())?, &[(prem(0), vec![ac, bc])])?;
            *inner = Some(extended);
            Ok(())
        }
        (r, _) if r.is_derived() => Err("derived rule; expand before kernel checking".into()),
        _ => Err("rule data does not fit the rule".into()),
    }
}

/// The constants a SubR or AllR node introduces.
pub fn introduced(p: &Proof) -> &[Const] {
    match &p.data {
        RuleData::Fresh { fresh, .. } => fresh,
        _ => &[],
    }
}
