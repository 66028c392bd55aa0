use std::collections::BTreeMap;

use super::error::{CaptureError, TypeError};
use super::term::{Term, TermKind, Var};

/// Finite-support simultaneous substitution.
#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn single(x: Var, b: Term) -> Result<Substitution, TypeError> {
        let mut s = Substitution::new();
        s.insert(x, b)?;
        Ok(s)
    }

    /// `σ[x:=b]`.
    pub fn insert(&mut self, x: Var, b: Term) -> Result<(), TypeError> {
        if x.ty != *b.ty() {
            return Err(TypeError::Mismatch(format!("substituting a term of type {} for {:?}", b.ty(), x)));
        }
        if b.as_var() == Some(&x) {
            self.map.remove(&x);
        } else {
            self.map.insert(x, b);
        }
        Ok(())
    }

    pub fn get(&self, x: &Var) -> Option<&Term> {
        self.map.get(x)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    fn without(&self, x: &Var) -> Option<Substitution> {
        if !self.map.contains_key(x) {
            return None;
        }
        let mut s = self.clone();
        s.map.remove(x);
        Some(s)
    }
}

/// Capture-free simultaneous substitution. Refuses rather than renames.
pub fn apply_subst(a: &Term, sigma: &Substitution) -> Result<Term, CaptureError> {
    if sigma.is_empty() || !sigma.map.keys().any(|x| a.has_free(x)) {
        return Ok(a.clone());
    }
    Ok(match a.kind() {
        TermKind::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| a.clone()),
        TermKind::Const(_) | TermKind::Bottom => a.clone(),
        TermKind::App(f, x) => Term::app(apply_subst(f, sigma)?, apply_subst(x, sigma)?).expect("typing preserved"),
        TermKind::Subset(l, r) => {
            Term::subset(apply_subst(l, sigma)?, apply_subst(r, sigma)?).expect("typing preserved")
        }
        TermKind::Lam(y, body) => {
            let shadowed = sigma.without(y);
            let sigma = shadowed.as_ref().unwrap_or(sigma);
            for (x, b) in sigma.iter() {
                if body.has_free(x) && b.has_free(y) {
                    return Err(CaptureError { binder: y.clone(), var: x.clone() });
                }
            }
            Term::lam(y.clone(), apply_subst(body, sigma)?).expect("typing preserved")
        }
    })
}

/// `a{x:=b}`.
pub fn subst1(a: &Term, x: &Var, b: &Term) -> Result<Term, CaptureError> {
    let s = Substitution::single(x.clone(), b.clone()).expect("caller supplies a same-typed term");
    apply_subst(a, &s)
}

/// Whether `b` is free for `x` in `a`.
pub fn is_free_for(b: &Term, x: &Var, a: &Term) -> Result<bool, TypeError> {
    if *b.ty() != x.ty {
        return Err(TypeError::Mismatch(format!("{:?} and a term of type {}", x, b.ty())));
    }
    Ok(free_for(b, x, a))
}

fn free_for(b: &Term, x: &Var, a: &Term) -> bool {
    if b.is_closed() || !a.has_free(x) {
        return true;
    }
    match a.kind() {
        TermKind::Var(_) | TermKind::Const(_) | TermKind::Bottom => true,
        TermKind::App(l, r) | TermKind::Subset(l, r) => free_for(b, x, l) && free_for(b, x, r),
        TermKind::Lam(y, body) => !b.has_free(y) && free_for(b, x, body),
    }
}
