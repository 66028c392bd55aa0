use std::collections::HashMap;

use super::error::BudgetExceeded;
use super::subst::subst1;
use super::term::{Term, TermKind, Var};

/// Step guard for normalisation. Simply typed terms always normalise, so
/// hitting it means a bug or an absurdly large input.
pub const NORMALIZE_STEP_LIMIT: usize = 1_000_000;

/// `a{x:=b}`, renaming binders of `a` that would capture free variables of `b`.
pub fn subst_avoiding(a: &Term, x: &Var, b: &Term) -> Term {
    if !a.has_free(x) {
        return a.clone();
    }
    match a.kind() {
        TermKind::Var(_) => b.clone(),
        TermKind::Const(_) | TermKind::Bottom => a.clone(),
        TermKind::App(f, c) => Term::app(subst_avoiding(f, x, b), subst_avoiding(c, x, b)).expect("typed"),
        TermKind::Subset(l, r) => Term::subset(subst_avoiding(l, x, b), subst_avoiding(r, x, b)).expect("typed"),
        TermKind::Lam(y, body) => {
            if b.has_free(y) {
                let fresh = fresh_like(y, |v| b.has_free(v) || body.has_free(v));
                let renamed = subst1(body, y, &Term::var(fresh.clone()))
                    .unwrap_or_else(|_| subst_avoiding(body, y, &Term::var(fresh.clone())));
                Term::lam(fresh, subst_avoiding(&renamed, x, b)).expect("typed")
            } else {
                Term::lam(y.clone(), subst_avoiding(body, x, b)).expect("typed")
            }
        }
    }
}

/// `y'`, `y''`, ... until `taken` is false.
pub fn fresh_like(y: &Var, taken: impl Fn(&Var) -> bool) -> Var {
    let mut name = y.name.to_string();
    loop {
        name.push('\'');
        let v = Var::new(&name, y.ty.clone());
        if !taken(&v) {
            return v;
        }
    }
}

/// Contracts the head redex of `(λx.A) B C1 ... Cn`, giving `A{x:=B} C1 ... Cn`.
pub fn head_reduce(t: &Term) -> Option<Term> {
    let (head, args) = t.spine();
    let (x, body) = head.as_lam()?;
    let first = args.first()?;
    let reduced = subst_avoiding(body, x, first);
    Some(Term::apps(reduced, args[1..].iter().map(|a| (*a).clone())).expect("typed"))
}

/// The redex part `(λx.A) B` of a head-redex sentence, if any.
pub fn has_head_redex(t: &Term) -> bool {
    let (head, args) = t.spine();
    head.as_lam().is_some() && !args.is_empty()
}

struct Normalizer {
    eta: bool,
    steps: usize,
}

impl Normalizer {
    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.steps += 1;
        if self.steps > NORMALIZE_STEP_LIMIT {
            return Err(BudgetExceeded(NORMALIZE_STEP_LIMIT));
        }
        Ok(())
    }

    fn nf(&mut self, t: &Term) -> Result<Term, BudgetExceeded> {
        self.tick()?;
        Ok(match t.kind() {
            TermKind::Const(_) | TermKind::Var(_) | TermKind::Bottom => t.clone(),
            TermKind::App(f, a) => {
                let f = self.nf(f)?;
                let a = self.nf(a)?;
                match f.as_lam() {
                    Some((x, body)) => {
                        let r = subst_avoiding(body, x, &a);
                        self.nf(&r)?
                    }
                    None => Term::app(f, a).expect("typed"),
                }
            }
            TermKind::Subset(l, r) => Term::subset(self.nf(l)?, self.nf(r)?).expect("typed"),
            TermKind::Lam(x, body) => {
                let body = self.nf(body)?;
                if self.eta {
                    if let Some((g, arg)) = body.as_app() {
                        if arg.as_var() == Some(x) && !g.has_free(x) {
                            return Ok(g.clone());
                        }
                    }
                }
                Term::lam(x.clone(), body).expect("typed")
            }
        })
    }
}

pub fn beta_normalize(t: &Term) -> Result<Term, BudgetExceeded> {
    Normalizer { eta: false, steps: 0 }.nf(t)
}

/// Full β-reduction followed by η-contraction.
pub fn beta_eta_normalize(t: &Term) -> Result<Term, BudgetExceeded> {
    Normalizer { eta: true, steps: 0 }.nf(t)
}

/// α-equivalence.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    fn go(a: &Term, b: &Term, env: &mut Vec<(Var, Var)>) -> bool {
        if a.ty() != b.ty() {
            return false;
        }
        match (a.kind(), b.kind()) {
            (TermKind::Const(c), TermKind::Const(d)) => c == d,
            (TermKind::Bottom, TermKind::Bottom) => true,
            (TermKind::Var(x), TermKind::Var(y)) => {
                let bx = env.iter().rev().position(|(l, _)| l == x);
                let by = env.iter().rev().position(|(_, r)| r == y);
                match (bx, by) {
                    (None, None) => x == y,
                    (Some(i), Some(j)) => i == j,
                    _ => false,
                }
            }
            (TermKind::App(f, x), TermKind::App(g, y)) | (TermKind::Subset(f, x), TermKind::Subset(g, y)) => {
                go(f, g, env) && go(x, y, env)
            }
            (TermKind::Lam(x, s), TermKind::Lam(y, t)) => {
                if x.ty != y.ty {
                    return false;
                }
                env.push((x.clone(), y.clone()));
                let r = go(s, t, env);
                env.pop();
                r
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

/// Renames every binder to `%<depth>`, so α-equivalent terms become identical.
/// Free variables with names of that shape are not expected.
pub fn alpha_canonical(t: &Term) -> Term {
    fn go(t: &Term, env: &mut HashMap<Var, Vec<Var>>, depth: usize) -> Term {
        match t.kind() {
            TermKind::Const(_) | TermKind::Bottom => t.clone(),
            TermKind::Var(v) => match env.get(v).and_then(|s| s.last()) {
                Some(r) => Term::var(r.clone()),
                None => t.clone(),
            },
            TermKind::App(f, a) => Term::app(go(f, env, depth), go(a, env, depth)).expect("typed"),
            TermKind::Subset(l, r) => Term::subset(go(l, env, depth), go(r, env, depth)).expect("typed"),
            TermKind::Lam(x, body) => {
                let nx = Var::new(&format!("%{}", depth + 1), x.ty.clone());
                env.entry(x.clone()).or_default().push(nx.clone());
                let b = go(body, env, depth + 1);
                env.get_mut(x).expect("pushed").pop();
                Term::lam(nx, b).expect("typed")
            }
        }
    }
    go(t, &mut HashMap::new(), 0)
}
