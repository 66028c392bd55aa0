//! Deterministic enumeration of closed terms per type.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::syntax::{sugar, Signature, Term, Type, Var};

/// Cap on the terms one (type, level) cell may hold.
const CELL_LIMIT: usize = 256;

/// `λx⃗.⊥` for a complex type, or the least constant of a basic type.
pub fn canonical_inhabitant(ty: &Type, sig: &Signature) -> Option<Term> {
    if ty.is_complex() {
        sugar::empty_relation(ty)
    } else {
        sig.constants_of_type(ty).next().map(Term::constant)
    }
}

/// `λx⃗.⊤` for a complex type.
fn full_relation(ty: &Type) -> Term {
    let mut t = sugar::top();
    for (i, a) in ty.args().iter().enumerate().rev() {
        t = Term::lam(Var::new(&format!("%x{i}"), a.clone()), t).expect("typed");
    }
    t
}

/// Level 0 holds canonical inhabitants, level 1 the signature's constants
/// and `λx⃗.⊤`, and level k > 1 applications and vacuous abstractions
/// built from lower levels.
pub struct TermUniverse {
    sig: Signature,
    depth: usize,
    /// Types of constants and of their partial applications.
    pool: BTreeSet<Type>,
    cells: BTreeMap<(Type, usize), Vec<Term>>,
}

impl TermUniverse {
    pub fn new(sig: &Signature, depth: usize) -> TermUniverse {
        let mut pool = BTreeSet::new();
        for c in sig.constants() {
            let mut t = Some(c.ty.clone());
            while let Some(ty) = t {
                if !pool.insert(ty.clone()) {
                    break;
                }
                t = ty.applied();
            }
        }
        TermUniverse { sig: sig.clone(), depth, pool, cells: BTreeMap::new() }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Every term of the type up to the configured depth, level by level.
    pub fn terms(&mut self, ty: &Type) -> Vec<Term> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for k in 0..self.depth {
            for t in self.level(ty, k) {
                if seen.insert(t.clone()) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// The terms first produced at level `k`.
    pub fn level(&mut self, ty: &Type, k: usize) -> Vec<Term> {
        if let Some(v) = self.cells.get(&(ty.clone(), k)) {
            return v.clone();
        }
        let mut out: Vec<Term> = Vec::new();
        match k {
            0 => out.extend(canonical_inhabitant(ty, &self.sig)),
            1 => {
                out.extend(self.sig.constants_of_type(ty).map(Term::constant));
                if ty.is_complex() {
                    out.push(full_relation(ty));
                }
            }
            _ => {
                let lower: Vec<Term> = (0..k).flat_map(|j| self.level_cached(ty, j)).collect();
                let pool: Vec<Type> = self.pool.iter().cloned().collect();
                for fty in pool {
                    if fty.applied().as_ref() != Some(ty) {
                        continue;
                    }
                    let arg_ty = fty.args()[0].clone();
                    let fs: Vec<Term> = (0..k).flat_map(|j| self.level(&fty, j)).collect();
                    let args: Vec<Term> = (0..k).flat_map(|j| self.level(&arg_ty, j)).collect();
                    for f in &fs {
                        for a in &args {
                            if out.len() >= CELL_LIMIT {
                                break;
                            }
                            out.push(Term::app(f.clone(), a.clone()).expect("typed"));
                        }
                    }
                }
                if let Some(rest) = ty.args().first().map(|b| (b.clone(), Type::complex(ty.args()[1..].to_vec()))) {
                    let (b, body_ty) = rest;
                    let bodies: Vec<Term> = (0..k).flat_map(|j| self.level(&body_ty, j)).collect();
                    for body in bodies {
                        if out.len() >= CELL_LIMIT {
                            break;
                        }
                        out.push(Term::lam(Var::new("%u", b.clone()), body).expect("typed"));
                    }
                }
                out.retain(|t| !lower.contains(t));
            }
        }
        let mut seen = HashSet::new();
        out.retain(|t| seen.insert(t.clone()));
        self.cells.insert((ty.clone(), k), out.clone());
        out
    }

    fn level_cached(&mut self, ty: &Type, k: usize) -> Vec<Term> {
        self.level(ty, k)
    }
}
