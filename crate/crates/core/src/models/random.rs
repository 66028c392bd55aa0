//! Randomised finite models for property tests.
//!
//! Domains and extensions are drawn first and then frozen. Intensions are
//! assigned on demand: a term receives a token whose extension equals the
//! term's value, picked at random among the candidates, so distinct terms
//! with equal extensions may or may not share an intension.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::model::{Assignment, EvalError, Ext, FiniteModel, Tok};
use crate::syntax::{Signature, Term, Type};

/// Shape of the generated models.
#[derive(Clone, Debug)]
pub struct RandomConfig {
    /// Complex types to populate; argument types are added automatically.
    pub types: Vec<Type>,
    pub max_basic: usize,
    /// Extra tokens per complex domain beyond the enumerated extensions.
    pub duplicates: usize,
    /// Domains whose full powerset exceeds this are sampled instead.
    pub max_domain: usize,
    /// Pick a fresh token per intension where possible.
    pub injective: bool,
}

impl Default for RandomConfig {
    fn default() -> RandomConfig {
        RandomConfig { types: vec![Type::prop()], max_basic: 3, duplicates: 2, max_domain: 64, injective: false }
    }
}

/// A random model interpreting the constants of `sig`.
pub fn random_model(sig: &Signature, cfg: &RandomConfig, rng: &mut impl Rng) -> FiniteModel {
    let mut types: BTreeSet<Type> = BTreeSet::new();
    let add = |ty: &Type, types: &mut BTreeSet<Type>| {
        let mut comps = Vec::new();
        ty.components(&mut comps);
        types.extend(comps);
        types.insert(ty.clone());
    };
    for ty in &cfg.types {
        add(ty, &mut types);
    }
    for c in sig.constants() {
        add(&c.ty, &mut types);
    }
    let mut ordered: Vec<Type> = types.into_iter().collect();
    ordered.sort_by_key(|t| (t.depth(), t.clone()));

    let mut m = FiniteModel::new();
    for ty in &ordered {
        if ty.is_basic() {
            for _ in 0..rng.gen_range(1..=cfg.max_basic.max(1)) {
                m.add_token(ty);
            }
            continue;
        }
        let mut exts = candidate_extensions(&m, ty, cfg.max_domain, rng);
        for _ in 0..cfg.duplicates {
            if let Some(e) = exts.choose(rng).cloned() {
                exts.push(e);
            }
        }
        for e in exts {
            let t = m.add_token(ty);
            m.set_ext(t, e);
        }
    }
    let mut used = BTreeSet::new();
    for c in sig.constants() {
        let dom = m.domain(&c.ty).to_vec();
        let fresh: Vec<Tok> = dom.iter().copied().filter(|d| !used.contains(d)).collect();
        let pool = if cfg.injective && !fresh.is_empty() { &fresh } else { &dom };
        let t = *pool.choose(rng).expect("nonempty domain");
        used.insert(t);
        m.bind_constant(&c.name, t);
    }
    m
}

/// Every subset of the argument product when small enough, else a sample
/// that includes the empty and the full relation.
fn candidate_extensions(m: &FiniteModel, ty: &Type, max: usize, rng: &mut impl Rng) -> Vec<Ext> {
    let mut rows: Vec<Vec<Tok>> = vec![Vec::new()];
    for a in ty.args() {
        let dom = m.domain(a);
        rows = rows.iter().flat_map(|r| dom.iter().map(move |d| [r.as_slice(), &[*d]].concat())).collect();
    }
    let n = rows.len();
    if n < 63 && (1usize << n) <= max {
        return (0..1usize << n)
            .map(|mask| rows.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r.clone()).collect())
            .collect();
    }
    let mut out = vec![Ext::new(), rows.iter().cloned().collect()];
    while out.len() < max {
        out.push(rows.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect());
    }
    out
}

/// The token of `t` under `a`, choosing tokens for missing keys. Fails when
/// no token of the right type carries the required extension.
pub fn intern(
    m: &mut FiniteModel,
    a: &Assignment,
    t: &Term,
    injective: bool,
    rng: &mut impl Rng,
) -> Result<Tok, EvalError> {
    loop {
        match m.resolve_intension(a, t) {
            Err(EvalError::CarrierEscape { key, shell }) => {
                let tok = choose(m, &shell, injective, rng)?;
                m.bind_key(&key, tok);
            }
            other => return other,
        }
    }
}

/// V(a, t), choosing tokens for missing keys on the way.
pub fn eval(
    m: &mut FiniteModel,
    a: &Assignment,
    t: &Term,
    injective: bool,
    rng: &mut impl Rng,
) -> Result<Ext, EvalError> {
    loop {
        match m.eval_extension(a, t) {
            Err(EvalError::CarrierEscape { key, shell }) => {
                let tok = choose(m, &shell, injective, rng)?;
                m.bind_key(&key, tok);
            }
            other => return other,
        }
    }
}

fn choose(m: &mut FiniteModel, shell: &Term, injective: bool, rng: &mut impl Rng) -> Result<Tok, EvalError> {
    let want = if shell.ty().is_basic() {
        return Err(EvalError::BasicType(shell.print()));
    } else {
        eval(m, &Assignment::new(), shell, injective, rng)?
    };
    let used: BTreeSet<Tok> = m.intensions().values().chain(m.constants().values()).copied().collect();
    let fits: Vec<Tok> = m.domain(shell.ty()).iter().copied().filter(|d| *m.ext(*d) == want).collect();
    let fresh: Vec<Tok> = fits.iter().copied().filter(|d| !used.contains(d)).collect();
    let pool = if injective && !fresh.is_empty() { &fresh } else { &fits };
    pool.choose(rng).copied().ok_or_else(|| EvalError::CarrierEscape { key: shell.print(), shell: shell.clone() })
}

/// A random model closed over `probes` and their closed subterms, with the
/// probes that could be closed. Probes that escape leave no trace.
pub fn model_for(sig: &Signature, cfg: &RandomConfig, probes: &[Term], rng: &mut impl Rng) -> (FiniteModel, Vec<Term>) {
    let mut m = random_model(sig, cfg, rng);
    let mut kept = Vec::new();
    let a = Assignment::new();
    for p in probes {
        let snapshot = m.clone();
        let mut subs = Vec::new();
        p.closed_subterms(&mut subs, &mut Default::default());
        let ok = subs.iter().filter(|t| t.ty().is_complex()).all(|t| intern(&mut m, &a, t, cfg.injective, rng).is_ok())
            && eval(&mut m, &a, p, cfg.injective, rng).is_ok();
        if ok {
            kept.push(p.clone());
        } else {
            m = snapshot;
        }
    }
    (m, kept)
}
