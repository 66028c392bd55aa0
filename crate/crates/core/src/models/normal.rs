//! Quotienting a model by the extensional identity it defines.

use std::collections::BTreeMap;

use thiserror::Error;

use super::model::{Assignment, Ext, FiniteModel, Tok, TOKEN_MARK};
use crate::syntax::{sugar, Term, Type, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoherenceError {
    #[error("identity on {0} is not an equivalence")]
    NotEquivalence(Type),
    #[error("identified tokens {0} and {1} have different extensions")]
    Extension(String, String),
    #[error("extension of {0} is not closed under identity")]
    NotSaturated(String),
    #[error("intension table disagrees on `{0}`")]
    Table(String),
    #[error("probe `{0}` changed truth value or could not be evaluated")]
    Probe(String),
}

/// `d ∼ d'` for all pairs of one domain, by evaluating `λxλx'. x = x'`.
/// Types whose property type has no domain get the identity relation.
pub fn similarity(m: &FiniteModel, ty: &Type) -> Vec<Vec<bool>> {
    let dom = m.domain(ty);
    let n = dom.len();
    if m.domain(&ty.property()).is_empty() {
        return (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    }
    let x = Var::new("%x", ty.clone());
    let y = Var::new("%y", ty.clone());
    let eq = sugar::eq(Term::var(x.clone()), Term::var(y.clone())).expect("same type");
    let rel = Term::lam(x, Term::lam(y, eq).expect("typed")).expect("typed");
    let ext = m.eval_extension(&Assignment::new(), &rel).expect("no intensions consulted");
    (0..n).map(|i| (0..n).map(|j| ext.contains(&vec![dom[i], dom[j]])).collect()).collect()
}

/// Whether every similarity relation is the identity.
pub fn is_normal(m: &FiniteModel) -> bool {
    m.domains().keys().all(|ty| {
        let s = similarity(m, ty);
        s.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, v)| *v == (i == j)))
    })
}

/// The quotient model with the least token of each class as representative.
pub fn normalize_model(m: &FiniteModel, probes: &[Term]) -> Result<FiniteModel, CoherenceError> {
    let mut rep: Vec<Tok> = (0..m.tokens().len()).collect();
    for ty in m.domains().keys() {
        let s = similarity(m, ty);
        let dom = m.domain(ty);
        let n = dom.len();
        for i in 0..n {
            if !s[i][i] {
                return Err(CoherenceError::NotEquivalence(ty.clone()));
            }
            for j in 0..n {
                if s[i][j] != s[j][i] {
                    return Err(CoherenceError::NotEquivalence(ty.clone()));
                }
                if s[i][j] && (0..n).any(|k| s[j][k] && !s[i][k]) {
                    return Err(CoherenceError::NotEquivalence(ty.clone()));
                }
            }
            rep[dom[i]] = (0..n).find(|j| s[i][*j]).map(|j| dom[j]).unwrap_or(dom[i]);
        }
    }
    let map_ext = |e: &Ext| -> Ext { e.iter().map(|row| row.iter().map(|d| rep[*d]).collect()).collect() };
    for (t, info) in m.tokens().iter().enumerate() {
        let r = rep[t];
        if r != t && map_ext(&info.ext) != map_ext(m.ext(r)) {
            return Err(CoherenceError::Extension(info.name.clone(), m.token(r).name.clone()));
        }
        for row in &info.ext {
            for (i, d) in row.iter().enumerate() {
                for (e, other) in m.tokens().iter().enumerate() {
                    if rep[e] == rep[*d] && e != *d && other.ty == m.token(*d).ty {
                        let mut variant = row.clone();
                        variant[i] = e;
                        if !info.ext.contains(&variant) {
                            return Err(CoherenceError::NotSaturated(info.name.clone()));
                        }
                    }
                }
            }
        }
    }

    let mut out = FiniteModel::new();
    let mut new_id: BTreeMap<Tok, Tok> = BTreeMap::new();
    for (t, info) in m.tokens().iter().enumerate() {
        if rep[t] == t {
            let id = out.add_named_token(&info.name, &info.ty).expect("names are unique");
            new_id.insert(t, id);
        }
    }
    for (t, info) in m.tokens().iter().enumerate() {
        if rep[t] == t {
            let e: Ext = info.ext.iter().map(|row| row.iter().map(|d| new_id[&rep[*d]]).collect()).collect();
            out.set_ext(new_id[&t], e);
        }
    }
    for (name, t) in m.constants() {
        out.bind_constant(name, new_id[&rep[*t]]);
    }
    let names: BTreeMap<&str, &str> =
        m.tokens().iter().enumerate().map(|(t, info)| (info.name.as_str(), m.token(rep[t]).name.as_str())).collect();
    let mut keys: BTreeMap<String, Tok> = BTreeMap::new();
    for (key, t) in m.intensions() {
        let k = rewrite_key(key, &names);
        let target = new_id[&rep[*t]];
        match keys.get(&k) {
            Some(prev) if *prev != target => return Err(CoherenceError::Table(k)),
            _ => {
                keys.insert(k, target);
            }
        }
    }
    for (k, t) in keys {
        out.bind_key(&k, t);
    }
    let a = Assignment::new();
    for p in probes {
        match (m.holds(&a, p), out.holds(&a, p)) {
            (Ok(x), Ok(y)) if x == y => {}
            _ => return Err(CoherenceError::Probe(crate::syntax::print_term(p))),
        }
    }
    Ok(out)
}

/// Renames the token constants inside a key.
fn rewrite_key(key: &str, names: &BTreeMap<&str, &str>) -> String {
    let mut out = String::with_capacity(key.len());
    let mut rest = key;
    while let Some(i) = rest.find(TOKEN_MARK) {
        out.push_str(&rest[..=i]);
        let tail = &rest[i + 1..];
        let end = tail.find(|c: char| c.is_whitespace() || c == ')').unwrap_or(tail.len());
        let name = &tail[..end];
        out.push_str(names.get(name).copied().unwrap_or(name));
        rest = &tail[end..];
    }
    out.push_str(rest);
    out
}
