use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use itl::models::random::{eval, intern};
use itl::models::{
    atomic_extensionality, extensional_model, extensionality, intensional_model, sample_signature, truth_ext,
    Assignment, FiniteModel,
};
use itl::{parse_sequent, Term, Type};

/// Proposition tokens as given, every set of them, and every set of those.
fn full_model(props: &[(&str, bool)], bind: &[(&str, &str)]) -> FiniteModel {
    let prop = Type::prop();
    let set = prop.property();
    let mut m = FiniteModel::new();
    let ps: Vec<_> = props
        .iter()
        .map(|(name, v)| {
            let t = m.add_named_token(name, &prop).unwrap();
            m.set_ext(t, truth_ext(*v));
            t
        })
        .collect();
    let sets: Vec<_> = (0..1usize << ps.len())
        .map(|mask| {
            let t = m.add_named_token(&format!("S{mask}"), &set).unwrap();
            m.set_ext(t, ps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| vec![*p]).collect());
            t
        })
        .collect();
    for mask in 0..1usize << sets.len() {
        let t = m.add_named_token(&format!("P{mask}"), &set.property()).unwrap();
        m.set_ext(t, sets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| vec![*s]).collect());
    }
    for (c, tok) in bind {
        let t = m.token_named(tok).unwrap();
        m.bind_constant(c, t);
    }
    m
}

/// Intensions for every closed subterm of the instances; their truth values.
fn close_over(m: &mut FiniteModel, probes: &[Term]) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = Assignment::new();
    let mut subs = Vec::new();
    for p in probes {
        p.closed_subterms(&mut subs, &mut Default::default());
    }
    for s in subs.iter().filter(|s| s.ty().is_complex()) {
        intern(m, &a, s, false, &mut rng).unwrap();
    }
    probes.iter().map(|p| !eval(m, &a, p, false, &mut rng).unwrap().is_empty()).collect()
}

fn instances() -> Vec<Term> {
    atomic_extensionality(&sample_signature(), &Type::prop())
}

#[test]
fn every_atomic_instance_holds_in_the_extensional_model() {
    let m = extensional_model().unwrap();
    let probes = instances();
    assert_eq!(probes.len(), 9);
    for p in &probes {
        assert!(m.holds(&Assignment::new(), p).unwrap(), "{p}");
    }
    let report = m.check(&probes);
    assert!(report.is_ok() && report.escapes.is_empty(), "{report}");
}

#[test]
fn some_atomic_instance_fails_in_the_intensional_model() {
    let m = intensional_model().unwrap();
    let probes = instances();
    let failing: Vec<_> = probes.iter().filter(|p| !m.holds(&Assignment::new(), p).unwrap()).collect();
    assert!(!failing.is_empty());
    let sig = sample_signature();
    let pq = extensionality(&itl::parse_term("p", &sig).unwrap(), &itl::parse_term("q", &sig).unwrap()).unwrap();
    assert!(failing.contains(&&pq));
    let report = m.check(&probes);
    assert!(report.is_ok() && report.escapes.is_empty(), "{report}");
}

#[test]
fn intensional_model_refutes_the_coextensive_identity() {
    let m = intensional_model().unwrap();
    let seq = parse_sequent("p <-> q => p = q", &sample_signature()).unwrap();
    assert!(m.refutes(&seq).unwrap());
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/models")
}

#[test]
#[ignore = "rewrites the shipped models"]
fn regenerate_sample_models() {
    let probes = instances();
    let mut ext = full_model(&[("F", false), ("T", true)], &[("p", "T"), ("q", "F"), ("r", "T")]);
    assert!(close_over(&mut ext, &probes).iter().all(|b| *b));
    std::fs::write(data_dir().join("extensional.json"), ext.to_json()).unwrap();

    let mut int = full_model(&[("F", false), ("T1", true), ("T2", true)], &[("p", "T1"), ("q", "T2"), ("r", "F")]);
    assert!(!close_over(&mut int, &probes).iter().all(|b| *b));
    std::fs::write(data_dir().join("intensional.json"), int.to_json()).unwrap();
}
