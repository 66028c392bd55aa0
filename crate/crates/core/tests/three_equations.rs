//! The three-equation sequent: saturation, the saturation check on the
//! hand-listed extension, countermodel construction and normalisation.

use std::collections::BTreeSet;

use itl::calculus::Theory;
use itl::models::{build_countermodel, check_hintikka, is_normal, normalize_model, similarity};
use itl::prover::{prove_in, SearchBudget, SearchOutcome};
use itl::{parse_sequent, parse_term, Sequent, Sign, Signature, SignedSentence, Term, Type};

fn sig(consts: &[&str]) -> Signature {
    let mut s = Signature::new().with("p", Type::prop()).with("q", Type::prop()).with("r", Type::prop());
    for c in consts {
        s = s.with(c, Type::prop().property());
    }
    s
}

/// The extension of the goal listed member by member, with binder `z` and
/// witness constants `c`.
fn extended(z: &str, c: [&str; 3], sig: &Signature) -> Sequent {
    let top = "(bot sub bot)";
    let mut text = Vec::new();
    for (i, (x, y)) in [("p", "q"), ("q", "r"), ("r", "p")].into_iter().enumerate() {
        let ci = c[i];
        let body = format!("(lam {z}:<<>> . {z} {x} sub {z} {y})");
        let all = format!("(lam {z}:<<>> . {top})");
        text.push(format!("R: {all} sub {body}"));
        text.push(format!("L: {all} {ci}"));
        text.push(format!("R: {body} {ci}"));
        text.push(format!("R: {ci} {x} sub {ci} {y}"));
        text.push(format!("L: {ci} {x}"));
        text.push(format!("R: {ci} {y}"));
    }
    text.push(format!("L: {top}"));
    let mut seq = Sequent::new();
    for line in text {
        let (sign, body) = line.split_once(": ").unwrap();
        let t = parse_term(body, sig).unwrap();
        let sign = if sign == "L" { Sign::L } else { Sign::R };
        seq.insert(SignedSentence::new(sign, t).unwrap());
    }
    seq
}

fn with_right_bottom(s: &Sequent) -> Sequent {
    s.with(SignedSentence::r(Term::bottom()))
}

#[test]
fn listed_extension_has_nineteen_members() {
    let s = sig(&["c1", "c2", "c3"]);
    assert_eq!(extended("z", ["c1", "c2", "c3"], &s).len(), 19);
}

#[test]
fn listed_extension_lacks_only_right_bottom() {
    let s = sig(&["c1", "c2", "c3"]);
    let g = extended("z", ["c1", "c2", "c3"], &s);
    let r = check_hintikka(&g, Some(&s));
    assert_eq!(r.violations.len(), 1, "{r}");
    let v = &r.violations[0];
    assert_eq!(v.clause, 5);
    assert_eq!(v.member.to_string(), "L: bot sub bot");
    assert_eq!(v.missing, vec![SignedSentence::r(Term::bottom())]);
    assert!(check_hintikka(&with_right_bottom(&g), Some(&s)).is_hintikka());
}

#[test]
fn saturation_reaches_the_repaired_extension() {
    let s = sig(&[]);
    let goal = parse_sequent("=> p = q, q = r, r = p", &s).unwrap();
    let run = prove_in(&s, &goal, &Theory::empty(""), &SearchBudget::default());
    let SearchOutcome::OpenBranch(branch, report) = run.outcome else { panic!("expected an open branch") };
    assert!(report.violations.is_empty());
    assert_eq!(report.fresh_constants.len(), 3);
    let fresh: Vec<&str> = report.fresh_constants.iter().map(String::as_str).collect();
    let full = sig(&fresh);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let found = perms.iter().any(|p| {
        let expected = with_right_bottom(&extended("%z", [fresh[p[0]], fresh[p[1]], fresh[p[2]]], &full));
        expected == branch
    });
    assert!(found, "{branch:?}");
}

#[test]
fn countermodel_separates_the_propositions() {
    let s = sig(&["c1", "c2", "c3"]);
    let g = with_right_bottom(&extended("z", ["c1", "c2", "c3"], &s));
    let m = build_countermodel(&g, &s).unwrap();
    let goal = parse_sequent("=> p = q, q = r, r = p", &s).unwrap();
    assert!(m.refutes(&goal).unwrap());
    let props: Vec<usize> = ["p", "q", "r"].iter().map(|c| m.constants()[*c]).collect();
    assert_eq!(props.iter().collect::<BTreeSet<_>>().len(), 3);
    let dom = m.domain(&Type::prop());
    let sim = similarity(&m, &Type::prop());
    let at = |t: usize| dom.iter().position(|d| *d == t).unwrap();
    for &a in &props {
        for &b in &props {
            if a != b {
                assert!(!sim[at(a)][at(b)]);
            }
        }
    }
    let n = normalize_model(&m, &goal.iter().map(|s| s.sentence.clone()).collect::<Vec<_>>()).unwrap();
    assert!(n.refutes(&goal).unwrap());
    assert!(is_normal(&n));
}
