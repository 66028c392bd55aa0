use std::time::Instant;

use itl::fragment::{fragment_entails, fragment_signature, parse_structure, postulate_set, sentence_translations};
use itl::models::check_hintikka;
use itl::prover::{SearchBudget, Verdict};
use itl::{parse_term, Sequent, Sign, SignedSentence, Term};

const CONDITIONAL: &str = "[[[no man]laughs][if[[some unicorn]runs]]]";
const CONTRAPOSED: &str = "[[[no unicorn]runs][if[[some man]laughs]]]";

fn knows(s: &str) -> String {
    format!("[[every man][knows{s}]]")
}

fn reading(s: &str) -> Term {
    let r = sentence_translations(&parse_structure(s).unwrap());
    assert_eq!(r.len(), 1, "{s}");
    r.into_iter().next().unwrap()
}

fn query(premises: &[&str], conclusion: &str, posts: &str) -> Verdict {
    let ps: Vec<_> = premises.iter().map(|p| parse_structure(p).unwrap()).collect();
    let start = Instant::now();
    let v = fragment_entails(
        &ps,
        &parse_structure(conclusion).unwrap(),
        &postulate_set(posts).unwrap(),
        &SearchBudget::default(),
    )
    .unwrap();
    eprintln!("{} <- {:?}: {} in {:?}", conclusion, premises, v.label(), start.elapsed());
    v
}

#[test]
fn contraposed_conditionals_entail_each_other() {
    assert!(matches!(query(&[CONDITIONAL], CONTRAPOSED, "lambda-conv"), Verdict::Yes(_)));
    assert!(matches!(query(&[CONTRAPOSED], CONDITIONAL, "lambda-conv"), Verdict::Yes(_)));
}

#[test]
fn identity_of_names_transfers_predicates() {
    let v = query(&["[Tully runs]", "[Tully [is Cicero]]"], "[Cicero runs]", "names");
    assert!(matches!(v, Verdict::Yes(_)));
}

#[test]
fn knowledge_is_not_closed_under_equivalence() {
    let (a, c) = (knows(CONDITIONAL), knows(CONTRAPOSED));
    assert_ne!(reading(&a), reading(&c));
    match query(&[&a], &c, "lambda-conv") {
        Verdict::No(cert) => assert!(cert.is_validated(), "{:?}", cert.model_error),
        other => panic!("{}", other.label()),
    }
}

#[test]
fn belief_is_opaque_for_coreferring_names() {
    let v = query(
        &["[Tully [is Cicero]]", "[Ann [believes [Tully runs]]]"],
        "[Ann [believes [Cicero runs]]]",
        "names + lambda-conv",
    );
    match v {
        Verdict::No(cert) => assert!(cert.is_validated(), "{:?}", cert.model_error),
        other => panic!("{}", other.label()),
    }
}

#[test]
fn knowledge_of_one_conditional_is_a_hintikka_sequent() {
    let mut sig = fragment_signature();
    sig.declare("c", itl::Type::basic("e")).unwrap();
    let c = parse_term("c", &sig).unwrap();
    let know = parse_term("know", &sig).unwrap();
    let at = |s: &str| Term::apps(know.clone(), [c.clone(), reading(s)]).unwrap();
    let seq: Sequent = [
        SignedSentence { sign: Sign::L, sentence: at(CONDITIONAL) },
        SignedSentence { sign: Sign::R, sentence: at(CONTRAPOSED) },
    ]
    .into_iter()
    .collect();
    assert!(check_hintikka(&seq, Some(&sig)).is_hintikka());
}

#[test]
fn quantified_knowledge_sequent_lacks_a_witness() {
    let seq: Sequent = [
        SignedSentence { sign: Sign::L, sentence: reading(&knows(CONDITIONAL)) },
        SignedSentence { sign: Sign::R, sentence: reading(&knows(CONTRAPOSED)) },
    ]
    .into_iter()
    .collect();
    let r = check_hintikka(&seq, Some(&fragment_signature()));
    assert_eq!(r.clauses_violated(), [6].into());
}
