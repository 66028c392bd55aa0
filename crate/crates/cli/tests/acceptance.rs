//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Library checks call `itl` directly; command-line checks drive
//! the built binary.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use itl::calculus::{check_proof, expand_derived, RuleId};
use itl::fragment::{fragment_entails, fragment_signature, parse_structure, postulate_set, sentence_translations};
use itl::models::{
    atomic_extensionality, check_hintikka, extensional_model, intensional_model, is_normal, normalize_model,
    sample_signature, similarity, Assignment, FiniteModel,
};
use itl::prover::{SearchBudget, Verdict};
use itl::worlds::{goal_corpus, worlds_model};
use itl::{parse_term, print_term, Sequent, Sign, SignedSentence, Term, Type};

use support::*;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("itl-acceptance-{}", std::process::id())).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn itl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itl")).args(args).output().expect("run itl")
}

/// Structured report of one invocation, and its exit code.
fn itl_json(args: &[&str]) -> Result<(i32, Value), String> {
    let mut full = args.to_vec();
    full.extend(["--format", "structured", "--no-timestamp"]);
    let out = itl(&full);
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: {e}; stderr: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((code, v))
}

fn soundness() -> Outcome {
    let mut r = rng(101);
    let proofs = proof_corpus(50, &mut r);
    for (seq, p, sig) in &proofs {
        check_proof(p, sig).map_err(|e| format!("{}: {e}", show(seq)))?;
    }
    let (mut pairs, mut refuted) = (0, Vec::new());
    for _ in 0..100 {
        let mut m = random_model_for(&mut r);
        for (seq, _, _) in &proofs {
            match refutes(&mut m, seq, &mut r) {
                Some(true) => refuted.push(show(seq)),
                Some(false) => pairs += 1,
                None => {}
            }
        }
    }
    ensure(refuted.is_empty(), || format!("refuted: {refuted:?}"))?;
    ensure(pairs > 0, || "no evaluable pairs".into())?;
    Ok(format!("100 models x {} proofs, {pairs} evaluable pairs, 0 refuted", proofs.len()))
}

fn value_facts_suite() -> Outcome {
    let mut r = rng(202);
    let mut tally = FactTally::default();
    for _ in 0..100 {
        let mut m = random_model_for(&mut r);
        for _ in 0..4 {
            value_facts(&mut m, &mut r, &mut tally);
        }
    }
    ensure(tally.violations.is_empty(), || format!("{:?}", tally.violations))?;
    ensure(tally.total() >= 1000, || format!("only {} probes", tally.total()))?;
    ensure((1..=6).all(|i| tally.probes.get(&i).copied().unwrap_or(0) > 0), || format!("{:?}", tally.probes))?;
    Ok(format!("100 models, {} probes {:?}, 0 violations", tally.total(), tally.probes))
}

const THREE: &str = "const p : <>\nconst q : <>\nconst r : <>\n";

const SATURATED: &str = "const c1 : <<>>
const c2 : <<>>
const c3 : <<>>
(lam z:<<>> . top) c1, top, c1 p, (lam z:<<>> . top) c2, c2 q, (lam z:<<>> . top) c3, c3 r
  => (lam z:<<>> . top) sub (lam z:<<>> . z p sub z q), (lam z:<<>> . z p sub z q) c1, c1 p sub c1 q, c1 q,
     (lam z:<<>> . top) sub (lam z:<<>> . z q sub z r), (lam z:<<>> . z q sub z r) c2, c2 q sub c2 r, c2 r,
     (lam z:<<>> . top) sub (lam z:<<>> . z r sub z p), (lam z:<<>> . z r sub z p) c3, c3 r sub c3 p, c3 p";

fn pairwise_dissimilar(m: &FiniteModel, names: &[&str]) -> Result<(), String> {
    let prop = Type::prop();
    let dom = m.domain(&prop);
    let sim = similarity(m, &prop);
    let at = |t| dom.iter().position(|d| *d == t).unwrap();
    let toks: Vec<_> =
        names.iter().map(|n| m.constants().get(*n).copied().ok_or(format!("{n} unbound"))).collect::<Result<_, _>>()?;
    for (i, a) in toks.iter().enumerate() {
        for b in &toks[i + 1..] {
            ensure(!sim[at(*a)][at(*b)], || format!("tokens {a} and {b} are similar"))?;
        }
    }
    Ok(())
}

fn three_equations() -> Outcome {
    let dir = scratch("three");
    let plain = dir.join("saturated.seq");
    let repaired = dir.join("repaired.seq");
    fs::write(&plain, format!("{THREE}{SATURATED}\n")).unwrap();
    fs::write(&repaired, format!("{THREE}{SATURATED}, bot\n")).unwrap();

    let (code, v) = itl_json(&["hintikka-check", plain.to_str().unwrap()])?;
    let expected = serde_json::json!(["clause 5 at L: bot sub bot; missing R: bot"]);
    ensure(code == 1 && v["violations"] == expected, || format!("verbatim: exit {code}, {}", v["violations"]))?;
    let (code, v) = itl_json(&["hintikka-check", repaired.to_str().unwrap()])?;
    ensure(code == 0 && v["violations"] == serde_json::json!([]), || {
        format!("repaired: exit {code}, {}", v["violations"])
    })?;

    let goal = dir.join("goal.seq");
    let model = dir.join("model.json");
    fs::write(&goal, format!("{THREE}=> p = q, q = r, r = p\n")).unwrap();
    let (code, v) = itl_json(&["refute", goal.to_str().unwrap(), "--out", model.to_str().unwrap()])?;
    ensure(code == 0, || format!("refute: exit {code}, {v}"))?;
    let m = FiniteModel::from_json(&fs::read_to_string(&model).unwrap()).map_err(|e| e.to_string())?;
    ensure(m.refutes(&itl::parse_sequent("=> p = q, q = r, r = p", &sample_signature()).unwrap()).unwrap(), || {
        "written model does not refute the goal".into()
    })?;
    pairwise_dissimilar(&m, &["p", "q", "r"])?;
    let (code, _) = itl_json(&["model-eval", model.to_str().unwrap()])?;
    ensure(code == 0, || format!("model-eval: exit {code}"))?;
    let (code, _) = itl_json(&["model-eval", model.to_str().unwrap(), goal.to_str().unwrap()])?;
    ensure(code == 0, || format!("model-eval on goal: exit {code}"))?;
    Ok(format!("one clause-5 violation, repaired sequent clean, {} prop classes", v["prop-classes"]))
}

fn extensionality_independence() -> Outcome {
    let probes = atomic_extensionality(&sample_signature(), &Type::prop());
    let a = Assignment::new();
    let ext = extensional_model().map_err(|e| e.to_string())?;
    let int = intensional_model().map_err(|e| e.to_string())?;
    for (name, m) in [("extensional", &ext), ("intensional", &int)] {
        let report = m.check(&probes);
        ensure(report.is_ok() && report.escapes.is_empty(), || format!("{name}: {report}"))?;
    }
    ensure(probes.iter().all(|p| ext.holds(&a, p).unwrap()), || "extensional model fails an instance".into())?;
    let failing = probes.iter().filter(|p| !int.holds(&a, p).unwrap()).count();
    ensure(failing > 0, || "intensional model satisfies every instance".into())?;

    let dir = scratch("ext");
    let goal = dir.join("goal.seq");
    fs::write(&goal, "const p : <>\nconst q : <>\np <-> q => p = q\n").unwrap();
    let (code, v) = itl_json(&["refute", goal.to_str().unwrap()])?;
    ensure(code == 0, || format!("refute: exit {code}, {v}"))?;
    Ok(format!("{} instances hold in one model, {failing} fail in the other; p <-> q => p = q refuted", probes.len()))
}

fn derived_rules() -> Outcome {
    let sig = signature().with("c", e());
    let instances = derived_instances();
    for rule in RuleId::DERIVED {
        let n = instances.iter().filter(|(r, _)| *r == rule).count();
        ensure(n >= 2, || format!("{rule}: {n} instances"))?;
    }
    for (rule, p) in &instances {
        let base = expand_derived(p, &signature()).map_err(|e| format!("{rule}: {e}"))?;
        ensure(!base.uses_derived() && base.conclusion == p.conclusion, || format!("{rule}: bad expansion"))?;
        check_proof(&base, &sig).map_err(|e| format!("{rule}: {e}"))?;
    }
    Ok(format!("{} instances over {} rules", instances.len(), RuleId::DERIVED.len()))
}

fn normalisation() -> Outcome {
    let mut r = rng(606);
    let a = Assignment::new();
    let mut probes_kept = 0;
    for i in 0..20 {
        let mut m = small_model_for(&mut r);
        let d = m.constants()["a"];
        let copy = duplicate_basic(&mut m, d);
        m.bind_constant("b", copy);
        let probes: Vec<Term> = {
            let mut g = TermGen::new(&mut r);
            (0..6).map(|_| g.formula(2, &[])).collect()
        };
        let kept: Vec<(Term, bool)> =
            probes.iter().filter_map(|p| truth(&mut m, &a, p, &mut r).map(|v| (p.clone(), v))).collect();
        let sentences: Vec<Term> = kept.iter().map(|(p, _)| p.clone()).collect();
        let n = normalize_model(&m, &sentences).map_err(|e| format!("model {i}: {e}"))?;
        ensure(is_normal(&n), || format!("model {i}: not normal"))?;
        ensure(n.tokens().len() < m.tokens().len(), || format!("model {i}: nothing merged"))?;
        for (p, v) in &kept {
            ensure(n.holds(&a, p) == Ok(*v), || format!("model {i}: {p} changed"))?;
        }
        probes_kept += kept.len();
    }
    Ok(format!("20 models, {probes_kept} probes preserved"))
}

const CONDITIONAL: &str = "[[[no man]laughs][if[[some unicorn]runs]]]";
const CONTRAPOSED: &str = "[[[no unicorn]runs][if[[some man]laughs]]]";

fn knows(s: &str) -> String {
    format!("[[every man][knows{s}]]")
}

fn entail(premises: &[&str], conclusion: &str, posts: &str) -> Result<(Verdict, Duration), String> {
    let ps = premises.iter().map(|p| parse_structure(p)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let c = parse_structure(conclusion).map_err(|e| e.to_string())?;
    let th = postulate_set(posts).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let v = fragment_entails(&ps, &c, &th, &SearchBudget::default()).map_err(|e| e.to_string())?;
    Ok((v, start.elapsed()))
}

fn co_entailment() -> Outcome {
    let mut detail = Vec::new();
    for (label, ps, c, posts) in [
        ("conditional to contraposed", vec![CONDITIONAL], CONTRAPOSED, "lambda-conv"),
        ("contraposed to conditional", vec![CONTRAPOSED], CONDITIONAL, "lambda-conv"),
        ("tully/cicero", vec!["[Tully runs]", "[Tully [is Cicero]]"], "[Cicero runs]", "names"),
    ] {
        let (v, took) = entail(&ps, c, posts)?;
        ensure(matches!(v, Verdict::Yes(_)), || format!("{label}: {}", v.label()))?;
        ensure(took < Duration::from_secs(60), || format!("{label}: {took:?}"))?;
        detail.push(format!("{label} {:.2}s", took.as_secs_f64()));
    }
    Ok(detail.join(", "))
}

fn reading(s: &str) -> Result<Term, String> {
    let r = sentence_translations(&parse_structure(s).map_err(|e| e.to_string())?);
    ensure(r.len() == 1, || format!("{s}: {} readings", r.len()))?;
    Ok(r.into_iter().next().unwrap())
}

fn omniscience() -> Outcome {
    let mut sig = fragment_signature();
    sig.declare("c", Type::basic("e")).unwrap();
    let c = parse_term("c", &sig).unwrap();
    let know = parse_term("know", &sig).unwrap();
    let at = |s: &str| -> Result<Term, String> {
        Term::apps(know.clone(), [c.clone(), reading(s)?]).map_err(|e| e.to_string())
    };
    let seq: Sequent = [
        SignedSentence { sign: Sign::L, sentence: at(CONDITIONAL)? },
        SignedSentence { sign: Sign::R, sentence: at(CONTRAPOSED)? },
    ]
    .into_iter()
    .collect();
    let r = check_hintikka(&seq, Some(&sig));
    ensure(r.is_hintikka(), || format!("fixed-agent knowledge sequent: {r}"))?;

    // The quantified sequent itself needs a witness for the universal on the right.
    let quantified: Sequent = [
        SignedSentence { sign: Sign::L, sentence: reading(&knows(CONDITIONAL))? },
        SignedSentence { sign: Sign::R, sentence: reading(&knows(CONTRAPOSED))? },
    ]
    .into_iter()
    .collect();
    let quantified_clauses = check_hintikka(&quantified, Some(&fragment_signature())).clauses_violated();

    let (v, _) = entail(&[&knows(CONDITIONAL)], &knows(CONTRAPOSED), "lambda-conv")?;
    match v {
        Verdict::No(cert) => ensure(cert.is_validated(), || format!("knows: {:?}", cert.model_error))?,
        other => return Err(format!("knows: {}", other.label())),
    }
    let (v, _) = entail(
        &["[Tully [is Cicero]]", "[Ann [believes [Tully runs]]]"],
        "[Ann [believes [Cicero runs]]]",
        "names + lambda-conv",
    )?;
    match v {
        Verdict::No(cert) => ensure(cert.is_validated(), || format!("believes: {:?}", cert.model_error))?,
        other => return Err(format!("believes: {}", other.label())),
    }

    let (code, v) = itl_json(&[
        "entail",
        "--premise",
        &knows(CONDITIONAL),
        "--conclusion",
        &knows(CONTRAPOSED),
        "--theory",
        "lambda-conv",
    ])?;
    ensure(code == 1 && v["certificate"] == "validated-model", || {
        format!("cli entail: exit {code}, {}", v["certificate"])
    })?;
    Ok(format!(
        "fixed-agent knowledge sequent is Hintikka (quantified form violates clauses {quantified_clauses:?}); both pairs refuted by validated models"
    ))
}

fn worlds() -> Outcome {
    let m = worlds_model().map_err(|e| e.to_string())?;
    let a = Assignment::new();
    let (mut validated, mut scripted) = (0, 0);
    for g in goal_corpus() {
        let tags: Vec<_> = g.kinds.iter().map(|k| k.tag()).collect();
        if tags.contains(&"model-validate") {
            let probes: Vec<Term> = g.premises.iter().cloned().chain([g.conclusion.clone()]).collect();
            ensure(probes.iter().all(|p| m.holds(&a, p) == Ok(true)), || format!("{}: fails in the model", g.name))?;
            let report = m.check(&probes);
            ensure(report.is_ok(), || format!("{}: {report}", g.name))?;
            validated += 1;
        }
        if tags.contains(&"check-script") {
            let (proof, sig) =
                g.script().ok_or(format!("{}: no script", g.name))?.map_err(|e| format!("{}: {e}", g.name))?;
            ensure(proof.conclusion == g.sequent(), || format!("{}: wrong conclusion", g.name))?;
            check_proof(&proof, &sig).map_err(|e| format!("{}: {e}", g.name))?;
            scripted += 1;
        }
    }
    ensure(validated > 0 && scripted >= 3, || format!("{validated} validated, {scripted} scripted"))?;
    let (code, v) = itl_json(&["worlds-goals", "--run"])?;
    ensure(code == 0, || format!("worlds-goals --run: exit {code}, {}", v["verdict"]))?;
    Ok(format!("{validated} model-validate goals, {scripted} check-script proofs"))
}

/// File name to contents for every file under `dir`.
fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn suite_run(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let inputs = dir.join("in");
    let outs = dir.join("out");
    fs::create_dir_all(&inputs).unwrap();
    fs::create_dir_all(&outs).unwrap();
    let s = |p: PathBuf| p.to_str().unwrap().to_string();
    let sat = s(inputs.join("saturated.seq"));
    let goal = s(inputs.join("goal.seq"));
    let taut = s(inputs.join("taut.seq"));
    fs::write(&sat, format!("{THREE}{SATURATED}\n")).unwrap();
    fs::write(&goal, format!("{THREE}=> p = q, q = r, r = p\n")).unwrap();
    fs::write(&taut, "const p : <>\nconst q : <>\np & q => q & p\n").unwrap();
    let corpus = format!("{}/data/corpus.json", env!("CARGO_MANIFEST_DIR"));
    let runs: Vec<(&str, Vec<String>)> = vec![
        ("prove", vec!["prove".into(), taut.clone(), "--out".into(), s(outs.join("taut.proof.json"))]),
        ("refute", vec!["refute".into(), goal.clone(), "--out".into(), s(outs.join("three.json"))]),
        ("hintikka", vec!["hintikka-check".into(), sat]),
        (
            "entail",
            vec![
                "entail".into(),
                "--premise".into(),
                knows(CONDITIONAL),
                "--conclusion".into(),
                knows(CONTRAPOSED),
                "--theory".into(),
                "lambda-conv".into(),
                "--out".into(),
                s(outs.join("knows.json")),
            ],
        ),
        ("worlds", vec!["worlds-goals".into(), "--run".into(), "--out".into(), s(outs.join("worlds"))]),
        ("corpus", vec!["corpus".into(), corpus]),
    ];
    let mut reports = BTreeMap::new();
    for (name, args) in runs {
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.extend(["--format", "structured", "--no-timestamp"]);
        reports.insert(format!("report/{name}"), itl(&args).stdout);
    }
    reports.extend(snapshot(&outs).into_iter().map(|(k, v)| (format!("out/{k}"), v)));
    reports
}

fn round_trip_and_determinism() -> Outcome {
    let mut r = rng(1010);
    let mut g = TermGen::new(&mut r);
    let sig = signature();
    for i in 0..200 {
        let t = g.any_closed(3);
        let text = print_term(&t);
        let back = parse_term(&text, &sig).map_err(|e| format!("term {i}: {text}: {e}"))?;
        ensure(back == t && print_term(&back) == text, || format!("term {i}: {text}"))?;
    }

    let dir = scratch("determinism");
    let first = suite_run(&dir);
    fs::remove_dir_all(&dir).unwrap();
    fs::create_dir_all(&dir).unwrap();
    let second = suite_run(&dir);
    ensure(first.keys().eq(second.keys()), || "different artifact sets".into())?;
    let differing: Vec<_> = first.iter().filter(|(k, v)| second[*k] != **v).map(|(k, _)| k.clone()).collect();
    ensure(differing.is_empty(), || format!("differ: {differing:?}"))?;
    ensure(first.values().all(|v| !v.is_empty()), || "empty report".into())?;
    Ok(format!("200 terms round-trip; {} reports and artifacts byte-identical across two runs", first.len()))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "kernel soundness", limit: Duration::from_secs(60), run: soundness },
    Criterion { id: 2, name: "value facts", limit: Duration::from_secs(120), run: value_facts_suite },
    Criterion { id: 3, name: "three equations", limit: Duration::from_secs(10), run: three_equations },
    Criterion {
        id: 4,
        name: "extensionality independence",
        limit: Duration::from_secs(10),
        run: extensionality_independence,
    },
    Criterion { id: 5, name: "derived rules", limit: Duration::from_secs(5), run: derived_rules },
    Criterion { id: 6, name: "normalisation", limit: Duration::from_secs(30), run: normalisation },
    Criterion { id: 7, name: "fragment co-entailment", limit: Duration::from_secs(180), run: co_entailment },
    Criterion { id: 8, name: "logical omniscience", limit: Duration::from_secs(120), run: omniscience },
    Criterion { id: 9, name: "worlds corpus", limit: Duration::from_secs(60), run: worlds },
    Criterion { id: 10, name: "round trip and determinism", limit: Duration::MAX, run: round_trip_and_determinism },
];

fn main() {
    let failed = std::thread::Builder::new()
        .stack_size(1 << 30)
        .spawn(|| {
            let mut failed = 0;
            for c in &CRITERIA {
                let start = Instant::now();
                let outcome = (c.run)();
                let took = start.elapsed();
                let outcome = outcome.and_then(|d| {
                    ensure(took < c.limit, || format!("took {took:.1?}, limit {:?}", c.limit)).map(|_| d)
                });
                let (tag, detail) = match &outcome {
                    Ok(d) => ("PASS", d),
                    Err(e) => ("FAIL", e),
                };
                failed += usize::from(outcome.is_err());
                println!("criterion {:>2} {tag} {:<28} {:>7.2}s  {detail}", c.id, c.name, took.as_secs_f64());
            }
            failed
        })
        .unwrap()
        .join()
        .unwrap();
    let _ = fs::remove_dir_all(std::env::temp_dir().join(format!("itl-acceptance-{}", std::process::id())));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
