use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context as _, Result};
use serde_json::{json, Value};

use itl::calculus::{check_proof, proof_from_json, proof_to_json, Proof, Theory};
use itl::fragment::{self, fragment_entails, parse_structure};
use itl::models::{
    build_countermodel, check_hintikka, is_normal, normalize_model, sequent_signature, similarity, Assignment,
    FiniteModel,
};
use itl::prover::{entails, goal_signature, prove_in, SearchOutcome, SearchRun, Verdict};
use itl::worlds::{corpus_signature, goal_corpus, worlds_model, GoalKind, WorldGoal};
use itl::{parse_sentence, parse_sequent, parse_term, print_term, Sequent, Signature, Term, Type};

use crate::input::{load_model, model_signature, read, split_declarations, Common, Input};
use crate::report::{Format, Report, Status};
use crate::EvalMode;

pub fn check(c: &Common, input: &Input) -> Result<Report> {
    let th = c.theory()?;
    let text = input.text()?;
    let (decls, body) = split_declarations(&text);
    let mut sig = c.signature(&th.signature)?;
    sig.merge(&Signature::parse(&decls)?)?;
    let body = body.trim();
    if body.is_empty() {
        bail!("nothing to check");
    }
    if body.contains("=>") {
        let seq = parse_sequent(body, &sig)?;
        Ok(Report::new("check", Status::Achieved, "well-typed sequent")
            .with("canonical", seq.print())
            .with("members", seq.len()))
    } else {
        let t = parse_term(body, &sig)?;
        let ty = t.ty();
        Ok(Report::new("check", Status::Achieved, "well-typed term")
            .with("canonical", print_term(&t))
            .with("type", ty.to_string()))
    }
}

/// The goal, its theory and the signature the search runs in.
fn goal(c: &Common, input: &Input) -> Result<(Sequent, Theory, Signature)> {
    let th = c.theory()?;
    let (seq, parsed) = c.sequent(input, &th.signature)?;
    let mut sig = goal_signature(&seq, &th);
    sig.merge(&parsed)?;
    Ok((seq, th, sig))
}

fn stats_fields(r: &mut Report, run: &SearchRun) {
    r.push("nodes", run.stats.nodes);
    r.push("splits", run.stats.splits);
    r.push("instantiations", run.stats.instantiation_count);
    r.push("axiom-instances", run.stats.axiom_instances);
}

fn write_out(c: &Common, r: &mut Report, text: &str) -> Result<()> {
    if let Some(p) = &c.out {
        std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
        r.push("wrote", p.display().to_string());
    }
    Ok(())
}

fn proof_fields(r: &mut Report, p: &Proof) {
    r.push("proof-size", p.size());
    r.push("proof-height", p.height());
}

pub fn prove(c: &Common, input: &Input) -> Result<Report> {
    let (seq, th, sig) = goal(c, input)?;
    let run = prove_in(&sig, &seq, &th, &c.budget());
    let mut r = match &run.outcome {
        SearchOutcome::ProofFound(p) => {
            let mut r = Report::new("prove", Status::Achieved, "proof-found");
            proof_fields(&mut r, p);
            write_out(c, &mut r, &proof_to_json(p, &run.signature))?;
            r
        }
        SearchOutcome::OpenBranch(branch, _) => {
            Report::new("prove", Status::Negative, "open-branch").with("branch", branch.pretty())
        }
        SearchOutcome::Exhausted(d) => {
            Report::new("prove", Status::Unknown, "exhausted").with("dimension", d.to_string())
        }
    };
    stats_fields(&mut r, &run);
    Ok(r)
}

pub fn saturate(c: &Common, input: &Input) -> Result<Report> {
    let (seq, th, sig) = goal(c, input)?;
    let run = prove_in(&sig, &seq, &th, &c.budget());
    let mut r = match &run.outcome {
        SearchOutcome::OpenBranch(branch, report) => {
            let mut r = Report::new("saturate", Status::Achieved, "open-branch")
                .with("branch", branch.pretty())
                .with("saturation", serde_json::to_value(report)?);
            write_out(c, &mut r, &report.to_json())?;
            r
        }
        SearchOutcome::ProofFound(p) => {
            let mut r = Report::new("saturate", Status::Negative, "proof-found");
            proof_fields(&mut r, p);
            r
        }
        SearchOutcome::Exhausted(d) => {
            Report::new("saturate", Status::Unknown, "exhausted").with("dimension", d.to_string())
        }
    };
    stats_fields(&mut r, &run);
    Ok(r)
}

/// Sequent text given inline or as a path.
fn goal_text(s: &str) -> Result<String> {
    let p = Path::new(s);
    if !s.contains("=>") && p.is_file() {
        read(p)
    } else {
        Ok(s.to_string())
    }
}

pub fn verify_proof(c: &Common, path: &Path, goal: Option<&str>) -> Result<Report> {
    let (proof, psig) = proof_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let mut sig = c.signature(&psig)?;
    if let Err(e) = check_proof(&proof, &sig) {
        return Ok(Report::new("verify-proof", Status::Negative, "rejected").with("rejection", e.to_string()));
    }
    let mut r = Report::new("verify-proof", Status::Achieved, "accepted");
    proof_fields(&mut r, &proof);
    r.push("conclusion-members", proof.conclusion.len());
    if let Some(g) = goal {
        let (decls, body) = split_declarations(&goal_text(g)?);
        sig.merge(&Signature::parse(&decls)?)?;
        let goal = parse_sequent(body.trim(), &sig)?;
        let extra = proof.conclusion.difference(&goal);
        if !goal.is_subset(&proof.conclusion) {
            let missing: Vec<String> = goal.difference(&proof.conclusion).iter().map(|s| s.to_string()).collect();
            return Ok(Report::new("verify-proof", Status::Negative, "different-conclusion").with("missing", missing));
        }
        if extra.right().next().is_some() {
            let more: Vec<String> = extra.right().map(print_term).collect();
            return Ok(Report::new("verify-proof", Status::Negative, "weaker-conclusion").with("extra-right", more));
        }
        if !extra.is_empty() {
            r.push("assumptions", extra.left().map(print_term).collect::<Vec<_>>());
        }
    }
    Ok(r)
}

fn model_report_fields(r: &mut Report, m: &FiniteModel, probes: &[Term]) -> bool {
    let report = m.check(probes);
    r.push("tokens", m.tokens().len());
    r.push("probe-subterms", report.probes_checked);
    if !report.violations.is_empty() {
        r.push("violations", report.violations.clone());
    }
    if !report.escapes.is_empty() {
        r.push("escapes", report.escapes.clone());
    }
    report.is_ok()
}

pub fn model_eval(c: &Common, path: &Path, input: &Input, mode: EvalMode) -> Result<Report> {
    let m = load_model(path)?;
    if !input.is_given() {
        let mut r = Report::new("model-eval", Status::Achieved, "well-formed");
        if !model_report_fields(&mut r, &m, &[]) {
            r.status = Status::Negative;
            r.verdict = "ill-formed".into();
        }
        return Ok(r);
    }
    let (seq, _) = c.sequent(input, &model_signature(&m))?;
    let probes: Vec<Term> = seq.iter().map(|s| s.sentence.clone()).collect();
    let mut r = Report::new("model-eval", Status::Achieved, "");
    let ok = model_report_fields(&mut r, &m, &probes);
    let refuted = match m.refutes(&seq) {
        Ok(b) => b,
        Err(e) => {
            r.status = Status::Unknown;
            r.verdict = "unevaluable".into();
            r.push("error", e.to_string());
            return Ok(r);
        }
    };
    let values: Vec<Value> = seq
        .iter()
        .map(|s| {
            let v = m.holds(&Assignment::new(), &s.sentence).map(Value::Bool).unwrap_or(Value::Null);
            json!({ "member": s.to_string(), "true": v })
        })
        .collect();
    r.push("values", values);
    r.verdict = if refuted { "refuted" } else { "satisfied" }.into();
    let wanted = match mode {
        EvalMode::Refute => refuted,
        EvalMode::Satisfy => !refuted,
    };
    if !(ok && wanted) {
        r.status = Status::Negative;
    }
    Ok(r)
}

/// Number of pairwise dissimilar tokens of a type.
fn classes(m: &FiniteModel, ty: &Type) -> usize {
    let s = similarity(m, ty);
    (0..s.len()).filter(|&i| (0..i).all(|j| !s[i][j])).count()
}

pub fn refute(c: &Common, input: &Input) -> Result<Report> {
    let (seq, th, sig) = goal(c, input)?;
    let run = prove_in(&sig, &seq, &th, &c.budget());
    let mut r = match &run.outcome {
        SearchOutcome::ProofFound(p) => {
            let mut r = Report::new("refute", Status::Negative, "proof-found");
            proof_fields(&mut r, p);
            r
        }
        SearchOutcome::Exhausted(d) => {
            Report::new("refute", Status::Unknown, "exhausted").with("dimension", d.to_string())
        }
        SearchOutcome::OpenBranch(branch, _) => match build_countermodel(branch, &run.signature) {
            Err(e) => Report::new("refute", Status::Unknown, "no-model").with("error", e.to_string()),
            Ok(m) => {
                let probes: Vec<Term> = branch.iter().map(|s| s.sentence.clone()).collect();
                let mut r = Report::new("refute", Status::Achieved, "refuted");
                let ok = model_report_fields(&mut r, &m, &probes);
                let refutes = m.refutes(&seq).unwrap_or(false) && m.refutes(branch).unwrap_or(false);
                r.push("prop-classes", classes(&m, &Type::prop()));
                if ok && refutes {
                    write_out(c, &mut r, &m.to_json())?;
                } else {
                    r.status = Status::Unknown;
                    r.verdict = "model-invalid".into();
                }
                r
            }
        },
    };
    stats_fields(&mut r, &run);
    Ok(r)
}

pub fn hintikka_check(c: &Common, input: &Input) -> Result<Report> {
    let th = c.theory()?;
    let (seq, sig) = c.sequent(input, &th.signature)?;
    let report = check_hintikka(&seq, Some(&sig));
    let checks: BTreeMap<String, usize> = report.checks.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let (status, verdict) =
        if report.is_hintikka() { (Status::Achieved, "hintikka") } else { (Status::Negative, "not-hintikka") };
    let mut r = Report::new("hintikka-check", status, verdict).with("clause-checks", serde_json::to_value(checks)?);
    r.push("violations", report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    Ok(r)
}

pub fn normalize(c: &Common, path: &Path, probes: &Input) -> Result<Report> {
    let m = load_model(path)?;
    let probes: Vec<Term> = if probes.is_given() {
        let (seq, _) = c.sequent(probes, &model_signature(&m))?;
        seq.iter().map(|s| s.sentence.clone()).collect()
    } else {
        Vec::new()
    };
    match normalize_model(&m, &probes) {
        Err(e) => Ok(Report::new("normalize-model", Status::Negative, "incoherent").with("error", e.to_string())),
        Ok(n) => {
            let normal = is_normal(&n);
            let mut r = Report::new("normalize-model", if normal { Status::Achieved } else { Status::Negative }, "")
                .with("tokens-before", m.tokens().len())
                .with("tokens-after", n.tokens().len());
            r.verdict = if normal { "normal" } else { "not-normal" }.into();
            if normal {
                write_out(c, &mut r, &n.to_json())?;
            }
            Ok(r)
        }
    }
}

pub fn translate(_c: &Common, input: &Input) -> Result<Report> {
    let text = input.text()?;
    let mut out = Vec::new();
    let mut status = Status::Achieved;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let s = parse_structure(line).with_context(|| format!("in `{line}`"))?;
        let readings: Vec<String> = fragment::translate(&s).iter().map(print_term).collect();
        if readings.is_empty() {
            status = Status::Negative;
        }
        out.push(json!({ "structure": line, "readings": readings }));
    }
    let verdict = if status == Status::Achieved { "translated" } else { "untranslatable" };
    Ok(Report::new("translate", status, verdict).with("translations", out))
}

pub fn entail(c: &Common, premises: &[String], conclusion: &str, formulas: bool) -> Result<Report> {
    let th = c.theory()?;
    let budget = c.budget();
    let verdict = if formulas {
        let sig = c.signature(&th.signature)?;
        let ps = premises.iter().map(|p| parse_sentence(p, &sig)).collect::<Result<Vec<_>, _>>()?;
        entails(&ps, &[parse_sentence(conclusion, &sig)?], &th, &budget)
    } else {
        let ps = premises.iter().map(|p| parse_structure(p)).collect::<Result<Vec<_>, _>>()?;
        fragment_entails(&ps, &parse_structure(conclusion)?, &th, &budget)?
    };
    verdict_report(c, verdict)
}

fn verdict_report(c: &Common, v: Verdict) -> Result<Report> {
    Ok(match v {
        Verdict::Yes(p) => {
            let mut r = Report::new("entail", Status::Achieved, "entailed");
            proof_fields(&mut r, &p);
            let mut sig = c.theory()?.signature;
            sig.merge(&sequent_signature(&p.conclusion))?;
            write_out(c, &mut r, &proof_to_json(&p, &sig))?;
            r
        }
        Verdict::No(cert) => {
            let mut r = Report::new("entail", Status::Negative, "not-entailed")
                .with("saturation", serde_json::to_value(&cert.report)?);
            match &cert.model {
                Some(m) => {
                    r.push("certificate", "validated-model");
                    r.push("tokens", m.tokens().len());
                    write_out(c, &mut r, &m.to_json())?;
                }
                None => {
                    r.push("certificate", "open-branch");
                    r.push("model-error", cert.model_error.clone().unwrap_or_default());
                }
            }
            r
        }
        Verdict::Unknown(d) => Report::new("entail", Status::Unknown, "unknown").with("dimension", d.to_string()),
    })
}

/// Outcome of one kind of check on one goal.
fn run_goal_kind(g: &WorldGoal, kind: &GoalKind, c: &Common, model: &FiniteModel) -> Result<bool, String> {
    match kind {
        GoalKind::Prove => {
            let run = prove_in(&corpus_signature(), &g.sequent(), &Theory::empty(""), &c.budget());
            if run.outcome.is_proof() {
                Ok(true)
            } else {
                Err(run.outcome.label().to_string())
            }
        }
        GoalKind::CheckScript(_) => {
            let (proof, sig) = g.script().expect("check-script goal")?;
            if proof.conclusion != g.sequent() {
                return Err("script proves a different sequent".into());
            }
            check_proof(&proof, &sig).map(|_| true).map_err(|e| e.to_string())
        }
        GoalKind::ModelValidate => {
            let a = Assignment::new();
            for s in g.premises.iter().chain([&g.conclusion]) {
                if !model.holds(&a, s).map_err(|e| e.to_string())? {
                    return Err(format!("false in the model: {}", print_term(s)));
                }
            }
            let probes: Vec<Term> = g.premises.iter().cloned().chain([g.conclusion.clone()]).collect();
            let report = model.check(&probes);
            if report.is_ok() {
                Ok(true)
            } else {
                Err(report.violations.join("; "))
            }
        }
    }
}

pub fn worlds_goals(c: &Common, run: bool) -> Result<Report> {
    let goals = goal_corpus();
    let model = worlds_model()?;
    let mut rows = Vec::new();
    let mut failed = 0;
    if let Some(dir) = &c.out {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    for g in &goals {
        let kinds: Vec<&str> = g.kinds.iter().map(|k| k.tag()).collect();
        let mut row = json!({ "goal": g.name, "kinds": kinds });
        if c.format == Format::Structured {
            row["sequent"] = json!(g.sequent().print());
        }
        if run {
            let mut results = serde_json::Map::new();
            for k in &g.kinds {
                let v = match run_goal_kind(g, k, c, &model) {
                    Ok(_) => json!("pass"),
                    Err(e) => {
                        failed += 1;
                        json!(format!("fail: {e}"))
                    }
                };
                results.insert(k.tag().into(), v);
            }
            row["results"] = Value::Object(results);
        }
        if let Some(dir) = &c.out {
            let sig = corpus_signature().to_string();
            let seq = format!("{sig}{}\n", g.sequent().print());
            std::fs::write(dir.join(format!("{}.seq", g.name)), seq)?;
            for k in &g.kinds {
                if let GoalKind::CheckScript(text) = k {
                    std::fs::write(dir.join(format!("{}.proof.json", g.name)), text)?;
                }
            }
        }
        rows.push(row);
    }
    if let Some(dir) = &c.out {
        std::fs::write(dir.join("model.json"), model.to_json())?;
    }
    let r = if !run {
        Report::new("worlds-goals", Status::Achieved, "listed")
    } else if failed == 0 {
        Report::new("worlds-goals", Status::Achieved, "all-passed")
    } else {
        Report::new("worlds-goals", Status::Negative, format!("{failed} failed"))
    };
    Ok(r.with("goals", rows))
}
