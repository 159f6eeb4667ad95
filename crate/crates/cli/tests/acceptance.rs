//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail. The run exits
//! non-zero when the set of failing criteria differs from it.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use modulo_cli::propositional_models;
use modulo_core::corpus::{parse_expr_set, parse_golden, STT_EXPRS_GOLDEN, STT_EXPRS_SRC};
use modulo_core::kernel::{check, is_cut_free, normalize, parse_proof_str, TraceStatus, Q_PROOF_SRC, PROOF_REFL_SRC};
use modulo_core::lang::{parse_prop_str, Expr, Printer, Scope};
use modulo_core::model::{all_structures, check_model, load_structure, CheckLimits, FiniteStructure, DEFAULT_DOMAIN_CAP};
use modulo_core::props::{cut_free_alignment, normalization, soundness, substitution_lemma, PropertyOutcome};
use modulo_core::rewriting::{Budget, Congruence};
use modulo_core::sample::{sample_proofs, SampleConfig};
use modulo_core::theories::{build_stt_model_capped, builtin_by_name, stt_theory, SortDepthBound, BUILTIN_NAMES};
use modulo_core::tva::{
    bool2, heyting_to_tva, members, single_entry_mutations, standard_family, validate_tva, FiniteTva, Witness,
};

/// Criterion 5 asks for a mutation of the two-element algebra that breaks
/// each condition alone. None exists for conditions 2, 3, 14 and 15.
const KNOWN_FAILURES: &[usize] = &[5];

const SEED: u64 = 20240601;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn budget() -> Budget {
    Budget::default()
}

fn outcome(o: &PropertyOutcome) -> Verdict {
    if o.holds() {
        Ok(format!("{}: {} cases", o.property, o.cases))
    } else {
        Err(format!("{}: {} of {} cases fail, e.g. {:?}", o.property, o.failures, o.cases, o.counterexamples.first()))
    }
}

fn c1_q_proof() -> Verdict {
    let t = builtin_by_name("pimpq").unwrap();
    let p = parse_proof_str(t.sig(), Q_PROOF_SRC).map_err(|e| e.to_string())?;
    let r = check(&t, &p, budget());
    if !r.accepted() {
        return Err(format!("rejected: {:?}", r.failures));
    }
    if is_cut_free(&p) {
        return Err("classified cut-free".into());
    }
    let tr = normalize(&t, &p, 100, budget());
    match tr.status {
        TraceStatus::CycleDetected { repeat_index } => {
            Ok(format!("accepted, not cut-free, cycle after {} step(s) back to step {repeat_index}", tr.steps()))
        }
        s => Err(format!("normalize gave {s:?}")),
    }
}

fn c2_contrast_theory() -> Verdict {
    let t = builtin_by_name("qimpp").unwrap();
    let proofs = sample_proofs(&t, SEED, 200, SampleConfig::default());
    if proofs.len() != 200 {
        return Err(format!("only {} proofs sampled", proofs.len()));
    }
    let closed = proofs.iter().filter(|p| p.conclusion.context.is_empty()).count();
    outcome(&normalization(&t, &proofs, 1000, budget())).map(|s| format!("{s} ({closed} closed)"))
}

fn c3_cut_free_alignment() -> Verdict {
    let mut total = 0;
    for (i, name) in BUILTIN_NAMES.iter().enumerate() {
        let t = builtin_by_name(name).unwrap();
        let proofs = sample_proofs(&t, SEED + i as u64, 125, SampleConfig::default());
        total += proofs.len();
        outcome(&cut_free_alignment(&t, &proofs, 1000, budget()))?;
    }
    if total != 500 {
        return Err(format!("only {total} proofs sampled"));
    }
    Ok(format!("{total} proofs over {} theories, no counterexample", BUILTIN_NAMES.len()))
}

fn c4_heyting() -> Verdict {
    let family = standard_family();
    let mut names = Vec::new();
    for (name, h) in &family {
        let t = heyting_to_tva(h).map_err(|e| format!("{name}: {e}"))?;
        let r = validate_tva(&t);
        if !r.all_hold() || r.order.is_none() || r.complete.is_none() {
            return Err(format!("{name}: failing conditions {:?}", r.failing()));
        }
        names.push(format!("{name}({})", t.size()));
    }
    let chains = family.iter().filter(|(n, _)| n.starts_with("chain")).count();
    let lattices = family.len() - chains;
    if chains != 5 || lattices != 4 || family.iter().any(|(_, h)| h.size() > 6) {
        return Err(format!("family is {names:?}"));
    }
    Ok(format!("all 17 conditions, order and completeness hold for {}", names.join(", ")))
}

/// Condition `k` evaluated at a witness directly from its statement.
fn violated(t: &FiniteTva, k: u8, w: &Witness) -> bool {
    let p = |x: usize| t.positive & (1 << x) != 0;
    let i = |x: usize, y: usize| t.imp[x][y];
    let (a, b, c) = (w.a.unwrap_or(0), w.b.unwrap_or(0), w.c.unwrap_or(0));
    let image = |s: u64, f: &dyn Fn(usize) -> usize| members(s).fold(0u64, |acc, e| acc | 1 << f(e));
    match k {
        1 => p(i(a, b)) && p(a) && !p(b),
        2 => !p(i(a, i(b, a))),
        3 => !p(i(i(a, i(b, c)), i(i(a, b), i(a, c)))),
        4 => !p(t.top),
        5 => !p(i(t.bot, a)),
        6 => !p(i(a, i(b, t.and[a][b]))),
        7 => !p(i(t.and[a][b], a)),
        8 => !p(i(t.and[a][b], b)),
        9 => !p(i(a, t.or[a][b])),
        10 => !p(i(b, t.or[a][b])),
        11 => !p(i(t.or[a][b], i(i(a, c), i(i(b, c), c)))),
        12 => match (w.forall_set, w.exists_set) {
            (Some(s), _) => !t.forall.contains_key(&image(s, &|e| i(a, e))),
            (_, Some(s)) => !t.forall.contains_key(&image(s, &|e| i(e, a))),
            _ => false,
        },
        13 => w.forall_set.is_some_and(|s| s & !t.positive == 0 && !p(t.forall[&s])),
        14 => w.forall_set.is_some_and(|s| !p(i(t.forall[&image(s, &|e| i(a, e))], i(a, t.forall[&s])))),
        15 => w.forall_set.is_some_and(|s| !p(i(t.forall[&s], a))),
        16 => w.exists_set.is_some_and(|s| !p(i(a, t.exists[&s]))),
        17 => w.exists_set.is_some_and(|s| !p(i(t.exists[&s], i(t.forall[&image(s, &|e| i(e, a))], a)))),
        _ => false,
    }
}

fn c5_mutations() -> Verdict {
    let t = bool2();
    let mut detected = BTreeMap::new();
    let mut isolated = BTreeMap::new();
    for m in single_entry_mutations(&t) {
        let u = m.apply(&t);
        let r = validate_tva(&u);
        for c in r.conditions.iter().filter(|c| !c.holds()) {
            let w = c.witness.as_ref().ok_or(format!("no witness for {} under {}", c.index, m.describe(&t)))?;
            if !violated(&u, c.index, w) {
                return Err(format!("witness for condition {} under {} does not replay", c.index, m.describe(&t)));
            }
            detected.entry(c.index).or_insert_with(|| m.describe(&t));
        }
        if let [k] = r.failing()[..] {
            isolated.entry(k).or_insert_with(|| m.describe(&t));
        }
    }
    let missing: Vec<u8> = (1..=17).filter(|k| !isolated.contains_key(k)).collect();
    let summary = format!("{}/17 detected, {}/17 failing alone", detected.len(), isolated.len());
    if missing.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; no single-entry mutation breaks only {missing:?}"))
    }
}

fn c6_soundness() -> Verdict {
    let mut parts = Vec::new();
    for (i, name) in ["pimpq", "qimpp"].iter().enumerate() {
        let t = builtin_by_name(name).unwrap();
        let mut proofs = sample_proofs(&t, SEED + 10 + i as u64, 200, SampleConfig::default());
        if *name == "pimpq" {
            proofs.push(parse_proof_str(t.sig(), Q_PROOF_SRC).unwrap());
        }
        let models = propositional_models(&t);
        let o = soundness(&t, &models, &proofs);
        outcome(&o)?;
        parts.push(format!("{name}: {} proofs x {} models", proofs.len(), models.len()));
    }
    let subset = builtin_by_name("subset").unwrap();
    let models: Vec<FiniteStructure> = all_structures(subset.sig(), &bool2(), 2)
        .unwrap()
        .into_iter()
        .filter(|s| check_model(s, &subset, CheckLimits::default()).holds)
        .collect();
    let proofs = sample_proofs(&subset, SEED + 12, 100, SampleConfig::default());
    outcome(&soundness(&subset, &models, &proofs))?;
    parts.push(format!("subset: {} proofs x {} models", proofs.len(), models.len()));
    let stt = stt_theory();
    let refl = parse_proof_str(stt.sig(), PROOF_REFL_SRC).unwrap();
    let model = build_stt_model_capped(&bool2(), SortDepthBound::new(2).unwrap(), DEFAULT_DOMAIN_CAP).unwrap();
    outcome(&soundness(&stt, &[model], &[refl]))?;
    Ok(format!("zero violations ({})", parts.join("; ")))
}

fn c7_substitution() -> Verdict {
    let mut structures: Vec<(String, modulo_core::theories::TheoryBundle, FiniteStructure)> = Vec::new();
    let stt = stt_theory();
    for (name, h) in standard_family() {
        let t = heyting_to_tva(&h).unwrap();
        let s = build_stt_model_capped(&t, SortDepthBound::new(2).unwrap(), DEFAULT_DOMAIN_CAP).map_err(|e| e.to_string())?;
        structures.push((format!("stt/{name}"), stt.clone(), s));
    }
    let (t, s) = load_structure(modulo_core::corpus::SUBSET_STRUCTURE_SRC, std::path::Path::new(".")).unwrap();
    structures.push(("subset".into(), t, s));
    for (i, (name, t, s)) in structures.iter().enumerate() {
        let o = substitution_lemma(t, s, SEED + i as u64, 1000);
        outcome(&o).map_err(|e| format!("{name}: {e}"))?;
        if o.cases != 1000 {
            return Err(format!("{name}: only {} triples", o.cases));
        }
    }
    Ok(format!("1000 triples in each of {} structures, exact equality", structures.len()))
}

fn c8_stt_models() -> Verdict {
    let stt = stt_theory();
    let mut parts = Vec::new();
    for (name, h) in standard_family() {
        let t = heyting_to_tva(&h).unwrap();
        let s = build_stt_model_capped(&t, SortDepthBound::new(2).unwrap(), DEFAULT_DOMAIN_CAP).map_err(|e| format!("{name}: {e}"))?;
        let r = check_model(&s, &stt, CheckLimits::default());
        if !r.holds {
            return Err(format!("{name}: {:?}", r.failures.first()));
        }
        if let Some(empty) = r.rules.iter().find(|x| x.instances == 0) {
            return Err(format!("{name}: rule {} has no checked instance", empty.item));
        }
        let instances: usize = r.rules.iter().map(|x| x.instances).sum();
        parts.push(format!("{name}: {} rules, {instances} instances, {} skipped", r.rules.len(), r.skipped.len()));
    }
    let rules = stt.system.rules.len();
    Ok(format!("all {rules} rules hold in every model ({})", parts.join("; ")))
}

fn c9_rewriting() -> Verdict {
    let stt = stt_theory();
    let set = parse_expr_set(stt.sig(), STT_EXPRS_SRC).map_err(|e| e.to_string())?;
    let golden = parse_golden(STT_EXPRS_GOLDEN);
    let pr = Printer::new(stt.sig());
    for (name, e) in &set.cases {
        let nf = stt.system.normal_form(e, budget()).map_err(|e| format!("{name}: {e}"))?;
        let shown = pr.expr(&nf.result).to_compact();
        if golden.get(name) != Some(&shown) {
            return Err(format!("{name}: {shown} vs {:?}", golden.get(name)));
        }
    }
    let pimpq = builtin_by_name("pimpq").unwrap();
    let prop = |t: &modulo_core::theories::TheoryBundle, s: &str| Expr::Prop(parse_prop_str(t.sig(), &Scope::new(), s).unwrap());
    let yes = pimpq.system.congruent(&prop(&pimpq, "P"), &prop(&pimpq, "(=> P Q)"), budget());
    let no = stt.system.congruent(&prop(&stt, "true"), &prop(&stt, "false"), budget());
    if yes != Congruence::Yes || no != Congruence::No {
        return Err(format!("congruent(P, P => Q) = {yes:?}, congruent(true, false) = {no:?}"));
    }
    Ok(format!("{} golden normal forms match; P ~ (P => Q) is Yes; true ~ false is No", set.cases.len()))
}

const SUITE: &[&[&str]] = &[
    &["check", "stt", "proof_refl.sexp"],
    &["check", "pimpq", "paper_q_proof.sexp"],
    &["classify", "pimpq", "paper_q_proof.sexp"],
    &["normalize", "pimpq", "paper_q_proof.sexp", "--fuel", "100", "--trace"],
    &["rewrite", "nf", "stt", "stt_exprs.sexp"],
    &["rewrite", "cong", "pimpq", "P", "(=> P Q)"],
    &["rewrite", "cong", "stt", "true", "false"],
    &["tva", "validate", "bool2.json"],
    &["tva", "validate", "chain3.json"],
    &["tva", "from-heyting", "lattice_square.json"],
    &["tva", "mutate", "bool2.json"],
    &["model", "check", "pimpq_structure.json"],
    &["model", "check", "subset_structure.json"],
    &["model", "check", "stt_structure.json"],
    &["theory", "show", "stt"],
    &["sample", "stt", "--count", "20"],
    &["sample", "subset", "--count", "20"],
    &["props", "--cases", "40"],
];

fn run_suite(seed: &str) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    for args in SUITE {
        let r = Command::new(env!("CARGO_BIN_EXE_modulo"))
            .args(*args)
            .args(["--json", "--seed", seed])
            .env_remove("MODULO_FUEL")
            .output()
            .map_err(|e| e.to_string())?;
        if r.status.code().is_none_or(|c| c == 2) {
            return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&r.stderr)));
        }
        out.extend_from_slice(&r.stdout);
    }
    Ok(out)
}

fn c10_determinism() -> Verdict {
    let a = run_suite("7")?;
    let b = run_suite("7")?;
    if a != b {
        return Err("two runs with seed 7 differ".into());
    }
    let c = run_suite("8")?;
    if c == a {
        return Err("seeds 7 and 8 give the same output; the seed is ignored".into());
    }
    Ok(format!("{} invocations, {} bytes, identical across runs", SUITE.len(), a.len()))
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 10] = [
        ("proof of Q in P --> (P => Q)", c1_q_proof),
        ("contrast theory normalizes", c2_contrast_theory),
        ("cut-free alignment", c3_cut_free_alignment),
        ("Heyting algebras are truth values algebras", c4_heyting),
        ("mutation sensitivity", c5_mutations),
        ("soundness", c6_soundness),
        ("substitution lemma", c7_substitution),
        ("STT models", c8_stt_models),
        ("rewriting regressions", c9_rewriting),
        ("determinism", c10_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {:2} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL {:2} {name} [{secs:.1}s]: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    let passed = criteria.len() - failed.len();
    println!("{passed}/{} criteria pass", criteria.len());
    if failed != KNOWN_FAILURES {
        println!("unexpected result: failing {failed:?}, expected {KNOWN_FAILURES:?}");
        std::process::exit(1);
    }
}
