use std::path::Path;
use std::process::Command;

use clap::Parser;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_modulo");

fn modulo(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).env_remove("MODULO_FUEL").current_dir(env!("CARGO_MANIFEST_DIR")).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn modulo_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out) = modulo(&a);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}: {out}")))
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).unwrap()
}

fn assert_valid(name: &str, report: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(report) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}");
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn check_accepts_the_reflexivity_proof() {
    let (code, r) = modulo_json(&["check", "stt", "proof_refl.sexp"]);
    assert_eq!(code, 0);
    assert_valid("check", &r);
    assert_eq!(r, golden("check_proof_refl"));
}

#[test]
fn check_rejection_names_the_node() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sexp");
    std::fs::write(&bad, "(proof (impI :concl (seq () (=> P Q)) (axiom :concl (seq (P) Q) :hyp 0)))").unwrap();
    let (code, r) = modulo_json(&["check", "pimpq", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_valid("check", &r);
    assert_eq!(r["accepted"], false);
    assert_eq!(r["failures"][0]["path"], "0");
    let (code, text) = modulo(&["check", "pimpq", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(text.contains("bad.sexp: 0 (axiom)"), "{text}");
}

#[test]
fn q_proof_cycles() {
    let (code, r) = modulo_json(&["normalize", "pimpq", "paper_q_proof.sexp", "--fuel", "100"]);
    assert_eq!(code, 1);
    assert_valid("normalize", &r);
    assert_eq!(r["status"], "CycleDetected");
    assert_eq!(r, golden("normalize_q_proof"));
    let (_, t) = modulo_json(&["normalize", "pimpq", "paper_q_proof.sexp", "--trace"]);
    assert_valid("normalize", &t);
    assert_eq!(t["trace"].as_array().unwrap().len(), 2);
}

#[test]
fn fuel_comes_from_the_environment() {
    let out = Command::new(BIN)
        .args(["normalize", "pimpq", "paper_q_proof.sexp", "--json"])
        .env("MODULO_FUEL", "0")
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "FuelExhausted");
    assert_eq!(r["fuel"], 0);
}

#[test]
fn classify_reports_the_root_detour() {
    let (code, r) = modulo_json(&["classify", "pimpq", "paper_q_proof.sexp"]);
    assert_eq!(code, 0);
    assert_valid("classify", &r);
    assert_eq!(r, golden("classify_q_proof"));
}

#[test]
fn bool2_validates() {
    let (code, r) = modulo_json(&["tva", "validate", "bool2.json"]);
    assert_eq!(code, 0);
    assert_valid("tva-validate", &r);
    assert_eq!(r, golden("validate_bool2"));
    let (code, r) = modulo_json(&["tva", "mutate", "bool2.json"]);
    assert_eq!(code, 0);
    assert_valid("tva-mutate", &r);
}

#[test]
fn broken_algebra_fails_with_condition_index() {
    let dir = tempfile::tempdir().unwrap();
    let mut t: Value = serde_json::from_str(modulo_core::tva::BOOL2_SRC).unwrap();
    t["positive"] = serde_json::json!([]);
    let path = dir.path().join("broken.json");
    std::fs::write(&path, t.to_string()).unwrap();
    let (code, r) = modulo_json(&["tva", "validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_valid("tva-validate", &r);
    assert_eq!(r["conditions"][3]["condition"], 4);
    assert_eq!(r["conditions"][3]["holds"], false);
    let (_, text) = modulo(&["tva", "validate", path.to_str().unwrap()]);
    assert!(text.contains("condition  4: fails"));
}

#[test]
fn heyting_conversion_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = modulo(&["tva", "from-heyting", "--chain", "4", "--json"]);
    assert_eq!(code, 0);
    let path = dir.path().join("chain4.json");
    std::fs::write(&path, out).unwrap();
    assert_eq!(modulo(&["tva", "validate", path.to_str().unwrap()]).0, 0);
    assert_eq!(modulo(&["tva", "from-heyting", "lattice_square.json"]).0, 0);
    assert_eq!(modulo(&["tva", "from-heyting", "--chain", "99"]).0, 2);
}

#[test]
fn rewriting_verbs() {
    let (code, r) = modulo_json(&["rewrite", "nf", "stt", "stt_exprs.sexp"]);
    assert_eq!(code, 0);
    assert_valid("rewrite-nf", &r);
    let golden = modulo_core::corpus::parse_golden(modulo_core::corpus::STT_EXPRS_GOLDEN);
    for case in r["results"].as_array().unwrap() {
        assert_eq!(case["normal_form"].as_str().unwrap(), golden[case["name"].as_str().unwrap()]);
    }
    let (code, r) = modulo_json(&["rewrite", "nf", "stt", "(eps (app (app dimp a) a))", "--vars", "(a o)"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"][0]["normal_form"], "(=> (eps a) (eps a))");
    let (code, r) = modulo_json(&["rewrite", "cong", "pimpq", "P", "(=> P Q)"]);
    assert_eq!((code, r["congruent"].as_str()), (0, Some("yes")));
    assert_valid("rewrite-cong", &r);
    let (code, r) = modulo_json(&["rewrite", "cong", "stt", "true", "false"]);
    assert_eq!((code, r["congruent"].as_str()), (1, Some("no")));
    assert_eq!(modulo(&["rewrite", "nf", "stt", "(eps"]).0, 2);
}

#[test]
fn model_verbs() {
    for f in ["pimpq_structure.json", "qimpp_structure.json", "subset_structure.json", "stt_structure.json"] {
        let (code, r) = modulo_json(&["model", "check", f]);
        assert_eq!(code, 0, "{f}");
        assert_valid("model-check", &r);
    }
    let args = ["model", "eval", "subset_structure.json", "(subset x y)", "--vars", "(x i) (y i)"];
    let (code, r) = modulo_json(&[&args[..], &["--assign", "x=b", "--assign", "y=a"]].concat());
    assert_eq!((code, r["value"].as_str()), (1, Some("0")));
    assert_valid("model-eval", &r);
    let (code, r) = modulo_json(&[&args[..], &["--assign", "x=a", "--assign", "y=b"]].concat());
    assert_eq!((code, r["positive"].as_bool()), (0, Some(true)));
    assert_eq!(modulo(&[&args[..], &["--assign", "z=a"]].concat()).0, 2);
}

#[test]
fn theory_and_corpus_verbs() {
    let (code, r) = modulo_json(&["theory", "show", "subset"]);
    assert_eq!(code, 0);
    assert_valid("theory-show", &r);
    assert_eq!(r["rules"][0]["rhs"], "(forall (z i) (=> (mem z x) (mem z y)))");
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(modulo(&["corpus", "export", dir.path().to_str().unwrap()]).0, 0);
    for (name, src) in modulo_core::corpus::bundled_corpus() {
        assert_eq!(std::fs::read_to_string(dir.path().join(name)).unwrap(), src);
    }
    // Exported files are used in place of the bundled fallback.
    let thy = dir.path().join("subset.thy");
    assert_eq!(modulo(&["theory", "show", thy.to_str().unwrap()]).0, 0);
}

#[test]
fn sampling_verbs_validate() {
    let (code, r) = modulo_json(&["sample", "subset", "--count", "5", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_valid("sample", &r);
    let (code, r) = modulo_json(&["props", "--cases", "10", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_valid("props", &r);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(modulo(&["frobnicate"]).0, 2);
    assert_eq!(modulo(&["check", "stt"]).0, 2);
    assert_eq!(modulo(&["check", "nosuchtheory", "proof_refl.sexp"]).0, 2);
    let (code, out) = modulo(&["check", "stt", "missing.sexp", "--json"]);
    assert_eq!(code, 2);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_valid("error", &r);
    assert!(r["error"].as_str().unwrap().starts_with("missing.sexp"));
}

#[test]
fn binary_prints_the_library_report() {
    let cases: &[&[&str]] = &[
        &["check", "stt", "proof_refl.sexp"],
        &["normalize", "pimpq", "paper_q_proof.sexp", "--fuel", "100"],
        &["tva", "validate", "chain3.json"],
        &["model", "check", "qimpp_structure.json"],
        &["sample", "qimpp", "--count", "4", "--seed", "9"],
    ];
    for args in cases {
        let mut argv = vec!["modulo"];
        argv.extend_from_slice(args);
        argv.push("--json");
        let cli = modulo_cli::Cli::try_parse_from(&argv).unwrap();
        let lib = std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).map(|_| modulo_cli::run(&cli).unwrap()).unwrap();
        let (code, out) = modulo(&argv[1..]);
        assert_eq!(code as u8, lib.code, "{args:?}");
        assert_eq!(out, lib.render(true), "{args:?}");
    }
}
