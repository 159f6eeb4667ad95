//! The `modulo` command line: argument parsing and one report builder per verb.
//!
//! Every verb produces an [`Outcome`]: a JSON report, a human rendering of it
//! and an exit code. `main` only prints.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use modulo_core::corpus::{bundled_corpus, corpus_file, parse_expr_set};
use modulo_core::kernel::{
    check, find_redexes, is_cut_free, is_neutral, normalize, parse_proof_str, print_proof, ProofTree, TraceStatus,
};
use modulo_core::lang::{parse_expr, parse_prop, parse_var_decl, Expr, Printer, Scope, Var};
use modulo_core::model::{
    all_structures, check_model, denote_prop, load_structure, parse_value, Assignment, CheckLimits, FiniteStructure,
};
use modulo_core::props::{cut_free_alignment, normalization, soundness, subject_reduction, substitution_lemma, PropertyOutcome};
use modulo_core::rewriting::{Budget, Congruence};
use modulo_core::sample::{sample_proofs, SampleConfig};
use modulo_core::sexp::{parse_all, parse_one};
use modulo_core::theories::{builtin_by_name, build_stt_model, SortDepthBound, TheoryBundle, BUILTIN_NAMES};
use modulo_core::tva::{
    bool2, heyting_to_tva, mutation_sensitivity, standard_family, validate_tva, FiniteHeyting, FiniteTva,
};

pub const DEFAULT_FUEL: usize = 1000;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "modulo", version, about = "Proof checking, normalization and truth values algebras for deduction modulo")]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Step limit for normalization and rewriting.
    #[arg(long, global = true, env = "MODULO_FUEL", default_value_t = DEFAULT_FUEL)]
    pub fuel: usize,
    /// Seed for the sampling verbs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal forms and congruence.
    #[command(subcommand)]
    Rewrite(RewriteCmd),
    /// Check a proof file against a theory.
    Check(ProofArgs),
    /// Cut-freeness, neutrality and redexes of a proof.
    Classify(ProofArgs),
    /// Reduce a proof until it is normal, repeats, or the fuel runs out.
    Normalize {
        #[command(flatten)]
        proof: ProofArgs,
        /// Include every intermediate proof.
        #[arg(long)]
        trace: bool,
    },
    /// Truth values algebras.
    #[command(subcommand)]
    Tva(TvaCmd),
    /// Finite structures.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Theories.
    #[command(subcommand)]
    Theory(TheoryCmd),
    /// Random checked proofs.
    Sample {
        theory: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Property checks on random proofs and syntax.
    Props {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Bundled example files.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Debug, Args)]
pub struct ProofArgs {
    /// Built-in theory name or theory file.
    pub theory: String,
    /// Proof file.
    pub proof: String,
}

#[derive(Debug, Subcommand)]
pub enum RewriteCmd {
    /// Normal form of an expression, or of every case of an expression set file.
    Nf {
        theory: String,
        /// An s-expression or a file.
        expr: String,
        /// Free variable declarations, such as "(a o) (x i)".
        #[arg(long, default_value = "")]
        vars: String,
    },
    /// Decide whether two expressions are congruent.
    Cong {
        theory: String,
        lhs: String,
        rhs: String,
        #[arg(long, default_value = "")]
        vars: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum TvaCmd {
    /// Check the 17 conditions, the order and completeness.
    Validate { file: String },
    /// Build the algebra of a Heyting algebra file, or of a standard one.
    FromHeyting {
        /// `{elements, leq}` file.
        file: Option<String>,
        /// A chain with this many elements instead of a file.
        #[arg(long, conflicts_with = "file")]
        chain: Option<usize>,
    },
    /// Effect of every single-entry mutation on the 17 conditions.
    Mutate { file: String },
}

#[derive(Debug, Subcommand)]
pub enum ModelCmd {
    /// Check axioms and rewrite rules in a structure file.
    Check { structure: String },
    /// Truth value of a proposition in a structure.
    Eval {
        structure: String,
        prop: String,
        #[arg(long, default_value = "")]
        vars: String,
        /// `x=d` pairs.
        #[arg(long = "assign", value_name = "VAR=ELEMENT")]
        assign: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TheoryCmd {
    /// Print a theory.
    Show { theory: String },
    /// Built-in theory names.
    List,
}

#[derive(Debug, Subcommand)]
pub enum CorpusCmd {
    List,
    Show { name: String },
    /// Write every bundled file into a directory.
    Export { dir: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }

    fn input(path: &str, e: impl ToString) -> Self {
        CliError::Input { path: path.to_string(), message: e.to_string() }
    }
}

/// A finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub report: Value,
    pub text: String,
}

impl Outcome {
    fn new(ok: bool, report: Value, text: String) -> Self {
        Outcome { code: if ok { 0 } else { 1 }, report, text }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.report).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Reads `path`, falling back to the bundled file of that name.
pub fn read_input(path: &str) -> Result<String, CliError> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) => {
            let name = Path::new(path).file_name().and_then(|n| n.to_str()).unwrap_or(path);
            corpus_file(name).map(str::to_string).ok_or(CliError::Io { path: path.to_string(), source: e })
        }
    }
}

pub fn load_theory(name: &str) -> Result<TheoryBundle, CliError> {
    if let Some(t) = builtin_by_name(name) {
        return Ok(t);
    }
    TheoryBundle::parse(&read_input(name)?).map_err(|e| CliError::input(name, e))
}

fn load_proof(theory: &TheoryBundle, path: &str) -> Result<ProofTree, CliError> {
    parse_proof_str(theory.sig(), &read_input(path)?).map_err(|e| CliError::input(path, e))
}

fn scope_of(theory: &TheoryBundle, vars: &str) -> Result<(Scope, Vec<Var>), CliError> {
    let decls = parse_all(vars).map_err(|e| CliError::input("--vars", e))?;
    let vars = decls
        .iter()
        .map(|d| parse_var_decl(theory.sig(), d))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::input("--vars", e))?;
    Ok((Scope::from_vars(&vars), vars))
}

fn expr_arg(theory: &TheoryBundle, scope: &Scope, src: &str) -> Result<Expr, CliError> {
    let e = parse_one(src).map_err(|e| CliError::input(src, e))?;
    parse_expr(theory.sig(), scope, &e).map_err(|e| CliError::input(src, e))
}

fn budget(fuel: usize) -> Budget {
    Budget::default().with_steps(fuel.max(1))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Rewrite(RewriteCmd::Nf { theory, expr, vars }) => rewrite_nf(cli, theory, expr, vars),
        Command::Rewrite(RewriteCmd::Cong { theory, lhs, rhs, vars }) => rewrite_cong(cli, theory, lhs, rhs, vars),
        Command::Check(a) => {
            let t = load_theory(&a.theory)?;
            Ok(check_outcome(&t, &a.proof, &load_proof(&t, &a.proof)?, cli.fuel))
        }
        Command::Classify(a) => {
            let t = load_theory(&a.theory)?;
            Ok(classify_outcome(&t, &load_proof(&t, &a.proof)?, cli.fuel))
        }
        Command::Normalize { proof, trace } => {
            let t = load_theory(&proof.theory)?;
            Ok(normalize_outcome(&t, &load_proof(&t, &proof.proof)?, cli.fuel, *trace))
        }
        Command::Tva(TvaCmd::Validate { file }) => Ok(validate_outcome(&load_tva(file)?)),
        Command::Tva(TvaCmd::FromHeyting { file, chain }) => {
            let h = match (file, chain) {
                (Some(f), _) => FiniteHeyting::from_json(&read_input(f)?).map_err(|e| CliError::input(f, e))?,
                (None, Some(n)) if (1..=modulo_core::tva::MAX_HEYTING).contains(n) => FiniteHeyting::chain(*n),
                (None, Some(n)) => return Err(CliError::Usage(format!("--chain {n}: expected 1 to 16 elements"))),
                (None, None) => return Err(CliError::Usage("give a file or --chain N".into())),
            };
            let t = heyting_to_tva(&h).map_err(|e| CliError::input(file.as_deref().unwrap_or("--chain"), e))?;
            let report = t.to_json();
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            Ok(Outcome::new(true, report, text))
        }
        Command::Tva(TvaCmd::Mutate { file }) => Ok(mutate_outcome(&load_tva(file)?)),
        Command::Model(ModelCmd::Check { structure }) => {
            let (t, s) = load_structure_file(structure)?;
            Ok(model_check_outcome(&t, &s))
        }
        Command::Model(ModelCmd::Eval { structure, prop, vars, assign }) => {
            let (t, s) = load_structure_file(structure)?;
            model_eval(&t, &s, prop, vars, assign)
        }
        Command::Theory(TheoryCmd::Show { theory }) => {
            let t = load_theory(theory)?;
            Ok(theory_outcome(&t))
        }
        Command::Theory(TheoryCmd::List) => {
            let report = json!({ "theories": BUILTIN_NAMES });
            Ok(Outcome::new(true, report, BUILTIN_NAMES.join("\n") + "\n"))
        }
        Command::Sample { theory, count } => {
            let t = load_theory(theory)?;
            Ok(sample_outcome(&t, cli.seed, *count, cli.fuel))
        }
        Command::Props { cases } => Ok(props_outcome(cli.seed, *cases, cli.fuel)),
        Command::Corpus(c) => corpus(c),
    }
}

fn load_tva(path: &str) -> Result<FiniteTva, CliError> {
    FiniteTva::from_json(&read_input(path)?).map_err(|e| CliError::input(path, e))
}

fn load_structure_file(path: &str) -> Result<(TheoryBundle, FiniteStructure), CliError> {
    let src = read_input(path)?;
    let base = Path::new(path).parent().unwrap_or(Path::new("."));
    load_structure(&src, base).map_err(|e| CliError::input(path, e))
}

fn show_expr(t: &TheoryBundle, e: &Expr) -> String {
    Printer::new(t.sig()).expr(e).to_compact()
}

fn rewrite_nf(cli: &Cli, theory: &str, expr: &str, vars: &str) -> Result<Outcome, CliError> {
    let t = load_theory(theory)?;
    let cases: Vec<(String, Expr)> = match read_input(expr) {
        Ok(src) => parse_expr_set(t.sig(), &src).map_err(|e| CliError::input(expr, e))?.cases,
        Err(_) => {
            let (scope, _) = scope_of(&t, vars)?;
            vec![("expr".to_string(), expr_arg(&t, &scope, expr)?)]
        }
    };
    let mut results = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for (name, e) in &cases {
        match t.system.normal_form(e, budget(cli.fuel)) {
            Ok(nf) => {
                let shown = show_expr(&t, &nf.result);
                text.push_str(&format!("{name} {shown}\n"));
                results.push(json!({"name": name, "input": show_expr(&t, e), "status": "normal", "normal_form": shown, "steps": nf.steps}));
            }
            Err(f) => {
                ok = false;
                text.push_str(&format!("{name} fuel exhausted after {} steps\n", f.steps));
                results.push(json!({"name": name, "input": show_expr(&t, e), "status": "fuel-exhausted", "steps": f.steps}));
            }
        }
    }
    Ok(Outcome::new(ok, json!({"theory": t.name, "results": results}), text))
}

fn rewrite_cong(cli: &Cli, theory: &str, lhs: &str, rhs: &str, vars: &str) -> Result<Outcome, CliError> {
    let t = load_theory(theory)?;
    let (scope, _) = scope_of(&t, vars)?;
    let (a, b) = (expr_arg(&t, &scope, lhs)?, expr_arg(&t, &scope, rhs)?);
    let verdict = t.system.congruent(&a, &b, budget(cli.fuel));
    Ok(congruence_outcome(&t, &a, &b, verdict))
}

pub fn congruence_outcome(t: &TheoryBundle, a: &Expr, b: &Expr, verdict: Congruence) -> Outcome {
    let v = match verdict {
        Congruence::Yes => "yes",
        Congruence::No => "no",
        Congruence::Undecided => "undecided",
    };
    let report = json!({"theory": t.name, "lhs": show_expr(t, a), "rhs": show_expr(t, b), "congruent": v});
    Outcome::new(verdict == Congruence::Yes, report, format!("{v}\n"))
}

pub fn check_outcome(t: &TheoryBundle, file: &str, p: &ProofTree, fuel: usize) -> Outcome {
    let r = check(t, p, budget(fuel));
    let mut text = if r.accepted() {
        format!("accepted: {} nodes, proves {}\n", r.nodes, p.conclusion)
    } else {
        format!("rejected: {} failure(s)\n", r.failures.len())
    };
    for f in &r.failures {
        text.push_str(&format!("{file}: {f}\n"));
    }
    let report = json!({
        "theory": t.name,
        "file": file,
        "accepted": r.accepted(),
        "conclusion": p.conclusion.to_string(),
        "nodes": r.nodes,
        "failures": r.failures,
    });
    Outcome::new(r.accepted(), report, text)
}

pub fn classify_outcome(t: &TheoryBundle, p: &ProofTree, fuel: usize) -> Outcome {
    let accepted = check(t, p, budget(fuel)).accepted();
    let redexes: Vec<Value> = find_redexes(t, p, budget(fuel))
        .into_iter()
        .map(|(path, kind)| json!({"path": modulo_core::kernel::NodePath(path), "kind": kind}))
        .collect();
    let report = json!({
        "theory": t.name,
        "accepted": accepted,
        "cut_free": is_cut_free(p),
        "neutral": is_neutral(p),
        "root": p.rule.name(),
        "redexes": redexes,
    });
    let text = format!(
        "cut-free: {}\nneutral: {}\nredexes: {}\n",
        is_cut_free(p),
        is_neutral(p),
        redexes.iter().map(|r| format!("{} {}", r["kind"].as_str().unwrap_or(""), r["path"].as_str().unwrap_or(""))).collect::<Vec<_>>().join(", ")
    );
    Outcome::new(accepted, report, text)
}

fn status_name(s: &TraceStatus) -> &'static str {
    match s {
        TraceStatus::NormalForm => "NormalForm",
        TraceStatus::FuelExhausted => "FuelExhausted",
        TraceStatus::CycleDetected { .. } => "CycleDetected",
    }
}

pub fn normalize_outcome(t: &TheoryBundle, p: &ProofTree, fuel: usize, trace: bool) -> Outcome {
    let tr = normalize(t, p, fuel, Budget::default());
    let show = |q: &ProofTree| print_proof(t.sig(), q).to_compact();
    let mut report = json!({
        "theory": t.name,
        "status": status_name(&tr.status),
        "steps": tr.steps(),
        "fuel": fuel,
        "result": show(tr.last()),
        "cut_free": is_cut_free(tr.last()),
    });
    if let TraceStatus::CycleDetected { repeat_index } = tr.status {
        report["repeat_index"] = json!(repeat_index);
    }
    if trace {
        report["trace"] = json!(tr.proofs.iter().map(show).collect::<Vec<_>>());
    }
    let mut text = format!("{} after {} step(s)\n", status_name(&tr.status), tr.steps());
    if let TraceStatus::CycleDetected { repeat_index } = tr.status {
        text.push_str(&format!("step {} repeats step {repeat_index}\n", tr.steps()));
    }
    if trace {
        for (i, q) in tr.proofs.iter().enumerate() {
            text.push_str(&format!("{i}: {}\n", show(q)));
        }
    } else {
        text.push_str(&print_proof(t.sig(), tr.last()).to_pretty(96));
        text.push('\n');
    }
    Outcome::new(tr.status == TraceStatus::NormalForm, report, text)
}

pub fn validate_outcome(t: &FiniteTva) -> Outcome {
    let r = validate_tva(t);
    let mut text = String::new();
    for c in &r.conditions {
        let verdict = if c.holds() { "holds".to_string() } else { format!("fails ({} violation(s))", c.violations) };
        text.push_str(&format!("condition {:2}: {verdict}\n", c.index));
        if let Some(w) = &c.witness {
            text.push_str(&format!("  witness {}\n", w.describe(t)));
        }
    }
    for v in r.order.iter().flatten().chain(r.complete.iter()) {
        text.push_str(&format!("{}: {}\n", v.name, if v.holds { "holds" } else { "fails" }));
    }
    text.push_str(&format!("full: {}\n", r.full));
    Outcome::new(r.all_hold(), r.to_json(t), text)
}

pub fn mutate_outcome(t: &FiniteTva) -> Outcome {
    let rows = mutation_sensitivity(t);
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "condition {:2}: detected by {}, isolated by {}{}\n",
            r.condition,
            r.detected_by,
            r.isolated_by,
            r.example.as_deref().map(|e| format!(", e.g. {e}")).unwrap_or_default()
        ));
    }
    let ok = rows.iter().all(|r| r.detected_by > 0);
    Outcome::new(ok, json!({"conditions": rows}), text)
}

pub fn model_check_outcome(t: &TheoryBundle, s: &FiniteStructure) -> Outcome {
    let r = check_model(s, t, CheckLimits::default());
    let mut text = format!("{}\n", if r.holds { "model" } else { "not a model" });
    for f in &r.failures {
        text.push_str(&format!("{} {:?} {:?} {}\n", f.item, f.kind, f.assignment, f.detail));
    }
    for k in &r.skipped {
        text.push_str(&format!("skipped {} ({})\n", k.item, k.reason));
    }
    let report = json!({"theory": t.name, "report": r});
    Outcome::new(r.holds, report, text)
}

fn model_eval(t: &TheoryBundle, s: &FiniteStructure, prop: &str, vars: &str, assign: &[String]) -> Result<Outcome, CliError> {
    let (scope, vars) = scope_of(t, vars)?;
    let e = parse_one(prop).map_err(|e| CliError::input(prop, e))?;
    let p = parse_prop(t.sig(), &scope, &e).map_err(|e| CliError::input(prop, e))?;
    let mut phi = Assignment::new();
    for a in assign {
        let (x, d) = a.split_once('=').ok_or_else(|| CliError::Usage(format!("--assign {a}: expected VAR=ELEMENT")))?;
        let v = vars.iter().find(|v| &*v.name == x).ok_or_else(|| CliError::Usage(format!("--assign {a}: `{x}` is not declared in --vars")))?;
        let value = parse_value(s, &v.sort, d).map_err(|e| CliError::input("--assign", e))?;
        phi.insert(v.clone(), value);
    }
    let value = denote_prop(s, &phi, &p).map_err(|e| CliError::input(prop, e))?;
    let name = value.map(|k| s.tva.names[k].clone());
    let positive = value.is_some_and(|k| s.tva.is_positive(k));
    let report = json!({"prop": p.to_string(), "value": name, "positive": positive});
    let text = format!("{}{}\n", name.as_deref().unwrap_or("undefined"), if positive { " (positive)" } else { "" });
    Ok(Outcome::new(positive, report, text))
}

pub fn theory_outcome(t: &TheoryBundle) -> Outcome {
    let sig = t.sig();
    let rules: Vec<Value> = t
        .system
        .rules
        .iter()
        .map(|r| json!({"name": r.name.as_deref(), "lhs": show_expr(t, &r.lhs), "rhs": show_expr(t, &r.rhs)}))
        .collect();
    let report = json!({
        "name": t.name,
        "sorts": sig.base_sorts().map(|s| s.to_string()).collect::<Vec<_>>(),
        "functions": sig.funs().map(|(n, _)| n.to_string()).collect::<Vec<_>>(),
        "predicates": sig.preds().map(|(n, _)| n.to_string()).collect::<Vec<_>>(),
        "axioms": t.axioms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "rules": rules,
        "text": t.to_text(),
    });
    Outcome::new(true, report, t.to_text() + "\n")
}

pub fn sample_outcome(t: &TheoryBundle, seed: u64, count: usize, fuel: usize) -> Outcome {
    let cfg = SampleConfig::default();
    let proofs = sample_proofs(t, seed, count, cfg);
    let mut text = String::new();
    let items: Vec<Value> = proofs
        .iter()
        .map(|p| {
            let tr = normalize(t, p, fuel, cfg.budget);
            text.push_str(&format!("{} | {} in {} step(s)\n", p.conclusion, status_name(&tr.status), tr.steps()));
            json!({
                "conclusion": p.conclusion.to_string(),
                "depth": p.depth(),
                "size": p.size(),
                "cut_free": is_cut_free(p),
                "status": status_name(&tr.status),
                "steps": tr.steps(),
                "proof": print_proof(t.sig(), p).to_compact(),
            })
        })
        .collect();
    let ok = proofs.len() == count;
    Outcome::new(ok, json!({"theory": t.name, "seed": seed, "count": proofs.len(), "proofs": items}), text)
}

/// Structures of a propositional theory over the 2-element algebra that pass `check_model`.
pub fn propositional_models(t: &TheoryBundle) -> Vec<FiniteStructure> {
    all_structures(t.sig(), &bool2(), 1)
        .map(|v| v.into_iter().filter(|s| check_model(s, t, CheckLimits::default()).holds).collect())
        .unwrap_or_default()
}

pub fn property_suite(seed: u64, cases: usize, fuel: usize) -> Vec<PropertyOutcome> {
    let cfg = SampleConfig::default();
    let mut out = Vec::new();
    for (i, name) in BUILTIN_NAMES.iter().enumerate() {
        let t = builtin_by_name(name).expect("built-in");
        let proofs = sample_proofs(&t, seed.wrapping_add(i as u64), cases, cfg);
        out.push(subject_reduction(&t, &proofs, fuel, cfg.budget));
        out.push(cut_free_alignment(&t, &proofs, fuel, cfg.budget));
        if *name == "qimpp" {
            out.push(normalization(&t, &proofs, fuel, cfg.budget));
        }
        if matches!(*name, "pimpq" | "qimpp") {
            out.push(soundness(&t, &propositional_models(&t), &proofs));
        }
    }
    let stt = builtin_by_name("stt").expect("built-in");
    let model = build_stt_model(&bool2(), SortDepthBound::new(2).expect("positive")).expect("bool2 is full");
    out.push(substitution_lemma(&stt, &model, seed, cases));
    out
}

fn props_outcome(seed: u64, cases: usize, fuel: usize) -> Outcome {
    let results = property_suite(seed, cases, fuel);
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("{}: {} case(s), {} failure(s)\n", r.property, r.cases, r.failures));
        for c in &r.counterexamples {
            text.push_str(&format!("  {c}\n"));
        }
    }
    let ok = results.iter().all(PropertyOutcome::holds);
    Outcome::new(ok, json!({"seed": seed, "cases": cases, "properties": results}), text)
}

fn corpus(c: &CorpusCmd) -> Result<Outcome, CliError> {
    match c {
        CorpusCmd::List => {
            let names: Vec<&str> = bundled_corpus().iter().map(|(n, _)| *n).collect();
            Ok(Outcome::new(true, json!({"files": names}), names.join("\n") + "\n"))
        }
        CorpusCmd::Show { name } => {
            let src = corpus_file(name).ok_or_else(|| CliError::Usage(format!("no bundled file `{name}`")))?;
            Ok(Outcome::new(true, json!({"name": name, "content": src}), src.to_string()))
        }
        CorpusCmd::Export { dir } => {
            let io = |e| CliError::Io { path: dir.display().to_string(), source: e };
            std::fs::create_dir_all(dir).map_err(io)?;
            let mut names = Vec::new();
            for (name, src) in bundled_corpus() {
                std::fs::write(dir.join(name), src).map_err(io)?;
                names.push(name);
            }
            Ok(Outcome::new(true, json!({"written": names}), format!("wrote {} files\n", names.len())))
        }
    }
}

/// The standard Heyting algebras, for scripts and tests.
pub fn standard_algebras() -> Vec<(String, FiniteTva)> {
    standard_family().into_iter().map(|(n, h)| (n, heyting_to_tva(&h).expect("standard algebras are Heyting"))).collect()
}
