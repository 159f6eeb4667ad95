//! Seeded random terms, propositions and checked proofs over a theory.
//!
//! Proofs are built forwards, so every elimination is introduced together
//! with the matching introduction (a detour), optionally behind an `orE` or
//! `exE` (a permutative redex), and conclusions are sometimes replaced by a
//! congruent proposition one rewrite step away. Every returned proof has been
//! accepted by the kernel.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{check, open_quant, retarget, weaken, ProofTree};
use crate::lang::{apply_subst, fresh_name, Context, Expr, Prop, Signature, Sort, SortSubst, Syntax, Term, Var};
use crate::model::sorts_up_to;
use crate::rewriting::{match_pattern, Budget, RewriteRule};
use crate::theories::TheoryBundle;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Names and sorts of the free variables offered to generated syntax.
pub fn default_vars(sig: &Signature) -> Vec<Var> {
    let mut out = Vec::new();
    for s in sig.base_sorts() {
        let names: [&str; 2] = match &**s {
            "i" => ["x", "y"],
            "o" => ["a", "b"],
            _ => ["v1", "v2"],
        };
        let used = sig.funs().any(|(_, d)| d.args.iter().chain([&d.result]).any(|a| a.mentions(s)))
            || sig.preds().any(|(_, d)| d.args.iter().any(|a| a.mentions(s)));
        if used {
            out.extend(names.iter().map(|n| Var::new(n, Sort::Base(s.clone()))));
        }
    }
    out
}

/// Random well-sorted terms and propositions.
pub struct SyntaxGen<'a> {
    pub sig: &'a Signature,
    pub vars: Vec<Var>,
    /// Instances for sort parameters of schemes.
    pub universe: Vec<Sort>,
}

impl<'a> SyntaxGen<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        let bases: Vec<Arc<str>> = sig.base_sorts().cloned().collect();
        SyntaxGen { sig, vars: default_vars(sig), universe: sorts_up_to(&bases, 2) }
    }

    /// Base sorts that have variables, for quantifiers.
    pub fn quant_sorts(&self) -> Vec<Sort> {
        let mut out: Vec<Sort> = self.vars.iter().map(|v| v.sort.clone()).collect();
        out.dedup();
        out
    }

    /// A term of `sort` with about `size` symbols, if one can be built.
    pub fn term(&self, rng: &mut impl Rng, sort: &Sort, size: usize) -> Option<Term> {
        self.term_in(rng, sort, size, &self.vars)
    }

    fn term_in(&self, rng: &mut impl Rng, sort: &Sort, size: usize, vars: &[Var]) -> Option<Term> {
        let var_choices: Vec<&Var> = vars.iter().filter(|v| &v.sort == sort).collect();
        let mut funs: Vec<(Arc<str>, SortSubst)> = Vec::new();
        for (name, d) in self.sig.funs() {
            if size == 0 && !d.args.is_empty() {
                continue;
            }
            let mut s = SortSubst::new();
            if d.result.match_into(sort, &d.params, &mut s) {
                funs.push((name.clone(), s));
            }
        }
        for _ in 0..8 {
            let use_var = !var_choices.is_empty() && (funs.is_empty() || size == 0 || rng.gen_bool(0.4));
            if use_var {
                return Some(Term::Var((*var_choices.choose(rng)?).clone()));
            }
            let (name, mut s) = funs.choose(rng)?.clone();
            let d = self.sig.fun(&name)?;
            for p in &d.params {
                if !s.contains_key(p) {
                    s.insert(p.clone(), self.universe.choose(rng)?.clone());
                }
            }
            let indices: Vec<Sort> = d.params.iter().map(|p| s[p].clone()).collect();
            let arg_sorts: Vec<Sort> = d.args.iter().map(|a| a.subst(&s)).collect();
            let share = size.saturating_sub(1) / arg_sorts.len().max(1);
            let args: Option<Vec<Term>> = arg_sorts.iter().map(|a| self.term_in(rng, a, share, vars)).collect();
            if let Some(args) = args {
                if let Ok(t) = self.sig.mk_app(&name, indices, args) {
                    return Some(t);
                }
            }
        }
        var_choices.choose(rng).map(|v| Term::Var((*v).clone()))
    }

    fn atom_in(&self, rng: &mut impl Rng, vars: &[Var]) -> Option<Prop> {
        let preds: Vec<_> = self.sig.preds().filter(|(_, d)| d.params.is_empty()).collect();
        let (name, d) = preds.choose(rng)?;
        let args: Option<Vec<Term>> = d.args.iter().map(|s| self.term_in(rng, s, 2, vars)).collect();
        self.sig.mk_atom(name, Vec::new(), args?).ok()
    }

    fn leaf_prop(&self, rng: &mut impl Rng, vars: &[Var]) -> Prop {
        match rng.gen_range(0..10) {
            0 => Prop::Top,
            1 => Prop::Bot,
            _ => self.atom_in(rng, vars).unwrap_or(Prop::Top),
        }
    }

    /// A proposition with about `size` connectives over the generator's variables.
    pub fn prop(&self, rng: &mut impl Rng, size: usize) -> Prop {
        self.prop_in(rng, size, &self.vars)
    }

    fn prop_in(&self, rng: &mut impl Rng, size: usize, vars: &[Var]) -> Prop {
        if size == 0 {
            return self.leaf_prop(rng, vars);
        }
        let quants = self.quant_sorts();
        let k = rng.gen_range(0..if quants.is_empty() { 4 } else { 6 });
        let half = (size - 1) / 2;
        match k {
            0 => self.leaf_prop(rng, vars),
            1 => Prop::imp(self.prop_in(rng, half, vars), self.prop_in(rng, size - 1 - half, vars)),
            2 => Prop::and(self.prop_in(rng, half, vars), self.prop_in(rng, size - 1 - half, vars)),
            3 => Prop::or(self.prop_in(rng, half, vars), self.prop_in(rng, size - 1 - half, vars)),
            _ => {
                let sort = quants.choose(rng).expect("non-empty").clone();
                let taken: BTreeSet<Arc<str>> = vars.iter().map(|v| v.name.clone()).collect();
                let x = Var { name: fresh_name("z", &taken), sort };
                let mut inner = vars.to_vec();
                inner.push(x.clone());
                let body = self.prop_in(rng, size - 1, &inner);
                if k == 4 {
                    Prop::forall(&x, &body)
                } else {
                    Prop::exists(&x, &body)
                }
            }
        }
    }
}

/// Structural matching of a rule's right-hand side against a proposition,
/// atom by atom.
fn match_shape(pat: &Prop, subject: &Prop, out: &mut Vec<(Var, Term)>) -> bool {
    match (pat, subject) {
        (Prop::Top, Prop::Top) | (Prop::Bot, Prop::Bot) => true,
        (Prop::Imp(a, b), Prop::Imp(c, d)) | (Prop::And(a, b), Prop::And(c, d)) | (Prop::Or(a, b), Prop::Or(c, d)) => {
            match_shape(a, c, out) && match_shape(b, d, out)
        }
        (Prop::Atom(..), Prop::Atom(..)) => match match_pattern(&Expr::Prop(pat.clone()), &Expr::Prop(subject.clone())) {
            Some(s) => {
                for (v, t) in s.iter() {
                    if out.iter().any(|(w, u)| w == v && u != t) {
                        return false;
                    }
                    out.push((v.clone(), t.clone()));
                }
                true
            }
            None => false,
        },
        _ => false,
    }
}

/// Propositions that rewrite to `p` in one step at the root: right-hand
/// sides of sort-monomorphic proposition rules read backwards.
pub fn expansions(rules: &[RewriteRule], p: &Prop) -> Vec<Prop> {
    let mut out = Vec::new();
    for r in rules {
        let (Expr::Prop(lhs), Expr::Prop(rhs)) = (&r.lhs, &r.rhs) else { continue };
        if !r.sort_params.is_empty() || !r.fresh.is_empty() || !p.is_locally_closed() {
            continue;
        }
        let mut m = Vec::new();
        if match_shape(rhs, p, &mut m) {
            let mut sigma = crate::lang::Substitution::new();
            for (v, t) in m {
                if sigma.insert(v, t).is_err() {
                    continue;
                }
            }
            let lhs = apply_subst(&sigma, lhs);
            if lhs.free_vars().iter().all(|v| !r.vars.contains(v) || sigma.get(v).is_some()) {
                out.push(lhs);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    /// Proofs deeper than this are discarded.
    pub max_depth: usize,
    /// Recursion depth of the generator.
    pub gen_depth: usize,
    /// Largest initial context.
    pub max_context: usize,
    /// Budget for the kernel check of each candidate.
    pub budget: Budget,
    /// Candidates tried per returned proof.
    pub attempts: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { max_depth: 6, gen_depth: 3, max_context: 2, budget: Budget::new(400, 128).expect("valid"), attempts: 200 }
    }
}

pub struct ProofGen<'a, R: Rng> {
    pub theory: &'a TheoryBundle,
    pub syntax: SyntaxGen<'a>,
    pub rng: &'a mut R,
    pub cfg: SampleConfig,
}

fn ctx_free(ctx: &Context) -> BTreeSet<Var> {
    let mut fv = BTreeSet::new();
    ctx.free_vars_into(&mut fv);
    fv
}

impl<'a, R: Rng> ProofGen<'a, R> {
    pub fn new(theory: &'a TheoryBundle, rng: &'a mut R, cfg: SampleConfig) -> Self {
        ProofGen { theory, syntax: SyntaxGen::new(theory.sig()), rng, cfg }
    }

    fn small_prop(&mut self) -> Prop {
        let size = self.rng.gen_range(0..3);
        self.syntax.prop(self.rng, size)
    }

    fn leaf(&mut self, ctx: &Context) -> ProofTree {
        if let Some(i) = ctx.iter().position(|h| *h == Prop::Bot) {
            if self.rng.gen_bool(0.5) {
                let g = self.small_prop();
                return ProofTree::bot_e(ProofTree::axiom(ctx, i), g);
            }
        }
        if !ctx.is_empty() && self.rng.gen_bool(0.8) {
            let i = self.rng.gen_range(0..ctx.len());
            return ProofTree::axiom(ctx, i);
        }
        if self.rng.gen_bool(0.6) {
            let a = self.small_prop();
            let inner = ctx.extended(a);
            return ProofTree::imp_i(ProofTree::axiom(&inner, ctx.len()));
        }
        ProofTree::top_i(ctx)
    }

    /// A random proof in context `ctx`, of whatever it happens to prove.
    pub fn proof(&mut self, ctx: &Context, depth: usize) -> ProofTree {
        let p = self.raw(ctx, depth);
        if self.rng.gen_bool(0.15) {
            self.variant(&p)
        } else {
            p
        }
    }

    fn raw(&mut self, ctx: &Context, depth: usize) -> ProofTree {
        if depth == 0 {
            return self.leaf(ctx);
        }
        let d = depth - 1;
        let quants = self.syntax.quant_sorts();
        let choices = if quants.is_empty() { 10 } else { 13 };
        match self.rng.gen_range(0..choices) {
            0 => self.leaf(ctx),
            1 => {
                let a = self.small_prop();
                ProofTree::imp_i(self.proof(&ctx.extended(a), d))
            }
            2 => ProofTree::and_i(self.proof(ctx, d), self.proof(ctx, d)),
            3 => {
                let other = self.small_prop();
                let second = self.rng.gen_bool(0.5);
                ProofTree::or_i(second, self.proof(ctx, d), other)
            }
            4 => {
                // andE on andI.
                let (p, q) = (self.proof(ctx, d), self.proof(ctx, d));
                let (a, b) = (p.goal().clone(), q.goal().clone());
                let second = self.rng.gen_bool(0.5);
                ProofTree::and_e(second, ProofTree::and_i(p, q), a, b)
            }
            5 | 6 => {
                // impE on impI.
                let q = self.proof(ctx, d);
                let p = self.proof(&ctx.extended(q.goal().clone()), d);
                let b = p.goal().clone();
                ProofTree::imp_e(ProofTree::imp_i(p), q, b)
            }
            7 => {
                // orE on orI, with the other disjunct equal or false.
                let q = self.proof(ctx, d);
                let a = q.goal().clone();
                let left = self.proof(&ctx.extended(a.clone()), d);
                let c = left.goal().clone();
                let (b, right) = if self.rng.gen_bool(0.5) {
                    (a.clone(), left.clone())
                } else {
                    let rctx = ctx.extended(Prop::Bot);
                    (Prop::Bot, ProofTree::bot_e(ProofTree::axiom(&rctx, ctx.len()), c))
                };
                ProofTree::or_e(left, right, ProofTree::or_i(false, q, b.clone()), a, b)
            }
            8 => {
                // An elimination whose major premise ends in orE: a permutative redex.
                let (p, q) = (self.proof(ctx, d), self.proof(ctx, d));
                let (a, b) = (p.goal().clone(), q.goal().clone());
                let wrapped = self.wrap(ctx, ProofTree::and_i(p, q), d);
                let second = self.rng.gen_bool(0.5);
                ProofTree::and_e(second, wrapped, a, b)
            }
            9 => {
                let p = self.proof(ctx, d);
                self.wrap(ctx, p, d)
            }
            10 => {
                // allE on allI.
                let p = self.proof(ctx, d);
                let (all, x) = self.generalize(ctx, p);
                let (quant, sort) = quant_of(&all);
                let t = self.syntax.term(self.rng, &sort, 2).unwrap_or(Term::Var(x));
                ProofTree::all_e(all, quant, t)
            }
            11 => {
                // exE on exI.
                let q = self.proof(ctx, d);
                let (quant, t) = self.abstract_goal(ctx, &q);
                let major = ProofTree::ex_i(q, quant.clone(), t);
                self.ex_elim(ctx, major, quant, d)
            }
            _ => {
                // allE on a wrapped allI: permutative, then a detour.
                let p = self.proof(ctx, d);
                let (all, x) = self.generalize(ctx, p);
                let (quant, sort) = quant_of(&all);
                let wrapped = self.wrap(ctx, all, d);
                let t = self.syntax.term(self.rng, &sort, 2).unwrap_or(Term::Var(x));
                ProofTree::all_e(wrapped, quant, t)
            }
        }
    }

    /// `∀x p` for a variable `x` free in the goal of `p` but not in `ctx`,
    /// or a fresh one.
    fn generalize(&mut self, ctx: &Context, p: ProofTree) -> (ProofTree, Var) {
        let banned = ctx_free(ctx);
        let sorts = self.syntax.quant_sorts();
        let candidates: Vec<Var> =
            p.goal().free_vars().into_iter().filter(|v| !banned.contains(v) && sorts.contains(&v.sort)).collect();
        let x = match candidates.choose(self.rng) {
            Some(v) => v.clone(),
            None => {
                let mut taken = BTreeSet::new();
                p.names_into(&mut taken);
                let sort = sorts.choose(self.rng).expect("quantifier sorts").clone();
                Var { name: fresh_name("w", &taken), sort }
            }
        };
        (ProofTree::all_i(p, x.clone()), x)
    }

    /// `∃x A` with `(t/x)A` the goal of `q`, abstracting a free variable.
    fn abstract_goal(&mut self, _ctx: &Context, q: &ProofTree) -> (Prop, Term) {
        let sorts = self.syntax.quant_sorts();
        let goal = q.goal();
        let candidates: Vec<Var> = goal.free_vars().into_iter().filter(|v| sorts.contains(&v.sort)).collect();
        match candidates.choose(self.rng) {
            Some(v) => (Prop::exists(v, goal), Term::Var(v.clone())),
            None => {
                let mut taken = BTreeSet::new();
                q.names_into(&mut taken);
                let sort = sorts.choose(self.rng).expect("quantifier sorts").clone();
                let x = Var { name: fresh_name("w", &taken), sort: sort.clone() };
                let t = self.syntax.term(self.rng, &sort, 1).unwrap_or(Term::Var(x.clone()));
                (Prop::exists(&x, goal), t)
            }
        }
    }

    /// `exE` on `major : ∃x A` with a body that may use `A`.
    fn ex_elim(&mut self, ctx: &Context, major: ProofTree, quant: Prop, d: usize) -> ProofTree {
        let mut taken = BTreeSet::new();
        major.names_into(&mut taken);
        ctx.iter().for_each(|h| h.names_into(&mut taken));
        let Prop::Exists(b, _) = &quant else { unreachable!("an existential") };
        let y = Var { name: fresh_name("e", &taken), sort: b.sort.clone() };
        let hyp = open_quant(&quant, &Term::Var(y.clone())).expect("quantifier");
        let inner = ctx.extended(hyp);
        for _ in 0..4 {
            let body = self.proof(&inner, d);
            if !body.goal().free_vars().contains(&y) {
                return ProofTree::ex_e(major, body, quant, y);
            }
        }
        let body = weaken(&self.proof(ctx, d), ctx.len(), &[inner.0.last().expect("extended").clone()]);
        ProofTree::ex_e(major, body, quant, y)
    }

    /// The same conclusion reached through an `orE` or `exE` whose major
    /// premise is an introduction.
    fn wrap(&mut self, ctx: &Context, p: ProofTree, d: usize) -> ProofTree {
        let quants = self.syntax.quant_sorts();
        let q = self.proof(ctx, d.saturating_sub(1));
        let a = q.goal().clone();
        if quants.is_empty() || self.rng.gen_bool(0.5) {
            let branch = weaken(&p, ctx.len(), std::slice::from_ref(&a));
            ProofTree::or_e(branch.clone(), branch, ProofTree::or_i(false, q, a.clone()), a.clone(), a)
        } else {
            let (quant, t) = self.abstract_goal(ctx, &q);
            let major = ProofTree::ex_i(q, quant.clone(), t);
            let mut taken = BTreeSet::new();
            major.names_into(&mut taken);
            p.names_into(&mut taken);
            let Prop::Exists(b, _) = &quant else { unreachable!("an existential") };
            let y = Var { name: fresh_name("e", &taken), sort: b.sort.clone() };
            let hyp = open_quant(&quant, &Term::Var(y.clone())).expect("quantifier");
            ProofTree::ex_e(major, weaken(&p, ctx.len(), &[hyp]), quant, y)
        }
    }

    /// `p` re-concluded with a proposition one rewrite step away from its goal.
    fn variant(&mut self, p: &ProofTree) -> ProofTree {
        let g = Expr::Prop(p.goal().clone());
        let mut options: Vec<Prop> = self
            .theory
            .system
            .reducts(&g)
            .into_iter()
            .filter_map(|e| match e {
                Expr::Prop(q) => Some(q),
                Expr::Term(_) => None,
            })
            .collect();
        options.extend(expansions(&self.theory.system.rules, p.goal()));
        match options.choose(self.rng) {
            Some(goal) => retarget(p, goal),
            None => p.clone(),
        }
    }

    /// A proof accepted by the kernel, within the configured depth.
    pub fn checked(&mut self) -> Option<ProofTree> {
        for _ in 0..self.cfg.attempts {
            let n = self.rng.gen_range(0..=self.cfg.max_context);
            let n = if self.rng.gen_bool(0.3) { 0 } else { n };
            let ctx = Context((0..n).map(|_| self.small_prop()).collect());
            let depth = self.rng.gen_range(1..=self.cfg.gen_depth);
            let p = self.proof(&ctx, depth);
            if p.depth() <= self.cfg.max_depth && check(self.theory, &p, self.cfg.budget).accepted() {
                return Some(p);
            }
        }
        None
    }
}

fn quant_of(all: &ProofTree) -> (Prop, Sort) {
    let quant = all.goal().clone();
    let Prop::Forall(b, _) = &quant else { unreachable!("allI concludes a universal") };
    (quant.clone(), b.sort.clone())
}

/// `n` checked proofs from a seed. Fewer are returned only if the generator
/// repeatedly fails to produce an accepted proof.
pub fn sample_proofs(theory: &TheoryBundle, seed: u64, n: usize, cfg: SampleConfig) -> Vec<ProofTree> {
    let mut rng = seeded(seed);
    let mut g = ProofGen::new(theory, &mut rng, cfg);
    (0..n).map_while(|_| g.checked()).collect()
}
