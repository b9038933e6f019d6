//! The realizability checker: decides, within explicit bounds, whether a
//! combinator code realizes a sentence over tree-coded sets.
//!
//! Verdicts are three-valued. `Realized` and `Refuted` are definitive for the
//! clause semantics; `Unknown` names the bound that was exhausted, so a caller
//! can tell a fuel ceiling from an undecided implication.

use std::collections::BTreeSet;

use crate::formula::{Formula, Term};
use crate::pca::{encode_tuple, nat, EvalBudget, EvalError, Nat, Pca, PcaTerm};
use crate::treeset::{enumerate_hf, TreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckBudget {
    /// Fuel per combinator evaluation.
    pub fuel: u64,
    /// Rank ceiling for unbounded quantifier enumeration.
    pub hf_rank: u32,
    /// Width ceiling for unbounded quantifier enumeration.
    pub hf_width: u32,
    /// Candidate premise realizers `0..realizer_bound` for implications.
    pub realizer_bound: u64,
}

impl Default for CheckBudget {
    fn default() -> CheckBudget {
        CheckBudget {
            fuel: 100_000,
            hf_rank: 2,
            hf_width: 2,
            realizer_bound: 256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Realized,
    Refuted,
    /// The named bound ran out before the clause was decided.
    Unknown(&'static str),
}

impl Verdict {
    pub fn is_realized(&self) -> bool {
        matches!(self, Verdict::Realized)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Realized => write!(f, "realized"),
            Verdict::Refuted => write!(f, "refuted"),
            Verdict::Unknown(b) => write!(f, "unknown({b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown parameter `${0}`")]
    UnknownParam(String),
}

/// Set bindings for parameters and quantified variables.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    params: std::collections::BTreeMap<String, TreeSet>,
    vars: std::collections::BTreeMap<String, TreeSet>,
}

impl Scope {
    pub fn new() -> Scope {
        Scope::default()
    }

    pub fn bind_param(&mut self, name: &str, set: TreeSet) {
        self.params.insert(name.to_string(), set);
    }

    pub fn with_param(mut self, name: &str, set: TreeSet) -> Scope {
        self.bind_param(name, set);
        self
    }

    pub(crate) fn bind_var(&self, name: &str, set: TreeSet) -> Scope {
        let mut next = self.clone();
        next.vars.insert(name.to_string(), set);
        next
    }

    pub(crate) fn resolve(&self, t: &Term) -> Result<&TreeSet, CheckError> {
        match t {
            Term::Var(v) => self
                .vars
                .get(v)
                .ok_or_else(|| CheckError::UnboundVariable(v.clone())),
            Term::Param(p) => self
                .params
                .get(p)
                .ok_or_else(|| CheckError::UnknownParam(p.clone())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

impl CheckResult {
    pub fn trace_hash(&self) -> u64 {
        let mut h = fnv1a64_init();
        for line in &self.trace {
            h = fnv1a64_update(h, line.as_bytes());
            h = fnv1a64_update(h, b"\n");
        }
        h
    }

    /// `verdict;exhausted_bound;trace_hash`, with `-` for an absent bound.
    pub fn summary_line(&self) -> String {
        let (kind, bound) = match &self.verdict {
            Verdict::Realized => ("realized", "-"),
            Verdict::Refuted => ("refuted", "-"),
            Verdict::Unknown(b) => ("unknown", *b),
        };
        format!("{kind};{bound};{:016x}", self.trace_hash())
    }
}

fn fnv1a64_init() -> u64 {
    0xcbf29ce484222325
}

fn fnv1a64_update(mut h: u64, bytes: &[u8]) -> u64 {
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// The equality realizer: a fixed point `i` with
/// `{i} = <\x.<x,i>, \x.<x,i>>`, which realizes `X = X` for every code `X`.
pub fn id_realizer(pca: &mut Pca) -> Nat {
    let arm = |f: PcaTerm| PcaTerm::lam("x", PcaTerm::tuple(vec![PcaTerm::var("x"), f]));
    let g = PcaTerm::lam(
        "f",
        PcaTerm::tuple(vec![arm(PcaTerm::var("f")), arm(PcaTerm::var("f"))]),
    );
    let g = pca.intern(&g).expect("closed");
    pca.fixpoint(&g).0
}

/// `<a, i>` realizes `a^S in S` whenever `a` labels a member of `S`.
pub fn canonical_member_realizer(pca: &mut Pca, label: &Nat) -> Nat {
    let i = id_realizer(pca);
    encode_tuple(&[label.clone(), i])
}

pub struct Checker<'a> {
    pca: &'a mut Pca,
    budget: CheckBudget,
    seeds: Vec<Nat>,
    discovered: BTreeSet<Nat>,
    trace: Vec<String>,
    depth: usize,
}

impl<'a> Checker<'a> {
    pub fn new(pca: &'a mut Pca, budget: CheckBudget) -> Checker<'a> {
        Checker {
            pca,
            budget,
            seeds: Vec::new(),
            discovered: BTreeSet::new(),
            trace: Vec::new(),
            depth: 0,
        }
    }

    /// Extra candidate premise realizers for implications, beyond the numeric
    /// pool and the intern table.
    pub fn with_seeds(mut self, seeds: &[Nat]) -> Checker<'a> {
        self.seeds = seeds.to_vec();
        self
    }

    pub fn run(mut self, e: &Nat, f: &Formula, scope: &Scope) -> Result<CheckResult, CheckError> {
        let verdict = self.check(e, f, scope)?;
        Ok(CheckResult {
            verdict,
            trace: self.trace,
        })
    }

    fn note(&mut self, msg: impl AsRef<str>) {
        let mut line = "  ".repeat(self.depth.min(12));
        line.push_str(msg.as_ref());
        self.trace.push(line);
    }

    fn eval_budget(&self) -> EvalBudget {
        EvalBudget::new(self.budget.fuel)
    }

    /// Split a realizer code into its first two components, or classify the
    /// failure.
    fn split2(&mut self, e: &Nat) -> Result<(Nat, Nat), Verdict> {
        let b = self.eval_budget();
        let e0 = self.pca.proj(e, &nat(0), b).map_err(classify_eval)?;
        let e1 = self.pca.proj(e, &nat(1), b).map_err(classify_eval)?;
        Ok((e0, e1))
    }

    fn apply(&mut self, f: &Nat, x: &Nat) -> Result<Nat, Verdict> {
        let b = self.eval_budget();
        self.pca.apply(f, x, b).map_err(classify_eval)
    }

    pub fn check(&mut self, e: &Nat, f: &Formula, scope: &Scope) -> Result<Verdict, CheckError> {
        self.depth += 1;
        let v = self.check_inner(e, f, scope);
        self.depth -= 1;
        v
    }

    fn check_inner(&mut self, e: &Nat, f: &Formula, scope: &Scope) -> Result<Verdict, CheckError> {
        match f {
            Formula::Bot => {
                self.note("bot: refuted");
                Ok(Verdict::Refuted)
            }
            Formula::Eq(l, r) => {
                let s = scope.resolve(l)?.clone();
                let t = scope.resolve(r)?.clone();
                let v = self.check_eq(e, &s, &t);
                self.note(format!("eq: {v}"));
                Ok(v)
            }
            Formula::Mem(l, r) => {
                let x = scope.resolve(l)?.clone();
                let t = scope.resolve(r)?.clone();
                let v = self.check_mem(e, &x, &t);
                self.note(format!("mem: {v}"));
                Ok(v)
            }
            Formula::And(l, r) => {
                let (e0, e1) = match self.split2(e) {
                    Ok(p) => p,
                    Err(v) => {
                        self.note(format!("and: not a pair: {v}"));
                        return Ok(v);
                    }
                };
                let vl = self.check(&e0, l, scope)?;
                let vr = self.check(&e1, r, scope)?;
                let v = combine_all([vl, vr]);
                self.note(format!("and: {v}"));
                Ok(v)
            }
            Formula::Or(l, r) => {
                let (tag, body) = match self.split2(e) {
                    Ok(p) => p,
                    Err(v) => {
                        self.note(format!("or: not a pair: {v}"));
                        return Ok(v);
                    }
                };
                let left = tag == nat(0);
                let v = if left {
                    self.check(&body, l, scope)?
                } else {
                    self.check(&body, r, scope)?
                };
                self.note(format!(
                    "or: branch {}: {v}",
                    if left { "left" } else { "right" }
                ));
                Ok(v)
            }
            Formula::Imp(l, r) => self.check_imp(e, l, r, scope),
            Formula::ForallIn(v, t, body) => {
                let coll = scope.resolve(t)?.clone();
                self.check_forall_in(e, v, &coll, body, scope)
            }
            Formula::ExistsIn(v, t, body) => {
                let coll = scope.resolve(t)?.clone();
                self.check_exists_in(e, v, &coll, body, scope)
            }
            Formula::Forall(v, body) => self.check_forall(e, v, body, scope),
            Formula::Exists(v, body) => self.check_exists(e, v, body, scope),
        }
    }

    /// `e` realizes `S = T` when `{e.0}` maps every member label `a` of `S`
    /// to a pair `<b, d>` with `b` labelling a member of `T` and `d` realizing
    /// `a^S = b^T`, and `{e.1}` does the same from `T` back into `S`.
    fn check_eq(&mut self, e: &Nat, s: &TreeSet, t: &TreeSet) -> Verdict {
        let (e0, e1) = match self.split2(e) {
            Ok(p) => p,
            Err(v) => return v,
        };
        let mut acc = Vec::new();
        acc.push(self.check_eq_dir(&e0, s, t));
        acc.push(self.check_eq_dir(&e1, t, s));
        combine_all(acc)
    }

    fn check_eq_dir(&mut self, e: &Nat, from: &TreeSet, into: &TreeSet) -> Verdict {
        let into_members = into.members();
        let mut acc = Vec::new();
        for a in from.members() {
            let r = match self.apply(&e.clone(), &a) {
                Ok(r) => r,
                Err(v) => return v,
            };
            let (b, d) = match self.split2(&r) {
                Ok(p) => p,
                Err(v) => return v,
            };
            if !into_members.contains(&b) {
                return Verdict::Refuted;
            }
            acc.push(self.check_eq(&d, &from.member_subtree(&a), &into.member_subtree(&b)));
        }
        combine_all(acc)
    }

    /// `e` realizes `X in T` when `e = <b, d>` with `b` labelling a member of
    /// `T` and `d` realizing `X = b^T`.
    fn check_mem(&mut self, e: &Nat, x: &TreeSet, t: &TreeSet) -> Verdict {
        let (b, d) = match self.split2(e) {
            Ok(p) => p,
            Err(v) => return v,
        };
        if !t.members().contains(&b) {
            return Verdict::Refuted;
        }
        let v = self.check_eq(&d, x, &t.member_subtree(&b));
        if v.is_realized() {
            self.discovered.insert(e.clone());
        }
        v
    }

    /// No finite search can confirm that `{e}` sends every premise realizer
    /// to a conclusion realizer, so an implication is only `Realized` here
    /// when the premise provably has no realizers at all. Otherwise the
    /// deterministic candidate pool can still refute.
    fn check_imp(
        &mut self,
        e: &Nat,
        l: &Formula,
        r: &Formula,
        scope: &Scope,
    ) -> Result<Verdict, CheckError> {
        let pool = self.imp_pool();
        let mut exhausted: Option<&'static str> = None;
        for d in pool {
            match self.check(&d, l, scope)? {
                Verdict::Realized => {
                    let out = match self.apply(e, &d) {
                        Ok(out) => out,
                        Err(Verdict::Unknown(b)) => {
                            exhausted = Some(b);
                            continue;
                        }
                        Err(_) => {
                            self.note(format!("imp: candidate {d} breaks application"));
                            return Ok(Verdict::Refuted);
                        }
                    };
                    match self.check(&out, r, scope)? {
                        Verdict::Refuted => {
                            self.note(format!("imp: candidate {d} refutes conclusion"));
                            return Ok(Verdict::Refuted);
                        }
                        Verdict::Unknown(b) => exhausted = Some(b),
                        Verdict::Realized => {}
                    }
                }
                Verdict::Refuted | Verdict::Unknown(_) => {}
            }
        }
        if premise_vacuous(l, scope)? {
            self.note("imp: vacuous premise: realized");
            return Ok(Verdict::Realized);
        }
        let bound = exhausted.unwrap_or("imp-bound");
        self.note(format!("imp: pool exhausted: unknown({bound})"));
        Ok(Verdict::Unknown("imp-bound"))
    }

    fn imp_pool(&self) -> Vec<Nat> {
        let mut pool: BTreeSet<Nat> = (0..self.budget.realizer_bound).map(nat).collect();
        for i in 0..self.pca.table_len() {
            pool.insert(nat(i as u64));
        }
        pool.extend(self.seeds.iter().cloned());
        pool.extend(self.discovered.iter().cloned());
        pool.into_iter().collect()
    }

    /// Bounded universal: each member is handed to `{e}` through its
    /// canonical membership realizer `<a, i>`.
    fn check_forall_in(
        &mut self,
        e: &Nat,
        v: &str,
        coll: &TreeSet,
        body: &Formula,
        scope: &Scope,
    ) -> Result<Verdict, CheckError> {
        let mut acc = Vec::new();
        for a in coll.members() {
            let m = canonical_member_realizer(self.pca, &a);
            let out = match self.apply(e, &m) {
                Ok(out) => out,
                Err(v) => {
                    self.note(format!("forall-in: label {a}: {v}"));
                    return Ok(v);
                }
            };
            let inner = scope.bind_var(v, coll.member_subtree(&a));
            let verdict = self.check(&out, body, &inner)?;
            self.note(format!("forall-in: label {a}: {verdict}"));
            if verdict.is_refuted() {
                return Ok(Verdict::Refuted);
            }
            acc.push(verdict);
        }
        Ok(combine_all(acc))
    }

    /// Bounded existential: `e = <m, d>` with `m = <b, q>` naming the
    /// witness `b^T`; `q` must realize the membership and `d` the body.
    fn check_exists_in(
        &mut self,
        e: &Nat,
        v: &str,
        coll: &TreeSet,
        body: &Formula,
        scope: &Scope,
    ) -> Result<Verdict, CheckError> {
        let (m, d) = match self.split2(e) {
            Ok(p) => p,
            Err(v) => {
                self.note(format!("exists-in: not a pair: {v}"));
                return Ok(v);
            }
        };
        let (b, q) = match self.split2(&m) {
            Ok(p) => p,
            Err(v) => {
                self.note(format!("exists-in: witness not a pair: {v}"));
                return Ok(v);
            }
        };
        if !coll.members().contains(&b) {
            self.note(format!("exists-in: label {b} is not a member"));
            return Ok(Verdict::Refuted);
        }
        let witness = coll.member_subtree(&b);
        let mem = self.check_eq(&q, &witness, &witness);
        let inner = scope.bind_var(v, witness);
        let bodyv = self.check(&d, body, &inner)?;
        let verdict = combine_all([mem, bodyv]);
        self.note(format!("exists-in: label {b}: {verdict}"));
        if verdict.is_realized() {
            self.discovered.insert(e.clone());
        }
        Ok(verdict)
    }

    /// Unbounded universal: uniform over every set code, so enumeration up to
    /// the rank/width ceiling can refute but never confirm.
    fn check_forall(
        &mut self,
        e: &Nat,
        v: &str,
        body: &Formula,
        scope: &Scope,
    ) -> Result<Verdict, CheckError> {
        for x in enumerate_hf(self.budget.hf_rank, self.budget.hf_width) {
            let inner = scope.bind_var(v, x);
            if self.check(e, body, &inner)?.is_refuted() {
                self.note("forall: counterexample found");
                return Ok(Verdict::Refuted);
            }
        }
        self.note("forall: enumeration exhausted");
        Ok(Verdict::Unknown("hf-bound"))
    }

    /// Unbounded existential: confirmed by the first enumerated witness.
    fn check_exists(
        &mut self,
        e: &Nat,
        v: &str,
        body: &Formula,
        scope: &Scope,
    ) -> Result<Verdict, CheckError> {
        for x in enumerate_hf(self.budget.hf_rank, self.budget.hf_width) {
            let inner = scope.bind_var(v, x);
            if self.check(e, body, &inner)?.is_realized() {
                self.note("exists: witness found");
                return Ok(Verdict::Realized);
            }
        }
        self.note("exists: enumeration exhausted");
        Ok(Verdict::Unknown("hf-bound"))
    }
}

/// The formula certainly has no realizers: `bot`, membership in a memberless
/// collection, or equality with exactly one memberless side (the total
/// back-map cannot exist); closed under the evident conjunction and
/// disjunction cases.
pub(crate) fn premise_vacuous(f: &Formula, scope: &Scope) -> Result<bool, CheckError> {
    Ok(match f {
        Formula::Bot => true,
        Formula::Mem(_, t) => scope.resolve(t)?.members().is_empty(),
        Formula::Eq(l, r) => {
            let le = scope.resolve(l)?.members().is_empty();
            let re = scope.resolve(r)?.members().is_empty();
            le != re
        }
        Formula::And(l, r) => premise_vacuous(l, scope)? || premise_vacuous(r, scope)?,
        Formula::Or(l, r) => premise_vacuous(l, scope)? && premise_vacuous(r, scope)?,
        _ => false,
    })
}

fn classify_eval(err: EvalError) -> Verdict {
    match err {
        EvalError::OutOfFuel => Verdict::Unknown("fuel"),
        _ => Verdict::Refuted,
    }
}

/// Conjunction of verdicts: any refutation wins; otherwise any exhausted
/// bound; otherwise realized.
pub fn combine_all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut unknown: Option<&'static str> = None;
    for v in vs {
        match v {
            Verdict::Refuted => return Verdict::Refuted,
            Verdict::Unknown(b) => {
                unknown.get_or_insert(b);
            }
            Verdict::Realized => {}
        }
    }
    match unknown {
        Some(b) => Verdict::Unknown(b),
        None => Verdict::Realized,
    }
}

/// One-shot check of a sentence against a realizer.
pub fn check_sentence(
    pca: &mut Pca,
    e: &Nat,
    f: &Formula,
    scope: &Scope,
    budget: CheckBudget,
    seeds: &[Nat],
) -> Result<CheckResult, CheckError> {
    Checker::new(pca, budget).with_seeds(seeds).run(e, f, scope)
}
