//! Realizer constructions and witness-set builders for the axioms of
//! constructive set theory with full separation, each bundled as a package
//! of checkable instances.
//!
//! Every realizer here is a concrete combinator term; witness sets (pair,
//! union, omega truncations, separation, fullness, collection) are concrete
//! tree codes. A package pins one realizer against a suite of instances and
//! is accepted when nothing is refuted and the only `Unknown` verdicts carry
//! expected bounds (unbounded quantifiers, implication premise pools).

use std::collections::BTreeSet;

use crate::formula::{parse, Formula};
use crate::pca::{encode_tuple, nat, parse_term, EvalBudget, EvalError, Nat, Pca};
use crate::realize::{
    canonical_member_realizer, check_sentence, id_realizer, CheckBudget, CheckResult, Scope,
    Verdict,
};
use crate::synth::synth;
use crate::treeset::{enumerate_hf, HfSet, TreeSet, Tuple};

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub instance: String,
    pub realizer: Nat,
    pub body: Formula,
    pub scope: Scope,
    pub seeds: Vec<Nat>,
}

#[derive(Debug, Clone)]
pub struct AxiomPackage {
    pub name: &'static str,
    pub checks: Vec<AxiomCheck>,
    /// `Unknown` bounds that do not fail the package.
    pub allowed_unknown: Vec<&'static str>,
}

impl AxiomPackage {
    pub fn run(&self, pca: &mut Pca, budget: CheckBudget) -> Vec<(String, CheckResult)> {
        self.checks
            .iter()
            .map(|c| {
                let r = check_sentence(pca, &c.realizer, &c.body, &c.scope, budget, &c.seeds)
                    .expect("package sentences are closed");
                (c.instance.clone(), r)
            })
            .collect()
    }

    /// No refutations, and unknowns only with an allowed bound.
    pub fn acceptable(&self, results: &[(String, CheckResult)]) -> bool {
        results.iter().all(|(_, r)| match &r.verdict {
            Verdict::Realized => true,
            Verdict::Refuted => false,
            Verdict::Unknown(b) => self.allowed_unknown.contains(b),
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error("no realizer found for member label {label} (searched the candidate pool)")]
    FinderFailure { label: Nat },
    #[error("no witness set found for member label {label}")]
    ChooserFailure { label: Nat },
    #[error("realizer synthesis failed for {what}")]
    SynthFailure { what: String },
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
}

fn intern_src(pca: &mut Pca, src: &str) -> Nat {
    let t = parse_term(src).expect("builtin term parses");
    pca.intern(&t).expect("builtin term is closed").0
}

// ---------------------------------------------------------------------------
// Equality realizers
// ---------------------------------------------------------------------------

/// Symmetry: swap the two directions of an equality realizer.
pub fn sym_realizer(pca: &mut Pca) -> Nat {
    intern_src(pca, "lam e. <e.1, e.0>")
}

/// Transitivity: chase a member through the middle set in both directions,
/// recursing on the component equalities via a fixed point.
pub fn trans_realizer(pca: &mut Pca) -> Nat {
    let gen = intern_src(
        pca,
        "lam t. lam e. <\
            lam a. (lam p. (lam q. <q.0, t <p.1, q.1>>) (e.1.0 p.0)) (e.0.0 a), \
            lam c. (lam q. (lam p. <p.0, t <q.1, p.1>>) (e.0.1 q.0)) (e.1.1 c)>",
    );
    pca.fixpoint(&crate::pca::CodeHandle(gen)).0
}

/// Membership congruence in the collection: from `x = y` and `z in x`
/// produce `z in y`.
pub fn cong_d_realizer(pca: &mut Pca) -> Nat {
    let t = trans_realizer(pca);
    intern_src(
        pca,
        &format!("lam e. (lam m. <m.0, {t} <e.1.1, m.1>>) (e.0.0 e.1.0)"),
    )
}

/// Membership congruence in the element: from `x = y` and `x in z`
/// produce `y in z`.
pub fn cong_e_realizer(pca: &mut Pca) -> Nat {
    let t = trans_realizer(pca);
    let s = sym_realizer(pca);
    intern_src(pca, &format!("lam e. <e.1.0, {t} <{s} e.0, e.1.1>>"))
}

/// Extensionality, both directions packaged as a pair.
pub fn extensionality_realizer(pca: &mut Pca) -> Nat {
    let i = id_realizer(pca);
    let cd = cong_d_realizer(pca);
    let s = sym_realizer(pca);
    let ltr = intern_src(
        pca,
        &format!("lam d. <lam f. {cd} <d, f>, lam f. {cd} <{s} d, f>>"),
    );
    let rtl = intern_src(
        pca,
        &format!("lam p. <lam a. p.0 <a, {i}>, lam b. p.1 <b, {i}>>"),
    );
    encode_tuple(&[ltr, rtl])
}

/// Set induction: the recursion-theorem fixed point `h` with
/// `{h}(e) = {e}(lam x. {h}(e))`.
pub fn induction_fixed_point(pca: &mut Pca) -> Nat {
    let gen = intern_src(pca, "lam q. lam e. e (lam x. q e)");
    pca.fixpoint(&crate::pca::CodeHandle(gen)).0
}

pub fn induction_realizer(pca: &mut Pca, e: &Nat, budget: EvalBudget) -> Result<Nat, EvalError> {
    let h = induction_fixed_point(pca);
    pca.apply(&h, e, budget)
}

// ---------------------------------------------------------------------------
// Witness-set constructions
// ---------------------------------------------------------------------------

/// The pair `{S, T}`: `S` grafted under label 0 and `T` under label 1.
pub fn pair_set(s: &TreeSet, t: &TreeSet) -> TreeSet {
    let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
    tuples.insert(Vec::new());
    for tu in s.tuples() {
        let mut v = vec![nat(0)];
        v.extend(tu.iter().cloned());
        tuples.insert(v);
    }
    for tu in t.tuples() {
        let mut v = vec![nat(1)];
        v.extend(tu.iter().cloned());
        tuples.insert(v);
    }
    TreeSet::from_tuples(tuples).expect("pair of valid codes is valid")
}

/// The union `⋃S`: strip the leading label from every nonempty tuple.
pub fn union_set(s: &TreeSet) -> TreeSet {
    let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
    tuples.insert(Vec::new());
    for tu in s.tuples() {
        if !tu.is_empty() {
            tuples.insert(tu[1..].to_vec());
        }
    }
    TreeSet::from_tuples(tuples).expect("tails of a prefix-closed family are prefix-closed")
}

/// The finite von Neumann numeral `n` as a tree code: stage `j+1` adjoins
/// stage `j` under the fresh label `j`.
pub fn omega_set(n: u64) -> TreeSet {
    let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
    tuples.insert(Vec::new());
    for j in 0..n {
        let stage: Vec<Tuple> = tuples.iter().cloned().collect();
        for tu in stage {
            let mut v = vec![nat(j)];
            v.extend(tu);
            tuples.insert(v);
        }
    }
    TreeSet::from_tuples(tuples).expect("stages are prefix-closed")
}

/// Deterministic realizer search: the equality realizer first, then small
/// naturals, then every interned handle.
pub fn find_realizer(
    pca: &mut Pca,
    f: &Formula,
    scope: &Scope,
    budget: CheckBudget,
) -> Option<Nat> {
    let mut candidates: Vec<Nat> = vec![id_realizer(pca)];
    candidates.extend((0..budget.realizer_bound).map(nat));
    candidates.extend((0..pca.table_len()).map(|i| nat(i as u64)));
    let mut seen = BTreeSet::new();
    for c in candidates {
        if !seen.insert(c.clone()) {
            continue;
        }
        let r = check_sentence(pca, &c, f, scope, budget, &[]).ok()?;
        if r.verdict.is_realized() {
            return Some(c);
        }
    }
    None
}

/// Separation `{x ∈ S | φ(x)}`: each surviving member is re-labelled by the
/// two-tuple code `<f, a>`, where `f` is the found realizer of `φ(a^S)`.
/// Members with no found realizer are omitted, which is sound: only realized
/// members enter. Returns the set and the `(f, a)` ledger.
pub fn separation_set(
    pca: &mut Pca,
    s: &TreeSet,
    phi: &Formula,
    var: &str,
    scope: &Scope,
    budget: CheckBudget,
) -> (TreeSet, Vec<(Nat, Nat)>) {
    let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
    tuples.insert(Vec::new());
    let mut found = Vec::new();
    for a in s.members() {
        let inst = scope.bind_var(var, s.member_subtree(&a));
        if let Some(f) = find_realizer(pca, phi, &inst, budget) {
            let label = encode_tuple(&[f.clone(), a.clone()]);
            for tu in s.member_subtree(&a).tuples() {
                let mut v = vec![label.clone()];
                v.extend(tu.iter().cloned());
                tuples.insert(v);
            }
            found.push((f, a));
        }
    }
    (
        TreeSet::from_tuples(tuples).expect("grafted subtrees stay prefix-closed"),
        found,
    )
}

/// The two-set ordered-pair equality `p = (x, y)` as a bounded formula over
/// the named variables, using the `{{x},{x,y}}` coding.
pub fn pair_eq_src(p: &str, x: &str, y: &str) -> String {
    format!(
        "exists u in {p}. exists v in {p}. ((forall t in {u}. t = {x}) /\\ ({x} in {u} /\\ \
         ((forall t in {v}. (t = {x} \\/ t = {y})) /\\ ({x} in {v} /\\ ({y} in {v} /\\ \
         forall w in {p}. (w = {u} \\/ w = {v}))))))",
        u = "u",
        v = "v",
    )
}

/// `R` is a total relation from `$S` to `$T`, with `R` bound to the given
/// parameter name.
pub fn total_relation_body(r_param: &str) -> Formula {
    parse(&format!(
        "forall x in $S. exists y in $T. exists p in ${r_param}. ({})",
        pair_eq_src("p", "x", "y")
    ))
    .expect("builtin formula parses")
}

/// The restriction of a totality realizer `f` to `S × T`: keep
/// exactly the members of `U` whose labels `f` itself selects. The output
/// depends on `f`'s choices, not on how `U` labels its other members.
pub fn restrict(
    pca: &mut Pca,
    f: &Nat,
    s: &TreeSet,
    u: &TreeSet,
    budget: EvalBudget,
) -> Result<TreeSet, EvalError> {
    let mut selected: BTreeSet<Nat> = BTreeSet::new();
    for a in s.members() {
        let m = canonical_member_realizer(pca, &a);
        let out = pca.apply(f, &m, budget)?;
        // out realizes `exists y in T. exists p in U. p = (x, y)`; the chosen
        // pair label sits at path 1,0,0
        let inner = pca.proj(&out, &nat(1), budget)?;
        let witness = pca.proj(&inner, &nat(0), budget)?;
        let label = pca.proj(&witness, &nat(0), budget)?;
        selected.insert(label);
    }
    let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
    tuples.insert(Vec::new());
    for tu in u.tuples() {
        if let Some(head) = tu.first() {
            if selected.contains(head) {
                tuples.insert(tu.clone());
            }
        }
    }
    Ok(TreeSet::from_tuples(tuples).expect("a label-filtered subtree family is prefix-closed"))
}

/// Strong collection witness: graft the chosen `Y_a` under each member's own
/// label. Every choice is verified against `{e}(<a, Id>)` before grafting.
pub fn strong_collection_witness(
    pca: &mut Pca,
    e: &Nat,
    s: &TreeSet,
    chooser: impl Fn(&Nat) -> Option<TreeSet>,
    phi: &Formula,
    x_var: &str,
    y_var: &str,
    scope: &Scope,
    budget: CheckBudget,
) -> Result<TreeSet, BuildError> {
    let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
    tuples.insert(Vec::new());
    for a in s.members() {
        let y = chooser(&a).ok_or(BuildError::ChooserFailure { label: a.clone() })?;
        let m = canonical_member_realizer(pca, &a);
        let out = pca.apply(e, &m, EvalBudget::new(budget.fuel))?;
        let inst = scope
            .bind_var(x_var, s.member_subtree(&a))
            .bind_var(y_var, y.clone());
        let r = check_sentence(pca, &out, phi, &inst, budget, &[])
            .expect("collection instances are closed");
        if !r.verdict.is_realized() {
            return Err(BuildError::ChooserFailure { label: a });
        }
        for tu in y.tuples() {
            let mut v = vec![a.clone()];
            v.extend(tu.iter().cloned());
            tuples.insert(v);
        }
    }
    Ok(TreeSet::from_tuples(tuples).expect("grafts stay prefix-closed"))
}

// ---------------------------------------------------------------------------
// Packages
// ---------------------------------------------------------------------------

fn instance_sets(budget: CheckBudget) -> Vec<TreeSet> {
    enumerate_hf(budget.hf_rank, budget.hf_width)
}

fn show(s: &TreeSet) -> String {
    s.decode().to_string()
}

pub fn equality_package(pca: &mut Pca, budget: CheckBudget) -> AxiomPackage {
    let i = id_realizer(pca);
    let sym = sym_realizer(pca);
    let trans = trans_realizer(pca);
    let cd = cong_d_realizer(pca);
    let ce = cong_e_realizer(pca);
    let sets = instance_sets(budget);
    let mut checks = Vec::new();
    let refl_body = parse("$S = $S").unwrap();
    for s in &sets {
        checks.push(AxiomCheck {
            instance: format!("refl S={}", show(s)),
            realizer: i.clone(),
            body: refl_body.clone(),
            scope: Scope::new().with_param("S", s.clone()),
            seeds: vec![],
        });
    }
    let sym_body = parse("$S = $T -> $T = $S").unwrap();
    for s in &sets {
        for t in &sets {
            let seeds = crate::synth::synth_eq(pca, s, t).into_iter().collect();
            checks.push(AxiomCheck {
                instance: format!("sym S={} T={}", show(s), show(t)),
                realizer: sym.clone(),
                body: sym_body.clone(),
                scope: Scope::new()
                    .with_param("S", s.clone())
                    .with_param("T", t.clone()),
                seeds,
            });
        }
    }
    let trans_body = parse("$S = $T /\\ $T = $U -> $S = $U").unwrap();
    for s in &sets {
        for t in &sets {
            for u in &sets {
                let mut seeds = Vec::new();
                if let (Some(d), Some(f)) = (
                    crate::synth::synth_eq(pca, s, t),
                    crate::synth::synth_eq(pca, t, u),
                ) {
                    seeds.push(encode_tuple(&[d, f]));
                }
                checks.push(AxiomCheck {
                    instance: format!("trans S={} T={} U={}", show(s), show(t), show(u)),
                    realizer: trans.clone(),
                    body: trans_body.clone(),
                    scope: Scope::new()
                        .with_param("S", s.clone())
                        .with_param("T", t.clone())
                        .with_param("U", u.clone()),
                    seeds,
                });
            }
        }
    }
    let cd_body = parse("$X = $Y /\\ $Z in $X -> $Z in $Y").unwrap();
    let ce_body = parse("$X = $Y /\\ $X in $Z -> $Y in $Z").unwrap();
    for x in &sets {
        for y in &sets {
            for z in &sets {
                let scope = Scope::new()
                    .with_param("X", x.clone())
                    .with_param("Y", y.clone())
                    .with_param("Z", z.clone());
                let mut cd_seeds = Vec::new();
                if let (Some(d), Some(m)) = (
                    crate::synth::synth_eq(pca, x, y),
                    crate::synth::synth_mem(pca, z, x),
                ) {
                    cd_seeds.push(encode_tuple(&[d, m]));
                }
                checks.push(AxiomCheck {
                    instance: format!("cong-d X={} Y={} Z={}", show(x), show(y), show(z)),
                    realizer: cd.clone(),
                    body: cd_body.clone(),
                    scope: scope.clone(),
                    seeds: cd_seeds,
                });
                let mut ce_seeds = Vec::new();
                if let (Some(d), Some(m)) = (
                    crate::synth::synth_eq(pca, x, y),
                    crate::synth::synth_mem(pca, x, z),
                ) {
                    ce_seeds.push(encode_tuple(&[d, m]));
                }
                checks.push(AxiomCheck {
                    instance: format!("cong-e X={} Y={} Z={}", show(x), show(y), show(z)),
                    realizer: ce.clone(),
                    body: ce_body.clone(),
                    scope,
                    seeds: ce_seeds,
                });
            }
        }
    }
    AxiomPackage {
        name: "equality",
        checks,
        allowed_unknown: vec!["imp-bound"],
    }
}

pub fn extensionality_package(pca: &mut Pca, budget: CheckBudget) -> AxiomPackage {
    let e = extensionality_realizer(pca);
    let body = parse(
        "($S = $T -> forall z. ((z in $S -> z in $T) /\\ (z in $T -> z in $S))) /\\ \
         ((forall z. ((z in $S -> z in $T) /\\ (z in $T -> z in $S))) -> $S = $T)",
    )
    .unwrap();
    let sets = instance_sets(budget);
    let mut checks = Vec::new();
    for s in &sets {
        for t in &sets {
            let seeds = crate::synth::synth_eq(pca, s, t).into_iter().collect();
            checks.push(AxiomCheck {
                instance: format!("S={} T={}", show(s), show(t)),
                realizer: e.clone(),
                body: body.clone(),
                scope: Scope::new()
                    .with_param("S", s.clone())
                    .with_param("T", t.clone()),
                seeds,
            });
        }
    }
    AxiomPackage {
        name: "extensionality",
        checks,
        allowed_unknown: vec!["imp-bound", "hf-bound"],
    }
}

pub fn set_induction_package(pca: &mut Pca, budget: CheckBudget) -> AxiomPackage {
    // antecedent realizer for the instance phi(x) := x = x
    let i = id_realizer(pca);
    let e = intern_src(pca, &format!("lam f. {i}"));
    let h = induction_realizer(pca, &e, EvalBudget::new(10_000)).expect("fixed point converges");
    let body = parse("$S = $S").unwrap();
    let checks = instance_sets(budget)
        .iter()
        .map(|s| AxiomCheck {
            instance: format!("phi:=x=x S={}", show(s)),
            realizer: h.clone(),
            body: body.clone(),
            scope: Scope::new().with_param("S", s.clone()),
            seeds: vec![],
        })
        .collect();
    AxiomPackage {
        name: "set-induction",
        checks,
        allowed_unknown: vec![],
    }
}

pub fn pairing_package(pca: &mut Pca, budget: CheckBudget) -> AxiomPackage {
    let i = id_realizer(pca);
    let g = intern_src(pca, "lam g. ifz g.0 then <0, g.1> else <1, g.1>");
    let realizer = encode_tuple(&[
        encode_tuple(&[nat(0), i.clone()]),
        encode_tuple(&[encode_tuple(&[nat(1), i.clone()]), g]),
    ]);
    let body = parse("$S in $U /\\ ($T in $U /\\ forall w in $U. (w = $S \\/ w = $T))").unwrap();
    let sets = instance_sets(budget);
    let mut checks = Vec::new();
    for s in &sets {
        for t in &sets {
            let u = pair_set(s, t);
            checks.push(AxiomCheck {
                instance: format!("S={} T={}", show(s), show(t)),
                realizer: realizer.clone(),
                body: body.clone(),
                scope: Scope::new()
                    .with_param("S", s.clone())
                    .with_param("T", t.clone())
                    .with_param("U", u),
                seeds: vec![],
            });
        }
    }
    AxiomPackage {
        name: "pairing",
        checks,
        allowed_unknown: vec![],
    }
}

pub fn union_package(pca: &mut Pca, budget: CheckBudget) -> AxiomPackage {
    let i = id_realizer(pca);
    let g = intern_src(pca, "lam g. lam f. f");
    let realizer = encode_tuple(&[i, g]);
    let body = parse("$U = $W /\\ forall w in $S. forall z in w. z in $U").unwrap();
    let checks = instance_sets(budget)
        .iter()
        .map(|s| {
            let u = union_set(s);
            // independent oracle union for comparison inside the body
            let mut acc = HfSet::empty();
            for m in s.decode().0 {
                acc = acc.union(&m);
            }
            AxiomCheck {
                instance: format!("S={}", show(s)),
                realizer: realizer.clone(),
                body: body.clone(),
                scope: Scope::new()
                    .with_param("S", s.clone())
                    .with_param("U", u)
                    .with_param("W", acc.encode()),
                seeds: vec![],
            }
        })
        .collect();
    AxiomPackage {
        name: "union",
        checks,
        allowed_unknown: vec![],
    }
}

pub fn infinity_package(pca: &mut Pca, truncation: u64) -> AxiomPackage {
    assert!(truncation >= 1);
    let v = omega_set(truncation - 1);
    let w = omega_set(truncation);
    let i = id_realizer(pca);
    let scope = Scope::new().with_param("V", v).with_param("W", w);
    let c1 = parse("exists z in $W. forall t in z. bot").unwrap();
    let succ = format!(
        "(forall t in z. (t in y \\/ t = y)) /\\ ((forall t in y. t in z) /\\ y in z)"
    );
    let c2 = parse(&format!("forall y in $V. exists z in $W. ({succ})")).unwrap();
    let c3 = parse("forall y in $W. exists z. y in z").unwrap();
    let r1 = synth(pca, &c1, &scope).expect("empty set is present in the truncation");
    let r2 = synth(pca, &c2, &scope).expect("successors are present below the truncation");
    let r3 = intern_src(pca, &format!("lam m. <0, {i}>"));
    let body = Formula::and(c1, Formula::and(c2, c3));
    let realizer = encode_tuple(&[r1, encode_tuple(&[r2, r3])]);
    AxiomPackage {
        name: "infinity",
        checks: vec![AxiomCheck {
            instance: format!("truncation={truncation}"),
            realizer,
            body,
            scope,
            seeds: vec![],
        }],
        allowed_unknown: vec!["hf-bound"],
    }
}

/// The three separation instances exercised by the suite.
pub fn separation_phis() -> Vec<(&'static str, Formula)> {
    vec![
        ("x=x", parse("x = x").unwrap()),
        ("bot", parse("bot").unwrap()),
        ("nonempty", parse("exists y. y in x").unwrap()),
    ]
}

pub fn separation_package(pca: &mut Pca, budget: CheckBudget) -> AxiomPackage {
    let mut checks = Vec::new();
    let ltr = intern_src(pca, "lam m. <<m.0.1, m.1>, m.0.0>");
    for (phi_name, phi) in separation_phis() {
        for s in instance_sets(budget) {
            let scope = Scope::new().with_param("S", s.clone());
            let (sep, found) = separation_set(pca, &s, &phi, "x", &scope, budget);
            // dispatch table: member label a of S -> its found realizer
            let max = found
                .iter()
                .map(|(_, a)| u64::try_from(a).expect("suite labels are small"))
                .max()
                .unwrap_or(0);
            let mut slots = vec![nat(0); (max + 1) as usize];
            for (f, a) in &found {
                slots[u64::try_from(a).unwrap() as usize] = f.clone();
            }
            let table = encode_tuple(&slots);
            let rtl = intern_src(
                pca,
                &format!("lam m. lam p. <<{table}.(m.0), m.0>, m.1>"),
            );
            let realizer = encode_tuple(&[ltr.clone(), rtl]);
            let phi_src = phi.to_string();
            let body = parse(&format!(
                "(forall x in $P. (x in $S /\\ ({phi_src}))) /\\ \
                 (forall x in $S. (({phi_src}) -> x in $P))"
            ))
            .unwrap();
            checks.push(AxiomCheck {
                instance: format!("phi:={phi_name} S={}", show(&s)),
                realizer,
                body,
                scope: scope.with_param("P", sep),
                seeds: vec![],
            });
        }
    }
    AxiomPackage {
        name: "separation",
        checks,
        allowed_unknown: vec!["imp-bound"],
    }
}

/// All graphs of total functions between two coded sets, as canonical codes
/// of sets of ordered pairs.
pub fn function_graphs(s: &HfSet, t: &HfSet) -> Vec<HfSet> {
    let dom: Vec<&HfSet> = s.0.iter().collect();
    let cod: Vec<&HfSet> = t.0.iter().collect();
    if dom.is_empty() {
        return vec![HfSet::empty()];
    }
    if cod.is_empty() {
        return vec![];
    }
    let mut graphs = vec![Vec::new()];
    for x in &dom {
        let mut next = Vec::new();
        for g in &graphs {
            for y in &cod {
                let mut g2: Vec<HfSet> = g.clone();
                g2.push(HfSet::ordered_pair(x, y));
                next.push(g2);
            }
        }
        graphs = next;
    }
    graphs
        .into_iter()
        .map(|ps| HfSet(ps.into_iter().collect()))
        .collect()
}

pub struct FullnessBuild {
    pub witness: TreeSet,
    pub package: AxiomPackage,
    /// (totality realizer, relation code, its restriction)
    pub pool: Vec<(Nat, TreeSet, TreeSet)>,
}

/// Build the desk-scale relation space `^S T` from a pool of total-relation
/// codes, naming each restricted member by its own totality realizer.
pub fn fullness_build(
    pca: &mut Pca,
    s: &TreeSet,
    t: &TreeSet,
    relations: &[TreeSet],
    budget: CheckBudget,
) -> Result<FullnessBuild, BuildError> {
    let tot = total_relation_body("R");
    let sub_body = parse("forall p in $V. p in $U").unwrap();
    let sub_realizer = intern_src(pca, "lam m. m");
    let mut pool = Vec::new();
    let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
    tuples.insert(Vec::new());
    let mut checks = Vec::new();
    for u in relations {
        let scope = Scope::new()
            .with_param("S", s.clone())
            .with_param("T", t.clone())
            .with_param("R", u.clone());
        let f = synth(pca, &tot, &scope).ok_or_else(|| BuildError::SynthFailure {
            what: format!("totality of {}", show(u)),
        })?;
        let v = restrict(pca, &f, s, u, EvalBudget::new(budget.fuel))?;
        for tu in v.tuples() {
            if !tu.is_empty() {
                let mut grafted = vec![f.clone()];
                grafted.extend(tu.iter().cloned());
                tuples.insert(grafted);
            }
        }
        checks.push(AxiomCheck {
            instance: format!("total f={f} R={}", show(u)),
            realizer: f.clone(),
            body: tot.clone(),
            scope: Scope::new()
                .with_param("S", s.clone())
                .with_param("T", t.clone())
                .with_param("R", v.clone()),
            seeds: vec![],
        });
        checks.push(AxiomCheck {
            instance: format!("subset f={f} R={}", show(u)),
            realizer: sub_realizer.clone(),
            body: sub_body.clone(),
            scope: Scope::new()
                .with_param("V", v.clone())
                .with_param("U", u.clone()),
            seeds: vec![],
        });
        pool.push((f, u.clone(), v));
    }
    // graft the root labels
    let witness = TreeSet::from_raw_closed(tuples);
    Ok(FullnessBuild {
        witness,
        package: AxiomPackage {
            name: "fullness",
            checks,
            allowed_unknown: vec![],
        },
        pool,
    })
}

pub fn fullness_package(pca: &mut Pca, budget: CheckBudget) -> AxiomPackage {
    let two = HfSet::von_neumann(2);
    let graphs = function_graphs(&two, &two);
    let rels: Vec<TreeSet> = graphs.iter().map(HfSet::encode).collect();
    let s = two.encode();
    let mut build =
        fullness_build(pca, &s, &s, &rels, budget).expect("function graphs synthesize");
    // the singleton instance: S = T = {emptyset}, one relation {(0,0)}
    let one = HfSet::singleton(HfSet::empty());
    let pair = HfSet::singleton(HfSet::ordered_pair(&HfSet::empty(), &HfSet::empty()));
    let one_code = one.encode();
    let small = fullness_build(pca, &one_code, &one_code, &[pair.encode()], budget)
        .expect("singleton pool synthesizes");
    build.package.checks.extend(small.package.checks);
    build.package
}

pub fn strong_collection_package(pca: &mut Pca, budget: CheckBudget) -> AxiomPackage {
    let i = id_realizer(pca);
    let prem_realizer = intern_src(pca, &format!("lam g. {i}"));
    let dir = intern_src(pca, "lam g. <g, g.1>");
    let phi = parse("x = y").unwrap();
    let body = parse(
        "(forall x in $S. exists y. x = y) /\\ \
         ((forall x in $S. exists y in $Z. x = y) /\\ (forall y in $Z. exists x in $S. y = x))",
    )
    .unwrap();
    let realizer = encode_tuple(&[prem_realizer.clone(), encode_tuple(&[dir.clone(), dir])]);
    let checks = instance_sets(budget)
        .iter()
        .map(|s| {
            let z = strong_collection_witness(
                pca,
                &prem_realizer,
                s,
                |a| Some(s.member_subtree(a)),
                &phi,
                "x",
                "y",
                &Scope::new(),
                budget,
            )
            .expect("identity chooser verifies");
            AxiomCheck {
                instance: format!("phi:=x=y S={}", show(s)),
                realizer: realizer.clone(),
                body: body.clone(),
                scope: Scope::new().with_param("S", s.clone()).with_param("Z", z),
                seeds: vec![],
            }
        })
        .collect();
    AxiomPackage {
        name: "strong-collection",
        checks,
        allowed_unknown: vec![],
    }
}

/// Every package at the default desk scale, in catalogue order.
pub fn catalogue(pca: &mut Pca, budget: CheckBudget) -> Vec<AxiomPackage> {
    vec![
        equality_package(pca, budget),
        extensionality_package(pca, budget),
        set_induction_package(pca, budget),
        pairing_package(pca, budget),
        union_package(pca, budget),
        infinity_package(pca, 3),
        separation_package(pca, budget),
        fullness_package(pca, budget),
        strong_collection_package(pca, budget),
    ]
}

pub fn package_names() -> Vec<&'static str> {
    vec![
        "pairing",
        "union",
        "infinity",
        "set-induction",
        "separation",
        "fullness",
        "strong-collection",
        "equality",
        "extensionality",
    ]
}

pub fn package_by_name(
    pca: &mut Pca,
    name: &str,
    budget: CheckBudget,
) -> Option<AxiomPackage> {
    match name {
        "equality" => Some(equality_package(pca, budget)),
        "extensionality" => Some(extensionality_package(pca, budget)),
        "set-induction" => Some(set_induction_package(pca, budget)),
        "pairing" => Some(pairing_package(pca, budget)),
        "union" => Some(union_package(pca, budget)),
        "infinity" => Some(infinity_package(pca, 3)),
        "separation" => Some(separation_package(pca, budget)),
        "fullness" => Some(fullness_package(pca, budget)),
        "strong-collection" => Some(strong_collection_package(pca, budget)),
        _ => None,
    }
}
