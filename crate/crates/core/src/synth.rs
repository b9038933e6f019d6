//! Realizer synthesis for true bounded formulas on small-label codes.
//!
//! Where the checker asks whether a given code realizes a sentence, this
//! module goes the other way: build a code that does. It succeeds only on
//! formulas whose truth is witnessed by the finite structure at hand —
//! equalities between extensionally equal codes, memberships, bounded
//! quantifiers over collections with labels below a fixed cap, and
//! implications with provably empty premises.
//!
//! Member-indexed dispatch uses a tuple as a jump table: `Proj(TBL, a)`
//! selects the entry for label `a`, which is why labels must stay small.

use crate::formula::Formula;
use crate::pca::{encode_tuple, nat, Nat, Pca, PcaTerm};
use crate::realize::{premise_vacuous, id_realizer, Scope};
use crate::treeset::TreeSet;

/// Largest member label a dispatch table will be built for.
const LABEL_CAP: u64 = 64;

fn small_label(n: &Nat) -> Option<u64> {
    let v: u64 = n.try_into().ok()?;
    (v < LABEL_CAP).then_some(v)
}

/// Build a realizer for `S = T`, or `None` when the codes are not
/// extensionally equal (or have labels past the cap).
pub fn synth_eq(pca: &mut Pca, s: &TreeSet, t: &TreeSet) -> Option<Nat> {
    if s == t {
        return Some(id_realizer(pca));
    }
    if s.decode() != t.decode() {
        return None;
    }
    let fwd = synth_eq_dir(pca, s, t)?;
    let bwd = synth_eq_dir(pca, t, s)?;
    Some(encode_tuple(&[fwd, bwd]))
}

/// One direction of an equality realizer: a label-indexed table sending each
/// member label `a` of `from` to `<b, d>` with `b^into` matching `a^from`.
fn synth_eq_dir(pca: &mut Pca, from: &TreeSet, into: &TreeSet) -> Option<Nat> {
    let mut max = 0u64;
    let mut entries: Vec<(u64, Nat)> = Vec::new();
    for a in from.members() {
        let a_small = small_label(&a)?;
        max = max.max(a_small);
        let sub = from.member_subtree(&a);
        let target = sub.decode();
        let b = into
            .members()
            .into_iter()
            .find(|b| into.member_subtree(b).decode() == target)?;
        let d = synth_eq(pca, &sub, &into.member_subtree(&b))?;
        entries.push((a_small, encode_tuple(&[b, d])));
    }
    let mut slots = vec![PcaTerm::Num(nat(0)); (max + 1) as usize];
    for (i, v) in entries {
        slots[i as usize] = PcaTerm::Num(v);
    }
    let table = PcaTerm::lam("a", PcaTerm::proj_t(PcaTerm::tuple(slots), PcaTerm::var("a")));
    Some(pca.intern(&table).expect("closed").0)
}

/// Build a realizer for `X in T`, or `None` when no member of `T` is
/// extensionally equal to `X`.
pub fn synth_mem(pca: &mut Pca, x: &TreeSet, t: &TreeSet) -> Option<Nat> {
    let target = x.decode();
    for b in t.members() {
        let sub = t.member_subtree(&b);
        if sub.decode() == target {
            if let Some(d) = synth_eq(pca, x, &sub) {
                return Some(encode_tuple(&[b, d]));
            }
        }
    }
    None
}

/// Build a realizer for a bounded formula that is true in the given scope,
/// or `None` when the formula is false, unbounded, or out of reach.
pub fn synth(pca: &mut Pca, f: &Formula, scope: &Scope) -> Option<Nat> {
    match f {
        Formula::Bot => None,
        Formula::Eq(l, r) => {
            let s = scope.resolve(l).ok()?.clone();
            let t = scope.resolve(r).ok()?.clone();
            synth_eq(pca, &s, &t)
        }
        Formula::Mem(l, r) => {
            let x = scope.resolve(l).ok()?.clone();
            let t = scope.resolve(r).ok()?.clone();
            synth_mem(pca, &x, &t)
        }
        Formula::And(l, r) => {
            let a = synth(pca, l, scope)?;
            let b = synth(pca, r, scope)?;
            Some(encode_tuple(&[a, b]))
        }
        Formula::Or(l, r) => {
            if let Some(a) = synth(pca, l, scope) {
                return Some(encode_tuple(&[nat(0), a]));
            }
            let b = synth(pca, r, scope)?;
            Some(encode_tuple(&[nat(1), b]))
        }
        Formula::Imp(l, _) => {
            // only the vacuous case is certain without a function synthesis
            premise_vacuous(l, scope).ok()?.then(|| nat(0))
        }
        Formula::ForallIn(v, t, body) => {
            let coll = scope.resolve(t).ok()?.clone();
            let mut max = 0u64;
            let mut entries: Vec<(u64, Nat)> = Vec::new();
            for a in coll.members() {
                let a_small = small_label(&a)?;
                max = max.max(a_small);
                let inner = scope.bind_var(v, coll.member_subtree(&a));
                let r = synth(pca, body, &inner)?;
                entries.push((a_small, r));
            }
            let mut slots = vec![PcaTerm::Num(nat(0)); (max + 1) as usize];
            for (i, r) in entries {
                slots[i as usize] = PcaTerm::Num(r);
            }
            // the argument is a membership realizer <a, d>; dispatch on a
            let table = PcaTerm::lam(
                "m",
                PcaTerm::proj_t(
                    PcaTerm::tuple(slots),
                    PcaTerm::proj(PcaTerm::var("m"), 0),
                ),
            );
            Some(pca.intern(&table).expect("closed").0)
        }
        Formula::ExistsIn(v, t, body) => {
            let coll = scope.resolve(t).ok()?.clone();
            for b in coll.members() {
                let witness = coll.member_subtree(&b);
                let inner = scope.bind_var(v, witness.clone());
                if let Some(d) = synth(pca, body, &inner) {
                    let q = synth_eq(pca, &witness, &witness)?;
                    return Some(encode_tuple(&[encode_tuple(&[b, q]), d]));
                }
            }
            None
        }
        Formula::Forall(_, _) => None,
        Formula::Exists(v, body) => {
            for x in crate::treeset::enumerate_hf(2, 2) {
                let inner = scope.bind_var(v, x);
                if let Some(e) = synth(pca, body, &inner) {
                    return Some(e);
                }
            }
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::realize::{check_sentence, CheckBudget, Verdict};
    use crate::treeset::{enumerate_hf_sets, HfSet, TreeSet};

    fn verify(pca: &mut Pca, e: &Nat, src: &str, scope: &Scope) -> Verdict {
        let f = parse(src).unwrap();
        check_sentence(pca, e, &f, scope, CheckBudget::default(), &[])
            .unwrap()
            .verdict
    }

    #[test]
    fn synthesized_equality_checks_out_on_relabeled_codes() {
        // two codes for {emptyset} with different member labels
        let a = TreeSet::from_tuples([vec![], vec![nat(0)]].into_iter().collect()).unwrap();
        let b = TreeSet::from_tuples([vec![], vec![nat(3)]].into_iter().collect()).unwrap();
        let mut pca = Pca::new();
        let e = synth_eq(&mut pca, &a, &b).unwrap();
        let scope = Scope::new()
            .with_param("A", a.clone())
            .with_param("B", b.clone());
        assert_eq!(verify(&mut pca, &e, "$A = $B", &scope), Verdict::Realized);
        // and not between extensionally distinct codes
        let c = HfSet::von_neumann(2).encode();
        assert!(synth_eq(&mut pca, &a, &c).is_none());
    }

    #[test]
    fn synthesized_membership_checks_out() {
        let mut pca = Pca::new();
        let two = HfSet::von_neumann(2).encode();
        let one = HfSet::von_neumann(1).encode();
        let e = synth_mem(&mut pca, &one, &two).unwrap();
        let scope = Scope::new()
            .with_param("X", one)
            .with_param("T", two.clone());
        assert_eq!(verify(&mut pca, &e, "$X in $T", &scope), Verdict::Realized);
        assert!(synth_mem(&mut pca, &two.clone(), &two).is_none());
    }

    #[test]
    fn synthesized_bounded_sentences_check_out() {
        let mut pca = Pca::new();
        for set in enumerate_hf_sets(2, 2) {
            let scope = Scope::new().with_param("S", set.encode());
            for src in [
                "forall x in $S. x = x",
                "forall x in $S. x in $S",
                "forall x in $S. exists y in $S. x = y",
            ] {
                let f = parse(src).unwrap();
                let e = synth(&mut pca, &f, &scope).unwrap();
                assert_eq!(verify(&mut pca, &e, src, &scope), Verdict::Realized, "{src}");
            }
        }
    }

    #[test]
    fn synthesis_refuses_false_formulas() {
        let mut pca = Pca::new();
        let scope = Scope::new()
            .with_param("S", HfSet::von_neumann(2).encode())
            .with_param("E", HfSet::empty().encode());
        for src in ["bot", "$S = $E", "$S in $E", "exists x in $E. x = x"] {
            let f = parse(src).unwrap();
            assert!(synth(&mut pca, &f, &scope).is_none(), "{src}");
        }
    }

    #[test]
    fn vacuous_implication_synthesis() {
        let mut pca = Pca::new();
        let scope = Scope::new()
            .with_param("S", HfSet::von_neumann(2).encode())
            .with_param("E", HfSet::empty().encode());
        let f = parse("$S in $E -> bot").unwrap();
        let e = synth(&mut pca, &f, &scope).unwrap();
        assert_eq!(
            verify(&mut pca, &e, "$S in $E -> bot", &scope),
            Verdict::Realized
        );
    }
}
