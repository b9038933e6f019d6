//! Sets as finite, nonempty, prefix-closed collections of tuples of naturals.
//!
//! The root tuple `()` is always present; first-level labels name members,
//! deeper levels name members of members. Finiteness makes well-foundedness
//! automatic, and [`check_inductive_minimality`] is its testable form. Codes
//! are intensional: distinct labels may name extensionally equal members.

use std::collections::BTreeSet;
use std::fmt;

use crate::pca::{nat, Nat};

pub type Tuple = Vec<Nat>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    MissingRoot,
    /// `tuple` is present but its prefix `missing` is not.
    MissingPrefix { tuple: Tuple, missing: Tuple },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty collection (a set code must contain the root)"),
            Violation::MissingRoot => write!(f, "missing root tuple ()"),
            Violation::MissingPrefix { tuple, missing } => write!(
                f,
                "tuple {} present but prefix {} missing",
                fmt_tuple(tuple),
                fmt_tuple(missing)
            ),
        }
    }
}

pub fn fmt_tuple(t: &[Nat]) -> String {
    let parts: Vec<String> = t.iter().map(|n| n.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Verdict-returning check of the tree conditions, naming the first offender.
pub fn validate(raw: &BTreeSet<Tuple>) -> Result<(), Violation> {
    if raw.is_empty() {
        return Err(Violation::Empty);
    }
    if !raw.contains(&Vec::new()) {
        return Err(Violation::MissingRoot);
    }
    for t in raw {
        for k in 1..t.len() {
            let prefix = t[..k].to_vec();
            if !raw.contains(&prefix) {
                return Err(Violation::MissingPrefix {
                    tuple: t.clone(),
                    missing: prefix,
                });
            }
        }
    }
    Ok(())
}

/// A valid set code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeSet {
    tuples: BTreeSet<Tuple>,
}

impl TreeSet {
    /// The empty set, coded as `{()}`.
    pub fn empty_set() -> TreeSet {
        let mut tuples = BTreeSet::new();
        tuples.insert(Vec::new());
        TreeSet { tuples }
    }

    pub fn from_tuples(raw: BTreeSet<Tuple>) -> Result<TreeSet, Violation> {
        validate(&raw)?;
        Ok(TreeSet { tuples: raw })
    }

    /// Adjoin the root and all missing prefixes. Constructions that, read
    /// literally, omit inner prefixes are always closed before being returned.
    pub fn from_raw_closed(raw: impl IntoIterator<Item = Tuple>) -> TreeSet {
        let mut tuples = BTreeSet::new();
        tuples.insert(Vec::new());
        for t in raw {
            for k in 1..=t.len() {
                tuples.insert(t[..k].to_vec());
            }
        }
        TreeSet { tuples }
    }

    pub fn tuples(&self) -> &BTreeSet<Tuple> {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid code always contains the root
    }

    pub fn contains(&self, t: &[Nat]) -> bool {
        self.tuples.contains(t)
    }

    /// Sorted, duplicate-free first-level labels.
    pub fn members(&self) -> Vec<Nat> {
        self.tuples
            .iter()
            .filter(|t| t.len() == 1)
            .map(|t| t[0].clone())
            .collect()
    }

    /// The continuations of `prefix`, with the root adjoined so the result is
    /// always a valid code (non-trivial even when `prefix` is absent).
    pub fn subtree(&self, prefix: &[Nat]) -> TreeSet {
        let mut tuples = BTreeSet::new();
        tuples.insert(Vec::new());
        for t in &self.tuples {
            if t.len() >= prefix.len() && &t[..prefix.len()] == prefix {
                tuples.insert(t[prefix.len()..].to_vec());
            }
        }
        TreeSet { tuples }
    }

    pub fn member_subtree(&self, label: &Nat) -> TreeSet {
        self.subtree(&[label.clone()])
    }

    /// Children of `t` in the tree: labels `a` with `t ++ <a>` present.
    pub fn children(&self, t: &[Nat]) -> Vec<Tuple> {
        self.tuples
            .iter()
            .filter(|u| u.len() == t.len() + 1 && u[..t.len()] == *t)
            .cloned()
            .collect()
    }

    pub fn decode(&self) -> HfSet {
        let mut members = BTreeSet::new();
        for a in self.members() {
            members.insert(self.member_subtree(&a).decode());
        }
        HfSet(members)
    }

    /// Bit-exact text format: one tuple per line, comma-separated decimals in
    /// parentheses, `()` for the root, lines sorted lexicographically, LF.
    pub fn to_file_string(&self) -> String {
        let mut lines: Vec<String> = self.tuples.iter().map(|t| fmt_tuple(t)).collect();
        lines.sort();
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }

    pub fn parse_file_str(text: &str) -> Result<TreeSet, String> {
        let mut raw = BTreeSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let inner = line
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| format!("line {}: expected (a,b,...)", lineno + 1))?;
            let tuple: Tuple = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<Nat>()
                            .map_err(|e| format!("line {}: bad natural {:?}: {}", lineno + 1, p, e))
                    })
                    .collect::<Result<_, _>>()?
            };
            if !raw.insert(tuple) {
                return Err(format!("line {}: duplicate tuple", lineno + 1));
            }
        }
        TreeSet::from_tuples(raw).map_err(|v| v.to_string())
    }
}

impl fmt::Display for TreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuples.iter().map(|t| fmt_tuple(t)).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// A hereditarily finite set up to extensionality: members are recursively
/// deduplicated and canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HfSet(pub BTreeSet<HfSet>);

impl HfSet {
    pub fn empty() -> HfSet {
        HfSet(BTreeSet::new())
    }

    pub fn from_members(members: impl IntoIterator<Item = HfSet>) -> HfSet {
        HfSet(members.into_iter().collect())
    }

    pub fn singleton(x: HfSet) -> HfSet {
        HfSet::from_members([x])
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.contains(x)
    }

    pub fn insert(&mut self, x: HfSet) {
        self.0.insert(x);
    }

    pub fn union(&self, other: &HfSet) -> HfSet {
        HfSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn rank(&self) -> u32 {
        self.0.iter().map(|m| m.rank() + 1).max().unwrap_or(0)
    }

    /// Canonical code: members labeled 0..k-1 in canonical order.
    pub fn encode(&self) -> TreeSet {
        let mut tuples = BTreeSet::new();
        tuples.insert(Vec::new());
        for (i, m) in self.0.iter().enumerate() {
            let label = nat(i as u64);
            for t in m.encode().tuples() {
                let mut path = vec![label.clone()];
                path.extend_from_slice(t);
                tuples.insert(path);
            }
        }
        TreeSet { tuples }
    }

    /// Von Neumann numeral: 0 = {} and n+1 = n union {n}.
    pub fn von_neumann(n: u32) -> HfSet {
        let mut cur = HfSet::empty();
        for _ in 0..n {
            let next = cur.union(&HfSet::singleton(cur.clone()));
            cur = next;
        }
        cur
    }

    /// Kuratowski ordered pair {{x},{x,y}}.
    pub fn ordered_pair(x: &HfSet, y: &HfSet) -> HfSet {
        HfSet::from_members([
            HfSet::singleton(x.clone()),
            HfSet::from_members([x.clone(), y.clone()]),
        ])
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

pub fn hf_encode(h: &HfSet) -> TreeSet {
    h.encode()
}

pub fn hf_decode(s: &TreeSet) -> HfSet {
    s.decode()
}

/// All hereditarily finite sets of rank <= `max_rank` whose every level has at
/// most `max_width` members, without extensional duplicates, in canonical
/// order.
pub fn enumerate_hf_sets(max_rank: u32, max_width: u32) -> Vec<HfSet> {
    let mut layer: BTreeSet<HfSet> = BTreeSet::new();
    layer.insert(HfSet::empty());
    for _ in 0..max_rank {
        let pool: Vec<HfSet> = layer.iter().cloned().collect();
        let mut next = layer.clone();
        for subset in bounded_subsets(&pool, max_width as usize) {
            next.insert(HfSet::from_members(subset));
        }
        if next == layer {
            break;
        }
        layer = next;
    }
    layer.into_iter().collect()
}

/// Canonical codes of [`enumerate_hf_sets`].
pub fn enumerate_hf(max_rank: u32, max_width: u32) -> Vec<TreeSet> {
    enumerate_hf_sets(max_rank, max_width)
        .iter()
        .map(HfSet::encode)
        .collect()
}

fn bounded_subsets(pool: &[HfSet], max_size: usize) -> Vec<Vec<HfSet>> {
    let mut out = vec![Vec::new()];
    for item in pool {
        let mut grown = Vec::new();
        for s in &out {
            if s.len() < max_size {
                let mut s2 = s.clone();
                s2.push(item.clone());
                grown.push(s2);
            }
        }
        out.extend(grown);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inductivity {
    /// X is inductive and (as always for finite codes) equals S.
    InductiveAndEqual,
    /// X is inductive but differs from S (impossible for valid finite codes;
    /// reported for completeness).
    InductiveProper,
    /// All children of `witness` lie in X, yet `witness` does not.
    NotInductive { witness: Tuple },
}

/// Testable form of well-foundedness: for finite valid `s`, every inductive
/// subset equals `s`.
pub fn check_inductive_minimality(s: &TreeSet, x: &BTreeSet<Tuple>) -> Inductivity {
    for t in s.tuples() {
        let children = s.children(t);
        if children.iter().all(|c| x.contains(c)) && !x.contains(t) {
            return Inductivity::NotInductive { witness: t.clone() };
        }
    }
    if x == s.tuples() {
        Inductivity::InductiveAndEqual
    } else {
        Inductivity::InductiveProper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuples(ts: &[&[u64]]) -> BTreeSet<Tuple> {
        ts.iter()
            .map(|t| t.iter().map(|&x| nat(x)).collect())
            .collect()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(validate(&tuples(&[&[]])).is_ok());
        assert!(validate(&tuples(&[&[], &[0], &[0, 1]])).is_ok());
        assert_eq!(validate(&tuples(&[&[0]])), Err(Violation::MissingRoot));
        assert_eq!(validate(&BTreeSet::new()), Err(Violation::Empty));
        match validate(&tuples(&[&[], &[0, 1]])) {
            Err(Violation::MissingPrefix { missing, .. }) => assert_eq!(missing, vec![nat(0)]),
            other => panic!("expected missing prefix, got {other:?}"),
        }
    }

    #[test]
    fn members_lists_first_level_labels() {
        let empty = TreeSet::empty_set();
        assert!(empty.members().is_empty());
        let s = TreeSet::from_tuples(tuples(&[&[], &[0], &[1], &[1, 0]])).unwrap();
        assert_eq!(s.members(), vec![nat(0), nat(1)]);
        let t = TreeSet::from_tuples(tuples(&[&[], &[5]])).unwrap();
        assert_eq!(t.members(), vec![nat(5)]);
    }

    #[test]
    fn subtree_unfolds_definition() {
        let s = TreeSet::from_tuples(tuples(&[&[], &[0], &[0, 1]])).unwrap();
        let sub = s.subtree(&[nat(0)]);
        assert_eq!(sub.tuples(), &tuples(&[&[], &[1]]));
        assert_eq!(s.subtree(&[]), s);
        // prefix not in S: empty comprehension plus adjoined root
        let e = TreeSet::empty_set();
        assert_eq!(e.subtree(&[nat(3)]), TreeSet::empty_set());
    }

    #[test]
    fn hf_round_trip() {
        assert_eq!(hf_encode(&HfSet::empty()), TreeSet::empty_set());
        let two = HfSet::from_members([HfSet::empty(), HfSet::singleton(HfSet::empty())]);
        let code = hf_encode(&two);
        assert_eq!(code.tuples(), &tuples(&[&[], &[0], &[1], &[1, 0]]));
        assert_eq!(hf_decode(&code), two);
        // two member names, one extensional member
        let dup = TreeSet::from_tuples(tuples(&[&[], &[0], &[1]])).unwrap();
        assert_eq!(hf_decode(&dup), HfSet::singleton(HfSet::empty()));
    }

    #[test]
    fn enumerate_small_universes() {
        let r0 = enumerate_hf(0, 5);
        assert_eq!(r0, vec![TreeSet::empty_set()]);
        let r1 = enumerate_hf_sets(1, 1);
        assert_eq!(
            r1,
            vec![HfSet::empty(), HfSet::singleton(HfSet::empty())]
        );
        // brute-force expectation: subsets of {0, {0}} plus the base layer
        let r22 = enumerate_hf_sets(2, 2);
        assert_eq!(r22.len(), 4);
        for h in &r22 {
            assert!(h.rank() <= 2);
        }
    }

    #[test]
    fn inductivity_counterexamples() {
        let s = TreeSet::from_tuples(tuples(&[&[], &[0]])).unwrap();
        let x = tuples(&[&[0]]);
        assert_eq!(
            check_inductive_minimality(&s, &x),
            Inductivity::NotInductive { witness: vec![] }
        );
        let e = TreeSet::empty_set();
        assert_eq!(
            check_inductive_minimality(&e, &BTreeSet::new()),
            Inductivity::NotInductive { witness: vec![] }
        );
        assert_eq!(
            check_inductive_minimality(&s, s.tuples()),
            Inductivity::InductiveAndEqual
        );
    }

    #[test]
    fn file_format_round_trip() {
        let one = hf_encode(&HfSet::singleton(HfSet::empty()));
        assert_eq!(one.to_file_string(), "()\n(0)\n");
        let parsed = TreeSet::parse_file_str("()\n(0)\n").unwrap();
        assert_eq!(parsed, one);
        assert!(TreeSet::parse_file_str("(0)\n").is_err());
    }

    #[test]
    fn von_neumann_numerals() {
        assert_eq!(HfSet::von_neumann(0), HfSet::empty());
        let three = HfSet::von_neumann(3);
        assert_eq!(three.0.len(), 3);
        assert!(three.contains(&HfSet::von_neumann(2)));
        assert_eq!(three.rank(), 3);
    }
}
