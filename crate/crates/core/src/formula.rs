//! The object language: bottom, equality, membership, the propositional
//! connectives, and set quantifiers in both unbounded and bounded forms.
//! Negation is not a node: `~p` is sugar for `p -> bot`.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// Reference to a set code bound in the checking environment.
    Param(String),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn param(name: &str) -> Term {
        Term::Param(name.to_string())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Param(p) => write!(f, "${p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Eq(Term, Term),
    Mem(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// `forall v in t. body`; semantically `forall v. (v in t -> body)`.
    ForallIn(String, Term, Box<Formula>),
    /// `exists v in t. body`; semantically `exists v. (v in t /\ body)`.
    ExistsIn(String, Term, Box<Formula>),
}

impl Formula {
    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn neg(p: Formula) -> Formula {
        Formula::imp(p, Formula::Bot)
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    pub fn forall_in(v: &str, bound: Term, body: Formula) -> Formula {
        Formula::ForallIn(v.to_string(), bound, Box::new(body))
    }

    pub fn exists_in(v: &str, bound: Term, body: Formula) -> Formula {
        Formula::ExistsIn(v.to_string(), bound, Box::new(body))
    }

    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Eq(l, r)
    }

    pub fn mem(elem: Term, coll: Term) -> Formula {
        Formula::Mem(elem, coll)
    }

    /// Replace bounded quantifiers by their defining unbounded forms.
    pub fn desugar_bounded(&self) -> Formula {
        match self {
            Formula::Bot | Formula::Eq(_, _) | Formula::Mem(_, _) => self.clone(),
            Formula::And(l, r) => Formula::and(l.desugar_bounded(), r.desugar_bounded()),
            Formula::Or(l, r) => Formula::or(l.desugar_bounded(), r.desugar_bounded()),
            Formula::Imp(l, r) => Formula::imp(l.desugar_bounded(), r.desugar_bounded()),
            Formula::Forall(v, b) => Formula::forall(v, b.desugar_bounded()),
            Formula::Exists(v, b) => Formula::exists(v, b.desugar_bounded()),
            Formula::ForallIn(v, t, b) => Formula::forall(
                v,
                Formula::imp(
                    Formula::mem(Term::var(v), t.clone()),
                    b.desugar_bounded(),
                ),
            ),
            Formula::ExistsIn(v, t, b) => Formula::exists(
                v,
                Formula::and(
                    Formula::mem(Term::var(v), t.clone()),
                    b.desugar_bounded(),
                ),
            ),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut acc);
        acc
    }

    fn collect_free(&self, bound: &mut Vec<String>, acc: &mut BTreeSet<String>) {
        let term = |t: &Term, bound: &Vec<String>, acc: &mut BTreeSet<String>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    acc.insert(v.clone());
                }
            }
        };
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) | Formula::Mem(l, r) => {
                term(l, bound, acc);
                term(r, bound, acc);
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_free(bound, acc);
                r.collect_free(bound, acc);
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                bound.push(v.clone());
                b.collect_free(bound, acc);
                bound.pop();
            }
            Formula::ForallIn(v, t, b) | Formula::ExistsIn(v, t, b) => {
                term(t, bound, acc);
                bound.push(v.clone());
                b.collect_free(bound, acc);
                bound.pop();
            }
        }
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.collect_params(&mut acc);
        acc
    }

    fn collect_params(&self, acc: &mut BTreeSet<String>) {
        let term = |t: &Term, acc: &mut BTreeSet<String>| {
            if let Term::Param(p) = t {
                acc.insert(p.clone());
            }
        };
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) | Formula::Mem(l, r) => {
                term(l, acc);
                term(r, acc);
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_params(acc);
                r.collect_params(acc);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.collect_params(acc),
            Formula::ForallIn(_, t, b) | Formula::ExistsIn(_, t, b) => {
                term(t, acc);
                b.collect_params(acc);
            }
        }
    }

    /// Capture-avoiding substitution of `replacement` for free occurrences of
    /// variable `v`.
    pub fn substitute(&self, v: &str, replacement: &Term) -> Formula {
        let term = |t: &Term| -> Term {
            match t {
                Term::Var(x) if x == v => replacement.clone(),
                other => other.clone(),
            }
        };
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Eq(l, r) => Formula::Eq(term(l), term(r)),
            Formula::Mem(l, r) => Formula::Mem(term(l), term(r)),
            Formula::And(l, r) => Formula::and(l.substitute(v, replacement), r.substitute(v, replacement)),
            Formula::Or(l, r) => Formula::or(l.substitute(v, replacement), r.substitute(v, replacement)),
            Formula::Imp(l, r) => Formula::imp(l.substitute(v, replacement), r.substitute(v, replacement)),
            Formula::Forall(b, body) => {
                self.substitute_binder(v, replacement, b, body, |b, body| {
                    Formula::Forall(b, Box::new(body))
                })
            }
            Formula::Exists(b, body) => {
                self.substitute_binder(v, replacement, b, body, |b, body| {
                    Formula::Exists(b, Box::new(body))
                })
            }
            Formula::ForallIn(b, t, body) => {
                let t2 = term(t);
                self.substitute_binder(v, replacement, b, body, move |b, body| {
                    Formula::ForallIn(b, t2.clone(), Box::new(body))
                })
            }
            Formula::ExistsIn(b, t, body) => {
                let t2 = term(t);
                self.substitute_binder(v, replacement, b, body, move |b, body| {
                    Formula::ExistsIn(b, t2.clone(), Box::new(body))
                })
            }
        }
    }

    fn substitute_binder(
        &self,
        v: &str,
        replacement: &Term,
        binder: &str,
        body: &Formula,
        rebuild: impl Fn(String, Formula) -> Formula,
    ) -> Formula {
        if binder == v {
            // v is not free below this binder
            return rebuild(binder.to_string(), (**Box::new(body)).clone());
        }
        let captures = matches!(replacement, Term::Var(x) if x == binder);
        if captures {
            let fresh = fresh_name(binder, &body.free_vars());
            let renamed = body.substitute(binder, &Term::var(&fresh));
            rebuild(fresh, renamed.substitute(v, replacement))
        } else {
            rebuild(binder.to_string(), body.substitute(v, replacement))
        }
    }

    /// Rename bound variables so they are distinct from all free variables
    /// and from each other.
    pub fn alpha_disambiguate(&self) -> Formula {
        let mut used = self.free_vars();
        self.disamb(&mut used)
    }

    fn disamb(&self, used: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::Bot | Formula::Eq(_, _) | Formula::Mem(_, _) => self.clone(),
            Formula::And(l, r) => Formula::and(l.disamb(used), r.disamb(used)),
            Formula::Or(l, r) => Formula::or(l.disamb(used), r.disamb(used)),
            Formula::Imp(l, r) => Formula::imp(l.disamb(used), r.disamb(used)),
            Formula::Forall(v, b) => {
                let (v2, b2) = rebind(v, b, used);
                Formula::Forall(v2, Box::new(b2.disamb(used)))
            }
            Formula::Exists(v, b) => {
                let (v2, b2) = rebind(v, b, used);
                Formula::Exists(v2, Box::new(b2.disamb(used)))
            }
            Formula::ForallIn(v, t, b) => {
                let (v2, b2) = rebind(v, b, used);
                Formula::ForallIn(v2, t.clone(), Box::new(b2.disamb(used)))
            }
            Formula::ExistsIn(v, t, b) => {
                let (v2, b2) = rebind(v, b, used);
                Formula::ExistsIn(v2, t.clone(), Box::new(b2.disamb(used)))
            }
        }
    }
}

fn rebind(v: &str, body: &Formula, used: &mut BTreeSet<String>) -> (String, Formula) {
    if used.contains(v) {
        let fresh = fresh_name(v, used);
        used.insert(fresh.clone());
        (fresh.clone(), body.substitute(v, &Term::var(&fresh)))
    } else {
        used.insert(v.to_string());
        (v.to_string(), body.clone())
    }
}

fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem: String = base.chars().take_while(|c| *c != '_').collect();
    for k in 0.. {
        let cand = format!("{stem}_{k}");
        if !avoid.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Formula {
    // precedence levels: 0 = ->, 1 = \/, 2 = /\, 3 = atom
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, need: bool, inner: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result| {
            if need {
                write!(f, "(")?;
                inner(f)?;
                write!(f, ")")
            } else {
                inner(f)
            }
        };
        match self {
            Formula::Bot => write!(f, "bot"),
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::Mem(l, r) => write!(f, "{l} in {r}"),
            Formula::Imp(l, r) => paren(f, prec > 0, &|f| {
                l.fmt_prec(f, 1)?;
                write!(f, " -> ")?;
                r.fmt_prec(f, 0)
            }),
            Formula::Or(l, r) => paren(f, prec > 1, &|f| {
                l.fmt_prec(f, 2)?;
                write!(f, " \\/ ")?;
                r.fmt_prec(f, 1)
            }),
            Formula::And(l, r) => paren(f, prec > 2, &|f| {
                l.fmt_prec(f, 3)?;
                write!(f, " /\\ ")?;
                r.fmt_prec(f, 2)
            }),
            Formula::Forall(v, b) => paren(f, prec > 0, &|f| {
                write!(f, "forall {v}. ")?;
                b.fmt_prec(f, 0)
            }),
            Formula::Exists(v, b) => paren(f, prec > 0, &|f| {
                write!(f, "exists {v}. ")?;
                b.fmt_prec(f, 0)
            }),
            Formula::ForallIn(v, t, b) => paren(f, prec > 0, &|f| {
                write!(f, "forall {v} in {t}. ")?;
                b.fmt_prec(f, 0)
            }),
            Formula::ExistsIn(v, t, b) => paren(f, prec > 0, &|f| {
                write!(f, "exists {v} in {t}. ")?;
                b.fmt_prec(f, 0)
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Bot,
    Eq,
    In,
    AndOp,
    OrOp,
    ImpOp,
    Neg,
    Forall,
    Exists,
    Dot,
    LParen,
    RParen,
    Var(String),
    Param(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            '=' => {
                toks.push((start, Tok::Eq));
                i += 1;
            }
            '.' => {
                toks.push((start, Tok::Dot));
                i += 1;
            }
            '~' => {
                toks.push((start, Tok::Neg));
                i += 1;
            }
            '(' => {
                toks.push((start, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((start, Tok::RParen));
                i += 1;
            }
            '/' if bytes.get(i + 1) == Some(&b'\\') => {
                toks.push((start, Tok::AndOp));
                i += 2;
            }
            '\\' if bytes.get(i + 1) == Some(&b'/') => {
                toks.push((start, Tok::OrOp));
                i += 2;
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((start, Tok::ImpOp));
                i += 2;
            }
            '$' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(ParseError {
                        position: i,
                        message: "expected parameter name after `$`".into(),
                    });
                }
                toks.push((start, Tok::Param(text[i + 1..j].to_string())));
                i = j;
            }
            c if c.is_ascii_lowercase() => {
                let mut j = i;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                let tok = match word {
                    "bot" => Tok::Bot,
                    "in" => Tok::In,
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    w => Tok::Var(w.to_string()),
                };
                toks.push((start, tok));
                i = j;
            }
            _ => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    // -> is right-associative and lowest; then \/; then /\.
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let l = self.or_formula()?;
        if matches!(self.peek(), Some(Tok::ImpOp)) {
            self.bump();
            let r = self.formula()?;
            return Ok(Formula::imp(l, r));
        }
        Ok(l)
    }

    fn or_formula(&mut self) -> Result<Formula, ParseError> {
        let l = self.and_formula()?;
        if matches!(self.peek(), Some(Tok::OrOp)) {
            self.bump();
            let r = self.or_formula()?;
            return Ok(Formula::or(l, r));
        }
        Ok(l)
    }

    fn and_formula(&mut self) -> Result<Formula, ParseError> {
        let l = self.unary()?;
        if matches!(self.peek(), Some(Tok::AndOp)) {
            self.bump();
            let r = self.and_formula()?;
            return Ok(Formula::and(l, r));
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Neg) => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::Forall | Tok::Exists) => self.quantifier(),
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, ParseError> {
        let is_forall = matches!(self.bump(), Some(Tok::Forall));
        let v = match self.bump() {
            Some(Tok::Var(v)) => v,
            _ => return self.err("expected variable after quantifier"),
        };
        let bound = if matches!(self.peek(), Some(Tok::In)) {
            self.bump();
            Some(self.term()?)
        } else {
            None
        };
        match self.bump() {
            Some(Tok::Dot) => {}
            _ => return self.err("expected `.` after quantifier prefix"),
        }
        // quantifier bodies extend maximally right
        let body = self.formula()?;
        Ok(match (is_forall, bound) {
            (true, None) => Formula::forall(&v, body),
            (false, None) => Formula::exists(&v, body),
            (true, Some(t)) => Formula::forall_in(&v, t, body),
            (false, Some(t)) => Formula::exists_in(&v, t, body),
        })
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Bot) => {
                self.bump();
                Ok(Formula::Bot)
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(f),
                    _ => self.err("expected `)`"),
                }
            }
            Some(Tok::Var(_) | Tok::Param(_)) => {
                let l = self.term()?;
                match self.bump() {
                    Some(Tok::Eq) => Ok(Formula::Eq(l, self.term()?)),
                    Some(Tok::In) => Ok(Formula::Mem(l, self.term()?)),
                    _ => self.err("expected `=` or `in` after term"),
                }
            }
            _ => self.err("expected a formula"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.bump() {
            Some(Tok::Var(v)) => Ok(Term::Var(v)),
            Some(Tok::Param(p)) => Ok(Term::Param(p)),
            _ => self.err("expected a term (variable or $parameter)"),
        }
    }
}

/// Parse a formula; bound variables are renamed apart from free variables.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f.alpha_disambiguate())
}

// ---------------------------------------------------------------------------
// Classical Levy rank
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Delta0,
    Sigma(u32),
    Pi(u32),
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Delta0 => write!(f, "Delta0"),
            Rank::Sigma(n) => write!(f, "Sigma{n}"),
            Rank::Pi(n) => write!(f, "Pi{n}"),
        }
    }
}

/// Minimal n with the formula classically Sigma_n, resp. Pi_n. Bounded
/// quantifiers do not raise rank; the antecedent of an implication dualizes.
fn rank_pair(f: &Formula) -> (u32, u32) {
    match f {
        Formula::Bot | Formula::Eq(_, _) | Formula::Mem(_, _) => (0, 0),
        Formula::And(l, r) | Formula::Or(l, r) => {
            let (ls, lp) = rank_pair(l);
            let (rs, rp) = rank_pair(r);
            (ls.max(rs), lp.max(rp))
        }
        Formula::Imp(l, r) => {
            // classical rank of (~l \/ r)
            let (ls, lp) = rank_pair(l);
            let (rs, rp) = rank_pair(r);
            (lp.max(rs), ls.max(rp))
        }
        Formula::Exists(_, b) => {
            let (s, p) = rank_pair(b);
            let s2 = s.max(1).min(p + 1);
            (s2, s2 + 1)
        }
        Formula::Forall(_, b) => {
            let (s, p) = rank_pair(b);
            let p2 = p.max(1).min(s + 1);
            (p2 + 1, p2)
        }
        Formula::ForallIn(_, _, b) | Formula::ExistsIn(_, _, b) => rank_pair(b),
    }
}

pub fn levy_rank(f: &Formula) -> Rank {
    let (s, p) = rank_pair(f);
    if s == 0 && p == 0 {
        Rank::Delta0
    } else if s <= p {
        Rank::Sigma(s)
    } else {
        Rank::Pi(p)
    }
}
