//! Surface syntax for programs: `lam x. t`, application (left-associative),
//! `<t1,...,tn>`, `t.i` (binds tighter than application), `#t`, `fix t`,
//! `ifz t then u else v`, `succ t`, numerals. Whitespace-insensitive.

use std::fmt;

use super::term::PcaTerm;
use super::tuple::Nat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for TermParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for TermParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(Nat),
    Lam,
    Fix,
    Succ,
    Ifz,
    Then,
    Else,
    Dot,
    Hash,
    LParen,
    RParen,
    LAngle,
    RAngle,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, TermParseError> {
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
            '.' => {
                toks.push((start, Tok::Dot));
                i += 1;
            }
            '#' => {
                toks.push((start, Tok::Hash));
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
            '<' => {
                toks.push((start, Tok::LAngle));
                i += 1;
            }
            '>' => {
                toks.push((start, Tok::RAngle));
                i += 1;
            }
            ',' => {
                toks.push((start, Tok::Comma));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                let n: Nat = text[i..j].parse().expect("digits parse as a natural");
                toks.push((start, Tok::Num(n)));
                i = j;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                let tok = match word {
                    "lam" => Tok::Lam,
                    "fix" => Tok::Fix,
                    "succ" => Tok::Succ,
                    "ifz" => Tok::Ifz,
                    "then" => Tok::Then,
                    "else" => Tok::Else,
                    w => Tok::Ident(w.to_string()),
                };
                toks.push((start, tok));
                i = j;
            }
            _ => {
                return Err(TermParseError {
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

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TermParseError> {
        Err(TermParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), TermParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.bump();
                Ok(())
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn term(&mut self) -> Result<PcaTerm, TermParseError> {
        match self.peek() {
            Some(Tok::Lam) => {
                self.bump();
                let name = match self.bump() {
                    Some(Tok::Ident(v)) => v,
                    _ => return self.err("expected binder after `lam`"),
                };
                self.expect(Tok::Dot, "`.` after binder")?;
                let body = self.term()?;
                Ok(PcaTerm::lam(&name, body))
            }
            Some(Tok::Ifz) => {
                self.bump();
                let scrut = self.term_no_app()?;
                self.expect(Tok::Then, "`then`")?;
                let then = self.term_no_app()?;
                self.expect(Tok::Else, "`else`")?;
                let els = self.term()?;
                Ok(PcaTerm::ifz(scrut, then, els))
            }
            _ => self.app_term(),
        }
    }

    /// A term that stops before `then`/`else` keywords: an application chain.
    fn term_no_app(&mut self) -> Result<PcaTerm, TermParseError> {
        self.app_term()
    }

    fn app_term(&mut self) -> Result<PcaTerm, TermParseError> {
        let mut acc = self.prefix_term()?;
        loop {
            match self.peek() {
                Some(
                    Tok::Ident(_)
                    | Tok::Num(_)
                    | Tok::LParen
                    | Tok::LAngle
                    | Tok::Hash
                    | Tok::Fix
                    | Tok::Succ
                    | Tok::Lam
                    | Tok::Ifz,
                ) => {
                    let arg = match self.peek() {
                        Some(Tok::Lam | Tok::Ifz) => self.term()?,
                        _ => self.prefix_term()?,
                    };
                    acc = PcaTerm::app(acc, arg);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn prefix_term(&mut self) -> Result<PcaTerm, TermParseError> {
        match self.peek() {
            Some(Tok::Fix) => {
                self.bump();
                Ok(PcaTerm::fix(self.prefix_term()?))
            }
            Some(Tok::Succ) => {
                self.bump();
                Ok(PcaTerm::succ(self.prefix_term()?))
            }
            Some(Tok::Hash) => {
                self.bump();
                Ok(PcaTerm::Arity(Box::new(self.prefix_term()?)))
            }
            _ => self.postfix_term(),
        }
    }

    fn postfix_term(&mut self) -> Result<PcaTerm, TermParseError> {
        let mut acc = self.atom()?;
        while matches!(self.peek(), Some(Tok::Dot)) {
            self.bump();
            let index = match self.peek() {
                Some(Tok::Num(_)) => match self.bump() {
                    Some(Tok::Num(n)) => PcaTerm::Num(n),
                    _ => unreachable!(),
                },
                Some(Tok::LParen) => self.atom()?,
                _ => return self.err("expected projection index after `.`"),
            };
            acc = PcaTerm::proj_t(acc, index);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<PcaTerm, TermParseError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(PcaTerm::Num(n)),
            Some(Tok::Ident(v)) => Ok(PcaTerm::Var(v)),
            Some(Tok::LParen) => {
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::LAngle) => {
                let mut elems = Vec::new();
                if matches!(self.peek(), Some(Tok::RAngle)) {
                    self.bump();
                    return Ok(PcaTerm::MkTuple(elems));
                }
                loop {
                    elems.push(self.term()?);
                    match self.bump() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RAngle) => return Ok(PcaTerm::MkTuple(elems)),
                        _ => return self.err("expected `,` or `>` in tuple"),
                    }
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

pub fn parse_term(text: &str) -> Result<PcaTerm, TermParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pca::tuple::nat;

    #[test]
    fn parses_lambda_and_projection() {
        let t = parse_term("lam e. <e.1, e.0>").unwrap();
        let want = PcaTerm::lam(
            "e",
            PcaTerm::tuple(vec![
                PcaTerm::proj(PcaTerm::var("e"), 1),
                PcaTerm::proj(PcaTerm::var("e"), 0),
            ]),
        );
        assert_eq!(t, want);
    }

    #[test]
    fn projection_binds_tighter_than_application() {
        let t = parse_term("lam f. lam x. f x.0").unwrap();
        let want = PcaTerm::lam(
            "f",
            PcaTerm::lam(
                "x",
                PcaTerm::app(PcaTerm::var("f"), PcaTerm::proj(PcaTerm::var("x"), 0)),
            ),
        );
        assert_eq!(t, want);
    }

    #[test]
    fn application_is_left_associative() {
        let t = parse_term("lam a. lam b. lam c. a b c").unwrap();
        let want = PcaTerm::lam(
            "a",
            PcaTerm::lam(
                "b",
                PcaTerm::lam(
                    "c",
                    PcaTerm::app(
                        PcaTerm::app(PcaTerm::var("a"), PcaTerm::var("b")),
                        PcaTerm::var("c"),
                    ),
                ),
            ),
        );
        assert_eq!(t, want);
    }

    #[test]
    fn parses_ifz_fix_succ_arity() {
        let t = parse_term("ifz #<5> then succ 1 else fix (lam f. f)").unwrap();
        match t {
            PcaTerm::IfZero(_, _, _) => {}
            other => panic!("unexpected parse: {other:?}"),
        }
        assert_eq!(parse_term("succ 4").unwrap(), PcaTerm::succ(PcaTerm::num(nat(4))));
    }

    #[test]
    fn reports_position_on_error() {
        let err = parse_term("lam ? x").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(parse_term("lam . x").is_err());
    }
}
