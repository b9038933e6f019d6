//! Program syntax of the application structure.

use std::collections::HashMap;
use std::fmt;

use super::tuple::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PcaTerm {
    Var(String),
    Num(Nat),
    App(Box<PcaTerm>, Box<PcaTerm>),
    Lam(String, Box<PcaTerm>),
    MkTuple(Vec<PcaTerm>),
    /// Projection; the index is itself a term.
    Proj(Box<PcaTerm>, Box<PcaTerm>),
    Arity(Box<PcaTerm>),
    Fix(Box<PcaTerm>),
    IfZero(Box<PcaTerm>, Box<PcaTerm>, Box<PcaTerm>),
    Succ(Box<PcaTerm>),
}

impl PcaTerm {
    pub fn var(name: &str) -> PcaTerm {
        PcaTerm::Var(name.to_string())
    }

    pub fn num(n: Nat) -> PcaTerm {
        PcaTerm::Num(n)
    }

    pub fn app(f: PcaTerm, a: PcaTerm) -> PcaTerm {
        PcaTerm::App(Box::new(f), Box::new(a))
    }

    pub fn lam(binder: &str, body: PcaTerm) -> PcaTerm {
        PcaTerm::Lam(binder.to_string(), Box::new(body))
    }

    pub fn tuple(elems: Vec<PcaTerm>) -> PcaTerm {
        PcaTerm::MkTuple(elems)
    }

    pub fn proj(src: PcaTerm, index: u64) -> PcaTerm {
        PcaTerm::Proj(Box::new(src), Box::new(PcaTerm::Num(Nat::from(index))))
    }

    pub fn proj_t(src: PcaTerm, index: PcaTerm) -> PcaTerm {
        PcaTerm::Proj(Box::new(src), Box::new(index))
    }

    pub fn fix(gen: PcaTerm) -> PcaTerm {
        PcaTerm::Fix(Box::new(gen))
    }

    pub fn ifz(scrut: PcaTerm, then: PcaTerm, els: PcaTerm) -> PcaTerm {
        PcaTerm::IfZero(Box::new(scrut), Box::new(then), Box::new(els))
    }

    pub fn succ(src: PcaTerm) -> PcaTerm {
        PcaTerm::Succ(Box::new(src))
    }

    /// Call-by-value let: `(lam binder. body) value`.
    pub fn let_(binder: &str, value: PcaTerm, body: PcaTerm) -> PcaTerm {
        PcaTerm::app(PcaTerm::lam(binder, body), value)
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut acc = Vec::new();
        self.collect_free(&mut Vec::new(), &mut acc);
        acc
    }

    fn collect_free(&self, bound: &mut Vec<String>, acc: &mut Vec<String>) {
        match self {
            PcaTerm::Var(v) => {
                if !bound.iter().any(|b| b == v) && !acc.contains(v) {
                    acc.push(v.clone());
                }
            }
            PcaTerm::Num(_) => {}
            PcaTerm::App(f, a) => {
                f.collect_free(bound, acc);
                a.collect_free(bound, acc);
            }
            PcaTerm::Lam(b, body) => {
                bound.push(b.clone());
                body.collect_free(bound, acc);
                bound.pop();
            }
            PcaTerm::MkTuple(es) => {
                for e in es {
                    e.collect_free(bound, acc);
                }
            }
            PcaTerm::Proj(s, i) => {
                s.collect_free(bound, acc);
                i.collect_free(bound, acc);
            }
            PcaTerm::Arity(s) | PcaTerm::Fix(s) | PcaTerm::Succ(s) => s.collect_free(bound, acc),
            PcaTerm::IfZero(s, t, e) => {
                s.collect_free(bound, acc);
                t.collect_free(bound, acc);
                e.collect_free(bound, acc);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Binders renamed to `_0`, `_1`, ... in traversal order, so that
    /// alpha-equivalent terms become structurally equal.
    pub fn alpha_normalize(&self) -> PcaTerm {
        let mut counter = 0usize;
        self.normalize(&HashMap::new(), &mut counter)
    }

    fn normalize(&self, ren: &HashMap<String, String>, counter: &mut usize) -> PcaTerm {
        match self {
            PcaTerm::Var(v) => PcaTerm::Var(ren.get(v).cloned().unwrap_or_else(|| v.clone())),
            PcaTerm::Num(n) => PcaTerm::Num(n.clone()),
            PcaTerm::App(f, a) => {
                PcaTerm::app(f.normalize(ren, counter), a.normalize(ren, counter))
            }
            PcaTerm::Lam(b, body) => {
                let fresh = format!("_{counter}");
                *counter += 1;
                let mut ren2 = ren.clone();
                ren2.insert(b.clone(), fresh.clone());
                PcaTerm::Lam(fresh, Box::new(body.normalize(&ren2, counter)))
            }
            PcaTerm::MkTuple(es) => {
                PcaTerm::MkTuple(es.iter().map(|e| e.normalize(ren, counter)).collect())
            }
            PcaTerm::Proj(s, i) => {
                PcaTerm::proj_t(s.normalize(ren, counter), i.normalize(ren, counter))
            }
            PcaTerm::Arity(s) => PcaTerm::Arity(Box::new(s.normalize(ren, counter))),
            PcaTerm::Fix(s) => PcaTerm::Fix(Box::new(s.normalize(ren, counter))),
            PcaTerm::Succ(s) => PcaTerm::succ(s.normalize(ren, counter)),
            PcaTerm::IfZero(s, t, e) => PcaTerm::ifz(
                s.normalize(ren, counter),
                t.normalize(ren, counter),
                e.normalize(ren, counter),
            ),
        }
    }

    /// Replace every free occurrence of variables bound in `env` by the
    /// corresponding numeral. Substituting closed numerals cannot capture.
    pub fn subst_env(&self, env: &HashMap<String, Nat>) -> PcaTerm {
        match self {
            PcaTerm::Var(v) => match env.get(v) {
                Some(n) => PcaTerm::Num(n.clone()),
                None => self.clone(),
            },
            PcaTerm::Num(_) => self.clone(),
            PcaTerm::App(f, a) => PcaTerm::app(f.subst_env(env), a.subst_env(env)),
            PcaTerm::Lam(b, body) => {
                if env.contains_key(b) {
                    let mut env2 = env.clone();
                    env2.remove(b);
                    PcaTerm::Lam(b.clone(), Box::new(body.subst_env(&env2)))
                } else {
                    PcaTerm::Lam(b.clone(), Box::new(body.subst_env(env)))
                }
            }
            PcaTerm::MkTuple(es) => {
                PcaTerm::MkTuple(es.iter().map(|e| e.subst_env(env)).collect())
            }
            PcaTerm::Proj(s, i) => PcaTerm::proj_t(s.subst_env(env), i.subst_env(env)),
            PcaTerm::Arity(s) => PcaTerm::Arity(Box::new(s.subst_env(env))),
            PcaTerm::Fix(s) => PcaTerm::Fix(Box::new(s.subst_env(env))),
            PcaTerm::Succ(s) => PcaTerm::succ(s.subst_env(env)),
            PcaTerm::IfZero(s, t, e) => {
                PcaTerm::ifz(s.subst_env(env), t.subst_env(env), e.subst_env(env))
            }
        }
    }
}

impl fmt::Display for PcaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcaTerm::Var(v) => write!(f, "{v}"),
            PcaTerm::Num(n) => write!(f, "{n}"),
            PcaTerm::App(g, a) => {
                write!(f, "({g} {a})")
            }
            PcaTerm::Lam(b, body) => write!(f, "(lam {b}. {body})"),
            PcaTerm::MkTuple(es) => {
                write!(f, "<")?;
                for (k, e) in es.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ">")
            }
            PcaTerm::Proj(s, i) => write!(f, "({s}.{i})"),
            PcaTerm::Arity(s) => write!(f, "(#{s})"),
            PcaTerm::Fix(s) => write!(f, "(fix {s})"),
            PcaTerm::IfZero(s, t, e) => write!(f, "(ifz {s} then {t} else {e})"),
            PcaTerm::Succ(s) => write!(f, "(succ {s})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_normalization_identifies_renamings() {
        let a = PcaTerm::lam("x", PcaTerm::var("x"));
        let b = PcaTerm::lam("y", PcaTerm::var("y"));
        assert_eq!(a.alpha_normalize(), b.alpha_normalize());
    }

    #[test]
    fn free_vars_respect_binding() {
        let t = PcaTerm::lam("x", PcaTerm::app(PcaTerm::var("x"), PcaTerm::var("y")));
        assert_eq!(t.free_vars(), vec!["y".to_string()]);
        assert!(!t.is_closed());
    }
}
