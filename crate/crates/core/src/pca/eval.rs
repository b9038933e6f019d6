//! The application structure: an intern table from naturals to closed terms,
//! call-by-value evaluation under a fuel budget, and recursion-theorem fixed
//! points that unfold only under application or projection.

use std::collections::HashMap;

use thiserror::Error;

use super::term::PcaTerm;
use super::tuple::{self, Nat};

/// A natural naming an interned closed term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeHandle(pub Nat);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalBudget {
    pub fuel: u64,
}

impl EvalBudget {
    pub fn new(fuel: u64) -> EvalBudget {
        EvalBudget { fuel }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("out of fuel")]
    OutOfFuel,
    #[error("{0} is not an interned abstraction")]
    NotAFunction(Nat),
    #[error("projection index {index} out of range for code {code} (arity {arity})")]
    ProjOutOfRange { code: Nat, index: Nat, arity: Nat },
    #[error("cannot intern open term (free variables: {0:?})")]
    OpenTerm(Vec<String>),
}

impl From<tuple::ProjOutOfRange> for EvalError {
    fn from(e: tuple::ProjOutOfRange) -> EvalError {
        EvalError::ProjOutOfRange {
            code: e.code,
            index: e.index,
            arity: e.arity,
        }
    }
}

/// Append-only table of interned terms. Handles are consecutive naturals, so
/// a natural may simultaneously be a datum, a tuple code, and a program name;
/// only naturals present in the table can be applied.
#[derive(Debug, Default, Clone)]
pub struct Pca {
    terms: Vec<PcaTerm>,
    index: HashMap<PcaTerm, usize>,
}

impl Pca {
    pub fn new() -> Pca {
        Pca::default()
    }

    pub fn table_len(&self) -> usize {
        self.terms.len()
    }

    pub fn term_of(&self, n: &Nat) -> Option<&PcaTerm> {
        let i: usize = n.try_into().ok()?;
        self.terms.get(i)
    }

    /// Intern a closed term; idempotent up to alpha-equivalence.
    pub fn intern(&mut self, t: &PcaTerm) -> Result<CodeHandle, EvalError> {
        let fv = t.free_vars();
        if !fv.is_empty() {
            return Err(EvalError::OpenTerm(fv));
        }
        let canon = t.alpha_normalize();
        if let Some(&i) = self.index.get(&canon) {
            return Ok(CodeHandle(Nat::from(i)));
        }
        let i = self.terms.len();
        self.index.insert(canon.clone(), i);
        self.terms.push(canon);
        Ok(CodeHandle(Nat::from(i)))
    }

    /// Fixed point of an interned generator `g`: returns `e` with
    /// `{e}(x) = {{g}(e)}(x)`, unfolding lazily.
    pub fn fixpoint(&mut self, g: &CodeHandle) -> CodeHandle {
        self.intern(&PcaTerm::fix(PcaTerm::Num(g.0.clone())))
            .expect("fix of a numeral is closed")
    }

    /// `{e}(x)` under a fuel budget.
    pub fn apply(&mut self, e: &Nat, x: &Nat, budget: EvalBudget) -> Result<Nat, EvalError> {
        let mut fuel = budget.fuel;
        self.apply_fueled(e, x, &mut fuel)
    }

    fn charge(fuel: &mut u64) -> Result<(), EvalError> {
        if *fuel == 0 {
            return Err(EvalError::OutOfFuel);
        }
        *fuel -= 1;
        Ok(())
    }

    fn apply_fueled(&mut self, e: &Nat, x: &Nat, fuel: &mut u64) -> Result<Nat, EvalError> {
        Self::charge(fuel)?;
        let term = match self.term_of(e) {
            Some(t) => t.clone(),
            None => return Err(EvalError::NotAFunction(e.clone())),
        };
        match term {
            PcaTerm::Lam(b, body) => {
                let mut env = HashMap::new();
                env.insert(b, x.clone());
                self.eval(&body, &env, fuel)
            }
            PcaTerm::Fix(gen) => {
                // {fix g}(x) = {{g}(fix g)}(x)
                let gv = self.eval(&gen, &HashMap::new(), fuel)?;
                let unfolded = self.apply_fueled(&gv, e, fuel)?;
                self.apply_fueled(&unfolded, x, fuel)
            }
            _ => Err(EvalError::NotAFunction(e.clone())),
        }
    }

    fn eval(
        &mut self,
        t: &PcaTerm,
        env: &HashMap<String, Nat>,
        fuel: &mut u64,
    ) -> Result<Nat, EvalError> {
        Self::charge(fuel)?;
        match t {
            PcaTerm::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| EvalError::OpenTerm(vec![v.clone()])),
            PcaTerm::Num(n) => Ok(n.clone()),
            PcaTerm::App(f, a) => {
                let vf = self.eval(f, env, fuel)?;
                let va = self.eval(a, env, fuel)?;
                self.apply_fueled(&vf, &va, fuel)
            }
            PcaTerm::Lam(_, _) | PcaTerm::Fix(_) => {
                // Value position: close over the environment and name it.
                let closed = t.subst_env(env);
                let fv = closed.free_vars();
                if !fv.is_empty() {
                    return Err(EvalError::OpenTerm(fv));
                }
                Ok(self.intern(&closed)?.0)
            }
            PcaTerm::MkTuple(es) => {
                let mut vals = Vec::with_capacity(es.len());
                for e in es {
                    vals.push(self.eval(e, env, fuel)?);
                }
                Ok(tuple::encode_tuple(&vals))
            }
            PcaTerm::Proj(s, i) => {
                let vs = self.eval(s, env, fuel)?;
                let vi = self.eval(i, env, fuel)?;
                self.proj_forced(&vs, &vi, fuel)
            }
            PcaTerm::Arity(s) => {
                let vs = self.eval(s, env, fuel)?;
                let forced = self.force_tuple_view(&vs, fuel)?;
                Ok(tuple::arity(&forced))
            }
            PcaTerm::Succ(s) => {
                let vs = self.eval(s, env, fuel)?;
                Ok(vs + 1u32)
            }
            PcaTerm::IfZero(s, then, els) => {
                let vs = self.eval(s, env, fuel)?;
                if vs == Nat::from(0u32) {
                    self.eval(then, env, fuel)
                } else {
                    self.eval(els, env, fuel)
                }
            }
        }
    }

    /// A fixed-point handle viewed as data unfolds to `{g}(e)` first.
    fn force_tuple_view(&mut self, n: &Nat, fuel: &mut u64) -> Result<Nat, EvalError> {
        let mut cur = n.clone();
        loop {
            match self.term_of(&cur) {
                Some(PcaTerm::Fix(gen)) => {
                    Self::charge(fuel)?;
                    let gen = gen.clone();
                    let gv = self.eval(&gen, &HashMap::new(), fuel)?;
                    cur = self.apply_fueled(&gv, &cur.clone(), fuel)?;
                }
                _ => return Ok(cur),
            }
        }
    }

    fn proj_forced(&mut self, n: &Nat, i: &Nat, fuel: &mut u64) -> Result<Nat, EvalError> {
        let forced = self.force_tuple_view(n, fuel)?;
        Ok(tuple::proj(&forced, i)?)
    }

    /// Projection at the interface: forces fixed points like the evaluator.
    pub fn proj(&mut self, n: &Nat, i: &Nat, budget: EvalBudget) -> Result<Nat, EvalError> {
        let mut fuel = budget.fuel;
        self.proj_forced(n, i, &mut fuel)
    }

    pub fn arity(&mut self, n: &Nat, budget: EvalBudget) -> Result<Nat, EvalError> {
        let mut fuel = budget.fuel;
        let forced = self.force_tuple_view(n, &mut fuel)?;
        Ok(tuple::arity(&forced))
    }

    /// Evaluate a closed term to a natural.
    pub fn eval_closed(&mut self, t: &PcaTerm, budget: EvalBudget) -> Result<Nat, EvalError> {
        let mut fuel = budget.fuel;
        self.eval(t, &HashMap::new(), &mut fuel)
    }
}
