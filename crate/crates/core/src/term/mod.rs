//! Loop words over variables, the constant `e`, the three binary operations
//! and the two inverse maps.
//!
//! Concrete syntax: `*`, `\`, `/`, postfix `^l` (left inverse) and `^r`
//! (right inverse). Postfix binds tightest, then `\` and `/`, then `*`; all
//! binary operators associate to the left.

mod parse;
mod program;
pub mod registry;

use std::fmt;

pub use parse::{parse, parse_identity};
pub use program::{holds, holds_sequential, CheckResult, LoopOps, Program};

use crate::error::{EvalError, ParseError};
use crate::loops::FiniteLoop;

pub const MAX_VARS: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(String),
    E,
    Mul(Box<Term>, Box<Term>),
    LDiv(Box<Term>, Box<Term>),
    RDiv(Box<Term>, Box<Term>),
    Lin(Box<Term>),
    Rin(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: Term, b: Term) -> Term {
        Term::LDiv(Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: Term, b: Term) -> Term {
        Term::RDiv(Box::new(a), Box::new(b))
    }

    pub fn lin(a: Term) -> Term {
        Term::Lin(Box::new(a))
    }

    pub fn rin(a: Term) -> Term {
        Term::Rin(Box::new(a))
    }

    /// Free variables in order of first appearance.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::E => {}
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Lin(a) | Term::Rin(a) => a.collect_vars(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::E => 1,
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => 1 + a.size() + b.size(),
            Term::Lin(a) | Term::Rin(a) => 1 + a.size(),
        }
    }

    /// Direct recursive evaluation; `env` maps variable names to elements.
    pub fn eval(&self, l: &FiniteLoop, env: &[(&str, usize)]) -> Result<usize, EvalError> {
        Ok(match self {
            Term::Var(v) => env
                .iter()
                .find(|(name, _)| name == v)
                .map(|&(_, val)| val)
                .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
            Term::E => l.identity(),
            Term::Mul(a, b) => l.mul(a.eval(l, env)?, b.eval(l, env)?),
            Term::LDiv(a, b) => l.ldiv(a.eval(l, env)?, b.eval(l, env)?),
            Term::RDiv(a, b) => l.rdiv(a.eval(l, env)?, b.eval(l, env)?),
            Term::Lin(a) => l.lin(a.eval(l, env)?),
            Term::Rin(a) => l.rin(a.eval(l, env)?),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Mul(..) => 1,
            Term::LDiv(..) | Term::RDiv(..) => 2,
            Term::Lin(_) | Term::Rin(_) => 3,
            Term::Var(_) | Term::E => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Term::Var(v) => f.write_str(v)?,
            Term::E => f.write_str("e")?,
            Term::Mul(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" * ")?;
                b.fmt_prec(f, 2)?;
            }
            Term::LDiv(a, b) | Term::RDiv(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(if matches!(self, Term::LDiv(..)) { " \\ " } else { " / " })?;
                b.fmt_prec(f, 3)?;
            }
            Term::Lin(a) => {
                a.fmt_prec(f, 3)?;
                f.write_str("^l")?;
            }
            Term::Rin(a) => {
                a.fmt_prec(f, 3)?;
                f.write_str("^r")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// An equation `lhs = rhs`, universally quantified over `vars`.
#[derive(Clone, Debug)]
pub struct Identity {
    name: String,
    lhs: Term,
    rhs: Term,
    vars: Vec<String>,
    program: Program,
}

impl PartialEq for Identity {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.lhs == other.lhs && self.rhs == other.rhs && self.vars == other.vars
    }
}

impl Identity {
    /// Variables are ordered by first appearance, left side first.
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Result<Self, EvalError> {
        let mut vars = lhs.vars();
        for v in rhs.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        Self::with_vars(name, lhs, rhs, vars)
    }

    /// `vars` must list exactly the free variables of both sides.
    pub fn with_vars(
        name: impl Into<String>,
        lhs: Term,
        rhs: Term,
        vars: Vec<String>,
    ) -> Result<Self, EvalError> {
        if vars.len() > MAX_VARS {
            return Err(EvalError::TooManyVariables(vars.len()));
        }
        for v in lhs.vars().into_iter().chain(rhs.vars()) {
            if !vars.contains(&v) {
                return Err(EvalError::UnboundVariable(v));
            }
        }
        let program = Program::compile(&lhs, &rhs, &vars);
        Ok(Identity {
            name: name.into(),
            lhs,
            rhs,
            vars,
            program,
        })
    }

    pub fn parse(name: impl Into<String>, src: &str) -> Result<Self, IdentityParseError> {
        let (lhs, rhs) = parse_identity(src)?;
        Ok(Self::new(name, lhs, rhs)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn program(&self) -> &Program {
        &self.program
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum IdentityParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
