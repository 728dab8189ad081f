//! Arithmetic term algebra over decimal literals with curried `+` and `×`,
//! extended by lambda abstraction and application.
//!
//! Binary operators are used in Schönfinkel form: `+(y)(x) = x + y` is the
//! term `App(App(Add, y), x)`, written `(add y x)` in the text syntax.

mod generalize;
mod reduce;
mod syntax;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use generalize::{anti_unify, factor_operator, match_hole, AntiUnifyError, Generalization};
pub use reduce::{beta_reduce, normalize, substitute, DEFAULT_STEP_BUDGET};
pub use syntax::{format_term, parse_term, ParseError};

/// Fixed base of the positional number system.
pub const BASE: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// Non-negative numeric literal.
    Num(u64),
    /// The power `10^k`, kept atomic.
    Pow(u32),
    Add,
    Mul,
    Var(String),
    Lam(String, Box<Term>),
    App(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("reduction exceeded the budget of {0} steps")]
    NonTermination(usize),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("term is not a number: {0}")]
    NotANumber(String),
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(String),
}

impl Term {
    pub fn num(n: u64) -> Term {
        Term::Num(n)
    }

    pub fn pow(k: u32) -> Term {
        Term::Pow(k)
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn lam(var: impl Into<String>, body: Term) -> Term {
        Term::Lam(var.into(), Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// `+(y)(x)`, i.e. `y + x`.
    pub fn add(y: Term, x: Term) -> Term {
        Term::app(Term::app(Term::Add, y), x)
    }

    /// `×(y)(x)`, i.e. `y × x`.
    pub fn mul(y: Term, x: Term) -> Term {
        Term::app(Term::app(Term::Mul, y), x)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(&v.as_str()) {
                    out.insert(v.clone());
                }
            }
            Term::Lam(v, body) => {
                bound.push(v);
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            _ => {}
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |t| {
            if let Term::Var(v) | Term::Lam(v, _) = t {
                out.insert(v.clone());
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Lam(_, b) => b.walk(f),
            Term::App(x, y) => {
                x.walk(f);
                y.walk(f);
            }
            _ => {}
        }
    }

    pub fn contains_lambda(&self) -> bool {
        let mut found = false;
        self.walk(&mut |t| found |= matches!(t, Term::Lam(..) | Term::Var(_)));
        found
    }

    /// Hash that agrees for alpha-equivalent terms: bound variables are
    /// hashed by binder depth, free ones by name.
    pub fn alpha_hash<H: std::hash::Hasher>(&self, state: &mut H) {
        fn go<'a, H: std::hash::Hasher>(t: &'a Term, env: &mut Vec<&'a str>, state: &mut H) {
            use std::hash::Hash;
            std::mem::discriminant(t).hash(state);
            match t {
                Term::Num(n) => n.hash(state),
                Term::Pow(k) => k.hash(state),
                Term::Var(v) => match env.iter().rposition(|b| b == v) {
                    Some(i) => (env.len() - i).hash(state),
                    None => v.hash(state),
                },
                Term::Lam(x, b) => {
                    env.push(x);
                    go(b, env, state);
                    env.pop();
                }
                Term::App(f, a) => {
                    go(f, env, state);
                    go(a, env, state);
                }
                Term::Add | Term::Mul => {}
            }
        }
        go(self, &mut Vec::new(), state)
    }

    /// Whether the term contains no beta redex.
    pub fn is_normal(&self) -> bool {
        match self {
            Term::App(f, a) => !matches!(**f, Term::Lam(..)) && f.is_normal() && a.is_normal(),
            Term::Lam(_, b) => b.is_normal(),
            _ => true,
        }
    }

    /// Splits `App(App(op, y), x)` into `(op, y, x)`.
    pub fn as_binary(&self) -> Option<(&Term, &Term, &Term)> {
        match self {
            Term::App(f, x) => match f.as_ref() {
                Term::App(op, y) => Some((op.as_ref(), y.as_ref(), x.as_ref())),
                _ => None,
            },
            _ => None,
        }
    }

    /// Alpha-equivalence: equal up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        fn go<'a>(a: &'a Term, b: &'a Term, env: &mut Vec<(&'a str, &'a str)>) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => {
                    for (l, r) in env.iter().rev() {
                        if *l == x || *r == y {
                            return *l == x && *r == y;
                        }
                    }
                    x == y
                }
                (Term::Lam(x, bx), Term::Lam(y, by)) => {
                    env.push((x, y));
                    let eq = go(bx, by, env);
                    env.pop();
                    eq
                }
                (Term::App(f1, a1), Term::App(f2, a2)) => go(f1, f2, env) && go(a1, a2, env),
                _ => a == b,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// Renames bound variables to de Bruijn-level names (`%0`, `%1`, ...).
    /// Two terms are alpha-equivalent iff their canonical forms are equal.
    pub fn alpha_canonical(&self) -> Term {
        fn go(t: &Term, env: &mut Vec<(String, String)>) -> Term {
            match t {
                Term::Var(v) => match env.iter().rev().find(|(n, _)| n == v) {
                    Some((_, c)) => Term::Var(c.clone()),
                    None => t.clone(),
                },
                Term::Lam(v, b) => {
                    let c = format!("%{}", env.len());
                    env.push((v.clone(), c.clone()));
                    let body = go(b, env);
                    env.pop();
                    Term::Lam(c, Box::new(body))
                }
                Term::App(f, a) => Term::app(go(f, env), go(a, env)),
                _ => t.clone(),
            }
        }
        go(self, &mut Vec::new())
    }

    /// Equality of beta-normal forms up to alpha-renaming.
    pub fn sem_eq(&self, other: &Term) -> bool {
        match (normalize(self), normalize(other)) {
            (Ok(a), Ok(b)) => a.alpha_eq(&b),
            _ => false,
        }
    }

    /// Whether the term is a lambda-free arithmetic expression that evaluates.
    pub fn is_numeral(&self) -> bool {
        evaluate_normal(self).is_ok()
    }
}

/// Value of a term after beta reduction.
pub fn evaluate(t: &Term) -> Result<u64, TermError> {
    let nf = beta_reduce(t)?;
    evaluate_normal(&nf)
}

fn evaluate_normal(t: &Term) -> Result<u64, TermError> {
    let overflow = || TermError::Overflow(format_term(t));
    match t {
        Term::Num(n) => Ok(*n),
        Term::Pow(k) => BASE.checked_pow(*k).ok_or_else(overflow),
        _ => match t.as_binary() {
            Some((Term::Add, y, x)) => evaluate_normal(y)?
                .checked_add(evaluate_normal(x)?)
                .ok_or_else(overflow),
            Some((Term::Mul, y, x)) => evaluate_normal(y)?
                .checked_mul(evaluate_normal(x)?)
                .ok_or_else(overflow),
            _ => Err(TermError::NotANumber(format_term(t))),
        },
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_term(self))
    }
}
