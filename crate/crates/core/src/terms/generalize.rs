//! One-hole anti-unification and operator factoring.

use std::collections::BTreeSet;

use thiserror::Error;

use super::reduce::fresh_name;
use super::{beta_reduce, Term};

/// A one-hole generalization `context = λx.C[x]` with
/// `context arg1 →β t1` and `context arg2 →β t2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generalization {
    pub context: Term,
    pub arg1: Term,
    pub arg2: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntiUnifyError {
    #[error("terms are identical; nothing to abstract")]
    Identical,
    #[error("terms share no one-hole pattern")]
    NoCommonPattern,
    #[error("term is not factorable into operator and argument")]
    NotFactorable,
    #[error(transparent)]
    Term(#[from] super::TermError),
}

/// Least general one-hole generalization of two closed terms.
///
/// Returns [`AntiUnifyError::NoCommonPattern`] when the terms differ at the
/// root or at several positions with different argument pairs.
pub fn anti_unify(t1: &Term, t2: &Term) -> Result<Generalization, AntiUnifyError> {
    let a = beta_reduce(t1)?;
    let b = beta_reduce(t2)?;
    if a.alpha_eq(&b) {
        return Err(AntiUnifyError::Identical);
    }
    let mut used = a.all_vars();
    used.extend(b.all_vars());
    let hole = if used.contains("x") { fresh_name("x", &used) } else { "x".to_string() };

    let mut pairs = Vec::new();
    let body = generalize(&a, &b, &hole, &mut pairs);
    if matches!(&body, Term::Var(v) if *v == hole) {
        return Err(AntiUnifyError::NoCommonPattern);
    }
    let (arg1, arg2) = pairs.first().cloned().ok_or(AntiUnifyError::NoCommonPattern)?;
    let consistent = pairs.iter().all(|(p, q)| p.alpha_eq(&arg1) && q.alpha_eq(&arg2));
    if !consistent || !arg1.is_closed() || !arg2.is_closed() {
        return Err(AntiUnifyError::NoCommonPattern);
    }
    Ok(Generalization { context: Term::lam(hole, body), arg1, arg2 })
}

fn generalize(a: &Term, b: &Term, hole: &str, pairs: &mut Vec<(Term, Term)>) -> Term {
    if a.alpha_eq(b) {
        return a.clone();
    }
    match (a, b) {
        (Term::App(f1, x1), Term::App(f2, x2)) => {
            Term::app(generalize(f1, f2, hole, pairs), generalize(x1, x2, hole, pairs))
        }
        (Term::Lam(v1, b1), Term::Lam(v2, b2)) if v1 == v2 => {
            Term::lam(v1.clone(), generalize(b1, b2, hole, pairs))
        }
        _ => {
            pairs.push((a.clone(), b.clone()));
            Term::var(hole)
        }
    }
}

/// Splits `λx.op(G)(x)` into the bare operator `λy.λx.op(y)(x)` and `G`.
pub fn factor_operator(t: &Term) -> Result<(Term, Term), AntiUnifyError> {
    let Term::Lam(x, body) = t else {
        return Err(AntiUnifyError::NotFactorable);
    };
    let Some((op, g, arg)) = body.as_binary() else {
        return Err(AntiUnifyError::NotFactorable);
    };
    let op_ok = matches!(op, Term::Add | Term::Mul);
    if !op_ok || *arg != Term::Var(x.clone()) || !g.is_closed() {
        return Err(AntiUnifyError::NotFactorable);
    }
    let y = if x == "y" { fresh_name("y", &BTreeSet::from([x.clone()])) } else { "y".to_string() };
    let operator = Term::lam(
        y.clone(),
        Term::lam(
            x.clone(),
            Term::app(Term::app(op.clone(), Term::var(y)), Term::var(x.clone())),
        ),
    );
    Ok((operator, g.clone()))
}

/// First-order matching of `pattern`, in which the free variable `hole`
/// stands for an unknown closed subterm, against `target`.
pub fn match_hole(pattern: &Term, hole: &str, target: &Term) -> Option<Term> {
    let mut found: Option<Term> = None;
    let mut bound = Vec::new();
    if matches_at(pattern, hole, target, &mut bound, &mut found) {
        found
    } else {
        None
    }
}

fn matches_at(
    p: &Term,
    hole: &str,
    t: &Term,
    bound: &mut Vec<(String, String)>,
    found: &mut Option<Term>,
) -> bool {
    match (p, t) {
        (Term::Var(v), _) if v == hole && !bound.iter().any(|(b, _)| b == hole) => {
            let fv = t.free_vars();
            if bound.iter().any(|(_, tb)| fv.contains(tb)) {
                return false;
            }
            match found {
                Some(prev) => prev.alpha_eq(t),
                None => {
                    *found = Some(t.clone());
                    true
                }
            }
        }
        (Term::Var(a), Term::Var(b)) => {
            match bound.iter().rev().find(|(pb, tb)| pb == a || tb == b) {
                Some((pb, tb)) => pb == a && tb == b,
                None => a == b,
            }
        }
        (Term::Lam(a, pb), Term::Lam(b, tb)) => {
            bound.push((a.clone(), b.clone()));
            let ok = matches_at(pb, hole, tb, bound, found);
            bound.pop();
            ok
        }
        (Term::App(pf, pa), Term::App(tf, ta)) => {
            matches_at(pf, hole, tf, bound, found) && matches_at(pa, hole, ta, bound, found)
        }
        _ => p == t,
    }
}
