use super::{Term, TermError};

pub const DEFAULT_STEP_BUDGET: usize = 10_000;

/// Normal-order (leftmost-outermost) beta normal form of a closed term.
pub fn beta_reduce(t: &Term) -> Result<Term, TermError> {
    if let Some(v) = t.free_vars().into_iter().next() {
        return Err(TermError::UnboundVariable(v));
    }
    normalize(t)
}

/// Like [`beta_reduce`] but tolerates free variables, which are treated as
/// opaque constants.
pub fn normalize(t: &Term) -> Result<Term, TermError> {
    normalize_with_budget(t, DEFAULT_STEP_BUDGET)
}

pub fn normalize_with_budget(t: &Term, budget: usize) -> Result<Term, TermError> {
    let mut reducer = Reducer { left: budget, budget };
    reducer.normal(t.clone())
}

struct Reducer {
    left: usize,
    budget: usize,
}

impl Reducer {
    fn tick(&mut self) -> Result<(), TermError> {
        if self.left == 0 {
            return Err(TermError::NonTermination(self.budget));
        }
        self.left -= 1;
        Ok(())
    }

    fn whnf(&mut self, mut t: Term) -> Result<Term, TermError> {
        let mut spine: Vec<Box<Term>> = Vec::new();
        loop {
            match t {
                Term::App(f, a) => {
                    spine.push(a);
                    t = *f;
                }
                Term::Lam(x, body) if !spine.is_empty() => {
                    self.tick()?;
                    let a = spine.pop().expect("non-empty spine");
                    t = substitute(&body, &x, &a);
                }
                head => {
                    let mut t = head;
                    while let Some(a) = spine.pop() {
                        t = Term::App(Box::new(t), a);
                    }
                    return Ok(t);
                }
            }
        }
    }

    fn normal(&mut self, t: Term) -> Result<Term, TermError> {
        match self.whnf(t)? {
            Term::Lam(x, body) => Ok(Term::Lam(x, Box::new(self.normal(*body)?))),
            Term::App(f, a) => {
                // head is not a lambda after whnf; normalize the spine left to right
                let f = self.normal(*f)?;
                let a = self.normal(*a)?;
                Ok(Term::App(Box::new(f), Box::new(a)))
            }
            t => Ok(t),
        }
    }
}

/// Capture-avoiding substitution `body[var := value]`.
pub fn substitute(body: &Term, var: &str, value: &Term) -> Term {
    let fv = value.free_vars();
    subst(body, var, value, &fv)
}

fn subst(body: &Term, var: &str, value: &Term, fv: &std::collections::BTreeSet<String>) -> Term {
    match body {
        Term::Var(v) if v == var => value.clone(),
        Term::Lam(y, b) if y == var => Term::Lam(y.clone(), b.clone()),
        Term::Lam(y, b) => {
            if fv.contains(y) && b.free_vars().contains(var) {
                let mut avoid = b.all_vars();
                avoid.extend(fv.iter().cloned());
                avoid.insert(var.to_string());
                let fresh = fresh_name(y, &avoid);
                let renamed = subst(b, y, &Term::Var(fresh.clone()), &[fresh.clone()].into());
                Term::Lam(fresh, Box::new(subst(&renamed, var, value, fv)))
            } else {
                Term::Lam(y.clone(), Box::new(subst(b, var, value, fv)))
            }
        }
        Term::App(f, a) => Term::app(subst(f, var, value, fv), subst(a, var, value, fv)),
        t => t.clone(),
    }
}

pub(crate) fn fresh_name(base: &str, avoid: &std::collections::BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded name supply")
}
