//! Text syntax for terms.
//!
//! ```text
//! term := INT | "10^" INT | VAR | "add" | "mul"
//!       | "(" "lam" VAR term ")" | "(" "add" term term ")"
//!       | "(" "mul" term term ")" | "(" "app" term term ")"
//! ```
//!
//! `(add y x)` abbreviates the curried application `App(App(Add, y), x)`.
//! A bare `add`/`mul` denotes the unapplied operator, so partial
//! applications such as `(app add 3)` stay printable.

use thiserror::Error;

use super::Term;

const KEYWORDS: [&str; 4] = ["lam", "add", "mul", "app"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input at byte {0}")]
    UnexpectedEnd(usize),
    #[error("unexpected token `{token}` at byte {pos}")]
    UnexpectedToken { token: String, pos: usize },
    #[error("unknown token `{token}` at byte {pos}")]
    UnknownToken { token: String, pos: usize },
    #[error("trailing input `{token}` at byte {pos}")]
    Trailing { token: String, pos: usize },
}

pub fn format_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Num(n) => out.push_str(&n.to_string()),
        Term::Pow(k) => {
            out.push_str("10^");
            out.push_str(&k.to_string());
        }
        Term::Add => out.push_str("add"),
        Term::Mul => out.push_str("mul"),
        Term::Var(v) => out.push_str(v),
        Term::Lam(v, b) => {
            out.push_str("(lam ");
            out.push_str(v);
            out.push(' ');
            write_term(b, out);
            out.push(')');
        }
        Term::App(..) => {
            let (head, y, x) = match t.as_binary() {
                Some((Term::Add, y, x)) => ("add", y, x),
                Some((Term::Mul, y, x)) => ("mul", y, x),
                _ => match t {
                    Term::App(f, a) => ("app", f.as_ref(), a.as_ref()),
                    _ => unreachable!(),
                },
            };
            out.push('(');
            out.push_str(head);
            out.push(' ');
            write_term(y, out);
            out.push(' ');
            write_term(x, out);
            out.push(')');
        }
    }
}

pub fn parse_term(s: &str) -> Result<Term, ParseError> {
    let tokens = tokenize(s);
    let mut p = Parser { tokens, pos: 0, len: s.len() };
    let t = p.term()?;
    if let Some((tok, pos)) = p.tokens.get(p.pos) {
        return Err(ParseError::Trailing { token: tok.to_string(), pos: *pos });
    }
    Ok(t)
}

fn tokenize(s: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((&s[st..i], st));
            }
            if !c.is_whitespace() {
                out.push((&s[i..i + 1], i));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((&s[st..], st));
    }
    out
}

struct Parser<'a> {
    tokens: Vec<(&'a str, usize)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn next(&mut self) -> Result<(&'a str, usize), ParseError> {
        let tok = self.tokens.get(self.pos).copied().ok_or(ParseError::UnexpectedEnd(self.len))?;
        self.pos += 1;
        Ok(tok)
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        match self.next()? {
            (")", _) => Ok(()),
            (tok, pos) => Err(ParseError::UnexpectedToken { token: tok.into(), pos }),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (tok, pos) = self.next()?;
        match tok {
            "(" => {
                let (head, hpos) = self.next()?;
                let t = match head {
                    "lam" => {
                        let (v, vpos) = self.next()?;
                        if !is_var(v) {
                            return Err(ParseError::UnexpectedToken { token: v.into(), pos: vpos });
                        }
                        Term::lam(v, self.term()?)
                    }
                    "add" | "mul" | "app" => {
                        let y = self.term()?;
                        let x = self.term()?;
                        match head {
                            "add" => Term::add(y, x),
                            "mul" => Term::mul(y, x),
                            _ => Term::app(y, x),
                        }
                    }
                    other => {
                        return Err(ParseError::UnexpectedToken { token: other.into(), pos: hpos })
                    }
                };
                self.expect_close()?;
                Ok(t)
            }
            ")" => Err(ParseError::UnexpectedToken { token: tok.into(), pos }),
            "add" => Ok(Term::Add),
            "mul" => Ok(Term::Mul),
            _ => atom(tok).ok_or(ParseError::UnknownToken { token: tok.into(), pos }),
        }
    }
}

fn atom(tok: &str) -> Option<Term> {
    if let Some(k) = tok.strip_prefix("10^") {
        return parse_digits(k).and_then(|k| u32::try_from(k).ok()).map(Term::Pow);
    }
    if let Some(n) = parse_digits(tok) {
        return Some(Term::Num(n));
    }
    is_var(tok).then(|| Term::var(tok))
}

fn parse_digits(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub(crate) fn is_var(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
        && !KEYWORDS.contains(&s)
}
