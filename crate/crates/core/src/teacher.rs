//! Simulated teacher: counts in English numerals, presenting each number as
//! an utterance-meaning pair, and judges what the learner says back.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::terms::Term;

/// Largest number the teacher can spell.
pub const MAX_NUMBER: u64 = 99;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ump {
    pub exponent: String,
    pub semantics: Term,
}

impl Ump {
    pub fn new(exponent: impl Into<String>, semantics: Term) -> Ump {
        Ump { exponent: exponent.into(), semantics }
    }
}

impl fmt::Display for Ump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.exponent, self.semantics)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Reward,
    Punish,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feedback {
    pub verdict: Verdict,
    pub offending_exponent: Option<String>,
}

impl Feedback {
    pub fn reward() -> Feedback {
        Feedback { verdict: Verdict::Reward, offending_exponent: None }
    }

    pub fn punish(exponent: impl Into<String>) -> Feedback {
        Feedback { verdict: Verdict::Punish, offending_exponent: Some(exponent.into()) }
    }

    pub fn is_reward(&self) -> bool {
        self.verdict == Verdict::Reward
    }
}

/// Spelling conventions. `Paper` keeps the concatenated forms with "fourty";
/// `Standard` substitutes "forty".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Orthography {
    #[default]
    Paper,
    Standard,
}

impl FromStr for Orthography {
    type Err = TeacherError;

    fn from_str(s: &str) -> Result<Self, TeacherError> {
        match s {
            "paper" => Ok(Orthography::Paper),
            "standard" => Ok(Orthography::Standard),
            _ => Err(TeacherError::UnknownOrthography(s.to_string())),
        }
    }
}

impl fmt::Display for Orthography {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orthography::Paper => "paper",
            Orthography::Standard => "standard",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TeacherError {
    #[error("number {0} outside the taught range 1..={MAX_NUMBER}")]
    OutOfRange(u64),
    #[error("unknown orthography `{0}` (expected paper or standard)")]
    UnknownOrthography(String),
}

const UNITS: [&str; 20] = [
    "", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven", "twelve",
    "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen",
];

const DECADES: [&str; 10] = ["", "", "twenty", "thirty", "fourty", "fifty", "sixty", "seventy", "eighty", "ninety"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Teacher {
    pub orthography: Orthography,
}

impl Teacher {
    pub fn new(orthography: Orthography) -> Teacher {
        Teacher { orthography }
    }

    pub fn exponent_for(&self, n: u64) -> Result<String, TeacherError> {
        if !(1..=MAX_NUMBER).contains(&n) {
            return Err(TeacherError::OutOfRange(n));
        }
        let n = n as usize;
        if n < 20 {
            return Ok(UNITS[n].to_string());
        }
        let decade = match (self.orthography, n / 10) {
            (Orthography::Standard, 4) => "forty",
            (_, d) => DECADES[d],
        };
        Ok(format!("{decade}{}", UNITS[n % 10]))
    }

    pub fn ump_for(&self, n: u64) -> Result<Ump, TeacherError> {
        Ok(Ump::new(self.exponent_for(n)?, semantics_for(n)))
    }

    /// Rewards each produced exponent that matches exactly, punishes every
    /// other one; an empty production earns one punishment with an empty
    /// offending exponent.
    pub fn judge(&self, expected: &Ump, produced: &[String]) -> Vec<Feedback> {
        judge(expected, produced)
    }
}

pub fn judge(expected: &Ump, produced: &[String]) -> Vec<Feedback> {
    if produced.is_empty() {
        return vec![Feedback::punish("")];
    }
    produced
        .iter()
        .map(|e| if *e == expected.exponent { Feedback::reward() } else { Feedback::punish(e.clone()) })
        .collect()
}

pub fn ump_for(n: u64) -> Result<Ump, TeacherError> {
    Teacher::default().ump_for(n)
}

/// Canonical decimal term for `n >= 1`.
///
/// Units are bare literals, a lone power of ten is `10^k`, every other
/// nonzero digit `a` at position `k >= 1` is `(mul 10^k a)`, and digit terms
/// are summed from the most significant down: `(add high rest)`.
pub fn semantics_for(n: u64) -> Term {
    let mut digits = Vec::new();
    let mut m = n;
    let mut k = 0u32;
    while m > 0 {
        if !m.is_multiple_of(10) {
            digits.push((k, m % 10));
        }
        m /= 10;
        k += 1;
    }
    if let [(k, 1)] = digits.as_slice() {
        if *k > 0 {
            return Term::pow(*k);
        }
    }
    let mut parts = digits.into_iter().map(|(k, a)| if k == 0 { Term::num(a) } else { Term::mul(Term::pow(k), Term::num(a)) });
    let Some(mut acc) = parts.next() else {
        return Term::num(0);
    };
    for high in parts {
        acc = Term::add(high, acc);
    }
    acc
}
