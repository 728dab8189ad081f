//! Minimalist grammar kernel in chain representation.
//!
//! An [`Expression`] is a head sign followed by the signs still waiting to
//! move. Structure is built only by [`merge`] and [`move_chain`]; each rule
//! checks one feature on each participant and applies the head semantics to
//! the argument semantics (or leaves both untouched, for merge-3 and
//! move-2). Results are kept in beta-normal form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::terms::{format_term, normalize, substitute, Term, TermError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureKind {
    Base,
    Selector,
    Licensor,
    Licensee,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Feature {
    pub kind: FeatureKind,
    pub ident: String,
}

impl Feature {
    pub fn new(kind: FeatureKind, ident: impl Into<String>) -> Feature {
        Feature { kind, ident: ident.into() }
    }

    pub fn base(ident: impl Into<String>) -> Feature {
        Feature::new(FeatureKind::Base, ident)
    }

    pub fn selector(ident: impl Into<String>) -> Feature {
        Feature::new(FeatureKind::Selector, ident)
    }

    pub fn licensor(ident: impl Into<String>) -> Feature {
        Feature::new(FeatureKind::Licensor, ident)
    }

    pub fn licensee(ident: impl Into<String>) -> Feature {
        Feature::new(FeatureKind::Licensee, ident)
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.kind {
            FeatureKind::Base => "",
            FeatureKind::Selector => "=",
            FeatureKind::Licensor => "+",
            FeatureKind::Licensee => "-",
        };
        write!(f, "{prefix}{}", self.ident)
    }
}

impl FromStr for Feature {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Feature, GrammarError> {
        let (kind, ident) = match s.as_bytes().first() {
            Some(b'=') => (FeatureKind::Selector, &s[1..]),
            Some(b'+') => (FeatureKind::Licensor, &s[1..]),
            Some(b'-') => (FeatureKind::Licensee, &s[1..]),
            _ => (FeatureKind::Base, s),
        };
        let valid = !ident.is_empty()
            && ident.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(GrammarError::BadFeature(s.to_string()));
        }
        Ok(Feature::new(kind, ident))
    }
}

/// `::` marks lexical signs, `:` derived ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Lexical,
    Derived,
}

impl Category {
    pub fn token(self) -> &'static str {
        match self {
            Category::Lexical => "::",
            Category::Derived => ":",
        }
    }
}

impl FromStr for Category {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Category, GrammarError> {
        match s {
            "::" => Ok(Category::Lexical),
            ":" => Ok(Category::Derived),
            _ => Err(GrammarError::BadCategory(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynType {
    pub category: Category,
    pub features: Vec<Feature>,
}

impl SynType {
    pub fn new(category: Category, features: Vec<Feature>) -> SynType {
        SynType { category, features }
    }

    pub fn first(&self) -> Option<&Feature> {
        self.features.first()
    }

    /// Index of the base feature, if the type has one.
    pub fn base_index(&self) -> Option<usize> {
        self.features.iter().position(|f| f.kind == FeatureKind::Base)
    }

    pub fn selector_count(&self) -> usize {
        self.features.iter().take_while(|f| f.kind == FeatureKind::Selector).count()
    }
}

impl fmt::Display for SynType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.category.token())?;
        for feat in &self.features {
            write!(f, " {feat}")?;
        }
        Ok(())
    }
}

impl FromStr for SynType {
    type Err = GrammarError;

    /// Parses `":: =num +k num"`.
    fn from_str(s: &str) -> Result<SynType, GrammarError> {
        let mut toks = s.split_whitespace();
        let category = toks.next().ok_or_else(|| GrammarError::BadCategory(String::new()))?.parse()?;
        let features = toks.map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Ok(SynType { category, features })
    }
}

/// True iff the features match `(Selector | Licensor)* Base Licensee*`.
pub fn validate_syntype(t: &SynType) -> bool {
    valid_features(&t.features)
}

fn valid_features(features: &[Feature]) -> bool {
    let Some(b) = features.iter().position(|f| f.kind == FeatureKind::Base) else {
        return false;
    };
    features[..b]
        .iter()
        .all(|f| matches!(f.kind, FeatureKind::Selector | FeatureKind::Licensor))
        && features[b + 1..].iter().all(|f| f.kind == FeatureKind::Licensee)
}

/// Chain signs may have consumed their base feature already.
fn valid_chain_features(features: &[Feature]) -> bool {
    valid_features(features)
        || (!features.is_empty() && features.iter().all(|f| f.kind == FeatureKind::Licensee))
}

/// A linguistic sign: exponent, syntactic type, semantics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sign {
    pub exponent: String,
    pub syntype: SynType,
    pub semantics: Term,
}

impl Sign {
    pub fn new(exponent: impl Into<String>, syntype: SynType, semantics: Term) -> Sign {
        Sign { exponent: exponent.into(), syntype, semantics }
    }

    /// Convenience constructor from a type string such as `":: num -k"`.
    pub fn parse(exponent: &str, syntype: &str, semantics: Term) -> Result<Sign, GrammarError> {
        Ok(Sign::new(exponent, syntype.parse()?, semantics))
    }

    pub fn features(&self) -> &[Feature] {
        &self.syntype.features
    }

    pub fn category(&self) -> Category {
        self.syntype.category
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = if self.exponent.is_empty() { "ε" } else { &self.exponent };
        write!(f, "<{e}, {}, {}>", self.syntype, format_term(&self.semantics))
    }
}

/// Head sign followed by moving chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expression {
    signs: Vec<Sign>,
}

impl Expression {
    pub fn new(signs: Vec<Sign>) -> Result<Expression, GrammarError> {
        if signs.is_empty() {
            return Err(GrammarError::EmptyExpression);
        }
        Ok(Expression { signs })
    }

    pub fn lexical(sign: Sign) -> Expression {
        Expression { signs: vec![sign] }
    }

    pub fn head(&self) -> &Sign {
        &self.signs[0]
    }

    pub fn chains(&self) -> &[Sign] {
        &self.signs[1..]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn feature_count(&self) -> usize {
        self.signs.iter().map(|s| s.features().len()).sum()
    }

    /// Structural well-formedness: valid head type, pending chains, SMC.
    pub fn is_well_formed(&self) -> bool {
        let head_ok = valid_features(self.head().features())
            || (self.chains().is_empty() && self.head().features().is_empty());
        head_ok
            && self.chains().iter().all(|c| valid_chain_features(c.features()))
            && smc_holds(self.chains())
    }

    /// Hash consistent with [`Expression::same_as`].
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        for s in &self.signs {
            s.exponent.hash(&mut h);
            s.syntype.hash(&mut h);
            s.semantics.alpha_hash(&mut h);
        }
        h.finish()
    }

    /// Equality up to alpha-renaming of semantics.
    pub fn same_as(&self, other: &Expression) -> bool {
        self.signs.len() == other.signs.len()
            && self.signs.iter().zip(&other.signs).all(|(a, b)| {
                a.exponent == b.exponent && a.syntype == b.syntype && a.semantics.alpha_eq(&b.semantics)
            })
    }

    /// Key identifying the expression up to alpha-renaming of semantics.
    pub fn key(&self) -> Vec<(String, SynType, Term)> {
        self.signs
            .iter()
            .map(|s| (s.exponent.clone(), s.syntype.clone(), s.semantics.alpha_canonical()))
            .collect()
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "merge-1")]
    Merge1,
    #[serde(rename = "merge-2")]
    Merge2,
    #[serde(rename = "merge-3")]
    Merge3,
    #[serde(rename = "move-1")]
    Move1,
    #[serde(rename = "move-2")]
    Move2,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Merge1 => "merge-1",
            Rule::Merge2 => "merge-2",
            Rule::Merge3 => "merge-3",
            Rule::Move1 => "move-1",
            Rule::Move2 => "move-2",
        }
    }

    pub fn is_merge(self) -> bool {
        matches!(self, Rule::Merge1 | Rule::Merge2 | Rule::Merge3)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("rule not applicable")]
    NotApplicable,
    #[error("shortest movement constraint violated for licensee -{0}")]
    SmcViolation(String),
    #[error("malformed feature `{0}`")]
    BadFeature(String),
    #[error("malformed category `{0}`")]
    BadCategory(String),
    #[error("expression must contain at least one sign")]
    EmptyExpression,
    #[error(transparent)]
    Semantics(#[from] TermError),
}

fn smc_holds(chains: &[Sign]) -> bool {
    smc_violation(chains).is_none()
}

fn smc_violation(chains: &[Sign]) -> Option<String> {
    let mut seen: Vec<&str> = Vec::new();
    for c in chains {
        if let Some(f) = c.features().first().filter(|f| f.kind == FeatureKind::Licensee) {
            if seen.contains(&f.ident.as_str()) {
                return Some(f.ident.clone());
            }
            seen.push(&f.ident);
        }
    }
    None
}

fn derived(exponent: String, features: &[Feature], semantics: Term) -> Sign {
    Sign::new(exponent, SynType::new(Category::Derived, features.to_vec()), semantics)
}

fn apply(fun: &Term, arg: &Term) -> Result<Term, GrammarError> {
    // a closed, lambda-free argument can neither be captured nor create redexes
    if let Term::Lam(x, body) = fun {
        if !arg.contains_lambda() && body.is_normal() {
            return Ok(substitute(body, x, arg));
        }
    }
    Ok(normalize(&Term::app(fun.clone(), arg.clone()))?)
}

/// Combines a selecting expression with a selected one.
///
/// Dispatch: the selectee's remaining features decide merge-3 (some left)
/// versus merge-1/merge-2 (none left), and the selector's category decides
/// merge-1 (`::`, complement to the right) versus merge-2 (`:`, specifier to
/// the left).
pub fn merge(e1: &Expression, e2: &Expression) -> Result<(Rule, Expression), GrammarError> {
    let h1 = e1.head();
    let h2 = e2.head();
    let (Some(sel), Some(base)) = (h1.syntype.first(), h2.syntype.first()) else {
        return Err(GrammarError::NotApplicable);
    };
    if sel.kind != FeatureKind::Selector || base.kind != FeatureKind::Base || sel.ident != base.ident {
        return Err(GrammarError::NotApplicable);
    }
    let rest1 = &h1.features()[1..];
    let rest2 = &h2.features()[1..];

    let (rule, signs) = if !rest2.is_empty() {
        let mut signs = vec![derived(h1.exponent.clone(), rest1, h1.semantics.clone())];
        signs.extend_from_slice(e1.chains());
        signs.push(derived(h2.exponent.clone(), rest2, h2.semantics.clone()));
        signs.extend_from_slice(e2.chains());
        (Rule::Merge3, signs)
    } else {
        let sem = apply(&h1.semantics, &h2.semantics)?;
        let (rule, exponent) = match h1.category() {
            Category::Lexical => (Rule::Merge1, format!("{}{}", h1.exponent, h2.exponent)),
            Category::Derived => (Rule::Merge2, format!("{}{}", h2.exponent, h1.exponent)),
        };
        let mut signs = vec![derived(exponent, rest1, sem)];
        signs.extend_from_slice(e1.chains());
        signs.extend_from_slice(e2.chains());
        (rule, signs)
    };
    if let Some(f) = smc_violation(&signs[1..]) {
        return Err(GrammarError::SmcViolation(f));
    }
    Ok((rule, Expression { signs }))
}

/// Checks the head's licensor against the unique chain bearing the matching
/// licensee.
pub fn move_chain(e: &Expression) -> Result<(Rule, Expression), GrammarError> {
    let head = e.head();
    let Some(lic) = head.syntype.first().filter(|f| f.kind == FeatureKind::Licensor) else {
        return Err(GrammarError::NotApplicable);
    };
    let matching: Vec<usize> = e
        .chains()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.features().first().is_some_and(|f| f.kind == FeatureKind::Licensee && f.ident == lic.ident)
        })
        .map(|(i, _)| i + 1)
        .collect();
    let idx = match matching.as_slice() {
        [] => return Err(GrammarError::NotApplicable),
        [i] => *i,
        _ => return Err(GrammarError::SmcViolation(lic.ident.clone())),
    };
    let mover = &e.signs[idx];
    let rest1 = &head.features()[1..];
    let rest2 = &mover.features()[1..];

    let mut signs = Vec::with_capacity(e.signs.len());
    let rule = if rest2.is_empty() {
        let sem = apply(&head.semantics, &mover.semantics)?;
        signs.push(derived(format!("{}{}", mover.exponent, head.exponent), rest1, sem));
        signs.extend(e.signs[1..].iter().enumerate().filter(|(i, _)| i + 1 != idx).map(|(_, s)| s.clone()));
        Rule::Move1
    } else {
        signs.push(derived(head.exponent.clone(), rest1, head.semantics.clone()));
        for (i, s) in e.signs.iter().enumerate().skip(1) {
            if i == idx {
                signs.push(derived(s.exponent.clone(), rest2, s.semantics.clone()));
            } else {
                signs.push(s.clone());
            }
        }
        Rule::Move2
    };
    if let Some(f) = smc_violation(&signs[1..]) {
        return Err(GrammarError::SmcViolation(f));
    }
    Ok((rule, Expression { signs }))
}

/// A finished derivation: one sign whose only feature is the start category.
pub fn is_complete(e: &Expression, start: &Feature) -> bool {
    e.signs.len() == 1 && e.head().features() == std::slice::from_ref(start)
}
