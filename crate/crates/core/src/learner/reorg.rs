//! Lexicon rewrites used by licensing and semantic reorganization.

use crate::grammar::{Category, Feature, FeatureKind, Sign, SynType};
use crate::lexicon::Lexicon;
use crate::terms::{factor_operator, normalize, Term};

/// `k`, `k2`, `k3`, ...
pub fn licensee_name(n: u32) -> String {
    if n <= 1 {
        "k".to_string()
    } else {
        format!("k{n}")
    }
}

/// First identifier from the counter on that the lexicon does not use yet.
pub fn fresh_ident(lex: &Lexicon, mut counter: u32) -> (String, u32) {
    let used = lex.licensing_idents();
    loop {
        let name = licensee_name(counter);
        if !used.contains(&name) {
            return (name, counter);
        }
        counter += 1;
    }
}

/// Where a new licensor may go: directly after the last selector first,
/// then the remaining slots before the base, then between selectors.
pub fn licensor_positions(sign: &Sign) -> Vec<usize> {
    let feats = sign.features();
    let Some(base) = sign.syntype.base_index() else { return Vec::new() };
    let last_sel = feats[..base].iter().rposition(|f| f.kind == FeatureKind::Selector);
    let Some(last_sel) = last_sel else { return Vec::new() };
    let mut out: Vec<usize> = (last_sel + 1..=base).collect();
    out.extend(1..=last_sel);
    out
}

pub fn with_licensor(sign: &Sign, pos: usize, ident: &str) -> Sign {
    let mut s = sign.clone();
    s.syntype.features.insert(pos, Feature::licensor(ident));
    s
}

pub fn with_licensee(sign: &Sign, ident: &str) -> Sign {
    let mut s = sign.clone();
    s.syntype.features.push(Feature::licensee(ident));
    s
}

/// An affix entry: a non-void selector head with a lambda meaning.
pub fn is_affix(sign: &Sign) -> bool {
    !sign.exponent.is_empty()
        && sign.syntype.first().is_some_and(|f| f.kind == FeatureKind::Selector)
        && sign.syntype.selector_count() == 1
        && matches!(sign.semantics, Term::Lam(..))
}

/// Splits an affix entry into a phonetically void operator and the affix
/// as a plain numeral.
///
/// A specifier affix `⟨a, : =b F, λx.op(G)(x)⟩` becomes
/// `⟨ε, :: =b =b F, λy.λx.op(y)(x)⟩` and `⟨a, :: b, G⟩`. A complement affix
/// (`::`) takes its stem first, so the operator binds `x` outermost.
pub fn factor_affix(sign: &Sign) -> Option<(Sign, Sign)> {
    if !is_affix(sign) {
        return None;
    }
    let (op, g) = factor_operator(&sign.semantics).ok()?;
    let g = normalize(&g).ok()?;
    let op = match sign.category() {
        Category::Derived => op,
        Category::Lexical => swap_binders(op),
    };
    let selector = sign.features()[0].clone();
    let base = sign.features().iter().find(|f| f.kind == FeatureKind::Base)?.clone();
    let mut feats = vec![Feature::selector(base.ident.clone())];
    feats.extend(sign.features().iter().cloned());
    let operator = Sign::new("", SynType::new(Category::Lexical, feats), op);
    let plain = Sign::new(sign.exponent.clone(), SynType::new(Category::Lexical, vec![Feature::base(selector.ident)]), g);
    Some((operator, plain))
}

fn swap_binders(t: Term) -> Term {
    match t {
        Term::Lam(y, body) => match *body {
            Term::Lam(x, inner) => Term::lam(x, Term::lam(y, *inner)),
            other => Term::lam(y, other),
        },
        other => other,
    }
}
