//! Affix detection over stored whole words, and the resulting segmentation.

use crate::grammar::{Category, Feature, Sign, SynType};
use crate::lexicon::Lexicon;
use crate::teacher::Ump;
use crate::terms::{anti_unify, match_hole, normalize, Term};

/// Shortest affix worth generalizing over.
pub const MIN_AFFIX_LEN: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffixSide {
    Suffix,
    Prefix,
}

/// A detected morpheme family: the shared affix, its one-hole semantic
/// context, the residual (stem, meaning) pairs, and the stored whole words
/// the family explains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detection {
    pub affix: String,
    pub side: AffixSide,
    pub context: Term,
    pub pairs: Vec<(String, Term)>,
    pub sources: Vec<Sign>,
}

impl Detection {
    /// Suffixes attach as specifiers (`:`, merge-2), prefixes take their
    /// stem as a complement (`::`, merge-1).
    pub fn affix_entry(&self) -> Sign {
        let category = match self.side {
            AffixSide::Suffix => Category::Derived,
            AffixSide::Prefix => Category::Lexical,
        };
        let ty = SynType::new(category, vec![Feature::selector("num"), Feature::base("num")]);
        Sign::new(self.affix.clone(), ty, self.context.clone())
    }
}

/// Rote-learned entries `⟨e, :: num, σ⟩` that coincide with an observed UMP.
pub fn whole_words<'a>(lex: &'a Lexicon, seen: &'a [Ump]) -> impl Iterator<Item = &'a Sign> + 'a {
    lex.iter().filter(move |s| {
        s.category() == Category::Lexical
            && s.features() == [Feature::base("num")]
            && seen.iter().any(|u| u.exponent == s.exponent && u.semantics.alpha_eq(&s.semantics))
    })
}

pub fn detect_pattern(lex: &Lexicon, seen: &[Ump], ump: &Ump) -> Option<Detection> {
    let target = normalize(&ump.semantics).ok()?;
    let mut best: Option<(usize, AffixSide, Detection)> = None;
    for word in whole_words(lex, seen).filter(|w| w.exponent != ump.exponent) {
        for side in [AffixSide::Suffix, AffixSide::Prefix] {
            let longest = common_affix_len(side, &word.exponent, &ump.exponent);
            for len in (MIN_AFFIX_LEN..=longest).rev() {
                let Some(found) = aligned(lex, side, len, word, &ump.exponent, &target) else { continue };
                let better = match &best {
                    None => true,
                    Some((l, s, _)) => len > *l || (len == *l && *s == AffixSide::Prefix && side == AffixSide::Suffix),
                };
                if better {
                    best = Some((len, side, found));
                }
                break;
            }
        }
    }
    let (_, side, mut det) = best?;
    // every other stored word in the same family is explained as well
    for word in whole_words(lex, seen) {
        if det.sources.contains(word) || word.exponent == ump.exponent {
            continue;
        }
        let Some(stem) = strip_affix(side, &word.exponent, &det.affix) else { continue };
        if let Some(arg) = fill(&det.context, &word.semantics) {
            det.pairs.insert(det.sources.len(), (stem.to_string(), arg));
            det.sources.push(word.clone());
        }
    }
    Some(det)
}

fn aligned(lex: &Lexicon, side: AffixSide, len: usize, word: &Sign, incoming: &str, target: &Term) -> Option<Detection> {
    let affix = affix_of(side, incoming, len);
    let stem_w = strip_affix(side, &word.exponent, affix)?;
    let stem_u = strip_affix(side, incoming, affix)?;
    let g = anti_unify(&word.semantics, target).ok()?;
    if !g.arg1.is_numeral() || !g.arg2.is_numeral() {
        return None;
    }
    // at least one stem must already be known with the meaning assigned to it
    let known = |stem: &str, arg: &Term| lex.iter().any(|s| s.exponent == stem && s.semantics.alpha_eq(arg));
    if !known(stem_w, &g.arg1) && !known(stem_u, &g.arg2) {
        return None;
    }
    Some(Detection {
        affix: affix.to_string(),
        side,
        context: g.context,
        pairs: vec![(stem_w.to_string(), g.arg1), (stem_u.to_string(), g.arg2)],
        sources: vec![word.clone()],
    })
}

/// Argument that the one-hole `context` must take to yield `meaning`.
fn fill(context: &Term, meaning: &Term) -> Option<Term> {
    let Term::Lam(x, body) = context else { return None };
    let meaning = normalize(meaning).ok()?;
    match_hole(body, x, &meaning).filter(Term::is_numeral)
}

fn common_affix_len(side: AffixSide, a: &str, b: &str) -> usize {
    let n = match side {
        AffixSide::Suffix => a.chars().rev().zip(b.chars().rev()).take_while(|(x, y)| x == y).count(),
        AffixSide::Prefix => a.chars().zip(b.chars()).take_while(|(x, y)| x == y).count(),
    };
    // both residuals must stay non-empty
    n.min(a.chars().count().saturating_sub(1)).min(b.chars().count().saturating_sub(1))
}

fn affix_of(side: AffixSide, s: &str, len: usize) -> &str {
    match side {
        AffixSide::Prefix => &s[..char_offset(s, len)],
        AffixSide::Suffix => &s[char_offset(s, s.chars().count() - len)..],
    }
}

pub(crate) fn char_offset(s: &str, n: usize) -> usize {
    s.char_indices().nth(n).map_or(s.len(), |(i, _)| i)
}

fn strip_affix<'a>(side: AffixSide, s: &'a str, affix: &str) -> Option<&'a str> {
    let stem = match side {
        AffixSide::Suffix => s.strip_suffix(affix)?,
        AffixSide::Prefix => s.strip_prefix(affix)?,
    };
    (!stem.is_empty()).then_some(stem)
}

/// Lexicon after segmentation: the explained whole words are dropped, the
/// affix entry is added, and each stem is added unless an entry with the same
/// exponent and meaning exists already.
pub fn segment_and_revise(lex: &Lexicon, det: &Detection) -> (Vec<Sign>, Vec<Sign>) {
    let removed = det.sources.clone();
    let mut added = vec![det.affix_entry()];
    for (stem, meaning) in &det.pairs {
        let present = lex.iter().any(|s| s.exponent == *stem && s.semantics.alpha_eq(meaning))
            || added.iter().any(|s| s.exponent == *stem && s.semantics.alpha_eq(meaning));
        if !present {
            added.push(Sign::new(stem.clone(), SynType::new(Category::Lexical, vec![Feature::base("num")]), meaning.clone()));
        }
    }
    (removed, added)
}
