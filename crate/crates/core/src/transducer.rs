//! Utterance-meaning transducer: bounded bottom-up enumeration of
//! derivations over a lexicon, used both to generate exponents for a meaning
//! and to parse an exponent into meanings.
//!
//! The chart is filled layer by layer in the number of lexical leaves, so
//! every expression is recorded with its cheapest derivation and complete
//! derivations come out in non-decreasing leaf order.

use std::collections::HashMap;

use thiserror::Error;

use crate::grammar::{
    is_complete, merge, move_chain, Expression, Feature, FeatureKind, GrammarError, Rule, Sign,
};
use crate::lexicon::Lexicon;
use crate::terms::{format_term, normalize, Term};

pub const DEFAULT_MAX_LEAVES: usize = 5;
pub const DEFAULT_CHART_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateConfig {
    pub max_leaves: usize,
    pub chart_cap: usize,
}

impl Default for EnumerateConfig {
    fn default() -> Self {
        EnumerateConfig { max_leaves: DEFAULT_MAX_LEAVES, chart_cap: DEFAULT_CHART_CAP }
    }
}

impl EnumerateConfig {
    pub fn with_max_leaves(max_leaves: usize) -> Self {
        EnumerateConfig { max_leaves, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransducerError {
    #[error("chart exceeded the cap of {0} items")]
    ResourceLimit(usize),
    #[error("max_leaves must be at least 1")]
    InvalidBound,
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

/// Restricts a chart to the items that can contribute to given targets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChartFilter {
    exponent: Option<String>,
}

impl ChartFilter {
    pub fn none() -> ChartFilter {
        ChartFilter::default()
    }

    /// Keeps only signs whose exponents occur inside `exponent`. Exponents
    /// only ever concatenate, so every derivation of `exponent` survives.
    pub fn exponent(exponent: impl Into<String>) -> ChartFilter {
        ChartFilter { exponent: Some(exponent.into()) }
    }

    fn admits(&self, expr: &Expression) -> bool {
        let Some(e) = &self.exponent else { return true };
        expr.signs().iter().all(|s| e.contains(s.exponent.as_str()))
    }
}

#[derive(Debug, Clone, Copy)]
enum Origin {
    Lexical(usize),
    Merge(Rule, usize, usize),
    Move(Rule, usize),
}

#[derive(Debug, Clone)]
struct Item {
    expr: Expression,
    leaves: usize,
    origin: Origin,
    // rule sequence of the recorded derivation, postorder
    rules: Vec<Rule>,
}

/// Derivation tree; leaves refer to lexicon positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationTree {
    Leaf { entry: usize, result: Expression },
    Merge { rule: Rule, result: Expression, selector: Box<DerivationTree>, selectee: Box<DerivationTree> },
    Move { rule: Rule, result: Expression, operand: Box<DerivationTree> },
}

impl DerivationTree {
    pub fn result(&self) -> &Expression {
        match self {
            DerivationTree::Leaf { result, .. }
            | DerivationTree::Merge { result, .. }
            | DerivationTree::Move { result, .. } => result,
        }
    }

    /// Lexicon position of the entry whose features drive the head.
    pub fn head_entry(&self) -> usize {
        match self {
            DerivationTree::Leaf { entry, .. } => *entry,
            DerivationTree::Merge { selector, .. } => selector.head_entry(),
            DerivationTree::Move { operand, .. } => operand.head_entry(),
        }
    }

    fn merges_on_spine(&self) -> usize {
        match self {
            DerivationTree::Leaf { .. } => 0,
            DerivationTree::Merge { selector, .. } => 1 + selector.merges_on_spine(),
            DerivationTree::Move { operand, .. } => operand.merges_on_spine(),
        }
    }

    fn collect_steps(&self, out: &mut Vec<Step>) {
        match self {
            DerivationTree::Leaf { .. } => {}
            DerivationTree::Merge { rule, result, selector, selectee } => {
                selector.collect_steps(out);
                selectee.collect_steps(out);
                out.push(Step {
                    rule: *rule,
                    premises: vec![selector.result().clone(), selectee.result().clone()],
                    conclusion: result.clone(),
                });
            }
            DerivationTree::Move { rule, result, operand } => {
                operand.collect_steps(out);
                out.push(Step { rule: *rule, premises: vec![operand.result().clone()], conclusion: result.clone() });
            }
        }
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            DerivationTree::Leaf { entry, .. } => out.push(*entry),
            DerivationTree::Merge { selector, selectee, .. } => {
                selector.collect_leaves(out);
                selectee.collect_leaves(out);
            }
            DerivationTree::Move { operand, .. } => operand.collect_leaves(out),
        }
    }

    fn collect_slots(&self, out: &mut Vec<SlotFilling>) {
        match self {
            DerivationTree::Leaf { .. } => {}
            DerivationTree::Merge { rule, selector, selectee, .. } => {
                selector.collect_slots(out);
                selectee.collect_slots(out);
                let filler = match selectee.as_ref() {
                    DerivationTree::Leaf { entry, .. } => Some(*entry),
                    _ => None,
                };
                out.push(SlotFilling {
                    functor: selector.head_entry(),
                    slot: selector.merges_on_spine(),
                    filler,
                    rule: *rule,
                });
            }
            DerivationTree::Move { operand, .. } => operand.collect_slots(out),
        }
    }

    /// Re-applies every rule from the leaves; used to audit derivations.
    pub fn replay(&self, lex: &Lexicon) -> Result<Expression, GrammarError> {
        match self {
            DerivationTree::Leaf { entry, .. } => {
                lex.get(*entry).cloned().map(Expression::lexical).ok_or(GrammarError::NotApplicable)
            }
            DerivationTree::Merge { rule, selector, selectee, .. } => {
                let (r, e) = merge(&selector.replay(lex)?, &selectee.replay(lex)?)?;
                if r != *rule {
                    return Err(GrammarError::NotApplicable);
                }
                Ok(e)
            }
            DerivationTree::Move { rule, operand, .. } => {
                let (r, e) = move_chain(&operand.replay(lex)?)?;
                if r != *rule {
                    return Err(GrammarError::NotApplicable);
                }
                Ok(e)
            }
        }
    }
}

/// One inference step: premises on the left, conclusion on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub premises: Vec<Expression>,
    pub conclusion: Expression,
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        write!(f, "{}: {} => {}", self.rule, premises.join(" | "), self.conclusion)
    }
}

/// The argument slot `slot` (0-based, in merge order) of the lexical
/// functor `functor` was filled by `filler` (a lexicon position, or `None`
/// for a derived constituent).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlotFilling {
    pub functor: usize,
    pub slot: usize,
    pub filler: Option<usize>,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub tree: DerivationTree,
    pub steps: Vec<Step>,
    pub result: Expression,
    /// Lexicon positions of the leaves, left to right.
    pub leaves: Vec<usize>,
}

impl Derivation {
    fn from_tree(tree: DerivationTree) -> Derivation {
        let mut steps = Vec::new();
        tree.collect_steps(&mut steps);
        let mut leaves = Vec::new();
        tree.collect_leaves(&mut leaves);
        let result = tree.result().clone();
        Derivation { tree, steps, result, leaves }
    }

    pub fn slot_fillings(&self) -> Vec<SlotFilling> {
        let mut out = Vec::new();
        self.tree.collect_slots(&mut out);
        out
    }

    pub fn exponent(&self) -> &str {
        &self.result.head().exponent
    }

    pub fn semantics(&self) -> &Term {
        &self.result.head().semantics
    }
}

/// Closed chart of all expressions reachable within the leaf bound.
#[derive(Debug, Clone)]
pub struct Chart {
    lexicon: Lexicon,
    items: Vec<Item>,
    complete: Vec<(usize, Term)>,
}

struct Builder<'a> {
    items: Vec<Item>,
    // fingerprint -> items with that fingerprint
    seen: HashMap<u64, Vec<usize>>,
    layers: Vec<Layer>,
    cap: usize,
    start: &'a Feature,
    filter: &'a ChartFilter,
    complete: Vec<usize>,
}

#[derive(Default)]
struct Layer {
    all: Vec<usize>,
    selectors: Vec<usize>,
    by_base: HashMap<String, Vec<usize>>,
}

impl Builder<'_> {
    fn add(&mut self, expr: Expression, leaves: usize, origin: Origin) -> Result<Option<usize>, TransducerError> {
        if !self.filter.admits(&expr) {
            return Ok(None);
        }
        let key = expr.fingerprint();
        let rules = self.rules_of(&origin);
        let existing = self.seen.get(&key).and_then(|ids| ids.iter().copied().find(|&i| self.items[i].expr.same_as(&expr)));
        if let Some(old) = existing {
            // among equivalent derivations keep the one with the smallest rule sequence
            if rules < self.items[old].rules {
                self.items[old].origin = origin;
                self.items[old].rules = rules;
            }
            return Ok(None);
        }
        if self.items.len() >= self.cap {
            return Err(TransducerError::ResourceLimit(self.cap));
        }
        let id = self.items.len();
        self.seen.entry(key).or_default().push(id);
        if is_complete(&expr, self.start) {
            self.complete.push(id);
        }
        let layer = &mut self.layers[leaves];
        layer.all.push(id);
        match expr.head().syntype.first() {
            Some(f) if f.kind == FeatureKind::Selector => layer.selectors.push(id),
            Some(f) if f.kind == FeatureKind::Base => layer.by_base.entry(f.ident.clone()).or_default().push(id),
            _ => {}
        }
        self.items.push(Item { expr, leaves, origin, rules });
        Ok(Some(id))
    }

    fn rules_of(&self, origin: &Origin) -> Vec<Rule> {
        match *origin {
            Origin::Lexical(_) => Vec::new(),
            Origin::Merge(rule, x, y) => {
                let mut r = self.items[x].rules.clone();
                r.extend_from_slice(&self.items[y].rules);
                r.push(rule);
                r
            }
            Origin::Move(rule, x) => {
                let mut r = self.items[x].rules.clone();
                r.push(rule);
                r
            }
        }
    }

    fn close_under_move(&mut self, leaves: usize, from: usize) -> Result<(), TransducerError> {
        let mut i = from;
        while i < self.layers[leaves].all.len() {
            let id = self.layers[leaves].all[i];
            i += 1;
            match move_chain(&self.items[id].expr) {
                Ok((rule, e)) => {
                    self.add(e, leaves, Origin::Move(rule, id))?;
                }
                Err(GrammarError::NotApplicable | GrammarError::SmcViolation(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        Ok(())
    }
}

impl Chart {
    pub fn build(lex: &Lexicon, start: &Feature, cfg: EnumerateConfig) -> Result<Chart, TransducerError> {
        Chart::build_filtered(lex, start, cfg, &ChartFilter::none())
    }

    pub fn build_filtered(
        lex: &Lexicon,
        start: &Feature,
        cfg: EnumerateConfig,
        filter: &ChartFilter,
    ) -> Result<Chart, TransducerError> {
        if cfg.max_leaves == 0 {
            return Err(TransducerError::InvalidBound);
        }
        let mut b = Builder {
            items: Vec::new(),
            seen: HashMap::new(),
            layers: (0..=cfg.max_leaves).map(|_| Layer::default()).collect(),
            cap: cfg.chart_cap,
            start,
            filter,
            complete: Vec::new(),
        };
        for (i, sign) in lex.iter().enumerate() {
            b.add(Expression::lexical(sign.clone()), 1, Origin::Lexical(i))?;
        }
        b.close_under_move(1, 0)?;
        for n in 2..=cfg.max_leaves {
            for a in 1..n {
                let bl = n - a;
                let selectors = b.layers[a].selectors.clone();
                for x in selectors {
                    let ident = b.items[x].expr.head().syntype.features[0].ident.clone();
                    let Some(ys) = b.layers[bl].by_base.get(&ident).cloned() else { continue };
                    for y in ys {
                        match merge(&b.items[x].expr, &b.items[y].expr) {
                            Ok((rule, e)) => {
                                b.add(e, n, Origin::Merge(rule, x, y))?;
                            }
                            Err(GrammarError::NotApplicable | GrammarError::SmcViolation(_)) => {}
                            Err(e) => return Err(e.into()),
                        }
                    }
                }
            }
            b.close_under_move(n, 0)?;
        }
        let complete = b
            .complete
            .iter()
            .map(|&id| (id, b.items[id].expr.head().semantics.alpha_canonical()))
            .collect();
        Ok(Chart { lexicon: lex.clone(), items: b.items, complete })
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Every expression in the chart, complete or not.
    pub fn expressions(&self) -> impl Iterator<Item = &Expression> {
        self.items.iter().map(|i| &i.expr)
    }

    pub fn complete_count(&self) -> usize {
        self.complete.len()
    }

    pub fn complete_expressions(&self) -> impl Iterator<Item = &Expression> {
        self.complete.iter().map(|(id, _)| &self.items[*id].expr)
    }

    pub fn leaves_of_complete(&self) -> impl Iterator<Item = usize> + '_ {
        self.complete.iter().map(|(id, _)| self.items[*id].leaves)
    }

    /// Complete derivations in non-decreasing leaf order.
    pub fn derivations(&self) -> impl Iterator<Item = Derivation> + '_ {
        self.complete.iter().map(|(id, _)| self.derivation(*id))
    }

    fn tree(&self, id: usize) -> DerivationTree {
        let item = &self.items[id];
        match item.origin {
            Origin::Lexical(entry) => DerivationTree::Leaf { entry, result: item.expr.clone() },
            Origin::Merge(rule, x, y) => DerivationTree::Merge {
                rule,
                result: item.expr.clone(),
                selector: Box::new(self.tree(x)),
                selectee: Box::new(self.tree(y)),
            },
            Origin::Move(rule, x) => {
                DerivationTree::Move { rule, result: item.expr.clone(), operand: Box::new(self.tree(x)) }
            }
        }
    }

    fn derivation(&self, id: usize) -> Derivation {
        Derivation::from_tree(self.tree(id))
    }

    fn matching_meaning<'a>(&'a self, meaning: &Term) -> impl Iterator<Item = usize> + 'a {
        let target = normalize(meaning).map(|t| t.alpha_canonical()).ok();
        self.complete
            .iter()
            .filter(move |(_, canon)| Some(canon) == target.as_ref())
            .map(|(id, _)| *id)
    }

    /// Exponents of all complete derivations with the given meaning, sorted.
    pub fn generate(&self, meaning: &Term) -> Vec<String> {
        let mut out: Vec<String> =
            self.matching_meaning(meaning).map(|id| self.items[id].expr.head().exponent.clone()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Derivations with the given exponent and meaning.
    pub fn derivations_of(&self, exponent: &str, meaning: &Term) -> Vec<Derivation> {
        self.matching_meaning(meaning)
            .filter(|id| self.items[*id].expr.head().exponent == exponent)
            .map(|id| self.derivation(id))
            .collect()
    }

    /// Distinct normal-form meanings of complete derivations of `exponent`,
    /// ordered by their text form.
    pub fn parse(&self, exponent: &str) -> Vec<Term> {
        let mut out: Vec<(String, Term)> = Vec::new();
        for (id, canon) in &self.complete {
            let head = self.items[*id].expr.head();
            if head.exponent != exponent {
                continue;
            }
            if out.iter().any(|(_, t)| t.alpha_canonical() == *canon) {
                continue;
            }
            out.push((format_term(&head.semantics), head.semantics.clone()));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter().map(|(_, t)| t).collect()
    }
}

pub fn start_feature() -> Feature {
    Feature::base("num")
}

/// All complete derivations within the bound, in non-decreasing leaf order.
pub fn enumerate(lex: &Lexicon, start: &Feature, cfg: EnumerateConfig) -> Result<Vec<Derivation>, TransducerError> {
    Ok(Chart::build(lex, start, cfg)?.derivations().collect())
}

pub fn generate(lex: &Lexicon, meaning: &Term, cfg: EnumerateConfig) -> Result<Vec<String>, TransducerError> {
    Ok(Chart::build(lex, &start_feature(), cfg)?.generate(meaning))
}

pub fn parse(lex: &Lexicon, exponent: &str, cfg: EnumerateConfig) -> Result<Vec<Term>, TransducerError> {
    Ok(Chart::build(lex, &start_feature(), cfg)?.parse(exponent))
}

/// Outcome of folding an ordered list of lexical items into one derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemDerivation {
    pub steps: Vec<Step>,
    pub result: Expression,
    pub complete: bool,
}

/// Derives from the items in the given order: the first item is the initial
/// head; each further item is merged in (as selectee, or as selector if the
/// current expression cannot select it), followed by every applicable move.
/// Stops at the first item that cannot be merged.
pub fn derive_items(lex: &Lexicon, items: &[usize], start: &Feature) -> Result<ItemDerivation, TransducerError> {
    let signs: Vec<Sign> = items
        .iter()
        .map(|&i| lex.get(i).cloned().ok_or(TransducerError::Grammar(GrammarError::NotApplicable)))
        .collect::<Result<_, _>>()?;
    let Some((first, rest)) = signs.split_first() else {
        return Err(TransducerError::InvalidBound);
    };
    let mut current = Expression::lexical(first.clone());
    let mut steps = Vec::new();
    let mut stuck = false;
    for sign in rest {
        let next = Expression::lexical(sign.clone());
        let merged = merge(&current, &next)
            .map(|r| (r, current.clone(), next.clone()))
            .or_else(|_| merge(&next, &current).map(|r| (r, next.clone(), current.clone())));
        let Ok(((rule, e), p1, p2)) = merged else {
            stuck = true;
            break;
        };
        steps.push(Step { rule, premises: vec![p1, p2], conclusion: e.clone() });
        current = e;
        while let Ok((rule, e)) = move_chain(&current) {
            steps.push(Step { rule, premises: vec![current.clone()], conclusion: e.clone() });
            current = e;
        }
    }
    let complete = !stuck && is_complete(&current, start);
    Ok(ItemDerivation { steps, result: current, complete })
}
