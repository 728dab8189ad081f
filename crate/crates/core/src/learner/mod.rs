//! The learning agent: keeps the mental lexicon and revises it from the
//! teacher's utterance-meaning pairs and feedback.

mod pattern;
mod reorg;
pub mod trace;

use std::collections::HashSet;

use thiserror::Error;

use crate::grammar::{Category, Feature, Sign, SynType};
use crate::lexicon::Lexicon;
use crate::teacher::{judge, Teacher, TeacherError, Ump, Verdict};
use crate::terms::{evaluate, match_hole, normalize, Term};
use crate::transducer::{start_feature, Chart, ChartFilter, Derivation, EnumerateConfig, TransducerError};

pub use pattern::{detect_pattern, segment_and_revise, whole_words, AffixSide, Detection, MIN_AFFIX_LEN};
pub use reorg::{factor_affix, fresh_ident, licensee_name};
pub use trace::{EventKind, TraceEvent, UmpRecord};

/// Free variable standing for the unknown meaning of a hypothesized stem.
const HOLE: &str = "hole";

/// Upper bound on revise-and-recheck rounds within one clock tick.
const MAX_ROUNDS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LearnerConfig {
    pub enumerate: EnumerateConfig,
    /// Generate-judge rounds per UMP before giving up.
    pub retry_cap: usize,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig { enumerate: EnumerateConfig::default(), retry_cap: 5 }
    }
}

#[derive(Debug, Error)]
pub enum LearnerError {
    #[error("learning stuck at t={t} on `{exponent}` after {attempts} attempts")]
    Stuck { t: u64, exponent: String, attempts: usize, trace: Vec<TraceEvent> },
    #[error("punishment of `{offending}` at t={t} could not be resolved by licensing")]
    UnresolvablePunish { t: u64, offending: String, trace: Vec<TraceEvent> },
    #[error(transparent)]
    Transducer(#[from] TransducerError),
    #[error(transparent)]
    Teacher(#[from] TeacherError),
}

impl LearnerError {
    pub fn trace(&self) -> &[TraceEvent] {
        match self {
            LearnerError::Stuck { trace, .. } | LearnerError::UnresolvablePunish { trace, .. } => trace,
            _ => &[],
        }
    }
}

/// Snapshot of the learner: lexicon, clock, UMP history and the licensing
/// identifier counter.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LearnerState {
    pub lexicon: Lexicon,
    pub clock: u64,
    pub seen: Vec<Ump>,
    pub next_licensee: u32,
}

impl LearnerState {
    pub fn new() -> LearnerState {
        LearnerState { next_licensee: 1, ..LearnerState::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Learner {
    state: LearnerState,
    trace: Vec<TraceEvent>,
    config: LearnerConfig,
    chart: Option<Chart>,
}

impl Learner {
    pub fn new(config: LearnerConfig) -> Learner {
        Learner::from_state(LearnerState::new(), config)
    }

    pub fn from_state(state: LearnerState, config: LearnerConfig) -> Learner {
        Learner { state, trace: Vec::new(), config, chart: None }
    }

    pub fn state(&self) -> &LearnerState {
        &self.state
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.state.lexicon
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    pub fn into_parts(self) -> (LearnerState, Vec<TraceEvent>) {
        (self.state, self.trace)
    }

    fn build(&self, lex: &Lexicon) -> Result<Chart, TransducerError> {
        Chart::build(lex, &start_feature(), self.config.enumerate)
    }

    /// Chart sufficient to parse `exponent`.
    fn build_for(&self, lex: &Lexicon, exponent: &str) -> Result<Chart, TransducerError> {
        Chart::build_filtered(lex, &start_feature(), self.config.enumerate, &ChartFilter::exponent(exponent))
    }

    fn chart(&mut self) -> Result<&Chart, TransducerError> {
        let stale = self.chart.as_ref().is_none_or(|c| c.lexicon() != &self.state.lexicon);
        if stale {
            self.chart = Some(self.build(&self.state.lexicon)?);
        }
        Ok(self.chart.as_ref().expect("chart just built"))
    }

    fn record(&mut self, event: TraceEvent) {
        trace::apply(&mut self.state.lexicon, &event).expect("learner emits canonical entry lines");
        self.trace.push(event);
    }

    fn change(&mut self, kind: EventKind, removed: &[Sign], added: &[Sign], ump: Option<&Ump>) {
        let mut e = TraceEvent::new(self.state.clock, kind).with_changes(removed, added);
        if let Some(u) = ump {
            e = e.with_ump(u);
        }
        self.record(e);
    }

    /// One clock tick: observe the UMP, then re-check every UMP seen so far
    /// and reorganize until nothing changes.
    pub fn step(&mut self, ump: &Ump) -> Result<(), LearnerError> {
        self.state.clock += 1;
        self.observe(ump)?;
        for _ in 0..MAX_ROUNDS {
            let mut changed = false;
            // newest first: fresh material is where a punishment can be localized
            for u in self.state.seen.clone().iter().rev() {
                changed |= self.reproduce_and_learn(u)?;
            }
            changed |= self.semantic_reorg()?;
            if !changed {
                return Ok(());
            }
        }
        Err(self.stuck(&ump.exponent, MAX_ROUNDS))
    }

    fn stuck(&self, exponent: &str, attempts: usize) -> LearnerError {
        LearnerError::Stuck {
            t: self.state.clock,
            exponent: exponent.to_string(),
            attempts,
            trace: self.trace.clone(),
        }
    }

    /// Seen UMPs whose exponent the current lexicon generates.
    fn correct_umps(&mut self) -> Result<Vec<Ump>, TransducerError> {
        let seen = self.state.seen.clone();
        let chart = self.chart()?;
        Ok(seen.into_iter().filter(|u| chart.generate(&u.semantics).contains(&u.exponent)).collect())
    }

    /// Stores a new UMP: nothing if it is derivable already, otherwise a
    /// hypothesized stem, a segmentation, or a rote entry, in that order.
    pub fn observe(&mut self, ump: &Ump) -> Result<(), LearnerError> {
        if self.state.seen.contains(ump) {
            return Ok(());
        }
        self.state.seen.push(ump.clone());
        if self.chart()?.generate(&ump.semantics).contains(&ump.exponent) {
            return Ok(());
        }
        if let Some(stem) = self.abduce(ump)? {
            self.change(EventKind::SegmentationRevision, &[], &[stem], Some(ump));
            return Ok(());
        }
        let seen = &self.state.seen[..self.state.seen.len() - 1];
        if let Some(det) = detect_pattern(&self.state.lexicon, seen, ump) {
            let (removed, added) = segment_and_revise(&self.state.lexicon, &det);
            self.change(EventKind::SegmentationRevision, &removed, &added, Some(ump));
            return Ok(());
        }
        self.rote_add(ump);
        Ok(())
    }

    fn rote_add(&mut self, ump: &Ump) {
        let entry = Sign::new(ump.exponent.clone(), num_type(vec![]), ump.semantics.clone());
        self.change(EventKind::RoteAdd, &[], &[entry], Some(ump));
    }

    /// Looks for a single new stem `r`, a proper prefix or suffix of the
    /// exponent whose remainder is already derivable, such that adding
    /// `⟨r, :: num (-l)?, ρ⟩` derives the UMP; ρ is read off by matching.
    pub fn abduce(&mut self, ump: &Ump) -> Result<Option<Sign>, LearnerError> {
        let target = match normalize(&ump.semantics) {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        let known: HashSet<String> = self
            .build_for(&self.state.lexicon, &ump.exponent)?
            .expressions()
            .map(|e| e.head().exponent.clone())
            .collect();
        let mut shapes = vec![num_type(vec![])];
        for id in self.state.lexicon.licensing_idents() {
            shapes.push(num_type(vec![Feature::licensee(id)]));
        }
        let e = &ump.exponent;
        let n = e.chars().count();
        for len in 1..n {
            let cut_pre = pattern::char_offset(e, len);
            let cut_suf = pattern::char_offset(e, n - len);
            for (stem, rest) in [(&e[..cut_pre], &e[cut_pre..]), (&e[cut_suf..], &e[..cut_suf])] {
                if !known.contains(rest) {
                    continue;
                }
                for ty in &shapes {
                    let hyp = Sign::new(stem, ty.clone(), Term::var(HOLE));
                    let mut lex = self.state.lexicon.clone();
                    lex.insert(hyp);
                    let chart = self.build_for(&lex, e)?;
                    let meaning = chart
                        .complete_expressions()
                        .filter(|x| x.head().exponent == *e)
                        .find_map(|x| match_hole(&x.head().semantics, HOLE, &target).filter(Term::is_numeral));
                    if let Some(rho) = meaning {
                        let entry = Sign::new(stem, ty.clone(), rho);
                        if !self.state.lexicon.contains(&entry) {
                            return Ok(Some(entry));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Generates for the UMP's meaning and learns from the teacher's verdicts
    /// until only the correct exponent is produced. Returns whether the
    /// lexicon changed.
    pub fn reproduce_and_learn(&mut self, ump: &Ump) -> Result<bool, LearnerError> {
        let mut changed = false;
        for _ in 0..=self.config.retry_cap {
            let produced = self.chart()?.generate(&ump.semantics);
            let feedback = judge(ump, &produced);
            for f in &feedback {
                let kind = if f.is_reward() { EventKind::Reward } else { EventKind::Punish };
                let mut e = TraceEvent::new(self.state.clock, kind).with_ump(ump);
                if let Some(off) = &f.offending_exponent {
                    e = e.with_offending(off.clone());
                }
                self.record(e);
            }
            if feedback.iter().all(|f| f.verdict == Verdict::Reward) {
                return Ok(changed);
            }
            changed = true;
            let offending: Vec<String> =
                feedback.iter().filter_map(|f| f.offending_exponent.clone()).filter(|e| !e.is_empty()).collect();
            if !offending.is_empty() {
                let mut last = None;
                for off in &offending {
                    match self.licensing_reorg(off, ump) {
                        Ok(()) => {
                            last = None;
                            break;
                        }
                        Err(e) => last = Some(e),
                    }
                }
                if let Some(e) = last {
                    return Err(e);
                }
            } else if let Some(stem) = self.abduce(ump)? {
                self.change(EventKind::SegmentationRevision, &[], &[stem], Some(ump));
            } else {
                self.rote_add(ump);
            }
        }
        Err(self.stuck(&ump.exponent, self.config.retry_cap))
    }

    /// Restricts one argument slot of the functor that licensed the offending
    /// exponent: the functor gains a fresh licensor `+k`, and the fillers that
    /// occupy that slot in correct derivations gain `-k`. Fillers with other
    /// uses are doubled rather than replaced. Each candidate is accepted only
    /// if it removes the offending exponent and keeps every correct one.
    pub fn licensing_reorg(&mut self, offending: &str, ump: &Ump) -> Result<(), LearnerError> {
        let lex = self.state.lexicon.clone();
        let correct = self.correct_umps()?;
        let chart = self.chart()?;
        let bad = chart.derivations_of(offending, &ump.semantics).into_iter().next();
        let good_derivs: Vec<Derivation> =
            correct.iter().flat_map(|u| chart.derivations_of(&u.exponent, &u.semantics)).collect();
        let unresolvable = || LearnerError::UnresolvablePunish {
            t: self.state.clock,
            offending: offending.to_string(),
            trace: self.trace.clone(),
        };
        let Some(bad) = bad else {
            return Err(unresolvable());
        };
        let (ident, counter) = fresh_ident(&lex, self.state.next_licensee);

        for slot in bad.slot_fillings().into_iter().rev() {
            let Some(bad_filler) = slot.filler else { continue };
            let mut good: Vec<usize> = Vec::new();
            for d in &good_derivs {
                for s in d.slot_fillings() {
                    if let Some(g) = s.filler {
                        if s.functor == slot.functor && s.slot == slot.slot && g != bad_filler && !good.contains(&g) {
                            good.push(g);
                        }
                    }
                }
            }
            good.retain(|&g| g != slot.functor);
            if good.is_empty() {
                continue;
            }
            let functor = lex.entries()[slot.functor].clone();
            for pos in reorg::licensor_positions(&functor) {
                let mut removed = vec![functor.clone()];
                let mut added = vec![reorg::with_licensor(&functor, pos, &ident)];
                for &g in &good {
                    let sign = &lex.entries()[g];
                    if !used_elsewhere(&good_derivs, g, slot.functor, slot.slot) {
                        removed.push(sign.clone());
                    }
                    added.push(reorg::with_licensee(sign, &ident));
                }
                let mut candidate = lex.clone();
                for r in &removed {
                    candidate.remove(r);
                }
                for a in &added {
                    candidate.insert(a.clone());
                }
                let c = self.build(&candidate)?;
                let fixed = !c.generate(&ump.semantics).iter().any(|e| e == offending);
                if fixed && correct.iter().all(|u| c.generate(&u.semantics).contains(&u.exponent)) {
                    self.state.next_licensee = counter + 1;
                    self.chart = Some(c);
                    self.change(EventKind::LicensingReorg, &removed, &added, Some(ump));
                    if let Some(e) = self.trace.last_mut() {
                        e.offending = Some(offending.to_string());
                    }
                    return Ok(());
                }
            }
        }
        Err(unresolvable())
    }

    /// Factors the first affix entry whose meaning is `λx.op(G)(x)` into a
    /// void operator and a plain numeral, provided no correct exponent is
    /// lost. Returns whether the lexicon changed.
    pub fn semantic_reorg(&mut self) -> Result<bool, LearnerError> {
        if !self.state.lexicon.iter().any(|e| factor_affix(e).is_some()) {
            return Ok(false);
        }
        let lex = self.state.lexicon.clone();
        let correct = self.correct_umps()?;
        for entry in lex.iter() {
            let Some((op, plain)) = factor_affix(entry) else { continue };
            let mut candidate = lex.clone();
            candidate.remove(entry);
            candidate.insert(op.clone());
            candidate.insert(plain.clone());
            let c = self.build(&candidate)?;
            if correct.iter().all(|u| c.generate(&u.semantics).contains(&u.exponent)) {
                self.chart = Some(c);
                let mut added = vec![op];
                if !lex.contains(&plain) {
                    added.push(plain);
                }
                self.change(EventKind::SemanticReorg, std::slice::from_ref(entry), &added, None);
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Whether lexicon entry `g` occurs in a correct derivation other than as
/// the filler of `slot` of `functor`.
fn used_elsewhere(derivs: &[Derivation], g: usize, functor: usize, slot: usize) -> bool {
    derivs.iter().any(|d| {
        let total = d.leaves.iter().filter(|&&l| l == g).count();
        let as_filler = d
            .slot_fillings()
            .iter()
            .filter(|s| s.filler == Some(g) && s.functor == functor && s.slot == slot)
            .count();
        total > as_filler
    })
}

fn num_type(licensees: Vec<Feature>) -> SynType {
    let mut feats = vec![Feature::base("num")];
    feats.extend(licensees);
    SynType::new(Category::Lexical, feats)
}

/// Result of a training run.
#[derive(Debug, Clone)]
pub struct Training {
    pub lexicon: Lexicon,
    pub trace: Vec<TraceEvent>,
    pub state: LearnerState,
}

/// Runs the teacher's counting sequence `1..=max_n` through a fresh learner.
pub fn train(max_n: u64, teacher: &Teacher, config: LearnerConfig) -> Result<Training, LearnerError> {
    let mut learner = Learner::new(config);
    for n in 1..=max_n {
        let ump = teacher.ump_for(n)?;
        learner.step(&ump)?;
    }
    let (state, trace) = learner.into_parts();
    Ok(Training { lexicon: state.lexicon.clone(), trace, state })
}

/// Per-number round-trip check: generation yields exactly the teacher's
/// exponent and parsing it yields a term evaluating to the number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub failures: Vec<u64>,
    pub total: u64,
}

impl RoundTrip {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            return 1.0;
        }
        (self.total - self.failures.len() as u64) as f64 / self.total as f64
    }
}

pub fn round_trip(lex: &Lexicon, teacher: &Teacher, max_n: u64, cfg: EnumerateConfig) -> Result<RoundTrip, LearnerError> {
    let chart = Chart::build(lex, &start_feature(), cfg)?;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let ump = teacher.ump_for(n)?;
        let generated = chart.generate(&ump.semantics);
        let parsed = chart.parse(&ump.exponent);
        let ok = generated == [ump.exponent.clone()] && parsed.iter().any(|t| evaluate(t).ok() == Some(n));
        if !ok {
            failures.push(n);
        }
    }
    Ok(RoundTrip { failures, total: max_n })
}
