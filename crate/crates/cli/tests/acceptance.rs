//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use numeral_mg::grammar::{move_chain, Category, Expression, Feature, Rule, Sign, SynType};
use numeral_mg::learner::trace;
use numeral_mg::lexicon::Lexicon;
use numeral_mg::teacher::{semantics_for, ump_for};
use numeral_mg::terms::{anti_unify, beta_reduce, evaluate, normalize, parse_term, Term};
use numeral_mg::transducer::{derive_items, start_feature, Chart, EnumerateConfig};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn(&Fixtures) -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const ROTE_TWELVE: &str = "\
one :: num ; 1
two :: num ; 2
three :: num ; 3
four :: num ; 4
five :: num ; 5
six :: num ; 6
seven :: num ; 7
eight :: num ; 8
nine :: num ; 9
ten :: num ; 10^1
eleven :: num ; (add (mul 10^1 1) 1)
twelve :: num ; (add (mul 10^1 1) 2)
";

/// Lexicon right after the teen segmentation.
const SEGMENTED_EXTRA: &str = "\
teen : =num num ; (lam x (add (mul 10^1 1) x))
thir :: num ; 3
";

const LICENSED: &str = "\
one :: num ; 1
two :: num ; 2
three :: num ; 3
thir :: num -k ; 3
four :: num -k ; 4
five :: num ; 5
fif :: num -k ; 5
six :: num -k ; 6
seven :: num -k ; 7
eight :: num -k ; 8
nine :: num -k ; 9
ten :: num ; 10^1
eleven :: num ; (add (mul 10^1 1) 1)
twelve :: num ; (add (mul 10^1 1) 2)
teen : =num +k num ; (lam x (add (mul 10^1 1) x))
";

const FACTORED: &str = "\
one :: num ; 1
two :: num ; 2
three :: num ; 3
thir :: num -k ; 3
four :: num -k ; 4
five :: num ; 5
fif :: num -k ; 5
six :: num -k ; 6
seven :: num -k ; 7
eight :: num -k ; 8
nine :: num -k ; 9
ten :: num ; 10^1
teen :: num ; (mul 10^1 1)
eleven :: num ; (add (mul 10^1 1) 1)
twelve :: num ; (add (mul 10^1 1) 2)
@eps :: =num =num +k num ; (lam y (lam x (add y x)))
";

/// Rows the learner may hold beyond the reference lexicon: the plain `eight`
/// kept next to the `eigh` allomorph and the doubled simplex numerals.
const ALLOWED_EXTRA: [&str; 5] =
    ["eight :: num ; 8", "four :: num ; 4", "six :: num ; 6", "seven :: num ; 7", "nine :: num ; 9"];

/// A reference lexicon with `eight -k` replaced by the `eigh` allomorph.
fn with_eigh(lexicon: &str) -> String {
    lexicon.replace("eight :: num -k ; 8\n", "eigh :: num -k ; 8\neight :: num ; 8\n")
}

fn lexicon(text: &str) -> Lexicon {
    text.parse().expect("fixture lexicon parses")
}

fn number_word(n: u64) -> String {
    let small = [
        "", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven", "twelve",
        "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen",
    ];
    let tens = ["", "", "twenty", "thirty", "fourty", "fifty", "sixty", "seventy", "eighty", "ninety"];
    if n < 20 {
        small[n as usize].to_string()
    } else {
        format!("{}{}", tens[(n / 10) as usize], small[(n % 10) as usize])
    }
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
    elapsed: Duration,
}

fn cli(args: &[&str]) -> Output {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_numeral-mg")).args(args).output().expect("binary runs");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        elapsed: start.elapsed(),
    }
}

struct TrainRun {
    max: u64,
    out: Output,
    lexicon: PathBuf,
    trace: PathBuf,
}

impl TrainRun {
    fn new(dir: &Path, max: u64) -> TrainRun {
        let lexicon = dir.join(format!("train{max}.lex"));
        let trace = dir.join(format!("train{max}.jsonl"));
        let m = max.to_string();
        let out = cli(&[
            "train",
            "--max",
            &m,
            "--lexicon",
            lexicon.to_str().unwrap(),
            "--trace",
            trace.to_str().unwrap(),
        ]);
        TrainRun { max, out, lexicon, trace }
    }

    fn succeeded(&self) -> Outcome {
        ensure!(self.out.code == 0, "train --max {} exited {}: {}", self.max, self.out.code, self.out.stderr.trim());
        Ok(())
    }

    fn lexicon_text(&self) -> Result<String, String> {
        fs::read_to_string(&self.lexicon).map_err(|e| format!("reading lexicon of train --max {}: {e}", self.max))
    }
}

struct Fixtures {
    dir: tempfile::TempDir,
    runs: HashMap<u64, TrainRun>,
}

impl Fixtures {
    fn path(&self, name: &str, text: &str) -> String {
        let p = self.dir.path().join(name);
        fs::write(&p, text).expect("write fixture");
        p.to_str().unwrap().to_string()
    }
}

fn rote_lexicon_golden(fx: &Fixtures) -> Outcome {
    let run = &fx.runs[&12];
    run.succeeded()?;
    let text = run.lexicon_text()?;
    ensure!(text == ROTE_TWELVE, "lexicon differs from the rote lexicon:\n{text}");
    ensure!(run.out.elapsed < Duration::from_secs(1), "took {:?}", run.out.elapsed);
    Ok(())
}

fn derive_lines(lex: &str, items: &str) -> (i32, Vec<String>) {
    let out = cli(&["derive", "--lexicon", lex, "--items", items]);
    (out.code, out.stdout.lines().map(str::to_string).collect())
}

fn derivation_goldens(fx: &Fixtures) -> Outcome {
    let segmented = format!("{ROTE_TWELVE}{SEGMENTED_EXTRA}");
    let cases = [
        ("specifier merge", segmented.as_str(), "teen,thir", vec!["merge-2"]),
        ("licensed teen", LICENSED, "teen,thir", vec!["merge-3", "move-1"]),
        ("void operator", FACTORED, "eps,teen,thir", vec!["merge-1", "merge-3", "move-1"]),
    ];
    let head = "=> <thirteen, : num, (add (mul 10^1 1) 3)>";
    let expected_sem = Term::app(
        Term::app(Term::Add, Term::app(Term::app(Term::Mul, Term::pow(1)), Term::num(1))),
        Term::num(3),
    );
    for (name, text, items, rules) in cases {
        let path = fx.path(&format!("{name}.lex"), text);
        let (code, lines) = derive_lines(&path, items);
        let mut want: Vec<String> = rules.iter().map(|r| r.to_string()).collect();
        want.push(head.to_string());
        ensure!(code == 0 && lines == want, "{name}: exit {code}, printed {lines:?}, expected {want:?}");

        let lex = lexicon(text);
        let idx: Vec<usize> = items.split(',').map(|k| lex.resolve_key(k).unwrap()).collect();
        let d = derive_items(&lex, &idx, &start_feature()).map_err(|e| e.to_string())?;
        let h = d.result.head();
        ensure!(d.complete && d.result.chains().is_empty(), "{name}: derivation not complete");
        ensure!(h.exponent == "thirteen", "{name}: exponent {}", h.exponent);
        ensure!(h.syntype.to_string() == ": num", "{name}: type {}", h.syntype);
        ensure!(normalize(&h.semantics).unwrap() == expected_sem, "{name}: semantics {}", h.semantics);
    }
    Ok(())
}

fn complete_exponents(lex: &Lexicon, max_leaves: usize) -> Result<BTreeSet<String>, String> {
    let chart = Chart::build(lex, &start_feature(), EnumerateConfig::with_max_leaves(max_leaves))
        .map_err(|e| e.to_string())?;
    Ok(chart.complete_expressions().map(|e| e.head().exponent.clone()).collect())
}

fn no_overgeneration(fx: &Fixtures) -> Outcome {
    for (name, text) in [("licensed", LICENSED), ("factored", FACTORED)] {
        let printed = lexicon(text);
        let fixed = lexicon(&with_eigh(text));
        for leaves in 1..=5 {
            let p = complete_exponents(&printed, leaves)?;
            ensure!(!p.contains("threeteen"), "{name} derives threeteen at {leaves} leaves");
            let f = complete_exponents(&fixed, leaves)?;
            ensure!(!f.contains("threeteen"), "{name} (eigh) derives threeteen at {leaves} leaves");
            ensure!(!f.contains("eightteen"), "{name} (eigh) derives eightteen at {leaves} leaves");
            ensure!(f.contains("eighteen") == (leaves >= 2 + (name == "factored") as usize), "{name} (eigh): eighteen at {leaves} leaves");
        }
        // with a single eight -k entry, eightteen is still derived
        ensure!(complete_exponents(&printed, 5)?.contains("eightteen"), "{name} with eight -k lacks eightteen");
    }

    // before licensing, merge-2 completes threeteen
    let segmented = lexicon(&format!("{ROTE_TWELVE}{SEGMENTED_EXTRA}"));
    let idx = [segmented.resolve_key("teen").unwrap(), segmented.resolve_key("three").unwrap()];
    let d = derive_items(&segmented, &idx, &start_feature()).map_err(|e| e.to_string())?;
    ensure!(d.steps.len() == 1 && d.steps[0].rule == Rule::Merge2, "segmented: steps {:?}", d.steps);
    ensure!(d.complete && d.result.head().exponent == "threeteen", "segmented: threeteen not derived");
    ensure!(complete_exponents(&segmented, 2)?.contains("threeteen"), "segmented chart lacks threeteen");

    // with +k, merge-2 still succeeds but the result is stuck
    let licensed = lexicon(LICENSED);
    let idx = [licensed.resolve_key("teen").unwrap(), licensed.resolve_key("three").unwrap()];
    let d = derive_items(&licensed, &idx, &start_feature()).map_err(|e| e.to_string())?;
    ensure!(d.steps.len() == 1 && d.steps[0].rule == Rule::Merge2, "licensed: steps {:?}", d.steps);
    let h = d.result.head();
    ensure!(h.exponent == "threeteen" && h.syntype.to_string() == ": +k num", "licensed: head {h}");
    ensure!(!d.complete && move_chain(&d.result).is_err(), "licensed: threeteen not stuck");

    let licensed_path = fx.path("licensed.lex", LICENSED);
    let (code, lines) = derive_lines(&licensed_path, "teen,three");
    let want = ["merge-2", "=> <threeteen, : +k num, (add (mul 10^1 1) 3)>"];
    ensure!(code == 1 && lines == want, "derive teen,three on licensed lexicon: exit {code}, {lines:?}");
    let out = cli(&["parse", "--lexicon", &licensed_path, "--utterance", "threeteen"]);
    ensure!(out.code == 1 && out.stdout.is_empty(), "parse threeteen: exit {}, {:?}", out.code, out.stdout);
    Ok(())
}

fn teen_lexicon_converges(fx: &Fixtures) -> Outcome {
    let run = &fx.runs[&19];
    run.succeeded()?;
    ensure!(run.out.elapsed < Duration::from_secs(5), "took {:?}", run.out.elapsed);
    let text = run.lexicon_text()?;
    let learned: BTreeSet<&str> = text.lines().collect();
    let reference = with_eigh(FACTORED);
    let wanted: BTreeSet<&str> = reference.lines().collect();
    let missing: Vec<&&str> = wanted.difference(&learned).collect();
    ensure!(missing.is_empty(), "missing rows {missing:?}");
    let extra: Vec<&&str> = learned.difference(&wanted).filter(|r| !ALLOWED_EXTRA.contains(r)).collect();
    ensure!(extra.is_empty(), "undocumented rows {extra:?}");
    let licensed_teen = "teen : =num +k num ; (lam x (add (mul 10^1 1) x))";
    ensure!(!learned.contains(licensed_teen), "licensed teen survived semantic reorganization");
    Ok(())
}

fn round_trip_99(fx: &Fixtures) -> Outcome {
    let run = &fx.runs[&99];
    run.succeeded()?;
    ensure!(run.out.elapsed < Duration::from_secs(60), "took {:?}", run.out.elapsed);
    let lex = lexicon(&run.lexicon_text()?);
    let chart = Chart::build(&lex, &start_feature(), EnumerateConfig::default()).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    for n in 1..=99 {
        let word = number_word(n);
        let ump = ump_for(n).map_err(|e| e.to_string())?;
        ensure!(ump.exponent == word, "teacher says {} for {n}", ump.exponent);
        let generated = chart.generate(&ump.semantics);
        let parsed = chart.parse(&word);
        if generated != [word.clone()] || !parsed.iter().any(|t| evaluate(t) == Ok(n)) {
            failures.push(format!("{n}: generated {generated:?}"));
        }
    }
    ensure!(failures.is_empty(), "accuracy {}/99, failing {failures:?}", 99 - failures.len());
    ensure!(run.out.stderr.contains("round-trip accuracy: 1.0000 (99/99)"), "summary: {}", run.out.stderr.trim());

    let lex_path = run.lexicon.to_str().unwrap();
    let out = cli(&["generate", "--lexicon", lex_path, "--value", "42"]);
    ensure!(out.code == 0 && out.stdout == "fourtytwo\n", "generate 42: {:?}", out.stdout);
    let out = cli(&["parse", "--lexicon", lex_path, "--utterance", "seventyseven"]);
    ensure!(out.code == 0 && out.stdout.lines().any(|l| l.ends_with("\t77")), "parse 77: {:?}", out.stdout);
    Ok(())
}

fn term_properties(_: &Fixtures) -> Outcome {
    for n in 1..=9999 {
        let v = evaluate(&semantics_for(n)).map_err(|e| e.to_string())?;
        ensure!(v == n, "semantics_for({n}) evaluates to {v}");
    }

    let teen = parse_term("(lam x (add (mul 10^1 1) x))").unwrap();
    let reduced = beta_reduce(&Term::app(teen, Term::num(3))).map_err(|e| e.to_string())?;
    let expected = Term::app(
        Term::app(Term::Add, Term::app(Term::app(Term::Mul, Term::pow(1)), Term::num(1))),
        Term::num(3),
    );
    ensure!(reduced == expected, "beta result {reduced:?}");
    ensure!(evaluate(&reduced) == Ok(13), "beta result does not evaluate to 13");

    for n in 1..99 {
        let (a, b) = (ump_for(n).unwrap().semantics, ump_for(n + 1).unwrap().semantics);
        let g = match anti_unify(&a, &b) {
            Ok(g) => g,
            // within a decade only the unit differs, so a one-hole pattern must exist
            Err(e) => {
                ensure!(n < 21 || n % 10 == 0 || n % 10 == 9, "anti_unify({n}, {}) failed: {e}", n + 1);
                continue;
            }
        };
        for (arg, t) in [(&g.arg1, &a), (&g.arg2, &b)] {
            let back = beta_reduce(&Term::app(g.context.clone(), arg.clone())).map_err(|e| e.to_string())?;
            ensure!(back.alpha_eq(&beta_reduce(t).unwrap()), "anti_unify({n}, {}) unsound", n + 1);
        }
    }
    Ok(())
}

/// Naive minimalist-grammar closure used as the oracle for the chart.
mod oracle {
    use std::collections::HashMap;

    #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
    pub struct OSign {
        pub exp: String,
        pub lexical: bool,
        pub feats: Vec<String>,
        pub sem: String,
    }

    pub type OExpr = Vec<OSign>;

    fn derived(exp: String, feats: &[String], sem: String) -> OSign {
        OSign { exp, lexical: false, feats: feats.to_vec(), sem }
    }

    fn smc_ok(chains: &[OSign]) -> bool {
        let mut firsts: Vec<&String> = chains.iter().map(|c| &c.feats[0]).collect();
        let n = firsts.len();
        firsts.sort();
        firsts.dedup();
        firsts.len() == n
    }

    fn merge(a: &OExpr, b: &OExpr) -> Option<OExpr> {
        let (h1, h2) = (&a[0], &b[0]);
        let sel = h1.feats.first()?.strip_prefix('=')?;
        if h2.feats.first()? != sel {
            return None;
        }
        let mut out;
        if h2.feats.len() > 1 {
            out = vec![derived(h1.exp.clone(), &h1.feats[1..], h1.sem.clone())];
            out.extend_from_slice(&a[1..]);
            out.push(derived(h2.exp.clone(), &h2.feats[1..], h2.sem.clone()));
            out.extend_from_slice(&b[1..]);
        } else {
            let sem = format!("({} {})", h1.sem, h2.sem);
            let exp = if h1.lexical { format!("{}{}", h1.exp, h2.exp) } else { format!("{}{}", h2.exp, h1.exp) };
            out = vec![derived(exp, &h1.feats[1..], sem)];
            out.extend_from_slice(&a[1..]);
            out.extend_from_slice(&b[1..]);
        }
        smc_ok(&out[1..]).then_some(out)
    }

    fn mv(a: &OExpr) -> Option<OExpr> {
        let h = &a[0];
        let lic = h.feats.first()?.strip_prefix('+')?;
        let want = format!("-{lic}");
        let movers: Vec<usize> = (1..a.len()).filter(|&i| a[i].feats[0] == want).collect();
        let [i] = movers[..] else { return None };
        let m = &a[i];
        let mut out;
        if m.feats.len() == 1 {
            out = vec![derived(format!("{}{}", m.exp, h.exp), &h.feats[1..], format!("({} {})", h.sem, m.sem))];
            out.extend(a[1..].iter().enumerate().filter(|(j, _)| j + 1 != i).map(|(_, s)| s.clone()));
        } else {
            out = a.clone();
            out[0] = derived(h.exp.clone(), &h.feats[1..], h.sem.clone());
            out[i] = derived(m.exp.clone(), &m.feats[1..], m.sem.clone());
        }
        smc_ok(&out[1..]).then_some(out)
    }

    /// Every expression reachable with at most `max_leaves` lexical items,
    /// by applying merge and move to all pairs until nothing new appears.
    pub fn closure(lexicon: &[OSign], max_leaves: usize) -> HashMap<OExpr, usize> {
        let mut seen: HashMap<OExpr, usize> = lexicon.iter().map(|s| (vec![s.clone()], 1)).collect();
        loop {
            let snapshot: Vec<(OExpr, usize)> = seen.iter().map(|(e, &l)| (e.clone(), l)).collect();
            let mut fresh = Vec::new();
            for (a, la) in &snapshot {
                if let Some(e) = mv(a) {
                    fresh.push((e, *la));
                }
                for (b, lb) in &snapshot {
                    if la + lb <= max_leaves {
                        if let Some(e) = merge(a, b) {
                            fresh.push((e, la + lb));
                        }
                    }
                }
            }
            let mut changed = false;
            for (e, l) in fresh {
                let slot = seen.entry(e).or_insert(usize::MAX);
                if l < *slot {
                    *slot = l;
                    changed = true;
                }
            }
            if !changed {
                return seen;
            }
        }
    }

    pub fn complete(e: &OExpr) -> bool {
        e.len() == 1 && e[0].feats == ["num"]
    }
}

fn random_lexicon(rng: &mut ChaCha8Rng) -> Vec<(String, bool, Vec<String>)> {
    let n = rng.gen_range(1..=6);
    (0..n)
        .map(|_| {
            let mut feats = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                feats.push(["=num", "+k"].choose(rng).unwrap().to_string());
            }
            feats.push("num".to_string());
            if rng.gen_bool(0.4) {
                feats.push("-k".to_string());
            }
            let exp = ["a", "b", "c", ""].choose(rng).unwrap().to_string();
            (exp, rng.gen_bool(0.75), feats)
        })
        .collect()
}

fn term_text(t: &Term) -> String {
    match t {
        Term::Var(v) => v.clone(),
        Term::App(f, a) => format!("({} {})", term_text(f), term_text(a)),
        other => format!("{other:?}"),
    }
}

fn chart_key(e: &Expression) -> oracle::OExpr {
    e.signs()
        .iter()
        .map(|s| oracle::OSign {
            exp: s.exponent.clone(),
            lexical: s.syntype.category == Category::Lexical,
            feats: s.syntype.features.iter().map(Feature::to_string).collect(),
            sem: term_text(&s.semantics),
        })
        .collect()
}

fn oracle_equivalence(_: &Fixtures) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d67);
    let mut nonempty = 0;
    let mut with_move = 0;
    let lexicons = 200;
    for case in 0..lexicons {
        let raw = random_lexicon(&mut rng);
        let max_leaves = rng.gen_range(2..=5);
        let mut signs = Vec::new();
        let mut osigns = Vec::new();
        for (i, (exp, lexical, feats)) in raw.iter().enumerate() {
            let sem = format!("c{i}");
            let category = if *lexical { Category::Lexical } else { Category::Derived };
            let ty = SynType::new(category, feats.iter().map(|f| f.parse().unwrap()).collect());
            signs.push(Sign::new(exp.clone(), ty, Term::var(sem.clone())));
            osigns.push(oracle::OSign { exp: exp.clone(), lexical: *lexical, feats: feats.clone(), sem });
        }
        let lex: Lexicon = signs.into_iter().collect();
        let chart = Chart::build(&lex, &start_feature(), EnumerateConfig::with_max_leaves(max_leaves))
            .map_err(|e| format!("case {case}: {e}"))?;
        let got: BTreeSet<oracle::OExpr> = chart.complete_expressions().map(chart_key).collect();
        let want: BTreeSet<oracle::OExpr> =
            oracle::closure(&osigns, max_leaves).into_keys().filter(oracle::complete).collect();
        ensure!(got == want, "case {case} ({raw:?}, {max_leaves} leaves): chart {got:?} oracle {want:?}");
        if !want.is_empty() {
            nonempty += 1;
        }
        // a -k item can only end up in a complete expression through move
        let movers: Vec<String> =
            osigns.iter().filter(|s| s.feats.iter().any(|f| f == "-k")).map(|s| s.sem.clone()).collect();
        if want.iter().any(|e| movers.iter().any(|m| e[0].sem.contains(m.as_str()))) {
            with_move += 1;
        }
    }
    ensure!(nonempty >= 50 && with_move >= 10, "weak sample: {nonempty} non-empty, {with_move} with licensing");
    Ok(())
}

fn event_sourcing(fx: &Fixtures) -> Outcome {
    let mut maxes: Vec<&u64> = fx.runs.keys().collect();
    maxes.sort();
    for max in maxes {
        let run = &fx.runs[max];
        run.succeeded()?;
        let text = run.lexicon_text()?;
        let trace_text = fs::read_to_string(&run.trace).map_err(|e| e.to_string())?;
        let events = trace::from_jsonl(&trace_text).map_err(|e| e.to_string())?;
        let replayed = trace::replay(&events).map_err(|e| e.to_string())?;
        ensure!(replayed.to_text() == text, "replay of train --max {max} differs");
        let out = cli(&["lexicon-show", "--trace", run.trace.to_str().unwrap()]);
        ensure!(out.code == 0 && out.stdout == text, "lexicon-show --trace for --max {max} differs");
    }
    Ok(())
}

fn main() {
    let dir = tempfile::tempdir().expect("tempdir");
    let runs = [1, 12, 19, 99].into_iter().map(|m| (m, TrainRun::new(dir.path(), m))).collect();
    let fx = Fixtures { dir, runs };

    let criteria: [Criterion; 8] = [
        ("rote lexicon after twelve", rote_lexicon_golden),
        ("derivation goldens", derivation_goldens),
        ("no threeteen or eightteen", no_overgeneration),
        ("teen lexicon convergence", teen_lexicon_converges),
        ("round trip 1..99", round_trip_99),
        ("term algebra properties", term_properties),
        ("chart equals naive oracle", oracle_equivalence),
        ("trace replay", event_sourcing),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check(&fx) {
            Ok(()) => println!("criterion {} {name}: PASS ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
