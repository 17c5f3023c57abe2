//! Cross-validation of the engines against each other on golden and
//! randomly generated theories.

use std::collections::BTreeMap;
use std::fmt;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::defaults::{df, DefaultTheoryA};
use crate::engine::{check_derivation, Reasoner};
use crate::graph::{completeness_from, is_decisive, unknowable, unknowable_subgraph};
use crate::parse::{render_program, render_theory};
use crate::program::GroundProgram;
use crate::semantics::{
    brute_force_stable_models, kunen_trace, stable_models, AtomSet, Interp3, Truth,
};
use crate::theory::{DefeasibleTheory, Extension4, Literal, Rule, RuleKind, Tag, TaggedLiteral};
use crate::translate::{defeasibly, definitely, project, to_default_theory, translate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenMode {
    Any,
    Decisive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenConfig {
    pub atoms: usize,
    pub rules: usize,
    pub max_body: usize,
    /// Relative weights of strict, defeasible and defeater rules.
    pub kind_weights: [u32; 3],
    pub sup_density: f64,
    /// Probability that an atom contributes a fact.
    pub fact_density: f64,
    pub mode: GenMode,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            atoms: 5,
            rules: 8,
            max_body: 2,
            kind_weights: [2, 5, 1],
            sup_density: 0.3,
            fact_density: 0.1,
            mode: GenMode::Any,
            seed: 7,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.atoms == 0 || self.rules == 0 {
            return Err("atom and rule counts must be positive".into());
        }
        if self.kind_weights.iter().all(|w| *w == 0) {
            return Err("rule kind weights must not all be zero".into());
        }
        for (name, v) in [("sup_density", self.sup_density), ("fact_density", self.fact_density)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(format!("{name} must lie in [0, 1]"));
            }
        }
        Ok(())
    }
}

/// `a`, `b`, ..., `z`, then `a26`, `a27`, ...
pub fn atom_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

/// A random theory, deterministic in `cfg`. In decisive mode every
/// antecedent atom has a lower index than its rule's head atom.
pub fn gen_theory(cfg: &GenConfig) -> DefeasibleTheory {
    cfg.validate().expect("invalid generator config");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let kinds = WeightedIndex::new(cfg.kind_weights).unwrap();
    let mut d = DefeasibleTheory::new();
    let lit = |rng: &mut ChaCha8Rng, i: usize| Literal::new(atom_name(i), rng.random_bool(0.5));

    for i in 0..cfg.atoms {
        if rng.random_bool(cfg.fact_density) {
            let l = lit(&mut rng, i);
            d.facts.insert(l);
        }
    }
    for n in 0..cfg.rules {
        let head = rng.random_range(0..cfg.atoms);
        let pool: Vec<usize> = match cfg.mode {
            GenMode::Any => (0..cfg.atoms).collect(),
            GenMode::Decisive => (0..head).collect(),
        };
        let size = rng.random_range(0..=cfg.max_body.min(pool.len()));
        let body: Vec<Literal> = rand::seq::index::sample(&mut rng, pool.len(), size)
            .into_iter()
            .map(|k| pool[k])
            .collect::<Vec<_>>()
            .into_iter()
            .map(|a| lit(&mut rng, a))
            .collect();
        let kind = [RuleKind::Strict, RuleKind::Defeasible, RuleKind::Defeater][kinds.sample(&mut rng)];
        let h = lit(&mut rng, head);
        d.rules.push(Rule::new(format!("r{}", n + 1), kind, body, h));
    }
    // Mostly between conflicting rules; occasionally between unrelated ones.
    for i in 0..d.rules.len() {
        for j in i + 1..d.rules.len() {
            let conflicting = d.rules[i].head == d.rules[j].head.complement();
            let p = if conflicting { cfg.sup_density } else { cfg.sup_density / 10.0 };
            if !rng.random_bool(p) {
                continue;
            }
            let (a, b) = if rng.random_bool(0.5) { (i, j) } else { (j, i) };
            let (a, b) = (d.rules[a].label.clone(), d.rules[b].label.clone());
            let mut sup = d.sup.clone();
            sup.insert(a, b);
            if sup.find_cycle().is_none() {
                d.sup = sup;
            }
        }
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub digest: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    fn new(name: &'static str, digest: &str, verdict: Verdict, witness: Option<String>) -> Self {
        CheckReport {
            name,
            digest: digest.to_string(),
            verdict,
            witness,
        }
    }

    /// Pass when `failure` is `None`, otherwise fail with it as witness.
    fn from_failure(name: &'static str, digest: &str, failure: Option<String>) -> Self {
        match failure {
            None => Self::new(name, digest, Verdict::Pass, None),
            Some(w) => Self::new(name, digest, Verdict::Fail, Some(w)),
        }
    }
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn theory_digest(d: &DefeasibleTheory) -> String {
    digest(&render_theory(d))
}

pub fn program_digest(p: &GroundProgram) -> String {
    digest(&render_program(p))
}

/// Shared intermediate results for the checks on one theory.
struct Trial<'a> {
    d: &'a DefeasibleTheory,
    digest: String,
    reasoner: Reasoner<'a>,
    decisive: bool,
    program: GroundProgram,
    models: Vec<AtomSet>,
}

impl<'a> Trial<'a> {
    fn new(d: &'a DefeasibleTheory) -> Self {
        let program = translate(d);
        let models = stable_models(&program, None);
        Trial {
            digest: theory_digest(d),
            reasoner: Reasoner::new(d),
            decisive: is_decisive(d),
            program,
            models,
            d,
        }
    }

    fn ext(&self) -> &Extension4 {
        self.reasoner.extension()
    }

    fn coherence(&self) -> CheckReport {
        let e = self.ext();
        let failure = if !e.is_coherent() {
            let l = e
                .plus_delta
                .intersection(&e.minus_delta)
                .chain(e.plus_partial.intersection(&e.minus_partial))
                .next()
                .unwrap();
            Some(format!("{l} is both proved and refuted"))
        } else if !e.is_relatively_consistent() {
            let l = e
                .plus_partial
                .iter()
                .find(|l| e.plus_partial.contains(&l.complement()) && !e.plus_delta.contains(l))
                .unwrap();
            Some(format!("+∂{l} and +∂{} without strict support", l.complement()))
        } else {
            None
        };
        CheckReport::from_failure("coherence", &self.digest, failure)
    }

    fn butd(&self) -> CheckReport {
        let e = self.ext();
        let failure = e.conclusions().find_map(|c| match self.reasoner.derive(&c) {
            None => Some(format!("no derivation of {c}")),
            Some(der) => {
                if let Err(i) = check_derivation(self.d, &der.lines) {
                    return Some(format!("derivation of {c} breaks at line {i}"));
                }
                der.lines
                    .iter()
                    .find(|l| !e.contains(l))
                    .map(|l| format!("derivation of {c} uses {l}, not in the fixpoint"))
            }
        });
        CheckReport::from_failure("butd", &self.digest, failure)
    }

    fn graph_lemmata(&self) -> CheckReport {
        let u = unknowable_subgraph(self.d, self.ext());
        let failure = if let Some(n) = u.nodes.iter().find(|n| u.out_degree(n) == 0) {
            Some(format!("unknowable node {n} has out-degree 0"))
        } else if !u.is_empty() && u.is_acyclic() {
            Some("unknowable subgraph is nonempty but acyclic".to_string())
        } else if self.decisive && !completeness_from(self.d, self.ext()).complete {
            let lits: Vec<String> = unknowable(self.d, self.ext())
                .defeasible
                .iter()
                .map(ToString::to_string)
                .collect();
            Some(format!("decisive but incomplete at {}", lits.join(", ")))
        } else {
            None
        };
        CheckReport::from_failure("graph_lemmata", &self.digest, failure)
    }

    fn stable_embedding(&self) -> CheckReport {
        let e = self.ext();
        let s = &self.models;
        let in_all = |a| s.iter().all(|m| m.contains(&a));
        let in_some = |a| s.iter().any(|m| m.contains(&a));
        let mut failure = None;
        let mut gaps = Vec::new();
        for p in self.d.signature() {
            let pairs = [
                (Tag::PlusDelta, Tag::MinusDelta, definitely(&p)),
                (Tag::PlusPartial, Tag::MinusPartial, defeasibly(&p)),
            ];
            for (plus, minus, atom) in pairs {
                let pos = e.component(plus).contains(&p);
                let neg = e.component(minus).contains(&p);
                let all = in_all(atom.clone());
                let some = in_some(atom.clone());
                if pos && !all {
                    failure.get_or_insert(format!("{}{p} but {atom} missing from a stable model", plus));
                }
                if neg && some {
                    failure.get_or_insert(format!("{}{p} but {atom} in a stable model", minus));
                }
                if !s.is_empty() {
                    if all && !pos {
                        gaps.push(format!("{atom} in every stable model without {}{p}", plus));
                    }
                    if !some && !neg {
                        gaps.push(format!("{atom} in no stable model without {}{p}", minus));
                    }
                }
            }
        }
        if failure.is_some() {
            return CheckReport::from_failure("stable_embedding", &self.digest, failure);
        }
        if s.is_empty() {
            if self.decisive {
                return CheckReport::new(
                    "stable_embedding",
                    &self.digest,
                    Verdict::Fail,
                    Some("decisive theory without stable model".into()),
                );
            }
            let v = if e.is_empty() { Verdict::Vacuous } else { Verdict::Pass };
            return CheckReport::new("stable_embedding", &self.digest, v, Some("no stable model".into()));
        }
        if self.decisive && !gaps.is_empty() {
            return CheckReport::new("stable_embedding", &self.digest, Verdict::Fail, Some(gaps.remove(0)));
        }
        let note = (!gaps.is_empty()).then(|| format!("not decisive; converse gap: {}", gaps.join("; ")));
        CheckReport::new("stable_embedding", &self.digest, Verdict::Pass, note)
    }

    fn kunen_embedding(&self, k: &Interp3) -> CheckReport {
        let e = self.ext();
        let mut failure = None;
        for p in self.d.signature() {
            let rows = [
                (Tag::PlusDelta, definitely(&p), Truth::T),
                (Tag::MinusDelta, definitely(&p), Truth::F),
                (Tag::PlusPartial, defeasibly(&p), Truth::T),
                (Tag::MinusPartial, defeasibly(&p), Truth::F),
            ];
            for (tag, atom, want) in rows {
                let dl = e.component(tag).contains(&p);
                let lp = k.get(&atom) == want;
                if dl != lp {
                    failure.get_or_insert(format!(
                        "{} is {dl} but {atom} is {} at the Kunen fixpoint",
                        TaggedLiteral::new(tag, p.clone()),
                        k.get(&atom)
                    ));
                }
            }
        }
        CheckReport::from_failure("kunen_embedding", &self.digest, failure)
    }

    fn extension_existence(&self, t_exts: &[AtomSet]) -> CheckReport {
        if !self.decisive {
            return CheckReport::new("extension_existence", &self.digest, Verdict::Vacuous, None);
        }
        let failure = t_exts.is_empty().then(|| "decisive theory whose default theory has no extension".to_string());
        CheckReport::from_failure("extension_existence", &self.digest, failure)
    }

    fn engine_bounds(&self, trace: &[Interp3]) -> CheckReport {
        let sig = self.d.signature().len();
        let iters = self.reasoner.iterations();
        let atoms = self.program.atoms().len();
        let steps = trace.len() - 1;
        let failure = if iters > 4 * sig + 2 {
            Some(format!("T_D took {iters} iterations for {sig} literals"))
        } else if steps > atoms + 1 {
            Some(format!("Kunen took {steps} steps for {atoms} atoms"))
        } else {
            persistence_violation(trace)
        };
        CheckReport::from_failure("engine_bounds", &self.digest, failure)
    }

    fn default_agreement(&self, t_exts: &[AtomSet]) -> CheckReport {
        let mut lhs: Vec<AtomSet> = t_exts.iter().map(project).collect();
        let mut rhs: Vec<AtomSet> = self.models.iter().map(project).collect();
        lhs.sort();
        rhs.sort();
        let failure = (lhs != rhs).then(|| {
            format!(
                "{} extensions of the default theory, {} stable models, projections differ",
                lhs.len(),
                rhs.len()
            )
        });
        CheckReport::from_failure("default_agreement", &self.digest, failure)
    }
}

/// First atom whose known value changes between consecutive steps.
fn persistence_violation(trace: &[Interp3]) -> Option<String> {
    trace.windows(2).enumerate().find_map(|(n, w)| {
        w[0].values.iter().find_map(|(a, v)| {
            let next = w[1].get(a);
            (v.is_known() && next != *v).then(|| format!("{a} changes from {v} to {next} at step {}", n + 1))
        })
    })
}

fn show(m: &AtomSet) -> String {
    let v: Vec<String> = m.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn first_difference(a: &[AtomSet], b: &[AtomSet]) -> String {
    match a.iter().find(|m| !b.contains(m)) {
        Some(m) => format!("{} only on the left", show(m)),
        None => match b.iter().find(|m| !a.contains(m)) {
            Some(m) => format!("{} only on the right", show(m)),
            None => "multiplicities differ".into(),
        },
    }
}

pub fn check_coherence(d: &DefeasibleTheory) -> CheckReport {
    Trial::new(d).coherence()
}

pub fn check_butd(d: &DefeasibleTheory) -> CheckReport {
    Trial::new(d).butd()
}

pub fn check_graph_lemmata(d: &DefeasibleTheory) -> CheckReport {
    Trial::new(d).graph_lemmata()
}

pub fn check_stable_embedding(d: &DefeasibleTheory) -> CheckReport {
    Trial::new(d).stable_embedding()
}

pub fn check_kunen_embedding(d: &DefeasibleTheory) -> CheckReport {
    let t = Trial::new(d);
    let k = kunen_trace(&t.program).pop().unwrap();
    t.kunen_embedding(&k)
}

pub fn check_engine_bounds(d: &DefeasibleTheory) -> CheckReport {
    let t = Trial::new(d);
    t.engine_bounds(&kunen_trace(&t.program))
}

pub fn check_extension_existence(d: &DefeasibleTheory) -> CheckReport {
    let t = Trial::new(d);
    let exts: Vec<AtomSet> = to_default_theory(d).extensions().into_iter().collect();
    t.extension_existence(&exts)
}

pub fn check_default_agreement(d: &DefeasibleTheory) -> CheckReport {
    let t = Trial::new(d);
    let exts: Vec<AtomSet> = to_default_theory(d).extensions().into_iter().collect();
    t.default_agreement(&exts)
}

/// Stable models of `p` against the extensions of `df(p)`, using the
/// brute-force enumerator when it is in range and the search otherwise.
pub fn check_df_correspondence(p: &GroundProgram) -> CheckReport {
    let dg = program_digest(p);
    let (models, how) = match brute_force_stable_models(p) {
        Some(m) => (m, None),
        None => (stable_models(p, None), Some("brute force out of range; compared with the search".to_string())),
    };
    let exts: Vec<AtomSet> = df(p).extensions().into_iter().collect();
    if models != exts {
        let w = first_difference(&models, &exts);
        return CheckReport::new("df_correspondence", &dg, Verdict::Fail, Some(format!("stable vs extensions: {w}")));
    }
    CheckReport::new("df_correspondence", &dg, Verdict::Pass, how)
}

/// The stable-model search against the brute-force enumerator.
pub fn check_stable_oracle(p: &GroundProgram) -> CheckReport {
    let dg = program_digest(p);
    match brute_force_stable_models(p) {
        None => CheckReport::new("stable_oracle", &dg, Verdict::Vacuous, Some("brute force out of range".into())),
        Some(brute) => {
            let search = stable_models(p, None);
            let failure = (brute != search).then(|| format!("search vs brute force: {}", first_difference(&search, &brute)));
            CheckReport::from_failure("stable_oracle", &dg, failure)
        }
    }
}

/// `extensions` against `is_extension`: every extension passes the check,
/// has a witnessing process, and the brute-force candidates passing the
/// check are exactly the extensions.
pub fn check_extension_oracle(t: &DefaultTheoryA, dg: &str) -> CheckReport {
    let exts = t.extensions();
    let failure = if let Some(e) = exts.iter().find(|e| !t.is_extension(e)) {
        Some(format!("{} found by the search fails the closure check", show(e)))
    } else if t.extension_processes().len() != exts.len() {
        Some("an extension has no closed successful process".into())
    } else {
        None
    };
    if failure.is_some() {
        return CheckReport::from_failure("extension_oracle", dg, failure);
    }
    match t.brute_force_extensions() {
        None => CheckReport::new("extension_oracle", dg, Verdict::Vacuous, Some("brute force out of range".into())),
        Some(brute) => {
            let a: Vec<AtomSet> = exts.into_iter().collect();
            let b: Vec<AtomSet> = brute.into_iter().collect();
            let failure = (a != b).then(|| format!("search vs brute force: {}", first_difference(&a, &b)));
            CheckReport::from_failure("extension_oracle", dg, failure)
        }
    }
}

/// Every check on one theory, in a fixed order.
pub fn run_checks(d: &DefeasibleTheory) -> Vec<CheckReport> {
    let t = Trial::new(d);
    let trace = kunen_trace(&t.program);
    let td = to_default_theory(d);
    let t_exts: Vec<AtomSet> = td.extensions().into_iter().collect();
    vec![
        t.coherence(),
        t.butd(),
        t.graph_lemmata(),
        t.stable_embedding(),
        t.kunen_embedding(trace.last().unwrap()),
        check_df_correspondence(&t.program),
        check_stable_oracle(&t.program),
        check_extension_oracle(&td, &t.digest),
        check_extension_oracle(&df(&t.program), &program_digest(&t.program)),
        t.extension_existence(&t_exts),
        t.engine_bounds(&trace),
        t.default_agreement(&t_exts),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub theory_dfl: String,
    pub mode: GenMode,
    pub decisive: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
}

impl Tally {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Vacuous => self.vacuous += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub decisive_mode_trials: usize,
    pub total: Tally,
    pub by_check: BTreeMap<&'static str, Tally>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub config: GenConfig,
    pub trials: Vec<TrialReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = (&TrialReport, &CheckReport)> {
        self.trials
            .iter()
            .flat_map(|t| t.checks.iter().map(move |c| (t, c)))
            .filter(|(_, c)| c.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// The generator config of trial `i`. With `cfg.mode == Any`, every third
/// trial is decisive.
pub fn trial_config(cfg: &GenConfig, i: usize) -> GenConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(i as u64);
    let mode = match cfg.mode {
        GenMode::Decisive => GenMode::Decisive,
        GenMode::Any if i % 3 == 2 => GenMode::Decisive,
        GenMode::Any => GenMode::Any,
    };
    GenConfig {
        mode,
        seed: rng.next_u64(),
        ..cfg.clone()
    }
}

/// Generates `trials` theories and runs every check on each. Trials run in
/// parallel; the report keeps trial order.
pub fn run_suite(cfg: &GenConfig, trials: usize) -> SuiteReport {
    let reports: Vec<TrialReport> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let tc = trial_config(cfg, i);
            let d = gen_theory(&tc);
            TrialReport {
                theory_dfl: render_theory(&d),
                mode: tc.mode,
                decisive: is_decisive(&d),
                checks: run_checks(&d),
            }
        })
        .collect();
    let mut summary = Summary {
        trials,
        ..Summary::default()
    };
    for t in &reports {
        summary.decisive_mode_trials += (t.mode == GenMode::Decisive) as usize;
        for c in &t.checks {
            summary.total.add(c.verdict);
            summary.by_check.entry(c.name).or_default().add(c.verdict);
        }
    }
    SuiteReport {
        seed: cfg.seed,
        config: cfg.clone(),
        trials: reports,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_program, parse_theory};

    fn th(s: &str) -> DefeasibleTheory {
        parse_theory(s).unwrap()
    }

    #[test]
    fn generator_is_deterministic() {
        let cfg = GenConfig::default();
        assert_eq!(gen_theory(&cfg), gen_theory(&cfg));
        let d = gen_theory(&cfg);
        assert_eq!(d.rules.len(), 8);
        assert!(d.is_valid());
        assert!(d.atoms().iter().all(|a| a.len() == 1 && a.as_str() < "f"));
        for seed in 0..50 {
            let cfg = GenConfig {
                mode: GenMode::Decisive,
                seed,
                ..GenConfig::default()
            };
            let d = gen_theory(&cfg);
            assert!(is_decisive(&d), "seed {seed}");
            assert!(d.is_valid());
        }
    }

    #[test]
    fn golden_checks() {
        let d2 = th("r1: p => p.\nr2: => ~p.\nr2 > r1.");
        assert_eq!(check_coherence(&d2).verdict, Verdict::Pass);
        assert_eq!(check_butd(&d2).verdict, Verdict::Pass);
        assert_eq!(check_kunen_embedding(&d2).verdict, Verdict::Pass);
        assert_eq!(check_graph_lemmata(&d2).verdict, Verdict::Pass);

        let d1 = th("r1: p => p.");
        assert_eq!(check_graph_lemmata(&d1).verdict, Verdict::Pass);
        assert_eq!(check_kunen_embedding(&d1).verdict, Verdict::Pass);

        let d3 = th("r1: => p.\nr2: p => q.\nr3: q => ~p.");
        let r = check_stable_embedding(&d3);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witness.as_deref(), Some("no stable model"));

        let d5 = th("r1: p => p.\nr2: p => q.\nr3: => ~q.");
        let r = check_stable_embedding(&d5);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.witness.unwrap().contains("defeasibly(neg_q) in every stable model without +∂~q"));
    }

    #[test]
    fn df_on_small_programs() {
        for (src, n) in [("a :- not b.\nb :- not a.", 2), ("p :- not p.", 0)] {
            let p = parse_program(src).unwrap();
            assert_eq!(check_df_correspondence(&p).verdict, Verdict::Pass);
            assert_eq!(df(&p).extensions().len(), n);
        }
        let d4 = translate(&th("r1: p -> p."));
        assert_eq!(check_df_correspondence(&d4).verdict, Verdict::Pass);
        assert_eq!(df(&d4).extensions().len(), 1);
    }

    #[test]
    fn small_suite() {
        let r = run_suite(&GenConfig::default(), 0);
        assert_eq!(r.summary.total, Tally::default());
        let r = run_suite(&GenConfig::default(), 12);
        assert_eq!(r.summary.decisive_mode_trials, 4);
        assert_eq!(r.failures().count(), 0, "{:?}", r.failures().next());
        assert_eq!(r.to_json(), run_suite(&GenConfig::default(), 12).to_json());
    }
}
