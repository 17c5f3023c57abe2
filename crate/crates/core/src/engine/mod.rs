//! Bottom-up evaluation of defeasible theories.
//!
//! The operator works on 4-tuples `(+Δ, −Δ, +∂, −∂)` of literal sets and is
//! iterated from `(∅, ∅, ∅, ∅)` until it stops growing. Counterattacking
//! rules `t` range over strict and defeasible rules only; a defeater can
//! attack a conclusion but never defend one.

mod derivation;

use std::collections::HashMap;

use serde::Serialize;

use crate::theory::{DefeasibleTheory, Extension4, Literal, RuleKind, Tag, TaggedLiteral};

pub use derivation::{check_derivation, justify, justify_all, Derivation, Justification};

/// The Kleene sequence from bottom up to and including the limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixpointTrace {
    pub states: Vec<Extension4>,
    /// Number of operator applications, counting the final one that
    /// returned an unchanged state.
    pub iterations: usize,
}

struct CRule {
    kind: RuleKind,
    body: Vec<usize>,
}

/// A theory with literals and rules replaced by dense indices.
pub(crate) struct Compiled {
    lits: Vec<Literal>,
    index: HashMap<Literal, usize>,
    comp: Vec<usize>,
    fact: Vec<bool>,
    rules: Vec<CRule>,
    /// Rule ids by head literal.
    by_head: Vec<Vec<usize>>,
    /// `sup[t]` lists the rules `s` with `t > s`.
    sup: Vec<Vec<usize>>,
}

/// Indexed as `[+Δ, −Δ, +∂, −∂]`.
type State = [Vec<bool>; 4];

const PD: usize = 0;
const MD: usize = 1;
const PP: usize = 2;
const MP: usize = 3;

fn slot(tag: Tag) -> usize {
    match tag {
        Tag::PlusDelta => PD,
        Tag::MinusDelta => MD,
        Tag::PlusPartial => PP,
        Tag::MinusPartial => MP,
    }
}

impl Compiled {
    pub(crate) fn new(d: &DefeasibleTheory) -> Self {
        let lits: Vec<Literal> = d.signature().into_iter().collect();
        let index: HashMap<Literal, usize> =
            lits.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let comp = lits.iter().map(|l| index[&l.complement()]).collect();
        let fact = lits.iter().map(|l| d.facts.contains(l)).collect();
        let mut by_head = vec![Vec::new(); lits.len()];
        let mut label_ix = HashMap::new();
        let rules = d
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| {
                by_head[index[&r.head]].push(i);
                label_ix.insert(r.label.as_str(), i);
                CRule {
                    kind: r.kind,
                    body: r.antecedent.iter().map(|a| index[a]).collect(),
                }
            })
            .collect();
        let mut sup = vec![Vec::new(); d.rules.len()];
        for (s, i) in d.sup.pairs() {
            if let (Some(&s), Some(&i)) = (label_ix.get(s), label_ix.get(i)) {
                sup[s].push(i);
            }
        }
        Compiled {
            lits,
            index,
            comp,
            fact,
            rules,
            by_head,
            sup,
        }
    }

    fn n(&self) -> usize {
        self.lits.len()
    }

    fn bottom(&self) -> State {
        std::array::from_fn(|_| vec![false; self.n()])
    }

    fn rules_with<'a>(
        &'a self,
        q: usize,
        pred: impl Fn(RuleKind) -> bool + 'a,
    ) -> impl Iterator<Item = usize> + 'a {
        self.by_head[q]
            .iter()
            .copied()
            .filter(move |&r| pred(self.rules[r].kind))
    }

    fn strict(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.rules_with(q, |k| k == RuleKind::Strict)
    }

    fn supportive(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.rules_with(q, RuleKind::is_supportive)
    }

    fn any(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.by_head[q].iter().copied()
    }

    fn superior(&self, t: usize, s: usize) -> bool {
        self.sup[t].contains(&s)
    }

    fn body_within(&self, r: usize, set: &[bool]) -> bool {
        self.rules[r].body.iter().all(|&a| set[a])
    }

    fn body_meets(&self, r: usize, set: &[bool]) -> bool {
        self.rules[r].body.iter().any(|&a| set[a])
    }

    /// Some strict rule for `q` whose body is in `+Δ`.
    fn strict_support(&self, q: usize, e: &State) -> Option<usize> {
        self.strict(q).find(|&r| self.body_within(r, &e[PD]))
    }

    fn supportive_applicable(&self, q: usize, e: &State) -> Option<usize> {
        self.supportive(q).find(|&r| self.body_within(r, &e[PP]))
    }

    /// A supportive rule for `q` that is applicable and beats `s`.
    fn counterattack(&self, q: usize, s: usize, e: &State) -> Option<usize> {
        self.supportive(q)
            .find(|&t| self.body_within(t, &e[PP]) && self.superior(t, s))
    }

    fn attack_rebutted(&self, q: usize, s: usize, e: &State) -> bool {
        self.body_meets(s, &e[MP]) || self.counterattack(q, s, e).is_some()
    }

    /// An applicable attacker on `q` that no applicable supporter for `q` beats.
    fn undefeated_attacker(&self, q: usize, e: &State) -> Option<usize> {
        let nq = self.comp[q];
        self.any(nq).find(|&s| {
            self.body_within(s, &e[PP])
                && self
                    .supportive(q)
                    .all(|t| self.body_meets(t, &e[MP]) || !self.superior(t, s))
        })
    }

    fn plus_delta(&self, q: usize, e: &State) -> bool {
        self.fact[q] || self.strict_support(q, e).is_some()
    }

    fn minus_delta(&self, q: usize, e: &State) -> bool {
        e[MD][q] || (!self.fact[q] && self.strict(q).all(|r| self.body_meets(r, &e[MD])))
    }

    fn plus_partial(&self, q: usize, e: &State) -> bool {
        let nq = self.comp[q];
        e[PD][q]
            || (self.supportive_applicable(q, e).is_some()
                && e[MD][nq]
                && self.any(nq).all(|s| self.attack_rebutted(q, s, e)))
    }

    fn all_support_blocked(&self, q: usize, e: &State) -> bool {
        self.supportive(q).all(|r| self.body_meets(r, &e[MP]))
    }

    fn minus_partial(&self, q: usize, e: &State) -> bool {
        e[MD][q]
            && (self.all_support_blocked(q, e)
                || e[PD][self.comp[q]]
                || self.undefeated_attacker(q, e).is_some())
    }

    fn step(&self, e: &State) -> State {
        let n = self.n();
        [
            (0..n).map(|q| self.plus_delta(q, e)).collect(),
            (0..n).map(|q| self.minus_delta(q, e)).collect(),
            (0..n).map(|q| self.plus_partial(q, e)).collect(),
            (0..n).map(|q| self.minus_partial(q, e)).collect(),
        ]
    }

    fn run(&self) -> (Vec<State>, usize) {
        let mut states = vec![self.bottom()];
        let mut iterations = 0;
        loop {
            let next = self.step(states.last().unwrap());
            iterations += 1;
            if &next == states.last().unwrap() {
                return (states, iterations);
            }
            states.push(next);
        }
    }

    fn to_extension(&self, s: &State) -> Extension4 {
        let set = |v: &Vec<bool>| {
            v.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| self.lits[i].clone())
                .collect()
        };
        Extension4 {
            plus_delta: set(&s[PD]),
            minus_delta: set(&s[MD]),
            plus_partial: set(&s[PP]),
            minus_partial: set(&s[MP]),
        }
    }

    fn from_extension(&self, e: &Extension4) -> State {
        std::array::from_fn(|k| {
            let mut v = vec![false; self.n()];
            for l in e.component(Tag::ALL[k]) {
                if let Some(&i) = self.index.get(l) {
                    v[i] = true;
                }
            }
            v
        })
    }
}

/// One application of the operator.
pub fn step(d: &DefeasibleTheory, e: &Extension4) -> Extension4 {
    let c = Compiled::new(d);
    c.to_extension(&c.step(&c.from_extension(e)))
}

/// The limit of the Kleene sequence from bottom, with the sequence itself.
pub fn fixpoint(d: &DefeasibleTheory) -> (Extension4, FixpointTrace) {
    let c = Compiled::new(d);
    let (states, iterations) = c.run();
    let states: Vec<Extension4> = states.iter().map(|s| c.to_extension(s)).collect();
    (
        states.last().unwrap().clone(),
        FixpointTrace { states, iterations },
    )
}

/// Whether the conclusion is in the matching component of the limit.
pub fn holds(d: &DefeasibleTheory, c: &TaggedLiteral) -> bool {
    Reasoner::new(d).holds(c)
}

/// Builds a derivation of `c`, or `None` when `c` is not provable.
pub fn derive(d: &DefeasibleTheory, c: &TaggedLiteral) -> Option<Derivation> {
    Reasoner::new(d).derive(c)
}

/// A theory together with its computed fixpoint, for repeated queries.
pub struct Reasoner<'a> {
    theory: &'a DefeasibleTheory,
    compiled: Compiled,
    states: Vec<State>,
    iterations: usize,
    limit: Extension4,
}

impl<'a> Reasoner<'a> {
    pub fn new(theory: &'a DefeasibleTheory) -> Self {
        let compiled = Compiled::new(theory);
        let (states, iterations) = compiled.run();
        let limit = compiled.to_extension(states.last().unwrap());
        Reasoner {
            theory,
            compiled,
            states,
            iterations,
            limit,
        }
    }

    pub fn theory(&self) -> &DefeasibleTheory {
        self.theory
    }

    pub fn extension(&self) -> &Extension4 {
        &self.limit
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn trace(&self) -> FixpointTrace {
        FixpointTrace {
            states: self
                .states
                .iter()
                .map(|s| self.compiled.to_extension(s))
                .collect(),
            iterations: self.iterations,
        }
    }

    pub fn holds(&self, c: &TaggedLiteral) -> bool {
        self.limit.contains(c)
    }

    /// The first state index containing `c`.
    fn stage(&self, tag: usize, q: usize) -> Option<usize> {
        self.states.iter().position(|s| s[tag][q])
    }

    /// The conclusions a line at stage `n` rests on, all from stage `n - 1`.
    fn premises(&self, tag: usize, q: usize, n: usize) -> Vec<(usize, usize)> {
        let c = &self.compiled;
        let e = &self.states[n - 1];
        let nq = c.comp[q];
        let body = |r: usize, tag: usize| -> Vec<(usize, usize)> {
            c.rules[r].body.iter().map(|&a| (tag, a)).collect()
        };
        let blocker = |r: usize, set: usize| -> (usize, usize) {
            let a = *c.rules[r].body.iter().find(|&&a| e[set][a]).unwrap();
            (set, a)
        };
        match tag {
            PD => {
                if c.fact[q] {
                    vec![]
                } else {
                    body(c.strict_support(q, e).unwrap(), PD)
                }
            }
            MD => c.strict(q).map(|r| blocker(r, MD)).collect(),
            PP => {
                if e[PD][q] {
                    return vec![(PD, q)];
                }
                let r = c.supportive_applicable(q, e).unwrap();
                let mut out = body(r, PP);
                out.push((MD, nq));
                for s in c.any(nq) {
                    if c.body_meets(s, &e[MP]) {
                        out.push(blocker(s, MP));
                    } else {
                        out.extend(body(c.counterattack(q, s, e).unwrap(), PP));
                    }
                }
                out
            }
            _ => {
                let mut out = vec![(MD, q)];
                if c.all_support_blocked(q, e) {
                    out.extend(c.supportive(q).map(|r| blocker(r, MP)));
                } else if e[PD][nq] {
                    out.push((PD, nq));
                } else {
                    let s = c.undefeated_attacker(q, e).unwrap();
                    out.extend(body(s, PP));
                    for t in c.supportive(q) {
                        if c.superior(t, s) {
                            out.push(blocker(t, MP));
                        }
                    }
                }
                out
            }
        }
    }

    fn build(&self, tag: usize, q: usize, out: &mut Vec<(usize, usize)>, seen: &mut Vec<Vec<bool>>) {
        if seen[tag][q] {
            return;
        }
        let n = self.stage(tag, q).expect("only provable conclusions are built");
        for (t, a) in self.premises(tag, q, n) {
            self.build(t, a, out, seen);
        }
        seen[tag][q] = true;
        out.push((tag, q));
    }

    /// Concatenates derivations of every premise, then appends `c`.
    pub fn derive(&self, c: &TaggedLiteral) -> Option<Derivation> {
        if !self.holds(c) {
            return None;
        }
        let q = self.compiled.index[&c.literal];
        let mut out = Vec::new();
        let mut seen = vec![vec![false; self.compiled.n()]; 4];
        self.build(slot(c.tag), q, &mut out, &mut seen);
        Some(Derivation {
            lines: out
                .into_iter()
                .map(|(t, a)| TaggedLiteral::new(Tag::ALL[t], self.compiled.lits[a].clone()))
                .collect(),
        })
    }
}
