//! Default logic over atoms: defaults `pre : ¬c1, ..., ¬cm / cons` with a
//! conjunctive atomic prerequisite, negated-atom justifications and an
//! atomic consequent. Deductive closure is the identity on atom sets in this
//! fragment, so processes only track the sets `In` and `Out`.

use std::collections::BTreeSet;
use std::fmt::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::parse::{parse_atom, SourceDiagnostic};
use crate::program::{AtomTerm, GroundProgram};
use crate::semantics::{AtomSet, BRUTE_FORCE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DefaultA {
    pub label: Option<String>,
    pub pre: BTreeSet<AtomTerm>,
    /// Each stored atom `c` stands for the justification `¬c`.
    pub just_neg: BTreeSet<AtomTerm>,
    pub cons: AtomTerm,
}

impl DefaultA {
    pub fn new<P, J>(pre: P, just_neg: J, cons: AtomTerm) -> Self
    where
        P: IntoIterator<Item = AtomTerm>,
        J: IntoIterator<Item = AtomTerm>,
    {
        DefaultA {
            label: None,
            pre: pre.into_iter().collect(),
            just_neg: just_neg.into_iter().collect(),
            cons,
        }
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

fn join<'a>(atoms: impl IntoIterator<Item = &'a AtomTerm>, prefix: &str) -> String {
    atoms
        .into_iter()
        .map(|a| format!("{prefix}{a}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for DefaultA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}} => {} : not {{{}}}",
            join(&self.pre, ""),
            self.cons,
            join(&self.just_neg, "")
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DefaultTheoryA {
    pub w: AtomSet,
    pub defaults: Vec<DefaultA>,
}

/// A sequence of applied defaults together with its `In` and `Out` sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Process {
    pub order: Vec<usize>,
    pub in_set: AtomSet,
    pub out_set: AtomSet,
}

impl Process {
    pub fn is_successful(&self) -> bool {
        self.in_set.is_disjoint(&self.out_set)
    }
}

pub fn applicable(d: &DefaultA, in_set: &AtomSet) -> bool {
    d.pre.is_subset(in_set) && d.just_neg.is_disjoint(in_set)
}

impl DefaultTheoryA {
    pub fn new(w: impl IntoIterator<Item = AtomTerm>, defaults: Vec<DefaultA>) -> Self {
        DefaultTheoryA {
            w: w.into_iter().collect(),
            defaults,
        }
    }

    /// Runs `order` as a process; `None` if some default is not applicable
    /// when its turn comes or appears twice.
    pub fn run(&self, order: &[usize]) -> Option<Process> {
        let mut p = Process {
            order: Vec::new(),
            in_set: self.w.clone(),
            out_set: AtomSet::new(),
        };
        for &i in order {
            let d = self.defaults.get(i)?;
            if p.order.contains(&i) || !applicable(d, &p.in_set) {
                return None;
            }
            p.order.push(i);
            p.in_set.insert(d.cons.clone());
            p.out_set.extend(d.just_neg.iter().cloned());
        }
        Some(p)
    }

    /// True iff no default outside `order` is applicable to its `In`.
    pub fn is_closed(&self, p: &Process) -> bool {
        self.defaults
            .iter()
            .enumerate()
            .all(|(i, d)| p.order.contains(&i) || !applicable(d, &p.in_set))
    }

    /// All extensions, each the `In` set of a closed and successful process.
    ///
    /// Depth-first over a process tree. Applicable defaults without
    /// justifications are applied straight away; for the first other
    /// applicable default the search either applies it or commits to never
    /// applying it. A committed default must be inapplicable at the leaf.
    /// Distinct branches differ in some such decision, so no state is
    /// visited twice.
    pub fn extensions(&self) -> BTreeSet<AtomSet> {
        let mut out = BTreeSet::new();
        let n = self.defaults.len();
        self.explore(
            Node {
                in_set: self.w.clone(),
                out_set: AtomSet::new(),
                applied: vec![false; n],
                blocked: vec![false; n],
            },
            &mut out,
        );
        out
    }

    /// One witnessing process per extension, in extension order.
    pub fn extension_processes(&self) -> Vec<Process> {
        self.extensions()
            .into_iter()
            .map(|e| self.process_for(&e).expect("every extension has a process"))
            .collect()
    }

    /// A process generating `e`: defaults applicable to `e` applied in a
    /// greedy order.
    fn process_for(&self, e: &AtomSet) -> Option<Process> {
        let gen: Vec<usize> = (0..self.defaults.len())
            .filter(|&i| {
                let d = &self.defaults[i];
                d.pre.is_subset(e) && d.just_neg.is_disjoint(e)
            })
            .collect();
        let mut order = Vec::new();
        let mut in_set = self.w.clone();
        loop {
            let next = gen
                .iter()
                .copied()
                .find(|i| !order.contains(i) && applicable(&self.defaults[*i], &in_set));
            match next {
                Some(i) => {
                    order.push(i);
                    in_set.insert(self.defaults[i].cons.clone());
                }
                None => break,
            }
        }
        let p = self.run(&order)?;
        (p.in_set == *e && p.is_successful() && self.is_closed(&p)).then_some(p)
    }

    fn explore(&self, mut node: Node, out: &mut BTreeSet<AtomSet>) {
        // Eager phase.
        loop {
            let next = (0..self.defaults.len()).find(|&i| {
                !node.applied[i] && self.defaults[i].just_neg.is_empty() && applicable(&self.defaults[i], &node.in_set)
            });
            match next {
                Some(i) => node.apply(i, &self.defaults[i]),
                None => break,
            }
        }
        if !node.in_set.is_disjoint(&node.out_set) || !self.blocked_can_die(&node) {
            return;
        }
        let choice = (0..self.defaults.len())
            .find(|&i| !node.applied[i] && !node.blocked[i] && applicable(&self.defaults[i], &node.in_set));
        match choice {
            None => {
                let closed = (0..self.defaults.len())
                    .all(|i| node.applied[i] || !applicable(&self.defaults[i], &node.in_set));
                if closed {
                    out.insert(node.in_set);
                }
            }
            Some(i) => {
                let mut take = node.clone();
                take.apply(i, &self.defaults[i]);
                self.explore(take, out);
                node.blocked[i] = true;
                self.explore(node, out);
            }
        }
    }

    /// Every committed default still applicable needs one of its
    /// justification atoms to enter `In` later, through defaults that are
    /// neither committed nor already dead.
    fn blocked_can_die(&self, node: &Node) -> bool {
        let pending: Vec<usize> = (0..self.defaults.len())
            .filter(|&i| node.blocked[i] && applicable(&self.defaults[i], &node.in_set))
            .collect();
        if pending.is_empty() {
            return true;
        }
        let mut reach = node.in_set.clone();
        loop {
            let before = reach.len();
            for (i, d) in self.defaults.iter().enumerate() {
                if !node.blocked[i] && d.just_neg.is_disjoint(&node.in_set) && d.pre.is_subset(&reach) {
                    reach.insert(d.cons.clone());
                }
            }
            if reach.len() == before {
                break;
            }
        }
        pending
            .iter()
            .all(|&i| !self.defaults[i].just_neg.is_disjoint(&reach))
    }

    /// `e` is an extension iff it is the least superset of `W` closed under
    /// the defaults whose justifications are consistent with `e`.
    pub fn is_extension(&self, e: &AtomSet) -> bool {
        self.closure(|d| d.just_neg.is_disjoint(e)) == *e
    }

    /// Least superset of `W` closed under the defaults selected by `keep`,
    /// ignoring their justifications.
    fn closure(&self, keep: impl Fn(&DefaultA) -> bool) -> AtomSet {
        let live: Vec<&DefaultA> = self.defaults.iter().filter(|d| keep(d)).collect();
        let mut s = self.w.clone();
        loop {
            let before = s.len();
            for d in &live {
                if d.pre.is_subset(&s) {
                    s.insert(d.cons.clone());
                }
            }
            if s.len() == before {
                return s;
            }
        }
    }

    /// Test oracle: guesses which justification atoms end up in the
    /// extension and keeps the guesses that reproduce themselves. `None`
    /// when more than [`BRUTE_FORCE_LIMIT`] atoms would need guessing.
    pub fn brute_force_extensions(&self) -> Option<BTreeSet<AtomSet>> {
        let upper = self.closure(|_| true);
        let n: Vec<AtomTerm> = self
            .defaults
            .iter()
            .flat_map(|d| d.just_neg.iter())
            .filter(|a| upper.contains(*a))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if n.len() > BRUTE_FORCE_LIMIT {
            return None;
        }
        let mut out = BTreeSet::new();
        for bits in 0u32..(1u32 << n.len()) {
            let guess: AtomSet = n
                .iter()
                .enumerate()
                .filter(|(k, _)| bits >> k & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect();
            let e = self.closure(|d| d.just_neg.is_disjoint(&guess));
            let agrees = n.iter().all(|a| e.contains(a) == guess.contains(a));
            if agrees && self.is_extension(&e) {
                out.insert(e);
            }
        }
        Some(out)
    }
}

#[derive(Clone)]
struct Node {
    in_set: AtomSet,
    out_set: AtomSet,
    applied: Vec<bool>,
    blocked: Vec<bool>,
}

impl Node {
    fn apply(&mut self, i: usize, d: &DefaultA) {
        self.applied[i] = true;
        self.in_set.insert(d.cons.clone());
        self.out_set.extend(d.just_neg.iter().cloned());
    }
}

/// The default reading of a program: `W = ∅` and one default
/// `b1 ∧ ... ∧ bn : ¬c1, ..., ¬cm / a` per clause.
pub fn df(p: &GroundProgram) -> DefaultTheoryA {
    DefaultTheoryA {
        w: AtomSet::new(),
        defaults: p
            .clauses
            .iter()
            .map(|c| DefaultA::new(c.pos_body.iter().cloned(), c.neg_body.iter().cloned(), c.head.clone()))
            .collect(),
    }
}

/// One entry per line: `w.` for members of `W`, then
/// `[label:] pre ; not j1, not j2 ; cons` for defaults.
pub fn render_default_theory(t: &DefaultTheoryA) -> String {
    let mut out = String::new();
    for a in &t.w {
        let _ = writeln!(out, "{a}.");
    }
    for d in &t.defaults {
        if let Some(l) = &d.label {
            let _ = write!(out, "{l}: ");
        }
        let _ = writeln!(out, "{} ; {} ; {}", join(&d.pre, ""), join(&d.just_neg, "not "), d.cons);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DefaultParseError {
    #[error("{0}")]
    Syntax(SourceDiagnostic),
    #[error("line {line}: justification `{text}` is outside the atomic fragment (expected `not <atom>`)")]
    OutsideFragment { line: usize, text: String },
}

/// Splits on commas that are not inside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

/// Reads the format written by [`render_default_theory`]. `%` starts a
/// comment. Anything other than a negated atom in the justification part
/// is rejected.
pub fn parse_default_theory(text: &str) -> Result<DefaultTheoryA, DefaultParseError> {
    let mut t = DefaultTheoryA::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let code = raw.split('%').next().unwrap_or("").trim();
        if code.is_empty() {
            continue;
        }
        let atom = |s: &str| {
            parse_atom(s).map_err(|d| DefaultParseError::Syntax(SourceDiagnostic { line, ..d }))
        };
        let fields: Vec<&str> = code.split(';').collect();
        match fields.len() {
            1 => {
                let a = code.strip_suffix('.').ok_or_else(|| {
                    DefaultParseError::Syntax(SourceDiagnostic::new(line, code.len() + 1, "expected `.`"))
                })?;
                t.w.insert(atom(a)?);
            }
            3 => {
                let (label, pre) = match fields[0].split_once(':') {
                    Some((l, rest)) => (Some(l.trim().to_string()), rest),
                    _ => (None, fields[0]),
                };
                let mut d = DefaultA::new(
                    split_top(pre).into_iter().map(atom).collect::<Result<Vec<_>, _>>()?,
                    [],
                    atom(fields[2].trim())?,
                );
                for j in split_top(fields[1]) {
                    match j.strip_prefix("not ") {
                        Some(a) => {
                            d.just_neg.insert(atom(a.trim())?);
                        }
                        None => {
                            return Err(DefaultParseError::OutsideFragment {
                                line,
                                text: j.to_string(),
                            })
                        }
                    }
                }
                d.label = label;
                t.defaults.push(d);
            }
            _ => {
                return Err(DefaultParseError::Syntax(SourceDiagnostic::new(
                    line,
                    1,
                    "expected `atom.` or `pre ; justifications ; consequent`",
                )))
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn a(s: &str) -> AtomTerm {
        AtomTerm::prop(s)
    }
    fn set(atoms: &[&str]) -> AtomSet {
        atoms.iter().map(|s| a(s)).collect()
    }

    #[test]
    fn applicability() {
        let d = DefaultA::new([], [a("b")], a("a"));
        assert!(applicable(&d, &set(&[])));
        assert!(!applicable(&d, &set(&["b"])));
        let fp = AtomTerm::new("fact", ["p"]);
        let d1 = DefaultA::new([fp.clone()], [], AtomTerm::new("definitely", ["p"]));
        assert!(applicable(&d1, &[fp].into()));
    }

    #[test]
    fn even_and_odd_loops() {
        let even = df(&parse_program("a :- not b.\nb :- not a.").unwrap());
        let exts = even.extensions();
        assert_eq!(exts, BTreeSet::from([set(&["a"]), set(&["b"])]));
        assert!(even.is_extension(&set(&["a"])));
        assert!(!even.is_extension(&set(&[])));
        assert_eq!(even.brute_force_extensions().unwrap(), exts);

        let odd = df(&parse_program("p :- not p.").unwrap());
        assert!(odd.extensions().is_empty());
        assert!(!odd.is_extension(&set(&[])));
        assert!(!odd.is_extension(&set(&["p"])));
    }

    #[test]
    fn processes() {
        let even = df(&parse_program("a :- not b.\nb :- not a.").unwrap());
        let p = even.run(&[0]).unwrap();
        assert!(p.is_successful() && even.is_closed(&p));
        assert!(even.run(&[0, 1]).is_none());
        let ps = even.extension_processes();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].order, [0]);

        // Applying `a` first makes `b` fail later on.
        let t = DefaultTheoryA::new([], vec![DefaultA::new([], [a("b")], a("a")), DefaultA::new([], [], a("b"))]);
        let p = t.run(&[0, 1]).unwrap();
        assert!(!p.is_successful());
        assert_eq!(t.extensions(), BTreeSet::from([set(&["b"])]));
    }

    #[test]
    fn df_shape() {
        let p = parse_program("a :- not b.\nc.\nd :- c, not a.").unwrap();
        let t = df(&p);
        assert!(t.w.is_empty());
        assert_eq!(t.defaults.len(), p.len());
        assert_eq!(t.defaults[0], DefaultA::new([], [a("b")], a("a")));
        assert_eq!(t.defaults[1], DefaultA::new([], [], a("c")));
    }

    #[test]
    fn render_and_parse() {
        let t = DefaultTheoryA::new(
            [AtomTerm::new("fact", ["p"])],
            vec![
                DefaultA::new([AtomTerm::new("fact", ["p"])], [], AtomTerm::new("definitely", ["p"])).labelled("d1"),
                DefaultA::new([], [AtomTerm::new("overruled", ["r1", "p"]), a("q")], a("z")),
            ],
        );
        let text = render_default_theory(&t);
        assert_eq!(
            text,
            "fact(p).\nd1: fact(p) ;  ; definitely(p)\n ; not overruled(r1, p), not q ; z\n"
        );
        assert_eq!(parse_default_theory(&text).unwrap(), t);
        assert_eq!(t.defaults[1].to_string(), "{} => z : not {overruled(r1, p), q}");
        assert!(matches!(
            parse_default_theory("a ; b ; c"),
            Err(DefaultParseError::OutsideFragment { line: 1, .. })
        ));
    }
}
