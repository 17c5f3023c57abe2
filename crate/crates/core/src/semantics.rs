//! Semantics of ground normal programs: reducts, least models, stable
//! models and the three-valued Kunen iteration.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::program::{AtomTerm, Clause, GroundProgram};

pub type AtomSet = BTreeSet<AtomTerm>;

/// Largest guess set the brute-force stable-model oracle will enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("least models need a definite program; `{0}` has a negative body")]
pub struct NotDefinite(pub String);

/// Drops every clause whose negative body meets `m`, then strips the
/// negative bodies of the rest.
pub fn reduct(p: &GroundProgram, m: &AtomSet) -> GroundProgram {
    p.clauses
        .iter()
        .filter(|c| c.neg_body.is_disjoint(m))
        .map(|c| Clause::new(c.head.clone(), c.pos_body.iter().cloned(), []))
        .collect()
}

pub fn least_model(p: &GroundProgram) -> Result<AtomSet, NotDefinite> {
    if let Some(c) = p.clauses.iter().find(|c| !c.is_definite()) {
        return Err(NotDefinite(c.to_string()));
    }
    let mut m = AtomSet::new();
    loop {
        let before = m.len();
        for c in &p.clauses {
            if !m.contains(&c.head) && c.pos_body.is_subset(&m) {
                m.insert(c.head.clone());
            }
        }
        if m.len() == before {
            return Ok(m);
        }
    }
}

pub fn is_stable(p: &GroundProgram, m: &AtomSet) -> bool {
    least_model(&reduct(p, m)).expect("reducts are definite") == *m
}

/// Classical two-valued satisfaction of every clause.
pub fn is_model(p: &GroundProgram, m: &AtomSet) -> bool {
    p.clauses.iter().all(|c| {
        m.contains(&c.head) || !c.pos_body.is_subset(m) || !c.neg_body.is_disjoint(m)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    F,
    U,
    T,
}

impl Truth {
    pub fn negate(self) -> Truth {
        match self {
            Truth::T => Truth::F,
            Truth::F => Truth::T,
            Truth::U => Truth::U,
        }
    }

    pub fn is_known(self) -> bool {
        self != Truth::U
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::T => "t",
            Truth::F => "f",
            Truth::U => "u",
        })
    }
}

/// A three-valued interpretation, total on the atoms of a program.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interp3 {
    pub values: BTreeMap<AtomTerm, Truth>,
}

impl Interp3 {
    pub fn unknown(atoms: impl IntoIterator<Item = AtomTerm>) -> Self {
        Interp3 {
            values: atoms.into_iter().map(|a| (a, Truth::U)).collect(),
        }
    }

    /// Atoms outside the universe have no clauses, so they are false.
    pub fn get(&self, a: &AtomTerm) -> Truth {
        self.values.get(a).copied().unwrap_or(Truth::F)
    }

    pub fn with_value(&self, v: Truth) -> AtomSet {
        self.values
            .iter()
            .filter(|(_, t)| **t == v)
            .map(|(a, _)| a.clone())
            .collect()
    }

    /// Kleene conjunction over the body of `c`.
    pub fn body(&self, c: &Clause) -> Truth {
        c.pos_body
            .iter()
            .map(|a| self.get(a))
            .chain(c.neg_body.iter().map(|a| self.get(a).negate()))
            .min()
            .unwrap_or(Truth::T)
    }
}

/// One Fitting step: `t` if some body is true, `f` if every body is false
/// (vacuously so for atoms without clauses), `u` otherwise.
pub fn fitting_step(p: &GroundProgram, i: &Interp3) -> Interp3 {
    let mut best: BTreeMap<&AtomTerm, Truth> = BTreeMap::new();
    for c in &p.clauses {
        let v = i.body(c);
        let e = best.entry(&c.head).or_insert(Truth::F);
        *e = (*e).max(v);
    }
    Interp3 {
        values: i
            .values
            .keys()
            .map(|a| (a.clone(), best.get(a).copied().unwrap_or(Truth::F)))
            .collect(),
    }
}

/// `I_0, I_1, ..., I_n` from the all-unknown interpretation, stopping at the
/// first `I_n` equal to `I_{n-1}`. The number of steps is `n`.
pub fn kunen_trace(p: &GroundProgram) -> Vec<Interp3> {
    let mut trace = vec![Interp3::unknown(p.atoms())];
    loop {
        let next = fitting_step(p, trace.last().unwrap());
        let done = next == *trace.last().unwrap();
        trace.push(next);
        if done {
            return trace;
        }
    }
}

pub fn kunen_fixpoint(p: &GroundProgram) -> (Interp3, usize) {
    let mut trace = kunen_trace(p);
    let steps = trace.len() - 1;
    (trace.pop().unwrap(), steps)
}

/// Value of `q` (or of `not q`) at the Kunen fixpoint; `P ⊨_K` holds iff
/// this is `t`.
pub fn kunen_supports(p: &GroundProgram, q: &AtomTerm, negated: bool) -> Truth {
    let v = kunen_fixpoint(p).0.get(q);
    if negated {
        v.negate()
    } else {
        v
    }
}

struct CClause {
    head: usize,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

/// The program over atom indices, for the search procedures.
struct Compiled {
    atoms: Vec<AtomTerm>,
    clauses: Vec<CClause>,
    by_head: Vec<Vec<usize>>,
    watch: Vec<Vec<usize>>,
}

impl Compiled {
    fn new(p: &GroundProgram) -> Self {
        let atoms: Vec<AtomTerm> = p.atoms().into_iter().collect();
        let index: HashMap<&AtomTerm, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let ids = |s: &BTreeSet<AtomTerm>| s.iter().map(|a| index[a]).collect::<Vec<_>>();
        let clauses: Vec<CClause> = p
            .dedup()
            .clauses
            .iter()
            .map(|c| CClause {
                head: index[&c.head],
                pos: ids(&c.pos_body),
                neg: ids(&c.neg_body),
            })
            .collect();
        let mut by_head = vec![Vec::new(); atoms.len()];
        let mut watch = vec![Vec::new(); atoms.len()];
        for (i, c) in clauses.iter().enumerate() {
            by_head[c.head].push(i);
            for &a in &c.pos {
                watch[a].push(i);
            }
        }
        Compiled {
            atoms,
            clauses,
            by_head,
            watch,
        }
    }

    /// Least model of the positive parts of the clauses selected by `keep`.
    fn least_model(&self, keep: impl Fn(&CClause) -> bool) -> Vec<bool> {
        let mut model = vec![false; self.atoms.len()];
        let mut missing: Vec<usize> = self.clauses.iter().map(|c| c.pos.len()).collect();
        let live: Vec<bool> = self.clauses.iter().map(&keep).collect();
        let mut queue = Vec::new();
        for (i, c) in self.clauses.iter().enumerate() {
            if live[i] && missing[i] == 0 && !model[c.head] {
                model[c.head] = true;
                queue.push(c.head);
            }
        }
        while let Some(a) = queue.pop() {
            for &i in &self.watch[a] {
                missing[i] -= 1;
                let h = self.clauses[i].head;
                if live[i] && missing[i] == 0 && !model[h] {
                    model[h] = true;
                    queue.push(h);
                }
            }
        }
        model
    }

    fn is_stable(&self, m: &[bool]) -> bool {
        self.least_model(|c| c.neg.iter().all(|&a| !m[a])) == m
    }

    fn to_set(&self, m: &[bool]) -> AtomSet {
        self.atoms
            .iter()
            .zip(m)
            .filter(|(_, &b)| b)
            .map(|(a, _)| a.clone())
            .collect()
    }

    fn body(&self, c: &CClause, v: &[Truth]) -> Truth {
        c.pos
            .iter()
            .map(|&a| v[a])
            .chain(c.neg.iter().map(|&a| v[a].negate()))
            .min()
            .unwrap_or(Truth::T)
    }

    fn support(&self, a: usize, v: &[Truth]) -> Truth {
        self.by_head[a]
            .iter()
            .map(|&i| self.body(&self.clauses[i], v))
            .max()
            .unwrap_or(Truth::F)
    }

    /// Fitting-style propagation from a partial assignment. Returns false
    /// on a conflict: an atom assigned one value whose clauses force the
    /// other.
    fn propagate(&self, v: &mut [Truth]) -> bool {
        loop {
            let mut changed = false;
            for a in 0..v.len() {
                let s = self.support(a, v);
                match (v[a], s) {
                    (Truth::U, Truth::U) => {}
                    (Truth::U, s) => {
                        v[a] = s;
                        changed = true;
                    }
                    (Truth::T, Truth::F) | (Truth::F, Truth::T) => return false,
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&self, mut v: Vec<Truth>, out: &mut Vec<Vec<bool>>) {
        if !self.propagate(&mut v) {
            return;
        }
        match v.iter().position(|t| *t == Truth::U) {
            None => {
                let m: Vec<bool> = v.iter().map(|t| *t == Truth::T).collect();
                if self.is_stable(&m) {
                    out.push(m);
                }
            }
            Some(a) => {
                let mut inside = v.clone();
                inside[a] = Truth::T;
                self.search(inside, out);
                v[a] = Truth::F;
                self.search(v, out);
            }
        }
    }
}

fn sorted(mut models: Vec<AtomSet>) -> Vec<AtomSet> {
    models.sort_by(|a, b| a.iter().cmp(b.iter()));
    models.dedup();
    models
}

/// All stable models, sorted lexicographically by their sorted atom
/// lists, truncated to `max` when given.
///
/// The search starts from the Kunen fixpoint, branches on the remaining
/// unknown atoms in atom order (in before out), prunes with Fitting-style
/// propagation and confirms each leaf against the reduct.
pub fn stable_models(p: &GroundProgram, max: Option<usize>) -> Vec<AtomSet> {
    let c = Compiled::new(p);
    let (k, _) = kunen_fixpoint(p);
    let start: Vec<Truth> = c.atoms.iter().map(|a| k.get(a)).collect();
    let mut found = Vec::new();
    c.search(start, &mut found);
    let mut models = sorted(found.iter().map(|m| c.to_set(m)).collect());
    if let Some(n) = max {
        models.truncate(n);
    }
    models
}

/// Atoms occurring in some negative body that could be in a stable model
/// at all, i.e. that lie in the least model of the program with every
/// negative body dropped.
fn guess_atoms(c: &Compiled) -> Vec<usize> {
    let upper = c.least_model(|_| true);
    let mut neg: BTreeSet<usize> = BTreeSet::new();
    for cl in &c.clauses {
        neg.extend(cl.neg.iter().copied().filter(|&a| upper[a]));
    }
    neg.into_iter().collect()
}

/// Test oracle: tries every assumption set over the negatively occurring
/// atoms. `None` when there are more than [`BRUTE_FORCE_LIMIT`] of them.
pub fn brute_force_stable_models(p: &GroundProgram) -> Option<Vec<AtomSet>> {
    let c = Compiled::new(p);
    let n = guess_atoms(&c);
    if n.len() > BRUTE_FORCE_LIMIT {
        return None;
    }
    let mut found = Vec::new();
    let mut guess = vec![false; c.atoms.len()];
    for bits in 0u32..(1u32 << n.len()) {
        for (k, &a) in n.iter().enumerate() {
            guess[a] = bits >> k & 1 == 1;
        }
        let m = c.least_model(|cl| cl.neg.iter().all(|&a| !guess[a]));
        if n.iter().all(|&a| m[a] == guess[a]) {
            found.push(c.to_set(&m));
        }
    }
    Some(sorted(found))
}

/// Size of the brute-force guess set for `p`.
pub fn brute_force_width(p: &GroundProgram) -> usize {
    guess_atoms(&Compiled::new(p)).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn prog(s: &str) -> GroundProgram {
        parse_program(s).unwrap()
    }
    fn set(atoms: &[&str]) -> AtomSet {
        atoms.iter().map(|a| AtomTerm::prop(*a)).collect()
    }

    #[test]
    fn reducts() {
        let p = prog("p :- not q.");
        assert_eq!(reduct(&p, &set(&[])), prog("p."));
        assert!(reduct(&p, &set(&["q"])).is_empty());
        let even = prog("a :- not b.\nb :- not a.");
        assert_eq!(reduct(&even, &set(&["a"])), prog("a."));
    }

    #[test]
    fn least_models() {
        assert_eq!(least_model(&prog("a.\nb :- a.")).unwrap(), set(&["a", "b"]));
        assert_eq!(least_model(&GroundProgram::default()).unwrap(), set(&[]));
        assert_eq!(least_model(&prog("p :- p.")).unwrap(), set(&[]));
        assert!(least_model(&prog("p :- not q.")).is_err());
    }

    #[test]
    fn stability() {
        let even = prog("a :- not b.\nb :- not a.");
        assert!(is_stable(&even, &set(&["a"])));
        assert!(!is_stable(&even, &set(&[])));
        assert!(!is_stable(&even, &set(&["a", "b"])));
        let odd = prog("p :- not p.");
        assert!(!is_stable(&odd, &set(&[])));
        assert!(!is_stable(&odd, &set(&["p"])));
        let lp = prog("p :- p.");
        assert!(is_stable(&lp, &set(&[])));
        assert!(!is_stable(&lp, &set(&["p"])));
    }

    #[test]
    fn enumeration() {
        let even = prog("a :- not b.\nb :- not a.");
        assert_eq!(stable_models(&even, None), vec![set(&["a"]), set(&["b"])]);
        assert_eq!(stable_models(&even, Some(1)), vec![set(&["a"])]);
        assert_eq!(brute_force_stable_models(&even).unwrap(), vec![set(&["a"]), set(&["b"])]);
        assert!(stable_models(&prog("p :- not p."), None).is_empty());
        assert_eq!(stable_models(&prog("p :- p."), None), vec![set(&[])]);
        let p = prog("a :- not b.\nb :- not a.\nc :- a.\nd :- not c.");
        assert_eq!(stable_models(&p, None), vec![set(&["a", "c"]), set(&["b", "d"])]);
    }

    #[test]
    fn fitting_examples() {
        let p = prog("a.");
        let i1 = fitting_step(&p, &Interp3::unknown(p.atoms()));
        assert_eq!(i1.get(&AtomTerm::prop("a")), Truth::T);

        let odd = prog("p :- not p.");
        let (k, _) = kunen_fixpoint(&odd);
        assert_eq!(k.get(&AtomTerm::prop("p")), Truth::U);

        let p = prog("a.\nb :- not a.");
        let t = kunen_trace(&p);
        let (a, b) = (AtomTerm::prop("a"), AtomTerm::prop("b"));
        assert_eq!((t[1].get(&a), t[1].get(&b)), (Truth::T, Truth::U));
        assert_eq!((t[2].get(&a), t[2].get(&b)), (Truth::T, Truth::F));
        assert_eq!(kunen_fixpoint(&p).1, 3);
        assert_eq!(kunen_supports(&p, &b, true), Truth::T);
    }
}
