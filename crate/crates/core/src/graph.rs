//! The atom dependency graph, decisiveness, and unknowable literals.
//!
//! Nodes are literal pairs `{q, ~q}`, keyed by atom. There is an arc from
//! the head's pair to each antecedent's pair for every rule of the theory,
//! whatever its kind.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;

use crate::engine::fixpoint;
use crate::theory::{DefeasibleTheory, Extension4, Literal};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DepGraph {
    pub nodes: BTreeSet<String>,
    pub arcs: BTreeSet<(String, String)>,
}

impl DepGraph {
    pub fn successors<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.arcs
            .iter()
            .filter(move |(from, _)| from == node)
            .map(|(_, to)| to.as_str())
    }

    pub fn out_degree(&self, node: &str) -> usize {
        self.successors(node).count()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Some directed cycle, as a node sequence; self-loops count.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (a, b) in &self.arcs {
            succ.entry(a).or_default().push(b);
        }
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut marks: BTreeMap<&str, Mark> = BTreeMap::new();
        for start in &self.nodes {
            if marks.contains_key(start.as_str()) {
                continue;
            }
            // Iterative DFS: (node, next successor index).
            let mut stack: Vec<(&str, usize)> = vec![(start, 0)];
            marks.insert(start, Mark::Open);
            while let Some(&mut (n, ref mut i)) = stack.last_mut() {
                let next = succ.get(n).and_then(|v| v.get(*i)).copied();
                *i += 1;
                match next {
                    Some(m) => match marks.get(m) {
                        Some(Mark::Open) => {
                            let from = stack.iter().position(|(x, _)| *x == m).unwrap();
                            return Some(stack[from..].iter().map(|(x, _)| x.to_string()).collect());
                        }
                        Some(Mark::Done) => {}
                        None => {
                            marks.insert(m, Mark::Open);
                            stack.push((m, 0));
                        }
                    },
                    None => {
                        marks.insert(n, Mark::Done);
                        stack.pop();
                    }
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// The subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<String>) -> DepGraph {
        DepGraph {
            nodes: self.nodes.intersection(keep).cloned().collect(),
            arcs: self
                .arcs
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .cloned()
                .collect(),
        }
    }

    /// Graphviz rendering; nodes are labelled by atom.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for n in &self.nodes {
            let _ = writeln!(out, "  \"{n}\";");
        }
        for (a, b) in &self.arcs {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}

pub fn dependency_graph(d: &DefeasibleTheory) -> DepGraph {
    DepGraph {
        nodes: d.atoms(),
        arcs: d
            .rules
            .iter()
            .flat_map(|r| {
                r.antecedent
                    .iter()
                    .map(move |a| (r.head.atom().to_string(), a.atom().to_string()))
            })
            .collect(),
    }
}

pub fn is_decisive(d: &DefeasibleTheory) -> bool {
    dependency_graph(d).is_acyclic()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Unknowable {
    /// Neither `+Δ` nor `−Δ`.
    pub strict: BTreeSet<Literal>,
    /// Neither `+∂` nor `−∂`.
    pub defeasible: BTreeSet<Literal>,
}

impl Unknowable {
    pub fn is_empty(&self) -> bool {
        self.strict.is_empty() && self.defeasible.is_empty()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.strict
            .iter()
            .chain(&self.defeasible)
            .map(|l| l.atom().to_string())
            .collect()
    }
}

/// Literals of the signature left undecided by `e`, the fixpoint of `d`.
pub fn unknowable(d: &DefeasibleTheory, e: &Extension4) -> Unknowable {
    let mut u = Unknowable::default();
    for l in d.signature() {
        if !e.plus_delta.contains(&l) && !e.minus_delta.contains(&l) {
            u.strict.insert(l.clone());
        }
        if !e.plus_partial.contains(&l) && !e.minus_partial.contains(&l) {
            u.defeasible.insert(l);
        }
    }
    u
}

/// The dependency graph restricted to pairs holding an unknowable literal.
pub fn unknowable_subgraph(d: &DefeasibleTheory, e: &Extension4) -> DepGraph {
    dependency_graph(d).induced(&unknowable(d, e).atoms())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralStatus {
    pub literal: Literal,
    pub delta_decided: bool,
    pub partial_decided: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub literals: Vec<LiteralStatus>,
    pub complete: bool,
    pub decisive: bool,
}

pub fn completeness_report(d: &DefeasibleTheory) -> CompletenessReport {
    let (e, _) = fixpoint(d);
    completeness_from(d, &e)
}

pub fn completeness_from(d: &DefeasibleTheory, e: &Extension4) -> CompletenessReport {
    let literals: Vec<LiteralStatus> = d
        .signature()
        .into_iter()
        .map(|l| LiteralStatus {
            delta_decided: e.plus_delta.contains(&l) || e.minus_delta.contains(&l),
            partial_decided: e.plus_partial.contains(&l) || e.minus_partial.contains(&l),
            literal: l,
        })
        .collect();
    CompletenessReport {
        complete: literals.iter().all(|s| s.delta_decided && s.partial_decided),
        decisive: is_decisive(d),
        literals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::Rule;

    fn lit(s: &str) -> Literal {
        match s.strip_prefix('~') {
            Some(a) => Literal::neg(a),
            None => Literal::pos(s),
        }
    }
    fn arc(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }
    fn d1() -> DefeasibleTheory {
        DefeasibleTheory::new().with_rule(Rule::defeasible("r1", [lit("p")], lit("p")))
    }
    fn d2() -> DefeasibleTheory {
        d1().with_rule(Rule::defeasible("r2", [], lit("~p"))).with_sup("r2", "r1")
    }
    fn tweety() -> DefeasibleTheory {
        DefeasibleTheory::new()
            .with_fact(lit("emu"))
            .with_rule(Rule::strict("r1", [lit("emu")], lit("bird")))
            .with_rule(Rule::defeasible("r2", [lit("bird")], lit("flies")))
    }

    #[test]
    fn graphs() {
        let g = dependency_graph(&d1());
        assert_eq!(g.nodes, BTreeSet::from(["p".to_string()]));
        assert_eq!(g.arcs, BTreeSet::from([arc("p", "p")]));

        let d3 = DefeasibleTheory::new()
            .with_rule(Rule::defeasible("r1", [], lit("p")))
            .with_rule(Rule::defeasible("r2", [lit("p")], lit("q")))
            .with_rule(Rule::defeasible("r3", [lit("q")], lit("~p")));
        assert_eq!(
            dependency_graph(&d3).arcs,
            BTreeSet::from([arc("q", "p"), arc("p", "q")])
        );

        let g = dependency_graph(&tweety());
        assert_eq!(g.arcs, BTreeSet::from([arc("flies", "bird"), arc("bird", "emu")]));
        assert!(g.is_acyclic());
    }

    #[test]
    fn decisiveness() {
        assert!(!is_decisive(&d2()));
        assert!(is_decisive(&tweety()));
        let d4 = DefeasibleTheory::new().with_rule(Rule::strict("r1", [lit("p")], lit("p")));
        assert!(!is_decisive(&d4));
    }

    #[test]
    fn unknowable_sets() {
        let (e, _) = fixpoint(&d1());
        let u = unknowable(&d1(), &e);
        assert!(u.defeasible.contains(&lit("p")));
        // ~p has no rules at all, so −∂~p follows from −Δ~p.
        assert!(!u.defeasible.contains(&lit("~p")));
        // No strict rules: −Δ holds for both literals.
        assert!(u.strict.is_empty());
        let sub = unknowable_subgraph(&d1(), &e);
        assert_eq!(sub.arcs, BTreeSet::from([arc("p", "p")]));

        let (e, _) = fixpoint(&d2());
        assert!(unknowable(&d2(), &e).is_empty());
        assert!(unknowable_subgraph(&d2(), &e).is_empty());

        let df = DefeasibleTheory::new().with_fact(lit("p"));
        assert!(unknowable(&df, &fixpoint(&df).0).is_empty());
    }

    #[test]
    fn d5_subgraph_has_cycle_at_p() {
        let d5 = DefeasibleTheory::new()
            .with_rule(Rule::defeasible("r1", [lit("p")], lit("p")))
            .with_rule(Rule::defeasible("r2", [lit("p")], lit("q")))
            .with_rule(Rule::defeasible("r3", [], lit("~q")));
        let (e, _) = fixpoint(&d5);
        let u = unknowable(&d5, &e);
        assert!(u.defeasible.contains(&lit("~q")));
        let sub = unknowable_subgraph(&d5, &e);
        assert!(!sub.is_empty());
        assert_eq!(sub.find_cycle(), Some(vec!["p".to_string()]));
    }

    #[test]
    fn completeness() {
        assert!(completeness_report(&d2()).complete);
        assert!(!completeness_report(&d1()).complete);
    }

    #[test]
    fn dot_output() {
        let dot = dependency_graph(&tweety()).to_dot("dg");
        assert!(dot.starts_with("digraph dg {"));
        assert!(dot.contains("\"bird\" -> \"emu\";"));
    }
}
