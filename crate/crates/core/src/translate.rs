//! Translation of a defeasible theory into a ground meta-program and into
//! the corresponding default theory.
//!
//! Rule bodies are expanded into individual `definitely`/`defeasibly` body
//! atoms, and the classifier predicates `supportive_rule`/`rule` are
//! evaluated at grounding time. Clauses are instantiated only where the
//! rule variable `R` is a supportive rule for `X` and the attacker `S` is a
//! rule for `∼X`.

use thiserror::Error;

use crate::defaults::{DefaultA, DefaultTheoryA};
use crate::program::{AtomTerm, Clause, GroundProgram};
use crate::theory::{is_identifier, DefeasibleTheory, Literal, Rule, RuleKind, RuleSelection, RESERVED_PREFIX};

pub fn encode_literal(l: &Literal) -> String {
    if l.is_positive() {
        l.atom().to_string()
    } else {
        format!("{RESERVED_PREFIX}{}", l.atom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("`{0}` does not encode a literal")]
pub struct DecodeError(pub String);

pub fn decode_atom(c: &str) -> Result<Literal, DecodeError> {
    let (atom, positive) = match c.strip_prefix(RESERVED_PREFIX) {
        Some(rest) => (rest, false),
        None => (c, true),
    };
    if !is_identifier(atom) || atom.starts_with(RESERVED_PREFIX) {
        return Err(DecodeError(c.to_string()));
    }
    Ok(Literal::new(atom, positive))
}

fn lit_atom(pred: &str, l: &Literal) -> AtomTerm {
    AtomTerm::new(pred, [encode_literal(l)])
}

pub fn definitely(l: &Literal) -> AtomTerm {
    lit_atom("definitely", l)
}

pub fn defeasibly(l: &Literal) -> AtomTerm {
    lit_atom("defeasibly", l)
}

pub fn overruled(rule: &str, l: &Literal) -> AtomTerm {
    AtomTerm::new("overruled", [rule.to_string(), encode_literal(l)])
}

pub fn defeated(rule: &str, l: &Literal) -> AtomTerm {
    AtomTerm::new("defeated", [rule.to_string(), encode_literal(l)])
}

fn rule_atom(pred: &str, r: &Rule) -> AtomTerm {
    AtomTerm::new(pred, [r.label.clone(), encode_literal(&r.head)])
}

fn kind_predicate(k: RuleKind) -> &'static str {
    match k {
        RuleKind::Strict => "strict",
        RuleKind::Defeasible => "defeasible",
        RuleKind::Defeater => "defeater",
    }
}

/// The meta-predicates whose atoms mirror provability.
pub const CONCLUSION_PREDICATES: [&str; 4] = ["definitely", "defeasibly", "overruled", "defeated"];

/// Base facts: `fact`, `strict`/`defeasible`/`defeater` and `sup`.
pub fn base_facts(d: &DefeasibleTheory) -> Vec<AtomTerm> {
    let mut out: Vec<AtomTerm> = d.facts.iter().map(|l| lit_atom("fact", l)).collect();
    out.extend(d.rules.iter().map(|r| rule_atom(kind_predicate(r.kind), r)));
    out.extend(d.sup.pairs().map(|(a, b)| AtomTerm::new("sup", [a, b])));
    out
}

/// One instance of each clause schema, as positive body, negative body
/// and head. Shared by the program and the default theory.
struct Instance {
    schema: usize,
    head: AtomTerm,
    pos: Vec<AtomTerm>,
    classifier: Option<AtomTerm>,
    neg: Vec<AtomTerm>,
}

fn instances(d: &DefeasibleTheory) -> Vec<Instance> {
    let mut out = Vec::new();
    for l in d.signature() {
        out.push(Instance {
            schema: 1,
            head: definitely(&l),
            pos: vec![lit_atom("fact", &l)],
            classifier: None,
            neg: vec![],
        });
        out.push(Instance {
            schema: 3,
            head: defeasibly(&l),
            pos: vec![definitely(&l)],
            classifier: None,
            neg: vec![],
        });
    }
    for r in &d.rules {
        let x = &r.head;
        let nx = x.complement();
        if r.kind == RuleKind::Strict {
            out.push(Instance {
                schema: 2,
                head: definitely(x),
                pos: r.antecedent.iter().map(definitely).collect(),
                classifier: Some(rule_atom("strict", r)),
                neg: vec![],
            });
        }
        if !r.kind.is_supportive() {
            continue;
        }
        out.push(Instance {
            schema: 4,
            head: defeasibly(x),
            pos: r.antecedent.iter().map(defeasibly).collect(),
            classifier: Some(rule_atom("supportive_rule", r)),
            neg: vec![definitely(&nx), overruled(&r.label, x)],
        });
        for s in d.rules_for(&nx, RuleSelection::All) {
            out.push(Instance {
                schema: 5,
                head: overruled(&r.label, x),
                pos: s.antecedent.iter().map(defeasibly).collect(),
                classifier: Some(rule_atom("rule", s)),
                neg: vec![defeated(&s.label, &nx)],
            });
        }
        for (t, s) in d.sup.pairs() {
            if t != r.label {
                continue;
            }
            let mut pos = vec![AtomTerm::new("sup", [t, s])];
            pos.extend(r.antecedent.iter().map(defeasibly));
            out.push(Instance {
                schema: 6,
                head: defeated(s, &nx),
                pos,
                classifier: Some(rule_atom("supportive_rule", r)),
                neg: vec![],
            });
        }
    }
    out
}

/// The ground meta-program: base facts, classifier facts, then the
/// `definitely`/`defeasibly` clauses per literal and the rule clauses in
/// rule order.
pub fn translate(d: &DefeasibleTheory) -> GroundProgram {
    let mut p = GroundProgram::default();
    for a in base_facts(d) {
        p.push(Clause::fact(a));
    }
    for r in d.rules.iter().filter(|r| r.kind.is_supportive()) {
        p.push(Clause::fact(rule_atom("supportive_rule", r)));
    }
    for r in &d.rules {
        p.push(Clause::fact(rule_atom("rule", r)));
    }
    for i in instances(d) {
        p.push(Clause::new(i.head, i.pos, i.neg));
    }
    p
}

/// The default theory `T(D)`: `W` holds the base facts; the defaults are
/// the instances of d1–d6 at the same bindings as [`translate`], with the
/// classifier atoms kept as prerequisites, plus d7–d10 deriving them.
pub fn to_default_theory(d: &DefeasibleTheory) -> DefaultTheoryA {
    let mut defaults = Vec::new();
    for i in instances(d) {
        let mut pre = i.pos;
        pre.extend(i.classifier);
        defaults.push(DefaultA::new(pre, i.neg, i.head).labelled(format!("d{}", i.schema)));
    }
    for r in &d.rules {
        let (pre, schema) = match r.kind {
            RuleKind::Strict => ("strict", 7),
            RuleKind::Defeasible => ("defeasible", 8),
            RuleKind::Defeater => ("defeater", 10),
        };
        let cons = if r.kind.is_supportive() { "supportive_rule" } else { "rule" };
        defaults.push(DefaultA::new([rule_atom(pre, r)], [], rule_atom(cons, r)).labelled(format!("d{schema}")));
        if r.kind.is_supportive() {
            defaults.push(
                DefaultA::new([rule_atom("supportive_rule", r)], [], rule_atom("rule", r)).labelled("d9"),
            );
        }
    }
    DefaultTheoryA::new(base_facts(d), defaults)
}

/// Keeps the atoms of the four conclusion predicates.
pub fn project(atoms: &crate::semantics::AtomSet) -> crate::semantics::AtomSet {
    atoms
        .iter()
        .filter(|a| CONCLUSION_PREDICATES.contains(&a.predicate.as_str()))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_program, parse_theory};

    fn clause(s: &str) -> Clause {
        parse_program(s).unwrap().clauses.remove(0)
    }

    #[test]
    fn encoding() {
        assert_eq!(encode_literal(&Literal::pos("p")), "p");
        assert_eq!(encode_literal(&Literal::neg("p")), "neg_p");
        let q = Literal::neg("q");
        assert_eq!(decode_atom(&encode_literal(&q)).unwrap(), q);
        assert!(decode_atom("neg_neg_p").is_err());
        assert!(decode_atom("Bad").is_err());
    }

    #[test]
    fn d1_clauses() {
        let d = parse_theory("r1: p => p.").unwrap();
        let p = translate(&d);
        assert!(p.contains(&clause(
            "defeasibly(p) :- not definitely(neg_p), defeasibly(p), not overruled(r1, p)."
        )));
        assert!(p.contains(&clause("defeasible(r1, p).")));
        assert!(p.contains(&clause("supportive_rule(r1, p).")));
        assert!(!p.clauses.iter().any(|c| c.head.predicate == "overruled"));
        let t = to_default_theory(&d);
        assert!(!t.defaults.iter().any(|x| x.label.as_deref() == Some("d5")));
    }

    #[test]
    fn d2_defeated_clause() {
        let d = parse_theory("r1: p => p.\nr2: => ~p.\nr2 > r1.").unwrap();
        let p = translate(&d);
        assert!(p.contains(&clause("defeated(r1, p) :- sup(r2, r1).")));
        assert!(p.contains(&clause("sup(r2, r1).")));
        assert!(p.contains(&clause("overruled(r1, p) :- not defeated(r2, neg_p).")));
        assert!(p.contains(&clause("overruled(r2, neg_p) :- defeasibly(p), not defeated(r1, p).")));
    }

    #[test]
    fn fact_clauses() {
        let d = parse_theory("fact p.").unwrap();
        let p = translate(&d);
        assert!(p.contains(&clause("fact(p).")));
        assert!(p.contains(&clause("definitely(p) :- fact(p).")));
        let t = to_default_theory(&d);
        assert!(t.w.contains(&AtomTerm::new("fact", ["p"])));
        let d1 = t
            .defaults
            .iter()
            .find(|x| x.cons == AtomTerm::new("definitely", ["p"]))
            .unwrap();
        assert_eq!(d1.label.as_deref(), Some("d1"));
        assert!(d1.just_neg.is_empty());
    }

    #[test]
    fn instance_counts() {
        let d = parse_theory("r1: => p.\nr2: p => q.\nr3: q ~> ~p.\nr4: -> ~q.\nr1 > r3.").unwrap();
        let p = translate(&d);
        let count = |pred: &str| p.clauses.iter().filter(|c| !c.pos_body.is_empty() || !c.neg_body.is_empty()).filter(|c| c.head.predicate == pred).count();
        // c4 for r1, r2, r4; c3 for each of four literals.
        assert_eq!(count("defeasibly"), 3 + 4);
        // r1 vs r3, r2 vs r4, r4 vs r2.
        assert_eq!(count("overruled"), 3);
        assert_eq!(count("defeated"), 1);
        let t = to_default_theory(&d);
        assert_eq!(t.defaults.iter().filter(|x| x.label.as_deref() == Some("d9")).count(), 3);
        assert_eq!(t.defaults.iter().filter(|x| x.label.as_deref() == Some("d10")).count(), 1);
    }
}
