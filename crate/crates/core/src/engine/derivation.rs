//! Derivations: sequences of tagged literals where every line follows from
//! the lines before it.
//!
//! The checker here works directly off the theory and the prefix of a
//! derivation. It shares nothing with the fixpoint operator, so the two
//! can be compared against each other.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::theory::{DefeasibleTheory, Literal, Rule, RuleSelection, Tag, TaggedLiteral};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub lines: Vec<TaggedLiteral>,
}

impl Derivation {
    pub fn last(&self) -> &TaggedLiteral {
        self.lines.last().expect("derivations are nonempty")
    }
}

/// Which inference condition licenses a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Justification {
    /// `+Δq` with `q` a fact.
    Fact,
    /// `+Δq` through a strict rule whose body is definitely proved.
    StrictRule { rule: String },
    /// `−Δq`: not a fact and every strict rule for `q` is blocked.
    StrictBlocked,
    /// `+∂q` clause (1): `+Δq` is already proved.
    Definite,
    /// `+∂q` clause (2). `counterattacked` is set when some attacker was
    /// beaten by a superior rule (2.3.2) rather than discarded (2.3.1).
    Supported { rule: String, counterattacked: bool },
    /// `−∂q` (2.1): every supportive rule for `q` has a refuted antecedent.
    SupportBlocked,
    /// `−∂q` (2.2): `+Δ∼q` is proved.
    ComplementDefinite,
    /// `−∂q` (2.3): an applicable attacker is not beaten.
    Overridden { attacker: String },
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Fact => f.write_str("(fact)"),
            Justification::StrictRule { rule } => write!(f, "via strict rule {rule}"),
            Justification::StrictBlocked => f.write_str("(no applicable strict rule)"),
            Justification::Definite => f.write_str("via (1)"),
            Justification::Supported {
                counterattacked: false,
                ..
            } => f.write_str("via (2.3.1)"),
            Justification::Supported {
                counterattacked: true,
                ..
            } => f.write_str("via (2.3.2)"),
            Justification::SupportBlocked => f.write_str("via (2.1)"),
            Justification::ComplementDefinite => f.write_str("via (2.2)"),
            Justification::Overridden { .. } => f.write_str("via (2.3)"),
        }
    }
}

struct Prefix<'a> {
    lines: &'a HashSet<TaggedLiteral>,
}

impl Prefix<'_> {
    fn has(&self, tag: Tag, l: &Literal) -> bool {
        self.lines.contains(&TaggedLiteral::new(tag, l.clone()))
    }

    fn all(&self, tag: Tag, r: &Rule) -> bool {
        r.antecedent.iter().all(|a| self.has(tag, a))
    }

    fn some(&self, tag: Tag, r: &Rule) -> bool {
        r.antecedent.iter().any(|a| self.has(tag, a))
    }
}

/// The condition satisfied by `line` given the earlier lines, if any.
pub fn justify(
    d: &DefeasibleTheory,
    prefix: &HashSet<TaggedLiteral>,
    line: &TaggedLiteral,
) -> Option<Justification> {
    let p = Prefix { lines: prefix };
    let q = &line.literal;
    let nq = q.complement();
    match line.tag {
        Tag::PlusDelta => {
            if d.facts.contains(q) {
                return Some(Justification::Fact);
            }
            d.rules_for(q, RuleSelection::Strict)
                .find(|r| p.all(Tag::PlusDelta, r))
                .map(|r| Justification::StrictRule {
                    rule: r.label.clone(),
                })
        }
        Tag::MinusDelta => {
            let ok = !d.facts.contains(q)
                && d
                    .rules_for(q, RuleSelection::Strict)
                    .all(|r| p.some(Tag::MinusDelta, r));
            ok.then_some(Justification::StrictBlocked)
        }
        Tag::PlusPartial => {
            if p.has(Tag::PlusDelta, q) {
                return Some(Justification::Definite);
            }
            let support = d
                .rules_for(q, RuleSelection::StrictOrDefeasible)
                .find(|r| p.all(Tag::PlusPartial, r))?;
            if !p.has(Tag::MinusDelta, &nq) {
                return None;
            }
            let mut counterattacked = false;
            for s in d.rules_for(&nq, RuleSelection::All) {
                if p.some(Tag::MinusPartial, s) {
                    continue;
                }
                let beaten = d
                    .rules_for(q, RuleSelection::StrictOrDefeasible)
                    .any(|t| p.all(Tag::PlusPartial, t) && d.is_superior(t, s));
                if !beaten {
                    return None;
                }
                counterattacked = true;
            }
            Some(Justification::Supported {
                rule: support.label.clone(),
                counterattacked,
            })
        }
        Tag::MinusPartial => {
            if !p.has(Tag::MinusDelta, q) {
                return None;
            }
            if d.rules_for(q, RuleSelection::StrictOrDefeasible)
                .all(|r| p.some(Tag::MinusPartial, r))
            {
                return Some(Justification::SupportBlocked);
            }
            if p.has(Tag::PlusDelta, &nq) {
                return Some(Justification::ComplementDefinite);
            }
            d.rules_for(&nq, RuleSelection::All)
                .find(|s| {
                    p.all(Tag::PlusPartial, s)
                        && d.rules_for(q, RuleSelection::StrictOrDefeasible)
                            .all(|t| p.some(Tag::MinusPartial, t) || !d.is_superior(t, s))
                })
                .map(|s| Justification::Overridden {
                    attacker: s.label.clone(),
                })
        }
    }
}

/// `Ok` when every line is licensed by the lines strictly before it;
/// otherwise the 1-based index of the first line that is not.
pub fn check_derivation(d: &DefeasibleTheory, lines: &[TaggedLiteral]) -> Result<(), usize> {
    justify_all(d, lines).map(|_| ())
}

/// Like [`check_derivation`] but returns the justification of every line.
pub fn justify_all(d: &DefeasibleTheory, lines: &[TaggedLiteral]) -> Result<Vec<Justification>, usize> {
    let mut prefix = HashSet::new();
    let mut out = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        match justify(d, &prefix, line) {
            Some(j) => out.push(j),
            None => return Err(i + 1),
        }
        prefix.insert(line.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Literal {
        Literal::pos("p")
    }

    fn d2() -> DefeasibleTheory {
        DefeasibleTheory::new()
            .with_rule(Rule::defeasible("r1", [p()], p()))
            .with_rule(Rule::defeasible("r2", [], Literal::neg("p")))
            .with_sup("r2", "r1")
    }

    #[test]
    fn single_fact_line() {
        let d = DefeasibleTheory::new().with_fact(p());
        let lines = [TaggedLiteral::new(Tag::PlusDelta, p())];
        assert_eq!(check_derivation(&d, &lines), Ok(()));
        assert_eq!(justify_all(&d, &lines).unwrap(), [Justification::Fact]);
    }

    #[test]
    fn minus_partial_needs_minus_delta_first() {
        let lines = [TaggedLiteral::new(Tag::MinusPartial, p())];
        assert_eq!(check_derivation(&d2(), &lines), Err(1));
        let lines = [
            TaggedLiteral::new(Tag::MinusDelta, p()),
            TaggedLiteral::new(Tag::MinusPartial, p()),
        ];
        assert_eq!(check_derivation(&d2(), &lines), Ok(()));
        assert_eq!(
            justify_all(&d2(), &lines).unwrap()[1],
            Justification::Overridden {
                attacker: "r2".into()
            }
        );
    }

    #[test]
    fn plus_partial_with_counterattack() {
        let lines = [
            TaggedLiteral::new(Tag::MinusDelta, p()),
            TaggedLiteral::new(Tag::MinusDelta, Literal::neg("p")),
            TaggedLiteral::new(Tag::MinusPartial, p()),
            TaggedLiteral::new(Tag::PlusPartial, Literal::neg("p")),
        ];
        let js = justify_all(&d2(), &lines).unwrap();
        // r1's antecedent p is refuted, so the attack is discarded.
        assert_eq!(js[3].to_string(), "via (2.3.1)");

        let d = DefeasibleTheory::new()
            .with_rule(Rule::defeasible("r1", [], p()))
            .with_rule(Rule::defeasible("r2", [], Literal::neg("p")))
            .with_sup("r1", "r2");
        let lines = [
            TaggedLiteral::new(Tag::MinusDelta, Literal::neg("p")),
            TaggedLiteral::new(Tag::PlusPartial, p()),
        ];
        assert_eq!(justify_all(&d, &lines).unwrap()[1].to_string(), "via (2.3.2)");
    }

    #[test]
    fn unsupported_line_fails() {
        let lines = [
            TaggedLiteral::new(Tag::MinusDelta, p()),
            TaggedLiteral::new(Tag::PlusPartial, p()),
        ];
        assert_eq!(check_derivation(&d2(), &lines), Err(2));
        let d = DefeasibleTheory::new().with_fact(p());
        assert_eq!(
            check_derivation(&d, &[TaggedLiteral::new(Tag::MinusDelta, p())]),
            Err(1)
        );
    }
}
