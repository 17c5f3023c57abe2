//! Ground normal logic programs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

/// A ground atom `pred` or `pred(c1, ..., cn)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomTerm {
    pub predicate: String,
    pub args: Vec<String>,
}

impl AtomTerm {
    pub fn new<I, S>(predicate: impl Into<String>, args: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        AtomTerm {
            predicate: predicate.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }

    /// A propositional atom with no arguments.
    pub fn prop(name: impl Into<String>) -> Self {
        AtomTerm {
            predicate: name.into(),
            args: Vec::new(),
        }
    }
}

impl fmt::Display for AtomTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for AtomTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `head :- pos_body, not neg_body.`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub head: AtomTerm,
    pub pos_body: BTreeSet<AtomTerm>,
    pub neg_body: BTreeSet<AtomTerm>,
}

impl Clause {
    pub fn new<P, N>(head: AtomTerm, pos: P, neg: N) -> Self
    where
        P: IntoIterator<Item = AtomTerm>,
        N: IntoIterator<Item = AtomTerm>,
    {
        Clause {
            head,
            pos_body: pos.into_iter().collect(),
            neg_body: neg.into_iter().collect(),
        }
    }

    pub fn fact(head: AtomTerm) -> Self {
        Self::new(head, [], [])
    }

    pub fn is_definite(&self) -> bool {
        self.neg_body.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &AtomTerm> {
        std::iter::once(&self.head)
            .chain(self.pos_body.iter())
            .chain(self.neg_body.iter())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        let body: Vec<String> = self
            .pos_body
            .iter()
            .map(ToString::to_string)
            .chain(self.neg_body.iter().map(|a| format!("not {a}")))
            .collect();
        if !body.is_empty() {
            write!(f, " :- {}", body.join(", "))?;
        }
        f.write_str(".")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub clauses: Vec<Clause>,
}

impl GroundProgram {
    pub fn new(clauses: Vec<Clause>) -> Self {
        GroundProgram { clauses }
    }

    /// Appends a clause unless an identical one is already present.
    pub fn push(&mut self, c: Clause) {
        if !self.clauses.contains(&c) {
            self.clauses.push(c);
        }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Every atom occurring anywhere in the program.
    pub fn atoms(&self) -> BTreeSet<AtomTerm> {
        self.clauses
            .iter()
            .flat_map(|c| c.atoms().cloned())
            .collect()
    }

    pub fn is_definite(&self) -> bool {
        self.clauses.iter().all(Clause::is_definite)
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.contains(c)
    }

    /// The same program with duplicate clauses removed, first occurrence kept.
    pub fn dedup(&self) -> GroundProgram {
        let mut seen = BTreeSet::new();
        GroundProgram {
            clauses: self
                .clauses
                .iter()
                .filter(|c| seen.insert((*c).clone()))
                .cloned()
                .collect(),
        }
    }
}

impl FromIterator<Clause> for GroundProgram {
    fn from_iter<T: IntoIterator<Item = Clause>>(iter: T) -> Self {
        GroundProgram {
            clauses: iter.into_iter().collect(),
        }
    }
}
