//! Propositional defeasible theories: literals, rules, the superiority
//! relation, conclusions, and validation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

/// Atoms starting with this prefix are reserved for the encoding of
/// negative literals in generated meta-programs.
pub const RESERVED_PREFIX: &str = "neg_";

/// Returns true when `s` matches `[a-z][a-zA-Z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A propositional literal `p` or `~p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    atom: String,
    positive: bool,
}

impl Literal {
    pub fn new(atom: impl Into<String>, positive: bool) -> Self {
        Literal {
            atom: atom.into(),
            positive,
        }
    }

    pub fn pos(atom: impl Into<String>) -> Self {
        Self::new(atom, true)
    }

    pub fn neg(atom: impl Into<String>) -> Self {
        Self::new(atom, false)
    }

    pub fn atom(&self) -> &str {
        &self.atom
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// The complementary literal: `p` becomes `~p` and vice versa.
    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }
}

/// Literals order by atom, positive before negative.
impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.atom
            .cmp(&other.atom)
            .then_with(|| other.positive.cmp(&self.positive))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            f.write_str(&self.atom)
        } else {
            write!(f, "~{}", self.atom)
        }
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Free-function form of [`Literal::complement`].
pub fn complement(l: &Literal) -> Literal {
    l.complement()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Strict,
    Defeasible,
    Defeater,
}

impl RuleKind {
    /// The arrow used in the `.dfl` syntax.
    pub fn arrow(self) -> &'static str {
        match self {
            RuleKind::Strict => "->",
            RuleKind::Defeasible => "=>",
            RuleKind::Defeater => "~>",
        }
    }

    /// Strict and defeasible rules can support their head; defeaters cannot.
    pub fn is_supportive(self) -> bool {
        !matches!(self, RuleKind::Defeater)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub label: String,
    pub kind: RuleKind,
    pub antecedent: BTreeSet<Literal>,
    pub head: Literal,
}

impl Rule {
    pub fn new<I>(label: impl Into<String>, kind: RuleKind, antecedent: I, head: Literal) -> Self
    where
        I: IntoIterator<Item = Literal>,
    {
        Rule {
            label: label.into(),
            kind,
            antecedent: antecedent.into_iter().collect(),
            head,
        }
    }

    pub fn strict<I: IntoIterator<Item = Literal>>(label: &str, body: I, head: Literal) -> Self {
        Self::new(label, RuleKind::Strict, body, head)
    }

    pub fn defeasible<I: IntoIterator<Item = Literal>>(label: &str, body: I, head: Literal) -> Self {
        Self::new(label, RuleKind::Defeasible, body, head)
    }

    pub fn defeater<I: IntoIterator<Item = Literal>>(label: &str, body: I, head: Literal) -> Self {
        Self::new(label, RuleKind::Defeater, body, head)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.label)?;
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {a}")?;
        }
        write!(f, " {} {}", self.kind.arrow(), self.head)
    }
}

/// Ordered `(superior, inferior)` label pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Superiority {
    pairs: BTreeSet<(String, String)>,
}

impl Superiority {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, superior: impl Into<String>, inferior: impl Into<String>) -> bool {
        self.pairs.insert((superior.into(), inferior.into()))
    }

    pub fn contains(&self, superior: &str, inferior: &str) -> bool {
        // BTreeSet<(String, String)> can't be probed with borrowed strs.
        self.pairs
            .iter()
            .any(|(s, i)| s == superior && i == inferior)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(s, i)| (s.as_str(), i.as_str()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Some label that lies on a cycle of the relation, if any.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (s, i) in &self.pairs {
            succ.entry(s).or_default().push(i);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: BTreeMap<&str, u8> = BTreeMap::new();
        let mut stack: Vec<&str> = Vec::new();

        fn visit<'a>(
            n: &'a str,
            succ: &BTreeMap<&'a str, Vec<&'a str>>,
            state: &mut BTreeMap<&'a str, u8>,
            stack: &mut Vec<&'a str>,
        ) -> Option<Vec<String>> {
            state.insert(n, 1);
            stack.push(n);
            for &m in succ.get(n).map(Vec::as_slice).unwrap_or(&[]) {
                match state.get(m).copied().unwrap_or(0) {
                    1 => {
                        let start = stack.iter().position(|&x| x == m).unwrap();
                        return Some(stack[start..].iter().map(|s| s.to_string()).collect());
                    }
                    0 => {
                        if let Some(c) = visit(m, succ, state, stack) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            stack.pop();
            state.insert(n, 2);
            None
        }

        let nodes: Vec<&str> = succ.keys().copied().collect();
        for n in nodes {
            if state.get(n).copied().unwrap_or(0) == 0 {
                if let Some(c) = visit(n, &succ, &mut state, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }
}

/// Which kinds of rule [`DefeasibleTheory::rules_for`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleSelection {
    All,
    Strict,
    StrictOrDefeasible,
}

impl RuleSelection {
    fn admits(self, kind: RuleKind) -> bool {
        match self {
            RuleSelection::All => true,
            RuleSelection::Strict => kind == RuleKind::Strict,
            RuleSelection::StrictOrDefeasible => kind.is_supportive(),
        }
    }
}

/// A theory `(F, R, >)`. Rule order is kept for output but has no meaning.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefeasibleTheory {
    pub facts: BTreeSet<Literal>,
    pub rules: Vec<Rule>,
    pub sup: Superiority,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TheoryDiagnostic {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("superiority cycle through {}", .0.join(" > "))]
    SuperiorityCycle(Vec<String>),
    #[error("dangling label `{0}` in superiority relation")]
    DanglingLabel(String),
    #[error("atom `{0}` uses the reserved prefix `neg_`")]
    ReservedPrefix(String),
    #[error("`{0}` is not a valid identifier")]
    BadIdentifier(String),
}

impl DefeasibleTheory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fact(mut self, l: Literal) -> Self {
        self.facts.insert(l);
        self
    }

    pub fn with_rule(mut self, r: Rule) -> Self {
        self.rules.push(r);
        self
    }

    pub fn with_sup(mut self, superior: &str, inferior: &str) -> Self {
        self.sup.insert(superior, inferior);
        self
    }

    pub fn rule(&self, label: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.label == label)
    }

    /// Rules whose head is `q`, filtered by kind.
    pub fn rules_for<'a>(
        &'a self,
        q: &'a Literal,
        sel: RuleSelection,
    ) -> impl Iterator<Item = &'a Rule> + 'a {
        self.rules
            .iter()
            .filter(move |r| &r.head == q && sel.admits(r.kind))
    }

    pub fn is_superior(&self, superior: &Rule, inferior: &Rule) -> bool {
        self.sup.contains(&superior.label, &inferior.label)
    }

    /// Every literal mentioned by facts, heads and antecedents, closed
    /// under complement.
    pub fn signature(&self) -> BTreeSet<Literal> {
        let mut sig = BTreeSet::new();
        let mentioned = self.facts.iter().chain(
            self.rules
                .iter()
                .flat_map(|r| r.antecedent.iter().chain(std::iter::once(&r.head))),
        );
        for l in mentioned {
            sig.insert(l.clone());
            sig.insert(l.complement());
        }
        sig
    }

    /// Atoms of the signature.
    pub fn atoms(&self) -> BTreeSet<String> {
        self.signature()
            .into_iter()
            .map(|l| l.atom)
            .collect()
    }

    /// Checks every structural invariant; an empty result means valid.
    pub fn validate(&self) -> Vec<TheoryDiagnostic> {
        let mut out = Vec::new();
        let mut labels = BTreeSet::new();
        for r in &self.rules {
            if !is_identifier(&r.label) {
                out.push(TheoryDiagnostic::BadIdentifier(r.label.clone()));
            }
            if !labels.insert(r.label.as_str()) {
                out.push(TheoryDiagnostic::DuplicateLabel(r.label.clone()));
            }
        }
        let mut bad_atoms = BTreeSet::new();
        for l in self.signature() {
            if l.atom.starts_with(RESERVED_PREFIX) {
                if bad_atoms.insert(l.atom.clone()) {
                    out.push(TheoryDiagnostic::ReservedPrefix(l.atom.clone()));
                }
            } else if !is_identifier(&l.atom) && bad_atoms.insert(l.atom.clone()) {
                out.push(TheoryDiagnostic::BadIdentifier(l.atom.clone()));
            }
        }
        let mut dangling = BTreeSet::new();
        for (s, i) in self.sup.pairs() {
            for l in [s, i] {
                if !labels.contains(l) && dangling.insert(l) {
                    out.push(TheoryDiagnostic::DanglingLabel(l.to_string()));
                }
            }
        }
        if let Some(cycle) = self.sup.find_cycle() {
            out.push(TheoryDiagnostic::SuperiorityCycle(cycle));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// The four proof tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    PlusDelta,
    MinusDelta,
    PlusPartial,
    MinusPartial,
}

impl Tag {
    pub const ALL: [Tag; 4] = [
        Tag::PlusDelta,
        Tag::MinusDelta,
        Tag::PlusPartial,
        Tag::MinusPartial,
    ];

    /// Command-line spelling: `+D -D +d -d`.
    pub fn ascii(self) -> &'static str {
        match self {
            Tag::PlusDelta => "+D",
            Tag::MinusDelta => "-D",
            Tag::PlusPartial => "+d",
            Tag::MinusPartial => "-d",
        }
    }

    pub fn from_ascii(s: &str) -> Option<Tag> {
        Tag::ALL.into_iter().find(|t| t.ascii() == s)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::PlusDelta => "+Δ",
            Tag::MinusDelta => "−Δ",
            Tag::PlusPartial => "+∂",
            Tag::MinusPartial => "−∂",
        })
    }
}

impl Serialize for Tag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.ascii())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedLiteral {
    pub tag: Tag,
    pub literal: Literal,
}

impl TaggedLiteral {
    pub fn new(tag: Tag, literal: Literal) -> Self {
        TaggedLiteral { tag, literal }
    }
}

impl fmt::Display for TaggedLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag, self.literal)
    }
}

impl Serialize for TaggedLiteral {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&format_args!("{} {}", self.tag.ascii(), self.literal))
    }
}

/// A 4-tuple of literal sets `(+Δ, −Δ, +∂, −∂)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Extension4 {
    pub plus_delta: BTreeSet<Literal>,
    pub minus_delta: BTreeSet<Literal>,
    pub plus_partial: BTreeSet<Literal>,
    pub minus_partial: BTreeSet<Literal>,
}

impl Extension4 {
    /// The least element `(∅, ∅, ∅, ∅)`.
    pub fn bottom() -> Self {
        Self::default()
    }

    pub fn component(&self, tag: Tag) -> &BTreeSet<Literal> {
        match tag {
            Tag::PlusDelta => &self.plus_delta,
            Tag::MinusDelta => &self.minus_delta,
            Tag::PlusPartial => &self.plus_partial,
            Tag::MinusPartial => &self.minus_partial,
        }
    }

    pub fn component_mut(&mut self, tag: Tag) -> &mut BTreeSet<Literal> {
        match tag {
            Tag::PlusDelta => &mut self.plus_delta,
            Tag::MinusDelta => &mut self.minus_delta,
            Tag::PlusPartial => &mut self.plus_partial,
            Tag::MinusPartial => &mut self.minus_partial,
        }
    }

    pub fn contains(&self, c: &TaggedLiteral) -> bool {
        self.component(c.tag).contains(&c.literal)
    }

    /// Pointwise containment.
    pub fn le(&self, other: &Extension4) -> bool {
        Tag::ALL
            .iter()
            .all(|&t| self.component(t).is_subset(other.component(t)))
    }

    pub fn len(&self) -> usize {
        Tag::ALL.iter().map(|&t| self.component(t).len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All members as tagged literals, tag-major.
    pub fn conclusions(&self) -> impl Iterator<Item = TaggedLiteral> + '_ {
        Tag::ALL.into_iter().flat_map(move |t| {
            self.component(t)
                .iter()
                .map(move |l| TaggedLiteral::new(t, l.clone()))
        })
    }

    /// No literal is both proved and refuted at the same strength.
    pub fn is_coherent(&self) -> bool {
        self.plus_delta.is_disjoint(&self.minus_delta)
            && self.plus_partial.is_disjoint(&self.minus_partial)
    }

    /// `q` and `~q` are both in `+∂` only when both are in `+Δ`.
    pub fn is_relatively_consistent(&self) -> bool {
        self.plus_partial.iter().all(|q| {
            !self.plus_partial.contains(&q.complement())
                || (self.plus_delta.contains(q) && self.plus_delta.contains(&q.complement()))
        })
    }
}
