//! Propositional defeasible logic and its embeddings into logic programming.
//!
//! The crate computes defeasible conclusions bottom-up, translates theories
//! into a ground meta-program and a default theory, evaluates those under
//! stable-model, Kunen and default-logic semantics, and cross-checks the
//! correspondences between all of them.

pub mod conformance;
pub mod defaults;
pub mod engine;
pub mod graph;
pub mod parse;
pub mod program;
pub mod semantics;
pub mod theory;
pub mod translate;

pub use engine::{check_derivation, derive, fixpoint, holds, step, Derivation, FixpointTrace, Reasoner};
pub use parse::{parse_program, parse_theory, render_program, render_theory, SourceDiagnostic};
pub use program::{AtomTerm, Clause, GroundProgram};
pub use theory::{
    complement, DefeasibleTheory, Extension4, Literal, Rule, RuleKind, RuleSelection, Superiority, Tag,
    TaggedLiteral,
};
