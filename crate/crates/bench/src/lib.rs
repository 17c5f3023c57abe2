//! Workloads shared by the benchmarks.

use dlmeta_core::conformance::{gen_theory, GenConfig, GenMode};
use dlmeta_core::DefeasibleTheory;

/// `count` theories over `atoms` atoms with about `2 * atoms` rules.
pub fn theories(atoms: usize, count: usize, mode: GenMode) -> Vec<DefeasibleTheory> {
    (0..count as u64)
        .map(|seed| {
            gen_theory(&GenConfig {
                atoms,
                rules: 2 * atoms,
                mode,
                seed,
                ..GenConfig::default()
            })
        })
        .collect()
}

/// A chain `p0 => p1 => ... => pn` with a competing rule at every link.
pub fn chain(n: usize) -> DefeasibleTheory {
    let mut src = String::from("fact p0.\n");
    for i in 0..n {
        src.push_str(&format!("a{i}: p{i} => p{}.\n", i + 1));
        src.push_str(&format!("b{i}: p{i} => ~p{}.\n", i + 1));
        src.push_str(&format!("a{i} > b{i}.\n"));
    }
    dlmeta_core::parse_theory(&src).expect("chain parses")
}
