use std::collections::BTreeSet;

use proptest::prelude::*;

use dlmeta_core::conformance::{gen_theory, GenConfig, GenMode};
use dlmeta_core::defaults::df;
use dlmeta_core::graph::{completeness_report, is_decisive};
use dlmeta_core::semantics::{
    brute_force_stable_models, is_stable, kunen_trace, least_model, reduct, stable_models, AtomSet, Truth,
};
use dlmeta_core::translate::{decode_atom, encode_literal};
use dlmeta_core::*;

fn theory() -> impl Strategy<Value = DefeasibleTheory> {
    (any::<u64>(), 2usize..5, 1usize..8, any::<bool>()).prop_map(|(seed, atoms, rules, decisive)| {
        gen_theory(&GenConfig {
            atoms,
            rules,
            seed,
            mode: if decisive { GenMode::Decisive } else { GenMode::Any },
            ..GenConfig::default()
        })
    })
}

const ATOMS: [&str; 5] = ["a", "b", "c", "d", "e"];

fn clause() -> impl Strategy<Value = Clause> {
    let atom = || (0..ATOMS.len()).prop_map(|i| AtomTerm::prop(ATOMS[i]));
    (atom(), prop::collection::vec(atom(), 0..3), prop::collection::vec(atom(), 0..3))
        .prop_map(|(h, pos, neg)| Clause::new(h, pos, neg))
}

fn program() -> impl Strategy<Value = GroundProgram> {
    prop::collection::vec(clause(), 0..8).prop_map(GroundProgram::new)
}

fn literal() -> impl Strategy<Value = Literal> {
    ("[a-z][a-z0-9_]{0,6}", any::<bool>())
        .prop_filter("reserved prefix", |(a, _)| !a.starts_with("neg_"))
        .prop_map(|(a, pos)| Literal::new(a, pos))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_is_an_involution(l in literal()) {
        prop_assert_eq!(complement(&complement(&l)), l.clone());
        prop_assert_ne!(complement(&l), l.clone());
        prop_assert_eq!(decode_atom(&encode_literal(&l)).unwrap(), l);
    }

    #[test]
    fn rules_for_is_nested(d in theory()) {
        prop_assert!(d.is_valid());
        for q in d.signature() {
            let labels = |sel| d.rules_for(&q, sel).map(|r| r.label.clone()).collect::<BTreeSet<_>>();
            let s = labels(RuleSelection::Strict);
            let sd = labels(RuleSelection::StrictOrDefeasible);
            let all = labels(RuleSelection::All);
            prop_assert!(s.is_subset(&sd) && sd.is_subset(&all));
        }
    }

    #[test]
    fn theory_round_trip(d in theory()) {
        let back = parse_theory(&render_theory(&d)).unwrap();
        prop_assert_eq!(back.facts, d.facts);
        prop_assert_eq!(back.sup, d.sup);
        let sorted = |rs: &[Rule]| { let mut v = rs.to_vec(); v.sort_by(|a, b| a.label.cmp(&b.label)); v };
        prop_assert_eq!(sorted(&back.rules), sorted(&d.rules));
    }

    #[test]
    fn program_round_trip(p in program()) {
        let text = render_program(&p);
        let back = parse_program(&text).unwrap();
        prop_assert_eq!(render_program(&back), text);
        prop_assert_eq!(back.atoms(), p.atoms());
    }

    #[test]
    fn fixpoint_is_coherent_and_derivable(d in theory()) {
        let (e, trace) = fixpoint(&d);
        prop_assert!(e.is_coherent());
        prop_assert_eq!(step(&d, &e), e.clone());
        for w in trace.states.windows(2) {
            prop_assert!(w[0].le(&w[1]));
        }
        let r = Reasoner::new(&d);
        for c in e.conclusions() {
            let der = r.derive(&c).expect("conclusion has a derivation");
            prop_assert_eq!(der.last(), &c);
            prop_assert_eq!(check_derivation(&d, &der.lines), Ok(()));
        }
        for l in d.signature() {
            for tag in [Tag::PlusDelta, Tag::MinusDelta, Tag::PlusPartial, Tag::MinusPartial] {
                let c = TaggedLiteral::new(tag, l.clone());
                prop_assert_eq!(r.holds(&c), e.contains(&c));
            }
        }
    }

    #[test]
    fn decisive_implies_complete(d in theory()) {
        if is_decisive(&d) {
            prop_assert!(completeness_report(&d).complete);
        }
    }

    #[test]
    fn reduct_is_definite(p in program(), m in prop::collection::btree_set(0..ATOMS.len(), 0..5)) {
        let m: AtomSet = m.into_iter().map(|i| AtomTerm::prop(ATOMS[i])).collect();
        let r = reduct(&p, &m);
        prop_assert!(r.is_definite());
        let lm = least_model(&r).unwrap();
        // Adding the least model back as facts changes nothing.
        let mut with_facts = r.clone();
        for a in &lm {
            with_facts.push(Clause::fact(a.clone()));
        }
        prop_assert_eq!(least_model(&with_facts).unwrap(), lm);
    }

    #[test]
    fn kunen_values_persist(p in program()) {
        let trace = kunen_trace(&p);
        for w in trace.windows(2) {
            for a in p.atoms() {
                let before = w[0].get(&a);
                if before != Truth::U {
                    prop_assert_eq!(w[1].get(&a), before);
                }
            }
        }
    }

    #[test]
    fn stable_search_matches_oracle(p in program()) {
        let found = stable_models(&p, None);
        for m in &found {
            prop_assert!(is_stable(&p, m));
        }
        let oracle = brute_force_stable_models(&p).expect("five atoms are in range");
        prop_assert_eq!(&found, &oracle);
        let exts: Vec<AtomSet> = df(&p).extensions().into_iter().collect();
        prop_assert_eq!(exts, oracle);
    }

    #[test]
    fn extensions_match_oracle(p in program()) {
        let t = df(&p);
        let exts = t.extensions();
        for e in &exts {
            prop_assert!(t.is_extension(e));
        }
        prop_assert_eq!(Some(exts.clone()), t.brute_force_extensions());
        let all: Vec<AtomSet> = (0u32..32)
            .map(|bits| (0..5).filter(|i| bits >> i & 1 == 1).map(|i| AtomTerm::prop(ATOMS[i])).collect())
            .collect();
        for e in all {
            prop_assert_eq!(t.is_extension(&e), exts.contains(&e));
        }
    }
}
