//! Independent oracles and algebraic invariants checked against the library.

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rzw_core::k1::{decode, encode, K1Code};
use rzw_core::opca::{builtin, builtin_names};
use rzw_core::reduction::{chain_reaches, normalize, reduce_whnf, whnf_step, Normalization, ReductionStatus};
use rzw_core::rtripos::{app_down, arrow};
use rzw_core::suite::paradox::disjoint_inhabited_selectors;
use rzw_core::terms::{bracket_abstract, parse_term, random_closed, random_term, substitute, Term};

/// Normal-order normalization built only from single head steps: reduce to
/// head-normal form, then recurse into the arguments left to right.
fn naive_normalize(m: &Term, fuel: &mut usize) -> Option<Term> {
    let mut cur = m.clone();
    while let Some(next) = whnf_step(&cur) {
        if *fuel == 0 {
            return None;
        }
        *fuel -= 1;
        cur = next;
    }
    let (head, args) = cur.spine();
    let head = head.clone();
    let mut out = Vec::new();
    for a in args {
        out.push(naive_normalize(a, fuel)?);
    }
    Some(Term::apply_all(head, out))
}

fn term(seed: u64, depth: usize) -> Term {
    random_term(&mut ChaCha8Rng::seed_from_u64(seed), depth, &["x", "y"], &["A", "B"])
}

fn closed(seed: u64, depth: usize) -> Term {
    random_closed(&mut ChaCha8Rng::seed_from_u64(seed), depth)
}

#[test]
fn frozen_head_steps() {
    for (src, expected) in [
        ("k A B", "A"),
        ("w A B", "A B B"),
        ("b A B C", "A (B C)"),
        ("c A B C", "A C B"),
        ("k A B C", "A C"),
    ] {
        let got = whnf_step(&parse_term(src).unwrap()).unwrap();
        assert_eq!(got, parse_term(expected).unwrap(), "{src}");
    }
    assert_eq!(whnf_step(&parse_term("A (k B C)").unwrap()), None);
}

#[test]
fn stack_normalizer_agrees_with_naive_oracle() {
    let mut compared = 0;
    for seed in 0..3000 {
        let m = closed(seed, 5);
        let mut fuel = 2000;
        let naive = naive_normalize(&m, &mut fuel);
        match (naive, normalize(&m, 2000)) {
            (Some(n), Normalization::Normal { term, .. }) => {
                assert_eq!(term, n, "{m}");
                compared += 1;
            }
            (Some(n), other) => panic!("{m}: oracle reached {n}, library gave {other:?}"),
            (None, Normalization::Normal { term, .. }) => panic!("{m}: library reached {term}, oracle ran out"),
            (None, _) => {}
        }
    }
    assert!(compared > 2000, "{compared}");
}

#[test]
fn no_two_point_filter_separates_the_selectors() {
    assert_eq!(disjoint_inhabited_selectors(3), 0);
}

#[test]
fn arrow_and_application_preserve_downsets() {
    for name in builtin_names() {
        let a = builtin(name).unwrap();
        let ds = a.downsets();
        for &u in &ds {
            for &v in &ds {
                assert!(a.is_downset(arrow(&a, u, v)), "{name}");
                if let Ok(uv) = app_down(&a, u, v) {
                    assert!(a.is_downset(uv), "{name}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn bracket_abstraction_simulates_beta(seed in any::<u64>(), nseed in any::<u64>()) {
        let m = term(seed, 6);
        let n = closed(nseed, 3);
        let abs = bracket_abstract("x", &m).unwrap();
        prop_assert!(!abs.occurs_free("x"));
        prop_assert!(chain_reaches(&Term::app(abs, n.clone()), &substitute(&m, "x", &n), 10_000));
    }

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let m = term(seed, 6);
        prop_assert_eq!(parse_term(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn reduction_is_deterministic(seed in any::<u64>()) {
        let m = closed(seed, 6);
        prop_assert_eq!(normalize(&m, 500), normalize(&m, 500));
        prop_assert_eq!(reduce_whnf(&m, 500), reduce_whnf(&m, 500));
    }

    #[test]
    fn more_fuel_never_changes_an_answer(seed in any::<u64>()) {
        let m = closed(seed, 6);
        let small = reduce_whnf(&m, 50);
        if small.status == ReductionStatus::HeadNormal {
            prop_assert_eq!(reduce_whnf(&m, 5000).final_term, small.final_term);
        }
        if let Normalization::Normal { term, .. } = normalize(&m, 50) {
            prop_assert_eq!(normalize(&m, 5000).normal_form(), Some(term));
        }
    }

    #[test]
    fn head_reduction_is_a_congruence_on_the_left(seed in any::<u64>(), aseed in any::<u64>()) {
        let m = closed(seed, 5);
        let arg = term(aseed, 3);
        let r = reduce_whnf(&m, 200);
        prop_assert!(chain_reaches(&Term::app(m, arg.clone()), &Term::app(r.final_term, arg), 200));
    }

    #[test]
    fn k1_coding_round_trips(seed in any::<u64>(), n in any::<u64>()) {
        let m = closed(seed, 6);
        let code = encode(&m).unwrap();
        prop_assert_eq!(decode(&code), m);
        prop_assert_eq!(K1Code::from_number(&code.number()), code);
        prop_assert_eq!(K1Code::from_u64(n).to_u64(), Some(n));
    }
}
