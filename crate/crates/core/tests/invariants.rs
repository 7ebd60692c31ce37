use std::collections::HashSet;

use fibwork_core::chains::{
    classify, decompose, is_maximal_by_structure, is_minimal_by_structure, pi, pi_star, Extremity,
};
use fibwork_core::tiling::{enumerate_tilings, tiling_polynomial, Tiling, DEFAULT_ENUMERATION_CAP};
use fibwork_core::{fib, qfibonomial, Polynomial};

fn all(m: usize, n: usize) -> Vec<Tiling> {
    enumerate_tilings(m, n, DEFAULT_ENUMERATION_CAP).unwrap().collect()
}

#[test]
fn pi_and_pi_star_invert_each_other() {
    for m in 1..=10 {
        for t in all(m, 2) {
            let down = pi(&t).unwrap();
            if down != t {
                assert_eq!(down.weight_degree() + 1, t.weight_degree(), "{t}");
                assert_eq!(pi_star(&down).unwrap(), t, "pi* does not undo pi on {t}");
                assert_eq!(down.row(2), t.row(2), "pi moved the top row of {t}");
            }
            let up = pi_star(&t).unwrap();
            if up != t {
                assert_eq!(up.weight_degree(), t.weight_degree() + 1, "{t}");
                assert_eq!(pi(&up).unwrap(), t, "pi does not undo pi* on {t}");
            }
        }
    }
}

#[test]
fn structural_extremes_are_fixed_points() {
    for m in 1..=10 {
        for t in all(m, 2) {
            let min = pi(&t).unwrap() == t;
            let max = pi_star(&t).unwrap() == t;
            assert_eq!(is_minimal_by_structure(&t).unwrap(), min, "{t}");
            assert_eq!(is_maximal_by_structure(&t).unwrap(), max, "{t}");
            let expected = match (min, max) {
                (true, true) => Extremity::Both,
                (true, false) => Extremity::Minimal,
                (false, true) => Extremity::Maximal,
                (false, false) => Extremity::Interior,
            };
            assert_eq!(classify(&t).unwrap(), expected, "{t}");
        }
    }
}

#[test]
fn blocks_partition_the_board() {
    for m in 1..=10 {
        let blocks = decompose(m, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut seen = HashSet::new();
        for b in &blocks {
            assert_eq!(b.maximal().weight_degree(), b.max_degree);
            assert_eq!(b.minimal().weight_degree(), b.min_degree);
            assert_eq!((b.max_degree - b.min_degree + 1) as usize, b.len());
            for t in &b.tilings {
                assert_eq!(t.row(2), b.top_row_signature.as_slice());
                assert!(seen.insert(t.clone()), "{t} in two blocks");
            }
        }
        let everything: HashSet<Tiling> = all(m, 2).into_iter().collect();
        assert_eq!(seen, everything);
    }
}

#[test]
fn enumeration_matches_division_up_to_nine() {
    for m in 0..=9usize {
        for n in 0..=9 - m {
            let oracle = tiling_polynomial(m, n, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(oracle, *qfibonomial(m, n).unwrap(), "({m}, {n})");
        }
    }
}

#[test]
fn n2_is_a_product_of_two_analogs() {
    for m in 1..=12 {
        let a = fib(m + 1).try_into().unwrap();
        let b = fib(m + 2).try_into().unwrap();
        let expected = Polynomial::q_analog(a, 1).unwrap().mul_q_analog(b, 1).unwrap();
        assert_eq!(*qfibonomial(m, 2).unwrap(), expected);
    }
}

#[test]
fn tiling_json_round_trip() {
    for t in all(3, 3) {
        let text = serde_json::to_string(&t).unwrap();
        let back: Tiling = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }
}
