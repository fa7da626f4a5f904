//! Hurwitz-action properties on random valid disk presentations: the braid
//! relations act trivially, inverses cancel, and the ordered product of
//! monodromies never moves.

use proptest::collection::vec;
use proptest::prelude::*;
use schober_core::arith::{Matrix, Rat};
use schober_core::braid::{BraidLetter, BraidWord};
use schober_core::perv::{GmvData, GmvPoint};

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    vec(-2..=2i64, rows * cols).prop_map(move |entries| {
        Matrix::from_fn(rows, cols, |i, j| Rat::from_int(entries[i * cols + j]))
    })
}

fn point(ambient: usize) -> impl Strategy<Value = GmvPoint> {
    (1..=3usize).prop_flat_map(move |dim| {
        (int_matrix(dim, ambient), int_matrix(ambient, dim))
            .prop_map(move |(u, v)| GmvPoint { dim, u, v })
    })
}

fn valid_data() -> impl Strategy<Value = GmvData> {
    (1..=4usize)
        .prop_flat_map(|ambient| {
            vec(point(ambient), 3).prop_map(move |points| GmvData {
                ambient_dim: ambient,
                points,
            })
        })
        .prop_filter("every local monodromy invertible", |d| {
            d.validate().map(|r| r.valid).unwrap_or(false)
        })
}

fn gens(letters: &[i64]) -> BraidWord {
    BraidWord::new(
        letters
            .iter()
            .map(|&n| BraidLetter {
                i: n.abs(),
                s: if n > 0 { 1 } else { -1 },
            })
            .collect(),
    )
}

proptest! {
    #[test]
    fn braid_relation_acts_identically(d in valid_data()) {
        let lhs = d.braid_act(&gens(&[1, 2, 1])).unwrap();
        let rhs = d.braid_act(&gens(&[2, 1, 2])).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generator_and_inverse_cancel(d in valid_data(), i in 1..=2i64) {
        prop_assert_eq!(d.braid_act(&gens(&[i, -i])).unwrap(), d.clone());
        prop_assert_eq!(d.braid_act(&gens(&[-i, i])).unwrap(), d);
    }

    #[test]
    fn total_monodromy_is_invariant(d in valid_data(), i in 1..=2i64, s in any::<bool>()) {
        let total = d.total_monodromy().unwrap();
        let moved = d.braid_act(&gens(&[if s { i } else { -i }])).unwrap();
        prop_assert_eq!(moved.total_monodromy().unwrap(), total);
    }

    #[test]
    fn perversity_is_preserved(d in valid_data(), w in vec(1..=2i64, 0..5)) {
        let signed: Vec<i64> = w.iter().enumerate()
            .map(|(k, &i)| if k % 2 == 0 { i } else { -i })
            .collect();
        let moved = d.braid_act(&gens(&signed)).unwrap();
        prop_assert!(moved.validate().unwrap().valid);
        prop_assert_eq!(moved.ambient_dim, d.ambient_dim);
    }
}
