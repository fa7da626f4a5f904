//! Random spherical pairs: the twist through the two half monodromies
//! coincides with the total monodromy of the collapsed one-point disk.

use proptest::collection::vec;
use proptest::prelude::*;
use schober_core::arith::{Matrix, Rat};
use schober_core::perv::LinearSphericalPair;

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    vec(-2..=2i64, n * n).prop_map(move |entries| {
        Matrix::from_fn(n, n, |i, j| Rat::from_int(entries[i * n + j]))
    })
}

fn valid_pair() -> impl Strategy<Value = LinearSphericalPair> {
    (2..=4usize)
        .prop_flat_map(|total| {
            (1..total).prop_flat_map(move |k| {
                (square(total), square(total)).prop_map(move |(m_basis, p_basis)| {
                    LinearSphericalPair {
                        total_dim: total,
                        q_minus: m_basis.col_slice(0, k),
                        p_minus: m_basis.col_slice(k, total),
                        q_plus: p_basis.col_slice(0, k),
                        p_plus: p_basis.col_slice(k, total),
                    }
                })
            })
        })
        .prop_filter("decompositions and cross maps invertible", |p| {
            p.validate().map(|r| r.valid).unwrap_or(false)
        })
}

proptest! {
    #[test]
    fn twist_matches_collapsed_disk(p in valid_pair()) {
        let twist = p.twist().unwrap();
        let disk = p.to_gmv().unwrap();
        let report = disk.validate().unwrap();
        prop_assert!(report.valid);
        prop_assert_eq!(report.total_monodromy, twist);
    }

    #[test]
    fn twist_is_invertible(p in valid_pair()) {
        prop_assert!(p.twist().unwrap().is_invertible());
    }

    #[test]
    fn half_monodromies_compose_to_the_twist(p in valid_pair()) {
        let (h_mp, h_pm) = p.half_monodromies().unwrap();
        prop_assert_eq!(h_mp.mul(&h_pm).unwrap(), p.twist().unwrap());
    }
}
