//! Extension round-trip on random surfaces: gluing a twist-shaped point
//! over a loop and restricting back reproduces the original restriction
//! exactly, plus one loop generator carrying the twist.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schober_core::arith::{Matrix, Rat};
use schober_core::localsys::{Generator, GroupoidPresentation, LatticeLocalSystem, WordLetter};
use schober_core::perv::{monodromy_of, GmvData, GmvPoint};
use schober_core::surface::{extend_with_twist, restrict_full, SurfaceSchober};

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| Rat::from_int(rng.gen_range(-2..=2)))
}

fn random_twist_point(rng: &mut ChaCha8Rng, ambient: usize) -> (GmvPoint, Matrix) {
    loop {
        let dim = rng.gen_range(1..=2usize);
        let point = GmvPoint {
            dim,
            u: random_matrix(rng, dim, ambient),
            v: random_matrix(rng, ambient, dim),
        };
        let m = monodromy_of(&point.u, &point.v, ambient).unwrap();
        if m.is_invertible() {
            return (point, m);
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

#[test]
fn fifty_random_extensions_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0802);
    for _ in 0..50 {
        let ambient = rng.gen_range(1..=3usize);
        let (point, twist) = random_twist_point(&mut rng, ambient);
        let outside = LatticeLocalSystem {
            presentation: GroupoidPresentation {
                basepoints: vec!["x".into()],
                generators: vec![
                    Generator {
                        label: "c".into(),
                        src: "x".into(),
                        dst: "x".into(),
                    },
                    Generator {
                        label: "h".into(),
                        src: "x".into(),
                        dst: "x".into(),
                    },
                ],
                relations: vec![],
            },
            dims: BTreeMap::from([("x".into(), ambient)]),
            mats: BTreeMap::from([
                ("c".into(), twist.clone()),
                ("h".into(), random_invertible(&mut rng, ambient)),
            ]),
        };
        let bare = SurfaceSchober {
            disk: GmvData {
                ambient_dim: ambient,
                points: vec![],
            },
            outside,
            basepoint: "x".into(),
            boundary_word: vec![],
        };
        // The restriction of the bare schober is the outside system itself.
        assert_eq!(restrict_full(&bare).unwrap(), bare.outside);

        let grown = extend_with_twist(&bare, &point, &vec![WordLetter::fwd("c")]).unwrap();
        let restricted = restrict_full(&grown).unwrap();
        assert!(restricted.validate().unwrap().valid);
        assert_eq!(restricted.mat("gamma_1").unwrap(), &twist);
        let glue = restricted
            .presentation
            .relations
            .iter()
            .find(|r| r.label == "glue")
            .unwrap();
        assert_eq!(
            glue.word,
            vec![WordLetter::fwd("c"), WordLetter::bwd("gamma_1")]
        );

        // Dropping the added loop and its gluing relation recovers the
        // original restriction on the nose.
        let mut stripped = restricted.clone();
        stripped
            .presentation
            .generators
            .retain(|g| g.label != "gamma_1");
        stripped.presentation.relations.retain(|r| r.label != "glue");
        stripped.mats.remove("gamma_1");
        assert_eq!(stripped, bare.outside);
    }
}
