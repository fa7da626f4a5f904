//! Word-problem properties of the braid solver under random words and
//! free-reduction noise.

use proptest::collection::vec;
use proptest::prelude::*;
use schober_core::braid::{braid_act_free, braid_equal, BraidLetter, BraidWord};

fn letter() -> impl Strategy<Value = BraidLetter> {
    (1..=5i64, any::<bool>()).prop_map(|(i, pos)| {
        if pos {
            BraidLetter::gen(i)
        } else {
            BraidLetter::inv(i)
        }
    })
}

fn word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    vec(letter(), 0..=max_len).prop_map(BraidWord::new)
}

/// Insert cancelling pairs l l^-1 at the given positions.
fn perturb(w: &BraidWord, inserts: &[(usize, BraidLetter)]) -> BraidWord {
    let mut letters = w.0.clone();
    for &(pos, l) in inserts {
        let at = pos % (letters.len() + 1);
        letters.insert(at, l.inverse());
        letters.insert(at, l);
    }
    BraidWord::new(letters)
}

proptest! {
    #[test]
    fn word_times_inverse_is_trivial(w in word(12)) {
        prop_assert!(braid_act_free(&w.concat(&w.inverse())).is_identity());
        prop_assert!(braid_equal(&w.concat(&w.inverse()), &BraidWord::default()));
    }

    #[test]
    fn free_reduction_noise_preserves_the_class(
        w in word(12),
        ins1 in vec((any::<usize>(), letter()), 0..4),
        ins2 in vec((any::<usize>(), letter()), 0..4),
    ) {
        prop_assert!(braid_equal(&w, &perturb(&w, &ins1)));
        prop_assert!(braid_equal(&perturb(&w, &ins1), &perturb(&w, &ins2)));
    }

    #[test]
    fn braid_relation_holds_in_context(u in word(6), v in word(6)) {
        let abab = |l: &[i64]| {
            BraidWord::new(l.iter().map(|&i| BraidLetter::gen(i)).collect())
        };
        let lhs = u.concat(&abab(&[1, 2, 1])).concat(&v);
        let rhs = u.concat(&abab(&[2, 1, 2])).concat(&v);
        prop_assert!(braid_equal(&lhs, &rhs));
        let far_lhs = u.concat(&abab(&[1, 3])).concat(&v);
        let far_rhs = u.concat(&abab(&[3, 1])).concat(&v);
        prop_assert!(braid_equal(&far_lhs, &far_rhs));
    }

    #[test]
    fn appended_generator_changes_the_class(w in word(12), i in 1..=5i64) {
        let longer = w.concat(&BraidWord::new(vec![BraidLetter::gen(i)]));
        prop_assert!(!braid_equal(&w, &longer));
    }

    #[test]
    fn equality_is_a_congruence(w in word(8), u in word(4), ins in vec((any::<usize>(), letter()), 1..3)) {
        let w2 = perturb(&w, &ins);
        prop_assert!(braid_equal(&w.concat(&u), &w2.concat(&u)));
        prop_assert!(braid_equal(&u.concat(&w), &u.concat(&w2)));
    }
}
