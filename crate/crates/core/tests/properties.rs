use proptest::prelude::*;

use revfree_core::avoidance::{self, has_reversal_conflict, AvoidanceQuery};
use revfree_core::morphism::Morphism;
use revfree_core::stream::{Builtin, StreamSpec};
use revfree_core::{FactorSet, Word};

fn word(alphabet: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..alphabet as u8, 0..=max_len).prop_map(move |s| Word::new(s, alphabet).unwrap())
}

fn naive_squarefree(w: &Word) -> bool {
    let s = w.symbols();
    let n = s.len();
    (0..n).all(|i| (1..=(n - i) / 2).all(|p| s[i..i + p] != s[i + p..i + 2 * p]))
}

fn h2() -> Morphism {
    Morphism::from_images(&["0012", "0112"], 3).unwrap()
}

fn h6() -> Morphism {
    Morphism::from_images(&["0001011", "0010111"], 2).unwrap()
}

fn h8() -> Morphism {
    Morphism::from_images(&["012", "013", "014"], 5).unwrap()
}

proptest! {
    #[test]
    fn morphism_law(u in word(2, 30), v in word(2, 30)) {
        for h in [h2(), h6()] {
            let lhs = h.apply(&u.concat(&v).unwrap()).unwrap();
            let rhs = h.apply(&u).unwrap().concat(&h.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn decoding_inverts_uniform_images(u in word(2, 40), t in word(3, 40)) {
        for h in [h2(), h6()] {
            prop_assert_eq!(h.decode_blocks(&h.apply(&u).unwrap()), Some(u.clone()));
        }
        prop_assert_eq!(h8().decode_blocks(&h8().apply(&t).unwrap()), Some(t));
    }

    #[test]
    fn validity_is_closed_under_symmetries(x in word(2, 24), k in 1usize..7) {
        let q = AvoidanceQuery::reversal(k).unwrap();
        let valid = avoidance::is_valid(&x, &q);
        prop_assert_eq!(avoidance::is_valid(&x.reverse(), &q), valid);
        prop_assert_eq!(avoidance::is_valid(&x.complement().unwrap(), &q), valid);
        if valid {
            for i in 0..=x.len() {
                for j in i..=x.len() {
                    prop_assert!(avoidance::is_valid(&x.subword(i..j), &q));
                }
            }
        }
    }

    #[test]
    fn validity_is_closed_under_relabelling(x in word(4, 24), k in 1usize..5, perm in Just(vec![0u8, 1, 2, 3]).prop_shuffle()) {
        let q = AvoidanceQuery::new(k, true).unwrap();
        prop_assert_eq!(avoidance::is_valid(&x.permute(&perm).unwrap(), &q), avoidance::is_valid(&x, &q));
    }

    #[test]
    fn squarefree_matches_naive(x in word(3, 40)) {
        prop_assert_eq!(x.is_squarefree(), naive_squarefree(&x));
        if let Some((offset, half)) = x.find_square() {
            let s = x.symbols();
            prop_assert_eq!(&s[offset..offset + half], &s[offset + half..offset + 2 * half]);
        }
    }

    #[test]
    fn check_agrees_with_brute_force(x in word(3, 18), k in 1usize..6) {
        let q = AvoidanceQuery::reversal(k).unwrap();
        prop_assert_eq!(avoidance::is_valid(&x, &q), avoidance::brute_force_reversal_free(&x, k));
        if let Err(avoidance::Violation::Reversal(c)) = avoidance::check(&x, &q) {
            prop_assert!(x.subword(c.position_x..c.position_x + k) == c.x);
            prop_assert!(x.subword(c.position_xr..c.position_xr + k) == c.x.reverse());
        }
    }

    #[test]
    fn images_of_arbitrary_words_are_valid(u in word(2, 60)) {
        prop_assert!(avoidance::is_valid(&h2().apply(&u).unwrap(), &AvoidanceQuery::reversal(3).unwrap()));
        prop_assert!(avoidance::is_valid(&h6().apply(&u).unwrap(), &AvoidanceQuery::reversal(6).unwrap()));
    }

    #[test]
    fn factor_sets_are_monotone(x in word(3, 30), y in word(3, 30), n in 1usize..5) {
        let xy = x.concat(&y).unwrap();
        let whole = xy.factors(n).unwrap();
        for f in x.factors(n).unwrap().iter().chain(y.factors(n).unwrap().iter()) {
            prop_assert!(whole.contains(f));
        }
    }
}

#[test]
fn image_factor_sets_are_realized() {
    let universe = FactorSet::universe(2, 2).unwrap();
    let nonperiodic = StreamSpec::Builtin(Builtin::NonperiodicBinary);
    for (h, k) in [(h2(), 3), (h6(), 6)] {
        let predicted = h.image_factor_set(k, &universe).unwrap();
        assert!(!has_reversal_conflict(&predicted));
        let stream = StreamSpec::morphic_image(h, nonperiodic.clone()).unwrap();
        assert_eq!(stream.prefix_factors(k, 20_000).unwrap(), predicted);
    }

    let thue = StreamSpec::Builtin(Builtin::ThueSquarefreeTernary);
    let squarefree_pairs = FactorSet::new(2, thue.prefix_factors(2, 1000).unwrap().iter().cloned()).unwrap();
    assert_eq!(squarefree_pairs.len(), 6);
    let predicted = h8().image_factor_set(2, &squarefree_pairs).unwrap();
    let stream = StreamSpec::morphic_image(h8(), thue).unwrap();
    assert_eq!(stream.prefix_factors(2, 6000).unwrap(), predicted);
    assert!(!has_reversal_conflict(&predicted));
}
