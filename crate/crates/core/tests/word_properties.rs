//! Randomized laws of the word calculus over small random systems.

use proptest::prelude::*;
use twinlab_core::{Caps, CoxeterSystem, Gen, Word};

fn label() -> impl Strategy<Value = u64> {
    prop_oneof![Just(0u64), Just(2), Just(3), Just(4), Just(5)]
}

prop_compose! {
    fn system_and_word()(a in label(), b in label(), c in label(),
                         letters in prop::collection::vec(0u8..3u8, 0..10))
                         -> (CoxeterSystem, Vec<Gen>) {
        let sys = CoxeterSystem::from_raw(&[
            vec![1, a, b],
            vec![a, 1, c],
            vec![b, c, 1],
        ]).expect("family matrices are valid");
        (sys, letters)
    }
}

proptest! {
    #[test]
    fn reverse_gives_the_inverse((sys, letters) in system_and_word()) {
        let caps = Caps::default();
        let g = sys.reduce_capped(&Word::new(letters.clone()), &caps).unwrap();
        let mut rev = letters;
        rev.reverse();
        let ginv = sys.reduce_capped(&Word::new(rev), &caps).unwrap();
        prop_assert!(sys.multiply_capped(&g, &ginv, &caps).unwrap().is_identity());
        prop_assert!(sys.multiply_capped(&ginv, &g, &caps).unwrap().is_identity());
        prop_assert_eq!(sys.inverse(&g), ginv);
    }

    #[test]
    fn reduction_is_deterministic_and_idempotent((sys, letters) in system_and_word()) {
        let caps = Caps::default();
        let first = sys.reduce_capped(&Word::new(letters.clone()), &caps).unwrap();
        let second = sys.reduce_capped(&Word::new(letters), &caps).unwrap();
        prop_assert_eq!(&first, &second);
        let again = sys.reduce_capped(first.word(), &caps).unwrap();
        prop_assert_eq!(&first, &again);
    }

    #[test]
    fn length_is_subadditive_with_parity((sys, letters) in system_and_word(),
                                         more in prop::collection::vec(0u8..3u8, 0..10)) {
        let caps = Caps::default();
        let a = sys.reduce_capped(&Word::new(letters), &caps).unwrap();
        let b = sys.reduce_capped(&Word::new(more), &caps).unwrap();
        let ab = sys.multiply_capped(&a, &b, &caps).unwrap();
        prop_assert!(ab.len() <= a.len() + b.len());
        prop_assert!(a.len() + b.len() >= ab.len());
        prop_assert_eq!((a.len() + b.len()) % 2, ab.len() % 2);
    }

    #[test]
    fn every_reduced_expression_has_normal_length((sys, letters) in system_and_word()) {
        let caps = Caps::default();
        let g = sys.reduce_capped(&Word::new(letters), &caps).unwrap();
        let expressions = sys.reduced_expressions(&g, &caps).unwrap();
        prop_assert!(expressions.contains(g.word()));
        for w in &expressions {
            prop_assert_eq!(w.len(), g.len());
            prop_assert_eq!(&sys.reduce_capped(w, &caps).unwrap(), &g);
        }
    }
}
