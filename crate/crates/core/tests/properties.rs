//! Randomized algebraic laws.

use howe::actions::{sp_e_basis, sp_f_basis};
use howe::extalg::{bar, multiply, normalize, normalize_with_strategy, position, ExtVec, Subset};
use howe::qarith::LaurentInt;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentInt> {
    prop::collection::vec((-6i64..=6, -4i64..=4), 0..5).prop_map(LaurentInt::from_terms)
}

fn subset(n: usize) -> impl Strategy<Value = Subset> {
    (0u64..(1 << (2 * n))).prop_map(move |m| Subset::from_mask(n, m))
}

fn element(n: usize) -> impl Strategy<Value = ExtVec> {
    prop::collection::vec((subset(n), laurent()), 0..4).prop_map(move |t| ExtVec::from_terms(n, t))
}

fn signed_index(n: usize) -> impl Strategy<Value = i64> {
    (1..=n as i64, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i })
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn product_is_associative(x in element(2), y in element(2), z in element(2)) {
        let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bar_is_an_antilinear_involution(x in element(3), c in laurent()) {
        prop_assert_eq!(bar(&bar(&x)), x.clone());
        prop_assert_eq!(bar(&x.scale(&c)), bar(&x).scale(&c.bar()));
    }

    #[test]
    fn bar_commutes_with_chevalley_generators(x in element(3), i in 1usize..=3) {
        let f = |y: &ExtVec| y.map_linear(|s| sp_f_basis(i, s));
        let e = |y: &ExtVec| y.map_linear(|s| sp_e_basis(i, s));
        prop_assert_eq!(bar(&f(&x)), f(&bar(&x)));
        prop_assert_eq!(bar(&e(&x)), e(&bar(&x)));
    }

    #[test]
    fn reduction_order_is_irrelevant(
        word in prop::collection::vec(signed_index(3), 0..7),
        picks in prop::collection::vec(any::<usize>(), 64),
    ) {
        let n = 3;
        let positions: Vec<u8> = word.iter().map(|&x| position(x, n) as u8).collect();
        let mut k = 0;
        let mut choose = |red: &[usize]| {
            k += 1;
            picks[k % picks.len()] % red.len()
        };
        prop_assert_eq!(normalize_with_strategy(n, &positions, &mut choose), normalize(&word, n).unwrap());
    }
}
