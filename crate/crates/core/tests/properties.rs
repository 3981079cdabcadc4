use proptest::prelude::*;

use rgwa::corpus::{cyclic_trivial, klein4, klein_swap, z2xz4};
use rgwa::pentaction::{enumerate_pentactions, pent_add, pent_neg, zero_pentaction};
use rgwa::{quotient_by_subgroup, subobject_closure, Budget, ElementSet, FiniteGwaObject};

fn objects() -> Vec<FiniteGwaObject> {
    let mut out: Vec<_> = (1..=8).map(|n| cyclic_trivial(n).unwrap()).collect();
    out.extend([klein4(), z2xz4(), klein_swap()]);
    out
}

fn object() -> impl Strategy<Value = FiniteGwaObject> {
    prop::sample::select(objects())
}

fn object_and_seeds() -> impl Strategy<Value = (FiniteGwaObject, Vec<usize>, Vec<usize>)> {
    object().prop_flat_map(|a| {
        let n = a.order();
        (
            Just(a),
            prop::collection::vec(0..n, 0..4),
            prop::collection::vec(0..n, 0..4),
        )
    })
}

proptest! {
    #[test]
    fn closure_is_idempotent_and_monotone((a, s, t) in object_and_seeds()) {
        let n = a.order();
        let small = ElementSet::new(n, s.iter().copied()).unwrap();
        let large = small.union(&ElementSet::new(n, t.iter().copied()).unwrap());
        let c = subobject_closure(&a, &small);
        prop_assert!(small.is_subset(&c));
        prop_assert_eq!(&subobject_closure(&a, &c), &c);
        prop_assert!(c.is_subset(&subobject_closure(&a, &large)));
        prop_assert!(c.contains(0));
    }

    #[test]
    fn quotient_by_zero_is_isomorphic(n in 1usize..=8) {
        let a = cyclic_trivial(n).unwrap();
        let q = quotient_by_subgroup(&a, &ElementSet::new(n, [0]).unwrap()).unwrap();
        prop_assert_eq!(q.add_table(), a.add_table());
        prop_assert_eq!(q.act_table(), a.act_table());
    }

    #[test]
    fn quotient_by_everything_is_zero(n in 1usize..=8) {
        let a = cyclic_trivial(n).unwrap();
        prop_assert!(quotient_by_subgroup(&a, &ElementSet::full(n)).unwrap().is_zero());
    }

    #[test]
    fn zero_pentaction_powers_to_zero(a in object(), x in any::<prop::sample::Index>()) {
        let z = zero_pentaction(&a);
        prop_assert_eq!(z.pow[x.index(a.order())], 0);
    }
}

#[test]
fn pentaction_negation_and_zero_exhaustive() {
    for a in objects() {
        let z = zero_pentaction(&a);
        for p in enumerate_pentactions(&a, &Budget::default()).unwrap() {
            let neg = pent_neg(&a, &p).unwrap();
            assert_eq!(&pent_neg(&a, &neg).unwrap(), p.candidate());
            assert_eq!(&pent_add(&a, &p, &z).unwrap(), p.candidate());
            assert_eq!(&pent_add(&a, &z, &p).unwrap(), p.candidate());
            assert_eq!(&pent_add(&a, &p, &neg).unwrap(), z.candidate(), "{}", a.name());
            assert_eq!(&pent_add(&a, &neg, &p).unwrap(), z.candidate(), "{}", a.name());
        }
    }
}
