use proptest::prelude::*;

use lightning_flash::decompose::{multiplicities, verify_decomposition, decompose, Multiset};
use lightning_flash::io::{parse_module, print_module};
use lightning_flash::module::{
    direct_sum, make_flash, random_basis_change, random_variant_b_module, shift, truncate_above, AlgebraParams, FlashShape,
    Module, Variant,
};
use lightning_flash::operators::{filtration, margolis_homology};
use lightning_flash::{Field, Generator};

fn params() -> impl Strategy<Value = AlgebraParams> {
    prop_oneof![
        Just(AlgebraParams::default()),
        Just(AlgebraParams::new(Field::Prime(5), 2, 5, Variant::B).unwrap()),
        Just(AlgebraParams::new(Field::Prime(3), 1, 2, Variant::B).unwrap()),
        Just(AlgebraParams::new(Field::Rationals, 1, 3, Variant::B).unwrap()),
    ]
}

fn shape() -> impl Strategy<Value = FlashShape> {
    (1usize..6, any::<bool>(), any::<bool>(), 0i64..8).prop_map(|(b, lt, rt, s)| FlashShape::finite(b, lt, rt, s))
}

fn sum_of(shapes: &[FlashShape], p: &AlgebraParams) -> Module {
    let parts: Vec<Module> = shapes.iter().map(|s| make_flash(*s, p).unwrap()).collect();
    direct_sum(p, &parts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flash_dimension(p in params(), s in shape()) {
        let m = make_flash(s, &p).unwrap();
        let lightning_flash::module::FlashKind::Finite { bottoms, left_top, right_top } = s.kind else { unreachable!() };
        prop_assert_eq!(m.total_dim(), 2 * bottoms - 1 + usize::from(left_top) + usize::from(right_top));
        prop_assert_eq!(Some(m.total_dim()), s.dim());
        prop_assert!(m.is_valid());
    }

    #[test]
    fn filtration_decreases_and_commutes_with_shift(p in params(), shapes in prop::collection::vec(shape(), 1..4), by in -5i64..5) {
        let m = sum_of(&shapes, &p);
        let moved = shift(&m, by);
        for j in 0..6 {
            let (a, b) = (filtration(&m, j), filtration(&m, j + 1));
            prop_assert!(b.is_subspace_of(&a));
            prop_assert_eq!(filtration(&moved, j), a.shifted(by));
        }
    }

    #[test]
    fn margolis_additive_and_basis_invariant(p in params(), a in shape(), b in shape(), seed in any::<u64>()) {
        let (ma, mb) = (make_flash(a, &p).unwrap(), make_flash(b, &p).unwrap());
        let sum = direct_sum(&p, &[ma.clone(), mb.clone()]).unwrap();
        let scrambled = random_basis_change(&sum, seed);
        for g in Generator::BOTH {
            let mut want = margolis_homology(&ma, g);
            for (d, n) in margolis_homology(&mb, g).iter() {
                want.add(d, n);
            }
            prop_assert_eq!(&margolis_homology(&sum, g), &want);
            prop_assert_eq!(&margolis_homology(&scrambled, g), &want);
        }
    }

    #[test]
    fn krull_schmidt(p in params(), shapes in prop::collection::vec(shape(), 1..6), s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = sum_of(&shapes, &p);
        let want: Multiset = shapes.iter().copied().collect();
        let (a, b) = (random_basis_change(&m, s1), random_basis_change(&m, s2));
        let da = decompose(&a).unwrap();
        prop_assert!(verify_decomposition(&a, &da).holds());
        prop_assert_eq!(&da.multiset(), &want);
        prop_assert_eq!(&multiplicities(&b).unwrap(), &want);
    }

    #[test]
    fn random_modules_decompose_with_certificates(seed in any::<u64>()) {
        let m = random_variant_b_module(&AlgebraParams::default(), 14, 10, seed);
        let d = decompose(&m).unwrap();
        prop_assert!(verify_decomposition(&m, &d).holds());
    }

    #[test]
    fn truncation_composes(p in params(), shapes in prop::collection::vec(shape(), 1..4), a in -1i64..20, b in -1i64..20) {
        let m = sum_of(&shapes, &p);
        prop_assert_eq!(truncate_above(&truncate_above(&m, a), b), truncate_above(&m, a.min(b)));
        prop_assert!(truncate_above(&m, a).is_valid());
    }

    #[test]
    fn document_round_trip(p in params(), shapes in prop::collection::vec(shape(), 1..4), seed in any::<u64>()) {
        let m = sum_of(&shapes, &p);
        prop_assert_eq!(&parse_module(&print_module(&m)).unwrap(), &m);
        let scrambled = random_basis_change(&m, seed);
        let text = print_module(&scrambled);
        let back = parse_module(&text).unwrap();
        prop_assert!(back.same_structure(&scrambled));
        prop_assert_eq!(print_module(&back), text);
    }
}
