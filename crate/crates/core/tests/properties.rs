use proptest::prelude::*;

use twogroup::catalog;
use twogroup::covering::{cayley_complex, CoveringSpace, EdgeLoop};
use twogroup::crossed_module::{
    find_crossed_module_isomorphism, validate_crossed_module, CrossedModule,
};
use twogroup::group::GroupTable;
use twogroup::groupoid::{find_isomorphism, validate_groupoid, ArrId, ObjId};
use twogroup::presentation::{format_word, free_reduce, invert, parse_word, Letter, Presentation};
use twogroup::strictifier::extract_crossed_module;

fn letters(gens: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0..gens, any::<bool>()).prop_map(|(gen, inverse)| Letter { gen, inverse }),
        0..max,
    )
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn word_format_parse_round_trip(w in letters(3, 12)) {
        let gens: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(parse_word(&format_word(&w, &gens), &gens).unwrap(), w);
    }

    #[test]
    fn prefix_generator_names_round_trip(w in letters(5, 12)) {
        let gens: Vec<String> = ["a", "b", "ab", "x1", "1"].iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(parse_word(&format_word(&w, &gens), &gens).unwrap(), w);
    }

    #[test]
    fn free_reduction_is_idempotent(w in letters(2, 16)) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert_eq!(free_reduce(&[w.as_slice(), invert(&w).as_slice()].concat()), vec![]);
    }

    #[test]
    fn boundary_map_is_multiplicative_on_cyclic(n in 1usize..8, a in letters(1, 10), b in letters(1, 10)) {
        let p = Presentation::parse(&["a"], &[&format!("a^{n}")]).unwrap();
        let g = GroupTable::cyclic(n);
        let s = CoveringSpace::new(cayley_complex(&p, &g, &[1 % n], 1000).unwrap()).unwrap();
        let d = |w: Vec<Letter>| s.boundary_map(&EdgeLoop { base: 0, word: w }).unwrap();
        let joined = [a.as_slice(), b.as_slice()].concat();
        prop_assert_eq!(d(joined), g.mul(d(a.clone()), d(b.clone())));
        prop_assert_eq!(d(invert(&a)), g.inv(d(a)));
    }

    #[test]
    fn boundary_map_on_s3_matches_evaluation(w in letters(2, 12)) {
        let c = catalog::cayley_s3();
        let g = c.gamma.clone();
        let images = [g.index_of("(12)").unwrap(), g.index_of("(123)").unwrap()];
        let s = CoveringSpace::new(c).unwrap();
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        prop_assert_eq!(s.boundary_map(&EdgeLoop { base: 0, word: w.clone() }).unwrap(), p.evaluate(&w, &g, &images));
    }

    #[test]
    fn relabelled_groups_are_isomorphic(idx in 0usize..4, perm in permutation(6)) {
        let g = [GroupTable::symmetric(3), GroupTable::cyclic(6), GroupTable::cyclic(4),
                 GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2))][idx].clone();
        let n = g.order();
        let perm: Vec<usize> = perm.into_iter().filter(|&i| i < n).collect();
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let h = GroupTable::from_fn(names, |a, b| perm[g.mul(perm.iter().position(|&p| p == a).unwrap(),
                                                           perm.iter().position(|&p| p == b).unwrap())]).unwrap();
        let iso = g.find_isomorphism(&h).unwrap();
        prop_assert!(g.homomorphism_failure(&iso, &h).is_none());
    }

    #[test]
    fn permuted_groupoids_are_isomorphic(idx in 0usize..6, seed in any::<u64>()) {
        let (_, x) = catalog::crossed_modules().swap_remove(idx);
        let g = x.translation_groupoid().unwrap();
        let mut objs: Vec<ObjId> = g.objects().collect();
        let mut arrs: Vec<ArrId> = g.arrows().collect();
        let (no, na) = (objs.len(), arrs.len());
        objs.rotate_left(seed as usize % no);
        arrs.rotate_left((seed >> 8) as usize % na);
        let h = g.permuted(&objs, &arrs, "p");
        prop_assert!(validate_groupoid(&h).is_valid());
        prop_assert_eq!(validate_groupoid(&h), validate_groupoid(&h));
        let f = find_isomorphism(&g, &h).unwrap();
        prop_assert!(f.check_functor(&g, &h).is_valid());
        prop_assert!(find_isomorphism(&h, &g).is_some());
    }

    #[test]
    fn cyclic_crossed_modules_round_trip(m in 1usize..5, n in 1usize..7, k in 0usize..7) {
        let gamma = GroupTable::cyclic(m);
        let g0 = GroupTable::cyclic(n);
        let partial: Vec<usize> = (0..m).map(|i| (i * k) % n).collect();
        let x = CrossedModule::with_trivial_action(gamma, g0, partial);
        let valid = validate_crossed_module(&x).is_valid();
        prop_assert_eq!(valid, m == 1 || (m * k) % n == 0);
        if valid {
            let back = extract_crossed_module(&twogroup::crossed_module::to_strict_two_group(&x).unwrap());
            let iso = find_crossed_module_isomorphism(&back.module, &x).unwrap();
            prop_assert!(iso.check(&back.module, &x));
        }
    }
}
