use twogroup::catalog;
use twogroup::crossed_module::to_strict_two_group;
use twogroup::group::GroupTable;
use twogroup::groupoid::{find_isomorphism, FiniteGroupoid};
use twogroup::simplicial::{
    bar_nerve, kan_check, nerve_of_groupoid, nerve_of_partial_group, two_kan_to_groupoid,
    validate_simplicial, PartialGroup, SimplicialError,
};

#[test]
fn groupoid_nerve_layer_counts() {
    let z2 = FiniteGroupoid::delooping(&GroupTable::cyclic(2));
    assert_eq!(nerve_of_groupoid(&z2, 3).layer_sizes(), vec![1, 2, 4, 8]);
    let disc = FiniteGroupoid::discrete(vec!["a".into(), "b".into(), "c".into()]);
    assert_eq!(nerve_of_groupoid(&disc, 2).layer_sizes(), vec![3, 3, 3]);
    let xm1 = to_strict_two_group(&catalog::xm1()).unwrap();
    let n = nerve_of_groupoid(xm1.base(), 2);
    assert_eq!(n.layer_sizes(), vec![4, 8, 16]);
    assert!(validate_simplicial(&n).is_valid());
}

#[test]
fn z2_nerve_is_one_kan() {
    let z2 = FiniteGroupoid::delooping(&GroupTable::cyclic(2));
    let r = kan_check(&nerve_of_groupoid(&z2, 3), 1, 3).unwrap();
    assert!(r.passed);
    assert!(r
        .entries
        .iter()
        .filter(|e| e.m >= 2)
        .all(|e| e.ambiguous == 0 && e.missing == 0));
}

#[test]
fn interval_fails_at_one_one() {
    let p = PartialGroup::integer_interval(1);
    assert!(p.validate().is_valid());
    let x = nerve_of_partial_group(&p, 2);
    assert_eq!(x.layer_sizes(), vec![1, 3, 7]);
    let names: Vec<&str> = x.layers[2].iter().map(String::as_str).collect();
    assert!(!names.contains(&"[1|1]") && !names.contains(&"[-1|-1]"));
    let r = kan_check(&x, 1, 2).unwrap();
    assert!(!r.passed);
    assert!(r.entry(2, 1).unwrap().has_missing(&["1", "1"]));
}

#[test]
fn interval_depth_three() {
    let p = PartialGroup::integer_interval(1);
    let x = nerve_of_partial_group(&p, 3);
    let vals = [-1i64, 0, 1];
    let mut expected = 0;
    for a in vals {
        for b in vals {
            for c in vals {
                let sums = [a, b, c, a + b, b + c, a + b + c];
                expected += usize::from(sums.iter().all(|s| s.abs() <= 1));
            }
        }
    }
    assert_eq!(x.layers[3].len(), expected);
    assert!(validate_simplicial(&x).is_valid());
}

#[test]
fn whole_group_partial_nerve_is_the_group_nerve() {
    let s3 = GroupTable::symmetric(3);
    let a = nerve_of_partial_group(&PartialGroup::whole(&s3), 3);
    let b = nerve_of_groupoid(&FiniteGroupoid::delooping(&s3), 3);
    assert_eq!(a.layers[1..], b.layers[1..]);
    assert_eq!(a.faces, b.faces);
    assert_eq!(a.degeneracies, b.degeneracies);
}

#[test]
fn bar_nerves_are_simplicial_and_two_kan() {
    for (name, x) in catalog::crossed_modules() {
        let n = bar_nerve(&x, 3);
        assert!(validate_simplicial(&n).is_valid(), "{name}");
        assert!(kan_check(&n, 2, 3).unwrap().passed, "{name}");
    }
}

#[test]
fn two_kan_round_trip() {
    for (name, x) in catalog::crossed_modules() {
        let g = two_kan_to_groupoid(&bar_nerve(&x, 3)).unwrap();
        let s = to_strict_two_group(&x).unwrap();
        assert!(find_isomorphism(&g, s.base()).is_some(), "{name}");
    }
    let g = two_kan_to_groupoid(&bar_nerve(&catalog::xm3(), 3)).unwrap();
    assert_eq!((g.object_count(), g.arrow_count()), (1, 2));
}

#[test]
fn delooping_nerve_gives_discrete_groupoid() {
    let z3 = FiniteGroupoid::delooping(&GroupTable::cyclic(3));
    let g = two_kan_to_groupoid(&nerve_of_groupoid(&z3, 3)).unwrap();
    assert_eq!((g.object_count(), g.arrow_count()), (3, 3));
}

#[test]
fn extraction_preconditions() {
    let disc = FiniteGroupoid::discrete(vec!["a".into(), "b".into()]);
    assert!(matches!(
        two_kan_to_groupoid(&nerve_of_groupoid(&disc, 3)),
        Err(SimplicialError::NotPointed(2))
    ));
    let z2 = FiniteGroupoid::delooping(&GroupTable::cyclic(2));
    assert!(matches!(
        two_kan_to_groupoid(&nerve_of_groupoid(&z2, 2)),
        Err(SimplicialError::DepthTooSmall { .. })
    ));
    assert!(kan_check(&nerve_of_groupoid(&z2, 2), 1, 3).is_err());
}
