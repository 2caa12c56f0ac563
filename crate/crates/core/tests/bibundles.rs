use twogroup::bibundle::{
    compose, find_bibundle_isomorphism, from_functor, identity_bibundle, validate_principal,
};
use twogroup::catalog;
use twogroup::group::GroupTable;
use twogroup::groupoid::{find_isomorphism, ArrId, FiniteGroupoid, GroupoidHom, ObjId};

fn xm1_groupoid() -> FiniteGroupoid {
    catalog::xm1().translation_groupoid().unwrap()
}

fn component_inclusion() -> (FiniteGroupoid, GroupoidHom, FiniteGroupoid) {
    let g = xm1_groupoid();
    let comp = g.components().into_iter().next().unwrap();
    let (sub, inc) = g.full_subgroupoid(&comp);
    (sub, inc, g)
}

#[test]
fn component_inclusion_counts() {
    let (sub, inc, g) = component_inclusion();
    let b = from_functor(&inc, &sub, &g);
    let into_images: usize = sub
        .objects()
        .map(|x| g.arrows().filter(|&k| g.tgt(k) == inc.on_obj(x)).count())
        .sum();
    assert_eq!(b.size(), into_images);
    assert_eq!(b.size(), 4);
    let p = validate_principal(&b);
    assert!(p.right_principal, "{:?}", p.report);
    assert!(!p.morita);
}

#[test]
fn every_catalog_functor_is_right_principal() {
    for (_, x) in catalog::crossed_modules() {
        let g = x.translation_groupoid().unwrap();
        let p = validate_principal(&identity_bibundle(&g));
        assert!(p.right_principal && p.morita);
        for comp in g.components() {
            let (sub, inc) = g.full_subgroupoid(&comp);
            assert!(validate_principal(&from_functor(&inc, &sub, &g)).right_principal);
        }
    }
}

#[test]
fn isomorphism_gives_morita() {
    let g = xm1_groupoid();
    let order_obj: Vec<ObjId> = g.objects().rev().collect();
    let order_arr: Vec<ArrId> = g.arrows().rev().collect();
    let h = g.permuted(&order_obj, &order_arr, "p");
    let f = find_isomorphism(&g, &h).unwrap();
    let p = validate_principal(&from_functor(&f, &g, &h));
    assert!(p.morita, "{:?}", p.report);
}

#[test]
fn unit_laws() {
    let (sub, inc, g) = component_inclusion();
    let b = from_functor(&inc, &sub, &g);
    let right = compose(&b, &identity_bibundle(&g)).unwrap();
    assert!(find_bibundle_isomorphism(&right, &b).is_some());
    let left = compose(&identity_bibundle(&sub), &b).unwrap();
    assert!(find_bibundle_isomorphism(&left, &b).is_some());
    assert!(validate_principal(&right).right_principal);
}

#[test]
fn morita_with_reverse_is_identity() {
    let g = xm1_groupoid();
    let h = g.permuted(
        &g.objects().rev().collect::<Vec<_>>(),
        &g.arrows().collect::<Vec<_>>(),
        "q",
    );
    let f = find_isomorphism(&g, &h).unwrap();
    let b = from_functor(&f, &g, &h);
    let round = compose(&b, &b.reverse()).unwrap();
    assert!(find_bibundle_isomorphism(&round, &identity_bibundle(&g)).is_some());
}

#[test]
fn functor_composition_matches_bibundle_composition() {
    let (sub, inc, g) = component_inclusion();
    let h = g.permuted(
        &g.objects().rev().collect::<Vec<_>>(),
        &g.arrows().rev().collect::<Vec<_>>(),
        "r",
    );
    let iso = find_isomorphism(&g, &h).unwrap();
    let direct = from_functor(&iso.after(&inc), &sub, &h);
    let composite = compose(&from_functor(&inc, &sub, &g), &from_functor(&iso, &g, &h)).unwrap();
    assert!(find_bibundle_isomorphism(&direct, &composite).is_some());
}

#[test]
fn mismatched_middle_is_refused() {
    let a = identity_bibundle(&FiniteGroupoid::delooping(&GroupTable::cyclic(2)));
    let b = identity_bibundle(&FiniteGroupoid::delooping(&GroupTable::cyclic(3)));
    assert!(compose(&a, &b).is_err());
}

fn all_maps(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = code % k;
                code /= k;
                d
            })
            .collect()
    })
}

#[test]
fn morita_between_groups_iff_isomorphic() {
    let groups = [
        GroupTable::cyclic(2),
        GroupTable::cyclic(3),
        GroupTable::cyclic(4),
        GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2)),
        GroupTable::symmetric(3),
        GroupTable::cyclic(6),
    ];
    for a in &groups {
        for b in &groups {
            let (ga, gb) = (FiniteGroupoid::delooping(a), FiniteGroupoid::delooping(b));
            let morita = all_maps(a.order(), b.order())
                .filter(|m| a.homomorphism_failure(m, b).is_none())
                .any(|m| {
                    let f = GroupoidHom {
                        obj_map: vec![ObjId(0)],
                        arr_map: m.into_iter().map(ArrId).collect(),
                    };
                    validate_principal(&from_functor(&f, &ga, &gb)).morita
                });
            assert_eq!(
                morita,
                a.find_isomorphism(b).is_some(),
                "{:?} vs {:?}",
                a.names(),
                b.names()
            );
        }
    }
}
