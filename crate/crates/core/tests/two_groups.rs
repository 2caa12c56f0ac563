use twogroup::catalog;
use twogroup::groupoid::{find_natural_isomorphism, GroupoidHom};
use twogroup::monoidal::{
    inversion_functor, search_adjunction_data, transpose, unit_isotropy, validate_coherent,
    validate_strict, CoherentTwoGroup,
};

#[test]
fn strict_catalog_is_coherent() {
    for (name, x) in catalog::crossed_modules() {
        let s = catalog::strict(&x);
        assert!(validate_strict(&s).is_valid(), "{name}");
        let r = validate_coherent(&s.to_coherent());
        assert!(r.is_valid(), "{name}: {:?}", r.failed().collect::<Vec<_>>());
    }
}

#[test]
fn t_omega_and_its_tampering() {
    assert!(validate_coherent(&catalog::t_omega()).is_valid());
    let r = validate_coherent(&catalog::t_omega_tampered());
    let pentagon = r.check("pentagon").unwrap();
    assert!(pentagon.has_witness(&["1", "1", "1", "1"]));
    assert_eq!(pentagon.violations, 4);
    assert!(r.failed().all(|c| c.name == "pentagon"));
}

#[test]
fn flipping_omega_111_gives_a_cocycle() {
    assert!(validate_coherent(&catalog::t_omega_flipped_111()).is_valid());
}

#[test]
fn other_coherent_examples_pass() {
    assert!(validate_coherent(&catalog::monoid_objects()).is_valid());
    assert!(validate_coherent(&catalog::unit_twisted_z3()).is_valid());
}

#[test]
fn isotropy_examples() {
    let iso = |x| {
        unit_isotropy(&catalog::strict(&x).to_coherent())
            .unwrap()
            .group
            .order()
    };
    assert_eq!(iso(catalog::xm3()), 2);
    assert_eq!(iso(catalog::xm1()), 1);
    assert_eq!(iso(catalog::xm2()), 1);
    for (name, t) in catalog::coherent_two_groups() {
        let u = unit_isotropy(&t).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(u.group.is_abelian());
    }
}

#[test]
fn transpose_matches_brute_force_and_is_antimultiplicative() {
    for (name, t) in catalog::coherent_two_groups() {
        let b = t.base();
        for g in b.arrows() {
            let tg = transpose(&t, g).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(
                t.characterization_solutions(g),
                vec![tg],
                "{name} {}",
                b.arrow_name(g)
            );
        }
        for x in b.objects() {
            assert_eq!(transpose(&t, b.ident(x)).unwrap(), b.ident(t.bar(x)));
        }
        for (g, h) in b.composable_pairs() {
            let lhs = transpose(&t, b.comp(h, g).unwrap()).unwrap();
            let rhs = b
                .comp(transpose(&t, g).unwrap(), transpose(&t, h).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{name}");
        }
    }
}

#[test]
fn inversion_is_an_involution_up_to_isomorphism() {
    let t = catalog::strict(&catalog::xm1()).to_coherent();
    let i = inversion_functor(&t).unwrap();
    let ii = i.after(&i);
    let id = GroupoidHom::identity(t.base());
    assert!(find_natural_isomorphism(&ii, &id, t.base(), t.base()).is_some());
    for x in t.base().objects() {
        assert_eq!(i.on_arr(t.base().ident(x)), t.base().ident(t.bar(x)));
    }
}

#[test]
fn adjunction_search_recovers_valid_data() {
    let t = catalog::t_omega();
    let (bar, d, e) = search_adjunction_data(t.base(), t.tables()).unwrap();
    let mut tables = t.tables().clone();
    tables.bar = bar;
    tables.adj_d = d;
    tables.adj_e = e;
    let found = CoherentTwoGroup::new(t.base().clone(), tables).unwrap();
    assert!(validate_coherent(&found).is_valid());
}
