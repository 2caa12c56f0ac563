use twogroup::catalog;
use twogroup::crossed_module::{
    find_crossed_module_isomorphism, kernel_center_check, pfeiffer_vs_interchange,
    to_strict_two_group, validate_crossed_module,
};
use twogroup::group::GroupTable;
use twogroup::groupoid::ArrId;
use twogroup::strictifier::{
    arrow_group, associator_cocycle, extract_crossed_module, is_semistrict, strictify,
    StrictifyError,
};

#[test]
fn cocycle_of_strict_inputs_is_trivial() {
    for (name, x) in catalog::crossed_modules() {
        let c = associator_cocycle(&catalog::strict(&x).to_coherent()).unwrap();
        assert!(c.trivial && c.certificate, "{name}");
    }
}

#[test]
fn cocycle_of_t_omega() {
    let c = associator_cocycle(&catalog::t_omega()).unwrap();
    assert!(!c.trivial);
    assert!(!c.constant);
    assert!(c.certificate);
    assert_eq!(c.h0, "0/0");
    let h111 = c.table.iter().find(|r| r[..3] == ["1", "1", "1"]).unwrap();
    assert_eq!(h111[3], "0/1");
}

#[test]
fn cocycle_refuses_monoids() {
    assert!(matches!(
        associator_cocycle(&catalog::monoid_objects()),
        Err(StrictifyError::ObjectsNotAGroup(_))
    ));
}

#[test]
fn semistrict_verdicts() {
    assert!(is_semistrict(&catalog::strict(&catalog::xm1()).to_coherent()).semistrict);
    let v = is_semistrict(&catalog::t_omega());
    assert_eq!(v.witness.as_deref(), Some("d_1"));
    let v = is_semistrict(&catalog::monoid_objects());
    assert_eq!(v.witness.as_deref(), Some("non-invertible object u"));
}

#[test]
fn strictify_round_trip_is_identical() {
    let s = catalog::strict(&catalog::xm2());
    let out = strictify(&s.to_coherent()).unwrap();
    assert_eq!(out.strict, s);
    let b = s.base();
    assert!(out
        .equivalence
        .tensor_constraint
        .iter()
        .all(|&a| b.is_identity(a)));
    assert!(b.is_identity(out.equivalence.unit_constraint));
    assert!(out.equivalence.checks.iter().all(|c| c.passed()));
}

#[test]
fn strictify_records_unit_constraint() {
    let t = catalog::unit_twisted_z3();
    let out = strictify(&t).unwrap();
    assert_eq!(out.equivalence.unit_constraint, ArrId(2));
    assert!(out.equivalence.checks.iter().all(|c| c.passed()));
}

#[test]
fn strictify_rejects_t_omega() {
    match strictify(&catalog::t_omega()) {
        Err(StrictifyError::NotSemistrict { witness }) => assert_eq!(witness, "d_1"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn strictify_names_violated_conclusion() {
    let t = catalog::unit_twisted_z3();
    let mut tables = t.tables().clone();
    tables.lunit = vec![ArrId(2)];
    let bad = twogroup::monoidal::CoherentTwoGroup::new(t.base().clone(), tables).unwrap();
    match strictify(&bad) {
        Err(StrictifyError::ConnectednessAnalogViolated {
            conclusion,
            witness,
        }) => {
            assert_eq!(conclusion, "unit-constraints");
            assert_eq!(witness, vec!["*"]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn extraction_examples() {
    let ex = extract_crossed_module(&catalog::strict(&catalog::xm2()));
    assert_eq!(ex.module.gamma.order(), 6);
    assert!(validate_crossed_module(&ex.module).is_valid());
    let ex = extract_crossed_module(&catalog::strict(&catalog::xm1()));
    assert_eq!(ex.module.gamma.order(), 2);
    assert!(ex
        .module
        .action
        .iter()
        .enumerate()
        .all(|(i, &g)| g == i % 2));
    let ex = extract_crossed_module(&catalog::strict(&catalog::xm3()));
    assert_eq!((ex.module.gamma.order(), ex.module.g0.order()), (2, 1));
}

#[test]
fn round_trip_up_to_isomorphism() {
    for (name, x) in catalog::crossed_modules() {
        let back = extract_crossed_module(&to_strict_two_group(&x).unwrap()).module;
        let iso = find_crossed_module_isomorphism(&x, &back).unwrap_or_else(|| panic!("{name}"));
        assert!(iso.check(&x, &back));
        assert!(kernel_center_check(&back).central.passed());
        assert!(pfeiffer_vs_interchange(&back).unwrap().agree());
    }
}

#[test]
fn wreath_and_psi_phi() {
    let ag = arrow_group(&catalog::strict(&catalog::xm2()));
    assert_eq!(ag.wreath.order(), 36);
    assert!(ag.checks.iter().all(|c| c.passed()));
    let ag = arrow_group(&catalog::strict(&catalog::xm1()));
    let product = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(4));
    assert!(ag.wreath.find_isomorphism(&product).is_some());
}
