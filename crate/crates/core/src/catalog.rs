//! Small named examples used by the tests, the CLI and the checked-in
//! `catalog/` directory.

use crate::covering::{cayley_complex, EquivariantComplex};
use crate::crossed_module::{to_strict_two_group, CrossedModule};
use crate::group::GroupTable;
use crate::groupoid::{ArrId, Arrow, FiniteGroupoid, ObjId};
use crate::monoidal::{CoherentTwoGroup, StrictTwoGroup, TwoGroupTables};
use crate::presentation::Presentation;

/// `ℤ/2 → ℤ/4`, `∂(1) = 2`, trivial action.
pub fn xm1() -> CrossedModule {
    CrossedModule::with_trivial_action(GroupTable::cyclic(2), GroupTable::cyclic(4), vec![0, 2])
}

/// `S₃ → S₃` identity with conjugation.
pub fn xm2() -> CrossedModule {
    let s3 = GroupTable::symmetric(3);
    let action = s3
        .elements()
        .flat_map(|x| s3.elements().map(move |g| (x, g)))
        .map(|(x, g)| s3.conjugate(x, g))
        .collect();
    CrossedModule::new(s3.clone(), s3.clone(), s3.elements().collect(), action)
}

/// `ℤ/2 → 1`.
pub fn xm3() -> CrossedModule {
    CrossedModule::with_trivial_action(GroupTable::cyclic(2), GroupTable::trivial(), vec![0, 0])
}

fn klein() -> GroupTable {
    GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2))
}

/// `ℤ/2×ℤ/2 → ℤ/2×ℤ/2` identity, trivial action.
pub fn xm4a() -> CrossedModule {
    let k = klein();
    CrossedModule::with_trivial_action(k.clone(), k.clone(), k.elements().collect())
}

/// `ℤ/2 → ℤ/2×ℤ/2`, `1 ↦ (1,0)`, trivial action.
pub fn xm4b() -> CrossedModule {
    let k = klein();
    let image = k.index_of("(1,0)").expect("klein element");
    CrossedModule::with_trivial_action(GroupTable::cyclic(2), k, vec![0, image])
}

/// `ℤ/3 → ℤ/2` trivial, `ℤ/2` acting by inversion.
pub fn xm5() -> CrossedModule {
    let z3 = GroupTable::cyclic(3);
    let action = (0..2)
        .flat_map(|x| (0..3).map(move |g| if x == 0 { g } else { (3 - g) % 3 }))
        .collect();
    CrossedModule::new(z3, GroupTable::cyclic(2), vec![0, 0, 0], action)
}

/// `ℤ/2 → ℤ/4` with `∂(1) = 1`, not a homomorphism.
pub fn broken_boundary() -> CrossedModule {
    CrossedModule::with_trivial_action(GroupTable::cyclic(2), GroupTable::cyclic(4), vec![0, 1])
}

/// `S₃ → 1` with trivial action, violating Pfeiffer.
pub fn broken_pfeiffer() -> CrossedModule {
    CrossedModule::with_trivial_action(GroupTable::symmetric(3), GroupTable::trivial(), vec![0; 6])
}

/// The valid crossed modules, by catalog name.
pub fn crossed_modules() -> Vec<(&'static str, CrossedModule)> {
    vec![
        ("xm1", xm1()),
        ("xm2", xm2()),
        ("xm3", xm3()),
        ("xm4a", xm4a()),
        ("xm4b", xm4b()),
        ("xm5", xm5()),
    ]
}

pub fn strict(x: &CrossedModule) -> StrictTwoGroup {
    to_strict_two_group(x).expect("catalog crossed modules are valid")
}

/// Skeletal 2-group with objects `ℤ/2`, `Aut(x) = ℤ/2` and associator
/// `ω`. Arrows are named `x/k` (object `x`, automorphism `k`).
pub fn twisted_z2(omega: impl Fn(usize, usize, usize) -> usize) -> CoherentTwoGroup {
    let objects = vec!["0".to_string(), "1".to_string()];
    let arrow = |x: usize, k: usize| ArrId(2 * x + k);
    let arrows = (0..4)
        .map(|i| Arrow {
            name: format!("{}/{}", i / 2, i % 2),
            src: ObjId(i / 2),
            tgt: ObjId(i / 2),
        })
        .collect();
    let base = FiniteGroupoid::from_fn(objects, arrows, vec![arrow(0, 0), arrow(1, 0)], |h, g| {
        arrow(g.0 / 2, (g.0 + h.0) % 2)
    })
    .expect("twisted base groupoid");
    let tensor_obj = (0..4).map(|i| ObjId((i / 2 + i % 2) % 2)).collect();
    let tensor_arr = (0..16)
        .map(|i| {
            let (g, h) = (i / 4, i % 4);
            arrow((g / 2 + h / 2) % 2, (g % 2 + h % 2) % 2)
        })
        .collect();
    let assoc = (0..8)
        .map(|i| {
            let (x, y, z) = (i / 4, (i / 2) % 2, i % 2);
            arrow((x + y + z) % 2, omega(x, y, z) % 2)
        })
        .collect();
    let tables = TwoGroupTables {
        tensor_obj,
        tensor_arr,
        unit: ObjId(0),
        assoc,
        lunit: vec![arrow(0, 0), arrow(1, 0)],
        runit: vec![arrow(0, 0), arrow(1, 0)],
        bar: vec![ObjId(0), ObjId(1)],
        adj_d: vec![arrow(0, 0), arrow(0, omega(1, 1, 1) % 2)],
        adj_e: vec![arrow(0, 0), arrow(0, 0)],
    };
    CoherentTwoGroup::new(base, tables).expect("twisted tables are well typed")
}

/// `T_ω` with `ω(x,y,z) = xyz`.
pub fn t_omega() -> CoherentTwoGroup {
    twisted_z2(|x, y, z| x * y * z)
}

/// `T_ω` with `ω(1,1,0)` flipped; no longer a cocycle.
pub fn t_omega_tampered() -> CoherentTwoGroup {
    twisted_z2(|x, y, z| x * y * z + usize::from((x, y, z) == (1, 1, 0)))
}

/// `T_ω` with `ω(1,1,1)` flipped. This is the zero cocycle, so the
/// result is coherent (and strict).
pub fn t_omega_flipped_111() -> CoherentTwoGroup {
    twisted_z2(|_, _, _| 0)
}

/// Codiscrete groupoid on `{I, u}` with `u⊗u = u`: coherent, but the
/// objects only form a monoid.
pub fn monoid_objects() -> CoherentTwoGroup {
    let objects = vec!["I".to_string(), "u".to_string()];
    let arrow = |s: usize, t: usize| ArrId(2 * s + t);
    let arrows = (0..4)
        .map(|i| {
            let (s, t) = (i / 2, i % 2);
            Arrow {
                name: format!("{}>{}", ["I", "u"][s], ["I", "u"][t]),
                src: ObjId(s),
                tgt: ObjId(t),
            }
        })
        .collect();
    let base = FiniteGroupoid::from_fn(objects, arrows, vec![arrow(0, 0), arrow(1, 1)], |h, g| {
        arrow(g.0 / 2, h.0 % 2)
    })
    .expect("codiscrete groupoid");
    let tensor_obj = (0..4).map(|i| ObjId((i / 2) | (i % 2))).collect();
    let tensor_arr = (0..16)
        .map(|i| {
            let (g, h) = (i / 4, i % 4);
            arrow((g / 2) | (h / 2), (g % 2) | (h % 2))
        })
        .collect();
    let id = |x: usize| arrow(x, x);
    let tables = TwoGroupTables {
        tensor_obj,
        tensor_arr,
        unit: ObjId(0),
        assoc: (0..8)
            .map(|i| id((i / 4) | ((i / 2) % 2) | (i % 2)))
            .collect(),
        lunit: vec![id(0), id(1)],
        runit: vec![id(0), id(1)],
        bar: vec![ObjId(0), ObjId(1)],
        adj_d: vec![id(0), arrow(0, 1)],
        adj_e: vec![id(0), arrow(1, 0)],
    };
    CoherentTwoGroup::new(base, tables).expect("codiscrete tables are well typed")
}

/// Delooping of `ℤ/3` with trivial associator, `d`, `e`, and
/// `ℓ = r = 1`: semistrict with a nontrivial unit constraint.
pub fn unit_twisted_z3() -> CoherentTwoGroup {
    let z3 = GroupTable::cyclic(3);
    let base = FiniteGroupoid::delooping(&z3);
    let tables = TwoGroupTables {
        tensor_obj: vec![ObjId(0)],
        tensor_arr: (0..9).map(|i| ArrId((i / 3 + i % 3) % 3)).collect(),
        unit: ObjId(0),
        assoc: vec![ArrId(0)],
        lunit: vec![ArrId(1)],
        runit: vec![ArrId(1)],
        bar: vec![ObjId(0)],
        adj_d: vec![ArrId(0)],
        adj_e: vec![ArrId(0)],
    };
    CoherentTwoGroup::new(base, tables).expect("delooping tables are well typed")
}

/// Every coherent catalog 2-group, by name.
pub fn coherent_two_groups() -> Vec<(String, CoherentTwoGroup)> {
    let mut out: Vec<(String, CoherentTwoGroup)> = crossed_modules()
        .into_iter()
        .map(|(n, x)| (format!("{n}_strict"), strict(&x).to_coherent()))
        .collect();
    out.push(("t_omega".into(), t_omega()));
    out.push(("monoid_objects".into(), monoid_objects()));
    out.push(("unit_twisted_z3".into(), unit_twisted_z3()));
    out
}

fn cayley(
    generators: &[&str],
    relators: &[&str],
    grp: GroupTable,
    images: &[&str],
) -> EquivariantComplex {
    let p = Presentation::parse(generators, relators).expect("catalog relators parse");
    let images: Vec<usize> = images
        .iter()
        .map(|n| grp.index_of(n).expect("catalog generator image"))
        .collect();
    cayley_complex(&p, &grp, &images, 10_000).expect("catalog presentations are correct")
}

/// `⟨a | a²⟩` over `ℤ/2`.
pub fn cayley_z2() -> EquivariantComplex {
    cayley(&["a"], &["a^2"], GroupTable::cyclic(2), &["1"])
}

/// `⟨a | a³⟩` over `ℤ/3`.
pub fn cayley_z3() -> EquivariantComplex {
    cayley(&["a"], &["a^3"], GroupTable::cyclic(3), &["1"])
}

/// `⟨a,b | a², b², (ab)²⟩` over `ℤ/2×ℤ/2`.
pub fn cayley_z2xz2() -> EquivariantComplex {
    cayley(
        &["a", "b"],
        &["a^2", "b^2", "(ab)^2"],
        klein(),
        &["(1,0)", "(0,1)"],
    )
}

/// `⟨a,b | a², b³, (ab)²⟩` over `S₃`.
pub fn cayley_s3() -> EquivariantComplex {
    cayley(
        &["a", "b"],
        &["a^2", "b^3", "(ab)^2"],
        GroupTable::symmetric(3),
        &["(12)", "(123)"],
    )
}

pub fn complexes() -> Vec<(&'static str, EquivariantComplex)> {
    vec![
        ("cayley_z2", cayley_z2()),
        ("cayley_z3", cayley_z3()),
        ("cayley_z2xz2", cayley_z2xz2()),
        ("cayley_s3", cayley_s3()),
    ]
}

/// Every catalog item as `(file name, JSON document)`, in a fixed order.
pub fn files() -> Vec<(String, String)> {
    use crate::format::*;
    let mut out = Vec::new();
    for (name, x) in crossed_modules() {
        out.push((format!("{name}.json"), crossed_module_to_json(&x)));
    }
    out.push((
        "broken_boundary.json".into(),
        crossed_module_to_json(&broken_boundary()),
    ));
    out.push((
        "broken_pfeiffer.json".into(),
        crossed_module_to_json(&broken_pfeiffer()),
    ));
    for (name, t) in coherent_two_groups() {
        out.push((format!("{name}.json"), two_group_to_json(&t)));
    }
    out.push((
        "t_omega_tampered.json".into(),
        two_group_to_json(&t_omega_tampered()),
    ));
    for (name, c) in complexes() {
        out.push((format!("{name}.json"), complex_to_json(&c)));
    }
    let z2 = FiniteGroupoid::delooping(&GroupTable::cyclic(2));
    out.push(("delooping_z2.json".into(), groupoid_to_json(&z2)));
    let xm1_groupoid = xm1().translation_groupoid().expect("xm1 is valid");
    out.push(("xm1_groupoid.json".into(), groupoid_to_json(&xm1_groupoid)));
    out.push((
        "xm1_identity_bibundle.json".into(),
        bibundle_to_json(&crate::bibundle::identity_bibundle(&xm1_groupoid)),
    ));
    let interval = crate::simplicial::PartialGroup::integer_interval(1);
    out.push((
        "interval_nerve.json".into(),
        simplicial_to_json(&crate::simplicial::nerve_of_partial_group(&interval, 2)),
    ));
    out.sort();
    out
}
