use twogroup::catalog;
use twogroup::covering::{
    invariance_checks, verify_boundary_iso, BoundaryOptions, CoveringSpace, SimpleConnectivity,
    Verdict,
};
use twogroup::group::GroupTable;
use twogroup::presentation::{parse_word, todd_coxeter};

fn space(c: twogroup::covering::EquivariantComplex) -> CoveringSpace {
    CoveringSpace::new(c).expect("catalog complexes are valid")
}

#[test]
fn cayley_counts() {
    for (c, counts, quotient) in [
        (catalog::cayley_z2(), (2, 2, 2), (1, 1, 1)),
        (catalog::cayley_z3(), (3, 3, 3), (1, 1, 1)),
        (catalog::cayley_z2xz2(), (4, 8, 12), (1, 2, 3)),
        (catalog::cayley_s3(), (6, 12, 18), (1, 2, 3)),
    ] {
        assert_eq!((c.vertices.len(), c.edges.len(), c.cells.len()), counts);
        let s = space(c);
        let q = s.quotient();
        assert_eq!((q.vertices.len(), q.edges.len(), q.cells.len()), quotient);
    }
}

#[test]
fn z3_boundary_values() {
    let s = space(catalog::cayley_z3());
    let a = s.boundary_map(&s.parse_loop(0, "a").unwrap()).unwrap();
    let aa = s.boundary_map(&s.parse_loop(0, "a a").unwrap()).unwrap();
    assert_ne!(a, aa);
    let g = s.gamma();
    assert_eq!(g.mul(a, a), aa);
    assert_eq!(
        s.boundary_map(&s.parse_loop(0, "a^3").unwrap()).unwrap(),
        g.identity()
    );
}

#[test]
fn loops_must_compose_and_close() {
    let s = space(catalog::cayley_z2());
    assert!(s.parse_loop(0, "b").is_err());
}

#[test]
fn presentations_of_quotients() {
    let cases = [
        (catalog::cayley_z2(), vec!["a"], vec!["a^2"]),
        (catalog::cayley_z3(), vec!["a"], vec!["a^3"]),
        (
            catalog::cayley_z2xz2(),
            vec!["a", "b"],
            vec!["a^2", "b^2", "abab"],
        ),
    ];
    for (c, gens, rels) in cases {
        let (p, loops) = space(c).pi1_presentation();
        assert_eq!(p.generators, gens);
        assert_eq!(p.relator_strings(), rels);
        assert_eq!(loops.len(), gens.len());
        let g: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            p.relators[rels.len() - 1],
            parse_word(rels[rels.len() - 1], &g).unwrap()
        );
    }
}

#[test]
fn boundary_iso_certified_on_catalog() {
    for (name, c) in catalog::complexes() {
        let order = c.gamma.order();
        let r = verify_boundary_iso(&space(c), BoundaryOptions::default());
        assert_eq!(r.verdict, Verdict::IsoCertified, "{name}: {r:?}");
        assert_eq!(
            r.injectivity.simple_connectivity,
            SimpleConnectivity::Enumerated
        );
        assert_eq!(r.injectivity.pi1_order, Some(order));
        assert!(r.injectivity.timed_out.is_empty());
        assert!(r.injectivity.kernel_loops > 0);
        assert_eq!(r.witnesses.len(), order);
        assert!(r.witnesses.iter().all(|w| w.element == w.image));
        assert_eq!(r.summary(), format!("iso certified, |Γ|={order}"));
    }
}

#[test]
fn invariance_exhaustive_on_cyclic() {
    for c in [catalog::cayley_z2(), catalog::cayley_z3()] {
        for check in invariance_checks(&space(c), 5) {
            assert!(check.passed(), "{check:?}");
        }
    }
}

#[test]
fn tiny_budget_is_inconclusive() {
    let s = space(catalog::cayley_s3());
    let opts = BoundaryOptions {
        move_budget: 1,
        ..BoundaryOptions::default()
    };
    let r = verify_boundary_iso(&s, opts);
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(!r.injectivity.timed_out.is_empty());
}

#[test]
fn unverified_assertion_is_not_certified() {
    use twogroup::covering::{ComplexEdge, EquivariantComplex};
    let edge = |name: &str, src, tgt| ComplexEdge {
        name: name.into(),
        src,
        tgt,
        label: "a".into(),
    };
    let circle = |asserted| EquivariantComplex {
        vertices: vec!["p".into(), "q".into()],
        edges: vec![edge("e0", 0, 1), edge("e1", 1, 0)],
        cells: vec![],
        gamma: GroupTable::cyclic(2),
        vertex_action: vec![0, 1, 1, 0],
        edge_action: vec![0, 1, 1, 0],
        cell_action: vec![],
        simply_connected_asserted: asserted,
    };
    let opts = BoundaryOptions {
        max_cosets: 200,
        move_budget: 200,
        ..BoundaryOptions::default()
    };
    let r = verify_boundary_iso(&space(circle(true)), opts);
    assert_eq!(
        r.injectivity.simple_connectivity,
        SimpleConnectivity::Asserted
    );
    assert_eq!(r.injectivity.pi1_order, None);
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.homomorphism.passed() && r.surjectivity.passed());
    let r = verify_boundary_iso(&space(circle(false)), opts);
    assert_eq!(
        r.injectivity.simple_connectivity,
        SimpleConnectivity::Unknown
    );
}

#[test]
fn image_over_short_words_is_everything() {
    for (_, c) in catalog::complexes() {
        let order = c.gamma.order();
        let s = space(c);
        let mut hit = vec![false; order];
        for l in s.closed_loops(0, order, true) {
            hit[s.boundary_map(&l).unwrap()] = true;
        }
        assert!(hit.iter().all(|&h| h));
    }
}

#[test]
fn total_complex_is_simply_connected() {
    for (_, c) in catalog::complexes() {
        let t = todd_coxeter(&space(c).total_presentation(), 10_000).unwrap();
        assert_eq!(t.order(), 1);
    }
}

#[test]
fn wrong_presentation_refused() {
    let p = twogroup::presentation::Presentation::parse(&["a"], &["a^4"]).unwrap();
    let err = twogroup::covering::cayley_complex(&p, &GroupTable::cyclic(2), &[1], 1000);
    assert!(err.is_err());
}
