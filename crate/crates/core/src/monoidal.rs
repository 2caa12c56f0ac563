//! Coherent and strict 2-groups on finite groupoids.
//!
//! Constraint conventions:
//!
//! * associator `a_{x,y,z}: x⊗(y⊗z) → (x⊗y)⊗z`
//! * `lunit` `ℓ_x: x⊗𝕀 → x` and `runit` `r_x: 𝕀⊗x → x`
//! * adjunction data `d_x: 𝕀 → x⊗x̄` and `e_x: x̄⊗x → 𝕀`

use thiserror::Error;

use crate::group::{GroupError, GroupTable};
use crate::groupoid::{validate_groupoid, ArrId, FiniteGroupoid, GroupoidHom, ObjId};
use crate::report::{Check, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoGroupError {
    #[error("ill-formed 2-group data: {}", .0.join("; "))]
    Structure(Vec<String>),
    #[error("transpose of `{arrow}` does not satisfy its characterization square")]
    TransposeInconsistent { arrow: String },
    #[error("inversion is not a functor: {0}")]
    InversionNotFunctor(String),
    #[error("Aut(𝕀) is not abelian: `{0}` and `{1}` do not commute")]
    NonAbelianIsotropy(String, String),
    #[error("tensor on {what} is not a group: {source}")]
    NotAGroup {
        what: &'static str,
        source: GroupError,
    },
}

/// Raw tables of a coherent 2-group, indexed densely:
/// `tensor_obj[x*n + y]`, `tensor_arr[g*m + h]`,
/// `assoc[(x*n + y)*n + z]`, the rest per object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoGroupTables {
    pub tensor_obj: Vec<ObjId>,
    pub tensor_arr: Vec<ArrId>,
    pub unit: ObjId,
    pub assoc: Vec<ArrId>,
    pub lunit: Vec<ArrId>,
    pub runit: Vec<ArrId>,
    pub bar: Vec<ObjId>,
    pub adj_d: Vec<ArrId>,
    pub adj_e: Vec<ArrId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentTwoGroup {
    base: FiniteGroupoid,
    t: TwoGroupTables,
}

impl CoherentTwoGroup {
    /// Checks table shapes and the endpoints of every tensor and
    /// constraint arrow. Coherence itself is left to [`validate_coherent`].
    pub fn new(base: FiniteGroupoid, t: TwoGroupTables) -> Result<Self, TwoGroupError> {
        let n = base.object_count();
        let m = base.arrow_count();
        let mut errs = Vec::new();
        let shape = |name: &str, len: usize, want: usize, errs: &mut Vec<String>| {
            if len != want {
                errs.push(format!("{name} has {len} entries, expected {want}"));
            }
        };
        shape("tensor_obj", t.tensor_obj.len(), n * n, &mut errs);
        shape("tensor_arr", t.tensor_arr.len(), m * m, &mut errs);
        shape("assoc", t.assoc.len(), n * n * n, &mut errs);
        shape("lunit", t.lunit.len(), n, &mut errs);
        shape("runit", t.runit.len(), n, &mut errs);
        shape("bar", t.bar.len(), n, &mut errs);
        shape("d", t.adj_d.len(), n, &mut errs);
        shape("e", t.adj_e.len(), n, &mut errs);
        let obj_oob = t
            .tensor_obj
            .iter()
            .chain(&t.bar)
            .chain(std::iter::once(&t.unit))
            .any(|x| x.0 >= n);
        let arr_oob = t
            .tensor_arr
            .iter()
            .chain(&t.assoc)
            .chain(&t.lunit)
            .chain(&t.runit)
            .chain(&t.adj_d)
            .chain(&t.adj_e)
            .any(|g| g.0 >= m);
        if obj_oob || arr_oob {
            errs.push("a table refers to a missing object or arrow".into());
        }
        if !errs.is_empty() {
            return Err(TwoGroupError::Structure(errs));
        }
        let tg = CoherentTwoGroup { base, t };
        tg.check_typing()?;
        Ok(tg)
    }

    fn check_typing(&self) -> Result<(), TwoGroupError> {
        let b = &self.base;
        let mut errs = Vec::new();
        let on = |x: ObjId| b.object_name(x).to_string();
        let an = |g: ArrId| b.arrow_name(g).to_string();
        let mut expect = |g: ArrId, s: ObjId, t: ObjId, what: String| {
            if b.src(g) != s || b.tgt(g) != t {
                errs.push(format!(
                    "{what} = `{}` has endpoints {} → {}, expected {} → {}",
                    an(g),
                    on(b.src(g)),
                    on(b.tgt(g)),
                    on(s),
                    on(t)
                ));
            }
        };
        for g in b.arrows() {
            for h in b.arrows() {
                let gh = self.ta(g, h);
                expect(
                    gh,
                    self.to(b.src(g), b.src(h)),
                    self.to(b.tgt(g), b.tgt(h)),
                    format!("{}⊗{}", an(g), an(h)),
                );
            }
        }
        let u = self.unit();
        for x in b.objects() {
            for y in b.objects() {
                for z in b.objects() {
                    expect(
                        self.assoc(x, y, z),
                        self.to(x, self.to(y, z)),
                        self.to(self.to(x, y), z),
                        format!("a[{},{},{}]", on(x), on(y), on(z)),
                    );
                }
            }
            expect(self.lunit(x), self.to(x, u), x, format!("lunit[{}]", on(x)));
            expect(self.runit(x), self.to(u, x), x, format!("runit[{}]", on(x)));
            let xb = self.bar(x);
            expect(self.adj_d(x), u, self.to(x, xb), format!("d[{}]", on(x)));
            expect(self.adj_e(x), self.to(xb, x), u, format!("e[{}]", on(x)));
        }
        if self.bar(u) != u {
            errs.push(format!(
                "bar of the unit is `{}`, expected the unit",
                on(self.bar(u))
            ));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(TwoGroupError::Structure(errs))
        }
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn tables(&self) -> &TwoGroupTables {
        &self.t
    }

    pub fn unit(&self) -> ObjId {
        self.t.unit
    }

    /// `x ⊗ y` on objects.
    #[inline]
    pub fn to(&self, x: ObjId, y: ObjId) -> ObjId {
        self.t.tensor_obj[x.0 * self.base.object_count() + y.0]
    }

    /// `g ⊗ h` on arrows.
    #[inline]
    pub fn ta(&self, g: ArrId, h: ArrId) -> ArrId {
        self.t.tensor_arr[g.0 * self.base.arrow_count() + h.0]
    }

    #[inline]
    pub fn assoc(&self, x: ObjId, y: ObjId, z: ObjId) -> ArrId {
        let n = self.base.object_count();
        self.t.assoc[(x.0 * n + y.0) * n + z.0]
    }

    pub fn lunit(&self, x: ObjId) -> ArrId {
        self.t.lunit[x.0]
    }

    pub fn runit(&self, x: ObjId) -> ArrId {
        self.t.runit[x.0]
    }

    pub fn bar(&self, x: ObjId) -> ObjId {
        self.t.bar[x.0]
    }

    pub fn adj_d(&self, x: ObjId) -> ArrId {
        self.t.adj_d[x.0]
    }

    pub fn adj_e(&self, x: ObjId) -> ArrId {
        self.t.adj_e[x.0]
    }

    #[inline]
    pub fn id(&self, x: ObjId) -> ArrId {
        self.base.ident(x)
    }

    /// Composes arrows in application order.
    fn path(&self, steps: &[ArrId]) -> Option<ArrId> {
        self.base.comp_path(steps)
    }

    /// `ᵗg: ȳ → x̄` for `g: x → y`, by the six-step composite
    /// `r_x̄ ∘ (e_y⊗x̄) ∘ a_{ȳ,y,x̄} ∘ (ȳ⊗(g⊗x̄)) ∘ (ȳ⊗d_x) ∘ ℓ_ȳ⁻¹`,
    /// without the uniqueness verification.
    pub fn transpose_formula(&self, g: ArrId) -> Option<ArrId> {
        let b = &self.base;
        let (x, y) = (b.src(g), b.tgt(g));
        let (xb, yb) = (self.bar(x), self.bar(y));
        self.path(&[
            b.inv(self.lunit(yb)),
            self.ta(self.id(yb), self.adj_d(x)),
            self.ta(self.id(yb), self.ta(g, self.id(xb))),
            self.assoc(yb, y, xb),
            self.ta(self.adj_e(y), self.id(xb)),
            self.runit(xb),
        ])
    }

    /// Whether `h: ȳ → x̄` makes the characterization square of `g`
    /// commute: `e_x ∘ (h⊗x) = e_y ∘ (ȳ⊗g)`.
    pub fn satisfies_characterization(&self, g: ArrId, h: ArrId) -> bool {
        let b = &self.base;
        let (x, y) = (b.src(g), b.tgt(g));
        if b.src(h) != self.bar(y) || b.tgt(h) != self.bar(x) {
            return false;
        }
        let lhs = b.comp(self.adj_e(x), self.ta(h, self.id(x)));
        let rhs = b.comp(self.adj_e(y), self.ta(self.id(self.bar(y)), g));
        lhs.is_some() && lhs == rhs
    }

    /// All arrows `ȳ → x̄` satisfying the characterization square of `g`,
    /// found by exhaustive search over the hom-set.
    pub fn characterization_solutions(&self, g: ArrId) -> Vec<ArrId> {
        let b = &self.base;
        b.hom_set(self.bar(b.tgt(g)), self.bar(b.src(g)))
            .into_iter()
            .filter(|&h| self.satisfies_characterization(g, h))
            .collect()
    }
}

/// Runs every coherence check, collecting all violations.
pub fn validate_coherent(t: &CoherentTwoGroup) -> ValidationReport {
    let b = t.base();
    let mut report = ValidationReport::new();
    report.absorb("groupoid", validate_groupoid(b));
    let on = |x: ObjId| b.object_name(x).to_string();
    let an = |g: ArrId| b.arrow_name(g).to_string();
    let u = t.unit();

    let mut ids = Check::new("tensor-identities");
    for x in b.objects() {
        for y in b.objects() {
            ids.expect(t.ta(t.id(x), t.id(y)) == t.id(t.to(x, y)), || {
                [on(x), on(y)]
            });
        }
    }

    let pairs = b.composable_pairs();
    let mut exchange = Check::new("exchange-law");
    for &(g, g2) in &pairs {
        for &(h, h2) in &pairs {
            let lhs = b
                .comp(g2, g)
                .zip(b.comp(h2, h))
                .map(|(gg, hh)| t.ta(gg, hh));
            let rhs = b.comp(t.ta(g2, h2), t.ta(g, h));
            exchange.expect(lhs.is_some() && lhs == rhs, || {
                [an(g), an(g2), an(h), an(h2)]
            });
        }
    }

    let mut assoc_nat = Check::new("associator-naturality");
    for f in b.arrows() {
        for g in b.arrows() {
            for h in b.arrows() {
                let lhs = b.comp(t.assoc(b.tgt(f), b.tgt(g), b.tgt(h)), t.ta(f, t.ta(g, h)));
                let rhs = b.comp(t.ta(t.ta(f, g), h), t.assoc(b.src(f), b.src(g), b.src(h)));
                assoc_nat.expect(lhs.is_some() && lhs == rhs, || [an(f), an(g), an(h)]);
            }
        }
    }

    let mut lunit_nat = Check::new("lunit-naturality");
    let mut runit_nat = Check::new("runit-naturality");
    for f in b.arrows() {
        let (x, y) = (b.src(f), b.tgt(f));
        let lhs = b.comp(t.lunit(y), t.ta(f, t.id(u)));
        lunit_nat.expect(lhs.is_some() && lhs == b.comp(f, t.lunit(x)), || [an(f)]);
        let lhs = b.comp(t.runit(y), t.ta(t.id(u), f));
        runit_nat.expect(lhs.is_some() && lhs == b.comp(f, t.runit(x)), || [an(f)]);
    }

    let mut pentagon = Check::new("pentagon");
    for w in b.objects() {
        for x in b.objects() {
            for y in b.objects() {
                for z in b.objects() {
                    let lhs = t.path(&[t.assoc(w, x, t.to(y, z)), t.assoc(t.to(w, x), y, z)]);
                    let rhs = t.path(&[
                        t.ta(t.id(w), t.assoc(x, y, z)),
                        t.assoc(w, t.to(x, y), z),
                        t.ta(t.assoc(w, x, y), t.id(z)),
                    ]);
                    pentagon.expect(lhs.is_some() && lhs == rhs, || [on(w), on(x), on(y), on(z)]);
                }
            }
        }
    }

    let mut triangle = Check::new("triangle");
    for x in b.objects() {
        for y in b.objects() {
            let lhs = b.comp(t.ta(t.lunit(x), t.id(y)), t.assoc(x, u, y));
            triangle.expect(
                lhs.is_some() && lhs == Some(t.ta(t.id(x), t.runit(y))),
                || [on(x), on(y)],
            );
        }
    }

    let mut zig = Check::new("zigzag-object");
    let mut zag = Check::new("zigzag-dual");
    for x in b.objects() {
        let xb = t.bar(x);
        let lhs = t.path(&[
            b.inv(t.runit(x)),
            t.ta(t.adj_d(x), t.id(x)),
            b.inv(t.assoc(x, xb, x)),
            t.ta(t.id(x), t.adj_e(x)),
            t.lunit(x),
        ]);
        zig.expect(lhs == Some(t.id(x)), || [on(x)]);
        let lhs = t.path(&[
            b.inv(t.lunit(xb)),
            t.ta(t.id(xb), t.adj_d(x)),
            t.assoc(xb, x, xb),
            t.ta(t.adj_e(x), t.id(xb)),
            t.runit(xb),
        ]);
        zag.expect(lhs == Some(t.id(xb)), || [on(x)]);
    }

    for c in [
        ids, exchange, assoc_nat, lunit_nat, runit_nat, pentagon, triangle, zig, zag,
    ] {
        report.push(c);
    }
    report
}

/// The transpose `ᵗg: ȳ → x̄`, verified against the characterization
/// square.
pub fn transpose(t: &CoherentTwoGroup, g: ArrId) -> Result<ArrId, TwoGroupError> {
    t.transpose_formula(g)
        .filter(|&h| t.satisfies_characterization(g, h))
        .ok_or_else(|| TwoGroupError::TransposeInconsistent {
            arrow: t.base().arrow_name(g).to_string(),
        })
}

/// The inversion functor `x ↦ x̄`, `g ↦ ᵗ(g⁻¹)`.
pub fn inversion_functor(t: &CoherentTwoGroup) -> Result<GroupoidHom, TwoGroupError> {
    let b = t.base();
    let obj_map = b.objects().map(|x| t.bar(x)).collect();
    let arr_map = b
        .arrows()
        .map(|g| transpose(t, b.inv(g)))
        .collect::<Result<_, _>>()?;
    let hom = GroupoidHom { obj_map, arr_map };
    let report = hom.check_functor(b, b);
    let failed = report.failed().next().map(|c| c.name.clone());
    match failed {
        None if report.is_structurally_sound() => Ok(hom),
        Some(name) => Err(TwoGroupError::InversionNotFunctor(name)),
        None => Err(TwoGroupError::InversionNotFunctor(
            report.structural.join("; "),
        )),
    }
}

/// `Aut(𝕀)` under composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitIsotropy {
    pub group: GroupTable,
    /// The arrow behind each group element.
    pub arrows: Vec<ArrId>,
    /// Number of commuting pairs checked (all of them).
    pub commutators_checked: usize,
}

pub fn unit_isotropy(t: &CoherentTwoGroup) -> Result<UnitIsotropy, TwoGroupError> {
    let (group, arrows) = t.base().vertex_group(t.unit());
    if let Some((a, b)) = group.noncommuting_pair() {
        return Err(TwoGroupError::NonAbelianIsotropy(
            group.name(a).to_string(),
            group.name(b).to_string(),
        ));
    }
    let commutators_checked = group.order() * group.order();
    Ok(UnitIsotropy {
        group,
        arrows,
        commutators_checked,
    })
}

/// A group object in finite groupoids: both objects and arrows form groups
/// under `⊗`, element indices being object and arrow ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictTwoGroup {
    base: FiniteGroupoid,
    objects: GroupTable,
    arrows: GroupTable,
}

impl StrictTwoGroup {
    pub fn new(
        base: FiniteGroupoid,
        tensor_obj: impl Fn(ObjId, ObjId) -> ObjId,
        tensor_arr: impl Fn(ArrId, ArrId) -> ArrId,
    ) -> Result<Self, TwoGroupError> {
        let objects = GroupTable::from_fn(base.object_names().to_vec(), |x, y| {
            tensor_obj(ObjId(x), ObjId(y)).0
        })
        .map_err(|source| TwoGroupError::NotAGroup {
            what: "objects",
            source,
        })?;
        let names = base
            .arrows()
            .map(|g| base.arrow_name(g).to_string())
            .collect();
        let arrows = GroupTable::from_fn(names, |g, h| tensor_arr(ArrId(g), ArrId(h)).0).map_err(
            |source| TwoGroupError::NotAGroup {
                what: "arrows",
                source,
            },
        )?;
        Ok(StrictTwoGroup {
            base,
            objects,
            arrows,
        })
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn object_group(&self) -> &GroupTable {
        &self.objects
    }

    pub fn arrow_group(&self) -> &GroupTable {
        &self.arrows
    }

    pub fn unit(&self) -> ObjId {
        ObjId(self.objects.identity())
    }

    #[inline]
    pub fn to(&self, x: ObjId, y: ObjId) -> ObjId {
        ObjId(self.objects.mul(x.0, y.0))
    }

    #[inline]
    pub fn ta(&self, g: ArrId, h: ArrId) -> ArrId {
        ArrId(self.arrows.mul(g.0, h.0))
    }

    pub fn obj_inv(&self, x: ObjId) -> ObjId {
        ObjId(self.objects.inv(x.0))
    }

    pub fn arr_inv(&self, g: ArrId) -> ArrId {
        ArrId(self.arrows.inv(g.0))
    }

    /// The same structure viewed as a coherent 2-group with identity
    /// constraints, `x̄ = x⁻¹` and `d_x = e_x = id_𝕀`.
    pub fn to_coherent(&self) -> CoherentTwoGroup {
        let b = &self.base;
        let n = b.object_count();
        let u = self.unit();
        let objs: Vec<ObjId> = b.objects().collect();
        let tensor_obj = objs
            .iter()
            .flat_map(|&x| objs.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.to(x, y))
            .collect();
        let tensor_arr = b
            .arrows()
            .flat_map(|g| b.arrows().map(move |h| (g, h)))
            .map(|(g, h)| self.ta(g, h))
            .collect();
        let mut assoc = Vec::with_capacity(n * n * n);
        for &x in &objs {
            for &y in &objs {
                for &z in &objs {
                    assoc.push(b.ident(self.to(self.to(x, y), z)));
                }
            }
        }
        let idents: Vec<ArrId> = objs.iter().map(|&x| b.ident(x)).collect();
        let tables = TwoGroupTables {
            tensor_obj,
            tensor_arr,
            unit: u,
            assoc,
            lunit: idents.clone(),
            runit: idents,
            bar: objs.iter().map(|&x| self.obj_inv(x)).collect(),
            adj_d: vec![b.ident(u); n],
            adj_e: vec![b.ident(u); n],
        };
        CoherentTwoGroup::new(b.clone(), tables)
            .expect("strict 2-group has well-typed identity constraints")
    }
}

/// Checks that source, target and identities are group homomorphisms and
/// that `⊗` satisfies the interchange law.
pub fn validate_strict(s: &StrictTwoGroup) -> ValidationReport {
    let b = s.base();
    let mut report = ValidationReport::new();
    report.absorb("groupoid", validate_groupoid(b));
    let an = |g: ArrId| b.arrow_name(g).to_string();
    let mut src = Check::new("source-homomorphism");
    let mut tgt = Check::new("target-homomorphism");
    for g in b.arrows() {
        for h in b.arrows() {
            let gh = s.ta(g, h);
            src.expect(b.src(gh) == s.to(b.src(g), b.src(h)), || [an(g), an(h)]);
            tgt.expect(b.tgt(gh) == s.to(b.tgt(g), b.tgt(h)), || [an(g), an(h)]);
        }
    }
    let mut ids = Check::new("identity-homomorphism");
    for x in b.objects() {
        for y in b.objects() {
            ids.expect(s.ta(b.ident(x), b.ident(y)) == b.ident(s.to(x, y)), || {
                [b.object_name(x).to_string(), b.object_name(y).to_string()]
            });
        }
    }
    let pairs = b.composable_pairs();
    let mut interchange = Check::new("interchange");
    for &(g, g2) in &pairs {
        for &(h, h2) in &pairs {
            let lhs = b.comp(g2, g).zip(b.comp(h2, h)).map(|(a, c)| s.ta(a, c));
            let rhs = b.comp(s.ta(g2, h2), s.ta(g, h));
            interchange.expect(lhs.is_some() && lhs == rhs, || {
                [an(g), an(g2), an(h), an(h2)]
            });
        }
    }
    for c in [src, tgt, ids, interchange] {
        report.push(c);
    }
    report
}

/// Searches for adjunction data `(x̄, d, e)` satisfying both zig-zags when
/// the input does not supply any. The result is the first solution in
/// canonical order and carries no canonical meaning.
pub fn search_adjunction_data(
    base: &FiniteGroupoid,
    tables: &TwoGroupTables,
) -> Option<(Vec<ObjId>, Vec<ArrId>, Vec<ArrId>)> {
    let u = tables.unit;
    let mut bar = Vec::new();
    let mut ds = Vec::new();
    let mut es = Vec::new();
    let n = base.object_count();
    let m = base.arrow_count();
    let to = |x: ObjId, y: ObjId| tables.tensor_obj[x.0 * n + y.0];
    let ta = |g: ArrId, h: ArrId| tables.tensor_arr[g.0 * m + h.0];
    let assoc = |x: ObjId, y: ObjId, z: ObjId| tables.assoc[(x.0 * n + y.0) * n + z.0];
    for x in base.objects() {
        let mut found = None;
        let candidates: Vec<ObjId> = if x == u {
            vec![u]
        } else {
            base.objects().collect()
        };
        'search: for xb in candidates {
            for d in base.hom_set(u, to(x, xb)) {
                for e in base.hom_set(to(xb, x), u) {
                    let zig = base.comp_path(&[
                        base.inv(tables.runit[x.0]),
                        ta(d, base.ident(x)),
                        base.inv(assoc(x, xb, x)),
                        ta(base.ident(x), e),
                        tables.lunit[x.0],
                    ]);
                    let zag = base.comp_path(&[
                        base.inv(tables.lunit[xb.0]),
                        ta(base.ident(xb), d),
                        assoc(xb, x, xb),
                        ta(e, base.ident(xb)),
                        tables.runit[xb.0],
                    ]);
                    if zig == Some(base.ident(x)) && zag == Some(base.ident(xb)) {
                        found = Some((xb, d, e));
                        break 'search;
                    }
                }
            }
        }
        let (xb, d, e) = found?;
        bar.push(xb);
        ds.push(d);
        es.push(e);
    }
    Some((bar, ds, es))
}
