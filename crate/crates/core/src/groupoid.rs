//! Finite groupoids, functors between them, natural transformations and
//! isomorphism search.
//!
//! Composition is written `comp(h, g)` and means "first `g`, then `h`".
//! Objects and arrows are dense indices in input order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::group::GroupTable;
use crate::report::{Check, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "obj#{}", self.0)
    }
}

impl fmt::Display for ArrId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arr#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    comp: Vec<Option<ArrId>>,
    ident: Vec<ArrId>,
    inv: Vec<ArrId>,
    obj_index: HashMap<String, ObjId>,
    arr_index: HashMap<String, ArrId>,
}

impl FiniteGroupoid {
    /// Assembles a groupoid from raw tables. Only well-formedness is
    /// checked here (names unique, ids in range, tables total, no
    /// conflicting composition entries); the axioms are left to
    /// [`validate_groupoid`].
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        comp: impl IntoIterator<Item = (ArrId, ArrId, ArrId)>,
        ident: Vec<ArrId>,
        inv: Vec<ArrId>,
    ) -> Result<Self, Vec<String>> {
        let mut errors = Vec::new();
        let mut obj_index = HashMap::new();
        for (i, name) in objects.iter().enumerate() {
            if obj_index.insert(name.clone(), ObjId(i)).is_some() {
                errors.push(format!("duplicate object `{name}`"));
            }
        }
        let mut arr_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if arr_index.insert(a.name.clone(), ArrId(i)).is_some() {
                errors.push(format!("duplicate arrow `{}`", a.name));
            }
            if a.src.0 >= objects.len() || a.tgt.0 >= objects.len() {
                errors.push(format!("arrow `{}` has a dangling endpoint", a.name));
            }
        }
        let m = arrows.len();
        let mut table = vec![None; m * m];
        for (h, g, r) in comp {
            if h.0 >= m || g.0 >= m || r.0 >= m {
                errors.push(format!(
                    "composition entry ({}, {}, {}) out of range",
                    h.0, g.0, r.0
                ));
                continue;
            }
            match table[h.0 * m + g.0] {
                Some(prev) if prev != r => errors.push(format!(
                    "conflicting composition entries for ({}, {})",
                    arrows[h.0].name, arrows[g.0].name
                )),
                _ => table[h.0 * m + g.0] = Some(r),
            }
        }
        if ident.len() != objects.len() {
            errors.push(format!(
                "identity table has {} entries for {} objects",
                ident.len(),
                objects.len()
            ));
        }
        if inv.len() != m {
            errors.push(format!(
                "inverse table has {} entries for {} arrows",
                inv.len(),
                m
            ));
        }
        if ident.iter().chain(inv.iter()).any(|a| a.0 >= m) {
            errors.push("identity or inverse table refers to a missing arrow".to_string());
        }
        if errors.is_empty() {
            Ok(FiniteGroupoid {
                objects,
                arrows,
                comp: table,
                ident,
                inv,
                obj_index,
                arr_index,
            })
        } else {
            Err(errors)
        }
    }

    /// Builds a groupoid from a composition rule. `compose(h, g)` is only
    /// called on composable pairs; inverses are found by search.
    pub fn from_fn(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        ident: Vec<ArrId>,
        compose: impl Fn(ArrId, ArrId) -> ArrId,
    ) -> Result<Self, Vec<String>> {
        let m = arrows.len();
        let mut entries = Vec::new();
        for h in 0..m {
            for g in 0..m {
                if arrows[g].tgt == arrows[h].src {
                    entries.push((ArrId(h), ArrId(g), compose(ArrId(h), ArrId(g))));
                }
            }
        }
        let lookup: HashMap<(usize, usize), ArrId> =
            entries.iter().map(|&(h, g, r)| ((h.0, g.0), r)).collect();
        let mut inv = Vec::with_capacity(m);
        let mut errors = Vec::new();
        for g in 0..m {
            let (s, t) = (arrows[g].src, arrows[g].tgt);
            let found = (0..m).find(|&h| {
                lookup.get(&(h, g)) == Some(&ident[s.0]) && lookup.get(&(g, h)) == Some(&ident[t.0])
            });
            match found {
                Some(h) => inv.push(ArrId(h)),
                None => {
                    errors.push(format!("arrow `{}` has no inverse", arrows[g].name));
                    inv.push(ArrId(g));
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        Self::from_parts(objects, arrows, entries, ident, inv)
    }

    /// One-object groupoid of a group. Composition is diagrammatic:
    /// `comp(h, g) = g·h`, so a composable string (g₁, …, gₙ) composes to
    /// the product g₁⋯gₙ.
    pub fn delooping(group: &GroupTable) -> Self {
        let arrows = group
            .elements()
            .map(|g| Arrow {
                name: group.name(g).to_string(),
                src: ObjId(0),
                tgt: ObjId(0),
            })
            .collect();
        Self::from_fn(
            vec!["*".to_string()],
            arrows,
            vec![ArrId(group.identity())],
            |h, g| ArrId(group.mul(g.0, h.0)),
        )
        .expect("delooping of a group is a groupoid")
    }

    /// Groupoid with only identity arrows, named `id_<object>`.
    pub fn discrete(objects: Vec<String>) -> Self {
        let arrows = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Arrow {
                name: format!("id_{o}"),
                src: ObjId(i),
                tgt: ObjId(i),
            })
            .collect();
        let ident = (0..objects.len()).map(ArrId).collect();
        Self::from_fn(objects, arrows, ident, |h, _| h).expect("discrete groupoid")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl DoubleEndedIterator<Item = ObjId> + ExactSizeIterator + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn arrows(&self) -> impl DoubleEndedIterator<Item = ArrId> + ExactSizeIterator + '_ {
        (0..self.arrows.len()).map(ArrId)
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, g: ArrId) -> &Arrow {
        &self.arrows[g.0]
    }

    pub fn arrow_name(&self, g: ArrId) -> &str {
        &self.arrows[g.0].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrId> {
        self.arr_index.get(name).copied()
    }

    #[inline]
    pub fn src(&self, g: ArrId) -> ObjId {
        self.arrows[g.0].src
    }

    #[inline]
    pub fn tgt(&self, g: ArrId) -> ObjId {
        self.arrows[g.0].tgt
    }

    /// `h ∘ g`, if the table defines it.
    #[inline]
    pub fn comp(&self, h: ArrId, g: ArrId) -> Option<ArrId> {
        self.comp[h.0 * self.arrows.len() + g.0]
    }

    /// Composes a path given in application order (first element first).
    pub fn comp_path(&self, path: &[ArrId]) -> Option<ArrId> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &h| self.comp(h, acc))
    }

    #[inline]
    pub fn ident(&self, x: ObjId) -> ArrId {
        self.ident[x.0]
    }

    #[inline]
    pub fn inv(&self, g: ArrId) -> ArrId {
        self.inv[g.0]
    }

    pub fn is_identity(&self, g: ArrId) -> bool {
        self.src(g) == self.tgt(g) && self.ident(self.src(g)) == g
    }

    /// Defined composition entries as `(h, g, h∘g)`.
    pub fn composition_entries(&self) -> impl Iterator<Item = (ArrId, ArrId, ArrId)> + '_ {
        let m = self.arrows.len();
        self.comp
            .iter()
            .enumerate()
            .filter_map(move |(k, r)| r.map(|r| (ArrId(k / m), ArrId(k % m), r)))
    }

    pub fn hom_set(&self, x: ObjId, y: ObjId) -> Vec<ArrId> {
        self.arrows()
            .filter(|&g| self.src(g) == x && self.tgt(g) == y)
            .collect()
    }

    /// Composable pairs `(g, h)` with `tgt(g) = src(h)`, i.e. `h ∘ g` makes sense.
    pub fn composable_pairs(&self) -> Vec<(ArrId, ArrId)> {
        let mut out = Vec::new();
        for g in self.arrows() {
            for h in self.arrows() {
                if self.tgt(g) == self.src(h) {
                    out.push((g, h));
                }
            }
        }
        out
    }

    /// Connected components, each listed in canonical order, ordered by
    /// their least object.
    pub fn components(&self) -> Vec<Vec<ObjId>> {
        let n = self.objects.len();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.src.0].push(a.tgt.0);
            adj[a.tgt.0].push(a.src.0);
        }
        let mut comp_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<ObjId>> = Vec::new();
        for start in 0..n {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![];
            let mut queue = VecDeque::from([start]);
            comp_of[start] = id;
            while let Some(x) = queue.pop_front() {
                members.push(ObjId(x));
                for &y in &adj[x] {
                    if comp_of[y] == usize::MAX {
                        comp_of[y] = id;
                        queue.push_back(y);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// Spanning tree of the component of `root`: for each reachable object
    /// an arrow `root → x` (identity at the root).
    pub fn tree_arrows(&self, root: ObjId) -> HashMap<ObjId, ArrId> {
        let mut tree = HashMap::from([(root, self.ident(root))]);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for g in self.arrows() {
                let (s, t) = (self.src(g), self.tgt(g));
                if s == x && !tree.contains_key(&t) {
                    if let Some(path) = self.comp(g, tree[&x]) {
                        tree.insert(t, path);
                        queue.push_back(t);
                    }
                }
            }
        }
        tree
    }

    /// The automorphism group of `x` under composition (`a·b = a ∘ b`),
    /// together with the arrow behind each group element.
    pub fn vertex_group(&self, x: ObjId) -> (GroupTable, Vec<ArrId>) {
        let autos = self.hom_set(x, x);
        let pos: HashMap<ArrId, usize> = autos.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let names = autos
            .iter()
            .map(|&a| self.arrow_name(a).to_string())
            .collect();
        let group = GroupTable::from_fn(names, |a, b| {
            let c = self
                .comp(autos[a], autos[b])
                .expect("automorphisms compose");
            pos[&c]
        })
        .expect("vertex group of a valid groupoid");
        (group, autos)
    }

    /// Full subgroupoid on `objs`, with its inclusion functor.
    pub fn full_subgroupoid(&self, objs: &[ObjId]) -> (FiniteGroupoid, GroupoidHom) {
        let obj_pos: HashMap<ObjId, usize> =
            objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let kept: Vec<ArrId> = self
            .arrows()
            .filter(|&g| obj_pos.contains_key(&self.src(g)) && obj_pos.contains_key(&self.tgt(g)))
            .collect();
        let arr_pos: HashMap<ArrId, usize> =
            kept.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let objects = objs
            .iter()
            .map(|&x| self.object_name(x).to_string())
            .collect();
        let arrows = kept
            .iter()
            .map(|&g| Arrow {
                name: self.arrow_name(g).to_string(),
                src: ObjId(obj_pos[&self.src(g)]),
                tgt: ObjId(obj_pos[&self.tgt(g)]),
            })
            .collect();
        let ident = objs
            .iter()
            .map(|&x| ArrId(arr_pos[&self.ident(x)]))
            .collect();
        let sub = FiniteGroupoid::from_fn(objects, arrows, ident, |h, g| {
            ArrId(
                arr_pos[&self
                    .comp(kept[h.0], kept[g.0])
                    .expect("composable in the ambient groupoid")],
            )
        })
        .expect("full subgroupoid of a valid groupoid");
        let inclusion = GroupoidHom {
            obj_map: objs.to_vec(),
            arr_map: kept,
        };
        (sub, inclusion)
    }

    /// A copy with objects and arrows reordered and renamed with `prefix`.
    /// `obj_order[i]` is the old object placed at position `i`.
    pub fn permuted(
        &self,
        obj_order: &[ObjId],
        arr_order: &[ArrId],
        prefix: &str,
    ) -> FiniteGroupoid {
        let mut obj_new = vec![ObjId(0); self.object_count()];
        for (i, &x) in obj_order.iter().enumerate() {
            obj_new[x.0] = ObjId(i);
        }
        let mut arr_new = vec![ArrId(0); self.arrow_count()];
        for (i, &g) in arr_order.iter().enumerate() {
            arr_new[g.0] = ArrId(i);
        }
        let objects = obj_order
            .iter()
            .map(|&x| format!("{prefix}{}", self.object_name(x)))
            .collect();
        let arrows = arr_order
            .iter()
            .map(|&g| Arrow {
                name: format!("{prefix}{}", self.arrow_name(g)),
                src: obj_new[self.src(g).0],
                tgt: obj_new[self.tgt(g).0],
            })
            .collect();
        let comp = self
            .composition_entries()
            .map(|(h, g, r)| (arr_new[h.0], arr_new[g.0], arr_new[r.0]));
        let ident = obj_order
            .iter()
            .map(|&x| arr_new[self.ident(x).0])
            .collect();
        let inv = arr_order.iter().map(|&g| arr_new[self.inv(g).0]).collect();
        FiniteGroupoid::from_parts(objects, arrows, comp, ident, inv)
            .expect("permutation of a well-formed groupoid")
    }
}

/// Checks the groupoid axioms by direct enumeration.
pub fn validate_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let mut report = ValidationReport::new();
    let name = |a: ArrId| g.arrow_name(a).to_string();

    let mut domain = Check::new("composition-domain");
    let mut endpoints = Check::new("composition-endpoints");
    for h in g.arrows() {
        for f in g.arrows() {
            let composable = g.tgt(f) == g.src(h);
            match g.comp(h, f) {
                Some(r) => {
                    domain.expect(composable, || [name(h), name(f)]);
                    if composable {
                        endpoints.expect(g.src(r) == g.src(f) && g.tgt(r) == g.tgt(h), || {
                            [name(h), name(f)]
                        });
                    }
                }
                None => domain.expect(!composable, || [name(h), name(f)]),
            }
        }
    }

    let mut assoc = Check::new("associativity");
    for f in g.arrows() {
        for gg in g.arrows().filter(|&x| g.src(x) == g.tgt(f)) {
            for h in g.arrows().filter(|&x| g.src(x) == g.tgt(gg)) {
                let left = g.comp(gg, f).and_then(|gf| g.comp(h, gf));
                let right = g.comp(h, gg).and_then(|hg| g.comp(hg, f));
                assoc.expect(left.is_some() && left == right, || {
                    [name(f), name(gg), name(h)]
                });
            }
        }
    }

    let mut identity = Check::new("identity");
    for x in g.objects() {
        let id = g.ident(x);
        if g.src(id) != x || g.tgt(id) != x {
            identity.fail([g.object_name(x).to_string()]);
            continue;
        }
        for f in g.arrows() {
            if g.tgt(f) == x {
                identity.expect(g.comp(id, f) == Some(f), || {
                    [g.object_name(x).to_string(), name(f)]
                });
            }
            if g.src(f) == x {
                identity.expect(g.comp(f, id) == Some(f), || {
                    [g.object_name(x).to_string(), name(f)]
                });
            }
        }
    }

    let mut inverse = Check::new("inverse");
    for f in g.arrows() {
        let i = g.inv(f);
        let ok = g.src(i) == g.tgt(f)
            && g.tgt(i) == g.src(f)
            && g.comp(i, f) == Some(g.ident(g.src(f)))
            && g.comp(f, i) == Some(g.ident(g.tgt(f)));
        inverse.expect(ok, || [name(f)]);
    }

    for c in [domain, endpoints, assoc, identity, inverse] {
        report.push(c);
    }
    report
}

/// A functor between finite groupoids, given by its object and arrow tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidHom {
    pub obj_map: Vec<ObjId>,
    pub arr_map: Vec<ArrId>,
}

impl GroupoidHom {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidHom {
            obj_map: g.objects().collect(),
            arr_map: g.arrows().collect(),
        }
    }

    #[inline]
    pub fn on_obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x.0]
    }

    #[inline]
    pub fn on_arr(&self, g: ArrId) -> ArrId {
        self.arr_map[g.0]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &GroupoidHom) -> GroupoidHom {
        GroupoidHom {
            obj_map: first.obj_map.iter().map(|&x| self.on_obj(x)).collect(),
            arr_map: first.arr_map.iter().map(|&g| self.on_arr(g)).collect(),
        }
    }

    pub fn is_bijective(&self, dst: &FiniteGroupoid) -> bool {
        is_permutation(self.obj_map.iter().map(|x| x.0), dst.object_count())
            && is_permutation(self.arr_map.iter().map(|g| g.0), dst.arrow_count())
    }

    pub fn inverse(&self, dst: &FiniteGroupoid) -> Option<GroupoidHom> {
        if !self.is_bijective(dst) {
            return None;
        }
        let mut obj_map = vec![ObjId(0); dst.object_count()];
        for (i, &x) in self.obj_map.iter().enumerate() {
            obj_map[x.0] = ObjId(i);
        }
        let mut arr_map = vec![ArrId(0); dst.arrow_count()];
        for (i, &g) in self.arr_map.iter().enumerate() {
            arr_map[g.0] = ArrId(i);
        }
        Some(GroupoidHom { obj_map, arr_map })
    }

    /// Checks that this is a functor `src → dst`.
    pub fn check_functor(&self, src: &FiniteGroupoid, dst: &FiniteGroupoid) -> ValidationReport {
        if self.obj_map.len() != src.object_count() || self.arr_map.len() != src.arrow_count() {
            return ValidationReport::structural(vec![
                "functor tables do not match the source groupoid".into(),
            ]);
        }
        if self.obj_map.iter().any(|x| x.0 >= dst.object_count())
            || self.arr_map.iter().any(|g| g.0 >= dst.arrow_count())
        {
            return ValidationReport::structural(vec![
                "functor tables point outside the target groupoid".into(),
            ]);
        }
        let mut report = ValidationReport::new();
        let mut ends = Check::new("endpoints");
        for g in src.arrows() {
            let fg = self.on_arr(g);
            ends.expect(
                dst.src(fg) == self.on_obj(src.src(g)) && dst.tgt(fg) == self.on_obj(src.tgt(g)),
                || [src.arrow_name(g).to_string()],
            );
        }
        let mut ids = Check::new("identities");
        for x in src.objects() {
            ids.expect(
                self.on_arr(src.ident(x)) == dst.ident(self.on_obj(x)),
                || [src.object_name(x).to_string()],
            );
        }
        let mut comp = Check::new("composition");
        for (g, h) in src.composable_pairs() {
            let lhs = src.comp(h, g).map(|hg| self.on_arr(hg));
            let rhs = dst.comp(self.on_arr(h), self.on_arr(g));
            comp.expect(lhs.is_some() && lhs == rhs, || {
                [src.arrow_name(g).to_string(), src.arrow_name(h).to_string()]
            });
        }
        report.push(ends);
        report.push(ids);
        report.push(comp);
        report
    }
}

fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut hit = vec![false; n];
    let mut count = 0;
    for i in it {
        if i >= n || hit[i] {
            return false;
        }
        hit[i] = true;
        count += 1;
    }
    count == n
}

/// A natural transformation `F ⇒ G`, one component per source object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransform {
    pub component: Vec<ArrId>,
}

impl NatTransform {
    /// Checks `component(x): F(x) → G(x)` and the naturality squares
    /// `G(g) ∘ η_x = η_y ∘ F(g)`.
    pub fn check(
        &self,
        f: &GroupoidHom,
        g: &GroupoidHom,
        src: &FiniteGroupoid,
        dst: &FiniteGroupoid,
    ) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.component.len() != src.object_count() {
            report
                .structural
                .push("component table does not match the source groupoid".into());
            return report;
        }
        let mut typing = Check::new("component-endpoints");
        for x in src.objects() {
            let eta = self.component[x.0];
            typing.expect(
                dst.src(eta) == f.on_obj(x) && dst.tgt(eta) == g.on_obj(x),
                || [src.object_name(x).to_string()],
            );
        }
        let mut natural = Check::new("naturality");
        for a in src.arrows() {
            let (x, y) = (src.src(a), src.tgt(a));
            let lhs = dst.comp(g.on_arr(a), self.component[x.0]);
            let rhs = dst.comp(self.component[y.0], f.on_arr(a));
            natural.expect(lhs.is_some() && lhs == rhs, || {
                [src.arrow_name(a).to_string()]
            });
        }
        report.push(typing);
        report.push(natural);
        report
    }
}

/// Searches for a natural isomorphism `F ⇒ G` between functors
/// `src → dst`. On each component the root component is chosen in
/// canonical order and the rest is forced along a spanning tree.
pub fn find_natural_isomorphism(
    f: &GroupoidHom,
    g: &GroupoidHom,
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
) -> Option<NatTransform> {
    let mut component = vec![ArrId(usize::MAX); src.object_count()];
    for comp in src.components() {
        let root = comp[0];
        let tree = src.tree_arrows(root);
        let mut found = false;
        for eta_root in dst.hom_set(f.on_obj(root), g.on_obj(root)) {
            // η_x = G(t_x) ∘ η_r ∘ F(t_x)⁻¹
            let mut ok = true;
            for &x in &comp {
                let t = tree[&x];
                let eta = dst
                    .comp(eta_root, dst.inv(f.on_arr(t)))
                    .and_then(|e| dst.comp(g.on_arr(t), e));
                match eta {
                    Some(e) => component[x.0] = e,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && comp_is_natural(&component, f, g, src, dst, &comp) {
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    Some(NatTransform { component })
}

fn comp_is_natural(
    component: &[ArrId],
    f: &GroupoidHom,
    g: &GroupoidHom,
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    objs: &[ObjId],
) -> bool {
    src.arrows()
        .filter(|&a| objs.contains(&src.src(a)))
        .all(|a| {
            let (x, y) = (src.src(a), src.tgt(a));
            let lhs = dst.comp(g.on_arr(a), component[x.0]);
            lhs.is_some() && lhs == dst.comp(component[y.0], f.on_arr(a))
        })
}

/// Searches for an isomorphism of groupoids `a → b`.
///
/// Components are matched in canonical order by size and vertex group. In
/// a matched pair the roots correspond, the vertex groups are identified
/// by the first group isomorphism found, and tree arrows go to tree
/// arrows. Every other arrow `g: x → y` is sent through its
/// decomposition `t_y ∘ (t_y⁻¹ g t_x) ∘ t_x⁻¹`. The result is checked to
/// be a bijective functor before it is returned.
pub fn find_isomorphism(a: &FiniteGroupoid, b: &FiniteGroupoid) -> Option<GroupoidHom> {
    if a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count() {
        return None;
    }
    let comps_a = a.components();
    let comps_b = b.components();
    if comps_a.len() != comps_b.len() {
        return None;
    }
    let groups_b: Vec<(GroupTable, Vec<ArrId>)> =
        comps_b.iter().map(|c| b.vertex_group(c[0])).collect();
    let mut used = vec![false; comps_b.len()];
    let mut obj_map = vec![ObjId(usize::MAX); a.object_count()];
    let mut arr_map = vec![ArrId(usize::MAX); a.arrow_count()];

    for ca in &comps_a {
        let (ga, autos_a) = a.vertex_group(ca[0]);
        let mut matched = None;
        for (k, cb) in comps_b.iter().enumerate() {
            if used[k] || cb.len() != ca.len() || groups_b[k].0.order() != ga.order() {
                continue;
            }
            if let Some(iso) = ga.find_isomorphism(&groups_b[k].0) {
                matched = Some((k, iso));
                break;
            }
        }
        let (k, iso) = matched?;
        used[k] = true;
        let cb = &comps_b[k];
        let autos_b = &groups_b[k].1;
        let tree_a = a.tree_arrows(ca[0]);
        let tree_b = b.tree_arrows(cb[0]);
        for (&x, &y) in ca.iter().zip(cb) {
            obj_map[x.0] = y;
        }
        let auto_pos: HashMap<ArrId, usize> =
            autos_a.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        for g in a.arrows().filter(|&g| ca.contains(&a.src(g))) {
            let (x, y) = (a.src(g), a.tgt(g));
            // loop at the root: t_y⁻¹ ∘ g ∘ t_x
            let root_loop = a
                .comp(g, tree_a[&x])
                .and_then(|gt| a.comp(a.inv(tree_a[&y]), gt))?;
            let image_loop = autos_b[iso[*auto_pos.get(&root_loop)?]];
            let (fx, fy) = (obj_map[x.0], obj_map[y.0]);
            let image = b
                .comp(image_loop, b.inv(tree_b[&fx]))
                .and_then(|l| b.comp(tree_b[&fy], l))?;
            arr_map[g.0] = image;
        }
    }
    let hom = GroupoidHom { obj_map, arr_map };
    (hom.is_bijective(b) && hom.check_functor(a, b).is_valid()).then_some(hom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> FiniteGroupoid {
        FiniteGroupoid::delooping(&GroupTable::cyclic(3))
    }

    #[test]
    fn delooping_is_valid() {
        let g = z3();
        assert!(validate_groupoid(&g).is_valid());
        assert_eq!(g.arrow_count(), 3);
        // diagrammatic order: first 1 then 2 gives 1+2
        assert_eq!(g.comp(ArrId(2), ArrId(1)), Some(ArrId(0)));
    }

    #[test]
    fn broken_inverse_is_reported_with_witness() {
        let g = z3();
        let mut inv: Vec<ArrId> = g.arrows().map(|a| g.inv(a)).collect();
        inv[1] = ArrId(1);
        let broken = FiniteGroupoid::from_parts(
            g.object_names().to_vec(),
            g.arrows().map(|a| g.arrow(a).clone()).collect(),
            g.composition_entries().collect::<Vec<_>>(),
            vec![g.ident(ObjId(0))],
            inv,
        )
        .unwrap();
        let report = validate_groupoid(&broken);
        let check = report.check("inverse").unwrap();
        assert_eq!(check.violations, 1);
        assert!(check.has_witness(&["1"]));
        assert!(report.check("associativity").unwrap().passed());
    }

    #[test]
    fn dangling_ids_are_structural() {
        let err = FiniteGroupoid::from_parts(
            vec!["x".into()],
            vec![Arrow {
                name: "f".into(),
                src: ObjId(0),
                tgt: ObjId(3),
            }],
            vec![],
            vec![ArrId(0)],
            vec![ArrId(0)],
        )
        .unwrap_err();
        assert!(err[0].contains("dangling"));
    }

    #[test]
    fn identity_iso_and_nonisomorphic_groups() {
        let g = z3();
        let iso = find_isomorphism(&g, &g).unwrap();
        assert_eq!(iso, GroupoidHom::identity(&g));

        let z4 = FiniteGroupoid::delooping(&GroupTable::cyclic(4));
        let v4 = FiniteGroupoid::delooping(&GroupTable::direct_product(
            &GroupTable::cyclic(2),
            &GroupTable::cyclic(2),
        ));
        assert!(find_isomorphism(&z4, &v4).is_none());
        assert!(find_isomorphism(&v4, &z4).is_none());
    }

    #[test]
    fn discrete_groupoid_components() {
        let d = FiniteGroupoid::discrete(vec!["a".into(), "b".into(), "c".into()]);
        assert!(validate_groupoid(&d).is_valid());
        assert_eq!(d.components().len(), 3);
    }

    #[test]
    fn natural_iso_identity_to_itself() {
        let g = z3();
        let id = GroupoidHom::identity(&g);
        let eta = find_natural_isomorphism(&id, &id, &g, &g).unwrap();
        assert!(eta.check(&id, &id, &g, &g).is_valid());
        assert_eq!(eta.component, vec![g.ident(ObjId(0))]);
    }
}
