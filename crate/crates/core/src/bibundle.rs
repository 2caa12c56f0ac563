//! Bibundles between finite groupoids.
//!
//! A bibundle `K → K'` is a finite set `E` with moments `J_l: E → K₀`,
//! `J_r: E → K'₀`, a left `K`-action `k·e` defined when `s(k) = J_l(e)`
//! and a right `K'`-action `e·k'` defined when `J_r(e) = t(k')`.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{validate_groupoid, ArrId, FiniteGroupoid, GroupoidHom, ObjId};
use crate::report::{Check, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BibundleError {
    #[error("middle groupoids differ")]
    MismatchedMiddle,
    #[error("bibundle is not right principal")]
    NotRightPrincipal,
    #[error("ill-typed bibundle: {}", .0.join("; "))]
    Structure(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bibundle {
    pub left: FiniteGroupoid,
    pub right: FiniteGroupoid,
    pub total: Vec<String>,
    pub left_moment: Vec<ObjId>,
    pub right_moment: Vec<ObjId>,
    /// `left_action[k * |E| + e] = k·e`.
    pub left_action: Vec<Option<usize>>,
    /// `right_action[e * |K'₁| + k'] = e·k'`.
    pub right_action: Vec<Option<usize>>,
}

impl Bibundle {
    pub fn size(&self) -> usize {
        self.total.len()
    }

    pub fn act_left(&self, k: ArrId, e: usize) -> Option<usize> {
        self.left_action[k.0 * self.size() + e]
    }

    pub fn act_right(&self, e: usize, k: ArrId) -> Option<usize> {
        self.right_action[e * self.right.arrow_count() + k.0]
    }

    fn structural_errors(&self) -> Vec<String> {
        let n = self.size();
        let mut errs = Vec::new();
        for (side, g) in [("left", &self.left), ("right", &self.right)] {
            let r = validate_groupoid(g);
            if !r.is_valid() {
                let failed: Vec<String> = r
                    .structural
                    .iter()
                    .cloned()
                    .chain(r.failed().map(|c| c.name.clone()))
                    .collect();
                errs.push(format!("{side} groupoid is invalid: {}", failed.join(", ")));
            }
        }
        if !errs.is_empty() {
            return errs;
        }
        if self.left_moment.len() != n || self.right_moment.len() != n {
            errs.push("moment tables do not cover the total set".into());
        }
        if self
            .left_moment
            .iter()
            .any(|x| x.0 >= self.left.object_count())
            || self
                .right_moment
                .iter()
                .any(|x| x.0 >= self.right.object_count())
        {
            errs.push("a moment points outside its groupoid".into());
        }
        if self.left_action.len() != self.left.arrow_count() * n
            || self.right_action.len() != n * self.right.arrow_count()
        {
            errs.push("action tables have the wrong shape".into());
        }
        if self
            .left_action
            .iter()
            .chain(&self.right_action)
            .flatten()
            .any(|&e| e >= n)
        {
            errs.push("an action result is outside the total set".into());
        }
        if errs.is_empty() {
            let ename = |e: usize| self.total[e].clone();
            for k in self.left.arrows() {
                for e in 0..n {
                    let defined = self.left.src(k) == self.left_moment[e];
                    match self.act_left(k, e) {
                        Some(_) if !defined => errs.push(format!(
                            "left action of `{}` on `{}` should be undefined",
                            self.left.arrow_name(k),
                            ename(e)
                        )),
                        Some(r) if self.left_moment[r] != self.left.tgt(k) => errs.push(format!(
                            "left action of `{}` on `{}` lands in the wrong fiber",
                            self.left.arrow_name(k),
                            ename(e)
                        )),
                        None if defined => errs.push(format!(
                            "left action of `{}` on `{}` is missing",
                            self.left.arrow_name(k),
                            ename(e)
                        )),
                        _ => {}
                    }
                }
            }
            for e in 0..n {
                for k in self.right.arrows() {
                    let defined = self.right.tgt(k) == self.right_moment[e];
                    match self.act_right(e, k) {
                        Some(_) if !defined => errs.push(format!(
                            "right action of `{}` on `{}` should be undefined",
                            self.right.arrow_name(k),
                            ename(e)
                        )),
                        Some(r) if self.right_moment[r] != self.right.src(k) => errs.push(format!(
                            "right action of `{}` on `{}` lands in the wrong fiber",
                            self.right.arrow_name(k),
                            ename(e)
                        )),
                        None if defined => errs.push(format!(
                            "right action of `{}` on `{}` is missing",
                            self.right.arrow_name(k),
                            ename(e)
                        )),
                        _ => {}
                    }
                }
            }
        }
        errs
    }

    /// The opposite bibundle `K' → K`: `k'·e = e·k'⁻¹`, `e·k = k⁻¹·e`.
    pub fn reverse(&self) -> Bibundle {
        let n = self.size();
        let (l, r) = (&self.left, &self.right);
        let mut left_action = vec![None; r.arrow_count() * n];
        for k in r.arrows() {
            for e in 0..n {
                left_action[k.0 * n + e] = self.act_right(e, r.inv(k));
            }
        }
        let mut right_action = vec![None; n * l.arrow_count()];
        for e in 0..n {
            for k in l.arrows() {
                right_action[e * l.arrow_count() + k.0] = self.act_left(l.inv(k), e);
            }
        }
        Bibundle {
            left: r.clone(),
            right: l.clone(),
            total: self.total.clone(),
            left_moment: self.right_moment.clone(),
            right_moment: self.left_moment.clone(),
            left_action,
            right_action,
        }
    }
}

/// `E = {(x, k') : t(k') = f(x)}` with `k·(x,k') = (t(k), f(k)∘k')` and
/// `(x,k')·k'' = (x, k'∘k'')`.
pub fn from_functor(f: &GroupoidHom, src: &FiniteGroupoid, dst: &FiniteGroupoid) -> Bibundle {
    let mut total = Vec::new();
    let mut elems = Vec::new();
    let mut index = BTreeMap::new();
    for x in src.objects() {
        for k in dst.arrows().filter(|&k| dst.tgt(k) == f.on_obj(x)) {
            index.insert((x, k), elems.len());
            total.push(format!("({},{})", src.object_name(x), dst.arrow_name(k)));
            elems.push((x, k));
        }
    }
    let n = elems.len();
    let mut left_action = vec![None; src.arrow_count() * n];
    for k in src.arrows() {
        for (e, &(x, kp)) in elems.iter().enumerate() {
            if src.src(k) == x {
                let moved = dst
                    .comp(f.on_arr(k), kp)
                    .expect("functor preserves endpoints");
                left_action[k.0 * n + e] = Some(index[&(src.tgt(k), moved)]);
            }
        }
    }
    let m = dst.arrow_count();
    let mut right_action = vec![None; n * m];
    for (e, &(x, kp)) in elems.iter().enumerate() {
        for k in dst.arrows().filter(|&k| dst.tgt(k) == dst.src(kp)) {
            right_action[e * m + k.0] = Some(index[&(x, dst.comp(kp, k).expect("composable"))]);
        }
    }
    Bibundle {
        left: src.clone(),
        right: dst.clone(),
        total,
        left_moment: elems.iter().map(|&(x, _)| x).collect(),
        right_moment: elems.iter().map(|&(_, k)| dst.src(k)).collect(),
        left_action,
        right_action,
    }
}

/// Identity bibundle of `g`, induced by the identity functor.
pub fn identity_bibundle(g: &FiniteGroupoid) -> Bibundle {
    from_functor(&GroupoidHom::identity(g), g, g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrincipalReport {
    pub right_principal: bool,
    pub left_principal: bool,
    pub morita: bool,
    pub report: ValidationReport,
}

/// Action axioms plus both principality conditions.
pub fn validate_principal(b: &Bibundle) -> PrincipalReport {
    let errs = b.structural_errors();
    if !errs.is_empty() {
        return PrincipalReport {
            right_principal: false,
            left_principal: false,
            morita: false,
            report: ValidationReport::structural(errs),
        };
    }
    let n = b.size();
    let (l, r) = (&b.left, &b.right);
    let en = |e: usize| b.total[e].clone();

    let mut unit = Check::new("action-unit");
    for e in 0..n {
        unit.expect(b.act_left(l.ident(b.left_moment[e]), e) == Some(e), || {
            [en(e), "left".into()]
        });
        unit.expect(
            b.act_right(e, r.ident(b.right_moment[e])) == Some(e),
            || [en(e), "right".into()],
        );
    }
    let mut assoc = Check::new("action-associativity");
    for (g, h) in l.composable_pairs() {
        for e in 0..n {
            if l.src(g) == b.left_moment[e] {
                let lhs = b.act_left(l.comp(h, g).expect("composable"), e);
                let rhs = b.act_left(g, e).and_then(|ge| b.act_left(h, ge));
                assoc.expect(lhs == rhs, || {
                    [
                        l.arrow_name(g).to_string(),
                        l.arrow_name(h).to_string(),
                        en(e),
                    ]
                });
            }
        }
    }
    for (g, h) in r.composable_pairs() {
        for e in 0..n {
            // e·(h∘g) = (e·h)·g
            if r.tgt(h) == b.right_moment[e] {
                let lhs = b.act_right(e, r.comp(h, g).expect("composable"));
                let rhs = b.act_right(e, h).and_then(|eh| b.act_right(eh, g));
                assoc.expect(lhs == rhs, || {
                    [
                        en(e),
                        r.arrow_name(h).to_string(),
                        r.arrow_name(g).to_string(),
                    ]
                });
            }
        }
    }
    let mut commute = Check::new("actions-commute");
    let mut invariance = Check::new("moment-invariance");
    for e in 0..n {
        for k in l.arrows().filter(|&k| l.src(k) == b.left_moment[e]) {
            let ke = b.act_left(k, e).expect("typed");
            invariance.expect(b.right_moment[ke] == b.right_moment[e], || {
                [l.arrow_name(k).to_string(), en(e)]
            });
            for kp in r.arrows().filter(|&kp| r.tgt(kp) == b.right_moment[e]) {
                let lhs = b.act_right(ke, kp);
                let rhs = b.act_right(e, kp).and_then(|ek| b.act_left(k, ek));
                commute.expect(lhs.is_some() && lhs == rhs, || {
                    [
                        l.arrow_name(k).to_string(),
                        en(e),
                        r.arrow_name(kp).to_string(),
                    ]
                });
            }
        }
        for kp in r.arrows().filter(|&kp| r.tgt(kp) == b.right_moment[e]) {
            let ek = b.act_right(e, kp).expect("typed");
            invariance.expect(b.left_moment[ek] == b.left_moment[e], || {
                [en(e), r.arrow_name(kp).to_string()]
            });
        }
    }

    // (e, k') ↦ (e, e·k') is a bijection onto E ×_{J_l} E, and J_l is onto.
    let mut right = Check::new("right-principal");
    for x in l.objects() {
        right.expect(b.left_moment.contains(&x), || {
            ["J_l not onto".to_string(), l.object_name(x).to_string()]
        });
    }
    for e in 0..n {
        let mut hits = vec![0usize; n];
        for kp in r.arrows().filter(|&kp| r.tgt(kp) == b.right_moment[e]) {
            hits[b.act_right(e, kp).expect("typed")] += 1;
        }
        for f in 0..n {
            let want = usize::from(b.left_moment[f] == b.left_moment[e]);
            right.expect(hits[f] == want, || [en(e), en(f)]);
        }
    }
    let mut left = Check::new("left-principal");
    for x in r.objects() {
        left.expect(b.right_moment.contains(&x), || {
            ["J_r not onto".to_string(), r.object_name(x).to_string()]
        });
    }
    for e in 0..n {
        let mut hits = vec![0usize; n];
        for k in l.arrows().filter(|&k| l.src(k) == b.left_moment[e]) {
            hits[b.act_left(k, e).expect("typed")] += 1;
        }
        for f in 0..n {
            let want = usize::from(b.right_moment[f] == b.right_moment[e]);
            left.expect(hits[f] == want, || [en(e), en(f)]);
        }
    }

    let axioms_ok = unit.passed() && assoc.passed() && commute.passed() && invariance.passed();
    let right_principal = axioms_ok && right.passed();
    let left_principal = axioms_ok && left.passed();
    let mut report = ValidationReport::new();
    for c in [unit, assoc, commute, invariance, right, left] {
        report.push(c);
    }
    PrincipalReport {
        right_principal,
        left_principal,
        morita: right_principal && left_principal,
        report,
    }
}

/// `(E₁ ×_{K'₀} E₂)/K'`, orbits named by their least pair.
pub fn compose(b1: &Bibundle, b2: &Bibundle) -> Result<Bibundle, BibundleError> {
    if b1.right != b2.left {
        return Err(BibundleError::MismatchedMiddle);
    }
    for b in [b1, b2] {
        let errs = b.structural_errors();
        if !errs.is_empty() {
            return Err(BibundleError::Structure(errs));
        }
        if !validate_principal(b).right_principal {
            return Err(BibundleError::NotRightPrincipal);
        }
    }
    let mid = &b1.right;
    let pairs: Vec<(usize, usize)> = (0..b1.size())
        .flat_map(|e1| (0..b2.size()).map(move |e2| (e1, e2)))
        .filter(|&(e1, e2)| b1.right_moment[e1] == b2.left_moment[e2])
        .collect();
    let pair_pos: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut orbit = vec![usize::MAX; pairs.len()];
    let mut reps = Vec::new();
    for (i, &(e1, e2)) in pairs.iter().enumerate() {
        if orbit[i] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push((e1, e2));
        for k in mid.arrows().filter(|&k| mid.tgt(k) == b1.right_moment[e1]) {
            let f1 = b1.act_right(e1, k).expect("typed");
            let f2 = b2.act_left(mid.inv(k), e2).expect("typed");
            orbit[pair_pos[&(f1, f2)]] = id;
        }
    }
    let n = reps.len();
    let class = |e1: usize, e2: usize| orbit[pair_pos[&(e1, e2)]];
    let (l, r) = (&b1.left, &b2.right);
    let mut left_action = vec![None; l.arrow_count() * n];
    for k in l.arrows() {
        for (c, &(e1, e2)) in reps.iter().enumerate() {
            if let Some(f1) = b1.act_left(k, e1) {
                left_action[k.0 * n + c] = Some(class(f1, e2));
            }
        }
    }
    let mut right_action = vec![None; n * r.arrow_count()];
    for (c, &(e1, e2)) in reps.iter().enumerate() {
        for k in r.arrows() {
            if let Some(f2) = b2.act_right(e2, k) {
                right_action[c * r.arrow_count() + k.0] = Some(class(e1, f2));
            }
        }
    }
    Ok(Bibundle {
        left: l.clone(),
        right: r.clone(),
        total: reps
            .iter()
            .map(|&(e1, e2)| format!("[{}|{}]", b1.total[e1], b2.total[e2]))
            .collect(),
        left_moment: reps.iter().map(|&(e1, _)| b1.left_moment[e1]).collect(),
        right_moment: reps.iter().map(|&(_, e2)| b2.right_moment[e2]).collect(),
        left_action,
        right_action,
    })
}

/// An equivariant bijection `E₁ → E₂` commuting with both moments,
/// found by backtracking with propagation along the actions.
pub fn find_bibundle_isomorphism(b1: &Bibundle, b2: &Bibundle) -> Option<Vec<usize>> {
    if b1.left != b2.left || b1.right != b2.right || b1.size() != b2.size() {
        return None;
    }
    if !b1.structural_errors().is_empty() || !b2.structural_errors().is_empty() {
        return None;
    }
    let mut map = vec![usize::MAX; b1.size()];
    let mut used = vec![false; b2.size()];
    if extend(b1, b2, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(b1: &Bibundle, b2: &Bibundle, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
    let Some(e) = map.iter().position(|&m| m == usize::MAX) else {
        return true;
    };
    for cand in 0..b2.size() {
        if used[cand]
            || b2.left_moment[cand] != b1.left_moment[e]
            || b2.right_moment[cand] != b1.right_moment[e]
        {
            continue;
        }
        let (saved_map, saved_used) = (map.clone(), used.clone());
        if propagate(b1, b2, e, cand, map, used) && extend(b1, b2, map, used) {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

fn propagate(
    b1: &Bibundle,
    b2: &Bibundle,
    e: usize,
    cand: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let mut queue = VecDeque::from([(e, cand)]);
    while let Some((a, b)) = queue.pop_front() {
        if map[a] != usize::MAX {
            if map[a] != b {
                return false;
            }
            continue;
        }
        if used[b]
            || b2.left_moment[b] != b1.left_moment[a]
            || b2.right_moment[b] != b1.right_moment[a]
        {
            return false;
        }
        map[a] = b;
        used[b] = true;
        for k in b1.left.arrows() {
            if let Some(ka) = b1.act_left(k, a) {
                match b2.act_left(k, b) {
                    Some(kb) => queue.push_back((ka, kb)),
                    None => return false,
                }
            }
        }
        for k in b1.right.arrows() {
            if let Some(ak) = b1.act_right(a, k) {
                match b2.act_right(b, k) {
                    Some(bk) => queue.push_back((ak, bk)),
                    None => return false,
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    #[test]
    fn regular_bibundle_of_z3() {
        let g = FiniteGroupoid::delooping(&GroupTable::cyclic(3));
        let b = identity_bibundle(&g);
        assert_eq!(b.size(), 3);
        let p = validate_principal(&b);
        assert!(p.right_principal && p.morita, "{:?}", p.report);
    }

    #[test]
    fn constant_functor_is_not_morita() {
        let src = FiniteGroupoid::discrete(vec!["a".into(), "b".into()]);
        let dst = FiniteGroupoid::delooping(&GroupTable::cyclic(2));
        let f = GroupoidHom {
            obj_map: vec![ObjId(0); 2],
            arr_map: vec![ArrId(0); 2],
        };
        let b = from_functor(&f, &src, &dst);
        assert_eq!(b.size(), 4);
        let p = validate_principal(&b);
        assert!(p.right_principal);
        assert!(!p.morita);
    }
}
