//! Crossed modules of finite groups and their translation 2-groups.

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::group::GroupTable;
use crate::groupoid::{ArrId, Arrow, FiniteGroupoid, ObjId};
use crate::monoidal::StrictTwoGroup;
use crate::report::{Check, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedModuleError {
    #[error("crossed module is invalid: {0}")]
    Invalid(String),
    #[error("translation groupoid is ill-formed: {}", .0.join("; "))]
    Groupoid(Vec<String>),
}

/// `(Γ, G₀, ∂, *)` with `partial[γ] = ∂(γ)` and
/// `action[x * |Γ| + γ] = x * γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    pub gamma: GroupTable,
    pub g0: GroupTable,
    pub partial: Vec<usize>,
    pub action: Vec<usize>,
}

impl CrossedModule {
    pub fn new(gamma: GroupTable, g0: GroupTable, partial: Vec<usize>, action: Vec<usize>) -> Self {
        CrossedModule {
            gamma,
            g0,
            partial,
            action,
        }
    }

    pub fn with_trivial_action(gamma: GroupTable, g0: GroupTable, partial: Vec<usize>) -> Self {
        let action = g0.elements().flat_map(|_| gamma.elements()).collect();
        CrossedModule {
            gamma,
            g0,
            partial,
            action,
        }
    }

    /// `x * γ`.
    #[inline]
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.action[x * self.gamma.order() + g]
    }

    #[inline]
    pub fn boundary(&self, g: usize) -> usize {
        self.partial[g]
    }

    fn structural_errors(&self) -> Vec<String> {
        let (ng, n0) = (self.gamma.order(), self.g0.order());
        let mut errs = Vec::new();
        if self.partial.len() != ng {
            errs.push(format!(
                "∂ has {} entries for {} elements of Γ",
                self.partial.len(),
                ng
            ));
        }
        if self.partial.iter().any(|&x| x >= n0) {
            errs.push("∂ maps outside G₀".into());
        }
        if self.action.len() != ng * n0 {
            errs.push(format!(
                "action has {} entries, expected {}",
                self.action.len(),
                ng * n0
            ));
        }
        if self.action.iter().any(|&g| g >= ng) {
            errs.push("action maps outside Γ".into());
        }
        errs
    }

    /// Arrow `(γ, x): x → ∂(γ)x` of the translation groupoid.
    #[inline]
    pub fn arrow_index(&self, g: usize, x: usize) -> usize {
        g * self.g0.order() + x
    }

    /// `(γ₁, x₁)⊗(γ₂, x₂) = (γ₁(x₁*γ₂), x₁x₂)`.
    pub fn wreath_mul(&self, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
        (
            self.gamma.mul(a.0, self.act(a.1, b.0)),
            self.g0.mul(a.1, b.1),
        )
    }

    /// The translation groupoid `Γ⋉G₀`, arrows ordered by `γ` then `x`
    /// and named `(γ,x)`.
    pub fn translation_groupoid(&self) -> Result<FiniteGroupoid, CrossedModuleError> {
        let errs = self.structural_errors();
        if !errs.is_empty() {
            return Err(CrossedModuleError::Groupoid(errs));
        }
        let n0 = self.g0.order();
        let mut arrows = Vec::with_capacity(self.gamma.order() * n0);
        for g in self.gamma.elements() {
            for x in self.g0.elements() {
                arrows.push(Arrow {
                    name: format!("({},{})", self.gamma.name(g), self.g0.name(x)),
                    src: ObjId(x),
                    tgt: ObjId(self.g0.mul(self.boundary(g), x)),
                });
            }
        }
        let ident = self
            .g0
            .elements()
            .map(|x| ArrId(self.arrow_index(self.gamma.identity(), x)))
            .collect();
        FiniteGroupoid::from_fn(self.g0.names().to_vec(), arrows, ident, |h, g| {
            let (gh, _) = (h.0 / n0, h.0 % n0);
            let (gg, xg) = (g.0 / n0, g.0 % n0);
            ArrId(self.arrow_index(self.gamma.mul(gh, gg), xg))
        })
        .map_err(CrossedModuleError::Groupoid)
    }
}

pub fn validate_crossed_module(x: &CrossedModule) -> ValidationReport {
    let errs = x.structural_errors();
    if !errs.is_empty() {
        return ValidationReport::structural(errs);
    }
    let (gm, g0) = (&x.gamma, &x.g0);
    let gn = |g: usize| gm.name(g).to_string();
    let xn = |a: usize| g0.name(a).to_string();

    let mut hom = Check::new("partial-homomorphism");
    for a in gm.elements() {
        for b in gm.elements() {
            hom.expect(
                x.boundary(gm.mul(a, b)) == g0.mul(x.boundary(a), x.boundary(b)),
                || [gn(a), gn(b)],
            );
        }
    }
    let mut unital = Check::new("action-unit");
    for g in gm.elements() {
        unital.expect(x.act(g0.identity(), g) == g, || [gn(g)]);
    }
    let mut left = Check::new("action-composition");
    for a in g0.elements() {
        for b in g0.elements() {
            for g in gm.elements() {
                left.expect(x.act(g0.mul(a, b), g) == x.act(a, x.act(b, g)), || {
                    [xn(a), xn(b), gn(g)]
                });
            }
        }
    }
    let mut auto = Check::new("action-automorphism");
    for a in g0.elements() {
        for g in gm.elements() {
            for h in gm.elements() {
                auto.expect(
                    x.act(a, gm.mul(g, h)) == gm.mul(x.act(a, g), x.act(a, h)),
                    || [xn(a), gn(g), gn(h)],
                );
            }
        }
    }
    let mut equiv = Check::new("equivariance");
    for a in g0.elements() {
        for g in gm.elements() {
            let lhs = x.boundary(x.act(a, g));
            let rhs = g0.conjugate(a, x.boundary(g));
            equiv.expect(lhs == rhs, || [xn(a), gn(g)]);
        }
    }
    let mut pf = Check::new("pfeiffer");
    for g in gm.elements() {
        for h in gm.elements() {
            pf.expect(x.act(x.boundary(g), h) == gm.conjugate(g, h), || {
                [gn(g), gn(h)]
            });
        }
    }
    let mut report = ValidationReport::new();
    for c in [hom, unital, left, auto, equiv, pf] {
        report.push(c);
    }
    report
}

/// The strict 2-group `Γ⋉G₀` with the wreath product on arrows.
pub fn to_strict_two_group(x: &CrossedModule) -> Result<StrictTwoGroup, CrossedModuleError> {
    let report = validate_crossed_module(x);
    if !report.is_valid() {
        let why = report
            .structural
            .first()
            .cloned()
            .or_else(|| report.failed().next().map(|c| c.name.clone()));
        return Err(CrossedModuleError::Invalid(why.unwrap_or_default()));
    }
    let base = x.translation_groupoid()?;
    let n0 = x.g0.order();
    StrictTwoGroup::new(
        base,
        |a, b| ObjId(x.g0.mul(a.0, b.0)),
        |g, h| {
            let (c, y) = x.wreath_mul((g.0 / n0, g.0 % n0), (h.0 / n0, h.0 % n0));
            ArrId(x.arrow_index(c, y))
        },
    )
    .map_err(|e| CrossedModuleError::Invalid(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelCenterReport {
    pub kernel: Vec<String>,
    pub center: Vec<String>,
    pub central: Check,
    /// Cosets `im∂ · x`, each listed in canonical order.
    pub orbits: Vec<Vec<String>>,
}

/// `ker∂`, its containment in `Z(Γ)` by commutator enumeration, and the
/// orbit set `G₀/im∂`.
pub fn kernel_center_check(x: &CrossedModule) -> KernelCenterReport {
    let gm = &x.gamma;
    let kernel: Vec<usize> = gm
        .elements()
        .filter(|&g| x.boundary(g) == x.g0.identity())
        .collect();
    let mut central = Check::new("kernel-central");
    for &k in &kernel {
        for g in gm.elements() {
            central.expect(gm.mul(k, g) == gm.mul(g, k), || {
                [gm.name(k).to_string(), gm.name(g).to_string()]
            });
        }
    }
    let image: Vec<usize> = {
        let mut seen = vec![false; x.g0.order()];
        for g in gm.elements() {
            seen[x.boundary(g)] = true;
        }
        x.g0.elements().filter(|&a| seen[a]).collect()
    };
    let mut orbit_of = vec![usize::MAX; x.g0.order()];
    let mut orbits = Vec::new();
    for a in x.g0.elements() {
        if orbit_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = image.iter().map(|&i| x.g0.mul(i, a)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            orbit_of[m] = orbits.len();
        }
        orbits.push(members);
    }
    KernelCenterReport {
        kernel: kernel.iter().map(|&k| gm.name(k).to_string()).collect(),
        center: gm
            .center()
            .into_iter()
            .map(|c| gm.name(c).to_string())
            .collect(),
        central,
        orbits: orbits
            .into_iter()
            .map(|o| o.into_iter().map(|a| x.g0.name(a).to_string()).collect())
            .collect(),
    }
}

/// Compares the Pfeiffer identity with the interchange law of `Γ⋉G₀`
/// under the wreath product, each evaluated on the raw tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PfeifferComparison {
    pub pfeiffer: Check,
    pub interchange: Check,
}

impl PfeifferComparison {
    pub fn agree(&self) -> bool {
        self.pfeiffer.passed() == self.interchange.passed()
    }
}

/// Needs only well-shaped tables, a homomorphism `∂`, equivariance and
/// an action by automorphisms; under those hypotheses both sides hold or
/// fail together.
pub fn pfeiffer_vs_interchange(x: &CrossedModule) -> Option<PfeifferComparison> {
    if !x.structural_errors().is_empty() {
        return None;
    }
    let (gm, g0) = (&x.gamma, &x.g0);
    let mut pfeiffer = Check::new("pfeiffer");
    for g in gm.elements() {
        for h in gm.elements() {
            pfeiffer.expect(x.act(x.boundary(g), h) == gm.conjugate(g, h), || {
                [gm.name(g).to_string(), gm.name(h).to_string()]
            });
        }
    }
    // (γ',∂γ x)∘(γ,x) = (γ'γ, x), applied on both tensor factors.
    let mut interchange = Check::new("interchange");
    let tgt = |(g, a): (usize, usize)| g0.mul(x.boundary(g), a);
    let comp = |second: (usize, usize), first: (usize, usize)| (gm.mul(second.0, first.0), first.1);
    let name = |(g, a): (usize, usize)| format!("({},{})", gm.name(g), g0.name(a));
    for g in gm.elements() {
        for a in g0.elements() {
            let f1 = (g, a);
            for g2 in gm.elements() {
                let s1 = (g2, tgt(f1));
                for h in gm.elements() {
                    for b in g0.elements() {
                        let f2 = (h, b);
                        for h2 in gm.elements() {
                            let s2 = (h2, tgt(f2));
                            let lhs = x.wreath_mul(comp(s1, f1), comp(s2, f2));
                            let rhs = comp(x.wreath_mul(s1, s2), x.wreath_mul(f1, f2));
                            interchange
                                .expect(lhs == rhs, || [name(f1), name(s1), name(f2), name(s2)]);
                        }
                    }
                }
            }
        }
    }
    Some(PfeifferComparison {
        pfeiffer,
        interchange,
    })
}

/// A pair of group isomorphisms compatible with `∂` and the actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModuleIso {
    pub gamma: Vec<usize>,
    pub g0: Vec<usize>,
}

impl CrossedModuleIso {
    pub fn check(&self, a: &CrossedModule, b: &CrossedModule) -> bool {
        if a.gamma
            .homomorphism_failure(&self.gamma, &b.gamma)
            .is_some()
            || a.g0.homomorphism_failure(&self.g0, &b.g0).is_some()
        {
            return false;
        }
        let boundary_ok = a
            .gamma
            .elements()
            .all(|g| b.boundary(self.gamma[g]) == self.g0[a.boundary(g)]);
        let action_ok = a.g0.elements().all(|y| {
            a.gamma
                .elements()
                .all(|g| self.gamma[a.act(y, g)] == b.act(self.g0[y], self.gamma[g]))
        });
        boundary_ok && action_ok
    }
}

/// First isomorphism in canonical order: group isomorphisms of `G₀` in
/// the outer loop, of `Γ` in the inner loop.
pub fn find_crossed_module_isomorphism(
    a: &CrossedModule,
    b: &CrossedModule,
) -> Option<CrossedModuleIso> {
    let g0_isos = a.g0.isomorphisms(&b.g0);
    if g0_isos.is_empty() {
        return None;
    }
    let mut found = None;
    a.gamma.for_each_isomorphism(&b.gamma, |phi| {
        for psi in &g0_isos {
            let cand = CrossedModuleIso {
                gamma: phi.to_vec(),
                g0: psi.clone(),
            };
            if cand.check(a, b) {
                found = Some(cand);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm1() -> CrossedModule {
        CrossedModule::with_trivial_action(GroupTable::cyclic(2), GroupTable::cyclic(4), vec![0, 2])
    }

    #[test]
    fn xm1_is_valid_and_translates() {
        let x = xm1();
        assert!(validate_crossed_module(&x).is_valid());
        let s = to_strict_two_group(&x).unwrap();
        assert_eq!(s.base().object_count(), 4);
        assert_eq!(s.base().arrow_count(), 8);
        assert_eq!(s.base().components().len(), 2);
    }

    #[test]
    fn broken_boundary_witness() {
        let x = CrossedModule::with_trivial_action(
            GroupTable::cyclic(2),
            GroupTable::cyclic(4),
            vec![0, 1],
        );
        let r = validate_crossed_module(&x);
        assert!(r
            .check("partial-homomorphism")
            .unwrap()
            .has_witness(&["1", "1"]));
        assert!(to_strict_two_group(&x).is_err());
    }

    #[test]
    fn pfeiffer_failure_matches_interchange_failure() {
        let x = CrossedModule::with_trivial_action(
            GroupTable::symmetric(3),
            GroupTable::trivial(),
            vec![0; 6],
        );
        let cmp = pfeiffer_vs_interchange(&x).unwrap();
        assert!(!cmp.pfeiffer.passed());
        assert!(cmp.pfeiffer.has_witness(&["(12)", "(13)"]));
        assert!(cmp.agree());
    }

    #[test]
    fn kernel_and_orbits() {
        let k = kernel_center_check(&xm1());
        assert_eq!(k.kernel, vec!["0"]);
        assert_eq!(k.orbits, vec![vec!["0", "2"], vec!["1", "3"]]);
        assert!(k.central.passed());
    }

    #[test]
    fn self_isomorphism() {
        let x = xm1();
        let iso = find_crossed_module_isomorphism(&x, &x).unwrap();
        assert!(iso.check(&x, &x));
    }
}
