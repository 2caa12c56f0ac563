//! Semistrict detection, associator analysis, strictification and the
//! passage from strict 2-groups to crossed modules.

use serde::Serialize;
use thiserror::Error;

use crate::crossed_module::CrossedModule;
use crate::group::{GroupError, GroupTable};
use crate::groupoid::{ArrId, GroupoidHom, ObjId};
use crate::monoidal::{transpose, validate_strict, CoherentTwoGroup, StrictTwoGroup};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrictifyError {
    #[error("objects do not form a group under the tensor: {0}")]
    ObjectsNotAGroup(String),
    #[error("not semistrict: {witness}")]
    NotSemistrict { witness: String },
    #[error("conclusion `{conclusion}` fails at ({})", .witness.join(", "))]
    ConnectednessAnalogViolated {
        conclusion: String,
        witness: Vec<String>,
    },
}

/// The objects of `t` as a group under `⊗`, indexed by object id, with
/// `𝕀` required to be its identity.
pub fn object_group(t: &CoherentTwoGroup) -> Result<GroupTable, String> {
    let b = t.base();
    let g = GroupTable::from_fn(b.object_names().to_vec(), |x, y| t.to(ObjId(x), ObjId(y)).0)
        .map_err(|e| match e {
            GroupError::NoInverse(x) => format!("non-invertible object {x}"),
            GroupError::NotAssociative(x, y, z) => {
                format!("tensor not associative on objects ({x}, {y}, {z})")
            }
            GroupError::NoIdentity => "no unit object".to_string(),
            other => other.to_string(),
        })?;
    if g.identity() != t.unit().0 {
        return Err(format!(
            "unit {} is not the group identity",
            b.object_name(t.unit())
        ));
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatorCocycle {
    /// `h(x,y,z) = a_{x,y,z} ⊗ id_{(xyz)⁻¹}`, as `[x, y, z, h]` rows.
    pub table: Vec<[String; 4]>,
    pub h0: String,
    /// `h₀∘h₀ = h₀∘h₀∘h₀`.
    pub certificate: bool,
    pub constant: bool,
    pub trivial: bool,
}

pub fn associator_cocycle(t: &CoherentTwoGroup) -> Result<AssociatorCocycle, StrictifyError> {
    let objs = object_group(t).map_err(StrictifyError::ObjectsNotAGroup)?;
    let b = t.base();
    let u = t.unit();
    let mut values = Vec::new();
    let mut table = Vec::new();
    for x in b.objects() {
        for y in b.objects() {
            for z in b.objects() {
                let xyz = ObjId(objs.product([x.0, y.0, z.0]));
                let h = t.ta(t.assoc(x, y, z), t.id(ObjId(objs.inv(xyz.0))));
                values.push(h);
                table.push([
                    b.object_name(x).to_string(),
                    b.object_name(y).to_string(),
                    b.object_name(z).to_string(),
                    b.arrow_name(h).to_string(),
                ]);
            }
        }
    }
    let h0 = t.ta(t.assoc(u, u, u), t.id(u));
    let sq = b.comp(h0, h0);
    let cube = sq.and_then(|s| b.comp(h0, s));
    Ok(AssociatorCocycle {
        table,
        h0: b.arrow_name(h0).to_string(),
        certificate: sq.is_some() && sq == cube,
        constant: values.iter().all(|&v| v == values[0]),
        trivial: values.iter().all(|&v| v == t.id(u)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemistrictVerdict {
    pub semistrict: bool,
    pub witness: Option<String>,
}

/// Objects form a group with unit `𝕀` and every `d_x`, `e_x` is `id_𝕀`.
/// The witness names the first failure in canonical order.
pub fn is_semistrict(t: &CoherentTwoGroup) -> SemistrictVerdict {
    let fail = |w: String| SemistrictVerdict {
        semistrict: false,
        witness: Some(w),
    };
    if let Err(w) = object_group(t) {
        return fail(w);
    }
    let b = t.base();
    let id_u = t.id(t.unit());
    for x in b.objects() {
        if t.adj_d(x) != id_u {
            return fail(format!("d_{}", b.object_name(x)));
        }
    }
    for x in b.objects() {
        if t.adj_e(x) != id_u {
            return fail(format!("e_{}", b.object_name(x)));
        }
    }
    SemistrictVerdict {
        semistrict: true,
        witness: None,
    }
}

/// Data of the monoidal equivalence `G → Str(G)`: the identity functor
/// with constraints `t_{x,y}: x⊗y → x⊗y` and `u: 𝕀 → 𝕀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceData {
    pub functor: GroupoidHom,
    pub tensor_constraint: Vec<ArrId>,
    pub unit_constraint: ArrId,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strictification {
    pub strict: StrictTwoGroup,
    pub equivalence: EquivalenceData,
    /// Every conclusion verified on the way, all passing.
    pub conclusions: Vec<Check>,
}

fn require(check: Check) -> Result<Check, StrictifyError> {
    match check.witnesses.first() {
        Some(w) if !check.passed() => Err(StrictifyError::ConnectednessAnalogViolated {
            conclusion: check.name.clone(),
            witness: w.clone(),
        }),
        _ => Ok(check),
    }
}

/// Discards `a`, `ℓ`, `r` after verifying that doing so is legal.
pub fn strictify(t: &CoherentTwoGroup) -> Result<Strictification, StrictifyError> {
    let verdict = is_semistrict(t);
    if let Some(witness) = verdict.witness {
        return Err(StrictifyError::NotSemistrict { witness });
    }
    let b = t.base();
    let u = t.unit();
    let on = |x: ObjId| b.object_name(x).to_string();
    let an = |g: ArrId| b.arrow_name(g).to_string();
    let mut conclusions = Vec::new();

    let mut assoc = Check::new("trivial-associator");
    for x in b.objects() {
        for y in b.objects() {
            for z in b.objects() {
                let a = t.assoc(x, y, z);
                assoc.expect(b.is_identity(a), || [on(x), on(y), on(z)]);
            }
        }
    }
    conclusions.push(require(assoc)?);

    let mut arrow_assoc = Check::new("strict-arrow-associativity");
    for f in b.arrows() {
        for g in b.arrows() {
            for h in b.arrows() {
                arrow_assoc.expect(t.ta(t.ta(f, g), h) == t.ta(f, t.ta(g, h)), || {
                    [an(f), an(g), an(h)]
                });
            }
        }
    }
    conclusions.push(require(arrow_assoc)?);

    let mut unit_arrows = Check::new("unit-arrows");
    for g in b.arrows() {
        unit_arrows.expect(t.ta(g, t.id(u)) == g && t.ta(t.id(u), g) == g, || [an(g)]);
    }
    conclusions.push(require(unit_arrows)?);

    let lu = t.lunit(u);
    let mut unit_constraints = Check::new("unit-constraints");
    for x in b.objects() {
        let ok = t.lunit(x) == t.ta(t.id(x), lu) && t.runit(x) == t.ta(lu, t.id(x));
        unit_constraints.expect(ok, || [on(x)]);
    }
    conclusions.push(require(unit_constraints)?);

    let mut contra = Check::new("contragredient-inverse");
    for g in b.arrows() {
        let ok = match transpose(t, b.inv(g)) {
            Ok(gb) => t.ta(g, gb) == t.id(u) && t.ta(gb, g) == t.id(u),
            Err(_) => false,
        };
        contra.expect(ok, || [an(g)]);
    }
    conclusions.push(require(contra)?);

    let strict =
        StrictTwoGroup::new(b.clone(), |x, y| t.to(x, y), |g, h| t.ta(g, h)).map_err(|e| {
            StrictifyError::ConnectednessAnalogViolated {
                conclusion: "arrow-group".into(),
                witness: vec![e.to_string()],
            }
        })?;
    let report = validate_strict(&strict);
    if let Some(c) = report.failed().next() {
        return Err(StrictifyError::ConnectednessAnalogViolated {
            conclusion: c.name.clone(),
            witness: c.witnesses.first().cloned().unwrap_or_default(),
        });
    }

    let equivalence = equivalence_data(t);
    Ok(Strictification {
        strict,
        equivalence,
        conclusions,
    })
}

/// Identity functor, `t_{x,y} = id`, `u = ℓ_𝕀⁻¹`, with the monoidal
/// functor axioms checked against the identity constraints of `Str(G)`.
fn equivalence_data(t: &CoherentTwoGroup) -> EquivalenceData {
    let b = t.base();
    let u = t.unit();
    let on = |x: ObjId| b.object_name(x).to_string();
    let unit_constraint = b.inv(t.lunit(u));
    let tensor_constraint: Vec<ArrId> = b
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| t.id(t.to(x, y)))
        .collect();
    let n = b.object_count();
    let tc = |x: ObjId, y: ObjId| tensor_constraint[x.0 * n + y.0];

    // F(a) ∘ t_{x,y⊗z} ∘ (x⊗t_{y,z}) = t_{x⊗y,z} ∘ (t_{x,y}⊗z) ∘ a'  with a' = id.
    let mut hexagon = Check::new("functor-associativity");
    for x in b.objects() {
        for y in b.objects() {
            for z in b.objects() {
                let lhs =
                    b.comp_path(&[t.ta(t.id(x), tc(y, z)), tc(x, t.to(y, z)), t.assoc(x, y, z)]);
                let rhs = b.comp_path(&[t.ta(tc(x, y), t.id(z)), tc(t.to(x, y), z)]);
                hexagon.expect(lhs.is_some() && lhs == rhs, || [on(x), on(y), on(z)]);
            }
        }
    }
    // F(ℓ_x) ∘ t_{x,𝕀} ∘ (x⊗u) = ℓ'_x = id, likewise for r.
    let mut left = Check::new("functor-left-unit");
    let mut right = Check::new("functor-right-unit");
    for x in b.objects() {
        let l = b.comp_path(&[t.ta(t.id(x), unit_constraint), tc(x, u), t.lunit(x)]);
        left.expect(l == Some(t.id(x)), || [on(x)]);
        let r = b.comp_path(&[t.ta(unit_constraint, t.id(x)), tc(u, x), t.runit(x)]);
        right.expect(r == Some(t.id(x)), || [on(x)]);
    }
    EquivalenceData {
        functor: GroupoidHom::identity(b),
        tensor_constraint,
        unit_constraint,
        checks: vec![hexagon, left, right],
    }
}

/// A crossed module read off a strict 2-group, with the arrow behind each
/// element of `Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extracted {
    pub module: CrossedModule,
    pub gamma_arrows: Vec<ArrId>,
}

/// `Γ = t⁻¹(𝕀)` under `⊗`, `∂` the source map, `x*γ = x⊗γ⊗x̄`.
pub fn extract_crossed_module(s: &StrictTwoGroup) -> Extracted {
    let b = s.base();
    let u = s.unit();
    let gamma_arrows: Vec<ArrId> = b.arrows().filter(|&g| b.tgt(g) == u).collect();
    let mut pos = vec![usize::MAX; b.arrow_count()];
    for (i, &g) in gamma_arrows.iter().enumerate() {
        pos[g.0] = i;
    }
    let names = gamma_arrows
        .iter()
        .map(|&g| b.arrow_name(g).to_string())
        .collect();
    let gamma = GroupTable::from_fn(names, |i, j| pos[s.ta(gamma_arrows[i], gamma_arrows[j]).0])
        .expect("arrows into the unit form a subgroup");
    let g0 = s.object_group().clone();
    let partial = gamma_arrows.iter().map(|&g| b.src(g).0).collect();
    let mut action = Vec::with_capacity(g0.order() * gamma.order());
    for x in b.objects() {
        let xi = b.ident(x);
        let xbar = b.ident(s.obj_inv(x));
        for &g in &gamma_arrows {
            action.push(pos[s.ta(s.ta(xi, g), xbar).0]);
        }
    }
    Extracted {
        module: CrossedModule::new(gamma, g0, partial, action),
        gamma_arrows,
    }
}

/// The wreath group `Γ⋊G₀` of the extracted module together with the
/// bijections `Ψ(γ,x) = γ⊗x` and `Φ(g) = (g⊗t(g)⁻¹, t(g))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowGroup {
    pub wreath: GroupTable,
    /// Wreath element `γ_pos * |G₀| + x` to arrow.
    pub psi: Vec<ArrId>,
    /// Arrow to wreath element.
    pub phi: Vec<usize>,
    pub checks: Vec<Check>,
}

pub fn arrow_group(s: &StrictTwoGroup) -> ArrowGroup {
    let ex = extract_crossed_module(s);
    let x = &ex.module;
    let b = s.base();
    let n0 = x.g0.order();
    let ng = x.gamma.order();
    let names = (0..ng * n0)
        .map(|i| format!("({},{})", x.gamma.name(i / n0), x.g0.name(i % n0)))
        .collect();
    let wreath = GroupTable::from_fn(names, |i, j| {
        let (c, y) = x.wreath_mul((i / n0, i % n0), (j / n0, j % n0));
        c * n0 + y
    })
    .expect("wreath product of a crossed module is a group");

    let mut gpos = vec![usize::MAX; b.arrow_count()];
    for (i, &g) in ex.gamma_arrows.iter().enumerate() {
        gpos[g.0] = i;
    }
    let psi: Vec<ArrId> = (0..ng * n0)
        .map(|i| s.ta(ex.gamma_arrows[i / n0], b.ident(ObjId(i % n0))))
        .collect();
    let phi: Vec<usize> = b
        .arrows()
        .map(|g| {
            let y = b.tgt(g);
            let gamma = s.ta(g, b.ident(s.obj_inv(y)));
            gpos[gamma.0] * n0 + y.0
        })
        .collect();

    let an = |g: ArrId| b.arrow_name(g).to_string();
    let mut psi_phi = Check::new("psi-after-phi");
    for g in b.arrows() {
        psi_phi.expect(psi[phi[g.0]] == g, || [an(g)]);
    }
    let mut phi_psi = Check::new("phi-after-psi");
    for i in wreath.elements() {
        phi_psi.expect(phi[psi[i].0] == i, || [wreath.name(i).to_string()]);
    }
    let mut hom = Check::new("phi-homomorphism");
    for g in b.arrows() {
        for h in b.arrows() {
            hom.expect(phi[s.ta(g, h).0] == wreath.mul(phi[g.0], phi[h.0]), || {
                [an(g), an(h)]
            });
        }
    }
    ArrowGroup {
        wreath,
        psi,
        phi,
        checks: vec![psi_phi, phi_psi, hom],
    }
}
