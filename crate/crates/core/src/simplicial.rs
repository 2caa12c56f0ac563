//! Truncated simplicial sets, nerves, horn filling and the groupoid of a
//! pointed 2-Kan complex.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use crate::crossed_module::CrossedModule;
use crate::group::GroupTable;
use crate::groupoid::{ArrId, Arrow, FiniteGroupoid, ObjId};
use crate::report::{Check, ValidationReport, WITNESS_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("depth {depth} is too small, dimension {needed} is required")]
    DepthTooSmall { depth: usize, needed: usize },
    #[error("expected a single vertex, found {0}")]
    NotPointed(usize),
    #[error("not a 2-Kan complex: {0}")]
    NotTwoKan(String),
    #[error("ill-formed simplicial set: {}", .0.join("; "))]
    Structure(Vec<String>),
}

/// Layers `X₀..X_N` with `faces[n][i][x] = d_i x` for `x ∈ X_n`
/// (`faces[0]` is empty) and `degeneracies[n][i][x] = s_i x` for `n < N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSimplicialSet {
    pub depth: usize,
    pub layers: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

impl TruncatedSimplicialSet {
    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    #[inline]
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    #[inline]
    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracies[n][i][x]
    }

    pub fn name(&self, n: usize, x: usize) -> &str {
        &self.layers[n][x]
    }

    pub fn index_of(&self, n: usize, name: &str) -> Option<usize> {
        self.layers.get(n)?.iter().position(|s| s == name)
    }

    fn structural_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let n_layers = self.depth + 1;
        if self.layers.len() != n_layers {
            errs.push(format!(
                "{} layers for depth {}",
                self.layers.len(),
                self.depth
            ));
            return errs;
        }
        if self.faces.len() != n_layers || !self.faces[0].is_empty() {
            errs.push("face tables must be given for dimensions 1..=depth".into());
            return errs;
        }
        if self.degeneracies.len() != self.depth {
            errs.push("degeneracy tables must be given for dimensions 0..depth".into());
            return errs;
        }
        for n in 1..n_layers {
            if self.faces[n].len() != n + 1 {
                errs.push(format!("dimension {n} needs {} face maps", n + 1));
                continue;
            }
            for (i, d) in self.faces[n].iter().enumerate() {
                if d.len() != self.layers[n].len()
                    || d.iter().any(|&y| y >= self.layers[n - 1].len())
                {
                    errs.push(format!(
                        "d_{i} on dimension {n} is not a map X_{n} → X_{}",
                        n - 1
                    ));
                }
            }
        }
        for n in 0..self.depth {
            if self.degeneracies[n].len() != n + 1 {
                errs.push(format!("dimension {n} needs {} degeneracy maps", n + 1));
                continue;
            }
            for (i, s) in self.degeneracies[n].iter().enumerate() {
                if s.len() != self.layers[n].len()
                    || s.iter().any(|&y| y >= self.layers[n + 1].len())
                {
                    errs.push(format!(
                        "s_{i} on dimension {n} is not a map X_{n} → X_{}",
                        n + 1
                    ));
                }
            }
        }
        errs
    }
}

/// Checks the simplicial identities elementwise.
pub fn validate_simplicial(x: &TruncatedSimplicialSet) -> ValidationReport {
    let errs = x.structural_errors();
    if !errs.is_empty() {
        return ValidationReport::structural(errs);
    }
    let w = |n: usize, i: usize, j: usize, e: usize| {
        [
            format!("n={n}"),
            format!("i={i}"),
            format!("j={j}"),
            x.name(n, e).to_string(),
        ]
    };
    let mut dd = Check::new("face-face");
    for n in 2..=x.depth {
        for e in 0..x.layers[n].len() {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = x.face(n - 1, i, x.face(n, j, e));
                    let rhs = x.face(n - 1, j - 1, x.face(n, i, e));
                    dd.expect(lhs == rhs, || w(n, i, j, e));
                }
            }
        }
    }
    let mut ds = Check::new("face-degeneracy");
    for n in 0..x.depth {
        for e in 0..x.layers[n].len() {
            for j in 0..=n {
                let s = x.degeneracy(n, j, e);
                for i in 0..=n + 1 {
                    let lhs = x.face(n + 1, i, s);
                    let ok = if i < j {
                        lhs == x.degeneracy(n - 1, j - 1, x.face(n, i, e))
                    } else if i == j || i == j + 1 {
                        lhs == e
                    } else {
                        lhs == x.degeneracy(n - 1, j, x.face(n, i - 1, e))
                    };
                    ds.expect(ok, || w(n, i, j, e));
                }
            }
        }
    }
    let mut ss = Check::new("degeneracy-degeneracy");
    for n in 0..x.depth.saturating_sub(1) {
        for e in 0..x.layers[n].len() {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = x.degeneracy(n + 1, i, x.degeneracy(n, j, e));
                    let rhs = x.degeneracy(n + 1, j + 1, x.degeneracy(n, i, e));
                    ss.expect(lhs == rhs, || w(n, i, j, e));
                }
            }
        }
    }
    let mut report = ValidationReport::new();
    for c in [dd, ds, ss] {
        report.push(c);
    }
    report
}

/// Builds a simplicial set from keyed layers and key-level face and
/// degeneracy functions.
fn build<K: Clone + Eq + Hash>(
    layers: Vec<Vec<K>>,
    name: impl Fn(usize, &K) -> String,
    face: impl Fn(usize, usize, &K) -> K,
    degen: impl Fn(usize, usize, &K) -> K,
) -> TruncatedSimplicialSet {
    let depth = layers.len() - 1;
    let index: Vec<HashMap<&K, usize>> = layers
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, k)| (k, i)).collect())
        .collect();
    let lookup = |n: usize, k: &K| {
        *index[n]
            .get(k)
            .expect("face or degeneracy lands in the nerve")
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=depth {
        faces.push(
            (0..=n)
                .map(|i| {
                    layers[n]
                        .iter()
                        .map(|k| lookup(n - 1, &face(n, i, k)))
                        .collect()
                })
                .collect(),
        );
    }
    let degeneracies = (0..depth)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    layers[n]
                        .iter()
                        .map(|k| lookup(n + 1, &degen(n, i, k)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let names = layers
        .iter()
        .enumerate()
        .map(|(n, l)| l.iter().map(|k| name(n, k)).collect())
        .collect();
    TruncatedSimplicialSet {
        depth,
        layers: names,
        faces,
        degeneracies,
    }
}

/// Composable strings `x₀ → x₁ → ⋯ → x_n`; `d_i` composes at vertex
/// `i` (or drops an end), `s_i` inserts an identity at vertex `i`.
pub fn nerve_of_groupoid(g: &FiniteGroupoid, depth: usize) -> TruncatedSimplicialSet {
    // Key: (first vertex, arrows).
    type Key = (ObjId, Vec<ArrId>);
    let mut layers: Vec<Vec<Key>> = vec![g.objects().map(|x| (x, Vec::new())).collect()];
    for n in 1..=depth {
        let mut next = Vec::new();
        for (x, chain) in &layers[n - 1] {
            let end = chain.last().map_or(*x, |&a| g.tgt(a));
            for a in g.arrows().filter(|&a| g.src(a) == end) {
                let mut c = chain.clone();
                c.push(a);
                next.push((*x, c));
            }
        }
        layers.push(next);
    }
    let name = |n: usize, (x, chain): &Key| {
        if n == 0 {
            g.object_name(*x).to_string()
        } else if n == 1 {
            g.arrow_name(chain[0]).to_string()
        } else {
            format!(
                "[{}]",
                chain
                    .iter()
                    .map(|&a| g.arrow_name(a))
                    .collect::<Vec<_>>()
                    .join("|")
            )
        }
    };
    let face = |n: usize, i: usize, (x, chain): &Key| -> Key {
        let mut c = chain.clone();
        if i == 0 {
            let first = c.remove(0);
            (g.tgt(first), c)
        } else if i == n {
            c.pop();
            (*x, c)
        } else {
            let composed = g.comp(c[i], c[i - 1]).expect("chain is composable");
            c.splice(i - 1..=i, [composed]);
            (*x, c)
        }
    };
    let degen = |_: usize, i: usize, (x, chain): &Key| -> Key {
        let vertex = if i == 0 { *x } else { g.tgt(chain[i - 1]) };
        let mut c = chain.clone();
        c.insert(i, g.ident(vertex));
        (*x, c)
    };
    build(layers, name, face, degen)
}

/// A subset `V` of a group with the product defined when it stays in `V`.
/// `product[a * |V| + b]` is `Some(ab)` exactly when `ab ∈ V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialGroup {
    pub names: Vec<String>,
    pub product: Vec<Option<usize>>,
    pub unit: usize,
    pub inverse: Vec<usize>,
}

impl PartialGroup {
    /// `{−k, …, k} ⊂ ℤ` under truncated addition.
    pub fn integer_interval(k: i64) -> Self {
        let vals: Vec<i64> = (-k..=k).collect();
        let pos = |v: i64| vals.iter().position(|&w| w == v);
        let product = vals
            .iter()
            .flat_map(|&a| vals.iter().map(move |&b| a + b))
            .map(pos)
            .collect();
        PartialGroup {
            names: vals.iter().map(i64::to_string).collect(),
            product,
            unit: pos(0).expect("zero is in the interval"),
            inverse: vals
                .iter()
                .map(|&v| pos(-v).expect("interval is symmetric"))
                .collect(),
        }
    }

    /// `V = G`, every product defined.
    pub fn whole(g: &GroupTable) -> Self {
        PartialGroup {
            names: g.names().to_vec(),
            product: g
                .elements()
                .flat_map(|a| g.elements().map(move |b| Some(g.mul(a, b))))
                .collect(),
            unit: g.identity(),
            inverse: g.elements().map(|a| g.inv(a)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a * self.len() + b]
    }

    /// Unit, inverse and associativity laws wherever both sides are defined.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        if self.product.len() != n * n || self.inverse.len() != n || self.unit >= n {
            return ValidationReport::structural(vec![
                "partial group tables have the wrong shape".into()
            ]);
        }
        if self
            .product
            .iter()
            .flatten()
            .chain(&self.inverse)
            .any(|&c| c >= n)
        {
            return ValidationReport::structural(vec![
                "partial group tables point outside V".into()
            ]);
        }
        let nm = |a: usize| self.names[a].clone();
        let mut unit = Check::new("unit");
        let mut inverse = Check::new("inverse");
        for a in 0..n {
            unit.expect(
                self.mul(self.unit, a) == Some(a) && self.mul(a, self.unit) == Some(a),
                || [nm(a)],
            );
            let i = self.inverse[a];
            inverse.expect(
                self.mul(a, i) == Some(self.unit) && self.mul(i, a) == Some(self.unit),
                || [nm(a)],
            );
        }
        let mut assoc = Check::new("associativity");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.mul(a, b).and_then(|ab| self.mul(ab, c));
                    let rhs = self.mul(b, c).and_then(|bc| self.mul(a, bc));
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        assoc.expect(l == r, || [nm(a), nm(b), nm(c)]);
                    }
                }
            }
        }
        let mut report = ValidationReport::new();
        for c in [unit, inverse, assoc] {
            report.push(c);
        }
        report
    }

    /// Product of a consecutive run, if every partial product stays in `V`.
    fn run(&self, elems: &[usize]) -> Option<usize> {
        elems.iter().try_fold(self.unit, |acc, &g| self.mul(acc, g))
    }
}

/// Tuples `(g₁, …, g_n)` all of whose consecutive products `g_i⋯g_j`
/// lie in `V`.
pub fn nerve_of_partial_group(p: &PartialGroup, depth: usize) -> TruncatedSimplicialSet {
    let admissible =
        |t: &[usize]| (0..t.len()).all(|i| (i + 1..=t.len()).all(|j| p.run(&t[i..j]).is_some()));
    let mut layers: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for n in 1..=depth {
        let mut next = Vec::new();
        for t in &layers[n - 1] {
            for g in 0..p.len() {
                let mut c = t.clone();
                c.push(g);
                if admissible(&c) {
                    next.push(c);
                }
            }
        }
        layers.push(next);
    }
    let name = |n: usize, t: &Vec<usize>| {
        if n == 0 {
            "*".to_string()
        } else if n == 1 {
            p.names[t[0]].clone()
        } else {
            format!(
                "[{}]",
                t.iter()
                    .map(|&g| p.names[g].as_str())
                    .collect::<Vec<_>>()
                    .join("|")
            )
        }
    };
    let face = |n: usize, i: usize, t: &Vec<usize>| {
        let mut c = t.clone();
        if i == 0 {
            c.remove(0);
        } else if i == n {
            c.pop();
        } else {
            let m = p
                .mul(c[i - 1], c[i])
                .expect("consecutive products are defined");
            c.splice(i - 1..=i, [m]);
        }
        c
    };
    let degen = |_: usize, i: usize, t: &Vec<usize>| {
        let mut c = t.clone();
        c.insert(i, p.unit);
        c
    };
    build(layers, name, face, degen)
}

/// Simplex of the bar nerve of a crossed module: edge labels `x_ab`
/// for `a < b` and 2-cells `γ_abc` for `a < b < c`, both in
/// lexicographic order of their index tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct BarSimplex {
    x: Vec<usize>,
    g: Vec<usize>,
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    // position of (a, b), a < b ≤ n, in lexicographic order
    (0..a).map(|i| n - i).sum::<usize>() + (b - a - 1)
}

fn triple_index(n: usize, a: usize, b: usize, c: usize) -> usize {
    let choose2 = |k: usize| k * k.saturating_sub(1) / 2;
    (0..a).map(|i| choose2(n - i)).sum::<usize>()
        + (a + 1..b).map(|j| n - j).sum::<usize>()
        + (c - b - 1)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect()
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    (0..=n)
        .flat_map(|a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| (a, b, c))))
        .collect()
}

/// Nerve of the 2-group of a crossed module. An `n`-simplex is a family
/// `x_ab ∈ G₀`, `γ_abc ∈ Γ` with `x_ab·x_bc = ∂(γ_abc)·x_ac` and
/// `γ_abc·γ_acd = (x_ab*γ_bcd)·γ_abd`. Faces and degeneracies pull back
/// along the coface and codegeneracy maps, with identity edges and unit
/// cells on repeated vertices.
pub fn bar_nerve(xm: &CrossedModule, depth: usize) -> TruncatedSimplicialSet {
    let (gm, g0) = (&xm.gamma, &xm.g0);
    let mut layers: Vec<Vec<BarSimplex>> = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let ps = pairs(n);
        let ts = triples(n);
        let free_x = n;
        let free_g: Vec<(usize, usize)> = ps.iter().copied().filter(|&(a, _)| a > 0).collect();
        let mut layer = Vec::new();
        let total = g0.order().pow(free_x as u32) * gm.order().pow(free_g.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut x0 = vec![0usize; n + 1];
            for k in (1..=n).rev() {
                x0[k] = c % g0.order();
                c /= g0.order();
            }
            let mut g0ab = HashMap::new();
            for &(a, b) in free_g.iter().rev() {
                g0ab.insert((a, b), c % gm.order());
                c /= gm.order();
            }
            // x_0b is x0[b]; x_ab = x_0a⁻¹ ∂(γ_0ab) x_0b; γ_abc = x_0a⁻¹ * (γ_0ab γ_0bc γ_0ac⁻¹).
            let x_of = |a: usize, b: usize| {
                if a == 0 {
                    x0[b]
                } else {
                    g0.product([g0.inv(x0[a]), xm.boundary(g0ab[&(a, b)]), x0[b]])
                }
            };
            let g_of = |a: usize, b: usize, cc: usize| {
                if a == 0 {
                    g0ab[&(b, cc)]
                } else {
                    let inner = gm.product([g0ab[&(a, b)], g0ab[&(b, cc)], gm.inv(g0ab[&(a, cc)])]);
                    xm.act(g0.inv(x0[a]), inner)
                }
            };
            let s = BarSimplex {
                x: ps.iter().map(|&(a, b)| x_of(a, b)).collect(),
                g: ts.iter().map(|&(a, b, cc)| g_of(a, b, cc)).collect(),
            };
            if is_bar_simplex(xm, n, &s) {
                layer.push(s);
            }
        }
        layers.push(layer);
    }
    let name = |n: usize, s: &BarSimplex| {
        if n == 0 {
            return "*".to_string();
        }
        let xs: Vec<&str> = s.x.iter().map(|&v| g0.name(v)).collect();
        if n == 1 {
            return xs[0].to_string();
        }
        let gs: Vec<&str> = s.g.iter().map(|&v| gm.name(v)).collect();
        format!("[{};{}]", xs.join(","), gs.join(","))
    };
    let pull =
        |n_new: usize, s: &BarSimplex, n_old: usize, f: &dyn Fn(usize) -> usize| BarSimplex {
            x: pairs(n_new)
                .into_iter()
                .map(|(a, b)| {
                    let (fa, fb) = (f(a), f(b));
                    if fa == fb {
                        g0.identity()
                    } else {
                        s.x[pair_index(n_old, fa, fb)]
                    }
                })
                .collect(),
            g: triples(n_new)
                .into_iter()
                .map(|(a, b, c)| {
                    let (fa, fb, fc) = (f(a), f(b), f(c));
                    if fa == fb || fb == fc {
                        gm.identity()
                    } else {
                        s.g[triple_index(n_old, fa, fb, fc)]
                    }
                })
                .collect(),
        };
    let face =
        |n: usize, i: usize, s: &BarSimplex| pull(n - 1, s, n, &|a| if a < i { a } else { a + 1 });
    let degen =
        |n: usize, i: usize, s: &BarSimplex| pull(n + 1, s, n, &|a| if a <= i { a } else { a - 1 });
    build(layers, name, face, degen)
}

fn is_bar_simplex(xm: &CrossedModule, n: usize, s: &BarSimplex) -> bool {
    let (gm, g0) = (&xm.gamma, &xm.g0);
    let x = |a: usize, b: usize| s.x[pair_index(n, a, b)];
    let g = |a: usize, b: usize, c: usize| s.g[triple_index(n, a, b, c)];
    let edges = triples(n)
        .iter()
        .all(|&(a, b, c)| g0.mul(x(a, b), x(b, c)) == g0.mul(xm.boundary(g(a, b, c)), x(a, c)));
    let cocycle = (0..=n).all(|a| {
        (a + 1..=n).all(|b| {
            (b + 1..=n).all(|c| {
                (c + 1..=n).all(|d| {
                    gm.mul(g(a, b, c), g(a, c, d))
                        == gm.mul(xm.act(x(a, b), g(b, c, d)), g(a, b, d))
                })
            })
        })
    });
    edges && cocycle
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HornEntry {
    pub m: usize,
    pub j: usize,
    pub horns: usize,
    pub missing: usize,
    pub ambiguous: usize,
    pub uniqueness_required: bool,
    /// Faces `y_i`, `i ≠ j`, of each horn without a filler.
    pub missing_witnesses: Vec<Vec<String>>,
    pub ambiguous_witnesses: Vec<Vec<String>>,
}

impl HornEntry {
    pub fn passed(&self) -> bool {
        self.missing == 0 && (!self.uniqueness_required || self.ambiguous == 0)
    }

    pub fn has_missing(&self, witness: &[&str]) -> bool {
        self.missing_witnesses
            .iter()
            .any(|w| w.iter().map(String::as_str).eq(witness.iter().copied()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KanReport {
    pub n: usize,
    pub max_m: usize,
    pub entries: Vec<HornEntry>,
    pub passed: bool,
    /// `(m, j, horn faces)` of the first failure in canonical order.
    pub first_failure: Option<(usize, usize, Vec<String>)>,
}

impl KanReport {
    pub fn entry(&self, m: usize, j: usize) -> Option<&HornEntry> {
        self.entries.iter().find(|e| e.m == m && e.j == j)
    }
}

/// All horns `Λ[m, j]`: tuples `(y_i)_{i≠j}` of `(m−1)`-simplices with
/// `d_i y_k = d_{k−1} y_i` for `i < k`.
pub fn horns(x: &TruncatedSimplicialSet, m: usize, j: usize) -> Vec<Vec<usize>> {
    let slots: Vec<usize> = (0..=m).filter(|&i| i != j).collect();
    let size = x.layers[m - 1].len();
    // face_index[i][v] = (m−1)-simplices y with d_i y = v
    let face_index: Vec<HashMap<usize, Vec<usize>>> = if m >= 2 {
        (0..m)
            .map(|i| {
                let mut idx: HashMap<usize, Vec<usize>> = HashMap::new();
                for y in 0..size {
                    idx.entry(x.face(m - 1, i, y)).or_default().push(y);
                }
                idx
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(slots.len());
    let all: Vec<usize> = (0..size).collect();
    fill_horn(x, m, &slots, &face_index, &all, &mut chosen, &mut out);
    out
}

fn fill_horn(
    x: &TruncatedSimplicialSet,
    m: usize,
    slots: &[usize],
    face_index: &[HashMap<usize, Vec<usize>>],
    all: &[usize],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let pos = chosen.len();
    if pos == slots.len() {
        out.push(chosen.clone());
        return;
    }
    let k = slots[pos];
    // Constraints from earlier slots i < k: d_i y_k = d_{k−1} y_i.
    let constraints: Vec<(usize, usize)> = slots[..pos]
        .iter()
        .zip(chosen.iter())
        .map(|(&i, &yi)| (i, x.face(m - 1, k - 1, yi)))
        .collect();
    let empty = Vec::new();
    let candidates: &[usize] = match constraints.first() {
        Some(&(i, v)) => face_index[i].get(&v).unwrap_or(&empty),
        None => all,
    };
    for &y in candidates {
        if constraints.iter().all(|&(i, v)| x.face(m - 1, i, y) == v) {
            chosen.push(y);
            fill_horn(x, m, slots, face_index, all, chosen, out);
            chosen.pop();
        }
    }
}

/// Fillers of every `Λ[m, j]` horn, keyed by the horn tuple.
pub fn filler_index(
    x: &TruncatedSimplicialSet,
    m: usize,
    j: usize,
) -> HashMap<Vec<usize>, Vec<usize>> {
    let mut idx: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for s in 0..x.layers[m].len() {
        let key = (0..=m)
            .filter(|&i| i != j)
            .map(|i| x.face(m, i, s))
            .collect();
        idx.entry(key).or_default().push(s);
    }
    idx
}

/// Horn filling in dimensions `1..=max_m`: fillers must exist, and be
/// unique above dimension `n`.
pub fn kan_check(
    x: &TruncatedSimplicialSet,
    n: usize,
    max_m: usize,
) -> Result<KanReport, SimplicialError> {
    let errs = x.structural_errors();
    if !errs.is_empty() {
        return Err(SimplicialError::Structure(errs));
    }
    if max_m > x.depth {
        return Err(SimplicialError::DepthTooSmall {
            depth: x.depth,
            needed: max_m,
        });
    }
    let mut entries = Vec::new();
    let mut first_failure = None;
    for m in 1..=max_m {
        for j in 0..=m {
            let fillers = filler_index(x, m, j);
            let hs = horns(x, m, j);
            let uniqueness_required = m > n;
            let mut entry = HornEntry {
                m,
                j,
                horns: hs.len(),
                missing: 0,
                ambiguous: 0,
                uniqueness_required,
                missing_witnesses: Vec::new(),
                ambiguous_witnesses: Vec::new(),
            };
            for h in &hs {
                let names = || {
                    h.iter()
                        .map(|&y| x.name(m - 1, y).to_string())
                        .collect::<Vec<_>>()
                };
                let count = fillers.get(h).map_or(0, Vec::len);
                if count == 0 {
                    entry.missing += 1;
                    if entry.missing_witnesses.len() < WITNESS_CAP {
                        entry.missing_witnesses.push(names());
                    }
                    if first_failure.is_none() {
                        first_failure = Some((m, j, names()));
                    }
                } else if count > 1 {
                    entry.ambiguous += 1;
                    if entry.ambiguous_witnesses.len() < WITNESS_CAP {
                        entry.ambiguous_witnesses.push(names());
                    }
                    if uniqueness_required && first_failure.is_none() {
                        first_failure = Some((m, j, names()));
                    }
                }
            }
            entries.push(entry);
        }
    }
    let passed = entries.iter().all(HornEntry::passed);
    Ok(KanReport {
        n,
        max_m,
        entries,
        passed,
        first_failure,
    })
}

/// The groupoid of a pointed 2-Kan complex: objects `X₁`, arrows the
/// 2-simplices `τ` with `d₂τ = s₀(pt)`, from `d₀τ` to `d₁τ`. `β∘α` is
/// `d₁` of the unique `Λ[3,1]` filler of `(α, β, s₀s₀ pt)`.
pub fn two_kan_to_groupoid(x: &TruncatedSimplicialSet) -> Result<FiniteGroupoid, SimplicialError> {
    if x.depth < 3 {
        return Err(SimplicialError::DepthTooSmall {
            depth: x.depth,
            needed: 3,
        });
    }
    if x.layers[0].len() != 1 {
        return Err(SimplicialError::NotPointed(x.layers[0].len()));
    }
    let report = kan_check(x, 2, 3)?;
    if let Some((m, j, w)) = report.first_failure {
        return Err(SimplicialError::NotTwoKan(format!(
            "horn Λ[{m},{j}] at ({})",
            w.join(", ")
        )));
    }
    let pt_edge = x.degeneracy(0, 0, 0);
    let pt_tri = x.degeneracy(1, 0, pt_edge);
    let cells: Vec<usize> = (0..x.layers[2].len())
        .filter(|&t| x.face(2, 2, t) == pt_edge)
        .collect();
    let pos: HashMap<usize, usize> = cells.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let arrows = cells
        .iter()
        .map(|&t| Arrow {
            name: x.name(2, t).to_string(),
            src: ObjId(x.face(2, 0, t)),
            tgt: ObjId(x.face(2, 1, t)),
        })
        .collect();
    let ident = (0..x.layers[1].len())
        .map(|e| ArrId(pos[&x.degeneracy(1, 0, e)]))
        .collect();
    let fillers = filler_index(x, 3, 1);
    FiniteGroupoid::from_fn(x.layers[1].clone(), arrows, ident, |beta, alpha| {
        let key = vec![cells[alpha.0], cells[beta.0], pt_tri];
        let filler = fillers[&key][0];
        ArrId(pos[&x.face(3, 1, filler)])
    })
    .map_err(|e| SimplicialError::NotTwoKan(e.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_positions_are_lexicographic() {
        for n in 0..5 {
            for (i, (a, b)) in pairs(n).into_iter().enumerate() {
                assert_eq!(pair_index(n, a, b), i);
            }
        }
    }

    #[test]
    fn triple_positions_are_lexicographic() {
        for n in 0..6 {
            for (i, (a, b, c)) in triples(n).into_iter().enumerate() {
                assert_eq!(triple_index(n, a, b, c), i);
            }
        }
    }

    #[test]
    fn z2_nerve_layers_and_identities() {
        let g = FiniteGroupoid::delooping(&GroupTable::cyclic(2));
        let x = nerve_of_groupoid(&g, 3);
        assert_eq!(x.layer_sizes(), vec![1, 2, 4, 8]);
        assert!(validate_simplicial(&x).is_valid());
    }

    #[test]
    fn interval_nerve() {
        let x = nerve_of_partial_group(&PartialGroup::integer_interval(1), 2);
        assert_eq!(x.layer_sizes(), vec![1, 3, 7]);
        assert!(validate_simplicial(&x).is_valid());
    }
}
