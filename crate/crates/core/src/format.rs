//! JSON documents for every input type. Items are referred to by name;
//! parsing resolves names and checks that tables are total.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bibundle::Bibundle;
use crate::covering::{ComplexEdge, EquivariantComplex};
use crate::crossed_module::CrossedModule;
use crate::group::GroupTable;
use crate::groupoid::{ArrId, Arrow, FiniteGroupoid, ObjId};
use crate::monoidal::{search_adjunction_data, CoherentTwoGroup, TwoGroupTables};
use crate::presentation::Letter;
use crate::simplicial::TruncatedSimplicialSet;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{}", .0.join("; "))]
    Schema(Vec<String>),
}

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(vec![msg.into()])
}

type Result<T> = std::result::Result<T, FormatError>;

fn index(names: &[String]) -> HashMap<&str, usize> {
    names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect()
}

fn lookup(idx: &HashMap<&str, usize>, what: &str, name: &str) -> Result<usize> {
    idx.get(name)
        .copied()
        .ok_or_else(|| schema(format!("unknown {what} `{name}`")))
}

/// Fills a dense table from keyed entries; every slot must be set once.
fn fill<T: Copy + PartialEq>(
    len: usize,
    what: &str,
    entries: impl IntoIterator<Item = (usize, T)>,
) -> Result<Vec<T>> {
    let mut out: Vec<Option<T>> = vec![None; len];
    for (k, v) in entries {
        match out[k] {
            Some(prev) if prev != v => {
                return Err(schema(format!("conflicting entries in {what}")))
            }
            _ => out[k] = Some(v),
        }
    }
    out.into_iter()
        .collect::<Option<Vec<T>>>()
        .ok_or_else(|| schema(format!("{what} is not total")))
}

fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl GroupDoc {
    pub fn from_group(g: &GroupTable) -> Self {
        GroupDoc {
            elements: g.names().to_vec(),
            table: g.named_table(),
        }
    }

    pub fn build(&self) -> Result<GroupTable> {
        GroupTable::from_named_table(self.elements.clone(), &self.table)
            .map_err(|e| schema(format!("group: {e}")))
    }
}

pub fn parse_group(s: &str) -> Result<GroupTable> {
    serde_json::from_str::<GroupDoc>(s)?.build()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    /// `[h, g, h∘g]`.
    pub comp: Vec<[String; 3]>,
    pub ident: BTreeMap<String, String>,
    pub inv: BTreeMap<String, String>,
}

impl GroupoidDoc {
    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let an = |a: ArrId| g.arrow_name(a).to_string();
        GroupoidDoc {
            objects: g.object_names().to_vec(),
            arrows: g
                .arrows()
                .map(|a| ArrowDoc {
                    id: an(a),
                    src: g.object_name(g.src(a)).into(),
                    tgt: g.object_name(g.tgt(a)).into(),
                })
                .collect(),
            comp: g
                .composition_entries()
                .map(|(h, k, r)| [an(h), an(k), an(r)])
                .collect(),
            ident: g
                .objects()
                .map(|x| (g.object_name(x).to_string(), an(g.ident(x))))
                .collect(),
            inv: g.arrows().map(|a| (an(a), an(g.inv(a)))).collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroupoid> {
        let objs = index(&self.objects);
        let arrow_names: Vec<String> = self.arrows.iter().map(|a| a.id.clone()).collect();
        let arrs = index(&arrow_names);
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    name: a.id.clone(),
                    src: ObjId(lookup(&objs, "object", &a.src)?),
                    tgt: ObjId(lookup(&objs, "object", &a.tgt)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let comp = self
            .comp
            .iter()
            .map(|[h, g, r]| {
                Ok((
                    ArrId(lookup(&arrs, "arrow", h)?),
                    ArrId(lookup(&arrs, "arrow", g)?),
                    ArrId(lookup(&arrs, "arrow", r)?),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let ident = fill(
            self.objects.len(),
            "ident",
            self.ident
                .iter()
                .map(|(x, a)| {
                    Ok((
                        lookup(&objs, "object", x)?,
                        ArrId(lookup(&arrs, "arrow", a)?),
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        let inv = fill(
            arrows.len(),
            "inv",
            self.inv
                .iter()
                .map(|(a, b)| {
                    Ok((
                        lookup(&arrs, "arrow", a)?,
                        ArrId(lookup(&arrs, "arrow", b)?),
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        FiniteGroupoid::from_parts(self.objects.clone(), arrows, comp, ident, inv)
            .map_err(FormatError::Schema)
    }
}

pub fn parse_groupoid(s: &str) -> Result<FiniteGroupoid> {
    serde_json::from_str::<GroupoidDoc>(s)?.build()
}

pub fn groupoid_to_json(g: &FiniteGroupoid) -> String {
    to_pretty(&GroupoidDoc::from_groupoid(g))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGroupDoc {
    #[serde(flatten)]
    pub base: GroupoidDoc,
    /// `[x, y, x⊗y]`.
    pub tensor_obj: Vec<[String; 3]>,
    /// `[g, h, g⊗h]`.
    pub tensor_arr: Vec<[String; 3]>,
    pub unit: String,
    /// `[x, y, z, a_{x,y,z}]`.
    pub assoc: Vec<[String; 4]>,
    pub lunit: BTreeMap<String, String>,
    pub runit: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bar: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<BTreeMap<String, String>>,
}

/// A parsed 2-group, flagging whether `bar`, `d` and `e` were searched
/// for because the document omitted them.
#[derive(Debug, Clone)]
pub struct ParsedTwoGroup {
    pub two_group: CoherentTwoGroup,
    pub adjunction_searched: bool,
}

impl TwoGroupDoc {
    pub fn from_two_group(t: &CoherentTwoGroup) -> Self {
        let b = t.base();
        let on = |x: ObjId| b.object_name(x).to_string();
        let an = |g: ArrId| b.arrow_name(g).to_string();
        let per_obj = |f: &dyn Fn(ObjId) -> String| {
            b.objects()
                .map(|x| (on(x), f(x)))
                .collect::<BTreeMap<_, _>>()
        };
        TwoGroupDoc {
            base: GroupoidDoc::from_groupoid(b),
            tensor_obj: b
                .objects()
                .flat_map(|x| b.objects().map(move |y| (x, y)))
                .map(|(x, y)| [on(x), on(y), on(t.to(x, y))])
                .collect(),
            tensor_arr: b
                .arrows()
                .flat_map(|g| b.arrows().map(move |h| (g, h)))
                .map(|(g, h)| [an(g), an(h), an(t.ta(g, h))])
                .collect(),
            unit: on(t.unit()),
            assoc: b
                .objects()
                .flat_map(|x| {
                    b.objects()
                        .flat_map(move |y| b.objects().map(move |z| (x, y, z)))
                })
                .map(|(x, y, z)| [on(x), on(y), on(z), an(t.assoc(x, y, z))])
                .collect(),
            lunit: per_obj(&|x| an(t.lunit(x))),
            runit: per_obj(&|x| an(t.runit(x))),
            bar: Some(per_obj(&|x| on(t.bar(x)))),
            d: Some(per_obj(&|x| an(t.adj_d(x)))),
            e: Some(per_obj(&|x| an(t.adj_e(x)))),
        }
    }

    pub fn build(&self) -> Result<ParsedTwoGroup> {
        let base = self.base.build()?;
        let (n, m) = (base.object_count(), base.arrow_count());
        let objs = index(base.object_names());
        let arrow_names: Vec<String> = base
            .arrows()
            .map(|a| base.arrow_name(a).to_string())
            .collect();
        let arrs = index(&arrow_names);
        let obj = |s: &str| lookup(&objs, "object", s);
        let arr = |s: &str| lookup(&arrs, "arrow", s);
        let pairs = |rows: &[[String; 3]], lk: &dyn Fn(&str) -> Result<usize>, size: usize| {
            rows.iter()
                .map(|[a, b, c]| Ok((lk(a)? * size + lk(b)?, lk(c)?)))
                .collect::<Result<Vec<_>>>()
        };
        let tensor_obj = fill(n * n, "tensor_obj", pairs(&self.tensor_obj, &obj, n)?)?
            .into_iter()
            .map(ObjId)
            .collect();
        let tensor_arr = fill(m * m, "tensor_arr", pairs(&self.tensor_arr, &arr, m)?)?
            .into_iter()
            .map(ArrId)
            .collect();
        let assoc = fill(
            n * n * n,
            "assoc",
            self.assoc
                .iter()
                .map(|[x, y, z, a]| Ok(((obj(x)? * n + obj(y)?) * n + obj(z)?, ArrId(arr(a)?))))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let per_obj =
            |map: &BTreeMap<String, String>, what: &str, val: &dyn Fn(&str) -> Result<usize>| {
                fill(
                    n,
                    what,
                    map.iter()
                        .map(|(k, v)| Ok((obj(k)?, val(v)?)))
                        .collect::<Result<Vec<_>>>()?,
                )
            };
        let lunit = per_obj(&self.lunit, "lunit", &arr)?
            .into_iter()
            .map(ArrId)
            .collect();
        let runit = per_obj(&self.runit, "runit", &arr)?
            .into_iter()
            .map(ArrId)
            .collect();
        let mut tables = TwoGroupTables {
            tensor_obj,
            tensor_arr,
            unit: ObjId(obj(&self.unit)?),
            assoc: assoc.into_iter().collect(),
            lunit,
            runit,
            bar: Vec::new(),
            adj_d: Vec::new(),
            adj_e: Vec::new(),
        };
        let searched = match (&self.bar, &self.d, &self.e) {
            (Some(bar), Some(d), Some(e)) => {
                tables.bar = per_obj(bar, "bar", &obj)?.into_iter().map(ObjId).collect();
                tables.adj_d = per_obj(d, "d", &arr)?.into_iter().map(ArrId).collect();
                tables.adj_e = per_obj(e, "e", &arr)?.into_iter().map(ArrId).collect();
                false
            }
            (None, None, None) => {
                let (bar, d, e) = search_adjunction_data(&base, &tables)
                    .ok_or_else(|| schema("no adjunction data exists for this tensor"))?;
                tables.bar = bar;
                tables.adj_d = d;
                tables.adj_e = e;
                true
            }
            _ => return Err(schema("bar, d and e must be given together or not at all")),
        };
        let two_group = CoherentTwoGroup::new(base, tables).map_err(|e| schema(e.to_string()))?;
        Ok(ParsedTwoGroup {
            two_group,
            adjunction_searched: searched,
        })
    }
}

pub fn parse_two_group(s: &str) -> Result<ParsedTwoGroup> {
    serde_json::from_str::<TwoGroupDoc>(s)?.build()
}

pub fn two_group_to_json(t: &CoherentTwoGroup) -> String {
    to_pretty(&TwoGroupDoc::from_two_group(t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedModuleDoc {
    pub gamma: GroupDoc,
    pub g0: GroupDoc,
    pub partial: BTreeMap<String, String>,
    /// `[x, γ, x*γ]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivial_action: Option<bool>,
}

impl CrossedModuleDoc {
    pub fn from_crossed_module(x: &CrossedModule) -> Self {
        let (g, h) = (&x.gamma, &x.g0);
        CrossedModuleDoc {
            gamma: GroupDoc::from_group(g),
            g0: GroupDoc::from_group(h),
            partial: g
                .elements()
                .map(|c| (g.name(c).to_string(), h.name(x.boundary(c)).to_string()))
                .collect(),
            action: Some(
                h.elements()
                    .flat_map(|a| g.elements().map(move |c| (a, c)))
                    .map(|(a, c)| {
                        [
                            h.name(a).to_string(),
                            g.name(c).to_string(),
                            g.name(x.act(a, c)).to_string(),
                        ]
                    })
                    .collect(),
            ),
            trivial_action: None,
        }
    }

    pub fn build(&self) -> Result<CrossedModule> {
        let gamma = self.gamma.build()?;
        let g0 = self.g0.build()?;
        let gi = index(gamma.names());
        let hi = index(g0.names());
        let partial = fill(
            gamma.order(),
            "partial",
            self.partial
                .iter()
                .map(|(c, x)| Ok((lookup(&gi, "Γ element", c)?, lookup(&hi, "G₀ element", x)?)))
                .collect::<Result<Vec<_>>>()?,
        )?;
        match (&self.action, self.trivial_action) {
            (None, Some(true)) => Ok(CrossedModule::with_trivial_action(gamma, g0, partial)),
            (Some(rows), None | Some(false)) => {
                let k = gamma.order();
                let action = fill(
                    g0.order() * k,
                    "action",
                    rows.iter()
                        .map(|[x, c, r]| {
                            Ok((
                                lookup(&hi, "G₀ element", x)? * k + lookup(&gi, "Γ element", c)?,
                                lookup(&gi, "Γ element", r)?,
                            ))
                        })
                        .collect::<Result<Vec<_>>>()?,
                )?;
                Ok(CrossedModule::new(gamma, g0, partial, action))
            }
            _ => Err(schema(
                "give exactly one of `action` or `trivial_action: true`",
            )),
        }
    }
}

pub fn parse_crossed_module(s: &str) -> Result<CrossedModule> {
    serde_json::from_str::<CrossedModuleDoc>(s)?.build()
}

pub fn crossed_module_to_json(x: &CrossedModule) -> String {
    to_pretty(&CrossedModuleDoc::from_crossed_module(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialDoc {
    pub depth: usize,
    pub layers: Vec<Vec<String>>,
    /// `faces["n"][i][k]` names `d_i` of the `k`-th simplex of `X_n`.
    pub faces: BTreeMap<String, Vec<Vec<String>>>,
    /// `degeneracies["n"][i][k]` names `s_i` of the `k`-th simplex of `X_n`.
    pub degeneracies: BTreeMap<String, Vec<Vec<String>>>,
}

/// Largest accepted simplicial depth.
pub const MAX_DEPTH: usize = 16;

impl SimplicialDoc {
    pub fn from_simplicial(x: &TruncatedSimplicialSet) -> Self {
        let named = |maps: &Vec<Vec<usize>>, layer: &Vec<String>| -> Vec<Vec<String>> {
            maps.iter()
                .map(|m| m.iter().map(|&y| layer[y].clone()).collect())
                .collect()
        };
        SimplicialDoc {
            depth: x.depth,
            layers: x.layers.clone(),
            faces: (1..=x.depth)
                .map(|n| (n.to_string(), named(&x.faces[n], &x.layers[n - 1])))
                .collect(),
            degeneracies: (0..x.depth)
                .map(|n| (n.to_string(), named(&x.degeneracies[n], &x.layers[n + 1])))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<TruncatedSimplicialSet> {
        if self.depth > MAX_DEPTH {
            return Err(schema(format!("depth {} exceeds {MAX_DEPTH}", self.depth)));
        }
        if self.layers.len() != self.depth + 1 {
            return Err(schema(format!(
                "{} layers for depth {}",
                self.layers.len(),
                self.depth
            )));
        }
        let idx: Vec<HashMap<&str, usize>> = self.layers.iter().map(|l| index(l)).collect();
        for (n, (l, i)) in self.layers.iter().zip(&idx).enumerate() {
            if l.len() != i.len() {
                return Err(schema(format!("duplicate simplex name in layer {n}")));
            }
        }
        let resolve = |maps: Option<&Vec<Vec<String>>>,
                       target: usize,
                       n: usize,
                       what: &str|
         -> Result<Vec<Vec<usize>>> {
            let maps = maps.ok_or_else(|| schema(format!("missing {what} for dimension {n}")))?;
            maps.iter()
                .map(|m| {
                    m.iter()
                        .map(|s| lookup(&idx[target], "simplex", s))
                        .collect()
                })
                .collect()
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=self.depth {
            faces.push(resolve(self.faces.get(&n.to_string()), n - 1, n, "faces")?);
        }
        let degeneracies = (0..self.depth)
            .map(|n| {
                resolve(
                    self.degeneracies.get(&n.to_string()),
                    n + 1,
                    n,
                    "degeneracies",
                )
            })
            .collect::<Result<Vec<_>>>()?;
        if self.faces.len() != self.depth || self.degeneracies.len() != self.depth {
            return Err(schema(
                "face or degeneracy table for a dimension outside the depth",
            ));
        }
        Ok(TruncatedSimplicialSet {
            depth: self.depth,
            layers: self.layers.clone(),
            faces,
            degeneracies,
        })
    }
}

pub fn parse_simplicial(s: &str) -> Result<TruncatedSimplicialSet> {
    serde_json::from_str::<SimplicialDoc>(s)?.build()
}

pub fn simplicial_to_json(x: &TruncatedSimplicialSet) -> String {
    to_pretty(&SimplicialDoc::from_simplicial(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    /// `vertices[γ][k]` is the image of the `k`-th vertex.
    pub vertices: BTreeMap<String, Vec<String>>,
    pub edges: BTreeMap<String, Vec<String>>,
    /// Cells are referred to by position in `cells2`.
    pub cells: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    /// Boundary words: edge ids, `^-1` marking reversed edges.
    pub cells2: Vec<Vec<String>>,
    pub gamma: GroupDoc,
    pub action: ActionDoc,
    pub simply_connected_asserted: bool,
}

impl ComplexDoc {
    pub fn from_complex(c: &EquivariantComplex) -> Self {
        let g = &c.gamma;
        let per = |f: &dyn Fn(usize) -> Vec<String>| {
            g.elements()
                .map(|a| (g.name(a).to_string(), f(a)))
                .collect::<BTreeMap<_, _>>()
        };
        ComplexDoc {
            vertices: c.vertices.clone(),
            edges: c
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.name.clone(),
                    src: c.vertices[e.src].clone(),
                    tgt: c.vertices[e.tgt].clone(),
                    label: e.label.clone(),
                })
                .collect(),
            cells2: c.cells.iter().map(|w| c.format_edge_word(w)).collect(),
            gamma: GroupDoc::from_group(g),
            action: ActionDoc {
                vertices: per(&|a| {
                    (0..c.vertices.len())
                        .map(|v| c.vertices[c.act_vertex(a, v)].clone())
                        .collect()
                }),
                edges: per(&|a| {
                    (0..c.edges.len())
                        .map(|e| c.edges[c.act_edge(a, e)].name.clone())
                        .collect()
                }),
                cells: g
                    .elements()
                    .map(|a| {
                        (
                            g.name(a).to_string(),
                            (0..c.cells.len()).map(|x| c.act_cell(a, x)).collect(),
                        )
                    })
                    .collect(),
            },
            simply_connected_asserted: c.simply_connected_asserted,
        }
    }

    pub fn build(&self) -> Result<EquivariantComplex> {
        let gamma = self.gamma.build()?;
        let vi = index(&self.vertices);
        if vi.len() != self.vertices.len() {
            return Err(schema("duplicate vertex name"));
        }
        let edge_names: Vec<String> = self.edges.iter().map(|e| e.id.clone()).collect();
        let ei = index(&edge_names);
        if ei.len() != edge_names.len() {
            return Err(schema("duplicate edge id"));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(ComplexEdge {
                    name: e.id.clone(),
                    src: lookup(&vi, "vertex", &e.src)?,
                    tgt: lookup(&vi, "vertex", &e.tgt)?,
                    label: e.label.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cells = self
            .cells2
            .iter()
            .map(|w| {
                w.iter()
                    .map(|tok| {
                        let (name, inverse) = match tok.strip_suffix("^-1") {
                            Some(n) => (n, true),
                            None => (tok.as_str(), false),
                        };
                        Ok(Letter {
                            gen: lookup(&ei, "edge", name)?,
                            inverse,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let table =
            |map: &BTreeMap<String, Vec<usize>>, len: usize, what: &str| -> Result<Vec<usize>> {
                let mut out = Vec::with_capacity(gamma.order() * len);
                for a in gamma.elements() {
                    let row = map.get(gamma.name(a)).ok_or_else(|| {
                        schema(format!("{what} action misses `{}`", gamma.name(a)))
                    })?;
                    if row.len() != len {
                        return Err(schema(format!(
                            "{what} action of `{}` has the wrong length",
                            gamma.name(a)
                        )));
                    }
                    out.extend_from_slice(row);
                }
                if map.len() != gamma.order() {
                    return Err(schema(format!(
                        "{what} action names an unknown group element"
                    )));
                }
                Ok(out)
            };
        let by_index =
            |map: &BTreeMap<String, Vec<String>>, idx: &HashMap<&str, usize>, what: &str| {
                map.iter()
                    .map(|(k, row)| {
                        Ok((
                            k.clone(),
                            row.iter()
                                .map(|s| lookup(idx, what, s))
                                .collect::<Result<Vec<_>>>()?,
                        ))
                    })
                    .collect::<Result<BTreeMap<_, _>>>()
            };
        let vertex_action = table(
            &by_index(&self.action.vertices, &vi, "vertex")?,
            self.vertices.len(),
            "vertex",
        )?;
        let edge_action = table(
            &by_index(&self.action.edges, &ei, "edge")?,
            edges.len(),
            "edge",
        )?;
        let cell_action = table(&self.action.cells, cells.len(), "cell")?;
        let c = EquivariantComplex {
            vertices: self.vertices.clone(),
            edges,
            cells,
            gamma,
            vertex_action,
            edge_action,
            cell_action,
            simply_connected_asserted: self.simply_connected_asserted,
        };
        let errs = c.structural_errors();
        if errs.is_empty() {
            Ok(c)
        } else {
            Err(FormatError::Schema(errs))
        }
    }
}

pub fn parse_complex(s: &str) -> Result<EquivariantComplex> {
    serde_json::from_str::<ComplexDoc>(s)?.build()
}

pub fn complex_to_json(c: &EquivariantComplex) -> String {
    to_pretty(&ComplexDoc::from_complex(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BibundleDoc {
    pub left: GroupoidDoc,
    pub right: GroupoidDoc,
    pub total: Vec<String>,
    pub left_moment: BTreeMap<String, String>,
    pub right_moment: BTreeMap<String, String>,
    /// `[k, e, k·e]` for every defined left action.
    pub left_action: Vec<[String; 3]>,
    /// `[e, k', e·k']` for every defined right action.
    pub right_action: Vec<[String; 3]>,
}

impl BibundleDoc {
    pub fn from_bibundle(b: &Bibundle) -> Self {
        let (l, r) = (&b.left, &b.right);
        let en = |e: usize| b.total[e].clone();
        let mut left_action = Vec::new();
        for k in l.arrows() {
            for e in 0..b.size() {
                if let Some(x) = b.act_left(k, e) {
                    left_action.push([l.arrow_name(k).to_string(), en(e), en(x)]);
                }
            }
        }
        let mut right_action = Vec::new();
        for e in 0..b.size() {
            for k in r.arrows() {
                if let Some(x) = b.act_right(e, k) {
                    right_action.push([en(e), r.arrow_name(k).to_string(), en(x)]);
                }
            }
        }
        BibundleDoc {
            left: GroupoidDoc::from_groupoid(l),
            right: GroupoidDoc::from_groupoid(r),
            total: b.total.clone(),
            left_moment: (0..b.size())
                .map(|e| (en(e), l.object_name(b.left_moment[e]).to_string()))
                .collect(),
            right_moment: (0..b.size())
                .map(|e| (en(e), r.object_name(b.right_moment[e]).to_string()))
                .collect(),
            left_action,
            right_action,
        }
    }

    pub fn build(&self) -> Result<Bibundle> {
        let left = self.left.build()?;
        let right = self.right.build()?;
        let n = self.total.len();
        let ti = index(&self.total);
        if ti.len() != n {
            return Err(schema("duplicate element of the total set"));
        }
        let moment = |map: &BTreeMap<String, String>, g: &FiniteGroupoid, what: &str| {
            let oi = index(g.object_names());
            fill(
                n,
                what,
                map.iter()
                    .map(|(e, x)| {
                        Ok((lookup(&ti, "element", e)?, ObjId(lookup(&oi, "object", x)?)))
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        };
        let left_moment = moment(&self.left_moment, &left, "left_moment")?;
        let right_moment = moment(&self.right_moment, &right, "right_moment")?;
        let arrows = |g: &FiniteGroupoid| {
            g.arrows()
                .map(|a| g.arrow_name(a).to_string())
                .collect::<Vec<_>>()
        };
        let (la, ra) = (arrows(&left), arrows(&right));
        let (li, ri) = (index(&la), index(&ra));
        let mut left_action = vec![None; la.len() * n];
        for [k, e, r] in &self.left_action {
            let slot = lookup(&li, "arrow", k)? * n + lookup(&ti, "element", e)?;
            let r = lookup(&ti, "element", r)?;
            if left_action[slot].is_some_and(|p| p != r) {
                return Err(schema("conflicting left action entries"));
            }
            left_action[slot] = Some(r);
        }
        let mut right_action = vec![None; n * ra.len()];
        for [e, k, r] in &self.right_action {
            let slot = lookup(&ti, "element", e)? * ra.len() + lookup(&ri, "arrow", k)?;
            let r = lookup(&ti, "element", r)?;
            if right_action[slot].is_some_and(|p| p != r) {
                return Err(schema("conflicting right action entries"));
            }
            right_action[slot] = Some(r);
        }
        Ok(Bibundle {
            left,
            right,
            total: self.total.clone(),
            left_moment,
            right_moment,
            left_action,
            right_action,
        })
    }
}

pub fn parse_bibundle(s: &str) -> Result<Bibundle> {
    serde_json::from_str::<BibundleDoc>(s)?.build()
}

pub fn bibundle_to_json(b: &Bibundle) -> String {
    to_pretty(&BibundleDoc::from_bibundle(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trips() {
        for (_, x) in catalog::crossed_modules() {
            assert_eq!(
                parse_crossed_module(&crossed_module_to_json(&x)).unwrap(),
                x
            );
        }
        for (_, t) in catalog::coherent_two_groups() {
            let back = parse_two_group(&two_group_to_json(&t)).unwrap();
            assert_eq!(back.two_group, t);
            assert!(!back.adjunction_searched);
        }
        for (_, c) in catalog::complexes() {
            assert_eq!(parse_complex(&complex_to_json(&c)).unwrap(), c);
        }
        let x = crate::simplicial::bar_nerve(&catalog::xm1(), 2);
        assert_eq!(parse_simplicial(&simplicial_to_json(&x)).unwrap(), x);
        let g = catalog::xm1().translation_groupoid().unwrap();
        assert_eq!(parse_groupoid(&groupoid_to_json(&g)).unwrap(), g);
        let b = crate::bibundle::identity_bibundle(&g);
        assert_eq!(parse_bibundle(&bibundle_to_json(&b)).unwrap(), b);
    }

    #[test]
    fn trivial_action_shorthand() {
        let doc = r#"{"gamma":{"elements":["0","1"],"table":[["0","1"],["1","0"]]},
                     "g0":{"elements":["e"],"table":[["e"]]},
                     "partial":{"0":"e","1":"e"},"trivial_action":true}"#;
        assert_eq!(parse_crossed_module(doc).unwrap(), catalog::xm3());
    }

    #[test]
    fn missing_adjunction_is_searched() {
        let mut doc = TwoGroupDoc::from_two_group(&catalog::t_omega());
        doc.bar = None;
        doc.d = None;
        doc.e = None;
        let parsed = doc.build().unwrap();
        assert!(parsed.adjunction_searched);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_group("{"), Err(FormatError::Json(_))));
        assert!(matches!(
            parse_group(r#"{"elements":["a"],"table":[["b"]]}"#),
            Err(FormatError::Schema(_))
        ));
        assert!(
            parse_simplicial(r#"{"depth":99,"layers":[],"faces":{},"degeneracies":{}}"#).is_err()
        );
    }
}
