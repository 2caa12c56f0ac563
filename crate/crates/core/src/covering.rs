//! Free group actions on 2-complexes, path lifting and the boundary map
//! from based loops in the quotient to the acting group.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::group::GroupTable;
use crate::presentation::{
    format_word, free_reduce, invert, parse_word, todd_coxeter, verify_presents, Letter,
    Presentation, PresentsError, Word, WordParseError,
};
use crate::report::{Check, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("malformed complex: {}", .0.join("; "))]
    Structure(Vec<String>),
    #[error("invalid complex: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Presents(#[from] PresentsError),
    #[error(transparent)]
    Parse(#[from] WordParseError),
    #[error("loop is not composable at letter {0}")]
    NotComposable(usize),
    #[error("loop is not closed")]
    NotClosed,
    #[error("vertex {0} does not lie over the loop's base")]
    NotInFiber(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexEdge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

/// A 2-complex with a Γ-action. Cell boundaries are edge words (a
/// [`Letter`]'s `gen` is an edge index). Action tables are indexed
/// `[γ*len + item]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantComplex {
    pub vertices: Vec<String>,
    pub edges: Vec<ComplexEdge>,
    pub cells: Vec<Word>,
    pub gamma: GroupTable,
    pub vertex_action: Vec<usize>,
    pub edge_action: Vec<usize>,
    pub cell_action: Vec<usize>,
    pub simply_connected_asserted: bool,
}

fn step_ends(edges: &[ComplexEdge], l: Letter) -> (usize, usize) {
    let e = &edges[l.gen];
    if l.inverse {
        (e.tgt, e.src)
    } else {
        (e.src, e.tgt)
    }
}

fn is_rotation(a: &[Letter], b: &[Letter]) -> bool {
    a.len() == b.len()
        && (a.is_empty()
            || (0..a.len()).any(|r| a.iter().cycle().skip(r).take(a.len()).eq(b.iter())))
}

impl EquivariantComplex {
    pub fn structural_errors(&self) -> Vec<String> {
        let (nv, ne, nc, ng) = (
            self.vertices.len(),
            self.edges.len(),
            self.cells.len(),
            self.gamma.order(),
        );
        let mut errs = Vec::new();
        if nv == 0 {
            errs.push("complex has no vertices".into());
        }
        for e in &self.edges {
            if e.src >= nv || e.tgt >= nv {
                errs.push(format!("edge {} has an endpoint out of range", e.name));
            }
        }
        for (i, c) in self.cells.iter().enumerate() {
            if c.iter().any(|l| l.gen >= ne) {
                errs.push(format!("cell {i} uses an unknown edge"));
            }
        }
        for (what, table, n) in [
            ("vertex", &self.vertex_action, nv),
            ("edge", &self.edge_action, ne),
            ("cell", &self.cell_action, nc),
        ] {
            if table.len() != ng * n {
                errs.push(format!(
                    "{what} action table has {} entries, expected {}",
                    table.len(),
                    ng * n
                ));
            } else if table.iter().any(|&v| v >= n) {
                errs.push(format!("{what} action table has an entry out of range"));
            }
        }
        errs
    }

    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        self.vertex_action[g * self.vertices.len() + v]
    }

    pub fn act_edge(&self, g: usize, e: usize) -> usize {
        self.edge_action[g * self.edges.len() + e]
    }

    pub fn act_cell(&self, g: usize, c: usize) -> usize {
        self.cell_action[g * self.cells.len() + c]
    }

    pub fn step_ends(&self, l: Letter) -> (usize, usize) {
        step_ends(&self.edges, l)
    }

    pub fn format_edge_word(&self, w: &[Letter]) -> Vec<String> {
        w.iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", self.edges[l.gen].name)
                } else {
                    self.edges[l.gen].name.clone()
                }
            })
            .collect()
    }
}

/// Checks incidence, the action axioms, freeness, connectedness and that
/// edge labels name edge orbits.
pub fn validate_complex(c: &EquivariantComplex) -> ValidationReport {
    let errs = c.structural_errors();
    if !errs.is_empty() {
        return ValidationReport::structural(errs);
    }
    let mut report = ValidationReport::new();
    let g = &c.gamma;
    let (nv, ne, nc) = (c.vertices.len(), c.edges.len(), c.cells.len());

    let mut closed = Check::new("cells-closed");
    for (i, cell) in c.cells.iter().enumerate() {
        let ok = !cell.is_empty()
            && (0..cell.len())
                .all(|k| c.step_ends(cell[k]).1 == c.step_ends(cell[(k + 1) % cell.len()]).0);
        closed.expect(ok, || [format!("cell {i}")]);
    }
    report.push(closed);

    let mut unit = Check::new("action-unit");
    let e = g.identity();
    for v in 0..nv {
        unit.expect(c.act_vertex(e, v) == v, || [c.vertices[v].clone()]);
    }
    for x in 0..ne {
        unit.expect(c.act_edge(e, x) == x, || [c.edges[x].name.clone()]);
    }
    for x in 0..nc {
        unit.expect(c.act_cell(e, x) == x, || [format!("cell {x}")]);
    }
    report.push(unit);

    let mut comp = Check::new("action-composition");
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            let w = || [g.name(a).to_string(), g.name(b).to_string()];
            comp.expect(
                (0..nv).all(|v| c.act_vertex(ab, v) == c.act_vertex(a, c.act_vertex(b, v))),
                w,
            );
            comp.expect(
                (0..ne).all(|x| c.act_edge(ab, x) == c.act_edge(a, c.act_edge(b, x))),
                w,
            );
            comp.expect(
                (0..nc).all(|x| c.act_cell(ab, x) == c.act_cell(a, c.act_cell(b, x))),
                w,
            );
        }
    }
    report.push(comp);

    let mut inc = Check::new("action-incidence");
    for a in g.elements() {
        for (x, edge) in c.edges.iter().enumerate() {
            let img = &c.edges[c.act_edge(a, x)];
            let ok = img.src == c.act_vertex(a, edge.src)
                && img.tgt == c.act_vertex(a, edge.tgt)
                && img.label == edge.label;
            inc.expect(ok, || [g.name(a).to_string(), edge.name.clone()]);
        }
        for (x, cell) in c.cells.iter().enumerate() {
            let moved: Word = cell
                .iter()
                .map(|l| Letter {
                    gen: c.act_edge(a, l.gen),
                    inverse: l.inverse,
                })
                .collect();
            inc.expect(is_rotation(&moved, &c.cells[c.act_cell(a, x)]), || {
                [g.name(a).to_string(), format!("cell {x}")]
            });
        }
    }
    report.push(inc);

    let mut free = Check::new("action-free");
    for a in g.elements().filter(|&a| a != e) {
        for v in 0..nv {
            free.expect(c.act_vertex(a, v) != v, || {
                [g.name(a).to_string(), c.vertices[v].clone()]
            });
        }
        for x in 0..ne {
            free.expect(c.act_edge(a, x) != x, || {
                [g.name(a).to_string(), c.edges[x].name.clone()]
            });
        }
        for x in 0..nc {
            free.expect(c.act_cell(a, x) != x, || {
                [g.name(a).to_string(), format!("cell {x}")]
            });
        }
    }
    report.push(free);

    let mut conn = Check::new("connected");
    let seen = reachable(nv, &c.edges, 0);
    if let Some(v) = (0..nv).find(|&v| !seen[v]) {
        conn.fail([c.vertices[v].clone()]);
    }
    report.push(conn);

    let mut labels = Check::new("labels-name-orbits");
    let mut owner: HashMap<&str, usize> = HashMap::new();
    for (x, edge) in c.edges.iter().enumerate() {
        let orbit_min = g.elements().map(|a| c.act_edge(a, x)).min().unwrap_or(x);
        match owner.get(edge.label.as_str()) {
            Some(&o) if o != orbit_min => labels.fail([edge.label.clone()]),
            Some(_) => {}
            None => {
                owner.insert(&edge.label, orbit_min);
            }
        }
    }
    report.push(labels);
    report
}

fn reachable(nv: usize, edges: &[ComplexEdge], from: usize) -> Vec<bool> {
    let mut adj = vec![Vec::new(); nv];
    for e in edges {
        adj[e.src].push(e.tgt);
        adj[e.tgt].push(e.src);
    }
    let mut seen = vec![false; nv];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Cayley 2-complex of a presentation of `grp`, with generator images
/// `images`. Vertex `g`, edge `e{g·k+a}: g → g·a` labelled by the
/// generator, one cell per vertex and relator; Γ acts by left translation.
pub fn cayley_complex(
    p: &Presentation,
    grp: &GroupTable,
    images: &[usize],
    max_cosets: usize,
) -> Result<EquivariantComplex, CoveringError> {
    verify_presents(p, grp, images, max_cosets)?;
    let (n, k, r) = (grp.order(), p.generators.len(), p.relators.len());
    let edges = (0..n * k)
        .map(|i| {
            let (g, a) = (i / k, i % k);
            ComplexEdge {
                name: format!("e{i}"),
                src: g,
                tgt: grp.mul(g, images[a]),
                label: p.generators[a].clone(),
            }
        })
        .collect();
    let cells = (0..n * r)
        .map(|i| {
            let (g, rel) = (i / r, &p.relators[i % r]);
            let mut cur = g;
            rel.iter()
                .map(|l| {
                    if l.inverse {
                        cur = grp.mul(cur, grp.inv(images[l.gen]));
                        Letter {
                            gen: cur * k + l.gen,
                            inverse: true,
                        }
                    } else {
                        let step = Letter {
                            gen: cur * k + l.gen,
                            inverse: false,
                        };
                        cur = grp.mul(cur, images[l.gen]);
                        step
                    }
                })
                .collect()
        })
        .collect();
    let vertex_action = grp
        .elements()
        .flat_map(|a| grp.elements().map(move |g| (a, g)))
        .map(|(a, g)| grp.mul(a, g))
        .collect();
    let edge_action = grp
        .elements()
        .flat_map(|a| (0..n * k).map(move |i| (a, i)))
        .map(|(a, i)| grp.mul(a, i / k) * k + i % k)
        .collect();
    let cell_action = grp
        .elements()
        .flat_map(|a| (0..n * r).map(move |i| (a, i)))
        .map(|(a, i)| grp.mul(a, i / r) * r + i % r)
        .collect();
    Ok(EquivariantComplex {
        vertices: grp.names().to_vec(),
        edges,
        cells,
        gamma: grp.clone(),
        vertex_action,
        edge_action,
        cell_action,
        simply_connected_asserted: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientEdge {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// The orbit complex. Quotient items are ordered by their least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub vertices: Vec<String>,
    pub edges: Vec<QuotientEdge>,
    pub cells: Vec<Word>,
    pub vertex_orbit: Vec<usize>,
    pub edge_orbit: Vec<usize>,
}

impl Quotient {
    pub fn labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    fn step_ends(&self, l: Letter) -> (usize, usize) {
        let e = &self.edges[l.gen];
        if l.inverse {
            (e.tgt, e.src)
        } else {
            (e.src, e.tgt)
        }
    }

    /// Letters that can be read from quotient vertex `q`.
    fn steps_from(&self, q: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.src == q {
                out.push(Letter {
                    gen: i,
                    inverse: false,
                });
            }
            if e.tgt == q {
                out.push(Letter {
                    gen: i,
                    inverse: true,
                });
            }
        }
        out
    }
}

/// A based loop in the quotient; letters index quotient edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeLoop {
    pub base: usize,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedPath {
    pub vertices: Vec<usize>,
    pub steps: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimpleConnectivity {
    /// Coset enumeration of the edge-path group of the total complex
    /// terminated with the trivial group.
    Enumerated,
    /// Not established; the input asserts it.
    Asserted,
    /// Neither established nor asserted.
    Unknown,
    /// The edge-path group of the total complex is nontrivial.
    Refuted,
}

/// A validated complex together with its quotient and fiber coordinates.
#[derive(Debug, Clone)]
pub struct CoveringSpace {
    complex: EquivariantComplex,
    quotient: Quotient,
    coord: Vec<usize>,
    reps: Vec<usize>,
    out_step: HashMap<(usize, Letter), Letter>,
}

impl CoveringSpace {
    pub fn new(complex: EquivariantComplex) -> Result<Self, CoveringError> {
        let report = validate_complex(&complex);
        if !report.is_structurally_sound() {
            return Err(CoveringError::Structure(report.structural));
        }
        if !report.is_valid() {
            return Err(CoveringError::Invalid(
                report.failed().map(|c| c.name.clone()).collect(),
            ));
        }
        let c = &complex;
        let g = &c.gamma;
        let orbits = |n: usize, act: &dyn Fn(usize, usize) -> usize| -> (Vec<usize>, Vec<usize>) {
            let mut orbit = vec![usize::MAX; n];
            let mut reps = Vec::new();
            for x in 0..n {
                if orbit[x] == usize::MAX {
                    for a in g.elements() {
                        orbit[act(a, x)] = reps.len();
                    }
                    reps.push(x);
                }
            }
            (orbit, reps)
        };
        let (vertex_orbit, vreps) = orbits(c.vertices.len(), &|a, v| c.act_vertex(a, v));
        let (edge_orbit, ereps) = orbits(c.edges.len(), &|a, e| c.act_edge(a, e));
        let (_, creps) = orbits(c.cells.len(), &|a, x| c.act_cell(a, x));
        let quotient = Quotient {
            vertices: vreps.iter().map(|&v| c.vertices[v].clone()).collect(),
            edges: ereps
                .iter()
                .map(|&e| QuotientEdge {
                    label: c.edges[e].label.clone(),
                    src: vertex_orbit[c.edges[e].src],
                    tgt: vertex_orbit[c.edges[e].tgt],
                })
                .collect(),
            cells: creps
                .iter()
                .map(|&x| {
                    c.cells[x]
                        .iter()
                        .map(|l| Letter {
                            gen: edge_orbit[l.gen],
                            inverse: l.inverse,
                        })
                        .collect()
                })
                .collect(),
            vertex_orbit,
            edge_orbit,
        };
        let mut coord = vec![0; c.vertices.len()];
        for &r in &vreps {
            for a in g.elements() {
                coord[c.act_vertex(a, r)] = a;
            }
        }
        let mut out_step = HashMap::new();
        for (i, e) in c.edges.iter().enumerate() {
            let q = quotient.edge_orbit[i];
            out_step.insert(
                (
                    e.src,
                    Letter {
                        gen: q,
                        inverse: false,
                    },
                ),
                Letter {
                    gen: i,
                    inverse: false,
                },
            );
            out_step.insert(
                (
                    e.tgt,
                    Letter {
                        gen: q,
                        inverse: true,
                    },
                ),
                Letter {
                    gen: i,
                    inverse: true,
                },
            );
        }
        Ok(CoveringSpace {
            quotient,
            coord,
            reps: vreps,
            out_step,
            complex,
        })
    }

    pub fn complex(&self) -> &EquivariantComplex {
        &self.complex
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn gamma(&self) -> &GroupTable {
        &self.complex.gamma
    }

    /// The least vertex over quotient vertex `q`.
    pub fn basepoint(&self, q: usize) -> usize {
        self.reps[q]
    }

    /// The unique `h` with `h·basepoint = v`.
    pub fn fiber_coordinate(&self, v: usize) -> usize {
        self.coord[v]
    }

    pub fn fiber(&self, q: usize) -> Vec<usize> {
        (0..self.complex.vertices.len())
            .filter(|&v| self.quotient.vertex_orbit[v] == q)
            .collect()
    }

    /// Parses a loop in quotient edge labels, e.g. `a b^-1` or `(ab)^2`.
    pub fn parse_loop(&self, base: usize, s: &str) -> Result<EdgeLoop, CoveringError> {
        let word = parse_word(s, &self.quotient.labels())?;
        let l = EdgeLoop { base, word };
        self.check_loop(&l)?;
        Ok(l)
    }

    pub fn check_loop(&self, l: &EdgeLoop) -> Result<(), CoveringError> {
        let mut q = l.base;
        for (i, &x) in l.word.iter().enumerate() {
            let (s, t) = self.quotient.step_ends(x);
            if s != q {
                return Err(CoveringError::NotComposable(i));
            }
            q = t;
        }
        if q != l.base {
            return Err(CoveringError::NotClosed);
        }
        Ok(())
    }

    pub fn format_loop(&self, l: &EdgeLoop) -> String {
        format_word(&l.word, &self.quotient.labels())
    }

    /// The unique lift of `l` starting at `start`.
    pub fn lift_path(&self, l: &EdgeLoop, start: usize) -> Result<LiftedPath, CoveringError> {
        if self.quotient.vertex_orbit.get(start) != Some(&l.base) {
            let name = self
                .complex
                .vertices
                .get(start)
                .cloned()
                .unwrap_or_else(|| start.to_string());
            return Err(CoveringError::NotInFiber(name));
        }
        self.lift_word(&l.word, start)
    }

    fn lift_word(&self, w: &[Letter], start: usize) -> Result<LiftedPath, CoveringError> {
        let mut vertices = vec![start];
        let mut steps = Vec::with_capacity(w.len());
        let mut v = start;
        for (i, &x) in w.iter().enumerate() {
            let step = *self
                .out_step
                .get(&(v, x))
                .ok_or(CoveringError::NotComposable(i))?;
            v = self.complex.step_ends(step).1;
            steps.push(step);
            vertices.push(v);
        }
        Ok(LiftedPath { vertices, steps })
    }

    /// `c(start)⁻¹·c(end)` for the lift of `l` from `start`.
    pub fn boundary_from(&self, l: &EdgeLoop, start: usize) -> Result<usize, CoveringError> {
        let path = self.lift_path(l, start)?;
        let end = *path.vertices.last().expect("paths are nonempty");
        if self.quotient.vertex_orbit[end] != l.base {
            return Err(CoveringError::NotClosed);
        }
        let g = self.gamma();
        Ok(g.mul(g.inv(self.coord[start]), self.coord[end]))
    }

    pub fn boundary_map(&self, l: &EdgeLoop) -> Result<usize, CoveringError> {
        self.boundary_from(l, self.basepoint(l.base))
    }

    /// Closed loops at `base` of length at most `max_len`, optionally
    /// without immediate backtracking, in length-then-lexicographic order.
    pub fn closed_loops(&self, base: usize, max_len: usize, reduced: bool) -> Vec<EdgeLoop> {
        let steps: Vec<Vec<Letter>> = (0..self.quotient.vertices.len())
            .map(|q| self.quotient.steps_from(q))
            .collect();
        let mut out = Vec::new();
        for len in 0..=max_len {
            let mut word = Vec::new();
            self.walk(&steps, base, base, len, reduced, &mut word, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        steps: &[Vec<Letter>],
        base: usize,
        q: usize,
        left: usize,
        reduced: bool,
        word: &mut Word,
        out: &mut Vec<EdgeLoop>,
    ) {
        if left == 0 {
            if q == base {
                out.push(EdgeLoop {
                    base,
                    word: word.clone(),
                });
            }
            return;
        }
        for &x in &steps[q] {
            if reduced && word.last() == Some(&x.inv()) {
                continue;
            }
            word.push(x);
            self.walk(
                steps,
                base,
                self.quotient.step_ends(x).1,
                left - 1,
                reduced,
                word,
                out,
            );
            word.pop();
        }
    }

    /// Edge-path group of the quotient at vertex 0, with the loop that
    /// each generator stands for.
    pub fn pi1_presentation(&self) -> (Presentation, Vec<EdgeLoop>) {
        let q = &self.quotient;
        let ends: Vec<(usize, usize)> = q.edges.iter().map(|e| (e.src, e.tgt)).collect();
        let (p, loops) = edge_path_presentation(q.vertices.len(), &ends, &q.labels(), &q.cells);
        (
            p,
            loops
                .into_iter()
                .map(|word| EdgeLoop { base: 0, word })
                .collect(),
        )
    }

    /// Edge-path group of the total complex at vertex 0.
    pub fn total_presentation(&self) -> Presentation {
        let c = &self.complex;
        let ends: Vec<(usize, usize)> = c.edges.iter().map(|e| (e.src, e.tgt)).collect();
        let names: Vec<String> = c.edges.iter().map(|e| e.name.clone()).collect();
        edge_path_presentation(c.vertices.len(), &ends, &names, &c.cells).0
    }

    pub fn simple_connectivity(&self, max_cosets: usize) -> SimpleConnectivity {
        match todd_coxeter(&self.total_presentation(), max_cosets) {
            Some(t) if t.order() == 1 => SimpleConnectivity::Enumerated,
            Some(_) => SimpleConnectivity::Refuted,
            None if self.complex.simply_connected_asserted => SimpleConnectivity::Asserted,
            None => SimpleConnectivity::Unknown,
        }
    }

    /// Searches for a sequence of 2-cell moves and free reductions taking
    /// the closed edge path `steps` of the total complex to the empty
    /// loop. Returns the number of moves spent, or `None` once more than
    /// `budget` moves have been tried.
    pub fn null_homotopy(&self, steps: &[Letter], budget: usize) -> Option<usize> {
        let moves = CellMoves::new(&self.complex);
        moves.search(steps, budget)
    }
}

/// Spanning-tree presentation of the edge-path group at vertex 0.
/// Returns generator loops as edge words alongside.
fn edge_path_presentation(
    nv: usize,
    ends: &[(usize, usize)],
    names: &[String],
    cells: &[Word],
) -> (Presentation, Vec<Word>) {
    let mut parent: Vec<Option<Letter>> = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut tree = vec![false; ends.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (i, &(s, t)) in ends.iter().enumerate() {
            for (from, to, inverse) in [(s, t, false), (t, s, true)] {
                if from == v && !seen[to] {
                    seen[to] = true;
                    tree[i] = true;
                    parent[to] = Some(Letter { gen: i, inverse });
                    queue.push_back(to);
                }
            }
        }
    }
    let path_to = |v: usize| -> Word {
        let mut w = Vec::new();
        let mut cur = v;
        while let Some(l) = parent[cur] {
            w.push(l);
            let (s, t) = ends[l.gen];
            cur = if l.inverse { t } else { s };
        }
        w.reverse();
        w
    };
    let gen_of: Vec<Option<usize>> = {
        let mut k = 0;
        tree.iter()
            .map(|&t| {
                if t {
                    None
                } else {
                    k += 1;
                    Some(k - 1)
                }
            })
            .collect()
    };
    let generators: Vec<String> = (0..ends.len())
        .filter(|&i| !tree[i])
        .map(|i| names[i].clone())
        .collect();
    let loops = (0..ends.len())
        .filter(|&i| !tree[i])
        .map(|i| {
            let (s, t) = ends[i];
            let mut w = path_to(s);
            w.push(Letter {
                gen: i,
                inverse: false,
            });
            w.extend(invert(&path_to(t)));
            w
        })
        .collect();
    let relators = cells
        .iter()
        .map(|c| {
            free_reduce(
                &c.iter()
                    .filter_map(|l| {
                        gen_of[l.gen].map(|g| Letter {
                            gen: g,
                            inverse: l.inverse,
                        })
                    })
                    .collect::<Word>(),
            )
        })
        .filter(|r| !r.is_empty())
        .collect();
    (
        Presentation {
            generators,
            relators,
        },
        loops,
    )
}

fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let (mut i, mut j) = (0, w.len());
    while j - i >= 2 && w[i] == w[j - 1].inv() {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

fn canonical_cyclic(w: Word) -> Word {
    let n = w.len();
    (0..n)
        .map(|r| w.iter().cycle().skip(r).take(n).copied().collect::<Word>())
        .min()
        .unwrap_or(w)
}

/// Every rotation of every cell boundary in both orientations, indexed by
/// first letter.
struct CellMoves {
    by_first: HashMap<Letter, Vec<Word>>,
    max_len: usize,
}

impl CellMoves {
    fn new(c: &EquivariantComplex) -> Self {
        let mut by_first: HashMap<Letter, Vec<Word>> = HashMap::new();
        let mut max_len = 0;
        for cell in &c.cells {
            max_len = max_len.max(cell.len());
            for w in [cell.clone(), invert(cell)] {
                for r in 0..w.len() {
                    let rot: Word = w.iter().cycle().skip(r).take(w.len()).copied().collect();
                    let list = by_first.entry(rot[0]).or_default();
                    if !list.contains(&rot) {
                        list.push(rot);
                    }
                }
            }
        }
        CellMoves { by_first, max_len }
    }

    fn search(&self, steps: &[Letter], budget: usize) -> Option<usize> {
        let start = canonical_cyclic(cyclic_reduce(steps));
        if start.is_empty() {
            return Some(0);
        }
        let limit = start.len() + self.max_len;
        let mut states = vec![start.clone()];
        let mut visited: HashSet<Word> = HashSet::from([start.clone()]);
        let mut heap = BinaryHeap::from([Reverse((start.len(), 0usize))]);
        let mut spent = 0;
        while let Some(Reverse((_, idx))) = heap.pop() {
            let w = states[idx].clone();
            let n = w.len();
            for i in 0..n {
                let Some(rels) = self.by_first.get(&w[i]) else {
                    continue;
                };
                for r in rels {
                    let mut k = 0;
                    while k < r.len() && k < n && w[(i + k) % n] == r[k] {
                        k += 1;
                        spent += 1;
                        if spent > budget {
                            return None;
                        }
                        let mut next: Word = (0..n - k).map(|t| w[(i + k + t) % n]).collect();
                        next.extend(invert(&r[k..]));
                        let next = canonical_cyclic(cyclic_reduce(&next));
                        if next.is_empty() {
                            return Some(spent);
                        }
                        if next.len() <= limit && visited.insert(next.clone()) {
                            heap.push(Reverse((next.len(), states.len())));
                            states.push(next);
                        }
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryOptions {
    pub move_budget: usize,
    /// Loops up to this length are multiplied pairwise.
    pub hom_len: usize,
    /// Every kernel loop up to this length is certified null-homotopic.
    pub kernel_len: usize,
    /// Loop length for the invariance checks.
    pub invariance_len: usize,
    pub max_cosets: usize,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        BoundaryOptions {
            move_budget: 10_000,
            hom_len: 3,
            kernel_len: 6,
            invariance_len: 3,
            max_cosets: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IsoCertified,
    IsoCertifiedRelativeToAssertion,
    Inconclusive,
    Failed,
}

impl Verdict {
    pub fn describe(self) -> &'static str {
        match self {
            Verdict::IsoCertified => "iso certified",
            Verdict::IsoCertifiedRelativeToAssertion => "iso certified relative to assertion",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjectivityWitness {
    pub element: String,
    pub generator_word: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub kernel_loops: usize,
    pub distinct_lifts: usize,
    pub certified: usize,
    pub max_moves: usize,
    pub timed_out: Vec<String>,
    pub simple_connectivity: SimpleConnectivity,
    pub pi1_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryIsoReport {
    pub gamma_order: usize,
    pub presentation: String,
    pub homomorphism: Check,
    pub surjectivity: Check,
    pub witnesses: Vec<SurjectivityWitness>,
    pub injectivity: InjectivityReport,
    pub invariance: Vec<Check>,
    pub verdict: Verdict,
}

impl BoundaryIsoReport {
    pub fn summary(&self) -> String {
        format!("{}, |Γ|={}", self.verdict.describe(), self.gamma_order)
    }
}

/// Checks that the boundary map is a homomorphism, is onto, and has no
/// kernel beyond null-homotopic loops.
pub fn verify_boundary_iso(s: &CoveringSpace, opts: BoundaryOptions) -> BoundaryIsoReport {
    let g = s.gamma();
    let labels = s.quotient().labels();
    let (pres, gen_loops) = s.pi1_presentation();
    let dm = |l: &EdgeLoop| s.boundary_map(l).expect("closed loops lift");
    let fmt = |w: &[Letter]| format_word(w, &labels);

    let mut hom = Check::new("homomorphism");
    let mut sample = s.closed_loops(0, opts.hom_len, true);
    for l in &gen_loops {
        for w in [l.word.clone(), invert(&l.word)] {
            let l = EdgeLoop { base: 0, word: w };
            if !sample.contains(&l) {
                sample.push(l);
            }
        }
    }
    let images: Vec<usize> = sample.iter().map(dm).collect();
    for (a, la) in sample.iter().enumerate() {
        for (b, lb) in sample.iter().enumerate() {
            let joined = EdgeLoop {
                base: 0,
                word: [la.word.as_slice(), lb.word.as_slice()].concat(),
            };
            hom.expect(dm(&joined) == g.mul(images[a], images[b]), || {
                [fmt(&la.word), fmt(&lb.word)]
            });
        }
    }

    let mut surj = Check::new("surjectivity");
    let mut witnesses = Vec::new();
    let paths = shortest_paths(s);
    for a in g.elements() {
        let target = s.complex().act_vertex(a, s.basepoint(0));
        match &paths[target] {
            Some(word) => {
                let l = EdgeLoop {
                    base: 0,
                    word: word.clone(),
                };
                let img = dm(&l);
                surj.expect(img == a, || [g.name(a).to_string(), fmt(word)]);
                witnesses.push(SurjectivityWitness {
                    element: g.name(a).to_string(),
                    generator_word: fmt(word),
                    image: g.name(img).to_string(),
                });
            }
            None => surj.fail([g.name(a).to_string()]),
        }
    }

    let moves = CellMoves::new(s.complex());
    let mut kernel_loops = 0;
    let mut seen: HashSet<Word> = HashSet::new();
    let (mut certified, mut max_moves) = (0, 0);
    let mut timed_out = Vec::new();
    for l in s.closed_loops(0, opts.kernel_len, true) {
        if dm(&l) != g.identity() {
            continue;
        }
        kernel_loops += 1;
        let lift = s.lift_path(&l, s.basepoint(0)).expect("closed loops lift");
        if !seen.insert(canonical_cyclic(cyclic_reduce(&lift.steps))) {
            continue;
        }
        match moves.search(&lift.steps, opts.move_budget) {
            Some(m) => {
                certified += 1;
                max_moves = max_moves.max(m);
            }
            None => timed_out.push(fmt(&l.word)),
        }
    }
    let simple_connectivity = s.simple_connectivity(opts.max_cosets);
    let pi1_order = todd_coxeter(&pres, opts.max_cosets).map(|t| t.order());
    let injectivity = InjectivityReport {
        kernel_loops,
        distinct_lifts: seen.len(),
        certified,
        max_moves,
        timed_out,
        simple_connectivity,
        pi1_order,
    };

    let invariance = invariance_checks(s, opts.invariance_len);

    let failed = !hom.passed()
        || !surj.passed()
        || invariance.iter().any(|c| !c.passed())
        || pi1_order.is_some_and(|o| o != g.order())
        || simple_connectivity == SimpleConnectivity::Refuted;
    let verdict = if failed {
        Verdict::Failed
    } else if !injectivity.timed_out.is_empty() {
        Verdict::Inconclusive
    } else {
        match simple_connectivity {
            SimpleConnectivity::Enumerated => Verdict::IsoCertified,
            SimpleConnectivity::Asserted => Verdict::IsoCertifiedRelativeToAssertion,
            _ => Verdict::Inconclusive,
        }
    };
    BoundaryIsoReport {
        gamma_order: g.order(),
        presentation: pres.to_string(),
        homomorphism: hom,
        surjectivity: surj,
        witnesses,
        injectivity,
        invariance,
        verdict,
    }
}

/// Breadth-first edge paths from the base vertex, projected to the quotient.
fn shortest_paths(s: &CoveringSpace) -> Vec<Option<Word>> {
    let c = s.complex();
    let mut out: Vec<Option<Word>> = vec![None; c.vertices.len()];
    let start = s.basepoint(0);
    out[start] = Some(Vec::new());
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for (i, e) in c.edges.iter().enumerate() {
            let q = s.quotient().edge_orbit[i];
            for (from, to, inverse) in [(e.src, e.tgt, false), (e.tgt, e.src, true)] {
                if from == v && out[to].is_none() {
                    let mut w = out[v].clone().expect("visited");
                    w.push(Letter { gen: q, inverse });
                    out[to] = Some(w);
                    queue.push_back(to);
                }
            }
        }
    }
    out
}

/// Invariance of the boundary map on every closed loop at vertex 0 up to
/// `max_len`: under change of lift start, reversal, free reduction and
/// single 2-cell moves.
pub fn invariance_checks(s: &CoveringSpace, max_len: usize) -> Vec<Check> {
    let g = s.gamma();
    let q = s.quotient();
    let labels = q.labels();
    let fmt = |w: &[Letter]| format_word(w, &labels);
    let dm = |w: Word| {
        s.boundary_map(&EdgeLoop { base: 0, word: w })
            .expect("closed loops lift")
    };
    let mut start = Check::new("lift-start-invariance");
    let mut reverse = Check::new("reverse-inverse");
    let mut free = Check::new("free-reduction-invariance");
    let mut cell = Check::new("cell-move-invariance");

    let mut cell_words: Vec<Word> = Vec::new();
    for c in &q.cells {
        for w in [c.clone(), invert(c)] {
            for r in 0..w.len() {
                let rot: Word = w.iter().cycle().skip(r).take(w.len()).copied().collect();
                if !cell_words.contains(&rot) {
                    cell_words.push(rot);
                }
            }
        }
    }
    let steps: Vec<Vec<Letter>> = (0..q.vertices.len()).map(|v| q.steps_from(v)).collect();

    for l in s.closed_loops(0, max_len, false) {
        let d = s.boundary_map(&l).expect("closed loops lift");
        for v in s.fiber(0) {
            start.expect(s.boundary_from(&l, v).ok() == Some(d), || {
                [fmt(&l.word), s.complex().vertices[v].clone()]
            });
        }
        reverse.expect(dm(invert(&l.word)) == g.inv(d), || [fmt(&l.word)]);
        free.expect(dm(free_reduce(&l.word)) == d, || [fmt(&l.word)]);
        let mut at = 0;
        for i in 0..=l.word.len() {
            for &x in &steps[at] {
                let mut w = l.word.clone();
                w.splice(i..i, [x, x.inv()]);
                free.expect(dm(w) == d, || [fmt(&l.word), i.to_string()]);
            }
            for r in cell_words.iter().filter(|r| q.step_ends(r[0]).0 == at) {
                for k in 0..=r.len().min(l.word.len() - i) {
                    if l.word[i..i + k] != r[..k] {
                        break;
                    }
                    let mut w = l.word[..i].to_vec();
                    w.extend(invert(&r[k..]));
                    w.extend_from_slice(&l.word[i + k..]);
                    cell.expect(dm(w) == d, || [fmt(&l.word), i.to_string(), fmt(r)]);
                }
            }
            if i < l.word.len() {
                at = q.step_ends(l.word[i]).1;
            }
        }
    }
    vec![start, reverse, free, cell]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> CoveringSpace {
        let p = Presentation::parse(&["a"], &["a^2"]).unwrap();
        CoveringSpace::new(cayley_complex(&p, &GroupTable::cyclic(2), &[1], 1000).unwrap()).unwrap()
    }

    #[test]
    fn z2_lifts() {
        let s = z2();
        let a = s.parse_loop(0, "a").unwrap();
        let path = s.lift_path(&a, 0).unwrap();
        assert_eq!(path.vertices, vec![0, 1]);
        let aa = s.parse_loop(0, "a a").unwrap();
        assert_eq!(s.lift_path(&aa, 0).unwrap().vertices, vec![0, 1, 0]);
        let empty = s.parse_loop(0, "").unwrap();
        assert_eq!(s.lift_path(&empty, 0).unwrap().vertices, vec![0]);
        assert_eq!(s.boundary_map(&a).unwrap(), 1);
        assert_eq!(s.boundary_map(&aa).unwrap(), 0);
    }

    #[test]
    fn null_homotopy_of_relator() {
        let s = z2();
        let aa = s.parse_loop(0, "a^2").unwrap();
        let lift = s.lift_path(&aa, 0).unwrap();
        assert!(s.null_homotopy(&lift.steps, 100).is_some());
    }

    #[test]
    fn rejects_fixed_points() {
        let mut c = cayley_complex(
            &Presentation::parse(&["a"], &["a^2"]).unwrap(),
            &GroupTable::cyclic(2),
            &[1],
            1000,
        )
        .unwrap();
        c.vertex_action = vec![0, 1, 0, 1];
        let report = validate_complex(&c);
        assert!(!report.check("action-free").unwrap().passed());
        assert!(matches!(
            CoveringSpace::new(c),
            Err(CoveringError::Invalid(_))
        ));
    }
}
