use super::hamilton::{prepare_hamiltonian, Prepared};
use super::{grid, grid_edge_name, grid_vertex_name};
use crate::embedded_relations::{replay, OpScript};
use crate::plane_graph::{EmbeddedOp, PlaneGraph, VertexId};
use crate::{Error, Result};
use std::collections::{HashMap, HashSet};
use std::fmt;

type Cell = (usize, usize);

/// Branch sets and connectors realizing a Hamiltonian triangulation inside
/// the grid. Positions and cells are 0-based; cell `(r, c)` is row `r`,
/// column `c`.
#[derive(Clone, Debug)]
pub struct HamiltonianData {
    /// Vertex of the triangulation at each cycle position.
    pub order: Vec<VertexId>,
    /// Smallest position joined to `k` through the inner side or the cycle,
    /// `k` itself if none is smaller.
    pub inner_min: Vec<usize>,
    /// Largest position joined to `k` through the inner side or the cycle,
    /// `k + 1` if none is larger.
    pub inner_max: Vec<usize>,
    pub outer_min: Vec<usize>,
    pub outer_max: Vec<usize>,
    /// Grid cells of the branch set of each position.
    pub sets: Vec<Vec<Cell>>,
    /// Grid edge standing for each edge of the triangulation.
    pub connectors: Vec<(Cell, Cell)>,
}

/// Cells of position `k`'s branch set: a row segment right of the diagonal
/// and a column segment above it for the inner side, mirrored below the
/// diagonal for the outer side. The last set also covers column `n - 1` up
/// to row 0, where the closing cycle edge attaches.
fn branch_set(k: usize, n: usize, imin: usize, imax: usize, omin: usize, omax: usize) -> Vec<Cell> {
    let mut cells = vec![(k, k)];
    cells.extend((k + 1..imax).map(|c| (k, c)));
    let top = if k == n - 1 { 0 } else { imin + 1 };
    cells.extend((top..k).map(|r| (r, k)));
    cells.extend((k + 1..omax).map(|r| (r, k)));
    cells.extend((omin + 1..k).map(|c| (k, c)));
    cells
}

/// Computes branch sets and connectors for the triangulation `g` with
/// Hamiltonian cycle `cycle`. The inner side is the left side of the cycle.
pub fn hamiltonian_data(g: &PlaneGraph, cycle: &[VertexId]) -> Result<HamiltonianData> {
    let n = g.num_vertices();
    if cycle.len() != n || n < 3 {
        return Err(Error::BadSize("need a Hamiltonian cycle on at least 3 vertices".into()));
    }
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in cycle.iter().enumerate() {
        pos[v] = k;
    }
    let bad = |m: &str| Error::Internal(m.to_string());
    // inner[d] for every dart: whether it leaves its vertex into the left side
    let mut inner = vec![false; g.num_darts()];
    let (mut imin, mut imax): (Vec<usize>, Vec<usize>) = ((0..n).collect(), (1..=n).collect());
    let (mut omin, mut omax) = (imin.clone(), imax.clone());
    for k in 0..n {
        let v = cycle[k];
        let r = g.rotation(v);
        let towards = |p: usize| {
            r.iter()
                .position(|&d| pos[g.dart_vertex(g.twin(d))] == p)
                .ok_or_else(|| bad("cycle step is not an edge"))
        };
        let q = towards((k + 1) % n)?;
        let p = towards((k + n - 1) % n)?;
        let m = r.len();
        let mut i = (q + 1) % m;
        while i != p {
            inner[r[i]] = true;
            i = (i + 1) % m;
        }
        for (i, &d) in r.iter().enumerate() {
            let l = pos[g.dart_vertex(g.twin(d))];
            let on_cycle = i == p || i == q;
            let (lo, hi) = if on_cycle || inner[d] { (&mut imin, &mut imax) } else { (&mut omin, &mut omax) };
            if l < k {
                lo[k] = lo[k].min(l);
            } else {
                hi[k] = hi[k].max(l);
            }
            if on_cycle {
                if l < k {
                    omin[k] = omin[k].min(l);
                } else {
                    omax[k] = omax[k].max(l);
                }
            }
        }
    }
    let sets: Vec<Vec<Cell>> = (0..n).map(|k| branch_set(k, n, imin[k], imax[k], omin[k], omax[k])).collect();
    let mut owner = HashMap::new();
    for (k, s) in sets.iter().enumerate() {
        for &c in s {
            if owner.insert(c, k).is_some() {
                return Err(bad("branch sets overlap"));
            }
        }
    }
    let mut connectors = Vec::with_capacity(g.num_edges());
    for e in 0..g.num_edges() {
        let [a, b] = g.edge_darts(e);
        let (ka, kb) = (pos[g.dart_vertex(a)], pos[g.dart_vertex(b)]);
        let (k, l, d) = if ka < kb { (ka, kb, a) } else { (kb, ka, b) };
        let cyc = l == k + 1;
        let conn = if (k, l) == (0, n - 1) {
            ((0, n - 2), (0, n - 1))
        } else if cyc || inner[d] {
            if imax[k] > l {
                ((k, l), (k + 1, l))
            } else if imin[l] < k {
                ((k, l - 1), (k, l))
            } else {
                return Err(bad("inner edge without a free grid edge"));
            }
        } else if omax[k] > l {
            ((l, k), (l, k + 1))
        } else if omin[l] < k {
            ((l - 1, k), (l, k))
        } else {
            return Err(bad("outer edge without a free grid edge"));
        };
        let ends = (owner.get(&conn.0).copied(), owner.get(&conn.1).copied());
        if ends != (Some(k), Some(l)) && ends != (Some(l), Some(k)) {
            return Err(bad("connector does not join the right branch sets"));
        }
        connectors.push(conn);
    }
    Ok(HamiltonianData {
        order: cycle.to_vec(),
        inner_min: imin,
        inner_max: imax,
        outer_min: omin,
        outer_max: omax,
        sets,
        connectors,
    })
}

/// A script that turns `grid(n)` into the input graph.
#[derive(Clone, Debug)]
pub struct GridEmbedding {
    pub n: usize,
    pub script: OpScript,
    pub prepared: Prepared,
    pub data: Option<HamiltonianData>,
}

impl GridEmbedding {
    /// Replays the script on `grid(n)`.
    pub fn replay(&self) -> Result<PlaneGraph> {
        replay(&grid(self.n)?, &self.script)
    }
}

impl fmt::Display for GridEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target grid {}", self.n)?;
        write!(f, "{}", self.script)
    }
}

/// Equivalence that ignores the outer marker of `got` when `want` has none.
pub(crate) fn realizes(got: &PlaneGraph, want: &PlaneGraph) -> bool {
    let want = want.undirected();
    match want.outer_face() {
        Some(_) => got.equivalent(&want),
        None => got.to_sphere().equivalent(&want),
    }
}

fn cell_name(c: Cell) -> String {
    grid_vertex_name(c.0 + 1, c.1 + 1)
}

fn cell_edge(a: Cell, b: Cell) -> String {
    grid_edge_name((a.0 + 1, a.1 + 1), (b.0 + 1, b.1 + 1))
}

/// Embedded-minor script from `grid(n)` to `h`, with `n` the order of the
/// prepared triangulation. Graphs must be connected.
pub fn grid_embed(h: &PlaneGraph) -> Result<GridEmbedding> {
    let prepared = prepare_hamiltonian(h)?;
    let t = &prepared.graph;
    let n = t.num_vertices();
    if n == 1 {
        let out = GridEmbedding { n, script: prepared.back_map.clone(), prepared, data: None };
        return check(out, h);
    }
    let data = hamiltonian_data(t, &prepared.cycle)?;
    let g = grid(n)?;
    let mut keep_edges: HashSet<String> = data.connectors.iter().map(|&(a, b)| cell_edge(a, b)).collect();
    let mut inside = Vec::new();
    let mut keep_cells = HashSet::new();
    for s in &data.sets {
        let cells: HashSet<Cell> = s.iter().copied().collect();
        for &c in s {
            for d in [(c.0, c.1 + 1), (c.0 + 1, c.1)] {
                if cells.contains(&d) {
                    inside.push(cell_edge(c, d));
                }
            }
        }
        keep_cells.extend(cells);
    }
    keep_edges.extend(inside.iter().cloned());
    let mut ops = Vec::new();
    for e in 0..g.num_edges() {
        if !keep_edges.contains(g.edge_name(e)) {
            ops.push(EmbeddedOp::DeleteEdge(g.edge_name(e).to_string()));
        }
    }
    for r in 0..n {
        for c in 0..n {
            if !keep_cells.contains(&(r, c)) {
                ops.push(EmbeddedOp::DeleteVertex(cell_name((r, c))));
            }
        }
    }
    ops.extend(inside.into_iter().map(EmbeddedOp::Contract));
    // the back-map only names edges, and edge names survive contraction
    let emap: HashMap<String, String> = (0..t.num_edges())
        .map(|e| (t.edge_name(e).to_string(), cell_edge(data.connectors[e].0, data.connectors[e].1)))
        .collect();
    for op in &prepared.back_map.ops {
        ops.push(match op {
            EmbeddedOp::DeleteEdge(e) => EmbeddedOp::DeleteEdge(emap[e].clone()),
            EmbeddedOp::Contract(e) => EmbeddedOp::Contract(emap[e].clone()),
            _ => return Err(Error::Internal("unexpected back-map operation".into())),
        });
    }
    let out = GridEmbedding { n, script: OpScript::new(ops), prepared, data: Some(data) };
    check(out, h)
}

fn check(out: GridEmbedding, h: &PlaneGraph) -> Result<GridEmbedding> {
    if !realizes(&out.replay()?, h) {
        return Err(Error::Internal("grid script does not reproduce the graph".into()));
    }
    Ok(out)
}
