//! Grids, walls, and embedding plane graphs as minors of grids.

mod embed;
mod hamilton;
mod walls;

pub use embed::{grid_embed, hamiltonian_data, GridEmbedding, HamiltonianData};
pub use hamilton::{prepare_hamiltonian, separating_triangles, Prepared};
pub use walls::{find_subdivided_wall, find_subdivided_wall_with, wall_to_grid, WallWitness};

use crate::corpus::straight_line_named;
use crate::plane_graph::{Builder, PlaneGraph, VertexId};
use crate::{Error, Result};
use std::collections::{HashMap, HashSet};

/// Vertex name of grid position `(i, j)`, 1-based, row `i` counted downward.
pub fn grid_vertex_name(i: usize, j: usize) -> String {
    format!("p{i}_{j}")
}

/// Name of the grid edge between two adjacent 1-based positions.
pub fn grid_edge_name(a: (usize, usize), b: (usize, usize)) -> String {
    let (a, b) = (a.min(b), a.max(b));
    if a.0 == b.0 {
        format!("h{}_{}", a.0, a.1)
    } else {
        format!("v{}_{}", a.0, a.1)
    }
}

/// The plane `n x n` grid together with its coordinate map.
#[derive(Clone, Debug)]
pub struct GridCoords {
    pub n: usize,
    pub graph: PlaneGraph,
    at: HashMap<(usize, usize), VertexId>,
}

impl GridCoords {
    pub fn new(n: usize) -> Result<GridCoords> {
        let graph = grid(n)?;
        let mut at = HashMap::new();
        for i in 1..=n {
            for j in 1..=n {
                at.insert((i, j), graph.vertex_by_name(&grid_vertex_name(i, j)).unwrap());
            }
        }
        Ok(GridCoords { n, graph, at })
    }

    /// Vertex at 1-based position `(i, j)`.
    pub fn vertex(&self, i: usize, j: usize) -> Option<VertexId> {
        self.at.get(&(i, j)).copied()
    }

    pub fn position(&self, v: VertexId) -> Option<(usize, usize)> {
        self.at.iter().find(|(_, &x)| x == v).map(|(&p, _)| p)
    }
}

/// Draws the given lattice points with row `i` at height `-i`, and marks the
/// face above the first edge as outer.
fn lattice(points: &[(usize, usize)], names: Vec<String>, edges: &[(usize, usize)], enames: Vec<String>) -> Result<PlaneGraph> {
    let coords: Vec<(f64, f64)> = points.iter().map(|&(i, j)| (j as f64, -(i as f64))).collect();
    let g = straight_line_named(&coords, edges, &names, &enames)?;
    let f = match g.num_edges() {
        0 => g.isolated_face(0).unwrap(),
        _ => g.dart_face(g.edge_darts(0)[0]),
    };
    Ok(g.with_outer_face(f))
}

fn lattice_graph(points: Vec<(usize, usize)>, name: char, adjacent: impl Fn((usize, usize), (usize, usize)) -> bool) -> Result<PlaneGraph> {
    let index: HashMap<(usize, usize), usize> = points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut edges = Vec::new();
    let mut enames = Vec::new();
    // the first point's rightward edge comes first so that it fixes the outer face
    for &p in &points {
        for q in [(p.0, p.1 + 1), (p.0 + 1, p.1)] {
            if let Some(&k) = index.get(&q) {
                if adjacent(p, q) {
                    edges.push((index[&p], k));
                    enames.push(grid_edge_name(p, q));
                }
            }
        }
    }
    let names = points.iter().map(|&(i, j)| format!("{name}{i}_{j}")).collect();
    lattice(&points, names, &edges, enames)
}

/// The plane `n x n` grid with its boundary face marked outer.
pub fn grid(n: usize) -> Result<PlaneGraph> {
    if n == 0 {
        return Err(Error::BadSize("grid side must be at least 1".into()));
    }
    let points = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    lattice_graph(points, 'p', |_, _| true)
}

/// Positions of the wall of height `h`: rows `1..=h+1`, columns
/// `1..=2h+2`, without the top right and bottom left corners.
fn wall_points(h: usize) -> Vec<(usize, usize)> {
    let (rows, cols) = (h + 1, 2 * h + 2);
    (1..=rows)
        .flat_map(|i| (1..=cols).map(move |j| (i, j)))
        .filter(|&p| p != (1, cols) && p != (rows, 1))
        .collect()
}

/// The plane wall of height `h`: rows joined by horizontal paths, with a
/// vertical edge below `(i, j)` when `i + j` is even.
pub fn wall(h: usize) -> Result<PlaneGraph> {
    if h < 2 || h % 2 == 1 {
        return Err(Error::BadSize("wall height must be even and at least 2".into()));
    }
    lattice_graph(wall_points(h), 'w', |p, q| p.0 == q.0 || (p.0 + p.1) % 2 == 0)
}

/// Result of enumerating the rotation systems of the abstract grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub rotation_systems: u64,
    /// Rotation systems of Euler genus 0.
    pub planar: u64,
    /// Sphere embeddings up to orientation-preserving equivalence.
    pub classes: usize,
    /// Sphere embeddings up to equivalence or reflection.
    pub classes_up_to_reflection: usize,
}

/// Enumerates every rotation system of the abstract `n x n` grid and counts
/// the distinct sphere embeddings among them.
pub fn unique_embedding_census(n: usize) -> Result<Census> {
    if n > 4 {
        return Err(Error::TooLarge(format!("census of the {n}x{n} grid (cap 4)")));
    }
    let g = grid(n)?.to_sphere();
    let nv = g.num_vertices();
    // every cyclic order of each rotation, with the first dart fixed
    let choices: Vec<Vec<Vec<usize>>> = (0..nv).map(|v| cyclic_orders(g.rotation(v))).collect();
    let twin: Vec<usize> = (0..g.num_darts()).map(|d| g.twin(d)).collect();
    let mut pick = vec![0usize; nv];
    let mut census = Census { rotation_systems: 0, planar: 0, classes: 0, classes_up_to_reflection: 0 };
    let (mut forms, mut unordered) = (HashSet::new(), HashSet::new());
    let mut prev = vec![0usize; g.num_darts()];
    loop {
        census.rotation_systems += 1;
        for v in 0..nv {
            let r = &choices[v][pick[v]];
            for k in 0..r.len() {
                prev[r[(k + 1) % r.len()]] = r[k];
            }
        }
        let faces = count_cycles(g.num_darts(), |d| prev[twin[d]]).max(usize::from(g.num_darts() == 0));
        if nv as i64 - g.num_edges() as i64 + faces as i64 == 2 {
            census.planar += 1;
            let h = with_rotations(&g, &pick.iter().enumerate().map(|(v, &k)| choices[v][k].clone()).collect::<Vec<_>>())?;
            let f = h.canonical_form();
            let m = h.mirror().canonical_form();
            unordered.insert(f.clone().min(m));
            forms.insert(f);
        }
        // odometer over the per-vertex choices
        let mut v = 0;
        while v < nv {
            pick[v] += 1;
            if pick[v] < choices[v].len() {
                break;
            }
            pick[v] = 0;
            v += 1;
        }
        if v == nv {
            break;
        }
    }
    census.classes = forms.len();
    census.classes_up_to_reflection = unordered.len();
    Ok(census)
}

fn cyclic_orders(r: &[usize]) -> Vec<Vec<usize>> {
    if r.len() <= 2 {
        return vec![r.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest = r[1..].to_vec();
    permutations(&mut rest, 0, &mut |p| {
        let mut o = vec![r[0]];
        o.extend_from_slice(p);
        out.push(o);
    });
    out
}

fn permutations(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permutations(xs, k + 1, f);
        xs.swap(k, i);
    }
}

fn count_cycles(n: usize, step: impl Fn(usize) -> usize) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            d = step(d);
        }
    }
    count
}

/// Copy of `g` with the given rotations, darts addressed by `g`'s ids.
fn with_rotations(g: &PlaneGraph, rot: &[Vec<usize>]) -> Result<PlaneGraph> {
    let mut b = Builder::new(false);
    for v in 0..g.num_vertices() {
        b.add_vertex(g.vertex_name(v));
    }
    let mut id = vec![0; g.num_darts()];
    for e in 0..g.num_edges() {
        let (x, y) = b.add_edge(g.edge_name(e));
        let [a, c] = g.edge_darts(e);
        id[a] = x;
        id[c] = y;
    }
    for (v, r) in rot.iter().enumerate() {
        b.set_rotation(v, r.iter().map(|&d| id[d]).collect());
    }
    b.build()
}

/// Adds a `K4` component inside the outer face.
pub fn add_sphere_marker(g: &PlaneGraph) -> Result<PlaneGraph> {
    let outer = g.outer_face().ok_or(Error::NoOuterFace)?;
    let taken = |n: &str| g.vertex_by_name(n).is_some() || g.edge_by_name(n).is_some() || g.dart_by_name(n).is_some();
    let tag = (0..)
        .map(|k| format!("mk{k}_"))
        .find(|t| (0..4).all(|i| !taken(&format!("{t}v{i}"))) && (0..6).all(|i| !taken(&format!("{t}e{i}"))))
        .unwrap();
    let pts = [(0.0, 0.0), (2.0, 0.0), (1.0, 2.0), (1.0, 0.7)];
    let ends = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
    let vn: Vec<String> = (0..4).map(|i| format!("{tag}v{i}")).collect();
    let en: Vec<String> = (0..6).map(|i| format!("{tag}e{i}")).collect();
    let k4 = straight_line_named(&pts, &ends, &vn, &en)?;
    // the face to the right of the edge from v0 to v1 is unbounded
    let f = k4.dart_face(k4.edge_darts(0)[1]);
    g.add_component(&k4, f, outer)
}
