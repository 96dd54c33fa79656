use super::embed::realizes;
use super::{grid, wall, wall_points};
use crate::embedded_relations::OpScript;
use crate::plane_graph::{EdgeId, EmbeddedOp, PlaneGraph, VertexId};
use crate::{Error, Result};
use std::collections::{HashMap, HashSet};

/// A subdivided wall inside a host graph: the image of every wall vertex
/// and, per wall edge, the host path from the image of its first endpoint
/// to the image of its second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallWitness {
    pub h: usize,
    pub vertices: Vec<VertexId>,
    pub paths: Vec<Vec<EdgeId>>,
}

/// Maximal wall path whose inner vertices have degree 2.
struct Chain {
    verts: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

fn chains(w: &PlaneGraph) -> Vec<Chain> {
    let branch = |v: VertexId| w.degree(v) >= 3;
    let mut seen = vec![false; w.num_edges()];
    let mut out = Vec::new();
    for b in (0..w.num_vertices()).filter(|&v| branch(v)) {
        for &d0 in w.rotation(b) {
            if seen[w.dart_edge(d0)] {
                continue;
            }
            let (mut verts, mut edges) = (vec![b], Vec::new());
            let mut d = d0;
            loop {
                let e = w.dart_edge(d);
                seen[e] = true;
                edges.push(e);
                let x = w.dart_vertex(w.twin(d));
                verts.push(x);
                if branch(x) {
                    break;
                }
                d = *w.rotation(x).iter().find(|&&y| y != w.twin(d)).unwrap();
            }
            out.push(Chain { verts, edges });
        }
    }
    out
}

struct Finder<'a> {
    g: &'a PlaneGraph,
    wdeg: Vec<usize>,
    chains: Vec<Chain>,
    img: Vec<Option<VertexId>>,
    usedv: Vec<bool>,
    usede: Vec<bool>,
    found: Vec<(Vec<VertexId>, Vec<EdgeId>)>,
    budget: u64,
}

impl Finder<'_> {
    fn tick(&mut self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::TooLarge("wall search budget".into()));
        }
        self.budget -= 1;
        Ok(())
    }

    fn solve(&mut self, ci: usize) -> Result<bool> {
        if ci == self.chains.len() {
            return Ok(true);
        }
        let s = self.img[self.chains[ci].verts[0]].unwrap();
        let mut pv = vec![s];
        let mut pe = Vec::new();
        self.walk(ci, &mut pv, &mut pe)
    }

    /// Extends the host path of chain `ci` by one edge in every possible way.
    fn walk(&mut self, ci: usize, pv: &mut Vec<VertexId>, pe: &mut Vec<EdgeId>) -> Result<bool> {
        self.tick()?;
        let g = self.g;
        let (need, to) = (self.chains[ci].edges.len(), *self.chains[ci].verts.last().unwrap());
        let target = self.img[to];
        let v = *pv.last().unwrap();
        for &d in g.rotation(v) {
            let e = g.dart_edge(d);
            let x = g.dart_vertex(g.twin(d));
            if self.usede[e] {
                continue;
            }
            pe.push(e);
            pv.push(x);
            self.usede[e] = true;
            let long = pe.len() >= need;
            if Some(x) == target {
                if long {
                    self.found.push((pv.clone(), pe.clone()));
                    if self.solve(ci + 1)? {
                        return Ok(true);
                    }
                    self.found.pop();
                }
            } else if !self.usedv[x] {
                self.usedv[x] = true;
                if target.is_none() && long && g.degree(x) >= self.wdeg[to] {
                    self.img[to] = Some(x);
                    self.found.push((pv.clone(), pe.clone()));
                    if self.solve(ci + 1)? {
                        return Ok(true);
                    }
                    self.found.pop();
                    self.img[to] = None;
                }
                if self.walk(ci, pv, pe)? {
                    return Ok(true);
                }
                self.usedv[x] = false;
            }
            self.usede[e] = false;
            pv.pop();
            pe.pop();
        }
        Ok(false)
    }
}

/// Exhaustive search for a subdivision of `wall(h)` in `g`.
pub fn find_subdivided_wall(g: &PlaneGraph, h: usize) -> Result<Option<WallWitness>> {
    find_subdivided_wall_with(g, h, 50_000_000)
}

/// [`find_subdivided_wall`] with an explicit step budget.
pub fn find_subdivided_wall_with(g: &PlaneGraph, h: usize, budget: u64) -> Result<Option<WallWitness>> {
    let w = wall(h)?;
    let mut cs = chains(&w);
    let deg3 = (0..w.num_vertices()).filter(|&v| w.degree(v) >= 3).count();
    if (0..g.num_vertices()).filter(|&v| g.degree(v) >= 3).count() < deg3 || g.num_edges() < w.num_edges() {
        return Ok(None);
    }
    // order chains so that each starts at an already placed branch vertex
    let root = cs[0].verts[0];
    let mut placed = HashSet::from([root]);
    let mut ordered = Vec::new();
    while !cs.is_empty() {
        let i = cs
            .iter()
            .position(|c| placed.contains(&c.verts[0]) || placed.contains(c.verts.last().unwrap()))
            .ok_or_else(|| Error::Internal("wall is disconnected".into()))?;
        let mut c = cs.remove(i);
        if !placed.contains(&c.verts[0]) {
            c.verts.reverse();
            c.edges.reverse();
        }
        placed.insert(*c.verts.last().unwrap());
        ordered.push(c);
    }
    let mut f = Finder {
        g,
        wdeg: (0..w.num_vertices()).map(|v| w.degree(v)).collect(),
        chains: ordered,
        img: vec![None; w.num_vertices()],
        usedv: vec![false; g.num_vertices()],
        usede: vec![false; g.num_edges()],
        found: Vec::new(),
        budget,
    };
    for v in 0..g.num_vertices() {
        if g.degree(v) < f.wdeg[root] {
            continue;
        }
        f.img[root] = Some(v);
        f.usedv[v] = true;
        if f.solve(0)? {
            return Ok(Some(assemble(&w, h, &f)));
        }
        f.usedv[v] = false;
        f.img[root] = None;
    }
    Ok(None)
}

/// Spreads each chain's host path evenly over the chain's wall edges.
fn assemble(w: &PlaneGraph, h: usize, f: &Finder) -> WallWitness {
    let mut vertices = vec![0; w.num_vertices()];
    let mut paths = vec![Vec::new(); w.num_edges()];
    for (c, (pv, pe)) in f.chains.iter().zip(&f.found) {
        let (m, len) = (c.edges.len(), pe.len());
        let cut = |i: usize| i * len / m;
        for i in 0..m {
            vertices[c.verts[i]] = pv[cut(i)];
            let mut p = pe[cut(i)..cut(i + 1)].to_vec();
            if w.endpoints(c.edges[i]).0 != c.verts[i] {
                p.reverse();
            }
            paths[c.edges[i]] = p;
        }
        vertices[c.verts[m]] = pv[len];
    }
    WallWitness { h, vertices, paths }
}

fn validate(g: &PlaneGraph, w: &PlaneGraph, wit: &WallWitness) -> Result<()> {
    let bad = |m: String| Err(Error::BadWitness(m));
    if wit.vertices.len() != w.num_vertices() || wit.paths.len() != w.num_edges() {
        return bad("witness size does not match the wall".into());
    }
    let mut usedv = HashSet::new();
    for &v in &wit.vertices {
        if v >= g.num_vertices() || !usedv.insert(v) {
            return bad(format!("vertex image {v} is repeated or missing"));
        }
    }
    let mut usede = HashSet::new();
    for (e, p) in wit.paths.iter().enumerate() {
        let (a, b) = w.endpoints(e);
        let mut cur = wit.vertices[a];
        if p.is_empty() {
            return bad(format!("empty path for wall edge {}", w.edge_name(e)));
        }
        for (i, &x) in p.iter().enumerate() {
            if x >= g.num_edges() || !usede.insert(x) {
                return bad(format!("host edge {x} is repeated or missing"));
            }
            let (s, t) = g.endpoints(x);
            cur = match (s == cur, t == cur) {
                (true, _) => t,
                (_, true) => s,
                _ => return bad(format!("path of wall edge {} is not a walk", w.edge_name(e))),
            };
            if i + 1 < p.len() && !usedv.insert(cur) {
                return bad(format!("path of wall edge {} reuses a vertex", w.edge_name(e)));
            }
        }
        if cur != wit.vertices[b] {
            return bad(format!("path of wall edge {} ends elsewhere", w.edge_name(e)));
        }
    }
    Ok(())
}

/// Working graph with the names of the wall vertices tracked through
/// contractions.
struct Tracker {
    cur: PlaneGraph,
    ops: Vec<EmbeddedOp>,
    names: Vec<String>,
}

impl Tracker {
    fn apply(&mut self, op: EmbeddedOp) -> Result<()> {
        self.cur = self.cur.apply(&op)?;
        self.ops.push(op);
        Ok(())
    }

    fn contract(&mut self, e: &str) -> Result<()> {
        let (a, b) = self.cur.endpoints(self.cur.edge_by_name(e).unwrap());
        let ends = [self.cur.vertex_name(a).to_string(), self.cur.vertex_name(b).to_string()];
        self.apply(EmbeddedOp::Contract(e.to_string()))?;
        let alive = |n: &String| self.cur.vertex_by_name(n).is_some();
        let (keep, gone) = if alive(&ends[0]) { (&ends[0], &ends[1]) } else { (&ends[1], &ends[0]) };
        for n in self.names.iter_mut() {
            if n == gone {
                *n = keep.clone();
            }
        }
        Ok(())
    }

    fn delete_vertices(&mut self, names: impl IntoIterator<Item = String>) -> Result<()> {
        let mut done = HashSet::new();
        for n in names {
            if done.insert(n.clone()) && self.cur.vertex_by_name(&n).is_some() {
                self.apply(EmbeddedOp::DeleteVertex(n))?;
            }
        }
        Ok(())
    }
}

/// Script reducing `g` to `grid(n)` through a subdivided wall of height
/// `2n`: keep the wall, suppress subdivisions, contract every brick's
/// middle edges, then keep an `n x n` block on the side of the outer face.
pub fn wall_to_grid(g: &PlaneGraph, wit: &WallWitness, n: usize) -> Result<OpScript> {
    if n == 0 || wit.h != 2 * n {
        return Err(Error::BadWitness(format!("need a wall of height {}, got {}", 2 * n, wit.h)));
    }
    let h = wit.h;
    let w = wall(h)?;
    validate(g, &w, wit)?;
    let coord: HashMap<String, (usize, usize)> =
        wall_points(h).into_iter().map(|(i, j)| (format!("w{i}_{j}"), (i, j))).collect();
    let wpos: Vec<(usize, usize)> = (0..w.num_vertices()).map(|v| coord[w.vertex_name(v)]).collect();
    let mut t = Tracker {
        cur: g.clone(),
        ops: Vec::new(),
        names: wit.vertices.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
    };
    let path_edges: HashSet<EdgeId> = wit.paths.iter().flatten().copied().collect();
    for e in (0..g.num_edges()).filter(|e| !path_edges.contains(e)) {
        t.apply(EmbeddedOp::DeleteEdge(g.edge_name(e).to_string()))?;
    }
    let mut on_wall: HashSet<VertexId> = wit.vertices.iter().copied().collect();
    for &e in &path_edges {
        let (a, b) = g.endpoints(e);
        on_wall.extend([a, b]);
    }
    t.delete_vertices((0..g.num_vertices()).filter(|v| !on_wall.contains(v)).map(|v| g.vertex_name(v).to_string()))?;
    for p in &wit.paths {
        for &e in &p[1..] {
            t.contract(g.edge_name(e))?;
        }
    }
    for e in 0..w.num_edges() {
        let (a, b) = w.endpoints(e);
        let (pa, pb) = (wpos[a], wpos[b]);
        if pa.0 == pb.0 && pa.1.min(pb.1) % 2 == 0 {
            t.contract(g.edge_name(wit.paths[e][0]))?;
        }
    }
    // after the brick contractions, wall column c lies in grid column c / 2
    let cell = |v: VertexId| (wpos[v].0, wpos[v].1 / 2);
    let core = |(r, c): (usize, usize)| r <= h && (1..=h).contains(&c);
    let mut at: HashMap<String, (usize, usize)> = HashMap::new();
    for v in 0..w.num_vertices() {
        at.insert(t.names[v].clone(), cell(v));
    }
    t.delete_vertices((0..w.num_vertices()).filter(|&v| !core(cell(v))).map(|v| t.names[v].clone()).collect::<Vec<_>>())?;
    let (r0, c0) = match t.cur.outer_face() {
        Some(f) => block_corner(&t.cur, f, &at, h, n),
        None => (1, 1),
    };
    let block = |(r, c): (usize, usize)| (r0..r0 + n).contains(&r) && (c0..c0 + n).contains(&c);
    let outside: Vec<String> = (0..w.num_vertices())
        .filter(|&v| core(cell(v)) && !block(cell(v)))
        .map(|v| t.names[v].clone())
        .collect();
    t.delete_vertices(outside)?;
    if !realizes(&t.cur, &grid(n)?.to_sphere()) || (g.outer_face().is_some() && !t.cur.equivalent(&grid(n)?)) {
        return Err(Error::BadWitness("the wall is not embedded as a plane wall".into()));
    }
    Ok(OpScript::new(t.ops))
}

/// Top left cell of the `n x n` block to keep. A boundary outer face keeps
/// the first block; an inner square face picks the larger side in each
/// direction, ties toward the top and left.
fn block_corner(g: &PlaneGraph, f: usize, at: &HashMap<String, (usize, usize)>, h: usize, n: usize) -> (usize, usize) {
    let cells: HashSet<(usize, usize)> = g.face_vertices(f).into_iter().map(|v| at[g.vertex_name(v)]).collect();
    let r = cells.iter().map(|c| c.0).min().unwrap_or(1);
    let c = cells.iter().map(|c| c.1).min().unwrap_or(1);
    let square: HashSet<(usize, usize)> = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)].into();
    if g.faces()[f].darts.len() != 4 || cells != square {
        return (1, 1);
    }
    let pick = |x: usize| if x >= h - x { x + 1 - n } else { x + 1 };
    (pick(r), pick(c))
}
