//! Generators for small plane graphs: straight-line drawings, exhaustive
//! enumeration by edge insertion, and seeded random growth.

use crate::plane_graph::{Builder, PlaneGraph, Raw};
use crate::Result;
use std::collections::HashSet;

/// Plane graph from a straight-line drawing. Rotations follow the angles of
/// the incident segments, counterclockwise. Vertices are named `v<i>`, edges
/// `e<i>`.
pub fn straight_line(coords: &[(f64, f64)], edges: &[(usize, usize)]) -> Result<PlaneGraph> {
    let vnames: Vec<String> = (0..coords.len()).map(|i| format!("v{i}")).collect();
    let enames: Vec<String> = (0..edges.len()).map(|i| format!("e{i}")).collect();
    straight_line_named(coords, edges, &vnames, &enames)
}

/// [`straight_line`] with explicit vertex and edge names.
pub fn straight_line_named(
    coords: &[(f64, f64)],
    edges: &[(usize, usize)],
    vnames: &[String],
    enames: &[String],
) -> Result<PlaneGraph> {
    let mut b = Builder::new(false);
    for name in vnames {
        b.add_vertex(name.as_str());
    }
    let mut at: Vec<Vec<(f64, usize)>> = vec![Vec::new(); coords.len()];
    for (&(u, w), name) in edges.iter().zip(enames) {
        let (a, c) = b.add_edge(name.as_str());
        let ang = |p: usize, q: usize| (coords[q].1 - coords[p].1).atan2(coords[q].0 - coords[p].0);
        at[u].push((ang(u, w), a));
        at[w].push((ang(w, u), c));
    }
    for (v, mut list) in at.into_iter().enumerate() {
        list.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        b.set_rotation(v, list.into_iter().map(|x| x.1).collect());
    }
    b.build()
}

/// A corner position: vertex and insertion index into its rotation.
type Slot = (usize, usize);

/// Inserts a new edge between two rotation slots. `None` as the second slot
/// attaches a new pendant vertex. Returns `None` when the result is not a
/// sphere embedding.
fn insert_edge(g: &PlaneGraph, a: Slot, b: Option<Slot>) -> Option<PlaneGraph> {
    let mut raw: Raw = g.to_raw();
    let m = raw.enames.len();
    let da = raw.dnames.len();
    raw.dnames.push(format!("e{m}.0"));
    raw.dnames.push(format!("e{m}.1"));
    raw.enames.push(format!("e{m}"));
    raw.edarts.push([da, da + 1]);
    raw.rot[a.0].insert(a.1, da);
    match b {
        Some((w, j)) => raw.rot[w].insert(j, da + 1),
        None => {
            raw.vnames.push(format!("v{}", raw.vnames.len()));
            raw.rot.push(vec![da + 1]);
        }
    }
    Builder::from_raw(raw).build().ok()
}

/// All connected plane graphs (up to orientation-preserving equivalence)
/// with at most `max_v` vertices and at most `max_e` edges, starting from a
/// single vertex. With `simple`, loops and parallel edges are excluded.
pub fn plane_graphs(max_v: usize, max_e: usize, simple: bool) -> Vec<PlaneGraph> {
    let mut single = Builder::new(false);
    single.add_vertex("v0");
    let start = single.build().expect("single vertex");
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(start.canonical_form());
    let mut all = vec![start.clone()];
    let mut level = vec![start];
    for _ in 0..max_e {
        let mut next = Vec::new();
        for g in &level {
            for h in extensions(g, max_v, simple) {
                if seen.insert(h.canonical_form()) {
                    next.push(h);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn slots(g: &PlaneGraph) -> Vec<Slot> {
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        let d = g.degree(v);
        // inserting at index 0 and at index d give the same cyclic order
        for i in 0..d.max(1) {
            out.push((v, i));
        }
    }
    out
}

fn extensions(g: &PlaneGraph, max_v: usize, simple: bool) -> Vec<PlaneGraph> {
    let mut out = Vec::new();
    let sl = slots(g);
    if g.num_vertices() < max_v {
        for &a in &sl {
            out.extend(insert_edge(g, a, None));
        }
    }
    for (i, &a) in sl.iter().enumerate() {
        for &b in &sl[i..] {
            if simple && (a.0 == b.0 || g.neighbors(a.0).contains(&b.0)) {
                continue;
            }
            if a.0 == b.0 {
                if b != a {
                    continue;
                }
                // loops: the second dart may go anywhere in the enlarged rotation
                for j in 0..=g.degree(a.0) {
                    out.extend(insert_edge(g, a, Some((a.0, j))));
                }
            } else {
                out.extend(insert_edge(g, a, Some(b)));
            }
        }
    }
    out
}

/// Random connected simple plane graph with `n` vertices and about `m`
/// edges, grown by pendant vertices and then face chords. `pick(k)` must
/// return a uniform index below `k`.
pub fn random_plane_graph(n: usize, m: usize, pick: &mut dyn FnMut(usize) -> usize) -> PlaneGraph {
    let mut b = Builder::new(false);
    b.add_vertex("v0");
    let mut g = b.build().expect("single vertex");
    while g.num_vertices() < n {
        let sl = slots(&g);
        let a = sl[pick(sl.len())];
        g = insert_edge(&g, a, None).expect("pendant insertion is planar");
    }
    let mut attempts = 0;
    while g.num_edges() < m && attempts < 50 * (m + 1) {
        attempts += 1;
        // a chord between two corners of the same face keeps the drawing plane
        let nf = g.faces().len();
        let f = pick(nf);
        let walk = g.faces()[f].darts.clone();
        if walk.len() < 2 {
            continue;
        }
        let i = pick(walk.len());
        let j = pick(walk.len());
        let (x, y) = (walk[i], walk[j]);
        let (u, w) = (g.dart_vertex(x), g.dart_vertex(y));
        if u == w || g.neighbors(u).contains(&w) {
            continue;
        }
        // corner of face f at dart x sits just after x in the rotation
        let a = (u, g.dart_pos(x) + 1);
        let c = (w, g.dart_pos(y) + 1);
        if let Some(h) = insert_edge(&g, a, Some(c)) {
            g = h;
        }
    }
    g
}

/// Random orientation of every edge. `coin()` decides whether an edge keeps
/// its dart order.
pub fn random_orientation(g: &PlaneGraph, coin: &mut dyn FnMut() -> bool) -> PlaneGraph {
    let mut raw = g.to_raw();
    raw.directed = true;
    for p in raw.edarts.iter_mut() {
        if !coin() {
            p.swap(0, 1);
        }
    }
    Builder::from_raw(raw).build().expect("orientation keeps validity")
}
