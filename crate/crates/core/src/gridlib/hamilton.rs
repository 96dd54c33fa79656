use crate::embedded_relations::{replay, OpScript};
use crate::plane_graph::{fresh_name, Builder, DartId, EmbeddedOp, PlaneGraph, VertexId};
use crate::{Error, Result};
use std::collections::HashMap;

/// A simple triangulation with a Hamiltonian cycle, obtained from an input
/// graph by subdivisions and added edges.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub graph: PlaneGraph,
    /// Hamiltonian cycle of `graph`. When `graph` has an outer face, the
    /// face to the right of the closing edge (last to first) is outer.
    pub cycle: Vec<VertexId>,
    /// Deletions and contractions turning `graph` back into the input.
    pub back_map: OpScript,
    /// Number of separating triangles broken by vertex insertion.
    pub separating_removed: usize,
}

enum Step {
    /// Subdivided edge and the name of its new second half.
    Subdivided { edge: String, half: String },
    Chord(String),
}

const HAM_STEP_CAP: u64 = 20_000_000;

pub fn prepare_hamiltonian(h: &PlaneGraph) -> Result<Prepared> {
    let mut g = h.undirected();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut steps = Vec::new();
    if g.num_edges() > 0 {
        g = simplify(g, &mut steps)?;
        while g.num_vertices() < 3 {
            g = subdivide(&g, 0, &mut steps)?;
        }
        g = triangulate(g, &mut steps)?;
    }
    let mut separating_removed = 0;
    while let Some(t) = separating_triangles(&g).first().copied() {
        g = break_triangle(&g, t, &mut steps)?;
        separating_removed += 1;
        if separating_removed > 4 * h.num_vertices() + 4 * h.num_edges() + 16 {
            return Err(Error::Internal("separating triangles keep appearing".into()));
        }
    }
    let cycle = hamiltonian_cycle(&g)?;
    let back_map = undo(&steps);
    let back = replay(&g, &back_map)?;
    let target = h.undirected();
    let same = match target.outer_face() {
        Some(_) => back.equivalent(&target),
        None => back.to_sphere().equivalent(&target),
    };
    if !same {
        return Err(Error::Internal("preprocessing back-map does not recover the input".into()));
    }
    Ok(Prepared { graph: g, cycle, back_map, separating_removed })
}

/// Reverses the recorded steps. Contracting the first half of a subdivided
/// edge leaves the second half, so later references follow that rename.
fn undo(steps: &[Step]) -> OpScript {
    let mut rename: HashMap<String, String> = HashMap::new();
    let resolve = |rename: &HashMap<String, String>, mut n: String| {
        while let Some(m) = rename.get(&n) {
            n = m.clone();
        }
        n
    };
    let mut ops = Vec::new();
    for s in steps.iter().rev() {
        match s {
            Step::Chord(e) => ops.push(EmbeddedOp::DeleteEdge(resolve(&rename, e.clone()))),
            Step::Subdivided { edge, half } => {
                let e = resolve(&rename, edge.clone());
                let h = resolve(&rename, half.clone());
                ops.push(EmbeddedOp::Contract(e.clone()));
                rename.insert(e, h);
            }
        }
    }
    OpScript::new(ops)
}

fn subdivide(g: &PlaneGraph, e: usize, steps: &mut Vec<Step>) -> Result<PlaneGraph> {
    let x = fresh_name("s0", &|n| g.vertex_by_name(n).is_some());
    let out = g.subdivide(e, &x)?;
    let half = (0..out.num_edges())
        .map(|f| out.edge_name(f).to_string())
        .find(|n| g.edge_by_name(n).is_none())
        .ok_or_else(|| Error::Internal("subdivision created no edge".into()))?;
    steps.push(Step::Subdivided { edge: g.edge_name(e).to_string(), half });
    Ok(out)
}

/// Subdivides loops once and every parallel edge but one, which leaves a
/// simple graph.
fn simplify(mut g: PlaneGraph, steps: &mut Vec<Step>) -> Result<PlaneGraph> {
    while let Some(e) = (0..g.num_edges()).find(|&e| g.is_loop(e)) {
        g = subdivide(&g, e, steps)?;
    }
    loop {
        let mut seen = HashMap::new();
        let dup = (0..g.num_edges()).find(|&e| {
            let (a, b) = g.endpoints(e);
            seen.insert((a.min(b), a.max(b)), e).is_some()
        });
        match dup {
            Some(e) => g = subdivide(&g, e, steps)?,
            None => return Ok(g),
        }
    }
}

fn adjacent(g: &PlaneGraph, a: VertexId, b: VertexId) -> bool {
    g.neighbors(a).contains(&b)
}

/// Inserts an edge between the corners after darts `x` and `y`, which must
/// lie on a common face.
fn add_chord(g: &PlaneGraph, x: DartId, y: DartId, steps: &mut Vec<Step>) -> Result<PlaneGraph> {
    let name = (0..).map(|k| format!("t{k}")).find(|n| g.edge_by_name(n).is_none()).unwrap();
    let keep_outer = g.outer_face().map(|f| g.dart_name(g.faces()[f].darts[0]).to_string());
    let mut raw = g.to_raw();
    let d = raw.dnames.len();
    raw.dnames.push(format!("{name}.0"));
    raw.dnames.push(format!("{name}.1"));
    raw.enames.push(name.clone());
    raw.edarts.push([d, d + 1]);
    let (a, b) = (g.dart_vertex(x), g.dart_vertex(y));
    raw.rot[a].insert(g.dart_pos(x) + 1, d);
    raw.rot[b].insert(g.dart_pos(y) + 1, d + 1);
    let mut out = Builder::from_raw(raw).build()?;
    if let Some(dn) = keep_outer {
        let f = out.dart_face(out.dart_by_name(&dn).unwrap());
        out = out.with_outer_face(f);
    }
    steps.push(Step::Chord(name));
    Ok(out)
}

/// Adds chords face by face until every face is a triangle, taking the
/// first admissible pair of corners in facial order.
fn triangulate(mut g: PlaneGraph, steps: &mut Vec<Step>) -> Result<PlaneGraph> {
    loop {
        let Some(f) = g.faces().iter().position(|f| f.darts.len() > 3) else {
            return Ok(g);
        };
        let walk = g.faces()[f].darts.clone();
        let mut chord = None;
        'pairs: for i in 0..walk.len() {
            for j in i + 1..walk.len() {
                let (a, b) = (g.dart_vertex(walk[i]), g.dart_vertex(walk[j]));
                if a != b && !adjacent(&g, a, b) {
                    chord = Some((walk[i], walk[j]));
                    break 'pairs;
                }
            }
        }
        let (x, y) = chord.ok_or_else(|| Error::Internal("face without an admissible chord".into()))?;
        g = add_chord(&g, x, y, steps)?;
    }
}

/// Triangles of a triangulation that do not bound a face, as sorted
/// vertex triples.
pub fn separating_triangles(g: &PlaneGraph) -> Vec<[VertexId; 3]> {
    let n = g.num_vertices();
    let facial: std::collections::HashSet<[VertexId; 3]> = g
        .faces()
        .iter()
        .filter(|f| f.darts.len() == 3)
        .map(|f| {
            let mut t = [0; 3];
            for (k, &d) in f.darts.iter().enumerate() {
                t[k] = g.dart_vertex(d);
            }
            t.sort_unstable();
            t
        })
        .collect();
    let adj: Vec<Vec<VertexId>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut out = Vec::new();
    for a in 0..n {
        for &b in adj[a].iter().filter(|&&b| b > a) {
            for &c in adj[b].iter().filter(|&&c| c > b) {
                let t = [a, b, c];
                if adj[a].contains(&c) && !facial.contains(&t) && !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Subdivides an edge of the triangle and joins the new vertex to the two
/// opposite corners, preferring an edge whose opposite corners are not
/// adjacent.
fn break_triangle(g: &PlaneGraph, t: [VertexId; 3], steps: &mut Vec<Step>) -> Result<PlaneGraph> {
    let edge_between = |a: VertexId, b: VertexId| {
        (0..g.num_edges()).find(|&e| {
            let (x, y) = g.endpoints(e);
            (x, y) == (a, b) || (x, y) == (b, a)
        })
    };
    let opposite = |e: usize| -> Vec<VertexId> {
        g.edge_darts(e)
            .iter()
            .map(|&d| {
                let f = &g.faces()[g.dart_face(d)];
                let ends = g.endpoints(e);
                f.darts.iter().map(|&x| g.dart_vertex(x)).find(|&v| v != ends.0 && v != ends.1).unwrap()
            })
            .collect()
    };
    let edges: Vec<usize> = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
        .iter()
        .filter_map(|&(a, b)| edge_between(a, b))
        .collect();
    let e = edges
        .iter()
        .copied()
        .find(|&e| {
            let o = opposite(e);
            !adjacent(g, o[0], o[1])
        })
        .unwrap_or(edges[0]);
    let mut h = subdivide(g, e, steps)?;
    let x = (0..h.num_vertices()).find(|&v| g.vertex_by_name(h.vertex_name(v)).is_none()).unwrap();
    for _ in 0..2 {
        // a quadrilateral face at x gets the chord from x to its far corner
        let (dx, far) = h
            .rotation(x)
            .iter()
            .find_map(|&d| {
                let f = &h.faces()[h.dart_face(d)];
                (f.darts.len() == 4).then(|| {
                    let k = f.darts.iter().position(|&y| y == d).unwrap();
                    (d, f.darts[(k + 2) % 4])
                })
            })
            .ok_or_else(|| Error::Internal("no quadrilateral next to the inserted vertex".into()))?;
        h = add_chord(&h, dx, far, steps)?;
    }
    Ok(h)
}

/// Exhaustive search for a Hamiltonian cycle. With an outer face, the
/// closing edge is taken from the outer face, traversed with the outer face
/// on its right.
fn hamiltonian_cycle(g: &PlaneGraph) -> Result<Vec<VertexId>> {
    let n = g.num_vertices();
    if n == 1 {
        return Ok(vec![0]);
    }
    let adj: Vec<Vec<VertexId>> = (0..n).map(|v| g.neighbors(v)).collect();
    // (first, last) pairs to try; the closing edge runs last -> first
    let ends: Vec<(VertexId, Option<VertexId>)> = match g.outer_face() {
        Some(f) => g.faces()[f].darts.iter().map(|&d| (g.dart_vertex(d), Some(g.dart_vertex(g.twin(d))))).collect(),
        None => vec![(0, None)],
    };
    let mut budget = HAM_STEP_CAP;
    for (s, t) in ends {
        let mut path = vec![s];
        let mut used = vec![false; n];
        used[s] = true;
        if extend(&adj, &mut path, &mut used, s, t, &mut budget)? {
            return Ok(path);
        }
    }
    Err(Error::Internal("no Hamiltonian cycle after preprocessing".into()))
}

fn extend(
    adj: &[Vec<VertexId>],
    path: &mut Vec<VertexId>,
    used: &mut [bool],
    s: VertexId,
    t: Option<VertexId>,
    budget: &mut u64,
) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::TooLarge("Hamiltonian cycle search budget".into()));
    }
    *budget -= 1;
    let n = adj.len();
    let last = *path.last().unwrap();
    if path.len() == n {
        return Ok(match t {
            Some(t) => last == t,
            None => adj[last].contains(&s),
        });
    }
    for &w in &adj[last] {
        if used[w] || (Some(w) == t && path.len() + 1 < n) {
            continue;
        }
        used[w] = true;
        path.push(w);
        if extend(adj, path, used, s, t, budget)? {
            return Ok(true);
        }
        path.pop();
        used[w] = false;
    }
    Ok(false)
}
