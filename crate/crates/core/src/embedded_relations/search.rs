use super::ordered::{check_cap, compile_witness, each_ordered_immersion, prepare, tagged_form, Mode, OrderedWitness};
use super::script::{replay, OpScript};
use super::SearchOptions;
use crate::plane_graph::{EmbeddedOp, LiftSide, PlaneGraph, VertexId};
use crate::{Error, Result};
use std::collections::{HashSet, VecDeque};

/// Which decider answers an embedded immersion query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Tangent ordered immersions compiled into lifts and deletions.
    Ordered,
    /// Breadth-first search over deletions and lifts.
    Search,
}

/// Breadth-first search from `g` for a graph with the same key as the
/// target. States are deduplicated by key; `succ` lists the moves of a
/// state and `alive` prunes states that cannot reach the target.
fn bfs(
    g: &PlaneGraph,
    target_key: &[u8],
    target_size: (usize, usize),
    key: &dyn Fn(&PlaneGraph) -> Vec<u8>,
    succ: &dyn Fn(&PlaneGraph) -> Vec<EmbeddedOp>,
    alive: &dyn Fn(&PlaneGraph) -> bool,
    opts: &SearchOptions,
) -> Result<Option<OpScript>> {
    let hit = |s: &PlaneGraph| (s.num_vertices(), s.num_edges()) == target_size && key(s) == target_key;
    if !alive(g) {
        return Ok(None);
    }
    if hit(g) {
        return Ok(Some(OpScript::default()));
    }
    let mut states: Vec<(PlaneGraph, usize, Option<EmbeddedOp>)> = vec![(g.clone(), usize::MAX, None)];
    let mut seen: HashSet<Vec<u8>> = HashSet::from([key(g)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = states[i].0.clone();
        for op in succ(&cur) {
            let Ok(next) = cur.apply(&op) else { continue };
            if !alive(&next) {
                continue;
            }
            let k = key(&next);
            if !seen.insert(k) {
                continue;
            }
            let found = hit(&next);
            states.push((next, i, Some(op)));
            if found {
                let mut ops = Vec::new();
                let mut j = states.len() - 1;
                while let Some(op) = states[j].2.clone() {
                    ops.push(op);
                    j = states[j].1;
                }
                ops.reverse();
                return Ok(Some(OpScript::new(ops)));
            }
            if states.len() > opts.max_states {
                return Err(Error::TooLarge(format!("more than {} search states", opts.max_states)));
            }
            queue.push_back(states.len() - 1);
        }
    }
    Ok(None)
}

fn deletions(g: &PlaneGraph) -> Vec<EmbeddedOp> {
    let mut ops: Vec<EmbeddedOp> = (0..g.num_edges()).map(|e| EmbeddedOp::DeleteEdge(g.edge_name(e).into())).collect();
    ops.extend((0..g.num_vertices()).map(|v| EmbeddedOp::DeleteVertex(g.vertex_name(v).into())));
    ops
}

fn lifts(g: &PlaneGraph) -> Vec<EmbeddedOp> {
    let mut ops = Vec::new();
    for v in 0..g.num_vertices() {
        let r = g.rotation(v);
        for &x in r {
            let y = g.next_ccw(x);
            if g.dart_edge(x) == g.dart_edge(y) || (r.len() == 2 && x > y) {
                continue;
            }
            let (a, b, side) = if !g.is_directed() || (g.is_head(x) && g.is_tail(y)) {
                (x, y, LiftSide::Ccw)
            } else if g.is_head(y) && g.is_tail(x) {
                (y, x, LiftSide::Cw)
            } else {
                continue;
            };
            ops.push(EmbeddedOp::Lift {
                vertex: g.vertex_name(v).into(),
                e1: g.edge_name(g.dart_edge(a)).into(),
                e2: g.edge_name(g.dart_edge(b)).into(),
                side,
            });
        }
    }
    ops
}

fn contractions(g: &PlaneGraph) -> Vec<EmbeddedOp> {
    (0..g.num_edges())
        .filter(|&e| !g.is_loop(e))
        .map(|e| EmbeddedOp::Contract(g.edge_name(e).into()))
        .collect()
}

/// Degree profile: for each threshold `k`, how many vertices have (total,
/// in, out) degree at least `k`.
fn degree_profile(g: &PlaneGraph) -> [Vec<usize>; 3] {
    let mut degs: [Vec<usize>; 3] = Default::default();
    for v in 0..g.num_vertices() {
        let r = g.rotation(v);
        let out = r.iter().filter(|&&d| g.is_tail(d)).count();
        degs[0].push(r.len());
        degs[1].push(r.len() - out);
        degs[2].push(out);
    }
    degs.map(|mut d| {
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    })
}

fn dominates(big: &[Vec<usize>; 3], small: &[Vec<usize>; 3], directed: bool) -> bool {
    let kinds = if directed { 3 } else { 1 };
    (0..kinds).all(|k| small[k].len() <= big[k].len() && small[k].iter().zip(&big[k]).all(|(s, b)| s <= b))
}

fn immersion_by_search(h: &PlaneGraph, g: &PlaneGraph, directed: bool, tags: &[(String, u32)], opts: &SearchOptions) -> Result<Option<OpScript>> {
    let target = tagged_form(h, tags);
    let hp = degree_profile(h);
    let (hn, hm) = (h.num_vertices(), h.num_edges());
    let tagged: Vec<&str> = tags.iter().map(|t| t.0.as_str()).collect();
    let alive = |s: &PlaneGraph| {
        s.num_vertices() >= hn
            && s.num_edges() >= hm
            && tagged.iter().all(|n| s.vertex_by_name(n).is_some())
            && dominates(&degree_profile(s), &hp, directed)
    };
    let succ = |s: &PlaneGraph| {
        let mut ops = deletions(s);
        ops.extend(lifts(s));
        ops
    };
    bfs(g, &target, (hn, hm), &|s| tagged_form(s, tags), &succ, &alive, opts)
}

fn immersion_by_witness(
    h: &PlaneGraph,
    g: &PlaneGraph,
    directed: bool,
    fixed: &[(VertexId, VertexId)],
    tags: &[(String, u32)],
    accept: &dyn Fn(&OrderedWitness) -> bool,
) -> Result<Option<OpScript>> {
    let target = tagged_form(h, tags);
    let mut found = None;
    each_ordered_immersion(h, g, Mode::Liftable, directed, fixed, &mut |w| {
        if !accept(w) {
            return Ok(false);
        }
        let Some(script) = compile_witness(g, w) else { return Ok(false) };
        let Ok(out) = replay(g, &script) else { return Ok(false) };
        if out.num_vertices() == h.num_vertices()
            && out.num_edges() == h.num_edges()
            && tagged_form(&out, tags) == target
        {
            found = Some(script);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

/// A script of deletions and lifts turning `g` into a graph equivalent to
/// `h`, if one exists.
pub fn embedded_immersion(h: &PlaneGraph, g: &PlaneGraph, directed: bool) -> Result<Option<OpScript>> {
    embedded_immersion_with(h, g, directed, Engine::Search, &SearchOptions::default())
}

pub fn embedded_immersion_with(
    h: &PlaneGraph,
    g: &PlaneGraph,
    directed: bool,
    engine: Engine,
    opts: &SearchOptions,
) -> Result<Option<OpScript>> {
    check_cap(h, g, opts)?;
    let (h, g) = prepare(h, g, directed);
    match engine {
        Engine::Ordered => immersion_by_witness(&h, &g, directed, &[], &[], &|_| true),
        Engine::Search => immersion_by_search(&h, &g, directed, &[], opts),
    }
}

/// Tagged immersion used for leaving graphs: vertex `hubs.0` of `h` must be
/// the image of vertex `hubs.1` of `g`.
pub(crate) fn pinned_immersion(
    h: &PlaneGraph,
    g: &PlaneGraph,
    directed: bool,
    hubs: (VertexId, VertexId),
    engine: Engine,
    opts: &SearchOptions,
) -> Result<Option<OpScript>> {
    pinned_by_witness(h, g, directed, hubs, engine, opts, &|_| true)
}

fn pinned_by_witness(
    h: &PlaneGraph,
    g: &PlaneGraph,
    directed: bool,
    hubs: (VertexId, VertexId),
    engine: Engine,
    opts: &SearchOptions,
    accept: &dyn Fn(&OrderedWitness) -> bool,
) -> Result<Option<OpScript>> {
    let (h, g) = prepare(h, g, directed);
    // the pattern may use the host's hub name for another vertex; rename
    // so tags by name are unambiguous on both sides
    let tag = "\u{0}hub".to_string();
    let h = h.with_vertex_name(hubs.0, &tag)?;
    let g = g.with_vertex_name(hubs.1, &tag)?;
    let tags = vec![(tag, 1)];
    match engine {
        Engine::Ordered => immersion_by_witness(&h, &g, directed, &[(hubs.0, hubs.1)], &tags, accept),
        Engine::Search => immersion_by_search(&h, &g, directed, &tags, opts),
    }
}

/// Pinned immersion whose image walks leave the host hub at rotation
/// position `(i + offset) % k` for the pattern stub at position `i`.
pub(crate) fn aligned_immersion(
    h: &PlaneGraph,
    g: &PlaneGraph,
    directed: bool,
    hubs: (VertexId, VertexId),
    offset: usize,
    opts: &SearchOptions,
) -> Result<Option<OpScript>> {
    let k = g.degree(hubs.1);
    let accept = |w: &OrderedWitness| {
        h.rotation(hubs.0).iter().enumerate().all(|(i, &d)| {
            let walk = &w.family.walks[h.dart_edge(d)];
            let at_hub = match walk.first() {
                Some(&x) if h.edge_darts(h.dart_edge(d))[0] == d => x,
                Some(_) => g.twin(*walk.last().unwrap()),
                None => return false,
            };
            g.dart_vertex(at_hub) == hubs.1 && g.dart_pos(at_hub) == (i + offset) % k.max(1)
        })
    };
    pinned_by_witness(h, g, directed, hubs, Engine::Ordered, opts, &accept)
}

/// A script of vertex and edge deletions and contractions turning `g` into
/// a graph equivalent to `h`, if one exists.
pub fn embedded_minor(h: &PlaneGraph, g: &PlaneGraph) -> Result<Option<OpScript>> {
    embedded_minor_with(h, g, &SearchOptions::default())
}

pub fn embedded_minor_with(h: &PlaneGraph, g: &PlaneGraph, opts: &SearchOptions) -> Result<Option<OpScript>> {
    if g.num_darts() > opts.max_darts {
        return Err(Error::TooLarge(format!("{} darts in the host (cap {})", g.num_darts(), opts.max_darts)));
    }
    let (h, g) = prepare(h, g, false);
    let target = h.canonical_form();
    let (hn, hm) = (h.num_vertices(), h.num_edges());
    let alive = |s: &PlaneGraph| s.num_vertices() >= hn && s.num_edges() >= hm;
    let succ = |s: &PlaneGraph| {
        let mut ops = deletions(s);
        ops.extend(contractions(s));
        ops
    };
    bfs(&g, &target, (hn, hm), &|s| s.canonical_form(), &succ, &alive, opts)
}
