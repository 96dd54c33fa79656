use super::paths::{classify_family, liftable, PathFamily, Tangency};
use super::script::OpScript;
use super::SearchOptions;
use crate::plane_graph::{CanonOptions, DartId, EmbeddedOp, LiftSide, PlaneGraph, VertexId};
use crate::{Error, Result};

/// An ordered immersion: `vertex_map[u]` is the image of vertex `u` of the
/// pattern and walk `e` of `family` is the image of its edge `e`, starting
/// at the end of the edge's first dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedWitness {
    pub vertex_map: Vec<VertexId>,
    pub family: PathFamily,
}

pub(crate) fn prepare(h: &PlaneGraph, g: &PlaneGraph, directed: bool) -> (PlaneGraph, PlaneGraph) {
    if directed {
        (h.clone(), g.clone())
    } else {
        (h.undirected(), g.undirected())
    }
}

pub(crate) fn check_cap(h: &PlaneGraph, g: &PlaneGraph, opts: &SearchOptions) -> Result<()> {
    let total = h.num_darts() + g.num_darts();
    if total > opts.max_darts {
        return Err(Error::TooLarge(format!("{total} darts (cap {})", opts.max_darts)));
    }
    Ok(())
}

/// Condition on the image family of an ordered immersion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    Any,
    /// tangent in the strict sense: no walk passes through an image vertex
    Tangent,
    /// realizable by lifts, which may happen at image vertices
    Liftable,
}

struct Search<'a> {
    h: &'a PlaneGraph,
    g: &'a PlaneGraph,
    directed: bool,
    mode: Mode,
    /// edges of the pattern in routing order
    order: Vec<usize>,
    phi: Vec<Option<VertexId>>,
    taken: Vec<bool>,
    used: Vec<bool>,
    /// number of walks passing through each vertex of `g`
    inner: Vec<usize>,
    walks: Vec<Vec<DartId>>,
    routed: Vec<usize>,
    fixed: Vec<(VertexId, VertexId)>,
}

fn in_out(g: &PlaneGraph, v: VertexId) -> (usize, usize) {
    let r = g.rotation(v);
    let out = r.iter().filter(|&&d| g.is_tail(d)).count();
    (r.len() - out, out)
}

impl<'a> Search<'a> {
    fn fits(&self, u: VertexId, x: VertexId) -> bool {
        if self.taken[x] || g_deg(self.g, x) < g_deg(self.h, u) {
            return false;
        }
        if self.mode == Mode::Tangent && self.inner[x] > 0 {
            return false;
        }
        if self.directed {
            let (hi, ho) = in_out(self.h, u);
            let (gi, go) = in_out(self.g, x);
            if gi < hi || go < ho {
                return false;
            }
        }
        true
    }

    fn candidates(&self, u: VertexId) -> Vec<VertexId> {
        if let Some(&(_, x)) = self.fixed.iter().find(|&&(a, _)| a == u) {
            return if self.fits(u, x) { vec![x] } else { Vec::new() };
        }
        let name = self.h.vertex_name(u);
        let mut c: Vec<VertexId> = (0..self.g.num_vertices())
            .filter(|&x| self.fits(u, x) && !self.fixed.iter().any(|&(_, y)| y == x))
            .collect();
        c.sort_by_key(|&x| (self.g.vertex_name(x) != name, x));
        c
    }

    /// Walks from `s` to `t` over unused edges, shortest first. They are
    /// simple paths except in liftable mode, which allows any trail.
    fn walks_between(&self, s: VertexId, t: VertexId) -> Vec<Vec<DartId>> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.g.num_vertices()];
        let mut cur = Vec::new();
        seen[s] = true;
        self.extend(s, t, &mut seen, &mut cur, &mut out);
        out.sort_by_key(|w| w.len());
        out
    }

    fn extend(&self, x: VertexId, t: VertexId, seen: &mut Vec<bool>, cur: &mut Vec<DartId>, out: &mut Vec<Vec<DartId>>) {
        for &d in self.g.rotation(x) {
            let e = self.g.dart_edge(d);
            if self.used[e] || cur.iter().any(|&c| self.g.dart_edge(c) == e) {
                continue;
            }
            if self.directed && !self.g.is_tail(d) {
                continue;
            }
            let y = self.g.dart_vertex(self.g.twin(d));
            // lifts may route a walk through any vertex, repeatedly
            let trails = self.mode == Mode::Liftable;
            if y == t {
                cur.push(d);
                out.push(cur.clone());
                if trails {
                    self.extend(y, t, seen, cur, out);
                }
                cur.pop();
                continue;
            }
            if !trails && (seen[y] || (self.mode == Mode::Tangent && self.taken[y])) {
                continue;
            }
            let was = std::mem::replace(&mut seen[y], true);
            cur.push(d);
            self.extend(y, t, seen, cur, out);
            cur.pop();
            seen[y] = was;
        }
    }

    /// The image dart at `phi(u)` of each dart of the pattern at `u`, in
    /// rotation order, must appear in the same circular order.
    fn order_ok(&self, u: VertexId) -> bool {
        let r = self.h.rotation(u);
        if r.len() <= 2 {
            return true;
        }
        let pos: Vec<usize> = r
            .iter()
            .map(|&hd| {
                let e = self.h.dart_edge(hd);
                let w = &self.walks[e];
                let img = if hd == self.h.edge_darts(e)[0] { w[0] } else { self.g.twin(*w.last().unwrap()) };
                self.g.dart_pos(img)
            })
            .collect();
        let k = pos.len();
        (0..k).filter(|&i| pos[(i + 1) % k] < pos[i]).count() <= 1
    }

    fn assign(&mut self, u: VertexId, x: VertexId) {
        self.phi[u] = Some(x);
        self.taken[x] = true;
    }

    fn unassign(&mut self, u: VertexId) {
        if let Some(x) = self.phi[u].take() {
            self.taken[x] = false;
        }
    }

    fn run(&mut self, i: usize, visit: &mut dyn FnMut(&OrderedWitness) -> Result<bool>) -> Result<bool> {
        if i == self.order.len() {
            return self.place_isolated(0, visit);
        }
        let e = self.order[i];
        let [d0, d1] = self.h.edge_darts(e);
        let (u, w) = (self.h.dart_vertex(d0), self.h.dart_vertex(d1));
        let us: Vec<Option<VertexId>> = match self.phi[u] {
            Some(_) => vec![None],
            None => self.candidates(u).into_iter().map(Some).collect(),
        };
        for cu in us {
            if let Some(x) = cu {
                self.assign(u, x);
            }
            let ws: Vec<Option<VertexId>> = match self.phi[w] {
                Some(_) => vec![None],
                None => self.candidates(w).into_iter().map(Some).collect(),
            };
            for cw in ws {
                if let Some(y) = cw {
                    self.assign(w, y);
                }
                let (s, t) = (self.phi[u].unwrap(), self.phi[w].unwrap());
                for walk in self.walks_between(s, t) {
                    for &d in &walk {
                        self.used[self.g.dart_edge(d)] = true;
                    }
                    for &d in &walk[..walk.len() - 1] {
                        self.inner[self.g.dart_vertex(self.g.twin(d))] += 1;
                    }
                    self.walks[e] = walk.clone();
                    self.routed[u] += 1;
                    self.routed[w] += 1;
                    let deg = |v: VertexId| self.h.degree(v);
                    let ok = (self.routed[u] < deg(u) || self.order_ok(u))
                        && (self.routed[w] < deg(w) || self.order_ok(w));
                    let stop = ok && self.run(i + 1, visit)?;
                    self.routed[u] -= 1;
                    self.routed[w] -= 1;
                    for &d in &walk[..walk.len() - 1] {
                        self.inner[self.g.dart_vertex(self.g.twin(d))] -= 1;
                    }
                    for &d in &walk {
                        self.used[self.g.dart_edge(d)] = false;
                    }
                    self.walks[e].clear();
                    if stop {
                        return Ok(true);
                    }
                }
                if cw.is_some() {
                    self.unassign(w);
                }
            }
            if cu.is_some() {
                self.unassign(u);
            }
        }
        Ok(false)
    }

    fn place_isolated(&mut self, from: usize, visit: &mut dyn FnMut(&OrderedWitness) -> Result<bool>) -> Result<bool> {
        let Some(u) = (from..self.h.num_vertices()).find(|&u| self.phi[u].is_none()) else {
            return self.finish(visit);
        };
        for x in self.candidates(u) {
            self.assign(u, x);
            let stop = self.place_isolated(u + 1, visit)?;
            self.unassign(u);
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn finish(&mut self, visit: &mut dyn FnMut(&OrderedWitness) -> Result<bool>) -> Result<bool> {
        let family = PathFamily::new(self.walks.clone(), self.directed);
        let ok = match self.mode {
            Mode::Any => true,
            Mode::Tangent => classify_family(self.g, &family)? == Tangency::Tangent,
            Mode::Liftable => liftable(self.g, &family),
        };
        if !ok {
            return Ok(false);
        }
        let vertex_map = self.phi.iter().map(|x| x.unwrap()).collect();
        visit(&OrderedWitness { vertex_map, family })
    }
}

fn g_deg(g: &PlaneGraph, v: VertexId) -> usize {
    g.degree(v)
}

/// Routing order: edges met by a breadth-first sweep from the vertex of
/// largest degree, so most edges have a mapped endpoint when routed.
fn edge_order(h: &PlaneGraph) -> Vec<usize> {
    let n = h.num_vertices();
    let mut seen_v = vec![false; n];
    let mut seen_e = vec![false; h.num_edges()];
    let mut order = Vec::new();
    let mut starts: Vec<VertexId> = (0..n).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    for s in starts {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &d in h.rotation(v) {
                let e = h.dart_edge(d);
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                let w = h.dart_vertex(h.twin(d));
                if !seen_v[w] {
                    seen_v[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Visits ordered immersions of `h` into `g` until `visit` returns true.
/// `fixed` pins pattern vertices to given images.
pub(crate) fn each_ordered_immersion(
    h: &PlaneGraph,
    g: &PlaneGraph,
    mode: Mode,
    directed: bool,
    fixed: &[(VertexId, VertexId)],
    visit: &mut dyn FnMut(&OrderedWitness) -> Result<bool>,
) -> Result<bool> {
    if h.num_vertices() > g.num_vertices() || h.num_edges() > g.num_edges() {
        return Ok(false);
    }
    let mut s = Search {
        h,
        g,
        directed,
        mode,
        order: edge_order(h),
        phi: vec![None; h.num_vertices()],
        taken: vec![false; g.num_vertices()],
        used: vec![false; g.num_edges()],
        inner: vec![0; g.num_vertices()],
        walks: vec![Vec::new(); h.num_edges()],
        routed: vec![0; h.num_vertices()],
        fixed: fixed.to_vec(),
    };
    s.run(0, visit)
}

/// An ordered immersion of `h` into `g` for the rotation orders, with a
/// tangent image family when `require_tangent` is set.
pub fn ordered_immersion(
    h: &PlaneGraph,
    g: &PlaneGraph,
    require_tangent: bool,
    directed: bool,
) -> Result<Option<OrderedWitness>> {
    ordered_immersion_with(h, g, require_tangent, directed, &SearchOptions::default())
}

pub fn ordered_immersion_with(
    h: &PlaneGraph,
    g: &PlaneGraph,
    require_tangent: bool,
    directed: bool,
    opts: &SearchOptions,
) -> Result<Option<OrderedWitness>> {
    check_cap(h, g, opts)?;
    let (h, g) = prepare(h, g, directed);
    let mut found = None;
    let mode = if require_tangent { Mode::Tangent } else { Mode::Any };
    each_ordered_immersion(&h, &g, mode, directed, &[], &mut |w| {
        found = Some(w.clone());
        Ok(true)
    })?;
    Ok(found)
}

/// Turns a tangent ordered immersion into deletions and lifts: unused edges
/// and vertices go first, then passages whose darts are adjacent are lifted
/// one at a time.
pub fn compile_witness(g: &PlaneGraph, w: &OrderedWitness) -> Option<OpScript> {
    let mut ops = Vec::new();
    let mut on_walk = vec![false; g.num_edges()];
    let mut touched = vec![false; g.num_vertices()];
    for walk in &w.family.walks {
        for &d in walk {
            on_walk[g.dart_edge(d)] = true;
            touched[g.dart_vertex(d)] = true;
            touched[g.dart_vertex(g.twin(d))] = true;
        }
    }
    for &x in &w.vertex_map {
        touched[x] = true;
    }
    for e in 0..g.num_edges() {
        if !on_walk[e] {
            ops.push(EmbeddedOp::DeleteEdge(g.edge_name(e).to_string()));
        }
    }
    for v in 0..g.num_vertices() {
        if !touched[v] {
            ops.push(EmbeddedOp::DeleteVertex(g.vertex_name(v).to_string()));
        }
    }
    let mut cur = g.clone();
    for op in &ops {
        cur = cur.apply(op).ok()?;
    }
    let mut walks: Vec<Vec<String>> = w
        .family
        .walks
        .iter()
        .map(|walk| walk.iter().map(|&d| g.dart_name(d).to_string()).collect())
        .collect();
    loop {
        let mut next = None;
        'find: for (i, walk) in walks.iter().enumerate() {
            for k in 0..walk.len().saturating_sub(1) {
                let a = cur.twin(cur.dart_by_name(&walk[k])?);
                let b = cur.dart_by_name(&walk[k + 1])?;
                let side = if cur.next_ccw(a) == b {
                    LiftSide::Ccw
                } else if cur.prev_ccw(a) == b {
                    LiftSide::Cw
                } else {
                    continue;
                };
                let op = EmbeddedOp::Lift {
                    vertex: cur.vertex_name(cur.dart_vertex(a)).to_string(),
                    e1: cur.edge_name(cur.dart_edge(a)).to_string(),
                    e2: cur.edge_name(cur.dart_edge(b)).to_string(),
                    side,
                };
                next = Some((i, k, op));
                break 'find;
            }
        }
        let Some((i, k, op)) = next else { break };
        cur = cur.apply(&op).ok()?;
        ops.push(op);
        walks[i].remove(k + 1);
    }
    if walks.iter().any(|w| w.len() > 1) {
        return None;
    }
    Some(OpScript::new(ops))
}

/// Canonical form with the named vertices of `tags` marked.
pub(crate) fn tagged_form(g: &PlaneGraph, tags: &[(String, u32)]) -> Vec<u8> {
    g.canonical_form_with(&CanonOptions { allow_reflection: false, tagged: tags.to_vec() })
}
