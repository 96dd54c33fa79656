//! Bond, linked and disc certification of carving trees.
//!
//! The disc test for a side `P` with complement `Q` guesses the cyclic
//! order in which a separating curve meets the cut edges, then checks that
//! both `G[P]` plus a hub standing for `Q` and `G[Q]` plus a hub standing
//! for `P` are sphere embeddings. When one side is connected the order is
//! read off by contracting a spanning tree of that side.

use super::{mask_to_vec, norm, CarvingTree, Cuts, Mask, TreeEdge};
use crate::plane_graph::{trace, DartId, FaceId, PlaneGraph, Raw, VertexId};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Bond,
    Linked,
    Disc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A displayed subgraph of this edge is disconnected.
    Bond { edge: TreeEdge },
    /// The minimum cut between the far sides of `a` and `b` is smaller than
    /// the narrowest edge between them.
    Linked { a: TreeEdge, b: TreeEdge, m_cut: usize, path_min: usize },
    /// No separating curve exists for this edge.
    Disc { edge: TreeEdge },
    /// The edge separates a configuration the disc test does not handle.
    Unsupported { edge: TreeEdge, reason: String },
}

/// A separating curve for one tree edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscCertificate {
    pub edge: TreeEdge,
    /// Vertices inside the disc.
    pub inside: Vec<VertexId>,
    /// Outer darts of the crossed edges, in the order the curve meets them
    /// (counterclockwise around a hub replacing the outside).
    pub boundary: Vec<DartId>,
    /// `faces[i]` is the face the curve runs through from `boundary[i]` to
    /// `boundary[i + 1]`. Without crossings it holds the face whose region
    /// contains the curve.
    pub faces: Vec<FaceId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Bond,
    Linked,
    Disc(Vec<DiscCertificate>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds(Certificate),
    Fails(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }
}

pub fn certify(g: &PlaneGraph, t: &CarvingTree, prop: Property) -> Result<Verdict> {
    t.check_labels(g.num_vertices())?;
    let cuts = Cuts::new(g)?;
    Ok(match prop {
        Property::Bond => match bond_violation(&cuts, t) {
            Some(v) => Verdict::Fails(v),
            None => Verdict::Holds(Certificate::Bond),
        },
        Property::Linked => match linked_violation(&cuts, t) {
            Some(v) => Verdict::Fails(v),
            None => Verdict::Holds(Certificate::Linked),
        },
        Property::Disc => {
            let mut certs = Vec::new();
            for (edge, s1, _) in t.sides() {
                match disc_at(g, &cuts, s1) {
                    DiscOutcome::Curve { boundary, faces } => certs.push(DiscCertificate {
                        edge,
                        inside: mask_to_vec(s1),
                        boundary,
                        faces,
                    }),
                    DiscOutcome::None => return Ok(Verdict::Fails(Violation::Disc { edge })),
                    DiscOutcome::Unsupported(reason) => {
                        return Ok(Verdict::Fails(Violation::Unsupported { edge, reason }))
                    }
                }
            }
            Verdict::Holds(Certificate::Disc(certs))
        }
    })
}

/// Disc certificates of every edge, or the first failure as an error.
pub fn certify_disc(g: &PlaneGraph, t: &CarvingTree) -> Result<Vec<DiscCertificate>> {
    match certify(g, t, Property::Disc)? {
        Verdict::Holds(Certificate::Disc(c)) => Ok(c),
        Verdict::Fails(Violation::Disc { edge } | Violation::Unsupported { edge, .. }) => {
            Err(Error::NoCertificate(t.edge_index(edge).unwrap_or(usize::MAX)))
        }
        _ => Err(Error::Internal("unexpected verdict".into())),
    }
}

pub(crate) fn bond_violation(cuts: &Cuts, t: &CarvingTree) -> Option<Violation> {
    for (edge, s1, s2) in t.sides() {
        if s1 == 0 || s2 == 0 {
            continue;
        }
        if !cuts.connected(s1) || !cuts.connected(s2) {
            return Some(Violation::Bond { edge });
        }
    }
    None
}

pub(crate) fn linked_violation(cuts: &Cuts, t: &CarvingTree) -> Option<Violation> {
    let edges = t.edges();
    let width: std::collections::HashMap<TreeEdge, usize> =
        t.edge_widths(cuts).into_iter().collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = (edges[i], edges[j]);
            let path = t.edge_path(a, b);
            let path_min = path.iter().map(|e| width[&norm(*e)]).min().unwrap();
            let (sa, sb) = far_sides(t, a, b);
            let m = cuts.m_cut(sa, sb);
            if m != path_min {
                return Some(Violation::Linked { a, b, m_cut: m, path_min });
            }
        }
    }
    None
}

/// Labels on the side of `a` away from `b`, and on the side of `b` away
/// from `a`.
pub(crate) fn far_sides(t: &CarvingTree, a: TreeEdge, b: TreeEdge) -> (Mask, Mask) {
    let path = t.edge_path(a, b);
    // the endpoint of a not shared with the next path edge is a's far end
    let next = path[1];
    let a_far = if a.0 == next.0 || a.0 == next.1 { a.1 } else { a.0 };
    let a_near = if a_far == a.0 { a.1 } else { a.0 };
    let prev = path[path.len() - 2];
    let b_far = if b.0 == prev.0 || b.0 == prev.1 { b.1 } else { b.0 };
    let b_near = if b_far == b.0 { b.1 } else { b.0 };
    (t.side(a_far, a_near), t.side(b_far, b_near))
}

pub(crate) enum DiscOutcome {
    Curve { boundary: Vec<DartId>, faces: Vec<FaceId> },
    None,
    Unsupported(String),
}

/// Largest number of crossings for which cyclic orders are enumerated when
/// neither side is connected.
const MAX_ENUMERATED_CROSSINGS: usize = 9;

pub(crate) fn disc_at(g: &PlaneGraph, cuts: &Cuts, inside: Mask) -> DiscOutcome {
    let n = g.num_vertices();
    let comp_mask = |c: usize| -> Mask { g.vertices_of_component(c).iter().fold(0, |m, &v| m | 1 << v) };
    let crossed: Vec<usize> = (0..g.num_components())
        .filter(|&c| {
            let m = comp_mask(c);
            m & inside != 0 && m & !inside != 0
        })
        .collect();
    let outside = cuts.full() & !inside;
    match crossed.len() {
        0 => match free_region(g, inside) {
            Some(f) => DiscOutcome::Curve { boundary: Vec::new(), faces: vec![f] },
            None => DiscOutcome::None,
        },
        1 => {
            let c = crossed[0];
            let cm = comp_mask(c);
            let boundary = match crossing_order(g, cuts, inside & cm, outside & cm) {
                Ok(Some(b)) => b,
                Ok(None) => return DiscOutcome::None,
                Err(reason) => return DiscOutcome::Unsupported(reason),
            };
            if g.num_components() > 1 && !blobs_fit(g, c, inside, &boundary) {
                return DiscOutcome::None;
            }
            let faces = boundary.iter().map(|&d| g.dart_face(d)).collect();
            let _ = n;
            DiscOutcome::Curve { boundary, faces }
        }
        _ => DiscOutcome::Unsupported("the curve would cross several components".into()),
    }
}

/// Raw data of `G[side]` plus a hub vertex whose rotation is `hub` (darts of
/// `g` at the far ends of the cut edges).
pub(crate) fn hub_raw(g: &PlaneGraph, side: Mask, hub: &[DartId], hub_name: &str) -> Raw {
    let inside = |v: VertexId| side >> v & 1 == 1;
    let mut raw = Raw { directed: g.is_directed(), ..Raw::default() };
    let mut dmap = vec![usize::MAX; g.num_darts()];
    let hub_set: std::collections::HashSet<DartId> = hub.iter().copied().collect();
    for e in 0..g.num_edges() {
        let [a, b] = g.edge_darts(e);
        let (u, v) = (g.dart_vertex(a), g.dart_vertex(b));
        let keep = (inside(u) && inside(v))
            || (inside(u) && hub_set.contains(&b))
            || (inside(v) && hub_set.contains(&a));
        if !keep {
            continue;
        }
        for d in [a, b] {
            dmap[d] = raw.dnames.len();
            raw.dnames.push(g.dart_name(d).to_string());
        }
        raw.edarts.push([dmap[a], dmap[b]]);
        raw.enames.push(g.edge_name(e).to_string());
    }
    for v in 0..g.num_vertices() {
        if inside(v) {
            raw.vnames.push(g.vertex_name(v).to_string());
            raw.rot.push(
                g.rotation(v)
                    .iter()
                    .filter(|&&d| dmap[d] != usize::MAX)
                    .map(|&d| dmap[d])
                    .collect(),
            );
        }
    }
    raw.vnames.push(hub_name.to_string());
    raw.rot.push(hub.iter().map(|&d| dmap[d]).collect());
    raw
}

fn embeds(g: &PlaneGraph, side: Mask, hub: &[DartId]) -> bool {
    trace(hub_raw(g, side, hub, "\u{0}hub")).is_ok()
}

/// Cut darts at the `q` end, in the rotation order of `q` contracted to a
/// single vertex (tour around a spanning tree of `G[q]`).
fn contracted_rotation(g: &PlaneGraph, cuts: &Cuts, q: Mask, p: Mask) -> Vec<DartId> {
    let start = q.trailing_zeros() as usize;
    // BFS spanning tree of G[q]
    let mut in_tree = vec![false; g.num_edges()];
    let mut seen: Mask = 1 << start;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &d in g.rotation(u) {
            let w = g.dart_vertex(g.twin(d));
            if q >> w & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                in_tree[g.dart_edge(d)] = true;
                queue.push_back(w);
            }
        }
    }
    let _ = cuts;
    let is_cut = |d: DartId| p >> g.dart_vertex(g.twin(d)) & 1 == 1;
    let total: usize = g.rotation(start).len();
    let mut out = Vec::new();
    if total == 0 {
        return out;
    }
    // Euler tour around the tree; each non-tree dart is met once
    let first = g.rotation(start)[0];
    let mut d = first;
    loop {
        if in_tree[g.dart_edge(d)] {
            d = g.next_ccw(g.twin(d));
        } else {
            if is_cut(d) {
                out.push(d);
            }
            d = g.next_ccw(d);
        }
        if d == first {
            break;
        }
    }
    out
}

/// Hub rotation for `G[p]` plus a hub for `q`, when one exists.
fn crossing_order(g: &PlaneGraph, cuts: &Cuts, p: Mask, q: Mask) -> std::result::Result<Option<Vec<DartId>>, String> {
    let check = |sigma: &[DartId]| {
        let rev: Vec<DartId> = sigma.iter().rev().map(|&d| g.twin(d)).collect();
        embeds(g, p, sigma) && embeds(g, q, &rev)
    };
    if cuts.connected(q) {
        let sigma = contracted_rotation(g, cuts, q, p);
        return Ok(check(&sigma).then_some(sigma));
    }
    if cuts.connected(p) {
        let rho = contracted_rotation(g, cuts, p, q);
        let sigma: Vec<DartId> = rho.iter().rev().map(|&d| g.twin(d)).collect();
        return Ok(check(&sigma).then_some(sigma));
    }
    // neither side connected: try every cyclic order
    let mut darts: Vec<DartId> = Vec::new();
    for e in 0..g.num_edges() {
        let [a, b] = g.edge_darts(e);
        let (u, v) = (g.dart_vertex(a), g.dart_vertex(b));
        if p >> u & 1 == 1 && q >> v & 1 == 1 {
            darts.push(b);
        } else if p >> v & 1 == 1 && q >> u & 1 == 1 {
            darts.push(a);
        }
    }
    if darts.len() > MAX_ENUMERATED_CROSSINGS {
        return Err(format!("{} crossings with both sides disconnected", darts.len()));
    }
    let first = darts[0];
    let mut rest = darts[1..].to_vec();
    rest.sort_unstable();
    loop {
        let mut sigma = vec![first];
        sigma.extend_from_slice(&rest);
        if check(&sigma) {
            return Ok(Some(sigma));
        }
        if !next_permutation(&mut rest) {
            return Ok(None);
        }
    }
}

pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Bipartite tree of components and regions: node `c` for component `c`,
/// node `nc + r` for region `r`, one tree edge per face.
pub(crate) struct NestTree {
    pub nc: usize,
    pub adj: Vec<Vec<(usize, FaceId)>>,
}

impl NestTree {
    pub fn new(g: &PlaneGraph) -> Self {
        let nc = g.num_components();
        let mut adj = vec![Vec::new(); nc + g.num_regions()];
        for f in 0..g.faces().len() {
            let (c, r) = (g.face_component(f), nc + g.face_region(f));
            adj[c].push((r, f));
            adj[r].push((c, f));
        }
        NestTree { nc, adj }
    }

    /// Components reachable from `start` without passing through `avoid`.
    pub fn branch(&self, start: usize, avoid: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(start, avoid)];
        while let Some((x, from)) = stack.pop() {
            if x < self.nc {
                out.push(x);
            }
            for &(y, _) in &self.adj[x] {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        out
    }
}

fn side_of(g: &PlaneGraph, comps: &[usize], inside: Mask) -> Option<bool> {
    let mut m: Mask = 0;
    for &c in comps {
        for v in g.vertices_of_component(c) {
            m |= 1 << v;
        }
    }
    if m & inside == m {
        Some(true)
    } else if m & inside == 0 {
        Some(false)
    } else {
        None
    }
}

/// A region in which a curve can enclose exactly the inside vertices.
fn free_region(g: &PlaneGraph, inside: Mask) -> Option<FaceId> {
    let nt = NestTree::new(g);
    for r in 0..g.num_regions() {
        let node = nt.nc + r;
        let ok = nt.adj[node]
            .iter()
            .all(|&(c, _)| side_of(g, &nt.branch(c, node), inside).is_some());
        if ok {
            // report the face of the region on the inside branch, if any
            let pick = nt.adj[node]
                .iter()
                .find(|&&(c, _)| side_of(g, &nt.branch(c, node), inside) == Some(true))
                .or_else(|| nt.adj[node].first())
                .map(|&(_, f)| f)?;
            return Some(pick);
        }
    }
    None
}

/// With one crossed component `c`, the other components hanging off a face
/// of `c` must sit on one side each, and on the face's own side when the
/// curve does not pass through that face.
fn blobs_fit(g: &PlaneGraph, c: usize, inside: Mask, boundary: &[DartId]) -> bool {
    let nt = NestTree::new(g);
    let crossed_faces: std::collections::HashSet<FaceId> = boundary
        .iter()
        .flat_map(|&d| [g.dart_face(d), g.dart_face(g.twin(d))])
        .collect();
    for &(r, f) in &nt.adj[c] {
        for &(k, _) in &nt.adj[r] {
            if k == c {
                continue;
            }
            let side = match side_of(g, &nt.branch(k, r), inside) {
                Some(s) => s,
                None => return false,
            };
            if !crossed_faces.contains(&f) {
                let fv = g.face_vertices(f);
                let face_side = inside >> fv[0] & 1 == 1;
                if side != face_side {
                    return false;
                }
            }
        }
    }
    true
}
