//! Carving and branch decompositions.
//!
//! A [`CarvingTree`] is a tree whose inner nodes have degree 3 and whose
//! leaves carry graph vertices; one unlabelled leaf may serve as the root.
//! Vertex sets are handled as `u64` bitmasks, so decompositions are limited
//! to graphs with at most 64 vertices.

mod bond;
mod certify;
mod disc;
mod exact;
mod leaving;
mod linked;
mod sexpr;

pub use bond::{make_bond_linked, make_bond_linked_with, mu, mu_vertex, rebranch};
pub use certify::{certify, certify_disc, Certificate, DiscCertificate, Property, Verdict, Violation};
pub use disc::{make_disc, make_disc_with};
pub use exact::{branch_width_exact, carving_width_exact, ExactOptions};
pub use leaving::{leaving_graph, leaving_graphs, LeavingGraph};
pub use linked::{linked_improvement_step, make_linked, make_linked_with, order_lt_w, RunLog, WOrder};

use crate::plane_graph::{EdgeId, PlaneGraph, VertexId};
use crate::{Error, Result};

pub type Mask = u64;
pub type NodeId = usize;

/// Tree edge as an ordered pair of node ids (smaller id first).
pub type TreeEdge = (NodeId, NodeId);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarvingTree {
    nbr: Vec<Vec<NodeId>>,
    label: Vec<Option<VertexId>>,
    root: Option<NodeId>,
}

/// Cut structure of a graph on bitmasks; loops are ignored.
#[derive(Clone, Debug)]
pub(crate) struct Cuts {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub edge_ids: Vec<EdgeId>,
    pub adj: Vec<Mask>,
}

impl Cuts {
    pub fn new(g: &PlaneGraph) -> Result<Cuts> {
        let n = g.num_vertices();
        if n > 64 {
            return Err(Error::TooLarge(format!("{n} vertices (at most 64 supported)")));
        }
        let mut edges = Vec::new();
        let mut edge_ids = Vec::new();
        let mut adj = vec![0; n];
        for e in 0..g.num_edges() {
            let (u, v) = g.endpoints(e);
            if u != v {
                edges.push((u, v));
                edge_ids.push(e);
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        Ok(Cuts { n, edges, edge_ids, adj })
    }

    pub fn full(&self) -> Mask {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn cut(&self, s: Mask) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1))
            .count()
    }

    pub fn cut_between(&self, x: Mask, y: Mask) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| (x >> u & 1 == 1 && y >> v & 1 == 1) || (x >> v & 1 == 1 && y >> u & 1 == 1))
            .count()
    }

    pub fn cut_edges(&self, s: Mask) -> Vec<EdgeId> {
        self.edges
            .iter()
            .zip(&self.edge_ids)
            .filter(|(&(u, v), _)| (s >> u & 1) != (s >> v & 1))
            .map(|(_, &e)| e)
            .collect()
    }

    /// Whether `s` induces a connected subgraph (the empty set does not).
    pub fn connected(&self, s: Mask) -> bool {
        if s == 0 {
            return false;
        }
        let start = s & s.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & s & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == s
    }

    /// Minimum cut separating `a` from `b` (unit-capacity augmenting paths).
    pub fn m_cut(&self, a: Mask, b: Mask) -> usize {
        let n = self.n;
        let (s, t) = (n, n + 1);
        let mut cap: Vec<Vec<(usize, i32, usize)>> = vec![Vec::new(); n + 2];
        let add = |cap: &mut Vec<Vec<(usize, i32, usize)>>, u: usize, v: usize, c: i32, back: i32| {
            let iu = cap[u].len();
            let iv = cap[v].len();
            cap[u].push((v, c, iv));
            cap[v].push((u, back, iu));
        };
        for &(u, v) in &self.edges {
            add(&mut cap, u, v, 1, 1);
        }
        let big = self.edges.len() as i32 + 1;
        for v in 0..n {
            if a >> v & 1 == 1 {
                add(&mut cap, s, v, big, 0);
            }
            if b >> v & 1 == 1 {
                add(&mut cap, v, t, big, 0);
            }
        }
        let mut flow = 0;
        loop {
            let mut via: Vec<Option<(usize, usize)>> = vec![None; n + 2];
            let mut seen = vec![false; n + 2];
            seen[s] = true;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for (i, &(w, c, _)) in cap[u].iter().enumerate() {
                    if c > 0 && !seen[w] {
                        seen[w] = true;
                        via[w] = Some((u, i));
                        q.push_back(w);
                    }
                }
            }
            if !seen[t] {
                return flow;
            }
            let mut w = t;
            while let Some((u, i)) = via[w] {
                let (_, _, back) = cap[u][i];
                cap[u][i].1 -= 1;
                cap[w][back].1 += 1;
                w = u;
            }
            flow += 1;
        }
    }
}

pub(crate) fn mask_to_vec(m: Mask) -> Vec<VertexId> {
    (0..64).filter(|&v| m >> v & 1 == 1).collect()
}

/// One row of a width table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWidth {
    pub edge: TreeEdge,
    /// Vertices on the side of `edge.0`.
    pub side1: Vec<VertexId>,
    pub side2: Vec<VertexId>,
    pub cut: Vec<EdgeId>,
    pub width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWidthTable {
    pub rows: Vec<EdgeWidth>,
}

impl EdgeWidthTable {
    pub fn width(&self) -> usize {
        self.rows.iter().map(|r| r.width).max().unwrap_or(0)
    }
}

impl CarvingTree {
    /// Builds a tree from adjacency lists and leaf labels.
    pub fn from_parts(nbr: Vec<Vec<NodeId>>, label: Vec<Option<VertexId>>, root: Option<NodeId>) -> Result<Self> {
        let t = CarvingTree { nbr, label, root };
        t.check_shape()?;
        Ok(t)
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.nbr.len();
        if self.label.len() != n {
            return Err(Error::LabelMismatch("label table length".into()));
        }
        let m: usize = self.nbr.iter().map(|x| x.len()).sum::<usize>() / 2;
        if n > 0 && m + 1 != n {
            return Err(Error::LabelMismatch("not a tree".into()));
        }
        for (x, ns) in self.nbr.iter().enumerate() {
            for &y in ns {
                if y >= n || !self.nbr[y].contains(&x) || y == x {
                    return Err(Error::LabelMismatch("asymmetric adjacency".into()));
                }
            }
            if self.label[x].is_some() && ns.len() > 1 {
                return Err(Error::LabelMismatch("labelled inner node".into()));
            }
        }
        if n > 0 {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for &y in &self.nbr[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            if seen.contains(&false) {
                return Err(Error::LabelMismatch("tree is disconnected".into()));
            }
        }
        if let Some(r) = self.root {
            if r >= n || self.label[r].is_some() || self.nbr[r].len() > 1 {
                return Err(Error::LabelMismatch("root must be an unlabelled leaf".into()));
            }
        }
        Ok(())
    }

    /// Checks that the labels are exactly the vertices `0..nv`, once each.
    pub fn check_labels(&self, nv: usize) -> Result<()> {
        let mut seen = vec![false; nv];
        for l in self.label.iter().flatten() {
            if *l >= nv || seen[*l] {
                return Err(Error::LabelMismatch(format!("vertex {l} labelled twice or unknown")));
            }
            seen[*l] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::LabelMismatch(format!("vertex {v} is not labelled")));
        }
        Ok(())
    }

    pub fn num_nodes(&self) -> usize {
        self.nbr.len()
    }
    pub fn neighbors(&self, x: NodeId) -> &[NodeId] {
        &self.nbr[x]
    }
    pub fn label(&self, x: NodeId) -> Option<VertexId> {
        self.label[x]
    }
    pub fn root(&self) -> Option<NodeId> {
        self.root
    }
    pub fn is_leaf(&self, x: NodeId) -> bool {
        self.nbr[x].len() <= 1
    }
    pub fn leaf_of(&self, v: VertexId) -> Option<NodeId> {
        self.label.iter().position(|&l| l == Some(v))
    }

    /// Tree edges in increasing order.
    pub fn edges(&self) -> Vec<TreeEdge> {
        let mut out = Vec::new();
        for (x, ns) in self.nbr.iter().enumerate() {
            for &y in ns {
                if x < y {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn edge_index(&self, e: TreeEdge) -> Option<usize> {
        let e = (e.0.min(e.1), e.0.max(e.1));
        self.edges().iter().position(|&x| x == e)
    }

    /// Labels reachable from `x` without crossing to `avoid`.
    pub fn side(&self, x: NodeId, avoid: NodeId) -> Mask {
        let mut m = 0;
        let mut stack = vec![(x, avoid)];
        while let Some((y, from)) = stack.pop() {
            if let Some(v) = self.label[y] {
                m |= 1 << v;
            }
            for &z in &self.nbr[y] {
                if z != from {
                    stack.push((z, y));
                }
            }
        }
        m
    }

    /// Nodes reachable from `x` without crossing to `avoid`.
    pub(crate) fn side_nodes(&self, x: NodeId, avoid: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![(x, avoid)];
        while let Some((y, from)) = stack.pop() {
            out.push(y);
            for &z in &self.nbr[y] {
                if z != from {
                    stack.push((z, y));
                }
            }
        }
        out
    }

    /// Masks on both sides of every edge, in `edges()` order.
    pub(crate) fn sides(&self) -> Vec<(TreeEdge, Mask, Mask)> {
        self.edges()
            .into_iter()
            .map(|(x, y)| ((x, y), self.side(x, y), self.side(y, x)))
            .collect()
    }

    /// Tree path between two nodes, as a node sequence.
    pub(crate) fn node_path(&self, from: NodeId, to: NodeId) -> Vec<NodeId> {
        let n = self.nbr.len();
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            if x == to {
                break;
            }
            for &y in &self.nbr[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut path = vec![to];
        let mut x = to;
        while x != from {
            x = prev[x];
            path.push(x);
        }
        path.reverse();
        path
    }

    /// Minimal path of tree edges containing both `a` and `b`, starting
    /// with `a` and ending with `b`.
    pub(crate) fn edge_path(&self, a: TreeEdge, b: TreeEdge) -> Vec<TreeEdge> {
        if norm(a) == norm(b) {
            return vec![norm(a)];
        }
        // the path between the nearest endpoints, plus a and b themselves
        let mut best: Option<Vec<NodeId>> = None;
        for &x in &[a.0, a.1] {
            for &y in &[b.0, b.1] {
                let p = self.node_path(x, y);
                if best.as_ref().map_or(true, |q| p.len() < q.len()) {
                    best = Some(p);
                }
            }
        }
        let p = best.unwrap();
        let mut out = vec![norm(a)];
        for w in p.windows(2) {
            let e = norm((w[0], w[1]));
            if e != norm(a) && e != norm(b) {
                out.push(e);
            }
        }
        out.push(norm(b));
        out
    }

    pub fn widths(&self, g: &PlaneGraph) -> Result<EdgeWidthTable> {
        self.check_labels(g.num_vertices())?;
        let cuts = Cuts::new(g)?;
        let rows = self
            .sides()
            .into_iter()
            .map(|(edge, s1, s2)| EdgeWidth {
                edge,
                side1: mask_to_vec(s1),
                side2: mask_to_vec(s2),
                cut: cuts.cut_edges(s1),
                width: cuts.cut(s1),
            })
            .collect();
        Ok(EdgeWidthTable { rows })
    }

    pub fn width(&self, g: &PlaneGraph) -> Result<usize> {
        Ok(self.widths(g)?.width())
    }

    pub(crate) fn edge_widths(&self, cuts: &Cuts) -> Vec<(TreeEdge, usize)> {
        self.sides().into_iter().map(|(e, s1, _)| (e, cuts.cut(s1))).collect()
    }

    /// Removes unlabelled leaves (other than the root) recursively and
    /// suppresses nodes of degree 2, then renumbers nodes compactly.
    pub fn normalized(&self) -> CarvingTree {
        let n = self.nbr.len();
        let mut nbr = self.nbr.clone();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for x in 0..n {
                if !alive[x] || self.label[x].is_some() || Some(x) == self.root {
                    continue;
                }
                let alive_count = alive.iter().filter(|&&a| a).count();
                if nbr[x].len() <= 1 && alive_count > 1 {
                    for y in nbr[x].clone() {
                        nbr[y].retain(|&z| z != x);
                    }
                    nbr[x].clear();
                    alive[x] = false;
                    changed = true;
                } else if nbr[x].len() == 2 {
                    let (p, q) = (nbr[x][0], nbr[x][1]);
                    for (a, b) in [(p, q), (q, p)] {
                        for z in nbr[a].iter_mut() {
                            if *z == x {
                                *z = b;
                            }
                        }
                    }
                    nbr[x].clear();
                    alive[x] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut id = vec![usize::MAX; n];
        let mut k = 0;
        for x in 0..n {
            if alive[x] {
                id[x] = k;
                k += 1;
            }
        }
        let mut out_nbr = vec![Vec::new(); k];
        let mut out_label = vec![None; k];
        for x in 0..n {
            if alive[x] {
                out_nbr[id[x]] = nbr[x].iter().map(|&y| id[y]).collect();
                out_label[id[x]] = self.label[x];
            }
        }
        CarvingTree { nbr: out_nbr, label: out_label, root: self.root.map(|r| id[r]) }
    }

    /// Copy without the root leaf.
    pub fn unrooted(&self) -> CarvingTree {
        let mut t = self.clone();
        t.root = None;
        t.normalized()
    }

    /// The canonical root edge: the edge whose smaller side, as a sorted
    /// vertex list, is lexicographically first.
    pub fn canonical_edge(&self) -> Option<TreeEdge> {
        self.sides()
            .into_iter()
            .min_by_key(|&(_, a, b)| {
                let (x, y) = (mask_to_vec(a), mask_to_vec(b));
                x.min(y)
            })
            .map(|(e, _, _)| e)
    }

    /// Rooted copy: the canonical edge is subdivided and an unlabelled root
    /// leaf hung on the new node. A tree without edges gets the root leaf
    /// attached directly.
    pub fn rooted(&self) -> CarvingTree {
        if self.root.is_some() {
            return self.clone();
        }
        let mut t = self.clone();
        match self.canonical_edge() {
            Some((x, y)) => {
                let m = t.nbr.len();
                let r = m + 1;
                t.nbr.push(vec![x, y, r]);
                t.nbr.push(vec![m]);
                t.label.push(None);
                t.label.push(None);
                for (a, b) in [(x, y), (y, x)] {
                    for z in t.nbr[a].iter_mut() {
                        if *z == b {
                            *z = m;
                        }
                    }
                }
                t.root = Some(r);
            }
            None => {
                let r = t.nbr.len();
                t.nbr.push(Vec::new());
                t.label.push(None);
                if r > 0 {
                    t.nbr[0].push(r);
                    t.nbr[r].push(0);
                }
                t.root = Some(r);
            }
        }
        t
    }

    /// For a rooted tree, the side of `e` away from the root.
    pub fn below(&self, e: TreeEdge) -> Result<Mask> {
        let r = self.root.ok_or(Error::Unrooted)?;
        let (x, y) = e;
        let p = self.node_path(r, x);
        if p.contains(&y) {
            Ok(self.side(x, y))
        } else {
            Ok(self.side(y, x))
        }
    }

    /// Ancestor relation of a rooted tree: `a` lies on the path from the
    /// root to `b`, and every edge strictly between them is at least as wide
    /// as `a` and `b`, which have equal width.
    pub fn ancestor(&self, g: &PlaneGraph, a: TreeEdge, b: TreeEdge) -> Result<bool> {
        let r = self.root.ok_or(Error::Unrooted)?;
        let cuts = Cuts::new(g)?;
        let (a, b) = (norm(a), norm(b));
        let edges = self.edges();
        if !edges.contains(&a) || !edges.contains(&b) {
            return Err(Error::LabelMismatch("unknown tree edge".into()));
        }
        let w = |e: TreeEdge| cuts.cut(self.side(e.0, e.1));
        if w(a) != w(b) {
            return Ok(false);
        }
        // path from the root through b's far endpoint
        let far = if self.node_path(r, b.0).contains(&b.1) { b.0 } else { b.1 };
        let p = self.node_path(r, far);
        let pe: Vec<TreeEdge> = p.windows(2).map(|x| norm((x[0], x[1]))).collect();
        let ia = match pe.iter().position(|&e| e == a) {
            Some(i) => i,
            None => return Ok(false),
        };
        let ib = pe.len() - 1;
        Ok(ia == ib || pe[ia + 1..ib].iter().all(|&e| w(e) >= w(a)))
    }
}

pub(crate) fn norm(e: TreeEdge) -> TreeEdge {
    (e.0.min(e.1), e.0.max(e.1))
}

/// Incremental tree construction used by the constructions in this module.
#[derive(Clone, Debug, Default)]
pub(crate) struct TreeBuilder {
    pub nbr: Vec<Vec<NodeId>>,
    pub label: Vec<Option<VertexId>>,
}

impl TreeBuilder {
    pub fn node(&mut self, label: Option<VertexId>) -> NodeId {
        self.nbr.push(Vec::new());
        self.label.push(label);
        self.nbr.len() - 1
    }
    pub fn link(&mut self, a: NodeId, b: NodeId) {
        self.nbr[a].push(b);
        self.nbr[b].push(a);
    }
    /// Copies `t` into this builder and returns the node map.
    pub fn absorb(&mut self, t: &CarvingTree) -> Vec<NodeId> {
        let off = self.nbr.len();
        for x in 0..t.nbr.len() {
            self.nbr.push(t.nbr[x].iter().map(|&y| y + off).collect());
            self.label.push(t.label[x]);
        }
        (off..off + t.nbr.len()).collect()
    }
    /// Replaces edge (a, b) by a path a - m - b and returns m.
    pub fn subdivide(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let m = self.node(None);
        for (x, y) in [(a, b), (b, a)] {
            for z in self.nbr[x].iter_mut() {
                if *z == y {
                    *z = m;
                }
            }
        }
        self.nbr[m] = vec![a, b];
        m
    }
    pub fn build(self) -> CarvingTree {
        CarvingTree { nbr: self.nbr, label: self.label, root: None }
    }
}
