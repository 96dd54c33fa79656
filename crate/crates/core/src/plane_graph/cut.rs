use super::{EdgeId, PlaneGraph, VertexId};
use crate::{Error, Result};
use std::collections::VecDeque;

/// Edges with exactly one endpoint in `a` (`a[v]` marks membership).
pub fn cut(g: &PlaneGraph, a: &[bool]) -> Result<Vec<EdgeId>> {
    if a.len() != g.num_vertices() {
        return Err(Error::UnknownVertex(format!("membership vector of length {}", a.len())));
    }
    Ok((0..g.num_edges())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            a[u] != a[v]
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCut {
    pub size: usize,
    /// Witness side: contains A, avoids B. It is the inclusion-minimal
    /// minimum cut, hence also the smallest membership vector in
    /// lexicographic order.
    pub x: Vec<bool>,
}

struct Arc {
    to: usize,
    cap: i64,
}

struct Flow {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { arcs: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64, back: i64) {
        self.adj[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap });
        self.adj[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap: back });
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let n = self.adj.len();
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let w = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = a;
                    q.push_back(w);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut w = t;
        while w != s {
            let a = via[w];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            w = self.arcs[a ^ 1].to;
        }
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let w = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        seen
    }
}

/// Minimum number of edges separating `a` from `b`, by unit-capacity
/// augmenting paths between the contracted sets. With `directed`, only
/// edges leaving the witness side are counted and paths follow directions.
pub fn m_cut(g: &PlaneGraph, a: &[bool], b: &[bool], directed: bool) -> Result<MCut> {
    let n = g.num_vertices();
    if a.len() != n || b.len() != n {
        return Err(Error::UnknownVertex("membership vector length".into()));
    }
    if (0..n).any(|v| a[v] && b[v]) {
        return Err(Error::Overlap);
    }
    let (s, t) = (n, n + 1);
    let mut f = Flow::new(n + 2);
    let big = (g.num_edges() + 1) as i64;
    for e in 0..g.num_edges() {
        let (u, v) = g.endpoints(e);
        if u == v {
            continue;
        }
        if directed {
            f.add(u, v, 1, 0);
        } else {
            f.add(u, v, 1, 1);
        }
    }
    for v in 0..n {
        if a[v] {
            f.add(s, v, big, 0);
        }
        if b[v] {
            f.add(v, t, big, 0);
        }
    }
    let mut size = 0;
    while f.augment(s, t) {
        size += 1;
    }
    let r = f.reachable(s);
    Ok(MCut { size, x: r[..n].to_vec() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityProfile {
    pub components: Vec<Vec<VertexId>>,
    pub cut_vertices: Vec<VertexId>,
    pub is_2vc: bool,
}

pub fn connectivity_profile(g: &PlaneGraph) -> ConnectivityProfile {
    let n = g.num_vertices();
    let mut components = vec![Vec::new(); g.num_components()];
    for v in 0..n {
        components[g.component_of(v)].push(v);
    }
    let cut_vertices = articulation_points(g);
    let is_2vc = g.num_components() == 1 && cut_vertices.is_empty() && n >= 3;
    ConnectivityProfile { components, cut_vertices, is_2vc }
}

/// Articulation points of the underlying multigraph (loops ignored).
pub(crate) fn articulation_points(g: &PlaneGraph) -> Vec<VertexId> {
    let n = g.num_vertices();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent edge, next rotation index)
        let mut stack: Vec<(usize, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        loop {
            let top = match stack.last_mut() {
                Some(t) => t,
                None => break,
            };
            let (u, pe, i) = (top.0, top.1, top.2);
            let rot = g.rotation(u);
            if i < rot.len() {
                top.2 += 1;
                let d = rot[i];
                let e = g.dart_edge(d);
                let w = g.dart_vertex(g.twin(d));
                if w == u || Some(e) == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, Some(e), 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if p != root && low[u] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}
