//! Embedded deletion, contraction, subdivision and lifts as rotation-system
//! transcriptions.

use super::{fresh_name, trace, finish_with_groups, DartId, FaceId, PlaneGraph, Raw, VertexId};
use crate::unionfind::UnionFind;
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftSide {
    /// `e2`'s dart is the clockwise neighbour of `e1`'s dart at the vertex.
    Cw,
    /// `e2`'s dart is the counterclockwise neighbour of `e1`'s dart.
    Ccw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BiliftKind {
    Delete,
    Contract,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddedOp {
    DeleteEdge(String),
    DeleteVertex(String),
    Contract(String),
    Subdivide { edge: String, new_vertex: String },
    Lift { vertex: String, e1: String, e2: String, side: LiftSide },
    Bilift { vertex: String, kind: BiliftKind },
}

impl fmt::Display for EmbeddedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddedOp::DeleteEdge(e) => write!(f, "del-edge {e}"),
            EmbeddedOp::DeleteVertex(v) => write!(f, "del-vertex {v}"),
            EmbeddedOp::Contract(e) => write!(f, "contract {e}"),
            EmbeddedOp::Subdivide { edge, new_vertex } => write!(f, "subdivide {edge} {new_vertex}"),
            EmbeddedOp::Lift { vertex, e1, e2, side } => {
                let s = match side {
                    LiftSide::Cw => "cw",
                    LiftSide::Ccw => "ccw",
                };
                write!(f, "lift {vertex} {e1} {e2} {s}")
            }
            EmbeddedOp::Bilift { vertex, kind } => {
                let k = match kind {
                    BiliftKind::Delete => "del",
                    BiliftKind::Contract => "contract",
                };
                write!(f, "bilift {vertex} {k}")
            }
        }
    }
}

/// Mutable working copy with dart ids shared with the source graph; new
/// darts get ids past the source's dart count.
struct Edit<'a> {
    old: &'a PlaneGraph,
    vnames: Vec<Option<String>>,
    rot: Vec<Vec<DartId>>,
    dnames: Vec<Option<String>>,
    edges: Vec<Option<(String, [DartId; 2])>>,
    merges: Vec<(FaceId, FaceId)>,
    iso_src: Vec<(VertexId, Vec<FaceId>)>,
}

impl<'a> Edit<'a> {
    fn new(old: &'a PlaneGraph) -> Self {
        Edit {
            old,
            vnames: old.vnames.iter().cloned().map(Some).collect(),
            rot: old.rot.clone(),
            dnames: old.dnames.iter().cloned().map(Some).collect(),
            edges: (0..old.num_edges())
                .map(|e| Some((old.enames[e].clone(), old.edarts[e])))
                .collect(),
            merges: Vec::new(),
            iso_src: Vec::new(),
        }
    }

    fn remove_dart(&mut self, d: DartId) {
        for r in self.rot.iter_mut() {
            if let Some(i) = r.iter().position(|&x| x == d) {
                r.remove(i);
                return;
            }
        }
    }

    fn new_dart(&mut self, name: String) -> DartId {
        self.dnames.push(Some(name));
        self.dnames.len() - 1
    }

    fn name_taken_dart(&self, n: &str) -> bool {
        self.dnames.iter().flatten().any(|x| x == n)
    }

    fn finish(self) -> Result<PlaneGraph> {
        let old = self.old;
        let nd_old = old.num_darts();
        let mut vmap = vec![usize::MAX; self.vnames.len()];
        let mut raw = Raw {
            directed: old.directed,
            ..Raw::default()
        };
        for (v, n) in self.vnames.iter().enumerate() {
            if let Some(n) = n {
                vmap[v] = raw.vnames.len();
                raw.vnames.push(n.clone());
            }
        }
        let mut dmap = vec![usize::MAX; self.dnames.len()];
        let mut dorig = Vec::new();
        for (d, n) in self.dnames.iter().enumerate() {
            if let Some(n) = n {
                dmap[d] = raw.dnames.len();
                raw.dnames.push(n.clone());
                dorig.push(d);
            }
        }
        raw.rot = vec![Vec::new(); raw.vnames.len()];
        for (v, r) in self.rot.iter().enumerate() {
            if vmap[v] != usize::MAX {
                raw.rot[vmap[v]] = r.iter().map(|&d| dmap[d]).collect();
            } else if !r.is_empty() {
                return Err(Error::Internal("deleted vertex still has darts".into()));
            }
        }
        for (n, p) in self.edges.iter().flatten() {
            raw.enames.push(n.clone());
            raw.edarts.push([dmap[p[0]], dmap[p[1]]]);
        }
        let traced = trace(raw)?;
        let mut uf = UnionFind::new(old.nregions.max(1));
        for &(a, b) in &self.merges {
            uf.union(old.fregion[a], old.fregion[b]);
        }
        let g = traced.graph();
        let mut face_src: Vec<Vec<usize>> = Vec::with_capacity(g.faces.len());
        for f in &g.faces {
            let mut src = Vec::new();
            match f.vertex {
                Some(v) => {
                    // locate the edit-space vertex
                    let ev = vmap.iter().position(|&x| x == v).unwrap();
                    if ev < old.num_vertices() {
                        if let Some(of) = old.vface[ev] {
                            src.push(old.fregion[of]);
                        }
                    }
                    for (iv, fs) in &self.iso_src {
                        if *iv == ev {
                            src.extend(fs.iter().map(|&x| old.fregion[x]));
                        }
                    }
                }
                None => {
                    for &d in &f.darts {
                        let ed = dorig[traced.origin[d]];
                        if ed < nd_old {
                            src.push(old.fregion[old.dface[ed]]);
                        }
                    }
                }
            }
            if src.is_empty() {
                return Err(Error::Internal("new face without a source region".into()));
            }
            for w in src.windows(2) {
                uf.union(w[0], w[1]);
            }
            face_src.push(src);
        }
        let groups: Vec<usize> = face_src.iter().map(|s| uf.find(s[0])).collect();
        let outer = old.outer.map(|o| uf.find(o));
        finish_with_groups(traced, &groups, outer)
    }
}

impl PlaneGraph {
    /// Applies one embedded operation and returns the resulting graph.
    pub fn apply(&self, op: &EmbeddedOp) -> Result<PlaneGraph> {
        match op {
            EmbeddedOp::DeleteEdge(e) => {
                let e = self.edge_id(e)?;
                self.delete_edge(e)
            }
            EmbeddedOp::DeleteVertex(v) => {
                let v = self.vertex_id(v)?;
                self.delete_vertex(v)
            }
            EmbeddedOp::Contract(e) => {
                let e = self.edge_id(e)?;
                self.contract_edge(e)
            }
            EmbeddedOp::Subdivide { edge, new_vertex } => {
                let e = self.edge_id(edge)?;
                self.subdivide(e, new_vertex)
            }
            EmbeddedOp::Lift { vertex, e1, e2, side } => {
                let v = self.vertex_id(vertex)?;
                let e1 = self.edge_id(e1)?;
                let e2 = self.edge_id(e2)?;
                let (x, y) = self.lift_darts(v, e1, e2, *side)?;
                self.lift_at(x, y)
            }
            EmbeddedOp::Bilift { vertex, kind } => {
                let v = self.vertex_id(vertex)?;
                self.bilift(v, *kind)
            }
        }
    }

    fn vertex_id(&self, v: &str) -> Result<VertexId> {
        self.vertex_by_name(v).ok_or_else(|| Error::BadAddress(format!("vertex {v}")))
    }

    fn edge_id(&self, e: &str) -> Result<usize> {
        self.edge_by_name(e).ok_or_else(|| Error::BadAddress(format!("edge {e}")))
    }

    pub fn delete_edge(&self, e: usize) -> Result<PlaneGraph> {
        let mut ed = Edit::new(self);
        let [a, b] = self.edarts[e];
        ed.remove_dart(a);
        ed.remove_dart(b);
        ed.dnames[a] = None;
        ed.dnames[b] = None;
        ed.edges[e] = None;
        ed.merges.push((self.dface[a], self.dface[b]));
        for v in [self.dvert[a], self.dvert[b]] {
            if ed.rot[v].is_empty() {
                ed.iso_src.push((v, vec![self.dface[a], self.dface[b]]));
            }
        }
        ed.finish()
    }

    pub fn delete_vertex(&self, v: VertexId) -> Result<PlaneGraph> {
        let name = self.vnames[v].clone();
        let mut g = self.clone();
        loop {
            let v = g.vertex_by_name(&name).unwrap();
            match g.rot[v].first() {
                Some(&d) => g = g.delete_edge(g.dedge[d])?,
                None => break,
            }
        }
        let v = g.vertex_by_name(&name).unwrap();
        let mut ed = Edit::new(&g);
        ed.vnames[v] = None;
        ed.finish()
    }

    pub fn contract_edge(&self, e: usize) -> Result<PlaneGraph> {
        if self.is_loop(e) {
            return Err(Error::SelfLoopContract(self.enames[e].clone()));
        }
        let [du, dw] = self.edarts[e];
        let (u, w) = (self.dvert[du], self.dvert[dw]);
        let mut ed = Edit::new(self);
        let ru = &self.rot[u];
        let rw = &self.rot[w];
        let iu = self.dpos[du];
        let iw = self.dpos[dw];
        let mut merged = Vec::with_capacity(ru.len() + rw.len() - 2);
        for k in 1..ru.len() {
            merged.push(ru[(iu + k) % ru.len()]);
        }
        for k in 1..rw.len() {
            merged.push(rw[(iw + k) % rw.len()]);
        }
        ed.rot[u] = merged;
        ed.rot[w] = Vec::new();
        ed.vnames[w] = None;
        ed.dnames[du] = None;
        ed.dnames[dw] = None;
        ed.edges[e] = None;
        if ed.rot[u].is_empty() {
            ed.iso_src.push((u, vec![self.dface[du]]));
        }
        ed.finish()
    }

    pub fn subdivide(&self, e: usize, new_vertex: &str) -> Result<PlaneGraph> {
        if self.vertex_by_name(new_vertex).is_some() {
            return Err(Error::BadAddress(format!("vertex {new_vertex} already exists")));
        }
        let [a, b] = self.edarts[e];
        let mut ed = Edit::new(self);
        let n1 = fresh_name(&format!("{new_vertex}.0"), &|n| ed.name_taken_dart(n));
        let c1 = ed.new_dart(n1);
        let n2 = fresh_name(&format!("{new_vertex}.1"), &|n| ed.name_taken_dart(n));
        let c2 = ed.new_dart(n2);
        let base = format!("{}'", self.enames[e]);
        let ename = fresh_name(&base, &|n| self.enames.iter().any(|x| x == n));
        ed.vnames.push(Some(new_vertex.to_string()));
        ed.rot.push(vec![c1, c2]);
        ed.edges[e] = Some((self.enames[e].clone(), [a, c1]));
        ed.edges.push(Some((ename, [c2, b])));
        ed.finish()
    }

    /// Darts of `e1` and `e2` at `v` that are adjacent on the requested side.
    pub fn lift_darts(&self, v: VertexId, e1: usize, e2: usize, side: LiftSide) -> Result<(DartId, DartId)> {
        let vname = &self.vnames[v];
        if e1 == e2 {
            return Err(Error::CrossingArc(vname.clone()));
        }
        let at_v = |e: usize| -> Vec<DartId> {
            self.edarts[e].iter().copied().filter(|&d| self.dvert[d] == v).collect()
        };
        let xs = at_v(e1);
        let ys = at_v(e2);
        for (e, ds) in [(e1, &xs), (e2, &ys)] {
            if ds.is_empty() {
                return Err(Error::NotIncident { vertex: vname.clone(), edge: self.enames[e].clone() });
            }
        }
        let mut directed_ok = false;
        for &x in &xs {
            for &y in &ys {
                if self.directed && !(self.is_head(x) && self.is_tail(y)) {
                    continue;
                }
                directed_ok = true;
                let adjacent = match side {
                    LiftSide::Ccw => self.next_ccw(x) == y,
                    LiftSide::Cw => self.prev_ccw(x) == y,
                };
                if adjacent || self.rot[v].len() == 2 {
                    return Ok((x, y));
                }
            }
        }
        if self.directed && !directed_ok {
            return Err(Error::DirectedMismatch(vname.clone()));
        }
        Err(Error::CrossingArc(vname.clone()))
    }

    /// Lifts the edges of darts `x` and `y` (adjacent at their common
    /// vertex). The merged edge keeps the name of `x`'s edge.
    pub(crate) fn lift_at(&self, x: DartId, y: DartId) -> Result<PlaneGraph> {
        let v = self.dvert[x];
        let (ex, ey) = (self.dedge[x], self.dedge[y]);
        if ex == ey || self.dvert[y] != v {
            return Err(Error::CrossingArc(self.vnames[v].clone()));
        }
        let deg = self.rot[v].len();
        let (fx, fy) = (self.twin(x), self.twin(y));
        let mut ed = Edit::new(self);
        if deg > 2 {
            let (a, b) = if self.next_ccw(x) == y {
                (x, y)
            } else if self.next_ccw(y) == x {
                (y, x)
            } else {
                return Err(Error::CrossingArc(self.vnames[v].clone()));
            };
            let p = self.prev_ccw(a);
            ed.merges.push((self.dface[p], self.dface[b]));
        }
        ed.remove_dart(x);
        ed.remove_dart(y);
        ed.dnames[x] = None;
        ed.dnames[y] = None;
        ed.edges[ex] = Some((self.enames[ex].clone(), [fx, fy]));
        ed.edges[ey] = None;
        if deg == 2 {
            ed.vnames[v] = None;
        }
        ed.finish()
    }

    /// Two directed lifts at an alternating degree-4 vertex. `Delete` routes
    /// through the two corners whose faces are oriented clockwise, `Contract`
    /// through the two counterclockwise ones. A pair formed by both ends of
    /// one self-loop closes into a free curve, which is discarded.
    pub fn bilift(&self, v: VertexId, kind: BiliftKind) -> Result<PlaneGraph> {
        let r = &self.rot[v];
        let vname = self.vnames[v].clone();
        if !self.directed || r.len() != 4 {
            return Err(Error::DirectedMismatch(vname));
        }
        for i in 0..4 {
            if self.is_tail(r[i]) == self.is_tail(r[(i + 1) % 4]) {
                return Err(Error::DirectedMismatch(vname));
            }
        }
        // corner (x, next(x)) lies in face(x); x is a head dart exactly when
        // that face is traversed against the edge orientations (clockwise).
        let pairs: Vec<(DartId, DartId)> = (0..4)
            .map(|i| (r[i], r[(i + 1) % 4]))
            .filter(|&(x, y)| match kind {
                BiliftKind::Delete => self.is_head(x) && self.is_tail(y),
                BiliftKind::Contract => self.is_tail(x) && self.is_head(y),
            })
            .map(|(x, y)| if self.is_head(x) { (x, y) } else { (y, x) })
            .collect();
        let dname = |g: &PlaneGraph, d: DartId| g.dnames[d].clone();
        let names: Vec<(String, String)> = pairs.iter().map(|&(i, o)| (dname(self, i), dname(self, o))).collect();
        let mut g = self.clone();
        for (iname, oname) in names {
            let i = g.dnames.iter().position(|n| *n == iname);
            let o = g.dnames.iter().position(|n| *n == oname);
            let (i, o) = match (i, o) {
                (Some(i), Some(o)) => (i, o),
                _ => continue,
            };
            if g.dedge[i] == g.dedge[o] {
                g = g.delete_edge(g.dedge[i])?;
                continue;
            }
            g = g.lift_at(i, o)?;
        }
        if let Some(v) = g.vertex_by_name(&vname) {
            if g.rot[v].is_empty() {
                g = g.delete_vertex(v)?;
            }
        }
        Ok(g)
    }
}
