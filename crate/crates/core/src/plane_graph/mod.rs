//! Sphere-embedded multigraphs stored as rotation systems over darts.
//!
//! Rotations are counterclockwise. A face is traced by the rule
//! `succ(d) = prev_ccw(twin(d))`, which keeps the face interior on the left.
//! Disconnected graphs carry a region structure: every facial walk (and every
//! isolated vertex, which owns one empty facial walk) is a slot of exactly one
//! region, and the component/region incidence graph is a tree.

mod canon;
mod cut;
mod dual;
mod ops;
mod plg;

pub use canon::CanonOptions;
pub use cut::{connectivity_profile, cut, m_cut, ConnectivityProfile, MCut};
pub use ops::{BiliftKind, EmbeddedOp, LiftSide};

use crate::unionfind::UnionFind;
use crate::{Error, Result};
use std::collections::HashMap;

pub type VertexId = usize;
pub type DartId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;
pub type RegionId = usize;

/// A facial walk. Isolated vertices own one empty walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<DartId>,
    pub vertex: Option<VertexId>,
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    vnames: Vec<String>,
    rot: Vec<Vec<DartId>>,
    dnames: Vec<String>,
    enames: Vec<String>,
    edarts: Vec<[DartId; 2]>,
    directed: bool,
    dvert: Vec<VertexId>,
    dedge: Vec<EdgeId>,
    dpos: Vec<usize>,
    faces: Vec<Face>,
    dface: Vec<FaceId>,
    vface: Vec<Option<FaceId>>,
    vcomp: Vec<usize>,
    ncomp: usize,
    fcomp: Vec<usize>,
    fregion: Vec<RegionId>,
    nregions: usize,
    outer: Option<RegionId>,
}

/// Nesting request used while building: the component of `vertex` (through
/// its face `face`, or its first face) sits in face `host_face`.
#[derive(Clone, Debug)]
pub struct Nest {
    pub vertex: VertexId,
    pub face: Option<FaceId>,
    pub host_face: FaceId,
}

/// Raw rotation data before validation. Dart ids are local to the raw value.
#[derive(Clone, Debug, Default)]
pub(crate) struct Raw {
    pub vnames: Vec<String>,
    pub rot: Vec<Vec<DartId>>,
    pub dnames: Vec<String>,
    pub enames: Vec<String>,
    pub edarts: Vec<[DartId; 2]>,
    pub directed: bool,
}

/// Intermediate result of validation: everything except regions.
pub(crate) struct Traced {
    g: PlaneGraph,
    /// new dart id -> raw dart id
    pub origin: Vec<DartId>,
}

impl Traced {
    pub fn graph(&self) -> &PlaneGraph {
        &self.g
    }
}

/// Incremental construction of a plane graph.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    raw: Raw,
    placed: Vec<bool>,
    nests: Vec<Nest>,
    outer: Option<FaceId>,
}

impl Builder {
    pub fn new(directed: bool) -> Self {
        Builder {
            raw: Raw {
                directed,
                ..Raw::default()
            },
            ..Builder::default()
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.raw.vnames.push(name.into());
        self.raw.rot.push(Vec::new());
        self.raw.vnames.len() - 1
    }

    /// Adds an edge from `u` to `v` (tail `u` when directed) and returns its
    /// two darts. The darts still have to be placed with `set_rotation`.
    pub fn add_edge(&mut self, name: impl Into<String>) -> (DartId, DartId) {
        let name = name.into();
        let a = self.raw.dnames.len();
        self.raw.dnames.push(format!("{name}.0"));
        self.raw.dnames.push(format!("{name}.1"));
        self.placed.push(false);
        self.placed.push(false);
        self.raw.enames.push(name);
        self.raw.edarts.push([a, a + 1]);
        (a, a + 1)
    }

    pub fn set_rotation(&mut self, v: VertexId, darts: Vec<DartId>) {
        self.raw.rot[v] = darts;
    }

    pub fn nest(&mut self, nest: Nest) {
        self.nests.push(nest);
    }

    pub fn outer(&mut self, face: FaceId) {
        self.outer = Some(face);
    }

    pub(crate) fn raw_mut_names(&mut self) -> &mut Vec<String> {
        &mut self.raw.dnames
    }

    pub(crate) fn from_raw(raw: Raw) -> Self {
        Builder {
            raw,
            ..Builder::default()
        }
    }

    pub fn build(self) -> Result<PlaneGraph> {
        let traced = trace(self.raw)?;
        let nests = self.nests;
        let outer = self.outer;
        finish_with_nests(traced, &nests, outer)
    }
}

/// Validates the raw rotation data, renumbers darts by appearance order,
/// traces faces and checks Euler's relation per component.
pub(crate) fn trace(raw: Raw) -> Result<Traced> {
    let nd_raw = raw.dnames.len();
    if raw.edarts.len() != raw.enames.len() {
        return Err(Error::BadTwin("edge name count mismatch".into()));
    }
    let mut seen_edge = vec![usize::MAX; nd_raw];
    for (e, pair) in raw.edarts.iter().enumerate() {
        for &d in pair {
            if d >= nd_raw {
                return Err(Error::BadTwin(format!("edge {} uses unknown dart", raw.enames[e])));
            }
            if seen_edge[d] != usize::MAX {
                return Err(Error::BadTwin(format!("dart {} is used twice", raw.dnames[d])));
            }
            seen_edge[d] = e;
        }
        if pair[0] == pair[1] {
            return Err(Error::BadTwin(format!("dart {} is its own twin", raw.dnames[pair[0]])));
        }
    }
    if let Some(d) = seen_edge.iter().position(|&e| e == usize::MAX) {
        return Err(Error::BadTwin(format!("dart {} has no twin", raw.dnames[d])));
    }
    // renumber darts by appearance in the rotations
    let mut new_of = vec![usize::MAX; nd_raw];
    let mut origin = Vec::with_capacity(nd_raw);
    for r in &raw.rot {
        for &d in r {
            if d >= nd_raw {
                return Err(Error::BadTwin("rotation uses unknown dart".into()));
            }
            if new_of[d] != usize::MAX {
                return Err(Error::BadTwin(format!("dart {} appears twice in rotations", raw.dnames[d])));
            }
            new_of[d] = origin.len();
            origin.push(d);
        }
    }
    if origin.len() != nd_raw {
        let d = new_of.iter().position(|&x| x == usize::MAX).unwrap();
        return Err(Error::BadTwin(format!("dart {} is not placed in any rotation", raw.dnames[d])));
    }
    let nd = nd_raw;
    let nv = raw.vnames.len();
    let rot: Vec<Vec<DartId>> = raw
        .rot
        .iter()
        .map(|r| r.iter().map(|&d| new_of[d]).collect())
        .collect();
    let dnames: Vec<String> = origin.iter().map(|&d| raw.dnames[d].clone()).collect();
    let edarts: Vec<[DartId; 2]> = raw
        .edarts
        .iter()
        .map(|p| [new_of[p[0]], new_of[p[1]]])
        .collect();
    let mut dvert = vec![0; nd];
    let mut dpos = vec![0; nd];
    for (v, r) in rot.iter().enumerate() {
        for (i, &d) in r.iter().enumerate() {
            dvert[d] = v;
            dpos[d] = i;
        }
    }
    let mut dedge = vec![0; nd];
    for (e, p) in edarts.iter().enumerate() {
        dedge[p[0]] = e;
        dedge[p[1]] = e;
    }
    // uniqueness of names
    {
        let mut names: HashMap<&str, ()> = HashMap::new();
        for n in &raw.vnames {
            if names.insert(n.as_str(), ()).is_some() {
                return Err(Error::Parse { line: 0, msg: format!("duplicate vertex name {n}") });
            }
        }
        let mut names: HashMap<&str, ()> = HashMap::new();
        for n in &raw.enames {
            if names.insert(n.as_str(), ()).is_some() {
                return Err(Error::Parse { line: 0, msg: format!("duplicate edge name {n}") });
            }
        }
    }
    let mut g = PlaneGraph {
        vnames: raw.vnames,
        rot,
        dnames,
        enames: raw.enames,
        edarts,
        directed: raw.directed,
        dvert,
        dedge,
        dpos,
        faces: Vec::new(),
        dface: vec![usize::MAX; nd],
        vface: vec![None; nv],
        vcomp: vec![0; nv],
        ncomp: 0,
        fcomp: Vec::new(),
        fregion: Vec::new(),
        nregions: 0,
        outer: None,
    };
    // faces
    for start in 0..nd {
        if g.dface[start] != usize::MAX {
            continue;
        }
        let f = g.faces.len();
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            g.dface[d] = f;
            walk.push(d);
            d = g.face_succ(d);
            if d == start {
                break;
            }
            if g.dface[d] != usize::MAX {
                return Err(Error::BadTwin("face tracing is not a permutation".into()));
            }
        }
        g.faces.push(Face { darts: walk, vertex: None });
    }
    for v in 0..nv {
        if g.rot[v].is_empty() {
            g.vface[v] = Some(g.faces.len());
            g.faces.push(Face { darts: Vec::new(), vertex: Some(v) });
        }
    }
    // components
    let mut uf = UnionFind::new(nv);
    for p in &g.edarts {
        uf.union(g.dvert[p[0]], g.dvert[p[1]]);
    }
    let mut comp_id = HashMap::new();
    for v in 0..nv {
        let r = uf.find(v);
        let next = comp_id.len();
        let c = *comp_id.entry(r).or_insert(next);
        g.vcomp[v] = c;
    }
    g.ncomp = comp_id.len();
    g.fcomp = g
        .faces
        .iter()
        .map(|f| match f.vertex {
            Some(v) => g.vcomp[v],
            None => g.vcomp[g.dvert[f.darts[0]]],
        })
        .collect();
    let mut euler = vec![0i64; g.ncomp];
    for v in 0..nv {
        euler[g.vcomp[v]] += 1;
    }
    for p in &g.edarts {
        euler[g.vcomp[g.dvert[p[0]]]] -= 1;
    }
    for &c in &g.fcomp {
        euler[c] += 1;
    }
    for (c, &x) in euler.iter().enumerate() {
        if x != 2 {
            let v = (0..nv).find(|&v| g.vcomp[v] == c).unwrap();
            return Err(Error::NotPlanar { vertex: g.vnames[v].clone(), euler: x });
        }
    }
    Ok(Traced { g, origin })
}

/// Assigns regions from a per-face grouping (any labels) and validates the
/// component/region tree.
pub(crate) fn finish_with_groups(
    traced: Traced,
    group_of_face: &[usize],
    outer_group: Option<usize>,
) -> Result<PlaneGraph> {
    let mut g = traced.g;
    let mut rid: HashMap<usize, usize> = HashMap::new();
    g.fregion = group_of_face
        .iter()
        .map(|&x| {
            let n = rid.len();
            *rid.entry(x).or_insert(n)
        })
        .collect();
    g.nregions = rid.len();
    g.outer = outer_group.and_then(|x| rid.get(&x).copied());
    // tree check on the bipartite component/region graph
    let mut uf = UnionFind::new(g.ncomp + g.nregions);
    for f in 0..g.faces.len() {
        if !uf.union(g.fcomp[f], g.ncomp + g.fregion[f]) {
            return Err(Error::BadNesting("component/region structure has a cycle".into()));
        }
    }
    if g.faces.len() + 1 != g.ncomp + g.nregions {
        if g.faces.is_empty() && g.ncomp == 0 && g.nregions == 0 {
            return Ok(g);
        }
        return Err(Error::BadNesting("component/region structure is not connected".into()));
    }
    Ok(g)
}

pub(crate) fn finish_with_nests(traced: Traced, nests: &[Nest], outer: Option<FaceId>) -> Result<PlaneGraph> {
    let g = &traced.g;
    let nf = g.faces.len();
    let mut uf = UnionFind::new(nf);
    let mut nested = vec![false; g.ncomp];
    for n in nests {
        if n.vertex >= g.vnames.len() || n.host_face >= nf {
            return Err(Error::BadNesting("nest references a missing vertex or face".into()));
        }
        let c = g.vcomp[n.vertex];
        let f = match n.face {
            Some(f) => {
                if f >= nf || g.fcomp[f] != c {
                    return Err(Error::BadNesting("nested face does not belong to the component".into()));
                }
                f
            }
            None => g.first_face_of_component(c),
        };
        if g.fcomp[n.host_face] == c {
            return Err(Error::BadNesting("component nested in itself".into()));
        }
        if nested[c] {
            return Err(Error::BadNesting("component nested twice".into()));
        }
        nested[c] = true;
        if !uf.union(f, n.host_face) {
            return Err(Error::BadNesting("nesting is cyclic".into()));
        }
    }
    // default placement for components without a nest line: the first
    // component stays outermost; others go into the outer face if marked,
    // else into the first face of the first component.
    if g.ncomp > 1 {
        let host = outer.unwrap_or_else(|| g.first_face_of_component(0));
        let host_comp = g.fcomp.get(host).copied().unwrap_or(0);
        let unnested: Vec<usize> = (0..g.ncomp).filter(|&c| !nested[c]).collect();
        // exactly one component stays as the root of the nesting forest
        let root = if unnested.contains(&host_comp) { host_comp } else { unnested[0] };
        for c in unnested {
            if c == root {
                continue;
            }
            let f = g.first_face_of_component(c);
            if !uf.union(f, host) {
                return Err(Error::BadNesting("nesting is cyclic".into()));
            }
        }
    }
    let groups: Vec<usize> = (0..nf).map(|f| uf.find(f)).collect();
    if let Some(o) = outer {
        if o >= nf {
            return Err(Error::BadNesting("outer face index out of range".into()));
        }
    }
    let og = outer.map(|o| groups[o]);
    finish_with_groups(traced, &groups, og)
}

impl PlaneGraph {
    pub fn empty() -> PlaneGraph {
        Builder::new(false).build().expect("empty graph")
    }

    pub fn num_vertices(&self) -> usize {
        self.vnames.len()
    }
    pub fn num_edges(&self) -> usize {
        self.enames.len()
    }
    pub fn num_darts(&self) -> usize {
        self.dnames.len()
    }
    pub fn is_directed(&self) -> bool {
        self.directed
    }
    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vnames[v]
    }
    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.enames[e]
    }
    pub fn dart_name(&self, d: DartId) -> &str {
        &self.dnames[d]
    }
    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vnames.iter().position(|n| n == name)
    }
    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.enames.iter().position(|n| n == name)
    }
    pub fn dart_by_name(&self, name: &str) -> Option<DartId> {
        self.dnames.iter().position(|n| n == name)
    }
    pub fn vertex_names(&self) -> &[String] {
        &self.vnames
    }
    pub fn rotation(&self, v: VertexId) -> &[DartId] {
        &self.rot[v]
    }
    pub fn degree(&self, v: VertexId) -> usize {
        self.rot[v].len()
    }
    pub fn dart_vertex(&self, d: DartId) -> VertexId {
        self.dvert[d]
    }
    pub fn dart_edge(&self, d: DartId) -> EdgeId {
        self.dedge[d]
    }
    pub fn dart_pos(&self, d: DartId) -> usize {
        self.dpos[d]
    }
    pub fn twin(&self, d: DartId) -> DartId {
        let p = self.edarts[self.dedge[d]];
        if p[0] == d {
            p[1]
        } else {
            p[0]
        }
    }
    pub fn edge_darts(&self, e: EdgeId) -> [DartId; 2] {
        self.edarts[e]
    }
    /// Endpoints in dart order (tail first when directed).
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let p = self.edarts[e];
        (self.dvert[p[0]], self.dvert[p[1]])
    }
    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.endpoints(e);
        a == b
    }
    /// True for the tail dart of a directed edge; false for heads and for
    /// every dart of an undirected graph.
    pub fn is_tail(&self, d: DartId) -> bool {
        self.directed && self.edarts[self.dedge[d]][0] == d
    }
    pub fn is_head(&self, d: DartId) -> bool {
        self.directed && self.edarts[self.dedge[d]][1] == d
    }
    pub fn next_ccw(&self, d: DartId) -> DartId {
        let r = &self.rot[self.dvert[d]];
        r[(self.dpos[d] + 1) % r.len()]
    }
    pub fn prev_ccw(&self, d: DartId) -> DartId {
        let r = &self.rot[self.dvert[d]];
        r[(self.dpos[d] + r.len() - 1) % r.len()]
    }
    pub fn face_succ(&self, d: DartId) -> DartId {
        self.prev_ccw(self.twin(d))
    }
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }
    pub fn dart_face(&self, d: DartId) -> FaceId {
        self.dface[d]
    }
    /// The empty face owned by an isolated vertex.
    pub fn isolated_face(&self, v: VertexId) -> Option<FaceId> {
        self.vface[v]
    }
    pub fn num_components(&self) -> usize {
        self.ncomp
    }
    pub fn component_of(&self, v: VertexId) -> usize {
        self.vcomp[v]
    }
    pub fn face_component(&self, f: FaceId) -> usize {
        self.fcomp[f]
    }
    pub fn face_region(&self, f: FaceId) -> RegionId {
        self.fregion[f]
    }
    pub fn num_regions(&self) -> usize {
        self.nregions
    }
    pub fn outer_region(&self) -> Option<RegionId> {
        self.outer
    }
    /// Lowest-index face lying in the outer region.
    pub fn outer_face(&self) -> Option<FaceId> {
        let o = self.outer?;
        (0..self.faces.len()).find(|&f| self.fregion[f] == o)
    }
    pub fn is_connected(&self) -> bool {
        self.ncomp <= 1
    }
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        match self.faces[f].vertex {
            Some(v) => vec![v],
            None => self.faces[f].darts.iter().map(|&d| self.dvert[d]).collect(),
        }
    }
    pub fn vertices_of_component(&self, c: usize) -> Vec<VertexId> {
        (0..self.num_vertices()).filter(|&v| self.vcomp[v] == c).collect()
    }
    pub(crate) fn first_face_of_component(&self, c: usize) -> FaceId {
        (0..self.faces.len()).find(|&f| self.fcomp[f] == c).unwrap_or(0)
    }
    /// Faces grouped by region (sphere faces of the whole drawing).
    pub fn regions(&self) -> Vec<Vec<FaceId>> {
        let mut out = vec![Vec::new(); self.nregions];
        for f in 0..self.faces.len() {
            out[self.fregion[f]].push(f);
        }
        out
    }
    /// Neighbors over edges, with multiplicity; loops list the vertex twice.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.rot[v].iter().map(|&d| self.dvert[self.twin(d)]).collect()
    }
    /// Copy without the outer-face marker.
    pub fn to_sphere(&self) -> PlaneGraph {
        let mut g = self.clone();
        g.outer = None;
        g
    }
    /// Copy with the region of face `f` marked outer.
    pub fn with_outer_face(&self, f: FaceId) -> PlaneGraph {
        let mut g = self.clone();
        g.outer = Some(g.fregion[f]);
        g
    }
    /// Mirror image: every rotation reversed.
    pub fn mirror(&self) -> PlaneGraph {
        let mut raw = self.to_raw();
        for r in raw.rot.iter_mut() {
            r.reverse();
        }
        let traced = trace(raw).expect("mirror of a valid graph is valid");
        // a face of the mirror traverses the twins of an original face
        let groups: Vec<usize> = traced
            .g
            .faces
            .iter()
            .map(|f| match f.vertex {
                Some(v) => self.fregion[self.vface[v].unwrap()],
                None => self.fregion[self.dface[self.twin(traced.origin[f.darts[0]])]],
            })
            .collect();
        finish_with_groups(traced, &groups, self.outer).expect("mirror keeps region tree")
    }
    /// Disjoint union with `other`, whose face `other_face` is placed in
    /// face `host_face` of `self`. Names must not clash.
    pub fn add_component(&self, other: &PlaneGraph, other_face: FaceId, host_face: FaceId) -> Result<PlaneGraph> {
        let mut raw = self.to_raw();
        let (nv, nd) = (raw.vnames.len(), raw.dnames.len());
        let o = other.to_raw();
        raw.vnames.extend(o.vnames);
        raw.rot.extend(o.rot.into_iter().map(|r| r.into_iter().map(|d| d + nd).collect::<Vec<_>>()));
        raw.dnames.extend(o.dnames);
        raw.enames.extend(o.enames);
        raw.edarts.extend(o.edarts.into_iter().map(|[a, b]| [a + nd, b + nd]));
        let traced = trace(raw)?;
        let host = self.fregion[host_face];
        let groups: Vec<usize> = traced
            .g
            .faces
            .iter()
            .map(|f| {
                let old = match f.vertex {
                    Some(v) if v < nv => return self.fregion[self.vface[v].unwrap()],
                    Some(v) => other.vface[v - nv].unwrap(),
                    None => {
                        let d = traced.origin[f.darts[0]];
                        if d < nd {
                            return self.fregion[self.dface[d]];
                        }
                        other.dface[d - nd]
                    }
                };
                if old == other_face {
                    host
                } else {
                    self.nregions + other.fregion[old]
                }
            })
            .collect();
        finish_with_groups(traced, &groups, self.outer)
    }
    pub(crate) fn to_raw(&self) -> Raw {
        Raw {
            vnames: self.vnames.clone(),
            rot: self.rot.clone(),
            dnames: self.dnames.clone(),
            enames: self.enames.clone(),
            edarts: self.edarts.clone(),
            directed: self.directed,
        }
    }
    /// Undirected copy.
    pub fn undirected(&self) -> PlaneGraph {
        let mut g = self.clone();
        g.directed = false;
        g
    }
    /// Copy with all names replaced by systematic ones (`v0`, `e0`, ...).
    pub fn renamed(&self) -> PlaneGraph {
        let mut g = self.clone();
        g.vnames = (0..g.vnames.len()).map(|i| format!("v{i}")).collect();
        g.enames = (0..g.enames.len()).map(|i| format!("e{i}")).collect();
        for e in 0..g.enames.len() {
            let [a, b] = g.edarts[e];
            g.dnames[a] = format!("e{e}.0");
            g.dnames[b] = format!("e{e}.1");
        }
        g
    }
    /// Copy with vertex `v` renamed; fails if the name is taken.
    pub fn with_vertex_name(&self, v: VertexId, name: &str) -> Result<PlaneGraph> {
        if self.vnames.iter().enumerate().any(|(u, n)| u != v && n == name) {
            return Err(Error::BadAddress(format!("duplicate vertex name {name}")));
        }
        let mut g = self.clone();
        g.vnames[v] = name.to_string();
        Ok(g)
    }
    /// Abstract edge list as (endpoint, endpoint) in edge order.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.num_edges()).map(|e| self.endpoints(e)).collect()
    }
    /// Induced subgraph on `keep`, as a sequence of embedded deletions.
    pub fn induced(&self, keep: &[bool]) -> Result<PlaneGraph> {
        let mut g = self.clone();
        let names: Vec<String> = (0..self.num_vertices())
            .filter(|&v| !keep[v])
            .map(|v| self.vnames[v].clone())
            .collect();
        for n in names {
            let v = g.vertex_by_name(&n).unwrap();
            g = g.apply(&EmbeddedOp::DeleteVertex(g.vnames[v].clone()))?;
        }
        Ok(g)
    }
}

/// Picks a name not in `taken`, starting from `base`.
pub(crate) fn fresh_name(base: &str, taken: &dyn Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let mut k = 1;
    loop {
        let cand = format!("{base}_{k}");
        if !taken(&cand) {
            return cand;
        }
        k += 1;
    }
}
