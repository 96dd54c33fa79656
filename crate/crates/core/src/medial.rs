//! Medial graphs and medial digraphs.
//!
//! The medial vertex of edge `e` sits at the middle of `e`. Every corner
//! `(x, next_ccw(x))` of the source graph becomes one medial edge, oriented
//! so that the face around each source vertex is traversed clockwise (the
//! source vertex on the right). With that orientation a bilift of kind
//! `Delete` at `v_e` gives the medial digraph of `G - e`, and `Contract`
//! that of `G / e`.

use crate::embedded_relations::{embedded_immersion_with, Engine, SearchOptions};
use crate::plane_graph::{BiliftKind, Builder, EdgeId, FaceId, PlaneGraph, VertexId};
use crate::{Error, Result};
use std::fmt::Write;

#[derive(Clone, Debug)]
pub struct MedialDigraph {
    /// Directed, 4-regular, with in and out darts alternating.
    pub graph: PlaneGraph,
    /// Source edge of each medial vertex.
    pub source_edge_of: Vec<EdgeId>,
    /// Per face of `graph`: whether it contains a vertex of the source.
    pub vertexful: Vec<bool>,
}

impl MedialDigraph {
    /// PLG text with `# source-edge` lines recording the correspondence.
    pub fn to_plg(&self, source: &PlaneGraph) -> String {
        let mut s = self.graph.to_plg();
        for (v, &e) in self.source_edge_of.iter().enumerate() {
            let _ = writeln!(s, "# source-edge {} {}", self.graph.vertex_name(v), source.edge_name(e));
        }
        s
    }

    /// Whether the shading is a proper 2-coloring with vertexful faces
    /// traversed against the edge directions.
    pub fn shading_ok(&self) -> bool {
        let g = &self.graph;
        (0..g.num_darts()).all(|d| {
            let f = g.dart_face(d);
            self.vertexful[f] != self.vertexful[g.dart_face(g.twin(d))] && self.vertexful[f] == g.is_head(d)
        })
    }
}

fn check_source(g: &PlaneGraph) -> Result<()> {
    if g.num_edges() == 0 {
        return Err(Error::Edgeless);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

pub fn medial_digraph(g: &PlaneGraph) -> Result<MedialDigraph> {
    check_source(g)?;
    let mut b = Builder::new(true);
    for e in 0..g.num_edges() {
        b.add_vertex(g.edge_name(e));
    }
    // corner(x) runs from v_{edge(next x)} (tail dart `second[next x]`) to
    // v_{edge(x)} (head dart `first[x]`)
    let nd = g.num_darts();
    let mut first = vec![0; nd];
    let mut second = vec![0; nd];
    for x in 0..nd {
        let (t, h) = b.add_edge(format!("c.{}", g.dart_name(x)));
        first[x] = h;
        second[g.next_ccw(x)] = t;
    }
    for e in 0..g.num_edges() {
        let [a, c] = g.edge_darts(e);
        b.set_rotation(e, vec![second[c], first[a], second[a], first[c]]);
    }
    let graph = b.build()?;
    // the head end of corner(x) sits at v_{edge(x)}; the source vertex of x
    // lies on its left
    let mut vertexful = vec![false; graph.faces().len()];
    for x in 0..nd {
        let name = format!("c.{}", g.dart_name(x));
        let e = graph.edge_by_name(&name).ok_or_else(|| Error::Internal("medial edge lost".into()))?;
        let h = graph.edge_darts(e)[1];
        vertexful[graph.dart_face(h)] = true;
    }
    Ok(MedialDigraph { graph, source_edge_of: (0..g.num_edges()).collect(), vertexful })
}

/// Undirected medial graph: one vertex per edge, one edge per corner.
pub fn medial(g: &PlaneGraph) -> Result<PlaneGraph> {
    Ok(medial_digraph(g)?.graph.undirected())
}

/// Two directed lifts at the medial vertex `v`, following the corners of
/// the source edge's endpoints (`Delete`) or of its faces (`Contract`).
pub fn bilift(m: &MedialDigraph, v: VertexId, kind: BiliftKind) -> Result<MedialDigraph> {
    let g = &m.graph;
    if v >= g.num_vertices() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    if kind == BiliftKind::Contract && source_is_loop(m, v) {
        return Err(Error::SelfLoopContractImage(g.vertex_name(v).to_string()));
    }
    let graph = g.bilift(v, kind)?;
    let source_edge_of = (0..graph.num_vertices())
        .map(|u| m.source_edge_of[g.vertex_by_name(graph.vertex_name(u)).unwrap()])
        .collect();
    let vertexful = shade(&graph);
    Ok(MedialDigraph { graph, source_edge_of, vertexful })
}

/// A medial vertex comes from a self-loop exactly when its two vertexful
/// corners lie on the same face.
fn source_is_loop(m: &MedialDigraph, v: VertexId) -> bool {
    let g = &m.graph;
    let faces: Vec<FaceId> = g
        .rotation(v)
        .iter()
        .filter(|&&d| g.is_head(d))
        .map(|&d| g.dart_face(d))
        .collect();
    faces.len() == 2 && faces[0] == faces[1]
}

fn shade(g: &PlaneGraph) -> Vec<bool> {
    let mut out = vec![false; g.faces().len()];
    for d in 0..g.num_darts() {
        if g.is_head(d) {
            out[g.dart_face(d)] = true;
        }
    }
    out
}

/// Embedded minor test through the medial digraphs: `h` is an embedded
/// minor of `g` exactly when DM(h) is an embedded directed immersion of
/// DM(g). The dart cap applies to the source graphs.
pub fn minor_via_medial(h: &PlaneGraph, g: &PlaneGraph) -> Result<bool> {
    minor_via_medial_with(h, g, Engine::Ordered, &SearchOptions::default())
}

pub fn minor_via_medial_with(h: &PlaneGraph, g: &PlaneGraph, engine: Engine, opts: &SearchOptions) -> Result<bool> {
    check_source(h)?;
    check_source(g)?;
    let darts = h.num_darts() + g.num_darts();
    if darts > opts.max_darts {
        return Err(Error::TooLarge(format!("{darts} darts (cap {})", opts.max_darts)));
    }
    let (mh, mg) = (medial_digraph(h)?, medial_digraph(g)?);
    let inner = SearchOptions { max_darts: usize::MAX, ..opts.clone() };
    Ok(embedded_immersion_with(&mh.graph, &mg.graph, true, engine, &inner)?.is_some())
}
