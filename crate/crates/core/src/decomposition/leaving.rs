use super::certify::{hub_raw, DiscCertificate};
use super::{norm, CarvingTree, Mask, TreeEdge};
use crate::plane_graph::{fresh_name, Builder, DartId, EdgeId, Nest, PlaneGraph, VertexId};
use crate::{Error, Result};

/// The part of a graph inside the disc of a tree edge. The disc boundary is
/// represented by a hub vertex; its rotation lists the stub edges in the
/// circular order in which the curve crosses them.
#[derive(Clone, Debug)]
pub struct LeavingGraph {
    pub graph: PlaneGraph,
    pub hub: VertexId,
}

impl LeavingGraph {
    /// Stub edges of `graph`, in the hub's counterclockwise order.
    pub fn stubs(&self) -> Vec<EdgeId> {
        self.graph.rotation(self.hub).iter().map(|&d| self.graph.dart_edge(d)).collect()
    }
}

/// Leaving graph of edge `e` of a rooted tree: the side away from the root.
pub fn leaving_graph(g: &PlaneGraph, t: &CarvingTree, certs: &[DiscCertificate], e: TreeEdge) -> Result<LeavingGraph> {
    let below = t.below(e)?;
    let idx = t.edge_index(e).ok_or_else(|| Error::LabelMismatch("unknown tree edge".into()))?;
    let cert = certs.iter().find(|c| norm(c.edge) == norm(e)).ok_or(Error::NoCertificate(idx))?;
    let inside: Mask = cert.inside.iter().fold(0, |m, &v| m | 1 << v);
    let hub_darts: Vec<DartId> = if inside == below {
        cert.boundary.clone()
    } else {
        cert.boundary.iter().rev().map(|&d| g.twin(d)).collect()
    };
    let names = g.vertex_names();
    let hub_name = fresh_name("hub", &|s: &str| names.iter().any(|n| n == s));
    if hub_darts.is_empty() {
        return empty_boundary(g, below, cert, &hub_name);
    }
    let raw = hub_raw(g, below, &hub_darts, &hub_name);
    let graph = Builder::from_raw(raw).build()?;
    let hub = graph.vertex_by_name(&hub_name).unwrap();
    Ok(LeavingGraph { graph, hub })
}

/// `G[below]` with an isolated hub placed in the region holding the curve.
fn empty_boundary(g: &PlaneGraph, below: Mask, cert: &DiscCertificate, hub_name: &str) -> Result<LeavingGraph> {
    let keep: Vec<bool> = (0..g.num_vertices()).map(|v| below >> v & 1 == 1).collect();
    let sub = g.induced(&keep)?;
    // a face of G[below] in the curve's region: one of a component on the
    // inside that borders that region
    let region = cert.faces.first().map(|&f| g.face_region(f));
    let host = region.and_then(|r| {
        (0..g.faces().len()).find(|&f| {
            g.face_region(f) == r && below >> g.face_vertices(f)[0] & 1 == 1
        })
    });
    let host_in_sub = host.and_then(|f| match g.faces()[f].vertex {
        Some(v) => sub.vertex_by_name(g.vertex_name(v)).and_then(|w| sub.isolated_face(w)),
        None => {
            let name = g.dart_name(g.faces()[f].darts[0]);
            (0..sub.num_darts()).find(|&d| sub.dart_name(d) == name).map(|d| sub.dart_face(d))
        }
    });
    let mut raw = sub.to_raw();
    raw.vnames.push(hub_name.to_string());
    raw.rot.push(Vec::new());
    let mut b = Builder::from_raw(raw);
    // keep the nesting of the inside part, and put the hub next to the curve
    let lines = sub.nest_lines();
    let hub_index = sub.num_vertices();
    for (c, f, _, host_face) in lines {
        let vertex = sub.vertices_of_component(c)[0];
        b.nest(Nest { vertex, face: Some(f), host_face });
    }
    if let Some(o) = sub.outer_face() {
        b.outer(o);
    }
    if let Some(h) = host_in_sub {
        // isolated-vertex faces come after all traced faces; the hub's own
        // face is appended last, so the indices of `sub` stay valid
        b.nest(Nest { vertex: hub_index, face: None, host_face: h });
    }
    let graph = b.build()?;
    let hub = graph.vertex_by_name(hub_name).unwrap();
    Ok(LeavingGraph { graph, hub })
}

/// Rooted copy of `t` and the leaving graph of each of its edges.
pub fn leaving_graphs(
    g: &PlaneGraph,
    t: &CarvingTree,
    certs: &[DiscCertificate],
) -> Result<Vec<(TreeEdge, LeavingGraph)>> {
    t.edges().into_iter().map(|e| Ok((e, leaving_graph(g, t, certs, e)?))).collect()
}
