//! Canonical forms for plane graphs up to orientation-preserving
//! equivalence.
//!
//! Each component is labeled breadth-first from every seed dart, following
//! the rotation successor and then the twin; the smallest code wins. The
//! component/region tree is folded in recursively, so that nested drawings
//! compare correctly, and the outer-face marker is a flag on its region.

use super::{FaceId, PlaneGraph, VertexId};
use std::collections::HashMap;

const M_ROOT: u32 = u32::MAX;
const M_ISO: u32 = u32::MAX - 1;
const M_PARENT: u32 = u32::MAX - 2;
const M_FACE: u32 = u32::MAX - 3;
const M_REGION: u32 = u32::MAX - 4;
const M_OPEN: u32 = u32::MAX - 5;
const M_CLOSE: u32 = u32::MAX - 6;
const M_END: u32 = u32::MAX - 7;

#[derive(Clone, Debug, Default)]
pub struct CanonOptions {
    /// Quotient by reflection as well.
    pub allow_reflection: bool,
    /// Vertices that must map onto identically tagged vertices (by name).
    pub tagged: Vec<(String, u32)>,
}

struct Ctx<'a> {
    g: &'a PlaneGraph,
    tag: Vec<u32>,
    regions: Vec<Vec<FaceId>>,
    comp_darts: Vec<Vec<usize>>,
    memo: HashMap<(usize, Option<FaceId>), Vec<u32>>,
}

impl PlaneGraph {
    pub fn canonical_form(&self) -> Vec<u8> {
        self.canonical_form_with(&CanonOptions::default())
    }

    pub fn canonical_form_with(&self, opts: &CanonOptions) -> Vec<u8> {
        let mut code = canonical_code(self, &opts.tagged);
        if opts.allow_reflection {
            let m = canonical_code(&self.mirror(), &opts.tagged);
            if m < code {
                code = m;
            }
        }
        let mut out = Vec::with_capacity(code.len() * 4 + 1);
        out.push(u8::from(self.is_directed()));
        for x in code {
            out.extend_from_slice(&x.to_be_bytes());
        }
        out
    }

    pub fn equivalent(&self, other: &PlaneGraph) -> bool {
        self.num_vertices() == other.num_vertices()
            && self.num_edges() == other.num_edges()
            && self.canonical_form() == other.canonical_form()
    }
}

fn canonical_code(g: &PlaneGraph, tagged: &[(String, u32)]) -> Vec<u32> {
    if g.num_vertices() == 0 {
        return Vec::new();
    }
    let mut tag = vec![0u32; g.num_vertices()];
    for (name, t) in tagged {
        if let Some(v) = g.vertex_by_name(name) {
            tag[v] = *t;
        }
    }
    let mut comp_darts = vec![Vec::new(); g.num_components()];
    for d in 0..g.num_darts() {
        comp_darts[g.component_of(g.dart_vertex(d))].push(d);
    }
    let mut ctx = Ctx {
        g,
        tag,
        regions: g.regions(),
        comp_darts,
        memo: HashMap::new(),
    };
    let mut best: Option<Vec<u32>> = None;
    for c in 0..g.num_components() {
        let mut code = vec![M_ROOT];
        code.extend(ctx.enc_comp(c, None));
        if best.as_ref().map_or(true, |b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap()
}

impl<'a> Ctx<'a> {
    fn enc_region(&mut self, from: FaceId) -> Vec<u32> {
        let g = self.g;
        let r = g.face_region(from);
        let mut parts: Vec<Vec<u32>> = Vec::new();
        let slots = self.regions[r].clone();
        for h in slots {
            if h == from {
                continue;
            }
            let mut p = vec![M_OPEN];
            p.extend(self.enc_comp(g.face_component(h), Some(h)));
            p.push(M_CLOSE);
            parts.push(p);
        }
        parts.sort();
        let mut out = vec![M_REGION, u32::from(g.outer_region() == Some(r))];
        for p in parts {
            out.extend(p);
        }
        out.push(M_END);
        out
    }

    fn enc_comp(&mut self, c: usize, parent: Option<FaceId>) -> Vec<u32> {
        if let Some(x) = self.memo.get(&(c, parent)) {
            return x.clone();
        }
        let g = self.g;
        let faces: Vec<FaceId> = (0..g.faces().len()).filter(|&f| g.face_component(f) == c).collect();
        let mut child: HashMap<FaceId, Vec<u32>> = HashMap::new();
        for &f in &faces {
            if Some(f) != parent {
                let e = self.enc_region(f);
                child.insert(f, e);
            }
        }
        let darts = self.comp_darts[c].clone();
        let result = if darts.is_empty() {
            let f = faces[0];
            let v: VertexId = g.faces()[f].vertex.unwrap();
            let mut out = vec![M_ISO, self.tag[v]];
            if parent.is_none() {
                out.push(M_FACE);
                out.extend(child[&f].iter().copied());
            }
            out
        } else {
            let mut best: Option<Vec<u32>> = None;
            let n = g.num_darts();
            let mut label = vec![u32::MAX; n];
            let mut order: Vec<usize> = Vec::with_capacity(darts.len());
            for &seed in &darts {
                for &d in &order {
                    label[d] = u32::MAX;
                }
                order.clear();
                label[seed] = 0;
                order.push(seed);
                let mut i = 0;
                while i < order.len() {
                    let d = order[i];
                    for nb in [g.next_ccw(d), g.twin(d)] {
                        if label[nb] == u32::MAX {
                            label[nb] = order.len() as u32;
                            order.push(nb);
                        }
                    }
                    i += 1;
                }
                let mut code = Vec::with_capacity(order.len() * 3 + 8);
                for &d in &order {
                    code.push(label[g.next_ccw(d)]);
                    code.push(label[g.twin(d)]);
                    let dir = if g.is_tail(d) { 1 } else if g.is_head(d) { 2 } else { 0 };
                    code.push(dir + 4 * self.tag[g.dart_vertex(d)]);
                }
                if let Some(b) = &best {
                    if code[..] > b[..code.len().min(b.len())] {
                        continue;
                    }
                }
                // faces ordered by their smallest label
                let mut fmin: Vec<(u32, FaceId)> = faces.iter().map(|&f| (u32::MAX, f)).collect();
                for &d in &order {
                    let f = g.dart_face(d);
                    let k = faces.iter().position(|&x| x == f).unwrap();
                    fmin[k].0 = fmin[k].0.min(label[d]);
                }
                fmin.sort();
                if let Some(p) = parent {
                    code.push(M_PARENT);
                    code.push(fmin.iter().position(|&(_, f)| f == p).unwrap() as u32);
                }
                for &(_, f) in &fmin {
                    if Some(f) == parent {
                        continue;
                    }
                    code.push(M_FACE);
                    code.extend(child[&f].iter().copied());
                }
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
            best.unwrap()
        };
        self.memo.insert((c, parent), result.clone());
        result
    }
}
