use super::bond::make_bond_linked_with;
use super::certify::{certify_disc, DiscCertificate, NestTree};
use super::exact::ExactOptions;
use super::linked::RunLog;
use super::{CarvingTree, NodeId, TreeBuilder};
use crate::plane_graph::{connectivity_profile, PlaneGraph, VertexId};
use crate::{Error, Result};

fn edge_tree(u: VertexId, w: VertexId) -> CarvingTree {
    let mut b = TreeBuilder::default();
    let x = b.node(Some(u));
    let y = b.node(Some(w));
    b.link(x, y);
    b.build()
}

fn single_leaf(v: VertexId) -> CarvingTree {
    let mut b = TreeBuilder::default();
    b.node(Some(v));
    b.build()
}

/// Disc decomposition of a tree with self-loops: vertices are attached one
/// at a time next to the leaf of their parent.
fn tree_piece(g: &PlaneGraph) -> CarvingTree {
    let n = g.num_vertices();
    let mut order = vec![(0, 0)];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i].0;
        for &d in g.rotation(u) {
            let w = g.dart_vertex(g.twin(d));
            if !seen[w] {
                seen[w] = true;
                order.push((w, u));
            }
        }
        i += 1;
    }
    let mut b = TreeBuilder::default();
    let mut leaf = vec![usize::MAX; n];
    leaf[0] = b.node(Some(0));
    leaf[order[1].0] = b.node(Some(order[1].0));
    b.link(leaf[0], leaf[order[1].0]);
    for &(x, parent) in &order[2..] {
        let l = leaf[parent];
        let up = b.nbr[l][0];
        let m = b.subdivide(up, l);
        leaf[x] = b.node(Some(x));
        b.link(m, leaf[x]);
    }
    b.build()
}

/// Relabels a tree of `sub` with the ids of the same vertices in `g`.
fn lift(g: &PlaneGraph, sub: &PlaneGraph, mut t: CarvingTree) -> CarvingTree {
    for l in t.label.iter_mut().flatten() {
        *l = g.vertex_by_name(sub.vertex_name(*l)).unwrap();
    }
    t
}

/// Disc decomposition of a connected graph. Graphs with a cut vertex `v`
/// are split into the branches at `v`; a branch is merged in only once its
/// edges at `v` are consecutive among the branches still to be merged, so a
/// curve through `v` separates it from the rest.
fn connected_tree(g: &PlaneGraph, opts: &ExactOptions, log: &mut RunLog) -> Result<CarvingTree> {
    let n = g.num_vertices();
    match n {
        1 => return Ok(single_leaf(0)),
        2 => return Ok(edge_tree(0, 1)),
        _ => {}
    }
    let plain = (0..g.num_edges()).filter(|&e| !g.is_loop(e)).count();
    if plain == n - 1 {
        return Ok(tree_piece(g));
    }
    let prof = connectivity_profile(g);
    let Some(&v) = prof.cut_vertices.first() else {
        return make_bond_linked_with(g, opts, log);
    };
    let mut branch = vec![usize::MAX; n];
    let mut nb = 0;
    for s in 0..n {
        if s == v || branch[s] != usize::MAX {
            continue;
        }
        branch[s] = nb;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &d in g.rotation(u) {
                let w = g.dart_vertex(g.twin(d));
                if w != v && branch[w] == usize::MAX {
                    branch[w] = nb;
                    stack.push(w);
                }
            }
        }
        nb += 1;
    }
    let around: Vec<usize> = g
        .rotation(v)
        .iter()
        .map(|&d| g.dart_vertex(g.twin(d)))
        .filter(|&w| w != v)
        .map(|w| branch[w])
        .collect();
    let mut left: Vec<usize> = (0..nb).collect();
    let mut peel = Vec::new();
    while left.len() > 1 {
        let seq: Vec<usize> = around.iter().copied().filter(|b| left.contains(b)).collect();
        let k = seq.len();
        let i = left
            .iter()
            .position(|&b| (0..k).filter(|&j| seq[j] == b && seq[(j + k - 1) % k] != b).count() <= 1)
            .ok_or_else(|| Error::Internal("branches at a cut vertex cross".into()))?;
        peel.push(left.remove(i));
    }
    peel.push(left[0]);
    let mut trees = Vec::with_capacity(nb);
    for &b in &peel {
        let keep: Vec<bool> = (0..n).map(|u| u == v || branch[u] == b).collect();
        let sub = g.induced(&keep)?;
        let t = connected_tree(&sub, opts, log)?;
        trees.push(lift(g, &sub, t));
    }
    let mut acc = trees.pop().unwrap();
    while let Some(t) = trees.pop() {
        acc = merge_at(&acc, &t, v);
    }
    Ok(acc)
}

/// Merges two trees at their leaves for `v`: the leaves become one inner
/// node carrying a fresh leaf for `v`.
fn merge_at(t1: &CarvingTree, t2: &CarvingTree, v: VertexId) -> CarvingTree {
    let mut b = TreeBuilder::default();
    let m1 = b.absorb(t1);
    let m2 = b.absorb(t2);
    let l1 = m1[t1.leaf_of(v).unwrap()];
    let l2 = m2[t2.leaf_of(v).unwrap()];
    let p2 = b.nbr[l2][0];
    // l1 becomes the inner node; l2 is dropped
    b.label[l1] = None;
    b.nbr[l2].clear();
    b.label[l2] = None;
    for z in b.nbr[p2].iter_mut() {
        if *z == l2 {
            *z = l1;
        }
    }
    b.nbr[l1].push(p2);
    let fresh = b.node(Some(v));
    b.link(l1, fresh);
    compact(b)
}

/// Drops isolated placeholder nodes left behind by merges.
fn compact(b: TreeBuilder) -> CarvingTree {
    let keep: Vec<bool> = (0..b.nbr.len())
        .map(|x| !b.nbr[x].is_empty() || b.label[x].is_some() || b.nbr.len() == 1)
        .collect();
    let mut id = vec![usize::MAX; b.nbr.len()];
    let mut k = 0;
    for x in 0..b.nbr.len() {
        if keep[x] {
            id[x] = k;
            k += 1;
        }
    }
    let mut out = TreeBuilder::default();
    for x in 0..b.nbr.len() {
        if keep[x] {
            out.nbr.push(b.nbr[x].iter().map(|&y| id[y]).collect());
            out.label.push(b.label[x]);
        }
    }
    out.build()
}

/// Joins the trees of two components by a width-0 edge between the leaf
/// edges of `v1` and `v2`.
fn join(t1: &CarvingTree, v1: VertexId, t2: &CarvingTree, v2: VertexId) -> CarvingTree {
    let mut b = TreeBuilder::default();
    let m1 = b.absorb(t1);
    let m2 = b.absorb(t2);
    let attach = |b: &mut TreeBuilder, t: &CarvingTree, m: &[NodeId], v: VertexId| {
        let l = m[t.leaf_of(v).unwrap()];
        match b.nbr[l].first().copied() {
            Some(p) => b.subdivide(p, l),
            None => l,
        }
    };
    let x = attach(&mut b, t1, &m1, v1);
    let y = attach(&mut b, t2, &m2, v2);
    b.link(x, y);
    b.build()
}

fn component_tree(g: &PlaneGraph, comp: &[VertexId], opts: &ExactOptions, log: &mut RunLog) -> Result<CarvingTree> {
    if comp.len() == 1 {
        return Ok(single_leaf(comp[0]));
    }
    let keep: Vec<bool> = (0..g.num_vertices()).map(|v| comp.contains(&v)).collect();
    let sub = g.induced(&keep)?;
    let t = connected_tree(&sub, opts, log)?;
    Ok(lift(g, &sub, t))
}

/// A disc carving-decomposition of optimal width with its certificates.
pub fn make_disc(g: &PlaneGraph) -> Result<(CarvingTree, Vec<DiscCertificate>)> {
    make_disc_with(g, &ExactOptions::default(), &mut RunLog::default())
}

pub fn make_disc_with(g: &PlaneGraph, opts: &ExactOptions, log: &mut RunLog) -> Result<(CarvingTree, Vec<DiscCertificate>)> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::BadSize("graph has no vertices".into()));
    }
    if n > 64 {
        return Err(Error::TooLarge(format!("{n} vertices (at most 64 supported)")));
    }
    let nc = g.num_components();
    let mut trees: Vec<Option<CarvingTree>> = Vec::with_capacity(nc);
    for c in 0..nc {
        trees.push(Some(component_tree(g, &g.vertices_of_component(c), opts, log)?));
    }
    // components around a common region are joined by width-0 edges
    let nt = NestTree::new(g);
    let mut owner: Vec<usize> = (0..nc).collect();
    for r in 0..g.num_regions() {
        let around = &nt.adj[nc + r];
        let Some(&(anchor, fa)) = around.first() else { continue };
        let va = g.face_vertices(fa)[0];
        for &(c, fc) in &around[1..] {
            let vc = g.face_vertices(fc)[0];
            let (oa, oc) = (find(&owner, anchor), find(&owner, c));
            let ta = trees[oa].take().unwrap();
            let tc = trees[oc].take().unwrap();
            trees[oa] = Some(join(&ta, va, &tc, vc));
            owner[oc] = oa;
        }
    }
    let t = trees[find(&owner, 0)].take().unwrap();
    t.check_labels(n)?;
    let certs = certify_disc(g, &t)?;
    Ok((t, certs))
}

fn find(owner: &[usize], mut c: usize) -> usize {
    while owner[c] != c {
        c = owner[c];
    }
    c
}
