use super::certify::{bond_violation, linked_violation};
use super::exact::{carving_width_exact, ExactOptions};
use super::linked::{compare, linked_from, RunLog, WOrder};
use super::{CarvingTree, Cuts, NodeId, TreeBuilder, TreeEdge};
use crate::plane_graph::{connectivity_profile, PlaneGraph};
use crate::{Error, Result};

fn mu_at(cuts: &Cuts, t: &CarvingTree, v: NodeId) -> Result<usize> {
    let ns = t.neighbors(v);
    if ns.len() != 3 {
        return Err(Error::LeafEndpoint);
    }
    let parts: Vec<_> = ns.iter().map(|&x| t.side(x, v)).collect();
    let mut value = 0;
    let mut empty = 0;
    for i in 0..3 {
        let (y, z) = (parts[(i + 1) % 3], parts[(i + 2) % 3]);
        if cuts.cut_between(y, z) == 0 {
            empty += 1;
            value = parts[i].count_ones() as usize - 1;
        }
    }
    if empty >= 2 {
        return Err(Error::DisconnectedAssumptionViolated);
    }
    Ok(value)
}

/// Potential of an inner node: `|X| - 1` when the other two parts have no
/// edge between them, else 0.
pub fn mu_vertex(g: &PlaneGraph, t: &CarvingTree, v: NodeId) -> Result<usize> {
    t.check_labels(g.num_vertices())?;
    mu_at(&Cuts::new(g)?, t, v)
}

/// Sum of the potential over inner nodes.
pub fn mu(g: &PlaneGraph, t: &CarvingTree) -> Result<usize> {
    t.check_labels(g.num_vertices())?;
    mu_total(&Cuts::new(g)?, t)
}

fn mu_total(cuts: &Cuts, t: &CarvingTree) -> Result<usize> {
    (0..t.num_nodes())
        .filter(|&v| t.neighbors(v).len() == 3)
        .map(|v| mu_at(cuts, t, v))
        .sum()
}

/// Regroups the four subtrees around the inner edge `s = (u, v)`: the
/// subtree at `pairing.0` (a neighbor of `u`) and the one at `pairing.1` (a
/// neighbor of `v`) end up on one side of the new edge, the other two on
/// the other side.
pub fn rebranch(t: &CarvingTree, s: TreeEdge, pairing: (NodeId, NodeId)) -> Result<CarvingTree> {
    let (u, v) = s;
    if u >= t.num_nodes() || v >= t.num_nodes() || !t.neighbors(u).contains(&v) {
        return Err(Error::LabelMismatch("not a tree edge".into()));
    }
    let (x, y) = if t.neighbors(u).contains(&pairing.0) && t.neighbors(v).contains(&pairing.1) {
        pairing
    } else {
        (pairing.1, pairing.0)
    };
    if t.neighbors(u).len() != 3 || t.neighbors(v).len() != 3 {
        return Err(Error::LeafEndpoint);
    }
    if x == v || y == u || !t.neighbors(u).contains(&x) || !t.neighbors(v).contains(&y) {
        return Err(Error::LabelMismatch("pairing must name one subtree at each end".into()));
    }
    let x2 = *t.neighbors(u).iter().find(|&&z| z != v && z != x).unwrap();
    let mut out = t.clone();
    // u keeps x and takes y; v keeps its other subtree and takes x2
    for z in out.nbr[u].iter_mut() {
        if *z == x2 {
            *z = y;
        }
    }
    for z in out.nbr[v].iter_mut() {
        if *z == y {
            *z = x2;
        }
    }
    for z in out.nbr[y].iter_mut() {
        if *z == v {
            *z = u;
        }
    }
    for z in out.nbr[x2].iter_mut() {
        if *z == u {
            *z = v;
        }
    }
    Ok(out)
}

/// A bond-linked carving-decomposition of optimal width for a
/// 2-vertex-connected graph.
pub fn make_bond_linked(g: &PlaneGraph) -> Result<CarvingTree> {
    make_bond_linked_with(g, &ExactOptions::default(), &mut RunLog::default())
}

pub fn make_bond_linked_with(g: &PlaneGraph, opts: &ExactOptions, log: &mut RunLog) -> Result<CarvingTree> {
    let prof = connectivity_profile(g);
    if !g.is_connected() || !prof.cut_vertices.is_empty() {
        return Err(Error::Not2VC);
    }
    let cuts = Cuts::new(g)?;
    let (k, t0) = carving_width_exact(g, opts)?;
    let t = linked_from(&cuts, t0, log)?;
    let t = descend(&cuts, t)?;
    match bond_loop(&cuts, t, k, log)? {
        Some(t) => Ok(t),
        None => {
            log.fallbacks += 1;
            exhaustive_bond_linked(&cuts, k)
        }
    }
}

/// Alternative pairings at every inner edge, in a fixed order.
fn moves(t: &CarvingTree) -> Vec<(TreeEdge, (NodeId, NodeId))> {
    let mut out = Vec::new();
    for (u, v) in t.edges() {
        if t.neighbors(u).len() != 3 || t.neighbors(v).len() != 3 {
            continue;
        }
        let x = *t.neighbors(u).iter().filter(|&&z| z != v).min().unwrap();
        for &y in t.neighbors(v).iter().filter(|&&z| z != u) {
            out.push(((u, v), (x, y)));
        }
    }
    out
}

/// Local descent in the width order, then in the potential, among linked
/// trees reachable by single rebranchings.
fn descend(cuts: &Cuts, mut t: CarvingTree) -> Result<CarvingTree> {
    let mut m = mu_total(cuts, &t)?;
    'outer: loop {
        for (s, p) in moves(&t) {
            let c = rebranch(&t, s, p)?;
            let ord = compare(cuts, &c, &t);
            if ord == WOrder::Greater {
                continue;
            }
            let cm = mu_total(cuts, &c)?;
            if ord == WOrder::Equal && cm >= m {
                continue;
            }
            if linked_violation(cuts, &c).is_some() {
                continue;
            }
            t = c;
            m = cm;
            continue 'outer;
        }
        return Ok(t);
    }
}

/// Rebranches at inner nodes of minimal nonzero potential until the tree is
/// bond. Returns `None` when a step breaks width, linkedness or descent.
fn bond_loop(cuts: &Cuts, mut t: CarvingTree, k: usize, log: &mut RunLog) -> Result<Option<CarvingTree>> {
    let mut m = mu_total(cuts, &t)?;
    while m > 0 {
        let mut best: Option<(usize, NodeId)> = None;
        for u in 0..t.num_nodes() {
            if t.neighbors(u).len() != 3 {
                continue;
            }
            let val = mu_at(cuts, &t, u)?;
            if val > 0 && best.map_or(true, |(b, _)| val < b) {
                best = Some((val, u));
            }
        }
        let (_, u) = best.expect("positive potential has a witness");
        let ns = t.neighbors(u).to_vec();
        let parts: Vec<_> = ns.iter().map(|&x| t.side(x, u)).collect();
        // the part across e is the one whose two partners share no edge
        let i = (0..3)
            .find(|&i| cuts.cut_between(parts[(i + 1) % 3], parts[(i + 2) % 3]) == 0)
            .unwrap();
        let v = ns[i];
        let (a1n, a2n) = (ns[(i + 1) % 3], ns[(i + 2) % 3]);
        let (a1, a2) = (parts[(i + 1) % 3], parts[(i + 2) % 3]);
        if t.neighbors(v).len() != 3 {
            return Ok(None);
        }
        let vs: Vec<NodeId> = t.neighbors(v).iter().copied().filter(|&z| z != u).collect();
        let (mut b1n, mut b2n) = (vs[0], vs[1]);
        let (mut b1, mut b2) = (t.side(b1n, v), t.side(b2n, v));
        if cuts.cut_between(a1, b1) == 0 || cuts.cut_between(a2, b2) == 0 {
            std::mem::swap(&mut b1n, &mut b2n);
            std::mem::swap(&mut b1, &mut b2);
        }
        if cuts.cut_between(a1, b2) != 0 && cuts.cut_between(a2, b1) != 0 && cuts.cut(a1 | b2) < cuts.cut(a1 | b1) {
            std::mem::swap(&mut b1n, &mut b2n);
            std::mem::swap(&mut b1, &mut b2);
        }
        if cuts.cut_between(a1, b1) == 0 || cuts.cut_between(a2, b2) == 0 {
            return Ok(None);
        }
        let _ = a2n;
        let ws = cuts.cut(a1 | a2);
        let next = rebranch(&t, (u, v), (a1n, b1n))?;
        let ws2 = cuts.cut(a1 | b1);
        log.rebranches += 1;
        let nm = mu_total(cuts, &next)?;
        if ws2 > k || ws2 <= ws || nm >= m || linked_violation(cuts, &next).is_some() {
            return Ok(None);
        }
        t = next;
        m = nm;
    }
    if bond_violation(cuts, &t).is_some() {
        return Ok(None);
    }
    Ok(Some(t))
}

/// Largest graph for which all trees are enumerated.
const MAX_EXHAUSTIVE: usize = 9;

/// All carving trees with leaves `0..n`, by inserting leaf `i` into every
/// edge of each tree on `0..i`.
pub(crate) fn all_trees(n: usize, visit: &mut dyn FnMut(&CarvingTree) -> bool) {
    fn rec(t: &CarvingTree, next: usize, n: usize, visit: &mut dyn FnMut(&CarvingTree) -> bool) -> bool {
        if next == n {
            return visit(t);
        }
        for (x, y) in t.edges() {
            let mut b = TreeBuilder { nbr: t.nbr.clone(), label: t.label.clone() };
            let m = b.subdivide(x, y);
            let leaf = b.node(Some(next));
            b.link(m, leaf);
            if !rec(&b.build(), next + 1, n, visit) {
                return false;
            }
        }
        true
    }
    let mut b = TreeBuilder::default();
    let first = b.node(Some(0));
    if n == 1 {
        visit(&b.build());
        return;
    }
    let second = b.node(Some(1));
    b.link(first, second);
    rec(&b.build(), 2, n, visit);
}

fn exhaustive_bond_linked(cuts: &Cuts, k: usize) -> Result<CarvingTree> {
    if cuts.n > MAX_EXHAUSTIVE {
        return Err(Error::TooLarge(format!("exhaustive tree search on {} vertices", cuts.n)));
    }
    let mut found = None;
    all_trees(cuts.n, &mut |t| {
        let w = t.edge_widths(cuts).iter().map(|x| x.1).max().unwrap_or(0);
        if w == k && bond_violation(cuts, t).is_none() && linked_violation(cuts, t).is_none() {
            found = Some(t.clone());
            return false;
        }
        true
    });
    found.ok_or_else(|| Error::Internal("no bond-linked tree of optimal width".into()))
}
