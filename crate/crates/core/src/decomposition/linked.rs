use super::certify::{far_sides, linked_violation, Violation};
use super::exact::{carving_width_exact, ExactOptions};
use super::{CarvingTree, Cuts, Mask, TreeBuilder, TreeEdge};
use crate::plane_graph::PlaneGraph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WOrder {
    Less,
    Greater,
    /// Neither tree is strictly below the other.
    Equal,
}

/// Per-level key: for each width `k` from the top down, the number of edges
/// of width at least `k` and the number of components they form.
fn level_key(t: &CarvingTree, cuts: &Cuts, top: usize) -> Vec<(usize, usize)> {
    let w = t.edge_widths(cuts);
    (0..=top)
        .rev()
        .map(|k| {
            let heavy: Vec<TreeEdge> = w.iter().filter(|&&(_, x)| x >= k).map(|&(e, _)| e).collect();
            let mut uf = crate::unionfind::UnionFind::new(t.num_nodes());
            let mut nodes = std::collections::BTreeSet::new();
            for &(x, y) in &heavy {
                uf.union(x, y);
                nodes.insert(x);
                nodes.insert(y);
            }
            let comps: std::collections::BTreeSet<usize> = nodes.iter().map(|&x| uf.find(x)).collect();
            (heavy.len(), comps.len())
        })
        .collect()
}

pub(crate) fn compare(cuts: &Cuts, t1: &CarvingTree, t2: &CarvingTree) -> WOrder {
    let top = cuts.edges.len();
    let k1 = level_key(t1, cuts, top);
    let k2 = level_key(t2, cuts, top);
    for (a, b) in k1.iter().zip(&k2) {
        if a.0 != b.0 {
            return if a.0 < b.0 { WOrder::Less } else { WOrder::Greater };
        }
        if a.1 != b.1 {
            return if a.1 > b.1 { WOrder::Less } else { WOrder::Greater };
        }
    }
    WOrder::Equal
}

/// Compares two decompositions of `g` in the width order.
pub fn order_lt_w(g: &PlaneGraph, t1: &CarvingTree, t2: &CarvingTree) -> Result<WOrder> {
    let n = g.num_vertices();
    if t1.check_labels(n).is_err() || t2.check_labels(n).is_err() {
        return Err(Error::GraphMismatch);
    }
    Ok(compare(&Cuts::new(g)?, t1, t2))
}

/// `x` precedes `y` as membership vectors with absent before present.
fn lex_less(x: Mask, y: Mask) -> bool {
    let d = x ^ y;
    d != 0 && x >> d.trailing_zeros() & 1 == 0
}

const MAX_FREE_VERTICES: usize = 24;

/// The separating set used to rebuild the tree for a non-linked pair.
pub(crate) fn choose_x(cuts: &Cuts, t: &CarvingTree, a_side: Mask, b_side: Mask) -> Result<Mask> {
    let m = cuts.m_cut(a_side, b_side);
    let free = cuts.full() & !a_side & !b_side;
    if free.count_ones() as usize > MAX_FREE_VERTICES {
        return Err(Error::TooLarge(format!("{} free vertices in the cut search", free.count_ones())));
    }
    let displayed: Vec<Mask> = t.sides().into_iter().flat_map(|(_, s1, s2)| [s1, s2]).collect();
    let mut best: Option<(usize, Mask)> = None;
    let mut sub: Mask = 0;
    loop {
        let x = a_side | sub;
        if cuts.cut(x) == m {
            let splits = displayed.iter().filter(|&&y| y & x != 0 && y & !x != 0).count();
            let better = match best {
                None => true,
                Some((s, bx)) => splits < s || (splits == s && lex_less(x, bx)),
            };
            if better {
                best = Some((splits, x));
            }
        }
        if sub == free {
            break;
        }
        sub = sub.wrapping_sub(free) & free;
    }
    best.map(|b| b.1).ok_or_else(|| Error::Internal("no minimum cut found".into()))
}

/// One improvement step for a non-linked pair of tree edges. The result is
/// strictly smaller in the width order.
pub fn linked_improvement_step(g: &PlaneGraph, t: &CarvingTree, pair: (TreeEdge, TreeEdge)) -> Result<CarvingTree> {
    t.check_labels(g.num_vertices())?;
    let cuts = Cuts::new(g)?;
    step(&cuts, t, pair)
}

pub(crate) fn step(cuts: &Cuts, t: &CarvingTree, (a, b): (TreeEdge, TreeEdge)) -> Result<CarvingTree> {
    let a = super::norm(a);
    let b = super::norm(b);
    let edges = t.edges();
    if a == b || !edges.contains(&a) || !edges.contains(&b) {
        return Err(Error::PairIsLinked);
    }
    let path = t.edge_path(a, b);
    let widths: std::collections::HashMap<TreeEdge, usize> = t.edge_widths(cuts).into_iter().collect();
    let path_min = path.iter().map(|e| widths[e]).min().unwrap();
    let (sa, sb) = far_sides(t, a, b);
    if cuts.m_cut(sa, sb) == path_min {
        return Err(Error::PairIsLinked);
    }
    let x = choose_x(cuts, t, sa, sb)?;
    // near endpoints: the ones on the path between a and b
    let a_far_side = |e: TreeEdge, other: TreeEdge| {
        let p = t.edge_path(e, other);
        let next = p[1];
        if e.0 == next.0 || e.0 == next.1 {
            (e.0, e.1)
        } else {
            (e.1, e.0)
        }
    };
    let (a_near, a_far) = a_far_side(a, b);
    let (b_near, b_far) = a_far_side(b, a);
    let mut out = TreeBuilder::default();
    let keep_b = t.side_nodes(b_near, b_far);
    let keep_a = t.side_nodes(a_near, a_far);
    let copy = |nodes: &[usize], keep_label: &dyn Fn(usize) -> bool, out: &mut TreeBuilder| {
        let mut id = std::collections::HashMap::new();
        for &v in nodes {
            let l = t.label(v).filter(|&l| keep_label(l));
            id.insert(v, out.node(l));
        }
        for &v in nodes {
            for &w in t.neighbors(v) {
                if v < w && id.contains_key(&w) {
                    out.link(id[&v], id[&w]);
                }
            }
        }
        id
    };
    let in_x = |l: usize| x >> l & 1 == 1;
    let ib = copy(&keep_b, &in_x, &mut out);
    let ia = copy(&keep_a, &|l| !in_x(l), &mut out);
    out.link(ib[&b_near], ia[&a_near]);
    Ok(out.build().normalized())
}

/// Record of the moves made by the constructions.
#[derive(Clone, Debug, Default)]
pub struct RunLog {
    /// Every improvement step as (input, output).
    pub steps: Vec<(CarvingTree, CarvingTree)>,
    pub rebranches: usize,
    /// Times the bond construction fell back to exhaustive search.
    pub fallbacks: usize,
}

const MAX_STEPS: usize = 100_000;

pub(crate) fn linked_from(cuts: &Cuts, mut t: CarvingTree, log: &mut RunLog) -> Result<CarvingTree> {
    for _ in 0..MAX_STEPS {
        match linked_violation(cuts, &t) {
            None => return Ok(t),
            Some(Violation::Linked { a, b, .. }) => {
                let next = step(cuts, &t, (a, b))?;
                log.steps.push((t, next.clone()));
                t = next;
            }
            Some(_) => unreachable!("linked check reports linked violations"),
        }
    }
    Err(Error::Internal("improvement steps did not terminate".into()))
}

/// A linked carving-decomposition of optimal width.
pub fn make_linked(g: &PlaneGraph) -> Result<CarvingTree> {
    make_linked_with(g, &ExactOptions::default(), &mut RunLog::default())
}

pub fn make_linked_with(g: &PlaneGraph, opts: &ExactOptions, log: &mut RunLog) -> Result<CarvingTree> {
    let (_, t) = carving_width_exact(g, opts)?;
    linked_from(&Cuts::new(g)?, t, log)
}
