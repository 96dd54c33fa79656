//! Exact carving-width and branch-width by dynamic programming over subsets.
//!
//! `g(S)` is the best width of a subtree whose leaves are exactly `S`,
//! counting the edge above it. A tree for the whole graph is a leaf for a
//! fixed element joined to the subtree for everything else.

use super::{CarvingTree, Mask, TreeBuilder};
use crate::plane_graph::PlaneGraph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { max_vertices: 12, max_edges: 12 }
    }
}

struct Table {
    best: Vec<usize>,
    split: Vec<Mask>,
}

/// Solves the recursion for ground set `0..n` minus element 0, with
/// `weight(S)` the width of the edge displaying `S`.
fn solve(n: usize, weight: &[usize]) -> Table {
    let size = 1usize << n;
    let mut best = vec![usize::MAX; size];
    let mut split = vec![0; size];
    for s in (2..size).step_by(2) {
        let s = s as Mask;
        let low = s & s.wrapping_neg();
        if s == low {
            best[s as usize] = weight[s as usize];
            continue;
        }
        let rest = s ^ low;
        // A always contains the lowest element; enumerate the rest of A
        let mut sub = 0;
        let mut val = usize::MAX;
        let mut arg = 0;
        loop {
            let a = sub | low;
            if a != s {
                let w = best[a as usize].max(best[(s ^ a) as usize]);
                if w < val {
                    val = w;
                    arg = a;
                }
            }
            if sub == rest {
                break;
            }
            sub = (sub.wrapping_sub(rest)) & rest;
        }
        best[s as usize] = val.max(weight[s as usize]);
        split[s as usize] = arg;
    }
    Table { best, split }
}

fn subtree(t: &Table, s: Mask, b: &mut TreeBuilder, leaf: &dyn Fn(usize) -> Option<usize>) -> usize {
    if s.count_ones() == 1 {
        return b.node(leaf(s.trailing_zeros() as usize));
    }
    let a = t.split[s as usize];
    let x = b.node(None);
    let l = subtree(t, a, b, leaf);
    let r = subtree(t, s ^ a, b, leaf);
    b.link(x, l);
    b.link(x, r);
    x
}

/// Exact carving-width with an optimal tree.
pub fn carving_width_exact(g: &PlaneGraph, opts: &ExactOptions) -> Result<(usize, CarvingTree)> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::BadSize("graph has no vertices".into()));
    }
    if n > opts.max_vertices {
        return Err(Error::TooLarge(format!("{n} vertices, cap {}", opts.max_vertices)));
    }
    let mut mult = vec![vec![0usize; n]; n];
    for e in 0..g.num_edges() {
        let (u, v) = g.endpoints(e);
        if u != v {
            mult[u][v] += 1;
            mult[v][u] += 1;
        }
    }
    let deg: Vec<usize> = mult.iter().map(|r| r.iter().sum()).collect();
    let size = 1usize << n;
    let mut cut = vec![0usize; size];
    for s in 1..size {
        let v = s.trailing_zeros() as usize;
        let prev = s & (s - 1);
        let inside: usize = (0..n).filter(|&u| prev >> u & 1 == 1).map(|u| mult[v][u]).sum();
        cut[s] = cut[prev] + deg[v] - 2 * inside;
    }
    let mut b = TreeBuilder::default();
    if n == 1 {
        b.node(Some(0));
        return Ok((0, b.build()));
    }
    let t = solve(n, &cut);
    let rest = (size - 1) as Mask ^ 1;
    let k = t.best[rest as usize];
    let v0 = b.node(Some(0));
    let top = subtree(&t, rest, &mut b, &|v| Some(v));
    b.link(v0, top);
    Ok((k, b.build()))
}

/// Exact branch-width: the width of an edge of the tree is the number of
/// vertices incident to edges on both sides.
pub fn branch_width_exact(g: &PlaneGraph, opts: &ExactOptions) -> Result<usize> {
    let m = g.num_edges();
    if m == 0 {
        return Err(Error::Edgeless);
    }
    if m > opts.max_edges {
        return Err(Error::TooLarge(format!("{m} edges, cap {}", opts.max_edges)));
    }
    if m == 1 {
        return Ok(0);
    }
    let n = g.num_vertices();
    let size = 1usize << m;
    // incidence mask per vertex over edges
    let mut inc = vec![0 as Mask; n];
    for e in 0..m {
        let (u, v) = g.endpoints(e);
        inc[u] |= 1 << e;
        inc[v] |= 1 << e;
    }
    let full = (size - 1) as Mask;
    let mid: Vec<usize> = (0..size as Mask)
        .map(|f| inc.iter().filter(|&&i| i & f != 0 && i & !f & full != 0).count())
        .collect();
    let t = solve(m, &mid);
    Ok(t.best[(full ^ 1) as usize])
}
