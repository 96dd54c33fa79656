use super::SearchOptions;
use crate::plane_graph::PlaneGraph;
use crate::{Error, Result};
use std::collections::{HashSet, VecDeque};

/// Multigraph without an embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    fn of(g: &PlaneGraph) -> Multigraph {
        Multigraph { n: g.num_vertices(), edges: g.edge_list() }
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    fn relabel(&self, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut es: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (perm[a], perm[b]);
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort_unstable();
        es
    }

    /// Smallest relabelled edge list over labellings that sort vertices by
    /// (degree, loops, neighbour degrees).
    fn canonical(&self) -> Vec<u8> {
        let deg = self.degrees();
        let inv: Vec<(usize, Vec<usize>)> = (0..self.n)
            .map(|v| {
                let mut nd: Vec<usize> = self
                    .edges
                    .iter()
                    .filter_map(|&(a, b)| if a == v { Some(deg[b]) } else if b == v { Some(deg[a]) } else { None })
                    .collect();
                nd.sort_unstable();
                (deg[v], nd)
            })
            .collect();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match classes.last_mut() {
                Some(c) if inv[c[0]] == inv[v] => c.push(v),
                _ => classes.push(vec![v]),
            }
        }
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut perm = vec![0; self.n];
        self.assign(&classes, 0, 0, &mut perm, &mut best);
        let mut out = vec![self.n as u8];
        for (a, b) in best.unwrap_or_default() {
            out.push(a as u8);
            out.push(b as u8);
        }
        out
    }

    fn assign(&self, classes: &[Vec<usize>], ci: usize, base: usize, perm: &mut Vec<usize>, best: &mut Option<Vec<(usize, usize)>>) {
        if ci == classes.len() {
            let es = self.relabel(perm);
            if best.as_ref().map_or(true, |b| es < *b) {
                *best = Some(es);
            }
            return;
        }
        let mut c = classes[ci].clone();
        permute(&mut c, 0, &mut |p| {
            for (i, &v) in p.iter().enumerate() {
                perm[v] = base + i;
            }
            self.assign(classes, ci + 1, base + p.len(), perm, best);
        });
    }

    fn delete_edge(&self, e: usize) -> Multigraph {
        let mut g = self.clone();
        g.edges.remove(e);
        g
    }

    fn delete_vertex(&self, v: usize) -> Multigraph {
        let shift = |x: usize| if x > v { x - 1 } else { x };
        Multigraph {
            n: self.n - 1,
            edges: self
                .edges
                .iter()
                .filter(|&&(a, b)| a != v && b != v)
                .map(|&(a, b)| (shift(a), shift(b)))
                .collect(),
        }
    }

    fn contract(&self, e: usize) -> Multigraph {
        let (a, b) = self.edges[e];
        let (keep, gone) = (a.min(b), a.max(b));
        let mut g = self.delete_edge(e);
        for x in g.edges.iter_mut() {
            for end in [&mut x.0, &mut x.1] {
                if *end == gone {
                    *end = keep;
                }
            }
        }
        g.delete_vertex(gone)
    }
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// Whether `h` is a minor of `g`, ignoring both embeddings and directions.
pub fn abstract_minor(h: &PlaneGraph, g: &PlaneGraph) -> Result<bool> {
    abstract_minor_with(h, g, &SearchOptions::default())
}

pub fn abstract_minor_with(h: &PlaneGraph, g: &PlaneGraph, opts: &SearchOptions) -> Result<bool> {
    if g.num_darts() > opts.max_darts {
        return Err(Error::TooLarge(format!("{} darts in the host (cap {})", g.num_darts(), opts.max_darts)));
    }
    let (h, g) = (Multigraph::of(h), Multigraph::of(g));
    let target = h.canonical();
    let alive = |s: &Multigraph| s.n >= h.n && s.edges.len() >= h.edges.len();
    if !alive(&g) {
        return Ok(false);
    }
    let mut seen = HashSet::from([g.canonical()]);
    if seen.contains(&target) {
        return Ok(true);
    }
    let mut queue = VecDeque::from([g]);
    while let Some(cur) = queue.pop_front() {
        let mut next = Vec::new();
        for e in 0..cur.edges.len() {
            next.push(cur.delete_edge(e));
            if cur.edges[e].0 != cur.edges[e].1 {
                next.push(cur.contract(e));
            }
        }
        for v in 0..cur.n {
            next.push(cur.delete_vertex(v));
        }
        for s in next {
            if !alive(&s) {
                continue;
            }
            let k = s.canonical();
            if k == target {
                return Ok(true);
            }
            if seen.insert(k) {
                if seen.len() > opts.max_states {
                    return Err(Error::TooLarge(format!("more than {} search states", opts.max_states)));
                }
                queue.push_back(s);
            }
        }
    }
    Ok(false)
}
