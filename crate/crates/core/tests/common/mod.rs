#![allow(dead_code)]

use plgraph::corpus::{random_plane_graph, straight_line};
use plgraph::decomposition::{certify_disc, leaving_graph, make_disc, LeavingGraph};
use plgraph::PlaneGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn load(name: &str) -> PlaneGraph {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    PlaneGraph::parse_plg(&text).unwrap()
}

/// Straight-line drawing of the r x c grid, vertex (i, j) at (j, -i).
pub fn grid_drawing(r: usize, c: usize) -> PlaneGraph {
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            pts.push((j as f64, -(i as f64)));
            if j + 1 < c {
                edges.push((i * c + j, i * c + j + 1));
            }
            if i + 1 < r {
                edges.push((i * c + j, (i + 1) * c + j));
            }
        }
    }
    straight_line(&pts, &edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> PlaneGraph {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=3 * n);
    random_plane_graph(n, m, &mut |k| rng.gen_range(0..k))
}

/// Same graph with every dart renamed, every rotation started elsewhere and
/// the vertex lines reversed.
pub fn relabel(g: &PlaneGraph, shift: usize) -> PlaneGraph {
    let text = g.to_plg();
    let mut vlines = Vec::new();
    let mut rest = Vec::new();
    for line in text.lines() {
        if line.starts_with("vertex") {
            let (head, darts) = line.split_once(':').unwrap();
            let mut ds: Vec<String> = darts.split_whitespace().map(|d| format!("r_{d}")).collect();
            if !ds.is_empty() {
                let k = shift % ds.len();
                ds.rotate_left(k);
            }
            vlines.push(format!("{head}: {}", ds.join(" ")));
        } else if line.starts_with("edge") {
            let (head, darts) = line.split_once(':').unwrap();
            let ds: Vec<String> = darts.split_whitespace().map(|d| format!("r_{d}")).collect();
            rest.push(format!("{head}: {}", ds.join(" ")));
        } else if line == "directed" {
            vlines.insert(0, line.to_string());
        }
    }
    let directed = vlines.first().map(|l| l == "directed").unwrap_or(false);
    let mut out = Vec::new();
    if directed {
        out.push(vlines.remove(0));
    }
    vlines.reverse();
    out.extend(vlines);
    out.extend(rest);
    PlaneGraph::parse_plg(&out.join("\n")).unwrap()
}

pub fn cycle(n: usize) -> PlaneGraph {
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let a = i as f64 * std::f64::consts::TAU / n as f64;
            (a.cos(), a.sin())
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    straight_line(&pts, &edges).unwrap()
}

pub fn path(n: usize) -> PlaneGraph {
    let pts: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, 0.0)).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    straight_line(&pts, &edges).unwrap()
}

pub fn k4() -> PlaneGraph {
    straight_line(
        &[(0.0, 0.0), (4.0, 0.0), (0.0, 4.0), (1.0, 1.0)],
        &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
    )
    .unwrap()
}

/// Two triangles sharing vertex 0.
pub fn bowtie() -> PlaneGraph {
    straight_line(
        &[(0.0, 0.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, 1.0), (1.0, -1.0)],
        &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)],
    )
    .unwrap()
}

pub fn two_triangles() -> PlaneGraph {
    straight_line(
        &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (5.0, 0.0), (6.0, 0.0), (5.0, 1.0)],
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
    )
    .unwrap()
}

/// Every unrooted binary tree with leaves `0..n`, as edge lists over nodes
/// where node `i < n` is the leaf of `i`.
pub fn leaf_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut trees = vec![vec![(0, 1)]];
    let mut next_inner = vec![n];
    for leaf in 2..n {
        let mut grown = Vec::new();
        let mut grown_inner = Vec::new();
        for (t, &m) in trees.iter().zip(&next_inner) {
            for i in 0..t.len() {
                let (x, y) = t[i];
                let mut u = t.clone();
                u[i] = (x, m);
                u.push((m, y));
                u.push((m, leaf));
                grown.push(u);
                grown_inner.push(m + 1);
            }
        }
        trees = grown;
        next_inner = grown_inner;
    }
    trees
}

/// Leaves on the side of `edges[i].0` when edge `i` is removed.
pub fn leaf_side(edges: &[(usize, usize)], i: usize, n: usize) -> Vec<bool> {
    let mut side = vec![false; n];
    let (start, avoid) = edges[i];
    let mut stack = vec![(start, avoid)];
    while let Some((x, from)) = stack.pop() {
        if x < n {
            side[x] = true;
        }
        for &(a, b) in edges {
            let y = if a == x { b } else if b == x { a } else { continue };
            if y != from {
                stack.push((y, x));
            }
        }
    }
    side
}

/// For every internal edge of the rooted disc decomposition of each graph:
/// the leaving graphs of the edge and of its two children.
pub fn family_records(gs: &[PlaneGraph]) -> Vec<[LeavingGraph; 3]> {
    let mut out = Vec::new();
    for g in gs {
        let (t, _) = make_disc(g).unwrap();
        let r = t.rooted();
        let certs = certify_disc(g, &r).unwrap();
        for a in r.edges() {
            let below = r.below(a).unwrap();
            let (c, p) = if r.side(a.0, a.1) == below { (a.0, a.1) } else { (a.1, a.0) };
            let kids: Vec<usize> = r.neighbors(c).iter().copied().filter(|&z| z != p).collect();
            if let [x, y] = kids[..] {
                let l = |e| leaving_graph(g, &r, &certs, e).unwrap();
                out.push([l(a), l((c, x)), l((c, y))]);
            }
        }
    }
    out
}

/// Parent and children leaving graphs with, for each, the rotation position
/// of the first stub after the junction of the theta curve formed by the
/// three disc boundaries.
pub struct Theta {
    pub graphs: [LeavingGraph; 3],
    pub start: [usize; 3],
}

impl Theta {
    pub fn sizes_match(&self, other: &Theta) -> bool {
        (0..3).all(|k| self.graphs[k].stubs().len() == other.graphs[k].stubs().len())
    }

    /// Stub offset carrying this theta's junction onto `other`'s.
    pub fn offset(&self, other: &Theta, k: usize) -> usize {
        let w = other.graphs[k].stubs().len();
        (other.start[k] + w - self.start[k]) % w
    }
}

/// Position just after the gap where the labels change from `from` to `to`,
/// if they form exactly two non-empty arcs.
fn junction(labels: &[u8], from: u8, to: u8) -> Option<usize> {
    let k = labels.len();
    let changes: Vec<usize> = (0..k).filter(|&i| labels[(i + k - 1) % k] != labels[i]).collect();
    if changes.len() != 2 {
        return None;
    }
    changes.into_iter().find(|&i| labels[(i + k - 1) % k] == from && labels[i] == to)
}

fn stub_names(l: &LeavingGraph) -> Vec<String> {
    l.stubs().iter().map(|&e| l.graph.edge_name(e).to_string()).collect()
}

/// The theta of parent `a` with children `l` (left) and `r`. Walking each
/// hub rotation, the junction is where the left child passes from its
/// sibling's stubs to the parent's, where the right child passes from the
/// parent's to its sibling's, and where the parent passes from the right
/// child's stubs to the left child's. `None` when an arc is empty.
pub fn theta(a: &LeavingGraph, l: &LeavingGraph, r: &LeavingGraph) -> Option<Theta> {
    let (na, nl, nr) = (stub_names(a), stub_names(l), stub_names(r));
    let label = |names: &[String], first: &[String], second: &[String], x: u8, y: u8| -> Option<Vec<u8>> {
        names
            .iter()
            .map(|n| match (first.contains(n), second.contains(n)) {
                (true, false) => Some(x),
                (false, true) => Some(y),
                _ => None,
            })
            .collect()
    };
    let ll = label(&nl, &na, &nr, b'U', b'S')?;
    let lr = label(&nr, &na, &nl, b'U', b'S')?;
    let la = label(&na, &nl, &nr, b'L', b'R')?;
    Some(Theta {
        graphs: [a.clone(), l.clone(), r.clone()],
        start: [junction(&la, b'R', b'L')?, junction(&ll, b'S', b'U')?, junction(&lr, b'U', b'S')?],
    })
}
