use crate::plane_graph::{DartId, PlaneGraph, VertexId};
use crate::{Error, Result};
use std::fmt;

/// Edge-disjoint walks, each given by the darts it leaves along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    pub walks: Vec<Vec<DartId>>,
    pub directed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tangency {
    Tangent,
    Transverse(VertexId),
}

impl PathFamily {
    pub fn new(walks: Vec<Vec<DartId>>, directed: bool) -> Self {
        PathFamily { walks, directed }
    }

    pub fn validate(&self, g: &PlaneGraph) -> Result<()> {
        let mut used = vec![false; g.num_edges()];
        for (i, w) in self.walks.iter().enumerate() {
            for (k, &d) in w.iter().enumerate() {
                if d >= g.num_darts() {
                    return Err(Error::BadAddress(format!("dart {d} in walk {i}")));
                }
                if self.directed && g.is_directed() && !g.is_tail(d) {
                    return Err(Error::DirectedMismatch(g.dart_name(d).to_string()));
                }
                if k > 0 && g.dart_vertex(g.twin(w[k - 1])) != g.dart_vertex(d) {
                    return Err(Error::BadAddress(format!("walk {i} breaks before dart {}", g.dart_name(d))));
                }
                let e = g.dart_edge(d);
                if used[e] {
                    return Err(Error::NotEdgeDisjoint);
                }
                used[e] = true;
            }
        }
        Ok(())
    }

    fn ends(g: &PlaneGraph, w: &[DartId]) -> Option<(VertexId, VertexId)> {
        Some((g.dart_vertex(*w.first()?), g.dart_vertex(g.twin(*w.last()?))))
    }
}

/// A walk passing through a vertex: the dart it arrives on (at the vertex)
/// and the dart it leaves on.
#[derive(Clone, Copy, Debug)]
struct Passage {
    walk: usize,
    step: usize,
    arrive: DartId,
    depart: DartId,
}

fn passages(g: &PlaneGraph, f: &PathFamily, v: VertexId) -> Vec<Passage> {
    let mut out = Vec::new();
    for (i, w) in f.walks.iter().enumerate() {
        for k in 0..w.len().saturating_sub(1) {
            let arrive = g.twin(w[k]);
            if g.dart_vertex(arrive) == v {
                out.push(Passage { walk: i, step: k, arrive, depart: w[k + 1] });
            }
        }
    }
    out
}

fn interlaced(g: &PlaneGraph, p: &Passage, q: &Passage) -> bool {
    let (a, b) = (g.dart_pos(p.arrive), g.dart_pos(p.depart));
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |d: DartId| {
        let x = g.dart_pos(d);
        lo < x && x < hi
    };
    inside(q.arrive) != inside(q.depart)
}

fn transverse_at(g: &PlaneGraph, f: &PathFamily, v: VertexId) -> bool {
    let ps = passages(g, f, v);
    for p in &ps {
        for (j, w) in f.walks.iter().enumerate() {
            if j == p.walk {
                continue;
            }
            if let Some((s, t)) = PathFamily::ends(g, w) {
                if s == v || t == v {
                    return true;
                }
            }
        }
    }
    (0..ps.len()).any(|i| (i + 1..ps.len()).any(|j| interlaced(g, &ps[i], &ps[j])))
}

/// The first vertex where the family is transverse: an inner vertex of one
/// walk that ends another, or two passages interlaced in the rotation.
pub fn classify_family(g: &PlaneGraph, f: &PathFamily) -> Result<Tangency> {
    f.validate(g)?;
    Ok((0..g.num_vertices())
        .find(|&v| transverse_at(g, f, v))
        .map_or(Tangency::Tangent, Tangency::Transverse))
}

/// Whether every inner vertex can be lifted away: passages do not
/// interlace, and the walk ends at a vertex lie on one side of each passage.
/// Unlike tangency, a walk may pass through an end of another walk.
pub(crate) fn liftable(g: &PlaneGraph, f: &PathFamily) -> bool {
    (0..g.num_vertices()).all(|v| {
        let ps = passages(g, f, v);
        if (0..ps.len()).any(|i| (i + 1..ps.len()).any(|j| interlaced(g, &ps[i], &ps[j]))) {
            return false;
        }
        let mut ends = Vec::new();
        for w in f.walks.iter().filter(|w| !w.is_empty()) {
            if g.dart_vertex(w[0]) == v {
                ends.push(w[0]);
            }
            let last = g.twin(*w.last().unwrap());
            if g.dart_vertex(last) == v {
                ends.push(last);
            }
        }
        ps.iter().all(|p| {
            let (a, b) = (g.dart_pos(p.arrive), g.dart_pos(p.depart));
            let (lo, hi) = (a.min(b), a.max(b));
            let inside = |d: DartId| lo < g.dart_pos(d) && g.dart_pos(d) < hi;
            ends.iter().all(|&d| inside(d)) || ends.iter().all(|&d| !inside(d))
        })
    })
}

/// All vertices where the family is transverse.
pub fn transverse_vertices(g: &PlaneGraph, f: &PathFamily) -> Result<Vec<VertexId>> {
    f.validate(g)?;
    Ok((0..g.num_vertices()).filter(|&v| transverse_at(g, f, v)).collect())
}

/// Letter of a circular word: path `path` arriving, or leaving when
/// `inverse` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub path: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inc(path: usize) -> Letter {
        Letter { path, inverse: false }
    }

    pub fn out(path: usize) -> Letter {
        Letter { path, inverse: true }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.path)
        } else {
            write!(f, "{}", self.path)
        }
    }
}

/// Parses words such as `1 4^-1 3 2`.
pub fn parse_word(text: &str) -> Result<Vec<Letter>> {
    text.split_whitespace()
        .map(|t| {
            let (n, inverse) = match t.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (t, false),
            };
            n.parse()
                .map(|path| Letter { path, inverse })
                .map_err(|_| Error::Parse { line: 1, msg: format!("bad letter `{t}`") })
        })
        .collect()
}

pub fn format_word(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// Removes cyclically adjacent opposite letters of one path until none are
/// left. Returns the kept positions.
fn cancel<T: Copy>(word: &[(Letter, T)]) -> Vec<(Letter, T)> {
    let mut w = word.to_vec();
    loop {
        let k = w.len();
        if k < 2 {
            return w;
        }
        let hit = (0..k).find(|&i| {
            let (a, b) = (w[i].0, w[(i + 1) % k].0);
            a.path == b.path && a.inverse != b.inverse
        });
        match hit {
            Some(i) => {
                let j = (i + 1) % k;
                let (first, second) = (i.min(j), i.max(j));
                w.remove(second);
                w.remove(first);
            }
            None => return w,
        }
    }
}

/// First position `i` holding an arrival followed by another path's
/// departure.
fn swap_site<T>(w: &[(Letter, T)]) -> Option<usize> {
    let k = w.len();
    (0..k).find(|&i| {
        let (a, b) = (w[i].0, w[(i + 1) % k].0);
        !a.inverse && b.inverse && a.path != b.path
    })
}

/// Reduces a balanced circular word to the empty word. Each round swaps,
/// scanning left to right, every arrival `i` followed by a departure `j^-1`
/// with the departure `i^-1`, then cancels adjacent opposite letters. The
/// trace lists the word after every round and every cancellation that
/// changed it.
pub fn reduce_word(word: &[Letter]) -> Result<Vec<Vec<Letter>>> {
    let mut count = std::collections::HashMap::new();
    for l in word {
        let c = count.entry(l.path).or_insert((0usize, 0usize));
        if l.inverse {
            c.1 += 1;
        } else {
            c.0 += 1;
        }
    }
    if count.values().any(|&(a, b)| a != 1 || b != 1) {
        return Err(Error::BadSize("every path must arrive and leave exactly once".into()));
    }
    let mut w = word.to_vec();
    let mut trace = vec![w.clone()];
    while !w.is_empty() {
        let k = w.len();
        let mut swapped = false;
        for i in 0..k {
            let (a, b) = (w[i], w[(i + 1) % k]);
            if !a.inverse && b.inverse && a.path != b.path {
                let q = w.iter().position(|&l| l == Letter::out(a.path)).unwrap();
                w[(i + 1) % k] = Letter::out(a.path);
                w[q] = b;
                swapped = true;
            }
        }
        if swapped {
            trace.push(w.clone());
        }
        let tagged: Vec<(Letter, ())> = w.iter().map(|&l| (l, ())).collect();
        let c: Vec<Letter> = cancel(&tagged).into_iter().map(|x| x.0).collect();
        if c.len() != w.len() {
            w = c;
            trace.push(w.clone());
        } else if !swapped {
            return Err(Error::Internal("word reduction stalled".into()));
        }
    }
    Ok(trace)
}

/// Drops closed sub-walks so that no vertex is visited twice. A walk that
/// is closed as a whole keeps its outer cycle.
fn remove_loops(g: &PlaneGraph, w: &mut Vec<DartId>) {
    loop {
        let mut vs = Vec::with_capacity(w.len() + 1);
        if let Some(&d) = w.first() {
            vs.push(g.dart_vertex(d));
        }
        for &d in w.iter() {
            vs.push(g.dart_vertex(g.twin(d)));
        }
        let n = w.len();
        let mut cut = None;
        'find: for a in 0..vs.len() {
            for b in (a + 1..vs.len()).rev() {
                if vs[a] == vs[b] && !(a == 0 && b == n) {
                    cut = Some((a, b));
                    break 'find;
                }
            }
        }
        match cut {
            Some((a, b)) => {
                w.drain(a..b);
            }
            None => return,
        }
    }
}

/// Circular word of the passages at `v`, starting from the first dart of
/// the rotation, each letter carrying its passage.
fn word_at(g: &PlaneGraph, f: &PathFamily, v: VertexId) -> Vec<(Letter, Passage)> {
    let ps = passages(g, f, v);
    let mut out = Vec::new();
    for &d in g.rotation(v) {
        for p in &ps {
            if p.arrive == d {
                out.push((Letter::inc(p.walk), *p));
            }
            if p.depart == d {
                out.push((Letter::out(p.walk), *p));
            }
        }
    }
    out
}

/// Orients undirected walks from the endpoint with the smaller name.
fn orient(g: &PlaneGraph, f: &PathFamily) -> Result<PathFamily> {
    if f.directed {
        return Ok(f.clone());
    }
    let mut walks = Vec::with_capacity(f.walks.len());
    for w in &f.walks {
        match PathFamily::ends(g, w) {
            Some((s, t)) if s == t => return Err(Error::UndirectedAmbiguity),
            Some((s, t)) if g.vertex_name(t) < g.vertex_name(s) => {
                walks.push(w.iter().rev().map(|&d| g.twin(d)).collect());
            }
            _ => walks.push(w.clone()),
        }
    }
    Ok(PathFamily { walks, directed: false })
}

/// Path-swaps at `v` until no two passages at `v` interlace. Walks that
/// become closed through a swap lose the closed part.
pub fn make_tangent(g: &PlaneGraph, f: &PathFamily, v: VertexId) -> Result<PathFamily> {
    f.validate(g)?;
    let ps = passages(g, f, v);
    if !(0..ps.len()).any(|i| (i + 1..ps.len()).any(|j| interlaced(g, &ps[i], &ps[j]))) {
        return Ok(f.clone());
    }
    let mut cur = orient(g, f)?;
    for w in cur.walks.iter_mut() {
        remove_loops(g, w);
    }
    let limit = {
        let k = 2 * passages(g, &cur, v).len();
        k * k + 1
    };
    for _ in 0..limit {
        let reduced = cancel(&word_at(g, &cur, v));
        let Some(i) = swap_site(&reduced) else {
            return Ok(cur);
        };
        let p = reduced[i].1;
        let q = reduced[(i + 1) % reduced.len()].1;
        let (wi, wj) = (cur.walks[p.walk].clone(), cur.walks[q.walk].clone());
        let mut ni: Vec<DartId> = wi[..=p.step].to_vec();
        ni.extend_from_slice(&wj[q.step + 1..]);
        let mut nj: Vec<DartId> = wj[..=q.step].to_vec();
        nj.extend_from_slice(&wi[p.step + 1..]);
        remove_loops(g, &mut ni);
        remove_loops(g, &mut nj);
        cur.walks[p.walk] = ni;
        cur.walks[q.walk] = nj;
    }
    Err(Error::Internal("path-swaps did not terminate".into()))
}
