//! The PLG text format.
//!
//! ```text
//! # comment
//! directed
//! vertex <name> : <dart> <dart> ...        counterclockwise rotation
//! edge <name> : <dartA> <dartB>            tail first when directed
//! nest <vertex>[.<face>] in <vertex>.<face>
//! outer <face>
//! ```
//!
//! Face indices refer to the deterministic face order of the parsed graph.
//! In a `nest` line the optional face on the left selects which face of the
//! nested component looks at the host; it defaults to that component's first
//! face.

use super::{finish_with_nests, trace, Nest, PlaneGraph, Raw};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl PlaneGraph {
    pub fn parse_plg(text: &str) -> Result<PlaneGraph> {
        let mut raw = Raw::default();
        let mut dart_id: HashMap<String, usize> = HashMap::new();
        let mut vert_id: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<(usize, String, String, String)> = Vec::new();
        let mut nests: Vec<(usize, String, Option<usize>, String, usize)> = Vec::new();
        let mut outer = None;
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = match line.find('#') {
                Some(p) => &line[..p],
                None => line,
            };
            let spaced = line.replace(':', " : ");
            let toks: Vec<&str> = spaced.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            match toks[0] {
                "directed" => {
                    if toks.len() != 1 {
                        return Err(perr(ln, "trailing tokens after directed"));
                    }
                    raw.directed = true;
                }
                "vertex" => {
                    if toks.len() < 3 || toks[2] != ":" {
                        return Err(perr(ln, "expected `vertex <name> : <darts>`"));
                    }
                    let name = toks[1].to_string();
                    if vert_id.insert(name.clone(), raw.vnames.len()).is_some() {
                        return Err(perr(ln, format!("duplicate vertex {name}")));
                    }
                    let mut r = Vec::new();
                    for d in &toks[3..] {
                        if dart_id.contains_key(*d) {
                            return Err(perr(ln, format!("dart {d} listed twice")));
                        }
                        dart_id.insert(d.to_string(), raw.dnames.len());
                        r.push(raw.dnames.len());
                        raw.dnames.push(d.to_string());
                    }
                    raw.vnames.push(name);
                    raw.rot.push(r);
                }
                "edge" => {
                    if toks.len() != 5 || toks[2] != ":" {
                        return Err(perr(ln, "expected `edge <name> : <dart> <dart>`"));
                    }
                    edges.push((ln, toks[1].to_string(), toks[3].to_string(), toks[4].to_string()));
                }
                "nest" => {
                    if toks.len() != 4 || toks[2] != "in" {
                        return Err(perr(ln, "expected `nest <vertex>[.<face>] in <vertex>.<face>`"));
                    }
                    let (cv, cf) = split_face(toks[1], ln)?;
                    let (hv, hf) = split_face(toks[3], ln)?;
                    let hf = hf.ok_or_else(|| perr(ln, "host face index missing"))?;
                    nests.push((ln, cv, cf, hv, hf));
                }
                "outer" => {
                    if toks.len() != 2 {
                        return Err(perr(ln, "expected `outer <face>`"));
                    }
                    outer = Some(toks[1].parse::<usize>().map_err(|_| perr(ln, "bad face index"))?);
                }
                other => return Err(perr(ln, format!("unknown directive {other}"))),
            }
        }
        for (ln, name, a, b) in edges {
            let da = *dart_id.get(&a).ok_or_else(|| perr(ln, format!("unknown dart {a}")))?;
            let db = *dart_id.get(&b).ok_or_else(|| perr(ln, format!("unknown dart {b}")))?;
            if da == db {
                return Err(Error::BadTwin(format!("dart {a} is its own twin")));
            }
            raw.enames.push(name);
            raw.edarts.push([da, db]);
        }
        let traced = trace(raw)?;
        let g = traced.graph();
        let mut ns = Vec::new();
        for (ln, cv, cf, hv, hf) in nests {
            let v = *vert_id.get(&cv).ok_or_else(|| perr(ln, format!("unknown vertex {cv}")))?;
            let h = *vert_id.get(&hv).ok_or_else(|| perr(ln, format!("unknown vertex {hv}")))?;
            if hf >= g.faces.len() || g.fcomp[hf] != g.vcomp[h] {
                return Err(Error::BadNesting(format!("line {ln}: face {hf} is not a face of {hv}'s component")));
            }
            ns.push(Nest { vertex: v, face: cf, host_face: hf });
        }
        finish_with_nests(traced, &ns, outer)
    }

    pub fn to_plg(&self) -> String {
        let mut s = String::new();
        if self.directed {
            s.push_str("directed\n");
        }
        for v in 0..self.num_vertices() {
            let _ = write!(s, "vertex {} :", self.vnames[v]);
            for &d in &self.rot[v] {
                let _ = write!(s, " {}", self.dnames[d]);
            }
            s.push('\n');
        }
        for e in 0..self.num_edges() {
            let [a, b] = self.edarts[e];
            let _ = writeln!(s, "edge {} : {} {}", self.enames[e], self.dnames[a], self.dnames[b]);
        }
        for (c, h, p, f) in self.nest_lines() {
            let cv = self.vnames[self.rep_vertex(c)].clone();
            let pv = self.vnames[self.rep_vertex(p)].clone();
            let _ = writeln!(s, "nest {cv}.{h} in {pv}.{f}");
        }
        if let Some(f) = self.outer_face() {
            let _ = writeln!(s, "outer {f}");
        }
        s
    }

    fn rep_vertex(&self, c: usize) -> usize {
        (0..self.num_vertices()).find(|&v| self.vcomp[v] == c).unwrap()
    }

    /// Nesting forest as (child component, child face, host component, host
    /// face), discovered breadth-first from component 0.
    pub fn nest_lines(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        if self.ncomp <= 1 {
            return out;
        }
        let regions = self.regions();
        let mut seen = vec![false; self.ncomp];
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back((0usize, None::<usize>));
        while let Some((p, parent_slot)) = queue.pop_front() {
            for f in 0..self.faces.len() {
                if self.fcomp[f] != p || Some(f) == parent_slot {
                    continue;
                }
                for &h in &regions[self.fregion[f]] {
                    let c = self.fcomp[h];
                    if h == f || seen[c] {
                        continue;
                    }
                    seen[c] = true;
                    out.push((c, h, p, f));
                    queue.push_back((c, Some(h)));
                }
            }
        }
        out
    }
}

fn split_face(tok: &str, ln: usize) -> Result<(String, Option<usize>)> {
    match tok.rfind('.') {
        Some(p) if tok[p + 1..].chars().all(|c| c.is_ascii_digit()) && p + 1 < tok.len() => {
            let f = tok[p + 1..].parse::<usize>().map_err(|_| perr(ln, "bad face index"))?;
            Ok((tok[..p].to_string(), Some(f)))
        }
        _ => Ok((tok.to_string(), None)),
    }
}
