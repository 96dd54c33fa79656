use super::{CarvingTree, NodeId, TreeBuilder};
use crate::plane_graph::PlaneGraph;
use crate::{Error, Result};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, msg: msg.into() }
}

enum Sx {
    Atom(String),
    List(Vec<Sx>),
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sx> {
    let t = tokens.get(*pos).ok_or_else(|| perr("unexpected end of tree"))?;
    *pos += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(|s| s.as_str()) {
                    None => return Err(perr("unbalanced parentheses")),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sx::List(items));
                    }
                    _ => items.push(read(tokens, pos)?),
                }
            }
        }
        ")" => Err(perr("unexpected ')'")),
        _ => Ok(Sx::Atom(t.clone())),
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                out.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

impl CarvingTree {
    /// Parses the s-expression form. `( _ S )` at the top level marks a
    /// rooted tree; otherwise the top pair is the two sides of one edge.
    pub fn parse(text: &str, g: &PlaneGraph) -> Result<CarvingTree> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let sx = read(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(perr("trailing input after tree"));
        }
        let mut b = TreeBuilder::default();
        let mut root = None;
        fn build(sx: &Sx, b: &mut TreeBuilder, g: &PlaneGraph) -> Result<NodeId> {
            match sx {
                Sx::Atom(name) if name == "_" => Err(perr("'_' is only allowed as the root")),
                Sx::Atom(name) => {
                    let v = g
                        .vertex_by_name(name)
                        .ok_or_else(|| Error::LabelMismatch(format!("unknown vertex {name}")))?;
                    Ok(b.node(Some(v)))
                }
                Sx::List(items) if items.len() == 2 => {
                    let x = b.node(None);
                    for it in items {
                        let y = build(it, b, g)?;
                        b.link(x, y);
                    }
                    Ok(x)
                }
                Sx::List(_) => Err(perr("inner nodes must have exactly two children")),
            }
        }
        match &sx {
            Sx::List(items) if items.len() == 2 => {
                let is_root = |s: &Sx| matches!(s, Sx::Atom(n) if n == "_");
                if is_root(&items[0]) || is_root(&items[1]) {
                    let other = if is_root(&items[0]) { &items[1] } else { &items[0] };
                    let r = b.node(None);
                    let y = build(other, &mut b, g)?;
                    b.link(r, y);
                    root = Some(r);
                } else {
                    let x = build(&items[0], &mut b, g)?;
                    let y = build(&items[1], &mut b, g)?;
                    b.link(x, y);
                }
            }
            Sx::List(_) => return Err(perr("top level must be a pair")),
            Sx::Atom(_) => {
                build(&sx, &mut b, g)?;
            }
        }
        let mut t = b.build();
        t.root = root;
        t.check_labels(g.num_vertices())?;
        Ok(t)
    }

    /// S-expression form, hung at the root edge (or the canonical edge when
    /// unrooted). Children are ordered by their smallest label.
    pub fn to_sexpr(&self, g: &PlaneGraph) -> String {
        if self.nbr.is_empty() {
            return "()".into();
        }
        if let Some(r) = self.root {
            return match self.nbr[r].first() {
                Some(&m) => format!("( _ {} )", self.sx_from(m, r, g)),
                None => "_".into(),
            };
        }
        match self.canonical_edge() {
            Some((x, y)) => {
                let (mx, my) = (self.min_label(x, y), self.min_label(y, x));
                let (a, b) = if mx <= my { (x, y) } else { (y, x) };
                format!("( {} {} )", self.sx_from(a, b, g), self.sx_from(b, a, g))
            }
            None => self.leaf_text(0, g),
        }
    }

    fn leaf_text(&self, x: NodeId, g: &PlaneGraph) -> String {
        match self.label[x] {
            Some(v) => g.vertex_name(v).to_string(),
            None => "_".into(),
        }
    }

    fn min_label(&self, x: NodeId, from: NodeId) -> u64 {
        let m = self.side(x, from);
        if m == 0 {
            u64::MAX
        } else {
            m.trailing_zeros() as u64
        }
    }

    fn sx_from(&self, x: NodeId, parent: NodeId, g: &PlaneGraph) -> String {
        let mut kids: Vec<NodeId> = self.nbr[x].iter().copied().filter(|&y| y != parent).collect();
        if kids.is_empty() {
            return self.leaf_text(x, g);
        }
        kids.sort_by_key(|&y| self.min_label(y, x));
        let parts: Vec<String> = kids.iter().map(|&y| self.sx_from(y, x, g)).collect();
        format!("( {} )", parts.join(" "))
    }
}
