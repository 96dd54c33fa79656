use crate::plane_graph::{BiliftKind, EmbeddedOp, LiftSide, PlaneGraph};
use crate::{Error, Result};
use std::fmt;

/// A sequence of embedded operations addressed by vertex and edge names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpScript {
    pub ops: Vec<EmbeddedOp>,
}

impl OpScript {
    pub fn new(ops: Vec<EmbeddedOp>) -> Self {
        OpScript { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Parses one operation per line; blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<OpScript> {
        let mut ops = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            let w: Vec<&str> = line.split_whitespace().collect();
            let op = match (w[0], w.len()) {
                ("del-edge", 2) => EmbeddedOp::DeleteEdge(w[1].into()),
                ("del-vertex", 2) => EmbeddedOp::DeleteVertex(w[1].into()),
                ("contract", 2) => EmbeddedOp::Contract(w[1].into()),
                ("subdivide", 3) => EmbeddedOp::Subdivide { edge: w[1].into(), new_vertex: w[2].into() },
                ("lift", 5) => {
                    let side = match w[4] {
                        "cw" => LiftSide::Cw,
                        "ccw" => LiftSide::Ccw,
                        _ => return Err(err("lift side must be cw or ccw")),
                    };
                    EmbeddedOp::Lift { vertex: w[1].into(), e1: w[2].into(), e2: w[3].into(), side }
                }
                ("bilift", 3) => {
                    let kind = match w[2] {
                        "del" => BiliftKind::Delete,
                        "contract" => BiliftKind::Contract,
                        _ => return Err(err("bilift kind must be del or contract")),
                    };
                    EmbeddedOp::Bilift { vertex: w[1].into(), kind }
                }
                _ => return Err(err(&format!("unrecognized operation `{line}`"))),
            };
            ops.push(op);
        }
        Ok(OpScript { ops })
    }
}

impl fmt::Display for OpScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Applies the script step by step; every intermediate graph is validated.
pub fn replay(g: &PlaneGraph, s: &OpScript) -> Result<PlaneGraph> {
    let mut cur = g.clone();
    for op in &s.ops {
        cur = cur.apply(op)?;
    }
    Ok(cur)
}
