use super::{Builder, PlaneGraph};
use crate::{Error, Result};

impl PlaneGraph {
    /// Dual graph: one vertex per face, rotation following the face walk.
    /// Dual edges and darts keep the names of their primal counterparts.
    pub fn dual(&self) -> Result<PlaneGraph> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.num_edges() == 0 {
            // a single vertex has one face; its dual is again a single vertex
            let mut b = Builder::new(false);
            b.add_vertex("f0");
            return b.build();
        }
        let mut b = Builder::new(false);
        for f in 0..self.faces().len() {
            b.add_vertex(format!("f{f}"));
        }
        let mut dual_dart = vec![0; self.num_darts()];
        for e in 0..self.num_edges() {
            let (a, c) = b.add_edge(self.edge_name(e));
            let [d0, d1] = self.edge_darts(e);
            dual_dart[d0] = a;
            dual_dart[d1] = c;
        }
        for (f, face) in self.faces().iter().enumerate() {
            b.set_rotation(f, face.darts.iter().map(|&d| dual_dart[d]).collect());
        }
        let raw = b.raw_mut_names();
        for d in 0..self.num_darts() {
            raw[dual_dart[d]] = self.dart_name(d).to_string();
        }
        b.build()
    }
}
