//! Sphere-embedded multigraphs (rotation systems) and the constructive
//! machinery around them: carving and branch decompositions with bond,
//! linked and disc certification, embedded minor and immersion deciders
//! with replayable witnesses, medial digraphs, and grid embeddings.

pub mod corpus;
pub mod decomposition;
pub mod embedded_relations;
mod error;
pub mod gridlib;
pub mod medial;
pub mod plane_graph;
mod unionfind;

pub use error::{Error, Result};
pub use plane_graph::PlaneGraph;
