use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("rotation system is not a sphere embedding (component of {vertex}: V-E+F = {euler})")]
    NotPlanar { vertex: String, euler: i64 },
    #[error("bad twin pairing: {0}")]
    BadTwin(String),
    #[error("invalid nesting: {0}")]
    BadNesting(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    Edgeless,
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("vertex sets overlap")]
    Overlap,
    #[error("cannot contract self-loop {0}")]
    SelfLoopContract(String),
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { vertex: String, edge: String },
    #[error("directed lift needs head(e) = v = tail(e') at {0}")]
    DirectedMismatch(String),
    #[error("lift arc at {0} would cross another edge")]
    CrossingArc(String),
    #[error("tree labels do not match the vertex set: {0}")]
    LabelMismatch(String),
    #[error("size cap exceeded: {0}")]
    TooLarge(String),
    #[error("the pair of tree edges is already linked")]
    PairIsLinked,
    #[error("tree edge has a leaf endpoint")]
    LeafEndpoint,
    #[error("two of the three cuts at an internal vertex are empty")]
    DisconnectedAssumptionViolated,
    #[error("graph is not 2-vertex-connected")]
    Not2VC,
    #[error("tree has no root")]
    Unrooted,
    #[error("no disc certificate for tree edge {0}")]
    NoCertificate(usize),
    #[error("paths are not edge-disjoint")]
    NotEdgeDisjoint,
    #[error("undirected path needs an orientation")]
    UndirectedAmbiguity,
    #[error("bad address in script: {0}")]
    BadAddress(String),
    #[error("source edge of medial vertex {0} is a self-loop")]
    SelfLoopContractImage(String),
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("bad wall witness: {0}")]
    BadWitness(String),
    #[error("graph has no outer face marker")]
    NoOuterFace,
    #[error("decompositions refer to different graphs")]
    GraphMismatch,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
