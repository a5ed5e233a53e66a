use thiserror::Error;

/// Errors surfaced by graph construction, decomposition and cover routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The rotation system handed to `PlaneGraph::new` is internally
    /// inconsistent (a dart missing, duplicated, or listed at the wrong
    /// vertex).
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),

    /// An operation that needs a 2-connected graph was given one that is not.
    #[error("graph is not 2-connected: {0}")]
    NotBiconnected(String),

    /// An operation that forbids faces of degree 2 found one.
    #[error("face {0} has degree 2 (parallel edge pair)")]
    BigonPresent(usize),

    /// A face/edge incidence required by the caller does not hold.
    #[error("edge {edge} does not lie on face {face}")]
    EdgeNotOnFace { edge: usize, face: usize },

    /// Perfect-matching routines require every vertex to have degree 3.
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },

    /// Perfect-matching routines require a bridgeless input.
    #[error("edge {0} is a bridge")]
    NotBridgeless(usize),

    /// A routine that needs every face to be a triangle found one that is not.
    #[error("face {face} has degree {degree}, expected 3")]
    NotTriangulated { face: usize, degree: usize },

    /// Loops are not admitted by this routine.
    #[error("edge {0} is a loop")]
    HasLoop(usize),

    /// The input graph has more than one connected component.
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    /// The requested construction needs at least two vertices.
    #[error("graph has {0} vertices, need at least 2")]
    TooSmall(usize),

    /// An odd cycle of length at least five admits no valid partition; this is
    /// the single obstruction for 2-connected inputs.
    #[error("graph is an odd cycle of length {0}; no valid partition exists")]
    OddCycle(usize),

    /// Strict mode rejects inputs containing loop faces or bigons because the
    /// face-hitting guarantee for faces of degree at most 2 is vacuous or
    /// unattainable.
    #[error("strict mode violation: {0}")]
    StrictModeViolation(String),

    /// An internal consistency check failed. This indicates a bug, not bad
    /// input.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
