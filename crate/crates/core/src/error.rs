use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("not a closed 2-manifold: {0}")]
    Manifold(String),
    #[error("face {face} is not planar (deviation {deviation:.3e})")]
    NonPlanarFace { face: usize, deviation: f64 },
    #[error("face {face} is not convex at corner {corner}")]
    NonConvexFace { face: usize, corner: usize },
    #[error("polyhedron is not convex: vertex {vertex} lies outside face {face} by {distance:.3e}")]
    NotConvex { vertex: usize, face: usize, distance: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("geodesic exceeded {crossings} edge crossings without closing")]
    CrossingCap { crossings: usize },
    #[error("geodesic runs along edge {edge:?}")]
    AlongEdge { edge: [usize; 2] },
    #[error("loop branches meet at vertex {0}")]
    MeetAtVertex(usize),
    #[error("curve is not a quasigeodesic loop: {0}")]
    NotQuasigeodesic(String),
    #[error("slicing failed: {0}")]
    Slicing(String),
    #[error("shortest-path search for vertex {vertex} exceeded its cap (best upper bound {best:?})")]
    SearchCap { vertex: usize, best: Option<f64> },
    #[error("no shortest path to the loop found from vertex {0}")]
    NoPath(usize),
    #[error("development is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("no supporting segment found among {candidates} candidates")]
    NoSeam { candidates: usize },
    #[error("geometry error: {0}")]
    Geometry(String),
}

impl Error {
    /// True for errors caused by malformed or unsupported input files.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Manifold(_)
                | Error::NonPlanarFace { .. }
                | Error::NonConvexFace { .. }
                | Error::NotConvex { .. }
                | Error::Invalid(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
