//! Star unfolding of convex polyhedra with respect to a quasigeodesic loop.
//!
//! The pipeline traces (or accepts) a loop `Q`, cuts a shortest path from
//! every vertex to `Q`, flattens each half by gluing curvature triangles
//! into those cuts, and joins the two planar halves along one uncut
//! segment of `Q`.

pub mod develop;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod mesh;
pub mod pipeline;
pub mod qloop;
pub mod report;
pub mod solids;
pub mod spath;
pub mod unfold;
pub mod verify;

pub use error::{Error, Result};
pub use mesh::{load_off, Polyhedron};
