//! Exact rational convex geometry: cones in both representations, tailed
//! polyhedra with their support functions and normal quasifans, image fans
//! of linear projections and fiber polyhedra.

mod cone;
pub mod dd;
mod fan;
mod hilbert;
mod polyhedron;

pub use cone::Cone;
pub use fan::{fiber_coefficient, fiber_polyhedron, image_fan, QuasiFan};
pub use polyhedron::{Polyhedron, TailedPolyhedron};
