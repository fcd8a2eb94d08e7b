//! Exact rational convex geometry: cones with dual (V and H)
//! representations, sigma-polyhedra, normal quasi-fans, and regular
//! subdivision.

mod cone;
mod polyhedron;
mod subdivision;

pub use cone::{Cone, double_description};
pub use polyhedron::{Polyhedron, QuasiFan, SupportValue};
pub use subdivision::{
    multiplicity, parallelepiped_lattice_points, parallelepiped_point, regularize,
    stellar_subdivide, triangulate,
};
