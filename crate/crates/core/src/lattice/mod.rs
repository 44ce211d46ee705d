//! Lattices, parallelepipeds and successive minima.

mod basis;
mod enumerate;
mod minima;
mod parallelepiped;
mod sublattice;

pub use basis::Lattice;
pub use enumerate::{points_within, LatticePoint, DEFAULT_NODE_BUDGET};
pub(crate) use enumerate::ellipsoid_points;
pub use minima::{successive_minima, successive_minima_with_budget, MinimaProfile, MAX_MINIMA_DIM};
pub use parallelepiped::Parallelepiped;
pub use sublattice::{orthogonal_sublattice, EmbeddedLattice};
