//! Spectral lower bounds on the quantum distance-k chromatic number.
//!
//! The crate bundles the pieces needed to sandwich `χ_kq(G)` between an
//! optimized eigenvalue bound and the exact classical value `χ_k(G)`:
//!
//! - [`graph`]: graphs, graph6 / edge-list I/O, families, distances, power graphs
//! - [`spectral`]: Jacobi eigendecomposition, inertia, `p(A)` statistics
//! - [`lp`]: dense two-phase simplex and sign-pattern programs
//! - [`bounds`]: the optimized inertial and ratio bounds, certification
//! - [`exact`]: branch-and-bound chromatic and independence numbers
//! - [`quantum`]: projector colorings, pinching maps and their identities

pub mod bounds;
pub mod error;
pub mod exact;
pub mod graph;
pub mod lp;
pub mod quantum;
pub mod spectral;

pub use error::{Error, Result};
