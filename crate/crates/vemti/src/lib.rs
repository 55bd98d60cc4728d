//! Plane-strain linear elasticity for transversely isotropic materials on
//! arbitrary polygonal meshes, discretized with a low-order virtual element
//! method and compared against conforming Q1/Q2 quadrilateral elements.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! mesh generation -> fibre-direction averaging -> element stiffness
//!                 -> sparse assembly + solve    -> probe / sweep drivers
//! ```
//!
//! * [`constitutive`] — the transversely isotropic law, parameter
//!   conversions and Voigt-form stiffness/compliance matrices.
//! * [`mesh`] — structured quad, hexagon-dominant, and Lloyd-relaxed
//!   Voronoi meshes of the unit square, plus domain mapping and file I/O.
//! * [`fibre`] — analytic fibre-direction fields and the element-level
//!   averaging strategies (centroid, nodal, equal and varying weight).
//! * [`vem`] — element kernels: strain projection, consistency and
//!   stabilization stiffness for arbitrary polygons.
//! * [`fem`] — reference Q1 (bilinear) and Q2 (biquadratic) elements.
//! * [`sparse`] — CSR storage, reverse Cuthill-McKee ordering, envelope
//!   Cholesky and a Jacobi-preconditioned conjugate gradient.
//! * [`assembly`] — global assembly, boundary conditions, solve, probes.
//! * [`benchmarks`] — the Cook membrane and bending-beam problems with the
//!   analytical beam solution and sweep drivers.
//! * [`cli`] — the `mesh` / `run` / `sweep` command front end used by the
//!   `vemti` binary.
//!
//! Runnable demonstrations live under `examples/`; start with
//! `cargo run --example beam_convergence`.

pub mod assembly;
pub mod benchmarks;
pub mod cli;
pub mod constitutive;
mod error;
pub mod fem;
pub mod fibre;
pub mod mesh;
pub mod sparse;
pub mod vem;

pub use error::{Error, Result};

/// 2D point, in meters.
pub type Point2 = nalgebra::Point2<f64>;
/// 2D vector.
pub type Vector2 = nalgebra::Vector2<f64>;
