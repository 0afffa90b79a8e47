//! Second-order finite-volume schemes for the one-dimensional
//! advection-diffusion-reaction equation
//!
//! ```text
//! q_t + lambda q_x = (alpha q_x)_x + beta q
//! ```
//!
//! The crate provides ADER (generalized Riemann problem) and MUSCL-Hancock
//! updates, a first-order reference scheme, von Neumann amplification
//! analysis, the five standard benchmark problems and a mesh-refinement
//! harness that emits error/order tables.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod convergence;
pub mod error;
pub mod grid;
pub mod io;
pub mod problems;
pub mod schemes;
pub mod solver;
pub mod specfile;
pub mod stability;

pub mod cli;

pub use error::{Error, Result};
pub use grid::{BoundaryCondition, DiffusionModel, Field, Grid1D, ProblemSpec};
pub use schemes::{SchemeKind, StepParams};
