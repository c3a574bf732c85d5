//! Sharp pointwise coefficients for gradient bounds on solutions of the
//! heat equation in the half-space, with `L^p` boundary data.
//!
//! For the Dirichlet problem the bound controls `|grad(u / x_n)|` and for
//! the Neumann problem `|grad u|`, each in terms of the space-time `L^p`
//! norm of the boundary data. The coefficients are surface integrals over
//! the unit sphere weighted by an incomplete-Gamma factor, maximized over
//! a direction vector; for a range of exponents the maximizer is the
//! vertical axis and a closed form is available. This crate evaluates the
//! coefficients both ways, solves the underlying extremal problem over
//! the sphere, and verifies the bounds against the layer-potential
//! representations of the solutions with sampled and near-extremal data.
//!
//! Module map:
//!
//! - [`specfun`]: Gamma family and sphere areas.
//! - [`quad`]: adaptive quadrature and sphere-integral reductions.
//! - [`extremal`]: the direction-vector extremal problem and its
//!   discrete Hoelder-majorization counterpart.
//! - [`coeff`]: the sharp Dirichlet and Neumann coefficients.
//! - [`boundary`]: boundary data on the strip.
//! - [`potential`]: layer potentials, gradients, norms, and the
//!   inequality verification harness.

pub mod boundary;
pub mod coeff;
pub mod error;
pub mod extremal;
pub mod potential;
pub mod quad;
pub mod specfun;

pub use boundary::{BoundaryData, Smoothness};
pub use coeff::{CoefficientResult, Exponent, HeatPoint, Method, Problem};
pub use error::{Error, Result};
pub use quad::QuadratureConfig;
