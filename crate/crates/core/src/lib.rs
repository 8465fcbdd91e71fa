//! Spectral solvers for the two-sided fractional reaction-diffusion problem
//!
//! ```text
//!     -[theta * D_L^alpha + (1 - theta) * D_R^alpha] u + mu * u = f   on (-1, 1),
//!     u(-1) = u(1) = 0,
//! ```
//!
//! where `D_L^alpha` / `D_R^alpha` are the left- and right-sided
//! Riemann-Liouville derivatives of order `alpha` in `(1, 2)` and
//! `theta` in `[0, 1]` weights the two sides.
//!
//! The solution is expanded in the weighted Jacobi basis
//! `(1-x)^sigma (1+x)^sigma_star P_n^{sigma,sigma_star}(x)`, whose images under
//! the fractional operator are plain Jacobi polynomials scaled by explicit
//! eigenvalue-like factors. Two discretizations are provided behind the
//! [`solver::Scheme`] trait and selected by name at runtime:
//!
//! * `galerkin` — trial and test space both weighted by `(sigma, sigma_star)`;
//! * `petrov-galerkin` — test space weighted by `(sigma_star, sigma)`, which
//!   diagonalizes the fractional stiffness matrix.
//!
//! The [`convergence`] module measures errors against fine reference solutions
//! and produces rate tables; [`verify`] bundles the self-checks used by the
//! `verify` CLI subcommand.

pub mod convergence;
pub mod error;
pub mod linalg;
pub mod operator;
pub mod quadrature;
pub mod rhs;
pub mod solver;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use operator::OperatorParams;
pub use quadrature::QuadratureRule;
pub use solver::{Method, Scheme, SchemeRegistry, SpectralSolution};
pub use special::WeightExponents;
