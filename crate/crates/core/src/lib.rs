//! Solvers for the stationary deflection of an electrostatic membrane,
//! -Laplace(u) = lambda f(x) / (1 - u)^2 with zero boundary data on slabs
//! and N-balls.
//!
//! The crate computes:
//!
//! - analytic lower and upper bounds on the pull-in voltage lambda*
//!   ([`bounds`]),
//! - minimal solutions by monotone iteration and damped Newton on a radial
//!   finite-difference grid, with linearized-stability eigenvalues
//!   ([`radial`]),
//! - complete bifurcation diagrams via an initial-value shooting map for
//!   power-law profiles and pseudo-arclength continuation for general
//!   profiles ([`bifurcation`]),
//! - closed-form large-deflection asymptotics and the four-regime
//!   multiplicity classification ([`asymptotics`]).
//!
//! ```
//! use pullin::{bifurcation, bounds, Domain, Profile};
//!
//! let disk = Domain::disk();
//! let uniform = Profile::constant();
//!
//! // Analytic bracket, then the pull-in voltage from the shooting map.
//! let report = bounds::bounds_report(&disk, &uniform)?;
//! let branch = bifurcation::trace_branch(2, 0.0, 100.0, 400)?;
//! assert!(report.lower_best <= branch.lambda_star);
//! assert!(branch.lambda_star <= report.upper_best);
//! assert!((branch.lambda_star - 0.789).abs() < 5e-3);
//! # Ok::<(), pullin::Error>(())
//! ```

#![allow(clippy::needless_range_loop)] // indexed loops read better in stencil math
#![allow(clippy::neg_cmp_op_on_partial_ord)] // !(x > 0) deliberately rejects NaN

pub mod asymptotics;
pub mod benchmarks;
pub mod bifurcation;
pub mod bounds;
pub mod domain;
pub mod error;
pub mod ode;
pub mod quad;
pub mod radial;
pub mod roots;
pub mod special;

pub use domain::{first_eigenpair, integrate_f_phi, Domain, DomainKind, Eigenpair, Profile, ProfileKind};
pub use error::{Error, Result};
pub use special::{bessel_j, bessel_j0, bessel_j1, j0_first_zero, unit_ball_volume};
