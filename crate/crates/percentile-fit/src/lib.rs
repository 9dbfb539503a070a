//! Outlier-robust model fitting by minimizing a percentile of the residuals.
//!
//! Classical fits minimize a sum or a maximum over all residuals, so a single
//! wild point can drag the estimate arbitrarily far. This crate minimizes the
//! (O+1)-th largest residual instead: the fit is allowed to write off its O
//! worst points entirely, and the optimum is exact, not a local search.
//!
//! The engine rests on two subset identities:
//!
//! * the optimum over all of the data equals the best worst-case fit among
//!   all subsets of inlier size `M - O` ([`solvers::solve_theorem1`]);
//! * for convex residuals, subsets of size `d + 1` suffice when
//!   `d + 1 < M - O`, which shrinks the enumeration dramatically
//!   ([`solvers::solve_theorem2`]).
//!
//! Each enumerated subset is solved by an exact minimax sub-solver: a
//! Chebyshev fit for linear absolute residuals, a minimum enclosing ball for
//! squared point distances, or a grid scan for black-box residuals.
//!
//! ```
//! use percentile_fit::{Dataset, PercentileProblem, ResidualFamily};
//! use percentile_fit::solvers::{solve_theorem2, SolveOptions};
//!
//! // Four points hugging the origin and one saboteur.
//! let points = Dataset::from_features(vec![
//!     vec![0.0, 0.1],
//!     vec![0.1, 0.0],
//!     vec![-0.1, 0.0],
//!     vec![0.0, -0.1],
//!     vec![9.0, 9.0],
//! ])?;
//! let problem = PercentileProblem::new(points, ResidualFamily::sq_distance(2)?, 1)?;
//! let report = solve_theorem2(&problem, &SolveOptions::default())?;
//! assert!(report.theta[0].abs() < 1e-9 && report.theta[1].abs() < 1e-9);
//! assert_eq!(report.inlier_indices, vec![0, 1, 2, 3]);
//! # Ok::<(), percentile_fit::Error>(())
//! ```
//!
//! The `percentile-fit` binary exposes the same machinery as `fit`, `oracle`,
//! and `benchmark` subcommands over CSV and JSON files.

pub mod baselines;
pub mod bench;
pub mod cli;
pub mod combinations;
pub mod data;
pub mod io;
pub mod loss;
pub mod minimax;
pub mod problem;
pub mod residuals;
pub mod solvers;

mod error;
mod linalg;
mod util;

pub use data::{DataPoint, Dataset};
pub use error::{Error, Result};
pub use loss::{max_loss, percentile_loss, quad_loss, ResidualVector};
pub use problem::PercentileProblem;
pub use residuals::{GridSpec, ResidualFamily};
pub use solvers::{FitReport, SolveOptions, SolverKind};
