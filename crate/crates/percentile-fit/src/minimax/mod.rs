//! Worst-case fits on point subsets.
//!
//! Each residual family gets a sub-solver that minimizes the largest residual
//! over a given subset S. These fits are the building blocks of the exact
//! percentile solvers: the full solver enumerates inlier-sized subsets, the
//! small-subset solver enumerates subsets of size d+1.

mod ball;
mod chebyshev;
mod grid;
mod simplex;

pub use ball::enclosing_ball_fit;
pub use chebyshev::{chebyshev_fit, chebyshev_fit_via_lp};
pub use grid::grid_minimax_fit;

pub(crate) use grid::for_each_grid_point;

use crate::data::Dataset;
use crate::error::Result;
use crate::residuals::{eval_residual_vector, ResidualFamily};
use crate::util::close;

/// Outcome of a worst-case fit on one subset.
///
/// `Unique` carries the minimizing parameters and the achieved worst residual
/// (for the ball fit, the squared radius). `DegenerateSkipped` marks subsets
/// that cannot pin down a certified fit, such as rank-deficient linear
/// designs; enumerating solvers count and skip them.
#[derive(Clone, Debug, PartialEq)]
pub enum SubsetFit {
    Unique {
        /// Sorted ascending.
        subset: Vec<usize>,
        theta: Vec<f64>,
        value: f64,
    },
    DegenerateSkipped {
        subset: Vec<usize>,
    },
}

impl SubsetFit {
    pub fn subset(&self) -> &[usize] {
        match self {
            Self::Unique { subset, .. } | Self::DegenerateSkipped { subset } => subset,
        }
    }

    /// Parameters and value when the fit solved.
    pub fn solved(&self) -> Option<(&[f64], f64)> {
        match self {
            Self::Unique { theta, value, .. } => Some((theta, *value)),
            Self::DegenerateSkipped { .. } => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Self::DegenerateSkipped { .. })
    }
}

/// Worst-case fit of `subset` under `family`, dispatching to the family's
/// sub-solver. Black-box families search their declared grid.
pub fn sfit(family: &ResidualFamily, dataset: &Dataset, subset: &[usize]) -> Result<SubsetFit> {
    family.check_dataset(dataset)?;
    match family {
        ResidualFamily::LinearAbs { .. } => chebyshev_fit(dataset, subset),
        ResidualFamily::SqDistance { .. } => enclosing_ball_fit(dataset, subset),
        ResidualFamily::Blackbox(_) => {
            let grid = family
                .search_grid()
                .expect("black-box families carry a grid");
            grid_minimax_fit(dataset, subset, family, grid)
        }
    }
}

/// Re-evaluates a solved fit and checks its certificate:
///
/// * the recomputed worst residual over the subset matches the stored value
///   to 1e-9 relative;
/// * for linear fits on subsets of size d+1, at least d+1 residuals sit
///   within 1e-8 of the value (the equioscillation pattern).
///
/// Degenerate fits and evaluation failures report `false`.
pub fn verify_sfit(fit: &SubsetFit, dataset: &Dataset, family: &ResidualFamily) -> bool {
    let SubsetFit::Unique {
        subset,
        theta,
        value,
    } = fit
    else {
        return false;
    };
    let Ok(residuals) = eval_residual_vector(family, theta, dataset, subset) else {
        return false;
    };
    let recomputed = residuals
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if !close(recomputed, *value, 1e-9) {
        return false;
    }
    if matches!(family, ResidualFamily::LinearAbs { .. }) && subset.len() == family.dim() + 1 {
        let active = residuals
            .iter()
            .filter(|r| (**r - value).abs() <= 1e-8)
            .count();
        if active < family.dim() + 1 {
            return false;
        }
    }
    true
}
