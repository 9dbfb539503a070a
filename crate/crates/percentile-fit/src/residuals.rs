//! Residual families: how a parameter vector is scored against one point.
//!
//! A family fixes the parameter dimension `d`, whether it needs labels, and
//! the per-point residual. The built-in families also come with exact
//! worst-case fits on small subsets (see the `minimax` module); black-box
//! families fall back to grid search over a declared box.

use std::fmt;
use std::sync::Arc;

use crate::data::{DataPoint, Dataset};
use crate::error::{Error, Result};
use crate::loss::ResidualVector;

/// Axis-aligned search box plus per-axis resolution for grid-backed fits.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    lo: Vec<f64>,
    hi: Vec<f64>,
    resolution: usize,
}

impl GridSpec {
    /// A degenerate box (`lo == hi` on some axis) is allowed; every grid point
    /// on that axis collapses to the same coordinate.
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, resolution: usize) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::GridBoxInvalid {
                reason: format!(
                    "bounds must be non-empty and of equal length, got {} and {}",
                    lo.len(),
                    hi.len()
                ),
            });
        }
        if lo.len() > 2 {
            return Err(Error::GridDimTooLarge { dim: lo.len() });
        }
        if !lo.iter().chain(hi.iter()).all(|v| v.is_finite()) {
            return Err(Error::GridBoxInvalid {
                reason: "bounds must be finite".to_string(),
            });
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::GridBoxInvalid {
                reason: "lower bound exceeds upper bound".to_string(),
            });
        }
        if resolution < 2 {
            return Err(Error::GridResolutionTooSmall { resolution });
        }
        Ok(Self { lo, hi, resolution })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Grid spacing along one axis.
    pub fn spacing(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / (self.resolution - 1) as f64
    }

    /// Coordinate of grid node `index` along `axis`.
    pub(crate) fn coordinate(&self, axis: usize, index: usize) -> f64 {
        if index + 1 == self.resolution {
            self.hi[axis]
        } else {
            self.lo[axis] + self.spacing(axis) * index as f64
        }
    }

    pub fn total_points(&self) -> u128 {
        let mut total: u128 = 1;
        for _ in 0..self.dim() {
            total *= self.resolution as u128;
        }
        total
    }
}

type BlackboxFn = dyn Fn(&[f64], &DataPoint) -> f64 + Send + Sync;

/// User-supplied residual with a declared convexity flag and search box.
#[derive(Clone)]
pub struct BlackboxFamily {
    dim: usize,
    convex: bool,
    search: GridSpec,
    eval: Arc<BlackboxFn>,
}

impl fmt::Debug for BlackboxFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackboxFamily")
            .field("dim", &self.dim)
            .field("convex", &self.convex)
            .field("search", &self.search)
            .finish_non_exhaustive()
    }
}

/// Per-point residual families understood by the solvers.
#[derive(Clone, Debug)]
pub enum ResidualFamily {
    /// `|y - x . theta|`: absolute error of a linear predictor. Labels
    /// required, `d` equals the feature dimension.
    LinearAbs { dim: usize },
    /// `||x - theta||^2`: squared distance to a center. No labels, `d` equals
    /// the feature dimension. Strictly convex, so small-subset fits are
    /// always unique.
    SqDistance { dim: usize },
    /// Arbitrary user residual, solved by grid search only.
    Blackbox(BlackboxFamily),
}

impl ResidualFamily {
    pub fn linear_abs(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                context: "family dimension",
                expected: 1,
                actual: 0,
            });
        }
        Ok(Self::LinearAbs { dim })
    }

    pub fn sq_distance(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                context: "family dimension",
                expected: 1,
                actual: 0,
            });
        }
        Ok(Self::SqDistance { dim })
    }

    pub fn blackbox<F>(dim: usize, convex: bool, search: GridSpec, eval: F) -> Result<Self>
    where
        F: Fn(&[f64], &DataPoint) -> f64 + Send + Sync + 'static,
    {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                context: "family dimension",
                expected: 1,
                actual: 0,
            });
        }
        if dim > 2 {
            return Err(Error::BlackboxDimTooLarge { dim });
        }
        if search.dim() != dim {
            return Err(Error::DimensionMismatch {
                context: "black-box search box",
                expected: dim,
                actual: search.dim(),
            });
        }
        Ok(Self::Blackbox(BlackboxFamily {
            dim,
            convex,
            search,
            eval: Arc::new(eval),
        }))
    }

    /// Parameter dimension `d`.
    pub fn dim(&self) -> usize {
        match self {
            Self::LinearAbs { dim } | Self::SqDistance { dim } => *dim,
            Self::Blackbox(b) => b.dim,
        }
    }

    pub fn convex(&self) -> bool {
        match self {
            Self::LinearAbs { .. } | Self::SqDistance { .. } => true,
            Self::Blackbox(b) => b.convex,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::LinearAbs { .. } => "linear_abs",
            Self::SqDistance { .. } => "sq_distance",
            Self::Blackbox(_) => "blackbox",
        }
    }

    /// Search box for grid-backed fits, if the family carries one.
    pub fn search_grid(&self) -> Option<&GridSpec> {
        match self {
            Self::Blackbox(b) => Some(&b.search),
            _ => None,
        }
    }

    /// Whether the family has an exact, certified-unique fit on subsets of
    /// size `d + 1`. This is what the small-subset solver requires.
    pub fn has_exact_small_fit(&self) -> bool {
        matches!(self, Self::LinearAbs { .. } | Self::SqDistance { .. })
    }

    /// Checks that `dataset` is shaped for this family.
    pub fn check_dataset(&self, dataset: &Dataset) -> Result<()> {
        match self {
            Self::LinearAbs { dim } => {
                if !dataset.labeled() {
                    return Err(Error::LabelsRequired {
                        family: self.name(),
                    });
                }
                if dataset.feature_dim() != *dim {
                    return Err(Error::DimensionMismatch {
                        context: "dataset feature dimension",
                        expected: *dim,
                        actual: dataset.feature_dim(),
                    });
                }
            }
            Self::SqDistance { dim } => {
                if dataset.labeled() {
                    return Err(Error::LabelsUnexpected {
                        family: self.name(),
                    });
                }
                if dataset.feature_dim() != *dim {
                    return Err(Error::DimensionMismatch {
                        context: "dataset feature dimension",
                        expected: *dim,
                        actual: dataset.feature_dim(),
                    });
                }
            }
            Self::Blackbox(_) => {}
        }
        Ok(())
    }
}

/// Residual of `theta` at a single point.
pub fn eval_residual(family: &ResidualFamily, theta: &[f64], point: &DataPoint) -> Result<f64> {
    if theta.len() != family.dim() {
        return Err(Error::DimensionMismatch {
            context: "theta",
            expected: family.dim(),
            actual: theta.len(),
        });
    }
    match family {
        ResidualFamily::LinearAbs { dim } => {
            if point.feature().len() != *dim {
                return Err(Error::DimensionMismatch {
                    context: "point feature",
                    expected: *dim,
                    actual: point.feature().len(),
                });
            }
            let y = point.label().ok_or(Error::LabelsRequired {
                family: "linear_abs",
            })?;
            let pred: f64 = point
                .feature()
                .iter()
                .zip(theta)
                .map(|(x, t)| x * t)
                .sum();
            Ok((y - pred).abs())
        }
        ResidualFamily::SqDistance { dim } => {
            if point.feature().len() != *dim {
                return Err(Error::DimensionMismatch {
                    context: "point feature",
                    expected: *dim,
                    actual: point.feature().len(),
                });
            }
            Ok(point
                .feature()
                .iter()
                .zip(theta)
                .map(|(x, t)| (x - t) * (x - t))
                .sum())
        }
        ResidualFamily::Blackbox(b) => {
            let v = (b.eval)(theta, point);
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    context: "black-box residual",
                });
            }
            Ok(v)
        }
    }
}

/// Residuals of `theta` over the given subset of point indices, in subset
/// order. The subset must be non-empty, in range, and free of duplicates.
pub fn eval_residual_vector(
    family: &ResidualFamily,
    theta: &[f64],
    dataset: &Dataset,
    subset: &[usize],
) -> Result<ResidualVector> {
    dataset.check_subset(subset)?;
    let mut values = Vec::with_capacity(subset.len());
    for &i in subset {
        values.push(eval_residual(family, theta, dataset.point(i))?);
    }
    ResidualVector::new(values)
}
