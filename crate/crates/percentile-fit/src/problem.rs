//! The fitting problem: a dataset, a residual family, and how many of the
//! worst residuals the objective writes off as outliers.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::loss::percentile_select;
use crate::residuals::{eval_residual, ResidualFamily};

/// Minimize, over theta, the `(outliers + 1)`-th largest residual of the
/// dataset. With `outliers = 0` this is plain worst-case fitting; raising
/// `outliers` buys breakdown resistance point by point.
#[derive(Clone, Debug)]
pub struct PercentileProblem {
    dataset: Dataset,
    family: ResidualFamily,
    outliers: usize,
}

impl PercentileProblem {
    pub fn new(dataset: Dataset, family: ResidualFamily, outliers: usize) -> Result<Self> {
        family.check_dataset(&dataset)?;
        if outliers >= dataset.len() {
            return Err(Error::OutlierCountOutOfRange {
                outliers,
                len: dataset.len(),
            });
        }
        Ok(Self {
            dataset,
            family,
            outliers,
        })
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn family(&self) -> &ResidualFamily {
        &self.family
    }

    pub fn outliers(&self) -> usize {
        self.outliers
    }

    /// Number of points the objective insists on fitting, `M - O`.
    pub fn inlier_count(&self) -> usize {
        self.dataset.len() - self.outliers
    }

    /// The percentile objective at `theta`: residuals over the whole dataset,
    /// aggregated by dropping the `outliers` largest.
    pub fn objective(&self, theta: &[f64]) -> Result<f64> {
        let mut scratch = Vec::with_capacity(self.dataset.len());
        self.objective_with_scratch(theta, &mut scratch)
    }

    /// Allocation-free variant for enumeration loops; `scratch` is clobbered.
    pub(crate) fn objective_with_scratch(
        &self,
        theta: &[f64],
        scratch: &mut Vec<f64>,
    ) -> Result<f64> {
        scratch.clear();
        for point in self.dataset.iter() {
            scratch.push(eval_residual(&self.family, theta, point)?);
        }
        Ok(percentile_select(scratch, self.outliers))
    }

    /// The `M - O` indices with the smallest residuals at `theta`, ties
    /// broken toward the lower index. Returned sorted ascending.
    pub fn inlier_indices(&self, theta: &[f64]) -> Result<Vec<usize>> {
        let mut residuals = Vec::with_capacity(self.dataset.len());
        for point in self.dataset.iter() {
            residuals.push(eval_residual(&self.family, theta, point)?);
        }
        let mut order: Vec<usize> = (0..residuals.len()).collect();
        order.sort_unstable_by(|&a, &b| residuals[a].total_cmp(&residuals[b]).then(a.cmp(&b)));
        order.truncate(self.inlier_count());
        order.sort_unstable();
        Ok(order)
    }
}
