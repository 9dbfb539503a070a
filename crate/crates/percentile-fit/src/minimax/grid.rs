//! Grid search over a box: the worst-case fit for families with no exact
//! sub-solver. Supports one or two parameters; beyond that the grid explodes
//! and the caller should not be here.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::minimax::SubsetFit;
use crate::residuals::{eval_residual, GridSpec, ResidualFamily};

/// Visits every grid node in lexicographic coordinate order (axis 0 outer).
/// The callback returns an error to abort the sweep.
pub(crate) fn for_each_grid_point<F>(spec: &GridSpec, mut f: F) -> Result<()>
where
    F: FnMut(&[f64]) -> Result<()>,
{
    let res = spec.resolution();
    match spec.dim() {
        1 => {
            for i in 0..res {
                f(&[spec.coordinate(0, i)])?;
            }
        }
        2 => {
            for i in 0..res {
                let x = spec.coordinate(0, i);
                for j in 0..res {
                    f(&[x, spec.coordinate(1, j)])?;
                }
            }
        }
        dim => return Err(Error::GridDimTooLarge { dim }),
    }
    Ok(())
}

/// Minimizes the largest subset residual over the grid. Ties keep the first
/// (lexicographically smallest) grid coordinates, so the result does not
/// depend on evaluation order tricks.
pub fn grid_minimax_fit(
    dataset: &Dataset,
    subset: &[usize],
    family: &ResidualFamily,
    grid: &GridSpec,
) -> Result<SubsetFit> {
    dataset.check_subset(subset)?;
    if grid.dim() != family.dim() {
        return Err(Error::DimensionMismatch {
            context: "grid box",
            expected: family.dim(),
            actual: grid.dim(),
        });
    }
    let mut subset = subset.to_vec();
    subset.sort_unstable();

    let mut best_value = f64::INFINITY;
    let mut best_theta: Vec<f64> = Vec::new();
    for_each_grid_point(grid, |theta| {
        let mut worst = f64::NEG_INFINITY;
        for &m in &subset {
            let r = eval_residual(family, theta, dataset.point(m))?;
            if r > worst {
                worst = r;
            }
        }
        if worst < best_value {
            best_value = worst;
            best_theta = theta.to_vec();
        }
        Ok(())
    })?;

    Ok(SubsetFit::Unique {
        subset,
        theta: best_theta,
        value: best_value,
    })
}
