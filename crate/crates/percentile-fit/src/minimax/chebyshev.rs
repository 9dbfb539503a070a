//! Worst-case (Chebyshev) fit of a linear predictor on a point subset:
//! minimize over theta the largest value of `|y_m - x_m . theta|`, m in S.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg;
use crate::minimax::simplex::{solve_lp, LpOutcome};
use crate::minimax::SubsetFit;

/// Relative cutoff under which a null-space component counts as zero, making
/// the subset degenerate.
const LAMBDA_REL_TOL: f64 = 1e-9;

/// Exact minimax linear fit on `subset`.
///
/// For `|S| = d + 1` the optimum is closed-form: a non-zero `lambda` in the
/// null space of the transposed design fixes the residual sign pattern
/// `s = sign(lambda)`, and solving the square system `[X | s] (theta; t) = y`
/// makes every residual hit `|t|` with those signs. If the design loses rank
/// or some `lambda` component vanishes, the subset cannot pin down a unique
/// fit and is reported as degenerate.
///
/// For `|S| > d + 1` the same problem is solved as a linear program
/// (`min t` with `-t <= y_m - x_m . theta <= t`); the optimal value exists
/// for any design, so this path never skips.
pub fn chebyshev_fit(dataset: &Dataset, subset: &[usize]) -> Result<SubsetFit> {
    if !dataset.labeled() {
        return Err(Error::LabelsRequired {
            family: "linear_abs",
        });
    }
    dataset.check_subset(subset)?;
    let d = dataset.feature_dim();
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    if subset.len() < d + 1 {
        return Err(Error::SubsetTooSmall {
            size: subset.len(),
            required: d + 1,
        });
    }

    if subset.len() == d + 1 {
        fit_square(dataset, subset, d)
    } else {
        fit_lp(dataset, subset, d)
    }
}

/// The same fit, forced through the linear-programming path regardless of
/// subset size. Exists so the closed-form `|S| = d + 1` solution can be
/// audited against an independent solver; `chebyshev_fit` is the right entry
/// point everywhere else.
pub fn chebyshev_fit_via_lp(dataset: &Dataset, subset: &[usize]) -> Result<SubsetFit> {
    if !dataset.labeled() {
        return Err(Error::LabelsRequired {
            family: "linear_abs",
        });
    }
    dataset.check_subset(subset)?;
    let d = dataset.feature_dim();
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    if subset.len() < d + 1 {
        return Err(Error::SubsetTooSmall {
            size: subset.len(),
            required: d + 1,
        });
    }
    fit_lp(dataset, subset, d)
}

fn fit_square(dataset: &Dataset, subset: Vec<usize>, d: usize) -> Result<SubsetFit> {
    // Transposed design: d rows, d+1 columns.
    let design_t: Vec<Vec<f64>> = (0..d)
        .map(|j| {
            subset
                .iter()
                .map(|&m| dataset.point(m).feature()[j])
                .collect()
        })
        .collect();
    let Some(lambda) = linalg::null_vector(&design_t) else {
        return Ok(SubsetFit::DegenerateSkipped { subset });
    };
    let lambda_max = lambda.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if lambda
        .iter()
        .any(|v| v.abs() <= LAMBDA_REL_TOL * lambda_max)
    {
        return Ok(SubsetFit::DegenerateSkipped { subset });
    }

    // [X | s] (theta; t) = y, with s the sign pattern of lambda.
    let mut system = Vec::with_capacity(d + 1);
    let mut rhs = Vec::with_capacity(d + 1);
    for (row, &m) in subset.iter().enumerate() {
        let point = dataset.point(m);
        let mut coeffs = Vec::with_capacity(d + 1);
        coeffs.extend_from_slice(point.feature());
        coeffs.push(lambda[row].signum());
        system.push(coeffs);
        rhs.push(point.label().expect("labeled dataset"));
    }
    let Some(solution) = linalg::solve(system, rhs) else {
        // Unreachable when lambda has no zero components, kept as a guard
        // against borderline conditioning.
        return Ok(SubsetFit::DegenerateSkipped { subset });
    };
    let theta = solution[..d].to_vec();
    let value = solution[d].abs();
    Ok(SubsetFit::Unique {
        subset,
        theta,
        value,
    })
}

fn fit_lp(dataset: &Dataset, subset: Vec<usize>, d: usize) -> Result<SubsetFit> {
    // Variables (theta_plus, theta_minus, t), all non-negative.
    let n = 2 * d + 1;
    let mut c = vec![0.0; n];
    c[2 * d] = 1.0;
    let mut rows = Vec::with_capacity(2 * subset.len());
    let mut rhs = Vec::with_capacity(2 * subset.len());
    for &m in &subset {
        let point = dataset.point(m);
        let y = point.label().expect("labeled dataset");
        let mut upper = vec![0.0; n];
        let mut lower = vec![0.0; n];
        for (j, &x) in point.feature().iter().enumerate() {
            upper[j] = x;
            upper[d + j] = -x;
            lower[j] = -x;
            lower[d + j] = x;
        }
        upper[2 * d] = -1.0;
        lower[2 * d] = -1.0;
        rows.push(upper);
        rhs.push(y);
        rows.push(lower);
        rhs.push(-y);
    }

    match solve_lp(&c, &rows, &rhs) {
        LpOutcome::Optimal { x, value } => {
            let theta: Vec<f64> = (0..d).map(|j| x[j] - x[d + j]).collect();
            Ok(SubsetFit::Unique {
                subset,
                theta,
                value: value.max(0.0),
            })
        }
        // The program is always feasible (theta = 0, t = max |y|) and bounded
        // (t >= 0); reaching here means the tableau lost the solution to
        // conditioning, so the subset is reported unsolved rather than
        // inventing a value.
        LpOutcome::Infeasible | LpOutcome::Unbounded => {
            Ok(SubsetFit::DegenerateSkipped { subset })
        }
    }
}
