//! Non-robust and classically-robust comparison estimators: least squares,
//! least absolute deviations, and a Huber M-estimator for the centroid
//! setting.
//!
//! These exist to be beaten (or not) by the percentile solvers in the
//! benchmark harness; none of them knows the outlier count.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg;
use crate::problem::PercentileProblem;
use crate::residuals::ResidualFamily;

pub const DEFAULT_HUBER_R: f64 = 1.34;
pub const DEFAULT_HUBER_TOL: f64 = 1e-10;
pub const DEFAULT_HUBER_MAX_ITER: usize = 500;

/// A baseline's answer plus how it got there.
#[derive(Clone, Debug)]
pub struct BaselineEstimate {
    /// "least_squares", "l1", or "huber".
    pub method: &'static str,
    pub theta: Vec<f64>,
    /// Iteration count for iterative methods; 0 for closed forms.
    pub iterations: usize,
    /// False only when an iterative method hit its iteration cap.
    pub converged: bool,
}

/// Minimizer of the sum of squared residuals: the coordinate mean for
/// centroids, the normal-equations solution for linear models.
pub fn least_squares_fit(problem: &PercentileProblem) -> Result<BaselineEstimate> {
    let dataset = problem.dataset();
    let theta = match problem.family() {
        ResidualFamily::SqDistance { .. } => mean_point(dataset),
        ResidualFamily::LinearAbs { dim } => normal_equations(dataset, *dim)?,
        ResidualFamily::Blackbox(_) => {
            return Err(Error::UnsupportedFamily {
                op: "least_squares_fit",
                family: problem.family().name(),
            })
        }
    };
    Ok(BaselineEstimate {
        method: "least_squares",
        theta,
        iterations: 0,
        converged: true,
    })
}

/// Minimizer of the summed l1 distances to a centroid: the objective is
/// separable, so this is the coordinate-wise median (midpoint of the two
/// middle values on even counts).
pub fn l1_fit(problem: &PercentileProblem) -> Result<BaselineEstimate> {
    if !matches!(problem.family(), ResidualFamily::SqDistance { .. }) {
        return Err(Error::UnsupportedFamily {
            op: "l1_fit",
            family: problem.family().name(),
        });
    }
    let dataset = problem.dataset();
    let dim = dataset.feature_dim();
    let mut theta = Vec::with_capacity(dim);
    let mut column: Vec<f64> = Vec::with_capacity(dataset.len());
    for j in 0..dim {
        column.clear();
        column.extend(dataset.iter().map(|p| p.feature()[j]));
        column.sort_unstable_by(f64::total_cmp);
        let n = column.len();
        theta.push(if n % 2 == 1 {
            column[n / 2]
        } else {
            0.5 * (column[n / 2 - 1] + column[n / 2])
        });
    }
    Ok(BaselineEstimate {
        method: "l1",
        theta,
        iterations: 0,
        converged: true,
    })
}

/// Huber M-estimator of a centroid: minimizes the summed Huber loss of the
/// Euclidean distances by iteratively reweighted averaging, starting from
/// the mean. Weight of a point at distance t is min(1, r/t); convergence is
/// a step norm below `tol`. Hitting `max_iter` flags `converged = false`
/// rather than erroring.
pub fn huber_fit(
    problem: &PercentileProblem,
    r: f64,
    tol: f64,
    max_iter: usize,
) -> Result<BaselineEstimate> {
    if !matches!(problem.family(), ResidualFamily::SqDistance { .. }) {
        return Err(Error::UnsupportedFamily {
            op: "huber_fit",
            family: problem.family().name(),
        });
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidConfig {
            reason: format!("huber threshold must be positive and finite, got {r}"),
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidConfig {
            reason: format!("huber tolerance must be positive and finite, got {tol}"),
        });
    }
    if max_iter == 0 {
        return Err(Error::InvalidConfig {
            reason: "huber max_iter must be at least 1".to_string(),
        });
    }

    let dataset = problem.dataset();
    let dim = dataset.feature_dim();
    let mut theta = mean_point(dataset);
    #[cfg(debug_assertions)]
    let mut last_objective = huber_objective(dataset, &theta, r)?;

    let mut weighted = vec![0.0; dim];
    for iteration in 1..=max_iter {
        weighted.iter_mut().for_each(|w| *w = 0.0);
        let mut weight_sum = 0.0;
        for point in dataset.iter() {
            let x = point.feature();
            let dist = distance(x, &theta);
            // Coincident points sit in the quadratic regime; skip the
            // division entirely rather than trusting r/0.
            let w = if dist < 1e-12 { 1.0 } else { (r / dist).min(1.0) };
            weight_sum += w;
            for (acc, &xj) in weighted.iter_mut().zip(x) {
                *acc += w * xj;
            }
        }
        let mut step2 = 0.0;
        for (t, &acc) in theta.iter_mut().zip(&weighted) {
            let next = acc / weight_sum;
            step2 += (next - *t) * (next - *t);
            *t = next;
        }
        #[cfg(debug_assertions)]
        {
            // Reweighting majorizes the Huber loss, so each update descends.
            let objective = huber_objective(dataset, &theta, r)?;
            debug_assert!(
                objective <= last_objective + 1e-9 * (1.0 + last_objective.abs()),
                "IRLS ascent: {last_objective} -> {objective}"
            );
            last_objective = objective;
        }
        if step2.sqrt() < tol {
            return Ok(BaselineEstimate {
                method: "huber",
                theta,
                iterations: iteration,
                converged: true,
            });
        }
    }
    Ok(BaselineEstimate {
        method: "huber",
        theta,
        iterations: max_iter,
        converged: false,
    })
}

/// Sum over the points of the l1 distance to `theta`.
pub fn l1_objective(dataset: &Dataset, theta: &[f64]) -> Result<f64> {
    check_centroid_args(dataset, theta)?;
    Ok(dataset
        .iter()
        .map(|p| {
            p.feature()
                .iter()
                .zip(theta)
                .map(|(x, t)| (x - t).abs())
                .sum::<f64>()
        })
        .sum())
}

/// Sum over the points of the Huber loss of the Euclidean distance to
/// `theta`: t²/2 inside the threshold, r·t − r²/2 beyond it (value and slope
/// agree at t = r).
pub fn huber_objective(dataset: &Dataset, theta: &[f64], r: f64) -> Result<f64> {
    check_centroid_args(dataset, theta)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidConfig {
            reason: format!("huber threshold must be positive and finite, got {r}"),
        });
    }
    Ok(dataset
        .iter()
        .map(|p| {
            let t = distance(p.feature(), theta);
            if t <= r {
                0.5 * t * t
            } else {
                r * t - 0.5 * r * r
            }
        })
        .sum())
}

fn check_centroid_args(dataset: &Dataset, theta: &[f64]) -> Result<()> {
    if dataset.labeled() {
        return Err(Error::LabelsUnexpected {
            family: "sq_distance",
        });
    }
    if theta.len() != dataset.feature_dim() {
        return Err(Error::DimensionMismatch {
            context: "centroid objective theta",
            expected: dataset.feature_dim(),
            actual: theta.len(),
        });
    }
    Ok(())
}

fn mean_point(dataset: &Dataset) -> Vec<f64> {
    let dim = dataset.feature_dim();
    let mut mean = vec![0.0; dim];
    for point in dataset.iter() {
        for (m, &x) in mean.iter_mut().zip(point.feature()) {
            *m += x;
        }
    }
    let n = dataset.len() as f64;
    mean.iter_mut().for_each(|m| *m /= n);
    mean
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Least-squares linear fit via the normal equations X'X θ = X'y.
fn normal_equations(dataset: &Dataset, dim: usize) -> Result<Vec<f64>> {
    let mut gram = vec![vec![0.0; dim]; dim];
    let mut rhs = vec![0.0; dim];
    for point in dataset.iter() {
        let x = point.feature();
        let y = point.label().expect("linear family requires labels");
        for i in 0..dim {
            rhs[i] += x[i] * y;
            for j in 0..dim {
                gram[i][j] += x[i] * x[j];
            }
        }
    }
    linalg::solve(gram, rhs).ok_or(Error::SingularNormalEquations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn centroid_problem(points: Vec<Vec<f64>>) -> PercentileProblem {
        let dim = points[0].len();
        let ds = Dataset::from_features(points).unwrap();
        PercentileProblem::new(ds, ResidualFamily::sq_distance(dim).unwrap(), 0).unwrap()
    }

    #[test]
    fn least_squares_centroid_is_the_mean() {
        let p = centroid_problem(vec![vec![0.0, 0.0], vec![2.0, 0.0]]);
        let est = least_squares_fit(&p).unwrap();
        assert_eq!(est.theta, vec![1.0, 0.0]);
        assert_eq!(est.method, "least_squares");
        assert!(est.converged);

        let p = centroid_problem(vec![vec![1.0, -2.0], vec![3.0, 4.0], vec![5.0, 7.0]]);
        let est = least_squares_fit(&p).unwrap();
        assert_abs_diff_eq!(est.theta[0], 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(est.theta[1], 3.0, epsilon = 1e-15);
    }

    #[test]
    fn least_squares_interpolates_two_exact_points() {
        let ds = Dataset::from_rows(vec![vec![1.0], vec![2.0]], vec![3.0, 6.0]).unwrap();
        let p = PercentileProblem::new(ds, ResidualFamily::linear_abs(1).unwrap(), 0).unwrap();
        let est = least_squares_fit(&p).unwrap();
        assert_abs_diff_eq!(est.theta[0], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn least_squares_detects_singular_designs() {
        let ds = Dataset::from_rows(vec![vec![0.0], vec![0.0]], vec![1.0, 2.0]).unwrap();
        let p = PercentileProblem::new(ds, ResidualFamily::linear_abs(1).unwrap(), 0).unwrap();
        assert!(matches!(
            least_squares_fit(&p),
            Err(Error::SingularNormalEquations)
        ));
    }

    #[test]
    fn l1_fit_takes_coordinate_medians() {
        let p = centroid_problem(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![5.0, 5.0],
        ]);
        let est = l1_fit(&p).unwrap();
        assert_eq!(est.theta, vec![0.5, 0.5]);
    }

    #[test]
    fn l1_fit_of_a_single_point_is_that_point() {
        let est = l1_fit(&centroid_problem(vec![vec![3.5, -2.0]])).unwrap();
        assert_eq!(est.theta, vec![3.5, -2.0]);
    }

    #[test]
    fn l1_fit_ignores_point_order() {
        let pts = vec![vec![4.0, 1.0], vec![-1.0, 2.0], vec![0.5, 9.0], vec![2.0, -3.0]];
        let mut reversed = pts.clone();
        reversed.reverse();
        let a = l1_fit(&centroid_problem(pts)).unwrap();
        let b = l1_fit(&centroid_problem(reversed)).unwrap();
        assert_eq!(a.theta, b.theta);
    }

    #[test]
    fn l1_fit_beats_random_perturbations() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let pts: Vec<Vec<f64>> = (0..9)
            .map(|_| vec![rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)])
            .collect();
        let p = centroid_problem(pts);
        let est = l1_fit(&p).unwrap();
        let at_min = l1_objective(p.dataset(), &est.theta).unwrap();
        for _ in 0..100 {
            let scale = rng.gen_range(1e-3..2.0);
            let probe: Vec<f64> = est
                .theta
                .iter()
                .map(|t| t + scale * rng.gen_range(-1.0..1.0))
                .collect();
            assert!(at_min <= l1_objective(p.dataset(), &probe).unwrap() + 1e-12);
        }
    }

    #[test]
    fn huber_in_pure_quadratic_regime_returns_the_mean() {
        // All points within distance R of the mean: weights all 1.
        let p = centroid_problem(vec![
            vec![0.0, 0.0],
            vec![0.5, 0.0],
            vec![0.0, 0.5],
            vec![0.5, 0.5],
        ]);
        let est = huber_fit(&p, DEFAULT_HUBER_R, DEFAULT_HUBER_TOL, DEFAULT_HUBER_MAX_ITER)
            .unwrap();
        assert!(est.converged);
        assert_abs_diff_eq!(est.theta[0], 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(est.theta[1], 0.25, epsilon = 1e-9);
    }

    #[test]
    fn huber_of_a_single_point_is_that_point() {
        let est = huber_fit(
            &centroid_problem(vec![vec![-1.0, 4.0]]),
            DEFAULT_HUBER_R,
            DEFAULT_HUBER_TOL,
            DEFAULT_HUBER_MAX_ITER,
        )
        .unwrap();
        assert!(est.converged);
        assert_eq!(est.theta, vec![-1.0, 4.0]);
    }

    #[test]
    fn huber_minimum_is_global_by_convexity() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut pts: Vec<Vec<f64>> = (0..12)
            .map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect();
        pts.push(vec![30.0, -20.0]); // force the linear branch to matter
        let p = centroid_problem(pts);
        let est = huber_fit(&p, DEFAULT_HUBER_R, DEFAULT_HUBER_TOL, DEFAULT_HUBER_MAX_ITER)
            .unwrap();
        assert!(est.converged);
        let at_min = huber_objective(p.dataset(), &est.theta, DEFAULT_HUBER_R).unwrap();
        for _ in 0..100 {
            let scale = rng.gen_range(1e-3..3.0);
            let probe: Vec<f64> = est
                .theta
                .iter()
                .map(|t| t + scale * rng.gen_range(-1.0..1.0))
                .collect();
            let there = huber_objective(p.dataset(), &probe, DEFAULT_HUBER_R).unwrap();
            assert!(at_min <= there + 1e-9);
        }
    }

    #[test]
    fn huber_resists_an_outlier_better_than_the_mean() {
        let mut pts: Vec<Vec<f64>> = vec![
            vec![0.1, 0.0],
            vec![-0.1, 0.0],
            vec![0.0, 0.1],
            vec![0.0, -0.1],
        ];
        pts.push(vec![50.0, 0.0]);
        let p = centroid_problem(pts);
        let mean = least_squares_fit(&p).unwrap();
        let huber = huber_fit(&p, DEFAULT_HUBER_R, DEFAULT_HUBER_TOL, DEFAULT_HUBER_MAX_ITER)
            .unwrap();
        assert!(huber.converged);
        assert!(huber.iterations >= 1);
        // The mean is dragged to x = 10; Huber caps the outlier's pull.
        assert_abs_diff_eq!(mean.theta[0], 10.0, epsilon = 1e-12);
        assert!(huber.theta[0] < 2.0);
    }

    #[test]
    fn huber_flags_an_exhausted_iteration_cap() {
        let p = centroid_problem(vec![
            vec![0.0, 0.0],
            vec![1.0, 1.0],
            vec![100.0, -50.0],
            vec![-80.0, 60.0],
        ]);
        let est = huber_fit(&p, DEFAULT_HUBER_R, 1e-14, 1).unwrap();
        assert!(!est.converged);
        assert_eq!(est.iterations, 1);
    }

    #[test]
    fn huber_rejects_bad_parameters() {
        let p = centroid_problem(vec![vec![0.0, 0.0]]);
        assert!(matches!(
            huber_fit(&p, 0.0, 1e-10, 5),
            Err(Error::InvalidConfig { .. })
        ));
        assert!(matches!(
            huber_fit(&p, 1.0, 0.0, 5),
            Err(Error::InvalidConfig { .. })
        ));
        assert!(matches!(
            huber_fit(&p, 1.0, 1e-10, 0),
            Err(Error::InvalidConfig { .. })
        ));
    }

    #[test]
    fn centroid_only_methods_reject_other_families() {
        let ds = Dataset::from_rows(vec![vec![1.0], vec![2.0]], vec![1.0, 2.0]).unwrap();
        let p = PercentileProblem::new(ds, ResidualFamily::linear_abs(1).unwrap(), 0).unwrap();
        assert!(matches!(l1_fit(&p), Err(Error::UnsupportedFamily { .. })));
        assert!(matches!(
            huber_fit(&p, 1.34, 1e-10, 5),
            Err(Error::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn objective_values_match_hand_computation() {
        let ds = Dataset::from_features(vec![vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert_abs_diff_eq!(
            l1_objective(&ds, &[1.0, 0.0]).unwrap(),
            2.0,
            epsilon = 1e-15
        );
        // Distances 1 and 1 with R = 1.34: both quadratic, 0.5 + 0.5.
        assert_abs_diff_eq!(
            huber_objective(&ds, &[1.0, 0.0], 1.34).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        // Distance 2 from a single point: linear branch, 1.34·2 − 1.34²/2.
        let single = Dataset::from_features(vec![vec![2.0, 0.0]]).unwrap();
        assert_abs_diff_eq!(
            huber_objective(&single, &[0.0, 0.0], 1.34).unwrap(),
            1.34 * 2.0 - 0.5 * 1.34 * 1.34,
            epsilon = 1e-15
        );
    }

    #[test]
    fn huber_loss_branches_agree_at_the_threshold() {
        let r = 1.34;
        let at = Dataset::from_features(vec![vec![r, 0.0]]).unwrap();
        let quad = 0.5 * r * r;
        assert_abs_diff_eq!(
            huber_objective(&at, &[0.0, 0.0], r).unwrap(),
            quad,
            epsilon = 1e-15
        );
    }
}
