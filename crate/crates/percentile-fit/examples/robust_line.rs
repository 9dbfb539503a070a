//! Least-quantile line fitting: recover a slope-and-intercept model when a
//! quarter of the labels are corrupted.

use percentile_fit::baselines::least_squares_fit;
use percentile_fit::solvers::{solve_theorem2, SolveOptions};
use percentile_fit::{Dataset, PercentileProblem, ResidualFamily};

fn main() -> percentile_fit::Result<()> {
    // Model: y = 2x - 1, features (x, 1) so theta = (slope, intercept).
    // Twelve clean points, four with labels shifted far up.
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..12 {
        let x = -2.0 + i as f64 * 0.4;
        let wiggle = 0.05 * if i % 2 == 0 { 1.0 } else { -1.0 };
        rows.push(vec![x, 1.0]);
        labels.push(2.0 * x - 1.0 + wiggle);
    }
    for i in 0..4 {
        let x = -1.0 + i as f64;
        rows.push(vec![x, 1.0]);
        labels.push(2.0 * x - 1.0 + 9.0);
    }
    let dataset = Dataset::from_rows(rows, labels)?;
    let problem = PercentileProblem::new(dataset, ResidualFamily::linear_abs(2)?, 4)?;

    let ls = least_squares_fit(&problem)?;
    println!(
        "least squares:  slope {:+.3}, intercept {:+.3}",
        ls.theta[0], ls.theta[1]
    );

    let report = solve_theorem2(&problem, &SolveOptions::default())?;
    println!(
        "percentile fit: slope {:+.3}, intercept {:+.3}",
        report.theta[0], report.theta[1]
    );
    println!(
        "worst kept residual: {:.4} over {} size-3 subsets",
        report.objective, report.subsets_solved
    );

    let flagged: Vec<usize> = (0..problem.dataset().len())
        .filter(|i| !report.inlier_indices.contains(i))
        .map(|i| i + 1)
        .collect();
    println!("written off (1-based): {flagged:?}");
    Ok(())
}
