//! Two uses of the parameter grid: as a brute-force reference for the exact
//! solvers, and as the sub-solver that makes black-box residuals fittable.

use percentile_fit::solvers::{grid_oracle, solve_theorem1, solve_theorem2, SolveOptions};
use percentile_fit::{Dataset, GridSpec, PercentileProblem, ResidualFamily};

fn main() -> percentile_fit::Result<()> {
    let dataset = Dataset::from_features(vec![
        vec![0.2, 0.1],
        vec![-0.3, 0.4],
        vec![0.1, -0.2],
        vec![-0.1, -0.3],
        vec![0.4, 0.2],
        vec![5.0, 4.0],
        vec![5.5, 3.8],
    ])?;
    let problem = PercentileProblem::new(dataset.clone(), ResidualFamily::sq_distance(2)?, 2)?;

    let exact = solve_theorem2(&problem, &SolveOptions::default())?;
    let grid = GridSpec::new(vec![-2.0, -2.0], vec![2.0, 2.0], 201)?;
    let oracle = grid_oracle(&problem, &grid)?;

    println!("exact:  theta ({:+.4}, {:+.4}), objective {:.6}",
        exact.theta[0], exact.theta[1], exact.objective);
    println!("oracle: theta ({:+.4}, {:+.4}), objective {:.6} over {} nodes",
        oracle.theta[0], oracle.theta[1], oracle.objective, oracle.subsets_total);
    // The oracle can only overshoot by the objective's variation within one
    // cell, and never sits below the exact optimum.
    assert!(oracle.objective >= exact.objective - 1e-12);

    // Black-box residuals: only an evaluation rule and a search box. Here, a
    // one-parameter exponential decay fitted to noisy samples, worst two
    // ignored. The same grid machinery solves each subset.
    let times = [0.0_f64, 0.5, 1.0, 1.5, 2.0, 2.5];
    let true_rate = 1.3;
    let mut rows: Vec<Vec<f64>> = times
        .iter()
        .map(|&t| vec![t, (-true_rate * t).exp()])
        .collect();
    rows[2][1] += 0.6; // corrupt one sample
    rows[4][1] -= 0.4; // and another
    let samples = Dataset::from_features(rows)?;
    let search = GridSpec::new(vec![0.0], vec![3.0], 601)?;
    let family = ResidualFamily::blackbox(1, false, search, |theta, p| {
        let t = p.feature()[0];
        let observed = p.feature()[1];
        (observed - (-theta[0] * t).exp()).abs()
    })?;
    let decay = PercentileProblem::new(samples, family, 2)?;
    let fit = solve_theorem1(&decay, &SolveOptions::default())?;
    println!(
        "decay rate: {:.3} (true {true_rate}), worst kept residual {:.4}",
        fit.theta[0], fit.objective
    );
    Ok(())
}
