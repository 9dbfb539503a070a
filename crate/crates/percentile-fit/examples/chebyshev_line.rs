//! Minimax (Chebyshev) fit of a linear model to a whole subset: the largest
//! absolute residual is minimized, and at the optimum it is attained by at
//! least d+1 points with alternating signs.

use percentile_fit::minimax::{chebyshev_fit, verify_sfit};
use percentile_fit::{Dataset, ResidualFamily};

fn main() -> percentile_fit::Result<()> {
    // y roughly 2x + noise, one point pushed well off the line.
    let xs = vec![
        vec![1.0],
        vec![2.0],
        vec![3.0],
        vec![4.0],
        vec![5.0],
    ];
    let ys = vec![2.1, 3.9, 6.2, 8.0, 12.5];
    let dataset = Dataset::from_rows(xs, ys)?;

    let all: Vec<usize> = (0..dataset.len()).collect();
    let fit = chebyshev_fit(&dataset, &all)?;
    let (theta, value) = fit.solved().expect("nondegenerate design");
    println!("minimax slope over all points: {:.4}", theta[0]);
    println!("worst residual: {value:.4}");

    let family = ResidualFamily::linear_abs(1)?;
    println!("certificate holds: {}", verify_sfit(&fit, &dataset, &family));

    // Drop the distorted point 5 and the fit snaps to the clean trend; the
    // worst residual collapses. This gap is what the percentile objective
    // exploits automatically.
    let clean = chebyshev_fit(&dataset, &[0, 1, 2, 3])?;
    let (theta, value) = clean.solved().expect("nondegenerate design");
    println!("minimax slope without point 5: {:.4}", theta[0]);
    println!("worst residual without point 5: {value:.4}");
    Ok(())
}
