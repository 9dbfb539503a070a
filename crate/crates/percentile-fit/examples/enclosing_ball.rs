//! The centroid minimax fit is a minimum enclosing ball: the center that
//! minimizes the largest squared distance to a point set.

use percentile_fit::minimax::enclosing_ball_fit;
use percentile_fit::Dataset;

fn main() -> percentile_fit::Result<()> {
    let points = Dataset::from_features(vec![
        vec![0.0, 0.0],
        vec![4.0, 0.0],
        vec![2.0, 1.0],
        vec![1.0, 1.5],
        vec![3.0, -1.0],
    ])?;

    let all: Vec<usize> = (0..points.len()).collect();
    let fit = enclosing_ball_fit(&points, &all)?;
    let (center, r2) = fit.solved().expect("balls always exist");
    println!("center: ({:.4}, {:.4})", center[0], center[1]);
    println!("radius: {:.4}", r2.sqrt());

    // Every point is inside; the extremes touch the boundary.
    for (i, p) in points.iter().enumerate() {
        let d2: f64 = p
            .feature()
            .iter()
            .zip(center)
            .map(|(x, c)| (x - c) * (x - c))
            .sum();
        let mark = if (d2 - r2).abs() < 1e-9 { "on boundary" } else { "inside" };
        println!("point {}: distance {:.4} ({mark})", i + 1, d2.sqrt());
    }

    // Two points only: the ball is the segment's diameter.
    let pair = enclosing_ball_fit(&points, &[0, 1])?;
    let (center, r2) = pair.solved().unwrap();
    println!(
        "pair {{1,2}}: center ({:.1}, {:.1}), radius {:.1}",
        center[0],
        center[1],
        r2.sqrt()
    );
    Ok(())
}
