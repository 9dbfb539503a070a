//! A desk-sized contamination sweep: how each estimator's error grows with
//! the outlier fraction, and where the percentile method starts to win.
//!
//! The full-size experiment (40 inliers, 100 trials) runs via the CLI's
//! `benchmark` subcommand; this keeps the same structure at a fraction of
//! the cost.

use percentile_fit::bench::{run_experiment, summarize, write_summary_csv, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = ExperimentConfig {
        inlier_count: 20,
        outlier_ratio_grid: vec![0.05, 0.15, 0.25, 0.35],
        trials: 30,
        seed: 4,
        ..ExperimentConfig::default()
    };

    let outcome = run_experiment(&config)?;
    assert!(outcome.failures.is_empty());
    let summary = summarize(&outcome.results)?;

    println!("ratio    method                mean    std");
    for row in &summary {
        println!(
            "{:<8} {:<20} {:>6.3} {:>6.3}",
            row.ratio,
            row.method.as_str(),
            row.mean_error,
            row.std_error
        );
    }

    // At the top of the grid the baselines have been pulled toward the
    // outlier cluster; the percentile fit has not.
    let at = |ratio: f64, name: &str| {
        summary
            .iter()
            .find(|r| r.ratio == ratio && r.method.as_str() == name)
            .map(|r| r.mean_error)
            .unwrap()
    };
    let percentile = at(0.35, "percentile_theorem2");
    for name in ["least_squares", "l1", "huber"] {
        assert!(percentile < at(0.35, name));
    }
    println!("\nat ratio 0.35 the percentile fit beats every baseline");

    println!("\nsummary.csv content:");
    let mut buf = Vec::new();
    write_summary_csv(&mut buf, &summary)?;
    print!("{}", String::from_utf8(buf)?);
    Ok(())
}
