//! The percentile loss by hand: what "ignore the O worst residuals" means,
//! and why it equals a best-subset worst case.

use percentile_fit::loss::{percentile_loss, percentile_loss_by_subsets};
use percentile_fit::{max_loss, quad_loss};

fn main() -> percentile_fit::Result<()> {
    let residuals = [0.2, 1.1, 0.4, 7.5, 0.9, 0.3];

    println!("residuals: {residuals:?}");
    println!("quad loss (sum of squares): {:.4}", quad_loss(&residuals));
    println!("max loss: {:.4}", max_loss(&residuals)?);

    // Ignoring O residuals keeps the (O+1)-th largest: the single wild 7.5
    // stops mattering as soon as O >= 1.
    for outliers in 0..residuals.len() {
        let value = percentile_loss(&residuals, outliers)?;
        println!("percentile loss ignoring {outliers}: {value:.4}");
    }

    // The same number falls out of a subset search: the best subset of size
    // M - O minimizes its own maximum. Both routes select an element of the
    // vector, so they agree exactly, not just approximately.
    let via_subsets = percentile_loss_by_subsets(&residuals, 1)?;
    let direct = percentile_loss(&residuals, 1)?;
    assert_eq!(direct, via_subsets);
    println!("subset reformulation agrees exactly: {direct:.4}");
    Ok(())
}
