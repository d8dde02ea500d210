//! The four ways to compute CPA agree exactly; the C index does not.

use uroc::{c_index_exact, cpa_covariance, cpa_fast, cpa_pairwise, cpa_weighted_auc, validate};

fn main() -> uroc::Result<()> {
    let x = [3.0, 1.0, 2.0, 2.0, 5.0, 4.0, 4.0, 0.5];
    let y = [10.0, 2.0, 7.0, 2.0, 30.0, 7.0, 12.0, 1.0];
    let sample = validate(&x, &y)?;

    for r in [cpa_fast(&sample)?, cpa_pairwise(&sample)?, cpa_covariance(&sample)?, cpa_weighted_auc(&sample)?] {
        println!("{:<12} {} = {}", format!("{:?}", r.method), r.exact().reduced(), r.value);
    }
    let c = c_index_exact(&sample)?;
    println!("{:<12} {} = {}", "C index", c.reduced(), c.to_f64());
    Ok(())
}
