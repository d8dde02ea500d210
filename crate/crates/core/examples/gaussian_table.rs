//! Population and simulated CPA for a Gaussian outcome and three features
//! of decreasing correlation.

use uroc::{cpa_fast, gaussian_cpa_from_pearson, gaussian_spearman_from_pearson, sample_gaussian, validate, GaussianSpec};

fn main() -> uroc::Result<()> {
    let sample = sample_gaussian(&GaussianSpec::new(50_000, 2024))?;
    println!("feature  r     rho_S   CPA     CPA (n = 50000)");
    for ((name, x), r) in sample.features().iter().zip([0.8, 0.5, 0.2]) {
        let estimate = cpa_fast(&validate(x, &sample.y)?)?.value;
        println!(
            "{name:<7}  {r:.1}   {:.3}   {:.3}   {estimate:.3}",
            gaussian_spearman_from_pearson(r)?,
            gaussian_cpa_from_pearson(r)?
        );
    }
    Ok(())
}
