//! Survival times of primary biliary cirrhosis patients who died during
//! follow-up, against serum albumin and (negated) serum bilirubin.

use std::path::Path;
use uroc::io::{auc_by_threshold, load_csv, run_metrics, Metric};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/pbc_deaths.csv");
    let features = vec!["albumin".to_string(), "bili".to_string()];
    let data = load_csv(&path, "time", &features, &["bili".to_string()])?;

    let report = run_metrics(&data, &[Metric::Cpa, Metric::CIndex, Metric::SpearmanRhoMid]);
    println!("{}", report.to_json());

    // the frame at the 1462-day threshold is the classical ROC problem "survives four years"
    for name in &features {
        let row = auc_by_threshold(&data, name)?.into_iter().find(|r| r.threshold == 1462.0);
        if let Some(r) = row {
            println!("{name}: AUC for survival >= 1462 days = {:.3} (weight {:.4})", r.auc, r.weight);
        }
    }
    Ok(())
}
