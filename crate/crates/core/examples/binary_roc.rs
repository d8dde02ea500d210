//! Classical ROC curve, AUC and Somers' D for a binary outcome.

use uroc::{auc_pairwise, pair_counts, roc_curve, somers_d};

fn main() -> uroc::Result<()> {
    let scores = [0.1, 0.4, 0.35, 0.8, 0.65, 0.2, 0.9, 0.5];
    let events = [false, false, true, true, true, false, true, false];

    let curve = roc_curve(&scores, &events)?;
    println!("threshold  fpr    tpr");
    println!("   -       {:.3}  {:.3}", curve.fpr(0), curve.tpr(0));
    for (k, t) in curve.thresholds().iter().enumerate() {
        println!("  {t:.2}     {:.3}  {:.3}", curve.fpr(k + 1), curve.tpr(k + 1));
    }
    println!("AUC (trapezoid)  {}", curve.auc());
    println!("AUC (pairwise)   {}", auc_pairwise(&scores, &events)?);
    println!("Somers' D        {}", somers_d(&scores, &events)?);
    let pc = pair_counts(&scores, &events)?;
    println!("pairs: {} concordant, {} discordant, {} tied", pc.concordant, pc.discordant, pc.tied);
    Ok(())
}
