//! CPA is an affine function of Spearman's rho, with and without feature ties.

use uroc::{cpa_fast, spearman_rho, spearman_rho_mid, tie_correction, validate};

fn main() -> uroc::Result<()> {
    let y = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];

    let x = [2.0, 1.0, 4.0, 3.0, 6.0, 5.0];
    let s = validate(&x, &y)?;
    let rho = spearman_rho(&s)?;
    println!("no ties:      rho_S = {rho:.6}  (rho_S + 1)/2 = {:.6}  CPA = {:.6}", (rho + 1.0) / 2.0, cpa_fast(&s)?.value);

    let x = [1.0, 1.0, 2.0, 2.0, 2.0, 3.0];
    let s = validate(&x, &y)?;
    let rho = spearman_rho_mid(&s)?;
    let v = tie_correction(&x)?;
    println!("feature ties: rho_M = {rho:.6}  (rho_M + 1)/2 = {:.6}  CPA = {:.6}", (rho + 1.0) / 2.0, cpa_fast(&s)?.value);
    println!("              {} tie groups, V = {}", v.groups, v.value());
    Ok(())
}
