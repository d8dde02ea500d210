//! UROC curve: the weighted vertical average of a ROC movie.

use uroc::export::uroc_csv;
use uroc::{build_movie, cpa_fast, uroc_curve, validate};

fn main() -> uroc::Result<()> {
    let x: Vec<f64> = (0..200).map(|i| ((i * 37) % 101) as f64 + (i as f64) * 0.5).collect();
    let y: Vec<f64> = (0..200).map(|i| (i / 10) as f64).collect();
    let sample = validate(&x, &y)?;

    let movie = build_movie(&sample);
    let curve = uroc_curve(&movie, movie.weights(), 20)?;
    print!("{}", uroc_csv(&curve, movie.weighted_auc()));

    println!("area on the grid  {:.6}", curve.cpa_from_area());
    println!("CPA               {:.6}", cpa_fast(&sample)?.value);
    Ok(())
}
