//! Thinning a long ROC movie for display: an even grid of frames plus every
//! heavily populated class.

use uroc::{build_movie, validate, ThinningPolicy};

fn main() -> uroc::Result<()> {
    // 3000 distinct outcomes, with the value 1500 repeated 400 more times
    let mut y: Vec<f64> = (0..3000).map(f64::from).collect();
    y.extend(std::iter::repeat_n(1500.0, 400));
    let x: Vec<f64> = y.iter().enumerate().map(|(i, v)| v + ((i * 7919) % 500) as f64).collect();

    let movie = build_movie(&validate(&x, &y)?);
    println!("full movie: {} frames", movie.all_frames().len());

    let policy = ThinningPolicy::default();
    let shown = movie.with_policy(&policy)?;
    let kept = shown.retained().expect("movie is longer than the cap");
    println!("a = {}, b = {}: {} frames kept, first {:?}, last {}", policy.a, policy.b, kept.len(), &kept[..4], kept[kept.len() - 1]);
    let top = shown.frames().into_iter().max_by(|p, q| p.weight.total_cmp(&q.weight)).unwrap();
    println!("heaviest kept frame: c = {} with relative weight {:.3}", top.class_index, top.relative_weight);
    Ok(())
}
