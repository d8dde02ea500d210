//! Class-count weights and the universal ROC (UROC) curve: the weighted
//! vertical average of a movie's ROC curves on a uniform grid.

use crate::error::{Error, Result};
use crate::movie::RocMovie;
use crate::ratio::ExactRatio;
use crate::sample::ClassDecomposition;
use rayon::prelude::*;

/// Default number of grid subintervals.
pub const DEFAULT_GRID: usize = 1000;

/// Frames averaged per parallel task. Fixed so the summation order, and
/// therefore every bit of the result, does not depend on the thread count.
const FRAME_CHUNK: usize = 64;

/// Weights `w_c = (sum_{i<=c} n_i)(sum_{i>c} n_i) / sum_{i<j} (j-i) n_i n_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    numerators: Vec<u128>,
    denominator: u128,
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn numerators(&self) -> &[u128] {
        &self.numerators
    }

    pub fn denominator(&self) -> u128 {
        self.denominator
    }

    /// Weight of frame `c` (1-based) as an exact ratio.
    pub fn exact(&self, c: usize) -> ExactRatio {
        ExactRatio::new(self.numerators[c - 1] as i128, self.denominator as i128)
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Class-count weights for the `m - 1` frames. Depends on the outcomes only.
pub fn weights(decomposition: &ClassDecomposition) -> WeightVector {
    let n = decomposition.n() as u128;
    let counts = decomposition.class_counts();
    let mut below = 0u128;
    let numerators: Vec<u128> = counts[..counts.len() - 1]
        .iter()
        .map(|&c| {
            below += c as u128;
            below * (n - below)
        })
        .collect();
    // sum_c below_c * above_c == sum_{i<j} (j - i) n_i n_j
    let denominator: u128 = numerators.iter().sum();
    let weights = numerators
        .iter()
        .map(|&num| ExactRatio::new(num as i128, denominator as i128).to_f64())
        .collect();
    WeightVector { numerators, denominator, weights }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UrocCurve {
    grid_fpr: Vec<f64>,
    grid_tpr: Vec<f64>,
    cpa_from_area: f64,
}

impl UrocCurve {
    pub fn grid_fpr(&self) -> &[f64] {
        &self.grid_fpr
    }

    pub fn grid_tpr(&self) -> &[f64] {
        &self.grid_tpr
    }

    /// Number of subintervals `G`.
    pub fn grid_size(&self) -> usize {
        self.grid_fpr.len() - 1
    }

    /// Trapezoidal area under the grid curve.
    pub fn cpa_from_area(&self) -> f64 {
        self.cpa_from_area
    }
}

/// Averages the movie's frames vertically on `grid + 1` equally spaced abscissae.
///
/// Each frame is read as the linear interpolant of its vertices. Where a
/// frame has a vertical segment exactly at a grid abscissa, the upper end is
/// used, matching the right-continuous reading of a ROC curve.
pub fn uroc_curve(movie: &RocMovie, weight_vector: &WeightVector, grid: usize) -> Result<UrocCurve> {
    if grid < 2 {
        return Err(Error::GridTooCoarse(grid));
    }
    if weight_vector != movie.weights() {
        return Err(Error::MovieWeightMismatch);
    }
    let frames = movie.all_frames().len();
    let starts: Vec<usize> = (1..=frames).step_by(FRAME_CHUNK).collect();
    let partials: Vec<Vec<f64>> = starts
        .par_iter()
        .map(|&start| {
            let mut acc = vec![0.0; grid + 1];
            for c in start..(start + FRAME_CHUNK).min(frames + 1) {
                accumulate_frame(movie, c, weight_vector.weights()[c - 1], grid, &mut acc);
            }
            acc
        })
        .collect();

    let mut grid_tpr = vec![0.0; grid + 1];
    for part in &partials {
        for (t, p) in grid_tpr.iter_mut().zip(part) {
            *t += p;
        }
    }
    grid_tpr[0] = 0.0;
    grid_tpr[grid] = 1.0;
    for t in &mut grid_tpr {
        *t = t.clamp(0.0, 1.0);
    }
    let grid_fpr = (0..=grid).map(|k| k as f64 / grid as f64).collect();
    let mut curve = UrocCurve { grid_fpr, grid_tpr, cpa_from_area: 0.0 };
    curve.cpa_from_area = area_under_uroc(&curve);
    Ok(curve)
}

/// Adds `weight * R_c(k / G)` for `k = 1..G-1` into `acc`.
fn accumulate_frame(movie: &RocMovie, c: usize, weight: f64, grid: usize, acc: &mut [f64]) {
    let frame = movie.frame(c);
    let (n_neg, n_pos) = (frame.n_neg as u128, frame.n_pos as f64);
    let g = grid as u128;
    let mut vertices = movie.vertices(c).peekable();
    let mut a = vertices.next().expect("frame has an origin vertex");
    for (k, slot) in acc.iter_mut().enumerate().take(grid).skip(1) {
        // abscissa k/G in units of 1/(n_neg G)
        let target = k as u128 * n_neg;
        while let Some(next) = vertices.peek() {
            if next.false_positives as u128 * g <= target {
                a = *next;
                vertices.next();
            } else {
                break;
            }
        }
        let left = a.false_positives as u128 * g;
        let tpr = if left == target {
            a.true_positives as f64 / n_pos
        } else {
            let b = vertices.peek().expect("last vertex lies at fpr 1");
            let frac = (target - left) as f64 / ((b.false_positives - a.false_positives) as u128 * g) as f64;
            let rise = (b.true_positives - a.true_positives) as f64;
            (a.true_positives as f64 + frac * rise) / n_pos
        };
        *slot += weight * tpr;
    }
}

/// Trapezoidal area under a UROC grid curve.
pub fn area_under_uroc(curve: &UrocCurve) -> f64 {
    let g = curve.grid_size() as f64;
    let twice: f64 = curve.grid_tpr.windows(2).map(|w| w[0] + w[1]).sum();
    twice / (2.0 * g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::movie::build_movie;
    use crate::roc::roc_curve;
    use crate::sample::{decompose, validate};
    use proptest::prelude::*;

    /// Piecewise-linear interpolant of a point list, upper value on vertical runs.
    fn interpolate(points: &[(f64, f64)], t: f64) -> f64 {
        let mut best = None;
        for w in points.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if t == x1 {
                best = Some(y1);
            } else if x0 <= t && t < x1 && best.is_none() {
                best = Some(y0 + (t - x0) / (x1 - x0) * (y1 - y0));
            }
        }
        best.unwrap()
    }

    fn brute_force_denominator(counts: &[u64]) -> u128 {
        let mut d = 0u128;
        for i in 0..counts.len() {
            for j in i + 1..counts.len() {
                d += (j - i) as u128 * counts[i] as u128 * counts[j] as u128;
            }
        }
        d
    }

    #[test]
    fn weight_examples() {
        let d = ClassDecomposition::from_values(&[0.0, 1.0]);
        assert_eq!(weights(&d).weights(), &[1.0]);

        let d = ClassDecomposition::from_values(&[1.0, 2.0, 3.0, 4.0]);
        let w = weights(&d);
        // closed form for singleton classes: 6c(n-c) / (n(n^2-1)) with n = 4
        for c in 1..4usize {
            let closed = ExactRatio::new(6 * (c * (4 - c)) as i128, 4 * 15);
            assert_eq!(w.exact(c), closed);
        }
        assert_eq!(w.weights(), &[0.3, 0.4, 0.3]);

        let d = ClassDecomposition::from_values(&[1.0, 1.0, 2.0, 3.0]);
        let w = weights(&d);
        assert_eq!(w.numerators(), &[4, 3]);
        assert_eq!(w.denominator(), 7);
        assert_eq!(w.denominator(), brute_force_denominator(d.class_counts()));
        assert_eq!(w.exact(1), ExactRatio::new(4, 7));
        assert_eq!(w.exact(2), ExactRatio::new(3, 7));
    }

    #[test]
    fn binary_uroc_is_sampled_roc() {
        let x = [0.3, 0.1, 0.4, 0.4, 0.9, 0.2, 0.7];
        let y = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0];
        let s = validate(&x, &y).unwrap();
        let movie = build_movie(&s);
        let u = uroc_curve(&movie, movie.weights(), 20).unwrap();
        let labels: Vec<bool> = y.iter().map(|&v| v == 1.0).collect();
        let points = roc_curve(&x, &labels).unwrap().points();
        for (k, &t) in u.grid_fpr().iter().enumerate().skip(1).take(19) {
            assert!((u.grid_tpr()[k] - interpolate(&points, t)).abs() < 1e-15);
        }
    }

    #[test]
    fn perfect_feature_uroc() {
        let y: Vec<f64> = (0..10).map(f64::from).collect();
        let s = validate(&y, &y).unwrap();
        let movie = build_movie(&s);
        let g = 1000;
        let u = uroc_curve(&movie, movie.weights(), g).unwrap();
        assert_eq!(u.grid_tpr()[0], 0.0);
        assert!(u.grid_tpr()[1..].iter().all(|&t| (t - 1.0).abs() < 1e-12));
        assert!((area_under_uroc(&u) - (1.0 - 1.0 / (2.0 * g as f64))).abs() < 1e-12);
    }

    #[test]
    fn diagonal_uroc_has_half_area() {
        let s = validate(&[1.0; 6], &[1.0, 2.0, 3.0, 3.0, 4.0, 5.0]).unwrap();
        let movie = build_movie(&s);
        let u = uroc_curve(&movie, movie.weights(), 100).unwrap();
        assert!((u.cpa_from_area() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn two_frame_average() {
        // class counts (1, 2, 1) -> numerators (1*3, 3*1), weights (1/2, 1/2)
        let x = [0.5, 0.1, 0.9, 0.3];
        let y = [1.0, 2.0, 2.0, 3.0];
        let s = validate(&x, &y).unwrap();
        let movie = build_movie(&s);
        assert_eq!(movie.weights().weights(), &[0.5, 0.5]);
        let g = 12;
        let u = uroc_curve(&movie, movie.weights(), g).unwrap();
        let f = movie.curve(1).points();
        let h = movie.curve(2).points();
        for k in 1..g {
            let t = k as f64 / g as f64;
            let expected = (interpolate(&f, t) + interpolate(&h, t)) / 2.0;
            assert!((u.grid_tpr()[k] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn errors() {
        let s = validate(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        let movie = build_movie(&s);
        assert_eq!(uroc_curve(&movie, movie.weights(), 1), Err(Error::GridTooCoarse(1)));
        let other = weights(&ClassDecomposition::from_values(&[1.0, 1.0, 2.0, 3.0]));
        assert_eq!(uroc_curve(&movie, &other, 10), Err(Error::MovieWeightMismatch));
    }

    fn data() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (2usize..150).prop_flat_map(|n| {
            (prop::collection::vec(-10i32..10, n), prop::collection::vec(0i32..25, n))
        })
        .prop_map(|(x, mut y)| {
            if y.iter().all(|&v| v == y[0]) {
                y[0] += 1;
            }
            (x.into_iter().map(f64::from).collect(), y.into_iter().map(f64::from).collect())
        })
    }

    proptest! {
        #[test]
        fn grid_area_is_close_to_weighted_auc((x, y) in data(), g in 2usize..300) {
            let movie = build_movie(&validate(&x, &y).unwrap());
            let u = uroc_curve(&movie, movie.weights(), g).unwrap();
            prop_assert!((area_under_uroc(&u) - movie.weighted_auc()).abs() <= 2.0 / g as f64);
            for w in u.grid_tpr().windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
            prop_assert!(u.grid_tpr().iter().all(|&t| (0.0..=1.0).contains(&t)));
        }

        #[test]
        fn weights_ignore_features((x, y) in data()) {
            let a = build_movie(&validate(&x, &y).unwrap());
            let mut xr = x.clone();
            xr.reverse();
            let b = build_movie(&validate(&xr, &y).unwrap());
            prop_assert_eq!(a.weights(), b.weights());
            let d = decompose(&validate(&x, &y).unwrap());
            prop_assert_eq!(a.weights().denominator(), brute_force_denominator(d.class_counts()));
        }
    }
}
