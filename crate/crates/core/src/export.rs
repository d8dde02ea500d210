//! Plain-text artifacts: frame CSVs and SVGs, UROC and ROC curve CSVs,
//! simulated samples.

use crate::gaussian::GaussianSample;
use crate::io::fmt_sig17;
use crate::movie::{MovieFrame, RocMovie};
use crate::roc::RocCurve;
use crate::svg::curve_svg;
use crate::uroc::UrocCurve;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

fn push_points(out: &mut String, points: impl IntoIterator<Item = (f64, f64)>) {
    for (x, y) in points {
        let _ = writeln!(out, "{},{}", fmt_sig17(x), fmt_sig17(y));
    }
}

fn frame_points<'a>(movie: &'a RocMovie, frame: &MovieFrame) -> impl Iterator<Item = (f64, f64)> + 'a {
    let (neg, pos) = (frame.n_neg as f64, frame.n_pos as f64);
    let c = frame.class_index;
    movie.vertices(c).map(move |v| (v.false_positives as f64 / neg, v.true_positives as f64 / pos))
}

/// CSV text of frame `c`: metadata comments, then the vertex list.
pub fn frame_csv(movie: &RocMovie, c: usize) -> String {
    let frame = movie.frame(c);
    let mut out = String::new();
    let _ = writeln!(out, "# threshold={}", fmt_sig17(frame.threshold_value));
    let _ = writeln!(out, "# class_index={}", frame.class_index);
    let _ = writeln!(out, "# weight={}", fmt_sig17(frame.weight));
    let _ = writeln!(out, "# relative_weight={}", fmt_sig17(frame.relative_weight));
    let _ = writeln!(out, "# auc={}", fmt_sig17(frame.auc));
    out.push_str("fpr,tpr\n");
    push_points(&mut out, frame_points(movie, frame));
    out
}

pub fn frame_svg(movie: &RocMovie, c: usize) -> String {
    let frame = movie.frame(c);
    let notes = [
        format!("threshold: y >= {}", fmt_sig17(frame.threshold_value)),
        format!("relative weight: {:.3}", frame.relative_weight),
        format!("AUC: {:.3}", frame.auc),
    ];
    curve_svg(frame_points(movie, frame), "False positive rate", "True positive rate", &notes)
}

/// Writes `frame_0001.csv`, `frame_0002.csv`, ... in playback order, and a
/// matching `.svg` per frame when `with_svg` is set. Creates `dir` if needed.
pub fn export_frames(movie: &RocMovie, dir: &Path, with_svg: bool) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let frames = movie.frames();
    let width = frames.len().to_string().len().max(4);
    let mut written = Vec::with_capacity(frames.len() * (1 + usize::from(with_svg)));
    for (k, frame) in frames.iter().enumerate() {
        let stem = format!("frame_{:0width$}", k + 1);
        let csv_path = dir.join(format!("{stem}.csv"));
        fs::write(&csv_path, frame_csv(movie, frame.class_index))?;
        written.push(csv_path);
        if with_svg {
            let svg_path = dir.join(format!("{stem}.svg"));
            fs::write(&svg_path, frame_svg(movie, frame.class_index))?;
            written.push(svg_path);
        }
    }
    Ok(written)
}

pub fn uroc_csv(curve: &UrocCurve, cpa: f64) -> String {
    let mut out = format!("# cpa={}\nfpr,tpr\n", fmt_sig17(cpa));
    push_points(&mut out, curve.grid_fpr().iter().copied().zip(curve.grid_tpr().iter().copied()));
    out
}

pub fn uroc_svg(curve: &UrocCurve, cpa: f64) -> String {
    let points = curve.grid_fpr().iter().copied().zip(curve.grid_tpr().iter().copied());
    curve_svg(points, "False positive rate", "True positive rate", &[format!("CPA: {cpa:.3}")])
}

pub fn roc_csv(curve: &RocCurve) -> String {
    let mut out = format!("# auc={}\nfpr,tpr\n", fmt_sig17(curve.auc()));
    push_points(&mut out, curve.points());
    out
}

pub fn roc_svg(curve: &RocCurve) -> String {
    curve_svg(curve.points(), "False positive rate", "True positive rate", &[format!("AUC: {:.3}", curve.auc())])
}

/// Columns `y,x1,x2,x3`.
pub fn simulation_csv(sample: &GaussianSample) -> String {
    let mut out = String::from("y,x1,x2,x3\n");
    for i in 0..sample.y.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_sig17(sample.y[i]),
            fmt_sig17(sample.x1[i]),
            fmt_sig17(sample.x2[i]),
            fmt_sig17(sample.x3[i])
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::movie::build_movie;
    use crate::sample::validate;
    use crate::uroc::uroc_curve;

    #[test]
    fn single_frame_export() {
        let s = validate(&[0.1, 0.4, 0.35, 0.8], &[0.0, 0.0, 1.0, 1.0]).unwrap();
        let movie = build_movie(&s);
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("nested/frames");
        let files = export_frames(&movie, &target, true).unwrap();
        let names: Vec<_> = files.iter().map(|p| p.file_name().unwrap().to_str().unwrap().to_string()).collect();
        assert_eq!(names, ["frame_0001.csv", "frame_0001.svg"]);
        let text = fs::read_to_string(&files[0]).unwrap();
        assert_eq!(
            text,
            "# threshold=1\n# class_index=1\n# weight=1\n# relative_weight=1\n# auc=0.75\nfpr,tpr\n\
             0,0\n0,0.5\n0.5,0.5\n0.5,1\n1,1\n"
        );
    }

    #[test]
    fn export_is_byte_stable() {
        let x: Vec<f64> = (0..40).map(|i| ((i * 7) % 13) as f64).collect();
        let y: Vec<f64> = (0..40).map(|i| (i % 9) as f64).collect();
        let movie = build_movie(&validate(&x, &y).unwrap());
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let fa = export_frames(&movie, a.path(), true).unwrap();
        let fb = export_frames(&movie, b.path(), true).unwrap();
        assert_eq!(fa.len(), 16);
        for (p, q) in fa.iter().zip(&fb) {
            assert_eq!(fs::read(p).unwrap(), fs::read(q).unwrap());
        }
    }

    #[test]
    fn thinned_export_follows_retained_set() {
        let x: Vec<f64> = (0..30).map(f64::from).collect();
        let movie = build_movie(&validate(&x, &x).unwrap()).thinned(5, 1).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let files = export_frames(&movie, dir.path(), false).unwrap();
        assert_eq!(files.len(), 5);
        let last = fs::read_to_string(&files[4]).unwrap();
        assert!(last.contains(&format!("# class_index={}\n", movie.retained().unwrap()[4])));
    }

    #[test]
    fn uroc_csv_rows() {
        let s = validate(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        let movie = build_movie(&s);
        let curve = uroc_curve(&movie, movie.weights(), 10).unwrap();
        let text = uroc_csv(&curve, 1.0);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# cpa=1");
        assert_eq!(lines[1], "fpr,tpr");
        assert_eq!(lines.len(), 2 + 11);
        assert_eq!(lines[2], "0,0");
        assert_eq!(lines[12], "1,1");
    }
}
