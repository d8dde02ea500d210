//! ROC movie of a real-valued outcome, written as one CSV and SVG per frame.
//!
//! Usage: cargo run --example roc_movie [out_dir]

use std::path::PathBuf;
use uroc::export::export_frames;
use uroc::{build_movie, validate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out: PathBuf = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("roc_movie"), PathBuf::from);

    let forecast = [1.2, 0.4, 3.1, 2.2, 0.9, 2.8, 1.7, 0.1, 2.0, 3.5];
    let observed = [1.0, 0.0, 3.0, 2.0, 1.0, 2.0, 1.0, 0.0, 3.0, 3.0];
    let movie = build_movie(&validate(&forecast, &observed)?);

    for f in movie.frames() {
        println!(
            "frame {}: y >= {}  weight {:.3}  relative {:.3}  AUC {:.3}",
            f.class_index, f.threshold_value, f.weight, f.relative_weight, f.auc
        );
    }
    println!("weighted AUC = {}", movie.weighted_auc());
    let files = export_frames(&movie, &out, true)?;
    println!("wrote {} files to {}", files.len(), out.display());
    Ok(())
}
