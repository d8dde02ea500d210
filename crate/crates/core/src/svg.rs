//! Static SVG plots of ROC-type curves on a fixed 1000x700 canvas.

use std::fmt::Write;

pub const WIDTH: u32 = 1000;
pub const HEIGHT: u32 = 700;

const LEFT: f64 = 90.0;
const TOP: f64 = 40.0;
const SIDE: f64 = 600.0;

/// Maps a point of the unit square to canvas coordinates.
pub fn to_canvas(fpr: f64, tpr: f64) -> (f64, f64) {
    (LEFT + SIDE * fpr, TOP + SIDE * (1.0 - tpr))
}

/// Renders one curve with axis frame, diagonal and text annotations.
///
/// Coordinates are printed with three decimals, so equal inputs give equal bytes.
pub fn curve_svg(points: impl IntoIterator<Item = (f64, f64)>, x_label: &str, y_label: &str, notes: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (x0, y0) = to_canvas(0.0, 0.0);
    let (x1, y1) = to_canvas(1.0, 1.0);
    let _ = writeln!(
        s,
        r#"<rect x="{x0:.3}" y="{y1:.3}" width="{SIDE:.3}" height="{SIDE:.3}" fill="none" stroke="black" stroke-width="1.5"/>"#
    );
    let _ = writeln!(
        s,
        r##"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="#999999" stroke-dasharray="6 4"/>"##
    );
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let (tx, _) = to_canvas(t, 0.0);
        let (_, ty) = to_canvas(0.0, t);
        let _ = writeln!(s, r#"<line x1="{tx:.3}" y1="{y0:.3}" x2="{tx:.3}" y2="{:.3}" stroke="black"/>"#, y0 + 6.0);
        let _ = writeln!(
            s,
            r#"<text x="{tx:.3}" y="{:.3}" font-family="sans-serif" font-size="16" text-anchor="middle">{t:.2}</text>"#,
            y0 + 26.0
        );
        let _ = writeln!(s, r#"<line x1="{:.3}" y1="{ty:.3}" x2="{x0:.3}" y2="{ty:.3}" stroke="black"/>"#, x0 - 6.0);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="16" text-anchor="end">{t:.2}</text>"#,
            x0 - 10.0,
            ty + 5.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="18" text-anchor="middle">{}</text>"#,
        LEFT + SIDE / 2.0,
        y0 + 56.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="18" text-anchor="middle" transform="rotate(-90 {:.3} {:.3})">{}</text>"#,
        LEFT - 55.0,
        TOP + SIDE / 2.0,
        LEFT - 55.0,
        TOP + SIDE / 2.0,
        escape(y_label)
    );

    let mut path = String::new();
    for (i, (fpr, tpr)) in points.into_iter().enumerate() {
        let (px, py) = to_canvas(fpr, tpr);
        let _ = write!(path, "{}{px:.3},{py:.3}", if i == 0 { "" } else { " " });
    }
    let _ = writeln!(s, r##"<polyline points="{path}" fill="none" stroke="#1f4e9c" stroke-width="2.5"/>"##);

    for (i, note) in notes.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="20">{}</text>"#,
            LEFT + SIDE + 40.0,
            TOP + 30.0 + 34.0 * i as f64,
            escape(note)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
