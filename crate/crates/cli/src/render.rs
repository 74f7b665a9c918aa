//! Self-contained SVG figures: line chart and heatmap.
//!
//! The emitted documents are static XML with every byte derived from the
//! data: no scripts, no stylesheets, no fonts beyond generic families, and
//! no references to anything outside the file (the only `url(...)` is an
//! internal gradient fragment).

use std::fmt::Write as _;

const WIDTH: f64 = 820.0;
const HEIGHT: f64 = 540.0;
const PLOT_LEFT: f64 = 86.0;
const PLOT_RIGHT: f64 = 780.0;
const PLOT_TOP: f64 = 46.0;
const PLOT_BOTTOM: f64 = 470.0;
const TICKS: usize = 5;

/// Tick label: compact fixed-point in a moderate range, scientific outside.
fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (0.001..10000.0).contains(&a) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.1e}")
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Viridis-like color ramp; `u` is clamped to `[0, 1]`.
fn viridis(u: f64) -> String {
    const ANCHORS: [(u8, u8, u8); 9] = [
        (68, 1, 84),
        (71, 44, 122),
        (59, 81, 139),
        (44, 113, 142),
        (33, 144, 141),
        (39, 173, 129),
        (92, 200, 99),
        (170, 220, 50),
        (253, 231, 37),
    ];
    let u = u.clamp(0.0, 1.0);
    let pos = u * (ANCHORS.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(ANCHORS.len() - 1);
    let t = pos - lo as f64;
    let mix = |a: u8, b: u8| -> u8 { (a as f64 + (b as f64 - a as f64) * t).round() as u8 };
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(ANCHORS[lo].0, ANCHORS[hi].0),
        mix(ANCHORS[lo].1, ANCHORS[hi].1),
        mix(ANCHORS[lo].2, ANCHORS[hi].2)
    )
}

fn open_svg(s: &mut String, title: &str) {
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="26" font-family="monospace" font-size="15" text-anchor="middle">{}</text>"#,
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        xml_escape(title)
    );
}

fn frame_and_labels(s: &mut String, x_label: &str, y_label: &str) {
    let _ = writeln!(
        s,
        r#"<rect x="{PLOT_LEFT}" y="{PLOT_TOP}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        PLOT_RIGHT - PLOT_LEFT,
        PLOT_BOTTOM - PLOT_TOP
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="13" text-anchor="middle">{}</text>"#,
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        PLOT_BOTTOM + 42.0,
        xml_escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.1}" font-family="monospace" font-size="13" text-anchor="middle" transform="rotate(-90 20 {:.1})">{}</text>"#,
        (PLOT_TOP + PLOT_BOTTOM) / 2.0,
        (PLOT_TOP + PLOT_BOTTOM) / 2.0,
        xml_escape(y_label)
    );
}

/// Maps a data abscissa to pixels, linearly or in log space.
fn x_pixel(x: f64, x0: f64, x1: f64, log: bool) -> f64 {
    let t = if log {
        (x.ln() - x0.ln()) / (x1.ln() - x0.ln())
    } else {
        (x - x0) / (x1 - x0)
    };
    PLOT_LEFT + t * (PLOT_RIGHT - PLOT_LEFT)
}

/// Line chart of `ys` against `xs`; `None` entries break the stroke.
pub fn line_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    xs: &[f64],
    ys: &[Option<f64>],
    log_x: bool,
) -> String {
    assert_eq!(xs.len(), ys.len());
    let mut s = String::new();
    open_svg(&mut s, title);

    let finite: Vec<f64> = ys.iter().flatten().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() || xs.len() < 2 {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="14" text-anchor="middle">no finite data</text>"#,
            (PLOT_LEFT + PLOT_RIGHT) / 2.0,
            (PLOT_TOP + PLOT_BOTTOM) / 2.0
        );
        s.push_str("</svg>\n");
        return s;
    }
    let (x0, x1) = (xs[0], xs[xs.len() - 1]);
    let y_max = finite.iter().cloned().fold(f64::MIN, f64::max);
    let y_min = finite.iter().cloned().fold(f64::MAX, f64::min).min(0.0);
    let span = if y_max > y_min { y_max - y_min } else { 1.0 };
    let (y0, y1) = (y_min, y_max + 0.05 * span);
    let y_pixel =
        |v: f64| -> f64 { PLOT_BOTTOM - (v - y0) / (y1 - y0) * (PLOT_BOTTOM - PLOT_TOP) };

    // Ticks and grid lines.
    for k in 0..=TICKS {
        let t = k as f64 / TICKS as f64;
        let xv = if log_x {
            (x0.ln() + t * (x1.ln() - x0.ln())).exp()
        } else {
            x0 + t * (x1 - x0)
        };
        let px = x_pixel(xv, x0, x1, log_x);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.1}" y1="{PLOT_BOTTOM}" x2="{px:.1}" y2="{:.1}" stroke="black"/>"#,
            PLOT_BOTTOM + 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{px:.1}" y="{:.1}" font-family="monospace" font-size="11" text-anchor="middle">{}</text>"#,
            PLOT_BOTTOM + 20.0,
            tick_label(xv)
        );
        let yv = y0 + t * (y1 - y0);
        let py = y_pixel(yv);
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{py:.1}" x2="{PLOT_LEFT}" y2="{py:.1}" stroke="black"/>"#,
            PLOT_LEFT - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="11" text-anchor="end">{}</text>"#,
            PLOT_LEFT - 9.0,
            py + 4.0,
            tick_label(yv)
        );
    }

    // Stroke, broken at missing or non-finite samples.
    let mut segment: Vec<(f64, f64)> = Vec::new();
    let flush = |seg: &mut Vec<(f64, f64)>, s: &mut String| {
        if seg.len() >= 2 {
            let pts: Vec<String> =
                seg.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                s,
                r##"<polyline fill="none" stroke="#1f77b4" stroke-width="1.6" points="{}"/>"##,
                pts.join(" ")
            );
        } else if seg.len() == 1 {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.2}" cy="{:.2}" r="2" fill="#1f77b4"/>"##,
                seg[0].0, seg[0].1
            );
        }
        seg.clear();
    };
    for (x, y) in xs.iter().zip(ys) {
        match y {
            Some(v) if v.is_finite() => {
                segment.push((x_pixel(*x, x0, x1, log_x), y_pixel(*v)));
            }
            _ => flush(&mut segment, &mut s),
        }
    }
    flush(&mut segment, &mut s);

    frame_and_labels(&mut s, x_label, y_label);
    s.push_str("</svg>\n");
    s
}

/// Heatmap of row-major `values` (rows indexed by `ys`, columns by `xs`,
/// row 0 at the bottom). Missing cells render gray.
pub fn heatmap(
    title: &str,
    x_label: &str,
    y_label: &str,
    xs: &[f64],
    ys: &[f64],
    values: &[Option<f64>],
) -> String {
    assert_eq!(values.len(), xs.len() * ys.len());
    let mut s = String::new();
    open_svg(&mut s, title);

    let v_max = values
        .iter()
        .flatten()
        .copied()
        .filter(|v| v.is_finite())
        .fold(0.0_f64, f64::max);
    let cols = xs.len();
    let rows = ys.len();
    let cw = (PLOT_RIGHT - PLOT_LEFT) / cols as f64;
    let ch = (PLOT_BOTTOM - PLOT_TOP) / rows as f64;
    let _ = writeln!(s, r#"<g shape-rendering="crispEdges">"#);
    for i in 0..rows {
        let py = PLOT_BOTTOM - (i + 1) as f64 * ch;
        for j in 0..cols {
            let px = PLOT_LEFT + j as f64 * cw;
            let fill = match values[i * cols + j] {
                // A quarter-power normalization keeps sub-peak structure
                // visible across the orders of magnitude the map spans.
                Some(v) if v.is_finite() && v_max > 0.0 => {
                    viridis((v / v_max).clamp(0.0, 1.0).powf(0.25))
                }
                Some(_) => viridis(0.0),
                None => "#888888".to_string(),
            };
            let _ = writeln!(
                s,
                r#"<rect x="{px:.2}" y="{py:.2}" width="{cw:.2}" height="{ch:.2}" fill="{fill}"/>"#
            );
        }
    }
    let _ = writeln!(s, "</g>");

    // Index-based ticks work for any grid spacing.
    for k in 0..=TICKS {
        let t = k as f64 / TICKS as f64;
        let j = ((cols - 1) as f64 * t).round() as usize;
        let px = PLOT_LEFT + (j as f64 + 0.5) * cw;
        let _ = writeln!(
            s,
            r#"<line x1="{px:.1}" y1="{PLOT_BOTTOM}" x2="{px:.1}" y2="{:.1}" stroke="black"/>"#,
            PLOT_BOTTOM + 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{px:.1}" y="{:.1}" font-family="monospace" font-size="11" text-anchor="middle">{}</text>"#,
            PLOT_BOTTOM + 20.0,
            tick_label(xs[j])
        );
        let i = ((rows - 1) as f64 * t).round() as usize;
        let py = PLOT_BOTTOM - (i as f64 + 0.5) * ch;
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{py:.1}" x2="{PLOT_LEFT}" y2="{py:.1}" stroke="black"/>"#,
            PLOT_LEFT - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="11" text-anchor="end">{}</text>"#,
            PLOT_LEFT - 9.0,
            py + 4.0,
            tick_label(ys[i])
        );
    }

    // Color scale, drawn as explicit quantized swatches.
    let bar_x = PLOT_RIGHT + 8.0;
    let steps = 64;
    let bar_h = (PLOT_BOTTOM - PLOT_TOP) / steps as f64;
    for k in 0..steps {
        let u = k as f64 / (steps - 1) as f64;
        let py = PLOT_BOTTOM - (k + 1) as f64 * bar_h;
        let _ = writeln!(
            s,
            r#"<rect x="{bar_x:.1}" y="{py:.2}" width="14" height="{bar_h:.2}" fill="{}"/>"#,
            viridis(u)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="11">{}</text>"#,
        bar_x,
        PLOT_TOP - 8.0,
        tick_label(v_max)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="11">0</text>"#,
        bar_x,
        PLOT_BOTTOM + 14.0
    );

    frame_and_labels(&mut s, x_label, y_label);
    s.push_str("</svg>\n");
    s
}
