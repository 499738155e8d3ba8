//! Minimal deterministic SVG line plots: fixed 800x600 canvas, axes, ticks,
//! polylines and a legend. No randomness, no timestamps, fixed float
//! formatting, so identical inputs produce byte-identical files.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// One polyline with its legend label.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn format_tick(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs();
    if (1e-3..1e6).contains(&magnitude) {
        let s = format!("{value:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if s.is_empty() || s == "-" {
            "0".to_string()
        } else {
            s
        }
    } else {
        format!("{value:.3e}")
    }
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

/// Render series to an SVG document.
///
/// With `log_y`, y values must be strictly positive and are drawn on a
/// log10 axis. The `comment` string is embedded as an XML comment header;
/// keep it free of timestamps to preserve determinism.
pub fn render_line_plot(
    series: &[Series],
    x_label: &str,
    y_label: &str,
    log_y: bool,
    comment: &str,
) -> Result<String, String> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err("nothing to plot: no data points".to_string());
    }
    let transform = |y: f64| -> Result<f64, String> {
        if log_y {
            if y <= 0.0 {
                Err(format!("log-y plot requires positive values, found {y}"))
            } else {
                Ok(y.log10())
            }
        } else {
            Ok(y)
        }
    };

    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            let ty = transform(y)?;
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(ty);
            y_max = y_max.max(ty);
        }
    }
    if x_min == x_max {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if y_min == y_max {
        y_min -= 0.5;
        y_max += 0.5;
    }

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, ty: f64| -> (f64, f64) {
        let fx = (x - x_min) / (x_max - x_min);
        let fy = (ty - y_min) / (y_max - y_min);
        (MARGIN_LEFT + fx * plot_w, MARGIN_TOP + (1.0 - fy) * plot_h)
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    if !comment.is_empty() {
        let _ = writeln!(svg, "<!-- {} -->", comment.replace("--", "~~"));
    }
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        px(MARGIN_LEFT),
        px(MARGIN_TOP),
        px(plot_w),
        px(plot_h)
    );

    // Ticks and grid.
    const N_TICKS: usize = 5;
    for k in 0..N_TICKS {
        let f = k as f64 / (N_TICKS - 1) as f64;
        let xv = x_min + f * (x_max - x_min);
        let (xp, _) = to_px(xv, y_min);
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{y1}" x2="{x}" y2="{y2}" stroke="black" stroke-width="1"/>"#,
            x = px(xp),
            y1 = px(MARGIN_TOP + plot_h),
            y2 = px(MARGIN_TOP + plot_h + 6.0)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{y}" font-family="monospace" font-size="12" text-anchor="middle">{label}</text>"#,
            x = px(xp),
            y = px(MARGIN_TOP + plot_h + 22.0),
            label = format_tick(xv)
        );

        let tyv = y_min + f * (y_max - y_min);
        let (_, yp) = to_px(x_min, tyv);
        let _ = writeln!(
            svg,
            r#"<line x1="{x1}" y1="{y}" x2="{x2}" y2="{y}" stroke="black" stroke-width="1"/>"#,
            x1 = px(MARGIN_LEFT - 6.0),
            x2 = px(MARGIN_LEFT),
            y = px(yp)
        );
        let label = if log_y {
            format!("1e{}", format_tick(tyv))
        } else {
            format_tick(tyv)
        };
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{y}" font-family="monospace" font-size="12" text-anchor="end">{label}</text>"#,
            x = px(MARGIN_LEFT - 10.0),
            y = px(yp + 4.0),
        );
    }

    // Axis labels.
    let _ = writeln!(
        svg,
        r#"<text x="{x}" y="{y}" font-family="monospace" font-size="14" text-anchor="middle">{x_label}</text>"#,
        x = px(MARGIN_LEFT + plot_w / 2.0),
        y = px(HEIGHT - 14.0),
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{y}" font-family="monospace" font-size="14" text-anchor="middle" transform="rotate(-90 16 {y})">{y_label}</text>"#,
        y = px(MARGIN_TOP + plot_h / 2.0),
    );

    // Polylines.
    for (idx, s) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut points = String::new();
        for &(x, y) in &s.points {
            let ty = transform(y)?;
            let (xp, yp) = to_px(x, ty);
            let _ = write!(points, "{},{} ", px(xp), px(yp));
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.trim_end()
        );
    }

    // Legend, top-right inside the frame.
    for (idx, s) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let y = MARGIN_TOP + 18.0 + idx as f64 * 18.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x1}" y1="{ly}" x2="{x2}" y2="{ly}" stroke="{color}" stroke-width="1.5"/>"#,
            x1 = px(WIDTH - MARGIN_RIGHT - 180.0),
            x2 = px(WIDTH - MARGIN_RIGHT - 150.0),
            ly = px(y - 4.0),
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{ty}" font-family="monospace" font-size="12">{label}</text>"#,
            x = px(WIDTH - MARGIN_RIGHT - 144.0),
            ty = px(y),
            label = s.label
        );
    }

    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
