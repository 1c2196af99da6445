//! Self-contained deterministic SVG 1.1 plots: scatter, bootstrap-cloud
//! scatter with a rest-reference marker, and a log-power heatmap.
//!
//! Output is a pure function of the input data (fixed geometry, fixed
//! number formatting, no timestamps), so identical inputs produce
//! byte-identical documents. No external resources are referenced.

use std::fmt::Write as _;

use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;
const PLOT_W: f64 = WIDTH - MARGIN_L - MARGIN_R;
const PLOT_H: f64 = HEIGHT - MARGIN_T - MARGIN_B;

/// Color cycle for scatter groups.
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];
const BLACK: &str = "#000000";
const WHITE: &str = "#ffffff";

/// Axis captions; include units in the text where applicable.
#[derive(Debug, Clone, Copy)]
pub struct AxisLabels<'a> {
    pub title: &'a str,
    pub x: &'a str,
    pub y: &'a str,
}

/// One named point group of a scatter plot.
#[derive(Debug, Clone, Copy)]
pub struct ScatterGroup<'a> {
    pub name: &'a str,
    pub points: &'a [(f64, f64)],
}

/// Scatter plot of one or more groups, each drawn in its own palette
/// color with a legend entry. Non-finite points are skipped.
pub fn scatter_svg(groups: &[ScatterGroup], labels: &AxisLabels) -> Result<String> {
    let finite: Vec<(f64, f64)> = groups
        .iter()
        .flat_map(|g| g.points.iter().copied())
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    if finite.is_empty() {
        return Err(Error::EmptyData);
    }
    let (xr, yr) = padded_ranges(&finite);
    let mut svg = document_head(labels);
    frame_and_ticks(&mut svg, &xr, &yr, labels);
    for (gi, group) in groups.iter().enumerate() {
        let color = PALETTE[gi % PALETTE.len()];
        for &(x, y) in group.points {
            if !(x.is_finite() && y.is_finite()) {
                continue;
            }
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}" fill-opacity="0.7"/>"#,
                map_x(x, &xr),
                map_y(y, &yr),
                color
            );
        }
        // legend swatch and name, top-right, one row per group
        let ly = MARGIN_T + 14.0 + 16.0 * gi as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="{}"/>"#,
            WIDTH - MARGIN_R - 120.0,
            ly - 9.0,
            color
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12">{}</text>"#,
            WIDTH - MARGIN_R - 106.0,
            ly,
            escape(group.name)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Bootstrap-cloud scatter in the skewness(x)-exkurtosis(y) plane with one
/// distinguishable cross marker at the rest-reference coordinates. The
/// marker group carries `id="rest-reference"` and is positioned via a
/// single translate, so tests can recover its pixel coordinates.
pub fn cloud_svg(
    points: &[(f64, f64)],
    reference: (f64, f64),
    labels: &AxisLabels,
) -> Result<String> {
    let mut finite: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    if finite.is_empty() {
        return Err(Error::EmptyData);
    }
    finite.push(reference); // keep the marker inside the drawn range
    let (xr, yr) = padded_ranges(&finite);
    let mut svg = document_head(labels);
    frame_and_ticks(&mut svg, &xr, &yr, labels);
    for &(x, y) in points {
        if !(x.is_finite() && y.is_finite()) {
            continue;
        }
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{}" fill-opacity="0.55"/>"#,
            map_x(x, &xr),
            map_y(y, &yr),
            PALETTE[0]
        );
    }
    let _ = writeln!(
        svg,
        concat!(
            r#"<g id="rest-reference" transform="translate({:.2} {:.2})" stroke="{}" stroke-width="2">"#,
            r#"<title>rest reference</title>"#,
            r#"<line x1="-7" y1="0" x2="7" y2="0"/><line x1="0" y1="-7" x2="0" y2="7"/>"#,
            r#"<circle r="5" fill="none"/></g>"#
        ),
        map_x(reference.0, &xr),
        map_y(reference.1, &yr),
        PALETTE[1]
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Heatmap of a frames-by-bins power matrix: column = frame, row =
/// frequency bin (low frequencies at the bottom), color = log power from
/// blue (lowest) to red (highest) over the matrix range.
pub fn heatmap_svg(
    frame_times_ms: &[i64],
    freqs_hz: &[f64],
    power: &[Vec<f64>],
    labels: &AxisLabels,
) -> Result<String> {
    let frames = power.len();
    let bins = freqs_hz.len();
    if frames == 0 || bins == 0 || frame_times_ms.len() != frames {
        return Err(Error::EmptyData);
    }
    if power.iter().any(|row| row.len() != bins) {
        return Err(Error::EmptyData);
    }

    // log scale over the positive range; zeros clamp to the lowest color
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for row in power {
        for &v in row {
            if v > 0.0 {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
    }
    let color_of = |v: f64| -> String {
        let t = if !lo.is_finite() {
            0.0 // all-zero matrix
        } else if hi == lo {
            0.5
        } else if v <= 0.0 {
            0.0
        } else {
            (v.ln() - lo.ln()) / (hi.ln() - lo.ln())
        };
        blue_red(t.clamp(0.0, 1.0))
    };

    let mut svg = document_head(labels);
    let cell_w = PLOT_W / frames as f64;
    let cell_h = PLOT_H / bins as f64;
    for (fi, row) in power.iter().enumerate() {
        for (bi, &v) in row.iter().enumerate() {
            let x = MARGIN_L + fi as f64 * cell_w;
            let y = MARGIN_T + PLOT_H - (bi + 1) as f64 * cell_h;
            let _ = writeln!(
                svg,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                x,
                y,
                cell_w,
                cell_h,
                color_of(v)
            );
        }
    }
    // axes on top of the cells
    let xr = (
        frame_times_ms[0] as f64,
        frame_times_ms[frames - 1] as f64 + if frames > 1 { 0.0 } else { 1.0 },
    );
    let yr = (freqs_hz[0], freqs_hz[bins - 1].max(freqs_hz[0] + 1e-9));
    frame_and_ticks(&mut svg, &xr, &yr, labels);
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn document_head(labels: &AxisLabels) -> String {
    let mut svg = String::with_capacity(4096);
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" "#,
            r#"viewBox="0 0 {} {}" width="{}" height="{}">"#
        ),
        WIDTH, HEIGHT, WIDTH, HEIGHT
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="{}"/>"#,
        WIDTH, HEIGHT, WHITE
    );
    let _ = writeln!(
        svg,
        concat!(
            r#"<text x="{:.2}" y="24" font-family="monospace" font-size="15" "#,
            r#"text-anchor="middle">{}</text>"#
        ),
        MARGIN_L + PLOT_W / 2.0,
        escape(labels.title)
    );
    svg
}

/// Plot frame, 5 ticks per axis with value labels, and the axis captions.
fn frame_and_ticks(svg: &mut String, xr: &(f64, f64), yr: &(f64, f64), labels: &AxisLabels) {
    let _ = writeln!(
        svg,
        concat!(
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" "#,
            r#"fill="none" stroke="{}"/>"#
        ),
        MARGIN_L, MARGIN_T, PLOT_W, PLOT_H, BLACK
    );
    for i in 0..5 {
        let f = i as f64 / 4.0;
        let xv = xr.0 + f * (xr.1 - xr.0);
        let yv = yr.0 + f * (yr.1 - yr.0);
        let xp = MARGIN_L + f * PLOT_W;
        let yp = MARGIN_T + PLOT_H - f * PLOT_H;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}"/>"#,
            xp,
            MARGIN_T + PLOT_H,
            xp,
            MARGIN_T + PLOT_H + 4.0,
            BLACK
        );
        let _ = writeln!(
            svg,
            concat!(
                r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="11" "#,
                r#"text-anchor="middle">{}</text>"#
            ),
            xp,
            MARGIN_T + PLOT_H + 16.0,
            tick(xv)
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}"/>"#,
            MARGIN_L - 4.0,
            yp,
            MARGIN_L,
            yp,
            BLACK
        );
        let _ = writeln!(
            svg,
            concat!(
                r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="11" "#,
                r#"text-anchor="end">{}</text>"#
            ),
            MARGIN_L - 7.0,
            yp + 4.0,
            tick(yv)
        );
    }
    let _ = writeln!(
        svg,
        concat!(
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="13" "#,
            r#"text-anchor="middle">{}</text>"#
        ),
        MARGIN_L + PLOT_W / 2.0,
        HEIGHT - 12.0,
        escape(labels.x)
    );
    let _ = writeln!(
        svg,
        concat!(
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="13" "#,
            r#"text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">{}</text>"#
        ),
        18.0,
        MARGIN_T + PLOT_H / 2.0,
        18.0,
        MARGIN_T + PLOT_H / 2.0,
        escape(labels.y)
    );
}

/// Data ranges padded by 5% per side; a degenerate range is widened so the
/// points sit mid-plot.
fn padded_ranges(points: &[(f64, f64)]) -> ((f64, f64), (f64, f64)) {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for &(x, y) in points {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    (pad(xmin, xmax), pad(ymin, ymax))
}

fn pad(min: f64, max: f64) -> (f64, f64) {
    if min == max {
        let h = min.abs() * 0.1 + 1.0;
        return (min - h, max + h);
    }
    let p = (max - min) * 0.05;
    (min - p, max + p)
}

fn map_x(v: f64, xr: &(f64, f64)) -> f64 {
    MARGIN_L + (v - xr.0) / (xr.1 - xr.0) * PLOT_W
}

fn map_y(v: f64, yr: &(f64, f64)) -> f64 {
    MARGIN_T + PLOT_H - (v - yr.0) / (yr.1 - yr.0) * PLOT_H
}

fn tick(v: f64) -> String {
    if v == v.round() && v.abs() < 1e12 {
        format!("{}", v)
    } else {
        format!("{:.3}", v)
    }
}

/// Linear blue-to-red map through the HSL hue circle (240° to 0°, full
/// saturation, half lightness).
fn blue_red(t: f64) -> String {
    let h = 240.0 * (1.0 - t);
    let sector = h / 60.0;
    let x = 1.0 - (sector % 2.0 - 1.0).abs();
    let (r, g, b) = match sector as u32 {
        0 => (1.0, x, 0.0),
        1 => (x, 1.0, 0.0),
        2 => (0.0, 1.0, x),
        3 => (0.0, x, 1.0),
        _ => (x.min(1.0), 0.0, 1.0),
    };
    format!(
        "#{:02x}{:02x}{:02x}",
        (r * 255.0).round() as u8,
        (g * 255.0).round() as u8,
        (b * 255.0).round() as u8
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    const LABELS: AxisLabels = AxisLabels {
        title: "test plot",
        x: "x value (unit)",
        y: "y value (unit)",
    };

    #[test]
    fn scatter_is_deterministic() {
        let pts = [(0.0, 1.0), (2.0, 3.0), (-1.0, 0.5)];
        let groups = [ScatterGroup {
            name: "g",
            points: &pts,
        }];
        let a = scatter_svg(&groups, &LABELS).unwrap();
        let b = scatter_svg(&groups, &LABELS).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml version=\"1.0\""));
        assert!(a.contains(r#"version="1.1""#));
        assert!(a.contains("xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<circle").count(), 3);
        assert!(a.contains("x value (unit)"));
        assert!(a.contains("y value (unit)"));
    }

    #[test]
    fn empty_scatter_rejected() {
        assert!(matches!(
            scatter_svg(&[], &LABELS),
            Err(Error::EmptyData)
        ));
        let groups = [ScatterGroup {
            name: "g",
            points: &[(f64::NAN, 1.0)],
        }];
        assert!(matches!(
            scatter_svg(&groups, &LABELS),
            Err(Error::EmptyData)
        ));
    }

    #[test]
    fn cloud_reference_marker_lands_at_data_center() {
        // points span (0,0)..(2,8); the reference (1,4) is the exact center
        // of the padded range, so the marker must sit at the plot center
        let pts = [(0.0, 0.0), (2.0, 8.0)];
        let svg = cloud_svg(&pts, (1.0, 4.0), &LABELS).unwrap();
        let cx = MARGIN_L + PLOT_W / 2.0;
        let cy = MARGIN_T + PLOT_H / 2.0;
        let expected = format!(r#"id="rest-reference" transform="translate({cx:.2} {cy:.2})""#);
        assert!(svg.contains(&expected), "missing marker: {expected}");
        assert_eq!(svg.matches("rest-reference").count(), 1);
    }

    #[test]
    fn cloud_is_deterministic() {
        let pts = [(1.5, 3.9), (1.7, 4.2), (1.6, 4.05)];
        let a = cloud_svg(&pts, (1.633, 4.0), &LABELS).unwrap();
        let b = cloud_svg(&pts, (1.633, 4.0), &LABELS).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_cell_heatmap_draws_one_cell_and_axes() {
        let svg = heatmap_svg(&[0], &[0.0], &[vec![1.0]], &LABELS).unwrap();
        // one cell, one background, one frame
        assert_eq!(svg.matches("<rect").count(), 3);
        assert!(svg.matches("<line").count() >= 10, "tick marks missing");
    }

    #[test]
    fn heatmap_colors_span_blue_to_red() {
        let power = vec![vec![1e-6, 1.0], vec![1e-3, 1e-2]];
        let svg = heatmap_svg(&[0, 1000], &[0.0, 1.0], &power, &LABELS).unwrap();
        assert!(svg.contains("#0000ff"), "lowest cell should be pure blue");
        assert!(svg.contains("#ff0000"), "highest cell should be pure red");
    }

    #[test]
    fn heatmap_rejects_ragged_or_empty_input() {
        assert!(matches!(
            heatmap_svg(&[], &[], &[], &LABELS),
            Err(Error::EmptyData)
        ));
        assert!(matches!(
            heatmap_svg(&[0], &[0.0, 1.0], &[vec![1.0]], &LABELS),
            Err(Error::EmptyData)
        ));
    }

    #[test]
    fn all_zero_heatmap_is_valid() {
        let svg = heatmap_svg(&[0, 100], &[0.0, 1.0], &[vec![0.0; 2], vec![0.0; 2]], &LABELS)
            .unwrap();
        assert_eq!(svg.matches("#0000ff").count(), 4);
    }

    #[test]
    fn color_map_endpoints() {
        assert_eq!(blue_red(0.0), "#0000ff");
        assert_eq!(blue_red(1.0), "#ff0000");
        assert_eq!(blue_red(0.5), "#00ff00");
    }

    #[test]
    fn labels_are_escaped() {
        let pts = [(0.0, 0.0), (1.0, 1.0)];
        let groups = [ScatterGroup {
            name: "a<b>&c",
            points: &pts,
        }];
        let svg = scatter_svg(&groups, &LABELS).unwrap();
        assert!(svg.contains("a&lt;b&gt;&amp;c"));
    }
}
