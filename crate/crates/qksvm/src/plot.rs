//! Static SVG emission: decision-boundary scatter plots plus small line and
//! bar chart helpers. Output is deterministic byte for byte; coordinates are
//! written with fixed precision and no randomness or timestamps enter the
//! document.

use crate::error::{Error, Result};

/// Nodes per axis of the decision-value lattice (100 x 100 evaluations).
pub const GRID_SIZE: usize = 100;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 48.0;

const POSITIVE_COLOR: &str = "#2b6cb0";
const NEGATIVE_COLOR: &str = "#c53030";

fn color_for(label: i32) -> &'static str {
    if label >= 0 {
        POSITIVE_COLOR
    } else {
        NEGATIVE_COLOR
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn from_points(points: &[Vec<f64>]) -> Frame {
        let mut x0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut y0 = f64::INFINITY;
        let mut y1 = f64::NEG_INFINITY;
        for p in points {
            x0 = x0.min(p[0]);
            x1 = x1.max(p[0]);
            y0 = y0.min(p[1]);
            y1 = y1.max(p[1]);
        }
        let pad = |lo: f64, hi: f64| {
            let span = (hi - lo).max(1e-9);
            (lo - 0.08 * span, hi + 0.08 * span)
        };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        // SVG y axis points down.
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn svg_open(out: &mut String, title: &str) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        xml_escape(title)
    ));
    out.push_str(&format!(
        "<rect x=\"{M}\" y=\"{M}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#4a5568\" stroke-width=\"1\"/>\n",
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN,
        M = MARGIN
    ));
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Scatter plot of 2-feature points with the zero level set of a decision
/// function.
///
/// Fill color encodes the true label, marker shape the predicted one
/// (circle for +1, square for -1). The boundary is traced by evaluating
/// `decision` on a [`GRID_SIZE`] x [`GRID_SIZE`] lattice and marching the
/// sign changes.
pub fn decision_boundary_svg(
    points: &[Vec<f64>],
    true_labels: &[i32],
    predicted_labels: &[i32],
    title: &str,
    mut decision: impl FnMut(f64, f64) -> f64,
) -> Result<String> {
    if points.is_empty() {
        return Err(Error::Argument("nothing to plot".into()));
    }
    if points.iter().any(|p| p.len() != 2) {
        return Err(Error::Dimension(
            "decision boundary plots need exactly 2 features".into(),
        ));
    }
    if points.len() != true_labels.len() || points.len() != predicted_labels.len() {
        return Err(Error::Dimension(
            "points and label vectors differ in length".into(),
        ));
    }

    let frame = Frame::from_points(points);
    let xs: Vec<f64> = (0..GRID_SIZE)
        .map(|i| frame.x0 + (frame.x1 - frame.x0) * i as f64 / (GRID_SIZE - 1) as f64)
        .collect();
    let ys: Vec<f64> = (0..GRID_SIZE)
        .map(|j| frame.y0 + (frame.y1 - frame.y0) * j as f64 / (GRID_SIZE - 1) as f64)
        .collect();
    let mut values = vec![0.0f64; GRID_SIZE * GRID_SIZE];
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            values[j * GRID_SIZE + i] = decision(x, y);
        }
    }

    let mut out = String::new();
    svg_open(&mut out, title);

    // Zero-crossing segments, cell by cell in row-major order.
    out.push_str("<g stroke=\"#1a202c\" stroke-width=\"1.5\" fill=\"none\">\n");
    let v = |i: usize, j: usize| values[j * GRID_SIZE + i];
    for j in 0..GRID_SIZE - 1 {
        for i in 0..GRID_SIZE - 1 {
            let corners = [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)];
            let inside = |v: f64| v >= 0.0;
            // Crossing point on the edge between two corners, interpolated.
            let cross = |a: usize, b: usize| -> (f64, f64) {
                let (va, vb) = (corners[a], corners[b]);
                let t = if (va - vb).abs() < 1e-300 {
                    0.5
                } else {
                    va / (va - vb)
                };
                let pos = |c: usize| -> (f64, f64) {
                    match c {
                        0 => (xs[i], ys[j]),
                        1 => (xs[i + 1], ys[j]),
                        2 => (xs[i + 1], ys[j + 1]),
                        _ => (xs[i], ys[j + 1]),
                    }
                };
                let (ax, ay) = pos(a);
                let (bx, by) = pos(b);
                (ax + t * (bx - ax), ay + t * (by - ay))
            };
            // Edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c2-c3), 3 left (c3-c0).
            let edge_corners = [(0usize, 1usize), (1, 2), (2, 3), (3, 0)];
            let crossings: Vec<(usize, (f64, f64))> = edge_corners
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| inside(corners[a]) != inside(corners[b]))
                .map(|(e, &(a, b))| (e, cross(a, b)))
                .collect();
            let mut emit = |p: (f64, f64), q: (f64, f64)| {
                out.push_str(&format!(
                    "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\n",
                    frame.px(p.0),
                    frame.py(p.1),
                    frame.px(q.0),
                    frame.py(q.1)
                ));
            };
            match crossings.len() {
                2 => emit(crossings[0].1, crossings[1].1),
                4 => {
                    // Saddle: disambiguate with the cell-center value.
                    let center = corners.iter().sum::<f64>() / 4.0;
                    let by_edge = |e: usize| crossings.iter().find(|(ce, _)| *ce == e).unwrap().1;
                    if (center >= 0.0) == inside(corners[0]) {
                        emit(by_edge(3), by_edge(0));
                        emit(by_edge(1), by_edge(2));
                    } else {
                        emit(by_edge(0), by_edge(1));
                        emit(by_edge(2), by_edge(3));
                    }
                }
                _ => {}
            }
        }
    }
    out.push_str("</g>\n");

    // Points: fill = true label, shape = predicted label.
    out.push_str("<g stroke=\"#1a202c\" stroke-width=\"0.8\">\n");
    for ((p, &truth), &pred) in points.iter().zip(true_labels).zip(predicted_labels) {
        let (cx, cy) = (frame.px(p[0]), frame.py(p[1]));
        let fill = color_for(truth);
        if pred >= 0 {
            out.push_str(&format!(
                "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"4.5\" fill=\"{fill}\"/>\n"
            ));
        } else {
            out.push_str(&format!(
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"8\" height=\"8\" fill=\"{fill}\"/>\n",
                cx - 4.0,
                cy - 4.0
            ));
        }
    }
    out.push_str("</g>\n");

    // Legend.
    out.push_str(&format!(
        "<g font-family=\"sans-serif\" font-size=\"11\">\
<circle cx=\"{x0}\" cy=\"{y}\" r=\"4.5\" fill=\"{pc}\"/>\
<text x=\"{x1}\" y=\"{ty}\">true +1</text>\
<circle cx=\"{x2}\" cy=\"{y}\" r=\"4.5\" fill=\"{nc}\"/>\
<text x=\"{x3}\" y=\"{ty}\">true -1</text>\
<text x=\"{x4}\" y=\"{ty}\">shape: circle = predicted +1, square = predicted -1</text>\
</g>\n",
        x0 = MARGIN + 6.0,
        x1 = MARGIN + 14.0,
        x2 = MARGIN + 70.0,
        x3 = MARGIN + 78.0,
        x4 = MARGIN + 134.0,
        y = HEIGHT - 18.0,
        ty = HEIGHT - 14.0,
        pc = POSITIVE_COLOR,
        nc = NEGATIVE_COLOR,
    ));
    out.push_str("</svg>\n");
    Ok(out)
}

/// One curve in a [`line_plot_svg`] chart.
pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub ys: &'a [f64],
    /// Draw markers only instead of a connected line.
    pub markers_only: bool,
}

/// Simple multi-series line chart over a shared x grid.
pub fn line_plot_svg(
    xs: &[f64],
    series: &[Series<'_>],
    title: &str,
    y_range: Option<(f64, f64)>,
) -> Result<String> {
    if xs.len() < 2 {
        return Err(Error::Argument("line plot needs at least 2 x values".into()));
    }
    for s in series {
        if s.ys.len() != xs.len() {
            return Err(Error::Dimension(format!(
                "series '{}' has {} values for {} x positions",
                s.label,
                s.ys.len(),
                xs.len()
            )));
        }
    }
    let (mut y0, mut y1) = y_range.unwrap_or_else(|| {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for s in series {
            for &v in s.ys {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    });
    if y1 - y0 < 1e-12 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let x0 = xs[0];
    let x1 = xs[xs.len() - 1];
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    svg_open(&mut out, title);
    for (si, s) in series.iter().enumerate() {
        if s.markers_only {
            out.push_str(&format!("<g fill=\"{}\">\n", s.color));
            for (&x, &y) in xs.iter().zip(s.ys) {
                out.push_str(&format!(
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\"/>\n",
                    px(x),
                    py(y.clamp(y0, y1))
                ));
            }
            out.push_str("</g>\n");
        } else {
            let path: Vec<String> = xs
                .iter()
                .zip(s.ys)
                .enumerate()
                .map(|(k, (&x, &y))| {
                    format!(
                        "{}{:.2},{:.2}",
                        if k == 0 { "M" } else { "L" },
                        px(x),
                        py(y.clamp(y0, y1))
                    )
                })
                .collect();
            out.push_str(&format!(
                "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                path.join(" "),
                s.color
            ));
        }
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{}\">{}</text>\n",
            MARGIN + 8.0,
            MARGIN + 16.0 + 16.0 * si as f64,
            s.color,
            xml_escape(s.label)
        ));
    }
    // Axis extremes.
    out.push_str(&format!(
        "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#4a5568\">\
<text x=\"{mx:.2}\" y=\"{by:.2}\">{xmin:.3}</text>\
<text x=\"{rx:.2}\" y=\"{by:.2}\" text-anchor=\"end\">{xmax:.3}</text>\
<text x=\"{lx:.2}\" y=\"{ty:.2}\">{ymax:.3}</text>\
<text x=\"{lx:.2}\" y=\"{my:.2}\">{ymin:.3}</text>\
</g>\n",
        mx = MARGIN,
        rx = WIDTH - MARGIN,
        by = HEIGHT - MARGIN + 14.0,
        lx = 4.0,
        ty = MARGIN + 4.0,
        my = HEIGHT - MARGIN,
        xmin = x0,
        xmax = x1,
        ymin = y0,
        ymax = y1,
    ));
    out.push_str("</svg>\n");
    Ok(out)
}

/// Vertical bar chart with value labels, for small histograms.
pub fn bar_chart_svg(labels: &[String], values: &[f64], title: &str) -> Result<String> {
    if labels.is_empty() || labels.len() != values.len() {
        return Err(Error::Dimension(
            "bar chart needs equally many labels and values".into(),
        ));
    }
    let vmax = values.iter().cloned().fold(0.0f64, f64::max).max(1e-12);
    let n = labels.len() as f64;
    let slot = (WIDTH - 2.0 * MARGIN) / n;
    let bar_w = slot * 0.6;

    let mut out = String::new();
    svg_open(&mut out, title);
    for (k, (label, &value)) in labels.iter().zip(values).enumerate() {
        let h = (value / vmax) * (HEIGHT - 2.0 * MARGIN - 20.0);
        let x = MARGIN + slot * k as f64 + (slot - bar_w) / 2.0;
        let y = HEIGHT - MARGIN - h;
        out.push_str(&format!(
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{bar_w:.2}\" height=\"{h:.2}\" fill=\"{POSITIVE_COLOR}\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            x + bar_w / 2.0,
            HEIGHT - MARGIN + 14.0,
            xml_escape(label)
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{:.4}</text>\n",
            x + bar_w / 2.0,
            y - 4.0,
            value
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
