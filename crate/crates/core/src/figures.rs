//! Hand-rolled SVG figures: labeled scatter plots, matrix heatmaps, and
//! dispersion strips. All coordinates print with two decimals so the same
//! data always yields the same bytes.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::matrix::Mat;

pub fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn svg_open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.2}\" \
         height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    )
}

struct Range {
    min: f64,
    max: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Range {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            min = min.min(v);
            max = max.max(v);
        }
        if min > max {
            return Range { min: 0.0, max: 1.0 };
        }
        if min == max {
            // Degenerate spread: pad so the point sits mid-axis.
            min -= 0.5;
            max += 0.5;
        }
        Range { min, max }
    }

    fn to_unit(&self, v: f64) -> f64 {
        (v - self.min) / (self.max - self.min)
    }
}

/// Scatter plot with one labeled point per entry.
pub fn scatter_plot(points: &[(String, f64, f64)], title: &str) -> Result<String> {
    if points.is_empty() {
        return Err(Error::EmptyInput("scatter plot with no points".into()));
    }
    let (width, height, margin) = (640.0, 480.0, 50.0);
    let xs = Range::of(points.iter().map(|p| p.1));
    let ys = Range::of(points.iter().map(|p| p.2));
    let mut svg = svg_open(width, height);
    let _ = write!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{width:.2}\" height=\"{height:.2}\" fill=\"white\"/>\n\
         <text x=\"{:.2}\" y=\"24.00\" text-anchor=\"middle\" font-size=\"15\" \
         font-family=\"sans-serif\">{}</text>\n",
        width / 2.0,
        escape_xml(title)
    );
    let _ = write!(
        svg,
        "<line x1=\"{m:.2}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\" stroke=\"black\"/>\n\
         <line x1=\"{m:.2}\" y1=\"{t:.2}\" x2=\"{m:.2}\" y2=\"{b:.2}\" stroke=\"black\"/>\n",
        m = margin,
        b = height - margin,
        r = width - margin,
        t = margin,
    );
    for (label, x, y) in points {
        let px = margin + xs.to_unit(*x) * (width - 2.0 * margin);
        let py = height - margin - ys.to_unit(*y) * (height - 2.0 * margin);
        let _ = write!(
            svg,
            "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3.00\" fill=\"steelblue\"/>\n\
             <text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"10\" \
             font-family=\"sans-serif\">{t}</text>\n",
            lx = px + 5.0,
            ly = py - 4.0,
            t = escape_xml(label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Heatmap with one class="cell" rect per matrix entry and a five-step
/// legend. Cell shade runs white (minimum) to dark blue (maximum).
pub fn heatmap(row_labels: &[String], col_labels: &[String], values: &Mat) -> Result<String> {
    let (rows, cols) = (values.rows(), values.cols());
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyInput("heatmap with no cells".into()));
    }
    if row_labels.len() != rows || col_labels.len() != cols {
        return Err(Error::InvalidArgument(format!(
            "label counts {}x{} do not match matrix {rows}x{cols}",
            row_labels.len(),
            col_labels.len()
        )));
    }
    let range = Range::of((0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(
        |(i, j)| values.get(i, j),
    ));
    let cell = 14.0;
    let (left, top) = (140.0, 90.0);
    let width = left + cols as f64 * cell + 80.0;
    let height = top + rows as f64 * cell + 20.0;
    let mut svg = svg_open(width, height);
    let _ = write!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{width:.2}\" height=\"{height:.2}\" fill=\"white\"/>\n"
    );
    for (j, label) in col_labels.iter().enumerate() {
        let x = left + (j as f64 + 0.5) * cell;
        let _ = write!(
            svg,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"9\" font-family=\"sans-serif\" \
             text-anchor=\"start\" transform=\"rotate(-60 {x:.2} {y:.2})\">{t}</text>\n",
            y = top - 6.0,
            t = escape_xml(label)
        );
    }
    for (i, label) in row_labels.iter().enumerate() {
        let _ = write!(
            svg,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"9\" font-family=\"sans-serif\" \
             text-anchor=\"end\">{t}</text>\n",
            x = left - 6.0,
            y = top + (i as f64 + 0.75) * cell,
            t = escape_xml(label)
        );
    }
    for i in 0..rows {
        for j in 0..cols {
            let t = range.to_unit(values.get(i, j));
            let _ = write!(
                svg,
                "<rect class=\"cell\" x=\"{x:.2}\" y=\"{y:.2}\" width=\"{cell:.2}\" \
                 height=\"{cell:.2}\" fill=\"{f}\"/>\n",
                x = left + j as f64 * cell,
                y = top + i as f64 * cell,
                f = shade(t)
            );
        }
    }
    // Legend: five swatches from minimum to maximum.
    let lx = left + cols as f64 * cell + 16.0;
    for step in 0..5 {
        let t = step as f64 / 4.0;
        let _ = write!(
            svg,
            "<rect class=\"legend\" x=\"{lx:.2}\" y=\"{y:.2}\" width=\"14.00\" \
             height=\"14.00\" fill=\"{f}\"/>\n\
             <text x=\"{tx:.2}\" y=\"{ty:.2}\" font-size=\"9\" \
             font-family=\"sans-serif\">{v}</text>\n",
            y = top + step as f64 * 18.0,
            f = shade(t),
            tx = lx + 18.0,
            ty = top + step as f64 * 18.0 + 11.0,
            v = crate::export::fmt4(range.min + t * (range.max - range.min)),
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn shade(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let r = (255.0 - t * (255.0 - 28.0)).round() as u8;
    let g = (255.0 - t * (255.0 - 69.0)).round() as u8;
    let b = (255.0 - t * (255.0 - 135.0)).round() as u8;
    format!("rgb({r},{g},{b})")
}

/// One horizontal strip per word with a class="tick" mark at each relative
/// position in [0, 1].
pub fn dispersion_plot(rows: &[(String, Vec<f64>)]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyInput("dispersion plot with no words".into()));
    }
    let (left, strip_w, strip_h, top) = (120.0, 480.0, 26.0, 40.0);
    let width = left + strip_w + 20.0;
    let height = top + rows.len() as f64 * strip_h + 20.0;
    let mut svg = svg_open(width, height);
    let _ = write!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{width:.2}\" height=\"{height:.2}\" fill=\"white\"/>\n"
    );
    for (i, (word, positions)) in rows.iter().enumerate() {
        let y = top + i as f64 * strip_h;
        let _ = write!(
            svg,
            "<text x=\"{x:.2}\" y=\"{ty:.2}\" font-size=\"11\" \
             font-family=\"sans-serif\" text-anchor=\"end\">{w}</text>\n\
             <rect x=\"{left:.2}\" y=\"{y:.2}\" width=\"{strip_w:.2}\" \
             height=\"{h:.2}\" fill=\"none\" stroke=\"black\"/>\n",
            x = left - 8.0,
            ty = y + strip_h * 0.65,
            w = escape_xml(word),
            h = strip_h - 6.0,
        );
        for p in positions {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::InvalidArgument(format!(
                    "dispersion position {p} for {word:?} is outside [0,1]"
                )));
            }
            let x = left + p * strip_w;
            let _ = write!(
                svg,
                "<line class=\"tick\" x1=\"{x:.2}\" y1=\"{y1:.2}\" x2=\"{x:.2}\" \
                 y2=\"{y2:.2}\" stroke=\"black\"/>\n",
                y1 = y + 1.0,
                y2 = y + strip_h - 7.0,
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
