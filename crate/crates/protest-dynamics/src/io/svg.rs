//! Heat-map rendering as standalone SVG. One rectangle per cell, fill
//! lightness monotone in the metric (lighter = smaller), labeled axes, and a
//! scalar color-bar legend.

use std::fmt::Write;

use crate::sweep::{Metric, SweepGrid};

const LIGHT: (f64, f64, f64) = (247.0, 251.0, 255.0);
const DARK: (f64, f64, f64) = (8.0, 48.0, 107.0);

const PLOT_W: f64 = 600.0;
const PLOT_H: f64 = 440.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 52.0;
const LEGEND_W: f64 = 18.0;
const LEGEND_GAP: f64 = 28.0;
const MARGIN_RIGHT: f64 = 96.0;

fn color_for(t: f64) -> String {
    let lerp = |a: f64, b: f64| (a + t * (b - a)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(LIGHT.0, DARK.0),
        lerp(LIGHT.1, DARK.1),
        lerp(LIGHT.2, DARK.2)
    )
}

/// Renders the grid's chosen metric. Cell fills interpolate a light-to-dark
/// ramp between the metric's minimum and maximum; a constant grid renders
/// uniformly light.
pub fn render_heatmap_svg(grid: &SweepGrid, metric: Metric) -> String {
    let (n1, n2) = grid.shape();
    let values: Vec<f64> = grid.cells.iter().map(|c| metric.value(c)).collect();
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let scale = |v: f64| if span > 0.0 { (v - min) / span } else { 0.0 };

    let width = MARGIN_LEFT + PLOT_W + LEGEND_GAP + MARGIN_RIGHT;
    let height = MARGIN_TOP + PLOT_H + MARGIN_BOTTOM;
    let cell_w = PLOT_W / n1 as f64;
    let cell_h = PLOT_H / n2 as f64;

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\" font-size=\"12\">"
    )
    .unwrap();
    writeln!(
        out,
        "  <defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\
         <stop offset=\"0\" stop-color=\"{}\"/><stop offset=\"1\" stop-color=\"{}\"/>\
         </linearGradient></defs>",
        color_for(0.0),
        color_for(1.0)
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"14\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + PLOT_W / 2.0,
        metric.name()
    )
    .unwrap();

    // Cells: axis1 along x, axis2 along y (increasing upward).
    for i in 0..n1 {
        for j in 0..n2 {
            let t = scale(metric.value(grid.cell(i, j)));
            let x = MARGIN_LEFT + i as f64 * cell_w;
            let y = MARGIN_TOP + PLOT_H - (j + 1) as f64 * cell_h;
            writeln!(
                out,
                "  <rect class=\"cell\" x=\"{x:.2}\" y=\"{y:.2}\" width=\"{cell_w:.2}\" \
                 height=\"{cell_h:.2}\" fill=\"{}\"/>",
                color_for(t)
            )
            .unwrap();
        }
    }

    // Axis labels and extreme ticks.
    let axis1 = &grid.axis1;
    let axis2 = &grid.axis2;
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + PLOT_W / 2.0,
        MARGIN_TOP + PLOT_H + 40.0,
        axis1.target.name()
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 {:.2} {:.2})\">{}</text>",
        16.0,
        MARGIN_TOP + PLOT_H / 2.0,
        16.0,
        MARGIN_TOP + PLOT_H / 2.0,
        axis2.target.name()
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + cell_w / 2.0,
        MARGIN_TOP + PLOT_H + 18.0,
        axis1.values[0]
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + PLOT_W - cell_w / 2.0,
        MARGIN_TOP + PLOT_H + 18.0,
        axis1.values[n1 - 1]
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + PLOT_H - cell_h / 2.0 + 4.0,
        axis2.values[0]
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + cell_h / 2.0 + 4.0,
        axis2.values[n2 - 1]
    )
    .unwrap();

    // Color-bar legend.
    let bar_x = MARGIN_LEFT + PLOT_W + LEGEND_GAP;
    writeln!(
        out,
        "  <rect class=\"legend\" x=\"{bar_x:.2}\" y=\"{:.2}\" width=\"{LEGEND_W:.2}\" \
         height=\"{PLOT_H:.2}\" fill=\"url(#ramp)\" stroke=\"#333\"/>",
        MARGIN_TOP
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
        bar_x + LEGEND_W + 6.0,
        MARGIN_TOP + PLOT_H,
        min
    )
    .unwrap();
    writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
        bar_x + LEGEND_W + 6.0,
        MARGIN_TOP + 10.0,
        max
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}
