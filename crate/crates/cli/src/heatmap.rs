//! Self-contained SVG heatmap of a sweep's final means. Color encodes the
//! median final mean over [mu_i, mu_a]: red at the low end (full
//! coarticulation) through white to dark blue at the high end (none).

use actuation_core::{SweepCell, SweepSpec};

const RED: [f64; 3] = [178.0, 24.0, 43.0];
const WHITE: [f64; 3] = [247.0, 247.0, 247.0];
const BLUE: [f64; 3] = [33.0, 102.0, 172.0];

const CELL: f64 = 28.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 55.0;
const LEGEND_GAP: f64 = 30.0;
const LEGEND_W: f64 = 16.0;
const LEGEND_TEXT_W: f64 = 50.0;

fn lerp(a: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
    [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t]
}

/// Hex color for a final mean, on the red-white-blue ramp over
/// [mu_i, mu_a].
pub fn color_for(value: f64, mu_i: f64, mu_a: f64) -> String {
    let t = ((value - mu_i) / (mu_a - mu_i)).clamp(0.0, 1.0);
    let rgb = if t < 0.5 { lerp(RED, WHITE, t * 2.0) } else { lerp(WHITE, BLUE, t * 2.0 - 1.0) };
    format!("#{:02x}{:02x}{:02x}", rgb[0].round() as u8, rgb[1].round() as u8, rgb[2].round() as u8)
}

fn fmt_tick(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e6 {
        format!("{v:.0}")
    } else {
        format!("{v}")
    }
}

/// Render the grid with x = first axis, y = second axis (single row for
/// 1-axis sweeps), plus an embedded color legend.
pub fn render_heatmap(spec: &SweepSpec, cells: &[SweepCell]) -> String {
    let mu_i = spec.base.mu_i;
    let mu_a = spec.base.mu_a;
    let xs = &spec.axes[0].values;
    let ys: &[f64] = if spec.axes.len() == 2 { &spec.axes[1].values } else { &[0.0] };
    let grid_w = CELL * xs.len() as f64;
    let grid_h = CELL * ys.len() as f64;
    let width = MARGIN_LEFT + grid_w + LEGEND_GAP + LEGEND_W + LEGEND_TEXT_W;
    let height = MARGIN_TOP + grid_h.max(120.0) + MARGIN_BOTTOM;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\" font-size=\"11\">\n"
    ));
    svg.push_str(
        "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\
         <stop offset=\"0\" stop-color=\"#b2182b\"/>\
         <stop offset=\"0.5\" stop-color=\"#f7f7f7\"/>\
         <stop offset=\"1\" stop-color=\"#2166ac\"/>\
         </linearGradient></defs>\n",
    );

    // cells, first axis left to right, second axis bottom to top
    for cell in cells {
        let i = cell.index / ys.len().max(1);
        let j = cell.index % ys.len().max(1);
        let (i, j) = if spec.axes.len() == 2 { (i, j) } else { (cell.index, 0) };
        let x = MARGIN_LEFT + i as f64 * CELL;
        let y = MARGIN_TOP + grid_h - (j + 1) as f64 * CELL;
        let color = color_for(cell.median_final(), mu_i, mu_a);
        svg.push_str(&format!(
            "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{CELL}\" height=\"{CELL}\" \
             fill=\"{color}\" stroke=\"#ffffff\" stroke-width=\"0.5\"/>\n"
        ));
    }

    // x ticks and axis name
    for (i, v) in xs.iter().enumerate() {
        let x = MARGIN_LEFT + (i as f64 + 0.5) * CELL;
        let y = MARGIN_TOP + grid_h + 14.0;
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"middle\">{}</text>\n",
            fmt_tick(*v)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-weight=\"bold\">{}</text>\n",
        MARGIN_LEFT + grid_w / 2.0,
        MARGIN_TOP + grid_h + 36.0,
        spec.axes[0].param
    ));

    // y ticks and axis name for 2-axis grids
    if spec.axes.len() == 2 {
        for (j, v) in ys.iter().enumerate() {
            let x = MARGIN_LEFT - 6.0;
            let y = MARGIN_TOP + grid_h - (j as f64 + 0.5) * CELL + 4.0;
            svg.push_str(&format!(
                "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"end\">{}</text>\n",
                fmt_tick(*v)
            ));
        }
        svg.push_str(&format!(
            "<text x=\"14\" y=\"{:.1}\" text-anchor=\"middle\" font-weight=\"bold\" \
             transform=\"rotate(-90 14 {:.1})\">{}</text>\n",
            MARGIN_TOP + grid_h / 2.0,
            MARGIN_TOP + grid_h / 2.0,
            spec.axes[1].param
        ));
    }

    // legend: gradient bar with the domain endpoints and midpoint labeled
    let lx = MARGIN_LEFT + grid_w + LEGEND_GAP;
    let lh = grid_h.max(120.0);
    svg.push_str(&format!(
        "<rect x=\"{lx:.1}\" y=\"{MARGIN_TOP}\" width=\"{LEGEND_W}\" height=\"{lh:.1}\" \
         fill=\"url(#ramp)\" stroke=\"#888888\" stroke-width=\"0.5\"/>\n"
    ));
    for (frac, v) in [(0.0, mu_a), (0.5, (mu_i + mu_a) / 2.0), (1.0, mu_i)] {
        let y = MARGIN_TOP + frac * lh + 4.0;
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{y:.1}\">{}</text>\n",
            lx + LEGEND_W + 6.0,
            fmt_tick(v)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{lx:.1}\" y=\"{:.1}\" font-weight=\"bold\">final mean c (Hz)</text>\n",
        MARGIN_TOP - 10.0
    ));
    svg.push_str("</svg>\n");
    svg
}
