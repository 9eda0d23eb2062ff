//! Minimal SVG line charts: axes, one polyline per series, a legend.
//! Self-contained output with no external references.

use std::path::Path;

use crate::io::FileError;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 210.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 52.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// One labelled curve.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

impl Series {
    pub fn new(label: impl Into<String>, xs: Vec<f64>, ys: Vec<f64>) -> Self {
        Self { label: label.into(), xs, ys }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn range_of(series: &[Series], pick_y: bool) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in series {
        let vals = if pick_y { &s.ys } else { &s.xs };
        for &v in vals {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        // Degenerate span: pad so the flat line sits mid-plot.
        return (lo - 1.0, hi + 1.0);
    }
    (lo, hi)
}

/// Render a chart of the given series.
pub fn line_chart(title: &str, series: &[Series]) -> String {
    let (x_lo, x_hi) = range_of(series, false);
    let (y_lo_raw, y_hi_raw) = range_of(series, true);
    let pad = 0.05 * (y_hi_raw - y_lo_raw);
    let (y_lo, y_hi) = (y_lo_raw - pad, y_hi_raw + pad);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, y: f64| {
        (
            MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w,
            MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h,
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        escape(title)
    ));

    // Axes with four tick intervals each.
    svg.push_str(&format!(
        "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"black\"/>\n",
        l = MARGIN_LEFT,
        r = MARGIN_LEFT + plot_w,
        t = MARGIN_TOP,
        b = MARGIN_TOP + plot_h,
    ));
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let x_val = x_lo + f * (x_hi - x_lo);
        let y_val = y_lo + f * (y_hi - y_lo);
        let (x_px, _) = to_px(x_val, y_lo);
        let (_, y_px) = to_px(x_lo, y_val);
        svg.push_str(&format!(
            "<line x1=\"{x_px:.2}\" y1=\"{}\" x2=\"{x_px:.2}\" y2=\"{}\" stroke=\"black\"/>\n",
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x_px:.2}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{x_val:.4}</text>\n",
            MARGIN_TOP + plot_h + 18.0
        ));
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y_px:.2}\" x2=\"{}\" y2=\"{y_px:.2}\" stroke=\"black\"/>\n",
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{y_val:.4}</text>\n",
            MARGIN_LEFT - 8.0,
            y_px + 4.0
        ));
    }

    for (idx, s) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let points: Vec<String> = s
            .xs
            .iter()
            .zip(&s.ys)
            .map(|(&x, &y)| {
                let (px, py) = to_px(x, y);
                format!("{px:.2},{py:.2}")
            })
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
        let legend_y = MARGIN_TOP + 14.0 + idx as f64 * 18.0;
        svg.push_str(&format!(
            "<line x1=\"{lx}\" y1=\"{legend_y:.2}\" x2=\"{}\" y2=\"{legend_y:.2}\" \
             stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            MARGIN_LEFT + plot_w + 38.0,
            lx = MARGIN_LEFT + plot_w + 12.0,
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            MARGIN_LEFT + plot_w + 44.0,
            legend_y + 4.0,
            escape(&s.label)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

pub fn write_line_chart(
    path: impl AsRef<Path>,
    title: &str,
    series: &[Series],
) -> Result<(), FileError> {
    let path = path.as_ref();
    std::fs::write(path, line_chart(title, series))
        .map_err(|source| FileError::Io { path: path.display().to_string(), source })
}
