//! CSV and SVG writers. All numeric formatting is fixed (17 significant
//! digits) so reruns with the same configuration are byte-identical.

use std::fs;
use std::io::Write;
use std::path::Path;

#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let line: Vec<String> = row.iter().map(Cell::render).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    let mut f = fs::File::create(path)?;
    f.write_all(out.as_bytes())
}

/// One polyline per series on a log-scaled y axis.
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub series: Vec<(String, Vec<(f64, f64)>)>,
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

pub fn write_svg(path: &Path, plot: &Plot) -> std::io::Result<()> {
    let (w, h) = (840.0_f64, 600.0_f64);
    let (ml, mr, mt, mb) = (70.0, 180.0, 40.0, 50.0);
    let floor = 1e-16_f64;

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for (_, pts) in &plot.series {
        for &(x, y) in pts {
            if x.is_finite() {
                xs.push(x);
            }
            if y.is_finite() && y > 0.0 {
                ys.push(y.max(floor).log10());
            }
        }
    }
    let (x0, x1) = bounds(&xs, 0.0, 1.0);
    let (y0, y1) = bounds(&ys, -1.0, 1.0);

    let px = |x: f64| ml + (x - x0) / (x1 - x0).max(1e-12) * (w - ml - mr);
    let py = |logy: f64| h - mb - (logy - y0) / (y1 - y0).max(1e-12) * (h - mt - mb);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        (w - mr + ml) / 2.0,
        xml_escape(&plot.title)
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        h - mb,
        w - mr,
        h - mb
    ));
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>\n",
        h - mb
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        (w - mr + ml) / 2.0,
        h - 12.0,
        xml_escape(&plot.x_label)
    ));
    // y decade ticks
    let lo = y0.floor() as i64;
    let hi = y1.ceil() as i64;
    let mut tick = lo;
    while tick <= hi {
        let yy = py(tick as f64);
        if yy >= mt && yy <= h - mb {
            svg.push_str(&format!(
                "<line x1=\"{}\" y1=\"{yy}\" x2=\"{ml}\" y2=\"{yy}\" stroke=\"black\"/>\n",
                ml - 5.0
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">1e{tick}</text>\n",
                ml - 8.0,
                yy + 4.0
            ));
        }
        tick += ((hi - lo) / 10).max(1);
    }

    for (idx, (name, pts)) in plot.series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let path_pts: Vec<String> = pts
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y.abs().max(floor).log10())))
            .collect();
        if path_pts.len() > 1 {
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                path_pts.join(" ")
            ));
        }
        let ly = mt + 16.0 * idx as f64;
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            w - mr + 10.0,
            w - mr + 34.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n",
            w - mr + 40.0,
            ly + 4.0,
            xml_escape(name)
        ));
    }
    svg.push_str("</svg>\n");

    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path)?;
    f.write_all(svg.as_bytes())
}

fn bounds(vals: &[f64], lo_default: f64, hi_default: f64) -> (f64, f64) {
    if vals.is_empty() {
        return (lo_default, hi_default);
    }
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
