//! SVG drawings of a layout.
//!
//! Categories are horizontal bands with the lowest sigma rank at the bottom
//! of the image. Test `i` is a vertical column; each subject passes through
//! its category's band there, ordered within the band by `π_i` from the
//! bottom up. Segments between columns are straight unless `smooth` is set.
//!
//! [`drawing_spec`] computes the geometry; [`render_svg`] only formats it.

use std::fmt::Write;

use super::IoError;
use crate::layout::count_layout_crossings;
use crate::model::{CombinatorialLayout, OpdInstance};

const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 50.0;
/// Empty slots added to each band's occupancy.
const BAND_PADDING: f64 = 1.0;

const PALETTE: [&str; 10] =
    ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub width: f64,
    pub height: f64,
    /// All bands the same height instead of proportional to occupancy.
    pub equal_bands: bool,
    /// Cubic segments instead of straight ones.
    pub smooth: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { width: 800.0, height: 480.0, equal_bands: false, smooth: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub category: usize,
    pub label: String,
    /// SVG coordinates, so `top < bottom`.
    pub top: f64,
    pub bottom: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubjectPath {
    pub subject: usize,
    pub label: String,
    /// One point per test column.
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DrawingSpec {
    pub width: f64,
    pub height: f64,
    pub columns: Vec<f64>,
    pub bands: Vec<Band>,
    pub paths: Vec<SubjectPath>,
    pub crossings: u64,
    pub smooth: bool,
}

pub fn drawing_spec(
    inst: &OpdInstance,
    layout: &CombinatorialLayout,
    options: &RenderOptions,
) -> Result<DrawingSpec, IoError> {
    let sigma = inst.require_sigma()?;
    let crossings = count_layout_crossings(inst, layout)?.total;
    let (k, n, t) = (inst.num_categories(), inst.num_subjects(), inst.num_timestamps());

    let plot_width = options.width - MARGIN_LEFT - MARGIN_RIGHT;
    let columns: Vec<f64> =
        (0..t)
            .map(|i| {
                if t == 1 {
                    MARGIN_LEFT + plot_width / 2.0
                } else {
                    MARGIN_LEFT + plot_width * i as f64 / (t - 1) as f64
                }
            })
            .collect();

    let mut occupancy = vec![0usize; k];
    for test in inst.tests() {
        let mut count = vec![0usize; k];
        for &c in test {
            count[c] += 1;
        }
        for c in 0..k {
            occupancy[c] = occupancy[c].max(count[c]);
        }
    }
    let weight = |c: usize| if options.equal_bands { 1.0 } else { occupancy[c] as f64 + BAND_PADDING };
    let total: f64 = (0..k).map(weight).sum();
    let plot_height = options.height - MARGIN_TOP - MARGIN_BOTTOM;
    let mut bands = vec![None; k];
    let mut bottom = MARGIN_TOP + plot_height;
    for &c in sigma.order() {
        let top = bottom - plot_height * weight(c) / total;
        bands[c] = Some(Band { category: c, label: inst.categories().label(c).to_string(), top, bottom });
        bottom = top;
    }
    let bands: Vec<Band> = bands.into_iter().map(|b| b.expect("sigma covers every category")).collect();

    let mut points = vec![Vec::with_capacity(t); n];
    for (i, pi) in layout.pis().iter().enumerate() {
        let mut size = vec![0usize; k];
        for &s in pi {
            size[inst.category(i, s)] += 1;
        }
        let mut seen = vec![0usize; k];
        for &s in pi {
            let c = inst.category(i, s);
            let band = &bands[c];
            seen[c] += 1;
            let y = band.bottom - (band.bottom - band.top) * seen[c] as f64 / (size[c] + 1) as f64;
            points[s].push((columns[i], y));
        }
    }
    let paths = points
        .into_iter()
        .enumerate()
        .map(|(s, points)| SubjectPath { subject: s, label: inst.subjects()[s].clone(), points })
        .collect();
    let mut ordered = bands;
    ordered.sort_by_key(|b| sigma.rank(b.category));
    Ok(DrawingSpec {
        width: options.width,
        height: options.height,
        columns,
        bands: ordered,
        paths,
        crossings,
        smooth: options.smooth,
    })
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn path_data(points: &[(f64, f64)], smooth: bool) -> String {
    let mut d = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        if i == 0 {
            let _ = write!(d, "M {x:.2} {y:.2}");
        } else if smooth {
            let (px, py) = points[i - 1];
            let mid = (px + x) / 2.0;
            let _ = write!(d, " C {mid:.2} {py:.2} {mid:.2} {y:.2} {x:.2} {y:.2}");
        } else {
            let _ = write!(d, " L {x:.2} {y:.2}");
        }
    }
    d
}

pub fn spec_to_svg(spec: &DrawingSpec) -> String {
    let (w, h) = (spec.width, spec.height);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">"
    );
    if !spec.paths.is_empty() {
        out.push_str("<g class=\"bands\">\n");
        let (x0, x1) = (MARGIN_LEFT - 20.0, w - MARGIN_RIGHT + 20.0);
        for band in &spec.bands {
            let _ = writeln!(
                out,
                "<rect class=\"band\" x=\"{x0:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#e8def8\" stroke=\"#7e57c2\"/>",
                band.top,
                x1 - x0,
                band.bottom - band.top
            );
            let _ = writeln!(
                out,
                "<text class=\"band-label\" x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{}</text>",
                x0 - 6.0,
                (band.top + band.bottom) / 2.0 + 4.0,
                escape(&band.label)
            );
        }
        out.push_str("</g>\n<g class=\"columns\">\n");
        for (i, &x) in spec.columns.iter().enumerate() {
            let _ = writeln!(
                out,
                "<text class=\"column-label\" x=\"{x:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">t{i}</text>",
                h - MARGIN_BOTTOM + 18.0
            );
        }
        out.push_str("</g>\n<g class=\"subjects\" fill=\"none\" stroke-width=\"2\">\n");
        for path in &spec.paths {
            let _ = writeln!(
                out,
                "<path class=\"subject\" d=\"{}\" stroke=\"{}\"><title>{}</title></path>",
                path_data(&path.points, spec.smooth),
                PALETTE[path.subject % PALETTE.len()],
                escape(&path.label)
            );
        }
        out.push_str("</g>\n");
    }
    let _ = writeln!(
        out,
        "<text class=\"caption\" x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">crossings: {}</text>",
        w / 2.0,
        h - 10.0,
        spec.crossings
    );
    out.push_str("</svg>\n");
    out
}

pub fn render_svg(
    inst: &OpdInstance,
    layout: &CombinatorialLayout,
    options: &RenderOptions,
) -> Result<String, IoError> {
    Ok(spec_to_svg(&drawing_spec(inst, layout, options)?))
}
