// SPDX-License-Identifier: MIT OR Apache-2.0

//! Standalone SVG rendering of a series with its piecewise-constant fit.
//!
//! The document contains exactly two `<path>` elements: the raw series
//! polyline and the step-function overlay. The overlay uses `H`/`V`
//! commands only, so the number of `V` risers equals the number of
//! change-points, which keeps the output trivially checkable. Axes and
//! labels are drawn with `<line>` and `<text>`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use wbs2sdll_core::{fitted_signal, Segmentation, TimeSeries};

use crate::error::CliError;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 18.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 46.0;

struct Frame {
    n: usize,
    lo: f64,
    hi: f64,
}

impl Frame {
    fn x(&self, t: f64) -> f64 {
        let denom = (self.n - 1).max(1) as f64;
        MARGIN_LEFT + t / denom * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        let span = self.hi - self.lo;
        MARGIN_TOP + (1.0 - (v - self.lo) / span) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

/// Render `x` and the fit described by `seg` as a standalone SVG document.
pub fn render_svg(x: &TimeSeries, seg: &Segmentation) -> Result<String, CliError> {
    if seg.series_len() != x.len() {
        return Err(CliError::Data(format!(
            "segmentation refers to a series of length {}, got {}",
            seg.series_len(),
            x.len()
        )));
    }
    let fit = fitted_signal(seg);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in x.values().iter().chain(fit.values()) {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    let pad = 0.05 * (hi - lo);
    let (lo, hi) = if hi - lo < 1e-12 {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo - pad, hi + pad)
    };
    let frame = Frame { n: x.len(), lo, hi };

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="16">WBS2.SDLL fit: q_hat = {}, n = {}</text>"#,
        MARGIN_LEFT,
        seg.changepoints().len(),
        x.len()
    );

    draw_axes(&mut svg, &frame);

    // Raw series polyline.
    let _ = write!(
        svg,
        r##"<path fill="none" stroke="#4878a8" stroke-width="1" d=""##
    );
    for (t, v) in x.values().iter().enumerate() {
        let cmd = if t == 0 { 'M' } else { 'L' };
        let _ = write!(svg, "{}{:.2} {:.2} ", cmd, frame.x(t as f64), frame.y(*v));
    }
    let _ = writeln!(svg, r#""/>"#);

    // Step-function overlay: horizontal runs with one vertical riser per
    // change-point, placed halfway between the adjacent observations.
    let means = seg.means();
    let _ = write!(
        svg,
        r##"<path fill="none" stroke="#c03028" stroke-width="2" d=""##
    );
    let _ = write!(
        svg,
        "M{:.2} {:.2} ",
        frame.x(0.0),
        frame.y(means[0])
    );
    for (j, &cp) in seg.changepoints().iter().enumerate() {
        let riser_x = frame.x(cp as f64 - 0.5);
        let _ = write!(svg, "H{riser_x:.2} ");
        let _ = write!(svg, "V{:.2} ", frame.y(means[j + 1]));
    }
    let _ = write!(svg, "H{:.2}", frame.x((x.len() - 1) as f64));
    let _ = writeln!(svg, r#""/>"#);

    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn draw_axes(svg: &mut String, frame: &Frame) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = writeln!(
        svg,
        r##"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="#333333" stroke-width="1"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#333333" stroke-width="1"/>"##
    );
    // Four ticks per axis.
    for k in 0..=3 {
        let t = k as f64 / 3.0 * (frame.n - 1).max(1) as f64;
        let px = frame.x(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{:.2}" stroke="#333333" stroke-width="1"/>"##,
            y0 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            y0 + 18.0,
            t.round() as usize + 1
        );
        let v = frame.lo + k as f64 / 3.0 * (frame.hi - frame.lo);
        let py = frame.y(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="#333333" stroke-width="1"/>"##,
            x0 - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.3}</text>"#,
            x0 - 8.0,
            py + 4.0
        );
    }
}

pub fn write_svg(x: &TimeSeries, seg: &Segmentation, path: &Path) -> Result<(), CliError> {
    let svg = render_svg(x, seg)?;
    fs::write(path, svg)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}
