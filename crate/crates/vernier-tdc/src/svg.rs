//! Minimal SVG plots: a staircase for transfer curves, bars for error
//! histograms. Presentation only, never part of golden-file comparisons.

use crate::characterization::TransferCurve;
use crate::tofpet::ErrorHistogram;
use std::fmt::Write as _;

const W: f64 = 800.0;
const H: f64 = 480.0;
const MARGIN: f64 = 40.0;

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"20\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">{title}</text>\n",
        W / 2.0
    )
}

pub fn transfer_curve_svg(curve: &TransferCurve) -> String {
    let points = curve.points();
    let mut out = header("transfer curve (dt fs vs code)");
    if points.len() > 1 {
        let x_min = points[0].0.as_fs() as f64;
        let x_max = points[points.len() - 1].0.as_fs() as f64;
        let y_max = points.iter().map(|&(_, c)| c).max().unwrap_or(1).max(1) as f64;
        let sx = |x: f64| MARGIN + (x - x_min) / (x_max - x_min).max(1.0) * (W - 2.0 * MARGIN);
        let sy = |y: f64| H - MARGIN - y / y_max * (H - 2.0 * MARGIN);
        let mut path = String::new();
        let mut last_y = None;
        for &(dt, code) in points {
            let (x, y) = (sx(dt.as_fs() as f64), sy(code as f64));
            if path.is_empty() {
                let _ = write!(path, "M{x:.2},{y:.2}");
            } else if last_y != Some(code) {
                // staircase: horizontal to the new x, then vertical
                let _ = write!(path, " H{x:.2} V{y:.2}");
            }
            last_y = Some(code);
        }
        let final_x = sx(x_max);
        let _ = write!(path, " H{final_x:.2}");
        let _ = writeln!(
            out,
            "<path d=\"{path}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>"
        );
        let _ = writeln!(
            out,
            "<line x1=\"{MARGIN}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>",
            H - MARGIN,
            W - MARGIN
        );
        let _ = writeln!(
            out,
            "<line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{}\" stroke=\"black\"/>",
            H - MARGIN
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn error_histogram_svg(hist: &ErrorHistogram) -> String {
    let mut out = header("localization error histogram (mm)");
    if !hist.counts.is_empty() {
        let lo = *hist.counts.keys().min().expect("non-empty");
        let hi = *hist.counts.keys().max().expect("non-empty");
        let n_bins = (hi - lo + 1) as f64;
        let peak = hist.counts.values().copied().max().unwrap_or(1) as f64;
        let bar_w = (W - 2.0 * MARGIN) / n_bins;
        for (&bin, &count) in &hist.counts {
            let x = MARGIN + (bin - lo) as f64 * bar_w;
            let h = count as f64 / peak * (H - 2.0 * MARGIN);
            let y = H - MARGIN - h;
            let _ = writeln!(
                out,
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{h:.2}\" fill=\"indianred\"/>",
                bar_w.max(1.0)
            );
        }
        let _ = writeln!(
            out,
            "<line x1=\"{MARGIN}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>",
            H - MARGIN,
            W - MARGIN
        );
    }
    out.push_str("</svg>\n");
    out
}
