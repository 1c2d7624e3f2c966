use std::fmt::Write as _;
use std::path::Path;

use oscillab::experiments::DecayRun;

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (H - TOP - BOTTOM)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Intercept of the line with the given slope through the centroid of `pts`.
fn through_centroid(pts: &[(f64, f64)], slope: f64) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    my - slope * mx
}

/// log₂-log₂ plot of a sweep: one marker per λ, the fitted line over the fit window, the predicted
/// slope through the same centroid, and shaded bands where the grid diagnostic failed.
///
/// # Panics
/// If the run has no points.
pub fn render_svg(run: &DecayRun) -> String {
    assert!(!run.points.is_empty(), "render_svg: empty run");
    let pts: Vec<(f64, f64)> = run.points.iter().map(|p| (p.lambda.log2(), p.value.max(f64::MIN_POSITIVE).log2())).collect();
    let fit_pts: Vec<(f64, f64)> = match run.window {
        Some((a, b)) => pts[a..=b].to_vec(),
        None => pts.clone(),
    };
    let (xmin, xmax) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let mut lines: Vec<(&str, f64, f64)> = Vec::new();
    if let Some(s) = run.slope {
        lines.push(("fit", s, through_centroid(&fit_pts, s)));
    }
    lines.push(("predicted", run.predicted, through_centroid(&fit_pts, run.predicted)));
    let mut ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    for &(_, s, c) in &lines {
        ys.push(s * xmin + c);
        ys.push(s * xmax + c);
    }
    let (ymin, ymax) = ys.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
    let xpad = ((xmax - xmin) * 0.05).max(0.25);
    let ypad = ((ymax - ymin) * 0.08).max(0.25);
    let fr = Frame { x0: xmin - xpad, x1: xmax + xpad, y0: ymin - ypad, y1: ymax + ypad };

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    // diagnostics shading, half-way to the neighbours
    for (i, p) in run.points.iter().enumerate() {
        if p.diag_pass {
            continue;
        }
        let lo = if i == 0 { fr.x0 } else { (pts[i - 1].0 + pts[i].0) / 2.0 };
        let hi = if i + 1 == pts.len() { fr.x1 } else { (pts[i].0 + pts[i + 1].0) / 2.0 };
        let _ = writeln!(
            s,
            r##"<rect class="diag-fail" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#f4c7c3" fill-opacity="0.6"/>"##,
            fr.px(lo),
            TOP,
            fr.px(hi) - fr.px(lo),
            H - TOP - BOTTOM
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    );
    let mut ticks = String::new();
    for k in (fr.x0.ceil() as i64)..=(fr.x1.floor() as i64) {
        let x = fr.px(k as f64);
        let _ = write!(ticks, "M{x:.2} {:.2}v5", H - BOTTOM);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">2^{k}</text>"#, H - BOTTOM + 18.0);
    }
    let span = fr.y1 - fr.y0;
    let ystep = [0.1, 0.2, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0]
        .into_iter()
        .find(|st| span / st <= 8.0)
        .unwrap_or(100.0);
    let mut k = (fr.y0 / ystep).ceil() as i64;
    while (k as f64) * ystep <= fr.y1 {
        let v = k as f64 * ystep;
        let y = fr.py(v);
        let label = format!("{:.2}", v);
        let label = match label.trim_end_matches('0').trim_end_matches('.') {
            "-0" | "" => "0",
            t => t,
        };
        let _ = write!(ticks, "M{LEFT} {y:.2}h-5");
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">2^{label}</text>"#, LEFT - 8.0, y + 4.0);
        k += 1;
    }
    let _ = writeln!(s, r#"<path class="ticks" d="{ticks}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">lambda</text>"#, (LEFT + W - RIGHT) / 2.0, H - 12.0);
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">norm</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0
    );
    for &(class, slope, c) in &lines {
        let (color, dash) = if class == "fit" { ("#1f5fa8", "") } else { ("#b03a2e", r#" stroke-dasharray="6 4""#) };
        let _ = writeln!(
            s,
            r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.5"{dash}/>"#,
            fr.px(xmin),
            fr.py(slope * xmin + c),
            fr.px(xmax),
            fr.py(slope * xmax + c)
        );
    }
    for (p, &(x, y)) in run.points.iter().zip(&pts) {
        let fill = if p.diag_pass { "black" } else { "white" };
        let _ = writeln!(
            s,
            r#"<circle class="marker" cx="{:.2}" cy="{:.2}" r="4" fill="{fill}" stroke="black"/>"#,
            fr.px(x),
            fr.py(y)
        );
    }
    let fitted = run.slope.map(|v| format!("{v:.4}")).unwrap_or_else(|| "none".into());
    let _ = writeln!(
        s,
        r#"<text x="{LEFT}" y="24">{} | slope {fitted} | predicted {} ({:.4}) | {}</text>"#,
        escape(&run.entry),
        escape(&run.predicted_exact),
        run.predicted,
        run.verdict
    );
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(run: &DecayRun, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, render_svg(run))
}
