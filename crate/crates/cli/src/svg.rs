//! Minimal static SVG charts.

use std::fmt::Write;

const W: f64 = 480.0;
const H: f64 = 360.0;
const PAD: f64 = 50.0;

fn header(out: &mut String, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(out, r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#, W / 2.0, escape(title)).unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Blue for 0, red for 1.
fn ramp(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.5 };
    format!("rgb({},{},{})", (255.0 * t) as u8, 40, (255.0 * (1.0 - t)) as u8)
}

fn range(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v.filter(|x| x.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn axes(out: &mut String, xlabel: &str, ylabel: &str, x: (f64, f64), y: (f64, f64)) {
    writeln!(
        out,
        r#"<path d="M{PAD},{PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    )
    .unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 12.0, escape(xlabel)).unwrap();
    writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    )
    .unwrap();
    writeln!(out, r#"<text x="{PAD}" y="{}" text-anchor="middle">{:.3}</text>"#, H - PAD + 14.0, x.0).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{:.3}</text>"#, W - PAD, H - PAD + 14.0, x.1).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{:.3}</text>"#, PAD - 4.0, H - PAD, y.0).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{:.3}</text>"#, PAD - 4.0, PAD + 4.0, y.1).unwrap();
}

/// Points `(x, y, colour value)`; colours are rescaled to the data range.
pub fn scatter(title: &str, xlabel: &str, ylabel: &str, pts: &[(f64, f64, f64)]) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let xr = range(pts.iter().map(|p| p.0));
    let yr = range(pts.iter().map(|p| p.1));
    let cr = range(pts.iter().map(|p| p.2));
    axes(&mut out, xlabel, ylabel, xr, yr);
    for &(x, y, c) in pts {
        let px = PAD + (x - xr.0) / (xr.1 - xr.0) * (W - 2.0 * PAD);
        let py = H - PAD - (y - yr.0) / (yr.1 - yr.0) * (H - 2.0 * PAD);
        writeln!(
            out,
            r#"<circle cx="{px:.2}" cy="{py:.2}" r="3.5" fill="{}" fill-opacity="0.8"/>"#,
            ramp((c - cr.0) / (cr.1 - cr.0))
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Grouped bars: one cluster per category, one bar per series.
pub fn bars(title: &str, categories: &[String], series: &[(String, Vec<f64>)]) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let top = series.iter().flat_map(|s| s.1.iter().copied()).fold(0.0, f64::max).max(1e-12);
    axes(&mut out, "type", "occurrence", (0.0, categories.len() as f64), (0.0, top));
    let slot = (W - 2.0 * PAD) / categories.len().max(1) as f64;
    let bw = slot * 0.8 / series.len().max(1) as f64;
    for (c, name) in categories.iter().enumerate() {
        let x0 = PAD + c as f64 * slot + slot * 0.1;
        for (s, (_, vals)) in series.iter().enumerate() {
            let v = vals.get(c).copied().unwrap_or(0.0);
            let h = v / top * (H - 2.0 * PAD);
            let t = if series.len() > 1 { s as f64 / (series.len() - 1) as f64 } else { 0.5 };
            writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{bw:.2}" height="{h:.2}" fill="{}"/>"#,
                x0 + s as f64 * bw,
                H - PAD - h,
                ramp(t)
            )
            .unwrap();
        }
        writeln!(out, r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#, x0 + slot * 0.4, H - PAD + 26.0, escape(name)).unwrap();
    }
    for (s, (name, _)) in series.iter().enumerate() {
        let t = if series.len() > 1 { s as f64 / (series.len() - 1) as f64 } else { 0.5 };
        let y = PAD + 14.0 * s as f64;
        writeln!(out, r#"<rect x="{}" y="{}" width="10" height="10" fill="{}"/>"#, W - PAD - 70.0, y - 9.0, ramp(t)).unwrap();
        writeln!(out, r#"<text x="{}" y="{y}">{}</text>"#, W - PAD - 55.0, escape(name)).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Square matrix in [-1, 1]; undefined cells are grey.
pub fn heatmap(title: &str, labels: &[String], values: &[Vec<Option<f64>>]) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let n = labels.len().max(1) as f64;
    let cell = (H - 2.0 * PAD).min(W - 2.0 * PAD) / n;
    for (i, row) in values.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let fill = v.map_or("rgb(200,200,200)".to_string(), |v| ramp((v + 1.0) / 2.0));
            let (x, y) = (PAD + j as f64 * cell, PAD + i as f64 * cell);
            writeln!(out, r#"<rect x="{x:.2}" y="{y:.2}" width="{cell:.2}" height="{cell:.2}" fill="{fill}"/>"#).unwrap();
            if let Some(v) = v {
                writeln!(
                    out,
                    r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" fill="white">{v:.2}</text>"#,
                    x + cell / 2.0,
                    y + cell / 2.0 + 4.0
                )
                .unwrap();
            }
        }
    }
    for (i, l) in labels.iter().enumerate() {
        let c = PAD + (i as f64 + 0.5) * cell;
        writeln!(out, r#"<text x="{c:.2}" y="{}" text-anchor="middle">{}</text>"#, PAD - 6.0, escape(l)).unwrap();
        writeln!(out, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, PAD - 6.0, c + 4.0, escape(l)).unwrap();
    }
    out.push_str("</svg>\n");
    out
}
