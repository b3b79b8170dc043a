//! Static SVG rendering of persistence diagrams and Euler curves.

use std::fmt::Write;

use flatscan::persistence::PersistenceDiagram;
use flatscan::transform::{DphtResult, EulerCurve};

const PANEL: f64 = 240.0;
const MARGIN: f64 = 36.0;
const STRIP: f64 = 14.0;

struct Canvas {
    body: String,
    width: f64,
    height: f64,
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            body: String::new(),
            width: 0.0,
            height: 0.0,
        }
    }

    fn finish(self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="sans-serif" font-size="10">"#,
            w = self.width.max(1.0),
            h = self.height.max(1.0)
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

/// One diagram panel with its top-left corner at `(x0, y0)`.
fn diagram_panel(c: &mut Canvas, d: &PersistenceDiagram, title: &str, x0: f64, y0: f64) {
    let finite = d
        .points()
        .iter()
        .flat_map(|&(b, e)| [Some(b), e.is_finite().then_some(e)])
        .flatten();
    let (lo, hi) = range(finite);
    let side = PANEL - 2.0 * MARGIN;
    let top = y0 + MARGIN + STRIP;
    let sx = |v: f64| x0 + MARGIN + (v - lo) / (hi - lo) * side;
    let sy = |v: f64| top + side - (v - lo) / (hi - lo) * side;
    let b = &mut c.body;
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}">{title}</text>"#, x0 + MARGIN, y0 + 14.0);
    // essential strip
    let _ = writeln!(
        b,
        r##"<rect x="{:.2}" y="{:.2}" width="{side:.2}" height="{STRIP:.2}" fill="#eeeeee"/>"##,
        x0 + MARGIN,
        y0 + MARGIN - 2.0
    );
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}">inf</text>"#, x0 + 8.0, y0 + MARGIN + 8.0);
    let _ = writeln!(
        b,
        r#"<rect x="{:.2}" y="{top:.2}" width="{side:.2}" height="{side:.2}" fill="none" stroke="black"/>"#,
        x0 + MARGIN
    );
    let _ = writeln!(
        b,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888888"/>"##,
        sx(lo),
        sy(lo),
        sx(hi),
        sy(hi)
    );
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}">birth</text>"#, x0 + PANEL / 2.0 - 12.0, top + side + 24.0);
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}">{lo:.3}</text>"#, x0 + MARGIN, top + side + 12.0);
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{hi:.3}</text>"#, x0 + MARGIN + side, top + side + 12.0);
    for &(birth, death) in d.points() {
        let y = if death.is_finite() { sy(death) } else { y0 + MARGIN + STRIP / 2.0 - 2.0 };
        let _ = writeln!(
            b,
            r##"<circle cx="{:.2}" cy="{y:.2}" r="3" fill="{}"/>"##,
            sx(birth),
            if death.is_finite() { "#1f5fbf" } else { "#c0392b" }
        );
    }
    c.width = c.width.max(x0 + PANEL);
    c.height = c.height.max(y0 + PANEL + STRIP);
}

fn euler_panel(c: &mut Canvas, curve: &EulerCurve, x0: f64, y0: f64) {
    let pts = curve.breakpoints();
    let (xlo, xhi) = range(pts.iter().map(|p| p.0));
    let (ylo, yhi) = range(pts.iter().map(|p| p.1 as f64).chain([0.0]));
    let side = PANEL - 2.0 * MARGIN;
    let top = y0 + MARGIN + STRIP;
    let sx = |v: f64| x0 + MARGIN + (v - xlo) / (xhi - xlo) * side;
    let sy = |v: f64| top + side - (v - ylo) / (yhi - ylo) * side;
    let b = &mut c.body;
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}">Euler curve</text>"#, x0 + MARGIN, y0 + 14.0);
    let _ = writeln!(
        b,
        r#"<rect x="{:.2}" y="{top:.2}" width="{side:.2}" height="{side:.2}" fill="none" stroke="black"/>"#,
        x0 + MARGIN
    );
    let mut path = String::new();
    let mut prev: Option<i64> = None;
    for &(x, chi) in pts {
        match prev {
            None => {
                let _ = write!(path, "M{:.2},{:.2}", sx(xlo), sy(0.0));
                let _ = write!(path, " H{:.2} V{:.2}", sx(x), sy(chi as f64));
            }
            Some(_) => {
                let _ = write!(path, " H{:.2} V{:.2}", sx(x), sy(chi as f64));
            }
        }
        prev = Some(chi);
    }
    if prev.is_some() {
        let _ = write!(path, " H{:.2}", sx(xhi));
        let _ = writeln!(b, r##"<path d="{path}" fill="none" stroke="#1f5fbf"/>"##);
    }
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}">r</text>"#, x0 + PANEL / 2.0, top + side + 24.0);
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{yhi:.0}</text>"#, x0 + MARGIN - 4.0, top + 8.0);
    let _ = writeln!(b, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{ylo:.0}</text>"#, x0 + MARGIN - 4.0, top + side);
    c.width = c.width.max(x0 + PANEL);
    c.height = c.height.max(y0 + PANEL + STRIP);
}

pub fn diagram_svg(d: &PersistenceDiagram) -> String {
    let mut c = Canvas::new();
    diagram_panel(&mut c, d, &format!("degree {}", d.degree()), 0.0, 0.0);
    c.finish()
}

/// One row per flat: a panel per degree, then the Euler curve if present.
pub fn scan_svg(r: &DphtResult) -> String {
    let mut c = Canvas::new();
    let row_height = PANEL + STRIP + 10.0;
    for (i, rec) in r.records.iter().enumerate() {
        let y0 = i as f64 * row_height;
        for (k, d) in rec.diagrams.iter().enumerate() {
            diagram_panel(&mut c, d, &format!("flat {i}, degree {}", d.degree()), k as f64 * PANEL, y0);
        }
        if let Some(curve) = &rec.euler_curve {
            euler_panel(&mut c, curve, rec.diagrams.len() as f64 * PANEL, y0);
        }
    }
    c.finish()
}
