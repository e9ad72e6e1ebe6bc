use std::fmt::Write;

use num_traits::ToPrimitive;

use super::{ConvexPolygon, RatPoint};

/// One drawable element. `Frame` starts a new panel below the previous one.
#[derive(Clone, Debug)]
pub enum SvgItem {
    Frame(String),
    Polygon { poly: ConvexPolygon, label: String, color: String },
    Point { p: RatPoint, label: String },
    Line { from: RatPoint, to: RatPoint, label: String },
}

const WIDTH: f64 = 480.0;
const PAD: f64 = 36.0;
const TITLE: f64 = 20.0;

fn f(r: &crate::exactalg::Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Panel<'a> {
    title: Option<&'a str>,
    items: Vec<&'a SvgItem>,
}

fn panels(items: &[SvgItem]) -> Vec<Panel<'_>> {
    let mut out: Vec<Panel<'_>> = Vec::new();
    for it in items {
        match it {
            SvgItem::Frame(t) => out.push(Panel { title: Some(t), items: vec![] }),
            other => {
                if out.is_empty() {
                    out.push(Panel { title: None, items: vec![] });
                }
                out.last_mut().unwrap().items.push(other);
            }
        }
    }
    out
}

fn points_of(it: &SvgItem) -> Vec<&RatPoint> {
    match it {
        SvgItem::Frame(_) => vec![],
        SvgItem::Polygon { poly, .. } => poly.vertices().iter().collect(),
        SvgItem::Point { p, .. } => vec![p],
        SvgItem::Line { from, to, .. } => vec![from, to],
    }
}

/// Deterministic SVG: every panel is scaled to a common width, y points up,
/// polygon vertices are labelled with their exact coordinates.
pub fn render_svg(items: &[SvgItem]) -> String {
    let ps = panels(items);
    let mut body = String::new();
    let mut top = 0.0f64;
    for panel in &ps {
        let pts: Vec<&RatPoint> = panel.items.iter().flat_map(|i| points_of(i)).collect();
        let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
        for p in &pts {
            x0 = x0.min(f(&p.x));
            x1 = x1.max(f(&p.x));
            y0 = y0.min(f(&p.y));
            y1 = y1.max(f(&p.y));
        }
        let s = (WIDTH - 2.0 * PAD) / (x1 - x0).max(y1 - y0);
        let h = (y1 - y0) * s + 2.0 * PAD + TITLE;
        let map = |p: &RatPoint| (PAD + (f(&p.x) - x0) * s, top + TITLE + PAD + (y1 - f(&p.y)) * s);
        let _ = writeln!(body, "<g>");
        if let Some(t) = panel.title {
            let _ = writeln!(body, "  <text x=\"{PAD}\" y=\"{:.2}\" font-size=\"14\">{}</text>", top + 16.0, esc(t));
        }
        for it in &panel.items {
            match it {
                SvgItem::Polygon { poly, label, color } => {
                    let coords: Vec<String> = poly
                        .vertices()
                        .iter()
                        .map(|v| {
                            let (x, y) = map(v);
                            format!("{x:.2},{y:.2}")
                        })
                        .collect();
                    let _ = writeln!(
                        body,
                        "  <polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.25\" stroke=\"{}\"><title>{}</title></polygon>",
                        coords.join(" "),
                        esc(color),
                        esc(color),
                        esc(label)
                    );
                    for v in poly.vertices() {
                        let (x, y) = map(v);
                        let _ = writeln!(body, "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\">{}</text>", x + 3.0, y - 3.0, esc(&v.to_string()));
                    }
                }
                SvgItem::Point { p, label } => {
                    let (x, y) = map(p);
                    let _ = writeln!(body, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>");
                    let _ = writeln!(body, "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">{}</text>", x + 4.0, y + 12.0, esc(label));
                }
                SvgItem::Line { from, to, label } => {
                    let (ax, ay) = map(from);
                    let (bx, by) = map(to);
                    let _ = writeln!(
                        body,
                        "  <line x1=\"{ax:.2}\" y1=\"{ay:.2}\" x2=\"{bx:.2}\" y2=\"{by:.2}\" stroke=\"gray\" stroke-dasharray=\"4 2\"><title>{}</title></line>",
                        esc(label)
                    );
                }
                SvgItem::Frame(_) => {}
            }
        }
        let _ = writeln!(body, "</g>");
        top += h;
    }
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{top:.2}\" viewBox=\"0 0 {WIDTH} {top:.2}\">\n{body}</svg>\n"
    )
}
