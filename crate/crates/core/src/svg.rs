//! Planar rendering of a triangulated `Δ²`: cells, vertex labels, owner
//! colours, and fully-labeled cells highlighted.

use std::fmt::Write;

use crate::error::{invalid, Result};
use crate::rational::to_f64;
use crate::triangulation::{Ownership, Triangulation};

/// Pixels per unit side of the embedded triangle.
pub const SCALE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const OWNER_COLOURS: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];
const HIGHLIGHT: &str = "#ffd54f";

/// Equilateral embedding with unit side: the main vertex of piece 1 sits at
/// the bottom left, piece 2 at the bottom right, piece 3 at the top.
fn embed(lengths: &[f64]) -> (f64, f64) {
    let h = 3f64.sqrt() / 2.0;
    let x = lengths[1] + 0.5 * lengths[2];
    let y = h * lengths[2];
    (MARGIN + SCALE * x, MARGIN + SCALE * (h - y))
}

fn coord(v: f64) -> String {
    // avoid "-0.00"
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Renders `tri` (which must have `n = 3`). `labels`, when given, holds one
/// label in `1..=3` per vertex; cells carrying all three are highlighted.
pub fn render(
    tri: &Triangulation,
    labels: Option<&[usize]>,
    ownership: Option<&Ownership>,
) -> Result<String> {
    if tri.n() != 3 {
        return Err(invalid("plots are planar: n must be 3"));
    }
    if let Some(l) = labels {
        if l.len() != tri.vertices().len() {
            return Err(invalid("one label per vertex is required"));
        }
    }
    let points: Vec<(f64, f64)> = tri
        .vertices()
        .iter()
        .map(|p| embed(&p.lengths().iter().map(to_f64).collect::<Vec<_>>()))
        .collect();
    let width = SCALE + 2.0 * MARGIN;
    let height = SCALE * 3f64.sqrt() / 2.0 + 2.0 * MARGIN;
    let font = (SCALE / (tri.vertices().len() as f64).sqrt() / 3.0).clamp(4.0, 16.0);
    let radius = font / 3.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = coord(width),
        h = coord(height)
    );
    out.push_str("<g id=\"cells\" stroke=\"#444\" stroke-width=\"0.5\">\n");
    for (c, cell) in tri.cells().iter().enumerate() {
        let full = labels.is_some_and(|l| {
            let mut seen = [false; 3];
            cell.iter().for_each(|&v| {
                if (1..=3).contains(&l[v]) {
                    seen[l[v] - 1] = true
                }
            });
            seen.iter().all(|&s| s)
        });
        let pts: Vec<String> = cell
            .iter()
            .map(|&v| format!("{},{}", coord(points[v].0), coord(points[v].1)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon data-cell="{c}"{cls} points="{}" fill="{}"/>"#,
            pts.join(" "),
            if full { HIGHLIGHT } else { "#ffffff" },
            cls = if full {
                r#" class="fully-labeled""#
            } else {
                ""
            },
        );
    }
    out.push_str("</g>\n");
    let corners = [
        embed(&[1.0, 0.0, 0.0]),
        embed(&[0.0, 1.0, 0.0]),
        embed(&[0.0, 0.0, 1.0]),
    ];
    let outline: Vec<String> = corners
        .iter()
        .map(|(x, y)| format!("{},{}", coord(*x), coord(*y)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon id="outline" points="{}" fill="none" stroke="#000" stroke-width="1.5"/>"##,
        outline.join(" ")
    );
    out.push_str("<g id=\"vertices\">\n");
    for (v, (x, y)) in points.iter().enumerate() {
        let colour = ownership.map_or("#000000", |o| OWNER_COLOURS[o.owner(v) % 3]);
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{colour}"/>"#,
            coord(*x),
            coord(*y),
            coord(radius)
        );
        if let Some(l) = labels {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="{}" font-family="sans-serif">{}</text>"#,
                coord(x + radius),
                coord(y - radius),
                coord(font),
                l[v]
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
