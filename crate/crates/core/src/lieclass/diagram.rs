//! Root diagrams as text, SVG and JSON.
//!
//! Plane coordinates put a short root on the x axis with unit length. When
//! a second short root orthogonal to it exists (as for B2), the coordinates
//! are exact; otherwise they are floating-point only.

use std::fmt::Write as _;

use serde::Serialize;

use super::{Classification, NamedBasis};
use crate::radix::RadicalNumber;

#[derive(Clone, Debug, Serialize)]
pub struct RootEntry {
    /// Eigenvalues under the Cartan elements, canonical text.
    pub weight: Vec<RadicalNumber>,
    /// Exact plane coordinates when available.
    pub plane: Option<[RadicalNumber; 2]>,
    pub plane_approx: [f64; 2],
    pub squared_length: RadicalNumber,
    pub vector: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDiagram {
    #[serde(rename = "type")]
    pub type_name: String,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub dim: usize,
    pub rank: usize,
    pub cartan: Vec<String>,
    pub killing_cartan: Vec<Vec<RadicalNumber>>,
    pub roots: Vec<RootEntry>,
}

impl RootDiagram {
    pub fn new(c: &Classification, names: &NamedBasis) -> Self {
        let g = &c.geometry;
        let roots = &g.roots;
        let len2 = |r: &[RadicalNumber]| g.inner(r, r);
        let short = roots.iter().min_by(|a, b| len2(a).cmp_value(&len2(b)));
        let frame = short.map(|alpha| {
            let a2 = len2(alpha);
            let partner = roots.iter().find(|r| len2(r) == a2 && g.inner(r, alpha).is_zero());
            (alpha.clone(), a2, partner.cloned())
        });
        let entries = c
            .roots
            .iter()
            .map(|rv| {
                let beta = &rv.weight;
                let (plane, plane_approx) = match &frame {
                    Some((alpha, a2, partner)) => {
                        let u = g.inner(beta, alpha).checked_div(a2).expect("nonzero length");
                        let exact = partner
                            .as_ref()
                            .map(|gamma| [u.clone(), g.inner(beta, gamma).checked_div(a2).expect("nonzero length")]);
                        let approx = match &exact {
                            Some([x, y]) => [x.approx(), y.approx()],
                            None => {
                                // Perpendicular component in floating point.
                                let (b2, a2f) = (len2(beta).approx(), a2.approx());
                                let x = u.approx();
                                let y = (b2 / a2f - x * x).max(0.0).sqrt();
                                let sign = orientation(g, alpha, beta, roots);
                                [x, sign * y]
                            }
                        };
                        (exact, approx)
                    }
                    None => (None, [0.0, 0.0]),
                };
                RootEntry {
                    weight: beta.clone(),
                    plane,
                    plane_approx,
                    squared_length: len2(beta),
                    vector: describe(names, &rv.coords, &rv.vector.to_string()),
                }
            })
            .collect();
        let kc = c.killing_cartan();
        RootDiagram {
            type_name: c.cartan_type.name.to_string(),
            cartan_matrix: c.cartan_type.cartan_matrix.clone(),
            dim: c.dim(),
            rank: c.rank(),
            cartan: c.cartan_coords.iter().map(|h| names.describe(h)).collect(),
            killing_cartan: (0..kc.rows()).map(|i| kc.row(i).to_vec()).collect(),
            roots: entries,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "type: {}  dim {}  rank {}", self.type_name, self.dim, self.rank).unwrap();
        writeln!(out, "cartan: {}", self.cartan.join(", ")).unwrap();
        for e in &self.roots {
            let w: Vec<String> = e.weight.iter().map(ToString::to_string).collect();
            let plane = match &e.plane {
                Some([x, y]) => format!("({x}, {y})"),
                None => format!("({:.5}, {:.5})", e.plane_approx[0], e.plane_approx[1]),
            };
            writeln!(
                out,
                "({})  plane {plane}  |a|^2 = {}  vector {}",
                w.join(", "),
                e.squared_length,
                e.vector
            )
            .unwrap();
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let size = 480.0;
        let c = size / 2.0;
        let extent = self
            .roots
            .iter()
            .map(|e| e.plane_approx[0].abs().max(e.plane_approx[1].abs()))
            .fold(1.0f64, f64::max);
        let scale = (size / 2.0 - 70.0) / extent;
        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="12">"#
        )
        .unwrap();
        writeln!(s, r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>"#).unwrap();
        writeln!(
            s,
            r##"<line x1="20" y1="{c}" x2="{}" y2="{c}" stroke="#bbb"/>"##,
            size - 20.0
        )
        .unwrap();
        writeln!(
            s,
            r##"<line x1="{c}" y1="20" x2="{c}" y2="{}" stroke="#bbb"/>"##,
            size - 20.0
        )
        .unwrap();
        let axis = |i: usize| self.cartan.get(i).cloned().unwrap_or_default();
        writeln!(
            s,
            r#"<text x="20" y="16">{} root system; labels are ({}, {}) eigenvalues</text>"#,
            self.type_name,
            xml(&axis(0)),
            xml(&axis(1))
        )
        .unwrap();
        for e in &self.roots {
            let (x, y) = (c + scale * e.plane_approx[0], c - scale * e.plane_approx[1]);
            writeln!(s, r#"<line x1="{c}" y1="{c}" x2="{x:.2}" y2="{y:.2}" stroke="black" stroke-width="1.5" marker-end="url(#head)"/>"#).unwrap();
            let label: Vec<String> = e.weight.iter().map(ToString::to_string).collect();
            let n = norm(e.plane_approx);
            let (tx, ty) = (x + 18.0 * e.plane_approx[0] / n, y - 18.0 * e.plane_approx[1] / n + 4.0);
            writeln!(
                s,
                r#"<text x="{tx:.2}" y="{ty:.2}" text-anchor="middle">({})</text>"#,
                xml(&label.join(", "))
            )
            .unwrap();
        }
        s.push_str("</svg>\n");
        s
    }
}

fn norm(p: [f64; 2]) -> f64 {
    (p[0] * p[0] + p[1] * p[1]).sqrt().max(1e-12)
}

fn xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn describe(names: &NamedBasis, coords: &[RadicalNumber], fallback: &str) -> String {
    if names
        .names
        .iter()
        .zip(&names.elements)
        .all(|(n, e)| *n == e.to_string())
    {
        fallback.to_string()
    } else {
        names.describe(coords)
    }
}

/// Consistent side for the floating-point perpendicular: the sign of the
/// component along a fixed reference root not parallel to `alpha`.
fn orientation(
    g: &super::RootGeometry,
    alpha: &[RadicalNumber],
    beta: &[RadicalNumber],
    roots: &[Vec<RadicalNumber>],
) -> f64 {
    let a2 = g.inner(alpha, alpha).approx();
    let Some(reference) = roots.iter().find(|r| {
        let c = g.inner(r, alpha).approx();
        (c * c - a2 * g.inner(r, r).approx()).abs() > 1e-9
    }) else {
        return 1.0;
    };
    let perp = |v: &[RadicalNumber]| {
        g.inner(v, reference).approx() - g.inner(v, alpha).approx() * g.inner(reference, alpha).approx() / a2
    };
    if perp(beta) < 0.0 {
        -1.0
    } else {
        1.0
    }
}
