//! Rank-2 apartment plots.
//!
//! CSV columns are `kind,id,chart,tau,c1,c2,c3,c4`, all exact:
//!
//! - `chamber`: the cone of the chart's Borel; `(c1,c2)` and `(c3,c4)` are its
//!   two edge rays as `(val_x(α1), val_x(α2))`.
//! - `corner`: the chamber of the standard chart, compactified to `Ā^B`; same
//!   columns as `chamber`.
//! - `base_point` (overlay only): `e_τ` as `(val_y(-α1), val_y(-α2))` in the
//!   standard chart, with `inf` for `+∞`; `c3,c4` empty.
//!
//! The SVG draws the same data in a Euclidean picture of the apartment and
//! is meant for viewing only.

use std::fmt::Write as _;

use bt_wonder_core::wonder::{base_point, tau_label};
use bt_wonder_core::{ApartmentPoint, ParabolicType, RootSystem, Val, WeylElement, Q};

use crate::CliError;

pub struct Chamber {
    pub chart: WeylElement,
    pub rays: [ApartmentPoint; 2],
}

pub struct Geometry {
    pub system: String,
    gram: [[f64; 2]; 2],
    pub chambers: Vec<Chamber>,
    /// `(τ, coordinates)` of the base points, when the overlay is requested.
    pub base_points: Vec<(ParabolicType, Vec<Val>)>,
}

impl Geometry {
    pub fn new(rs: &RootSystem, overlay: bool) -> Result<Geometry, CliError> {
        if rs.rank() != 2 {
            return Err(CliError::Input(format!(
                "plot needs a rank-2 system, {} has rank {}",
                rs.spec_string(),
                rs.rank()
            )));
        }
        let w = rs.weyl_group(bt_wonder_core::rootsys::DEFAULT_WEYL_CAP)?;
        let chambers = w
            .elements
            .into_iter()
            .map(|c| {
                // edge ray j: val_x(c α_i) = -δ_ij
                let ray = |j: usize| {
                    let v: Vec<Q> =
                        (0..2).map(|i| Q::from_integer(if i == j { (-1).into() } else { 0.into() })).collect();
                    ApartmentPoint::from_chart_values(rs, &c, &v)
                };
                let rays = [ray(0), ray(1)];
                Chamber { chart: c, rays }
            })
            .collect();
        let base_points = if overlay {
            rs.type_poset().types.into_iter().map(|t| (t, base_point(rs, t).coords().to_vec())).collect()
        } else {
            Vec::new()
        };
        let g = rs.gram();
        let gram = [[g[0][0] as f64, g[0][1] as f64], [g[1][0] as f64, g[1][1] as f64]];
        Ok(Geometry { system: rs.spec_string(), gram, chambers, base_points })
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("kind,id,chart,tau,c1,c2,c3,c4\n");
        let ray_cols = |c: &Chamber| {
            let v: Vec<String> = c.rays.iter().flat_map(|r| r.vals().iter().map(Q::to_string)).collect();
            v.join(",")
        };
        for (i, c) in self.chambers.iter().enumerate() {
            let _ = writeln!(out, "chamber,{i},{},,{}", c.chart, ray_cols(c));
        }
        if let Some(c) = self.chambers.first() {
            let _ = writeln!(out, "corner,0,{},,{}", c.chart, ray_cols(c));
        }
        for (i, (t, coords)) in self.base_points.iter().enumerate() {
            let v: Vec<String> = coords.iter().map(Val::to_string).collect();
            let _ = writeln!(out, "base_point,{i},[],{},{},,", t.bitstring(2), v.join(","));
        }
        out
    }

    /// Euclidean position of the point with `val_x(α_i) = u_i`, i.e. the
    /// vector `p` with `(p, α_i) = u_i` for the Gram form.
    fn embed(&self, u: [f64; 2]) -> [f64; 2] {
        let a1 = [self.gram[0][0].sqrt(), 0.0];
        let a2x = self.gram[0][1] / a1[0];
        let a2 = [a2x, (self.gram[1][1] - a2x * a2x).sqrt()];
        let det = a1[0] * a2[1] - a1[1] * a2[0];
        [(u[0] * a2[1] - u[1] * a1[1]) / det, (a1[0] * u[1] - a2[0] * u[0]) / det]
    }

    fn direction(&self, r: &ApartmentPoint) -> [f64; 2] {
        let u: Vec<f64> = r.vals().iter().map(crate::q_to_f64).collect();
        let p = self.embed([u[0], u[1]]);
        let len = (p[0] * p[0] + p[1] * p[1]).sqrt();
        [p[0] / len, p[1] / len]
    }

    pub fn svg(&self) -> String {
        const SIZE: f64 = 440.0;
        const R: f64 = 180.0;
        let c = SIZE / 2.0;
        let at = |d: [f64; 2], s: f64| (c + s * d[0], c - s * d[1]);
        let pt = |d: [f64; 2], s: f64| {
            let (x, y) = at(d, s);
            format!("{x:.3},{y:.3}")
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(out, "  <title>Weyl chambers of {}</title>", self.system);
        let _ = writeln!(out, "  <style>.chamber{{stroke:#333;stroke-width:1}} .corner{{fill:#f2c14e;fill-opacity:0.45;stroke:#a66;stroke-dasharray:4 3}} .base-point{{fill:#c0392b}} text{{font:11px sans-serif}}</style>");
        for (i, ch) in self.chambers.iter().enumerate() {
            let (d1, d2) = (self.direction(&ch.rays[0]), self.direction(&ch.rays[1]));
            let fill = if ch.chart.word().len() % 2 == 0 { "#dfe8f5" } else { "#f7f7f7" };
            let _ = writeln!(
                out,
                r#"  <polygon class="chamber" data-id="{i}" data-chart="{}" fill="{fill}" points="{} {} {}"/>"#,
                ch.chart,
                pt([0.0, 0.0], 0.0),
                pt(d1, R),
                pt(d2, R)
            );
        }
        if let Some(ch) = self.chambers.first() {
            let (d1, d2) = (self.direction(&ch.rays[0]), self.direction(&ch.rays[1]));
            let far = [d1[0] + d2[0], d1[1] + d2[1]];
            let _ = writeln!(
                out,
                r#"  <polygon class="corner" points="{} {} {} {}"/>"#,
                pt([0.0, 0.0], 0.0),
                pt(d1, R),
                pt(far, R),
                pt(d2, R)
            );
            // e_τ sits where the coordinates outside τ have gone to +∞:
            // coordinate i diverges along ray i of the chamber
            for (t, _) in &self.base_points {
                let mut p = [0.0, 0.0];
                for (i, d) in [d1, d2].iter().enumerate() {
                    if !t.contains(i) {
                        p = [p[0] + d[0], p[1] + d[1]];
                    }
                }
                let (x, y) = at(p, R);
                let _ = writeln!(
                    out,
                    r#"  <circle class="base-point" data-tau="{}" cx="{x:.3}" cy="{y:.3}" r="4"/>"#,
                    t.bitstring(2)
                );
                let (lx, ly) = at(p, R + 14.0);
                let _ = writeln!(out, r#"  <text x="{lx:.3}" y="{ly:.3}">e{}</text>"#, tau_label(*t));
            }
        }
        let _ = writeln!(out, "</svg>");
        out
    }
}
