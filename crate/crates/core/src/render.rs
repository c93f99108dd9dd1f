//! Deterministic SVG frames for certificate runs: per step, the goal body
//! dotted, the previous step's body dashed, the produced body solid, lattice
//! points marked, the disjunction lines drawn, and the step's x-vertices
//! circled.

use crate::geom::{ConvexBody2, Point2};
use crate::model::{induced_body, TwoRowModel};
use crate::num::{ceil_int, floor_int, Rational};
use crate::synth::Certificate;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt::Write as _;

const SCALE: i64 = 60;

struct Viewport {
    xmin: BigInt,
    xmax: BigInt,
    ymin: BigInt,
    ymax: BigInt,
}

impl Viewport {
    fn of(points: &[Point2]) -> Viewport {
        let mut xmin: Option<Rational> = None;
        let mut xmax: Option<Rational> = None;
        let mut ymin: Option<Rational> = None;
        let mut ymax: Option<Rational> = None;
        for p in points {
            if xmin.as_ref().is_none_or(|v| &p.x < v) {
                xmin = Some(p.x.clone());
            }
            if xmax.as_ref().is_none_or(|v| &p.x > v) {
                xmax = Some(p.x.clone());
            }
            if ymin.as_ref().is_none_or(|v| &p.y < v) {
                ymin = Some(p.y.clone());
            }
            if ymax.as_ref().is_none_or(|v| &p.y > v) {
                ymax = Some(p.y.clone());
            }
        }
        // Pad by one lattice unit.
        Viewport {
            xmin: floor_int(&xmin.unwrap()) - 1,
            xmax: ceil_int(&xmax.unwrap()) + 1,
            ymin: floor_int(&ymin.unwrap()) - 1,
            ymax: ceil_int(&ymax.unwrap()) + 1,
        }
    }

    fn width(&self) -> BigInt {
        (&self.xmax - &self.xmin) * SCALE
    }

    fn height(&self) -> BigInt {
        (&self.ymax - &self.ymin) * SCALE
    }

    /// World to viewport, y flipped.
    fn tx(&self, p: &Point2) -> (String, String) {
        let x = (&p.x - Rational::from_integer(self.xmin.clone()))
            * Rational::from_integer(SCALE.into());
        let y = (Rational::from_integer(self.ymax.clone()) - &p.y)
            * Rational::from_integer(SCALE.into());
        (fmt_coord(&x), fmt_coord(&y))
    }
}

/// Fixed-point decimal with two digits, exact rounding toward zero:
/// deterministic output for identical inputs.
fn fmt_coord(q: &Rational) -> String {
    let scaled = q * Rational::from_integer(100.into());
    let int = scaled.to_integer();
    let whole = &int / 100;
    let frac_int: BigInt = &int % 100;
    let frac = frac_int.magnitude().to_string();
    let sign = if int.is_negative() && whole == BigInt::from(0) {
        "-"
    } else {
        ""
    };
    format!("{sign}{whole}.{frac:0>2}")
}

fn body_clipped_points(body: &ConvexBody2, vp: &Viewport) -> Vec<Point2> {
    if body.is_bounded() {
        return body.vertices().to_vec();
    }
    // Extend recession edges to the viewport boundary, far enough to leave
    // the padded box.
    let mut pts = body.vertices().to_vec();
    let budget = Rational::from_integer(
        ((&vp.xmax - &vp.xmin) + (&vp.ymax - &vp.ymin)) * 4,
    );
    for v in body.vertices() {
        for d in body.recession() {
            pts.push(v.add_scaled(d, &budget));
        }
    }
    pts
}

fn polygon_path(body: &ConvexBody2, vp: &Viewport) -> String {
    let pts = body_clipped_points(body, vp);
    let hull = ConvexBody2::polygon(pts);
    let mut s = String::new();
    for (i, p) in hull.vertices().iter().enumerate() {
        let (x, y) = vp.tx(p);
        let _ = write!(s, "{}{},{}", if i == 0 { "M" } else { " L" }, x, y);
    }
    s.push_str(" Z");
    s
}

/// One SVG document per certificate step, in the paper's visual convention.
pub fn render_frames(model: &TwoRowModel, cert: &Certificate) -> Vec<String> {
    let goal_body = induced_body(model, &cert.goal);
    let mut frames = Vec::new();
    let steps: Vec<&crate::synth::CertStep> = cert.steps.iter().collect();
    let bodies: Vec<ConvexBody2> = steps
        .iter()
        .map(|s| induced_body(model, &s.produced))
        .collect();
    // Shared viewport across frames: goal and every produced body vertex,
    // plus all recorded x-vertices.
    let mut anchor: Vec<Point2> = goal_body.vertices().to_vec();
    anchor.push(model.f.clone());
    for (s, b) in steps.iter().zip(&bodies) {
        anchor.extend(b.vertices().iter().cloned());
        anchor.extend(s.record.le.x_vertices.iter().cloned());
        anchor.extend(s.record.ge.x_vertices.iter().cloned());
    }
    let vp = Viewport::of(&anchor);
    if steps.is_empty() {
        frames.push(render_frame(model, &vp, &goal_body, None, None, None));
        return frames;
    }
    for (i, step) in steps.iter().enumerate() {
        let prev = if i == 0 { None } else { Some(&bodies[i - 1]) };
        frames.push(render_frame(
            model,
            &vp,
            &goal_body,
            prev,
            Some(&bodies[i]),
            Some(step),
        ));
    }
    frames
}

fn render_frame(
    _model: &TwoRowModel,
    vp: &Viewport,
    goal: &ConvexBody2,
    prev: Option<&ConvexBody2>,
    current: Option<&ConvexBody2>,
    step: Option<&crate::synth::CertStep>,
) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        vp.width(),
        vp.height(),
        vp.width(),
        vp.height()
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    // Lattice points.
    let mut x = vp.xmin.clone();
    while x <= vp.xmax {
        let mut y = vp.ymin.clone();
        while y <= vp.ymax {
            let p = Point2::new(
                Rational::from_integer(x.clone()),
                Rational::from_integer(y.clone()),
            );
            let (cx, cy) = vp.tx(&p);
            let _ = writeln!(
                svg,
                r##"<circle cx="{cx}" cy="{cy}" r="2.00" fill="#444444"/>"##
            );
            y += 1;
        }
        x += 1;
    }
    // Disjunction lines.
    if let Some(step) = step {
        let pi = step.disjunction.pi_direction();
        for level in [
            Rational::from_integer(step.disjunction.pi0.clone()),
            Rational::from_integer(&step.disjunction.pi0 + 1),
        ] {
            // Clip the line pi . x = level to the viewport via two far points.
            let base = if !pi.x.is_zero() {
                Point2::new(&level / &pi.x, Rational::from_integer(0.into()))
            } else {
                Point2::new(Rational::from_integer(0.into()), &level / &pi.y)
            };
            let d = pi.perp();
            let budget = Rational::from_integer(
                ((&vp.xmax - &vp.xmin) + (&vp.ymax - &vp.ymin)) * 4,
            );
            let a = base.add_scaled(&d, &budget);
            let b = base.add_scaled(&d, &(-budget.clone()));
            let (x1, y1) = vp.tx(&a);
            let (x2, y2) = vp.tx(&b);
            let _ = writeln!(
                svg,
                r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#888888" stroke-width="1.00"/>"##
            );
        }
    }
    // Goal body: dotted.
    let _ = writeln!(
        svg,
        r##"<path d="{}" fill="none" stroke="#000000" stroke-width="1.50" stroke-dasharray="2,3"/>"##,
        polygon_path(goal, vp)
    );
    // Previous body: dashed.
    if let Some(prev) = prev {
        let _ = writeln!(
            svg,
            r##"<path d="{}" fill="none" stroke="#3366cc" stroke-width="1.50" stroke-dasharray="7,4"/>"##,
            polygon_path(prev, vp)
        );
    }
    // Current body: solid.
    if let Some(cur) = current {
        let _ = writeln!(
            svg,
            r##"<path d="{}" fill="none" stroke="#cc3333" stroke-width="2.00"/>"##,
            polygon_path(cur, vp)
        );
    }
    // x-vertices circled.
    if let Some(step) = step {
        for p in step
            .record
            .le
            .x_vertices
            .iter()
            .chain(step.record.ge.x_vertices.iter())
        {
            let (cx, cy) = vp.tx(p);
            let _ = writeln!(
                svg,
                r##"<circle cx="{cx}" cy="{cy}" r="5.00" fill="none" stroke="#cc3333" stroke-width="1.50"/>"##
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn coordinates_are_fixed_point() {
        assert_eq!(fmt_coord(&rat(1, 2)), "0.50");
        assert_eq!(fmt_coord(&rat(-1, 3)), "-0.33");
        assert_eq!(fmt_coord(&rat(7, 1)), "7.00");
    }
}
