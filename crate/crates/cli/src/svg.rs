use std::fmt::Write;

use aperiodica::cps::Scheme;
use aperiodica::groups::SetDescriptor;
use aperiodica::{Error, Real, Result};

const WIDTH: f64 = 1000.0;
const HEIGHT: f64 = 400.0;
const AXIS_GAP: f64 = 30.0;

/// The cut-and-project picture: lattice points as `(x, x⋆)`, the window
/// strip shaded, selected points highlighted and dropped onto the axis.
///
/// Drawn points are the lattice points over the patch whose star lies
/// within half the window hull's length (at most one) of the window.
pub fn emit_svg_strip(scheme: &Scheme, window: &SetDescriptor, patch: &SetDescriptor) -> Result<String> {
    if !matches!(scheme, Scheme::Quadratic(_)) {
        return Err(Error::Unsupported("only quadratic schemes embed in the plane".into()));
    }
    let Some(&[(p0, p1)]) = patch.hull()?.intervals_slice() else {
        return Err(Error::InvalidInput("the patch must be a nonempty bounded subset of R".into()));
    };
    let (w0, w1) = match window.hull()?.intervals_slice() {
        Some(&[(a, b)]) => (a, b),
        _ => (Real::zero(), Real::one()),
    };
    let margin = ((w1 - w0) * Real::ratio(1, 2)).min(Real::one()).max(Real::ratio(1, 4));
    let band = SetDescriptor::interval(w0 - margin, w1 + margin);
    let drawn = scheme.cut_and_project(&band, patch)?;
    let chosen = scheme.cut_and_project(window, patch)?;
    let selected: std::collections::BTreeSet<Vec<i64>> =
        chosen.lattice_points().iter().map(|p| p.coords.clone()).collect();

    let (x0, x1) = (p0.to_f64(), p1.to_f64());
    let (y0, y1) = ((w0 - margin).to_f64(), (w1 + margin).to_f64());
    let sx = |x: f64| (x - x0) / (x1 - x0) * WIDTH;
    let sy = |y: f64| (HEIGHT - AXIS_GAP) * (1.0 - (y - y0) / (y1 - y0));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    for (a, b) in window.intervals_slice().unwrap_or(&[]) {
        let (top, bottom) = (sy(b.to_f64()), sy(a.to_f64()));
        let _ = writeln!(
            svg,
            r##"<rect class="strip" x="0" y="{top:.3}" width="{WIDTH}" height="{:.3}" fill="#dde8f5" data-start="{a}" data-end="{b}"/>"##,
            bottom - top
        );
    }
    let axis = HEIGHT - AXIS_GAP / 2.0;
    let _ = writeln!(svg, r#"<line x1="0" y1="{axis}" x2="{WIDTH}" y2="{axis}" stroke="black" stroke-width="0.5"/>"#);
    for p in drawn.lattice_points() {
        let x = p.direct.as_line().expect("line").to_f64();
        let y = p.star.as_line().expect("line").to_f64();
        let hit = selected.contains(&p.coords);
        let (class, fill, r) = if hit { ("selected", "#1f4e8c", 2.0) } else { ("lattice", "#b0b0b0", 1.2) };
        let _ = writeln!(
            svg,
            r#"<circle class="{class}" cx="{:.3}" cy="{:.3}" r="{r}" fill="{fill}" data-x="{x}" data-m="{}" data-n="{}"/>"#,
            sx(x),
            sy(y),
            p.coords[0],
            p.coords[1]
        );
        if hit {
            let _ = writeln!(
                svg,
                r##"<line class="projection" x1="{0:.3}" y1="{1:.3}" x2="{0:.3}" y2="{2:.3}" stroke="#1f4e8c" stroke-width="0.6"/>"##,
                sx(x),
                axis - 3.0,
                axis + 3.0
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn highlights_match_projection() {
        let s = Scheme::golden();
        let patch = SetDescriptor::interval(-50, 50);
        let w = SetDescriptor::interval(0, 1);
        let svg = emit_svg_strip(&s, &w, &patch).unwrap();
        let count = s.cut_and_project(&w, &patch).unwrap().len();
        assert_eq!(svg.matches(r#"class="selected""#).count(), count);
        let empty = SetDescriptor::interval(1, 1);
        let svg = emit_svg_strip(&s, &empty, &patch).unwrap();
        assert_eq!(svg.matches(r#"class="selected""#).count(), 0);
    }

    #[test]
    fn padic_schemes_are_refused() {
        let s = Scheme::padic(3, 4).unwrap();
        let w = SetDescriptor::residue_classes(s.internal_space(), &[(0, 1)]).unwrap();
        assert!(emit_svg_strip(&s, &w, &SetDescriptor::int_closed(-5, 5)).is_err());
    }
}
