//! Newton polygon of a bivariate polynomial under the degree valuation
//! `v(a) = -deg a` on `K[x]` (`v(0) = +infinity`, so zero coefficients never
//! contribute a point).
//!
//! The polygon is the lower convex hull of `(i, v(a_i))`.  Its edge slopes,
//! with widths as multiplicities, are the negated valuations of the roots of
//! `f` in an algebraic closure of `K(x)`; in particular the widths of the
//! negative-, zero-, and positive-slope parts count the roots with
//! `|theta| < 1`, `= 1`, and `> 1` under the absolute value `rho^deg`.

use num_rational::Rational64;
use num_traits::Zero;

use crate::field::Field;
use crate::poly::{BiPoly, PolyError};

/// One edge of the lower hull: horizontal width and exact slope.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub width: u32,
    pub slope: Rational64,
}

/// Lower convex hull of the coefficient valuation points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    points: Vec<(i64, i64)>,
    vertices: Vec<(i64, i64)>,
    edges: Vec<Edge>,
}

/// Root counts by valuation sign; `inside` means `v(theta) > 0`, i.e.
/// absolute value below 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RootLocation {
    pub inside: u32,
    pub boundary: u32,
    pub outside: u32,
}

impl NewtonPolygon {
    /// `(i, -deg a_i)` for each nonzero coefficient, ascending in `i`.
    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    /// Hull vertices by increasing `i`; collinear points are dropped.
    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    /// Hull edges left to right; slopes strictly increase.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges flattened to a `(slope, width)` multiset, ascending by slope.
    pub fn slope_multiset(&self) -> Vec<(Rational64, u32)> {
        self.edges.iter().map(|e| (e.slope, e.width)).collect()
    }
}

/// Counterclockwise test for the turn `o -> a -> b`.
fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Builds the polygon.  Requires `f` nonzero with `deg_y >= 1` and a nonzero
/// constant term (strip trailing `y` powers first).
pub fn build_polygon<F: Field>(f: &BiPoly<F>) -> Result<NewtonPolygon, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.deg_y() < 1 {
        return Err(PolyError::ConstantInY);
    }
    if f.y_coeff(0).is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    let points: Vec<(i64, i64)> = f
        .y_coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.degree().finite().map(|d| (i as i64, -d)))
        .collect();
    let mut vertices: Vec<(i64, i64)> = Vec::new();
    for &p in &points {
        while vertices.len() >= 2
            && cross(vertices[vertices.len() - 2], vertices[vertices.len() - 1], p) <= 0
        {
            vertices.pop();
        }
        vertices.push(p);
    }
    let edges: Vec<Edge> = vertices
        .windows(2)
        .map(|w| {
            let (i0, v0) = w[0];
            let (i1, v1) = w[1];
            Edge { width: (i1 - i0) as u32, slope: Rational64::new(v1 - v0, i1 - i0) }
        })
        .collect();
    debug_assert!(edges.windows(2).all(|w| w[0].slope < w[1].slope));
    debug_assert_eq!(
        edges.iter().map(|e| e.width as i64).sum::<i64>(),
        points.last().expect("nonempty").0 - points.first().expect("nonempty").0
    );
    Ok(NewtonPolygon { points, vertices, edges })
}

/// Classifies the roots of `f` by valuation sign via the polygon widths.
pub fn root_location<F: Field>(f: &BiPoly<F>) -> Result<RootLocation, PolyError> {
    let np = build_polygon(f)?;
    let mut loc = RootLocation { inside: 0, boundary: 0, outside: 0 };
    for e in np.edges() {
        if e.slope < Rational64::zero() {
            loc.inside += e.width;
        } else if e.slope == Rational64::zero() {
            loc.boundary += e.width;
        } else {
            loc.outside += e.width;
        }
    }
    Ok(loc)
}

/// Merges two slope multisets, adding widths of equal slopes; used to state
/// the product rule `NP(fg) = NP(f) merge NP(g)`.
pub fn merge_slopes(
    a: &[(Rational64, u32)],
    b: &[(Rational64, u32)],
) -> Vec<(Rational64, u32)> {
    let mut all: Vec<(Rational64, u32)> = a.iter().chain(b.iter()).copied().collect();
    all.sort_by(|x, y| x.0.cmp(&y.0));
    let mut out: Vec<(Rational64, u32)> = Vec::new();
    for (s, w) in all {
        match out.last_mut() {
            Some((t, u)) if *t == s => *u += w,
            _ => out.push((s, w)),
        }
    }
    out
}

const SVG_SCALE: i64 = 60;
const SVG_MARGIN: i64 = 50;

/// Deterministic SVG rendering: `i` rightward, `v` upward (so negative
/// valuations hang below the axis).  Integer coordinates only, so the output
/// is byte-stable for a given polygon.
pub fn polygon_svg(np: &NewtonPolygon) -> String {
    let i_min = np.points.first().expect("nonempty").0;
    let i_max = np.points.last().expect("nonempty").0;
    let v_min = np.points.iter().map(|p| p.1).min().expect("nonempty").min(0);
    let v_max = np.points.iter().map(|p| p.1).max().expect("nonempty").max(0);
    let width = 2 * SVG_MARGIN + (i_max - i_min) * SVG_SCALE;
    let height = 2 * SVG_MARGIN + (v_max - v_min) * SVG_SCALE;
    let sx = |i: i64| SVG_MARGIN + (i - i_min) * SVG_SCALE;
    let sy = |v: i64| SVG_MARGIN + (v_max - v) * SVG_SCALE;

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    s.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    // axes through v = 0 and i = i_min
    s.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#cccccc\"/>\n",
        sx(i_min) - SVG_MARGIN / 2,
        sy(0),
        sx(i_max) + SVG_MARGIN / 2,
        sy(0)
    ));
    s.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#cccccc\"/>\n",
        sx(i_min),
        sy(v_max) - SVG_MARGIN / 2,
        sx(i_min),
        sy(v_min) + SVG_MARGIN / 2
    ));
    // hull polyline
    let hull: Vec<String> = np
        .vertices
        .iter()
        .map(|&(i, v)| format!("{},{}", sx(i), sy(v)))
        .collect();
    s.push_str(&format!(
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n",
        hull.join(" ")
    ));
    // slope labels at edge midpoints (scaled coordinates stay integral)
    for (w, e) in np.vertices.windows(2).zip(np.edges.iter()) {
        let mx = (sx(w[0].0) + sx(w[1].0)) / 2;
        let my = (sy(w[0].1) + sy(w[1].1)) / 2;
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#1f77b4\">slope {}</text>\n",
            mx + 6,
            my - 6,
            e.slope
        ));
    }
    // points last so they sit on top of the hull
    for &(i, v) in &np.points {
        let on_hull = np.vertices.contains(&(i, v));
        let fill = if on_hull { "#1f77b4" } else { "#444444" };
        s.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{fill}\"/>\n",
            sx(i),
            sy(v)
        ));
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#444444\">({i}, {v})</text>\n",
            sx(i) + 6,
            sy(v) + 14
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::parse::parse_bi;

    fn q(text: &str) -> BiPoly<Rationals> {
        parse_bi(text, Rationals, ("x", "y")).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn two_segment_polygon() {
        let np = build_polygon(&q("1+x*y+y^3")).unwrap();
        assert_eq!(np.points(), &[(0, 0), (1, -1), (3, 0)]);
        assert_eq!(np.vertices(), &[(0, 0), (1, -1), (3, 0)]);
        assert_eq!(
            np.edges(),
            &[
                Edge { width: 1, slope: r(-1, 1) },
                Edge { width: 2, slope: r(1, 2) }
            ]
        );
        assert_eq!(np.slope_multiset(), vec![(r(-1, 1), 1), (r(1, 2), 2)]);
        assert_eq!(
            root_location(&q("1+x*y+y^3")).unwrap(),
            RootLocation { inside: 1, boundary: 0, outside: 2 }
        );
    }

    #[test]
    fn flat_polygon_counts_boundary_roots() {
        let np = build_polygon(&q("1+y^2")).unwrap();
        assert_eq!(np.edges(), &[Edge { width: 2, slope: r(0, 1) }]);
        assert_eq!(
            root_location(&q("1+y^2")).unwrap(),
            RootLocation { inside: 0, boundary: 2, outside: 0 }
        );
    }

    #[test]
    fn collinear_points_merge_into_one_edge() {
        // valuations (0,-2), (1,-1), (2,0) are collinear
        let np = build_polygon(&q("6+5x+x^2+(5+2x)y+y^2")).unwrap();
        assert_eq!(np.points(), &[(0, -2), (1, -1), (2, 0)]);
        assert_eq!(np.vertices(), &[(0, -2), (2, 0)]);
        assert_eq!(np.edges(), &[Edge { width: 2, slope: r(1, 1) }]);
    }

    #[test]
    fn dominant_constant_term_pushes_all_roots_outside() {
        assert_eq!(
            root_location(&q("x^2+x*y+y^2+y^3")).unwrap(),
            RootLocation { inside: 0, boundary: 0, outside: 3 }
        );
    }

    #[test]
    fn zero_coefficients_leave_gaps_in_the_point_list() {
        let np = build_polygon(&q("x+y^3")).unwrap();
        assert_eq!(np.points(), &[(0, -1), (3, 0)]);
        assert_eq!(np.edges(), &[Edge { width: 3, slope: r(1, 3) }]);
    }

    #[test]
    fn input_preconditions() {
        assert_eq!(build_polygon(&q("0")), Err(PolyError::ZeroPolynomial));
        assert_eq!(build_polygon(&q("1+x")), Err(PolyError::ConstantInY));
        assert_eq!(build_polygon(&q("y+y^2")), Err(PolyError::ZeroConstantTerm));
    }

    #[test]
    fn merge_adds_widths_on_equal_slopes() {
        let a = vec![(r(-1, 1), 1), (r(1, 2), 2)];
        let b = vec![(r(1, 2), 2), (r(2, 1), 1)];
        assert_eq!(
            merge_slopes(&a, &b),
            vec![(r(-1, 1), 1), (r(1, 2), 4), (r(2, 1), 1)]
        );
    }

    #[test]
    fn product_polygon_merges_factor_slopes() {
        let f = q("1+y");
        let g = q("x+y");
        let fg = f.mul(&g);
        let merged = merge_slopes(
            &build_polygon(&f).unwrap().slope_multiset(),
            &build_polygon(&g).unwrap().slope_multiset(),
        );
        assert_eq!(build_polygon(&fg).unwrap().slope_multiset(), merged);
    }

    #[test]
    fn svg_rendering_is_stable_and_integral() {
        let np = build_polygon(&q("1+x*y+y^3")).unwrap();
        let svg = polygon_svg(&np);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("slope -1"));
        assert!(svg.contains("slope 1/2"));
        // point (1,-1) maps to x = 50 + 60, y = 50 + 60 with v_max = 0
        assert!(svg.contains("<circle cx=\"110\" cy=\"110\""));
        assert_eq!(svg, polygon_svg(&np));
    }
}
