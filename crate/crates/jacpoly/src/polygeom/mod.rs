//! Supports, Newton polygons, rectangles, the region 𝔯 and lattice counts.

mod svg;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::rational::{ceil_rat, exp_to_rat, floor_rat, int, rat};
use crate::exactalg::{Mono, PuiseuxPoly, Rational};

pub use svg::{render_svg, SvgItem};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("the Newton polygon of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("{0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RatPoint {
    pub fn new(x: Rational, y: Rational) -> RatPoint {
        RatPoint { x, y }
    }

    pub fn int(x: i64, y: i64) -> RatPoint {
        RatPoint { x: int(x), y: int(y) }
    }

    pub fn rat(xn: i64, xd: i64, yn: i64, yd: i64) -> RatPoint {
        RatPoint { x: rat(xn, xd), y: rat(yn, yd) }
    }

    pub fn origin() -> RatPoint {
        RatPoint::int(0, 0)
    }

    pub fn from_mono(m: &Mono) -> RatPoint {
        RatPoint { x: exp_to_rat(m.x), y: exp_to_rat(m.y) }
    }

    pub fn sub(&self, o: &RatPoint) -> RatPoint {
        RatPoint { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn add(&self, o: &RatPoint) -> RatPoint {
        RatPoint { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn scale(&self, r: &Rational) -> RatPoint {
        RatPoint { x: &self.x * r, y: &self.y * r }
    }

    pub fn is_lattice(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// u·x + v·y
    pub fn dot(&self, u: i64, v: i64) -> Rational {
        &self.x * int(u) + &self.y * int(v)
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// (b - a) × (c - a)
pub fn cross(a: &RatPoint, b: &RatPoint, c: &RatPoint) -> Rational {
    let ab = b.sub(a);
    let ac = c.sub(a);
    &ab.x * &ac.y - &ab.y * &ac.x
}

/// Convex hull, counterclockwise from the lexicographically smallest vertex.
/// Points and segments are kept as one- and two-vertex polygons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<RatPoint>,
}

impl ConvexPolygon {
    /// Monotone chain; collinear points are dropped.
    pub fn hull(points: &[RatPoint]) -> ConvexPolygon {
        let mut pts: Vec<RatPoint> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return ConvexPolygon { vertices: pts };
        }
        let mut lower: Vec<RatPoint> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<RatPoint> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexPolygon { vertices: lower }
    }

    pub fn rect(m: i64, n: i64) -> ConvexPolygon {
        ConvexPolygon::rect_rat(&int(m), &int(n))
    }

    pub fn rect_rat(m: &Rational, n: &Rational) -> ConvexPolygon {
        let z = Rational::zero();
        ConvexPolygon::hull(&[
            RatPoint::new(z.clone(), z.clone()),
            RatPoint::new(m.clone(), z.clone()),
            RatPoint::new(m.clone(), n.clone()),
            RatPoint::new(z.clone(), n.clone()),
        ])
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, p: &RatPoint) -> bool {
        self.vertices.contains(p)
    }

    /// Closed containment.
    pub fn contains(&self, p: &RatPoint) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => &self.vertices[0] == p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                cross(a, b, p).is_zero() && a <= p && p <= b
            }
            n => (0..n).all(|i| !cross(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative()),
        }
    }

    pub fn is_subset_of(&self, other: &ConvexPolygon) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    pub fn scale(&self, r: &Rational) -> ConvexPolygon {
        if r.is_zero() {
            return ConvexPolygon { vertices: vec![RatPoint::origin()] };
        }
        let v: Vec<RatPoint> = self.vertices.iter().map(|p| p.scale(r)).collect();
        if r.is_negative() {
            return ConvexPolygon::hull(&v);
        }
        ConvexPolygon { vertices: v }
    }

    pub fn translate(&self, t: &RatPoint) -> ConvexPolygon {
        ConvexPolygon { vertices: self.vertices.iter().map(|p| p.add(t)).collect() }
    }

    /// Maximum of u·x + v·y over the polygon.
    pub fn support_value(&self, u: i64, v: i64) -> Option<Rational> {
        self.vertices.iter().map(|p| p.dot(u, v)).max()
    }

    /// Vertices attaining the maximum of u·x + v·y, sorted by y.
    pub fn face(&self, u: i64, v: i64) -> Vec<RatPoint> {
        let Some(best) = self.support_value(u, v) else { return vec![] };
        let mut f: Vec<RatPoint> = self.vertices.iter().filter(|p| p.dot(u, v) == best).cloned().collect();
        f.sort_by(|a, b| a.y.cmp(&b.y).then(a.x.cmp(&b.x)));
        f
    }

    pub fn index_of(&self, p: &RatPoint) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    /// Counterclockwise predecessor of vertex i.
    pub fn prev(&self, i: usize) -> &RatPoint {
        let n = self.vertices.len();
        &self.vertices[(i + n - 1) % n]
    }

    /// Twice the signed area (shoelace).
    pub fn area2(&self) -> Rational {
        let n = self.vertices.len();
        if n < 3 {
            return Rational::zero();
        }
        (0..n).fold(Rational::zero(), |acc, i| {
            let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            acc + &a.x * &b.y - &b.x * &a.y
        })
    }
}

impl fmt::Display for ConvexPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn support(f: &PuiseuxPoly) -> Vec<RatPoint> {
    let mut pts: Vec<RatPoint> = f.monos().map(RatPoint::from_mono).collect();
    pts.sort();
    pts
}

/// N(f), or N⁰(f) when `augmented` (the origin is added).
pub fn newton_polygon(f: &PuiseuxPoly, augmented: bool) -> Result<ConvexPolygon, GeomError> {
    let mut pts = support(f);
    if augmented {
        pts.push(RatPoint::origin());
    } else if pts.is_empty() {
        return Err(GeomError::ZeroPolynomial);
    }
    Ok(ConvexPolygon::hull(&pts))
}

/// N⁰(f); always defined.
pub fn n0(f: &PuiseuxPoly) -> ConvexPolygon {
    newton_polygon(f, true).expect("augmented polygon always exists")
}

/// Among the rightmost vertices, the highest.
pub fn en_vertex(p: &ConvexPolygon) -> Option<RatPoint> {
    p.vertices().iter().max_by(|a, b| a.x.cmp(&b.x).then(a.y.cmp(&b.y))).cloned()
}

/// Among the uppermost vertices, the rightmost.
pub fn ne_vertex(p: &ConvexPolygon) -> Option<RatPoint> {
    p.vertices().iter().max_by(|a, b| a.y.cmp(&b.y).then(a.x.cmp(&b.x))).cloned()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RectMembership {
    InR,
    InRbar,
    Neither,
}

impl fmt::Display for RectMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RectMembership::InR => "R",
            RectMembership::InRbar => "Rbar",
            RectMembership::Neither => "neither",
        })
    }
}

pub fn rect_membership(f: &PuiseuxPoly, m: i64, n: i64) -> RectMembership {
    let corner = f.coeff_int(m, n);
    if corner.is_zero() {
        return RectMembership::Neither;
    }
    let p = n0(f);
    let rect = ConvexPolygon::rect(m, n);
    if p == rect && corner.is_one() {
        RectMembership::InR
    } else if p.is_subset_of(&rect) {
        RectMembership::InRbar
    } else {
        RectMembership::Neither
    }
}

/// 𝒩′ = Rect_{m/a,n/a} and 𝒩″ = 𝒩′ + ((a−1)m/a, (a−1)n/a).
pub fn n_prime_regions(a: i64, m: i64, n: i64) -> Result<(ConvexPolygon, ConvexPolygon), GeomError> {
    if a <= 0 || m % a != 0 || n % a != 0 {
        return Err(GeomError::Precondition(format!("a = {a} must divide m = {m} and n = {n}")));
    }
    let np = ConvexPolygon::rect(m / a, n / a);
    let npp = np.translate(&RatPoint::int((a - 1) * m / a, (a - 1) * n / a));
    Ok((np, npp))
}

/// Checks (a, b, m, n) ∈ 𝒬: a | m, a | n, gcd(a, b) = 1, 2 ≤ a < b.
pub fn check_q_tuple(a: i64, b: i64, m: i64, n: i64) -> Result<(), GeomError> {
    if !(2 <= a && a < b) {
        return Err(GeomError::Precondition(format!("need 2 <= a < b, got a = {a}, b = {b}")));
    }
    if a.gcd(&b) != 1 {
        return Err(GeomError::Precondition(format!("a = {a} and b = {b} are not coprime")));
    }
    if m <= 0 || n <= 0 || m % a != 0 || n % a != 0 {
        return Err(GeomError::Precondition(format!("a = {a} must divide m = {m} and n = {n} (both positive)")));
    }
    Ok(())
}

/// The region 𝔯 attached to (a, b, m, n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionR {
    pub a: i64,
    pub b: i64,
    pub m: i64,
    pub n: i64,
    pub c: RatPoint,
    pub slope: Rational,
}

impl RegionR {
    pub fn new(a: i64, b: i64, m: i64, n: i64) -> Result<RegionR, GeomError> {
        check_q_tuple(a, b, m, n)?;
        let c0 = rat(a, a + b);
        let slope = (int(n) - &c0) / (int(m) - &c0);
        Ok(RegionR { a, b, m, n, c: RatPoint::new(c0.clone(), c0), slope })
    }

    fn lower_line(&self, x: &Rational) -> Rational {
        &self.slope * (x - &self.c.x) + &self.c.y
    }

    /// Strict upper height (a−1)n/a.
    pub fn top(&self) -> Rational {
        rat((self.a - 1) * self.n, self.a)
    }
}

/// 0 ≤ y < (a−1)n/a and 𝔪(x − C) + C ≤ y ≤ (n/m)x.
pub fn region_r_contains(r: &RegionR, p: &RatPoint) -> bool {
    !p.y.is_negative() && p.y < r.top() && r.lower_line(&p.x) <= p.y && p.y <= rat(r.n, r.m) * &p.x
}

/// Lattice points of 𝔯, sorted by y then x.
pub fn lattice_points_in_r(r: &RegionR) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let top = r.top();
    let mut y = 0i64;
    while int(y) < top {
        let yq = int(y);
        // diagonal: x ≥ m y / n; lower line: x ≤ C + (y − C)/𝔪
        let lo = ceil_rat(&(rat(r.m, r.n) * &yq));
        let hi = floor_rat(&(&r.c.x + (&yq - &r.c.y) / &r.slope));
        let (lo, hi) = (lo.to_i64().unwrap(), hi.to_i64().unwrap());
        for x in lo.max(0)..=hi {
            if region_r_contains(r, &RatPoint::int(x, y)) {
                out.push((x, y));
            }
        }
        y += 1;
    }
    out
}

/// p ∈ ℒ_v: first quadrant and 0 < y < 𝔪_v(x − a/(a+b)) + a/(a+b).
pub fn in_l_v(a: i64, b: i64, v: &RatPoint, p: &RatPoint) -> Result<bool, GeomError> {
    let c0 = rat(a, a + b);
    if v.x <= c0 || !v.y.is_positive() {
        return Err(GeomError::Precondition(format!("ℒ_v needs v.x > {c0} and v.y > 0, got {v}")));
    }
    let slope = (&v.y - &c0) / (&v.x - &c0);
    let line = slope * (&p.x - &c0) + &c0;
    Ok(!p.x.is_negative() && p.y.is_positive() && p.y < line)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PickData {
    pub area: Rational,
    pub interior: i64,
    pub boundary: i64,
}

/// Shoelace area with lattice counts; the interior count is taken by direct
/// enumeration so that Pick's identity is an actual check.
pub fn pick_area(p: &ConvexPolygon) -> Result<PickData, GeomError> {
    if p.vertices().iter().any(|v| !v.is_lattice()) {
        return Err(GeomError::Precondition("Pick's theorem needs lattice vertices".into()));
    }
    let area = p.area2().abs() / int(2);
    let vs = p.vertices();
    let n = vs.len();
    let boundary: i64 = match n {
        0 => 0,
        1 => 1,
        2 => {
            let d = vs[1].sub(&vs[0]);
            d.x.to_integer().gcd(&d.y.to_integer()).to_i64().unwrap() + 1
        }
        _ => (0..n)
            .map(|i| {
                let d = vs[(i + 1) % n].sub(&vs[i]);
                d.x.to_integer().gcd(&d.y.to_integer()).to_i64().unwrap()
            })
            .sum(),
    };
    let mut interior = 0i64;
    if n >= 3 {
        let xs: Vec<BigInt> = vs.iter().map(|v| v.x.to_integer()).collect();
        let ys: Vec<BigInt> = vs.iter().map(|v| v.y.to_integer()).collect();
        let (x0, x1) = (xs.iter().min().unwrap().to_i64().unwrap(), xs.iter().max().unwrap().to_i64().unwrap());
        let (y0, y1) = (ys.iter().min().unwrap().to_i64().unwrap(), ys.iter().max().unwrap().to_i64().unwrap());
        for x in x0..=x1 {
            for y in y0..=y1 {
                let q = RatPoint::int(x, y);
                if (0..n).all(|i| cross(&vs[i], &vs[(i + 1) % n], &q).is_positive()) {
                    interior += 1;
                }
            }
        }
        let pick = int(interior) + rat(boundary, 2) - int(1);
        if pick != area {
            return Err(GeomError::Precondition(format!("Pick identity failed: area {area}, I = {interior}, B = {boundary}")));
        }
    }
    Ok(PickData { area, interior, boundary })
}

/// Some r with Q = r·P (scaling about the origin).
pub fn similarity_check(p: &ConvexPolygon, q: &ConvexPolygon) -> Option<Rational> {
    if p.vertices().len() != q.vertices().len() || p.is_empty() {
        return None;
    }
    // compare through the vertex farthest from the origin in a fixed order
    let pick = |c: &ConvexPolygon| c.vertices().iter().max_by(|a, b| (&a.x + &a.y).cmp(&(&b.x + &b.y)).then(a.cmp(b))).cloned();
    let (pv, qv) = (pick(p)?, pick(q)?);
    let r = if !pv.x.is_zero() {
        &qv.x / &pv.x
    } else if !pv.y.is_zero() {
        &qv.y / &pv.y
    } else {
        return if q == p { Some(Rational::one()) } else { None };
    };
    if r.is_positive() && &p.scale(&r) == q {
        Some(r)
    } else {
        None
    }
}

/// Sorting helper for points by y, then x.
pub fn by_y(a: &RatPoint, b: &RatPoint) -> Ordering {
    a.y.cmp(&b.y).then(a.x.cmp(&b.x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse;

    fn poly(s: &str) -> PuiseuxPoly {
        parse(s).unwrap()
    }

    #[test]
    fn supports() {
        assert_eq!(support(&poly("x^2*y+1")), vec![RatPoint::int(0, 0), RatPoint::int(2, 1)]);
        assert_eq!(support(&poly("(x+1)*(y+1)")).len(), 4);
        assert!(support(&PuiseuxPoly::zero()).is_empty());
    }

    #[test]
    fn polygons() {
        let f = poly("(x+1)^2*(y+1)^4 + (x+1)*(y+1)");
        assert_eq!(n0(&f), ConvexPolygon::rect(2, 4));
        let seg = n0(&poly("x^3*y^5"));
        assert_eq!(seg.vertices(), &[RatPoint::int(0, 0), RatPoint::int(3, 5)]);
        assert!(newton_polygon(&PuiseuxPoly::zero(), false).is_err());
        assert_eq!(n0(&PuiseuxPoly::zero()).vertices(), &[RatPoint::origin()]);
        let tri = ConvexPolygon::hull(&[RatPoint::int(0, 0), RatPoint::int(2, 0), RatPoint::int(1, 0), RatPoint::int(0, 1)]);
        assert_eq!(tri.vertices(), &[RatPoint::int(0, 0), RatPoint::int(2, 0), RatPoint::int(0, 1)]);
    }

    #[test]
    fn corner_vertices() {
        let r = ConvexPolygon::rect(2, 4);
        assert_eq!(en_vertex(&r), Some(RatPoint::int(2, 4)));
        assert_eq!(ne_vertex(&r), Some(RatPoint::int(2, 4)));
        let p = ConvexPolygon::hull(&[RatPoint::int(0, 0), RatPoint::int(4, 0), RatPoint::int(4, 4), RatPoint::int(2, 5)]);
        assert_eq!(en_vertex(&p), Some(RatPoint::int(4, 4)));
        assert_eq!(ne_vertex(&p), Some(RatPoint::int(2, 5)));
        let pt = ConvexPolygon::hull(&[RatPoint::int(3, 1)]);
        assert_eq!(en_vertex(&pt), ne_vertex(&pt));
    }

    #[test]
    fn memberships() {
        let f = poly("(x+1)^2*(y+1)^4 + (x+1)*(y+1)");
        assert_eq!(rect_membership(&f, 2, 4), RectMembership::InR);
        assert_eq!(rect_membership(&poly("x^2*y^4"), 2, 4), RectMembership::InRbar);
        assert_eq!(rect_membership(&poly("x"), 2, 4), RectMembership::Neither);
    }

    #[test]
    fn corner_regions() {
        let (np, npp) = n_prime_regions(2, 2, 4).unwrap();
        assert_eq!(np, ConvexPolygon::rect(1, 2));
        assert_eq!(npp.vertices(), &[RatPoint::int(1, 2), RatPoint::int(2, 2), RatPoint::int(2, 4), RatPoint::int(1, 4)]);
        let (np, npp) = n_prime_regions(1, 3, 5).unwrap();
        assert_eq!(np, npp);
        assert!(n_prime_regions(3, 2, 4).is_err());
    }

    #[test]
    fn region_r() {
        let r = RegionR::new(2, 3, 2, 4).unwrap();
        assert_eq!(r.slope, rat(9, 4));
        assert!(!region_r_contains(&r, &RatPoint::int(1, 1)));
        assert!(region_r_contains(&r, &RatPoint::int(0, 0)));
        assert!(!region_r_contains(&r, &RatPoint::int(1, 2)));
        assert_eq!(lattice_points_in_r(&r), vec![(0, 0)]);
        assert!(RegionR::new(2, 4, 2, 4).is_err());
    }

    #[test]
    fn l_v() {
        let v = RatPoint::int(2, 4);
        assert!(in_l_v(2, 3, &v, &RatPoint::int(1, 1)).unwrap());
        assert!(!in_l_v(2, 3, &v, &v).unwrap());
        assert!(!in_l_v(2, 3, &v, &RatPoint::int(5, 0)).unwrap());
        assert!(in_l_v(2, 3, &RatPoint::int(0, 1), &v).is_err());
    }

    #[test]
    fn pick() {
        let t = ConvexPolygon::hull(&[RatPoint::int(0, 0), RatPoint::int(1, 0), RatPoint::int(0, 1)]);
        assert_eq!(pick_area(&t).unwrap(), PickData { area: rat(1, 2), interior: 0, boundary: 3 });
        let t2 = ConvexPolygon::hull(&[RatPoint::int(0, 0), RatPoint::int(1, 1), RatPoint::int(2, 4)]);
        assert_eq!(pick_area(&t2).unwrap().area, int(1));
        let sq = ConvexPolygon::rect(1, 1);
        assert_eq!(pick_area(&sq).unwrap(), PickData { area: int(1), interior: 0, boundary: 4 });
        assert!(pick_area(&ConvexPolygon::rect_rat(&rat(1, 2), &int(1))).is_err());
    }

    #[test]
    fn similarity() {
        assert_eq!(similarity_check(&ConvexPolygon::rect(2, 4), &ConvexPolygon::rect(3, 6)), Some(rat(3, 2)));
        let p = ConvexPolygon::rect(2, 4);
        assert_eq!(similarity_check(&p, &p), Some(int(1)));
        assert_eq!(similarity_check(&p, &ConvexPolygon::rect(3, 5)), None);
    }
}
