//! Directions, w-degrees, homogeneous parts and the counterclockwise order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::exactalg::{Exp, Mono, PuiseuxPoly};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GradingError {
    #[error("({0}, {1}) is not a direction: need gcd 1 and u > 0 or v > 0")]
    NotADirection(i64, i64),
    #[error("leading form of the zero polynomial")]
    ZeroPolynomial,
    #[error("directions do not fit in a half-turn from the anchor")]
    OutsideHalfTurn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    u: i64,
    v: i64,
}

impl Direction {
    pub fn new(u: i64, v: i64) -> Result<Direction, GradingError> {
        if u.gcd(&v) != 1 || !(u > 0 || v > 0) {
            return Err(GradingError::NotADirection(u, v));
        }
        Ok(Direction { u, v })
    }

    /// Divides out the gcd; fails on the zero vector or the third quadrant.
    pub fn primitive(u: i64, v: i64) -> Result<Direction, GradingError> {
        let g = u.gcd(&v);
        if g == 0 {
            return Err(GradingError::NotADirection(u, v));
        }
        Direction::new(u / g, v / g)
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    /// u + v, the w-degree of xy.
    pub fn of_xy(&self) -> i64 {
        self.u + self.v
    }

    pub fn mono_deg(&self, m: &Mono) -> Exp {
        m.x * self.u + m.y * self.v
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// None stands for −∞ (the zero polynomial).
pub fn w_deg(f: &PuiseuxPoly, w: Direction) -> Option<Exp> {
    f.monos().map(|m| w.mono_deg(m)).max()
}

pub fn leading_form(f: &PuiseuxPoly, w: Direction) -> Result<PuiseuxPoly, GradingError> {
    let d = w_deg(f, w).ok_or(GradingError::ZeroPolynomial)?;
    Ok(f.filter_terms(|m, _| w.mono_deg(m) == d))
}

/// The w-homogeneous part of degree d (possibly zero).
pub fn homogeneous_part(f: &PuiseuxPoly, w: Direction, d: Exp) -> PuiseuxPoly {
    f.filter_terms(|m, _| w.mono_deg(m) == d)
}

/// Parts keyed by their exact w-degree.
pub fn decompose(f: &PuiseuxPoly, w: Direction) -> BTreeMap<Exp, PuiseuxPoly> {
    let mut degs: Vec<Exp> = f.monos().map(|m| w.mono_deg(m)).collect();
    degs.sort();
    degs.dedup();
    degs.into_iter().map(|d| (d, homogeneous_part(f, w, d))).collect()
}

fn crs(a: Direction, b: Direction) -> i128 {
    a.u as i128 * b.v as i128 - a.v as i128 * b.u as i128
}

fn dot(a: Direction, b: Direction) -> i128 {
    a.u as i128 * b.u as i128 + a.v as i128 * b.v as i128
}

/// Position of w counterclockwise from the anchor: 0 on the anchor, then
/// the open half-turn; the opposite ray and beyond are rejected.
fn half_turn_key(w: Direction, anchor: Direction) -> Result<(i128, i128), GradingError> {
    let c = crs(anchor, w);
    if c < 0 || (c == 0 && dot(anchor, w) < 0) {
        return Err(GradingError::OutsideHalfTurn);
    }
    Ok((c, dot(anchor, w)))
}

/// Counterclockwise order starting at `anchor`, decided by cross products.
pub fn direction_cmp(w1: Direction, w2: Direction, anchor: Direction) -> Result<Ordering, GradingError> {
    half_turn_key(w1, anchor)?;
    half_turn_key(w2, anchor)?;
    if w1 == w2 {
        return Ok(Ordering::Equal);
    }
    let c = crs(w1, w2);
    Ok(if c > 0 { Ordering::Less } else { Ordering::Greater })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::exp_int;
    use crate::exactalg::parse;

    fn d(u: i64, v: i64) -> Direction {
        Direction::new(u, v).unwrap()
    }

    #[test]
    fn directions() {
        assert!(Direction::new(2, 4).is_err());
        assert!(Direction::new(-1, -1).is_err());
        assert!(Direction::new(0, 0).is_err());
        assert_eq!(Direction::primitive(6, -2).unwrap(), d(3, -1));
        assert_eq!(d(3, -1).of_xy(), 2);
    }

    #[test]
    fn degrees() {
        let f = parse("(x+1)^2*y^4+(x+1)*y").unwrap();
        assert_eq!(w_deg(&f, d(3, -1)), Some(exp_int(2)));
        assert_eq!(w_deg(&parse("x^2+y").unwrap(), d(1, 1)), Some(exp_int(2)));
        assert_eq!(w_deg(&PuiseuxPoly::zero(), d(1, 1)), None);
        assert_eq!(w_deg(&parse("x^(-1/12)").unwrap(), d(0, 1)), Some(exp_int(0)));
    }

    #[test]
    fn leading_forms() {
        let f = parse("(x+1)^2*y^4+(x+1)*y").unwrap();
        assert_eq!(leading_form(&f, d(3, -1)).unwrap(), parse("x^2*y^4+x*y").unwrap());
        assert_eq!(leading_form(&parse("x^2+y").unwrap(), d(0, 1)).unwrap(), parse("y").unwrap());
        let m = parse("3x^2y").unwrap();
        assert_eq!(leading_form(&m, d(5, -7)).unwrap(), m);
        assert!(leading_form(&PuiseuxPoly::zero(), d(1, 0)).is_err());
    }

    #[test]
    fn decompositions() {
        let parts = decompose(&parse("x*y+x").unwrap(), d(0, 1));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&exp_int(1)], parse("x*y").unwrap());
        assert_eq!(parts[&exp_int(0)], parse("x").unwrap());
        let f = parse("(x+1)^2*(y+1)^4+(x+1)*(y+1)").unwrap();
        let parts = decompose(&f, d(0, 1));
        assert_eq!(parts.keys().cloned().collect::<Vec<_>>(), (0..=4).map(exp_int).collect::<Vec<_>>());
        let sum = parts.values().fold(PuiseuxPoly::zero(), |a, p| &a + p);
        assert_eq!(sum, f);
    }

    #[test]
    fn ccw_order() {
        let a = d(1, 0);
        assert_eq!(direction_cmp(d(1, 0), d(1, 1), a).unwrap(), Ordering::Less);
        assert_eq!(direction_cmp(d(1, 1), d(0, 1), a).unwrap(), Ordering::Less);
        assert_eq!(direction_cmp(d(3, -1), d(1, 0), d(1, -1)).unwrap(), Ordering::Less);
        assert_eq!(direction_cmp(d(1, 1), d(1, 1), a).unwrap(), Ordering::Equal);
        assert!(direction_cmp(d(1, -1), d(1, 0), a).is_err());
    }
}
