use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{binom, exp_int, int, lcm_i64, Exp, Rational};
use super::AlgError;

/// Which exponents a polynomial may carry.
///
/// `xden`/`yden` bound the exponent denominators, `xneg`/`yneg` allow
/// negative exponents. Fractional exponents are only ever allowed in one
/// variable: the named rings are `Plain` = Q[x,y], `Q12(p)` = Q[x^{±1/p}, y],
/// `Q14(p)` = Q[x, y^{±1/p}] and `Laurent` = Q[x^{±1}, y^{±1}].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub xden: i64,
    pub yden: i64,
    pub xneg: bool,
    pub yneg: bool,
}

impl Ring {
    pub const PLAIN: Ring = Ring { xden: 1, yden: 1, xneg: false, yneg: false };
    pub const LAURENT: Ring = Ring { xden: 1, yden: 1, xneg: true, yneg: true };

    pub fn q12(p: i64) -> Ring {
        Ring { xden: p, yden: 1, xneg: true, yneg: false }
    }

    pub fn q14(p: i64) -> Ring {
        Ring { xden: 1, yden: p, xneg: false, yneg: true }
    }

    pub fn is_valid(&self) -> bool {
        self.xden >= 1 && self.yden >= 1 && (self.xden == 1 || self.yden == 1)
    }

    /// Smallest ring containing both, or a mismatch error.
    pub fn join(self, other: Ring) -> Result<Ring, AlgError> {
        let r = Ring {
            xden: lcm_i64(self.xden, other.xden),
            yden: lcm_i64(self.yden, other.yden),
            xneg: self.xneg || other.xneg,
            yneg: self.yneg || other.yneg,
        };
        if r.is_valid() {
            Ok(r)
        } else {
            Err(AlgError::RingMismatch(self, other))
        }
    }

    pub fn admits(&self, m: &Mono) -> bool {
        self.xden % m.x.denom() == 0
            && self.yden % m.y.denom() == 0
            && (self.xneg || m.x >= Exp::zero())
            && (self.yneg || m.y >= Exp::zero())
    }

    pub fn contains(&self, other: &Ring) -> bool {
        self.xden % other.xden == 0
            && self.yden % other.yden == 0
            && (self.xneg || !other.xneg)
            && (self.yneg || !other.yneg)
    }

    /// Ring generated by a single monomial.
    pub fn of_mono(m: &Mono) -> Ring {
        let xden = *m.x.denom();
        let yden = *m.y.denom();
        Ring {
            xden,
            yden,
            xneg: m.x < Exp::zero() || xden > 1,
            yneg: m.y < Exp::zero() || yden > 1,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xfrac = self.xneg || self.xden > 1;
        let yfrac = self.yneg || self.yden > 1;
        match (xfrac, yfrac) {
            (false, false) => write!(f, "Plain"),
            (true, false) => write!(f, "Q12({})", self.xden),
            (false, true) => write!(f, "Q14({})", self.yden),
            (true, true) if self.xden == 1 && self.yden == 1 => write!(f, "Laurent"),
            (true, true) if self.yden == 1 => write!(f, "Laurent-Q12({})", self.xden),
            (true, true) => write!(f, "Laurent-Q14({})", self.yden),
        }
    }
}

/// Exponent pair x^x y^y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub x: Exp,
    pub y: Exp,
}

impl Mono {
    pub fn new(x: Exp, y: Exp) -> Mono {
        Mono { x, y }
    }

    pub fn int(x: i64, y: i64) -> Mono {
        Mono { x: exp_int(x), y: exp_int(y) }
    }

    pub fn one() -> Mono {
        Mono::int(0, 0)
    }

    pub fn is_one(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono { x: self.x + o.x, y: self.y + o.y }
    }

    pub fn scaled(&self, k: Exp) -> Mono {
        Mono { x: self.x * k, y: self.y * k }
    }
}

// Graded-lexicographic: total degree, then x, then y.
impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.x + self.y)
            .cmp(&(o.x + o.y))
            .then(self.x.cmp(&o.x))
            .then(self.y.cmp(&o.y))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Finite sum of rational multiples of x^a y^b with rational a, b.
///
/// Equality compares terms only; the ring tag records the ambient ring the
/// value was built in.
#[derive(Clone, Debug)]
pub struct PuiseuxPoly {
    ring: Ring,
    terms: BTreeMap<Mono, Rational>,
}

impl PartialEq for PuiseuxPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for PuiseuxPoly {}

impl Default for PuiseuxPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        Self::zero_in(Ring::PLAIN)
    }

    pub fn zero_in(ring: Ring) -> Self {
        PuiseuxPoly { ring, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Mono::one())
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), Mono::int(1, 0))
    }

    pub fn y() -> Self {
        Self::term(Rational::one(), Mono::int(0, 1))
    }

    /// Single term, in the smallest ring that holds it.
    pub fn term(c: Rational, m: Mono) -> Self {
        let mut p = Self::zero_in(Ring::of_mono(&m));
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(c: Rational, x: Exp, y: Exp) -> Self {
        Self::term(c, Mono::new(x, y))
    }

    /// Builds a polynomial in `ring`, summing repeated monomials.
    pub fn from_terms<I>(ring: Ring, it: I) -> Result<Self, AlgError>
    where
        I: IntoIterator<Item = (Mono, Rational)>,
    {
        let mut p = Self::zero_in(ring);
        for (m, c) in it {
            if !ring.admits(&m) {
                return Err(AlgError::OutsideRing { mono: m, ring });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Like `from_terms`, but the ring is the smallest one holding the terms.
    pub fn from_terms_inferred<I>(it: I) -> Result<Self, AlgError>
    where
        I: IntoIterator<Item = (Mono, Rational)>,
    {
        let mut terms = BTreeMap::new();
        let mut ring = Ring::PLAIN;
        for (m, c) in it {
            ring = ring.join(Ring::of_mono(&m))?;
            let e: &mut Rational = terms.entry(m).or_insert_with(Rational::zero);
            *e += c;
        }
        terms.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(PuiseuxPoly { ring, terms })
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Re-tags the value; fails if some exponent is not allowed in `ring`.
    pub fn with_ring(&self, ring: Ring) -> Result<Self, AlgError> {
        if let Some(m) = self.terms.keys().find(|m| !ring.admits(m)) {
            return Err(AlgError::OutsideRing { mono: *m, ring });
        }
        Ok(PuiseuxPoly { ring, terms: self.terms.clone() })
    }

    /// Smallest ring holding every term (Plain for the zero polynomial).
    pub fn minimal_ring(&self) -> Result<Ring, AlgError> {
        self.terms.keys().try_fold(Ring::PLAIN, |r, m| r.join(Ring::of_mono(m)))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn monos(&self) -> impl DoubleEndedIterator<Item = &Mono> + '_ {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_int(&self, x: i64, y: i64) -> Rational {
        self.coeff(&Mono::int(x, y))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Mono::one())
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn as_single_term(&self) -> Option<(Mono, Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
        } else {
            None
        }
    }

    pub fn max_x(&self) -> Option<Exp> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn max_y(&self) -> Option<Exp> {
        self.terms.keys().map(|m| m.y).max()
    }

    pub fn min_x(&self) -> Option<Exp> {
        self.terms.keys().map(|m| m.x).min()
    }

    pub fn min_y(&self) -> Option<Exp> {
        self.terms.keys().map(|m| m.y).min()
    }

    pub fn filter_terms<P: Fn(&Mono, &Rational) -> bool>(&self, keep: P) -> Self {
        PuiseuxPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgError> {
        let mut out = PuiseuxPoly { ring: self.ring.join(other.ring)?, terms: self.terms.clone() };
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgError> {
        let mut out = PuiseuxPoly { ring: self.ring.join(other.ring)?, terms: self.terms.clone() };
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgError> {
        let ring = self.ring.join(other.ring)?;
        let mut terms: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = terms.entry(m1.mul(m2)).or_insert_with(Rational::zero);
                *e += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(PuiseuxPoly { ring, terms })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.ring);
        }
        PuiseuxPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by c·x^m.x·y^m.y.
    pub fn mul_term(&self, c: &Rational, m: &Mono) -> Result<Self, AlgError> {
        let ring = self.ring.join(Ring::of_mono(m))?;
        if c.is_zero() {
            return Ok(Self::zero_in(ring));
        }
        Ok(PuiseuxPoly {
            ring,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one().with_ring(self.ring).expect("1 lies in every ring");
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn dx(&self) -> Self {
        PuiseuxPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.x.is_zero())
                .map(|(m, c)| (Mono::new(m.x - 1, m.y), c * super::rational::exp_to_rat(m.x)))
                .collect(),
        }
    }

    pub fn dy(&self) -> Self {
        PuiseuxPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.y.is_zero())
                .map(|(m, c)| (Mono::new(m.x, m.y - 1), c * super::rational::exp_to_rat(m.y)))
                .collect(),
        }
    }

    pub fn checked_jacobian(&self, g: &Self) -> Result<Self, AlgError> {
        let a = self.dx().checked_mul(&g.dy())?;
        let b = self.dy().checked_mul(&g.dx())?;
        a.checked_sub(&b)
    }

    /// Image under x ↦ x, y ↦ y + c·x^{-u/v}.
    pub fn shift_substitute(&self, c: &Rational, u: i64, v: i64) -> Result<Self, AlgError> {
        if v <= 0 {
            return Err(AlgError::Domain(format!("shift denominator must be positive, got {v}")));
        }
        let ring = self.ring.join(Ring::q12(v))?;
        if c.is_zero() {
            return Ok(PuiseuxPoly { ring, terms: self.terms.clone() });
        }
        let step = Exp::new(-u, v);
        let mut out = Self::zero_in(ring);
        let mut cpow: Vec<Rational> = vec![Rational::one()];
        for (m, coef) in &self.terms {
            if *m.y.denom() != 1 || m.y < Exp::zero() {
                return Err(AlgError::Domain(format!(
                    "shift needs nonnegative integer y-exponents, found y^{}",
                    m.y
                )));
            }
            let b = *m.y.numer() as usize;
            while cpow.len() <= b {
                let next = cpow.last().unwrap() * c;
                cpow.push(next);
            }
            let bq = int(b as i64);
            for k in 0..=b {
                let coefk = coef * binom(&bq, k) * &cpow[k];
                let mono = Mono::new(m.x + step * (k as i64), m.y - (k as i64));
                out.add_term(mono, coefk);
            }
        }
        Ok(out)
    }

    pub fn swap_xy(&self) -> Self {
        PuiseuxPoly {
            ring: Ring { xden: self.ring.yden, yden: self.ring.xden, xneg: self.ring.yneg, yneg: self.ring.xneg },
            terms: self.terms.iter().map(|(m, c)| (Mono::new(m.y, m.x), c.clone())).collect(),
        }
    }

    /// Evaluates at x = x0 when all x-exponents are nonnegative integers;
    /// the result is a polynomial in y alone.
    pub fn eval_x(&self, x0: &Rational) -> Option<Self> {
        let mut out = Self::zero_in(self.ring);
        for (m, c) in &self.terms {
            if *m.x.denom() != 1 || m.x < Exp::zero() {
                return None;
            }
            let v = c * num_traits::pow(x0.clone(), *m.x.numer() as usize);
            out.add_term(Mono::new(Exp::zero(), m.y), v);
        }
        Some(out)
    }
}

pub fn jacobian(f: &PuiseuxPoly, g: &PuiseuxPoly) -> PuiseuxPoly {
    f.checked_jacobian(g).unwrap_or_else(|e| panic!("{e}"))
}

impl<'a> Add<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        self.checked_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, o: PuiseuxPoly) -> PuiseuxPoly {
        &self + &o
    }
}

impl Sub for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, o: PuiseuxPoly) -> PuiseuxPoly {
        &self - &o
    }
}

impl Mul for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, o: PuiseuxPoly) -> PuiseuxPoly {
        &self * &o
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Neg for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        -&self
    }
}

fn fmt_exp(e: Exp) -> String {
    if *e.denom() == 1 && *e.numer() >= 0 {
        e.numer().to_string()
    } else {
        format!("({e})")
    }
}

fn fmt_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("x", m.x), ("y", m.y)] {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{}", fmt_exp(e)));
        }
    }
    parts.join("*")
}

// Canonical form: terms from the largest monomial down, `*` between factors.
impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", fmt_mono(m))?;
            } else {
                write!(f, "{a}*{}", fmt_mono(m))?;
            }
        }
        Ok(())
    }
}
