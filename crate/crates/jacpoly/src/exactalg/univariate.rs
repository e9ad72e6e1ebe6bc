//! Dense one-variable polynomials over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::PuiseuxPoly;
use super::rational::{int, Rational};

/// Coefficients low-to-high; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

/// Trial division bound used when enumerating rational-root candidates.
/// Cofactors left over after this bound are treated as prime.
const TRIAL_DIVISION_CAP: u64 = 1 << 20;

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> UPoly {
        UPoly::from_ints(&[1])
    }

    /// z - r
    pub fn linear(r: &Rational) -> UPoly {
        UPoly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> UPoly {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lowdeg(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut r = UPoly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&(Rational::one() / self.lead()))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// α(W) by Horner's rule.
    pub fn compose(&self, w: &PuiseuxPoly) -> PuiseuxPoly {
        let mut acc = PuiseuxPoly::zero_in(w.ring());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * w) + &PuiseuxPoly::constant(c.clone());
        }
        acc
    }

    /// α(β(z)).
    pub fn compose_upoly(&self, beta: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(beta).add(&UPoly::new(vec![c.clone()]));
        }
        acc
    }

    /// α(z + s).
    pub fn shift(&self, s: &Rational) -> UPoly {
        self.compose_upoly(&UPoly::new(vec![s.clone(), Rational::one()]))
    }

    /// Multiplicity of r as a root.
    pub fn multiplicity(&self, r: &Rational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = UPoly::linear(r);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, rem) = p.divrem(&lin);
            if !rem.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    /// Rational roots with multiplicities (ascending), and the cofactor
    /// that has no rational roots.
    pub fn rational_roots(&self) -> (Vec<(Rational, usize)>, UPoly) {
        if self.is_zero() {
            return (vec![], UPoly::zero());
        }
        let mut rest = self.clone();
        let mut roots = Vec::new();
        let zero_mult = rest.lowdeg().unwrap_or(0);
        if zero_mult > 0 {
            rest = UPoly::new(rest.coeffs[zero_mult..].to_vec());
            roots.push((Rational::zero(), zero_mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let ints = rest.primitive_integer();
            let a0 = ints.first().unwrap().abs();
            let an = ints.last().unwrap().abs();
            let ps = bigint_divisors(&a0);
            let qs = bigint_divisors(&an);
            let mut cands: Vec<Rational> = Vec::new();
            for p in &ps {
                for q in &qs {
                    let r = Rational::new(p.clone(), q.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for c in cands {
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                if rest.eval(&c).is_zero() {
                    let k = rest.multiplicity(&c);
                    rest = rest.divrem(&UPoly::linear(&c).pow(k as u32)).0;
                    roots.push((c, k));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest)
    }

    /// Integer multiple with coprime coefficients and positive lead.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut v: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if v.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        for c in v.iter_mut() {
            *c = &*c / &g * &sign;
        }
        v
    }
}

fn bigint_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_CAP {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UPoly::from_ints(&[1, 2, 1])), b);
    }

    #[test]
    fn roots_with_multiplicity() {
        // 3 z^2 (z - 2/3)^2 (z + 1) (z^2 + 1)
        let p = UPoly::monomial(int(3), 2)
            .mul(&UPoly::linear(&rat(2, 3)).pow(2))
            .mul(&UPoly::linear(&int(-1)))
            .mul(&UPoly::from_ints(&[1, 0, 1]));
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![(int(-1), 1), (int(0), 2), (rat(2, 3), 2)]);
        assert_eq!(rest.degree(), Some(2));
        assert!(rest.eval(&int(0)) != int(0));
    }

    #[test]
    fn composition() {
        let alpha = UPoly::from_ints(&[1, 2, 1]);
        assert_eq!(alpha.shift(&int(-1)), UPoly::from_ints(&[0, 0, 1]));
        let w = crate::exactalg::parse("x*y").unwrap();
        assert_eq!(alpha.compose(&w), crate::exactalg::parse("(x*y+1)^2").unwrap());
        assert_eq!(UPoly::from_ints(&[1, 0, 2]).to_string(), "2*z^2 + 1");
    }
}
