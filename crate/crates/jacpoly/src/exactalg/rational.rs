//! Helpers around `BigRational` (coefficients) and `Rational64` (exponents).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
/// Exponents and w-degrees. These stay small, so machine-width ratios suffice.
pub type Exp = Rational64;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn exp(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

pub fn exp_int(n: i64) -> Exp {
    Exp::from_integer(n)
}

pub fn exp_to_rat(e: Exp) -> Rational {
    rat(*e.numer(), *e.denom())
}

pub fn rat_to_exp(r: &Rational) -> Option<Exp> {
    Some(Exp::new(r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Exact k-th root, if it exists in Q.
pub fn nth_root(r: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if k == 1 || r.is_zero() {
        return Some(r.clone());
    }
    if r.is_negative() && k % 2 == 0 {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let c = n.abs().nth_root(k);
        if num_traits::pow(c.clone(), k as usize) == n.abs() {
            Some(if n.is_negative() { -c } else { c })
        } else {
            None
        }
    };
    Some(Rational::new(root_int(r.numer())?, root_int(r.denom())?))
}

/// r^e for integer e (r must be nonzero when e < 0).
pub fn pow_i(r: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// r^e for rational e, when the result is rational.
pub fn pow_exp(r: &Rational, e: Exp) -> Option<Rational> {
    let d = u32::try_from(*e.denom()).ok()?;
    if r.is_zero() {
        return if *e.numer() > 0 { Some(Rational::zero()) } else { None };
    }
    let root = nth_root(r, d)?;
    Some(pow_i(&root, *e.numer()))
}

/// Generalized binomial coefficient c(c-1)...(c-k+1)/k!.
pub fn binom(c: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (c - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a.lcm(&b)
}

pub fn is_integer(e: Exp) -> bool {
    *e.denom() == 1
}

/// Positive divisors, ascending.
pub fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn floor_rat(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_rat(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(nth_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(nth_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(nth_root(&rat(-4, 1), 2), None);
        assert_eq!(nth_root(&rat(2, 1), 2), None);
        assert_eq!(pow_exp(&rat(4, 9), exp(-3, 2)), Some(rat(27, 8)));
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(&rat(1, 2), 1), rat(1, 2));
        assert_eq!(binom(&rat(-1, 2), 2), rat(3, 8));
        assert_eq!(binom(&int(3), 4), int(0));
        assert_eq!(binom(&rat(3, 2), 0), int(1));
    }

    #[test]
    fn parsing_and_divisors() {
        assert_eq!(parse_rational("-3/8"), Some(rat(-3, 8)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
