//! The one-variable rational power Σ_i binom(b/a, i) A^{b−ai} B^i.

use num_traits::Zero;

use super::MagnusError;
use crate::exactalg::rational::{binom, int, pow_exp};
use crate::exactalg::{Rational, UPoly};

fn trunc(c: &[Rational], n: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = c.iter().take(n + 1).cloned().collect();
    v.resize(n + 1, Rational::zero());
    v
}

fn ser_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn ser_inv(a: &[Rational], n: usize) -> Vec<Rational> {
    let a = trunc(a, n);
    let mut out = vec![Rational::zero(); n + 1];
    out[0] = int(1) / &a[0];
    for k in 1..=n {
        let s: Rational = (1..=k).map(|i| &a[i] * &out[k - i]).sum();
        out[k] = -s * &out[0];
    }
    out
}

fn ser_pow(a: &[Rational], k: i64, n: usize) -> Vec<Rational> {
    let base = if k < 0 { ser_inv(a, n) } else { trunc(a, n) };
    let mut out = trunc(&[int(1)], n);
    for _ in 0..k.unsigned_abs() {
        out = ser_mul(&out, &base, n);
    }
    out
}

/// S^q to order n, from S·Y′ = q·S′·Y. Needs S(0) ≠ 0 with S(0)^q rational.
pub fn series_rational_power(s: &[Rational], q: &Rational, n: usize) -> Option<Vec<Rational>> {
    let s = trunc(s, n);
    if s[0].is_zero() {
        return None;
    }
    let e = crate::exactalg::rational::rat_to_exp(q)?;
    let mut y = vec![pow_exp(&s[0], e)?];
    for k in 1..=n {
        let kk = int(k as i64);
        let acc: Rational = (1..=k).map(|i| (q * int(i as i64) - &kk + int(i as i64)) * &s[i] * &y[k - i]).sum();
        y.push(acc / (kk * &s[0]));
    }
    Some(y)
}

/// R_0 … R_{μmax}: the coefficients of Σ_i binom(b/a, i) A^{b−ai} B^i in s.
/// Needs A(0) ≠ 0, and B(0) = 0 so the sum is finite in each degree.
pub fn onevar_rational_power(a_poly: &UPoly, b_poly: &UPoly, a: i64, b: i64, mu_max: usize) -> Result<Vec<Rational>, MagnusError> {
    if a <= 0 {
        return Err(MagnusError::Precondition(format!("a = {a} must be positive")));
    }
    if a_poly.coeff(0).is_zero() {
        return Err(MagnusError::Precondition("A(0) = 0".into()));
    }
    let q = Rational::new(b.into(), a.into());
    let imax = match b_poly.lowdeg() {
        None => 0,
        Some(0) => return Err(MagnusError::Precondition("B(0) ≠ 0: the sum has no finite truncation".into())),
        Some(l) => mu_max / l,
    };
    let bs = trunc(b_poly.coeffs(), mu_max);
    let step = ser_pow(a_poly.coeffs(), -a, mu_max);
    // A^{b−ai}·B^i, updated by A^{−a}·B per i
    let mut cur = ser_pow(a_poly.coeffs(), b, mu_max);
    let mut out = vec![Rational::zero(); mu_max + 1];
    for i in 0..=imax {
        let c = binom(&q, i);
        for (o, t) in out.iter_mut().zip(&cur) {
            *o += &c * t;
        }
        cur = ser_mul(&ser_mul(&cur, &step, mu_max), &bs, mu_max);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn square_root_series() {
        // (1+s)^{1/2}
        let y = series_rational_power(&[int(1), int(1)], &rat(1, 2), 3).unwrap();
        assert_eq!(y, vec![int(1), rat(1, 2), rat(-1, 8), rat(1, 16)]);
        assert!(series_rational_power(&[int(2), int(1)], &rat(1, 2), 3).is_none());
    }

    #[test]
    fn matches_series_power() {
        let a = UPoly::from_ints(&[1, 2]);
        let b = UPoly::from_ints(&[0, 0, 3, -1]);
        let r = onevar_rational_power(&a, &b, 2, 3, 12).unwrap();
        let s = a.pow(2).add(&b);
        assert_eq!(r, series_rational_power(s.coeffs(), &rat(3, 2), 12).unwrap());
    }

    #[test]
    fn integral_powers_truncate() {
        let a = UPoly::from_ints(&[1, 1]);
        let r = onevar_rational_power(&a, &UPoly::zero(), 2, 3, 10).unwrap();
        let want: Vec<Rational> = [1, 3, 3, 1, 0, 0, 0, 0, 0, 0, 0].iter().map(|&c| int(c)).collect();
        assert_eq!(r, want);
        let raw = onevar_rational_power(&UPoly::one(), &UPoly::from_ints(&[0, 1]), 2, 3, 3).unwrap();
        assert_eq!(raw, vec![int(1), rat(3, 2), rat(3, 8), rat(-1, 16)]);
        assert!(onevar_rational_power(&UPoly::from_ints(&[0, 1]), &UPoly::zero(), 2, 3, 4).is_err());
        assert!(onevar_rational_power(&a, &UPoly::from_ints(&[1]), 2, 3, 4).is_err());
    }
}
