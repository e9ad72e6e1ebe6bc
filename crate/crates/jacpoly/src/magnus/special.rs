//! The case a = n: the polynomials ĥ_{b−i} in x_0 … x_{s−1}, their weighted
//! slices, the y⁻¹-expansion h̃ and the order-a recurrence.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::multinomial;
use crate::exactalg::rational::{int, pow_i};
use crate::exactalg::{Mono, PuiseuxPoly, Rational, TruncSeries};

/// Polynomial in x_0 … x_{nvars−1}, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, vars: &[Rational]) -> Rational {
        assert_eq!(vars.len(), self.nvars, "wrong number of values");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(vars).fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
            })
            .sum()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(l, &k)| if k == 1 { format!("x{l}") } else { format!("x{l}^{k}") })
                .collect();
            let neg = c < &Rational::zero();
            if n > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = if neg { -c.clone() } else { c.clone() };
            match (vars.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{a}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Data of the a = n case. `rho` stands for p^s/ζ, already specialized.
#[derive(Clone, Debug)]
pub struct SpecialCase {
    pub a: i64,
    pub b: i64,
    pub s: usize,
    pub e: Vec<Rational>,
    pub rho: Rational,
}

impl SpecialCase {
    /// e = (1, 0, …, 0) of length a + b and ρ = 1.
    pub fn new(a: i64, b: i64, s: usize) -> SpecialCase {
        let mut e = vec![Rational::zero(); (a + b) as usize];
        e[0] = Rational::one();
        SpecialCase { a, b, s, e, rho: Rational::one() }
    }

    /// (a, a−1, …, a−s+1).
    pub fn w_vec(&self) -> Vec<Rational> {
        (0..self.s).map(|l| int(self.a - l as i64)).collect()
    }

    /// d_p = m/((a−s)a).
    pub fn d_p(&self, m: i64) -> Rational {
        Rational::new(m.into(), ((self.a - self.s as i64) * self.a).into())
    }

    /// Closed range for d_ζ: [sm/((a−s)a), m/(a−s) − (m − a/(a+b))/(a − a/(a+b))].
    pub fn d_zeta_range(&self, m: i64) -> (Rational, Rational) {
        let (a, b, s) = (int(self.a), int(self.b), int(self.s as i64));
        let m = int(m);
        let t = &a / (&a + &b);
        let lo = &s * &m / ((&a - &s) * &a);
        let hi = &m / (&a - &s) - (&m - &t) / (&a - &t);
        (lo, hi)
    }

    /// Lower bound (m − a/(a+b)) / (a(a+b−1)) for the scaling k.
    pub fn k_lower_bound(&self, m: i64) -> Rational {
        let (a, b) = (int(self.a), int(self.b));
        (int(m) - &a / (&a + &b)) / (&a * (&a + &b - int(1)))
    }
}

/// All n with Σ weights_l n_l = target.
fn weighted_compositions(weights: &[i64], target: i64) -> Vec<Vec<u32>> {
    fn go(weights: &[i64], target: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&w, rest)) = weights.split_first() else {
            if target == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let mut k = 0;
        while k * w <= target {
            cur.push(k as u32);
            go(rest, target - k * w, cur, out);
            cur.pop();
            k += 1;
        }
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let mut out = Vec::new();
    if target >= 0 {
        go(weights, target, &mut Vec::new(), &mut out);
    }
    out
}

/// ĥ_{b−i} as a polynomial in x_0 … x_{s−1}:
/// Σ_j e_j ρ^j Σ_{a n_0 + (a−1) n_1 + … + (a−s) n_s = i−j} binom((b−j)/a; n) Π_{l<s} x_l^{n_l}.
pub fn hhat_poly(ctx: &SpecialCase, i: i64) -> MPoly {
    let weights: Vec<i64> = (0..=ctx.s).map(|l| ctx.a - l as i64).collect();
    let mut out = MPoly::zero(ctx.s);
    for (j, ej) in ctx.e.iter().enumerate() {
        if ej.is_zero() || (j as i64) > i {
            continue;
        }
        let pre = ej * pow_i(&ctx.rho, j as i64);
        let c = Rational::new((ctx.b - j as i64).into(), ctx.a.into());
        for n in weighted_compositions(&weights, i - j as i64) {
            let ms: Vec<usize> = n.iter().map(|&k| k as usize).collect();
            out.add_term(n[..ctx.s].to_vec(), &pre * multinomial(&c, &ms));
        }
    }
    out
}

pub fn weighted_multinomial_h(ctx: &SpecialCase, i: i64, vars: &[Rational]) -> Rational {
    hhat_poly(ctx, i).eval(vars)
}

/// Terms of weight exactly d under the weight vector.
pub fn w_weighted_part(poly: &MPoly, wvec: &[Rational], d: &Rational) -> MPoly {
    let mut out = MPoly::zero(poly.nvars);
    for (e, c) in &poly.terms {
        let wt: Rational = e.iter().zip(wvec).map(|(&k, w)| w * int(k as i64)).sum();
        if &wt == d {
            out.add_term(e.clone(), c.clone());
        }
    }
    out
}

/// Minimal k with k(a−i) ≥ v_i for every finite v_i (None stands for −∞).
pub fn min_scaling(v: &[Option<Rational>], a: i64) -> Option<Rational> {
    v.iter()
        .enumerate()
        .filter_map(|(i, vi)| vi.as_ref().map(|vi| vi / int(a - i as i64)))
        .max()
}

/// d_{h_i} = k(b − i).
pub fn expected_degree(k: &Rational, b: i64, i: i64) -> Rational {
    k * int(b - i)
}

/// Coefficients of a Laurent series in y⁻¹: `coeffs[k]` multiplies y^{top−k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSeries {
    pub top: i64,
    pub coeffs: Vec<PuiseuxPoly>,
}

impl YSeries {
    /// Coefficient of y^k, or None below the truncation.
    pub fn get(&self, k: i64) -> Option<PuiseuxPoly> {
        if k > self.top {
            return Some(PuiseuxPoly::zero());
        }
        self.coeffs.get((self.top - k) as usize).cloned()
    }

    pub fn lowest(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }
}

fn mono_power(c: &Rational, m: &Mono, k: i64) -> PuiseuxPoly {
    PuiseuxPoly::term(pow_i(c, k), m.scaled(crate::exactalg::Exp::from_integer(k)))
}

/// (Σ_i S_i y^i)^{q} with the top coefficient's power supplied as `top_pow`
/// (a monomial equal to S_N^q), `terms` coefficients from y^{Nq} down.
fn expand_power(s: &[PuiseuxPoly], q: &Rational, top_pow: PuiseuxPoly, terms: usize) -> Option<YSeries> {
    let n = s.iter().rposition(|c| !c.is_zero())?;
    let (tm, tc) = s[n].as_single_term()?;
    let nq = q * int(n as i64);
    if !nq.is_integer() || terms == 0 {
        return None;
    }
    let order = terms - 1;
    let inv = mono_power(&tc, &tm, -1);
    let u: Vec<PuiseuxPoly> = (0..=order.min(n)).map(|k| if k == 0 { PuiseuxPoly::zero() } else { &s[n - k] * &inv }).collect();
    let u = TruncSeries::new(u, order);
    let mut acc = TruncSeries::zero(order);
    let mut upow = TruncSeries::one(order);
    for i in 0..=order {
        acc = acc.add(&upow.scale(&crate::exactalg::rational::binom(q, i)));
        upow = upow.mul(&u);
        if upow.is_zero() {
            break;
        }
    }
    let coeffs = acc.coeffs().iter().map(|c| c * &top_pow).collect();
    Some(YSeries { top: nq.to_integer().try_into().ok()?, coeffs })
}

/// F^{q} for F = Σ F_i y^i with monomial top coefficient, when the top
/// coefficient's q-th power is rational.
pub fn y_power_series(f: &[PuiseuxPoly], q: &Rational, terms: usize) -> Option<YSeries> {
    let n = f.iter().rposition(|c| !c.is_zero())?;
    let (tm, tc) = f[n].as_single_term()?;
    let e = crate::exactalg::rational::rat_to_exp(q)?;
    let c = crate::exactalg::rational::pow_exp(&tc, e)?;
    expand_power(f, q, PuiseuxPoly::term(c, tm.scaled(e)), terms)
}

fn y_mul(a: &[PuiseuxPoly], b: &[PuiseuxPoly]) -> Vec<PuiseuxPoly> {
    let mut out = vec![PuiseuxPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Σ_j e_j (q̃^a + z̃)^{(b−j)/a} expanded by inverting the top term of q̃^a,
/// `terms` coefficients from y^{b·deg q̃} down. None when the top
/// coefficient of q̃ is not a monomial or deg z̃ ≥ a·deg q̃.
pub fn h_series(ctx: &SpecialCase, q: &[PuiseuxPoly], z: &[PuiseuxPoly], terms: usize) -> Option<YSeries> {
    let dq = q.iter().rposition(|c| !c.is_zero())?;
    let (qm, qc) = q[dq].as_single_term()?;
    let mut base = vec![PuiseuxPoly::one()];
    for _ in 0..ctx.a {
        base = y_mul(&base, q);
    }
    let n = base.len() - 1;
    if z.iter().rposition(|c| !c.is_zero()).is_some_and(|dz| dz >= n) {
        return None;
    }
    for (k, zk) in z.iter().enumerate() {
        base[k] = &base[k] + zk;
    }
    let top = ctx.b * dq as i64;
    let mut out = vec![PuiseuxPoly::zero(); terms];
    for (j, ej) in ctx.e.iter().enumerate() {
        if ej.is_zero() {
            continue;
        }
        let shift = j * dq;
        if shift >= terms {
            continue;
        }
        let c = Rational::new((ctx.b - j as i64).into(), ctx.a.into());
        let part = expand_power(&base, &c, mono_power(&qc, &qm, ctx.b - j as i64), terms - shift)?;
        for (k, coeff) in part.coeffs.iter().enumerate() {
            out[k + shift] = &out[k + shift] + &coeff.scale(ej);
        }
    }
    Some(YSeries { top, coeffs: out })
}

/// Σ_{i=0}^{a} ((a+b)/a·i − j) F_i B_{j−i}, where B(k) is the coefficient of y^k.
pub fn recurrence_check<B>(f: &[PuiseuxPoly], bcoef: B, a: i64, b: i64, j: i64) -> PuiseuxPoly
where
    B: Fn(i64) -> PuiseuxPoly,
{
    let ab = Rational::new((a + b).into(), a.into());
    let mut acc = PuiseuxPoly::zero();
    for i in 0..=a {
        let Some(fi) = f.get(i as usize) else { continue };
        if fi.is_zero() {
            continue;
        }
        let c = &ab * int(i) - int(j);
        acc = &acc + &(fi * &bcoef(j - i)).scale(&c);
    }
    acc
}
