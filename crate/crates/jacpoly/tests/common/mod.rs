#![allow(dead_code)]

use jacpoly::exactalg::{exp, int, rat, Exp, Mono, PuiseuxPoly, Rational, UPoly};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(s: &str) -> PuiseuxPoly {
    jacpoly::exactalg::parse(s).unwrap()
}

pub fn small(r: &mut impl Rng) -> i64 {
    let c = r.gen_range(1..=4);
    if r.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// Integer polynomial with support in [0,mx]×[0,my], each term present with probability `dens`.
pub fn rand_poly(r: &mut impl Rng, mx: i64, my: i64, dens: f64) -> PuiseuxPoly {
    let mut f = PuiseuxPoly::zero();
    for i in 0..=mx {
        for j in 0..=my {
            if r.gen_bool(dens) {
                f = &f + &PuiseuxPoly::term(int(small(r)), Mono::int(i, j));
            }
        }
    }
    f
}

pub fn rand_nonzero(r: &mut impl Rng, mx: i64, my: i64, dens: f64) -> PuiseuxPoly {
    loop {
        let f = rand_poly(r, mx, my, dens);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn rand_upoly(r: &mut impl Rng, deg: usize) -> UPoly {
    let mut c: Vec<Rational> = (0..=deg).map(|_| if r.gen_bool(0.6) { int(small(r)) } else { int(0) }).collect();
    c[deg] = int(small(r));
    UPoly::new(c)
}

/// F ∈ R_{m,n}: N⁰(F) is the full rectangle and the corner coefficient is 1.
pub fn rand_in_r(r: &mut impl Rng, m: i64, n: i64) -> PuiseuxPoly {
    let mut f = rand_poly(r, m, n, 0.35).filter_terms(|mo, _| mo.x != exp(m, 1) || mo.y != exp(n, 1));
    for (i, j) in [(m, 0), (0, n)] {
        if f.coeff_int(i, j).is_zero() {
            f = &f + &PuiseuxPoly::term(int(small(r)), Mono::int(i, j));
        }
    }
    &f + &PuiseuxPoly::term(Rational::one(), Mono::int(m, n))
}

/// f(X, Y) for a polynomial f with nonnegative integer exponents.
pub fn substitute(f: &PuiseuxPoly, x: &PuiseuxPoly, y: &PuiseuxPoly) -> PuiseuxPoly {
    let mut out = PuiseuxPoly::zero();
    for (m, c) in f.terms() {
        let (i, j) = (m.x.to_integer() as u32, m.y.to_integer() as u32);
        out = &out + &(&x.pow(i) * &y.pow(j)).scale(c);
    }
    out
}

fn rand_univariate(r: &mut impl Rng, var: &PuiseuxPoly, maxdeg: usize) -> PuiseuxPoly {
    let d = r.gen_range(1..=maxdeg);
    rand_upoly(r, d).compose(var).filter_terms(|m, _| !m.is_one())
}

/// A composite of 1..=3 elementary maps x ↦ x + p(y), y ↦ y + q(x), as the images of (x, y).
pub fn rand_automorphism(r: &mut impl Rng, maxdeg: usize) -> (PuiseuxPoly, PuiseuxPoly) {
    let (mut fx, mut fy) = (PuiseuxPoly::x(), PuiseuxPoly::y());
    for _ in 0..r.gen_range(1..=3) {
        if r.gen_bool(0.5) {
            let pp = rand_univariate(r, &PuiseuxPoly::y(), maxdeg);
            let nx = &PuiseuxPoly::x() + &pp;
            (fx, fy) = (substitute(&fx, &nx, &PuiseuxPoly::y()), substitute(&fy, &nx, &PuiseuxPoly::y()));
        } else {
            let qq = rand_univariate(r, &PuiseuxPoly::x(), maxdeg);
            let ny = &PuiseuxPoly::y() + &qq;
            (fx, fy) = (substitute(&fx, &PuiseuxPoly::x(), &ny), substitute(&fy, &PuiseuxPoly::x(), &ny));
        }
    }
    (fx, fy)
}

fn binom(c: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (c - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// Q = x^{m/a} y^{n/a} (1 + F̂)^{1/a} by the binomial series in x⁻¹, y⁻¹, where
/// F = x^m y^n (1 + F̂); only the part with nonnegative exponents is kept.
pub fn binomial_root(f: &PuiseuxPoly, a: i64, m: i64, n: i64) -> PuiseuxPoly {
    let (mx, my) = (Exp::from_integer(m / a), Exp::from_integer(n / a));
    let keep = |mo: &Mono, _: &Rational| mo.x >= -mx && mo.y >= -my;
    let mut fhat = PuiseuxPoly::zero();
    for (mo, c) in f.terms() {
        if mo.x == Exp::from_integer(m) && mo.y == Exp::from_integer(n) {
            continue;
        }
        fhat = &fhat + &PuiseuxPoly::term(c.clone(), Mono::new(mo.x - m, mo.y - n));
    }
    let q = rat(1, a);
    let mut sum = PuiseuxPoly::one();
    let mut pw = PuiseuxPoly::one();
    let mut k = 1;
    loop {
        pw = (&pw * &fhat).filter_terms(keep);
        if pw.is_zero() {
            break;
        }
        sum = &sum + &pw.scale(&binom(&q, k));
        k += 1;
    }
    (&sum * &PuiseuxPoly::term(Rational::one(), Mono::new(mx, my))).filter_terms(|mo, _| mo.x >= Exp::zero() && mo.y >= Exp::zero())
}
