//! Pre-generators, inner and innermost polynomials, functional decomposition
//! f = α(W) and the membership certificates built on them.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactalg::rational::{divisors, exp_to_rat};
use crate::exactalg::{exp, int, AlgError, Exp, Mono, PuiseuxPoly, Rational, Ring, UPoly};
use crate::grading::{homogeneous_part, w_deg, Direction};
use crate::polygeom::{
    check_q_tuple, en_vertex, n0, ne_vertex, region_r_contains, ConvexPolygon, GeomError, RatPoint, RegionR,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("structural failure: {0}")]
    Structural(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

impl From<GeomError> for GenError {
    fn from(e: GeomError) -> Self {
        GenError::Precondition(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QTuple {
    pub a: i64,
    pub b: i64,
    pub m: i64,
    pub n: i64,
}

impl QTuple {
    pub fn new(a: i64, b: i64, m: i64, n: i64) -> Result<QTuple, GenError> {
        check_q_tuple(a, b, m, n)?;
        Ok(QTuple { a, b, m, n })
    }

    /// Reads (m, n) off the corner of F.
    pub fn for_poly(f: &PuiseuxPoly, a: i64, b: i64) -> Result<QTuple, GenError> {
        let (m, n) = plain_corner(f)?;
        QTuple::new(a, b, m, n)
    }
}

fn plain_corner(f: &PuiseuxPoly) -> Result<(i64, i64), GenError> {
    let (Some(mx), Some(my)) = (f.max_x(), f.max_y()) else {
        return Err(GenError::Precondition("zero polynomial has no corner".into()));
    };
    if !mx.is_integer() || !my.is_integer() {
        return Err(GenError::Precondition(format!("corner ({mx}, {my}) is not a lattice point")));
    }
    Ok((mx.to_integer(), my.to_integer()))
}

/// Sign of A + B√2.
fn sign_sqrt2(a: &Rational, b: &Rational) -> Ordering {
    let z = Rational::zero();
    match (a.cmp(&z), b.cmp(&z)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (sa, _) => {
            let lhs = a * a;
            let rhs = b * b * int(2);
            // |A| vs √2|B| decides, with A's sign
            match lhs.cmp(&rhs) {
                Ordering::Greater => sa,
                Ordering::Less => sa.reverse(),
                Ordering::Equal => unreachable!("√2 is irrational"),
            }
        }
    }
}

/// Compares x + √2·y exactly.
pub fn corner_cmp(p: &Mono, q: &Mono) -> Ordering {
    sign_sqrt2(&exp_to_rat(p.x - q.x), &exp_to_rat(p.y - q.y))
}

/// Grid points of [0, X] × [0, Y] with the given exponent denominators,
/// in decreasing x + √2·y order.
fn corner_grid(x_max: Exp, y_max: Exp, xden: i64, yden: i64) -> Vec<Mono> {
    let nx = (x_max * xden).to_integer();
    let ny = (y_max * yden).to_integer();
    let mut pts: Vec<Mono> = (0..=nx)
        .flat_map(|i| (0..=ny).map(move |j| Mono::new(exp(i, xden), exp(j, yden))))
        .collect();
    pts.sort_by(|p, q| corner_cmp(q, p));
    pts
}

/// Lattice points of 𝒩′ = Rect_{m/a,n/a}, largest first.
pub fn corner_order(m: i64, n: i64, a: i64) -> Result<Vec<(i64, i64)>, GenError> {
    if a <= 0 || m < 0 || n < 0 || m % a != 0 || n % a != 0 {
        return Err(GenError::Precondition(format!("a = {a} must divide m = {m} and n = {n}")));
    }
    Ok(corner_grid(Exp::from_integer(m / a), Exp::from_integer(n / a), 1, 1)
        .into_iter()
        .map(|p| (p.x.to_integer(), p.y.to_integer()))
        .collect())
}

/// The a-th approximate root of f by corner-order recursion: the unique Q
/// supported in Rect_{M/a,N/a} with corner coefficient 1 such that f − Q^a
/// has no terms in 𝒩″. Needs corner coefficient 1 and exponents ≥ 0.
pub fn approx_root(f: &PuiseuxPoly, a: u32) -> Result<PuiseuxPoly, GenError> {
    let (Some(mx), Some(my)) = (f.max_x(), f.max_y()) else {
        return Err(GenError::Precondition("approximate root of zero".into()));
    };
    if f.min_x().unwrap() < Exp::zero() || f.min_y().unwrap() < Exp::zero() {
        return Err(GenError::Precondition("negative exponents".into()));
    }
    let corner = Mono::new(mx, my);
    if !f.coeff(&corner).is_one() {
        return Err(GenError::Precondition(format!("corner coefficient of {f} is not 1")));
    }
    let ring = f.minimal_ring()?;
    let ai = Exp::from_integer(a as i64);
    let z1 = Mono::new(mx / ai, my / ai);
    if !ring.admits(&z1) {
        return Err(GenError::Precondition(format!("a = {a} does not divide the corner ({mx}, {my})")));
    }
    let pts = corner_grid(z1.x, z1.y, ring.xden, ring.yden);
    let ar = int(a as i64);
    let mut q = PuiseuxPoly::term(Rational::one(), z1).with_ring(ring)?;
    let shift = z1.scaled(ai - 1);
    for zk in &pts[1..] {
        let t = shift.mul(zk);
        let cur = q.pow(a).coeff(&t);
        let qk = (f.coeff(&t) - cur) / &ar;
        if !qk.is_zero() {
            q = q.checked_add(&PuiseuxPoly::term(qk, *zk))?;
        }
    }
    Ok(q)
}

/// Corner (m, n) of F ∈ R̄_{m,n} with corner coefficient 1, and whether
/// F is in R_{m,n} proper.
fn check_corner_one(f: &PuiseuxPoly, a: i64) -> Result<(i64, i64, bool), GenError> {
    let (m, n) = plain_corner(f)?;
    if f.minimal_ring()? != Ring::PLAIN {
        return Err(GenError::Precondition("F must be an ordinary polynomial".into()));
    }
    if !f.coeff_int(m, n).is_one() {
        return Err(GenError::Precondition(format!("[x^{m} y^{n}]F is not 1")));
    }
    if a < 1 || m % a != 0 || n % a != 0 {
        return Err(GenError::Precondition(format!("a = {a} must divide m = {m} and n = {n}")));
    }
    Ok((m, n, n0(f) == ConvexPolygon::rect(m, n)))
}

/// Q with F − Q^a supported off 𝒩″. F may be any polynomial with
/// N⁰(F) ⊆ Rect_{m,n} and [x^m y^n]F = 1, not only F ∈ R_{m,n}.
pub fn pre_generator(f: &PuiseuxPoly, a: i64) -> Result<PuiseuxPoly, GenError> {
    check_corner_one(f, a)?;
    approx_root(f, a as u32)
}

/// ζ(F) = F − Q^a.
pub fn inner_poly(f: &PuiseuxPoly, a: i64) -> Result<PuiseuxPoly, GenError> {
    let q = pre_generator(f, a)?;
    Ok(f.checked_sub(&q.pow(a as u32))?)
}

/// Solves f = W^k + a_{k−1}W^{k−1} + … + a_0 assuming W has corner
/// coefficient 1; None unless the residual vanishes.
pub fn solve_alpha(f: &PuiseuxPoly, w: &PuiseuxPoly, k: u32) -> Option<UPoly> {
    let wc = Mono::new(w.max_x()?, w.max_y()?);
    if !w.coeff(&wc).is_one() {
        return None;
    }
    let powers: Vec<PuiseuxPoly> = (0..=k).map(|j| w.pow(j)).collect();
    let mut coeffs = vec![Rational::zero(); k as usize + 1];
    coeffs[k as usize] = Rational::one();
    let mut rest = f.checked_sub(&powers[k as usize]).ok()?;
    for j in (0..k).rev() {
        let c = rest.coeff(&wc.scaled(Exp::from_integer(j as i64)));
        if !c.is_zero() {
            rest = rest.checked_sub(&powers[j as usize].scale(&c)).ok()?;
        }
        coeffs[j as usize] = c;
    }
    rest.is_zero().then(|| UPoly::new(coeffs))
}

/// f = scale · α(W) with α ∈ 𝕋 monic and W principal over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub w: PuiseuxPoly,
    pub alpha: UPoly,
    pub scale: Rational,
}

impl Decomposition {
    pub fn degree(&self) -> usize {
        self.alpha.degree().unwrap_or(0)
    }

    pub fn compose(&self) -> PuiseuxPoly {
        self.alpha.compose(&self.w).scale(&self.scale)
    }
}

fn corner_gcd(f: &PuiseuxPoly) -> Option<(Mono, i64)> {
    let mx = f.max_x()?;
    let my = f.max_y()?;
    let ring = f.minimal_ring().ok()?;
    let gx = (mx * ring.xden).to_integer();
    let gy = (my * ring.yden).to_integer();
    Some((Mono::new(mx, my), gx.gcd(&gy)))
}

/// One level: the degrees δ ≥ 2 for which f/c = α(W) with deg α = δ.
fn one_level(f: &PuiseuxPoly, delta: i64) -> Option<(PuiseuxPoly, UPoly)> {
    let w = approx_root(f, delta as u32).ok()?;
    let alpha = solve_alpha(f, &w, delta as u32)?;
    Some((w, alpha))
}

fn normalized(f: &PuiseuxPoly) -> Option<(PuiseuxPoly, Rational)> {
    let (corner, _) = corner_gcd(f)?;
    let c = f.coeff(&corner);
    if c.is_zero() || f.min_x()? < Exp::zero() || f.min_y()? < Exp::zero() {
        return None;
    }
    Some((f.scale(&(Rational::one() / &c)), c))
}

/// Every δ ≥ 2 for which a one-step decomposition of f exists.
pub fn decomposition_degrees(f: &PuiseuxPoly) -> Vec<i64> {
    let Some((fh, _)) = normalized(f) else { return vec![] };
    let Some((_, g)) = corner_gcd(&fh) else { return vec![] };
    if g == 0 {
        return vec![];
    }
    divisors(g).into_iter().filter(|&d| d >= 2 && one_level(&fh, d).is_some()).collect()
}

/// Largest δ first, then recurse on W. Falls back to (f, z) when the
/// corner coefficient vanishes or nothing decomposes.
pub fn decompose_univariate(f: &PuiseuxPoly) -> Decomposition {
    let trivial = || Decomposition { w: f.clone(), alpha: UPoly::from_ints(&[0, 1]), scale: Rational::one() };
    let Some((fh, c)) = normalized(f) else { return trivial() };
    if fh.is_constant() {
        return trivial();
    }
    let (_, g) = corner_gcd(&fh).expect("nonzero");
    for d in divisors(g).into_iter().rev().filter(|&d| d >= 2) {
        if let Some((w, alpha)) = one_level(&fh, d) {
            let inner = decompose_univariate(&w);
            debug_assert!(inner.scale.is_one());
            return Decomposition { w: inner.w, alpha: alpha.compose_upoly(&inner.alpha), scale: c };
        }
    }
    Decomposition { w: fh, alpha: UPoly::from_ints(&[0, 1]), scale: c }
}

pub fn is_tschirnhausen(alpha: &UPoly) -> bool {
    match alpha.degree() {
        Some(k) if k >= 1 => alpha.lead().is_one() && alpha.coeff(k - 1).is_zero(),
        _ => false,
    }
}

/// (α′, W′) with α′(z) = α(z + s), W′ = W − s and α′ ∈ 𝕋.
pub fn tschirnhausen_normalize(alpha: &UPoly, w: &PuiseuxPoly) -> Result<(UPoly, PuiseuxPoly), GenError> {
    let k = alpha.degree().ok_or_else(|| GenError::Precondition("α = 0".into()))?;
    if k == 0 || !alpha.lead().is_one() {
        return Err(GenError::Precondition(format!("α = {alpha} is not monic of positive degree")));
    }
    let s = -alpha.coeff(k - 1) / int(k as i64);
    let w2 = w.checked_sub(&PuiseuxPoly::constant(s.clone()))?;
    Ok((alpha.shift(&s), w2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorResult {
    pub qt: QTuple,
    /// N⁰(F) is the full rectangle (otherwise only contained in it).
    pub in_r: bool,
    pub q: PuiseuxPoly,
    pub delta: i64,
    pub beta: UPoly,
    pub wf: PuiseuxPoly,
    pub inner: PuiseuxPoly,
    pub e: Vec<Rational>,
    pub z: PuiseuxPoly,
    /// δ values other than the chosen one that also decompose Q.
    pub other_deltas: Vec<i64>,
}

pub fn f_generator(f: &PuiseuxPoly, qt: QTuple) -> Result<GeneratorResult, GenError> {
    let (m, n, in_r) = check_corner_one(f, qt.a)?;
    if (m, n) != (qt.m, qt.n) {
        return Err(GenError::Precondition(format!("F has corner ({m}, {n}), not ({}, {})", qt.m, qt.n)));
    }
    let a = qt.a;
    let q = approx_root(f, a as u32)?;
    let dec = decompose_univariate(&q);
    let delta = dec.degree() as i64;
    if (m / a) % delta != 0 || (n / a) % delta != 0 {
        return Err(GenError::Structural(format!("δ = {delta} does not divide m/a and n/a")));
    }
    let (mw, nw) = (m / (a * delta), n / (a * delta));
    let shape_ok = if in_r { n0(&dec.w) == ConvexPolygon::rect(mw, nw) } else { n0(&dec.w).is_subset_of(&ConvexPolygon::rect(mw, nw)) };
    if !shape_ok || !dec.w.coeff_int(mw, nw).is_one() {
        return Err(GenError::Structural(format!("N⁰(W_F) is not Rect_{{{mw},{nw}}} for W_F = {}", dec.w)));
    }
    let inner = f.checked_sub(&q.pow(a as u32))?;
    let count = ((a - 1) * delta) as usize;
    let mut e = vec![Rational::zero(); count];
    let mut z = inner.clone();
    for j in (0..count).rev() {
        let c = z.coeff_int(j as i64 * mw, j as i64 * nw);
        if !c.is_zero() {
            z = z.checked_sub(&dec.w.pow(j as u32).scale(&c))?;
        }
        e[j] = c;
    }
    let other_deltas = decomposition_degrees(&q).into_iter().filter(|&d| d != delta).collect();
    Ok(GeneratorResult { qt, in_r, q, delta, beta: dec.alpha, wf: dec.w, inner, e, z, other_deltas })
}

/// Certificate for the EN/NE statements about N⁰(Z) and N⁰(ζ(F)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexChecks {
    pub en: RatPoint,
    pub ne: RatPoint,
    pub en_equals_ne: bool,
    pub en_in_region: bool,
    pub ne_in_region: bool,
    pub same_ratio: bool,
    pub inside_own_rect: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerVertexReport {
    /// Axes were swapped because m > n.
    pub swapped: bool,
    pub z_is_zero: bool,
    pub z: Option<VertexChecks>,
    pub inner: Option<VertexChecks>,
}

impl InnerVertexReport {
    pub fn summary(&self) -> String {
        if self.z_is_zero {
            return "degenerate: Z=0, theorem satisfied".into();
        }
        let z = self.z.as_ref().expect("nonzero Z");
        let mut flags = Vec::new();
        if !z.en_in_region {
            flags.push("EN vertex of Z outside region");
        }
        if !z.en_equals_ne {
            flags.push("EN != NE");
        }
        if flags.is_empty() {
            "all clauses hold".into()
        } else {
            flags.join("; ")
        }
    }
}

fn vertex_checks(p: &PuiseuxPoly, region: &RegionR) -> Option<VertexChecks> {
    if p.is_zero() {
        return None;
    }
    let poly = n0(p);
    let en = en_vertex(&poly)?;
    let ne = ne_vertex(&poly)?;
    let same_ratio = &en.y * int(region.m) == &en.x * int(region.n);
    let inside_own_rect = poly.is_subset_of(&ConvexPolygon::rect_rat(&ne.x.clone().max(en.x.clone()), &ne.y.clone().max(en.y.clone())));
    Some(VertexChecks {
        en_in_region: region_r_contains(region, &en),
        ne_in_region: region_r_contains(region, &ne),
        en_equals_ne: en == ne,
        same_ratio,
        inside_own_rect,
        en,
        ne,
    })
}

pub fn inner_vertex_report(f: &PuiseuxPoly, qt: QTuple) -> Result<InnerVertexReport, GenError> {
    let swapped = qt.m > qt.n;
    let (f, qt) = if swapped { (f.swap_xy(), QTuple { m: qt.n, n: qt.m, ..qt }) } else { (f.clone(), qt) };
    let g = f_generator(&f, qt)?;
    let region = RegionR::new(qt.a, qt.b, qt.m, qt.n)?;
    Ok(InnerVertexReport {
        swapped,
        z_is_zero: g.z.is_zero(),
        z: vertex_checks(&g.z, &region),
        inner: vertex_checks(&g.inner, &region),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourthBullet {
    Holds,
    Fails,
    InnerVanishes,
    NotChecked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TReport {
    pub corner_and_rect: bool,
    pub top_is_corner: bool,
    pub next_vanishes: bool,
    pub inner_top: FourthBullet,
    pub inner: Option<PuiseuxPoly>,
    pub note: Option<String>,
}

impl TReport {
    pub fn member(&self) -> bool {
        self.corner_and_rect && self.top_is_corner && self.next_vanishes && self.inner_top == FourthBullet::Holds
    }
}

/// The four conditions defining T_{m,n,a} (T̄ when x-exponents are
/// fractional). The region in the last condition needs b as well.
pub fn certify_t_membership(f: &PuiseuxPoly, m: i64, n: i64, a: i64, b: i64) -> TReport {
    let w = Direction::new(0, 1).expect("(0,1)");
    let (me, ne_) = (Exp::from_integer(m), Exp::from_integer(n));
    let corner = Mono::new(me, ne_);
    let nonneg = f.min_x().is_none_or(|x| x >= Exp::zero()) && f.min_y().is_none_or(|y| y >= Exp::zero());
    let ints_y = f.monos().all(|mo| mo.y.is_integer());
    let corner_and_rect = nonneg
        && ints_y
        && !f.coeff(&corner).is_zero()
        && f.max_x().is_some_and(|x| x <= me)
        && f.max_y().is_some_and(|y| y <= ne_);
    let top = homogeneous_part(f, w, ne_);
    let top_is_corner = top == PuiseuxPoly::term(Rational::one(), corner);
    let next_vanishes = homogeneous_part(f, w, ne_ - 1).is_zero();
    let mut report = TReport { corner_and_rect, top_is_corner, next_vanishes, inner_top: FourthBullet::NotChecked, inner: None, note: None };
    if !(corner_and_rect && top_is_corner) {
        report.note = Some("inner polynomial needs corner coefficient 1 inside the rectangle".into());
        return report;
    }
    if a < 1 || m % a != 0 || n % a != 0 {
        report.note = Some(format!("a = {a} does not divide m = {m} and n = {n}"));
        return report;
    }
    let inner = match approx_root(f, a as u32).and_then(|q| Ok(f.checked_sub(&q.pow(a as u32))?)) {
        Ok(z) => z,
        Err(e) => {
            report.note = Some(e.to_string());
            return report;
        }
    };
    report.inner_top = if inner.is_zero() {
        FourthBullet::InnerVanishes
    } else {
        let s = w_deg(&inner, w).expect("nonzero");
        let zs = homogeneous_part(&inner, w, s);
        match (zs.as_single_term(), RegionR::new(a, b, m, n)) {
            (Some((mono, _)), Ok(region)) => {
                if region_r_contains(&region, &RatPoint::from_mono(&mono)) {
                    FourthBullet::Holds
                } else {
                    FourthBullet::Fails
                }
            }
            (None, _) => FourthBullet::Fails,
            (Some(_), Err(e)) => {
                report.note = Some(e.to_string());
                FourthBullet::NotChecked
            }
        }
    };
    report.inner = Some(inner);
    report
}
