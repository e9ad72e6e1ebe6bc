//! The decreasing-automorphism walk: y ↦ y + α x^{−u/v} along the right-hand
//! edges of N⁰(F), tracking the vertices of F, G and the inner polynomial Z
//! until (⋆_j) fails.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::rational::{exp_to_rat, int, lcm_i64};
use crate::exactalg::{jacobian, AlgError, Exp, PuiseuxPoly, Rational, UPoly};
use crate::genfactory::{f_generator, GenError, QTuple};
use crate::grading::{leading_form, w_deg, Direction, GradingError};
use crate::polygeom::{
    en_vertex, in_l_v, n0, rect_membership, render_svg, ConvexPolygon, GeomError, RatPoint, RectMembership, SvgItem,
};

pub const DEFAULT_MAX_STEPS: usize = 500;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WalkError {
    #[error("{0}")]
    Precondition(String),
    #[error("{0} is not a vertex of N⁰(F)")]
    NotAVertex(RatPoint),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

/// c·x^{pref}·Π (x^{u/v}y − α)^{mult}·remnant, with T = x^{u/v}y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredLeadingForm {
    pub w: Direction,
    pub c: Rational,
    pub x_prefactor_exp: Rational,
    pub roots: Vec<(Rational, usize)>,
    pub unfactored: Option<UPoly>,
    /// The leading form as a polynomial in T.
    pub t_poly: UPoly,
}

impl FactoredLeadingForm {
    pub fn multiplicity(&self, alpha: &Rational) -> usize {
        self.roots.iter().find(|(r, _)| r == alpha).map_or(0, |(_, k)| *k)
    }
}

impl fmt::Display for FactoredLeadingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, u) = (self.w.u(), -self.w.v());
        let t = if u == 0 { "y".to_string() } else { format!("x^({u}/{v})*y") };
        write!(f, "{}*x^({})", self.c, self.x_prefactor_exp)?;
        for (a, k) in &self.roots {
            match a.cmp(&Rational::zero()) {
                std::cmp::Ordering::Equal => write!(f, "*{t}^{k}")?,
                std::cmp::Ordering::Less => write!(f, "*({t} + {})^{k}", -a)?,
                std::cmp::Ordering::Greater => write!(f, "*({t} - {a})^{k}")?,
            }
        }
        if let Some(r) = &self.unfactored {
            write!(f, "*[{r}]")?;
        }
        Ok(())
    }
}

/// (v, −u) with v > 0, u ≥ 0 as the pair (u, v).
fn shift_params(w: Direction) -> Result<(i64, i64), WalkError> {
    let (v, u) = (w.u(), -w.v());
    if v <= 0 || u < 0 {
        return Err(WalkError::Precondition(format!("direction {w} is not of the form (v,−u) with v > 0, u ≥ 0")));
    }
    Ok((u, v))
}

/// The w-leading form written in T = x^{u/v}y and factored over ℚ.
pub fn factor_leading_form(f: &PuiseuxPoly, w: Direction) -> Result<FactoredLeadingForm, WalkError> {
    let (_, v) = shift_params(w)?;
    let lf = leading_form(f, w)?;
    let d = w_deg(f, w).expect("nonzero");
    let mut coeffs: Vec<Rational> = Vec::new();
    for (m, c) in lf.terms() {
        if !m.y.is_integer() || m.y < Exp::zero() {
            return Err(WalkError::Precondition(format!("y-exponent {} is not a nonnegative integer", m.y)));
        }
        let k = m.y.to_integer() as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] += c;
    }
    let t_poly = UPoly::new(coeffs);
    let c = t_poly.lead();
    let (roots, _) = t_poly.rational_roots();
    let mut known = UPoly::monomial(c.clone(), 0);
    for (r, k) in &roots {
        known = known.mul(&UPoly::linear(r).pow(*k as u32));
    }
    let (remnant, rest) = t_poly.divrem(&known);
    debug_assert!(rest.is_zero());
    Ok(FactoredLeadingForm {
        w,
        c,
        x_prefactor_exp: exp_to_rat(d) / int(v),
        roots,
        unfactored: (remnant.degree().unwrap_or(0) > 0).then_some(remnant),
        t_poly,
    })
}

fn primitive_normal(dx: &Rational, dy: &Rational) -> Result<Direction, WalkError> {
    // outward normal of a counterclockwise edge with direction (dx, dy)
    let l = dx.denom().lcm(dy.denom());
    let nx = dy * Rational::from_integer(l.clone());
    let ny = -dx * Rational::from_integer(l);
    let to_i = |r: &Rational| -> Result<i64, WalkError> {
        r.to_integer().try_into().map_err(|_| WalkError::Precondition("edge too long".into()))
    };
    Ok(Direction::primitive(to_i(&nx)?, to_i(&ny)?)?)
}

/// Outward normal of the edge vF–v′F whose neighbour edge at vF has the
/// counterclockwise-larger normal.
pub fn next_direction(f: &PuiseuxPoly, v_f: &RatPoint) -> Result<Direction, WalkError> {
    let poly = n0(f);
    next_direction_in(&poly, v_f)
}

pub fn next_direction_in(poly: &ConvexPolygon, v_f: &RatPoint) -> Result<Direction, WalkError> {
    let i = poly.index_of(v_f).ok_or_else(|| WalkError::NotAVertex(v_f.clone()))?;
    let vs = poly.vertices();
    match vs.len() {
        1 => Err(WalkError::Precondition("N⁰ is a single point".into())),
        2 => {
            let o = &vs[1 - i];
            let d = o.sub(v_f);
            let n = primitive_normal(&d.x, &d.y)?;
            if n.u() > 0 {
                Ok(n)
            } else {
                primitive_normal(&(-d.x), &(-d.y))
            }
        }
        _ => {
            let prev = poly.prev(i);
            let d = v_f.sub(prev);
            primitive_normal(&d.x, &d.y)
        }
    }
}

/// Vertex of the w-face with the smallest y.
pub fn lower_face_vertex(poly: &ConvexPolygon, w: Direction) -> RatPoint {
    poly.face(w.u(), w.v()).into_iter().next().expect("nonempty polygon")
}

/// (⋆): w·vZ < w·vF.
pub fn star_condition(w: Direction, v_z: &RatPoint, v_f: &RatPoint) -> bool {
    v_z.dot(w.u(), w.v()) < v_f.dot(w.u(), w.v())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// m ≤ n, EN vertex, the region ℒ_{(m,n)}.
    En,
    /// m ≥ n, EN vertex, the region below the diagonal through (m, n).
    EnMirror,
    /// x and y swapped, then the mirrored walk.
    Ne,
}

impl std::str::FromStr for Orientation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "en" => Ok(Orientation::En),
            "en-mirror" => Ok(Orientation::EnMirror),
            "ne" => Ok(Orientation::Ne),
            _ => Err(format!("unknown orientation {s:?} (en, en-mirror, ne)")),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::En => "en",
            Orientation::EnMirror => "en-mirror",
            Orientation::Ne => "ne",
        })
    }
}

/// A root taken at one step, with the data behind the choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootChoice {
    pub alpha: Rational,
    pub m: usize,
    pub n: usize,
    pub sum_m: usize,
    pub sum_n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkState {
    pub j: usize,
    pub f: PuiseuxPoly,
    pub g: PuiseuxPoly,
    pub z: PuiseuxPoly,
    pub p: i64,
    pub v_f: RatPoint,
    pub v_z: RatPoint,
    pub v_g: RatPoint,
    pub w: Direction,
    pub star_holds: bool,
    pub f_form: Option<FactoredLeadingForm>,
    pub z_form: Option<FactoredLeadingForm>,
    pub choice: Option<RootChoice>,
    pub notes: Vec<String>,
}

impl WalkState {
    /// deg_y(vZ)/deg_y(vF).
    pub fn ratio(&self) -> Rational {
        &self.v_z.y / &self.v_f.y
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkOutcome {
    /// Z = 0: nothing to walk.
    ZIsZero,
    StarFailedCase1,
    StarFailedCase2,
    RootIrrational { f: PuiseuxPoly, remnant: Option<UPoly> },
    MaxStepsExceeded,
    InvariantBreach(String),
}

impl fmt::Display for WalkOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkOutcome::ZIsZero => write!(f, "Z=0"),
            WalkOutcome::StarFailedCase1 => write!(f, "StarFailedCase1"),
            WalkOutcome::StarFailedCase2 => write!(f, "StarFailedCase2"),
            WalkOutcome::RootIrrational { .. } => write!(f, "RootIrrational"),
            WalkOutcome::MaxStepsExceeded => write!(f, "MaxStepsExceeded"),
            WalkOutcome::InvariantBreach(m) => write!(f, "InvariantBreach: {m}"),
        }
    }
}

/// deg_w F + deg_w G − deg_w(1,1), and what it is compared against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCertificate {
    pub w: Direction,
    pub deg_f: Rational,
    pub deg_g: Rational,
    pub deg_xy: Rational,
    pub value: Rational,
    /// [F_+^w, G_+^w] ≠ 0, so deg_w[F,G] equals `value`.
    pub leading_jacobian_nonzero: bool,
    /// deg_w [F,G] computed directly (None for [F,G] = 0).
    pub actual: Option<Rational>,
}

pub fn degree_certificate(f: &PuiseuxPoly, g: &PuiseuxPoly, w: Direction) -> Result<DegreeCertificate, WalkError> {
    let deg_f = exp_to_rat(w_deg(f, w).ok_or_else(|| WalkError::Precondition("F = 0".into()))?);
    let deg_g = exp_to_rat(w_deg(g, w).ok_or_else(|| WalkError::Precondition("G = 0".into()))?);
    let deg_xy = int(w.of_xy());
    let lj = leading_form(f, w)?.checked_jacobian(&leading_form(g, w)?)?;
    let actual = w_deg(&f.checked_jacobian(g)?, w).map(exp_to_rat);
    Ok(DegreeCertificate {
        w,
        value: &deg_f + &deg_g - &deg_xy,
        deg_f,
        deg_g,
        deg_xy,
        leading_jacobian_nonzero: !lj.is_zero(),
        actual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTrace {
    pub qt: QTuple,
    pub orientation: Orientation,
    /// Inputs were swapped (x ↔ y) before walking.
    pub swapped: bool,
    /// vZ lies in the region the walk argues against.
    pub hypothesis_holds: bool,
    pub states: Vec<WalkState>,
    pub outcome: WalkOutcome,
    pub certificate: Option<DegreeCertificate>,
}

/// Σ over the roots of `remnant` of their multiplicities in `z`.
fn mult_on_factor(z: &UPoly, remnant: &UPoly) -> usize {
    let mut g = z.clone();
    let mut count = 0;
    if g.is_zero() {
        return 0;
    }
    loop {
        let d = g.gcd(remnant);
        let k = d.degree().unwrap_or(0);
        if k == 0 {
            return count;
        }
        count += k;
        g = g.divrem(&d).0;
    }
}

/// Among the rational roots of F_+^w satisfying n_i·Σm ≤ Σn·m_i, the one
/// with the least n_i/m_i, ties going to the smallest α.
pub fn choose_root(ff: &FactoredLeadingForm, zf: Option<&FactoredLeadingForm>) -> Option<RootChoice> {
    let zpoly = zf.map(|z| z.t_poly.clone()).unwrap_or_else(UPoly::zero);
    let nmult = |a: &Rational| if zpoly.is_zero() { 0 } else { zpoly.multiplicity(a) };
    let sum_m = ff.t_poly.degree().unwrap_or(0);
    let irr_n = ff.unfactored.as_ref().map_or(0, |r| mult_on_factor(&zpoly, r));
    let sum_n: usize = ff.roots.iter().map(|(a, _)| nmult(a)).sum::<usize>() + irr_n;
    ff.roots
        .iter()
        .map(|(a, m)| RootChoice { alpha: a.clone(), m: *m, n: nmult(a), sum_m, sum_n })
        .filter(|c| c.n * c.sum_m <= c.sum_n * c.m)
        .min_by(|x, y| (x.n * y.m).cmp(&(y.n * x.m)).then(x.alpha.cmp(&y.alpha)))
}

fn max_steps_from_env() -> usize {
    std::env::var("JACPOLY_MAX_STEPS").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_STEPS)
}

fn hypothesis(orientation: Orientation, qt: &QTuple, v_z: &RatPoint) -> bool {
    let axis = v_z.y.is_zero() && v_z.x.is_positive();
    match orientation {
        Orientation::En => {
            axis || in_l_v(qt.a, qt.b, &RatPoint::int(qt.m, qt.n), v_z).unwrap_or(false)
        }
        _ => !v_z.y.is_negative() && &v_z.y * int(qt.m) < &v_z.x * int(qt.n),
    }
}

pub fn run_walk(f: &PuiseuxPoly, g: &PuiseuxPoly, qt: QTuple, orientation: Orientation) -> Result<WalkTrace, WalkError> {
    run_walk_capped(f, g, qt, orientation, max_steps_from_env())
}

pub fn run_walk_capped(
    f: &PuiseuxPoly,
    g: &PuiseuxPoly,
    qt: QTuple,
    orientation: Orientation,
    max_steps: usize,
) -> Result<WalkTrace, WalkError> {
    let QTuple { a, b, m, n } = qt;
    let ok = match orientation {
        Orientation::En | Orientation::Ne => m <= n,
        Orientation::EnMirror => m >= n,
    };
    if !ok {
        let need = if orientation == Orientation::EnMirror { "m ≥ n" } else { "m ≤ n" };
        return Err(WalkError::Precondition(format!("orientation {orientation} needs {need}, got ({m}, {n})")));
    }
    if rect_membership(f, m, n) == RectMembership::Neither {
        return Err(WalkError::Precondition(format!("F is not in R_{{{m},{n}}}")));
    }
    if (b * m) % a != 0 || (b * n) % a != 0 || rect_membership(g, b * m / a, b * n / a) == RectMembership::Neither {
        return Err(WalkError::Precondition(format!("G is not in R_{{bm/a,bn/a}} for (a,b) = ({a},{b})")));
    }
    let gen = f_generator(f, qt)?;
    let swapped = orientation == Orientation::Ne;
    let (f, g, z, qt) = if swapped {
        (f.swap_xy(), g.swap_xy(), gen.z.swap_xy(), QTuple { a, b, m: n, n: m })
    } else {
        (f.clone(), g.clone(), gen.z.clone(), qt)
    };
    let mut trace = WalkTrace {
        qt,
        orientation,
        swapped,
        hypothesis_holds: false,
        states: vec![],
        outcome: WalkOutcome::ZIsZero,
        certificate: None,
    };
    if z.is_zero() {
        return Ok(trace);
    }
    let mut v_f = en_vertex(&n0(&f)).expect("nonempty");
    let mut v_z = en_vertex(&n0(&z)).expect("nonempty");
    let mut v_g = en_vertex(&n0(&g)).expect("nonempty");
    trace.hypothesis_holds = hypothesis(orientation, &qt, &v_z);
    let (mut f, mut g, mut z, mut p) = (f, g, z, 1i64);
    let ba = Rational::new(b.into(), a.into());
    for j in 0.. {
        let w = next_direction(&f, &v_f)?;
        let star = star_condition(w, &v_z, &v_f);
        let mut st = WalkState {
            j,
            f: f.clone(),
            g: g.clone(),
            z: z.clone(),
            p,
            v_f: v_f.clone(),
            v_z: v_z.clone(),
            v_g: v_g.clone(),
            w,
            star_holds: star,
            f_form: None,
            z_form: None,
            choice: None,
            notes: vec![],
        };
        if v_g != v_f.scale(&ba) {
            trace.outcome = WalkOutcome::InvariantBreach(format!("vG = {v_g} is not (b/a)·vF = {}", v_f.scale(&ba)));
            trace.states.push(st);
            return Ok(trace);
        }
        if v_f.y.is_zero() || &v_z.y * int(a) >= &v_f.y * int(a - 1) {
            trace.outcome = WalkOutcome::InvariantBreach(format!(
                "deg_y(vZ)/deg_y(vF) = {}/{} is not below (a−1)/a",
                v_z.y, v_f.y
            ));
            trace.states.push(st);
            return Ok(trace);
        }
        if !star {
            let on_line = v_z.dot(w.u(), w.v()) == v_f.dot(w.u(), w.v());
            trace.outcome = if on_line { WalkOutcome::StarFailedCase1 } else { WalkOutcome::StarFailedCase2 };
            if on_line {
                trace.certificate = Some(degree_certificate(&f, &g, w)?);
            }
            trace.states.push(st);
            return Ok(trace);
        }
        if j >= max_steps {
            trace.outcome = WalkOutcome::MaxStepsExceeded;
            trace.states.push(st);
            return Ok(trace);
        }
        let ff = factor_leading_form(&f, w)?;
        let zf = factor_leading_form(&z, w)?;
        let ztop = zf.t_poly.degree().unwrap_or(0);
        if int(ztop as i64) != v_z.y {
            st.notes.push(format!("Z_+^w has y-degree {ztop}, vZ has {}", v_z.y));
        }
        let choice = choose_root(&ff, Some(&zf));
        st.f_form = Some(ff.clone());
        st.z_form = Some(zf);
        let Some(choice) = choice else {
            trace.outcome = WalkOutcome::RootIrrational { f: f.clone(), remnant: ff.unfactored.clone() };
            trace.states.push(st);
            return Ok(trace);
        };
        st.choice = Some(choice.clone());
        trace.states.push(st);
        let (u, v) = shift_params(w)?;
        f = f.shift_substitute(&choice.alpha, u, v)?;
        g = g.shift_substitute(&choice.alpha, u, v)?;
        z = z.shift_substitute(&choice.alpha, u, v)?;
        p = lcm_i64(v, p);
        v_f = lower_face_vertex(&n0(&f), w);
        v_z = lower_face_vertex(&n0(&z), w);
        v_g = lower_face_vertex(&n0(&g), w);
    }
    unreachable!()
}

/// Applies the inverse shifts of a trace, last first, to its final F, G, Z.
pub fn undo_walk(trace: &WalkTrace) -> Result<(PuiseuxPoly, PuiseuxPoly, PuiseuxPoly), WalkError> {
    let Some(last) = trace.states.last() else {
        return Err(WalkError::Precondition("empty trace".into()));
    };
    let (mut f, mut g, mut z) = (last.f.clone(), last.g.clone(), last.z.clone());
    for st in trace.states.iter().rev() {
        let Some(c) = &st.choice else { continue };
        if st.j + 1 >= trace.states.len() {
            continue;
        }
        let (u, v) = shift_params(st.w)?;
        let neg = -c.alpha.clone();
        f = f.shift_substitute(&neg, u, v)?;
        g = g.shift_substitute(&neg, u, v)?;
        z = z.shift_substitute(&neg, u, v)?;
    }
    Ok((f, g, z))
}

/// One SVG panel per state: N⁰(F), N⁰(Z), vF, vZ and the line through vF normal to w.
pub fn trace_svg(trace: &WalkTrace) -> String {
    let mut items = Vec::new();
    for st in &trace.states {
        items.push(SvgItem::Frame(format!("j = {}, w = {}, (⋆) {}", st.j, st.w, if st.star_holds { "holds" } else { "fails" })));
        items.push(SvgItem::Polygon { poly: n0(&st.f), label: "N⁰(F)".into(), color: "#1f77b4".into() });
        items.push(SvgItem::Polygon { poly: n0(&st.z), label: "N⁰(Z)".into(), color: "#d62728".into() });
        items.push(SvgItem::Point { p: st.v_f.clone(), label: "vF".into() });
        items.push(SvgItem::Point { p: st.v_z.clone(), label: "vZ".into() });
        // a segment of Line_w(vF): direction (−w.v, w.u)
        let dir = RatPoint::int(-st.w.v(), st.w.u());
        let s = Rational::one() / int(st.w.u().abs().max(st.w.v().abs()).max(1));
        let (p0, p1) = (st.v_f.sub(&dir.scale(&(&s * int(2)))), st.v_f.add(&dir.scale(&(&s * int(2)))));
        items.push(SvgItem::Line { from: p0, to: p1, label: String::new() });
    }
    render_svg(&items)
}

/// The two stated edges of the big example and what they certify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCertificate {
    pub w_f: Direction,
    pub w_z: Direction,
    pub c: RatPoint,
    pub c_on_f_edge: bool,
    pub c_on_z_edge: bool,
    /// deg_w(C) + deg_w((b/a)C) − deg_w((1,1)) with C on the F-edge.
    pub value: Rational,
}

fn on_segment(p: &RatPoint, a: &RatPoint, b: &RatPoint) -> bool {
    ConvexPolygon::hull(&[a.clone(), b.clone()]).contains(p)
}

fn lower_right_normal(p: &RatPoint, q: &RatPoint) -> Result<Direction, WalkError> {
    // the edge runs upward from p to q on the right-hand side of the polygon
    let d = q.sub(p);
    primitive_normal(&d.x, &d.y)
}

/// Geometry-only check for Case 1 at a pair of edges of N⁰(F) and N⁰(Z).
pub fn edge_certificate(a: i64, b: i64, f_edge: (&RatPoint, &RatPoint), z_edge: (&RatPoint, &RatPoint)) -> Result<EdgeCertificate, WalkError> {
    let w_f = lower_right_normal(f_edge.0, f_edge.1)?;
    let w_z = lower_right_normal(z_edge.0, z_edge.1)?;
    let t = Rational::new(a.into(), (a + b).into());
    let c = RatPoint::new(t.clone(), t);
    let ba = Rational::new(b.into(), a.into());
    let deg_f = f_edge.0.dot(w_f.u(), w_f.v());
    let value = &deg_f + &deg_f * &ba - int(w_f.of_xy());
    Ok(EdgeCertificate {
        w_f,
        w_z,
        c_on_f_edge: on_segment(&c, f_edge.0, f_edge.1),
        c_on_z_edge: on_segment(&c, z_edge.0, z_edge.1),
        c,
        value,
    })
}

/// Whether [F,G] has the expected leading-form Jacobian at w (used by reports).
pub fn leading_forms_commute(f: &PuiseuxPoly, g: &PuiseuxPoly, w: Direction) -> Result<bool, WalkError> {
    Ok(jacobian(&leading_form(f, w)?, &leading_form(g, w)?).is_zero())
}
