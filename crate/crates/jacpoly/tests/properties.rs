mod common;

use common::binomial_root;
use jacpoly::exactalg::{int, jacobian, parse, rat, Exp, Mono, PuiseuxPoly, Rational, UPoly};
use jacpoly::genfactory::{decompose_univariate, f_generator, inner_poly, pre_generator, solve_alpha, QTuple};
use jacpoly::grading::{leading_form, w_deg, Direction};
use jacpoly::magnus::{expansion_degrees_ok, frac_power_expand, magnus_solve, MagnusContext};
use jacpoly::polygeom::{
    n0, n_prime_regions, newton_polygon, pick_area, support, ConvexPolygon, RatPoint, RegionR,
};
use jacpoly::walker::{run_walk_capped, undo_walk, Orientation};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn build(terms: Vec<(i64, i64, i64)>) -> PuiseuxPoly {
    terms
        .into_iter()
        .fold(PuiseuxPoly::zero(), |acc, (i, j, c)| &acc + &PuiseuxPoly::term(int(c), Mono::int(i, j)))
}

fn poly(mx: i64, my: i64, max_terms: usize) -> impl Strategy<Value = PuiseuxPoly> {
    prop::collection::vec((0..=mx, 0..=my, -5i64..=5), 0..=max_terms).prop_map(build)
}

fn nonzero(mx: i64, my: i64, max_terms: usize) -> impl Strategy<Value = PuiseuxPoly> {
    poly(mx, my, max_terms).prop_filter("nonzero", |f| !f.is_zero())
}

fn direction() -> impl Strategy<Value = Direction> {
    (-3i64..=3, -3i64..=3).prop_filter_map("direction", |(u, v)| Direction::new(u, v).ok())
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// F ∈ R_{m,n}: full rectangle and corner coefficient 1.
fn in_r(m: i64, n: i64) -> impl Strategy<Value = PuiseuxPoly> {
    (poly(m, n, 8), 1i64..=3, 1i64..=3).prop_map(move |(f, cx, cy)| {
        let f = f.filter_terms(|mo, _| *mo != Mono::int(m, n) && *mo != Mono::int(m, 0) && *mo != Mono::int(0, n));
        let extra = build(vec![(m, n, 1), (m, 0, cx), (0, n, -cy)]);
        &f + &extra
    })
}

/// Either a plain F ∈ R_{4,4} or (W² + c)² + (lower terms) with W ∈ R_{1,1}, so that δ = 2 occurs.
fn generator_input() -> impl Strategy<Value = PuiseuxPoly> {
    let composite = (in_r(1, 1), -3i64..=3, poly(2, 2, 3)).prop_map(|(w, c, low)| {
        let w2 = &w.pow(2) + &PuiseuxPoly::constant(int(c));
        &w2.pow(2) + &low
    });
    prop_oneof![in_r(4, 4), composite]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly(3, 3, 5), g in poly(3, 3, 5), h in poly(3, 3, 5)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn jacobian_antisymmetric_and_leibniz(f in poly(3, 3, 4), g in poly(3, 3, 4), h in poly(3, 3, 4)) {
        prop_assert_eq!(jacobian(&f, &g), -jacobian(&g, &f));
        let lhs = jacobian(&(&f * &g), &h);
        let rhs = &(&f * &jacobian(&g, &h)) + &(&g * &jacobian(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_rule(c in prop::collection::vec(-4i64..=4, 2..=5), w in nonzero(2, 2, 4), g in poly(2, 2, 4)) {
        let alpha = UPoly::from_ints(&c);
        let lhs = jacobian(&alpha.compose(&w), &g);
        let rhs = &alpha.derivative().compose(&w) * &jacobian(&w, &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_then_unshift(f in poly(3, 3, 5), c in small_rat(), u in 0i64..=3, v in 1i64..=3) {
        prop_assume!(u.gcd(&v) == 1);
        let s = f.shift_substitute(&c, u, v).unwrap();
        prop_assert_eq!(s.shift_substitute(&-c, u, v).unwrap(), f);
    }

    #[test]
    fn parse_print(f in poly(4, 4, 6), xs in prop::collection::vec((0i64..=3, 1i64..=2, -3i64..=3), 0..=3)) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f.clone());
        // fractional x-exponents print and re-parse too
        let frac = xs.into_iter().fold(f, |acc, (n, d, c)| {
            &acc + &PuiseuxPoly::term(int(c), Mono::new(Exp::new(n, d), Exp::from_integer(1)))
        });
        prop_assert_eq!(parse(&frac.to_string()).unwrap(), frac);
    }

    #[test]
    fn hull_idempotent(f in nonzero(5, 5, 7)) {
        let p = newton_polygon(&f, false).unwrap();
        prop_assert_eq!(ConvexPolygon::hull(p.vertices()), p.clone());
        prop_assert!(support(&f).iter().all(|q| p.contains(q)));
    }

    #[test]
    fn dilation(f in nonzero(3, 3, 4), i in 2u32..=3) {
        prop_assert_eq!(n0(&f.pow(i)), n0(&f).scale(&int(i as i64)));
    }

    #[test]
    fn pick_on_triangles(pts in prop::collection::vec((0i64..=8, 0i64..=8), 3)) {
        let poly = ConvexPolygon::hull(&pts.iter().map(|&(x, y)| RatPoint::int(x, y)).collect::<Vec<_>>());
        prop_assume!(poly.vertices().len() == 3);
        let pk = pick_area(&poly).unwrap();
        prop_assert_eq!(pk.area, int(pk.interior) + rat(pk.boundary, 2) - int(1));
    }

    #[test]
    fn region_width(a in 2i64..=5, b in 3i64..=12, mk in 1i64..=4, nk in 1i64..=6) {
        prop_assume!(a < b && a.gcd(&b) == 1 && mk <= nk);
        let (m, n) = (a * mk, a * nk);
        let r = RegionR::new(a, b, m, n).unwrap();
        let c0 = rat(a, a + b);
        let mut y = 0;
        while int(y) < r.top() {
            let yq = int(y);
            let lo = rat(m, n) * &yq;
            let hi = &r.c.x + (&yq - &r.c.y) / &r.slope;
            prop_assert!(&hi - &lo < c0, "({a},{b},{m},{n}) at y = {y}: [{lo}, {hi}]");
            y += 1;
        }
    }

    #[test]
    fn degree_is_additive(f in nonzero(3, 3, 4), g in nonzero(3, 3, 4), w in direction()) {
        let fg = &f * &g;
        prop_assert_eq!(w_deg(&fg, w), Some(w_deg(&f, w).unwrap() + w_deg(&g, w).unwrap()));
        let lf = leading_form(&f, w).unwrap();
        let lg = leading_form(&g, w).unwrap();
        prop_assert_eq!(leading_form(&fg, w).unwrap(), &lf * &lg);
    }

    #[test]
    fn jacobian_degree(f in nonzero(3, 3, 4), g in nonzero(3, 3, 4), w in direction()) {
        let bound = w_deg(&f, w).unwrap() + w_deg(&g, w).unwrap() - w.of_xy();
        let lead = jacobian(&leading_form(&f, w).unwrap(), &leading_form(&g, w).unwrap());
        match w_deg(&jacobian(&f, &g), w) {
            None => prop_assert!(lead.is_zero()),
            Some(dj) => {
                prop_assert!(dj <= bound);
                prop_assert_eq!(dj == bound, !lead.is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pre_generator_matches_series(k in 0usize..6, seed in any::<u64>()) {
        let (m, n, a) = [(2, 2, 2), (4, 6, 2), (6, 6, 2), (3, 6, 3), (6, 3, 3), (6, 6, 3)][k];
        let mut r = common::rng(seed);
        let f = common::rand_in_r(&mut r, m, n);
        let q = pre_generator(&f, a).unwrap();
        prop_assert_eq!(q.clone(), binomial_root(&f, a, m, n));
        let inner = inner_poly(&f, a).unwrap();
        let (_, npp) = n_prime_regions(a, m, n).unwrap();
        let hull = n0(&f);
        prop_assert!(support(&inner).iter().all(|p| hull.contains(p) && !npp.contains(p)));
    }

    #[test]
    fn generator_reconstructs(f in generator_input(), a in prop::sample::select(vec![2i64, 4])) {
        // random F whose approximate root has no admissible W_F are skipped
        let Ok(g) = f_generator(&f, QTuple::new(a, a + 1, 4, 4).unwrap()) else { return Ok(()) };
        let mut total = g.q.pow(a as u32);
        for (j, e) in g.e.iter().enumerate() {
            total = &total + &g.wf.pow(j as u32).scale(e);
        }
        prop_assert_eq!(&total + &g.z, f);
        let (mw, nw) = (4 / (a * g.delta), 4 / (a * g.delta));
        for j in 0..((a - 1) * g.delta) {
            prop_assert!(g.z.coeff_int(j * mw, j * nw).is_zero());
        }
    }

    #[test]
    fn decomposition_round_trip(w in in_r(1, 2), c in prop::collection::vec(-3i64..=3, 1..=3)) {
        // α ∈ 𝕋: monic with no z^{k−1} term
        let k = c.len() + 1;
        let mut coeffs: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
        coeffs.extend([int(0), int(1)]);
        let alpha = UPoly::new(coeffs);
        let f = alpha.compose(&w);
        let dec = decompose_univariate(&f);
        prop_assert_eq!(dec.compose(), f.clone());
        prop_assert_eq!(dec.degree() % k, 0);
        prop_assert_eq!(solve_alpha(&f, &w, k as u32), Some(alpha));
    }

    #[test]
    fn expansions_are_homogeneous(f in nonzero(2, 3, 5), cx in 0i64..=2, ra in 1i64..=4) {
        let w = Direction::new(0, 1).unwrap();
        let f = &f.filter_terms(|m, _| m.y < Exp::from_integer(3)) + &PuiseuxPoly::term(Rational::one(), Mono::int(cx, 3));
        let ctx = MagnusContext::for_powers(&f, w).unwrap();
        let pw = frac_power_expand(&ctx, ra, 4);
        prop_assert!(expansion_degrees_ok(&ctx, ra, &pw));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn magnus_on_automorphisms(seed in any::<u64>(), w in prop::sample::select(vec![(1i64, 1i64), (0, 1), (1, 2)])) {
        let mut r = common::rng(seed);
        let (f, g) = common::rand_automorphism(&mut r, 2);
        let w = Direction::new(w.0, w.1).unwrap();
        prop_assume!(w_deg(&f, w).is_some_and(|d| d > Exp::zero()) && w_deg(&g, w).is_some_and(|e| e > Exp::zero()));
        let rep = magnus_solve(&f, &g, w).unwrap();
        prop_assert!(rep.verified(), "({}, {}) under {}", f, g, w);
    }

    #[test]
    fn walk_shifts_invert(seed in any::<u64>()) {
        // F = Q² + ζ, G = Q³ + (3/2)Qζ as in the worked example, over a random Q
        let mut r = common::rng(seed);
        let q = &PuiseuxPoly::term(Rational::one(), Mono::int(1, 2)) + &common::rand_poly(&mut r, 1, 1, 0.5);
        let zeta = common::rand_nonzero(&mut r, 1, 1, 0.6);
        let f = &q.pow(2) + &zeta;
        let g = &q.pow(3) + &(&q * &zeta).scale(&rat(3, 2));
        let Ok(tr) = run_walk_capped(&f, &g, QTuple::new(2, 3, 2, 4).unwrap(), Orientation::En, 8) else {
            return Ok(());
        };
        prop_assume!(!tr.states.is_empty());
        for w in tr.states.windows(2) {
            prop_assert_eq!(w[1].p % w[0].p, 0);
        }
        let (f0, g0, z0) = undo_walk(&tr).unwrap();
        let first = &tr.states[0];
        prop_assert_eq!((f0, g0, z0), (first.f.clone(), first.g.clone(), first.z.clone()));
    }
}
