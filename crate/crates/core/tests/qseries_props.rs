//! Properties of the coefficient field and the special functions, each
//! checked against an independent expansion.

use ellwak::qseries::special::{
    geom_expand, inv_qnum_ell, jacobi_ratio, qint, qnum, theta_series, theta_series_inv, EllFamily, Mono, Orientation, Period,
};
use ellwak::qseries::{int, Coeff, Comparison, ExpForm, LPoly, PSeries, XLaurent, EXACT};
use proptest::prelude::*;

fn agree(a: &XLaurent, b: &XLaurent, n: i64, limit4: i64) -> bool {
    match a.compare(b, n, limit4) {
        Comparison::Agree { compared, .. } => compared > 0,
        Comparison::Differ { .. } => false,
    }
}

fn lpoly() -> impl Strategy<Value = LPoly> {
    prop::collection::vec((-4i64..=4, -2i64..=2, -3i64..=3), 1..4)
        .prop_map(|ts| ts.into_iter().fold(LPoly::zero(), |acc, (i, j, c)| &acc + &LPoly::mono(i, j, int(c))))
}

fn nonzero_lpoly() -> impl Strategy<Value = LPoly> {
    lpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (lpoly(), nonzero_lpoly()).prop_map(|(n, d)| Coeff::new(n, d).unwrap())
}

/// Oracle: `Θ_t(s x) = Σ_n (-1)^n t^{n(n-1)/2} s^n x^n`.
fn triple_product(s: Mono, t: Mono, prec4: i64, n: i64) -> XLaurent {
    let terms = (-n..=n).map(|e| {
        let m = t.pow(e * (e - 1) / 2).mul(s.pow(e));
        let sign = if e % 2 == 0 { 1 } else { -1 };
        (e, m.series(&Coeff::int(sign)).truncate(prec4))
    });
    XLaurent::with_range(-n, n, terms)
}

/// `t = p` or `t = p* = p q^{-2k}`.
fn base() -> impl Strategy<Value = Mono> {
    prop_oneof![Just(Mono::new(4, 0, 0)), Just(Mono::new(4, 0, -4))]
}

fn unit() -> impl Strategy<Value = Mono> {
    (-6i64..=6, -3i64..=3).prop_map(|(i, j)| Mono::new(0, i, j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coeff_equality_is_a_congruence(a in coeff(), c in coeff(), u in nonzero_lpoly(), v in nonzero_lpoly()) {
        // Same values under different representatives.
        let b = Coeff::new(a.num() * &u, a.den() * &u).unwrap();
        let d = Coeff::new(c.num() * &v, c.den() * &v).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a * &c, &b * &d);
        prop_assert_eq!(&a + &c, &b + &d);
        prop_assert_eq!(&a - &c, &b - &d);
    }

    #[test]
    fn coeff_field_laws(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn qnum_recursion(n in -6i64..=6, j in -3i64..=3) {
        // [2][e] = [e+1] + [e-1] and [-e] = -[e] for e = n + j k.
        let e = ExpForm::int(n) + ExpForm::int(j) * ExpForm::k();
        let lhs = &qint(2) * &qnum(&e).unwrap();
        let rhs = &qnum(&(&e + &ExpForm::int(1))).unwrap() + &qnum(&(&e - &ExpForm::int(1))).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(qnum(&-e.clone()).unwrap(), -qnum(&e).unwrap());
    }

    #[test]
    fn theta_matches_triple_product(s in unit(), half in any::<bool>(), t in base(), p in 0i64..=3) {
        let s = if half { s.mul(Mono::new(2, 0, 0)) } else { s };
        let prec4 = 4 * p;
        let th = theta_series(s, t, prec4).unwrap();
        prop_assert!(agree(&th, &triple_product(s, t, prec4, 6), 6, prec4));
    }

    #[test]
    fn theta_quasi_periodicity(s in unit(), t in base(), p in 0i64..=3, n in 1i64..=6) {
        // Θ_t(t s x) = -(s x)^{-1} Θ_t(s x)
        let prec4 = 4 * p;
        let lhs = theta_series(s.mul(t), t, prec4).unwrap();
        let rhs = theta_series(s, t, prec4).unwrap().shift(-1).scale(&s.inv().series(&Coeff::int(-1)));
        prop_assert!(agree(&lhs, &rhs, n, prec4));
    }

    #[test]
    fn theta_inversion(s in unit(), t in base(), p in 0i64..=3, n in 1i64..=6) {
        // Θ_t(s x) = Θ_t(t/(s x))
        let prec4 = 4 * p;
        let lhs = theta_series(s, t, prec4).unwrap();
        let rhs = theta_series_inv(t.mul(s.inv()), t, prec4).unwrap();
        prop_assert!(agree(&lhs, &rhs, n, prec4));
    }

    #[test]
    fn formal_delta(i in -6i64..=6, j in -3i64..=3, c in 1i64..=5, neg in any::<bool>(), n in 1i64..=8) {
        // 1/(1 - c x) in |x| < 1 minus its expansion in |x| > 1 is Σ_m (c x)^m.
        let c = Coeff::rational(int(if neg { -c } else { c }));
        let m = Mono::new(0, i, j);
        let inner = geom_expand(&c, m, Orientation::Inner, n, EXACT).unwrap();
        let outer = geom_expand(&c, m, Orientation::Outer, n, EXACT).unwrap();
        let diff = &inner - &outer;
        let cm = &c * &m.coeff();
        for e in -n..=n {
            let want = cm.pow(e).unwrap();
            prop_assert_eq!(diff.coeff(e).unwrap().coeff(0).unwrap(), want);
        }
    }

    #[test]
    fn inv_qnum_ell_inverse(n in 1i64..=4, star in any::<bool>(), p in 0i64..=4) {
        // [r n] = (P - P^{-1})/(q - q^{-1}) with P = q^{r n} = p^{n/2}, or
        // P = q^{r* n} = p^{n/2} q^{-k n}.
        let prec4 = 4 * p + 2 * n;
        let (fam, j) = if star { (EllFamily::RStar, -2 * n) } else { (EllFamily::R, 0) };
        let inv = inv_qnum_ell(fam, n, prec4).unwrap();
        let d = Coeff::q_minus_qinv().inv().unwrap();
        let big = Mono::new(2 * n, 0, j);
        let num = PSeries::from_terms([(big.deg4, &big.coeff() * &d), (-big.deg4, -(&big.inv().coeff() * &d))], EXACT);
        let prod = inv.mul_to(&num, EXACT);
        prop_assert!(prod.eq_upto(&PSeries::one(), 4 * p));
    }

    #[test]
    fn jacobi_ratio_quasi_periodicity(a in -4i64..=4, b in -4i64..=4, star in any::<bool>()) {
        // Shifting both a and b by ν/2 leaves the ratio's y-power alone.
        let nu = if star { Period::RStar } else { Period::R };
        let (a, b) = (ExpForm::frac(a, 2), ExpForm::frac(b, 2));
        let j = jacobi_ratio(&a, &b, nu);
        let inv = match nu { Period::R => ExpForm::inv_r(), _ => ExpForm::inv_rstar() };
        prop_assert_eq!(&j.yexp, &(&inv * &(&a - &b)));
        prop_assert_eq!(&j.num_shift, &(&a * &ExpForm::int(2)));
        prop_assert_eq!(&j.den_shift, &(&b * &ExpForm::int(2)));
        if a == b {
            prop_assert!(j.yexp.is_zero() && j.qexp.is_zero());
        }
    }
}

#[test]
fn worked_examples() {
    assert_eq!(qint(2), Coeff::q_plus_qinv());
    // [k + 2] = (q^{k+2} - q^{-k-2})/(q - q^{-1})
    let e = ExpForm::k() + ExpForm::int(2);
    let want = Coeff::new(&LPoly::mono(4, 2, int(1)) - &LPoly::mono(-4, -2, int(1)), Coeff::q_minus_qinv().num().clone()).unwrap();
    assert_eq!(qnum(&e).unwrap(), want);
    // 1/[r] = -(q - q^{-1})(p^{1/2} + p^{3/2}) to order p^2.
    let s = inv_qnum_ell(EllFamily::R, 1, 8).unwrap();
    let c = -Coeff::q_minus_qinv();
    assert!(s.eq_upto(&PSeries::from_terms([(2, c.clone()), (6, c)], 8), 8));
    // 1/[r*] = -(q - q^{-1})(p^{1/2} q^{-k} + p^{3/2} q^{-3k}).
    let s = inv_qnum_ell(EllFamily::RStar, 1, 8).unwrap();
    let m = -Coeff::q_minus_qinv();
    let want = PSeries::from_terms([(2, &m * &Coeff::mono(0, -2, int(1))), (6, &m * &Coeff::mono(0, -6, int(1)))], 8);
    assert!(s.eq_upto(&want, 8));
    // 1/(1 - q^2 x) in |x| > 1 at N = 2.
    let g = geom_expand(&Coeff::q(2), Mono::ONE, Orientation::Outer, 2, EXACT).unwrap();
    assert_eq!(g.coeff(-1).unwrap().coeff(0).unwrap(), -Coeff::q(-2));
    assert_eq!(g.coeff(-2).unwrap().coeff(0).unwrap(), -Coeff::q(-4));
    // Θ_p(x) at P = 1: x^{-1} → -p, x^0 → 1, x^1 → -1.
    let th = theta_series(Mono::ONE, Mono::new(4, 0, 0), 4).unwrap();
    assert!(th.coeff(-1).unwrap().eq_upto(&PSeries::term(4, Coeff::int(-1)), 4));
    assert!(th.coeff(0).unwrap().eq_upto(&PSeries::one(), 4));
    assert!(th.coeff(1).unwrap().eq_upto(&PSeries::constant(Coeff::int(-1)), 4));
}
