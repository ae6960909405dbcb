//! Contraction pairing and zero-mode bookkeeping against closed forms
//! computed directly from the commutation relations.

use ellwak::fock::{vacuum_expectation, Sector};
use ellwak::oscillators::{contract, contract_coeff, zero_mode_reorder, Family, LinForm, Reading, Zero};
use ellwak::qseries::special::{inv_qnum_ell, qint, qnum, EllFamily, Mono};
use ellwak::qseries::{int, Coeff, Ctx, ExpForm, Nome, PSeries};
use ellwak::vop::OperatorExpr;
use proptest::prelude::*;

const PREC4: i64 = 8;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::A), Just(Family::B), Just(Family::C)]
}

/// `(f, γ, α, c)` with `γ = g₀ + g₁ k` and integer `α`, `c`.
#[derive(Clone, Debug)]
struct Field {
    f: Family,
    g0: i64,
    g1: i64,
    alpha: i64,
    c: i64,
}

impl Field {
    fn gamma(&self) -> ExpForm {
        ExpForm::int(self.g0) + ExpForm::int(self.g1) * ExpForm::k()
    }

    fn lin(&self) -> LinForm {
        LinForm::field(self.f, &self.gamma(), &ExpForm::int(self.alpha), &int(self.c))
    }
}

fn field() -> impl Strategy<Value = Field> {
    (family(), -2i64..=2, -1i64..=1, -2i64..=2, prop_oneof![-2i64..=-1, 1i64..=2]).prop_map(|(f, g0, g1, alpha, c)| Field { f, g0, g1, alpha, c })
}

/// `[f_n, f_{-n}]` straight from the oscillator algebra.
fn norm(f: Family, n: i64) -> Coeff {
    let inv_n = Coeff::rational(ellwak::qseries::Q::new(1.into(), n.into()));
    let kp2n = (ExpForm::k() + ExpForm::int(2)) * ExpForm::int(n);
    let v = match f {
        Family::A => &qnum(&kp2n).unwrap() * &qint(2 * n),
        Family::B => -(&qint(n) * &qint(n)),
        Family::C => &qint(n) * &qint(n),
    };
    &v * &inv_n
}

/// `q^{a + b k}` for integers `a`, `b`.
fn qk(a: i64, b: i64) -> Coeff {
    Coeff::mono(2 * a, 2 * b, int(1))
}

/// Coefficient of `x^n` in `[ann f(q^{γ₁}z; α₁), cre f(q^{γ₂}w; α₂)]`:
/// `-c₁ c₂ [f_n, f_{-n}] q^{n(γ₂ - α₂ - α₁ - γ₁)} / [n]^2`.
fn field_oracle(a: &Field, b: &Field, n: i64) -> Coeff {
    if a.f != b.f {
        return Coeff::zero();
    }
    let q = qk(n * (b.g0 - b.alpha - a.alpha - a.g0), n * (b.g1 - a.g1));
    let qn2 = &qint(n) * &qint(n);
    let v = &(&norm(a.f, n) * &q) * &Coeff::int(-a.c * b.c);
    v.try_div(&qn2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn field_contraction_matches_closed_form(a in field(), b in field(), n in 1i64..=4) {
        let got = contract_coeff(&a.lin(), &b.lin(), n, Nome::P, PREC4).unwrap();
        let want = PSeries::constant(field_oracle(&a, &b, n));
        prop_assert!(got.eq_upto(&want, PREC4), "{got} vs {want}");
    }

    #[test]
    fn contraction_is_bilinear(a1 in field(), a2 in field(), b in field(), s in -3i64..=3, n in 1i64..=3) {
        let (x1, x2, y) = (a1.lin(), a2.lin(), b.lin());
        let lhs = contract_coeff(&x1.add(&x2), &y, n, Nome::P, PREC4).unwrap();
        let rhs = &contract_coeff(&x1, &y, n, Nome::P, PREC4).unwrap() + &contract_coeff(&x2, &y, n, Nome::P, PREC4).unwrap();
        prop_assert!(lhs.eq_upto(&rhs, PREC4));
        let lhs = contract_coeff(&y, &x1.add(&x2), n, Nome::P, PREC4).unwrap();
        let rhs = &contract_coeff(&y, &x1, n, Nome::P, PREC4).unwrap() + &contract_coeff(&y, &x2, n, Nome::P, PREC4).unwrap();
        prop_assert!(lhs.eq_upto(&rhs, PREC4));
        let lhs = contract_coeff(&x1.scale(&int(s)), &y, n, Nome::P, PREC4).unwrap();
        let rhs = contract_coeff(&x1, &y, n, Nome::P, PREC4).unwrap().scale(&Coeff::int(s));
        prop_assert!(lhs.eq_upto(&rhs, PREC4));
    }

    #[test]
    fn contraction_has_positive_powers_only(a in field(), b in field(), w in 1i64..=5) {
        let c = contract(&a.lin(), &b.lin(), &Ctx::new(Nome::P, w, 1)).unwrap();
        prop_assert!(c.terms().keys().all(|&m| (1..=w).contains(&m)));
        prop_assert_eq!(c.hi(), w);
    }

    #[test]
    fn star_contraction_matches_closed_form(f in family(), g1 in -2i64..=2, g2 in -2i64..=2, n in 1i64..=3) {
        // [f*_+(q^{γ₁}z), f*_-(q^{γ₂}w)] at x^n: -[f_n, f_{-n}] q^{n(γ₂-γ₁)}/([rn][r*n]).
        let a = LinForm::star_plus(f, &ExpForm::int(g1), false, Reading::Sum);
        let b = LinForm::star_minus(f, &ExpForm::int(g2), false, Reading::Sum);
        let prec4 = 4 * 3;
        let got = contract_coeff(&a, &b, n, Nome::P, prec4).unwrap();
        let r = inv_qnum_ell(EllFamily::R, n, prec4).unwrap();
        let rs = inv_qnum_ell(EllFamily::RStar, n, prec4).unwrap();
        let want = r.mul_to(&rs, prec4).scale(&(&norm(f, n) * &qk(n * (g2 - g1), 0))).scale(&Coeff::int(-1));
        prop_assert!(got.eq_upto(&want, prec4), "{got} vs {want}");
    }

    #[test]
    fn zero_mode_factor_matches_commutator(a in field(), b in field()) {
        // Moving c₁ p_f (ln z + γ₁ ln q) past e^{c₂ Q_f} gives z^{κ c₁ c₂} q^{κ c₁ c₂ γ₁}.
        let z = zero_mode_reorder(&a.lin(), &b.lin());
        if a.f == b.f {
            let kc = Zero::of(a.f).kappa() * ExpForm::int(a.c * b.c);
            prop_assert_eq!(&z.zexp, &kc);
            prop_assert_eq!(&z.qexp, &(&kc * &a.gamma()));
        } else {
            prop_assert!(z.zexp.is_zero() && z.qexp.is_zero());
        }
    }

    #[test]
    fn vacuum_expectation_is_exp_of_contraction(a in field(), b in field()) {
        // ⟨0| A(z) B(w) |0⟩ = z^{ζ} q^{η} exp(Σ_n c_n (w/z)^n).
        let w = 3;
        let ctx = Ctx::new(Nome::P, w, 1);
        let (x, y) = (a.lin(), b.lin());
        let got = vacuum_expectation(&OperatorExpr::single(x.clone()), &OperatorExpr::single(y.clone()), &Sector::int(0, 0, 0, 0), w, &ctx).unwrap();
        let zf = zero_mode_reorder(&x, &y);
        // Powers such as q^{k^2} stay symbolic in the key's q-tag.
        let sp = Nome::P.split(&zf.qexp);
        let pre = Mono::new(sp.deg4, sp.i, sp.j);
        prop_assert_eq!(pre.deg4, 0);
        let ex = contract(&x, &y, &ctx).unwrap().exp_pos(ctx.prec4).unwrap();
        for n in 0..=w {
            let want = ex.coeff(n).unwrap().scale(&pre.coeff());
            let key = (&zf.zexp - &ExpForm::int(n), ExpForm::int(n), sp.tag.clone());
            match got.get(&key) {
                Some(v) => prop_assert!(v.eq_upto(&want, ctx.prec4), "x^{n}: {v} vs {want}"),
                None => prop_assert!(want.truncate(ctx.prec4).is_zero(), "x^{n} missing, want {want}"),
            }
        }
        prop_assert!(got.keys().all(|(_, wp, tag)| *tag == sp.tag && wp.as_integer().is_some_and(|m| (0..=w).contains(&m))));
    }
}
