//! The contraction pairing `[ann A(z), cre B(w)]` and the zero-mode
//! reordering monomial.

use super::linform::{LinForm, Side};
use super::Zero;
use crate::qseries::xlaurent::NEG_INF;
use crate::qseries::{Ctx, ExpForm, Nome, PSeries, XLaurent};
use crate::Error;

/// Coefficient of `x^n` (`x = w/z`) in `[ann A(z), cre B(w)]`, restricted
/// to summand pairs whose total `[2]`-power per mode is `br2` when given.
pub fn contract_coeff_br(a: &LinForm, b: &LinForm, n: i64, nome: Nome, prec4: i64, br2: Option<i32>) -> Result<PSeries, Error> {
    // Negative valuations cancel between the factors; raise the working
    // precision until the result is known to `prec4`.
    let mut lift = 0;
    loop {
        let v = contract_at(a, b, n, nome, prec4 + lift, br2)?;
        if v.prec() >= prec4 {
            return Ok(v.truncate(prec4));
        }
        if lift > 64 * (n + 1) {
            return Err(Error::Internal(format!("contraction at mode {n} does not reach nome order {prec4}/4")));
        }
        lift += (prec4 - v.prec()).max(4);
    }
}

fn contract_at(a: &LinForm, b: &LinForm, n: i64, nome: Nome, prec4: i64, br2: Option<i32>) -> Result<PSeries, Error> {
    let mut acc = PSeries::zero();
    for s in a.side(Side::Ann) {
        for t in b.side(Side::Cre) {
            if s.fam != t.fam {
                continue;
            }
            if let Some(b2) = br2 {
                if s.kernel.br2 + t.kernel.br2 != b2 {
                    continue;
                }
            }
            let norm = s.fam.norm_series(n, nome)?;
            let nm = (-norm.val()).max(0);
            let ks = s.kernel.eval(n, nome, prec4 + nm + margin(&t.kernel, n, nome))?;
            let kt = t.kernel.eval(n, nome, prec4 + nm + margin(&s.kernel, n, nome))?;
            let v = ks.mul_to(&kt, prec4 + nm).mul_to(&norm, prec4);
            acc = &acc + &v;
        }
    }
    Ok(acc.truncate(prec4))
}

/// Extra precision needed when the partner kernel has negative valuation.
fn margin(k: &super::Kernel, n: i64, nome: Nome) -> i64 {
    match k.eval(n, nome, 0) {
        Ok(v) if !v.is_zero() => (-v.val()).max(0),
        _ => 0,
    }
}

pub fn contract_coeff(a: &LinForm, b: &LinForm, n: i64, nome: Nome, prec4: i64) -> Result<PSeries, Error> {
    contract_coeff_br(a, b, n, nome, prec4, None)
}

/// `Σ_{n=1}^{N} c_n x^n`, known up to `x^N`.
pub fn contract(a: &LinForm, b: &LinForm, ctx: &Ctx) -> Result<XLaurent, Error> {
    let mut terms = Vec::new();
    for n in 1..=ctx.window {
        terms.push((n, contract_coeff(a, b, n, ctx.nome, ctx.prec4)?));
    }
    Ok(XLaurent::with_range(NEG_INF, ctx.window, terms))
}

/// `z^{zexp} q^{qexp}` produced by moving the `p`-part of `A(z)` to the
/// right of the `e^{Q}` part of `B(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZeroFactor {
    pub zexp: ExpForm,
    pub qexp: ExpForm,
}

pub fn zero_mode_reorder(a: &LinForm, b: &LinForm) -> ZeroFactor {
    let mut zexp = ExpForm::zero();
    let mut qexp = ExpForm::zero();
    for z in Zero::ALL {
        let i = z.idx();
        if b.zq[i].is_zero() {
            continue;
        }
        let kq = &z.kappa() * &b.zq[i];
        zexp = &zexp + &(&kq * &a.plz[i]);
        qexp = &qexp + &(&kq * &a.plq[i]);
    }
    ZeroFactor { zexp, qexp }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillators::Family;
    use crate::qseries::special::qint;
    use crate::qseries::{int, Coeff, LPoly};

    fn qs(e: i64) -> LPoly {
        LPoly::q(e)
    }

    #[test]
    fn a_plus_a_minus() {
        // −(q² − q^{−2})(q^{k+2} − q^{−k−2}) at x^1.
        let c = contract_coeff(&LinForm::plus(Family::A, &ExpForm::zero()), &LinForm::minus(Family::A, &ExpForm::zero()), 1, Nome::P, 8).unwrap();
        let qk2 = &LPoly::mono(4, 2, int(1)) - &LPoly::mono(-4, -2, int(1));
        let expect = Coeff::from_poly(-(&(&qs(2) - &qs(-2)) * &qk2));
        assert_eq!(c.coeff(0).unwrap(), expect);
    }

    #[test]
    fn b_plus_b_minus() {
        let c = contract_coeff(&LinForm::plus(Family::B, &ExpForm::zero()), &LinForm::minus(Family::B, &ExpForm::zero()), 1, Nome::P, 8).unwrap();
        let qq = Coeff::q_minus_qinv();
        assert_eq!(c.coeff(0).unwrap(), &qq * &qq);
    }

    #[test]
    fn cross_family_vanishes() {
        let a = LinForm::field(Family::C, &ExpForm::zero(), &ExpForm::zero(), &int(1));
        let b = LinForm::field(Family::A, &ExpForm::zero(), &ExpForm::zero(), &int(1));
        assert!(contract_coeff(&a, &b, 2, Nome::P, 8).unwrap().is_zero());
        let _ = qint(1);
    }

    #[test]
    fn reorder_examples() {
        let za = LinForm::p_ln_z(Zero::B, ExpForm::int(1));
        let zb = LinForm::q_mode(Zero::B, ExpForm::int(1));
        assert_eq!(zero_mode_reorder(&za, &zb).zexp, ExpForm::int(-1));
        let za = LinForm::p_ln_z(Zero::Hat, ExpForm::int(1));
        let zb = LinForm::q_mode(Zero::Hat, ExpForm::int(2));
        assert_eq!(zero_mode_reorder(&za, &zb).zexp, ExpForm::int(-2));
        let za = LinForm::p_ln_q(Zero::A, ExpForm::int(1));
        let zb = LinForm::q_mode(Zero::A, ExpForm::frac(1, 2));
        assert_eq!(zero_mode_reorder(&za, &zb).qexp, ExpForm::k() + ExpForm::int(2));
    }
}
