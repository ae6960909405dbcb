//! Product forms `c Π(1 - χx)^{e} Π(1 - χ/x)^{e'} Π(1 - χ)^{e''}`.
//!
//! Exponentiated contractions are recognized in this form by reading the
//! geometric terms off the first mode and confirming them on the next
//! ones. Theta functions are products of the same shape, so exchange
//! factors and their meromorphic comparison share one representation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::contract::contract_coeff_br;
use super::linform::{LinForm, Side};
use crate::qseries::special::Mono;
use crate::qseries::xlaurent::NEG_INF;
use crate::qseries::{int, Coeff, Nome, PSeries, XLaurent, Q};
use crate::Error;

/// The geometric ratio `[2]^{br2} χ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub mono: Mono,
    pub br2: i32,
}

impl Factor {
    pub fn new(mono: Mono) -> Self {
        Factor { mono, br2: 0 }
    }

    pub fn deg4(&self) -> i64 {
        self.mono.deg4
    }

    pub fn coeff(&self) -> Coeff {
        let c = self.mono.coeff();
        if self.br2 == 0 {
            c
        } else {
            &c * &Coeff::q_plus_qinv().pow(self.br2 as i64).expect("[2] is nonzero")
        }
    }

    pub fn series(&self) -> PSeries {
        PSeries::term(self.mono.deg4, self.coeff())
    }

    pub fn inv(&self) -> Factor {
        Factor { mono: self.mono.inv(), br2: -self.br2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProdForm {
    pub c: Coeff,
    /// Power of `x` in the overall monomial.
    pub xpow: i64,
    pub x: BTreeMap<Factor, Q>,
    pub y: BTreeMap<Factor, Q>,
    pub k: BTreeMap<Factor, Q>,
}

fn add_exp(m: &mut BTreeMap<Factor, Q>, f: Factor, e: &Q) {
    let v = m.get(&f).cloned().unwrap_or_else(Q::zero) + e;
    if v.is_zero() {
        m.remove(&f);
    } else {
        m.insert(f, v);
    }
}

impl ProdForm {
    pub fn one() -> Self {
        ProdForm { c: Coeff::one(), xpow: 0, x: BTreeMap::new(), y: BTreeMap::new(), k: BTreeMap::new() }
    }

    pub fn scalar(c: Coeff) -> Self {
        ProdForm { c, ..Self::one() }
    }

    /// `(1 - χ x)^e`.
    pub fn x_factor(f: Factor, e: Q) -> Self {
        let mut p = Self::one();
        add_exp(&mut p.x, f, &e);
        p
    }

    /// `(1 - χ/x)^e`.
    pub fn y_factor(f: Factor, e: Q) -> Self {
        let mut p = Self::one();
        add_exp(&mut p.y, f, &e);
        p
    }

    pub fn mul(&self, o: &ProdForm) -> ProdForm {
        let mut out = ProdForm { c: &self.c * &o.c, xpow: self.xpow + o.xpow, ..self.clone() };
        for (f, e) in &o.x {
            add_exp(&mut out.x, *f, e);
        }
        for (f, e) in &o.y {
            add_exp(&mut out.y, *f, e);
        }
        for (f, e) in &o.k {
            add_exp(&mut out.k, *f, e);
        }
        out
    }

    pub fn inv(&self) -> Result<ProdForm, Error> {
        let neg = |m: &BTreeMap<Factor, Q>| m.iter().map(|(f, e)| (*f, -e.clone())).collect();
        Ok(ProdForm { c: self.c.inv()?, xpow: -self.xpow, x: neg(&self.x), y: neg(&self.y), k: neg(&self.k) })
    }

    /// `x -> 1/x`.
    pub fn reflect(&self) -> ProdForm {
        ProdForm { c: self.c.clone(), xpow: -self.xpow, x: self.y.clone(), y: self.x.clone(), k: self.k.clone() }
    }

    /// `Θ_t(s v)` to nome degree `prec4`, with `v = x` or `v = 1/x`.
    pub fn theta(s: Mono, t: Mono, in_y: bool, prec4: i64) -> Result<ProdForm, Error> {
        if t.deg4 <= 0 || s.deg4 < 0 || s.deg4 > t.deg4 {
            return Err(Error::Unsupported("theta argument outside the fundamental strip".into()));
        }
        let mut p = Self::one();
        let one = Q::one();
        let mut f1 = Vec::new();
        let mut f2 = Vec::new();
        let mut m = 0;
        while s.deg4 + m * t.deg4 <= prec4 {
            f1.push(Factor::new(s.mul(t.pow(m))));
            m += 1;
        }
        let mut m = 1;
        while m * t.deg4 - s.deg4 <= prec4 {
            f2.push(Factor::new(t.pow(m).mul(s.inv())));
            m += 1;
        }
        let (a, b) = if in_y { (&mut p.y, &mut p.x) } else { (&mut p.x, &mut p.y) };
        for f in f1 {
            add_exp(a, f, &one);
        }
        for f in f2 {
            add_exp(b, f, &one);
        }
        let mut m = 1;
        while m * t.deg4 <= prec4 {
            add_exp(&mut p.k, Factor::new(t.pow(m)), &one);
            m += 1;
        }
        Ok(p)
    }

    /// Moves degree-zero `1/x` factors into `x` factors and degree-zero
    /// constants into the scalar. Fails on non-integral exponents there.
    pub fn canonical(&self) -> Result<ProdForm, Error> {
        let mut out = ProdForm { x: self.x.clone(), k: BTreeMap::new(), y: BTreeMap::new(), ..self.clone() };
        for (f, e) in &self.y {
            if f.deg4() != 0 {
                add_exp(&mut out.y, *f, e);
                continue;
            }
            let n = int_exp(e)?;
            // (1 - χ/x)^n = (-χ)^n x^{-n} (1 - x/χ)^n
            out.c = &out.c * &(-f.coeff()).pow(n)?;
            out.xpow -= n;
            add_exp(&mut out.x, f.inv(), e);
        }
        for (f, e) in &self.k {
            if f.deg4() != 0 {
                add_exp(&mut out.k, *f, e);
                continue;
            }
            let n = int_exp(e)?;
            let v = &Coeff::one() - &f.coeff();
            out.c = &out.c * &v.pow(n)?;
        }
        Ok(out)
    }

    /// Degree-zero `x` factors with negative exponent (the poles).
    pub fn poles(&self) -> BTreeMap<Factor, Q> {
        self.x.iter().filter(|(f, e)| f.deg4() == 0 && *e < &Q::zero()).map(|(f, e)| (*f, e.clone())).collect()
    }

    /// Series expansion in `|x| < 1` for degree-zero poles, known up to
    /// `x^window`; elliptic factors are finite after truncation.
    pub fn expand(&self, prec4: i64, window: i64) -> Result<XLaurent, Error> {
        let mut acc = XLaurent::mono(self.xpow, PSeries::constant(self.c.clone()));
        let mut kc = PSeries::one();
        for (f, e) in &self.k {
            kc = kc.mul_to(&binomial_scalar(f, e, prec4), prec4);
        }
        acc = acc.scale(&kc);
        for (f, e) in &self.x {
            acc = acc.mul(&binomial_x(f, e, prec4, window)?, prec4)?;
        }
        for (f, e) in &self.y {
            acc = acc.mul(&binomial_x(f, e, prec4, window)?.reflect(), prec4)?;
        }
        Ok(acc.map_coeffs(|c| c.truncate(prec4)))
    }
}

pub(crate) fn int_exp(e: &Q) -> Result<i64, Error> {
    if !e.is_integer() {
        return Err(Error::NotMeromorphic(format!("non-integral exponent {e} on a degree-zero factor")));
    }
    i64::try_from(e.to_integer()).map_err(|_| Error::Internal("exponent overflow".into()))
}

/// `binom(e, m)`.
fn binom(e: &Q, m: i64) -> Q {
    let mut c = Q::one();
    for i in 0..m {
        c = c * (e - int(i)) / int(i + 1);
    }
    c
}

/// `(1 - χ)^e` for `deg χ > 0`.
pub(crate) fn binomial_scalar(f: &Factor, e: &Q, prec4: i64) -> PSeries {
    debug_assert!(f.deg4() > 0, "degree-zero constants are absorbed by canonical()");
    let mut out = PSeries::zero_to(prec4);
    let base = f.series();
    let mut pw = PSeries::one();
    let mut m = 0;
    loop {
        if m > 0 && m * f.deg4() > prec4 {
            break;
        }
        let c = binom(e, m) * int(if m % 2 == 0 { 1 } else { -1 });
        out = &out + &pw.scale_q(&c).truncate(prec4);
        pw = pw.mul_to(&base, prec4);
        m += 1;
    }
    out
}

/// `(1 - χx)^e` in `|x| < 1`.
fn binomial_x(f: &Factor, e: &Q, prec4: i64, window: i64) -> Result<XLaurent, Error> {
    let base = f.series();
    let finite = e.is_integer() && e >= &Q::zero();
    let top = if finite {
        i64::try_from(e.to_integer()).unwrap()
    } else if f.deg4() > 0 {
        prec4 / f.deg4()
    } else if f.deg4() == 0 {
        window
    } else {
        return Err(Error::NotMeromorphic("factor of negative nome degree".into()));
    };
    let mut terms = Vec::new();
    let mut pw = PSeries::one();
    for m in 0..=top {
        let c = binom(e, m) * int(if m % 2 == 0 { 1 } else { -1 });
        if !c.is_zero() {
            terms.push((m, pw.scale_q(&c).truncate(prec4)));
        }
        pw = pw.mul_to(&base, prec4);
    }
    if finite || f.deg4() > 0 {
        Ok(XLaurent::poly(terms))
    } else {
        Ok(XLaurent::with_range(NEG_INF, window, terms))
    }
}

/// Recognizes `exp([ann A(z), cre B(w)])` as a product `Π(1 - χx)^{e}`.
/// The geometric terms are read off the first mode and confirmed on modes
/// `2..=verify`.
pub fn factorize(a: &LinForm, b: &LinForm, nome: Nome, prec4: i64, verify: i64) -> Result<ProdForm, Error> {
    let mut groups: Vec<i32> = Vec::new();
    for s in a.side(Side::Ann) {
        for t in b.side(Side::Cre) {
            if s.fam == t.fam {
                let g = s.kernel.br2 + t.kernel.br2;
                if !groups.contains(&g) {
                    groups.push(g);
                }
            }
        }
    }
    let mut out = ProdForm::one();
    for g in groups {
        let two = Coeff::q_plus_qinv();
        let c1 = contract_coeff_br(a, b, 1, nome, prec4, Some(g))?.scale(&two.pow(-(g as i64))?);
        let mut terms: Vec<(Mono, Q)> = Vec::new();
        for (d, c) in c1.terms() {
            let p = c.as_poly().cloned().or_else(|| c.num().div_exact(c.den())).ok_or_else(|| {
                Error::NotMeromorphic(format!("contraction coefficient {c} at nome degree {d} is not a Laurent polynomial"))
            })?;
            for ((i, j), e) in p.terms() {
                if *d < 0 {
                    return Err(Error::NotMeromorphic("contraction has negative nome degree".into()));
                }
                terms.push((Mono::new(*d, *i, *j), e.clone()));
            }
        }
        for n in 2..=verify {
            let got = contract_coeff_br(a, b, n, nome, prec4, Some(g))?.scale_q(&int(n));
            let mut want = PSeries::zero_to(prec4);
            for (m, e) in &terms {
                let chi = m.pow(n);
                if chi.deg4 <= prec4 {
                    want.add_term(chi.deg4, chi.coeff().scale(e));
                }
            }
            let want = want.scale(&two.pow(g as i64 * n)?);
            if let Some(d) = got.first_difference(&want, prec4) {
                return Err(Error::NotMeromorphic(format!(
                    "mode {n} of the contraction is not geometric at nome degree {d}: {} vs {}",
                    got.coeff(d).unwrap_or_else(Coeff::zero),
                    want.coeff(d).unwrap_or_else(Coeff::zero)
                )));
            }
        }
        for (m, e) in terms {
            out = out.mul(&ProdForm::x_factor(Factor { mono: m, br2: g }, -e));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillators::Family;
    use crate::qseries::{Comparison, ExpForm};

    #[test]
    fn theta_product_matches_series() {
        let p = Mono::new(4, 0, 0);
        let s = Mono::new(0, 4, 0);
        let th = ProdForm::theta(s, p, false, 12).unwrap().expand(12, 8).unwrap();
        let direct = crate::qseries::special::theta_series(s, p, 12).unwrap();
        assert!(matches!(th.compare(&direct, 8, 12), Comparison::Agree { .. }));
    }

    #[test]
    fn b_fields_give_a_simple_factor() {
        // b(z) b(w): exp(Σ -[n]^{-2} [n]^2/n x^n ... ) = (1 - x)^{-1}... read off exactly.
        let a = LinForm::field(Family::B, &ExpForm::zero(), &ExpForm::zero(), &int(1));
        let f = factorize(&a, &a, Nome::P, 8, 6).unwrap();
        assert_eq!(f.x.len(), 1);
        let (fac, e) = f.x.iter().next().unwrap();
        assert_eq!(fac.mono, Mono::ONE);
        assert_eq!(e, &int(-1));
    }

    #[test]
    fn degree_zero_y_factor_canonicalizes() {
        let f = Factor::new(Mono::new(0, 4, 0));
        let p = ProdForm::y_factor(f, int(1)).canonical().unwrap();
        assert_eq!(p.xpow, -1);
        assert_eq!(p.c, -Coeff::q(2));
        assert!(p.x.contains_key(&f.inv()));
    }
}
