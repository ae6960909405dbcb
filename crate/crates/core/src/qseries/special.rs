//! q-integers, their elliptic inverses, theta expansions, geometric
//! expansions and the Jacobi-to-Θ conversion.

use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::expform::ExpForm;
use super::lpoly::LPoly;
use super::nome::Nome;
use super::pseries::PSeries;
use super::xlaurent::{XLaurent, NEG_INF, POS_INF};
use super::{int, Q};
use crate::Error;

/// A monic monomial `nome^{deg4/4} q^{i/2} q^{kj/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono {
    pub deg4: i64,
    pub i: i64,
    pub j: i64,
}

impl Mono {
    pub const ONE: Mono = Mono { deg4: 0, i: 0, j: 0 };

    pub fn new(deg4: i64, i: i64, j: i64) -> Self {
        Mono { deg4, i, j }
    }

    /// `q^e` under `nome`; fails when `e` has parts outside the generators.
    pub fn from_exp(nome: Nome, e: &ExpForm) -> Result<Mono, Error> {
        let s = nome.split(e);
        if !s.tag.is_zero() {
            return Err(Error::Unsupported(format!("exponent {e} is not a monomial under nome {}", nome.name())));
        }
        Ok(Mono { deg4: s.deg4, i: s.i, j: s.j })
    }

    pub fn mul(self, o: Mono) -> Mono {
        Mono { deg4: self.deg4 + o.deg4, i: self.i + o.i, j: self.j + o.j }
    }

    pub fn inv(self) -> Mono {
        Mono { deg4: -self.deg4, i: -self.i, j: -self.j }
    }

    pub fn pow(self, n: i64) -> Mono {
        Mono { deg4: self.deg4 * n, i: self.i * n, j: self.j * n }
    }

    pub fn coeff(self) -> Coeff {
        Coeff::mono(self.i, self.j, Q::one())
    }

    /// `c * self` as an exact series.
    pub fn series(self, c: &Coeff) -> PSeries {
        PSeries::term(self.deg4, &self.coeff() * c)
    }
}

/// `[e] = (q^e - q^{-e})/(q - q^{-1})` for `e` in the span of `1, k`.
pub fn qnum(e: &ExpForm) -> Result<Coeff, Error> {
    let (a, b, c, rest) = e.split_affine();
    if !c.is_zero() || !rest.is_zero() {
        return Err(Error::Unsupported(format!("q-number of {e} outside span{{1, k}}")));
    }
    let half = |v: &Q| -> Result<i64, Error> {
        let d = v * int(2);
        if d.is_integer() {
            i64::try_from(d.to_integer()).map_err(|_| Error::Unsupported("exponent too large".into()))
        } else {
            Err(Error::Unsupported(format!("exponent {e} is not half-integral")))
        }
    };
    let (i, j) = (half(&a)?, half(&b)?);
    if i == 0 && j == 0 {
        return Ok(Coeff::zero());
    }
    let num = &LPoly::mono(i, j, Q::one()) - &LPoly::mono(-i, -j, Q::one());
    Coeff::new(num, Coeff::q_minus_qinv().num().clone())
}

/// Integer q-number `[n]`.
pub fn qint(n: i64) -> Coeff {
    qnum(&ExpForm::int(n)).expect("integer q-number")
}

/// `1/(X - X^{-1})` for the monomial `X`, expanded in the nome when `X`
/// has nonzero degree and exact otherwise.
pub fn inv_binomial(x: Mono, prec4: i64) -> Result<PSeries, Error> {
    if x.deg4 == 0 {
        let d = &x.coeff() - &x.inv().coeff();
        return Ok(PSeries::constant(Coeff::one().try_div(&d)?));
    }
    // deg > 0: -sum X^{2m+1}; deg < 0: +sum X^{-(2m+1)}.
    let (base, sign) = if x.deg4 > 0 { (x, -1) } else { (x.inv(), 1) };
    let mut out = PSeries::zero_to(prec4);
    let mut m = 0;
    loop {
        let t = base.pow(2 * m + 1);
        if t.deg4 > prec4 {
            break;
        }
        out.add_term(t.deg4, t.coeff().scale(&int(sign)));
        m += 1;
    }
    Ok(out)
}

/// `[e]^{-1}` as a nome series: exact when `q^e` has nome degree zero.
pub fn inv_qnum(nome: Nome, e: &ExpForm, prec4: i64) -> Result<PSeries, Error> {
    let x = Mono::from_exp(nome, e)?;
    if x == Mono::ONE {
        return Err(Error::DivisionByZero);
    }
    Ok(inv_binomial(x, prec4)?.scale(&Coeff::q_minus_qinv()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllFamily {
    R,
    RStar,
}

/// `1/[r n]` or `1/[r* n]` in powers of `p`.
pub fn inv_qnum_ell(family: EllFamily, n: i64, prec4: i64) -> Result<PSeries, Error> {
    if n <= 0 {
        return Err(Error::Unsupported(format!("inverse elliptic q-number needs n >= 1, got {n}")));
    }
    let base = match family {
        EllFamily::R => ExpForm::r(),
        EllFamily::RStar => ExpForm::rstar(),
    };
    inv_qnum(Nome::P, &(base * ExpForm::int(n)), prec4)
}

/// `Θ_t(s x) = (s x; t)_∞ (t/(s x); t)_∞ (t; t)_∞`, exact in `x` with
/// coefficients truncated at nome degree `prec4`. Requires
/// `0 <= deg s <= deg t` and `deg t > 0`.
pub fn theta_series(s: Mono, t: Mono, prec4: i64) -> Result<XLaurent, Error> {
    if t.deg4 <= 0 {
        return Err(Error::Unsupported("theta base must have positive nome degree".into()));
    }
    if s.deg4 < 0 || s.deg4 > t.deg4 {
        return Err(Error::Unsupported("theta argument outside the fundamental strip".into()));
    }
    if prec4 < 0 {
        return Err(Error::Unsupported("negative order".into()));
    }
    let neg_one = Coeff::int(-1);
    let mut acc = XLaurent::one();
    let factor = |m: Mono, xp: i64| -> XLaurent { XLaurent::poly([(0, PSeries::one()), (xp, m.series(&neg_one))]) };
    // (s x; t)_∞
    let mut m = 0;
    loop {
        let c = s.mul(t.pow(m));
        if c.deg4 > prec4 {
            break;
        }
        acc = acc.mul(&factor(c, 1), prec4)?;
        m += 1;
    }
    // (t/(s x); t)_∞
    let mut m = 1;
    loop {
        let c = t.pow(m).mul(s.inv());
        if c.deg4 > prec4 {
            break;
        }
        acc = acc.mul(&factor(c, -1), prec4)?;
        m += 1;
    }
    // (t; t)_∞
    let mut m = 1;
    loop {
        let c = t.pow(m);
        if c.deg4 > prec4 {
            break;
        }
        acc = acc.mul(&factor(c, 0), prec4)?;
        m += 1;
    }
    Ok(acc.map_coeffs(|c| c.truncate(prec4)))
}

/// `Θ_t(s/x)`.
pub fn theta_series_inv(s: Mono, t: Mono, prec4: i64) -> Result<XLaurent, Error> {
    Ok(theta_series(s, t, prec4)?.reflect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `|x| < 1`
    Inner,
    /// `|x| > 1`
    Outer,
}

/// `1/(1 - c x)` expanded in the given domain, known on `|m| <= n`.
pub fn geom_expand(c: &Coeff, m: Mono, orient: Orientation, n: i64, prec4: i64) -> Result<XLaurent, Error> {
    match orient {
        Orientation::Inner => {
            let terms = (0..=n).map(|e| (e, m.pow(e).series(&c.pow(e).unwrap()).truncate(prec4)));
            Ok(XLaurent::with_range(NEG_INF, n, terms))
        }
        Orientation::Outer => {
            let ci = c.inv()?;
            let neg = Coeff::int(-1);
            let terms = (1..=n).map(|e| (-e, m.inv().pow(e).series(&(&ci.pow(e).unwrap() * &neg)).truncate(prec4)));
            Ok(XLaurent::with_range(-n, POS_INF, terms))
        }
    }
}

/// Truncation of `δ(c x) = Σ_{n ∈ Z} (c x)^n` to `|m| <= n`.
pub fn delta_series(c: &Coeff, m: Mono, n: i64, prec4: i64) -> Result<XLaurent, Error> {
    let mut terms = Vec::new();
    for e in -n..=n {
        terms.push((e, m.pow(e).series(&c.pow(e)?).truncate(prec4)));
    }
    Ok(XLaurent::with_range(-n, n, terms))
}

/// `θ_ν(u - v + a)/θ_ν(u - v + b) = y^{yexp} q^{qexp} Θ_{q^{2ν}}(q^{2a} y)/Θ_{q^{2ν}}(q^{2b} y)`
/// with `y = z/w = q^{2(u-v)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiRatio {
    pub yexp: ExpForm,
    pub qexp: ExpForm,
    /// Exponent of the theta base, `2ν`.
    pub base: ExpForm,
    pub num_shift: ExpForm,
    pub den_shift: ExpForm,
}

/// Period `ν` of a Jacobi theta function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Period {
    R,
    RStar,
    /// `k + 2`, the period of the level-shifted factors.
    KPlus2,
}

impl Period {
    pub fn exp(self) -> ExpForm {
        match self {
            Period::R => ExpForm::r(),
            Period::RStar => ExpForm::rstar(),
            Period::KPlus2 => ExpForm::k() + ExpForm::int(2),
        }
    }

    fn inv(self) -> ExpForm {
        match self {
            Period::R => ExpForm::inv_r(),
            Period::RStar => ExpForm::inv_rstar(),
            Period::KPlus2 => ExpForm::inv_kp2(),
        }
    }
}

pub fn jacobi_ratio_to_canonical(a: &Q, b: &Q, nu: Period) -> JacobiRatio {
    jacobi_ratio(&ExpForm::rational(a.clone()), &ExpForm::rational(b.clone()), nu)
}

/// [`jacobi_ratio_to_canonical`] with shifts in the exponent field, e.g.
/// `l/2 - k/4`.
pub fn jacobi_ratio(a: &ExpForm, b: &ExpForm, nu: Period) -> JacobiRatio {
    let inv = nu.inv();
    let d = a - b;
    let sq = &(a * a) - &(b * b);
    JacobiRatio {
        yexp: &inv * &d,
        qexp: &(&inv * &sq) - &d,
        base: nu.exp() * ExpForm::int(2),
        num_shift: a * &ExpForm::int(2),
        den_shift: b * &ExpForm::int(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::EXACT;

    fn p() -> Mono {
        Mono::new(4, 0, 0)
    }

    #[test]
    fn qnum_examples() {
        assert!(qnum(&ExpForm::int(1)).unwrap().is_one());
        assert_eq!(qnum(&ExpForm::int(2)).unwrap(), Coeff::q_plus_qinv());
        assert!(qnum(&ExpForm::zero()).unwrap().is_zero());
        assert!(qnum(&ExpForm::r()).is_err());
        let k = qnum(&ExpForm::k()).unwrap();
        assert!(Coeff::one().try_div(&k).is_ok());
    }

    #[test]
    fn inverse_r_example() {
        // -(q - q^{-1})(p^{1/2} + p^{3/2})
        let s = inv_qnum_ell(EllFamily::R, 1, 8).unwrap();
        let c = -Coeff::q_minus_qinv();
        let expect = PSeries::from_terms([(2, c.clone()), (6, c)], 8);
        assert!(s.eq_upto(&expect, 8));
        assert!(inv_qnum_ell(EllFamily::R, 2, 0).unwrap().is_zero());
        assert!(inv_qnum_ell(EllFamily::R, 0, 4).is_err());
    }

    /// Jacobi triple product: `Θ_t(s x) = Σ (-1)^n t^{n(n-1)/2} s^n x^n`.
    fn triple_product(s: Mono, t: Mono, prec4: i64, n: i64) -> XLaurent {
        let terms = (-n..=n).map(|e| {
            let m = t.pow(e * (e - 1) / 2).mul(s.pow(e));
            let sign = if e % 2 == 0 { 1 } else { -1 };
            (e, m.series(&Coeff::int(sign)).truncate(prec4))
        });
        XLaurent::with_range(-n, n, terms)
    }

    #[test]
    fn theta_matches_triple_product() {
        let pstar = Mono::new(4, 0, -4);
        for (s, t) in [(Mono::ONE, p()), (Mono::new(0, 4, 0), p()), (Mono::new(2, -2, 1), p()), (Mono::new(0, 4, 0), pstar)] {
            let th = theta_series(s, t, 12).unwrap();
            let tp = triple_product(s, t, 12, 6);
            assert!(matches!(th.compare(&tp, 6, 12), crate::qseries::Comparison::Agree { .. }));
        }
        // x^{-1} coefficient of Θ_p(x) is -p.
        let th = theta_series(Mono::ONE, p(), 4).unwrap();
        assert_eq!(th.coeff(-1).unwrap().coeff(4).unwrap(), Coeff::int(-1));
        assert!(th.coeff(0).unwrap().truncate(4).eq_upto(&PSeries::one(), 4));
    }

    #[test]
    fn geom_examples() {
        let g = geom_expand(&Coeff::one(), Mono::ONE, Orientation::Inner, 3, EXACT).unwrap();
        for m in 0..=3 {
            assert!(g.coeff(m).unwrap().coeff(0).unwrap().is_one());
        }
        let g = geom_expand(&Coeff::q(2), Mono::ONE, Orientation::Outer, 2, EXACT).unwrap();
        assert_eq!(g.coeff(-1).unwrap().coeff(0).unwrap(), -Coeff::q(-2));
        assert_eq!(g.coeff(-2).unwrap().coeff(0).unwrap(), -Coeff::q(-4));
    }

    #[test]
    fn jacobi_examples() {
        let j = jacobi_ratio_to_canonical(&int(1), &int(1), Period::R);
        assert!(j.yexp.is_zero() && j.qexp.is_zero());
        let l = int(3);
        let half = Q::new(1.into(), 2.into());
        let j = jacobi_ratio_to_canonical(&(&l * &half), &(-&l * &half), Period::R);
        assert_eq!(j.yexp, ExpForm::int(3) * ExpForm::inv_r());
        assert_eq!(j.qexp, ExpForm::int(-3));
    }
}
