//! Scalar monomials `c q^{a} z^{b} w^{d}` and their normal form in `x = w/z`.

use num_traits::ToPrimitive;

use crate::qseries::special::Mono;
use crate::qseries::{Coeff, ExpForm, Nome, PSeries};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coef: Coeff,
    pub qexp: ExpForm,
    pub zexp: ExpForm,
    pub wexp: ExpForm,
}

/// The part of a monomial that cannot be absorbed into a series in `x`:
/// the total z-power, the non-integral x-power and the q-exponent outside
/// the nome generators. Terms are comparable only under equal keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonoKey {
    pub ztot: ExpForm,
    pub xfrac: ExpForm,
    pub qtag: ExpForm,
}

impl std::fmt::Display for MonoKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "z^({}) x^({}) q^({})", self.ztot, self.xfrac, self.qtag)
    }
}

/// `series · x^{xint}` under `key`.
#[derive(Clone, Debug)]
pub struct NormMono {
    pub key: MonoKey,
    pub xint: i64,
    pub series: PSeries,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { coef: Coeff::one(), qexp: ExpForm::zero(), zexp: ExpForm::zero(), wexp: ExpForm::zero() }
    }

    pub fn scalar(c: Coeff) -> Self {
        Monomial { coef: c, ..Monomial::one() }
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial { coef: &self.coef * &o.coef, qexp: &self.qexp + &o.qexp, zexp: &self.zexp + &o.zexp, wexp: &self.wexp + &o.wexp }
    }

    /// Multiplies by `y^e = z^e w^{-e}`.
    pub fn times_y(&self, e: &ExpForm) -> Monomial {
        Monomial { zexp: &self.zexp + e, wexp: &self.wexp - e, ..self.clone() }
    }

    /// `z^a w^b = z^{a+b} x^b`; the integral part of `b` becomes `xint`.
    pub fn normalize(&self, nome: Nome) -> Result<NormMono> {
        let (a, _, _, _) = self.wexp.split_affine();
        let fl = a.floor();
        let xint = fl.to_integer().to_i64().ok_or_else(|| crate::Error::Internal("x-power overflow".into()))?;
        let xfrac = &self.wexp - &ExpForm::rational(fl);
        let s = nome.split(&self.qexp);
        let series = Mono::new(s.deg4, s.i, s.j).series(&self.coef);
        Ok(NormMono { key: MonoKey { ztot: &self.zexp + &self.wexp, xfrac, qtag: s.tag }, xint, series })
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) q^({}) z^({}) w^({})", self.coef, self.qexp, self.zexp, self.wexp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_splits_integral_x_power() {
        let m = Monomial { coef: Coeff::one(), qexp: ExpForm::int(3), zexp: ExpForm::int(1), wexp: ExpForm::frac(-3, 2) + ExpForm::inv_r() };
        let n = m.normalize(Nome::P).unwrap();
        assert_eq!(n.xint, -2);
        assert_eq!(n.key.xfrac, ExpForm::frac(1, 2) + ExpForm::inv_r());
        assert_eq!(n.key.ztot, ExpForm::frac(-1, 2) + ExpForm::inv_r());
        assert!(n.key.qtag.is_zero());
    }

    #[test]
    fn y_power_moves_between_variables() {
        let m = Monomial::one().times_y(&ExpForm::int(2));
        let n = m.normalize(Nome::P).unwrap();
        assert_eq!(n.xint, -2);
        assert!(n.key.ztot.is_zero());
    }
}
