//! Exact scalars: fractions of Laurent polynomials in `q^{1/2}`, `q^{k/2}`.
//!
//! Fractions are reduced lazily. Monomial denominators are absorbed and an
//! exact polynomial quotient is attempted after every operation, but
//! equality never relies on reduction: it is decided by cross-multiplication.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::lpoly::LPoly;
use super::{int, Q};
use crate::Error;

#[derive(Clone)]
pub struct Coeff {
    num: LPoly,
    den: LPoly,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { num: LPoly::zero(), den: LPoly::one() }
    }

    pub fn one() -> Self {
        Coeff { num: LPoly::one(), den: LPoly::one() }
    }

    pub fn from_poly(p: LPoly) -> Self {
        Coeff { num: p, den: LPoly::one() }
    }

    pub fn rational(c: Q) -> Self {
        Self::from_poly(LPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::rational(int(n))
    }

    /// `c q^{i/2} q^{kj/2}`.
    pub fn mono(i: i64, j: i64, c: Q) -> Self {
        Self::from_poly(LPoly::mono(i, j, c))
    }

    /// `q^e`, integer `e`.
    pub fn q(e: i64) -> Self {
        Self::from_poly(LPoly::q(e))
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        Self::from_poly(&LPoly::q(1) - &LPoly::q(-1))
    }

    /// `q + q^{-1}`.
    pub fn q_plus_qinv() -> Self {
        Self::from_poly(&LPoly::q(1) + &LPoly::q(-1))
    }

    pub fn new(num: LPoly, den: LPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Coeff { num, den }.reduced())
    }

    pub fn num(&self) -> &LPoly {
        &self.num
    }

    pub fn den(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Coeff::one()
    }

    /// The underlying Laurent polynomial when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Q> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn has_k(&self) -> bool {
        self.num.has_k() || self.den.has_k()
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den = LPoly::one();
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        if let Some(((i, j), c)) = self.den.as_mono() {
            let inv = Q::one() / c;
            self.num = self.num.shift(-i, -j).scale(&inv);
            self.den = LPoly::one();
            return self;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            return Coeff { num: q, den: LPoly::one() };
        }
        // Normalize the denominator's leading coefficient and lowest key.
        let ((li, lj), _) = self.den.lowest().cloned().unwrap();
        let lc = self.den.leading().unwrap().1.clone();
        let inv = Q::one() / lc;
        self.num = self.num.shift(-li, -lj).scale(&inv);
        self.den = self.den.shift(-li, -lj).scale(&inv);
        self
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Coeff { num: self.den.clone(), den: self.num.clone() }.reduced())
    }

    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        if e >= 0 {
            Ok(Coeff { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }.reduced())
        } else {
            self.inv()?.pow(-e)
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Coeff { num: self.num.scale(c), den: self.den.clone() }.reduced()
    }

    /// Multiplies by `q^{i/2} q^{kj/2}`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        Coeff { num: self.num.shift(i, j), den: self.den.clone() }
    }

    pub fn try_div(&self, o: &Coeff) -> Result<Self, Error> {
        Ok(self * &o.inv()?)
    }
}

impl PartialEq for Coeff {
    fn eq(&self, o: &Coeff) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for Coeff {}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Coeff { num: &self.num + &o.num, den: self.den.clone() }.reduced();
        }
        if self.den.is_one() {
            return Coeff { num: &(&self.num * &o.den) + &o.num, den: o.den.clone() }.reduced();
        }
        if o.den.is_one() {
            return Coeff { num: &self.num + &(&o.num * &self.den), den: self.den.clone() }.reduced();
        }
        // One denominator may divide the other.
        if let Some(f) = o.den.div_exact(&self.den) {
            return Coeff { num: &(&self.num * &f) + &o.num, den: o.den.clone() }.reduced();
        }
        if let Some(f) = self.den.div_exact(&o.den) {
            return Coeff { num: &self.num + &(&o.num * &f), den: self.den.clone() }.reduced();
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        let den = &self.den * &o.den;
        // Try cancelling either original denominator.
        if let Some(n2) = num.div_exact(&self.den) {
            return Coeff { num: n2, den: o.den.clone() }.reduced();
        }
        if let Some(n2) = num.div_exact(&o.den) {
            return Coeff { num: n2, den: self.den.clone() }.reduced();
        }
        Coeff { num, den }.reduced()
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &(-o.clone())
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        if self.is_zero() || o.is_zero() {
            return Coeff::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Coeff { num: &self.num * &o.num, den: LPoly::one() };
        }
        // Cross-cancel before multiplying out.
        let (mut n1, mut d1) = (self.num.clone(), self.den.clone());
        let (mut n2, mut d2) = (o.num.clone(), o.den.clone());
        if !d2.is_one() {
            if let Some(q) = n1.div_exact(&d2) {
                n1 = q;
                d2 = LPoly::one();
            }
        }
        if !d1.is_one() {
            if let Some(q) = n2.div_exact(&d1) {
                n2 = q;
                d1 = LPoly::one();
            }
        }
        Coeff { num: &n1 * &n2, den: &d1 * &d2 }.reduced()
    }
}

impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    /// Panics on a zero divisor; use [`Coeff::try_div`] for a checked form.
    fn div(self, o: &Coeff) -> Coeff {
        self.try_div(o).expect("division by zero coefficient")
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { num: -self.num, den: self.den }
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, o: Coeff) -> Coeff {
        &self + &o
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, o: Coeff) -> Coeff {
        &self - &o
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, o: Coeff) -> Coeff {
        &self * &o
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Coeff {
    fn one() -> Self {
        Coeff::one()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.terms().len() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_identities() {
        let a = Coeff::q(1) + Coeff::q(-1);
        assert_eq!(a, Coeff::q_plus_qinv());
        let k = Coeff::from_poly(&LPoly::mono(0, 2, int(1)) - &LPoly::mono(0, -2, int(1)));
        let inv = Coeff::one().try_div(&k).unwrap();
        assert_eq!(&inv * &k, Coeff::one());
        assert!(Coeff::one().try_div(&Coeff::zero()).is_err());
    }

    #[test]
    fn sums_of_fractions_reduce() {
        // 1/(1-q) + q/(1-q) ... = (1+q)/(1-q); times (1-q) is 1+q.
        let d = Coeff::from_poly(&LPoly::one() - &LPoly::q(1));
        let s = &Coeff::one().try_div(&d).unwrap() + &Coeff::q(1).try_div(&d).unwrap();
        let back = &s * &d;
        assert_eq!(back.as_poly().unwrap(), &(&LPoly::one() + &LPoly::q(1)));
    }
}
