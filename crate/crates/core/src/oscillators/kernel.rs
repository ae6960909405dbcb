//! The kernel grammar `n -> c [L_1 n]...[L_s n]/([M_1 n]...[M_t n]) q^{βn} [2]^{b n}`.

use std::fmt;

use crate::qseries::special::{inv_qnum, Mono};
use crate::qseries::{Coeff, ExpForm, Nome, PSeries};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub c: Coeff,
    pub ls: Vec<ExpForm>,
    pub ms: Vec<ExpForm>,
    pub beta: ExpForm,
    /// Power of `[2] = q + q^{-1}` per unit of `n`.
    pub br2: i32,
}

impl Kernel {
    pub fn new(c: Coeff, ls: Vec<ExpForm>, ms: Vec<ExpForm>, beta: ExpForm) -> Result<Kernel, Error> {
        if ls.iter().any(|l| l.is_zero()) {
            return Err(Error::Unsupported("kernel numerator [0 n] vanishes identically".into()));
        }
        if ms.iter().any(|m| m.is_zero()) {
            return Err(Error::DivisionByZero);
        }
        Ok(Kernel { c, ls, ms, beta, br2: 0 }.normalized())
    }

    /// `c q^{βn}`.
    pub fn mono(c: Coeff, beta: ExpForm) -> Kernel {
        Kernel { c, ls: vec![], ms: vec![], beta, br2: 0 }
    }

    /// Cancels numerator and denominator q-numbers that agree up to sign.
    pub fn normalized(mut self) -> Kernel {
        let mut ms = std::mem::take(&mut self.ms);
        let mut ls = Vec::new();
        for l in std::mem::take(&mut self.ls) {
            if let Some(pos) = ms.iter().position(|m| *m == l) {
                ms.remove(pos);
            } else if let Some(pos) = ms.iter().position(|m| *m == -l.clone()) {
                ms.remove(pos);
                self.c = -self.c;
            } else {
                ls.push(l);
            }
        }
        ls.sort();
        ms.sort();
        self.ls = ls;
        self.ms = ms;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn mul(&self, o: &Kernel) -> Kernel {
        let mut ls = self.ls.clone();
        ls.extend(o.ls.iter().cloned());
        let mut ms = self.ms.clone();
        ms.extend(o.ms.iter().cloned());
        Kernel { c: &self.c * &o.c, ls, ms, beta: &self.beta + &o.beta, br2: self.br2 + o.br2 }.normalized()
    }

    pub fn scale(&self, c: &Coeff) -> Kernel {
        Kernel { c: &self.c * c, ..self.clone() }
    }

    pub fn shift_beta(&self, d: &ExpForm) -> Kernel {
        Kernel { beta: &self.beta + d, ..self.clone() }
    }

    /// Whether the kernel involves `r` (elliptic) anywhere.
    pub fn is_elliptic(&self) -> bool {
        let has_r = |e: &ExpForm| {
            let (_, _, c, rest) = e.split_affine();
            !num_traits::Zero::is_zero(&c) || !rest.is_zero()
        };
        self.ls.iter().chain(self.ms.iter()).any(has_r) || has_r(&self.beta)
    }

    /// The value at mode index `n >= 1`, truncated at nome degree `prec4`.
    pub fn eval(&self, n: i64, nome: Nome, prec4: i64) -> Result<PSeries, Error> {
        let nf = ExpForm::int(n);
        let mut exact = PSeries::constant(self.c.clone());
        let b = Mono::from_exp(nome, &(&self.beta * &nf))?;
        exact = &exact * &b.series(&Coeff::one());
        if self.br2 != 0 {
            exact = exact.scale(&Coeff::q_plus_qinv().pow(self.br2 as i64 * n)?);
        }
        let qq = Coeff::q_minus_qinv().inv()?;
        for l in &self.ls {
            let x = Mono::from_exp(nome, &(l * &nf))?;
            let s = &x.series(&qq) - &x.inv().series(&qq);
            exact = &exact * &s;
        }
        let mut invs: Vec<(Mono, ExpForm)> = Vec::new();
        for m in &self.ms {
            let e = m * &nf;
            let x = Mono::from_exp(nome, &e)?;
            if x.deg4 == 0 {
                exact = &exact * &inv_qnum(nome, &e, 0)?;
            } else {
                invs.push((x, e));
            }
        }
        if exact.is_zero() {
            return Ok(PSeries::zero());
        }
        let ve = exact.val();
        let vals: Vec<i64> = invs.iter().map(|(x, _)| x.deg4.abs()).collect();
        let total: i64 = vals.iter().sum();
        let mut acc = exact.truncate(prec4 - total);
        for (j, (_, e)) in invs.iter().enumerate() {
            let need = prec4 - ve - (total - vals[j]);
            let s = inv_qnum(nome, e, need)?;
            acc = acc.mul_to(&s, prec4);
        }
        Ok(acc.truncate(prec4))
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c)?;
        for l in &self.ls {
            write!(f, "*[({l})n]")?;
        }
        if !self.ms.is_empty() {
            write!(f, "/(")?;
            for (i, m) in self.ms.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                write!(f, "[({m})n]")?;
            }
            write!(f, ")")?;
        }
        if !self.beta.is_zero() {
            write!(f, "*q^(({})n)", self.beta)?;
        }
        if self.br2 != 0 {
            write!(f, "*[2]^({}n)", self.br2)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::special::{inv_qnum_ell, EllFamily};

    #[test]
    fn cancels_matching_factors() {
        let kp2 = ExpForm::k() + ExpForm::int(2);
        let k = Kernel::new(Coeff::one(), vec![kp2.clone()], vec![kp2.clone(), ExpForm::int(1)], ExpForm::zero()).unwrap();
        assert!(k.ls.is_empty());
        assert_eq!(k.ms, vec![ExpForm::int(1)]);
        let k = Kernel::new(Coeff::one(), vec![-kp2.clone()], vec![kp2], ExpForm::zero()).unwrap();
        assert_eq!(k.c, Coeff::int(-1));
    }

    #[test]
    fn elliptic_denominator_expands() {
        // -q^{-n}/[r n] at n = 1 equals -q^{-1} * invQnumEll(r, 1).
        let k = Kernel::new(Coeff::int(-1), vec![], vec![ExpForm::r()], ExpForm::int(-1)).unwrap();
        let v = k.eval(1, Nome::P, 12).unwrap();
        let expect = inv_qnum_ell(EllFamily::R, 1, 12).unwrap().scale(&(-Coeff::q(-1)));
        assert!(v.eq_upto(&expect, 12));
        assert_eq!(v.prec(), 12);
    }

    #[test]
    fn negative_valuation_is_compensated() {
        // [r n] / [r n] is not cancelled when written with different forms,
        // but the evaluated product must still be exactly one.
        let r2 = ExpForm::r() * ExpForm::int(2);
        let k = Kernel { c: Coeff::one(), ls: vec![r2.clone()], ms: vec![ExpForm::r()], beta: ExpForm::zero(), br2: 0 };
        // [2rn]/[rn] = q^{rn} + q^{-rn}: has a p^{-n/2} term and is exact.
        let v = k.eval(1, Nome::P, 8).unwrap();
        assert_eq!(v.coeff(-2).unwrap(), Coeff::one());
        assert_eq!(v.coeff(2).unwrap(), Coeff::one());
        assert!(v.coeff(6).unwrap().is_zero());
    }
}
