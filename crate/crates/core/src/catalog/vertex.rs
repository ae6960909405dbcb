//! Highest components of the vertex operators, plain and twisted.

use super::fields::{comp, Conventions};
use crate::oscillators::{Family, LinForm, Side, Zero};
use crate::qseries::ExpForm;
use crate::Result;

use Family::{A, B, C};
use Side::{Ann, Cre};

fn e(n: i64) -> ExpForm {
    ExpForm::int(n)
}

fn k() -> ExpForm {
    ExpForm::k()
}

fn kp2() -> ExpForm {
    k() + e(2)
}

fn half(x: ExpForm) -> ExpForm {
    x * ExpForm::frac(1, 2)
}

fn r() -> ExpForm {
    ExpForm::r()
}

fn rs() -> ExpForm {
    ExpForm::rstar()
}

/// `l q_a / (2(k+2))`.
fn qa_weight(l: ExpForm) -> LinForm {
    LinForm::q_mode(Zero::A, half(l) * ExpForm::inv_kp2())
}

impl Conventions {
    /// `-A_+(l, r*; 2, k, r|w; (k+2)/2) - B_+(l, r*; 1, k, r|w; k+1)`.
    pub fn v_plus(&self, l: i64) -> Result<LinForm> {
        let l = e(l);
        Ok(LinForm::sum(&[
            comp(A, Ann, &[l.clone(), rs()], &[e(2), k(), r()], half(kp2()))?.neg(),
            comp(B, Ann, &[l, rs()], &[e(1), k(), r()], k() + e(1))?.neg(),
        ]))
    }

    /// `A_-(-l, r; 2, k, r*|w; (k-2)/2) + B_-(-l, r; 1, k, r*|w; -1)`.
    pub fn v_minus(&self, l: i64) -> Result<LinForm> {
        let l = e(l);
        Ok(LinForm::sum(&[
            comp(A, Cre, &[-l.clone(), r()], &[e(2), k(), rs()], half(k() - e(2)))?,
            comp(B, Cre, &[-l, r()], &[e(1), k(), rs()], e(-1))?,
        ]))
    }

    pub fn phi(&self, l: i64) -> Result<LinForm> {
        let lf = e(l);
        let ir2 = half(ExpForm::inv_r());
        Ok(LinForm::sum(&[
            self.v_plus(l)?,
            comp(A, Cre, std::slice::from_ref(&lf), &[e(2), kp2()], half(kp2()))?,
            comp(A, Ann, std::slice::from_ref(&lf), &[k(), kp2()], half(kp2()))?,
            comp(B, Ann, std::slice::from_ref(&lf), &[e(1), k()], e(1))?,
            qa_weight(lf.clone()),
            LinForm::p_ln_z(Zero::B, -(e(2) * lf.clone() * ir2.clone())),
            LinForm::p_ln_z(Zero::Hat, -(lf * ir2)),
        ]))
    }

    pub fn psi_star(&self, l: i64) -> Result<LinForm> {
        let lf = e(l);
        let nl = -lf.clone();
        Ok(LinForm::sum(&[
            self.v_minus(l)?,
            comp(A, Cre, &[nl.clone(), k() + e(1)], &[e(1), k(), kp2()], -half(kp2()))?.neg(),
            comp(A, Ann, std::slice::from_ref(&nl), &[e(2), kp2()], half(kp2()))?,
            comp(B, Cre, &[nl.clone(), k() + e(1)], &[e(1), e(1), k()], e(-1))?.neg(),
            comp(B, Ann, std::slice::from_ref(&nl), &[e(1), e(1)], e(0))?,
            comp(C, Cre, std::slice::from_ref(&nl), &[e(1), e(1)], e(0))?.neg(),
            comp(C, Ann, &[nl], &[e(1), e(1)], e(0))?,
            qa_weight(lf.clone()),
            LinForm::q_mode(Zero::B, lf.clone()),
            LinForm::q_mode(Zero::C, lf.clone()),
            LinForm::q_mode(Zero::Hat, -lf.clone()),
            LinForm::p_ln_z(Zero::Hat, half(lf) * ExpForm::inv_rstar()),
        ]))
    }

    pub fn phi_twisted(&self, l: i64) -> Result<LinForm> {
        let lf = e(l);
        let kl = k() - lf.clone();
        Ok(LinForm::sum(&[
            self.v_plus(l)?,
            comp(A, Cre, &[&kl + &e(1)], &[e(1), kp2()], -half(kp2()))?,
            comp(B, Cre, &[&kl + &e(1)], &[e(1), e(1)], e(-1))?,
            comp(A, Ann, &[kl.clone(), k() + e(1)], &[e(1), k(), kp2()], half(kp2()))?.neg(),
            comp(B, Ann, &[kl.clone(), k() + e(1)], &[e(1), e(1), k()], e(1))?.neg(),
            comp(C, Cre, std::slice::from_ref(&kl), &[e(1), e(1)], e(0))?,
            comp(C, Ann, std::slice::from_ref(&kl), &[e(1), e(1)], e(0))?.neg(),
            qa_weight(kl.clone()),
            LinForm::q_mode(Zero::B, kl.clone()),
            LinForm::q_mode(Zero::C, kl),
            LinForm::q_mode(Zero::Hat, rs()),
            LinForm::p_ln_z(Zero::C, (lf.clone() - r()) * ExpForm::inv_r()),
            LinForm::p_ln_z(Zero::Hat, -(half(lf) * ExpForm::inv_r())),
        ]))
    }

    pub fn psi_star_twisted(&self, l: i64) -> Result<LinForm> {
        let lf = e(l);
        let kl = k() - lf.clone();
        Ok(LinForm::sum(&[
            self.v_minus(l)?,
            comp(A, Cre, &[-kl.clone()], &[k(), kp2()], -half(kp2()))?,
            comp(B, Cre, &[-kl.clone()], &[e(1), k()], e(-1))?,
            comp(A, Ann, &[lf.clone() + e(2)], &[e(2), kp2()], half(kp2()))?,
            comp(B, Ann, &[], &[e(1)], lf.clone() + e(1))?,
            qa_weight(kl),
            LinForm::q_mode(Zero::Hat, -(lf.clone() + rs())),
            LinForm::p_ln_z(Zero::B, e(-1)),
            LinForm::p_ln_z(Zero::Hat, half(lf) * ExpForm::inv_rstar()),
        ]))
    }
}
