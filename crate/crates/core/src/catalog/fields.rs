//! Field constructors, transcribed term by term.

use crate::oscillators::{Family, LinForm, Reading, Side, Zero};
use crate::qseries::{int, Coeff, ExpForm};
use crate::vop::{OperatorExpr, Term};
use crate::Result;

use Family::{A, B, C};

fn e(n: i64) -> ExpForm {
    ExpForm::int(n)
}

fn fr(n: i64, d: i64) -> ExpForm {
    ExpForm::frac(n, d)
}

fn k() -> ExpForm {
    ExpForm::k()
}

fn kp2() -> ExpForm {
    k() + e(2)
}

fn r() -> ExpForm {
    ExpForm::r()
}

fn rs() -> ExpForm {
    ExpForm::rstar()
}

/// `f(q^γ z)` with coefficient `c`, no α.
fn fld(f: Family, gamma: ExpForm, c: i64) -> LinForm {
    LinForm::field(f, &gamma, &ExpForm::zero(), &int(c))
}

/// `F_±(L; M | z; α)`.
pub fn comp(f: Family, side: Side, ls: &[ExpForm], ms: &[ExpForm], alpha: ExpForm) -> Result<LinForm> {
    LinForm::compound(f, side, ls, ms, &alpha)
}

/// `-1/((q - q^{-1}) z)`.
fn current_weight() -> (Coeff, LinForm) {
    let w = -Coeff::q_minus_qinv().inv().expect("q - 1/q is nonzero");
    (w, LinForm::z_pow(e(-1)))
}

fn two_term(a: LinForm, b: LinForm) -> OperatorExpr {
    let (w, z) = current_weight();
    OperatorExpr::difference(w, a.add(&z), b.add(&z))
}

/// Options for the readings left open by the printed formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Conventions {
    /// How `(q + q^{-1}) z` in the twisting currents acts on modes.
    pub reading: Reading,
}

impl Conventions {
    pub fn new(reading: Reading) -> Self {
        Conventions { reading }
    }

    pub fn psi_plus(&self) -> LinForm {
        LinForm::sum(&[LinForm::plus(B, &(k() * fr(1, 2))), LinForm::plus(A, &e(1)), LinForm::plus(B, &(k() * fr(1, 2) + e(2)))])
    }

    pub fn psi_minus(&self) -> LinForm {
        LinForm::sum(&[LinForm::minus(B, &-(k() * fr(1, 2))), LinForm::minus(A, &e(-1)), LinForm::minus(B, &-(k() * fr(1, 2) + e(2)))])
    }

    /// `b_+(z) - (b + c)(qz)` and `b_-(z) - (b + c)(q^{-1}z)`.
    pub fn e_plus(&self) -> OperatorExpr {
        let t1 = LinForm::sum(&[LinForm::plus(B, &e(0)), fld(B, e(1), -1), fld(C, e(1), -1)]);
        let t2 = LinForm::sum(&[LinForm::minus(B, &e(0)), fld(B, e(-1), -1), fld(C, e(-1), -1)]);
        two_term(t1, t2)
    }

    pub fn e_minus(&self) -> OperatorExpr {
        let g = k() + e(1);
        let t1 = LinForm::sum(&[fld(B, -g.clone(), 1), fld(C, -g.clone(), 1), LinForm::minus(A, &-(kp2() * fr(1, 2))), LinForm::minus(B, &-kp2())]);
        let t2 = LinForm::sum(&[fld(B, g.clone(), 1), fld(C, g, 1), LinForm::plus(A, &(kp2() * fr(1, 2))), LinForm::plus(B, &kp2())]);
        two_term(t1, t2)
    }

    /// `a*_-(q^{r*+k/2-1} z) + b*_-(q^{r*-1}(q+q^{-1}) z)`.
    pub fn u_plus(&self) -> LinForm {
        let ga = rs() + k() * fr(1, 2) - e(1);
        let gb = rs() - e(1);
        LinForm::star_minus(A, &ga, false, self.reading).add(&LinForm::star_minus(B, &gb, true, self.reading))
    }

    /// `a*_+(q^{-(r-k/2-1)} z) + b*_+(q^{-(r-k-1)}(q+q^{-1}) z)`.
    pub fn u_minus(&self) -> LinForm {
        let ga = -(r() - k() * fr(1, 2) - e(1));
        let gb = -(r() - k() - e(1));
        LinForm::star_plus(A, &ga, false, self.reading).add(&LinForm::star_plus(B, &gb, true, self.reading))
    }

    pub fn big_psi_plus(&self) -> LinForm {
        let h = k() * fr(1, 2);
        LinForm::sum(&[self.u_plus().shift_arg(&h), self.psi_plus(), self.u_minus().shift_arg(&-h)])
    }

    pub fn big_psi_minus(&self) -> LinForm {
        let h = k() * fr(1, 2);
        LinForm::sum(&[self.u_plus().shift_arg(&-h.clone()), self.psi_minus(), self.u_minus().shift_arg(&h)])
    }

    pub fn e_ell(&self) -> OperatorExpr {
        let u = self.u_plus();
        OperatorExpr::from_terms(self.e_plus().terms.into_iter().map(|t| Term { weight: t.weight, op: u.add(&t.op) }).collect())
    }

    pub fn f_ell(&self) -> OperatorExpr {
        self.e_minus().times(&self.u_minus())
    }

    /// `e^{2q̂} (q^{∓k/2} z)^{(2p_b+p_a)/r} (q^{±(r-k/2)} z)^{(p̂-1)(1/r - 1/r*)}`.
    fn h_zero(&self, sign: i64) -> LinForm {
        let s = e(sign);
        let ir = ExpForm::inv_r();
        let d = &ir - &ExpForm::inv_rstar();
        let g1 = -(s.clone() * k() * fr(1, 2));
        let g2 = s * (r() - k() * fr(1, 2));
        let mut l = LinForm::q_mode(Zero::Hat, e(2));
        l = l.add(&LinForm::p_ln_z(Zero::B, e(2) * ir.clone())).add(&LinForm::p_ln_z(Zero::A, ir.clone()));
        l = l.add(&LinForm::p_ln_q(Zero::B, e(2) * ir.clone() * g1.clone())).add(&LinForm::p_ln_q(Zero::A, ir * g1));
        l = l.add(&LinForm::p_ln_z(Zero::Hat, d.clone())).add(&LinForm::z_pow(-d.clone()));
        l.add(&LinForm::p_ln_q(Zero::Hat, &d * &g2)).add(&LinForm::q_pow(-(&d * &g2)))
    }

    pub fn h_plus(&self) -> LinForm {
        self.big_psi_plus().add(&self.h_zero(1))
    }

    pub fn h_minus(&self) -> LinForm {
        self.big_psi_minus().add(&self.h_zero(-1))
    }

    /// `e(z) e^{2q̂} z^{-(p̂-1)/r*}`.
    pub fn big_e(&self) -> OperatorExpr {
        let irs = ExpForm::inv_rstar();
        let z = LinForm::q_mode(Zero::Hat, e(2)).add(&LinForm::p_ln_z(Zero::Hat, -irs.clone())).add(&LinForm::z_pow(irs));
        self.e_ell().times(&z)
    }

    /// `f(z) z^{(2p_b+p_a)/r} z^{(p̂-1)/r}`.
    pub fn big_f(&self) -> OperatorExpr {
        let ir = ExpForm::inv_r();
        let z = LinForm::sum(&[
            LinForm::p_ln_z(Zero::B, e(2) * ir.clone()),
            LinForm::p_ln_z(Zero::A, ir.clone()),
            LinForm::p_ln_z(Zero::Hat, ir.clone()),
            LinForm::z_pow(-ir),
        ]);
        self.f_ell().times(&z)
    }

    /// `c(z) + q_a/2 + q_b - r* q̂`.
    pub fn s_one(&self) -> LinForm {
        LinForm::sum(&[fld(C, e(0), 1), LinForm::q_mode(Zero::A, fr(1, 2)), LinForm::q_mode(Zero::B, e(1)), LinForm::q_mode(Zero::Hat, -rs())])
    }

    /// The common part `A_+(k+2|z;(k+2)/2) - (q_a + p_a ln z)/(k+2) + A_-(-(k+2)|z;-(k+2)/2)`.
    fn s_two_common(&self) -> Result<LinForm> {
        let h = kp2() * fr(1, 2);
        let ik = ExpForm::inv_kp2();
        Ok(LinForm::sum(&[
            comp(A, Side::Ann, &[], &[kp2()], h.clone())?,
            LinForm::q_mode(Zero::A, -ik.clone()),
            LinForm::p_ln_z(Zero::A, -ik),
            comp(A, Side::Cre, &[], &[-kp2()], -h)?,
        ]))
    }

    /// `A(z)` and `B(z)` of `S_II(z) = -1/((q-q^{-1})z) [A(z) - B(z)]`.
    pub fn s_two_parts(&self) -> Result<(LinForm, LinForm)> {
        let c = self.s_two_common()?;
        let a = LinForm::sum(&[c.clone(), LinForm::minus(B, &e(0)).neg(), fld(B, e(1), -1), fld(C, e(1), -1)]);
        let b = LinForm::sum(&[c, LinForm::plus(B, &e(0)).neg(), fld(B, e(-1), -1), fld(C, e(-1), -1)]);
        Ok((a, b))
    }

    pub fn s_two(&self) -> Result<OperatorExpr> {
        let (a, b) = self.s_two_parts()?;
        Ok(two_term(a, b))
    }

    pub fn s_tilde1(&self) -> Result<LinForm> {
        Ok(LinForm::sum(&[
            comp(A, Side::Cre, &[], &[rs()], r() - k() * fr(1, 2) - e(1))?,
            LinForm::q_mode(Zero::A, fr(1, 2)),
            comp(B, Side::Cre, &[-(r() - k() - e(2))], &[rs(), e(1)], e(-1))?,
            LinForm::p_ln_z(Zero::B, e(-1)),
            comp(B, Side::Ann, &[], &[e(1)], e(-1))?,
            LinForm::q_mode(Zero::Hat, e(2) - rs()),
            LinForm::p_ln_z(Zero::Hat, -ExpForm::inv_rstar()),
            LinForm::z_pow(ExpForm::inv_rstar()),
        ]))
    }

    pub fn s_tilde2(&self) -> Result<LinForm> {
        let h = kp2() * fr(1, 2);
        let ik = ExpForm::inv_kp2();
        let ir = ExpForm::inv_r();
        Ok(LinForm::sum(&[
            comp(A, Side::Cre, &[], &[-kp2()], h.clone())?,
            comp(A, Side::Ann, &[r() - k() - e(2)], &[kp2(), r()], h)?,
            LinForm::q_mode(Zero::A, -ik.clone()),
            LinForm::p_ln_z(Zero::A, -ik),
            comp(B, Side::Ann, &[e(2)], &[e(1), r()], -(r() - k() - e(1)))?.neg(),
            LinForm::p_ln_z(Zero::B, e(2) * ir.clone()),
            LinForm::p_ln_z(Zero::A, ir.clone()),
            LinForm::p_ln_z(Zero::Hat, ir.clone()),
            LinForm::z_pow(-ir),
        ]))
    }

    pub fn s_tilde3(&self) -> Result<LinForm> {
        let h = kp2() * fr(1, 2);
        let ik2 = ExpForm::inv_kp2() * fr(1, 2);
        Ok(LinForm::sum(&[
            comp(A, Side::Cre, &[], &[-kp2()], -h.clone())?,
            comp(A, Side::Ann, &[], &[kp2()], h)?,
            LinForm::q_mode(Zero::A, &ik2 * &k()),
            LinForm::p_ln_z(Zero::A, &ik2 * &e(-2)),
            LinForm::field(B, &e(0), &e(1), &int(-1)),
            LinForm::q_mode(Zero::B, e(1)),
            LinForm::q_mode(Zero::Hat, -rs()),
        ]))
    }
}
