//! Exponents of normal-ordered exponentials.
//!
//! `:exp(L(z)):` with `L` a [`LinForm`] stands for
//!
//! `exp(Σ_cre K(n) f_{-n} z^n) e^{Σ zq_f Q_f} z^{Σ plz_f P_f + slz} q^{Σ plq_f P_f + slq} exp(Σ_ann K(n) f_n z^{-n})`
//!
//! where `(Q_f, P_f)` runs over `(q_a, p_a), (q_b, p_b), (q_c, p_c), (q̂, p̂)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::kernel::Kernel;
use super::{Family, Zero};
use crate::qseries::{Coeff, ExpForm, Q};
use crate::Error;

/// Annihilation summands carry `f_n z^{-n}`, creation summands `f_{-n} z^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Ann,
    Cre,
}

/// `q^n + q^{-n} = [2n]/[n]`.
fn sum_kernel() -> Kernel {
    Kernel::new(Coeff::one(), vec![ExpForm::int(2)], vec![ExpForm::int(1)], ExpForm::zero()).expect("nonzero kernel")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub fam: Family,
    pub side: Side,
    pub kernel: Kernel,
}

/// How an argument `(q + q^{-1}) z` acts on modes: literally as `[2]^{±n}`,
/// or as the field sum `f(qz) + f(q^{-1}z)`, i.e. a factor `q^n + q^{-n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Reading {
    Literal,
    #[default]
    Sum,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinForm {
    pub summands: Vec<Summand>,
    pub zq: [ExpForm; 4],
    pub plz: [ExpForm; 4],
    pub plq: [ExpForm; 4],
    pub slz: ExpForm,
    pub slq: ExpForm,
}

fn neg_exp(e: &ExpForm) -> ExpForm {
    -e.clone()
}

impl LinForm {
    pub fn zero() -> Self {
        Self::default()
    }

    fn with(s: Summand) -> Self {
        LinForm { summands: vec![s], ..Self::default() }
    }

    /// `coef * f(q^γ z; α)`, the full field with zero modes.
    pub fn field(f: Family, gamma: &ExpForm, alpha: &ExpForm, coef: &Q) -> Self {
        let c = Coeff::rational(coef.clone());
        let ann = Kernel::new(-c.clone(), vec![], vec![ExpForm::int(1)], -(alpha + gamma)).unwrap();
        let cre = Kernel::new(c, vec![], vec![ExpForm::int(1)], gamma - alpha).unwrap();
        let mut out = LinForm {
            summands: vec![Summand { fam: f, side: Side::Ann, kernel: ann }, Summand { fam: f, side: Side::Cre, kernel: cre }],
            ..Self::default()
        };
        let z = Zero::of(f).idx();
        let ce = ExpForm::rational(coef.clone());
        out.zq[z] = ce.clone();
        out.plz[z] = ce.clone();
        out.plq[z] = ce * gamma.clone();
        out
    }

    /// `f_+(q^γ z) = (q - q^{-1}) Σ f_n (q^γ z)^{-n} + p_f ln q`.
    pub fn plus(f: Family, gamma: &ExpForm) -> Self {
        let k = Kernel::mono(Coeff::q_minus_qinv(), neg_exp(gamma));
        let mut out = Self::with(Summand { fam: f, side: Side::Ann, kernel: k });
        out.plq[Zero::of(f).idx()] = ExpForm::int(1);
        out
    }

    /// `f_-(q^γ z) = -((q - q^{-1}) Σ f_{-n} (q^γ z)^n + p_f ln q)`.
    pub fn minus(f: Family, gamma: &ExpForm) -> Self {
        let k = Kernel::mono(-Coeff::q_minus_qinv(), gamma.clone());
        let mut out = Self::with(Summand { fam: f, side: Side::Cre, kernel: k });
        out.plq[Zero::of(f).idx()] = ExpForm::int(-1);
        out
    }

    /// `f*_+(q^γ [2]^{two} z) = -Σ f_n/[rn] (q^γ [2]^{two} z)^{-n}`.
    pub fn star_plus(f: Family, gamma: &ExpForm, two: bool, reading: Reading) -> Self {
        let mut k = Kernel::new(Coeff::int(-1), vec![], vec![ExpForm::r()], neg_exp(gamma)).unwrap();
        if two {
            k = match reading {
                Reading::Literal => Kernel { br2: -1, ..k },
                Reading::Sum => k.mul(&sum_kernel()),
            };
        }
        Self::with(Summand { fam: f, side: Side::Ann, kernel: k })
    }

    /// `f*_-(q^γ [2]^{two} z) = Σ f_{-n}/[r* n] (q^γ [2]^{two} z)^n`.
    pub fn star_minus(f: Family, gamma: &ExpForm, two: bool, reading: Reading) -> Self {
        let mut k = Kernel::new(Coeff::one(), vec![], vec![ExpForm::rstar()], gamma.clone()).unwrap();
        if two {
            k = match reading {
                Reading::Literal => Kernel { br2: 1, ..k },
                Reading::Sum => k.mul(&sum_kernel()),
            };
        }
        Self::with(Summand { fam: f, side: Side::Cre, kernel: k })
    }

    /// `F_±(L; M | z; α) = Σ [L n].../[M n]... f_{±n} (q^α z)^{∓n}`.
    pub fn compound(f: Family, side: Side, ls: &[ExpForm], ms: &[ExpForm], alpha: &ExpForm) -> Result<Self, Error> {
        let beta = match side {
            Side::Ann => neg_exp(alpha),
            Side::Cre => alpha.clone(),
        };
        let k = Kernel::new(Coeff::one(), ls.to_vec(), ms.to_vec(), beta)?;
        Ok(Self::with(Summand { fam: f, side, kernel: k }))
    }

    /// `coef * Q_f`.
    pub fn q_mode(z: Zero, coef: ExpForm) -> Self {
        let mut out = Self::zero();
        out.zq[z.idx()] = coef;
        out
    }

    /// `coef * P_f ln z`.
    pub fn p_ln_z(z: Zero, coef: ExpForm) -> Self {
        let mut out = Self::zero();
        out.plz[z.idx()] = coef;
        out
    }

    /// `coef * P_f ln q`.
    pub fn p_ln_q(z: Zero, coef: ExpForm) -> Self {
        let mut out = Self::zero();
        out.plq[z.idx()] = coef;
        out
    }

    /// Scalar `z^{e}`.
    pub fn z_pow(e: ExpForm) -> Self {
        LinForm { slz: e, ..Self::default() }
    }

    /// Scalar `q^{e}`.
    pub fn q_pow(e: ExpForm) -> Self {
        LinForm { slq: e, ..Self::default() }
    }

    pub fn add(&self, o: &LinForm) -> LinForm {
        let mut summands = self.summands.clone();
        summands.extend(o.summands.iter().cloned());
        let sum4 = |a: &[ExpForm; 4], b: &[ExpForm; 4]| -> [ExpForm; 4] { std::array::from_fn(|i| &a[i] + &b[i]) };
        LinForm {
            summands,
            zq: sum4(&self.zq, &o.zq),
            plz: sum4(&self.plz, &o.plz),
            plq: sum4(&self.plq, &o.plq),
            slz: &self.slz + &o.slz,
            slq: &self.slq + &o.slq,
        }
        .simplified()
    }

    pub fn sum(parts: &[LinForm]) -> LinForm {
        parts.iter().fold(LinForm::zero(), |acc, p| acc.add(p))
    }

    pub fn scale(&self, c: &Q) -> LinForm {
        let ce = ExpForm::rational(c.clone());
        let cc = Coeff::rational(c.clone());
        let s4 = |a: &[ExpForm; 4]| -> [ExpForm; 4] { std::array::from_fn(|i| &a[i] * &ce) };
        LinForm {
            summands: self
                .summands
                .iter()
                .map(|s| Summand { kernel: s.kernel.scale(&cc), ..s.clone() })
                .collect(),
            zq: s4(&self.zq),
            plz: s4(&self.plz),
            plq: s4(&self.plq),
            slz: &self.slz * &ce,
            slq: &self.slq * &ce,
        }
        .simplified()
    }

    pub fn neg(&self) -> LinForm {
        self.scale(&Q::from_integer((-1).into()))
    }

    /// The same exponent at the argument `q^γ z`.
    pub fn shift_arg(&self, gamma: &ExpForm) -> LinForm {
        let summands = self
            .summands
            .iter()
            .map(|s| {
                let d = match s.side {
                    Side::Ann => -gamma.clone(),
                    Side::Cre => gamma.clone(),
                };
                Summand { kernel: s.kernel.shift_beta(&d), ..s.clone() }
            })
            .collect();
        let plq = std::array::from_fn(|i| &self.plq[i] + &(&self.plz[i] * gamma));
        LinForm { summands, zq: self.zq.clone(), plz: self.plz.clone(), plq, slz: self.slz.clone(), slq: &self.slq + &(&self.slz * gamma) }
    }

    /// Merges summands with identical kernel shapes and drops zeros.
    pub fn simplified(mut self) -> LinForm {
        let mut out: Vec<Summand> = Vec::new();
        for s in self.summands.drain(..) {
            if s.kernel.is_zero() {
                continue;
            }
            let hit = out.iter_mut().find(|t| {
                t.fam == s.fam
                    && t.side == s.side
                    && t.kernel.ls == s.kernel.ls
                    && t.kernel.ms == s.kernel.ms
                    && t.kernel.beta == s.kernel.beta
                    && t.kernel.br2 == s.kernel.br2
            });
            match hit {
                Some(t) => t.kernel.c = &t.kernel.c + &s.kernel.c,
                None => out.push(s),
            }
        }
        out.retain(|s| !s.kernel.is_zero());
        self.summands = out;
        self
    }

    pub fn side(&self, side: Side) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(move |s| s.side == side)
    }

    pub fn has_zero_modes(&self) -> bool {
        self.zq.iter().chain(self.plz.iter()).chain(self.plq.iter()).any(|e| !e.is_zero())
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for s in &self.summands {
            let mode = match s.side {
                Side::Ann => format!("{}_n z^-n", s.fam.name()),
                Side::Cre => format!("{}_-n z^n", s.fam.name()),
            };
            parts.push(format!("Σ {} {}", s.kernel, mode));
        }
        for z in Zero::ALL {
            let i = z.idx();
            if !self.zq[i].is_zero() {
                parts.push(format!("({}) {}", self.zq[i], z.q_name()));
            }
            if !self.plz[i].is_zero() {
                parts.push(format!("({}) {} ln z", self.plz[i], z.p_name()));
            }
            if !self.plq[i].is_zero() {
                parts.push(format!("({}) {} ln q", self.plq[i], z.p_name()));
            }
        }
        if !self.slz.is_zero() {
            parts.push(format!("({}) ln z", self.slz));
        }
        if !self.slq.is_zero() {
            parts.push(format!("({}) ln q", self.slq));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{int, Nome};

    #[test]
    fn shifting_composes() {
        let l = LinForm::field(Family::A, &ExpForm::int(1), &ExpForm::zero(), &int(1));
        let a = l.shift_arg(&ExpForm::int(2));
        let b = LinForm::field(Family::A, &ExpForm::int(3), &ExpForm::zero(), &int(1));
        assert_eq!(a, b);
    }

    #[test]
    fn plus_kernel_at_one() {
        let l = LinForm::plus(Family::A, &ExpForm::zero());
        let v = l.summands[0].kernel.eval(1, Nome::P, 8).unwrap();
        assert_eq!(v.coeff(0).unwrap(), Coeff::q_minus_qinv());
    }

    #[test]
    fn opposite_fields_cancel() {
        let l = LinForm::field(Family::B, &ExpForm::int(1), &ExpForm::zero(), &int(1));
        let z = l.add(&l.neg());
        assert!(z.summands.is_empty() && !z.has_zero_modes());
    }
}
