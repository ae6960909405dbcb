//! Heisenberg data: the three oscillator families, their zero modes, the
//! closed kernel grammar for field exponents, and the contraction pairing.

pub mod contract;
pub mod factor;
pub mod kernel;
pub mod linform;

use serde::{Deserialize, Serialize};

pub use contract::{contract, contract_coeff, zero_mode_reorder, ZeroFactor};
pub use factor::{factorize, Factor, ProdForm};
pub use kernel::Kernel;
pub use linform::{LinForm, Reading, Side, Summand};

use crate::qseries::special::{qint, Mono};
use crate::qseries::{Coeff, ExpForm, Nome, PSeries, Q};
use crate::Error;

/// Oscillator family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::C];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "a",
            Family::B => "b",
            Family::C => "c",
        }
    }

    /// `[f_n, f_{-n}]` for `n >= 1`.
    pub fn norm(self, n: i64) -> Coeff {
        let nn = Coeff::rational(Q::new(1.into(), n.into()));
        match self {
            Family::A => {
                let kp2 = ExpForm::k() + ExpForm::int(2);
                let a = crate::qseries::special::qnum(&(kp2 * ExpForm::int(n))).expect("[(k+2)n]");
                &(&a * &qint(2 * n)) * &nn
            }
            Family::B => {
                let b = qint(n);
                -(&(&b * &b) * &nn)
            }
            Family::C => {
                let c = qint(n);
                &(&c * &c) * &nn
            }
        }
    }

    /// The norm as a series in `nome`; under `t` the factor `[(k+2)n]`
    /// has nome valuation `-2n` (quarter units).
    pub fn norm_series(self, n: i64, nome: Nome) -> Result<PSeries, Error> {
        match (self, nome) {
            (Family::A, Nome::T) => {
                let x = Mono::from_exp(nome, &((ExpForm::k() + ExpForm::int(2)) * ExpForm::int(n)))?;
                let qq = Coeff::q_minus_qinv().inv()?;
                let a = &x.series(&qq) - &x.inv().series(&qq);
                Ok(a.scale(&(&qint(2 * n) * &Coeff::rational(Q::new(1.into(), n.into())))))
            }
            _ => Ok(PSeries::constant(self.norm(n))),
        }
    }
}

/// Zero-mode pairs `(q_f, p_f)`; `Hat` is the extra Heisenberg pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Zero {
    A,
    B,
    C,
    Hat,
}

impl Zero {
    pub const ALL: [Zero; 4] = [Zero::A, Zero::B, Zero::C, Zero::Hat];

    pub fn idx(self) -> usize {
        self as usize
    }

    pub fn of(f: Family) -> Zero {
        match f {
            Family::A => Zero::A,
            Family::B => Zero::B,
            Family::C => Zero::C,
        }
    }

    /// `[p, q]` for the pair.
    pub fn kappa(self) -> ExpForm {
        match self {
            Zero::A => ExpForm::int(2) * (ExpForm::k() + ExpForm::int(2)),
            Zero::B => ExpForm::int(-1),
            Zero::C => ExpForm::int(1),
            // [q̂, p̂] = 1
            Zero::Hat => ExpForm::int(-1),
        }
    }

    pub fn q_name(self) -> &'static str {
        match self {
            Zero::A => "q_a",
            Zero::B => "q_b",
            Zero::C => "q_c",
            Zero::Hat => "q^",
        }
    }

    pub fn p_name(self) -> &'static str {
        match self {
            Zero::A => "p_a",
            Zero::B => "p_b",
            Zero::C => "p_c",
            Zero::Hat => "p^",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_match_tables() {
        assert_eq!(Family::B.norm(1), Coeff::int(-1));
        assert_eq!(Family::C.norm(2), &(&qint(2) * &qint(2)) * &Coeff::rational(Q::new(1.into(), 2.into())));
        let a1 = Family::A.norm(1);
        let expect = &crate::qseries::special::qnum(&(ExpForm::k() + ExpForm::int(2))).unwrap() * &qint(2);
        assert_eq!(a1, expect);
    }
}
