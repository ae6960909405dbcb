//! Normal-ordered exponential calculus: two-point products, exchange
//! verdicts, delta extraction for commutators and operator equality.

pub mod delta;
pub mod exchange;
pub mod monomial;
pub mod opeq;
pub mod product;
pub mod verdict;

use std::fmt;

use crate::oscillators::{LinForm, Zero};
use crate::qseries::{Coeff, ExpForm};

pub use delta::{commutator_delta, delta_check, mono_exp, regular_exchange, total_qdiff_check, Residue, ResidueSet};
pub use exchange::{exchange_check, poly_exchange_check, LinFactor, Rhs, ThetaRatio};
pub use monomial::{MonoKey, Monomial};
pub use opeq::{kernel_sums_equal, op_eq};
pub use product::{multiply, pair_products, Core, Orientation, PairProduct, Product};
pub use verdict::{Mismatch, Status, Verdict};

/// A normal-ordered exponential. The explicit z-power and q-scalar are the
/// `slz`, `slq` parts of the exponent.
pub type NOExp = LinForm;

/// `(Δl, Δm₁, Δm₂, Δn̂)` implied by the `e^{Q}` content.
pub fn sector_shift(op: &NOExp) -> [ExpForm; 4] {
    let kp2x2 = ExpForm::int(2) * (ExpForm::k() + ExpForm::int(2));
    [
        &kp2x2 * &op.zq[Zero::A.idx()],
        op.zq[Zero::B.idx()].clone(),
        op.zq[Zero::C.idx()].clone(),
        op.zq[Zero::Hat.idx()].clone(),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub weight: Coeff,
    pub op: NOExp,
}

/// A finite sum of weighted normal-ordered exponentials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    pub terms: Vec<Term>,
}

impl OperatorExpr {
    pub fn single(op: NOExp) -> Self {
        OperatorExpr { terms: vec![Term { weight: Coeff::one(), op }] }
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        OperatorExpr { terms }
    }

    /// `w (:e^{a}: - :e^{b}:)`.
    pub fn difference(w: Coeff, a: NOExp, b: NOExp) -> Self {
        OperatorExpr { terms: vec![Term { weight: w.clone(), op: a }, Term { weight: -w, op: b }] }
    }

    /// Multiplies every weight by `c`.
    pub fn scale(&self, c: &Coeff) -> Self {
        OperatorExpr { terms: self.terms.iter().map(|t| Term { weight: &t.weight * c, op: t.op.clone() }).collect() }
    }

    /// Multiplies every term by the normal-ordered factor `l` (which must
    /// commute past the term, e.g. pure zero modes placed to the right).
    pub fn times(&self, l: &NOExp) -> Self {
        OperatorExpr { terms: self.terms.iter().map(|t| Term { weight: t.weight.clone(), op: t.op.add(l) }).collect() }
    }

    /// The same operator at the argument `q^γ z`.
    pub fn shift_arg(&self, gamma: &ExpForm) -> Self {
        OperatorExpr { terms: self.terms.iter().map(|t| Term { weight: t.weight.clone(), op: t.op.shift_arg(gamma) }).collect() }
    }

    /// Common sector shift of all terms, or `None` when they disagree.
    pub fn sector_shift(&self) -> Option<[ExpForm; 4]> {
        let mut it = self.terms.iter().map(|t| sector_shift(&t.op));
        let first = it.next()?;
        it.all(|s| s == first).then_some(first)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| format!("({}) :exp[{}]:", t.weight, t.op)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
