//! The static relation table. Each entry names the suites it belongs to,
//! states the relation, and builds its checks.

use super::checks::Check;
use super::{currents, proofs, screening, vertex};
use crate::catalog::{Conventions, FieldId};
use crate::qseries::{Coeff, Ctx, ExpForm, Q};
use crate::vop::{OperatorExpr, ThetaRatio};
use crate::Result;

pub struct RelationDef {
    pub id: &'static str,
    pub suites: &'static [&'static str],
    /// The relation as printed, in plain text.
    pub statement: &'static str,
    /// Checked once per spin in the run's spin list.
    pub spin: bool,
    pub build: fn(&Builder) -> Result<Vec<Check>>,
}

/// What a relation's checks are built from.
pub struct Builder {
    pub ctx: Ctx,
    pub l: i64,
    pub conv: Conventions,
}

impl Builder {
    pub fn f(&self, id: FieldId) -> Result<OperatorExpr> {
        self.conv.build(id)
    }
}

pub fn e(n: i64) -> ExpForm {
    ExpForm::int(n)
}

pub fn k() -> ExpForm {
    ExpForm::k()
}

pub fn half_k() -> ExpForm {
    k() * ExpForm::frac(1, 2)
}

/// `q^{i/2} q^{kj/2}`.
pub fn qm(i: i64, j: i64) -> Coeff {
    Coeff::mono(i, j, Q::from_integer(1.into()))
}

/// `1/(q - q^{-1})`.
pub fn inv_qq() -> Coeff {
    Coeff::q_minus_qinv().inv().expect("q - 1/q is nonzero")
}

/// `Θ_{q^{base}}(q^{num} y) / Θ_{q^{base}}(q^{den} y)`.
pub fn th(base: ExpForm, num: ExpForm, den: ExpForm) -> ThetaRatio {
    ThetaRatio { base, num: vec![num], den: vec![den] }
}

/// `p` and `p*` as exponents of `q`.
pub fn p_exp() -> ExpForm {
    e(2) * ExpForm::r()
}

pub fn ps_exp() -> ExpForm {
    e(2) * ExpForm::rstar()
}

pub static SUITES: &[&str] = &["special", "prop1", "prop2", "thm3", "elliptic", "screening", "vertex", "twisted", "proofs", "fock", "all"];

pub fn relations() -> Vec<&'static RelationDef> {
    let mut v: Vec<&'static RelationDef> = Vec::new();
    v.extend(super::SPECIAL.iter());
    v.extend(currents::PROP1.iter());
    v.extend(currents::PROP2.iter());
    v.extend(currents::THM3.iter());
    v.extend(screening::SCREENING.iter());
    v.extend(vertex::VERTEX.iter());
    v.extend(vertex::TWISTED.iter());
    v.extend(proofs::PROOFS.iter());
    v.extend(currents::FOCK.iter());
    v
}

/// Relations of a suite, in table order; `None` for an unknown suite.
pub fn suite(name: &str) -> Option<Vec<&'static RelationDef>> {
    if !SUITES.contains(&name) {
        return None;
    }
    Some(relations().into_iter().filter(|r| name == "all" || r.suites.contains(&name)).collect())
}
