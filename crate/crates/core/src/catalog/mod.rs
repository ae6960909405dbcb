//! Every field of the realization as an [`OperatorExpr`].

pub mod fields;
pub mod vertex;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use fields::{comp, Conventions};

use crate::oscillators::LinForm;
use crate::qseries::ExpForm;
use crate::vop::OperatorExpr;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldId {
    PsiPlus,
    PsiMinus,
    EPlus,
    EMinus,
    UPlus,
    UMinus,
    BigPsiPlus,
    BigPsiMinus,
    EEll,
    FEll,
    HPlus,
    HMinus,
    E,
    F,
    SOne,
    STwo,
    STilde1,
    STilde2,
    STilde3,
    VPlus(i64),
    VMinus(i64),
    Phi(i64),
    PsiStar(i64),
    PhiTwisted(i64),
    PsiStarTwisted(i64),
}

impl FieldId {
    /// Every spin-independent field, then the spin-`l` vertex fields.
    pub fn all(l: i64) -> Vec<FieldId> {
        use FieldId::*;
        vec![
            PsiPlus,
            PsiMinus,
            EPlus,
            EMinus,
            UPlus,
            UMinus,
            BigPsiPlus,
            BigPsiMinus,
            EEll,
            FEll,
            HPlus,
            HMinus,
            E,
            F,
            SOne,
            STwo,
            STilde1,
            STilde2,
            STilde3,
            VPlus(l),
            VMinus(l),
            Phi(l),
            PsiStar(l),
            PhiTwisted(l),
            PsiStarTwisted(l),
        ]
    }

    pub fn name(self) -> String {
        use FieldId::*;
        match self {
            PsiPlus => "psiPlus".into(),
            PsiMinus => "psiMinus".into(),
            EPlus => "ePlus".into(),
            EMinus => "eMinus".into(),
            UPlus => "uPlus".into(),
            UMinus => "uMinus".into(),
            BigPsiPlus => "PsiPlus".into(),
            BigPsiMinus => "PsiMinus".into(),
            EEll => "eEll".into(),
            FEll => "fEll".into(),
            HPlus => "Hplus".into(),
            HMinus => "Hminus".into(),
            E => "E".into(),
            F => "F".into(),
            SOne => "S_I".into(),
            STwo => "S_II".into(),
            STilde1 => "sTilde1".into(),
            STilde2 => "sTilde2".into(),
            STilde3 => "sTilde3".into(),
            VPlus(l) => format!("Vplus({l})"),
            VMinus(l) => format!("Vminus({l})"),
            Phi(l) => format!("PhiLL({l})"),
            PsiStar(l) => format!("PsiStarLL({l})"),
            PhiTwisted(l) => format!("PhiLLtwisted({l})"),
            PsiStarTwisted(l) => format!("PsiStarLLtwisted({l})"),
        }
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for FieldId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, l) = match s.split_once('(') {
            Some((h, rest)) => {
                let v = rest.trim_end_matches(')').trim().parse::<i64>().map_err(|_| Error::Unknown(s.into()))?;
                (h, Some(v))
            }
            None => (s, None),
        };
        let needs_l = |f: fn(i64) -> FieldId| -> Result<FieldId> {
            match l {
                Some(v) if v >= 0 => Ok(f(v)),
                _ => Err(Error::Unknown(format!("{s}: spin l >= 0 required"))),
            }
        };
        FieldId::all(0)
            .into_iter()
            .find(|id| id.name() == head && l.is_none())
            .map(Ok)
            .unwrap_or_else(|| match head {
                "Vplus" => needs_l(FieldId::VPlus),
                "Vminus" => needs_l(FieldId::VMinus),
                "PhiLL" => needs_l(FieldId::Phi),
                "PsiStarLL" => needs_l(FieldId::PsiStar),
                "PhiLLtwisted" => needs_l(FieldId::PhiTwisted),
                "PsiStarLLtwisted" => needs_l(FieldId::PsiStarTwisted),
                _ => Err(Error::Unknown(s.into())),
            })
    }
}

impl Conventions {
    pub fn build(&self, id: FieldId) -> Result<OperatorExpr> {
        use FieldId::*;
        let one = OperatorExpr::single;
        Ok(match id {
            PsiPlus => one(self.psi_plus()),
            PsiMinus => one(self.psi_minus()),
            EPlus => self.e_plus(),
            EMinus => self.e_minus(),
            UPlus => one(self.u_plus()),
            UMinus => one(self.u_minus()),
            BigPsiPlus => one(self.big_psi_plus()),
            BigPsiMinus => one(self.big_psi_minus()),
            EEll => self.e_ell(),
            FEll => self.f_ell(),
            HPlus => one(self.h_plus()),
            HMinus => one(self.h_minus()),
            E => self.big_e(),
            F => self.big_f(),
            SOne => one(self.s_one()),
            STwo => self.s_two()?,
            STilde1 => one(self.s_tilde1()?),
            STilde2 => one(self.s_tilde2()?),
            STilde3 => one(self.s_tilde3()?),
            VPlus(l) => one(self.v_plus(l)?),
            VMinus(l) => one(self.v_minus(l)?),
            Phi(l) => one(self.phi(l)?),
            PsiStar(l) => one(self.psi_star(l)?),
            PhiTwisted(l) => one(self.phi_twisted(l)?),
            PsiStarTwisted(l) => one(self.psi_star_twisted(l)?),
        })
    }

    /// `(Δl, Δm₁, Δm₂, Δn̂)` of a field.
    pub fn sector_shift(&self, id: FieldId) -> Result<[ExpForm; 4]> {
        self.build(id)?.sector_shift().ok_or_else(|| Error::Internal(format!("{id}: terms shift different sectors")))
    }
}

/// Builds with the default conventions.
pub fn build(id: FieldId) -> Result<OperatorExpr> {
    Conventions::default().build(id)
}

/// Every kernel of every summand, for grammar audits.
pub fn kernels(op: &OperatorExpr) -> Vec<&crate::oscillators::Kernel> {
    op.terms.iter().flat_map(|t| t.op.summands.iter().map(|s| &s.kernel)).collect()
}

/// The normal-ordered exponent of a single-term field.
pub fn single(op: &OperatorExpr) -> Option<&LinForm> {
    match op.terms.as_slice() {
        [t] if t.weight.is_one() => Some(&t.op),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(id: FieldId) -> [ExpForm; 4] {
        Conventions::default().sector_shift(id).unwrap()
    }

    fn e(n: i64) -> ExpForm {
        ExpForm::int(n)
    }

    #[test]
    fn screening_and_current_sectors() {
        assert_eq!(shift(FieldId::SOne), [ExpForm::k() + e(2), e(1), e(1), -ExpForm::rstar()]);
        assert_eq!(shift(FieldId::E), [e(0), e(-1), e(-1), e(2)]);
        assert_eq!(shift(FieldId::STwo), [e(-2), e(-1), e(-1), e(0)]);
    }

    #[test]
    fn e_plus_has_two_terms() {
        assert_eq!(build(FieldId::EPlus).unwrap().terms.len(), 2);
        assert_eq!(build(FieldId::PsiPlus).unwrap().terms.len(), 1);
    }

    #[test]
    fn names_round_trip() {
        for id in FieldId::all(3) {
            assert_eq!(id.name().parse::<FieldId>().unwrap(), id);
        }
        assert!("Vplus(-1)".parse::<FieldId>().is_err());
        assert!("nope".parse::<FieldId>().is_err());
    }

    #[test]
    fn every_field_builds() {
        for id in FieldId::all(2) {
            let op = build(id).unwrap();
            assert!(!op.terms.is_empty(), "{id}");
            assert!(op.sector_shift().is_some(), "{id}");
        }
    }
}
