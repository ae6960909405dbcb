//! Two-point products `A(z) B(w)`: `e^{A} e^{B} = e^{[A_+, B_-]} :e^{A} e^{B}:`
//! with the zero-mode reordering monomial.

use super::monomial::Monomial;
use super::opeq::op_eq;
use super::OperatorExpr;
use crate::oscillators::{contract, factorize, zero_mode_reorder, LinForm, ProdForm};
use crate::qseries::{Ctx, ExpForm, XLaurent};
use crate::Result;

/// Which product is formed: `A(z)B(w)` in `|z| > |w|`, or `B(w)A(z)` in
/// `|w| > |z|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    ZW,
    WZ,
}

/// The normal-ordered two-point operator `:A(z) B(w):`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    pub z: LinForm,
    pub w: LinForm,
}

impl Core {
    pub fn same(&self, o: &Core) -> bool {
        op_eq(&self.z, &o.z) && op_eq(&self.w, &o.w)
    }

    /// The core on the support `w = q^γ z`, as an operator in `z`.
    pub fn at(&self, gamma: &ExpForm) -> LinForm {
        self.z.add(&self.w.shift_arg(gamma))
    }
}

/// One term pair in product form: `mono · form(x) · :core:`.
#[derive(Clone, Debug)]
pub struct PairProduct {
    pub mono: Monomial,
    pub form: ProdForm,
    pub core: Core,
}

/// One term pair as a formal series: `mono · prefactor(x) · :core:`.
#[derive(Clone, Debug)]
pub struct Product {
    pub mono: Monomial,
    pub prefactor: XLaurent,
    pub core: Core,
}

fn reorder_mono(a: &LinForm, b: &LinForm, first_is_z: bool) -> Monomial {
    let zf = zero_mode_reorder(a, b);
    let (zexp, wexp) = if first_is_z { (zf.zexp, ExpForm::zero()) } else { (ExpForm::zero(), zf.zexp) };
    Monomial { coef: crate::qseries::Coeff::one(), qexp: zf.qexp, zexp, wexp }
}

/// Every term pair of the product in the given orientation, with the
/// contraction recognized as a product form in `x = w/z` (canonical).
pub fn pair_products(a: &OperatorExpr, b: &OperatorExpr, orient: Orientation, ctx: &Ctx) -> Result<Vec<PairProduct>> {
    let mut out = Vec::new();
    for ta in &a.terms {
        for tb in &b.terms {
            let weight = &ta.weight * &tb.weight;
            let (mono, form) = match orient {
                Orientation::ZW => (reorder_mono(&ta.op, &tb.op, true), factorize(&ta.op, &tb.op, ctx.nome, ctx.prec4, ctx.window)?),
                Orientation::WZ => {
                    (reorder_mono(&tb.op, &ta.op, false), factorize(&tb.op, &ta.op, ctx.nome, ctx.prec4, ctx.window)?.reflect())
                }
            };
            let mono = Monomial { coef: &mono.coef * &weight, ..mono };
            out.push(PairProduct { mono, form: form.canonical()?, core: Core { z: ta.op.clone(), w: tb.op.clone() } });
        }
    }
    Ok(out)
}

/// Every term pair as a formal series in `x`; `A(z)B(w)` is known on
/// `(-∞, N]` and `B(w)A(z)` on `[-N, ∞)`.
pub fn multiply(a: &OperatorExpr, b: &OperatorExpr, orient: Orientation, ctx: &Ctx) -> Result<Vec<Product>> {
    let mut out = Vec::new();
    for ta in &a.terms {
        for tb in &b.terms {
            let weight = &ta.weight * &tb.weight;
            let (mono, prefactor) = match orient {
                Orientation::ZW => (reorder_mono(&ta.op, &tb.op, true), contract(&ta.op, &tb.op, ctx)?.exp_pos(ctx.prec4)?),
                Orientation::WZ => (reorder_mono(&tb.op, &ta.op, false), contract(&tb.op, &ta.op, ctx)?.exp_pos(ctx.prec4)?.reflect()),
            };
            let mono = Monomial { coef: &mono.coef * &weight, ..mono };
            out.push(Product { mono, prefactor, core: Core { z: ta.op.clone(), w: tb.op.clone() } });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillators::Family;
    use crate::qseries::{int, Nome};

    #[test]
    fn commuting_fields_have_unit_prefactor() {
        let a = OperatorExpr::single(LinForm::plus(Family::A, &ExpForm::zero()));
        let ctx = Ctx::new(Nome::P, 4, 1);
        let p = multiply(&a, &a, Orientation::ZW, &ctx).unwrap();
        assert_eq!(p.len(), 1);
        let one = XLaurent::one();
        assert!(matches!(p[0].prefactor.compare(&one, 4, 4), crate::qseries::Comparison::Agree { .. }));
    }

    #[test]
    fn orientations_share_cores() {
        let f = OperatorExpr::single(LinForm::field(Family::C, &ExpForm::zero(), &ExpForm::zero(), &int(1)));
        let ctx = Ctx::new(Nome::P, 4, 1);
        let zw = pair_products(&f, &f, Orientation::ZW, &ctx).unwrap();
        let wz = pair_products(&f, &f, Orientation::WZ, &ctx).unwrap();
        assert!(zw[0].core.same(&wz[0].core));
        // c(z)c(w) = (1 - x) from the positive norm; reflected it is (1 - 1/x).
        assert_eq!(zw[0].form.x.values().next(), Some(&int(1)));
        assert_eq!(wz[0].form.xpow, -1);
    }
}
