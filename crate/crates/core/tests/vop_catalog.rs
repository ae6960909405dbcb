//! Two-point products, delta extraction and the field catalog.

use ellwak::catalog::{build, kernels, single, Conventions, FieldId};
use ellwak::oscillators::LinForm;
use ellwak::qseries::{Comparison, Ctx, ExpForm, Nome};
use ellwak::vop::{commutator_delta, pair_products, sector_shift, OperatorExpr, Orientation};

fn ctx() -> Ctx {
    Ctx::new(Nome::P, 4, 1)
}

/// Pairs whose products stay cheap at `N = 4`, `P = 1`.
fn pairs() -> Vec<(FieldId, FieldId)> {
    use FieldId::*;
    vec![(PsiPlus, EPlus), (EPlus, EMinus), (HPlus, E), (E, F), (HPlus, Phi(1)), (F, Phi(2)), (E, PsiStar(1)), (SOne, SOne), (E, SOne)]
}

#[test]
fn orientations_share_cores() {
    for (a, b) in pairs() {
        let (x, y) = (build(a).unwrap(), build(b).unwrap());
        let zw = pair_products(&x, &y, Orientation::ZW, &ctx()).unwrap();
        let wz = pair_products(&x, &y, Orientation::WZ, &ctx()).unwrap();
        assert_eq!(zw.len(), wz.len(), "{a} {b}");
        for (p, q) in zw.iter().zip(&wz) {
            assert!(p.core.same(&q.core), "{a} {b}: cores differ");
        }
    }
}

#[test]
fn e_plus_e_minus_delta_is_complete() {
    let d = commutator_delta(&build(FieldId::EPlus).unwrap(), &build(FieldId::EMinus).unwrap(), &Ctx::new(Nome::P, 6, 0)).unwrap();
    let mut s = d.supports();
    s.sort();
    let mut want = vec![-ExpForm::k(), ExpForm::k()];
    want.sort();
    assert_eq!(s, want);
    // One operator on each support: ψ^± up to scalars.
    assert!(d.residues.iter().all(|r| r.terms.len() == 1));
}

#[test]
fn documented_sector_shifts() {
    let c = Conventions::default();
    let i = ExpForm::int;
    assert_eq!(c.sector_shift(FieldId::E).unwrap(), [i(0), i(-1), i(-1), i(2)]);
    assert_eq!(c.sector_shift(FieldId::STwo).unwrap(), [i(-2), i(-1), i(-1), i(0)]);
    assert_eq!(c.sector_shift(FieldId::SOne).unwrap(), [ExpForm::k() + i(2), i(1), i(1), -ExpForm::rstar()]);
    assert_eq!(c.sector_shift(FieldId::F).unwrap(), [i(0), i(1), i(1), i(0)]);
}

#[test]
fn sector_shift_is_additive_on_cores() {
    for (a, b) in pairs() {
        let (x, y) = (build(a).unwrap(), build(b).unwrap());
        let want: [ExpForm; 4] = {
            let (sa, sb) = (x.sector_shift().unwrap(), y.sector_shift().unwrap());
            std::array::from_fn(|k| &sa[k] + &sb[k])
        };
        for p in pair_products(&x, &y, Orientation::ZW, &ctx()).unwrap() {
            assert_eq!(sector_shift(&p.core.at(&ExpForm::int(1))), want, "{a} {b}");
        }
    }
}

#[test]
fn prefactors_multiply_under_fusion() {
    // (A B)(z) C(w) has prefactor pref(A, C) pref(B, C); the contraction
    // of a sum of exponents is the product of the contractions.
    use FieldId::*;
    let c = ctx();
    for (a, b, w) in [(HPlus, PsiPlus, Phi(1)), (SOne, HPlus, E), (PsiPlus, PsiMinus, EMinus)] {
        let (la, lb) = (single(&build(a).unwrap()).unwrap().clone(), single(&build(b).unwrap()).unwrap().clone());
        let wc = build(w).unwrap();
        let w1 = if wc.terms.len() == 1 { wc } else { OperatorExpr::single(wc.terms[0].op.clone()) };
        let one = |l: &LinForm| pair_products(&OperatorExpr::single(l.clone()), &w1, Orientation::ZW, &c).unwrap().remove(0);
        let (pa, pb, pab) = (one(&la), one(&lb), one(&la.add(&lb)));
        let lhs = pab.form.expand(c.prec4, c.window).unwrap();
        let rhs = pa.form.mul(&pb.form).expand(c.prec4, c.window).unwrap();
        assert!(matches!(lhs.compare(&rhs, c.window, c.prec4), Comparison::Agree { .. }), "{a} {b} {w}");
    }
}

#[test]
fn kernel_grammar_audit() {
    for l in 1..=3 {
        for id in FieldId::all(l) {
            let op = build(id).unwrap();
            let nome = if id == FieldId::STwo { Nome::T } else { Nome::P };
            for k in kernels(&op) {
                assert!(!k.c.is_zero(), "{id}: zero kernel");
                assert!(k.ls.iter().chain(&k.ms).all(|e| !e.is_zero()), "{id}: [0 n] factor");
                for n in 1..=3 {
                    k.eval(n, nome, 8).unwrap_or_else(|e| panic!("{id} at n = {n}: {e}"));
                }
            }
        }
    }
}

#[test]
fn u_fields_are_trivial_at_p_zero() {
    // 1/[r n] and 1/[r* n] start at p^{n/2}, so :exp U±: = 1 + O(p^{1/2}).
    for id in [FieldId::UPlus, FieldId::UMinus] {
        let op = build(id).unwrap();
        let l = single(&op).unwrap();
        assert!(!l.has_zero_modes(), "{id}");
        for k in kernels(&op) {
            for n in 1..=4 {
                assert!(k.eval(n, Nome::P, 1).unwrap().is_zero(), "{id} at n = {n}");
            }
        }
    }
}

#[test]
fn field_names_round_trip() {
    for id in FieldId::all(2) {
        let back: FieldId = id.name().parse().unwrap();
        assert_eq!(back, id);
    }
}
