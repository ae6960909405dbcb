//! Fock-space action: sector bookkeeping, grade truncation and the
//! two-point oracle.

use ellwak::catalog::{build, FieldId};
use ellwak::fock::apply::identity;
use ellwak::fock::{apply_truncated, cross_check, FockRelation, Sector, State};
use ellwak::qseries::{Coeff, Ctx, Nome};
use ellwak::vop::{sector_shift, Status};
use proptest::prelude::*;

const PREC4: i64 = 4;

fn light() -> impl Strategy<Value = FieldId> {
    use FieldId::*;
    prop_oneof![Just(PsiPlus), Just(PsiMinus), Just(EPlus), Just(EMinus), Just(HPlus), Just(HMinus), Just(SOne), Just(Phi(1))]
}

fn sector() -> impl Strategy<Value = Sector> {
    (0i64..=2, -1i64..=1, -1i64..=1, -1i64..=1).prop_map(|(l, a, b, n)| Sector::int(l, a, b, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn output_sector_is_displaced_by_q_content(id in light(), s in sector(), g in 0i64..=2) {
        let op = build(id).unwrap();
        let out = apply_truncated(&op, &State::highest(s.clone()), g, Nome::P, PREC4).unwrap();
        for t in &op.terms {
            let target = s.shifted(&t.op.zq);
            prop_assert_eq!(sector_shift(&t.op), std::array::from_fn::<_, 4, _>(|i| &target.labels[i] - &s.labels[i]));
        }
        let want = s.shifted(&op.terms[0].op.zq);
        prop_assert!(out.keys().all(|k| k.sector == want));
    }

    #[test]
    fn lower_grades_are_stable(id in light(), s in sector(), g in 0i64..=2) {
        let op = build(id).unwrap();
        let v = State::highest(s);
        let lo = apply_truncated(&op, &v, g, Nome::P, PREC4).unwrap();
        let hi = apply_truncated(&op, &v, g + 1, Nome::P, PREC4).unwrap();
        prop_assert!(lo.keys().all(|k| k.pbw.grade() <= g));
        let cut: Vec<_> = hi.iter().filter(|(k, _)| k.pbw.grade() <= g).collect();
        prop_assert_eq!(cut.len(), lo.len());
        for (k, c) in cut {
            prop_assert!(lo.get(k).is_some_and(|d| d.eq_upto(c, PREC4)));
        }
    }

    #[test]
    fn identity_acts_trivially(s in sector(), g in 0i64..=3) {
        let out = apply_truncated(&identity(), &State::highest(s.clone()), g, Nome::P, PREC4).unwrap();
        prop_assert_eq!(out.len(), 1);
        let (k, c) = out.iter().next().unwrap();
        prop_assert!(k.sector == s && k.pbw.grade() == 0 && k.z.is_zero());
        prop_assert!(c.eq_upto(&ellwak::qseries::PSeries::one(), PREC4));
    }
}

#[test]
fn true_relation_passes_and_wrong_factor_fails() {
    // e±(z) e±(w) (z - q^{±2} w) = e±(w) e±(z) (q^{±2} z - w), as matrix elements.
    let ctx = Ctx::new(Nome::P, 2, 0);
    for (s, id) in [(1, FieldId::EPlus), (-1, FieldId::EMinus)] {
        let e = build(id).unwrap();
        let rel = |c: i64| FockRelation::Poly { a: e.clone(), b: e.clone(), lhs: vec![(Coeff::one(), Coeff::q(2 * s))], rhs: vec![(Coeff::q(c * s), Coeff::one())] };
        for sec in [Sector::int(0, 0, 0, 0), Sector::int(1, 1, 1, 0)] {
            // Low grades may have no exact matrix element; they must not fail.
            for g in 0..=1 {
                assert_ne!(cross_check(&rel(2), &sec, g, 2, &ctx).unwrap().status, Status::Fail);
            }
            let v = cross_check(&rel(2), &sec, 2, 2, &ctx).unwrap();
            assert!(v.is_pass(), "{id} {sec}: {v:?}");
            let bad = cross_check(&rel(4), &sec, 2, 2, &ctx).unwrap();
            assert_eq!(bad.status, Status::Fail, "{id} {sec}");
            assert!(bad.mismatch.is_some());
        }
    }
}
