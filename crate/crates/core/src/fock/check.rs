//! Matrix-element cross-checks of two-point relations on highest weight
//! vectors.

use std::collections::{BTreeMap, BTreeSet};

use super::apply::{apply_truncated, Prepared};
use super::{add_into, Action, Pbw, Sector, State};
use crate::oscillators::{LinForm, Zero};
use crate::qseries::special::Mono;
use crate::qseries::{Coeff, Ctx, ExpForm, PSeries};
use crate::vop::verdict::deg_string;
use crate::vop::{Mismatch, OperatorExpr, ResidueSet, Verdict};
use crate::Result;

/// A relation in a form the oracle can evaluate on states.
#[derive(Clone, Debug)]
pub enum FockRelation {
    /// `Π(a z - b w) A(z)B(w) = Π(c z - d w) B(w)A(z)`.
    Poly { a: OperatorExpr, b: OperatorExpr, lhs: Vec<(Coeff, Coeff)>, rhs: Vec<(Coeff, Coeff)> },
    /// `A(z)B(w) - B(w)A(z) = Σ δ(x/x₀) R(z)` with `x = w/z`.
    Delta { a: OperatorExpr, b: OperatorExpr, residues: ResidueSet },
    /// `X(z) = Y(z)`.
    Equal { x: OperatorExpr, y: OperatorExpr },
}

/// A component of a two-point action on `|σ⟩`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Key2 {
    pub z: ExpForm,
    pub w: ExpForm,
    pub qtag: ExpForm,
    pub sector: Sector,
    pub pbw: Pbw,
}

pub type Action2 = BTreeMap<Key2, PSeries>;

/// Exponents of one operator's leading z-power on a sector, one per term.
#[derive(Clone, Debug)]
struct Frontier {
    alphas: Vec<ExpForm>,
    mid: i64,
}

impl Frontier {
    /// The coefficient of `v^e` is exact when every term whose leading
    /// power differs from `e` by an integer `j` has `j ≤ mid`.
    fn known(&self, e: &ExpForm) -> bool {
        self.alphas.iter().all(|a| (e - a).as_integer().is_none_or(|j| j <= self.mid))
    }
}

fn zero_z(l: &LinForm, s: &Sector) -> ExpForm {
    let mut z = l.slz.clone();
    for zm in Zero::ALL {
        z = &z + &(&l.plz[zm.idx()] * &s.eigenvalue(zm));
    }
    z
}

/// `second first |σ⟩`, the first operator's creation kept to grade `mid`
/// and outputs to grade `cap`. When `first_is_w`, the first operator is
/// `B(w)` and the second `A(z)`; otherwise the roles of `z, w` swap.
#[allow(clippy::too_many_arguments)]
fn two_point(first: &OperatorExpr, second: &OperatorExpr, first_is_w: bool, sector: &Sector, mid: i64, cap: i64, ctx: &Ctx, prec4: i64) -> Result<(Action2, Frontier)> {
    let inner = apply_truncated(first, &State::highest(sector.clone()), mid, ctx.nome, prec4)?;
    let frontier = Frontier { alphas: first.terms.iter().map(|t| zero_z(&t.op, sector)).collect(), mid };
    let nmax = mid.max(cap).max(1);
    let prepared: Vec<Prepared> = second.terms.iter().map(|t| Prepared::new(&t.op, t.weight.clone(), nmax, ctx.nome, prec4)).collect::<Result<_>>()?;
    let mut out = Action2::new();
    for (k1, c1) in &inner {
        let mut acc = Action::new();
        for p in &prepared {
            p.act(&k1.sector, &k1.pbw, c1, cap, ctx.nome, prec4, &mut acc)?;
        }
        for (k2, c2) in acc {
            let (z, w) = if first_is_w { (k2.z, k1.z.clone()) } else { (k1.z.clone(), k2.z) };
            let key = Key2 { z, w, qtag: &k1.qtag + &k2.qtag, sector: k2.sector, pbw: k2.pbw };
            add_into(&mut out, key, c2, prec4);
        }
    }
    Ok((out, frontier))
}

/// `Π (a z - b w)` as `(coefficient, z-degree, w-degree)` terms.
fn expand_poly(factors: &[(Coeff, Coeff)]) -> Vec<(Coeff, i64, i64)> {
    let mut terms: BTreeMap<(i64, i64), Coeff> = BTreeMap::new();
    terms.insert((0, 0), Coeff::one());
    for (a, b) in factors {
        let mut next: BTreeMap<(i64, i64), Coeff> = BTreeMap::new();
        for ((dz, dw), c) in &terms {
            for (nz, nw, f) in [(dz + 1, *dw, a.clone()), (*dz, dw + 1, -b.clone())] {
                let slot = next.entry((nz, nw)).or_insert_with(Coeff::zero);
                *slot = &*slot + &(c * &f);
            }
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
    }
    terms.into_iter().map(|((dz, dw), c)| (c, dz, dw)).collect()
}

fn times_poly(a: &Action2, poly: &[(Coeff, i64, i64)], prec4: i64) -> Action2 {
    let mut out = Action2::new();
    for (k, v) in a {
        for (c, dz, dw) in poly {
            let key = Key2 { z: &k.z + &ExpForm::int(*dz), w: &k.w + &ExpForm::int(*dw), ..k.clone() };
            add_into(&mut out, key, v.scale(c), prec4);
        }
    }
    out
}

/// `Σ δ(x/x₀) R(z)|σ⟩` restricted to `w`-powers in `ws`.
fn delta_side(res: &ResidueSet, sector: &Sector, ws: &BTreeSet<i64>, cap: i64, ctx: &Ctx, prec4: i64) -> Result<Action2> {
    let hw = State::highest(sector.clone());
    let mut out = Action2::new();
    for r in &res.residues {
        for (scalar, op) in &r.terms {
            let act = apply_truncated(&OperatorExpr::single(op.clone()), &hw, cap, ctx.nome, prec4)?;
            for &n in ws {
                let x0n = Mono::from_exp(ctx.nome, &(&r.support * &ExpForm::int(-n)))?.series(&Coeff::one());
                let c = scalar.mul_to(&x0n, prec4);
                for (k, v) in &act {
                    let key = Key2 { z: &k.z - &ExpForm::int(n), w: ExpForm::int(n), qtag: k.qtag.clone(), sector: k.sector.clone(), pbw: k.pbw.clone() };
                    add_into(&mut out, key, v.mul_to(&c, prec4), prec4);
                }
            }
        }
    }
    Ok(out)
}

/// Compares `lhs` with `rhs + extra` on every key accepted by `known`.
/// With `total`, every component is exact and two vanishing sides agree.
fn compare(sides: [&Action2; 3], known: impl Fn(&Key2) -> bool, total: bool, window: i64, prec4: i64) -> Verdict {
    let keys: BTreeSet<&Key2> = sides.iter().flat_map(|s| s.keys()).filter(|k| known(k)).collect();
    let zero = PSeries::zero();
    let mut compared = 0;
    for k in keys {
        let [l, r, d] = sides.map(|s| s.get(k).unwrap_or(&zero));
        let rhs = r + d;
        compared += 1;
        if let Some(deg) = l.first_difference(&rhs, prec4) {
            let m = Mismatch {
                x_power: k.w.as_integer().unwrap_or(0),
                p_degree: deg_string(deg),
                lhs: l.render("p"),
                rhs: rhs.render("p"),
                note: format!("z^({}) w^({}) q^({}) {} {}", k.z, k.w, k.qtag, k.pbw, k.sector),
            };
            return Verdict::fail(window, prec4, m);
        }
    }
    if compared == 0 && !total {
        return Verdict::inconclusive(window, prec4, "no matrix element inside the truncation");
    }
    Verdict::pass(window, prec4, compared)
}

/// Applies both sides of `rel` to the highest weight vector of `sector`
/// and compares all components of output grade `≤ grade` whose
/// coefficients are exact within the intermediate window `grade + window`.
pub fn cross_check(rel: &FockRelation, sector: &Sector, grade: i64, window: i64, ctx: &Ctx) -> Result<Verdict> {
    let mid = grade + window;
    let prec4 = ctx.prec4;
    let empty = Action2::new();
    match rel {
        FockRelation::Equal { x, y } => {
            let hw = State::highest(sector.clone());
            let lift = |a: Action| -> Action2 {
                a.into_iter().map(|(k, v)| (Key2 { z: k.z, w: ExpForm::zero(), qtag: k.qtag, sector: k.sector, pbw: k.pbw }, v)).collect()
            };
            let l = lift(apply_truncated(x, &hw, grade, ctx.nome, prec4)?);
            let r = lift(apply_truncated(y, &hw, grade, ctx.nome, prec4)?);
            Ok(compare([&l, &r, &empty], |_| true, true, window, prec4))
        }
        FockRelation::Poly { a, b, lhs, rhs } => {
            let (zw, fw) = two_point(b, a, true, sector, mid, grade, ctx, prec4)?;
            let (wz, fz) = two_point(a, b, false, sector, mid, grade, ctx, prec4)?;
            let (lp, rp) = (expand_poly(lhs), expand_poly(rhs));
            let l = times_poly(&zw, &lp, prec4);
            let r = times_poly(&wz, &rp, prec4);
            let known = |k: &Key2| fw.known(&k.w) && fz.known(&k.z);
            Ok(compare([&l, &r, &empty], known, false, window, prec4))
        }
        FockRelation::Delta { a, b, residues } => {
            let (zw, fw) = two_point(b, a, true, sector, mid, grade, ctx, prec4)?;
            let (wz, fz) = two_point(a, b, false, sector, mid, grade, ctx, prec4)?;
            let known = |k: &Key2| fw.known(&k.w) && fz.known(&k.z);
            let ws: BTreeSet<i64> = zw.keys().chain(wz.keys()).filter(|k| known(k)).filter_map(|k| k.w.as_integer()).collect();
            let d = delta_side(residues, sector, &ws, grade, ctx, prec4)?;
            Ok(compare([&zw, &wz, &d], known, false, window, prec4))
        }
    }
}

/// `⟨σ'| A(z)B(w) |σ⟩` for the highest weight vector `σ'` of the output
/// sector, with `B`'s creation part kept to grade `window`. Keys carry the
/// z- and w-powers and the symbolic q-power.
pub fn vacuum_expectation(a: &OperatorExpr, b: &OperatorExpr, sector: &Sector, window: i64, ctx: &Ctx) -> Result<BTreeMap<(ExpForm, ExpForm, ExpForm), PSeries>> {
    let (zw, _) = two_point(b, a, true, sector, window, 0, ctx, ctx.prec4)?;
    Ok(zw.into_iter().map(|(k, v)| ((k.z, k.w, k.qtag), v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, FieldId};
    use crate::qseries::{Nome, Q};
    use num_traits::One;

    fn qm(i: i64, j: i64) -> Coeff {
        Coeff::mono(i, j, Q::one())
    }

    fn ctx() -> Ctx {
        Ctx::new(Nome::P, 2, 0)
    }

    fn e_e_exchange(s: i64) -> FockRelation {
        let e = build(if s > 0 { FieldId::EPlus } else { FieldId::EMinus }).unwrap();
        FockRelation::Poly { a: e.clone(), b: e, lhs: vec![(Coeff::one(), Coeff::q(2 * s))], rhs: vec![(Coeff::q(2 * s), Coeff::one())] }
    }

    #[test]
    fn e_e_exchange_on_vacuum() {
        for s in [1, -1] {
            let v = cross_check(&e_e_exchange(s), &Sector::int(0, 0, 0, 0), 2, 2, &ctx()).unwrap();
            assert!(v.is_pass(), "{s}: {v:?}");
        }
    }

    #[test]
    fn psi_e_exchange_on_spin_one() {
        let pp = build(FieldId::PsiPlus).unwrap();
        for (s, id) in [(1, FieldId::EPlus), (-1, FieldId::EMinus)] {
            let rel = FockRelation::Poly { a: pp.clone(), b: build(id).unwrap(), lhs: vec![(Coeff::one(), qm(4 * s, -s))], rhs: vec![(Coeff::q(2 * s), qm(0, -s))] };
            let v = cross_check(&rel, &Sector::int(1, 0, 0, 0), 2, 2, &ctx()).unwrap();
            assert!(v.is_pass(), "{s}: {v:?}");
        }
    }

    #[test]
    fn wrong_factor_fails() {
        let pp = build(FieldId::PsiPlus).unwrap();
        let rel = FockRelation::Poly { a: pp, b: build(FieldId::EPlus).unwrap(), lhs: vec![(Coeff::one(), qm(4, 1))], rhs: vec![(Coeff::q(2), qm(0, -1))] };
        let v = cross_check(&rel, &Sector::int(1, 0, 0, 0), 2, 2, &ctx()).unwrap();
        assert!(!v.is_pass());
    }

    #[test]
    fn trivial_relation_passes() {
        let x = build(FieldId::EMinus).unwrap();
        for g in 0..3 {
            let v = cross_check(&FockRelation::Equal { x: x.clone(), y: x.clone() }, &Sector::int(1, 1, 1, 0), g, 2, &ctx()).unwrap();
            assert!(v.is_pass(), "{v:?}");
        }
    }

    #[test]
    fn e_plus_e_minus_commutator() {
        let c = ctx();
        let k = ExpForm::k();
        let h = &k * &ExpForm::frac(1, 2);
        let (pp, pm) = (build(FieldId::PsiPlus).unwrap(), build(FieldId::PsiMinus).unwrap());
        let qq = Coeff::q_minus_qinv().inv().unwrap();
        let z2 = LinForm::z_pow(ExpForm::int(-2));
        let mut res = ResidueSet::default();
        res.add_expr(&-k.clone(), &pp.shift_arg(&-h.clone()).times(&z2).times(&LinForm::q_pow(k.clone())).scale(&qq), c.nome, c.prec4);
        res.add_expr(&k, &pm.shift_arg(&h).times(&z2).times(&LinForm::q_pow(-k.clone())).scale(&-qq), c.nome, c.prec4);
        let rel = FockRelation::Delta { a: build(FieldId::EPlus).unwrap(), b: build(FieldId::EMinus).unwrap(), residues: res };
        for s in [Sector::int(0, 0, 0, 0), Sector::int(1, 1, 1, 0)] {
            let v = cross_check(&rel, &s, 2, 2, &c).unwrap();
            assert!(v.is_pass(), "{s}: {v:?}");
        }
    }
}
