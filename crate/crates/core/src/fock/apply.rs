//! `:exp L(z):` acting on PBW states, one mode at a time.

use std::collections::BTreeMap;

use num_traits::One;

use super::{add_into, Pbw, Sector, State};
use crate::oscillators::{Family, LinForm, Side, Zero};
use crate::qseries::special::Mono;
use crate::qseries::{Coeff, ExpForm, Nome, PSeries, Q};
use crate::vop::OperatorExpr;
use crate::Result;

/// An output component: `z^{z} q^{qtag}` times a PBW state. `qtag` holds
/// the part of the zero-mode q-power the nome generators cannot express.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub z: ExpForm,
    pub qtag: ExpForm,
    pub sector: Sector,
    pub pbw: Pbw,
}

/// `op(z)|state⟩`, keyed by z-power and output state.
pub type Action = BTreeMap<Key, PSeries>;

/// Per-family kernel values `K_f(n)` of one side of a [`LinForm`].
struct Modes {
    vals: BTreeMap<(Family, i64), PSeries>,
}

impl Modes {
    fn new(l: &LinForm, side: Side, nmax: i64, nome: Nome, prec4: i64) -> Result<Modes> {
        let mut vals = BTreeMap::new();
        for s in l.side(side) {
            for n in 1..=nmax {
                let v = s.kernel.eval(n, nome, prec4)?;
                let slot = vals.entry((s.fam, n)).or_insert_with(PSeries::zero);
                *slot = (&*slot + &v).truncate(prec4);
            }
        }
        vals.retain(|_, v: &mut PSeries| !v.is_zero());
        Ok(Modes { vals })
    }

    fn get(&self, f: Family, n: i64) -> Option<&PSeries> {
        self.vals.get(&(f, n))
    }
}

fn binomial(c: u32, j: u32) -> Q {
    let mut b = Q::one();
    for i in 0..j {
        b = b * Q::from_integer((c - i).into()) / Q::from_integer((i + 1).into());
    }
    b
}

fn pow_to(x: &PSeries, j: u32, prec4: i64) -> PSeries {
    let mut out = PSeries::one();
    for _ in 0..j {
        out = out.mul_to(x, prec4);
    }
    out
}

/// `exp(ann)` on one PBW monomial: every subset of the present modes may
/// be removed, `f_n^j f_{-n}^c = c!/(c-j)! [f_n, f_{-n}]^j f_{-n}^{c-j}`.
fn annihilate(ann: &Modes, pbw: &Pbw, nome: Nome, prec4: i64) -> Result<Vec<(Pbw, i64, PSeries)>> {
    let mut out = vec![(pbw.clone(), 0i64, PSeries::one())];
    for (&(f, n), &c) in &pbw.0 {
        let Some(k) = ann.get(f, n) else { continue };
        let kn = k.mul_to(&f.norm_series(n, nome)?, prec4);
        let mut next = Vec::new();
        for (p, zs, v) in &out {
            for j in 0..=c {
                let w = pow_to(&kn, j, prec4).scale_q(&binomial(c, j)).mul_to(v, prec4);
                if !w.is_zero() {
                    next.push((p.with(f, n, -i64::from(j)), zs - n * i64::from(j), w));
                }
            }
        }
        out = next;
    }
    Ok(out)
}

/// `exp(cre)` truncated at grade `budget`: `Π (K_f(n) z^n f_{-n})^j / j!`.
fn create(cre: &Modes, budget: i64, prec4: i64) -> Vec<(Pbw, PSeries)> {
    let modes: Vec<(&(Family, i64), &PSeries)> = cre.vals.iter().filter(|((_, n), _)| *n <= budget).collect();
    let mut out = Vec::new();
    fn rec(modes: &[(&(Family, i64), &PSeries)], budget: i64, pbw: Pbw, c: PSeries, prec4: i64, out: &mut Vec<(Pbw, PSeries)>) {
        let Some((&(f, n), k)) = modes.first() else {
            out.push((pbw, c));
            return;
        };
        let mut term = c;
        let mut j: u32 = 0;
        let mut p = pbw;
        loop {
            rec(&modes[1..], budget - n * i64::from(j), p.clone(), term.clone(), prec4, out);
            j += 1;
            if n * i64::from(j) > budget {
                break;
            }
            term = term.mul_to(k, prec4).scale_q(&Q::new(1.into(), i64::from(j).into()));
            if term.is_zero() {
                break;
            }
            p = p.with(f, n, 1);
        }
    }
    rec(&modes, budget, Pbw::default(), PSeries::one(), prec4, &mut out);
    out
}

/// `z^{Σ plz p + slz}` and `q^{Σ plq p + slq}` on a sector.
fn zero_mode_powers(l: &LinForm, s: &Sector) -> (ExpForm, ExpForm) {
    let mut z = l.slz.clone();
    let mut q = l.slq.clone();
    for zm in Zero::ALL {
        let e = s.eigenvalue(zm);
        z = &z + &(&l.plz[zm.idx()] * &e);
        q = &q + &(&l.plq[zm.idx()] * &e);
    }
    (z, q)
}

/// Precomputed action of one normal-ordered exponential.
pub struct Prepared<'a> {
    op: &'a LinForm,
    weight: Coeff,
    ann: Modes,
    cre: Modes,
}

impl<'a> Prepared<'a> {
    pub fn new(op: &'a LinForm, weight: Coeff, nmax: i64, nome: Nome, prec4: i64) -> Result<Self> {
        Ok(Prepared { op, weight, ann: Modes::new(op, Side::Ann, nmax, nome, prec4)?, cre: Modes::new(op, Side::Cre, nmax, nome, prec4)? })
    }

    /// Adds `weight :exp L(z): c|sector, pbw⟩` to `out`, keeping output
    /// grades `≤ cap`.
    #[allow(clippy::too_many_arguments)]
    pub fn act(&self, sector: &Sector, pbw: &Pbw, c: &PSeries, cap: i64, nome: Nome, prec4: i64, out: &mut Action) -> Result<()> {
        let (zz, qq) = zero_mode_powers(self.op, sector);
        let sp = nome.split(&qq);
        let qs = Mono::new(sp.deg4, sp.i, sp.j).series(&self.weight);
        let c0 = c.mul_to(&qs, prec4);
        let target = sector.shifted(&self.op.zq);
        for (p, zs, v) in annihilate(&self.ann, pbw, nome, prec4)? {
            let g = p.grade();
            if g > cap {
                continue;
            }
            let base = v.mul_to(&c0, prec4);
            if base.is_zero() {
                continue;
            }
            for (cp, cv) in create(&self.cre, cap - g, prec4) {
                let key = Key { z: &zz + &ExpForm::int(zs + cp.grade()), qtag: sp.tag.clone(), sector: target.clone(), pbw: p.times(&cp) };
                add_into(out, key, base.mul_to(&cv, prec4), prec4);
            }
        }
        Ok(())
    }
}

/// `op(z)|state⟩` with output grades `≤ grade`, at nome precision `prec4`.
pub fn apply_truncated(op: &OperatorExpr, s: &State, grade: i64, nome: Nome, prec4: i64) -> Result<Action> {
    let nmax = grade.max(s.max_grade()).max(1);
    let mut out = Action::new();
    for t in &op.terms {
        let pr = Prepared::new(&t.op, t.weight.clone(), nmax, nome, prec4)?;
        for ((sec, pbw), c) in &s.terms {
            pr.act(sec, pbw, c, grade, nome, prec4, &mut out)?;
        }
    }
    Ok(out)
}

/// The identity as an [`OperatorExpr`].
pub fn identity() -> OperatorExpr {
    OperatorExpr::single(LinForm::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, FieldId};

    fn hw(l: i64, m1: i64, m2: i64) -> State {
        State::highest(Sector::int(l, m1, m2, 0))
    }

    #[test]
    fn psi_plus_grade_zero_eigenvalue() {
        for (l, m1, m2) in [(0, 0, 0), (1, 0, 0), (1, 1, 1), (3, 2, -1)] {
            let out = apply_truncated(&build(FieldId::PsiPlus).unwrap(), &hw(l, m1, m2), 0, Nome::P, 8).unwrap();
            assert_eq!(out.len(), 1);
            let (k, v) = out.iter().next().unwrap();
            assert_eq!(k.sector, Sector::int(l, m1, m2, 0));
            assert!(k.pbw.0.is_empty() && k.z.is_zero() && k.qtag.is_zero());
            assert!(v.eq_upto(&PSeries::constant(Coeff::q(l - 2 * m1)), 8), "{v}");
        }
    }

    #[test]
    fn e_plus_cancels_on_vacuum() {
        let out = apply_truncated(&build(FieldId::EPlus).unwrap(), &hw(0, 0, 0), 0, Nome::P, 8).unwrap();
        assert!(out.is_empty(), "{out:?}");
    }

    #[test]
    fn identity_acts_trivially() {
        let s = hw(2, 1, 0);
        let out = apply_truncated(&identity(), &s, 3, Nome::P, 8).unwrap();
        assert_eq!(out.len(), 1);
        let (k, v) = out.iter().next().unwrap();
        assert_eq!((k.sector.clone(), k.pbw.clone()), s.terms.keys().next().unwrap().clone());
        assert!(v.eq_upto(&PSeries::one(), 8));
    }
}
