//! Exchange relations `A(z)B(w) = R(z/w) B(w)A(z)`.
//!
//! Both orientations are recognized as product forms, so the relation is
//! an identity of meromorphic functions in `x`. Multiplying by the common
//! polynomial that clears every degree-zero pole leaves finite Laurent
//! polynomials with truncated nome series as coefficients, compared in
//! full. The polynomial variant compares the formal expansions instead.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::monomial::{MonoKey, Monomial};
use super::product::{multiply, pair_products, Core, Orientation};
use super::verdict::{deg_string, Mismatch, Verdict};
use super::OperatorExpr;
use crate::oscillators::{Factor, ProdForm};
use crate::qseries::special::{JacobiRatio, Mono};
use crate::qseries::{Coeff, Ctx, ExpForm, Nome, PSeries, XLaurent, Q};
use crate::{Error, Result};

/// `Π Θ_t(q^{num} y) / Π Θ_t(q^{den} y)` with `t = q^{base}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRatio {
    pub base: ExpForm,
    pub num: Vec<ExpForm>,
    pub den: Vec<ExpForm>,
}

/// `(1 - q^{e} v)^{pow}` with `v = y` or `v = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinFactor {
    pub e: ExpForm,
    pub in_y: bool,
    pub pow: i64,
}

/// `coef · q^{qexp} · y^{yexp} · Π thetas · Π lin`, with `y = z/w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rhs {
    pub coef: Coeff,
    pub qexp: ExpForm,
    pub yexp: ExpForm,
    pub thetas: Vec<ThetaRatio>,
    pub lin: Vec<LinFactor>,
}

impl Rhs {
    pub fn sign(s: i64) -> Self {
        Rhs { coef: Coeff::int(s), qexp: ExpForm::zero(), yexp: ExpForm::zero(), thetas: vec![], lin: vec![] }
    }

    pub fn q(mut self, e: ExpForm) -> Self {
        self.qexp = &self.qexp + &e;
        self
    }

    pub fn y(mut self, e: ExpForm) -> Self {
        self.yexp = &self.yexp + &e;
        self
    }

    pub fn theta(mut self, t: ThetaRatio) -> Self {
        self.thetas.push(t);
        self
    }

    pub fn lin(mut self, e: ExpForm, in_y: bool, pow: i64) -> Self {
        self.lin.push(LinFactor { e, in_y, pow });
        self
    }

    /// Appends a Jacobi-form ratio converted to canonical form.
    pub fn jacobi(self, j: &JacobiRatio) -> Self {
        let t = ThetaRatio { base: j.base.clone(), num: vec![j.num_shift.clone()], den: vec![j.den_shift.clone()] };
        self.q(j.qexp.clone()).y(j.yexp.clone()).theta(t)
    }

    pub fn is_elliptic(&self) -> bool {
        !self.thetas.is_empty()
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::scalar(self.coef.clone()).mul(&Monomial { qexp: self.qexp.clone(), ..Monomial::one() }).times_y(&self.yexp)
    }

    /// The non-monomial part as a product form in `x`.
    pub fn form(&self, nome: Nome, prec4: i64) -> Result<ProdForm> {
        let mut p = ProdForm::one();
        for th in &self.thetas {
            let t = Mono::from_exp(nome, &th.base)?;
            for (list, sgn) in [(&th.num, 1), (&th.den, -1)] {
                for s in list {
                    let f = ProdForm::theta(Mono::from_exp(nome, s)?, t, true, prec4)?;
                    p = p.mul(&if sgn > 0 { f } else { f.inv()? });
                }
            }
        }
        for l in &self.lin {
            let f = Factor::new(Mono::from_exp(nome, &l.e)?);
            let e = crate::qseries::int(l.pow);
            p = p.mul(&if l.in_y { ProdForm::y_factor(f, e) } else { ProdForm::x_factor(f, e) });
        }
        p.canonical()
    }
}

/// A normalized summand: `series · x^{xint} · form(x)` under `key`.
struct Entry {
    key: MonoKey,
    xint: i64,
    series: PSeries,
    form: ProdForm,
}

struct Group {
    core: Core,
    lhs: Vec<Entry>,
    rhs: Vec<Entry>,
}

fn place(groups: &mut Vec<Group>, core: &Core, e: Entry, left: bool) {
    let idx = match groups.iter().position(|g| g.core.same(core)) {
        Some(i) => i,
        None => {
            groups.push(Group { core: core.clone(), lhs: vec![], rhs: vec![] });
            groups.len() - 1
        }
    };
    if left {
        groups[idx].lhs.push(e);
    } else {
        groups[idx].rhs.push(e);
    }
}

/// Exponents of the common denominator clearing every degree-zero pole.
fn clearing(entries: &[&Entry]) -> Result<ProdForm> {
    let mut need: BTreeMap<Factor, Q> = BTreeMap::new();
    for e in entries {
        for (f, ex) in e.form.poles() {
            let m = need.entry(f).or_insert_with(Q::zero);
            if ex.abs() > *m {
                *m = ex.abs();
            }
        }
    }
    let mut p = ProdForm::one();
    for (f, m) in need {
        if !m.is_integer() {
            return Err(Error::NotMeromorphic(format!("fractional pole order {m}")));
        }
        p = p.mul(&ProdForm::x_factor(f, m));
    }
    Ok(p)
}

fn side_sum(entries: &[&Entry], clear: &ProdForm, prec4: i64) -> Result<XLaurent> {
    let mut acc = XLaurent::zero();
    for e in entries {
        let s = e.form.mul(clear).expand(prec4, 0)?;
        if !s.is_finite() {
            return Err(Error::Internal("cleared product is not a polynomial".into()));
        }
        acc = &acc + &s.shift(e.xint).scale(&e.series);
    }
    Ok(acc)
}

/// Tally of an exact comparison.
#[derive(Default)]
pub(crate) struct Tally {
    pub compared: usize,
    pub nonzero: usize,
    pub nonzero_elliptic: usize,
}

/// Compares two finite expansions coefficient by coefficient.
pub(crate) fn compare_exact(l: &XLaurent, r: &XLaurent, prec4: i64, tally: &mut Tally) -> std::result::Result<(), Mismatch> {
    let keys: std::collections::BTreeSet<i64> = l.terms().keys().chain(r.terms().keys()).copied().collect();
    for m in keys {
        let a = l.coeff(m).unwrap_or_else(PSeries::zero);
        let b = r.coeff(m).unwrap_or_else(PSeries::zero);
        if let Some(d) = a.first_difference(&b, prec4) {
            return Err(Mismatch {
                x_power: m,
                p_degree: deg_string(d),
                lhs: a.coeff(d).unwrap_or_else(Coeff::zero).to_string(),
                rhs: b.coeff(d).unwrap_or_else(Coeff::zero).to_string(),
                note: String::new(),
            });
        }
        tally.compared += 1;
        let t = a.truncate(prec4);
        if !t.is_zero() {
            tally.nonzero += 1;
            if t.terms().keys().any(|d| *d > 0) {
                tally.nonzero_elliptic += 1;
            }
        }
    }
    Ok(())
}

fn entry(mono: &Monomial, form: ProdForm, nome: Nome) -> Result<Entry> {
    let n = mono.normalize(nome)?;
    let mut form = form;
    let xint = n.xint + form.xpow;
    form.xpow = 0;
    Ok(Entry { key: n.key, xint, series: n.series, form })
}

/// Verifies `A(z)B(w) = rhs · B(w)A(z)` as meromorphic functions, up to
/// nome degree `P`, with equal normal-ordered cores.
pub fn exchange_check(a: &OperatorExpr, b: &OperatorExpr, rhs: &Rhs, ctx: &Ctx) -> Result<Verdict> {
    let lhs = pair_products(a, b, Orientation::ZW, ctx)?;
    let rpp = pair_products(a, b, Orientation::WZ, ctx)?;
    let rmono = rhs.monomial();
    let rform = rhs.form(ctx.nome, ctx.prec4)?;
    let mut groups: Vec<Group> = Vec::new();
    for p in lhs {
        let e = entry(&p.mono, p.form, ctx.nome)?;
        place(&mut groups, &p.core, e, true);
    }
    for p in rpp {
        let e = entry(&p.mono.mul(&rmono), p.form.mul(&rform).canonical()?, ctx.nome)?;
        place(&mut groups, &p.core, e, false);
    }
    compare_groups(&groups, rhs.is_elliptic(), ctx)
}

fn compare_groups(groups: &[Group], elliptic: bool, ctx: &Ctx) -> Result<Verdict> {
    let mut tally = Tally::default();
    for g in groups {
        let mut keys: Vec<&MonoKey> = Vec::new();
        for e in g.lhs.iter().chain(g.rhs.iter()) {
            if !keys.contains(&&e.key) {
                keys.push(&e.key);
            }
        }
        for key in keys {
            let l: Vec<&Entry> = g.lhs.iter().filter(|e| &e.key == key).collect();
            let r: Vec<&Entry> = g.rhs.iter().filter(|e| &e.key == key).collect();
            let all: Vec<&Entry> = l.iter().chain(r.iter()).copied().collect();
            let clear = clearing(&all)?;
            let ls = side_sum(&l, &clear, ctx.prec4)?;
            let rs = side_sum(&r, &clear, ctx.prec4)?;
            if let Err(mut m) = compare_exact(&ls, &rs, ctx.prec4, &mut tally) {
                if l.is_empty() || r.is_empty() {
                    m.note = format!("monomial defect: {key} occurs on one side only");
                } else {
                    m.note = format!("core {} | {}; monomial {key}", g.core.z, g.core.w);
                }
                return Ok(Verdict::fail(ctx.window, ctx.prec4, m));
            }
        }
    }
    if tally.nonzero == 0 {
        return Ok(Verdict::inconclusive(ctx.window, ctx.prec4, "no nonzero coefficient inside the truncation"));
    }
    if elliptic && tally.nonzero_elliptic == 0 {
        return Ok(Verdict::inconclusive(ctx.window, ctx.prec4, "no nome-dependent coefficient inside the truncation"));
    }
    Ok(Verdict::pass(ctx.window, ctx.prec4, tally.compared))
}

/// `Π (a_i z - b_i w)` as `z^{len} Π (a_i - b_i x)`.
fn poly_series(factors: &[(Coeff, Coeff)]) -> XLaurent {
    let mut p = XLaurent::one();
    for (a, b) in factors {
        let f = XLaurent::poly([(0, PSeries::constant(a.clone())), (1, PSeries::constant(-b.clone()))]);
        p = p.mul(&f, crate::qseries::EXACT).expect("polynomial product");
    }
    p
}

/// Verifies `Π(a z - b w) A(z)B(w) = Π(c z - d w) B(w)A(z)` on the formal
/// expansions, within `|m| ≤ N`.
pub fn poly_exchange_check(a: &OperatorExpr, b: &OperatorExpr, lhs_poly: &[(Coeff, Coeff)], rhs_poly: &[(Coeff, Coeff)], ctx: &Ctx) -> Result<Verdict> {
    let lp = poly_series(lhs_poly);
    let rp = poly_series(rhs_poly);
    let mut groups: Vec<(Core, BTreeMap<MonoKey, (XLaurent, XLaurent)>)> = Vec::new();
    let empty = || XLaurent::with_range(-ctx.window, ctx.window, Vec::new());
    for (orient, poly, deg, left) in [(Orientation::ZW, &lp, lhs_poly.len(), true), (Orientation::WZ, &rp, rhs_poly.len(), false)] {
        for p in multiply(a, b, orient, ctx)? {
            let mono = Monomial { zexp: &p.mono.zexp + &ExpForm::int(deg as i64), ..p.mono.clone() };
            let n = mono.normalize(ctx.nome)?;
            let s = p.prefactor.mul(poly, ctx.prec4)?.shift(n.xint).scale(&n.series);
            let idx = match groups.iter().position(|(c, _)| c.same(&p.core)) {
                Some(i) => i,
                None => {
                    groups.push((p.core.clone(), BTreeMap::new()));
                    groups.len() - 1
                }
            };
            let slot = groups[idx].1.entry(n.key).or_insert_with(|| (empty(), empty()));
            if left {
                slot.0 = &slot.0 + &s;
            } else {
                slot.1 = &slot.1 + &s;
            }
        }
    }
    let mut tally = Tally::default();
    for (core, keys) in &groups {
        for (key, (l, r)) in keys {
            let lo = l.lo().max(r.lo()).max(-ctx.window);
            let hi = l.hi().min(r.hi()).min(ctx.window);
            let (l, r) = (l.restrict(lo, hi), r.restrict(lo, hi));
            if let Err(mut m) = compare_exact(&l, &r, ctx.prec4, &mut tally) {
                m.note = format!("core {} | {}; monomial {key}", core.z, core.w);
                return Ok(Verdict::fail(ctx.window, ctx.prec4, m));
            }
        }
    }
    if tally.nonzero == 0 {
        return Ok(Verdict::inconclusive(ctx.window, ctx.prec4, "no nonzero coefficient inside the window"));
    }
    Ok(Verdict::pass(ctx.window, ctx.prec4, tally.compared))
}
