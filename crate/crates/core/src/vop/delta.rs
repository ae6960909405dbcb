//! Delta extraction for commutators.
//!
//! When both orientations of a product continue to the same meromorphic
//! function `h(x)/(1 - μx)`, their difference is `h(1/μ) δ(μx)`. The
//! residue operator is the normal-ordered core on the support
//! `w = x₀ z`, `x₀ = 1/μ`.

use num_traits::{One, Zero};

use super::exchange::{exchange_check, Rhs};
use super::opeq::op_eq;
use super::product::{pair_products, Orientation};
use super::verdict::{deg_string, Mismatch, Verdict};
use super::OperatorExpr;
use crate::oscillators::factor::{binomial_scalar, int_exp};
use crate::oscillators::{Factor, LinForm, ProdForm};
use crate::qseries::special::Mono;
use crate::qseries::{Coeff, Ctx, ExpForm, Nome, PSeries, Q};
use crate::{Error, Result};

/// `q^e` for a nome monomial, as an exponent.
pub fn mono_exp(nome: Nome, m: Mono) -> ExpForm {
    let half = |v: i64| ExpForm::frac(v, 2);
    let base = half(m.i) + ExpForm::k() * half(m.j);
    match nome {
        Nome::P => base + ExpForm::r() * half(m.deg4),
        Nome::T => base + (ExpForm::k() + ExpForm::int(2)) * half(m.deg4),
    }
}

/// Operators multiplying `δ(x/x₀)` with `x₀ = q^{support}`.
#[derive(Clone, Debug)]
pub struct Residue {
    pub support: ExpForm,
    pub terms: Vec<(PSeries, LinForm)>,
}

/// Residues keyed by support; q-powers expressible in the nome generators
/// are moved from the operator into the scalar.
#[derive(Clone, Debug, Default)]
pub struct ResidueSet {
    pub residues: Vec<Residue>,
}

impl ResidueSet {
    pub fn insert(&mut self, support: &ExpForm, scalar: PSeries, op: LinForm, nome: Nome, prec4: i64) {
        let s = nome.split(&op.slq);
        let scalar = scalar.mul_to(&Mono::new(s.deg4, s.i, s.j).series(&Coeff::one()), prec4);
        let op = LinForm { slq: s.tag, ..op };
        let idx = match self.residues.iter().position(|r| &r.support == support) {
            Some(i) => i,
            None => {
                self.residues.push(Residue { support: support.clone(), terms: vec![] });
                self.residues.len() - 1
            }
        };
        let terms = &mut self.residues[idx].terms;
        match terms.iter_mut().find(|(_, o)| op_eq(o, &op)) {
            Some((c, _)) => *c = (&*c + &scalar).truncate(prec4),
            None => terms.push((scalar.truncate(prec4), op)),
        }
        terms.retain(|(c, _)| !c.is_zero());
        self.residues.retain(|r| !r.terms.is_empty());
    }

    /// Adds `expr(z)` on the support `q^{support}`.
    pub fn add_expr(&mut self, support: &ExpForm, expr: &OperatorExpr, nome: Nome, prec4: i64) {
        for t in &expr.terms {
            self.insert(support, PSeries::constant(t.weight.clone()), t.op.clone(), nome, prec4);
        }
    }

    pub fn supports(&self) -> Vec<ExpForm> {
        self.residues.iter().map(|r| r.support.clone()).collect()
    }

    /// First disagreement with `o`, or the number of matched terms.
    pub fn compare(&self, o: &ResidueSet, prec4: i64) -> std::result::Result<usize, Mismatch> {
        let mut matched = 0;
        let fail = |note: String, lhs: String, rhs: String, d: i64| Mismatch { x_power: 0, p_degree: deg_string(d), lhs, rhs, note };
        for r in &self.residues {
            let Some(e) = o.residues.iter().find(|e| e.support == r.support) else {
                return Err(fail(format!("unexpected delta support q^({})", r.support), render(&r.terms), String::new(), 0));
            };
            for (c, op) in &r.terms {
                let Some((c2, _)) = e.terms.iter().find(|(_, o2)| op_eq(o2, op)) else {
                    return Err(fail(format!("residue operator at q^({}) not expected: {op}", r.support), render(&r.terms), render(&e.terms), 0));
                };
                if let Some(d) = c.first_difference(c2, prec4) {
                    return Err(fail(
                        format!("residue scalar at q^({}) for {op}", r.support),
                        c.coeff(d).unwrap_or_else(Coeff::zero).to_string(),
                        c2.coeff(d).unwrap_or_else(Coeff::zero).to_string(),
                        d,
                    ));
                }
                matched += 1;
            }
            if e.terms.len() != r.terms.len() {
                return Err(fail(format!("residue at q^({}) misses expected terms", r.support), render(&r.terms), render(&e.terms), 0));
            }
        }
        if let Some(e) = o.residues.iter().find(|e| !self.residues.iter().any(|r| r.support == e.support)) {
            return Err(fail(format!("expected delta support q^({}) absent", e.support), String::new(), render(&e.terms), 0));
        }
        Ok(matched)
    }
}

fn render(terms: &[(PSeries, LinForm)]) -> String {
    terms.iter().map(|(c, op)| format!("[{}]:exp[{}]:", c.render("p"), op)).collect::<Vec<_>>().join(" + ")
}

/// `form(x₀)` with the factor `skip` omitted.
fn eval_without(form: &ProdForm, skip: Factor, x0: Mono, prec4: i64) -> Result<PSeries> {
    let mut v = PSeries::constant(form.c.clone());
    v = v.mul_to(&x0.pow(form.xpow).series(&Coeff::one()), prec4);
    let mut apply = |g: Factor, e: &Q| -> Result<()> {
        if g.deg4() == 0 {
            let base = &Coeff::one() - &g.coeff();
            if base.is_zero() {
                if e > &Q::zero() {
                    v = PSeries::zero();
                    return Ok(());
                }
                return Err(Error::NotMeromorphic("pole of order two or more on a delta support".into()));
            }
            let n = int_exp(e)?;
            v = v.scale(&base.pow(n)?);
        } else if g.deg4() > 0 {
            v = v.mul_to(&binomial_scalar(&g, e, prec4), prec4);
        } else {
            return Err(Error::NotMeromorphic("factor of negative nome degree on a delta support".into()));
        }
        Ok(())
    };
    for (g, e) in &form.x {
        if *g == skip {
            continue;
        }
        apply(Factor { mono: g.mono.mul(x0), br2: g.br2 }, e)?;
    }
    for (g, e) in &form.y {
        apply(Factor { mono: g.mono.mul(x0.inv()), br2: g.br2 }, e)?;
    }
    for (g, e) in &form.k {
        apply(*g, e)?;
    }
    Ok(v.truncate(prec4))
}

/// The delta part of `A(z)B(w) - B(w)A(z)`, read from the poles of the
/// `|z| > |w|` product form.
pub fn commutator_delta(a: &OperatorExpr, b: &OperatorExpr, ctx: &Ctx) -> Result<ResidueSet> {
    let mut set = ResidueSet::default();
    for p in pair_products(a, b, Orientation::ZW, ctx)? {
        for (f, e) in p.form.poles() {
            if e != -Q::one() {
                return Err(Error::NotMeromorphic(format!("pole of order {} at x = 1/({})", -e, f.coeff())));
            }
            if f.br2 != 0 {
                return Err(Error::Unsupported("pole at a non-monomial point".into()));
            }
            let x0 = f.mono.inv();
            let gamma = mono_exp(ctx.nome, x0);
            let h = eval_without(&p.form, f, x0, ctx.prec4)?;
            // coef q^{qexp} z^{zexp} w^{wexp} on w = x₀ z.
            let weight = &p.mono.wexp;
            let mut op = p.core.at(&gamma);
            op.slz = &(&op.slz + &p.mono.zexp) + weight;
            op.slq = &(&op.slq + &p.mono.qexp) + &(&gamma * weight);
            let scalar = h.scale(&p.mono.coef);
            set.insert(&gamma, scalar, op, ctx.nome, ctx.prec4);
        }
    }
    Ok(set)
}

/// `[A(z), B(w)] = Σ δ(x/x₀) R_{x₀}`: the regular parts must cancel
/// (checked as a meromorphic identity) and the residues must match.
pub fn delta_check(a: &OperatorExpr, b: &OperatorExpr, expected: &ResidueSet, ctx: &Ctx) -> Result<Verdict> {
    let mut v = exchange_check(a, b, &Rhs::sign(1), ctx)?;
    if !v.is_pass() {
        return Ok(v.note("regular parts of the two orientations differ"));
    }
    let got = commutator_delta(a, b, ctx)?;
    match got.compare(expected, ctx.prec4) {
        Ok(n) => {
            v.compared += n;
            Ok(v.note(format!("delta supports {}", fmt_supports(&got))))
        }
        Err(m) => Ok(Verdict::fail(ctx.window, ctx.prec4, m)),
    }
}

fn fmt_supports(s: &ResidueSet) -> String {
    s.supports().iter().map(|e| format!("q^({e})")).collect::<Vec<_>>().join(", ")
}

/// `A(z)B(w) = sign · B(w)A(z) = O(1)`: the orientations agree as a
/// meromorphic function and the poles of all terms cancel in the sum.
pub fn regular_exchange(a: &OperatorExpr, b: &OperatorExpr, sign: i64, ctx: &Ctx) -> Result<Verdict> {
    let v = exchange_check(a, b, &Rhs::sign(sign), ctx)?;
    if !v.is_pass() {
        return Ok(v);
    }
    let got = commutator_delta(a, b, ctx)?;
    if let Some(r) = got.residues.first() {
        let m = Mismatch {
            x_power: 0,
            p_degree: deg_string(0),
            lhs: render(&r.terms),
            rhs: "0".into(),
            note: format!("pole at w = q^({}) z survives", r.support),
        };
        return Ok(Verdict::fail(ctx.window, ctx.prec4, m));
    }
    Ok(v)
}

/// `A(z)B(w) = sign · B(w)A(z) = ₙ∂_w[1/(z-w) s̃(z)] + regular`, i.e. poles
/// only at `w = q^{±n} z` with residues `±q^{±n}/((q-q^{-1}) z²) s̃(z)`.
pub fn total_qdiff_check(a: &OperatorExpr, b: &OperatorExpr, sign: i64, n: &ExpForm, stilde: &OperatorExpr, ctx: &Ctx) -> Result<Verdict> {
    let v = exchange_check(a, b, &Rhs::sign(sign), ctx)?;
    if !v.is_pass() {
        return Ok(v.note("(anti)symmetry of the two orientations fails"));
    }
    let qq = Coeff::q_minus_qinv().inv()?;
    let sz = stilde.times(&LinForm::z_pow(ExpForm::int(-2)));
    let mut expected = ResidueSet::default();
    // 1/((q-q^{-1}) w z) · 1/(1 - q^n x) on x₀ = q^{-n}, and minus the same with -n.
    let minus_n = -n.clone();
    expected.add_expr(&minus_n, &sz.times(&LinForm::q_pow(n.clone())).scale(&qq), ctx.nome, ctx.prec4);
    expected.add_expr(n, &sz.times(&LinForm::q_pow(minus_n.clone())).scale(&(-qq)), ctx.nome, ctx.prec4);
    let got = commutator_delta(a, b, ctx)?;
    match got.compare(&expected, ctx.prec4) {
        Ok(m) => Ok(Verdict { compared: v.compared + m, ..v }.note(format!("poles at {}", fmt_supports(&got)))),
        Err(m) => Ok(Verdict::fail(ctx.window, ctx.prec4, m)),
    }
}
