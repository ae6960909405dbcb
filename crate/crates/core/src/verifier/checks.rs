//! The checks a relation can be made of, and their evaluation.

use std::sync::Arc;

use rayon::prelude::*;

use crate::fock::{cross_check, FockRelation, Sector};
use crate::qseries::special::{geom_expand, Mono, Orientation as GeomSide};
use crate::qseries::{Coeff, Comparison, Ctx, ExpForm, Nome, PSeries, XLaurent};
use crate::vop::verdict::deg_string;
use crate::vop::{
    delta_check, exchange_check, multiply, op_eq, poly_exchange_check, regular_exchange, total_qdiff_check, Mismatch, Monomial, OperatorExpr, Orientation,
    ResidueSet, Rhs, Verdict,
};
use crate::{Error, Result};

/// `(q^{e} v; p)_∞^{pow}`, or the single factor `(1 - q^{e} v)^{pow}`
/// unless `infinite`, with `v = x = w/z`, or `v = y = z/w` when `in_y`.
#[derive(Clone, Debug)]
pub struct Poch {
    pub e: ExpForm,
    pub in_y: bool,
    pub pow: i64,
    pub infinite: bool,
}

pub type Custom = Arc<dyn Fn(&Ctx) -> Result<Verdict> + Send + Sync>;

/// One machine check; a relation is the conjunction of its checks.
#[derive(Clone)]
pub enum Check {
    /// `Π(a z - b w) A(z)B(w) = Π(c z - d w) B(w)A(z)` formally.
    Poly { a: OperatorExpr, b: OperatorExpr, lhs: Vec<(Coeff, Coeff)>, rhs: Vec<(Coeff, Coeff)> },
    /// `A(z)B(w) = rhs · B(w)A(z)` meromorphically, in the given nome.
    Exchange { a: OperatorExpr, b: OperatorExpr, rhs: Rhs, nome: Nome },
    /// `[A(z), B(w)] = Σ δ(x/x₀) R(z)`.
    Delta { a: OperatorExpr, b: OperatorExpr, expected: ResidueSet },
    /// `A(z)B(w) = sign · B(w)A(z) = O(1)`.
    Regular { a: OperatorExpr, b: OperatorExpr, sign: i64 },
    /// `A(z)B(w) = sign · B(w)A(z) = ₙ∂_w[1/(z-w) s̃(z)] + O(1)`.
    QDiff { a: OperatorExpr, b: OperatorExpr, sign: i64, n: ExpForm, stilde: OperatorExpr },
    /// Equality of single-term operators as normal-ordered exponentials.
    OpEq { x: OperatorExpr, y: OperatorExpr },
    /// The single term-pair product `A(z)B(w)` (or `B(w)A(z)`) equals
    /// `mono · Π poch` as a formal series.
    Prefactor { a: OperatorExpr, b: OperatorExpr, orient: Orientation, mono: Monomial, factors: Vec<Poch> },
    /// Matrix-element oracle on the highest weight vectors of `sectors`.
    Fock { rel: FockRelation, sectors: Vec<Sector> },
    Custom(Custom),
}

/// Truncation parameters shared by a run.
#[derive(Clone, Copy, Debug)]
pub struct Env {
    pub ctx: Ctx,
    pub grade: i64,
    /// x-window of the matrix-element oracle, whose cost grows with
    /// `grade + window`.
    pub oracle_window: i64,
}

/// Default oracle window.
pub const ORACLE_WINDOW: i64 = 2;

impl Check {
    pub fn run(&self, env: &Env) -> Result<Verdict> {
        let ctx = &env.ctx;
        match self {
            Check::Poly { a, b, lhs, rhs } => poly_exchange_check(a, b, lhs, rhs, ctx),
            Check::Exchange { a, b, rhs, nome } => exchange_check(a, b, rhs, &ctx.with_nome(*nome)),
            Check::Delta { a, b, expected } => delta_check(a, b, expected, ctx),
            Check::Regular { a, b, sign } => regular_exchange(a, b, *sign, ctx),
            Check::QDiff { a, b, sign, n, stilde } => total_qdiff_check(a, b, *sign, n, stilde, ctx),
            Check::OpEq { x, y } => Ok(opeq_verdict(x, y, ctx)),
            Check::Prefactor { a, b, orient, mono, factors } => prefactor_check(a, b, *orient, mono, factors, ctx),
            Check::Fock { rel, sectors } => {
                let w = env.oracle_window;
                let vs = sectors.par_iter().map(|s| Ok(cross_check(rel, s, env.grade, w, ctx)?.note(format!("sector {s}")))).collect::<Result<Vec<_>>>()?;
                Ok(vs.into_iter().fold(Verdict::pass(w, ctx.prec4, 0), Verdict::and))
            }
            Check::Custom(f) => f(ctx),
        }
    }
}

fn opeq_verdict(x: &OperatorExpr, y: &OperatorExpr, ctx: &Ctx) -> Verdict {
    let same = x.terms.len() == y.terms.len() && x.terms.iter().zip(&y.terms).all(|(s, t)| s.weight == t.weight && op_eq(&s.op, &t.op));
    if same {
        Verdict::pass(ctx.window, ctx.prec4, x.terms.len())
    } else {
        Verdict::fail(
            ctx.window,
            ctx.prec4,
            Mismatch { x_power: 0, p_degree: "0".into(), lhs: x.to_string(), rhs: y.to_string(), note: "normal-ordered exponents differ".into() },
        )
    }
}

/// `Π poch` as a formal series in `x`.
fn poch_series(factors: &[Poch], ctx: &Ctx) -> Result<XLaurent> {
    let n = ctx.window;
    let mut acc = XLaurent::one();
    for f in factors {
        let base = Mono::from_exp(ctx.nome, &f.e)?;
        let p = Mono::from_exp(ctx.nome, &(ExpForm::int(2) * ExpForm::r()))?;
        let mut m = 0;
        loop {
            let c = base.mul(p.pow(m));
            if c.deg4 > ctx.prec4 {
                break;
            }
            let one = PSeries::one();
            let mut s = match f.pow {
                1 => XLaurent::poly([(0, one), (1, c.series(&Coeff::int(-1)))]),
                -1 => geom_expand(&Coeff::one(), c, GeomSide::Inner, n, ctx.prec4)?,
                _ => return Err(Error::Unsupported("Pochhammer powers other than ±1".into())),
            };
            if f.in_y {
                s = s.reflect();
            }
            acc = acc.mul(&s, ctx.prec4)?;
            if !f.infinite {
                break;
            }
            m += 1;
        }
    }
    Ok(acc)
}

fn prefactor_check(a: &OperatorExpr, b: &OperatorExpr, orient: Orientation, mono: &Monomial, factors: &[Poch], ctx: &Ctx) -> Result<Verdict> {
    let prods = multiply(a, b, orient, ctx)?;
    let [p] = prods.as_slice() else {
        return Ok(Verdict::fail_note(ctx.window, ctx.prec4, "expected a single term pair"));
    };
    let (got, want) = (p.mono.normalize(ctx.nome)?, mono.normalize(ctx.nome)?);
    if got.key != want.key {
        return Ok(Verdict::fail(
            ctx.window,
            ctx.prec4,
            Mismatch { x_power: 0, p_degree: "0".into(), lhs: got.key.to_string(), rhs: want.key.to_string(), note: "monomial prefactors differ".into() },
        ));
    }
    let lhs = p.prefactor.shift(got.xint).scale(&got.series);
    let rhs = poch_series(factors, ctx)?.shift(want.xint).scale(&want.series);
    Ok(match lhs.compare(&rhs, ctx.window, ctx.prec4) {
        Comparison::Agree { compared, .. } => Verdict::pass(ctx.window, ctx.prec4, compared),
        Comparison::Differ { m, deg4, lhs, rhs } => Verdict::fail(
            ctx.window,
            ctx.prec4,
            Mismatch { x_power: m, p_degree: deg_string(deg4), lhs: lhs.render("p"), rhs: rhs.render("p"), note: "prefactor series differ".into() },
        ),
    })
}
