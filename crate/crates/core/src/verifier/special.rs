//! Self-checks of the special functions.

use crate::qseries::special::{delta_series, geom_expand, inv_qnum_ell, theta_series, theta_series_inv, EllFamily, Mono, Orientation};
use crate::qseries::{Coeff, Comparison, Ctx, PSeries, XLaurent};
use crate::vop::verdict::deg_string;
use crate::vop::{Mismatch, Verdict};
use crate::Result;

/// `p` and `p* = p q^{-2k}` as nome monomials.
fn bases() -> [Mono; 2] {
    [Mono::new(4, 0, 0), Mono::new(4, 0, -4)]
}

fn verdict(c: Comparison, ctx: &Ctx, what: &str) -> Verdict {
    match c {
        Comparison::Agree { compared, .. } => Verdict::pass(ctx.window, ctx.prec4, compared),
        Comparison::Differ { m, deg4, lhs, rhs } => Verdict::fail(
            ctx.window,
            ctx.prec4,
            Mismatch { x_power: m, p_degree: deg_string(deg4), lhs: lhs.render("p"), rhs: rhs.render("p"), note: what.into() },
        ),
    }
}

fn all(vs: impl IntoIterator<Item = Verdict>, ctx: &Ctx) -> Verdict {
    vs.into_iter().fold(Verdict::pass(ctx.window, ctx.prec4, 0), Verdict::and)
}

/// `Θ_t(t s x) = -(s x)^{-1} Θ_t(s x)` for `s ∈ {1, q², q^{-2}}`.
pub fn theta_quasi_periodicity(ctx: &Ctx) -> Result<Verdict> {
    let mut vs = Vec::new();
    for t in bases() {
        for s in [Mono::ONE, Mono::new(0, 4, 0), Mono::new(0, -4, 0)] {
            let lhs = theta_series(t.mul(s), t, ctx.prec4)?;
            let rhs = theta_series(s, t, ctx.prec4)?.shift(-1).scale_coeff(&-s.inv().coeff());
            vs.push(verdict(lhs.compare(&rhs, ctx.window, ctx.prec4), ctx, "quasi-periodicity"));
        }
    }
    Ok(all(vs, ctx))
}

/// `Θ_t(x) = Θ_t(t/x)`.
pub fn theta_inversion(ctx: &Ctx) -> Result<Verdict> {
    let mut vs = Vec::new();
    for t in bases() {
        let lhs = theta_series(Mono::ONE, t, ctx.prec4)?;
        let rhs = theta_series_inv(t, t, ctx.prec4)?;
        vs.push(verdict(lhs.compare(&rhs, ctx.window, ctx.prec4), ctx, "inversion"));
    }
    Ok(all(vs, ctx))
}

/// `1/(1 - c x)|_{|x|<1} - 1/(1 - c x)|_{|x|>1} = δ(c x)` on the window.
pub fn formal_delta(ctx: &Ctx) -> Result<Verdict> {
    let mut vs = Vec::new();
    for (c, m) in [(Coeff::one(), Mono::ONE), (Coeff::q(2), Mono::ONE), (Coeff::one(), Mono::new(0, 0, -2)), (Coeff::int(3), Mono::new(0, 1, 1))] {
        let inner = geom_expand(&c, m, Orientation::Inner, ctx.window, ctx.prec4)?;
        let outer = geom_expand(&c, m, Orientation::Outer, ctx.window, ctx.prec4)?;
        let lhs = (&inner - &outer).restrict(-ctx.window, ctx.window);
        let rhs = delta_series(&c, m, ctx.window, ctx.prec4)?;
        vs.push(verdict(lhs.compare(&rhs, ctx.window, ctx.prec4), ctx, "formal delta"));
    }
    Ok(all(vs, ctx))
}

/// `[r n]^{-1} [r n] = 1` and the same for `r*`, `1 ≤ n ≤ 4`.
pub fn inv_qnum_ell_inverse(ctx: &Ctx) -> Result<Verdict> {
    let mut vs = Vec::new();
    let one = Coeff::one();
    for (fam, x) in [(EllFamily::R, Mono::new(2, 0, 0)), (EllFamily::RStar, Mono::new(2, 0, -2))] {
        for n in 1..=4 {
            let xn = x.pow(n);
            let lift = 2 * n;
            let inv = inv_qnum_ell(fam, n, ctx.prec4 + lift)?;
            let num = &xn.series(&one) - &xn.inv().series(&one);
            let lhs = inv.mul_to(&num, ctx.prec4);
            let rhs = PSeries::constant(Coeff::q_minus_qinv());
            let (l, r) = (XLaurent::mono(0, lhs), XLaurent::mono(0, rhs));
            vs.push(verdict(l.compare(&r, 0, ctx.prec4), ctx, &format!("inverse q-number, n = {n}")));
        }
    }
    Ok(all(vs, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::Nome;

    #[test]
    fn special_checks_pass() {
        let ctx = Ctx::new(Nome::P, 6, 3);
        for f in [theta_quasi_periodicity, theta_inversion, formal_delta, inv_qnum_ell_inverse] {
            let v = f(&ctx).unwrap();
            assert!(v.is_pass(), "{v:?}");
            assert!(v.compared > 0);
        }
    }
}
