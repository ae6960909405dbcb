//! Intermediate identities used in the proofs: the pole factorizations
//! of the screening OPEs and the vertex-operator prefactor.

use super::checks::{Check, Poch};
use super::table::{e, k, p_exp, Builder, RelationDef};
use crate::catalog::FieldId::*;
use crate::oscillators::LinForm;
use crate::qseries::ExpForm;
use crate::vop::{Monomial, OperatorExpr, Orientation};
use crate::Result;

const PR: &[&str] = &["proofs"];
const PRV: &[&str] = &["proofs", "vertex"];

fn mono(qexp: ExpForm, zexp: ExpForm, wexp: ExpForm) -> Monomial {
    Monomial { qexp, zexp, wexp, ..Monomial::one() }
}

fn single(e: ExpForm, in_y: bool) -> Poch {
    Poch { e, in_y, pow: -1, infinite: false }
}

fn inf(e: ExpForm, in_y: bool, pow: i64) -> Poch {
    Poch { e, in_y, pow, infinite: true }
}

fn parts(b: &Builder) -> Result<(OperatorExpr, OperatorExpr)> {
    let (a, bb) = b.conv.s_two_parts()?;
    Ok((OperatorExpr::single(a), OperatorExpr::single(bb)))
}

/// `A(z) S_I(w) = 1/(qz - w)` and `S_I(w) A(z) = 1/(w - qz)` times `:A S_I:`;
/// the same for `B` with `q → q^{-1}`.
fn poles(b: &Builder, which: i64) -> Result<Vec<Check>> {
    let (a, bb) = parts(b)?;
    let x = if which > 0 { a } else { bb };
    let s1 = b.f(SOne)?;
    let zw = Check::Prefactor { a: x.clone(), b: s1.clone(), orient: Orientation::ZW, mono: mono(e(-which), e(-1), e(0)), factors: vec![single(e(-which), false)] };
    let wz = Check::Prefactor { a: x, b: s1, orient: Orientation::WZ, mono: mono(e(0), e(0), e(-1)), factors: vec![single(e(which), true)] };
    Ok(vec![zw, wz])
}

/// `:A(z) S_I(qz): = :B(z) S_I(q^{-1}z): = s̃₃(z)`.
fn s_tilde3_fusion(b: &Builder) -> Result<Vec<Check>> {
    let (a, bb) = b.conv.s_two_parts()?;
    let s1 = b.conv.s_one();
    let t3 = b.f(STilde3)?;
    let fuse = |x: &LinForm, g: i64| OperatorExpr::single(x.add(&s1.shift_arg(&e(g))).simplified());
    Ok(vec![Check::OpEq { x: fuse(&a, 1), y: t3.clone() }, Check::OpEq { x: fuse(&bb, -1), y: t3 }])
}

/// `H⁺(u)Φ(v) = q^{l-kl/2r} z^{l/r} (q^{-l+k/2} x; p)/(q^{l+k/2} x; p) :H⁺Φ:`
/// and `Φ(v)H⁺(u) = w^{l/r} (p q^{-l-k/2} y; p)/(p q^{l-k/2} y; p) :H⁺Φ:`.
fn h_phi_prefactor(b: &Builder) -> Result<Vec<Check>> {
    let (h, phi) = (b.f(HPlus)?, b.f(Phi(b.l))?);
    let l = e(b.l);
    let hk = k() * ExpForm::frac(1, 2);
    let lr = &l * &ExpForm::inv_r();
    let zq = &l - &(&(&k() * &lr) * &ExpForm::frac(1, 2));
    let zw = Check::Prefactor {
        a: h.clone(),
        b: phi.clone(),
        orient: Orientation::ZW,
        mono: mono(zq, lr.clone(), e(0)),
        factors: vec![inf(&hk - &l, false, 1), inf(&l + &hk, false, -1)],
    };
    let p = p_exp();
    let wz = Check::Prefactor {
        a: h,
        b: phi,
        orient: Orientation::WZ,
        mono: mono(e(0), e(0), lr),
        factors: vec![inf(&p - &(&l + &hk), true, 1), inf(&(&p + &l) - &hk, true, -1)],
    };
    Ok(vec![zw, wz])
}

pub static PROOFS: [RelationDef; 4] = [
    RelationDef {
        id: "A.S1.poles",
        suites: PR,
        statement: "A(z) S_I(w) = 1/(qz - w) :A(z) S_I(w):, S_I(w) A(z) = 1/(w - qz) :A(z) S_I(w):",
        spin: false,
        build: |b| poles(b, 1),
    },
    RelationDef {
        id: "B.S1.poles",
        suites: PR,
        statement: "B(z) S_I(w) = 1/(q^-1 z - w) :B(z) S_I(w):, S_I(w) B(z) = 1/(w - q^-1 z) :B(z) S_I(w):",
        spin: false,
        build: |b| poles(b, -1),
    },
    RelationDef {
        id: "sTilde3.fusion",
        suites: PR,
        statement: ":A(z) S_I(qz): = :B(z) S_I(q^-1 z): = st3(z)",
        spin: false,
        build: s_tilde3_fusion,
    },
    RelationDef {
        id: "H.Phi.prefactor",
        suites: PRV,
        statement: "H+(u) Phi(v) = q^(l-kl/2r) z^(l/r) (q^(-l+k/2) w/z; p) / (q^(l+k/2) w/z; p) :H+(u) Phi(v):, and Phi(v) H+(u) = w^(l/r) (p q^(-l-k/2) z/w; p) / (p q^(l-k/2) z/w; p) :H+(u) Phi(v):",
        spin: true,
        build: h_phi_prefactor,
    },
];
