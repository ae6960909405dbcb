//! Intertwining relations of the highest components of the vertex
//! operators, plain and twisted; checked once per spin `l`.

use super::checks::Check;
use super::table::{e, Builder, RelationDef};
use crate::catalog::FieldId::{self, *};
use crate::qseries::special::{jacobi_ratio, Period};
use crate::qseries::{ExpForm, Nome};
use crate::vop::Rhs;
use crate::Result;

const V: &[&str] = &["vertex"];
const TW: &[&str] = &["twisted"];

fn phi(b: &Builder, twisted: bool) -> FieldId {
    if twisted {
        PhiTwisted(b.l)
    } else {
        Phi(b.l)
    }
}

fn psi(b: &Builder, twisted: bool) -> FieldId {
    if twisted {
        PsiStarTwisted(b.l)
    } else {
        PsiStar(b.l)
    }
}

fn half_l(b: &Builder) -> ExpForm {
    ExpForm::frac(b.l, 2)
}

fn exch(b: &Builder, x: FieldId, y: FieldId, rhs: Rhs) -> Result<Check> {
    Ok(Check::Exchange { a: b.f(x)?, b: b.f(y)?, rhs, nome: Nome::P })
}

/// `H±(u) Φ(v) = θ(u-v+l/2∓k/4)/θ(u-v-l/2∓k/4) Φ(v) H±(u)`.
fn h_phi(b: &Builder, twisted: bool) -> Result<Vec<Check>> {
    let lh = half_l(b);
    [(1, HPlus), (-1, HMinus)]
        .into_iter()
        .map(|(s, h)| {
            let sk = e(s) * ExpForm::k() * ExpForm::frac(1, 4);
            let j = jacobi_ratio(&(&lh - &sk), &(-lh.clone() - sk), Period::R);
            exch(b, h, phi(b, twisted), Rhs::sign(1).jacobi(&j))
        })
        .collect()
}

/// `H±(u) Ψ*(v) = θ*(u-v-l/2±k/4)/θ*(u-v+l/2±k/4) Ψ*(v) H±(u)`.
fn h_psi(b: &Builder, twisted: bool) -> Result<Vec<Check>> {
    let lh = half_l(b);
    [(1, HPlus), (-1, HMinus)]
        .into_iter()
        .map(|(s, h)| {
            let sk = e(s) * ExpForm::k() * ExpForm::frac(1, 4);
            let j = jacobi_ratio(&(&sk - &lh), &(&lh + &sk), Period::RStar);
            exch(b, h, psi(b, twisted), Rhs::sign(1).jacobi(&j))
        })
        .collect()
}

fn sign(twisted: bool) -> i64 {
    if twisted {
        -1
    } else {
        1
    }
}

fn e_phi(b: &Builder, twisted: bool) -> Result<Vec<Check>> {
    Ok(vec![Check::Regular { a: b.f(E)?, b: b.f(phi(b, twisted))?, sign: sign(twisted) }])
}

fn f_phi(b: &Builder, twisted: bool) -> Result<Vec<Check>> {
    let lh = half_l(b);
    let j = jacobi_ratio(&lh, &-lh.clone(), Period::R);
    Ok(vec![exch(b, F, phi(b, twisted), Rhs::sign(sign(twisted)).jacobi(&j))?])
}

fn f_psi(b: &Builder, twisted: bool) -> Result<Vec<Check>> {
    Ok(vec![Check::Regular { a: b.f(F)?, b: b.f(psi(b, twisted))?, sign: sign(twisted) }])
}

fn e_psi(b: &Builder, twisted: bool) -> Result<Vec<Check>> {
    let lh = half_l(b);
    let j = jacobi_ratio(&-lh.clone(), &lh, Period::RStar);
    Ok(vec![exch(b, E, psi(b, twisted), Rhs::sign(sign(twisted)).jacobi(&j))?])
}

pub static VERTEX: [RelationDef; 6] = [
    RelationDef {
        id: "H.Phi",
        suites: V,
        statement: "H±(u) Phi(v) = θ(u-v+l/2∓k/4) / θ(u-v-l/2∓k/4) Phi(v) H±(u)",
        spin: true,
        build: |b| h_phi(b, false),
    },
    RelationDef { id: "E.Phi", suites: V, statement: "E(u) Phi(v) = Phi(v) E(u)", spin: true, build: |b| e_phi(b, false) },
    RelationDef {
        id: "F.Phi",
        suites: V,
        statement: "F(u) Phi(v) = θ(u-v+l/2) / θ(u-v-l/2) Phi(v) F(u)",
        spin: true,
        build: |b| f_phi(b, false),
    },
    RelationDef {
        id: "H.PsiStar",
        suites: V,
        statement: "H±(u) Psi*(v) = θ*(u-v-l/2±k/4) / θ*(u-v+l/2±k/4) Psi*(v) H±(u)",
        spin: true,
        build: |b| h_psi(b, false),
    },
    RelationDef { id: "F.PsiStar", suites: V, statement: "F(u) Psi*(v) = Psi*(v) F(u)", spin: true, build: |b| f_psi(b, false) },
    RelationDef {
        id: "E.PsiStar",
        suites: V,
        statement: "E(u) Psi*(v) = θ*(u-v-l/2) / θ*(u-v+l/2) Psi*(v) E(u)",
        spin: true,
        build: |b| e_psi(b, false),
    },
];

pub static TWISTED: [RelationDef; 6] = [
    RelationDef {
        id: "H.PhiT",
        suites: TW,
        statement: "H±(u) Phi^t(v) = θ(u-v+l/2∓k/4) / θ(u-v-l/2∓k/4) Phi^t(v) H±(u)",
        spin: true,
        build: |b| h_phi(b, true),
    },
    RelationDef { id: "E.PhiT", suites: TW, statement: "E(u) Phi^t(v) + Phi^t(v) E(u) = 0", spin: true, build: |b| e_phi(b, true) },
    RelationDef {
        id: "F.PhiT",
        suites: TW,
        statement: "F(u) Phi^t(v) = -θ(u-v+l/2) / θ(u-v-l/2) Phi^t(v) F(u)",
        spin: true,
        build: |b| f_phi(b, true),
    },
    RelationDef {
        id: "H.PsiStarT",
        suites: TW,
        statement: "H±(u) Psi*^t(v) = θ*(u-v-l/2±k/4) / θ*(u-v+l/2±k/4) Psi*^t(v) H±(u)",
        spin: true,
        build: |b| h_psi(b, true),
    },
    RelationDef { id: "F.PsiStarT", suites: TW, statement: "F(u) Psi*^t(v) + Psi*^t(v) F(u) = 0", spin: true, build: |b| f_psi(b, true) },
    RelationDef {
        id: "E.PsiStarT",
        suites: TW,
        statement: "E(u) Psi*^t(v) = -θ*(u-v-l/2) / θ*(u-v+l/2) Psi*^t(v) E(u)",
        spin: true,
        build: |b| e_psi(b, true),
    },
];
