//! Relations among the currents: the trigonometric ones, their elliptic
//! deformation, the full currents, and their matrix-element oracle checks.

use std::sync::Arc;

use super::checks::Check;
use super::table::{e, half_k, inv_qq, k, p_exp, ps_exp, qm, th, RelationDef};
use crate::catalog::FieldId::{self, *};
use crate::fock::{apply_truncated, FockRelation, Sector, State};
use crate::oscillators::LinForm;
use crate::qseries::{Coeff, Ctx, ExpForm, Nome, PSeries};
use crate::vop::{Mismatch, OperatorExpr, ResidueSet, Rhs, Verdict};
use crate::Result;

const P1: &[&str] = &["prop1"];
const P2: &[&str] = &["prop2", "elliptic"];
const T3: &[&str] = &["thm3", "elliptic"];
const FK: &[&str] = &["fock"];

/// `δ(q^{-k} z/w)`-type residues `c_±/(q - q^{-1}) z^{-2}` times `plus(q^{-k/2} z)`
/// on `w = q^{-k} z` and `minus(q^{k/2} z)` on `w = q^{k} z`.
fn residues(plus: &OperatorExpr, minus: &OperatorExpr, ctx: &Ctx) -> ResidueSet {
    let z2 = LinForm::z_pow(e(-2));
    let mut r = ResidueSet::default();
    r.add_expr(&-k(), &plus.shift_arg(&-half_k()).times(&z2).times(&LinForm::q_pow(k())).scale(&inv_qq()), ctx.nome, ctx.prec4);
    r.add_expr(&k(), &minus.shift_arg(&half_k()).times(&z2).times(&LinForm::q_pow(-k())).scale(&-inv_qq()), ctx.nome, ctx.prec4);
    r
}

type Poly = Vec<(Coeff, Coeff)>;

/// `(z - q^{±2∓k/2} w)` against `(q^{±2} z - q^{∓k/2} w)`.
fn psi_e_polys(s: i64) -> (Poly, Poly) {
    (vec![(Coeff::one(), qm(4 * s, -s))], vec![(Coeff::q(2 * s), qm(0, -s))])
}

fn e_e_polys(s: i64) -> (Poly, Poly) {
    (vec![(Coeff::one(), Coeff::q(2 * s))], vec![(Coeff::q(2 * s), Coeff::one())])
}

fn psi_psi_polys() -> (Poly, Poly) {
    (vec![(Coeff::one(), qm(4, -2)), (Coeff::one(), qm(-4, 2))], vec![(Coeff::one(), qm(4, 2)), (Coeff::one(), qm(-4, -2))])
}

fn sign_e(s: i64) -> FieldId {
    if s > 0 {
        EPlus
    } else {
        EMinus
    }
}

fn poly(a: OperatorExpr, b: OperatorExpr, (lhs, rhs): (Poly, Poly)) -> Check {
    Check::Poly { a, b, lhs, rhs }
}

fn exch(a: OperatorExpr, b: OperatorExpr, rhs: Rhs) -> Check {
    Check::Exchange { a, b, rhs, nome: Nome::P }
}

pub static PROP1: [RelationDef; 6] = [
    RelationDef {
        id: "psi.psi",
        suites: P1,
        statement: "psi±(z) psi±(w) = psi±(w) psi±(z)",
        spin: false,
        build: |b| Ok(vec![Check::Regular { a: b.f(PsiPlus)?, b: b.f(PsiPlus)?, sign: 1 }, Check::Regular { a: b.f(PsiMinus)?, b: b.f(PsiMinus)?, sign: 1 }]),
    },
    RelationDef {
        id: "psiPlus.psiMinus",
        suites: P1,
        statement: "(z - q^(2-k) w)(z - q^(-2+k) w) psi+(z) psi-(w) = (z - q^(2+k) w)(z - q^(-2-k) w) psi-(w) psi+(z)",
        spin: false,
        build: |b| Ok(vec![poly(b.f(PsiPlus)?, b.f(PsiMinus)?, psi_psi_polys())]),
    },
    RelationDef {
        id: "psiPlus.e",
        suites: P1,
        statement: "(z - q^(±(2-k/2)) w) psi+(z) e±(w) = (q^(±2) z - q^(∓k/2) w) e±(w) psi+(z)",
        spin: false,
        build: |b| [1, -1].into_iter().map(|s| Ok(poly(b.f(PsiPlus)?, b.f(sign_e(s))?, psi_e_polys(s)))).collect(),
    },
    RelationDef {
        id: "e.psiMinus",
        suites: P1,
        statement: "(z - q^(±(2-k/2)) w) e±(z) psi-(w) = (q^(±2) z - q^(∓k/2) w) psi-(w) e±(z)",
        spin: false,
        build: |b| [1, -1].into_iter().map(|s| Ok(poly(b.f(sign_e(s))?, b.f(PsiMinus)?, psi_e_polys(s)))).collect(),
    },
    RelationDef {
        id: "ePlus.eMinus",
        suites: P1,
        statement: "[e+(z), e-(w)] = 1/((q - q^-1) z w) (delta(q^-k z/w) psi+(q^(-k/2) z) - delta(q^k z/w) psi-(q^(k/2) z))",
        spin: false,
        build: |b| {
            let expected = residues(&b.f(PsiPlus)?, &b.f(PsiMinus)?, &b.ctx);
            Ok(vec![Check::Delta { a: b.f(EPlus)?, b: b.f(EMinus)?, expected }])
        },
    },
    RelationDef {
        id: "e.e",
        suites: P1,
        statement: "(z - q^(±2) w) e±(z) e±(w) = (q^(±2) z - w) e±(w) e±(z)",
        spin: false,
        build: |b| [1, -1].into_iter().map(|s| Ok(poly(b.f(sign_e(s))?, b.f(sign_e(s))?, e_e_polys(s)))).collect(),
    },
];

/// `Θ_p(q^{-2} y)/Θ_p(q^2 y) · Θ_{p*}(q^2 y)/Θ_{p*}(q^{-2} y)`.
fn hh_rhs() -> Rhs {
    Rhs::sign(1).theta(th(p_exp(), e(-2), e(2))).theta(th(ps_exp(), e(2), e(-2)))
}

/// `Θ_p(p q^{-2-k} y)/Θ_p(p q^{2-k} y) · Θ_{p*}(p* q^{2+k} y)/Θ_{p*}(p* q^{k-2} y)`.
fn hpm_rhs() -> Rhs {
    let (p, ps) = (p_exp(), ps_exp());
    Rhs::sign(1).theta(th(p.clone(), &p - &(e(2) + k()), &p + &(e(2) - k()))).theta(th(ps.clone(), &ps + &(e(2) + k()), &ps + &(k() - e(2))))
}

fn he_rhs(s: i64) -> Rhs {
    let sh = e(s) * half_k();
    Rhs::sign(1).q(e(-2)).theta(th(ps_exp(), e(2) + sh.clone(), e(-2) + sh))
}

fn hf_rhs(s: i64) -> Rhs {
    let sh = e(s) * half_k();
    Rhs::sign(1).q(e(2)).theta(th(p_exp(), e(-2) - sh.clone(), e(2) - sh))
}

fn ee_rhs() -> Rhs {
    Rhs::sign(1).q(e(-2)).theta(th(ps_exp(), e(2), e(-2)))
}

fn ff_rhs() -> Rhs {
    Rhs::sign(1).q(e(2)).theta(th(p_exp(), e(-2), e(2)))
}

fn pm(s: i64, plus: FieldId, minus: FieldId) -> FieldId {
    if s > 0 {
        plus
    } else {
        minus
    }
}

pub static PROP2: [RelationDef; 7] = [
    RelationDef {
        id: "Psi.Psi",
        suites: P2,
        statement: "Psi±(z) Psi±(w) = Θp(q^-2 z/w) Θp*(q^2 z/w) / (Θp(q^2 z/w) Θp*(q^-2 z/w)) Psi±(w) Psi±(z)",
        spin: false,
        build: |b| Ok(vec![exch(b.f(BigPsiPlus)?, b.f(BigPsiPlus)?, hh_rhs()), exch(b.f(BigPsiMinus)?, b.f(BigPsiMinus)?, hh_rhs())]),
    },
    RelationDef {
        id: "PsiPlus.PsiMinus",
        suites: P2,
        statement: "Psi+(z) Psi-(w) = Θp(p q^(-2-k) z/w) Θp*(p* q^(2+k) z/w) / (Θp(p q^(2-k) z/w) Θp*(p* q^(k-2) z/w)) Psi-(w) Psi+(z)",
        spin: false,
        build: |b| Ok(vec![exch(b.f(BigPsiPlus)?, b.f(BigPsiMinus)?, hpm_rhs())]),
    },
    RelationDef {
        id: "Psi.eEll",
        suites: P2,
        statement: "Psi±(z) e(w) = q^-2 Θp*(q^(2±k/2) z/w) / Θp*(q^(-2±k/2) z/w) e(w) Psi±(z)",
        spin: false,
        build: |b| [1, -1].into_iter().map(|s| Ok(exch(b.f(pm(s, BigPsiPlus, BigPsiMinus))?, b.f(EEll)?, he_rhs(s)))).collect(),
    },
    RelationDef {
        id: "Psi.fEll",
        suites: P2,
        statement: "Psi±(z) f(w) = q^2 Θp(q^(-2∓k/2) z/w) / Θp(q^(2∓k/2) z/w) f(w) Psi±(z)",
        spin: false,
        build: |b| [1, -1].into_iter().map(|s| Ok(exch(b.f(pm(s, BigPsiPlus, BigPsiMinus))?, b.f(FEll)?, hf_rhs(s)))).collect(),
    },
    RelationDef {
        id: "eEll.fEll",
        suites: P2,
        statement: "[e(z), f(w)] = 1/((q - q^-1) z w) (delta(q^-k z/w) Psi+(q^(-k/2) z) - delta(q^k z/w) Psi-(q^(k/2) z))",
        spin: false,
        build: |b| {
            let expected = residues(&b.f(BigPsiPlus)?, &b.f(BigPsiMinus)?, &b.ctx);
            Ok(vec![Check::Delta { a: b.f(EEll)?, b: b.f(FEll)?, expected }])
        },
    },
    RelationDef {
        id: "eEll.eEll",
        suites: P2,
        statement: "e(z) e(w) = q^-2 Θp*(q^2 z/w) / Θp*(q^-2 z/w) e(w) e(z)",
        spin: false,
        build: |b| Ok(vec![exch(b.f(EEll)?, b.f(EEll)?, ee_rhs())]),
    },
    RelationDef {
        id: "fEll.fEll",
        suites: P2,
        statement: "f(z) f(w) = q^2 Θp(q^-2 z/w) / Θp(q^2 z/w) f(w) f(z)",
        spin: false,
        build: |b| Ok(vec![exch(b.f(FEll)?, b.f(FEll)?, ff_rhs())]),
    },
];

/// `y^{2(1/r* - 1/r)}`, the extra power the zero modes add to `H H`.
fn d_exp() -> ExpForm {
    e(2) * (ExpForm::inv_rstar() - ExpForm::inv_r())
}

pub static THM3: [RelationDef; 7] = [
    RelationDef {
        id: "H.H",
        suites: T3,
        statement: "H±(u) H±(v) = θ(u-v+1) θ*(u-v-1) / (θ(u-v-1) θ*(u-v+1)) H±(v) H±(u)",
        spin: false,
        build: |b| {
            let r = hh_rhs().y(d_exp());
            Ok(vec![exch(b.f(HPlus)?, b.f(HPlus)?, r.clone()), exch(b.f(HMinus)?, b.f(HMinus)?, r)])
        },
    },
    RelationDef {
        id: "Hplus.Hminus",
        suites: T3,
        statement: "H+(u) H-(v) = θ(u-v+1-k/2) θ*(u-v-1+k/2) / (θ(u-v-1-k/2) θ*(u-v+1+k/2)) H-(v) H+(u)",
        spin: false,
        build: |b| {
            let r = hpm_rhs().q(e(2) * k() * (ExpForm::inv_rstar() + ExpForm::inv_r())).y(d_exp());
            Ok(vec![exch(b.f(HPlus)?, b.f(HMinus)?, r)])
        },
    },
    RelationDef {
        id: "H.E",
        suites: T3,
        statement: "H±(u) E(v) = θ*(u-v±k/4+1) / θ*(u-v±k/4-1) E(v) H±(u)",
        spin: false,
        build: |b| {
            [1, -1]
                .into_iter()
                .map(|s| {
                    let r = he_rhs(s).q(e(s) * k() * ExpForm::inv_rstar()).y(e(2) * ExpForm::inv_rstar());
                    Ok(exch(b.f(pm(s, HPlus, HMinus))?, b.f(E)?, r))
                })
                .collect()
        },
    },
    RelationDef {
        id: "H.F",
        suites: T3,
        statement: "H±(u) F(v) = θ(u-v∓k/4-1) / θ(u-v∓k/4+1) F(v) H±(u)",
        spin: false,
        build: |b| {
            [1, -1]
                .into_iter()
                .map(|s| {
                    let r = hf_rhs(s).q(e(s) * k() * ExpForm::inv_r()).y(e(-2) * ExpForm::inv_r());
                    Ok(exch(b.f(pm(s, HPlus, HMinus))?, b.f(F)?, r))
                })
                .collect()
        },
    },
    RelationDef {
        id: "E.F",
        suites: T3,
        statement: "[E(z), F(w)] = 1/((q - q^-1) z w) (delta(q^-k z/w) H+(q^(-k/2) z) - delta(q^k z/w) H-(q^(k/2) z))",
        spin: false,
        build: |b| {
            let expected = residues(&b.f(HPlus)?, &b.f(HMinus)?, &b.ctx);
            Ok(vec![Check::Delta { a: b.f(E)?, b: b.f(F)?, expected }])
        },
    },
    RelationDef {
        id: "E.E",
        suites: T3,
        statement: "E(u) E(v) = θ*(u-v+1) / θ*(u-v-1) E(v) E(u)",
        spin: false,
        build: |b| Ok(vec![exch(b.f(E)?, b.f(E)?, ee_rhs().y(e(2) * ExpForm::inv_rstar()))]),
    },
    RelationDef {
        id: "F.F",
        suites: T3,
        statement: "F(u) F(v) = θ(u-v-1) / θ(u-v+1) F(v) F(u)",
        spin: false,
        build: |b| Ok(vec![exch(b.f(F)?, b.f(F)?, ff_rhs().y(e(-2) * ExpForm::inv_r()))]),
    },
];

fn fock_sectors() -> Vec<Sector> {
    vec![Sector::int(0, 0, 0, 0), Sector::int(1, 0, 0, 0), Sector::int(1, 1, 1, 0)]
}

fn fock(rel: FockRelation) -> Check {
    Check::Fock { rel, sectors: fock_sectors() }
}

fn fpoly(a: OperatorExpr, b: OperatorExpr, (lhs, rhs): (Poly, Poly)) -> Check {
    fock(FockRelation::Poly { a, b, lhs, rhs })
}

/// `ψ₊|l, m₁, m₂⟩ = q^{l - 2m₁}|l, m₁, m₂⟩` at grade zero.
fn psi_eigenvalue(ctx: &Ctx) -> Result<Verdict> {
    let op = crate::catalog::build(PsiPlus)?;
    let mut v = Verdict::pass(ctx.window, ctx.prec4, 0);
    for s in fock_sectors().into_iter().chain([Sector::int(2, 1, -1, 0), Sector::int(3, -2, 0, 1)]) {
        let out = apply_truncated(&op, &State::highest(s.clone()), 0, ctx.nome, ctx.prec4)?;
        let l = s.labels[0].as_integer().unwrap_or(0);
        let m1 = s.labels[1].as_integer().unwrap_or(0);
        let want = PSeries::constant(Coeff::q(l - 2 * m1));
        let got = out.iter().find(|(key, _)| key.sector == s && key.pbw.0.is_empty() && key.z.is_zero() && key.qtag.is_zero()).map(|(_, c)| c.clone());
        let ok = out.len() == 1 && got.as_ref().is_some_and(|g| g.eq_upto(&want, ctx.prec4));
        if !ok {
            let m = Mismatch {
                x_power: 0,
                p_degree: "0".into(),
                lhs: got.map(|g| g.render("p")).unwrap_or_else(|| "0".into()),
                rhs: want.render("p"),
                note: format!("grade-0 eigenvalue on {s}"),
            };
            return Ok(Verdict::fail(ctx.window, ctx.prec4, m));
        }
        v.compared += 1;
    }
    Ok(v)
}

/// `e⁺|0,0,0⟩` vanishes at grade zero: both terms land on `|0,-1,-1⟩`
/// with opposite weights.
fn e_plus_vacuum(ctx: &Ctx) -> Result<Verdict> {
    let op = crate::catalog::build(EPlus)?;
    let out = apply_truncated(&op, &State::highest(Sector::int(0, 0, 0, 0)), 0, ctx.nome, ctx.prec4)?;
    if out.is_empty() {
        return Ok(Verdict::pass(ctx.window, ctx.prec4, 1));
    }
    let (key, c) = out.iter().next().expect("nonempty");
    let m = Mismatch { x_power: 0, p_degree: "0".into(), lhs: c.render("p"), rhs: "0".into(), note: format!("surviving component in {}", key.sector) };
    Ok(Verdict::fail(ctx.window, ctx.prec4, m))
}

pub static FOCK: [RelationDef; 8] = [
    RelationDef {
        id: "fock.psi.psi",
        suites: FK,
        statement: "psi±(z) psi±(w) = psi±(w) psi±(z), on highest weight vectors",
        spin: false,
        build: |b| Ok(vec![fpoly(b.f(PsiPlus)?, b.f(PsiPlus)?, (vec![], vec![])), fpoly(b.f(PsiMinus)?, b.f(PsiMinus)?, (vec![], vec![]))]),
    },
    RelationDef {
        id: "fock.psiPlus.psiMinus",
        suites: FK,
        statement: "psi+ psi- exchange, on highest weight vectors",
        spin: false,
        build: |b| Ok(vec![fpoly(b.f(PsiPlus)?, b.f(PsiMinus)?, psi_psi_polys())]),
    },
    RelationDef {
        id: "fock.psiPlus.e",
        suites: FK,
        statement: "psi+ e± exchange, on highest weight vectors",
        spin: false,
        build: |b| [1, -1].into_iter().map(|s| Ok(fpoly(b.f(PsiPlus)?, b.f(sign_e(s))?, psi_e_polys(s)))).collect(),
    },
    RelationDef {
        id: "fock.e.psiMinus",
        suites: FK,
        statement: "e± psi- exchange, on highest weight vectors",
        spin: false,
        build: |b| [1, -1].into_iter().map(|s| Ok(fpoly(b.f(sign_e(s))?, b.f(PsiMinus)?, psi_e_polys(s)))).collect(),
    },
    RelationDef {
        id: "fock.ePlus.eMinus",
        suites: FK,
        statement: "[e+(z), e-(w)] delta terms, on highest weight vectors",
        spin: false,
        build: |b| {
            let residues = residues(&b.f(PsiPlus)?, &b.f(PsiMinus)?, &b.ctx);
            Ok(vec![fock(FockRelation::Delta { a: b.f(EPlus)?, b: b.f(EMinus)?, residues })])
        },
    },
    RelationDef {
        id: "fock.e.e",
        suites: FK,
        statement: "e± e± exchange, on highest weight vectors",
        spin: false,
        build: |b| [1, -1].into_iter().map(|s| Ok(fpoly(b.f(sign_e(s))?, b.f(sign_e(s))?, e_e_polys(s)))).collect(),
    },
    RelationDef {
        id: "fock.psiPlus.eigenvalue",
        suites: FK,
        statement: "psi+(z)|l,m1,m2> = q^(l-2 m1)|l,m1,m2> + (higher grades)",
        spin: false,
        build: |_| Ok(vec![Check::Custom(Arc::new(psi_eigenvalue))]),
    },
    RelationDef {
        id: "fock.ePlus.vacuum",
        suites: FK,
        statement: "e+(z)|0,0,0> = 0 + (higher grades)",
        spin: false,
        build: |_| Ok(vec![Check::Custom(Arc::new(e_plus_vacuum))]),
    },
];
