//! Report contract, command-line behavior and negative controls.

use std::process::Command;

use ellwak::catalog::{build, FieldId};
use ellwak::fock::{FockRelation, Sector};
use ellwak::qseries::special::{jacobi_ratio, Period};
use ellwak::qseries::{int, Coeff, Ctx, ExpForm, Nome};
use ellwak::verifier::checks::{Check, Env, Poch};
use ellwak::verifier::{run_suite, Report, SuiteConfig, SUITES};
use ellwak::vop::{Monomial, Orientation, Rhs, Status, Verdict};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ellwak"))
}

fn without_timing(mut r: Report) -> Report {
    r.relations.iter_mut().for_each(|x| x.millis = 0);
    r
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    for s in ["special", "prop1"] {
        let cfg = SuiteConfig::new(s).window(4).p_order(1);
        let a = without_timing(run_suite(&cfg).unwrap());
        let b = without_timing(run_suite(&cfg).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }
}

#[test]
fn refining_the_truncation_never_breaks_a_pass() {
    let coarse = run_suite(&SuiteConfig::new("prop1").window(3).p_order(0)).unwrap();
    let fine = run_suite(&SuiteConfig::new("prop1").window(6).p_order(1)).unwrap();
    for (c, f) in coarse.relations.iter().zip(&fine.relations) {
        assert_eq!(c.id, f.id);
        if c.status == Status::Pass {
            assert_eq!(f.status, Status::Pass, "{}", c.id);
            assert!(f.compared >= c.compared, "{}", c.id);
        }
    }
}

#[test]
fn json_report_schema() {
    let r = run_suite(&SuiteConfig::new("special").window(3).p_order(1)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["suite"], "special");
    for key in ["window", "p_order", "grade", "spins"] {
        assert!(v["config"].get(key).is_some(), "config.{key}");
    }
    let rels = v["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 4);
    for x in rels {
        for key in ["id", "paper_eq", "status", "window", "p_order", "compared", "millis"] {
            assert!(x.get(key).is_some(), "{key} in {x}");
        }
        assert!(["PASS", "FAIL", "INCONCLUSIVE"].contains(&x["status"].as_str().unwrap()));
    }
    let back: Report = serde_json::from_value(v).unwrap();
    assert_eq!(back.relations.len(), 4);
}

#[test]
fn suites_and_relation_filter() {
    for s in SUITES {
        assert!(ellwak::verifier::suite(s).is_some(), "{s}");
    }
    let r = run_suite(&SuiteConfig::new("screening").window(3).p_order(1).relation("S2S1")).unwrap();
    assert_eq!(r.relations.len(), 1);
    assert_eq!(r.relations[0].id, "S2S1");
    let r = run_suite(&SuiteConfig::new("vertex").window(3).p_order(1).spins(&[2]).relation("E.Phi")).unwrap();
    assert_eq!(r.relations.iter().map(|x| x.id.as_str()).collect::<Vec<_>>(), ["E.Phi(l=2)"]);
    assert!(run_suite(&SuiteConfig::new("nosuch")).is_err());
    assert!(run_suite(&SuiteConfig::new("special").relation("nosuch")).is_err());
    assert!(run_suite(&SuiteConfig::new("special").window(0)).is_err());
}

#[test]
fn exit_codes() {
    let run = |args: &[&str]| bin().args(args).output().unwrap();
    let ok = run(&["verify", "special", "--x-window", "3", "--p-order", "1", "--format", "json"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["relations"].as_array().unwrap().len(), 4);
    assert_eq!(run(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "special", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "special", "--x-window", "0"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // P = 0 leaves the elliptic exchange relations inconclusive.
    let inc = run(&["verify", "prop2", "--x-window", "2", "--p-order", "0", "--relation", "Psi.Psi"]);
    assert_eq!(inc.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&inc.stdout).contains("INCONCLUSIVE"));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("ellwak-report-{}.txt", std::process::id()));
    let o = bin().args(["verify", "special", "--x-window", "3", "--p-order", "1", "--out"]).arg(&path).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("4/4 PASS"));
}

fn env() -> Env {
    Env { ctx: Ctx::new(Nome::P, 4, 2), grade: 2, oracle_window: 2 }
}

fn assert_fails(v: Verdict, what: &str) {
    assert_eq!(v.status, Status::Fail, "{what}: {v:?}");
    assert!(v.mismatch.is_some(), "{what}: no mismatch");
}

#[test]
fn wrong_rhs_fails() {
    // F(u) Phi(v) with the sign of the twisted relation.
    let j = jacobi_ratio(&ExpForm::frac(1, 2), &ExpForm::frac(-1, 2), Period::R);
    let c = Check::Exchange { a: build(FieldId::F).unwrap(), b: build(FieldId::Phi(1)).unwrap(), rhs: Rhs::sign(-1).jacobi(&j), nome: Nome::P };
    assert_fails(c.run(&env()).unwrap(), "F.Phi with sign -1");
    // The theta ratio turned upside down.
    let j = jacobi_ratio(&ExpForm::frac(-1, 2), &ExpForm::frac(1, 2), Period::R);
    let c = Check::Exchange { a: build(FieldId::F).unwrap(), b: build(FieldId::Phi(1)).unwrap(), rhs: Rhs::sign(1).jacobi(&j), nome: Nome::P };
    assert_fails(c.run(&env()).unwrap(), "F.Phi inverted");
}

#[test]
fn wrong_prefactor_fails() {
    // S_I(z) S_I(w) against a bare monomial with a stray pole.
    let s1 = build(FieldId::SOne).unwrap();
    let c = Check::Prefactor {
        a: s1.clone(),
        b: s1,
        orient: Orientation::ZW,
        mono: Monomial::one(),
        factors: vec![Poch { e: ExpForm::int(1), in_y: false, pow: -1, infinite: false }],
    };
    assert_fails(c.run(&env()).unwrap(), "S_I S_I prefactor");
}

#[test]
fn wrong_fock_factor_fails() {
    let rel = FockRelation::Poly {
        a: build(FieldId::PsiPlus).unwrap(),
        b: build(FieldId::EPlus).unwrap(),
        lhs: vec![(Coeff::one(), Coeff::mono(4, 1, int(1)))],
        rhs: vec![(Coeff::q(2), Coeff::mono(0, -1, int(1)))],
    };
    let c = Check::Fock { rel, sectors: vec![Sector::int(1, 0, 0, 0)] };
    assert_fails(c.run(&env()).unwrap(), "psi+ e+ with q^(k/2) for q^(-k/2)");
}
