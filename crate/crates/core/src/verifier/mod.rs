//! Suites of relations, their evaluation under a truncation, and reports.

pub mod checks;
pub mod currents;
pub mod proofs;
pub mod screening;
pub mod special;
pub mod table;
pub mod vertex;

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Conventions;
use crate::qseries::{Ctx, Nome};
use crate::vop::verdict::deg_string;
use crate::vop::{Mismatch, Status, Verdict};
use crate::{Error, Result};
use checks::{Check, Env};
use table::{Builder, RelationDef};

pub use table::{relations, suite, SUITES};

const SP: &[&str] = &["special"];

pub static SPECIAL: [RelationDef; 4] = [
    RelationDef {
        id: "theta.quasiPeriodicity",
        suites: SP,
        statement: "Θt(t x) = -x^-1 Θt(x), t = p, p*",
        spin: false,
        build: |_| Ok(vec![Check::Custom(Arc::new(special::theta_quasi_periodicity))]),
    },
    RelationDef {
        id: "theta.inversion",
        suites: SP,
        statement: "Θt(x) = Θt(t/x), t = p, p*",
        spin: false,
        build: |_| Ok(vec![Check::Custom(Arc::new(special::theta_inversion))]),
    },
    RelationDef {
        id: "delta.formal",
        suites: SP,
        statement: "1/(1 - c x) expanded in |x| < 1 minus its expansion in |x| > 1 is delta(c x)",
        spin: false,
        build: |_| Ok(vec![Check::Custom(Arc::new(special::formal_delta))]),
    },
    RelationDef {
        id: "invQnumEll.inverse",
        suites: SP,
        statement: "[n]_r^-1 [n]_r = 1 and [n]_r*^-1 [n]_r* = 1",
        spin: false,
        build: |_| Ok(vec![Check::Custom(Arc::new(special::inv_qnum_ell_inverse))]),
    },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub window: i64,
    pub p_order: i64,
    pub grade: i64,
    pub spins: Vec<i64>,
    pub relation: Option<String>,
    #[serde(skip)]
    pub format: Format,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        SuiteConfig { suite: suite.into(), window: 6, p_order: 3, grade: 3, spins: vec![1, 2, 3], relation: None, format: Format::Text }
    }

    pub fn window(mut self, n: i64) -> Self {
        self.window = n;
        self
    }

    pub fn p_order(mut self, p: i64) -> Self {
        self.p_order = p;
        self
    }

    pub fn grade(mut self, g: i64) -> Self {
        self.grade = g;
        self
    }

    pub fn spins(mut self, s: &[i64]) -> Self {
        self.spins = s.to_vec();
        self
    }

    pub fn relation(mut self, id: &str) -> Self {
        self.relation = Some(id.into());
        self
    }

    fn validate(&self) -> Result<()> {
        if self.window < 1 || self.p_order < 0 || self.grade < 0 {
            return Err(Error::Unsupported("need N >= 1, P >= 0, G >= 0".into()));
        }
        if self.spins.iter().any(|&l| l < 1) {
            return Err(Error::Unsupported("spins must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    /// The relation as printed.
    pub paper_eq: String,
    pub status: Status,
    pub window: i64,
    pub p_order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    pub compared: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub relations: Vec<Record>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.status == Status::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.relations.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = format!("suite {} (N = {}, P = {}, G = {})\n", self.suite, c.window, c.p_order, c.grade);
        for r in &self.relations {
            let _ = writeln!(s, "{:<12} {:<28} {:>6} coeffs {:>7} ms   {}", r.status.as_str(), r.id, r.compared, r.millis, r.paper_eq);
            if let Some(m) = &r.mismatch {
                let _ = writeln!(s, "             first mismatch at x^{} p^{}: {}", m.x_power, m.p_degree, m.note);
                if !m.lhs.is_empty() || !m.rhs.is_empty() {
                    let _ = writeln!(s, "               lhs: {}\n               rhs: {}", m.lhs, m.rhs);
                }
            }
            if r.status != Status::Pass {
                for n in &r.notes {
                    let _ = writeln!(s, "             note: {n}");
                }
            }
        }
        let pass = self.relations.iter().filter(|r| r.status == Status::Pass).count();
        let _ = writeln!(s, "{pass}/{} PASS", self.relations.len());
        s
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Text => self.to_text(),
            Format::Json => self.to_json() + "\n",
        }
    }
}

struct Job {
    def: &'static RelationDef,
    l: Option<i64>,
}

fn run_job(job: &Job, cfg: &SuiteConfig) -> Record {
    let start = Instant::now();
    let ctx = Ctx::new(Nome::P, cfg.window, cfg.p_order);
    let env = Env { ctx, grade: cfg.grade, oracle_window: cfg.window.min(checks::ORACLE_WINDOW) };
    let builder = Builder { ctx, l: job.l.unwrap_or(1), conv: Conventions::default() };
    let verdict = (job.def.build)(&builder).and_then(|checks| {
        let vs = checks.iter().map(|c| c.run(&env)).collect::<Result<Vec<_>>>()?;
        Ok(vs.into_iter().reduce(Verdict::and).unwrap_or_else(|| Verdict::pass(ctx.window, ctx.prec4, 0)))
    });
    let mut v = verdict.unwrap_or_else(|err| Verdict::fail_note(ctx.window, ctx.prec4, format!("evaluation error: {err}")));
    if v.status == Status::Fail && v.mismatch.is_none() {
        let note = v.notes.first().cloned().unwrap_or_else(|| "failed without coefficient evidence".into());
        v.mismatch = Some(Mismatch { x_power: 0, p_degree: "0".into(), lhs: String::new(), rhs: String::new(), note });
    }
    let id = match job.l {
        Some(l) => format!("{}(l={l})", job.def.id),
        None => job.def.id.to_string(),
    };
    Record {
        id,
        paper_eq: job.def.statement.into(),
        status: v.status,
        window: v.window,
        p_order: deg_string(4 * cfg.p_order),
        mismatch: v.mismatch,
        compared: v.compared,
        notes: v.notes,
        millis: start.elapsed().as_millis() as u64,
    }
}

/// Runs every relation of the suite (restricted to `cfg.relation` if set).
/// Records come out in table order, spins ascending within a relation.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let defs = suite(&cfg.suite).ok_or_else(|| Error::Unsupported(format!("unknown suite `{}`; known: {}", cfg.suite, SUITES.join(", "))))?;
    let defs: Vec<_> = match &cfg.relation {
        Some(id) => defs.into_iter().filter(|d| d.id == id).collect(),
        None => defs,
    };
    if defs.is_empty() {
        let id = cfg.relation.as_deref().unwrap_or("");
        return Err(Error::Unsupported(format!("no relation `{id}` in suite `{}`", cfg.suite)));
    }
    let jobs: Vec<Job> = defs
        .into_iter()
        .flat_map(|def| {
            if def.spin {
                cfg.spins.iter().map(|&l| Job { def, l: Some(l) }).collect::<Vec<_>>()
            } else {
                vec![Job { def, l: None }]
            }
        })
        .collect();
    let relations = jobs.par_iter().map(|j| run_job(j, cfg)).collect();
    Ok(Report { suite: cfg.suite.clone(), config: cfg.clone(), relations })
}
