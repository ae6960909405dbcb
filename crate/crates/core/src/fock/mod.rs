//! Grade-truncated action of operators on the Fock modules.
//!
//! This is an independent oracle for the contraction engine: operators act
//! mode by mode on explicit PBW states, annihilators are commuted through
//! creators one at a time, and no Wick formula is used.

pub mod apply;
pub mod check;

use std::collections::BTreeMap;
use std::fmt;

use crate::oscillators::{Family, Zero};
use crate::qseries::{ExpForm, PSeries};

pub use apply::{apply_truncated, Action, Key};
pub use check::{cross_check, vacuum_expectation, FockRelation};

/// Labels `(l, m₁, m₂, n̂)` of `F_{l,m₁,m₂} ⊗ F_n̂`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Sector {
    pub labels: [ExpForm; 4],
}

impl Sector {
    pub fn new(l: ExpForm, m1: ExpForm, m2: ExpForm, n_hat: ExpForm) -> Self {
        Sector { labels: [l, m1, m2, n_hat] }
    }

    pub fn int(l: i64, m1: i64, m2: i64, n_hat: i64) -> Self {
        Sector::new(ExpForm::int(l), ExpForm::int(m1), ExpForm::int(m2), ExpForm::int(n_hat))
    }

    /// Eigenvalue of `p_f` on the sector: `p_a = l`, `p_b = -m₁`,
    /// `p_c = m₂`, `p̂ = -n̂` (since `[p̂, q̂] = -1` and `|n⟩ = e^{n q̂}|0⟩`).
    pub fn eigenvalue(&self, z: Zero) -> ExpForm {
        let v = &self.labels[z.idx()];
        match z {
            Zero::A | Zero::C => v.clone(),
            Zero::B | Zero::Hat => -v.clone(),
        }
    }

    /// The sector after `e^{Σ c_f Q_f}`.
    pub fn shifted(&self, zq: &[ExpForm; 4]) -> Sector {
        let kp2x2 = ExpForm::int(2) * (ExpForm::k() + ExpForm::int(2));
        let d = [&kp2x2 * &zq[0], zq[1].clone(), zq[2].clone(), zq[3].clone()];
        Sector { labels: std::array::from_fn(|i| &self.labels[i] + &d[i]) }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [l, m1, m2, n] = &self.labels;
        write!(f, "|{l}, {m1}, {m2}; {n}>")
    }
}

/// A PBW monomial `Π f_{-n}^{c}` in the creation modes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pbw(pub BTreeMap<(Family, i64), u32>);

impl Pbw {
    pub fn grade(&self) -> i64 {
        self.0.iter().map(|((_, n), c)| n * i64::from(*c)).sum()
    }

    pub fn count(&self, f: Family, n: i64) -> u32 {
        self.0.get(&(f, n)).copied().unwrap_or(0)
    }

    pub fn with(&self, f: Family, n: i64, delta: i64) -> Pbw {
        let mut m = self.0.clone();
        let c = i64::from(self.count(f, n)) + delta;
        debug_assert!(c >= 0);
        if c == 0 {
            m.remove(&(f, n));
        } else {
            m.insert((f, n), c as u32);
        }
        Pbw(m)
    }

    pub fn times(&self, o: &Pbw) -> Pbw {
        let mut m = self.0.clone();
        for (k, c) in &o.0 {
            *m.entry(*k).or_insert(0) += c;
        }
        Pbw(m)
    }
}

impl fmt::Display for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|((fam, n), c)| format!("{}_{{-{n}}}^{c}", fam.name())).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite combination of PBW states across sectors.
#[derive(Clone, Debug, Default)]
pub struct State {
    pub terms: BTreeMap<(Sector, Pbw), PSeries>,
}

impl State {
    /// The highest weight vector of a sector.
    pub fn highest(s: Sector) -> State {
        let mut terms = BTreeMap::new();
        terms.insert((s, Pbw::default()), PSeries::one());
        State { terms }
    }

    pub fn add(&mut self, sector: Sector, pbw: Pbw, c: PSeries, prec4: i64) {
        add_into(&mut self.terms, (sector, pbw), c, prec4);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_grade(&self) -> i64 {
        self.terms.keys().map(|(_, p)| p.grade()).max().unwrap_or(0)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((s, p), c)| format!("({}) {p} {s}", c.render("p"))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `map[key] += c`, dropping entries that cancel.
pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, PSeries>, key: K, c: PSeries, prec4: i64) {
    if c.is_zero() {
        return;
    }
    match map.remove(&key) {
        Some(old) => {
            let s = (&old + &c).truncate(prec4);
            if !s.is_zero() {
                map.insert(key, s);
            }
        }
        None => {
            map.insert(key, c.truncate(prec4));
        }
    }
}
