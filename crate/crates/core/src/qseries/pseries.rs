//! Truncated Laurent series in the nome with exact coefficients.
//!
//! Degrees are quarter units. Every stored coefficient of degree at most
//! `prec` is exact; nothing is known beyond it. An exact series (a finite
//! sum) carries the sentinel [`EXACT`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Coeff;
use super::Q;

pub const EXACT: i64 = i64::MAX / 8;

#[derive(Clone)]
pub struct PSeries {
    terms: BTreeMap<i64, Coeff>,
    prec: i64,
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

impl PSeries {
    pub fn zero() -> Self {
        PSeries { terms: BTreeMap::new(), prec: EXACT }
    }

    pub fn zero_to(prec: i64) -> Self {
        PSeries { terms: BTreeMap::new(), prec }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(0, c)
    }

    /// Exact single term `c nome^{deg4/4}`.
    pub fn term(deg4: i64, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(deg4, c);
        }
        PSeries { terms, prec: EXACT }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Coeff)>, prec: i64) -> Self {
        let mut out = PSeries { terms: BTreeMap::new(), prec };
        for (d, c) in terms {
            out.add_term(d, c);
        }
        out
    }

    pub fn add_term(&mut self, d: i64, c: Coeff) {
        if d > self.prec || c.is_zero() {
            return;
        }
        match self.terms.remove(&d) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(d, s);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    pub fn terms(&self) -> &BTreeMap<i64, Coeff> {
        &self.terms
    }

    pub fn coeff(&self, d: i64) -> Option<Coeff> {
        if d > self.prec {
            None
        } else {
            Some(self.terms.get(&d).cloned().unwrap_or_else(Coeff::zero))
        }
    }

    /// Lowest degree that may be nonzero.
    pub fn val(&self) -> i64 {
        match self.terms.keys().next() {
            Some(&d) => d,
            None => sat_add(self.prec, 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let p = prec.min(self.prec);
        PSeries { terms: self.terms.range(..=p).map(|(d, c)| (*d, c.clone())).collect(), prec: p }
    }

    pub fn shift(&self, deg4: i64) -> Self {
        PSeries {
            terms: self.terms.iter().map(|(d, c)| (d + deg4, c.clone())).collect(),
            prec: sat_add(self.prec, deg4),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return PSeries::zero_to(self.prec);
        }
        PSeries { terms: self.terms.iter().map(|(d, v)| (*d, v * c)).collect(), prec: self.prec }
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        PSeries {
            terms: self.terms.iter().map(|(d, v)| (*d, v.scale(c))).filter(|(_, v)| !v.is_zero()).collect(),
            prec: self.prec,
        }
    }

    /// Multiplies every coefficient by `q^{i/2} q^{kj/2}`.
    pub fn shift_q(&self, i: i64, j: i64) -> Self {
        PSeries { terms: self.terms.iter().map(|(d, v)| (*d, v.shift(i, j))).collect(), prec: self.prec }
    }

    /// Product truncated at `limit` (in addition to the natural precision).
    pub fn mul_to(&self, o: &PSeries, limit: i64) -> PSeries {
        let prec = sat_add(self.prec, o.val()).min(sat_add(o.prec, self.val())).min(limit);
        let mut acc: BTreeMap<i64, Coeff> = BTreeMap::new();
        for (da, ca) in &self.terms {
            for (db, cb) in &o.terms {
                let d = da + db;
                if d > prec {
                    continue;
                }
                let p = ca * cb;
                match acc.remove(&d) {
                    Some(old) => {
                        let s = &old + &p;
                        if !s.is_zero() {
                            acc.insert(d, s);
                        }
                    }
                    None => {
                        if !p.is_zero() {
                            acc.insert(d, p);
                        }
                    }
                }
            }
        }
        PSeries { terms: acc, prec }
    }

    /// Agreement of two series up to the common precision and `limit`.
    /// Returns the first differing degree.
    pub fn first_difference(&self, o: &PSeries, limit: i64) -> Option<i64> {
        let p = self.prec.min(o.prec).min(limit);
        let keys: std::collections::BTreeSet<i64> =
            self.terms.keys().chain(o.terms.keys()).copied().filter(|d| *d <= p).collect();
        for d in keys {
            let a = self.terms.get(&d).cloned().unwrap_or_else(Coeff::zero);
            let b = o.terms.get(&d).cloned().unwrap_or_else(Coeff::zero);
            if a != b {
                return Some(d);
            }
        }
        None
    }

    pub fn eq_upto(&self, o: &PSeries, limit: i64) -> bool {
        self.first_difference(o, limit).is_none()
    }

    /// Power series `exp(self)`; `self` must have positive valuation.
    pub fn exp(&self, limit: i64) -> PSeries {
        let prec = self.prec.min(limit);
        assert!(self.val() > 0, "exp of a series with nonpositive valuation");
        let mut out = PSeries::one().truncate(prec);
        let mut term = PSeries::one().truncate(prec);
        let mut m: i64 = 1;
        loop {
            term = term.mul_to(self, prec).scale_q(&Q::new(1.into(), m.into()));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
            m += 1;
        }
        out
    }
}

impl<'a> Add<&'a PSeries> for &'a PSeries {
    type Output = PSeries;
    fn add(self, o: &PSeries) -> PSeries {
        let prec = self.prec.min(o.prec);
        let mut out = self.truncate(prec);
        for (d, c) in o.terms.range(..=prec) {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PSeries> for &'a PSeries {
    type Output = PSeries;
    fn sub(self, o: &PSeries) -> PSeries {
        self + &(-o.clone())
    }
}

impl<'a> Mul<&'a PSeries> for &'a PSeries {
    type Output = PSeries;
    fn mul(self, o: &PSeries) -> PSeries {
        self.mul_to(o, EXACT)
    }
}

impl Neg for PSeries {
    type Output = PSeries;
    fn neg(self) -> PSeries {
        PSeries { terms: self.terms.into_iter().map(|(d, c)| (d, -c)).collect(), prec: self.prec }
    }
}

impl Add for PSeries {
    type Output = PSeries;
    fn add(self, o: PSeries) -> PSeries {
        &self + &o
    }
}

impl Mul for PSeries {
    type Output = PSeries;
    fn mul(self, o: PSeries) -> PSeries {
        &self * &o
    }
}

pub(crate) fn fmt_deg4(nome: &str, d: i64) -> String {
    match d {
        0 => String::new(),
        4 => nome.to_string(),
        _ if d % 4 == 0 => format!("{nome}^{}", d / 4),
        _ if d % 2 == 0 => format!("{nome}^({}/2)", d / 2),
        _ => format!("{nome}^({d}/4)"),
    }
}

impl PSeries {
    /// Canonical text: terms by increasing degree, then the truncation.
    pub fn render(&self, nome: &str) -> String {
        let mut parts = Vec::new();
        for (d, c) in &self.terms {
            let m = fmt_deg4(nome, *d);
            if m.is_empty() {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("{c}*{m}"));
            }
        }
        let mut s = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if !self.is_exact() {
            s.push_str(&format!(" + O({})", {
                let m = fmt_deg4(nome, self.prec + 1);
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m
                }
            }));
        }
        s
    }
}

impl fmt::Display for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("p"))
    }
}

impl fmt::Debug for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_rules() {
        let a = PSeries::from_terms([(2, Coeff::one()), (4, Coeff::int(2))], 8);
        let b = PSeries::from_terms([(0, Coeff::one())], 4);
        let c = &a * &b;
        // min(8 + 0, 4 + 2) = 6
        assert_eq!(c.prec(), 6);
        let s = &a + &b;
        assert_eq!(s.prec(), 4);
    }

    #[test]
    fn exp_of_nilpotent_part() {
        let x = PSeries::from_terms([(4, Coeff::one())], 12);
        let e = x.exp(12);
        // 1 + p + p^2/2 + p^3/6
        assert_eq!(e.coeff(12).unwrap(), Coeff::rational(Q::new(1.into(), 6.into())));
    }
}
