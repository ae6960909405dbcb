//! Windowed Laurent series in the exchange variable `x = w/z`.
//!
//! A value knows its coefficients exactly on an index range `[lo, hi]`
//! (either end may be infinite). Outside the known range nothing is known,
//! except that an infinite end means "known, and zero beyond the stored
//! terms". Products track the largest index range on which they are
//! determined by the operands.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::coeff::Coeff;
use super::pseries::{PSeries, EXACT};
use super::Q;
use crate::Error;

pub const NEG_INF: i64 = i64::MIN / 8;
pub const POS_INF: i64 = i64::MAX / 8;

#[derive(Clone, Debug)]
pub struct XLaurent {
    lo: i64,
    hi: i64,
    terms: BTreeMap<i64, PSeries>,
}

impl XLaurent {
    /// The exact zero.
    pub fn zero() -> Self {
        XLaurent { lo: NEG_INF, hi: POS_INF, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::mono(0, PSeries::one())
    }

    /// Exact `c x^m`.
    pub fn mono(m: i64, c: PSeries) -> Self {
        let mut x = Self::zero();
        x.set(m, c);
        x
    }

    /// An exact finite Laurent polynomial.
    pub fn poly(terms: impl IntoIterator<Item = (i64, PSeries)>) -> Self {
        let mut x = Self::zero();
        for (m, c) in terms {
            x.add_at(m, &c);
        }
        x
    }

    /// Series with known range `[lo, hi]`.
    pub fn with_range(lo: i64, hi: i64, terms: impl IntoIterator<Item = (i64, PSeries)>) -> Self {
        let mut x = XLaurent { lo, hi, terms: BTreeMap::new() };
        for (m, c) in terms {
            if m >= lo && m <= hi {
                x.add_at(m, &c);
            }
        }
        x
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn terms(&self) -> &BTreeMap<i64, PSeries> {
        &self.terms
    }

    fn set(&mut self, m: i64, c: PSeries) {
        if c.is_zero() && c.is_exact() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    pub fn add_at(&mut self, m: i64, c: &PSeries) {
        let v = match self.terms.get(&m) {
            Some(old) => old + c,
            None => c.clone(),
        };
        self.set(m, v);
    }

    pub fn is_known(&self, m: i64) -> bool {
        m >= self.lo && m <= self.hi
    }

    /// Coefficient at `x^m`, `None` outside the known range.
    pub fn coeff(&self, m: i64) -> Option<PSeries> {
        if !self.is_known(m) {
            return None;
        }
        Some(self.terms.get(&m).cloned().unwrap_or_else(PSeries::zero))
    }

    /// Smallest index that could be nonzero.
    fn min_support(&self) -> i64 {
        if self.lo > NEG_INF {
            NEG_INF
        } else {
            self.terms.keys().next().copied().unwrap_or(POS_INF)
        }
    }

    fn max_support(&self) -> i64 {
        if self.hi < POS_INF {
            POS_INF
        } else {
            self.terms.keys().next_back().copied().unwrap_or(NEG_INF)
        }
    }

    /// Every coefficient is known, whatever their nome precision.
    pub fn is_finite(&self) -> bool {
        self.lo <= NEG_INF && self.hi >= POS_INF
    }

    pub fn is_exact_poly(&self) -> bool {
        self.lo <= NEG_INF && self.hi >= POS_INF && self.terms.values().all(|c| c.is_exact())
    }

    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.max(self.lo);
        let hi = hi.min(self.hi);
        XLaurent { lo, hi, terms: self.terms.range(lo..=hi.max(lo)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn shift(&self, s: i64) -> Self {
        let mv = |v: i64| if v <= NEG_INF || v >= POS_INF { v } else { v + s };
        XLaurent { lo: mv(self.lo), hi: mv(self.hi), terms: self.terms.iter().map(|(m, c)| (m + s, c.clone())).collect() }
    }

    /// `x -> 1/x`.
    pub fn reflect(&self) -> Self {
        let neg = |v: i64| if v <= NEG_INF { POS_INF } else if v >= POS_INF { NEG_INF } else { -v };
        XLaurent { lo: neg(self.hi), hi: neg(self.lo), terms: self.terms.iter().map(|(m, c)| (-m, c.clone())).collect() }
    }

    pub fn scale(&self, c: &PSeries) -> Self {
        XLaurent { lo: self.lo, hi: self.hi, terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn scale_coeff(&self, c: &Coeff) -> Self {
        XLaurent { lo: self.lo, hi: self.hi, terms: self.terms.iter().map(|(m, v)| (*m, v.scale(c))).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&PSeries) -> PSeries) -> Self {
        XLaurent { lo: self.lo, hi: self.hi, terms: self.terms.iter().map(|(m, v)| (*m, f(v))).collect() }
    }

    /// Window-aware product; fails when the product would be an infinite sum.
    pub fn mul(&self, o: &XLaurent, limit4: i64) -> Result<XLaurent, Error> {
        let (amin, amax, bmin, bmax) = (self.min_support(), self.max_support(), o.min_support(), o.max_support());
        let bound_hi = |hi: i64, other_min: i64| -> i64 {
            if hi >= POS_INF {
                POS_INF
            } else if other_min <= NEG_INF {
                NEG_INF
            } else if other_min >= POS_INF {
                POS_INF
            } else {
                hi + other_min
            }
        };
        let bound_lo = |lo: i64, other_max: i64| -> i64 {
            if lo <= NEG_INF {
                NEG_INF
            } else if other_max >= POS_INF {
                POS_INF
            } else if other_max <= NEG_INF {
                NEG_INF
            } else {
                lo + other_max
            }
        };
        let hi = bound_hi(self.hi, bmin).min(bound_hi(o.hi, amin));
        let lo = bound_lo(self.lo, bmax).max(bound_lo(o.lo, amax));
        if lo > hi {
            return Err(Error::InfiniteSum);
        }
        let mut terms: BTreeMap<i64, PSeries> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma + mb;
                if m < lo || m > hi {
                    continue;
                }
                let p = ca.mul_to(cb, limit4);
                match terms.get_mut(&m) {
                    Some(old) => *old = &*old + &p,
                    None => {
                        terms.insert(m, p);
                    }
                }
            }
        }
        let mut out = XLaurent { lo, hi, terms: BTreeMap::new() };
        for (m, c) in terms {
            out.set(m, c);
        }
        // Known-zero entries inside the range keep the operands' precision.
        Ok(out)
    }

    /// `exp(self)` for a power series in `x` without constant term, known
    /// up to `hi`.
    pub fn exp_pos(&self, limit4: i64) -> Result<XLaurent, Error> {
        if self.terms.keys().any(|m| *m <= 0) || self.lo > 1 {
            return Err(Error::Internal("exp of a series with non-positive x-powers".into()));
        }
        let hi = self.hi;
        let n = if hi >= POS_INF {
            return Err(Error::Internal("exp of an unbounded series".into()));
        } else {
            hi
        };
        // f_m = (1/m) sum_{j=1..m} j g_j f_{m-j}
        let mut f: Vec<PSeries> = vec![PSeries::one()];
        let g = |j: i64| self.terms.get(&j).cloned().unwrap_or_else(PSeries::zero);
        for m in 1..=n {
            let mut acc = PSeries::zero();
            for j in 1..=m {
                let gj = g(j);
                if gj.is_zero() && gj.is_exact() {
                    continue;
                }
                let t = gj.mul_to(&f[(m - j) as usize], limit4).scale_q(&Q::from_integer(j.into()));
                acc = &acc + &t;
            }
            f.push(acc.scale_q(&Q::new(1.into(), m.into())));
        }
        let mut out = XLaurent { lo: NEG_INF, hi: n, terms: BTreeMap::new() };
        for (m, c) in f.into_iter().enumerate() {
            out.set(m as i64, c.truncate(limit4));
        }
        Ok(out)
    }

    /// `exp(self)` for a power series in `1/x` without constant term.
    pub fn exp_neg(&self, limit4: i64) -> Result<XLaurent, Error> {
        Ok(self.reflect().exp_pos(limit4)?.reflect())
    }

    /// First coefficient (in x, then nome degree) where two series differ
    /// inside the window `[-n, n]`, restricted to indices known in both.
    /// Returns the number of compared entries on agreement.
    pub fn compare(&self, o: &XLaurent, n: i64, limit4: i64) -> Comparison {
        let lo = (-n).max(self.lo).max(o.lo);
        let hi = n.min(self.hi).min(o.hi);
        let mut compared = 0usize;
        let mut nonzero = false;
        if lo > hi {
            return Comparison::Agree { compared, nonzero };
        }
        for m in lo..=hi {
            let a = self.coeff(m).unwrap();
            let b = o.coeff(m).unwrap();
            let p = a.prec().min(b.prec()).min(limit4);
            if p < a.val().min(b.val()).min(0) {
                continue;
            }
            if let Some(d) = a.first_difference(&b, limit4) {
                return Comparison::Differ { m, deg4: d, lhs: a, rhs: b };
            }
            compared += 1;
            if !a.truncate(p).is_zero() {
                nonzero = true;
            }
        }
        Comparison::Agree { compared, nonzero }
    }
}

#[derive(Clone, Debug)]
pub enum Comparison {
    Agree { compared: usize, nonzero: bool },
    Differ { m: i64, deg4: i64, lhs: PSeries, rhs: PSeries },
}

impl<'a> Add<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn add(self, o: &XLaurent) -> XLaurent {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        let mut out = self.restrict(lo, hi);
        for (m, c) in o.terms.range(lo..=hi.max(lo)) {
            out.add_at(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn sub(self, o: &XLaurent) -> XLaurent {
        self + &(-o.clone())
    }
}

impl Neg for XLaurent {
    type Output = XLaurent;
    fn neg(self) -> XLaurent {
        XLaurent { lo: self.lo, hi: self.hi, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl XLaurent {
    /// Canonical text, ordered by x-power.
    pub fn render(&self, nome: &str) -> String {
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let xs = match m {
                0 => String::new(),
                1 => "*x".to_string(),
                _ => format!("*x^{m}"),
            };
            parts.push(format!("[{}]{xs}", c.render(nome)));
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        let fmt_end = |v: i64| -> String {
            if v <= NEG_INF {
                "-inf".into()
            } else if v >= POS_INF {
                "inf".into()
            } else {
                v.to_string()
            }
        };
        format!("{body}  (known x^{}..x^{})", fmt_end(self.lo), fmt_end(self.hi))
    }
}

/// Precision sentinel re-exported for callers building exact pieces.
pub const EXACT_PREC: i64 = EXACT;

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> PSeries {
        PSeries::constant(Coeff::int(n))
    }

    #[test]
    fn product_ranges() {
        // (1 + x + x^2 + ...) known to x^3, times (1 - x) exact.
        let geo = XLaurent::with_range(NEG_INF, 3, (0..=3).map(|m| (m, c(1))));
        let lin = XLaurent::poly([(0, c(1)), (1, c(-1))]);
        let p = geo.mul(&lin, EXACT).unwrap();
        assert_eq!(p.hi(), 3);
        assert_eq!(p.coeff(0).unwrap().coeff(0).unwrap(), Coeff::one());
        for m in 1..=3 {
            assert!(p.coeff(m).unwrap().is_zero());
        }
        assert!(p.coeff(4).is_none());
    }

    #[test]
    fn infinite_sum_is_rejected() {
        let pos = XLaurent::with_range(NEG_INF, 3, (0..=3).map(|m| (m, c(1))));
        let neg = pos.reflect();
        assert!(pos.mul(&neg, EXACT).is_err());
    }

    #[test]
    fn exp_of_log() {
        // exp(-sum x^n/n) = 1 - x
        let g = XLaurent::with_range(
            NEG_INF,
            6,
            (1..=6).map(|n| (n, PSeries::constant(Coeff::rational(Q::new((-1).into(), n.into()))))),
        );
        let e = g.exp_pos(EXACT).unwrap();
        assert_eq!(e.coeff(1).unwrap().coeff(0).unwrap(), Coeff::int(-1));
        for m in 2..=6 {
            assert!(e.coeff(m).unwrap().is_zero());
        }
    }
}
