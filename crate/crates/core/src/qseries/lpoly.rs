//! Laurent polynomials over the rationals in the two formal generators
//! `q^{1/2}` and `q^{k/2}`. A key `(i, j)` stands for `q^{i/2} q^{kj/2}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Q;

pub type Key = (i64, i64);

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    /// Sorted by key, no zero coefficients.
    terms: Vec<(Key, Q)>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::mono(0, 0, Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::mono(0, 0, c)
    }

    pub fn mono(i: i64, j: i64, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LPoly { terms: vec![((i, j), c)] }
        }
    }

    /// `q^e` for an integer `e`.
    pub fn q(e: i64) -> Self {
        Self::mono(2 * e, 0, Q::one())
    }

    pub fn from_terms(mut v: Vec<(Key, Q)>) -> Self {
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(Key, Q)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Key, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    pub fn as_mono(&self) -> Option<(Key, &Q)> {
        if self.terms.len() == 1 {
            Some((self.terms[0].0, &self.terms[0].1))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 if self.terms[0].0 == (0, 0) => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Key, Q)> {
        self.terms.last()
    }

    pub fn lowest(&self) -> Option<&(Key, Q)> {
        self.terms.first()
    }

    /// Whether any term involves `q^{k/2}`.
    pub fn has_k(&self) -> bool {
        self.terms.iter().any(|((_, j), _)| *j != 0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn shift(&self, di: i64, dj: i64) -> Self {
        LPoly { terms: self.terms.iter().map(|((i, j), v)| ((i + di, j + dj), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Substitutes `q^{k/2} -> t^{1/4} q^{-1}` bookkeeping: returns the poly
    /// with every `j` folded into the q-exponent, grouped by `j`.
    pub fn split_by_k(&self) -> std::collections::BTreeMap<i64, LPoly> {
        let mut m: std::collections::BTreeMap<i64, Vec<(Key, Q)>> = Default::default();
        for ((i, j), c) in &self.terms {
            m.entry(*j).or_default().push(((*i, 0), c.clone()));
        }
        m.into_iter().map(|(j, v)| (j, LPoly::from_terms(v))).collect()
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LPoly) -> Option<LPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(((di, dj), dc)) = d.as_mono() {
            return Some(self.shift(-di, -dj).scale(&(Q::one() / dc)));
        }
        let (dlead, dlc) = d.leading().cloned().unwrap();
        let dlow = d.lowest().unwrap().0;
        let nlow = self.lowest().unwrap().0;
        // Quotient keys are bounded below (lex) by nlow - dlow.
        let bound = (nlow.0 - dlow.0, nlow.1 - dlow.1);
        // Each coordinate's degree range is additive under products.
        let (ni, nj) = self.degree_box();
        let (di, dj) = d.degree_box();
        let irange = (ni.0 - di.0, ni.1 - di.1);
        let jrange = (nj.0 - dj.0, nj.1 - dj.1);
        let mut rem = self.clone();
        let mut quo: Vec<(Key, Q)> = Vec::new();
        while let Some((rk, rc)) = rem.leading().cloned() {
            let qk = (rk.0 - dlead.0, rk.1 - dlead.1);
            if qk < bound || qk.0 < irange.0 || qk.0 > irange.1 || qk.1 < jrange.0 || qk.1 > jrange.1 {
                return None;
            }
            let qc = rc / &dlc;
            let t = d.shift(qk.0, qk.1).scale(&qc);
            rem = &rem - &t;
            quo.push((qk, qc));
        }
        Some(LPoly::from_terms(quo))
    }

    /// `((min i, max i), (min j, max j))` of a nonzero polynomial.
    fn degree_box(&self) -> ((i64, i64), (i64, i64)) {
        let mut bi = (i64::MAX, i64::MIN);
        let mut bj = (i64::MAX, i64::MIN);
        for ((i, j), _) in &self.terms {
            bi = (bi.0.min(*i), bi.1.max(*i));
            bj = (bj.0.min(*j), bj.1.max(*j));
        }
        (bi, bj)
    }

    fn merge(a: &[(Key, Q)], b: &[(Key, Q)], sign: bool) -> Vec<(Key, Q)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let take_a = y >= b.len() || (x < a.len() && a[x].0 < b[y].0);
            let take_b = x >= a.len() || (y < b.len() && b[y].0 < a[x].0);
            if take_a {
                out.push(a[x].clone());
                x += 1;
            } else if take_b {
                let c = if sign { -b[y].1.clone() } else { b[y].1.clone() };
                out.push((b[y].0, c));
                y += 1;
            } else {
                let c = if sign { &a[x].1 - &b[y].1 } else { &a[x].1 + &b[y].1 };
                if !c.is_zero() {
                    out.push((a[x].0, c));
                }
                x += 1;
                y += 1;
            }
        }
        out
    }
}

impl<'a> Add<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn add(self, o: &LPoly) -> LPoly {
        LPoly { terms: LPoly::merge(&self.terms, &o.terms, false) }
    }
}

impl<'a> Sub<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn sub(self, o: &LPoly) -> LPoly {
        LPoly { terms: LPoly::merge(&self.terms, &o.terms, true) }
    }
}

impl<'a> Mul<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn mul(self, o: &LPoly) -> LPoly {
        if self.is_zero() || o.is_zero() {
            return LPoly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                v.push(((i1 + i2, j1 + j2), c1 * c2));
            }
        }
        LPoly::from_terms(v)
    }
}

impl Add for LPoly {
    type Output = LPoly;
    fn add(self, o: LPoly) -> LPoly {
        &self + &o
    }
}

impl Sub for LPoly {
    type Output = LPoly;
    fn sub(self, o: LPoly) -> LPoly {
        &self - &o
    }
}

impl Mul for LPoly {
    type Output = LPoly;
    fn mul(self, o: LPoly) -> LPoly {
        &self * &o
    }
}

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

pub(crate) fn fmt_q_power(i: i64, j: i64) -> String {
    let mut parts = Vec::new();
    let num = |n: i64| -> String {
        if n % 2 == 0 {
            (n / 2).to_string()
        } else {
            format!("{n}/2")
        }
    };
    if i != 0 {
        parts.push(num(i));
    }
    if j != 0 {
        let s = match j {
            2 => "k".to_string(),
            -2 => "-k".to_string(),
            1 => "k/2".to_string(),
            -1 => "-k/2".to_string(),
            _ if j % 2 == 0 => format!("{}k", j / 2),
            _ => format!("{j}k/2"),
        };
        parts.push(s);
    }
    let mut e = String::new();
    for (n, p) in parts.iter().enumerate() {
        if n > 0 && !p.starts_with('-') {
            e.push('+');
        }
        e.push_str(p);
    }
    if e.contains(['+', '/']) || e[1..].contains('-') {
        format!("q^({e})")
    } else {
        format!("q^{e}")
    }
}

impl fmt::Display for LPoly {
    /// Canonical printing: terms in increasing (q-exponent, k-exponent) order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let cs = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if *i == 0 && *j == 0 {
                write!(f, "{cs}")?;
            } else if mag.is_one() {
                write!(f, "{}", fmt_q_power(*i, *j))?;
            } else {
                write!(f, "{cs}*{}", fmt_q_power(*i, *j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::int;

    fn qq(e: i64) -> LPoly {
        LPoly::q(e)
    }

    #[test]
    fn exact_division_of_q_numbers() {
        // (q^4 - q^-4) / (q - q^-1) = q^3 + q + q^-1 + q^-3
        let n = &qq(4) - &qq(-4);
        let d = &qq(1) - &qq(-1);
        let quo = n.div_exact(&d).unwrap();
        let expect = &(&(&qq(3) + &qq(1)) + &qq(-1)) + &qq(-3);
        assert_eq!(quo, expect);
    }

    #[test]
    fn non_divisible_is_rejected() {
        let n = &qq(1) + &qq(0);
        let d = &qq(1) - &qq(-1);
        assert!(n.div_exact(&d).is_none());
        // q^k - 1 does not divide q - 1.
        let dk = &LPoly::mono(0, 2, int(1)) - &LPoly::one();
        assert!((&qq(1) - &LPoly::one()).div_exact(&dk).is_none());
    }

    #[test]
    fn bivariate_division() {
        let a = &LPoly::mono(0, 2, int(1)) - &qq(2);
        let b = &LPoly::mono(3, 1, int(2)) + &qq(-1);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn printing() {
        let p = &qq(1) + &qq(-1);
        assert_eq!(p.to_string(), "q^-1 + q^1");
        assert_eq!(LPoly::mono(1, 1, int(-3)).to_string(), "-3*q^(1/2+k/2)");
    }
}
