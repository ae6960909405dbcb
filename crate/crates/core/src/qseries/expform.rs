//! Exponent forms: exact rational functions of the level `k` and the elliptic
//! parameter `r`, with denominators drawn from `r`, `r* = r - k` and `k + 2`.
//!
//! These house every exponent that appears in the realization: shifts like
//! `r* + k/2 - 1`, zero-mode coefficients like `-1/r*`, and z-powers such as
//! `2/r* - 2/r` or `2/(k+2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{int, Q};

type Poly2 = BTreeMap<(u32, u32), Q>;

/// `num / (r^a (r-k)^b (k+2)^c)` with `num` a polynomial in `k` and `r`,
/// kept reduced so that no denominator factor divides the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExpForm {
    num: Poly2,
    den: [u32; 3],
}

const R: usize = 0;
const RS: usize = 1;
const KP2: usize = 2;

fn factor_poly(which: usize) -> Poly2 {
    let mut p = Poly2::new();
    match which {
        R => {
            p.insert((0, 1), Q::one());
        }
        RS => {
            p.insert((0, 1), Q::one());
            p.insert((1, 0), -Q::one());
        }
        _ => {
            p.insert((1, 0), Q::one());
            p.insert((0, 0), int(2));
        }
    }
    p
}

fn poly_mul(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (&(ka, ra), ca) in a {
        for (&(kb, rb), cb) in b {
            let e = out.entry((ka + kb, ra + rb)).or_insert_with(Q::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn poly_add(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(Q::zero);
        *e += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Exact division by the linear factor with the given index, if it divides.
fn try_div_factor(p: &Poly2, which: usize) -> Option<Poly2> {
    if p.is_empty() {
        return Some(Poly2::new());
    }
    match which {
        R => {
            if p.keys().any(|&(_, r)| r == 0) {
                return None;
            }
            Some(p.iter().map(|(&(k, r), c)| ((k, r - 1), c.clone())).collect())
        }
        RS => {
            // Synthetic division in r with root r = k, coefficients in Q[k].
            let dmax = p.keys().map(|&(_, r)| r).max().unwrap();
            let coeff_r = |d: u32| -> BTreeMap<u32, Q> {
                p.iter()
                    .filter(|(&(_, r), _)| r == d)
                    .map(|(&(k, _), c)| (k, c.clone()))
                    .collect()
            };
            let mut quotient = Poly2::new();
            let mut carry: BTreeMap<u32, Q> = BTreeMap::new();
            for d in (0..=dmax).rev() {
                let mut cur = coeff_r(d);
                for (k, c) in &carry {
                    *cur.entry(k + 1).or_insert_with(Q::zero) += c;
                }
                cur.retain(|_, v| !v.is_zero());
                if d == 0 {
                    if !cur.is_empty() {
                        return None;
                    }
                } else {
                    for (k, c) in &cur {
                        quotient.insert((*k, d - 1), c.clone());
                    }
                    carry = cur;
                }
            }
            Some(quotient)
        }
        _ => {
            // Synthetic division in k with root k = -2, coefficients in Q[r].
            let dmax = p.keys().map(|&(k, _)| k).max().unwrap();
            let mut quotient = Poly2::new();
            let mut carry: BTreeMap<u32, Q> = BTreeMap::new();
            for d in (0..=dmax).rev() {
                let mut cur: BTreeMap<u32, Q> = p
                    .iter()
                    .filter(|(&(k, _), _)| k == d)
                    .map(|(&(_, r), c)| (r, c.clone()))
                    .collect();
                for (r, c) in &carry {
                    *cur.entry(*r).or_insert_with(Q::zero) += c * int(-2);
                }
                cur.retain(|_, v| !v.is_zero());
                if d == 0 {
                    if !cur.is_empty() {
                        return None;
                    }
                } else {
                    for (r, c) in &cur {
                        quotient.insert((d - 1, *r), c.clone());
                    }
                    carry = cur;
                }
            }
            Some(quotient)
        }
    }
}

/// Polynomial long division by a monic univariate linear factor power,
/// returning (quotient, remainder).
fn divmod_factor_pow(p: &Poly2, which: usize, pow: u32) -> (Poly2, Poly2) {
    let mut divisor = Poly2::new();
    divisor.insert((0, 0), Q::one());
    for _ in 0..pow {
        divisor = poly_mul(&divisor, &factor_poly(which));
    }
    // Leading variable: r for R/RS, k for KP2.
    let lead = |key: &(u32, u32)| if which == KP2 { key.0 } else { key.1 };
    let dlead = divisor.keys().map(lead).max().unwrap_or(0);
    let mut rem = p.clone();
    let mut quo = Poly2::new();
    loop {
        let top = match rem.keys().map(lead).max() {
            Some(t) if t >= dlead && dlead > 0 => t,
            _ => break,
        };
        let shift = top - dlead;
        // Coefficient of lead^top in rem, as a polynomial in the other variable.
        let terms: Vec<((u32, u32), Q)> = rem
            .iter()
            .filter(|(kk, _)| lead(kk) == top)
            .map(|(kk, c)| (*kk, c.clone()))
            .collect();
        let mut q_part = Poly2::new();
        for ((k, r), c) in terms {
            let key = if which == KP2 { (k - dlead, r) } else { (k, r - dlead) };
            q_part.insert(key, c);
        }
        let _ = shift;
        quo = poly_add(&quo, &q_part);
        let sub = poly_mul(&q_part, &divisor);
        rem = poly_add(&rem, &sub.into_iter().map(|(k, v)| (k, -v)).collect());
    }
    (quo, rem)
}

impl ExpForm {
    pub fn zero() -> Self {
        ExpForm { num: Poly2::new(), den: [0; 3] }
    }

    pub fn rational(c: Q) -> Self {
        let mut num = Poly2::new();
        if !c.is_zero() {
            num.insert((0, 0), c);
        }
        ExpForm { num, den: [0; 3] }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(Q::new(n.into(), d.into()))
    }

    /// The level `k`.
    pub fn k() -> Self {
        let mut num = Poly2::new();
        num.insert((1, 0), Q::one());
        ExpForm { num, den: [0; 3] }
    }

    pub fn r() -> Self {
        let mut num = Poly2::new();
        num.insert((0, 1), Q::one());
        ExpForm { num, den: [0; 3] }
    }

    /// `r* = r - k`.
    pub fn rstar() -> Self {
        Self::r() - Self::k()
    }

    /// `1/r`.
    pub fn inv_r() -> Self {
        Self::inv_factor(R)
    }

    /// `1/r*`.
    pub fn inv_rstar() -> Self {
        Self::inv_factor(RS)
    }

    /// `1/(k+2)`.
    pub fn inv_kp2() -> Self {
        Self::inv_factor(KP2)
    }

    fn inv_factor(which: usize) -> Self {
        let mut den = [0; 3];
        den[which] = 1;
        ExpForm { num: [((0, 0), Q::one())].into_iter().collect(), den }
    }

    /// `a + b k` with rational coefficients.
    pub fn affine(a: Q, b: Q) -> Self {
        Self::rational(a) + Self::k() * Self::rational(b)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExpForm {
            num: self.num.iter().map(|(k, v)| (*k, v * c)).collect(),
            den: self.den,
        }
    }

    fn reduce(mut self) -> Self {
        if self.num.is_empty() {
            self.den = [0; 3];
            return self;
        }
        for which in [R, RS, KP2] {
            while self.den[which] > 0 {
                match try_div_factor(&self.num, which) {
                    Some(q) => {
                        self.num = q;
                        self.den[which] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    fn with_den(&self, target: [u32; 3]) -> Poly2 {
        let mut num = self.num.clone();
        for which in [R, RS, KP2] {
            for _ in self.den[which]..target[which] {
                num = poly_mul(&num, &factor_poly(which));
            }
        }
        num
    }

    /// Returns the constant value when the form carries no `k`/`r` dependence.
    pub fn as_rational(&self) -> Option<Q> {
        if self.den != [0; 3] {
            return None;
        }
        match self.num.len() {
            0 => Some(Q::zero()),
            1 => self.num.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if q.is_integer() {
            i64::try_from(q.to_integer()).ok()
        } else {
            None
        }
    }

    /// Splits `self = a + b k + c r + rest`, where `rest` has no affine part
    /// in its polynomial quotient. The decomposition is canonical.
    pub fn split_affine(&self) -> (Q, Q, Q, ExpForm) {
        let dr = self.den[R] + self.den[RS];
        // Divide by r^a (r-k)^b: monic in r.
        let mut divisor = Poly2::new();
        divisor.insert((0, 0), Q::one());
        for _ in 0..self.den[R] {
            divisor = poly_mul(&divisor, &factor_poly(R));
        }
        for _ in 0..self.den[RS] {
            divisor = poly_mul(&divisor, &factor_poly(RS));
        }
        let quotient = if dr == 0 {
            self.num.clone()
        } else {
            poly_divmod_in_r(&self.num, &divisor).0
        };
        let quotient = if self.den[KP2] == 0 {
            quotient
        } else {
            divmod_factor_pow(&quotient, KP2, self.den[KP2]).0
        };
        let get = |k: (u32, u32)| quotient.get(&k).cloned().unwrap_or_else(Q::zero);
        let a = get((0, 0));
        let b = get((1, 0));
        let c = get((0, 1));
        let aff = Self::rational(a.clone())
            + Self::k() * Self::rational(b.clone())
            + Self::r() * Self::rational(c.clone());
        (a, b, c, self.clone() - aff)
    }

    /// `Some((a, b, c))` when `self = a + b k + c r` exactly.
    pub fn as_linear(&self) -> Option<(Q, Q, Q)> {
        let (a, b, c, rest) = self.split_affine();
        if rest.is_zero() {
            Some((a, b, c))
        } else {
            None
        }
    }

    /// Substitutes a rational value for `k`; fails when a denominator vanishes.
    pub fn specialize_k(&self, kval: &Q) -> Option<ExpForm> {
        let dens = [
            ExpForm::r(),
            ExpForm::r() - ExpForm::rational(kval.clone()),
            ExpForm::rational(kval + int(2)),
        ];
        let mut num = ExpForm::zero();
        for (&(kd, rd), c) in &self.num {
            let mut t = ExpForm::rational(c * pow_q(kval, kd));
            for _ in 0..rd {
                t = t * ExpForm::r();
            }
            num = num + t;
        }
        let mut den = ExpForm::int(1);
        for (i, d) in dens.iter().enumerate() {
            for _ in 0..self.den[i] {
                den = den * d.clone();
            }
        }
        // den is a product of r, (r - k0), constants: invert factor by factor.
        if let Some(c) = den.as_rational() {
            if c.is_zero() {
                return None;
            }
            return Some(num.scale(&(Q::one() / c)));
        }
        let mut out = num;
        for _ in 0..self.den[R] {
            out = out * ExpForm::inv_r();
        }
        if self.den[RS] > 0 {
            if !kval.is_zero() {
                // 1/(r - k0) is not representable unless k0 = 0.
                return None;
            }
            for _ in 0..self.den[RS] {
                out = out * ExpForm::inv_r();
            }
        }
        let c = kval + int(2);
        if self.den[KP2] > 0 {
            if c.is_zero() {
                return None;
            }
            out = out.scale(&(Q::one() / pow_q(&c, self.den[KP2])));
        }
        Some(out)
    }
}

fn pow_q(x: &Q, e: u32) -> Q {
    let mut out = Q::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

fn poly_divmod_in_r(p: &Poly2, divisor: &Poly2) -> (Poly2, Poly2) {
    let dlead = divisor.keys().map(|k| k.1).max().unwrap_or(0);
    let mut rem = p.clone();
    let mut quo = Poly2::new();
    loop {
        let top = match rem.keys().map(|k| k.1).max() {
            Some(t) if t >= dlead && dlead > 0 => t,
            _ => break,
        };
        let q_part: Poly2 = rem
            .iter()
            .filter(|(kk, _)| kk.1 == top)
            .map(|(&(k, r), c)| ((k, r - dlead), c.clone()))
            .collect();
        quo = poly_add(&quo, &q_part);
        let sub = poly_mul(&q_part, divisor);
        rem = poly_add(&rem, &sub.into_iter().map(|(k, v)| (k, -v)).collect());
    }
    (quo, rem)
}

impl Add for ExpForm {
    type Output = ExpForm;
    fn add(self, o: ExpForm) -> ExpForm {
        &self + &o
    }
}

impl<'a> Add<&'a ExpForm> for &'a ExpForm {
    type Output = ExpForm;
    fn add(self, o: &ExpForm) -> ExpForm {
        if self.den == o.den {
            return ExpForm { num: poly_add(&self.num, &o.num), den: self.den }.reduce();
        }
        let target = [
            self.den[0].max(o.den[0]),
            self.den[1].max(o.den[1]),
            self.den[2].max(o.den[2]),
        ];
        ExpForm { num: poly_add(&self.with_den(target), &o.with_den(target)), den: target }.reduce()
    }
}

impl Neg for ExpForm {
    type Output = ExpForm;
    fn neg(self) -> ExpForm {
        ExpForm { num: self.num.into_iter().map(|(k, v)| (k, -v)).collect(), den: self.den }
    }
}

impl Sub for ExpForm {
    type Output = ExpForm;
    fn sub(self, o: ExpForm) -> ExpForm {
        self + (-o)
    }
}

impl<'a> Sub<&'a ExpForm> for &'a ExpForm {
    type Output = ExpForm;
    fn sub(self, o: &ExpForm) -> ExpForm {
        self + &(-o.clone())
    }
}

impl Mul for ExpForm {
    type Output = ExpForm;
    fn mul(self, o: ExpForm) -> ExpForm {
        &self * &o
    }
}

impl<'a> Mul<&'a ExpForm> for &'a ExpForm {
    type Output = ExpForm;
    fn mul(self, o: &ExpForm) -> ExpForm {
        if self.is_zero() || o.is_zero() {
            return ExpForm::zero();
        }
        ExpForm {
            num: poly_mul(&self.num, &o.num),
            den: [self.den[0] + o.den[0], self.den[1] + o.den[1], self.den[2] + o.den[2]],
        }
        .reduce()
    }
}

fn fmt_rat(c: &Q) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for ExpForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        // Descending total degree, then by k-degree, for a stable reading order.
        let mut keys: Vec<_> = self.num.iter().collect();
        keys.sort_by(|a, b| {
            let da = a.0 .0 + a.0 .1;
            let db = b.0 .0 + b.0 .1;
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (i, (&(kd, rd), c)) in keys.into_iter().enumerate() {
            let mut mono = String::new();
            for (sym, d) in [("k", kd), ("r", rd)] {
                if d == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(sym);
                if d > 1 {
                    mono.push_str(&format!("^{d}"));
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                fmt_rat(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_rat(&mag), mono)
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
                s.push_str(&body);
            } else {
                s.push_str(if neg { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        if self.den == [0; 3] {
            return write!(f, "{s}");
        }
        let mut d = Vec::new();
        for (i, name) in ["r", "(r-k)", "(k+2)"].iter().enumerate() {
            match self.den[i] {
                0 => {}
                1 => d.push(name.to_string()),
                e => d.push(format!("{name}^{e}")),
            }
        }
        write!(f, "({s})/({})", d.join("*"))
    }
}

impl fmt::Debug for ExpForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpForm({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rstar_inverse_reduces() {
        let e = ExpForm::rstar() * ExpForm::inv_rstar();
        assert_eq!(e, ExpForm::int(1));
        let e = ExpForm::rstar() * ExpForm::inv_r();
        // (r - k)/r = 1 - k/r
        assert_eq!(e, ExpForm::int(1) - ExpForm::k() * ExpForm::inv_r());
    }

    #[test]
    fn kp2_cancels() {
        let e = (ExpForm::k() + ExpForm::int(2)) * ExpForm::inv_kp2();
        assert_eq!(e, ExpForm::int(1));
        let e = ExpForm::k() * ExpForm::inv_kp2();
        let (a, b, c, rest) = e.split_affine();
        assert_eq!((a, b, c), (int(1), int(0), int(0)));
        assert_eq!(rest, ExpForm::int(-2) * ExpForm::inv_kp2());
    }

    #[test]
    fn split_affine_recovers_linear_part() {
        let e = ExpForm::rstar() + ExpForm::frac(1, 2) * ExpForm::k() - ExpForm::int(1);
        assert_eq!(e.as_linear(), Some((int(-1), Q::new((-1).into(), 2.into()), int(1))));
        let e = ExpForm::int(3) - ExpForm::k() * ExpForm::inv_r() * ExpForm::frac(1, 2);
        let (a, b, c, rest) = e.split_affine();
        assert_eq!((a, b, c), (int(3), int(0), int(0)));
        assert!(!rest.is_zero());
    }

    #[test]
    fn partial_fraction_identity_is_recognized() {
        // 1/r* - 1/r = k/(r r*)
        let lhs = ExpForm::inv_rstar() - ExpForm::inv_r();
        let rhs = ExpForm::k() * ExpForm::inv_r() * ExpForm::inv_rstar();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_is_stable() {
        let e = ExpForm::int(2) * ExpForm::inv_rstar();
        assert_eq!(e.to_string(), "(2)/((r-k))");
        assert_eq!(ExpForm::k().to_string(), "k");
    }
}
