//! Exact equality of normal-ordered exponentials.
//!
//! A sum of kernels `Σ c [L n].../[M n]... q^{βn} [2]^{bn}` is an
//! exponential polynomial in `n` once multiplied by a common denominator.
//! Distinct characters `q^{en} [2]^{bn}` are independent, so equality for
//! all `n` reduces to comparing character coefficients.

use std::collections::BTreeMap;

use crate::oscillators::{Family, Kernel, LinForm, Side};
use crate::qseries::{Coeff, ExpForm, Nome, PSeries};

type ExpPoly = BTreeMap<(ExpForm, i32), Coeff>;

/// `m` or `-m`, whichever sorts first, and the sign relating them.
fn canon(m: &ExpForm) -> (ExpForm, bool) {
    let neg = -m.clone();
    if neg < *m {
        (neg, true)
    } else {
        (m.clone(), false)
    }
}

fn add_to(acc: &mut ExpPoly, key: (ExpForm, i32), c: Coeff) {
    let v = match acc.remove(&key) {
        Some(old) => &old + &c,
        None => c,
    };
    if !v.is_zero() {
        acc.insert(key, v);
    }
}

/// Adds `sign · K(n) · D(n)` expanded into characters.
fn expand_into(acc: &mut ExpPoly, k: &Kernel, denom: &BTreeMap<ExpForm, usize>, sign: i64) {
    let mut c = k.c.scale(&crate::qseries::int(sign));
    let mut left = denom.clone();
    for m in &k.ms {
        let (cm, flip) = canon(m);
        if flip {
            c = -c;
        }
        let e = left.get_mut(&cm).expect("denominator covers every kernel");
        *e -= 1;
    }
    let mut factors: Vec<ExpForm> = k.ls.clone();
    for (m, e) in left {
        for _ in 0..e {
            factors.push(m.clone());
        }
    }
    let scale = Coeff::q_minus_qinv().pow(-(factors.len() as i64)).expect("q - 1/q is nonzero");
    c = &c * &scale;
    // Π (q^{Xn} - q^{-Xn}) as a signed sum of characters.
    let mut chars: Vec<(ExpForm, i64)> = vec![(k.beta.clone(), 1)];
    for x in &factors {
        let mut next = Vec::with_capacity(chars.len() * 2);
        for (e, s) in &chars {
            next.push((e + x, *s));
            next.push((e - x, -*s));
        }
        chars = next;
    }
    for (e, s) in chars {
        add_to(acc, (e, k.br2), c.scale(&crate::qseries::int(s)));
    }
}

/// Whether `Σ a(n) = Σ b(n)` for every `n ≥ 1`.
pub fn kernel_sums_equal(a: &[Kernel], b: &[Kernel]) -> bool {
    let mut denom: BTreeMap<ExpForm, usize> = BTreeMap::new();
    for k in a.iter().chain(b.iter()) {
        let mut mult: BTreeMap<ExpForm, usize> = BTreeMap::new();
        for m in &k.ms {
            *mult.entry(canon(m).0).or_default() += 1;
        }
        for (m, e) in mult {
            let d = denom.entry(m).or_default();
            *d = (*d).max(e);
        }
    }
    let mut acc = ExpPoly::new();
    for k in a {
        expand_into(&mut acc, k, &denom, 1);
    }
    for k in b {
        expand_into(&mut acc, k, &denom, -1);
    }
    acc.is_empty()
}

fn kernels(l: &LinForm, f: Family, s: Side) -> Vec<Kernel> {
    l.summands.iter().filter(|t| t.fam == f && t.side == s).map(|t| t.kernel.clone()).collect()
}

/// Per-mode evaluation of both sums for `n ≤ nmax`; exponents outside the
/// nome generators are skipped.
fn spot_check(a: &[Kernel], b: &[Kernel], nmax: i64, prec4: i64) -> bool {
    for n in 1..=nmax {
        let sum = |ks: &[Kernel]| -> Option<PSeries> {
            let mut acc = PSeries::zero();
            for k in ks {
                acc = &acc + &k.eval(n, Nome::P, prec4).ok()?;
            }
            Some(acc)
        };
        if let (Some(x), Some(y)) = (sum(a), sum(b)) {
            if !x.eq_upto(&y, prec4) {
                return false;
            }
        }
    }
    true
}

/// Exact equality of two normal-ordered exponentials: kernels per family
/// and side, zero-mode vectors, explicit z-power and q-scalar.
pub fn op_eq(a: &LinForm, b: &LinForm) -> bool {
    if a.zq != b.zq || a.plz != b.plz || a.plq != b.plq || a.slz != b.slz || a.slq != b.slq {
        return false;
    }
    for f in Family::ALL {
        for s in [Side::Ann, Side::Cre] {
            let (ka, kb) = (kernels(a, f, s), kernels(b, f, s));
            if !kernel_sums_equal(&ka, &kb) {
                return false;
            }
            debug_assert!(spot_check(&ka, &kb, 4, 8));
        }
    }
    true
}

/// `op_eq` followed by the per-mode check up to `nmax`.
pub fn op_eq_checked(a: &LinForm, b: &LinForm, nmax: i64, prec4: i64) -> bool {
    op_eq(a, b)
        && Family::ALL.iter().all(|f| {
            [Side::Ann, Side::Cre].iter().all(|s| spot_check(&kernels(a, *f, *s), &kernels(b, *f, *s), nmax, prec4))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::int;

    fn e(n: i64) -> ExpForm {
        ExpForm::int(n)
    }

    #[test]
    fn q_number_identity() {
        // [2n]/[n] = q^n + q^{-n}
        let a = Kernel::new(Coeff::one(), vec![e(2)], vec![e(1)], e(0)).unwrap();
        let b1 = Kernel::mono(Coeff::one(), e(1));
        let b2 = Kernel::mono(Coeff::one(), e(-1));
        assert!(kernel_sums_equal(std::slice::from_ref(&a), &[b1.clone(), b2]));
        assert!(!kernel_sums_equal(&[a], &[b1]));
    }

    #[test]
    fn sign_of_negated_denominator() {
        let a = Kernel::new(Coeff::one(), vec![], vec![e(-1)], e(0)).unwrap();
        let b = Kernel::new(Coeff::int(-1), vec![], vec![e(1)], e(0)).unwrap();
        assert!(kernel_sums_equal(&[a], &[b]));
    }

    #[test]
    fn distinct_denominators_combine() {
        // 1/[n] - 1/[n] q^{0}... : [2n]/([n][2n]) == 1/[n]
        let a = Kernel { c: Coeff::one(), ls: vec![e(2)], ms: vec![e(1), e(2)], beta: e(0), br2: 0 };
        let b = Kernel::new(Coeff::one(), vec![], vec![e(1)], e(0)).unwrap();
        assert!(kernel_sums_equal(&[a], &[b]));
    }

    #[test]
    fn op_eq_basics() {
        let p = LinForm::plus(Family::A, &ExpForm::zero());
        let m = LinForm::minus(Family::A, &ExpForm::zero());
        assert!(op_eq(&p, &p));
        assert!(!op_eq(&p, &m));
        let f = LinForm::field(Family::B, &e(1), &e(0), &int(1));
        assert!(op_eq_checked(&f, &f.clone(), 6, 8));
    }
}
