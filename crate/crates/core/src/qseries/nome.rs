//! The expansion nome.
//!
//! Series are expanded in a small parameter. The default is `p = q^{2r}`,
//! where `q^{r m}` becomes `p^{m/2}`. The alternative `t = q^{2(k+2)}`
//! treats `q^{k/2} = t^{1/4} q^{-1}` as small and is used for exchange
//! factors whose theta functions have period `k + 2`. Degrees are stored
//! in quarter units.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::expform::ExpForm;
use super::{int, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Nome {
    /// `p = q^{2r}`.
    #[default]
    P,
    /// `t = q^{2(k+2)}`.
    T,
}

impl Nome {
    pub fn name(self) -> &'static str {
        match self {
            Nome::P => "p",
            Nome::T => "t",
        }
    }
}

/// `q^e = nome^{deg4/4} q^{i/2} q^{kj/2} q^{tag}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExp {
    pub deg4: i64,
    pub i: i64,
    pub j: i64,
    pub tag: ExpForm,
}

fn half_units(c: &Q) -> Option<i64> {
    let d = c * int(2);
    if d.is_integer() {
        i64::try_from(d.to_integer()).ok()
    } else {
        None
    }
}

impl Nome {
    /// Splits a q-exponent. Parts that do not fit the generators (for
    /// example `-kl/(2r)` or a third of an integer) stay in the tag.
    pub fn split(self, e: &ExpForm) -> SplitExp {
        let (a, b, c, rest) = e.split_affine();
        let mut tag = rest;
        let (ai, bi, ci) = (half_units(&a), half_units(&b), half_units(&c));
        let mut deg4 = 0;
        let mut i = 0;
        let mut j = 0;
        match ai {
            Some(v) => i += v,
            None => tag = tag + ExpForm::rational(a),
        }
        match self {
            Nome::P => {
                match bi {
                    Some(v) => j += v,
                    None => tag = tag + ExpForm::k() * ExpForm::rational(b),
                }
                // q^{c r} = p^{c/2}: quarter degree 2c must be an integer.
                match ci {
                    Some(v) => deg4 += v,
                    None => tag = tag + ExpForm::r() * ExpForm::rational(c),
                }
            }
            Nome::T => {
                // q^{bk} = t^{b/2} q^{-2b}.
                match bi {
                    Some(v) => {
                        deg4 += v;
                        i -= 2 * v;
                    }
                    None => tag = tag + ExpForm::k() * ExpForm::rational(b),
                }
                if !c.is_zero() {
                    tag = tag + ExpForm::r() * ExpForm::rational(c);
                }
            }
        }
        SplitExp { deg4, i, j, tag }
    }

    /// Folds a q-monomial `q^{h/2} q^{k k2/2} q^{r r2/2}` into
    /// `(deg4, i, j)`.
    pub fn fold_half_units(self, h: i64, k2: i64, r2: i64) -> (i64, i64, i64) {
        match self {
            Nome::P => (r2, h, k2),
            Nome::T => {
                debug_assert!(r2 == 0, "r-dependence under the k+2 nome");
                (k2, h - 2 * k2, 0)
            }
        }
    }
}

/// The truncation context shared by all series computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ctx {
    pub nome: Nome,
    /// Window in powers of the exchange variable.
    pub window: i64,
    /// Order in the nome, quarter units.
    pub prec4: i64,
}

impl Ctx {
    pub fn new(nome: Nome, window: i64, p_order: i64) -> Self {
        Ctx { nome, window, prec4: 4 * p_order }
    }

    pub fn with_nome(self, nome: Nome) -> Self {
        Ctx { nome, ..self }
    }

    pub fn p_order(&self) -> Q {
        Q::new(self.prec4.into(), 4.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_under_p() {
        // r* + k/2 - 1 = r - k/2 - 1
        let e = ExpForm::rstar() + ExpForm::frac(1, 2) * ExpForm::k() - ExpForm::int(1);
        let s = Nome::P.split(&e);
        assert_eq!((s.deg4, s.i, s.j), (2, -2, -1));
        assert!(s.tag.is_zero());
    }

    #[test]
    fn split_under_t() {
        // q^{2(k+2)} = t
        let e = ExpForm::int(2) * (ExpForm::k() + ExpForm::int(2));
        let s = Nome::T.split(&e);
        assert_eq!((s.deg4, s.i, s.j), (4, 0, 0));
    }

    #[test]
    fn tags_survive() {
        let e = ExpForm::k() * ExpForm::inv_r() + ExpForm::frac(1, 3);
        let s = Nome::P.split(&e);
        assert_eq!((s.deg4, s.i, s.j), (0, 0, 0));
        assert_eq!(s.tag, e);
    }
}
