//! Exact truncated series arithmetic.

pub mod coeff;
pub mod expform;
pub mod lpoly;
pub mod nome;
pub mod pseries;
pub mod special;
pub mod xlaurent;

pub use coeff::Coeff;
pub use expform::ExpForm;
pub use lpoly::LPoly;
pub use nome::{Ctx, Nome};
pub use pseries::{PSeries, EXACT};
pub use xlaurent::{Comparison, XLaurent};

pub type Q = num_rational::BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}
