//! Exact truncated power series and polynomial arithmetic.

mod bivariate;
mod poly;
mod power;

pub use bivariate::BiSeries;
pub use poly::Poly;
pub use power::{expm1, PolySeries, DEFAULT_ORDER};

pub(crate) use power::weighted_outer;
