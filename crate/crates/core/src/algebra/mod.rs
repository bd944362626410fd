//! Finite-field and polynomial arithmetic over GF(2^m).

mod bipoly;
mod field;
pub mod linalg;
mod poly;
mod rational;
mod series;

pub use bipoly::{binom_mod2, BiPoly};
pub use field::{clmul_reduce, Field, Gf};
pub use poly::{lagrange_interpolate, Degree, Poly};
pub use rational::{RationalFn, RationalValue};
pub use series::Series;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not a perfect square")]
    NotASquare,
    #[error("division is not exact")]
    NotDivisible,
    #[error("unsupported extension degree {0} (need 2..=16)")]
    UnsupportedDegree(u32),
    #[error("{poly:#x} is not a primitive polynomial of degree {m}")]
    NotPrimitive { m: u32, poly: u32 },
}
