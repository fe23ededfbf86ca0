pub mod algebra;
pub mod arrangement;
pub mod bfunction;
pub mod error;
pub mod groebner;
pub mod length;
pub mod milnor;
pub mod weyl;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/arrangements.md")]
    mod arrangements {}
    #[doc = include_str!("../../../book/src/bernstein-sato.md")]
    mod bernstein_sato {}
    #[doc = include_str!("../../../book/src/milnor-fiber.md")]
    mod milnor_fiber {}
    #[doc = include_str!("../../../book/src/differential-operators.md")]
    mod differential_operators {}
    #[doc = include_str!("../../../book/src/holonomic-length.md")]
    mod holonomic_length {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
