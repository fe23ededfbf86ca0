//! Differential operators in `D_n[s]` acting on `R_n[Q^{-1}, s] Q^s`.

mod checks;
mod operator;
mod twisted;

pub use checks::{
    certify_functional_equation, conjugated_pij, default_caps, delta_production_check, euler_identity_check,
    leykin_spot_check, pij_operator, weighted_euler_check,
};
pub use operator::WeylOperator;
pub use twisted::TwistedElement;
