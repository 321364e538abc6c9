//! Exact symbolic calculus for the Rodrigues construction.

pub mod expr;
pub mod extract;
pub mod param;
pub mod poly;

pub use expr::{apply_d_power, d_operator, Slot, SymExpr, SymTerm};
pub use extract::{cayley_check, cayley_polynomial, extract_bracket_polynomial, rodrigues, BracketPolynomial};
pub use param::ParamPoly;
pub use poly::{Coef, Monomial, Poly};
