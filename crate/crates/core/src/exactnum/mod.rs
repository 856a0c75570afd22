//! Exact arithmetic over cyclotomic fields and rational functions of `q`.

pub mod cyclo;
pub mod factored;
pub mod field;
pub mod monomial;
pub mod poly;
pub mod qratfun;
pub mod uratfun;

pub use cyclo::{cyclotomic_poly, euler_phi, parse_rational, rational_to_string, CycloNumber, CycloRecord};
pub use factored::Factored;
pub use field::Field;
pub use monomial::{reduce_turns, QMonomial};
pub use poly::Poly;
pub use qratfun::{QRatFun, RatFunRecord};
pub use uratfun::{AtUOne, UProduct, URatFun};
