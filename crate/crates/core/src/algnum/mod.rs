//! Exact arithmetic in `Q(β)` for a designated real root `β > 1`.

mod element;
mod field;
pub mod poly;

pub use element::FieldElement;
pub use field::NumberField;
pub use poly::IntPolynomial;
