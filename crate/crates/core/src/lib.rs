pub mod algnum;
pub mod confluent;
pub mod error;
pub mod expansion;
pub mod integersets;
pub mod spectrum;
pub mod words;

pub use algnum::{FieldElement, IntPolynomial, NumberField};
pub use error::{Error, Result};
pub use expansion::{Base, BaseClass, BaseTag, Digit, EventuallyPeriodicWord, PositionedExpansion, Tail};
