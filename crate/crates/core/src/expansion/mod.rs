//! Digit maps `T_β`, `T_{-β}`, expansions, admissibility and base classification.

mod admissible;
mod base;
mod word;

pub use admissible::{IncrementalChecker, SuffixBounds};
pub use base::{Base, BaseClass, BaseTag, PositionedExpansion, DEFAULT_CAP};
pub use word::{alt_compare, format_digits, lex_compare, Digit, EventuallyPeriodicWord, Tail, WordOrder};
