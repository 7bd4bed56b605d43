//! Exact arithmetic for the inverse monoid of monotone injective partial
//! selfmaps of `L_n ×_lex Z` with cofinite domain and range.
//!
//! Every operation works on finite canonical data and is generic over a
//! signed machine integer. Arithmetic is checked: overflow is reported as
//! [`Error::Overflow`] rather than wrapping.

mod scalar;

pub mod element;
pub mod automorphism;
pub mod congruence;
pub mod error;
pub mod generators;
pub mod map;
pub mod oracle;
pub mod random;
pub mod solver;
pub mod structure;
pub mod suite;
pub mod text;

pub use element::{embed_factor, Element, LexPoint};
pub use error::{Error, Result, Violation};
pub use map::{CofiniteMonotoneMap, EventualOffsets};
pub use scalar::{from_i64, Int};

pub type Map32 = CofiniteMonotoneMap<i32>;
pub type Map64 = CofiniteMonotoneMap<i64>;
pub type Map128 = CofiniteMonotoneMap<i128>;
pub type Element32 = Element<i32>;
pub type Element64 = Element<i64>;
pub type Element128 = Element<i128>;
