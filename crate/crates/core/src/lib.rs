//! Sign patterns of principal minors of real symmetric matrices.
//!
//! A sign pattern on `n` elements assigns `+` or `-` to every subset of
//! `{1, …, n}`. Subsets are bitmasks (`bit i` is element `i + 1`) and patterns
//! serialize in cardinality-then-lex order: `∅, 1, 2, 3, 12, 13, 23, 123`.

pub mod coloring;
pub mod components;
pub mod enumerate;
pub mod error;
pub mod exactalg;
pub mod group;
pub mod pattern;
pub mod reduce;
pub mod represent;
pub mod subset;

pub use error::{Error, Result};
pub use group::{GroupElement, Permutation};
pub use pattern::{Diamond, Sign, SignPattern};
pub use subset::{Order, Subset};
