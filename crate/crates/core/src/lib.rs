//! Canonical forms, fully commutative elements and their packet
//! decomposition for the complex reflection groups `G(d, r, n)`.
//!
//! Everything is computed inside `G(d, 1, n)`:
//!
//! * [`words`] holds words, the text syntax and the prefix/suffix canonical form;
//! * [`group`] is the colored-permutation model and the Cayley-graph oracle;
//! * [`normalize`] rewrites words into canonical form;
//! * [`fc`] decides full commutativity;
//! * [`packets`] groups fully commutative elements into collections and
//!   packets and evaluates the Catalan-triangle closed forms;
//! * [`embed`] realises `G(d, r, n)` inside `G(d, 1, n)`.

pub mod embed;
pub mod error;
pub mod fc;
pub mod group;
pub mod normalize;
pub mod packets;
pub mod params;
pub mod words;

pub use error::{Error, Result};
pub use group::{eval, CayleyIndex, ColoredPermutation};
pub use normalize::normalize;
pub use params::GroupParams;
pub use words::{parse_word, CanonicalForm, SuffixFactor, Word};
