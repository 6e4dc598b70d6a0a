//! Magnus Z/2 expansion obstructions to 4-move triviality of classical and
//! welded links.
//!
//! Links come in as underpass codes ([`underpass`]). Longitude words and
//! Milnor's level-`q` maps `η_q` are built in [`milnor`], pushed through the
//! truncated Magnus expansion of [`magnus`], and the resulting commutator
//! coefficients are tested against the necessary conditions for
//! 4-triviality in [`obstruction`]. A verdict of
//! [`obstruction::Verdict::NoObstructionFound`] is never a proof that a link
//! is 4-trivial.


pub mod catalog;
pub mod exec;
pub mod freegroup;
pub mod magnus;
pub mod milnor;
pub mod obstruction;


pub mod underpass;

pub use exec::Exec;
pub use freegroup::{Letter, Meridian, Word};
pub use magnus::{expand_word, Monomial, TruncatedSeries};
pub use underpass::{ArcRef, Sign, UnderpassCode, UnderpassEntry};
