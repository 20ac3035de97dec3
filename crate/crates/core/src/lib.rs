//! Exact computations with m-primary ideals of `k[x,y]`: monomial staircases,
//! Hilbert series of the associated graded ring, lex-segment transforms,
//! contracted ideals, generic forms and Rees algebra presentations.

pub mod census;
pub mod contracted;
pub mod genforms;
pub mod hilbert;
pub mod lexseg;
pub mod poly;
pub mod rees;
pub mod staircase;

pub use hilbert::{HfComparison, HilbertError, HilbertSeries};
pub use lexseg::{Certainty, DepthClassifier, DepthConfig, DepthVerdict};
pub use staircase::{ColumnSequence, Monomial, MonomialGeneratorSet, StaircaseError};
