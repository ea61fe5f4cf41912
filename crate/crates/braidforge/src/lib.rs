//! Symbolic computation for virtual singular braid groups and their pure subgroups.

pub mod braid_words;
pub mod decomposition;
pub mod equivalence;
pub mod error;
pub mod fusing_algebra;
pub mod schreier_rewriter;
pub mod symmetric_group;

pub use braid_words::{parse_word, BraidWord, Kind, Letter};
pub use decomposition::{normal_form, parse_normal_form, ConjugatedLetter, Layer, LayeredNormalForm};
pub use equivalence::{decide, Bounds, OracleVerdict, Status};
pub use error::{Error, Result, WordError};
pub use fusing_algebra::{parse_fusing_word, Family, FusingLetter, FusingWord};
pub use schreier_rewriter::{derive_pure_relations, rewrite_r};
pub use symmetric_group::{permutation_of, Permutation, SchreierWord};
pub mod suite;
