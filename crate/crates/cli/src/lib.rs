//! IO, file formats, corpora, exhaustive enumeration and the verification
//! experiment for the circular-coloring laboratory. The algorithmic core
//! lives in `girthlab-core`; this crate is its std-side companion.

pub mod corpus;
pub mod enumerate;
pub mod experiment;
pub mod format;
pub mod tablefile;
