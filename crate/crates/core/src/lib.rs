//! Rook partition monoids `RP_n`: diagram arithmetic, generator words,
//! presentations checked by coset-style enumeration, constructive normal
//! forms, and the twisted semigroup algebra.

pub mod algebra;
pub mod congruence;
pub mod diagram;
mod dsu;
pub mod enumeration;
pub mod normal_form;
pub mod presentation;
pub mod report;
pub mod words;

pub use algebra::{AlgebraElement, AlgebraElementZ, Coefficient, DeltaPoly, DeltaPolyQ, DeltaPolyZ};
pub use diagram::{DiagramError, Equivalence, RookPartition, Vertex};
pub use presentation::{instantiate, Presentation, Preset};
pub use words::{evaluate, Alphabet, Token, Word};
