//! Finite posets with two-colorings that forbid large bichromatic antichains
//! and long alternating chains: verification, structural decomposition into
//! antichain-bounded blocks, trace models, and explicit definitions of the
//! coloring by quantifier-free formulas.

pub mod antichains;
pub mod chain_cover;
pub mod cli;
pub mod coloring;
pub mod decomposition;
pub mod definability;
pub mod enumerate;
pub mod error;
pub mod formula;
pub mod generate;
pub mod io;
pub mod matching;
pub mod poset;
pub mod set;
pub mod trace;

pub use chain_cover::{min_chain_cover, ChainCover};
pub use coloring::{ColoredPoset, VerificationReport};
pub use error::{Error, Result};
pub use poset::{Cut, Direction, IntervalKind, Poset};
pub use set::ElementSet;
