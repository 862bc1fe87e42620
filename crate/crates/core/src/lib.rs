//! Weyl group combinatorics of G-stable pieces and their twisted analogues.
//!
//! Everything is exact integer arithmetic on finite root systems: elements of
//! the Weyl group are signed permutations of the positive roots, subsets of
//! simple indices are bitsets.

pub mod cli;
pub mod error;
pub mod oracle;
pub mod parabolic;
pub mod piece_maps;
pub mod pieces;
pub mod report;
pub mod rootsys;
pub mod subset;
pub mod twisted;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{build_root_system, CartanSpec, RootAutomorphism, RootSystem};
pub use subset::{IndexSubset, Word};
pub use weyl::WeylElement;
