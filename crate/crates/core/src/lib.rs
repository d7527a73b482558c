//! Exact computation with partial isomorphisms of the Cantor space.
//!
//! Arrows are finite joins of prefix rewrites between tree-shaped objects
//! ([`arrow`]). On top of them sit self-similar structures ([`selfsim`]),
//! their 2×2 matrix representations ([`matrix`]) and a decision procedure
//! for commutativity of diagrams of canonical arrows ([`coherence`]).
//! [`finite`] is a brute-force model on finite sets used as an oracle.

pub mod arrow;
pub mod canonical;
pub mod cli;
pub mod coherence;
pub mod error;
pub mod finite;
pub mod matrix;
pub mod random;
pub mod selfsim;
pub mod sexpr;
pub mod tree;
pub mod word;

pub use arrow::{Applied, BasicTerm, Cylinder, PrefixArrow};
pub use error::{Error, Result};
pub use matrix::{Matrix2, P2Embedding};
pub use selfsim::SelfSimilar;
pub use tree::Tree;
pub use word::{Bits, LeafPath};
