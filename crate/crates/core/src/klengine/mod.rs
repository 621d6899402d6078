//! Kazhdan-Lusztig machinery: R- and KL polynomials, Deodhar parabolic polynomials,
//! and canonical bases of the parabolic Hecke modules behind block decomposition numbers.

mod block_kl;
mod classic;
mod group;
mod module;

pub use block_kl::{graded_decomposition_matrix, BlockKl};
pub use classic::KlTable;
pub use group::CoxeterGroup;
pub use module::{to_classic, ModuleKind, ParabolicModule};
