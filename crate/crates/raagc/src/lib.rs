//! Computational toolkit for commutator subgroups of right-angled Artin groups
//! and of graph products of cyclic groups.
//!
//! A right-angled Artin group `RA_K` is defined by a flag simplicial complex
//! `K` on vertices `1..=m`: one generator per vertex, with commutation
//! relations for edges. This crate works with the kernel `RA'_K` of the
//! abelianization map and provides:
//!
//! * [`combinatorics`]: simplicial complexes, clique complexes, restrictions,
//!   connected components, flag and chordality tests;
//! * [`freegroup`]: exact free-group words (syllable encoding, arbitrary
//!   precision exponents), commutators, and the eight-factor swap identity;
//! * [`generators`]: enumeration of the minimal generating set of `RA'_K` as
//!   iterated-commutator descriptors, plus the counting polynomials J, W, P;
//! * [`topology`]: the grid graph covering model, its canonical spanning tree
//!   and loop words, the truncated cube complex, and exact integer homology
//!   (rank and torsion of H1) used as the independent minimality oracle;
//! * [`rewriting`]: constructive expression of commutator-subgroup elements
//!   in the descriptor basis, complete for two and three generators;
//! * [`graphproduct`]: the same enumeration for graph products with cyclic
//!   vertex groups, and the chordality criterion for freeness of the kernel;
//! * [`input`]: the JSON and word-syntax parsers shared by the CLI and the
//!   fuzz targets;
//! * [`verification`]: the seeded self-check suite behind `raagc verify`;
//! * [`cli`]: the `raagc` command-line front end.
//!
//! Everything is exact: no floating point participates in any rank, torsion,
//! or counting path. All enumeration orders are deterministic and all
//! randomized suites are seeded, so output is byte-stable for fixed inputs.

pub mod cli;
pub mod combinatorics;
pub mod freegroup;
pub mod generators;
pub mod graphproduct;
pub mod input;
pub mod matrix;
pub mod rewriting;
pub mod rng;
pub mod topology;
pub mod verification;

/// Crate-wide error type.
///
/// `Validation` covers rejected inputs (exit code 1 in the CLI); `Internal`
/// covers failed self-checks and broken invariants (exit code 2).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("validation: {0}")]
    Validation(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
