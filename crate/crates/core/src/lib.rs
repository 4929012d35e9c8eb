//! Quivers with markings in complex matrix groups.
//!
//! The crate is `no_std` (it needs `alloc`) and is organized bottom-up:
//!
//! * [`quiver`], [`word`], [`topology`], [`group`]: combinatorial data, Betti
//!   numbers, end classification, strongly connected components and
//!   fundamental cycles.
//! * [`ops`]: pinch, clip, collapse and reversal rewrites, and the full
//!   reduction of a connected quiver to a one-vertex rose with a replayable
//!   [`ops::ReductionTrace`].
//! * [`matrix`], [`matgroup`]: dense complex matrices, Hermitian
//!   eigendecomposition, polar decomposition and group sampling.
//! * [`representation`]: markings, the gauge action, word evaluation, trace
//!   invariants and the collapse pushforward.
//! * [`retract`], [`kempf_ness`]: the polar retraction onto the compact
//!   form, the moment matrices and the norm-minimizing gauge flow.
//! * [`additive`]: additive representations, degeneration witnesses and
//!   closed-orbit certificates.
//! * [`toric`], [`lattice`]: weighted torus actions and exact integer
//!   kernels giving invariant Laurent monomials.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod additive;
pub mod error;
pub mod gen;
pub mod group;
pub mod kempf_ness;
pub mod lattice;
pub mod matgroup;
pub mod matrix;
pub mod ops;
pub mod quiver;
pub mod representation;
pub mod retract;
pub mod topology;
pub mod toric;
pub mod word;

pub use error::{Error, Result};
pub use group::{Family, GroupSpec};
pub use matrix::CMatrix;
pub use quiver::{Arrow, Quiver};
pub use representation::{GaugeElement, Representation};
pub use word::{Letter, RelationSet, Word};

/// Default tolerance for group membership tests.
pub const TOL_MEMBERSHIP: f64 = 1e-9;
/// Default tolerance for matrix equalities.
pub const TOL_EQ: f64 = 1e-8;
