//! Finite-group computation engine for the self-normalizing-subgroup property.
//!
//! A finite group `G` has the property when every non-nilpotent subgroup
//! equals its own normalizer. The crate decides this two independent ways:
//! by brute force over the subgroup lattice ([`classx::bruteforce_verdict`])
//! and structurally, through a classification of the soluble and perfect
//! cases ([`classx::structural_verdict`]). The two routes are meant to be
//! cross-checked against each other; disagreement is a bug, not a tie.
//!
//! The crate is `no_std` + `alloc`: all IO, file formats and the CLI live in
//! the companion `selfnorm-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod classx;
pub mod element;
pub mod gf;
pub mod group;
pub mod lattice;
pub mod rng;
pub mod star;
pub mod structure;

pub use classx::Verdict;
pub use element::ConcreteElement;
pub use gf::GaloisField;
pub use group::{FiniteGroup, SubgroupHandle};
pub use lattice::SubgroupLattice;
pub use star::Splitting;
