//! Finite T0 spaces as posets: beat points and cores, automorphism groups and
//! groups of self-homotopy equivalences, order-complex homology, and builders
//! for spaces realizing prescribed groups.

#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod error;
pub mod group;
pub mod homotopy;
pub mod invariants;
pub mod limits;
pub mod poset;
pub mod search;
pub mod symmetry;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom};
pub use limits::Limits;
pub use poset::{DegreePair, Poset, PosetBuilder};
