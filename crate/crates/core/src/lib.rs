//! Exact commutative algebra for trivial ring extensions `A ∝ E`.
//!
//! Finite rings are stored as an additive presentation `Z/d_1 × … × Z/d_k`
//! with multiplication structure constants; every subgroup (ideal, submodule,
//! kernel) is kept as a canonical Hermite normal form, so equality tests are
//! exact and cheap. The two infinite rings `Z ∝ Q` and `Z ×' ⊕F_2` live in
//! [`symtriv`] with closed-form normal forms.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod budget;
pub mod error;
pub mod finmod;
pub mod finring;
pub mod group;
pub mod idealops;
pub mod lattice;
pub mod resolve;
pub mod symtriv;

pub use error::{Error, Result};
pub use finmod::{FiniteModule, Module, ModuleMap, Submodule, TrivialExtension};
pub use finring::{FiniteRing, LocalDecomposition, Ring, RingElement};
pub use group::{AbelianGroup, Subgroup};
pub use idealops::{Ideal, MinimalGenerators};
