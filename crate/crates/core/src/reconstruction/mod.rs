//! Automorphisms of cut complexes and the point maps that induce them.

mod aut;
mod geometric;

pub use aut::*;
pub use geometric::*;
