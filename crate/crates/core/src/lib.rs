//! Exact arithmetic for full lattices in finite-dimensional commutative
//! Q-algebras.

pub mod algebra;
pub mod classify;
pub mod arith;
pub mod budget;
pub mod lattice;
pub mod latmac;
pub mod localize;
pub mod semigroup;
pub mod error;
pub mod exactla;
pub mod io;

pub use budget::Budget;
pub use error::{Error, Result};
