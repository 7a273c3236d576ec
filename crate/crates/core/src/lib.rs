//! The MOR public-key cryptosystem over elementary-abelian groups `F_p^d` and
//! extra-special `p`-groups, with the field arithmetic it rests on, the known
//! structural attacks, and a benchmark harness against field ElGamal.
//!
//! The construction is the textbook one and is not suitable for protecting
//! real data.

pub mod aut;
pub mod cli;
pub mod cryptanalysis;
pub mod error;
pub mod field;
pub mod matrix;
pub mod pgroup;
pub mod protocol;
pub mod rng;

pub use error::{Error, Result};
