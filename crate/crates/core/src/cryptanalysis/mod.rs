//! Discrete-log solvers and structural attacks on MOR keys.

mod central;
mod extpoly;
mod generic;
mod menezes_wu;
mod unipotent;

use std::fmt;

pub use central::central_aut_attack;
pub use generic::{bsgs, pohlig_hellman, BSGS_CAP};
pub use menezes_wu::menezes_wu_dlog;
pub use unipotent::unipotent_dlog;

use crate::field::{CyclicElement, FactoredInteger};

/// Find `m` with `g^m = h`, where `g^order = 1`.
#[derive(Debug, Clone)]
pub struct DlogInstance<G: CyclicElement> {
    pub g: G,
    pub h: G,
    pub order: FactoredInteger,
}

impl<G: CyclicElement> DlogInstance<G> {
    pub fn new(g: G, h: G, order: FactoredInteger) -> Self {
        Self { g, h, order }
    }
}

/// The certificate `m ≡ residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DlogAnswer {
    pub residue: u64,
    pub modulus: u64,
}

impl DlogAnswer {
    /// Whether `m` satisfies the congruence.
    pub fn admits(&self, m: u64) -> bool {
        m % self.modulus == self.residue
    }
}

impl fmt::Display for DlogAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m ≡ {} (mod {})", self.residue, self.modulus)
    }
}
