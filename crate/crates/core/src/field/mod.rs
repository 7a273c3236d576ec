//! Exact arithmetic in `F_p`, `F_p[x]` and `F_p[t]/m(t)`, with integer
//! factoring and multiplicative orders.

pub mod ext;
pub mod factor;
pub mod order;
pub mod poly;
pub mod prime;

pub use ext::{ExtField, ExtFieldElem};
pub use factor::{factor_integer, is_prime, FactoredInteger};
pub use order::{mult_order, CyclicElement};
pub use poly::{is_irreducible, random_irreducible, Poly};
pub use prime::{FpElem, PrimeModulus};
