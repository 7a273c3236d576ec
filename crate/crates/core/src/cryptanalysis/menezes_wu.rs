//! Menezes–Wu: a matrix DLP with irreducible characteristic polynomial is a
//! DLP in `F_{p^d}`.
//!
//! `alpha = t` is a root of `chi_g` in `F = F_p[t]/chi_g`. If `h = g^m`, the
//! roots of `chi_h` in `F` are the conjugates of `alpha^m`. We extract one
//! root, walk its Frobenius orbit, solve `alpha^x = beta^(p^j)` with
//! Pohlig–Hellman and keep the `x` for which `g^x = h`.

use crate::cryptanalysis::extpoly::roots;
use crate::cryptanalysis::{pohlig_hellman, DlogAnswer, DlogInstance};
use crate::error::{Error, Result};
use crate::field::{factor_integer, is_irreducible, mult_order, ExtField, ExtFieldElem};
use crate::matrix::{char_poly, mat_pow_lg, MatrixFp};

pub fn menezes_wu_dlog(g: &MatrixFp, h: &MatrixFp) -> Result<DlogAnswer> {
    if g.modulus() != h.modulus() {
        return Err(Error::ModulusMismatch(
            g.modulus().value(),
            h.modulus().value(),
        ));
    }
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "g is {0}x{0}, h is {1}x{1}",
            g.dim(),
            h.dim()
        )));
    }
    let chi_g = char_poly(g);
    if !is_irreducible(&chi_g)? {
        return Err(Error::Reducible(format!(
            "characteristic polynomial {chi_g} of g is reducible"
        )));
    }
    let field = ExtField::new(chi_g)?;
    let alpha = field.generator();
    let ord_alpha = mult_order(&alpha, &factor_integer(field.unit_group_order()?)?)?;
    let order = factor_integer(ord_alpha)?;

    let chi_h: Vec<ExtFieldElem> = char_poly(h)
        .coeffs()
        .iter()
        .map(|&c| field.from_scalar(c))
        .collect();
    let beta = roots(&field, &chi_h)?.into_iter().next().ok_or_else(|| {
        Error::NoSolution("characteristic polynomial of h has no root in F_p[t]/chi_g".into())
    })?;
    for j in 0..field.degree() {
        let target = beta.frobenius(j);
        let inst = DlogInstance::new(alpha.clone(), target, order.clone());
        let answer = match pohlig_hellman(&inst) {
            Ok(a) => a,
            Err(Error::NoSolution(_)) => continue,
            Err(e) => return Err(e),
        };
        if mat_pow_lg(g, &answer.residue.into())? == *h {
            return Ok(answer);
        }
    }
    Err(Error::NoSolution("h is not a power of g".into()))
}
