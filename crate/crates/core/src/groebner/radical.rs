//! Radical membership by the Rabinowitsch trick.

use super::{ideal_basis, GbLimits};
use crate::error::Result;
use crate::ring::{Poly, Ring};

fn fresh_name(ring: &Ring) -> String {
    let mut name = "_t".to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Whether `f` lies in the radical of the ideal generated by `j`: decided by
/// `1 ∈ (J, 1 - t f)` in `R[t]`.
pub fn radical_membership(ring: &Ring, f: &Poly, j: &[Poly], limits: &GbLimits) -> Result<bool> {
    let name = fresh_name(ring);
    let big = ring.extend(&[name.as_str()])?;
    let t = big.var(ring.nvars());
    let mut gens: Vec<Poly> = j.iter().map(|g| ring.embed_into(g, &big)).collect();
    let tf = big.mul(&t, &ring.embed_into(f, &big));
    gens.push(big.sub(&big.one(), &tf));
    Ok(ideal_basis(&big, &gens, limits)?.is_unit_ideal())
}

/// Whether every generator of `a` lies in the radical of `b`.
pub fn radical_contains(ring: &Ring, b: &[Poly], a: &[Poly], limits: &GbLimits) -> Result<bool> {
    for f in a {
        if !radical_membership(ring, f, b, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether two ideals have the same radical (equivalently, the same zero
/// set over the algebraic closure).
pub fn radicals_equal(ring: &Ring, a: &[Poly], b: &[Poly], limits: &GbLimits) -> Result<bool> {
    Ok(radical_contains(ring, b, a, limits)? && radical_contains(ring, a, b, limits)?)
}
