//! Syzygies, lifting and preimages through one mechanism: a Gröbner basis of
//! the augmented vectors `(g_i | e_i)` in R^(rank + k), with the original
//! coordinates ahead of the tracking block in the position-over-term order.
//!
//! Every element `(g | h)` of the augmented module satisfies `g = Σ h_i g_i`.
//! Elements whose leading term lies in the tracking block have `g = 0`, and
//! their tracking parts generate the syzygy module.

use super::buchberger::{GbBuilder, GroebnerBasis};
use super::GbLimits;
use crate::error::{Error, Result};
use crate::frobroot::SubmoduleGens;
use crate::ring::{FreeVector, Poly, PolyMatrix, Ring};

/// Gröbner basis of `{(g_i | e_i)}` for generators `g_1..g_k` of R^rank.
pub struct AugmentedGb {
    rank: usize,
    ngens: usize,
    gb: GroebnerBasis,
}

impl AugmentedGb {
    pub fn new(ring: &Ring, rank: usize, gens: &[FreeVector], limits: &GbLimits) -> Result<Self> {
        let k = gens.len();
        let mut b = GbBuilder::new(ring, rank + k, limits);
        for (i, g) in gens.iter().enumerate() {
            if g.rank() != rank {
                return Err(Error::Shape(format!("generator of rank {} in R^{rank}", g.rank())));
            }
            b.add(&g.concat(&FreeVector::unit(ring, k, i)))?;
        }
        b.complete()?;
        Ok(AugmentedGb {
            rank,
            ngens: k,
            gb: b.finish(),
        })
    }

    pub fn from_matrix(ring: &Ring, m: &PolyMatrix, limits: &GbLimits) -> Result<Self> {
        Self::new(ring, m.rows(), &m.columns(), limits)
    }

    /// Generators of the syzygy module, as vectors in R^k.
    pub fn syzygies(&self) -> Vec<FreeVector> {
        self.gb
            .elems()
            .iter()
            .filter(|g| matches!(g.lead(), Some((pos, _)) if pos >= self.rank))
            .map(|g| g.slice(self.rank..self.rank + self.ngens))
            .collect()
    }

    /// Some `x` with `Σ x_i g_i = t`, or `None` if `t` is not in the module.
    pub fn lift(&self, t: &FreeVector) -> Option<FreeVector> {
        assert_eq!(t.rank(), self.rank);
        let ring = self.gb.ring();
        let r = self.gb.normal_form(&t.concat(&FreeVector::zero(self.ngens)));
        if !r.slice(0..self.rank).is_zero() {
            return None;
        }
        Some(r.slice(self.rank..self.rank + self.ngens).neg(ring))
    }

    /// Whether `t` lies in the module generated by the `g_i`.
    pub fn contains(&self, t: &FreeVector) -> bool {
        let r = self.gb.normal_form(&t.concat(&FreeVector::zero(self.ngens)));
        r.slice(0..self.rank).is_zero()
    }
}

/// Generating set of the first syzygy module of `gens` (vectors in R^k with
/// `Σ c_i gens_i = 0`).
pub fn syzygies(ring: &Ring, rank: usize, gens: &[FreeVector], limits: &GbLimits) -> Result<Vec<FreeVector>> {
    Ok(AugmentedGb::new(ring, rank, gens, limits)?.syzygies())
}

/// Greedy subset of `candidates` generating the same module as
/// `fixed + candidates`, modulo `fixed`: candidates are scanned by increasing
/// degree (ties by input order) and kept only when they are not already in
/// the module generated by `fixed` and the candidates kept so far. Returned
/// in input order.
pub fn minimize_generators(
    ring: &Ring,
    rank: usize,
    fixed: &[FreeVector],
    candidates: &[FreeVector],
    limits: &GbLimits,
) -> Result<Vec<FreeVector>> {
    let mut b = GbBuilder::new(ring, rank, limits);
    for f in fixed {
        b.add(f)?;
    }
    b.complete()?;
    let mut idx: Vec<usize> = (0..candidates.len()).collect();
    idx.sort_by_key(|&i| (candidates[i].degree().unwrap_or(0), candidates[i].num_terms(), i));
    let mut kept = Vec::new();
    for i in idx {
        if b.add(&candidates[i])? {
            b.complete()?;
            kept.push(i);
        }
    }
    kept.sort_unstable();
    Ok(kept.into_iter().map(|i| candidates[i].clone()).collect())
}

/// Presentation of `(L + Im A) / Im A` as the cokernel of `W`: the columns of
/// `W` are the first-k coordinates of the syzygies of
/// `(l_1, .., l_k, columns of A)`.
pub fn presentation_matrix(
    ring: &Ring,
    lgens: &[FreeVector],
    a: &PolyMatrix,
    limits: &GbLimits,
) -> Result<PolyMatrix> {
    let k = lgens.len();
    if k == 0 {
        return Ok(PolyMatrix::zeros(0, 0));
    }
    let rank = a.rows();
    let mut gens = lgens.to_vec();
    gens.extend(a.columns());
    let syz = syzygies(ring, rank, &gens, limits)?;
    let cols: Vec<FreeVector> = syz
        .iter()
        .map(|s| s.slice(0..k))
        .filter(|c| !c.is_zero())
        .collect();
    Ok(PolyMatrix::from_columns(k, &cols))
}

/// `{v in R^cols : M v ∈ N}` for an `rows x cols` matrix `M` and a submodule
/// `N` of R^rows.
pub fn preimage(ring: &Ring, m: &PolyMatrix, target: &SubmoduleGens, limits: &GbLimits) -> Result<SubmoduleGens> {
    if target.rank() != m.rows() {
        return Err(Error::Shape(format!(
            "preimage of a submodule of R^{} under a {}x{} matrix",
            target.rank(),
            m.rows(),
            m.cols()
        )));
    }
    let n = m.cols();
    let mut gens = m.columns();
    gens.extend(target.gens().iter().cloned());
    let syz = syzygies(ring, m.rows(), &gens, limits)?;
    SubmoduleGens::new(n, syz.iter().map(|s| s.slice(0..n)).collect())
}

/// `(N :_{R^β} g) = {v : g v ∈ N}`.
pub fn colon_element(ring: &Ring, target: &SubmoduleGens, g: &Poly, limits: &GbLimits) -> Result<SubmoduleGens> {
    let m = PolyMatrix::identity(ring, target.rank()).scale_poly(g, ring);
    preimage(ring, &m, target, limits)
}

/// Generators of the ideal intersection `I ∩ J`.
pub fn ideal_intersection(ring: &Ring, i: &[Poly], j: &[Poly], limits: &GbLimits) -> Result<Vec<Poly>> {
    let mut gens: Vec<FreeVector> = i.iter().map(|f| FreeVector::from_coords(vec![f.clone()])).collect();
    gens.extend(j.iter().map(|f| FreeVector::from_coords(vec![f.clone()])));
    let syz = syzygies(ring, 1, &gens, limits)?;
    let mut out = Vec::new();
    for s in &syz {
        let f = s.slice(0..i.len()).dot(i, ring);
        if !f.is_zero() {
            out.push(f);
        }
    }
    Ok(out)
}

/// Whether two submodules of R^rank are equal.
pub fn modules_equal(ring: &Ring, a: &SubmoduleGens, b: &SubmoduleGens, limits: &GbLimits) -> Result<bool> {
    Ok(module_contains(ring, a, b, limits)? && module_contains(ring, b, a, limits)?)
}

/// Whether `inner ⊆ outer`.
pub fn module_contains(ring: &Ring, outer: &SubmoduleGens, inner: &SubmoduleGens, limits: &GbLimits) -> Result<bool> {
    if outer.rank() != inner.rank() {
        return Err(Error::Shape("containment between different ranks".into()));
    }
    let gb = super::groebner_basis(ring, outer.rank(), outer.gens(), limits)?;
    Ok(inner.gens().iter().all(|v| gb.contains(v)))
}
