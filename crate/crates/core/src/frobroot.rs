//! Bracket powers and Frobenius roots of submodules of free modules.
//!
//! `F^e_* R` is free over `R` on the monomials `x^b` with every exponent
//! below `p^e`, so each `v` in `R^β` has a unique expansion
//! `v = Σ_b u_b^[p^e] x^b`. The root `I_e(Rv)` is generated by the `u_b`, and
//! `I_e` is additive over sums of submodules, so the root of a finitely
//! generated submodule is computed generator by generator.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::{Monomial, Poly, PolyMatrix, Ring, Term};

pub use crate::ring::FreeVector;

/// Finite generating set of a submodule of R^rank. Zero generators are
/// discarded on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleGens {
    rank: usize,
    gens: Vec<FreeVector>,
    degree_bound: u32,
}

impl SubmoduleGens {
    pub fn new(rank: usize, gens: Vec<FreeVector>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.rank() != rank) {
            return Err(Error::Shape(format!(
                "generator of rank {} in a submodule of R^{rank}",
                g.rank()
            )));
        }
        let gens: Vec<FreeVector> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let degree_bound = gens.iter().filter_map(FreeVector::degree).max().unwrap_or(0);
        Ok(SubmoduleGens {
            rank,
            gens,
            degree_bound,
        })
    }

    pub fn zero(rank: usize) -> Self {
        SubmoduleGens {
            rank,
            gens: Vec::new(),
            degree_bound: 0,
        }
    }

    /// The whole free module, generated by the unit vectors.
    pub fn free(ring: &Ring, rank: usize) -> Self {
        SubmoduleGens {
            rank,
            gens: (0..rank).map(|i| FreeVector::unit(ring, rank, i)).collect(),
            degree_bound: 0,
        }
    }

    /// Column module of a matrix.
    pub fn image(m: &PolyMatrix) -> Self {
        Self::new(m.rows(), m.columns()).expect("columns have the row count as rank")
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn gens(&self) -> &[FreeVector] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<FreeVector> {
        self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Largest total degree of a coordinate of a generator (0 when empty).
    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Generators of `self + other`.
    pub fn sum(&self, other: &SubmoduleGens) -> Result<SubmoduleGens> {
        if self.rank != other.rank {
            return Err(Error::Shape("sum of submodules of different ranks".into()));
        }
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        SubmoduleGens::new(self.rank, gens)
    }

    /// Image under a matrix with `rank` columns.
    pub fn apply(&self, m: &PolyMatrix, ring: &Ring) -> Result<SubmoduleGens> {
        if m.cols() != self.rank {
            return Err(Error::Shape(format!(
                "{}x{} matrix applied to a submodule of R^{}",
                m.rows(),
                m.cols(),
                self.rank
            )));
        }
        SubmoduleGens::new(m.rows(), self.gens.iter().map(|g| m.mul_vec(g, ring)).collect())
    }

    pub fn to_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(self.rank, &self.gens)
    }
}

/// A basis element `x^b` of `F^e_* R` (all exponents below `p^e`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrobBasisIndex {
    pub e: u32,
    pub basis: Monomial,
}

impl FrobBasisIndex {
    pub fn is_valid(&self, p: u32) -> bool {
        let q = p.pow(self.e);
        self.basis.exps().iter().all(|&a| a < q)
    }
}

pub fn bracket_power_poly(f: &Poly, e: u32, ring: &Ring) -> Poly {
    ring.frobenius(f, e)
}

pub fn bracket_power_matrix(m: &PolyMatrix, e: u32, ring: &Ring) -> PolyMatrix {
    m.frobenius(e, ring)
}

/// Generators `{v^[p^e]}`; they generate the bracket power of the submodule.
pub fn bracket_power(v: &SubmoduleGens, e: u32, ring: &Ring) -> SubmoduleGens {
    SubmoduleGens {
        rank: v.rank,
        gens: v.gens.iter().map(|g| g.frobenius(e, ring)).collect(),
        degree_bound: v.degree_bound * ring.p().pow(e),
    }
}

fn frob_q(ring: &Ring, e: u32) -> Result<u32> {
    if e == 0 {
        return Err(Error::InvalidArgument("Frobenius level e must be >= 1".into()));
    }
    ring.p()
        .checked_pow(e)
        .ok_or_else(|| Error::InvalidArgument(format!("p^{e} overflows")))
}

/// The unique `u_b` with `v = Σ_b u_b^[p^e] x^b`, nonzero ones only, in
/// decreasing order of the basis monomial.
pub fn frob_decompose(v: &FreeVector, e: u32, ring: &Ring) -> Result<Vec<(FrobBasisIndex, FreeVector)>> {
    let q = frob_q(ring, e)?;
    let rank = v.rank();
    let mut slot: HashMap<Monomial, usize> = HashMap::new();
    let mut parts: Vec<(Monomial, Vec<Vec<Term>>)> = Vec::new();
    for (i, f) in v.coords().iter().enumerate() {
        for t in f.terms() {
            let (quot, rem) = t.mono.split(q);
            let k = *slot.entry(rem).or_insert_with(|| {
                parts.push((rem, vec![Vec::new(); rank]));
                parts.len() - 1
            });
            // Terms of one residue class arrive in decreasing order of their
            // quotients, since the order is compatible with x^a -> x^(qa).
            parts[k].1[i].push(Term {
                mono: quot,
                coef: t.coef,
            });
        }
    }
    let order = ring.order();
    parts.sort_by(|a, b| order.cmp(&b.0, &a.0));
    Ok(parts
        .into_iter()
        .map(|(b, coords)| {
            let coords = coords
                .into_iter()
                .map(|terms| {
                    let f = Poly::from_sorted_unchecked(terms);
                    debug_assert!(ring.is_normalized(&f));
                    f
                })
                .collect();
            (FrobBasisIndex { e, basis: b }, FreeVector::from_coords(coords))
        })
        .collect())
}

/// `Σ_b u_b^[p^e] x^b`, inverse of [`frob_decompose`].
pub fn frob_reconstruct(parts: &[(FrobBasisIndex, FreeVector)], rank: usize, ring: &Ring) -> FreeVector {
    let mut acc = FreeVector::zero(rank);
    for (idx, u) in parts {
        let lifted = u.frobenius(idx.e, ring).mul_term(1, &idx.basis, ring);
        acc = acc.add(&lifted, ring);
    }
    acc
}

/// Generators of `I_e(V)`, the smallest submodule `L` with `V ⊆ L^[p^e]`.
pub fn frob_root(v: &SubmoduleGens, e: u32, ring: &Ring) -> Result<SubmoduleGens> {
    frob_q(ring, e)?;
    let mut gens = Vec::new();
    for g in &v.gens {
        gens.extend(frob_decompose(g, e, ring)?.into_iter().map(|(_, u)| u));
    }
    SubmoduleGens::new(v.rank, gens)
}
