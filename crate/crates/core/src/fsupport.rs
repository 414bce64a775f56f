//! Support of an F-finite F-module given by a generating morphism.
//!
//! Starting from `L_0 = R^β`, the iteration `L_{j+1} = I_1(U L_j)` descends
//! to a fixed point `L`, and the module is supported exactly where
//! `(L + Im A) / Im A` is. The iterates are compared as `F_p`-spans of
//! their generators: `v -> u_b(v)` is `F_p`-linear, so the span of the
//! generators of `I_1(U L_j)` depends only on the span of the generators
//! of `L_j`, and equal spans give a genuine fixed point. All generators
//! live in the finite-dimensional space of vectors of degree at most
//! `⌈δ/(p-1)⌉`, `δ` the largest degree of an entry of `U`, so no Gröbner
//! basis is needed until the final presentation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::frobroot::{frob_root, SubmoduleGens};
use crate::groebner::{
    fitting_ideal, groebner_basis, ideal_basis, minimize_generators, presentation_matrix, GbLimits,
};
use crate::ring::{FreeVector, Monomial, Poly, PolyMatrix, Ring};

/// A presentation `R^α -A-> R^β -> M -> 0` together with a square `U` such
/// that multiplication by `U` is the generating morphism
/// `Coker A -> Coker A^[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingMorphism {
    ring: Ring,
    a: PolyMatrix,
    u: PolyMatrix,
}

impl GeneratingMorphism {
    pub fn new(ring: &Ring, a: PolyMatrix, u: PolyMatrix) -> Result<Self> {
        if u.rows() != u.cols() {
            return Err(Error::Shape(format!("U must be square, got {}x{}", u.rows(), u.cols())));
        }
        if a.rows() != u.rows() {
            return Err(Error::Shape(format!(
                "A has {} rows but U is {}x{}",
                a.rows(),
                u.rows(),
                u.cols()
            )));
        }
        Ok(GeneratingMorphism {
            ring: ring.clone(),
            a,
            u,
        })
    }

    /// The free module `R^β` with `A` empty and structure matrix `U`.
    pub fn free(ring: &Ring, u: PolyMatrix) -> Result<Self> {
        let beta = u.rows();
        Self::new(ring, PolyMatrix::zeros(beta, 0), u)
    }

    /// The zero module (β = 0).
    pub fn zero(ring: &Ring) -> Self {
        GeneratingMorphism {
            ring: ring.clone(),
            a: PolyMatrix::zeros(0, 0),
            u: PolyMatrix::zeros(0, 0),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn u(&self) -> &PolyMatrix {
        &self.u
    }

    pub fn beta(&self) -> usize {
        self.u.rows()
    }

    /// Largest degree of an entry of `U` (0 when `U` vanishes).
    pub fn delta(&self) -> u32 {
        self.u.max_degree().unwrap_or(0)
    }

    /// `⌈δ/(p-1)⌉`, the degree bound for every iterate after the first.
    pub fn degree_bound(&self) -> u32 {
        let p1 = self.ring.p() - 1;
        self.delta().div_ceil(p1)
    }

    /// Whether `U` maps `Im A` into `Im A^[p]`, i.e. really induces a map of
    /// cokernels.
    pub fn is_well_defined(&self, limits: &GbLimits) -> Result<bool> {
        if self.a.cols() == 0 {
            return Ok(true);
        }
        let ring = &self.ring;
        let target = groebner_basis(ring, self.beta(), &self.a.frobenius(1, ring).columns(), limits)?;
        let image = self.u.mul(&self.a, ring)?;
        Ok(image.columns().iter().all(|c| target.contains(c)))
    }

    /// An isomorphic generating morphism with every unit entry of `A`
    /// eliminated: a unit `u` at `(r, c)` expresses generator `r` through the
    /// others, `π` substitutes that expression, and `(A, U)` becomes
    /// `(π A, π^[p] U ι)` with column `c` dropped (`ι` omits generator `r`).
    pub fn pruned(&self) -> GeneratingMorphism {
        let ring = &self.ring;
        let mut a = self.a.without_zero_columns();
        let mut u = self.u.clone();
        while let Some((r, c)) = unit_entry(&a) {
            let beta = a.rows();
            let inv = ring.field().inv(a.get(r, c).constant_coef());
            // π: R^β -> R^(β-1)
            let mut pi = PolyMatrix::zeros(beta - 1, beta);
            for (ni, s) in (0..beta).filter(|&s| s != r).enumerate() {
                pi.set(ni, s, ring.one());
                let v = ring.neg(&ring.scale(a.get(s, c), inv));
                pi.set(ni, r, v);
            }
            let new_a = pi.mul(&a, ring).expect("shapes").remove_column(c);
            let mut iota = PolyMatrix::zeros(beta, beta - 1);
            for (ni, s) in (0..beta).filter(|&s| s != r).enumerate() {
                iota.set(s, ni, ring.one());
            }
            let new_u = pi
                .frobenius(1, ring)
                .mul(&u, ring)
                .and_then(|m| m.mul(&iota, ring))
                .expect("shapes");
            a = new_a.without_zero_columns();
            u = new_u;
        }
        GeneratingMorphism {
            ring: self.ring.clone(),
            a,
            u,
        }
    }
}

fn unit_entry(m: &PolyMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| m.get(i, j).is_unit())
}

/// Reduced row-echelon basis of the `F_p`-span of a set of vectors, with
/// columns indexed by (coordinate, monomial) in position-over-term order.
/// Equal spans give equal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanForm {
    rank: usize,
    degree_bound: u32,
    rows: Vec<FreeVector>,
}

impl SpanForm {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Basis rows, monic, by decreasing leading term.
    pub fn rows(&self) -> &[FreeVector] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_gens(&self) -> SubmoduleGens {
        SubmoduleGens::new(self.rank, self.rows.clone()).expect("rows have the ambient rank")
    }
}

fn coef_at(ring: &Ring, v: &FreeVector, pos: usize, m: &Monomial) -> u32 {
    let terms = v.coord(pos).terms();
    terms
        .binary_search_by(|t| ring.cmp_mono(m, &t.mono))
        .map(|k| terms[k].coef)
        .unwrap_or(0)
}

pub fn span_canonicalize(ring: &Ring, gens: &SubmoduleGens) -> SpanForm {
    let fld = ring.field();
    let one = ring.one_mono();
    let mut rows: Vec<FreeVector> = Vec::new();
    let mut pivots: HashMap<(usize, Monomial), usize> = HashMap::new();
    for g in gens.gens() {
        let mut v = g.clone();
        while let Some((pos, t)) = v.lead().map(|(p, t)| (p, *t)) {
            match pivots.get(&(pos, t.mono)) {
                Some(&k) => v = v.add_scaled(&rows[k], fld.neg(t.coef), &one, ring),
                None => break,
            }
        }
        if let Some((pos, t)) = v.lead() {
            pivots.insert((pos, t.mono), rows.len());
            rows.push(v.monic(ring));
        }
    }
    crate::groebner::sort_rows(ring, &mut rows);
    // back substitution from the smallest pivot upwards
    for k in (0..rows.len()).rev() {
        let (pos, t) = {
            let (p, t) = rows[k].lead().expect("nonzero");
            (p, t.mono)
        };
        for l in 0..k {
            let c = coef_at(ring, &rows[l], pos, &t);
            if c != 0 {
                let pivot_row = rows[k].clone();
                rows[l] = rows[l].add_scaled(&pivot_row, fld.neg(c), &one, ring);
            }
        }
    }
    SpanForm {
        rank: gens.rank(),
        degree_bound: gens.degree_bound(),
        rows,
    }
}

/// Limits for [`iterate_support`] and [`support_ideal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportConfig {
    /// Number of `I_1` applications allowed before reporting
    /// non-termination.
    pub max_iter: usize,
    pub limits: GbLimits,
}

impl Default for SupportConfig {
    fn default() -> Self {
        SupportConfig {
            max_iter: 1000,
            limits: GbLimits::default(),
        }
    }
}

/// Outcome of the fixed-point iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iteration {
    /// The stable `L`, as its canonical span.
    pub stable: SpanForm,
    /// Number of `I_1` applications performed.
    pub iterations: usize,
    /// Largest generator degree of `L_0, L_1, ..`.
    pub degrees: Vec<u32>,
    /// `⌈δ/(p-1)⌉`.
    pub bound: u32,
}

/// One step `L -> I_1(U L)`, canonicalized.
pub fn iterate_once(gm: &GeneratingMorphism, l: &SpanForm) -> Result<SpanForm> {
    let ring = &gm.ring;
    let ul = l.to_gens().apply(&gm.u, ring)?;
    let next = frob_root(&ul, 1, ring)?;
    Ok(span_canonicalize(ring, &next))
}

/// Runs `L_{j+1} = I_1(U L_j)` from `L_0 = R^β` until two consecutive
/// iterates have the same span or an iterate vanishes. Every iterate is
/// checked against the degree bound; a violation is a hard error.
pub fn iterate_support(gm: &GeneratingMorphism, max_iter: usize) -> Result<Iteration> {
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
    }
    let ring = &gm.ring;
    let bound = gm.degree_bound();
    let mut current = span_canonicalize(ring, &SubmoduleGens::free(ring, gm.beta()));
    let mut degrees = vec![0];
    if current.is_zero() {
        return Ok(Iteration {
            stable: current,
            iterations: 0,
            degrees,
            bound,
        });
    }
    for j in 1..=max_iter {
        let next = iterate_once(gm, &current)?;
        let degree = next.degree_bound();
        degrees.push(degree);
        if degree > bound {
            return Err(Error::DegreeBound {
                iteration: j,
                degree,
                bound,
            });
        }
        if next.is_zero() || next == current {
            return Ok(Iteration {
                stable: next,
                iterations: j,
                degrees,
                bound,
            });
        }
        current = next;
    }
    Err(Error::NonTermination { iterations: max_iter })
}

/// Applies `extra` further steps to a stable span and returns the iterates;
/// at a genuine fixed point they all coincide with the input.
pub fn forced_iterations(gm: &GeneratingMorphism, stable: &SpanForm, extra: usize) -> Result<Vec<SpanForm>> {
    let mut out = Vec::with_capacity(extra);
    let mut cur = stable.clone();
    for _ in 0..extra {
        cur = iterate_once(gm, &cur)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Whether the F-module generated by `gm` is zero: the stable `L` lies in
/// `Im A`.
pub fn is_zero_module(gm: &GeneratingMorphism, cfg: &SupportConfig) -> Result<bool> {
    let it = iterate_support(gm, cfg.max_iter)?;
    if it.stable.is_zero() {
        return Ok(true);
    }
    let ring = &gm.ring;
    let gb = groebner_basis(ring, gm.beta(), &gm.a.columns(), &cfg.limits).map_err(|e| e.in_stage("membership"))?;
    Ok(it.stable.rows().iter().all(|v| gb.contains(v)))
}

/// Result of [`support_ideal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub iteration: Iteration,
    /// Generators of `L` modulo `Im A` used for the presentation.
    pub generators: Vec<FreeVector>,
    /// Presentation of `(L + Im A) / Im A` after unit pruning.
    pub presentation: PolyMatrix,
    /// Generators of `J`: the reduced Gröbner basis of the Fitting ideal
    /// when it could be computed, otherwise the minors themselves. Empty
    /// means `J = 0`.
    pub ideal: Vec<Poly>,
    pub module_is_zero: bool,
    pub support_is_everything: bool,
}

impl SupportReport {
    pub fn iterations(&self) -> usize {
        self.iteration.iterations
    }
}

/// The defining ideal of the support of the F-module generated by `gm`.
pub fn support_ideal(gm: &GeneratingMorphism, cfg: &SupportConfig) -> Result<SupportReport> {
    let ring = &gm.ring;
    let limits = &cfg.limits;
    let iteration = iterate_support(gm, cfg.max_iter)?;
    let acols = gm.a.columns();
    let generators = minimize_generators(ring, gm.beta(), &acols, iteration.stable.rows(), limits)
        .map_err(|e| e.in_stage("presentation"))?;
    let k = generators.len();
    if k == 0 {
        return Ok(SupportReport {
            iteration,
            generators,
            presentation: PolyMatrix::zeros(0, 0),
            ideal: vec![ring.one()],
            module_is_zero: true,
            support_is_everything: false,
        });
    }
    let w = presentation_matrix(ring, &generators, &gm.a, limits).map_err(|e| e.in_stage("syzygies"))?;
    let w = crate::groebner::prune_presentation(ring, &w);
    let minors = fitting_ideal(ring, &w, limits).map_err(|e| e.in_stage("minors"))?;
    let ideal = if minors.is_empty() {
        minors
    } else {
        match ideal_basis(ring, &minors, limits) {
            Ok(gb) => gb.elems().iter().map(|v| v.coord(0).clone()).collect(),
            Err(e) if e.is_resource_failure() => minors,
            Err(e) => return Err(e),
        }
    };
    let module_is_zero = ideal.iter().any(Poly::is_unit);
    let support_is_everything = ideal.is_empty();
    Ok(SupportReport {
        iteration,
        generators,
        presentation: w,
        ideal,
        module_is_zero,
        support_is_everything,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::radicals_equal;
    use crate::ring::MonomialOrder;

    fn ring(p: u64) -> Ring {
        Ring::new(p, &["x", "y"], MonomialOrder::DegRevLex).unwrap()
    }

    fn m1(r: &Ring, s: &str) -> PolyMatrix {
        PolyMatrix::from_rows(vec![vec![r.parse(s).unwrap()]]).unwrap()
    }

    fn gm1(r: &Ring, a: &str, u: &str) -> GeneratingMorphism {
        GeneratingMorphism::new(r, m1(r, a), m1(r, u)).unwrap()
    }

    fn v1(r: &Ring, s: &str) -> FreeVector {
        FreeVector::from_coords(vec![r.parse(s).unwrap()])
    }

    #[test]
    fn span_examples() {
        let r = ring(2);
        let s = span_canonicalize(&r, &SubmoduleGens::new(1, vec![v1(&r, "x"), v1(&r, "x")]).unwrap());
        assert_eq!(s.rows(), &[v1(&r, "x")]);
        let s = span_canonicalize(&r, &SubmoduleGens::new(1, vec![v1(&r, "x"), v1(&r, "x + y")]).unwrap());
        assert_eq!(s.rows(), &[v1(&r, "x"), v1(&r, "y")]);
        let s = span_canonicalize(&r, &SubmoduleGens::new(1, vec![FreeVector::zero(1)]).unwrap());
        assert!(s.is_zero());
    }

    #[test]
    fn span_form_is_canonical() {
        let r = ring(5);
        let a = SubmoduleGens::new(1, vec![v1(&r, "x^2 + y"), v1(&r, "y + 1"), v1(&r, "x")]).unwrap();
        let b = SubmoduleGens::new(1, vec![v1(&r, "x^2 - 1"), v1(&r, "2*x + 3*y + 3"), v1(&r, "y + 1")]).unwrap();
        assert_eq!(span_canonicalize(&r, &a), span_canonicalize(&r, &b));
    }

    #[test]
    fn iteration_examples() {
        let r = ring(2);
        let it = iterate_support(&gm1(&r, "x", "x"), 10).unwrap();
        assert_eq!(it.iterations, 1);
        assert_eq!(it.stable.rows(), &[v1(&r, "1")]);
        let it = iterate_support(&gm1(&r, "x^2", "x^2"), 10).unwrap();
        assert_eq!(it.iterations, 2);
        assert_eq!(it.stable.rows(), &[v1(&r, "x")]);
        let it = iterate_support(&gm1(&r, "x", "0"), 10).unwrap();
        assert_eq!(it.iterations, 1);
        assert!(it.stable.is_zero());
        assert!(iterate_support(&gm1(&r, "x", "x"), 0).is_err());
    }

    #[test]
    fn vanishing_examples() {
        let r = ring(2);
        let cfg = SupportConfig::default();
        assert!(is_zero_module(&gm1(&r, "1", "x*y"), &cfg).unwrap());
        assert!(!is_zero_module(&gm1(&r, "x", "x"), &cfg).unwrap());
        assert!(is_zero_module(&gm1(&r, "x", "0"), &cfg).unwrap());
    }

    #[test]
    fn support_examples() {
        let r = ring(2);
        let cfg = SupportConfig::default();
        let rep = support_ideal(&gm1(&r, "x", "x"), &cfg).unwrap();
        assert!(radicals_equal(&r, &rep.ideal, &[r.var(0)], &cfg.limits).unwrap());
        assert!(!rep.module_is_zero);
        let rep = support_ideal(&gm1(&r, "x^2", "x^2"), &cfg).unwrap();
        assert_eq!(rep.ideal, vec![r.var(0)]);
        let rep = support_ideal(&gm1(&r, "1", "1"), &cfg).unwrap();
        assert_eq!(rep.ideal, vec![r.one()]);
        assert!(rep.module_is_zero);
    }

    #[test]
    fn free_module_has_full_support() {
        let r = ring(3);
        let gm = GeneratingMorphism::free(&r, PolyMatrix::identity(&r, 2)).unwrap();
        let rep = support_ideal(&gm, &SupportConfig::default()).unwrap();
        assert!(rep.support_is_everything);
        assert!(rep.ideal.is_empty());
    }

    #[test]
    fn zero_rank_module() {
        let r = ring(2);
        let rep = support_ideal(&GeneratingMorphism::zero(&r), &SupportConfig::default()).unwrap();
        assert!(rep.module_is_zero);
        assert_eq!(rep.iterations(), 0);
    }

    #[test]
    fn pruning_preserves_support() {
        let r = ring(3);
        let p = |s: &str| r.parse(s).unwrap();
        // R^2 / <(1, -x), (y, 0)> ≅ R/(xy) through the second generator
        let a = PolyMatrix::from_rows(vec![vec![p("1"), p("y")], vec![p("-x"), p("0")]]).unwrap();
        let u = PolyMatrix::from_rows(vec![vec![p("y^2"), p("0")], vec![p("0"), p("x^2*y^2")]]).unwrap();
        let gm = GeneratingMorphism::new(&r, a, u).unwrap();
        let lim = GbLimits::default();
        assert!(gm.is_well_defined(&lim).unwrap());
        let pr = gm.pruned();
        assert_eq!(pr, gm1(&r, "x*y", "x^2*y^2"));
        assert!(pr.is_well_defined(&lim).unwrap());
        let cfg = SupportConfig::default();
        let s1 = support_ideal(&gm, &cfg).unwrap();
        let s2 = support_ideal(&pr, &cfg).unwrap();
        assert!(radicals_equal(&r, &s1.ideal, &s2.ideal, &cfg.limits).unwrap());
    }

    #[test]
    fn shape_errors() {
        let r = ring(2);
        assert!(GeneratingMorphism::new(&r, PolyMatrix::zeros(1, 1), PolyMatrix::zeros(2, 2)).is_err());
        assert!(GeneratingMorphism::new(&r, PolyMatrix::zeros(2, 1), PolyMatrix::zeros(2, 3)).is_err());
    }
}
