//! Generating morphisms for local cohomology.
//!
//! Cohomology modules `H = Z / B` of complexes of finitely presented modules
//! are presented as cokernels in one way throughout: `Z` is a submodule of
//! a free module, a generating set `K` of `Z` modulo `B` is chosen, and `H`
//! is the cokernel of the syzygies of `(K | B)` projected onto `K`. Since
//! Frobenius is exact, `F_R(H)` is presented by the bracket power of that
//! matrix on the generators `K^[p]`. A chain map `Φ` into the Frobenius
//! complex induces `U`: column `i` expresses `Φ k_i` in `K^[p]` modulo
//! `B^[p]`.

use crate::error::{Error, Result};
use crate::frobroot::SubmoduleGens;
use crate::fsupport::{iterate_support, support_ideal, GeneratingMorphism, SupportConfig, SupportReport};
use crate::groebner::{
    free_resolution, lift_frobenius_chain, minimize_generators, preimage, presentation_matrix, AugmentedGb,
    GbLimits,
};
use crate::ring::{FreeVector, Poly, PolyMatrix, Ring};

/// A subquotient `Z / B` of `R^n` presented as `Coker P` on the generators
/// `K` (columns of `gens`), with `B` generated by the columns of
/// `boundaries`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomPresentation {
    pub gens: PolyMatrix,
    pub boundaries: PolyMatrix,
    pub presentation: PolyMatrix,
}

impl CohomPresentation {
    pub fn is_zero(&self) -> bool {
        self.gens.cols() == 0
    }

    /// Builds the presentation of `Z / B` from generators of `Z ⊇ B`.
    pub fn new(ring: &Ring, ambient: usize, cycles: &[FreeVector], boundaries: PolyMatrix, limits: &GbLimits) -> Result<Self> {
        let k = minimize_generators(ring, ambient, &boundaries.columns(), cycles, limits)?;
        let gens = PolyMatrix::from_columns(ambient, &k);
        let presentation = presentation_matrix(ring, &k, &boundaries, limits)?;
        let presentation = if k.is_empty() {
            presentation
        } else {
            PolyMatrix::from_columns(k.len(), &presentation.columns())
        };
        Ok(CohomPresentation {
            gens,
            boundaries,
            presentation,
        })
    }

    /// The square matrix induced on `H -> F_R(H)` by a chain map `phi`
    /// (`n x n`) into the Frobenius complex.
    pub fn transport(&self, ring: &Ring, phi: &PolyMatrix, limits: &GbLimits) -> Result<PolyMatrix> {
        let m = self.gens.cols();
        let n = self.gens.rows();
        let mut targets = self.gens.frobenius(1, ring).columns();
        targets.extend(self.boundaries.frobenius(1, ring).columns());
        let aug = AugmentedGb::new(ring, n, &targets, limits)?;
        let mut cols = Vec::with_capacity(m);
        for k in self.gens.columns() {
            let image = phi.mul_vec(&k, ring);
            let x = aug
                .lift(&image)
                .ok_or_else(|| Error::Internal("chain map does not preserve cycles".into()))?;
            cols.push(x.slice(0..m));
        }
        Ok(PolyMatrix::from_columns(m, &cols))
    }

    /// The generating morphism `(P, U)` for `H`, pruned.
    pub fn generating_morphism(&self, ring: &Ring, phi: &PolyMatrix, limits: &GbLimits) -> Result<GeneratingMorphism> {
        if self.is_zero() {
            return Ok(GeneratingMorphism::zero(ring));
        }
        let u = self.transport(ring, phi, limits)?;
        Ok(GeneratingMorphism::new(ring, self.presentation.clone(), u)?.pruned())
    }
}

/// `(A, U) = ([f], [f^(p-1)])`, a generating morphism for `H^1_(f)(R)`.
pub fn principal_gm(ring: &Ring, f: &Poly) -> Result<GeneratingMorphism> {
    if f.is_zero() || f.is_constant() {
        return Err(Error::InvalidArgument("principal generator must be a nonconstant polynomial".into()));
    }
    let a = PolyMatrix::row_of(std::slice::from_ref(f));
    let u = PolyMatrix::row_of(&[ring.pow(f, ring.p() as u64 - 1)]);
    GeneratingMorphism::new(ring, a, u)
}

/// Generating morphism `Ext^j(R/J, R) -> Ext^j(R/J^[p], R)` for
/// `H^j_J(R)`, from a free resolution of `R/J`, the Frobenius chain lift
/// `θ`, and `θ_j^T` transported to the presentation of `Ext^j`.
pub fn ext_gm(ring: &Ring, j_gens: &[Poly], j: usize, limits: &GbLimits) -> Result<GeneratingMorphism> {
    check_expansion(ring, j_gens, limits)?;
    let res = free_resolution(ring, j_gens, j + 1, limits).map_err(|e| e.in_stage("resolution"))?;
    if j > res.length() {
        return Ok(GeneratingMorphism::zero(ring));
    }
    let thetas = lift_frobenius_chain(ring, &res, limits).map_err(|e| e.in_stage("chain lift"))?;
    let ranks = res.ranks();
    let bj = ranks[j];
    // cochain R^{b_{j-1}} -A_j^T-> R^{b_j} -A_{j+1}^T-> R^{b_{j+1}}
    let cycles: Vec<FreeVector> = if j < res.length() {
        let out = res.map(j + 1).transpose();
        preimage(ring, &out, &SubmoduleGens::zero(out.rows()), limits)?.into_gens()
    } else {
        (0..bj).map(|i| FreeVector::unit(ring, bj, i)).collect()
    };
    let boundaries = if j == 0 {
        PolyMatrix::zeros(bj, 0)
    } else {
        res.map(j).transpose()
    };
    let h = CohomPresentation::new(ring, bj, &cycles, boundaries, limits)?;
    h.generating_morphism(ring, &thetas[j].transpose(), limits)
}

fn binomial_capped(n: u64, k: u64, cap: u64) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n.saturating_sub(k)) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return cap.saturating_add(1);
        }
    }
    acc as u64
}

/// Refuses inputs whose `(p-1)`-th powers are too large to expand. The
/// estimate is the smaller of the multinomial term count and the number of
/// monomials of the resulting degree.
pub fn check_expansion(ring: &Ring, gens: &[Poly], limits: &GbLimits) -> Result<()> {
    let cap = limits.max_expansion_terms;
    let k = ring.p() as u64 - 1;
    let n = ring.nvars() as u64;
    for f in gens {
        let t = f.len() as u64;
        if t == 0 {
            continue;
        }
        let by_terms = binomial_capped(t + k - 1, k, cap);
        let d = f.degree().unwrap_or(0) as u64 * k;
        let by_degree = binomial_capped(d + n, n, cap);
        let est = by_terms.min(by_degree);
        if est > cap {
            return Err(Error::resource(
                "expansion",
                format!("expanding a {t}-term generator to the power {k} is not feasible (estimate {est} > {cap})"),
            ));
        }
    }
    Ok(())
}

/// Index sets `j_1 < .. < j_i` of `0..m`, lexicographic.
fn index_sets(m: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..m {
            cur.push(s);
            go(s + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, i, &mut Vec::new(), &mut out);
    out
}

/// Koszul differential `K^i -> K^{i+1}` on `β` copies: the block from `S`
/// to `T = S ∪ {t}` is `(-1)^(position of t in T) f_t` times the identity.
pub fn koszul_differential(ring: &Ring, fs: &[Poly], i: usize, beta: usize) -> PolyMatrix {
    let m = fs.len();
    let src = index_sets(m, i);
    let dst = index_sets(m, i + 1);
    let mut d = PolyMatrix::zeros(dst.len() * beta, src.len() * beta);
    for (ti, t) in dst.iter().enumerate() {
        for (pos, &x) in t.iter().enumerate() {
            let mut s = t.clone();
            s.remove(pos);
            let si = src.iter().position(|c| *c == s).expect("subset");
            let entry = if pos % 2 == 0 { fs[x].clone() } else { ring.neg(&fs[x]) };
            for b in 0..beta {
                d.set(ti * beta + b, si * beta + b, entry.clone());
            }
        }
    }
    d
}

/// Generating morphism for `H^i_I(M)`, `I = (f_1..f_m)`, from one for `M`:
/// the Koszul cohomology `H^i(M; f)` with the chain map given on the
/// summand `S` by `U (Π_{s∈S} f_s)^(p-1)`.
pub fn koszul_gm(gm: &GeneratingMorphism, fs: &[Poly], i: usize, limits: &GbLimits) -> Result<GeneratingMorphism> {
    let ring = gm.ring();
    let m = fs.len();
    if i > m {
        return Err(Error::InvalidArgument(format!("Koszul index {i} exceeds sequence length {m}")));
    }
    let beta = gm.beta();
    if beta == 0 {
        return Ok(GeneratingMorphism::zero(ring));
    }
    let sets = index_sets(m, i);
    let n = sets.len() * beta;
    let a_here = gm.a().block_diag(sets.len());
    let cycles: Vec<FreeVector> = if i < m {
        let d = koszul_differential(ring, fs, i, beta);
        let a_next = gm.a().block_diag(index_sets(m, i + 1).len());
        preimage(ring, &d, &SubmoduleGens::image(&a_next), limits)?.into_gens()
    } else {
        (0..n).map(|k| FreeVector::unit(ring, n, k)).collect()
    };
    let boundaries = if i > 0 {
        koszul_differential(ring, fs, i - 1, beta).hstack(&a_here)?
    } else {
        a_here
    };
    let h = CohomPresentation::new(ring, n, &cycles, boundaries, limits)?;
    if h.is_zero() {
        return Ok(GeneratingMorphism::zero(ring));
    }
    let p1 = ring.p() as u64 - 1;
    let mut phi = PolyMatrix::zeros(n, n);
    for (k, s) in sets.iter().enumerate() {
        let mut prod = ring.one();
        for &x in s {
            prod = ring.mul(&prod, &fs[x]);
        }
        let block = gm.u().scale_poly(&ring.pow(&prod, p1), ring);
        for r in 0..beta {
            for c in 0..beta {
                phi.set(k * beta + r, k * beta + c, block.get(r, c).clone());
            }
        }
    }
    h.generating_morphism(ring, &phi, limits)
}

/// Checks `δ^{i+1} δ^i = 0` and `δ'^i φ_i = φ_{i+1} δ^i` for the Koszul
/// complex of `gm` on `fs`, with `δ'` the differential on `f^p`.
pub fn koszul_identities_hold(gm: &GeneratingMorphism, fs: &[Poly]) -> Result<bool> {
    let ring = gm.ring();
    let m = fs.len();
    let beta = gm.beta();
    let p1 = ring.p() as u64 - 1;
    let phi = |i: usize| {
        let sets = index_sets(m, i);
        let mut out = PolyMatrix::zeros(sets.len() * beta, sets.len() * beta);
        for (k, s) in sets.iter().enumerate() {
            let prod = s.iter().fold(ring.one(), |acc, &x| ring.mul(&acc, &fs[x]));
            let block = gm.u().scale_poly(&ring.pow(&prod, p1), ring);
            for r in 0..beta {
                for c in 0..beta {
                    out.set(k * beta + r, k * beta + c, block.get(r, c).clone());
                }
            }
        }
        out
    };
    let fp: Vec<Poly> = fs.iter().map(|f| ring.frobenius(f, 1)).collect();
    for i in 0..m {
        let d = koszul_differential(ring, fs, i, beta);
        if i + 1 < m {
            let d2 = koszul_differential(ring, fs, i + 1, beta);
            if !d2.mul(&d, ring)?.is_zero() {
                return Ok(false);
            }
        }
        let dp = koszul_differential(ring, &fp, i, beta);
        if dp.mul(&phi(i), ring)? != phi(i + 1).mul(&d, ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One layer `H^index_I(-)` of an iterated local cohomology module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub ideal: Vec<Poly>,
    pub index: usize,
}

/// `H^{i_1}_{I_1} .. H^{i_s}_{I_s}(R)`, listed innermost first: `layers[0]`
/// is applied to `R` and each later layer to the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedSpec {
    pub layers: Vec<Layer>,
}

impl IteratedSpec {
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidArgument("iterated specification needs at least one layer".into()));
        }
        if layers.iter().any(|l| l.ideal.iter().all(Poly::is_zero)) {
            return Err(Error::InvalidArgument("every layer needs a nonzero ideal".into()));
        }
        Ok(IteratedSpec { layers })
    }
}

/// Generating morphism for the iterated module: the innermost layer comes
/// from [`principal_gm`] when the ideal is principal and the index is 1,
/// from [`ext_gm`] otherwise; outer layers go through [`koszul_gm`].
pub fn iterated_gm(ring: &Ring, spec: &IteratedSpec, limits: &GbLimits) -> Result<GeneratingMorphism> {
    let first = &spec.layers[0];
    let nonzero: Vec<Poly> = first.ideal.iter().filter(|f| !f.is_zero()).cloned().collect();
    let mut gm = if nonzero.len() == 1 && first.index == 1 && !nonzero[0].is_constant() {
        principal_gm(ring, &nonzero[0])?
    } else {
        ext_gm(ring, &nonzero, first.index, limits)?
    };
    for layer in &spec.layers[1..] {
        gm = koszul_gm(&gm, &layer.ideal, layer.index, limits)?;
    }
    Ok(gm)
}

pub fn iterated_support(ring: &Ring, spec: &IteratedSpec, cfg: &SupportConfig) -> Result<SupportReport> {
    let gm = iterated_gm(ring, spec, &cfg.limits)?;
    support_ideal(&gm, cfg)
}

/// Per-prime row of [`degree_diagnostics`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosticsRow {
    pub p: u32,
    /// Largest degree of an entry of `U_p`.
    pub delta_p: u32,
    /// Largest entry degree of the resolution used as `Δ`.
    pub big_delta: u32,
    /// Whether the resolution over `F_p` has the same ranks as the
    /// reference one (a heuristic for `p` being regular on `S/J`).
    pub ranks_match: bool,
    /// `δ_{e,p}` for `e = 1, 2, ..` up to the fixed point.
    pub degrees: Vec<u32>,
    pub bound_2j_delta: u32,
    pub bound_remark: u32,
    pub violations: Vec<String>,
    pub error: Option<String>,
}

/// Prime used for the reference resolution standing in for the one over
/// the integers.
pub const REFERENCE_PRIME: u64 = 32003;

/// Degrees `δ_{e,p}` of the iterates for `H^j_J(R_p)` over several primes,
/// with `J` given by integer terms `(coefficient, exponents)`.
pub fn degree_diagnostics(
    names: &[&str],
    j_terms: &[Vec<(i64, Vec<u32>)>],
    j: usize,
    primes: &[u64],
    cfg: &SupportConfig,
) -> Result<Vec<DiagnosticsRow>> {
    if primes.is_empty() {
        return Ok(Vec::new());
    }
    let order = crate::ring::MonomialOrder::DegRevLex;
    let reference = Ring::new(REFERENCE_PRIME, names, order)?;
    let ref_gens: Vec<Poly> = j_terms
        .iter()
        .map(|t| reference.normalize(t))
        .collect::<Result<_>>()?;
    let ref_res = free_resolution(&reference, &ref_gens, names.len() + 1, &cfg.limits)?;
    let big_delta = ref_res.max_entry_degree();
    let ref_ranks = ref_res.ranks();
    let mut rows = Vec::new();
    for &p in primes {
        let ring = Ring::new(p, names, order)?;
        let mut row = DiagnosticsRow {
            p: ring.p(),
            delta_p: 0,
            big_delta,
            ranks_match: false,
            degrees: Vec::new(),
            bound_2j_delta: 2 * j as u32 * big_delta,
            bound_remark: 0,
            violations: Vec::new(),
            error: None,
        };
        let run = || -> Result<(bool, GeneratingMorphism, Vec<u32>)> {
            let gens: Vec<Poly> = j_terms.iter().map(|t| ring.normalize(t)).collect::<Result<_>>()?;
            let res = free_resolution(&ring, &gens, names.len() + 1, &cfg.limits)?;
            let gm = ext_gm(&ring, &gens, j, &cfg.limits)?;
            let it = iterate_support(&gm, cfg.max_iter)?;
            Ok((res.ranks() == ref_ranks, gm, it.degrees[1..].to_vec()))
        };
        match run() {
            Ok((ranks_match, gm, degrees)) => {
                row.ranks_match = ranks_match;
                row.delta_p = gm.delta();
                row.bound_remark = gm.degree_bound();
                for (e, &d) in degrees.iter().enumerate() {
                    if d > row.bound_remark {
                        row.violations.push(format!("e={} degree {d} > {}", e + 1, row.bound_remark));
                    }
                    if ranks_match && d > row.bound_2j_delta {
                        row.violations.push(format!("e={} degree {d} > 2jΔ = {}", e + 1, row.bound_2j_delta));
                    }
                }
                row.degrees = degrees;
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        rows.push(row);
    }
    Ok(rows)
}
