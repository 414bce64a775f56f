//! Loci where multiplication by `g` on an F-finite F-module fails to be
//! injective or surjective, and the support of `H^i_I(R/gR)` built from
//! them.
//!
//! With `V_{0j} = U^[p^(j-1)] .. U^[p] U`, the kernel of
//! `Coker A -> Coker A^[p^j]` pulled back to `R^β` is
//! `N_j = {v : V_{0j} v ∈ Im A^[p^j]}`.

use crate::error::{Error, Result};
use crate::frobroot::{bracket_power_matrix, SubmoduleGens};
use crate::fsupport::GeneratingMorphism;
use crate::groebner::{
    colon_element, fitting_ideal, ideal_basis, ideal_intersection, minimize_generators, module_contains,
    modules_equal, preimage, presentation_matrix, prune_presentation, GbLimits,
};
use crate::ring::{FreeVector, Poly, PolyMatrix, Ring};

/// `U^[p^(e+j-1)] U^[p^(e+j-2)] .. U^[p^e]`; the identity for `j = 0`.
pub fn v_product(u: &PolyMatrix, e: u32, j: u32, ring: &Ring) -> PolyMatrix {
    let mut out = PolyMatrix::identity(ring, u.rows());
    for k in e..e + j {
        out = bracket_power_matrix(u, k, ring)
            .mul(&out, ring)
            .expect("square matrices");
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusKind {
    Injectivity,
    Surjectivity,
    HypersurfaceSupport,
}

/// Chain parameters: persistence window and cutoff.
#[derive(Clone, Debug)]
pub struct ChainConfig {
    pub window: usize,
    pub j_max: usize,
    pub limits: GbLimits,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            window: 2,
            j_max: 6,
            limits: GbLimits::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocusReport {
    pub kind: LocusKind,
    /// The locus is `V(ideal)`; `[1]` means empty, `[]` means everything.
    pub ideal: Vec<Poly>,
    /// `N_η` for injectivity, the accumulated union `T` for surjectivity.
    pub module: Option<SubmoduleGens>,
    pub eta: Option<usize>,
    /// Last exponent at which the chain was computed.
    pub j_reached: usize,
    pub certified: bool,
    /// The two constituent loci of a hypersurface support.
    pub parts: Vec<LocusReport>,
    pub flags: Vec<String>,
}

impl LocusReport {
    pub fn is_empty_locus(&self) -> bool {
        self.ideal.iter().any(Poly::is_unit)
    }

    pub fn is_everything(&self) -> bool {
        self.ideal.is_empty()
    }
}

fn reduced_ideal(ring: &Ring, gens: Vec<Poly>, limits: &GbLimits) -> Result<Vec<Poly>> {
    if gens.is_empty() {
        return Ok(gens);
    }
    match ideal_basis(ring, &gens, limits) {
        Ok(gb) => Ok(gb.elems().iter().map(|v| v.coord(0).clone()).collect()),
        Err(e) if e.is_resource_failure() => Ok(gens),
        Err(e) => Err(e),
    }
}

/// Defining ideal of `Supp(big / small)` for `small ⊆ big ⊆ R^β`.
pub fn subquotient_support(ring: &Ring, big: &SubmoduleGens, small: &SubmoduleGens, limits: &GbLimits) -> Result<Vec<Poly>> {
    let fixed = small.gens().to_vec();
    let k = minimize_generators(ring, big.rank(), &fixed, big.gens(), limits)?;
    if k.is_empty() {
        return Ok(vec![ring.one()]);
    }
    let w = presentation_matrix(ring, &k, &small.to_matrix(), limits)?;
    let w = prune_presentation(ring, &w);
    let minors = fitting_ideal(ring, &w, limits)?;
    reduced_ideal(ring, minors, limits)
}

fn image_power(gm: &GeneratingMorphism, j: usize) -> SubmoduleGens {
    SubmoduleGens::image(&bracket_power_matrix(gm.a(), j as u32, gm.ring()))
}

fn empty_locus(ring: &Ring, kind: LocusKind) -> LocusReport {
    LocusReport {
        kind,
        ideal: vec![ring.one()],
        module: None,
        eta: Some(0),
        j_reached: 0,
        certified: true,
        parts: Vec::new(),
        flags: vec!["zero-module".into()],
    }
}

fn check_g(g: &Poly) -> Result<()> {
    if g.is_zero() {
        return Err(Error::InvalidArgument("g must be nonzero".into()));
    }
    Ok(())
}

/// Where multiplication by `g` fails to be injective:
/// `Supp (N_η : g) / N_η` with `η` the first `j >= 1` at which the kernel
/// chain stays constant for `window` consecutive steps.
pub fn injectivity_locus(gm: &GeneratingMorphism, g: &Poly, cfg: &ChainConfig) -> Result<LocusReport> {
    check_g(g)?;
    let ring = gm.ring();
    if gm.beta() == 0 {
        return Ok(empty_locus(ring, LocusKind::Injectivity));
    }
    let lim = &cfg.limits;
    let window = cfg.window.max(1);
    let mut chain: Vec<SubmoduleGens> = Vec::new();
    let mut equal_run = 0;
    let mut eta = None;
    let mut j = 0;
    while j <= cfg.j_max.max(1) + window {
        let v = v_product(gm.u(), 0, j as u32, ring);
        let nj = preimage(ring, &v, &image_power(gm, j), lim).map_err(|e| e.in_stage("kernel chain"))?;
        if let Some(prev) = chain.last() {
            if !module_contains(ring, &nj, prev, lim)? {
                return Err(Error::Internal(format!("kernel chain is not ascending at j = {j}")));
            }
            if j >= 2 && modules_equal(ring, prev, &nj, lim)? {
                equal_run += 1;
            } else {
                equal_run = 0;
            }
        }
        chain.push(nj);
        if equal_run >= window {
            eta = Some(j - window);
            break;
        }
        if j >= cfg.j_max.max(1) && equal_run == 0 {
            break;
        }
        j += 1;
    }
    let j_reached = chain.len() - 1;
    let pick = eta.unwrap_or(j_reached);
    let n = chain.swap_remove(pick);
    let colon = colon_element(ring, &n, g, lim).map_err(|e| e.in_stage("colon"))?;
    let ideal = subquotient_support(ring, &colon, &n, lim).map_err(|e| e.in_stage("minors"))?;
    let mut flags = Vec::new();
    if eta.is_none() {
        flags.push(format!("cutoff at j = {j_reached}"));
    }
    Ok(LocusReport {
        kind: LocusKind::Injectivity,
        ideal,
        module: Some(n),
        eta,
        j_reached,
        certified: eta.is_some(),
        parts: Vec::new(),
        flags,
    })
}

/// Where multiplication by `g` fails to be surjective:
/// `Supp R^β / T` with `T` the union over `k` of
/// `(gR^β + Im A^[p^k] : V_{0k})`. Only reaching `T = R^β` certifies the
/// result; a persisting chain or the cutoff leaves it uncertified.
pub fn surjectivity_locus(gm: &GeneratingMorphism, g: &Poly, cfg: &ChainConfig) -> Result<LocusReport> {
    check_g(g)?;
    let ring = gm.ring();
    let beta = gm.beta();
    if beta == 0 {
        return Ok(empty_locus(ring, LocusKind::Surjectivity));
    }
    let lim = &cfg.limits;
    let window = cfg.window.max(1);
    let g_part = SubmoduleGens::image(&PolyMatrix::identity(ring, beta).scale_poly(g, ring));
    let whole = SubmoduleGens::free(ring, beta);
    let mut t = SubmoduleGens::zero(beta);
    let mut equal_run = 0;
    let mut flags = Vec::new();
    let mut full = false;
    let mut j_reached = 0;
    for k in 0..=cfg.j_max.max(1) {
        j_reached = k;
        let v = v_product(gm.u(), 0, k as u32, ring);
        let target = g_part.sum(&image_power(gm, k))?;
        let piece = preimage(ring, &v, &target, lim).map_err(|e| e.in_stage("surjectivity chain"))?;
        let next = t.sum(&piece)?;
        let same = k > 0 && module_contains(ring, &t, &next, lim)?;
        t = next;
        if module_contains(ring, &t, &whole, lim)? {
            full = true;
            break;
        }
        equal_run = if same { equal_run + 1 } else { 0 };
        if equal_run >= window {
            flags.push(format!("persisted for {window} steps at j = {k}"));
            break;
        }
    }
    if !full && equal_run < window {
        flags.push(format!("cutoff at j = {j_reached}"));
    }
    let ideal = if full {
        vec![ring.one()]
    } else {
        let minors = fitting_ideal(ring, &t.to_matrix(), lim).map_err(|e| e.in_stage("minors"))?;
        reduced_ideal(ring, minors, lim)?
    };
    Ok(LocusReport {
        kind: LocusKind::Surjectivity,
        ideal,
        module: Some(t),
        eta: if full { Some(j_reached) } else { None },
        j_reached,
        certified: full,
        parts: Vec::new(),
        flags,
    })
}

/// `Supp H^i_I(R/gR) = S^i ∪ I^{i+1}` from generating morphisms for
/// `H^i_I(R)` and `H^{i+1}_I(R)`. The union is the ideal intersection, or
/// the product when the intersection runs out of resources.
pub fn hypersurface_support(
    gm_i: &GeneratingMorphism,
    gm_next: &GeneratingMorphism,
    g: &Poly,
    cfg: &ChainConfig,
) -> Result<LocusReport> {
    let ring = gm_i.ring();
    let s = surjectivity_locus(gm_i, g, cfg)?;
    let inj = injectivity_locus(gm_next, g, cfg)?;
    let mut flags = Vec::new();
    let ideal = if s.is_empty_locus() {
        inj.ideal.clone()
    } else if inj.is_empty_locus() {
        s.ideal.clone()
    } else if s.is_everything() || inj.is_everything() {
        Vec::new()
    } else {
        match ideal_intersection(ring, &s.ideal, &inj.ideal, &cfg.limits) {
            Ok(gens) => reduced_ideal(ring, gens, &cfg.limits)?,
            Err(e) if e.is_resource_failure() => {
                flags.push("union as product of ideals".into());
                let mut prod = Vec::new();
                for a in &s.ideal {
                    for b in &inj.ideal {
                        prod.push(ring.mul(a, b));
                    }
                }
                prod
            }
            Err(e) => return Err(e),
        }
    };
    Ok(LocusReport {
        kind: LocusKind::HypersurfaceSupport,
        ideal,
        module: None,
        eta: None,
        j_reached: s.j_reached.max(inj.j_reached),
        certified: s.certified && inj.certified,
        parts: vec![s, inj],
        flags,
    })
}

/// Whether `(gR^β + Im A^[p^(e+j)] : V_{ej})^[p]` is contained in
/// `(gR^β + Im A^[p^(e+1+j)] : V_{e+1,j})`.
pub fn colon_bracket_identity(gm: &GeneratingMorphism, g: &Poly, e: u32, j: u32, limits: &GbLimits) -> Result<bool> {
    let ring = gm.ring();
    let beta = gm.beta();
    let colon = |e: u32| -> Result<SubmoduleGens> {
        let gpart = SubmoduleGens::image(&PolyMatrix::identity(ring, beta).scale_poly(g, ring));
        let target = gpart.sum(&image_power(gm, (e + j) as usize))?;
        preimage(ring, &v_product(gm.u(), e, j, ring), &target, limits)
    };
    let small = colon(e)?;
    let small_p = SubmoduleGens::new(
        beta,
        small.gens().iter().map(|v: &FreeVector| v.frobenius(1, ring)).collect(),
    )?;
    module_contains(ring, &colon(e + 1)?, &small_p, limits)
}
