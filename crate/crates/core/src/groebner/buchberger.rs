//! Buchberger's algorithm for submodules of R^rank, position-over-term.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree, then
//! index), useless pairs are discarded with the Gebauer–Möller criteria, and
//! the result is inter-reduced with monic leading terms.

use super::GbLimits;
use crate::error::{Error, Result};
use crate::ring::{FreeVector, Monomial, Poly, Ring, Term};

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of a submodule of R^rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    rank: usize,
    elems: Vec<FreeVector>,
}

/// Incremental Buchberger state. After [`GbBuilder::complete`] the current
/// basis is a Gröbner basis of everything added so far.
pub struct GbBuilder<'a> {
    ring: &'a Ring,
    rank: usize,
    limits: &'a GbLimits,
    basis: Vec<FreeVector>,
    leads: Vec<(usize, Monomial)>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    processed: usize,
}

impl<'a> GbBuilder<'a> {
    pub fn new(ring: &'a Ring, rank: usize, limits: &'a GbLimits) -> Self {
        GbBuilder {
            ring,
            rank,
            limits,
            basis: Vec::new(),
            leads: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            processed: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of basis elements currently stored (including superseded ones).
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    fn find_divisor(&self, pos: usize, m: &Monomial) -> Option<usize> {
        self.leads
            .iter()
            .enumerate()
            .find(|(k, (lp, lm))| *lp == pos && self.active[*k] && lm.divides(m))
            .map(|(k, _)| k)
            .or_else(|| {
                // superseded elements are still valid reducers
                self.leads
                    .iter()
                    .position(|(lp, lm)| *lp == pos && lm.divides(m))
            })
    }

    /// Full reduction of `v` by the current basis.
    pub fn reduce(&self, v: &FreeVector) -> FreeVector {
        reduce_with(self.ring, v, |pos, m| {
            self.find_divisor(pos, m).map(|k| (&self.basis[k], self.leads[k].1))
        })
    }

    /// Reduces `v` and, if the remainder is nonzero, adds it to the basis.
    /// Returns whether the basis grew.
    pub fn add(&mut self, v: &FreeVector) -> Result<bool> {
        if v.rank() != self.rank {
            return Err(Error::Shape(format!(
                "vector of rank {} added to a module in R^{}",
                v.rank(),
                self.rank
            )));
        }
        let r = self.reduce(v);
        if r.is_zero() {
            return Ok(false);
        }
        self.insert(r.monic(self.ring))?;
        Ok(true)
    }

    fn insert(&mut self, h: FreeVector) -> Result<()> {
        if self.basis.len() >= self.limits.max_basis_size {
            return Err(Error::resource(
                "groebner",
                format!("basis size exceeded {}", self.limits.max_basis_size),
            ));
        }
        let (pos, lt) = {
            let (pos, t) = h.lead().expect("nonzero");
            (pos, t.mono)
        };
        let t = self.basis.len();

        // Gebauer–Möller B: old pairs made redundant by the new lead.
        let leads = &self.leads;
        self.pairs.retain(|pr| {
            if pr.pos != pos || !lt.divides(&pr.lcm) {
                return true;
            }
            let li = leads[pr.i].1.lcm(&lt);
            let lj = leads[pr.j].1.lcm(&lt);
            li == pr.lcm || lj == pr.lcm
        });

        // candidate new pairs
        let mut cand: Vec<(Pair, bool)> = Vec::new();
        for (i, (ip, im)) in self.leads.iter().enumerate() {
            if *ip != pos || !self.active[i] {
                continue;
            }
            let coprime = self.rank == 1 && im.is_coprime(&lt);
            cand.push((
                Pair {
                    i,
                    j: t,
                    pos,
                    lcm: im.lcm(&lt),
                },
                coprime,
            ));
        }
        // M: drop pairs whose lcm is properly divisible by another's lcm.
        let mut keep: Vec<(Pair, bool)> = Vec::new();
        for (k, (pr, cp)) in cand.iter().enumerate() {
            let dominated = cand.iter().enumerate().any(|(l, (other, _))| {
                l != k && other.lcm != pr.lcm && other.lcm.divides(&pr.lcm)
            });
            if !dominated {
                keep.push((*pr, *cp));
            }
        }
        // F: one pair per lcm; the product criterion removes the whole class.
        let mut chosen: Vec<Pair> = Vec::new();
        let mut seen: Vec<Monomial> = Vec::new();
        for (pr, _) in &keep {
            if seen.contains(&pr.lcm) {
                continue;
            }
            seen.push(pr.lcm);
            let class_coprime = keep.iter().any(|(o, cp)| o.lcm == pr.lcm && *cp);
            if !class_coprime {
                chosen.push(*pr);
            }
        }
        self.pairs.extend(chosen);

        for (k, (kp, km)) in self.leads.iter().enumerate() {
            if *kp == pos && self.active[k] && lt.divides(km) {
                self.active[k] = false;
            }
        }
        self.basis.push(h);
        self.leads.push((pos, lt));
        self.active.push(true);
        Ok(())
    }

    fn spoly(&self, pr: &Pair) -> FreeVector {
        let ring = self.ring;
        let qi = self.leads[pr.i].1.quotient_of(&pr.lcm).expect("lcm");
        let qj = self.leads[pr.j].1.quotient_of(&pr.lcm).expect("lcm");
        let a = self.basis[pr.i].mul_term(1, &qi, ring);
        a.add_scaled(&self.basis[pr.j], ring.p() - 1, &qj, ring)
    }

    /// Processes pairs until none remain.
    pub fn complete(&mut self) -> Result<()> {
        while !self.pairs.is_empty() {
            let k = self
                .pairs
                .iter()
                .enumerate()
                .min_by_key(|(_, pr)| (pr.lcm.degree(), pr.j, pr.i))
                .map(|(k, _)| k)
                .unwrap();
            let pr = self.pairs.swap_remove(k);
            if pr.lcm.degree() > self.limits.max_degree {
                return Err(Error::resource(
                    "groebner",
                    format!("S-pair degree {} exceeded {}", pr.lcm.degree(), self.limits.max_degree),
                ));
            }
            self.processed += 1;
            if self.processed > self.limits.max_pairs {
                return Err(Error::resource(
                    "groebner",
                    format!("more than {} S-pairs", self.limits.max_pairs),
                ));
            }
            let s = self.spoly(&pr);
            let r = self.reduce(&s);
            if !r.is_zero() {
                self.insert(r.monic(self.ring))?;
            }
        }
        Ok(())
    }

    /// Inter-reduced basis; call after [`GbBuilder::complete`].
    pub fn finish(self) -> GroebnerBasis {
        let ring = self.ring;
        // minimal basis: drop elements whose lead is divisible by another lead
        let mut keep: Vec<usize> = Vec::new();
        for k in 0..self.basis.len() {
            let (pk, mk) = self.leads[k];
            let redundant = (0..self.basis.len()).any(|l| {
                l != k && {
                    let (pl, ml) = self.leads[l];
                    pl == pk && ml.divides(&mk) && (ml != mk || l < k)
                }
            });
            if !redundant {
                keep.push(k);
            }
        }
        let mut elems: Vec<FreeVector> = keep.iter().map(|&k| self.basis[k].clone()).collect();
        let leads: Vec<(usize, Monomial)> = keep.iter().map(|&k| self.leads[k]).collect();
        // tail reduction; leads are untouched since no other lead divides them
        for k in 0..elems.len() {
            let current = elems[k].clone();
            let reduced = reduce_with(ring, &current, |pos, m| {
                leads
                    .iter()
                    .enumerate()
                    .find(|(l, (lp, lm))| *l != k && *lp == pos && lm.divides(m))
                    .map(|(l, (_, lm))| (&elems[l], *lm))
            });
            elems[k] = reduced.monic(ring);
        }
        sort_by_lead(ring, &mut elems);
        let gb = GroebnerBasis {
            ring: ring.clone(),
            rank: self.rank,
            elems,
        };
        #[cfg(debug_assertions)]
        if gb.elems.len() <= 60 {
            debug_assert!(gb.is_certified(), "Buchberger output failed its certificate");
        }
        gb
    }
}

/// Orders vectors by decreasing leading module term.
pub(crate) fn sort_by_lead(ring: &Ring, elems: &mut [FreeVector]) {
    elems.sort_by(|a, b| {
        let (pa, ta) = a.lead().expect("nonzero");
        let (pb, tb) = b.lead().expect("nonzero");
        pa.cmp(&pb).then_with(|| ring.cmp_mono(&tb.mono, &ta.mono))
    });
}

/// Full reduction with a caller-supplied divisor lookup returning a monic
/// reducer and its leading monomial.
fn reduce_with<'b, F>(ring: &Ring, v: &FreeVector, mut divisor: F) -> FreeVector
where
    F: FnMut(usize, &Monomial) -> Option<(&'b FreeVector, Monomial)>,
{
    let rank = v.rank();
    let mut work = v.clone();
    let mut rem: Vec<Vec<Term>> = vec![Vec::new(); rank];
    for pos in 0..rank {
        while let Some(t) = work.coord(pos).lead().copied() {
            match divisor(pos, &t.mono) {
                Some((g, lm)) => {
                    let q = lm.quotient_of(&t.mono).expect("divisor");
                    let c = ring.field().neg(t.coef);
                    work.add_scaled_from(pos, g, c, &q, ring);
                }
                None => {
                    rem[pos].push(t);
                    work.coords_mut()[pos].pop_lead();
                }
            }
        }
    }
    FreeVector::from_coords(
        rem.into_iter()
            .map(Poly::from_sorted_unchecked)
            .collect(),
    )
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elems(&self) -> &[FreeVector] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Remainder of `v` modulo the basis; zero exactly when `v` lies in the
    /// module.
    pub fn normal_form(&self, v: &FreeVector) -> FreeVector {
        reduce_with(&self.ring, v, |pos, m| {
            self.elems
                .iter()
                .find(|g| {
                    let (gp, gt) = g.lead().expect("nonzero");
                    gp == pos && gt.mono.divides(m)
                })
                .map(|g| (g, g.lead().unwrap().1.mono))
        })
    }

    pub fn contains(&self, v: &FreeVector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// For ideals: whether the basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1 && self.elems.iter().any(|g| g.coord(0).is_unit())
    }

    /// Whether the module is all of R^rank.
    pub fn is_whole_module(&self) -> bool {
        (0..self.rank).all(|i| {
            self.elems
                .iter()
                .any(|g| matches!(g.lead(), Some((p, t)) if p == i && t.mono.is_one()))
        })
    }

    /// Buchberger's criterion: leads are monic and every S-pair reduces to
    /// zero.
    pub fn is_certified(&self) -> bool {
        let ring = &self.ring;
        let leads: Vec<(usize, Term)> = self.elems.iter().map(|g| {
            let (p, t) = g.lead().expect("nonzero");
            (p, *t)
        }).collect();
        if leads.iter().any(|(_, t)| t.coef != 1) {
            return false;
        }
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let ((pi, ti), (pj, tj)) = (leads[i], leads[j]);
                if pi != pj {
                    continue;
                }
                let l = ti.mono.lcm(&tj.mono);
                let qi = ti.mono.quotient_of(&l).unwrap();
                let qj = tj.mono.quotient_of(&l).unwrap();
                let s = self.elems[i]
                    .mul_term(1, &qi, ring)
                    .add_scaled(&self.elems[j], ring.p() - 1, &qj, ring);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the module generated by `gens` in R^rank.
pub fn groebner_basis(ring: &Ring, rank: usize, gens: &[FreeVector], limits: &GbLimits) -> Result<GroebnerBasis> {
    let mut b = GbBuilder::new(ring, rank, limits);
    for g in gens {
        b.add(g)?;
    }
    b.complete()?;
    Ok(b.finish())
}

/// Gröbner basis of an ideal given by polynomial generators.
pub fn ideal_basis(ring: &Ring, gens: &[Poly], limits: &GbLimits) -> Result<GroebnerBasis> {
    let vs: Vec<FreeVector> = gens.iter().map(|f| FreeVector::from_coords(vec![f.clone()])).collect();
    groebner_basis(ring, 1, &vs, limits)
}

