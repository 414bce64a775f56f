//! Seeded random generating morphisms, timed end to end.
//!
//! Instance `id` draws from `ChaCha8Rng::seed_from_u64(seed + id)`. Every
//! entry of `U` (and of `A` when requested) includes each monomial of
//! degree `<= deg` independently with probability 1/2, with a uniform
//! nonzero coefficient. Monomials are visited in graded lexicographic
//! exponent order.

use std::time::Instant;

use lcsupport::fsupport::{support_ideal, GeneratingMorphism, SupportConfig};
use lcsupport::ring::{Poly, PolyMatrix, Ring};
use lcsupport::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{CliError, Flags};

pub const CSV_HEADER: &str = "id,seed,p,n,beta,deg,iters,gens,time_ms,outcome";

#[derive(Clone, Debug)]
pub struct BenchParams {
    pub p: u64,
    pub n: usize,
    pub beta: usize,
    pub deg: u32,
    pub count: usize,
    pub seed: u64,
    pub random_a: bool,
    pub zero_u: bool,
    pub cfg: SupportConfig,
}

impl BenchParams {
    pub fn from_flags(flags: &Flags) -> Result<Self, CliError> {
        let params = BenchParams {
            p: flags.p.unwrap_or(2),
            n: flags.n.unwrap_or(5),
            beta: flags.beta.unwrap_or(2),
            deg: flags.deg.unwrap_or(4),
            count: flags.count.unwrap_or(100),
            seed: flags.seed.unwrap_or(0),
            random_a: flags.random_a,
            zero_u: flags.zero_u,
            cfg: flags.support_config(),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.count == 0 {
            return Err(CliError::Usage("--count must be at least 1".into()));
        }
        if self.beta == 0 {
            return Err(CliError::Usage("--beta must be at least 1".into()));
        }
        Ring::standard(self.p, self.n)?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: usize,
    pub seed: u64,
    pub p: u64,
    pub n: usize,
    pub beta: usize,
    pub deg: u32,
    pub iters: usize,
    /// Dimension of the stable `L` as an F_p-space.
    pub gens: usize,
    pub time_ms: f64,
    pub outcome: String,
}

fn monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, deg, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
    out
}

pub fn random_poly(ring: &Ring, monos: &[Vec<u32>], rng: &mut ChaCha8Rng) -> Poly {
    let p = ring.p() as i64;
    let mut raw = Vec::new();
    for m in monos {
        if rng.gen_bool(0.5) {
            raw.push((rng.gen_range(1..p), m.clone()));
        }
    }
    ring.normalize(&raw).expect("exponent vectors match the ring")
}

fn random_matrix(ring: &Ring, rows: usize, cols: usize, monos: &[Vec<u32>], rng: &mut ChaCha8Rng) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_poly(ring, monos, rng));
        }
    }
    m
}

/// The generating morphism of instance `id`.
pub fn instance(params: &BenchParams, id: usize) -> GeneratingMorphism {
    let ring = Ring::standard(params.p, params.n).expect("validated");
    let monos = monomials(params.n, params.deg);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(id as u64));
    let u = if params.zero_u {
        PolyMatrix::zeros(params.beta, params.beta)
    } else {
        random_matrix(&ring, params.beta, params.beta, &monos, &mut rng)
    };
    let a = if params.random_a {
        random_matrix(&ring, params.beta, params.beta, &monos, &mut rng)
    } else {
        PolyMatrix::zeros(params.beta, 0)
    };
    GeneratingMorphism::new(&ring, a, u).expect("shapes agree")
}

fn outcome_of(e: &Error) -> &'static str {
    match e {
        Error::ResourceLimit { .. } => "resource-limit",
        Error::NonTermination { .. } => "non-termination",
        Error::DegreeBound { .. } => "degree-bound",
        _ => "error",
    }
}

pub fn run_instance(params: &BenchParams, id: usize) -> BenchRow {
    let gm = instance(params, id);
    let start = Instant::now();
    let result = (|| -> lcsupport::Result<(usize, usize, &'static str)> {
        if params.random_a && !gm.is_well_defined(&params.cfg.limits)? {
            return Ok((0, 0, "ill-defined"));
        }
        let rep = support_ideal(&gm, &params.cfg)?;
        let outcome = if rep.iteration.stable.is_zero() { "zero-module" } else { "ok" };
        Ok((rep.iterations(), rep.iteration.stable.dim(), outcome))
    })();
    let time_ms = start.elapsed().as_secs_f64() * 1000.0;
    let (iters, gens, outcome) = match result {
        Ok(t) => t,
        Err(e) => (0, 0, outcome_of(&e)),
    };
    BenchRow {
        id,
        seed: params.seed.wrapping_add(id as u64),
        p: params.p,
        n: params.n,
        beta: params.beta,
        deg: params.deg,
        iters,
        gens,
        time_ms: (time_ms * 1000.0).round() / 1000.0,
        outcome: outcome.to_string(),
    }
}

/// Runs all instances on the rayon pool; rows come back in id order.
pub fn run_bench(params: &BenchParams) -> Vec<BenchRow> {
    (0..params.count).into_par_iter().map(|id| run_instance(params, id)).collect()
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration() {
        let m = monomials(2, 2);
        assert_eq!(m, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(5, 4).len(), 126);
    }

    #[test]
    fn instances_are_reproducible() {
        let params = BenchParams {
            p: 3,
            n: 2,
            beta: 2,
            deg: 2,
            count: 3,
            seed: 9,
            random_a: false,
            zero_u: false,
            cfg: SupportConfig::default(),
        };
        assert_eq!(instance(&params, 1), instance(&params, 1));
        assert_ne!(instance(&params, 1), instance(&params, 2));
    }
}
