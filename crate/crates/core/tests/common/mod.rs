#![allow(dead_code)]

use lcsupport::frobroot::SubmoduleGens;
use lcsupport::ring::{FreeVector, MonomialOrder, Poly, PolyMatrix, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(p: u64, n: usize) -> Ring {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ring::new(p, &refs, MonomialOrder::DegRevLex).unwrap()
}

/// At most `terms` random terms of total degree `<= deg`.
pub fn poly(r: &Ring, rng: &mut ChaCha8Rng, terms: usize, deg: u32) -> Poly {
    let n = r.nvars();
    let mut raw = Vec::new();
    for _ in 0..rng.gen_range(0..=terms) {
        let mut e = vec![0u32; n];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        raw.push((rng.gen_range(1..r.p() as i64), e));
    }
    r.normalize(&raw).unwrap()
}

pub fn vector(r: &Ring, rng: &mut ChaCha8Rng, rank: usize, terms: usize, deg: u32) -> FreeVector {
    FreeVector::from_coords((0..rank).map(|_| poly(r, rng, terms, deg)).collect())
}

pub fn submodule(r: &Ring, rng: &mut ChaCha8Rng, rank: usize, count: usize, terms: usize, deg: u32) -> SubmoduleGens {
    SubmoduleGens::new(rank, (0..count).map(|_| vector(r, rng, rank, terms, deg)).collect()).unwrap()
}

pub fn matrix(r: &Ring, rng: &mut ChaCha8Rng, rows: usize, cols: usize, terms: usize, deg: u32) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, poly(r, rng, terms, deg));
        }
    }
    m
}

/// Each monomial of degree `<= deg` with probability 1/2 and a random
/// nonzero coefficient.
pub fn dense_poly(r: &Ring, rng: &mut ChaCha8Rng, deg: u32) -> Poly {
    fn monos(n: usize, deg: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for d in 0..=deg {
            for mut rest in monos(n - 1, deg - d) {
                rest.insert(0, d);
                out.push(rest);
            }
        }
        out
    }
    let mut raw = Vec::new();
    for m in monos(r.nvars(), deg) {
        if rng.gen_bool(0.5) {
            raw.push((rng.gen_range(1..r.p() as i64), m));
        }
    }
    r.normalize(&raw).unwrap()
}

pub fn dense_matrix(r: &Ring, rng: &mut ChaCha8Rng, rows: usize, cols: usize, deg: u32) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, dense_poly(r, rng, deg));
        }
    }
    m
}
