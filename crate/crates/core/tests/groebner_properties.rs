mod common;

use std::collections::HashMap;

use common::*;
use lcsupport::frobroot::SubmoduleGens;
use lcsupport::groebner::{
    fitting_ideal, free_resolution, groebner_basis, ideal_basis, lift_frobenius_chain, module_contains, modules_equal,
    presentation_matrix, syzygies, GbLimits,
};
use lcsupport::ring::{FreeVector, Fp, Poly, Ring};
use rand::Rng;

#[test]
fn random_bases_are_certified() {
    let lim = GbLimits::default();
    let mut rng = rng(0x6b_0001);
    for case in 0..60 {
        let p = [2u64, 3, 5, 7][case % 4];
        let r = ring(p, 3);
        let rank = rng.gen_range(1..=2);
        let gens: Vec<FreeVector> = (0..rng.gen_range(1..=4)).map(|_| vector(&r, &mut rng, rank, 4, 3)).collect();
        let gb = groebner_basis(&r, rank, &gens, &lim).unwrap();
        assert!(gb.is_certified(), "case {case}");
        for g in &gens {
            assert!(gb.contains(g));
            assert!(gb.normal_form(g).is_zero());
        }
    }
}

fn monomials_upto(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for d in 0..=deg {
        for mut rest in monomials_upto(n - 1, deg - d) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

/// Basis of the kernel of a sparse matrix over F_p given by columns.
fn nullspace(f: Fp, cols: &[HashMap<usize, u32>], nrows: usize) -> Vec<Vec<u32>> {
    let ncols = cols.len();
    let mut m = vec![vec![0u32; ncols]; nrows];
    for (j, c) in cols.iter().enumerate() {
        for (&i, &v) in c {
            m[i][j] = v;
        }
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..nrows).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, pr);
        let inv = f.inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..nrows {
            if i != row && m[i][col] != 0 {
                let c = m[i][col];
                for j in 0..ncols {
                    let v = f.mul(c, m[row][j]);
                    m[i][j] = f.sub(m[i][j], v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// All syzygies with coefficient degrees `<= d`, by linear algebra.
fn brute_force_syzygies(r: &Ring, gens: &[FreeVector], d: u32) -> Vec<FreeVector> {
    let monos = monomials_upto(r.nvars(), d);
    let mut index: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    let mut cols = Vec::new();
    let mut unknowns = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        for m in &monos {
            let prod = g.mul_poly(&r.monomial(m), r);
            let mut col = HashMap::new();
            for (pos, f) in prod.coords().iter().enumerate() {
                for t in f.terms() {
                    let n = index.len();
                    let row = *index.entry((pos, t.mono.exps().to_vec())).or_insert(n);
                    col.insert(row, t.coef);
                }
            }
            cols.push(col);
            unknowns.push((i, m.clone()));
        }
    }
    nullspace(r.field(), &cols, index.len())
        .into_iter()
        .map(|v| {
            let mut coords = vec![Poly::zero(); gens.len()];
            for (k, &c) in v.iter().enumerate() {
                if c != 0 {
                    let (i, m) = &unknowns[k];
                    coords[*i] = r.add(&coords[*i], &r.scale(&r.monomial(m), c));
                }
            }
            FreeVector::from_coords(coords)
        })
        .collect()
}

#[test]
fn syzygies_contain_every_low_degree_relation() {
    let lim = GbLimits::default();
    let mut rng = rng(0x5a2_0001);
    for case in 0..25 {
        let p = [2u64, 3][case % 2];
        let r = ring(p, 2);
        let rank = rng.gen_range(1..=2);
        let k = rng.gen_range(2..=4);
        let gens: Vec<FreeVector> = (0..k).map(|_| vector(&r, &mut rng, rank, 3, 2)).collect();
        let syz = syzygies(&r, rank, &gens, &lim).unwrap();
        for s in &syz {
            let mut acc = FreeVector::zero(rank);
            for (c, g) in s.coords().iter().zip(&gens) {
                acc = acc.add(&g.mul_poly(c, &r), &r);
            }
            assert!(acc.is_zero(), "case {case}: returned vector is not a syzygy");
        }
        let module = SubmoduleGens::new(k, syz).unwrap();
        let brute = SubmoduleGens::new(k, brute_force_syzygies(&r, &gens, 3)).unwrap();
        assert!(module_contains(&r, &module, &brute, &lim).unwrap(), "case {case}");
    }
}

#[test]
fn resolutions_are_exact_complexes() {
    let lim = GbLimits::default();
    let mut rng = rng(0x4e5_0001);
    let mut checked = 0;
    for case in 0..40 {
        let p = [2u64, 3, 5][case % 3];
        let r = ring(p, 3);
        let gens: Vec<Poly> = (0..rng.gen_range(1..=3))
            .map(|_| poly(&r, &mut rng, 3, 3))
            .filter(|f| !f.is_zero())
            .collect();
        if gens.is_empty() || gens.iter().any(Poly::is_constant) {
            continue;
        }
        let res = free_resolution(&r, &gens, 4, &lim).unwrap();
        assert!(res.is_complete(), "case {case}");
        assert!(res.is_complex(&r), "case {case}");
        let ranks = res.ranks();
        let euler: i64 = ranks.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(euler, 0, "case {case}: ranks {ranks:?}");
        for i in 1..res.length() {
            let a = res.map(i);
            let ker = SubmoduleGens::new(a.cols(), syzygies(&r, a.rows(), &a.columns(), &lim).unwrap()).unwrap();
            assert!(modules_equal(&r, &ker, &SubmoduleGens::image(res.map(i + 1)), &lim).unwrap(), "case {case}");
        }
        let thetas = lift_frobenius_chain(&r, &res, &lim).unwrap();
        for j in 1..thetas.len() {
            let lhs = res.map(j).mul(&thetas[j], &r).unwrap();
            let rhs = thetas[j - 1].mul(&res.map(j).frobenius(1, &r), &r).unwrap();
            assert_eq!(lhs, rhs);
        }
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} resolutions checked");
}

fn ideal_gb(r: &Ring, gens: &[Poly]) -> Vec<FreeVector> {
    if gens.is_empty() {
        return Vec::new();
    }
    ideal_basis(r, gens, &GbLimits::default()).unwrap().elems().to_vec()
}

#[test]
fn fitting_ideal_ignores_redundant_generators() {
    let lim = GbLimits::default();
    let mut rng = rng(0xf17_0001);
    for case in 0..25 {
        let p = [2u64, 3][case % 2];
        let r = ring(p, 2);
        let beta = 2;
        let cols = rng.gen_range(1..=3);
        let a = matrix(&r, &mut rng, beta, cols, 3, 2);
        let basis: Vec<FreeVector> = (0..beta).map(|i| FreeVector::unit(&r, beta, i)).collect();
        let w = presentation_matrix(&r, &basis, &a, &lim).unwrap();
        let mut more = basis.clone();
        more.push(vector(&r, &mut rng, beta, 3, 2));
        let w2 = presentation_matrix(&r, &more, &a, &lim).unwrap();
        let f1 = fitting_ideal(&r, &w, &lim).unwrap();
        let f2 = fitting_ideal(&r, &w2, &lim).unwrap();
        assert_eq!(ideal_gb(&r, &f1), ideal_gb(&r, &f2), "case {case}");
    }
}
