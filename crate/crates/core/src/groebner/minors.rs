//! Ideals of maximal minors and presentation pruning.

use std::collections::HashMap;

use super::GbLimits;
use crate::error::{Error, Result};
use crate::ring::{Poly, PolyMatrix, Ring};

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Generators of the ideal of `k x k` minors of a matrix with `k` rows.
///
/// Minors are built by Laplace expansion along successive rows, memoized
/// over column subsets. `k = 0` gives the unit ideal; fewer than `k`
/// columns give the zero ideal (an empty generator list). Zero minors are
/// dropped and the rest are made monic and deduplicated.
pub fn minors_ideal(ring: &Ring, w: &PolyMatrix, k: usize, limits: &GbLimits) -> Result<Vec<Poly>> {
    if w.rows() != k {
        return Err(Error::Shape(format!("maximal minors of size {k} of a matrix with {} rows", w.rows())));
    }
    if k == 0 {
        return Ok(vec![ring.one()]);
    }
    let n = w.cols();
    if n < k {
        return Ok(Vec::new());
    }
    let total: u128 = (1..=k).map(|r| binomial(n, r)).sum();
    if total > limits.max_minor_subsets as u128 {
        return Err(Error::resource(
            "minors",
            format!("{total} column subsets for {k}x{k} minors of a {k}x{n} matrix"),
        ));
    }
    let mut level: HashMap<Vec<usize>, Poly> = (0..n)
        .filter(|&c| !w.get(0, c).is_zero())
        .map(|c| (vec![c], w.get(0, c).clone()))
        .collect();
    for r in 1..k {
        let mut next: HashMap<Vec<usize>, Poly> = HashMap::new();
        for subset in subsets(n, r + 1) {
            let mut acc = Poly::zero();
            for (t, &c) in subset.iter().enumerate() {
                let a = w.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let mut rest = subset.clone();
                rest.remove(t);
                if let Some(m) = level.get(&rest) {
                    let term = ring.mul(a, m);
                    acc = if (r + t) % 2 == 0 {
                        ring.add(&acc, &term)
                    } else {
                        ring.sub(&acc, &term)
                    };
                }
            }
            if !acc.is_zero() {
                next.insert(subset, acc);
            }
        }
        level = next;
    }
    let mut keys: Vec<&Vec<usize>> = level.keys().collect();
    keys.sort();
    let mut out: Vec<Poly> = Vec::new();
    for key in keys {
        let m = ring.monic(&level[key]);
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Removes trivial parts of a presentation without changing its cokernel up
/// to isomorphism: every unit entry eliminates its row and column, zero
/// columns are dropped, and repeated columns are kept once.
pub fn prune_presentation(ring: &Ring, w: &PolyMatrix) -> PolyMatrix {
    let mut m = w.without_zero_columns();
    while let Some((r, c)) = find_unit(&m) {
        let u = m.get(r, c).constant_coef();
        let inv = ring.field().inv(u);
        let pivot_col = m.column(c);
        let mut next = PolyMatrix::zeros(m.rows() - 1, m.cols() - 1);
        for (ni, i) in (0..m.rows()).filter(|&i| i != r).enumerate() {
            let factor = ring.scale(pivot_col.coord(i), inv);
            for (nj, j) in (0..m.cols()).filter(|&j| j != c).enumerate() {
                let v = ring.sub(m.get(i, j), &ring.mul(&factor, m.get(r, j)));
                next.set(ni, nj, v);
            }
        }
        m = next.without_zero_columns();
    }
    let mut seen: Vec<crate::ring::FreeVector> = Vec::new();
    for col in m.columns() {
        if !seen.contains(&col) {
            seen.push(col);
        }
    }
    PolyMatrix::from_columns(m.rows(), &seen)
}

fn find_unit(m: &PolyMatrix) -> Option<(usize, usize)> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j).is_unit() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Rank over the fraction field, by fraction-free (Bareiss) elimination with
/// exact polynomial division.
pub fn generic_rank(ring: &Ring, w: &PolyMatrix) -> usize {
    let mut a: Vec<Vec<Poly>> = (0..w.rows()).map(|i| w.row(i).to_vec()).collect();
    let rows = w.rows();
    let cols = w.cols();
    let mut prev = ring.one();
    let mut rank = 0;
    while rank < rows && rank < cols {
        // sparsest remaining pivot
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, f) in row.iter().enumerate().skip(rank) {
                if !f.is_zero() && best.is_none_or(|(_, _, s)| f.len() < s) {
                    best = Some((i, j, f.len()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        let piv = a[rank][rank].clone();
        for i in rank + 1..rows {
            let lead = a[i][rank].clone();
            for j in rank + 1..cols {
                let v = ring.sub(&ring.mul(&piv, &a[i][j]), &ring.mul(&lead, &a[rank][j]));
                a[i][j] = ring
                    .div_exact(&v, &prev)
                    .expect("Bareiss division is exact");
            }
            a[i][rank] = Poly::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Generators of the 0-th Fitting ideal of `Coker w`: the presentation is
/// pruned, a deficient generic rank short-circuits to the zero ideal, and
/// otherwise the maximal minors are expanded.
pub fn fitting_ideal(ring: &Ring, w: &PolyMatrix, limits: &GbLimits) -> Result<Vec<Poly>> {
    let m = prune_presentation(ring, w);
    let k = m.rows();
    if k == 0 {
        return Ok(vec![ring.one()]);
    }
    if m.cols() < k || generic_rank(ring, &m) < k {
        return Ok(Vec::new());
    }
    minors_ideal(ring, &m, k, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn ring() -> Ring {
        Ring::new(2, &["x", "y"], MonomialOrder::DegRevLex).unwrap()
    }

    fn mat(r: &Ring, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_minors() {
        let r = ring();
        let lim = GbLimits::default();
        assert_eq!(minors_ideal(&r, &mat(&r, &[&["x"]]), 1, &lim).unwrap(), vec![r.var(0)]);
        let d = minors_ideal(&r, &mat(&r, &[&["x", "0"], &["0", "y"]]), 2, &lim).unwrap();
        assert_eq!(d, vec![r.parse("x*y").unwrap()]);
        assert!(minors_ideal(&r, &PolyMatrix::zeros(1, 0), 1, &lim).unwrap().is_empty());
        assert_eq!(minors_ideal(&r, &PolyMatrix::zeros(0, 3), 0, &lim).unwrap(), vec![r.one()]);
    }

    #[test]
    fn three_by_four_against_cofactor_sum() {
        let r = Ring::new(5, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let m = mat(
            &r,
            &[&["x", "1", "y", "0"], &["y", "x", "1", "x*y"], &["1", "0", "x", "y"]],
        );
        let got = minors_ideal(&r, &m, 3, &GbLimits::default()).unwrap();
        // columns {0,1,2}: x(x^2 - 0) - 1(xy - 1) + y(0 - x) = x^3 - 2xy + 1
        assert!(got.contains(&r.parse("x^3 - 2*x*y + 1").unwrap()));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets(2, 3).is_empty());
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn pruning_keeps_fitting_ideal() {
        let r = Ring::new(3, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let w = mat(&r, &[&["1", "x", "y"], &["y", "x^2", "0"]]);
        let p = prune_presentation(&r, &w);
        assert_eq!(p.rows(), 1);
        let full = minors_ideal(&r, &w, 2, &GbLimits::default()).unwrap();
        let pruned = minors_ideal(&r, &p, 1, &GbLimits::default()).unwrap();
        let a = super::super::ideal_basis(&r, &full, &GbLimits::default()).unwrap();
        let b = super::super::ideal_basis(&r, &pruned, &GbLimits::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generic_rank_detects_dependence() {
        let r = ring();
        assert_eq!(generic_rank(&r, &mat(&r, &[&["x", "y"], &["x^2", "x*y"]])), 1);
        assert_eq!(generic_rank(&r, &mat(&r, &[&["x", "y"], &["y", "x"]])), 2);
        assert_eq!(generic_rank(&r, &PolyMatrix::zeros(2, 2)), 0);
        let w = mat(&r, &[&["x", "y"], &["x^2", "x*y"]]);
        assert!(fitting_ideal(&r, &w, &GbLimits::default()).unwrap().is_empty());
    }
}
