//! Free resolutions of cyclic modules `R/J` and the chain map over the
//! surjection `R/J^[p] -> R/J`.

use super::syzygy::{minimize_generators, syzygies, AugmentedGb};
use super::GbLimits;
use crate::error::{Error, Result};
use crate::ring::{FreeVector, Poly, PolyMatrix, Ring};

/// `0 <- R <- R^b1 <- ... <- R^bs` with `maps[i]` the matrix of `A_{i+1}`
/// (`b_i x b_{i+1}`, `b_0 = 1`). Consecutive maps compose to zero and each
/// `A_{i+1}` generates the kernel of `A_i` (by construction from syzygies).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    maps: Vec<PolyMatrix>,
    complete: bool,
}

impl Resolution {
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// `A_i` for `1 <= i <= length`.
    pub fn map(&self, i: usize) -> &PolyMatrix {
        &self.maps[i - 1]
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Ranks `b_0 .. b_s`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![1];
        r.extend(self.maps.iter().map(PolyMatrix::cols));
        r
    }

    /// Whether the last map is injective, i.e. the resolution does not
    /// continue beyond the computed length.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Largest total degree of an entry of any map.
    pub fn max_entry_degree(&self) -> u32 {
        self.maps.iter().filter_map(PolyMatrix::max_degree).max().unwrap_or(0)
    }

    /// Checks `A_i A_{i+1} = 0` for all consecutive maps.
    pub fn is_complex(&self, ring: &Ring) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].mul(&w[1], ring).map(|m| m.is_zero()).unwrap_or(false))
    }
}

/// Resolution of `R/J` up to homological degree `length`, stopping early
/// once a map is injective. Each syzygy step keeps a greedily minimized
/// generating set, and unit entries are then split off as trivial
/// summands `R -u-> R`.
pub fn free_resolution(ring: &Ring, gens: &[Poly], length: usize, limits: &GbLimits) -> Result<Resolution> {
    let vs: Vec<FreeVector> = gens
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| FreeVector::from_coords(vec![f.clone()]))
        .collect();
    if vs.is_empty() {
        return Err(Error::InvalidArgument("resolution of R/(0) is not supported".into()));
    }
    if let Some(u) = vs.iter().find(|v| v.coord(0).is_unit()) {
        // R/J = 0
        let a1 = PolyMatrix::from_columns(1, &[u.monic(ring)]);
        return Ok(Resolution {
            maps: vec![a1],
            complete: true,
        });
    }
    let first = minimize_generators(ring, 1, &[], &vs, limits)?;
    let mut maps = vec![PolyMatrix::from_columns(1, &first)];
    let mut complete = false;
    while maps.len() < length.max(1) {
        let last = maps.last().unwrap();
        let cols = last.columns();
        let syz = syzygies(ring, last.rows(), &cols, limits)?;
        let syz = minimize_generators(ring, last.cols(), &[], &syz, limits)?;
        if syz.is_empty() {
            complete = true;
            break;
        }
        maps.push(PolyMatrix::from_columns(last.cols(), &syz));
    }
    if !complete && maps.len() == length {
        let last = maps.last().unwrap();
        complete = syzygies(ring, last.rows(), &last.columns(), limits)?.is_empty();
    }
    strip_units(ring, &mut maps);
    let res = Resolution { maps, complete };
    debug_assert!(res.is_complex(ring));
    Ok(res)
}

/// Splits off every unit entry of `A_i` for `i >= 2` together with the
/// matching basis changes of `A_{i-1}` and `A_{i+1}`.
fn strip_units(ring: &Ring, maps: &mut Vec<PolyMatrix>) {
    let fld = ring.field();
    let mut i = 1;
    while i < maps.len() {
        let Some((r, c)) = unit_entry(&maps[i]) else {
            i += 1;
            continue;
        };
        let a = maps[i].clone();
        let inv = fld.inv(a.get(r, c).constant_coef());
        let (rows, cols) = a.shape();

        // column operations clear row r; the inverse change acts on the
        // rows of the next map
        let mut a1 = a.clone();
        let ratios: Vec<Poly> = (0..cols).map(|j| ring.scale(a.get(r, j), inv)).collect();
        for j in (0..cols).filter(|&j| j != c) {
            for s in 0..rows {
                let v = ring.sub(a1.get(s, j), &ring.mul(&ratios[j], a.get(s, c)));
                a1.set(s, j, v);
            }
        }
        if let Some(next) = maps.get(i + 1) {
            let mut n1 = next.clone();
            for t in 0..next.cols() {
                let mut acc = next.get(c, t).clone();
                for j in (0..cols).filter(|&j| j != c) {
                    acc = ring.add(&acc, &ring.mul(&ratios[j], next.get(j, t)));
                }
                n1.set(c, t, acc);
            }
            maps[i + 1] = n1.remove_row(c);
        }

        // row operations clear column c; the inverse change acts on the
        // columns of the previous map
        let colc: Vec<Poly> = (0..rows).map(|s| ring.scale(a1.get(s, c), inv)).collect();
        let prev = maps[i - 1].clone();
        let mut p1 = prev.clone();
        for q in 0..prev.rows() {
            let mut acc = prev.get(q, r).clone();
            for s in (0..rows).filter(|&s| s != r) {
                acc = ring.add(&acc, &ring.mul(&colc[s], prev.get(q, s)));
            }
            p1.set(q, r, acc);
        }
        debug_assert!(p1.column(r).is_zero());
        maps[i - 1] = p1.remove_column(r);

        let mut a2 = a1.clone();
        for s in (0..rows).filter(|&s| s != r) {
            for j in 0..cols {
                let v = ring.sub(a2.get(s, j), &ring.mul(&colc[s], a1.get(r, j)));
                a2.set(s, j, v);
            }
        }
        maps[i] = a2.remove_row(r).remove_column(c);
        if maps[i].cols() == 0 {
            maps.truncate(i);
            break;
        }
        i = i.saturating_sub(1).max(1);
    }
}

fn unit_entry(m: &PolyMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| m.get(i, j).is_unit())
}

/// Chain maps `theta_0 = 1, theta_1, ..` with
/// `A_j theta_j = theta_{j-1} A_j^[p]`, lifted column by column through the
/// resolution; each square is asserted exactly.
pub fn lift_frobenius_chain(ring: &Ring, res: &Resolution, limits: &GbLimits) -> Result<Vec<PolyMatrix>> {
    let mut thetas = vec![PolyMatrix::identity(ring, 1)];
    for (j, a) in res.maps().iter().enumerate() {
        let rhs = thetas[j].mul(&a.frobenius(1, ring), ring)?;
        let aug = AugmentedGb::from_matrix(ring, a, limits)?;
        let mut cols = Vec::with_capacity(rhs.cols());
        for t in rhs.columns() {
            let x = aug.lift(&t).ok_or_else(|| {
                Error::Internal(format!("Frobenius chain map does not lift at degree {}", j + 1))
            })?;
            cols.push(x);
        }
        let theta = PolyMatrix::from_columns(a.cols(), &cols);
        if a.mul(&theta, ring)? != rhs {
            return Err(Error::Internal(format!("chain map square {} does not commute", j + 1)));
        }
        thetas.push(theta);
    }
    Ok(thetas)
}
