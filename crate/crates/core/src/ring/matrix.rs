use super::poly::{Poly, Ring};
use super::vector::FreeVector;
use crate::error::{Error, Result};

/// Dense row-major matrix of polynomials. A `rows x cols` matrix is a map
/// R^cols -> R^rows acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, all of rank `rows`.
    pub fn from_columns(rows: usize, columns: &[FreeVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, v) in columns.iter().enumerate() {
            assert_eq!(v.rank(), rows, "column rank mismatch");
            for i in 0..rows {
                m.set(i, j, v.coord(i).clone());
            }
        }
        m
    }

    /// 1 x n row of polynomials.
    pub fn row_of(polys: &[Poly]) -> Self {
        PolyMatrix {
            rows: 1,
            cols: polys.len(),
            entries: polys.to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, f: Poly) {
        self.entries[i * self.cols + j] = f;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> FreeVector {
        FreeVector::from_coords((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Largest total degree of an entry; `None` when all entries vanish.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix, ring: &Ring) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = ring.add(&acc, &ring.mul(a, b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &FreeVector, ring: &Ring) -> FreeVector {
        assert_eq!(self.cols, v.rank(), "matrix-vector shape mismatch");
        FreeVector::from_coords((0..self.rows).map(|i| v.dot(self.row(i), ring)).collect())
    }

    pub fn scale_poly(&self, f: &Poly, ring: &Ring) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|g| ring.mul(f, g)).collect(),
        }
    }

    pub fn neg(&self, ring: &Ring) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|g| ring.neg(g)).collect(),
        }
    }

    pub fn add(&self, other: &PolyMatrix, ring: &Ring) -> Result<PolyMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        })
    }

    /// Entrywise `p^e`-th powers, `A^[p^e]`.
    pub fn frobenius(&self, e: u32, ring: &Ring) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|f| ring.frobenius(f, e)).collect(),
        }
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack with different row counts".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Ok(Self::from_columns(self.rows, &cols))
    }

    /// Block diagonal matrix with `copies` copies of `self`.
    pub fn block_diag(&self, copies: usize) -> PolyMatrix {
        let mut m = Self::zeros(self.rows * copies, self.cols * copies);
        for c in 0..copies {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    m.set(c * self.rows + i, c * self.cols + j, self.get(i, j).clone());
                }
            }
        }
        m
    }

    pub fn remove_row(&self, r: usize) -> PolyMatrix {
        let rows: Vec<Vec<Poly>> = (0..self.rows)
            .filter(|&i| i != r)
            .map(|i| self.row(i).to_vec())
            .collect();
        let mut m = Self::from_rows(rows).expect("rectangular");
        if m.rows == 0 {
            m.cols = self.cols;
        }
        m
    }

    pub fn remove_column(&self, c: usize) -> PolyMatrix {
        let cols: Vec<FreeVector> = (0..self.cols).filter(|&j| j != c).map(|j| self.column(j)).collect();
        Self::from_columns(self.rows, &cols)
    }

    /// Drops columns that are entirely zero.
    pub fn without_zero_columns(&self) -> PolyMatrix {
        let cols: Vec<FreeVector> = self.columns().into_iter().filter(|c| !c.is_zero()).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn format(&self, ring: &Ring) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|f| ring.format(f)).collect();
            s.push('[');
            s.push_str(&row.join(", "));
            s.push_str("]\n");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    #[test]
    fn multiply_and_transpose() {
        let r = Ring::new(2, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let x = r.var(0);
        let y = r.var(1);
        let a = PolyMatrix::from_rows(vec![vec![x.clone(), r.one()], vec![r.zero(), y.clone()]]).unwrap();
        let sq = a.mul(&a, &r).unwrap();
        assert_eq!(sq.get(0, 0), &r.mul(&x, &x));
        assert_eq!(sq.get(0, 1), &r.add(&x, &y));
        assert_eq!(a.transpose().get(1, 0), &r.one());
        let f = a.frobenius(1, &r);
        assert_eq!(f.get(0, 0), &r.mul(&x, &x));
        assert_eq!(f.get(1, 1), &r.mul(&y, &y));
        assert!(a.mul(&PolyMatrix::zeros(3, 1), &r).is_err());
    }

    #[test]
    fn remove_row_keeps_column_count() {
        let m = PolyMatrix::zeros(1, 3);
        let r = m.remove_row(0);
        assert_eq!(r.shape(), (0, 3));
    }
}
