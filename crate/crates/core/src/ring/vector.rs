use super::monomial::Monomial;
use super::poly::{Poly, Ring, Term};

/// Element of a free module R^rank.
///
/// Module terms are ordered position-over-term with coordinate 0 highest, so
/// the leading term is the leading term of the first nonzero coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeVector {
    coords: Vec<Poly>,
}

impl FreeVector {
    pub fn zero(rank: usize) -> Self {
        FreeVector {
            coords: vec![Poly::zero(); rank],
        }
    }

    pub fn unit(ring: &Ring, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = ring.one();
        v
    }

    pub fn from_coords(coords: Vec<Poly>) -> Self {
        FreeVector { coords }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    #[inline]
    pub fn coord(&self, i: usize) -> &Poly {
        &self.coords[i]
    }

    pub fn coords_mut(&mut self) -> &mut [Poly] {
        &mut self.coords
    }

    pub fn into_coords(self) -> Vec<Poly> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    /// Position and term of the leading module term.
    #[inline]
    pub fn lead(&self) -> Option<(usize, &Term)> {
        self.coords
            .iter()
            .enumerate()
            .find_map(|(i, f)| f.lead().map(|t| (i, t)))
    }

    /// Largest total degree over all coordinates.
    pub fn degree(&self) -> Option<u32> {
        self.coords.iter().filter_map(Poly::degree).max()
    }

    pub fn num_terms(&self) -> usize {
        self.coords.iter().map(Poly::len).sum()
    }

    pub fn add(&self, other: &FreeVector, ring: &Ring) -> FreeVector {
        self.add_scaled(other, 1, &ring.one_mono(), ring)
    }

    pub fn sub(&self, other: &FreeVector, ring: &Ring) -> FreeVector {
        self.add_scaled(other, ring.p() - 1, &ring.one_mono(), ring)
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &FreeVector, c: u32, m: &Monomial, ring: &Ring) -> FreeVector {
        debug_assert_eq!(self.rank(), other.rank());
        FreeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| ring.add_scaled(a, c, m, b))
                .collect(),
        }
    }

    /// In-place `self += c * m * other`, touching only coordinates `from..`.
    pub fn add_scaled_from(&mut self, from: usize, other: &FreeVector, c: u32, m: &Monomial, ring: &Ring) {
        for i in from..self.coords.len() {
            if !other.coords[i].is_zero() {
                self.coords[i] = ring.add_scaled(&self.coords[i], c, m, &other.coords[i]);
            }
        }
    }

    pub fn scale(&self, c: u32, ring: &Ring) -> FreeVector {
        FreeVector {
            coords: self.coords.iter().map(|f| ring.scale(f, c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Poly, ring: &Ring) -> FreeVector {
        FreeVector {
            coords: self.coords.iter().map(|g| ring.mul(f, g)).collect(),
        }
    }

    pub fn mul_term(&self, c: u32, m: &Monomial, ring: &Ring) -> FreeVector {
        FreeVector {
            coords: self.coords.iter().map(|g| ring.mul_term(g, c, m)).collect(),
        }
    }

    pub fn neg(&self, ring: &Ring) -> FreeVector {
        self.scale(ring.p() - 1, ring)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, ring: &Ring) -> FreeVector {
        match self.lead() {
            Some((_, t)) if t.coef != 1 => self.scale(ring.field().inv(t.coef), ring),
            _ => self.clone(),
        }
    }

    /// The bracket power `v^[p^e]`.
    pub fn frobenius(&self, e: u32, ring: &Ring) -> FreeVector {
        FreeVector {
            coords: self.coords.iter().map(|f| ring.frobenius(f, e)).collect(),
        }
    }

    pub fn concat(&self, other: &FreeVector) -> FreeVector {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        FreeVector { coords }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> FreeVector {
        FreeVector {
            coords: self.coords[range].to_vec(),
        }
    }

    /// Dot product with a row of polynomials.
    pub fn dot(&self, row: &[Poly], ring: &Ring) -> Poly {
        debug_assert_eq!(row.len(), self.rank());
        let mut acc = Poly::zero();
        for (a, b) in row.iter().zip(&self.coords) {
            if !a.is_zero() && !b.is_zero() {
                acc = ring.add(&acc, &ring.mul(a, b));
            }
        }
        acc
    }

    pub fn format(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self.coords.iter().map(|f| ring.format(f)).collect();
        format!("({})", parts.join(", "))
    }
}
