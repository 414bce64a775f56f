//! Prime fields F_p and small extensions F_{p^s} (the latter only for
//! evaluating F_p-polynomials at points over a larger field).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic modulo a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        Ok(Fp { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut k: u64) -> u32 {
        let mut r = 1 % self.p;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverting zero");
        self.pow(a, self.p as u64 - 2)
    }

    pub fn reduce_i64(self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }
}

/// Description of the field over which points are taken: F_p, or F_{p^s}
/// when `extension > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub extension: u32,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, extension: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        Fp::new(self.p as u64)?;
        if self.extension == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.extension)
    }
}

/// Element of F_{p^s}: coefficient vector of a polynomial in the generator,
/// of length `s`, lowest degree first.
pub type ExtElem = Vec<u32>;

/// F_{p^s} realised as F_p[t]/(m(t)) for the lexicographically first monic
/// irreducible m of degree s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfExt {
    base: Fp,
    degree: usize,
    /// Monic modulus, lowest degree first, length `degree + 1`.
    modulus: Vec<u32>,
}

impl GfExt {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        spec.validate()?;
        let base = Fp::new(spec.p as u64)?;
        let degree = spec.extension as usize;
        if spec.order() > 1 << 20 {
            return Err(Error::InvalidArgument(format!(
                "extension field of order {} is too large",
                spec.order()
            )));
        }
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            first_irreducible(base, degree)
        };
        Ok(GfExt {
            base,
            degree,
            modulus,
        })
    }

    pub fn base(&self) -> Fp {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u64 {
        (self.base.p() as u64).pow(self.degree as u32)
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.degree]
    }

    pub fn one(&self) -> ExtElem {
        self.embed(1)
    }

    pub fn embed(&self, c: u32) -> ExtElem {
        let mut e = self.zero();
        e[0] = c % self.base.p();
        e
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// The `index`-th element in base-p digit order; enumerates the field as
    /// `index` runs over `0..size()`.
    pub fn element(&self, mut index: u64) -> ExtElem {
        let p = self.base.p() as u64;
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = (index % p) as u32;
            index /= p;
        }
        e
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn scale(&self, a: &ExtElem, c: u32) -> ExtElem {
        a.iter().map(|&x| self.base.mul(x, c)).collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = self.base;
        let mut prod = vec![0u32; 2 * self.degree - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        for k in (self.degree..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..self.degree].iter().enumerate() {
                let idx = k - self.degree + i;
                prod[idx] = f.sub(prod[idx], f.mul(c, m));
            }
        }
        prod.truncate(self.degree);
        prod
    }

    pub fn pow(&self, a: &ExtElem, mut k: u64) -> ExtElem {
        let mut base = a.clone();
        let mut r = self.one();
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        r
    }
}

fn first_irreducible(f: Fp, degree: usize) -> Vec<u32> {
    let p = f.p() as u64;
    let count = p.pow(degree as u32);
    for idx in 0..count {
        let mut m = Vec::with_capacity(degree + 1);
        let mut i = idx;
        for _ in 0..degree {
            m.push((i % p) as u32);
            i /= p;
        }
        m.push(1);
        if is_irreducible(f, &m) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree at most deg/2.
fn is_irreducible(f: Fp, m: &[u32]) -> bool {
    let degree = m.len() - 1;
    let p = f.p() as u64;
    for d in 1..=degree / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut i = idx;
            for _ in 0..d {
                g.push((i % p) as u32);
                i /= p;
            }
            g.push(1);
            if poly_rem_is_zero(f, m, &g) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(f: Fp, a: &[u32], g: &[u32]) -> bool {
    let mut r = a.to_vec();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let idx = k - dg + i;
            r[idx] = f.sub(r[idx], f.mul(c, gi));
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}
