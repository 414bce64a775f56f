use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 16;

/// Dense exponent vector with cached total degree. Slots past `nvars` are
/// always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    degree: u32,
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
            nvars: nvars as u8,
        }
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().sum();
        m
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = exp;
        m.degree = exp;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..self.nvars as usize {
            m.exps[i] += other.exps[i];
        }
        m.degree += other.degree;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && (0..self.nvars as usize).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..self.nvars as usize {
            m.exps[i] -= self.exps[i];
        }
        m.degree -= self.degree;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut d = 0;
        for i in 0..self.nvars as usize {
            m.exps[i] = m.exps[i].max(other.exps[i]);
            d += m.exps[i];
        }
        m.degree = d;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Multiplies every exponent by `q` (the monomial part of a q-th power).
    pub fn scale_exps(&self, q: u32) -> Monomial {
        let mut m = *self;
        for i in 0..self.nvars as usize {
            m.exps[i] = m.exps[i].checked_mul(q).expect("exponent overflow");
        }
        m.degree = m.degree.checked_mul(q).expect("exponent overflow");
        m
    }

    /// Componentwise division with remainder by `q`: returns
    /// `(floor(a / q), a mod q)`.
    pub fn split(&self, q: u32) -> (Monomial, Monomial) {
        let mut quot = *self;
        let mut rem = *self;
        let (mut dq, mut dr) = (0, 0);
        for i in 0..self.nvars as usize {
            quot.exps[i] = self.exps[i] / q;
            rem.exps[i] = self.exps[i] % q;
            dq += quot.exps[i];
            dr += rem.exps[i];
        }
        quot.degree = dq;
        rem.degree = dr;
        (quot, rem)
    }

    /// Same exponents in a ring with `nvars` variables (new slots zero).
    pub fn widen(&self, nvars: usize) -> Monomial {
        assert!(nvars >= self.nvars as usize && nvars <= MAX_VARS);
        let mut m = *self;
        m.nvars = nvars as u8;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

/// Monomial orders on a polynomial ring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, x1 > x2 > ... > xn.
    #[default]
    DegRevLex,
    /// Lexicographic, x1 > x2 > ... > xn.
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for i in (0..a.nvars as usize).rev() {
                        if a.exps[i] != b.exps[i] {
                            return b.exps[i].cmp(&a.exps[i]);
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }

    /// Checked comparison that rejects monomials from different rings.
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars != b.nvars {
            return Err(Error::VariableCountMismatch(a.nvars(), b.nvars()));
        }
        Ok(self.cmp(a, b))
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "degrevlex" | "grevlex" => Some(MonomialOrder::DegRevLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }
}
