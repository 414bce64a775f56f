use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::field::{ExtElem, Fp, GfExt};
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coef: u32,
}

/// Sparse polynomial; terms strictly decreasing in the ring's monomial
/// order, all coefficients nonzero. Only meaningful together with the
/// [`Ring`] that built it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.is_unit()
    }

    pub fn constant_coef(&self) -> u32 {
        match self.terms.last() {
            Some(t) if t.mono.is_one() => t.coef,
            _ => 0,
        }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<Term>) -> Self {
        Poly { terms }
    }

    pub(crate) fn pop_lead(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

/// Polynomial ring F_p[x1..xn] with a fixed monomial order and variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    field: Fp,
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(p: u64, names: &[&str], order: MonomialOrder) -> Result<Self> {
        Self::with_names(p, names.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn with_names(p: u64, names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        let field = Fp::new(p)?;
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidArgument(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("duplicate variable {n}")));
            }
        }
        Ok(Ring {
            field,
            names,
            order,
        })
    }

    /// Ring with variables x1..xn.
    pub fn standard(p: u64, nvars: usize) -> Result<Self> {
        let names = (1..=nvars).map(|i| format!("x{i}")).collect();
        Self::with_names(p, names, MonomialOrder::DegRevLex)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring {
            order,
            ..self.clone()
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn compare_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != self.nvars() {
            return Err(Error::VariableCountMismatch(a.nvars(), self.nvars()));
        }
        self.order.compare(a, b)
    }

    pub fn one_mono(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Poly {
        self.term(self.field.reduce_i64(c), self.one_mono())
    }

    pub fn term(&self, coef: u32, mono: Monomial) -> Poly {
        let coef = coef % self.p();
        if coef == 0 {
            Poly::zero()
        } else {
            Poly {
                terms: vec![Term { mono, coef }],
            }
        }
    }

    pub fn var(&self, i: usize) -> Poly {
        self.term(1, Monomial::var(self.nvars(), i, 1))
    }

    pub fn monomial(&self, exps: &[u32]) -> Poly {
        assert_eq!(exps.len(), self.nvars());
        self.term(1, Monomial::from_exps(exps))
    }

    /// Builds a polynomial from integer-coefficient terms: reduces mod p,
    /// merges equal monomials, drops zeros and sorts.
    pub fn normalize(&self, raw: &[(i64, Vec<u32>)]) -> Result<Poly> {
        let mut terms = Vec::with_capacity(raw.len());
        for (c, e) in raw {
            if e.len() != self.nvars() {
                return Err(Error::VariableCountMismatch(e.len(), self.nvars()));
            }
            terms.push(Term {
                mono: Monomial::from_exps(e),
                coef: self.field.reduce_i64(*c),
            });
        }
        Ok(self.from_terms(terms))
    }

    /// Sorts, merges and drops zero coefficients. Coefficients must already
    /// lie in `0..p`.
    pub fn from_terms(&self, mut terms: Vec<Term>) -> Poly {
        let order = self.order;
        terms.sort_unstable_by(|a, b| order.cmp(&b.mono, &a.mono));
        let f = self.field;
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coef = f.add(last.coef, t.coef),
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0);
        Poly { terms: out }
    }

    pub fn is_normalized(&self, f: &Poly) -> bool {
        f.terms.iter().all(|t| t.coef != 0 && t.coef < self.p() && t.mono.nvars() == self.nvars())
            && f
                .terms
                .windows(2)
                .all(|w| self.cmp_mono(&w[0].mono, &w[1].mono) == Ordering::Greater)
    }

    /// `f + c * m * g`, the workhorse of reduction.
    pub fn add_scaled(&self, f: &Poly, c: u32, m: &Monomial, g: &Poly) -> Poly {
        if c == 0 || g.is_zero() {
            return f.clone();
        }
        let fld = self.field;
        let order = self.order;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &f.terms;
        let b = &g.terms;
        while i < a.len() && j < b.len() {
            let bm = b[j].mono.mul(m);
            match order.cmp(&a[i].mono, &bm) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: bm,
                        coef: fld.mul(c, b[j].coef),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = fld.add(a[i].coef, fld.mul(c, b[j].coef));
                    if s != 0 {
                        out.push(Term { mono: bm, coef: s });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push(Term {
                mono: t.mono.mul(m),
                coef: fld.mul(c, t.coef),
            });
        }
        Poly { terms: out }
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, 1, &self.one_mono(), g)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, self.p() - 1, &self.one_mono(), g)
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        self.scale(f, self.p() - 1)
    }

    pub fn scale(&self, f: &Poly, c: u32) -> Poly {
        let c = c % self.p();
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            terms: f
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono,
                    coef: self.field.mul(t.coef, c),
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, f: &Poly, c: u32, m: &Monomial) -> Poly {
        let c = c % self.p();
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            terms: f
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(m),
                    coef: self.field.mul(t.coef, c),
                })
                .collect(),
        }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        if f.len() == 1 {
            return self.mul_term(g, f.terms[0].coef, &f.terms[0].mono);
        }
        if g.len() == 1 {
            return self.mul_term(f, g.terms[0].coef, &g.terms[0].mono);
        }
        let mut terms = Vec::with_capacity(f.len() * g.len());
        for a in &f.terms {
            for b in &g.terms {
                terms.push(Term {
                    mono: a.mono.mul(&b.mono),
                    coef: self.field.mul(a.coef, b.coef),
                });
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, f: &Poly, mut k: u64) -> Poly {
        let mut base = f.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `f^(p^e)`: over F_p this only multiplies exponents by `p^e`.
    pub fn frobenius(&self, f: &Poly, e: u32) -> Poly {
        let q = self.p().checked_pow(e).expect("p^e overflows u32");
        Poly {
            terms: f
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.scale_exps(q),
                    coef: t.coef,
                })
                .collect(),
        }
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self, f: &Poly) -> Poly {
        match f.lead() {
            Some(t) if t.coef != 1 => self.scale(f, self.field.inv(t.coef)),
            _ => f.clone(),
        }
    }

    /// `f / g` when `g` divides `f`, otherwise `None`.
    pub fn div_exact(&self, f: &Poly, g: &Poly) -> Option<Poly> {
        let lg = *g.lead()?;
        let inv = self.field.inv(lg.coef);
        let mut rest = f.clone();
        let mut quot = Vec::new();
        while let Some(t) = rest.lead().copied() {
            let m = lg.mono.quotient_of(&t.mono)?;
            let c = self.field.mul(t.coef, inv);
            quot.push(Term { mono: m, coef: c });
            rest = self.add_scaled(&rest, self.field.neg(c), &m, g);
        }
        Some(Poly { terms: quot })
    }

    pub fn evaluate(&self, f: &Poly, point: &[u32]) -> Result<u32> {
        if point.len() != self.nvars() {
            return Err(Error::VariableCountMismatch(point.len(), self.nvars()));
        }
        let fld = self.field;
        let mut acc = 0;
        for t in &f.terms {
            let mut v = t.coef;
            for (i, &x) in point.iter().enumerate() {
                let e = t.mono.exp(i);
                if e > 0 {
                    v = fld.mul(v, fld.pow(x % self.p(), e as u64));
                }
            }
            acc = fld.add(acc, v);
        }
        Ok(acc)
    }

    /// Evaluation at a point with coordinates in an extension of F_p.
    pub fn evaluate_ext(&self, f: &Poly, gf: &GfExt, point: &[ExtElem]) -> Result<ExtElem> {
        if point.len() != self.nvars() {
            return Err(Error::VariableCountMismatch(point.len(), self.nvars()));
        }
        if gf.base() != self.field {
            return Err(Error::InvalidArgument("extension over a different prime".into()));
        }
        let mut acc = gf.zero();
        for t in &f.terms {
            let mut v = gf.embed(t.coef);
            for (i, x) in point.iter().enumerate() {
                let e = t.mono.exp(i);
                if e > 0 {
                    v = gf.mul(&v, &gf.pow(x, e as u64));
                }
            }
            acc = gf.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Copies `f` into `target`, whose variables must extend this ring's
    /// (same prime, same leading variable names).
    pub fn embed_into(&self, f: &Poly, target: &Ring) -> Poly {
        debug_assert!(target.nvars() >= self.nvars() && target.p() == self.p());
        let n = target.nvars();
        target.from_terms(
            f.terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.widen(n),
                    coef: t.coef,
                })
                .collect(),
        )
    }

    /// The same ring with extra variables appended.
    pub fn extend(&self, extra: &[&str]) -> Result<Ring> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.to_string()));
        Ring::with_names(self.p() as u64, names, self.order)
    }

    /// The same variables over another prime field.
    pub fn over_prime(&self, p: u64) -> Result<Ring> {
        Ring::with_names(p, self.names.clone(), self.order)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
