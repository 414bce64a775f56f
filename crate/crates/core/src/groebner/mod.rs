//! Buchberger-based module computations over F_p[x1..xn]: Gröbner bases,
//! normal forms, syzygies, presentations, minors, preimages, radicals and
//! free resolutions.

mod buchberger;
mod minors;
mod radical;
mod resolution;
mod syzygy;

pub(crate) use buchberger::sort_by_lead as sort_rows;
pub use buchberger::{groebner_basis, ideal_basis, GbBuilder, GroebnerBasis};
pub use minors::{fitting_ideal, generic_rank, minors_ideal, prune_presentation};
pub use radical::{radical_contains, radical_membership, radicals_equal};
pub use resolution::{free_resolution, lift_frobenius_chain, Resolution};
pub use syzygy::{
    colon_element, ideal_intersection, minimize_generators, module_contains, modules_equal, preimage,
    presentation_matrix, syzygies, AugmentedGb,
};

use serde::{Deserialize, Serialize};

/// Resource limits; exceeding any of them is reported as
/// [`crate::Error::ResourceLimit`] instead of returning a partial answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbLimits {
    /// Largest number of basis elements kept during one Buchberger run.
    pub max_basis_size: usize,
    /// Largest total degree of an S-pair lcm.
    pub max_degree: u32,
    /// Largest number of S-pairs processed in one run.
    pub max_pairs: usize,
    /// Largest number of column subsets visited when expanding minors.
    pub max_minor_subsets: u64,
    /// Largest estimated term count of a `(p-1)`-th power of a generator
    /// when building `Ext` generating morphisms.
    pub max_expansion_terms: u64,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_basis_size: 5000,
            max_degree: 1000,
            max_pairs: 2_000_000,
            max_minor_subsets: 2_000_000,
            max_expansion_terms: 5_000_000,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobroot::SubmoduleGens;
    use crate::ring::{FreeVector, MonomialOrder, PolyMatrix, Ring};

    fn r2() -> Ring {
        Ring::new(2, &["x", "y"], MonomialOrder::DegRevLex).unwrap()
    }

    fn v(r: &Ring, coords: &[&str]) -> FreeVector {
        FreeVector::from_coords(coords.iter().map(|s| r.parse(s).unwrap()).collect())
    }

    #[test]
    fn basis_examples() {
        let r = r2();
        let lim = GbLimits::default();
        let gb = ideal_basis(&r, &[r.var(0), r.var(1)], &lim).unwrap();
        assert_eq!(gb.elems(), &[v(&r, &["x"]), v(&r, &["y"])]);
        let gb = ideal_basis(&r, &[r.parse("x + y").unwrap(), r.var(0)], &lim).unwrap();
        assert_eq!(gb.elems(), &[v(&r, &["x"]), v(&r, &["y"])]);
        let gens = [v(&r, &["x", "0"]), v(&r, &["0", "y"])];
        let gb = groebner_basis(&r, 2, &gens, &lim).unwrap();
        assert_eq!(gb.elems(), &gens);
    }

    #[test]
    fn normal_form_examples() {
        let r = r2();
        let lim = GbLimits::default();
        let gb = ideal_basis(&r, &[r.var(0)], &lim).unwrap();
        assert!(gb.normal_form(&v(&r, &["x^2"])).is_zero());
        assert_eq!(gb.normal_form(&v(&r, &["x + y"])), v(&r, &["y"]));
        let gb = groebner_basis(&r, 2, &[v(&r, &["x", "0"])], &lim).unwrap();
        assert!(gb.normal_form(&v(&r, &["x^3", "0"])).is_zero());
    }

    #[test]
    fn syzygy_examples() {
        let r = Ring::new(3, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let lim = GbLimits::default();
        let s = syzygies(&r, 1, &[v(&r, &["x"]), v(&r, &["y"])], &lim).unwrap();
        assert_eq!(s.len(), 1);
        let c = &s[0];
        assert!(c.dot(&[r.var(0), r.var(1)], &r).is_zero());
        assert_eq!(c.monic(&r), v(&r, &["y", "-x"]));
        let s = syzygies(&r, 1, &[v(&r, &["x"]), v(&r, &["x"])], &lim).unwrap();
        assert_eq!(s, vec![v(&r, &["1", "-1"])]);
        assert!(syzygies(&r, 1, &[v(&r, &["1"])], &lim).unwrap().is_empty());
    }

    #[test]
    fn presentation_examples() {
        let r = r2();
        let lim = GbLimits::default();
        let a = PolyMatrix::from_rows(vec![vec![r.parse("x^2").unwrap()]]).unwrap();
        let w = presentation_matrix(&r, &[v(&r, &["x"])], &a, &lim).unwrap();
        assert_eq!(w.without_zero_columns(), PolyMatrix::from_rows(vec![vec![r.var(0)]]).unwrap());
        let a = PolyMatrix::from_rows(vec![vec![r.var(0)]]).unwrap();
        let w = presentation_matrix(&r, &[v(&r, &["1"])], &a, &lim).unwrap();
        assert_eq!(w, PolyMatrix::from_rows(vec![vec![r.var(0)]]).unwrap());
        let w = presentation_matrix(&r, &[], &a, &lim).unwrap();
        assert_eq!(w.shape(), (0, 0));
    }

    #[test]
    fn preimage_examples() {
        let r = r2();
        let lim = GbLimits::default();
        let n = SubmoduleGens::new(1, vec![v(&r, &["x^4"])]).unwrap();
        let m = PolyMatrix::from_rows(vec![vec![r.var(0)]]).unwrap();
        let pre = preimage(&r, &m, &n, &lim).unwrap();
        let expect = SubmoduleGens::new(1, vec![v(&r, &["x^3"])]).unwrap();
        assert!(modules_equal(&r, &pre, &expect, &lim).unwrap());

        let n = SubmoduleGens::new(1, vec![v(&r, &["x"])]).unwrap();
        let col = colon_element(&r, &n, &r.var(0), &lim).unwrap();
        assert!(modules_equal(&r, &col, &SubmoduleGens::free(&r, 1), &lim).unwrap());

        let n = SubmoduleGens::new(2, vec![v(&r, &["x", "0"])]).unwrap();
        let pre = preimage(&r, &PolyMatrix::identity(&r, 2), &n, &lim).unwrap();
        assert!(modules_equal(&r, &pre, &n, &lim).unwrap());
    }

    #[test]
    fn intersection_of_monomial_ideals() {
        let r = r2();
        let lim = GbLimits::default();
        let i = ideal_intersection(&r, &[r.parse("x^2").unwrap()], &[r.parse("x*y").unwrap()], &lim).unwrap();
        let gb = ideal_basis(&r, &i, &lim).unwrap();
        assert_eq!(gb.elems(), &[v(&r, &["x^2*y"])]);
    }

    #[test]
    fn lift_recovers_combination() {
        let r = Ring::new(5, &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let lim = GbLimits::default();
        let gens = [v(&r, &["x", "y"]), v(&r, &["y^2", "1"])];
        let aug = AugmentedGb::new(&r, 2, &gens, &lim).unwrap();
        let t = v(&r, &["x^2 + 3*y^3", "x*y + 3*y"]);
        let c = aug.lift(&t).unwrap();
        let back = gens[0].mul_poly(c.coord(0), &r).add(&gens[1].mul_poly(c.coord(1), &r), &r);
        assert_eq!(back, t);
        assert!(aug.lift(&v(&r, &["1", "0"])).is_none());
    }
}
