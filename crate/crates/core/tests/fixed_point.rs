mod common;

use common::*;
use lcsupport::frobroot::{frob_root, SubmoduleGens};
use lcsupport::fsupport::{
    forced_iterations, is_zero_module, iterate_once, iterate_support, span_canonicalize, support_ideal,
    GeneratingMorphism, SupportConfig,
};
use lcsupport::groebner::{module_contains, modules_equal, GbLimits};
use lcsupport::hyperloci::v_product;
use lcsupport::ring::PolyMatrix;
use rand::Rng;

#[test]
fn degree_bound_and_persistence_on_random_morphisms() {
    let mut rng = rng(0xdeb0_0005);
    let r = ring(2, 5);
    let mut violations = 0;
    for case in 0..100 {
        let u = dense_matrix(&r, &mut rng, 2, 2, 4);
        let gm = GeneratingMorphism::free(&r, u).unwrap();
        let bound = gm.degree_bound();
        assert!(bound <= 4);
        let it = iterate_support(&gm, 1000).unwrap();
        violations += it.degrees[1..].iter().filter(|&&d| d > 4).count();
        let extra = forced_iterations(&gm, &it.stable, 2).unwrap();
        for (k, l) in extra.iter().enumerate() {
            assert_eq!(l, &it.stable, "case {case}: forced iteration {} moved", k + 1);
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn iterates_descend_as_modules() {
    let lim = GbLimits::default();
    let mut rng = rng(0xdc_0001);
    for case in 0..40 {
        let p = [2u64, 3][case % 2];
        let r = ring(p, 2);
        let beta = rng.gen_range(1..=2);
        let u = matrix(&r, &mut rng, beta, beta, 4, 3);
        let gm = GeneratingMorphism::free(&r, u).unwrap();
        let mut l = span_canonicalize(&r, &SubmoduleGens::free(&r, beta));
        for j in 0..6 {
            let next = iterate_once(&gm, &l).unwrap();
            assert!(
                module_contains(&r, &l.to_gens(), &next.to_gens(), &lim).unwrap(),
                "case {case}: L_{} not inside L_{j}",
                j + 1
            );
            if next == l {
                break;
            }
            l = next;
        }
    }
}

#[test]
fn nested_roots_equal_direct_root_of_the_product() {
    let lim = GbLimits::default();
    let mut rng = rng(0x0e_0002);
    for case in 0..30 {
        let p = [2u64, 3][case % 2];
        let r = ring(p, 2);
        let beta = rng.gen_range(1..=2);
        let u = matrix(&r, &mut rng, beta, beta, 3, 2);
        let gm = GeneratingMorphism::free(&r, u.clone()).unwrap();
        let mut nested = span_canonicalize(&r, &SubmoduleGens::free(&r, beta));
        for t in 1..=3u32 {
            nested = iterate_once(&gm, &nested).unwrap();
            let v = v_product(&u, 0, t, &r);
            let direct = frob_root(&SubmoduleGens::image(&v), t, &r).unwrap();
            assert!(
                modules_equal(&r, &direct, &nested.to_gens(), &lim).unwrap(),
                "case {case}: t = {t}"
            );
            assert_eq!(span_canonicalize(&r, &direct), nested, "case {case}: t = {t} spans");
        }
    }
}

#[test]
fn zero_module_iff_unit_support_ideal() {
    let mut rng = rng(0x2e_0003);
    let cfg = SupportConfig::default();
    let mut zeros = 0;
    for case in 0..40 {
        let p = [2u64, 3][case % 2];
        let r = ring(p, 2);
        // a nilpotent U on half the cases
        let u = if case % 2 == 0 {
            let mut m = PolyMatrix::zeros(2, 2);
            m.set(0, 1, poly(&r, &mut rng, 3, 2));
            m
        } else {
            matrix(&r, &mut rng, 2, 2, 3, 2)
        };
        let gm = GeneratingMorphism::free(&r, u).unwrap();
        let zero = is_zero_module(&gm, &cfg).unwrap();
        let rep = support_ideal(&gm, &cfg).unwrap();
        assert_eq!(zero, rep.ideal.iter().any(|f| f.is_unit()), "case {case}");
        zeros += zero as usize;
    }
    assert!(zeros >= 20);
}

#[test]
fn iteration_is_deterministic() {
    let mut rng = rng(7);
    let r = ring(3, 3);
    let u = matrix(&r, &mut rng, 2, 2, 5, 3);
    let gm = GeneratingMorphism::free(&r, u).unwrap();
    let a = iterate_support(&gm, 100).unwrap();
    let b = iterate_support(&gm, 100).unwrap();
    assert_eq!(a.stable, b.stable);
    assert_eq!(a.degrees, b.degrees);
}
