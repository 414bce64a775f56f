use lcsupport::ring::{MonomialOrder, Poly, Ring};
use proptest::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

type Raw = Vec<(i64, Vec<u32>)>;

fn clip(mut e: Vec<u32>, deg: u32) -> Vec<u32> {
    while e.iter().sum::<u32>() > deg {
        let i = (0..e.len()).max_by_key(|&i| e[i]).unwrap();
        e[i] -= 1;
    }
    e
}

fn raw_poly(n: usize) -> impl Strategy<Value = Raw> {
    prop::collection::vec((-20i64..20, prop::collection::vec(0u32..=6, n)), 0..8)
        .prop_map(|ts| ts.into_iter().map(|(c, e)| (c, clip(e, 6))).collect())
}

fn setup() -> impl Strategy<Value = (u64, usize, bool)> {
    (0..PRIMES.len(), 1usize..=4, any::<bool>()).prop_map(|(i, n, lex)| (PRIMES[i], n, lex))
}

fn ring(p: u64, n: usize, lex: bool) -> Ring {
    let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ring::new(p, &refs, order).unwrap()
}

fn triple() -> impl Strategy<Value = (Ring, Poly, Poly, Poly)> {
    setup().prop_flat_map(|(p, n, lex)| {
        (raw_poly(n), raw_poly(n), raw_poly(n)).prop_map(move |(a, b, c)| {
            let r = ring(p, n, lex);
            let f = r.normalize(&a).unwrap();
            let g = r.normalize(&b).unwrap();
            let h = r.normalize(&c).unwrap();
            (r, f, g, h)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms((r, f, g, h) in triple()) {
        prop_assert_eq!(r.add(&f, &g), r.add(&g, &f));
        prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
        prop_assert_eq!(r.add(&r.add(&f, &g), &h), r.add(&f, &r.add(&g, &h)));
        prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
        prop_assert_eq!(r.mul(&f, &r.add(&g, &h)), r.add(&r.mul(&f, &g), &r.mul(&f, &h)));
        prop_assert_eq!(r.mul(&f, &r.one()), f.clone());
        prop_assert!(r.add(&f, &r.neg(&f)).is_zero());
        prop_assert!(r.is_normalized(&r.mul(&f, &g)));
    }

    #[test]
    fn frobenius_is_additive((r, f, g, _h) in triple()) {
        let p = r.p() as u64;
        let lhs = r.pow(&r.add(&f, &g), p);
        prop_assert_eq!(&lhs, &r.add(&r.pow(&f, p), &r.pow(&g, p)));
        prop_assert_eq!(r.frobenius(&f, 1), r.pow(&f, p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalize_is_idempotent((p, n, lex) in setup(), raw in raw_poly(4)) {
        let r = ring(p, n, lex);
        let raw: Raw = raw.into_iter().map(|(c, e)| (c, e[..n].to_vec())).collect();
        let f = r.normalize(&raw).unwrap();
        let again: Raw = f.terms().iter().map(|t| (t.coef as i64, t.mono.exps().to_vec())).collect();
        prop_assert_eq!(r.normalize(&again).unwrap(), f);
    }

    #[test]
    fn evaluation_is_multiplicative((r, f, g, _h) in triple(), pt in prop::collection::vec(0u32..7, 4)) {
        let point: Vec<u32> = pt[..r.nvars()].iter().map(|c| c % r.p()).collect();
        let fg = r.evaluate(&r.mul(&f, &g), &point).unwrap();
        let prod = r.field().mul(r.evaluate(&f, &point).unwrap(), r.evaluate(&g, &point).unwrap());
        prop_assert_eq!(fg, prod);
        let sum = r.field().add(r.evaluate(&f, &point).unwrap(), r.evaluate(&g, &point).unwrap());
        prop_assert_eq!(r.evaluate(&r.add(&f, &g), &point).unwrap(), sum);
    }

    #[test]
    fn parse_inverts_format((r, f, _g, _h) in triple()) {
        prop_assert_eq!(r.parse(&r.format(&f)).unwrap(), f);
    }
}
