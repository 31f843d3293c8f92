use apn20::gf2n::Field;
use apn20::polyring::{parse_tri, parse_uni, Division, Monomial, TriPoly, UniPoly};
use proptest::prelude::*;

fn gf(n: u32) -> Field {
    Field::with_degree(n).unwrap()
}

fn tri_strategy(n: u32, max_deg: u16, max_terms: usize) -> impl Strategy<Value = TriPoly> {
    let top = (1u32 << n) - 1;
    proptest::collection::vec(((0..=max_deg), (0..=max_deg), (0..=max_deg), 1..=top), 0..max_terms)
        .prop_map(move |ts| {
            let f = gf(n);
            TriPoly::from_terms(
                &f,
                ts.into_iter()
                    .filter(|&(a, b, c, _)| a + b + c <= max_deg)
                    .map(|(a, b, c, k)| (Monomial::new(a, b, c), k)),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn division_round_trip(p in tri_strategy(2, 6, 12), d in tri_strategy(2, 3, 5)) {
        prop_assume!(!d.is_zero());
        let (q, r) = p.div_rem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), p.clone());
        let (lm, _) = d.leading().unwrap();
        for (m, _) in r.terms() {
            prop_assert!(!lm.divides(m));
        }
    }

    #[test]
    fn products_divide_exactly(p in tri_strategy(3, 4, 8), d in tri_strategy(3, 3, 5)) {
        prop_assume!(!d.is_zero());
        let prod = p.mul(&d);
        prop_assert_eq!(prod.exact_div(&d).unwrap(), Division::Exact(p));
    }

    #[test]
    fn text_round_trip(p in tri_strategy(4, 5, 10)) {
        let f = p.field().clone();
        prop_assert_eq!(parse_tri(&f, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn linearized_permutation_iff_no_nonzero_root(
        n in 2u32..=6,
        coeffs in proptest::collection::vec(any::<u32>(), 1..4),
        c in any::<u32>(),
    ) {
        let f = gf(n);
        let mask = (1u32 << n) - 1;
        let l = UniPoly::from_terms(
            &f,
            coeffs.iter().enumerate().map(|(i, &k)| (1u32 << i, k & mask)),
        );
        let has_root = f.elements().skip(1).any(|x| l.eval(x) == 0);
        prop_assert_eq!(l.is_permutation(&f).unwrap(), !has_root && !l.is_zero());
        let shifted = l.add(&UniPoly::constant(&f, c & mask));
        prop_assert_eq!(shifted.is_permutation(&f).unwrap(), l.is_permutation(&f).unwrap());
    }

    #[test]
    fn compose_matches_evaluation(n in 1u32..=5, a in 0u32..40, b in 0u32..12, x in any::<u32>()) {
        let f = gf(n);
        let x = x & ((1 << n) - 1);
        let outer = UniPoly::from_terms(&f, [(a, 1), (1, 1)]);
        let inner = UniPoly::from_terms(&f, [(b, 1), (0, 1)]);
        let comp = outer.compose(&inner).unwrap();
        prop_assert_eq!(comp.eval(x), outer.eval(inner.eval(x)));
    }
}

#[test]
fn qaffine_detection() {
    let f = gf(3);
    assert!(parse_uni(&f, "x^16 + 0x3*x^4 + x + 1").unwrap().is_qaffine());
    assert!(!parse_uni(&f, "x^3 + x").unwrap().is_qaffine());
    assert!(!parse_uni(&f, "x^2 + 1").unwrap().is_linearized());
}
