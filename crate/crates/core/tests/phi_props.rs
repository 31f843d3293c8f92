use apn20::gf2n::Field;
use apn20::phi::{
    phi_monomial, phi_of, plane_product, power_sum, to_symmetric, SymPoly,
};
use apn20::polyring::{TriPoly, UniPoly};
use proptest::prelude::*;

fn gf(n: u32) -> Field {
    Field::with_degree(n).unwrap()
}

fn uni_strategy(n: u32, max_deg: u32) -> impl Strategy<Value = UniPoly> {
    let top = (1u32 << n) - 1;
    proptest::collection::vec((0..=max_deg, 0..=top), 0..8)
        .prop_map(move |ts| UniPoly::from_terms(&gf(n), ts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_is_linear(f in uni_strategy(3, 24), g in uni_strategy(3, 24), c in 1u32..8) {
        prop_assert_eq!(phi_of(&f.add(&g)), phi_of(&f).add(&phi_of(&g)));
        prop_assert_eq!(phi_of(&f.scale(c)), phi_of(&f).scale(c));
    }

    #[test]
    fn phi_degree_and_symmetry(f in uni_strategy(2, 30)) {
        let p = phi_of(&f);
        prop_assert!(p.is_symmetric());
        if !f.is_qaffine() {
            let d = f.split_qaffine().0.degree().unwrap();
            prop_assert_eq!(p.total_degree(), Some(d - 3));
        } else {
            prop_assert!(p.is_zero());
        }
    }

    #[test]
    fn symmetric_round_trip(f in uni_strategy(2, 20)) {
        let p = phi_of(&f);
        let s = to_symmetric(&p).unwrap();
        prop_assert_eq!(s.expand(), p);
    }
}

#[test]
fn kernel_is_qaffine_exhaustive_to_degree_10() {
    let f = gf(1);
    for bits in 0u32..(1 << 11) {
        let p = UniPoly::from_terms(&f, (0..11).filter(|e| bits >> e & 1 == 1).map(|e| (e, 1)));
        assert_eq!(phi_of(&p).is_zero(), p.is_qaffine(), "{p}");
    }
}

#[test]
fn power_sums_match_expansion() {
    let f = gf(1);
    let (x, y, z) = (TriPoly::x(&f), TriPoly::y(&f), TriPoly::z(&f));
    for i in 0..=40 {
        let direct = x.pow(i).add(&y.pow(i)).add(&z.pow(i));
        assert_eq!(power_sum(i, &f).expand(), direct, "p_{i}");
    }
}

#[test]
fn phi_i_is_power_sum_quotient() {
    let f = gf(2);
    let a = plane_product(&f);
    let s1 = SymPoly::elementary(&f, 1);
    for i in 3..=40 {
        let num = power_sum(i, &f).add(&s1.pow(i)).expand();
        assert_eq!(a.mul(&phi_monomial(i, &f)), num, "i = {i}");
    }
}

#[test]
fn phi_over_extension_matches_lifted_phi() {
    let small = gf(1);
    let big = gf(4);
    for i in [5, 12, 17, 20] {
        let lifted = UniPoly::x_pow(&small, i).lift_to(&big).unwrap();
        let p = phi_of(&lifted);
        assert_eq!(p, phi_monomial(i, &big));
        assert_eq!(p.len(), phi_monomial(i, &small).len());
    }
}
