use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::gf2n::Field;
use crate::polyring::{Monomial, TriPoly, UniPoly};

/// A = (x+y)(x+z)(y+z).
pub fn plane_product(field: &Field) -> TriPoly {
    let (x, y, z) = (TriPoly::x(field), TriPoly::y(field), TriPoly::z(field));
    x.add(&y).mul(&x.add(&z)).mul(&y.add(&z))
}

/// (x+y+z)^e over GF(2). By Lucas, the multinomial coefficient of
/// x^a y^b z^c is odd exactly when a, b, c split the bits of e.
fn trinomial_power(field: &Field, e: u32) -> TriPoly {
    let mut terms = Vec::with_capacity(3usize.pow(e.count_ones()));
    let mut a = e;
    loop {
        let rest = e & !a;
        let mut b = rest;
        loop {
            let c = rest & !b;
            terms.push((Monomial::new(a as u16, b as u16, c as u16), 1));
            if b == 0 {
                break;
            }
            b = (b - 1) & rest;
        }
        if a == 0 {
            break;
        }
        a = (a - 1) & e;
    }
    TriPoly::from_terms(field, terms)
}

/// f(x) + f(y) + f(z) + f(x+y+z).
pub fn phi_numerator(f: &UniPoly) -> TriPoly {
    let field = f.field();
    let mut num = TriPoly::zero(field);
    for (e, c) in f.terms() {
        let e16 = e as u16;
        let mut t = trinomial_power(field, e);
        for m in [
            Monomial::new(e16, 0, 0),
            Monomial::new(0, e16, 0),
            Monomial::new(0, 0, e16),
        ] {
            t.add_assign(&TriPoly::term(field, m, 1));
        }
        num.add_assign(&t.scale(c));
    }
    num
}

/// The surface polynomial (f(x)+f(y)+f(z)+f(x+y+z)) / A. The division is
/// always exact; the product A·φ is re-checked against the numerator.
pub fn phi_of(f: &UniPoly) -> TriPoly {
    assert!(
        f.degree().unwrap_or(0) <= u16::MAX as u32,
        "degree too large for trivariate exponents"
    );
    let num = phi_numerator(f);
    let a = plane_product(f.field());
    let q = num
        .exact_div(&a)
        .expect("A is nonzero")
        .exact()
        .expect("numerator vanishes on the three planes");
    debug_assert_eq!(q.mul(&a), num);
    q
}

type MemoKey = (u32, u32, u32);

fn memo() -> &'static Mutex<HashMap<MemoKey, TriPoly>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, TriPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// φ_i, the surface polynomial of x^i, memoized per (field, i). φ_0 = φ_1 =
/// φ_2 = 0.
pub fn phi_monomial(i: u32, field: &Field) -> TriPoly {
    if i < 3 {
        return TriPoly::zero(field);
    }
    let key = (field.degree(), field.modulus(), i);
    if let Some(p) = memo().lock().unwrap().get(&key) {
        return p.clone();
    }
    // computed outside the lock; concurrent duplicates produce equal values
    let p = phi_of(&UniPoly::x_pow(field, i));
    memo().lock().unwrap().entry(key).or_insert(p).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_tri;

    fn gf2() -> Field {
        Field::with_degree(1).unwrap()
    }

    #[test]
    fn trinomial_power_matches_repeated_product() {
        let f = gf2();
        let s = TriPoly::x(&f).add(&TriPoly::y(&f)).add(&TriPoly::z(&f));
        let mut p = TriPoly::one(&f);
        for e in 0..=24 {
            assert_eq!(trinomial_power(&f, e), p, "e = {e}");
            p = p.mul(&s);
        }
    }

    #[test]
    fn phi_examples() {
        let f = gf2();
        assert_eq!(phi_monomial(3, &f), TriPoly::one(&f));
        let phi5 = parse_tri(&f, "x^2 + x*y + x*z + y^2 + y*z + z^2").unwrap();
        assert_eq!(phi_monomial(5, &f), phi5);
        let qaff = UniPoly::from_terms(&f, [(16, 1), (4, 1), (1, 1), (0, 1)]);
        assert!(phi_of(&qaff).is_zero());
        for i in 0..3 {
            assert!(phi_monomial(i, &f).is_zero());
        }
    }

    #[test]
    fn monomial_identities() {
        let f = gf2();
        let a = plane_product(&f);
        let phi5 = phi_monomial(5, &f);
        assert_eq!(phi_monomial(12, &f), a.pow(3));
        assert_eq!(phi_monomial(20, &f), a.pow(3).mul(&phi5.pow(4)));
        assert_eq!(phi_monomial(10, &f), a.mul(&phi5.pow(2)));
    }

    #[test]
    fn memo_is_per_field() {
        let f4 = Field::with_degree(2).unwrap();
        let p = phi_monomial(7, &f4);
        assert_eq!(p.field(), &f4);
        assert_eq!(phi_monomial(7, &gf2()).field(), &gf2());
    }
}
