//! Symmetric polynomials written in the elementary basis
//! s1 = x+y+z, s2 = xy+xz+yz, s3 = xyz.

use std::fmt;

use thiserror::Error;

use crate::gf2n::Field;
use crate::polyring::{Monomial, TriPoly};

/// A polynomial in (s1, s2, s3). Internally a [`TriPoly`] whose three
/// variables stand for the elementary symmetric functions.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly(TriPoly);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomial is not symmetric in x, y, z")]
pub struct NotSymmetric;

impl SymPoly {
    pub fn zero(field: &Field) -> Self {
        SymPoly(TriPoly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        SymPoly(TriPoly::one(field))
    }

    /// s_k for k in 1..=3.
    pub fn elementary(field: &Field, k: usize) -> Self {
        assert!((1..=3).contains(&k), "elementary symmetric index out of range");
        SymPoly(TriPoly::var(field, k - 1))
    }

    /// c · s1^e1 s2^e2 s3^e3.
    pub fn term(field: &Field, e: [u16; 3], c: u32) -> Self {
        SymPoly(TriPoly::term(field, Monomial::from_exps(e), c))
    }

    pub fn field(&self) -> &Field {
        self.0.field()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Coefficient of s1^e1 s2^e2 s3^e3.
    pub fn coeff(&self, e: [u16; 3]) -> u32 {
        self.0.coeff(Monomial::from_exps(e))
    }

    /// (exponent triple over s1, s2, s3, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = ([u16; 3], u32)> + '_ {
        self.0.terms().map(|(m, c)| (m.exps(), c))
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        SymPoly(self.0.add(&o.0))
    }

    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        SymPoly(self.0.mul(&o.0))
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        SymPoly(self.0.pow(e))
    }

    pub fn scale(&self, c: u32) -> SymPoly {
        SymPoly(self.0.scale(c))
    }

    /// Substitutes s1, s2, s3 by their expressions in x, y, z.
    pub fn expand(&self) -> TriPoly {
        let f = self.field();
        let gens = elementary_tri(f);
        let mut powers: [Vec<TriPoly>; 3] = [
            vec![TriPoly::one(f)],
            vec![TriPoly::one(f)],
            vec![TriPoly::one(f)],
        ];
        let mut out = TriPoly::zero(f);
        for (e, c) in self.terms() {
            let mut t = TriPoly::constant(f, c);
            for k in 0..3 {
                let need = e[k] as usize;
                while powers[k].len() <= need {
                    let next = powers[k].last().unwrap().mul(&gens[k]);
                    powers[k].push(next);
                }
                t = t.mul(&powers[k][need]);
            }
            out.add_assign(&t);
        }
        out
    }

    pub fn render(&self) -> String {
        self.0.render(["s1", "s2", "s3"])
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly({})", self.render())
    }
}

/// s1, s2, s3 as trivariate polynomials.
pub fn elementary_tri(field: &Field) -> [TriPoly; 3] {
    let (x, y, z) = (TriPoly::x(field), TriPoly::y(field), TriPoly::z(field));
    let s1 = x.add(&y).add(&z);
    let s2 = x.mul(&y).add(&x.mul(&z)).add(&y.mul(&z));
    let s3 = x.mul(&y).mul(&z);
    [s1, s2, s3]
}

/// Rewrites a symmetric polynomial in the elementary basis by repeatedly
/// cancelling the leading monomial x^a y^b z^c (a ≥ b ≥ c) with
/// s1^(a-b) s2^(b-c) s3^c. The result is checked by re-expansion.
pub fn to_symmetric(p: &TriPoly) -> Result<SymPoly, NotSymmetric> {
    if !p.is_symmetric() {
        return Err(NotSymmetric);
    }
    let f = p.field();
    let mut rest = p.clone();
    let mut out = SymPoly::zero(f);
    while let Some((m, c)) = rest.leading() {
        let (a, b, cz) = (m.x, m.y, m.z);
        if !(a >= b && b >= cz) {
            // cannot happen for a symmetric remainder
            return Err(NotSymmetric);
        }
        let t = SymPoly::term(f, [a - b, b - cz, cz], c);
        rest = rest.add(&t.expand());
        out = out.add(&t);
    }
    debug_assert_eq!(&out.expand(), p);
    Ok(out)
}

/// p_i = x^i + y^i + z^i via p_i = s1 p_{i-1} + s2 p_{i-2} + s3 p_{i-3},
/// starting from p_0 = 3 = 1, p_1 = s1, p_2 = s1^2.
pub fn power_sum(i: u32, field: &Field) -> SymPoly {
    let s1 = SymPoly::elementary(field, 1);
    let s2 = SymPoly::elementary(field, 2);
    let s3 = SymPoly::elementary(field, 3);
    let mut window = [SymPoly::one(field), s1.clone(), s1.pow(2)];
    if i < 3 {
        return window[i as usize].clone();
    }
    for _ in 3..=i {
        let next = s1
            .mul(&window[2])
            .add(&s2.mul(&window[1]))
            .add(&s3.mul(&window[0]));
        window = [window[1].clone(), window[2].clone(), next];
    }
    window[2].clone()
}
