use super::divisibility::{norm_product, P1Divisor};
use super::families::{build_family_a, FamilyAParams};
use super::ClassifyError;
use crate::gf2n::Field;
use crate::phi::{phi_monomial, phi_of, plane_product};
use crate::polyring::{TriPoly, UniPoly};

/// One homogeneous slice Q_d of the quotient.
#[derive(Clone, Debug)]
pub struct SliceCheck {
    pub degree: u32,
    pub formula: &'static str,
    pub expected: TriPoly,
    pub actual: TriPoly,
}

impl SliceCheck {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }
}

/// A coefficient of the expanded f against its closed form in a18, a17, a12
/// (a12 here is the x¹² coefficient of f).
#[derive(Clone, Debug)]
pub struct CoeffCheck {
    pub exponent: u32,
    pub formula: &'static str,
    pub expected: u32,
    pub actual: u32,
}

impl CoeffCheck {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug)]
pub struct ReplayReport {
    pub f: UniPoly,
    pub l: UniPoly,
    /// The norm product coincides with φ of L³.
    pub norm_is_phi_l3: bool,
    pub divides: bool,
    /// a18 = q1(c1) and a17 = N(c1) read back from f.
    pub leading_coeffs_ok: bool,
    /// Q0 equals the family parameter a.
    pub q0_is_param: bool,
    pub slices: Vec<SliceCheck>,
    pub coefficients: Vec<CoeffCheck>,
}

impl ReplayReport {
    pub fn all_slices_match(&self) -> bool {
        self.divides && self.slices.iter().all(SliceCheck::matches)
    }

    pub fn passes(&self) -> bool {
        self.norm_is_phi_l3 && self.leading_coeffs_ok && self.q0_is_param && self.all_slices_match()
    }
}

fn expected_slices(field: &Field, a18: u32, a17: u32, a12: u32) -> Vec<(u32, &'static str, TriPoly)> {
    let a = plane_product(field);
    let p5 = phi_monomial(5, field);
    let sq = |c| field.square(c);
    let zero = TriPoly::zero(field);
    vec![
        (8, "phi5^4", p5.pow(4)),
        (7, "0", zero.clone()),
        (6, "a18 A^2", a.pow(2).scale(a18)),
        (5, "a17 A phi5", a.mul(&p5).scale(a17)),
        (4, "a18^2 phi5^2", p5.pow(2).scale(sq(a18))),
        (3, "a18 a17 A", a.scale(field.mul(a18, a17))),
        (2, "a17^2 phi5", p5.scale(sq(a17))),
        (1, "0", zero),
        (0, "a12 + a18^4", TriPoly::constant(field, a12 ^ field.pow(a18, 4))),
    ]
}

fn expected_coeffs(field: &Field, a18: u32, a17: u32, a12: u32) -> Vec<(u32, &'static str, u32)> {
    let m = |a, b| field.mul(a, b);
    let p = |a, e| field.pow(a, e);
    let mut out = vec![
        (18, "a18", a18),
        (17, "a17", a17),
        (10, "a18 a12", m(a18, a12)),
        (9, "a17 a12", m(a17, a12)),
        (
            6,
            "a18^7 + a18^4 a17^2 + a18^3 a12 + a18 a17^4 + a17^2 a12",
            p(a18, 7) ^ m(p(a18, 4), p(a17, 2)) ^ m(p(a18, 3), a12) ^ m(a18, p(a17, 4))
                ^ m(p(a17, 2), a12),
        ),
        (
            5,
            "a18^6 a17 + a18^2 a17 a12 + a17^5",
            m(p(a18, 6), a17) ^ m(m(p(a18, 2), a17), a12) ^ p(a17, 5),
        ),
        (3, "a18^4 a17^3 + a17^3 a12", m(p(a18, 4), p(a17, 3)) ^ m(p(a17, 3), a12)),
    ];
    for e in [19, 15, 14, 13, 11, 7] {
        out.push((e, "0", 0));
    }
    out
}

/// Builds the family-A polynomial, divides φ_f by the norm product of
/// P = c1φ₅ + c1³, and compares the quotient slice by slice with the
/// closed forms in a18 = q1(c1), a17 = N(c1).
pub fn appendix1_replay(p: &FamilyAParams) -> Result<ReplayReport, ClassifyError> {
    let tower = &p.tower;
    let base = tower.base();
    let (f, l) = build_family_a(p)?;
    let dv = P1Divisor::from_c1(tower.ext(), p.c1.bits())?;
    let norm = norm_product(&dv, tower)?;
    let norm_is_phi_l3 = norm == phi_of(&l.pow(3));

    let restrict = |c| tower.restrict(c).ok_or(ClassifyError::NotOverBase("q1(c1), N(c1)"));
    let (a18, a17, a12) = (f.coeff(18), f.coeff(17), f.coeff(12));
    let leading_coeffs_ok =
        a18 == restrict(tower.q1(p.c1.bits()))? && a17 == restrict(tower.norm(p.c1.bits()))?;

    let quotient = phi_of(&f).exact_div(&norm)?.exact();
    let divides = quotient.is_some();
    let quotient = quotient.unwrap_or_else(|| TriPoly::zero(base));
    let slices: Vec<SliceCheck> = expected_slices(base, a18, a17, a12)
        .into_iter()
        .map(|(degree, formula, expected)| SliceCheck {
            degree,
            formula,
            expected,
            actual: quotient.degree_slice(degree),
        })
        .collect();
    let q0_is_param = divides && quotient.degree_slice(0) == TriPoly::constant(base, p.a12.bits());
    let coefficients = expected_coeffs(base, a18, a17, a12)
        .into_iter()
        .map(|(exponent, formula, expected)| CoeffCheck {
            exponent,
            formula,
            expected,
            actual: f.coeff(exponent),
        })
        .collect();
    Ok(ReplayReport {
        f,
        l,
        norm_is_phi_l3,
        divides,
        leading_coeffs_ok,
        q0_is_param,
        slices,
        coefficients,
    })
}
