use rayon::prelude::*;

use super::ClassifyError;
use crate::gf2n::{hex, Field, FieldElem, TowerField};
use crate::phi::{phi_monomial, phi_of, plane_product};
use crate::polyring::{Division, Monomial, TriPoly, UniPoly};

/// Largest extension degree scanned exhaustively by [`search_p1`].
pub const MAX_SEARCH_DEGREE: u32 = 12;

/// P₁ = c1(x²+y²+z²) + c4(xy+xz+yz) + b1(x+y+z) + d over the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Divisor {
    pub c1: FieldElem,
    pub c4: FieldElem,
    pub b1: FieldElem,
    pub d: FieldElem,
}

impl P1Divisor {
    pub fn new(ext: &Field, c1: u32, c4: u32, b1: u32, d: u32) -> Result<Self, ClassifyError> {
        Ok(P1Divisor {
            c1: ext.elem(c1)?,
            c4: ext.elem(c4)?,
            b1: ext.elem(b1)?,
            d: ext.elem(d)?,
        })
    }

    /// The specialization c4 = c1, b1 = 0, d = c1³, i.e. P₁ = c1φ₅ + c1³.
    pub fn from_c1(ext: &Field, c1: u32) -> Result<Self, ClassifyError> {
        Self::new(ext, c1, c1, 0, ext.pow(c1, 3))
    }

    fn field(&self) -> &Field {
        self.c1.field()
    }
}

fn p1_part(field: &Field, c1: u32, c4: u32, b1: u32, d: u32) -> TriPoly {
    let m = |x, y, z| Monomial::new(x, y, z);
    TriPoly::from_terms(
        field,
        [
            (m(2, 0, 0), c1),
            (m(0, 2, 0), c1),
            (m(0, 0, 2), c1),
            (m(1, 1, 0), c4),
            (m(1, 0, 1), c4),
            (m(0, 1, 1), c4),
            (m(1, 0, 0), b1),
            (m(0, 1, 0), b1),
            (m(0, 0, 1), b1),
            (Monomial::ONE, d),
        ],
    )
}

/// A + P₁ over the extension field.
pub fn p1_polynomial(dv: &P1Divisor) -> TriPoly {
    let field = dv.field();
    plane_product(field).add(&p1_part(
        field,
        dv.c1.bits(),
        dv.c4.bits(),
        dv.b1.bits(),
        dv.d.bits(),
    ))
}

/// (A+P₁)(A+ρP₁)(A+ρ²P₁), brought down to the base field.
pub fn norm_product(dv: &P1Divisor, tower: &TowerField) -> Result<TriPoly, ClassifyError> {
    let ext = tower.ext();
    ext.check_same(dv.field())?;
    let a = plane_product(ext);
    let [c1, c4, b1, d] = [&dv.c1, &dv.c4, &dv.b1, &dv.d].map(|e| tower.conjugates(e.bits()));
    let mut prod = TriPoly::one(ext);
    for k in 0..3 {
        prod = prod.mul(&a.add(&p1_part(ext, c1[k], c4[k], b1[k], d[k])));
    }
    prod.restrict(tower.embedding())
        .map_err(|_| ClassifyError::NotOverBase("norm product"))
}

/// One named relation of the divisor parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: &'static str,
    pub holds: bool,
}

fn constraints(tower: &TowerField, dv: &P1Divisor) -> Vec<Constraint> {
    let f = tower.ext();
    let [c1, c4, b1, d] = [&dv.c1, &dv.c4, &dv.b1, &dv.d].map(|e| e.bits());
    let (q1c, nc) = (tower.q1(c1), tower.norm(c1));
    let cube = |a| f.pow(a, 3);
    let sq = |a| f.square(a);
    [
        ("tr(c1) = 0", tower.trace(c1) == 0),
        ("tr(c4) = 0", tower.trace(c4) == 0),
        ("c1 = c4", c1 == c4),
        ("b1 = 0", b1 == 0),
        ("d = c1^3", d == cube(c1)),
        ("q5(c1,d) = 0", tower.q5(c1, d) == 0),
        ("q4(c1,d) = 0", tower.q4(c1, d) == 0),
        ("q1(d) = q1(c1)^3 + N(c1)^2", tower.q1(d) == cube(q1c) ^ sq(nc)),
        ("q4(d,c1) = N(c1) q1(c1)^2", tower.q4(d, c1) == f.mul(nc, sq(q1c))),
        ("N(d) = N(c1)^3", tower.norm(d) == cube(nc)),
        ("N(c1) = tr(d)", nc == tower.trace(d)),
    ]
    .into_iter()
    .map(|(name, holds)| Constraint { name, holds })
    .collect()
}

#[derive(Clone, Debug)]
pub struct DivisibilityA {
    pub divides: bool,
    /// φ_f / norm product, when exact.
    pub quotient: Option<TriPoly>,
    /// Leading remainder monomial otherwise.
    pub witness: Option<Monomial>,
    pub constraints: Vec<Constraint>,
}

impl DivisibilityA {
    pub fn all_constraints_hold(&self) -> bool {
        self.constraints.iter().all(|c| c.holds)
    }
}

fn check_degree20(f: &UniPoly) -> Result<(), ClassifyError> {
    match f.degree() {
        Some(20) => Ok(()),
        d => Err(ClassifyError::NotDegree20(d)),
    }
}

fn divide(phi: &TriPoly, dv: &P1Divisor, tower: &TowerField) -> Result<Division, ClassifyError> {
    Ok(phi.exact_div(&norm_product(dv, tower)?)?)
}

/// Does (A+P₁)(A+ρP₁)(A+ρ²P₁) divide φ_f?
pub fn verify_divisibility_a(
    f: &UniPoly,
    dv: &P1Divisor,
    tower: &TowerField,
) -> Result<DivisibilityA, ClassifyError> {
    check_degree20(f)?;
    tower.base().check_same(f.field())?;
    let division = divide(&phi_of(f), dv, tower)?;
    let (quotient, witness) = match division {
        Division::Exact(q) => (Some(q), None),
        Division::NotDivisible { witness } => (None, Some(witness)),
    };
    Ok(DivisibilityA {
        divides: quotient.is_some(),
        quotient,
        witness,
        constraints: constraints(tower, dv),
    })
}

#[derive(Clone, Debug)]
pub struct DivisibilityB {
    pub divides: bool,
    pub factorization_ok: bool,
    pub quotient: Option<TriPoly>,
}

/// Does φ₅ divide φ_f, and is the quotient a20·A³φ₅³ + a10·Aφ₅ + a5?
pub fn verify_divisibility_b(f: &UniPoly) -> Result<DivisibilityB, ClassifyError> {
    check_degree20(f)?;
    let field = f.field();
    let phi5 = phi_monomial(5, field);
    let quotient = phi_of(f).exact_div(&phi5)?.exact();
    let factorization_ok = quotient.as_ref().is_some_and(|q| {
        let a = plane_product(field);
        let ap = a.mul(&phi5);
        let expect = ap
            .pow(3)
            .scale(f.coeff(20))
            .add(&ap.scale(f.coeff(10)))
            .add(&TriPoly::constant(field, f.coeff(5)));
        *q == expect
    });
    Ok(DivisibilityB {
        divides: quotient.is_some(),
        factorization_ok,
        quotient,
    })
}

/// Every c1 in the extension for which P₁ = c1φ₅ + c1³ gives a norm product
/// dividing φ_f, in increasing bit order.
pub fn search_p1(f: &UniPoly, tower: &TowerField) -> Result<Vec<FieldElem>, ClassifyError> {
    check_degree20(f)?;
    tower.base().check_same(f.field())?;
    let ext = tower.ext();
    if ext.degree() > MAX_SEARCH_DEGREE {
        return Err(ClassifyError::ExtTooLarge(ext.degree()));
    }
    let phi = phi_of(f);
    let hits = ext
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|c| {
            let dv = P1Divisor::from_c1(ext, c)?;
            Ok(divide(&phi, &dv, tower)?.is_exact().then_some(c))
        })
        .collect::<Result<Vec<_>, ClassifyError>>()?;
    let hits: Vec<u32> = hits.into_iter().flatten().collect();
    if let Some(&c) = hits.iter().find(|&&c| tower.trace(c) != 0) {
        return Err(ClassifyError::TraceViolated(hex(c)));
    }
    Ok(hits.into_iter().map(|c| ext.elem(c)).collect::<Result<_, _>>()?)
}
