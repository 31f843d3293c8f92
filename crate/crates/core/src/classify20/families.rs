use super::ClassifyError;
use crate::gf2n::{hex, Field, FieldElem, TowerField};
use crate::polyring::UniPoly;

/// f = L³(L² + a12) + tail with L = x(x+c1)(x+ρc1)(x+ρ²c1).
#[derive(Clone, Debug)]
pub struct FamilyAParams {
    pub tower: TowerField,
    pub c1: FieldElem,
    pub a12: FieldElem,
    pub tail: UniPoly,
}

impl FamilyAParams {
    pub fn new(tower: &TowerField, c1: u32, a12: u32, tail: UniPoly) -> Result<Self, ClassifyError> {
        let c1 = tower.ext().elem(c1)?;
        let a12 = tower.base().elem(a12)?;
        tower.base().check_same(tail.field())?;
        if tower.trace(c1.bits()) != 0 {
            return Err(ClassifyError::NonzeroTrace(hex(tower.trace(c1.bits()))));
        }
        if !tail.is_qaffine() {
            return Err(ClassifyError::TailNotQAffine(tail.to_string()));
        }
        Ok(FamilyAParams {
            tower: tower.clone(),
            c1,
            a12,
            tail,
        })
    }

    pub fn simple(tower: &TowerField, c1: u32, a12: u32) -> Result<Self, ClassifyError> {
        Self::new(tower, c1, a12, UniPoly::zero(tower.base()))
    }
}

/// x(x+c1)(x+ρc1)(x+ρ²c1) over the base field. Requires tr(c1) = 0; the
/// expansion is checked against x⁴ + q1(c1)x² + N(c1)x.
pub fn family_a_linear(tower: &TowerField, c1: u32) -> Result<UniPoly, ClassifyError> {
    if tower.trace(c1) != 0 {
        return Err(ClassifyError::NonzeroTrace(hex(tower.trace(c1))));
    }
    let ext = tower.ext();
    let mut l = UniPoly::x_pow(ext, 1);
    for c in tower.conjugates(c1) {
        l = l.mul(&UniPoly::from_terms(ext, [(1, 1), (0, c)]));
    }
    let expect = UniPoly::from_terms(ext, [(4, 1), (2, tower.q1(c1)), (1, tower.norm(c1))]);
    debug_assert_eq!(l, expect);
    l.restrict(tower.embedding())
        .map_err(|_| ClassifyError::NotOverBase("L"))
}

/// (f, L) for the family-A parameters.
pub fn build_family_a(p: &FamilyAParams) -> Result<(UniPoly, UniPoly), ClassifyError> {
    let l = family_a_linear(&p.tower, p.c1.bits())?;
    let base = p.tower.base();
    let l2 = l.pow(2);
    let f = l
        .pow(3)
        .mul(&l2.add(&UniPoly::constant(base, p.a12.bits())))
        .add(&p.tail);
    Ok((f, l))
}

/// f = x²⁰ + a10·x¹⁰ + a5·x⁵ + tail.
#[derive(Clone, Debug)]
pub struct FamilyBParams {
    pub field: Field,
    pub a10: FieldElem,
    pub a5: FieldElem,
    pub tail: UniPoly,
}

impl FamilyBParams {
    pub fn new(field: &Field, a10: u32, a5: u32, tail: UniPoly) -> Result<Self, ClassifyError> {
        field.check_same(tail.field())?;
        if !tail.is_qaffine() {
            return Err(ClassifyError::TailNotQAffine(tail.to_string()));
        }
        Ok(FamilyBParams {
            field: field.clone(),
            a10: field.elem(a10)?,
            a5: field.elem(a5)?,
            tail,
        })
    }
}

pub fn build_family_b(p: &FamilyBParams) -> UniPoly {
    UniPoly::from_terms(&p.field, [(20, 1), (10, p.a10.bits()), (5, p.a5.bits())]).add(&p.tail)
}
