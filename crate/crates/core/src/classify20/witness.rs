use super::divisibility::{search_p1, MAX_SEARCH_DEGREE};
use super::families::{build_family_a, family_a_linear, FamilyAParams};
use super::ClassifyError;
use crate::apn::{apn_scan, differential_uniformity, ScanRow};
use crate::gf2n::{hex, Field, FieldElem, TowerField};
use crate::polyring::UniPoly;

/// Default check fields are only picked up to this degree.
pub const MAX_CHECK_DEGREE: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// f = L(x)⁵ + residual.
    GoldCompose,
    /// f = L(x⁵) + residual.
    LinearOfPower,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::GoldCompose => "gold_compose",
            WitnessKind::LinearOfPower => "linear_of_power",
        }
    }
}

/// Differential cross-check of f against x⁵ on one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaCheck {
    Compared { field: Field, delta_f: u32, delta_x5: u32 },
    Skipped(String),
}

impl DeltaCheck {
    pub fn agrees(&self) -> Option<bool> {
        match self {
            DeltaCheck::Compared { delta_f, delta_x5, .. } => Some(delta_f == delta_x5),
            DeltaCheck::Skipped(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CczWitness {
    pub kind: WitnessKind,
    pub l: UniPoly,
    pub residual: UniPoly,
    /// The divisor parameter L was rebuilt from, when found by search.
    pub c1: Option<FieldElem>,
    pub delta: DeltaCheck,
}

impl CczWitness {
    pub fn reconstruct(&self) -> UniPoly {
        let field = self.l.field();
        let main = match self.kind {
            WitnessKind::GoldCompose => self.l.pow(5),
            WitnessKind::LinearOfPower => self
                .l
                .compose(&UniPoly::x_pow(field, 5))
                .expect("same field"),
        };
        main.add(&self.residual)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoWitness {
    pub stage: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub enum CczOutcome {
    Witness(CczWitness),
    NoWitness(NoWitness),
}

/// First GF(2^{mk}), k ∈ {5, 7, 11, 13, …}, of degree at most
/// [`MAX_CHECK_DEGREE`] on which `l` permutes.
pub fn default_check_field(l: &UniPoly) -> Option<Field> {
    let m = l.field().degree();
    [5u32, 7, 11, 13, 17, 19, 23]
        .into_iter()
        .map(|k| m * k)
        .take_while(|&d| d <= MAX_CHECK_DEGREE)
        .filter_map(|d| Field::with_degree(d).ok())
        .find(|field| l.is_permutation(field).unwrap_or(false))
}

fn delta_check(f: &UniPoly, l: &UniPoly, check_field: Option<&Field>) -> DeltaCheck {
    let field = match check_field {
        Some(field) => field.clone(),
        None => match default_check_field(l) {
            Some(field) => field,
            None => {
                return DeltaCheck::Skipped(format!(
                    "no GF(2^n) with n <= {MAX_CHECK_DEGREE} on which L permutes"
                ))
            }
        },
    };
    match l.is_permutation(&field) {
        Ok(true) => {}
        Ok(false) => return DeltaCheck::Skipped(format!("L does not permute GF(2^{})", field.degree())),
        Err(e) => return DeltaCheck::Skipped(e.to_string()),
    }
    let x5 = UniPoly::x_pow(f.field(), 5);
    match (
        differential_uniformity(f, &field),
        differential_uniformity(&x5, &field),
    ) {
        (Ok(a), Ok(b)) => DeltaCheck::Compared {
            field,
            delta_f: a.delta,
            delta_x5: b.delta,
        },
        (Err(e), _) | (_, Err(e)) => DeltaCheck::Skipped(e.to_string()),
    }
}

fn family_b(f: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    let (rest, affine) = f.split_qaffine();
    if rest.terms().any(|(e, _)| ![20, 10, 5].contains(&e)) {
        return None;
    }
    let l = UniPoly::from_terms(
        f.field(),
        [(4, rest.coeff(20)), (2, rest.coeff(10)), (1, rest.coeff(5))],
    );
    Some((l, affine))
}

fn family_a(
    f: &UniPoly,
    tower: &TowerField,
) -> Result<Result<(UniPoly, UniPoly, Option<FieldElem>), NoWitness>, ClassifyError> {
    let stage = "family_a";
    if f.coeff(20) != 1 {
        return Ok(Err(NoWitness {
            stage,
            reason: "leading coefficient is not 1".into(),
        }));
    }
    let candidates: Vec<(UniPoly, Option<FieldElem>)> = if tower.ext().degree() <= MAX_SEARCH_DEGREE {
        let hits = search_p1(f, tower)?;
        if hits.is_empty() {
            return Ok(Err(NoWitness {
                stage,
                reason: "no c1 with the norm product of c1 phi5 + c1^3 dividing phi_f".into(),
            }));
        }
        hits.into_iter()
            .map(|c| Ok((family_a_linear(tower, c.bits())?, Some(c))))
            .collect::<Result<_, ClassifyError>>()?
    } else {
        // extension too large to search: read L off the x^18, x^17 coefficients
        let l = UniPoly::from_terms(f.field(), [(4, 1), (2, f.coeff(18)), (1, f.coeff(17))]);
        vec![(l, None)]
    };
    let mut a = 0;
    for (l, c1) in candidates {
        let residual = f.add(&l.pow(5));
        if residual.is_qaffine() {
            return Ok(Ok((l, residual, c1)));
        }
        a = residual.coeff(12);
    }
    Ok(Err(NoWitness {
        stage,
        reason: format!("f + L^5 is not q-affine (x^12 coefficient {})", hex(a)),
    }))
}

/// Looks for f = L(x⁵) + q-affine, then f = L(x)⁵ + q-affine, and compares
/// delta(f) with delta(x⁵) on `check_field` (or a default field where L
/// permutes).
pub fn ccz_witness(
    f: &UniPoly,
    tower: &TowerField,
    check_field: Option<&Field>,
) -> Result<CczOutcome, ClassifyError> {
    if f.degree() != Some(20) {
        return Err(ClassifyError::NotDegree20(f.degree()));
    }
    tower.base().check_same(f.field())?;
    let (kind, l, residual, c1) = if let Some((l, residual)) = family_b(f) {
        (WitnessKind::LinearOfPower, l, residual, None)
    } else {
        match family_a(f, tower)? {
            Ok((l, residual, c1)) => (WitnessKind::GoldCompose, l, residual, c1),
            Err(nw) => return Ok(CczOutcome::NoWitness(nw)),
        }
    };
    let mut w = CczWitness {
        kind,
        l,
        residual,
        c1,
        delta: DeltaCheck::Skipped(String::new()),
    };
    if w.reconstruct() != *f || !w.l.is_linearized() || !w.residual.is_qaffine() {
        return Ok(CczOutcome::NoWitness(NoWitness {
            stage: "reconstruction",
            reason: "witness does not reproduce f".into(),
        }));
    }
    w.delta = delta_check(f, &w.l, check_field);
    Ok(CczOutcome::Witness(w))
}

/// Differential scan of a family-A instance over the given extension
/// degrees; the odd degrees where it fails to be APN.
#[derive(Clone, Debug)]
pub struct ExclusionEvidence {
    pub rows: Vec<ScanRow>,
    pub non_apn_odd: Vec<u32>,
}

impl ExclusionEvidence {
    pub fn supported(&self) -> bool {
        !self.non_apn_odd.is_empty()
    }
}

pub fn apn_exclusion_evidence(
    p: &FamilyAParams,
    ns: impl IntoIterator<Item = u32>,
) -> Result<ExclusionEvidence, ClassifyError> {
    let (f, _) = build_family_a(p)?;
    let rows = apn_scan(&f, ns);
    let non_apn_odd = rows
        .iter()
        .filter(|r| r.n % 2 == 1 && r.is_apn() == Some(false))
        .map(|r| r.n)
        .collect();
    Ok(ExclusionEvidence { rows, non_apn_odd })
}
