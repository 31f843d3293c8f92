//! Brute-force differential analysis over GF(2^n).
//!
//! The difference distribution table is scanned one row at a time: for a
//! fixed a ≠ 0 a q-entry counter array collects f(x+a)+f(x) over all x, so
//! memory stays O(q). Rows are independent and run in parallel; merging is a
//! max with ties broken towards the smallest (a, b), which keeps reports
//! identical under any schedule.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf2n::{Field, FieldElem, FieldError};
use crate::polyring::{PolyError, UniPoly};

/// Largest field (by extension degree) on which a full DDT scan is allowed.
pub const MAX_DDT_DEGREE: u32 = 20;

/// Largest field for which `full_ddt` materializes the table.
pub const MAX_FULL_DDT_DEGREE: u32 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApnError {
    #[error("GF(2^{0}) exceeds the DDT cap of 2^{max}", max = MAX_DDT_DEGREE)]
    FieldTooLarge(u32),
    #[error("the input difference a must be nonzero")]
    ZeroDifference,
    #[error("{0} is not q-affine")]
    NotQAffine(String),
    #[error("{0} is not a permutation of the field")]
    NotPermutation(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Summary of a DDT scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    pub field: Field,
    pub f: UniPoly,
    /// max over a ≠ 0, b of δ(a, b).
    pub delta: u32,
    pub is_apn: bool,
    /// Smallest (a, b) attaining `delta`.
    pub worst_pair: (u32, u32),
}

fn check_size(field: &Field) -> Result<(), ApnError> {
    if field.degree() > MAX_DDT_DEGREE {
        return Err(ApnError::FieldTooLarge(field.degree()));
    }
    Ok(())
}

/// δ(a, b): number of x with f(x+a) + f(x) = b.
pub fn diff_count(f: &UniPoly, a: &FieldElem, b: &FieldElem) -> Result<u64, ApnError> {
    let field = f.field();
    field.check_same(a.field())?;
    field.check_same(b.field())?;
    check_size(field)?;
    if a.is_zero() {
        return Err(ApnError::ZeroDifference);
    }
    let (a, b) = (a.bits(), b.bits());
    Ok(field
        .elements()
        .filter(|&x| f.eval(x ^ a) ^ f.eval(x) == b)
        .count() as u64)
}

/// Row a of the DDT: (max count, smallest b attaining it).
fn row_max(table: &[u32], a: u32, counts: &mut [u32]) -> (u32, u32) {
    counts.iter_mut().for_each(|c| *c = 0);
    for (x, &fx) in table.iter().enumerate() {
        counts[(fx ^ table[x ^ a as usize]) as usize] += 1;
    }
    let mut best = (0u32, 0u32);
    for (b, &c) in counts.iter().enumerate() {
        if c > best.0 {
            best = (c, b as u32);
        }
    }
    best
}

/// Differential uniformity of the function given by its value table.
/// Returns (delta, (a, b)).
pub fn uniformity_of_table(table: &[u32]) -> (u32, (u32, u32)) {
    let q = table.len();
    assert!(q.is_power_of_two() && q >= 2, "table length must be 2^n");
    let rows: Vec<(u32, u32, u32)> = (1..q as u32)
        .into_par_iter()
        .map_init(
            || vec![0u32; q],
            |counts, a| {
                let (c, b) = row_max(table, a, counts);
                (c, a, b)
            },
        )
        .collect();
    // collected in a-order, so the first strict maximum is the smallest pair
    let mut best = (0u32, (0u32, 0u32));
    for (c, a, b) in rows {
        if c > best.0 {
            best = (c, (a, b));
        }
    }
    best
}

/// Full DDT scan of `f` over `field` (coefficients are lifted into `field`
/// when `f` lives over a subfield).
pub fn differential_uniformity(f: &UniPoly, field: &Field) -> Result<DiffReport, ApnError> {
    check_size(field)?;
    let lifted = f.lift_to(field)?;
    let table = lifted.value_table();
    let (delta, worst_pair) = uniformity_of_table(&table);
    Ok(DiffReport {
        field: field.clone(),
        f: lifted,
        delta,
        is_apn: delta <= 2,
        worst_pair,
    })
}

/// The whole q×q table, only for small fields.
pub fn full_ddt(f: &UniPoly, field: &Field) -> Result<Vec<Vec<u32>>, ApnError> {
    if field.degree() > MAX_FULL_DDT_DEGREE {
        return Err(ApnError::FieldTooLarge(field.degree()));
    }
    let table = f.lift_to(field)?.value_table();
    let q = table.len();
    Ok((0..q)
        .map(|a| {
            let mut row = vec![0u32; q];
            for x in 0..q {
                row[(table[x] ^ table[x ^ a]) as usize] += 1;
            }
            row
        })
        .collect())
}

/// One row of an [`apn_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: u32,
    #[serde(flatten)]
    pub outcome: ScanOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ScanOutcome {
    Scanned {
        delta: u32,
        is_apn: bool,
        worst_a: String,
        worst_b: String,
    },
    Skipped {
        skipped: String,
    },
}

impl ScanRow {
    pub fn is_apn(&self) -> Option<bool> {
        match &self.outcome {
            ScanOutcome::Scanned { is_apn, .. } => Some(*is_apn),
            ScanOutcome::Skipped { .. } => None,
        }
    }

    pub fn delta(&self) -> Option<u32> {
        match &self.outcome {
            ScanOutcome::Scanned { delta, .. } => Some(*delta),
            ScanOutcome::Skipped { .. } => None,
        }
    }
}

/// Scans the template over GF(2^n) for each n (default moduli). Degrees the
/// template's coefficient field does not embed into, or that exceed the DDT
/// cap, are reported as skipped rows.
pub fn apn_scan(template: &UniPoly, ns: impl IntoIterator<Item = u32>) -> Vec<ScanRow> {
    ns.into_iter()
        .map(|n| {
            let outcome = Field::with_degree(n)
                .map_err(ApnError::from)
                .and_then(|field| differential_uniformity(template, &field));
            ScanRow {
                n,
                outcome: match outcome {
                    Ok(r) => ScanOutcome::Scanned {
                        delta: r.delta,
                        is_apn: r.is_apn,
                        worst_a: crate::gf2n::hex(r.worst_pair.0),
                        worst_b: crate::gf2n::hex(r.worst_pair.1),
                    },
                    Err(e) => ScanOutcome::Skipped {
                        skipped: e.to_string(),
                    },
                },
            }
        })
        .collect()
}

/// Equivalence-preserving transformation applied by [`invariance_check`].
#[derive(Clone, Debug)]
pub enum Transform {
    /// f + g, g q-affine.
    AddQAffine(UniPoly),
    /// f ∘ L, L a linearized permutation.
    PreCompose(UniPoly),
    /// L ∘ f, L a linearized permutation.
    PostCompose(UniPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub delta_before: u32,
    pub delta_after: u32,
    pub holds: bool,
}

/// Applies `transform` to `f` over `field` and compares differential
/// uniformity before and after. Compositions are evaluated on value tables.
pub fn invariance_check(
    f: &UniPoly,
    transform: &Transform,
    field: &Field,
) -> Result<InvarianceReport, ApnError> {
    check_size(field)?;
    let base = f.lift_to(field)?.value_table();
    let after: Vec<u32> = match transform {
        Transform::AddQAffine(g) => {
            if !g.is_qaffine() {
                return Err(ApnError::NotQAffine(g.to_string()));
            }
            let gt = g.lift_to(field)?.value_table();
            base.iter().zip(&gt).map(|(a, b)| a ^ b).collect()
        }
        Transform::PreCompose(l) | Transform::PostCompose(l) => {
            if !l.is_linearized() {
                return Err(ApnError::NotQAffine(l.to_string()));
            }
            if !l.is_permutation(field)? {
                return Err(ApnError::NotPermutation(l.to_string()));
            }
            let lt = l.lift_to(field)?.value_table();
            match transform {
                Transform::PreCompose(_) => lt.iter().map(|&y| base[y as usize]).collect(),
                _ => base.iter().map(|&y| lt[y as usize]).collect(),
            }
        }
    };
    let (delta_before, _) = uniformity_of_table(&base);
    let (delta_after, _) = uniformity_of_table(&after);
    Ok(InvarianceReport {
        delta_before,
        delta_after,
        holds: delta_before == delta_after,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_uni;

    fn gf(n: u32) -> Field {
        Field::with_degree(n).unwrap()
    }

    fn poly(n: u32, s: &str) -> UniPoly {
        parse_uni(&gf(n), s).unwrap()
    }

    #[test]
    fn diff_count_examples() {
        let f = gf(4);
        let sq = poly(4, "x^2");
        for a in 1..16 {
            let b = f.square(a);
            assert_eq!(diff_count(&sq, &f.elem(a).unwrap(), &f.elem(b).unwrap()).unwrap(), 16);
        }
        let f8 = gf(3);
        let cube = poly(3, "x^3");
        for a in 1..8 {
            for b in 0..8 {
                let c = diff_count(&cube, &f8.elem(a).unwrap(), &f8.elem(b).unwrap()).unwrap();
                assert!(c == 0 || c == 2);
            }
        }
        assert_eq!(
            diff_count(&cube, &f8.zero(), &f8.one()),
            Err(ApnError::ZeroDifference)
        );
    }

    #[test]
    fn gold_and_kasami_small_cases() {
        for n in 2..=8 {
            assert!(differential_uniformity(&poly(1, "x^3"), &gf(n)).unwrap().is_apn);
        }
        assert!(!differential_uniformity(&poly(1, "x^5"), &gf(4)).unwrap().is_apn);
        assert!(differential_uniformity(&poly(1, "x^5"), &gf(5)).unwrap().is_apn);
        assert!(differential_uniformity(&poly(1, "x^13"), &gf(5)).unwrap().is_apn);
    }

    #[test]
    fn report_matches_full_table() {
        let f = poly(1, "x^6 + x^3 + x");
        let field = gf(5);
        let r = differential_uniformity(&f, &field).unwrap();
        let ddt = full_ddt(&f, &field).unwrap();
        let mut best = (0, (0, 0));
        for (a, row) in ddt.iter().enumerate().skip(1) {
            assert_eq!(row.iter().sum::<u32>(), 32);
            for (b, &c) in row.iter().enumerate() {
                assert_eq!(c % 2, 0);
                if c > best.0 {
                    best = (c, (a as u32, b as u32));
                }
            }
        }
        assert_eq!((r.delta, r.worst_pair), best);
    }

    #[test]
    fn scan_reports_skips() {
        let tmpl = parse_uni(&gf(2), "0x2*x^3").unwrap();
        let rows = apn_scan(&tmpl, [2, 3, 4]);
        assert!(rows[0].is_apn().is_some());
        assert!(matches!(rows[1].outcome, ScanOutcome::Skipped { .. }));
        assert!(rows[2].is_apn().is_some());
        let big = apn_scan(&poly(1, "x^3"), [21]);
        assert!(matches!(big[0].outcome, ScanOutcome::Skipped { .. }));
    }

    #[test]
    fn invariance_examples() {
        let r = invariance_check(
            &poly(1, "x^3"),
            &Transform::AddQAffine(poly(1, "x^2 + x + 1")),
            &gf(4),
        )
        .unwrap();
        assert!(r.holds && r.delta_before == r.delta_after);
        for l in ["x^2", "x^4 + x^2 + x"] {
            let r = invariance_check(&poly(1, "x^5"), &Transform::PreCompose(poly(1, l)), &gf(5))
                .unwrap();
            assert!(r.holds);
            assert_eq!(r.delta_before, r.delta_after);
        }
    }

    #[test]
    fn invariance_rejects_bad_transforms() {
        let f = poly(1, "x^5");
        assert!(matches!(
            invariance_check(&f, &Transform::AddQAffine(poly(1, "x^3")), &gf(5)),
            Err(ApnError::NotQAffine(_))
        ));
        assert!(matches!(
            invariance_check(&f, &Transform::PostCompose(poly(1, "x^4 + x^2 + x")), &gf(3)),
            Err(ApnError::NotPermutation(_))
        ));
    }
}
