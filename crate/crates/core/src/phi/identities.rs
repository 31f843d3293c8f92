//! Named polynomial identities and (non-)divisibility facts about the φ_i,
//! decided by exact arithmetic.

use std::fmt;

use thiserror::Error;

use super::{phi_monomial, plane_product, power_sum, SymPoly};
use crate::gf2n::{Field, FieldError};
use crate::polyring::{Division, PolyError, TriPoly};

/// A single decidable claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Equal { lhs: TriPoly, rhs: TriPoly },
    Divides { divisor: TriPoly, dividend: TriPoly },
    NotDivides { divisor: TriPoly, dividend: TriPoly },
}

/// A named conjunction of statements, each with a short human label.
#[derive(Clone, Debug)]
pub struct NamedIdentity {
    pub name: String,
    pub params: Vec<(String, u32)>,
    pub parts: Vec<(String, Statement)>,
}

impl NamedIdentity {
    pub fn new(name: impl Into<String>) -> Self {
        NamedIdentity {
            name: name.into(),
            params: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn with(mut self, label: impl Into<String>, s: Statement) -> Self {
        self.parts.push((label.into(), s));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub holds: bool,
    /// Label of the first failing part.
    pub failed_part: Option<String>,
    /// Leading monomial of the offending difference or remainder.
    pub witness: Option<String>,
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "{}: holds", self.name)
        } else {
            write!(
                f,
                "{}: fails [{}] witness {}",
                self.name,
                self.failed_part.as_deref().unwrap_or("?"),
                self.witness.as_deref().unwrap_or("-")
            )
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    Unknown(String),
    #[error("bad parameters for identity `{name}`: {msg}")]
    BadParams { name: String, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Decides every part of `id`; stops at the first failure.
pub fn check_identity(id: &NamedIdentity) -> Result<IdentityReport, PolyError> {
    for (label, s) in &id.parts {
        let witness = match s {
            Statement::Equal { lhs, rhs } => {
                let diff = lhs.try_add(rhs)?;
                diff.leading().map(|(m, _)| m.to_string())
            }
            Statement::Divides { divisor, dividend } => match dividend.exact_div(divisor)? {
                Division::Exact(_) => None,
                Division::NotDivisible { witness } => Some(witness.to_string()),
            },
            Statement::NotDivides { divisor, dividend } => match dividend.exact_div(divisor)? {
                Division::Exact(_) => Some("exact quotient exists".to_string()),
                Division::NotDivisible { .. } => None,
            },
        };
        if let Some(w) = witness {
            return Ok(IdentityReport {
                name: id.name.clone(),
                holds: false,
                failed_part: Some(label.clone()),
                witness: Some(w),
            });
        }
    }
    Ok(IdentityReport {
        name: id.name.clone(),
        holds: true,
        failed_part: None,
        witness: None,
    })
}

/// Optional parameters for the parametrized identity `a`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityParams {
    pub d: Option<u32>,
    pub e: Option<u32>,
    pub j: Option<u32>,
}

pub const BUILTIN_NAMES: [&str; 12] = [
    "a",
    "b",
    "c",
    "d",
    "e",
    "f",
    "g",
    "h",
    "i",
    "j",
    "phi5-basis",
    "power-sum-quotient",
];

/// Default (e, j) pairs for identity `a`: every d = 2^j e ≤ 40, e odd ≥ 3.
fn default_halving_params() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for e in (3..=20).step_by(2) {
        let mut j = 1;
        while (e << j) <= 40 {
            out.push((e, j));
            j += 1;
        }
    }
    out
}

fn resolve_halving(p: &IdentityParams) -> Result<Vec<(u32, u32)>, IdentityError> {
    let bad = |msg: String| IdentityError::BadParams {
        name: "a".into(),
        msg,
    };
    match (p.d, p.e, p.j) {
        (None, None, None) => Ok(default_halving_params()),
        (Some(d), e, j) => {
            if d == 0 || d % 2 == 1 {
                return Err(bad(format!("d = {d} must be even and positive")));
            }
            let jj = d.trailing_zeros();
            let ee = d >> jj;
            if e.is_some_and(|e| e != ee) || j.is_some_and(|j| j != jj) {
                return Err(bad(format!("d = {d} = 2^{jj}·{ee} disagrees with e/j")));
            }
            Ok(vec![(ee, jj)])
        }
        (None, Some(e), Some(j)) if e % 2 == 1 && j >= 1 => Ok(vec![(e, j)]),
        _ => Err(bad("give d, or odd e together with j ≥ 1".into())),
    }
}

fn sym_expand(p: SymPoly) -> TriPoly {
    p.expand()
}

/// Smallest α with α² + α + 1 = 0.
fn cube_root_of_unity(field: &Field) -> Option<u32> {
    field
        .elements()
        .find(|&a| field.mul(a, a) ^ a ^ 1 == 0)
}

/// Builds a built-in identity over `field`.
pub fn builtin_identity(
    name: &str,
    field: &Field,
    params: &IdentityParams,
) -> Result<NamedIdentity, IdentityError> {
    let phi = |i: u32| phi_monomial(i, field);
    let a = plane_product(field);
    let s = |k: usize| sym_expand(SymPoly::elementary(field, k));
    let eq = |lhs: TriPoly, rhs: TriPoly| Statement::Equal { lhs, rhs };
    let nd = |divisor: &TriPoly, dividend: TriPoly| Statement::NotDivides {
        divisor: divisor.clone(),
        dividend,
    };
    let id = NamedIdentity::new(name);
    Ok(match name {
        "a" => {
            let mut id = id;
            for (e, j) in resolve_halving(params)? {
                let d = e << j;
                let k = 1u32 << j;
                id = id.with(
                    format!("phi_{d} = phi_{e}^{k} * A^{}", k - 1),
                    eq(phi(d), phi(e).pow(k).mul(&a.pow(k - 1))),
                );
                if params.d.is_some() || params.e.is_some() {
                    id.params = vec![("d".into(), d), ("e".into(), e), ("j".into(), j)];
                }
            }
            id
        }
        "b" => {
            let work = if field.degree() % 2 == 0 {
                field.clone()
            } else {
                Field::with_degree(2 * field.degree())?
            };
            let alpha = cube_root_of_unity(&work).expect("GF(4) is a subfield");
            let alpha2 = work.square(alpha);
            let (x, y, z) = (TriPoly::x(&work), TriPoly::y(&work), TriPoly::z(&work));
            let l1 = x.add(&y.scale(alpha)).add(&z.scale(alpha2));
            let l2 = x.add(&y.scale(alpha2)).add(&z.scale(alpha));
            let mut id = id.with(
                format!("phi_5 = (x+ay+a^2z)(x+a^2y+az) over {work}"),
                eq(phi_monomial(5, &work), l1.mul(&l2)),
            );
            id.params = vec![("alpha".into(), alpha), ("work_degree".into(), work.degree())];
            id
        }
        "c" => (3..=19)
            .step_by(2)
            .fold(id, |id, i| id.with(format!("A does not divide phi_{i}"), nd(&a, phi(i)))),
        "d" => id.with("phi_9^2 + phi_5^6 = A^4", eq(phi(9).pow(2).add(&phi(5).pow(6)), a.pow(4))),
        "e" => id.with(
            "phi_17 + phi_5^7 = A^2 phi_5 phi_9",
            eq(phi(17).add(&phi(5).pow(7)), a.pow(2).mul(&phi(5)).mul(&phi(9))),
        ),
        "f" => id.with("phi_18 = A phi_9^2", eq(phi(18), a.mul(&phi(9).pow(2)))),
        "g" => id.with(
            "phi_14 = A (phi_5^4 + s1^2 s3^2)",
            eq(phi(14), a.mul(&phi(5).pow(4).add(&s(1).pow(2).mul(&s(3).pow(2))))),
        ),
        "h" => id.with("A does not divide phi_15 + phi_5^6", nd(&a, phi(15).add(&phi(5).pow(6)))),
        "i" => {
            let p5 = phi(5);
            let mut id = id.with(
                "phi_5 divides phi_17",
                Statement::Divides {
                    divisor: p5.clone(),
                    dividend: phi(17),
                },
            );
            for i in [19, 18, 15, 11] {
                id = id.with(format!("phi_5 does not divide phi_{i}"), nd(&p5, phi(i)));
            }
            id
        }
        "j" => {
            let (s1, s2, s3) = (s(1), s(2), s(3));
            let combo = s1
                .pow(4)
                .mul(&s3.pow(2))
                .add(&s1.pow(3).mul(&s2.pow(2)).mul(&s3))
                .add(&s1.pow(2).mul(&s2).mul(&s3.pow(2)))
                .add(&s1.mul(&s3.pow(3)));
            id.with("A does not divide s1^2 s3^2", nd(&a, s1.pow(2).mul(&s3.pow(2))))
                .with(
                    "A does not divide s1^4 s3^2 + s1^3 s2^2 s3 + s1^2 s2 s3^2 + s1 s3^3",
                    nd(&a, combo),
                )
        }
        "phi5-basis" => id.with("phi_5 = s1^2 + s2", eq(phi(5), s(1).pow(2).add(&s(2)))),
        "power-sum-quotient" => (3..=20).fold(id, |id, i| {
            let num = power_sum(i, field).expand().add(&s(1).pow(i));
            id.with(
                format!("A phi_{i} = p_{i} + s1^{i}"),
                eq(a.mul(&phi(i)), num),
            )
        }),
        other => return Err(IdentityError::Unknown(other.to_string())),
    })
}

/// Every built-in identity over `field`, in table order.
pub fn builtin_all(field: &Field) -> Result<Vec<NamedIdentity>, IdentityError> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin_identity(n, field, &IdentityParams::default()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(n: u32) -> Field {
        Field::with_degree(n).unwrap()
    }

    #[test]
    fn halving_with_explicit_params() {
        let p = IdentityParams {
            d: Some(20),
            e: Some(5),
            j: Some(2),
        };
        let id = builtin_identity("a", &gf(1), &p).unwrap();
        assert!(check_identity(&id).unwrap().holds);
        let bad = IdentityParams {
            d: Some(20),
            e: Some(3),
            j: None,
        };
        assert!(builtin_identity("a", &gf(1), &bad).is_err());
    }

    #[test]
    fn each_builtin_holds_over_gf2() {
        for id in builtin_all(&gf(1)).unwrap() {
            let r = check_identity(&id).unwrap();
            assert!(r.holds, "{r}");
        }
    }

    #[test]
    fn false_statement_reports_witness() {
        let f = gf(1);
        let id = NamedIdentity::new("phi5=A").with(
            "phi_5 = A",
            Statement::Equal {
                lhs: phi_monomial(5, &f),
                rhs: plane_product(&f),
            },
        );
        let r = check_identity(&id).unwrap();
        assert!(!r.holds);
        // leading monomial of phi_5 + A is x^2*y (degree 3)
        assert_eq!(r.witness.as_deref(), Some("x^2*y"));
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            builtin_identity("zz", &gf(1), &IdentityParams::default()),
            Err(IdentityError::Unknown(_))
        ));
    }

    #[test]
    fn factorization_uses_gf4_extension() {
        let id = builtin_identity("b", &gf(3), &IdentityParams::default()).unwrap();
        assert!(id.params.contains(&("work_degree".into(), 6)));
        assert!(check_identity(&id).unwrap().holds);
        let id = builtin_identity("b", &gf(4), &IdentityParams::default()).unwrap();
        assert!(id.params.contains(&("work_degree".into(), 4)));
    }
}
