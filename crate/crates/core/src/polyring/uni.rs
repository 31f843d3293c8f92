use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::PolyError;
use crate::gf2n::{Embedding, Field, FieldElem};

/// Sparse univariate polynomial over a binary field.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    terms: BTreeMap<u32, u32>,
}

fn xor_into(terms: &mut BTreeMap<u32, u32>, e: u32, c: u32) {
    if c == 0 {
        return;
    }
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let v = *o.get() ^ c;
            if v == 0 {
                o.remove();
            } else {
                *o.get_mut() = v;
            }
        }
    }
}

/// Which ring operation [`uni_ops`] should perform.
#[derive(Clone, Debug)]
pub enum UniOp {
    Add(UniPoly),
    Mul(UniPoly),
    Compose(UniPoly),
    Eval(FieldElem),
}

/// Result of [`uni_ops`]: evaluation yields an element, the rest a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniValue {
    Poly(UniPoly),
    Elem(FieldElem),
}

pub fn uni_ops(a: &UniPoly, op: UniOp) -> Result<UniValue, PolyError> {
    Ok(match op {
        UniOp::Add(b) => UniValue::Poly(a.try_add(&b)?),
        UniOp::Mul(b) => UniValue::Poly(a.try_mul(&b)?),
        UniOp::Compose(b) => UniValue::Poly(a.compose(&b)?),
        UniOp::Eval(c) => {
            a.field.check_same(c.field())?;
            UniValue::Elem(a.field.elem(a.eval(c.bits()))?)
        }
    })
}

impl UniPoly {
    pub fn zero(field: &Field) -> Self {
        UniPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: &Field, e: u32, c: u32) -> Self {
        let mut p = Self::zero(field);
        xor_into(&mut p.terms, e, c);
        p
    }

    pub fn constant(field: &Field, c: u32) -> Self {
        Self::monomial(field, 0, c)
    }

    /// x^e.
    pub fn x_pow(field: &Field, e: u32) -> Self {
        Self::monomial(field, e, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32)>>(field: &Field, it: I) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in it {
            xor_into(&mut p.terms, e, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, u32)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: u32) -> u32 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.values().next_back().copied().unwrap_or(0)
    }

    fn check(&self, other: &UniPoly) -> Result<(), PolyError> {
        self.field.check_same(&other.field).map_err(PolyError::from)
    }

    pub fn try_add(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            xor_into(&mut out.terms, e, c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        self.check(other)?;
        let f = &self.field;
        let mut out = UniPoly::zero(f);
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                xor_into(&mut out.terms, e1 + e2, f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.try_add(other).expect("field mismatch in UniPoly::add")
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.try_mul(other).expect("field mismatch in UniPoly::mul")
    }

    pub fn scale(&self, c: u32) -> UniPoly {
        UniPoly::from_terms(&self.field, self.terms().map(|(e, v)| (e, self.field.mul(v, c))))
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::constant(&self.field, 1);
        while e != 0 {
            if e & 1 != 0 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e != 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// self(inner(x)).
    pub fn compose(&self, inner: &UniPoly) -> Result<UniPoly, PolyError> {
        self.check(inner)?;
        let mut out = UniPoly::zero(&self.field);
        let mut cached: Option<(u32, UniPoly)> = None;
        for (&e, &c) in &self.terms {
            let p = match cached.take() {
                Some((prev, pp)) => pp.mul(&inner.pow(e - prev)),
                None => inner.pow(e),
            };
            out = out.add(&p.scale(c));
            cached = Some((e, p));
        }
        Ok(out)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        let mut last_e = 0u32;
        let mut xp = 1u32;
        for (&e, &c) in &self.terms {
            xp = f.mul(xp, f.pow(x, (e - last_e) as u64));
            last_e = e;
            acc ^= f.mul(c, xp);
        }
        acc
    }

    /// f(x) for every x of the field, indexed by bit pattern.
    pub fn value_table(&self) -> Vec<u32> {
        self.field.elements().map(|x| self.eval(x)).collect()
    }

    /// Every exponent is zero or a power of two.
    pub fn is_qaffine(&self) -> bool {
        self.terms.keys().all(|&e| e == 0 || e.is_power_of_two())
    }

    /// q-affine with no constant term.
    pub fn is_linearized(&self) -> bool {
        self.is_qaffine() && self.coeff(0) == 0
    }

    /// Splits into (non-q-affine part, q-affine part).
    pub fn split_qaffine(&self) -> (UniPoly, UniPoly) {
        let (aff, rest): (Vec<_>, Vec<_>) = self
            .terms()
            .partition(|&(e, _)| e == 0 || e.is_power_of_two());
        (
            UniPoly::from_terms(&self.field, rest),
            UniPoly::from_terms(&self.field, aff),
        )
    }

    pub fn embed(&self, e: &Embedding) -> Result<UniPoly, PolyError> {
        self.field.check_same(e.source())?;
        Ok(UniPoly::from_terms(e.target(), self.terms().map(|(k, c)| (k, e.map(c)))))
    }

    /// This polynomial with coefficients carried into `target`, which must
    /// contain the coefficient field.
    pub fn lift_to(&self, target: &Field) -> Result<UniPoly, PolyError> {
        if self.field.same_as(target) {
            return Ok(self.clone());
        }
        let e = Embedding::new(&self.field, target)?;
        self.embed(&e)
    }

    pub fn restrict(&self, e: &Embedding) -> Result<UniPoly, PolyError> {
        self.field.check_same(e.target())?;
        let mut out = UniPoly::zero(e.source());
        for (&k, &c) in &self.terms {
            let b = e.preimage(c).ok_or(PolyError::NotInSubfieldUni { exponent: k })?;
            xor_into(&mut out.terms, k, b);
        }
        Ok(out)
    }

    /// Exhaustively decides whether x -> f(x) is a bijection of `field`.
    pub fn is_permutation(&self, field: &Field) -> Result<bool, PolyError> {
        let f = self.lift_to(field)?;
        let mut seen = vec![false; field.size()];
        for x in field.elements() {
            let y = f.eval(x) as usize;
            if seen[y] {
                return Ok(false);
            }
            seen[y] = true;
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(&e, &c)| {
                let var = match e {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{e}"),
                };
                super::text::render_term(c, &var, e == 0)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{:?}]({})", self.field, self.render())
    }
}
