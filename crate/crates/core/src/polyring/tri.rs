use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{Monomial, PolyError};
use crate::gf2n::{Embedding, Field, FieldElem};

/// Sparse polynomial in x, y, z over a binary field. Terms are kept in
/// graded-lex order; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TriPoly {
    field: Field,
    terms: BTreeMap<Monomial, u32>,
}

/// Outcome of [`TriPoly::exact_div`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    Exact(TriPoly),
    /// The remainder is nonzero; its leading monomial is the witness.
    NotDivisible { witness: Monomial },
}

impl Division {
    pub fn is_exact(&self) -> bool {
        matches!(self, Division::Exact(_))
    }

    pub fn exact(self) -> Option<TriPoly> {
        match self {
            Division::Exact(q) => Some(q),
            Division::NotDivisible { .. } => None,
        }
    }
}

fn xor_into(terms: &mut BTreeMap<Monomial, u32>, m: Monomial, c: u32) {
    if c == 0 {
        return;
    }
    match terms.entry(m) {
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

impl TriPoly {
    pub fn zero(field: &Field) -> Self {
        TriPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, c: u32) -> Self {
        Self::term(field, Monomial::ONE, c)
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn term(field: &Field, m: Monomial, c: u32) -> Self {
        let mut p = Self::zero(field);
        xor_into(&mut p.terms, m, c);
        p
    }

    /// Variable number `v` (0 = x, 1 = y, 2 = z).
    pub fn var(field: &Field, v: usize) -> Self {
        let mut e = [0u16; 3];
        e[v] = 1;
        Self::term(field, Monomial::from_exps(e), 1)
    }

    pub fn x(field: &Field) -> Self {
        Self::var(field, 0)
    }

    pub fn y(field: &Field) -> Self {
        Self::var(field, 1)
    }

    pub fn z(field: &Field) -> Self {
        Self::var(field, 2)
    }

    /// Builds from (monomial, coefficient) pairs; repeated monomials add up.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, u32)>>(field: &Field, it: I) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in it {
            xor_into(&mut p.terms, m, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, u32)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, m: Monomial) -> u32 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(Monomial, u32)> {
        self.terms.iter().next_back().map(|(&m, &c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The homogeneous component of total degree `d`.
    pub fn degree_slice(&self, d: u32) -> TriPoly {
        TriPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    fn check(&self, other: &TriPoly) -> Result<(), PolyError> {
        self.field.check_same(&other.field).map_err(PolyError::from)
    }

    pub fn try_add(&self, other: &TriPoly) -> Result<TriPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            xor_into(&mut out.terms, m, c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &TriPoly) -> Result<TriPoly, PolyError> {
        self.check(other)?;
        let f = &self.field;
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (&m1, &c1) in &self.terms {
            for (&m2, &c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert(0) ^= f.mul(c1, c2);
            }
        }
        Ok(TriPoly {
            field: f.clone(),
            terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
        })
    }

    /// Sum, panicking on a field mismatch. Internal pipelines only combine
    /// polynomials they built over one field.
    pub fn add(&self, other: &TriPoly) -> TriPoly {
        self.try_add(other).expect("field mismatch in TriPoly::add")
    }

    pub fn mul(&self, other: &TriPoly) -> TriPoly {
        self.try_mul(other).expect("field mismatch in TriPoly::mul")
    }

    pub fn add_assign(&mut self, other: &TriPoly) {
        self.check(other).expect("field mismatch in TriPoly::add_assign");
        for (&m, &c) in &other.terms {
            xor_into(&mut self.terms, m, c);
        }
    }

    pub fn scale(&self, c: u32) -> TriPoly {
        let f = &self.field;
        TriPoly {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(&m, &v)| {
                    let p = f.mul(v, c);
                    (p != 0).then_some((m, p))
                })
                .collect(),
        }
    }

    pub fn scale_elem(&self, c: &FieldElem) -> Result<TriPoly, PolyError> {
        self.field.check_same(c.field())?;
        Ok(self.scale(c.bits()))
    }

    pub fn mul_monomial(&self, m: Monomial, c: u32) -> TriPoly {
        let f = &self.field;
        TriPoly {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(&k, &v)| {
                    let p = f.mul(v, c);
                    (p != 0).then_some((k.mul(m), p))
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> TriPoly {
        let mut base = self.clone();
        let mut acc = TriPoly::one(&self.field);
        while e != 0 {
            if e & 1 != 0 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e != 0 {
                base = base.frobenius_square();
            }
        }
        acc
    }

    /// p^2, computed term-wise (squaring is additive in characteristic 2).
    pub fn frobenius_square(&self) -> TriPoly {
        let f = &self.field;
        TriPoly {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&m, &c)| (m.mul(m), f.square(c)))
                .collect(),
        }
    }

    /// Applies `g` to every coefficient, moving into `field`.
    pub fn map_coeffs(&self, field: &Field, g: impl Fn(u32) -> u32) -> TriPoly {
        TriPoly::from_terms(field, self.terms.iter().map(|(&m, &c)| (m, g(c))))
    }

    /// Coefficients pushed through a field embedding.
    pub fn embed(&self, e: &Embedding) -> Result<TriPoly, PolyError> {
        self.field.check_same(e.source())?;
        Ok(self.map_coeffs(e.target(), |c| e.map(c)))
    }

    /// Pulls coefficients back through an embedding; fails if some
    /// coefficient is outside the image.
    pub fn restrict(&self, e: &Embedding) -> Result<TriPoly, PolyError> {
        self.field.check_same(e.target())?;
        let mut out = TriPoly::zero(e.source());
        for (&m, &c) in &self.terms {
            let b = e.preimage(c).ok_or(PolyError::NotInSubfield { monomial: m })?;
            xor_into(&mut out.terms, m, b);
        }
        Ok(out)
    }

    /// Substitutes variables: variable `v` of `self` becomes slot `perm[v]`.
    pub fn permute(&self, perm: [usize; 3]) -> TriPoly {
        TriPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&m, &c)| (m.permuted(perm), c)).collect(),
        }
    }

    /// Invariance under the transposition (x y) and the 3-cycle, which
    /// generate all six coordinate permutations.
    pub fn is_symmetric(&self) -> bool {
        *self == self.permute([1, 0, 2]) && *self == self.permute([1, 2, 0])
    }

    pub fn eval(&self, x: u32, y: u32, z: u32) -> u32 {
        let f = &self.field;
        self.terms.iter().fold(0, |acc, (m, &c)| {
            let v = f.mul(
                f.mul(f.pow(x, m.x as u64), f.pow(y, m.y as u64)),
                f.pow(z, m.z as u64),
            );
            acc ^ f.mul(c, v)
        })
    }

    /// Multivariate division by a single divisor under graded-lex order.
    /// Returns (quotient, remainder) with `self = q * den + r` and no term of
    /// `r` divisible by the leading monomial of `den`.
    pub fn div_rem(&self, den: &TriPoly) -> Result<(TriPoly, TriPoly), PolyError> {
        self.check(den)?;
        let (lm, lc) = den.leading().ok_or(PolyError::DivisionByZero)?;
        let f = &self.field;
        let lc_inv = f.inv(lc).expect("nonzero leading coefficient");
        let mut work = self.terms.clone();
        let mut quot = BTreeMap::new();
        let mut rem = BTreeMap::new();
        while let Some((&m, &c)) = work.iter().next_back() {
            match lm.quotient_of(m) {
                Some(qm) => {
                    let qc = f.mul(c, lc_inv);
                    xor_into(&mut quot, qm, qc);
                    for (&dm, &dc) in &den.terms {
                        xor_into(&mut work, dm.mul(qm), f.mul(dc, qc));
                    }
                    debug_assert!(!work.contains_key(&m));
                }
                None => {
                    work.remove(&m);
                    xor_into(&mut rem, m, c);
                }
            }
        }
        Ok((
            TriPoly {
                field: f.clone(),
                terms: quot,
            },
            TriPoly {
                field: f.clone(),
                terms: rem,
            },
        ))
    }

    /// Exact division: the quotient when `den` divides `self`, re-verified
    /// by multiplication, or the leading monomial of the nonzero remainder.
    pub fn exact_div(&self, den: &TriPoly) -> Result<Division, PolyError> {
        let (q, r) = self.div_rem(den)?;
        if let Some((witness, _)) = r.leading() {
            return Ok(Division::NotDivisible { witness });
        }
        if q.mul(den) != *self {
            return Err(PolyError::Internal("quotient failed re-multiplication"));
        }
        Ok(Division::Exact(q))
    }

    pub fn divides(&self, num: &TriPoly) -> Result<bool, PolyError> {
        Ok(num.exact_div(self)?.is_exact())
    }

    /// Renders with custom variable names.
    pub fn render(&self, names: [&str; 3]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| super::text::render_term(c, &m.render(names), *m == Monomial::ONE))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["x", "y", "z"]))
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriPoly[{:?}]({})", self.field, self)
    }
}
