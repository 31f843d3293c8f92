//! The cubic tower GF(q) ⊂ GF(q^3), q = 2^n, with the q-power Frobenius ρ
//! and the conjugate-symmetric forms built from it.

use super::{Embedding, Field, FieldElem, FieldError};

/// Largest base degree whose cubic extension stays within [`super::MAX_DEGREE`].
pub const MAX_BASE_DEGREE: u32 = super::MAX_DEGREE / 3;

/// GF(2^n) together with GF(2^{3n}) and a fixed embedding between them.
#[derive(Clone, Debug)]
pub struct TowerField {
    base: Field,
    ext: Field,
    embedding: Embedding,
}

/// Selector for [`TowerField::q_form`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QForm {
    Q1,
    Q4,
    Q5,
    Q6,
}

impl QForm {
    pub fn arity(self) -> usize {
        match self {
            QForm::Q1 => 1,
            QForm::Q4 | QForm::Q5 => 2,
            QForm::Q6 => 3,
        }
    }
}

impl TowerField {
    /// Tower over `base` with the default degree-3n modulus for the extension.
    pub fn new(base: &Field) -> Result<Self, FieldError> {
        Self::with_ext_modulus(base, None)
    }

    pub fn with_ext_modulus(base: &Field, ext_modulus: Option<u32>) -> Result<Self, FieldError> {
        let n = base.degree();
        if n > MAX_BASE_DEGREE {
            return Err(FieldError::DegreeOutOfRange(3 * n));
        }
        let ext = Field::new(3 * n, ext_modulus)?;
        let embedding = Embedding::new(base, &ext)?;
        Ok(TowerField {
            base: base.clone(),
            ext,
            embedding,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn embed(&self, a: u32) -> u32 {
        self.embedding.map(a)
    }

    /// Back to the base field, if `a` is fixed by ρ.
    pub fn restrict(&self, a: u32) -> Option<u32> {
        self.embedding.preimage(a)
    }

    pub fn is_base(&self, a: u32) -> bool {
        self.frob(a) == a
    }

    /// ρ(a) = a^q.
    #[inline]
    pub fn frob(&self, a: u32) -> u32 {
        self.ext.frobenius_power(a, self.base.degree())
    }

    /// (a, ρ(a), ρ²(a)).
    #[inline]
    pub fn conjugates(&self, a: u32) -> [u32; 3] {
        let r1 = self.frob(a);
        [a, r1, self.frob(r1)]
    }

    pub fn trace(&self, a: u32) -> u32 {
        let [a0, a1, a2] = self.conjugates(a);
        a0 ^ a1 ^ a2
    }

    pub fn norm(&self, a: u32) -> u32 {
        let [a0, a1, a2] = self.conjugates(a);
        self.ext.mul(self.ext.mul(a0, a1), a2)
    }

    /// c ρ(c) + c ρ²(c) + ρ(c) ρ²(c).
    pub fn q1(&self, c: u32) -> u32 {
        let f = &self.ext;
        let [c0, c1, c2] = self.conjugates(c);
        f.mul(c0, c1) ^ f.mul(c0, c2) ^ f.mul(c1, c2)
    }

    /// a ρ(a) ρ²(b) + a ρ(b) ρ²(a) + b ρ(a) ρ²(a).
    pub fn q4(&self, a: u32, b: u32) -> u32 {
        let f = &self.ext;
        let [a0, a1, a2] = self.conjugates(a);
        let [b0, b1, b2] = self.conjugates(b);
        f.mul(f.mul(a0, a1), b2) ^ f.mul(f.mul(a0, b1), a2) ^ f.mul(f.mul(b0, a1), a2)
    }

    /// a (ρ(b) + ρ²(b)) + b (ρ(a) + ρ²(a)) + ρ(a) ρ²(b) + ρ(b) ρ²(a).
    pub fn q5(&self, a: u32, b: u32) -> u32 {
        let f = &self.ext;
        let [a0, a1, a2] = self.conjugates(a);
        let [b0, b1, b2] = self.conjugates(b);
        f.mul(a0, b1 ^ b2) ^ f.mul(b0, a1 ^ a2) ^ f.mul(a1, b2) ^ f.mul(b1, a2)
    }

    /// Sum of u ρ(v) ρ²(w) over all six orderings (u, v, w) of the three
    /// arguments. This is the ρ-stable form; a variant with one ordering
    /// repeated in place of `d ρ(b1) ρ²(c1)` cancels to four terms and is
    /// not ρ-stable.
    pub fn q6(&self, c1: u32, b1: u32, d: u32) -> u32 {
        let f = &self.ext;
        let [c0, cr1, cr2] = self.conjugates(c1);
        let [b0, br1, br2] = self.conjugates(b1);
        let [d0, dr1, dr2] = self.conjugates(d);
        let t = |u: u32, v: u32, w: u32| f.mul(f.mul(u, v), w);
        t(b0, cr1, dr2) ^ t(b0, dr1, cr2) ^ t(c0, br1, dr2) ^ t(c0, dr1, br2) ^ t(d0, cr1, br2)
            ^ t(d0, br1, cr2)
    }

    fn check_ext(&self, a: &FieldElem) -> Result<u32, FieldError> {
        self.ext.check_same(a.field())?;
        Ok(a.bits())
    }

    /// Checked ρ on an element of the extension field.
    pub fn frobenius_q(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        let bits = self.check_ext(a)?;
        self.ext.elem(self.frob(bits))
    }

    /// Checked (trace, norm) of an extension element; both lie in the
    /// embedded base field.
    pub fn trace_norm(&self, a: &FieldElem) -> Result<(FieldElem, FieldElem), FieldError> {
        let bits = self.check_ext(a)?;
        Ok((self.ext.elem(self.trace(bits))?, self.ext.elem(self.norm(bits))?))
    }

    /// Checked evaluation of one of the q-forms.
    pub fn q_form(&self, kind: QForm, args: &[FieldElem]) -> Result<FieldElem, FieldError> {
        if args.len() != kind.arity() {
            return Err(FieldError::Arity {
                expected: kind.arity(),
                got: args.len(),
            });
        }
        let bits = args
            .iter()
            .map(|a| self.check_ext(a))
            .collect::<Result<Vec<_>, _>>()?;
        let v = match kind {
            QForm::Q1 => self.q1(bits[0]),
            QForm::Q4 => self.q4(bits[0], bits[1]),
            QForm::Q5 => self.q5(bits[0], bits[1]),
            QForm::Q6 => self.q6(bits[0], bits[1], bits[2]),
        };
        self.ext.elem(v)
    }
}
