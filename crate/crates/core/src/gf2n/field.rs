//! Binary extension fields GF(2^n) in polynomial basis.
//!
//! Elements are stored as bitvectors packed into a `u32`: bit `i` is the
//! coefficient of `t^i`. A [`Field`] is an immutable, cheaply clonable handle;
//! the raw arithmetic entry points (`mul`, `inv`, `pow`, ...) work on bare
//! bit patterns so that polynomial code can carry the field once per
//! polynomial instead of once per coefficient. [`FieldElem`] is the checked
//! value type used at API boundaries.

use std::fmt;
use std::sync::Arc;

use super::FieldError;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;

/// Degrees up to this bound get exp/log tables as a multiplication shortcut.
const LOG_TABLE_MAX_DEGREE: u32 = 16;

/// Lexicographically smallest irreducible polynomial of each degree 1..=24,
/// by integer value of the bitvector.
const DEFAULT_MODULI: [u32; MAX_DEGREE as usize] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b, 0x20009, 0x40009, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021,
    0x100001b,
];

/// The tabulated default modulus for degree `n`.
pub fn default_modulus(n: u32) -> Option<u32> {
    if (1..=MAX_DEGREE).contains(&n) {
        Some(DEFAULT_MODULI[n as usize - 1])
    } else {
        None
    }
}

/// Degree of a nonzero GF(2)[t] polynomial.
pub(crate) fn poly_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

fn gf2_poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m).expect("nonzero modulus");
    while let Some(da) = poly_degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// Smallest nontrivial factor of `p` over GF(2), by trial division.
pub(crate) fn smallest_factor(p: u64) -> Option<u64> {
    let n = poly_degree(p)?;
    for d in 2u64..(1u64 << (n / 2 + 1)) {
        let dd = poly_degree(d).unwrap();
        if dd == 0 || dd > n / 2 {
            continue;
        }
        if gf2_poly_rem(p, d) == 0 {
            return Some(d);
        }
    }
    None
}

/// Carry-less product of two polynomials over GF(2).
#[inline]
pub(crate) fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut r = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    r
}

struct LogTables {
    log: Vec<u32>,
    // doubled so that exp[log a + log b] never needs a reduction mod q-1
    exp: Vec<u32>,
}

struct Inner {
    n: u32,
    modulus: u32,
    logs: Option<LogTables>,
}

/// GF(2^n) defined by an irreducible modulus.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl Field {
    /// Builds GF(2^n) with the given modulus, or with the default modulus for
    /// degree `n` when `modulus` is `None`.
    pub fn new(n: u32, modulus: Option<u32>) -> Result<Self, FieldError> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        let modulus = match modulus {
            None => DEFAULT_MODULI[n as usize - 1],
            Some(m) => {
                let got = poly_degree(m as u64);
                if got != Some(n) {
                    return Err(FieldError::WrongDegree {
                        modulus: m,
                        expected: n,
                        got,
                    });
                }
                if let Some(factor) = smallest_factor(m as u64) {
                    return Err(FieldError::Reducible {
                        modulus: m,
                        factor: factor as u32,
                    });
                }
                m
            }
        };
        let mut inner = Inner {
            n,
            modulus,
            logs: None,
        };
        if n <= LOG_TABLE_MAX_DEGREE {
            inner.logs = Some(build_log_tables(&inner));
        }
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    /// Shorthand for `Field::new(n, None)`.
    pub fn with_degree(n: u32) -> Result<Self, FieldError> {
        Self::new(n, None)
    }

    /// Parses a field spec: `"n"` or `"n:0xHEX"`.
    pub fn from_spec(spec: &str) -> Result<Self, FieldError> {
        let spec = spec.trim();
        let bad = || FieldError::BadSpec(spec.to_string());
        let (deg, modulus) = match spec.split_once(':') {
            Some((d, m)) => (d.trim(), Some(parse_hex(m.trim()).ok_or_else(bad)?)),
            None => (spec, None),
        };
        let n: u32 = deg.parse().map_err(|_| bad())?;
        Self::new(n, modulus)
    }

    /// Canonical spec string, always with the modulus.
    pub fn spec(&self) -> String {
        format!("{}:{:#x}", self.degree(), self.modulus())
    }

    pub fn degree(&self) -> u32 {
        self.inner.n
    }

    pub fn modulus(&self) -> u32 {
        self.inner.modulus
    }

    /// Number of elements, 2^n.
    pub fn order(&self) -> u64 {
        1u64 << self.inner.n
    }

    /// Number of elements as a `usize`, for table sizing.
    pub fn size(&self) -> usize {
        1usize << self.inner.n
    }

    pub fn has_log_tables(&self) -> bool {
        self.inner.logs.is_some()
    }

    /// True when `bits` is a valid element (degree < n).
    pub fn contains(&self, bits: u32) -> bool {
        (bits as u64) < self.order()
    }

    /// All elements in increasing bit-pattern order.
    pub fn elements(&self) -> impl Iterator<Item = u32> + Clone {
        0..self.order() as u32
    }

    pub fn elem(&self, bits: u32) -> Result<FieldElem, FieldError> {
        if !self.contains(bits) {
            return Err(FieldError::ElementOutOfRange {
                bits,
                n: self.degree(),
            });
        }
        Ok(FieldElem {
            bits,
            field: self.clone(),
        })
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            bits: 0,
            field: self.clone(),
        }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem {
            bits: 1,
            field: self.clone(),
        }
    }

    /// Parses an element literal `0xHEX` (a bare `0`/`1` is also accepted).
    pub fn parse_elem(&self, lit: &str) -> Result<FieldElem, FieldError> {
        let bits = parse_hex(lit.trim()).ok_or_else(|| FieldError::BadLiteral(lit.to_string()))?;
        self.elem(bits)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.inner.logs {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => self.mul_generic(a, b),
        }
    }

    /// Shift-and-add multiplication with reduction by the modulus. Always
    /// available; the table path must agree with it bit for bit.
    pub fn mul_generic(&self, a: u32, b: u32) -> u32 {
        self.reduce(clmul(a, b))
    }

    fn reduce(&self, mut p: u64) -> u32 {
        let n = self.inner.n;
        let m = self.inner.modulus as u64;
        while let Some(d) = poly_degree(p) {
            if d < n {
                break;
            }
            p ^= m << (d - n);
        }
        p as u32
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^(2^k), k repeated squarings.
    pub fn frobenius_power(&self, a: u32, k: u32) -> u32 {
        (0..k).fold(a, |x, _| self.square(x))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.inner.logs {
            Some(t) => {
                let q1 = (self.order() - 1) as u32;
                let l = t.log[a as usize];
                Some(t.exp[((q1 - l) % q1) as usize])
            }
            None => Some(self.pow(a, self.order() - 2)),
        }
    }

    /// Square root (the inverse of the Frobenius x -> x^2).
    pub fn sqrt(&self, a: u32) -> u32 {
        self.frobenius_power(a, self.inner.n - 1)
    }

    pub(crate) fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self == other
    }

    pub(crate) fn check_same(&self, other: &Field) -> Result<(), FieldError> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch {
                left: self.spec(),
                right: other.spec(),
            })
        }
    }
}

fn build_log_tables(f: &Inner) -> LogTables {
    let tmp = Field {
        inner: Arc::new(Inner {
            n: f.n,
            modulus: f.modulus,
            logs: None,
        }),
    };
    let q = 1usize << f.n;
    let q1 = (q - 1) as u64;
    let prime_factors = prime_factors(q1);
    let generator = (1..q as u32)
        .find(|&g| prime_factors.iter().all(|&p| tmp.pow(g, q1 / p) != 1))
        .expect("multiplicative group is cyclic");
    let mut log = vec![0u32; q];
    let mut exp = vec![0u32; 2 * (q - 1)];
    let mut x = 1u32;
    for i in 0..q - 1 {
        exp[i] = x;
        exp[i + q - 1] = x;
        log[x as usize] = i as u32;
        x = tmp.mul_generic(x, generator);
    }
    LogTables { log, exp }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn parse_hex(s: &str) -> Option<u32> {
    if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        if h.is_empty() {
            return None;
        }
        u32::from_str_radix(h, 16).ok()
    } else if s == "0" || s == "1" {
        Some(s.parse().unwrap())
    } else {
        None
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.n == other.inner.n && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})[{:#x}]", self.inner.n, self.inner.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An element of a specific [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    bits: u32,
    field: Field,
}

impl FieldElem {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.field.check_same(&other.field)?;
        Ok(self.with_bits(self.bits ^ other.bits))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.field.check_same(&other.field)?;
        Ok(self.with_bits(self.field.mul(self.bits, other.bits)))
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        self.field
            .inv(self.bits)
            .map(|b| self.with_bits(b))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.with_bits(self.field.pow(self.bits, e))
    }

    fn with_bits(&self, bits: u32) -> FieldElem {
        FieldElem {
            bits,
            field: self.field.clone(),
        }
    }
}

/// Which arithmetic operation [`elem_arith`] should perform.
#[derive(Clone, Debug)]
pub enum ElemOp {
    Add(FieldElem),
    Mul(FieldElem),
    Inv,
    Pow(u64),
}

/// Dispatching front end over the checked element operations.
pub fn elem_arith(a: &FieldElem, op: ElemOp) -> Result<FieldElem, FieldError> {
    match op {
        ElemOp::Add(b) => a.add(&b),
        ElemOp::Mul(b) => a.mul(&b),
        ElemOp::Inv => a.inv(),
        ElemOp::Pow(e) => Ok(a.pow(e)),
    }
}

/// Formats raw bits as an element literal.
pub fn hex(bits: u32) -> String {
    format!("{bits:#x}")
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}@{:?}", self.bits, self.field)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}
