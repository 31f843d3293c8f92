use super::{Field, FieldError};

/// Field homomorphism GF(2^k) -> GF(2^m), k | m, fixed by sending the
/// generator `t` of the small field to the smallest root (by bit pattern) of
/// its modulus inside the large field.
#[derive(Clone, Debug)]
pub struct Embedding {
    from: Field,
    to: Field,
    root: u32,
    // images[i] = root^i
    images: Vec<u32>,
    // row-reduced images for preimage solving: (vector, combination mask)
    echelon: Vec<(u32, u32)>,
}

impl Embedding {
    pub fn new(from: &Field, to: &Field) -> Result<Self, FieldError> {
        let (k, m) = (from.degree(), to.degree());
        if m % k != 0 {
            return Err(FieldError::NotSubfield { sub: k, sup: m });
        }
        let modulus = from.modulus();
        let root = to
            .elements()
            .find(|&a| eval_gf2_poly(to, modulus, a) == 0)
            .expect("a subfield modulus splits in the extension");
        let mut images = Vec::with_capacity(k as usize);
        let mut p = 1u32;
        for _ in 0..k {
            images.push(p);
            p = to.mul(p, root);
        }
        let echelon = echelon_basis(&images);
        Ok(Embedding {
            from: from.clone(),
            to: to.clone(),
            root,
            images,
            echelon,
        })
    }

    pub fn source(&self) -> &Field {
        &self.from
    }

    pub fn target(&self) -> &Field {
        &self.to
    }

    /// Image of the small field's generator `t`.
    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn map(&self, a: u32) -> u32 {
        let mut out = 0;
        let mut bits = a;
        let mut i = 0;
        while bits != 0 {
            if bits & 1 != 0 {
                out ^= self.images[i];
            }
            bits >>= 1;
            i += 1;
        }
        out
    }

    /// Inverse image, if `a` lies in the embedded subfield.
    pub fn preimage(&self, a: u32) -> Option<u32> {
        let mut v = a;
        let mut combo = 0;
        for &(row, mask) in &self.echelon {
            let pivot = 31 - row.leading_zeros();
            if v >> pivot & 1 != 0 {
                v ^= row;
                combo ^= mask;
            }
        }
        (v == 0).then_some(combo)
    }
}

/// Evaluates a GF(2)[t] polynomial (bit i = coefficient of t^i) at `a`.
fn eval_gf2_poly(field: &Field, poly: u32, a: u32) -> u32 {
    let mut acc = 0;
    for i in (0..32).rev() {
        acc = field.mul(acc, a);
        if poly >> i & 1 != 0 {
            acc ^= 1;
        }
    }
    acc
}

fn echelon_basis(vectors: &[u32]) -> Vec<(u32, u32)> {
    // fully reduced: no row contains another row's pivot bit
    let mut rows: Vec<(u32, u32)> = Vec::new();
    for (i, &v) in vectors.iter().enumerate() {
        let mut v = v;
        let mut mask = 1u32 << i;
        for &(row, rmask) in &rows {
            let pivot = 31 - row.leading_zeros();
            if v >> pivot & 1 != 0 {
                v ^= row;
                mask ^= rmask;
            }
        }
        assert!(v != 0, "embedding images must be linearly independent");
        let pivot = 31 - v.leading_zeros();
        for (row, rmask) in rows.iter_mut() {
            if *row >> pivot & 1 != 0 {
                *row ^= v;
                *rmask ^= mask;
            }
        }
        rows.push((v, mask));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        for (k, m) in [(1, 3), (2, 4), (2, 6), (3, 6), (3, 9), (4, 12)] {
            let small = Field::with_degree(k).unwrap();
            let big = Field::with_degree(m).unwrap();
            let e = Embedding::new(&small, &big).unwrap();
            assert_eq!(e.map(1), 1);
            for a in small.elements() {
                assert_eq!(e.preimage(e.map(a)), Some(a));
                for b in small.elements() {
                    assert_eq!(e.map(small.mul(a, b)), big.mul(e.map(a), e.map(b)));
                    assert_eq!(e.map(a ^ b), e.map(a) ^ e.map(b));
                }
            }
            let fixed = big
                .elements()
                .filter(|&x| big.frobenius_power(x, k) == x)
                .count();
            let hits = big.elements().filter(|&x| e.preimage(x).is_some()).count();
            assert_eq!(fixed, small.size());
            assert_eq!(hits, small.size());
        }
    }

    #[test]
    fn root_is_smallest() {
        let small = Field::with_degree(2).unwrap();
        let big = Field::with_degree(4).unwrap();
        let e = Embedding::new(&small, &big).unwrap();
        let roots: Vec<u32> = big
            .elements()
            .filter(|&a| big.mul(a, a) ^ a ^ 1 == 0)
            .collect();
        assert_eq!(e.root(), roots[0]);
    }

    #[test]
    fn rejects_non_subfield() {
        let a = Field::with_degree(2).unwrap();
        let b = Field::with_degree(5).unwrap();
        assert!(matches!(
            Embedding::new(&a, &b),
            Err(FieldError::NotSubfield { sub: 2, sup: 5 })
        ));
    }
}
