use std::cmp::Ordering;
use std::fmt;

/// Exponent triple x^i y^j z^k, ordered graded-lexicographically with
/// x > y > z.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub x: u16,
    pub y: u16,
    pub z: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0, z: 0 };

    pub const fn new(x: u16, y: u16, z: u16) -> Self {
        Monomial { x, y, z }
    }

    pub fn degree(self) -> u32 {
        self.x as u32 + self.y as u32 + self.z as u32
    }

    pub fn exps(self) -> [u16; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_exps(e: [u16; 3]) -> Self {
        Monomial::new(e[0], e[1], e[2])
    }

    pub fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn divides(self, o: Monomial) -> bool {
        self.x <= o.x && self.y <= o.y && self.z <= o.z
    }

    /// o / self, when self divides o.
    pub fn quotient_of(self, o: Monomial) -> Option<Monomial> {
        self.divides(o)
            .then(|| Monomial::new(o.x - self.x, o.y - self.y, o.z - self.z))
    }

    /// Variables reordered so that variable `v` moves to slot `perm[v]`.
    pub fn permuted(self, perm: [usize; 3]) -> Monomial {
        let e = self.exps();
        let mut out = [0u16; 3];
        for v in 0..3 {
            out[perm[v]] = e[v];
        }
        Monomial::from_exps(out)
    }

    /// Renders with the given variable names, `1` for the empty product.
    pub fn render(self, names: [&str; 3]) -> String {
        let parts: Vec<String> = self
            .exps()
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
            .then(self.y.cmp(&other.y))
            .then(self.z.cmp(&other.z))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["x", "y", "z"]))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["x", "y", "z"]))
    }
}
