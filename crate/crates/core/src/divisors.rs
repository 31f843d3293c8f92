//! Formal divisors on the five lines at infinity of the degree-20 surface and
//! a mechanical replay of the case analysis that leaves two divisor shapes.
//!
//! Lines: A0 = {x+y}, A1 = {y+z}, A2 = {x+z} (rational over GF(q)), and C1,
//! C2, the two F4-conjugate linear factors of φ₅.

use std::fmt;
use std::ops::Add;

/// Index order of [`Divisor`] coefficients.
pub const LABELS: [&str; 5] = ["A0", "A1", "A2", "C1", "C2"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor(pub [u8; 5]);

/// The hyperplane-section divisor 3A0 + 3A1 + 3A2 + 4C1 + 4C2.
pub const D: Divisor = Divisor([3, 3, 3, 4, 4]);

impl Divisor {
    pub const ZERO: Divisor = Divisor([0; 5]);

    pub fn new(a0: u8, a1: u8, a2: u8, c1: u8, c2: u8) -> Self {
        Divisor([a0, a1, a2, c1, c2])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&m| m as u32).sum()
    }

    /// Componentwise ≤.
    pub fn le(&self, other: &Divisor) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    /// Labels of the coordinates where `self` exceeds `bound`.
    pub fn excess_over(&self, bound: &Divisor) -> Vec<&'static str> {
        (0..5)
            .filter(|&k| self.0[k] > bound.0[k])
            .map(|k| LABELS[k])
            .collect()
    }

    pub fn checked_sub(&self, other: &Divisor) -> Option<Divisor> {
        let mut out = [0; 5];
        for k in 0..5 {
            out[k] = self.0[k].checked_sub(other.0[k])?;
        }
        Some(Divisor(out))
    }

    fn distinct_a_lines(&self) -> usize {
        self.0[..3].iter().filter(|&&m| m > 0).count()
    }

    /// C1 ↔ C2.
    pub fn swap_c(&self) -> Divisor {
        let [a0, a1, a2, c1, c2] = self.0;
        Divisor([a0, a1, a2, c2, c1])
    }

    /// Image under the variable permutation `perm` (variable v goes to
    /// perm[v]; x, y, z = 0, 1, 2).
    pub fn permuted(&self, perm: [usize; 3]) -> Divisor {
        let mut out = [0u8; 5];
        for (k, pair) in A_LINES.iter().enumerate() {
            let image = [perm[pair[0]], perm[pair[1]]];
            out[a_index(image)] = self.0[k];
        }
        let odd = perm_is_odd(perm);
        out[3] = if odd { self.0[4] } else { self.0[3] };
        out[4] = if odd { self.0[3] } else { self.0[4] };
        Divisor(out)
    }
}

impl Add for Divisor {
    type Output = Divisor;

    fn add(self, o: Divisor) -> Divisor {
        let mut out = self.0;
        for k in 0..5 {
            out[k] += o.0[k];
        }
        Divisor(out)
    }
}

impl std::iter::Sum for Divisor {
    fn sum<I: Iterator<Item = Divisor>>(it: I) -> Divisor {
        it.fold(Divisor::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..5)
            .filter(|&k| self.0[k] > 0)
            .map(|k| match self.0[k] {
                1 => LABELS[k].to_string(),
                m => format!("{m}{}", LABELS[k]),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

const A_LINES: [[usize; 2]; 3] = [[0, 1], [1, 2], [0, 2]];

fn a_index(mut pair: [usize; 2]) -> usize {
    pair.sort_unstable();
    A_LINES.iter().position(|&p| p == pair).expect("pair of distinct variables")
}

fn perm_is_odd(perm: [usize; 3]) -> bool {
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    inversions % 2 == 1
}

/// The six permutations in image order: identity, (x y z), (x z y), (x y),
/// (x z), (y z).
pub const S3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
];

pub fn s3_images(x0: &Divisor) -> [Divisor; 6] {
    S3.map(|p| x0.permuted(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Images as written in the case text, with C_i fixed.
    Verbatim,
    /// Frobenius acts as α ↦ α², exchanging C1 and C2.
    FrobeniusSwapsC,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Verbatim => "paper",
            Convention::FrobeniusSwapsC => "frobenius",
        }
    }
}

/// Images of x0 under the cubic Galois group.
pub fn galois_images(x0: &Divisor, convention: Convention) -> [Divisor; 3] {
    match convention {
        Convention::Verbatim => {
            // A0 + Ci is written with images A0 + Ci, A1 + Ci, A2 + Ci
            let [a0, a1, a2, c1, c2] = x0.0;
            if (a0, a1, a2) == (1, 0, 0) && c1 + c2 == 1 {
                let c = Divisor([0, 0, 0, c1, c2]);
                [*x0, Divisor::new(0, 1, 0, 0, 0) + c, Divisor::new(0, 0, 1, 0, 0) + c]
            } else {
                [*x0; 3]
            }
        }
        Convention::FrobeniusSwapsC => [*x0, x0.swap_c(), *x0],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ContradictionSumExceedsD,
    ContradictionTwoARule,
    Survivor,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ContradictionSumExceedsD => "contradiction_sum_exceeds_D",
            Verdict::ContradictionTwoARule => "contradiction_two_A_rule",
            Verdict::Survivor => "survivor",
        }
    }

    pub fn is_contradiction(self) -> bool {
        self != Verdict::Survivor
    }
}

/// Which images a transcribed case sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Listed {
    /// S3 images with these indices (0 = x0 itself).
    S3(&'static [usize]),
    /// All six S3 images, then the three Galois images.
    S3ThenGalois,
    /// The three Galois images only.
    Galois,
}

/// Divisor template with i the distinguished C index and j the other.
#[derive(Clone, Copy, Debug)]
struct Template {
    a: [u8; 3],
    ci: u8,
    cj: u8,
}

const fn t(a: [u8; 3], ci: u8, cj: u8) -> Template {
    Template { a, ci, cj }
}

impl Template {
    fn matches(&self, x: &Divisor) -> bool {
        let [a0, a1, a2, c1, c2] = x.0;
        [a0, a1, a2] == self.a
            && ((c1, c2) == (self.ci, self.cj) || (c2, c1) == (self.ci, self.cj))
    }

    /// C_i is the C-line of x0 with the larger multiplicity (C1 on ties).
    fn instantiate(&self, x0: &Divisor) -> Divisor {
        let (c1, c2) = if x0.0[3] >= x0.0[4] {
            (self.ci, self.cj)
        } else {
            (self.cj, self.ci)
        };
        Divisor([self.a[0], self.a[1], self.a[2], c1, c2])
    }
}

/// One case of the written analysis.
struct ListedCase {
    label: &'static str,
    x0: Template,
    listed: Listed,
    /// Images as spelled out in the text, in S3 image order.
    written: &'static [Template],
    verdict: Verdict,
}

const LISTED_CASES: [ListedCase; 12] = {
    use Listed::*;
    use Verdict::*;
    [
        ListedCase {
            label: "deg2.ii",
            x0: t([1, 0, 0], 1, 0),
            listed: S3ThenGalois,
            written: &[
                t([1, 0, 0], 1, 0),
                t([0, 1, 0], 1, 0),
                t([0, 0, 1], 1, 0),
                t([1, 0, 0], 0, 1),
                t([0, 1, 0], 0, 1),
                t([0, 0, 1], 0, 1),
            ],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg3.i",
            x0: t([1, 1, 1], 0, 0),
            listed: Galois,
            written: &[],
            verdict: Survivor,
        },
        ListedCase {
            label: "deg3.iii",
            x0: t([1, 0, 0], 2, 0),
            listed: S3(&[0, 1, 2]),
            written: &[t([1, 0, 0], 2, 0), t([0, 1, 0], 2, 0), t([0, 0, 1], 2, 0)],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg3.iv",
            x0: t([1, 0, 0], 1, 1),
            listed: S3(&[0, 1, 2, 3, 4, 5]),
            written: &[
                t([1, 0, 0], 1, 1),
                t([0, 1, 0], 1, 1),
                t([0, 0, 1], 1, 1),
                t([1, 0, 0], 1, 1),
                t([0, 1, 0], 1, 1),
                t([0, 0, 1], 1, 1),
            ],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg4.i",
            x0: t([1, 1, 1], 1, 0),
            listed: S3(&[0, 1, 2, 3, 4, 5]),
            written: &[
                t([1, 1, 1], 1, 0),
                t([1, 1, 1], 1, 0),
                t([1, 1, 1], 1, 0),
                t([1, 1, 1], 0, 1),
                t([1, 1, 1], 0, 1),
                t([1, 1, 1], 0, 1),
            ],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg4.iii",
            x0: t([1, 0, 0], 3, 0),
            listed: S3(&[0, 1, 2]),
            written: &[t([1, 0, 0], 3, 0), t([0, 1, 0], 3, 0), t([0, 0, 1], 3, 0)],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg4.iv",
            x0: t([1, 0, 0], 2, 1),
            listed: S3(&[0, 1, 2]),
            written: &[t([1, 0, 0], 2, 1), t([0, 1, 0], 2, 1), t([0, 0, 1], 2, 1)],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg5.i",
            x0: t([1, 0, 0], 2, 2),
            listed: S3(&[0, 1, 2]),
            written: &[t([1, 0, 0], 2, 2), t([0, 1, 0], 2, 2), t([0, 0, 1], 2, 2)],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg5.ii",
            x0: t([1, 0, 0], 3, 1),
            listed: S3(&[0, 1, 2]),
            written: &[t([1, 0, 0], 3, 1), t([0, 1, 0], 3, 1), t([0, 0, 1], 3, 1)],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg5.iii",
            x0: t([1, 0, 0], 4, 0),
            listed: S3(&[0, 1]),
            written: &[t([1, 0, 0], 4, 0), t([0, 1, 0], 4, 0)],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg5.v",
            x0: t([1, 1, 1], 2, 0),
            listed: S3(&[0, 1, 2]),
            written: &[t([1, 1, 1], 2, 0), t([1, 1, 1], 2, 0), t([1, 1, 1], 2, 0)],
            verdict: ContradictionSumExceedsD,
        },
        ListedCase {
            label: "deg5.vi",
            x0: t([1, 1, 1], 1, 1),
            listed: Galois,
            written: &[],
            verdict: Survivor,
        },
    ]
};

fn two_a_label(degree: u32) -> &'static str {
    match degree {
        2 => "deg2.i",
        3 => "deg3.ii",
        4 => "deg4.ii",
        _ => "deg5.iv",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseVerdict {
    pub x0: Divisor,
    pub verdict: Verdict,
    /// Divisors summed by the uniform strategy.
    pub orbit: Vec<Divisor>,
    pub orbit_sum: Divisor,
    /// D minus the orbit sum, for survivors.
    pub residual: Option<Divisor>,
    /// Case label in the written analysis; `None` for shapes it does not list.
    pub case_label: Option<&'static str>,
    /// Verdict stated for the case in the written analysis.
    pub table_verdict: Option<Verdict>,
    /// The written images equal the group action, and the sum of the
    /// transcribed orbit supports the stated verdict.
    pub table_consistent: bool,
}

impl CaseVerdict {
    pub fn table_agrees(&self) -> bool {
        self.table_consistent && self.table_verdict.is_none_or(|v| v == self.verdict)
    }
}

/// A shape handled by an external earlier result rather than by this
/// analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delegated {
    pub x0: Divisor,
    pub reason: &'static str,
    pub source: &'static str,
}

/// Why degrees above 5 need no case analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cutoff {
    pub min_degree: u32,
    pub copies: u32,
    pub degree_d: u32,
    pub holds: bool,
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x0 of degree >= {} with its {} Galois copies has degree >= {} > {} = deg D",
            self.min_degree,
            self.copies - 1,
            self.min_degree * self.copies,
            self.degree_d
        )
    }
}

#[derive(Clone, Debug)]
pub struct Replay {
    pub convention: Convention,
    pub cases: Vec<CaseVerdict>,
    pub delegated: Vec<Delegated>,
    pub cutoff: Cutoff,
}

impl Replay {
    pub fn survivors(&self) -> Vec<&CaseVerdict> {
        self.cases.iter().filter(|c| c.verdict == Verdict::Survivor).collect()
    }
}

fn exceeds(sum: &Divisor) -> bool {
    !sum.le(&D)
}

/// "S3 orbit, then Galois if needed".
fn uniform(x0: &Divisor, conv: Convention) -> (Verdict, Vec<Divisor>) {
    if x0.distinct_a_lines() == 2 {
        return (Verdict::ContradictionTwoARule, vec![]);
    }
    let s3 = s3_images(x0);
    let galois = galois_images(x0, conv);
    if s3.iter().all(|d| d == x0) {
        let orbit = galois.to_vec();
        let v = if exceeds(&orbit.iter().copied().sum()) {
            Verdict::ContradictionSumExceedsD
        } else {
            Verdict::Survivor
        };
        return (v, orbit);
    }
    for orbit in [s3[..3].to_vec(), s3.to_vec()] {
        if exceeds(&orbit.iter().copied().sum()) {
            return (Verdict::ContradictionSumExceedsD, orbit);
        }
    }
    let mut orbit = s3.to_vec();
    orbit.extend(galois);
    let v = if exceeds(&orbit.iter().copied().sum()) {
        Verdict::ContradictionSumExceedsD
    } else {
        Verdict::Survivor
    };
    (v, orbit)
}

/// (label, stated verdict, consistency) from the transcribed cases.
fn table(x0: &Divisor, conv: Convention) -> (Option<&'static str>, Option<Verdict>, bool) {
    if x0.distinct_a_lines() == 2 {
        // augmenting to all three A-lines always raises the degree
        return (
            Some(two_a_label(x0.degree())),
            Some(Verdict::ContradictionTwoARule),
            true,
        );
    }
    let Some(case) = LISTED_CASES.iter().find(|c| c.x0.matches(x0)) else {
        return (None, None, true);
    };
    let s3 = s3_images(x0);
    let orbit: Vec<Divisor> = match case.listed {
        Listed::S3(idx) => idx.iter().map(|&k| s3[k]).collect(),
        Listed::S3ThenGalois => s3.iter().copied().chain(galois_images(x0, conv)).collect(),
        Listed::Galois => galois_images(x0, conv).to_vec(),
    };
    let written_ok = case
        .written
        .iter()
        .zip(&s3)
        .all(|(t, img)| t.instantiate(x0) == *img);
    let sum: Divisor = orbit.iter().copied().sum();
    let consistent = written_ok && exceeds(&sum) == case.verdict.is_contradiction();
    (Some(case.label), Some(case.verdict), consistent)
}

/// Every x0 ≤ D of degree 2..=5 with A0-multiplicity exactly 1, in
/// (degree, coefficient) order.
pub fn enumerate_cases() -> Vec<Divisor> {
    let mut out = Vec::new();
    for a1 in 0..=D.0[1] {
        for a2 in 0..=D.0[2] {
            for c1 in 0..=D.0[3] {
                for c2 in 0..=D.0[4] {
                    let d = Divisor([1, a1, a2, c1, c2]);
                    if (2..=5).contains(&d.degree()) {
                        out.push(d);
                    }
                }
            }
        }
    }
    out.sort_by_key(|d| (d.degree(), std::cmp::Reverse(d.0)));
    out
}

fn delegated() -> Vec<Delegated> {
    const SOURCE: &str = "external: earlier exceptional-APN result";
    let mut out = vec![Delegated {
        x0: Divisor::new(1, 0, 0, 0, 0),
        reason: "x0 = A0 (degree 1)",
        source: SOURCE,
    }];
    for a0 in 2..=D.0[0] {
        for a1 in 0..=D.0[1] {
            for a2 in 0..=D.0[2] {
                for c1 in 0..=D.0[3] {
                    for c2 in 0..=D.0[4] {
                        let d = Divisor([a0, a1, a2, c1, c2]);
                        if d.degree() <= 5 {
                            out.push(Delegated {
                                x0: d,
                                reason: "A0 multiplicity >= 2",
                                source: SOURCE,
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|d| (d.x0.degree(), std::cmp::Reverse(d.x0.0)));
    out
}

pub fn cutoff() -> Cutoff {
    let (min_degree, copies, degree_d) = (6, 3, D.degree());
    Cutoff {
        min_degree,
        copies,
        degree_d,
        holds: min_degree * copies > degree_d,
    }
}

pub fn replay_case_analysis(convention: Convention) -> Replay {
    let verdicts = enumerate_cases()
        .into_iter()
        .map(|x0| {
            let (verdict, orbit) = uniform(&x0, convention);
            let orbit_sum: Divisor = orbit.iter().copied().sum();
            let residual = (verdict == Verdict::Survivor).then(|| D.checked_sub(&orbit_sum).expect("sum <= D"));
            let (case_label, table_verdict, table_consistent) = table(&x0, convention);
            CaseVerdict {
                x0,
                verdict,
                orbit,
                orbit_sum,
                residual,
                case_label,
                table_verdict,
                table_consistent,
            }
        })
        .collect();
    Replay {
        convention,
        cases: verdicts,
        delegated: delegated(),
        cutoff: cutoff(),
    }
}

/// Cases whose verdict differs between the two Galois conventions.
pub fn convention_sensitive() -> Vec<Divisor> {
    let a = replay_case_analysis(Convention::Verbatim);
    let b = replay_case_analysis(Convention::FrobeniusSwapsC);
    a.cases
        .iter()
        .zip(&b.cases)
        .filter(|(x, y)| x.verdict != y.verdict)
        .map(|(x, _)| x.x0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(a0: u8, a1: u8, a2: u8, c1: u8, c2: u8) -> Divisor {
        Divisor::new(a0, a1, a2, c1, c2)
    }

    #[test]
    fn s3_examples() {
        let imgs = s3_images(&dv(1, 0, 0, 1, 0));
        assert_eq!(
            imgs,
            [
                dv(1, 0, 0, 1, 0),
                dv(0, 1, 0, 1, 0),
                dv(0, 0, 1, 1, 0),
                dv(1, 0, 0, 0, 1),
                dv(0, 1, 0, 0, 1),
                dv(0, 0, 1, 0, 1),
            ]
        );
        let full = dv(1, 1, 1, 1, 1);
        assert!(s3_images(&full).iter().all(|d| *d == full));
        let imgs = s3_images(&dv(1, 0, 0, 2, 0));
        assert_eq!(imgs[1], dv(0, 1, 0, 2, 0));
        assert_eq!(imgs[2], dv(0, 0, 1, 2, 0));
    }

    #[test]
    fn galois_examples() {
        let x = dv(1, 0, 0, 1, 0);
        assert_eq!(
            galois_images(&x, Convention::Verbatim),
            [x, dv(0, 1, 0, 1, 0), dv(0, 0, 1, 1, 0)]
        );
        let full = dv(1, 1, 1, 1, 1);
        for c in [Convention::Verbatim, Convention::FrobeniusSwapsC] {
            assert_eq!(galois_images(&full, c), [full; 3]);
            let a0 = dv(1, 0, 0, 0, 0);
            assert_eq!(galois_images(&a0, c), [a0; 3]);
        }
    }

    #[test]
    fn replay_examples() {
        let r = replay_case_analysis(Convention::Verbatim);
        let find = |x: Divisor| r.cases.iter().find(|c| c.x0 == x).unwrap();
        assert_eq!(find(dv(1, 0, 0, 2, 0)).verdict, Verdict::ContradictionSumExceedsD);
        assert_eq!(find(dv(1, 1, 0, 0, 0)).verdict, Verdict::ContradictionTwoARule);
        let last = find(dv(1, 1, 1, 1, 1));
        assert_eq!(last.verdict, Verdict::Survivor);
        assert_eq!(last.residual, Some(dv(0, 0, 0, 1, 1)));
        assert_eq!(last.orbit_sum + last.residual.unwrap(), D);
        let survivors: Vec<Divisor> = r.survivors().iter().map(|c| c.x0).collect();
        assert_eq!(survivors, vec![dv(1, 1, 1, 0, 0), dv(1, 1, 1, 1, 1)]);
        assert!(r.cases.iter().all(CaseVerdict::table_agrees));
        assert!(r.cutoff.holds);
    }

    #[test]
    fn conventions_agree() {
        assert!(convention_sensitive().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(dv(1, 1, 1, 1, 1).to_string(), "A0 + A1 + A2 + C1 + C2");
        assert_eq!(dv(1, 0, 0, 2, 0).to_string(), "A0 + 2C1");
        assert_eq!(Divisor::ZERO.to_string(), "0");
    }
}
