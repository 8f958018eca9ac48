//! Linear codes over `GF(p)`: weight enumeration, MacWilliams transform,
//! hull and self-orthogonality tests, and bound-based classification.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{is_prime, legendre};
use crate::linalg::{axpy, Matrix};

/// Default ceiling on the number of codewords `p^k` enumerated.
pub const DEFAULT_ENUM_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("{0} is not a prime")]
    NonPrime(u32),
    #[error("generator rows are linearly dependent")]
    DependentRows,
    #[error("generator row {row} has length {got}, expected {expected}")]
    BadRowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("generator entry {0} is not reduced modulo p")]
    EntryOutOfRange(u32),
    #[error("enumerating a code of dimension {k} over GF({p}) exceeds the cap of {cap} codewords")]
    TooLarge { p: u32, k: usize, cap: u64 },
    #[error("weight distribution is inconsistent with the stated dimension")]
    InconsistentInput,
    #[error("distance {d} is outside 1..={n}")]
    BadDistance { d: usize, n: usize },
    #[error("operation requires an odd prime, got {0}")]
    EvenPrime(u32),
    #[error("operation requires m + s >= 3")]
    OutOfRegime,
}

/// A linear `[n, k]` code given by a full-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearCode {
    p: u32,
    n: usize,
    gen: Matrix,
}

impl LinearCode {
    /// Rejects dependent rows.
    pub fn new(p: u32, n: usize, gen: Matrix) -> Result<Self, CodeError> {
        validate(p, n, &gen)?;
        if gen.rank(p) != gen.nrows() {
            return Err(CodeError::DependentRows);
        }
        Ok(LinearCode { p, n, gen })
    }

    /// Keeps a maximal independent subset of the rows, in input order.
    pub fn reduced(p: u32, n: usize, gen: Matrix) -> Result<Self, CodeError> {
        validate(p, n, &gen)?;
        let mut kept = Matrix::from_rows(Vec::new());
        for row in gen.rows() {
            let mut trial = kept.clone();
            trial.push_row(row.clone());
            if trial.rank(p) == trial.nrows() {
                kept = trial;
            }
        }
        Ok(LinearCode { p, n, gen: kept })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.nrows()
    }

    pub fn gen(&self) -> &Matrix {
        &self.gen
    }

    /// Codewords `p^k`, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.k() as u32)
    }

    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        if self.k() == 0 {
            return vec![0; self.n];
        }
        self.gen.encode(msg, self.p)
    }

    /// The dual code, from a nullspace basis.
    pub fn dual(&self) -> LinearCode {
        let gen = if self.k() == 0 {
            Matrix::identity(self.n)
        } else {
            self.gen.nullspace(self.p)
        };
        LinearCode {
            p: self.p,
            n: self.n,
            gen,
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut m = self.gen.clone();
        m.push_row(v.to_vec());
        m.rank(self.p) == self.k()
    }

    /// Every row of `other` lies in this code.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.p == self.p && other.gen.rows().iter().all(|r| self.contains(r))
    }

    pub fn gram_rank(&self) -> GramRank {
        let rank = if self.k() == 0 {
            0
        } else {
            self.gen.gram(self.p).rank(self.p)
        };
        GramRank { rank, k: self.k() }
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gram_rank().rank == 0
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_self_orthogonal() && 2 * self.k() == self.n
    }

    pub fn is_lcd(&self) -> bool {
        self.gram_rank().is_lcd()
    }

    pub fn contains_all_one(&self) -> bool {
        self.contains(&vec![1; self.n])
    }
}

fn validate(p: u32, n: usize, gen: &Matrix) -> Result<(), CodeError> {
    if !is_prime(p) {
        return Err(CodeError::NonPrime(p));
    }
    for (i, row) in gen.rows().iter().enumerate() {
        if row.len() != n {
            return Err(CodeError::BadRowLength {
                row: i,
                got: row.len(),
                expected: n,
            });
        }
        if let Some(&v) = row.iter().find(|&&v| v >= p) {
            return Err(CodeError::EntryOutOfRange(v));
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct LinearCodeRepr {
    p: u32,
    n: usize,
    gen: Vec<Vec<u32>>,
}

impl<'de> Deserialize<'de> for LinearCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LinearCodeRepr::deserialize(d)?;
        if let Some((i, row)) = r.gen.iter().enumerate().find(|(_, row)| row.len() != r.n) {
            return Err(serde::de::Error::custom(CodeError::BadRowLength {
                row: i,
                got: row.len(),
                expected: r.n,
            }));
        }
        LinearCode::new(r.p, r.n, Matrix::from_rows(r.gen)).map_err(serde::de::Error::custom)
    }
}

/// Rank of `G G^T` alongside the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GramRank {
    pub rank: usize,
    pub k: usize,
}

impl GramRank {
    pub fn hull_dim(&self) -> usize {
        self.k - self.rank
    }

    pub fn is_lcd(&self) -> bool {
        self.rank == self.k
    }
}

/// `A_0 .. A_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub n: usize,
    pub counts: Vec<BigUint>,
}

impl WeightDistribution {
    /// Panics unless `counts.len() == n + 1`.
    pub fn new(n: usize, counts: Vec<BigUint>) -> Self {
        assert_eq!(counts.len(), n + 1, "distribution must have n + 1 entries");
        WeightDistribution { n, counts }
    }

    pub fn from_u64(counts: &[u64]) -> Self {
        Self::new(
            counts.len() - 1,
            counts.iter().map(|&c| BigUint::from(c)).collect(),
        )
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(w).cloned().unwrap_or_default()
    }

    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !self.counts[i].is_zero())
    }

    /// `(weight, count)` for every nonzero count.
    pub fn support(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in self.support() {
            out.push_str(&format!("{w},{c}\n"));
        }
        out
    }
}

/// Polynomial form, e.g. `1 + 6z^3 + 66z^6 + 8z^9`.
impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .map(|(w, c)| match w {
                0 => c.to_string(),
                1 => format!("{c}z"),
                _ => format!("{c}z^{w}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Exact enumeration under the default cap.
pub fn enumerate_weights(code: &LinearCode) -> Result<WeightDistribution, CodeError> {
    enumerate_weights_capped(code, DEFAULT_ENUM_CAP)
}

/// Walks every message vector, splitting the high digits across workers.
/// Within a block the codeword is updated incrementally: bumping digit `j`
/// (with digits below it wrapping from `p-1` to `0`) adds rows `0..=j`.
pub fn enumerate_weights_capped(
    code: &LinearCode,
    cap: u64,
) -> Result<WeightDistribution, CodeError> {
    let (p, n, k) = (code.p, code.n, code.k());
    let too_large = CodeError::TooLarge { p, k, cap };
    let total = code.size().ok_or(too_large.clone())?;
    if total > cap {
        return Err(too_large);
    }
    let rows = code.gen.rows();
    // low digits are walked sequentially, high digits pick the block
    let low = (0..=k)
        .rev()
        .find(|&l| (p as u64).pow(l as u32) <= (total / 64).max(1))
        .unwrap_or(0)
        .min(k);
    let blocks = (p as u64).pow((k - low) as u32);
    let inner = (p as u64).pow(low as u32);

    let tallies: Vec<Vec<u64>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut tally = vec![0u64; n + 1];
            let mut word = vec![0u32; n];
            let mut rest = b;
            for row in &rows[low..] {
                let d = (rest % p as u64) as u32;
                rest /= p as u64;
                if d != 0 {
                    axpy(&mut word, row, d, p);
                }
            }
            let mut weight = word.iter().filter(|&&v| v != 0).count();
            tally[weight] += 1;
            for step in 1..inner {
                let j = trailing_wraps(step, p);
                for row in &rows[..=j] {
                    for (w, &r) in word.iter_mut().zip(row) {
                        if r == 0 {
                            continue;
                        }
                        let before = *w != 0;
                        *w += r;
                        if *w >= p {
                            *w -= p;
                        }
                        match (before, *w != 0) {
                            (true, false) => weight -= 1,
                            (false, true) => weight += 1,
                            _ => {}
                        }
                    }
                }
                tally[weight] += 1;
            }
            tally
        })
        .collect();

    let mut counts = vec![0u64; n + 1];
    for t in tallies {
        counts.iter_mut().zip(t).for_each(|(c, v)| *c += v);
    }
    Ok(WeightDistribution::new(
        n,
        counts.into_iter().map(BigUint::from).collect(),
    ))
}

/// Number of low base-`p` digits of `step` that are zero, i.e. the digit that
/// was incremented when counting up to `step`.
fn trailing_wraps(mut step: u64, p: u32) -> usize {
    let mut j = 0;
    while step % p as u64 == 0 {
        step /= p as u64;
        j += 1;
    }
    j
}

/// Krawtchouk values `K_0(i) .. K_n(i)` for alphabet size `q`, via the
/// three-term recurrence in the degree.
pub fn krawtchouk_row(n: usize, q: u32, i: usize) -> Vec<BigInt> {
    let q = BigInt::from(q);
    let q1 = &q - 1;
    let (nb, ib) = (BigInt::from(n), BigInt::from(i));
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    if n == 0 {
        return out;
    }
    out.push(&nb * &q1 - &q * &ib);
    for j in 1..n {
        let jb = BigInt::from(j);
        let a = ((&nb - &jb) * &q1 + &jb - &q * &ib) * &out[j];
        let b = &q1 * (&nb - &jb + 1) * &out[j - 1];
        let diff: BigInt = a - b;
        let (quot, rem) = diff.div_rem(&(jb + 1));
        debug_assert!(rem.is_zero());
        out.push(quot);
    }
    out
}

/// Weight distribution of the dual of a `k`-dimensional code over `GF(p)`.
pub fn macwilliams(
    dist: &WeightDistribution,
    k: usize,
    p: u32,
) -> Result<WeightDistribution, CodeError> {
    let size = BigUint::from(p).pow(k as u32);
    if dist.total() != size || dist.counts[0] != BigUint::one() {
        return Err(CodeError::InconsistentInput);
    }
    let n = dist.n;
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, a) in dist.support() {
        let a = BigInt::from(a.clone());
        for (slot, kr) in acc.iter_mut().zip(krawtchouk_row(n, p, i)) {
            *slot += &a * kr;
        }
    }
    let size = BigInt::from(size);
    let counts = acc
        .into_iter()
        .map(|v| {
            let (quot, rem) = v.div_rem(&size);
            if !rem.is_zero() || quot.is_negative() {
                return Err(CodeError::InconsistentInput);
            }
            Ok(quot.to_biguint().expect("non-negative"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightDistribution::new(n, counts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisibilityVerdict {
    SelfOrthogonal,
    NotConcluded,
    NotSelfOrthogonal,
}

/// Self-orthogonality read off the weights: divisible by 4 suffices for
/// `p = 2`, divisible by 3 is exact for `p = 3`, and for larger `p`
/// `p`-divisibility suffices once the all-one vector is in the code.
pub fn divisibility_selforth(
    dist: &WeightDistribution,
    p: u32,
    contains_all_one: bool,
) -> DivisibilityVerdict {
    let divisible = |d: usize| dist.support().all(|(w, _)| w % d == 0);
    match p {
        2 if divisible(4) => DivisibilityVerdict::SelfOrthogonal,
        3 if divisible(3) => DivisibilityVerdict::SelfOrthogonal,
        3 => DivisibilityVerdict::NotSelfOrthogonal,
        p if p >= 5 && contains_all_one && divisible(p as usize) => {
            DivisibilityVerdict::SelfOrthogonal
        }
        _ => DivisibilityVerdict::NotConcluded,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpherePacking {
    Optimal,
    AlmostOptimal,
    Unclassified,
}

impl fmt::Display for SpherePacking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpherePacking::Optimal => "optimal",
            SpherePacking::AlmostOptimal => "almost-optimal",
            SpherePacking::Unclassified => "unclassified",
        })
    }
}

/// Hamming ball volume `sum_{i<=t} C(n,i) (p-1)^i`.
pub fn hamming_volume(n: usize, t: usize, p: u32) -> BigUint {
    let mut binom = BigUint::one();
    let mut pw = BigUint::one();
    let mut sum = BigUint::zero();
    for i in 0..=t.min(n) {
        sum += &binom * &pw;
        binom = binom * (n - i) / (i + 1);
        pw *= p - 1;
    }
    sum
}

/// A code exceeding the sphere-packing bound for distance `d+1` cannot have
/// a larger distance, so `d` is optimal; likewise `d+2` for almost optimal.
pub fn sphere_packing_classify(
    n: usize,
    k: usize,
    d: usize,
    p: u32,
) -> Result<SpherePacking, CodeError> {
    if d == 0 || d > n {
        return Err(CodeError::BadDistance { d, n });
    }
    let space = BigUint::from(p).pow(n as u32);
    let size = BigUint::from(p).pow(k as u32);
    let exceeds = |dd: usize| &size * hamming_volume(n, (dd - 1) / 2, p) > space;
    Ok(if exceeds(d + 1) {
        SpherePacking::Optimal
    } else if exceeds(d + 2) {
        SpherePacking::AlmostOptimal
    } else {
        SpherePacking::Unclassified
    })
}

/// Closed-form `A_3` of the dual of the augmented code for odd `p`.
pub fn pless_a3_dual(p: u32, m: u32, s: u32, epsilon: i8) -> Result<BigInt, CodeError> {
    if p == 2 {
        return Err(CodeError::EvenPrime(p));
    }
    if m + s < 3 {
        return Err(CodeError::OutOfRegime);
    }
    let pb = BigInt::from(p);
    let mut inner = pb.pow(m) - &pb;
    if (m + s) % 2 == 0 {
        let e = (m + s) / 2;
        let sign = i64::from(epsilon) * i64::from(legendre(p - 1, p)).pow(e);
        inner += BigInt::from(sign) * pb.pow(e) * (p - 1);
    }
    Ok(pb.pow(m - 1) * (p - 1) * (p - 2) * inner / 6)
}


#[cfg(test)]
mod proptests {
    use proptest::prelude::*;

    use super::*;
    use crate::testutil::random_code;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn macwilliams_matches_dual_and_is_involutive(
            p in prop::sample::select(vec![2u32, 3, 5]),
            n in 2usize..10,
            rows in prop::collection::vec(prop::collection::vec(0u32..5, 10), 1..6),
        ) {
            let Some(code) = random_code(p, n, rows) else { return Ok(()) };
            prop_assume!((p as u64).pow((n - code.k()) as u32) <= 200_000);
            let dist = enumerate_weights(&code).unwrap();
            let via = macwilliams(&dist, code.k(), p).unwrap();
            prop_assert_eq!(&via, &enumerate_weights(&code.dual()).unwrap());
            prop_assert_eq!(macwilliams(&via, n - code.k(), p).unwrap(), dist);
        }

        #[test]
        fn gram_rank_bounds(p in prop::sample::select(vec![2u32, 3, 5]), n in 2usize..10, rows in prop::collection::vec(prop::collection::vec(0u32..5, 10), 1..6)) {
            let Some(code) = random_code(p, n, rows) else { return Ok(()) };
            let g = code.gram_rank();
            prop_assert!(g.rank <= code.k());
            prop_assert_eq!(g.hull_dim() + g.rank, code.k());
            // the hull is shared with the dual
            prop_assert_eq!(code.dual().gram_rank().hull_dim(), g.hull_dim());
        }
    }
}
