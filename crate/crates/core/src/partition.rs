//! Partitions, multipartitions, s-splits and ℓ-adic decompositions.
//!
//! - [`partition_count`]: π(t) by Euler's pentagonal-number recurrence.
//! - [`multipartition_count`]: k(s, t), the coefficient of x^t in P(x)^s where
//!   P is the partition generating series.
//! - [`enumerate_splits`] / [`enumerate_ell_decompositions`]: explicit
//!   enumeration, mostly used as brute-force oracles.
//! - [`ell_decomposition_count`]: p_ℓ(t) via the first-digit recursion.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision nonnegative integer used for every count.
pub type Nat = BigUint;

/// Largest t for which π(t) is served from the shared table.
pub const DEFAULT_PARTITION_CAP: usize = 512;

/// The two primes this crate handles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u32", try_from = "u32")]
pub enum Ell {
    Two,
    Three,
}

impl Ell {
    pub fn value(self) -> u32 {
        match self {
            Ell::Two => 2,
            Ell::Three => 3,
        }
    }

    pub fn from_u32(v: u32) -> Option<Ell> {
        match v {
            2 => Some(Ell::Two),
            3 => Some(Ell::Three),
            _ => None,
        }
    }
}

impl From<Ell> for u32 {
    fn from(e: Ell) -> u32 {
        e.value()
    }
}

impl TryFrom<u32> for Ell {
    type Error = String;

    fn try_from(v: u32) -> Result<Self, Self::Error> {
        Ell::from_u32(v).ok_or_else(|| format!("ell must be 2 or 3, got {v}"))
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// π(0), …, π(max), computed once.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    values: Vec<Nat>,
}

impl PartitionTable {
    pub fn new(max: usize) -> Self {
        let mut values: Vec<Nat> = Vec::with_capacity(max + 1);
        values.push(Nat::one());
        for n in 1..=max {
            // π(n) = Σ_{k≥1} (-1)^{k+1} [π(n - k(3k-1)/2) + π(n - k(3k+1)/2)]
            let mut plus = Nat::zero();
            let mut minus = Nat::zero();
            for k in 1usize.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
                *acc += &values[n - g1];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    *acc += &values[n - g2];
                }
            }
            values.push(plus - minus);
        }
        PartitionTable { values }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, t: usize) -> Option<&Nat> {
        self.values.get(t)
    }

    pub fn as_slice(&self) -> &[Nat] {
        &self.values
    }
}

fn shared_table() -> &'static PartitionTable {
    static TABLE: OnceLock<PartitionTable> = OnceLock::new();
    TABLE.get_or_init(|| PartitionTable::new(DEFAULT_PARTITION_CAP))
}

/// π(t), the number of partitions of t.
pub fn partition_count(t: usize) -> Nat {
    match shared_table().get(t) {
        Some(v) => v.clone(),
        None => PartitionTable::new(t).values.swap_remove(t),
    }
}

/// π(0), …, π(t).
pub fn partition_numbers(t: usize) -> Vec<Nat> {
    let shared = shared_table();
    if t <= shared.max() {
        shared.as_slice()[..=t].to_vec()
    } else {
        PartitionTable::new(t).values
    }
}

/// Product of two power series truncated after degree `deg`.
fn truncated_mul(a: &[Nat], b: &[Nat], deg: usize) -> Vec<Nat> {
    let mut out = vec![Nat::zero(); deg + 1];
    for (i, ai) in a.iter().enumerate().take(deg + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(deg + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// k(s, 0), …, k(s, t): coefficients of P(x)^s truncated at degree t.
///
/// Uses exponentiation by squaring, so the cost is O(log s) truncated
/// convolutions of length t + 1. For s = 0 this is the series 1.
pub fn multipartition_series(s: u64, t: usize) -> Vec<Nat> {
    let mut result = vec![Nat::zero(); t + 1];
    result[0] = Nat::one();
    let mut base = partition_numbers(t);
    let mut e = s;
    while e > 0 {
        if e & 1 == 1 {
            result = truncated_mul(&result, &base, t);
        }
        e >>= 1;
        if e > 0 {
            base = truncated_mul(&base, &base, t);
        }
    }
    result
}

/// k(s, t), the number of s-multipartitions of t.
pub fn multipartition_count(s: u64, t: usize) -> Nat {
    multipartition_series(s, t).swap_remove(t)
}

/// An ordered tuple of nonnegative integers with a fixed sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    pub parts: Vec<usize>,
}

/// Iterator over the s-splits of t in lexicographic order.
#[derive(Clone, Debug)]
pub struct Splits {
    current: Option<Vec<usize>>,
    total: usize,
}

impl Iterator for Splits {
    type Item = Split;

    fn next(&mut self) -> Option<Split> {
        let cur = self.current.take()?;
        let s = cur.len();
        // Next in lex order: bump the rightmost free position before the last
        // slot, zero the rest, and let the last slot absorb the remainder.
        let mut next = cur.clone();
        let mut prefix: usize = 0;
        let mut pivot = None;
        for (i, &v) in cur.iter().enumerate().take(s.saturating_sub(1)) {
            prefix += v;
            if prefix < self.total {
                pivot = Some(i);
            }
        }
        if let Some(i) = pivot {
            next[i] += 1;
            for slot in next.iter_mut().take(s - 1).skip(i + 1) {
                *slot = 0;
            }
            let used: usize = next[..s - 1].iter().sum();
            next[s - 1] = self.total - used;
            self.current = Some(next);
        }
        Some(Split { parts: cur })
    }
}

/// Every s-split of t exactly once, in lexicographic order.
///
/// # Panics
/// If `s == 0`.
pub fn enumerate_splits(s: usize, t: usize) -> Splits {
    assert!(s >= 1, "an s-split needs s >= 1");
    let mut first = vec![0; s];
    first[s - 1] = t;
    Splits {
        current: Some(first),
        total: t,
    }
}

/// An ℓ-decomposition (t_0, …, t_k) of t, with Σ t_i ℓ^i = t and t_k ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LDecomp {
    pub ell: Ell,
    pub digits: Vec<usize>,
}

impl LDecomp {
    pub fn total(&self) -> usize {
        let l = self.ell.value() as usize;
        self.digits
            .iter()
            .rev()
            .fold(0usize, |acc, &d| acc * l + d)
    }
}

fn decompositions_into(ell: usize, t: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let mut t0 = t % ell;
    while t0 <= t {
        let rest = (t - t0) / ell;
        prefix.push(t0);
        if rest == 0 {
            out.push(prefix.clone());
        } else {
            decompositions_into(ell, rest, prefix, out);
        }
        prefix.pop();
        t0 += ell;
    }
}

/// W_t: all ℓ-decompositions of t in lexicographic order. W_0 holds only the
/// empty tuple.
pub fn enumerate_ell_decompositions(ell: Ell, t: usize) -> Vec<LDecomp> {
    let mut raw = Vec::new();
    if t == 0 {
        raw.push(Vec::new());
    } else {
        decompositions_into(ell.value() as usize, t, &mut Vec::new(), &mut raw);
    }
    raw.into_iter()
        .map(|digits| LDecomp { ell, digits })
        .collect()
}

/// p_ℓ(0), …, p_ℓ(t) via p_ℓ(w) = Σ_j p_ℓ((w − (a_0 + ℓj))/ℓ).
pub fn ell_decomposition_counts(ell: Ell, t: usize) -> Vec<Nat> {
    let l = ell.value() as usize;
    let mut p: Vec<Nat> = Vec::with_capacity(t + 1);
    p.push(Nat::one());
    for w in 1..=t {
        let a0 = w % l;
        let mut acc = Nat::zero();
        for j in 0..=(w - a0) / l {
            acc += &p[(w - (a0 + l * j)) / l];
        }
        p.push(acc);
    }
    p
}

/// p_ℓ(t) = |W_t|.
pub fn ell_decomposition_count(ell: Ell, t: usize) -> Nat {
    ell_decomposition_counts(ell, t).swap_remove(t)
}

/// Little-endian ℓ-adic digits of w; empty for w = 0.
pub fn ell_adic_digits(ell: Ell, w: u64) -> Vec<u32> {
    let l = ell.value() as u64;
    let mut digits = Vec::new();
    let mut rest = w;
    while rest > 0 {
        digits.push((rest % l) as u32);
        rest /= l;
    }
    digits
}

/// Binomial coefficient; zero when k > n.
pub fn binomial(n: u64, k: u64) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let k = k.min(n - k);
    let mut acc = Nat::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
