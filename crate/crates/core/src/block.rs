#![allow(non_snake_case)]

//! k(B), k₀(B) and l(B) for principal ℓ-blocks of GL_w(εq), and the SL/SU
//! quantities derived from them.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{
    ell_adic_digits, ell_decomposition_count, multipartition_count, multipartition_series,
    partition_count, Ell, Nat,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("q = {q} is divisible by ell = {ell}")]
    EllDividesQ { q: u64, ell: u32 },
    #[error("q must be at least 2")]
    BadQ,
    #[error("n = {n} is smaller than d = {d}")]
    RankTooSmall { n: u64, d: u32 },
    #[error("weight must be at least 1")]
    ZeroWeight,
    #[error("a must be at least 1")]
    ZeroA,
    #[error("d must be 1 or 2, got {0}")]
    BadD(u32),
    #[error("case 1 mod 4 needs a >= 2, got a = {0}")]
    OnePlusFourNeedsA2(u32),
    #[error("case 3 mod 4 needs atilde >= 2, got {0}")]
    ThreeMod4NeedsAtilde2(u32),
    #[error("operation needs ell = {expected}, got {got}")]
    WrongEll { expected: u32, got: u32 },
    #[error("w = {0} is not divisible by 3")]
    NotDivisibleBy3(u32),
    #[error("w = {0} is divisible by 3")]
    DivisibleBy3(u32),
    #[error("{what} is not an integer: {num} / {den}")]
    NotIntegral { what: &'static str, num: Nat, den: Nat },
}

/// The εq mod 4 case for ℓ = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case2 {
    OnePlusFour,
    ThreeMod4,
    NotApplicable,
}

/// Parameters (ℓ, case, a, ã, d, w) of a principal block of GL_{wd}(εq).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockParams {
    pub ell: Ell,
    pub case2: Case2,
    pub a: u32,
    pub atilde: Option<u32>,
    pub d: u32,
    pub w: u32,
    pub digits: Vec<u32>,
}

impl BlockParams {
    /// ℓ = 3 with 3^a ∥ q^d − 1.
    pub fn gl3(a: u32, d: u32, w: u32) -> Result<Self, BlockError> {
        if a == 0 {
            return Err(BlockError::ZeroA);
        }
        if d != 1 && d != 2 {
            return Err(BlockError::BadD(d));
        }
        if w == 0 {
            return Err(BlockError::ZeroWeight);
        }
        Ok(BlockParams {
            ell: Ell::Three,
            case2: Case2::NotApplicable,
            a,
            atilde: None,
            d,
            w,
            digits: ell_adic_digits(Ell::Three, w as u64),
        })
    }

    /// ℓ = 2 with εq ≡ 1 mod 4, so a ≥ 2 and ã = 1.
    pub fn gl2_one_plus_four(a: u32, w: u32) -> Result<Self, BlockError> {
        if a < 2 {
            return Err(BlockError::OnePlusFourNeedsA2(a));
        }
        if w == 0 {
            return Err(BlockError::ZeroWeight);
        }
        Ok(BlockParams {
            ell: Ell::Two,
            case2: Case2::OnePlusFour,
            a,
            atilde: Some(1),
            d: 1,
            w,
            digits: ell_adic_digits(Ell::Two, w as u64),
        })
    }

    /// ℓ = 2 with εq ≡ 3 mod 4, so a = 1 and ã ≥ 2.
    pub fn gl2_three_mod4(atilde: u32, w: u32) -> Result<Self, BlockError> {
        if atilde < 2 {
            return Err(BlockError::ThreeMod4NeedsAtilde2(atilde));
        }
        if w == 0 {
            return Err(BlockError::ZeroWeight);
        }
        Ok(BlockParams {
            ell: Ell::Two,
            case2: Case2::ThreeMod4,
            a: 1,
            atilde: Some(atilde),
            d: 1,
            w,
            digits: ell_adic_digits(Ell::Two, w as u64),
        })
    }

    /// ã, or 1 when absent.
    pub fn atilde_or_one(&self) -> u32 {
        self.atilde.unwrap_or(1)
    }

    /// a_i, zero past the top digit.
    pub fn digit(&self, i: usize) -> u32 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Σ_{i≥1} a_i.
    pub fn digit_sum_above_zero(&self) -> u32 {
        self.digits.iter().skip(1).sum()
    }

    /// Level weights of the k(B) sum.
    pub fn level_weights(&self) -> LevelWeights {
        match self.ell {
            Ell::Three => gl3_weights(self.a, self.d),
            Ell::Two => {
                let literal = literal_gl2_weights(self.a, self.atilde_or_one());
                let reduced = match self.case2 {
                    Case2::ThreeMod4 => {
                        let t = self.atilde_or_one();
                        LevelWeights::new(vec![2, (1u64 << t) - 1], 1u64 << (t - 1))
                    }
                    _ => LevelWeights::new(vec![1u64 << self.a], 1u64 << (self.a - 1)),
                };
                assert_eq!(literal.normalized(), reduced.normalized());
                reduced
            }
        }
    }
}

fn valuation(mut x: u128, p: u128) -> u32 {
    let mut v = 0;
    while x > 0 && x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Block parameters of the principal ℓ-block of GL_n(εq).
///
/// q is assumed to be a prime power; this is not checked. The weight is
/// ⌊n/d⌋.
pub fn derive_params(epsilon: i8, q: u64, n: u64, ell: Ell) -> Result<BlockParams, BlockError> {
    let l = ell.value();
    if q < 2 {
        return Err(BlockError::BadQ);
    }
    if q.is_multiple_of(l as u64) {
        return Err(BlockError::EllDividesQ { q, ell: l });
    }
    let eq: i128 = if epsilon < 0 { -(q as i128) } else { q as i128 };
    let d: u32 = match ell {
        Ell::Two => 1,
        Ell::Three => {
            if eq.rem_euclid(3) == 1 {
                1
            } else {
                2
            }
        }
    };
    if n < d as u64 {
        return Err(BlockError::RankTooSmall { n, d });
    }
    let w = u32::try_from(n / d as u64).expect("weight fits in u32");
    let a = valuation((eq.pow(d) - 1).unsigned_abs(), l as u128);
    match ell {
        Ell::Three => BlockParams::gl3(a, d, w),
        Ell::Two => {
            if eq.rem_euclid(4) == 1 {
                BlockParams::gl2_one_plus_four(a, w)
            } else {
                let atilde = valuation((eq + 1).unsigned_abs(), 2);
                BlockParams::gl2_three_mod4(atilde, w)
            }
        }
    }
}

/// Multipartition parameters per ℓ-adic level: `head[i]` at level i, then
/// `tail_repeat` at every deeper level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelWeights {
    pub head: Vec<u64>,
    pub tail_repeat: u64,
}

impl LevelWeights {
    pub fn new(head: Vec<u64>, tail_repeat: u64) -> Self {
        assert!(tail_repeat >= 1 && head.iter().all(|&c| c >= 1));
        LevelWeights { head, tail_repeat }
    }

    pub fn at(&self, level: usize) -> u64 {
        self.head.get(level).copied().unwrap_or(self.tail_repeat)
    }

    /// Same weights with redundant trailing head entries dropped.
    pub fn normalized(&self) -> LevelWeights {
        let mut head = self.head.clone();
        while head.last() == Some(&self.tail_repeat) {
            head.pop();
        }
        LevelWeights { head, tail_repeat: self.tail_repeat }
    }
}

/// b = d + (3^a − 1)/d and b₁ = 2·3^{a−1}/d.
pub fn gl3_weights(a: u32, d: u32) -> LevelWeights {
    let p = 3u64.pow(a);
    let b = d as u64 + (p - 1) / d as u64;
    let b1 = 2 * 3u64.pow(a - 1) / d as u64;
    LevelWeights::new(vec![b], b1)
}

/// (2^a, 2^{a+ã−1} − 2^{a−1}, 2^{a+ã−2}, 2^{a+ã−2}, …).
pub fn literal_gl2_weights(a: u32, atilde: u32) -> LevelWeights {
    LevelWeights::new(
        vec![1u64 << a, (1u64 << (a + atilde - 1)) - (1u64 << (a - 1))],
        1u64 << (a + atilde - 2),
    )
}

/// Σ over ℓ-decompositions (w₀, w₁, …) of w of ∏_i k(c_i, w_i).
///
/// Evaluated level by level: F(t; i) = Σ_{w₀ ≡ t mod ℓ} k(c_i, w₀)·F((t − w₀)/ℓ; i + 1)
/// with F(0; i) = 1. The memo is local to the call.
pub fn weighted_decomposition_sum(ell: Ell, weights: &LevelWeights, w: usize) -> Nat {
    struct Ctx<'a> {
        l: usize,
        weights: &'a LevelWeights,
        series: HashMap<usize, Vec<Nat>>,
        memo: HashMap<(usize, usize), Nat>,
        top: usize,
    }

    impl Ctx<'_> {
        fn key(&self, level: usize) -> usize {
            level.min(self.weights.head.len())
        }

        fn coeff(&mut self, level: usize, t: usize) -> Nat {
            let key = self.key(level);
            let max_t = self.top / self.l.pow(key as u32);
            let weights = self.weights;
            let s = self
                .series
                .entry(key)
                .or_insert_with(|| multipartition_series(weights.at(key), max_t.max(t)));
            s[t].clone()
        }

        fn f(&mut self, t: usize, level: usize) -> Nat {
            if t == 0 {
                return Nat::one();
            }
            let key = (self.key(level), t);
            if let Some(v) = self.memo.get(&key) {
                return v.clone();
            }
            let mut acc = Nat::zero();
            let mut w0 = t % self.l;
            while w0 <= t {
                let k = self.coeff(level, w0);
                if !k.is_zero() {
                    acc += k * self.f((t - w0) / self.l, level + 1);
                }
                w0 += self.l;
            }
            self.memo.insert(key, acc.clone());
            acc
        }
    }

    let mut ctx = Ctx {
        l: ell.value() as usize,
        weights,
        series: HashMap::new(),
        memo: HashMap::new(),
        top: w,
    };
    ctx.f(w, 0)
}

/// k(B) for the principal 2-block of GL_w(εq).
pub fn k_B_gl2(params: &BlockParams) -> Result<Nat, BlockError> {
    if params.ell != Ell::Two {
        return Err(BlockError::WrongEll { expected: 2, got: params.ell.value() });
    }
    Ok(weighted_decomposition_sum(Ell::Two, &params.level_weights(), params.w as usize))
}

/// k(3, a, d, w): k(B) for the principal 3-block of GL_{wd}(q).
pub fn k_B_gl3(a: u32, d: u32, w: u32) -> Result<Nat, BlockError> {
    if d != 1 && d != 2 {
        return Err(BlockError::BadD(d));
    }
    if a == 0 {
        return Err(BlockError::ZeroA);
    }
    Ok(weighted_decomposition_sum(Ell::Three, &gl3_weights(a, d), w as usize))
}

/// k(B) for either prime.
pub fn k_B(params: &BlockParams) -> Nat {
    match params.ell {
        Ell::Two => k_B_gl2(params).expect("ell checked"),
        Ell::Three => k_B_gl3(params.a, params.d, params.w).expect("params validated"),
    }
}

/// k₀(B) = 2^{Σ a_i(a+i)} for ℓ = 2.
///
/// For a = 1 this is 2^{Σ a_i(i+1)}. For a ≥ 2 the exponent carries a in
/// place of 1, which is what a cyclic defect group C_{2^a} at w = 1 forces.
pub fn k0_B_gl2(params: &BlockParams) -> Nat {
    let e: u64 = params
        .digits
        .iter()
        .enumerate()
        .map(|(i, &ai)| ai as u64 * (params.a as u64 + i as u64))
        .sum();
    Nat::one() << e
}

/// k₀(B) = ∏_{i≥0} k(b·3^i, a_i) for ℓ = 3.
pub fn k0_B_gl3(a: u32, d: u32, w: u32) -> Nat {
    let b = gl3_weights(a, d).head[0];
    ell_adic_digits(Ell::Three, w as u64)
        .iter()
        .enumerate()
        .map(|(i, &ai)| multipartition_count(b * 3u64.pow(i as u32), ai as usize))
        .product()
}

pub fn k0_B(params: &BlockParams) -> Nat {
    match params.ell {
        Ell::Two => k0_B_gl2(params),
        Ell::Three => k0_B_gl3(params.a, params.d, params.w),
    }
}

/// Certified lower bound for l(B): max{k(d, w), π(w), p_3(w)} for ℓ = 3 and
/// max{π(w), p_2(w)} for ℓ = 2.
pub fn l_B_lower(params: &BlockParams) -> Nat {
    let w = params.w as usize;
    let mut best = partition_count(w).max(ell_decomposition_count(params.ell, w));
    if params.ell == Ell::Three {
        best = best.max(multipartition_count(params.d as u64, w));
    }
    best
}

/// (a, w, m, δ) with 3^m = min{w₃, 3^a} and δ = 1 iff w is a power of 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlParams {
    pub a: u32,
    pub w: u32,
    pub m: u32,
    pub delta: u32,
}

pub fn sl_params(a: u32, w: u32) -> SlParams {
    let v = valuation(w as u128, 3);
    let delta = u32::from(w >= 1 && 3u64.pow(v) == w as u64);
    SlParams { a, w, m: v.min(a), delta }
}

fn pow3(e: u32) -> Nat {
    Nat::from(3u32).pow(e)
}

/// (k(3,a,1,w) + Σ_{j=1}^{m} p_3(w/3^j)·3^{2j + aw/3^j}) / 3^a, rounded up.
pub fn k_B_sl_upper(a: u32, w: u32) -> Result<Nat, BlockError> {
    if !w.is_multiple_of(3) || w == 0 {
        return Err(BlockError::NotDivisibleBy3(w));
    }
    let sp = sl_params(a, w);
    let mut total = k_B_gl3(a, 1, w)?;
    for j in 1..=sp.m {
        let x = w / 3u32.pow(j);
        total += ell_decomposition_count(Ell::Three, x as usize) * pow3(2 * j + a * x);
    }
    Ok(Integer::div_ceil(&total, &pow3(a)))
}

/// Exact k(B) at w = 3: (k(3^a, 3) + 3^{2+a} − 3^{a−1}) / 3^a.
pub fn k_B_sl_w3_exact(a: u32) -> Result<Nat, BlockError> {
    if a == 0 {
        return Err(BlockError::ZeroA);
    }
    let num = multipartition_count(3u64.pow(a), 3) + pow3(2 + a) - pow3(a - 1);
    exact_div(num, pow3(a), "k(B) at w = 3")
}

/// Exact k(B) = k(B̃)/3^a when 3 ∤ w.
pub fn k_B_sl_coprime(a: u32, w: u32) -> Result<Nat, BlockError> {
    if w.is_multiple_of(3) {
        return Err(BlockError::DivisibleBy3(w));
    }
    exact_div(k_B_gl3(a, 1, w)?, pow3(a), "k(B~)/3^a")
}

fn exact_div(num: Nat, den: Nat, what: &'static str) -> Result<Nat, BlockError> {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(BlockError::NotIntegral { what, num, den })
    }
}

/// Lower bound for k₀(B) in SL/SU: the known values 6 (w = 3) and 18 (w = 9),
/// otherwise ⌈k₀(B̃)/3^a⌉.
pub fn sl_k0_lower(a: u32, w: u32) -> Nat {
    match w {
        3 => Nat::from(6u32),
        9 => Nat::from(18u32),
        _ => Integer::div_ceil(&k0_B_gl3(a, 1, w), &pow3(a)),
    }
}

/// Lower bound for l(B) in SL/SU: 5 at w = 3, otherwise π(w).
pub fn sl_l_lower(w: u32) -> Nat {
    if w == 3 {
        Nat::from(5u32)
    } else {
        partition_count(w as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_ell_decompositions;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    // Oracle: explicit sum over W_w.
    fn brute_sum(ell: Ell, weights: &LevelWeights, w: usize) -> Nat {
        enumerate_ell_decompositions(ell, w)
            .iter()
            .map(|dec| {
                dec.digits
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| multipartition_count(weights.at(i), t))
                    .product::<Nat>()
            })
            .sum()
    }

    #[test]
    fn derive_examples() {
        let p = derive_params(1, 4, 3, Ell::Three).unwrap();
        assert_eq!((p.d, p.a, p.w), (1, 1, 3));
        let p = derive_params(1, 8, 2, Ell::Three).unwrap();
        assert_eq!((p.d, p.a, p.w), (2, 2, 1));
        let p = derive_params(1, 7, 2, Ell::Two).unwrap();
        assert_eq!(p.case2, Case2::ThreeMod4);
        assert_eq!((p.a, p.atilde, p.w), (1, Some(3), 2));
        let p = derive_params(-1, 7, 5, Ell::Two).unwrap();
        // −7 ≡ 1 mod 4, 2^3 ∥ −8
        assert_eq!(p.case2, Case2::OnePlusFour);
        assert_eq!((p.a, p.w), (3, 5));
        let p = derive_params(-1, 2, 4, Ell::Three).unwrap();
        // −2 ≡ 1 mod 3, 3 ∥ −3
        assert_eq!((p.d, p.a, p.w), (1, 1, 4));
        assert!(matches!(derive_params(1, 9, 3, Ell::Three), Err(BlockError::EllDividesQ { .. })));
        assert!(matches!(derive_params(1, 2, 1, Ell::Three), Err(BlockError::RankTooSmall { .. })));
        // n = 5, d = 2 gives w = 2
        assert_eq!(derive_params(1, 2, 5, Ell::Three).unwrap().w, 2);
    }

    #[test]
    fn param_validation() {
        assert!(BlockParams::gl3(0, 1, 3).is_err());
        assert!(BlockParams::gl3(1, 3, 3).is_err());
        assert!(BlockParams::gl2_one_plus_four(1, 3).is_err());
        assert!(BlockParams::gl2_three_mod4(1, 3).is_err());
        assert_eq!(BlockParams::gl3(1, 1, 6).unwrap().digits, vec![0, 2]);
        assert!(matches!(k_B_gl3(1, 3, 2), Err(BlockError::BadD(3))));
        let p3 = BlockParams::gl3(1, 1, 2).unwrap();
        assert!(matches!(k_B_gl2(&p3), Err(BlockError::WrongEll { .. })));
    }

    #[test]
    fn decomposition_sum_examples() {
        let w = LevelWeights::new(vec![3], 2);
        assert_eq!(weighted_decomposition_sum(Ell::Three, &w, 3), nat(24));
        assert_eq!(weighted_decomposition_sum(Ell::Three, &w, 0), nat(1));
        let w3 = LevelWeights::new(vec![3], 3);
        assert_eq!(weighted_decomposition_sum(Ell::Three, &w3, 3), nat(25));
        assert_eq!(weighted_decomposition_sum(Ell::Three, &w3, 3), brute_sum(Ell::Three, &w3, 3));
        assert_eq!(
            weighted_decomposition_sum(Ell::Three, &w3, 12),
            brute_sum(Ell::Three, &w3, 12)
        );
        let w2 = LevelWeights::new(vec![2, 7], 4);
        assert_eq!(weighted_decomposition_sum(Ell::Two, &w2, 8), nat(2908));
    }

    #[test]
    fn decomposition_sum_matches_enumeration() {
        let profiles = [
            (Ell::Three, LevelWeights::new(vec![3], 2)),
            (Ell::Three, LevelWeights::new(vec![10], 6)),
            (Ell::Three, LevelWeights::new(vec![5], 3)),
            (Ell::Two, LevelWeights::new(vec![4], 2)),
            (Ell::Two, LevelWeights::new(vec![2, 3], 2)),
            (Ell::Two, LevelWeights::new(vec![2, 15], 8)),
            (Ell::Two, LevelWeights::new(vec![1, 1, 5], 1)),
        ];
        for (ell, w) in &profiles {
            for t in 0..=30 {
                assert_eq!(weighted_decomposition_sum(*ell, w, t), brute_sum(*ell, w, t), "{w:?} {t}");
            }
        }
    }

    #[test]
    fn gl3_values() {
        assert_eq!(k_B_gl3(1, 1, 3).unwrap(), nat(24));
        assert_eq!(k_B_gl3(1, 1, 6).unwrap(), nat(270));
        assert_eq!(k_B_gl3(1, 1, 9).unwrap(), nat(2043));
        for a in 1..5 {
            for d in 1..=2 {
                let b = d as u64 + (3u64.pow(a) - 1) / d as u64;
                assert_eq!(k_B_gl3(a, d, 1).unwrap(), nat(b));
            }
        }
        // (2,2,3): b = 6, b1 = 3; W_3 = {(3), (0,1)} so k(6,3) + k(3,1).
        let k63 = (216 + 9 * 36 + 8 * 6) / 6;
        assert_eq!(k_B_gl3(2, 2, 3).unwrap(), nat(k63 + 3));
        assert_eq!(
            k_B_gl3(2, 2, 3).unwrap(),
            brute_sum(Ell::Three, &gl3_weights(2, 2), 3)
        );
    }

    #[test]
    fn gl2_values() {
        let p = BlockParams::gl2_one_plus_four(3, 2).unwrap();
        assert_eq!(k_B_gl2(&p).unwrap(), nat(48));
        let p = BlockParams::gl2_one_plus_four(2, 1).unwrap();
        assert_eq!(k_B_gl2(&p).unwrap(), nat(4));
        for (w, v) in [(1, 2), (2, 8), (3, 16), (4, 46), (8, 816)] {
            let p = BlockParams::gl2_three_mod4(2, w).unwrap();
            assert_eq!(k_B_gl2(&p).unwrap(), nat(v), "atilde 2, w {w}");
        }
        for (w, v) in [(1, 2), (2, 12), (3, 24), (4, 94), (8, 2908)] {
            let p = BlockParams::gl2_three_mod4(3, w).unwrap();
            assert_eq!(k_B_gl2(&p).unwrap(), nat(v), "atilde 3, w {w}");
        }
    }

    #[test]
    fn reduced_weights_match_literal() {
        for a in 2..8 {
            let p = BlockParams::gl2_one_plus_four(a, 5).unwrap();
            assert_eq!(p.level_weights().normalized(), literal_gl2_weights(a, 1).normalized());
        }
        for t in 2..8 {
            let p = BlockParams::gl2_three_mod4(t, 5).unwrap();
            assert_eq!(p.level_weights().normalized(), literal_gl2_weights(1, t).normalized());
        }
    }

    #[test]
    fn k0_values() {
        let k0 = |w| k0_B_gl2(&BlockParams::gl2_three_mod4(2, w).unwrap());
        assert_eq!(k0(2), nat(4));
        assert_eq!(k0(1), nat(2));
        assert_eq!(k0(11), nat(128));
        // cyclic defect group at w = 1: k₀ = 2^a
        let p = BlockParams::gl2_one_plus_four(4, 1).unwrap();
        assert_eq!(k0_B_gl2(&p), nat(16));
        assert_eq!(k0_B_gl3(1, 1, 3), nat(9));
        assert_eq!(k0_B_gl3(1, 1, 6), nat(54));
        assert_eq!(k0_B_gl3(1, 1, 9), nat(27));
        // a₀ ≠ 0: both the i ≥ 0 factor k(b, a₀) and higher digits count.
        assert_eq!(k0_B_gl3(1, 1, 4), nat(3 * 9));
    }

    #[test]
    fn l_lower_values() {
        assert_eq!(l_B_lower(&BlockParams::gl3(1, 1, 6).unwrap()), nat(11));
        assert_eq!(l_B_lower(&BlockParams::gl2_three_mod4(2, 4).unwrap()), nat(5));
        assert_eq!(l_B_lower(&BlockParams::gl3(2, 2, 1).unwrap()), nat(2));
        assert_eq!(l_B_lower(&BlockParams::gl3(2, 1, 1).unwrap()), nat(1));
        assert_eq!(l_B_lower(&BlockParams::gl2_one_plus_four(2, 1).unwrap()), nat(1));
        // k(2, 3) = 10 beats π(3) = 3.
        assert_eq!(l_B_lower(&BlockParams::gl3(1, 2, 3).unwrap()), nat(10));
    }

    #[test]
    fn sl_parameter_values() {
        assert_eq!(sl_params(1, 9), SlParams { a: 1, w: 9, m: 1, delta: 1 });
        assert_eq!(sl_params(2, 6), SlParams { a: 2, w: 6, m: 1, delta: 0 });
        assert_eq!(sl_params(3, 27), SlParams { a: 3, w: 27, m: 3, delta: 1 });
        assert_eq!(sl_params(2, 4).m, 0);
    }

    #[test]
    fn sl_upper_values() {
        assert_eq!(k_B_sl_upper(1, 6).unwrap(), nat(117));
        assert_eq!(k_B_sl_upper(2, 9).unwrap(), nat(45687));
        // (2043 + p_3(3)·3^{2+3})/3
        assert_eq!(k_B_sl_upper(1, 9).unwrap(), nat((2043 + 2 * 243) / 3));
        assert!(k_B_sl_upper(1, 4).is_err());
    }

    #[test]
    fn sl_w3_values() {
        assert_eq!(k_B_sl_w3_exact(1).unwrap(), nat(16));
        // k(9,3) from the cubic closed form
        let k93 = (729 + 9 * 81 + 8 * 9) / 6;
        assert_eq!(k93, 255);
        assert_eq!(k_B_sl_w3_exact(2).unwrap(), nat((255 + 81 - 3) / 9));
        let k27_3 = (27u64.pow(3) + 9 * 27 * 27 + 8 * 27) / 6;
        assert_eq!(k_B_sl_w3_exact(3).unwrap(), nat((k27_3 + 243 - 9) / 27));
        for a in 2..=8 {
            assert!(k_B_sl_w3_exact(a).unwrap() <= nat(5) * pow3(2 * a - 2));
        }
    }

    #[test]
    fn sl_coprime_values() {
        // k(3,1,1,2) = k(3,2) = 9
        assert_eq!(k_B_sl_coprime(1, 2).unwrap(), nat(3));
        assert!(k_B_sl_coprime(1, 3).is_err());
        for a in 1..4 {
            for w in [1, 2, 4, 5, 7, 8, 10, 11] {
                assert!(k_B_sl_coprime(a, w).is_ok(), "a {a} w {w}");
            }
        }
    }

    #[test]
    fn weven_literal_reading_fails() {
        // k^{2j+1}(B) ≤ k^{2j}(B) is false already at j = 0; the factor-2 form holds.
        let k = |w| k_B_gl2(&BlockParams::gl2_three_mod4(2, w).unwrap()).unwrap();
        assert!(k(1) > nat(1));
        assert!(k(3) > k(2));
        for j in 1..=15 {
            assert!(k(2 * j + 1) <= nat(2) * k(2 * j));
        }
    }
}
