//! Registry of inequalities, each evaluated exactly over a parameter grid.
//!
//! Every entry names a left side computed from exact invariants and a right
//! side given as a [`Bound`]. Hypothesis domains are built into the
//! enumerators; [`Expectation`] marks the two documented exceptions.

use std::fmt;

use num_traits::{One, Pow, ToPrimitive};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::defect::{index_bound, nrcharacters_factor};
use super::expr::{compare, dec, nat_to_rat, rat, rat_int, Bound, BoundExpr, Rat, Relation, Verdict};
use crate::block::{
    k0_B_gl3, k_B, k_B_gl3, k_B_sl_upper, k_B_sl_w3_exact, sl_params, weighted_decomposition_sum,
    BlockParams, LevelWeights,
};
use crate::groups::{
    class_count, defect_factors, derived_class_count, group_order, GroupSpec, DEFAULT_ORDER_CAP,
};
use crate::partition::{
    binomial, ell_adic_digits, ell_decomposition_count, enumerate_ell_decompositions,
    multipartition_count, partition_count, Ell, Nat,
};

/// Parameter ranges for ledger checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerGrid {
    pub w_max: u32,
    pub a_max: u32,
    pub atilde_max: u32,
    pub i_max: u32,
    pub d_values: Vec<u32>,
    pub brute_force_cap: u64,
}

impl Default for LedgerGrid {
    fn default() -> Self {
        LedgerGrid {
            w_max: 60,
            a_max: 6,
            atilde_max: 6,
            i_max: 6,
            d_values: vec![1, 2],
            brute_force_cap: DEFAULT_ORDER_CAP,
        }
    }
}

impl LedgerGrid {
    /// Parses `key = value` pairs separated by newlines or `;`. Keys:
    /// `w_max`, `a_max`, `atilde_max`, `i_max`, `cap`, and `d` (a comma list).
    pub fn parse(text: &str) -> Result<Self, LedgerError> {
        let mut g = LedgerGrid::default();
        for part in text.split(['\n', ';']) {
            let s = part.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            let bad = || LedgerError::BadGrid(s.to_string());
            let (k, v) = s.split_once('=').ok_or_else(bad)?;
            let (k, v) = (k.trim(), v.trim());
            let num = |v: &str| v.trim().parse::<u64>().map_err(|_| bad());
            match k {
                "w_max" => g.w_max = num(v)? as u32,
                "a_max" => g.a_max = num(v)? as u32,
                "atilde_max" => g.atilde_max = num(v)? as u32,
                "i_max" => g.i_max = num(v)? as u32,
                "cap" => g.brute_force_cap = num(v)?,
                "d" => {
                    g.d_values = v
                        .split(',')
                        .map(|x| match num(x)? {
                            d @ (1 | 2) => Ok(d as u32),
                            _ => Err(bad()),
                        })
                        .collect::<Result<_, _>>()?
                }
                _ => return Err(bad()),
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Expectation {
    Holds,
    /// A registered exception that must fail.
    Fails,
    /// Evaluated and reported, not asserted.
    Reported,
}

/// Named integer parameters of one grid point, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance(pub Vec<(&'static str, i64)>);

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (*k, *v)))
    }
}

fn ser_nat<S: Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub lemma_id: &'static str,
    pub instance: Instance,
    #[serde(serialize_with = "ser_nat")]
    pub lhs: Nat,
    pub relation: Relation,
    pub rhs: Bound,
    pub verdict: Verdict,
    pub expected: Expectation,
    pub margin_note: String,
}

impl InequalityReport {
    /// Whether the verdict agrees with the registered expectation.
    pub fn as_expected(&self) -> bool {
        match self.expected {
            Expectation::Holds => self.verdict == Verdict::Holds,
            Expectation::Fails => self.verdict == Verdict::Fails,
            Expectation::Reported => true,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LedgerError {
    #[error("unknown lemma id '{0}'")]
    UnknownLemma(String),
    #[error("bad ledger grid entry '{0}'")]
    BadGrid(String),
}

/// One registered inequality family.
pub struct Lemma {
    pub id: &'static str,
    pub statement: &'static str,
    pub domain: &'static str,
    eval: fn(&LedgerGrid, &mut Out),
}

impl fmt::Debug for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lemma").field("id", &self.id).finish()
    }
}

struct Out {
    id: &'static str,
    reports: Vec<InequalityReport>,
}

impl Out {
    fn push_exp(
        &mut self,
        inst: &[(&'static str, i64)],
        lhs: Nat,
        relation: Relation,
        rhs: impl Into<Bound>,
        expected: Expectation,
    ) {
        let rhs = rhs.into();
        let verdict = compare(&nat_to_rat(&lhs), relation, &rhs);
        let gap = rhs.approx_log2() - log2_nat(&lhs);
        let margin_note = format!("log2(rhs) - log2(lhs) = {gap:.3}");
        self.reports.push(InequalityReport {
            lemma_id: self.id,
            instance: Instance(inst.to_vec()),
            lhs,
            relation,
            rhs,
            verdict,
            expected,
            margin_note,
        });
    }

    fn le(&mut self, inst: &[(&'static str, i64)], lhs: Nat, rhs: impl Into<Bound>) {
        self.push_exp(inst, lhs, Relation::Le, rhs, Expectation::Holds);
    }

    fn ge(&mut self, inst: &[(&'static str, i64)], lhs: Nat, rhs: impl Into<Bound>) {
        self.push_exp(inst, lhs, Relation::Ge, rhs, Expectation::Holds);
    }

    fn eq(&mut self, inst: &[(&'static str, i64)], lhs: Nat, rhs: Rat) {
        self.push_exp(inst, lhs, Relation::Eq, BoundExpr::constant(rhs), Expectation::Holds);
    }
}

fn log2_nat(n: &Nat) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 60 {
        return n.to_f64().unwrap_or(0.0).log2();
    }
    let shift = bits - 60;
    (n >> shift).to_f64().unwrap_or(0.0).log2() + shift as f64
}

fn ri(n: i64) -> Rat {
    rat_int(n)
}

fn p2(x: Rat) -> BoundExpr {
    BoundExpr::pow(2, x)
}

fn p3(x: Rat) -> BoundExpr {
    BoundExpr::pow(3, x)
}

fn cst(n: &Nat) -> BoundExpr {
    BoundExpr::constant(nat_to_rat(n))
}

fn k(s: u64, t: u32) -> Nat {
    multipartition_count(s, t as usize)
}

fn digits(ell: Ell, w: u32) -> Vec<u32> {
    ell_adic_digits(ell, w as u64)
}

fn dg(d: &[u32], i: usize) -> i64 {
    d.get(i).copied().unwrap_or(0) as i64
}

fn dsum(d: &[u32], from: usize) -> i64 {
    d.iter().skip(from).map(|&x| x as i64).sum()
}

fn dweighted(d: &[u32], from: usize, f: impl Fn(i64) -> Rat) -> Rat {
    d.iter()
        .enumerate()
        .skip(from)
        .fold(ri(0), |acc, (i, &x)| acc + ri(x as i64) * f(i as i64))
}

fn b_weight(a: u32, d: u32) -> u64 {
    d as u64 + (3u64.pow(a) - 1) / d as u64
}

fn b1_weight(a: u32, d: u32) -> u64 {
    2 * 3u64.pow(a - 1) / d as u64
}

fn v3(w: u32) -> u32 {
    let mut v = 0;
    let mut x = w;
    while x > 0 && x.is_multiple_of(3) {
        x /= 3;
        v += 1;
    }
    v
}

fn gl3(a: u32, d: u32, w: u32) -> BlockParams {
    BlockParams::gl3(a, d, w).expect("valid parameters")
}

fn one_plus_four(a: u32, w: u32) -> BlockParams {
    BlockParams::gl2_one_plus_four(a, w).expect("valid parameters")
}

fn three_mod4(t: u32, w: u32) -> BlockParams {
    BlockParams::gl2_three_mod4(t, w).expect("valid parameters")
}

/// k^w(B) for εq ≡ 3 mod 4, including w = 0.
fn k_b_three_mod4(t: u32, w: u32) -> Nat {
    let weights = three_mod4(t, 1).level_weights();
    weighted_decomposition_sum(Ell::Two, &weights, w as usize)
}

/// Σ_{W_t} k(head, w_0)·∏_{i≥1} k(tail, w_i).
fn binary_sum(head: u64, tail: u64, t: u32) -> Nat {
    weighted_decomposition_sum(Ell::Two, &LevelWeights::new(vec![head], tail), t as usize)
}

/// k(D′) by brute force per factor, if every factor is within the cap.
fn derived_exact(params: &BlockParams, cap: u64) -> Option<Nat> {
    let mut total = Nat::one();
    for f in defect_factors(params) {
        if group_order(&f.spec) > Nat::from(cap) {
            return None;
        }
        let kf = derived_class_count(&f.spec, cap).ok()?;
        total *= Pow::pow(kf, f.multiplicity);
    }
    Some(total)
}

fn derived_of(spec: &GroupSpec, cap: u64) -> Option<Nat> {
    if group_order(spec) > Nat::from(cap) {
        return None;
    }
    derived_class_count(spec, cap).ok()
}

fn sl_ws(grid: &LedgerGrid) -> impl Iterator<Item = u32> {
    (6..=grid.w_max).step_by(3)
}

macro_rules! lemma {
    ($id:literal, $stmt:literal, $dom:literal, $f:expr) => {
        Lemma { id: $id, statement: $stmt, domain: $dom, eval: $f }
    };
}

static REGISTRY: &[Lemma] = &[
    lemma!("abschaetzung_sl", "3j + aw/3^j <= (a-5/6)w, compared as powers of 3",
        "2 <= a <= a_max, 3 | w, 6 <= w <= w_max, 1 <= j <= min(a, v_3(w))", |g, o| {
        for a in 2..=g.a_max {
            for w in sl_ws(g) {
                for j in 1..=a.min(v3(w)) {
                    let e = 3 * j + a * w / 3u32.pow(j);
                    o.le(&[("a", a as i64), ("w", w as i64), ("j", j as i64)],
                        Pow::pow(Nat::from(3u32), e), p3(ri(a as i64) * ri(w as i64) - rat(5 * w as i64, 6)));
                }
            }
        }
    }),
    lemma!("betterboundk0B", "k0(B) >= 3^(sum_{i>=1} a_i*i + #{i>=1 : a_i != 0})",
        "l = 3, a = 1, d in d_values, 1 <= w <= w_max", |g, o| {
        for &d in &g.d_values {
            for w in 1..=g.w_max {
                let ds = digits(Ell::Three, w);
                let x = dweighted(&ds, 1, ri) + ri(ds.iter().skip(1).filter(|&&x| x > 0).count() as i64);
                o.ge(&[("d", d as i64), ("w", w as i64)], k0_B_gl3(1, d, w), p3(x));
            }
        }
    }),
    lemma!("binomial_bound", "binom(w+3, w) <= 2^(2w/3 + 3)", "0 <= w <= w_max", |g, o| {
        for w in 0..=g.w_max {
            o.le(&[("w", w as i64)], binomial(w as u64 + 3, w as u64), p2(rat(2 * w as i64, 3) + ri(3)));
        }
    }),
    lemma!("bound165_l2", "k^w(B) <= 2^(1.4w + 1.65)", "l = 2, eq = 1 mod 4, a = 2, 1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            o.le(&[("w", w as i64)], k_B(&one_plus_four(2, w)), p2(dec("1.4") * ri(w as i64) + dec("1.65")));
        }
    }),
    lemma!("bound165_l3", "k^w(B) <= 3^((w+7)/2)", "l = 3, a = 1, d in d_values, 1 <= w <= w_max", |g, o| {
        for &d in &g.d_values {
            for w in 1..=g.w_max {
                o.le(&[("d", d as i64), ("w", w as i64)], k_B(&gl3(1, d, w)), p3(rat(w as i64 + 7, 2)));
            }
        }
    }),
    lemma!("bound165_l3_min", "k^w(B) <= 3^min((w+7)/2, w)", "l = 3, a = 1, d in d_values, 1 <= w <= w_max", |g, o| {
        for &d in &g.d_values {
            for w in 1..=g.w_max {
                let x = rat(w as i64 + 7, 2).min(ri(w as i64));
                o.le(&[("d", d as i64), ("w", w as i64)], k_B(&gl3(1, d, w)), p3(x));
            }
        }
    }),
    lemma!("bound23_l2", "k(B) <= 2^((a-1)w + 3/2)", "l = 2, eq = 1 mod 4, 4 <= a <= a_max, 1 <= w <= w_max", |g, o| {
        for a in 4..=g.a_max {
            for w in 1..=g.w_max {
                o.le(&[("a", a as i64), ("w", w as i64)], k_B(&one_plus_four(a, w)),
                    p2(ri((a as i64 - 1) * w as i64) + rat(3, 2)));
            }
        }
    }),
    lemma!("bound23_l2_weak", "k(B) <= 2^((a-1)w + 3)", "l = 2, eq = 1 mod 4, 3 <= a <= a_max, 1 <= w <= w_max", |g, o| {
        for a in 3..=g.a_max {
            for w in 1..=g.w_max {
                o.le(&[("a", a as i64), ("w", w as i64)], k_B(&one_plus_four(a, w)),
                    p2(ri((a as i64 - 1) * w as i64 + 3)));
            }
        }
    }),
    lemma!("bound23_l3", "k(B) <= p_3(w) * 3^((a-5/6)w + 2) / d",
        "l = 3, 2 <= a <= a_max, d in d_values, 1 <= w <= w_max", |g, o| {
        for a in 2..=g.a_max {
            for &d in &g.d_values {
                for w in 1..=g.w_max {
                    let p = ell_decomposition_count(Ell::Three, w as usize);
                    let rhs = p3((ri(a as i64) - rat(5, 6)) * ri(w as i64) + ri(2))
                        .times(nat_to_rat(&p) / ri(d as i64));
                    o.le(&[("a", a as i64), ("d", d as i64), ("w", w as i64)], k_B_gl3(a, d, w).expect("valid"), rhs);
                }
            }
        }
    }),
    lemma!("bound23_l3_termwise", "k(b, w_0) * prod_{i>=1} k(b_1, w_i) <= 3^((a-5/6)w + 2) / d",
        "l = 3, 2 <= a <= a_max, d in d_values, 1 <= w <= min(w_max, 30), every 3-decomposition", |g, o| {
        for a in 2..=g.a_max {
            for &d in &g.d_values {
                let (b, b1) = (b_weight(a, d), b1_weight(a, d));
                for w in 1..=g.w_max.min(30) {
                    let rhs = p3((ri(a as i64) - rat(5, 6)) * ri(w as i64) + ri(2)).times(rat(1, d as i64));
                    for (n, dec_) in enumerate_ell_decompositions(Ell::Three, w as usize).iter().enumerate() {
                        let mut term = k(b, dec_.digits[0] as u32);
                        for &x in &dec_.digits[1..] {
                            term *= k(b1, x as u32);
                        }
                        o.le(&[("a", a as i64), ("d", d as i64), ("w", w as i64), ("decomposition", n as i64)],
                            term, rhs.clone());
                    }
                }
            }
        }
    }),
    lemma!("bound34_k3", "k(3, w) <= 3^(w/2 + 9/4)", "1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            o.le(&[("w", w as i64)], k(3, w), p3(rat(w as i64, 2) + rat(9, 4)));
        }
    }),
    lemma!("bound34_k4", "k(4, w) <= 2^(1.2w + 2)", "1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            o.le(&[("w", w as i64)], k(4, w), p2(dec("1.2") * ri(w as i64) + ri(2)));
        }
    }),
    lemma!("index_bound", "k(D_{i,l^a}') >= k(D_{i-1,l^a})^l / |D_{i-1,l^a} : D_{i-1,l^a}'|",
        "l = 3 with 1 <= a <= a_max or l = 2 with 2 <= a <= a_max, 1 <= i <= i_max, |D_{i,l^a}| <= cap", |g, o| {
        for (ell, lo) in [(Ell::Two, 2), (Ell::Three, 1)] {
            for a in lo..=g.a_max {
                for i in 1..=g.i_max {
                    let spec = GroupSpec::d_factor(ell, a, i);
                    if let Some(kd) = derived_of(&spec, g.brute_force_cap) {
                        o.ge(&[("l", ell.value() as i64), ("a", a as i64), ("i", i as i64)], kd,
                            index_bound(&spec).expect("wreath factor"));
                    }
                }
            }
        }
    }),
    lemma!("k0_lower", "k0(B) >= 3^(sum_{i>=1} a_i(a+i-1)) / d^(sum_{i>=1} a_i)",
        "l = 3, 1 <= a <= a_max, d in d_values, 1 <= w <= w_max", |g, o| {
        for a in 1..=g.a_max {
            for &d in &g.d_values {
                for w in 1..=g.w_max {
                    let ds = digits(Ell::Three, w);
                    let x = dweighted(&ds, 1, |i| ri(a as i64 + i - 1));
                    let coeff = Rat::one() / Pow::pow(ri(d as i64), dsum(&ds, 1) as u32);
                    o.ge(&[("a", a as i64), ("d", d as i64), ("w", w as i64)], k0_B_gl3(a, d, w), p3(x).times(coeff));
                }
            }
        }
    }),
    lemma!("k3_tilde2", "k(3, w) <= 2^(1.2w + 0.9)", "0 <= w <= w_max", |g, o| {
        for w in 0..=g.w_max {
            o.le(&[("w", w as i64)], k(3, w), p2(dec("1.2") * ri(w as i64) + dec("0.9")));
        }
    }),
    lemma!("k3aw2", "k(s,1) = s, k(s,2) = s^2/2 + 3s/2, k(s,3) = s^3/6 + 3s^2/2 + 4s/3",
        "1 <= s <= 30, t in {1, 2, 3}", |_, o| {
        for s in 1..=30i64 {
            let sr = ri(s);
            let closed = [
                sr.clone(),
                &sr * &sr / ri(2) + ri(3) * &sr / ri(2),
                &sr * &sr * &sr / ri(6) + ri(3) * &sr * &sr / ri(2) + ri(4) * &sr / ri(3),
            ];
            for (t, c) in closed.into_iter().enumerate() {
                o.eq(&[("s", s), ("t", t as i64 + 1)], k(s as u64, t as u32 + 1), c);
            }
        }
    }),
    lemma!("kB3", "k(B) <= ((w-a_0)/2 + 1) * 2^(w + 3.35)", "l = 2, eq = 3 mod 4, atilde = 3, 1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            let a0 = dg(&digits(Ell::Two, w), 0);
            let c = ri((w as i64 - a0) / 2 + 1);
            o.le(&[("w", w as i64)], k_B(&three_mod4(3, w)), p2(ri(w as i64) + dec("3.35")).times(c));
        }
    }),
    lemma!("kB3_strong", "k(B) <= 2^(1.3w + 2.7)", "l = 2, eq = 3 mod 4, atilde = 3, 11 <= w <= w_max", |g, o| {
        for w in 11..=g.w_max {
            o.le(&[("w", w as i64)], k_B(&three_mod4(3, w)), p2(dec("1.3") * ri(w as i64) + dec("2.7")));
        }
    }),
    lemma!("kBsl", "k(B) <= p_3(w) * (19/18) * 3^(a(w-1) - 5w/6 + 2), left side the rounded-up upper bound",
        "SL, 2 <= a <= a_max, 3 | w, 6 <= w <= w_max", |g, o| {
        for a in 2..=g.a_max {
            for w in sl_ws(g) {
                let p = ell_decomposition_count(Ell::Three, w as usize);
                let x = ri(a as i64 * (w as i64 - 1)) - rat(5 * w as i64, 6) + ri(2);
                o.le(&[("a", a as i64), ("w", w as i64)], k_B_sl_upper(a, w).expect("3 | w"),
                    p3(x).times(nat_to_rat(&p) * rat(19, 18)));
            }
        }
    }),
    lemma!("kBsl_weak", "k(B) <= (19/18) * 3^(a(w-1) - 2w/3 + 2)", "SL, 2 <= a <= a_max, 3 | w, 6 <= w <= w_max", |g, o| {
        for a in 2..=g.a_max {
            for w in sl_ws(g) {
                let x = ri(a as i64 * (w as i64 - 1)) - rat(2 * w as i64, 3) + ri(2);
                o.le(&[("a", a as i64), ("w", w as i64)], k_B_sl_upper(a, w).expect("3 | w"), p3(x).times(rat(19, 18)));
            }
        }
    }),
    lemma!("kBsl_w9", "k(3,a,1,9) <= 3^(9a-6) and k(B) <= 2 * 3^(8a-6)", "SL, 3 <= a <= a_max, w = 9", |g, o| {
        for a in 3..=g.a_max {
            let ai = a as i64;
            o.le(&[("a", ai), ("part", 1)], k_B_gl3(a, 1, 9).expect("valid"), p3(ri(9 * ai - 6)));
            o.le(&[("a", ai), ("part", 2)], k_B_sl_upper(a, 9).expect("3 | 9"), p3(ri(8 * ai - 6)).times(ri(2)));
        }
    }),
    lemma!("kD'3", "k(D') >= l^((a - 1/(l-1))(w - a_0) - sum_{i>=1} a_i(a + i - (2l-1)/(l-1)))",
        "l = 3 with 1 <= a <= a_max or l = 2 (eq = 1 mod 4) with 2 <= a <= a_max, 1 <= w <= w_max, every factor within cap", |g, o| {
        for (ell, lo) in [(Ell::Two, 2), (Ell::Three, 1)] {
            let l = ell.value() as i64;
            for a in lo..=g.a_max {
                for w in 1..=g.w_max {
                    let p = if ell == Ell::Two { one_plus_four(a, w) } else { gl3(a, 1, w) };
                    let Some(kd) = derived_exact(&p, g.brute_force_cap) else { continue };
                    let ds = &p.digits;
                    let x = (ri(a as i64) - rat(1, l - 1)) * ri(w as i64 - dg(ds, 0))
                        - dweighted(ds, 1, |i| ri(a as i64 + i) - rat(2 * l - 1, l - 1));
                    o.ge(&[("l", l), ("a", a as i64), ("w", w as i64)], kd, BoundExpr::pow(l as u32, x));
                }
            }
        }
    }),
    lemma!("kD'3_factor", "k(D_{i,l^a}') >= l^(a(l^i - 1) - (l^i - l)/(l-1) - i + 1)",
        "l = 3 with 1 <= a <= a_max or l = 2 with 2 <= a <= a_max, 1 <= i <= i_max, |D_{i,l^a}| <= cap", |g, o| {
        for (ell, lo) in [(Ell::Two, 2), (Ell::Three, 1)] {
            let l = ell.value() as i64;
            for a in lo..=g.a_max {
                for i in 1..=g.i_max {
                    let Some(kd) = derived_of(&GroupSpec::d_factor(ell, a, i), g.brute_force_cap) else { continue };
                    let li = l.pow(i);
                    let x = ri(a as i64 * (li - 1)) - rat(li - l, l - 1) - ri(i as i64) + ri(1);
                    o.ge(&[("l", l), ("a", a as i64), ("i", i as i64)], kd, BoundExpr::pow(l as u32, x));
                }
            }
        }
    }),
    lemma!("kD'31", "k(D') >= 3^(2(w - a_0)/3 + sum_{i>=1} a_i(1/2 - i))",
        "l = 3, a = 1, 1 <= w <= w_max, every factor within cap", |g, o| {
        for w in 1..=g.w_max {
            let p = gl3(1, 1, w);
            let Some(kd) = derived_exact(&p, g.brute_force_cap) else { continue };
            let x = rat(2 * (w as i64 - dg(&p.digits, 0)), 3) + dweighted(&p.digits, 1, |i| rat(1, 2) - ri(i));
            o.ge(&[("w", w as i64)], kd, p3(x));
        }
    }),
    lemma!("kD'_sl", "k(D~') >= 3^(1+delta) * 3^(2w/3 + sum_{i>=1} a_i(1/2 - i) - 1 - delta)",
        "SL, a = 1, 3 | w, 6 <= w <= w_max, every factor of D~ within cap", |g, o| {
        for w in sl_ws(g) {
            let p = gl3(1, 1, w);
            let Some(kd) = derived_exact(&p, g.brute_force_cap) else { continue };
            let delta = sl_params(1, w).delta as i64;
            let x = rat(2 * w as i64, 3) + dweighted(&p.digits, 1, |i| rat(1, 2) - ri(i)) - ri(1) - ri(delta);
            o.ge(&[("w", w as i64)], kd, p3(x).times(Pow::pow(ri(3), 1 + delta as u32)));
        }
    }),
    lemma!("kD'b3", "k(D') >= 2^(1.3(w - a_0) + 0.4a_1 + 0.8a_2 - sum_{i>=3} (i-2)a_i)",
        "l = 2, eq = 3 mod 4, atilde = 3, 1 <= w <= w_max, every factor within cap", |g, o| {
        for w in 1..=g.w_max {
            let p = three_mod4(3, w);
            let Some(kd) = derived_exact(&p, g.brute_force_cap) else { continue };
            let ds = &p.digits;
            let x = dec("1.3") * ri(w as i64 - dg(ds, 0)) + dec("0.4") * ri(dg(ds, 1)) + dec("0.8") * ri(dg(ds, 2))
                - dweighted(ds, 3, |i| ri(i - 2));
            o.ge(&[("w", w as i64)], kd, p2(x));
        }
    }),
    lemma!("kD'b3_factor", "k(P_4') >= 2^6 and k(P_{2^i}') >= 2^(1.3*2^i - (i-2)) for i >= 3",
        "atilde = 3, 2 <= i <= i_max, |P_{2^i}| <= cap", |g, o| {
        for i in 2..=g.i_max {
            let Some(kd) = derived_of(&GroupSpec::p_factor(3, i), g.brute_force_cap) else { continue };
            let x = if i == 2 { ri(6) } else { dec("1.3") * ri(1 << i) - ri(i as i64 - 2) };
            o.ge(&[("i", i as i64)], kd, p2(x));
        }
    }),
    lemma!("kD3", "k(D) >= l^((a - 1/(l-1))w + sum_{i>=1} a_i/(l-1))",
        "l = 3 with 1 <= a <= a_max or l = 2 (eq = 1 mod 4) with 2 <= a <= a_max, 1 <= w <= w_max", |g, o| {
        for (ell, lo) in [(Ell::Two, 2), (Ell::Three, 1)] {
            let l = ell.value() as i64;
            for a in lo..=g.a_max {
                for w in 1..=g.w_max {
                    let p = if ell == Ell::Two { one_plus_four(a, w) } else { gl3(a, 1, w) };
                    let kd = class_count(&crate::groups::defect_group_spec(&p));
                    let x = (ri(a as i64) - rat(1, l - 1)) * ri(w as i64) + ri(dsum(&p.digits, 1)) / ri(l - 1);
                    o.ge(&[("l", l), ("a", a as i64), ("w", w as i64)], kd, BoundExpr::pow(l as u32, x));
                }
            }
        }
    }),
    lemma!("kD31", "k(D) >= 3^(2w/3 + sum_{i>=1} a_i/2)", "l = 3, a = 1, 1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            let p = gl3(1, 1, w);
            let kd = class_count(&crate::groups::defect_group_spec(&p));
            o.ge(&[("w", w as i64)], kd, p3(rat(2 * w as i64, 3) + rat(dsum(&p.digits, 1), 2)));
        }
    }),
    lemma!("kD3_factor", "k(D_{i,l^a}) >= l^(a*l^i - (l^i - 1)/(l-1))",
        "l = 3 with 1 <= a <= a_max or l = 2 with 2 <= a <= a_max, 1 <= i <= i_max", |g, o| {
        for (ell, lo) in [(Ell::Two, 2), (Ell::Three, 1)] {
            let l = ell.value() as i64;
            for a in lo..=g.a_max {
                for i in 1..=g.i_max {
                    let li = l.pow(i);
                    let kd = class_count(&GroupSpec::d_factor(ell, a, i));
                    o.ge(&[("l", l), ("a", a as i64), ("i", i as i64)], kd,
                        BoundExpr::pow(l as u32, ri(a as i64 * li) - rat(li - 1, l - 1)));
                }
            }
        }
    }),
    lemma!("kD4", "k(D) >= 2^(1.4w + sum_{i>=1} a_i)", "l = 2, eq = 1 mod 4, a = 2, w even, 2 <= w <= w_max", |g, o| {
        for w in (2..=g.w_max).step_by(2) {
            let p = one_plus_four(2, w);
            let kd = class_count(&crate::groups::defect_group_spec(&p));
            o.ge(&[("w", w as i64)], kd, p2(dec("1.4") * ri(w as i64) + ri(dsum(&p.digits, 1))));
        }
    }),
    lemma!("kD4_factor", "k(D_{i,4}) >= 2^(1.4*2^i + 1)", "1 <= i <= i_max", |g, o| {
        for i in 1..=g.i_max {
            let kd = class_count(&GroupSpec::d_factor(Ell::Two, 2, i));
            o.ge(&[("i", i as i64)], kd, p2(dec("1.4") * ri(1 << i) + ri(1)));
        }
    }),
    lemma!("kD4_prime", "k(D') >= 2^(1.4w + sum_{i>=2} a_i(1 - i) - 0.8a_1)",
        "l = 2, eq = 1 mod 4, a = 2, w even, 2 <= w <= w_max, every factor within cap", |g, o| {
        for w in (2..=g.w_max).step_by(2) {
            let p = one_plus_four(2, w);
            let Some(kd) = derived_exact(&p, g.brute_force_cap) else { continue };
            let x = dec("1.4") * ri(w as i64) + dweighted(&p.digits, 2, |i| ri(1 - i)) - dec("0.8") * ri(dg(&p.digits, 1));
            o.ge(&[("w", w as i64)], kd, p2(x));
        }
    }),
    lemma!("kD4_prime_factor", "k(D_{1,4}') >= 2^2 and k(D_{i,4}') >= 2^(1.4*2^i - i + 1) for i >= 2",
        "1 <= i <= i_max, |D_{i,4}| <= cap", |g, o| {
        for i in 1..=g.i_max {
            let Some(kd) = derived_of(&GroupSpec::d_factor(Ell::Two, 2, i), g.brute_force_cap) else { continue };
            let x = if i == 1 { ri(2) } else { dec("1.4") * ri(1 << i) - ri(i as i64) + ri(1) };
            o.ge(&[("i", i as i64)], kd, p2(x));
        }
    }),
    lemma!("kDa1wleq10", "k(D~) >= 9 * 3^(2w/3 + sum_{i>=1} a_i/2 - 2)", "SL, a = 1, 3 | w, 6 <= w <= w_max", |g, o| {
        for w in sl_ws(g) {
            let p = gl3(1, 1, w);
            let kd = class_count(&crate::groups::defect_group_spec(&p));
            let x = rat(2 * w as i64, 3) + rat(dsum(&p.digits, 1), 2) - ri(2);
            o.ge(&[("w", w as i64)], kd, p3(x).times(ri(9)));
        }
    }),
    lemma!("kDb3", "k(D) >= 2^(1.3w - 0.3a_0 + 0.85a_1 + sum_{i>=2} a_i)",
        "l = 2, eq = 3 mod 4, atilde = 3, 1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            let p = three_mod4(3, w);
            let kd = class_count(&crate::groups::defect_group_spec(&p));
            let ds = &p.digits;
            let x = dec("1.3") * ri(w as i64) - dec("0.3") * ri(dg(ds, 0)) + dec("0.85") * ri(dg(ds, 1)) + ri(dsum(ds, 2));
            o.ge(&[("w", w as i64)], kd, p2(x));
        }
    }),
    lemma!("kDb3_factor", "k(P_{2^i}) >= 2^(1.3*2^i + 1)", "atilde = 3, 2 <= i <= i_max", |g, o| {
        for i in 2..=g.i_max {
            o.ge(&[("i", i as i64)], class_count(&GroupSpec::p_factor(3, i)), p2(dec("1.3") * ri(1 << i) + ri(1)));
        }
    }),
    lemma!("kDbar", "k(D~) >= 3^(a+m) * 3^(a(w-1) - w/2 - m + sum_{i>=1} a_i/2)",
        "SL, 2 <= a <= a_max, 3 | w, 6 <= w <= w_max", |g, o| {
        for a in 2..=g.a_max {
            for w in sl_ws(g) {
                let p = gl3(a, 1, w);
                let m = sl_params(a, w).m as i64;
                let kd = class_count(&crate::groups::defect_group_spec(&p));
                let x = ri(a as i64 * (w as i64 - 1)) - rat(w as i64, 2) - ri(m) + rat(dsum(&p.digits, 1), 2);
                o.ge(&[("a", a as i64), ("w", w as i64)], kd, p3(x).times(Pow::pow(ri(3), a + m as u32)));
            }
        }
    }),
    lemma!("kDbar_prime", "k(D~') >= 3^(m+delta) * 3^((a-1/2)w - sum_{i>=1} a_i(a+i-5/2) - m - delta)",
        "SL, 2 <= a <= a_max, 3 | w, 6 <= w <= w_max, every factor of D~ within cap", |g, o| {
        for a in 2..=g.a_max {
            for w in sl_ws(g) {
                let p = gl3(a, 1, w);
                let Some(kd) = derived_exact(&p, g.brute_force_cap) else { continue };
                let sp = sl_params(a, w);
                let (m, delta) = (sp.m as i64, sp.delta as i64);
                let x = (ri(a as i64) - rat(1, 2)) * ri(w as i64)
                    - dweighted(&p.digits, 1, |i| ri(a as i64 + i) - rat(5, 2)) - ri(m) - ri(delta);
                o.ge(&[("a", a as i64), ("w", w as i64)], kd, p3(x).times(Pow::pow(ri(3), (m + delta) as u32)));
            }
        }
    }),
    lemma!("kbsla1", "k(B) <= 3^(w/2 + 5/2) + 3^(1 + w/2), left side the rounded-up upper bound",
        "SL, a = 1, 3 | w, 6 <= w <= w_max", |g, o| {
        for w in sl_ws(g) {
            let h = rat(w as i64, 2);
            o.le(&[("w", w as i64)], k_B_sl_upper(1, w).expect("3 | w"),
                Bound(vec![p3(&h + rat(5, 2)), p3(ri(1) + &h)]));
        }
    }),
    lemma!("kbsla1_final", "k(B) <= 3^(w/2 + 2.67)", "SL, a = 1, 3 | w, 6 <= w <= w_max", |g, o| {
        for w in sl_ws(g) {
            o.le(&[("w", w as i64)], k_B_sl_upper(1, w).expect("3 | w"), p3(rat(w as i64, 2) + dec("2.67")));
        }
    }),
    lemma!("k_cx", "k(cx, w) <= binom(x+w-1, w) * c^w", "3 <= c <= 9, 1 <= x <= 8, 0 <= w <= min(w_max, 30)", |g, o| {
        for c in 3..=9u64 {
            for x in 1..=8u64 {
                for w in 0..=g.w_max.min(30) {
                    let rhs = binomial(x + w as u64 - 1, w as u64) * Pow::pow(Nat::from(c), w);
                    o.le(&[("c", c as i64), ("x", x as i64), ("w", w as i64)], k(c * x, w), cst(&rhs));
                }
            }
        }
    }),
    lemma!("multipartitions_basics_i", "k(s, t) <= s^t", "3 <= s <= 16, 1 <= t <= min(w_max, 40)", |g, o| {
        for s in 3..=16u64 {
            for t in 1..=g.w_max.min(40) {
                o.le(&[("s", s as i64), ("t", t as i64)], k(s, t), BoundExpr::pow(s as u32, ri(t as i64)));
            }
        }
    }),
    lemma!("multipartitions_basics_ii", "k(s, t1 + t2) <= k(s, t1) * k(s, t2)",
        "3 <= s <= 8, 1 <= t1, t2 <= w_max/3", |g, o| {
        for s in 3..=8u64 {
            let series = crate::partition::multipartition_series(s, 2 * (g.w_max / 3) as usize);
            for t1 in 1..=g.w_max / 3 {
                for t2 in 1..=g.w_max / 3 {
                    let rhs = &series[t1 as usize] * &series[t2 as usize];
                    o.le(&[("s", s as i64), ("t1", t1 as i64), ("t2", t2 as i64)],
                        series[(t1 + t2) as usize].clone(), cst(&rhs));
                }
            }
        }
    }),
    lemma!("multipartitions_basics_ii_k2", "k(2, t+1) <= 2 * k(2, t)", "2 <= t <= w_max", |g, o| {
        for t in 2..=g.w_max {
            o.le(&[("t", t as i64)], k(2, t + 1), cst(&(k(2, t) * 2u32)));
        }
    }),
    lemma!("multipartitions_k2", "k(2, w) <= 2^(w + 0.35)", "0 <= w <= w_max", |g, o| {
        for w in 0..=g.w_max {
            o.le(&[("w", w as i64)], k(2, w), p2(ri(w as i64) + dec("0.35")));
        }
    }),
    lemma!("multipartitions_k2a", "k(2^a, w) <= 2^((a - 4/3)w + 3)", "3 <= a <= a_max, 0 <= w <= w_max", |g, o| {
        for a in 3..=g.a_max {
            for w in 0..=g.w_max {
                o.le(&[("a", a as i64), ("w", w as i64)], k(1 << a, w),
                    p2((ri(a as i64) - rat(4, 3)) * ri(w as i64) + ri(3)));
            }
        }
    }),
    lemma!("multipartitions_k2a_strong", "k(2^a, w) <= 2^((a - 4/3)w + 2)", "5 <= a <= a_max, 0 <= w <= w_max", |g, o| {
        for a in 5..=g.a_max {
            for w in 0..=g.w_max {
                o.le(&[("a", a as i64), ("w", w as i64)], k(1 << a, w),
                    p2((ri(a as i64) - rat(4, 3)) * ri(w as i64) + ri(2)));
            }
        }
    }),
    lemma!("multipartitions_kb", "k(b, w) <= 3^((a - 5/6)w + 2) / d",
        "2 <= a <= a_max, d in d_values, 0 <= w <= w_max", |g, o| {
        for a in 2..=g.a_max {
            for &d in &g.d_values {
                for w in 0..=g.w_max {
                    o.le(&[("a", a as i64), ("d", d as i64), ("w", w as i64)], k(b_weight(a, d), w),
                        p3((ri(a as i64) - rat(5, 6)) * ri(w as i64) + ri(2)).times(rat(1, d as i64)));
                }
            }
        }
    }),
    lemma!("multipartitions_kb_strong", "k(b, w) <= 3^((a - 5/6)w) / d",
        "3 <= a <= a_max, d in d_values, 9 <= w <= w_max", |g, o| {
        for a in 3..=g.a_max {
            for &d in &g.d_values {
                for w in 9..=g.w_max {
                    o.le(&[("a", a as i64), ("d", d as i64), ("w", w as i64)], k(b_weight(a, d), w),
                        p3((ri(a as i64) - rat(5, 6)) * ri(w as i64)).times(rat(1, d as i64)));
                }
            }
        }
    }),
    lemma!("nrcharacters_kd", "k(D_{i,3}) >= 3^(3^((i-1)/2)) * 3^((3^i + 1)/2)",
        "1 <= i <= i_max; i = 1 is reported, not asserted", |g, o| {
        for i in 1..=g.i_max {
            let kd = class_count(&GroupSpec::d_factor(Ell::Three, 1, i));
            let exp = if i == 1 { Expectation::Reported } else { Expectation::Holds };
            o.push_exp(&[("i", i as i64)], kd, Relation::Ge, nrcharacters_factor(i, false), exp);
        }
    }),
    lemma!("nrcharacters_kd_prime", "k(D_{i,3}') >= 3^(3^((i-1)/2)) * 3^((3^i + 1)/2 - i)",
        "1 <= i <= i_max, |D_{i,3}| <= cap", |g, o| {
        for i in 1..=g.i_max {
            let Some(kd) = derived_of(&GroupSpec::d_factor(Ell::Three, 1, i), g.brute_force_cap) else { continue };
            o.ge(&[("i", i as i64)], kd, nrcharacters_factor(i, true));
        }
    }),
    lemma!("partition_bound", "pi(n) <= 1.4^(n + 1.2)", "1 <= n <= w_max", |g, o| {
        for n in 1..=g.w_max {
            o.le(&[("n", n as i64)], partition_count(n as usize),
                BoundExpr::pow_rat_base(dec("1.4"), ri(n as i64) + dec("1.2")));
        }
    }),
    lemma!("plw_p2", "p_2(w) <= 2^(w/3 + 1)", "0 <= w <= w_max", |g, o| {
        for w in 0..=g.w_max {
            o.le(&[("w", w as i64)], ell_decomposition_count(Ell::Two, w as usize), p2(rat(w as i64, 3) + ri(1)));
        }
    }),
    lemma!("plw_p3", "p_3(w) <= 3^(w/6) for w != 3", "1 <= w <= w_max; w = 3 is a registered failure", |g, o| {
        for w in 1..=g.w_max {
            let exp = if w == 3 { Expectation::Fails } else { Expectation::Holds };
            o.push_exp(&[("w", w as i64)], ell_decomposition_count(Ell::Three, w as usize), Relation::Le,
                p3(rat(w as i64, 6)), exp);
        }
    }),
    lemma!("plw_recurrence", "p_l(w) <= (w/l) * p_l(floor(w/l))", "l in {2, 3}, l^2 <= w <= w_max", |g, o| {
        for ell in [Ell::Two, Ell::Three] {
            let l = ell.value();
            for w in l * l..=g.w_max {
                let inner = ell_decomposition_count(ell, (w / l) as usize);
                o.le(&[("l", l as i64), ("w", w as i64)], ell_decomposition_count(ell, w as usize),
                    BoundExpr::constant(nat_to_rat(&inner) * rat(w as i64, l as i64)));
            }
        }
    }),
    lemma!("recb_a2", "k(B) <= sum_{j=0}^{(w-a_0)/2} 2^(1.4(w-a_0)/2 + a_0 + 1.35 + 0.6j)",
        "l = 2, eq = 3 mod 4, atilde = 2, 1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            let a0 = dg(&digits(Ell::Two, w), 0);
            let base = dec("0.7") * ri(w as i64 - a0) + ri(a0) + dec("1.35");
            let terms = (0..=(w as i64 - a0) / 2).map(|j| p2(&base + dec("0.6") * ri(j))).collect();
            o.le(&[("w", w as i64)], k_B(&three_mod4(2, w)), Bound(terms));
        }
    }),
    lemma!("recb_a4", "k(B) <= 2^((atilde-1)(w-a_0)/2 + a_0 + 1.85) * sum_{j=0}^{(w-a_0)/2} 2^((3-atilde)j)",
        "l = 2, eq = 3 mod 4, 4 <= atilde <= atilde_max, 1 <= w <= w_max", |g, o| {
        for t in 4..=g.atilde_max {
            for w in 1..=g.w_max {
                let a0 = dg(&digits(Ell::Two, w), 0);
                let jmax = (w as i64 - a0) / 2;
                let q = Rat::one() / Pow::pow(ri(2), t - 3);
                let geo: Rat = (0..=jmax).fold(ri(0), |acc, j| acc + Pow::pow(&q, j as u32));
                let x = ri(t as i64 - 1) * ri(w as i64 - a0) / ri(2) + ri(a0) + dec("1.85");
                o.le(&[("atilde", t as i64), ("w", w as i64)], k_B(&three_mod4(t, w)), p2(x).times(geo));
            }
        }
    }),
    lemma!("recb_a4_final", "k(B) <= 2^((atilde-1)(w-a_0)/2 + a_0 + 2.85)",
        "l = 2, eq = 3 mod 4, 4 <= atilde <= atilde_max, 1 <= w <= w_max", |g, o| {
        for t in 4..=g.atilde_max {
            for w in 1..=g.w_max {
                let a0 = dg(&digits(Ell::Two, w), 0);
                let x = ri(t as i64 - 1) * ri(w as i64 - a0) / ri(2) + ri(a0) + dec("2.85");
                o.le(&[("atilde", t as i64), ("w", w as i64)], k_B(&three_mod4(t, w)), p2(x));
            }
        }
    }),
    lemma!("recb_hyp_a3", "sum_{W_t} k(7, w_0) prod_{i>=1} k(4, w_i) <= 2^(2t + 3)", "0 <= t <= w_max", |g, o| {
        for t in 0..=g.w_max {
            o.le(&[("t", t as i64)], binary_sum(7, 4, t), p2(ri(2 * t as i64 + 3)));
        }
    }),
    lemma!("recb_hyp_a4", "sum_{W_t} k(2^atilde - 1, w_0) prod_{i>=1} k(2^(atilde-1), w_i) <= 2^((atilde-1)t + 1.5)",
        "4 <= atilde <= atilde_max, 0 <= t <= w_max", |g, o| {
        for at in 4..=g.atilde_max {
            for t in 0..=g.w_max {
                o.le(&[("atilde", at as i64), ("t", t as i64)], binary_sum((1 << at) - 1, 1 << (at - 1), t),
                    p2(ri((at as i64 - 1) * t as i64) + dec("1.5")));
            }
        }
    }),
    lemma!("sl_a1_w9", "k(D_{1,3})^3 >= 81 * 3^3.5", "single instance", |_, o| {
        let k1 = class_count(&GroupSpec::d_factor(Ell::Three, 1, 1));
        o.ge(&[], Pow::pow(k1, 3u32), p3(rat(7, 2)).times(ri(81)));
    }),
    lemma!("sl_w3", "k(B) = (k(3^a,3) + 3^(2+a) - 3^(a-1))/3^a <= 5 * 3^(2a-2)", "SL, 2 <= a <= a_max, w = 3", |g, o| {
        for a in 2..=g.a_max {
            o.le(&[("a", a as i64)], k_B_sl_w3_exact(a).expect("a >= 1"), p3(ri(2 * a as i64 - 2)).times(ri(5)));
        }
    }),
    lemma!("sl_w3_k3a3", "k(3^a, 3) <= 0.35 * 3^(3a)", "2 <= a <= a_max", |g, o| {
        for a in 2..=g.a_max {
            o.le(&[("a", a as i64)], k(3u64.pow(a), 3), p3(ri(3 * a as i64)).times(dec("0.35")));
        }
    }),
    lemma!("sum_tilde2", "sum_{W_w} k(3, w_0) prod_{i>=1} k(2, w_i) <= 2^(1.4w + 1)", "0 <= w <= w_max", |g, o| {
        for w in 0..=g.w_max {
            o.le(&[("w", w as i64)], binary_sum(3, 2, w), p2(dec("1.4") * ri(w as i64) + ri(1)));
        }
    }),
    lemma!("sylowb_closed", "k(P_1) = 2, k(P_2) = 2^atilde + 3, k(P_4) = k(2^atilde + 3, 2) = 2^(2atilde-1) + 9*2^(atilde-1) + 9",
        "2 <= atilde <= atilde_max", |g, o| {
        for t in 2..=g.atilde_max {
            let ti = t as i64;
            let kp = |i| class_count(&GroupSpec::p_factor(t, i));
            o.eq(&[("atilde", ti), ("i", 0)], kp(0), ri(2));
            o.eq(&[("atilde", ti), ("i", 1)], kp(1), ri((1 << t) + 3));
            o.eq(&[("atilde", ti), ("i", 2)], kp(2), nat_to_rat(&k((1 << t) + 3, 2)));
            o.eq(&[("atilde", ti), ("i", 2)], kp(2), ri((1 << (2 * t - 1)) + 9 * (1 << (t - 1)) + 9));
        }
    }),
    lemma!("sylowb_closed_prime", "k(P_1') = 1, k(P_2') = 2^atilde", "2 <= atilde <= atilde_max, brute force", |g, o| {
        for t in 2..=g.atilde_max {
            for (i, v) in [(0u32, 1i64), (1, 1 << t)] {
                if let Some(kd) = derived_of(&GroupSpec::p_factor(t, i), g.brute_force_cap) {
                    o.eq(&[("atilde", t as i64), ("i", i as i64)], kd, ri(v));
                }
            }
        }
    }),
    lemma!("sylowb_kd", "k(D) >= 2^((atilde-1)(w-a_0)/2 + sum_{i>=0} a_i)",
        "l = 2, eq = 3 mod 4, 3 <= atilde <= atilde_max, 1 <= w <= w_max", |g, o| {
        for t in 3..=g.atilde_max {
            for w in 1..=g.w_max {
                let p = three_mod4(t, w);
                let kd = class_count(&crate::groups::defect_group_spec(&p));
                let x = ri(t as i64 - 1) * ri(w as i64 - dg(&p.digits, 0)) / ri(2) + ri(dsum(&p.digits, 0));
                o.ge(&[("atilde", t as i64), ("w", w as i64)], kd, p2(x));
            }
        }
    }),
    lemma!("sylowb_kd_prime", "k(D') >= 2^((atilde-1)(w-a_0)/2 - sum_{i>=1} (i-2)a_i)",
        "l = 2, eq = 3 mod 4, 3 <= atilde <= atilde_max, 1 <= w <= w_max, every factor within cap", |g, o| {
        for t in 3..=g.atilde_max {
            for w in 1..=g.w_max {
                let p = three_mod4(t, w);
                let Some(kd) = derived_exact(&p, g.brute_force_cap) else { continue };
                let x = ri(t as i64 - 1) * ri(w as i64 - dg(&p.digits, 0)) / ri(2) - dweighted(&p.digits, 1, |i| ri(i - 2));
                o.ge(&[("atilde", t as i64), ("w", w as i64)], kd, p2(x));
            }
        }
    }),
    lemma!("sylowb_kp", "k(P_{2^i}) >= 2^((atilde-1)2^(i-1) + 1)", "2 <= atilde <= atilde_max, 2 <= i <= i_max", |g, o| {
        for t in 2..=g.atilde_max {
            for i in 2..=g.i_max {
                o.ge(&[("atilde", t as i64), ("i", i as i64)], class_count(&GroupSpec::p_factor(t, i)),
                    p2(ri((t as i64 - 1) * (1 << (i - 1)) + 1)));
            }
        }
    }),
    lemma!("sylowb_kp_prime", "k(P_{2^i}') >= 2^((atilde-1)2^(i-1) - i + 2)",
        "2 <= atilde <= atilde_max, 2 <= i <= i_max, |P_{2^i}| <= cap", |g, o| {
        for t in 2..=g.atilde_max {
            for i in 2..=g.i_max {
                let Some(kd) = derived_of(&GroupSpec::p_factor(t, i), g.brute_force_cap) else { continue };
                o.ge(&[("atilde", t as i64), ("i", i as i64)], kd,
                    p2(ri((t as i64 - 1) * (1 << (i - 1)) - i as i64 + 2)));
            }
        }
    }),
    lemma!("sylowb_kp_prime_mid", "k(P_{2^i}') >= k(P_{2^(i-1)})^2 / 2^i",
        "2 <= atilde <= atilde_max, 2 <= i <= i_max, |P_{2^i}| <= cap", |g, o| {
        for t in 2..=g.atilde_max {
            for i in 2..=g.i_max {
                let Some(kd) = derived_of(&GroupSpec::p_factor(t, i), g.brute_force_cap) else { continue };
                let prev = class_count(&GroupSpec::p_factor(t, i - 1));
                o.ge(&[("atilde", t as i64), ("i", i as i64)], kd,
                    BoundExpr::constant(nat_to_rat(&Pow::pow(prev, 2u32)) / ri(1 << i)));
            }
        }
    }),
    lemma!("sylowb_mid", "k(P_{2^i}) >= k(P_4)^(2^(i-2)) / 2^(2^(i-2) - 1)",
        "2 <= atilde <= atilde_max, 2 <= i <= i_max", |g, o| {
        for t in 2..=g.atilde_max {
            let kp4 = class_count(&GroupSpec::p_factor(t, 2));
            for i in 2..=g.i_max {
                let e = 1u32 << (i - 2);
                let rhs = nat_to_rat(&Pow::pow(&kp4, e)) / Pow::pow(ri(2), e - 1);
                o.ge(&[("atilde", t as i64), ("i", i as i64)], class_count(&GroupSpec::p_factor(t, i)),
                    BoundExpr::constant(rhs));
            }
        }
    }),
    lemma!("tilde2_kb", "k(B) <= 2^(w + 2.95)", "l = 2, eq = 3 mod 4, atilde = 2, 1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            o.le(&[("w", w as i64)], k_B(&three_mod4(2, w)), p2(ri(w as i64) + dec("2.95")));
        }
    }),
    lemma!("toffi", "k(B) <= 2^(w + 2a_1 + 0.45a_2 + 3 sum_{i>=2} a_i)",
        "l = 2, eq = 3 mod 4, atilde = 2, 4 <= w <= w_max", |g, o| {
        for w in 4..=g.w_max {
            let ds = digits(Ell::Two, w);
            let x = ri(w as i64) + ri(2 * dg(&ds, 1)) + dec("0.45") * ri(dg(&ds, 2)) + ri(3 * dsum(&ds, 2));
            o.le(&[("w", w as i64)], k_B(&three_mod4(2, w)), p2(x));
        }
    }),
    lemma!("toffi2", "k(D) >= 2^(w + 0.8a_1 + sum_{i>=2} a_i)", "l = 2, eq = 3 mod 4, atilde = 2, 1 <= w <= w_max", |g, o| {
        for w in 1..=g.w_max {
            let p = three_mod4(2, w);
            let kd = class_count(&crate::groups::defect_group_spec(&p));
            let x = ri(w as i64) + dec("0.8") * ri(dg(&p.digits, 1)) + ri(dsum(&p.digits, 2));
            o.ge(&[("w", w as i64)], kd, p2(x));
        }
    }),
    lemma!("toffi3", "k(D') >= 2^(w - a_0 + 0.45a_2 - sum_{i>=3} (i-2)a_i)",
        "l = 2, eq = 3 mod 4, atilde = 2, 1 <= w <= w_max, every factor within cap", |g, o| {
        for w in 1..=g.w_max {
            let p = three_mod4(2, w);
            let Some(kd) = derived_exact(&p, g.brute_force_cap) else { continue };
            let ds = &p.digits;
            let x = ri(w as i64 - dg(ds, 0)) + dec("0.45") * ri(dg(ds, 2)) - dweighted(ds, 3, |i| ri(i - 2));
            o.ge(&[("w", w as i64)], kd, p2(x));
        }
    }),
    lemma!("toffi3_factor", "k(P_4') >= 2^4.45 and k(P_{2^i}') >= 2^(2^i - i + 2) for i >= 3",
        "atilde = 2, 2 <= i <= i_max, |P_{2^i}| <= cap", |g, o| {
        for i in 2..=g.i_max {
            let Some(kd) = derived_of(&GroupSpec::p_factor(2, i), g.brute_force_cap) else { continue };
            let x = if i == 2 { dec("4.45") } else { ri((1 << i) - i as i64 + 2) };
            o.ge(&[("i", i as i64)], kd, p2(x));
        }
    }),
    lemma!("weven", "k^(2j+1)(B) <= 2 * k^(2j)(B)", "l = 2, eq = 3 mod 4, 2 <= atilde <= atilde_max, 0 <= 2j+1 <= w_max", |g, o| {
        for t in 2..=g.atilde_max {
            for j in 0..=(g.w_max.saturating_sub(1)) / 2 {
                let rhs = k_b_three_mod4(t, 2 * j) * 2u32;
                o.le(&[("atilde", t as i64), ("j", j as i64)], k_b_three_mod4(t, 2 * j + 1), cst(&rhs));
            }
        }
    }),
    lemma!("weven_k2", "k(2, 2j+1) <= 2 * k(2, 2j)", "0 <= 2j+1 <= w_max", |g, o| {
        for j in 0..=(g.w_max.saturating_sub(1)) / 2 {
            o.le(&[("j", j as i64)], k(2, 2 * j + 1), cst(&(k(2, 2 * j) * 2u32)));
        }
    }),
];

/// All registered lemmas, in registry order.
pub fn lemmas() -> &'static [Lemma] {
    REGISTRY
}

pub fn find_lemma(id: &str) -> Result<&'static Lemma, LedgerError> {
    REGISTRY
        .iter()
        .find(|l| l.id == id)
        .ok_or_else(|| LedgerError::UnknownLemma(id.to_string()))
}

/// Evaluates one lemma over the grid.
pub fn check_lemma(id: &str, grid: &LedgerGrid) -> Result<Vec<InequalityReport>, LedgerError> {
    let lemma = find_lemma(id)?;
    let mut out = Out { id: lemma.id, reports: Vec::new() };
    (lemma.eval)(grid, &mut out);
    Ok(out.reports)
}

/// Registered ids in byte order.
pub fn lemma_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = REGISTRY.iter().map(|l| l.id).collect();
    ids.sort_unstable();
    ids
}

/// Evaluates every lemma in parallel; reports are ordered by lemma id, then
/// by instance in enumeration order.
pub fn check_all(grid: &LedgerGrid) -> Vec<InequalityReport> {
    lemma_ids()
        .par_iter()
        .map(|id| check_lemma(id, grid).expect("registered id"))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Aggregate counts for a list of reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LedgerSummary {
    pub total: usize,
    pub holds: usize,
    pub fails: usize,
    pub undecided: usize,
    pub unexpected: usize,
}

pub fn summarize(reports: &[InequalityReport]) -> LedgerSummary {
    let mut s = LedgerSummary { total: reports.len(), ..Default::default() };
    for r in reports {
        match r.verdict {
            Verdict::Holds => s.holds += 1,
            Verdict::Fails => s.fails += 1,
            Verdict::Undecided => s.undecided += 1,
        }
        if !r.as_expected() {
            s.unexpected += 1;
        }
    }
    s
}
