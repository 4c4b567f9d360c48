//! Bound expressions c·β^{x + r·√(β^s)} and certified comparison against
//! exact rationals.
//!
//! Without the square-root term the comparison is exact: with c = u/v,
//! β = B/D and x = p/q, the question n ≤ c·β^x becomes an integer
//! inequality after raising both sides to the q-th power. With the
//! square-root term, or for sums of several expressions, the right side is
//! enclosed in a dyadic interval that is tightened until the answer is clear.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::partition::Nat;

pub type Rat = BigRational;

/// Working precisions, in bits, for interval enclosures.
pub const PRECISIONS: [u32; 3] = [32, 64, 128];

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn nat_to_rat(n: &Nat) -> Rat {
    Rat::from_integer(BigInt::from(n.clone()))
}

/// Parses "1.35", "-0.3", "5/6" or "7" into an exact rational.
///
/// # Panics
/// On malformed input; only used for literal constants.
pub fn dec(s: &str) -> Rat {
    if let Some((n, d)) = s.split_once('/') {
        return Rat::new(n.trim().parse().expect("numerator"), d.trim().parse().expect("denominator"));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let v = Rat::new(digits, den);
    if neg {
        -v
    } else {
        v
    }
}

/// Additional exponent term r·√(β^s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtTerm {
    pub r: Rat,
    pub s: i64,
}

/// c·β^{x + r·√(β^s)} with c > 0 and β > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundExpr {
    pub coeff: Rat,
    pub base: Rat,
    pub exponent: Rat,
    pub sqrt_term: Option<SqrtTerm>,
}

impl BoundExpr {
    /// β^x.
    pub fn pow(base: u32, exponent: Rat) -> Self {
        BoundExpr {
            coeff: Rat::one(),
            base: rat_int(base as i64),
            exponent,
            sqrt_term: None,
        }
    }

    pub fn pow_rat_base(base: Rat, exponent: Rat) -> Self {
        assert!(base.is_positive(), "base must be positive");
        BoundExpr { coeff: Rat::one(), base, exponent, sqrt_term: None }
    }

    /// The constant c.
    pub fn constant(c: Rat) -> Self {
        assert!(c.is_positive(), "coefficient must be positive");
        BoundExpr { coeff: c, base: rat_int(2), exponent: Rat::zero(), sqrt_term: None }
    }

    pub fn times(mut self, c: Rat) -> Self {
        assert!(c.is_positive(), "coefficient must be positive");
        self.coeff *= c;
        self
    }

    pub fn with_sqrt(mut self, r: Rat, s: i64) -> Self {
        self.sqrt_term = Some(SqrtTerm { r, s });
        self
    }

    pub fn is_exact(&self) -> bool {
        self.sqrt_term.is_none()
    }

    /// Rough floating-point value of log₂, for display and ordering hints only.
    pub fn approx_log2(&self) -> f64 {
        let lb = rat_log2(&self.base);
        let mut x = self.exponent.to_f64().unwrap_or(f64::NAN);
        if let Some(t) = &self.sqrt_term {
            x += t.r.to_f64().unwrap_or(f64::NAN) * (lb * t.s as f64 / 2.0).exp2();
        }
        rat_log2(&self.coeff) + lb * x
    }
}

fn big_log2(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 60 {
        return n.to_f64().unwrap_or(0.0).log2();
    }
    let shift = bits - 60;
    (n >> shift).to_f64().unwrap_or(0.0).log2() + shift as f64
}

fn rat_log2(r: &Rat) -> f64 {
    big_log2(r.numer()) - big_log2(r.denom())
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.coeff.is_one() {
            write!(f, "{}*", fmt_rat(&self.coeff))?;
        }
        let base = fmt_rat(&self.base);
        let base = if self.base.is_integer() { base } else { format!("({base})") };
        match &self.sqrt_term {
            None => write!(f, "{base}^({})", fmt_rat(&self.exponent)),
            Some(t) => write!(
                f,
                "{base}^({} + {}*sqrt({base}^{}))",
                fmt_rat(&self.exponent),
                fmt_rat(&t.r),
                t.s
            ),
        }
    }
}

impl Serialize for BoundExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A sum of bound expressions; the right side of every registered inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound(pub Vec<BoundExpr>);

impl Bound {
    pub fn is_exact(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_exact()
    }

    pub fn approx_log2(&self) -> f64 {
        let logs: Vec<f64> = self.0.iter().map(BoundExpr::approx_log2).collect();
        let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        m + logs.iter().map(|l| (l - m).exp2()).sum::<f64>().log2()
    }
}

impl From<BoundExpr> for Bound {
    fn from(e: BoundExpr) -> Self {
        Bound(vec![e])
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    /// lhs ≤ rhs
    Le,
    /// lhs ≥ rhs
    Ge,
    /// lhs = rhs
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

fn split_sign(r: &Rat) -> (BigUint, BigUint) {
    (
        r.numer().magnitude().clone(),
        r.denom().magnitude().clone(),
    )
}

fn upow(b: &BigUint, e: &BigUint) -> BigUint {
    let e = e.to_u32().expect("exponent numerator fits in u32");
    num_traits::Pow::pow(b, e)
}

/// The two sides of n vs c·β^{p/q} raised to the q-th power and cleared of
/// denominators: returns (L, R) with n ⋚ e ⟺ L ⋚ R.
fn cleared_sides(n: &Rat, e: &BoundExpr) -> (BigUint, BigUint) {
    assert!(e.is_exact());
    assert!(!n.is_negative());
    let (nn, nd) = split_sign(n);
    let (u, v) = split_sign(&e.coeff);
    let (bn, bd) = split_sign(&e.base);
    let q = e.exponent.denom().magnitude().clone();
    let p = e.exponent.numer().magnitude().clone();
    let (bn, bd) = if e.exponent.is_negative() { (bd, bn) } else { (bn, bd) };
    // nn/nd ⋚ (u/v)(bn/bd)^{p/q} ⟺ (nn·v)^q·bd^p ⋚ (u·nd)^q·bn^p
    let l = upow(&(nn * v), &q) * upow(&bd, &p);
    let r = upow(&(u * nd), &q) * upow(&bn, &p);
    (l, r)
}

/// Exact ordering of n against an expression without a square-root term.
pub fn cmp_exact(n: &Rat, e: &BoundExpr) -> Ordering {
    let (l, r) = cleared_sides(n, e);
    l.cmp(&r)
}

/// ⌊e⌋ for an expression without a square-root term.
pub fn floor_exact(e: &BoundExpr) -> Nat {
    assert!(e.is_exact());
    let (u, v) = split_sign(&e.coeff);
    let (bn, bd) = split_sign(&e.base);
    let q = e.exponent.denom().magnitude().clone();
    let p = e.exponent.numer().magnitude().clone();
    let (bn, bd) = if e.exponent.is_negative() { (bd, bn) } else { (bn, bd) };
    let num = upow(&u, &q) * upow(&bn, &p);
    let den = upow(&v, &q) * upow(&bd, &p);
    let qq = q.to_u32().expect("exponent denominator fits in u32");
    (num / den).nth_root(qq)
}

/// ⌈e⌉ for an expression without a square-root term.
pub fn ceil_exact(e: &BoundExpr) -> Nat {
    let f = floor_exact(e);
    if cmp_exact(&nat_to_rat(&f), e) == Ordering::Equal {
        f
    } else {
        f + 1u32
    }
}

/// Dyadic enclosure [lo, hi]·2^{−prec} of a positive real.
#[derive(Clone, Debug)]
struct Enclosure {
    lo: BigUint,
    hi: BigUint,
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    Integer::div_ceil(a, b)
}

fn isqrt_ceil(x: &BigUint) -> BigUint {
    let r = x.sqrt();
    if &r * &r == *x {
        r
    } else {
        r + 1u32
    }
}

/// Enclosure of β^{1/2^j} for j = 1..=k, scaled by 2^prec. Requires β ≥ 1.
fn root_ladder(bn: &BigUint, bd: &BigUint, prec: u32, k: u32) -> Vec<Enclosure> {
    let scale = BigUint::one() << prec;
    let mut lo = (bn * &scale) / bd;
    let mut hi = ceil_div(&(bn * &scale), bd);
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        lo = (&lo * &scale).sqrt();
        hi = isqrt_ceil(&(&hi * &scale));
        out.push(Enclosure { lo: lo.clone(), hi: hi.clone() });
    }
    out
}

/// Enclosure of β^f for rational 0 ≤ f < 1, scaled by 2^prec.
fn frac_power(bn: &BigUint, bd: &BigUint, f_lo: &Rat, f_hi: &Rat, prec: u32) -> Enclosure {
    let scale = BigUint::one() << prec;
    let k = prec;
    let ladder = root_ladder(bn, bd, prec, k);
    let two_k = BigInt::one() << k;
    // lower exponent: ⌊f_lo·2^k⌋/2^k; upper: ⌈f_hi·2^k⌉/2^k
    let m_lo = (f_lo * Rat::from_integer(two_k.clone())).floor().to_integer();
    let m_hi = (f_hi * Rat::from_integer(two_k.clone())).ceil().to_integer();
    let bits = |m: &BigInt| -> Vec<bool> {
        let m = m.magnitude();
        (1..=k).map(|j| m.bit((k - j) as u64)).collect()
    };
    let mut lo = scale.clone();
    for (j, b) in bits(&m_lo).into_iter().enumerate() {
        if b {
            lo = (&lo * &ladder[j].lo) >> prec;
        }
    }
    let mut hi = scale.clone();
    if m_hi == two_k {
        hi = ceil_div(&(bn * &scale), bd);
    } else {
        for (j, b) in bits(&m_hi).into_iter().enumerate() {
            if b {
                hi = ceil_div(&(&hi * &ladder[j].hi), &scale);
            }
        }
    }
    Enclosure { lo, hi }
}

/// Enclosure of √(β^s) as rationals.
fn sqrt_enclosure(base: &Rat, s: i64, prec: u32) -> (Rat, Rat) {
    let v = if s >= 0 {
        num_traits::Pow::pow(base, s as u32)
    } else {
        num_traits::Pow::pow(base.recip(), (-s) as u32)
    };
    let (n, d) = split_sign(&v);
    // √(n/d) = √(n·d)/d
    let scale = BigUint::one() << (2 * prec);
    let x = n * &d * &scale;
    let lo = x.sqrt();
    let hi = isqrt_ceil(&x);
    let den = BigInt::from(d << prec);
    (
        Rat::new(BigInt::from(lo), den.clone()),
        Rat::new(BigInt::from(hi), den),
    )
}

/// Enclosure of e, scaled by 2^prec. Requires β ≥ 1.
fn enclose(e: &BoundExpr, prec: u32) -> Enclosure {
    assert!(e.base >= Rat::one(), "interval path needs base >= 1");
    let (x_lo, x_hi) = match &e.sqrt_term {
        None => (e.exponent.clone(), e.exponent.clone()),
        Some(t) => {
            let (s_lo, s_hi) = sqrt_enclosure(&e.base, t.s, prec);
            let (a, b) = (&t.r * &s_lo, &t.r * &s_hi);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            (&e.exponent + lo, &e.exponent + hi)
        }
    };
    let (bn, bd) = split_sign(&e.base);
    let scale = BigUint::one() << prec;

    let side = |x: &Rat, upper: bool| -> BigUint {
        let fl = x.floor();
        let ipart = fl.to_integer();
        let frac = x - &fl;
        let enc = frac_power(&bn, &bd, &frac, &frac, prec);
        let frac_scaled = if upper { enc.hi } else { enc.lo };
        // c·β^{ipart} exactly
        let ip = ipart.to_i64().expect("integer exponent fits in i64");
        let bpow = if ip >= 0 {
            num_traits::Pow::pow(&e.base, ip as u32)
        } else {
            num_traits::Pow::pow(e.base.recip(), (-ip) as u32)
        };
        let r = &e.coeff * bpow;
        let (rn, rd) = split_sign(&r);
        let num = rn * frac_scaled;
        if upper {
            ceil_div(&num, &rd)
        } else {
            num / rd
        }
    };
    let lo = side(&x_lo, false);
    let hi = side(&x_hi, true);
    let _ = scale;
    Enclosure { lo, hi }
}

fn enclose_sum(b: &Bound, prec: u32) -> Enclosure {
    let mut lo = BigUint::zero();
    let mut hi = BigUint::zero();
    for e in &b.0 {
        let en = enclose(e, prec);
        lo += en.lo;
        hi += en.hi;
    }
    Enclosure { lo, hi }
}

/// Certified comparison of `lhs` against `rhs` under `rel`.
pub fn compare(lhs: &Rat, rel: Relation, rhs: &Bound) -> Verdict {
    if rhs.is_exact() {
        let ord = cmp_exact(lhs, &rhs.0[0]);
        let ok = match rel {
            Relation::Le => ord != Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
            Relation::Eq => ord == Ordering::Equal,
        };
        return if ok { Verdict::Holds } else { Verdict::Fails };
    }
    for &prec in &PRECISIONS {
        let en = enclose_sum(rhs, prec);
        // lhs·2^prec compared against [lo, hi], rounding lhs both ways
        let scaled = lhs * Rat::from_integer(BigInt::one() << prec);
        let l_lo = scaled.floor().to_integer();
        let l_hi = scaled.ceil().to_integer();
        let (lo, hi) = (BigInt::from(en.lo), BigInt::from(en.hi));
        match rel {
            Relation::Le => {
                if l_hi <= lo {
                    return Verdict::Holds;
                }
                if l_lo > hi {
                    return Verdict::Fails;
                }
            }
            Relation::Ge => {
                if l_lo >= hi {
                    return Verdict::Holds;
                }
                if l_hi < lo {
                    return Verdict::Fails;
                }
            }
            Relation::Eq => {
                if l_lo > hi || l_hi < lo {
                    return Verdict::Fails;
                }
            }
        }
    }
    Verdict::Undecided
}

/// n ≤ e.
pub fn compare_le(n: &Nat, e: &BoundExpr) -> Verdict {
    compare(&nat_to_rat(n), Relation::Le, &Bound(vec![e.clone()]))
}

/// A certified integer lower bound: every integer k ≥ e satisfies k ≥ the result.
pub fn ceil_lower(e: &BoundExpr) -> Nat {
    if e.is_exact() {
        return ceil_exact(e);
    }
    let prec = *PRECISIONS.last().expect("nonempty");
    let en = enclose(e, prec);
    ceil_div(&en.lo, &(BigUint::one() << prec))
}

/// A certified integer upper bound: every integer k ≤ e satisfies k ≤ the result.
pub fn floor_upper(b: &Bound) -> Nat {
    if b.is_exact() {
        return floor_exact(&b.0[0]);
    }
    let prec = *PRECISIONS.last().expect("nonempty");
    enclose_sum(b, prec).hi >> prec
}

/// Exact ordering of two expressions with equal bases and no square-root terms.
pub fn cmp_exprs(a: &BoundExpr, b: &BoundExpr) -> Option<Ordering> {
    if !a.is_exact() || !b.is_exact() || a.base != b.base {
        return None;
    }
    // a ⋚ b ⟺ c_a/c_b ⋚ β^{x_b − x_a}
    let e = BoundExpr::pow_rat_base(b.base.clone(), &b.exponent - &a.exponent);
    Some(cmp_exact(&(&a.coeff / &b.coeff), &e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn decimal_literals() {
        assert_eq!(dec("0.35"), rat(7, 20));
        assert_eq!(dec("-0.3"), rat(-3, 10));
        assert_eq!(dec("5/6"), rat(5, 6));
        assert_eq!(dec("2"), rat_int(2));
        assert_eq!(dec("4.45"), rat(89, 20));
    }

    #[test]
    fn exact_examples() {
        assert_eq!(compare_le(&n(5), &BoundExpr::pow(2, dec("2.35"))), Verdict::Holds);
        assert_eq!(compare_le(&n(8), &BoundExpr::pow(2, rat_int(3))), Verdict::Holds);
        assert_eq!(compare_le(&n(9), &BoundExpr::pow(2, rat_int(3))), Verdict::Fails);
        assert_eq!(compare_le(&n(2043), &BoundExpr::pow(3, rat(16, 2))), Verdict::Holds);
        assert_eq!(compare_le(&n(2043), &BoundExpr::pow(3, rat_int(7))), Verdict::Holds);
        // 2^{2.35} ≈ 5.098
        assert_eq!(compare_le(&n(6), &BoundExpr::pow(2, dec("2.35"))), Verdict::Fails);
        // p_3(3) = 2 > 3^{1/2}
        assert_eq!(compare_le(&n(2), &BoundExpr::pow(3, rat(1, 2))), Verdict::Fails);
        // negative exponents and coefficients
        let e = BoundExpr::pow(3, rat(-3, 2)).times(rat(100, 1));
        // 100·3^{-1.5} ≈ 19.245
        assert_eq!(compare_le(&n(19), &e), Verdict::Holds);
        assert_eq!(compare_le(&n(20), &e), Verdict::Fails);
        assert_eq!(compare_le(&n(0), &e), Verdict::Holds);
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor_exact(&BoundExpr::pow(2, dec("2.35"))), n(5));
        assert_eq!(ceil_exact(&BoundExpr::pow(2, dec("2.35"))), n(6));
        assert_eq!(ceil_exact(&BoundExpr::pow(3, rat_int(4))), n(81));
        assert_eq!(floor_exact(&BoundExpr::pow(3, rat_int(-1))), n(0));
        assert_eq!(ceil_exact(&BoundExpr::pow(3, rat_int(-1))), n(1));
        // 17^3/81 = 60.65…
        assert_eq!(ceil_exact(&BoundExpr::constant(rat(4913, 81))), n(61));
        // 1.4^{1+1.2} ≈ 2.096
        let e = BoundExpr::pow_rat_base(dec("1.4"), dec("2.2"));
        assert_eq!(floor_exact(&e), n(2));
    }

    #[test]
    fn sqrt_family() {
        // 3^{√3}·3^{5} = 3^{6.732…} ≈ 1629.3
        let e = BoundExpr::pow(3, rat_int(5)).with_sqrt(rat_int(1), 1);
        assert_eq!(compare_le(&n(1629), &e), Verdict::Holds);
        assert_eq!(compare_le(&n(1630), &e), Verdict::Fails);
        assert_eq!(ceil_lower(&e), n(1630));
        // rational square root: √(3^2) = 3
        let e = BoundExpr::pow(3, rat_int(0)).with_sqrt(rat_int(1), 2);
        assert_eq!(compare(&nat_to_rat(&n(26)), Relation::Le, &e.clone().into()), Verdict::Holds);
        assert_eq!(compare(&nat_to_rat(&n(28)), Relation::Le, &e.clone().into()), Verdict::Fails);
        // a perfect square collapses the enclosure to a point
        assert_eq!(compare(&nat_to_rat(&n(27)), Relation::Le, &e.into()), Verdict::Holds);
    }

    #[test]
    fn sums() {
        // 2^{0.5} + 2^{0.5} = 2^{1.5} ≈ 2.828
        let b = Bound(vec![BoundExpr::pow(2, rat(1, 2)), BoundExpr::pow(2, rat(1, 2))]);
        assert_eq!(compare(&rat(282, 100), Relation::Le, &b), Verdict::Holds);
        assert_eq!(compare(&rat(283, 100), Relation::Le, &b), Verdict::Fails);
        assert_eq!(compare(&rat(283, 100), Relation::Ge, &b), Verdict::Holds);
        assert_eq!(floor_upper(&b), n(2));
    }

    #[test]
    fn interval_agrees_with_exact() {
        for p in -40i64..40 {
            for q in [1i64, 2, 3, 6, 20] {
                let e = BoundExpr::pow(3, rat(p, q)).times(rat(19, 18));
                let two = Bound(vec![e.clone().times(rat(1, 2)), e.clone().times(rat(1, 2))]);
                let fl = floor_exact(&e);
                for k in [fl.clone(), fl.clone() + 1u32] {
                    let exact = compare(&nat_to_rat(&k), Relation::Le, &e.clone().into());
                    let interval = compare(&nat_to_rat(&k), Relation::Le, &two);
                    if interval != Verdict::Undecided {
                        assert_eq!(exact, interval, "p {p} q {q} k {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn expression_ordering() {
        let a = BoundExpr::pow(3, rat(7, 2));
        let b = BoundExpr::pow(3, rat(3, 1)).times(rat(2, 1));
        // 3^{3.5} ≈ 46.77 < 2·27 = 54
        assert_eq!(cmp_exprs(&a, &b), Some(Ordering::Less));
        assert_eq!(cmp_exprs(&a, &BoundExpr::pow(2, rat_int(1))), None);
    }

    #[test]
    fn display() {
        let e = BoundExpr::pow(3, rat(139, 6)).times(rat(19, 18));
        assert_eq!(e.to_string(), "19/18*3^(139/6)");
        let e = BoundExpr::pow(3, rat_int(5)).with_sqrt(rat_int(1), 1);
        assert_eq!(e.to_string(), "3^(5 + 1*sqrt(3^1))");
        let e = BoundExpr::pow_rat_base(dec("1.4"), dec("2.2"));
        assert_eq!(e.to_string(), "(7/5)^(11/5)");
    }
}
