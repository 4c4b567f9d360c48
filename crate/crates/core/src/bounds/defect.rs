#![allow(non_snake_case)]

//! Closed-form lower bounds for k(D) and k(D′), per factor and for the
//! whole defect group, in GL and SL/SU form.

use std::cmp::Ordering;

use num_traits::{Pow, Zero};
use serde::Serialize;

use super::expr::{cmp_exprs, dec, nat_to_rat, rat, rat_int, BoundExpr, Rat};
use crate::block::{sl_params, BlockParams, Case2};
use crate::groups::{abelianization_order, class_count, GroupSpec};
use crate::partition::{ell_adic_digits, Ell};

/// A bound together with the registered lemma it instantiates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedBound {
    pub tag: &'static str,
    pub expr: BoundExpr,
}

impl TaggedBound {
    fn new(tag: &'static str, expr: BoundExpr) -> Self {
        TaggedBound { tag, expr }
    }
}

/// Picks the largest of several bounds with a common base. Ties keep the first.
pub fn strongest(bounds: Vec<TaggedBound>) -> TaggedBound {
    let mut it = bounds.into_iter();
    let mut best = it.next().expect("at least one bound");
    for b in it {
        let ord = cmp_exprs(&b.expr, &best.expr).unwrap_or_else(|| {
            b.expr
                .approx_log2()
                .partial_cmp(&best.expr.approx_log2())
                .unwrap_or(Ordering::Equal)
        });
        if ord == Ordering::Greater {
            best = b;
        }
    }
    best
}

fn ri(n: i64) -> Rat {
    rat_int(n)
}

fn pow_i(base: i64, e: u32) -> i64 {
    base.pow(e)
}

/// k(D_{i,3}′) ≥ 3^{3^{(i−1)/2} + (3^i+1)/2 − i}, or without the −i for k(D_{i,3}).
pub fn nrcharacters_factor(i: u32, derived: bool) -> BoundExpr {
    assert!(i >= 1);
    let mut x = rat(pow_i(3, i) + 1, 2);
    if derived {
        x -= ri(i as i64);
    }
    if (i - 1).is_multiple_of(2) {
        BoundExpr::pow(3, x + ri(pow_i(3, (i - 1) / 2)))
    } else {
        BoundExpr::pow(3, x).with_sqrt(ri(1), i as i64 - 1)
    }
}

/// ℓ^{a(ℓ^i−1) − (ℓ^i−ℓ)/(ℓ−1) − i + 1}.
fn generic_derived_factor(ell: u32, a: u32, i: u32) -> BoundExpr {
    let l = ell as i64;
    let li = pow_i(l, i);
    let x = ri(a as i64 * (li - 1)) - rat(li - l, l - 1) - ri(i as i64) + ri(1);
    BoundExpr::pow(ell, x)
}

/// k(G ≀ C_p)′ lies in G^p with index |G^ab|, so k((G ≀ C_p)′) ≥ k(G)^p/|G^ab|.
pub fn index_bound(spec: &GroupSpec) -> Option<BoundExpr> {
    match spec {
        GroupSpec::Wreath(g, p) => {
            let num = Pow::pow(class_count(g), *p);
            let den = abelianization_order(g);
            Some(BoundExpr::constant(nat_to_rat(&num) / nat_to_rat(&den)))
        }
        _ => None,
    }
}

fn factor_spec(params: &BlockParams, level: u32) -> GroupSpec {
    match params.case2 {
        Case2::ThreeMod4 => GroupSpec::p_factor(params.atilde_or_one(), level),
        _ => GroupSpec::d_factor(params.ell, params.a, level),
    }
}

/// Every registered lower bound for k(D_f′) at one level of the defect group.
pub fn factor_derived_bounds(params: &BlockParams, level: u32) -> Vec<TaggedBound> {
    let i = level;
    if i == 0 {
        return vec![TaggedBound::new("abelian", BoundExpr::constant(ri(1)))];
    }
    let mut out = Vec::new();
    match params.case2 {
        Case2::ThreeMod4 => {
            let t = params.atilde_or_one() as i64;
            if i == 1 {
                out.push(TaggedBound::new("sylowb_closed", BoundExpr::pow(2, ri(t))));
                return out;
            }
            let n = pow_i(2, i - 1);
            out.push(TaggedBound::new(
                "sylowb_kp_prime",
                BoundExpr::pow(2, ri((t - 1) * n - i as i64 + 2)),
            ));
            match (t, i) {
                (3, 2) => out.push(TaggedBound::new("kD'b3", BoundExpr::pow(2, ri(6)))),
                (3, _) => out.push(TaggedBound::new(
                    "kD'b3",
                    BoundExpr::pow(2, dec("1.3") * ri(pow_i(2, i)) - ri(i as i64 - 2)),
                )),
                (2, 2) => out.push(TaggedBound::new("toffi3", BoundExpr::pow(2, dec("4.45")))),
                (2, _) => out.push(TaggedBound::new(
                    "toffi3",
                    BoundExpr::pow(2, ri(pow_i(2, i) - i as i64 + 2)),
                )),
                _ => {}
            }
        }
        _ => {
            let ell = params.ell.value();
            let a = params.a;
            out.push(TaggedBound::new("kD'3", generic_derived_factor(ell, a, i)));
            if params.ell == Ell::Three && a == 1 {
                out.push(TaggedBound::new("nrcharacters_kd_prime", nrcharacters_factor(i, true)));
            }
            if params.ell == Ell::Two && a == 2 {
                let e = if i == 1 {
                    ri(2)
                } else {
                    dec("1.4") * ri(pow_i(2, i)) - ri(i as i64) + ri(1)
                };
                out.push(TaggedBound::new("kD4_prime", BoundExpr::pow(2, e)));
            }
        }
    }
    if let Some(e) = index_bound(&factor_spec(params, i)) {
        out.push(TaggedBound::new("index", e));
    }
    out
}

fn digit_sum_from(digits: &[u32], from: usize) -> i64 {
    digits.iter().skip(from).map(|&x| x as i64).sum()
}

fn digit(digits: &[u32], i: usize) -> i64 {
    digits.get(i).copied().unwrap_or(0) as i64
}

/// Σ_{i≥from} a_i·f(i).
fn weighted(digits: &[u32], from: usize, f: impl Fn(i64) -> Rat) -> Rat {
    digits
        .iter()
        .enumerate()
        .skip(from)
        .fold(Rat::zero(), |acc, (i, &x)| acc + ri(x as i64) * f(i as i64))
}

/// The strongest closed-form lower bound for k(D).
pub fn k_D_lower(params: &BlockParams) -> TaggedBound {
    let dg = &params.digits;
    let w = ri(params.w as i64);
    let a = params.a as i64;
    let s1 = ri(digit_sum_from(dg, 1));
    let mut c = Vec::new();
    match params.case2 {
        Case2::ThreeMod4 => {
            let t = params.atilde_or_one() as i64;
            let a0 = ri(digit(dg, 0));
            c.push(TaggedBound::new(
                "sylowb_kd",
                BoundExpr::pow(2, ri(t - 1) * (&w - &a0) / ri(2) + ri(digit_sum_from(dg, 0))),
            ));
            if t == 3 {
                c.push(TaggedBound::new(
                    "kDb3",
                    BoundExpr::pow(
                        2,
                        dec("1.3") * &w - dec("0.3") * &a0 + dec("0.85") * ri(digit(dg, 1))
                            + ri(digit_sum_from(dg, 2)),
                    ),
                ));
            }
            if t == 2 {
                c.push(TaggedBound::new(
                    "toffi2",
                    BoundExpr::pow(2, &w + dec("0.8") * ri(digit(dg, 1)) + ri(digit_sum_from(dg, 2))),
                ));
            }
        }
        _ => {
            let ell = params.ell.value();
            let l = ell as i64;
            c.push(TaggedBound::new(
                "kD3",
                BoundExpr::pow(ell, (ri(a) - rat(1, l - 1)) * &w + s1.clone() / ri(l - 1)),
            ));
            if params.ell == Ell::Three && a == 1 {
                c.push(TaggedBound::new(
                    "kD31",
                    BoundExpr::pow(3, rat(2, 3) * &w + s1.clone() / ri(2)),
                ));
            }
            if params.ell == Ell::Two && a == 2 && digit(dg, 0) == 0 {
                c.push(TaggedBound::new("kD4", BoundExpr::pow(2, dec("1.4") * &w + s1)));
            }
        }
    }
    strongest(c)
}

/// The strongest closed-form lower bound for k(D′).
///
/// Level 0 contributes an abelian factor, so the exponents use w − a_0.
pub fn k_D_prime_lower(params: &BlockParams) -> TaggedBound {
    let dg = &params.digits;
    let a0 = digit(dg, 0);
    let wr = ri(params.w as i64 - a0);
    let a = params.a as i64;
    let mut c = Vec::new();
    match params.case2 {
        Case2::ThreeMod4 => {
            let t = params.atilde_or_one() as i64;
            c.push(TaggedBound::new(
                "sylowb_kd_prime",
                BoundExpr::pow(2, ri(t - 1) * &wr / ri(2) - weighted(dg, 1, |i| ri(i - 2))),
            ));
            if t == 3 {
                c.push(TaggedBound::new(
                    "kD'b3",
                    BoundExpr::pow(
                        2,
                        dec("1.3") * &wr + dec("0.4") * ri(digit(dg, 1)) + dec("0.8") * ri(digit(dg, 2))
                            - weighted(dg, 3, |i| ri(i - 2)),
                    ),
                ));
            }
            if t == 2 {
                c.push(TaggedBound::new(
                    "toffi3",
                    BoundExpr::pow(
                        2,
                        &wr + dec("0.45") * ri(digit(dg, 2)) - weighted(dg, 3, |i| ri(i - 2)),
                    ),
                ));
            }
        }
        _ => {
            let ell = params.ell.value();
            let l = ell as i64;
            let shift = rat(2 * l - 1, l - 1);
            c.push(TaggedBound::new(
                "kD'3",
                BoundExpr::pow(
                    ell,
                    (ri(a) - rat(1, l - 1)) * &wr - weighted(dg, 1, |i| ri(a + i) - &shift),
                ),
            ));
            if params.ell == Ell::Three && a == 1 && dg.len() <= 3 {
                c.push(TaggedBound::new(
                    "kD'31",
                    BoundExpr::pow(3, rat(2, 3) * &wr + weighted(dg, 1, |i| rat(1, 2) - ri(i))),
                ));
            }
            if params.ell == Ell::Two && a == 2 {
                c.push(TaggedBound::new(
                    "kD4_prime",
                    BoundExpr::pow(
                        2,
                        dec("1.4") * &wr + weighted(dg, 2, |i| ri(1 - i)) - dec("0.8") * ri(digit(dg, 1)),
                    ),
                ));
            }
        }
    }
    strongest(c)
}

/// Lower bound for k(D̄) in SL/SU, from k(D̄) ≥ k(D̃)/3^{a+m}.
pub fn sl_k_Dbar_lower(a: u32, w: u32) -> TaggedBound {
    let sp = sl_params(a, w);
    let dg = ell_adic_digits(Ell::Three, w as u64);
    let s1 = ri(digit_sum_from(&dg, 1));
    let (a, wi, m) = (a as i64, w as i64, sp.m as i64);
    if w == 3 {
        return TaggedBound::new("kDbar_w3", BoundExpr::pow(3, ri(2 * a - 2)));
    }
    if a == 1 {
        return TaggedBound::new(
            "kDa1wleq10",
            BoundExpr::pow(3, rat(2 * wi, 3) + s1 / ri(2) - ri(2)),
        );
    }
    TaggedBound::new(
        "kDbar",
        BoundExpr::pow(3, ri(a * (wi - 1)) - rat(wi, 2) - ri(m) + s1 / ri(2)),
    )
}

/// Lower bound for k(D̄′) in SL/SU, from k(D̄′) ≥ k(D̃′)/3^{m+δ}.
pub fn sl_k_Dbar_prime_lower(a: u32, w: u32) -> TaggedBound {
    let sp = sl_params(a, w);
    let dg = ell_adic_digits(Ell::Three, w as u64);
    let (ai, wi, m, delta) = (a as i64, w as i64, sp.m as i64, sp.delta as i64);
    if w == 3 {
        return TaggedBound::new("kDbar_w3", BoundExpr::pow(3, ri(2 * ai - 2)));
    }
    if a == 1 && w == 9 {
        let k = ri(17);
        return TaggedBound::new("sl_a1_w9", BoundExpr::constant(&k * &k * &k / ri(81)));
    }
    if a == 1 && dg.len() <= 3 {
        return TaggedBound::new(
            "kD'_sl",
            BoundExpr::pow(
                3,
                rat(2 * wi, 3) + weighted(&dg, 1, |i| rat(1, 2) - ri(i)) - ri(1) - ri(delta),
            ),
        );
    }
    TaggedBound::new(
        "kDbar_prime",
        BoundExpr::pow(
            3,
            (ri(ai) - rat(1, 2)) * ri(wi) - weighted(&dg, 1, |i| ri(ai + i) - rat(5, 2)) - ri(m) - ri(delta),
        ),
    )
}
