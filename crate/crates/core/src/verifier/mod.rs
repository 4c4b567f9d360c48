#![allow(non_snake_case)]

//! Checks of k(B) ≤ k₀(B)·k(D′) (C1) and k(B) ≤ l(B)·k(D) (C2) per block,
//! with the SL/SU variants using the quotient defect group D̄.

mod grid;
mod report;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use grid::{parse_grid, GridError, GridSection, SweepGrid};
pub use report::{emit_report, Format, FormatError};

use crate::block::{
    k0_B, k_B, k_B_sl_coprime, k_B_sl_upper, k_B_sl_w3_exact, l_B_lower, sl_k0_lower, sl_l_lower,
    sl_params, BlockError, BlockParams, Case2,
};
use crate::bounds::defect::{
    factor_derived_bounds, k_D_prime_lower, sl_k_Dbar_lower, sl_k_Dbar_prime_lower,
};
use crate::bounds::expr::ceil_lower;
use crate::groups::{
    class_count, defect_factors, defect_group_spec, derived_class_count, derived_order, group_order,
    GroupSpec,
};
use crate::partition::{Ell, Nat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Gl,
    Sl,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Gl => "gl",
            Mode::Sl => "sl",
        })
    }
}

/// Where a number in a report came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    Exact,
    PaperLowerBound,
    PaperUpperBound,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Exact => "Exact",
            Source::PaperLowerBound => "PaperLowerBound",
            Source::PaperUpperBound => "PaperUpperBound",
        })
    }
}

fn ser_nat<S: Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// A value with its source and the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sourced {
    #[serde(serialize_with = "ser_nat")]
    pub value: Nat,
    pub source: Source,
    pub via: String,
}

impl Sourced {
    fn exact(value: Nat, via: impl Into<String>) -> Self {
        Sourced { value, source: Source::Exact, via: via.into() }
    }

    fn lower(value: Nat, via: impl Into<String>) -> Self {
        Sourced { value, source: Source::PaperLowerBound, via: via.into() }
    }

    fn upper(value: Nat, via: impl Into<String>) -> Self {
        Sourced { value, source: Source::PaperUpperBound, via: via.into() }
    }

    fn is_exact(&self) -> bool {
        self.source == Source::Exact
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConjVerdict {
    Verified,
    Inconclusive,
    Violated,
}

impl fmt::Display for ConjVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjVerdict::Verified => "Verified",
            ConjVerdict::Inconclusive => "Inconclusive",
            ConjVerdict::Violated => "Violated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub mode: Mode,
    pub params: BlockParams,
    pub kB: Sourced,
    pub k0B: Sourced,
    pub lB_lower: Sourced,
    pub kD: Sourced,
    pub kDprime: Sourced,
    #[serde(serialize_with = "ser_nat")]
    pub c1_rhs: Nat,
    #[serde(serialize_with = "ser_nat")]
    pub c2_rhs: Nat,
    pub c1_verdict: ConjVerdict,
    pub c2_verdict: ConjVerdict,
    pub reason: String,
}

impl ConjectureReport {
    /// The ã of case 3 mod 4, otherwise a.
    pub fn a_or_atilde(&self) -> u32 {
        self.params.atilde.unwrap_or(self.params.a)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifierError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("SL mode needs ell = 3 and d = 1")]
    SlNeedsEll3,
}

/// k(D′) from brute force where each factor fits under the cap, else from
/// the per-factor lower bounds, and never below the whole-group bound.
fn derived_count(params: &BlockParams, cap: u64) -> Sourced {
    let mut total = Nat::one();
    let mut exact = true;
    let mut tags: Vec<&'static str> = Vec::new();
    for f in defect_factors(params) {
        let brute = if group_order(&f.spec) <= Nat::from(cap) {
            derived_class_count(&f.spec, cap).ok()
        } else {
            None
        };
        let kf = match brute {
            Some(k) => k,
            None => {
                exact = false;
                let (tag, v) = factor_derived_bounds(params, f.level)
                    .into_iter()
                    .map(|b| (b.tag, ceil_lower(&b.expr)))
                    .max_by(|x, y| x.1.cmp(&y.1))
                    .expect("at least one bound per level");
                if !tags.contains(&tag) {
                    tags.push(tag);
                }
                v
            }
        };
        total *= Pow::pow(kf, f.multiplicity);
    }
    if exact {
        return Sourced::exact(total, "brute force");
    }
    let whole = k_D_prime_lower(params);
    let whole_v = ceil_lower(&whole.expr);
    if whole_v > total {
        Sourced::lower(whole_v, whole.tag)
    } else {
        Sourced::lower(total, format!("per factor: {}", tags.join(", ")))
    }
}

fn verdict(lhs: &Sourced, rhs: &Nat, factors: [&Sourced; 2]) -> ConjVerdict {
    if lhs.value <= *rhs {
        ConjVerdict::Verified
    } else if lhs.is_exact() && factors.iter().all(|f| f.is_exact()) {
        ConjVerdict::Violated
    } else {
        ConjVerdict::Inconclusive
    }
}

fn assemble(
    mode: Mode,
    params: BlockParams,
    kB: Sourced,
    k0B: Sourced,
    lB: Sourced,
    kD: Sourced,
    kDprime: Sourced,
) -> ConjectureReport {
    let c1_rhs = &k0B.value * &kDprime.value;
    let c2_rhs = &lB.value * &kD.value;
    let c1_verdict = verdict(&kB, &c1_rhs, [&k0B, &kDprime]);
    let c2_verdict = verdict(&kB, &c2_rhs, [&lB, &kD]);
    let mut reasons = Vec::new();
    for (name, v) in [("C1", c1_verdict), ("C2", c2_verdict)] {
        match v {
            ConjVerdict::Verified => {}
            ConjVerdict::Inconclusive => reasons.push(format!("{name}: a bound on the right is too weak")),
            ConjVerdict::Violated => reasons.push(format!("{name}: exact values violate the inequality")),
        }
    }
    ConjectureReport {
        mode,
        params,
        kB,
        k0B,
        lB_lower: lB,
        kD,
        kDprime,
        c1_rhs,
        c2_rhs,
        c1_verdict,
        c2_verdict,
        reason: reasons.join("; "),
    }
}

fn check_gl(params: &BlockParams, cap: u64) -> ConjectureReport {
    let kB = Sourced::exact(k_B(params), "weighted decomposition sum");
    let k0B = Sourced::exact(k0_B(params), "product over digits");
    let lB = Sourced::lower(l_B_lower(params), "max of partition counts");
    let kD = Sourced::exact(class_count(&defect_group_spec(params)), "class count formula");
    let kDprime = derived_count(params, cap);
    assemble(Mode::Gl, params.clone(), kB, k0B, lB, kD, kDprime)
}

fn ceil_div(n: &Nat, d: &Nat) -> Nat {
    Integer::div_ceil(n, d)
}

fn check_sl(params: &BlockParams, cap: u64) -> Result<ConjectureReport, VerifierError> {
    if params.ell != Ell::Three || params.d != 1 {
        return Err(VerifierError::SlNeedsEll3);
    }
    let (a, w) = (params.a, params.w);
    let sp = sl_params(a, w);
    let three = Nat::from(3u32);
    let tilde_kD = class_count(&defect_group_spec(params));
    let tilde_kDprime = derived_count(params, cap);

    if a == 1 && w == 3 {
        // |D~′| = 9 and |D′| = |D~′|/3 = 3, so D′ is cyclic of order 3
        let kDprime = match derived_order(&GroupSpec::d_factor(Ell::Three, 1, 1), cap) {
            Ok(order) => Sourced::exact(order / 3u32, "|D~'|/3, prime order"),
            Err(_) => Sourced::lower(ceil_div(&tilde_kDprime.value, &three), "k(D~')/3"),
        };
        return Ok(assemble(
            Mode::Sl,
            params.clone(),
            Sourced::exact(k_B_sl_w3_exact(1)?, "k(B) at w = 3"),
            Sourced::exact(Nat::from(6u32), "known value at w = 3"),
            Sourced::exact(Nat::from(5u32), "known value at w = 3"),
            Sourced::lower(Nat::from(9u32), "k(D) >= k(Dbar) = 9"),
            kDprime,
        ));
    }

    let kB = if w % 3 != 0 {
        Sourced::exact(k_B_sl_coprime(a, w)?, "k(B~)/3^a")
    } else if w == 3 {
        Sourced::exact(k_B_sl_w3_exact(a)?, "k(B) at w = 3")
    } else {
        Sourced::upper(k_B_sl_upper(a, w)?, "kBsl sum")
    };
    let k0 = sl_k0_lower(a, w);
    let k0B = if w == 3 || w == 9 {
        Sourced::exact(k0, format!("known value at w = {w}"))
    } else {
        Sourced::lower(k0, "k0(B~)/3^a")
    };
    let lB = Sourced::lower(sl_l_lower(w), if w == 3 { "known bound at w = 3" } else { "pi(w)" });

    let chain_D = ceil_div(&tilde_kD, &Pow::pow(&three, a + sp.m));
    let chain_Dp = ceil_div(&tilde_kDprime.value, &Pow::pow(&three, sp.m + sp.delta));
    let mut kD = Sourced::lower(chain_D, "k(D~)/3^(a+m)");
    let mut kDprime = Sourced::lower(chain_Dp, "k(D~')/3^(m+delta)");
    if w % 3 == 0 {
        let closed = sl_k_Dbar_lower(a, w);
        let v = ceil_lower(&closed.expr);
        if v > kD.value {
            kD = Sourced::lower(v, closed.tag);
        }
        let closed = sl_k_Dbar_prime_lower(a, w);
        let v = ceil_lower(&closed.expr);
        if v > kDprime.value {
            kDprime = Sourced::lower(v, closed.tag);
        }
    }
    Ok(assemble(Mode::Sl, params.clone(), kB, k0B, lB, kD, kDprime))
}

/// Evaluates (C1) and (C2), or (C1′) and (C2′) in SL mode, for one block.
pub fn check_conjecture(
    params: &BlockParams,
    mode: Mode,
    cap: u64,
) -> Result<ConjectureReport, VerifierError> {
    match mode {
        Mode::Gl => Ok(check_gl(params, cap)),
        Mode::Sl => check_sl(params, cap),
    }
}

/// One sweep point: the parameters and the mode to check them in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPoint {
    pub mode: Mode,
    pub params: BlockParams,
}

/// Evaluates every point of the grid in parallel, keeping grid order.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<ConjectureReport>, VerifierError> {
    let points = grid.points()?;
    points
        .par_iter()
        .map(|p| check_conjecture(&p.params, p.mode, grid.brute_force_cap))
        .collect()
}

/// 0 when everything is verified, 2 when something is inconclusive and
/// nothing is violated, 1 otherwise.
pub fn exit_code(reports: &[ConjectureReport]) -> i32 {
    let all = || reports.iter().flat_map(|r| [r.c1_verdict, r.c2_verdict]);
    if all().any(|v| v == ConjVerdict::Violated) {
        1
    } else if all().any(|v| v == ConjVerdict::Inconclusive) {
        2
    } else {
        0
    }
}

pub(crate) fn case_label(p: &BlockParams) -> &'static str {
    match p.case2 {
        Case2::OnePlusFour => "1mod4",
        Case2::ThreeMod4 => "3mod4",
        Case2::NotApplicable => "-",
    }
}
