//! Defect groups as symbolic trees over cyclic, semidihedral, wreath and
//! direct-product nodes.
//!
//! [`class_count`] and [`group_order`] work on the tree directly. The
//! [`perm`] submodule realizes small trees as permutation groups and counts
//! classes by brute force; it is the oracle for everything here and the only
//! source of exact k(D′).

mod parse;
pub mod perm;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Pow};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::block::{BlockParams, Case2};
use crate::partition::{Ell, Nat};

pub use parse::parse_group_spec;
pub use perm::{brute_class_count, derived_subgroup, realize, Perm, PermGroup};

/// Default element cap for brute-force enumeration.
pub const DEFAULT_ORDER_CAP: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {order} exceeds the cap {cap}")]
    CapExceeded { order: Nat, cap: u64 },
    #[error("permutation degree {0} is too large")]
    DegreeTooLarge(usize),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid group: {0}")]
    Semantic(String),
}

/// A defect group, described symbolically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Cyclic(u64),
    /// SD_{2^{ã+2}}; `atilde` ≥ 2.
    SemiDihedral { atilde: u32 },
    Wreath(Box<GroupSpec>, u32),
    Product(Vec<(GroupSpec, u32)>),
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Self {
        GroupSpec::Cyclic(n)
    }

    pub fn semidihedral(atilde: u32) -> Self {
        GroupSpec::SemiDihedral { atilde }
    }

    pub fn wreath(base: GroupSpec, p: u32) -> Self {
        GroupSpec::Wreath(Box::new(base), p)
    }

    /// base ≀ C_p ≀ … ≀ C_p with `depth` wreath factors.
    pub fn iterated_wreath(base: GroupSpec, p: u32, depth: u32) -> Self {
        (0..depth).fold(base, |g, _| GroupSpec::wreath(g, p))
    }

    /// D_{i,ℓ^a} = C_{ℓ^a} ≀ C_ℓ ≀ … ≀ C_ℓ.
    pub fn d_factor(ell: Ell, a: u32, i: u32) -> Self {
        let l = ell.value();
        GroupSpec::iterated_wreath(GroupSpec::Cyclic((l as u64).pow(a)), l, i)
    }

    /// P_1 = C_2 and P_{2^i} = SD_{2^{ã+2}} ≀ C_2 ≀ … ≀ C_2 with i − 1 wreath factors.
    pub fn p_factor(atilde: u32, i: u32) -> Self {
        if i == 0 {
            GroupSpec::Cyclic(2)
        } else {
            GroupSpec::iterated_wreath(GroupSpec::semidihedral(atilde), 2, i - 1)
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n as usize,
            GroupSpec::SemiDihedral { atilde } => 1usize << (atilde + 1),
            GroupSpec::Wreath(g, p) => g.degree() * *p as usize,
            GroupSpec::Product(fs) => fs.iter().map(|(g, m)| g.degree() * *m as usize).sum(),
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            GroupSpec::Cyclic(0) => Err(GroupError::Semantic("cyclic group of order 0".into())),
            GroupSpec::Cyclic(_) => Ok(()),
            GroupSpec::SemiDihedral { atilde } if *atilde < 2 => Err(GroupError::Semantic(
                format!("semidihedral order must be 2^(atilde+2) with atilde >= 2, got atilde = {atilde}"),
            )),
            GroupSpec::SemiDihedral { .. } => Ok(()),
            GroupSpec::Wreath(g, p) => {
                if *p != 2 && *p != 3 {
                    return Err(GroupError::Semantic(format!("wreath top group must be C_2 or C_3, got C_{p}")));
                }
                g.validate()
            }
            GroupSpec::Product(fs) => {
                if fs.is_empty() {
                    return Err(GroupError::Semantic("empty product".into()));
                }
                for (g, m) in fs {
                    if *m == 0 {
                        return Err(GroupError::Semantic("multiplicity must be at least 1".into()));
                    }
                    g.validate()?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "c({n})"),
            GroupSpec::SemiDihedral { atilde } => write!(f, "sd({})", 1u64 << (atilde + 2)),
            GroupSpec::Wreath(g, p) => write!(f, "wr({g},{p})"),
            GroupSpec::Product(fs) => {
                write!(f, "prod(")?;
                for (k, (g, m)) in fs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                    if *m != 1 {
                        write!(f, "^{m}")?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One factor D_f^{mult} of a defect group, with the level i it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectFactor {
    pub level: u32,
    pub spec: GroupSpec,
    pub multiplicity: u32,
}

/// The factors of D = ∏ D_{i,ℓ^a}^{a_i} (or ∏ P_{2^i}^{a_i}), zero digits dropped.
pub fn defect_factors(params: &BlockParams) -> Vec<DefectFactor> {
    params
        .digits
        .iter()
        .enumerate()
        .filter(|(_, &ai)| ai > 0)
        .map(|(i, &ai)| {
            let i = i as u32;
            let spec = match params.case2 {
                Case2::ThreeMod4 => GroupSpec::p_factor(params.atilde_or_one(), i),
                _ => GroupSpec::d_factor(params.ell, params.a, i),
            };
            DefectFactor { level: i, spec, multiplicity: ai }
        })
        .collect()
}

/// A Sylow ℓ-subgroup of GL_{wd}(εq) as a product over the ℓ-adic digits of w.
pub fn defect_group_spec(params: &BlockParams) -> GroupSpec {
    GroupSpec::Product(
        defect_factors(params)
            .into_iter()
            .map(|f| (f.spec, f.multiplicity))
            .collect(),
    )
}

/// Exact number of conjugacy classes.
///
/// Uses k(C_n) = n, k(SD_{2^{ã+2}}) = 2^ã + 3 and, for prime p,
/// k(G ≀ C_p) = (k(G)^p − k(G))/p + p·k(G).
pub fn class_count(spec: &GroupSpec) -> Nat {
    match spec {
        GroupSpec::Cyclic(n) => Nat::from(*n),
        GroupSpec::SemiDihedral { atilde } => (Nat::one() << *atilde) + 3u32,
        GroupSpec::Wreath(g, p) => {
            let k = class_count(g);
            let p = *p;
            (Pow::pow(&k, p) - &k) / p + k * p
        }
        GroupSpec::Product(fs) => fs
            .iter()
            .map(|(g, m)| Pow::pow(class_count(g), *m))
            .product(),
    }
}

/// |G|.
pub fn group_order(spec: &GroupSpec) -> Nat {
    match spec {
        GroupSpec::Cyclic(n) => Nat::from(*n),
        GroupSpec::SemiDihedral { atilde } => Nat::one() << (atilde + 2),
        GroupSpec::Wreath(g, p) => Pow::pow(group_order(g), *p) * *p,
        GroupSpec::Product(fs) => fs
            .iter()
            .map(|(g, m)| Pow::pow(group_order(g), *m))
            .product(),
    }
}

/// |G/G′|, using (G ≀ C_p)^ab = G^ab × C_p and SD^ab = C_2 × C_2.
pub fn abelianization_order(spec: &GroupSpec) -> Nat {
    match spec {
        GroupSpec::Cyclic(n) => Nat::from(*n),
        GroupSpec::SemiDihedral { .. } => Nat::from(4u32),
        GroupSpec::Wreath(g, p) => abelianization_order(g) * *p,
        GroupSpec::Product(fs) => fs
            .iter()
            .map(|(g, m)| Pow::pow(abelianization_order(g), *m))
            .product(),
    }
}

fn check_cap(spec: &GroupSpec, cap: u64) -> Result<(), GroupError> {
    let order = group_order(spec);
    if order > Nat::from(cap) {
        Err(GroupError::CapExceeded { order, cap })
    } else {
        Ok(())
    }
}

type Slot = Arc<OnceLock<Result<Nat, GroupError>>>;

fn derived_cache() -> &'static Mutex<HashMap<GroupSpec, Slot>> {
    static CACHE: OnceLock<Mutex<HashMap<GroupSpec, Slot>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// k(G′) by brute force, computed at most once per spec per process.
pub fn derived_class_count(spec: &GroupSpec, cap: u64) -> Result<Nat, GroupError> {
    check_cap(spec, cap)?;
    let slot = {
        let mut cache = derived_cache().lock().expect("cache poisoned");
        cache.entry(spec.clone()).or_default().clone()
    };
    slot.get_or_init(|| {
        let g = realize(spec, cap)?;
        brute_class_count(&derived_subgroup(&g)?)
    })
    .clone()
}

/// |G′| by brute force.
pub fn derived_order(spec: &GroupSpec, cap: u64) -> Result<Nat, GroupError> {
    let g = realize(spec, cap)?;
    Ok(Nat::from(derived_subgroup(&g)?.order()?))
}

/// k(G) by brute force.
pub fn brute_class_count_of(spec: &GroupSpec, cap: u64) -> Result<Nat, GroupError> {
    brute_class_count(&realize(spec, cap)?)
}
