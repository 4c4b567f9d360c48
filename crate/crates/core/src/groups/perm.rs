//! Permutation groups small enough to list element by element.
//!
//! Permutations are image arrays. `compose(a, b)` applies `a` first, so
//! `compose(a, b)[i] = b[a[i]]`. Closures use Dimino's coset method, which
//! also yields the irredundant generating sets used for derived subgroups.

use std::sync::OnceLock;

use indexmap::IndexSet;

use super::{group_order, GroupError, GroupSpec};
use crate::partition::Nat;

pub type Perm = Box<[u16]>;

const MAX_DEGREE: usize = 1 << 16;

pub fn identity(n: usize) -> Perm {
    (0..n).map(|i| i as u16).collect()
}

pub fn compose(a: &[u16], b: &[u16]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(a: &[u16]) -> Perm {
    let mut inv = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u16;
    }
    inv.into_boxed_slice()
}

/// g⁻¹·x·g.
pub fn conjugate(x: &[u16], g: &[u16]) -> Perm {
    let ginv = inverse(g);
    (0..x.len())
        .map(|i| g[x[ginv[i] as usize] as usize])
        .collect()
}

fn is_bijection(p: &[u16]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        match seen.get_mut(x as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    true
}

/// A permutation group on {0, …, degree − 1}, with its elements listed lazily.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: u64,
    elements: OnceLock<IndexSet<Perm>>,
}

impl PermGroup {
    /// # Panics
    /// If a generator is not a bijection of the right length.
    pub fn new(degree: usize, generators: Vec<Perm>, cap: u64) -> Result<Self, GroupError> {
        if degree > MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge(degree));
        }
        for g in &generators {
            assert!(g.len() == degree && is_bijection(g), "generator is not a permutation of {degree} points");
        }
        Ok(PermGroup { degree, generators, cap, elements: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements, identity first.
    pub fn elements(&self) -> Result<&IndexSet<Perm>, GroupError> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let mut set = IndexSet::new();
        set.insert(identity(self.degree));
        let mut used: Vec<Perm> = Vec::new();
        for g in &self.generators {
            if !set.contains(g) {
                used.push(g.clone());
                extend(&mut set, &used, self.cap)?;
            }
        }
        Ok(self.elements.get_or_init(|| set))
    }

    pub fn order(&self) -> Result<usize, GroupError> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, p: &[u16]) -> Result<bool, GroupError> {
        Ok(self.elements()?.contains(p))
    }
}

/// Grows `set`, a subgroup closed under `gens[..n-1]`, to the group generated
/// by all of `gens`, one right coset at a time.
fn extend(set: &mut IndexSet<Perm>, gens: &[Perm], cap: u64) -> Result<(), GroupError> {
    let h_len = set.len();
    let degree = set[0].len();
    let mut reps: Vec<Perm> = vec![identity(degree)];
    let mut i = 0;
    while i < reps.len() {
        for g in gens {
            let e = compose(&reps[i], g);
            if set.contains(&e) {
                continue;
            }
            if (set.len() + h_len) as u64 > cap {
                return Err(GroupError::CapExceeded { order: Nat::from(set.len() + h_len), cap });
            }
            for k in 0..h_len {
                let he = compose(&set[k], &e);
                set.insert(he);
            }
            reps.push(e);
        }
        i += 1;
    }
    Ok(())
}

fn generators_of(spec: &GroupSpec) -> Vec<Perm> {
    match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n as usize;
            if n == 1 {
                Vec::new()
            } else {
                vec![(0..n).map(|i| ((i + 1) % n) as u16).collect()]
            }
        }
        GroupSpec::SemiDihedral { atilde } => {
            let n = 1usize << (atilde + 1);
            let r = (1usize << atilde) - 1;
            let y: Perm = (0..n).map(|i| ((i + 1) % n) as u16).collect();
            let x: Perm = (0..n).map(|i| ((r * i) % n) as u16).collect();
            vec![x, y]
        }
        GroupSpec::Wreath(base, p) => {
            let inner = base.degree();
            let p = *p as usize;
            let n = inner * p;
            let mut gens: Vec<Perm> = generators_of(base)
                .into_iter()
                .map(|g| {
                    let mut full: Vec<u16> = (0..n).map(|i| i as u16).collect();
                    full[..inner].copy_from_slice(&g);
                    full.into_boxed_slice()
                })
                .collect();
            gens.push((0..n).map(|i| ((i + inner) % n) as u16).collect());
            gens
        }
        GroupSpec::Product(factors) => {
            let n = spec.degree();
            let mut gens = Vec::new();
            let mut offset = 0;
            for (g, m) in factors {
                let inner = g.degree();
                let local = generators_of(g);
                for _ in 0..*m {
                    for lg in &local {
                        let mut full: Vec<u16> = (0..n).map(|i| i as u16).collect();
                        for (j, &x) in lg.iter().enumerate() {
                            full[offset + j] = (offset + x as usize) as u16;
                        }
                        gens.push(full.into_boxed_slice());
                    }
                    offset += inner;
                }
            }
            gens
        }
    }
}

/// Faithful permutation representation of `spec`: C_n on n points, SD on
/// 2^{ã+1} points via y: i ↦ i + 1 and x: i ↦ (2^ã − 1)i, G ≀ C_p on p·deg G
/// points, products on disjoint unions.
pub fn realize(spec: &GroupSpec, order_cap: u64) -> Result<PermGroup, GroupError> {
    spec.validate()?;
    let order = group_order(spec);
    if order > Nat::from(order_cap) {
        return Err(GroupError::CapExceeded { order, cap: order_cap });
    }
    let degree = spec.degree();
    if degree > MAX_DEGREE {
        return Err(GroupError::DegreeTooLarge(degree));
    }
    PermGroup::new(degree, generators_of(spec), order_cap)
}

/// Number of conjugacy classes, as orbits of conjugation by the generators.
pub fn brute_class_count(g: &PermGroup) -> Result<Nat, GroupError> {
    let elems = g.elements()?;
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut classes = elems.len();
    for (i, x) in elems.iter().enumerate() {
        for gen in g.generators() {
            let y = conjugate(x, gen);
            let j = elems.get_index_of(&y).expect("group is closed under conjugation");
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                classes -= 1;
            }
        }
    }
    Ok(Nat::from(classes))
}

/// The derived subgroup: the normal closure of the commutators of generators.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup, GroupError> {
    let n = g.degree();
    let gens = g.generators();
    let mut set: IndexSet<Perm> = IndexSet::new();
    set.insert(identity(n));
    let mut sub_gens: Vec<Perm> = Vec::new();

    let add = |set: &mut IndexSet<Perm>, sub_gens: &mut Vec<Perm>, c: Perm| -> Result<(), GroupError> {
        if !set.contains(&c) {
            sub_gens.push(c);
            extend(set, sub_gens, g.cap)?;
        }
        Ok(())
    };

    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let comm = compose(&compose(&compose(&inverse(a), &inverse(b)), a), b);
            add(&mut set, &mut sub_gens, comm)?;
        }
    }
    let mut j = 0;
    while j < sub_gens.len() {
        for gen in gens {
            let c = conjugate(&sub_gens[j], gen);
            add(&mut set, &mut sub_gens, c)?;
        }
        j += 1;
    }

    let sub = PermGroup::new(n, sub_gens, g.cap)?;
    sub.elements.set(set).expect("fresh group has no cached elements");
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{class_count, DEFAULT_ORDER_CAP};
    use crate::partition::Ell;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    fn power(p: &[u16], e: usize) -> Perm {
        (0..e).fold(identity(p.len()), |acc, _| compose(&acc, p))
    }

    #[test]
    fn cyclic_generator_is_a_cycle() {
        let g = realize(&GroupSpec::cyclic(4), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.generators().len(), 1);
        assert_eq!(&*g.generators()[0], &[1, 2, 3, 0]);
        assert_eq!(g.order().unwrap(), 4);
        let t = realize(&GroupSpec::cyclic(1), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(t.order().unwrap(), 1);
    }

    #[test]
    fn semidihedral_relations() {
        for at in 2..=6u32 {
            let g = realize(&GroupSpec::semidihedral(at), DEFAULT_ORDER_CAP).unwrap();
            let (x, y) = (&g.generators()[0], &g.generators()[1]);
            let n = 1usize << (at + 1);
            let id = identity(n);
            assert_eq!(g.degree(), n);
            assert_eq!(power(x, 2), id);
            assert_eq!(power(y, n), id);
            assert_ne!(power(y, n / 2), id);
            let xyx = compose(&compose(x, y), x);
            assert_eq!(xyx, power(y, (1 << at) - 1));
            assert_eq!(g.order().unwrap(), 1 << (at + 2));
        }
    }

    #[test]
    fn wreath_closure_size() {
        let g = realize(&GroupSpec::wreath(GroupSpec::cyclic(3), 3), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.degree(), 9);
        assert_eq!(g.order().unwrap(), 81);
    }

    #[test]
    fn brute_matches_formula() {
        let specs = [
            GroupSpec::cyclic(1),
            GroupSpec::cyclic(5),
            GroupSpec::semidihedral(2),
            GroupSpec::semidihedral(3),
            GroupSpec::wreath(GroupSpec::cyclic(2), 2),
            GroupSpec::wreath(GroupSpec::cyclic(3), 3),
            GroupSpec::wreath(GroupSpec::cyclic(2), 3),
            GroupSpec::wreath(GroupSpec::cyclic(3), 2),
            GroupSpec::d_factor(Ell::Two, 2, 2),
            GroupSpec::Product(vec![(GroupSpec::cyclic(2), 2), (GroupSpec::wreath(GroupSpec::cyclic(2), 2), 1)]),
        ];
        for s in &specs {
            let g = realize(s, DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(brute_class_count(&g).unwrap(), class_count(s), "{s}");
            assert_eq!(nat(g.order().unwrap() as u64), group_order(s), "{s}");
        }
    }

    #[test]
    fn derived_subgroups() {
        for at in 2..=5u32 {
            let g = realize(&GroupSpec::semidihedral(at), DEFAULT_ORDER_CAP).unwrap();
            let d = derived_subgroup(&g).unwrap();
            assert_eq!(d.order().unwrap(), 1 << at);
            assert_eq!(brute_class_count(&d).unwrap(), nat(1 << at));
        }
        let c = realize(&GroupSpec::cyclic(6), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(derived_subgroup(&c).unwrap().order().unwrap(), 1);
        let w = realize(&GroupSpec::wreath(GroupSpec::cyclic(3), 3), DEFAULT_ORDER_CAP).unwrap();
        let d = derived_subgroup(&w).unwrap();
        assert_eq!(d.order().unwrap(), 9);
        // D₈ = C₂ ≀ C₂ has derived subgroup of order 2.
        let d8 = realize(&GroupSpec::wreath(GroupSpec::cyclic(2), 2), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(derived_subgroup(&d8).unwrap().order().unwrap(), 2);
    }

    #[test]
    fn derived_is_normal_and_contains_all_commutators() {
        let g = realize(&GroupSpec::d_factor(Ell::Two, 2, 2), DEFAULT_ORDER_CAP).unwrap();
        let d = derived_subgroup(&g).unwrap();
        let elems: Vec<Perm> = g.elements().unwrap().iter().take(200).cloned().collect();
        for a in elems.iter().step_by(7) {
            for b in elems.iter().step_by(11) {
                let comm = compose(&compose(&compose(&inverse(a), &inverse(b)), a), b);
                assert!(d.contains(&comm).unwrap());
            }
            for h in d.elements().unwrap().iter().take(50) {
                assert!(d.contains(&conjugate(h, a)).unwrap());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s = GroupSpec::d_factor(Ell::Three, 1, 2);
        assert!(matches!(realize(&s, DEFAULT_ORDER_CAP), Err(GroupError::CapExceeded { .. })));
        let g = PermGroup::new(9, generators_of(&GroupSpec::wreath(GroupSpec::cyclic(3), 3)), 50).unwrap();
        assert!(matches!(g.elements(), Err(GroupError::CapExceeded { .. })));
    }
}
