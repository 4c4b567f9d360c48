//! Naive counting oracles and the group suite shared by the integration tests.

#![allow(dead_code)]

use blockinv_core::Nat;

/// p(0), …, p(n) by the parts-at-most-k recurrence.
pub fn partitions(n: usize) -> Vec<Nat> {
    let mut p = vec![Nat::from(0u32); n + 1];
    p[0] = Nat::from(1u32);
    for part in 1..=n {
        for m in part..=n {
            let add = p[m - part].clone();
            p[m] += add;
        }
    }
    p
}

fn splits_into(s: usize, t: usize, prefix: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if s == 1 {
        prefix.push(t);
        out(prefix);
        prefix.pop();
        return;
    }
    for first in 0..=t {
        prefix.push(first);
        splits_into(s - 1, t - first, prefix, out);
        prefix.pop();
    }
}

/// k(s, t) as a sum over s-splits of t of products of partition numbers.
pub fn multipartitions_by_splits(s: usize, t: usize) -> Nat {
    let p = partitions(t);
    let mut total = Nat::from(0u32);
    splits_into(s, t, &mut Vec::new(), &mut |parts| {
        let mut prod = Nat::from(1u32);
        for &x in parts {
            prod *= &p[x];
        }
        total += prod;
    });
    total
}

/// k(s, 0), …, k(s, t) by s successive convolutions with the partition series.
pub fn multipartitions_by_convolution(s: u64, t: usize) -> Vec<Nat> {
    let p = partitions(t);
    let mut acc = vec![Nat::from(0u32); t + 1];
    acc[0] = Nat::from(1u32);
    for _ in 0..s {
        let mut next = vec![Nat::from(0u32); t + 1];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in p.iter().enumerate().take(t + 1 - i) {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    acc
}

/// Every (t_0, …, t_K) with Σ t_i ℓ^i = w and ℓ^K ≤ w, trailing zeros kept.
pub fn decompositions(ell: usize, w: usize) -> Vec<Vec<usize>> {
    let mut powers = vec![1usize];
    while powers.last().unwrap() * ell <= w {
        powers.push(powers.last().unwrap() * ell);
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; powers.len()];
    fn rec(level: usize, left: usize, powers: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if level == powers.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for t in 0..=left / powers[level] {
            cur[level] = t;
            rec(level + 1, left - t * powers[level], powers, cur, out);
        }
        cur[level] = 0;
    }
    rec(0, w, &powers, &mut cur, &mut out);
    out
}

/// Σ over W_w of ∏_i k(c_i, t_i), with c_i = head[i] or `tail` past the head.
pub fn weighted_sum(ell: usize, head: &[u64], tail: u64, w: usize) -> Nat {
    let levels = decompositions(ell, w).first().map_or(1, Vec::len);
    let series: Vec<Vec<Nat>> = (0..levels)
        .map(|i| multipartitions_by_convolution(head.get(i).copied().unwrap_or(tail), w))
        .collect();
    let mut total = Nat::from(0u32);
    for d in decompositions(ell, w) {
        let mut prod = Nat::from(1u32);
        for (i, &t) in d.iter().enumerate() {
            prod *= &series[i][t];
        }
        total += prod;
    }
    total
}

/// Group specs cross-checked against brute force, with pinned class counts.
pub const GROUP_SUITE: &[(&str, Option<u64>)] = &[
    ("c(2)", Some(2)),
    ("c(9)", Some(9)),
    ("sd(16)", Some(7)),
    ("sd(32)", Some(11)),
    ("sd(128)", Some(35)),
    ("wr(c(2),2)", Some(5)),
    ("wr(c(3),3)", Some(17)),
    ("wr(c(4),2)", None),
    ("wr(c(9),3)", None),
    ("wr(c(27),3)", None),
    ("wr(sd(16),2)", Some(35)),
    ("wr(sd(32),2)", None),
    ("wr(wr(c(2),2),2)", None),
    ("wr(wr(c(4),2),2)", None),
    ("wr(wr(c(3),3),2)", None),
    ("wr(c(3),3)^2", None),
    ("c(3), wr(c(3),3)", None),
    ("prod(sd(16), c(2)^2)", None),
    ("wr(wr(sd(16),2),2)", None),
];
