//! Partition numbers and the exact cut-count caps derived from them.
//!
//! A transitive tournament has exactly one k-cut with `|X| = a` per partition
//! of some `k' <= k` into at most `n - a` parts, each at most `a`. Summing the
//! unrestricted counts over `a` gives `(n+1) * (p(0) + .. + p(k))`, an upper
//! bound on the number of k-cuts. Instances close to transitive inherit this
//! bound at a larger budget:
//!
//! * a feedback arc set of size `k`: every k-cut is a `2k`-cut of the
//!   reference order;
//! * an ordering of width `k`: every k-cut is a `t(k) = floor(2k(1 + ln 2k))`
//!   cut of it;
//! * an ordering of cost `k`: its width is at most `b(k) = floor((4k)^(2/3))`.

use std::f64::consts::{LN_2, PI};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// `p[j]` is the number of partitions of `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    p: Vec<BigUint>,
}

impl PartitionTable {
    pub fn get(&self, j: usize) -> &BigUint {
        &self.p[j]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.p
    }

    /// `p(0) + p(1) + .. + p(m)`
    pub fn prefix_sum(&self, m: usize) -> BigUint {
        self.p[..=m].iter().sum()
    }
}

/// `p(0..=m)` by Euler's pentagonal-number recurrence.
pub fn partition_numbers(m: usize) -> PartitionTable {
    let mut p: Vec<BigInt> = Vec::with_capacity(m + 1);
    p.push(BigInt::one());
    for i in 1..=m {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = p[i - g1].clone();
            if g2 <= i {
                term += &p[i - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    PartitionTable {
        p: p.into_iter().map(|x| x.to_biguint().expect("partition numbers are positive")).collect(),
    }
}

/// `π·√(2/3)`
pub const HARDY_RAMANUJAN_C: f64 = 2.565_099_660_323_728;

/// `2π / (√3·ln 2)`, so that `exp(C·√(2k)) = 2^(c·√k)`.
pub fn base_two_exponent_constant() -> f64 {
    2.0 * PI / (3f64.sqrt() * LN_2)
}

/// `A · exp(C·√k) / (k+1)`, the analytic upper bound on `p(k)`.
/// Diagnostics only; the solvers use the exact caps below.
pub fn hr_bound(k: u64, a: f64) -> f64 {
    a * (HARDY_RAMANUJAN_C * (k as f64).sqrt()).exp() / (k as f64 + 1.0)
}

/// Number of partitions of any `k' <= k` with every part at most `max_part`
/// and at most `max_parts` parts.
pub fn count_bounded_partitions(k: usize, max_part: usize, max_parts: usize) -> BigUint {
    let max_part = max_part.min(k);
    let max_parts = max_parts.min(k);
    // f[m][s]: partitions of s into at most m parts, each at most the current bound.
    let mut f = vec![vec![BigUint::zero(); k + 1]; max_parts + 1];
    for row in f.iter_mut() {
        row[0] = BigUint::one();
    }
    for part in 1..=max_part {
        for m in 1..=max_parts {
            let (lower, upper) = f.split_at_mut(m);
            let prev = &lower[m - 1];
            for s in part..=k {
                let add = prev[s - part].clone();
                upper[0][s] += add;
            }
        }
    }
    f[max_parts].iter().sum()
}

/// `(n+1) · Σ_{j ≤ 2k} p(j)`: no semi-complete digraph with a feedback arc set
/// of size at most `k` has more k-cuts.
pub fn cap_fas(n: usize, k: usize) -> BigUint {
    transitive_cap(n, 2 * k)
}

/// `floor(2k(1 + ln 2k))`, and `0` at `k = 0`.
pub fn cutwidth_transfer_threshold(k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let two_k = 2.0 * k as f64;
    (two_k * (1.0 + two_k.ln())).floor() as usize
}

/// `(n+1) · Σ_{j ≤ t(k)} p(j)`: no semi-complete digraph of cutwidth at most
/// `k` has more k-cuts.
pub fn cap_cutwidth(n: usize, k: usize) -> BigUint {
    transitive_cap(n, cutwidth_transfer_threshold(k))
}

/// `floor((4k)^(2/3))`, computed as the integer cube root of `(4k)^2`.
pub fn ola_width_budget(k: usize) -> usize {
    let four_k = 4 * k as u128;
    integer_cube_root(four_k * four_k) as usize
}

/// Cap on the number of `b(k)`-cuts of an instance with an ordering of cost at
/// most `k`.
pub fn cap_ola(n: usize, k: usize) -> BigUint {
    cap_cutwidth(n, ola_width_budget(k))
}

/// Upper bound on the number of `budget`-cuts of an `n`-vertex transitive
/// tournament.
pub fn transitive_cap(n: usize, budget: usize) -> BigUint {
    BigUint::from(n + 1) * partition_numbers(budget).prefix_sum(budget)
}

/// Largest `r` with `r^3 <= x`.
pub fn integer_cube_root(x: u128) -> u128 {
    if x == 0 {
        return 0;
    }
    let mut r = (x as f64).cbrt() as u128;
    while r.checked_pow(3).is_none_or(|c| c > x) {
        r -= 1;
    }
    while (r + 1).checked_pow(3).is_some_and(|c| c <= x) {
        r += 1;
    }
    r
}
