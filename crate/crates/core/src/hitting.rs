//! Low-Hamming-weight hitting sets and the deterministic shift search.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::rational::{from_int, Rational};

/// `H(d, n)`: every point with at most `d` nonzero coordinates drawn from `T_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSet {
    d: usize,
    n: usize,
    values: Vec<Rational>,
    points: Vec<Vec<Rational>>,
}

impl HittingSet {
    /// Builds `H(d, n)` with `T_d = {0, 1, …, d}`.
    pub fn new(d: usize, n: usize) -> Self {
        let values = (0..=d as i64).map(from_int).collect();
        Self::with_values(d, n, values).expect("default value set is valid")
    }

    /// Builds `H(d, n)` over a caller-supplied value set of `d + 1` distinct entries.
    ///
    /// Points are listed by support size, then support in lexicographic order,
    /// then the assigned values in lexicographic order of their positions in
    /// `values`; repeated points keep their first position.
    pub fn with_values(d: usize, n: usize, values: Vec<Rational>) -> Result<Self> {
        if values.len() != d + 1 {
            return Err(Error::precondition(format!(
                "value set must have {} entries, got {}",
                d + 1,
                values.len()
            )));
        }
        let mut seen_values = HashSet::new();
        for v in &values {
            if !seen_values.insert(v.clone()) {
                return Err(Error::precondition(format!("duplicate value {v} in value set")));
            }
        }
        let mut points = Vec::new();
        let mut seen: HashSet<Vec<Rational>> = HashSet::new();
        for size in 0..=d.min(n) {
            for support in combinations(n, size) {
                let mut digits = vec![0usize; size];
                loop {
                    let mut p = vec![Rational::zero(); n];
                    for (k, &var) in support.iter().enumerate() {
                        p[var] = values[digits[k]].clone();
                    }
                    if seen.insert(p.clone()) {
                        points.push(p);
                    }
                    if !advance(&mut digits, values.len()) {
                        break;
                    }
                }
            }
        }
        Ok(HittingSet { d, n, values, points })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `C(n, ≤d) · (d+1)^d`, the size bound for the set.
    pub fn size_bound(&self) -> u128 {
        let mut choose_sum: u128 = 0;
        let mut c: u128 = 1;
        for k in 0..=self.d.min(self.n) {
            choose_sum += c;
            c = c * (self.n - k) as u128 / (k + 1) as u128;
        }
        choose_sum * (self.d as u128 + 1).pow(self.d as u32)
    }

    /// First point, in set order, where `p` does not vanish.
    pub fn first_nonvanishing(&self, p: &SparsePoly) -> Result<Option<&[Rational]>> {
        if p.arity() != self.n {
            return Err(Error::ArityMismatch {
                left: p.arity(),
                right: self.n,
            });
        }
        for pt in &self.points {
            if !p.evaluate(pt)?.is_zero() {
                return Ok(Some(pt));
            }
        }
        Ok(None)
    }
}

/// Increments a mixed-radix counter; false once it wraps around.
fn advance(digits: &mut [usize], radix: usize) -> bool {
    for k in (0..digits.len()).rev() {
        digits[k] += 1;
        if digits[k] < radix {
            return true;
        }
        digits[k] = 0;
    }
    false
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The grid `{0, 1, 2, …}^n` in graded order, optionally capped.
///
/// Points come in shells of growing maximum coordinate, so the first `s^n`
/// points are exactly `{0, …, s−1}^n`. Inside a shell the order is by
/// coordinate sum, and among equal sums the lexicographically larger vector
/// comes first.
#[derive(Clone, Debug)]
pub struct DeltaSequence {
    n: usize,
    budget: Option<u64>,
    emitted: u64,
    shell: u64,
    sum: u64,
    block: Vec<Vec<u64>>,
    next_in_block: usize,
}

/// `delta_search_sequence(n, budget)`.
pub fn delta_search_sequence(n: usize, budget: u64) -> DeltaSequence {
    DeltaSequence::new(n, Some(budget))
}

/// The full grid `{0, …, side−1}^n` in the same order as [`delta_search_sequence`].
pub fn grid_sequence(n: usize, side: u64) -> DeltaSequence {
    let total = (side as u128).saturating_pow(n as u32);
    DeltaSequence::new(n, Some(total.min(u64::MAX as u128) as u64))
}

impl DeltaSequence {
    pub fn new(n: usize, budget: Option<u64>) -> Self {
        DeltaSequence {
            n,
            budget,
            emitted: 0,
            shell: 0,
            sum: 0,
            block: Vec::new(),
            next_in_block: 0,
        }
    }

    fn fill_block(&mut self) {
        loop {
            let max_sum = self.shell * self.n as u64;
            if self.sum > max_sum {
                self.shell += 1;
                self.sum = self.shell;
                continue;
            }
            let mut block = Vec::new();
            let mut prefix = Vec::with_capacity(self.n);
            compositions(self.n, self.sum, self.shell, false, &mut prefix, &mut block);
            self.sum += 1;
            if !block.is_empty() {
                self.block = block;
                self.next_in_block = 0;
                return;
            }
        }
    }
}

/// Vectors of length `len` summing to `sum`, entries ≤ `max`, with at least
/// one entry equal to `max`, in lexicographically decreasing order.
fn compositions(len: usize, sum: u64, max: u64, hit: bool, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if len == 0 {
        if sum == 0 && hit {
            out.push(prefix.clone());
        }
        return;
    }
    let room = max * (len as u64 - 1);
    let hi = sum.min(max);
    let lo = sum.saturating_sub(room);
    for v in (lo..=hi).rev() {
        prefix.push(v);
        compositions(len - 1, sum - v, max, hit || v == max, prefix, out);
        prefix.pop();
    }
}

impl Iterator for DeltaSequence {
    type Item = Vec<Rational>;

    fn next(&mut self) -> Option<Vec<Rational>> {
        if let Some(b) = self.budget {
            if self.emitted >= b {
                return None;
            }
        }
        if self.n == 0 {
            if self.emitted > 0 {
                return None;
            }
            self.emitted += 1;
            return Some(Vec::new());
        }
        if self.next_in_block >= self.block.len() {
            self.fill_block();
        }
        let p = &self.block[self.next_in_block];
        self.next_in_block += 1;
        self.emitted += 1;
        Some(p.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }
}
