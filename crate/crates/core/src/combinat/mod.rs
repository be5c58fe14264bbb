//! Partitions, tableaux, q-analogues and Schur polynomials.

mod qpoly;
mod schur;
mod tableau;

pub use qpoly::{catalan_number, hook_character_product, hook_character_tableau_sum, q_binomial, q_int, QPoly};
pub(crate) use schur::divide_by_vandermonde;
pub use schur::{schur_expansion, schur_poly};
pub use tableau::{enumerate_ssyt, hook_dimension, hook_shape, ssyt_to_subset_pair, subset_pair_to_ssyt, Tableau};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a `usize`; panics on overflow.
pub fn binom(n: usize, k: usize) -> usize {
    binomial(n as u64, k as u64).to_usize().expect("binomial overflows usize")
}

/// Strictly increasing `k`-tuples from `0..n`, lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if (n - v) as usize >= k - cur.len() {
                cur.push(v);
                rec(v + 1, n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, n as u32, k, &mut cur, &mut out);
    out
}

/// Weakly increasing `k`-tuples from `0..n`, lexicographically.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n as u32, k, &mut cur, &mut out);
    out
}

/// Weakly decreasing length-`n` vectors with entries in `0..=max`, in
/// decreasing lexicographic order. These are the partitions in an `n × max` box,
/// padded with zeros.
pub fn partitions_in_box(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = multisets(max as usize + 1, n)
        .into_iter()
        .map(|mut v| {
            v.reverse();
            v
        })
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// An integer partition with positive parts in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Drops trailing zeros; fails if the parts increase.
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameters(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts.into_iter().filter(|&p| p > 0).collect()))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `(2,1)` or `[2, 1]`.
    fn from_str(s: &str) -> Result<Partition> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if t.trim().is_empty() {
            return Ok(Partition::default());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition '{s}'"))))
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}
