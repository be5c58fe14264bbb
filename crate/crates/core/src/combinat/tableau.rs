use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::{binomial, Partition};
use crate::error::{Error, Result};

/// A filling of a Young diagram, stored row by row from the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// Fails unless the row lengths are positive and weakly decreasing.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Tableau> {
        if rows.iter().any(|r| r.is_empty()) || rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::ShapeMismatch("rows must have weakly decreasing positive lengths".into()));
        }
        Ok(Tableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect()).expect("valid shape")
    }

    /// Rows weakly increase and columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| above < below));
        rows_ok && cols_ok
    }

    pub fn entry_sum(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl FromStr for Tableau {
    type Err = Error;

    /// Parses the nested-list form `[[0,2,2,5],[2],[4]]`.
    fn from_str(s: &str) -> Result<Tableau> {
        let bad = || Error::Parse(format!("bad tableau '{s}'"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let mut rows = Vec::new();
        for chunk in inner.split("],") {
            let r = chunk.trim_start_matches('[').trim_end_matches(']');
            let row = r
                .split(',')
                .map(|e| e.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<u32>>>()?;
            rows.push(row);
        }
        Tableau::new(rows)
    }
}

/// The hook `(M+1, 1^(N-1))`; needs `N >= 1`.
pub fn hook_shape(m: u32, n: u32) -> Result<Partition> {
    if n == 0 {
        return Err(Error::OutOfRange("hook leg N must be at least 1".into()));
    }
    let mut parts = vec![m + 1];
    parts.extend(std::iter::repeat_n(1, n as usize - 1));
    Partition::new(parts)
}

/// All semistandard tableaux of the shape with entries in `0..=max_entry`,
/// in lexicographic order of their row reading words.
pub fn enumerate_ssyt(shape: &Partition, max_entry: u32) -> Vec<Tableau> {
    let parts = shape.parts();
    let cells: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<u32>> = parts.iter().map(|&l| vec![0; l as usize]).collect();
    let mut out = Vec::new();
    fn rec(k: usize, cells: &[(usize, usize)], rows: &mut Vec<Vec<u32>>, max: u32, out: &mut Vec<Tableau>) {
        if k == cells.len() {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        let (r, c) = cells[k];
        let mut lo = if c > 0 { rows[r][c - 1] } else { 0 };
        if r > 0 {
            lo = lo.max(rows[r - 1][c] + 1);
        }
        for v in lo..=max {
            rows[r][c] = v;
            rec(k + 1, cells, rows, max, out);
        }
    }
    if parts.is_empty() {
        return vec![Tableau { rows: Vec::new() }];
    }
    rec(0, &cells, &mut rows, max_entry, &mut out);
    out
}

/// Number of semistandard tableaux of hook shape `(M+1, 1^(N-1))` with entries
/// in `0..=d`: `C(d+M+1, M+N) · C(M+N-1, M)`.
pub fn hook_dimension(m: u32, n: u32, d: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::OutOfRange("hook leg N must be at least 1".into()));
    }
    let (m, n, d) = (m as u64, n as u64, d as u64);
    Ok(binomial(d + m + 1, m + n) * binomial(m + n - 1, m))
}

fn check_hook(t: &Tableau, m: u32, n: u32, d: u32) -> Result<()> {
    if t.shape() != hook_shape(m, n)? {
        return Err(Error::ShapeMismatch(format!("{t} is not of hook shape ({}, 1^{})", m + 1, n - 1)));
    }
    if !t.is_semistandard() || t.max_entry() > d {
        return Err(Error::InvalidParameters(format!("{t} is not semistandard with entries at most {d}")));
    }
    Ok(())
}

/// Send a hook tableau with first row `a_0..a_M` and column `a_0, b_1..b_{N-1}` to
/// `S = {a_0, a_1+1, ..., a_M+M} ∪ {b_i + s_i}` and `A = {a_1+1, ..., a_M+M}`,
/// where `s_i` counts the `j >= 1` with `a_j < b_i`.
pub fn ssyt_to_subset_pair(t: &Tableau, m: u32, n: u32, d: u32) -> Result<(Vec<u32>, Vec<u32>)> {
    check_hook(t, m, n, d)?;
    let row = &t.rows[0];
    let a: Vec<u32> = (1..=m as usize).map(|j| row[j] + j as u32).collect();
    let mut s = vec![row[0]];
    s.extend(&a);
    for r in &t.rows[1..] {
        let b = r[0];
        let shift = row[1..].iter().filter(|&&aj| aj < b).count() as u32;
        s.push(b + shift);
    }
    s.sort_unstable();
    Ok((s, a))
}

/// Inverse of [`ssyt_to_subset_pair`].
pub fn subset_pair_to_ssyt(s: &[u32], a: &[u32], m: u32, n: u32, d: u32) -> Result<Tableau> {
    let bad = |msg: &str| Error::InvalidParameters(msg.to_string());
    let mut s = s.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) || s.len() != (m + n) as usize {
        return Err(bad("S must have M+N distinct elements"));
    }
    if s.last().is_some_and(|&v| v > m + d) {
        return Err(bad("S must lie in 0..=M+d"));
    }
    let mut a = a.to_vec();
    a.sort_unstable();
    if a.windows(2).any(|w| w[0] == w[1]) || a.len() != m as usize || a.iter().any(|x| !s[1..].contains(x)) {
        return Err(bad("A must be an M-subset of S without its minimum"));
    }
    let mut row = vec![s[0]];
    row.extend(a.iter().enumerate().map(|(j, &x)| x - (j as u32 + 1)));
    let mut rows = vec![row];
    for &c in s[1..].iter().filter(|x| !a.contains(x)) {
        let shift = a.iter().filter(|&&x| x < c).count() as u32;
        rows.push(vec![c - shift]);
    }
    let t = Tableau::new(rows)?;
    check_hook(&t, m, n, d)?;
    Ok(t)
}
