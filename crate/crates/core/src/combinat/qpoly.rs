use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{binomial, enumerate_ssyt, hook_shape};
use crate::error::{Error, Result};

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly(Vec<BigInt>);

impl QPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn zero() -> QPoly {
        QPoly(Vec::new())
    }

    pub fn one() -> QPoly {
        QPoly::monomial(0)
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> QPoly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        QPoly(v)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        QPoly(v)
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new((0..n).map(|i| self.coefficient(i) + o.coefficient(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for QPoly {
    /// Renders like `1+2q+q³`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q{}", superscript(k)),
            };
            if mono.is_empty() || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: usize) -> QPoly {
    QPoly::new(vec![BigInt::one(); n])
}

/// Gaussian binomial by the recurrence `[n,m] = [n-1,m-1] + q^m [n-1,m]`.
pub fn q_binomial(n: usize, m: usize) -> QPoly {
    if m > n {
        return QPoly::zero();
    }
    // row[j] = [i, j] for the current i
    let mut row = vec![QPoly::one()];
    for i in 1..=n {
        let mut next = vec![QPoly::zero(); i + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let a = if j >= 1 { row[j - 1].clone() } else { QPoly::zero() };
            let b = if j < i { row[j].shift(j) } else { QPoly::zero() };
            *slot = &a + &b;
        }
        row = next;
    }
    row[m].clone()
}

/// `q^C(N,2) [M+N-1, M]_q [M+d+1, M+N]_q`; requires `1 <= N <= d+1`.
pub fn hook_character_product(m: u32, n: u32, d: u32) -> Result<QPoly> {
    if n == 0 || n > d + 1 {
        return Err(Error::OutOfRange(format!("need 1 <= N <= d+1, got N={n}, d={d}")));
    }
    let (m, n, d) = (m as usize, n as usize, d as usize);
    let p = &q_binomial(m + n - 1, m) * &q_binomial(m + d + 1, m + n);
    Ok(p.shift(n * (n - 1) / 2))
}

/// `sum q^|t|` over semistandard hook tableaux with entries in `0..=d`.
pub fn hook_character_tableau_sum(m: u32, n: u32, d: u32) -> Result<QPoly> {
    let shape = hook_shape(m, n)?;
    let mut coeffs: Vec<BigInt> = Vec::new();
    for t in enumerate_ssyt(&shape, d) {
        let k = t.entry_sum() as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] += 1;
    }
    Ok(QPoly::new(coeffs))
}

/// `C(2k, k) / (k+1)`.
pub fn catalan_number(k: u64) -> BigUint {
    binomial(2 * k, k) / BigUint::from(k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(q_binomial(4, 2), qp(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(3, 0), QPoly::one());
        assert_eq!(q_binomial(2, 3), QPoly::zero());
        assert_eq!(q_binomial(5, 2).eval_at_one(), BigInt::from(10));
    }

    #[test]
    fn display() {
        assert_eq!(qp(&[0, 1, 2, 2, 2, 1]).to_string(), "q+2q²+2q³+2q⁴+q⁵");
        assert_eq!(qp(&[1, -1]).to_string(), "1-q");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::monomial(12).to_string(), "q¹²");
    }

    #[test]
    fn small_catalan() {
        let c: Vec<u32> = (0..8).map(|k| catalan_number(k).try_into().unwrap()).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn character_bounds() {
        assert!(hook_character_product(1, 0, 2).is_err());
        assert!(hook_character_product(1, 4, 2).is_err());
    }
}
