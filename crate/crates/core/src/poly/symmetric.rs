use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Advance to the next permutation in lexicographic order; false at the last.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinct rearrangements of an exponent vector, in increasing lexicographic order.
pub fn orbit_exponents(exps: &[u32]) -> Vec<Vec<u32>> {
    let mut e = exps.to_vec();
    e.sort_unstable();
    let mut out = vec![e.clone()];
    while next_permutation(&mut e) {
        out.push(e.clone());
    }
    out
}

/// Sum of the distinct monomials obtained by permuting the exponents of `m` on `vars`.
///
/// Each orbit element appears once with coefficient one, so no stabilizer order is divided out.
pub fn symmetrize_orbit(m: Monomial, vars: &[usize], field: FieldSpec) -> MultiPoly {
    let mut base = m;
    for &v in vars {
        base = base.with_exp(v, 0);
    }
    let exps: Vec<u32> = vars.iter().map(|&v| m.exp(v)).collect();
    let terms = orbit_exponents(&exps).into_iter().map(|e| {
        let mut t = base;
        for (k, &v) in vars.iter().enumerate() {
            t = t.with_exp(v, e[k]);
        }
        (t, Scalar::one(field))
    });
    MultiPoly::from_terms(field, terms)
}

/// `det(x_{vars[j]}^{exps[i]})`, expanded over all permutations.
pub fn alternant_from_exponents(exps: &[u32], vars: &[usize], field: FieldSpec) -> MultiPoly {
    assert_eq!(exps.len(), vars.len());
    let n = vars.len();
    let mut sorted = exps.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return MultiPoly::zero(field);
    }
    // Heap's algorithm; every swap flips the sign.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let build = |perm: &[usize], sign: i64| {
        let mut m = Monomial::ONE;
        for i in 0..n {
            m = m.with_exp(vars[perm[i]], exps[i]);
        }
        (m, Scalar::from_i64(sign, field))
    };
    let mut terms = vec![build(&perm, sign)];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            terms.push(build(&perm, sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    MultiPoly::from_terms(field, terms)
}

/// The alternant `a_{λ+ρ}` on `vars`, with `ρ = (n-1, ..., 0)`.
pub fn alternant(lambda: &[u32], vars: &[usize], field: FieldSpec) -> Result<MultiPoly> {
    let n = vars.len();
    let parts: Vec<u32> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if parts.len() > n {
        return Err(Error::ShapeTooLong);
    }
    let exps: Vec<u32> = (0..n)
        .map(|i| parts.get(i).copied().unwrap_or(0) + (n - 1 - i) as u32)
        .collect();
    Ok(alternant_from_exponents(&exps, vars, field))
}

/// The Vandermonde determinant `a_ρ = ∏_{i<j} (x_i - x_j)`.
pub fn vandermonde(vars: &[usize], field: FieldSpec) -> MultiPoly {
    alternant(&[], vars, field).expect("empty shape")
}

pub fn is_symmetric(p: &MultiPoly, vars: &[usize]) -> bool {
    vars.windows(2).all(|w| p.swap_vars(w[0], w[1]) == *p)
}

pub fn is_antisymmetric(p: &MultiPoly, vars: &[usize]) -> bool {
    vars.windows(2).all(|w| p.swap_vars(w[0], w[1]) == -p)
}
