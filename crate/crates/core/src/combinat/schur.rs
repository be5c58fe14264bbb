use super::Partition;
use crate::error::{Error, Result};
use crate::poly::{alternant, is_symmetric, vandermonde, MultiPoly};
use crate::scalar::{FieldSpec, Scalar};

/// Divide by `∏_{i<j} (x_i - x_j)` one linear factor at a time.
pub(crate) fn divide_by_vandermonde(p: &MultiPoly, vars: &[usize]) -> Result<MultiPoly> {
    let mut q = p.clone();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            q = q.div_by_difference(vars[i], vars[j])?;
        }
    }
    Ok(q)
}

/// `s_λ = a_{λ+ρ} / a_ρ`, computed over the integers and then reduced into `field`.
pub fn schur_poly(lambda: &Partition, vars: &[usize], field: FieldSpec) -> Result<MultiPoly> {
    let a = alternant(lambda.parts(), vars, FieldSpec::Rationals)?;
    divide_by_vandermonde(&a, vars)?.reduce_into(field)
}

/// Coefficients of a symmetric polynomial in the Schur basis on `vars`,
/// read from the strictly decreasing monomials of `a_ρ · p`.
pub fn schur_expansion(p: &MultiPoly, vars: &[usize]) -> Result<Vec<(Partition, Scalar)>> {
    if !is_symmetric(p, vars) {
        return Err(Error::InvalidParameters("polynomial is not symmetric".into()));
    }
    let n = vars.len();
    let a = &vandermonde(vars, p.field()) * p;
    let mut out = Vec::new();
    for (m, c) in a.terms() {
        let e: Vec<u32> = vars.iter().map(|&v| m.exp(v)).collect();
        if e.windows(2).all(|w| w[0] > w[1]) {
            let parts: Vec<u32> = e.iter().enumerate().map(|(i, &x)| x - (n - 1 - i) as u32).collect();
            out.push((Partition::new(parts)?, c.clone()));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn schur_two_one_in_three_variables() {
        let r = PolyRing::new(FieldSpec::Rationals, &[("x", 3)]).unwrap();
        let s = schur_poly(&"2,1".parse().unwrap(), &[0, 1, 2], FieldSpec::Rationals).unwrap();
        let expect = r
            .parse("x1^2*x2 + x1^2*x3 + x1*x2^2 + 2*x1*x2*x3 + x1*x3^2 + x2^2*x3 + x2*x3^2")
            .unwrap();
        assert_eq!(s, expect);
        let exp = schur_expansion(&s, &[0, 1, 2]).unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp[0].0, "2,1".parse().unwrap());
        assert!(schur_expansion(&r.var(0), &[0, 1, 2]).is_err());
    }
}
