use std::collections::BTreeMap;

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

/// A quotient of polynomials, kept unreduced; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &RationalFunction) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.field());
        RationalFunction { num: p, den: one }
    }
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.field() != den.field() {
            return Err(Error::FieldMismatch(num.field().to_string(), den.field().to_string()));
        }
        Ok(RationalFunction { num, den }.tidy())
    }

    fn tidy(self) -> RationalFunction {
        if self.num.is_zero() {
            return RationalFunction::from(MultiPoly::zero(self.num.field()));
        }
        if self.den.is_constant() {
            let inv = self.den.terms()[0].1.inv().expect("nonzero");
            return RationalFunction::from(self.num.scale(&inv));
        }
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction { num: &self.num + &o.num, den: self.den.clone() }.tidy();
        }
        RationalFunction {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .tidy()
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalFunction) -> RationalFunction {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        RationalFunction { num: &self.num * &o.num, den: &self.den * &o.den }.tidy()
    }

    pub fn div(&self, o: &RationalFunction) -> Result<RationalFunction> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num: &self.num * &o.den, den: &self.den * &o.num }.tidy())
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> RationalFunction {
        RationalFunction { num: self.num.swap_vars(i, j), den: self.den.swap_vars(i, j) }
    }

    /// The polynomial this equals, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Result<MultiPoly> {
        self.num.exact_div(&self.den)
    }

    /// Substitute a rational function for a variable.
    pub fn substitute(&self, var: usize, value: &RationalFunction) -> RationalFunction {
        let n1 = self.num.degree_in(var);
        let n2 = self.den.degree_in(var);
        let nh = homogeneous_substitute(&self.num, var, &value.num, &value.den, n1);
        let dh = homogeneous_substitute(&self.den, var, &value.num, &value.den, n2);
        RationalFunction {
            num: &nh * &value.den.pow(n2),
            den: &dh * &value.den.pow(n1),
        }
        .tidy()
    }
}

/// `sum_k c_k a^k b^(n-k)` where `p = sum_k c_k var^k`.
fn homogeneous_substitute(p: &MultiPoly, var: usize, a: &MultiPoly, b: &MultiPoly, n: u32) -> MultiPoly {
    let mut groups: BTreeMap<u32, Vec<(Monomial, crate::scalar::Scalar)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        groups.entry(m.exp(var)).or_default().push((m.with_exp(var, 0), c.clone()));
    }
    let mut out = MultiPoly::zero(p.field());
    for (k, ts) in groups {
        let part = MultiPoly::from_terms(p.field(), ts);
        out = &out + &(&(&part * &a.pow(k)) * &b.pow(n - k));
    }
    out
}

/// Lagrange interpolation of `p` in the variable `var` through the given nodes.
///
/// `p` must be polynomial in `var` of degree below the number of nodes, and the
/// nodes must be pairwise distinct and free of `var`.
pub fn lagrange_interpolate(p: &RationalFunction, var: usize, nodes: &[RationalFunction]) -> Result<RationalFunction> {
    if !p.den.is_free_of(var) {
        return Err(Error::InvalidParameters("denominator involves the interpolation variable".into()));
    }
    if p.num.degree_in(var) as usize >= nodes.len() && !p.is_zero() {
        return Err(Error::DegreeTooHigh(format!("degree {} with {} nodes", p.num.degree_in(var), nodes.len())));
    }
    for (i, a) in nodes.iter().enumerate() {
        if !a.num.is_free_of(var) || !a.den.is_free_of(var) {
            return Err(Error::InvalidParameters("node involves the interpolation variable".into()));
        }
        if nodes[..i].iter().any(|b| a == b) {
            return Err(Error::RepeatedNode);
        }
    }
    let f = p.field();
    let xv = RationalFunction::from(MultiPoly::var(var, f));
    let mut acc = RationalFunction::from(MultiPoly::zero(f));
    for (j, w) in nodes.iter().enumerate() {
        let mut term = p.substitute(var, w);
        for (i, u) in nodes.iter().enumerate() {
            if i != j {
                term = term.mul(&xv.sub(u)).div(&w.sub(u))?;
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn interpolation_reproduces_polynomial() {
        let r = PolyRing::new(FieldSpec::Rationals, &[("t", 1), ("a", 3)]).unwrap();
        let p = RationalFunction::from(r.parse("a1*t^2 - t*a2 + a3").unwrap());
        let nodes: Vec<RationalFunction> =
            ["a1", "a2", "a3 + 1"].iter().map(|s| r.parse(s).unwrap().into()).collect();
        let l = lagrange_interpolate(&p, 0, &nodes).unwrap();
        assert_eq!(l, p);
        assert_eq!(l.to_poly().unwrap(), p.to_poly().unwrap());
        let two = [nodes[0].clone(), nodes[1].clone()];
        assert!(matches!(lagrange_interpolate(&p, 0, &two), Err(Error::DegreeTooHigh(_))));
        let rep = [nodes[0].clone(), nodes[0].clone(), nodes[1].clone()];
        assert_eq!(lagrange_interpolate(&p, 0, &rep), Err(Error::RepeatedNode));
    }

    #[test]
    fn rational_arithmetic() {
        let r = PolyRing::new(FieldSpec::Rationals, &[("x", 2)]).unwrap();
        let a = RationalFunction::new(r.one(), r.parse("x1 - x2").unwrap()).unwrap();
        let b = a.swap_vars(0, 1);
        assert!(a.add(&b).is_zero());
        let c = a.mul(&RationalFunction::from(r.parse("x1^2 - x2^2").unwrap()));
        assert_eq!(c.to_poly().unwrap(), r.parse("x1 + x2").unwrap());
        assert_eq!(a.to_poly(), Err(Error::InexactDivision));
        assert!(RationalFunction::new(r.one(), r.zero()).is_err());
    }
}
