//! Sparse multivariate polynomials over a [`FieldSpec`].

mod monomial;
mod ratfun;
mod ring;
mod symmetric;

pub use monomial::{Monomial, MAX_DEGREE, MAX_VARS};
pub use ratfun::{lagrange_interpolate, RationalFunction};
pub use ring::{Alphabet, PolyDisplay, PolyRing};
pub use symmetric::{
    alternant, alternant_from_exponents, is_antisymmetric, is_symmetric, orbit_exponents, symmetrize_orbit,
    vandermonde,
};

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A polynomial stored as terms in strictly decreasing monomial order with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: FieldSpec,
    terms: Vec<(Monomial, Scalar)>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec) -> MultiPoly {
        MultiPoly { field, terms: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> MultiPoly {
        MultiPoly::constant(Scalar::one(field))
    }

    pub fn constant(c: Scalar) -> MultiPoly {
        MultiPoly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Scalar) -> MultiPoly {
        let field = c.field();
        if c.is_zero() {
            return MultiPoly::zero(field);
        }
        MultiPoly { field, terms: vec![(m, c)] }
    }

    pub fn var(i: usize, field: FieldSpec) -> MultiPoly {
        MultiPoly::term(Monomial::var(i), Scalar::one(field))
    }

    /// Build from arbitrary terms, combining repeats and dropping zeros.
    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> MultiPoly {
        let mut v: Vec<(Monomial, Scalar)> = terms.into_iter().collect();
        v.sort_by_key(|t| Reverse(t.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            assert_eq!(c.field(), field, "field mismatch");
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MultiPoly { field, terms: out }
    }

    /// Build from a map with no zero coefficients required.
    pub fn from_map(field: FieldSpec, map: FxHashMap<Monomial, Scalar>) -> MultiPoly {
        let mut terms: Vec<(Monomial, Scalar)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| Reverse(t.0));
        MultiPoly { field, terms }
    }

    fn from_sorted(field: FieldSpec, terms: Vec<(Monomial, Scalar)>) -> MultiPoly {
        MultiPoly { field, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(self.field),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    /// True if no term involves `var`.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.exp(var) == 0)
    }

    fn check(&self, o: &MultiPoly) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        Ok(())
    }

    fn merge(&self, o: &MultiPoly, negate: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 > a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MultiPoly::from_sorted(self.field, out)
    }

    pub fn try_add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        Ok(self.merge(o, false))
    }

    pub fn try_sub(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        Ok(self.merge(o, true))
    }

    pub fn try_mul(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(MultiPoly::zero(self.field));
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return Ok(self.mul_term(*m, c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(o.mul_term(*m, c));
        }
        let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        acc.reserve(self.terms.len() * o.terms.len() / 2 + 1);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = *m1 * *m2;
                match acc.get_mut(&m) {
                    Some(c) => c.add_mul(c1, c2),
                    None => {
                        acc.insert(m, c1 * c2);
                    }
                }
            }
        }
        Ok(MultiPoly::from_map(self.field, acc))
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field);
        }
        let terms = self.terms.iter().map(|(t, d)| (*t * m, d * c)).filter(|(_, d)| !d.is_zero()).collect();
        MultiPoly::from_sorted(self.field, terms)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        self.mul_term(Monomial::ONE, c)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Apply a map on monomials, combining collisions.
    pub fn map_monomials(&self, f: impl Fn(Monomial) -> Monomial) -> MultiPoly {
        MultiPoly::from_terms(self.field, self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    /// Exchange two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut terms: Vec<(Monomial, Scalar)> = self.terms.iter().map(|(m, c)| (m.swap(i, j), c.clone())).collect();
        terms.sort_unstable_by_key(|t| Reverse(t.0));
        MultiPoly::from_sorted(self.field, terms)
    }

    /// Substitute `to` for `from` (both variables).
    pub fn rename_var(&self, from: usize, to: usize) -> MultiPoly {
        self.map_monomials(|m| {
            let e = m.exp(from);
            m.with_exp(from, 0).with_exp(to, m.exp(to) + e)
        })
    }

    /// Substitute a polynomial for a variable.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        let mut groups: BTreeMap<u32, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.exp(var)).or_default().push((m.with_exp(var, 0), c.clone()));
        }
        let mut out = MultiPoly::zero(self.field);
        let mut power = MultiPoly::one(self.field);
        let mut k = 0;
        for (e, ts) in groups {
            while k < e {
                power = &power * value;
                k += 1;
            }
            let part = MultiPoly::from_terms(self.field, ts);
            out = &out + &(&part * &power);
        }
        out
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            if e == 0 {
                return None;
            }
            Some((m.with_exp(var, e - 1), c * &Scalar::from_i64(e as i64, self.field)))
        });
        MultiPoly::from_terms(self.field, terms.filter(|(_, c)| !c.is_zero()))
    }

    /// Exact division by `x_u - x_v` via synthetic division in `x_u`.
    pub fn div_by_difference(&self, u: usize, v: usize) -> Result<MultiPoly> {
        assert_ne!(u, v);
        let n = self.degree_in(u) as usize;
        let mut levels: Vec<FxHashMap<Monomial, Scalar>> = vec![FxHashMap::default(); n + 1];
        for (m, c) in &self.terms {
            levels[m.exp(u) as usize].insert(m.with_exp(u, 0), c.clone());
        }
        // q_{k-1} = f_k + x_v q_k; remainder f_0 + x_v q_0 must vanish.
        let xv = Monomial::var(v);
        let mut out: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        let mut carry: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        for k in (0..=n).rev() {
            let mut cur = std::mem::take(&mut levels[k]);
            for (m, c) in carry.drain() {
                let m = m * xv;
                match cur.get_mut(&m) {
                    Some(d) => *d += &c,
                    None => {
                        cur.insert(m, c);
                    }
                }
            }
            cur.retain(|_, c| !c.is_zero());
            if k == 0 {
                if !cur.is_empty() {
                    return Err(Error::InexactDivision);
                }
                break;
            }
            for (m, c) in &cur {
                out.insert(m.with_exp(u, (k - 1) as u32), c.clone());
            }
            carry = cur;
        }
        Ok(MultiPoly::from_map(self.field, out))
    }

    /// Exact division by an arbitrary nonzero polynomial.
    pub fn exact_div(&self, d: &MultiPoly) -> Result<MultiPoly> {
        self.check(d)?;
        let (lm, lc) = d.leading().ok_or(Error::DivisionByZero)?.clone();
        let lc_inv = lc.inv()?;
        let mut rem: BTreeMap<Monomial, Scalar> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(lm).ok_or(Error::InexactDivision)?;
            let qc = &c * &lc_inv;
            for (dm, dc) in &d.terms[1..] {
                let t = qm * *dm;
                let e = rem.entry(t).or_insert_with(|| Scalar::zero(self.field));
                *e -= &(&qc * dc);
                if e.is_zero() {
                    rem.remove(&t);
                }
            }
            quot.push((qm, qc));
        }
        Ok(MultiPoly::from_sorted(self.field, quot))
    }

    /// Map coefficients into another field.
    pub fn reduce_into(&self, f: FieldSpec) -> Result<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((*m, c.reduce_into(f)?));
        }
        Ok(MultiPoly::from_terms(f, terms))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! polyop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                self.$imp(o).expect("field mismatch")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                self.$imp(&o).expect("field mismatch")
            }
        }
    };
}

polyop!(Add, add, try_add);
polyop!(Sub, sub, try_sub);
polyop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::from_sorted(self.field, self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }
}
