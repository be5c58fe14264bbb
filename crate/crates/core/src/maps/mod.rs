//! The evaluation maps between polynomial models and their left inverses.
//!
//! All maps live in one ring with alphabets `x` (size `N`), `y` and `z`
//! (size `M`), declared in that order; see [`Model`].

mod report;
mod verify;

pub use report::{Check, VerificationReport, Witness, REPORT_SCHEMA};
pub use verify::{
    equivariance_by_coordinates, sharpness_probe, verify_equivariance, verify_extgtl, verify_left_inverse,
    verify_theorem_hook, verify_theorem_trinomial, verify_wronskian,
};

use rayon::prelude::*;

use crate::combinat::divide_by_vandermonde;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{vandermonde, Alphabet, Monomial, MultiPoly, PolyRing, RationalFunction};
use crate::scalar::FieldSpec;
use crate::spaces::{space_basis_element, CoordinateReader, FactorSpec, SpaceSpec};

/// The ring `F[x_1..x_N, y_1..y_M, z_1..z_M]` shared by all maps.
#[derive(Clone, Debug)]
pub struct Model {
    ring: PolyRing,
    n: usize,
    m: usize,
}

pub fn model_ring(field: FieldSpec, n: usize, m: usize) -> Result<PolyRing> {
    PolyRing::new(field, &[("x", n), ("y", m), ("z", m)])
}

impl Model {
    pub fn new(field: FieldSpec, n: usize, m: usize) -> Result<Model> {
        Ok(Model { ring: model_ring(field, n, m)?, n, m })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x(&self) -> &Alphabet {
        self.ring.alphabet("x")
    }

    pub fn y(&self) -> &Alphabet {
        self.ring.alphabet("y")
    }

    pub fn z(&self) -> &Alphabet {
        self.ring.alphabet("z")
    }

    pub fn render(&self, p: &MultiPoly) -> String {
        self.ring.render(p)
    }
}

/// A tensor product, leaving out factors on empty alphabets (they are one-dimensional).
fn space(factors: Vec<FactorSpec>) -> SpaceSpec {
    SpaceSpec::new(factors.into_iter().filter(|f| f.num_vars() > 0).collect()).expect("disjoint alphabets")
}

fn check_in(s: &SpaceSpec, p: &MultiPoly) -> Result<()> {
    CoordinateReader::new(s).sparse(p).map(|_| ())
}

/// `ζ: P ↦ a_ρ(x) P`.
pub fn zeta(p: &MultiPoly, alph: &Alphabet) -> MultiPoly {
    &vandermonde(&alph.vars(), p.field()) * p
}

/// Exact division by `a_ρ(x)`.
pub fn zeta_inverse(p: &MultiPoly, alph: &Alphabet) -> Result<MultiPoly> {
    divide_by_vandermonde(p, &alph.vars())
}

/// `Λ_{≤d}[x]`, the model of `Sym_N Sym^d E`.
pub fn wronskian_domain(x: &Alphabet, d: u32) -> SpaceSpec {
    space(vec![FactorSpec::symmetric(&[x], d)])
}

/// `a_ρ(x) Λ_{≤d}[x]`, the model of `⋀^N Sym^(d+N-1) E`.
pub fn wronskian_codomain(x: &Alphabet, d: u32) -> SpaceSpec {
    space(vec![FactorSpec::antisymmetric(&[x], d)])
}

/// `Λ_{≤β}[z] ⊗ Λ_{≤ε}[x, y]`.
pub fn pi_domain(model: &Model, beta: u32, eps: u32) -> SpaceSpec {
    space(vec![
        FactorSpec::symmetric(&[model.z()], beta),
        FactorSpec::symmetric(&[model.x(), model.y()], eps),
    ])
}

/// `Λ_{≤ε}[x] ⊗ Λ_{≤ε+β}[y]`.
pub fn pi_codomain(model: &Model, beta: u32, eps: u32) -> SpaceSpec {
    space(vec![FactorSpec::symmetric(&[model.x()], eps), FactorSpec::symmetric(&[model.y()], eps + beta)])
}

fn z_to_y(model: &Model, p: &MultiPoly) -> MultiPoly {
    let (y, z) = (model.y(), model.z());
    p.map_monomials(|mut m| {
        for k in 0..model.m {
            let e = m.exp(z.var(k));
            if e > 0 {
                m = m.with_exp(z.var(k), 0).with_exp(y.var(k), m.exp(y.var(k)) + e);
            }
        }
        m
    })
}

/// `π: P(x, y, z) ↦ P(x, y, y)` on `Λ_{≤β}[z] ⊗ Λ_{≤ε}[x, y]`.
pub fn pi(model: &Model, p: &MultiPoly, beta: u32, eps: u32) -> Result<MultiPoly> {
    check_in(&pi_domain(model, beta, eps), p)?;
    Ok(z_to_y(model, p))
}

fn require_hook_params(model: &Model, d: u32) -> Result<()> {
    if model.n == 0 || model.n > d as usize + 1 {
        return Err(Error::InvalidParameters(format!("need 1 <= N <= d+1, got N={}, d={d}", model.n)));
    }
    Ok(())
}

/// `ψ = π` with `β = N-1`, `ε = d-N+1`.
pub fn psi(model: &Model, p: &MultiPoly, d: u32) -> Result<MultiPoly> {
    require_hook_params(model, d)?;
    let n = model.n as u32;
    pi(model, p, n - 1, d + 1 - n)
}

/// `φ = π` with `β = N`, `ε = d`.
pub fn phi(model: &Model, p: &MultiPoly, d: u32) -> Result<MultiPoly> {
    pi(model, p, model.n as u32, d)
}

/// `t_j = Σ_i (x_i, y_j)` acting by place permutation; `j` is 1-based.
pub fn t_j(model: &Model, j: usize, p: &MultiPoly) -> MultiPoly {
    let yj = model.y().var(j - 1);
    let mut out = MultiPoly::zero(p.field());
    for xi in model.x().vars() {
        out = &out + &p.swap_vars(xi, yj);
    }
    out
}

fn check_j(model: &Model, j: usize) -> Result<()> {
    if j == 0 || j > model.m {
        return Err(Error::OutOfRange(format!("j = {j} outside 1..={}", model.m)));
    }
    Ok(())
}

/// `L_j(P) = (1 + t_j)(P · ∏_i (z_j - x_i)/(y_j - x_i))` in the fraction field.
pub fn l_operator(model: &Model, j: usize, p: &RationalFunction) -> Result<RationalFunction> {
    check_j(model, j)?;
    let f = p.field();
    let (yj, zj) = (model.y().var(j - 1), model.z().var(j - 1));
    let mut num = MultiPoly::one(f);
    let mut den = MultiPoly::one(f);
    for xi in model.x().vars() {
        let x = MultiPoly::var(xi, f);
        num = &num * &(&MultiPoly::var(zj, f) - &x);
        den = &den * &(&MultiPoly::var(yj, f) - &x);
    }
    let q = p.mul(&RationalFunction::new(num, den)?);
    let mut out = q.clone();
    for xi in model.x().vars() {
        out = out.add(&q.swap_vars(xi, yj));
    }
    Ok(out)
}

/// `L_1 L_2 ... L_M` through [`l_operator`], reducing to a polynomial after each step when possible.
pub fn pi_tilde_literal(model: &Model, p: &MultiPoly) -> Result<MultiPoly> {
    let mut r = RationalFunction::from(p.clone());
    for j in (1..=model.m).rev() {
        r = l_operator(model, j, &r)?;
        if let Ok(q) = r.to_poly() {
            r = RationalFunction::from(q);
        }
    }
    r.to_poly().map_err(|_| Error::DenominatorNotCleared)
}

/// `L_j(p)` for a polynomial `p`, as the Newton form of the interpolant in `z_j`
/// through the nodes `y_j, x_1, ..., x_N` with values `p` and `(x_i, y_j) p`.
/// Every divided difference must be an exact polynomial quotient.
pub fn l_operator_newton(model: &Model, j: usize, p: &MultiPoly) -> Result<MultiPoly> {
    check_j(model, j)?;
    let f = p.field();
    let (yj, zj) = (model.y().var(j - 1), model.z().var(j - 1));
    let mut nodes = vec![yj];
    nodes.extend(model.x().vars());
    let mut dd: Vec<MultiPoly> = nodes.iter().map(|&w| if w == yj { p.clone() } else { p.swap_vars(w, yj) }).collect();
    let n = nodes.len();
    for k in 1..n {
        for i in (k..n).rev() {
            let diff = &dd[i] - &dd[i - 1];
            dd[i] = diff.div_by_difference(nodes[i], nodes[i - k]).map_err(|_| Error::DenominatorNotCleared)?;
        }
    }
    let z = MultiPoly::var(zj, f);
    let mut acc = dd[n - 1].clone();
    for k in (0..n - 1).rev() {
        acc = &(&acc * &(&z - &MultiPoly::var(nodes[k], f))) + &dd[k];
    }
    Ok(acc)
}

/// The left inverse `π̃ = L_1 L_2 ... L_M` of `π`, for inputs in the codomain of `π`.
pub fn pi_tilde(model: &Model, p: &MultiPoly, beta: u32, eps: u32) -> Result<MultiPoly> {
    check_in(&pi_codomain(model, beta, eps), p)?;
    pi_tilde_unchecked(model, p)
}

pub(crate) fn pi_tilde_unchecked(model: &Model, p: &MultiPoly) -> Result<MultiPoly> {
    let mut q = p.clone();
    for j in (1..=model.m).rev() {
        q = l_operator_newton(model, j, &q)?;
    }
    Ok(q)
}

/// `Λ_{≤N-1}[z] ⊗ Λ_{≤d-N+1}[x, y]`, the model of `Sym_M Sym^(N-1) E ⊗ Sym_(M+N) Sym^(d-N+1) E`.
pub fn hook_domain(model: &Model, d: u32) -> Result<SpaceSpec> {
    require_hook_params(model, d)?;
    let n = model.n as u32;
    Ok(pi_domain(model, n - 1, d + 1 - n))
}

/// `a_ρ(x) Λ_{≤d-N+1}[x] ⊗ Λ_{≤d}[y]`, the model of `⋀^N V ⊗ Sym_M V` for `V = Sym^d E`.
pub fn hook_codomain(model: &Model, d: u32) -> Result<SpaceSpec> {
    require_hook_params(model, d)?;
    let n = model.n as u32;
    Ok(space(vec![FactorSpec::antisymmetric(&[model.x()], d + 1 - n), FactorSpec::symmetric(&[model.y()], d)]))
}

/// `a_ρ(y_1, x) Λ_{≤d-N}[y_1, x] ⊗ Λ_{≤d}[y_2..y_M]`, the model of
/// `⋀^(N+1) V ⊗ Sym_(M-1) V`; `None` when `M = 0` or `N = d+1` (the space is zero).
pub fn delta_codomain(model: &Model, d: u32) -> Result<Option<SpaceSpec>> {
    require_hook_params(model, d)?;
    if model.m == 0 || model.n > d as usize {
        return Ok(None);
    }
    let y = model.y();
    let head = y.slice(0, 1);
    let tail = y.slice(1, model.m - 1);
    let n = model.n as u32;
    Ok(Some(space(vec![FactorSpec::antisymmetric(&[&head, model.x()], d - n), FactorSpec::symmetric(&[&tail], d)])))
}

/// `(ζ ⊗ 1) ∘ ψ`.
pub fn hook_iso(model: &Model, p: &MultiPoly, d: u32) -> Result<MultiPoly> {
    Ok(zeta(&psi(model, p, d)?, model.x()))
}

/// `δ_M: P ↦ (1 - t_1) P` on the model of `⋀^N V ⊗ Sym_M V`; zero when `M = 0`.
pub fn delta_poly(model: &Model, p: &MultiPoly, d: u32) -> Result<MultiPoly> {
    check_in(&hook_codomain(model, d)?, p)?;
    Ok(delta_unchecked(model, p))
}

pub(crate) fn delta_unchecked(model: &Model, p: &MultiPoly) -> MultiPoly {
    if model.m == 0 {
        return MultiPoly::zero(p.field());
    }
    p - &t_j(model, 1, p)
}

/// Images of the basis of `domain` as raw coefficient vectors.
#[derive(Clone, Debug)]
pub struct RawMatrix {
    pub matrix: Matrix,
    /// Row labels, in decreasing monomial order.
    pub monomials: Vec<Monomial>,
}

/// The matrix of `map` with one column per basis element of `domain` and one
/// row per monomial occurring in some image.
pub fn matrix_of<F>(map: F, domain: &SpaceSpec, f: FieldSpec) -> Result<RawMatrix>
where
    F: Fn(&MultiPoly) -> Result<MultiPoly> + Sync,
{
    let images = (0..domain.dimension())
        .into_par_iter()
        .map(|i| map(&space_basis_element(domain, i, f)))
        .collect::<Result<Vec<MultiPoly>>>()?;
    let mut monomials: Vec<Monomial> = images.iter().flat_map(|p| p.terms().iter().map(|(m, _)| *m)).collect();
    monomials.sort_unstable_by(|a, b| b.cmp(a));
    monomials.dedup();
    let mut matrix = Matrix::zeros(f, monomials.len(), images.len());
    for (j, p) in images.iter().enumerate() {
        for (m, c) in p.terms() {
            let i = monomials.binary_search_by(|x| m.cmp(x)).expect("monomial listed");
            matrix.set(i, j, c.clone());
        }
    }
    Ok(RawMatrix { matrix, monomials })
}
