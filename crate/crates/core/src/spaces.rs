//! Polynomial models of plethysm spaces and their SL₂ and 𝔰𝔩₂ actions.
//!
//! A symmetric factor on `n` variables with bound `e` models `Sym_n Sym^e E`
//! through monomial symmetric polynomials; an antisymmetric factor models
//! `⋀^n Sym^(e+n-1) E` through alternants. Each variable `x` of a factor with
//! homogenization degree `D` stands for `X/Y`, so `x^α` is `X^α Y^(D-α)`.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::combinat::{binom, binomial, multisets, subsets};
use crate::error::{Error, Result};
use crate::linalg::{exterior_power, lower_sym_power, Matrix, SparseVec};
use crate::poly::{alternant_from_exponents, symmetrize_orbit, Alphabet, Monomial, MultiPoly};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Symmetric,
    Antisymmetric,
}

/// One tensor factor: (anti)symmetric polynomials on an alphabet with a per-variable bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorSpec {
    alphabets: Vec<Alphabet>,
    vars: Vec<usize>,
    bound: u32,
    kind: FactorKind,
}

impl FactorSpec {
    /// Symmetric polynomials in the union of the alphabets, each variable of degree at most `bound`.
    pub fn symmetric(alphabets: &[&Alphabet], bound: u32) -> FactorSpec {
        FactorSpec::new(alphabets, bound, FactorKind::Symmetric)
    }

    /// `a_ρ` times symmetric polynomials with per-variable bound `bound`.
    pub fn antisymmetric(alphabets: &[&Alphabet], bound: u32) -> FactorSpec {
        FactorSpec::new(alphabets, bound, FactorKind::Antisymmetric)
    }

    fn new(alphabets: &[&Alphabet], bound: u32, kind: FactorKind) -> FactorSpec {
        let vars = alphabets.iter().flat_map(|a| a.vars()).collect();
        FactorSpec { alphabets: alphabets.iter().map(|a| (*a).clone()).collect(), vars, bound, kind }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    /// Per-variable homogenization degree.
    pub fn homog_degree(&self) -> u32 {
        match self.kind {
            FactorKind::Symmetric => self.bound,
            FactorKind::Antisymmetric => self.bound + self.vars.len().saturating_sub(1) as u32,
        }
    }

    pub fn dimension(&self) -> usize {
        binom(self.bound as usize + self.vars.len(), self.vars.len())
    }

    /// Basis keys: weakly (symmetric) or strictly (antisymmetric) increasing
    /// tuples of exponents in `0..=D_h`, in lexicographic order.
    pub fn keys(&self) -> Vec<Vec<u32>> {
        let top = self.homog_degree() as usize + 1;
        match self.kind {
            FactorKind::Symmetric => multisets(top, self.vars.len()),
            FactorKind::Antisymmetric => subsets(top, self.vars.len()),
        }
    }

    /// The monomial whose coefficient is the coordinate for `key`: exponents in decreasing order.
    fn leading_monomial(&self, key: &[u32]) -> Monomial {
        let mut m = Monomial::ONE;
        for (k, &v) in self.vars.iter().enumerate() {
            m = m.with_exp(v, key[key.len() - 1 - k]);
        }
        m
    }

    fn basis_element(&self, key: &[u32], field: FieldSpec) -> MultiPoly {
        match self.kind {
            FactorKind::Symmetric => symmetrize_orbit(self.leading_monomial(key), &self.vars, field),
            FactorKind::Antisymmetric => {
                let exps: Vec<u32> = key.iter().rev().copied().collect();
                alternant_from_exponents(&exps, &self.vars, field)
            }
        }
    }
}

fn join_names(alphs: &[Alphabet]) -> (String, String) {
    let names: Vec<&str> = alphs.iter().map(|a| a.name()).collect();
    let sizes: Vec<String> = alphs.iter().map(|a| a.len().to_string()).collect();
    (names.join(","), sizes.join("+"))
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (names, sizes) = join_names(&self.alphabets);
        let k = match self.kind {
            FactorKind::Symmetric => "Sym",
            FactorKind::Antisymmetric => "Alt",
        };
        write!(f, "{k}({names};{sizes};bound {})", self.bound)
    }
}

/// A tensor product of factors on pairwise disjoint variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    factors: Vec<FactorSpec>,
}

impl SpaceSpec {
    pub fn new(factors: Vec<FactorSpec>) -> Result<SpaceSpec> {
        let mut seen = Vec::new();
        for f in &factors {
            for v in f.vars() {
                if seen.contains(v) {
                    return Err(Error::InvalidParameters("factors share a variable".into()));
                }
                seen.push(*v);
            }
        }
        Ok(SpaceSpec { factors })
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|f| f.dimension()).product()
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.factors.len()];
        for i in (0..self.factors.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.factors[i + 1].dimension();
        }
        s
    }

    /// Split a basis index into per-factor key indices.
    pub fn split_index(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let d = self.factors[i].dimension();
            out[i] = idx % d;
            idx /= d;
        }
        out
    }

    /// Human-readable name of a basis element, e.g. `Sym[0,1]⊗Alt[0,2]`.
    pub fn basis_label(&self, idx: usize) -> String {
        let parts: Vec<String> = self
            .split_index(idx)
            .iter()
            .zip(&self.factors)
            .map(|(&k, f)| {
                let key = &f.keys()[k];
                let tag = if f.kind == FactorKind::Symmetric { "Sym" } else { "Alt" };
                format!("{tag}{key:?}")
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("⊗")
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

pub fn factor_basis(f: &FactorSpec, field: FieldSpec) -> Vec<MultiPoly> {
    f.keys().iter().map(|k| f.basis_element(k, field)).collect()
}

pub fn space_dimension(s: &SpaceSpec) -> usize {
    s.dimension()
}

/// Products of one basis element per factor, first factor varying slowest.
pub fn space_basis(s: &SpaceSpec, field: FieldSpec) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::one(field)];
    for f in &s.factors {
        let fb = factor_basis(f, field);
        out = out.iter().flat_map(|p| fb.iter().map(move |b| p * b)).collect();
    }
    out
}

/// The `idx`-th element of [`space_basis`], built directly.
pub fn space_basis_element(s: &SpaceSpec, idx: usize, field: FieldSpec) -> MultiPoly {
    let mut p = MultiPoly::one(field);
    for (k, f) in s.split_index(idx).into_iter().zip(&s.factors) {
        p = &p * &f.basis_element(&f.keys()[k], field);
    }
    p
}

/// Precomputed lookup tables for reading coordinates in a space.
pub struct CoordinateReader {
    space: SpaceSpec,
    key_index: Vec<FxHashMap<Vec<u32>, usize>>,
    strides: Vec<usize>,
    all_vars: Vec<usize>,
}

impl CoordinateReader {
    pub fn new(space: &SpaceSpec) -> CoordinateReader {
        let key_index = space
            .factors
            .iter()
            .map(|f| f.keys().into_iter().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let all_vars = space.factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
        CoordinateReader { space: space.clone(), key_index, strides: space.strides(), all_vars }
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    fn not_in(&self) -> Error {
        Error::NotInSpace(self.space.to_string())
    }

    /// Sparse coordinates, after checking membership.
    ///
    /// Distinct basis elements have disjoint supports, so each coordinate is the
    /// coefficient of a leading monomial; membership is (anti)symmetry of every
    /// factor together with the degree bounds.
    pub fn sparse(&self, p: &MultiPoly) -> Result<SparseVec> {
        let mut out: SparseVec = Vec::new();
        let mut orbit_total = 0usize;
        for (m, c) in p.terms() {
            let mut check = *m;
            for &v in &self.all_vars {
                check = check.with_exp(v, 0);
            }
            if check != Monomial::ONE {
                return Err(self.not_in());
            }
            let mut canon = *m;
            let mut negate = false;
            let mut idx = 0;
            let mut is_leading = true;
            let mut orbit = 1usize;
            for (fi, f) in self.space.factors.iter().enumerate() {
                let mut exps: Vec<u32> = f.vars.iter().map(|&v| m.exp(v)).collect();
                if exps.iter().any(|&e| e > f.homog_degree()) {
                    return Err(self.not_in());
                }
                let inversions = count_inversions_desc(&exps);
                exps.sort_unstable_by(|a, b| b.cmp(a));
                if f.kind == FactorKind::Antisymmetric {
                    if exps.windows(2).any(|w| w[0] == w[1]) {
                        return Err(self.not_in());
                    }
                    negate ^= inversions % 2 == 1;
                }
                if inversions != 0 {
                    is_leading = false;
                }
                for (k, &v) in f.vars.iter().enumerate() {
                    canon = canon.with_exp(v, exps[k]);
                }
                orbit *= orbit_size(&exps);
                if is_leading {
                    let key: Vec<u32> = exps.iter().rev().copied().collect();
                    idx += self.key_index[fi][&key] * self.strides[fi];
                }
            }
            let expected = if negate { -p.coeff(canon) } else { p.coeff(canon) };
            if expected != *c {
                return Err(self.not_in());
            }
            if is_leading {
                orbit_total += orbit;
                out.push((idx, c.clone()));
            }
        }
        if orbit_total != p.len() {
            return Err(self.not_in());
        }
        out.sort_unstable_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn dense(&self, p: &MultiPoly) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(p.field()); self.space.dimension()];
        for (i, c) in self.sparse(p)? {
            v[i] = c;
        }
        Ok(v)
    }
}

fn count_inversions_desc(e: &[u32]) -> usize {
    let mut n = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i] < e[j] {
                n += 1;
            }
        }
    }
    n
}

fn orbit_size(sorted: &[u32]) -> usize {
    let mut total = 1usize;
    let mut run = 0usize;
    let mut denom = 1usize;
    for (i, &e) in sorted.iter().enumerate() {
        total *= i + 1;
        if i > 0 && sorted[i - 1] == e {
            run += 1;
        } else {
            run = 1;
        }
        denom *= run;
    }
    total / denom
}

/// Coordinates of `p` in the basis of `s`; fails with `NotInSpace` otherwise.
pub fn coordinates(p: &MultiPoly, s: &SpaceSpec) -> Result<Vec<Scalar>> {
    CoordinateReader::new(s).dense(p)
}

/// The polynomial with the given coordinates.
pub fn from_coordinates(v: &[Scalar], s: &SpaceSpec, field: FieldSpec) -> MultiPoly {
    let mut acc = MultiPoly::zero(field);
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &space_basis_element(s, i, field).scale(c);
        }
    }
    acc
}

/// An element of GL₂ acting by `P(X, Y) ↦ P(aX + cY, bX + dY)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl GroupElement {
    /// Fails unless the matrix `(a b; c d)` is invertible.
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<GroupElement> {
        let g = GroupElement { a, b, c, d };
        if g.det().is_zero() {
            return Err(Error::InvalidParameters("singular group element".into()));
        }
        Ok(g)
    }

    pub fn identity(f: FieldSpec) -> GroupElement {
        GroupElement { a: f.one(), b: f.zero(), c: f.zero(), d: f.one() }
    }

    /// `U_γ = (1 γ; 0 1)`.
    pub fn upper_unipotent(gamma: Scalar) -> GroupElement {
        let f = gamma.field();
        GroupElement { a: f.one(), b: gamma, c: f.zero(), d: f.one() }
    }

    /// The transpose `(1 0; γ 1)` of `U_γ`.
    pub fn lower_unipotent(gamma: Scalar) -> GroupElement {
        let f = gamma.field();
        GroupElement { a: f.one(), b: f.zero(), c: gamma, d: f.one() }
    }

    pub fn diagonal(s: Scalar, t: Scalar) -> Result<GroupElement> {
        let f = s.field();
        GroupElement::new(s, f.zero(), f.zero(), t)
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn det(&self) -> Scalar {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn transpose(&self) -> GroupElement {
        GroupElement { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    /// Matrix product `self · o`, so that acting by it is acting by `o` then `self`.
    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Prime fields up to this size use every nonzero `γ`.
pub const ALL_GAMMAS_UP_TO: u64 = 101;

/// The generators used for equivariance checks: `U_γ` and its transpose for every
/// nonzero `γ` of a prime field with `p <= ALL_GAMMAS_UP_TO`, and `γ ∈ {1, -1, 2, 1/2, 3/5}`
/// over the rationals and larger prime fields. `U_1` and its transpose already
/// generate SL2 of a prime field. (`U_0` is the identity.)
pub fn sl2_generators(f: FieldSpec) -> Vec<GroupElement> {
    let gammas: Vec<Scalar> = match f {
        FieldSpec::Prime(p) if p <= ALL_GAMMAS_UP_TO => {
            f.elements().expect("prime field").into_iter().filter(|g| !g.is_zero()).collect()
        }
        _ => [(1, 1), (-1, 1), (2, 1), (1, 2), (3, 5)]
            .iter()
            .filter_map(|&(n, d)| Scalar::from_ratio(n, d, f).ok())
            .filter(|g| !g.is_zero())
            .collect(),
    };
    let mut out: Vec<GroupElement> = gammas.iter().cloned().map(GroupElement::upper_unipotent).collect();
    out.extend(gammas.into_iter().map(GroupElement::lower_unipotent));
    out
}

/// `A[β][α]` = coefficient of `x^β` in `(a x + c)^α (b x + d)^(D-α)`.
pub fn univariate_action(g: &GroupElement, deg: u32) -> Matrix {
    let f = g.field();
    let n = deg as usize + 1;
    let bin = |n: u32, k: u32| Scalar::from_bigint(&binomial(n as u64, k as u64).into(), f);
    let mut m = Matrix::zeros(f, n, n);
    for alpha in 0..=deg {
        let p1: Vec<Scalar> = (0..=alpha).map(|i| &bin(alpha, i) * &(&g.a.pow(i) * &g.c.pow(alpha - i))).collect();
        let r = deg - alpha;
        let p2: Vec<Scalar> = (0..=r).map(|j| &bin(r, j) * &(&g.b.pow(j) * &g.d.pow(r - j))).collect();
        for (i, x) in p1.iter().enumerate() {
            for (j, y) in p2.iter().enumerate() {
                let mut v = m.get(i + j, alpha as usize).clone();
                v.add_mul(x, y);
                m.set(i + j, alpha as usize, v);
            }
        }
    }
    m
}

/// The action matrix of `g` on a factor, in the order of [`FactorSpec::keys`].
pub fn factor_action_matrix(g: &GroupElement, f: &FactorSpec) -> Matrix {
    let a = univariate_action(g, f.homog_degree());
    match f.kind {
        FactorKind::Symmetric => lower_sym_power(&a, f.num_vars()),
        FactorKind::Antisymmetric => exterior_power(&a, f.num_vars()),
    }
}

/// The action of a group element on a space as a Kronecker product of factor matrices.
pub struct SpaceAction {
    field: FieldSpec,
    dims: Vec<usize>,
    strides: Vec<usize>,
    // Per factor, per column: nonzero entries.
    columns: Vec<Vec<SparseVec>>,
}

impl SpaceAction {
    pub fn new(g: &GroupElement, s: &SpaceSpec) -> SpaceAction {
        let mats: Vec<Matrix> = s.factors.iter().map(|f| factor_action_matrix(g, f)).collect();
        SpaceAction::from_factor_matrices(g.field(), &mats, s)
    }

    pub fn from_factor_matrices(field: FieldSpec, mats: &[Matrix], s: &SpaceSpec) -> SpaceAction {
        let columns = mats
            .iter()
            .map(|m| {
                (0..m.cols())
                    .map(|j| (0..m.rows()).filter_map(|i| {
                        let v = m.get(i, j);
                        (!v.is_zero()).then(|| (i, v.clone()))
                    }).collect())
                    .collect()
            })
            .collect();
        SpaceAction { field, dims: s.factors.iter().map(|f| f.dimension()).collect(), strides: s.strides(), columns }
    }

    /// The image of basis vector `idx`.
    pub fn column(&self, idx: usize) -> SparseVec {
        let mut cur: Vec<(usize, Scalar)> = Vec::new();
        let mut first = true;
        let mut rest = idx;
        let mut keys = vec![0; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            keys[i] = rest % self.dims[i];
            rest /= self.dims[i];
        }
        for (fi, &k) in keys.iter().enumerate() {
            let col = &self.columns[fi][k];
            if first {
                cur = col.iter().map(|(r, v)| (r * self.strides[fi], v.clone())).collect();
                first = false;
            } else {
                cur = cur
                    .iter()
                    .flat_map(|(i, a)| col.iter().map(move |(r, v)| (i + r * self.strides[fi], a * v)))
                    .collect();
            }
        }
        if first {
            return vec![(0, Scalar::one(self.field))];
        }
        cur.sort_unstable_by_key(|(i, _)| *i);
        cur.retain(|(_, v)| !v.is_zero());
        cur
    }

    /// Apply to a sparse vector, one tensor factor at a time.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut cur: FxHashMap<usize, Scalar> = v.iter().cloned().collect();
        for fi in 0..self.dims.len() {
            let (d, st) = (self.dims[fi], self.strides[fi]);
            let mut next: FxHashMap<usize, Scalar> = FxHashMap::default();
            for (idx, c) in cur {
                let k = (idx / st) % d;
                let base = idx - k * st;
                for (r, a) in &self.columns[fi][k] {
                    let t = base + r * st;
                    match next.get_mut(&t) {
                        Some(x) => x.add_mul(a, &c),
                        None => {
                            next.insert(t, a * &c);
                        }
                    }
                }
            }
            cur = next;
        }
        let mut out: SparseVec = cur.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_unstable_by_key(|(i, _)| *i);
        out
    }
}

fn check_member(s: &SpaceSpec, p: &MultiPoly) -> Result<()> {
    CoordinateReader::new(s).sparse(p).map(|_| ())
}

/// Homogenize each variable, substitute `X ↦ aX + cY`, `Y ↦ bX + dY`, and set `Y = 1`.
pub fn group_act(g: &GroupElement, s: &SpaceSpec, p: &MultiPoly) -> Result<MultiPoly> {
    check_member(s, p)?;
    let f = p.field();
    let mut images: FxHashMap<(usize, u32), MultiPoly> = FxHashMap::default();
    let mut out = MultiPoly::zero(f);
    for (m, c) in p.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for fac in &s.factors {
            let deg = fac.homog_degree();
            for &v in &fac.vars {
                let alpha = m.exp(v);
                let img = images.entry((v, alpha)).or_insert_with(|| {
                    let x = MultiPoly::var(v, f);
                    let lin1 = &x.scale(&g.a) + &MultiPoly::constant(g.c.clone());
                    let lin2 = &x.scale(&g.b) + &MultiPoly::constant(g.d.clone());
                    &lin1.pow(alpha) * &lin2.pow(deg - alpha)
                });
                t = &t * img;
            }
        }
        out = &out + &t;
    }
    Ok(out)
}

fn require_q(p: &MultiPoly) -> Result<()> {
    if !p.field().is_rationals() {
        return Err(Error::WrongCharacteristic);
    }
    Ok(())
}

/// `f = Σ ∂/∂x_i` over all variables of all factors (characteristic zero only).
pub fn sl2_f_act(s: &SpaceSpec, p: &MultiPoly) -> Result<MultiPoly> {
    require_q(p)?;
    check_member(s, p)?;
    let mut out = MultiPoly::zero(p.field());
    for fac in &s.factors {
        for &v in &fac.vars {
            out = &out + &p.partial_derivative(v);
        }
    }
    Ok(out)
}

/// `e = Σ X_i ∂/∂Y_i` in the homogenized model: `x^α ↦ (D - α) x^(α+1)`.
pub fn sl2_e_act(s: &SpaceSpec, p: &MultiPoly) -> Result<MultiPoly> {
    require_q(p)?;
    check_member(s, p)?;
    let f = p.field();
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        for fac in &s.factors {
            let deg = fac.homog_degree();
            for &v in &fac.vars {
                let a = m.exp(v);
                if a < deg {
                    terms.push((m.with_exp(v, a + 1), c * &Scalar::from_i64((deg - a) as i64, f)));
                }
            }
        }
    }
    Ok(MultiPoly::from_terms(f, terms))
}

/// `h = [e, f]`: `x^α ↦ Σ_i (2α_i - D) x^α`.
pub fn sl2_h_act(s: &SpaceSpec, p: &MultiPoly) -> Result<MultiPoly> {
    require_q(p)?;
    check_member(s, p)?;
    let f = p.field();
    let terms = p.terms().iter().map(|(m, c)| {
        let mut w = 0i64;
        for fac in &s.factors {
            for &v in &fac.vars {
                w += 2 * m.exp(v) as i64 - fac.homog_degree() as i64;
            }
        }
        (*m, c * &Scalar::from_i64(w, f))
    });
    Ok(MultiPoly::from_terms(f, terms))
}
