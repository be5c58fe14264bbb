//! The tensor model `⋀^N V ⊗ Sym_M V` over `V = Sym^d E`, with basis
//! `v_0, ..., v_d` where `v_i = X^(d-i) Y^i`.
//!
//! Wedge keys are strictly increasing, multiset keys weakly increasing.
//! Multiset keys stand for orbit sums `v_(a)`: the sum of `v_{c_1} ⊗ ... ⊗ v_{c_M}`
//! over the distinct rearrangements `c` of `a`.

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::combinat::{binom, enumerate_ssyt, hook_shape, multisets, subsets, Tableau};
use crate::error::{Error, Result};
use crate::linalg::{exterior_power, lower_sym_power, Matrix, SparseEchelon, SparseVec};
use crate::poly::{alternant_from_exponents, symmetrize_orbit, Alphabet, Monomial, MultiPoly};
use crate::scalar::{FieldSpec, Scalar};
use crate::spaces::{FactorSpec, GroupElement, SpaceSpec};

/// Key of a basis vector `v_b ⊗ v_(a)`.
pub type WedgeSymKey = (Vec<u32>, Vec<u32>);

/// `wedge{0,2,4}⊗mult(2,2,5)`.
pub fn key_label(wedge: &[u32], mult: &[u32]) -> String {
    let w: Vec<String> = wedge.iter().map(|x| x.to_string()).collect();
    let m: Vec<String> = mult.iter().map(|x| x.to_string()).collect();
    format!("wedge{{{}}}⊗mult({})", w.join(","), m.join(","))
}

/// Sort in place, returning the sign of the sorting permutation, or `None`
/// if two entries coincide.
fn sort_with_sign(v: &mut [u32]) -> Option<bool> {
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(negative)
}

/// The canonical basis of `⋀^N V ⊗ Sym_M V`: wedge keys vary slowest.
#[derive(Clone, Debug)]
pub struct WeylBasis {
    wedges: Vec<Vec<u32>>,
    mults: Vec<Vec<u32>>,
    wedge_index: FxHashMap<Vec<u32>, usize>,
    mult_index: FxHashMap<Vec<u32>, usize>,
}

impl WeylBasis {
    pub fn new(d: u32, n: usize, m: usize) -> WeylBasis {
        let wedges = subsets(d as usize + 1, n);
        let mults = multisets(d as usize + 1, m);
        let wedge_index = wedges.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mult_index = mults.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        WeylBasis { wedges, mults, wedge_index, mult_index }
    }

    pub fn len(&self) -> usize {
        self.wedges.len() * self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn wedges(&self) -> &[Vec<u32>] {
        &self.wedges
    }

    pub fn mults(&self) -> &[Vec<u32>] {
        &self.mults
    }

    pub fn index(&self, wedge: &[u32], mult: &[u32]) -> Option<usize> {
        Some(self.wedge_index.get(wedge)? * self.mults.len() + self.mult_index.get(mult)?)
    }

    pub fn key(&self, idx: usize) -> (&[u32], &[u32]) {
        let k = self.mults.len();
        (&self.wedges[idx / k], &self.mults[idx % k])
    }
}

/// `dim ⋀^N V ⊗ Sym_M V = C(d+1, N) C(d+M, M)`.
pub fn weyl_dimension(d: u32, n: usize, m: usize) -> usize {
    binom(d as usize + 1, n) * binom(d as usize + m, m)
}

/// An element of `⋀^N V ⊗ Sym_M V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSymVector {
    d: u32,
    n: usize,
    m: usize,
    field: FieldSpec,
    coeffs: BTreeMap<WedgeSymKey, Scalar>,
}

impl WedgeSymVector {
    pub fn zero(d: u32, n: usize, m: usize, field: FieldSpec) -> WedgeSymVector {
        WedgeSymVector { d, n, m, field, coeffs: BTreeMap::new() }
    }

    /// `v_{b_1} ∧ ... ∧ v_{b_N} ⊗ v_(a)` for arbitrary (unsorted) tuples.
    pub fn basis(d: u32, wedge: &[u32], mult: &[u32], field: FieldSpec) -> Result<WedgeSymVector> {
        let mut w = WedgeSymVector::zero(d, wedge.len(), mult.len(), field);
        w.add_term(wedge, mult, &field.one())?;
        Ok(w)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn wedge_degree(&self) -> usize {
        self.n
    }

    pub fn sym_degree(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeSymKey, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, wedge: &[u32], mult: &[u32]) -> Scalar {
        self.coeffs.get(&(wedge.to_vec(), mult.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Add `c · v_{wedge} ⊗ v_(mult)`, canonicalizing the key.
    pub fn add_term(&mut self, wedge: &[u32], mult: &[u32], c: &Scalar) -> Result<()> {
        if wedge.len() != self.n || mult.len() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "key of sizes ({}, {}) in a space of degrees ({}, {})",
                wedge.len(),
                mult.len(),
                self.n,
                self.m
            )));
        }
        if let Some(&bad) = wedge.iter().chain(mult).find(|&&x| x > self.d) {
            return Err(Error::OutOfRange(format!("index {bad} exceeds d = {}", self.d)));
        }
        let mut w = wedge.to_vec();
        let Some(neg) = sort_with_sign(&mut w) else {
            return Ok(());
        };
        let mut a = mult.to_vec();
        a.sort_unstable();
        let c = c.reduce_into(self.field)?;
        let c = if neg { -c } else { c };
        let key = (w, a);
        let slot = self.coeffs.entry(key.clone()).or_insert_with(|| self.field.zero());
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    fn check_same_space(&self, o: &WedgeSymVector) -> Result<()> {
        if (self.d, self.n, self.m) != (o.d, o.n, o.m) {
            return Err(Error::ShapeMismatch("vectors live in different spaces".into()));
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &WedgeSymVector) -> Result<WedgeSymVector> {
        self.check_same_space(o)?;
        let mut out = self.clone();
        for ((w, a), c) in &o.coeffs {
            out.add_term(w, a, c)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &WedgeSymVector) -> Result<WedgeSymVector> {
        self.try_add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> WedgeSymVector {
        let mut out = WedgeSymVector::zero(self.d, self.n, self.m, self.field);
        for (k, v) in &self.coeffs {
            let x = v * c;
            if !x.is_zero() {
                out.coeffs.insert(k.clone(), x);
            }
        }
        out
    }

    pub fn to_sparse(&self, basis: &WeylBasis) -> SparseVec {
        let mut v: SparseVec = self
            .coeffs
            .iter()
            .map(|((w, a), c)| (basis.index(w, a).expect("key in basis"), c.clone()))
            .collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        v
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let basis = WeylBasis::new(self.d, self.n, self.m);
        let mut out = vec![self.field.zero(); basis.len()];
        for (i, c) in self.to_sparse(&basis) {
            out[i] = c;
        }
        out
    }

    pub fn from_sparse(d: u32, n: usize, m: usize, field: FieldSpec, basis: &WeylBasis, v: &SparseVec) -> WedgeSymVector {
        let mut out = WedgeSymVector::zero(d, n, m, field);
        for (i, c) in v {
            if !c.is_zero() {
                let (w, a) = basis.key(*i);
                out.coeffs.insert((w.to_vec(), a.to_vec()), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for WedgeSymVector {
    /// Like `wedge{0,2,4}⊗mult(2,2,5) - 2·wedge{1,2,4}⊗mult(0,2,2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, ((w, a), c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            write!(f, "{}", key_label(w, a))?;
        }
        Ok(())
    }
}

/// Add `Σ_c (v_c ∧ v_b) ⊗ v_(a∖c)` over the distinct values `c` of `a`.
fn add_split_terms(out: &mut WedgeSymVector, a: &[u32], b: &[u32], coeff: &Scalar) -> Result<()> {
    let mut a = a.to_vec();
    a.sort_unstable();
    let mut wedge = Vec::with_capacity(b.len() + 1);
    for (i, &c) in a.iter().enumerate() {
        if i > 0 && a[i - 1] == c {
            continue;
        }
        let mut rest = a.clone();
        rest.remove(i);
        wedge.clear();
        wedge.push(c);
        wedge.extend_from_slice(b);
        out.add_term(&wedge, &rest, coeff)?;
    }
    Ok(())
}

/// `F_Δ(t)` for a tableau of hook shape `(M+1, 1^(N-1))` with entries at most `d`.
///
/// With first row `a_0, ..., a_M` and column entries `b_1, ..., b_(N-1)` below
/// the corner, this is the sum over distinct rearrangements `c` of the first row
/// of `(v_{c_0} ∧ v_{b_1} ∧ ... ) ⊗ v_{c_1} ⊗ ... ⊗ v_{c_M}`.
pub fn f_delta(t: &Tableau, d: u32, field: FieldSpec) -> Result<WedgeSymVector> {
    let rows = t.rows();
    if rows.is_empty() || rows[1..].iter().any(|r| r.len() != 1) {
        return Err(Error::ShapeMismatch(format!("{t} does not have hook shape")));
    }
    if t.max_entry() > d {
        return Err(Error::OutOfRange(format!("entry {} exceeds d = {d}", t.max_entry())));
    }
    let a = &rows[0];
    let b: Vec<u32> = rows[1..].iter().map(|r| r[0]).collect();
    let mut out = WedgeSymVector::zero(d, b.len() + 1, a.len() - 1, field);
    add_split_terms(&mut out, a, &b, &field.one())?;
    Ok(out)
}

/// `δ_M`: `v_b ⊗ v_(a) ↦ Σ_c (v_c ∧ v_b) ⊗ v_(a∖c)`, landing in `⋀^(N+1) V ⊗ Sym_(M-1) V`.
/// For `M = 0` the map is zero with codomain `⋀^(N+1) V ⊗ Sym_0 V`.
pub fn delta_apply(w: &WedgeSymVector) -> Result<WedgeSymVector> {
    let m_out = w.m.saturating_sub(1);
    let mut out = WedgeSymVector::zero(w.d, w.n + 1, m_out, w.field);
    if w.m == 0 {
        return Ok(out);
    }
    for ((b, a), c) in &w.coeffs {
        add_split_terms(&mut out, a, b, c)?;
    }
    Ok(out)
}

/// Columns of `δ_M` as sparse vectors in the canonical codomain basis, plus the codomain dimension.
pub fn delta_columns(m: usize, n: usize, d: u32, f: FieldSpec) -> Result<(Vec<SparseVec>, usize)> {
    let dom = WeylBasis::new(d, n, m);
    let cod = WeylBasis::new(d, n + 1, m.saturating_sub(1));
    let mut cols = Vec::with_capacity(dom.len());
    for idx in 0..dom.len() {
        let (b, a) = dom.key(idx);
        let img = delta_apply(&WedgeSymVector::basis(d, b, a, f)?)?;
        cols.push(img.to_sparse(&cod));
    }
    Ok((cols, cod.len()))
}

/// The matrix of `δ_M` between canonical bases.
pub fn delta_matrix(m: usize, n: usize, d: u32, f: FieldSpec) -> Result<Matrix> {
    let (cols, rows) = delta_columns(m, n, d, f)?;
    let mut out = Matrix::zeros(f, rows, cols.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, v) in col {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Null space basis by exact elimination.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

/// `dim ker δ_M`, by sparse elimination on the columns.
pub fn delta_kernel_dimension(m: usize, n: usize, d: u32, f: FieldSpec) -> Result<usize> {
    let (cols, _) = delta_columns(m, n, d, f)?;
    let total = cols.len();
    let mut e = SparseEchelon::new(f);
    for c in cols {
        e.insert(c);
    }
    Ok(total - e.rank())
}

/// Whether the `F_Δ(t)` for semistandard `t` of shape `(M+1, 1^(N-1))` with
/// entries at most `d` are independent, killed by `δ_M`, and span `ker δ_M`.
pub fn ssyt_span_check(m: usize, n: usize, d: u32, f: FieldSpec) -> Result<bool> {
    let shape = hook_shape(m as u32, n as u32)?;
    let basis = WeylBasis::new(d, n, m);
    let mut e = SparseEchelon::new(f);
    let mut count = 0;
    for t in enumerate_ssyt(&shape, d) {
        let v = f_delta(&t, d, f)?;
        if !delta_apply(&v)?.is_zero() {
            return Ok(false);
        }
        if !e.insert(v.to_sparse(&basis)) {
            return Ok(false);
        }
        count += 1;
    }
    Ok(count == delta_kernel_dimension(m, n, d, f)?)
}

/// The matrix of `g` on `Sym^d E` in the basis `X^d, X^(d-1) Y, ..., Y^d`:
/// column `i` holds the coefficients of `(aX + cY)^(d-i) (bX + dY)^i`.
pub fn symd_matrix(g: &GroupElement, d: u32) -> Matrix {
    let f = g.field();
    let n = d as usize + 1;
    let mut out = Matrix::zeros(f, n, n);
    let bin = |n: u32, k: u32| Scalar::from_i64(binom(n as usize, k as usize) as i64, f);
    for i in 0..=d {
        let p = d - i;
        // X^k Y^(p-k) from the first factor, X^l Y^(i-l) from the second.
        for k in 0..=p {
            let x = &bin(p, k) * &(&g.a.pow(k) * &g.c.pow(p - k));
            for l in 0..=i {
                let y = &bin(i, l) * &(&g.b.pow(l) * &g.d.pow(i - l));
                let j = (d - k - l) as usize;
                let mut v = out.get(j, i as usize).clone();
                v.add_mul(&x, &y);
                out.set(j, i as usize, v);
            }
        }
    }
    out
}

/// The action of `g` on `⋀^N V ⊗ Sym_M V` induced from [`symd_matrix`].
pub fn induced_act(g: &GroupElement, w: &WedgeSymVector) -> Result<WedgeSymVector> {
    if g.field() != w.field {
        return Err(Error::FieldMismatch(g.field().to_string(), w.field.to_string()));
    }
    let s = symd_matrix(g, w.d);
    let ext = exterior_power(&s, w.n);
    let sym = lower_sym_power(&s, w.m);
    let basis = WeylBasis::new(w.d, w.n, w.m);
    let cols = |mat: &Matrix, j: usize| -> Vec<(usize, Scalar)> {
        (0..mat.rows()).filter_map(|i| {
            let v = mat.get(i, j);
            (!v.is_zero()).then(|| (i, v.clone()))
        }).collect()
    };
    let mut acc: FxHashMap<usize, Scalar> = FxHashMap::default();
    let k = basis.mults().len();
    for ((b, a), c) in &w.coeffs {
        let wi = basis.wedge_index[b];
        let mi = basis.mult_index[a];
        let ec = cols(&ext, wi);
        let sc = cols(&sym, mi);
        for (r1, x) in &ec {
            let xc = x * c;
            for (r2, y) in &sc {
                acc.entry(r1 * k + r2).or_insert_with(|| w.field.zero()).add_mul(&xc, y);
            }
        }
    }
    let mut v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by_key(|(i, _)| *i);
    Ok(WedgeSymVector::from_sparse(w.d, w.n, w.m, w.field, &basis, &v))
}

/// The polynomial space matching `⋀^N V ⊗ Sym_M V`: alternants on `wedge`
/// (homogenization degree `d`) times symmetric polynomials on `mult` of degree at most `d`.
pub fn polynomial_space(wedge: &[&Alphabet], mult: &[&Alphabet], d: u32) -> Result<SpaceSpec> {
    let n: usize = wedge.iter().map(|a| a.len()).sum();
    if n > d as usize + 1 {
        return Err(Error::OutOfRange(format!("N = {n} exceeds d + 1 = {}", d + 1)));
    }
    let mut factors = Vec::new();
    if n > 0 {
        factors.push(FactorSpec::antisymmetric(wedge, d + 1 - n as u32));
    }
    if mult.iter().any(|a| !a.is_empty()) {
        factors.push(FactorSpec::symmetric(mult, d));
    }
    SpaceSpec::new(factors)
}

/// `v_i ↦ x^(d-i)`: a wedge key becomes the alternant `det(x_j^(d-b_i))` on
/// `wedge_vars` and a multiset key the orbit sum of `∏ y_j^(d-a_j)` on `mult_vars`.
pub fn to_polynomial_model(w: &WedgeSymVector, wedge_vars: &[usize], mult_vars: &[usize]) -> Result<MultiPoly> {
    if wedge_vars.len() != w.n || mult_vars.len() != w.m {
        return Err(Error::ShapeMismatch(format!(
            "need {} wedge and {} multiset variables, got {} and {}",
            w.n,
            w.m,
            wedge_vars.len(),
            mult_vars.len()
        )));
    }
    let f = w.field;
    let mut wedge_cache: FxHashMap<&[u32], MultiPoly> = FxHashMap::default();
    let mut out = MultiPoly::zero(f);
    for ((b, a), c) in &w.coeffs {
        let alt = wedge_cache
            .entry(b)
            .or_insert_with(|| {
                let exps: Vec<u32> = b.iter().map(|&i| w.d - i).collect();
                alternant_from_exponents(&exps, wedge_vars, f)
            })
            .clone();
        let mut m = Monomial::ONE;
        for (&v, &i) in mult_vars.iter().zip(a) {
            m = m.with_exp(v, w.d - i);
        }
        let sym = symmetrize_orbit(m, mult_vars, f);
        out = &out + &(&alt * &sym).scale(c);
    }
    Ok(out)
}

/// The two degree-two actions written entry by entry, rows and columns
/// in the orders `X⊗X, Y⊗Y, X⊗Y+Y⊗X` and `X², Y², XY`.
pub fn degree_two_displays(g: &GroupElement) -> (Matrix, Matrix) {
    let f = g.field();
    let (a, b, c, d) = (&g.a, &g.b, &g.c, &g.d);
    let two = Scalar::from_i64(2, f);
    let ad_bc = &(a * d) + &(b * c);
    let first = Matrix::from_rows(
        f,
        vec![
            vec![a * a, b * b, a * b],
            vec![c * c, d * d, c * d],
            vec![&two * &(a * c), &two * &(b * d), ad_bc.clone()],
        ],
    );
    let second = Matrix::from_rows(
        f,
        vec![
            vec![a * a, b * b, &two * &(a * b)],
            vec![c * c, d * d, &two * &(c * d)],
            vec![a * c, b * d, ad_bc],
        ],
    );
    (first, second)
}

/// A basis of the maps `T` with `T·A = B·T` for every pair `(A, B)`.
pub fn intertwiners(pairs: &[(Matrix, Matrix)]) -> Result<Vec<Matrix>> {
    let Some((a0, b0)) = pairs.first() else {
        return Err(Error::InvalidParameters("no actions given".into()));
    };
    let f = a0.field();
    let (n, m) = (a0.rows(), b0.rows());
    // Unknown t[i][j] sits at column i*n + j; T is m × n.
    let mut rows = Vec::new();
    for (a, b) in pairs {
        if a.rows() != n || a.cols() != n || b.rows() != m || b.cols() != m {
            return Err(Error::ShapeMismatch("actions of different sizes".into()));
        }
        for i in 0..m {
            for j in 0..n {
                // (T A)[i][j] - (B T)[i][j] = Σ_k t[i][k] A[k][j] - Σ_k B[i][k] t[k][j]
                let mut row = vec![f.zero(); m * n];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + a.get(k, j);
                }
                for k in 0..m {
                    row[k * n + j] = &row[k * n + j] - b.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(f, rows);
    Ok(sys
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::from_rows(f, v.chunks(n).map(|c| c.to_vec()).collect()))
        .collect())
}

/// Searches the span of square `basis` over a prime field for an invertible element.
/// `None` over the rationals or when the span has more than `limit` elements.
pub fn find_invertible(basis: &[Matrix], f: FieldSpec, limit: u64) -> Option<Option<Matrix>> {
    let elems = f.elements()?;
    let p = elems.len() as u64;
    let total = p.checked_pow(basis.len() as u32).filter(|&t| t <= limit)?;
    let Some(first) = basis.first() else {
        return Some(None);
    };
    for code in 0..total {
        let mut t = Matrix::zeros(f, first.rows(), first.cols());
        let mut rest = code;
        for b in basis {
            let c = &elems[(rest % p) as usize];
            rest /= p;
            if c.is_zero() {
                continue;
            }
            for i in 0..t.rows() {
                for j in 0..t.cols() {
                    let v = t.get(i, j) + &(c * b.get(i, j));
                    t.set(i, j, v);
                }
            }
        }
        if t.determinant().is_ok_and(|d| !d.is_zero()) {
            return Some(Some(t));
        }
    }
    Some(None)
}

/// Coefficient matrices of the displays along `U_γ` and its transpose, with `γ`
/// an indeterminate: `display(U_γ) = Σ_k γ^k C_k`. Intertwining every `C_k` is
/// intertwining the unipotent generators over an infinite field of the same characteristic.
pub fn generic_display_pairs(f: FieldSpec) -> Result<Vec<(Matrix, Matrix)>> {
    let q = FieldSpec::Rationals;
    let mut out = Vec::new();
    for lower in [false, true] {
        let at = |n: i64| {
            let gamma = Scalar::from_i64(n, q);
            let g = if lower { GroupElement::lower_unipotent(gamma) } else { GroupElement::upper_unipotent(gamma) };
            degree_two_displays(&g)
        };
        let (p0, p1, p2) = (at(0), at(1), at(2));
        let half = Scalar::from_ratio(1, 2, q)?;
        // Entries have degree at most two in γ, so three samples determine them.
        let coeffs = |m0: &Matrix, m1: &Matrix, m2: &Matrix| -> Result<[Matrix; 3]> {
            let mut c = [Matrix::zeros(f, 3, 3), Matrix::zeros(f, 3, 3), Matrix::zeros(f, 3, 3)];
            for i in 0..3 {
                for j in 0..3 {
                    let (v0, v1, v2) = (m0.get(i, j), m1.get(i, j), m2.get(i, j));
                    let c2 = &(&(v2 - &(v1 + v1)) + v0) * &half;
                    let c1 = &(v1 - v0) - &c2;
                    for (k, v) in [v0.clone(), c1, c2].into_iter().enumerate() {
                        c[k].set(i, j, v.reduce_into(f)?);
                    }
                }
            }
            Ok(c)
        };
        let a = coeffs(&p0.0, &p1.0, &p2.0)?;
        let b = coeffs(&p0.1, &p1.1, &p2.1)?;
        out.extend(a.into_iter().zip(b));
    }
    Ok(out)
}

/// Whether some element of the span of square `basis` is invertible over an
/// extension of the field: the determinant of `Σ t_i B_i` is a nonzero polynomial in the `t_i`.
pub fn span_has_invertible(basis: &[Matrix]) -> Result<bool> {
    let Some(first) = basis.first() else { return Ok(false) };
    let f = first.field();
    let n = first.rows();
    if basis.len() > crate::poly::MAX_VARS {
        return Err(Error::TooManyVariables(basis.len()));
    }
    let entry = |i: usize, j: usize| -> MultiPoly {
        let mut p = MultiPoly::zero(f);
        for (k, b) in basis.iter().enumerate() {
            p = &p + &MultiPoly::var(k, f).scale(b.get(i, j));
        }
        p
    };
    let m: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    Ok(!poly_determinant(&m, f).is_zero())
}

fn poly_determinant(m: &[Vec<MultiPoly>], f: FieldSpec) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(f);
    }
    // Laplace expansion along the first row.
    let mut acc = MultiPoly::zero(f);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &poly_determinant(&minor, f);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `F_Δ([[0,2],[1]]) - F_Δ([[0,1],[2]])` in `Δ^(2,1) Sym^2 E`.
pub fn hook_difference_vector(f: FieldSpec) -> Result<WedgeSymVector> {
    let t1 = Tableau::new(vec![vec![0, 2], vec![1]])?;
    let t2 = Tableau::new(vec![vec![0, 1], vec![2]])?;
    f_delta(&t1, 2, f)?.try_sub(&f_delta(&t2, 2, f)?)
}

/// The first of `gens` that moves `w`, if any.
pub fn first_moving(w: &WedgeSymVector, gens: &[GroupElement]) -> Result<Option<GroupElement>> {
    for g in gens {
        if &induced_act(g, w)? != w {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::hook_dimension;
    use crate::poly::PolyRing;
    use crate::spaces::group_act;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn tab(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    #[test]
    fn worked_f_delta() {
        let v = f_delta(&tab("[[0,2,2,5],[2],[4]]"), 5, Q).unwrap();
        let mut expect = WedgeSymVector::basis(5, &[0, 2, 4], &[2, 2, 5], Q).unwrap();
        expect.add_term(&[2, 4, 5], &[0, 2, 2], &Q.one()).unwrap();
        assert_eq!(v, expect);
        assert_eq!(v.to_string(), "wedge{0,2,4}⊗mult(2,2,5) + wedge{2,4,5}⊗mult(0,2,2)");
    }

    #[test]
    fn f_delta_edge_shapes() {
        let col = f_delta(&tab("[[3],[0],[1]]"), 3, Q).unwrap();
        assert_eq!(col, WedgeSymVector::basis(3, &[0, 1, 3], &[], Q).unwrap());
        let row = f_delta(&tab("[[1,1,2]]"), 2, Q).unwrap();
        let mut expect = WedgeSymVector::basis(2, &[1], &[1, 2], Q).unwrap();
        expect.add_term(&[2], &[1, 1], &Q.one()).unwrap();
        assert_eq!(row, expect);
        assert!(matches!(f_delta(&tab("[[0,1],[1,2]]"), 3, Q), Err(Error::ShapeMismatch(_))));
        assert!(f_delta(&tab("[[0,4]]"), 3, Q).is_err());
    }

    #[test]
    fn wedge_normal_form() {
        let v = WedgeSymVector::basis(3, &[2, 0], &[1, 0], Q).unwrap();
        assert_eq!(v.coeff(&[0, 2], &[0, 1]), -Q.one());
        assert!(WedgeSymVector::basis(3, &[1, 1], &[], Q).unwrap().is_zero());
        let s = v.try_add(&v).unwrap();
        assert_eq!(s.coeff(&[0, 2], &[0, 1]), Scalar::from_i64(-2, Q));
        assert!(v.try_sub(&v).unwrap().is_zero());
    }

    #[test]
    fn delta_small_cases() {
        let z = delta_matrix(0, 2, 3, Q).unwrap();
        assert!(z.is_zero());
        assert_eq!((z.rows(), z.cols()), (4, 6));
        let m = delta_matrix(1, 1, 2, Q).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(delta_kernel_dimension(1, 2, 2, Q).unwrap(), 8);
        assert_eq!(kernel_basis(&delta_matrix(1, 2, 2, Q).unwrap()).len(), 8);
        // δ on a basis vector is F_Δ of the tableau with the multiset along the row.
        let w = WedgeSymVector::basis(4, &[1, 3], &[0, 2], Q).unwrap();
        assert_eq!(delta_apply(&w).unwrap(), f_delta(&tab("[[0,2],[1],[3]]"), 4, Q).unwrap());
    }

    #[test]
    fn delta_squares_to_zero() {
        for f in [Q, FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()] {
            let a = delta_matrix(2, 1, 3, f).unwrap();
            let b = delta_matrix(1, 2, 3, f).unwrap();
            assert!(b.try_mul(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn span_check_grid() {
        for f in [Q, FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()] {
            for m in 0..=2 {
                for n in 1..=3 {
                    for d in 0..=3u32 {
                        assert!(ssyt_span_check(m, n, d, f).unwrap(), "({m},{n},{d}) over {f}");
                        let h = hook_dimension(m as u32, n as u32, d).unwrap();
                        assert_eq!(h, delta_kernel_dimension(m, n, d, f).unwrap().into());
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_acts_diagonally() {
        let q = Scalar::from_i64(3, Q);
        let g = GroupElement::diagonal(Q.one(), q.clone()).unwrap();
        let m = symd_matrix(&g, 4);
        for i in 0..5 {
            for j in 0..5 {
                let e = if i == j { q.pow(i as u32) } else { Q.zero() };
                assert_eq!(m.get(i, j), &e);
            }
        }
        assert_eq!(symd_matrix(&GroupElement::identity(Q), 3), Matrix::identity(Q, 4));
    }

    #[test]
    fn degree_two_matrices() {
        let s = |n: i64| Scalar::from_i64(n, Q);
        let (a, b, c, d) = (s(2), s(3), s(5), s(7));
        let g = GroupElement::new(a.clone(), b.clone(), c.clone(), d.clone()).unwrap();
        // Basis orders X², Y², XY and XX, YY, XY+YX.
        let reorder = |m: &Matrix| -> Vec<Vec<Scalar>> {
            let p = [0usize, 2, 1];
            p.iter().map(|&i| p.iter().map(|&j| m.get(i, j).clone()).collect()).collect()
        };
        let two = s(2);
        let first = vec![
            vec![&a * &a, &b * &b, &a * &b],
            vec![&c * &c, &d * &d, &c * &d],
            vec![&two * &(&a * &c), &two * &(&b * &d), &(&a * &d) + &(&b * &c)],
        ];
        let second = vec![
            vec![&a * &a, &b * &b, &two * &(&a * &b)],
            vec![&c * &c, &d * &d, &two * &(&c * &d)],
            vec![&a * &c, &b * &d, &(&a * &d) + &(&b * &c)],
        ];
        assert_eq!(reorder(&symd_matrix(&g, 2)), first);
        assert_eq!(reorder(&lower_sym_power(&symd_matrix(&g, 1), 2)), second);
    }

    #[test]
    fn displays_and_intertwiners() {
        let s = |n: i64| Scalar::from_i64(n, Q);
        let g = GroupElement::new(s(2), s(3), s(5), s(7)).unwrap();
        let p = [0usize, 2, 1];
        let reorder = |m: &Matrix| -> Matrix {
            Matrix::from_rows(Q, p.iter().map(|&i| p.iter().map(|&j| m.get(i, j).clone()).collect()).collect())
        };
        let (first, second) = degree_two_displays(&g);
        assert_eq!(first, reorder(&symd_matrix(&g, 2)));
        assert_eq!(second, reorder(&lower_sym_power(&symd_matrix(&g, 1), 2)));
        // Over the six elements of SL2(GF(2)) the two modules are isomorphic.
        for (pr, invertible) in [(2, true), (3, true), (5, true)] {
            let f = FieldSpec::prime(pr).unwrap();
            let pairs: Vec<(Matrix, Matrix)> =
                crate::spaces::sl2_generators(f).iter().map(degree_two_displays).collect();
            let basis = intertwiners(&pairs).unwrap();
            for t in &basis {
                for (a, b) in &pairs {
                    assert_eq!(t.try_mul(a).unwrap(), b.try_mul(t).unwrap());
                }
            }
            let found = find_invertible(&basis, f, 1 << 20).unwrap();
            assert_eq!(found.is_some(), invertible, "GF({pr})");
        }
        // With γ generic they are not in characteristic 2, and are otherwise.
        for (pr, invertible) in [(2, false), (3, true), (5, true)] {
            let f = FieldSpec::prime(pr).unwrap();
            let basis = intertwiners(&generic_display_pairs(f).unwrap()).unwrap();
            assert_eq!(span_has_invertible(&basis).unwrap(), invertible, "GF({pr})");
            if pr == 2 {
                assert_eq!(basis.len(), 1);
            }
        }
        // Each display intertwines with itself through the identity.
        let f = FieldSpec::prime(2).unwrap();
        let pairs: Vec<(Matrix, Matrix)> = crate::spaces::sl2_generators(f)
            .iter()
            .map(|g| (degree_two_displays(g).0, degree_two_displays(g).0))
            .collect();
        let basis = intertwiners(&pairs).unwrap();
        assert!(find_invertible(&basis, f, 1 << 20).unwrap().is_some());
    }

    #[test]
    fn char_three_invariant_vector() {
        let f = FieldSpec::prime(3).unwrap();
        let v = f_delta(&tab("[[0,2],[1]]"), 2, f)
            .unwrap()
            .try_sub(&f_delta(&tab("[[0,1],[2]]"), 2, f).unwrap())
            .unwrap();
        assert!(!v.is_zero());
        for g in crate::spaces::sl2_generators(f) {
            assert_eq!(induced_act(&g, &v).unwrap(), v, "moved by {g}");
        }
        // Over the rationals the same vector is moved.
        let vq = f_delta(&tab("[[0,2],[1]]"), 2, Q).unwrap().try_sub(&f_delta(&tab("[[0,1],[2]]"), 2, Q).unwrap()).unwrap();
        let g = GroupElement::upper_unipotent(Q.one());
        assert_ne!(induced_act(&g, &vq).unwrap(), vq);
    }

    #[test]
    fn polynomial_model_is_equivariant() {
        for f in [Q, FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()] {
            for m in 0..=2usize {
                for n in 1..=2usize {
                    for d in (n as u32 - 1)..=3 {
                        let r = PolyRing::new(f, &[("x", n), ("y", m)]).unwrap();
                        let (x, y) = (r.alphabet("x").clone(), r.alphabet("y").clone());
                        let space = polynomial_space(&[&x], &[&y], d).unwrap();
                        let basis = WeylBasis::new(d, n, m);
                        for g in crate::spaces::sl2_generators(f).iter().take(4) {
                            for idx in 0..basis.len() {
                                let (b, a) = basis.key(idx);
                                let w = WedgeSymVector::basis(d, b, a, f).unwrap();
                                let p = to_polynomial_model(&w, &x.vars(), &y.vars()).unwrap();
                                let lhs = to_polynomial_model(&induced_act(g, &w).unwrap(), &x.vars(), &y.vars()).unwrap();
                                let rhs = group_act(g, &space, &p).unwrap();
                                assert_eq!(lhs, rhs, "({m},{n},{d}) over {f}, key {}", key_label(b, a));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn polynomial_model_small_keys() {
        let r = PolyRing::new(Q, &[("x", 2), ("y", 1)]).unwrap();
        let w = WedgeSymVector::basis(3, &[2, 3], &[1], Q).unwrap();
        let p = to_polynomial_model(&w, &[0, 1], &[2]).unwrap();
        assert_eq!(p, r.parse("x1*y1^2 - x2*y1^2").unwrap());
    }
}
