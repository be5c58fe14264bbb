//! Exact dense and sparse linear algebra over a [`FieldSpec`].

use std::fmt;

use rustc_hash::FxHashMap;

use crate::combinat::{multisets, subsets};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(v, field)).collect()).collect(),
        )
    }

    pub fn from_columns(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(self.field); self.cols];
                v[fc] = Scalar::one(self.field);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc);
                }
                v
            })
            .collect()
    }

    /// The pivot columns of the matrix, which span its image.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        self.rref().1.iter().map(|&c| self.column(c)).collect()
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        Ok(det_in_place(self.data.clone(), self.rows, self.field))
    }
}

fn det_in_place(mut a: Vec<Scalar>, n: usize, field: FieldSpec) -> Scalar {
    let mut det = Scalar::one(field);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i * n + c].is_zero()) else {
            return Scalar::zero(field);
        };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let piv = a[c * n + c].clone();
        det = &det * &piv;
        let inv = piv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            let f = &a[i * n + c] * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &a[i * n + j] - &(&f * &a[c * n + j]);
                a[i * n + j] = v;
            }
        }
    }
    det
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    /// One line, rows in brackets: `[[1, 0], [0, 1]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", self.row(i).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Sparse vector: `(index, value)` pairs with increasing indices and nonzero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `a + c * b` for sparse vectors.
pub fn sparse_axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.add_mul(c, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon basis of a span of sparse vectors.
pub struct SparseEchelon {
    field: FieldSpec,
    pivots: FxHashMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(field: FieldSpec) -> SparseEchelon {
        SparseEchelon { field, pivots: FxHashMap::default() }
    }

    /// Reduce `v` against the current basis.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut start = 0;
        while start < v.len() {
            let (lead, c) = v[start].clone();
            match self.pivots.get(&lead) {
                Some(p) => {
                    let tail: SparseVec = v[start..].to_vec();
                    let reduced = sparse_axpy(&tail, &-c, p);
                    v.truncate(start);
                    v.extend(reduced);
                }
                None => start += 1,
            }
        }
        v
    }

    /// Add `v` to the span; returns false if it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let inv = v[0].1.inv().expect("nonzero");
        let v: SparseVec = v.into_iter().map(|(i, x)| (i, &x * &inv)).collect();
        self.pivots.insert(v[0].0, v);
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank(field: FieldSpec, vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = SparseEchelon::new(field);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// The matrix of `A` on the `n`-th exterior power, on the basis of increasing
/// `n`-subsets listed by [`subsets`]; entries are `n × n` minors.
pub fn exterior_power(a: &Matrix, n: usize) -> Matrix {
    let out_keys = subsets(a.rows(), n);
    let in_keys = subsets(a.cols(), n);
    let mut m = Matrix::zeros(a.field(), out_keys.len(), in_keys.len());
    for (r, rk) in out_keys.iter().enumerate() {
        for (c, ck) in in_keys.iter().enumerate() {
            let minor: Vec<Scalar> = rk
                .iter()
                .flat_map(|&i| ck.iter().map(move |&j| a.get(i as usize, j as usize).clone()))
                .collect();
            m.set(r, c, det_in_place(minor, n, a.field()));
        }
    }
    m
}

/// The matrix of `A` on symmetric tensors of degree `n`, on the basis of orbit
/// sums indexed by the multisets listed by [`multisets`]: the entry at `(μ, λ)`
/// is the sum over distinct orderings `α` of `λ` of `∏ A[μ_i][α_i]`.
pub fn lower_sym_power(a: &Matrix, n: usize) -> Matrix {
    let out_keys = multisets(a.rows(), n);
    let in_keys = multisets(a.cols(), n);
    let index: FxHashMap<Vec<u32>, usize> = in_keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let f = a.field();
    let mut m = Matrix::zeros(f, out_keys.len(), in_keys.len());
    // Row μ is read off the product of the linear forms sum_j A[μ_i][j] t_j.
    for (r, mu) in out_keys.iter().enumerate() {
        let mut acc: FxHashMap<Vec<u32>, Scalar> = FxHashMap::default();
        acc.insert(Vec::new(), Scalar::one(f));
        for &row in mu {
            let mut next: FxHashMap<Vec<u32>, Scalar> = FxHashMap::default();
            for (key, c) in &acc {
                for j in 0..a.cols() {
                    let x = a.get(row as usize, j);
                    if x.is_zero() {
                        continue;
                    }
                    let mut k = key.clone();
                    let pos = k.partition_point(|&t| t <= j as u32);
                    k.insert(pos, j as u32);
                    next.entry(k).or_insert_with(|| Scalar::zero(f)).add_mul(c, x);
                }
            }
            acc = next;
        }
        for (key, c) in acc {
            m.set(r, index[&key], c);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rank_kernel_solve() {
        let m = Matrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
        let b: Vec<Scalar> = [6, 12, 2].iter().map(|&v| Scalar::from_i64(v, Q)).collect();
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let bad: Vec<Scalar> = [1, 0, 0].iter().map(|&v| Scalar::from_i64(v, Q)).collect();
        assert!(m.solve(&bad).is_none());
        assert_eq!(m.determinant().unwrap(), Scalar::zero(Q));
        assert_eq!(Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]).determinant().unwrap(), Scalar::one(Q));
        assert_eq!(m.image_basis().len(), 2);
    }

    #[test]
    fn sparse_echelon_matches_dense() {
        let f = FieldSpec::Prime(5);
        let m = Matrix::from_i64(f, &[&[1, 2, 3, 0], &[2, 4, 1, 1], &[3, 1, 4, 1]]);
        let cols = (0..m.cols()).map(|j| {
            m.column(j).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect::<SparseVec>()
        });
        assert_eq!(sparse_rank(f, cols), m.rank());
    }

    #[test]
    fn powers_of_a_diagonal_matrix() {
        let a = Matrix::from_i64(Q, &[&[2, 0], &[0, 3]]);
        let s = lower_sym_power(&a, 2);
        assert_eq!(s, Matrix::from_i64(Q, &[&[4, 0, 0], &[0, 6, 0], &[0, 0, 9]]));
        let e = exterior_power(&Matrix::from_i64(Q, &[&[1, 2, 0], &[0, 1, 0], &[0, 0, 5]]), 2);
        assert_eq!(e.rows(), 3);
        assert_eq!(e.get(0, 0), &Scalar::one(Q));
        let u = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        // Orbit-sum basis: v_{(0,1)} = e0⊗e1 + e1⊗e0 picks up 2·e0⊗e0.
        assert_eq!(lower_sym_power(&u, 2), Matrix::from_i64(Q, &[&[1, 2, 1], &[0, 1, 1], &[0, 0, 1]]));
    }
}
