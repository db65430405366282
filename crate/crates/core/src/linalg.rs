//! Exact rational matrices, row reduction, and subspaces.
//!
//! Matrices are stored densely. Elimination runs on sparse rows internally,
//! since the coboundary matrices produced by the cochain complexes are
//! overwhelmingly zero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, or just `p` when the value is integral.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `-1` to the power `k`.
pub(crate) fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: format!("row {i}"),
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Integer matrix literal, mostly for tests and catalog data.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix literal");
                r.iter().map(|&x| int(x)).collect()
            })
            .collect();
        Self::from_rows(cols, rows).expect("lengths checked")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = &self[(i, j)];
                if !v.is_zero() {
                    t[(j, i)] = v.clone();
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product".into(),
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product".into(),
                expected: self.cols,
                found: v.len(),
            });
        }
        let nz: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        Ok((0..self.rows)
            .map(|i| {
                let row = self.row(i);
                nz.iter()
                    .filter(|&&j| !row[j].is_zero())
                    .fold(Rational::zero(), |acc, &j| acc + &row[j] * &v[j])
            })
            .collect())
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix difference".into(),
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.sub(&rhs.scale(&-Rational::one()))
    }

    /// Determinant by exact elimination. Panics on non-square input.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.row_vectors();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &piv;
                for k in c..n {
                    let d = &f * &a[c][k];
                    a[r][k] -= d;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

type SparseRow = Vec<(usize, Rational)>;

fn to_sparse(row: &[Rational]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, v.clone()))
        .collect()
}

fn sparse_get(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(j, _)| *j)
        .ok()
        .map(|k| &row[k].1)
}

/// `target - factor * src`, merging two sorted sparse rows.
fn axpy(target: &SparseRow, factor: &Rational, src: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < src.len() {
        let ca = target.get(a).map_or(usize::MAX, |e| e.0);
        let cb = src.get(b).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(target[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, -(factor * &src[b].1)));
            b += 1;
        } else {
            let v = &target[a].1 - factor * &src[b].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Incremental reduced row echelon form over sparse rows.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    width: usize,
    rows: Vec<SparseRow>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub(crate) fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivot_of_col: vec![None; width],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<(usize, Rational)> = row
            .iter()
            .filter_map(|(j, v)| self.pivot_of_col[*j].map(|r| (r, v.clone())))
            .collect();
        for (r, v) in hits {
            row = axpy(&row, &v, &self.rows[r]);
        }
        row
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub(crate) fn push(&mut self, row: &[Rational]) -> bool {
        debug_assert_eq!(row.len(), self.width);
        self.push_sparse(to_sparse(row))
    }

    fn push_sparse(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((lead, lv)) = row.first().cloned() else {
            return false;
        };
        let inv = lv.recip();
        for e in &mut row {
            e.1 *= &inv;
        }
        for existing in &mut self.rows {
            if let Some(f) = sparse_get(existing, lead).cloned() {
                *existing = axpy(existing, &f, &row);
            }
        }
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Residue of `row` after elimination against the pivots.
    pub(crate) fn residue(&self, row: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.width];
        for (j, v) in self.reduce(to_sparse(row)) {
            out[j] = v;
        }
        out
    }

    /// Rows sorted by pivot column, as a dense matrix.
    pub(crate) fn to_matrix(&self) -> Matrix {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut m = Matrix::zeros(order.len(), self.width);
        for (i, &r) in order.iter().enumerate() {
            for (j, v) in &self.rows[r] {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }
}

/// Reduced row echelon form and rank. The input is not modified.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut ech = Echelon::new(m.cols());
    for i in 0..m.rows() {
        ech.push_sparse(to_sparse(m.row(i)));
    }
    let rank = ech.rank();
    let mut out = ech.to_matrix();
    // pad with zero rows to keep the input shape
    let mut full = Matrix::zeros(m.rows(), m.cols());
    for i in 0..rank {
        for j in 0..m.cols() {
            std::mem::swap(&mut full[(i, j)], &mut out[(i, j)]);
        }
    }
    (full, rank)
}

pub fn rank(m: &Matrix) -> usize {
    let mut ech = Echelon::new(m.cols());
    for i in 0..m.rows() {
        ech.push_sparse(to_sparse(m.row(i)));
    }
    ech.rank()
}

/// A linear subspace of `Q^n`, held as the nonzero rows of a reduced echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_echelon(Echelon::new(ambient_dim))
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_echelon_matrix(Matrix::identity(ambient_dim))
    }

    /// Span of arbitrary vectors of length `ambient_dim`.
    pub fn span<I, V>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Rational]>,
    {
        let mut ech = Echelon::new(ambient_dim);
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "spanning vector".into(),
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            ech.push(v);
        }
        Ok(Self::from_echelon(ech))
    }

    /// Span of standard basis vectors (0-based indices).
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let vecs = indices.iter().map(|&i| unit(ambient_dim, i));
        Self::span(ambient_dim, vecs)
    }

    pub(crate) fn from_echelon(ech: Echelon) -> Self {
        Self::from_echelon_matrix(ech.to_matrix())
    }

    fn from_echelon_matrix(basis: Matrix) -> Self {
        let pivots = (0..basis.rows())
            .map(|i| {
                basis
                    .row(i)
                    .iter()
                    .position(|v| !v.is_zero())
                    .expect("echelon rows are nonzero")
            })
            .collect();
        Self {
            ambient_dim: basis.cols(),
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The echelon basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub(crate) fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient_dim);
        for i in 0..self.dim() {
            ech.push(self.basis.row(i));
        }
        ech
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` lies outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = self.combine(&coords);
        (rebuilt == v).then_some(coords)
    }

    /// `sum_i coeffs[i] * basis_i`.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *o += c * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Subspace::span(
            self.ambient_dim,
            self.vectors().into_iter().chain(other.vectors()),
        )
    }

    /// Standard basis indices outside the pivot columns; they span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|j| !self.pivots.contains(j))
            .collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) ", self.dim(), self.ambient_dim)?;
        self.basis.fmt(f)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Null space of `m` as a subspace of the domain `Q^cols`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (r, rank) = rref(m);
    let n = m.cols();
    let pivots: Vec<usize> = (0..rank)
        .map(|i| r.row(i).iter().position(|v| !v.is_zero()).unwrap())
        .collect();
    let mut ech = Echelon::new(n);
    for free in (0..n).filter(|j| !pivots.contains(j)) {
        let mut v = unit(n, free);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, free)].clone();
        }
        ech.push(&v);
    }
    Subspace::from_echelon(ech)
}

/// Column span of `m` as a subspace of the codomain `Q^rows`.
pub fn image_basis(m: &Matrix) -> Subspace {
    let mut ech = Echelon::new(m.rows());
    for j in 0..m.cols() {
        ech.push(&m.column(j));
    }
    Subspace::from_echelon(ech)
}

/// Some `x` with `a * x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    if b.len() != a.rows() {
        return None;
    }
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (r, rank) = rref(&aug);
    let mut x = vec![Rational::zero(); n];
    for i in 0..rank {
        let p = r.row(i).iter().position(|v| !v.is_zero()).unwrap();
        if p == n {
            return None;
        }
        x[p] = r[(i, n)].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse of a non-square matrix");
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = Rational::one();
    }
    let (r, _) = rref(&aug);
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        if !r[(i, i)].is_one() {
            return None;
        }
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// True when every entry of the vector is zero.
pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rref(&Matrix::from_ints(&[&[1, 2], &[2, 4]])).1, 1);
        assert_eq!(rref(&Matrix::identity(3)).1, 3);
        assert_eq!(rref(&Matrix::from_ints(&[&[0, 1], &[1, 0], &[1, 1]])).1, 2);
    }

    #[test]
    fn rref_shape_and_form() {
        let m = Matrix::from_ints(&[&[0, 1], &[1, 0], &[1, 1]]);
        let (r, _) = rref(&m);
        assert_eq!(r, Matrix::from_ints(&[&[1, 0], &[0, 1], &[0, 0]]));
        // input untouched
        assert_eq!(m, Matrix::from_ints(&[&[0, 1], &[1, 0], &[1, 1]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)).dim(), 3);
        assert_eq!(kernel_basis(&Matrix::identity(4)).dim(), 0);
        let k = kernel_basis(&Matrix::from_ints(&[&[1, 1, 0]]));
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[int(1), int(-1), int(0)]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&Matrix::identity(2)), Subspace::full(2));
        assert_eq!(image_basis(&Matrix::zeros(2, 2)).dim(), 0);
        let line = image_basis(&Matrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(line.dim(), 1);
        assert!(line.contains(&[int(1), int(2)]));
        assert!(!line.contains(&[int(2), int(1)]));
    }

    #[test]
    fn determinant() {
        let m = Matrix::from_ints(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        // expand along the second row: -1 * (2*1 - 1*1)
        assert_eq!(m.det(), int(-1));
        assert_eq!(Matrix::zeros(0, 0).det(), int(1));
    }

    #[test]
    fn inverses() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(inverse(&Matrix::from_ints(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[int(1), int(3)]).is_none());
        let x = solve(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![int(1), int(2)]);
    }

    #[test]
    fn rational_display() {
        assert_eq!(fmt_rational(&ratio(6, 4)), "3/2");
        assert_eq!(fmt_rational(&ratio(-4, 2)), "-2");
        assert_eq!(fmt_rational(&ratio(0, 5)), "0");
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..3), r * c).prop_map(move |cells| {
                let rows = cells
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(n, d)| ratio(n, d)).collect())
                    .collect();
                Matrix::from_rows(c, rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.dim(), m.cols());
            for v in k.vectors() {
                prop_assert!(is_zero_vec(&m.mul_vec(&v).unwrap()));
            }
        }

        #[test]
        fn rref_idempotent(m in small_matrix()) {
            let (r, _) = rref(&m);
            prop_assert_eq!(rref(&r).0, r);
        }

        #[test]
        fn row_rank_equals_column_rank(m in small_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert_eq!(image_basis(&m).dim(), rank(&m));
        }

        #[test]
        fn rational_sum_is_exact(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let s = ratio(a, b) + ratio(c, d);
            prop_assert_eq!(s.clone(), ratio(a * d + b * c, b * d));
            prop_assert!(s.denom() > &BigInt::from(0));
        }
    }
}
