//! Dense exact linear algebra.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        yi.add_mul(a, xi);
    }
}

pub fn scale(v: &[Scalar], a: &Scalar) -> Vector {
    v.iter().map(|x| a * x).collect()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn first_nonzero(v: &[Scalar]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vector>,
}

const PAR_THRESHOLD: usize = 4096;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vector>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|x| Scalar::from_int(*x)).collect()).collect()).unwrap()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn column(&self, j: usize) -> Vector {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.data[j][i] = x.clone();
            }
        }
        t
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().flatten().all(|x| x.as_rational().is_some())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        let row = |r: &Vector| {
            let mut acc = Scalar::zero();
            for (a, b) in r.iter().zip(v) {
                acc.add_mul(a, b);
            }
            acc
        };
        if self.rows * self.cols >= PAR_THRESHOLD {
            self.data.par_iter().map(row).collect()
        } else {
            self.data.iter().map(row).collect()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} · {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let t = other.transpose();
        let row = |r: &Vector| {
            t.data
                .iter()
                .map(|c| {
                    let mut acc = Scalar::zero();
                    for (a, b) in r.iter().zip(c) {
                        acc.add_mul(a, b);
                    }
                    acc
                })
                .collect::<Vector>()
        };
        let data = if self.rows * other.cols >= PAR_THRESHOLD / 16 {
            self.data.par_iter().map(row).collect()
        } else {
            self.data.iter().map(row).collect()
        };
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    /// Reduced row echelon form by Gauss-Jordan elimination; returns pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.is_rational() {
            bareiss_echelon(self).1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Null-space basis: one vector per free column, with a 1 in that column.
    /// Rational matrices go through fraction-free elimination.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = if self.is_rational() { bareiss_rref(self) } else { self.rref() };
        kernel_from_rref(&r, &pivots)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        self.solve_matrix(&Matrix::identity(self.rows))
    }

    /// Solves `self · X = rhs` for square nonsingular `self`.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Matrix> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::ShapeMismatch("solve".into()));
        }
        let n = self.cols;
        let mut aug: Vec<Vector> = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        let pivots = rref_in_place(&mut aug, n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        let data = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(Matrix { rows: n, cols: rhs.cols, data })
    }

    pub fn solve(&self, rhs: &[Scalar]) -> Result<Vector> {
        let b = Matrix::from_columns(self.rows, &[rhs.to_vec()]);
        Ok(self.solve_matrix(&b)?.column(0))
    }
}

/// Gauss-Jordan on the first `ncols` columns of `rows` (extra columns ride along).
fn rref_in_place(rows: &mut [Vector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let width = rows.first().map_or(0, Vec::len);
    let par = rows.len() * width >= PAR_THRESHOLD;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r][c..].iter_mut() {
            *x = &*x * &inv;
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, tail) = tail.split_first_mut().unwrap();
        let prow = &*prow;
        let elim = |row: &mut Vector| {
            if row[c].is_zero() {
                return;
            }
            let f = -&row[c];
            for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                x.add_mul(&f, y);
            }
        };
        if par {
            head.par_iter_mut().for_each(elim);
            tail.par_iter_mut().for_each(elim);
        } else {
            head.iter_mut().for_each(elim);
            tail.iter_mut().for_each(elim);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vector> {
    let free: Vec<usize> = (0..r.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(r.cols);
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r.data[i][f];
            }
            v
        })
        .collect()
}

fn integer_rows(m: &Matrix) -> Vec<Vec<Rational>> {
    m.data
        .iter()
        .map(|row| {
            let rats: Vec<Rational> = row.iter().map(|x| x.as_rational().expect("rational matrix").clone()).collect();
            let mut l = num_bigint::BigInt::from(1);
            for x in &rats {
                l = num_integer::Integer::lcm(&l, &x.denom());
            }
            let l = Rational::from_big(num_rational::BigRational::from_integer(l));
            rats.iter().map(|x| x * &l).collect()
        })
        .collect()
}

/// Fraction-free forward elimination on the integer-scaled rows. Every entry
/// stays an integer: each update is divided exactly by the previous pivot.
pub fn bareiss_echelon(m: &Matrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a = integer_rows(m);
    let mut pivots = Vec::new();
    let mut prev = Rational::ONE;
    let mut r = 0;
    for c in 0..m.cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let update = |row: &mut Vec<Rational>| {
            for j in c + 1..m.cols {
                let v = &(&prow[c] * &row[j]) - &(&row[c] * &prow[j]);
                row[j] = &v / &prev;
            }
            row[c] = Rational::ZERO;
        };
        if rest.len() * m.cols >= PAR_THRESHOLD {
            rest.par_iter_mut().for_each(update);
        } else {
            rest.iter_mut().for_each(update);
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// RREF obtained by back-substitution on the fraction-free echelon form.
pub fn bareiss_rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (a, pivots) = bareiss_echelon(m);
    let mut rows: Vec<Vector> = a.into_iter().map(|r| r.into_iter().map(Scalar::Rat).collect()).collect();
    for i in (0..rows.len()).rev() {
        let c = pivots[i];
        let inv = rows[i][c].inv();
        for x in rows[i][c..].iter_mut() {
            *x = &*x * &inv;
        }
        let (head, tail) = rows.split_at_mut(i);
        let prow = &tail[0];
        for row in head.iter_mut() {
            if !row[c].is_zero() {
                let f = -&row[c];
                for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                    x.add_mul(&f, y);
                }
            }
        }
    }
    let n = rows.len();
    let mut out = Matrix { rows: n, cols: m.cols, data: rows };
    out.data.resize(m.rows, zeros(m.cols));
    out.rows = m.rows;
    (out, pivots)
}

/// A subspace held as an RREF basis, with normal forms modulo it.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let mut rows: Vec<Vector> = vectors.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
        let pivots = rref_in_place(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace { ambient, basis: rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Representative of `v + W` vanishing on every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = -&out[p];
                axpy(&mut out, &f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates not covered by a pivot; the matching unit vectors span a complement.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v + W` in the complement basis.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        self.complement().into_iter().map(|c| r[c].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(3).kernel().is_empty());
        assert_eq!(Matrix::zeros(2, 2).kernel().len(), 2);
        let k = Matrix::from_ints(&[&[1, 1], &[1, 1]]).kernel();
        assert_eq!(k, vec![vec![Scalar::from_int(-1), Scalar::one()]]);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Matrix::identity(4).inverse().unwrap(), Matrix::identity(4));
        assert_eq!(Matrix::from_ints(&[&[2]]).inverse().unwrap().data[0][0], Scalar::ratio(1, 2));
        assert!(matches!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular)));
        assert!(matches!(Matrix::zeros(2, 3).inverse(), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn subspace_normal_forms() {
        let w = Subspace::span(3, &[vec![Scalar::one(), Scalar::one(), Scalar::zero()]]);
        assert_eq!(w.dim(), 1);
        assert_eq!(w.complement(), vec![1, 2]);
        let v = vec![Scalar::from_int(2), Scalar::zero(), Scalar::one()];
        assert_eq!(w.quotient_coords(&v), vec![Scalar::from_int(-2), Scalar::one()]);
        assert!(w.contains(&[Scalar::from_int(3), Scalar::from_int(3), Scalar::zero()]));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop_oneof![3 => Just((0i64, 1i64)), 2 => (-5i64..=5, 1i64..=3)], r * c).prop_map(
                move |v| {
                    let data = v.chunks(c).map(|row| row.iter().map(|(n, d)| Scalar::ratio(*n, *d)).collect()).collect();
                    Matrix { rows: r, cols: c, data }
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel(m in small_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), m.cols);
            for v in &k {
                prop_assert!(is_zero_vec(&m.apply(v)));
            }
        }

        #[test]
        fn bareiss_matches_gauss_jordan(m in small_matrix()) {
            prop_assert_eq!(bareiss_rref(&m), m.rref());
        }

        #[test]
        fn inverse_is_two_sided(m in small_matrix()) {
            if m.is_square() {
                if let Ok(inv) = m.inverse() {
                    prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(m.rows));
                    prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(m.rows));
                } else {
                    prop_assert!(m.rank() < m.rows);
                }
            }
        }
    }
}
