//! Finite-dimensional associative algebras given by sparse structure constants.

use rayon::prelude::*;

use crate::check::{compare, first_failure};
use crate::error::{Error, Result};
use crate::linalg::{basis_vector, zeros, Matrix, Subspace, Vector};
use crate::scalar::{FieldSpec, Scalar};

/// `table[i * dim + j]` lists `(k, c)` with `e_i e_j = Σ c e_k`; no zero coefficients.
pub type MultTable = Vec<Vec<(usize, Scalar)>>;

pub fn nonzeros(v: &[Scalar]) -> Vec<(usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn sparsify(v: Vector) -> Vec<(usize, Scalar)> {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    pub field: FieldSpec,
    pub basis: Vec<String>,
    pub mult: MultTable,
    pub unit: Vector,
}

impl Algebra {
    pub fn new(name: impl Into<String>, field: FieldSpec, basis: Vec<String>, mult: MultTable, unit: Vector) -> Result<Self> {
        let n = basis.len();
        if mult.len() != n * n || unit.len() != n {
            return Err(Error::ShapeMismatch(format!("algebra of dimension {n}")));
        }
        if mult.iter().flatten().any(|(k, _)| *k >= n) {
            return Err(Error::ShapeMismatch("product index out of range".into()));
        }
        Ok(Algebra { name: name.into(), field, basis, mult, unit })
    }

    /// Builds the table from a closure giving `e_i e_j` as a dense vector.
    pub fn from_products<F>(name: impl Into<String>, field: FieldSpec, basis: Vec<String>, unit: Vector, product: F) -> Self
    where
        F: Fn(usize, usize) -> Vector + Sync,
    {
        let n = basis.len();
        let mult = (0..n * n).into_par_iter().map(|ij| sparsify(product(ij / n, ij % n))).collect();
        Algebra { name: name.into(), field, basis, mult, unit }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_element(&self, i: usize) -> Vector {
        basis_vector(self.dim(), i)
    }

    pub fn one(&self) -> Vector {
        self.unit.clone()
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n);
        let bn = nonzeros(b);
        for (i, x) in nonzeros(a) {
            for &(j, y) in &bn {
                let xy = x * y;
                for (k, c) in &self.mult[i * n + j] {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    pub fn mul_many(&self, factors: &[&[Scalar]]) -> Vector {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Matrix of `v ↦ a v`.
    pub fn left_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(n, &(0..n).map(|j| self.mul(a, &self.basis_element(j))).collect::<Vec<_>>())
    }

    /// Matrix of `v ↦ v a`.
    pub fn right_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(n, &(0..n).map(|j| self.mul(&self.basis_element(j), a)).collect::<Vec<_>>())
    }

    /// Two-sided inverse, if it exists.
    pub fn inverse(&self, a: &[Scalar]) -> Option<Vector> {
        let x = self.left_matrix(a).solve(&self.unit).ok()?;
        (self.mul(&x, a) == self.unit).then_some(x)
    }

    pub fn op(&self) -> Algebra {
        let n = self.dim();
        let mult = (0..n * n).map(|ij| self.mult[(ij % n) * n + ij / n].clone()).collect();
        Algebra { name: format!("{}^op", self.name), field: self.field, basis: self.basis.clone(), mult, unit: self.unit.clone() }
    }

    pub fn check_unit(&self) -> Option<String> {
        let n = self.dim();
        first_failure((0..n).map(|i| {
            let e = self.basis_element(i);
            compare(&self.mul(&self.unit, &e), &e, &[n])
                .map(|w| format!("1·e_{i}: {w}"))
                .or_else(|| compare(&self.mul(&e, &self.unit), &e, &[n]).map(|w| format!("e_{i}·1: {w}")))
        }))
    }

    /// `(e_i e_j) e_k = e_i (e_j e_k)` on all basis triples.
    pub fn check_associative(&self) -> Option<String> {
        let n = self.dim();
        let firsts: Vec<Vector> = (0..n).map(|i| self.basis_element(i)).collect();
        self.associativity_from(&firsts)
    }

    /// Associativity via generators: if `(g a) b = g (a b)` for every generator `g`
    /// and basis pair `a, b`, the elements with that property form a subalgebra
    /// containing the generators, hence everything once the generators generate.
    pub fn check_associative_generated(&self, gens: &[Vector]) -> Option<String> {
        let span = self.generated_dim(gens);
        if span < self.dim() {
            return Some(format!("generators span a subalgebra of dimension {span} < {}", self.dim()));
        }
        self.associativity_from(gens)
    }

    fn associativity_from(&self, firsts: &[Vector]) -> Option<String> {
        let n = self.dim();
        // left[g][k] = g · e_k, sparse
        let left: Vec<Vec<Vec<(usize, Scalar)>>> =
            firsts.par_iter().map(|g| (0..n).map(|k| sparsify(self.mul(g, &self.basis_element(k)))).collect()).collect();
        let results: Vec<Option<String>> = (0..firsts.len() * n)
            .into_par_iter()
            .map(|ga| {
                let (g, a) = (ga / n, ga % n);
                let (mut lhs, mut rhs) = (zeros(n), zeros(n));
                let mut touched: Vec<usize> = Vec::new();
                for b in 0..n {
                    for (k, c) in &left[g][a] {
                        for (l, d) in self.product_of_basis(*k, b) {
                            lhs[*l].add_mul(c, d);
                            touched.push(*l);
                        }
                    }
                    for (k, c) in self.product_of_basis(a, b) {
                        for (l, d) in &left[g][*k] {
                            rhs[*l].add_mul(c, d);
                            touched.push(*l);
                        }
                    }
                    touched.sort_unstable();
                    touched.dedup();
                    if let Some(&l) = touched.iter().find(|&&l| lhs[l] != rhs[l]) {
                        return Some(format!("triple ({g}, {a}, {b}): coordinate {l}: {} vs {}", lhs[l], rhs[l]));
                    }
                    for &l in &touched {
                        lhs[l] = Scalar::zero();
                        rhs[l] = Scalar::zero();
                    }
                    touched.clear();
                }
                None
            })
            .collect();
        first_failure(results)
    }

    /// Greedy set of basis indices generating the algebra.
    pub fn basis_generators(&self) -> Vec<usize> {
        let n = self.dim();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.generated_dim(&[]);
        for i in 0..n {
            if span == n {
                break;
            }
            let mut vecs: Vec<Vector> = gens.iter().map(|&g| self.basis_element(g)).collect();
            vecs.push(self.basis_element(i));
            let grown = self.generated_dim(&vecs);
            if grown > span {
                gens.push(i);
                span = grown;
            }
        }
        gens
    }

    /// Dimension of the subalgebra generated by `gens`.
    pub fn generated_dim(&self, gens: &[Vector]) -> usize {
        let n = self.dim();
        let mut span = Subspace::span(n, std::slice::from_ref(&self.unit));
        loop {
            let mut vecs = span.basis.clone();
            for g in gens {
                for w in &span.basis {
                    vecs.push(self.mul(g, w));
                }
            }
            let next = Subspace::span(n, &vecs);
            if next.dim() == span.dim() {
                return span.dim();
            }
            span = next;
        }
    }

    /// Does the linear map `f: dom → self` (columns = images of basis vectors)
    /// preserve units and products of basis pairs?
    pub fn check_hom_from(&self, dom: &Algebra, f: &Matrix) -> Option<String> {
        let n = self.dim();
        if compare(&f.apply(&dom.unit), &self.unit, &[n]).is_some() {
            return Some("unit not preserved".into());
        }
        let images = f.columns();
        let results: Vec<Option<String>> = (0..dom.dim() * dom.dim())
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / dom.dim(), ij % dom.dim());
                let mut prod = zeros(dom.dim());
                for (k, c) in dom.product_of_basis(i, j) {
                    prod[*k] = c.clone();
                }
                compare(&f.apply(&prod), &self.mul(&images[i], &images[j]), &[n]).map(|w| format!("pair ({i}, {j}): {w}"))
            })
            .collect();
        first_failure(results)
    }

    /// Multiplicativity of an endomorphism checked on generator × basis pairs,
    /// which suffices when the generators generate and the algebra is associative.
    pub fn check_endo_hom_generated(&self, f: &Matrix, gens: &[Vector]) -> Option<String> {
        let n = self.dim();
        if compare(&f.apply(&self.unit), &self.unit, &[n]).is_some() {
            return Some("unit not preserved".into());
        }
        let results: Vec<Option<String>> = (0..gens.len() * n)
            .into_par_iter()
            .map(|gb| {
                let (g, b) = (gb / n, gb % n);
                let e = self.basis_element(b);
                let lhs = f.apply(&self.mul(&gens[g], &e));
                let rhs = self.mul(&f.apply(&gens[g]), &f.column(b));
                compare(&lhs, &rhs, &[n]).map(|w| format!("generator {g}, basis {b}: {w}"))
            })
            .collect();
        first_failure(results)
    }

    /// Do the images of `f` and `g` (columns) commute elementwise?
    pub fn check_commute(&self, f: &Matrix, g: &Matrix) -> Option<String> {
        let (fs, gs) = (f.columns(), g.columns());
        let n = self.dim();
        let results: Vec<Option<String>> = (0..fs.len() * gs.len())
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / gs.len(), ij % gs.len());
                compare(&self.mul(&fs[i], &gs[j]), &self.mul(&gs[j], &fs[i]), &[n]).map(|w| format!("pair ({i}, {j}): {w}"))
            })
            .collect();
        first_failure(results)
    }
}
