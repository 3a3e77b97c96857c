//! Hopf algebras as structure constants: axioms, iterated coproducts, duals, twists, pairings.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{nonzeros, Algebra};
use crate::check::{compare, first_failure, Check};
use crate::error::{Error, Result};
use crate::linalg::{zeros, Matrix, Vector};
use crate::scalar::Scalar;

/// `comult[i]` lists `(j, k, c)` with `Δ(e_i) = Σ c e_j ⊗ e_k`.
pub type CoTable = Vec<Vec<(usize, usize, Scalar)>>;

/// Sparse element of a tensor power: multi-index → coefficient.
pub type SparseTensor = Vec<(Vec<usize>, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    pub alg: Algebra,
    pub comult: CoTable,
    pub counit: Vector,
    /// Column `j` is `S(e_j)`.
    pub antipode: Matrix,
    pub antipode_inv: Option<Matrix>,
}

fn collect_sparse(acc: BTreeMap<Vec<usize>, Scalar>) -> SparseTensor {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl HopfAlgebra {
    pub fn new(alg: Algebra, comult: CoTable, counit: Vector, antipode: Matrix) -> Result<Self> {
        let n = alg.dim();
        if comult.len() != n || counit.len() != n || antipode.rows != n || antipode.cols != n {
            return Err(Error::ShapeMismatch(format!("Hopf algebra of dimension {n}")));
        }
        if comult.iter().flatten().any(|(j, k, _)| *j >= n || *k >= n) {
            return Err(Error::ShapeMismatch("coproduct index out of range".into()));
        }
        let antipode_inv = antipode.inverse().ok();
        Ok(HopfAlgebra { alg, comult, counit, antipode, antipode_inv })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn name(&self) -> &str {
        &self.alg.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.alg.name = name.into();
        self
    }

    pub fn s_inv(&self) -> Result<&Matrix> {
        self.antipode_inv.as_ref().ok_or_else(|| Error::NotInvertible(format!("antipode of {}", self.name())))
    }

    pub fn antipode_of(&self, v: &[Scalar]) -> Vector {
        self.antipode.apply(v)
    }

    pub fn antipode_inv_of(&self, v: &[Scalar]) -> Vector {
        self.s_inv().expect("invertible antipode").apply(v)
    }

    pub fn counit_of(&self, v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, x) in nonzeros(v) {
            acc.add_mul(x, &self.counit[i]);
        }
        acc
    }

    /// Δ(v) as a dense vector on `A⊗A`, index `j * n + k`.
    pub fn coproduct(&self, v: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n);
        for (i, x) in nonzeros(v) {
            for (j, k, c) in &self.comult[i] {
                out[j * n + k].add_mul(x, c);
            }
        }
        out
    }

    /// `(Δ⊗id^{⊗k−2})∘…∘Δ` on a basis element, sparse. `k = 1` returns `e_i`.
    pub fn iterated_coproduct_basis(&self, i: usize, k: usize) -> SparseTensor {
        assert!(k >= 1);
        let mut cur: SparseTensor = vec![(vec![i], Scalar::one())];
        for _ in 1..k {
            let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (idx, c) in &cur {
                for (a, b, d) in &self.comult[idx[0]] {
                    let mut key = vec![*a, *b];
                    key.extend_from_slice(&idx[1..]);
                    acc.entry(key).or_default().add_mul(c, d);
                }
            }
            cur = collect_sparse(acc);
        }
        cur
    }

    /// Same as [`Self::iterated_coproduct_basis`] but always expanding the last leg.
    pub fn iterated_coproduct_basis_right(&self, i: usize, k: usize) -> SparseTensor {
        assert!(k >= 1);
        let mut cur: SparseTensor = vec![(vec![i], Scalar::one())];
        for _ in 1..k {
            let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (idx, c) in &cur {
                let last = *idx.last().unwrap();
                for (a, b, d) in &self.comult[last] {
                    let mut key = idx[..idx.len() - 1].to_vec();
                    key.push(*a);
                    key.push(*b);
                    acc.entry(key).or_default().add_mul(c, d);
                }
            }
            cur = collect_sparse(acc);
        }
        cur
    }

    /// Iterated coproduct of an arbitrary element as a dense vector on `A^{⊗k}`.
    pub fn iterated_coproduct(&self, a: &[Scalar], k: usize) -> Vector {
        let n = self.dim();
        let mut out = zeros(n.pow(k as u32));
        for (i, x) in nonzeros(a) {
            for (idx, c) in self.iterated_coproduct_basis(i, k) {
                let flat = idx.iter().fold(0, |f, j| f * n + j);
                out[flat].add_mul(x, &c);
            }
        }
        out
    }

    /// The dual Hopf algebra on the dual basis `f^i`, paired with `A` by the identity matrix.
    pub fn dual(&self) -> HopfAlgebra {
        let n = self.dim();
        let mut mult = vec![Vec::new(); n * n];
        for (i, terms) in self.comult.iter().enumerate() {
            for (j, k, c) in terms {
                mult[j * n + k].push((i, c.clone()));
            }
        }
        for e in mult.iter_mut() {
            e.sort_by_key(|(k, _)| *k);
        }
        let mut comult = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.alg.product_of_basis(i, j) {
                    comult[*k].push((i, j, c.clone()));
                }
            }
        }
        let basis = self.alg.basis.iter().map(|b| format!("{b}*")).collect();
        let alg = Algebra {
            name: format!("{}*", self.name()),
            field: self.alg.field,
            basis,
            mult,
            unit: self.counit.clone(),
        };
        HopfAlgebra {
            alg,
            comult,
            counit: self.alg.unit.clone(),
            antipode: self.antipode.transpose(),
            antipode_inv: self.antipode_inv.as_ref().map(Matrix::transpose),
        }
    }

    fn swapped_antipode(&self) -> (Matrix, Option<Matrix>) {
        let inv = self.antipode_inv.clone().expect("twist needs an invertible antipode");
        (inv, Some(self.antipode.clone()))
    }

    /// `A^op = (A, m^op, Δ, S⁻¹)`
    pub fn op(&self) -> HopfAlgebra {
        let (antipode, antipode_inv) = self.swapped_antipode();
        let mut alg = self.alg.op();
        alg.name = format!("{}^op", self.name());
        HopfAlgebra { alg, comult: self.comult.clone(), counit: self.counit.clone(), antipode, antipode_inv }
    }

    /// `A^cop = (A, m, Δ^op, S⁻¹)`
    pub fn cop(&self) -> HopfAlgebra {
        let (antipode, antipode_inv) = self.swapped_antipode();
        let comult = self.comult.iter().map(|t| t.iter().map(|(j, k, c)| (*k, *j, c.clone())).collect()).collect();
        let mut alg = self.alg.clone();
        alg.name = format!("{}^cop", self.name());
        HopfAlgebra { alg, comult, counit: self.counit.clone(), antipode, antipode_inv }
    }

    /// Same structure constants, ignoring names.
    pub fn same_structure(&self, other: &HopfAlgebra) -> bool {
        let mult = |h: &HopfAlgebra| -> Vec<Vec<(usize, Scalar)>> {
            h.alg.mult.iter().map(|v| {
                let mut v = v.clone();
                v.sort_by_key(|e| e.0);
                v
            }).collect()
        };
        let comult = |h: &HopfAlgebra| -> Vec<Vec<(usize, usize, Scalar)>> {
            h.comult.iter().map(|v| {
                let mut v = v.clone();
                v.sort_by_key(|e| (e.0, e.1));
                v
            }).collect()
        };
        mult(self) == mult(other)
            && self.alg.unit == other.alg.unit
            && comult(self) == comult(other)
            && self.counit == other.counit
            && self.antipode == other.antipode
    }

    /// Every Hopf axiom, each with the first failing basis index as witness.
    pub fn verify(&self) -> Vec<Check> {
        let n = self.dim();
        let e = |i: usize| self.alg.basis_element(i);
        let mut out = vec![
            Check::from_witness("unit", "hopf-axioms", self.alg.check_unit()),
            Check::from_witness("associativity", "hopf-axioms", self.alg.check_associative()),
        ];

        let coassoc = (0..n).into_par_iter().map(|i| {
            let l = self.iterated_coproduct_basis(i, 3);
            let r = self.iterated_coproduct_basis_right(i, 3);
            (l != r).then(|| format!("basis {i}: (Δ⊗id)Δ = {l:?}, (id⊗Δ)Δ = {r:?}"))
        });
        out.push(Check::from_witness("coassociativity", "hopf-axioms", first_failure(coassoc.collect::<Vec<_>>())));

        let counit = (0..n).map(|i| {
            let mut left = zeros(n);
            let mut right = zeros(n);
            for (j, k, c) in &self.comult[i] {
                left[*k].add_mul(&self.counit[*j], c);
                right[*j].add_mul(&self.counit[*k], c);
            }
            compare(&left, &e(i), &[n])
                .map(|w| format!("(ε⊗id)Δ(e_{i}): {w}"))
                .or_else(|| compare(&right, &e(i), &[n]).map(|w| format!("(id⊗ε)Δ(e_{i}): {w}")))
        });
        out.push(Check::from_witness("counit", "hopf-axioms", first_failure(counit)));

        let unit_coprod = self.coproduct(&self.alg.unit);
        let one_one = crate::tensor::outer(&self.alg.unit, &self.alg.unit);
        out.push(Check::from_witness("comult_unital", "hopf-axioms", compare(&unit_coprod, &one_one, &[n, n])));
        out.push(Check::from_bool("counit_unital", "hopf-axioms", self.counit_of(&self.alg.unit).is_one(), || {
            format!("ε(1) = {}", self.counit_of(&self.alg.unit))
        }));

        let coprods: Vec<Vector> = (0..n).map(|i| self.coproduct(&e(i))).collect();
        let pair = [&self.alg, &self.alg];
        let mult = (0..n * n).into_par_iter().map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let prod = self.alg.mul(&e(i), &e(j));
            let lhs = self.coproduct(&prod);
            let rhs = crate::tensor::mul(&pair, &coprods[i], &coprods[j]);
            compare(&lhs, &rhs, &[n, n]).map(|w| format!("Δ(e_{i} e_{j}): {w}"))
        });
        out.push(Check::from_witness("comult_multiplicative", "hopf-axioms", first_failure(mult.collect::<Vec<_>>())));

        let eps_mult = (0..n * n).map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let lhs = self.counit_of(&self.alg.mul(&e(i), &e(j)));
            let rhs = &self.counit[i] * &self.counit[j];
            (lhs != rhs).then(|| format!("ε(e_{i} e_{j}) = {lhs} vs {rhs}"))
        });
        out.push(Check::from_witness("counit_multiplicative", "hopf-axioms", first_failure(eps_mult)));

        let s_cols = self.antipode.columns();
        let antipode = |left: bool| {
            first_failure((0..n).map(|i| {
                let mut acc = zeros(n);
                for (j, k, c) in &self.comult[i] {
                    let p = if left { self.alg.mul(&s_cols[*j], &e(*k)) } else { self.alg.mul(&e(*j), &s_cols[*k]) };
                    crate::linalg::axpy(&mut acc, c, &p);
                }
                let expect: Vector = self.alg.unit.iter().map(|u| u * &self.counit[i]).collect();
                compare(&acc, &expect, &[n]).map(|w| format!("basis {i}: {w}"))
            }))
        };
        out.push(Check::from_witness("antipode_left", "hopf-axioms", antipode(true)));
        out.push(Check::from_witness("antipode_right", "hopf-axioms", antipode(false)));
        out.push(Check::from_bool("antipode_invertible", "hopf-axioms", self.antipode_inv.is_some(), || {
            "antipode matrix is singular".into()
        }));
        out
    }
}

/// Checks the four Hopf pairing axioms and nondegeneracy for `P[i][j] = ⟨e_i, f_j⟩`.
pub fn verify_pairing(a: &HopfAlgebra, b: &HopfAlgebra, p: &Matrix) -> Vec<Check> {
    let (na, nb) = (a.dim(), b.dim());
    if p.rows != na || p.cols != nb {
        return vec![Check::fail("pairing_shape", "pairing", format!("{}x{} vs {na}x{nb}", p.rows, p.cols))];
    }
    let pair = |u: &[Scalar], v: &[Scalar]| {
        let pv = p.apply(v);
        let mut acc = Scalar::zero();
        for (x, y) in u.iter().zip(&pv) {
            acc.add_mul(x, y);
        }
        acc
    };
    // ⟨u, v⟩ for u ∈ A⊗A, v ∈ B⊗B with factorwise pairing
    let pair2 = |u: &[Scalar], v: &[Scalar]| {
        let mut acc = Scalar::zero();
        for (uv, x) in nonzeros(u) {
            for (vv, y) in nonzeros(v) {
                let f = &(x * y) * &(p.get(uv / na, vv / nb) * p.get(uv % na, vv % nb));
                acc.add_assign_ref(&f);
            }
        }
        acc
    };
    let ea = |i: usize| a.alg.basis_element(i);
    let eb = |i: usize| b.alg.basis_element(i);

    let ax1 = first_failure((0..na * na * nb).map(|t| {
        let (i, j, k) = (t / (na * nb), (t / nb) % na, t % nb);
        let lhs = pair(&a.alg.mul(&ea(i), &ea(j)), &eb(k));
        let rhs = pair2(&crate::tensor::outer(&ea(i), &ea(j)), &b.coproduct(&eb(k)));
        (lhs != rhs).then(|| format!("⟨e_{i} e_{j}, f_{k}⟩ = {lhs} vs ⟨e_{i}⊗e_{j}, Δ(f_{k})⟩ = {rhs}"))
    }));
    let ax2 = first_failure((0..na * nb * nb).map(|t| {
        let (i, j, k) = (t / (nb * nb), (t / nb) % nb, t % nb);
        let lhs = pair(&ea(i), &b.alg.mul(&eb(j), &eb(k)));
        let rhs = pair2(&a.coproduct(&ea(i)), &crate::tensor::outer(&eb(j), &eb(k)));
        (lhs != rhs).then(|| format!("⟨e_{i}, f_{j} f_{k}⟩ = {lhs} vs ⟨Δ(e_{i}), f_{j}⊗f_{k}⟩ = {rhs}"))
    }));
    let ax3 = first_failure(
        (0..nb)
            .map(|k| {
                let v = pair(&a.alg.unit, &eb(k));
                (v != b.counit[k]).then(|| format!("⟨1, f_{k}⟩ = {v} vs ε(f_{k}) = {}", b.counit[k]))
            })
            .chain((0..na).map(|i| {
                let v = pair(&ea(i), &b.alg.unit);
                (v != a.counit[i]).then(|| format!("⟨e_{i}, 1⟩ = {v} vs ε(e_{i}) = {}", a.counit[i]))
            })),
    );
    let ax4 = first_failure((0..na * nb).map(|t| {
        let (i, k) = (t / nb, t % nb);
        let lhs = pair(&a.antipode_of(&ea(i)), &eb(k));
        let rhs = pair(&ea(i), &b.antipode_of(&eb(k)));
        (lhs != rhs).then(|| format!("⟨S e_{i}, f_{k}⟩ = {lhs} vs ⟨e_{i}, S f_{k}⟩ = {rhs}"))
    }));
    let nondeg = na == nb && p.inverse().is_ok();
    vec![
        Check::from_witness("pairing_product", "pairing", ax1),
        Check::from_witness("pairing_coproduct", "pairing", ax2),
        Check::from_witness("pairing_units", "pairing", ax3),
        Check::from_witness("pairing_antipode", "pairing", ax4),
        Check::from_bool("pairing_nondegenerate", "pairing", nondeg, || "pairing matrix is singular".into()),
    ]
}

/// Dual bases `(a_i)`, `(x^i)` with `⟨a_i, x^j⟩ = δ_ij` for a nondegenerate pairing:
/// `a_i = e_i` and `x^i` is column `i` of `P⁻¹` in the basis `f_j`.
#[derive(Clone, Debug)]
pub struct DualBasisPair {
    pub a: Matrix,
    pub x: Matrix,
}

impl DualBasisPair {
    pub fn from_pairing(p: &Matrix) -> Result<Self> {
        Ok(DualBasisPair { a: Matrix::identity(p.rows), x: p.inverse()? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn sweedler_antipode_and_coproduct() {
        let h = catalog::sweedler();
        assert!(crate::check::all_passed(&h.verify()));
        // basis 1, g, x, gx
        let x = h.alg.basis_element(2);
        let s2x = h.antipode_of(&h.antipode_of(&x));
        assert_eq!(s2x, crate::linalg::scale(&x, &Scalar::from_int(-1)));
        let mut expect = zeros(16);
        expect[2 * 4] = Scalar::one(); // x⊗1
        expect[4 + 2] = Scalar::one(); // g⊗x
        assert_eq!(h.iterated_coproduct(&x, 2), expect);
        assert_eq!(h.iterated_coproduct(&x, 1), x);
        let sinv_x = h.antipode_inv_of(&x);
        let xg = h.alg.mul(&x, &h.alg.basis_element(1));
        assert_eq!(sinv_x, crate::linalg::scale(&xg, &Scalar::from_int(-1)));
    }

    #[test]
    fn identity_antipode_fails() {
        let mut h = catalog::sweedler();
        h.antipode = Matrix::identity(4);
        let checks = h.verify();
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"antipode_left"));
    }

    #[test]
    fn group_like_iterated() {
        let h = catalog::group_cyclic(3);
        let t = h.iterated_coproduct_basis(1, 3);
        assert_eq!(t, vec![(vec![1, 1, 1], Scalar::one())]);
    }

    #[test]
    fn twists_and_duals() {
        for h in [catalog::sweedler(), catalog::group_cyclic(2), catalog::taft(3)] {
            assert!(h.dual().dual().same_structure(&h));
            assert!(h.op().op().same_structure(&h));
            assert!(h.cop().cop().same_structure(&h));
            assert!(crate::check::all_passed(&h.op().verify()));
            assert!(crate::check::all_passed(&h.cop().verify()));
            let d = h.dual();
            assert!(crate::check::all_passed(&verify_pairing(&h, &d, &Matrix::identity(h.dim()))));
        }
        let sw = catalog::sweedler();
        let cop = sw.cop();
        // Δ^cop(x) = 1⊗x + x⊗g
        let mut expect = zeros(16);
        expect[2] = Scalar::one();
        expect[2 * 4 + 1] = Scalar::one();
        assert_eq!(cop.coproduct(&sw.alg.basis_element(2)), expect);
    }

    #[test]
    fn bad_pairings() {
        let z2 = catalog::group_cyclic(2);
        let checks = verify_pairing(&z2, &z2, &Matrix::identity(2));
        assert!(!checks[0].passed);
        let d = z2.dual();
        let checks = verify_pairing(&z2, &d, &Matrix::zeros(2, 2));
        assert!(!checks.last().unwrap().passed);
    }

    #[test]
    fn dual_of_group_algebra_is_functions() {
        let d = catalog::group_cyclic(3).dual();
        for i in 0..3 {
            for j in 0..3 {
                let p = d.alg.mul(&d.alg.basis_element(i), &d.alg.basis_element(j));
                let expect = if i == j { d.alg.basis_element(i) } else { zeros(3) };
                assert_eq!(p, expect);
            }
        }
    }

    #[test]
    fn bracketing_independent() {
        for h in [catalog::sweedler(), catalog::taft(3), catalog::group_s3()] {
            for i in 0..h.dim() {
                for k in 1..=4 {
                    assert_eq!(h.iterated_coproduct_basis(i, k), h.iterated_coproduct_basis_right(i, k));
                }
            }
        }
    }
}
