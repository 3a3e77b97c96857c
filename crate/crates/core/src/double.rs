//! Drinfeld double D(A), its dual T(A), the Heisenberg double H(A), the
//! R-matrix, ι, u and the moment maps.
//!
//! Bases: D(A) has `f^p ⊗ e_q` at index `p·n + q`; T(A) = D(A)* has the dual
//! basis `e_p ⊗ f^q` at the same index; H(A) = A # A* has `e_a # f^x` at `a·n + x`.

use rayon::prelude::*;

use crate::action::{coregular_left, smash_product, Action, SmashAlgebra};
use crate::algebra::{nonzeros, sparsify, Algebra};
use crate::check::{compare, first_failure, Check};
use crate::error::{Error, Result};
use crate::hopf::{CoTable, HopfAlgebra};
use crate::linalg::{axpy, basis_vector, zeros, Matrix, Vector};
use crate::scalar::Scalar;
use crate::tensor;

/// `D(A)` with multiplication
/// `(x⊗a)(y⊗b) = ⟨a_1,y_3⟩⟨a_3,S⁻¹y_1⟩ x y_2 ⊗ a_2 b`, coalgebra `(A*)^cop ⊗ A`,
/// and antipode `S_D(x⊗a) = (1⊗Sa)(S⁻¹x⊗1)`. Not verified here.
pub fn drinfeld_double(a: &HopfAlgebra) -> Result<HopfAlgebra> {
    let n = a.dim();
    let ad = a.dual();
    let sinv_dual = ad.s_inv()?.clone();
    let dim = n * n;
    let a3: Vec<_> = (0..n).map(|q| a.iterated_coproduct_basis(q, 3)).collect();
    let y3: Vec<_> = (0..n).map(|r| ad.iterated_coproduct_basis(r, 3)).collect();
    // w[q * n + r] lists (y_2, a_2, c) collecting the pairing factors
    let w: Vec<Vec<(usize, usize, Scalar)>> = (0..n * n)
        .into_par_iter()
        .map(|qr| {
            let (q, r) = (qr / n, qr % n);
            let mut acc = std::collections::BTreeMap::<(usize, usize), Scalar>::new();
            for (ai, c) in &a3[q] {
                for (yi, d) in &y3[r] {
                    // ⟨e_{a1}, f^{y3}⟩ = δ and ⟨e_{a3}, S⁻¹ f^{y1}⟩ = (S⁻¹)[a3][y1]
                    if ai[0] != yi[2] {
                        continue;
                    }
                    let pairing = sinv_dual.get(ai[2], yi[0]);
                    if pairing.is_zero() {
                        continue;
                    }
                    acc.entry((yi[1], ai[1])).or_default().add_mul(&(c * d), pairing);
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((y, a), c)| (y, a, c)).collect()
        })
        .collect();
    let basis: Vec<String> = (0..dim).map(|i| format!("{}⊗{}", ad.alg.basis[i / n], a.alg.basis[i % n])).collect();
    let unit = tensor::outer(&a.counit, &a.alg.unit);
    let alg = Algebra::from_products(format!("D({})", a.name()), a.alg.field, basis, unit, |i, j| {
        let (p, q, r, s) = (i / n, i % n, j / n, j % n);
        let mut out = zeros(dim);
        for (y2, a2, c) in &w[q * n + r] {
            for (xy, d) in ad.alg.product_of_basis(p, *y2) {
                let cd = c * d;
                for (ab, e) in a.alg.product_of_basis(*a2, s) {
                    out[xy * n + ab].add_mul(&cd, e);
                }
            }
        }
        out
    });
    let comult = double_coalgebra(a, &ad);
    let counit = (0..dim).map(|i| &a.alg.unit[i / n] * &a.counit[i % n]).collect();
    let s_cols: Vec<Vector> = (0..dim)
        .into_par_iter()
        .map(|pq| {
            let (p, q) = (pq / n, pq % n);
            let left = tensor::outer(&a.counit, &a.antipode.column(q));
            let right = tensor::outer(&sinv_dual.column(p), &a.alg.unit);
            alg.mul(&left, &right)
        })
        .collect();
    HopfAlgebra::new(alg, comult, counit, Matrix::from_columns(dim, &s_cols))
}

/// Tensor-product coalgebra `(A*)^cop ⊗ A`: `Δ(x⊗a) = (x_2⊗a_1) ⊗ (x_1⊗a_2)`.
fn double_coalgebra(a: &HopfAlgebra, ad: &HopfAlgebra) -> CoTable {
    let n = a.dim();
    (0..n * n)
        .map(|pq| {
            let (p, q) = (pq / n, pq % n);
            let mut out = Vec::new();
            for (x1, x2, c) in &ad.comult[p] {
                for (a1, a2, d) in &a.comult[q] {
                    out.push((x2 * n + a1, x1 * n + a2, c * d));
                }
            }
            out
        })
        .collect()
}

/// The Heisenberg double `B # B*` over the left coregular action of `B*` on `B`.
pub fn heisenberg(b: &HopfAlgebra) -> Result<SmashAlgebra> {
    let bd = b.dual();
    let mut h = smash_product(&b.alg, &bd, &coregular_left(&bd))?;
    h.alg.name = format!("H({})", b.name());
    Ok(h)
}

/// `ι(a⊗x) = a_r S⁻¹(a) S⁻¹(a_t) ⊗ x^t S(x) x^r`, summed over dual bases.
pub fn iota(b: &HopfAlgebra) -> Result<Matrix> {
    let n = b.dim();
    let bd = b.dual();
    let sinv = b.s_inv()?.columns();
    let s_dual = bd.antipode.columns();
    let e = |i| b.alg.basis_element(i);
    let f = |i| bd.alg.basis_element(i);
    // xs[i][r * n + t] = e_r S⁻¹(e_i) S⁻¹(e_t);  ys[j][t * n + r] = f^t S(f^j) f^r
    let xs: Vec<Vec<Vec<(usize, Scalar)>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let left: Vec<Vector> = (0..n).map(|r| b.alg.mul(&e(r), &sinv[i])).collect();
            (0..n * n).map(|rt| sparsify(b.alg.mul(&left[rt / n], &sinv[rt % n]))).collect()
        })
        .collect();
    let ys: Vec<Vec<Vec<(usize, Scalar)>>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let left: Vec<Vector> = (0..n).map(|t| bd.alg.mul(&f(t), &s_dual[j])).collect();
            (0..n * n).map(|tr| sparsify(bd.alg.mul(&left[tr / n], &f(tr % n)))).collect()
        })
        .collect();
    let cols: Vec<Vector> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let mut out = zeros(n * n);
            for r in 0..n {
                for t in 0..n {
                    let (xa, yb) = (&xs[i][r * n + t], &ys[j][t * n + r]);
                    for (k, c) in xa {
                        for (l, d) in yb {
                            out[k * n + l].add_mul(c, d);
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(Matrix::from_columns(n * n, &cols))
}

/// `ρ_L(a#x) b = ⟨x, b_2⟩ a b_1` as a map `H(B) → End(B)`.
pub fn rho_left(b: &HopfAlgebra) -> Matrix {
    let n = b.dim();
    let cols: Vec<Vector> = (0..n * n)
        .map(|ax| {
            let (a, x) = (ax / n, ax % n);
            let mut out = zeros(n * n);
            for input in 0..n {
                for (b1, b2, c) in &b.comult[input] {
                    if *b2 != x {
                        continue;
                    }
                    for (k, d) in b.alg.product_of_basis(a, *b1) {
                        out[k * n + input].add_mul(c, d);
                    }
                }
            }
            out
        })
        .collect();
    Matrix::from_columns(n * n, &cols)
}

/// `ρ_R(a#x) b = ⟨x, S b_1⟩ b_2 S⁻¹(a)` as a map `H(B) → End(B)`.
pub fn rho_right(b: &HopfAlgebra) -> Result<Matrix> {
    let n = b.dim();
    let sinv = b.s_inv()?.columns();
    let cols: Vec<Vector> = (0..n * n)
        .map(|ax| {
            let (a, x) = (ax / n, ax % n);
            let mut out = zeros(n * n);
            for input in 0..n {
                for (b1, b2, c) in &b.comult[input] {
                    let pairing = b.antipode.get(x, *b1);
                    if pairing.is_zero() {
                        continue;
                    }
                    let v = b.alg.mul(&b.alg.basis_element(*b2), &sinv[a]);
                    for (k, d) in nonzeros(&v) {
                        out[k * n + input].add_mul(&(c * pairing), d);
                    }
                }
            }
            out
        })
        .collect();
    Ok(Matrix::from_columns(n * n, &cols))
}

/// Composition algebra `End(k^n)`, with `E_{ij}` (row `i`, column `j`) at index `i·n + j`.
pub fn endomorphism_algebra(n: usize, field: crate::scalar::FieldSpec) -> Algebra {
    let basis = (0..n * n).map(|i| format!("E{}{}", i / n, i % n)).collect();
    let mut unit = zeros(n * n);
    for i in 0..n {
        unit[i * n + i] = Scalar::one();
    }
    Algebra::from_products(format!("End({n})"), field, basis, unit, |ij, kl| {
        let mut out = zeros(n * n);
        if ij % n == kl / n {
            out[(ij / n) * n + kl % n] = Scalar::one();
        }
        out
    })
}

/// Everything built from one base algebra `A`.
#[derive(Clone, Debug)]
pub struct DoublePackage {
    pub base: HopfAlgebra,
    pub dual: HopfAlgebra,
    pub drinfeld: HopfAlgebra,
    pub tdual: HopfAlgebra,
    pub heisenberg: SmashAlgebra,
    pub r: Vector,
    pub iota: Matrix,
    pub iota_inv: Matrix,
}

impl DoublePackage {
    /// Builds every object; identities are left to the `check_*` methods.
    pub fn new(a: &HopfAlgebra) -> Result<Self> {
        a.s_inv()?;
        let dual = a.dual();
        let drinfeld = drinfeld_double(a)?;
        let tdual = drinfeld.dual().with_name(format!("T({})", a.name()));
        let heisenberg = heisenberg(a)?;
        let iota = iota(a)?;
        let iota_inv = iota.inverse().map_err(|_| Error::NotInvertible("ι".into()))?;
        let mut pkg = DoublePackage { base: a.clone(), dual, drinfeld, tdual, heisenberg, r: Vec::new(), iota, iota_inv };
        pkg.r = pkg.universal_r();
        Ok(pkg)
    }

    /// As `new`, but fails on the first broken double or Heisenberg identity.
    pub fn build(a: &HopfAlgebra) -> Result<Self> {
        let pkg = Self::new(a)?;
        let mut checks = pkg.check_double()?;
        checks.extend(pkg.check_heisenberg()?);
        if let Some(c) = checks.iter().find(|c| !c.passed) {
            return Err(Error::AxiomFailure(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())));
        }
        Ok(pkg)
    }

    pub fn n(&self) -> usize {
        self.base.dim()
    }

    /// `a ↦ 1 ⊗ a`
    pub fn embed_a(&self, a: &[Scalar]) -> Vector {
        tensor::outer(&self.base.counit, a)
    }

    /// `x ↦ x ⊗ 1`
    pub fn embed_x(&self, x: &[Scalar]) -> Vector {
        tensor::outer(x, &self.base.alg.unit)
    }

    pub fn a_i(&self, i: usize) -> Vector {
        self.embed_a(&basis_vector(self.n(), i))
    }

    pub fn x_i(&self, i: usize) -> Vector {
        self.embed_x(&basis_vector(self.n(), i))
    }

    /// `R = Σ_i (1⊗a_i) ⊗ (x^i⊗1)`
    pub fn universal_r(&self) -> Vector {
        let mut r = zeros(self.drinfeld.dim().pow(2));
        for i in 0..self.n() {
            axpy(&mut r, &Scalar::one(), &tensor::outer(&self.a_i(i), &self.x_i(i)));
        }
        r
    }

    pub fn dd(&self) -> [&Algebra; 2] {
        [&self.drinfeld.alg, &self.drinfeld.alg]
    }

    /// `u = Σ_i S_D(a_i) S_D⁻¹(x^i)`, where `S_D⁻¹` restricted to `x ⊗ 1` is the antipode of `A*`.
    pub fn u(&self) -> Result<Vector> {
        let d = &self.drinfeld;
        let sinv = d.s_inv()?;
        let mut u = zeros(d.dim());
        for i in 0..self.n() {
            axpy(&mut u, &Scalar::one(), &d.alg.mul(&d.antipode_of(&self.a_i(i)), &sinv.apply(&self.x_i(i))));
        }
        Ok(u)
    }

    /// `Δ_T` and `S_T` from the explicit formulas
    /// `Δ_T(a⊗x) = (a_1 ⊗ x^r x_1 x^t) ⊗ (S⁻¹a_t a_2 a_r ⊗ x_2)` and
    /// `S_T(a⊗x) = a_r S⁻¹(a) S⁻¹(a_t) ⊗ x^t S(x) x^r`, products taken in `A` and `A*`.
    pub fn tdual_explicit(&self) -> Result<(Vec<Vector>, Matrix)> {
        let (a, ad, n) = (&self.base, &self.dual, self.n());
        let sinv = a.s_inv()?.columns();
        let dim = n * n;
        let e = |i| a.alg.basis_element(i);
        let f = |i| ad.alg.basis_element(i);
        let comult: Vec<Vector> = (0..dim)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                let mut out = zeros(dim * dim);
                for r in 0..n {
                    for t in 0..n {
                        for (a1, a2, c) in &a.comult[i] {
                            let right_a = sparsify(a.alg.mul_many(&[&sinv[t], &e(*a2), &e(r)]));
                            for (x1, x2, d) in &ad.comult[j] {
                                let left_x = sparsify(ad.alg.mul_many(&[&f(r), &f(*x1), &f(t)]));
                                let cd = c * d;
                                for (lx, m) in &left_x {
                                    let left = a1 * n + lx;
                                    let cdm = &cd * m;
                                    for (ra, k) in &right_a {
                                        out[left * dim + ra * n + x2].add_mul(&cdm, k);
                                    }
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        // S_T has the same formula as ι
        Ok((comult, iota(a)?))
    }

    pub fn rho_left(&self) -> Matrix {
        rho_left(&self.base)
    }

    pub fn rho_right(&self) -> Result<Matrix> {
        rho_right(&self.base)
    }

    /// D(A) acting on A: `(1⊗a)·b = a_1 b S(a_2)`, `(x⊗1)·b = ⟨S⁻¹x, b_1⟩ b_2`,
    /// and `(x⊗a)·b = x·(a·b)`.
    pub fn double_action_on_a(&self) -> Result<Action> {
        let (a, n) = (&self.base, self.n());
        let ad = crate::action::adjoint_action(a);
        let sinv_dual = self.dual.s_inv()?.clone();
        let x_act = |p: usize, v: &[Scalar]| {
            let mut out = zeros(n);
            for (b, c) in nonzeros(v) {
                for (b1, b2, d) in &a.comult[b] {
                    out[*b2].add_mul(&(c * d), sinv_dual.get(*b1, p));
                }
            }
            out
        };
        Ok(Action::from_fn(n * n, n, |pq, b| {
            let (p, q) = (pq / n, pq % n);
            let ab: Vector = {
                let mut v = zeros(n);
                for (k, c) in ad.act_basis(q, b) {
                    v[*k] = c.clone();
                }
                v
            };
            x_act(p, &ab)
        }))
    }

    /// μ_R: D(A) → H(A) on generators
    /// `b ↦ b_1 a_r S(b_2) a_t # S⁻¹(x^t) x^r` and `y ↦ a_r a_t # S⁻¹(x^t) S⁻¹(y) x^r`,
    /// extended by `μ(x⊗a) = μ(x⊗1) μ(1⊗a)`.
    pub fn mu_r_explicit(&self) -> Result<Matrix> {
        let (a, ad, n) = (&self.base, &self.dual, self.n());
        let h = &self.heisenberg.alg;
        let sinv_dual = ad.s_inv()?.columns();
        let s = a.antipode.columns();
        let e = |i| a.alg.basis_element(i);
        let f = |i| ad.alg.basis_element(i);
        let img_a: Vec<Vector> = (0..n)
            .into_par_iter()
            .map(|b| {
                let mut acc = zeros(n * n);
                for r in 0..n {
                    for t in 0..n {
                        let xx = ad.alg.mul(&sinv_dual[t], &f(r));
                        for (b1, b2, c) in &a.comult[b] {
                            let aa = a.alg.mul_many(&[&e(*b1), &e(r), &s[*b2], &e(t)]);
                            axpy(&mut acc, c, &tensor::outer(&aa, &xx));
                        }
                    }
                }
                acc
            })
            .collect();
        let img_x: Vec<Vector> = (0..n)
            .into_par_iter()
            .map(|y| {
                let mut acc = zeros(n * n);
                for r in 0..n {
                    for t in 0..n {
                        let aa = a.alg.mul(&e(r), &e(t));
                        let xx = ad.alg.mul_many(&[&sinv_dual[t], &sinv_dual[y], &f(r)]);
                        axpy(&mut acc, &Scalar::one(), &tensor::outer(&aa, &xx));
                    }
                }
                acc
            })
            .collect();
        let cols: Vec<Vector> = (0..n * n).into_par_iter().map(|pq| h.mul(&img_x[pq / n], &img_a[pq % n])).collect();
        Ok(Matrix::from_columns(n * n, &cols))
    }

    /// The oracle `ρ_L⁻¹ ∘ ρ_D` for μ_R.
    pub fn mu_r_oracle(&self) -> Result<Matrix> {
        let rho_d = self.double_action_on_a()?.representation();
        self.rho_left().solve_matrix(&rho_d)
    }

    pub fn check_double(&self) -> Result<Vec<Check>> {
        let d = &self.drinfeld;
        let nd = d.dim();
        let mut out: Vec<Check> = d
            .verify()
            .into_iter()
            .map(|c| Check { name: format!("double_{}", c.name), anchor: "drinfeld-mult".into(), ..c })
            .collect();

        let expect = double_coalgebra(&self.base, &self.dual);
        let (got, want) = (dense_cotable(&d.comult, nd), dense_cotable(&expect, nd));
        let co = first_failure((0..nd).map(|i| compare(&got[i], &want[i], &[nd, nd]).map(|w| format!("basis {i}: {w}"))));
        let counit_expect: Vector = (0..nd).map(|i| &self.base.alg.unit[i / self.n()] * &self.base.counit[i % self.n()]).collect();
        let co = co.or_else(|| compare(&d.counit, &counit_expect, &[nd]).map(|w| format!("counit: {w}")));
        out.push(Check::from_witness("double_coalgebra", "drinfeld-coalgebra", co));

        let (ea, ex) = self.embeddings();
        out.push(Check::from_witness("embed_a_hopf", "drinfeld-embeddings", check_hopf_map(&self.base, d, &ea)));
        out.push(Check::from_witness("embed_dual_hopf", "drinfeld-embeddings", check_hopf_map(&self.dual.cop(), d, &ex)));

        out.extend(self.check_r());

        let u_check = match self.u() {
            Ok(u) => match d.alg.inverse(&u) {
                Some(u_inv) => {
                    let s2 = d.antipode.mul(&d.antipode)?;
                    first_failure((0..nd).into_par_iter().map(|i| {
                        let lhs = d.alg.mul_many(&[&u, &d.alg.basis_element(i), &u_inv]);
                        compare(&lhs, &s2.column(i), &[nd]).map(|w| format!("basis {i}: {w}"))
                    }).collect::<Vec<_>>())
                }
                None => Some("u is not invertible".into()),
            },
            Err(e) => Some(e.to_string()),
        };
        out.push(Check::from_witness("u_conjugation", "u-element", u_check));
        Ok(out)
    }

    /// `RΔ = Δ^op R`, `R⁻¹ = (S_D⊗id)(R)` and Yang-Baxter.
    pub fn check_r(&self) -> Vec<Check> {
        let d = &self.drinfeld;
        let dd = self.dd();
        let nd = d.dim();
        let mut out = Vec::new();
        let r = &self.r;
        let rdelta = (0..nd).into_par_iter().map(|i| {
            let delta = d.coproduct(&d.alg.basis_element(i));
            let delta_op = tensor::permute(&delta, &[nd, nd], &[1, 0]);
            compare(&tensor::mul(&dd, r, &delta), &tensor::mul(&dd, &delta_op, r), &[nd, nd]).map(|w| format!("basis {i}: {w}"))
        });
        out.push(Check::from_witness("r_delta", "r-matrix", first_failure(rdelta.collect::<Vec<_>>())));

        let r_inv = tensor::map_leg(r, &[nd, nd], 0, &d.antipode);
        let one = tensor::unit(&dd);
        let rinv = compare(&tensor::mul(&dd, &r_inv, r), &one, &[nd, nd])
            .or_else(|| compare(&tensor::mul(&dd, r, &r_inv), &one, &[nd, nd]));
        out.push(Check::from_witness("r_inverse", "r-matrix", rinv));

        out.push(Check::from_witness("ybe", "yang-baxter", self.yang_baxter()));

        out
    }

    /// `R_12 R_13 R_23 = R_23 R_13 R_12` in `D(A)^{⊗3}`.
    pub fn yang_baxter(&self) -> Option<String> {
        let d3 = [&self.drinfeld.alg, &self.drinfeld.alg, &self.drinfeld.alg];
        let emb = |legs: &[usize]| tensor::embed(&self.r, legs, &d3).expect("legs");
        let (r12, r13, r23) = (emb(&[0, 1]), emb(&[0, 2]), emb(&[1, 2]));
        let lhs = tensor::mul(&d3, &tensor::mul(&d3, &r12, &r13), &r23);
        let rhs = tensor::mul(&d3, &tensor::mul(&d3, &r23, &r13), &r12);
        let nd = self.drinfeld.dim();
        compare(&lhs, &rhs, &[nd, nd, nd])
    }

    /// Matrices of `a ↦ 1⊗a` and `x ↦ x⊗1`.
    pub fn embeddings(&self) -> (Matrix, Matrix) {
        let n = self.n();
        let nd = n * n;
        (
            Matrix::from_columns(nd, &(0..n).map(|i| self.a_i(i)).collect::<Vec<_>>()),
            Matrix::from_columns(nd, &(0..n).map(|i| self.x_i(i)).collect::<Vec<_>>()),
        )
    }

    pub fn check_tdual(&self) -> Result<Vec<Check>> {
        let t = &self.tdual;
        let nt = t.dim();
        let (comult, s_t) = self.tdual_explicit()?;
        let co = first_failure((0..nt).map(|i| {
            let mut got = zeros(nt * nt);
            for (j, k, c) in &t.comult[i] {
                got[j * nt + k].add_assign_ref(c);
            }
            compare(&got, &comult[i], &[nt, nt]).map(|w| format!("basis {i}: {w}"))
        }));
        let s = compare(&t.antipode.columns().concat(), &s_t.columns().concat(), &[nt, nt]);
        // T(A) ≅ A^op ⊗ A* as algebras
        let aop = self.base.alg.op();
        let pair = [&aop, &self.dual.alg];
        let alg = first_failure((0..nt * nt).map(|ij| {
            let (i, j) = (ij / nt, ij % nt);
            let (ei, ej) = (t.alg.basis_element(i), t.alg.basis_element(j));
            compare(&t.alg.mul(&ei, &ej), &tensor::mul(&pair, &ei, &ej), &[nt]).map(|w| format!("pair ({i}, {j}): {w}"))
        }));
        let counit_expect = self.drinfeld.alg.unit.clone();
        let counit = compare(&t.counit, &counit_expect, &[nt]);
        Ok(vec![
            Check::from_witness("tdual_comult", "tdual-coproduct", co),
            Check::from_witness("tdual_antipode", "tdual-antipode", s),
            Check::from_witness("tdual_algebra", "tdual-algebra", alg),
            Check::from_witness("tdual_counit", "tdual-algebra", counit),
        ])
    }

    pub fn check_heisenberg(&self) -> Result<Vec<Check>> {
        let h = &self.heisenberg;
        let n = self.n();
        let nh = n * n;
        let endo = endomorphism_algebra(n, self.base.alg.field);
        let rl = self.rho_left();
        let rr = self.rho_right()?;
        let mut out = vec![
            Check::from_witness("heisenberg_associative", "heisenberg", h.alg.check_associative()),
            Check::from_witness("heisenberg_unit", "heisenberg", h.alg.check_unit()),
            Check::from_witness("rho_left_hom", "heis-left", endo.check_hom_from(&h.alg, &rl)),
        ];
        let rank = rl.rank();
        out.push(Check::from_bool("rho_left_bijective", "heis-left", rank == nh, || format!("rank {rank} < {nh}")));
        out.push(Check::from_witness("rho_right_hom", "heis-right", endo.check_hom_from(&h.alg, &rr)));
        let iota_rank = self.iota.rank();
        out.push(Check::from_bool("iota_bijective", "iota", iota_rank == nh, || format!("rank {iota_rank} < {nh}")));
        out.push(Check::from_witness("iota_hom", "iota", h.alg.check_hom_from(&h.alg, &self.iota)));
        let rl_iota = rl.mul(&self.iota)?;
        out.push(Check::from_witness(
            "rho_right_is_rho_left_iota",
            "iota",
            compare(&rr.columns().concat(), &rl_iota.columns().concat(), &[nh, nh]),
        ));

        let (ca, cx) = (h.carrier_embedding(), h.actor_embedding());
        let (ia, ix) = (self.iota.mul(&ca)?, self.iota.mul(&cx)?);
        out.push(Check::from_witness("chiral_a", "chiral-sub", h.alg.check_hom_from(&self.base.alg, &ca)));
        out.push(Check::from_witness("chiral_dual", "chiral-sub", h.alg.check_hom_from(&self.dual.alg, &cx)));
        out.push(Check::from_witness("chiral_iota_a", "chiral-sub", h.alg.check_hom_from(&self.base.alg, &ia)));
        out.push(Check::from_witness("chiral_iota_dual", "chiral-sub", h.alg.check_hom_from(&self.dual.alg, &ix)));
        let (fa, fx) = self.chiral_formulas()?;
        out.push(Check::from_witness(
            "chiral_formulas",
            "chiral-sub",
            compare(&fa.columns().concat(), &ia.columns().concat(), &[n, nh])
                .or_else(|| compare(&fx.columns().concat(), &ix.columns().concat(), &[n, nh])),
        ));
        out.push(Check::from_witness("commutant_a", "commuting-subs", h.alg.check_commute(&ca, &ia)));
        out.push(Check::from_witness("commutant_dual", "commuting-subs", h.alg.check_commute(&cx, &ix)));
        Ok(out)
    }

    /// `a ↦ a_r S⁻¹(a) S⁻¹(a_t) ⊗ x^t x^r` and `x ↦ a_r S⁻¹(a_t) ⊗ x^t S(x) x^r`,
    /// evaluated directly from the formulas.
    pub fn chiral_formulas(&self) -> Result<(Matrix, Matrix)> {
        let (a, ad, n) = (&self.base, &self.dual, self.n());
        let sinv = a.s_inv()?.columns();
        let sd = ad.antipode.columns();
        let e = |i| a.alg.basis_element(i);
        let f = |i| ad.alg.basis_element(i);
        let mut ca = Vec::new();
        let mut cx = Vec::new();
        for i in 0..n {
            let mut va = zeros(n * n);
            let mut vx = zeros(n * n);
            for r in 0..n {
                for t in 0..n {
                    let aa = a.alg.mul_many(&[&e(r), &sinv[i], &sinv[t]]);
                    axpy(&mut va, &Scalar::one(), &tensor::outer(&aa, &ad.alg.mul(&f(t), &f(r))));
                    let xx = ad.alg.mul_many(&[&f(t), &sd[i], &f(r)]);
                    axpy(&mut vx, &Scalar::one(), &tensor::outer(&a.alg.mul(&e(r), &sinv[t]), &xx));
                }
            }
            ca.push(va);
            cx.push(vx);
        }
        Ok((Matrix::from_columns(n * n, &ca), Matrix::from_columns(n * n, &cx)))
    }

    /// Explicit μ_R: unital, multiplicative, equal to the oracle, and its pullback
    /// of ρ_L equal to the D(A)-action on A.
    pub fn check_mu_r_explicit(&self) -> Result<Vec<Check>> {
        let n = self.n();
        let mu = self.mu_r_explicit()?;
        let oracle = self.mu_r_oracle()?;
        let rho_d = self.double_action_on_a()?.representation();
        let pullback = self.rho_left().mul(&mu)?;
        let act = self.double_action_on_a()?;
        let restrict = self.check_action_restrictions(&act);
        Ok(vec![
            Check::from_witness(
                "double_action_module_algebra",
                "d-on-a-dual",
                first_failure(
                    crate::action::verify_module_algebra(&self.drinfeld, &self.base.alg, &act).into_iter().map(|c| c.witness),
                ),
            ),
            Check::from_witness("double_action_restrictions", "d-on-a-dual", restrict),
            Check::from_witness("mu_r_explicit_hom", "hom", self.heisenberg.alg.check_hom_from(&self.drinfeld.alg, &mu)),
            Check::from_witness("mu_r_explicit_oracle", "hom", compare(&mu.columns().concat(), &oracle.columns().concat(), &[n * n, n * n])),
            Check::from_witness("pullback", "pullback", compare(&pullback.columns().concat(), &rho_d.columns().concat(), &[n * n, n * n])),
        ])
    }

    /// Restricted to `1⊗A` the action is adjoint; restricted to `A*⊗1` it is `b ↼ S⁻¹x`.
    fn check_action_restrictions(&self, act: &Action) -> Option<String> {
        let n = self.n();
        let ad = crate::action::adjoint_action(&self.base);
        let right = crate::action::coregular_right(&self.dual);
        let sinv = self.dual.s_inv().ok()?;
        first_failure((0..n).flat_map(|i| (0..n).map(move |b| (i, b))).map(|(i, b)| {
            let eb = self.base.alg.basis_element(b);
            compare(&act.act(&self.a_i(i), &eb), &ad.act(&self.base.alg.basis_element(i), &eb), &[n])
                .map(|w| format!("(1⊗e_{i})·e_{b}: {w}"))
                .or_else(|| {
                    compare(&act.act(&self.x_i(i), &eb), &right.act(&sinv.column(i), &eb), &[n])
                        .map(|w| format!("(f^{i}⊗1)·e_{b}: {w}"))
                })
        }))
    }
}

/// `H(T(A)^op) = T(A)^op # D(A)^cop` with the two moment maps out of D(A).
#[derive(Clone, Debug)]
pub struct BigHeisenberg {
    pub top: HopfAlgebra,
    pub v: SmashAlgebra,
    /// `d ↦ 1 # d`
    pub mu_l: Matrix,
    pub iota: Matrix,
    /// `ι⁻¹ ∘ μ_L`
    pub mu_r: Matrix,
}

impl BigHeisenberg {
    pub fn new(pkg: &DoublePackage) -> Result<Self> {
        let top = pkg.tdual.op().with_name(format!("T({})^op", pkg.base.name()));
        let v = heisenberg(&top)?;
        let mu_l = v.actor_embedding();
        let iota = iota(&top)?;
        let mu_r = iota.solve_matrix(&mu_l).map_err(|_| Error::NotInvertible("ι on H(T^op)".into()))?;
        Ok(BigHeisenberg { top, v, mu_l, iota, mu_r })
    }

    pub fn dim(&self) -> usize {
        self.v.alg.dim()
    }

    pub fn check(&self, pkg: &DoublePackage) -> Vec<Check> {
        let d = &pkg.drinfeld;
        // (T^op)* carries the algebra of D(A) and the coalgebra of D(A)^cop
        let td = self.top.dual();
        let nd = d.dim();
        let same = td.alg.mult == d.alg.mult
            && td.alg.unit == d.alg.unit
            && dense_cotable(&td.comult, nd) == dense_cotable(&d.cop().comult, nd)
            && td.antipode == d.cop().antipode;
        vec![
            Check::from_bool("dual_of_top_is_double_cop", "big-heisenberg", same, || "(T^op)* differs from D(A)^cop".into()),
            Check::from_witness("big_heisenberg_associative", "big-heisenberg", self.v.check_associative()),
            Check::from_witness("mu_l_hom", "mu-left", self.v.alg.check_hom_from(&d.alg, &self.mu_l)),
            Check::from_witness("mu_r_abstract_hom", "mu-prime", self.v.alg.check_hom_from(&d.alg, &self.mu_r)),
            Check::from_witness("moment_maps_commute", "mu-prime", self.v.alg.check_commute(&self.mu_l, &self.mu_r)),
        ]
    }
}

/// Each `Δ(e_i)` as a dense vector of length `n²`.
pub fn dense_cotable(t: &CoTable, n: usize) -> Vec<Vector> {
    t.iter()
        .map(|terms| {
            let mut v = zeros(n * n);
            for (j, k, c) in terms {
                v[j * n + k].add_assign_ref(c);
            }
            v
        })
        .collect()
}

/// Is `f: dom → cod` a morphism of Hopf algebras (units, products, coproducts, counits, antipodes)?
pub fn check_hopf_map(dom: &HopfAlgebra, cod: &HopfAlgebra, f: &Matrix) -> Option<String> {
    let (n, m) = (dom.dim(), cod.dim());
    cod.alg.check_hom_from(&dom.alg, f).or_else(|| {
        first_failure((0..n).map(|i| {
            let fi = f.column(i);
            let lhs = cod.coproduct(&fi);
            let rhs = tensor::map_leg(&tensor::map_leg(&dom.coproduct(&dom.alg.basis_element(i)), &[n, n], 0, f), &[m, n], 1, f);
            compare(&lhs, &rhs, &[m, m])
                .map(|w| format!("Δ on basis {i}: {w}"))
                .or_else(|| (cod.counit_of(&fi) != dom.counit[i]).then(|| format!("ε on basis {i}")))
                .or_else(|| {
                    compare(&cod.antipode_of(&fi), &f.apply(&dom.antipode.column(i)), &[m]).map(|w| format!("S on basis {i}: {w}"))
                })
        }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::check::all_passed;

    fn failed(checks: &[Check]) -> Vec<String> {
        checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect()
    }

    #[test]
    fn double_of_trivial_is_trivial() {
        let p = DoublePackage::new(&catalog::trivial()).unwrap();
        assert_eq!(p.drinfeld.dim(), 1);
        assert_eq!(p.r, vec![Scalar::one()]);
        assert_eq!(p.u().unwrap(), vec![Scalar::one()]);
        assert_eq!(p.iota, Matrix::identity(1));
    }

    #[test]
    fn z2_double_commutative_cocommutative() {
        let p = DoublePackage::new(&catalog::group_cyclic(2)).unwrap();
        let d = &p.drinfeld;
        assert_eq!(d.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (d.alg.basis_element(i), d.alg.basis_element(j));
                assert_eq!(d.alg.mul(&a, &b), d.alg.mul(&b, &a));
            }
            let delta = d.coproduct(&d.alg.basis_element(i));
            assert_eq!(delta, tensor::permute(&delta, &[4, 4], &[1, 0]));
        }
    }

    #[test]
    fn sweedler_suites() {
        let p = DoublePackage::new(&catalog::sweedler()).unwrap();
        assert!(all_passed(&p.check_double().unwrap()), "{:?}", failed(&p.check_double().unwrap()));
        assert!(all_passed(&p.check_tdual().unwrap()), "{:?}", failed(&p.check_tdual().unwrap()));
        assert!(all_passed(&p.check_heisenberg().unwrap()), "{:?}", failed(&p.check_heisenberg().unwrap()));
        assert!(all_passed(&p.check_mu_r_explicit().unwrap()), "{:?}", failed(&p.check_mu_r_explicit().unwrap()));
        let s2 = p.drinfeld.antipode.mul(&p.drinfeld.antipode).unwrap();
        assert_ne!(s2, Matrix::identity(16));
    }

    #[test]
    fn z2_examples() {
        let p = DoublePackage::new(&catalog::group_cyclic(2)).unwrap();
        // (δ_g⊗1)·g = g and (δ_g⊗1)·e = 0
        let act = p.double_action_on_a().unwrap();
        let (e, g) = (p.base.alg.basis_element(0), p.base.alg.basis_element(1));
        assert_eq!(act.act(&p.x_i(1), &g), g);
        assert!(crate::linalg::is_zero_vec(&act.act(&p.x_i(1), &e)));
        // ρ_R(g#1) b = b g
        let rr = p.rho_right().unwrap();
        let rl = p.rho_left();
        let g1 = p.heisenberg.carrier_embedding().column(1);
        assert_eq!(rr.apply(&g1), rl.apply(&p.iota.apply(&g1)));
        let mu = p.mu_r_explicit().unwrap();
        assert_eq!(mu.apply(&p.drinfeld.alg.unit), p.heisenberg.alg.unit);
        let image = rl.apply(&mu.column(p.x_i(1).iter().position(|c| !c.is_zero()).unwrap()));
        // applied to g gives g, to e gives 0 (columns of the endomorphism are inputs)
        assert_eq!(image[1 * 2 + 1], Scalar::one());
        assert!(image[0].is_zero() && image[2].is_zero());
    }

    #[test]
    fn build_rejects_broken_input() {
        let mut a = catalog::sweedler();
        assert!(DoublePackage::build(&a).is_ok());
        // S(x) = xg instead of -xg
        let col = a.antipode.column(2).iter().map(|c| -c).collect::<Vec<_>>();
        for (i, c) in col.into_iter().enumerate() {
            a.antipode.set(i, 2, c);
        }
        a.antipode_inv = a.antipode.inverse().ok();
        assert!(matches!(DoublePackage::build(&a), Err(Error::AxiomFailure(_))));
    }

    #[test]
    fn z2_big_heisenberg() {
        let p = DoublePackage::new(&catalog::group_cyclic(2)).unwrap();
        let big = BigHeisenberg::new(&p).unwrap();
        assert_eq!(big.dim(), 16);
        let checks = big.check(&p);
        assert!(all_passed(&checks), "{:?}", failed(&checks));
        assert_eq!(big.mu_r.apply(&p.drinfeld.alg.unit), big.v.alg.unit);
    }

    #[test]
    fn sweedler_big_heisenberg() {
        let p = DoublePackage::new(&catalog::sweedler()).unwrap();
        let big = BigHeisenberg::new(&p).unwrap();
        assert_eq!(big.dim(), 256);
        let checks = big.check(&p);
        assert!(all_passed(&checks), "{:?}", failed(&checks));
    }

    #[test]
    fn sweedler_action_example() {
        let p = DoublePackage::new(&catalog::sweedler()).unwrap();
        let act = p.double_action_on_a().unwrap();
        let x = p.base.alg.basis_element(2);
        assert_eq!(act.act(&p.a_i(1), &x), crate::linalg::scale(&x, &Scalar::from_int(-1)));
        assert_eq!(act.act(&p.drinfeld.alg.unit, &x), x);
    }
}

#[cfg(test)]
mod props {
    use std::sync::OnceLock;

    use proptest::prelude::*;

    use super::*;
    use crate::catalog;

    fn sweedler() -> &'static DoublePackage {
        static PKG: OnceLock<DoublePackage> = OnceLock::new();
        PKG.get_or_init(|| DoublePackage::new(&catalog::sweedler()).unwrap())
    }

    fn element() -> impl Strategy<Value = Vector> {
        prop::collection::vec(-3i64..=3, 16).prop_map(|v| v.into_iter().map(Scalar::from_int).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn double_antipode_reverses_products(d in element(), e in element()) {
            let dd = &sweedler().drinfeld;
            let lhs = dd.antipode_of(&dd.alg.mul(&d, &e));
            let rhs = dd.alg.mul(&dd.antipode_of(&e), &dd.antipode_of(&d));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(dd.counit_of(&dd.alg.mul(&d, &e)), dd.counit_of(&d) * dd.counit_of(&e));
        }

        #[test]
        fn u_implements_square_of_antipode(d in element()) {
            let p = sweedler();
            let dd = &p.drinfeld;
            let u = p.u().unwrap();
            prop_assert_eq!(dd.alg.mul(&u, &d), dd.alg.mul(&dd.antipode_of(&dd.antipode_of(&d)), &u));
        }

        #[test]
        fn iota_is_multiplicative(x in element(), y in element()) {
            let p = sweedler();
            let h = &p.heisenberg.alg;
            prop_assert_eq!(p.iota.apply(&h.mul(&x, &y)), h.mul(&p.iota.apply(&x), &p.iota.apply(&y)));
        }
    }
}
