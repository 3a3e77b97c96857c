//! Quantum Hamiltonian reduction `(V / V·μ(I))^H` and the isomorphism
//! `φ: H(A) → H(T(A)^op) // μ_L(A)`.

use rayon::prelude::*;

use crate::algebra::{nonzeros, sparsify, Algebra, MultTable};
use crate::check::{compare, first_failure, Check};
use crate::double::{BigHeisenberg, DoublePackage};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{axpy, is_zero_vec, sub, zeros, Matrix, Subspace, Vector};
use crate::scalar::Scalar;

/// Basis of `ker ε`.
pub fn augmentation_ideal(h: &HopfAlgebra) -> Vec<Vector> {
    Matrix::from_rows(vec![h.counit.clone()]).map(|m| m.kernel()).unwrap_or_default()
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    /// `V·μ(I)` inside `V`.
    pub ideal: Subspace,
    pub quotient_dim: usize,
    /// Invariants of the quotient, in complement coordinates, as an RREF basis.
    pub invariant_space: Subspace,
    /// Lifts of the invariant basis to `V`, vanishing on the ideal's pivots.
    pub invariants: Vec<Vector>,
    /// The reduction with its induced product, on the invariant basis.
    pub algebra: Algebra,
    pub checks: Vec<Check>,
}

/// `h ∘ v = Σ μ(h_1) v μ(S h_2)` for each basis `h`, as `(left, right, c)` triples.
fn action_terms(h: &HopfAlgebra, mu: &Matrix) -> Vec<Vec<(Vector, Vector, Scalar)>> {
    (0..h.dim())
        .map(|a| h.comult[a].iter().map(|(a1, a2, c)| (mu.column(*a1), mu.apply(&h.antipode.column(*a2)), c.clone())).collect())
        .collect()
}

fn act(v: &Algebra, terms: &[(Vector, Vector, Scalar)], w: &[Scalar]) -> Vector {
    let mut out = zeros(v.dim());
    for (l, r, c) in terms {
        axpy(&mut out, c, &v.mul_many(&[l, w, r]));
    }
    out
}

impl ReductionResult {
    /// Coordinates of `v + ideal` in the invariant basis, or `None` when it is not invariant.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let q = self.ideal.quotient_coords(v);
        let c: Vector = self.invariant_space.pivots.iter().map(|&p| q[p].clone()).collect();
        let mut rest = q;
        for (row, coef) in self.invariant_space.basis.iter().zip(&c) {
            axpy(&mut rest, &-coef, row);
        }
        is_zero_vec(&rest).then_some(c)
    }

    pub fn dim(&self) -> usize {
        self.invariants.len()
    }
}

/// Reduces `V` along `μ: H → V` at the subspace `ideal ⊂ H`. `v_gens` generate `V`
/// and are used to confirm that `V·μ(I)` is a left ideal.
pub fn hamiltonian_reduce(v: &Algebra, h: &HopfAlgebra, mu: &Matrix, ideal: &[Vector], v_gens: &[Vector]) -> Result<ReductionResult> {
    let nv = v.dim();
    if mu.rows != nv || mu.cols != h.dim() {
        return Err(Error::ShapeMismatch(format!("moment map is {}x{}, expected {nv}x{}", mu.rows, mu.cols, h.dim())));
    }
    let images: Vec<Vector> = ideal.iter().map(|i| mu.apply(i)).collect();
    let spanning: Vec<Vector> = (0..nv * images.len())
        .into_par_iter()
        .map(|ki| v.mul(&v.basis_element(ki / images.len()), &images[ki % images.len()]))
        .collect();
    let ideal_space = Subspace::span(nv, &spanning);
    let complement = ideal_space.complement();
    let q = complement.len();

    let terms = action_terms(h, mu);
    // rows: for each basis h, quotient coordinates of (h∘e_c − ε(h) e_c) as c varies
    let blocks: Vec<Vec<Vector>> = (0..q)
        .into_par_iter()
        .map(|ci| {
            let e = v.basis_element(complement[ci]);
            (0..h.dim())
                .map(|a| {
                    let mut w = act(v, &terms[a], &e);
                    axpy(&mut w, &-&h.counit[a], &e);
                    ideal_space.quotient_coords(&w)
                })
                .collect()
        })
        .collect();
    let mut rows: Vec<Vector> = Vec::with_capacity(q * h.dim());
    for a in 0..h.dim() {
        for r in 0..q {
            rows.push((0..q).map(|ci| blocks[ci][a][r].clone()).collect());
        }
    }
    let kernel = if rows.is_empty() { (0..q).map(|i| crate::linalg::basis_vector(q, i)).collect() } else { Matrix::from_rows(rows)?.kernel() };
    let invariant_space = Subspace::span(q, &kernel);
    let invariants: Vec<Vector> = invariant_space
        .basis
        .iter()
        .map(|row| {
            let mut out = zeros(nv);
            for (ci, c) in nonzeros(row) {
                out[complement[ci]] = c.clone();
            }
            out
        })
        .collect();

    let mut red = ReductionResult {
        ideal: ideal_space,
        quotient_dim: q,
        invariant_space,
        invariants,
        algebra: Algebra { name: String::new(), field: v.field, basis: Vec::new(), mult: Vec::new(), unit: Vec::new() },
        checks: Vec::new(),
    };
    let k = red.dim();
    let products: Vec<Option<Vector>> =
        (0..k * k).into_par_iter().map(|ij| red.coords(&v.mul(&red.invariants[ij / k], &red.invariants[ij % k]))).collect();
    let closed = first_failure(products.iter().enumerate().map(|(ij, p)| p.is_none().then(|| format!("pair ({}, {})", ij / k, ij % k))));
    let mult: MultTable = products.into_iter().map(|p| p.map(sparsify).unwrap_or_default()).collect();
    let unit = red.coords(&v.unit);
    let unit_witness = unit.is_none().then(|| "unit is not invariant".to_string());
    red.algebra = Algebra {
        name: format!("{} // {}", v.name, h.name()),
        field: v.field,
        basis: (0..k).map(|i| format!("r{i}")).collect(),
        mult,
        unit: unit.unwrap_or_else(|| zeros(k)),
    };

    let ideal_basis = &red.ideal.basis;
    let left_closed = first_failure(
        (0..v_gens.len() * ideal_basis.len())
            .into_par_iter()
            .map(|gw| {
                let (g, w) = (gw / ideal_basis.len(), gw % ideal_basis.len());
                (!red.ideal.contains(&v.mul(&v_gens[g], &ideal_basis[w]))).then(|| format!("generator {g} times ideal vector {w}"))
            })
            .collect::<Vec<_>>(),
    );
    let action_ok = first_failure(
        (0..h.dim() * ideal_basis.len())
            .into_par_iter()
            .map(|aw| {
                let (a, w) = (aw / ideal_basis.len(), aw % ideal_basis.len());
                (!red.ideal.contains(&act(v, &terms[a], &ideal_basis[w]))).then(|| format!("basis {a} on ideal vector {w}"))
            })
            .collect::<Vec<_>>(),
    );
    // shifting a representative by w changes products by w·r or r·w
    let perturb = first_failure(
        (0..k * ideal_basis.len())
            .into_par_iter()
            .map(|jw| {
                let (j, w) = (jw / ideal_basis.len(), jw % ideal_basis.len());
                let (r, wv) = (&red.invariants[j], &ideal_basis[w]);
                (!red.ideal.contains(&v.mul(wv, r)) || !red.ideal.contains(&v.mul(r, wv)))
                    .then(|| format!("representative {j} shifted by ideal vector {w}"))
            })
            .collect::<Vec<_>>(),
    );
    red.checks = vec![
        Check::from_witness("ideal_left_closed", "reduction", left_closed),
        Check::from_witness("action_preserves_ideal", "reduction", action_ok),
        Check::from_witness("invariants_closed", "reduction", closed),
        Check::from_witness("product_well_defined", "reduction", perturb),
        Check::from_witness("reduction_unit", "reduction", unit_witness.or_else(|| red.algebra.check_unit())),
        Check::from_witness("reduction_associative", "reduction", red.algebra.check_associative()),
    ];
    Ok(red)
}

/// `V = H(T(A)^op)` reduced along `μ_L` restricted to `A`, at the augmentation ideal.
pub fn reduce_big_heisenberg(pkg: &DoublePackage, big: &BigHeisenberg) -> Result<ReductionResult> {
    let (ea, _) = pkg.embeddings();
    let mu = big.mu_l.mul(&ea)?;
    hamiltonian_reduce(&big.v.alg, &pkg.base, &mu, &augmentation_ideal(&pkg.base), &big.v.generators())
}

/// `φ(a#x) = (a ⊗ x_1 S(x_3)) ⊗ (x_2 ⊗ 1)`, as a map `H(A) → V`.
pub fn build_phi(pkg: &DoublePackage, big: &BigHeisenberg) -> Matrix {
    let (a, ad, n) = (&pkg.base, &pkg.dual, pkg.n());
    let nd = n * n;
    let cols: Vec<Vector> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let mut out = zeros(big.dim());
            for (xs, c) in ad.iterated_coproduct_basis(j, 3) {
                let y = ad.alg.mul(&ad.alg.basis_element(xs[0]), &ad.antipode.column(xs[2]));
                for (m, d) in nonzeros(&y) {
                    let t = i * n + m;
                    let cd = &c * d;
                    for (k, e) in nonzeros(&a.alg.unit) {
                        out[t * nd + xs[1] * n + k].add_mul(&cd, e);
                    }
                }
            }
            out
        })
        .collect();
    Matrix::from_columns(big.dim(), &cols)
}

/// φ lands in invariants, is unital, multiplicative modulo the ideal, and bijective onto the reduction.
/// Returns the checks and the matrix of φ in the invariant basis.
pub fn check_phi(pkg: &DoublePackage, big: &BigHeisenberg, red: &ReductionResult, phi: &Matrix) -> (Vec<Check>, Option<Matrix>) {
    let h = &pkg.heisenberg.alg;
    let nh = h.dim();
    let v = &big.v.alg;
    let coords: Vec<Option<Vector>> = phi.columns().par_iter().map(|c| red.coords(c)).collect();
    let invariant = first_failure(coords.iter().enumerate().map(|(i, c)| c.is_none().then(|| format!("φ(basis {i}) is not invariant"))));
    let unit = (!red.ideal.contains(&sub(&phi.apply(&h.unit), &v.unit))).then(|| "φ(1) ≠ 1".to_string());
    let hom = first_failure(
        (0..nh * nh)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / nh, ij % nh);
                let lhs = v.mul(&phi.column(i), &phi.column(j));
                let rhs = phi.apply(&h.mul(&h.basis_element(i), &h.basis_element(j)));
                compare(&red.ideal.reduce(&lhs), &red.ideal.reduce(&rhs), &[v.dim()]).map(|w| format!("pair ({i}, {j}): {w}"))
            })
            .collect::<Vec<_>>(),
    );
    let matrix = coords.iter().all(Option::is_some).then(|| Matrix::from_columns(red.dim(), &coords.into_iter().flatten().collect::<Vec<_>>()));
    let bijective = match &matrix {
        Some(m) if red.dim() == nh && m.rank() == nh => None,
        Some(m) => Some(format!("rank {} onto a reduction of dimension {}", m.rank(), red.dim())),
        None => Some("φ does not land in invariants".into()),
    };
    let checks = vec![
        Check::from_witness("phi_invariant", "inv-iso", invariant),
        Check::from_witness("phi_unit", "heis-iso", unit),
        Check::from_witness("phi_hom", "heis-iso", hom),
        Check::from_witness("phi_bijective", "heis-iso", bijective),
    ];
    (checks, matrix)
}

/// `μ_R` descends to the reduction and equals `φ ∘ μ_R_explicit` there.
pub fn residual_moment_map(pkg: &DoublePackage, big: &BigHeisenberg, red: &ReductionResult, phi_coords: &Matrix) -> Result<Vec<Check>> {
    let v = &big.v.alg;
    let (ea, _) = pkg.embeddings();
    let terms = action_terms(&pkg.base, &big.mu_l.mul(&ea)?);
    let nd = pkg.drinfeld.dim();
    let invariant = first_failure(
        (0..nd * pkg.n())
            .into_par_iter()
            .map(|da| {
                let (d, a) = (da / pkg.n(), da % pkg.n());
                let m = big.mu_r.column(d);
                let mut w = act(v, &terms[a], &m);
                axpy(&mut w, &-&pkg.base.counit[a], &m);
                (!red.ideal.contains(&w)).then(|| format!("basis {a} moves μ_R(basis {d})"))
            })
            .collect::<Vec<_>>(),
    );
    let explicit = pkg.mu_r_explicit()?;
    let matches = match phi_coords.inverse() {
        Ok(phi_inv) => first_failure((0..nd).map(|d| match red.coords(&big.mu_r.column(d)) {
            Some(c) => compare(&phi_inv.apply(&c), &explicit.column(d), &[pkg.heisenberg.alg.dim()]).map(|w| format!("basis {d}: {w}")),
            None => Some(format!("μ_R(basis {d}) is not invariant")),
        })),
        Err(_) => Some("φ is not invertible".into()),
    };
    Ok(vec![
        Check::from_witness("mu_r_descends", "one-more-action", invariant),
        Check::from_witness("mu_r_matches_explicit", "hom", matches),
    ])
}
