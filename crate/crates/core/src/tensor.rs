//! Elements of tensor products of algebras, stored densely with mixed-radix
//! indices (first factor slowest).

use rayon::prelude::*;

use crate::algebra::{nonzeros, Algebra};
use crate::check::multi_index;
use crate::error::{Error, Result};
use crate::linalg::{zeros, Matrix, Vector};
use crate::scalar::Scalar;

/// A coefficient vector together with the dimensions of its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub dims: Vec<usize>,
    pub coeffs: Vector,
}

impl TensorElement {
    pub fn new(dims: Vec<usize>, coeffs: Vector) -> Result<Self> {
        if dims.iter().product::<usize>() != coeffs.len() {
            return Err(Error::ShapeMismatch(format!("{} coefficients for factors {dims:?}", coeffs.len())));
        }
        Ok(TensorElement { dims, coeffs })
    }
}

pub fn dims_of(factors: &[&Algebra]) -> Vec<usize> {
    factors.iter().map(|a| a.dim()).collect()
}

fn flatten(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |f, (i, d)| f * d + i)
}

pub fn outer(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = zeros(a.len() * b.len());
    for (i, x) in nonzeros(a) {
        for (j, y) in nonzeros(b) {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

pub fn outer_many(parts: &[&[Scalar]]) -> Vector {
    let mut acc = vec![Scalar::one()];
    for p in parts {
        acc = outer(&acc, p);
    }
    acc
}

pub fn unit(factors: &[&Algebra]) -> Vector {
    let units: Vec<&[Scalar]> = factors.iter().map(|a| a.unit.as_slice()).collect();
    outer_many(&units)
}

/// Product in the tensor-product algebra of `factors`.
pub fn mul(factors: &[&Algebra], s: &[Scalar], t: &[Scalar]) -> Vector {
    let dims = dims_of(factors);
    let total: usize = dims.iter().product();
    assert!(s.len() == total && t.len() == total, "tensor length does not match factors");
    let sn: Vec<(Vec<usize>, &Scalar)> = nonzeros(s).into_iter().map(|(i, x)| (multi_index(i, &dims), x)).collect();
    let tn: Vec<(Vec<usize>, &Scalar)> = nonzeros(t).into_iter().map(|(i, x)| (multi_index(i, &dims), x)).collect();
    let accumulate = |mut out: Vector, (si, x): &(Vec<usize>, &Scalar)| {
        let mut partial: Vec<(usize, Scalar)> = Vec::new();
        for (ti, y) in &tn {
            partial.clear();
            partial.push((0, *x * *y));
            for (l, alg) in factors.iter().enumerate() {
                let prods = alg.product_of_basis(si[l], ti[l]);
                if prods.is_empty() {
                    partial.clear();
                    break;
                }
                let d = dims[l];
                partial = partial
                    .iter()
                    .flat_map(|(f, c)| prods.iter().map(move |(k, m)| (f * d + k, if m.is_one() { c.clone() } else { c * m })))
                    .collect();
            }
            for (f, c) in partial.drain(..) {
                out[f].add_assign_ref(&c);
            }
        }
        out
    };
    if sn.len() * tn.len() < 256 {
        sn.iter().fold(zeros(total), accumulate)
    } else {
        sn.par_iter()
            .fold(|| zeros(total), accumulate)
            .reduce(|| zeros(total), |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    x.add_assign_ref(y);
                }
                a
            })
    }
}

pub fn mul_many(factors: &[&Algebra], parts: &[&[Scalar]]) -> Vector {
    let mut acc = unit(factors);
    for p in parts {
        acc = mul(factors, &acc, p);
    }
    acc
}

/// Places `x` (an element of the tensor product of `ambient[legs[0]]`, `ambient[legs[1]]`, …)
/// on the named legs, with units elsewhere.
pub fn embed(x: &[Scalar], legs: &[usize], ambient: &[&Algebra]) -> Result<Vector> {
    let k = ambient.len();
    let mut seen = vec![false; k];
    for &l in legs {
        if l >= k || seen[l] {
            return Err(Error::LegMismatch(format!("legs {legs:?} in a {k}-fold product")));
        }
        seen[l] = true;
    }
    let dims = dims_of(ambient);
    let xdims: Vec<usize> = legs.iter().map(|&l| dims[l]).collect();
    if xdims.iter().product::<usize>() != x.len() {
        return Err(Error::LegMismatch(format!("element of length {} does not fit legs {legs:?}", x.len())));
    }
    let others: Vec<usize> = (0..k).filter(|l| !seen[*l]).collect();
    let unit_parts: Vec<Vec<(usize, &Scalar)>> = others.iter().map(|&l| nonzeros(&ambient[l].unit)).collect();
    let mut out = zeros(dims.iter().product());
    for (xi, c) in nonzeros(x) {
        let xidx = multi_index(xi, &xdims);
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(vec![0; k], c.clone())];
        for (p, &l) in legs.iter().enumerate() {
            for (idx, _) in partial.iter_mut() {
                idx[l] = xidx[p];
            }
        }
        for (o, &l) in others.iter().enumerate() {
            partial = partial
                .iter()
                .flat_map(|(idx, c)| {
                    unit_parts[o].iter().map(move |(u, d)| {
                        let mut idx = idx.clone();
                        idx[l] = *u;
                        (idx, c * *d)
                    })
                })
                .collect();
        }
        for (idx, c) in partial {
            out[flatten(&idx, &dims)].add_assign_ref(&c);
        }
    }
    Ok(out)
}

/// Reorders legs: leg `l` of the result is leg `perm[l]` of `x`.
pub fn permute(x: &[Scalar], dims: &[usize], perm: &[usize]) -> Vector {
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut out = zeros(x.len());
    for (i, c) in nonzeros(x) {
        let idx = multi_index(i, dims);
        let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
        out[flatten(&new_idx, &new_dims)] = c.clone();
    }
    out
}

/// Applies a linear map to one leg; the leg's dimension becomes `f.rows`.
pub fn map_leg(x: &[Scalar], dims: &[usize], leg: usize, f: &Matrix) -> Vector {
    assert_eq!(f.cols, dims[leg]);
    let mut new_dims = dims.to_vec();
    new_dims[leg] = f.rows;
    let cols = f.columns();
    let mut out = zeros(new_dims.iter().product());
    for (i, c) in nonzeros(x) {
        let mut idx = multi_index(i, dims);
        for (r, m) in nonzeros(&cols[idx[leg]]) {
            idx[leg] = r;
            out[flatten(&idx, &new_dims)].add_mul(c, m);
        }
    }
    out
}

/// Two-sided inverse in the tensor-product algebra, by a linear solve.
pub fn inverse(factors: &[&Algebra], s: &[Scalar]) -> Option<Vector> {
    let one = unit(factors);
    let n = one.len();
    let cols: Vec<Vector> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut e = zeros(n);
            e[j] = Scalar::one();
            mul(factors, s, &e)
        })
        .collect();
    let x = Matrix::from_columns(n, &cols).solve(&one).ok()?;
    (mul(factors, &x, s) == one).then_some(x)
}
