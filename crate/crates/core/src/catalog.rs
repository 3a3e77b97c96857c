//! Builtin Hopf algebras.

use crate::algebra::{sparsify, Algebra};
use crate::error::{Error, Result};
use crate::hopf::{CoTable, HopfAlgebra};
use crate::linalg::{basis_vector, Matrix, Vector};
use crate::scalar::{root_of_unity, FieldSpec, Scalar};
use crate::tensor;

pub const NAMES: &[&str] = &[
    "trivial",
    "group:Z/1",
    "group:Z/2",
    "group:Z/3",
    "group:Z/4",
    "group:S3",
    "dual_group:Z/2",
    "dual_group:Z/3",
    "dual_group:Z/4",
    "dual_group:S3",
    "sweedler",
    "taft:2",
    "taft:3",
    "taft:4",
];

pub fn build(name: &str) -> Result<HopfAlgebra> {
    let unknown = || Error::UnknownName(name.to_string());
    let group = |g: &str| -> Result<HopfAlgebra> {
        match g {
            "S3" => Ok(group_s3()),
            _ => {
                let n: usize = g.strip_prefix("Z/").or_else(|| g.strip_prefix("ℤ/")).ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
                if !(1..=4).contains(&n) {
                    return Err(unknown());
                }
                Ok(group_cyclic(n))
            }
        }
    };
    if name == "trivial" {
        return Ok(trivial());
    }
    if name == "sweedler" {
        return Ok(sweedler());
    }
    if let Some(g) = name.strip_prefix("group:") {
        return group(g);
    }
    if let Some(g) = name.strip_prefix("dual_group:") {
        return Ok(group(g)?.dual().with_name(name));
    }
    if let Some(n) = name.strip_prefix("taft:") {
        let n: u32 = n.parse().map_err(|_| unknown())?;
        if n < 2 {
            return Err(Error::BadField(format!("taft:{n} needs a root of unity of order at least 2")));
        }
        return Ok(taft(n));
    }
    Err(unknown())
}

pub fn trivial() -> HopfAlgebra {
    group_algebra("trivial", &["1".into()], |_, _| 0, |_| 0)
}

/// `k[ℤ/n]` on the basis `1, g, …, g^{n−1}`.
pub fn group_cyclic(n: usize) -> HopfAlgebra {
    let labels: Vec<String> = (0..n).map(|i| match i {
        0 => "1".into(),
        1 => "g".into(),
        _ => format!("g^{i}"),
    }).collect();
    group_algebra(&format!("group:Z/{n}"), &labels, |a, b| (a + b) % n, |a| (n - a) % n)
}

/// `k[S_3]`; elements are permutations of {0,1,2} in lexicographic order.
pub fn group_s3() -> HopfAlgebra {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    // (p∘q)(i) = p(q(i))
    let compose = |a: usize, b: usize| {
        let (p, q) = (perms[a], perms[b]);
        idx([p[q[0]], p[q[1]], p[q[2]]])
    };
    let inverse = |a: usize| {
        let p = perms[a];
        let mut inv = [0; 3];
        for i in 0..3 {
            inv[p[i]] = i;
        }
        idx(inv)
    };
    let labels: Vec<String> = perms.iter().map(|p| format!("[{}{}{}]", p[0], p[1], p[2])).collect();
    group_algebra("group:S3", &labels, compose, inverse)
}

fn group_algebra(name: &str, labels: &[String], mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize) -> HopfAlgebra {
    let n = labels.len();
    let one = Scalar::one();
    let mult = (0..n * n).map(|ij| vec![(mul(ij / n, ij % n), one.clone())]).collect();
    let alg = Algebra::new(name, FieldSpec::Rational, labels.to_vec(), mult, basis_vector(n, 0)).unwrap();
    let comult = (0..n).map(|i| vec![(i, i, one.clone())]).collect();
    let mut s = Matrix::zeros(n, n);
    for i in 0..n {
        s.set(inv(i), i, one.clone());
    }
    HopfAlgebra::new(alg, comult, vec![one; n], s).unwrap()
}

/// Sweedler's 4-dimensional algebra on `1, g, x, gx`.
pub fn sweedler() -> HopfAlgebra {
    taft_over(2, FieldSpec::Rational, Scalar::from_int(-1), "sweedler")
}

/// The Taft algebra of dimension n² over ℚ(ζ_n), basis `g^i x^j` at index `j·n + i`.
pub fn taft(n: u32) -> HopfAlgebra {
    let field = FieldSpec::Cyclotomic(n);
    taft_over(n, field, root_of_unity(field).unwrap(), &format!("taft:{n}"))
}

fn taft_over(n: u32, field: FieldSpec, zeta: Scalar, name: &str) -> HopfAlgebra {
    let n = n as usize;
    let dim = n * n;
    let index = |i: usize, j: usize| j * n + i;
    let label = |i: usize, j: usize| {
        let g = match i {
            0 => String::new(),
            1 => "g".into(),
            _ => format!("g^{i}"),
        };
        let x = match j {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{j}"),
        };
        if i == 0 && j == 0 {
            "1".into()
        } else {
            format!("{g}{x}")
        }
    };
    let basis: Vec<String> = (0..dim).map(|b| label(b % n, b / n)).collect();
    // g^i x^j · g^k x^l = ζ^{jk} g^{i+k} x^{j+l}, from x g = ζ g x
    let alg = Algebra::from_products(name, field, basis, basis_vector(dim, 0), |a, b| {
        let (i, j, k, l) = (a % n, a / n, b % n, b / n);
        let mut v = vec![Scalar::zero(); dim];
        if j + l < n {
            v[index((i + k) % n, j + l)] = zeta.pow((j * k % n) as u32);
        }
        v
    });
    let pair = [&alg, &alg];
    let g = alg.basis_element(index(1, 0));
    let x = alg.basis_element(index(0, 1));
    let dg = tensor::outer(&g, &g);
    let dx = crate::linalg::add(&tensor::outer(&x, &alg.unit), &tensor::outer(&g, &x));
    let g_inv = alg.basis_element(index(n - 1, 0));
    let sx = crate::linalg::scale(&alg.mul(&g_inv, &x), &Scalar::from_int(-1));
    let mut comult: CoTable = Vec::with_capacity(dim);
    let mut s_cols: Vec<Vector> = Vec::with_capacity(dim);
    for b in 0..dim {
        let (i, j) = (b % n, b / n);
        // Δ and S on g^i x^j from the generators; S reverses the order
        let mut d = tensor::unit(&pair);
        let mut s = alg.one();
        for _ in 0..i {
            d = tensor::mul(&pair, &d, &dg);
            s = alg.mul(&g_inv, &s);
        }
        for _ in 0..j {
            d = tensor::mul(&pair, &d, &dx);
            s = alg.mul(&sx, &s);
        }
        comult.push(sparsify(d).into_iter().map(|(f, c)| (f / dim, f % dim, c)).collect());
        s_cols.push(s);
    }
    let counit = (0..dim).map(|b| if b / n == 0 { Scalar::one() } else { Scalar::zero() }).collect();
    HopfAlgebra::new(alg, comult, counit, Matrix::from_columns(dim, &s_cols)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_passed;

    #[test]
    fn every_name_builds_and_verifies() {
        for name in NAMES {
            let h = build(name).unwrap();
            assert!(all_passed(&h.verify()), "{name}");
        }
        assert!(matches!(build("group:Z/9"), Err(Error::UnknownName(_))));
        assert!(matches!(build("nope"), Err(Error::UnknownName(_))));
        assert!(build("taft:1").is_err());
    }

    #[test]
    fn sweedler_antipode_has_order_four() {
        let s = sweedler().antipode;
        let s2 = s.mul(&s).unwrap();
        assert_ne!(s2, Matrix::identity(4));
        assert_eq!(s2.mul(&s2).unwrap(), Matrix::identity(4));
    }

    #[test]
    fn taft2_is_sweedler() {
        let (t, s) = (taft(2), sweedler());
        assert!(t.same_structure(&s));
        assert_eq!(t.alg.basis, s.alg.basis);
    }

    #[test]
    fn z2_antipode_is_identity() {
        let z = group_cyclic(2);
        assert_eq!(z.dim(), 2);
        assert_eq!(z.antipode, Matrix::identity(2));
    }

    #[test]
    fn taft3_relations() {
        let t = taft(3);
        let (g, x) = (t.alg.basis_element(1), t.alg.basis_element(3));
        let zeta = root_of_unity(FieldSpec::Cyclotomic(3)).unwrap();
        let gx = t.alg.mul(&g, &x);
        assert_eq!(t.alg.mul(&x, &g), crate::linalg::scale(&gx, &zeta));
        let x3 = t.alg.mul_many(&[&x, &x, &x]);
        assert!(crate::linalg::is_zero_vec(&x3));
        assert_eq!(t.alg.mul_many(&[&g, &g, &g]), t.alg.unit);
    }
}
