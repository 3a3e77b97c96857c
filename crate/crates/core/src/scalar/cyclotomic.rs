use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::rational::Rational;

thread_local! {
    static PHI: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

fn mobius(mut n: u32) -> i32 {
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(x.checked_mul(*y).expect("overflow in Φ_n")).expect("overflow in Φ_n");
        }
    }
    out
}

/// Exact division by a monic integer polynomial; panics if there is a remainder.
fn poly_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db];
        q[k] = c;
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= c * bj;
            }
        }
    }
    assert!(rem.iter().all(|c| *c == 0), "inexact polynomial division");
    q
}

fn x_pow_minus_one(d: u32) -> Vec<i64> {
    let mut p = vec![0i64; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    p
}

/// Φ_n = ∏_{d|n} (x^d − 1)^{μ(n/d)}, evaluated as one exact quotient.
fn compute_phi(n: u32) -> Vec<i64> {
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in (1..=n).filter(|d| n % d == 0) {
        match mobius(n / d) {
            1 => num = poly_mul(&num, &x_pow_minus_one(d)),
            -1 => den = poly_mul(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    poly_div_monic(&num, &den)
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    phi(n).as_ref().clone()
}

pub(crate) fn phi(n: u32) -> Rc<Vec<i64>> {
    PHI.with(|cache| cache.borrow_mut().entry(n).or_insert_with(|| Rc::new(compute_phi(n))).clone())
}

/// Euler's totient, which is the degree of Φ_n.
pub fn totient(n: u32) -> usize {
    let mut n = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

/// Nonconstant element of ℚ(ζ_n), stored as a residue modulo Φ_n.
///
/// Constant residues are never stored here; they are plain rationals in
/// [`super::Scalar::Rat`], which keeps rational-only workloads allocation free
/// and makes the rational embedding into every cyclotomic field implicit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    pub(crate) order: u32,
    pub(crate) coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

/// Reduces `p` modulo Φ_n in place and trims trailing zeros.
pub(crate) fn reduce(order: u32, p: &mut Vec<Rational>) {
    let f = phi(order);
    let deg = f.len() - 1;
    while p.len() > deg {
        let top = p.pop().unwrap();
        if !top.is_zero() {
            let base = p.len() - deg;
            for j in 0..deg {
                if f[j] != 0 {
                    let t = &top * &Rational::from_int(f[j]);
                    p[base + j] = &p[base + j] - &t;
                }
            }
        }
    }
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// Inverse of a nonzero residue, by solving the multiplication-by-`a` system.
pub(crate) fn inverse(order: u32, a: &[Rational]) -> Vec<Rational> {
    let deg = totient(order);
    // column k of the matrix is a·x^k mod Φ_n
    let mut m = vec![vec![Rational::ZERO; deg + 1]; deg];
    for k in 0..deg {
        let mut shifted = vec![Rational::ZERO; k];
        shifted.extend_from_slice(a);
        reduce(order, &mut shifted);
        for (i, c) in shifted.into_iter().enumerate() {
            m[i][k] = c;
        }
    }
    m[0][deg] = Rational::ONE;
    for col in 0..deg {
        let piv = (col..deg).find(|&r| !m[r][col].is_zero()).expect("zero divisor in a cyclotomic field");
        m.swap(col, piv);
        let inv = m[col][col].inv();
        for c in col..=deg {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..deg {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=deg {
                    let t = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
    }
    let mut out: Vec<Rational> = m.into_iter().map(|mut row| row.pop().unwrap()).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent oracle: x^n − 1 divided by Φ_d for every proper divisor d
    fn phi_by_division(n: u32) -> Vec<i64> {
        let mut p = x_pow_minus_one(n);
        for d in (1..n).filter(|d| n % d == 0) {
            p = poly_div_monic(&p, &phi_by_division(d));
        }
        p
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
    }

    #[test]
    fn mobius_product_matches_division() {
        for n in 1..=60 {
            assert_eq!(cyclotomic_polynomial(n), phi_by_division(n), "n = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
        }
        // first order with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(cyclotomic_polynomial(105), phi_by_division(105));
    }
}
