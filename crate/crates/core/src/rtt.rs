//! Canonical elements Θ, Ω, ℒ and their identities in D(A)⊗H(A) and D(A)^{⊗3}.
//!
//! Θ = Σ a_i ⊗ (1#x^i) and Ω = Σ x^i ⊗ (a_i#1) live in D(A)⊗H(A); tildes apply ι⁻¹
//! to the H(A) leg. The second commutation relation holds in the mirrored form
//! R_12 Ω_2 Ω_1 = Ω_1 Ω_2 R_12, since x^i sits in (A*)^cop inside D(A).

use crate::algebra::Algebra;
use crate::check::{compare, Check};
use crate::double::DoublePackage;
use crate::error::{Error, Result};
use crate::linalg::{axpy, sub, zeros, Vector};
use crate::scalar::Scalar;
use crate::tensor;

#[derive(Clone, Debug)]
pub struct Canonical {
    pub r12: Vector,
    pub r21: Vector,
    /// ℒ = R_21 R_12
    pub l: Vector,
    pub theta: Vector,
    pub omega: Vector,
    pub theta_inv: Vector,
    pub omega_inv: Vector,
    pub theta_tilde: Vector,
    pub omega_tilde: Vector,
    pub u1: Vector,
    pub u1_inv: Vector,
    /// Ω u_1⁻¹ Θ⁻¹ Ω⁻¹
    pub l_hat: Vector,
    /// Ω Θ⁻¹ Ω⁻¹
    pub l_hat_prime: Vector,
}

fn product(factors: &[&Algebra], parts: &[&Vector]) -> Vector {
    let slices: Vec<&[Scalar]> = parts.iter().map(|v| v.as_slice()).collect();
    tensor::mul_many(factors, &slices)
}

impl Canonical {
    pub fn new(pkg: &DoublePackage) -> Result<Self> {
        let (d, h, n) = (&pkg.drinfeld.alg, &pkg.heisenberg.alg, pkg.n());
        let (nd, nh) = (d.dim(), h.dim());
        let dd = [d, d];
        let dh = [d, h];
        let (ca, cx) = (pkg.heisenberg.carrier_embedding(), pkg.heisenberg.actor_embedding());
        let r12 = pkg.r.clone();
        let r21 = tensor::permute(&r12, &[nd, nd], &[1, 0]);
        let l = tensor::mul(&dd, &r21, &r12);
        let mut theta = zeros(nd * nh);
        let mut omega = zeros(nd * nh);
        for i in 0..n {
            axpy(&mut theta, &Scalar::one(), &tensor::outer(&pkg.a_i(i), &cx.column(i)));
            axpy(&mut omega, &Scalar::one(), &tensor::outer(&pkg.x_i(i), &ca.column(i)));
        }
        let inv = |x: &Vector, name: &str| tensor::inverse(&dh, x).ok_or_else(|| Error::NotInvertible(name.into()));
        let theta_inv = inv(&theta, "Θ")?;
        let omega_inv = inv(&omega, "Ω")?;
        let theta_tilde = tensor::map_leg(&theta, &[nd, nh], 1, &pkg.iota_inv);
        let omega_tilde = tensor::map_leg(&omega, &[nd, nh], 1, &pkg.iota_inv);
        let u1 = tensor::outer(&pkg.u()?, &h.unit);
        let u1_inv = inv(&u1, "u")?;
        let l_hat = product(&dh, &[&omega, &u1_inv, &theta_inv, &omega_inv]);
        let l_hat_prime = product(&dh, &[&omega, &theta_inv, &omega_inv]);
        Ok(Canonical { r12, r21, l, theta, omega, theta_inv, omega_inv, theta_tilde, omega_tilde, u1, u1_inv, l_hat, l_hat_prime })
    }
}

fn ddh(pkg: &DoublePackage) -> [&Algebra; 3] {
    [&pkg.drinfeld.alg, &pkg.drinfeld.alg, &pkg.heisenberg.alg]
}

fn dims(factors: &[&Algebra]) -> Vec<usize> {
    tensor::dims_of(factors)
}

/// The three commutation relations in D(A)⊗D(A)⊗H(A).
pub fn check_heis_rels(pkg: &DoublePackage, c: &Canonical) -> Vec<Check> {
    let f = ddh(pkg);
    let e = |x: &Vector, legs: &[usize]| tensor::embed(x, legs, &f).expect("legs");
    let r = e(&c.r12, &[0, 1]);
    let (th1, th2) = (e(&c.theta, &[0, 2]), e(&c.theta, &[1, 2]));
    let (om1, om2) = (e(&c.omega, &[0, 2]), e(&c.omega, &[1, 2]));
    let om2_inv = e(&c.omega_inv, &[1, 2]);
    let dm = dims(&f);
    vec![
        Check::from_witness("heis_rel_theta", "heis-rels", compare(&product(&f, &[&r, &th1, &th2]), &product(&f, &[&th2, &th1, &r]), &dm)),
        Check::from_witness("heis_rel_omega", "heis-rels", compare(&product(&f, &[&r, &om2, &om1]), &product(&f, &[&om1, &om2, &r]), &dm)),
        Check::from_witness("heis_rel_mixed", "heis-rels", compare(&product(&f, &[&r, &th1, &om2_inv]), &product(&f, &[&om2_inv, &th1]), &dm)),
    ]
}

/// ℒ_1 R_12 ℒ_2 R_21 = R_12 ℒ_2 R_21 ℒ_1 in D(A)^{⊗3}, with ℒ_1 = R_31R_13 and ℒ_2 = R_32R_23.
pub fn reflection_l(pkg: &DoublePackage, c: &Canonical) -> Option<String> {
    let d = &pkg.drinfeld.alg;
    let f = [d, d, d];
    let e = |x: &Vector, legs: &[usize]| tensor::embed(x, legs, &f).expect("legs");
    let (r12, r21) = (e(&c.r12, &[0, 1]), e(&c.r21, &[0, 1]));
    let (l1, l2) = (e(&c.l, &[0, 2]), e(&c.l, &[1, 2]));
    compare(&product(&f, &[&l1, &r12, &l2, &r21]), &product(&f, &[&r12, &l2, &r21, &l1]), &dims(&f))
}

/// The reflection equation for `x ∈ D(A)⊗H(A)`, with H(A) on leg 3 and R on legs (1, 2).
pub fn reflection_dh(pkg: &DoublePackage, c: &Canonical, x: &Vector) -> Option<String> {
    let f = ddh(pkg);
    let e = |y: &Vector, legs: &[usize]| tensor::embed(y, legs, &f).expect("legs");
    let (r12, r21) = (e(&c.r12, &[0, 1]), e(&c.r21, &[0, 1]));
    let (x1, x2) = (e(x, &[0, 2]), e(x, &[1, 2]));
    compare(&product(&f, &[&x1, &r12, &x2, &r21]), &product(&f, &[&r12, &x2, &r21, &x1]), &dims(&f))
}

/// Applies μ_R to the second leg of an element of D(A)⊗D(A).
pub fn id_mu_r(pkg: &DoublePackage, mu_r: &crate::linalg::Matrix, x: &Vector) -> Vector {
    let nd = pkg.drinfeld.dim();
    tensor::map_leg(x, &[nd, nd], 1, mu_r)
}

/// The μ_R identities, with `u_1 = u⊗1`.
pub fn check_mu_r_rtt(pkg: &DoublePackage, c: &Canonical) -> Result<Vec<Check>> {
    let mu = pkg.mu_r_explicit()?;
    let dh = [&pkg.drinfeld.alg, &pkg.heisenberg.alg];
    let dm = dims(&dh);
    let mu_l = id_mu_r(pkg, &mu, &c.l);
    let ott = product(&dh, &[&c.omega, &c.omega_tilde, &c.theta_tilde]);
    Ok(vec![
        Check::from_witness("mu_r_r12", "rtt", compare(&id_mu_r(pkg, &mu, &c.r12), &c.theta_tilde, &dm)),
        Check::from_witness("mu_r_r21", "rtt", compare(&id_mu_r(pkg, &mu, &c.r21), &product(&dh, &[&c.omega, &c.omega_tilde]), &dm)),
        Check::from_witness("mu_r_l", "rtt", compare(&mu_l, &ott, &dm)),
        Check::from_witness(
            "theta_omega_inverse",
            "rtt",
            compare(
                &product(&dh, &[&c.theta_inv, &c.omega_inv]),
                &product(&dh, &[&c.u1, &c.omega_tilde, &c.theta_tilde]),
                &dm,
            ),
        ),
        Check::from_witness("rtt_final", "rtt-final", compare(&mu_l, &c.l_hat, &dm)),
    ])
}

/// `L̂′ − (id⊗μ_R)(ℒ)`, which should equal `Ω (1 − u_1⁻¹) Θ⁻¹ Ω⁻¹`.
#[derive(Clone, Debug)]
pub struct FrtReport {
    pub discrepancy: Vector,
    pub checks: Vec<Check>,
}

impl FrtReport {
    pub fn discrepancy_is_zero(&self) -> bool {
        crate::linalg::is_zero_vec(&self.discrepancy)
    }
}

pub fn frt_presentation(pkg: &DoublePackage, c: &Canonical) -> Result<FrtReport> {
    let mu = pkg.mu_r_explicit()?;
    let dh = [&pkg.drinfeld.alg, &pkg.heisenberg.alg];
    let discrepancy = sub(&c.l_hat_prime, &id_mu_r(pkg, &mu, &c.l));
    let one_minus = sub(&tensor::unit(&dh), &c.u1_inv);
    let expect = product(&dh, &[&c.omega, &one_minus, &c.theta_inv, &c.omega_inv]);
    let checks = vec![
        Check::from_witness("lhat_prime_reflection", "ref-eq", reflection_dh(pkg, c, &c.l_hat_prime)),
        Check::from_witness("frt_discrepancy", "frt", compare(&discrepancy, &expect, &dims(&dh))),
    ];
    Ok(FrtReport { discrepancy, checks })
}

/// Every check of this module.
pub fn check_all(pkg: &DoublePackage) -> Result<(Vec<Check>, FrtReport)> {
    let c = Canonical::new(pkg)?;
    let dh = [&pkg.drinfeld.alg, &pkg.heisenberg.alg];
    let dm = dims(&dh);
    let one = tensor::unit(&dh);
    let mut out = vec![Check::from_witness(
        "canonical_inverses",
        "rtt",
        compare(&tensor::mul(&dh, &c.theta, &c.theta_inv), &one, &dm)
            .or_else(|| compare(&tensor::mul(&dh, &c.theta_inv, &c.theta), &one, &dm))
            .or_else(|| compare(&tensor::mul(&dh, &c.omega, &c.omega_inv), &one, &dm))
            .or_else(|| compare(&tensor::mul(&dh, &c.omega_inv, &c.omega), &one, &dm)),
    )];
    out.extend(check_heis_rels(pkg, &c));
    out.push(Check::from_witness("reflection_l", "ref-eq", reflection_l(pkg, &c)));
    out.push(Check::from_witness("reflection_lhat", "ref-sol", reflection_dh(pkg, &c, &c.l_hat)));
    out.extend(check_mu_r_rtt(pkg, &c)?);
    let frt = frt_presentation(pkg, &c)?;
    out.extend(frt.checks.clone());
    Ok((out, frt))
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
    fn trivial_is_all_ones() {
        let pkg = DoublePackage::new(&catalog::trivial()).unwrap();
        let c = Canonical::new(&pkg).unwrap();
        for v in [&c.r12, &c.l, &c.theta, &c.omega, &c.l_hat, &c.l_hat_prime, &c.u1] {
            assert_eq!(v, &vec![Scalar::one()]);
        }
        let (checks, frt) = check_all(&pkg).unwrap();
        assert!(all_passed(&checks));
        assert!(frt.discrepancy_is_zero());
    }

    #[test]
    fn z2_theta_has_two_terms() {
        let pkg = DoublePackage::new(&catalog::group_cyclic(2)).unwrap();
        let c = Canonical::new(&pkg).unwrap();
        // a sum of two simple tensors: rank 2 as a 4x4 matrix
        let rows: Vec<Vector> = c.theta.chunks(4).map(|r| r.to_vec()).collect();
        assert_eq!(crate::linalg::Matrix::from_rows(rows).unwrap().rank(), 2);
        let (checks, _) = check_all(&pkg).unwrap();
        assert!(all_passed(&checks), "{:?}", failed(&checks));
    }

    #[test]
    fn sweedler_suite_and_printed_forms() {
        let pkg = DoublePackage::new(&catalog::sweedler()).unwrap();
        let (checks, frt) = check_all(&pkg).unwrap();
        assert!(all_passed(&checks), "{:?}", failed(&checks));
        assert!(!frt.discrepancy_is_zero());
        assert_eq!(c_leg_swap(&pkg), true);

        // the forms with Θ in place of Θ⁻¹ and the unmirrored Ω relation all fail
        let c = Canonical::new(&pkg).unwrap();
        let dh = [&pkg.drinfeld.alg, &pkg.heisenberg.alg];
        let printed_hat = product(&dh, &[&c.omega, &c.u1_inv, &c.theta, &c.omega_inv]);
        let printed_prime = product(&dh, &[&c.omega, &c.theta, &c.omega_inv]);
        let mu = pkg.mu_r_explicit().unwrap();
        assert_ne!(id_mu_r(&pkg, &mu, &c.l), printed_hat);
        assert!(reflection_dh(&pkg, &c, &printed_hat).is_some());
        assert!(reflection_dh(&pkg, &c, &printed_prime).is_some());
        let f = ddh(&pkg);
        let e = |x: &Vector, legs: &[usize]| tensor::embed(x, legs, &f).unwrap();
        let r = e(&c.r12, &[0, 1]);
        let (om1, om2) = (e(&c.omega, &[0, 2]), e(&c.omega, &[1, 2]));
        assert_ne!(product(&f, &[&r, &om1, &om2]), product(&f, &[&om2, &om1, &r]));
        // ι in place of ι⁻¹ on the tildes breaks (id⊗μ_R)(R_12) = Θ̃
        let nd = pkg.drinfeld.dim();
        let wrong = tensor::map_leg(&c.theta, &[nd, pkg.heisenberg.alg.dim()], 1, &pkg.iota);
        assert_ne!(id_mu_r(&pkg, &mu, &c.r12), wrong);
    }

    fn c_leg_swap(pkg: &DoublePackage) -> bool {
        let c = Canonical::new(pkg).unwrap();
        let nd = pkg.drinfeld.dim();
        let mut r21 = zeros(nd * nd);
        for i in 0..pkg.n() {
            axpy(&mut r21, &Scalar::one(), &tensor::outer(&pkg.x_i(i), &pkg.a_i(i)));
        }
        r21 == c.r21
    }
}
