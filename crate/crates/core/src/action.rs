//! Module-algebra actions and smash products.

use rayon::prelude::*;

use crate::algebra::{nonzeros, sparsify, Algebra, MultTable};
use crate::check::{compare, first_failure, Check};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{zeros, Matrix, Vector};
use crate::scalar::Scalar;

/// `table[h * carrier_dim + m]` lists the coefficients of `e_h · e_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub actor_dim: usize,
    pub carrier_dim: usize,
    pub table: MultTable,
}

impl Action {
    pub fn from_fn<F>(actor_dim: usize, carrier_dim: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> Vector + Sync,
    {
        let table = (0..actor_dim * carrier_dim).into_par_iter().map(|hm| sparsify(f(hm / carrier_dim, hm % carrier_dim))).collect();
        Action { actor_dim, carrier_dim, table }
    }

    pub fn act_basis(&self, h: usize, m: usize) -> &[(usize, Scalar)] {
        &self.table[h * self.carrier_dim + m]
    }

    pub fn act(&self, h: &[Scalar], m: &[Scalar]) -> Vector {
        let mut out = zeros(self.carrier_dim);
        let mn = nonzeros(m);
        for (i, x) in nonzeros(h) {
            for &(j, y) in &mn {
                let xy = x * y;
                for (k, c) in self.act_basis(i, j) {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    /// The representation as a map `actor → End(carrier)`; an endomorphism is
    /// flattened as `out * carrier_dim + in`.
    pub fn representation(&self) -> Matrix {
        let n = self.carrier_dim;
        let cols: Vec<Vector> = (0..self.actor_dim)
            .map(|h| {
                let mut v = zeros(n * n);
                for m in 0..n {
                    for (k, c) in self.act_basis(h, m) {
                        v[k * n + m] = c.clone();
                    }
                }
                v
            })
            .collect();
        Matrix::from_columns(n * n, &cols)
    }
}

/// `h · m = ε(h) m`
pub fn trivial_action(actor: &HopfAlgebra, carrier: &Algebra) -> Action {
    Action::from_fn(actor.dim(), carrier.dim(), |h, m| {
        let mut v = zeros(carrier.dim());
        v[m] = actor.counit[h].clone();
        v
    })
}

/// `a ▷ b = a_1 b S(a_2)`
pub fn adjoint_action(a: &HopfAlgebra) -> Action {
    let s_cols = a.antipode.columns();
    Action::from_fn(a.dim(), a.dim(), |h, m| {
        let mut out = zeros(a.dim());
        for (j, k, c) in &a.comult[h] {
            let p = a.alg.mul(&a.alg.mul(&a.alg.basis_element(*j), &a.alg.basis_element(m)), &s_cols[*k]);
            crate::linalg::axpy(&mut out, c, &p);
        }
        out
    })
}

/// Left coregular action of `A` on `A*`: `a ⇀ x = ⟨a, x_2⟩ x_1`.
pub fn coregular_left(a: &HopfAlgebra) -> Action {
    let n = a.dim();
    // Δ(f^m) = Σ m_{ij}^m f^i ⊗ f^j, so e_h ⇀ f^m = Σ_i m_{ih}^m f^i
    let mut table: MultTable = vec![Vec::new(); n * n];
    for i in 0..n {
        for h in 0..n {
            for (m, c) in a.alg.product_of_basis(i, h) {
                table[h * n + m].push((i, c.clone()));
            }
        }
    }
    Action { actor_dim: n, carrier_dim: n, table }
}

/// Right coregular action `x ↼ a = ⟨a, x_1⟩ x_2`, as a left action of `A^op` on `A*`.
pub fn coregular_right(a: &HopfAlgebra) -> Action {
    let n = a.dim();
    let mut table: MultTable = vec![Vec::new(); n * n];
    for h in 0..n {
        for j in 0..n {
            for (m, c) in a.alg.product_of_basis(h, j) {
                table[h * n + m].push((j, c.clone()));
            }
        }
    }
    Action { actor_dim: n, carrier_dim: n, table }
}

/// Unit law, Leibniz law and module law, each with the first failing basis indices.
pub fn verify_module_algebra(actor: &HopfAlgebra, carrier: &Algebra, act: &Action) -> Vec<Check> {
    let (nh, nm) = (actor.dim(), carrier.dim());
    if act.actor_dim != nh || act.carrier_dim != nm {
        return vec![Check::fail("action_shape", "module-algebra", "action tensor does not match actor/carrier")];
    }
    let em = |i| carrier.basis_element(i);
    let eh = |i| actor.alg.basis_element(i);

    let unit = first_failure((0..nh).map(|h| {
        let lhs = act.act(&eh(h), &carrier.unit);
        let rhs = crate::linalg::scale(&carrier.unit, &actor.counit[h]);
        compare(&lhs, &rhs, &[nm]).map(|w| format!("e_{h}·1: {w}"))
    }));

    let leibniz = (0..nh * nm).into_par_iter().map(|hm| {
        let (h, m) = (hm / nm, hm % nm);
        let parts: Vec<(Vector, &Scalar, usize)> =
            actor.comult[h].iter().map(|(j, k, c)| (act.act(&eh(*j), &em(m)), c, *k)).collect();
        for n in 0..nm {
            let lhs = act.act(&eh(h), &carrier.mul(&em(m), &em(n)));
            let mut rhs = zeros(nm);
            for (hm1, c, k) in &parts {
                let p = carrier.mul(hm1, &act.act(&eh(*k), &em(n)));
                crate::linalg::axpy(&mut rhs, c, &p);
            }
            if let Some(w) = compare(&lhs, &rhs, &[nm]) {
                return Some(format!("h={h}, m={m}, n={n}: {w}"));
            }
        }
        None
    });
    let leibniz = first_failure(leibniz.collect::<Vec<_>>());

    let module = (0..nh * nh).into_par_iter().map(|hk| {
        let (h, k) = (hk / nh, hk % nh);
        let hk_el = actor.alg.mul(&eh(h), &eh(k));
        for m in 0..nm {
            let lhs = act.act(&hk_el, &em(m));
            let rhs = act.act(&eh(h), &act.act(&eh(k), &em(m)));
            if let Some(w) = compare(&lhs, &rhs, &[nm]) {
                return Some(format!("h={h}, k={k}, m={m}: {w}"));
            }
        }
        None
    });
    let module = first_failure(module.collect::<Vec<_>>()).or_else(|| {
        first_failure((0..nm).map(|m| compare(&act.act(&actor.alg.unit, &em(m)), &em(m), &[nm]).map(|w| format!("1·e_{m}: {w}"))))
    });

    vec![
        Check::from_witness("action_unit", "module-algebra", unit),
        Check::from_witness("action_leibniz", "module-algebra", leibniz),
        Check::from_witness("action_module", "module-algebra", module),
    ]
}

/// `M # H` on `M ⊗ H`, basis index `m * dim H + x`.
#[derive(Clone, Debug)]
pub struct SmashAlgebra {
    pub alg: Algebra,
    pub carrier_dim: usize,
    pub actor_dim: usize,
    pub carrier_unit: Vector,
    pub actor_unit: Vector,
    /// Basis indices generating each factor.
    pub carrier_gens: Vec<usize>,
    pub actor_gens: Vec<usize>,
}

/// `(m#x)(n#y) = m(x_1·n) # x_2 y`
pub fn smash_product(carrier: &Algebra, actor: &HopfAlgebra, act: &Action) -> Result<SmashAlgebra> {
    if act.actor_dim != actor.dim() || act.carrier_dim != carrier.dim() {
        return Err(Error::ActionInvalid("action tensor does not match the algebras".into()));
    }
    let (nm, nh) = (carrier.dim(), actor.dim());
    // twisted[x * nm + n] = Σ (x_1·n) ⊗ x_2 as (n', x_2, c)
    let twisted: Vec<Vec<(usize, usize, Scalar)>> = (0..nh * nm)
        .into_par_iter()
        .map(|xn| {
            let (x, n) = (xn / nm, xn % nm);
            let mut acc = std::collections::BTreeMap::<(usize, usize), Scalar>::new();
            for (x1, x2, c) in &actor.comult[x] {
                for (n2, d) in act.act_basis(*x1, n) {
                    acc.entry((*n2, *x2)).or_default().add_mul(c, d);
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect()
        })
        .collect();
    let dim = nm * nh;
    let basis: Vec<String> = (0..dim).map(|i| format!("{}#{}", carrier.basis[i / nh], actor.alg.basis[i % nh])).collect();
    let unit = crate::tensor::outer(&carrier.unit, &actor.alg.unit);
    let name = format!("{} # {}", carrier.name, actor.name());
    let alg = Algebra::from_products(name, carrier.field, basis, unit, |i, j| {
        let (m, x, n, y) = (i / nh, i % nh, j / nh, j % nh);
        let mut out = zeros(dim);
        for (n2, x2, c) in &twisted[x * nm + n] {
            for (mn, d) in carrier.product_of_basis(m, *n2) {
                let cd = c * d;
                for (xy, e) in actor.alg.product_of_basis(*x2, y) {
                    out[mn * nh + xy].add_mul(&cd, e);
                }
            }
        }
        out
    });
    Ok(SmashAlgebra {
        alg,
        carrier_dim: nm,
        actor_dim: nh,
        carrier_unit: carrier.unit.clone(),
        actor_unit: actor.alg.unit.clone(),
        carrier_gens: carrier.basis_generators(),
        actor_gens: actor.alg.basis_generators(),
    })
}

impl SmashAlgebra {
    /// `m ↦ m # 1`
    pub fn carrier_embedding(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.carrier_dim)
            .map(|m| crate::tensor::outer(&crate::linalg::basis_vector(self.carrier_dim, m), &self.actor_unit))
            .collect();
        Matrix::from_columns(self.alg.dim(), &cols)
    }

    /// `x ↦ 1 # x`
    pub fn actor_embedding(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.actor_dim)
            .map(|x| crate::tensor::outer(&self.carrier_unit, &crate::linalg::basis_vector(self.actor_dim, x)))
            .collect();
        Matrix::from_columns(self.alg.dim(), &cols)
    }

    /// Images of both embeddings; they generate the smash product.
    pub fn generators(&self) -> Vec<Vector> {
        let (c, a) = (self.carrier_embedding(), self.actor_embedding());
        self.carrier_gens.iter().map(|&i| c.column(i)).chain(self.actor_gens.iter().map(|&i| a.column(i))).collect()
    }

    pub fn check_associative(&self) -> Option<String> {
        self.alg.check_associative_generated(&self.generators())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::check::all_passed;

    #[test]
    fn adjoint_examples() {
        let sw = catalog::sweedler();
        let ad = adjoint_action(&sw);
        let (g, x) = (sw.alg.basis_element(1), sw.alg.basis_element(2));
        assert_eq!(ad.act(&g, &x), crate::linalg::scale(&x, &Scalar::from_int(-1)));
        for b in 0..4 {
            assert_eq!(ad.act(&sw.alg.unit, &sw.alg.basis_element(b)), sw.alg.basis_element(b));
        }
        let z2 = catalog::group_cyclic(2);
        let ad = adjoint_action(&z2);
        for b in 0..2 {
            assert_eq!(ad.act(&z2.alg.basis_element(1), &z2.alg.basis_element(b)), z2.alg.basis_element(b));
        }
    }

    #[test]
    fn coregular_example() {
        // on k[ℤ/2]: g ⇀ δ_g = δ_e
        let z2 = catalog::group_cyclic(2);
        let act = coregular_left(&z2);
        let d = z2.dual();
        assert_eq!(act.act(&z2.alg.basis_element(1), &d.alg.basis_element(1)), d.alg.basis_element(0));
        let sw = catalog::sweedler();
        let act = coregular_left(&sw);
        for x in 0..4 {
            assert_eq!(act.act(&sw.alg.unit, &sw.alg.basis_element(x)), sw.alg.basis_element(x));
        }
    }

    #[test]
    fn catalog_actions_are_module_algebras() {
        for h in [catalog::trivial(), catalog::group_cyclic(3), catalog::sweedler(), catalog::group_s3(), catalog::taft(3)] {
            let d = h.dual();
            assert!(all_passed(&verify_module_algebra(&h, &h.alg, &adjoint_action(&h))), "{}", h.name());
            assert!(all_passed(&verify_module_algebra(&h, &d.alg, &coregular_left(&h))), "{}", h.name());
            assert!(all_passed(&verify_module_algebra(&h.op(), &d.alg, &coregular_right(&h))), "{}", h.name());
        }
    }

    #[test]
    fn broken_actions_fail() {
        let sw = catalog::sweedler();
        let d = sw.dual();
        let zero = Action { actor_dim: 4, carrier_dim: 4, table: vec![Vec::new(); 16] };
        assert!(!verify_module_algebra(&sw, &d.alg, &zero)[0].passed);
        // a ⇀ x = ⟨a, x_1⟩ x_2 read as a left action of A: Leibniz survives, the module law does not
        let swapped = coregular_right(&sw);
        let checks = verify_module_algebra(&sw, &d.alg, &swapped);
        assert!(checks[1].passed);
        assert!(!checks[2].passed);
    }

    #[test]
    fn trivial_action_gives_tensor_product() {
        let sw = catalog::sweedler();
        let m = catalog::group_cyclic(3);
        let s = smash_product(&m.alg, &sw, &trivial_action(&sw, &m.alg)).unwrap();
        let pair = [&m.alg, &sw.alg];
        for i in 0..s.alg.dim() {
            for j in 0..s.alg.dim() {
                let (a, b) = (s.alg.basis_element(i), s.alg.basis_element(j));
                assert_eq!(s.alg.mul(&a, &b), crate::tensor::mul(&pair, &a, &b));
            }
        }
    }

    #[test]
    fn sweedler_heisenberg_associative() {
        let sw = catalog::sweedler();
        let d = sw.dual();
        let h = smash_product(&sw.alg, &d, &coregular_left(&d)).unwrap();
        assert!(h.alg.check_associative().is_none());
        assert!(h.check_associative().is_none());
        assert!(h.alg.check_unit().is_none());
    }
}
