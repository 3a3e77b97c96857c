//! Named check suites over one Hopf algebra.

use std::cell::OnceCell;
use std::str::FromStr;
use std::time::Instant;

use crate::check::{compare, first_failure, Check};
use crate::double::{BigHeisenberg, DoublePackage};
use crate::error::{Error, Result};
use crate::hopf::{verify_pairing, HopfAlgebra};
use crate::linalg::Matrix;
use crate::reduction;
use crate::report::CheckReport;
use crate::rtt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Hopf,
    Pairing,
    Double,
    Ybe,
    Iota,
    Moment,
    Reduction,
    Rtt,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] =
        [Suite::Hopf, Suite::Pairing, Suite::Double, Suite::Ybe, Suite::Iota, Suite::Moment, Suite::Reduction, Suite::Rtt];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Pairing => "pairing",
            Suite::Double => "double",
            Suite::Ybe => "ybe",
            Suite::Iota => "iota",
            Suite::Moment => "moment",
            Suite::Reduction => "reduction",
            Suite::Rtt => "rtt",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH.into_iter().chain([Suite::All]).find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Run the parts whose ambient space has dimension above `HEAVY_DIM`.
    pub heavy: bool,
}

/// Largest `dim H(T(A)^op) = n⁴` run without `--heavy`.
pub const HEAVY_DIM: usize = 256;

struct Runner<'a> {
    a: &'a HopfAlgebra,
    opts: Options,
    pkg: OnceCell<std::result::Result<DoublePackage, String>>,
    notes: Vec<String>,
}

impl<'a> Runner<'a> {
    fn heavy(&self) -> bool {
        self.a.dim().pow(4) > HEAVY_DIM
    }

    fn gated(&mut self, what: &str) -> bool {
        if self.heavy() && !self.opts.heavy {
            self.notes.push(format!("{what} skipped: ambient dimension {} needs --heavy", self.a.dim().pow(4)));
            return true;
        }
        false
    }

    /// Runs `f` on the double package, or reports why it could not be built.
    fn with_pkg(&self, f: impl FnOnce(&DoublePackage) -> Result<Vec<Check>>) -> Vec<Check> {
        match self.pkg.get_or_init(|| DoublePackage::new(self.a).map_err(|e| e.to_string())) {
            Ok(pkg) => f(pkg).unwrap_or_else(|e| vec![Check::fail("construction", "drinfeld-mult", e.to_string())]),
            Err(e) => vec![Check::fail("double_construction", "drinfeld-mult", e.clone())],
        }
    }

    fn run(&mut self, suite: Suite) -> Vec<Check> {
        let a = self.a;
        match suite {
            Suite::Hopf => {
                let mut out = a.verify();
                let dual = a.dual();
                out.push(Check::from_witness(
                    "dual_hopf",
                    "hopf-axioms",
                    first_failure(dual.verify().into_iter().map(|c| c.witness.map(|w| format!("{}: {w}", c.name)))),
                ));
                out.push(Check::from_bool("dual_dual", "dual", dual.dual().same_structure(a), || "A** differs from A".into()));
                out.push(Check::from_bool("op_op", "dual", a.op().op().same_structure(a), || "(A^op)^op differs from A".into()));
                out.push(Check::from_bool("cop_cop", "dual", a.cop().cop().same_structure(a), || "(A^cop)^cop differs from A".into()));
                out
            }
            Suite::Pairing => {
                let n = a.dim();
                let mut out = verify_pairing(a, &a.dual(), &Matrix::identity(n));
                let dd = a.dual().dual();
                out.push(Check::from_witness(
                    "pairing_bidual",
                    "pairing",
                    first_failure(verify_pairing(&a.dual(), &dd, &Matrix::identity(n)).into_iter().map(|c| c.witness)),
                ));
                out
            }
            Suite::Double => self.with_pkg(|p| {
                let mut out = p.check_double()?;
                out.extend(p.check_tdual()?);
                Ok(out)
            }),
            Suite::Ybe => self.with_pkg(|p| Ok(p.check_r())),
            Suite::Iota => self.with_pkg(|p| p.check_heisenberg()),
            Suite::Moment => {
                let big = !self.gated("big Heisenberg double");
                self.with_pkg(|p| {
                    let mut out = p.check_mu_r_explicit()?;
                    if big {
                        out.extend(BigHeisenberg::new(p)?.check(p));
                    }
                    Ok(out)
                })
            }
            Suite::Reduction => {
                if self.gated("reduction") {
                    return Vec::new();
                }
                self.with_pkg(|p| {
                    let n = p.n();
                    let big = BigHeisenberg::new(p)?;
                    let red = reduction::reduce_big_heisenberg(p, &big)?;
                    let mut out = red.checks.clone();
                    out.push(Check::from_bool("reduction_dimension", "heis-iso", red.dim() == n * n, || {
                        format!("dimension {} (quotient {}), expected {}", red.dim(), red.quotient_dim, n * n)
                    }));
                    let phi = reduction::build_phi(p, &big);
                    let (phi_checks, coords) = reduction::check_phi(p, &big, &red, &phi);
                    out.extend(phi_checks);
                    match coords {
                        Some(c) => out.extend(reduction::residual_moment_map(p, &big, &red, &c)?),
                        None => out.push(Check::fail("mu_r_matches_explicit", "hom", "φ is not available")),
                    }
                    Ok(out)
                })
            }
            Suite::Rtt => {
                if self.gated("rtt") {
                    return Vec::new();
                }
                let mut note = None;
                let out = self.with_pkg(|p| {
                    let (checks, frt) = rtt::check_all(p)?;
                    let nz = frt.discrepancy.iter().filter(|c| !c.is_zero()).count();
                    note = Some(if nz == 0 {
                        "frt discrepancy is zero".to_string()
                    } else {
                        format!("frt discrepancy has {nz} nonzero coefficients")
                    });
                    Ok(checks)
                });
                self.notes.extend(note);
                out
            }
            // the double suite already covers the R-matrix checks
            Suite::All => Suite::EACH.into_iter().filter(|s| *s != Suite::Ybe).flat_map(|s| self.run(s)).collect(),
        }
    }
}

/// Runs a suite. Fails with `Error::Gated` when every check of the suite needs `--heavy`.
pub fn run(suite: Suite, a: &HopfAlgebra, opts: Options) -> Result<CheckReport> {
    let start = Instant::now();
    let mut runner = Runner { a, opts, pkg: OnceCell::new(), notes: Vec::new() };
    let checks = runner.run(suite);
    if checks.is_empty() && !runner.notes.is_empty() {
        return Err(Error::Gated(runner.notes.join("; ")));
    }
    Ok(CheckReport::new(suite.name(), a.name(), checks, runner.notes, start.elapsed().as_millis() as u64))
}

/// Structural checks of a loaded file: Hopf axioms, or unit and associativity for a plain algebra.
pub fn validate(loaded: &crate::format::Loaded) -> CheckReport {
    let start = Instant::now();
    let checks = match loaded {
        crate::format::Loaded::Hopf(h) => h.verify(),
        crate::format::Loaded::Plain(a) => vec![
            Check::from_witness("unit", "hopf-axioms", a.check_unit()),
            Check::from_witness("associativity", "hopf-axioms", a.check_associative()),
        ],
    };
    CheckReport::new("validate", &loaded.algebra().name, checks, Vec::new(), start.elapsed().as_millis() as u64)
}

/// Compares two Hopf algebras coefficientwise; used by tests and the Python bindings.
pub fn structure_difference(a: &HopfAlgebra, b: &HopfAlgebra) -> Option<String> {
    if a.dim() != b.dim() {
        return Some(format!("dimensions {} and {}", a.dim(), b.dim()));
    }
    let n = a.dim();
    let mult = |h: &HopfAlgebra| -> Vec<crate::scalar::Scalar> {
        (0..n * n).flat_map(|ij| h.alg.mul(&h.alg.basis_element(ij / n), &h.alg.basis_element(ij % n))).collect()
    };
    let co = |h: &HopfAlgebra| crate::double::dense_cotable(&h.comult, n).concat();
    compare(&mult(a), &mult(b), &[n, n, n])
        .map(|w| format!("mult: {w}"))
        .or_else(|| compare(&co(a), &co(b), &[n, n, n]).map(|w| format!("comult: {w}")))
        .or_else(|| compare(&a.antipode.columns().concat(), &b.antipode.columns().concat(), &[n, n]).map(|w| format!("antipode: {w}")))
}
