//! Exact scalars: rationals and elements of cyclotomic fields ℚ(ζ_n).

mod cyclotomic;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use rational::Rational;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Cyclotomic(u32),
}

impl FieldSpec {
    /// Degree of the field over ℚ.
    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Rational => 1,
            FieldSpec::Cyclotomic(n) => totient(*n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Cyclotomic(0) => Err(Error::BadField("cyclotomic order must be at least 1".into())),
            _ => Ok(()),
        }
    }

    /// Whether `s` lies in this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (_, Scalar::Rat(_)) => true,
            (FieldSpec::Cyclotomic(n), Scalar::Cyc(c)) => c.order == *n,
            (FieldSpec::Rational, Scalar::Cyc(_)) => false,
        }
    }

    /// Parses `p/q`, or a bracketed coefficient list `[c0,c1,...]` for cyclotomic fields.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let FieldSpec::Cyclotomic(n) = *self else {
                return Err(Error::Parse(format!("coefficient list `{s}` in a rational field")));
            };
            let inner = inner.strip_suffix(']').ok_or_else(|| Error::Parse(format!("unterminated list `{s}`")))?;
            let coeffs = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(|c| c.parse::<Rational>()).collect::<Result<Vec<_>>>()?
            };
            if coeffs.len() > self.degree() {
                return Err(Error::Parse(format!("`{s}` has more than φ({n}) = {} coefficients", self.degree())));
            }
            return Ok(Scalar::from_coeffs(n, coeffs));
        }
        Ok(Scalar::Rat(t.parse()?))
    }

    /// Canonical string: `p/q` over ℚ, full-length `[c0,...]` over ℚ(ζ_n).
    pub fn format(&self, s: &Scalar) -> String {
        match self {
            FieldSpec::Rational => s.to_string(),
            FieldSpec::Cyclotomic(_) => {
                let mut cs = s.coeffs();
                cs.resize(self.degree(), Rational::ZERO);
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Cyclotomic(n) => write!(f, "cyclotomic({n})"),
        }
    }
}

/// An exact scalar. Rationals embed in every cyclotomic field, so a constant is
/// always `Rat` and `Cyc` always holds a nonconstant residue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Cyc(Cyclotomic),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub const fn zero() -> Self {
        Scalar::Rat(Rational::ZERO)
    }

    pub const fn one() -> Self {
        Scalar::Rat(Rational::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(Rational::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(Rational::new(n, d))
    }

    /// Residue of Σ c_k ζ_n^k in canonical form.
    pub fn from_coeffs(order: u32, mut coeffs: Vec<Rational>) -> Self {
        cyclotomic::reduce(order, &mut coeffs);
        Self::collapse(order, coeffs)
    }

    fn collapse(order: u32, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Scalar::zero(),
            1 => Scalar::Rat(coeffs.pop().unwrap()),
            _ => Scalar::Cyc(Cyclotomic { order, coeffs }),
        }
    }

    /// Coefficients of the canonical representative, trimmed.
    pub fn coeffs(&self) -> Vec<Rational> {
        match self {
            Scalar::Rat(r) if r.is_zero() => vec![],
            Scalar::Rat(r) => vec![r.clone()],
            Scalar::Cyc(c) => c.coeffs.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc(_) => None,
        }
    }

    /// Cyclotomic order of a nonconstant scalar; `None` for rationals.
    pub fn order(&self) -> Option<u32> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Cyc(c) => Some(c.order),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        match (self.order(), other.order()) {
            (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch(format!("ℚ(ζ_{a}) vs ℚ(ζ_{b})"))),
            _ => Ok(()),
        }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        match self {
            Scalar::Rat(r) => r.checked_inv().map(Scalar::Rat),
            Scalar::Cyc(c) => Some(Self::collapse(c.order, cyclotomic::inverse(c.order, &c.coeffs))),
        }
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("division by zero")
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Scalar::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `self += a * b`
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = a * b;
        self.add_assign_ref(&p);
    }

    pub fn add_assign_ref(&mut self, other: &Scalar) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        match (&mut *self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a = &*a + b,
            _ => *self = &*self + other,
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Rat(a), Scalar::Cyc(c)) | (Scalar::Cyc(c), Scalar::Rat(a)) => {
                let mut c = c.clone();
                c.coeffs[0] = &c.coeffs[0] + a;
                Scalar::Cyc(c)
            }
            (Scalar::Cyc(a), Scalar::Cyc(b)) => {
                assert_eq!(a.order, b.order, "field mismatch");
                let n = a.coeffs.len().max(b.coeffs.len());
                let coeffs = (0..n)
                    .map(|k| match (a.coeffs.get(k), b.coeffs.get(k)) {
                        (Some(x), Some(y)) => x + y,
                        (Some(x), None) | (None, Some(x)) => x.clone(),
                        (None, None) => unreachable!(),
                    })
                    .collect();
                Self::collapse(a.order, coeffs)
            }
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Cyc(c)) | (Scalar::Cyc(c), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Cyc(Cyclotomic { order: c.order, coeffs: c.coeffs.iter().map(|x| x * a).collect() })
            }
            (Scalar::Cyc(a), Scalar::Cyc(b)) => {
                assert_eq!(a.order, b.order, "field mismatch");
                Self::from_coeffs(a.order, cyclotomic::mul_poly(&a.coeffs, &b.coeffs))
            }
        }
    }

    fn neg_ref(&self) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Cyc(c) => Scalar::Cyc(Cyclotomic { order: c.order, coeffs: c.coeffs.iter().map(|x| -x).collect() }),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.add_ref(&rhs.neg_ref())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_ref(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_ref(&rhs)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc(c) => {
                let parts: Vec<String> = c.coeffs.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    a.check_compatible(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            let inv = b.checked_inv().ok_or(Error::DivisionByZero)?;
            a * &inv
        }
    })
}

/// The generator ζ_n of a cyclotomic field.
pub fn root_of_unity(spec: FieldSpec) -> Result<Scalar> {
    match spec {
        FieldSpec::Rational => Err(Error::NotCyclotomic),
        FieldSpec::Cyclotomic(0) => Err(Error::BadField("order 0".into())),
        FieldSpec::Cyclotomic(n) => Ok(Scalar::from_coeffs(n, vec![Rational::ZERO, Rational::ONE])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(n: u32) -> Scalar {
        root_of_unity(FieldSpec::Cyclotomic(n)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(scalar_arith(&Scalar::ratio(1, 2), &Scalar::ratio(1, 3), ArithOp::Add).unwrap(), Scalar::ratio(5, 6));
        assert_eq!(&zeta(4) * &zeta(4), Scalar::from_int(-1));
        assert_eq!(zeta(2), Scalar::from_int(-1));
        assert_eq!(zeta(1), Scalar::one());
        let z = zeta(3);
        assert_eq!(z.pow(3), Scalar::one());
        assert!(!z.is_one() && !z.pow(2).is_one());
        assert!(root_of_unity(FieldSpec::Rational).is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(scalar_arith(&Scalar::one(), &Scalar::zero(), ArithOp::Div), Err(Error::DivisionByZero)));
        assert!(matches!(scalar_arith(&zeta(3), &zeta(4), ArithOp::Add), Err(Error::FieldMismatch(_))));
        assert!(scalar_arith(&zeta(3), &Scalar::ratio(1, 2), ArithOp::Mul).is_ok());
    }

    #[test]
    fn zeta_is_primitive_root_of_phi() {
        for n in 1..=24u32 {
            let z = zeta(n);
            assert!(z.pow(n).is_one(), "n = {n}");
            for k in 1..n {
                assert!(!z.pow(k).is_one(), "n = {n}, k = {k}");
            }
            let phi = cyclotomic_polynomial(n);
            let mut acc = Scalar::zero();
            for (k, c) in phi.iter().enumerate() {
                acc.add_mul(&Scalar::from_int(*c), &z.pow(k as u32));
            }
            assert!(acc.is_zero(), "Φ_{n}(ζ) ≠ 0");
        }
    }

    #[test]
    fn string_round_trip() {
        let f = FieldSpec::Cyclotomic(5);
        let s = f.parse("[1/2,0,-3,0]").unwrap();
        assert_eq!(f.format(&s), "[1/2,0,-3,0]");
        assert_eq!(f.format(&Scalar::ratio(2, 3)), "[2/3,0,0,0]");
        assert_eq!(f.parse("2/3").unwrap(), Scalar::ratio(2, 3));
        assert!(FieldSpec::Rational.parse("[1,2]").is_err());
        assert!(f.parse("[1,2,3,4,5]").is_err());
        assert_eq!(FieldSpec::Rational.format(&Scalar::ratio(-4, 6)), "-2/3");
    }

    fn cyc(order: u32) -> impl Strategy<Value = Scalar> {
        let deg = totient(order);
        prop::collection::vec((-6i64..=6, 1i64..=4), deg).prop_map(move |v| {
            Scalar::from_coeffs(order, v.into_iter().map(|(n, d)| Rational::new(n, d)).collect())
        })
    }

    fn any_scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![cyc(1), cyc(3), cyc(4), cyc(5), cyc(12)]
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        prop_oneof![Just(1u32), Just(3), Just(5), Just(8), Just(12)].prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &Scalar::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv()).is_one());
            }
        }

        #[test]
        fn normalization_idempotent(a in any_scalar()) {
            let order = a.order().unwrap_or(1);
            let again = Scalar::from_coeffs(order, a.coeffs());
            prop_assert_eq!(again, a);
        }
    }
}
