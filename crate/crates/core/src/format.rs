//! The JSON algebra file format.
//!
//! Sparse entries are index lists followed by a scalar string: `mult` holds
//! `[i, j, k, c]` for `e_i e_j ∋ c e_k`, `comult` holds `[i, j, k, c]` for
//! `Δ(e_i) ∋ c e_j⊗e_k`, and `antipode` holds `[i, j, c]` for `S(e_j) ∋ c e_i`.
//! Emitted entries are merged, sorted and free of zeros, so emit → load → emit
//! is byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{nonzeros, Algebra, MultTable};
use crate::error::{Error, Result};
use crate::hopf::{CoTable, HopfAlgebra};
use crate::linalg::{zeros, Matrix};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldFile,
    pub dim: usize,
    pub basis: Vec<String>,
    pub is_hopf: bool,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<String>>,
    pub mult: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, usize, String)>>,
}

/// A loaded file: a Hopf algebra, or an algebra without coalgebra structure.
#[derive(Clone, Debug)]
pub enum Loaded {
    Hopf(HopfAlgebra),
    Plain(Algebra),
}

impl Loaded {
    pub fn algebra(&self) -> &Algebra {
        match self {
            Loaded::Hopf(h) => &h.alg,
            Loaded::Plain(a) => a,
        }
    }

    pub fn into_hopf(self) -> Result<HopfAlgebra> {
        match self {
            Loaded::Hopf(h) => Ok(h),
            Loaded::Plain(a) => Err(Error::InvalidFile(format!("`{}` is not a Hopf algebra", a.name))),
        }
    }
}

fn field_file(f: FieldSpec) -> FieldFile {
    match f {
        FieldSpec::Rational => FieldFile { kind: "rational".into(), order: None },
        FieldSpec::Cyclotomic(n) => FieldFile { kind: "cyclotomic".into(), order: Some(n) },
    }
}

fn field_spec(f: &FieldFile) -> Result<FieldSpec> {
    let spec = match (f.kind.as_str(), f.order) {
        ("rational", None) => FieldSpec::Rational,
        ("cyclotomic", Some(n)) => FieldSpec::Cyclotomic(n),
        ("rational", Some(_)) => return Err(Error::BadField("a rational field carries no order".into())),
        ("cyclotomic", None) => return Err(Error::BadField("a cyclotomic field needs an order".into())),
        (k, _) => return Err(Error::BadField(format!("unknown field kind `{k}`"))),
    };
    spec.validate()?;
    Ok(spec)
}

fn vector_strings(f: FieldSpec, v: &[Scalar]) -> Vec<String> {
    v.iter().map(|c| f.format(c)).collect()
}

fn mult_entries(a: &Algebra) -> Vec<(usize, usize, usize, String)> {
    let n = a.dim();
    let mut out: Vec<_> = a
        .mult
        .iter()
        .enumerate()
        .flat_map(|(ij, terms)| merge(terms.iter().map(|(k, c)| (*k, c.clone()))).into_iter().map(move |(k, c)| (ij / n, ij % n, k, c)))
        .map(|(i, j, k, c)| (i, j, k, a.field.format(&c)))
        .collect();
    out.sort();
    out
}

fn merge<K: Ord>(terms: impl Iterator<Item = (K, Scalar)>) -> Vec<(K, Scalar)> {
    let mut acc: BTreeMap<K, Scalar> = BTreeMap::new();
    for (k, c) in terms {
        acc.entry(k).or_default().add_assign_ref(&c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn to_file_hopf(h: &HopfAlgebra) -> AlgebraFile {
    let f = h.alg.field;
    let mut comult: Vec<_> = h
        .comult
        .iter()
        .enumerate()
        .flat_map(|(i, terms)| merge(terms.iter().map(|(j, k, c)| ((*j, *k), c.clone()))).into_iter().map(move |((j, k), c)| (i, j, k, f.format(&c))))
        .collect();
    comult.sort();
    let mut antipode = Vec::new();
    for j in 0..h.dim() {
        for (i, c) in nonzeros(&h.antipode.column(j)) {
            antipode.push((i, j, f.format(c)));
        }
    }
    antipode.sort();
    AlgebraFile {
        is_hopf: true,
        counit: Some(vector_strings(f, &h.counit)),
        comult: Some(comult),
        antipode: Some(antipode),
        ..to_file_algebra(&h.alg)
    }
}

pub fn to_file_algebra(a: &Algebra) -> AlgebraFile {
    AlgebraFile {
        name: a.name.clone(),
        field: field_file(a.field),
        dim: a.dim(),
        basis: a.basis.clone(),
        is_hopf: false,
        unit: vector_strings(a.field, &a.unit),
        counit: None,
        mult: mult_entries(a),
        comult: None,
        antipode: None,
    }
}

fn render(file: &AlgebraFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("algebra files serialize");
    s.push('\n');
    s
}

pub fn emit_hopf(h: &HopfAlgebra) -> String {
    render(&to_file_hopf(h))
}

pub fn emit_algebra(a: &Algebra) -> String {
    render(&to_file_algebra(a))
}

pub fn emit(l: &Loaded) -> String {
    match l {
        Loaded::Hopf(h) => emit_hopf(h),
        Loaded::Plain(a) => emit_algebra(a),
    }
}

fn parse_in(f: FieldSpec, s: &str, what: &str) -> Result<Scalar> {
    let c = f.parse(s).map_err(|e| Error::InvalidFile(format!("{what}: {e}")))?;
    if !f.contains(&c) {
        return Err(Error::InvalidFile(format!("{what}: `{s}` is not in the field {f}")));
    }
    Ok(c)
}

fn parse_vector(f: FieldSpec, v: &[String], n: usize, what: &str) -> Result<Vec<Scalar>> {
    if v.len() != n {
        return Err(Error::InvalidFile(format!("{what} has {} entries, expected {n}", v.len())));
    }
    v.iter().enumerate().map(|(i, s)| parse_in(f, s, &format!("{what}[{i}]"))).collect()
}

fn check_index(i: usize, n: usize, what: &str) -> Result<()> {
    if i >= n {
        return Err(Error::InvalidFile(format!("{what}: index {i} out of range for dimension {n}")));
    }
    Ok(())
}

/// Builds algebra objects from a parsed file; structure is validated, axioms are not.
pub fn from_file(file: &AlgebraFile) -> Result<Loaded> {
    let f = field_spec(&file.field)?;
    let n = file.dim;
    if file.basis.len() != n {
        return Err(Error::InvalidFile(format!("{} basis labels for dimension {n}", file.basis.len())));
    }
    let unit = parse_vector(f, &file.unit, n, "unit")?;
    let mut mult: MultTable = vec![Vec::new(); n * n];
    let mut seen = std::collections::BTreeSet::new();
    for (i, j, k, s) in &file.mult {
        for x in [i, j, k] {
            check_index(*x, n, "mult")?;
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(Error::InvalidFile(format!("mult: duplicate entry [{i}, {j}, {k}]")));
        }
        let c = parse_in(f, s, "mult")?;
        if !c.is_zero() {
            mult[i * n + j].push((*k, c));
        }
    }
    for terms in &mut mult {
        terms.sort_by_key(|(k, _)| *k);
    }
    let alg = Algebra::new(file.name.clone(), f, file.basis.clone(), mult, unit)?;
    if !file.is_hopf {
        if file.counit.is_some() || file.comult.is_some() || file.antipode.is_some() {
            return Err(Error::InvalidFile("coalgebra fields in a file with is_hopf = false".into()));
        }
        return Ok(Loaded::Plain(alg));
    }
    let missing = |what: &str| Error::InvalidFile(format!("Hopf algebra file without `{what}`"));
    let counit = parse_vector(f, file.counit.as_ref().ok_or_else(|| missing("counit"))?, n, "counit")?;
    let mut comult: CoTable = vec![Vec::new(); n];
    let mut seen = std::collections::BTreeSet::new();
    for (i, j, k, s) in file.comult.as_ref().ok_or_else(|| missing("comult"))? {
        for x in [i, j, k] {
            check_index(*x, n, "comult")?;
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(Error::InvalidFile(format!("comult: duplicate entry [{i}, {j}, {k}]")));
        }
        let c = parse_in(f, s, "comult")?;
        if !c.is_zero() {
            comult[*i].push((*j, *k, c));
        }
    }
    let mut s_cols = vec![zeros(n); n];
    let mut seen = std::collections::BTreeSet::new();
    for (i, j, s) in file.antipode.as_ref().ok_or_else(|| missing("antipode"))? {
        check_index(*i, n, "antipode")?;
        check_index(*j, n, "antipode")?;
        if !seen.insert((*i, *j)) {
            return Err(Error::InvalidFile(format!("antipode: duplicate entry [{i}, {j}]")));
        }
        s_cols[*j][*i] = parse_in(f, s, "antipode")?;
    }
    Ok(Loaded::Hopf(HopfAlgebra::new(alg, comult, counit, Matrix::from_columns(n, &s_cols))?))
}

pub fn load_str(s: &str) -> Result<Loaded> {
    let file: AlgebraFile = serde_json::from_str(s).map_err(|e| Error::InvalidFile(e.to_string()))?;
    from_file(&file)
}

pub fn load_path(path: &std::path::Path) -> Result<Loaded> {
    load_str(&std::fs::read_to_string(path)?)
}

/// `catalog:<name>` or a path to an algebra file.
pub fn load_source(source: &str) -> Result<Loaded> {
    match source.strip_prefix("catalog:") {
        Some(name) => Ok(Loaded::Hopf(crate::catalog::build(name)?)),
        None => load_path(std::path::Path::new(source)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_round_trip_is_byte_identical() {
        for name in catalog::NAMES {
            let h = catalog::build(name).unwrap();
            let first = emit_hopf(&h);
            let loaded = load_str(&first).unwrap().into_hopf().unwrap();
            assert!(loaded.same_structure(&h), "{name}");
            assert_eq!(emit_hopf(&loaded), first, "{name}");
        }
    }

    #[test]
    fn plain_algebra_round_trip() {
        let h = catalog::sweedler();
        let text = emit_algebra(&h.alg);
        let Loaded::Plain(a) = load_str(&text).unwrap() else { panic!("expected a plain algebra") };
        assert_eq!(a.mult, h.alg.mult);
        assert_eq!(emit_algebra(&a), text);
    }

    #[test]
    fn cyclotomic_scalars_are_full_length() {
        let text = emit_hopf(&catalog::taft(3));
        assert!(text.contains("\"[0,1]\""));
        assert!(text.contains("\"kind\": \"cyclotomic\""));
    }

    #[test]
    fn rejects_malformed_files() {
        let good: serde_json::Value = serde_json::from_str(&emit_hopf(&catalog::sweedler())).unwrap();
        let bad = |edit: &dyn Fn(&mut serde_json::Value)| {
            let mut v = good.clone();
            edit(&mut v);
            load_str(&v.to_string())
        };
        assert!(bad(&|v| v["dim"] = 5.into()).is_err());
        assert!(bad(&|v| v["mult"][0][2] = 9.into()).is_err());
        assert!(bad(&|v| v["mult"][0][3] = "1/0".into()).is_err());
        assert!(bad(&|v| v["unit"][0] = "[1,2]".into()).is_err());
        assert!(bad(&|v| v["field"]["kind"] = "real".into()).is_err());
        assert!(bad(&|v| v["extra"] = 1.into()).is_err());
        assert!(bad(&|v| {
            let first = v["mult"][0].clone();
            v["mult"].as_array_mut().unwrap().push(first);
        })
        .is_err());
        assert!(bad(&|v| v.as_object_mut().unwrap().remove("antipode").map(|_| ()).unwrap()).is_err());
        assert!(load_str("not json").is_err());
        // axiom failures still load
        assert!(bad(&|v| v["antipode"][0][2] = "2".into()).is_ok());
    }
}
