//! Python bindings. Reports and algebra files cross the boundary as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hopfcheck::double::{drinfeld_double, heisenberg};
use hopfcheck::format::{self, Loaded};
use hopfcheck::suites::{self, Options, Suite};
use hopfcheck::{catalog, Error};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts `catalog:<name>`, a path, or the JSON text of an algebra file.
fn load(source: &str) -> Result<Loaded, Error> {
    if source.trim_start().starts_with('{') {
        format::load_str(source)
    } else {
        format::load_source(source)
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::NAMES.to_vec()
}

/// Catalog algebra as algebra-file JSON.
#[pyfunction]
fn emit(name: &str) -> PyResult<String> {
    Ok(format::emit_hopf(&catalog::build(name).map_err(py_err)?))
}

/// Runs a suite and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (suite, source, heavy = false))]
fn check(py: Python<'_>, suite: &str, source: &str, heavy: bool) -> PyResult<String> {
    let suite: Suite = suite.parse().map_err(py_err)?;
    let a = load(source).and_then(Loaded::into_hopf).map_err(py_err)?;
    let report = py.detach(|| suites::run(suite, &a, Options { heavy })).map_err(py_err)?;
    Ok(report.to_json())
}

#[pyfunction]
fn validate(source: &str) -> PyResult<String> {
    Ok(suites::validate(&load(source).map_err(py_err)?).to_json())
}

/// `double`, `dual`, `tdual` or `heisenberg`, as algebra-file JSON.
#[pyfunction]
fn build(kind: &str, source: &str) -> PyResult<String> {
    let a = load(source).and_then(Loaded::into_hopf).map_err(py_err)?;
    let built = match kind {
        "double" => Loaded::Hopf(drinfeld_double(&a).map_err(py_err)?),
        "dual" => Loaded::Hopf(a.dual().with_name(format!("{}*", a.name()))),
        "tdual" => Loaded::Hopf(drinfeld_double(&a).map_err(py_err)?.dual().with_name(format!("T({})", a.name()))),
        "heisenberg" => Loaded::Plain(heisenberg(&a).map_err(py_err)?.alg),
        _ => return Err(PyValueError::new_err(format!("unknown construction `{kind}`"))),
    };
    Ok(format::emit(&built))
}

#[pymodule]
fn pyhopfcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", hopfcheck::report::VERSION)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(emit, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    Ok(())
}
