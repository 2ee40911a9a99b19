//! Python bindings. Thin wrappers: every operation delegates to the core
//! crate, converts errors to `ValueError`/`RuntimeError`, and hands complex
//! reports back as plain dicts so callers can feed them straight to `json`.

use kronrep::cover::{
    construct_for_root, enumerate_subtrees, Composition, LabelPermutation, LabeledSubtree,
    DEFAULT_BUDGET,
};
use kronrep::export::{
    coefficient_quiver_dot, module_to_json, subtree_to_dot, subtree_to_json, JsonEntries,
};
use kronrep::field::{Field, FieldSpec, PrimeField, Rationals};
use kronrep::matrix::Mat;
use kronrep::module::KroneckerModule;
use kronrep::root_system::{self, ArrowCount, CoxeterDirection, DimVector, RootKind};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

const DEFAULT_SEED: u64 = 0xC0FFEE;

fn err(e: kronrep::Error) -> PyErr {
    match e {
        kronrep::Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn arrows(n: u32) -> PyResult<ArrowCount> {
    ArrowCount::new(n).map_err(err)
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                i.into_py_any(py)
            } else if let Some(u) = num.as_u64() {
                u.into_py_any(py)
            } else {
                num.as_f64().expect("finite").into_py_any(py)
            }
        }
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(entries) => {
            let dict = PyDict::new(py);
            for (k, val) in entries {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

fn mat_to_value<F: JsonEntries>(f: &F, m: &Mat<F::Elem>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|e| f.entry_json(e)).collect()))
            .collect(),
    )
}

#[pyfunction]
fn tits_form(n: u32, x: i64, y: i64) -> PyResult<i128> {
    root_system::tits_form(arrows(n)?, DimVector::new(x, y)).map_err(err)
}

#[pyfunction]
fn classify(n: u32, x: i64, y: i64) -> PyResult<&'static str> {
    let class = root_system::classify(arrows(n)?, DimVector::new(x, y)).map_err(err)?;
    Ok(match class.kind {
        RootKind::Real => "real",
        RootKind::Imaginary => "imaginary",
        RootKind::NotARoot => "not_a_root",
    })
}

#[pyfunction]
fn reflect_source(n: u32, x: i64, y: i64) -> PyResult<(i64, i64)> {
    let w = root_system::reflect_source(arrows(n)?, DimVector::new(x, y)).map_err(err)?;
    Ok((w.x, w.y))
}

#[pyfunction]
fn reflect_sink(n: u32, x: i64, y: i64) -> PyResult<(i64, i64)> {
    let w = root_system::reflect_sink(arrows(n)?, DimVector::new(x, y)).map_err(err)?;
    Ok((w.x, w.y))
}

#[pyfunction]
fn coxeter(n: u32, x: i64, y: i64, direction: &str) -> PyResult<(i64, i64)> {
    let dir = match direction {
        "forward" => CoxeterDirection::Forward,
        "inverse" => CoxeterDirection::Inverse,
        other => {
            return Err(PyValueError::new_err(format!(
                "direction must be \"forward\" or \"inverse\", got {other:?}"
            )))
        }
    };
    let w = root_system::coxeter(arrows(n)?, DimVector::new(x, y), dir).map_err(err)?;
    Ok((w.x, w.y))
}

#[pyfunction]
fn is_positive_imaginary_root(n: u32, x: i64, y: i64) -> PyResult<bool> {
    root_system::is_positive_imaginary_root(arrows(n)?, DimVector::new(x, y)).map_err(err)
}

#[pyfunction]
fn in_fundamental_domain(n: u32, x: i64, y: i64) -> PyResult<bool> {
    root_system::in_fundamental_domain(arrows(n)?, DimVector::new(x, y)).map_err(err)
}

#[pyfunction]
fn reduce_to_fundamental_domain(n: u32, x: i64, y: i64) -> PyResult<((i64, i64), i64)> {
    let (w, steps) =
        root_system::reduce_to_fundamental_domain(arrows(n)?, DimVector::new(x, y))
            .map_err(err)?;
    Ok(((w.x, w.y), steps))
}

#[pyfunction]
fn cover_thin_exists(n: u32, x: i64, y: i64) -> PyResult<bool> {
    Ok(root_system::cover_thin_exists(arrows(n)?, DimVector::new(x, y)))
}

#[pyfunction]
fn preprojective_dims(n: u32, count: usize) -> PyResult<Vec<(i64, i64)>> {
    let dims = root_system::preprojective_dims(arrows(n)?, count).map_err(err)?;
    Ok(dims.into_iter().map(|d| (d.x, d.y)).collect())
}

#[pyfunction]
fn preinjective_dims(n: u32, count: usize) -> PyResult<Vec<(i64, i64)>> {
    let dims = root_system::preinjective_dims(arrows(n)?, count).map_err(err)?;
    Ok(dims.into_iter().map(|d| (d.x, d.y)).collect())
}

#[pyfunction]
fn hom_dim_via_overlaps(t: &Subtree, u: &Subtree) -> usize {
    kronrep::hom::hom_dim_via_overlaps(&t.inner, &u.inner)
}

#[pyfunction]
fn iso_cover_thin(t: &Subtree, u: &Subtree) -> bool {
    kronrep::hom::iso_cover_thin(&t.inner, &u.inner)
}

#[pyfunction]
#[pyo3(signature = (n, max_total_dim, seed=DEFAULT_SEED, budget=DEFAULT_BUDGET))]
fn verify_theorem_window(
    py: Python<'_>,
    n: u32,
    max_total_dim: i64,
    seed: u64,
    budget: i64,
) -> PyResult<Py<PyAny>> {
    let report = kronrep::verify::verify_theorem_window(arrows(n)?, max_total_dim, seed, budget)
        .map_err(err)?;
    json_to_py(py, &serde_json::to_value(&report).expect("serializable"))
}

#[pyfunction]
#[pyo3(signature = (n, max_each_total_dim, budget=DEFAULT_BUDGET))]
fn verify_hom_oracle(
    py: Python<'_>,
    n: u32,
    max_each_total_dim: i64,
    budget: i64,
) -> PyResult<Py<PyAny>> {
    let check = kronrep::verify::verify_hom_oracle(arrows(n)?, max_each_total_dim, budget)
        .map_err(err)?;
    json_to_py(py, &serde_json::to_value(&check).expect("serializable"))
}

#[pyfunction]
fn region_csv(n: u32, max_coord: i64) -> PyResult<String> {
    kronrep::export::region_csv(arrows(n)?, max_coord).map_err(err)
}

/// Deck-equivalence class representative: a finite connected subtree of the
/// universal cover with edge labels.
#[pyclass]
struct Subtree {
    inner: LabeledSubtree,
}

#[pymethods]
impl Subtree {
    /// Canonical cover-thin subtree for the dimension vector (x, y);
    /// `composition` optionally fixes the zigzag shape.
    #[staticmethod]
    #[pyo3(signature = (n, x, y, composition=None))]
    fn construct(n: u32, x: i64, y: i64, composition: Option<Vec<u32>>) -> PyResult<Subtree> {
        let comp = composition.map(Composition::new);
        let inner = construct_for_root(arrows(n)?, DimVector::new(x, y), comp.as_ref())
            .map_err(err)?;
        Ok(Subtree { inner })
    }

    /// All deck-equivalence classes in dimension (x, y), sorted by canonical
    /// code.
    #[staticmethod]
    #[pyo3(signature = (n, x, y, budget=DEFAULT_BUDGET))]
    fn enumerate(n: u32, x: i64, y: i64, budget: i64) -> PyResult<Vec<Subtree>> {
        let classes = enumerate_subtrees(arrows(n)?, x, y, budget).map_err(err)?;
        Ok(classes.into_iter().map(|inner| Subtree { inner }).collect())
    }

    fn dim(&self) -> (i64, i64) {
        let d = self.inner.dim();
        (d.x, d.y)
    }

    fn arrows(&self) -> u32 {
        self.inner.n().get()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().map(|w| w.to_string()).collect()
    }

    /// Edges as (source word, label, sink word) triples.
    fn edges(&self) -> Vec<(String, u8, String)> {
        self.inner
            .edges()
            .into_iter()
            .map(|e| (e.source.to_string(), e.label, e.sink.to_string()))
            .collect()
    }

    fn code(&self) -> String {
        self.inner.canonical_code().to_hex()
    }

    fn permute(&self, image: Vec<u8>) -> PyResult<Subtree> {
        let p = LabelPermutation::new(image, self.inner.n()).map_err(err)?;
        Ok(Subtree { inner: self.inner.permute_labels(&p).map_err(err)? })
    }

    fn dualize(&self) -> Subtree {
        Subtree { inner: self.inner.dualize() }
    }

    fn to_dot(&self) -> String {
        subtree_to_dot(&self.inner)
    }

    fn to_json(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        json_to_py(py, &subtree_to_json(&self.inner))
    }

    /// Matrix presentation over the chosen field ("f2", "f17", "q", ...).
    #[pyo3(signature = (field="f2"))]
    fn pushdown(&self, field: &str) -> PyResult<Module> {
        let inner = match FieldSpec::parse(field).map_err(err)? {
            FieldSpec::Prime(p) => ModuleInner::Prime(
                KroneckerModule::pushdown(&self.inner, PrimeField::new(p).map_err(err)?)
                    .map_err(err)?,
            ),
            FieldSpec::Rationals => ModuleInner::Rational(
                KroneckerModule::pushdown(&self.inner, Rationals).map_err(err)?,
            ),
        };
        Ok(Module { inner })
    }

    fn __repr__(&self) -> String {
        let d = self.inner.dim();
        format!(
            "Subtree(n={}, dim=({}, {}), code={})",
            self.inner.n().get(),
            d.x,
            d.y,
            self.inner.canonical_code().to_hex()
        )
    }
}

enum ModuleInner {
    Prime(KroneckerModule<PrimeField>),
    Rational(KroneckerModule<Rationals>),
}

macro_rules! with_inner {
    ($slf:expr, $m:ident => $body:expr) => {
        match &$slf.inner {
            ModuleInner::Prime($m) => $body,
            ModuleInner::Rational($m) => $body,
        }
    };
}

/// Sparse matrix presentation of a module: one x-by-y matrix per arrow.
#[pyclass]
struct Module {
    inner: ModuleInner,
}

#[pymethods]
impl Module {
    fn dim(&self) -> (i64, i64) {
        with_inner!(self, m => {
            let d = m.dim();
            (d.x, d.y)
        })
    }

    fn total_dim(&self) -> usize {
        with_inner!(self, m => m.total_dim())
    }

    fn arrows(&self) -> u32 {
        with_inner!(self, m => m.n().get())
    }

    fn field(&self) -> String {
        with_inner!(self, m => m.field().name())
    }

    fn nonzeros(&self) -> usize {
        with_inner!(self, m => m.nonzero_count())
    }

    /// Row-major entry lists, one per arrow; rational entries come back as
    /// strings.
    fn matrices(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let value = with_inner!(self, m => Value::Array(
            m.matrices().iter().map(|mat| mat_to_value(m.field(), mat)).collect(),
        ));
        json_to_py(py, &value)
    }

    fn to_json(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let value = with_inner!(self, m => module_to_json(m));
        json_to_py(py, &value)
    }

    fn to_dot(&self) -> String {
        with_inner!(self, m => coefficient_quiver_dot(m))
    }

    fn coefficient_report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = with_inner!(self, m => m.coefficient_quiver_report());
        json_to_py(py, &serde_json::to_value(&report).expect("serializable"))
    }

    /// Endomorphism-ring analysis: dict with `dim_end` and a `verdict` of
    /// "Indecomposable", "Decomposable", or "Undecided".
    #[pyo3(signature = (seed=DEFAULT_SEED))]
    fn end_is_local(&self, py: Python<'_>, seed: u64) -> PyResult<Py<PyAny>> {
        let analysis = with_inner!(self, m => kronrep::hom::end_is_local(m, seed).map_err(err)?);
        json_to_py(py, &serde_json::to_value(&analysis).expect("serializable"))
    }

    fn hom_dim(&self, other: &Module) -> PyResult<usize> {
        match (&self.inner, &other.inner) {
            (ModuleInner::Prime(a), ModuleInner::Prime(b)) => {
                kronrep::hom::hom_dim(a, b).map_err(err)
            }
            (ModuleInner::Rational(a), ModuleInner::Rational(b)) => {
                kronrep::hom::hom_dim(a, b).map_err(err)
            }
            _ => Err(PyValueError::new_err("modules live over different fields")),
        }
    }

    /// Invertible intertwining pair (A, B) as entry lists, or None when no
    /// isomorphism was found.
    #[pyo3(signature = (other, seed=DEFAULT_SEED))]
    fn find_isomorphism(
        &self,
        py: Python<'_>,
        other: &Module,
        seed: u64,
    ) -> PyResult<Option<Py<PyAny>>> {
        let value = match (&self.inner, &other.inner) {
            (ModuleInner::Prime(a), ModuleInner::Prime(b)) => {
                kronrep::hom::find_isomorphism(a, b, seed).map_err(err)?.map(|(ma, mb)| {
                    Value::Array(vec![
                        mat_to_value(a.field(), &ma),
                        mat_to_value(a.field(), &mb),
                    ])
                })
            }
            (ModuleInner::Rational(a), ModuleInner::Rational(b)) => {
                kronrep::hom::find_isomorphism(a, b, seed).map_err(err)?.map(|(ma, mb)| {
                    Value::Array(vec![
                        mat_to_value(a.field(), &ma),
                        mat_to_value(a.field(), &mb),
                    ])
                })
            }
            _ => return Err(PyValueError::new_err("modules live over different fields")),
        };
        value.map(|v| json_to_py(py, &v)).transpose()
    }

    fn direct_sum(&self, other: &Module) -> PyResult<Module> {
        let inner = match (&self.inner, &other.inner) {
            (ModuleInner::Prime(a), ModuleInner::Prime(b)) => {
                ModuleInner::Prime(a.direct_sum(b).map_err(err)?)
            }
            (ModuleInner::Rational(a), ModuleInner::Rational(b)) => {
                ModuleInner::Rational(a.direct_sum(b).map_err(err)?)
            }
            _ => return Err(PyValueError::new_err("modules live over different fields")),
        };
        Ok(Module { inner })
    }

    fn __repr__(&self) -> String {
        let (x, y) = self.dim();
        format!(
            "Module(n={}, dim=({x}, {y}), field={}, nonzeros={})",
            self.arrows(),
            self.field(),
            self.nonzeros()
        )
    }
}

#[pymodule]
fn kronrep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(tits_form, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(reflect_source, m)?)?;
    m.add_function(wrap_pyfunction!(reflect_sink, m)?)?;
    m.add_function(wrap_pyfunction!(coxeter, m)?)?;
    m.add_function(wrap_pyfunction!(is_positive_imaginary_root, m)?)?;
    m.add_function(wrap_pyfunction!(in_fundamental_domain, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_to_fundamental_domain, m)?)?;
    m.add_function(wrap_pyfunction!(cover_thin_exists, m)?)?;
    m.add_function(wrap_pyfunction!(preprojective_dims, m)?)?;
    m.add_function(wrap_pyfunction!(preinjective_dims, m)?)?;
    m.add_function(wrap_pyfunction!(hom_dim_via_overlaps, m)?)?;
    m.add_function(wrap_pyfunction!(iso_cover_thin, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem_window, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hom_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(region_csv, m)?)?;
    m.add_class::<Subtree>()?;
    m.add_class::<Module>()?;
    Ok(())
}
