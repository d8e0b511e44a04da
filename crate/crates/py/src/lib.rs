//! Python bindings: integer and grid sets, dimension, volume, the doubling
//! parametrization, family generators, classification and extremal search.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use freiman::search::{classify_3segment_extremal, extremal_search_with, ClassRecord, SearchSpec, Span};
use freiman::{AnySet, Family, GridSet};

fn err(e: freiman::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "IntSet", module = "freiman_py", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyIntSet(freiman::IntSet);

#[pymethods]
impl PyIntSet {
    #[new]
    fn new(elements: Vec<u32>) -> PyResult<Self> {
        freiman::IntSet::from_unsorted(elements).map(PyIntSet).map_err(err)
    }

    /// Parses a comma-separated literal such as `0, 1, 5`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PyIntSet).map_err(err)
    }

    #[getter]
    fn elements(&self) -> Vec<u32> {
        self.0.elements().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, x: u32) -> bool {
        self.0.contains(x)
    }

    fn __repr__(&self) -> String {
        format!("IntSet({})", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn sumset(&self, other: &PyIntSet) -> PyIntSet {
        PyIntSet(self.0.sumset(&other.0))
    }

    /// `|A + A|`.
    fn doubling(&self) -> usize {
        self.0.doubling()
    }

    fn normalize(&self) -> PyResult<PyIntSet> {
        self.0.normalize().map(PyIntSet).map_err(err)
    }

    fn reflect(&self) -> PyResult<PyIntSet> {
        self.0.reflect().map(PyIntSet).map_err(err)
    }

    fn is_normal_form(&self) -> bool {
        self.0.is_normal_form()
    }

    /// `(start, length)` of each maximal run of consecutive elements.
    fn segments(&self) -> PyResult<Vec<(u32, u32)>> {
        let d = freiman::decompose_segments(&self.0).map_err(err)?;
        Ok(d.segments().iter().map(|s| (s.start, s.len)).collect())
    }

    fn dim(&self) -> PyResult<usize> {
        freiman::dim_konyagin_lev(&self.0).map_err(err)
    }

    fn volume(&self) -> PyResult<u64> {
        freiman::volume(&self.0).map(|v| v.value).map_err(err)
    }
}

#[pyclass(name = "GridSet", module = "freiman_py", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct PyGridSet(GridSet);

#[pymethods]
impl PyGridSet {
    /// Points of `Z^n`, `n ≤ 3`, all of the same length.
    #[new]
    fn new(points: Vec<Vec<i64>>) -> PyResult<Self> {
        GridSet::from_rows(&points).map(PyGridSet).map_err(err)
    }

    #[getter]
    fn points(&self) -> Vec<Vec<i64>> {
        let n = self.0.ambient_dim();
        self.0.as_points().iter().map(|p| p[..n].to_vec()).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("GridSet({})", self.0)
    }

    fn doubling(&self) -> usize {
        freiman::grid::doubling_of(&self.0)
    }

    fn dim(&self) -> PyResult<usize> {
        freiman::dim_konyagin_lev(&self.0).map_err(err)
    }

    fn volume(&self) -> PyResult<u64> {
        freiman::volume(&self.0).map(|v| v.value).map_err(err)
    }
}

#[derive(FromPyObject)]
enum SetArg {
    Int(PyIntSet),
    Grid(PyGridSet),
}

impl SetArg {
    fn into_any(self) -> AnySet {
        match self {
            SetArg::Int(a) => AnySet::Int(a.0),
            SetArg::Grid(g) => AnySet::Grid(g.0),
        }
    }
}

fn to_py(py: Python<'_>, a: AnySet) -> PyResult<Py<PyAny>> {
    Ok(match a {
        AnySet::Int(a) => Py::new(py, PyIntSet(a))?.into_any(),
        AnySet::Grid(g) => Py::new(py, PyGridSet(g))?.into_any(),
    })
}

/// `(c, b)` for a class `(k, T, d)`, the smaller `c` on a shared boundary.
#[pyfunction]
fn params(k: u64, t: u64, d: u64) -> PyResult<(u64, u64)> {
    let p = freiman::params_from(k, t, d).map_err(err)?;
    Ok((p.c, p.b))
}

#[pyfunction]
fn conjectured_vol(k: u64, t: u64, d: u64) -> PyResult<u64> {
    let p = freiman::params_from(k, t, d).map_err(err)?;
    freiman::conjectured_vol(&p).map_err(err)
}

#[pyfunction]
fn t_bounds(k: u64, d: u64) -> PyResult<(u64, u64)> {
    freiman::t_bounds(k, d).map_err(err)
}

/// Builds a family member from `i k=11 b=3`, `ii k=11 b=3 i=1` and so on.
#[pyfunction]
fn generate(py: Python<'_>, family: &str) -> PyResult<Py<PyAny>> {
    let f: Family = family.parse().map_err(err)?;
    to_py(py, f.generate().map_err(err)?)
}

#[pyfunction]
fn gen_as(k: u32, s: u32) -> PyResult<PyIntSet> {
    freiman::gen_as(k, s).map(PyIntSet).map_err(err)
}

/// Family tag of an extremal set, `family=none` when it matches none.
#[pyfunction]
fn classify(set: SetArg) -> PyResult<String> {
    classify_3segment_extremal(&set.into_any()).map(|c| c.tag()).map_err(err)
}

#[pyfunction]
fn isomorphic(a: SetArg, b: SetArg) -> bool {
    freiman::f2_isomorphic(&a.into_any(), &b.into_any())
}

fn class_dict<'py>(py: Python<'py>, c: &ClassRecord) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("k", c.k)?;
    out.set_item("t", c.t)?;
    out.set_item("d", c.d)?;
    out.set_item("c", c.c)?;
    out.set_item("b", c.b)?;
    out.set_item("vol_conjectured", c.vol_conjectured)?;
    out.set_item("vol_found", c.vol_found)?;
    out.set_item("n_sets", c.n_sets)?;
    out.set_item("n_extremal_classes", c.n_extremal_classes)?;
    out.set_item("complete", c.complete)?;
    let status = serde_json::to_value(c.status).map_err(|e| PyValueError::new_err(e.to_string()))?;
    out.set_item("status", status.as_str().unwrap_or_default())?;
    let reps: Vec<PyIntSet> = c.representatives.iter().cloned().map(PyIntSet).collect();
    out.set_item("representatives", reps)?;
    Ok(out)
}

/// Exhaustive search over normal-form sets `{0 ≤ a ≤ max_element}` with
/// `|A| = k`, one dict per `(k, T, d)` class.
#[pyfunction]
#[pyo3(signature = (k, max_element, t=None, d=None, threads=None))]
fn search_extremal<'py>(
    py: Python<'py>,
    k: u64,
    max_element: u32,
    t: Option<u64>,
    d: Option<usize>,
    threads: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let mut spec = SearchSpec::normal_form(Span::single(k), max_element);
    spec.t = t.map(Span::single);
    spec.d = d;
    let r = py.detach(|| extremal_search_with(&spec, threads)).map_err(err)?;
    if r.n_violations > 0 {
        return Err(PyValueError::new_err(format!("{} audit violations", r.n_violations)));
    }
    r.classes.iter().map(|c| class_dict(py, c)).collect()
}

#[pymodule]
fn freiman_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIntSet>()?;
    m.add_class::<PyGridSet>()?;
    m.add_function(wrap_pyfunction!(params, m)?)?;
    m.add_function(wrap_pyfunction!(conjectured_vol, m)?)?;
    m.add_function(wrap_pyfunction!(t_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(gen_as, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(search_extremal, m)?)?;
    Ok(())
}
