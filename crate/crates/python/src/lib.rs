//! Python bindings: `import klv`.

use klv_core::orbit_model::Backend;
use klv_core::{ClosurePoset, KlvTable, ModelSpec, OrbitSet, Poly};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: klv_core::Error) -> PyErr {
    match e {
        klv_core::Error::Invariant(_) | klv_core::Error::InconsistentClosure { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn coeffs(p: &Poly) -> PyResult<Vec<i64>> {
    p.to_i64s()
        .ok_or_else(|| PyValueError::new_err("coefficient does not fit in i64"))
}

/// Orbits of one model together with their closure order and KLV table.
#[pyclass(frozen, module = "klv")]
struct Model {
    set: OrbitSet,
    poset: ClosurePoset,
    table: KlvTable,
}

impl Model {
    fn build(spec: ModelSpec, max_size: Option<usize>) -> PyResult<Self> {
        let set = spec.build(max_size.unwrap_or(spec.default_cap())).map_err(err)?;
        let poset = ClosurePoset::build(&set).map_err(err)?;
        let table = KlvTable::build(&set).map_err(err)?;
        Ok(Model { set, poset, table })
    }

    fn idx(&self, payload: &str) -> PyResult<usize> {
        self.set.index_of(payload).map_err(err)
    }

    fn names(&self, v: impl IntoIterator<Item = usize>) -> Vec<String> {
        v.into_iter().map(|i| self.set.payload(i).to_string()).collect()
    }

    fn simple(&self, s: usize) -> PyResult<()> {
        if self.set.simple_indices().contains(&s) {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!(
                "simple reflection index {s} outside 1..{}",
                self.set.rank()
            )))
        }
    }
}

#[pymethods]
impl Model {
    /// Clans for GL(p+q) / GL(p) x GL(q).
    #[staticmethod]
    #[pyo3(signature = (p, q, max_size=None))]
    fn clans(p: usize, q: usize, max_size: Option<usize>) -> PyResult<Self> {
        Model::build(ModelSpec::Clans { p, q }, max_size)
    }

    /// Diagonal orbits in the double flag variety of GL(n), labelled by S_n.
    #[staticmethod]
    #[pyo3(signature = (n, max_size=None))]
    fn diagonal(n: usize, max_size: Option<usize>) -> PyResult<Self> {
        Model::build(ModelSpec::Diagonal { n }, max_size)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.set.rank()
    }

    fn __len__(&self) -> usize {
        self.set.len()
    }

    fn __repr__(&self) -> String {
        format!("Model({}, orbits={})", self.set.spec(), self.set.len())
    }

    /// List of `{"backend", "payload", "d"}` dicts ordered by `d`.
    fn orbits<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.set
            .orbits()
            .iter()
            .map(|o| {
                let d = PyDict::new(py);
                d.set_item(
                    "backend",
                    match o.backend {
                        Backend::Clan => "clan",
                        Backend::Diagonal => "diagonal",
                    },
                )?;
                d.set_item("payload", &o.payload)?;
                d.set_item("d", o.d)?;
                Ok(d)
            })
            .collect()
    }

    fn length(&self, payload: &str) -> PyResult<usize> {
        Ok(self.set.d(self.idx(payload)?))
    }

    fn classify(&self, s: usize, payload: &str) -> PyResult<String> {
        self.simple(s)?;
        Ok(self.set.classify(s, self.idx(payload)?).to_string())
    }

    fn string_set(&self, s: usize, payload: &str) -> PyResult<Vec<String>> {
        self.simple(s)?;
        Ok(self.names(self.set.string_set(s, self.idx(payload)?)))
    }

    /// `(s, lower)` or `None` for a closed orbit.
    fn raising_pair(&self, payload: &str) -> PyResult<Option<(usize, String)>> {
        let pair = self.set.raising_pair(self.idx(payload)?).map_err(err)?;
        Ok(pair.map(|(s, l)| (s, self.set.payload(l).to_string())))
    }

    fn leq(&self, lower: &str, upper: &str) -> PyResult<bool> {
        Ok(self.poset.leq(self.idx(lower)?, self.idx(upper)?))
    }

    fn closure(&self, payload: &str) -> PyResult<Vec<String>> {
        Ok(self.names(self.poset.closure(self.idx(payload)?)))
    }

    fn covers(&self) -> Vec<(String, String)> {
        self.poset
            .covers()
            .iter()
            .map(|&(x, y)| (self.set.payload(x).to_string(), self.set.payload(y).to_string()))
            .collect()
    }

    fn chain_count(&self) -> u64 {
        self.poset.chain_count()
    }

    fn to_dot(&self) -> String {
        self.poset.to_dot(&self.set)
    }

    /// Coefficients of `P(lower, upper)`, constant term first.
    fn kl_poly(&self, lower: &str, upper: &str) -> PyResult<Vec<i64>> {
        coeffs(&self.table.poly(self.idx(lower)?, self.idx(upper)?))
    }

    fn mu(&self, lower: &str, upper: &str) -> PyResult<i64> {
        i64::try_from(self.table.mu(self.idx(lower)?, self.idx(upper)?))
            .map_err(|_| PyValueError::new_err("mu does not fit in i64"))
    }

    /// Nonzero table entries as `(lower, upper, coeffs)` tuples.
    fn table(&self) -> PyResult<Vec<(String, String, Vec<i64>)>> {
        self.table
            .records(&self.set)
            .into_iter()
            .map(|r| Ok((r.lower, r.upper, coeffs(&r.coeffs)?)))
            .collect()
    }
}

/// Run every check on a model; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (model, max_size=None, oracle_cap=4))]
fn verify<'py>(
    py: Python<'py>,
    model: &str,
    max_size: Option<usize>,
    oracle_cap: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = parse_spec(model)?;
    let mut report =
        klv_core::verify_model(spec, max_size.unwrap_or(spec.default_cap()), oracle_cap)
            .map_err(err)?;
    report.elapsed_ms = None;
    py.import("json")?.call_method1("loads", (report.to_json(),))
}

/// `"clans(p,q)"` or `"diagonal(n)"`.
fn parse_spec(s: &str) -> PyResult<ModelSpec> {
    let bad = || PyValueError::new_err(format!("expected clans(p,q) or diagonal(n), got {s:?}"));
    let s = s.replace(' ', "");
    let (name, rest) = s.split_once('(').ok_or_else(bad)?;
    let args: Vec<usize> = rest
        .strip_suffix(')')
        .ok_or_else(bad)?
        .split(',')
        .map(|a| a.parse().map_err(|_| bad()))
        .collect::<PyResult<_>>()?;
    match (name, args.as_slice()) {
        ("clans", &[p, q]) => Ok(ModelSpec::Clans { p, q }),
        ("diagonal", &[n]) => Ok(ModelSpec::Diagonal { n }),
        _ => Err(bad()),
    }
}

#[pymodule]
fn klv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
