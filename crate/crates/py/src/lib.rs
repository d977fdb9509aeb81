use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use gainspec::bounds_max::{self, RecurrenceKind, DEFAULT_KMAX, DEFAULT_R};
use gainspec::bounds_min;
use gainspec::frustration::{self, FrustrationOptions, FrustrationResult};
use gainspec::gen::{self, Seed};
use gainspec::report::{self, BoundReport, Format};
use gainspec::{coloring, eig, ggf, Complex64, GainError, NEUTRAL_TOL};

create_exception!(pygainspec, GainSpecError, PyException);
create_exception!(pygainspec, SizeCapError, GainSpecError);
create_exception!(pygainspec, HypothesisError, GainSpecError);

fn py_err(e: GainError) -> PyErr {
    match e.exit_code() {
        4 => SizeCapError::new_err(e.to_string()),
        3 => HypothesisError::new_err(e.to_string()),
        _ => GainSpecError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for gainspec::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// Complex unit gain graph on vertices `0..n`.
#[pyclass(name = "GainGraph", module = "pygainspec", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGainGraph {
    inner: gainspec::GainGraph,
}

fn wrap(inner: gainspec::GainGraph) -> PyGainGraph {
    PyGainGraph { inner }
}

#[pymethods]
impl PyGainGraph {
    /// `edges` holds `(u, v, gain)` with the gain of the orientation `u -> v`.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize, Complex64)>) -> PyResult<Self> {
        gainspec::GainGraph::new(n, edges).py().map(wrap)
    }

    #[staticmethod]
    fn from_ggf(text: &str) -> PyResult<Self> {
        ggf::parse(text).py().map(wrap)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        ggf::load(path).py().map(wrap)
    }

    fn to_ggf(&self) -> String {
        ggf::write(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    /// Edges as `(u, v, gain)` with `u < v`.
    fn edges(&self) -> Vec<(usize, usize, Complex64)> {
        self.inner.edges().iter().map(|e| (e.u, e.v, e.gain)).collect()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn laplacian(&self) -> Vec<Vec<Complex64>> {
        self.inner.laplacian().rows()
    }

    fn adjacency(&self) -> Vec<Vec<Complex64>> {
        self.inner.adjacency_matrix().rows()
    }

    /// Laplacian eigenvalues in ascending order.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        eig::eigenvalues(&self.inner.laplacian())
            .py()
            .map(|s| s.values().to_vec())
    }

    fn quadratic_form(&self, x: Vec<Complex64>) -> PyResult<f64> {
        self.inner.quadratic_form(&x).py()
    }

    /// `(a, b)`: mean of `1 - Re g` and of `1 - Im g` over the edges.
    fn gain_stats(&self) -> PyResult<(f64, f64)> {
        self.inner.gain_stats().py().map(|s| (s.a, s.b))
    }

    fn a_theta(&self, theta: f64) -> PyResult<f64> {
        self.inner.a_theta(theta).py()
    }

    /// `(balanced, potentials)`; the potentials switch the graph to all-ones gains.
    #[pyo3(signature = (tol = NEUTRAL_TOL))]
    fn is_balanced(&self, tol: f64) -> (bool, Option<Vec<Complex64>>) {
        let b = self.inner.is_balanced_with_tol(tol);
        (b.balanced, b.witness.map(|w| w.values().to_vec()))
    }

    fn switch(&self, zeta: Vec<Complex64>) -> PyResult<Self> {
        let zeta = gainspec::SwitchingFunction::new(zeta).py()?;
        self.inner.switch(&zeta).py().map(wrap)
    }

    fn signless(&self) -> Self {
        wrap(self.inner.signless())
    }

    fn __repr__(&self) -> String {
        format!("GainGraph(n={}, m={})", self.inner.n(), self.inner.m())
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }
}

/// `(chi, colors)` for a minimum proper coloring.
#[pyfunction]
fn chromatic_number(g: &PyGainGraph) -> PyResult<(usize, Vec<usize>)> {
    coloring::chromatic_number(&g.inner).py().map(|c| (c.chi, c.colors))
}

#[pyfunction]
fn bipartition(g: &PyGainGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    coloring::bipartition(&g.inner)
}

fn options(force: bool, tol: f64) -> FrustrationOptions {
    FrustrationOptions { force, tol }
}

fn pair(r: FrustrationResult) -> (usize, Vec<usize>) {
    (r.value, r.witness)
}

/// `(epsilon, edge indices)`.
#[pyfunction]
#[pyo3(signature = (g, force = false, tol = NEUTRAL_TOL))]
fn frustration_index(g: &PyGainGraph, force: bool, tol: f64) -> PyResult<(usize, Vec<usize>)> {
    frustration::frustration_index(&g.inner, options(force, tol))
        .py()
        .map(pair)
}

/// `(nu, vertices)`.
#[pyfunction]
#[pyo3(signature = (g, force = false, tol = NEUTRAL_TOL))]
fn frustration_number(g: &PyGainGraph, force: bool, tol: f64) -> PyResult<(usize, Vec<usize>)> {
    frustration::frustration_number(&g.inner, options(force, tol))
        .py()
        .map(pair)
}

#[pyfunction]
fn chromatic_gamma_theta_bound(g: &PyGainGraph, chi: usize, gamma: f64, theta: f64) -> PyResult<f64> {
    bounds_min::chromatic_gamma_theta_bound(&g.inner, chi, gamma, theta).py()
}

#[pyfunction]
fn chromatic_optimal_real_bound(g: &PyGainGraph, chi: usize) -> PyResult<f64> {
    bounds_min::chromatic_optimal_real_bound(&g.inner, chi).py()
}

#[pyfunction]
fn chromatic_optimal_complex_bound(g: &PyGainGraph, chi: usize) -> PyResult<f64> {
    bounds_min::chromatic_optimal_complex_bound(&g.inner, chi).py()
}

#[pyfunction]
fn bipartite_gamma_bound(g: &PyGainGraph, v1: Vec<usize>, v2: Vec<usize>, gamma: f64, theta: f64) -> PyResult<f64> {
    bounds_min::bipartite_gamma_bound(&g.inner, (&v1, &v2), gamma, theta).py()
}

#[pyfunction]
fn bipartite_optimal_bound(g: &PyGainGraph, v1: Vec<usize>, v2: Vec<usize>, theta: f64) -> PyResult<f64> {
    bounds_min::bipartite_optimal_bound(&g.inner, (&v1, &v2), theta).py()
}

#[pyfunction]
fn degree_pair_bounds(g: &PyGainGraph) -> PyResult<(f64, f64, f64)> {
    bounds_min::degree_pair_bounds(&g.inner).py()
}

#[pyfunction]
fn triangle_bounds(g: &PyGainGraph) -> PyResult<[f64; 4]> {
    bounds_min::triangle_bounds(&g.inner).py()
}

#[pyfunction]
fn path_bounds(g: &PyGainGraph) -> PyResult<[f64; 4]> {
    bounds_min::path_bounds(&g.inner).py()
}

#[pyfunction]
fn classic_max_bounds(g: &PyGainGraph) -> PyResult<(f64, f64, f64, f64)> {
    bounds_max::classic_max_bounds(&g.inner).py()
}

#[pyfunction]
fn gershgorin_diag_bound(g: &PyGainGraph, c: Vec<Complex64>) -> PyResult<f64> {
    bounds_max::gershgorin_diag_bound(&g.inner, &c).py()
}

fn recurrence(kind: &str, r: f64) -> PyResult<RecurrenceKind> {
    match kind {
        "m" => Ok(RecurrenceKind::M),
        "n" => Ok(RecurrenceKind::N(r)),
        "l" => Ok(RecurrenceKind::L),
        _ => Err(GainSpecError::new_err(format!(
            "recurrence kind must be 'm', 'n' or 'l', got {kind:?}"
        ))),
    }
}

/// Bound from the `k`-th generalized degrees; `kind` is `"m"`, `"n"` or `"l"`.
#[pyfunction]
#[pyo3(signature = (g, kind, k, r = DEFAULT_R))]
fn generalized_degree_bound(g: &PyGainGraph, kind: &str, k: usize, r: f64) -> PyResult<f64> {
    bounds_max::generalized_degree_bound(&g.inner, recurrence(kind, r)?, k).py()
}

/// `(k, value)` minimizing the generalized degree bound over `1..=kmax`.
#[pyfunction]
#[pyo3(signature = (g, kind, kmax = DEFAULT_KMAX, r = DEFAULT_R))]
fn scan_k_min_bound(g: &PyGainGraph, kind: &str, kmax: usize, r: f64) -> PyResult<(usize, f64)> {
    bounds_max::scan_k_min_bound(&g.inner, recurrence(kind, r)?, kmax).py()
}

#[pyfunction]
fn diag_power_bound(g: &PyGainGraph, k: u32) -> PyResult<f64> {
    eig::diag_power_bound(&g.inner.laplacian(), k).py()
}

#[pyfunction]
fn trace_power_bound(g: &PyGainGraph, k: u32) -> PyResult<f64> {
    eig::trace_power_bound(&g.inner.laplacian(), k).py()
}

#[pyfunction]
fn inverse_diag_power_bound(g: &PyGainGraph, k: u32) -> PyResult<f64> {
    eig::inverse_diag_power_bound(&g.inner.laplacian(), k).py()
}

#[pyfunction]
#[pyo3(signature = (n, p, seed = 0))]
fn erdos_renyi(n: usize, p: f64, seed: u64) -> PyResult<PyGainGraph> {
    gen::erdos_renyi(n, p, Seed(seed)).py().map(wrap)
}

#[pyfunction]
#[pyo3(signature = (n1, n2, p, seed = 0))]
fn bipartite_erdos_renyi(n1: usize, n2: usize, p: f64, seed: u64) -> PyResult<PyGainGraph> {
    gen::bipartite_erdos_renyi(n1, n2, p, Seed(seed)).py().map(wrap)
}

#[pyfunction]
#[pyo3(signature = (g, seed = 0))]
fn random_unit_gains(g: &PyGainGraph, seed: u64) -> PyGainGraph {
    wrap(gen::random_unit_gains(&g.inner, Seed(seed)))
}

#[pyfunction]
fn signed_k5_15() -> PyGainGraph {
    wrap(gen::signed_k5_15())
}

fn format(name: &str) -> PyResult<Format> {
    match name {
        "md" | "markdown" => Ok(Format::Markdown),
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(GainSpecError::new_err(format!(
            "format must be 'md', 'csv' or 'json', got {name:?}"
        ))),
    }
}

fn render(r: gainspec::Result<BoundReport>, fmt: &str) -> PyResult<String> {
    let fmt = format(fmt)?;
    r.py().map(|r| r.render(fmt))
}

/// Bipartite comparison table for the smallest eigenvalue.
#[pyfunction]
#[pyo3(signature = (g, label = "graph", fmt = "md"))]
fn bipartite_report(g: &PyGainGraph, label: &str, fmt: &str) -> PyResult<String> {
    let (v1, v2) =
        coloring::bipartition(&g.inner).ok_or_else(|| HypothesisError::new_err("underlying graph has an odd cycle"))?;
    render(report::bipartite_table(&g.inner, label, (&v1, &v2)), fmt)
}

/// Comparison table of upper bounds for the smallest eigenvalue.
#[pyfunction]
#[pyo3(signature = (g, label = "graph", chi = None, fmt = "md"))]
fn lambda1_report(g: &PyGainGraph, label: &str, chi: Option<usize>, fmt: &str) -> PyResult<String> {
    render(report::lambda1_table(&g.inner, label, chi), fmt)
}

/// Comparison table of bounds for the largest eigenvalue.
#[pyfunction]
#[pyo3(signature = (g, label = "graph", r = DEFAULT_R, kmax = DEFAULT_KMAX, fmt = "md"))]
fn lambda_n_report(g: &PyGainGraph, label: &str, r: f64, kmax: usize, fmt: &str) -> PyResult<String> {
    render(report::lambda_n_table(&g.inner, label, r, kmax), fmt)
}

#[pymodule]
fn pygainspec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("GainSpecError", py.get_type::<GainSpecError>())?;
    m.add("SizeCapError", py.get_type::<SizeCapError>())?;
    m.add("HypothesisError", py.get_type::<HypothesisError>())?;
    m.add_class::<PyGainGraph>()?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(bipartition, m)?)?;
    m.add_function(wrap_pyfunction!(frustration_index, m)?)?;
    m.add_function(wrap_pyfunction!(frustration_number, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_gamma_theta_bound, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_optimal_real_bound, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_optimal_complex_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_gamma_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_optimal_bound, m)?)?;
    m.add_function(wrap_pyfunction!(degree_pair_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(path_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(classic_max_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(gershgorin_diag_bound, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_degree_bound, m)?)?;
    m.add_function(wrap_pyfunction!(scan_k_min_bound, m)?)?;
    m.add_function(wrap_pyfunction!(diag_power_bound, m)?)?;
    m.add_function(wrap_pyfunction!(trace_power_bound, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_diag_power_bound, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_renyi, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_erdos_renyi, m)?)?;
    m.add_function(wrap_pyfunction!(random_unit_gains, m)?)?;
    m.add_function(wrap_pyfunction!(signed_k5_15, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_report, m)?)?;
    m.add_function(wrap_pyfunction!(lambda1_report, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_n_report, m)?)?;
    Ok(())
}
