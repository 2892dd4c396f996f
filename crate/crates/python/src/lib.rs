//! Python module `fedvr_py`.

use fedvr::errormodel;
use fedvr::{FedvrError, KernelSpec, Mesh, Potential as CorePotential, TabulatedPotential};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(err: FedvrError) -> PyErr {
    let mut cause = &err;
    while let FedvrError::InPartition { source, .. } = cause {
        cause = source;
    }
    match cause {
        FedvrError::InvalidOrder { .. }
        | FedvrError::IndexOutOfRange { .. }
        | FedvrError::Shape { .. }
        | FedvrError::Domain(_)
        | FedvrError::InvalidMesh(_)
        | FedvrError::StepTooLarge { .. }
        | FedvrError::Table(_) => PyValueError::new_err(err.to_string()),
        _ => PyRuntimeError::new_err(err.to_string()),
    }
}

/// Gauss-Lobatto rule on [-1, 1] with its differentiation matrix.
#[pyclass(name = "LobattoGrid", frozen)]
struct PyLobattoGrid {
    inner: fedvr::LobattoGrid,
}

#[pymethods]
impl PyLobattoGrid {
    #[new]
    fn new(order: usize) -> PyResult<Self> {
        let inner = fedvr::LobattoGrid::rule(order).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn nodes(&self) -> Vec<f64> {
        self.inner.nodes().to_vec()
    }

    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }

    /// `D[i][j] = l_j'(x_i)`.
    fn diff_matrix(&self) -> Vec<Vec<f64>> {
        let d = self.inner.diff_matrix();
        (0..d.nrows())
            .map(|i| d.row(i).iter().copied().collect())
            .collect()
    }

    fn quadrature(&self, samples: Vec<f64>) -> PyResult<f64> {
        self.inner.quadrature(&samples).map_err(to_py)
    }

    fn lagrange(&self, i: usize, x: f64) -> PyResult<f64> {
        self.inner.lagrange(i, x).map_err(to_py)
    }

    fn interpolate(&self, coeffs: Vec<f64>, x: f64) -> PyResult<f64> {
        self.inner.interpolate(&coeffs, x).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("LobattoGrid(order={})", self.inner.order())
    }
}

/// Local potential in fm^-2.
#[pyclass(name = "Potential", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPotential {
    inner: CorePotential,
}

#[pymethods]
impl PyPotential {
    #[staticmethod]
    fn morse() -> Self {
        Self {
            inner: CorePotential::morse(),
        }
    }

    #[staticmethod]
    fn woods_saxon() -> Self {
        Self {
            inner: CorePotential::woods_saxon(),
        }
    }

    #[staticmethod]
    fn free() -> Self {
        Self {
            inner: CorePotential::Free,
        }
    }

    #[staticmethod]
    fn constant(value: f64) -> Self {
        Self {
            inner: CorePotential::constant(value),
        }
    }

    /// Two-column `r V` table, linearly interpolated.
    #[staticmethod]
    fn table(r: Vec<f64>, v: Vec<f64>) -> PyResult<Self> {
        let t = TabulatedPotential::new(r, v).map_err(to_py)?;
        Ok(Self {
            inner: CorePotential::Tabulated(t.into()),
        })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let t = TabulatedPotential::from_path(path).map_err(to_py)?;
        Ok(Self {
            inner: CorePotential::Tabulated(t.into()),
        })
    }

    fn __call__(&self, r: f64) -> PyResult<f64> {
        self.inner.eval(r).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Potential({:?})", self.inner)
    }
}

/// Both phase-shift estimates of one solve.
#[pyclass(name = "PhaseShift", frozen, get_all)]
struct PyPhaseShift {
    tan_delta_match: f64,
    tan_delta_integral: f64,
    amplitude: f64,
    consistency: f64,
    k: f64,
    r_max: f64,
    warnings: Vec<String>,
    /// `(r, psi)` at every node, normalized to `sin(kr + delta) / cos(delta)` asymptotically.
    wavefunction: Vec<(f64, f64)>,
}

#[pymethods]
impl PyPhaseShift {
    fn __repr__(&self) -> String {
        format!(
            "PhaseShift(tan_delta_match={:.12e}, tan_delta_integral={:.12e})",
            self.tan_delta_match, self.tan_delta_integral
        )
    }
}

impl PyPhaseShift {
    fn new(res: fedvr::PhaseShiftResult, samples: Vec<(f64, f64)>) -> Self {
        Self {
            tan_delta_match: res.tan_delta_match,
            tan_delta_integral: res.tan_delta_integral,
            amplitude: res.amplitude,
            consistency: res.consistency,
            k: res.k,
            r_max: res.r_max,
            warnings: res.warnings,
            wavefunction: samples,
        }
    }
}

fn wave_samples(sol: &fedvr::WaveSolution) -> Vec<(f64, f64)> {
    sol.samples().map(|(r, _, c)| (r, c)).collect()
}

/// FE-DVR solve on equal partitions of length `plen` with `n` points each.
#[pyfunction]
#[pyo3(signature = (potential, k = 0.5, r_max = 100.0, plen = 1.0, n = 20))]
fn fedvr_phase_shift(
    py: Python<'_>,
    potential: &PyPotential,
    k: f64,
    r_max: f64,
    plen: f64,
    n: usize,
) -> PyResult<PyPhaseShift> {
    let v = potential.inner.clone();
    py.detach(|| {
        let mesh = Mesh::uniform(r_max, plen, n)?;
        let (sol, res) = fedvr::fedvr_phase_shift(&mesh, &v, k)?;
        Ok(PyPhaseShift::new(res, wave_samples(&sol)))
    })
    .map_err(to_py)
}

/// Numerov with `points` equal steps on [0, r_max].
#[pyfunction]
#[pyo3(signature = (potential, k = 0.5, r_max = 100.0, points = 6400))]
fn numerov_phase_shift(
    py: Python<'_>,
    potential: &PyPotential,
    k: f64,
    r_max: f64,
    points: usize,
) -> PyResult<PyPhaseShift> {
    let v = potential.inner.clone();
    py.detach(|| {
        let run = fedvr::numerov_with_intervals(&v, k, points, r_max)?;
        let res = fedvr::numerov_phase_shift(&run, &v)?;
        let samples = (0..=run.intervals)
            .map(|i| (run.radius(i), run.values[i] / res.amplitude))
            .collect();
        Ok(PyPhaseShift::new(res, samples))
    })
    .map_err(to_py)
}

/// Single-partition solve with a Gaussian nonlocal kernel shaped by `potential`.
#[pyfunction]
#[pyo3(signature = (potential, beta = 0.85, strength = 1.0, k = 0.5, r_max = 15.0, n = 130))]
fn nonlocal_phase_shift(
    py: Python<'_>,
    potential: &PyPotential,
    beta: f64,
    strength: f64,
    k: f64,
    r_max: f64,
    n: usize,
) -> PyResult<PyPhaseShift> {
    let shape = potential.inner.clone();
    py.detach(|| {
        let kernel = KernelSpec::gaussian(strength, beta, shape)?;
        let grid = fedvr::LobattoGrid::new(n)?;
        let map = fedvr::AffineMap::new(0.0, r_max)?;
        let sol = fedvr::solve_nonlocal(&grid, map, &kernel, k, 1.0)?;
        let (norm, res) = fedvr::nonlocal_phase_shift(&sol, &kernel, None)?;
        Ok(PyPhaseShift::new(res, wave_samples(&norm)))
    })
    .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, partitions, eps = errormodel::EPS_DOUBLE))]
fn roundoff_bound_local(n: usize, partitions: usize, eps: f64) -> f64 {
    errormodel::roundoff_bound_local(n, partitions, eps)
}

#[pyfunction]
#[pyo3(signature = (n, length, eps = errormodel::EPS_DOUBLE, linear = false))]
fn roundoff_bound_nonlocal(n: usize, length: f64, eps: f64, linear: bool) -> f64 {
    errormodel::roundoff_bound_nonlocal(n, length, eps, linear)
}

#[pyfunction]
fn flop_estimate(n: usize, partitions: usize) -> f64 {
    errormodel::flop_estimate(n, partitions)
}

#[pymodule]
fn fedvr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLobattoGrid>()?;
    m.add_class::<PyPotential>()?;
    m.add_class::<PyPhaseShift>()?;
    m.add_function(wrap_pyfunction!(fedvr_phase_shift, m)?)?;
    m.add_function(wrap_pyfunction!(numerov_phase_shift, m)?)?;
    m.add_function(wrap_pyfunction!(nonlocal_phase_shift, m)?)?;
    m.add_function(wrap_pyfunction!(roundoff_bound_local, m)?)?;
    m.add_function(wrap_pyfunction!(roundoff_bound_nonlocal, m)?)?;
    m.add_function(wrap_pyfunction!(flop_estimate, m)?)?;
    m.add("TAN_DELTA_MORSE", fedvr::TAN_DELTA_MORSE)?;
    m.add("TAN_DELTA_WOODS_SAXON", fedvr::TAN_DELTA_WOODS_SAXON)?;
    Ok(())
}
