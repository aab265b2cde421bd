//! Python bindings: sparse XL-array geometries, difference co-arrays,
//! spherical-wave steering, range CRBs, and LoS channel rank analysis.
//!
//! Domain errors surface as `ValueError` carrying the single-line
//! `kind: detail` message of the underlying error.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use xlsparse_core as xc;

fn domain(err: xc::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn source(theta_rad: f64, range_m: f64, snr_db: f64, snapshots: u64) -> PyResult<xc::SourceParams> {
    xc::SourceParams::with_signal(theta_rad, range_m, snr_db, snapshots).map_err(domain)
}

/// A linear array: integer element positions on a uniform grid.
#[pyclass(frozen, skip_from_py_object, module = "xlsparse")]
struct Layout {
    inner: xc::ArrayLayout,
}

#[pymethods]
impl Layout {
    /// Dense uniform array with `n` elements.
    #[staticmethod]
    fn dua(n: u64, wavelength_m: f64) -> PyResult<Self> {
        xc::ArrayLayout::dua(n, wavelength_m)
            .map(|inner| Layout { inner })
            .map_err(domain)
    }

    /// Two-level nested array with `n` elements.
    #[staticmethod]
    fn nested(n: u64, wavelength_m: f64) -> PyResult<Self> {
        xc::ArrayLayout::nested(n, wavelength_m)
            .map(|inner| Layout { inner })
            .map_err(domain)
    }

    /// Coprime array from the pair `(p, q)`, `p < q`, `gcd(p, q) = 1`.
    #[staticmethod]
    fn coprime(p: u64, q: u64, wavelength_m: f64) -> PyResult<Self> {
        xc::ArrayLayout::coprime(p, q, wavelength_m)
            .map(|inner| Layout { inner })
            .map_err(domain)
    }

    /// Non-redundant (optimal difference ruler) array of order `n`.
    #[staticmethod]
    fn non_redundant(n: u64, wavelength_m: f64) -> PyResult<Self> {
        xc::ArrayLayout::non_redundant(n, wavelength_m)
            .map(|inner| Layout { inner })
            .map_err(domain)
    }

    /// Widely-spaced multi-subarray: `m` dense subarrays of `k` elements at
    /// pitch `stride_units`.
    #[staticmethod]
    fn wsms(m: u64, k: u64, stride_units: u64, wavelength_m: f64) -> PyResult<Self> {
        xc::ArrayLayout::wsms(m, k, stride_units, wavelength_m)
            .map(|inner| Layout { inner })
            .map_err(domain)
    }

    /// Arbitrary validated positions (sorted, unique, starting at 0).
    #[staticmethod]
    fn custom(indices: Vec<u64>, wavelength_m: f64) -> PyResult<Self> {
        xc::ArrayLayout::custom(indices, wavelength_m)
            .map(|inner| Layout { inner })
            .map_err(domain)
    }

    /// Any layout from its descriptor string, e.g. `"nrms:8x64"` or
    /// `"ca:2/5"`.
    #[staticmethod]
    fn from_spec(text: &str, wavelength_m: f64) -> PyResult<Self> {
        xc::LayoutSpec::parse(text)
            .and_then(|spec| spec.build(wavelength_m))
            .map(|inner| Layout { inner })
            .map_err(domain)
    }

    /// Parses a layout JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        xc::ArrayLayout::from_json(text)
            .map(|inner| Layout { inner })
            .map_err(domain)
    }

    #[getter]
    fn kind(&self) -> String {
        self.inner.kind().to_string()
    }

    #[getter]
    fn indices(&self) -> Vec<u64> {
        self.inner.indices().to_vec()
    }

    #[getter]
    fn wavelength_m(&self) -> f64 {
        self.inner.wavelength_m()
    }

    #[getter]
    fn spacing_m(&self) -> f64 {
        self.inner.spacing_m()
    }

    #[getter]
    fn n_elements(&self) -> usize {
        self.inner.n_elements()
    }

    #[getter]
    fn span_units(&self) -> u64 {
        self.inner.aperture_units()
    }

    #[getter]
    fn aperture_m(&self) -> f64 {
        self.inner.aperture_m()
    }

    #[getter]
    fn fraunhofer_distance_m(&self) -> f64 {
        self.inner.fraunhofer_distance_m()
    }

    /// Element x-coordinates in meters.
    fn element_positions_m(&self) -> Vec<f64> {
        self.inner.element_positions_m()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.n_elements()
    }

    fn __repr__(&self) -> String {
        format!(
            "Layout(kind='{}', n={}, span={})",
            self.inner.kind(),
            self.inner.n_elements(),
            self.inner.aperture_units()
        )
    }
}

/// Difference co-array: distinct lags, per-lag pair weights, and holes.
#[pyclass(frozen, module = "xlsparse")]
struct Coarray {
    inner: xc::Coarray,
}

#[pymethods]
impl Coarray {
    #[getter]
    fn lags(&self) -> Vec<i64> {
        self.inner.lags().to_vec()
    }

    #[getter]
    fn weights(&self) -> std::collections::BTreeMap<i64, u64> {
        self.inner.weights().clone()
    }

    #[getter]
    fn holes(&self) -> Vec<i64> {
        self.inner.holes().to_vec()
    }

    #[getter]
    fn dof(&self) -> usize {
        self.inner.dof()
    }

    #[getter]
    fn contiguous_half_len(&self) -> u64 {
        self.inner.contiguous_half_len()
    }

    #[getter]
    fn is_hole_free(&self) -> bool {
        self.inner.is_hole_free()
    }

    fn weight(&self, lag: i64) -> u64 {
        self.inner.weight(lag)
    }

    fn __repr__(&self) -> String {
        format!(
            "Coarray(dof={}, holes={}, contiguous_half_len={})",
            self.inner.dof(),
            self.inner.holes().len(),
            self.inner.contiguous_half_len()
        )
    }
}

/// Cramér–Rao bounds for joint (angle, range) estimation.
#[pyclass(frozen, module = "xlsparse")]
struct CrbResult {
    inner: xc::CrbResult,
}

#[pymethods]
impl CrbResult {
    #[getter]
    fn fim(&self) -> [[f64; 2]; 2] {
        self.inner.fim
    }

    #[getter]
    fn crb_theta(&self) -> f64 {
        self.inner.crb_theta
    }

    #[getter]
    fn crb_range(&self) -> f64 {
        self.inner.crb_range
    }

    #[getter]
    fn root_crb_range(&self) -> f64 {
        self.inner.root_crb_range
    }

    fn __repr__(&self) -> String {
        format!(
            "CrbResult(crb_theta={:e}, crb_range={:e})",
            self.inner.crb_theta, self.inner.crb_range
        )
    }
}

/// Line-of-sight MIMO channel between two parallel centered arrays.
#[pyclass(frozen, module = "xlsparse")]
struct Channel {
    inner: xc::LosChannel,
}

#[pymethods]
impl Channel {
    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.matrix().nrows(), self.inner.matrix().ncols())
    }

    #[getter]
    fn separation_m(&self) -> f64 {
        self.inner.separation_m()
    }

    /// Normalized singular values, non-increasing, leading value 1.
    #[getter]
    fn singular_values(&self) -> Vec<f64> {
        self.inner.singular_values().to_vec()
    }

    #[getter]
    fn sigma_max(&self) -> f64 {
        self.inner.sigma_max()
    }

    /// Count of normalized singular values >= `threshold` (in (0, 1]).
    fn effective_rank(&self, threshold: f64) -> PyResult<usize> {
        self.inner.effective_rank(threshold).map_err(domain)
    }

    fn __repr__(&self) -> String {
        format!(
            "Channel(shape=({}, {}), separation_m={})",
            self.inner.matrix().nrows(),
            self.inner.matrix().ncols(),
            self.inner.separation_m()
        )
    }
}

/// Difference co-array of a layout.
#[pyfunction]
fn difference_coarray(layout: &Layout) -> Coarray {
    Coarray {
        inner: xc::difference_coarray(&layout.inner),
    }
}

/// Exhaustive search for the `n`-element layout of span at most `max_span`
/// maximizing co-array DoF (guarded: n <= 10, max_span <= 40).
#[pyfunction]
fn search_max_dof(n_elements: u64, max_span: u64, wavelength_m: f64) -> PyResult<Layout> {
    xc::search_max_dof(n_elements, max_span, wavelength_m)
        .map(|inner| Layout { inner })
        .map_err(domain)
}

/// Exact spherical-wavefront steering vector.
#[pyfunction]
fn spherical_steering(layout: &Layout, theta_rad: f64, range_m: f64) -> PyResult<Vec<Complex64>> {
    let src = xc::SourceParams::new(theta_rad, range_m).map_err(domain)?;
    xc::spherical_steering(&layout.inner, &src)
        .map(|sv| sv.entries().to_vec())
        .map_err(domain)
}

/// Far-field planar steering vector.
#[pyfunction]
fn planar_steering(layout: &Layout, theta_rad: f64) -> PyResult<Vec<Complex64>> {
    xc::planar_steering(&layout.inner, theta_rad)
        .map(|sv| sv.entries().to_vec())
        .map_err(domain)
}

/// Fresnel (quadratic phase) steering vector.
#[pyfunction]
fn fresnel_steering(layout: &Layout, theta_rad: f64, range_m: f64) -> PyResult<Vec<Complex64>> {
    let src = xc::SourceParams::new(theta_rad, range_m).map_err(domain)?;
    xc::fresnel_steering(&layout.inner, &src)
        .map(|sv| sv.entries().to_vec())
        .map_err(domain)
}

/// Analytic entry-wise steering derivatives `(d/d theta, d/d range)`.
#[pyfunction]
fn steering_derivatives(
    layout: &Layout,
    theta_rad: f64,
    range_m: f64,
) -> PyResult<(Vec<Complex64>, Vec<Complex64>)> {
    let src = xc::SourceParams::new(theta_rad, range_m).map_err(domain)?;
    xc::steering_derivatives(&layout.inner, &src)
        .map(|d| (d.d_theta, d.d_range))
        .map_err(domain)
}

/// Normalized focused-beam gain over `grid` of `(theta_rad, range_m)`
/// cells.
#[pyfunction]
fn beampattern(
    layout: &Layout,
    focus_theta_rad: f64,
    focus_range_m: f64,
    grid: Vec<(f64, f64)>,
) -> PyResult<Vec<f64>> {
    let focus = xc::SourceParams::new(focus_theta_rad, focus_range_m).map_err(domain)?;
    xc::beampattern(&layout.inner, &focus, &grid).map_err(domain)
}

/// CRBs for joint (angle, range) estimation with an unknown complex gain.
#[pyfunction]
#[pyo3(signature = (layout, theta_rad, range_m, snr_db = 0.0, snapshots = 1))]
fn crb(
    layout: &Layout,
    theta_rad: f64,
    range_m: f64,
    snr_db: f64,
    snapshots: u64,
) -> PyResult<CrbResult> {
    let src = source(theta_rad, range_m, snr_db, snapshots)?;
    xc::crb(&layout.inner, &src)
        .map(|inner| CrbResult { inner })
        .map_err(domain)
}

/// Phase-only LoS channel between centered parallel arrays.
#[pyfunction]
fn los_channel(tx: &Layout, rx: &Layout, separation_m: f64) -> PyResult<Channel> {
    xc::los_channel(&tx.inner, &rx.inner, separation_m)
        .map(|inner| Channel { inner })
        .map_err(domain)
}

/// Effective rank at each separation as `(distance_m, rank)` pairs.
#[pyfunction]
fn rank_vs_distance(
    tx: &Layout,
    rx: &Layout,
    distances_m: Vec<f64>,
    threshold: f64,
) -> PyResult<Vec<(f64, usize)>> {
    xc::rank_vs_distance(&tx.inner, &rx.inner, &distances_m, threshold)
        .map(|rows| rows.iter().map(|r| (r.distance_m, r.rank)).collect())
        .map_err(domain)
}

#[pymodule]
fn xlsparse(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SPEED_OF_LIGHT_M_PER_S", xc::SPEED_OF_LIGHT_M_PER_S)?;
    m.add_class::<Layout>()?;
    m.add_class::<Coarray>()?;
    m.add_class::<CrbResult>()?;
    m.add_class::<Channel>()?;
    m.add_function(wrap_pyfunction!(difference_coarray, m)?)?;
    m.add_function(wrap_pyfunction!(search_max_dof, m)?)?;
    m.add_function(wrap_pyfunction!(spherical_steering, m)?)?;
    m.add_function(wrap_pyfunction!(planar_steering, m)?)?;
    m.add_function(wrap_pyfunction!(fresnel_steering, m)?)?;
    m.add_function(wrap_pyfunction!(steering_derivatives, m)?)?;
    m.add_function(wrap_pyfunction!(beampattern, m)?)?;
    m.add_function(wrap_pyfunction!(crb, m)?)?;
    m.add_function(wrap_pyfunction!(los_channel, m)?)?;
    m.add_function(wrap_pyfunction!(rank_vs_distance, m)?)?;
    Ok(())
}
