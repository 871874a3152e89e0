//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! (any object whose `str()` is `p` or `p/q` is accepted on input) and
//! polynomials as expression strings.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use quasihom_core::cartan;
use quasihom_core::exactalg::linalg::Matrix;
use quasihom_core::exactalg::parse::parse_expr;
use quasihom_core::exactalg::rational::{fmt_compact, parse_rational};
use quasihom_core::exactalg::{Rate, Rational};
use quasihom_core::families::{self, FamilyParams};
use quasihom_core::geometry::{self, Point};
use quasihom_core::killing::{self, KillingBasis};
use quasihom_core::liealg;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?.to_string();
    parse_rational(&text).map_err(|_| value_error(format!("not a rational number: `{text}`")))
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_compact(r),))
}

fn point(obj: Option<&Bound<'_, PyAny>>) -> PyResult<Point> {
    let Some(obj) = obj else {
        return Ok(geometry::origin());
    };
    let items: Vec<Bound<'_, PyAny>> = obj.try_iter()?.collect::<PyResult<_>>()?;
    if items.len() != 3 {
        return Err(value_error("a point has three coordinates (x, h, z)"));
    }
    Ok([rational(&items[0])?, rational(&items[1])?, rational(&items[2])?])
}

fn params(obj: Option<&Bound<'_, PyDict>>) -> PyResult<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    if let Some(d) = obj {
        for (k, v) in d.iter() {
            out.insert(k.extract::<String>()?, rational(&v)?);
        }
    }
    Ok(out)
}

fn rates(obj: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Rate>> {
    let Some(obj) = obj else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for item in obj.try_iter()? {
        let p = point(Some(&item?))?;
        let [a, b, c] = p;
        out.push(Rate::new(a, b, c));
    }
    Ok(out)
}

fn matrix_in(obj: &Bound<'_, PyAny>) -> PyResult<Matrix> {
    let mut rows = Vec::new();
    for row in obj.try_iter()? {
        let row = row?;
        rows.push(row.try_iter()?.map(|x| rational(&x?)).collect::<PyResult<Vec<_>>>()?);
    }
    Ok(rows)
}

fn matrix_out<'py>(py: Python<'py>, m: &Matrix) -> PyResult<Bound<'py, PyList>> {
    let rows = m
        .iter()
        .map(|row| row.iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>())
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, rows)
}

fn family_params(c: &Bound<'_, PyAny>, d: &Bound<'_, PyAny>) -> PyResult<FamilyParams> {
    Ok(FamilyParams::new(rational(c)?, rational(d)?))
}

/// A Lorentz metric on a chart of R³ with coordinates `(x, h, z)`.
#[pyclass(frozen, skip_from_py_object)]
pub struct Metric {
    inner: geometry::Metric,
}

#[pymethods]
impl Metric {
    /// `components` are the expressions for `gxx, gxh, gxz, ghh, ghz, gzz`.
    #[new]
    #[pyo3(signature = (components, params=None, base_point=None))]
    fn new(
        components: Vec<String>,
        params: Option<&Bound<'_, PyDict>>,
        base_point: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let exprs: [&str; 6] = components
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|_| value_error("expected six components gxx, gxh, gxz, ghh, ghz, gzz"))?;
        let inner = geometry::Metric::parse(exprs, &self::params(params)?, point(base_point)?).map_err(value_error)?;
        Ok(Metric { inner })
    }

    /// The family member `g_{C,D}`.
    #[staticmethod]
    #[pyo3(name = "family")]
    fn family_member(c: &Bound<'_, PyAny>, d: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Metric {
            inner: families::metric_gcd(&family_params(c, d)?),
        })
    }

    fn components(&self) -> Vec<String> {
        self.inner.upper().iter().map(|p| p.to_string()).collect()
    }

    fn base_point<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.base_point().iter().map(|x| fraction(py, x)).collect()
    }

    fn det(&self) -> String {
        self.inner.det().to_string()
    }

    #[pyo3(signature = (point=None))]
    fn at<'py>(&self, py: Python<'py>, point: Option<&Bound<'_, PyAny>>) -> PyResult<Bound<'py, PyList>> {
        matrix_out(py, &self.inner.at(&self::point(point)?))
    }

    /// `(positive, negative)` eigenvalue counts at a point.
    #[pyo3(signature = (point=None))]
    fn signature(&self, point: Option<&Bound<'_, PyAny>>) -> PyResult<(usize, usize)> {
        self.inner.signature_at(&self::point(point)?).map_err(value_error)
    }

    /// The sectional curvature if it is constant, otherwise `None`.
    fn constant_curvature<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        geometry::constant_curvature(&self.inner).map(|k| fraction(py, &k)).transpose()
    }

    /// `tr A, tr A², tr A³` of the Ricci operator, as rational-function strings.
    fn ricci_invariants(&self) -> Vec<String> {
        geometry::scalar_invariants(&self.inner).traces.iter().map(|t| t.to_string()).collect()
    }

    /// The Ricci operator at a point, or `None` where the metric is singular.
    #[pyo3(signature = (point=None))]
    fn ricci_at<'py>(&self, py: Python<'py>, point: Option<&Bound<'_, PyAny>>) -> PyResult<Option<Bound<'py, PyList>>> {
        geometry::ricci_operator(&self.inner)
            .at(&self::point(point)?)
            .map(|m| matrix_out(py, &m))
            .transpose()
    }

    /// Solves the Killing equation with polynomial coefficients up to `max_degree`,
    /// optionally with extra exponential sectors given by rates `(λx, λh, λz)`.
    #[pyo3(signature = (max_degree=2, exp_rates=None))]
    fn killing(&self, max_degree: u32, exp_rates: Option<&Bound<'_, PyAny>>) -> PyResult<KillingAlgebra> {
        let basis = killing::solve_killing(&self.inner, max_degree, &rates(exp_rates)?).map_err(value_error)?;
        Ok(KillingAlgebra { inner: basis })
    }

    /// Evidence-based local geometry classification.
    #[pyo3(signature = (exp_rates=None))]
    fn classify<'py>(&self, py: Python<'py>, exp_rates: Option<&Bound<'_, PyAny>>) -> PyResult<Bound<'py, PyDict>> {
        let class = families::classify_metric(&self.inner, &rates(exp_rates)?).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        classification(py, &class)
    }

    fn __repr__(&self) -> String {
        format!("Metric({:?})", self.components())
    }
}

fn classification<'py>(py: Python<'py>, class: &families::GeometryClass) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let ev = &class.evidence;
    d.set_item("tag", class.tag.name())?;
    d.set_item("curvature", ev.curvature.as_ref().map(|k| fraction(py, k)).transpose()?)?;
    d.set_item("killing_dim", ev.killing_dim)?;
    d.set_item("algebra", ev.algebra.as_ref().map(|a| a.to_string()))?;
    d.set_item("spectrum", ev.spectrum.to_string())?;
    d.set_item("center_in_ricci_kernel", ev.center_in_ricci_kernel)?;
    Ok(d)
}

/// A vector field with exponential-polynomial coefficients.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct VectorField {
    inner: killing::VectorField,
}

#[pymethods]
impl VectorField {
    /// Polynomial field from the expressions of its `∂x, ∂h, ∂z` components.
    #[new]
    #[pyo3(signature = (components, params=None))]
    fn new(components: Vec<String>, params: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        if components.len() != 3 {
            return Err(value_error("a vector field has three components"));
        }
        let params = self::params(params)?;
        let mut polys: [_; 3] = Default::default();
        for (slot, text) in polys.iter_mut().zip(&components) {
            *slot = parse_expr(text, &params).map_err(value_error)?;
        }
        Ok(VectorField {
            inner: killing::VectorField::from_polys(polys),
        })
    }

    fn components(&self) -> Vec<String> {
        self.inner.components().iter().map(|c| c.to_string()).collect()
    }

    fn bracket(&self, other: &VectorField) -> VectorField {
        VectorField {
            inner: killing::bracket(&self.inner, &other.inner),
        }
    }

    fn is_killing(&self, metric: &Metric) -> bool {
        killing::is_killing(&metric.inner, &self.inner)
    }

    /// Exact value at a point, or `None` when an exponential makes it irrational.
    fn eval<'py>(&self, py: Python<'py>, point: &Bound<'_, PyAny>) -> PyResult<Option<Vec<Bound<'py, PyAny>>>> {
        self.inner
            .eval_exact(&self::point(Some(point))?)
            .map(|v| v.iter().map(|x| fraction(py, x)).collect())
            .transpose()
    }

    fn __eq__(&self, other: &VectorField) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("VectorField({})", self.inner)
    }
}

/// A basis of Killing fields returned by the solver.
#[pyclass(frozen, skip_from_py_object)]
pub struct KillingAlgebra {
    inner: KillingBasis,
}

#[pymethods]
impl KillingAlgebra {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn fields(&self) -> Vec<VectorField> {
        self.inner.fields().iter().map(|f| VectorField { inner: f.clone() }).collect()
    }

    /// Structure constants in the solved basis.
    fn algebra(&self) -> PyResult<LieAlgebra> {
        let inner = self.inner.algebra().map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(LieAlgebra { inner })
    }

    /// Rank of the evaluation map at a point.
    fn orbit_rank(&self, point: &Bound<'_, PyAny>) -> PyResult<usize> {
        Ok(killing::evaluation_rank(self.inner.fields(), &self::point(Some(point))?))
    }

    /// Killing fields vanishing at a point.
    fn isotropy(&self, point: &Bound<'_, PyAny>) -> PyResult<Vec<VectorField>> {
        let fields = killing::isotropy_subalgebra(self.inner.fields(), &self::point(Some(point))?).map_err(value_error)?;
        Ok(fields.into_iter().map(|inner| VectorField { inner }).collect())
    }

    fn __repr__(&self) -> String {
        format!("KillingAlgebra(dim={})", self.inner.dim())
    }
}

/// A finite-dimensional real Lie algebra given by structure constants.
#[pyclass(frozen, skip_from_py_object)]
pub struct LieAlgebra {
    inner: liealg::LieAlgebra,
}

#[pymethods]
impl LieAlgebra {
    /// `constants[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
    #[new]
    fn new(constants: &Bound<'_, PyAny>) -> PyResult<Self> {
        let mut c = Vec::new();
        for plane in constants.try_iter()? {
            c.push(matrix_in(&plane?)?);
        }
        let inner = liealg::LieAlgebra::new(c.len(), c).map_err(value_error)?;
        Ok(LieAlgebra { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn classify(&self) -> String {
        self.inner.classify().to_string()
    }

    fn is_unimodular(&self) -> bool {
        self.inner.is_unimodular()
    }

    fn derived_series_dims(&self) -> Vec<usize> {
        self.inner.derived_series_dims()
    }

    fn center_dim(&self) -> usize {
        self.inner.center().len()
    }

    /// Rational eigenvalues of `ad` of the complement on the derived algebra, if any.
    fn complement_eigenvalues<'py>(&self, py: Python<'py>) -> PyResult<Option<(Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
        match self.inner.complement_eigenvalues() {
            Some((a, b)) => Ok(Some((fraction(py, &a)?, fraction(py, &b)?))),
            None => Ok(None),
        }
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra(dim={}, class={})", self.inner.dim(), self.inner.classify())
    }
}

#[pyfunction]
fn heisenberg() -> LieAlgebra {
    LieAlgebra {
        inner: liealg::heisenberg(),
    }
}

#[pyfunction]
fn sl2() -> LieAlgebra {
    LieAlgebra { inner: liealg::sl2() }
}

#[pyfunction]
fn make_sol(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<LieAlgebra> {
    Ok(LieAlgebra {
        inner: liealg::make_sol(rational(a)?, rational(b)?),
    })
}

#[pyfunction]
fn make_unipotent_case(gamma: &Bound<'_, PyAny>, r: &Bound<'_, PyAny>) -> PyResult<LieAlgebra> {
    Ok(LieAlgebra {
        inner: liealg::make_unipotent_case(rational(gamma)?, rational(r)?),
    })
}

/// Conjugacy class of an element of o(2,1).
#[pyfunction]
fn classify_o21_element(m: &Bound<'_, PyAny>) -> PyResult<String> {
    let class = liealg::classify_o21_element(&matrix_in(m)?).map_err(value_error)?;
    Ok(class.to_string())
}

/// Classifies `g_{C,D}` and checks the result against the parameter criteria.
#[pyfunction]
#[pyo3(name = "classify_family")]
fn classify_family_py<'py>(py: Python<'py>, c: &Bound<'_, PyAny>, d: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let class = families::classify_family(&family_params(c, d)?).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    classification(py, &class)
}

/// The geometry predicted for `g_{C,D}` from `C` and `D` alone.
#[pyfunction]
fn parameter_tag(c: &Bound<'_, PyAny>, d: &Bound<'_, PyAny>) -> PyResult<&'static str> {
    Ok(families::parameter_tag(&family_params(c, d)?).name())
}

/// The explicit Killing fields `X, H, Y, T` of `g_{C,D}`.
#[pyfunction]
fn family_killing_fields(c: &Bound<'_, PyAny>, d: &Bound<'_, PyAny>) -> PyResult<Vec<VectorField>> {
    let p = family_params(c, d)?;
    Ok([
        families::field_x(),
        families::field_h(),
        families::field_y(),
        families::extra_killing_t(&p),
    ]
    .into_iter()
    .map(|inner| VectorField { inner })
    .collect())
}

/// Checks every row of the curvature-module table.
#[pyfunction]
fn verify_table(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let report = cartan::verify_table();
    let rows = PyList::empty(py);
    for row in &report.rows {
        let r = PyDict::new(py);
        r.set_item("name", row.name)?;
        r.set_item("image_matches", row.image_matches)?;
        r.set_item("i_symmetric", row.i_symmetric)?;
        r.set_item("bianchi", row.bianchi)?;
        rows.append(r)?;
    }
    let d = PyDict::new(py);
    d.set_item("rows", rows)?;
    d.set_item("m_d_is_twice_identity", report.m_d_is_twice_identity)?;
    d.set_item("all_passed", report.all_passed())?;
    Ok(d)
}

#[pymodule]
fn quasihom(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Metric>()?;
    m.add_class::<VectorField>()?;
    m.add_class::<KillingAlgebra>()?;
    m.add_class::<LieAlgebra>()?;
    m.add_function(wrap_pyfunction!(heisenberg, m)?)?;
    m.add_function(wrap_pyfunction!(sl2, m)?)?;
    m.add_function(wrap_pyfunction!(make_sol, m)?)?;
    m.add_function(wrap_pyfunction!(make_unipotent_case, m)?)?;
    m.add_function(wrap_pyfunction!(classify_o21_element, m)?)?;
    m.add_function(wrap_pyfunction!(classify_family_py, m)?)?;
    m.add_function(wrap_pyfunction!(parameter_tag, m)?)?;
    m.add_function(wrap_pyfunction!(family_killing_fields, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table, m)?)?;
    Ok(())
}
