//! Python bindings for the curve-lifting library.
//!
//! The module exposes the main types (`Morphism`, `Point`, `Blowup`,
//! `Lifted`) and the verification entry points (`census`, `verify`,
//! `estimate_dimension`, `stratum_dimension`, `count_morphisms`). Inputs use
//! the same textual grammar as the command-line tool; every library error
//! surfaces as a `ValueError` carrying the rendered message.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use curvelift_cli::parse;
use curvelift_core::{
    census_strata, count_morphisms as core_count_morphisms,
    estimate_dimension as core_estimate_dimension,
    stratum_dimension as core_stratum_dimension, BinaryForm, BlowupConfig, CensusParams,
    CensusReport, DimensionKind, FieldSpec, LiftBase, LiftedMorphism, MorphismP1,
    ProjectivePoint, StratumLabel,
};

fn value_error(e: curvelift_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_spec(name: &str) -> PyResult<FieldSpec> {
    parse::parse_field_flag(name).map_err(PyValueError::new_err)
}

/// Either an already-constructed `Point` or its text form.
#[derive(FromPyObject)]
enum PointArg {
    Object(Point),
    Text(String),
}

impl PointArg {
    fn into_point(self, field: FieldSpec) -> PyResult<ProjectivePoint> {
        match self {
            PointArg::Object(p) => {
                if p.inner.field() != field {
                    return Err(PyValueError::new_err(format!(
                        "point is over {} but {} was requested",
                        p.inner.field(),
                        field
                    )));
                }
                Ok(p.inner)
            }
            PointArg::Text(text) => parse::parse_point(field, &text).map_err(value_error),
        }
    }
}

/// A point of projective space with canonical coordinates.
#[pyclass(frozen, eq)]
#[derive(Clone, PartialEq)]
struct Point {
    inner: ProjectivePoint,
}

#[pymethods]
impl Point {
    /// Point("(1:2:3)", field="Q") — coordinates are scaled so the first
    /// nonzero one is 1.
    #[new]
    #[pyo3(signature = (text, field = "Q"))]
    fn new(text: &str, field: &str) -> PyResult<Point> {
        let spec = field_spec(field)?;
        let inner = parse::parse_point(spec, text).map_err(value_error)?;
        Ok(Point { inner })
    }

    /// Name of the coefficient field ("Q" or "F<p>").
    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    /// Dimension of the ambient projective space.
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Canonical coordinates as rendered scalars.
    #[getter]
    fn coords(&self) -> Vec<String> {
        self.inner.coords().iter().map(|c| c.to_string()).collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Point(\"{}\", field=\"{}\")", self.inner, self.inner.field())
    }
}

/// A morphism P¹ → Pⁿ given by a tuple of binary forms of a common degree.
#[pyclass(frozen, eq)]
#[derive(Clone, PartialEq)]
struct Morphism {
    inner: MorphismP1,
}

#[pymethods]
impl Morphism {
    /// Morphism("(u^2:u*v:v^2)", field="Q") — the tuple is normalized: a
    /// common factor of the entries is stripped and the result is rescaled
    /// so its leading coefficient is 1-free canonical form.
    #[new]
    #[pyo3(signature = (text, field = "Q"))]
    fn new(text: &str, field: &str) -> PyResult<Morphism> {
        let spec = field_spec(field)?;
        let (inner, _stripped) = parse::parse_morphism(spec, text).map_err(value_error)?;
        Ok(Morphism { inner })
    }

    /// Name of the coefficient field ("Q" or "F<p>").
    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    /// Common degree of the defining forms.
    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// Dimension n of the target projective space.
    #[getter]
    fn target_dim(&self) -> usize {
        self.inner.target_dim()
    }

    /// The defining forms as rendered text.
    #[getter]
    fn forms(&self) -> Vec<String> {
        self.inner.forms().iter().map(|f| f.to_string()).collect()
    }

    /// True when the morphism is constant (degree 0).
    #[getter]
    fn is_constant(&self) -> bool {
        self.inner.is_constant()
    }

    /// Image of a parameter point of P¹.
    fn eval(&self, a: PointArg) -> PyResult<Point> {
        let a = a.into_point(self.inner.field())?;
        let image = self.inner.eval(&a).map_err(value_error)?;
        Ok(Point { inner: image })
    }

    /// Parametric multiplicity of the curve at a target point: the length
    /// of the scheme-theoretic fiber over it.
    fn multiplicity(&self, p: PointArg) -> PyResult<usize> {
        let p = p.into_point(self.inner.field())?;
        self.inner.parametric_multiplicity(&p).map_err(value_error)
    }

    /// Whether the target point lies on the image curve (after base change
    /// to the algebraic closure).
    fn image_contains(&self, p: PointArg) -> PyResult<bool> {
        let p = p.into_point(self.inner.field())?;
        self.inner.image_contains(&p).map_err(value_error)
    }

    /// Generic fiber size and image-curve degree, as a dict with keys
    /// "deg_g" and "deg_image".
    fn geometric_degree<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let gd = self.inner.geometric_degree().map_err(value_error)?;
        let out = PyDict::new(py);
        out.set_item("deg_g", gd.deg_g)?;
        out.set_item("deg_image", gd.deg_image)?;
        Ok(out)
    }

    /// Precomposition with a self-map of P¹ (degrees multiply).
    fn reparametrize(&self, g: &Morphism) -> PyResult<Morphism> {
        let inner = self.inner.reparametrize(&g.inner).map_err(value_error)?;
        Ok(Morphism { inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Morphism(\"{}\", field=\"{}\")",
            self.inner,
            self.inner.field()
        )
    }
}

fn stratum_dict<'py>(py: Python<'py>, label: &StratumLabel) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    match label {
        StratumLabel::Interior { d, m } => {
            out.set_item("kind", "interior")?;
            out.set_item("d", d)?;
            out.set_item("m", m.clone())?;
        }
        StratumLabel::Exceptional { i, e } => {
            out.set_item("kind", "exceptional")?;
            out.set_item("i", i)?;
            out.set_item("e", e)?;
        }
        StratumLabel::Constant => {
            out.set_item("kind", "constant")?;
        }
    }
    Ok(out)
}

/// A curve lifted to the blow-up: base morphism plus one component tuple
/// per blown-up point.
#[pyclass(frozen, eq)]
#[derive(Clone, PartialEq)]
struct Lifted {
    inner: LiftedMorphism,
}

#[pymethods]
impl Lifted {
    /// The stratum label as a dict ({"kind": "interior", "d": …, "m": […]},
    /// {"kind": "exceptional", "i": …, "e": …}, or {"kind": "constant"}).
    #[getter]
    fn stratum<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        stratum_dict(py, &self.inner.stratum())
    }

    /// The base morphism downstairs, or None for a curve inside an
    /// exceptional divisor.
    #[getter]
    fn base(&self) -> Option<Morphism> {
        match self.inner.base() {
            LiftBase::Curve(f) => Some(Morphism { inner: f.clone() }),
            LiftBase::Exceptional(_) => None,
        }
    }

    /// 1-based index of the exceptional divisor the curve lives in, or None
    /// for an honest curve downstairs.
    #[getter]
    fn exceptional_index(&self) -> Option<usize> {
        match self.inner.base() {
            LiftBase::Curve(_) => None,
            LiftBase::Exceptional(i) => Some(*i),
        }
    }

    /// The component tuples in moved coordinates, rendered as text.
    #[getter]
    fn components(&self) -> Vec<Vec<String>> {
        self.inner
            .components()
            .iter()
            .map(|tuple| tuple.iter().map(|g| g.to_string()).collect())
            .collect()
    }

    /// Common degree of the idx-th component tuple (0-based).
    fn component_degree(&self, idx: usize) -> PyResult<usize> {
        if idx >= self.inner.components().len() {
            return Err(PyValueError::new_err(format!(
                "component index {idx} out of range for {} blown-up point(s)",
                self.inner.components().len()
            )));
        }
        Ok(self.inner.component_degree(idx))
    }

    /// Project back down to Pⁿ, recovering the original morphism.
    fn project(&self) -> PyResult<Morphism> {
        let inner = self.inner.project().map_err(value_error)?;
        Ok(Morphism { inner })
    }

    /// Evaluate at a parameter point of P¹: returns a dict with the image
    /// "base" point and the list of exceptional-direction "fibers" (one
    /// point of Pⁿ⁻¹ per blown-up point, in moved coordinates).
    fn evaluate<'py>(&self, py: Python<'py>, a: PointArg) -> PyResult<Bound<'py, PyDict>> {
        let a = a.into_point(self.inner.config().field())?;
        let ev = self.inner.evaluate(&a).map_err(value_error)?;
        let out = PyDict::new(py);
        out.set_item("base", Point { inner: ev.base_point })?;
        let fibers: Vec<Point> = ev
            .fiber_points
            .into_iter()
            .map(|p| Point { inner: p })
            .collect();
        out.set_item("fibers", fibers)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        let base = match self.inner.base() {
            LiftBase::Curve(f) => f.to_string(),
            LiftBase::Exceptional(i) => format!("exceptional divisor {i}"),
        };
        format!("<Lifted {} [{}]>", base, self.inner.stratum())
    }
}

/// The blow-up of Pⁿ at finitely many distinct points.
#[pyclass(frozen)]
struct Blowup {
    inner: BlowupConfig,
}

#[pymethods]
impl Blowup {
    /// Blowup(2, ["(1:0:0)", "(0:1:0)"], field="Q")
    #[new]
    #[pyo3(signature = (n, points, field = "Q"))]
    fn new(n: usize, points: Vec<PointArg>, field: &str) -> PyResult<Blowup> {
        let spec = field_spec(field)?;
        let points = points
            .into_iter()
            .map(|p| p.into_point(spec))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = BlowupConfig::new(spec, n, points).map_err(value_error)?;
        Ok(Blowup { inner })
    }

    /// Name of the coefficient field ("Q" or "F<p>").
    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    /// Dimension n of the blown-up projective space.
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// The blown-up points.
    #[getter]
    fn points(&self) -> Vec<Point> {
        self.inner
            .points()
            .iter()
            .map(|p| Point { inner: p.clone() })
            .collect()
    }

    /// Lift a curve of Pⁿ to the blow-up. Fails with ValueError for a
    /// constant curve sitting at a blown-up point (no unique lift).
    fn lift(&self, f: &Morphism) -> PyResult<Lifted> {
        let inner = self.inner.lift(&f.inner).map_err(value_error)?;
        Ok(Lifted { inner })
    }

    /// Stratum label of a curve, as a dict (lift + classify in one step).
    fn classify<'py>(&self, py: Python<'py>, f: &Morphism) -> PyResult<Bound<'py, PyDict>> {
        let lifted = self.inner.lift(&f.inner).map_err(value_error)?;
        stratum_dict(py, &lifted.stratum())
    }

    /// Build the curve inside the i-th exceptional divisor (1-based) whose
    /// moved-coordinate direction forms are the given texts.
    fn exceptional_lift(&self, i: usize, forms: Vec<String>) -> PyResult<Lifted> {
        let spec = self.inner.field();
        let parsed = forms
            .iter()
            .map(|t| parse::parse_form(spec, t))
            .collect::<Result<Vec<BinaryForm>, _>>()
            .map_err(value_error)?;
        let inner = self.inner.exceptional_lift(i, parsed).map_err(value_error)?;
        Ok(Lifted { inner })
    }

    fn __repr__(&self) -> String {
        let pts: Vec<String> = self.inner.points().iter().map(|p| p.to_string()).collect();
        format!(
            "Blowup({}, [{}], field=\"{}\")",
            self.inner.n(),
            pts.join(", "),
            self.inner.field()
        )
    }
}

fn census_params(
    n: usize,
    d: usize,
    q: u64,
    points: Vec<PointArg>,
    max_exceptional_degree: usize,
    budget: u64,
    shards: usize,
) -> PyResult<CensusParams> {
    let spec = field_spec(&format!("F{q}"))?;
    let points = points
        .into_iter()
        .map(|p| p.into_point(spec))
        .collect::<PyResult<Vec<_>>>()?;
    let mut params = CensusParams::new(n, d, q, points);
    params.max_exceptional_degree = max_exceptional_degree;
    params.budget = budget;
    params.shards = shards;
    Ok(params)
}

fn census_dict<'py>(py: Python<'py>, report: &CensusReport) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);

    let params = PyDict::new(py);
    params.set_item("field", format!("F{}", report.params.q))?;
    params.set_item("n", report.params.n)?;
    params.set_item("d", report.params.d)?;
    let point_texts: Vec<String> = report
        .params
        .points
        .iter()
        .map(|p| p.to_string())
        .collect();
    params.set_item("points", point_texts)?;
    params.set_item("max_exceptional_degree", report.params.max_exceptional_degree)?;
    params.set_item("budget", report.params.budget)?;
    params.set_item("shards", report.params.shards)?;
    out.set_item("params", params)?;

    out.set_item("total", report.total)?;

    let strata = PyList::empty(py);
    for (label, count) in &report.strata {
        let row = stratum_dict(py, label)?;
        row.set_item("count", count)?;
        strata.append(row)?;
    }
    out.set_item("strata", strata)?;

    let exceptional = PyList::empty(py);
    for (label, count) in &report.exceptional {
        let row = stratum_dict(py, label)?;
        row.set_item("count", count)?;
        exceptional.append(row)?;
    }
    out.set_item("exceptional", exceptional)?;

    let verdicts = PyDict::new(py);
    verdicts.set_item("disjoint", report.verdicts.disjoint)?;
    verdicts.set_item("exhaustive", report.verdicts.exhaustive)?;
    verdicts.set_item("lift_unique", report.verdicts.lift_unique)?;
    verdicts.set_item("round_trip", report.verdicts.round_trip)?;
    out.set_item("verdicts", verdicts)?;

    match &report.counterexample {
        Some(ce) => {
            let row = PyDict::new(py);
            row.set_item("index", ce.index)?;
            row.set_item("morphism", &ce.morphism)?;
            row.set_item("detail", &ce.detail)?;
            out.set_item("counterexample", row)?;
        }
        None => out.set_item("counterexample", py.None())?,
    }

    Ok(out)
}

/// Exhaustively enumerate the degree-d morphisms P¹ → Pⁿ over F_q, lift each
/// to the blow-up at the given points, and tally the strata. Returns the full
/// report as a dict (params, total, strata, exceptional, verdicts,
/// counterexample).
#[pyfunction]
#[pyo3(signature = (n, d, q, points, max_exceptional_degree = 3, budget = 1_000_000_000, shards = 0))]
#[allow(clippy::too_many_arguments)]
fn census<'py>(
    py: Python<'py>,
    n: usize,
    d: usize,
    q: u64,
    points: Vec<PointArg>,
    max_exceptional_degree: usize,
    budget: u64,
    shards: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let params = census_params(n, d, q, points, max_exceptional_degree, budget, shards)?;
    let report = py
        .allow_threads(|| census_strata(&params))
        .map_err(value_error)?;
    census_dict(py, &report)
}

/// Run the census and return True exactly when every verification verdict
/// holds (disjoint, exhaustive, unique lifts, round-trip).
#[pyfunction]
#[pyo3(signature = (n, d, q, points, max_exceptional_degree = 3, budget = 1_000_000_000, shards = 0))]
#[allow(clippy::too_many_arguments)]
fn verify(
    py: Python<'_>,
    n: usize,
    d: usize,
    q: u64,
    points: Vec<PointArg>,
    max_exceptional_degree: usize,
    budget: u64,
    shards: usize,
) -> PyResult<bool> {
    let params = census_params(n, d, q, points, max_exceptional_degree, budget, shards)?;
    let report = py
        .allow_threads(|| census_strata(&params))
        .map_err(value_error)?;
    Ok(report.verdicts.all_true())
}

/// Number of degree-d morphisms P¹ → Pⁿ over F_q.
#[pyfunction]
#[pyo3(signature = (n, d, q, budget = 1_000_000_000))]
fn count_morphisms(py: Python<'_>, n: usize, d: usize, q: u64, budget: u64) -> PyResult<u64> {
    py.allow_threads(|| core_count_morphisms(n, d, q, budget))
        .map_err(value_error)
}

/// Infer a dimension from point counts over at least two prime fields
/// {q: count}, via the growth rate count ≈ q^dim.
#[pyfunction]
fn estimate_dimension(counts: BTreeMap<u64, u64>) -> PyResult<i64> {
    core_estimate_dimension(&counts).map_err(value_error)
}

/// Dimension of a stratum of curves on the blow-up of Pⁿ, as a dict
/// {"kind": "exact" | "upper_bound", "value": …}. Pass d and m for an
/// interior stratum, or exceptional_degree for a curve inside an
/// exceptional divisor.
#[pyfunction]
#[pyo3(signature = (n, d = None, m = None, exceptional_degree = None))]
fn stratum_dimension<'py>(
    py: Python<'py>,
    n: usize,
    d: Option<usize>,
    m: Option<Vec<usize>>,
    exceptional_degree: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let label = match (d, exceptional_degree) {
        (Some(d), None) => StratumLabel::Interior {
            d,
            m: m.unwrap_or_default(),
        },
        (None, Some(e)) => StratumLabel::Exceptional { i: 1, e },
        _ => {
            return Err(PyValueError::new_err(
                "pass either d (with optional m) or exceptional_degree",
            ))
        }
    };
    let dim = core_stratum_dimension(&label, n).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item(
        "kind",
        match dim.kind {
            DimensionKind::Exact => "exact",
            DimensionKind::UpperBound => "upper_bound",
        },
    )?;
    out.set_item("value", dim.value)?;
    Ok(out)
}

#[pymodule]
fn curvelift(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Point>()?;
    m.add_class::<Morphism>()?;
    m.add_class::<Blowup>()?;
    m.add_class::<Lifted>()?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(count_morphisms, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_dimension, m)?)?;
    Ok(())
}
