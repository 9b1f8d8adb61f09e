//! Python bindings: exact scalars, power series, Brenke tables, the family
//! catalog, the d-orthogonality oracles and case classification.

use brenke_core::brenke::{build_polynomials, symmetry_order, BrenkeSet};
use brenke_core::classify::classify_case;
use brenke_core::dorth::{
    dual_functional_check, dual_window, extract_recurrence, theorem_delta_test, DeltaRange,
    VerdictReport,
};
use brenke_core::error::Error;
use brenke_core::families::{build_family_detailed, catalog, FamilySpec};
use brenke_core::scalar::Scalar;
use brenke_core::series::PowerSeries;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;

create_exception!(brenke, BrenkeError, PyValueError);

fn err(e: Error) -> PyErr {
    BrenkeError::new_err(e.to_string())
}

fn json_value<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| BrenkeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// An element `u + v w` of `Q(w)`, `w^2 + w + 1 = 0`.
#[pyclass(name = "Scalar", module = "brenke", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyScalar(Scalar);

/// Accepts a `Scalar`, an `int` or a string such as `"3/4"` or `"1/2+2w"`.
fn scalar_arg(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(s) = obj.extract::<PyRef<'_, PyScalar>>() {
        return Ok(s.0.clone());
    }
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(Scalar::from_int(n));
    }
    if let Ok(text) = obj.extract::<String>() {
        return text.parse().map_err(err);
    }
    Err(BrenkeError::new_err("expected Scalar, int or str"))
}

#[pymethods]
impl PyScalar {
    #[new]
    #[pyo3(signature = (u = None, v = None))]
    fn new(u: Option<&Bound<'_, PyAny>>, v: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let u = u.map(scalar_arg).transpose()?.unwrap_or_else(Scalar::zero);
        let v = v.map(scalar_arg).transpose()?.unwrap_or_else(Scalar::zero);
        Ok(PyScalar(u + v * Scalar::omega()))
    }

    #[staticmethod]
    fn omega() -> Self {
        PyScalar(Scalar::omega())
    }

    #[getter]
    fn u(&self) -> String {
        self.0.u().to_string()
    }

    #[getter]
    fn v(&self) -> String {
        self.0.v().to_string()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn conj(&self) -> Self {
        PyScalar(self.0.conj())
    }

    fn norm(&self) -> String {
        self.0.norm().to_string()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(PyScalar).map_err(err)
    }

    fn sqrt(&self) -> Option<Self> {
        self.0.sqrt().map(PyScalar)
    }

    fn to_complex(&self) -> (f64, f64) {
        self.0.to_complex()
    }

    fn __complex__<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let (re, im) = self.0.to_complex();
        py.import("builtins")?.getattr("complex")?.call1((re, im))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("scalars serialize")
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PyScalar)
            .map_err(|e| BrenkeError::new_err(e.to_string()))
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 + &scalar_arg(other)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 - &scalar_arg(other)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&scalar_arg(other)? - &self.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 * &scalar_arg(other)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0
            .try_div(&scalar_arg(other)?)
            .map(PyScalar)
            .map_err(err)
    }

    fn __rtruediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        scalar_arg(other)?
            .try_div(&self.0)
            .map(PyScalar)
            .map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyScalar(-&self.0)
    }

    fn __pow__(&self, exp: i64, modulo: Option<i64>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(BrenkeError::new_err("modular power is not supported"));
        }
        self.0.pow(exp).map(PyScalar).map_err(err)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0)
    }
}

/// A truncated power series with exact coefficients.
#[pyclass(name = "PowerSeries", module = "brenke", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(PowerSeries);

fn series_arg(obj: &Bound<'_, PyAny>) -> PyResult<PowerSeries> {
    if let Ok(s) = obj.extract::<PyRef<'_, PySeries>>() {
        return Ok(s.0.clone());
    }
    let items = obj.try_iter()?;
    let coeffs = items
        .map(|x| scalar_arg(&x?))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(PowerSeries::new(coeffs))
}

#[pymethods]
impl PySeries {
    /// Coefficients `c_0..c_N`, each a `Scalar`, `int` or `str`.
    #[new]
    fn new(coeffs: &Bound<'_, PyAny>) -> PyResult<Self> {
        series_arg(coeffs).map(PySeries)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn coeffs(&self) -> Vec<PyScalar> {
        self.0.coeffs().iter().cloned().map(PyScalar).collect()
    }

    fn __getitem__(&self, index: usize) -> PyResult<PyScalar> {
        self.0.coeff(index).cloned().map(PyScalar).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.order() + 1
    }

    #[pyo3(signature = (other, order = None))]
    fn mul(&self, other: &Bound<'_, PyAny>, order: Option<usize>) -> PyResult<Self> {
        let other = series_arg(other)?;
        let order = order.unwrap_or(self.0.order().min(other.order()));
        self.0.mul(&other, order).map(PySeries).map_err(err)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PySeries(self.0.add(&series_arg(other)?)))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PySeries(self.0.sub(&series_arg(other)?)))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(c) = scalar_arg(other) {
            return Ok(PySeries(self.0.scale(&c)));
        }
        self.mul(other, None)
    }

    #[pyo3(signature = (order = None))]
    fn reciprocal(&self, order: Option<usize>) -> PyResult<Self> {
        let order = order.unwrap_or(self.0.order());
        self.0.reciprocal(order).map(PySeries).map_err(err)
    }

    #[pyo3(signature = (order = None))]
    fn exp(&self, order: Option<usize>) -> PyResult<Self> {
        let order = order.unwrap_or(self.0.order());
        self.0.exp_series(order).map(PySeries).map_err(err)
    }

    /// `f(c t^m)` truncated at `order`.
    #[pyo3(signature = (c, m = 1, order = None))]
    fn substitute(&self, c: &Bound<'_, PyAny>, m: usize, order: Option<usize>) -> PyResult<Self> {
        let order = order.unwrap_or(self.0.order());
        Ok(PySeries(self.0.transform_arg(&scalar_arg(c)?, m, order)))
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        series_arg(other).is_ok_and(|o| o == self.0)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("series serialize")
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PySeries)
            .map_err(|e| BrenkeError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        let shown: Vec<String> = self
            .0
            .coeffs()
            .iter()
            .take(6)
            .map(|c| c.to_string())
            .collect();
        let more = if self.0.order() >= 6 { ", ..." } else { "" };
        format!(
            "PowerSeries([{}{more}], order={})",
            shown.join(", "),
            self.0.order()
        )
    }
}

/// Polynomials `P_n(x) = sum_k a_{n-k} b_k x^k` for `n <= N`.
#[pyclass(name = "BrenkeSet", module = "brenke", frozen)]
struct PySet(BrenkeSet);

#[pymethods]
impl PySet {
    #[new]
    #[pyo3(signature = (a, b, order = None))]
    fn new(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, order: Option<usize>) -> PyResult<Self> {
        let (a, b) = (series_arg(a)?, series_arg(b)?);
        let order = order.unwrap_or(a.order().min(b.order()));
        build_polynomials(&a, &b, order).map(PySet).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn a(&self) -> PySeries {
        PySeries(self.0.a().clone())
    }

    #[getter]
    fn b(&self) -> PySeries {
        PySeries(self.0.b().clone())
    }

    /// Coefficients of `P_n` in increasing powers of `x`.
    fn poly(&self, n: usize) -> PyResult<Vec<PyScalar>> {
        if n > self.0.order() {
            return Err(BrenkeError::new_err(format!("n = {n} exceeds the order")));
        }
        Ok(self.0.poly(n).iter().cloned().map(PyScalar).collect())
    }

    fn eval(&self, n: usize, x: &Bound<'_, PyAny>) -> PyResult<PyScalar> {
        if n > self.0.order() {
            return Err(BrenkeError::new_err(format!("n = {n} exceeds the order")));
        }
        Ok(PyScalar(self.0.eval(n, &scalar_arg(x)?)))
    }

    /// `r_n = b_n / b_{n+1}`.
    #[getter]
    fn r(&self) -> Vec<PyScalar> {
        self.0.delta().r.iter().cloned().map(PyScalar).collect()
    }

    /// `Delta_n = r_n - r_{n-1}`.
    #[getter]
    fn delta(&self) -> Vec<PyScalar> {
        self.0.delta().delta.iter().cloned().map(PyScalar).collect()
    }

    fn symmetry_order(&self) -> Option<usize> {
        symmetry_order(&self.0)
    }

    /// Run one oracle (`recurrence`, `dual` or `delta`) and return its report as a dict.
    /// The dual oracle shrinks `n_max` (and picks `m_max <= 4`) to fit the order.
    #[pyo3(signature = (d = 2, n_max = None, oracle = "recurrence", m_max = None))]
    fn check<'py>(
        &self,
        py: Python<'py>,
        d: usize,
        n_max: Option<usize>,
        oracle: &str,
        m_max: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let n_max = n_max.unwrap_or(self.0.order().saturating_sub(1));
        let report = match oracle {
            "recurrence" => {
                let (data, v) = extract_recurrence(&self.0, d, n_max).map_err(err)?;
                VerdictReport::new(oracle, &v, Some(&data))
            }
            "dual" => {
                let (m, n) = dual_window(self.0.order(), d, n_max, m_max);
                let v = dual_functional_check(&self.0, d, m, n).map_err(err)?;
                VerdictReport::new(oracle, &v, None)
            }
            "delta" => {
                let v = theorem_delta_test(&self.0, d, n_max, DeltaRange::Full).map_err(err)?;
                VerdictReport::new(oracle, &v, None)
            }
            other => return Err(BrenkeError::new_err(format!("unknown oracle {other:?}"))),
        };
        json_value(py, &report)
    }

    #[pyo3(signature = (d, n_max = None))]
    fn is_d_orthogonal(&self, d: usize, n_max: Option<usize>) -> PyResult<bool> {
        let n_max = n_max.unwrap_or(self.0.order().saturating_sub(1));
        Ok(extract_recurrence(&self.0, d, n_max)
            .map_err(err)?
            .1
            .is_d_orthogonal)
    }

    /// Case label, annihilator roots and recovered parameters of a 2-orthogonal set.
    #[pyo3(signature = (n_max = None))]
    fn classify<'py>(&self, py: Python<'py>, n_max: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let n_max = n_max.unwrap_or(self.0.order().saturating_sub(1));
        json_value(py, &classify_case(&self.0, n_max).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("BrenkeSet(order={})", self.0.order())
    }
}

/// Catalog samples as a list of `(name, family, label)`.
#[pyfunction]
fn samples() -> Vec<(String, String, String)> {
    catalog()
        .into_iter()
        .map(|e| {
            (
                e.name.to_string(),
                e.spec.cli_name().to_string(),
                e.label.to_string(),
            )
        })
        .collect()
}

/// Build a family by CLI name (`hermite`, `laguerre`, ...) or sample name.
/// Parameters not given keep the family's sample values.
#[pyfunction]
#[pyo3(signature = (name, order = 20, sub = None, **params))]
fn family(
    name: &str,
    order: usize,
    sub: Option<&str>,
    params: Option<&Bound<'_, PyDict>>,
) -> PyResult<PySet> {
    let mut spec = FamilySpec::default_for(name)
        .or_else(|| {
            catalog()
                .into_iter()
                .find(|e| e.name == name)
                .map(|e| e.spec)
        })
        .ok_or_else(|| BrenkeError::new_err(format!("unknown family {name:?}")))?;
    if let Some(params) = params {
        for (k, v) in params.iter() {
            let key: String = k.extract()?;
            let slot = spec
                .param_mut(&key)
                .ok_or_else(|| BrenkeError::new_err(format!("{name} has no parameter {key:?}")))?;
            *slot = scalar_arg(&v)?;
        }
    }
    if let Some(sub) = sub {
        spec.set_sub(sub).map_err(err)?;
    }
    build_family_detailed(&spec, order)
        .map(|b| PySet(b.set))
        .map_err(err)
}

/// Run the command-line tool in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn cli(args: &Bound<'_, PyList>) -> PyResult<(i32, String, String)> {
    let args: Vec<String> = args.extract()?;
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let argv = std::iter::once("brenke".to_string()).chain(args);
    let code = brenke_core::cli::run(argv, &mut out, &mut errs);
    Ok((
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&errs).into_owned(),
    ))
}

#[pymodule]
pub fn brenke(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PySet>()?;
    m.add_function(wrap_pyfunction!(samples, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    m.add("BrenkeError", m.py().get_type::<BrenkeError>())?;
    Ok(())
}
