//! Python bindings. Octonions are passed as 8-element sequences, as
//! [`Octonion`] objects or as comma-separated literal strings; polynomials
//! as ascending coefficient sequences or literal strings.

use octosolve::dynamic::AnyField;
use octosolve::Error;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyComplex, PyDict, PyFloat, PyInt, PyList, PyString, PyTuple};
use serde_json::{Number, Value};

create_exception!(octosolve, OctosolveError, PyValueError, "Raised for any failure reported by the solver.");

fn err(e: Error) -> PyErr {
    OctosolveError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let items = items.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    if let Ok(o) = obj.extract::<PyRef<'_, Octonion>>() {
        return Ok(o.coords.clone());
    }
    if obj.is_none() {
        return Ok(Value::Null);
    }
    if obj.is_instance_of::<PyBool>() {
        return Ok(Value::Bool(obj.extract()?));
    }
    if obj.is_instance_of::<PyInt>() {
        return Ok(match obj.extract::<i64>() {
            Ok(i) => Value::from(i),
            Err(_) => Value::String(obj.str()?.to_string()),
        });
    }
    if obj.is_instance_of::<PyFloat>() {
        let x: f64 = obj.extract()?;
        return Number::from_f64(x)
            .map(Value::Number)
            .ok_or_else(|| OctosolveError::new_err(format!("{x} is not a finite number")));
    }
    if let Ok(z) = obj.cast::<PyComplex>() {
        return Ok(Value::Array(vec![from_py(&PyFloat::new(obj.py(), z.real()).into_any())?, from_py(
            &PyFloat::new(obj.py(), z.imag()).into_any(),
        )?]));
    }
    if let Ok(s) = obj.cast::<PyString>() {
        return Ok(Value::String(s.to_string()));
    }
    if obj.is_instance_of::<PyList>() || obj.is_instance_of::<PyTuple>() {
        return obj.try_iter()?.map(|x| from_py(&x?)).collect::<PyResult<Vec<_>>>().map(Value::Array);
    }
    // fractions.Fraction and similar
    if obj.hasattr("numerator")? && obj.hasattr("denominator")? {
        return Ok(Value::String(format!("{}/{}", obj.getattr("numerator")?.str()?, obj.getattr("denominator")?.str()?)));
    }
    Err(OctosolveError::new_err(format!("cannot convert {} to an operand", obj.repr()?)))
}

/// A working field: `"C"`, `"Q"`, `"F:p"`, `"F:p^k"` or `"F:p^k:c0,...,1"`.
#[pyclass(frozen, module = "octosolve")]
pub struct Field {
    inner: AnyField,
}

impl Field {
    fn wrap(&self, coords: Value) -> Octonion {
        Octonion { field: self.inner.clone(), coords }
    }
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (spec, epsilon = None, closure_degree = 1))]
    fn new(spec: &str, epsilon: Option<f64>, closure_degree: u32) -> PyResult<Self> {
        Ok(Field { inner: AnyField::parse(spec, epsilon, closure_degree).map_err(err)? })
    }

    #[getter]
    fn spec(&self) -> String {
        self.inner.spec().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.inner.spec())
    }

    fn octonion(&self, x: &Bound<'_, PyAny>) -> PyResult<Octonion> {
        Ok(self.wrap(self.inner.octonion(&from_py(x)?).map_err(err)?))
    }

    fn mul(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Octonion> {
        let v = self.inner.mul(&from_py(a)?, &from_py(b)?).map_err(err)?;
        Ok(self.wrap(v["product"].clone()))
    }

    fn eval(&self, poly: &Bound<'_, PyAny>, x: &Bound<'_, PyAny>) -> PyResult<Octonion> {
        let v = self.inner.eval(&from_py(poly)?, &from_py(x)?).map_err(err)?;
        Ok(self.wrap(v["value"].clone()))
    }

    /// Solution set of `poly(x) = rhs` as a dict.
    fn solve<'py>(&self, py: Python<'py>, poly: &Bound<'py, PyAny>, rhs: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let (p, c) = (from_py(poly)?, from_py(rhs)?);
        let v = py.detach(|| self.inner.solve(&p, &c)).map_err(err)?;
        to_py(py, &v)
    }

    fn nth_root<'py>(&self, py: Python<'py>, rhs: &Bound<'py, PyAny>, n: u32) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.nth_root(&from_py(rhs)?, n).map_err(err)?)
    }

    /// Number of solutions over the complex field: an int or `"infinite"`.
    fn count<'py>(&self, py: Python<'py>, poly: &Bound<'py, PyAny>, rhs: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let v = self.inner.count(&from_py(poly)?, &from_py(rhs)?).map_err(err)?;
        match &v {
            Value::Object(m) if m.contains_key("finite") => to_py(py, &m["finite"]),
            Value::String(s) if s == "empty" => to_py(py, &Value::from(0)),
            _ => to_py(py, &v),
        }
    }

    fn classify<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.classify(&from_py(x)?).map_err(err)?)
    }

    fn eigen<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.eigen(&from_py(x)?).map_err(err)?)
    }

    #[pyo3(signature = (kind, params, count = 10, seed = 0))]
    fn sample(&self, kind: &str, params: &Bound<'_, PyAny>, count: usize, seed: u64) -> PyResult<Vec<Octonion>> {
        let params = match from_py(params)? {
            Value::Array(ps) => ps,
            single => vec![single],
        };
        let v = self.inner.sample(kind, &params, count, seed).map_err(err)?;
        Ok(v["samples"].as_array().into_iter().flatten().map(|x| self.wrap(x.clone())).collect())
    }

    fn verify(&self, poly: &Bound<'_, PyAny>, rhs: &Bound<'_, PyAny>, candidate: &Bound<'_, PyAny>) -> PyResult<bool> {
        let v = self.inner.verify(&from_py(poly)?, &from_py(rhs)?, &from_py(candidate)?).map_err(err)?;
        Ok(v["solves"] == Value::Bool(true))
    }

    /// Exhaustive scan of a small finite field compared with `solve`.
    #[pyo3(signature = (poly, rhs, max_q = 9, jobs = None))]
    fn oracle<'py>(
        &self,
        py: Python<'py>,
        poly: &Bound<'py, PyAny>,
        rhs: &Bound<'py, PyAny>,
        max_q: u64,
        jobs: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let (p, c) = (from_py(poly)?, from_py(rhs)?);
        let (v, _) = py.detach(|| self.inner.oracle(&p, &c, max_q, jobs)).map_err(err)?;
        to_py(py, &v)
    }

    #[pyo3(signature = (trials = 1000, seed = 0))]
    fn fuzz<'py>(&self, py: Python<'py>, trials: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let (v, _) = py.detach(|| self.inner.fuzz(trials, seed));
        to_py(py, &v)
    }

    /// Automorphism word carrying `x` to its orbit representative.
    fn transporter<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.transporter(&from_py(x)?).map_err(err)?)
    }
}

/// A split octonion `[α, u1, u2, u3, v1, v2, v3, β]` over a [`Field`].
#[pyclass(frozen, module = "octosolve")]
pub struct Octonion {
    field: AnyField,
    coords: Value,
}

impl Octonion {
    fn same_field(&self, other: &Bound<'_, PyAny>) -> PyResult<Value> {
        if let Ok(o) = other.extract::<PyRef<'_, Octonion>>() {
            if o.field.spec() != self.field.spec() {
                return Err(OctosolveError::new_err(format!(
                    "octonions over {} and {} cannot be combined",
                    self.field.spec(),
                    o.field.spec()
                )));
            }
        }
        from_py(other)
    }

    fn wrap(&self, coords: Value) -> Octonion {
        Octonion { field: self.field.clone(), coords }
    }
}

#[pymethods]
impl Octonion {
    #[getter]
    fn coords<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.coords)
    }

    #[getter]
    fn field(&self) -> Field {
        Field { inner: self.field.clone() }
    }

    fn trace<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.field.invariants(&self.coords).map_err(err)?["trace"])
    }

    fn norm<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.field.invariants(&self.coords).map_err(err)?["norm"])
    }

    fn conj(&self) -> PyResult<Octonion> {
        Ok(self.wrap(self.field.invariants(&self.coords).map_err(err)?["conj"].clone()))
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.field.classify(&self.coords).map_err(err)?)
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Octonion> {
        let v = self.field.mul(&self.coords, &self.same_field(other)?).map_err(err)?;
        Ok(self.wrap(v["product"].clone()))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Octonion> {
        let v = self.field.mul(&self.same_field(other)?, &self.coords).map_err(err)?;
        Ok(self.wrap(v["product"].clone()))
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Octonion> {
        Ok(self.wrap(self.field.add(&self.coords, &self.same_field(other)?).map_err(err)?))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Octonion> {
        Ok(self.wrap(self.field.sub(&self.coords, &self.same_field(other)?).map_err(err)?))
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        self.same_field(other)
            .ok()
            .and_then(|o| self.field.equal(&self.coords, &o).ok())
            .unwrap_or(false)
    }

    fn __str__(&self) -> PyResult<String> {
        self.field.format_octonion(&self.coords).map_err(err)
    }

    fn __repr__(&self) -> PyResult<String> {
        Ok(format!("Octonion('{}', field='{}')", self.__str__()?, self.field.spec()))
    }
}

#[pymodule]
#[pyo3(name = "octosolve")]
fn octosolve_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Octonion>()?;
    m.add("OctosolveError", m.py().get_type::<OctosolveError>())?;
    Ok(())
}
