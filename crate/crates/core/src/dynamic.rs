//! Backend selected at runtime, with JSON in and JSON out. Shared by the
//! command line and the Python bindings.
//!
//! Octonion and polynomial operands are JSON values: either an array
//! (`[α, u1, u2, u3, v1, v2, v3, β]`, ascending coefficients) or a string
//! in the comma-separated literal syntax.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::{ComplexField, Field, FieldSpec, FiniteField, RationalField};
use crate::g2::{self, OrbitLabel};
use crate::octonion::Octonion;
use crate::oracle;
use crate::polyeq::{self, label_json, Poly};

/// A working field chosen from a [`FieldSpec`].
#[derive(Debug, Clone)]
pub enum AnyField {
    Complex(ComplexField),
    Rational(RationalField),
    Finite(FiniteField),
}

macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnyField::Complex($f) => $body,
            AnyField::Rational($f) => $body,
            AnyField::Finite($f) => $body,
        }
    };
}

impl AnyField {
    /// `epsilon` applies to `C` only. `closure_degree = d > 1` replaces a
    /// finite field `F_{p^k}` by `F_{p^{kd}}` with its least modulus.
    pub fn new(spec: &FieldSpec, epsilon: Option<f64>, closure_degree: u32) -> Result<Self> {
        if closure_degree == 0 {
            return Err(Error::InvalidArgument("closure degree must be at least 1".into()));
        }
        if epsilon.is_some() && *spec != FieldSpec::Complex {
            return Err(Error::InvalidArgument(format!("epsilon applies to the complex field only, not {spec}")));
        }
        match spec {
            FieldSpec::Complex | FieldSpec::Rational if closure_degree > 1 => Err(Error::InvalidArgument(
                format!("closure degree applies to finite fields only, not {spec}"),
            )),
            FieldSpec::Complex => Ok(AnyField::Complex(match epsilon {
                Some(e) => ComplexField::new(e)?,
                None => ComplexField::default(),
            })),
            FieldSpec::Rational => Ok(AnyField::Rational(RationalField)),
            FieldSpec::Prime(_) | FieldSpec::Extension { .. } if closure_degree == 1 => {
                Ok(AnyField::Finite(FiniteField::from_spec(spec)?))
            }
            FieldSpec::Prime(p) => Ok(AnyField::Finite(FiniteField::new(*p, closure_degree, None)?)),
            FieldSpec::Extension { p, k, modulus: None } => {
                let degree = k
                    .checked_mul(closure_degree)
                    .ok_or_else(|| Error::InvalidArgument("extension degree overflows".into()))?;
                Ok(AnyField::Finite(FiniteField::new(*p, degree, None)?))
            }
            FieldSpec::Extension { modulus: Some(_), .. } => Err(Error::InvalidArgument(
                "closure degree cannot be combined with an explicit modulus".into(),
            )),
        }
    }

    pub fn parse(spec: &str, epsilon: Option<f64>, closure_degree: u32) -> Result<Self> {
        Self::new(&spec.parse()?, epsilon, closure_degree)
    }

    pub fn spec(&self) -> FieldSpec {
        with_field!(self, f => f.spec())
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value> {
        with_field!(self, f => {
            let p = oct(f, a)?.mul(f, &oct(f, b)?);
            Ok(json!({ "product": p.to_json(f) }))
        })
    }

    pub fn eval(&self, poly: &Value, x: &Value) -> Result<Value> {
        with_field!(self, f => Ok(json!({ "value": pol(f, poly)?.evaluate(f, &oct(f, x)?).to_json(f) })))
    }

    pub fn solve(&self, poly: &Value, rhs: &Value) -> Result<Value> {
        with_field!(self, f => polyeq::solve(f, &pol(f, poly)?, &oct(f, rhs)?)?.to_json(f))
    }

    pub fn nth_root(&self, rhs: &Value, n: u32) -> Result<Value> {
        with_field!(self, f => polyeq::nth_root(f, &oct(f, rhs)?, n)?.to_json(f))
    }

    /// Cardinality with the counting bounds checked (complex field only).
    pub fn count(&self, poly: &Value, rhs: &Value) -> Result<Value> {
        with_field!(self, f => {
            let c = polyeq::count_solutions(f, &pol(f, poly)?, &oct(f, rhs)?)?;
            Ok(serde_json::to_value(c).expect("serialisable"))
        })
    }

    pub fn classify(&self, x: &Value) -> Result<Value> {
        with_field!(self, f => {
            let k = f.quadratic_closure()?;
            let label = g2::classify(f, &oct(f, x)?)?;
            Ok(labelled(&k, label_json(f, &k, &label)))
        })
    }

    pub fn eigen(&self, x: &Value) -> Result<Value> {
        with_field!(self, f => {
            let k = f.quadratic_closure()?;
            let e = g2::eigenvalues(f, &oct(f, x)?)?;
            let out = |v: &_| f.restrict(&k, v).map(|r| f.to_json(&r)).unwrap_or_else(|| k.to_json(v));
            let mut obj = json!({
                "lambda1": out(&e.lambda1),
                "lambda2": out(&e.lambda2),
                "in_base_field": e.in_base_field,
            });
            if !e.in_base_field {
                obj["label_field"] = json!(k.spec().to_string());
            }
            Ok(obj)
        })
    }

    /// Orbit samples for a label with parameters in the working field.
    pub fn sample(&self, kind: &str, params: &[Value], count: usize, seed: u64) -> Result<Value> {
        with_field!(self, f => {
            let params = params.iter().map(|p| f.from_json(p)).collect::<Result<Vec<_>>>()?;
            let label = OrbitLabel::from_parts(f, kind, params)?;
            let samples = g2::sample_orbit(f, &label, count, seed)?;
            Ok(json!({
                "label": label.to_json(f),
                "samples": samples.iter().map(|x| x.to_json(f)).collect::<Vec<_>>(),
            }))
        })
    }

    pub fn verify(&self, poly: &Value, rhs: &Value, candidate: &Value) -> Result<Value> {
        with_field!(self, f => {
            let (p, c, x) = (pol(f, poly)?, oct(f, rhs)?, oct(f, candidate)?);
            Ok(json!({
                "solves": polyeq::satisfies(f, &p, &c, &x),
                "value": p.evaluate(f, &x).to_json(f),
            }))
        })
    }

    /// Exhaustive scan compared against the solver. `jobs` bounds the
    /// number of worker threads.
    pub fn oracle(&self, poly: &Value, rhs: &Value, max_q: u64, jobs: Option<usize>) -> Result<(Value, bool)> {
        with_field!(self, f => {
            let (p, c) = (pol(f, poly)?, oct(f, rhs)?);
            let run = || oracle::enumerate_solutions(f, &p, &c, max_q);
            let report = match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::InvalidArgument(format!("cannot start {n} worker threads: {e}")))?
                    .install(run)?,
                None => run()?,
            };
            let sol = polyeq::solve(f, &p, &c)?;
            let cmp = oracle::compare(f, &report, &sol)?;
            Ok((
                json!({
                    "report": report.to_json(f),
                    "solution": sol.to_json(f)?,
                    "comparison": cmp.to_json(f),
                }),
                cmp.matches,
            ))
        })
    }

    pub fn fuzz(&self, trials: usize, seed: u64) -> (Value, bool) {
        with_field!(self, f => {
            let r = oracle::fuzz_identities(f, trials, seed);
            (r.to_json(), r.passed())
        })
    }

    pub fn transporter(&self, x: &Value) -> Result<Value> {
        with_field!(self, f => {
            let (a, canonical) = g2::transporter(f, &oct(f, x)?)?;
            let mut obj = a.to_json(f);
            obj["canonical"] = canonical.to_json(f);
            Ok(obj)
        })
    }

    /// Normalised JSON form of an octonion operand.
    pub fn octonion(&self, x: &Value) -> Result<Value> {
        with_field!(self, f => Ok(oct(f, x)?.to_json(f)))
    }

    /// Trace, norm and conjugate of an octonion operand.
    pub fn invariants(&self, x: &Value) -> Result<Value> {
        with_field!(self, f => {
            let a = oct(f, x)?;
            Ok(json!({
                "trace": f.to_json(&a.trace(f)),
                "norm": f.to_json(&a.norm(f)),
                "conj": a.conj(f).to_json(f),
            }))
        })
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        with_field!(self, f => Ok(oct(f, a)?.add(f, &oct(f, b)?).to_json(f)))
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Result<Value> {
        with_field!(self, f => Ok(oct(f, a)?.sub(f, &oct(f, b)?).to_json(f)))
    }

    pub fn equal(&self, a: &Value, b: &Value) -> Result<bool> {
        with_field!(self, f => Ok(oct(f, a)?.eq(f, &oct(f, b)?)))
    }

    /// Octonion in the comma-separated literal syntax.
    pub fn format_octonion(&self, x: &Value) -> Result<String> {
        with_field!(self, f => Ok(oct(f, x)?.format(f)))
    }
}

fn labelled<F: Field>(k: &F, (mut v, inside): (Value, bool)) -> Value {
    if !inside {
        v["label_field"] = json!(k.spec().to_string());
    }
    v
}

fn oct<F: Field>(f: &F, v: &Value) -> Result<Octonion<F::Elem>> {
    match v {
        Value::String(s) => Octonion::parse(f, s),
        _ => Octonion::from_json(f, v),
    }
}

fn pol<F: Field>(f: &F, v: &Value) -> Result<Poly<F::Elem>> {
    match v {
        Value::String(s) => Poly::parse(f, s),
        _ => Poly::from_json(f, v),
    }
}

/// Adds the top-level `"schema": 1` tag to an object.
pub fn with_schema(v: Value) -> Value {
    let mut obj = match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    obj.insert("schema".into(), json!(1));
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_example() {
        let f = AnyField::parse("Q", None, 1).unwrap();
        assert_eq!(f.classify(&json!("1,0,0,0,0,0,0,4")).unwrap(), json!({"kind": "O2", "params": [1, 4]}));
    }

    #[test]
    fn closure_degree_enlarges_finite_fields() {
        assert_eq!(AnyField::parse("F:2", None, 3).unwrap().spec().to_string(), "F:2^3");
        assert_eq!(AnyField::parse("F:3^2", None, 2).unwrap().spec().to_string(), "F:3^4");
        assert!(AnyField::parse("C", None, 2).is_err());
        assert!(AnyField::parse("F:5", Some(1e-6), 1).is_err());
        assert!(AnyField::parse("F:4", None, 1).is_err());
    }

    #[test]
    fn verify_example() {
        let f = AnyField::parse("C", None, 1).unwrap();
        let v = f.verify(&json!("0,0,1"), &json!("1,1,0,0,0,0,0,1"), &json!("1,0.5,0,0,0,0,0,1")).unwrap();
        assert_eq!(v["solves"], json!(true));
    }

    #[test]
    fn eigenvalues_outside_the_field_name_the_closure() {
        let f = AnyField::parse("F:3", None, 1).unwrap();
        let v = f.eigen(&json!("0,1,0,0,2,0,0,0")).unwrap();
        assert_eq!(v["in_base_field"], json!(false));
        assert_eq!(v["label_field"], json!("F:3^2"));
    }
}
