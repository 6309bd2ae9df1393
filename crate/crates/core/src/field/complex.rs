use std::cmp::Ordering;

use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};

use super::{aberth, trim, Field, FieldSpec, Root, RootList};
use crate::error::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Binary64 complex numbers standing in for an algebraically closed field
/// of characteristic zero.
///
/// Equality is scale-aware: `a ≈ b` iff `|a - b| ≤ ε·max(1, |a|, |b|)`.
#[derive(Debug, Clone, Copy)]
pub struct ComplexField {
    eps: f64,
}

impl Default for ComplexField {
    fn default() -> Self {
        Self { eps: DEFAULT_EPSILON }
    }
}

impl ComplexField {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must lie in (0, 1), got {eps}"
            )));
        }
        Ok(Self { eps })
    }

    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    fn close(&self, x: f64, y: f64, scale: f64) -> bool {
        (x - y).abs() <= self.eps * scale
    }
}

fn clean(x: f64) -> f64 {
    // -0.0 prints as "-0.0"; keep output canonical
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn parse_real(s: &str, whole: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::parse(whole, format!("`{s}` is not a real number")))?;
    if !v.is_finite() {
        return Err(Error::parse(whole, "non-finite value"));
    }
    Ok(v)
}

fn parse_imag(s: &str, whole: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s, whole),
    }
}

impl Field for ComplexField {
    type Elem = Complex64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Complex
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(&self, n: i64) -> Complex64 {
        Complex64::new(n as f64, 0.0)
    }

    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }

    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }

    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }

    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }

    fn inv(&self, a: &Complex64) -> Result<Complex64> {
        if a.norm() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(a.inv())
    }

    fn eq(&self, a: &Complex64, b: &Complex64) -> bool {
        (a - b).norm() <= self.eps * 1f64.max(a.norm()).max(b.norm())
    }

    fn eq_scaled(&self, a: &Complex64, b: &Complex64, scale: f64) -> bool {
        (a - b).norm() <= self.eps * 1f64.max(a.norm()).max(b.norm()).max(scale)
    }

    fn tolerance(&self) -> f64 {
        self.eps
    }

    fn magnitude(&self, a: &Complex64) -> f64 {
        a.norm()
    }

    /// Lexicographic on (re, im), with components that agree to tolerance
    /// treated as equal.
    fn cmp(&self, a: &Complex64, b: &Complex64) -> Ordering {
        let scale = 1f64.max(a.norm()).max(b.norm());
        if !self.close(a.re, b.re, scale) {
            return a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal);
        }
        if !self.close(a.im, b.im, scale) {
            return a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal);
        }
        Ordering::Equal
    }

    fn roots(&self, coeffs: &[Complex64]) -> Result<RootList<Complex64>> {
        let coeffs = trim(self, coeffs);
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let zero_mult = coeffs.iter().take_while(|c| self.is_zero(c)).count();
        let mut list = if coeffs.len() - zero_mult > 1 {
            aberth::find_roots(&coeffs[zero_mult..], self.eps)?
        } else {
            RootList {
                roots: Vec::new(),
                complete_over_field: true,
                warnings: Vec::new(),
            }
        };
        if zero_mult > 0 {
            match list.roots.iter_mut().find(|r| self.is_zero(&r.value)) {
                Some(r) => {
                    r.value = self.zero();
                    r.multiplicity += zero_mult;
                }
                None => list.roots.push(Root {
                    value: self.zero(),
                    multiplicity: zero_mult,
                }),
            }
        }
        list.roots.sort_by(|a, b| self.cmp(&a.value, &b.value));
        Ok(list)
    }

    fn sqrt(&self, a: &Complex64) -> Option<Complex64> {
        Some(a.sqrt())
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        Complex64::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0))
    }

    fn elements(&self) -> Option<Vec<Complex64>> {
        None
    }

    fn is_algebraically_closed(&self) -> bool {
        true
    }

    fn quadratic_closure(&self) -> Result<Self> {
        Ok(*self)
    }

    fn embed(&self, _ext: &Self, a: &Complex64) -> Complex64 {
        *a
    }

    fn restrict(&self, _ext: &Self, a: &Complex64) -> Option<Complex64> {
        Some(*a)
    }

    fn to_json(&self, a: &Complex64) -> Value {
        json!([clean(a.re), clean(a.im)])
    }

    fn from_json(&self, v: &Value) -> Result<Complex64> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .map(|re| Complex64::new(re, 0.0))
                .ok_or_else(|| Error::parse(v.to_string(), "not a finite number")),
            Value::Array(parts) if parts.len() == 2 => {
                let get = |x: &Value| {
                    x.as_f64()
                        .ok_or_else(|| Error::parse(v.to_string(), "expected [re, im]"))
                };
                Ok(Complex64::new(get(&parts[0])?, get(&parts[1])?))
            }
            Value::String(s) => self.parse_literal(s),
            _ => Err(Error::parse(v.to_string(), "expected a number, [re, im] or a string")),
        }
    }

    fn parse_literal(&self, s: &str) -> Result<Complex64> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::parse(s, "empty complex literal"));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Complex64::new(parse_real(&t, s)?, 0.0));
        };
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&i| {
            (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E')
        });
        match split {
            Some(i) => Ok(Complex64::new(
                parse_real(&body[..i], s)?,
                parse_imag(&body[i..], s)?,
            )),
            None => Ok(Complex64::new(0.0, parse_imag(body, s)?)),
        }
    }

    fn format_literal(&self, a: &Complex64) -> String {
        let (re, im) = (clean(a.re), clean(a.im));
        if im == 0.0 {
            format!("{re}")
        } else if im < 0.0 {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}
