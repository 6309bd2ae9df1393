//! Coefficient fields.
//!
//! A [`Field`] is a context object: elements are plain values and every
//! operation goes through the field, which owns runtime parameters such as
//! the complex tolerance or the finite-field modulus. Three backends exist:
//! approximate complex numbers, exact rationals and exact finite fields
//! `F_{p^k}`.

mod aberth;
mod complex;
mod finite;
mod rational;
mod spec;

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde_json::Value;

use crate::error::Result;

pub use complex::{ComplexField, DEFAULT_EPSILON};
pub use finite::{FiniteField, Fq, EXHAUSTIVE_ROOT_LIMIT};
pub use rational::RationalField;
pub use spec::FieldSpec;

/// A root together with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Root<E> {
    pub value: E,
    pub multiplicity: usize,
}

/// Roots of a univariate polynomial that lie in the backend field.
#[derive(Debug, Clone, PartialEq)]
pub struct RootList<E> {
    /// Distinct roots in the field order.
    pub roots: Vec<Root<E>>,
    /// True iff the multiplicities add up to the degree.
    pub complete_over_field: bool,
    /// Numerical caveats raised while clustering approximate roots.
    pub warnings: Vec<String>,
}

impl<E> RootList<E> {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// The abstract field contract shared by every backend.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `Error::DivisionByZero` for zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Backend equality: exact, or tolerance-based for the complex backend.
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.zero())
    }

    /// Equality where `scale` bounds the magnitude of the quantities that
    /// produced `a` and `b`. Exact backends ignore the scale.
    fn eq_scaled(&self, a: &Self::Elem, b: &Self::Elem, _scale: f64) -> bool {
        self.eq(a, b)
    }

    /// Relative tolerance of approximate backends; 0 for exact ones.
    fn tolerance(&self) -> f64 {
        0.0
    }

    /// Scale whose `eq_scaled` tolerance covers the rounding error of a
    /// computation whose intermediate values reach `intermediate` in size.
    fn rounding_scale(&self, intermediate: f64) -> f64 {
        let eps = self.tolerance();
        if eps == 0.0 {
            0.0
        } else {
            64.0 * f64::EPSILON * intermediate / eps
        }
    }

    /// Absolute value used to build scales; exact backends return 0.
    fn magnitude(&self, _a: &Self::Elem) -> f64 {
        0.0
    }

    /// The fixed total order used for canonical labels and output ordering.
    fn cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// Roots lying in this field, with multiplicities. `coeffs` is ascending.
    fn roots(&self, coeffs: &[Self::Elem]) -> Result<RootList<Self::Elem>>;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// All elements in canonical order (finite fields only).
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn is_algebraically_closed(&self) -> bool {
        false
    }

    /// A field containing this one in which every quadratic over this field
    /// splits. Backends without such an extension return a copy of themselves.
    fn quadratic_closure(&self) -> Result<Self>;

    /// Image of `a` under the embedding into `ext = self.quadratic_closure()`.
    fn embed(&self, ext: &Self, a: &Self::Elem) -> Self::Elem;

    /// Inverse of [`Field::embed`] on its image.
    fn restrict(&self, ext: &Self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Some square root of `a` in this field, if one exists.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Square root in characteristic 2.
    fn sqrt_char2(&self, _a: &Self::Elem) -> Result<Self::Elem> {
        Err(crate::Error::WrongBackend("a field of characteristic 2"))
    }

    fn to_json(&self, a: &Self::Elem) -> Value;
    fn from_json(&self, v: &Value) -> Result<Self::Elem>;
    fn parse_literal(&self, s: &str) -> Result<Self::Elem>;
    fn format_literal(&self, a: &Self::Elem) -> String;
}

/// Evaluates an ascending coefficient list at `x` (Horner).
pub fn eval_poly<F: Field>(field: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// Divides by `(ξ - r)` and returns `(quotient, remainder)`.
pub fn synthetic_division<F: Field>(
    field: &F,
    coeffs: &[F::Elem],
    r: &F::Elem,
) -> (Vec<F::Elem>, F::Elem) {
    if coeffs.is_empty() {
        return (Vec::new(), field.zero());
    }
    let n = coeffs.len() - 1;
    let mut quotient = vec![field.zero(); n];
    let mut carry = coeffs[n].clone();
    for i in (0..n).rev() {
        quotient[i] = carry.clone();
        carry = field.add(&coeffs[i], &field.mul(&carry, r));
    }
    (quotient, carry)
}

/// Multiplicity of an exact root `r`, by repeated synthetic division.
pub(crate) fn exact_multiplicity<F: Field>(field: &F, coeffs: &[F::Elem], r: &F::Elem) -> usize {
    let mut current = coeffs.to_vec();
    let mut k = 0;
    while current.len() > 1 {
        let (q, rem) = synthetic_division(field, &current, r);
        if !field.is_zero(&rem) {
            break;
        }
        k += 1;
        current = q;
    }
    k
}

/// Strips trailing (high-degree) zeros.
pub(crate) fn trim<F: Field>(field: &F, coeffs: &[F::Elem]) -> Vec<F::Elem> {
    let mut v = coeffs.to_vec();
    while v.last().is_some_and(|c| field.is_zero(c)) {
        v.pop();
    }
    v
}
