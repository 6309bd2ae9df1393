#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use octosolve::field::Fq;
use octosolve::{ComplexField, Field, FiniteField, Octonion, Poly, RationalField};
use proptest::prelude::*;

pub fn complex() -> ComplexField {
    ComplexField::new(1e-9).unwrap()
}

pub fn finite(p: u64, k: u32) -> FiniteField {
    FiniteField::new(p, k, None).unwrap()
}

pub fn complex_elem() -> impl Strategy<Value = Complex64> + Clone {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

pub fn rational_elem() -> impl Strategy<Value = BigRational> + Clone {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn finite_elem(f: &FiniteField) -> impl Strategy<Value = Fq> + Clone {
    (0..f.size().unwrap() as u32).prop_map(Fq)
}

pub fn octonion<S>(elem: S) -> impl Strategy<Value = Octonion<S::Value>>
where
    S: Strategy + Clone,
    S::Value: Clone + std::fmt::Debug,
{
    prop::array::uniform8(elem).prop_map(Octonion::from_coords)
}

/// Coefficient vectors of the given degree range; the leading one may be
/// zero, so callers trim with [`Poly::new`].
pub fn coeffs<S>(elem: S, degrees: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<S::Value>>
where
    S: Strategy + Clone,
    S::Value: std::fmt::Debug,
{
    degrees.prop_flat_map(move |d| prop::collection::vec(elem.clone(), d + 1))
}

/// Coordinate-wise comparison at a scale covering the rounding of a
/// computation whose intermediates reach `intermediate`.
pub fn close<F: Field>(f: &F, a: &Octonion<F::Elem>, b: &Octonion<F::Elem>, intermediate: f64) -> bool {
    let scale = a.magnitude(f).max(b.magnitude(f)).max(f.rounding_scale(intermediate));
    a.eq_scaled(f, b, scale)
}

pub fn close_elem<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, intermediate: f64) -> bool {
    let scale = f.magnitude(a).max(f.magnitude(b)).max(f.rounding_scale(intermediate));
    f.eq_scaled(a, b, scale)
}

pub fn poly<F: Field>(f: &F, c: Vec<F::Elem>) -> Poly<F::Elem> {
    Poly::new(f, c)
}

pub fn rationals() -> RationalField {
    RationalField
}
