use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::Value;

use super::{exact_multiplicity, trim, Field, FieldSpec, Root, RootList};
use crate::error::{Error, Result};

/// Largest |integer| whose divisors the rational-root search will enumerate.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Exact rationals. Used as a sanity backend: arithmetic is exact but the
/// field is not closed, so root lists are usually incomplete.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|v| *v <= DIVISOR_LIMIT)
        .ok_or_else(|| Error::InvalidArgument(format!("coefficient {n} too large for rational root search")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

impl Field for RationalField {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn eq(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn cmp(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }

    /// Rational-root theorem search. Complete only when every root is rational.
    fn roots(&self, coeffs: &[BigRational]) -> Result<RootList<BigRational>> {
        let coeffs = trim(self, coeffs);
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let degree = coeffs.len() - 1;
        let denom_lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let zero_mult = ints.iter().take_while(|c| c.is_zero()).count();
        let mut roots = Vec::new();
        if zero_mult > 0 {
            roots.push(Root {
                value: self.zero(),
                multiplicity: zero_mult,
            });
        }
        let rest = &ints[zero_mult..];
        if rest.len() > 1 {
            let rest_q: Vec<BigRational> =
                rest.iter().cloned().map(BigRational::from_integer).collect();
            let numerators = divisors(&rest[0])?;
            let denominators = divisors(rest.last().expect("nonempty"))?;
            let mut candidates: Vec<BigRational> = Vec::new();
            for p in &numerators {
                for q in &denominators {
                    let r = BigRational::new(p.clone(), q.clone());
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                let k = exact_multiplicity(self, &rest_q, &r);
                if k > 0 {
                    roots.push(Root { value: r, multiplicity: k });
                }
            }
        }
        roots.sort_by(|a, b| a.value.cmp(&b.value));
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        Ok(RootList {
            roots,
            complete_over_field: total == degree,
            warnings: Vec::new(),
        })
    }

    /// Exact square root when numerator and denominator are perfect squares.
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let n = a.numer().sqrt();
        let d = a.denom().sqrt();
        (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-6..=6);
        let den: i64 = rng.gen_range(1..=4);
        BigRational::new(num.into(), den.into())
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn quadratic_closure(&self) -> Result<Self> {
        Ok(*self)
    }

    fn embed(&self, _ext: &Self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn restrict(&self, _ext: &Self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn to_json(&self, a: &BigRational) -> Value {
        if a.is_integer() {
            if let Some(n) = a.to_integer().to_i64() {
                return Value::from(n);
            }
        }
        Value::String(self.format_literal(a))
    }

    fn from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|n| self.from_i64(n))
                .ok_or_else(|| Error::parse(v.to_string(), "rational JSON numbers must be integers")),
            Value::String(s) => self.parse_literal(s),
            _ => Err(Error::parse(v.to_string(), "expected an integer or \"n/d\" string")),
        }
    }

    fn parse_literal(&self, s: &str) -> Result<BigRational> {
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::parse(s, "numerator is not an integer"))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::parse(s, "denominator is not an integer"))?;
        if den.is_zero() {
            return Err(Error::parse(s, "zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    fn format_literal(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let f = RationalField;
        // (ξ - 1/2)^2 (ξ + 3) = ξ^3 + 2ξ^2 - 11/4 ξ + 3/4
        let coeffs = vec![q(3, 4), q(-11, 4), q(2, 1), q(1, 1)];
        let list = f.roots(&coeffs).unwrap();
        assert!(list.complete_over_field);
        assert_eq!(
            list.roots,
            vec![
                Root { value: q(-3, 1), multiplicity: 1 },
                Root { value: q(1, 2), multiplicity: 2 },
            ]
        );
    }

    #[test]
    fn irrational_roots_flag_incomplete() {
        let f = RationalField;
        let list = f.roots(&[q(-2, 1), q(0, 1), q(1, 1)]).unwrap();
        assert!(list.roots.is_empty());
        assert!(!list.complete_over_field);
    }

    #[test]
    fn literals() {
        let f = RationalField;
        assert_eq!(f.parse_literal("6/4").unwrap(), q(3, 2));
        assert_eq!(f.format_literal(&q(3, 2)), "3/2");
        assert_eq!(f.to_json(&q(4, 2)), Value::from(2));
        assert!(f.parse_literal("1/0").is_err());
        assert_eq!(f.inv(&q(0, 1)), Err(Error::DivisionByZero));
    }
}
