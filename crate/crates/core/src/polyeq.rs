//! Polynomial equations `f(x) = c` with scalar coefficients.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::{eval_poly, trim, Field, FieldSpec};
use crate::g2::{classify_split, lift, orbit_member_split, sample_orbit, OrbitLabel};
use crate::octonion::Octonion;

/// A univariate polynomial with ascending coefficients and no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, coeffs: Vec<E>) -> Self {
        Self { coeffs: trim(f, &coeffs) }
    }

    /// `ξ^n`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut coeffs = vec![f.zero(); n + 1];
        coeffs[n] = f.one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_scalar<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        eval_poly(f, &self.coeffs, x)
    }

    /// `Σ α_i x^i` with `α_0` entering as `α_0·1`.
    pub fn evaluate<F: Field<Elem = E>>(&self, f: &F, x: &Octonion<E>) -> Octonion<E> {
        let mut acc = Octonion::zero(f);
        let mut power = Octonion::one(f);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.mul(f, x);
            }
            acc = acc.add(f, &power.scale(f, a));
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(&f.from_i64(i as i64), a))
            .collect();
        Self::new(f, coeffs)
    }

    /// `f(α)·1 + f′(α)·β·u1`, the closed form of `f(α·1 + β·u1)`.
    pub fn lemma_eval<F: Field<Elem = E>>(&self, f: &F, alpha: &E, beta: &E) -> Octonion<E> {
        let mut x = Octonion::scalar(f, self.eval_scalar(f, alpha));
        x.u[0] = f.mul(&self.derivative(f).eval_scalar(f, alpha), beta);
        x
    }

    /// Image under the embedding of `f` into `k`.
    pub fn lift<F: Field<Elem = E>>(&self, f: &F, k: &F) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| f.embed(k, c)).collect() }
    }

    /// Bound on `|f(x)|`-sized rounding for an octonion of magnitude `m`.
    fn eval_size<F: Field<Elem = E>>(&self, f: &F, m: f64) -> f64 {
        let m = 4.0 * m.max(1.0);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| f.magnitude(a) * (i + 1) as f64 * m.powi(i as i32))
            .sum()
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        Value::Array(self.coeffs.iter().map(|c| f.to_json(c)).collect())
    }

    pub fn from_json<F: Field<Elem = E>>(f: &F, v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::parse(v.to_string(), "a polynomial is an ascending coefficient array"))?;
        let coeffs = items.iter().map(|c| f.from_json(c)).collect::<Result<_>>()?;
        Ok(Self::new(f, coeffs))
    }

    /// Parses comma-separated ascending coefficients, e.g. `0,0,1` for `ξ²`.
    pub fn parse<F: Field<Elem = E>>(f: &F, s: &str) -> Result<Self> {
        let coeffs = s.split(',').map(|c| f.parse_literal(c)).collect::<Result<_>>()?;
        Ok(Self::new(f, coeffs))
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        self.coeffs.iter().map(|c| f.format_literal(c)).collect::<Vec<_>>().join(",")
    }
}

/// Size of a solution set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cardinality {
    Empty,
    Finite(usize),
    Infinite,
}

/// How much of the solution set a [`SolutionSet`] is known to describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// Every solution over an algebraically closed field.
    Complete,
    /// Every solution with coordinates in the working field.
    CompleteOverWorkingField,
    /// Some univariate equation did not split; solutions may be missing.
    Partial,
}

/// Solutions of `f(x) = c`: isolated points plus whole G2-orbits.
///
/// Points have coordinates in the working field. Orbit parameters live in
/// `label_field`, the quadratic closure of the working field, because an
/// orbit of working-field octonions can have conjugate eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet<E> {
    pub points: Vec<Octonion<E>>,
    pub orbits: Vec<OrbitLabel<E>>,
    pub cardinality: Cardinality,
    pub completeness: Completeness,
    pub warnings: Vec<String>,
    /// Orbit label of the normalised right-hand side.
    pub rhs_label: OrbitLabel<E>,
    pub label_field: FieldSpec,
}

impl<E: Clone> SolutionSet<E> {
    /// True iff `x` is one of the points or lies in one of the orbits.
    pub fn contains<F: Field<Elem = E>>(&self, f: &F, x: &Octonion<E>) -> Result<bool> {
        let scale = x.magnitude(f).max(1.0);
        if self.points.iter().any(|p| p.eq_scaled(f, x, scale)) {
            return Ok(true);
        }
        if self.orbits.is_empty() {
            return Ok(false);
        }
        let k = f.quadratic_closure()?;
        let xk = lift(f, &k, x);
        Ok(self.orbits.iter().any(|l| orbit_member_split(&k, l, &xk)))
    }

    /// Soundness check: every point, and `samples` seeded members of every
    /// orbit, satisfy the equation. Returns a description of each failure.
    pub fn violations<F: Field<Elem = E>>(
        &self,
        f: &F,
        poly: &Poly<E>,
        c: &Octonion<E>,
        samples: usize,
        seed: u64,
    ) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for x in &self.points {
            if !satisfies(f, poly, c, x) {
                out.push(format!("point {} does not satisfy the equation", x.format(f)));
            }
        }
        if !self.orbits.is_empty() {
            let k = f.quadratic_closure()?;
            let pk = poly.lift(f, &k);
            let ck = lift(f, &k, c);
            for (i, label) in self.orbits.iter().enumerate() {
                for x in sample_orbit(&k, label, samples, seed.wrapping_add(i as u64))? {
                    if !satisfies(&k, &pk, &ck, &x) {
                        out.push(format!(
                            "orbit {} member {} does not satisfy the equation",
                            label.to_json(&k),
                            x.format(&k)
                        ));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `{ cardinality, completeness, points, orbits, warnings }`, plus
    /// `label_field` when some orbit parameter lies outside the working field.
    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Result<Value> {
        let k = f.quadratic_closure()?;
        let mut outside = false;
        let orbits: Vec<Value> = self
            .orbits
            .iter()
            .map(|l| {
                let (json, inside) = label_json(f, &k, l);
                outside |= !inside;
                json
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("cardinality".into(), serde_json::to_value(self.cardinality).expect("serialisable"));
        obj.insert("completeness".into(), serde_json::to_value(self.completeness).expect("serialisable"));
        obj.insert("points".into(), Value::Array(self.points.iter().map(|p| p.to_json(f)).collect()));
        obj.insert("orbits".into(), Value::Array(orbits));
        obj.insert("warnings".into(), json!(self.warnings));
        if outside {
            obj.insert("label_field".into(), json!(self.label_field.to_string()));
        }
        Ok(Value::Object(obj))
    }
}

/// JSON for a closure-valued label, with parameters written in the working
/// field where possible. The flag is false if some parameter is not.
pub fn label_json<F: Field>(f: &F, k: &F, label: &OrbitLabel<F::Elem>) -> (Value, bool) {
    let mut inside = true;
    let params: Vec<Value> = label
        .params()
        .iter()
        .map(|p| match f.restrict(k, p) {
            Some(q) => f.to_json(&q),
            None => {
                inside = false;
                k.to_json(p)
            }
        })
        .collect();
    (json!({ "kind": label.kind(), "params": params }), inside)
}

/// `f(x) ≈ c` with a tolerance covering the rounding of the evaluation.
pub fn satisfies<F: Field>(f: &F, poly: &Poly<F::Elem>, c: &Octonion<F::Elem>, x: &Octonion<F::Elem>) -> bool {
    let y = poly.evaluate(f, x);
    let scale = c.magnitude(f).max(f.rounding_scale(poly.eval_size(f, x.magnitude(f))));
    y.eq_scaled(f, c, scale)
}

/// Splits off the constant term: `f(x) = c` becomes `g(x) = c − α_0·1`.
fn normalize<F: Field>(
    f: &F,
    poly: &Poly<F::Elem>,
    c: &Octonion<F::Elem>,
) -> Result<(Poly<F::Elem>, Octonion<F::Elem>)> {
    let Some(degree) = poly.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    if degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut coeffs = poly.coeffs.clone();
    let a0 = std::mem::replace(&mut coeffs[0], f.zero());
    Ok((Poly { coeffs }, c.sub(f, &Octonion::scalar(f, a0))))
}

#[derive(Debug, Clone)]
struct RootInfo<E> {
    value: E,
    multiple: bool,
}

struct Roots<E> {
    roots: Vec<RootInfo<E>>,
    complete: bool,
}

/// Roots of `g(ξ) = γ` in `k`, each marked simple or multiple.
fn roots_of<F: Field>(k: &F, g: &Poly<F::Elem>, gamma: &F::Elem, warnings: &mut Vec<String>) -> Result<Roots<F::Elem>> {
    let mut coeffs = g.coeffs.clone();
    coeffs[0] = k.sub(&coeffs[0], gamma);
    let list = k.roots(&coeffs)?;
    warnings.extend(list.warnings.iter().cloned());
    let dg = g.derivative(k);
    let eps = k.tolerance();
    let roots = list
        .roots
        .into_iter()
        .map(|r| {
            let d = dg.eval_scalar(k, &r.value);
            let mut multiple = r.multiplicity >= 2 || k.is_zero(&d) && eps == 0.0;
            if eps > 0.0 {
                // compare |g′(ξ)| with the size of the terms that produced it
                let x = k.magnitude(&r.value);
                let size = dg
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| k.magnitude(a) * x.powi(i as i32))
                    .sum::<f64>()
                    .max(1.0);
                let dm = k.magnitude(&d);
                if r.multiplicity == 1 && dm <= eps * size {
                    multiple = true;
                    warnings.push(format!(
                        "root {} is numerically simple but |f'| = {dm:.3e} is below tolerance; treated as multiple",
                        k.format_literal(&r.value)
                    ));
                } else if r.multiplicity == 1 && dm <= eps.sqrt() * size {
                    warnings.push(format!(
                        "root {} is simple with small |f'| = {dm:.3e}; the simple/multiple split is numerically fragile",
                        k.format_literal(&r.value)
                    ));
                }
            }
            RootInfo { value: r.value, multiple }
        })
        .collect();
    Ok(Roots { roots, complete: list.complete_over_field })
}

/// Candidate solutions over the closure, before restriction to `f`.
struct Raw<E> {
    points: Vec<Octonion<E>>,
    orbits: Vec<OrbitLabel<E>>,
    complete: bool,
    warnings: Vec<String>,
    rhs_label: OrbitLabel<E>,
}

fn finish<F: Field>(f: &F, k: &F, raw: Raw<F::Elem>) -> SolutionSet<F::Elem> {
    let mut points: Vec<Octonion<F::Elem>> = raw
        .points
        .iter()
        .filter_map(|p| {
            let coords: Option<Vec<F::Elem>> = p.coords().iter().map(|c| f.restrict(k, c)).collect();
            coords.and_then(|c| <[F::Elem; 8]>::try_from(c).ok()).map(Octonion::from_coords)
        })
        .collect();
    points.sort_by(|a, b| a.cmp(f, b));
    let in_f = |x: &F::Elem| f.restrict(k, x).is_some();
    let mut orbits: Vec<OrbitLabel<F::Elem>> = raw
        .orbits
        .into_iter()
        .filter(|l| match l {
            OrbitLabel::Scalar(a) | OrbitLabel::O3(a) => in_f(a),
            // conjugate eigenvalues still give working-field points
            OrbitLabel::O2(a, b) => {
                (in_f(a) && in_f(b))
                    || f.size().is_some_and(|q| k.eq(&k.pow(a, q), b))
            }
        })
        .collect();
    orbits.sort_by(|a, b| a.cmp(k, b));
    let cardinality = if !orbits.is_empty() {
        Cardinality::Infinite
    } else if points.is_empty() {
        Cardinality::Empty
    } else {
        Cardinality::Finite(points.len())
    };
    let mut warnings = raw.warnings;
    let completeness = if !raw.complete {
        warnings.push(format!(
            "some univariate equation does not split over {}; solutions may be missing",
            k.spec()
        ));
        Completeness::Partial
    } else if f.is_algebraically_closed() {
        Completeness::Complete
    } else {
        Completeness::CompleteOverWorkingField
    };
    SolutionSet {
        points,
        orbits,
        cardinality,
        completeness,
        warnings,
        rhs_label: raw.rhs_label,
        label_field: k.spec(),
    }
}

/// The idempotent `b = (c − γ2·1)/(γ1 − γ2)` of an O2 right-hand side.
fn o2_idempotent<F: Field>(k: &F, c: &Octonion<F::Elem>, g1: &F::Elem, g2: &F::Elem) -> Result<Octonion<F::Elem>> {
    let d = k.inv(&k.sub(g1, g2))?;
    Ok(c.sub(k, &Octonion::scalar(k, g2.clone())).scale(k, &d))
}

fn case2_points<F: Field>(
    k: &F,
    b: &Octonion<F::Elem>,
    r1: &Roots<F::Elem>,
    r2: &Roots<F::Elem>,
) -> Vec<Octonion<F::Elem>> {
    let rest = Octonion::one(k).sub(k, b);
    let mut points = Vec::new();
    for x1 in &r1.roots {
        for x2 in &r2.roots {
            points.push(b.scale(k, &x1.value).add(k, &rest.scale(k, &x2.value)));
        }
    }
    points
}

fn case1_orbits<F: Field>(
    k: &F,
    roots: &Roots<F::Elem>,
    o3: impl Fn(&RootInfo<F::Elem>) -> bool,
) -> Result<Vec<OrbitLabel<F::Elem>>> {
    let mut orbits = Vec::new();
    for (i, a) in roots.roots.iter().enumerate() {
        for b in &roots.roots[i + 1..] {
            orbits.push(OrbitLabel::o2(k, a.value.clone(), b.value.clone())?);
        }
        if o3(a) {
            orbits.push(OrbitLabel::O3(a.value.clone()));
        }
    }
    Ok(orbits)
}

/// All solutions of `poly(x) = c`.
///
/// The right-hand side is classified over the quadratic closure of `f` and
/// the three cases are solved for arbitrary `c` via the idempotent
/// `b = (c − γ2)/(γ1 − γ2)` and the square-zero `m = c − γ`.
pub fn solve<F: Field>(f: &F, poly: &Poly<F::Elem>, c: &Octonion<F::Elem>) -> Result<SolutionSet<F::Elem>> {
    let (g, rhs) = normalize(f, poly, c)?;
    let k = f.quadratic_closure()?;
    let g = g.lift(f, &k);
    let rhs = lift(f, &k, &rhs);
    let label = classify_split(&k, &rhs)?;
    let mut warnings = Vec::new();
    let (points, orbits, complete) = match &label {
        OrbitLabel::Scalar(gamma) => {
            let r = roots_of(&k, &g, gamma, &mut warnings)?;
            let points = r.roots.iter().map(|x| Octonion::scalar(&k, x.value.clone())).collect();
            let orbits = case1_orbits(&k, &r, |x| x.multiple)?;
            (points, orbits, r.complete)
        }
        OrbitLabel::O2(g1, g2) => {
            let b = o2_idempotent(&k, &rhs, g1, g2)?;
            let r1 = roots_of(&k, &g, g1, &mut warnings)?;
            let r2 = roots_of(&k, &g, g2, &mut warnings)?;
            (case2_points(&k, &b, &r1, &r2), Vec::new(), r1.complete && r2.complete)
        }
        OrbitLabel::O3(gamma) => {
            let m = rhs.sub(&k, &Octonion::scalar(&k, gamma.clone()));
            let r = roots_of(&k, &g, gamma, &mut warnings)?;
            let dg = g.derivative(&k);
            let points = r
                .roots
                .iter()
                .filter(|x| !x.multiple)
                .map(|x| {
                    let d = k.inv(&dg.eval_scalar(&k, &x.value))?;
                    Ok(Octonion::scalar(&k, x.value.clone()).add(&k, &m.scale(&k, &d)))
                })
                .collect::<Result<_>>()?;
            (points, Vec::new(), r.complete)
        }
    };
    Ok(finish(f, &k, Raw { points, orbits, complete, warnings, rhs_label: label }))
}

/// Cardinality of the solution set, checked against the counting bounds
/// that hold over an algebraically closed field for `deg f = n > 1`:
/// infinite iff `c` is scalar; empty iff `c` is non-scalar with equal
/// eigenvalues and no simple root; at most `n` solutions in that case; and
/// between 1 and `n²` for distinct eigenvalues.
pub fn count_solutions<F: Field>(f: &F, poly: &Poly<F::Elem>, c: &Octonion<F::Elem>) -> Result<Cardinality> {
    if !f.is_algebraically_closed() {
        return Err(Error::WrongBackend("an algebraically closed field (C)"));
    }
    let n = poly.degree().ok_or(Error::ZeroPolynomial)?;
    if n <= 1 {
        return Err(Error::InvalidArgument(format!(
            "the counting bounds need degree > 1, got {n}; use solve instead"
        )));
    }
    let set = solve(f, poly, c)?;
    let count = set.points.len();
    let infinite = set.cardinality == Cardinality::Infinite;
    let violation = |what: String| Err(Error::BoundViolation(what));
    match &set.rhs_label {
        OrbitLabel::Scalar(_) if !infinite => return violation("scalar right-hand side but finitely many solutions".into()),
        OrbitLabel::Scalar(_) => {}
        _ if infinite => return violation("non-scalar right-hand side but infinitely many solutions".into()),
        OrbitLabel::O3(gamma) => {
            let mut scratch = Vec::new();
            let (g, _) = normalize(f, poly, c)?;
            let has_simple = roots_of(f, &g, gamma, &mut scratch)?.roots.iter().any(|r| !r.multiple);
            if has_simple == (count == 0) {
                return violation(format!(
                    "empty iff no simple root fails: {count} solutions, simple root present: {has_simple}"
                ));
            }
            if count > n {
                return violation(format!("{count} solutions exceed the bound n = {n}"));
            }
        }
        OrbitLabel::O2(..) => {
            if count < 1 || count > n * n {
                return violation(format!("{count} solutions outside [1, n² = {}]", n * n));
            }
        }
    }
    Ok(set.cardinality)
}

/// Solutions of `x^n = c`, built from the closed forms for pure powers:
/// in the scalar case an O3 family exists iff `p | n` or `γ = 0`; in the
/// O3 case the points are `ξ·1 + ξ/(nγ)·m` when `p ∤ n` and `γ ≠ 0`, and
/// there are none otherwise.
pub fn nth_root<F: Field>(f: &F, c: &Octonion<F::Elem>, n: u32) -> Result<SolutionSet<F::Elem>> {
    if n <= 1 {
        return Err(Error::InvalidArgument(format!("nth_root needs n > 1, got {n}")));
    }
    let k = f.quadratic_closure()?;
    let g = Poly::monomial(&k, n as usize);
    let rhs = lift(f, &k, c);
    let label = classify_split(&k, &rhs)?;
    let p = k.characteristic();
    let p_divides_n = p != 0 && u64::from(n) % p == 0;
    let mut warnings = Vec::new();
    let (points, orbits, complete) = match &label {
        OrbitLabel::Scalar(gamma) => {
            let r = roots_of(&k, &g, gamma, &mut warnings)?;
            let family = p_divides_n || k.is_zero(gamma);
            let points = r.roots.iter().map(|x| Octonion::scalar(&k, x.value.clone())).collect();
            let orbits = case1_orbits(&k, &r, |_| family)?;
            (points, orbits, r.complete)
        }
        OrbitLabel::O2(g1, g2) => {
            let b = o2_idempotent(&k, &rhs, g1, g2)?;
            let r1 = roots_of(&k, &g, g1, &mut warnings)?;
            let r2 = roots_of(&k, &g, g2, &mut warnings)?;
            (case2_points(&k, &b, &r1, &r2), Vec::new(), r1.complete && r2.complete)
        }
        OrbitLabel::O3(gamma) => {
            if p_divides_n || k.is_zero(gamma) {
                (Vec::new(), Vec::new(), true)
            } else {
                let m = rhs.sub(&k, &Octonion::scalar(&k, gamma.clone()));
                let r = roots_of(&k, &g, gamma, &mut warnings)?;
                let n_gamma = k.inv(&k.mul(&k.from_i64(i64::from(n)), gamma))?;
                let points = r
                    .roots
                    .iter()
                    .map(|x| {
                        let coeff = k.mul(&x.value, &n_gamma);
                        Octonion::scalar(&k, x.value.clone()).add(&k, &m.scale(&k, &coeff))
                    })
                    .collect();
                (points, Vec::new(), r.complete)
            }
        }
    };
    Ok(finish(f, &k, Raw { points, orbits, complete, warnings, rhs_label: label }))
}

/// Same points (up to backend equality) and same orbit labels.
pub fn same_solutions<F: Field>(f: &F, a: &SolutionSet<F::Elem>, b: &SolutionSet<F::Elem>) -> Result<bool> {
    if a.cardinality != b.cardinality || a.points.len() != b.points.len() || a.orbits.len() != b.orbits.len() {
        return Ok(false);
    }
    let k = f.quadratic_closure()?;
    let points = a.points.iter().zip(&b.points).all(|(x, y)| {
        let scale = x.magnitude(f).max(y.magnitude(f)).max(1.0);
        x.eq_scaled(f, y, scale)
    });
    let orbits = a
        .orbits
        .iter()
        .zip(&b.orbits)
        .all(|(x, y)| x.cmp(&k, y) == Ordering::Equal && x.eq(&k, y));
    Ok(points && orbits)
}

/// Seeded soundness check used by tests and the command line.
pub fn check_solution_set<F: Field>(
    f: &F,
    poly: &Poly<F::Elem>,
    c: &Octonion<F::Elem>,
    set: &SolutionSet<F::Elem>,
    seed: u64,
) -> Result<Vec<String>> {
    set.violations(f, poly, c, 20, seed)
}

/// A reproducible random polynomial of the given degree without constant term.
pub fn random_poly<F: Field>(f: &F, degree: usize, seed: u64) -> Poly<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs: Vec<F::Elem> = (0..=degree).map(|_| f.random(&mut rng)).collect();
    coeffs[0] = f.zero();
    while f.is_zero(&coeffs[degree]) {
        coeffs[degree] = f.random(&mut rng);
    }
    Poly::new(f, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ComplexField, FiniteField, RationalField};
    use num_complex::Complex64;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qp(c: &[i64]) -> Poly<BigRational> {
        Poly::new(&RationalField, c.iter().map(|&x| q(x)).collect())
    }

    fn oct(c: [i64; 8]) -> Octonion<BigRational> {
        Octonion::from_coords(c.map(q))
    }

    fn half(n: i64) -> BigRational {
        BigRational::new(n.into(), 2.into())
    }

    #[test]
    fn evaluation_examples() {
        let f = RationalField;
        assert!(qp(&[0, 0, 1]).evaluate(&f, &Octonion::u_basis(&f, 1)).is_zero(&f));
        let x = oct([1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(qp(&[0, 1]).evaluate(&f, &x), x);
        assert_eq!(
            qp(&[0, 0, 0, 1]).evaluate(&f, &oct([2, 5, 0, 0, 0, 0, 0, 2])),
            oct([8, 60, 0, 0, 0, 0, 0, 8])
        );
        // constant term enters as α0·1
        assert_eq!(qp(&[3]).evaluate(&f, &x), Octonion::scalar(&f, q(3)));
    }

    #[test]
    fn derivative_examples() {
        let c = ComplexField::default();
        let p = Poly::new(&c, vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(p.derivative(&c).coeffs(), &[Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)]);
        let f2 = FiniteField::prime(2).unwrap();
        assert!(Poly::monomial(&f2, 2).derivative(&f2).is_zero());
        let f3 = FiniteField::prime(3).unwrap();
        let p = Poly::new(&f3, vec![f3.zero(), f3.one(), f3.zero(), f3.one()]);
        assert_eq!(p.derivative(&f3).coeffs(), &[f3.one()]);
    }

    #[test]
    fn lemma_examples() {
        let f = RationalField;
        assert_eq!(qp(&[0, 0, 0, 1]).lemma_eval(&f, &q(2), &q(5)), oct([8, 60, 0, 0, 0, 0, 0, 8]));
        assert_eq!(qp(&[1, 2, 3]).lemma_eval(&f, &q(2), &q(0)), Octonion::scalar(&f, q(17)));
        let f2 = FiniteField::prime(2).unwrap();
        let sq = Poly::monomial(&f2, 2);
        for a in f2.elements().unwrap() {
            for b in f2.elements().unwrap() {
                assert_eq!(sq.lemma_eval(&f2, &a, &b), Octonion::scalar(&f2, f2.mul(&a, &a)));
            }
        }
    }

    #[test]
    fn square_roots_of_one() {
        let f = RationalField;
        let set = solve(&f, &qp(&[0, 0, 1]), &Octonion::one(&f)).unwrap();
        assert_eq!(set.points, vec![Octonion::scalar(&f, q(-1)), Octonion::one(&f)]);
        assert_eq!(set.orbits, vec![OrbitLabel::O2(q(-1), q(1))]);
        assert_eq!(set.cardinality, Cardinality::Infinite);
        // traceless octonions of norm −1 square to one
        let x = oct([2, 1, 0, 0, -3, 0, 0, -2]);
        assert!(set.contains(&f, &x).unwrap());
        assert_eq!(x.mul(&f, &x), Octonion::one(&f));
        assert!(set.violations(&f, &qp(&[0, 0, 1]), &Octonion::one(&f), 20, 0).unwrap().is_empty());
    }

    #[test]
    fn square_roots_of_an_o2_element() {
        let f = RationalField;
        let c = oct([1, 0, 0, 0, 0, 0, 0, 4]);
        let set = solve(&f, &qp(&[0, 0, 1]), &c).unwrap();
        assert_eq!(set.cardinality, Cardinality::Finite(4));
        for (a, b) in [(-1, -2), (-1, 2), (1, -2), (1, 2)] {
            let x = oct([a, 0, 0, 0, 0, 0, 0, b]);
            assert!(set.points.contains(&x));
            assert_eq!(x.mul(&f, &x), c);
        }
    }

    #[test]
    fn square_roots_of_an_o3_element() {
        let f = RationalField;
        let c = oct([1, 1, 0, 0, 0, 0, 0, 1]);
        let set = solve(&f, &qp(&[0, 0, 1]), &c).unwrap();
        let mut neg = Octonion::scalar(&f, q(-1));
        neg.u[0] = half(-1);
        let mut pos = Octonion::one(&f);
        pos.u[0] = half(1);
        assert_eq!(set.points, vec![neg, pos.clone()]);
        assert!(set.orbits.is_empty());
        assert_eq!(pos.mul(&f, &pos), c);
    }

    #[test]
    fn square_roots_in_characteristic_two() {
        for k in 1..=3 {
            let f = FiniteField::new(2, k, None).unwrap();
            let mut c = Octonion::one(&f);
            c.u[0] = f.one();
            let set = solve(&f, &Poly::monomial(&f, 2), &c).unwrap();
            assert_eq!(set.cardinality, Cardinality::Empty);
            assert_eq!(set.completeness, Completeness::CompleteOverWorkingField);
        }
    }

    #[test]
    fn constant_term_is_moved_to_the_right() {
        let f = RationalField;
        // x² + 1 = 2 ⇔ x² = 1
        let a = solve(&f, &qp(&[1, 0, 1]), &Octonion::scalar(&f, q(2))).unwrap();
        let b = solve(&f, &qp(&[0, 0, 1]), &Octonion::one(&f)).unwrap();
        assert_eq!(a.points, b.points);
        assert_eq!(a.orbits, b.orbits);
        assert_eq!(solve(&f, &qp(&[]), &Octonion::one(&f)).unwrap_err(), Error::ZeroPolynomial);
        assert_eq!(solve(&f, &qp(&[4]), &Octonion::one(&f)).unwrap_err(), Error::ConstantPolynomial);
    }

    #[test]
    fn counting_examples() {
        let c = ComplexField::default();
        let re = |x: f64| Complex64::new(x, 0.0);
        let sq = Poly::monomial(&c, 2);
        assert_eq!(count_solutions(&c, &sq, &Octonion::scalar(&c, re(5.0))).unwrap(), Cardinality::Infinite);
        assert_eq!(count_solutions(&c, &sq, &Octonion::u_basis(&c, 1)).unwrap(), Cardinality::Empty);
        let mut d = Octonion::e1(&c);
        d.beta = re(4.0);
        assert_eq!(count_solutions(&c, &sq, &d).unwrap(), Cardinality::Finite(4));
        assert!(count_solutions(&RationalField, &qp(&[0, 0, 1]), &Octonion::one(&RationalField)).is_err());
        assert!(count_solutions(&c, &Poly::monomial(&c, 1), &d).is_err());
    }

    #[test]
    fn nth_root_examples() {
        let c = ComplexField::default();
        let re = |x: f64| Complex64::new(x, 0.0);
        let set = nth_root(&c, &Octonion::one(&c), 2).unwrap();
        assert_eq!(set.points.len(), 2);
        assert_eq!(set.orbits.len(), 1);
        assert!(set.orbits[0].eq(&c, &OrbitLabel::O2(re(-1.0), re(1.0))));

        let set = nth_root(&c, &Octonion::zero(&c), 2).unwrap();
        assert_eq!(set.points, vec![Octonion::zero(&c)]);
        assert_eq!(set.orbits, vec![OrbitLabel::O3(re(0.0))]);

        let mut rhs = Octonion::one(&c);
        rhs.u[0] = re(1.0);
        let set = nth_root(&c, &rhs, 3).unwrap();
        assert_eq!(set.points.len(), 3);
        for x in &set.points {
            let xi = x.alpha;
            assert!(c.eq(&c.pow(&xi, 3), &re(1.0)));
            assert!(c.eq(&x.u[0], &(xi / 3.0)));
            assert!(satisfies(&c, &Poly::monomial(&c, 3), &rhs, x));
        }
        assert!(nth_root(&c, &rhs, 1).is_err());
    }

    #[test]
    fn nth_root_agrees_with_solve_over_finite_fields() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let f = FiniteField::new(p, k, None).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p * 10 + k as u64);
            for n in 2..=6u32 {
                for _ in 0..15 {
                    let c = Octonion::from_coords(std::array::from_fn(|_| f.random(&mut rng)));
                    let a = nth_root(&f, &c, n).unwrap();
                    let b = solve(&f, &Poly::monomial(&f, n as usize), &c).unwrap();
                    assert!(same_solutions(&f, &a, &b).unwrap(), "F_{p}^{k}, n = {n}, c = {}", c.format(&f));
                }
            }
        }
    }

    #[test]
    fn conjugate_eigenvalue_orbits_are_kept() {
        // over F_3, ξ² = −1 has no roots but x² = −1 has solutions with
        // eigenvalues ±i in F_9
        let f = FiniteField::prime(3).unwrap();
        let rhs = Octonion::scalar(&f, f.from_i64(-1));
        let set = solve(&f, &Poly::monomial(&f, 2), &rhs).unwrap();
        assert!(set.points.is_empty());
        assert_eq!(set.orbits.len(), 1);
        let x = Octonion::from_coords([0, 1, 0, 0, 2, 0, 0, 0].map(|c| f.from_i64(c)));
        assert_eq!(x.mul(&f, &x), rhs);
        assert!(set.contains(&f, &x).unwrap());
        let json = set.to_json(&f).unwrap();
        assert_eq!(json["label_field"], json!("F:3^2"));
    }

    #[test]
    fn solution_set_json_shape() {
        let f = RationalField;
        let set = solve(&f, &qp(&[0, 0, 1]), &oct([1, 0, 0, 0, 0, 0, 0, 4])).unwrap();
        let v = set.to_json(&f).unwrap();
        assert_eq!(v["cardinality"], json!({"finite": 4}));
        assert_eq!(v["completeness"], json!("complete_over_working_field"));
        assert_eq!(v["orbits"], json!([]));
        assert!(v.get("label_field").is_none());
        let set = solve(&f, &qp(&[0, 0, 1]), &Octonion::u_basis(&f, 1)).unwrap();
        assert_eq!(set.to_json(&f).unwrap()["cardinality"], json!("empty"));
    }
}
