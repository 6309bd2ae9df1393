//! Brute-force ground truth.
//!
//! Multiplication here is written out coordinate by coordinate on plain
//! `[E; 8]` arrays and shares no code with [`crate::octonion`], so a bug in
//! one is unlikely to be mirrored in the other.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::octonion::Octonion;
use crate::polyeq::{Poly, SolutionSet};

/// Default cap on the field size for exhaustive scans (q^8 elements).
pub const DEFAULT_MAX_Q: u64 = 9;
/// Hard cap regardless of configuration.
pub const HARD_MAX_Q: u64 = 81;

/// Coordinates `[α, u1, u2, u3, v1, v2, v3, β]`.
pub type Coords<E> = [E; 8];

/// Product of two octonions straight from the Zorn-matrix formula.
pub fn naive_mul<F: Field>(f: &F, a: &Coords<F::Elem>, b: &Coords<F::Elem>) -> Coords<F::Elem> {
    let m = |x: &F::Elem, y: &F::Elem| f.mul(x, y);
    let s = |x: F::Elem, y: F::Elem| f.add(&x, &y);
    let d = |x: F::Elem, y: F::Elem| f.sub(&x, &y);
    let (al, u1, u2, u3, v1, v2, v3, be) = (&a[0], &a[1], &a[2], &a[3], &a[4], &a[5], &a[6], &a[7]);
    let (al2, p1, p2, p3, q1, q2, q3, be2) = (&b[0], &b[1], &b[2], &b[3], &b[4], &b[5], &b[6], &b[7]);
    // α'' = αα' + u·v'
    let alpha = s(s(m(al, al2), m(u1, q1)), s(m(u2, q2), m(u3, q3)));
    // u'' = αu' + β'u − v×v'
    let x1 = d(s(m(al, p1), m(be2, u1)), d(m(v2, q3), m(v3, q2)));
    let x2 = d(s(m(al, p2), m(be2, u2)), d(m(v3, q1), m(v1, q3)));
    let x3 = d(s(m(al, p3), m(be2, u3)), d(m(v1, q2), m(v2, q1)));
    // v'' = α'v + βv' + u×u'
    let y1 = s(s(m(al2, v1), m(be, q1)), d(m(u2, p3), m(u3, p2)));
    let y2 = s(s(m(al2, v2), m(be, q2)), d(m(u3, p1), m(u1, p3)));
    let y3 = s(s(m(al2, v3), m(be, q3)), d(m(u1, p2), m(u2, p1)));
    // β'' = ββ' + v·u'
    let beta = s(s(m(be, be2), m(v1, p1)), s(m(v2, p2), m(v3, p3)));
    [alpha, x1, x2, x3, y1, y2, y3, beta]
}

fn naive_one<F: Field>(f: &F) -> Coords<F::Elem> {
    std::array::from_fn(|i| if i == 0 || i == 7 { f.one() } else { f.zero() })
}

fn naive_conj<F: Field>(f: &F, a: &Coords<F::Elem>) -> Coords<F::Elem> {
    std::array::from_fn(|i| match i {
        0 => a[7].clone(),
        7 => a[0].clone(),
        _ => f.neg(&a[i]),
    })
}

fn naive_norm<F: Field>(f: &F, a: &Coords<F::Elem>) -> F::Elem {
    let uv = (1..4).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&a[i], &a[i + 3])));
    f.sub(&f.mul(&a[0], &a[7]), &uv)
}

fn naive_trace<F: Field>(f: &F, a: &Coords<F::Elem>) -> F::Elem {
    f.add(&a[0], &a[7])
}

fn naive_add<F: Field>(f: &F, a: &Coords<F::Elem>, b: &Coords<F::Elem>) -> Coords<F::Elem> {
    std::array::from_fn(|i| f.add(&a[i], &b[i]))
}

fn naive_scale<F: Field>(f: &F, s: &F::Elem, a: &Coords<F::Elem>) -> Coords<F::Elem> {
    std::array::from_fn(|i| f.mul(s, &a[i]))
}

/// `Σ α_i x^i` with powers built by repeated left multiplication.
pub fn naive_eval<F: Field>(f: &F, coeffs: &[F::Elem], x: &Coords<F::Elem>) -> Coords<F::Elem> {
    let mut acc: Coords<F::Elem> = std::array::from_fn(|_| f.zero());
    let mut power = naive_one(f);
    for (i, a) in coeffs.iter().enumerate() {
        if i > 0 {
            power = naive_mul(f, x, &power);
        }
        acc = naive_add(f, &acc, &naive_scale(f, a, &power));
    }
    acc
}

fn same<F: Field>(f: &F, a: &Coords<F::Elem>, b: &Coords<F::Elem>, scale: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| f.eq_scaled(x, y, scale))
}

/// Exhaustive scan of `O(F_q)` for the solutions of `poly(x) = c`.
#[derive(Debug, Clone)]
pub struct EnumerationReport<E> {
    pub field: FieldSpec,
    pub poly: Poly<E>,
    pub rhs: Octonion<E>,
    /// Solutions in lexicographic coordinate order.
    pub found: Vec<Octonion<E>>,
    pub scanned: u64,
    pub elapsed: Duration,
}

impl<E: Clone> EnumerationReport<E> {
    /// Deterministic JSON; the elapsed time is left out so that repeated
    /// runs produce identical output.
    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        json!({
            "field": self.field.to_string(),
            "poly": self.poly.to_json(f),
            "rhs": self.rhs.to_json(f),
            "found": self.found.iter().map(|x| x.to_json(f)).collect::<Vec<_>>(),
            "count": self.found.len(),
            "scanned": self.scanned,
        })
    }
}

/// Scans every octonion over the finite field `f`. Parallel over the first
/// two coordinates; the result order does not depend on scheduling.
pub fn enumerate_solutions<F: Field>(
    f: &F,
    poly: &Poly<F::Elem>,
    c: &Octonion<F::Elem>,
    max_q: u64,
) -> Result<EnumerationReport<F::Elem>> {
    let elements = f
        .elements()
        .ok_or(Error::WrongBackend("a finite field (exhaustive enumeration)"))?;
    let q = elements.len() as u64;
    let limit = max_q.min(HARD_MAX_Q);
    if q > limit {
        return Err(Error::FieldTooLarge { size: q, limit, what: "exhaustive enumeration" });
    }
    let start = Instant::now();
    let target = c.coords();
    let coeffs = poly.coeffs();
    let n = elements.len();
    let prefixes: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let chunks: Vec<Vec<Octonion<F::Elem>>> = prefixes
        .par_iter()
        .map(|&(i0, i1)| {
            let mut found = Vec::new();
            let mut idx = [0usize; 6];
            loop {
                let x: Coords<F::Elem> = std::array::from_fn(|pos| match pos {
                    0 => elements[i0].clone(),
                    1 => elements[i1].clone(),
                    _ => elements[idx[pos - 2]].clone(),
                });
                if same(f, &naive_eval(f, coeffs, &x), &target, 1.0) {
                    found.push(Octonion::from_coords(x));
                }
                // odometer, last coordinate fastest
                let mut pos = 6;
                loop {
                    if pos == 0 {
                        return found;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < n {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        })
        .collect();
    Ok(EnumerationReport {
        field: f.spec(),
        poly: poly.clone(),
        rhs: c.clone(),
        found: chunks.into_iter().flatten().collect(),
        scanned: q.pow(8),
        elapsed: start.elapsed(),
    })
}

/// Outcome of checking a solution set against an exhaustive scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison<E> {
    pub matches: bool,
    /// Enumerated solutions that are neither a point nor in an orbit.
    pub unexplained: Vec<Octonion<E>>,
    /// Returned points that the scan did not find.
    pub missing: Vec<Octonion<E>>,
}

impl<E: Clone> Comparison<E> {
    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        json!({
            "verdict": if self.matches { "match" } else { "mismatch" },
            "unexplained": self.unexplained.iter().map(|x| x.to_json(f)).collect::<Vec<_>>(),
            "missing": self.missing.iter().map(|x| x.to_json(f)).collect::<Vec<_>>(),
        })
    }
}

pub fn compare<F: Field>(
    f: &F,
    report: &EnumerationReport<F::Elem>,
    sol: &SolutionSet<F::Elem>,
) -> Result<Comparison<F::Elem>> {
    let mut unexplained = Vec::new();
    for x in &report.found {
        if !sol.contains(f, x)? {
            unexplained.push(x.clone());
        }
    }
    let missing: Vec<Octonion<F::Elem>> = sol
        .points
        .iter()
        .filter(|p| {
            report
                .found
                .binary_search_by(|x| x.cmp(f, p))
                .is_err()
        })
        .cloned()
        .collect();
    Ok(Comparison {
        matches: unexplained.is_empty() && missing.is_empty(),
        unexplained,
        missing,
    })
}

/// Result of [`fuzz_identities`].
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzReport {
    pub trials: usize,
    pub failures: Vec<String>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trials": self.trials,
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

const MAX_REPORTED_FAILURES: usize = 20;

/// Checks the octonion identities on `trials` random triples: agreement of
/// the library product with [`naive_mul`], `tr(ab) = tr(ba)`,
/// `n(ab) = n(a)n(b)`, `a² − tr(a)a + n(a) = 0`, the alternative laws,
/// `ā(ab) = n(a)b = (ba)ā`, `conj(ab) = b̄ā`, `aā = n(a)` and
/// `q(a, b) = n(a+b) − n(a) − n(b)`.
pub fn fuzz_identities<F: Field>(f: &F, trials: usize, seed: u64) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for t in 0..trials {
        let a: Coords<F::Elem> = std::array::from_fn(|_| f.random(&mut rng));
        let b: Coords<F::Elem> = std::array::from_fn(|_| f.random(&mut rng));
        let mag = |x: &Coords<F::Elem>| x.iter().map(|c| f.magnitude(c)).fold(1.0, f64::max);
        let (ma, mb) = (4.0 * mag(&a), 4.0 * mag(&b));
        let s2 = ma * mb;
        let s3 = ma * ma * mb;
        let mut fail = |what: &str| {
            if failures.len() < MAX_REPORTED_FAILURES {
                let fmt = |x: &Coords<F::Elem>| x.iter().map(|c| f.format_literal(c)).collect::<Vec<_>>().join(",");
                failures.push(format!("trial {t}: {what} fails for a = [{}], b = [{}]", fmt(&a), fmt(&b)));
            }
        };
        let ab = naive_mul(f, &a, &b);
        let ba = naive_mul(f, &b, &a);
        let lib = Octonion::from_coords(a.clone()).mul(f, &Octonion::from_coords(b.clone()));
        if !same(f, &lib.coords(), &ab, s2) {
            fail("library product = naive product");
        }
        if !f.eq_scaled(&naive_trace(f, &ab), &naive_trace(f, &ba), s2) {
            fail("tr(ab) = tr(ba)");
        }
        let (na, nb) = (naive_norm(f, &a), naive_norm(f, &b));
        if !f.eq_scaled(&naive_norm(f, &ab), &f.mul(&na, &nb), s2 * s2) {
            fail("n(ab) = n(a)n(b)");
        }
        let aa = naive_mul(f, &a, &a);
        let quad = naive_add(
            f,
            &naive_add(f, &aa, &naive_scale(f, &f.neg(&naive_trace(f, &a)), &a)),
            &naive_scale(f, &na, &naive_one(f)),
        );
        if !same(f, &quad, &std::array::from_fn(|_| f.zero()), ma * ma) {
            fail("a² − tr(a)a + n(a) = 0");
        }
        if !same(f, &naive_mul(f, &a, &ab), &naive_mul(f, &aa, &b), s3) {
            fail("a(ab) = (aa)b");
        }
        if !same(f, &naive_mul(f, &ba, &a), &naive_mul(f, &b, &aa), s3) {
            fail("(ba)a = b(aa)");
        }
        let ca = naive_conj(f, &a);
        let nab = naive_scale(f, &na, &b);
        if !same(f, &naive_mul(f, &ca, &ab), &nab, s3) {
            fail("ā(ab) = n(a)b");
        }
        if !same(f, &naive_mul(f, &ba, &ca), &nab, s3) {
            fail("(ba)ā = n(a)b");
        }
        if !same(f, &naive_conj(f, &ab), &naive_mul(f, &naive_conj(f, &b), &ca), s2) {
            fail("conj(ab) = conj(b)conj(a)");
        }
        if !same(f, &naive_mul(f, &a, &ca), &naive_scale(f, &na, &naive_one(f)), ma * ma) {
            fail("a·ā = n(a)");
        }
        let q = Octonion::from_coords(a.clone()).qform(f, &Octonion::from_coords(b.clone()));
        let polar = f.sub(&f.sub(&naive_norm(f, &naive_add(f, &a, &b)), &na), &nb);
        if !f.eq_scaled(&q, &polar, (ma + mb) * (ma + mb)) {
            fail("q(a, b) = n(a+b) − n(a) − n(b)");
        }
    }
    FuzzReport { trials, failures }
}

/// Lexicographic order check used by tests on enumeration output.
pub fn is_sorted<F: Field>(f: &F, xs: &[Octonion<F::Elem>]) -> bool {
    xs.windows(2).all(|w| w[0].cmp(f, &w[1]) == Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ComplexField, FiniteField, RationalField};
    use crate::polyeq::solve;

    #[test]
    fn naive_product_agrees_on_basis_pairs() {
        let f = RationalField;
        for i in 0..8 {
            for j in 0..8 {
                let (a, b) = (Octonion::basis(&f, i), Octonion::basis(&f, j));
                assert_eq!(naive_mul(&f, &a.coords(), &b.coords()), a.mul(&f, &b).coords(), "({i}, {j})");
            }
        }
    }

    #[test]
    fn fuzz_passes_on_every_backend() {
        assert!(fuzz_identities(&FiniteField::prime(5).unwrap(), 10_000, 1).passed());
        assert!(fuzz_identities(&FiniteField::new(2, 3, None).unwrap(), 2_000, 2).passed());
        let r = fuzz_identities(&ComplexField::default(), 10_000, 3);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(fuzz_identities(&RationalField, 500, 4).passed());
        let empty = fuzz_identities(&RationalField, 0, 0);
        assert!(empty.passed() && empty.trials == 0);
    }

    #[test]
    fn square_zero_elements_over_f2() {
        let f = FiniteField::prime(2).unwrap();
        let report = enumerate_solutions(&f, &Poly::monomial(&f, 2), &Octonion::zero(&f), DEFAULT_MAX_Q).unwrap();
        assert_eq!(report.scanned, 256);
        assert!(is_sorted(&f, &report.found));
        let all = f.elements().unwrap();
        let mut expected = 0;
        for code in 0..256u32 {
            let x: Coords<_> = std::array::from_fn(|i| all[((code >> (7 - i)) & 1) as usize]);
            let x = Octonion::from_coords(x);
            if f.is_zero(&x.trace(&f)) && f.is_zero(&x.norm(&f)) {
                expected += 1;
            }
        }
        assert_eq!(report.found.len(), expected);
        let sol = solve(&f, &Poly::monomial(&f, 2), &Octonion::zero(&f)).unwrap();
        assert!(compare(&f, &report, &sol).unwrap().matches);
    }

    #[test]
    fn identity_polynomial_has_one_solution() {
        let f = FiniteField::prime(3).unwrap();
        let u1 = Octonion::u_basis(&f, 1);
        let report = enumerate_solutions(&f, &Poly::monomial(&f, 1), &u1, DEFAULT_MAX_Q).unwrap();
        assert_eq!(report.found, vec![u1]);
    }

    #[test]
    fn dropped_point_is_reported() {
        let f = FiniteField::prime(3).unwrap();
        let c = Octonion::from_coords([1, 0, 0, 0, 0, 0, 0, 0].map(|x| f.from_i64(x)));
        let sq = Poly::monomial(&f, 2);
        let report = enumerate_solutions(&f, &sq, &c, DEFAULT_MAX_Q).unwrap();
        let mut sol = solve(&f, &sq, &c).unwrap();
        assert!(compare(&f, &report, &sol).unwrap().matches);
        let dropped = sol.points.pop().unwrap();
        let cmp = compare(&f, &report, &sol).unwrap();
        assert!(!cmp.matches);
        assert_eq!(cmp.unexplained, vec![dropped]);
    }

    #[test]
    fn empty_on_both_sides_matches() {
        let f = FiniteField::prime(2).unwrap();
        let mut c = Octonion::one(&f);
        c.u[0] = f.one();
        let sq = Poly::monomial(&f, 2);
        let report = enumerate_solutions(&f, &sq, &c, DEFAULT_MAX_Q).unwrap();
        assert!(report.found.is_empty());
        assert!(compare(&f, &report, &solve(&f, &sq, &c).unwrap()).unwrap().matches);
    }

    #[test]
    fn size_guards() {
        let f = FiniteField::prime(11).unwrap();
        let sq = Poly::monomial(&f, 2);
        assert!(matches!(
            enumerate_solutions(&f, &sq, &Octonion::zero(&f), DEFAULT_MAX_Q),
            Err(Error::FieldTooLarge { .. })
        ));
        let c = ComplexField::default();
        assert!(matches!(
            enumerate_solutions(&c, &Poly::monomial(&c, 2), &Octonion::zero(&c), DEFAULT_MAX_Q),
            Err(Error::WrongBackend(_))
        ));
    }
}
