//! Simultaneous root iteration (Aberth–Ehrlich) with cluster detection for
//! multiple roots.

use num_complex::Complex64;

use super::{Root, RootList};
use crate::error::{Error, Result};

pub(super) const MAX_ITERATIONS: usize = 200;

type C64 = Complex64;

/// Value and first derivative of an ascending coefficient list at `z`.
fn horner2(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Σ |c_i| |z|^i, the natural error scale when evaluating at `z`.
fn eval_scale(coeffs: &[C64], z: C64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

fn derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

fn nth_derivative(coeffs: &[C64], n: usize) -> Vec<C64> {
    (0..n).fold(coeffs.to_vec(), |d, _| derivative(&d))
}

fn newton_polish(coeffs: &[C64], mut z: C64, steps: usize) -> C64 {
    for _ in 0..steps {
        let (p, dp) = horner2(coeffs, z);
        if dp.norm() == 0.0 || !p.is_finite() {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        let next = z - step;
        // stop once the residual no longer improves
        if horner(coeffs, next).norm() > p.norm() {
            break;
        }
        z = next;
        if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Runs the iteration on a polynomial with nonzero constant term and
/// returns one approximation per root (with repetition) and the number of
/// sweeps used.
fn iterate(coeffs: &[C64]) -> (Vec<C64>, usize, bool) {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return (vec![-monic[0]], 0, true);
    }
    let radius = monic[0].norm().powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<C64> = (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.4;
            C64::from_polar(radius, theta)
        })
        .collect();
    let mut converged = false;
    let mut sweeps = 0;
    for it in 0..MAX_ITERATIONS {
        sweeps = it + 1;
        let mut done = true;
        for i in 0..n {
            let (p, dp) = horner2(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: C64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        C64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let mut w = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if !w.is_finite() {
                // derivative vanished: nudge off the critical point
                w = C64::new(1e-7, 1e-7) * z[i].norm().max(1.0);
            }
            z[i] -= w;
            if w.norm() > 4.0 * f64::EPSILON * z[i].norm().max(1.0) {
                done = false;
            }
        }
        if done {
            converged = true;
            break;
        }
    }
    (z, sweeps, converged)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut i = i;
        while self.0[i] != r {
            let next = self.0[i];
            self.0[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Checks that `z` is a root of multiplicity at least `m` of `coeffs`:
/// every derivative of order below `m` must vanish relative to its
/// evaluation scale.
fn confirms_multiplicity(coeffs: &[C64], z: C64, m: usize, tol: f64) -> bool {
    let mut d = coeffs.to_vec();
    for _ in 0..m {
        let value = horner(&d, z).norm();
        if value > tol * eval_scale(&d, z).max(f64::MIN_POSITIVE) {
            return false;
        }
        d = derivative(&d);
    }
    true
}

fn snap(z: C64, eps: f64) -> C64 {
    let tol = eps * z.norm().max(1.0);
    let re = if z.re.abs() <= tol { 0.0 } else { z.re };
    let im = if z.im.abs() <= tol { 0.0 } else { z.im };
    // normalise negative zero
    C64::new(re + 0.0, im + 0.0)
}

/// All complex roots of `coeffs` (ascending, trimmed, degree ≥ 1, nonzero
/// constant term) with multiplicities. Ordering is left to the caller.
pub(super) fn find_roots(coeffs: &[C64], eps: f64) -> Result<RootList<C64>> {
    let n = coeffs.len() - 1;
    let (approx, sweeps, converged) = iterate(coeffs);
    if approx.iter().any(|z| !z.is_finite()) {
        return Err(Error::NoConvergence(format!(
            "non-finite iterate after {sweeps} sweeps for a degree-{n} polynomial"
        )));
    }

    let radius = approx.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let cluster_tol = eps.cbrt() * radius;
    let mut uf = UnionFind((0..n).collect());
    for i in 0..n {
        for j in (i + 1)..n {
            if (approx[i] - approx[j]).norm() <= cluster_tol {
                uf.union(i, j);
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = uf.find(i);
        if index_of[r] == usize::MAX {
            index_of[r] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[index_of[r]].push(i);
    }

    let verify_tol = eps.sqrt();
    let mut roots = Vec::new();
    let mut warnings = Vec::new();
    for members in clusters {
        let m = members.len();
        if m == 1 {
            let z = newton_polish(coeffs, approx[members[0]], 8);
            roots.push(Root { value: z, multiplicity: 1 });
            continue;
        }
        let centroid = members.iter().map(|&i| approx[i]).sum::<C64>() / m as f64;
        let z = newton_polish(&nth_derivative(coeffs, m - 1), centroid, 8);
        if confirms_multiplicity(coeffs, z, m, verify_tol) {
            let spread = members
                .iter()
                .map(|&i| (approx[i] - centroid).norm())
                .fold(0.0, f64::max);
            if spread > eps * radius {
                warnings.push(format!(
                    "{m} approximate roots within {spread:.3e} of {z} were merged into one root of multiplicity {m}"
                ));
            }
            roots.push(Root { value: z, multiplicity: m });
        } else {
            warnings.push(format!(
                "{m} nearby approximate roots around {centroid} kept as distinct simple roots"
            ));
            for &i in &members {
                let z = newton_polish(coeffs, approx[i], 8);
                roots.push(Root { value: z, multiplicity: 1 });
            }
        }
    }

    for r in &roots {
        let residual = horner(coeffs, r.value).norm();
        let scale = eval_scale(coeffs, r.value);
        if residual > verify_tol * scale {
            return Err(Error::NoConvergence(format!(
                "residual {residual:.3e} at {} exceeds {:.3e} after {sweeps} sweeps (converged: {converged})",
                r.value,
                verify_tol * scale
            )));
        }
    }

    for r in &mut roots {
        r.value = snap(r.value, eps);
    }
    Ok(RootList {
        roots,
        complete_over_field: true,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn poly_from_roots(rs: &[C64]) -> Vec<C64> {
        let mut p = vec![c(1.0)];
        for r in rs {
            let mut next = vec![c(0.0); p.len() + 1];
            for (i, a) in p.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            p = next;
        }
        p
    }

    #[test]
    fn simple_roots_of_cubic() {
        let p = poly_from_roots(&[c(1.0), c(-2.0), C64::new(0.5, 3.0)]);
        let found = find_roots(&p, 1e-9).unwrap();
        assert_eq!(found.roots.len(), 3);
        assert!(found.roots.iter().all(|r| r.multiplicity == 1));
        for want in [c(1.0), c(-2.0), C64::new(0.5, 3.0)] {
            assert!(found.roots.iter().any(|r| (r.value - want).norm() < 1e-12));
        }
    }

    #[test]
    fn double_and_triple_roots_are_merged() {
        let p = poly_from_roots(&[c(1.0), c(1.0), c(-2.0), c(-2.0), c(-2.0), c(3.0)]);
        let found = find_roots(&p, 1e-9).unwrap();
        let mut mults: Vec<(f64, usize)> =
            found.roots.iter().map(|r| (r.value.re, r.multiplicity)).collect();
        mults.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert_eq!(mults.len(), 3);
        assert_eq!(mults[0].1, 3);
        assert_eq!(mults[1].1, 2);
        assert_eq!(mults[2].1, 1);
        assert!((mults[0].0 + 2.0).abs() < 1e-9);
        assert!((mults[1].0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn roots_of_unity() {
        // ξ^5 - 1
        let mut p = vec![c(0.0); 6];
        p[0] = c(-1.0);
        p[5] = c(1.0);
        let found = find_roots(&p, 1e-9).unwrap();
        assert_eq!(found.roots.len(), 5);
        for r in &found.roots {
            assert!((r.value.powu(5) - c(1.0)).norm() < 1e-12);
        }
    }
}
