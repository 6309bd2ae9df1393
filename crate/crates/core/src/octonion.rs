//! Split octonions as Zorn vector matrices `[[α, u], [v, β]]`.

use std::cmp::Ordering;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::Field;

/// A split octonion `[[alpha, u], [v, beta]]` with `alpha, beta` scalars and
/// `u, v` 3-vectors. Coordinates are serialised as `[α, u1, u2, u3, v1, v2, v3, β]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Octonion<E> {
    pub alpha: E,
    pub u: [E; 3],
    pub v: [E; 3],
    pub beta: E,
}

pub(crate) fn dot<F: Field>(f: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> F::Elem {
    let s = f.add(&f.mul(&a[0], &b[0]), &f.mul(&a[1], &b[1]));
    f.add(&s, &f.mul(&a[2], &b[2]))
}

pub(crate) fn cross<F: Field>(f: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> [F::Elem; 3] {
    [
        f.sub(&f.mul(&a[1], &b[2]), &f.mul(&a[2], &b[1])),
        f.sub(&f.mul(&a[2], &b[0]), &f.mul(&a[0], &b[2])),
        f.sub(&f.mul(&a[0], &b[1]), &f.mul(&a[1], &b[0])),
    ]
}

fn vmap<E, G: Fn(&E) -> E>(a: &[E; 3], g: G) -> [E; 3] {
    [g(&a[0]), g(&a[1]), g(&a[2])]
}

fn vzip<E, G: Fn(&E, &E) -> E>(a: &[E; 3], b: &[E; 3], g: G) -> [E; 3] {
    [g(&a[0], &b[0]), g(&a[1], &b[1]), g(&a[2], &b[2])]
}

impl<E: Clone> Octonion<E> {
    pub fn new(alpha: E, u: [E; 3], v: [E; 3], beta: E) -> Self {
        Self { alpha, u, v, beta }
    }

    pub fn from_coords(c: [E; 8]) -> Self {
        let [a, u1, u2, u3, v1, v2, v3, b] = c;
        Self::new(a, [u1, u2, u3], [v1, v2, v3], b)
    }

    pub fn coords(&self) -> [E; 8] {
        [
            self.alpha.clone(),
            self.u[0].clone(),
            self.u[1].clone(),
            self.u[2].clone(),
            self.v[0].clone(),
            self.v[1].clone(),
            self.v[2].clone(),
            self.beta.clone(),
        ]
    }

    pub fn map<G, T>(&self, g: G) -> Octonion<T>
    where
        G: Fn(&E) -> T,
        T: Clone,
    {
        Octonion {
            alpha: g(&self.alpha),
            u: [g(&self.u[0]), g(&self.u[1]), g(&self.u[2])],
            v: [g(&self.v[0]), g(&self.v[1]), g(&self.v[2])],
            beta: g(&self.beta),
        }
    }
}

impl<E: Clone> Octonion<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F) -> Self {
        let z = f.zero();
        Self::new(z.clone(), [z.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), z.clone()], z)
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::scalar(f, f.one())
    }

    /// `s·1_O`.
    pub fn scalar<F: Field<Elem = E>>(f: &F, s: E) -> Self {
        let mut x = Self::zero(f);
        x.alpha = s.clone();
        x.beta = s;
        x
    }

    /// The `i`-th basis octonion in coordinate order
    /// `e1, u1, u2, u3, v1, v2, v3, e2`.
    pub fn basis<F: Field<Elem = E>>(f: &F, i: usize) -> Self {
        let mut c = Self::zero(f).coords();
        c[i] = f.one();
        Self::from_coords(c)
    }

    pub fn e1<F: Field<Elem = E>>(f: &F) -> Self {
        Self::basis(f, 0)
    }

    pub fn e2<F: Field<Elem = E>>(f: &F) -> Self {
        Self::basis(f, 7)
    }

    /// `u_i` for `i ∈ {1, 2, 3}`.
    pub fn u_basis<F: Field<Elem = E>>(f: &F, i: usize) -> Self {
        assert!((1..=3).contains(&i), "u_i is defined for i = 1, 2, 3");
        Self::basis(f, i)
    }

    /// `v_i` for `i ∈ {1, 2, 3}`.
    pub fn v_basis<F: Field<Elem = E>>(f: &F, i: usize) -> Self {
        assert!((1..=3).contains(&i), "v_i is defined for i = 1, 2, 3");
        Self::basis(f, i + 3)
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        Self::new(
            f.add(&self.alpha, &o.alpha),
            vzip(&self.u, &o.u, |a, b| f.add(a, b)),
            vzip(&self.v, &o.v, |a, b| f.add(a, b)),
            f.add(&self.beta, &o.beta),
        )
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        Self::new(
            f.sub(&self.alpha, &o.alpha),
            vzip(&self.u, &o.u, |a, b| f.sub(a, b)),
            vzip(&self.v, &o.v, |a, b| f.sub(a, b)),
            f.sub(&self.beta, &o.beta),
        )
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.map(|x| f.neg(x))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        self.map(|x| f.mul(s, x))
    }

    /// The Zorn product
    /// `[[αα' + u·v', αu' + β'u − v×v'], [α'v + βv' + u×u', ββ' + v·u']]`.
    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let (a, u, v, b) = (&self.alpha, &self.u, &self.v, &self.beta);
        let (a2, u2, v2, b2) = (&o.alpha, &o.u, &o.v, &o.beta);
        let alpha = f.add(&f.mul(a, a2), &dot(f, u, v2));
        let vv = cross(f, v, v2);
        let uu = cross(f, u, u2);
        let new_u = [0, 1, 2].map(|i| {
            f.sub(&f.add(&f.mul(a, &u2[i]), &f.mul(b2, &u[i])), &vv[i])
        });
        let new_v = [0, 1, 2].map(|i| {
            f.add(&f.add(&f.mul(a2, &v[i]), &f.mul(b, &v2[i])), &uu[i])
        });
        let beta = f.add(&f.mul(b, b2), &dot(f, v, u2));
        Self::new(alpha, new_u, new_v, beta)
    }

    /// The involution `[[β, −u], [−v, α]]`.
    pub fn conj<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self::new(
            self.beta.clone(),
            vmap(&self.u, |x| f.neg(x)),
            vmap(&self.v, |x| f.neg(x)),
            self.alpha.clone(),
        )
    }

    pub fn trace<F: Field<Elem = E>>(&self, f: &F) -> E {
        f.add(&self.alpha, &self.beta)
    }

    /// `n(a) = αβ − u·v`.
    pub fn norm<F: Field<Elem = E>>(&self, f: &F) -> E {
        f.sub(&f.mul(&self.alpha, &self.beta), &dot(f, &self.u, &self.v))
    }

    /// Polarisation of the norm: `αβ' + α'β − u·v' − u'·v`.
    pub fn qform<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> E {
        let diag = f.add(&f.mul(&self.alpha, &o.beta), &f.mul(&o.alpha, &self.beta));
        f.sub(&f.sub(&diag, &dot(f, &self.u, &o.v)), &dot(f, &o.u, &self.v))
    }

    /// `a^n` by repeated right multiplication; `a^0 = 1`.
    pub fn power<F: Field<Elem = E>>(&self, f: &F, n: u32) -> Self {
        (0..n).fold(Self::one(f), |acc, _| acc.mul(f, self))
    }

    /// `ā / n(a)` when the norm is nonzero; octonions of norm zero have
    /// neither a left nor a right inverse.
    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        let n = self.norm(f);
        if f.is_zero(&n) {
            return None;
        }
        let inv = f.inv(&n).ok()?;
        Some(self.conj(f).scale(f, &inv))
    }

    /// Componentwise backend equality.
    pub fn eq<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> bool {
        self.coords()
            .iter()
            .zip(o.coords().iter())
            .all(|(a, b)| f.eq(a, b))
    }

    /// Componentwise equality with a common error scale (see [`Field::eq_scaled`]).
    pub fn eq_scaled<F: Field<Elem = E>>(&self, f: &F, o: &Self, scale: f64) -> bool {
        self.coords()
            .iter()
            .zip(o.coords().iter())
            .all(|(a, b)| f.eq_scaled(a, b, scale))
    }

    /// Largest coordinate magnitude (0 on exact backends).
    pub fn magnitude<F: Field<Elem = E>>(&self, f: &F) -> f64 {
        self.coords().iter().map(|c| f.magnitude(c)).fold(0.0, f64::max)
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.coords().iter().all(|c| f.is_zero(c))
    }

    /// Lexicographic order on coordinates under the field order.
    pub fn cmp<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Ordering {
        self.coords()
            .iter()
            .zip(o.coords().iter())
            .map(|(a, b)| f.cmp(a, b))
            .find(|c| *c != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        Value::Array(self.coords().iter().map(|c| f.to_json(c)).collect())
    }

    pub fn from_json<F: Field<Elem = E>>(f: &F, v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .filter(|a| a.len() == 8)
            .ok_or_else(|| Error::parse(v.to_string(), "an octonion is an array of 8 field elements"))?;
        let coords: Vec<E> = items.iter().map(|x| f.from_json(x)).collect::<Result<_>>()?;
        Ok(Self::from_coords(coords.try_into().ok().expect("length checked")))
    }

    /// Parses 8 comma-separated field literals.
    pub fn parse<F: Field<Elem = E>>(f: &F, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 8 {
            return Err(Error::parse(s, format!("expected 8 comma-separated coordinates, got {}", parts.len())));
        }
        let coords: Vec<E> = parts.iter().map(|p| f.parse_literal(p)).collect::<Result<_>>()?;
        Ok(Self::from_coords(coords.try_into().ok().expect("length checked")))
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        self.coords()
            .iter()
            .map(|c| f.format_literal(c))
            .collect::<Vec<_>>()
            .join(",")
    }
}
