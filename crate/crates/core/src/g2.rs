//! The automorphism group G2 of the split octonions: generators, words,
//! eigenvalues, orbit classification and sampling.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::octonion::{cross, dot, Octonion};

pub type Mat3<E> = [[E; 3]; 3];
pub type Mat8<E> = Vec<Vec<E>>;

fn det3<F: Field>(f: &F, m: &Mat3<F::Elem>) -> F::Elem {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        f.sub(&f.mul(&m[r1][c1], &m[r2][c2]), &f.mul(&m[r1][c2], &m[r2][c1]))
    };
    let t0 = f.mul(&m[0][0], &minor(1, 2, 1, 2));
    let t1 = f.mul(&m[0][1], &minor(1, 2, 0, 2));
    let t2 = f.mul(&m[0][2], &minor(1, 2, 0, 1));
    f.add(&f.sub(&t0, &t1), &t2)
}

fn inv3<F: Field>(f: &F, m: &Mat3<F::Elem>) -> Result<Mat3<F::Elem>> {
    let d = f.inv(&det3(f, m))?;
    let cof = |i: usize, j: usize| {
        let (r1, r2) = ((i + 1) % 3, (i + 2) % 3);
        let (c1, c2) = ((j + 1) % 3, (j + 2) % 3);
        f.sub(&f.mul(&m[r1][c1], &m[r2][c2]), &f.mul(&m[r1][c2], &m[r2][c1]))
    };
    // inverse = adjugate / det, adjugate = cofactor transpose
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| f.mul(&cof(j, i), &d))))
}

fn mul3<F: Field>(f: &F, a: &Mat3<F::Elem>, b: &Mat3<F::Elem>) -> Mat3<F::Elem> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&a[i][k], &b[k][j])))
        })
    })
}

fn identity3<F: Field>(f: &F) -> Mat3<F::Elem> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { f.one() } else { f.zero() }))
}

/// Row vector times matrix.
fn row_times<F: Field>(f: &F, u: &[F::Elem; 3], m: &Mat3<F::Elem>) -> [F::Elem; 3] {
    std::array::from_fn(|j| (0..3).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&u[i], &m[i][j]))))
}

fn transpose3<E: Clone>(m: &Mat3<E>) -> Mat3<E> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

fn scale3<F: Field>(f: &F, s: &F::Elem, u: &[F::Elem; 3]) -> [F::Elem; 3] {
    std::array::from_fn(|i| f.mul(s, &u[i]))
}

fn add3<F: Field>(f: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> [F::Elem; 3] {
    std::array::from_fn(|i| f.add(&a[i], &b[i]))
}

fn neg3<F: Field>(f: &F, a: &[F::Elem; 3]) -> [F::Elem; 3] {
    std::array::from_fn(|i| f.neg(&a[i]))
}

fn is_zero3<F: Field>(f: &F, a: &[F::Elem; 3]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

fn is_identity3<F: Field>(f: &F, m: &Mat3<F::Elem>) -> bool {
    let id = identity3(f);
    (0..3).all(|i| (0..3).all(|j| f.eq(&m[i][j], &id[i][j])))
}

fn check_det_one<F: Field>(f: &F, g: &Mat3<F::Elem>) -> Result<()> {
    if f.eq(&det3(f, g), &f.one()) {
        Ok(())
    } else {
        Err(Error::DeterminantNotOne)
    }
}

/// `[[α, u·g], [v·g^(-T), β]]` for `g` of determinant one.
pub fn sl3_action<F: Field>(f: &F, g: &Mat3<F::Elem>, a: &Octonion<F::Elem>) -> Result<Octonion<F::Elem>> {
    check_det_one(f, g)?;
    let g_inv = inv3(f, g)?;
    Ok(Octonion::new(
        a.alpha.clone(),
        row_times(f, &a.u, g),
        row_times(f, &a.v, &transpose3(&g_inv)),
        a.beta.clone(),
    ))
}

fn delta1_apply<F: Field>(f: &F, u: &[F::Elem; 3], a: &Octonion<F::Elem>) -> Octonion<F::Elem> {
    let uv = dot(f, u, &a.v);
    let coeff = f.sub(&f.sub(&a.alpha, &a.beta), &uv);
    Octonion::new(
        f.sub(&a.alpha, &uv),
        add3(f, &scale3(f, &coeff, u), &a.u),
        add3(f, &a.v, &neg3(f, &cross(f, &a.u, u))),
        f.add(&a.beta, &uv),
    )
}

fn delta2_apply<F: Field>(f: &F, v: &[F::Elem; 3], a: &Octonion<F::Elem>) -> Octonion<F::Elem> {
    let uv = dot(f, &a.u, v);
    let coeff = f.sub(&f.sub(&a.beta, &a.alpha), &uv);
    Octonion::new(
        f.add(&a.alpha, &uv),
        add3(f, &a.u, &cross(f, &a.v, v)),
        add3(f, &scale3(f, &coeff, v), &a.v),
        f.sub(&a.beta, &uv),
    )
}

fn hbar_apply<F: Field>(f: &F, a: &Octonion<F::Elem>) -> Octonion<F::Elem> {
    Octonion::new(a.beta.clone(), neg3(f, &a.v), neg3(f, &a.u), a.alpha.clone())
}

/// A generator of G2.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator<E> {
    Sl3(Mat3<E>),
    Delta1([E; 3]),
    Delta2([E; 3]),
    HBar,
}

impl<E: Clone> Generator<E> {
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, a: &Octonion<E>) -> Result<Octonion<E>> {
        Ok(match self {
            Generator::Sl3(g) => sl3_action(f, g, a)?,
            Generator::Delta1(u) => delta1_apply(f, u, a),
            Generator::Delta2(v) => delta2_apply(f, v, a),
            Generator::HBar => hbar_apply(f, a),
        })
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Result<Self> {
        Ok(match self {
            Generator::Sl3(g) => Generator::Sl3(inv3(f, g)?),
            Generator::Delta1(u) => Generator::Delta1(neg3(f, u)),
            Generator::Delta2(v) => Generator::Delta2(neg3(f, v)),
            Generator::HBar => Generator::HBar,
        })
    }

    /// Matrix of the generator in the basis `e1, u1, u2, u3, v1, v2, v3, e2`.
    pub fn matrix<F: Field<Elem = E>>(&self, f: &F) -> Result<Mat8<E>> {
        let images: Vec<[E; 8]> = (0..8)
            .map(|c| self.apply(f, &Octonion::basis(f, c)).map(|x| x.coords()))
            .collect::<Result<_>>()?;
        Ok((0..8).map(|r| (0..8).map(|c| images[c][r].clone()).collect()).collect())
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        let vec = |x: &[E; 3]| Value::Array(x.iter().map(|c| f.to_json(c)).collect());
        match self {
            Generator::Sl3(g) => json!({ "SL3": g.iter().map(vec).collect::<Vec<_>>() }),
            Generator::Delta1(u) => json!({ "Delta1": vec(u) }),
            Generator::Delta2(v) => json!({ "Delta2": vec(v) }),
            Generator::HBar => json!("HBar"),
        }
    }

    pub fn from_json<F: Field<Elem = E>>(f: &F, v: &Value) -> Result<Self> {
        let bad = |why: &str| Error::parse(v.to_string(), why);
        let vec3 = |x: &Value| -> Result<[E; 3]> {
            let items = x
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| bad("expected a 3-vector"))?;
            let els: Vec<E> = items.iter().map(|c| f.from_json(c)).collect::<Result<_>>()?;
            Ok(els.try_into().ok().expect("length checked"))
        };
        if v.as_str() == Some("HBar") {
            return Ok(Generator::HBar);
        }
        let obj = v
            .as_object()
            .filter(|o| o.len() == 1)
            .ok_or_else(|| bad("expected \"HBar\" or a one-key object"))?;
        let (key, body) = obj.iter().next().expect("one key");
        match key.as_str() {
            "Delta1" => Ok(Generator::Delta1(vec3(body)?)),
            "Delta2" => Ok(Generator::Delta2(vec3(body)?)),
            "SL3" => {
                let rows = body
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| bad("SL3 expects a 3×3 matrix"))?;
                let rows: Vec<[E; 3]> = rows.iter().map(vec3).collect::<Result<_>>()?;
                let g: Mat3<E> = rows.try_into().ok().expect("length checked");
                check_det_one(f, &g)?;
                Ok(Generator::Sl3(g))
            }
            other => Err(bad(&format!("unknown generator `{other}`"))),
        }
    }
}

fn mul8<F: Field>(f: &F, a: &Mat8<F::Elem>, b: &Mat8<F::Elem>) -> Mat8<F::Elem> {
    (0..8)
        .map(|i| {
            (0..8)
                .map(|j| (0..8).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

fn identity8<F: Field>(f: &F) -> Mat8<F::Elem> {
    (0..8)
        .map(|i| (0..8).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

fn row_norm<F: Field>(f: &F, m: &Mat8<F::Elem>) -> f64 {
    m.iter().map(|row| row.iter().map(|x| f.magnitude(x)).sum::<f64>()).fold(0.0, f64::max)
}

/// Rounding scale of a word's matrix: however the product is associated,
/// its error is bounded by the prefix and suffix norms at each split.
fn word_rounding<F: Field>(f: &F, word: &[Generator<F::Elem>]) -> Result<f64> {
    if f.tolerance() == 0.0 {
        return Ok(0.0);
    }
    let mats = word.iter().map(|g| g.matrix(f)).collect::<Result<Vec<_>>>()?;
    let mut suffix = vec![1.0; mats.len() + 1];
    let mut acc = identity8(f);
    for (i, m) in mats.iter().enumerate().rev() {
        acc = mul8(f, m, &acc);
        suffix[i] = row_norm(f, &acc);
    }
    let mut prefix = identity8(f);
    let mut total = 0.0;
    for (i, m) in mats.iter().enumerate() {
        prefix = mul8(f, &prefix, m);
        total += row_norm(f, &prefix) * suffix[i + 1];
    }
    Ok(f.rounding_scale(8.0 * total))
}

/// An element of G2 as a generator word together with its matrix.
///
/// The word `[g1, ..., gk]` denotes `g1 ∘ ... ∘ gk`, so `gk` acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism<E> {
    pub matrix: Mat8<E>,
    pub word: Vec<Generator<E>>,
}

impl<E: Clone> Automorphism<E> {
    pub fn identity<F: Field<Elem = E>>(f: &F) -> Self {
        Self { matrix: identity8(f), word: Vec::new() }
    }

    pub fn from_word<F: Field<Elem = E>>(f: &F, word: Vec<Generator<E>>) -> Result<Self> {
        let mut matrix = identity8(f);
        for g in &word {
            matrix = mul8(f, &matrix, &g.matrix(f)?);
        }
        Ok(Self { matrix, word })
    }

    pub fn sl3<F: Field<Elem = E>>(f: &F, g: Mat3<E>) -> Result<Self> {
        check_det_one(f, &g)?;
        Self::from_word(f, vec![Generator::Sl3(g)])
    }

    pub fn delta1<F: Field<Elem = E>>(f: &F, u: [E; 3]) -> Self {
        Self::from_word(f, vec![Generator::Delta1(u)]).expect("δ1 is always defined")
    }

    pub fn delta2<F: Field<Elem = E>>(f: &F, v: [E; 3]) -> Self {
        Self::from_word(f, vec![Generator::Delta2(v)]).expect("δ2 is always defined")
    }

    pub fn hbar<F: Field<Elem = E>>(f: &F) -> Self {
        Self::from_word(f, vec![Generator::HBar]).expect("ħ is always defined")
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Self { matrix: mul8(f, &self.matrix, &other.matrix), word }
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, a: &Octonion<E>) -> Octonion<E> {
        let x = a.coords();
        Octonion::from_coords(std::array::from_fn(|r| {
            (0..8).fold(f.zero(), |acc, c| f.add(&acc, &f.mul(&self.matrix[r][c], &x[c])))
        }))
    }

    pub fn invert<F: Field<Elem = E>>(&self, f: &F) -> Result<Self> {
        let word = self
            .word
            .iter()
            .rev()
            .map(|g| g.inverse(f))
            .collect::<Result<Vec<_>>>()?;
        Self::from_word(f, word)
    }

    pub fn is_identity_word(&self) -> bool {
        self.word.is_empty()
    }

    /// Checks the automorphism invariants and returns a description of every
    /// violation: multiplicativity on all 64 basis pairs, compatibility with
    /// conjugation, preservation of trace, norm and the polar form, and
    /// agreement of the stored matrix with the word.
    pub fn violations<F: Field<Elem = E>>(&self, f: &F) -> Vec<String> {
        let mut out = Vec::new();
        let basis: Vec<Octonion<E>> = (0..8).map(|i| Octonion::basis(f, i)).collect();
        let images: Vec<Octonion<E>> = basis.iter().map(|b| self.apply(f, b)).collect();
        let mags: Vec<f64> = images.iter().map(|x| x.magnitude(f).max(1.0)).collect();
        // errors in the matrix entries reach products through either factor
        let r = word_rounding(f, &self.word).unwrap_or(0.0);
        let pair = |i: usize, j: usize| 8.0 * (mags[i] * mags[j] + r * (mags[i] + mags[j]));
        for i in 0..8 {
            let scale = pair(i, i);
            if !self.apply(f, &basis[i].conj(f)).eq_scaled(f, &images[i].conj(f), scale) {
                out.push(format!("conjugation not preserved on basis element {i}"));
            }
            if !f.eq_scaled(&images[i].trace(f), &basis[i].trace(f), scale) {
                out.push(format!("trace not preserved on basis element {i}"));
            }
            if !f.eq_scaled(&images[i].norm(f), &basis[i].norm(f), scale) {
                out.push(format!("norm not preserved on basis element {i}"));
            }
            for j in 0..8 {
                let scale = pair(i, j);
                let lhs = self.apply(f, &basis[i].mul(f, &basis[j]));
                let rhs = images[i].mul(f, &images[j]);
                if !lhs.eq_scaled(f, &rhs, scale) {
                    out.push(format!("not multiplicative on basis pair ({i}, {j})"));
                }
                let q = images[i].qform(f, &images[j]);
                if !f.eq_scaled(&q, &basis[i].qform(f, &basis[j]), scale) {
                    out.push(format!("polar form not preserved on basis pair ({i}, {j})"));
                }
            }
        }
        match Self::from_word(f, self.word.clone()) {
            Ok(rebuilt) => {
                let scale = mags.iter().cloned().fold(1.0, f64::max).max(r);
                let agree = (0..8).all(|i| {
                    (0..8).all(|j| f.eq_scaled(&rebuilt.matrix[i][j], &self.matrix[i][j], scale))
                });
                if !agree {
                    out.push("matrix does not match the word".into());
                }
            }
            Err(e) => out.push(format!("word is invalid: {e}")),
        }
        out
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        json!({
            "word": self.word.iter().map(|g| g.to_json(f)).collect::<Vec<_>>(),
            "matrix": self
                .matrix
                .iter()
                .map(|row| row.iter().map(|c| f.to_json(c)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    /// Rebuilds from the word; a supplied matrix must agree with it.
    pub fn from_json<F: Field<Elem = E>>(f: &F, v: &Value) -> Result<Self> {
        let word = v
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse(v.to_string(), "an automorphism needs a `word` array"))?
            .iter()
            .map(|g| Generator::from_json(f, g))
            .collect::<Result<Vec<_>>>()?;
        let a = Self::from_word(f, word)?;
        if let Some(m) = v.get("matrix") {
            let rows = m
                .as_array()
                .filter(|r| r.len() == 8)
                .ok_or_else(|| Error::parse(m.to_string(), "matrix must be 8×8"))?;
            for (r, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|x| x.len() == 8)
                    .ok_or_else(|| Error::parse(m.to_string(), "matrix must be 8×8"))?;
                for (c, x) in row.iter().enumerate() {
                    if !f.eq(&f.from_json(x)?, &a.matrix[r][c]) {
                        return Err(Error::InvalidArgument(format!(
                            "matrix entry ({r}, {c}) does not match the word"
                        )));
                    }
                }
            }
        }
        Ok(a)
    }
}

/// The two roots of `ξ² − tr(a)ξ + n(a)`, ordered, with a flag telling
/// whether both lie in the working field.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair<E> {
    pub lambda1: E,
    pub lambda2: E,
    pub in_base_field: bool,
}

/// A canonical representative of a G2-orbit.
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitLabel<E> {
    /// The single point `α·1`.
    Scalar(E),
    /// The orbit of `α1·e1 + α2·e2`, `α1 < α2`.
    O2(E, E),
    /// The orbit of `α·1 + u1`.
    O3(E),
}

impl<E: Clone> OrbitLabel<E> {
    /// Builds an O2 label with the parameters put in order.
    pub fn o2<F: Field<Elem = E>>(f: &F, a: E, b: E) -> Result<Self> {
        match f.cmp(&a, &b) {
            Ordering::Less => Ok(OrbitLabel::O2(a, b)),
            Ordering::Greater => Ok(OrbitLabel::O2(b, a)),
            Ordering::Equal => Err(Error::InvalidArgument("O2 parameters must be distinct".into())),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            OrbitLabel::Scalar(_) => "scalar",
            OrbitLabel::O2(..) => "O2",
            OrbitLabel::O3(_) => "O3",
        }
    }

    pub fn params(&self) -> Vec<E> {
        match self {
            OrbitLabel::Scalar(a) | OrbitLabel::O3(a) => vec![a.clone()],
            OrbitLabel::O2(a, b) => vec![a.clone(), b.clone()],
        }
    }

    /// The same label with parameters embedded into the extension `k` of `f`.
    pub fn lift<F: Field<Elem = E>>(&self, f: &F, k: &F) -> Self {
        match self {
            OrbitLabel::Scalar(a) => OrbitLabel::Scalar(f.embed(k, a)),
            OrbitLabel::O2(a, b) => OrbitLabel::o2(k, f.embed(k, a), f.embed(k, b))
                .expect("embedding keeps distinct parameters distinct"),
            OrbitLabel::O3(a) => OrbitLabel::O3(f.embed(k, a)),
        }
    }

    pub fn representative<F: Field<Elem = E>>(&self, f: &F) -> Octonion<E> {
        match self {
            OrbitLabel::Scalar(a) => Octonion::scalar(f, a.clone()),
            OrbitLabel::O2(a, b) => Octonion::new(a.clone(), zero3(f), zero3(f), b.clone()),
            OrbitLabel::O3(a) => {
                let mut x = Octonion::scalar(f, a.clone());
                x.u[0] = f.one();
                x
            }
        }
    }

    pub fn eq<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.kind() == other.kind()
            && self.params().iter().zip(other.params().iter()).all(|(a, b)| f.eq(a, b))
    }

    /// Label equality with a common error scale (see [`Field::eq_scaled`]).
    pub fn eq_scaled<F: Field<Elem = E>>(&self, f: &F, other: &Self, scale: f64) -> bool {
        self.kind() == other.kind()
            && self
                .params()
                .iter()
                .zip(other.params().iter())
                .all(|(a, b)| f.eq_scaled(a, b, scale))
    }

    pub fn cmp<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Ordering {
        let rank = |l: &Self| match l {
            OrbitLabel::Scalar(_) => 0,
            OrbitLabel::O2(..) => 1,
            OrbitLabel::O3(_) => 2,
        };
        rank(self).cmp(&rank(other)).then_with(|| {
            self.params()
                .iter()
                .zip(other.params().iter())
                .map(|(a, b)| f.cmp(a, b))
                .find(|c| *c != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        json!({
            "kind": self.kind(),
            "params": self.params().iter().map(|p| f.to_json(p)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json<F: Field<Elem = E>>(f: &F, v: &Value) -> Result<Self> {
        let bad = |why: &str| Error::parse(v.to_string(), why);
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("missing `kind`"))?;
        let params: Vec<E> = v
            .get("params")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `params`"))?
            .iter()
            .map(|p| f.from_json(p))
            .collect::<Result<_>>()?;
        Self::from_parts(f, kind, params).map_err(|e| match e {
            Error::InvalidArgument(why) => bad(&why),
            other => other,
        })
    }

    /// Builds a label from a kind name (`scalar`, `O2`, `O3`) and parameters.
    pub fn from_parts<F: Field<Elem = E>>(f: &F, kind: &str, params: Vec<E>) -> Result<Self> {
        let mut it = params.into_iter();
        let arity = |n: usize, got: usize| {
            Error::InvalidArgument(format!("{kind} takes {n} parameter(s), got {got}"))
        };
        let count = it.len();
        match kind.to_ascii_lowercase().as_str() {
            "scalar" if count == 1 => Ok(OrbitLabel::Scalar(it.next().expect("one"))),
            "o3" if count == 1 => Ok(OrbitLabel::O3(it.next().expect("one"))),
            "o2" if count == 2 => {
                let a = it.next().expect("two");
                let b = it.next().expect("two");
                Self::o2(f, a, b)
            }
            "scalar" | "o3" => Err(arity(1, count)),
            "o2" => Err(arity(2, count)),
            _ => Err(Error::InvalidArgument(format!(
                "unknown orbit kind `{kind}` (expected scalar, O2 or O3)"
            ))),
        }
    }
}

fn zero3<F: Field>(f: &F) -> [F::Elem; 3] {
    [f.zero(), f.zero(), f.zero()]
}

/// Error scale for the trace and norm of `a`: their own size, or the
/// rounding error of the products that produced them if that is larger.
fn invariant_scale<F: Field>(f: &F, a: &Octonion<F::Elem>, t: &F::Elem, n: &F::Elem) -> f64 {
    let m = a.magnitude(f);
    let tm = f.magnitude(t);
    (tm * tm).max(f.magnitude(n)).max(f.rounding_scale(4.0 * m * m))
}

/// Eigenvalues of `a` inside `k` itself; `NotSplit` if `k` lacks them.
pub fn split_eigenvalues<F: Field>(k: &F, a: &Octonion<F::Elem>) -> Result<(F::Elem, F::Elem)> {
    let t = a.trace(k);
    let n = a.norm(k);
    let not_split = || {
        Error::NotSplit(format!(
            "ξ² − ({})ξ + ({}) has no roots in {}",
            k.format_literal(&t),
            k.format_literal(&n),
            k.spec()
        ))
    };
    let ordered = |x: F::Elem, y: F::Elem| {
        if k.cmp(&x, &y) == Ordering::Greater {
            (y, x)
        } else {
            (x, y)
        }
    };
    if k.characteristic() == 2 {
        if k.is_zero(&t) {
            let r = k.sqrt_char2(&n)?;
            return Ok((r.clone(), r));
        }
        let list = k.roots(&[n.clone(), t.clone(), k.one()])?;
        return match list.roots.as_slice() {
            [x, y] => Ok(ordered(x.value.clone(), y.value.clone())),
            _ => Err(not_split()),
        };
    }
    let two = k.from_i64(2);
    let disc = k.sub(&k.mul(&t, &t), &k.mul(&k.from_i64(4), &n));
    if k.eq_scaled(&disc, &k.zero(), 4.0 * invariant_scale(k, a, &t, &n)) {
        let h = k.div(&t, &two)?;
        return Ok((h.clone(), h));
    }
    let s = k.sqrt(&disc).ok_or_else(not_split)?;
    let plus = k.add(&t, &s);
    let minus = k.sub(&t, &s);
    // take the larger-magnitude branch first and recover the other from the
    // product, which avoids cancellation on the complex backend
    let (big, small) = if k.magnitude(&minus) > k.magnitude(&plus) {
        (minus, plus)
    } else {
        (plus, minus)
    };
    let r1 = k.div(&big, &two)?;
    let r2 = if k.is_zero(&r1) { k.div(&small, &two)? } else { k.div(&n, &r1)? };
    Ok(ordered(r1, r2))
}

/// Lifts an octonion into the quadratic closure of `f`.
pub fn lift<F: Field>(f: &F, k: &F, a: &Octonion<F::Elem>) -> Octonion<F::Elem> {
    a.map(|c| f.embed(k, c))
}

/// Eigenvalues of `a`, computed in `f.quadratic_closure()` when necessary.
/// The returned values are elements of that closure.
pub fn eigenvalues<F: Field>(f: &F, a: &Octonion<F::Elem>) -> Result<Eigenpair<F::Elem>> {
    let k = f.quadratic_closure()?;
    let (lambda1, lambda2) = split_eigenvalues(&k, &lift(f, &k, a))?;
    let in_base_field =
        f.restrict(&k, &lambda1).is_some() && f.restrict(&k, &lambda2).is_some();
    Ok(Eigenpair { lambda1, lambda2, in_base_field })
}

fn is_scalar_multiple<F: Field>(k: &F, a: &Octonion<F::Elem>, lambda: &F::Elem) -> bool {
    let scale = a.magnitude(k).max(1.0);
    a.eq_scaled(k, &Octonion::scalar(k, lambda.clone()), scale)
}

/// Orbit label of an octonion over `k`, whose eigenvalues must lie in `k`.
pub fn classify_split<F: Field>(k: &F, a: &Octonion<F::Elem>) -> Result<OrbitLabel<F::Elem>> {
    let (l1, l2) = split_eigenvalues(k, a)?;
    if k.cmp(&l1, &l2) != Ordering::Equal {
        return Ok(OrbitLabel::O2(l1, l2));
    }
    if is_scalar_multiple(k, a, &l1) {
        Ok(OrbitLabel::Scalar(l1))
    } else {
        Ok(OrbitLabel::O3(l1))
    }
}

/// Orbit label of `a`; parameters live in `f.quadratic_closure()`.
pub fn classify<F: Field>(f: &F, a: &Octonion<F::Elem>) -> Result<OrbitLabel<F::Elem>> {
    let k = f.quadratic_closure()?;
    classify_split(&k, &lift(f, &k, a))
}

/// Membership test for a label and an octonion over the same field `k`:
/// trace and norm match the label and the scalar test agrees.
pub fn orbit_member_split<F: Field>(k: &F, label: &OrbitLabel<F::Elem>, x: &Octonion<F::Elem>) -> bool {
    let m = x.magnitude(k);
    let lin = label.params().iter().map(|p| k.magnitude(p)).fold(1.0, f64::max);
    let trace_norm = |a: &F::Elem, b: &F::Elem| {
        k.eq_scaled(&x.trace(k), &k.add(a, b), (2.0 * lin).max(k.rounding_scale(2.0 * m)))
            && k.eq_scaled(&x.norm(k), &k.mul(a, b), (lin * lin).max(k.rounding_scale(4.0 * m * m)))
    };
    match label {
        OrbitLabel::Scalar(a) => is_scalar_multiple(k, x, a),
        OrbitLabel::O2(a, b) => trace_norm(a, b),
        OrbitLabel::O3(a) => trace_norm(a, a) && !is_scalar_multiple(k, x, a),
    }
}

/// Membership test for `x` over `f` against a label over its quadratic closure.
pub fn orbit_member<F: Field>(f: &F, label: &OrbitLabel<F::Elem>, x: &Octonion<F::Elem>) -> Result<bool> {
    let k = f.quadratic_closure()?;
    Ok(orbit_member_split(&k, label, &lift(f, &k, x)))
}

fn random_vec<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R) -> [F::Elem; 3] {
    [f.random(rng), f.random(rng), f.random(rng)]
}

/// A random generator: an SL3 element built as a product of unit
/// triangular matrices, δ1/δ2 with a random parameter on a basis vector,
/// or ħ.
pub fn random_generator<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R) -> Generator<F::Elem> {
    let on_basis = |rng: &mut R| {
        let mut v = zero3(f);
        v[rng.gen_range(0..3)] = f.random(rng);
        v
    };
    match rng.gen_range(0..4) {
        0 => {
            let [a, b, c] = random_vec(f, rng);
            let [d, e, g] = random_vec(f, rng);
            let (o, z) = (f.one(), f.zero());
            let upper = [[o.clone(), a, b], [z.clone(), o.clone(), c], [z.clone(), z.clone(), o.clone()]];
            let lower = [[o.clone(), z.clone(), z.clone()], [d, o.clone(), z.clone()], [e, g, o]];
            Generator::Sl3(mul3(f, &upper, &lower))
        }
        1 => Generator::Delta1(on_basis(rng)),
        2 => Generator::Delta2(on_basis(rng)),
        _ => Generator::HBar,
    }
}

pub fn random_word<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R, len: usize) -> Vec<Generator<F::Elem>> {
    (0..len).map(|_| random_generator(f, rng)).collect()
}

/// Applies a word to `x`, rightmost generator first.
pub fn apply_word<F: Field>(
    f: &F,
    word: &[Generator<F::Elem>],
    x: &Octonion<F::Elem>,
) -> Result<Octonion<F::Elem>> {
    word.iter().rev().try_fold(x.clone(), |acc, g| g.apply(f, &acc))
}

pub const MIN_WORD_LEN: usize = 4;
pub const MAX_WORD_LEN: usize = 12;

/// `count` pseudo-random points of the orbit, deterministic in `seed`.
pub fn sample_orbit<F: Field>(
    k: &F,
    label: &OrbitLabel<F::Elem>,
    count: usize,
    seed: u64,
) -> Result<Vec<Octonion<F::Elem>>> {
    if let OrbitLabel::Scalar(_) = label {
        return Err(Error::InvalidArgument(
            "a scalar orbit is the single point α·1; nothing to sample".into(),
        ));
    }
    let rep = label.representative(k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(MIN_WORD_LEN..=MAX_WORD_LEN);
            apply_word(k, &random_word(k, &mut rng, len), &rep)
        })
        .collect()
}

/// An SL3 element `g` with `u·g = c1`, for nonzero `u`.
fn sl3_to_c1<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<Mat3<F::Elem>> {
    let pivot = (0..3)
        .find(|&i| !f.is_zero(&u[i]))
        .ok_or_else(|| Error::Transporter("zero vector has no SL3 image c1".into()))?;
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let unit = |i: usize| {
        let mut r = zero3(f);
        r[i] = f.one();
        r
    };
    let mut h = [u.clone(), unit(others[0]), unit(others[1])];
    let d = f.inv(&det3(f, &h))?;
    h[1] = scale3(f, &d, &h[1]);
    inv3(f, &h)
}

/// An automorphism carrying `a` to the representative of its orbit.
/// Requires the eigenvalues of `a` to lie in `f`.
pub fn transporter<F: Field>(
    f: &F,
    a: &Octonion<F::Elem>,
) -> Result<(Automorphism<F::Elem>, Octonion<F::Elem>)> {
    let label = classify_split(f, a)?;
    let target = label.representative(f);
    // generators in the order they act
    let mut steps: Vec<Generator<F::Elem>> = Vec::new();
    let mut push = |g: Generator<F::Elem>, b: &mut Octonion<F::Elem>| -> Result<()> {
        let trivial = match &g {
            Generator::Sl3(m) => is_identity3(f, m),
            Generator::Delta1(w) | Generator::Delta2(w) => is_zero3(f, w),
            Generator::HBar => false,
        };
        if !trivial {
            *b = g.apply(f, b)?;
            steps.push(g);
        }
        Ok(())
    };
    match &label {
        OrbitLabel::Scalar(_) => {}
        OrbitLabel::O2(l1, l2) => {
            // the idempotent p with a = l2 + (l1 − l2)p goes to e1
            let d = f.inv(&f.sub(l1, l2))?;
            let mut p = a.sub(f, &Octonion::scalar(f, l2.clone())).scale(f, &d);
            let s = if f.is_zero(&p.alpha) {
                f.neg(&f.inv(&p.beta)?)
            } else {
                f.inv(&p.alpha)?
            };
            push(Generator::Delta2(scale3(f, &s, &p.v)), &mut p)?;
            let diff = f.sub(&p.alpha, &p.beta);
            push(Generator::Delta1(scale3(f, &f.neg(&f.inv(&diff)?), &p.u)), &mut p)?;
            if f.is_zero(&p.alpha) {
                push(Generator::HBar, &mut p)?;
            }
        }
        OrbitLabel::O3(l) => {
            // the square-zero m = a − l goes to u1
            let mut m = a.sub(f, &Octonion::scalar(f, l.clone()));
            if !f.is_zero(&m.alpha) {
                let s = f.inv(&m.alpha)?;
                push(Generator::Delta2(scale3(f, &s, &m.v)), &mut m)?;
            } else if is_zero3(f, &m.u) {
                push(Generator::HBar, &mut m)?;
            }
            let g = sl3_to_c1(f, &m.u)?;
            push(Generator::Sl3(g), &mut m)?;
            let w = [f.zero(), m.v[2].clone(), f.neg(&m.v[1])];
            push(Generator::Delta1(w), &mut m)?;
        }
    }
    steps.reverse();
    let auto = Automorphism::from_word(f, steps)?;
    let image = auto.apply(f, a);
    let m = a.magnitude(f).max(1.0);
    let scale = target.magnitude(f).max(f.rounding_scale(m.powi(4)));
    if !image.eq_scaled(f, &target, scale) {
        return Err(Error::Transporter(format!(
            "construction reached {} instead of {}",
            image.format(f),
            target.format(f)
        )));
    }
    Ok((auto, target))
}
