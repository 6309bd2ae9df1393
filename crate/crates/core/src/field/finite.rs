use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde_json::Value;

use super::spec::is_prime;
use super::{eval_poly, exact_multiplicity, trim, Field, FieldSpec, Root, RootList};
use crate::error::{Error, Result};

/// Largest field searched exhaustively for polynomial roots.
pub const EXHAUSTIVE_ROOT_LIMIT: u64 = 1 << 16;

/// Largest field for which log/exp multiplication tables are built.
const TABLE_LIMIT: u64 = 1 << 16;

/// Codes are `u32` and products are taken in `u64`.
const SIZE_LIMIT: u64 = 1 << 31;

/// Largest extension scanned for a root of the base modulus.
const EMBED_SEARCH_LIMIT: u64 = 1 << 24;

/// Element of `F_{p^k}`, stored as its canonical integer encoding: the
/// coefficient vector over `F_p` (ascending powers of the generator) read
/// as a base-`p` integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u32);

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Closure {
    field: FiniteField,
    embed: Vec<u32>,
    restrict: HashMap<u32, u32>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus of degree `k`, ascending; empty for prime fields.
    modulus: Vec<u64>,
    explicit_modulus: bool,
    tables: Option<Tables>,
    closure: OnceLock<std::result::Result<Closure, Error>>,
}

/// The finite field `F_{p^k}`, either prime (`k = 1`) or a polynomial
/// extension of `F_p` modulo a monic irreducible polynomial.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.spec())
    }
}

// ---- polynomial helpers over F_p (ascending Vec<u64>) ----

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * mi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mulmod(&b, &b, m, p);
        }
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let r = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    poly_trim(r)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree `k` over F_p.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = (m.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    let x = vec![0, 1];
    // x^(p^i) mod m for i = 0..=k
    let mut frob = vec![poly_rem(&x, m, p)];
    for _ in 0..k {
        let last = frob.last().expect("nonempty");
        frob.push(poly_powmod(last, p, m, p));
    }
    if poly_sub(&frob[k as usize], &poly_rem(&x, m, p), p) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(k as u64).into_iter().all(|r| {
        let h = poly_sub(&frob[(k as u64 / r) as usize], &x, p);
        let g = poly_gcd(m, &h, p);
        g.len() == 1
    })
}

/// Lexicographically least monic irreducible polynomial of degree `k`:
/// the lower coefficients, read as a base-`p` integer with `c0` least
/// significant, are minimal.
pub(crate) fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for code in 0..count {
        let mut m = digits_of(code, p, k as usize);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn digits_of(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Builds `F_{p^k}`. With `modulus = None` and `k > 1` the least monic
    /// irreducible polynomial of degree `k` is used.
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        let spec_str = FieldSpec::Extension { p, k, modulus: modulus.clone() }.to_string();
        let bad = |reason: String| Error::InvalidFieldSpec { spec: spec_str.clone(), reason };
        if !is_prime(p) {
            return Err(bad(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(bad("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|q| *q <= SIZE_LIMIT)
            .ok_or_else(|| bad(format!("field order exceeds {SIZE_LIMIT}")))?;
        let explicit_modulus = modulus.is_some();
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(bad(format!("modulus must have degree {k}")));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(bad(format!("modulus coefficients must lie in [0, {p})")));
                }
                if m[k as usize] != 1 {
                    return Err(bad("modulus must be monic".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(bad("modulus is reducible".into()));
                }
                if k == 1 {
                    Vec::new()
                } else {
                    m
                }
            }
            None if k == 1 => Vec::new(),
            None => least_irreducible(p, k),
        };
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            explicit_modulus,
            tables: None,
            closure: OnceLock::new(),
        };
        if k > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FiniteField(Arc::new(inner)))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        match spec {
            FieldSpec::Prime(p) => Self::prime(*p),
            FieldSpec::Extension { p, k, modulus } => Self::new(*p, *k, modulus.clone()),
            _ => Err(Error::WrongBackend("a finite field spec")),
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Ascending coefficients of the modulus (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> Vec<u64> {
        if self.0.k == 1 {
            vec![0, 1]
        } else {
            self.0.modulus.clone()
        }
    }

    /// Coefficient vector of `a` over `F_p`.
    pub fn coefficients(&self, a: Fq) -> Vec<u64> {
        digits_of(a.0 as u64, self.0.p, self.0.k as usize)
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> Result<Fq> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::parse(
                format!("{coeffs:?}"),
                format!("at most {} coefficients expected", self.0.k),
            ));
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::parse(
                    format!("{coeffs:?}"),
                    format!("coefficient {c} not below {}", self.0.p),
                ));
            }
            code = code * self.0.p + c;
        }
        Ok(Fq(code as u32))
    }

    fn slow_mul(&self, a: Fq, b: Fq) -> Fq {
        let inner = &*self.0;
        if inner.k == 1 {
            return Fq((a.0 as u64 * b.0 as u64 % inner.p) as u32);
        }
        let pa = poly_trim(self.coefficients(a));
        let pb = poly_trim(self.coefficients(b));
        let r = poly_mulmod(&pa, &pb, &inner.modulus, inner.p);
        self.from_coefficients(&r).expect("reduced product")
    }

    fn closure_data(&self) -> Result<&Closure> {
        self.0
            .closure
            .get_or_init(|| build_closure(self))
            .as_ref()
            .map_err(Clone::clone)
    }
}

fn slow_pow(field: &FiniteField, a: Fq, mut e: u64) -> Fq {
    let mut acc = Fq(1);
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            acc = field.slow_mul(acc, base);
        }
        base = field.slow_mul(base, base);
        e >>= 1;
    }
    acc
}

fn build_tables(inner: &Inner) -> Tables {
    // a throwaway handle without tables so slow_mul is usable
    let probe = FiniteField(Arc::new(Inner {
        p: inner.p,
        k: inner.k,
        q: inner.q,
        modulus: inner.modulus.clone(),
        explicit_modulus: inner.explicit_modulus,
        tables: None,
        closure: OnceLock::new(),
    }));
    let q = inner.q;
    let order = q - 1;
    let factors = prime_factors(order);
    let generator = (2..q as u32)
        .map(Fq)
        .find(|&g| factors.iter().all(|r| slow_pow(&probe, g, order / r) != Fq(1)))
        .unwrap_or(Fq(1));
    let mut exp = vec![0u32; order as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = Fq(1);
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = x.0;
        log[x.0 as usize] = i as u32;
        x = probe.slow_mul(x, generator);
    }
    Tables { exp, log }
}

fn build_closure(base: &FiniteField) -> std::result::Result<Closure, Error> {
    let inner = &*base.0;
    let ext_k = inner.k * 2;
    let ext_q = inner.q.saturating_mul(inner.q);
    if ext_q > SIZE_LIMIT {
        return Err(Error::FieldTooLarge {
            size: ext_q,
            limit: SIZE_LIMIT,
            what: "the quadratic extension",
        });
    }
    let field = FiniteField::new(inner.p, ext_k, None)?;
    let embed: Vec<u32> = if inner.k == 1 {
        (0..inner.q as u32).collect()
    } else {
        if ext_q > EMBED_SEARCH_LIMIT {
            return Err(Error::FieldTooLarge {
                size: ext_q,
                limit: EMBED_SEARCH_LIMIT,
                what: "embedding into the quadratic extension",
            });
        }
        let modulus: Vec<Fq> = inner.modulus.iter().map(|&c| Fq(c as u32)).collect();
        let root = (0..ext_q as u32)
            .map(Fq)
            .find(|&x| field.is_zero(&eval_poly(&field, &modulus, &x)))
            .expect("the modulus splits in the degree-2k extension");
        let powers: Vec<Fq> = (0..inner.k).map(|i| field.pow(&root, i as u64)).collect();
        (0..inner.q as u32)
            .map(|code| {
                let coeffs = base.coefficients(Fq(code));
                let img = coeffs.iter().zip(&powers).fold(Fq(0), |acc, (&c, pw)| {
                    field.add(&acc, &field.mul(&Fq(c as u32), pw))
                });
                img.0
            })
            .collect()
    };
    let restrict = embed
        .iter()
        .enumerate()
        .map(|(code, &img)| (img, code as u32))
        .collect();
    Ok(Closure { field, embed, restrict })
}

impl Field for FiniteField {
    type Elem = Fq;

    fn spec(&self) -> FieldSpec {
        let inner = &*self.0;
        if inner.k == 1 {
            FieldSpec::Prime(inner.p)
        } else {
            FieldSpec::Extension {
                p: inner.p,
                k: inner.k,
                modulus: inner.explicit_modulus.then(|| inner.modulus.clone()),
            }
        }
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn size(&self) -> Option<u64> {
        Some(self.0.q)
    }

    fn zero(&self) -> Fq {
        Fq(0)
    }

    fn one(&self) -> Fq {
        Fq(1)
    }

    fn from_i64(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.0.p as i64) as u32)
    }

    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let inner = &*self.0;
        if inner.k == 1 {
            return Fq(((a.0 as u64 + b.0 as u64) % inner.p) as u32);
        }
        if inner.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let p = inner.p as u32;
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..inner.k {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Fq(out)
    }

    fn neg(&self, a: &Fq) -> Fq {
        let inner = &*self.0;
        if inner.k == 1 {
            return Fq(((inner.p - a.0 as u64) % inner.p) as u32);
        }
        if inner.p == 2 {
            return *a;
        }
        let p = inner.p as u32;
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..inner.k {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Fq(out)
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        match &self.0.tables {
            Some(t) => {
                let order = t.exp.len() as u32;
                let s = t.log[a.0 as usize] + t.log[b.0 as usize];
                Fq(t.exp[(if s >= order { s - order } else { s }) as usize])
            }
            None => self.slow_mul(*a, *b),
        }
    }

    fn inv(&self, a: &Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        Ok(match &inner.tables {
            Some(t) => {
                let order = t.exp.len() as u32;
                Fq(t.exp[((order - t.log[a.0 as usize]) % order) as usize])
            }
            None if inner.k == 1 => Fq(inv_mod(a.0 as u64, inner.p) as u32),
            None => slow_pow(self, *a, inner.q - 2),
        })
    }

    fn eq(&self, a: &Fq, b: &Fq) -> bool {
        a == b
    }

    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }

    fn cmp(&self, a: &Fq, b: &Fq) -> Ordering {
        a.0.cmp(&b.0)
    }

    /// Exhaustive evaluation over the whole field.
    fn roots(&self, coeffs: &[Fq]) -> Result<RootList<Fq>> {
        let coeffs = trim(self, coeffs);
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let q = self.0.q;
        if q > EXHAUSTIVE_ROOT_LIMIT {
            return Err(Error::FieldTooLarge {
                size: q,
                limit: EXHAUSTIVE_ROOT_LIMIT,
                what: "exhaustive root search",
            });
        }
        let degree = coeffs.len() - 1;
        let mut roots = Vec::new();
        let mut total = 0;
        for code in 0..q as u32 {
            if total == degree {
                break;
            }
            let x = Fq(code);
            if self.is_zero(&eval_poly(self, &coeffs, &x)) {
                let multiplicity = exact_multiplicity(self, &coeffs, &x);
                total += multiplicity;
                roots.push(Root { value: x, multiplicity });
            }
        }
        Ok(RootList {
            roots,
            complete_over_field: total == degree,
            warnings: Vec::new(),
        })
    }

    /// Tonelli–Shanks for odd order; the Frobenius inverse in characteristic 2.
    fn sqrt(&self, a: &Fq) -> Option<Fq> {
        if self.0.p == 2 {
            return self.sqrt_char2(a).ok();
        }
        if a.0 == 0 {
            return Some(Fq(0));
        }
        let q = self.0.q;
        if self.pow(a, (q - 1) / 2) != Fq(1) {
            return None;
        }
        let (mut s, mut odd) = (0u32, q - 1);
        while odd % 2 == 0 {
            odd /= 2;
            s += 1;
        }
        let non_residue = (2..q as u32)
            .map(Fq)
            .find(|z| self.pow(z, (q - 1) / 2) != Fq(1))
            .expect("odd-order fields contain non-squares");
        let mut m = s;
        let mut c = self.pow(&non_residue, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, odd.div_ceil(2));
        while t != Fq(1) {
            let mut i = 0;
            let mut t2 = t;
            while t2 != Fq(1) {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let b = self.pow(&c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(0..self.0.q) as u32)
    }

    fn elements(&self) -> Option<Vec<Fq>> {
        Some((0..self.0.q as u32).map(Fq).collect())
    }

    fn quadratic_closure(&self) -> Result<Self> {
        Ok(self.closure_data()?.field.clone())
    }

    fn embed(&self, _ext: &Self, a: &Fq) -> Fq {
        let closure = self.closure_data().expect("closure built before embedding");
        Fq(closure.embed[a.0 as usize])
    }

    fn restrict(&self, _ext: &Self, a: &Fq) -> Option<Fq> {
        let closure = self.closure_data().ok()?;
        closure.restrict.get(&a.0).map(|&c| Fq(c))
    }

    /// The unique square root in `F_{2^k}`, computed as `a^(2^(k-1))`.
    fn sqrt_char2(&self, a: &Fq) -> Result<Fq> {
        if self.0.p != 2 {
            return Err(Error::WrongBackend("a field of characteristic 2"));
        }
        Ok((1..self.0.k).fold(*a, |x, _| self.mul(&x, &x)))
    }

    fn to_json(&self, a: &Fq) -> Value {
        Value::from(a.0)
    }

    fn from_json(&self, v: &Value) -> Result<Fq> {
        match v {
            Value::Number(n) => {
                let n = n
                    .as_i64()
                    .ok_or_else(|| Error::parse(v.to_string(), "expected an integer"))?;
                self.parse_literal(&n.to_string())
            }
            Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .ok_or_else(|| Error::parse(v.to_string(), "coefficients must be nonnegative integers"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.from_coefficients(&coeffs)
            }
            Value::String(s) => self.parse_literal(s),
            _ => Err(Error::parse(v.to_string(), "expected an integer or coefficient array")),
        }
    }

    /// Integers are residues for prime fields (reduced mod p) and canonical
    /// codes in `[0, q)` for extension fields.
    fn parse_literal(&self, s: &str) -> Result<Fq> {
        let n: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::parse(s, "expected an integer"))?;
        if self.0.k == 1 {
            return Ok(self.from_i64(n));
        }
        if n < 0 || n as u64 >= self.0.q {
            return Err(Error::parse(s, format!("extension-field codes lie in [0, {})", self.0.q)));
        }
        Ok(Fq(n as u32))
    }

    fn format_literal(&self, a: &Fq) -> String {
        a.0.to_string()
    }
}
