use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Textual description of a coefficient field.
///
/// Grammar: `C`, `Q`, `F:p`, `F:p^k`, or `F:p^k:c0,c1,...,1` where the last
/// form fixes the modulus by its ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Complex,
    Rational,
    Prime(u64),
    Extension {
        p: u64,
        k: u32,
        modulus: Option<Vec<u64>>,
    },
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Complex | FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
            FieldSpec::Extension { p, .. } => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_) | FieldSpec::Extension { .. })
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidFieldSpec {
            spec: s.to_string(),
            reason,
        };
        let t = s.trim();
        match t {
            "C" => return Ok(FieldSpec::Complex),
            "Q" => return Ok(FieldSpec::Rational),
            _ => {}
        }
        let body = t
            .strip_prefix("F:")
            .ok_or_else(|| bad("expected C, Q, F:p, F:p^k or F:p^k:modulus".into()))?;
        let mut parts = body.splitn(2, ':');
        let field_part = parts.next().unwrap_or_default();
        let modulus_part = parts.next();
        let (p_str, k_str) = match field_part.split_once('^') {
            Some((p, k)) => (p, Some(k)),
            None => (field_part, None),
        };
        let p: u64 = p_str
            .parse()
            .map_err(|_| bad(format!("`{p_str}` is not an integer")))?;
        if !is_prime(p) {
            let hint = perfect_power_hint(p)
                .map(|(b, e)| format!("; use F:{b}^{e}"))
                .unwrap_or_default();
            return Err(bad(format!("{p} is not prime{hint}")));
        }
        let k: u32 = match k_str {
            Some(k) => k
                .parse()
                .map_err(|_| bad(format!("`{k}` is not a valid extension degree")))?,
            None => 1,
        };
        if k == 0 {
            return Err(bad("extension degree must be at least 1".into()));
        }
        let modulus = match modulus_part {
            None => None,
            Some(m) => {
                let coeffs = m
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u64>()
                            .map_err(|_| bad(format!("bad modulus coefficient `{c}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(coeffs)
            }
        };
        if k == 1 && modulus.is_none() {
            return Ok(FieldSpec::Prime(p));
        }
        Ok(FieldSpec::Extension { p, k, modulus })
    }
}

fn perfect_power_hint(n: u64) -> Option<(u64, u32)> {
    (2..64u32).rev().find_map(|e| {
        let b = (n as f64).powf(1.0 / e as f64).round() as u64;
        (b >= 2 && is_prime(b) && b.checked_pow(e) == Some(n)).then_some((b, e))
    })
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Complex => write!(f, "C"),
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F:{p}"),
            FieldSpec::Extension { p, k, modulus } => {
                write!(f, "F:{p}^{k}")?;
                if let Some(m) = modulus {
                    let m: Vec<String> = m.iter().map(u64::to_string).collect();
                    write!(f, ":{}", m.join(","))?;
                }
                Ok(())
            }
        }
    }
}

impl From<FieldSpec> for String {
    fn from(s: FieldSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
