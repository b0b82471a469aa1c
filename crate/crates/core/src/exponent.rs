//! Extended-real quasi-norm exponents and the elementary arithmetic on them.
//!
//! All exponents live in `(0, ∞]`. The conventions `1/∞ = 0` and `t^0 = 1`
//! are exact here (`f64` division by `INFINITY` yields `0.0` exactly), so a
//! single evaluation routine covers finite and infinite parameters.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A quasi-norm exponent: a finite positive real or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const INF: Exponent = Exponent(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "exponent must be positive or inf, got {value}"
            )));
        }
        Ok(Exponent(value))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// `1/p`, exactly `0` when `p = ∞`.
    pub fn reciprocal(self) -> f64 {
        if self.0.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }

    /// Parse `"inf"` (or `"∞"`) or a positive decimal / fraction like `1/2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") || s == "∞" {
            return Ok(Self::INF);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad exponent {s:?}")))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad exponent {s:?}")))?;
            return Self::new(num / den);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad exponent {s:?}")))?;
        Self::new(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(v) => Exponent::new(v).map_err(D::Error::custom),
            Raw::Str(s) => Exponent::parse(&s).map_err(D::Error::custom),
        }
    }
}

/// The four exponents of an embedding `ℓ_p^b(ℓ_q^d) -> ℓ_r^b(ℓ_u^d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
    pub u: Exponent,
}

impl ExponentTuple {
    pub fn new(p: Exponent, q: Exponent, r: Exponent, u: Exponent) -> Self {
        Self { p, q, r, u }
    }

    /// `p <= r` and `q <= u`: the identity is a norm-1 embedding.
    pub fn is_embedding_monotone(&self) -> bool {
        self.p.get() <= self.r.get() && self.q.get() <= self.u.get()
    }

    /// `1/p - 1/r`.
    pub fn outer_gap(&self) -> f64 {
        self.p.reciprocal() - self.r.reciprocal()
    }

    /// `1/q - 1/u`.
    pub fn inner_gap(&self) -> f64 {
        self.q.reciprocal() - self.u.reciprocal()
    }

    /// Exponent that makes the target `ℓ_r^b(ℓ_u^d)` a γ-normed space:
    /// `γ = min{1, r, u}`.
    pub fn target_gamma(&self) -> f64 {
        1f64.min(self.r.get()).min(self.u.get())
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={} r={} u={}", self.p, self.q, self.r, self.u)
    }
}

/// Smallest constant `α` with `‖x+y‖ ≤ α(‖x‖+‖y‖)` under our convention:
/// `α = 1` for a genuine norm, `α = 2^{1/γ−1}` for a γ-norm with `γ < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiNormConstant {
    pub alpha: f64,
}

/// `quasi_norm_constant(γ) = 1` for `γ ≥ 1`, else `2^{1/γ − 1}`.
pub fn quasi_norm_constant(gamma: Exponent) -> QuasiNormConstant {
    let g = gamma.get();
    let alpha = if g >= 1.0 {
        1.0
    } else {
        2f64.powf(1.0 / g - 1.0)
    };
    QuasiNormConstant { alpha }
}

/// Quasi-norm constant of the mixed space `ℓ_r(ℓ_u)`.
pub fn mixed_quasi_norm_constant(r: Exponent, u: Exponent) -> QuasiNormConstant {
    let gamma = 1f64.min(r.get()).min(u.get());
    quasi_norm_constant(Exponent::new(gamma).expect("gamma positive"))
}
