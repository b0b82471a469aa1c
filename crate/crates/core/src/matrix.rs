//! `b×d` real matrices and the mixed quasi-norm `‖·‖_{p,q}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;

/// A `b×d` matrix of finite reals, the ambient object for mixed norms.
/// Rows are the outer index, columns the inner one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedMatrix {
    pub b: usize,
    pub d: usize,
    /// Row-major entries, length `b*d`.
    pub entries: Vec<f64>,
}

impl MixedMatrix {
    pub fn new(b: usize, d: usize, entries: Vec<f64>) -> Result<Self> {
        if b == 0 || d == 0 {
            return Err(Error::InvalidParameter(format!(
                "matrix dimensions must be positive, got {b}x{d}"
            )));
        }
        if entries.len() != b * d {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for a {b}x{d} matrix, got {}",
                b * d,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(Self { b, d, entries })
    }

    pub fn zeros(b: usize, d: usize) -> Self {
        Self {
            b,
            d,
            entries: vec![0.0; b * d],
        }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.d..(i + 1) * self.d]
    }

    /// Nested `[[row], [row], ...]` form used in certificate JSON.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.b).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let b = rows.len();
        if b == 0 {
            return Err(Error::InvalidParameter("empty matrix".into()));
        }
        let d = rows[0].len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        Self::new(b, d, rows.concat())
    }
}

/// `ℓ_p` norm of a slice, with max-replacement for `p = ∞`.
pub fn lp_norm(xs: &[f64], p: Exponent) -> f64 {
    if p.is_infinite() {
        return xs.iter().fold(0.0, |m, &x| m.max(x.abs()));
    }
    let pv = p.get();
    if pv == 1.0 {
        xs.iter().map(|x| x.abs()).sum()
    } else if pv == 2.0 {
        xs.iter().map(|x| x * x).sum::<f64>().sqrt()
    } else {
        let s: f64 = xs.iter().map(|x| x.abs().powf(pv)).sum();
        if s == 0.0 {
            0.0
        } else {
            s.powf(1.0 / pv)
        }
    }
}

/// Mixed (quasi-)norm `(Σ_i (Σ_j |x_{ij}|^q)^{p/q})^{1/p}` with the usual
/// max-replacement when `p = ∞` or `q = ∞`. Total on valid inputs; zero
/// exactly when the matrix is zero.
pub fn mixed_norm(x: &MixedMatrix, p: Exponent, q: Exponent) -> f64 {
    mixed_norm_slice(&x.entries, x.b, x.d, p, q)
}

/// Same as [`mixed_norm`] on a raw row-major slice.
pub fn mixed_norm_slice(entries: &[f64], b: usize, d: usize, p: Exponent, q: Exponent) -> f64 {
    debug_assert_eq!(entries.len(), b * d);
    if p.is_infinite() {
        let mut m: f64 = 0.0;
        for i in 0..b {
            m = m.max(lp_norm(&entries[i * d..(i + 1) * d], q));
        }
        m
    } else {
        let pv = p.get();
        let mut s = 0.0f64;
        for i in 0..b {
            let row = lp_norm(&entries[i * d..(i + 1) * d], q);
            if pv == 1.0 {
                s += row;
            } else if pv == 2.0 {
                s += row * row;
            } else if row > 0.0 {
                s += row.powf(pv);
            }
        }
        if s == 0.0 {
            0.0
        } else if pv == 1.0 {
            s
        } else if pv == 2.0 {
            s.sqrt()
        } else {
            s.powf(1.0 / pv)
        }
    }
}

/// `‖x - y‖_{p,q}` without materializing the difference.
pub fn mixed_norm_diff(x: &MixedMatrix, y: &MixedMatrix, p: Exponent, q: Exponent) -> f64 {
    debug_assert_eq!((x.b, x.d), (y.b, y.d));
    let d = x.d;
    let row_norm = |i: usize| -> f64 {
        let xr = &x.entries[i * d..(i + 1) * d];
        let yr = &y.entries[i * d..(i + 1) * d];
        if q.is_infinite() {
            let mut m: f64 = 0.0;
            for j in 0..d {
                m = m.max((xr[j] - yr[j]).abs());
            }
            m
        } else {
            let qv = q.get();
            let mut s = 0.0;
            for j in 0..d {
                let a = (xr[j] - yr[j]).abs();
                if qv == 1.0 {
                    s += a;
                } else if qv == 2.0 {
                    s += a * a;
                } else if a > 0.0 {
                    s += a.powf(qv);
                }
            }
            if s == 0.0 {
                0.0
            } else if qv == 1.0 {
                s
            } else if qv == 2.0 {
                s.sqrt()
            } else {
                s.powf(1.0 / qv)
            }
        }
    };
    if p.is_infinite() {
        (0..x.b).fold(0.0f64, |m, i| m.max(row_norm(i)))
    } else {
        let pv = p.get();
        let mut s = 0.0;
        for i in 0..x.b {
            let rn = row_norm(i);
            if pv == 1.0 {
                s += rn;
            } else if pv == 2.0 {
                s += rn * rn;
            } else if rn > 0.0 {
                s += rn.powf(pv);
            }
        }
        if s == 0.0 {
            0.0
        } else if pv == 1.0 {
            s
        } else if pv == 2.0 {
            s.sqrt()
        } else {
            s.powf(1.0 / pv)
        }
    }
}
