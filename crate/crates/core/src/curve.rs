//! Bound curves `k ↦ (value, regime)` and the elementary entropy-number
//! calculus: the covering/packing sandwich, the ϑ-sum rule, and the
//! composition rule.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub index: usize,
    pub value: f64,
    pub regime: String,
}

/// A finite map `k ↦ (value, regime)`: a rate formula sampled on a k-range,
/// or an assembled upper/lower bound. Indices are strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCurve {
    points: Vec<CurvePoint>,
}

impl BoundCurve {
    pub fn new(points: Vec<CurvePoint>) -> Result<Self> {
        for w in points.windows(2) {
            if w[1].index <= w[0].index {
                return Err(Error::InvalidParameter(format!(
                    "curve indices must be strictly increasing ({} then {})",
                    w[0].index, w[1].index
                )));
            }
        }
        if points.iter().any(|p| !(p.value >= 0.0) || p.index == 0) {
            return Err(Error::InvalidParameter(
                "curve needs positive indices and nonnegative values".into(),
            ));
        }
        Ok(Self { points })
    }

    pub fn empty() -> Self {
        Self { points: Vec::new() }
    }

    pub fn from_fn(
        range: impl Iterator<Item = usize>,
        mut f: impl FnMut(usize) -> (f64, String),
    ) -> Result<Self> {
        let points = range
            .map(|k| {
                let (value, regime) = f(k);
                CurvePoint {
                    index: k,
                    value,
                    regime,
                }
            })
            .collect();
        Self::new(points)
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn value_at(&self, index: usize) -> Option<f64> {
        self.points
            .binary_search_by_key(&index, |p| p.index)
            .ok()
            .map(|i| self.points[i].value)
    }

    /// True when values never increase with the index.
    pub fn is_nonincreasing(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].value <= w[0].value * (1.0 + 1e-12))
    }

    /// CSV with the fixed column order `k,value,regime`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "k,value,regime")?;
        for p in &self.points {
            writeln!(w, "{},{:.17e},{}", p.index, p.value, p.regime)?;
        }
        Ok(())
    }
}

/// `M_{2ε} ≤ N_ε ≤ M_ε`: the covering/packing sandwich as a pure predicate.
pub fn sandwich_check(
    packing_count_at_2eps: u64,
    covering_count_at_eps: u64,
    packing_count_at_eps: u64,
) -> bool {
    packing_count_at_2eps <= covering_count_at_eps
        && covering_count_at_eps <= packing_count_at_eps
}

/// Sum rule in a ϑ-normed target: combine certified upper curves for
/// `T_1` and `T_2` into one for `T_1 + T_2` via
/// `e_{k₁+k₂−1}(T_1+T_2)^ϑ ≤ e_{k₁}(T_1)^ϑ + e_{k₂}(T_2)^ϑ`,
/// minimizing over admissible splits at every output index.
pub fn sum_rule(curve1: &BoundCurve, curve2: &BoundCurve, vartheta: Exponent) -> Result<BoundCurve> {
    let th = vartheta.get();
    if !(th > 0.0 && th <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "vartheta must lie in (0,1], got {th}"
        )));
    }
    for (name, c) in [("curve1", curve1), ("curve2", curve2)] {
        if !c.is_nonincreasing() {
            return Err(Error::InvalidParameter(format!(
                "{name} is not a certified upper bound (values increase)"
            )));
        }
    }
    combine(curve1, curve2, |v1, v2| {
        (v1.powf(th) + v2.powf(th)).powf(1.0 / th)
    })
}

/// Composition rule `e_{k₁+k₂−1}(R∘S) ≤ e_{k₁}(R) e_{k₂}(S)` (constant taken
/// as 1 for normed targets), minimized over splits. The degenerate form
/// `e_k(R∘S) ≤ e_k(R)·‖S‖` is the split `k₂ = 1` when `curve2` starts with
/// `e_1 = ‖S‖`.
pub fn composition_rule(curve_r: &BoundCurve, curve_s: &BoundCurve) -> Result<BoundCurve> {
    combine(curve_r, curve_s, |v1, v2| v1 * v2)
}

fn combine(
    curve1: &BoundCurve,
    curve2: &BoundCurve,
    merge: impl Fn(f64, f64) -> f64,
) -> Result<BoundCurve> {
    if curve1.is_empty() || curve2.is_empty() {
        return Ok(BoundCurve::empty());
    }
    let mut best: std::collections::BTreeMap<usize, (f64, String)> = Default::default();
    for p1 in curve1.points() {
        for p2 in curve2.points() {
            let k = p1.index + p2.index - 1;
            let v = merge(p1.value, p2.value);
            let regime = format!("{}+{}", p1.index, p2.index);
            match best.get(&k) {
                Some((old, _)) if *old <= v => {}
                _ => {
                    best.insert(k, (v, regime));
                }
            }
        }
    }
    // A larger index is allowed to use any smaller split, so enforce
    // monotonicity by running minimum.
    let mut points = Vec::with_capacity(best.len());
    let mut running = f64::INFINITY;
    for (k, (v, regime)) in best {
        running = running.min(v);
        points.push(CurvePoint {
            index: k,
            value: running,
            regime,
        });
    }
    BoundCurve::new(points)
}
