//! Explicit lower-bound certificates: block-sparse packings of mixed balls
//! built from Gilbert–Varshamov codes placed on bounded-overlap supports,
//! composed twice for (2s,2t)-sparse packings, plus the row-replication
//! packing. Every certificate re-verifies from raw points alone.

use serde::{Deserialize, Serialize};

use crate::curve::{BoundCurve, CurvePoint};
use crate::designs::{build_gv_code, build_subset_family, subset_family_lower_bound};
use crate::error::{Error, Result};
use crate::exponent::{mixed_quasi_norm_constant, ExponentTuple, QuasiNormConstant};
use crate::matrix::{lp_norm, mixed_norm_diff, mixed_norm_slice, MixedMatrix};

/// Relative tolerance for recomputed distances and norms.
pub const DISTANCE_RTOL: f64 = 1e-9;
/// Absolute slack on unit-ball membership.
pub const MEMBERSHIP_ATOL: f64 = 1e-12;
/// Default cap on certificate size; keeps the O(N²) re-verification cheap.
/// Constructions never cap below their advertised count.
pub const DEFAULT_POINT_CAP: usize = 256;

/// A packing of `B_X` in `Y` used as raw material: `points ⊂ B_X` with
/// pairwise `Y`-distance ≥ `separation` and every `Y`-norm ≥ `min_norm`.
/// The block-sparse lemma needs `min_norm ≥ separation/(2 α_Y)`; we require
/// the field explicitly instead of inferring it from maximality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasePacking {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub separation: f64,
    pub min_norm: f64,
}

impl BasePacking {
    /// `{−1, +1} ⊂ [−1, 1]`: separation 2, min norm 1.
    pub fn sign_pair() -> Self {
        Self {
            dim: 1,
            points: vec![vec![-1.0], vec![1.0]],
            separation: 2.0,
            min_norm: 1.0,
        }
    }

    /// Re-verify against explicit X/Y norms.
    pub fn verify(
        &self,
        x_norm: impl Fn(&[f64]) -> f64,
        y_norm: impl Fn(&[f64]) -> f64,
    ) -> Result<()> {
        for (i, pt) in self.points.iter().enumerate() {
            if pt.len() != self.dim {
                return Err(Error::VerificationFailed(format!(
                    "base point {i} has dimension {} instead of {}",
                    pt.len(),
                    self.dim
                )));
            }
            if x_norm(pt) > 1.0 + MEMBERSHIP_ATOL {
                return Err(Error::VerificationFailed(format!(
                    "base point {i} outside the unit ball"
                )));
            }
            if y_norm(pt) < self.min_norm * (1.0 - DISTANCE_RTOL) {
                return Err(Error::VerificationFailed(format!(
                    "base point {i} below claimed min norm"
                )));
            }
        }
        let mut diff = vec![0.0; self.dim];
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                for k in 0..self.dim {
                    diff[k] = self.points[i][k] - self.points[j][k];
                }
                if y_norm(&diff) < self.separation * (1.0 - DISTANCE_RTOL) {
                    return Err(Error::VerificationFailed(format!(
                        "base points {i},{j} closer than claimed separation"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Word selection for the same-support layer: greedy Gilbert–Varshamov code
/// (general `r`) or the full Cartesian product, valid only for `r = ∞` where
/// a single differing letter already separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PackingMode {
    GilbertVarshamov,
    FullProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub b: usize,
    pub d: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sparsity {
    pub s: usize,
    pub t: usize,
}

/// An explicit packing of `B_{ℓ_p^b(ℓ_q^d)}` with a claimed
/// `ℓ_r^b(ℓ_u^d)`-separation, re-verifiable from the raw points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingCertificate {
    pub kind: String,
    pub construction: String,
    pub params: ExponentTuple,
    pub shape: Shape,
    pub sparsity: Sparsity,
    pub separation: f64,
    /// Count guaranteed by the construction's theorem (≥ 1).
    pub advertised_count: u64,
    /// The theorem-level separation `s^{1/r−1/p} t^{1/u−1/q}` for the
    /// two-level construction; the ratio to `separation` is the carried
    /// constant.
    pub clean_separation: Option<f64>,
    pub seed: u64,
    /// Points as nested row lists, `points[i][row][col]`.
    pub points: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PackingVerification {
    pub count: usize,
    pub min_pairwise_distance: f64,
    pub max_norm: f64,
    pub advertised_count: u64,
}

impl PackingCertificate {
    pub fn matrices(&self) -> Result<Vec<MixedMatrix>> {
        self.points
            .iter()
            .map(|rows| {
                let m = MixedMatrix::from_rows(rows)?;
                if m.b != self.shape.b || m.d != self.shape.d {
                    return Err(Error::VerificationFailed(format!(
                        "point has shape {}x{}, certificate says {}x{}",
                        m.b, m.d, self.shape.b, self.shape.d
                    )));
                }
                Ok(m)
            })
            .collect()
    }

    /// Recompute everything from raw data: unit-ball membership, pairwise
    /// separation at the claimed value, sparsity, and the cardinality bound.
    pub fn verify(&self) -> Result<PackingVerification> {
        let mats = self.matrices()?;
        let t = &self.params;
        let mut max_norm: f64 = 0.0;
        for (i, m) in mats.iter().enumerate() {
            let norm = mixed_norm_slice(&m.entries, m.b, m.d, t.p, t.q);
            if norm > 1.0 + MEMBERSHIP_ATOL {
                return Err(Error::VerificationFailed(format!(
                    "point {i} has mixed norm {norm} > 1"
                )));
            }
            max_norm = max_norm.max(norm);
            if self.sparsity.s > 0 {
                let nonzero_rows =
                    (0..m.b).filter(|&r| m.row(r).iter().any(|&e| e != 0.0)).count();
                if nonzero_rows > 2 * self.sparsity.s {
                    return Err(Error::VerificationFailed(format!(
                        "point {i} has {nonzero_rows} nonzero rows, allowed {}",
                        2 * self.sparsity.s
                    )));
                }
            }
            if self.sparsity.t > 0 {
                for r in 0..m.b {
                    let nz = m.row(r).iter().filter(|&&e| e != 0.0).count();
                    if nz > 2 * self.sparsity.t {
                        return Err(Error::VerificationFailed(format!(
                            "point {i} row {r} has {nz} nonzero entries, allowed {}",
                            2 * self.sparsity.t
                        )));
                    }
                }
            }
        }
        let mut min_dist = f64::INFINITY;
        for i in 0..mats.len() {
            for j in (i + 1)..mats.len() {
                let dist = mixed_norm_diff(&mats[i], &mats[j], t.r, t.u);
                if dist < self.separation * (1.0 - DISTANCE_RTOL) {
                    return Err(Error::VerificationFailed(format!(
                        "points {i},{j} at distance {dist} < claimed {}",
                        self.separation
                    )));
                }
                min_dist = min_dist.min(dist);
            }
        }
        if (mats.len() as u64) < self.advertised_count {
            return Err(Error::VerificationFailed(format!(
                "{} points, advertised {}",
                mats.len(),
                self.advertised_count
            )));
        }
        Ok(PackingVerification {
            count: mats.len(),
            min_pairwise_distance: if min_dist.is_finite() { min_dist } else { 0.0 },
            max_norm,
            advertised_count: self.advertised_count,
        })
    }
}

fn check_min_norm_hypothesis(base: &BasePacking, alpha_y: &QuasiNormConstant) -> Result<()> {
    let needed = base.separation / (2.0 * alpha_y.alpha);
    if base.min_norm < needed * (1.0 - DISTANCE_RTOL) {
        return Err(Error::HypothesisViolated(format!(
            "base packing min_norm {} below ε/(2 α_Y) = {needed}",
            base.min_norm
        )));
    }
    Ok(())
}

/// 2s-block-sparse packing of `B_{ℓ_p^b(X)}` in `ℓ_r^b(Y)`: words from a
/// distance-s code over the base alphabet, placed on supports with pairwise
/// overlap < s, rows scaled by `(2s)^{−1/p}`. Separation
/// `s^{1/r−1/p} ε / (2^{1+1/p} α_Y)` with the lemma's constants carried
/// verbatim; cardinality at least `(b·♯base/(32s))^s` (`8s` in the
/// full-product mode).
#[allow(clippy::too_many_arguments)]
pub fn block_sparse_packing(
    base: &BasePacking,
    params: &ExponentTuple,
    b: usize,
    s: usize,
    alpha_y: QuasiNormConstant,
    mode: PackingMode,
    cap: usize,
    seed: u64,
) -> Result<PackingCertificate> {
    if b < 8 {
        return Err(Error::InvalidParameter(format!("need b >= 8, got {b}")));
    }
    if s == 0 || s > b / 8 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= s <= b/8 = {}, got {s}",
            b / 8
        )));
    }
    if mode == PackingMode::FullProduct && !params.r.is_infinite() {
        return Err(Error::InvalidParameter(
            "full-product mode is only valid for r = inf".into(),
        ));
    }
    check_min_norm_hypothesis(base, &alpha_y)?;
    let d = base.dim;
    let m = base.points.len();
    let inv_p = params.p.reciprocal();
    let inv_r = params.r.reciprocal();
    let denominator = match mode {
        PackingMode::GilbertVarshamov => 32.0,
        PackingMode::FullProduct => 8.0,
    };
    let advertised = ((b as f64) * (m as f64) / (denominator * s as f64))
        .powi(s as i32)
        .ceil()
        .max(1.0) as u64;

    let supports = build_subset_family(b, s, seed)?;
    let n_sub = supports.sets.len();
    let want_total = cap.max(advertised as usize);
    let words_cap = want_total.div_ceil(n_sub).max(1);
    let words: Vec<Vec<u16>> = match mode {
        PackingMode::GilbertVarshamov => build_gv_code(m, s, Some(words_cap))?.words,
        PackingMode::FullProduct => lex_words(m, 2 * s, words_cap),
    };

    let scale = (2.0 * s as f64).powf(-inv_p);
    let mut points = Vec::with_capacity(n_sub * words.len());
    'outer: for support in &supports.sets {
        for word in &words {
            let mut rows = vec![vec![0.0; d]; b];
            for (slot, &row_idx) in support.iter().enumerate() {
                let letter = &base.points[word[slot] as usize];
                rows[row_idx as usize] = letter.iter().map(|&v| scale * v).collect();
            }
            points.push(rows);
            if points.len() >= want_total {
                break 'outer;
            }
        }
    }

    let separation = (s as f64).powf(inv_r - inv_p) * base.separation
        / (2f64.powf(1.0 + inv_p) * alpha_y.alpha);
    let cert = PackingCertificate {
        kind: "packing".into(),
        construction: match mode {
            PackingMode::GilbertVarshamov => "block-sparse".into(),
            PackingMode::FullProduct => "block-sparse-full-product".into(),
        },
        params: *params,
        shape: Shape { b, d },
        sparsity: Sparsity { s, t: 0 },
        separation,
        advertised_count: advertised,
        clean_separation: None,
        seed,
        points,
    };
    cert.verify()?;
    Ok(cert)
}

fn lex_words(m: usize, len: usize, cap: usize) -> Vec<Vec<u16>> {
    let mut words = Vec::new();
    let mut current = vec![0u16; len];
    'outer: loop {
        words.push(current.clone());
        if words.len() >= cap {
            break;
        }
        let mut i = len;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            current[i] += 1;
            if (current[i] as usize) < m {
                break;
            }
            current[i] = 0;
        }
    }
    words
}

/// Two-level composition: the inner call packs `B_{ℓ_q^d}` in `ℓ_u^d` with
/// 2t-sparse sign vectors, the outer call places those rows on 2s-supports.
/// Yields (2s,2t)-sparse matrices with separation
/// `s^{1/r−1/p} t^{1/u−1/q}` up to the lemmas' explicit constants (the
/// certificate records both) and cardinality ≥ `(b/32s)^s (d/8t)^{st}`.
pub fn two_level_sparse_packing(
    params: &ExponentTuple,
    b: usize,
    d: usize,
    s: usize,
    t: usize,
    cap: usize,
    seed: u64,
) -> Result<PackingCertificate> {
    if b < 8 || d < 8 {
        return Err(Error::InvalidParameter(format!(
            "need b, d >= 8, got b={b} d={d}"
        )));
    }
    if t == 0 || t > d / 8 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= d/8 = {}, got {t}",
            d / 8
        )));
    }
    // inner level: pack B_{ℓ_q^d} in ℓ_u^d using X = Y = ℝ and base {−1,+1}
    let inner_tuple = ExponentTuple::new(params.q, params.q, params.u, params.u);
    let alpha_u = mixed_quasi_norm_constant(params.u, params.u);
    let inner_cap = inner_alphabet_cap(s);
    let inner = block_sparse_packing(
        &BasePacking::sign_pair(),
        &inner_tuple,
        d,
        t,
        alpha_u,
        PackingMode::GilbertVarshamov,
        inner_cap,
        seed,
    )?;
    let inner_points: Vec<Vec<f64>> = inner
        .points
        .iter()
        .take(inner_cap)
        .map(|rows| rows.iter().map(|r| r[0]).collect())
        .collect();
    // every inner point has exactly 2t entries of magnitude (2t)^{−1/q}
    let inv_q = params.q.reciprocal();
    let inv_u = params.u.reciprocal();
    let inner_min_norm = (2.0 * t as f64).powf(inv_u - inv_q);
    let base = BasePacking {
        dim: d,
        points: inner_points,
        separation: inner.separation,
        min_norm: inner_min_norm,
    };

    let alpha_target = mixed_quasi_norm_constant(params.r, params.u);
    let mut cert = block_sparse_packing(
        &base,
        params,
        b,
        s,
        alpha_target,
        PackingMode::GilbertVarshamov,
        cap,
        seed,
    )?;
    let advertised = ((b as f64 / (32.0 * s as f64)).powi(s as i32)
        * (d as f64 / (8.0 * t as f64)).powi((s * t) as i32))
    .ceil()
    .max(1.0) as u64;
    cert.construction = "two-level-sparse".into();
    cert.sparsity = Sparsity { s, t };
    cert.advertised_count = advertised;
    cert.clean_separation = Some(
        (s as f64).powf(params.r.reciprocal() - params.p.reciprocal())
            * (t as f64).powf(inv_u - inv_q),
    );
    cert.verify()?;
    Ok(cert)
}

/// Keep the outer GV enumeration `m^{2s}` inside its cap; 64 letters is
/// already far more than the advertised counts ever need.
fn inner_alphabet_cap(s: usize) -> usize {
    let cap = crate::designs::GV_ENUMERATION_CAP as f64;
    (cap.powf(1.0 / (2.0 * s as f64)).floor() as usize).min(64)
}

/// One matrix per 2s-subset, rows in the subset all equal to
/// `(2s)^{−1/p}·x` for a witness `x` with `‖x‖_X ≤ 1` and `‖x‖_Y ≥ ‖id‖/2`.
/// Any two matrices disagree in more than s rows, giving separation
/// `(2s)^{−1/p} s^{1/r} ‖x‖_Y`; cardinality ≥ `(b/8s)^s`.
pub fn row_replication_packing(
    witness: &[f64],
    params: &ExponentTuple,
    b: usize,
    s: usize,
    op_norm: f64,
    seed: u64,
) -> Result<PackingCertificate> {
    let d = witness.len();
    let x_norm = lp_norm(witness, params.q);
    let y_norm = lp_norm(witness, params.u);
    if x_norm > 1.0 + MEMBERSHIP_ATOL {
        return Err(Error::InvalidParameter(format!(
            "witness has X-norm {x_norm} > 1"
        )));
    }
    if y_norm < op_norm / 2.0 * (1.0 - DISTANCE_RTOL) || y_norm == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "witness Y-norm {y_norm} below ‖id‖/2 = {}",
            op_norm / 2.0
        )));
    }
    let supports = build_subset_family(b, s, seed)?;
    let inv_p = params.p.reciprocal();
    let scale = (2.0 * s as f64).powf(-inv_p);
    let scaled_row: Vec<f64> = witness.iter().map(|&v| scale * v).collect();
    let points: Vec<Vec<Vec<f64>>> = supports
        .sets
        .iter()
        .map(|support| {
            let mut rows = vec![vec![0.0; d]; b];
            for &i in support {
                rows[i as usize] = scaled_row.clone();
            }
            rows
        })
        .collect();
    let separation = scale * (s as f64).powf(params.r.reciprocal()) * y_norm;
    let cert = PackingCertificate {
        kind: "packing".into(),
        construction: "row-replication".into(),
        params: *params,
        shape: Shape { b, d },
        sparsity: Sparsity { s, t: 0 },
        separation,
        advertised_count: subset_family_lower_bound(b, s),
        clean_separation: None,
        seed,
        points,
    };
    cert.verify()?;
    Ok(cert)
}

/// A verified packing of size `M` at separation `ε` certifies `e_k ≥ ε/2`
/// for every `k` with `2^{k−1} < M`; the curve carries the largest such
/// index. Empty for `M ≤ 1`.
pub fn packing_to_entropy_lower(count: u64, separation: f64) -> BoundCurve {
    if count <= 1 {
        return BoundCurve::empty();
    }
    let k = (count - 1).ilog2() as usize + 1;
    BoundCurve::new(vec![CurvePoint {
        index: k,
        value: separation / 2.0,
        regime: "packing-lower".into(),
    }])
    .expect("single point")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;

    const INF: f64 = f64::INFINITY;

    fn tuple(p: f64, q: f64, r: f64, u: f64) -> ExponentTuple {
        let e = |v: f64| {
            if v.is_infinite() {
                Exponent::INF
            } else {
                Exponent::new(v).unwrap()
            }
        };
        ExponentTuple::new(e(p), e(q), e(r), e(u))
    }

    #[test]
    fn sign_pair_verifies() {
        let base = BasePacking::sign_pair();
        base.verify(|v| v[0].abs(), |v| v[0].abs()).unwrap();
    }

    #[test]
    fn block_sparse_interval_base_example() {
        // base {−1,+1}, ε=2, b=8, s=1, p=r=1: ≥ 4 points, ℓ_1-distance ≥ 1
        let t = tuple(1.0, 1.0, 1.0, 1.0);
        let cert = block_sparse_packing(
            &BasePacking::sign_pair(),
            &t,
            8,
            1,
            QuasiNormConstant { alpha: 1.0 },
            PackingMode::GilbertVarshamov,
            256,
            0,
        )
        .unwrap();
        assert_eq!(cert.advertised_count, 1); // (8·2/32)^1 = 0.5 -> vacuous
        let v = cert.verify().unwrap();
        assert!(v.count >= 4, "greedy should give at least 4, got {}", v.count);
        assert!(v.min_pairwise_distance >= 1.0 - 1e-12);
        // claimed separation carries the lemma constants: 2/(2^2) = 0.5
        assert!((cert.separation - 0.5).abs() < 1e-15);
    }

    #[test]
    fn block_sparse_b16_s2() {
        let t = tuple(1.0, 1.0, INF, INF);
        let base = BasePacking {
            dim: 1,
            points: vec![vec![-1.0], vec![-0.5], vec![0.5], vec![1.0]],
            separation: 0.5,
            min_norm: 0.5,
        };
        let cert = block_sparse_packing(
            &base,
            &t,
            16,
            2,
            QuasiNormConstant { alpha: 1.0 },
            PackingMode::GilbertVarshamov,
            256,
            0,
        )
        .unwrap();
        // (16·4/64)^2 = 1
        assert_eq!(cert.advertised_count, 1);
        cert.verify().unwrap();
    }

    #[test]
    fn two_level_shapes_verify() {
        for &(b, d, s, s_t) in &[(8usize, 8usize, 1usize, 1usize), (16, 8, 2, 1), (8, 16, 1, 2)]
        {
            let t = tuple(1.0, 1.0, INF, INF);
            let cert = two_level_sparse_packing(&t, b, d, s, s_t, 128, 1).unwrap();
            let v = cert.verify().unwrap();
            assert!(v.count as u64 >= cert.advertised_count);
        }
    }

    #[test]
    fn two_level_separation_never_exceeds_factor_product() {
        // composition sanity: the two-level separation is at most the
        // product of the clean per-level factors
        let t = tuple(1.0, 2.0, 2.0, INF);
        let cert = two_level_sparse_packing(&t, 8, 8, 1, 1, 64, 3).unwrap();
        let clean = cert.clean_separation.unwrap();
        assert!(cert.separation <= clean * (1.0 + 1e-12));
    }

    #[test]
    fn row_replication_example() {
        // s=1, b=8, x = e1, p=1, r=inf: separation ‖x‖/2
        let t = tuple(1.0, INF, INF, INF);
        let mut witness = vec![0.0; 4];
        witness[0] = 1.0;
        let cert = row_replication_packing(&witness, &t, 8, 1, 1.0, 0).unwrap();
        assert!(!cert.points.is_empty());
        assert!((cert.separation - 0.5).abs() < 1e-15);
        cert.verify().unwrap();

        // b=64, s=2: ≥ 16 matrices
        let t2 = tuple(1.0, INF, 2.0, INF);
        let cert = row_replication_packing(&witness, &t2, 64, 2, 1.0, 0).unwrap();
        assert!(cert.points.len() >= 16);
        cert.verify().unwrap();
    }

    #[test]
    fn row_replication_rejects_zero_witness() {
        let t = tuple(1.0, INF, INF, INF);
        assert!(row_replication_packing(&[0.0, 0.0], &t, 8, 1, 1.0, 0).is_err());
    }

    #[test]
    fn entropy_lower_index_arithmetic() {
        // M=4, ε=1: largest k with 2^{k−1} < 4 is k=2
        let c = packing_to_entropy_lower(4, 1.0);
        assert_eq!(c.points().len(), 1);
        assert_eq!(c.points()[0].index, 2);
        assert_eq!(c.points()[0].value, 0.5);
        // M=1: nothing certified
        assert!(packing_to_entropy_lower(1, 1.0).is_empty());
        // M = 2^10 + 1, ε = 0.2: e_11 > 0.1
        let c = packing_to_entropy_lower(1025, 0.2);
        assert_eq!(c.points()[0].index, 11);
        assert!((c.points()[0].value - 0.1).abs() < 1e-15);
    }

    #[test]
    fn verify_catches_duplicated_point() {
        let t = tuple(1.0, 1.0, INF, INF);
        let mut cert = two_level_sparse_packing(&t, 8, 8, 1, 1, 64, 1).unwrap();
        let copy = cert.points[0].clone();
        let last = cert.points.len() - 1;
        cert.points[last] = copy;
        assert!(matches!(cert.verify(), Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn verify_catches_out_of_ball_point() {
        let t = tuple(1.0, 1.0, INF, INF);
        let mut cert = two_level_sparse_packing(&t, 8, 8, 1, 1, 64, 1).unwrap();
        for row in cert.points[0].iter_mut() {
            for e in row.iter_mut() {
                *e *= 3.0;
            }
        }
        assert!(cert.verify().is_err());
    }

    #[test]
    fn full_product_mode_requires_sup_target() {
        let t = tuple(1.0, 1.0, 2.0, 2.0);
        let err = block_sparse_packing(
            &BasePacking::sign_pair(),
            &t,
            8,
            1,
            QuasiNormConstant { alpha: 1.0 },
            PackingMode::FullProduct,
            64,
            0,
        );
        assert!(err.is_err());

        let t = tuple(1.0, 1.0, INF, INF);
        let cert = block_sparse_packing(
            &BasePacking::sign_pair(),
            &t,
            8,
            1,
            QuasiNormConstant { alpha: 1.0 },
            PackingMode::FullProduct,
            64,
            0,
        )
        .unwrap();
        cert.verify().unwrap();
    }
}
