//! Explicit upper-bound certificates: the dyadic-grid cuboid covering, the
//! block-sparse (best-s-rows) covering, and the permutation-covering bound
//! combinator. Certificates carry a deterministic construction recipe plus
//! sampling evidence; verification recounts centers in exact integer
//! arithmetic and re-draws coverage samples — nothing is trusted from
//! construction-time counters.
//!
//! Coverage is checked by sampling, not proof: exact coverage verification
//! of a union of quasi-metric balls is infeasible, and the constructions are
//! proven; sampling guards implementation bugs. Certificates with few
//! centers may embed them explicitly instead of a recipe.

use serde::{Deserialize, Serialize};

use crate::curve::BoundCurve;
use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentTuple};
use crate::grid::{enumerate_grid, upsilon, GridVector, SimplexPoint};
use crate::matrix::{lp_norm, mixed_norm_diff, mixed_norm_slice, MixedMatrix};
use crate::packing::Shape;
use crate::sampling::{sample_ball_point, seeded_rng};
use crate::util::binomial;

/// Relative slack when comparing sampled distances against the radius.
const RADIUS_RTOL: f64 = 1e-9;
/// Largest cuboid budget: keeps `Σ m_i − b ≤ 127` so counts stay exact u128.
pub const CUBOID_K_CAP: usize = 86;
/// Cap on lattice enumeration for the sparse covering's inner net.
pub const LATTICE_CAP: u128 = 2_000_000;
/// Fraction of coverage samples drawn on the unit sphere.
const BOUNDARY_FRACTION: u64 = 10;

/// A budget-indexed source of coverings of `B_X` in `Y`: at budget `m` it
/// yields at most `2^{m−1}` centers at radius `ρ_m`, nonincreasing in `m`.
pub trait InnerCoveringProvider {
    fn dim(&self) -> usize;
    fn radius(&self, m: usize) -> f64;
    fn count(&self, m: usize) -> u128;
    /// Nearest center of the covering of `scale·B_X`, written into `out`.
    fn nearest(&self, m: usize, scale: f64, point: &[f64], out: &mut [f64]);
    fn spec(&self) -> ProviderSpec;
}

/// Serializable provider description, enough to rebuild it on verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProviderSpec {
    /// `[−1,1]` covered by `2^{m−1}` uniform grid points at radius
    /// `2^{−(m−1)}` — realizes `e_m(B_ℝ, ℝ)` exactly and bottoms out every
    /// recursion.
    Interval,
}

impl ProviderSpec {
    pub fn build(self) -> Box<dyn InnerCoveringProvider> {
        match self {
            ProviderSpec::Interval => Box::new(IntervalProvider),
        }
    }
}

pub struct IntervalProvider;

impl InnerCoveringProvider for IntervalProvider {
    fn dim(&self) -> usize {
        1
    }

    fn radius(&self, m: usize) -> f64 {
        2f64.powi(-(m as i32 - 1))
    }

    fn count(&self, m: usize) -> u128 {
        1u128 << (m - 1)
    }

    fn nearest(&self, m: usize, scale: f64, point: &[f64], out: &mut [f64]) {
        let n = 1u64 << (m - 1);
        let rho = 2f64.powi(-(m as i32 - 1));
        // centers scale·(−1 + (2i−1)ρ), i = 1..n
        let t = (point[0] / scale + 1.0) / (2.0 * rho);
        let i = (t.ceil() as i64).clamp(1, n as i64) as f64;
        out[0] = scale * (-1.0 + (2.0 * i - 1.0) * rho);
    }

    fn spec(&self) -> ProviderSpec {
        ProviderSpec::Interval
    }
}

/// Deterministic construction data; verification rebuilds the center set
/// from this alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CoveringRecipe {
    /// Center 0 at radius 1 (any monotone embedding).
    Trivial,
    /// Dyadic-grid cuboid covering at budget `k` (certifying index `k+1`).
    Cuboid { k: usize, provider: ProviderSpec },
    /// Union over s-row supports of an inner net, padded with zero rows.
    /// `Lattice`: toward-zero quantization at `step` on the s×d ball.
    /// `Cuboid`: the dyadic cuboid covering on the s-row subproblem.
    Sparse {
        k: usize,
        s: usize,
        inner: SparseInner,
    },
    /// Small center sets stored outright (oracle exports, tiny instances).
    Explicit { centers: Vec<Vec<Vec<f64>>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SparseInner {
    Lattice { step: f64 },
    Cuboid { provider: ProviderSpec },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageEvidence {
    pub samples: u64,
    pub misses: u64,
    pub max_observed_distance: f64,
    pub seed: u64,
}

/// An upper-bound certificate: at most `2^{index−1}` centers at
/// `claimed_radius`, so it witnesses `e_index ≤ claimed_radius` (under
/// sampling evidence).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    pub kind: String,
    pub construction: String,
    pub params: ExponentTuple,
    pub shape: Shape,
    pub claimed_radius: f64,
    pub index: usize,
    pub center_count: u128,
    pub recipe: CoveringRecipe,
    pub coverage: CoverageEvidence,
    pub seed: u64,
}

/// Smallest `j` with `count ≤ 2^{j−1}`.
pub fn index_for_count(count: u128) -> usize {
    if count <= 1 {
        1
    } else {
        (128 - (count - 1).leading_zeros()) as usize + 1
    }
}

impl CoveringCertificate {
    /// Exact center count recomputed from the recipe.
    pub fn recount(&self) -> Result<u128> {
        match &self.recipe {
            CoveringRecipe::Trivial => Ok(1),
            CoveringRecipe::Cuboid { k, provider } => {
                cuboid_count(provider.build().as_ref(), self.shape.b, *k)
            }
            CoveringRecipe::Sparse { k, s, inner } => {
                let inner_count = match inner {
                    SparseInner::Lattice { step } => lattice_count(
                        *s,
                        self.shape.d,
                        self.params.p,
                        self.params.q,
                        *step,
                        LATTICE_CAP,
                    )?,
                    SparseInner::Cuboid { provider } => {
                        cuboid_count(provider.build().as_ref(), *s, *k)?
                    }
                };
                binomial(self.shape.b as u64, *s as u64)?
                    .checked_mul(inner_count)
                    .ok_or_else(|| Error::CapExceeded("sparse covering count overflow".into()))
            }
            CoveringRecipe::Explicit { centers } => Ok(centers.len() as u128),
        }
    }

    /// The construction's center nearest to `x` (not necessarily optimal,
    /// but always a member of the center set).
    pub fn nearest_center(&self, x: &MixedMatrix) -> Result<MixedMatrix> {
        let (b, d) = (self.shape.b, self.shape.d);
        match &self.recipe {
            CoveringRecipe::Trivial => Ok(MixedMatrix::zeros(b, d)),
            CoveringRecipe::Cuboid { k, provider } => {
                let provider = provider.build();
                cuboid_nearest(provider.as_ref(), &self.params, b, *k, &x.entries)
                    .map(|entries| MixedMatrix { b, d, entries })
            }
            CoveringRecipe::Sparse { k, s, inner } => {
                let support = top_rows(x, self.params.q, *s);
                let mut sub = Vec::with_capacity(s * d);
                for &i in &support {
                    sub.extend_from_slice(x.row(i));
                }
                let covered: Vec<f64> = match inner {
                    SparseInner::Lattice { step } => sub
                        .iter()
                        .map(|&v| (v / step).trunc() * step)
                        .collect(),
                    SparseInner::Cuboid { provider } => {
                        let provider = provider.build();
                        cuboid_nearest(provider.as_ref(), &self.params, *s, *k, &sub)?
                    }
                };
                let mut out = MixedMatrix::zeros(b, d);
                for (slot, &i) in support.iter().enumerate() {
                    out.entries[i * d..(i + 1) * d]
                        .copy_from_slice(&covered[slot * d..(slot + 1) * d]);
                }
                Ok(out)
            }
            CoveringRecipe::Explicit { centers } => {
                let mut best = None;
                let mut best_dist = f64::INFINITY;
                for rows in centers {
                    let c = MixedMatrix::from_rows(rows)?;
                    let dist = mixed_norm_diff(x, &c, self.params.r, self.params.u);
                    if dist < best_dist {
                        best_dist = dist;
                        best = Some(c);
                    }
                }
                best.ok_or_else(|| Error::VerificationFailed("no centers".into()))
            }
        }
    }

    /// Full re-verification: recount centers, re-derive the index, and draw
    /// fresh coverage samples. Fails on any miss beyond the claimed radius.
    pub fn verify(&self, samples: u64, seed: u64) -> Result<CoverageEvidence> {
        let count = self.recount()?;
        if count != self.center_count {
            return Err(Error::VerificationFailed(format!(
                "recounted {count} centers, certificate says {}",
                self.center_count
            )));
        }
        if index_for_count(count) > self.index {
            return Err(Error::VerificationFailed(format!(
                "{count} centers exceed 2^{}",
                self.index - 1
            )));
        }
        let evidence = self.sample_coverage(samples, seed)?;
        if evidence.misses > 0 {
            return Err(Error::VerificationFailed(format!(
                "{} of {} samples beyond the claimed radius (max observed {})",
                evidence.misses, evidence.samples, evidence.max_observed_distance
            )));
        }
        Ok(evidence)
    }

    pub fn sample_coverage(&self, samples: u64, seed: u64) -> Result<CoverageEvidence> {
        let mut rng = seeded_rng(seed);
        let (b, d) = (self.shape.b, self.shape.d);
        let mut max_observed: f64 = 0.0;
        let mut misses = 0;
        for i in 0..samples {
            let boundary = i % BOUNDARY_FRACTION == 0;
            let x = sample_ball_point(&mut rng, b, d, self.params.p, self.params.q, boundary);
            let center = self.nearest_center(&x)?;
            let dist = mixed_norm_diff(&x, &center, self.params.r, self.params.u);
            max_observed = max_observed.max(dist);
            if dist > self.claimed_radius * (1.0 + RADIUS_RTOL) {
                misses += 1;
            }
        }
        Ok(CoverageEvidence {
            samples,
            misses,
            max_observed_distance: max_observed,
            seed,
        })
    }

    /// The certificate as a one-point upper-bound curve.
    pub fn to_curve(&self) -> BoundCurve {
        BoundCurve::new(vec![crate::curve::CurvePoint {
            index: self.index,
            value: self.claimed_radius,
            regime: self.construction.clone(),
        }])
        .expect("single point")
    }
}

/// Indices of the `s` rows with largest inner norm, ties by lowest index,
/// returned sorted.
fn top_rows(x: &MixedMatrix, q: Exponent, s: usize) -> Vec<usize> {
    let mut norms: Vec<(usize, f64)> = (0..x.b).map(|i| (i, lp_norm(x.row(i), q))).collect();
    norms.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut idx: Vec<usize> = norms[..s].iter().map(|&(i, _)| i).collect();
    idx.sort_unstable();
    idx
}

fn cuboid_budget_factor(b: usize, k: usize) -> usize {
    (k - 2 * b) / (2 * b)
}

fn cuboid_budgets(v: &GridVector, factor: usize) -> Vec<usize> {
    (0..v.b).map(|i| factor * v.numerator(i) as usize).collect()
}

fn cuboid_count(provider: &dyn InnerCoveringProvider, b: usize, k: usize) -> Result<u128> {
    let factor = cuboid_budget_factor(b, k);
    let mut total: u128 = 0;
    for v in enumerate_grid(b)? {
        let mut prod: u128 = 1;
        for m in cuboid_budgets(&v, factor) {
            prod = prod
                .checked_mul(provider.count(m))
                .ok_or_else(|| Error::CapExceeded("cuboid count overflow".into()))?;
        }
        total = total
            .checked_add(prod)
            .ok_or_else(|| Error::CapExceeded("cuboid count overflow".into()))?;
    }
    Ok(total)
}

/// Locate the sample's cuboid via the rounding map, then take the product of
/// per-row nearest centers.
fn cuboid_nearest(
    provider: &dyn InnerCoveringProvider,
    params: &ExponentTuple,
    b: usize,
    k: usize,
    entries: &[f64],
) -> Result<Vec<f64>> {
    let d = provider.dim();
    let pv = params.p.get();
    let inv_p = params.p.reciprocal();
    let mut u = Vec::with_capacity(b);
    for i in 0..b {
        let row_norm = lp_norm(&entries[i * d..(i + 1) * d], params.q);
        u.push(row_norm.powf(pv).min(1.0));
    }
    let total: f64 = u.iter().sum();
    if total > 1.0 {
        // float dust from norm powers; renormalize just inside the simplex
        for c in u.iter_mut() {
            *c /= total * (1.0 + 1e-12);
        }
    }
    let v = upsilon(&SimplexPoint::new(u).map_err(|e| {
        Error::VerificationFailed(format!("sample outside the unit ball: {e}"))
    })?);
    let factor = cuboid_budget_factor(b, k);
    let budgets = cuboid_budgets(&v, factor);
    let mut out = vec![0.0; b * d];
    for i in 0..b {
        let scale = v.component(i).powf(inv_p);
        provider.nearest(
            budgets[i],
            scale,
            &entries[i * d..(i + 1) * d],
            &mut out[i * d..(i + 1) * d],
        );
    }
    Ok(out)
}

/// Dyadic-grid cuboid covering of `B_{ℓ_p^b(X)}` in `ℓ_r^b(Y)` at budget
/// `k ≥ 8b`: one cuboid per grid vector, inner budgets
/// `m_i = ⌊(k/b−2)/2⌋·b·v_i`, total center count ≤ 2^k (certifying index
/// k+1; the stored index is re-derived from the exact count). The radius
/// carries `3^{1/r}` for the grid's ℓ₁-mass rather than the claimed-but-
/// false `2^{1/r}`.
pub fn cuboid_covering(
    provider: &dyn InnerCoveringProvider,
    params: &ExponentTuple,
    b: usize,
    k: usize,
    samples: u64,
    seed: u64,
) -> Result<CoveringCertificate> {
    if k < 8 * b {
        return Err(Error::InvalidParameter(format!(
            "cuboid covering needs k >= 8b = {}, got {k}",
            8 * b
        )));
    }
    if k > CUBOID_K_CAP {
        return Err(Error::CapExceeded(format!(
            "cuboid budget capped at k <= {CUBOID_K_CAP} for exact counting"
        )));
    }
    if params.p.is_infinite() {
        return Err(Error::InvalidParameter(
            "p = inf is the plain Cartesian product; the cuboid construction needs finite p"
                .into(),
        ));
    }
    let d = provider.dim();
    let gap = params.outer_gap();
    let inv_r = params.r.reciprocal();
    let count = cuboid_count(provider, b, k)?;
    let m_lo = (3 * k) / (8 * b);
    let mut profile_max: f64 = 0.0;
    for m in m_lo.max(1)..=k {
        profile_max = profile_max.max((m as f64 / k as f64).powf(gap) * provider.radius(m));
    }
    let claimed_radius = 3f64.powf(inv_r) * 8f64.powf(gap) * profile_max;
    let mut cert = CoveringCertificate {
        kind: "covering".into(),
        construction: "cuboid".into(),
        params: *params,
        shape: Shape { b, d },
        claimed_radius,
        index: index_for_count(count),
        center_count: count,
        recipe: CoveringRecipe::Cuboid {
            k,
            provider: provider.spec(),
        },
        coverage: CoverageEvidence {
            samples: 0,
            misses: 0,
            max_observed_distance: 0.0,
            seed,
        },
        seed,
    };
    cert.coverage = cert.sample_coverage(samples, seed)?;
    if cert.coverage.misses > 0 {
        return Err(Error::ConstructionFailed(format!(
            "cuboid covering missed {} of {} samples (max distance {}, radius {})",
            cert.coverage.misses, samples, cert.coverage.max_observed_distance, claimed_radius
        )));
    }
    Ok(cert)
}

/// Count `{w ∈ (step·ℤ)^{s×d} : ‖w‖_{p,q} ≤ 1}` exactly by pruned recursion.
fn lattice_count(
    s: usize,
    d: usize,
    p: Exponent,
    q: Exponent,
    step: f64,
    cap: u128,
) -> Result<u128> {
    let mut count: u128 = 0;
    let mut entries = vec![0.0f64; s * d];
    lattice_recurse(&mut entries, 0, s, d, p, q, step, &mut count, cap)?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn lattice_recurse(
    entries: &mut Vec<f64>,
    pos: usize,
    s: usize,
    d: usize,
    p: Exponent,
    q: Exponent,
    step: f64,
    count: &mut u128,
    cap: u128,
) -> Result<()> {
    if pos == s * d {
        *count += 1;
        if *count > cap {
            return Err(Error::CapExceeded(format!(
                "sparse-covering lattice exceeds {cap} points"
            )));
        }
        return Ok(());
    }
    let max_steps = (1.0 / step).floor() as i64;
    for v in -max_steps..=max_steps {
        entries[pos] = v as f64 * step;
        // prefix pruning: zero the tail and test the partial norm
        for e in entries[pos + 1..].iter_mut() {
            *e = 0.0;
        }
        if mixed_norm_slice(entries, s, d, p, q) <= 1.0 + 1e-12 {
            if pos + 1 == s * d {
                *count += 1;
                if *count > cap {
                    return Err(Error::CapExceeded(format!(
                        "sparse-covering lattice exceeds {cap} points"
                    )));
                }
            } else {
                lattice_recurse(entries, pos + 1, s, d, p, q, step, count, cap)?;
            }
        }
    }
    entries[pos] = 0.0;
    Ok(())
}

/// How the sparse covering nets its s-row subproblem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SparseCoveringMode {
    /// Toward-zero lattice quantization on the s×d ball; constructive and
    /// within a dimension-dependent constant of optimal.
    Lattice,
    /// Inner cuboid covering (the small-k composition); needs `k ≥ 8s`.
    InnerCuboid,
}

/// Block-sparse covering: split `B_{ℓ_p^b(X)}` over the `C(b,s)` supports of
/// the s largest rows (`s ≈ k/(log(eb/k)+d)`), cover each s-row ball, and pad
/// with zero rows. The radius γ-combines the inner net radius with the
/// best-s-term tail `s^{−(1/p−1/r)}`; the certified index is derived from the
/// exact total count. Requires `q = u` (same inner space on both sides).
pub fn et_sparse_covering(
    params: &ExponentTuple,
    b: usize,
    d: usize,
    k: usize,
    mode: SparseCoveringMode,
    samples: u64,
    seed: u64,
) -> Result<CoveringCertificate> {
    if params.q != params.u {
        return Err(Error::InvalidParameter(
            "sparse covering needs equal inner spaces (q = u)".into(),
        ));
    }
    if params.p.get() > params.r.get() {
        return Err(Error::InvalidParameter("needs p <= r".into()));
    }
    if params.p.is_infinite() {
        return Err(Error::InvalidParameter(
            "p = inf leaves nothing to compress; use the trivial covering".into(),
        ));
    }
    let kf = k as f64;
    match mode {
        SparseCoveringMode::Lattice => {
            let lo = (b as f64).ln().max(d as f64);
            if kf < lo || k > b * d {
                return Err(Error::InvalidParameter(format!(
                    "sparse covering needs max(log b, d) <= k <= bd, got k={k}"
                )));
            }
        }
        // the small-k composition lives in the preasymptotic band
        SparseCoveringMode::InnerCuboid => {
            if kf < (b as f64).log2() || k > b {
                return Err(Error::InvalidParameter(format!(
                    "inner-cuboid mode needs log2(b) <= k <= b, got k={k}"
                )));
            }
        }
    }
    let e = std::f64::consts::E;
    let gap = params.outer_gap();
    let (s, inner, inner_radius) = match mode {
        SparseCoveringMode::Lattice => {
            let s_raw = (kf / ((e * b as f64 / kf).ln() + d as f64)).floor();
            let s = (s_raw as usize).clamp(1, b);
            let stechkin = (s as f64).powf(-gap);
            // quantization error bound step·s^{1/r} d^{1/u}
            let unit = (s as f64).powf(params.r.reciprocal())
                * (d as f64).powf(params.u.reciprocal());
            let mut step = stechkin / (2.0 * unit);
            // coarsen if the lattice would blow the enumeration cap
            let mut tries = 0;
            loop {
                match lattice_count(s, d, params.p, params.q, step, LATTICE_CAP) {
                    Ok(_) => break,
                    Err(Error::CapExceeded(_)) if tries < 12 => {
                        step *= 2.0;
                        tries += 1;
                    }
                    Err(e) => return Err(e),
                }
            }
            let inner_radius = step * unit;
            (s, SparseInner::Lattice { step }, inner_radius)
        }
        SparseCoveringMode::InnerCuboid => {
            if d != 1 {
                return Err(Error::InvalidParameter(
                    "inner-cuboid mode is wired for d = 1 providers".into(),
                ));
            }
            let s_raw = (kf / (e * b as f64 / kf).ln()).floor();
            let s = (s_raw as usize).clamp(1, b);
            if k < 8 * s {
                return Err(Error::InvalidParameter(format!(
                    "inner-cuboid mode needs k >= 8s (s = {s})"
                )));
            }
            if k > CUBOID_K_CAP {
                return Err(Error::CapExceeded(format!(
                    "cuboid budget capped at k <= {CUBOID_K_CAP}"
                )));
            }
            let provider = IntervalProvider;
            let m_lo = ((3 * k) / (8 * s)).max(1);
            let mut profile_max: f64 = 0.0;
            for m in m_lo..=k {
                profile_max =
                    profile_max.max((m as f64 / kf).powf(gap) * provider.radius(m));
            }
            let inner_radius =
                3f64.powf(params.r.reciprocal()) * 8f64.powf(gap) * profile_max;
            (
                s,
                SparseInner::Cuboid {
                    provider: ProviderSpec::Interval,
                },
                inner_radius,
            )
        }
    };
    let stechkin = (s as f64).powf(-gap);
    let gamma = params.target_gamma();
    let claimed_radius =
        (inner_radius.powf(gamma) + stechkin.powf(gamma)).powf(1.0 / gamma);
    let recipe = CoveringRecipe::Sparse { k, s, inner };
    let mut cert = CoveringCertificate {
        kind: "covering".into(),
        construction: match mode {
            SparseCoveringMode::Lattice => "et-sparse".into(),
            SparseCoveringMode::InnerCuboid => "et-sparse-cuboid".into(),
        },
        params: *params,
        shape: Shape { b, d },
        claimed_radius,
        index: 1,
        center_count: 0,
        recipe,
        coverage: CoverageEvidence {
            samples: 0,
            misses: 0,
            max_observed_distance: 0.0,
            seed,
        },
        seed,
    };
    cert.center_count = cert.recount()?;
    cert.index = index_for_count(cert.center_count);
    cert.coverage = cert.sample_coverage(samples, seed)?;
    if cert.coverage.misses > 0 {
        return Err(Error::ConstructionFailed(format!(
            "sparse covering missed {} of {} samples (max distance {}, radius {})",
            cert.coverage.misses, samples, cert.coverage.max_observed_distance, claimed_radius
        )));
    }
    Ok(cert)
}

/// Single center 0 at radius 1: valid for every norm-1 embedding.
pub fn trivial_covering(params: &ExponentTuple, b: usize, d: usize) -> Result<CoveringCertificate> {
    if !params.is_embedding_monotone() {
        return Err(Error::InvalidParameter(
            "trivial covering needs p <= r and q <= u".into(),
        ));
    }
    Ok(CoveringCertificate {
        kind: "covering".into(),
        construction: "trivial".into(),
        params: *params,
        shape: Shape { b, d },
        claimed_radius: 1.0,
        index: 1,
        center_count: 1,
        recipe: CoveringRecipe::Trivial,
        coverage: CoverageEvidence {
            samples: 0,
            misses: 0,
            max_observed_distance: 0.0,
            seed: 0,
        },
        seed: 0,
    })
}

/// Wrap an explicit center list (e.g. a mesh-oracle covering) as a
/// certificate; the radius claim is the caller's and gets sample-checked.
pub fn explicit_covering(
    params: &ExponentTuple,
    b: usize,
    d: usize,
    centers: Vec<MixedMatrix>,
    claimed_radius: f64,
    samples: u64,
    seed: u64,
) -> Result<CoveringCertificate> {
    if centers.is_empty() {
        return Err(Error::InvalidParameter("no centers".into()));
    }
    let count = centers.len() as u128;
    let mut cert = CoveringCertificate {
        kind: "covering".into(),
        construction: "explicit".into(),
        params: *params,
        shape: Shape { b, d },
        claimed_radius,
        index: index_for_count(count),
        center_count: count,
        recipe: CoveringRecipe::Explicit {
            centers: centers.iter().map(|c| c.to_rows()).collect(),
        },
        coverage: CoverageEvidence {
            samples: 0,
            misses: 0,
            max_observed_distance: 0.0,
            seed,
        },
        seed,
    };
    cert.coverage = cert.sample_coverage(samples, seed)?;
    if cert.coverage.misses > 0 {
        return Err(Error::ConstructionFailed(format!(
            "explicit covering missed {} of {} samples",
            cert.coverage.misses, samples
        )));
    }
    Ok(cert)
}

/// Permutation-covering combinator: given per-block upper curves `e_{n_j}`
/// and budgets, the stack is covered at index `Σ n_j + ⌈b log₂ b⌉` with
/// value `(Σ_j j^{−r/p} e_{n_j}^r)^{1/r}` (max-form for `r = ∞`).
pub fn klss_bound(
    profiles: &[BoundCurve],
    budgets: &[usize],
    p: Exponent,
    r: Exponent,
) -> Result<(usize, f64)> {
    let b = profiles.len();
    if b == 0 || budgets.len() != b {
        return Err(Error::InvalidParameter(
            "need one budget per profile".into(),
        ));
    }
    if budgets.iter().any(|&n| n == 0) {
        return Err(Error::InvalidParameter("budgets must be >= 1".into()));
    }
    let mut values = Vec::with_capacity(b);
    for (j, (profile, &n)) in profiles.iter().zip(budgets).enumerate() {
        let e_n = profile.value_at(n).ok_or_else(|| {
            Error::InvalidParameter(format!("profile {j} has no value at n={n}"))
        })?;
        values.push((j + 1, e_n));
    }
    let inv_p = p.reciprocal();
    let value = if r.is_infinite() {
        values
            .iter()
            .map(|&(j, e)| (j as f64).powf(-inv_p) * e)
            .fold(0.0f64, f64::max)
    } else {
        let rv = r.get();
        values
            .iter()
            .map(|&(j, e)| ((j as f64).powf(-inv_p) * e).powf(rv))
            .sum::<f64>()
            .powf(1.0 / rv)
    };
    let index: usize = budgets.iter().sum::<usize>()
        + (b as f64 * (b as f64).log2()).ceil() as usize;
    Ok((index, value))
}
