//! The block-sequence pipeline for embeddings with small mixed smoothness:
//! dyadic blocks of dimensions `b_μ = (μ+1)^{n−1}`, `d_μ = 2^μ`, the
//! three-part identity decomposition (head / middle / geometric tail), its
//! ϱ-subadditive assembly, and slope fitting to verify the dimension-free
//! `m^{−(r₀−r₁)}` rate. No coefficients exist here: the upper bounds are
//! pure bound arithmetic over block dimensions and weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentTuple};
use crate::rates::{weighted_block_rate, BlockRateRegime};
use crate::util::log_log_slope;

/// Smoothness/integrability parameters of the embedding
/// `s^{r0}_{p0,q0}a -> s^{r1}_{p1,q1}a†` over an n-dimensional index set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessParams {
    pub r0: f64,
    pub r1: f64,
    pub p0: Exponent,
    pub p1: Exponent,
    pub q0: Exponent,
    pub q1: Exponent,
    pub n: usize,
}

impl SmoothnessParams {
    pub fn new(
        r0: f64,
        r1: f64,
        p0: Exponent,
        p1: Exponent,
        q0: Exponent,
        q1: Exponent,
        n: usize,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dimension n must be >= 1".into()));
        }
        let params = Self {
            r0,
            r1,
            p0,
            p1,
            q0,
            q1,
            n,
        };
        if p0.get() > p1.get() {
            return Err(Error::HypothesisViolated(format!(
                "needs p0 <= p1, got p0={p0} p1={p1}"
            )));
        }
        if !(params.smoothness_gap() > params.p_gap()) {
            return Err(Error::HypothesisViolated(format!(
                "compactness needs r0-r1 > 1/p0-1/p1, got {} vs {}",
                params.smoothness_gap(),
                params.p_gap()
            )));
        }
        Ok(params)
    }

    pub fn smoothness_gap(&self) -> f64 {
        self.r0 - self.r1
    }

    pub fn p_gap(&self) -> f64 {
        self.p0.reciprocal() - self.p1.reciprocal()
    }

    pub fn q_gap(&self) -> f64 {
        self.q0.reciprocal() - self.q1.reciprocal()
    }

    /// `1/p0−1/p1 < r0−r1 ≤ 1/q0−1/q1`.
    pub fn is_small_smoothness(&self) -> bool {
        self.p_gap() < self.smoothness_gap() && self.smoothness_gap() <= self.q_gap()
    }

    /// Source weight exponent `α = r0 − 1/p0`.
    pub fn alpha(&self) -> f64 {
        self.r0 - self.p0.reciprocal()
    }

    /// Target weight exponent `β = r1 − 1/p1`.
    pub fn beta(&self) -> f64 {
        self.r1 - self.p1.reciprocal()
    }
}

/// Per-level block dimensions: `b_μ = (μ+1)^{n−1}` index vectors of weight
/// μ, each block of `d_μ = 2^μ` coefficients.
#[derive(Debug, Clone, Copy)]
pub struct BlockModel {
    pub n: usize,
}

impl BlockModel {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// `(b_μ, d_μ)`; both saturate at large μ, which only ever matters far
    /// above the levels whose min/max enter any hypothesis check.
    pub fn dims(&self, mu: usize) -> (usize, usize) {
        let b = (mu as u128 + 1)
            .checked_pow(self.n as u32 - 1)
            .map(|v| v.min(usize::MAX as u128) as usize)
            .unwrap_or(usize::MAX);
        let d = if mu >= 62 { usize::MAX } else { 1usize << mu };
        (b, d)
    }

    /// Smallest level from which `d_μ ≥ b_μ` holds onward (checked
    /// numerically over a long horizon).
    pub fn mu0(&self) -> usize {
        let mut mu0 = 0;
        for mu in 0..200usize {
            let (b, d) = self.dims(mu);
            if d < b {
                mu0 = mu + 1;
            }
        }
        mu0
    }
}

/// Which pair of spaces the pipeline bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    /// b -> b (the direct case).
    BesovToBesov,
    /// b -> f via the factorizations through `s^{r1}_{q1,q1}b` /
    /// `s^{r1}_{p1,p1}b` when `p1 < q1`, or the single bounded leg otherwise.
    BesovToTriebel,
    /// f -> b via the factorizations through `s^{r0}_{q0,q0}b` /
    /// `s^{r0}_{p0,p0}b` when `p0 > q0`, or the single bounded leg otherwise.
    TriebelToBesov,
}

impl Flavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "b-b" | "bb" => Ok(Self::BesovToBesov),
            "b-f" | "bf" => Ok(Self::BesovToTriebel),
            "f-b" | "fb" => Ok(Self::TriebelToBesov),
            _ => Err(Error::InvalidParameter(format!(
                "unknown flavor {s:?} (use b-b, b-f, f-b)"
            ))),
        }
    }
}

/// One pipeline evaluation: the assembled bound, the index it certifies,
/// the three terms, and the hypothesis log.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub m: usize,
    pub certified_index: usize,
    pub value: f64,
    pub rho: f64,
    pub head_levels: usize,
    pub middle_levels: usize,
    pub term_head: f64,
    pub term_middle: f64,
    pub term_tail: f64,
    pub checks: Vec<String>,
}

/// `‖id_μ‖ ≤ 2^{−μ(r0−r1−1/p0+1/p1)}` with constant 1.
pub fn block_operator_norm(params: &SmoothnessParams, mu: usize) -> Result<f64> {
    let delta = params.smoothness_gap() - params.p_gap();
    if !(delta > 0.0) {
        return Err(Error::HypothesisViolated(
            "block norms decay only for compact parameters".into(),
        ));
    }
    Ok(2f64.powf(-(mu as f64) * delta))
}

/// The dictionary feeding one weighted-block estimate: the Besov q-indices
/// become the outer exponents and the p-indices the inner ones.
struct TermSpec {
    tuple: ExponentTuple,
    alpha: f64,
    beta: f64,
    label: &'static str,
}

fn head_spec(params: &SmoothnessParams, flavor: Flavor) -> TermSpec {
    match flavor {
        Flavor::BesovToBesov => TermSpec {
            tuple: ExponentTuple::new(params.q0, params.p0, params.q1, params.p1),
            alpha: params.alpha(),
            beta: params.beta(),
            label: "head: b->b blocks",
        },
        // p1 < q1: factor through s^{r1}_{q1,q1}b
        Flavor::BesovToTriebel => TermSpec {
            tuple: ExponentTuple::new(params.q0, params.p0, params.q1, params.q1),
            alpha: params.alpha(),
            beta: params.r1 - params.q1.reciprocal(),
            label: "head: b->b(q1,q1) blocks (bounded leg into f)",
        },
        // p0 > q0: factor through s^{r0}_{q0,q0}b
        Flavor::TriebelToBesov => TermSpec {
            tuple: ExponentTuple::new(params.q0, params.q0, params.q1, params.p1),
            alpha: params.r0 - params.q0.reciprocal(),
            beta: params.beta(),
            label: "head: b(q0,q0)->b blocks (bounded leg from f)",
        },
    }
}

fn middle_spec(params: &SmoothnessParams, flavor: Flavor) -> TermSpec {
    match flavor {
        Flavor::BesovToBesov => TermSpec {
            tuple: ExponentTuple::new(params.q0, params.p0, params.q1, params.p1),
            alpha: params.alpha(),
            beta: params.beta(),
            label: "middle: b->b blocks",
        },
        // p1 < q1: factor through s^{r1}_{p1,p1}b
        Flavor::BesovToTriebel => TermSpec {
            tuple: ExponentTuple::new(params.q0, params.p0, params.p1, params.p1),
            alpha: params.alpha(),
            beta: params.beta(),
            label: "middle: b->b(p1,p1) blocks (bounded leg into f)",
        },
        // p0 > q0: factor through s^{r0}_{p0,p0}b
        Flavor::TriebelToBesov => TermSpec {
            tuple: ExponentTuple::new(params.p0, params.p0, params.q1, params.p1),
            alpha: params.alpha(),
            beta: params.beta(),
            label: "middle: b(p0,p0)->b blocks (bounded leg from f)",
        },
    }
}

/// Does this flavor reduce to the plain b->b pipeline through one bounded
/// factor (operator norm 1 in our constants-1 arithmetic)?
fn single_leg(params: &SmoothnessParams, flavor: Flavor) -> Option<&'static str> {
    match flavor {
        Flavor::BesovToBesov => None,
        Flavor::BesovToTriebel => {
            if params.p1.get() >= params.q1.get() {
                Some("p1 >= q1: compose b->b with the norm-1 leg b(p1,q1)->f(p1,q1)")
            } else {
                None
            }
        }
        Flavor::TriebelToBesov => {
            if params.p0.get() <= params.q0.get() {
                Some("p0 <= q0: compose the norm-1 leg f(p0,q0)->b(p0,q0) with b->b")
            } else {
                None
            }
        }
    }
}

/// Assembled upper bound at input scale `m`: ϱ-sum of the head estimate
/// (levels `0..=⌊log₂ m⌋`), the middle estimate (the next `⌊m/8⌋` levels)
/// and the closed-form geometric tail; certified at index `2m`. Every
/// hypothesis of the invoked block estimates is checked and logged;
/// failures abort the evaluation.
pub fn besov_upper_pipeline(
    params: &SmoothnessParams,
    m: usize,
    flavor: Flavor,
) -> Result<PipelineReport> {
    if m < 8 {
        return Err(Error::HypothesisViolated(format!(
            "pipeline needs m >= 8, got {m}"
        )));
    }
    if !(params.smoothness_gap() <= params.q_gap()) {
        return Err(Error::HypothesisViolated(format!(
            "small smoothness needs r0-r1 <= 1/q0-1/q1, got {} vs {}",
            params.smoothness_gap(),
            params.q_gap()
        )));
    }
    let mut checks = Vec::new();
    let mut effective_flavor = flavor;
    if let Some(note) = single_leg(params, flavor) {
        checks.push(note.to_string());
        effective_flavor = Flavor::BesovToBesov;
    }
    let rho = 1f64.min(params.p1.get()).min(params.q1.get());
    let l_m = (m as f64).log2().floor() as usize;
    let m_m = m / 8;
    let model = BlockModel::new(params.n);

    let head = head_spec(params, effective_flavor);
    let head_dims: Vec<(usize, usize)> = (0..=l_m).map(|mu| model.dims(mu)).collect();
    let term_head = weighted_block_rate(
        head.alpha,
        head.beta,
        &head.tuple,
        &head_dims,
        m,
        BlockRateRegime::LargeK,
    )?;
    checks.push(format!(
        "{} over mu in [0,{l_m}]: large-k estimate with k={m} >= max(8b={}, max d={})",
        head.label,
        8 * head_dims.len(),
        head_dims.last().map(|&(_, d)| d).unwrap_or(1),
    ));

    let mid = middle_spec(params, effective_flavor);
    let mid_dims: Vec<(usize, usize)> =
        ((l_m + 1)..=(l_m + m_m)).map(|mu| model.dims(mu)).collect();
    let term_middle = weighted_block_rate(
        mid.alpha,
        mid.beta,
        &mid.tuple,
        &mid_dims,
        m,
        BlockRateRegime::SmallK,
    )?;
    checks.push(format!(
        "{} over mu in [{}, {}]: small-k estimate with 8b={} <= k={m} <= min d={}",
        mid.label,
        l_m + 1,
        l_m + m_m,
        8 * mid_dims.len(),
        mid_dims.first().map(|&(_, d)| d).unwrap_or(usize::MAX),
    ));

    // tail: Σ_{μ > L+M} ‖id_μ‖^ϱ = 2^{−ϱδ(T+1)} / (1 − 2^{−ϱδ})
    let delta = params.smoothness_gap() - params.p_gap();
    let tail_start = (l_m + m_m + 1) as f64;
    let term_tail = 2f64.powf(-rho * delta * tail_start) / (1.0 - 2f64.powf(-rho * delta));
    checks.push(format!(
        "tail from mu={}: geometric series with per-level decay 2^(-{delta}mu)",
        l_m + m_m + 1
    ));

    let value = (term_head.powf(rho) + term_middle.powf(rho) + term_tail).powf(1.0 / rho);
    Ok(PipelineReport {
        m,
        certified_index: 2 * m,
        value,
        rho,
        head_levels: l_m + 1,
        middle_levels: m_m,
        term_head,
        term_middle,
        term_tail,
        checks,
    })
}

/// Smallest `m` at which every hypothesis check of the pipeline passes.
pub fn minimal_admissible_m(params: &SmoothnessParams, flavor: Flavor) -> Result<usize> {
    for m in 8..=(1usize << 22) {
        match besov_upper_pipeline(params, m, flavor) {
            Ok(_) => return Ok(m),
            Err(Error::HypothesisViolated(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::HypothesisViolated(
        "no admissible m below 2^22".into(),
    ))
}

/// Least-squares slope of `log value` against `log m` over the given grid;
/// the expected slope is `−(r0−r1)`.
pub fn fit_rate_slope(
    params: &SmoothnessParams,
    flavor: Flavor,
    m_values: &[usize],
) -> Result<f64> {
    if m_values.len() < 4 {
        return Err(Error::InvalidParameter(
            "slope fit needs at least 4 grid points".into(),
        ));
    }
    let xs: Vec<f64> = m_values.iter().map(|&m| m as f64).collect();
    let ys = m_values
        .iter()
        .map(|&m| besov_upper_pipeline(params, m, flavor).map(|r| r.value))
        .collect::<Result<Vec<f64>>>()?;
    log_log_slope(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(v: f64) -> Exponent {
        if v.is_infinite() {
            Exponent::INF
        } else {
            Exponent::new(v).unwrap()
        }
    }

    fn headline_params(n: usize) -> SmoothnessParams {
        // r0−r1 = 0.4, p0=p1=2, q0=1, q1=∞
        SmoothnessParams::new(0.4, 0.0, exp(2.0), exp(2.0), exp(1.0), Exponent::INF, n)
            .unwrap()
    }

    #[test]
    fn smoothness_flags() {
        let p = headline_params(2);
        assert!(p.is_small_smoothness());
        assert_eq!(p.smoothness_gap(), 0.4);
        assert_eq!(p.p_gap(), 0.0);
        assert_eq!(p.q_gap(), 1.0);
        // compactness violated at equality
        assert!(SmoothnessParams::new(
            0.5,
            0.0,
            exp(1.0),
            exp(2.0),
            exp(0.5),
            exp(2.0),
            2
        )
        .is_err());
    }

    #[test]
    fn block_dims_and_mu0() {
        let model = BlockModel::new(3);
        assert_eq!(model.dims(0), (1, 1));
        assert_eq!(model.dims(4), (25, 16));
        assert_eq!(model.dims(10), (121, 1024));
        // d_mu >= b_mu from mu0 onward, checked numerically
        for n in [2usize, 3, 5] {
            let model = BlockModel::new(n);
            let mu0 = model.mu0();
            for mu in mu0..(mu0 + 80) {
                let (b, d) = model.dims(mu);
                assert!(d >= b, "n={n} mu={mu}");
            }
        }
    }

    #[test]
    fn block_norm_examples() {
        let p = headline_params(2);
        assert_eq!(block_operator_norm(&p, 0).unwrap(), 1.0);
        // delta = 0.4: mu = 10 -> 2^{-4}
        assert!((block_operator_norm(&p, 10).unwrap() - 0.0625).abs() < 1e-15);
        // p0=1, p1=2, r0-r1=0.6: per-level exponent 0.1
        let p = SmoothnessParams::new(0.6, 0.0, exp(1.0), exp(2.0), exp(0.5), exp(2.0), 2)
            .unwrap();
        let v = block_operator_norm(&p, 1).unwrap();
        assert!((v - 2f64.powf(-0.1)).abs() < 1e-15);
    }

    #[test]
    fn tail_matches_geometric_series() {
        let p = headline_params(2);
        let report = besov_upper_pipeline(&p, 1024, Flavor::BesovToBesov).unwrap();
        let rho = 1.0; // min{1, 2, ∞}
        let delta = 0.4;
        let t = (report.head_levels + report.middle_levels) as f64;
        let expect = 2f64.powf(-rho * delta * (t + 1.0)) / (1.0 - 2f64.powf(-rho * delta));
        assert!((report.term_tail - expect).abs() < 1e-15);
        // for large m the tail is dominated by the head+middle terms
        assert!(report.term_tail < report.term_head + report.term_middle);
    }

    #[test]
    fn pipeline_value_scales_like_m_to_minus_gap() {
        let p = headline_params(2);
        let r1 = besov_upper_pipeline(&p, 1 << 10, Flavor::BesovToBesov).unwrap();
        assert!(r1.value.is_finite() && r1.value > 0.0);
        assert_eq!(r1.certified_index, 2 << 10);
        let ms: Vec<usize> = (6..=14).map(|e| 1usize << e).collect();
        let slope = fit_rate_slope(&p, Flavor::BesovToBesov, &ms).unwrap();
        assert!((slope + 0.4).abs() < 0.15, "slope {slope}");
    }

    #[test]
    fn dimension_free_slopes() {
        let ms: Vec<usize> = (6..=14).map(|e| 1usize << e).collect();
        let slopes: Vec<f64> = [2usize, 3, 5]
            .iter()
            .map(|&n| fit_rate_slope(&headline_params(n), Flavor::BesovToBesov, &ms).unwrap())
            .collect();
        for i in 0..slopes.len() {
            for j in (i + 1)..slopes.len() {
                assert!((slopes[i] - slopes[j]).abs() < 0.1);
            }
        }
    }

    #[test]
    fn flavors_route_through_diagrams() {
        // p1 >= q1: b->f is the b->b value through a bounded leg
        let p = headline_params(2); // q1 = ∞ > p1 = 2 -> needs diagrams
        let bf = besov_upper_pipeline(&p, 256, Flavor::BesovToTriebel).unwrap();
        assert!(bf.checks.iter().any(|c| c.contains("b(q1,q1)") || c.contains("p1 >= q1")));

        // f->b with p0 < q0: single bounded leg, value equals b->b
        let p2 = SmoothnessParams::new(0.3, 0.0, exp(1.0), exp(1.0), exp(2.0), Exponent::INF, 2)
            .unwrap();
        let bb = besov_upper_pipeline(&p2, 256, Flavor::BesovToBesov).unwrap();
        let fb = besov_upper_pipeline(&p2, 256, Flavor::TriebelToBesov).unwrap();
        assert_eq!(fb.value, bb.value);
        assert!(fb.checks[0].contains("p0 <= q0"));
    }

    #[test]
    fn minimal_m_is_computed_not_assumed() {
        let p = headline_params(2);
        let m0 = minimal_admissible_m(&p, Flavor::BesovToBesov).unwrap();
        assert!(besov_upper_pipeline(&p, m0, Flavor::BesovToBesov).is_ok());
        assert!(besov_upper_pipeline(&p, m0 - 1, Flavor::BesovToBesov).is_err());
        // the binding constraint is m >= 8(⌊log2 m⌋ + 1)
        assert_eq!(m0, 48);
    }

    #[test]
    fn pipeline_monotone_on_grid() {
        let p = headline_params(3);
        let mut prev = f64::INFINITY;
        for e in 6..=14 {
            let v = besov_upper_pipeline(&p, 1usize << e, Flavor::BesovToBesov)
                .unwrap()
                .value;
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn hypothesis_failures_are_named() {
        // violate small smoothness: r0-r1 > 1/q0-1/q1
        let p = SmoothnessParams::new(1.5, 0.0, exp(2.0), exp(2.0), exp(1.0), exp(2.0), 2)
            .unwrap();
        match besov_upper_pipeline(&p, 256, Flavor::BesovToBesov) {
            Err(Error::HypothesisViolated(msg)) => {
                assert!(msg.contains("small smoothness"), "{msg}")
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }
}
