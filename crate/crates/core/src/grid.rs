//! The dyadic grid over the simplex: the rounding map `υ`, exact enumeration
//! of `Γ(b)` and its `1/p`-power transform `Γ(b,p)`, and the witnesses for
//! its structural properties (domination, integrality, ℓ₁-mass, cardinality).
//!
//! A level vector `(k_1..k_b)` encodes the grid vector `v_i = 2^{k_i}/b`. A
//! level vector is achievable as `υ(x)` for some simplex point exactly when
//! `Σ_{i: k_i ≥ 1} 2^{k_i−1} ≤ b−1`; enumeration runs over that
//! characterization (the mesh-image computation below validates it for small
//! `b` and is kept only as an oracle).
//!
//! Note the measured ℓ₁-mass: every component satisfies `b·v_i ≤ 2(b−1)`, so
//! `‖v‖₁ ≤ (b + 2(b−1))/b < 3`, and masses above 2 do occur (first at b = 5).
//! Downstream radius constants use the provable `< 3` bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;

/// Exhaustive enumeration cap; `♯Γ(b)` grows like `2^{cb}`.
pub const GRID_DIM_CAP: usize = 16;

/// An element of `Γ(b)`: component `i` equals `2^{levels[i]} / b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridVector {
    pub b: usize,
    pub levels: Vec<u32>,
}

impl GridVector {
    pub fn component(&self, i: usize) -> f64 {
        2f64.powi(self.levels[i] as i32) / self.b as f64
    }

    pub fn components(&self) -> Vec<f64> {
        (0..self.b).map(|i| self.component(i)).collect()
    }

    /// `b·v_i`, always a natural number.
    pub fn numerator(&self, i: usize) -> u64 {
        1u64 << self.levels[i]
    }

    pub fn l1_mass(&self) -> f64 {
        let num: u64 = (0..self.b).map(|i| self.numerator(i)).sum();
        num as f64 / self.b as f64
    }

    /// Component as an exact reduced fraction string `num/den`.
    pub fn rational_component(&self, i: usize) -> String {
        let mut num = self.numerator(i);
        let mut den = self.b as u64;
        while num % 2 == 0 && den % 2 == 0 {
            num /= 2;
            den /= 2;
        }
        let g = gcd(num, den);
        format!("{}/{}", num / g, den / g)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A point of the simplex `S(b) = {x ∈ [0,1]^b : Σ x_i ≤ 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    pub b: usize,
    pub coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let b = coords.len();
        if b == 0 {
            return Err(Error::InvalidParameter("empty simplex point".into()));
        }
        if coords.iter().any(|&c| !(0.0..=1.0 + 1e-12).contains(&c)) {
            return Err(Error::InvalidParameter(
                "simplex coordinates must lie in [0,1]".into(),
            ));
        }
        let sum: f64 = coords.iter().sum();
        if sum > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "simplex coordinate sum {sum} exceeds 1"
            )));
        }
        Ok(Self { b, coords })
    }
}

/// `υ₀(t) = 2^{max{0, ⌈log₂ t⌉}}`: the smallest power of two ≥ max(t, 1).
/// `υ₀(0) = 1` by the max-with-zero convention. Idempotent.
pub fn upsilon0(t: f64) -> Result<f64> {
    Ok(2f64.powi(upsilon0_level(t)? as i32))
}

/// Level form of `υ₀`: returns `max{0, ⌈log₂ t⌉}` as an integer.
pub fn upsilon0_level(t: f64) -> Result<u32> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "upsilon0 needs a nonnegative input, got {t}"
        )));
    }
    if t <= 1.0 {
        return Ok(0);
    }
    // smallest k with 2^k >= t
    let mut k = t.log2().ceil() as u32;
    // guard against log/ceil rounding at exact powers of two
    while 2f64.powi(k as i32) < t {
        k += 1;
    }
    while k > 0 && 2f64.powi(k as i32 - 1) >= t {
        k -= 1;
    }
    Ok(k)
}

/// `υ(x) = b^{-1}(υ₀(b x_1), …, υ₀(b x_b))`; dominates `x` componentwise.
pub fn upsilon(x: &SimplexPoint) -> GridVector {
    let b = x.b;
    let levels = x
        .coords
        .iter()
        .map(|&c| upsilon0_level((b as f64) * c).expect("nonnegative"))
        .collect();
    GridVector { b, levels }
}

/// Exact enumeration of `Γ(b) = υ(S(b))`, sorted lexicographically by level
/// vector. Cardinality is at most `2^{3b}`.
pub fn enumerate_grid(b: usize) -> Result<Vec<GridVector>> {
    if b == 0 {
        return Err(Error::InvalidParameter("b must be positive".into()));
    }
    if b > GRID_DIM_CAP {
        return Err(Error::CapExceeded(format!(
            "grid enumeration capped at b <= {GRID_DIM_CAP}, got {b}"
        )));
    }
    let budget = b as u64 - 1; // Σ_{k_i ≥ 1} 2^{k_i − 1} ≤ b − 1
    let mut out = Vec::new();
    let mut levels = vec![0u32; b];
    fn recurse(
        levels: &mut Vec<u32>,
        i: usize,
        b: usize,
        budget_left: u64,
        out: &mut Vec<GridVector>,
    ) {
        if i == b {
            out.push(GridVector {
                b,
                levels: levels.clone(),
            });
            return;
        }
        // level 0 costs nothing
        levels[i] = 0;
        recurse(levels, i + 1, b, budget_left, out);
        let mut k = 1u32;
        while (1u64 << (k - 1)) <= budget_left {
            levels[i] = k;
            recurse(levels, i + 1, b, budget_left - (1u64 << (k - 1)), out);
            k += 1;
        }
        levels[i] = 0;
    }
    recurse(&mut levels, 0, b, budget, &mut out);
    out.sort();
    Ok(out)
}

/// `Γ(b,p)`: componentwise power `1/p` of the grid. `p = ∞` collapses every
/// vector to all-ones; duplicates are removed.
pub fn transform_grid(grid: &[GridVector], p: Exponent) -> Vec<Vec<f64>> {
    let inv = p.reciprocal();
    let mut out: Vec<Vec<f64>> = grid
        .iter()
        .map(|v| v.components().iter().map(|c| c.powf(inv)).collect())
        .collect();
    if p.is_infinite() {
        out.dedup();
    }
    out
}

/// Image of a fine mesh of `S(b)` under `υ` — the validation oracle for the
/// admissibility characterization, practical for `b ≤ 4`.
pub fn enumerate_grid_via_mesh(b: usize, steps: usize) -> Result<Vec<GridVector>> {
    if b > 4 {
        return Err(Error::CapExceeded("mesh oracle capped at b <= 4".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut coords = vec![0usize; b];
    loop {
        let total: usize = coords.iter().sum();
        if total <= steps {
            let x = SimplexPoint::new(
                coords
                    .iter()
                    .map(|&c| c as f64 / steps as f64)
                    .collect::<Vec<_>>(),
            )?;
            seen.insert(upsilon(&x));
        }
        // odometer over [0, steps]^b
        let mut i = 0;
        loop {
            if i == b {
                return Ok(seen.into_iter().collect());
            }
            coords[i] += 1;
            if coords[i] > steps {
                coords[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Summary facts about `Γ(b)` used by reports and the acceptance suite.
#[derive(Debug, Clone, Serialize)]
pub struct GridSummary {
    pub b: usize,
    pub cardinality: usize,
    pub max_l1_mass: f64,
    pub cardinality_cap: f64,
}

pub fn grid_summary(b: usize) -> Result<GridSummary> {
    let grid = enumerate_grid(b)?;
    let max_l1_mass = grid.iter().map(|v| v.l1_mass()).fold(0.0, f64::max);
    Ok(GridSummary {
        b,
        cardinality: grid.len(),
        max_l1_mass,
        cardinality_cap: 2f64.powi(3 * b as i32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn upsilon0_examples() {
        assert_eq!(upsilon0(0.3).unwrap(), 1.0);
        assert_eq!(upsilon0(4.0).unwrap(), 4.0);
        assert_eq!(upsilon0(5.0).unwrap(), 8.0);
        assert_eq!(upsilon0(0.0).unwrap(), 1.0);
        assert_eq!(upsilon0(1.0).unwrap(), 1.0);
        assert!(upsilon0(-0.1).is_err());
        // idempotent
        for t in [0.0, 0.3, 1.0, 1.5, 4.0, 5.0, 100.0] {
            let once = upsilon0(t).unwrap();
            assert_eq!(upsilon0(once).unwrap(), once);
        }
    }

    #[test]
    fn upsilon_examples() {
        let x = SimplexPoint::new(vec![0.3, 0.3]).unwrap();
        assert_eq!(upsilon(&x).components(), vec![0.5, 0.5]);
        let x = SimplexPoint::new(vec![0.8, 0.1]).unwrap();
        assert_eq!(upsilon(&x).components(), vec![1.0, 0.5]);
        let x = SimplexPoint::new(vec![0.9, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(upsilon(&x).components(), vec![1.0, 0.25, 0.25, 0.25]);
    }

    #[test]
    fn grid_b1_and_b2() {
        let g1 = enumerate_grid(1).unwrap();
        assert_eq!(g1.len(), 1);
        assert_eq!(g1[0].components(), vec![1.0]);

        let g2 = enumerate_grid(2).unwrap();
        assert_eq!(g2.len(), 3);
        let comps: Vec<Vec<f64>> = g2.iter().map(|v| v.components()).collect();
        assert!(comps.contains(&vec![0.5, 0.5]));
        assert!(comps.contains(&vec![1.0, 0.5]));
        assert!(comps.contains(&vec![0.5, 1.0]));
    }

    #[test]
    fn enumeration_matches_mesh_image_for_small_b() {
        for b in 1..=4usize {
            let exact = enumerate_grid(b).unwrap();
            let mesh = enumerate_grid_via_mesh(b, 64).unwrap();
            assert_eq!(exact, mesh, "b={b}");
        }
    }

    #[test]
    fn domination_and_membership_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for b in 1..=8usize {
            let grid: std::collections::BTreeSet<_> =
                enumerate_grid(b).unwrap().into_iter().collect();
            for _ in 0..1000 {
                // random simplex point via sorted uniforms
                let mut cuts: Vec<f64> = (0..b).map(|_| rng.gen::<f64>()).collect();
                cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let scale: f64 = rng.gen();
                let mut coords = Vec::with_capacity(b);
                let mut prev = 0.0;
                for &c in &cuts {
                    coords.push((c - prev) * scale);
                    prev = c;
                }
                let x = SimplexPoint::new(coords).unwrap();
                let v = upsilon(&x);
                assert!(grid.contains(&v), "image must be enumerated (b={b})");
                for i in 0..b {
                    assert!(v.component(i) >= x.coords[i]);
                }
            }
        }
    }

    #[test]
    fn integrality_mass_and_cardinality() {
        for b in 1..=10usize {
            let grid = enumerate_grid(b).unwrap();
            assert!((grid.len() as f64) <= 2f64.powi(3 * b as i32));
            for v in &grid {
                let mass = v.l1_mass();
                assert!(mass < 3.0, "b={b} mass={mass}");
                for i in 0..b {
                    let scaled = v.component(i) * b as f64;
                    assert_eq!(scaled, scaled.round());
                }
            }
        }
        // the classical mass bound 2 is first exceeded at b = 5
        let s5 = grid_summary(5).unwrap();
        assert!(s5.max_l1_mass > 2.0, "got {}", s5.max_l1_mass);
        let s4 = grid_summary(4).unwrap();
        assert!(s4.max_l1_mass <= 2.0);
    }

    #[test]
    fn transform_identity_and_infinity() {
        let grid = enumerate_grid(3).unwrap();
        let t1 = transform_grid(&grid, Exponent::new(1.0).unwrap());
        for (v, t) in grid.iter().zip(&t1) {
            assert_eq!(&v.components(), t);
        }
        let tinf = transform_grid(&grid, Exponent::INF);
        assert_eq!(tinf.len(), 1);
        assert!(tinf[0].iter().all(|&c| c == 1.0));
        let t2 = transform_grid(&enumerate_grid(2).unwrap(), Exponent::new(2.0).unwrap());
        // (1, 1/2) -> (1, 1/√2)
        assert!(t2
            .iter()
            .any(|t| (t[0] - 1.0).abs() < 1e-15 && (t[1] - 0.5f64.sqrt()).abs() < 1e-12));
    }

    #[test]
    fn rational_components_are_reduced() {
        let g = enumerate_grid(4).unwrap();
        let v = g
            .iter()
            .find(|v| v.levels == vec![2, 0, 0, 0])
            .expect("level (2,0,0,0) admissible at b=4");
        assert_eq!(v.rational_component(0), "1/1");
        assert_eq!(v.rational_component(1), "1/4");
    }
}
