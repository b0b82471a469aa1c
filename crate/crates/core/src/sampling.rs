//! Seeded sampling in mixed-norm balls, used by the covering verifiers.
//!
//! Directions come from normalized exponential-power (generalized Gaussian)
//! draws per inner/outer exponent, scaled by a `U^{1/(bd)}` radius; the
//! resulting point has mixed norm equal to the radius, so membership is
//! exact by construction. Boundary-biased draws pin the radius to 1.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::exponent::Exponent;
use crate::matrix::MixedMatrix;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One draw with density ∝ exp(−|t|^p); `p = ∞` degenerates to U[−1,1].
pub fn exponential_power(rng: &mut ChaCha8Rng, p: Exponent) -> f64 {
    if p.is_infinite() {
        return rng.gen_range(-1.0..=1.0);
    }
    let pv = p.get();
    // |T|^p ~ Gamma(1/p, 1) under the exp(−|t|^p) density
    let gamma = Gamma::new(1.0 / pv, 1.0).expect("valid shape");
    let g: f64 = gamma.sample(rng);
    let mag = g.powf(1.0 / pv);
    if rng.gen::<bool>() {
        mag
    } else {
        -mag
    }
}

fn normalized_direction(rng: &mut ChaCha8Rng, n: usize, p: Exponent) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| exponential_power(rng, p)).collect();
        let norm = crate::matrix::lp_norm(&v, p);
        if norm > 1e-300 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

/// A point of `B_{ℓ_p^b(ℓ_q^d)}` with mixed norm exactly `radius ≤ 1`
/// (up to float rounding). `boundary = true` pins the norm to 1.
pub fn sample_ball_point(
    rng: &mut ChaCha8Rng,
    b: usize,
    d: usize,
    p: Exponent,
    q: Exponent,
    boundary: bool,
) -> MixedMatrix {
    let radius = if boundary {
        1.0
    } else {
        rng.gen::<f64>().powf(1.0 / (b * d) as f64)
    };
    let magnitudes = normalized_direction(rng, b, p);
    let mut entries = Vec::with_capacity(b * d);
    for mag in magnitudes {
        let row = normalized_direction(rng, d, q);
        for y in row {
            entries.push(radius * mag.abs() * y);
        }
    }
    MixedMatrix { b, d, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mixed_norm;

    #[test]
    fn samples_stay_in_ball() {
        let mut rng = seeded_rng(9);
        let grid = [
            Exponent::new(0.5).unwrap(),
            Exponent::new(1.0).unwrap(),
            Exponent::new(2.0).unwrap(),
            Exponent::INF,
        ];
        for &p in &grid {
            for &q in &grid {
                for i in 0..200 {
                    let x = sample_ball_point(&mut rng, 3, 2, p, q, i % 4 == 0);
                    let norm = mixed_norm(&x, p, q);
                    assert!(norm <= 1.0 + 1e-9, "p={p} q={q}: norm {norm}");
                }
            }
        }
    }

    #[test]
    fn boundary_draws_sit_on_the_sphere() {
        let mut rng = seeded_rng(10);
        let p = Exponent::new(1.0).unwrap();
        let q = Exponent::new(2.0).unwrap();
        for _ in 0..100 {
            let x = sample_ball_point(&mut rng, 2, 3, p, q, true);
            let norm = mixed_norm(&x, p, q);
            assert!((norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let p = Exponent::new(2.0).unwrap();
        let a = sample_ball_point(&mut seeded_rng(7), 2, 2, p, p, false);
        let b = sample_ball_point(&mut seeded_rng(7), 2, 2, p, p, false);
        assert_eq!(a.entries, b.entries);
    }
}
