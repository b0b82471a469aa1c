//! The two combinatorial engines behind the packing lower bounds: greedy
//! Gilbert–Varshamov codes over m-ary alphabets, and families of 2s-subsets
//! of `[n]` with pairwise intersections below s.
//!
//! Both constructors verify their output exhaustively before returning it;
//! an unverified design never escapes this module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::binomial;

/// Hard cap on the greedy GV candidate space `m^{2s}`.
pub const GV_ENUMERATION_CAP: u128 = 10_000_000;

/// Switch from lexicographic to seeded-random candidate streams once the
/// number of 2s-subsets passes this.
const SUBSET_LEX_CAP: u128 = 2_000_000;

const SUBSET_RESTARTS: u64 = 8;

/// A code over `[m]` of length `2s` with pairwise Hamming distance ≥ s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GvCode {
    pub alphabet_size: usize,
    pub length: usize,
    pub min_distance: usize,
    pub words: Vec<Vec<u16>>,
}

impl GvCode {
    /// Exhaustive pairwise distance check.
    pub fn verify(&self) -> Result<usize> {
        let mut observed_min = self.length + 1;
        for i in 0..self.words.len() {
            for j in (i + 1)..self.words.len() {
                let dist = hamming(&self.words[i], &self.words[j]);
                if dist < self.min_distance {
                    return Err(Error::VerificationFailed(format!(
                        "words {i} and {j} at Hamming distance {dist} < {}",
                        self.min_distance
                    )));
                }
                observed_min = observed_min.min(dist);
            }
        }
        Ok(observed_min.min(self.length))
    }
}

fn hamming(a: &[u16], b: &[u16]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// The Gilbert–Varshamov guarantee `⌈m^{2s} / Σ_{k<s} C(2s,k)(m−1)^k⌉`,
/// computed in exact integer arithmetic.
pub fn gv_lower_bound(m: usize, s: usize) -> Result<u128> {
    let total = (m as u128)
        .checked_pow(2 * s as u32)
        .filter(|&t| t <= GV_ENUMERATION_CAP)
        .ok_or_else(|| {
            Error::CapExceeded(format!("m^(2s) = {m}^{} beyond enumeration cap", 2 * s))
        })?;
    let mut ball: u128 = 0;
    for k in 0..s {
        let c = binomial(2 * s as u64, k as u64)?;
        ball += c * (m as u128 - 1).pow(k as u32);
    }
    Ok(total.div_ceil(ball))
}

/// Greedy code over the lexicographic word order: accept a word iff it keeps
/// Hamming distance ≥ s to everything accepted so far. Run to maximality
/// (`cap = None`) the greedy always meets the GV bound and that is asserted;
/// with a cap it stops early at `cap` words (any greedy prefix is a valid
/// code, and the size guarantee is then `min(cap, bound)`). Tie-breaking is
/// lexicographic by construction.
pub fn build_gv_code(m: usize, s: usize, cap: Option<usize>) -> Result<GvCode> {
    if m < 1 || s < 1 {
        return Err(Error::InvalidParameter(
            "GV code needs m >= 1 and s >= 1".into(),
        ));
    }
    if m == 1 {
        return Ok(GvCode {
            alphabet_size: 1,
            length: 2 * s,
            min_distance: s,
            words: vec![vec![0; 2 * s]],
        });
    }
    let bound = gv_lower_bound(m, s)?;
    let len = 2 * s;
    let mut words: Vec<Vec<u16>> = Vec::new();
    let mut current = vec![0u16; len];
    'outer: loop {
        let ok = words.iter().all(|w| hamming(w, &current) >= s);
        if ok {
            words.push(current.clone());
            if let Some(stop) = cap {
                if words.len() >= stop {
                    break;
                }
            }
        }
        // lexicographic odometer over [m]^{2s}
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
    let guaranteed = match cap {
        None => bound,
        Some(c) => bound.min(c as u128),
    };
    if (words.len() as u128) < guaranteed {
        return Err(Error::ConstructionFailed(format!(
            "greedy GV code has {} words, below the guaranteed {guaranteed}",
            words.len()
        )));
    }
    let code = GvCode {
        alphabet_size: m,
        length: len,
        min_distance: s,
        words,
    };
    code.verify()?;
    Ok(code)
}

/// A family of 2s-subsets of `[n]` (0-based elements) with all pairwise
/// intersections of cardinality < s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetFamily {
    pub ground_size: usize,
    pub s: usize,
    pub seed: u64,
    pub sets: Vec<Vec<u32>>,
}

impl SubsetFamily {
    /// Exhaustive pairwise intersection check; returns the maximum observed.
    pub fn verify(&self) -> Result<usize> {
        let mut max_int = 0;
        for i in 0..self.sets.len() {
            for j in (i + 1)..self.sets.len() {
                let inter = intersection_size(&self.sets[i], &self.sets[j]);
                if inter >= self.s {
                    return Err(Error::VerificationFailed(format!(
                        "sets {i} and {j} intersect in {inter} >= s = {}",
                        self.s
                    )));
                }
                max_int = max_int.max(inter);
            }
        }
        Ok(max_int)
    }
}

fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    // both sorted
    let mut i = 0;
    let mut j = 0;
    let mut n = 0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// `⌈(n/(8s))^s⌉`, clamped below at 1.
pub fn subset_family_lower_bound(n: usize, s: usize) -> u64 {
    let v = (n as f64 / (8.0 * s as f64)).powi(s as i32);
    (v.ceil() as u64).max(1)
}

/// Greedy family of 2s-subsets with pairwise intersection < s. Candidates
/// come in lexicographic order when `C(n,2s)` is small and from a seeded
/// pseudorandom stream (with restarts) otherwise; construction fails loudly
/// rather than truncating silently.
pub fn build_subset_family(n: usize, s: usize, seed: u64) -> Result<SubsetFamily> {
    if s == 0 || 2 * s >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 < s < n/2, got n={n} s={s}"
        )));
    }
    let target = subset_family_lower_bound(n, s);
    let lex = binomial(n as u64, 2 * s as u64)? <= SUBSET_LEX_CAP;
    if lex {
        let sets = greedy_lex_subsets(n, s, target);
        let family = SubsetFamily {
            ground_size: n,
            s,
            seed,
            sets,
        };
        if (family.sets.len() as u64) < target {
            return Err(Error::ConstructionFailed(format!(
                "lexicographic greedy found {} sets, target {target} (n={n}, s={s})",
                family.sets.len()
            )));
        }
        family.verify()?;
        return Ok(family);
    }
    for restart in 0..SUBSET_RESTARTS {
        let sets = greedy_random_subsets(n, s, target, seed + restart);
        if sets.len() as u64 >= target {
            let family = SubsetFamily {
                ground_size: n,
                s,
                seed: seed + restart,
                sets,
            };
            family.verify()?;
            return Ok(family);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no family of {target} subsets found after {SUBSET_RESTARTS} restarts (n={n}, s={s})"
    )))
}

fn accepts(accepted: &[Vec<u32>], candidate: &[u32], s: usize) -> bool {
    accepted
        .iter()
        .all(|a| intersection_size(a, candidate) < s)
}

fn greedy_lex_subsets(n: usize, s: usize, target: u64) -> Vec<Vec<u32>> {
    let k = 2 * s;
    let mut sets: Vec<Vec<u32>> = Vec::new();
    let mut comb: Vec<u32> = (0..k as u32).collect();
    loop {
        if accepts(&sets, &comb, s) {
            sets.push(comb.clone());
            // keep going past the target: larger families make better
            // packings, but the pairwise verification is quadratic
            if sets.len() as u64 >= target.max(64) {
                break;
            }
        }
        // next combination in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return sets;
            }
            i -= 1;
            if comb[i] < (n - (k - i)) as u32 {
                comb[i] += 1;
                for j in (i + 1)..k {
                    comb[j] = comb[j - 1] + 1;
                }
                break;
            }
        }
    }
    sets
}

fn greedy_random_subsets(n: usize, s: usize, target: u64, seed: u64) -> Vec<Vec<u32>> {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = 2 * s;
    let mut sets: Vec<Vec<u32>> = Vec::new();
    let attempts = 20_000 + 4_000 * target;
    let mut pool: Vec<u32> = (0..n as u32).collect();
    for _ in 0..attempts {
        // random 2s-subset via partial shuffle
        for i in 0..k {
            let j = rng.gen_range(i..n);
            pool.swap(i, j);
        }
        let mut cand: Vec<u32> = pool[..k].to_vec();
        cand.sort_unstable();
        if accepts(&sets, &cand, s) {
            sets.push(cand);
            if sets.len() as u64 >= target {
                break;
            }
        }
    }
    sets
}
