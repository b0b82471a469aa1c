//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured runtime (run with `--nocapture` to see them). Tolerances are
//! pinned here, not configurable.

use std::time::Instant;

use mixent_core::besov::{fit_rate_slope, Flavor, SmoothnessParams};
use mixent_core::covering::{
    cuboid_covering, et_sparse_covering, trivial_covering, IntervalProvider, SparseCoveringMode,
};
use mixent_core::designs::{
    build_gv_code, build_subset_family, gv_lower_bound, subset_family_lower_bound,
};
use mixent_core::exponent::{Exponent, ExponentTuple};
use mixent_core::grid::{enumerate_grid, grid_summary, upsilon, GridVector, SimplexPoint};
use mixent_core::oracle::{ladder_table, oracle_packing_certificate, DiscretizedBall};
use mixent_core::packing::{packing_to_entropy_lower, two_level_sparse_packing};
use mixent_core::rates::{
    lp_ball_volume_root, matching_rate, mixed_ball_volume_root, proof_scan_curve, schuett_rate,
};
use mixent_core::sandwich_check;

fn exp(v: f64) -> Exponent {
    if v.is_infinite() {
        Exponent::INF
    } else {
        Exponent::new(v).unwrap()
    }
}

fn tuple(p: f64, q: f64, r: f64, u: f64) -> ExponentTuple {
    ExponentTuple::new(exp(p), exp(q), exp(r), exp(u))
}

const INF: f64 = f64::INFINITY;

/// Exponent grid {1/2, 1, 2, ∞} restricted to monotone (p ≤ r, q ≤ u).
fn monotone_grid(values: &[f64]) -> Vec<ExponentTuple> {
    let mut out = Vec::new();
    for &p in values {
        for &r in values {
            if p > r {
                continue;
            }
            for &q in values {
                for &u in values {
                    if q > u {
                        continue;
                    }
                    out.push(tuple(p, q, r, u));
                }
            }
        }
    }
    out
}

fn random_simplex_point(rng: &mut rand_chacha::ChaCha8Rng, b: usize) -> SimplexPoint {
    use rand::Rng;
    let mut cuts: Vec<f64> = (0..b).map(|_| rng.gen::<f64>()).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let scale: f64 = rng.gen();
    let mut coords = Vec::with_capacity(b);
    let mut prev = 0.0;
    for &c in &cuts {
        coords.push((c - prev) * scale);
        prev = c;
    }
    SimplexPoint::new(coords).unwrap()
}

#[test]
fn criterion_01_grid_suite() {
    let start = Instant::now();
    let mut rng = mixent_core::sampling::seeded_rng(0xC1);
    let mut global_max_mass: f64 = 0.0;
    let mut first_b_above_2: Option<usize> = None;
    for b in 1..=12usize {
        let grid = enumerate_grid(b).unwrap();
        assert!(
            (grid.len() as f64) <= 2f64.powi(3 * b as i32),
            "cardinality bound violated at b={b}"
        );
        let members: std::collections::BTreeSet<GridVector> = grid.iter().cloned().collect();
        for _ in 0..10_000 {
            let x = random_simplex_point(&mut rng, b);
            let v = upsilon(&x);
            assert!(members.contains(&v), "b={b}: image point not enumerated");
            for i in 0..b {
                assert!(v.component(i) >= x.coords[i], "b={b}: domination failed");
            }
        }
        let summary = grid_summary(b).unwrap();
        assert!(summary.max_l1_mass < 3.0, "b={b}: mass {}", summary.max_l1_mass);
        global_max_mass = global_max_mass.max(summary.max_l1_mass);
        if summary.max_l1_mass > 2.0 && first_b_above_2.is_none() {
            first_b_above_2 = Some(b);
        }
    }
    assert_eq!(enumerate_grid(2).unwrap().len(), 3);
    let b2 = first_b_above_2.expect("mass above 2 should occur");
    println!(
        "ACCEPTANCE 01 grid: PASS — max ℓ1-mass {global_max_mass:.4} (first > 2 at b={b2}), \
         Γ(2)=3, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_02_designs_suite() {
    let start = Instant::now();
    for m in 1..=5usize {
        for s in 1..=3usize {
            let code = build_gv_code(m, s, None).unwrap();
            let verified = code.verify().unwrap();
            assert!(verified >= s || code.words.len() == 1);
            assert!(
                (code.words.len() as u128) >= gv_lower_bound(m, s).unwrap(),
                "GV fraction violated at m={m} s={s}"
            );
        }
    }
    let mut families = 0;
    for n in 3..=64usize {
        for s in 1..=4usize {
            if 2 * s >= n {
                continue;
            }
            let fam = build_subset_family(n, s, 7).unwrap();
            assert!(fam.verify().unwrap() < s);
            assert!(
                fam.sets.len() as u64 >= subset_family_lower_bound(n, s),
                "family bound violated at n={n} s={s}"
            );
            families += 1;
        }
    }
    println!(
        "ACCEPTANCE 02 designs: PASS — 15 GV codes, {families} subset families, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_03_packing_suite() {
    let start = Instant::now();
    let shapes: [(usize, usize, usize, usize); 5] =
        [(8, 8, 1, 1), (16, 8, 1, 1), (16, 8, 2, 1), (8, 16, 1, 1), (8, 16, 1, 2)];
    let grid = monotone_grid(&[0.5, 1.0, 2.0, INF]);
    let mut built = 0;
    for &(b, d, s, t) in &shapes {
        for params in &grid {
            let cert = two_level_sparse_packing(params, b, d, s, t, 128, 3)
                .unwrap_or_else(|e| panic!("({b},{d},{s},{t}) {params}: {e}"));
            // constructor verifies; re-verify from raw data regardless
            let v = cert.verify().unwrap();
            assert!(v.count as u64 >= cert.advertised_count);
            assert!(v.min_pairwise_distance >= cert.separation * (1.0 - 1e-9));
            built += 1;
        }
    }
    println!(
        "ACCEPTANCE 03 packing: PASS — {built} certificates re-verified, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_04_covering_suite() {
    let start = Instant::now();
    let samples = 100_000;
    for &(b, k) in &[(2usize, 16usize), (2, 32), (4, 32)] {
        for &(p, r) in &[(1.0, INF), (1.0, 2.0), (2.0, 2.0)] {
            let t = tuple(p, p, r, r);
            let cert = cuboid_covering(&IntervalProvider, &t, b, k, samples, 0xC4).unwrap();
            assert!(
                cert.center_count <= 1u128 << k,
                "(b,k)=({b},{k}): count {} above 2^{k}",
                cert.center_count
            );
            assert_eq!(cert.coverage.misses, 0);
            assert_eq!(cert.coverage.samples, samples);
        }
    }
    for &k in &[8usize, 16] {
        let t = tuple(1.0, 1.0, INF, 1.0);
        let cert =
            et_sparse_covering(&t, 8, 2, k, SparseCoveringMode::Lattice, samples, 0xC4).unwrap();
        assert_eq!(cert.coverage.misses, 0);
        // exact recount equals the stored product C(b,s)·inner
        assert_eq!(cert.recount().unwrap(), cert.center_count);
    }
    println!(
        "ACCEPTANCE 04 covering: PASS — 9 cuboid + 2 sparse certificates at 10^5 samples, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_05_oracle_sandwich() {
    let start = Instant::now();
    let shapes: [(usize, usize); 8] =
        [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1), (2, 2)];
    let grid = monotone_grid(&[1.0, 2.0, INF]);
    // mathematically identical instances collapse onto a canonical key
    let canon = |b: usize, d: usize, t: &ExponentTuple| -> (usize, usize, u64, u64, u64, u64) {
        let enc = |e: Exponent| e.get().to_bits();
        if b == 1 {
            (d, 1, enc(t.q), enc(t.q), enc(t.u), enc(t.u))
        } else if d == 1 {
            (b, 1, enc(t.p), enc(t.p), enc(t.r), enc(t.r))
        } else {
            (b, d, enc(t.p), enc(t.q), enc(t.r), enc(t.u))
        }
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut checked = 0usize;
    let mut instances = 0usize;
    for &(b, d) in &shapes {
        for params in &grid {
            if !seen.insert(canon(b, d, params)) {
                continue;
            }
            instances += 1;
            for &eps in &[0.25f64, 0.5, 1.0] {
                let ball =
                    DiscretizedBall::build(b, d, params.p, params.q, eps / 10.0).unwrap();
                let s = mixent_core::oracle::sandwich_counts(&ball, eps, params.r, params.u)
                    .unwrap();
                assert!(
                    sandwich_check(s.packing_at_2eps, s.covering_at_eps, s.packing_at_eps),
                    "sandwich failed: (b,d)=({b},{d}) {params} eps={eps}: {s:?}"
                );
                checked += 1;
            }
            // monotone curves with lower ≤ upper on a shared coarse mesh
            let (lower, upper) = mixent_core::oracle::empirical_entropy_curve(
                params,
                b,
                d,
                3 * b * d,
                0.05,
            )
            .unwrap();
            assert!(lower.is_nonincreasing());
            assert!(upper.is_nonincreasing());
            for pt in lower.points() {
                if let Some(up) = upper.value_at(pt.index) {
                    assert!(pt.value <= up * (1.0 + 1e-12));
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 05 oracle sandwich: PASS — {checked} sandwiches over {instances} distinct \
         instances, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_06_formula_crosscheck() {
    let start = Instant::now();
    let grid = monotone_grid(&[0.5, 1.0, 2.0, INF]);
    let mut worst_ratio: f64 = 1.0;
    let mut boundary_worst: f64 = 1.0;
    for &b in &[4usize, 16, 64] {
        for &d in &[4usize, 16, 64] {
            let bd = b * d;
            let kmin = ((bd as f64).ln().ceil() as usize).max(1);
            for params in &grid {
                let scan = proof_scan_curve(params, b, d, bd).unwrap();
                let mut prev: Option<(f64, String)> = None;
                for k in kmin..=bd {
                    let formula = matching_rate(params, b, d, k).unwrap();
                    let ratio = scan[k - 1] / formula.value;
                    assert!(
                        (1.0 / 16.0..=16.0).contains(&ratio),
                        "scan/formula ratio {ratio} at (b,d,k)=({b},{d},{k}) {params}"
                    );
                    worst_ratio = worst_ratio.max(ratio.max(1.0 / ratio));
                    // adjacent-regime jumps stay within [1/8, 8]
                    let regime = formula.regime.split("-boundary").next().unwrap().to_string();
                    if let Some((pv, pr)) = &prev {
                        if *pr != regime {
                            let jump = pv / formula.value;
                            assert!(
                                (1.0 / 8.0..=8.0).contains(&jump),
                                "regime jump {jump} at (b,d,k)=({b},{d},{k}) {params}: {pr} -> {regime}"
                            );
                            boundary_worst = boundary_worst.max(jump.max(1.0 / jump));
                        }
                    }
                    prev = Some((formula.value, regime));
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 06 formula crosscheck: PASS — worst scan ratio {worst_ratio:.3}, worst \
         boundary jump {boundary_worst:.3}, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_07_oracle_vs_schuett() {
    let start = Instant::now();
    // per-b mesh steps and k ranges chosen so every bracket stays above the
    // mesh resolution
    let cases: [(usize, f64, usize); 5] =
        [(2, 0.01, 7), (3, 0.02, 6), (4, 0.025, 5), (5, 0.04, 4), (6, 0.0625, 4)];
    for &(q, _) in &[(INF, ()), (2.0, ())] {
        for &(b, delta, kmax) in &cases {
            let params = tuple(1.0, 1.0, q, q);
            let (lower, upper) =
                mixent_core::oracle::empirical_entropy_curve(&params, b, 1, kmax, delta)
                    .unwrap();
            let mut ratios = Vec::new();
            for k in 1..=kmax {
                let (Some(lo), Some(up)) = (lower.value_at(k), upper.value_at(k)) else {
                    panic!("missing bracket at b={b} q={q} k={k}");
                };
                let mid = (lo * up).sqrt();
                let formula = schuett_rate(exp(1.0), exp(q), k, b).unwrap().value;
                ratios.push(formula / mid);
            }
            let spread = ratios.iter().cloned().fold(f64::MIN, f64::max)
                / ratios.iter().cloned().fold(f64::MAX, f64::min);
            assert!(
                spread <= 16.0,
                "b={b} q={q}: k-uniformity spread {spread} (ratios {ratios:?})"
            );
        }
    }
    println!(
        "ACCEPTANCE 07 oracle vs three-regime rate: PASS — 10 curves k-uniform within 16x, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_08_volume_identities() {
    let start = Instant::now();
    for n in 1..=6usize {
        for &p in &[1.0, 2.0, INF] {
            let e = exp(p);
            let mixed = mixed_ball_volume_root(e, n, 1, 2.0);
            let closed = lp_ball_volume_root(e, n);
            assert!(
                (mixed - closed).abs() <= 1e-9 * closed,
                "n={n} p={p}: {mixed} vs {closed}"
            );
        }
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    assert!((mixed_ball_volume_root(exp(2.0), 2, 1, 2.0) - sqrt_pi).abs() < 1e-12);
    assert!((mixed_ball_volume_root(exp(1.0), 2, 1, 2.0) - 2f64.sqrt()).abs() < 1e-12);
    println!(
        "ACCEPTANCE 08 volume identities: PASS — ℓ_p^n closed forms to 1e-9, √π and √2 spot \
         values, {:.3}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_09_besov_headline() {
    let start = Instant::now();
    let ms: Vec<usize> = (6..=14).map(|e| 1usize << e).collect();
    let instances: [(f64, f64, f64, f64, f64); 2] = [
        (0.4, 2.0, 2.0, 1.0, INF),
        (0.5, 1.0, 2.0, 0.5, 2.0),
    ];
    let mut failures = Vec::new();
    for &(gap, p0, p1, q0, q1) in &instances {
        let mut slopes = Vec::new();
        for &n in &[2usize, 3, 5] {
            let result = SmoothnessParams::new(gap, 0.0, exp(p0), exp(p1), exp(q0), exp(q1), n)
                .and_then(|params| fit_rate_slope(&params, Flavor::BesovToBesov, &ms));
            match result {
                Ok(slope) => {
                    if (slope + gap).abs() > 0.15 {
                        failures.push(format!(
                            "instance (gap={gap}, p0={p0}, p1={p1}, q0={q0}, q1={q1}, n={n}): \
                             slope {slope:.4} not within 0.15 of {:.1}",
                            -gap
                        ));
                    }
                    slopes.push(slope);
                }
                Err(e) => failures.push(format!(
                    "instance (gap={gap}, p0={p0}, p1={p1}, q0={q0}, q1={q1}, n={n}): {e}"
                )),
            }
        }
        for i in 0..slopes.len() {
            for j in (i + 1)..slopes.len() {
                if (slopes[i] - slopes[j]).abs() > 0.1 {
                    failures.push(format!(
                        "instance (gap={gap}, ...): slopes across n differ by more than 0.1"
                    ));
                }
            }
        }
    }
    assert!(
        failures.is_empty(),
        "ACCEPTANCE 09 besov headline: FAIL —\n{}",
        failures.join("\n")
    );
    println!(
        "ACCEPTANCE 09 besov headline: PASS — slopes within ±0.15, dimension-free within 0.1, \
         {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_10_end_to_end_chain() {
    let start = Instant::now();
    let params = tuple(1.0, INF, INF, INF);
    let (b, d, kmax, mesh) = (2usize, 2usize, 8usize, 0.025);
    let ball = DiscretizedBall::build(b, d, params.p, params.q, mesh).unwrap();
    let table = ladder_table(&ball, params.r, params.u).unwrap();
    // oracle-derived packing certificates, re-verified from raw points
    let mut pack_lower: Vec<(usize, f64)> = Vec::new();
    for (j, &eps) in table.ladder.iter().enumerate() {
        if table.pack_counts[j] <= 1 || pack_lower.len() >= 8 {
            continue;
        }
        let cert = oracle_packing_certificate(&ball, eps, params.r, params.u, 600).unwrap();
        cert.verify().unwrap();
        for pt in packing_to_entropy_lower(cert.points.len() as u64, cert.separation).points() {
            pack_lower.push((pt.index, pt.value));
        }
    }
    // proof-backed covering certificates
    let mut covers = vec![trivial_covering(&params, b, d).unwrap()];
    for k in 2..=(b * d) {
        if let Ok(cert) =
            et_sparse_covering(&params, b, d, k, SparseCoveringMode::Lattice, 20_000, 0xC10)
        {
            covers.push(cert);
        }
    }
    for k in 1..=kmax {
        let pack_lo = pack_lower
            .iter()
            .filter(|&&(idx, _)| k <= idx)
            .map(|&(_, v)| v)
            .fold(f64::NAN, f64::max);
        let or_lo = table.lower_at(k).expect("oracle lower");
        let or_up = table.upper_mesh_at(k).expect("oracle upper");
        let cover_up = covers
            .iter()
            .filter(|c| c.index <= k)
            .map(|c| c.claimed_radius)
            .fold(f64::INFINITY, f64::min);
        assert!(!pack_lo.is_nan(), "no packing certificate reaches k={k}");
        assert!(
            pack_lo <= or_lo * (1.0 + 1e-12),
            "k={k}: packing lower {pack_lo} above oracle lower {or_lo}"
        );
        assert!(
            or_lo <= or_up * (1.0 + 1e-12),
            "k={k}: oracle bracket inverted ({or_lo} vs {or_up})"
        );
        assert!(
            or_up <= cover_up * (1.0 + 1e-12),
            "k={k}: oracle upper {or_up} above covering upper {cover_up}"
        );
    }
    println!(
        "ACCEPTANCE 10 end-to-end chain: PASS — packing ≤ oracle bracket ≤ covering at k ≤ 8, \
         {:.1}s",
        start.elapsed().as_secs_f64()
    );
}
