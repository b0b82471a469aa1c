//! Brute-force two-sided entropy estimation for tiny shapes: greedy maximal
//! packings (exact lower evidence) and greedy coverings (upper evidence)
//! over discretized balls, giving the sandwich every formula and certificate
//! is validated against.
//!
//! The mesh is the integer lattice `(δℤ)^{b×d}` clipped to the unit ball,
//! stored as packed `i16` step coordinates. Distances run over integer
//! deltas with the scaling applied once, so comparisons against thresholds
//! are cheap and deterministic.
//!
//! Greedy covering runs exact largest-residual-coverage set cover over the
//! full mesh when the mesh is small. On larger meshes the candidate set is
//! restricted to the maximal ε-packing (itself an ε-cover): full-mesh
//! candidate scoring is quadratic in mesh size and infeasible there, and the
//! restriction buys the structural guarantee `N̂_ε ≤ M̂_ε` that the sandwich
//! checks rely on.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::curve::{BoundCurve, CurvePoint};
use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentTuple};
use crate::matrix::MixedMatrix;

/// Practical exhaustiveness cap for empirical curves.
pub const ORACLE_DIM_CAP: usize = 6;
/// Meshes at or below this size get the exact full-mesh set cover.
pub const FULL_COVER_CAP: usize = 20_000;
/// Cap on the per-center offset enumeration used by the covering counter.
const OFFSETS_CAP: u64 = 4_000_000;
/// Cap on total member-list storage for the list-based covering path.
const LIST_ENTRY_CAP: usize = 80_000_000;
/// Mesh size cap (points).
pub const MESH_POINT_CAP: usize = 80_000_000;

/// All lattice points of `(δℤ)^{b×d}` with mixed (p,q)-norm ≤ 1, in
/// lexicographic enumeration order.
pub struct DiscretizedBall {
    pub b: usize,
    pub d: usize,
    pub p: Exponent,
    pub q: Exponent,
    pub delta: f64,
    /// `⌊1/δ⌋`: coordinates run over `[-steps, steps]`.
    pub steps: i32,
    axis: u64,
    coords: Vec<i16>,
    pub len: usize,
    /// Membership bitmap over the full box lattice, when it fits.
    bitmap: Option<Vec<u64>>,
}

const BITMAP_BITS_CAP: u64 = 2_200_000_000;

impl DiscretizedBall {
    pub fn build(
        b: usize,
        d: usize,
        p: Exponent,
        q: Exponent,
        delta: f64,
    ) -> Result<DiscretizedBall> {
        let n = b * d;
        if n == 0 || n > ORACLE_DIM_CAP {
            return Err(Error::CapExceeded(format!(
                "oracle meshes support 1 <= b·d <= {ORACLE_DIM_CAP}, got {n}"
            )));
        }
        if !(delta > 0.0 && delta <= 0.5) {
            return Err(Error::InvalidParameter(format!("bad mesh step {delta}")));
        }
        let steps = (1.0 / delta).floor() as i32;
        if steps > 2000 {
            return Err(Error::CapExceeded(format!(
                "mesh step {delta} needs more than 2000 lattice steps per axis"
            )));
        }
        let axis = (2 * steps + 1) as u64;
        let mut coords: Vec<i16> = Vec::new();
        let mut point = vec![0i16; n];
        // per-|step| row contribution |cδ|^q (plain |cδ| for q = ∞)
        let pow_q: Vec<f64> = (0..=steps)
            .map(|c| {
                let v = c as f64 * delta;
                if q.is_infinite() {
                    v
                } else {
                    v.powf(q.get())
                }
            })
            .collect();
        let cfg = EnumCfg {
            b,
            d,
            p,
            q,
            steps,
            pow_q,
        };
        enumerate(&cfg, &mut point, &mut coords, 0, 0.0, 0.0)?;
        let len = coords.len() / n;
        if len == 0 {
            return Err(Error::InvalidParameter("empty mesh".into()));
        }
        let total_bits = axis.pow(n as u32);
        let bitmap = if total_bits <= BITMAP_BITS_CAP {
            let mut bits = vec![0u64; (total_bits as usize).div_ceil(64)];
            for i in 0..len {
                let li = linear_index(&coords[i * n..(i + 1) * n], steps, axis);
                bits[(li / 64) as usize] |= 1u64 << (li % 64);
            }
            Some(bits)
        } else {
            None
        };
        Ok(DiscretizedBall {
            b,
            d,
            p,
            q,
            delta,
            steps,
            axis,
            coords,
            len,
            bitmap,
        })
    }

    pub fn point(&self, i: usize) -> &[i16] {
        let n = self.b * self.d;
        &self.coords[i * n..(i + 1) * n]
    }

    pub fn to_matrix(&self, i: usize) -> MixedMatrix {
        MixedMatrix {
            b: self.b,
            d: self.d,
            entries: self.point(i).iter().map(|&c| c as f64 * self.delta).collect(),
        }
    }

    /// Quantization slack: any ball point is within `δ·b^{1/r} d^{1/u}` of a
    /// mesh point in the (r,u) target norm (toward-zero rounding).
    pub fn mesh_slack(&self, r: Exponent, u: Exponent) -> f64 {
        self.delta * (self.b as f64).powf(r.reciprocal()) * (self.d as f64).powf(u.reciprocal())
    }
}

struct EnumCfg {
    b: usize,
    d: usize,
    p: Exponent,
    q: Exponent,
    steps: i32,
    pow_q: Vec<f64>,
}

impl EnumCfg {
    /// Row contribution to the outer mass from the accumulated
    /// `row_acc = Σ |xδ|^q` (max form for q = ∞), dodging the
    /// root-then-power round trip. For p = ∞ the outer state tracks the max
    /// of raw accumulators — `acc ≤ 1` iff the row norm is ≤ 1.
    fn row_mass(&self, row_acc: f64) -> f64 {
        if self.p.is_infinite() || self.p == self.q {
            row_acc
        } else if self.q.is_infinite() {
            row_acc.powf(self.p.get())
        } else {
            row_acc.powf(self.p.get() / self.q.get())
        }
    }
}

/// Depth-first lattice walk with incremental norm state: `outer_mass` holds
/// `Σ row_norm^p` over completed rows (for p = ∞: the max of their raw
/// q-accumulators), and `row_acc` the current row's `Σ |xδ|^q` (or max).
fn enumerate(
    cfg: &EnumCfg,
    point: &mut [i16],
    out: &mut Vec<i16>,
    pos: usize,
    outer_mass: f64,
    row_acc: f64,
) -> Result<()> {
    let n = cfg.b * cfg.d;
    let steps = cfg.steps;
    let p_inf = cfg.p.is_infinite();
    let q_inf = cfg.q.is_infinite();
    for c in -steps..=steps {
        let contrib = cfg.pow_q[c.unsigned_abs() as usize];
        let acc = if q_inf {
            row_acc.max(contrib)
        } else {
            row_acc + contrib
        };
        let mass = cfg.row_mass(acc);
        let prefix_ok = if p_inf {
            outer_mass.max(mass) <= 1.0 + 1e-12
        } else {
            outer_mass + mass <= 1.0 + 1e-12
        };
        if !prefix_ok {
            continue;
        }
        point[pos] = c as i16;
        if pos + 1 == n {
            out.extend_from_slice(point);
            if out.len() / n > MESH_POINT_CAP {
                return Err(Error::CapExceeded("mesh exceeds the point cap".into()));
            }
        } else if (pos + 1) % cfg.d == 0 {
            let folded = if p_inf {
                outer_mass.max(mass)
            } else {
                outer_mass + mass
            };
            enumerate(cfg, point, out, pos + 1, folded, 0.0)?;
        } else {
            enumerate(cfg, point, out, pos + 1, outer_mass, acc)?;
        }
    }
    point[pos] = 0;
    Ok(())
}

fn linear_index(coords: &[i16], steps: i32, axis: u64) -> u64 {
    let mut li = 0u64;
    for &c in coords {
        li = li * axis + (c as i32 + steps) as u64;
    }
    li
}

/// Integer-friendly power form of an exponent.
#[derive(Clone, Copy, PartialEq)]
enum Pw {
    One,
    Two,
    Inf,
    Gen(f64),
}

impl Pw {
    fn of(e: Exponent) -> Pw {
        if e.is_infinite() {
            Pw::Inf
        } else if e.get() == 1.0 {
            Pw::One
        } else if e.get() == 2.0 {
            Pw::Two
        } else {
            Pw::Gen(e.get())
        }
    }
}

/// Distance evaluator for the target metric `ℓ_r(ℓ_u)` over step coords.
pub struct Metric {
    r: Pw,
    u: Pw,
    r_exp: Exponent,
    u_exp: Exponent,
    b: usize,
    d: usize,
    delta: f64,
}

impl Metric {
    pub fn new(b: usize, d: usize, r: Exponent, u: Exponent, delta: f64) -> Metric {
        Metric {
            r: Pw::of(r),
            u: Pw::of(u),
            r_exp: r,
            u_exp: u,
            b,
            d,
            delta,
        }
    }

    /// `‖δ·(a − c)‖_{r,u}`.
    pub fn dist(&self, a: &[i16], c: &[i16]) -> f64 {
        // flat fast paths when inner and outer exponents agree
        if self.r == self.u || self.d == 1 || self.b == 1 {
            let (outer, inner) = if self.b == 1 && self.d > 1 {
                (self.u, self.u)
            } else {
                (self.r, self.r)
            };
            let _ = inner;
            match outer {
                Pw::One => {
                    let s: i64 = a
                        .iter()
                        .zip(c)
                        .map(|(&x, &y)| (x as i64 - y as i64).abs())
                        .sum();
                    return self.delta * s as f64;
                }
                Pw::Two => {
                    let s: i64 = a
                        .iter()
                        .zip(c)
                        .map(|(&x, &y)| {
                            let e = x as i64 - y as i64;
                            e * e
                        })
                        .sum();
                    return self.delta * (s as f64).sqrt();
                }
                Pw::Inf => {
                    let m: i64 = a
                        .iter()
                        .zip(c)
                        .map(|(&x, &y)| (x as i64 - y as i64).abs())
                        .max()
                        .unwrap_or(0);
                    return self.delta * m as f64;
                }
                Pw::Gen(_) => {}
            }
        }
        self.dist_general(a, c)
    }

    fn dist_general(&self, a: &[i16], c: &[i16]) -> f64 {
        let mut outer_acc = 0.0f64;
        for i in 0..self.b {
            let row_a = &a[i * self.d..(i + 1) * self.d];
            let row_c = &c[i * self.d..(i + 1) * self.d];
            let rn = match self.u {
                Pw::One => {
                    let s: i64 = row_a
                        .iter()
                        .zip(row_c)
                        .map(|(&x, &y)| (x as i64 - y as i64).abs())
                        .sum();
                    s as f64
                }
                Pw::Two => {
                    let s: i64 = row_a
                        .iter()
                        .zip(row_c)
                        .map(|(&x, &y)| {
                            let e = x as i64 - y as i64;
                            e * e
                        })
                        .sum();
                    (s as f64).sqrt()
                }
                Pw::Inf => row_a
                    .iter()
                    .zip(row_c)
                    .map(|(&x, &y)| (x as i64 - y as i64).abs())
                    .max()
                    .unwrap_or(0) as f64,
                Pw::Gen(u) => row_a
                    .iter()
                    .zip(row_c)
                    .map(|(&x, &y)| ((x as i64 - y as i64).abs() as f64).powf(u))
                    .sum::<f64>()
                    .powf(1.0 / u),
            };
            match self.r {
                Pw::One => outer_acc += rn,
                Pw::Two => outer_acc += rn * rn,
                Pw::Inf => outer_acc = outer_acc.max(rn),
                Pw::Gen(r) => outer_acc += rn.powf(r),
            }
        }
        let total = match self.r {
            Pw::One | Pw::Inf => outer_acc,
            Pw::Two => outer_acc.sqrt(),
            Pw::Gen(r) => outer_acc.powf(1.0 / r),
        };
        self.delta * total
    }

    pub fn norm(&self, a: &[i16]) -> f64 {
        let zeros = vec![0i16; a.len()];
        self.dist(a, &zeros)
    }

    pub fn exponents(&self) -> (Exponent, Exponent) {
        (self.r_exp, self.u_exp)
    }
}

/// Direct-addressed cell grid over accepted points; cell side covers the
/// metric reach so neighbors-of-neighbors suffice for any (r,u).
struct CellGrid {
    cell_steps: i32,
    cells_per_axis: i64,
    n: usize,
    cells: Vec<Vec<u32>>,
}

impl CellGrid {
    fn new(steps: i32, n: usize, eps_steps: i32) -> CellGrid {
        let cell_steps = eps_steps.max(1);
        let axis = 2 * steps + 1;
        let cells_per_axis = ((axis + cell_steps - 1) / cell_steps) as i64;
        let total = (cells_per_axis as usize).pow(n as u32);
        CellGrid {
            cell_steps,
            cells_per_axis,
            n,
            cells: vec![Vec::new(); total],
        }
    }

    fn cell_of(&self, coords: &[i16], steps: i32) -> usize {
        let mut idx: i64 = 0;
        for &c in coords {
            let cell = ((c as i32 + steps) / self.cell_steps) as i64;
            idx = idx * self.cells_per_axis + cell;
        }
        idx as usize
    }

    fn insert(&mut self, coords: &[i16], steps: i32, point_idx: u32) {
        let c = self.cell_of(coords, steps);
        self.cells[c].push(point_idx);
    }

    /// Visit point indices in the 3^n neighborhood of `coords`, own cell
    /// first (rejection scans usually terminate there).
    fn for_neighbors(&self, coords: &[i16], steps: i32, mut f: impl FnMut(u32) -> bool) {
        let mut cell = [0i64; 8];
        let n = self.n;
        for (i, &c) in coords.iter().enumerate() {
            cell[i] = ((c as i32 + steps) / self.cell_steps) as i64;
        }
        let own: i64 = cell[..n]
            .iter()
            .fold(0i64, |acc, &v| acc * self.cells_per_axis + v);
        for &pi in &self.cells[own as usize] {
            if !f(pi) {
                return;
            }
        }
        let mut offset = [-1i64; 8];
        'outer: loop {
            if offset[..n].iter().any(|&o| o != 0) {
                let mut idx: i64 = 0;
                let mut valid = true;
                for i in 0..n {
                    let v = cell[i] + offset[i];
                    if v < 0 || v >= self.cells_per_axis {
                        valid = false;
                        break;
                    }
                    idx = idx * self.cells_per_axis + v;
                }
                if valid {
                    for &pi in &self.cells[idx as usize] {
                        if !f(pi) {
                            return;
                        }
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    break 'outer;
                }
                offset[i] += 1;
                if offset[i] <= 1 {
                    break;
                }
                offset[i] = -1;
                i += 1;
            }
        }
    }
}

fn check_mesh_fine_enough(ball: &DiscretizedBall, eps: f64) -> Result<()> {
    if ball.delta > eps / 10.0 * (1.0 + 1e-9) {
        return Err(Error::InvalidParameter(format!(
            "mesh too coarse: delta {} exceeds eps/10 = {}",
            ball.delta,
            eps / 10.0
        )));
    }
    Ok(())
}

/// Mesh indices sorted by target norm descending, ties by lowest index —
/// the greedy packing's scan order. Independent of ε, so callers probing a
/// ladder of radii compute it once.
pub struct NormOrder(Vec<u32>);

pub fn norm_order(ball: &DiscretizedBall, r: Exponent, u: Exponent) -> NormOrder {
    let metric = Metric::new(ball.b, ball.d, r, u, ball.delta);
    let mut keys: Vec<(u64, u32)> = (0..ball.len)
        .map(|i| {
            let norm = metric.norm(ball.point(i));
            (!norm.to_bits(), i as u32)
        })
        .collect();
    keys.sort_unstable();
    NormOrder(keys.into_iter().map(|(_, i)| i).collect())
}

fn greedy_packing_ordered(
    ball: &DiscretizedBall,
    eps: f64,
    metric: &Metric,
    order: &NormOrder,
) -> Vec<u32> {
    let n = ball.b * ball.d;
    let threshold = eps * (1.0 + 1e-9);
    // With a membership bitmap, first-fit packing is "skip when inside an
    // accepted point's ε-ball, else accept and mark the ball" — the same
    // run sweep the covering uses, and ~20x faster than cell scans.
    if ball.bitmap.is_some() {
        if let Some(runs) = build_runs(ball, metric, threshold) {
            let words = (ball.axis.pow(n as u32) as usize).div_ceil(64);
            let mut blocked = vec![0u64; words];
            let mut accepted: Vec<u32> = Vec::new();
            for &idx in &order.0 {
                let pt = ball.point(idx as usize);
                let li = linear_index(pt, ball.steps, ball.axis);
                if blocked[(li / 64) as usize] & (1u64 << (li % 64)) != 0 {
                    continue;
                }
                sweep_runs(ball, &runs, pt, |membership, item, mask| {
                    *item |= membership & mask;
                    0
                }, &mut blocked);
                accepted.push(idx);
            }
            return accepted;
        }
    }
    let eps_steps = (eps / ball.delta).ceil() as i32;
    let mut grid = CellGrid::new(ball.steps, n, eps_steps);
    let mut accepted: Vec<u32> = Vec::new();
    for &idx in &order.0 {
        let pt = ball.point(idx as usize);
        let mut ok = true;
        grid.for_neighbors(pt, ball.steps, |other| {
            let d = metric.dist(pt, ball.point(other as usize));
            if d <= threshold {
                ok = false;
                false
            } else {
                true
            }
        });
        if ok {
            grid.insert(pt, ball.steps, idx);
            accepted.push(idx);
        }
    }
    accepted
}

/// One run of valid ε-ball offsets per leading-axes prefix; `None` when the
/// prefix box is too large to enumerate.
fn build_runs(ball: &DiscretizedBall, metric: &Metric, threshold: f64) -> Option<Vec<OffsetRun>> {
    let n = ball.b * ball.d;
    let eps_steps = ((threshold / ball.delta).ceil() as i64).min(i16::MAX as i64 - 1);
    let prefix_box: u64 = (2 * eps_steps as u64 + 1)
        .checked_pow(n as u32 - 1)
        .unwrap_or(u64::MAX);
    if prefix_box > OFFSETS_CAP {
        return None;
    }
    let mut runs: Vec<OffsetRun> = Vec::new();
    let mut cur = vec![0i64; n.max(2) - 1];
    for v in cur.iter_mut() {
        *v = -eps_steps;
    }
    let mut probe = vec![0i16; n];
    let zero = vec![0i16; n];
    loop {
        let mut prefix = [0i16; 8];
        for j in 0..n - 1 {
            prefix[j] = cur[j] as i16;
            probe[j] = cur[j] as i16;
        }
        probe[n - 1] = 0;
        if metric.dist(&probe, &zero) <= threshold {
            // the valid last-axis offsets form a symmetric interval because
            // the metric grows with the last coordinate's magnitude
            let mut t = 0i64;
            while t < eps_steps {
                probe[n - 1] = (t + 1) as i16;
                if metric.dist(&probe, &zero) <= threshold {
                    t += 1;
                } else {
                    break;
                }
            }
            runs.push(OffsetRun {
                prefix,
                last_start: -t as i16,
                len: (2 * t + 1) as u16,
            });
        }
        if n == 1 {
            break;
        }
        let mut i = 0;
        loop {
            if i == n - 1 {
                break;
            }
            cur[i] += 1;
            if cur[i] <= eps_steps {
                break;
            }
            cur[i] = -eps_steps;
            i += 1;
        }
        if i == n - 1 {
            break;
        }
    }
    Some(runs)
}

/// Word-level sweep over the ε-ball of `center`: for every clipped run,
/// call `f(membership_word, target_word, mask)` and accumulate its result.
fn sweep_runs(
    ball: &DiscretizedBall,
    runs: &[OffsetRun],
    center: &[i16],
    mut f: impl FnMut(u64, &mut u64, u64) -> u64,
    target: &mut [u64],
) -> u64 {
    let n = ball.b * ball.d;
    let membership = ball.bitmap.as_ref().expect("runs need the bitmap");
    let mut total = 0u64;
    for run in runs {
        let mut base: u64 = 0;
        let mut inside = true;
        for j in 0..n - 1 {
            let c = center[j] as i32 + run.prefix[j] as i32;
            if c < -ball.steps || c > ball.steps {
                inside = false;
                break;
            }
            base = base * ball.axis + (c + ball.steps) as u64;
        }
        if !inside {
            continue;
        }
        let a0 = center[n - 1] as i64 + run.last_start as i64;
        let a1 = a0 + run.len as i64 - 1;
        let lo = a0.max(-(ball.steps as i64));
        let hi = a1.min(ball.steps as i64);
        if lo > hi {
            continue;
        }
        let li0 = base * ball.axis + (lo + ball.steps as i64) as u64;
        let li1 = li0 + (hi - lo) as u64;
        let (w0, b0) = ((li0 / 64) as usize, li0 % 64);
        let (w1, b1) = ((li1 / 64) as usize, li1 % 64);
        for w_abs in w0..=w1 {
            let mut mask = u64::MAX;
            if w_abs == w0 {
                mask &= u64::MAX << b0;
            }
            if w_abs == w1 {
                mask &= u64::MAX >> (63 - b1);
            }
            total += f(membership[w_abs], &mut target[w_abs], mask);
        }
    }
    total
}

/// Greedy maximal ε-packing of the mesh in the (r,u) target metric:
/// candidates ordered farthest-from-origin first (ties by lowest index),
/// accepted iff strictly more than ε from everything accepted. The result
/// is a valid ε-packing and its size lower-bounds `M_ε` over the mesh.
pub fn greedy_packing(
    ball: &DiscretizedBall,
    eps: f64,
    r: Exponent,
    u: Exponent,
) -> Result<Vec<u32>> {
    check_mesh_fine_enough(ball, eps)?;
    let metric = Metric::new(ball.b, ball.d, r, u, ball.delta);
    let order = norm_order(ball, r, u);
    Ok(greedy_packing_ordered(ball, eps, &metric, &order))
}

/// A maximal run of valid ε-ball offsets along the last (unit-stride) axis:
/// fixed prefix offsets on the leading axes, last-axis offsets in
/// `[last_start, last_start + len)`. Runs turn per-offset bitmap probes
/// into word-level popcounts.
struct OffsetRun {
    prefix: [i16; 8],
    last_start: i16,
    len: u16,
}

enum CoverStrategy {
    /// Per-center offset-run scans against the membership bitmap.
    Offsets(Vec<OffsetRun>),
    /// Precomputed member lists (mesh indices within ε of each candidate).
    Lists(Vec<Vec<u32>>),
    /// Full mesh scan per candidate; wins when the candidate pool or the
    /// mesh is small and the ε-ball is large.
    Direct,
}

/// Budget for one full strategy pass (distance evaluations).
const DIRECT_WORK_CAP: u64 = 2_000_000_000;
const OFFSETS_WORK_CAP: u64 = 20_000_000_000;

/// Greedy set cover of the mesh at radius ε in the (r,u) metric:
/// largest-residual-coverage center first, ties by lowest mesh index.
/// Candidates are all mesh points on small meshes and the maximal
/// ε-packing otherwise (see module docs). Every mesh point ends up within
/// ε of a returned center.
///
/// A maximal ε-packing is itself an ε-cover of the mesh; when the set-cover
/// greedy lands above that size, the packing is returned instead. That keeps
/// the output a covering while making `N̂_ε ≤ M̂_ε` hold structurally, not
/// just empirically.
pub fn greedy_covering(
    ball: &DiscretizedBall,
    eps: f64,
    r: Exponent,
    u: Exponent,
) -> Result<Vec<u32>> {
    check_mesh_fine_enough(ball, eps)?;
    let metric = Metric::new(ball.b, ball.d, r, u, ball.delta);
    let order = norm_order(ball, r, u);
    let packing = greedy_packing_ordered(ball, eps, &metric, &order);
    greedy_covering_inner(ball, eps, &metric, packing)
}

fn greedy_covering_inner(
    ball: &DiscretizedBall,
    eps: f64,
    metric: &Metric,
    packing: Vec<u32>,
) -> Result<Vec<u32>> {
    let n = ball.b * ball.d;
    let threshold = eps * (1.0 + 1e-9);
    let full_mesh = ball.len <= FULL_COVER_CAP;
    let candidates: Vec<u32> = if full_mesh {
        (0..ball.len as u32).collect()
    } else {
        // the maximal packing plus the origin: packing points hug the
        // boundary, and without an interior candidate the radius needed at
        // tiny budgets doubles
        let mut pool = packing.clone();
        let zero = vec![0i16; n];
        if let Some(zi) = (0..ball.len).find(|&i| ball.point(i) == zero.as_slice()) {
            if !pool.contains(&(zi as u32)) {
                pool.push(zi as u32);
            }
        }
        pool
    };

    // choose the cheapest feasible counting strategy
    let eps_steps = ((eps / ball.delta).ceil() as i64).min(i16::MAX as i64 - 1);
    let prefix_box: u64 = (2 * eps_steps as u64 + 1)
        .checked_pow(n as u32 - 1)
        .unwrap_or(u64::MAX);
    let offs_feasible = ball.bitmap.is_some() && prefix_box <= OFFSETS_CAP;
    let offs_cost = (candidates.len() as u64).saturating_mul(prefix_box);
    let direct_cost = (candidates.len() as u64).saturating_mul(ball.len as u64);
    let use_offsets = offs_feasible
        && (offs_cost <= DIRECT_WORK_CAP
            || (offs_cost <= OFFSETS_WORK_CAP && direct_cost > DIRECT_WORK_CAP));
    let strategy = if use_offsets {
        match build_runs(ball, metric, threshold) {
            Some(runs) => CoverStrategy::Offsets(runs),
            None => CoverStrategy::Direct,
        }
    } else if direct_cost <= DIRECT_WORK_CAP {
        CoverStrategy::Direct
    } else {
        // member lists via a cell grid over the candidates
        let mut cand_grid = CellGrid::new(ball.steps, n, eps_steps.max(1) as i32);
        let mut cand_rank: Vec<u32> = vec![u32::MAX; ball.len];
        for (rank, &c) in candidates.iter().enumerate() {
            cand_grid.insert(ball.point(c as usize), ball.steps, c);
            cand_rank[c as usize] = rank as u32;
        }
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); candidates.len()];
        let mut total_entries = 0usize;
        for i in 0..ball.len {
            let pt = ball.point(i);
            let mut overflow = false;
            cand_grid.for_neighbors(pt, ball.steps, |cand| {
                if metric.dist(pt, ball.point(cand as usize)) <= threshold {
                    lists[cand_rank[cand as usize] as usize].push(i as u32);
                    total_entries += 1;
                    if total_entries > LIST_ENTRY_CAP {
                        overflow = true;
                        return false;
                    }
                }
                true
            });
            if overflow {
                return Err(Error::CapExceeded(
                    "covering member lists exceed the memory cap".into(),
                ));
            }
        }
        CoverStrategy::Lists(lists)
    };

    // covered flags: by box-linear bit for the offsets path, by mesh index
    // for the lists path
    let mut covered_count = 0usize;
    let words = match &strategy {
        CoverStrategy::Offsets(_) => (ball.axis.pow(n as u32) as usize).div_ceil(64),
        CoverStrategy::Lists(_) | CoverStrategy::Direct => ball.len.div_ceil(64),
    };
    let mut covered_bits = vec![0u64; words];

    let count_or_mark = |cand_rank: usize, covered_bits: &mut Vec<u64>, mark: bool| -> u64 {
        let cand = candidates[cand_rank] as usize;
        let mut count = 0u64;
        match &strategy {
            CoverStrategy::Offsets(runs) => {
                let center = ball.point(cand);
                count += sweep_runs(ball, runs, center, |membership, item, mask| {
                    let m = membership & !*item & mask;
                    if mark {
                        *item |= m;
                    }
                    m.count_ones() as u64
                }, covered_bits);
            }
            CoverStrategy::Lists(lists) => {
                for &i in &lists[cand_rank] {
                    let w = (i / 64) as usize;
                    let bit = 1u64 << (i % 64);
                    if covered_bits[w] & bit == 0 {
                        count += 1;
                        if mark {
                            covered_bits[w] |= bit;
                        }
                    }
                }
            }
            CoverStrategy::Direct => {
                let center = ball.point(cand);
                for i in 0..ball.len {
                    let w = i / 64;
                    let bit = 1u64 << (i % 64);
                    if covered_bits[w] & bit == 0
                        && metric.dist(center, ball.point(i)) <= threshold
                    {
                        count += 1;
                        if mark {
                            covered_bits[w] |= bit;
                        }
                    }
                }
            }
        }
        count
    };

    // exact initial counts, then lazy refresh: an entry is only accepted
    // when its key is current, so the pick order is exactly
    // (residual desc, mesh index asc)
    let mut heap: BinaryHeap<(u64, Reverse<u32>, u32)> = BinaryHeap::new();
    for rank in 0..candidates.len() {
        let c = count_or_mark(rank, &mut covered_bits, false);
        if c > 0 {
            heap.push((c, Reverse(candidates[rank]), rank as u32));
        }
    }
    let mut chosen: Vec<u32> = Vec::new();
    while covered_count < ball.len {
        let (key, Reverse(idx), rank) = heap.pop().ok_or_else(|| {
            Error::ConstructionFailed("covering ran out of candidates".into())
        })?;
        let current = count_or_mark(rank as usize, &mut covered_bits, false);
        if current == 0 {
            continue;
        }
        if current == key {
            let marked = count_or_mark(rank as usize, &mut covered_bits, true);
            covered_count += marked as usize;
            chosen.push(idx);
        } else {
            heap.push((current, Reverse(idx), rank));
        }
    }
    let packing = if full_mesh {
        greedy_packing_ordered(
            ball,
            eps,
            metric,
            &norm_order(ball, metric.r_exp, metric.u_exp),
        )
    } else {
        packing
    };
    if packing.len() < chosen.len() {
        return Ok(packing);
    }
    Ok(chosen)
}

/// The three sandwich counts `M̂_{2ε}, N̂_ε, M̂_ε` on one mesh.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SandwichCounts {
    pub eps: f64,
    pub packing_at_2eps: u64,
    pub covering_at_eps: u64,
    pub packing_at_eps: u64,
}

pub fn sandwich_counts(
    ball: &DiscretizedBall,
    eps: f64,
    r: Exponent,
    u: Exponent,
) -> Result<SandwichCounts> {
    Ok(SandwichCounts {
        eps,
        packing_at_2eps: greedy_packing(ball, 2.0 * eps, r, u)?.len() as u64,
        covering_at_eps: greedy_covering(ball, eps, r, u)?.len() as u64,
        packing_at_eps: greedy_packing(ball, eps, r, u)?.len() as u64,
    })
}

/// Greedy counts along a shared geometric ε-ladder: the memoized form of
/// the per-k bisection (counts are monotone in ε, so every per-k threshold
/// is read off one probe table).
pub struct LadderTable {
    pub ladder: Vec<f64>,
    pub pack_counts: Vec<u64>,
    pub cover_counts: Vec<u64>,
    pub slack: f64,
}

pub fn ladder_table(ball: &DiscretizedBall, r: Exponent, u: Exponent) -> Result<LadderTable> {
    let slack = ball.mesh_slack(r, u);
    // ratio 2^{1/3}: three rungs are exactly a factor of two apart
    let n = ball.b * ball.d;
    let top = 2.0 * Metric::new(ball.b, ball.d, r, u, 1.0).norm(&vec![1i16; n]).max(1.0);
    let bottom = 10.0 * ball.delta;
    let ratio = 2f64.powf(1.0 / 3.0);
    let mut ladder = Vec::new();
    let mut eps = top;
    while eps >= bottom * 0.999 {
        ladder.push(eps);
        eps /= ratio;
    }
    let metric = Metric::new(ball.b, ball.d, r, u, ball.delta);
    let order = norm_order(ball, r, u);
    let mut pack_counts = Vec::with_capacity(ladder.len());
    let mut cover_counts = Vec::with_capacity(ladder.len());
    for &e in &ladder {
        check_mesh_fine_enough(ball, e)?;
        let packing = greedy_packing_ordered(ball, e, &metric, &order);
        pack_counts.push(packing.len() as u64);
        cover_counts.push(greedy_covering_inner(ball, e, &metric, packing)?.len() as u64);
    }
    Ok(LadderTable {
        ladder,
        pack_counts,
        cover_counts,
        slack,
    })
}

impl LadderTable {
    /// Largest certified lower bound for `e_k`: `ε'/2` for the largest
    /// probed `ε'` with `M̂_{ε'} > 2^{k−1}`.
    pub fn lower_at(&self, k: usize) -> Option<f64> {
        let budget = 1u64 << (k - 1);
        self.pack_counts
            .iter()
            .position(|&pc| pc > budget)
            .map(|j| self.ladder[j] / 2.0)
    }

    /// Smallest probed ε with `N̂_ε ≤ 2^{k−1}` (mesh value, no slack).
    pub fn upper_mesh_at(&self, k: usize) -> Option<f64> {
        let budget = 1u64 << (k - 1);
        (0..self.ladder.len())
            .rev()
            .find(|&j| self.cover_counts[j] <= budget)
            .map(|j| self.ladder[j])
    }
}

/// Empirical two-sided entropy curves. Lower values are valid continuum
/// lower bounds; upper values include the mesh slack and are valid
/// continuum upper bounds.
pub fn empirical_entropy_curve(
    params: &ExponentTuple,
    b: usize,
    d: usize,
    kmax: usize,
    delta: f64,
) -> Result<(BoundCurve, BoundCurve)> {
    let ball = DiscretizedBall::build(b, d, params.p, params.q, delta)?;
    let table = ladder_table(&ball, params.r, params.u)?;
    let mut lower_pts = Vec::new();
    let mut upper_pts = Vec::new();
    for k in 1..=kmax {
        if let Some(v) = table.lower_at(k) {
            lower_pts.push(CurvePoint {
                index: k,
                value: v,
                regime: "oracle-lower".into(),
            });
        }
        if let Some(v) = table.upper_mesh_at(k) {
            upper_pts.push(CurvePoint {
                index: k,
                value: v + table.slack,
                regime: format!("oracle-upper(slack={:.3e})", table.slack),
            });
        }
    }
    Ok((BoundCurve::new(lower_pts)?, BoundCurve::new(upper_pts)?))
}

/// Export a greedy mesh packing as a verifiable [`PackingCertificate`]
/// (provenance `oracle-greedy`): up to `cap` points at claimed separation
/// `eps` itself — the greedy accepted only strictly-greater distances, so
/// re-verification recomputes every pair above the claim.
pub fn oracle_packing_certificate(
    ball: &DiscretizedBall,
    eps: f64,
    r: Exponent,
    u: Exponent,
    cap: usize,
) -> Result<crate::packing::PackingCertificate> {
    let picked = greedy_packing(ball, eps, r, u)?;
    let taken: Vec<u32> = picked.iter().copied().take(cap.max(2)).collect();
    let cert = crate::packing::PackingCertificate {
        kind: "packing".into(),
        construction: "oracle-greedy".into(),
        params: ExponentTuple::new(ball.p, ball.q, r, u),
        shape: crate::packing::Shape {
            b: ball.b,
            d: ball.d,
        },
        sparsity: crate::packing::Sparsity { s: 0, t: 0 },
        separation: eps,
        advertised_count: taken.len() as u64,
        clean_separation: None,
        seed: 0,
        points: taken
            .iter()
            .map(|&i| ball.to_matrix(i as usize).to_rows())
            .collect(),
    };
    cert.verify()?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

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
    fn interval_mesh_enumeration() {
        let ball = DiscretizedBall::build(1, 1, Exponent::INF, Exponent::INF, 0.01).unwrap();
        assert_eq!(ball.len, 201);
        assert_eq!(ball.point(0), &[-100i16][..]);
        assert_eq!(ball.point(200), &[100i16][..]);
    }

    #[test]
    fn l1_mesh_respects_norm() {
        let p = exp(1.0);
        let ball = DiscretizedBall::build(2, 1, p, p, 0.1).unwrap();
        for i in 0..ball.len {
            let m = ball.to_matrix(i);
            assert!(crate::matrix::mixed_norm(&m, p, p) <= 1.0 + 1e-12);
        }
        // |{(x,y) ∈ 0.1ℤ²: |x|+|y| ≤ 1}| = 2·10·10 + 2·10 + 1
        assert_eq!(ball.len, 221);
    }

    #[test]
    fn packing_interval_eps_one_gives_two_points() {
        let ball = DiscretizedBall::build(1, 1, Exponent::INF, Exponent::INF, 0.01).unwrap();
        let pack = greedy_packing(&ball, 1.0, Exponent::INF, Exponent::INF).unwrap();
        assert_eq!(pack.len(), 2);
        let vals: Vec<f64> = pack.iter().map(|&i| ball.to_matrix(i as usize).entries[0]).collect();
        assert!(vals.contains(&-1.0) && vals.contains(&1.0));
    }

    #[test]
    fn packing_interval_eps_half_gives_four_points() {
        // maximal chain with gaps > 0.5 fits 4 points on [−1,1]
        let ball = DiscretizedBall::build(1, 1, Exponent::INF, Exponent::INF, 0.01).unwrap();
        let pack = greedy_packing(&ball, 0.5, Exponent::INF, Exponent::INF).unwrap();
        assert_eq!(pack.len(), 4, "farthest-first chain: -1, 1, ±0.49");
    }

    #[test]
    fn packing_huge_eps_gives_one_point() {
        let ball = DiscretizedBall::build(1, 1, Exponent::INF, Exponent::INF, 0.05).unwrap();
        let pack = greedy_packing(&ball, 4.0, Exponent::INF, Exponent::INF).unwrap();
        assert_eq!(pack.len(), 1);
    }

    #[test]
    fn packing_pairwise_distances_are_strict() {
        let t = tuple(1.0, 2.0, 2.0, f64::INFINITY);
        let ball = DiscretizedBall::build(2, 2, t.p, t.q, 0.05).unwrap();
        let pack = greedy_packing(&ball, 0.5, t.r, t.u).unwrap();
        let metric = Metric::new(2, 2, t.r, t.u, ball.delta);
        for i in 0..pack.len() {
            for j in (i + 1)..pack.len() {
                let d = metric.dist(ball.point(pack[i] as usize), ball.point(pack[j] as usize));
                assert!(d > 0.5, "pair {i},{j} at {d}");
            }
        }
    }

    #[test]
    fn covering_interval_examples() {
        let ball = DiscretizedBall::build(1, 1, Exponent::INF, Exponent::INF, 0.01).unwrap();
        // eps = 1: a single center (0) covers [−1,1]
        let cover = greedy_covering(&ball, 1.0, Exponent::INF, Exponent::INF).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(ball.to_matrix(cover[0] as usize).entries[0], 0.0);
        // eps = 0.5: two centers (±0.5)
        let cover = greedy_covering(&ball, 0.5, Exponent::INF, Exponent::INF).unwrap();
        assert_eq!(cover.len(), 2);
    }

    #[test]
    fn covering_covers_every_mesh_point() {
        let t = tuple(1.0, 1.0, f64::INFINITY, f64::INFINITY);
        let ball = DiscretizedBall::build(2, 1, t.p, t.q, 0.02).unwrap();
        let cover = greedy_covering(&ball, 0.3, t.r, t.u).unwrap();
        let metric = Metric::new(2, 1, t.r, t.u, ball.delta);
        for i in 0..ball.len {
            let ok = cover.iter().any(|&c| {
                metric.dist(ball.point(i), ball.point(c as usize)) <= 0.3 * (1.0 + 1e-9)
            });
            assert!(ok, "mesh point {i} uncovered");
        }
    }

    #[test]
    fn sandwich_on_l1_ball_in_sup_metric() {
        let t = tuple(1.0, 1.0, f64::INFINITY, f64::INFINITY);
        let ball = DiscretizedBall::build(2, 1, t.p, t.q, 0.025).unwrap();
        for eps in [0.25, 0.5, 1.0] {
            let s = sandwich_counts(&ball, eps, t.r, t.u).unwrap();
            assert!(
                crate::curve::sandwich_check(
                    s.packing_at_2eps,
                    s.covering_at_eps,
                    s.packing_at_eps
                ),
                "sandwich failed at eps={eps}: {s:?}"
            );
        }
    }

    #[test]
    fn mesh_too_coarse_is_rejected() {
        let ball = DiscretizedBall::build(1, 1, Exponent::INF, Exponent::INF, 0.05).unwrap();
        assert!(greedy_packing(&ball, 0.2, Exponent::INF, Exponent::INF).is_err());
    }

    #[test]
    fn one_dimensional_curve_brackets_exact_rate() {
        // e_k(B_ℝ, ℝ) = 2^{−(k−1)} exactly
        let t = tuple(f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let (lower, upper) = empirical_entropy_curve(&t, 1, 1, 5, 0.005).unwrap();
        for k in 1..=5usize {
            let exact = 2f64.powi(-(k as i32 - 1));
            let lo = lower.value_at(k).unwrap_or(0.0);
            let up = upper.value_at(k).expect("upper defined");
            assert!(lo <= exact * (1.0 + 1e-9), "k={k}: lower {lo} vs {exact}");
            assert!(up >= exact * (1.0 - 1e-9), "k={k}: upper {up} vs {exact}");
            // bracket is tight to within the ladder ratio and slack
            assert!(up <= exact * 2.0 + 0.1, "k={k}: upper {up} too loose");
            assert!(lo >= exact / 4.0, "k={k}: lower {lo} too loose");
        }
        assert!(lower.is_nonincreasing());
        assert!(upper.is_nonincreasing());
    }

    #[test]
    fn curves_monotone_and_ordered() {
        let t = tuple(1.0, 1.0, f64::INFINITY, f64::INFINITY);
        let (lower, upper) = empirical_entropy_curve(&t, 2, 1, 6, 0.02).unwrap();
        assert!(lower.is_nonincreasing());
        assert!(upper.is_nonincreasing());
        for p in lower.points() {
            if let Some(u) = upper.value_at(p.index) {
                assert!(p.value <= u * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn dimension_cap_enforced() {
        let t = tuple(1.0, 1.0, 2.0, 2.0);
        assert!(DiscretizedBall::build(4, 2, t.p, t.q, 0.1).is_err());
    }

    #[test]
    fn mesh_density_witness() {
        // random ball points quantize toward zero onto the mesh within slack
        use rand::prelude::*;
        let t = tuple(1.0, 2.0, 2.0, f64::INFINITY);
        let ball = DiscretizedBall::build(2, 2, t.p, t.q, 0.05).unwrap();
        let slack = ball.mesh_slack(t.r, t.u);
        let mut rng = crate::sampling::seeded_rng(3);
        for _ in 0..500 {
            let x = crate::sampling::sample_ball_point(&mut rng, 2, 2, t.p, t.q, false);
            let quantized: Vec<i16> = x
                .entries
                .iter()
                .map(|&v| ((v / ball.delta).trunc() as i32).clamp(-(ball.steps), ball.steps) as i16)
                .collect();
            let qm = MixedMatrix {
                b: 2,
                d: 2,
                entries: quantized.iter().map(|&c| c as f64 * ball.delta).collect(),
            };
            // quantized point is in the mesh (norm can only shrink)
            assert!(
                crate::matrix::mixed_norm(&qm, t.p, t.q) <= 1.0 + 1e-9,
                "quantized point escaped the ball"
            );
            let dist = crate::matrix::mixed_norm_diff(&x, &qm, t.r, t.u);
            assert!(dist <= slack * (1.0 + 1e-9), "{dist} > {slack}");
        }
    }

    #[test]
    fn volumetric_decay_per_index_step() {
        // beyond k = 5·bd the upper curve decays by ~2^{-1/(bd)} per step
        // (quantized by the ε-ladder ratio)
        let t = tuple(f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let (_, upper) = empirical_entropy_curve(&t, 1, 1, 8, 0.001).unwrap();
        let u5 = upper.value_at(5).unwrap();
        let u8 = upper.value_at(8).unwrap();
        // per-step decay within ladder quantization (ratio 2^{1/3}) of 1/2
        let per_step = (u8 / u5).powf(1.0 / 3.0);
        assert!(
            (0.35..=0.7).contains(&per_step),
            "per-step factor {per_step} drifted from 2^-1"
        );
    }
}
