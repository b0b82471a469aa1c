//! `mixent`: tables, certificates, oracle sweeps and cross-validation for
//! entropy numbers of mixed-norm ball embeddings.
//!
//! Exit codes: 0 success, 2 flag validation, 3 hypothesis violation,
//! 4 verification failure. Errors go to stderr as one JSON object.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mixent_core::besov::{
    besov_upper_pipeline, fit_rate_slope, minimal_admissible_m, Flavor, SmoothnessParams,
};
use mixent_core::covering::{
    cuboid_covering, et_sparse_covering, klss_bound, trivial_covering, CoveringCertificate,
    IntervalProvider, SparseCoveringMode,
};
use mixent_core::designs::{
    build_gv_code, build_subset_family, gv_lower_bound, subset_family_lower_bound,
};
use mixent_core::error::Error;
use mixent_core::exponent::{Exponent, ExponentTuple};
use mixent_core::grid::{enumerate_grid, grid_summary, transform_grid};
use mixent_core::oracle::{ladder_table, oracle_packing_certificate, DiscretizedBall};
use mixent_core::packing::{
    block_sparse_packing, packing_to_entropy_lower, row_replication_packing,
    two_level_sparse_packing, BasePacking, PackingCertificate, PackingMode,
};
use mixent_core::rates::{matching_rate, proof_scan_rate};
use mixent_core::{mixed_quasi_norm_constant, BoundCurve};

#[derive(Parser)]
#[command(
    name = "mixent",
    version,
    about = "entropy-number bounds for mixed-norm ball embeddings"
)]
struct Cli {
    /// Write primary output here instead of stdout; relative paths resolve
    /// against MIXENT_OUT_DIR when set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ExponentArgs {
    /// Outer source exponent ("inf" allowed)
    #[arg(long)]
    p: String,
    /// Inner source exponent
    #[arg(long)]
    q: String,
    /// Outer target exponent
    #[arg(long)]
    r: String,
    /// Inner target exponent
    #[arg(long)]
    u: String,
}

impl ExponentArgs {
    fn tuple(&self) -> Result<ExponentTuple, Error> {
        Ok(ExponentTuple::new(
            Exponent::parse(&self.p)?,
            Exponent::parse(&self.q)?,
            Exponent::parse(&self.r)?,
            Exponent::parse(&self.u)?,
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the dyadic grid over the simplex
    Grid {
        #[command(subcommand)]
        cmd: GridCmd,
    },
    /// Combinatorial designs: greedy codes and subset families
    Designs {
        #[command(subcommand)]
        cmd: DesignsCmd,
    },
    /// Packing certificates (lower bounds)
    Pack {
        #[command(subcommand)]
        cmd: PackCmd,
    },
    /// Covering certificates (upper bounds)
    Cover {
        #[command(subcommand)]
        cmd: CoverCmd,
    },
    /// Mesh oracle sweeps
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Closed-form rate tables
    Rates {
        #[command(subcommand)]
        cmd: RatesCmd,
    },
    /// Block-sequence pipeline for small mixed smoothness
    Besov {
        #[command(subcommand)]
        cmd: BesovCmd,
    },
    /// Verify a certificate file (packing or covering)
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Cross-validate formula, proof scan, certificates and oracle
    Crosscheck {
        #[command(flatten)]
        exps: ExponentArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        kmax: usize,
        /// Mesh step for the oracle columns (skipped when b·d > 6)
        #[arg(long, default_value_t = 0.02)]
        mesh: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GridCmd {
    /// List Γ(b) (or Γ(b,p) with --p) plus a summary line
    Enum {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        p: Option<String>,
    },
}

#[derive(Subcommand)]
enum DesignsCmd {
    /// Greedy Gilbert–Varshamov code over [m] with length 2s, distance s
    Gv {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
    },
    /// 2s-subsets of [n] with pairwise intersections < s
    Subsets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PackConstruction {
    Block,
    TwoLevel,
    RowRep,
}

#[derive(Subcommand)]
enum PackCmd {
    /// Build a packing certificate (JSON)
    Build {
        #[arg(long, value_enum)]
        construction: PackConstruction,
        #[command(flatten)]
        exps: ExponentArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 256)]
        cap: usize,
        /// Full-product word mode (block construction, r = inf only)
        #[arg(long)]
        full_product: bool,
    },
    /// Re-verify a packing certificate file
    Verify { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverConstruction {
    Cuboid,
    Et,
    EtCuboid,
    Trivial,
    Klss,
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Build a covering certificate (JSON), or evaluate the permutation
    /// bound combinator
    Build {
        #[arg(long, value_enum)]
        construction: CoverConstruction,
        #[command(flatten)]
        exps: ExponentArgs,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Per-block budgets for klss, comma-separated (defaults to k/b each)
        #[arg(long)]
        budgets: Option<String>,
    },
    /// Re-verify a covering certificate file with fresh samples
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Empirical entropy brackets over k (CSV: k, lower, upper)
    Sweep {
        #[command(flatten)]
        exps: ExponentArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        mesh: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CompareWith {
    Scan,
    Oracle,
    Certificates,
}

#[derive(Subcommand)]
enum RatesCmd {
    /// Matching-bounds rate table (CSV: k, value, regime[, comparator, ratio])
    Table {
        #[command(flatten)]
        exps: ExponentArgs,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, value_enum)]
        compare: Option<CompareWith>,
        #[arg(long, default_value_t = 0.05)]
        mesh: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Clone)]
struct SmoothnessArgs {
    #[arg(long)]
    r0: f64,
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    p0: String,
    #[arg(long)]
    p1: String,
    #[arg(long)]
    q0: String,
    #[arg(long)]
    q1: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "b-b")]
    flavor: String,
}

impl SmoothnessArgs {
    fn params(&self) -> Result<(SmoothnessParams, Flavor), Error> {
        Ok((
            SmoothnessParams::new(
                self.r0,
                self.r1,
                Exponent::parse(&self.p0)?,
                Exponent::parse(&self.p1)?,
                Exponent::parse(&self.q0)?,
                Exponent::parse(&self.q1)?,
                self.n,
            )?,
            Flavor::parse(&self.flavor)?,
        ))
    }
}

#[derive(Subcommand)]
enum BesovCmd {
    /// Pipeline values over a geometric m-grid plus the fitted slope
    Slope {
        #[command(flatten)]
        smooth: SmoothnessArgs,
        #[arg(long)]
        mmin: usize,
        #[arg(long)]
        mmax: usize,
    },
    /// Print which estimates and diagram legs apply at a given m
    CheckHypotheses {
        #[command(flatten)]
        smooth: SmoothnessArgs,
        #[arg(long)]
        m: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(()) => {
            if let Err(e) = emit(&cli.out, &out) {
                return fail(&Error::Io(e));
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    let code = match e {
        Error::InvalidParameter(_) | Error::CapExceeded(_) => 2u8,
        Error::HypothesisViolated(_) => 3,
        Error::VerificationFailed(_) => 4,
        _ => 1,
    };
    eprintln!(
        "{}",
        serde_json::json!({ "error": e.to_string(), "code": code })
    );
    ExitCode::from(code)
}

fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => {
            let path = match std::env::var_os("MIXENT_OUT_DIR") {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            fs::write(path, content)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Error> {
    use std::fmt::Write as _;
    match &cli.command {
        Command::Grid {
            cmd: GridCmd::Enum { b, p },
        } => {
            let grid = enumerate_grid(*b)?;
            match p {
                None => {
                    for v in &grid {
                        let comps: Vec<String> =
                            (0..v.b).map(|i| v.rational_component(i)).collect();
                        writeln!(out, "{}", comps.join(" ")).unwrap();
                    }
                }
                Some(p) => {
                    let p = Exponent::parse(p)?;
                    for v in transform_grid(&grid, p) {
                        let comps: Vec<String> = v.iter().map(|c| format!("{c:.17}")).collect();
                        writeln!(out, "{}", comps.join(" ")).unwrap();
                    }
                }
            }
            let summary = grid_summary(*b)?;
            writeln!(
                out,
                "# cardinality={} cap=2^{} max_l1_mass={:.17}",
                summary.cardinality,
                3 * b,
                summary.max_l1_mass
            )
            .unwrap();
        }
        Command::Designs { cmd } => match cmd {
            DesignsCmd::Gv { m, s } => {
                let code = build_gv_code(*m, *s, None)?;
                let verified = code.verify()?;
                let doc = serde_json::json!({
                    "kind": "gv-code",
                    "alphabet_size": m,
                    "length": 2 * s,
                    "required_distance": s,
                    "verified_min_distance": verified,
                    "gv_lower_bound": gv_lower_bound(*m, *s)? as u64,
                    "count": code.words.len(),
                    "words": code.words,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?).unwrap();
            }
            DesignsCmd::Subsets { n, s, seed } => {
                let fam = build_subset_family(*n, *s, *seed)?;
                let verified = fam.verify()?;
                let doc = serde_json::json!({
                    "kind": "subset-family",
                    "ground_size": n,
                    "s": s,
                    "seed": fam.seed,
                    "verified_max_intersection": verified,
                    "lower_bound": subset_family_lower_bound(*n, *s),
                    "count": fam.sets.len(),
                    "sets": fam.sets,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?).unwrap();
            }
        },
        Command::Pack { cmd } => match cmd {
            PackCmd::Build {
                construction,
                exps,
                b,
                d,
                s,
                t,
                seed,
                cap,
                full_product,
            } => {
                let tuple = exps.tuple()?;
                let cert = match construction {
                    PackConstruction::Block => {
                        if *d != 1 {
                            return Err(Error::InvalidParameter(
                                "block construction uses the sign-pair base (d = 1); \
                                 use two-level for d > 1"
                                    .into(),
                            ));
                        }
                        let mode = if *full_product {
                            PackingMode::FullProduct
                        } else {
                            PackingMode::GilbertVarshamov
                        };
                        block_sparse_packing(
                            &BasePacking::sign_pair(),
                            &tuple,
                            *b,
                            *s,
                            mixed_quasi_norm_constant(tuple.r, tuple.u),
                            mode,
                            *cap,
                            *seed,
                        )?
                    }
                    PackConstruction::TwoLevel => {
                        two_level_sparse_packing(&tuple, *b, *d, *s, *t, *cap, *seed)?
                    }
                    PackConstruction::RowRep => {
                        let mut witness = vec![0.0; *d];
                        witness[0] = 1.0;
                        row_replication_packing(&witness, &tuple, *b, *s, 1.0, *seed)?
                    }
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&cert)?).unwrap();
            }
            PackCmd::Verify { file } => {
                let cert: PackingCertificate = serde_json::from_str(&fs::read_to_string(file)?)?;
                let v = cert.verify()?;
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?).unwrap();
            }
        },
        Command::Cover { cmd } => match cmd {
            CoverCmd::Build {
                construction,
                exps,
                b,
                d,
                k,
                samples,
                seed,
                budgets,
            } => {
                let tuple = exps.tuple()?;
                match construction {
                    CoverConstruction::Klss => {
                        let budgets: Vec<usize> = match budgets {
                            Some(raw) => raw
                                .split(',')
                                .map(|x| {
                                    x.trim().parse().map_err(|_| {
                                        Error::InvalidParameter(format!("bad budget {x:?}"))
                                    })
                                })
                                .collect::<Result<_, _>>()?,
                            None => vec![(*k / *b).max(1); *b],
                        };
                        let kcap = budgets.iter().copied().max().unwrap_or(1);
                        let profile: BoundCurve = BoundCurve::from_fn(1..=kcap, |l| {
                            let r = mixent_core::rates::schuett_rate(tuple.q, tuple.u, l, *d)
                                .expect("schuett");
                            (r.value, r.regime)
                        })?;
                        let profiles = vec![profile; *b];
                        let (index, value) = klss_bound(&profiles, &budgets, tuple.p, tuple.r)?;
                        let doc = serde_json::json!({
                            "kind": "klss-bound",
                            "index": index,
                            "value": value,
                            "budgets": budgets,
                        });
                        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?).unwrap();
                    }
                    other => {
                        let cert: CoveringCertificate = match other {
                            CoverConstruction::Cuboid => {
                                if *d != 1 {
                                    return Err(Error::InvalidParameter(
                                        "cuboid builder ships with the interval provider (d=1)"
                                            .into(),
                                    ));
                                }
                                cuboid_covering(&IntervalProvider, &tuple, *b, *k, *samples, *seed)?
                            }
                            CoverConstruction::Et => et_sparse_covering(
                                &tuple,
                                *b,
                                *d,
                                *k,
                                SparseCoveringMode::Lattice,
                                *samples,
                                *seed,
                            )?,
                            CoverConstruction::EtCuboid => et_sparse_covering(
                                &tuple,
                                *b,
                                *d,
                                *k,
                                SparseCoveringMode::InnerCuboid,
                                *samples,
                                *seed,
                            )?,
                            CoverConstruction::Trivial => trivial_covering(&tuple, *b, *d)?,
                            CoverConstruction::Klss => unreachable!(),
                        };
                        writeln!(out, "{}", serde_json::to_string_pretty(&cert)?).unwrap();
                    }
                }
            }
            CoverCmd::Verify {
                file,
                samples,
                seed,
            } => {
                let cert: CoveringCertificate = serde_json::from_str(&fs::read_to_string(file)?)?;
                let ev = cert.verify(*samples, *seed)?;
                writeln!(out, "{}", serde_json::to_string_pretty(&ev)?).unwrap();
            }
        },
        Command::Oracle {
            cmd:
                OracleCmd::Sweep {
                    exps,
                    b,
                    d,
                    kmax,
                    mesh,
                },
        } => {
            let tuple = exps.tuple()?;
            let (lower, upper) =
                mixent_core::oracle::empirical_entropy_curve(&tuple, *b, *d, *kmax, *mesh)?;
            writeln!(out, "# {tuple} b={b} d={d} mesh={mesh}").unwrap();
            writeln!(out, "k,lower,upper").unwrap();
            for k in 1..=*kmax {
                let lo = lower
                    .value_at(k)
                    .map(|v| format!("{v:.17e}"))
                    .unwrap_or_default();
                let up = upper
                    .value_at(k)
                    .map(|v| format!("{v:.17e}"))
                    .unwrap_or_default();
                writeln!(out, "{k},{lo},{up}").unwrap();
            }
        }
        Command::Rates {
            cmd:
                RatesCmd::Table {
                    exps,
                    b,
                    d,
                    kmin,
                    kmax,
                    compare,
                    mesh,
                    seed,
                },
        } => {
            let tuple = exps.tuple()?;
            if *kmin == 0 || kmin > kmax {
                return Err(Error::InvalidParameter("need 1 <= kmin <= kmax".into()));
            }
            writeln!(out, "# {tuple} b={b} d={d} seed={seed}").unwrap();
            let comparator = build_comparator(compare, &tuple, *b, *d, *kmax, *mesh, *seed)?;
            match &comparator {
                None => writeln!(out, "k,value,regime").unwrap(),
                Some((name, _)) => writeln!(out, "k,value,regime,{name},ratio").unwrap(),
            }
            for k in *kmin..=*kmax {
                let r = matching_rate(&tuple, *b, *d, k)?;
                match &comparator {
                    None => writeln!(out, "{k},{:.17e},{}", r.value, r.regime).unwrap(),
                    Some((_, curve)) => match curve.value_at(k) {
                        Some(c) => writeln!(
                            out,
                            "{k},{:.17e},{},{c:.17e},{:.17e}",
                            r.value,
                            r.regime,
                            r.value / c
                        )
                        .unwrap(),
                        None => writeln!(out, "{k},{:.17e},{},,", r.value, r.regime).unwrap(),
                    },
                }
            }
        }
        Command::Besov { cmd } => match cmd {
            BesovCmd::Slope { smooth, mmin, mmax } => {
                let (params, flavor) = smooth.params()?;
                let m0 = minimal_admissible_m(&params, flavor)?;
                let mut ms = Vec::new();
                let mut m = (*mmin).max(m0);
                while m <= *mmax {
                    ms.push(m);
                    m *= 2;
                }
                writeln!(
                    out,
                    "# m0={m0} small_smoothness={}",
                    params.is_small_smoothness()
                )
                .unwrap();
                writeln!(out, "m,value").unwrap();
                for &m in &ms {
                    let rep = besov_upper_pipeline(&params, m, flavor)?;
                    writeln!(out, "{m},{:.17e}", rep.value).unwrap();
                }
                let slope = fit_rate_slope(&params, flavor, &ms)?;
                writeln!(
                    out,
                    "# slope={slope:.6} expected={:.6}",
                    -(params.r0 - params.r1)
                )
                .unwrap();
            }
            BesovCmd::CheckHypotheses { smooth, m } => {
                let (params, flavor) = smooth.params()?;
                let m0 = minimal_admissible_m(&params, flavor)?;
                let m = m.unwrap_or(m0);
                let rep = besov_upper_pipeline(&params, m, flavor)?;
                writeln!(out, "m0={m0}").unwrap();
                writeln!(out, "m={m} certified_index={}", rep.certified_index).unwrap();
                writeln!(out, "rho={}", rep.rho).unwrap();
                for check in &rep.checks {
                    writeln!(out, "check: {check}").unwrap();
                }
            }
        },
        Command::Verify {
            file,
            samples,
            seed,
        } => {
            let raw = fs::read_to_string(file)?;
            let value: serde_json::Value = serde_json::from_str(&raw)?;
            match value.get("kind").and_then(|k| k.as_str()) {
                Some("packing") => {
                    let cert: PackingCertificate = serde_json::from_str(&raw)?;
                    let v = cert.verify()?;
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?).unwrap();
                }
                Some("covering") => {
                    let cert: CoveringCertificate = serde_json::from_str(&raw)?;
                    let ev = cert.verify(*samples, *seed)?;
                    writeln!(out, "{}", serde_json::to_string_pretty(&ev)?).unwrap();
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown certificate kind {other:?}"
                    )))
                }
            }
        }
        Command::Crosscheck {
            exps,
            b,
            d,
            kmax,
            mesh,
            samples,
            seed,
        } => {
            let tuple = exps.tuple()?;
            crosscheck(out, &tuple, *b, *d, *kmax, *mesh, *samples, *seed)?;
        }
    }
    Ok(())
}

fn build_comparator(
    compare: &Option<CompareWith>,
    tuple: &ExponentTuple,
    b: usize,
    d: usize,
    kmax: usize,
    mesh: f64,
    seed: u64,
) -> Result<Option<(&'static str, BoundCurve)>, Error> {
    let Some(compare) = compare else {
        return Ok(None);
    };
    let curve = match compare {
        CompareWith::Scan => {
            let mut pts = Vec::new();
            for k in 1..=kmax {
                pts.push(mixent_core::CurvePoint {
                    index: k,
                    value: proof_scan_rate(tuple, b, d, k)?,
                    regime: "scan".into(),
                });
            }
            BoundCurve::new(pts)?
        }
        CompareWith::Oracle => {
            let (_, upper) = mixent_core::oracle::empirical_entropy_curve(tuple, b, d, kmax, mesh)?;
            upper
        }
        CompareWith::Certificates => best_covering_curve(tuple, b, d, kmax, 5_000, seed)?,
    };
    Ok(Some((
        match compare {
            CompareWith::Scan => "scan",
            CompareWith::Oracle => "oracle_upper",
            CompareWith::Certificates => "cover_upper",
        },
        curve,
    )))
}

/// Pointwise minimum over available proof-backed covering certificates.
fn best_covering_curve(
    tuple: &ExponentTuple,
    b: usize,
    d: usize,
    kmax: usize,
    samples: u64,
    seed: u64,
) -> Result<BoundCurve, Error> {
    let mut certs: Vec<CoveringCertificate> = vec![trivial_covering(tuple, b, d)?];
    if tuple.q == tuple.u && !tuple.p.is_infinite() {
        let k_lo = ((b as f64).ln().max(d as f64).ceil() as usize).max(1);
        for k in k_lo..=(b * d).min(kmax.max(k_lo)) {
            if let Ok(cert) =
                et_sparse_covering(tuple, b, d, k, SparseCoveringMode::Lattice, samples, seed)
            {
                certs.push(cert);
            }
        }
    }
    if d == 1 && !tuple.p.is_infinite() {
        for k in (8 * b)..=kmax.min(mixent_core::covering::CUBOID_K_CAP) {
            if let Ok(cert) = cuboid_covering(&IntervalProvider, tuple, b, k, samples, seed) {
                certs.push(cert);
            }
        }
    }
    let mut points = Vec::new();
    for k in 1..=kmax {
        let best = certs
            .iter()
            .filter(|c| c.index <= k)
            .map(|c| c.claimed_radius)
            .fold(f64::INFINITY, f64::min);
        if best.is_finite() {
            points.push(mixent_core::CurvePoint {
                index: k,
                value: best,
                regime: "cover-upper".into(),
            });
        }
    }
    BoundCurve::new(points)
}

#[allow(clippy::too_many_arguments)]
fn crosscheck(
    out: &mut String,
    tuple: &ExponentTuple,
    b: usize,
    d: usize,
    kmax: usize,
    mesh: f64,
    samples: u64,
    seed: u64,
) -> Result<(), Error> {
    use std::fmt::Write as _;
    let cover_upper = best_covering_curve(tuple, b, d, kmax, samples, seed)?;
    // oracle ladder plus oracle-derived, re-verified packing certificates
    let oracle = if b * d <= mixent_core::oracle::ORACLE_DIM_CAP {
        let ball = DiscretizedBall::build(b, d, tuple.p, tuple.q, mesh)?;
        let table = ladder_table(&ball, tuple.r, tuple.u)?;
        let mut pack_lower: Vec<(usize, f64)> = Vec::new();
        for (j, &eps) in table.ladder.iter().enumerate() {
            if table.pack_counts[j] <= 1 {
                continue;
            }
            if pack_lower.len() >= 8 {
                break;
            }
            let cert = oracle_packing_certificate(&ball, eps, tuple.r, tuple.u, 600)?;
            let curve = packing_to_entropy_lower(cert.points.len() as u64, cert.separation);
            for p in curve.points() {
                pack_lower.push((p.index, p.value));
            }
        }
        Some((table, pack_lower))
    } else {
        None
    };
    writeln!(
        out,
        "# {tuple} b={b} d={d} mesh={mesh} samples={samples} seed={seed}"
    )
    .unwrap();
    if let Some((table, _)) = &oracle {
        writeln!(out, "# oracle_slack={:.17e}", table.slack).unwrap();
    }
    writeln!(
        out,
        "k,formula,regime,scan,pack_lower,oracle_lower,oracle_upper,cover_upper,scan_ratio,bracket_ratio"
    )
    .unwrap();
    for k in 1..=kmax {
        let formula = matching_rate(tuple, b, d, k)?;
        let scan = proof_scan_rate(tuple, b, d, k)?;
        let (pack_lo, or_lo, or_up) = match &oracle {
            Some((table, pack_lower)) => {
                let pack_lo = pack_lower
                    .iter()
                    .filter(|&&(idx, _)| k <= idx)
                    .map(|&(_, v)| v)
                    .fold(f64::NAN, f64::max);
                (
                    if pack_lo.is_nan() { None } else { Some(pack_lo) },
                    table.lower_at(k),
                    table.upper_mesh_at(k),
                )
            }
            None => (None, None, None),
        };
        let cover_up = cover_upper.value_at(k);
        let fmt = |v: Option<f64>| v.map(|v| format!("{v:.17e}")).unwrap_or_default();
        let bracket_ratio = match (or_lo, or_up) {
            (Some(lo), Some(up)) if lo > 0.0 => format!("{:.6}", up / lo),
            _ => String::new(),
        };
        writeln!(
            out,
            "{k},{:.17e},{},{:.17e},{},{},{},{},{:.6},{bracket_ratio}",
            formula.value,
            formula.regime,
            scan,
            fmt(pack_lo),
            fmt(or_lo),
            fmt(or_up),
            fmt(cover_up),
            scan / formula.value,
        )
        .unwrap();
    }
    Ok(())
}
