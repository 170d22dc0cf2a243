//! Named verification suites, each producing a list of check results.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{
    angle_axis, canonical_params, default_grid, real_axis, wcar_rep, wcar_zero_rep, Family,
    ParamPoint,
};
use crate::error::{Error, Result};
use crate::linalg::{c64, distance, identity, C64};
use crate::report::CheckResult;
use crate::structure::{
    are_equivalent, conjugation_residual, find_intertwining_unitary_l12, is_irreducible,
};
use crate::verify::{
    check_boundary, torus_fixed_probe, two_point_check, Algebra, AlgebraId, BoundarySpec, GridSpec,
    PairFamily,
};

/// Slack on `‖π(a_i)‖ ≤ 1`; norm rows report `‖π(a_i)‖ − 1`.
pub const NORM_SLACK: f64 = 1e-12;
/// The identity gauge at `r1 = 0`.
pub const GAUGE_TOL: f64 = 1e-10;
/// Torus probe thresholds.
pub const TORUS_ZERO_TOL: f64 = 1e-10;
pub const TORUS_SEPARATION: f64 = 1e-3;
pub const TORUS_AVG_TOL: f64 = 1e-10;
pub const TORUS_SAMPLES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFamilyId {
    Disk2,
    Wcar,
    Wcarz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Equivalence,
    Lemma12,
    Boundary(AlgebraId),
    TwoPoint(PairFamilyId),
    Torus,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "relations" => Suite::Relations,
            "equivalence" => Suite::Equivalence,
            "lemma12" => Suite::Lemma12,
            "torus" => Suite::Torus,
            _ => {
                if let Some(id) = lower.strip_prefix("boundary:") {
                    Suite::Boundary(id.parse()?)
                } else if let Some(f) = lower.strip_prefix("sw:") {
                    Suite::TwoPoint(match f {
                        "disk2" => PairFamilyId::Disk2,
                        "wcar" => PairFamilyId::Wcar,
                        "wcarz" => PairFamilyId::Wcarz,
                        _ => {
                            return Err(format!(
                                "unknown pair family `{f}` (expected DISK2, WCAR or WCARZ)"
                            ))
                        }
                    })
                } else {
                    return Err(format!(
                        "unknown suite `{s}` (expected relations, equivalence, lemma12, boundary:<algebra>, sw:<family> or torus)"
                    ));
                }
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::Relations => write!(f, "relations"),
            Suite::Equivalence => write!(f, "equivalence"),
            Suite::Lemma12 => write!(f, "lemma12"),
            Suite::Torus => write!(f, "torus"),
            Suite::Boundary(id) => write!(f, "boundary:{}", algebra_name(*id)),
            Suite::TwoPoint(p) => write!(
                f,
                "sw:{}",
                match p {
                    PairFamilyId::Disk2 => "DISK2",
                    PairFamilyId::Wcar => "WCAR",
                    PairFamilyId::Wcarz => "WCARZ",
                }
            ),
        }
    }
}

fn algebra_name(id: AlgebraId) -> &'static str {
    match id {
        AlgebraId::A0Disk => "A0_DISK",
        AlgebraId::A1Disk => "A1_DISK",
        AlgebraId::WtcarEnv => "WTCAR_ENV",
        AlgebraId::EMinus1Y => "E_MINUS1_Y",
        AlgebraId::EMinus10 => "E_MINUS1_0",
        AlgebraId::EEps => "E_EPS",
        AlgebraId::EMinus1 => "E_MINUS1",
    }
}

/// Settings shared by all suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub tol: f64,
    pub grid: usize,
    pub angles: usize,
    pub seed: u64,
    pub y: C64,
    pub eps: f64,
    pub d: usize,
    pub mu: f64,
    pub pairs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tol: 1e-8,
            grid: 5,
            angles: 4,
            seed: crate::structure::SEED,
            y: c64(0.5, 0.0),
            eps: 0.2,
            d: 2,
            mu: 0.5,
            pairs: 500,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        GridSpec {
            n_real: self.grid,
            n_angle: self.angles,
        }
        .validate()
    }

    fn grid_spec(&self) -> GridSpec {
        GridSpec {
            n_real: self.grid,
            n_angle: self.angles,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    cfg.validate()?;
    match suite {
        Suite::Relations => relations(cfg),
        Suite::Equivalence => equivalence(cfg),
        Suite::Lemma12 => lemma12(cfg),
        Suite::Boundary(id) => boundary(id, cfg),
        Suite::TwoPoint(f) => sw(f, cfg),
        Suite::Torus => torus(cfg),
    }
}

/// Preset residual and generator norms on every family's default grid; one
/// summary row per family and one row per failing point.
fn relations(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for family in Family::ALL {
        let pts = default_grid(family, cfg.grid, cfg.angles);
        let rows: Vec<(ParamPoint, f64, f64)> = pts
            .par_iter()
            .map(|p| match p.build() {
                Ok(rep) => (
                    *p,
                    rep.residual().unwrap_or(f64::MAX),
                    rep.max_generator_norm(),
                ),
                Err(_) => (*p, f64::MAX, f64::MAX),
            })
            .collect();
        let mut worst_res: Option<(ParamPoint, f64)> = None;
        let mut worst_norm: Option<(ParamPoint, f64)> = None;
        for (p, res, norm) in &rows {
            if worst_res.is_none_or(|(_, v)| *res > v) {
                worst_res = Some((*p, *res));
            }
            if worst_norm.is_none_or(|(_, v)| *norm > v) {
                worst_norm = Some((*p, *norm));
            }
            if *res > cfg.tol {
                out.push(
                    CheckResult::upper(format!("relations.{family}.residual"), *res, cfg.tol).at(p),
                );
            }
            if *norm > 1.0 + NORM_SLACK {
                out.push(
                    CheckResult::upper(
                        format!("relations.{family}.norm_excess"),
                        norm - 1.0,
                        NORM_SLACK,
                    )
                    .at(p),
                );
            }
        }
        if let Some((p, v)) = worst_res {
            out.push(
                CheckResult::upper(format!("relations.{family}.max_residual"), v, cfg.tol)
                    .at(p)
                    .with_detail(format!("{} points", rows.len())),
            );
        }
        if let Some((p, v)) = worst_norm {
            out.push(
                CheckResult::upper(
                    format!("relations.{family}.max_norm_excess"),
                    v - 1.0,
                    NORM_SLACK,
                )
                .at(p)
                .with_detail(format!("max norm {v}")),
            );
        }
    }
    Ok(out)
}

/// Every grid point is equivalent to its canonical form, and irreducible
/// points with different canonical forms are inequivalent.
fn equivalence(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for family in Family::ALL {
        let pts = default_grid(family, cfg.grid, cfg.angles);
        let rows: Vec<(ParamPoint, f64)> = pts
            .par_iter()
            .map(|p| {
                let v = (|| -> Result<f64> {
                    let a = p.build()?;
                    let b = canonical_params(p)?.build()?;
                    Ok(match are_equivalent(&a, &b)? {
                        Some(u) => conjugation_residual(&u, &a, &b),
                        None => f64::MAX,
                    })
                })()
                .unwrap_or(f64::MAX);
                (*p, v)
            })
            .collect();
        let worst = rows
            .iter()
            .copied()
            .fold(None::<(ParamPoint, f64)>, |w, (p, v)| match w {
                Some((_, wv)) if wv >= v => w,
                _ => Some((p, v)),
            });
        for (p, v) in &rows {
            if *v > cfg.tol {
                out.push(
                    CheckResult::upper(format!("equivalence.{family}.canonical"), *v, cfg.tol)
                        .at(p),
                );
            }
        }
        if let Some((p, v)) = worst {
            out.push(
                CheckResult::upper(format!("equivalence.{family}.canonical_max"), v, cfg.tol)
                    .at(p)
                    .with_detail(format!("{} points", rows.len())),
            );
        }
        if family == Family::Global {
            continue;
        }
        let irreducible: Vec<(ParamPoint, ParamPoint)> = pts
            .iter()
            .filter_map(|p| {
                let rep = p.build().ok()?;
                is_irreducible(&rep).then(|| canonical_params(p).ok().map(|c| (*p, c)))?
            })
            .collect();
        let mut distinct_checked = 0;
        let mut false_matches = 0;
        if irreducible.len() >= 2 {
            for _ in 0..cfg.grid * cfg.angles {
                let i = rng.random_range(0..irreducible.len());
                let j = rng.random_range(0..irreducible.len());
                let ((p, cp), (q, cq)) = (irreducible[i], irreducible[j]);
                if cp.approx_eq(&cq, 1e-9) {
                    continue;
                }
                distinct_checked += 1;
                let (a, b) = (p.build()?, q.build()?);
                if are_equivalent(&a, &b)?.is_some() {
                    false_matches += 1;
                    out.push(
                        CheckResult::flag(format!("equivalence.{family}.distinct"), false)
                            .at(format!("{p} ~ {q}")),
                    );
                }
            }
        }
        out.push(
            CheckResult::upper(
                format!("equivalence.{family}.distinct_pairs"),
                false_matches as f64,
                0.0,
            )
            .with_detail(format!("{distinct_checked} pairs")),
        );
    }
    Ok(out)
}

/// `find_intertwining_unitary_l12` on the grid `r1 ∈ [0.01, 1]`, plus the
/// identity gauge at `r1 = 0`.
fn lemma12(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let ang = angle_axis(cfg.angles);
    let mut pts = Vec::new();
    for &r1 in &real_axis(0.01, 1.0, cfg.grid) {
        for &x2 in &real_axis(0.0, 0.5, cfg.grid) {
            for &phi in &ang {
                for &phi1 in &ang {
                    for &phi2 in &ang {
                        pts.push((r1, x2, phi, phi1, phi2));
                    }
                }
            }
        }
    }
    let rows: Vec<f64> = pts
        .par_iter()
        .map(|&(r1, x2, phi, phi1, phi2)| lemma12_residual(r1, x2, phi, phi1, phi2))
        .collect();
    let mut out = Vec::new();
    let mut worst = (0usize, 0.0f64);
    for (k, v) in rows.iter().enumerate() {
        if *v > worst.1 {
            worst = (k, *v);
        }
        if *v > cfg.tol {
            out.push(CheckResult::upper("lemma12.residual", *v, cfg.tol).at(l12_label(pts[k])));
        }
    }
    out.push(
        CheckResult::upper("lemma12.max_residual", worst.1, cfg.tol)
            .at(l12_label(pts[worst.0]))
            .with_detail(format!("{} points", pts.len())),
    );
    let mut gauge: f64 = 0.0;
    for &x2 in &real_axis(0.0, 0.5, cfg.grid) {
        for &phi in &ang {
            for &phi1 in &ang {
                for &phi2 in &ang {
                    gauge = gauge.max(
                        match find_intertwining_unitary_l12(0.0, x2, phi, phi1, phi2) {
                            Ok(u) => distance(&u, &identity(4)),
                            Err(_) => f64::MAX,
                        },
                    );
                }
            }
        }
    }
    out.push(CheckResult::upper(
        "lemma12.identity_at_r1_0",
        gauge,
        GAUGE_TOL,
    ));
    Ok(out)
}

fn l12_label((r1, x2, phi, phi1, phi2): (f64, f64, f64, f64, f64)) -> String {
    format!("(r1={r1}, x2={x2}, phi={phi}, phi1={phi1}, phi2={phi2})")
}

/// Conjugation residual and unitarity of the lemma's unitary; `f64::MAX`
/// when none is found.
pub fn lemma12_residual(r1: f64, x2: f64, phi: f64, phi1: f64, phi2: f64) -> f64 {
    let run = || -> Result<f64> {
        let u = find_intertwining_unitary_l12(r1, x2, phi, phi1, phi2)?;
        let l = crate::catalog::lemma12_params(r1, x2, phi, phi1, phi2)?;
        let src = crate::catalog::global_rep(r1, 0.5, x2, phi, phi1, phi2)?;
        let dst = crate::catalog::global_rep(0.0, 0.5, l.t, 0.0, phi1, l.psi)?;
        Ok(conjugation_residual(&u, &src, &dst).max(crate::linalg::unitarity_defect(&u)))
    };
    run().unwrap_or(f64::MAX)
}

pub fn algebra_for(id: AlgebraId, cfg: &SuiteConfig) -> Algebra {
    match id {
        AlgebraId::A0Disk => Algebra::A0Disk,
        AlgebraId::A1Disk => Algebra::A1Disk,
        AlgebraId::WtcarEnv => Algebra::WtcarEnv {
            d: cfg.d,
            mu: cfg.mu,
        },
        AlgebraId::EMinus1Y => Algebra::EMinus1Y { y: cfg.y },
        AlgebraId::EMinus10 => Algebra::EMinus10,
        AlgebraId::EEps => Algebra::EEps { eps: cfg.eps },
        AlgebraId::EMinus1 => Algebra::EMinus1,
    }
}

/// One row per condition with its worst point, and an overall row.
fn boundary(id: AlgebraId, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let spec = BoundarySpec::new(algebra_for(id, cfg))?;
    let report = check_boundary(&spec, cfg.grid_spec())?;
    let mut out = Vec::new();
    for ((k, v), worst) in report.per_condition.iter().zip(&report.per_condition_worst) {
        let mut r = CheckResult::upper(
            format!("boundary.{}.condition{k}", spec.algebra.id()),
            *v,
            cfg.tol,
        )
        .with_detail(spec.conditions[*k].to_string());
        if let Some(p) = worst {
            r = r.at(p);
        }
        out.push(r);
    }
    let mut total = CheckResult::upper(
        format!("boundary.{}.max_violation", spec.algebra.id()),
        report.max_violation,
        cfg.tol,
    )
    .with_detail(format!(
        "{} points, {} evaluations",
        report.points_checked, report.evaluations
    ));
    if let Some(p) = report.worst_point {
        total = total.at(p);
    }
    out.push(total);
    Ok(out)
}

fn pair_family(f: PairFamilyId, cfg: &SuiteConfig) -> Result<PairFamily> {
    Ok(match f {
        PairFamilyId::Disk2 => PairFamily::Disk2,
        PairFamilyId::Wcar => {
            if !(cfg.y.norm() > 0.0 && cfg.y.norm() < 1.0) {
                return Err(Error::Domain(format!(
                    "sw:WCAR needs 0 < |y| < 1, got |y| = {}",
                    cfg.y.norm()
                )));
            }
            PairFamily::WcarY { y: cfg.y }
        }
        PairFamilyId::Wcarz => PairFamily::Wcarz,
    })
}

/// Random pairs, drawn sequentially from the seed and checked in parallel.
fn sw(f: PairFamilyId, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let family = pair_family(f, cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs: Vec<(ParamPoint, ParamPoint)> = (0..cfg.pairs)
        .map(|_| family.sample_pair(&mut rng))
        .collect();
    let rows: Vec<Result<crate::verify::TwoPoint>> = pairs
        .par_iter()
        .map(|(p, q)| two_point_check(&family, p, q))
        .collect();
    let mut out = Vec::new();
    let mut failures = 0;
    for ((p, q), r) in pairs.iter().zip(rows) {
        let r = r?;
        if !r.pass {
            failures += 1;
            out.push(
                CheckResult::flag(format!("sw.{}.pair", family.id()), false)
                    .at(format!("{p} | {q}"))
                    .with_detail(format!(
                        "pair dim {} expected {}",
                        r.pair_commutant_dim, r.expected_dim
                    )),
            );
        }
    }
    out.push(
        CheckResult::upper(format!("sw.{}.failures", family.id()), failures as f64, 0.0)
            .with_detail(format!("{} pairs", pairs.len())),
    );
    Ok(out)
}

/// Commutator norms of the torus probe on `y = 0` samples and on interior
/// samples at the configured `y`, one row per point.
fn torus(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let r = cfg.y.norm();
    if !(r > 0.0 && r < 0.9) {
        return Err(Error::Domain(format!(
            "torus suite needs 0 < |y| < 0.9, got |y| = {r}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let mut avg: f64 = 0.0;
    for _ in 0..TORUS_SAMPLES {
        let (x1, x2) = (rng.random_range(0.0..=0.5), rng.random_range(0.0..=0.5));
        let (phi1, phi2) = (
            rng.random_range(0.0..std::f64::consts::TAU),
            rng.random_range(0.0..std::f64::consts::TAU),
        );
        let rep = wcar_zero_rep(x1, x2, phi1, phi2)?;
        let probe = torus_fixed_probe(&rep)?;
        avg = avg.max(probe.avg_residual);
        out.push(
            CheckResult::upper("torus.y0.commutator", probe.commutator_norm, TORUS_ZERO_TOL)
                .at(rep.source.unwrap()),
        );
    }
    let x1_max = (1.0 - r) / 2.0 - 0.05;
    for _ in 0..TORUS_SAMPLES {
        let x1 = rng.random_range(0.0..=x1_max);
        let x2 = rng.random_range(0.05..=0.45);
        let (phi1, phi2) = (
            rng.random_range(0.0..std::f64::consts::TAU),
            rng.random_range(0.0..std::f64::consts::TAU),
        );
        let rep = wcar_rep(cfg.y, x1, x2, phi1, phi2)?;
        let probe = torus_fixed_probe(&rep)?;
        avg = avg.max(probe.avg_residual);
        out.push(
            CheckResult::lower(
                "torus.y.commutator",
                probe.commutator_norm,
                TORUS_SEPARATION,
            )
            .at(rep.source.unwrap()),
        );
    }
    out.push(CheckResult::upper("torus.avg_residual", avg, TORUS_AVG_TOL));
    Ok(out)
}
