use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::conjugators::{nu1, nu2, wtcar_swap};
use crate::catalog::{
    angle_axis, global_rep, real_axis, v_matrix, wtcar_rep, ParamPoint, DISPATCH_TOL,
};
use crate::error::{Error, Result};
use crate::linalg::{
    conjugate, distance, identity, kron, op_norm, unitarity_defect, zeros, ComplexMatrix, C64,
};
use crate::structure::find_intertwining_unitary_l12;

/// Violation recorded when a point cannot be evaluated at all.
pub const UNEVALUATED: f64 = f64::MAX;

/// The function algebras whose boundary conditions can be checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algebra {
    /// Disk realization on `[0, 1/2] × S¹`.
    A0Disk,
    /// The same functions read on the closed unit disk, `z = 2x e^{iφ}`.
    A1Disk,
    /// WTCAR envelope on `[0, 1/2] × S¹` with `2^d × 2^d` values.
    WtcarEnv { d: usize, mu: f64 },
    /// `a1 a2 + a2 a1 = y`, `0 < |y| < 1`.
    EMinus1Y { y: C64 },
    /// `a1 a2 + a2 a1 = 0`.
    EMinus10,
    /// `ε ≤ |y| ≤ 1`.
    EEps { eps: f64 },
    /// The global family over the whole parameter box.
    EMinus1,
}

impl Algebra {
    pub fn id(&self) -> &'static str {
        match self {
            Algebra::A0Disk => "A0_DISK",
            Algebra::A1Disk => "A1_DISK",
            Algebra::WtcarEnv { .. } => "WTCAR_ENV",
            Algebra::EMinus1Y { .. } => "E_MINUS1_Y",
            Algebra::EMinus10 => "E_MINUS1_0",
            Algebra::EEps { .. } => "E_EPS",
            Algebra::EMinus1 => "E_MINUS1",
        }
    }

    pub const IDS: [&'static str; 7] = [
        "A0_DISK",
        "A1_DISK",
        "WTCAR_ENV",
        "E_MINUS1_Y",
        "E_MINUS1_0",
        "E_EPS",
        "E_MINUS1",
    ];
}

/// Algebra identifiers without their auxiliary parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraId {
    A0Disk,
    A1Disk,
    WtcarEnv,
    EMinus1Y,
    EMinus10,
    EEps,
    EMinus1,
}

impl FromStr for AlgebraId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A0_DISK" => AlgebraId::A0Disk,
            "A1_DISK" => AlgebraId::A1Disk,
            "WTCAR_ENV" => AlgebraId::WtcarEnv,
            "E_MINUS1_Y" => AlgebraId::EMinus1Y,
            "E_MINUS1_0" => AlgebraId::EMinus10,
            "E_EPS" => AlgebraId::EEps,
            "E_MINUS1" => AlgebraId::EMinus1,
            _ => {
                return Err(format!(
                    "unknown algebra `{s}` (expected one of {})",
                    Algebra::IDS.join(", ")
                ))
            }
        })
    }
}

/// Where a condition applies.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// A named coordinate equals a value.
    Eq(&'static str, f64),
    /// `x1 = (1 − r)/2` for points with `r = |y|`.
    WcarEdge,
    And(Vec<Region>),
}

impl Region {
    pub fn contains(&self, p: &ParamPoint) -> bool {
        let near = |a: f64, b: f64| (a - b).abs() <= DISPATCH_TOL;
        match self {
            Region::Eq(name, v) => p.coord(name).is_some_and(|c| near(c, *v)),
            Region::WcarEdge => match (p.coord("x1"), p.coord("r")) {
                (Some(x1), Some(r)) => near(x1, (1.0 - r) / 2.0),
                _ => false,
            },
            Region::And(rs) => rs.iter().all(|r| r.contains(p)),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Eq(n, v) => write!(f, "{n}={v}"),
            Region::WcarEdge => write!(f, "x1=(1-r)/2"),
            Region::And(rs) => {
                for (k, r) in rs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " & ")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

/// A unitary that depends on the point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Conjugator {
    /// `V(φ)`.
    V,
    /// `ν1(φ1, φ2)`.
    Nu1,
    /// `ν2(φ2)`.
    Nu2,
    /// `(I ⊗ V(φ))` followed by moving the last tensor factor to the front.
    WtcarSwap { d: usize },
}

impl Conjugator {
    pub fn at(&self, p: &ParamPoint) -> ComplexMatrix {
        let c = |n| p.coord(n).unwrap_or(0.0);
        match *self {
            Conjugator::V => v_matrix(c("phi")),
            Conjugator::Nu1 => nu1(c("phi1"), c("phi2")),
            Conjugator::Nu2 => nu2(c("phi2")),
            Conjugator::WtcarSwap { d } => wtcar_swap(d, c("phi")),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Conjugator::V => "V",
            Conjugator::Nu1 => "nu1",
            Conjugator::Nu2 => "nu2",
            Conjugator::WtcarSwap { .. } => "swap(I⊗V)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConditionKind {
    /// `f(p) = f(p')` where `p'` overrides the listed coordinates.
    Glue { set: Vec<(&'static str, f64)> },
    /// `C* f(p) C` is block diagonal with the given block sizes.
    BlockDiag {
        conjugator: Conjugator,
        blocks: Vec<usize>,
    },
    /// `f(p) ∈ M2 ⊗ 1`.
    Subalgebra,
    /// `C* f(p) C` is diagonal.
    Diagonal { conjugator: Conjugator },
    /// `U* f(r1, 1/2, x2, φ, φ1, φ2) U = f(0, 1/2, t, 0, φ1, ψ)` with the
    /// numerically found unitary `U`.
    Lemma12,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCondition {
    pub region: Region,
    pub kind: ConditionKind,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: ", self.region)?;
        match &self.kind {
            ConditionKind::Glue { set } => {
                write!(f, "f = f(")?;
                for (k, (n, v)) in set.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{n}={v}")?;
                }
                write!(f, ")")
            }
            ConditionKind::BlockDiag { conjugator, blocks } => {
                write!(f, "{0}* f {0} block diagonal {blocks:?}", conjugator.name())
            }
            ConditionKind::Subalgebra => write!(f, "f in M2 ⊗ 1"),
            ConditionKind::Diagonal { conjugator } => {
                write!(f, "{0}* f {0} diagonal", conjugator.name())
            }
            ConditionKind::Lemma12 => write!(f, "U* f U = f(0, 1/2, t, 0, phi1, psi)"),
        }
    }
}

/// An algebra with its list of boundary conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    pub algebra: Algebra,
    pub conditions: Vec<BoundaryCondition>,
}

fn glue(region: Region, set: &[(&'static str, f64)]) -> BoundaryCondition {
    BoundaryCondition {
        region,
        kind: ConditionKind::Glue { set: set.to_vec() },
    }
}

fn cond(region: Region, kind: ConditionKind) -> BoundaryCondition {
    BoundaryCondition { region, kind }
}

impl BoundarySpec {
    pub fn new(algebra: Algebra) -> Result<Self> {
        use ConditionKind::*;
        use Region::Eq;
        let two_by_two = || BlockDiag {
            conjugator: Conjugator::Nu2,
            blocks: vec![2, 2],
        };
        let conditions = match algebra {
            Algebra::A0Disk | Algebra::A1Disk => vec![
                glue(Eq("x", 0.0), &[("phi", 0.0)]),
                cond(
                    Eq("x", 0.5),
                    Diagonal {
                        conjugator: Conjugator::V,
                    },
                ),
            ],
            Algebra::WtcarEnv { d, mu } => {
                crate::presentation::preset(&crate::presentation::Preset::Wtcar { d, mu })?;
                let half = 1usize << (d - 1);
                vec![
                    glue(Eq("x", 0.0), &[("phi", 0.0)]),
                    cond(
                        Eq("x", 0.5),
                        BlockDiag {
                            conjugator: Conjugator::WtcarSwap { d },
                            blocks: vec![half, half],
                        },
                    ),
                ]
            }
            Algebra::EMinus1Y { y } => {
                let r = y.norm();
                if !(r > 0.0 && r < 1.0) {
                    return Err(Error::Domain(format!(
                        "E_MINUS1_Y needs 0 < |y| < 1, got |y| = {r}"
                    )));
                }
                vec![
                    glue(Eq("x1", 0.0), &[("phi1", 0.0)]),
                    glue(Eq("x2", 0.0), &[("phi2", 0.0)]),
                    glue(Region::WcarEdge, &[("x2", 0.0), ("phi2", 0.0)]),
                    cond(Region::WcarEdge, Subalgebra),
                    cond(Eq("x2", 0.5), two_by_two()),
                ]
            }
            Algebra::EMinus10 => vec![
                glue(Eq("x1", 0.0), &[("phi1", 0.0)]),
                glue(Eq("x2", 0.0), &[("phi2", 0.0)]),
                cond(
                    Eq("x1", 0.5),
                    BlockDiag {
                        conjugator: Conjugator::Nu1,
                        blocks: vec![2, 2],
                    },
                ),
                cond(Eq("x2", 0.5), two_by_two()),
            ],
            Algebra::EEps { eps } => {
                if !(eps > 0.0 && eps < 1.0) {
                    return Err(Error::Domain(format!("E_EPS needs 0 < eps < 1, got {eps}")));
                }
                vec![
                    glue(Eq("x1", 0.0), &[("phi1", 0.0)]),
                    glue(Eq("x2", 0.0), &[("phi2", 0.0)]),
                    glue(Region::WcarEdge, &[("x2", 0.0), ("phi2", 0.0)]),
                    cond(Region::WcarEdge, Subalgebra),
                    glue(
                        Region::And(vec![Eq("r", 1.0), Eq("x1", 0.0)]),
                        &[("x2", 0.0), ("phi1", 0.0), ("phi2", 0.0)],
                    ),
                    cond(Eq("x2", 0.5), two_by_two()),
                ]
            }
            Algebra::EMinus1 => vec![
                glue(Eq("x1", 0.0), &[("phi1", 0.0)]),
                glue(Eq("x2", 0.0), &[("phi2", 0.0)]),
                glue(Eq("r1", 1.0), &[("x2", 0.0), ("phi2", 0.0)]),
                cond(Eq("r1", 1.0), Subalgebra),
                glue(Eq("r1", 0.0), &[("phi", 0.0)]),
                cond(Eq("x2", 0.5), two_by_two()),
                cond(
                    Region::And(vec![Eq("r1", 0.0), Eq("x1", 0.5)]),
                    BlockDiag {
                        conjugator: Conjugator::Nu1,
                        blocks: vec![2, 2],
                    },
                ),
                cond(Eq("x1", 0.5), Lemma12),
            ],
        };
        Ok(BoundarySpec {
            algebra,
            conditions,
        })
    }

    /// Sample points of the algebra's parameter domain: `n_real` per real
    /// axis (endpoints included) and `n_angle` per angle.
    pub fn domain_grid(&self, grid: GridSpec) -> Result<Vec<ParamPoint>> {
        grid.validate()?;
        let ang = angle_axis(grid.n_angle);
        let half = real_axis(0.0, 0.5, grid.n_real);
        let unit = real_axis(0.0, 1.0, grid.n_real);
        let mut pts = Vec::new();
        match self.algebra {
            Algebra::A0Disk | Algebra::A1Disk => {
                for &x in &half {
                    for &phi in &ang {
                        pts.push(ParamPoint::Disk2 { x, phi });
                    }
                }
            }
            Algebra::WtcarEnv { d, mu } => {
                for &x in &half {
                    for &phi in &ang {
                        pts.push(ParamPoint::Wtcar2d { d, mu, x, phi });
                    }
                }
            }
            Algebra::EMinus1Y { y } => {
                let edge = (1.0 - y.norm()) / 2.0;
                for &s in &unit {
                    for &x2 in &half {
                        for &phi1 in &ang {
                            for &phi2 in &ang {
                                pts.push(ParamPoint::Wcar {
                                    y,
                                    x1: s * edge,
                                    x2,
                                    phi1,
                                    phi2,
                                });
                            }
                        }
                    }
                }
            }
            Algebra::EMinus10 => {
                for &x1 in &half {
                    for &x2 in &half {
                        for &phi1 in &ang {
                            for &phi2 in &ang {
                                pts.push(ParamPoint::Wcarz { x1, x2, phi1, phi2 });
                            }
                        }
                    }
                }
            }
            Algebra::EEps { eps } => {
                for &r in &real_axis(eps, 1.0, grid.n_real) {
                    for &s in &unit {
                        for &x2 in &half {
                            for &phi in &ang {
                                for &phi1 in &ang {
                                    for &phi2 in &ang {
                                        pts.push(ParamPoint::Wcar {
                                            y: C64::from_polar(r, phi),
                                            x1: s * (1.0 - r) / 2.0,
                                            x2,
                                            phi1,
                                            phi2,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Algebra::EMinus1 => {
                for &r1 in &unit {
                    for &x1 in &half {
                        for &x2 in &half {
                            for &phi in &ang {
                                for &phi1 in &ang {
                                    for &phi2 in &ang {
                                        pts.push(ParamPoint::Global {
                                            r1,
                                            x1,
                                            x2,
                                            phi,
                                            phi1,
                                            phi2,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(pts)
    }
}

/// Grid density for [`check_boundary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n_real: usize,
    pub n_angle: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_real: 5,
            n_angle: 4,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_real < 2 || self.n_angle < 1 {
            return Err(Error::Domain(format!(
                "need at least 2 points per real axis and 1 per angle, got {} and {}",
                self.n_real, self.n_angle
            )));
        }
        Ok(())
    }
}

/// The generator matrix-functions of each algebra.
pub fn generator_functions(algebra: &Algebra, p: &ParamPoint) -> Result<Vec<ComplexMatrix>> {
    let wrong = || Error::Domain(format!("{p} is not a point of {}", algebra.id()));
    match (algebra, *p) {
        (Algebra::A0Disk | Algebra::A1Disk, ParamPoint::Disk2 { x, phi }) => {
            Ok(crate::catalog::disk_rep(x, phi)?.generators)
        }
        (Algebra::WtcarEnv { .. }, ParamPoint::Wtcar2d { d, mu, x, phi }) => {
            Ok(wtcar_rep(d, mu, x, phi)?.generators)
        }
        (
            Algebra::EMinus1Y { .. } | Algebra::EEps { .. },
            ParamPoint::Wcar {
                y,
                x1,
                x2,
                phi1,
                phi2,
            },
        ) => {
            // Points on the edge within the matching tolerance are put on it
            // exactly; the coupling has a square-root singularity there.
            let width = 1.0 - 2.0 * x1;
            let r1 = if y.norm() >= width - DISPATCH_TOL {
                1.0
            } else {
                y.norm() / width
            };
            Ok(global_rep(r1, x1, x2, y.arg(), phi1, phi2)?.generators)
        }
        (Algebra::EMinus10, ParamPoint::Wcarz { x1, x2, phi1, phi2 }) => {
            Ok(global_rep(0.0, x1, x2, 0.0, phi1, phi2)?.generators)
        }
        (
            Algebra::EMinus1,
            ParamPoint::Global {
                r1,
                x1,
                x2,
                phi,
                phi1,
                phi2,
            },
        ) => Ok(global_rep(r1, x1, x2, phi, phi1, phi2)?.generators),
        _ => Err(wrong()),
    }
}

/// Result of [`check_boundary`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    pub points_checked: usize,
    /// Number of (point, condition) evaluations.
    pub evaluations: usize,
    pub max_violation: f64,
    pub worst_point: Option<ParamPoint>,
    pub worst_condition: Option<usize>,
    /// `(condition index, max violation)`, one entry per condition.
    pub per_condition: Vec<(usize, f64)>,
    /// Where each condition attains its maximum; `None` if it never applied.
    pub per_condition_worst: Vec<Option<ParamPoint>>,
}

fn off_block_norm(m: &ComplexMatrix, blocks: &[usize]) -> f64 {
    let mut off = m.clone();
    let mut start = 0;
    for &b in blocks {
        off.view_mut((start, start), (b, b))
            .fill(C64::new(0.0, 0.0));
        start += b;
    }
    op_norm(&off)
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    off_block_norm(m, &vec![1; m.nrows()])
}

/// Distance of a 4×4 matrix from `M2 ⊗ 1`.
fn subalgebra_defect(m: &ComplexMatrix) -> f64 {
    if m.nrows() != 4 {
        return UNEVALUATED;
    }
    let mut reduced = zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            reduced[(i, j)] = (m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)]) / 2.0;
        }
    }
    distance(m, &kron(&reduced, &identity(2)))
}

type GeneratorFn<'a> = dyn Fn(&ParamPoint) -> Result<Vec<ComplexMatrix>> + Sync + 'a;

fn evaluate_condition(c: &BoundaryCondition, p: &ParamPoint, f: &GeneratorFn<'_>) -> f64 {
    let Ok(gens) = f(p) else {
        return UNEVALUATED;
    };
    let worst = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0, f64::max);
    match &c.kind {
        ConditionKind::Glue { set } => {
            let target = set.iter().fold(*p, |q, (n, v)| q.with_coord(n, *v));
            match f(&target) {
                Ok(other) => worst(&mut gens.iter().zip(&other).map(|(a, b)| distance(a, b))),
                Err(_) => UNEVALUATED,
            }
        }
        ConditionKind::BlockDiag { conjugator, blocks } => {
            let u = conjugator.at(p);
            let defect = unitarity_defect(&u);
            defect.max(worst(
                &mut gens
                    .iter()
                    .map(|g| off_block_norm(&conjugate(g, &u), blocks)),
            ))
        }
        ConditionKind::Diagonal { conjugator } => {
            let u = conjugator.at(p);
            let defect = unitarity_defect(&u);
            defect.max(worst(
                &mut gens.iter().map(|g| off_diagonal_norm(&conjugate(g, &u))),
            ))
        }
        ConditionKind::Subalgebra => worst(&mut gens.iter().map(subalgebra_defect)),
        ConditionKind::Lemma12 => {
            let c = |n| p.coord(n).unwrap_or(0.0);
            let (r1, x2, phi, phi1, phi2) = (c("r1"), c("x2"), c("phi"), c("phi1"), c("phi2"));
            let Ok(u) = find_intertwining_unitary_l12(r1, x2, phi, phi1, phi2) else {
                return UNEVALUATED;
            };
            let Ok(l) = crate::catalog::lemma12_params(r1, x2, phi, phi1, phi2) else {
                return UNEVALUATED;
            };
            let target = ParamPoint::Global {
                r1: 0.0,
                x1: 0.5,
                x2: l.t,
                phi: 0.0,
                phi1,
                phi2: l.psi,
            };
            match f(&target) {
                Ok(other) => unitarity_defect(&u).max(worst(
                    &mut gens
                        .iter()
                        .zip(&other)
                        .map(|(a, b)| distance(&conjugate(a, &u), b)),
                )),
                Err(_) => UNEVALUATED,
            }
        }
    }
}

/// Checks every condition of `spec` at every grid point in its region,
/// using the algebra's own generator functions.
pub fn check_boundary(spec: &BoundarySpec, grid: GridSpec) -> Result<GridReport> {
    let algebra = spec.algebra;
    check_boundary_with(spec, grid, &move |p: &ParamPoint| {
        generator_functions(&algebra, p)
    })
}

/// [`check_boundary`] with caller-supplied generator functions.
pub fn check_boundary_with(
    spec: &BoundarySpec,
    grid: GridSpec,
    f: &GeneratorFn<'_>,
) -> Result<GridReport> {
    let pts = spec.domain_grid(grid)?;
    // (point index, condition index, violation), in grid order.
    let rows: Vec<Vec<(usize, usize, f64)>> = pts
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            spec.conditions
                .iter()
                .enumerate()
                .filter(|(_, c)| c.region.contains(p))
                .map(|(k, c)| (i, k, evaluate_condition(c, p, f)))
                .collect()
        })
        .collect();
    let mut per_condition: Vec<(usize, f64)> =
        (0..spec.conditions.len()).map(|k| (k, 0.0)).collect();
    let mut report = GridReport {
        points_checked: pts.len(),
        evaluations: 0,
        max_violation: 0.0,
        worst_point: None,
        worst_condition: None,
        per_condition: Vec::new(),
        per_condition_worst: vec![None; spec.conditions.len()],
    };
    for (i, k, v) in rows.into_iter().flatten() {
        report.evaluations += 1;
        if report.per_condition_worst[k].is_none() || v > per_condition[k].1 {
            per_condition[k].1 = v;
            report.per_condition_worst[k] = Some(pts[i]);
        }
        if report.worst_point.is_none() || v > report.max_violation {
            report.max_violation = v;
            report.worst_point = Some(pts[i]);
            report.worst_condition = Some(k);
        }
    }
    report.per_condition = per_condition;
    Ok(report)
}
