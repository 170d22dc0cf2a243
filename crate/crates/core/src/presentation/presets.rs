//! The built-in relation families.

use super::{Presentation, Relation, StarWord, Term};
use crate::error::{check_closed, check_open, Error, Result};
use crate::linalg::{c64, op_norm, ComplexMatrix, C64, ONE};

/// A named relation family with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    /// Canonical anticommutation relations on `d` generators.
    Car { d: usize },
    /// Quon relations `a_i* a_j = δ_ij + q a_j a_i*`, `q ∈ (-1, 1)`.
    Qccr { d: usize, q: f64 },
    /// Twisted CAR, `μ ∈ (0, 1)`.
    Tcar { d: usize, mu: f64 },
    /// Wick analogue of twisted CAR: TCAR without the `a_i`–`a_j`
    /// relations.
    Wtcar { d: usize, mu: f64 },
    /// Quantum disk `a* a - q a a* = 1 - q`, `q ∈ [-1, 1)`.
    Disk { q: f64 },
    /// `a* a + a a* = 1`.
    DiskNormalized,
    /// Wick analogue of CAR.
    Wcar { d: usize },
    /// `d = 2` Wick CAR together with `a2 a1 + a1 a2 = y`, `|y| ≤ 1`.
    WcarY { y: C64 },
    /// Wick CAR with `a_i a_j + a_j a_i = y_ij` for a symmetric `Y`,
    /// `‖Y‖ ≤ 1`.
    WcarYMatrix { y: ComplexMatrix },
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Car { .. } => "CAR",
            Preset::Qccr { .. } => "QCCR",
            Preset::Tcar { .. } => "TCAR",
            Preset::Wtcar { .. } => "WTCAR",
            Preset::Disk { .. } => "DISK",
            Preset::DiskNormalized => "DISK_NORMALIZED",
            Preset::Wcar { .. } => "WCAR",
            Preset::WcarY { .. } | Preset::WcarYMatrix { .. } => "WCAR_Y",
        }
    }
}

fn w(factors: &[(usize, bool)]) -> StarWord {
    StarWord::new(factors.to_vec())
}

fn t(coef: f64, factors: &[(usize, bool)]) -> Term {
    Term::new(c64(coef, 0.0), w(factors))
}

fn unit(coef: C64) -> Term {
    Term::new(coef, StarWord::unit())
}

fn check_d(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::ParamOutOfRange {
            name: "d".into(),
            range: "[1, ∞)".into(),
            value: 0.0,
        });
    }
    Ok(())
}

fn check_y(y: C64) -> Result<()> {
    check_closed("|y|", y.norm(), 0.0, 1.0, 0.0)
}

/// `a_i* a_i + a_i a_i* = 1`.
fn normalization(i: usize) -> Relation {
    Relation::new(
        vec![
            t(1.0, &[(i, true), (i, false)]),
            t(1.0, &[(i, false), (i, true)]),
        ],
        vec![unit(ONE)],
    )
}

/// `a_i* a_j = -a_j a_i*` for ordered `i ≠ j`.
fn wick_pairs(d: usize, out: &mut Vec<Relation>) {
    for i in 0..d {
        for j in 0..d {
            if i != j {
                out.push(Relation::new(
                    vec![t(1.0, &[(i, true), (j, false)])],
                    vec![t(-1.0, &[(j, false), (i, true)])],
                ));
            }
        }
    }
}

/// Builds the presentation of a preset, checking parameter ranges.
pub fn preset(p: &Preset) -> Result<Presentation> {
    let mut rels = Vec::new();
    let out = match p {
        Preset::Car { d } => {
            let d = *d;
            check_d(d)?;
            for i in 0..d {
                rels.push(normalization(i));
                rels.push(Relation::new(
                    vec![t(1.0, &[(i, false), (i, false)])],
                    vec![],
                ));
            }
            for i in 0..d {
                for j in 0..d {
                    if i == j {
                        continue;
                    }
                    rels.push(Relation::new(
                        vec![t(1.0, &[(i, true), (j, false)])],
                        vec![t(-1.0, &[(j, false), (i, true)])],
                    ));
                    rels.push(Relation::new(
                        vec![t(1.0, &[(j, false), (i, false)])],
                        vec![t(-1.0, &[(i, false), (j, false)])],
                    ));
                }
            }
            Presentation::new("CAR", d, rels)?.with_param("d", c64(d as f64, 0.0))
        }
        Preset::Qccr { d, q } => {
            let (d, q) = (*d, *q);
            check_d(d)?;
            check_open("q", q, -1.0, 1.0)?;
            for i in 0..d {
                for j in 0..d {
                    let mut rhs = Vec::new();
                    if i == j {
                        rhs.push(unit(ONE));
                    }
                    rhs.push(t(q, &[(j, false), (i, true)]));
                    rels.push(Relation::new(vec![t(1.0, &[(i, true), (j, false)])], rhs));
                }
            }
            Presentation::new("QCCR", d, rels)?
                .with_param("d", c64(d as f64, 0.0))
                .with_param("q", c64(q, 0.0))
        }
        Preset::Tcar { d, mu } | Preset::Wtcar { d, mu } => {
            let (d, mu) = (*d, *mu);
            let full = matches!(p, Preset::Tcar { .. });
            check_d(d)?;
            check_open("mu", mu, 0.0, 1.0)?;
            for i in 0..d {
                let mut rhs = vec![unit(ONE), t(-1.0, &[(i, false), (i, true)])];
                for j in 0..i {
                    rhs.push(t(-(1.0 - mu * mu), &[(j, false), (j, true)]));
                }
                rels.push(Relation::new(vec![t(1.0, &[(i, true), (i, false)])], rhs));
            }
            for i in 0..d {
                for j in i + 1..d {
                    rels.push(Relation::new(
                        vec![t(1.0, &[(i, true), (j, false)])],
                        vec![t(-mu, &[(j, false), (i, true)])],
                    ));
                    if full {
                        rels.push(Relation::new(
                            vec![t(1.0, &[(j, false), (i, false)])],
                            vec![t(-mu, &[(i, false), (j, false)])],
                        ));
                    }
                }
            }
            if full {
                for i in 0..d {
                    rels.push(Relation::new(
                        vec![t(1.0, &[(i, false), (i, false)])],
                        vec![],
                    ));
                }
            }
            Presentation::new(p.name(), d, rels)?
                .with_param("d", c64(d as f64, 0.0))
                .with_param("mu", c64(mu, 0.0))
        }
        Preset::Disk { q } => {
            let q = *q;
            if !(q.is_finite() && (-1.0..1.0).contains(&q)) {
                return Err(Error::ParamOutOfRange {
                    name: "q".into(),
                    range: "[-1, 1)".into(),
                    value: q,
                });
            }
            rels.push(Relation::new(
                vec![
                    t(1.0, &[(0, true), (0, false)]),
                    t(-q, &[(0, false), (0, true)]),
                ],
                vec![unit(c64(1.0 - q, 0.0))],
            ));
            Presentation::new("DISK", 1, rels)?.with_param("q", c64(q, 0.0))
        }
        Preset::DiskNormalized => Presentation::new("DISK_NORMALIZED", 1, vec![normalization(0)])?,
        Preset::Wcar { d } => {
            let d = *d;
            check_d(d)?;
            rels.extend((0..d).map(normalization));
            wick_pairs(d, &mut rels);
            Presentation::new("WCAR", d, rels)?.with_param("d", c64(d as f64, 0.0))
        }
        Preset::WcarY { y } => {
            check_y(*y)?;
            rels.push(normalization(0));
            rels.push(normalization(1));
            rels.push(Relation::new(
                vec![t(1.0, &[(0, true), (1, false)])],
                vec![t(-1.0, &[(1, false), (0, true)])],
            ));
            rels.push(Relation::new(
                vec![
                    t(1.0, &[(1, false), (0, false)]),
                    t(1.0, &[(0, false), (1, false)]),
                ],
                vec![unit(*y)],
            ));
            Presentation::new("WCAR_Y", 2, rels)?.with_param("y", *y)
        }
        Preset::WcarYMatrix { y } => {
            let d = y.nrows();
            check_d(d)?;
            if y.ncols() != d {
                return Err(Error::ShapeMismatch(format!(
                    "Y must be square, got {}x{}",
                    d,
                    y.ncols()
                )));
            }
            let asym = op_norm(&(y - y.transpose()));
            if asym > 1e-12 {
                return Err(Error::ShapeMismatch(format!(
                    "Y must be symmetric (defect {asym:e})"
                )));
            }
            check_closed("‖Y‖", op_norm(y), 0.0, 1.0, 1e-12)?;
            rels.extend((0..d).map(normalization));
            wick_pairs(d, &mut rels);
            for i in 0..d {
                for j in i..d {
                    rels.push(Relation::new(
                        vec![
                            t(1.0, &[(i, false), (j, false)]),
                            t(1.0, &[(j, false), (i, false)]),
                        ],
                        vec![unit(y[(i, j)])],
                    ));
                }
            }
            Presentation::new("WCAR_Y", d, rels)?.with_param("d", c64(d as f64, 0.0))
        }
    };
    Ok(out)
}
