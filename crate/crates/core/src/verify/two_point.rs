use std::f64::consts::TAU;

use rand::Rng;

use super::boundary::{generator_functions, Algebra};
use crate::catalog::{disk_rep, ParamPoint, Representation};
use crate::error::{Error, Result};
use crate::linalg::{direct_sum, C64};
use crate::structure::{commutant, intertwiners};

/// Families for the pair criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairFamily {
    /// `disk_rep(x, φ)` on `[0, 1/2] × S¹`.
    Disk2,
    /// The E(−1, y) generator functions at fixed `y`.
    WcarY { y: C64 },
    /// The E(−1, 0) generator functions.
    Wcarz,
}

impl PairFamily {
    pub fn id(&self) -> &'static str {
        match self {
            PairFamily::Disk2 => "DISK2",
            PairFamily::WcarY { .. } => "WCAR",
            PairFamily::Wcarz => "WCARZ",
        }
    }

    pub fn rep(&self, p: &ParamPoint) -> Result<Representation> {
        let gens = match (self, p) {
            (PairFamily::Disk2, ParamPoint::Disk2 { x, phi }) => return disk_rep(*x, *phi),
            (PairFamily::WcarY { y }, ParamPoint::Wcar { y: py, .. })
                if (py - y).norm() <= 1e-12 =>
            {
                generator_functions(&Algebra::EMinus1Y { y: *y }, p)?
            }
            (PairFamily::Wcarz, ParamPoint::Wcarz { .. }) => {
                generator_functions(&Algebra::EMinus10, p)?
            }
            _ => {
                return Err(Error::Domain(format!(
                    "{p} is not a point of {}",
                    self.id()
                )))
            }
        };
        Representation::custom(gens)
    }

    /// A random point; real coordinates land on an endpoint with
    /// probability 0.3.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> ParamPoint {
        let mut real = |hi: f64| {
            if rng.random_bool(0.3) {
                if rng.random_bool(0.5) {
                    0.0
                } else {
                    hi
                }
            } else {
                rng.random_range(0.0..=hi)
            }
        };
        match *self {
            PairFamily::Disk2 => {
                let x = real(0.5);
                ParamPoint::Disk2 {
                    x,
                    phi: rng.random_range(0.0..TAU),
                }
            }
            PairFamily::WcarY { y } => {
                let x1 = real((1.0 - y.norm()) / 2.0);
                let x2 = real(0.5);
                ParamPoint::Wcar {
                    y,
                    x1,
                    x2,
                    phi1: rng.random_range(0.0..TAU),
                    phi2: rng.random_range(0.0..TAU),
                }
            }
            PairFamily::Wcarz => {
                let x1 = real(0.5);
                let x2 = real(0.5);
                ParamPoint::Wcarz {
                    x1,
                    x2,
                    phi1: rng.random_range(0.0..TAU),
                    phi2: rng.random_range(0.0..TAU),
                }
            }
        }
    }

    /// A random pair; each coordinate of the second point is copied from
    /// the first with probability 0.2, so coinciding and boundary-glued
    /// pairs are well represented.
    pub fn sample_pair<R: Rng>(&self, rng: &mut R) -> (ParamPoint, ParamPoint) {
        let p = self.sample(rng);
        let mut q = self.sample(rng);
        for (name, value) in p.coordinates() {
            if rng.random_bool(0.2) {
                q = q.with_coord(name, value);
            }
        }
        (p, q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoPoint {
    pub pass: bool,
    pub pair_commutant_dim: usize,
    pub expected_dim: usize,
}

/// Compares the commutant of `π_p ⊕ π_q` with the sum of the four
/// intertwiner dimensions `dim C(π_i, π_j)`, `i, j ∈ {p, q}`.
pub fn two_point_check(family: &PairFamily, p: &ParamPoint, q: &ParamPoint) -> Result<TwoPoint> {
    let rp = family.rep(p)?;
    let rq = family.rep(q)?;
    let pair = Representation::custom(
        rp.generators
            .iter()
            .zip(&rq.generators)
            .map(|(a, b)| direct_sum(&[a, b]))
            .collect(),
    )?;
    let pair_commutant_dim = commutant(&pair).dim();
    let expected_dim = commutant(&rp).dim()
        + commutant(&rq).dim()
        + intertwiners(&rp, &rq)?.dim()
        + intertwiners(&rq, &rp)?.dim();
    Ok(TwoPoint {
        pass: pair_commutant_dim == expected_dim,
        pair_commutant_dim,
        expected_dim,
    })
}
