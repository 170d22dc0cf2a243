use super::boundary::{Algebra, BoundarySpec};
use crate::catalog::ParamPoint;
use crate::error::{check_open, Error, Result};
use crate::linalg::C64;

/// Round-trip tolerance of the reparameterizations.
pub const ROUND_TRIP_TOL: f64 = 1e-12;

/// `(r, x1) ↦ (ε2 + k (r − ε1), k x1)` with `k = (1 − ε2)/(1 − ε1)`,
/// keeping the argument of `y`.
pub fn eps_map(eps1: f64, eps2: f64, p: &ParamPoint) -> Result<ParamPoint> {
    let ParamPoint::Wcar {
        y,
        x1,
        x2,
        phi1,
        phi2,
    } = *p
    else {
        return Err(Error::Domain(format!("{p} is not a WCAR point")));
    };
    let k = (1.0 - eps2) / (1.0 - eps1);
    let r = eps2 + k * (y.norm() - eps1);
    Ok(ParamPoint::Wcar {
        y: C64::from_polar(r, y.arg()),
        x1: k * x1,
        x2,
        phi1,
        phi2,
    })
}

/// `x1 ↦ (1 − |y2|)/(1 − |y1|) x1`, replacing `y1` by `y2`.
pub fn y_map(y1: C64, y2: C64, p: &ParamPoint) -> Result<ParamPoint> {
    let ParamPoint::Wcar {
        x1, x2, phi1, phi2, ..
    } = *p
    else {
        return Err(Error::Domain(format!("{p} is not a WCAR point")));
    };
    let k = (1.0 - y2.norm()) / (1.0 - y1.norm());
    Ok(ParamPoint::Wcar {
        y: y2,
        x1: k * x1,
        x2,
        phi1,
        phi2,
    })
}

fn check_in_eps_domain(eps: f64, p: &ParamPoint) -> Result<()> {
    let (Some(r), Some(x1)) = (p.coord("r"), p.coord("x1")) else {
        return Err(Error::Domain(format!("{p} is not a WCAR point")));
    };
    if r < eps - ROUND_TRIP_TOL || r > 1.0 + ROUND_TRIP_TOL {
        return Err(Error::closed("|y|", eps, 1.0, r));
    }
    p.validate()?;
    let _ = x1;
    Ok(())
}

fn same_point(a: &ParamPoint, b: &ParamPoint) -> bool {
    a.coordinates()
        .iter()
        .zip(b.coordinates().iter())
        .all(|((_, u), (_, v))| (u - v).abs() <= ROUND_TRIP_TOL)
}

fn regions(spec: &BoundarySpec, p: &ParamPoint) -> Vec<bool> {
    spec.conditions
        .iter()
        .map(|c| c.region.contains(p))
        .collect()
}

/// Checks that the `ε1 → ε2` map sends each sample into the `ε2` domain,
/// inverts to the sample within [`ROUND_TRIP_TOL`], and keeps the set of
/// applicable boundary conditions.
pub fn reparam_iso_check(eps1: f64, eps2: f64, sample: &[ParamPoint]) -> Result<bool> {
    check_open("eps1", eps1, 0.0, 1.0)?;
    check_open("eps2", eps2, 0.0, 1.0)?;
    let s1 = BoundarySpec::new(Algebra::EEps { eps: eps1 })?;
    let s2 = BoundarySpec::new(Algebra::EEps { eps: eps2 })?;
    for p in sample {
        check_in_eps_domain(eps1, p)?;
        let q = eps_map(eps1, eps2, p)?;
        if check_in_eps_domain(eps2, &q).is_err() {
            return Ok(false);
        }
        let back = eps_map(eps2, eps1, &q)?;
        if !same_point(p, &back) || regions(&s1, p) != regions(&s2, &q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same check for `E(−1, y1) → E(−1, y2)`.
pub fn reparam_y_check(y1: C64, y2: C64, sample: &[ParamPoint]) -> Result<bool> {
    let s1 = BoundarySpec::new(Algebra::EMinus1Y { y: y1 })?;
    let s2 = BoundarySpec::new(Algebra::EMinus1Y { y: y2 })?;
    for p in sample {
        p.validate()?;
        let q = y_map(y1, y2, p)?;
        if q.validate().is_err() {
            return Ok(false);
        }
        let back = y_map(y2, y1, &q)?;
        if !same_point(p, &back) || regions(&s1, p) != regions(&s2, &q) {
            return Ok(false);
        }
    }
    Ok(true)
}
