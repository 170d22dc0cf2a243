use std::f64::consts::TAU;

use super::{Family, ParamPoint};
use crate::linalg::C64;

/// `n` evenly spaced points on `[lo, hi]`, endpoints included.
pub fn real_axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `n` evenly spaced angles `2πk/n`.
pub fn angle_axis(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

fn product<const N: usize>(axes: [&[f64]; N]) -> Vec<[f64; N]> {
    let mut out = vec![[0.0; N]];
    for (k, axis) in axes.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&v| {
                    let mut q = p;
                    q[k] = v;
                    q
                })
            })
            .collect();
    }
    out
}

/// The default sampling grid of a family: `n_real` points per real axis and
/// `n_angle` per angle. Auxiliary parameters are fixed at `d = 2`,
/// `μ = 1/2`; WCAR families sample `y = r e^{iθ}` with `r` on the grid.
/// Only points that dispatch to `family` are kept.
pub fn default_grid(family: Family, n_real: usize, n_angle: usize) -> Vec<ParamPoint> {
    let ang = angle_axis(n_angle);
    let half = real_axis(0.0, 0.5, n_real);
    let unit = real_axis(0.0, 1.0, n_real);
    let (d, mu) = (2, 0.5);
    let pts: Vec<ParamPoint> = match family {
        Family::Disk2 => product([&half, &ang])
            .into_iter()
            .map(|[x, phi]| ParamPoint::Disk2 { x, phi })
            .collect(),
        Family::Disk1 => ang.iter().map(|&phi| ParamPoint::Disk1 { phi }).collect(),
        Family::Wtcar2d => product([&half, &ang])
            .into_iter()
            .map(|[x, phi]| ParamPoint::Wtcar2d { d, mu, x, phi })
            .collect(),
        Family::Wtcar1d => ang
            .iter()
            .map(|&phi| ParamPoint::Wtcar1d { d, mu, phi })
            .collect(),
        Family::WcarA => product([&ang, &ang])
            .into_iter()
            .map(|[theta, phi1]| ParamPoint::Wcar {
                y: C64::from_polar(1.0, theta),
                x1: 0.0,
                x2: 0.0,
                phi1,
                phi2: 0.0,
            })
            .collect(),
        Family::WcarB1 => product([&unit, &ang, &ang])
            .into_iter()
            .map(|[r, theta, phi1]| ParamPoint::Wcar {
                y: C64::from_polar(r, theta),
                x1: (1.0 - r) / 2.0,
                x2: 0.0,
                phi1,
                phi2: 0.0,
            })
            .collect(),
        Family::WcarB21 | Family::WcarB22 => product([&unit, &unit, &half, &ang, &ang, &ang])
            .into_iter()
            .map(|[r, s, x2, theta, phi1, phi2]| ParamPoint::Wcar {
                y: C64::from_polar(r, theta),
                x1: s * (1.0 - r) / 2.0,
                x2: if family == Family::WcarB22 { 0.5 } else { x2 },
                phi1,
                phi2,
            })
            .collect(),
        Family::Wcarz1 | Family::Wcarz2A | Family::Wcarz2B | Family::Wcarz3 => {
            product([&half, &half, &ang, &ang])
                .into_iter()
                .map(|[x1, x2, phi1, phi2]| ParamPoint::Wcarz { x1, x2, phi1, phi2 })
                .collect()
        }
        Family::Global => product([&unit, &half, &half, &ang, &ang, &ang])
            .into_iter()
            .map(|[r1, x1, x2, phi, phi1, phi2]| ParamPoint::Global {
                r1,
                x1,
                x2,
                phi,
                phi1,
                phi2,
            })
            .collect(),
    };
    let mut kept: Vec<ParamPoint> = Vec::new();
    for p in pts.into_iter().filter(|p| p.family() == family) {
        if !kept.iter().any(|q| q == &p) {
            kept.push(p);
        }
    }
    kept
}
