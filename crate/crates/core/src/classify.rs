//! Matching a user-supplied matrix tuple against the presets and the
//! representation catalog.

use std::f64::consts::PI;

use crate::catalog::{canonical_params, ParamPoint, Representation};
use crate::error::Result;
use crate::linalg::{herm_eigen, ComplexMatrix, C64};
use crate::presentation::{preset, residual, Preset};
use crate::structure::{
    anticommutator_terms, are_equivalent, central_value, decompose, is_irreducible,
};

/// Residual of one preset on the tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetFit {
    pub preset: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockSummary {
    pub dim: usize,
    pub multiplicity: usize,
    /// Catalog point of the block, when found.
    pub point: Option<ParamPoint>,
    /// For one-dimensional blocks, the scalar values of the generators.
    pub values: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub fits: Vec<PresetFit>,
    /// `a1 a2 + a2 a1 = y I`, for pairs.
    pub central: Option<C64>,
    pub irreducible: bool,
    pub blocks: Vec<BlockSummary>,
    /// Catalog point of an irreducible tuple.
    pub point: Option<ParamPoint>,
}

impl Classification {
    /// Presets whose residual is within `tol`.
    pub fn holding(&self, tol: f64) -> Vec<&str> {
        self.fits
            .iter()
            .filter(|f| f.residual <= tol)
            .map(|f| f.preset.as_str())
            .collect()
    }
}

/// Parameter-free presets for `n` generators, plus `WCAR_Y` at `y` when
/// known.
fn candidate_presets(n: usize, y: Option<C64>) -> Vec<(String, Preset)> {
    let mut out = vec![
        (format!("CAR(d={n})"), Preset::Car { d: n }),
        (format!("WCAR(d={n})"), Preset::Wcar { d: n }),
    ];
    if n == 1 {
        out.push(("DISK_NORMALIZED".into(), Preset::DiskNormalized));
    }
    if let (2, Some(y)) = (n, y) {
        if y.norm() <= 1.0 + 1e-9 {
            let y = if y.norm() > 1.0 { y / y.norm() } else { y };
            out.push((
                format!("WCAR_Y(y={})", crate::literal::format_coefficient(y)),
                Preset::WcarY { y },
            ));
        }
    }
    out
}

pub fn classify(generators: &[ComplexMatrix], tol: f64) -> Result<Classification> {
    let rep = Representation::custom(generators.to_vec())?;
    let n = generators.len();
    let central = if n == 2 {
        central_value(&rep, &anticommutator_terms()).map(|y| {
            if y.norm() <= SNAP_TOL {
                C64::new(0.0, 0.0)
            } else {
                y
            }
        })
    } else {
        None
    };
    let mut fits = Vec::new();
    for (name, p) in candidate_presets(n, central) {
        fits.push(PresetFit {
            preset: name,
            residual: residual(&preset(&p)?, generators)?,
        });
    }
    let wcar_like = fits
        .iter()
        .any(|f| f.preset.starts_with("WCAR") && f.residual <= tol);
    let disk_like = n == 1
        && fits
            .iter()
            .any(|f| f.preset.starts_with("DISK") && f.residual <= tol);
    let irreducible = is_irreducible(&rep);
    let report = decompose(&rep);
    let mut blocks = Vec::new();
    for (b, mult) in &report.blocks {
        let point = if disk_like || wcar_like {
            match_catalog(&b.generators, central, tol)
        } else {
            None
        };
        let values = if b.dim() == 1 {
            b.generators.iter().map(|g| g[(0, 0)]).collect()
        } else {
            Vec::new()
        };
        blocks.push(BlockSummary {
            dim: b.dim(),
            multiplicity: *mult,
            point,
            values,
        });
    }
    let point = if irreducible && (disk_like || wcar_like) && matches!(rep.dim(), 1 | 2 | 4) {
        match_catalog(generators, central, tol)
    } else {
        None
    };
    Ok(Classification {
        fits,
        central,
        irreducible,
        blocks,
        point,
    })
}

/// Estimated parameters this close to a distinguished value are moved onto it.
const SNAP_TOL: f64 = 1e-9;

fn snap(x: f64, targets: &[f64]) -> f64 {
    targets
        .iter()
        .copied()
        .find(|t| (x - t).abs() <= SNAP_TOL)
        .unwrap_or(x)
}

/// Smallest eigenvalue of `a* a`.
fn min_weight(a: &ComplexMatrix) -> f64 {
    herm_eigen(&(a.adjoint() * a))
        .map(|(ev, _)| ev.first().copied().unwrap_or(0.0).clamp(0.0, 0.5))
        .unwrap_or(0.0)
}

/// `a² = λ I` gives `λ`, else zero.
fn square_scalar(a: &ComplexMatrix) -> C64 {
    let n = a.nrows();
    let sq = a * a;
    let lambda = sq.trace() / C64::new(n as f64, 0.0);
    if crate::linalg::distance(&sq, &(ComplexMatrix::identity(n, n) * lambda)) <= 1e-8 {
        lambda
    } else {
        C64::new(0.0, 0.0)
    }
}

/// Angles `θ`, `θ/2` and `θ/2 + π` for the phase of `z`, or just `0`.
fn phase_candidates(z: C64) -> Vec<f64> {
    if z.norm() <= 1e-10 {
        vec![0.0]
    } else {
        let t = z.arg();
        vec![t, t / 2.0, t / 2.0 + PI]
    }
}

/// `x ∈ [0, 1/2]` with `√(x(1−x)) = m`.
fn weight_from_root(m: f64) -> f64 {
    let m = m.clamp(0.0, 0.5);
    (1.0 - (1.0 - 4.0 * m * m).max(0.0).sqrt()) / 2.0
}

/// Searches the dispatched catalog family for a point equivalent to the
/// tuple, using unitary invariants to propose parameters and
/// [`are_equivalent`] to confirm.
pub fn match_catalog(
    generators: &[ComplexMatrix],
    central: Option<C64>,
    tol: f64,
) -> Option<ParamPoint> {
    let target = Representation::custom(generators.to_vec()).ok()?;
    let dim = target.dim();
    let mut candidates: Vec<ParamPoint> = Vec::new();
    match generators {
        [a] if dim == 1 => {
            let z = a[(0, 0)] * std::f64::consts::SQRT_2;
            candidates.push(ParamPoint::Disk1 { phi: z.arg() });
        }
        [a] => {
            let x = snap(min_weight(a), &[0.0, 0.5]);
            for phi in phase_candidates(square_scalar(a)) {
                candidates.push(ParamPoint::Disk2 { x, phi });
            }
        }
        [a1, a2] => {
            let y = central?;
            let s1 = square_scalar(a1);
            let s2 = square_scalar(a2);
            let r = y.norm().min(1.0);
            let x1 = snap(min_weight(a1), &[0.0, 0.5, (1.0 - r) / 2.0]);
            for phi1 in phase_candidates(s1) {
                let mut x2s = vec![snap(min_weight(a2), &[0.0, 0.5]), 0.5];
                let mut phi2s = phase_candidates(s2);
                {
                    // a2² = (1−|c|²) e^{iφ2}√(x2(1−x2)) − c² e^{−iφ1}√(x1(1−x1)),
                    // with e^{2iφ2}/2 in place of e^{iφ2}√(x2(1−x2)) in two dimensions.
                    let width = 1.0 - 2.0 * x1;
                    let c = if width > 0.0 {
                        y / width
                    } else {
                        C64::new(0.0, 0.0)
                    };
                    let s = 1.0 - c.norm_sqr();
                    if s > 1e-12 {
                        let rest =
                            (s2 + c * c * C64::from_polar((x1 * (1.0 - x1)).sqrt(), -phi1)) / s;
                        x2s.push(snap(weight_from_root(rest.norm()), &[0.0, 0.5]));
                        phi2s.extend(phase_candidates(rest));
                    }
                }
                for &x2 in &x2s {
                    for &phi2 in &phi2s {
                        candidates.push(if r == 0.0 {
                            ParamPoint::Wcarz { x1, x2, phi1, phi2 }
                        } else {
                            ParamPoint::Wcar {
                                y,
                                x1,
                                x2,
                                phi1,
                                phi2,
                            }
                        });
                    }
                }
            }
            if r > 0.0 {
                let edge = (1.0 - r) / 2.0;
                if (x1 - edge).abs() <= 1e-6 {
                    for phi1 in phase_candidates(s1) {
                        candidates.push(ParamPoint::Wcar {
                            y,
                            x1: edge,
                            x2: 0.0,
                            phi1,
                            phi2: 0.0,
                        });
                    }
                }
            }
        }
        _ => return None,
    }
    for c in candidates {
        let Ok(rep) = c.build() else { continue };
        if rep.dim() != dim {
            continue;
        }
        if let Ok(Some(u)) = are_equivalent(&rep, &target) {
            if crate::structure::conjugation_residual(&u, &rep, &target) <= tol.max(1e-8) {
                return canonical_params(&c).ok();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{disk_rep, global_rep, wcar_rep, wcar_zero_rep, Family};
    use crate::linalg::{c64, conjugate, identity, unit};

    fn scramble(gens: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
        let n = gens[0].nrows();
        let h = ComplexMatrix::from_fn(n, n, |i, j| {
            c64((i + 2 * j) as f64 * 0.3, (i as f64 - j as f64) * 0.2)
        });
        let (_, u) = herm_eigen(&(&h + h.adjoint())).unwrap();
        gens.iter().map(|g| conjugate(g, &u)).collect()
    }

    #[test]
    fn case_a_with_y_i() {
        let y = c64(0.0, 1.0);
        let gens = vec![unit(2, 1, 0), unit(2, 0, 1) * y];
        let c = classify(&gens, 1e-8).unwrap();
        assert_eq!(c.central, Some(y));
        assert!(c.holding(1e-8).iter().any(|p| p.starts_with("WCAR_Y")));
        assert!(c.irreducible);
        assert_eq!(c.point.unwrap().family(), Family::WcarA);
    }

    #[test]
    fn disk_half_is_two_characters() {
        let c = classify(&disk_rep(0.5, 0.0).unwrap().generators, 1e-8).unwrap();
        assert!(!c.irreducible);
        let mut vals: Vec<f64> = c.blocks.iter().map(|b| b.values[0].re).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 0.5f64.sqrt()).abs() < 1e-10 && (vals[1] - 0.5f64.sqrt()).abs() < 1e-10);
        assert!(
            c.blocks
                .iter()
                .all(|b| b.point.is_some_and(|p| p.family() == Family::Disk1)),
            "{:?}",
            c.blocks
        );
    }

    #[test]
    fn identity_is_unclassified() {
        let c = classify(&[identity(2)], 1e-8).unwrap();
        assert!(
            c.fits.iter().all(|f| (f.residual - 1.0).abs() < 1e-12),
            "{:?}",
            c.fits
        );
        assert!(c.point.is_none());
        assert!(c.holding(1e-8).is_empty());
    }

    #[test]
    fn recovers_catalog_points() {
        let reps = [
            disk_rep(0.2, 1.0).unwrap(),
            wcar_rep(c64(0.3, 0.1), 0.1, 0.2, 1.0, 2.0).unwrap(),
            wcar_rep(c64(0.3, 0.0), 0.35, 0.0, 0.5, 0.0).unwrap(),
            wcar_rep(c64(0.3, 0.0), 0.1, 0.5, 0.5, 1.0).unwrap(),
            wcar_zero_rep(0.2, 0.3, 1.0, 2.0).unwrap(),
            wcar_zero_rep(0.5, 0.3, 1.0, 2.0).unwrap(),
            wcar_zero_rep(0.5, 0.5, 1.0, 2.0).unwrap(),
        ];
        for rep in reps {
            let src = rep.source.unwrap();
            let c = classify(&scramble(&rep.generators), 1e-8).unwrap();
            let p = c.point.unwrap_or_else(|| panic!("no match for {src}"));
            assert_eq!(p.family(), src.family(), "{src} -> {p}");
            assert!(p.build().is_ok());
        }
        let g = global_rep(0.4, 0.2, 0.3, 0.5, 1.0, 2.0).unwrap();
        assert!(classify(&g.generators, 1e-8).unwrap().point.is_some());
    }
}
