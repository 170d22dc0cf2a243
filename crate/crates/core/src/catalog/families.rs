use std::f64::consts::FRAC_1_SQRT_2;

use super::{normalize_angle, wcar_family, wcarz_family, Family, ParamPoint, Representation};
use crate::error::{check_closed, check_open, Error, Result};
use crate::linalg::{
    c64, cis, diag, from_rows, identity, kron, kron_all, unit, ComplexMatrix, C64, ONE, ZERO,
};

/// `[[0, e^{iφ}√x], [√(1−x), 0]]`.
pub(crate) fn disk_matrix(x: f64, phi: f64) -> ComplexMatrix {
    let x = x.clamp(0.0, 1.0);
    from_rows(
        2,
        2,
        &[ZERO, cis(phi) * x.sqrt(), c64((1.0 - x).sqrt(), 0.0), ZERO],
    )
}

fn pauli_z() -> ComplexMatrix {
    diag(&[ONE, -ONE])
}

fn twist(mu: f64) -> ComplexMatrix {
    diag(&[ONE, c64(-mu, 0.0)])
}

pub(crate) fn check_wtcar(d: usize, mu: f64) -> Result<()> {
    if d == 0 {
        return Err(Error::ParamOutOfRange {
            name: "d".into(),
            range: "[1, ∞)".into(),
            value: 0.0,
        });
    }
    check_open("mu", mu, 0.0, 1.0)
}

/// The two-dimensional disk representation `π_{x,φ}`.
pub fn disk_rep(x: f64, phi: f64) -> Result<Representation> {
    let p = ParamPoint::Disk2 { x, phi };
    p.validate()?;
    Representation::from_point(p, vec![disk_matrix(x, phi)])
}

/// The character `a ↦ e^{iφ}/√2`.
pub fn disk_char(phi: f64) -> Representation {
    let a = ComplexMatrix::from_element(1, 1, cis(phi) * FRAC_1_SQRT_2);
    let p = ParamPoint::Disk1 { phi };
    Representation {
        generators: vec![a],
        presentation: p.presentation().ok(),
        source: Some(p),
    }
}

/// `V(φ) = (1/√2)[[e^{iφ/2}, −e^{iφ/2}], [1, 1]]`, which diagonalizes
/// `π_{1/2,φ}(a)`.
pub fn v_matrix(phi: f64) -> ComplexMatrix {
    let h = cis(phi / 2.0) * FRAC_1_SQRT_2;
    let s = c64(FRAC_1_SQRT_2, 0.0);
    from_rows(2, 2, &[h, -h, s, s])
}

fn wtcar_lower(d: usize, mu: f64, width: usize) -> Vec<ComplexMatrix> {
    let dm = twist(mu);
    let e21 = unit(2, 1, 0);
    let id = identity(2);
    (0..d - 1)
        .map(|i| {
            let mut factors: Vec<&ComplexMatrix> = vec![&dm; i];
            factors.push(&e21);
            factors.extend(std::iter::repeat_n(&id, width - i - 1));
            kron_all(factors)
        })
        .collect()
}

/// The `2^d`-dimensional WTCAR representation `π_{x,φ}`.
pub fn wtcar_rep(d: usize, mu: f64, x: f64, phi: f64) -> Result<Representation> {
    let p = ParamPoint::Wtcar2d { d, mu, x, phi };
    p.validate()?;
    let mut gens = wtcar_lower(d, mu, d);
    let dm = twist(mu);
    let pi = disk_matrix(x, phi);
    let mut factors: Vec<&ComplexMatrix> = vec![&dm; d - 1];
    factors.push(&pi);
    gens.push(kron_all(factors));
    Representation::from_point(p, gens)
}

/// The `2^(d−1)`-dimensional WTCAR representation `ρ_φ`.
pub fn wtcar_char(d: usize, mu: f64, phi: f64) -> Result<Representation> {
    let p = ParamPoint::Wtcar1d { d, mu, phi };
    p.validate()?;
    let mut gens = wtcar_lower(d, mu, d - 1);
    let dm = twist(mu);
    gens.push(kron_all(vec![&dm; d - 1]) * (cis(phi) * FRAC_1_SQRT_2));
    Representation::from_point(p, gens)
}

/// The four-dimensional pair
/// `a1 = π_{x1,φ1} ⊗ I`,
/// `a2 = √(1−|c|²) Z ⊗ π_{x2,φ2} + c B ⊗ I`
/// with `B = [[0, √(1−x1)], [−e^{−iφ1}√x1, 0]]`; `a1 a2 + a2 a1 = c(1−2x1)`.
/// The coupling is passed as modulus and argument so that `|c| = 1` is exact.
fn coupled_pair(r: f64, theta: f64, x1: f64, x2: f64, phi1: f64, phi2: f64) -> Vec<ComplexMatrix> {
    let id = identity(2);
    let a1 = kron(&disk_matrix(x1, phi1), &id);
    let r = r.clamp(0.0, 1.0);
    let c = C64::from_polar(r, theta);
    let s = ((1.0 - r) * (1.0 + r)).sqrt();
    let b = coupling(x1, phi1);
    let a2 = kron(&pauli_z(), &disk_matrix(x2, phi2)) * c64(s, 0.0) + kron(&b, &id) * c;
    vec![a1, a2]
}

fn coupling(x1: f64, phi1: f64) -> ComplexMatrix {
    let x1 = x1.clamp(0.0, 1.0);
    from_rows(
        2,
        2,
        &[
            ZERO,
            c64((1.0 - x1).sqrt(), 0.0),
            -cis(-phi1) * x1.sqrt(),
            ZERO,
        ],
    )
}

/// Irreducible representations of WCAR with `a1 a2 + a2 a1 = y`, `y ≠ 0`.
/// `y = 0` is delegated to [`wcar_zero_rep`].
pub fn wcar_rep(y: C64, x1: f64, x2: f64, phi1: f64, phi2: f64) -> Result<Representation> {
    let p = ParamPoint::Wcar {
        y,
        x1,
        x2,
        phi1,
        phi2,
    };
    p.validate()?;
    let r = y.norm();
    let gens = match wcar_family(y, x1, x2) {
        Family::WcarA => vec![unit(2, 1, 0), from_rows(2, 2, &[ZERO, y, ZERO, ZERO])],
        Family::WcarB1 => {
            let lo = ((1.0 - r) / 2.0).sqrt();
            let hi = ((1.0 + r) / 2.0).sqrt();
            let u = y / r;
            vec![
                from_rows(2, 2, &[ZERO, cis(phi1) * lo, c64(hi, 0.0), ZERO]),
                from_rows(2, 2, &[ZERO, u * hi, -cis(-phi1) * u * lo, ZERO]),
            ]
        }
        Family::WcarB21 => coupled_pair(r / (1.0 - 2.0 * x1), y.arg(), x1, x2, phi1, phi2),
        Family::WcarB22 => {
            let c = y / (1.0 - 2.0 * x1);
            let s = (1.0 - c.norm_sqr()).max(0.0).sqrt();
            let x1c = x1.clamp(0.0, 0.5);
            let diag_entry = cis(phi2) * (s * FRAC_1_SQRT_2);
            vec![
                disk_matrix(x1, phi1),
                from_rows(
                    2,
                    2,
                    &[
                        diag_entry,
                        c * (1.0 - x1c).sqrt(),
                        -cis(-phi1) * c * x1c.sqrt(),
                        -diag_entry,
                    ],
                ),
            ]
        }
        _ => zero_matrices(x1, x2, phi1, phi2),
    };
    Representation::from_point(p, gens)
}

fn zero_matrices(x1: f64, x2: f64, phi1: f64, phi2: f64) -> Vec<ComplexMatrix> {
    let z = pauli_z();
    match wcarz_family(x1, x2) {
        Family::Wcarz2A => vec![&z * (cis(phi1) * FRAC_1_SQRT_2), disk_matrix(x2, phi2)],
        Family::Wcarz2B => vec![disk_matrix(x1, phi1), &z * (cis(phi2) * FRAC_1_SQRT_2)],
        Family::Wcarz3 => {
            let phi1 = normalize_angle(phi1).rem_euclid(std::f64::consts::PI);
            vec![
                &z * (cis(phi1) * FRAC_1_SQRT_2),
                from_rows(
                    2,
                    2,
                    &[
                        ZERO,
                        cis(phi2) * FRAC_1_SQRT_2,
                        c64(FRAC_1_SQRT_2, 0.0),
                        ZERO,
                    ],
                ),
            ]
        }
        _ => coupled_pair(0.0, 0.0, x1, x2, phi1, phi2),
    }
}

/// Irreducible representations of WCAR with `a1 a2 + a2 a1 = 0`.
pub fn wcar_zero_rep(x1: f64, x2: f64, phi1: f64, phi2: f64) -> Result<Representation> {
    let p = ParamPoint::Wcarz { x1, x2, phi1, phi2 };
    p.validate()?;
    Representation::from_point(p, zero_matrices(x1, x2, phi1, phi2))
}

/// The four-dimensional family over the whole parameter box, with
/// `a1 a2 + a2 a1 = r1(1−2x1)e^{iφ}`.
pub fn global_rep(
    r1: f64,
    x1: f64,
    x2: f64,
    phi: f64,
    phi1: f64,
    phi2: f64,
) -> Result<Representation> {
    let p = ParamPoint::Global {
        r1,
        x1,
        x2,
        phi,
        phi1,
        phi2,
    };
    p.validate()?;
    Representation::from_point(p, coupled_pair(r1, phi, x1, x2, phi1, phi2))
}

/// Parameters `(t, ψ)` of the point `(0, 1/2, t, 0, φ1, ψ)` equivalent to
/// the point `(r1, 1/2, x2, φ, φ1, φ2)` of the global family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma12 {
    pub t: f64,
    pub psi: f64,
    pub z: C64,
}

pub fn lemma12_params(r1: f64, x2: f64, phi: f64, phi1: f64, phi2: f64) -> Result<Lemma12> {
    check_closed("r1", r1, 0.0, 1.0, 0.0)?;
    check_closed("x2", x2, 0.0, 0.5, 0.0)?;
    let r2 = r1 * r1;
    let z =
        cis(phi2) * ((1.0 - r2) * (x2 * (1.0 - x2)).sqrt()) - cis(2.0 * phi - phi1) * (r2 / 2.0);
    let m = z.norm();
    if m > 0.5 + 1e-9 {
        return Err(Error::InvalidModulus { modulus: m });
    }
    let t = (1.0 - (1.0 - 4.0 * m * m).max(0.0).sqrt()) / 2.0;
    let psi = if m <= 1e-12 {
        0.0
    } else {
        normalize_angle(z.arg())
    };
    Ok(Lemma12 { t, psi, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{conjugate, distance, op_norm, unitarity_defect};
    use crate::presentation::{preset, residual, Preset};
    use std::f64::consts::PI;

    #[test]
    fn disk_examples() {
        let r = disk_rep(0.0, 1.3).unwrap();
        assert!(distance(&r.generators[0], &unit(2, 1, 0)) < 1e-15);
        let r = disk_rep(0.25, 0.0).unwrap();
        assert!(r.residual().unwrap() <= 1e-12);
        assert!(disk_rep(0.6, 0.0).is_err());
    }

    #[test]
    fn disk_char_examples() {
        let a = disk_char(0.0).generators[0][(0, 0)];
        assert!((a - c64(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let a = disk_char(PI).generators[0][(0, 0)];
        assert!((a + c64(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((2.0 * a.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn v_diagonalizes_half_point() {
        let v0 = v_matrix(0.0);
        let s = FRAC_1_SQRT_2;
        let expected = from_rows(2, 2, &[c64(s, 0.0), c64(-s, 0.0), c64(s, 0.0), c64(s, 0.0)]);
        assert!(distance(&v0, &expected) < 1e-15);
        for phi in [0.0, 1.0, 2.5, 5.9] {
            let v = v_matrix(phi);
            assert!(unitarity_defect(&v) < 1e-12);
            let d = conjugate(&disk_rep(0.5, phi).unwrap().generators[0], &v);
            let want = diag(&[cis(phi / 2.0) * s, -cis(phi / 2.0) * s]);
            assert!(distance(&d, &want) < 1e-12);
        }
    }

    #[test]
    fn wtcar_examples() {
        let r = wtcar_rep(1, 0.5, 0.3, 1.0).unwrap();
        assert!(distance(&r.generators[0], &disk_matrix(0.3, 1.0)) < 1e-15);
        let r = wtcar_rep(2, 0.5, 0.0, 0.0).unwrap();
        let want = kron(&twist(0.5), &unit(2, 1, 0));
        assert!(distance(&r.generators[1], &want) < 1e-15);
        assert!(r.residual().unwrap() <= 1e-12);
        let c = wtcar_char(2, 0.3, 0.0).unwrap();
        assert!(distance(&c.generators[1], &(twist(0.3) * c64(FRAC_1_SQRT_2, 0.0))) < 1e-15);
        let c1 = wtcar_char(1, 0.3, 0.7).unwrap();
        assert!(distance(&c1.generators[0], &disk_char(0.7).generators[0]) < 1e-15);
    }

    #[test]
    fn wcar_case_a() {
        let r = wcar_rep(ONE, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(distance(&r.generators[0], &unit(2, 1, 0)) < 1e-15);
        assert!(distance(&r.generators[1], &unit(2, 0, 1)) < 1e-15);
        let (a1, a2) = (&r.generators[0], &r.generators[1]);
        assert!(distance(&(a1 * a2 + a2 * a1), &identity(2)) < 1e-15);
    }

    #[test]
    fn wcar_case_b1_entries() {
        let r = wcar_rep(c64(0.5, 0.0), 0.25, 0.3, 0.0, 2.0).unwrap();
        assert_eq!(r.source.unwrap().family(), Family::WcarB1);
        let a1 = &r.generators[0];
        assert!((a1[(0, 1)].re - 0.5).abs() < 1e-15);
        assert!((a1[(1, 0)].re - 0.75f64.sqrt()).abs() < 1e-15);
        assert!(r.residual().unwrap() <= 1e-12);
    }

    #[test]
    fn wcar_case_b21_residual() {
        let y = c64(0.3, 0.0);
        let r = wcar_rep(y, 0.1, 0.2, 1.0, 2.0).unwrap();
        assert_eq!(r.dim(), 4);
        let p = preset(&Preset::WcarY { y }).unwrap();
        assert!(residual(&p, &r.generators).unwrap() <= 1e-10);
    }

    #[test]
    fn wcar_zero_examples() {
        let r = wcar_zero_rep(0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(distance(&r.generators[0], &kron(&unit(2, 1, 0), &identity(2))) < 1e-15);
        assert!(distance(&r.generators[1], &kron(&pauli_z(), &unit(2, 1, 0))) < 1e-15);
        assert!(r.residual().unwrap() <= 1e-12);
        let r = wcar_zero_rep(0.5, 0.2, 0.0, 1.0).unwrap();
        assert!(distance(&r.generators[0], &(pauli_z() * c64(FRAC_1_SQRT_2, 0.0))) < 1e-15);
        let r = wcar_zero_rep(0.5, 0.5, 0.4, 1.1).unwrap();
        assert!(distance(&r.generators[0], &(pauli_z() * (cis(0.4) * FRAC_1_SQRT_2))) < 1e-15);
        let a2 = from_rows(
            2,
            2,
            &[
                ZERO,
                cis(1.1) * FRAC_1_SQRT_2,
                c64(FRAC_1_SQRT_2, 0.0),
                ZERO,
            ],
        );
        assert!(distance(&r.generators[1], &a2) < 1e-15);
    }

    #[test]
    fn global_examples() {
        let g = global_rep(0.0, 0.2, 0.3, 1.0, 2.0, 3.0).unwrap();
        let z = wcar_zero_rep(0.2, 0.3, 2.0, 3.0).unwrap();
        assert!(distance(&g.generators[1], &z.generators[1]) < 1e-15);

        let phi = 0.7;
        let phi1 = 1.9;
        let g = global_rep(1.0, 0.5, 0.3, phi, phi1, 0.2).unwrap();
        let a2 = &g.generators[1];
        let want = identity(4) * (-cis(2.0 * phi - phi1) / 2.0);
        assert!(distance(&(a2 * a2), &want) < 1e-14);

        let g = global_rep(0.5, 0.1, 0.3, 0.0, 0.0, 0.0).unwrap();
        let (a1, a2) = (&g.generators[0], &g.generators[1]);
        let s = a1 * a2 + a2 * a1;
        assert!((s[(0, 0)] - c64(0.4, 0.0)).norm() < 1e-14);
        assert!(distance(&s, &(identity(4) * c64(0.4, 0.0))) < 1e-14);
        assert!(g.residual().unwrap() <= 1e-12);
        assert!(op_norm(a2) <= 1.0 + 1e-12);
    }

    #[test]
    fn lemma12_examples() {
        let (phi, phi1) = (0.8, 2.9);
        let l = lemma12_params(1.0, 0.3, phi, phi1, 1.0).unwrap();
        assert!((l.t - 0.5).abs() < 1e-7);
        assert!(super::super::angle_distance(l.psi, 2.0 * phi - phi1 + PI) < 1e-12);

        let l = lemma12_params(1e-8, 0.2, 0.0, 0.0, 1.5).unwrap();
        assert!((l.t - 0.2).abs() < 1e-12);
        assert!((l.psi - 1.5).abs() < 1e-12);

        let l = lemma12_params(0.5, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!((l.z - c64(-0.125, 0.0)).norm() < 1e-15);
        let t = (1.0 - (1.0 - 4.0 * 0.015625f64).sqrt()) / 2.0;
        assert!((l.t - t).abs() < 1e-15);
        assert!((l.psi - PI).abs() < 1e-15);

        let l = lemma12_params(0.0, 0.0, 0.0, 0.0, 3.0).unwrap();
        assert_eq!(l.psi, 0.0);
    }
}
