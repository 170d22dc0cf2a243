use crate::catalog::v_matrix;
use crate::linalg::{identity, kron, kron_all, tensor_swap, unit, ComplexMatrix};

/// `ν2(φ) = T (V(φ) ⊗ I2)` with `T` the tensor-factor swap.
pub fn nu2(phi2: f64) -> ComplexMatrix {
    tensor_swap(2, 2) * kron(&v_matrix(phi2), &identity(2))
}

/// `W(φ) = (I2 ⊗ V(φ)) S (I2 ⊗ V(φ)*)`, `S = E11 ⊗ I2 + E22 ⊗ σx`.
pub fn w_matrix(phi: f64) -> ComplexMatrix {
    let id = identity(2);
    let sigma_x = unit(2, 0, 1) + unit(2, 1, 0);
    let s = kron(&unit(2, 0, 0), &id) + kron(&unit(2, 1, 1), &sigma_x);
    let v = v_matrix(phi);
    kron(&id, &v) * s * kron(&id, &v.adjoint())
}

/// `ν1(φ1, φ2) = W(φ2) (V(φ1) ⊗ I2)`.
pub fn nu1(phi1: f64, phi2: f64) -> ComplexMatrix {
    w_matrix(phi2) * kron(&v_matrix(phi1), &identity(2))
}

/// Conjugator for the WTCAR envelope at `x = 1/2`: diagonalizes the last
/// tensor factor with `V(φ)` and moves it to the front, so the image is
/// `M ⊕ M` with blocks of size `2^(d−1)`.
pub fn wtcar_swap(d: usize, phi: f64) -> ComplexMatrix {
    let head = 1usize << (d - 1);
    let mut factors = vec![identity(head)];
    factors.push(v_matrix(phi));
    kron_all(factors.iter()) * tensor_swap(head, 2).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{disk_rep, global_rep, wtcar_rep};
    use crate::linalg::{cis, conjugate, diag, distance, from_real_rows, unitarity_defect, ONE};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn conjugators_are_unitary() {
        for (a, b) in [(0.0, 0.0), (1.0, 2.0), (3.5, 6.0)] {
            assert!(unitarity_defect(&nu2(a)) < 1e-12);
            assert!(unitarity_defect(&nu1(a, b)) < 1e-12);
            assert!(unitarity_defect(&w_matrix(b)) < 1e-12);
            assert!(unitarity_defect(&wtcar_swap(3, a)) < 1e-12);
        }
    }

    #[test]
    fn nu2_at_zero() {
        let s = FRAC_1_SQRT_2;
        let want = from_real_rows(
            4,
            4,
            &[
                s, 0.0, -s, 0.0, s, 0.0, s, 0.0, 0.0, s, 0.0, -s, 0.0, s, 0.0, s,
            ],
        );
        assert!(distance(&nu2(0.0), &want) < 1e-15);
    }

    #[test]
    fn nu2_conjugation() {
        let (x1, phi1, phi2) = (0.2, 1.1, 2.3);
        let g = global_rep(0.0, x1, 0.5, 0.0, phi1, phi2).unwrap();
        let got = conjugate(&g.generators[0], &nu2(phi2));
        let want = kron(&identity(2), &disk_rep(x1, phi1).unwrap().generators[0]);
        assert!(distance(&got, &want) < 1e-12);
    }

    #[test]
    fn nu1_conjugation() {
        let (x2, phi1, phi2) = (0.3, 0.7, 2.0);
        let g = global_rep(0.0, 0.5, x2, 0.0, phi1, phi2).unwrap();
        let u = nu1(phi1, phi2);
        let a1 = conjugate(&g.generators[0], &u);
        let z = diag(&[ONE, -ONE]);
        let h = cis(phi1 / 2.0) * FRAC_1_SQRT_2;
        // Block diagonal, with the two blocks carrying ±e^{iφ1/2}.
        let want = kron(&diag(&[-h, h]), &z);
        assert!(distance(&a1, &want) < 1e-12);
        let a2 = conjugate(&g.generators[1], &u);
        let want = kron(&identity(2), &disk_rep(x2, phi2).unwrap().generators[0]);
        assert!(distance(&a2, &want) < 1e-12);
    }

    #[test]
    fn wtcar_swap_blocks() {
        let phi = 0.9;
        let r = wtcar_rep(2, 0.5, 0.5, phi).unwrap();
        let u = wtcar_swap(2, phi);
        for g in &r.generators {
            let m = conjugate(g, &u);
            for i in 0..2 {
                for j in 2..4 {
                    assert!(m[(i, j)].norm() < 1e-12 && m[(j, i)].norm() < 1e-12);
                }
            }
        }
    }
}
