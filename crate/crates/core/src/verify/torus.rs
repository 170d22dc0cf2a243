use std::f64::consts::TAU;

use crate::catalog::Representation;
use crate::error::{Error, Result};
use crate::linalg::{c64, cis, op_norm, zeros, ComplexMatrix};

/// Points per torus axis.
pub const TORUS_GRID: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusProbe {
    pub avg_residual: f64,
    pub commutator_norm: f64,
}

/// Averages `ρ_λ(a1 a1* a2 a2*)` over a uniform grid on the torus, where
/// `ρ_λ(a_i) = λ_i a_i`, and measures the commutator of `a1 a1*` with
/// `a2 a2*`.
pub fn torus_fixed_probe(p: &Representation) -> Result<TorusProbe> {
    let [a1, a2] = p.generators.as_slice() else {
        return Err(Error::ShapeMismatch(format!(
            "torus probe needs exactly 2 generators, got {}",
            p.generators.len()
        )));
    };
    let p1 = a1 * a1.adjoint();
    let p2 = a2 * a2.adjoint();
    let monomial = &p1 * &p2;
    // The integrand is a product of a λ1-term and a λ2-term, so the grid
    // average factors into two one-dimensional averages.
    let n = p.dim();
    let axis_mean = |a: &ComplexMatrix| -> ComplexMatrix {
        let mut acc: ComplexMatrix = zeros(n, n);
        for j in 0..TORUS_GRID {
            let b = a * cis(TAU * j as f64 / TORUS_GRID as f64);
            acc += &b * b.adjoint();
        }
        acc / c64(TORUS_GRID as f64, 0.0)
    };
    let avg = axis_mean(a1) * axis_mean(a2);
    Ok(TorusProbe {
        avg_residual: op_norm(&(avg - &monomial)),
        commutator_norm: op_norm(&(&p1 * &p2 - &p2 * &p1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{disk_rep, wcar_rep, wcar_zero_rep};

    #[test]
    fn zero_y_commutes() {
        let r = torus_fixed_probe(&wcar_zero_rep(0.2, 0.3, 1.0, 2.0).unwrap()).unwrap();
        assert!(r.commutator_norm <= 1e-12);
        assert!(r.avg_residual <= 1e-10);
    }

    #[test]
    fn nonzero_y_does_not_commute() {
        let r = torus_fixed_probe(&wcar_rep(c64(0.5, 0.0), 0.1, 0.2, 0.0, 0.0).unwrap()).unwrap();
        assert!(r.commutator_norm > 0.01, "{r:?}");
        assert!(r.avg_residual <= 1e-10);
    }

    #[test]
    fn needs_two_generators() {
        assert!(matches!(
            torus_fixed_probe(&disk_rep(0.2, 0.0).unwrap()),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
