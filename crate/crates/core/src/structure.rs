//! Intertwiners, commutants, equivalence and decomposition of finite
//! dimensional *-representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{global_rep, lemma12_params, Representation};
use crate::error::{Error, Result};
use crate::linalg::{
    c64, cluster_sorted, conjugate, direct_sum, distance, herm_eigen, identity, kron,
    null_space_scaled, op_norm, polar, singular_values, trace_inner, zeros, ComplexMatrix,
    LinearSubspace, C64, ONE, RANK_TOL,
};
use crate::presentation::{evaluate_sum, Term};

/// Seed of the generator used wherever a random element is needed.
pub const SEED: u64 = 0x5EED;

/// Residual accepted for a computed unitary equivalence.
pub const EQUIVALENCE_TOL: f64 = 1e-8;

/// Eigenvalue clustering tolerance for decompositions.
pub const BLOCK_TOL: f64 = 1e-8;

/// Tolerance of [`central_value`].
pub const CENTRAL_TOL: f64 = 1e-9;

fn check_compatible(p1: &Representation, p2: &Representation) -> Result<()> {
    if p1.generators.len() != p2.generators.len() {
        return Err(Error::ShapeMismatch(format!(
            "representations have {} and {} generators",
            p1.generators.len(),
            p2.generators.len()
        )));
    }
    Ok(())
}

/// Orthonormal basis of `{C : π1(g)C = Cπ2(g), π1(g)*C = Cπ2(g)*}`, as
/// `n1 x n2` matrices.
pub fn intertwiners(p1: &Representation, p2: &Representation) -> Result<LinearSubspace> {
    check_compatible(p1, p2)?;
    let (n1, n2) = (p1.dim(), p2.dim());
    let k = n1 * n2;
    let i1 = identity(n1);
    let i2 = identity(n2);
    let mut blocks = Vec::with_capacity(4 * p1.generators.len());
    for (g1, g2) in p1.generators.iter().zip(&p2.generators) {
        blocks.push(kron(&i2, g1) - kron(&g2.transpose(), &i1));
        blocks.push(kron(&i2, &g1.adjoint()) - kron(&g2.adjoint().transpose(), &i1));
    }
    let mut l = zeros(blocks.len() * k, k);
    for (b, m) in blocks.iter().enumerate() {
        l.view_mut((b * k, 0), (k, k)).copy_from(m);
    }
    // Same null space, much smaller SVD.
    let reduced = if l.nrows() > k { l.qr().r() } else { l };
    let scale = p1
        .generators
        .iter()
        .chain(&p2.generators)
        .map(op_norm)
        .fold(0.0, f64::max);
    Ok(null_space_scaled(&reduced, RANK_TOL, scale).reshape(n1, n2))
}

pub fn commutant(p: &Representation) -> LinearSubspace {
    intertwiners(p, p).expect("a representation is compatible with itself")
}

pub fn is_irreducible(p: &Representation) -> bool {
    commutant(p).dim() == 1
}

/// Residual `max_g ‖U* π1(g) U − π2(g)‖`.
pub fn conjugation_residual(u: &ComplexMatrix, p1: &Representation, p2: &Representation) -> f64 {
    p1.generators
        .iter()
        .zip(&p2.generators)
        .map(|(g1, g2)| distance(&conjugate(g1, u), g2))
        .fold(0.0, f64::max)
}

fn is_invertible(c: &ComplexMatrix) -> bool {
    let s = singular_values(c);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) => hi > 0.0 && lo > RANK_TOL * hi,
        _ => false,
    }
}

/// Rotates `c` so that its largest-modulus entry is real and positive.
fn phase_fix(c: &ComplexMatrix) -> ComplexMatrix {
    let mut best = c64(0.0, 0.0);
    for z in c.iter() {
        if z.norm() > best.norm() + 1e-12 {
            best = *z;
        }
    }
    if best.norm() == 0.0 {
        return c.clone();
    }
    c * (best.conj() / best.norm())
}

/// A unitary `U` with `U* π1(g) U = π2(g)` for every generator, if one
/// exists.
pub fn are_equivalent(p1: &Representation, p2: &Representation) -> Result<Option<ComplexMatrix>> {
    check_compatible(p1, p2)?;
    if p1.dim() != p2.dim() {
        return Ok(None);
    }
    let space = intertwiners(p1, p2)?;
    if space.dim() == 0 {
        return Ok(None);
    }
    let mut candidates: Vec<&ComplexMatrix> = space.basis.iter().collect();
    candidates.sort_by(|a, b| op_norm(b).total_cmp(&op_norm(a)));
    let mut chosen = candidates.into_iter().find(|c| is_invertible(c)).cloned();
    if chosen.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..4 {
            let mut c = zeros(p1.dim(), p2.dim());
            for b in &space.basis {
                c += b * c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
            if is_invertible(&c) {
                chosen = Some(c);
                break;
            }
        }
    }
    let Some(c) = chosen else {
        return Ok(None);
    };
    let (u, _) = polar(&phase_fix(&c))?;
    if conjugation_residual(&u, p1, p2) <= EQUIVALENCE_TOL {
        Ok(Some(u))
    } else {
        Ok(None)
    }
}

/// Result of [`decompose`].
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    /// Irreducible blocks with multiplicities, in the order they appear
    /// along the diagonal.
    pub blocks: Vec<(Representation, usize)>,
    /// Unitary `W` such that `W* π(g) W` is the block-diagonal sum.
    pub change_of_basis: ComplexMatrix,
    pub residual: f64,
}

impl DecompositionReport {
    /// Block dimensions with multiplicity, along the diagonal.
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .flat_map(|(b, m)| std::iter::repeat_n(b.dim(), *m))
            .collect()
    }

    /// The block-diagonal image of generator `g`.
    pub fn assembled(&self, g: usize) -> ComplexMatrix {
        let mats: Vec<&ComplexMatrix> = self
            .blocks
            .iter()
            .flat_map(|(b, m)| std::iter::repeat_n(&b.generators[g], *m))
            .collect();
        direct_sum(&mats)
    }
}

fn restrict(p: &Representation, q: &ComplexMatrix) -> Representation {
    Representation {
        generators: p.generators.iter().map(|g| q.adjoint() * g * q).collect(),
        source: None,
        presentation: p.presentation.clone(),
    }
}

/// Decomposes into irreducibles via spectral projections of a random
/// self-adjoint commutant element drawn with the default seed.
pub fn decompose(p: &Representation) -> DecompositionReport {
    decompose_with_seed(p, SEED)
}

pub fn decompose_with_seed(p: &Representation, seed: u64) -> DecompositionReport {
    let n = p.dim();
    let comm = commutant(p);
    if comm.dim() <= 1 {
        let mut block = p.clone();
        block.source = p.source;
        return DecompositionReport {
            blocks: vec![(block, 1)],
            change_of_basis: identity(n),
            residual: 0.0,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = zeros(n, n);
    for b in &comm.basis {
        x += b * c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    let mut h = &x + x.adjoint();
    let scale = op_norm(&h);
    if scale > 0.0 {
        h /= c64(scale, 0.0);
    }
    let (vals, vecs) = herm_eigen(&h).expect("X + X* is Hermitian");
    let spaces: Vec<ComplexMatrix> = cluster_sorted(&vals, BLOCK_TOL)
        .into_iter()
        .map(|r| vecs.columns(r.start, r.len()).into_owned())
        .collect();

    // Group equivalent blocks; each copy is rotated onto its representative.
    let mut groups: Vec<(Representation, Vec<ComplexMatrix>)> = Vec::new();
    for q in spaces {
        let block = restrict(p, &q);
        let mut placed = false;
        for (rep, members) in groups.iter_mut() {
            if rep.dim() != block.dim() {
                continue;
            }
            if let Ok(Some(u)) = are_equivalent(rep, &block) {
                members.push(&q * u.adjoint());
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push((block, vec![q]));
        }
    }

    let mut w = zeros(n, n);
    let mut col = 0;
    for (_, members) in &groups {
        for q in members {
            w.view_mut((0, col), (n, q.ncols())).copy_from(q);
            col += q.ncols();
        }
    }
    let blocks: Vec<(Representation, usize)> =
        groups.into_iter().map(|(r, m)| (r, m.len())).collect();
    let mut report = DecompositionReport {
        blocks,
        change_of_basis: w,
        residual: 0.0,
    };
    report.residual = (0..p.generators.len())
        .map(|g| {
            distance(
                &conjugate(&p.generators[g], &report.change_of_basis),
                &report.assembled(g),
            )
        })
        .fold(0.0, f64::max);
    report
}

/// Dimension of the unital *-algebra generated by the generators in
/// `subset` (zero-based indices).
pub fn generated_dim(p: &Representation, subset: &[usize]) -> usize {
    let n = p.dim();
    let mut letters: Vec<ComplexMatrix> = Vec::new();
    for &i in subset {
        if let Some(g) = p.generators.get(i) {
            letters.push(g.clone());
            letters.push(g.adjoint());
        }
    }
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    let mut frontier = Vec::new();
    if let Some(v) = orthogonalize(&identity(n), &basis) {
        basis.push(v.clone());
        frontier.push(v);
    }
    let cutoff = 2 * n * n;
    for _ in 0..cutoff {
        if frontier.is_empty() || basis.len() == n * n {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                if let Some(v) = orthogonalize(&(w * l), &basis) {
                    basis.push(v.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    basis.len()
}

/// Normalized component of `m` orthogonal to the orthonormal `basis`, if
/// it is not negligible.
fn orthogonalize(m: &ComplexMatrix, basis: &[ComplexMatrix]) -> Option<ComplexMatrix> {
    let norm0 = m.norm();
    if norm0 < 1e-14 {
        return None;
    }
    let mut v = m.clone();
    for _ in 0..2 {
        for b in basis {
            let c = trace_inner(b, &v);
            v -= b * c;
        }
    }
    let norm = v.norm();
    if norm > 1e-8 * norm0 {
        Some(v / c64(norm, 0.0))
    } else {
        None
    }
}

/// `λ` when `Σ terms` evaluates to `λ I` within [`CENTRAL_TOL`].
pub fn central_value(p: &Representation, terms: &[Term]) -> Option<C64> {
    let n = p.dim();
    if n == 0
        || terms
            .iter()
            .any(|t| t.word.max_index().is_some_and(|i| i >= p.generators.len()))
    {
        return None;
    }
    let e = evaluate_sum(terms, &p.generators, n);
    let lambda = e.trace() / c64(n as f64, 0.0);
    (distance(&e, &(identity(n) * lambda)) <= CENTRAL_TOL).then_some(lambda)
}

/// The unitary `U` with `U* π U = π̃`, where `π` is the global family at
/// `(r1, 1/2, x2, φ, φ1, φ2)` and `π̃` the one at `(0, 1/2, t, 0, φ1, ψ)`.
pub fn find_intertwining_unitary_l12(
    r1: f64,
    x2: f64,
    phi: f64,
    phi1: f64,
    phi2: f64,
) -> Result<ComplexMatrix> {
    let l = lemma12_params(r1, x2, phi, phi1, phi2)?;
    let src = global_rep(r1, 0.5, x2, phi, phi1, phi2)?;
    let dst = global_rep(0.0, 0.5, l.t, 0.0, phi1, l.psi)?;
    let same = src
        .generators
        .iter()
        .zip(&dst.generators)
        .all(|(a, b)| distance(a, b) <= 1e-12);
    if same {
        return Ok(identity(4));
    }
    are_equivalent(&src, &dst)?.ok_or_else(|| {
        Error::NoIntertwiner(format!(
            "r1={r1}, x2={x2}, phi={phi}, phi1={phi1}, phi2={phi2} (t={}, psi={})",
            l.t, l.psi
        ))
    })
}

/// `a1 a2 + a2 a1`.
pub fn anticommutator_terms() -> Vec<Term> {
    use crate::presentation::StarWord;
    vec![
        Term::new(ONE, StarWord::new(vec![(0, false), (1, false)])),
        Term::new(ONE, StarWord::new(vec![(1, false), (0, false)])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        disk_char, disk_rep, v_matrix, wcar_rep, wcar_zero_rep, wtcar_char, wtcar_rep,
    };
    use crate::linalg::{cis, unitarity_defect};
    use crate::presentation::parse_sum;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn sum(p: &Representation, q: &Representation) -> Representation {
        let gens = p
            .generators
            .iter()
            .zip(&q.generators)
            .map(|(a, b)| direct_sum(&[a, b]))
            .collect();
        Representation::custom(gens).unwrap()
    }

    #[test]
    fn intertwiner_examples() {
        let a = disk_rep(0.25, 0.0).unwrap();
        assert_eq!(intertwiners(&a, &a).unwrap().dim(), 1);
        let b = disk_rep(0.0, 0.0).unwrap();
        let c = disk_rep(0.0, 2.0).unwrap();
        assert_eq!(intertwiners(&b, &c).unwrap().dim(), 1);
        let d = disk_rep(0.1, 0.0).unwrap();
        let e = disk_rep(0.2, 0.0).unwrap();
        assert_eq!(intertwiners(&d, &e).unwrap().dim(), 0);
        let w = wcar_rep(c64(0.3, 0.0), 0.1, 0.2, 1.0, 2.0).unwrap();
        assert!(matches!(intertwiners(&a, &w), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant(&disk_rep(0.5, 1.0).unwrap()).dim(), 2);
        assert_eq!(
            commutant(&wcar_rep(c64(0.3, 0.0), 0.1, 0.2, 1.0, 2.0).unwrap()).dim(),
            1
        );
        let l = lemma12_params(0.5, 0.3, 1.0, 2.0, 3.0).unwrap();
        assert!(l.z.norm() < 0.5);
        assert_eq!(
            commutant(&global_rep(0.5, 0.5, 0.3, 1.0, 2.0, 3.0).unwrap()).dim(),
            2
        );
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&disk_rep(0.3, 1.0).unwrap()));
        assert!(!is_irreducible(&disk_rep(0.5, 0.0).unwrap()));
        assert!(is_irreducible(&wcar_zero_rep(0.5, 0.5, 0.4, 1.3).unwrap()));
    }

    #[test]
    fn equivalence_examples() {
        let u = are_equivalent(&disk_rep(0.0, 0.3).unwrap(), &disk_rep(0.0, 2.0).unwrap())
            .unwrap()
            .unwrap();
        assert!(distance(&u, &identity(2)) < 1e-10);

        let phi = 1.2;
        let half = disk_rep(0.5, phi).unwrap();
        let chars = sum(&disk_char(phi / 2.0), &disk_char(phi / 2.0 + PI));
        let u = are_equivalent(&half, &chars).unwrap().unwrap();
        assert!(unitarity_defect(&u) < 1e-12);
        assert!(conjugation_residual(&u, &half, &chars) < 1e-10);
        // Unique up to the diagonal commutant of the target.
        let d = v_matrix(phi).adjoint() * &u;
        assert!(d[(0, 1)].norm() < 1e-10 && d[(1, 0)].norm() < 1e-10);

        assert!(
            are_equivalent(&disk_rep(0.1, 0.0).unwrap(), &disk_rep(0.3, 0.0).unwrap())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn decompose_half_disk() {
        let r = decompose(&disk_rep(0.5, 0.0).unwrap());
        assert_eq!(r.block_dims(), vec![1, 1]);
        let mut vals: Vec<f64> = r
            .blocks
            .iter()
            .map(|(b, _)| b.generators[0][(0, 0)].re)
            .collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + FRAC_1_SQRT_2).abs() < 1e-10);
        assert!((vals[1] - FRAC_1_SQRT_2).abs() < 1e-10);
        assert!(r.residual < 1e-10);
        assert!(unitarity_defect(&r.change_of_basis) < 1e-10);
    }

    #[test]
    fn decompose_wtcar_half() {
        let r = decompose(&wtcar_rep(2, 0.5, 0.5, 0.0).unwrap());
        assert_eq!(r.block_dims(), vec![2, 2]);
        assert!(r.residual < 1e-8);
        let c0 = wtcar_char(2, 0.5, 0.0).unwrap();
        let cpi = wtcar_char(2, 0.5, PI).unwrap();
        let hits = |c: &Representation| {
            r.blocks
                .iter()
                .filter(|(b, _)| are_equivalent(b, c).unwrap().is_some())
                .count()
        };
        assert_eq!(hits(&c0), 1);
        assert_eq!(hits(&cpi), 1);
    }

    #[test]
    fn decompose_irreducible_is_trivial() {
        let p = disk_rep(0.3, 1.0).unwrap();
        let r = decompose(&p);
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].1, 1);
        assert_eq!(r.change_of_basis, identity(2));
    }

    #[test]
    fn decompose_groups_multiplicity() {
        let p = disk_rep(0.2, 0.7).unwrap();
        let r = decompose(&sum(&p, &p));
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].1, 2);
        assert!(r.residual < 1e-8);
    }

    #[test]
    fn generated_dims() {
        assert_eq!(generated_dim(&disk_rep(0.25, 0.0).unwrap(), &[0]), 4);
        let w = wtcar_rep(2, 0.5, 0.25, 1.0).unwrap();
        assert_eq!(generated_dim(&w, &[0]), 4);
        assert_eq!(generated_dim(&w, &[0, 1]), 16);
        assert_eq!(
            generated_dim(&wcar_rep(ONE, 0.0, 0.0, 0.0, 0.0).unwrap(), &[0, 1]),
            4
        );
        assert_eq!(generated_dim(&disk_rep(0.5, 0.0).unwrap(), &[0]), 2);
    }

    #[test]
    fn central_values() {
        let w = wcar_rep(c64(0.3, 0.0), 0.1, 0.2, 1.0, 2.0).unwrap();
        let v = central_value(&w, &anticommutator_terms()).unwrap();
        assert!((v - c64(0.3, 0.0)).norm() < 1e-12);
        let phi1 = 0.9;
        let sq = parse_sum("a1 a1", 2).unwrap();
        let g = global_rep(0.0, 0.5, 0.3, 0.0, phi1, 2.0).unwrap();
        let v = central_value(&g, &sq).unwrap();
        assert!((v - cis(phi1) / 2.0).norm() < 1e-12);
        // The two-dimensional blocks carry half the angle.
        let z = wcar_zero_rep(0.5, 0.3, phi1 / 2.0, 2.0).unwrap();
        let v = central_value(&z, &sq).unwrap();
        assert!((v - cis(phi1) / 2.0).norm() < 1e-12);
        let d = disk_rep(0.25, 0.0).unwrap();
        assert!(central_value(&d, &parse_sum("a1", 1).unwrap()).is_none());
    }

    #[test]
    fn lemma12_unitaries() {
        assert_eq!(
            find_intertwining_unitary_l12(0.0, 0.3, 1.0, 2.0, 3.0).unwrap(),
            identity(4)
        );
        for (r1, x2, phi, phi1, phi2) in [(1.0, 0.2, 0.0, 0.0, 0.0), (0.5, 0.3, 1.0, 2.0, 3.0)] {
            let u = find_intertwining_unitary_l12(r1, x2, phi, phi1, phi2).unwrap();
            let l = lemma12_params(r1, x2, phi, phi1, phi2).unwrap();
            let src = global_rep(r1, 0.5, x2, phi, phi1, phi2).unwrap();
            let dst = global_rep(0.0, 0.5, l.t, 0.0, phi1, l.psi).unwrap();
            assert!(unitarity_defect(&u) < 1e-10);
            assert!(conjugation_residual(&u, &src, &dst) <= 1e-8);
        }
        let l = lemma12_params(1.0, 0.2, 0.0, 0.0, 0.0).unwrap();
        assert!((l.t - 0.5).abs() < 1e-7 && (l.psi - PI).abs() < 1e-12);
    }
}
