//! Boundary-condition checks for the function-algebra realizations, the
//! two-point criterion, the torus probe and the parameter-space
//! reparameterizations.

mod boundary;
mod conjugators;
mod reparam;
mod torus;
mod two_point;

pub use boundary::{
    check_boundary, check_boundary_with, generator_functions, Algebra, AlgebraId,
    BoundaryCondition, BoundarySpec, ConditionKind, Conjugator, GridReport, GridSpec, Region,
    UNEVALUATED,
};
pub use conjugators::{nu1, nu2, w_matrix, wtcar_swap};
pub use reparam::{eps_map, reparam_iso_check, reparam_y_check, y_map, ROUND_TRIP_TOL};
pub use torus::{torus_fixed_probe, TorusProbe, TORUS_GRID};
pub use two_point::{two_point_check, PairFamily, TwoPoint};
