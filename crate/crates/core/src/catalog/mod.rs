//! Concrete representation families, parameter points and their
//! canonical forms.

mod families;
mod grid;

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{check_closed, Error, Result};
use crate::linalg::{op_norm, ComplexMatrix, C64};
use crate::presentation::{residual, Presentation};

pub use families::{
    disk_char, disk_rep, global_rep, lemma12_params, v_matrix, wcar_rep, wcar_zero_rep, wtcar_char,
    wtcar_rep, Lemma12,
};
pub use grid::{angle_axis, default_grid, real_axis};

/// Tolerance for the boundary equalities that select a case.
pub const DISPATCH_TOL: f64 = 1e-12;

/// Tolerance for comparing angles modulo 2π.
pub const ANGLE_TOL: f64 = 1e-9;

/// Slack allowed past the ends of a closed parameter interval.
pub(crate) const RANGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Disk2,
    Disk1,
    Wtcar2d,
    Wtcar1d,
    WcarA,
    WcarB1,
    WcarB21,
    WcarB22,
    Wcarz1,
    Wcarz2A,
    Wcarz2B,
    Wcarz3,
    Global,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::Disk2,
        Family::Disk1,
        Family::Wtcar2d,
        Family::Wtcar1d,
        Family::WcarA,
        Family::WcarB1,
        Family::WcarB21,
        Family::WcarB22,
        Family::Wcarz1,
        Family::Wcarz2A,
        Family::Wcarz2B,
        Family::Wcarz3,
        Family::Global,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Disk2 => "DISK2",
            Family::Disk1 => "DISK1",
            Family::Wtcar2d => "WTCAR2d",
            Family::Wtcar1d => "WTCAR1d",
            Family::WcarA => "WCAR_A",
            Family::WcarB1 => "WCAR_B1",
            Family::WcarB21 => "WCAR_B21",
            Family::WcarB22 => "WCAR_B22",
            Family::Wcarz1 => "WCARZ_1",
            Family::Wcarz2A => "WCARZ_2A",
            Family::Wcarz2B => "WCARZ_2B",
            Family::Wcarz3 => "WCARZ_3",
            Family::Global => "GLOBAL",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// A point of one of the parameter domains.
///
/// `Wcar` covers the four cases of the `y ≠ 0` classification; which one
/// applies is decided by [`ParamPoint::family`]. With `y = 0` it behaves
/// like `Wcarz`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamPoint {
    Disk2 {
        x: f64,
        phi: f64,
    },
    Disk1 {
        phi: f64,
    },
    Wtcar2d {
        d: usize,
        mu: f64,
        x: f64,
        phi: f64,
    },
    Wtcar1d {
        d: usize,
        mu: f64,
        phi: f64,
    },
    Wcar {
        y: C64,
        x1: f64,
        x2: f64,
        phi1: f64,
        phi2: f64,
    },
    Wcarz {
        x1: f64,
        x2: f64,
        phi1: f64,
        phi2: f64,
    },
    Global {
        r1: f64,
        x1: f64,
        x2: f64,
        phi: f64,
        phi1: f64,
        phi2: f64,
    },
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= DISPATCH_TOL
}

pub(crate) fn wcarz_family(x1: f64, x2: f64) -> Family {
    match (near(x1, 0.5), near(x2, 0.5)) {
        (false, false) => Family::Wcarz1,
        (true, false) => Family::Wcarz2A,
        (false, true) => Family::Wcarz2B,
        (true, true) => Family::Wcarz3,
    }
}

pub(crate) fn wcar_family(y: C64, x1: f64, x2: f64) -> Family {
    let r = y.norm();
    if r == 0.0 {
        wcarz_family(x1, x2)
    } else if near(r, 1.0) {
        Family::WcarA
    } else if near(x1, (1.0 - r) / 2.0) {
        Family::WcarB1
    } else if near(x2, 0.5) {
        Family::WcarB22
    } else {
        Family::WcarB21
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if TAU - t <= 1e-12 {
        0.0
    } else {
        t
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

impl ParamPoint {
    pub fn family(&self) -> Family {
        match *self {
            ParamPoint::Disk2 { .. } => Family::Disk2,
            ParamPoint::Disk1 { .. } => Family::Disk1,
            ParamPoint::Wtcar2d { .. } => Family::Wtcar2d,
            ParamPoint::Wtcar1d { .. } => Family::Wtcar1d,
            ParamPoint::Wcar { y, x1, x2, .. } => wcar_family(y, x1, x2),
            ParamPoint::Wcarz { x1, x2, .. } => wcarz_family(x1, x2),
            ParamPoint::Global { .. } => Family::Global,
        }
    }

    /// Named real coordinates, in a fixed order.
    pub fn reals(&self) -> Vec<(&'static str, f64)> {
        match *self {
            ParamPoint::Disk2 { x, .. } => vec![("x", x)],
            ParamPoint::Disk1 { .. } => vec![],
            ParamPoint::Wtcar2d { mu, x, .. } => vec![("mu", mu), ("x", x)],
            ParamPoint::Wtcar1d { mu, .. } => vec![("mu", mu)],
            ParamPoint::Wcar { y, x1, x2, .. } => {
                vec![("y.re", y.re), ("y.im", y.im), ("x1", x1), ("x2", x2)]
            }
            ParamPoint::Wcarz { x1, x2, .. } => vec![("x1", x1), ("x2", x2)],
            ParamPoint::Global { r1, x1, x2, .. } => vec![("r1", r1), ("x1", x1), ("x2", x2)],
        }
    }

    /// Named angle coordinates.
    pub fn angles(&self) -> Vec<(&'static str, f64)> {
        match *self {
            ParamPoint::Disk2 { phi, .. } | ParamPoint::Disk1 { phi } => vec![("phi", phi)],
            ParamPoint::Wtcar2d { phi, .. } | ParamPoint::Wtcar1d { phi, .. } => vec![("phi", phi)],
            ParamPoint::Wcar { phi1, phi2, .. } | ParamPoint::Wcarz { phi1, phi2, .. } => {
                vec![("phi1", phi1), ("phi2", phi2)]
            }
            ParamPoint::Global {
                phi, phi1, phi2, ..
            } => vec![("phi", phi), ("phi1", phi1), ("phi2", phi2)],
        }
    }

    /// All named coordinates (reals, then angles, then `d` where present).
    pub fn coordinates(&self) -> Vec<(&'static str, f64)> {
        let mut out = self.reals();
        out.extend(self.angles());
        if let ParamPoint::Wtcar2d { d, .. } | ParamPoint::Wtcar1d { d, .. } = *self {
            out.push(("d", d as f64));
        }
        out
    }

    /// Looks up a coordinate by name. WCAR points also answer `r = |y|`
    /// and `phi = arg y`.
    pub fn coord(&self, name: &str) -> Option<f64> {
        if let ParamPoint::Wcar { y, .. } = *self {
            match name {
                "r" => return Some(y.norm()),
                "phi" => return Some(normalize_angle(y.arg())),
                _ => {}
            }
        }
        self.coordinates()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
    }

    /// Returns a copy with one coordinate replaced. Unknown names leave the
    /// point unchanged.
    pub fn with_coord(&self, name: &str, value: f64) -> ParamPoint {
        let mut p = *self;
        match &mut p {
            ParamPoint::Disk2 { x, phi } => match name {
                "x" => *x = value,
                "phi" => *phi = value,
                _ => {}
            },
            ParamPoint::Disk1 { phi } => {
                if name == "phi" {
                    *phi = value;
                }
            }
            ParamPoint::Wtcar2d { mu, x, phi, .. } => match name {
                "mu" => *mu = value,
                "x" => *x = value,
                "phi" => *phi = value,
                _ => {}
            },
            ParamPoint::Wtcar1d { mu, phi, .. } => match name {
                "mu" => *mu = value,
                "phi" => *phi = value,
                _ => {}
            },
            ParamPoint::Wcar {
                y,
                x1,
                x2,
                phi1,
                phi2,
            } => match name {
                "r" => *y = C64::from_polar(value, y.arg()),
                "phi" => *y = C64::from_polar(y.norm(), value),
                "y.re" => y.re = value,
                "y.im" => y.im = value,
                "x1" => *x1 = value,
                "x2" => *x2 = value,
                "phi1" => *phi1 = value,
                "phi2" => *phi2 = value,
                _ => {}
            },
            ParamPoint::Wcarz { x1, x2, phi1, phi2 } => match name {
                "x1" => *x1 = value,
                "x2" => *x2 = value,
                "phi1" => *phi1 = value,
                "phi2" => *phi2 = value,
                _ => {}
            },
            ParamPoint::Global {
                r1,
                x1,
                x2,
                phi,
                phi1,
                phi2,
            } => match name {
                "r1" => *r1 = value,
                "x1" => *x1 = value,
                "x2" => *x2 = value,
                "phi" => *phi = value,
                "phi1" => *phi1 = value,
                "phi2" => *phi2 = value,
                _ => {}
            },
        }
        p
    }

    /// Checks the point lies in its family's domain.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.angles() {
            if !v.is_finite() {
                return Err(Error::closed(name, 0.0, TAU, v));
            }
        }
        let half = |name, v| check_closed(name, v, 0.0, 0.5, RANGE_SLACK);
        match *self {
            ParamPoint::Disk2 { x, .. } => half("x", x),
            ParamPoint::Disk1 { .. } => Ok(()),
            ParamPoint::Wtcar2d { d, mu, x, .. } => {
                families::check_wtcar(d, mu)?;
                half("x", x)
            }
            ParamPoint::Wtcar1d { d, mu, .. } => families::check_wtcar(d, mu),
            ParamPoint::Wcar { y, x1, x2, .. } => {
                check_closed("|y|", y.norm(), 0.0, 1.0, RANGE_SLACK)?;
                check_closed(
                    "x1",
                    x1,
                    0.0,
                    ((1.0 - y.norm()) / 2.0).max(0.0),
                    RANGE_SLACK,
                )?;
                half("x2", x2)
            }
            ParamPoint::Wcarz { x1, x2, .. } => {
                half("x1", x1)?;
                half("x2", x2)
            }
            ParamPoint::Global { r1, x1, x2, .. } => {
                check_closed("r1", r1, 0.0, 1.0, RANGE_SLACK)?;
                half("x1", x1)?;
                half("x2", x2)
            }
        }
    }

    /// The relation family a representation at this point satisfies.
    pub fn presentation(&self) -> Result<Presentation> {
        use crate::presentation::{preset, Preset};
        match *self {
            ParamPoint::Disk2 { .. } | ParamPoint::Disk1 { .. } => preset(&Preset::DiskNormalized),
            ParamPoint::Wtcar2d { d, mu, .. } | ParamPoint::Wtcar1d { d, mu, .. } => {
                preset(&Preset::Wtcar { d, mu })
            }
            ParamPoint::Wcar { y, .. } => preset(&Preset::WcarY { y: clamp_unit(y) }),
            ParamPoint::Wcarz { .. } => preset(&Preset::WcarY {
                y: C64::new(0.0, 0.0),
            }),
            ParamPoint::Global { .. } => preset(&Preset::WcarY {
                y: clamp_unit(self.central_value().unwrap_or_default()),
            }),
        }
    }

    /// The value of `a1 a2 + a2 a1` for the WCAR families.
    pub fn central_value(&self) -> Option<C64> {
        match *self {
            ParamPoint::Wcar { y, .. } => Some(y),
            ParamPoint::Wcarz { .. } => Some(C64::new(0.0, 0.0)),
            ParamPoint::Global { r1, x1, phi, .. } => {
                Some(C64::from_polar(r1 * (1.0 - 2.0 * x1), phi))
            }
            _ => None,
        }
    }

    /// Builds the representation at this point.
    pub fn build(&self) -> Result<Representation> {
        match *self {
            ParamPoint::Disk2 { x, phi } => disk_rep(x, phi),
            ParamPoint::Disk1 { phi } => Ok(disk_char(phi)),
            ParamPoint::Wtcar2d { d, mu, x, phi } => wtcar_rep(d, mu, x, phi),
            ParamPoint::Wtcar1d { d, mu, phi } => wtcar_char(d, mu, phi),
            ParamPoint::Wcar {
                y,
                x1,
                x2,
                phi1,
                phi2,
            } => wcar_rep(y, x1, x2, phi1, phi2),
            ParamPoint::Wcarz { x1, x2, phi1, phi2 } => wcar_zero_rep(x1, x2, phi1, phi2),
            ParamPoint::Global {
                r1,
                x1,
                x2,
                phi,
                phi1,
                phi2,
            } => global_rep(r1, x1, x2, phi, phi1, phi2),
        }
    }

    /// Compares coordinates, reals at `tol` and angles modulo 2π at
    /// [`ANGLE_TOL`].
    pub fn approx_eq(&self, other: &ParamPoint, tol: f64) -> bool {
        if std::mem::discriminant(self) != std::mem::discriminant(other) {
            return false;
        }
        let dims = |p: &ParamPoint| match *p {
            ParamPoint::Wtcar2d { d, .. } | ParamPoint::Wtcar1d { d, .. } => d,
            _ => 0,
        };
        dims(self) == dims(other)
            && self
                .reals()
                .iter()
                .zip(other.reals())
                .all(|(a, b)| (a.1 - b.1).abs() <= tol)
            && self
                .angles()
                .iter()
                .zip(other.angles())
                .all(|(a, b)| angle_distance(a.1, b.1) <= ANGLE_TOL)
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family())?;
        for (k, (name, v)) in self.coordinates().into_iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, ")")
    }
}

fn clamp_unit(y: C64) -> C64 {
    let r = y.norm();
    if r > 1.0 {
        y / r
    } else {
        y
    }
}

/// Generators together with where they came from and the relations they
/// are asserted to satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub generators: Vec<ComplexMatrix>,
    /// `None` for user-supplied matrices.
    pub source: Option<ParamPoint>,
    pub presentation: Option<Presentation>,
}

impl Representation {
    /// Wraps user-supplied matrices, which must be square of a common size.
    pub fn custom(generators: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::ShapeMismatch(
                "representation needs at least one generator".into(),
            ));
        };
        let n = first.nrows();
        if n == 0 {
            return Err(Error::ShapeMismatch("empty generator matrix".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.nrows() != n || g.ncols() != n {
                return Err(Error::ShapeMismatch(format!(
                    "generator a{} is {}x{}, expected {n}x{n}",
                    k + 1,
                    g.nrows(),
                    g.ncols()
                )));
            }
        }
        Ok(Representation {
            generators,
            source: None,
            presentation: None,
        })
    }

    pub(crate) fn from_point(point: ParamPoint, generators: Vec<ComplexMatrix>) -> Result<Self> {
        Ok(Representation {
            presentation: Some(point.presentation()?),
            source: Some(point),
            generators,
        })
    }

    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, |g| g.nrows())
    }

    /// Residual of the asserted presentation, if there is one.
    pub fn residual(&self) -> Option<f64> {
        let p = self.presentation.as_ref()?;
        residual(p, &self.generators).ok()
    }

    pub fn max_generator_norm(&self) -> f64 {
        self.generators.iter().map(op_norm).fold(0.0, f64::max)
    }
}

/// The deterministic representative of a point's equivalence class.
pub fn canonical_params(p: &ParamPoint) -> Result<ParamPoint> {
    p.validate()?;
    let a = normalize_angle;
    let zero = |v: f64| v.abs() <= DISPATCH_TOL;
    let out = match *p {
        ParamPoint::Disk2 { x, phi } => ParamPoint::Disk2 {
            x,
            phi: if zero(x) { 0.0 } else { a(phi) },
        },
        ParamPoint::Disk1 { phi } => ParamPoint::Disk1 { phi: a(phi) },
        ParamPoint::Wtcar2d { d, mu, x, phi } => ParamPoint::Wtcar2d {
            d,
            mu,
            x,
            phi: if zero(x) { 0.0 } else { a(phi) },
        },
        ParamPoint::Wtcar1d { d, mu, phi } => ParamPoint::Wtcar1d { d, mu, phi: a(phi) },
        ParamPoint::Wcar {
            y,
            x1,
            x2,
            phi1,
            phi2,
        } if y.norm() == 0.0 => {
            let (x1, x2, phi1, phi2) = canonical_wcarz(x1, x2, phi1, phi2);
            ParamPoint::Wcar {
                y,
                x1,
                x2,
                phi1,
                phi2,
            }
        }
        ParamPoint::Wcar {
            y,
            x1,
            mut x2,
            phi1,
            mut phi2,
        } => {
            let mut phi1 = a(phi1);
            phi2 = a(phi2);
            if zero(x1) {
                phi1 = 0.0;
            }
            if zero(x2) {
                phi2 = 0.0;
            }
            if near(x1, (1.0 - y.norm()) / 2.0) {
                x2 = 0.0;
                phi2 = 0.0;
            }
            ParamPoint::Wcar {
                y,
                x1,
                x2,
                phi1,
                phi2,
            }
        }
        ParamPoint::Wcarz { x1, x2, phi1, phi2 } => {
            let (x1, x2, phi1, phi2) = canonical_wcarz(x1, x2, phi1, phi2);
            ParamPoint::Wcarz { x1, x2, phi1, phi2 }
        }
        ParamPoint::Global {
            r1,
            x1,
            mut x2,
            phi,
            phi1,
            phi2,
        } => {
            let (mut phi, mut phi1, mut phi2) = (a(phi), a(phi1), a(phi2));
            if zero(x1) {
                phi1 = 0.0;
            }
            if zero(x2) {
                phi2 = 0.0;
            }
            if zero(r1) {
                phi = 0.0;
            }
            if near(r1, 1.0) {
                x2 = 0.0;
                phi2 = 0.0;
            }
            ParamPoint::Global {
                r1,
                x1,
                x2,
                phi,
                phi1,
                phi2,
            }
        }
    };
    Ok(out)
}

fn canonical_wcarz(x1: f64, x2: f64, phi1: f64, phi2: f64) -> (f64, f64, f64, f64) {
    let zero = |v: f64| v.abs() <= DISPATCH_TOL;
    let mut phi1 = normalize_angle(phi1);
    let mut phi2 = normalize_angle(phi2);
    if zero(x1) {
        phi1 = 0.0;
    }
    if zero(x2) {
        phi2 = 0.0;
    }
    if wcarz_family(x1, x2) == Family::Wcarz3 {
        phi1 = phi1.rem_euclid(PI);
        if PI - phi1 <= 1e-12 {
            phi1 = 0.0;
        }
    }
    (x1, x2, phi1, phi2)
}
