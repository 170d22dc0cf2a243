//! Acceptance criteria. Each criterion prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use std::process::Command;

use carwb::catalog::{
    angle_axis, default_grid, disk_char, disk_rep, global_rep, lemma12_params, real_axis, wcar_rep,
    wtcar_char, wtcar_rep, Family, Representation,
};
use carwb::linalg::{c64, cis, direct_sum, distance, identity, C64};
use carwb::presentation::{evaluate_sum, parse_sum};
use carwb::report::Report;
use carwb::structure::{
    are_equivalent, commutant, conjugation_residual, find_intertwining_unitary_l12, generated_dim,
};
use carwb::suites::{lemma12_residual, run_suite, Suite, SuiteConfig};
use carwb::verify::{check_boundary, Algebra, BoundarySpec, GridSpec};

const RELATION_TOL: f64 = 1e-10;
const NORM_SLACK: f64 = 1e-12;
const DERIVED_TOL: f64 = 1e-12;
const EQUIV_TOL: f64 = 1e-8;
const GAUGE_TOL: f64 = 1e-10;
const BOUNDARY_TOL: f64 = 1e-8;
const TORUS_ZERO_TOL: f64 = 1e-10;
const TORUS_SEPARATION: f64 = 1e-3;
const PAIRS: usize = 500;

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        summary: summary.into(),
    }
}

fn c1_relation_grids() -> Outcome {
    let (mut worst_res, mut worst_norm, mut points) = (0.0f64, 0.0f64, 0);
    for f in Family::ALL {
        for p in default_grid(f, 5, 4) {
            let rep = p.build().expect("grid point builds");
            worst_res = worst_res.max(rep.residual().unwrap_or(f64::INFINITY));
            worst_norm = worst_norm.max(rep.max_generator_norm());
            points += 1;
        }
    }
    outcome(
        worst_res <= RELATION_TOL && worst_norm <= 1.0 + NORM_SLACK,
        format!("{points} points, max residual {worst_res:.2e}, max norm {worst_norm:.15}"),
    )
}

fn derived_residual(rep: &Representation, d: usize, mu: f64) -> f64 {
    let mut worst: f64 = 0.0;
    let n = rep.dim();
    for i in 1..=d {
        if i < d {
            let t = parse_sum(&format!("a{i} a{i}"), d).unwrap();
            worst = worst.max(carwb::linalg::op_norm(&evaluate_sum(
                &t,
                &rep.generators,
                n,
            )));
        }
        for j in i + 1..=d {
            let t = parse_sum(&format!("a{j} a{i} + {mu} a{i} a{j}"), d).unwrap();
            worst = worst.max(carwb::linalg::op_norm(&evaluate_sum(
                &t,
                &rep.generators,
                n,
            )));
        }
    }
    worst
}

fn c2_derived_wtcar() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut reps = 0;
    for d in 1..=3 {
        for mu in [0.3, 0.7] {
            for x in real_axis(0.0, 0.5, 5) {
                for phi in angle_axis(4) {
                    worst = worst.max(derived_residual(&wtcar_rep(d, mu, x, phi).unwrap(), d, mu));
                    reps += 1;
                }
            }
            for phi in angle_axis(4) {
                worst = worst.max(derived_residual(&wtcar_char(d, mu, phi).unwrap(), d, mu));
                reps += 1;
            }
        }
    }
    outcome(
        worst <= DERIVED_TOL,
        format!("{reps} representations, max residual {worst:.2e}"),
    )
}

fn c3_commutant_table() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |label: String, rep: Representation, want: usize| {
        let got = commutant(&rep).dim();
        if got != want {
            failures.push(format!("{label}: {got} != {want}"));
        }
    };
    for x in [0.05, 0.2, 0.37, 0.49] {
        for phi in angle_axis(4) {
            check(format!("disk({x},{phi})"), disk_rep(x, phi).unwrap(), 1);
        }
    }
    for phi in angle_axis(8) {
        check(format!("disk(0.5,{phi})"), disk_rep(0.5, phi).unwrap(), 2);
    }
    for (y, x1, x2) in [
        (c64(0.5, 0.0), 0.1, 0.2),
        (cis(1.0) * 0.3, 0.2, 0.4),
        (c64(0.0, -0.9), 0.01, 0.1),
    ] {
        for phi in angle_axis(3) {
            check(
                format!("wcar({y},{x1},{x2})"),
                wcar_rep(y, x1, x2, phi, 2.0 * phi).unwrap(),
                1,
            );
        }
    }
    let mut global_points = 0;
    for r1 in real_axis(0.0, 1.0, 5) {
        for x2 in real_axis(0.0, 0.5, 5) {
            for phi in angle_axis(4) {
                let z = lemma12_params(r1, x2, phi, 0.7, 1.9).unwrap().z;
                if z.norm() < 0.5 - 1e-6 {
                    global_points += 1;
                    check(
                        format!("global({r1},1/2,{x2},{phi})"),
                        global_rep(r1, 0.5, x2, phi, 0.7, 1.9).unwrap(),
                        2,
                    );
                }
            }
        }
    }
    for d in 1..=3 {
        for x in [0.1, 0.25, 0.4] {
            check(
                format!("wtcar({d},{x})"),
                wtcar_rep(d, 0.5, x, 1.3).unwrap(),
                1,
            );
        }
    }
    outcome(
        failures.is_empty() && global_points > 0,
        if failures.is_empty() {
            format!("all dimensions match ({global_points} global points with |z| < 1/2)")
        } else {
            failures.join("; ")
        },
    )
}

fn sum_rep(a: &Representation, b: &Representation) -> Representation {
    Representation::custom(
        a.generators
            .iter()
            .zip(&b.generators)
            .map(|(x, y)| direct_sum(&[x, y]))
            .collect(),
    )
    .unwrap()
}

fn equivalence_residual(p: &Representation, q: &Representation) -> f64 {
    match are_equivalent(p, q).unwrap() {
        Some(u) => conjugation_residual(&u, p, q),
        None => f64::INFINITY,
    }
}

fn c4_decompositions() -> Outcome {
    let mut worst: f64 = 0.0;
    for phi in angle_axis(8) {
        let pair = sum_rep(
            &disk_char(phi / 2.0),
            &disk_char(phi / 2.0 + std::f64::consts::PI),
        );
        worst = worst.max(equivalence_residual(&disk_rep(0.5, phi).unwrap(), &pair));
        for d in 1..=3 {
            let pair = sum_rep(
                &wtcar_char(d, 0.5, phi / 2.0).unwrap(),
                &wtcar_char(d, 0.5, phi / 2.0 + std::f64::consts::PI).unwrap(),
            );
            worst = worst.max(equivalence_residual(
                &wtcar_rep(d, 0.5, 0.5, phi).unwrap(),
                &pair,
            ));
        }
    }
    outcome(
        worst <= EQUIV_TOL,
        format!("8 angles, disk and wtcar d=1..3, max residual {worst:.2e}"),
    )
}

fn c5_lemma12() -> Outcome {
    let ang = angle_axis(4);
    let mut worst: f64 = 0.0;
    let mut gauge: f64 = 0.0;
    let mut points = 0;
    for r1 in real_axis(0.01, 1.0, 5) {
        for x2 in real_axis(0.0, 0.5, 5) {
            for &phi in &ang {
                for &phi1 in &ang {
                    for &phi2 in &ang {
                        worst = worst.max(lemma12_residual(r1, x2, phi, phi1, phi2));
                        points += 1;
                    }
                }
            }
        }
    }
    for x2 in real_axis(0.0, 0.5, 5) {
        for &phi in &ang {
            for &phi1 in &ang {
                for &phi2 in &ang {
                    let u = find_intertwining_unitary_l12(0.0, x2, phi, phi1, phi2).unwrap();
                    gauge = gauge.max(distance(&u, &identity(4)));
                }
            }
        }
    }
    outcome(
        worst <= EQUIV_TOL && gauge <= GAUGE_TOL,
        format!("{points} points, max residual {worst:.2e}, gauge at r1=0 {gauge:.2e}"),
    )
}

fn c6_boundary() -> Outcome {
    let algebras = [
        Algebra::A0Disk,
        Algebra::EMinus1Y { y: c64(0.3, 0.0) },
        Algebra::EMinus1Y { y: cis(1.0) * 0.5 },
        Algebra::EMinus1Y { y: c64(0.9, 0.0) },
        Algebra::EMinus10,
        Algebra::EEps { eps: 0.2 },
        Algebra::EEps { eps: 0.5 },
        Algebra::EMinus1,
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for a in algebras {
        let spec = BoundarySpec::new(a).unwrap();
        let r = check_boundary(
            &spec,
            GridSpec {
                n_real: 5,
                n_angle: 4,
            },
        )
        .unwrap();
        pass &= r.max_violation <= BOUNDARY_TOL;
        parts.push(format!("{} {:.1e}", a.id(), r.max_violation));
    }
    outcome(pass, parts.join(", "))
}

fn c7_two_point() -> Outcome {
    let cfg = SuiteConfig {
        pairs: PAIRS,
        y: c64(0.5, 0.0),
        ..SuiteConfig::default()
    };
    let mut parts = Vec::new();
    let mut pass = true;
    for s in ["sw:DISK2", "sw:WCAR", "sw:WCARZ"] {
        let rows = run_suite(s.parse().unwrap(), &cfg).unwrap();
        let failures = rows.iter().filter(|r| !r.pass).count();
        let total = rows.last().unwrap();
        pass &= failures == 0 && total.value == 0.0;
        parts.push(format!("{s} {} mismatches of {PAIRS}", total.value));
    }
    outcome(pass, parts.join(", "))
}

fn c8_torus() -> Outcome {
    let cfg = SuiteConfig {
        y: c64(0.5, 0.0),
        ..SuiteConfig::default()
    };
    let rows = run_suite(Suite::Torus, &cfg).unwrap();
    let zero: Vec<f64> = rows
        .iter()
        .filter(|r| r.check == "torus.y0.commutator")
        .map(|r| r.value)
        .collect();
    let nonzero: Vec<f64> = rows
        .iter()
        .filter(|r| r.check == "torus.y.commutator")
        .map(|r| r.value)
        .collect();
    let max_zero = zero.iter().copied().fold(0.0, f64::max);
    let min_nonzero = nonzero.iter().copied().fold(f64::INFINITY, f64::min);
    outcome(
        zero.len() == 50
            && nonzero.len() == 50
            && max_zero <= TORUS_ZERO_TOL
            && min_nonzero >= TORUS_SEPARATION,
        format!("y=0 max {max_zero:.2e}, y=0.5 min {min_nonzero:.3e}"),
    )
}

fn c9_generated_dims() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |label: &str, got: usize, want: usize| {
        if got != want {
            failures.push(format!("{label}: {got} != {want}"));
        }
    };
    for x in [0.1, 0.3] {
        check(
            "disk interior",
            generated_dim(&disk_rep(x, 0.8).unwrap(), &[0]),
            4,
        );
    }
    let w = wtcar_rep(2, 0.5, 0.2, 0.8).unwrap();
    check("wtcar d=2", generated_dim(&w, &[0, 1]), 16);
    check("wtcar d=2 subset {1}", generated_dim(&w, &[0]), 4);
    for theta in angle_axis(4) {
        check(
            "wcar |y|=1",
            generated_dim(&wcar_rep(cis(theta), 0.0, 0.0, 0.0, 0.0).unwrap(), &[0, 1]),
            4,
        );
    }
    for d in 1..=3 {
        let all: Vec<usize> = (0..d).collect();
        let dims: Vec<(usize, usize)> = [0.2, 0.8]
            .iter()
            .map(|&mu| {
                let r = wtcar_rep(d, mu, 0.3, 1.1).unwrap();
                (generated_dim(&r, &all), generated_dim(&r, &[0]))
            })
            .collect();
        check(
            &format!("mu-independence d={d} (full)"),
            dims[0].0,
            dims[1].0,
        );
        check(
            &format!("mu-independence d={d} (subset)"),
            dims[0].1,
            dims[1].1,
        );
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "all dimensions match".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_carwb"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn c10_cli() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut failures = Vec::new();

    std::fs::write(
        path("a.txt"),
        "matrix a1 2 2\n0 0\n1 0\n\nmatrix a2 2 2\n0 i\n0 0\n",
    )
    .unwrap();
    let (code, out, _) = cli(&["classify", &path("a.txt"), "--format", "structured"]);
    let r = Report::from_json(&out).unwrap();
    let detail = |check: &str| {
        r.results
            .iter()
            .find(|x| x.check == check)
            .and_then(|x| x.detail.clone())
    };
    let y_holds = r
        .results
        .iter()
        .any(|x| x.check.starts_with("preset.WCAR_Y") && x.pass);
    if !(code == 0
        && y_holds
        && detail("central_value").as_deref() == Some("y = (0+1i)")
        && detail("irreducible").as_deref() == Some("irreducible")
        && detail("family").as_deref() == Some("WCAR_A"))
    {
        failures.push(format!("case a: {out}"));
    }

    let (_, disk, _) = cli(&["construct", "--family", "disk", "--x", "0.5", "--phi", "0"]);
    std::fs::write(path("d.txt"), disk).unwrap();
    let (code, out, _) = cli(&["classify", &path("d.txt"), "--format", "structured"]);
    let r = Report::from_json(&out).unwrap();
    let chars: Vec<C64> = r
        .results
        .iter()
        .filter(|x| x.check.starts_with("block"))
        .filter_map(|x| x.point.clone())
        .filter_map(|p| {
            p.strip_prefix("DISK1(phi=")
                .and_then(|s| s.strip_suffix(')'))
                .map(str::to_string)
        })
        .map(|phi| cis(phi.parse().unwrap()) * std::f64::consts::FRAC_1_SQRT_2)
        .collect();
    let reducible = r
        .results
        .iter()
        .any(|x| x.check == "irreducible" && x.detail.as_deref() == Some("reducible"));
    let plus = chars
        .iter()
        .any(|z| (z - c64(0.5f64.sqrt(), 0.0)).norm() < 1e-10);
    let minus = chars
        .iter()
        .any(|z| (z + c64(0.5f64.sqrt(), 0.0)).norm() < 1e-10);
    if !(code == 0 && reducible && chars.len() == 2 && plus && minus) {
        failures.push(format!("disk 1/2: {out}"));
    }

    std::fs::write(path("i.txt"), "matrix a1 2 2\n1 0\n0 1\n").unwrap();
    let (code, out, _) = cli(&["classify", &path("i.txt"), "--format", "structured"]);
    let r = Report::from_json(&out).unwrap();
    let residuals: Vec<f64> = r
        .results
        .iter()
        .filter(|x| x.check.starts_with("preset."))
        .map(|x| x.value)
        .collect();
    let unclassified = detail_of(&r, "family").as_deref() == Some("unclassified");
    if !(code == 0
        && !residuals.is_empty()
        && residuals.iter().all(|v| (v - 1.0).abs() < 1e-12)
        && unclassified)
    {
        failures.push(format!("identity: {out}"));
    }

    let codes = [
        (cli(&["verify", "--suite", "boundary:A0_DISK"]).0, 0),
        (cli(&["construct", "--family", "disk", "--x", "0.7"]).0, 2),
        (cli(&["verify", "--suite", "boundary:NOPE"]).0, 2),
        (cli(&["classify", &path("missing.txt")]).0, 2),
        (
            cli(&["verify", "--suite", "boundary:A0_DISK", "--tol", "1e-300"]).0,
            1,
        ),
    ];
    for (k, (got, want)) in codes.iter().enumerate() {
        if got != want {
            failures.push(format!("exit code case {k}: {got} != {want}"));
        }
    }

    let (_, first, _) = cli(&[
        "verify",
        "--suite",
        "lemma12",
        "--grid",
        "3",
        "--format",
        "structured",
        "--out",
        &path("r.json"),
    ]);
    let _ = first;
    let (_, again, _) = cli(&["report", &path("r.json"), "--format", "structured"]);
    let original = std::fs::read_to_string(path("r.json")).unwrap();
    if again != original || original.is_empty() {
        failures.push("report round trip differs".into());
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "classify examples, exit codes and report round trip".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn detail_of(r: &Report, check: &str) -> Option<String> {
    r.results
        .iter()
        .find(|x| x.check == check)
        .and_then(|x| x.detail.clone())
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("relation grids", c1_relation_grids),
        ("derived WTCAR relations", c2_derived_wtcar),
        ("commutant dimension table", c3_commutant_table),
        ("decomposition identities", c4_decompositions),
        ("intertwining unitary grid", c5_lemma12),
        ("boundary suites", c6_boundary),
        ("two-point criterion", c7_two_point),
        ("torus separation", c8_torus),
        ("generated-algebra dimensions", c9_generated_dims),
        ("CLI contract", c10_cli),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!(
            "criterion {:>2} {}: {} ({})",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.summary
        );
        if !o.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
