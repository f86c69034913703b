use std::f64::consts::PI;

use timesep::bundle::{
    evaluate_section, holonomy, line_at, orientability, transport_line, Grid, Holonomy,
    PartialSection, Verdict, MIN_TRANSPORT_SAMPLES, TESTED_LOOPS_CAVEAT,
};
use timesep::spacetime::ViolationKind;
use timesep::{load_spec, Error, Execution, Point, SpacetimeSpec};

fn fixture(name: &str) -> SpacetimeSpec {
    let path = format!("{}/../../fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"));
    load_spec(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn schwarzschild_metric_at_r4() {
    let spec = fixture("schwarzschild");
    let g = spec.g_at(&Point([0.0, 4.0, PI / 2.0, 0.0])).unwrap();
    let want = [-0.5, 2.0, 16.0, 16.0];
    for i in 0..4 {
        for j in 0..4 {
            let w = if i == j { want[i] } else { 0.0 };
            assert!((g.entries()[i][j] - w).abs() < 1e-13);
        }
    }
    assert!(matches!(
        spec.g_at(&Point([0.0, 2.0, PI / 2.0, 0.0])),
        Err(Error::ExcludedPoint { .. })
    ));
}

#[test]
fn validate_clean_fixtures() {
    for name in ["minkowski", "schwarzschild", "cone_cylinder"] {
        let report = fixture(name).validate(1000, 7).unwrap();
        assert_eq!(report.samples_evaluated, 1000, "{name}");
        assert!(report.is_clean(), "{name}: {:?}", report.violations.first());
    }
}

#[test]
fn validate_flags_riemannian_g() {
    let report = fixture("broken_riemannian_g").validate(200, 1).unwrap();
    assert_eq!(report.violations.len(), 200);
    assert!(report
        .violations
        .iter()
        .all(|v| v.kind == ViolationKind::WrongSignature && v.metric == "g"));
}

#[test]
fn validate_is_execution_independent() {
    let spec = fixture("schwarzschild");
    let a = spec.validate_with(500, 3, Execution::Sequential).unwrap();
    let b = spec.validate_with(500, 3, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cone_line_turns_with_theta() {
    let spec = fixture("cone_cylinder");
    let at_zero = line_at(&spec, &Point([0.0, 0.0, 0.0, 0.0])).unwrap();
    let at_pi = line_at(&spec, &Point([0.0, 0.0, 0.0, PI])).unwrap();
    for (line, axis) in [(at_zero, 0), (at_pi, 1)] {
        for i in 0..4 {
            let w = if i == axis { 1.0 } else { 0.0 };
            assert!(
                (line.direction[i] - w).abs() < 1e-12,
                "{:?}",
                line.direction
            );
        }
        assert!((line.eigenvalue + 1.0).abs() < 1e-12);
    }
}

#[test]
fn transport_rejects_coarse_sampling() {
    let spec = fixture("cone_cylinder");
    let lp = spec.find_loop("theta-loop").unwrap();
    let err = transport_line(&spec, lp, MIN_TRANSPORT_SAMPLES - 1).unwrap_err();
    assert!(matches!(err, Error::TooFewSamples { .. }));
}

#[test]
fn transport_flips_once_around_cone() {
    let spec = fixture("cone_cylinder");
    let lp = spec.find_loop("theta-loop").unwrap();
    let t = transport_line(&spec, lp, 64).unwrap();
    // canonical sign changes once, where the largest component switches sign
    assert_eq!(t.flips(), 1);
    assert_eq!(t.samples.len(), 65);
    assert!(t.min_alignment > 0.99);
}

#[test]
fn cone_holonomy() {
    let spec = fixture("cone_cylinder");
    let once = spec.find_loop("theta-loop").unwrap();
    let twice = spec.find_loop("theta-loop-twice").unwrap();
    assert_eq!(holonomy(&spec, once, 64).unwrap().holonomy, Holonomy::Flip);
    assert_eq!(
        holonomy(&spec, twice, 64).unwrap().holonomy,
        Holonomy::Trivial
    );
    assert_eq!(
        holonomy(&spec, &once.reversed(), 64).unwrap().holonomy,
        Holonomy::Flip
    );
    let v = orientability(&spec, 64).unwrap();
    assert_eq!(v.verdict, Verdict::NotOrientable);
    assert!(v.warnings().is_empty());
}

#[test]
fn holonomy_stable_under_refinement() {
    for (name, loop_name, want) in [
        ("cone_cylinder", "theta-loop", Holonomy::Flip),
        ("cone_cylinder", "theta-loop-twice", Holonomy::Trivial),
        ("minkowski", "xy-circle", Holonomy::Trivial),
        ("schwarzschild", "phi-loop", Holonomy::Trivial),
        ("schwarzschild", "r-theta-circle", Holonomy::Trivial),
    ] {
        let spec = fixture(name);
        let lp = spec.find_loop(loop_name).unwrap();
        let mut n = 64;
        while n <= 8192 {
            assert_eq!(
                holonomy(&spec, lp, n).unwrap().holonomy,
                want,
                "{loop_name} n={n}"
            );
            n *= 2;
        }
    }
}

#[test]
fn orientable_fixtures_carry_caveat() {
    for name in ["minkowski", "schwarzschild", "cone_cylinder_doubleloop"] {
        let v = orientability(&fixture(name), 64).unwrap();
        assert_eq!(v.verdict, Verdict::OrientableOnTestedLoops, "{name}");
        assert!(v.holonomies.iter().all(|h| h.holonomy == Holonomy::Trivial));
        assert_eq!(v.warnings(), vec![TESTED_LOOPS_CAVEAT.to_string()]);
    }
}

#[test]
fn open_loop_rejected() {
    let mut spec = fixture("minkowski");
    let mut lp = spec.loops[0].clone();
    lp.components[1] = timesep::dsl::parse("s").unwrap();
    spec.loops = vec![lp];
    assert!(matches!(
        orientability(&spec, 64),
        Err(Error::LoopNotClosed { .. })
    ));
}

#[test]
fn cos_theta_section_has_two_zeros() {
    let spec = fixture("cone_cylinder");
    let section = PartialSection::parse(&spec, "cos(theta)").unwrap();
    let grid = Grid::parse(&spec, "theta=0:2*pi:512").unwrap();
    let report = evaluate_section(&spec, &section, &grid).unwrap();
    assert_eq!(report.samples.len(), 512);
    assert_eq!(report.zero_brackets.len(), 2);
    let step = 2.0 * PI / 512.0;
    let mut estimates: Vec<f64> = report.zero_brackets.iter().map(|b| b.estimate).collect();
    estimates.sort_by(f64::total_cmp);
    assert!((estimates[0] - PI / 2.0).abs() <= step);
    assert!((estimates[1] - 3.0 * PI / 2.0).abs() <= step);
}

#[test]
fn cos_theta_section_is_continuous() {
    // the multiplier absorbs the canonical sign switch at 3π/2
    let spec = fixture("cone_cylinder");
    let section = PartialSection::parse(&spec, "cos(theta)").unwrap();
    let grid = Grid::parse(&spec, "theta=0:2*pi:256").unwrap();
    let report = evaluate_section(&spec, &section, &grid).unwrap();
    let n = report.samples.len();
    for k in 0..n {
        let a = report.samples[k].value;
        let b = report.samples[(k + 1) % n].value;
        assert!((a - b).max_abs() < 0.05, "jump at {k}");
    }
}

#[test]
fn section_without_zeros() {
    let spec = fixture("schwarzschild");
    let section = PartialSection::parse(&spec, "r").unwrap();
    let grid = Grid::parse(&spec, "r=3:10:16,theta=0.5:2.5:8").unwrap();
    let report = evaluate_section(&spec, &section, &grid).unwrap();
    assert_eq!(report.samples.len(), 128);
    assert!(report.zero_points.is_empty());
    assert!(report.zero_brackets.is_empty());
}

#[test]
fn section_at_excluded_point_errors() {
    let spec = fixture("schwarzschild");
    let section = PartialSection::parse(&spec, "1").unwrap();
    let grid = Grid::parse(&spec, "r=1:3:4").unwrap();
    assert!(matches!(
        evaluate_section(&spec, &section, &grid),
        Err(Error::ExcludedPoint { .. })
    ));
}

#[test]
fn unknown_variable_in_section_rejected() {
    let spec = fixture("minkowski");
    assert!(matches!(
        PartialSection::parse(&spec, "q + 1"),
        Err(Error::UnknownCoordinate { .. })
    ));
}
