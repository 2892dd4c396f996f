use fedvr::solver::galerkin_residual;
use fedvr::{
    fedvr_phase_shift, local_phase_shift, solve_mesh, Mesh, Potential, TAN_DELTA_MORSE,
    TAN_DELTA_WOODS_SAXON,
};
use proptest::prelude::*;

fn random_mesh(lengths: &[f64], order: usize) -> Mesh {
    let mut points = vec![0.0];
    for l in lengths {
        points.push(points.last().unwrap() + l);
    }
    Mesh::from_breakpoints(&points, order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn continuity_on_random_meshes(
        lengths in prop::collection::vec(0.5f64..4.0, 3..12),
        order in prop::sample::select(vec![6usize, 10, 16, 20]),
    ) {
        let mesh = random_mesh(&lengths, order);
        let sol = solve_mesh(&mesh, &Potential::woods_saxon(), 0.5, 1.0).unwrap();
        let (value, slope) = sol.continuity_defects();
        prop_assert_eq!(value, 0.0);
        prop_assert!(slope <= 1e-10, "slope defect {}", slope);
        let residual = galerkin_residual(&mesh, &Potential::woods_saxon(), 0.5, &sol).unwrap();
        prop_assert!(residual <= 1e-9, "residual {}", residual);
    }

    #[test]
    fn free_waves_on_random_meshes(lengths in prop::collection::vec(0.5f64..2.0, 3..10), k in 0.2f64..1.5) {
        let mesh = random_mesh(&lengths, 20);
        let sol = solve_mesh(&mesh, &Potential::Free, k, k).unwrap();
        for (r, _, c) in sol.samples() {
            prop_assert!((c - (k * r).sin()).abs() <= 1e-10, "r={} err={}", r, c - (k * r).sin());
        }
    }
}

#[test]
fn seed_slope_does_not_change_the_phase() {
    let mesh = Mesh::uniform(20.0, 1.0, 20).unwrap();
    let v = Potential::woods_saxon();
    let tans: Vec<f64> = [0.5, 1.0, 2.0]
        .iter()
        .map(|&a0| {
            let sol = solve_mesh(&mesh, &v, 0.5, a0).unwrap();
            local_phase_shift(&sol, &v, None).unwrap().1.tan_delta_match
        })
        .collect();
    for t in &tans {
        assert!((t - tans[1]).abs() <= 1e-12, "{tans:?}");
    }
}

#[test]
fn reference_phase_shifts() {
    let (_, morse) = fedvr_phase_shift(
        &Mesh::uniform(100.0, 1.0, 20).unwrap(),
        &Potential::morse(),
        0.5,
    )
    .unwrap();
    assert!((morse.tan_delta_integral - TAN_DELTA_MORSE).abs() < 1e-8);
    assert!((morse.tan_delta_match - TAN_DELTA_MORSE).abs() < 1e-8);
    assert!(morse.consistency <= 1e-7);
    assert!(morse.warnings.is_empty());

    let (_, ws) = fedvr_phase_shift(
        &Mesh::uniform(20.0, 1.0, 20).unwrap(),
        &Potential::woods_saxon(),
        0.5,
    )
    .unwrap();
    assert!((ws.tan_delta_integral - TAN_DELTA_WOODS_SAXON).abs() < 1e-8);
    assert!((ws.tan_delta_match - TAN_DELTA_WOODS_SAXON).abs() < 1e-8);
}

#[test]
fn woods_saxon_self_convergence() {
    let v = Potential::woods_saxon();
    let (_, a) = fedvr_phase_shift(&Mesh::uniform(20.0, 1.0, 20).unwrap(), &v, 0.5).unwrap();
    let (_, b) = fedvr_phase_shift(&Mesh::uniform(20.0, 1.0, 30).unwrap(), &v, 0.5).unwrap();
    assert!((a.tan_delta_integral - b.tan_delta_integral).abs() <= 1e-9);
}

#[test]
fn morse_tail_truncation() {
    let v = Potential::morse();
    let tan = |r_max: f64| {
        let mesh = Mesh::uniform(r_max, 1.0, 20).unwrap();
        fedvr_phase_shift(&mesh, &v, 0.5)
            .unwrap()
            .1
            .tan_delta_integral
    };
    let (short, mid, long) = (tan(80.0), tan(100.0), tan(120.0));
    assert!(
        (short - mid).abs() > (long - mid).abs(),
        "{short} {mid} {long}"
    );
    // (1 + tan^2) / k * int_100^inf |V| dr is about 2e-10
    assert!((long - mid).abs() < 5e-10, "{}", long - mid);
}

#[test]
fn single_long_partition_is_inaccurate_but_finite() {
    let (_, res) = fedvr_phase_shift(
        &Mesh::uniform(100.0, 100.0, 20).unwrap(),
        &Potential::morse(),
        0.5,
    )
    .unwrap();
    assert!(res.tan_delta_integral.is_finite() && res.tan_delta_match.is_finite());
    assert!((res.tan_delta_integral - TAN_DELTA_MORSE).abs() > 1.0);
}
