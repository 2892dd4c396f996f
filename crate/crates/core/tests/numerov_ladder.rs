use fedvr::{numerov_phase_shift, numerov_with_intervals, Potential, TAN_DELTA_MORSE};

fn morse_error(points: usize) -> f64 {
    let v = Potential::morse();
    let run = numerov_with_intervals(&v, 0.5, points, 100.0).unwrap();
    let res = numerov_phase_shift(&run, &v).unwrap();
    (res.tan_delta_integral - TAN_DELTA_MORSE).abs()
}

#[test]
fn error_falls_monotonically_along_the_ladder() {
    let errors: Vec<f64> = [800, 1600, 3200, 6400, 12800]
        .iter()
        .map(|&p| morse_error(p))
        .collect();
    for pair in errors.windows(2) {
        let ratio = pair[0] / pair[1];
        assert!(pair[1] < pair[0]);
        assert!((4.0..=64.0).contains(&ratio), "{errors:?}");
    }
}

#[test]
fn free_wave_has_zero_phase() {
    let run = numerov_with_intervals(&Potential::Free, 0.5, 6400, 100.0).unwrap();
    let res = numerov_phase_shift(&run, &Potential::Free).unwrap();
    assert_eq!(res.tan_delta_integral, 0.0);
    assert!(res.tan_delta_match.abs() < 1e-9);
}
