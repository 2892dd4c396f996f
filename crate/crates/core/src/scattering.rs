//! Asymptotic normalization `psi -> sin(kr) + tan(delta) cos(kr)` and the two
//! phase-shift estimates: matching at `R_match` and the integral
//! `tan(delta) = -(1/k) int sin(kr) V(r) psi(r) dr`.

use crate::error::{FedvrError, Result};
use crate::potentials::{KernelSpec, Potential};
use crate::solver::{solve_mesh, Mesh, WaveSolution};

/// `|V(R_match)|` above which matching is flagged as contaminated by the potential.
pub const NEGLIGIBLE_POTENTIAL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseShiftResult {
    pub tan_delta_match: f64,
    pub tan_delta_integral: f64,
    /// Factor `A` with `psi_raw = A [sin(kr) + tan(delta) cos(kr)]`.
    pub amplitude: f64,
    pub consistency: f64,
    pub k: f64,
    pub r_max: f64,
    pub warnings: Vec<String>,
}

impl PhaseShiftResult {
    fn new(
        tan_delta_match: f64,
        tan_delta_integral: f64,
        amplitude: f64,
        k: f64,
        r_max: f64,
        warnings: Vec<String>,
    ) -> Self {
        Self {
            tan_delta_match,
            tan_delta_integral,
            amplitude,
            consistency: (tan_delta_match - tan_delta_integral).abs(),
            k,
            r_max,
            warnings,
        }
    }
}

/// Solve `psi(r) = A [sin(kr) + t cos(kr)]`, `psi'(r) = A k [cos(kr) - t sin(kr)]` for `(A, t)`.
pub fn match_asymptotic(value: f64, slope: f64, k: f64, r: f64) -> Result<(f64, f64)> {
    if !(k > 0.0) {
        return Err(FedvrError::Domain(format!(
            "asymptotic matching needs k > 0, got {k}"
        )));
    }
    let u = value;
    let v = slope / k;
    if !(u.hypot(v) > f64::MIN_POSITIVE) {
        return Err(FedvrError::DegenerateMatch { r });
    }
    let (s, c) = (k * r).sin_cos();
    let amplitude = u * s + v * c;
    if amplitude == 0.0 {
        return Err(FedvrError::Numerical(format!(
            "tan(delta) is infinite at r = {r} (phase shift of pi/2)"
        )));
    }
    Ok((amplitude, (u * c - v * s) / amplitude))
}

#[derive(Debug, Clone)]
pub struct Normalization {
    pub amplitude: f64,
    pub tan_delta: f64,
    pub solution: WaveSolution,
}

/// Match at `r_match` (in the last partition) and rescale the solution by `1/A`.
pub fn normalize_asymptotic(sol: &WaveSolution, r_match: f64) -> Result<Normalization> {
    let last = sol
        .partitions()
        .last()
        .ok_or_else(|| FedvrError::Contract("empty solution".into()))?;
    if !last.contains(r_match) {
        return Err(FedvrError::Domain(format!(
            "R_match = {r_match} is outside the last partition [{}, {}]",
            last.start(),
            last.end()
        )));
    }
    let (value, slope) = if r_match == last.end() {
        (sol.last_value(), sol.last_slope())
    } else {
        (last.value_at(r_match), last.derivative_at(r_match))
    };
    let (amplitude, tan_delta) = match_asymptotic(value, slope, sol.k(), r_match)?;
    Ok(Normalization {
        amplitude,
        tan_delta,
        solution: sol.clone().into_normalized(1.0 / amplitude),
    })
}

fn require_normalized(sol: &WaveSolution) -> Result<()> {
    if !sol.is_normalized() {
        return Err(FedvrError::Contract(
            "phase-shift integral needs an asymptotically normalized solution".into(),
        ));
    }
    if !(sol.k() > 0.0) {
        return Err(FedvrError::Domain(
            "phase-shift integral needs k > 0".into(),
        ));
    }
    Ok(())
}

/// Gauss-Lobatto evaluation of `-(1/k) int_0^{R_max} sin(kr) V psi dr`.
pub fn phase_shift_integral(sol: &WaveSolution, potential: &Potential) -> Result<f64> {
    require_normalized(sol)?;
    if potential.is_free() {
        return Ok(0.0);
    }
    let k = sol.k();
    let mut total = 0.0;
    for (r, w, c) in sol.samples() {
        total += w * (k * r).sin() * potential.eval(r)? * c;
    }
    Ok(-total / k)
}

/// Same with `V psi` replaced by `int K(r, r') psi(r') dr'`.
pub fn phase_shift_integral_nonlocal(sol: &WaveSolution, kernel: &KernelSpec) -> Result<f64> {
    require_normalized(sol)?;
    let k = sol.k();
    let samples: Vec<(f64, f64, f64)> = sol.samples().collect();
    let mut total = 0.0;
    for &(r, w, _) in &samples {
        let folded: f64 = samples
            .iter()
            .map(|&(rp, wp, cp)| wp * kernel.eval(r, rp) * cp)
            .sum();
        total += w * (k * r).sin() * folded;
    }
    if !total.is_finite() {
        return Err(FedvrError::Numerical("non-finite kernel sum".into()));
    }
    Ok(-total / k)
}

/// Normalize at `r_match` (default `R_max`) and evaluate both estimates.
pub fn local_phase_shift(
    sol: &WaveSolution,
    potential: &Potential,
    r_match: Option<f64>,
) -> Result<(WaveSolution, PhaseShiftResult)> {
    let r_match = r_match.unwrap_or_else(|| sol.r_max());
    let norm = normalize_asymptotic(sol, r_match)?;
    let mut warnings = Vec::new();
    let tail = potential.eval(r_match)?.abs();
    if tail > NEGLIGIBLE_POTENTIAL {
        warnings.push(format!(
            "|V(R_match = {r_match})| = {tail:.3e} exceeds {NEGLIGIBLE_POTENTIAL:.0e}"
        ));
    }
    let integral = phase_shift_integral(&norm.solution, potential)?;
    let result = PhaseShiftResult::new(
        norm.tan_delta,
        integral,
        norm.amplitude,
        sol.k(),
        sol.r_max(),
        warnings,
    );
    Ok((norm.solution, result))
}

pub fn nonlocal_phase_shift(
    sol: &WaveSolution,
    kernel: &KernelSpec,
    r_match: Option<f64>,
) -> Result<(WaveSolution, PhaseShiftResult)> {
    let r_match = r_match.unwrap_or_else(|| sol.r_max());
    let norm = normalize_asymptotic(sol, r_match)?;
    let mut warnings = Vec::new();
    let tail = kernel.eval(r_match, r_match).abs();
    if tail > NEGLIGIBLE_POTENTIAL {
        warnings.push(format!(
            "|K(R_match, R_match)| = {tail:.3e} exceeds {NEGLIGIBLE_POTENTIAL:.0e}"
        ));
    }
    let integral = phase_shift_integral_nonlocal(&norm.solution, kernel)?;
    let result = PhaseShiftResult::new(
        norm.tan_delta,
        integral,
        norm.amplitude,
        sol.k(),
        sol.r_max(),
        warnings,
    );
    Ok((norm.solution, result))
}

/// Solve on `mesh` with unit seed slope and return the normalized solution and both estimates.
pub fn fedvr_phase_shift(
    mesh: &Mesh,
    potential: &Potential,
    k: f64,
) -> Result<(WaveSolution, PhaseShiftResult)> {
    let sol = solve_mesh(mesh, potential, k, 1.0)?;
    local_phase_shift(&sol, potential, None)
}

/// Extended Simpson rule over equispaced samples (odd count).
pub fn simpson_integrate(samples: &[f64], h: f64) -> Result<f64> {
    let n = samples.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(FedvrError::Shape {
            expected: if n < 3 { 3 } else { n + 1 },
            got: n,
        });
    }
    if !(h > 0.0) {
        return Err(FedvrError::Domain(format!(
            "Simpson step h = {h} must be positive"
        )));
    }
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, &f) in samples.iter().enumerate().take(n - 1).skip(1) {
        if i % 2 == 1 {
            odd += f;
        } else {
            even += f;
        }
    }
    Ok(h / 3.0 * (samples[0] + samples[n - 1] + 4.0 * odd + 2.0 * even))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_mesh, Mesh};

    #[test]
    fn simpson_rules() {
        let cubic: Vec<f64> = (0..5).map(|i| (i as f64 * 0.25).powi(3)).collect();
        assert!((simpson_integrate(&cubic, 0.25).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(simpson_integrate(&[1.0; 5], 0.25).unwrap(), 1.0);
        let h = std::f64::consts::PI / 100.0;
        let sine: Vec<f64> = (0..101).map(|i| (i as f64 * h).sin()).collect();
        // leading error term (pi/180) h^4 max|f''''| = 1.08e-8
        let err = (simpson_integrate(&sine, h).unwrap() - 2.0).abs();
        assert!(err < std::f64::consts::PI / 180.0 * h.powi(4), "{err}");
        assert!((err - 1.0824e-8).abs() < 1e-11, "{err}");
        assert!(matches!(
            simpson_integrate(&[1.0; 4], 0.1),
            Err(FedvrError::Shape { .. })
        ));
        assert!(simpson_integrate(&[1.0; 5], 0.0).is_err());
    }

    #[test]
    fn match_recovers_phase() {
        let (k, r, t): (f64, f64, f64) = (0.7, 12.3, -0.4);
        let a = 3.0;
        let value = a * ((k * r).sin() + t * (k * r).cos());
        let slope = a * k * ((k * r).cos() - t * (k * r).sin());
        let (amp, tan) = match_asymptotic(value, slope, k, r).unwrap();
        assert!((amp - a).abs() < 1e-13);
        assert!((tan - t).abs() < 1e-13);
        assert!(matches!(
            match_asymptotic(0.0, 0.0, k, r),
            Err(FedvrError::DegenerateMatch { .. })
        ));
    }

    #[test]
    fn free_particle_normalization() {
        let k = 0.5;
        let mesh = Mesh::uniform(20.0, 1.0, 12).unwrap();
        let sol = solve_mesh(&mesh, &Potential::Free, k, k).unwrap();
        let norm = normalize_asymptotic(&sol, 20.0).unwrap();
        assert!(norm.tan_delta.abs() < 1e-12, "{}", norm.tan_delta);
        assert!(
            (norm.amplitude - 1.0).abs() < 1e-12,
            "{}",
            norm.amplitude - 1.0
        );
        assert_eq!(
            phase_shift_integral(&norm.solution, &Potential::Free).unwrap(),
            0.0
        );

        let doubled = normalize_asymptotic(&sol.scaled(2.0), 20.0).unwrap();
        assert!((doubled.amplitude - 2.0 * norm.amplitude).abs() < 1e-12);
        assert!((doubled.tan_delta - norm.tan_delta).abs() < 1e-12);
    }

    #[test]
    fn interior_match_point() {
        let k = 0.5;
        let mesh = Mesh::uniform(20.0, 1.0, 16).unwrap();
        let sol = solve_mesh(&mesh, &Potential::woods_saxon(), k, 1.0).unwrap();
        let at_end = normalize_asymptotic(&sol, 20.0).unwrap();
        let inside = normalize_asymptotic(&sol, 19.5).unwrap();
        assert!((at_end.tan_delta - inside.tan_delta).abs() < 1e-9);
        assert!(normalize_asymptotic(&sol, 18.0).is_err());
    }

    #[test]
    fn integral_requires_normalization() {
        let mesh = Mesh::uniform(5.0, 1.0, 8).unwrap();
        let sol = solve_mesh(&mesh, &Potential::woods_saxon(), 0.5, 1.0).unwrap();
        assert!(matches!(
            phase_shift_integral(&sol, &Potential::woods_saxon()),
            Err(FedvrError::Contract(_))
        ));
        assert!(phase_shift_integral_nonlocal(&sol, &KernelSpec::zero()).is_err());
    }

    #[test]
    fn tail_warning() {
        let mesh = Mesh::uniform(10.0, 1.0, 12).unwrap();
        let sol = solve_mesh(&mesh, &Potential::morse(), 0.5, 1.0).unwrap();
        let (_, res) = local_phase_shift(&sol, &Potential::morse(), None).unwrap();
        assert_eq!(res.warnings.len(), 1);
    }
}
