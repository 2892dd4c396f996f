//! Equispaced Numerov (Milne corrector) propagation of `psi'' = (V - k^2) psi`,
//! started from a power series of the regular solution about the origin.

use crate::error::{FedvrError, Result};
use crate::potentials::Potential;
use crate::scattering::{
    match_asymptotic, simpson_integrate, PhaseShiftResult, NEGLIGIBLE_POTENTIAL,
};

/// Largest step accepted by the series start.
pub const MAX_SERIES_STEP: f64 = 0.25;

/// Degree of the polynomial that stands in for `V` on `[0, 2h]`.
const FIT_DEGREE: usize = 12;
const SERIES_MAX_TERMS: usize = 400;
const SERIES_TOL: f64 = 1e-15;

/// Monomial coefficients of `V(rho t) - k^2` in `t` on `[0, 1]`, from
/// Chebyshev interpolation.
fn local_taylor(potential: &Potential, k: f64, rho: f64) -> Result<Vec<f64>> {
    let n = FIT_DEGREE + 1;
    let pi = std::f64::consts::PI;
    // Chebyshev points of the first kind mapped onto [0, 1]
    let s: Vec<f64> = (0..n)
        .map(|j| (pi * (j as f64 + 0.5) / n as f64).cos())
        .collect();
    let mut values = Vec::with_capacity(n);
    for &sj in &s {
        let v = potential.eval(rho * 0.5 * (sj + 1.0))?;
        if !v.is_finite() {
            return Err(FedvrError::Numerical(format!(
                "potential is {v} near the origin"
            )));
        }
        values.push(v - k * k);
    }
    let cheb: Vec<f64> = (0..n)
        .map(|m| {
            let sum: f64 = (0..n)
                .map(|j| values[j] * (m as f64 * pi * (j as f64 + 0.5) / n as f64).cos())
                .sum();
            sum * if m == 0 { 1.0 } else { 2.0 } / n as f64
        })
        .collect();

    // Shifted Chebyshev polynomials T_m(2t - 1) in the monomial basis of t.
    let mut out = vec![0.0; n];
    let mut prev = vec![0.0; n];
    prev[0] = 1.0;
    let mut cur = vec![0.0; n];
    cur[0] = -1.0;
    cur[1] = 2.0;
    for (m, &c) in cheb.iter().enumerate() {
        let t = match m {
            0 => prev.clone(),
            1 => cur.clone(),
            _ => {
                let mut next = vec![0.0; n];
                for i in 0..n {
                    next[i] -= 2.0 * cur[i] + prev[i];
                    if i + 1 < n {
                        next[i + 1] += 4.0 * cur[i];
                    }
                }
                prev = std::mem::replace(&mut cur, next);
                cur.clone()
            }
        };
        for i in 0..n {
            out[i] += c * t[i];
        }
    }
    Ok(out)
}

/// Regular solution with unit slope at the origin, evaluated at `r = h` and `r = 2h`.
pub fn series_start(potential: &Potential, k: f64, h: f64) -> Result<(f64, f64)> {
    if !(h > 0.0) || h > MAX_SERIES_STEP {
        return Err(FedvrError::StepTooLarge {
            h,
            reason: format!("the series start needs 0 < h <= {MAX_SERIES_STEP} fm"),
        });
    }
    let rho = 2.0 * h;
    // psi(r) = rho sum_m b_m t^m, t = r / rho, and psi_tt = rho^2 g(t) psi
    let g: Vec<f64> = local_taylor(potential, k, rho)?
        .into_iter()
        .map(|c| c * rho * rho)
        .collect();
    let mut b = vec![0.0, 1.0];
    let (mut at_half, mut at_one) = (0.5, 1.0);
    let mut small_run = 0;
    for m in 0..SERIES_MAX_TERMS {
        let conv: f64 = (0..=m.min(g.len() - 1)).map(|n| g[n] * b[m - n]).sum();
        let next = conv / ((m + 2) as f64 * (m + 1) as f64);
        b.push(next);
        let p = (m + 2) as i32;
        let term_one = next;
        at_one += term_one;
        at_half += next * 0.5f64.powi(p);
        if term_one.abs() <= SERIES_TOL * at_one.abs() {
            small_run += 1;
            if small_run >= 3 {
                return Ok((rho * at_half, rho * at_one));
            }
        } else {
            small_run = 0;
        }
        if !at_one.is_finite() {
            break;
        }
    }
    Err(FedvrError::StepTooLarge {
        h,
        reason: "power series did not converge".into(),
    })
}

/// Equispaced Numerov solution on `[0, R_max]`.
#[derive(Debug, Clone)]
pub struct NumerovRun {
    pub h: f64,
    /// Number of steps; `intervals * h = R_max`.
    pub intervals: usize,
    /// `y_0 .. y_intervals`, with `y_0 = 0`.
    pub values: Vec<f64>,
    pub k: f64,
}

impl NumerovRun {
    pub fn r_max(&self) -> f64 {
        self.h * self.intervals as f64
    }

    pub fn radius(&self, i: usize) -> f64 {
        i as f64 * self.h
    }
}

/// Propagate with `R_max / intervals` as the step.
pub fn numerov_with_intervals(
    potential: &Potential,
    k: f64,
    intervals: usize,
    r_max: f64,
) -> Result<NumerovRun> {
    if intervals < 2 {
        return Err(FedvrError::Domain(format!(
            "Numerov needs at least 2 steps, got {intervals}"
        )));
    }
    numerov_sweep(potential, k, r_max / intervals as f64, r_max)
}

pub fn numerov_sweep(potential: &Potential, k: f64, h: f64, r_max: f64) -> Result<NumerovRun> {
    if !(h > 0.0) || !(r_max > 0.0) {
        return Err(FedvrError::Domain(format!(
            "step h = {h} and R_max = {r_max} must be positive"
        )));
    }
    let ratio = r_max / h;
    let intervals = ratio.round();
    if intervals < 2.0 || (ratio - intervals).abs() > 1e-9 * ratio {
        return Err(FedvrError::Domain(format!(
            "R_max / h = {ratio} is not an integer number (>= 2) of steps"
        )));
    }
    let intervals = intervals as usize;
    let (y1, y2) = series_start(potential, k, h)?;

    let k2 = k * k;
    let h2 = h * h / 12.0;
    // y'' = f y with f = V - k^2, written as y'' = -q y, q = k^2 - V
    let mut coef = Vec::with_capacity(intervals + 1);
    for i in 0..=intervals {
        let r = i as f64 * h;
        let q = k2 - potential.eval(r)?;
        coef.push(q * h2);
    }
    let mut values = vec![0.0; intervals + 1];
    values[1] = y1;
    if intervals >= 2 {
        values[2] = y2;
    }
    for n in 2..intervals {
        let denom = 1.0 + coef[n + 1];
        if denom.abs() < 1e-12 {
            return Err(FedvrError::StepInstability {
                r: (n + 1) as f64 * h,
            });
        }
        values[n + 1] =
            (2.0 * (1.0 - 5.0 * coef[n]) * values[n] - (1.0 + coef[n - 1]) * values[n - 1]) / denom;
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(FedvrError::Numerical("Numerov values overflowed".into()));
    }
    Ok(NumerovRun {
        h,
        intervals,
        values,
        k,
    })
}

/// Fourth-order one-sided derivative at the last point.
fn end_derivative(run: &NumerovRun) -> Result<f64> {
    let n = run.intervals;
    if n < 4 {
        return Err(FedvrError::Domain(
            "need at least 5 points for the end derivative".into(),
        ));
    }
    let y = &run.values;
    Ok(
        (25.0 * y[n] - 48.0 * y[n - 1] + 36.0 * y[n - 2] - 16.0 * y[n - 3] + 3.0 * y[n - 4])
            / (12.0 * run.h),
    )
}

/// Match at `R_max`, then evaluate the phase-shift integral by the extended Simpson rule.
/// `tan_delta_integral` is the Numerov estimate of record.
pub fn numerov_phase_shift(run: &NumerovRun, potential: &Potential) -> Result<PhaseShiftResult> {
    let r_max = run.r_max();
    let k = run.k;
    let slope = end_derivative(run)?;
    let (amplitude, tan_match) = match_asymptotic(run.values[run.intervals], slope, k, r_max)?;
    let mut warnings = Vec::new();
    let tail = potential.eval(r_max)?.abs();
    if tail > NEGLIGIBLE_POTENTIAL {
        warnings.push(format!(
            "|V(R_max = {r_max})| = {tail:.3e} exceeds {NEGLIGIBLE_POTENTIAL:.0e}"
        ));
    }
    let integral = if potential.is_free() {
        0.0
    } else {
        let mut integrand = Vec::with_capacity(run.values.len());
        for (i, y) in run.values.iter().enumerate() {
            let r = run.radius(i);
            integrand.push((k * r).sin() * potential.eval(r)? * y / amplitude);
        }
        -simpson_integrate(&integrand, run.h)? / k
    };
    Ok(PhaseShiftResult {
        tan_delta_match: tan_match,
        tan_delta_integral: integral,
        amplitude,
        consistency: (tan_match - integral).abs(),
        k,
        r_max,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_series() {
        let (k, h) = (0.5, 0.01);
        let (y1, y2) = series_start(&Potential::Free, k, h).unwrap();
        assert!((y1 - (k * h).sin() / k).abs() < 1e-12);
        assert!((y2 - (2.0 * k * h).sin() / k).abs() < 1e-12);
    }

    #[test]
    fn constant_potential_series() {
        let (k, h, c): (f64, f64, f64) = (0.5, 0.1, -1.3);
        let q = (k * k - c).sqrt();
        let (_, y2) = series_start(&Potential::constant(c), k, h).unwrap();
        assert!((y2 - (q * 2.0 * h).sin() / q).abs() < 1e-12);
        // above the barrier top the solution is a sinh
        let c = 2.0;
        let q = (c - k * k).sqrt();
        let (y1, _) = series_start(&Potential::constant(c), k, h).unwrap();
        assert!((y1 - (q * h).sinh() / q).abs() < 1e-12);
    }

    #[test]
    fn series_step_limit() {
        assert!(matches!(
            series_start(&Potential::Free, 0.5, 0.3),
            Err(FedvrError::StepTooLarge { .. })
        ));
        assert!(series_start(&Potential::morse(), 0.5, 0.125).is_ok());
    }

    #[test]
    fn linear_data_propagates_exactly() {
        let run = numerov_sweep(&Potential::Free, 0.0, 0.125, 10.0).unwrap();
        assert_eq!(run.values[0], 0.0);
        for (i, y) in run.values.iter().enumerate() {
            assert!((y - run.radius(i)).abs() < 1e-12);
        }
        assert_eq!(run.intervals, 80);
        assert_eq!(run.r_max(), 10.0);
    }

    #[test]
    fn free_sweep_matches_sine() {
        let k = 0.5;
        let run = numerov_sweep(&Potential::Free, k, 0.0125, 20.0).unwrap();
        let worst = run
            .values
            .iter()
            .enumerate()
            .map(|(i, y)| (y - (k * run.radius(i)).sin() / k).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-10, "{worst}");
        let res = numerov_phase_shift(&run, &Potential::Free).unwrap();
        // the end-point stencil error h^4 psi^(5) / 5 dominates
        let h = run.h;
        assert!(
            res.tan_delta_match.abs() < h.powi(4) * k.powi(4) / 5.0,
            "{}",
            res.tan_delta_match
        );
        assert_eq!(res.tan_delta_integral, 0.0);
    }

    #[test]
    fn sweep_rejects_fractional_steps() {
        assert!(numerov_sweep(&Potential::Free, 0.5, 0.3, 1.0).is_err());
    }
}
