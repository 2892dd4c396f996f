//! Linear round-off accumulation bounds and the flop count of the partition solves.

/// Double-precision round-off unit used by the published estimates.
pub const EPS_DOUBLE: f64 = 1e-16;

fn cube(n: usize) -> f64 {
    let m = n.saturating_sub(2) as f64;
    m * m * m
}

/// `4 N_p (N - 2)^3 eps`: every flop of every reduced solve contributing one eps.
pub fn roundoff_bound_local(order: usize, partitions: usize, eps: f64) -> f64 {
    4.0 * partitions as f64 * cube(order) * eps
}

/// Single-partition nonlocal bound over a range of length `length`.
///
/// With `linear` the `N` terms of every kinetic matrix element are assumed to add
/// their errors linearly, `2N(N-1)(eps/L) 4(N-2)^3`; otherwise the bound drops the
/// factor `N`, `2(N-1)(eps/L) 4(N-2)^3`.
pub fn roundoff_bound_nonlocal(order: usize, length: f64, eps: f64, linear: bool) -> f64 {
    let n = order as f64;
    let per_element = if linear {
        2.0 * n * (n - 1.0)
    } else {
        2.0 * (n - 1.0)
    };
    per_element * (eps / length) * 4.0 * cube(order)
}

/// `4 N_p (N - 2)^3` floating-point operations for the reduced solves.
pub fn flop_estimate(order: usize, partitions: usize) -> f64 {
    4.0 * partitions as f64 * cube(order)
}

/// `2 N eps / Delta`, the error of one Lagrange function with mean node spacing `Delta`.
pub fn lagrange_error_bound(order: usize, spacing: f64, eps: f64) -> f64 {
    2.0 * order as f64 * eps / spacing
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorEstimate {
    pub eps: f64,
    pub order: usize,
    pub partitions: usize,
    /// Partition length (fm).
    pub length: f64,
    /// Mean node spacing `length / (N - 1)` (fm).
    pub spacing: f64,
    pub epsilon_total: f64,
    pub flops: f64,
}

impl ErrorEstimate {
    /// Estimate for `partitions` equal partitions of `length` fm with `order` points each.
    pub fn local(order: usize, partitions: usize, length: f64, eps: f64) -> Self {
        Self {
            eps,
            order,
            partitions,
            length,
            spacing: length / (order.max(2) - 1) as f64,
            epsilon_total: roundoff_bound_local(order, partitions, eps),
            flops: flop_estimate(order, partitions),
        }
    }

    /// Estimated wall time for a per-flop cost in seconds.
    pub fn time_estimate(&self, seconds_per_flop: f64) -> f64 {
        self.flops * seconds_per_flop
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_bound_values() {
        let b = roundoff_bound_local(20, 100, 1e-16);
        assert!((b - 2.3328e-10).abs() < 1e-22);
        assert_eq!(roundoff_bound_local(2, 100, 1e-16), 0.0);
        assert_eq!(
            roundoff_bound_local(12, 200, 1e-16),
            2.0 * roundoff_bound_local(12, 100, 1e-16)
        );
        // the specialization at N_p = 100, eps = 1e-16 is 4e-14 (N-2)^3
        for n in 4..30 {
            let direct = 4e-14 * ((n - 2) as f64).powi(3);
            assert!((roundoff_bound_local(n, 100, 1e-16) - direct).abs() <= 1e-12 * direct);
        }
    }

    #[test]
    fn nonlocal_bounds() {
        let lin = roundoff_bound_nonlocal(130, 15.0, 1e-16, true);
        let one = roundoff_bound_nonlocal(130, 15.0, 1e-16, false);
        assert!((lin / 1.8e-6 - 1.0).abs() < 0.05, "{lin}");
        assert!((one / 1.4e-8 - 1.0).abs() < 0.05, "{one}");
        assert_eq!(roundoff_bound_nonlocal(130, 15.0, 0.0, true), 0.0);
    }

    #[test]
    fn flops() {
        assert_eq!(flop_estimate(20, 100), 2_332_800.0);
        assert_eq!(flop_estimate(9, 1), 4.0 * 343.0);
        assert!((5..40).all(|n| flop_estimate(n, 3) > flop_estimate(n - 1, 3)));
    }

    #[test]
    fn lagrange_bound_is_smaller() {
        for n in 4..=30 {
            let est = ErrorEstimate::local(n, 100, 1.0, EPS_DOUBLE);
            let lag = lagrange_error_bound(n, est.spacing, EPS_DOUBLE);
            assert!(lag < est.epsilon_total, "N={n}");
            assert!(est.flops >= 4.0 * 100.0 * ((n - 2) as f64).powi(3));
        }
    }
}
