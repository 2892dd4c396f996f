//! Minimal double-double arithmetic for residuals of the partition systems.

use std::ops::{Add, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bp = s - a;
    (s, (a - (s - bp)) + (b - bp))
}

fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact product of two doubles.
    pub fn prod(a: f64, b: f64) -> Self {
        let p = a * b;
        Self {
            hi: p,
            lo: a.mul_add(b, -p),
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let p = Self::prod(self.hi, b);
        let (hi, lo) = fast_two_sum(p.hi, p.lo + self.lo * b);
        Self { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = (self - Self::prod(q1, b)).hi;
        let q2 = r / b;
        let (hi, lo) = fast_two_sum(q1, q2);
        Self { hi, lo }
    }

    pub fn mul(self, o: Dd) -> Self {
        let p = Self::prod(self.hi, o.hi);
        let (hi, lo) = fast_two_sum(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi));
        Self { hi, lo }
    }

    pub fn div(self, o: Dd) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o.mul(Self::new(q1));
        let q2 = r.hi / o.hi;
        let r = r - o.mul(Self::new(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = fast_two_sum(q1, q2);
        Self { hi, lo } + Self::new(q3)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl std::iter::Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::default(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_bits() {
        let x = Dd::new(1.0) + Dd::new(1e-20);
        assert_eq!(x.hi, 1.0);
        assert_eq!(x.lo, 1e-20);
        let third = Dd::new(1.0).div_f64(3.0);
        let back = third.mul_f64(3.0) - Dd::new(1.0);
        assert!(back.to_f64().abs() < 1e-31);
        let p = Dd::prod(1.0 + 2f64.powi(-30), 1.0 - 2f64.powi(-30));
        assert_eq!(p.hi, 1.0);
        assert_eq!(p.lo, -(2f64.powi(-60)));
    }
}
