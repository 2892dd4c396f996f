//! Gauss-Lobatto nodes and weights on [-1, 1], the Lagrange-Lobatto cardinal
//! functions built on them, and the affine map onto a physical interval.

use nalgebra::DMatrix;

use crate::dd::Dd;
use crate::error::{FedvrError, Result};

/// Smallest order accepted by the partition solver: two continuity
/// coefficients plus at least two interior coefficients.
pub const MIN_SOLVER_ORDER: usize = 4;

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Legendre polynomial `P_n(x)` together with `P_{n-1}(x)`.
pub fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut cur = x;
    for m in 1..n {
        let m = m as f64;
        let next = ((2.0 * m + 1.0) * x * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Lobatto rule of order N (N nodes) with its differentiation matrix.
#[derive(Debug, Clone)]
pub struct LobattoGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `diff[(j, i)] = l_i'(x_j)`
    diff: DMatrix<f64>,
    diff_lo: DMatrix<f64>,
    /// `stiffness[(i, j)] = sum_m w_m l_i'(x_m) l_j'(x_m)`, exact for the basis.
    stiffness: DMatrix<f64>,
    stiffness_lo: DMatrix<f64>,
}

impl LobattoGrid {
    /// Grid usable by the partition solver (`N >= 4`).
    pub fn new(order: usize) -> Result<Self> {
        if order < MIN_SOLVER_ORDER {
            return Err(FedvrError::InvalidOrder {
                order,
                min: MIN_SOLVER_ORDER,
            });
        }
        Self::rule(order)
    }

    /// Plain quadrature/interpolation rule; only needs the two endpoints (`N >= 2`).
    pub fn rule(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(FedvrError::InvalidOrder { order, min: 2 });
        }
        let nodes = lobatto_nodes(order)?;
        let degree = order - 1;
        let norm = (order * degree) as f64;
        let exact_nodes = refined_nodes(&nodes);
        let exact_weights: Vec<Dd> = exact_nodes
            .iter()
            .map(|&x| {
                let p = legendre_dd(degree, x).0;
                Dd::new(2.0).div(p.mul(p).mul_f64(norm))
            })
            .collect();
        let weights: Vec<f64> = exact_weights.iter().map(|w| w.to_f64()).collect();

        // Barycentric form l_i'(x_j) = (lam_i / lam_j) / (x_j - x_i); gaps doubled against underflow.
        let lam: Vec<Dd> = (0..order)
            .map(|i| {
                (0..order).filter(|&m| m != i).fold(Dd::new(1.0), |acc, m| {
                    acc.mul((exact_nodes[i] - exact_nodes[m]).mul_f64(2.0))
                })
            })
            .collect();
        let mut exact_diff = vec![Dd::default(); order * order];
        for j in 0..order {
            for i in 0..order {
                if i != j {
                    let gap = exact_nodes[j] - exact_nodes[i];
                    exact_diff[j * order + i] = lam[j].div(lam[i].mul(gap));
                }
            }
            let off: Dd = (0..order)
                .filter(|&i| i != j)
                .map(|i| exact_diff[j * order + i])
                .sum();
            exact_diff[j * order + j] = -off;
        }
        let diff = DMatrix::from_fn(order, order, |j, i| exact_diff[j * order + i].hi);
        let diff_lo = DMatrix::from_fn(order, order, |j, i| exact_diff[j * order + i].lo);

        // l_j''(x_i) = 2 D_ij (D_ii - 1 / (x_i - x_j)) off the diagonal, rows summing to zero.
        let mut second = vec![Dd::default(); order * order];
        for i in 0..order {
            let dii = exact_diff[i * order + i];
            for j in 0..order {
                if i != j {
                    let inv_gap = Dd::new(1.0).div(exact_nodes[i] - exact_nodes[j]);
                    second[i * order + j] =
                        exact_diff[i * order + j].mul(dii - inv_gap).mul_f64(2.0);
                }
            }
            let off: Dd = (0..order)
                .filter(|&j| j != i)
                .map(|j| second[i * order + j])
                .sum();
            second[i * order + i] = -off;
        }
        // int l_i' l_j' = [l_i l_j'] - w_i l_j''(x_i), kept as hi + lo for the partition residuals
        let last = order - 1;
        let mut exact = vec![Dd::default(); order * order];
        for i in 0..order {
            for j in 0..order {
                let mut kij = -exact_weights[i].mul(second[i * order + j]);
                if i == last {
                    kij = kij + exact_diff[last * order + j];
                }
                if i == 0 {
                    kij = kij - exact_diff[j];
                }
                exact[i * order + j] = kij;
            }
        }
        for i in 0..order {
            for j in (i + 1)..order {
                let sym = (exact[i * order + j] + exact[j * order + i]).mul_f64(0.5);
                exact[i * order + j] = sym;
                exact[j * order + i] = sym;
            }
        }
        let stiffness = DMatrix::from_fn(order, order, |i, j| exact[i * order + j].hi);
        let stiffness_lo = DMatrix::from_fn(order, order, |i, j| exact[i * order + j].lo);

        Ok(Self {
            nodes,
            weights,
            diff,
            diff_lo,
            stiffness,
            stiffness_lo,
        })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Differentiation matrix, `D[(j, i)] = l_i'(x_j)`.
    pub fn diff_matrix(&self) -> &DMatrix<f64> {
        &self.diff
    }

    /// Reference stiffness matrix `int l_i' l_j' dx` on [-1, 1].
    pub fn stiffness(&self) -> &DMatrix<f64> {
        &self.stiffness
    }

    /// Rounding left over in `diff_matrix`.
    pub(crate) fn diff_lo(&self) -> &DMatrix<f64> {
        &self.diff_lo
    }

    /// Rounding left over in `stiffness`.
    pub(crate) fn stiffness_lo(&self) -> &DMatrix<f64> {
        &self.stiffness_lo
    }

    /// `sum_j f(x_j) w_j`.
    pub fn quadrature(&self, samples: &[f64]) -> Result<f64> {
        if samples.len() != self.order() {
            return Err(FedvrError::Shape {
                expected: self.order(),
                got: samples.len(),
            });
        }
        Ok(samples.iter().zip(&self.weights).map(|(f, w)| f * w).sum())
    }

    /// Cardinal function `l_i(x)` (zero-based `i`).
    pub fn lagrange(&self, i: usize, x: f64) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.lagrange_unchecked(i, x))
    }

    /// Derivative `l_i'(x)` at an arbitrary point (zero-based `i`).
    pub fn lagrange_derivative(&self, i: usize, x: f64) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.lagrange_derivative_unchecked(i, x))
    }

    /// `sum_i coeffs_i l_i(x)`.
    pub fn interpolate(&self, coeffs: &[f64], x: f64) -> Result<f64> {
        if coeffs.len() != self.order() {
            return Err(FedvrError::Shape {
                expected: self.order(),
                got: coeffs.len(),
            });
        }
        Ok((0..self.order())
            .map(|i| coeffs[i] * self.lagrange_unchecked(i, x))
            .sum())
    }

    /// `sum_i coeffs_i l_i'(x)`, derivative with respect to the reference variable.
    pub fn interpolate_derivative(&self, coeffs: &[f64], x: f64) -> Result<f64> {
        if coeffs.len() != self.order() {
            return Err(FedvrError::Shape {
                expected: self.order(),
                got: coeffs.len(),
            });
        }
        Ok((0..self.order())
            .map(|i| coeffs[i] * self.lagrange_derivative_unchecked(i, x))
            .sum())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.order() {
            Err(FedvrError::IndexOutOfRange {
                index: i,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    fn lagrange_unchecked(&self, i: usize, x: f64) -> f64 {
        let xi = self.nodes[i];
        self.nodes
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &xk)| (x - xk) / (xi - xk))
            .product()
    }

    fn lagrange_derivative_unchecked(&self, i: usize, x: f64) -> f64 {
        let xi = self.nodes[i];
        let n = self.order();
        let mut total = 0.0;
        for m in (0..n).filter(|&m| m != i) {
            let mut term = 1.0 / (xi - self.nodes[m]);
            for k in (0..n).filter(|&k| k != i && k != m) {
                term *= (x - self.nodes[k]) / (xi - self.nodes[k]);
            }
            total += term;
        }
        total
    }
}

/// Lobatto nodes: the endpoints plus the roots of `P'_{N-1}`.
fn lobatto_nodes(order: usize) -> Result<Vec<f64>> {
    let degree = order - 1;
    let n = degree as f64;
    let mut nodes = vec![0.0; order];
    nodes[0] = -1.0;
    nodes[order - 1] = 1.0;

    for (j, node) in nodes.iter_mut().enumerate().take(order - 1).skip(1) {
        let mut x = -(std::f64::consts::PI * j as f64 / n).cos();
        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, q) = legendre_pair(degree, x);
            let one_minus = 1.0 - x * x;
            let dp = n * (q - x * p) / one_minus;
            let ddp = (2.0 * x * dp - n * (n + 1.0) * p) / one_minus;
            let step = dp / ddp;
            x -= step;
            if step.abs() <= NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged || !x.is_finite() {
            return Err(FedvrError::Numerical(format!(
                "Lobatto node {j} of order {order} did not converge in {NEWTON_MAX_ITER} Newton iterations"
            )));
        }
        *node = x;
    }

    for j in 0..order / 2 {
        let x = 0.5 * (nodes[order - 1 - j] - nodes[j]);
        nodes[j] = -x;
        nodes[order - 1 - j] = x;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }
    Ok(nodes)
}

/// Affine map from the reference interval [-1, 1] onto `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    a: f64,
    b: f64,
}

impl AffineMap {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(FedvrError::Domain(format!(
                "interval [{a}, {b}] must satisfy b > a"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn start(&self) -> f64 {
        self.a
    }

    pub fn end(&self) -> f64 {
        self.b
    }

    /// `(b - a) / 2`
    pub fn scale(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    /// `(b + a) / 2`
    pub fn shift(&self) -> f64 {
        0.5 * (self.b + self.a)
    }

    /// Endpoints are reproduced exactly.
    pub fn map(&self, x: f64) -> f64 {
        if x == -1.0 {
            self.a
        } else if x == 1.0 {
            self.b
        } else {
            self.shift() + self.scale() * x
        }
    }

    pub fn inverse(&self, r: f64) -> f64 {
        (r - self.shift()) / self.scale()
    }
}

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence in double-double.
fn legendre_dd(n: usize, x: Dd) -> (Dd, Dd) {
    let (mut prev, mut cur) = (Dd::new(1.0), x);
    if n == 0 {
        return (prev, Dd::default());
    }
    for m in 1..n {
        let mf = m as f64;
        let next = (x.mul(cur).mul_f64(2.0 * mf + 1.0) - prev.mul_f64(mf)).div_f64(mf + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Lobatto nodes resolved beyond double precision by one more Newton step.
fn refined_nodes(nodes: &[f64]) -> Vec<Dd> {
    let order = nodes.len();
    let degree = order - 1;
    let mut out: Vec<Dd> = nodes.iter().map(|&x| Dd::new(x)).collect();
    for j in 1..order / 2 {
        // f = P_{n-1} - x P_n has f' = -(n + 1) P_n at a root
        let x = out[j];
        let (p, q) = legendre_dd(degree, x);
        let f = q - x.mul(p);
        let step = f.hi / ((degree + 1) as f64 * p.hi);
        out[j] = x + Dd::new(step);
        out[order - 1 - j] = -out[j];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_rule() {
        let g = LobattoGrid::rule(3).unwrap();
        assert_eq!(g.nodes(), &[-1.0, 0.0, 1.0]);
        let expected = [1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0];
        for (w, e) in g.weights().iter().zip(expected) {
            assert!((w - e).abs() < 1e-15);
        }
        assert!((g.lagrange(1, 0.5).unwrap() - 0.75).abs() < 1e-15);
        assert!((g.diff_matrix()[(2, 1)] + 2.0).abs() < 1e-14);
        let f: Vec<f64> = g.nodes().iter().map(|x| x * x).collect();
        assert!((g.quadrature(&f).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn solver_order_is_enforced() {
        assert!(matches!(
            LobattoGrid::new(3),
            Err(FedvrError::InvalidOrder { order: 3, min: 4 })
        ));
        assert!(LobattoGrid::rule(1).is_err());
        assert!(LobattoGrid::new(4).is_ok());
    }

    #[test]
    fn index_and_shape_errors() {
        let g = LobattoGrid::new(5).unwrap();
        assert!(matches!(
            g.lagrange(5, 0.0),
            Err(FedvrError::IndexOutOfRange { index: 5, order: 5 })
        ));
        assert!(matches!(
            g.quadrature(&[1.0; 4]),
            Err(FedvrError::Shape {
                expected: 5,
                got: 4
            })
        ));
    }

    #[test]
    fn diff_matrix_on_low_degree() {
        let g = LobattoGrid::new(9).unwrap();
        let d = g.diff_matrix();
        for j in 0..9 {
            let mut ones = 0.0;
            let mut xs = 0.0;
            for i in 0..9 {
                ones += d[(j, i)];
                xs += d[(j, i)] * g.nodes()[i];
            }
            assert!(ones.abs() < 1e-12);
            assert!((xs - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn large_orders_converge() {
        for n in [130, 150, 400] {
            let g = LobattoGrid::new(n).unwrap();
            let sum: f64 = g.weights().iter().sum();
            assert!((sum - 2.0).abs() < 1e-13, "N={n}: {sum}");
            assert!(g.nodes().windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn affine_map_endpoints() {
        let m = AffineMap::new(0.3, 1.7).unwrap();
        assert_eq!(m.map(-1.0), 0.3);
        assert_eq!(m.map(1.0), 1.7);
        assert!((m.inverse(m.map(0.25)) - 0.25).abs() < 1e-15);
        assert!(AffineMap::new(1.0, 1.0).is_err());
    }
}
