//! Partition-by-partition FE-DVR solution of `(d^2/dr^2 + k^2) psi = V psi`.
//!
//! Each partition carries its own Lagrange-Lobatto basis. The two Galerkin rows
//! tested against `l_1` and `l_2` are replaced by value and slope continuity with
//! the previous partition, which turns the homogeneous `N x N` system into an
//! inhomogeneous `(N-2) x (N-2)` one for the interior and right-edge coefficients.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Matrix2};

use crate::dd::Dd;
use crate::error::{FedvrError, Result};
use crate::gausslobatto::{AffineMap, LobattoGrid, MIN_SOLVER_ORDER};
use crate::potentials::{KernelSpec, Potential};

/// Pivot ratio above which the reduced partition system is treated as singular.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e14;
const REFINEMENT_STEPS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partition {
    pub start: f64,
    pub end: f64,
    pub order: usize,
}

/// Contiguous partitions covering `[0, R_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    partitions: Vec<Partition>,
}

impl Mesh {
    pub fn new(partitions: Vec<Partition>) -> Result<Self> {
        let first = partitions
            .first()
            .ok_or_else(|| FedvrError::InvalidMesh("no partitions".into()))?;
        if first.start != 0.0 {
            return Err(FedvrError::InvalidMesh(format!(
                "first partition starts at {} instead of 0",
                first.start
            )));
        }
        for (j, p) in partitions.iter().enumerate() {
            if p.order < MIN_SOLVER_ORDER {
                return Err(FedvrError::InvalidOrder {
                    order: p.order,
                    min: MIN_SOLVER_ORDER,
                }
                .in_partition(j + 1));
            }
            if !(p.end > p.start) || !p.end.is_finite() {
                return Err(FedvrError::InvalidMesh(format!(
                    "partition {} has endpoints [{}, {}]",
                    j + 1,
                    p.start,
                    p.end
                )));
            }
        }
        for (j, pair) in partitions.windows(2).enumerate() {
            if pair[0].end != pair[1].start {
                return Err(FedvrError::InvalidMesh(format!(
                    "gap or overlap between partitions {} and {}: {} vs {}",
                    j + 1,
                    j + 2,
                    pair[0].end,
                    pair[1].start
                )));
            }
        }
        Ok(Self { partitions })
    }

    /// Breakpoints `0 = b_0 < b_1 < ... < b_n = R_max`, one grid order throughout.
    pub fn from_breakpoints(breakpoints: &[f64], order: usize) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(FedvrError::InvalidMesh(
                "need at least two breakpoints".into(),
            ));
        }
        Self::new(
            breakpoints
                .windows(2)
                .map(|p| Partition {
                    start: p[0],
                    end: p[1],
                    order,
                })
                .collect(),
        )
    }

    /// Equal partitions of the given length; the length must divide `r_max`.
    pub fn uniform(r_max: f64, length: f64, order: usize) -> Result<Self> {
        if !(length > 0.0) || !(r_max > 0.0) || !r_max.is_finite() {
            return Err(FedvrError::InvalidMesh(format!(
                "partition length {length} and R_max {r_max} must be positive"
            )));
        }
        let ratio = r_max / length;
        let count = ratio.round();
        if count < 1.0 || (ratio - count).abs() > 1e-9 * ratio.max(1.0) {
            return Err(FedvrError::InvalidMesh(format!(
                "partition length {length} does not divide R_max = {r_max}"
            )));
        }
        let count = count as usize;
        let mut points: Vec<f64> = (0..count).map(|j| j as f64 * length).collect();
        points.push(r_max);
        Self::from_breakpoints(&points, order)
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn r_max(&self) -> f64 {
        self.partitions.last().map_or(0.0, |p| p.end)
    }

    /// Sum of the grid orders, counting shared endpoints once per partition.
    pub fn total_points(&self) -> usize {
        self.partitions.iter().map(|p| p.order).sum()
    }
}

/// Value and slope of the solution at a partition edge (the `gamma` vector).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeValues {
    pub value: f64,
    pub slope: f64,
}

/// Galerkin matrix of one partition together with its continuity rows.
#[derive(Debug, Clone)]
pub struct LocalSystem {
    map: AffineMap,
    matrix: DMatrix<f64>,
    /// Rounding left over in `matrix`.
    matrix_lo: DMatrix<f64>,
    slope_start: Vec<f64>,
    slope_start_lo: Vec<f64>,
    slope_end: Vec<f64>,
    slope_end_lo: Vec<f64>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl LocalSystem {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn map(&self) -> AffineMap {
        self.map
    }

    /// Full `M_ij = <l_i (T + V - k^2) l_j>`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    fn entry(&self, i: usize, j: usize) -> Dd {
        Dd {
            hi: self.matrix[(i, j)],
            lo: self.matrix_lo[(i, j)],
        }
    }

    fn add_to(&mut self, i: usize, j: usize, x: Dd) {
        let e = self.entry(i, j) + x;
        self.matrix[(i, j)] = e.hi;
        self.matrix_lo[(i, j)] = e.lo;
    }

    pub fn m11(&self) -> DMatrix<f64> {
        self.matrix.view((0, 0), (2, 2)).into_owned()
    }

    pub fn m12(&self) -> DMatrix<f64> {
        let n = self.order();
        self.matrix.view((0, 2), (2, n - 2)).into_owned()
    }

    pub fn m21(&self) -> DMatrix<f64> {
        let n = self.order();
        self.matrix.view((2, 0), (n - 2, 2)).into_owned()
    }

    pub fn m22(&self) -> DMatrix<f64> {
        let n = self.order();
        self.matrix.view((2, 2), (n - 2, n - 2)).into_owned()
    }

    pub fn f11(&self) -> Matrix2<f64> {
        Matrix2::new(1.0, 0.0, self.slope_start[0], self.slope_start[1])
    }

    pub fn f12(&self) -> DMatrix<f64> {
        let n = self.order();
        DMatrix::from_fn(2, n - 2, |row, col| {
            if row == 0 {
                0.0
            } else {
                self.slope_start[col + 2]
            }
        })
    }

    /// Closed-form inverse of `F11`.
    pub fn f11_inverse(&self) -> Matrix2<f64> {
        let (d1, d2) = (self.slope_start[0], self.slope_start[1]);
        Matrix2::new(1.0, 0.0, -d1 / d2, 1.0 / d2)
    }

    /// `l_i'(b1)` in fm^-1.
    pub fn slope_start(&self) -> &[f64] {
        &self.slope_start
    }

    /// `l_i'(b2)` in fm^-1.
    pub fn slope_end(&self) -> &[f64] {
        &self.slope_end
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Kinetic part only: `(1/s) [int l_i' l_j' dx - delta_iN l_j'(1) + delta_i1 l_j'(-1)]`.
fn kinetic_system(grid: &LobattoGrid, map: AffineMap) -> LocalSystem {
    let n = grid.order();
    let s = map.scale();
    let d = grid.diff_matrix();
    let k_lo = grid.stiffness_lo();
    let d_lo = grid.diff_lo();
    let dd = |j: usize, i: usize| Dd {
        hi: d[(j, i)],
        lo: d_lo[(j, i)],
    };
    let exact = |i: usize, j: usize| {
        let mut e = Dd {
            hi: grid.stiffness()[(i, j)],
            lo: k_lo[(i, j)],
        };
        if i == 0 {
            e = e + dd(0, j);
        }
        if i == n - 1 {
            e = e - dd(n - 1, j);
        }
        e.div_f64(s)
    };
    let mut matrix = DMatrix::zeros(n, n);
    let mut matrix_lo = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = exact(i, j);
            matrix[(i, j)] = e.hi;
            matrix_lo[(i, j)] = e.lo;
        }
    }
    let nodes = grid.nodes().iter().map(|&x| map.map(x)).collect();
    let weights = grid.weights().iter().map(|&w| w * s).collect();
    LocalSystem {
        map,
        matrix,
        matrix_lo,
        slope_start: (0..n).map(|i| dd(0, i).div_f64(s).hi).collect(),
        slope_start_lo: (0..n).map(|i| dd(0, i).div_f64(s).lo).collect(),
        slope_end: (0..n).map(|i| dd(n - 1, i).div_f64(s).hi).collect(),
        slope_end_lo: (0..n).map(|i| dd(n - 1, i).div_f64(s).lo).collect(),
        nodes,
        weights,
    }
}

fn check_wavenumber(k: f64) -> Result<()> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(FedvrError::Domain(format!(
            "wave number k = {k} must be >= 0"
        )));
    }
    Ok(())
}

/// Assemble the local-potential Galerkin system of one partition.
pub fn assemble_local(
    grid: &LobattoGrid,
    map: AffineMap,
    potential: &Potential,
    k: f64,
) -> Result<LocalSystem> {
    check_wavenumber(k)?;
    let mut sys = kinetic_system(grid, map);
    let k2 = k * k;
    for i in 0..sys.order() {
        let r = sys.nodes[i];
        let v = potential.eval(r)?;
        if !v.is_finite() {
            return Err(FedvrError::Numerical(format!(
                "potential is {v} at node {} (r = {r})",
                i + 1
            )));
        }
        let w = sys.weights[i];
        sys.add_to(i, i, Dd::prod(v - k2, w));
    }
    Ok(sys)
}

/// Assemble the single-partition system with the nonlocal block `W_i W_j K(r_i, r_j)`.
pub fn assemble_nonlocal(
    grid: &LobattoGrid,
    map: AffineMap,
    kernel: &KernelSpec,
    k: f64,
) -> Result<LocalSystem> {
    check_wavenumber(k)?;
    let mut sys = kinetic_system(grid, map);
    let n = sys.order();
    let k2 = k * k;
    for i in 0..n {
        let w = sys.weights[i];
        sys.add_to(i, i, -Dd::prod(k2, w));
    }
    let symmetric = kernel.is_symmetric();
    for i in 0..n {
        let start = if symmetric { i } else { 0 };
        for j in start..n {
            let kij = kernel.eval(sys.nodes[i], sys.nodes[j]);
            if !kij.is_finite() {
                return Err(FedvrError::Numerical(format!(
                    "kernel is {kij} at node pair ({}, {}) (r = {}, r' = {})",
                    i + 1,
                    j + 1,
                    sys.nodes[i],
                    sys.nodes[j]
                )));
            }
            let block = sys.weights[i] * sys.weights[j] * kij;
            sys.add_to(i, j, Dd::new(block));
            if symmetric && j != i {
                sys.add_to(j, i, Dd::new(block));
            }
        }
    }
    Ok(sys)
}

/// Solve one partition given the value and slope at its left edge.
///
/// Returns the coefficients `c^(J)` (the solution at the mapped nodes) and the
/// slope `A^(J)` at the right edge.
pub fn propagate_partition(sys: &LocalSystem, gamma: EdgeValues) -> Result<(Vec<f64>, f64)> {
    let n = sys.order();
    if n < MIN_SOLVER_ORDER {
        return Err(FedvrError::InvalidOrder {
            order: n,
            min: MIN_SOLVER_ORDER,
        });
    }
    let m = &sys.matrix;
    let d2 = sys.slope_start[1];
    let d1 = sys.slope_start[0];
    // F11^{-1} gamma
    let a1 = gamma.value;
    let a2 = (gamma.slope - d1 * gamma.value) / d2;
    let dim = n - 2;

    // M22 - M21 F11^{-1} F12; only the second row of F11^{-1} F12 is nonzero.
    let reduced = DMatrix::from_fn(dim, dim, |p, q| {
        m[(p + 2, q + 2)] - m[(p + 2, 1)] * sys.slope_start[q + 2] / d2
    });
    let rhs = DVector::from_fn(dim, |p, _| -(m[(p + 2, 0)] * a1 + m[(p + 2, 1)] * a2));

    let lu = reduced.lu();
    let u = lu.u();
    let (mut pmax, mut pmin) = (0.0f64, f64::INFINITY);
    for i in 0..dim {
        let p = u[(i, i)].abs();
        pmax = pmax.max(p);
        pmin = pmin.min(p);
    }
    let ratio = pmax / pmin;
    if !(ratio <= SINGULAR_PIVOT_RATIO) {
        return Err(FedvrError::SingularSystem { ratio });
    }
    let mut beta = lu.solve(&rhs).ok_or(FedvrError::SingularSystem { ratio })?;
    let edge_coeff = |beta: &DVector<f64>| {
        let l = |i: usize| Dd {
            hi: sys.slope_start[i],
            lo: sys.slope_start_lo[i],
        };
        let f12_beta: Dd = (0..dim).map(|q| l(q + 2).mul(Dd::new(beta[q]))).sum();
        (Dd::new(gamma.slope) - l(0).mul(Dd::new(gamma.value)) - f12_beta)
            .div(l(1))
            .to_f64()
    };
    // Iterative refinement against the hi + lo matrix.
    for _ in 0..REFINEMENT_STEPS {
        let mut coeffs = vec![gamma.value, edge_coeff(&beta)];
        coeffs.extend(beta.iter());
        let residual = DVector::from_fn(dim, |p, _| {
            let r: Dd = (0..n)
                .map(|j| {
                    let e = sys.entry(p + 2, j);
                    Dd::prod(e.hi, coeffs[j]) + Dd::new(e.lo * coeffs[j])
                })
                .sum();
            -r.to_f64()
        });
        match lu.solve(&residual) {
            Some(step) => beta += step,
            None => break,
        }
    }

    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(gamma.value);
    coeffs.push(edge_coeff(&beta));
    coeffs.extend(beta.iter());

    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(FedvrError::Numerical(
            "non-finite partition coefficients".into(),
        ));
    }
    let slope = (0..n)
        .map(|i| {
            Dd {
                hi: sys.slope_end[i],
                lo: sys.slope_end_lo[i],
            }
            .mul(Dd::new(coeffs[i]))
        })
        .sum::<Dd>()
        .to_f64();
    Ok((coeffs, slope))
}

/// The solution restricted to one partition.
#[derive(Debug, Clone)]
pub struct PartitionSolution {
    grid: Arc<LobattoGrid>,
    map: AffineMap,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    coeffs: Vec<f64>,
    slope_end: f64,
}

impl PartitionSolution {
    fn new(grid: Arc<LobattoGrid>, sys: &LocalSystem, coeffs: Vec<f64>, slope_end: f64) -> Self {
        Self {
            grid,
            map: sys.map,
            nodes: sys.nodes.clone(),
            weights: sys.weights.clone(),
            coeffs,
            slope_end,
        }
    }

    pub fn start(&self) -> f64 {
        self.map.start()
    }

    pub fn end(&self) -> f64 {
        self.map.end()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn grid(&self) -> &LobattoGrid {
        &self.grid
    }

    /// Mapped node positions in fm.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Mapped quadrature weights in fm.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Expansion coefficients, equal to the solution at the nodes.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `A^(J)`: slope at the right edge.
    pub fn slope_end(&self) -> f64 {
        self.slope_end
    }

    /// `sum_i c_i l_i'(b1)`.
    pub fn slope_start(&self) -> f64 {
        let d = self.grid.diff_matrix();
        let s = self.map.scale();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * d[(0, i)] / s)
            .sum()
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= self.start() && r <= self.end()
    }

    pub fn value_at(&self, r: f64) -> f64 {
        self.grid
            .interpolate(&self.coeffs, self.map.inverse(r))
            .expect("coefficients match the grid order")
    }

    pub fn derivative_at(&self, r: f64) -> f64 {
        self.grid
            .interpolate_derivative(&self.coeffs, self.map.inverse(r))
            .expect("coefficients match the grid order")
            / self.map.scale()
    }

    fn scale(&mut self, factor: f64) {
        self.coeffs.iter_mut().for_each(|c| *c *= factor);
        self.slope_end *= factor;
    }
}

/// Piecewise Lagrange-Lobatto solution on `[0, R_max]`.
#[derive(Debug, Clone)]
pub struct WaveSolution {
    k: f64,
    partitions: Vec<PartitionSolution>,
    normalized: bool,
}

impl WaveSolution {
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn partitions(&self) -> &[PartitionSolution] {
        &self.partitions
    }

    pub fn r_max(&self) -> f64 {
        self.partitions.last().map_or(0.0, |p| p.end())
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Value at the last node.
    pub fn last_value(&self) -> f64 {
        *self.partitions.last().unwrap().coeffs.last().unwrap()
    }

    /// Slope at `R_max`.
    pub fn last_slope(&self) -> f64 {
        self.partitions.last().unwrap().slope_end
    }

    fn partition_containing(&self, r: f64) -> Option<&PartitionSolution> {
        self.partitions.iter().find(|p| p.contains(r))
    }

    /// Interpolated value, `None` outside `[0, R_max]`.
    pub fn value_at(&self, r: f64) -> Option<f64> {
        self.partition_containing(r).map(|p| p.value_at(r))
    }

    pub fn derivative_at(&self, r: f64) -> Option<f64> {
        self.partition_containing(r).map(|p| p.derivative_at(r))
    }

    /// `(r, W, psi)` at every node of every partition, shared endpoints repeated.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.partitions.iter().flat_map(|p| {
            p.nodes
                .iter()
                .zip(&p.weights)
                .zip(&p.coeffs)
                .map(|((&r, &w), &c)| (r, w, c))
        })
    }

    /// Every coefficient multiplied by `factor`; the normalization flag is cleared.
    pub fn scaled(&self, factor: f64) -> WaveSolution {
        let mut out = self.clone();
        out.partitions.iter_mut().for_each(|p| p.scale(factor));
        out.normalized = false;
        out
    }

    pub(crate) fn into_normalized(mut self, factor: f64) -> WaveSolution {
        self.partitions.iter_mut().for_each(|p| p.scale(factor));
        self.normalized = true;
        self
    }

    /// Largest value mismatch `|c_1^(J) - c_N^(J-1)|` and largest relative slope
    /// mismatch over all partition boundaries.
    pub fn continuity_defects(&self) -> (f64, f64) {
        let mut value: f64 = 0.0;
        let mut slope: f64 = 0.0;
        for pair in self.partitions.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            value = value.max((next.coeffs[0] - prev.coeffs[prev.order() - 1]).abs());
            let a = prev.slope_end;
            slope = slope.max((next.slope_start() - a).abs() / a.abs().max(1.0));
        }
        (value, slope)
    }
}

/// Cache of reference grids keyed by order; grids are rescaled per partition.
#[derive(Debug, Default)]
pub struct GridCache {
    grids: HashMap<usize, Arc<LobattoGrid>>,
}

impl GridCache {
    pub fn get(&mut self, order: usize) -> Result<Arc<LobattoGrid>> {
        if let Some(g) = self.grids.get(&order) {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(LobattoGrid::new(order)?);
        self.grids.insert(order, Arc::clone(&g));
        Ok(g)
    }
}

fn check_seed(a0: f64) -> Result<()> {
    if a0 == 0.0 || !a0.is_finite() {
        return Err(FedvrError::Domain(format!(
            "seed slope A0 = {a0} must be finite and nonzero"
        )));
    }
    Ok(())
}

/// Sweep the mesh left to right from `psi(0) = 0`, `psi'(0) = a0`.
pub fn solve_mesh(mesh: &Mesh, potential: &Potential, k: f64, a0: f64) -> Result<WaveSolution> {
    let mut cache = GridCache::default();
    solve_mesh_with_cache(mesh, potential, k, a0, &mut cache)
}

pub fn solve_mesh_with_cache(
    mesh: &Mesh,
    potential: &Potential,
    k: f64,
    a0: f64,
    cache: &mut GridCache,
) -> Result<WaveSolution> {
    check_seed(a0)?;
    check_wavenumber(k)?;
    let mut gamma = EdgeValues {
        value: 0.0,
        slope: a0,
    };
    let mut partitions = Vec::with_capacity(mesh.len());
    for (j, p) in mesh.partitions().iter().enumerate() {
        let annotate = |e: FedvrError| e.in_partition(j + 1);
        let grid = cache.get(p.order).map_err(annotate)?;
        let map = AffineMap::new(p.start, p.end).map_err(annotate)?;
        let sys = assemble_local(&grid, map, potential, k).map_err(annotate)?;
        let (coeffs, slope) = propagate_partition(&sys, gamma).map_err(annotate)?;
        gamma = EdgeValues {
            value: *coeffs.last().unwrap(),
            slope,
        };
        partitions.push(PartitionSolution::new(grid, &sys, coeffs, slope));
    }
    Ok(WaveSolution {
        k,
        partitions,
        normalized: false,
    })
}

/// One partition over `[0, R_max]` with a nonlocal kernel.
pub fn solve_nonlocal(
    grid: &LobattoGrid,
    map: AffineMap,
    kernel: &KernelSpec,
    k: f64,
    a0: f64,
) -> Result<WaveSolution> {
    check_seed(a0)?;
    if map.start() != 0.0 {
        return Err(FedvrError::InvalidMesh(format!(
            "nonlocal partition must start at 0, not {}",
            map.start()
        )));
    }
    if grid.order() < MIN_SOLVER_ORDER {
        return Err(FedvrError::InvalidOrder {
            order: grid.order(),
            min: MIN_SOLVER_ORDER,
        });
    }
    let sys = assemble_nonlocal(grid, map, kernel, k)?;
    let (coeffs, slope) = propagate_partition(
        &sys,
        EdgeValues {
            value: 0.0,
            slope: a0,
        },
    )?;
    Ok(WaveSolution {
        k,
        partitions: vec![PartitionSolution::new(
            Arc::new(grid.clone()),
            &sys,
            coeffs,
            slope,
        )],
        normalized: false,
    })
}

/// Largest relative Galerkin residual `|(M c)_i| / (||M|| ||c||)` over the rows
/// `i = 3..N` of every partition (rows 1-2 are replaced by continuity).
pub fn galerkin_residual(
    mesh: &Mesh,
    potential: &Potential,
    k: f64,
    solution: &WaveSolution,
) -> Result<f64> {
    let mut cache = GridCache::default();
    let mut worst: f64 = 0.0;
    for (j, (p, part)) in mesh
        .partitions()
        .iter()
        .zip(solution.partitions())
        .enumerate()
    {
        let grid = cache.get(p.order).map_err(|e| e.in_partition(j + 1))?;
        let map = AffineMap::new(p.start, p.end)?;
        let sys = assemble_local(&grid, map, potential, k).map_err(|e| e.in_partition(j + 1))?;
        let c = DVector::from_column_slice(part.coeffs());
        let scale = sys.matrix.norm() * c.norm();
        if scale == 0.0 {
            continue;
        }
        let residual = &sys.matrix * &c;
        for i in 2..sys.order() {
            worst = worst.max(residual[i].abs() / scale);
        }
    }
    Ok(worst)
}
