//! Local potentials (in fm^-2) and nonlocal kernels (in fm^-3).

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{FedvrError, Result};

/// `strength * e^{-2 a (r - c)} - 2 strength * e^{-a (r - c)}`: a Morse well with
/// a repulsive core. The defaults reproduce `6 e^{-0.3 r + 1.2} [e^{-0.3 r + 1.2} - 2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseParams {
    pub strength: f64,
    pub decay: f64,
    pub center: f64,
}

impl Default for MorseParams {
    fn default() -> Self {
        Self {
            strength: 6.0,
            decay: 0.3,
            center: 4.0,
        }
    }
}

/// `-depth / (1 + e^{(r - radius) / diffuseness})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WoodsSaxonParams {
    pub depth: f64,
    pub radius: f64,
    pub diffuseness: f64,
}

impl Default for WoodsSaxonParams {
    fn default() -> Self {
        Self {
            depth: 3.36,
            radius: 3.5,
            diffuseness: 0.6,
        }
    }
}

pub type LocalFn = dyn Fn(f64) -> f64 + Send + Sync;
pub type KernelFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A local potential `V(r)`.
#[derive(Clone)]
pub enum Potential {
    Morse(MorseParams),
    WoodsSaxon(WoodsSaxonParams),
    Free,
    Tabulated(Arc<TabulatedPotential>),
    Custom(Arc<LocalFn>),
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Potential::Morse(p) => f.debug_tuple("Morse").field(p).finish(),
            Potential::WoodsSaxon(p) => f.debug_tuple("WoodsSaxon").field(p).finish(),
            Potential::Free => f.write_str("Free"),
            Potential::Tabulated(t) => write!(f, "Tabulated({} points)", t.len()),
            Potential::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl Potential {
    pub fn morse() -> Self {
        Potential::Morse(MorseParams::default())
    }

    pub fn woods_saxon() -> Self {
        Potential::WoodsSaxon(WoodsSaxonParams::default())
    }

    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Potential::Custom(Arc::new(f))
    }

    pub fn constant(value: f64) -> Self {
        Potential::custom(move |_| value)
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Potential::Free)
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(FedvrError::Domain(format!(
                "potential evaluated at r = {r}; r must be non-negative"
            )));
        }
        match self {
            Potential::Morse(p) => Ok(morse_value(p, r)),
            Potential::WoodsSaxon(p) => Ok(woods_saxon_value(p, r)),
            Potential::Free => Ok(0.0),
            Potential::Tabulated(t) => t.eval(r),
            Potential::Custom(f) => Ok(f(r)),
        }
    }
}

fn morse_value(p: &MorseParams, r: f64) -> f64 {
    let e = (-p.decay * (r - p.center)).exp();
    p.strength * e * (e - 2.0)
}

fn woods_saxon_value(p: &WoodsSaxonParams, r: f64) -> f64 {
    -p.depth / (1.0 + ((r - p.radius) / p.diffuseness).exp())
}

/// The default Morse potential.
pub fn eval_morse(r: f64) -> Result<f64> {
    Potential::morse().eval(r)
}

/// The default Woods-Saxon potential.
pub fn eval_woods_saxon(r: f64) -> Result<f64> {
    Potential::woods_saxon().eval(r)
}

/// Natural cubic spline through tabulated `(r, V)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    r: Vec<f64>,
    v: Vec<f64>,
    /// second derivatives at the knots
    m: Vec<f64>,
}

impl TabulatedPotential {
    pub fn new(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() {
            return Err(FedvrError::Table(format!(
                "{} radii but {} values",
                r.len(),
                v.len()
            )));
        }
        if r.len() < 2 {
            return Err(FedvrError::Table("need at least two points".into()));
        }
        if r.iter().chain(&v).any(|x| !x.is_finite()) {
            return Err(FedvrError::Table("non-finite entry".into()));
        }
        if r.windows(2).any(|p| p[1] <= p[0]) {
            return Err(FedvrError::Table("radii must be strictly ascending".into()));
        }
        let m = natural_spline_moments(&r, &v);
        Ok(Self { r, v, m })
    }

    /// Two whitespace-separated columns; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut r = Vec::new();
        let mut v = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 2 {
                return Err(FedvrError::Table(format!(
                    "line {}: expected 2 columns, found {}",
                    lineno + 1,
                    cols.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| FedvrError::Table(format!("line {}: '{s}': {e}", lineno + 1)))
            };
            r.push(parse(cols[0])?);
            v.push(parse(cols[1])?);
        }
        Self::new(r, v)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| FedvrError::Table(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        let (lo, hi) = (self.r[0], *self.r.last().unwrap());
        if r < lo || r > hi {
            return Err(FedvrError::Domain(format!(
                "r = {r} outside the tabulated range [{lo}, {hi}]"
            )));
        }
        let i = match self.r.partition_point(|&x| x <= r) {
            0 => 0,
            p => (p - 1).min(self.r.len() - 2),
        };
        let h = self.r[i + 1] - self.r[i];
        let a = (self.r[i + 1] - r) / h;
        let b = (r - self.r[i]) / h;
        Ok(a * self.v[i]
            + b * self.v[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0)
    }
}

fn natural_spline_moments(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    // Thomas algorithm on the interior equations.
    let mut diag = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut upper = vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = x[i] - x[i - 1];
        let h1 = x[i + 1] - x[i];
        let lower = h0 / 6.0;
        diag[i] = (h0 + h1) / 3.0;
        upper[i] = h1 / 6.0;
        rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        if i > 1 {
            let f = lower / diag[i - 1];
            diag[i] -= f * upper[i - 1];
            rhs[i] -= f * rhs[i - 1];
        }
    }
    for i in (1..n - 1).rev() {
        m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
    }
    m
}

/// A nonlocal kernel `K(r, r')`.
#[derive(Clone)]
pub struct KernelSpec {
    func: Arc<KernelFn>,
    symmetric: bool,
    range: f64,
}

impl fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KernelSpec")
            .field("symmetric", &self.symmetric)
            .field("range", &self.range)
            .finish_non_exhaustive()
    }
}

impl KernelSpec {
    /// `range` is the separation `|r - r'|` beyond which the kernel is treated as zero
    /// (`f64::INFINITY` to always evaluate).
    pub fn new(
        func: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        symmetric: bool,
        range: f64,
    ) -> Self {
        Self {
            func: Arc::new(func),
            symmetric,
            range,
        }
    }

    pub fn zero() -> Self {
        Self::new(|_, _| 0.0, true, 0.0)
    }

    /// `V0 H((r + r')/2) exp(-(r - r')^2 / beta^2) / (beta sqrt(pi))`.
    pub fn gaussian(strength: f64, beta: f64, shape: Potential) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(FedvrError::Domain(format!(
                "Gaussian nonlocality range beta = {beta} must be positive"
            )));
        }
        let norm = strength / (beta * std::f64::consts::PI.sqrt());
        let func = move |r: f64, rp: f64| {
            if strength == 0.0 {
                return 0.0;
            }
            let u = (r - rp) / beta;
            match shape.eval(0.5 * (r + rp)) {
                Ok(h) => norm * h * (-u * u).exp(),
                Err(_) => f64::NAN,
            }
        };
        // exp(-u^2) < 1e-17 for u > 6.3
        Ok(Self::new(func, true, 6.3 * beta))
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn eval(&self, r: f64, rp: f64) -> f64 {
        if (r - rp).abs() > self.range {
            0.0
        } else {
            (self.func)(r, rp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn morse_values() {
        assert_eq!(eval_morse(4.0).unwrap(), -6.0);
        // 6 e^{1.2} (e^{1.2} - 2), evaluated independently
        let e = 1.2f64.exp();
        let expected = 6.0 * e * (e - 2.0);
        assert!((eval_morse(0.0).unwrap() - expected).abs() < 1e-13);
        assert!((expected - 26.2977).abs() < 1e-4);
        assert!(eval_morse(100.0).unwrap().abs() < 5e-12);
        assert!(matches!(eval_morse(-0.1), Err(FedvrError::Domain(_))));
    }

    #[test]
    fn woods_saxon_values() {
        assert!((eval_woods_saxon(3.5).unwrap() + 1.68).abs() < 1e-15);
        let at20 = eval_woods_saxon(20.0).unwrap();
        // 3.36 / (1 + e^{27.5}), about 3.83e-12
        let tail = 3.36 / (1.0 + 27.5f64.exp());
        assert!((at20 + tail).abs() < 1e-12 * tail, "{at20}");
        assert!(at20.abs() < 1e-11, "{at20}");
        let expected = -3.36 / (1.0 + (-35.0f64 / 6.0).exp());
        assert!((eval_woods_saxon(0.0).unwrap() - expected).abs() < 1e-15);
        assert!((expected + 3.350190).abs() < 1e-6);
        assert!(eval_woods_saxon(-1.0).is_err());
    }

    #[test]
    fn morse_shape() {
        let v = Potential::morse();
        let samples: Vec<(f64, f64)> = (1..=200_000)
            .map(|i| {
                let r = i as f64 * 1e-4;
                (r, v.eval(r).unwrap())
            })
            .collect();
        let sign_changes = samples
            .windows(2)
            .filter(|p| p[0].1.signum() != p[1].1.signum())
            .count();
        assert_eq!(sign_changes, 1);
        let (rmin, vmin) = samples
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((vmin + 6.0).abs() < 1e-12);
        assert!((rmin - 4.0).abs() < 1e-6);
    }

    #[test]
    fn monotonic_tails() {
        let ws = Potential::woods_saxon();
        let m = Potential::morse();
        let mut prev_ws = ws.eval(0.0).unwrap();
        let mut prev_tail = (f64::INFINITY, f64::INFINITY);
        for i in 1..=2000 {
            let r = i as f64 * 0.05;
            let w = ws.eval(r).unwrap();
            assert!(w >= prev_ws);
            prev_ws = w;
            if r > 10.0 {
                let tail = (w.abs(), m.eval(r).unwrap().abs());
                assert!(tail.0 <= prev_tail.0 && tail.1 <= prev_tail.1);
                prev_tail = tail;
            }
        }
    }

    #[test]
    fn tabulated_spline() {
        let text = "# r V\n0 0\n1 1\n2 8\n3 27 # cubic\n4 64\n";
        let t = TabulatedPotential::parse(text).unwrap();
        assert_eq!(t.eval(2.0).unwrap(), 8.0);
        assert!((t.eval(2.5).unwrap() - 15.625).abs() < 0.5);
        assert!(t.eval(4.5).is_err());
        assert!(TabulatedPotential::parse("0 1\n0 2\n").is_err());
        assert!(TabulatedPotential::parse("0 1 2\n").is_err());
        // linear data is reproduced exactly by a natural spline
        let lin =
            TabulatedPotential::new(vec![0.0, 0.5, 2.0, 3.0], vec![1.0, 2.0, 5.0, 7.0]).unwrap();
        assert!((lin.eval(1.25).unwrap() - 3.5).abs() < 1e-14);
    }

    #[test]
    fn gaussian_kernel_basics() {
        let k = KernelSpec::gaussian(1.0, 0.8, Potential::woods_saxon()).unwrap();
        assert!(k.is_symmetric());
        assert_eq!(k.eval(2.0, 3.0), k.eval(3.0, 2.0));
        let zero = KernelSpec::gaussian(0.0, 0.8, Potential::woods_saxon()).unwrap();
        assert_eq!(zero.eval(1.0, 1.2), 0.0);
        assert!(KernelSpec::gaussian(1.0, 0.0, Potential::Free).is_err());
        assert!(KernelSpec::gaussian(1.0, -1.0, Potential::Free).is_err());
    }

    #[test]
    fn gaussian_kernel_narrow_limit() {
        // row integral of the kernel by a fine composite Simpson rule
        let k = KernelSpec::gaussian(1.0, 0.05, Potential::woods_saxon()).unwrap();
        for r in [1.0, 3.5, 5.0] {
            let (a, b, n) = (r - 1.0, r + 1.0, 4000);
            let h = (b - a) / n as f64;
            let mut s = k.eval(r, a) + k.eval(r, b);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                s += w * k.eval(r, a + i as f64 * h);
            }
            let integral = s * h / 3.0;
            let local = eval_woods_saxon(r).unwrap();
            assert!(((integral - local) / local).abs() < 0.01, "r={r}");
        }
    }
}
