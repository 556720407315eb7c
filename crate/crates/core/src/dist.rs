//! Probability distributions over a finite set of atoms (counting measure)
//! and densities sampled on a uniform 1-D grid (Lebesgue measure realized by
//! composite trapezoid quadrature).
//!
//! Both representations expose the same view through [`Density`]: a list of
//! support points, a nonnegative value per point, and a quadrature weight per
//! point. Every integral in the crate is `sum_i weight_i * integrand_i`, so the
//! information measures and escort transforms are written once for both.

use crate::error::{Error, Result};

/// Discrete normalization tolerance.
pub const DISCRETE_NORM_TOL: f64 = 1e-12;
/// Gridded normalization tolerance.
pub const GRIDDED_NORM_TOL: f64 = 1e-10;

// A mass this close to one is left untouched by `normalize`, which makes the
// operation idempotent bit-for-bit.
const IDEMPOTENT_TOL: f64 = 1e-14;

/// Neumaier-compensated summation.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Common view over discrete and gridded representations.
pub trait Density: Clone + Sized {
    /// Nonnegative value per support point (probability or density).
    fn values(&self) -> &[f64];

    /// Observable value of the `i`-th support point.
    fn point(&self, i: usize) -> f64;

    /// Quadrature weight of the `i`-th support point (1 for counting measure).
    fn weight(&self, i: usize) -> f64;

    /// A copy carrying `values` on the same support. No invariants are checked.
    fn with_values(&self, values: Vec<f64>) -> Self;

    /// Whether both objects live on the same support (same atoms, or same grid).
    fn same_support(&self, other: &Self) -> bool;

    /// Checks every type invariant, naming the first violated one.
    fn validate(&self) -> Result<()>;

    /// Tolerance under which the representation counts as normalized.
    fn norm_tol(&self) -> f64;

    fn len(&self) -> usize {
        self.values().len()
    }

    fn is_empty(&self) -> bool {
        self.values().is_empty()
    }

    fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Integral of a per-point integrand against the underlying measure.
    fn integrate(&self, integrand: &[f64]) -> Result<f64> {
        if integrand.len() != self.len() {
            return Err(Error::LengthMismatch {
                points: self.len(),
                values: integrand.len(),
            });
        }
        if integrand.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteIntegrand);
        }
        Ok(compensated_sum(
            integrand.iter().enumerate().map(|(i, v)| self.weight(i) * v),
        ))
    }

    /// Total mass of the stored values.
    fn mass(&self) -> Result<f64> {
        self.integrate(self.values())
    }

    /// Rescales the values to unit mass.
    fn normalize(&self) -> Result<Self> {
        for (index, &value) in self.values().iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::DegenerateDensity(value));
            }
            if value < 0.0 {
                return Err(Error::NegativeMass { index, value });
            }
        }
        let mut out = self.clone();
        for _ in 0..4 {
            let mass = out.mass().map_err(|_| Error::DegenerateDensity(f64::NAN))?;
            if !(mass.is_finite() && mass > 0.0) {
                return Err(Error::DegenerateDensity(mass));
            }
            if (mass - 1.0).abs() <= IDEMPOTENT_TOL {
                break;
            }
            let values = out.values().iter().map(|v| v / mass).collect();
            out = out.with_values(values);
        }
        Ok(out)
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteValue(index));
        }
        if value < 0.0 {
            return Err(Error::NegativeMass { index, value });
        }
    }
    Ok(())
}

/// Probability vector attached to distinct real observable values.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDist {
    points: Vec<f64>,
    probs: Vec<f64>,
}

impl DiscreteDist {
    /// Builds a fully validated distribution.
    pub fn new(points: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        let d = Self { points, probs };
        d.validate()?;
        Ok(d)
    }

    /// Builds an object without checking any invariant. Use [`Density::normalize`]
    /// or [`Density::validate`] before handing it to the measures.
    pub fn raw(points: Vec<f64>, probs: Vec<f64>) -> Self {
        Self { points, probs }
    }

    /// Normalizes nonnegative weights into a distribution.
    pub fn from_weights(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        let d = Self::raw(points, weights).normalize()?;
        d.validate()?;
        Ok(d)
    }

    /// Distribution on the atoms `0, 1, ..., n-1`.
    pub fn on_integers(probs: Vec<f64>) -> Result<Self> {
        let points = (0..probs.len()).map(|i| i as f64).collect();
        Self::new(points, probs)
    }

    pub fn uniform(points: Vec<f64>) -> Result<Self> {
        let n = points.len();
        Self::new(points, vec![1.0 / n as f64; n])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn atoms(&self) -> &[f64] {
        &self.points
    }
}

impl Density for DiscreteDist {
    fn values(&self) -> &[f64] {
        &self.probs
    }

    fn point(&self, i: usize) -> f64 {
        self.points[i]
    }

    fn weight(&self, _i: usize) -> f64 {
        1.0
    }

    fn with_values(&self, values: Vec<f64>) -> Self {
        Self {
            points: self.points.clone(),
            probs: values,
        }
    }

    fn same_support(&self, other: &Self) -> bool {
        self.points == other.points
    }

    fn norm_tol(&self) -> f64 {
        DISCRETE_NORM_TOL
    }

    fn validate(&self) -> Result<()> {
        if self.points.len() != self.probs.len() {
            return Err(Error::LengthMismatch {
                points: self.points.len(),
                values: self.probs.len(),
            });
        }
        if self.probs.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(i) = self.points.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteValue(i));
        }
        check_values(&self.probs)?;
        let mut sorted = self.points.clone();
        sorted.sort_by(f64::total_cmp);
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0]));
        }
        let mass = compensated_sum(self.probs.iter().copied());
        if (mass - 1.0).abs() > DISCRETE_NORM_TOL {
            return Err(Error::NotNormalized(mass));
        }
        Ok(())
    }
}

fn check_geometry(lo: f64, hi: f64, n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidGrid(format!(
            "need at least 3 grid points, got {n}"
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidGrid(format!("bounds [{lo}, {hi}]")));
    }
    Ok(())
}

/// Density sampled at `n` uniformly spaced points spanning `[lo, hi]`,
/// integrated with the composite trapezoid rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GriddedDensity {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
}

impl GriddedDensity {
    /// Builds a fully validated (normalized) density.
    pub fn new(lo: f64, hi: f64, values: Vec<f64>) -> Result<Self> {
        let d = Self::raw(lo, hi, values)?;
        d.validate()?;
        Ok(d)
    }

    /// Checks only the grid geometry; values may be unnormalized.
    pub fn raw(lo: f64, hi: f64, values: Vec<f64>) -> Result<Self> {
        check_geometry(lo, hi, values.len())?;
        Ok(Self { lo, hi, values })
    }

    /// Samples `f` on the grid and normalizes the result.
    pub fn from_fn<F: Fn(f64) -> f64>(lo: f64, hi: f64, n: usize, f: F) -> Result<Self> {
        let mut d = Self::raw(lo, hi, vec![0.0; n])?;
        d.values = (0..n).map(|i| f(d.point(i))).collect();
        d.normalize()
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.values.len() - 1) as f64
    }
}

impl Density for GriddedDensity {
    fn values(&self) -> &[f64] {
        &self.values
    }

    fn point(&self, i: usize) -> f64 {
        if i + 1 == self.values.len() {
            self.hi
        } else {
            self.lo + i as f64 * self.step()
        }
    }

    fn weight(&self, i: usize) -> f64 {
        let h = self.step();
        if i == 0 || i + 1 == self.values.len() {
            0.5 * h
        } else {
            h
        }
    }

    fn with_values(&self, values: Vec<f64>) -> Self {
        Self {
            lo: self.lo,
            hi: self.hi,
            values,
        }
    }

    fn same_support(&self, other: &Self) -> bool {
        self.lo == other.lo && self.hi == other.hi && self.values.len() == other.values.len()
    }

    fn norm_tol(&self) -> f64 {
        GRIDDED_NORM_TOL
    }

    fn validate(&self) -> Result<()> {
        check_geometry(self.lo, self.hi, self.values.len())?;
        check_values(&self.values)?;
        let mass = self.mass()?;
        if (mass - 1.0).abs() > GRIDDED_NORM_TOL {
            return Err(Error::NotNormalized(mass));
        }
        Ok(())
    }
}

/// Composite trapezoid approximation of the integral of `integrand` over the
/// grid of `d`.
pub fn quadrature(d: &GriddedDensity, integrand: &[f64]) -> Result<f64> {
    d.integrate(integrand)
}

/// Either representation, for callers (file readers, the CLI) that only learn
/// the kind at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Discrete(DiscreteDist),
    Gridded(GriddedDensity),
}

impl From<DiscreteDist> for Distribution {
    fn from(d: DiscreteDist) -> Self {
        Distribution::Discrete(d)
    }
}

impl From<GriddedDensity> for Distribution {
    fn from(d: GriddedDensity) -> Self {
        Distribution::Gridded(d)
    }
}

impl Density for Distribution {
    fn values(&self) -> &[f64] {
        match self {
            Distribution::Discrete(d) => d.values(),
            Distribution::Gridded(d) => d.values(),
        }
    }

    fn point(&self, i: usize) -> f64 {
        match self {
            Distribution::Discrete(d) => d.point(i),
            Distribution::Gridded(d) => d.point(i),
        }
    }

    fn weight(&self, i: usize) -> f64 {
        match self {
            Distribution::Discrete(d) => d.weight(i),
            Distribution::Gridded(d) => d.weight(i),
        }
    }

    fn with_values(&self, values: Vec<f64>) -> Self {
        match self {
            Distribution::Discrete(d) => d.with_values(values).into(),
            Distribution::Gridded(d) => d.with_values(values).into(),
        }
    }

    fn same_support(&self, other: &Self) -> bool {
        match (self, other) {
            (Distribution::Discrete(a), Distribution::Discrete(b)) => a.same_support(b),
            (Distribution::Gridded(a), Distribution::Gridded(b)) => a.same_support(b),
            _ => false,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Distribution::Discrete(d) => d.validate(),
            Distribution::Gridded(d) => d.validate(),
        }
    }

    fn norm_tol(&self) -> f64 {
        match self {
            Distribution::Discrete(d) => d.norm_tol(),
            Distribution::Gridded(d) => d.norm_tol(),
        }
    }
}

/// The entropic parameter pair `(a, lambda)`: entropic order `a` and escort
/// order `lambda`, both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPair {
    a: f64,
    lambda: f64,
}

impl ParamPair {
    pub fn new(a: f64, lambda: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter(format!("a must be > 0, got {a}")));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be > 0, got {lambda}"
            )));
        }
        Ok(Self { a, lambda })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Derived index `q = a / lambda`.
    pub fn q(&self) -> f64 {
        self.a / self.lambda
    }

    /// `lambda - a`, the exponent offset that shapes the maxent family.
    pub fn gap(&self) -> f64 {
        self.lambda - self.a
    }
}
