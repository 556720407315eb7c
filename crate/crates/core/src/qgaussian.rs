//! The generalized q-Gaussian family that maximizes the `(a, lambda)`-entropy
//! under an escort-mean constraint on `|x|^p`:
//!
//! ```text
//! G(x) = (1 - (lambda - a) beta |x|^p)_+^(1/(lambda - a)) / Z(beta)   lambda != a
//! G(x) = exp(-beta |x|^p) / Z(beta)                                   lambda == a
//! ```
//!
//! The support is `[-s, s]` with `s = ((lambda - a) beta)^(-1/p)` when
//! `lambda > a` and the whole line otherwise (power tails for `lambda < a`).
//! The shape depends on `(a, lambda)` only through `lambda - a`.

use crate::dist::{Density, GriddedDensity, ParamPair};
use crate::error::{Error, Result};
use crate::special::{ln_beta, ln_gamma_pos};

/// `|lambda - a|` at or below this is treated as the exponential branch.
pub const DIAGONAL_TOL: f64 = 1e-8;

/// Largest accepted truncated tail mass for full-line grids.
pub const MAX_TAIL_BOUND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    Compact { lo: f64, hi: f64 },
    FullLine,
}

/// Which classical maxent problem a q-Gaussian solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    /// Standard mean `m_{p,1}[f] = m`: exponent `1/(q - 1)`.
    StandardConstraint,
    /// Escort mean `m_{p,q}[f] = m`: exponent `1/(1 - q)`.
    EscortConstraint,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")))
    }
}

// lambda - a, snapped to zero on the diagonal.
fn effective_gap(params: ParamPair) -> f64 {
    let d = params.gap();
    if d.abs() <= DIAGONAL_TOL {
        0.0
    } else {
        d
    }
}

/// Region where `Z(beta)` is finite: `lambda > a`, `lambda = a`, or
/// `a > lambda > a - p`.
pub fn check_partition_region(params: ParamPair, p: f64) -> Result<()> {
    positive("p", p)?;
    let d = effective_gap(params);
    if d < 0.0 && -d >= p {
        return Err(Error::PartitionDiverges(format!(
            "need lambda > a - p, got a = {}, lambda = {}, p = {p}",
            params.a(),
            params.lambda()
        )));
    }
    Ok(())
}

/// Full validity predicate: finite partition function and finite `a`-moment,
/// i.e. `p a + (p + 1)(lambda - a) > 0` on top of [`check_partition_region`].
pub fn validity(params: ParamPair, p: f64) -> Result<()> {
    check_partition_region(params, p)?;
    moment_denominator(params, p).map(|_| ())
}

// p a + (p + 1)(lambda - a); equals beta p (lambda - a)(a/(lambda - a) + 1/p + 1) / beta.
fn moment_denominator(params: ParamPair, p: f64) -> Result<f64> {
    let d = effective_gap(params);
    let den = p * params.a() + (p + 1.0) * d;
    if den > 0.0 {
        Ok(den)
    } else {
        Err(Error::AMomentDiverges(format!(
            "p a + (p + 1)(lambda - a) = {den} <= 0 for a = {}, lambda = {}, p = {p}",
            params.a(),
            params.lambda()
        )))
    }
}

/// `ln Z(beta)`.
pub fn ln_partition_function(params: ParamPair, p: f64, beta: f64) -> Result<f64> {
    positive("beta", beta)?;
    check_partition_region(params, p)?;
    let d = effective_gap(params);
    let inv_p = 1.0 / p;
    let head = (2.0 / p).ln() - inv_p * beta.ln();
    let branch = if d > 0.0 {
        -inv_p * d.ln() + ln_beta(inv_p, 1.0 / d + 1.0)
    } else if d < 0.0 {
        let e = -d;
        let y = 1.0 / e - inv_p;
        if y <= 0.0 {
            return Err(Error::InvalidRegion(format!(
                "Beta argument 1/(a - lambda) - 1/p = {y} <= 0"
            )));
        }
        -inv_p * e.ln() + ln_beta(inv_p, y)
    } else {
        ln_gamma_pos(inv_p)
    };
    Ok(head + branch)
}

/// Closed-form partition function `Z(beta)`.
pub fn partition_function(params: ParamPair, p: f64, beta: f64) -> Result<f64> {
    ln_partition_function(params, p, beta).map(f64::exp)
}

/// Closed-form generalized `a`-moment `m_{p,a}[G_beta]`:
/// `1 / (beta (p a + (p + 1)(lambda - a)))`, which is `1/(beta p a)` on the diagonal.
pub fn closed_form_moment(params: ParamPair, p: f64, beta: f64) -> Result<f64> {
    positive("beta", beta)?;
    check_partition_region(params, p)?;
    Ok(1.0 / (beta * moment_denominator(params, p)?))
}

/// Member of the family whose `a`-moment equals `m`. The moment is `C / beta`,
/// so the inversion is exact.
pub fn solve_beta(params: ParamPair, p: f64, m: f64) -> Result<GenGaussian> {
    positive("m", m)?;
    validity(params, p)?;
    let den = moment_denominator(params, p)?;
    let beta = 1.0 / (den * m);
    let g = GenGaussian::new(params, p, beta)?;
    let achieved = g.moment();
    if ((achieved - m) / m).abs() > 1e-12 {
        return Err(Error::RootFinding(format!(
            "moment inversion off: wanted {m}, got {achieved}"
        )));
    }
    Ok(g)
}

/// Classical q-Gaussian solutions: `(a, lambda) = (1, q)` under a standard
/// mean constraint, `(q, 1)` under an escort mean constraint.
pub fn classical_solution(kind: ConstraintKind, q: f64, p: f64, m: f64) -> Result<GenGaussian> {
    let params = match kind {
        ConstraintKind::StandardConstraint => ParamPair::new(1.0, q)?,
        ConstraintKind::EscortConstraint => ParamPair::new(q, 1.0)?,
    };
    solve_beta(params, p, m)
}

/// A validated member of the generalized Gaussian family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenGaussian {
    params: ParamPair,
    p: f64,
    beta: f64,
    z: f64,
    support: Support,
}

impl GenGaussian {
    pub fn new(params: ParamPair, p: f64, beta: f64) -> Result<Self> {
        positive("beta", beta)?;
        validity(params, p)?;
        let z = partition_function(params, p, beta)?;
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::PartitionDiverges(format!("Z = {z}")));
        }
        let d = effective_gap(params);
        let support = if d > 0.0 {
            let s = (d * beta).powf(-1.0 / p);
            Support::Compact { lo: -s, hi: s }
        } else {
            Support::FullLine
        };
        Ok(Self {
            params,
            p,
            beta,
            z,
            support,
        })
    }

    pub fn params(&self) -> ParamPair {
        self.params
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Partition function `Z(beta)`.
    pub fn z(&self) -> f64 {
        self.z
    }

    /// `A(beta) = 1 / Z(beta)`.
    pub fn norm(&self) -> f64 {
        1.0 / self.z
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn is_diagonal(&self) -> bool {
        effective_gap(self.params) == 0.0
    }

    /// Closed-form `a`-moment of order `p`.
    pub fn moment(&self) -> f64 {
        1.0 / (self.beta * (self.p * self.params.a() + (self.p + 1.0) * effective_gap(self.params)))
    }

    /// Unnormalized density `(1 - (lambda - a) beta |x|^p)_+^(1/(lambda - a))`.
    pub fn kernel(&self, x: f64) -> f64 {
        if let Support::Compact { hi, .. } = self.support {
            if x.abs() >= hi {
                return 0.0;
            }
        }
        let t = self.beta * x.abs().powf(self.p);
        let d = effective_gap(self.params);
        if d == 0.0 {
            (-t).exp()
        } else if d * t >= 1.0 {
            0.0
        } else {
            ((-d * t).ln_1p() / d).exp()
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        self.kernel(x) / self.z
    }

    /// Half width `L` of the grid `[-L, L]`: for the compact case the support
    /// edge, otherwise the smallest `L` at which the closed-form tail bound of
    /// each of `G`, `G^a`, `|x|^p G^a` and `G^lambda` is at most `tail_bound`
    /// of its total integral.
    pub fn truncation_half_width(&self, tail_bound: f64) -> Result<f64> {
        if let Support::Compact { hi, .. } = self.support {
            return Ok(hi);
        }
        if !(tail_bound > 0.0 && tail_bound <= MAX_TAIL_BOUND) {
            return Err(Error::InvalidParameter(format!(
                "tail bound must be in (0, {MAX_TAIL_BOUND}], got {tail_bound}"
            )));
        }
        let (a, lambda, p) = (self.params.a(), self.params.lambda(), self.p);
        let integrands = [(0.0, 1.0), (0.0, a), (p, a), (0.0, lambda)];
        let mut half = 0.0_f64;
        for (s, c) in integrands {
            let l = if self.is_diagonal() {
                exp_tail_cutoff(self.beta, p, s, c, tail_bound)
            } else {
                power_tail_cutoff(-effective_gap(self.params), self.beta, p, s, c, tail_bound)?
            };
            half = half.max(l);
        }
        Ok(half)
    }

    /// Samples the density on `n` uniform points over `[-L, L]` and renormalizes
    /// by quadrature.
    pub fn to_gridded(&self, n: usize, tail_bound: f64) -> Result<GriddedDensity> {
        if n < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 grid points, got {n}")));
        }
        let half = self.truncation_half_width(tail_bound)?;
        let raw = GriddedDensity::raw(-half, half, vec![0.0; n])?;
        let values = (0..n).map(|i| self.kernel(raw.point(i))).collect();
        raw.with_values(values).normalize()
    }
}

// Smallest L with Q((s+1)/p, c beta L^p) <= tol, using
// Gamma(nu, X) <= X^(nu-1) e^-X * max(1, X/(X - nu + 1)) for X > nu - 1.
fn exp_tail_cutoff(beta: f64, p: f64, s: f64, c: f64, tol: f64) -> f64 {
    let nu = (s + 1.0) / p;
    let ln_gamma_nu = ln_gamma_pos(nu);
    let ln_bound = |x: f64| {
        let corr = if nu > 1.0 { (x / (x - nu + 1.0)).ln() } else { 0.0 };
        (nu - 1.0) * x.ln() - x + corr - ln_gamma_nu
    };
    let target = tol.ln();
    let mut lo = (nu - 1.0).max(0.0) + 1.0;
    if ln_bound(lo) <= target {
        return (lo / (c * beta)).powf(1.0 / p);
    }
    let mut hi = 2.0 * lo;
    while ln_bound(hi) > target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if ln_bound(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    (hi / (c * beta)).powf(1.0 / p)
}

// Power tails: with e = a - lambda the integrand x^s (1 + e beta x^p)^(-c/e) is
// below x^s (e beta x^p)^(-c/e), whose tail from L is
// (e beta)^(-c/e) L^(-k) / k with k = p c / e - s - 1. The total integral over
// [0, inf) is (e beta)^(-nu) B(nu, c/e - nu) / p with nu = (s + 1)/p.
fn power_tail_cutoff(e: f64, beta: f64, p: f64, s: f64, c: f64, tol: f64) -> Result<f64> {
    let nu = (s + 1.0) / p;
    let k = p * c / e - s - 1.0;
    if k <= 0.0 || c / e - nu <= 0.0 {
        return Err(Error::MomentDiverges);
    }
    let eb = e * beta;
    let ln_total = -(p.ln()) - nu * eb.ln() + ln_beta(nu, c / e - nu);
    // (e beta)^(-c/e) L^(-k) / k = tol * total
    let ln_l = (-(c / e) * eb.ln() - k.ln() - tol.ln() - ln_total) / k;
    // The bound is loose near the origin; never cut inside the bulk.
    Ok(ln_l.exp().max(eb.powf(-1.0 / p)))
}
