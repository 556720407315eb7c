//! Closed forms for the two-level system with energies 0 and 1.
//!
//! The state is the excited-state probability `p_exc`; the internal energy `m`
//! is its escort mean of order `a`. The `(a, lambda)`-entropy as a function of
//! `m` depends on the parameters only through `lambda / a` and reduces to the
//! Fermi-Dirac entropy on the diagonal.

use crate::dist::{DiscreteDist, ParamPair};
use crate::error::{Error, Result};

/// `|lambda - a|` at or below this uses the diagonal (Boltzmann / Fermi-Dirac) forms.
pub const DIAGONAL_TOL: f64 = 1e-8;

/// Central-difference step for the heat capacity.
pub const HEAT_CAPACITY_STEP: f64 = 1e-5;

fn is_diagonal(params: ParamPair) -> bool {
    params.gap().abs() <= DIAGONAL_TOL
}

fn logistic(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

fn open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDomain(format!("{name} must lie in (0, 1), got {v}")))
    }
}

// ln(x^r + (1 - x)^r), accurate when the result is near zero (r near 1).
fn ln_power_sum(x: f64, r: f64) -> f64 {
    let excess = x * ((r - 1.0) * x.ln()).exp_m1() + (1.0 - x) * ((r - 1.0) * (1.0 - x).ln()).exp_m1();
    excess.ln_1p()
}

fn binary_entropy(x: f64) -> f64 {
    -x * x.ln() - (1.0 - x) * (1.0 - x).ln()
}

/// Excited-state probability `(1+beta)^(1/(lambda-a)) / (1 + (1+beta)^(1/(lambda-a)))`;
/// on the diagonal the Boltzmann weight `e^-beta / (1 + e^-beta)`.
pub fn p_from_beta(params: ParamPair, beta: f64) -> Result<f64> {
    if !(beta.is_finite() && 1.0 + beta > 0.0) {
        return Err(Error::OutsideDomain(format!("need 1 + beta > 0, got beta = {beta}")));
    }
    let p = if is_diagonal(params) {
        logistic(-beta)
    } else {
        logistic(beta.ln_1p() / params.gap())
    };
    open_unit("p", p).map_err(|_| {
        Error::OutsideDomain(format!("probability saturates at beta = {beta}"))
    })?;
    Ok(p)
}

/// Internal energy `p^a / (p^a + (1-p)^a)`.
pub fn m_from_p(params: ParamPair, p: f64) -> Result<f64> {
    open_unit("p", p)?;
    Ok(logistic(params.a() * (p.ln() - (1.0 - p).ln())))
}

/// Inverse of [`m_from_p`]: `m^(1/a) / (m^(1/a) + (1-m)^(1/a))`.
pub fn p_from_m(params: ParamPair, m: f64) -> Result<f64> {
    open_unit("m", m)?;
    Ok(logistic((m.ln() - (1.0 - m).ln()) / params.a()))
}

/// `H_{a,lambda}(m) = a/(a-lambda) ln(m^(lambda/a) + (1-m)^(lambda/a))`, and the
/// Fermi-Dirac entropy `-m ln m - (1-m) ln(1-m)` on the diagonal.
pub fn entropy_of_m(params: ParamPair, m: f64) -> Result<f64> {
    open_unit("m", m)?;
    if is_diagonal(params) {
        return Ok(binary_entropy(m));
    }
    let r = params.lambda() / params.a();
    Ok(ln_power_sum(m, r) / (1.0 - r))
}

/// `(1/(lambda-a)) ln([p^a + (1-p)^a]^lambda [p^lambda + (1-p)^lambda]^-a)`.
pub fn entropy_of_state(params: ParamPair, p: f64) -> Result<f64> {
    open_unit("p", p)?;
    let (a, lambda) = (params.a(), params.lambda());
    if is_diagonal(params) {
        return Ok(binary_entropy(m_from_p(params, p)?));
    }
    Ok((lambda * ln_power_sum(p, a) - a * ln_power_sum(p, lambda)) / (lambda - a))
}

/// `dH/dm = (lambda/(a-lambda)) (m^(r-1) - (1-m)^(r-1)) / (m^r + (1-m)^r)` with
/// `r = lambda/a`; `ln((1-m)/m)` on the diagonal.
pub fn inverse_temperature(params: ParamPair, m: f64) -> Result<f64> {
    open_unit("m", m)?;
    if is_diagonal(params) {
        return Ok((1.0 - m).ln() - m.ln());
    }
    let r = params.lambda() / params.a();
    let (lm, lq) = (m.ln(), (1.0 - m).ln());
    let diff = ((r - 1.0) * lm).exp_m1() - ((r - 1.0) * lq).exp_m1();
    let sum = (r * lm).exp() + (r * lq).exp();
    Ok(r / (1.0 - r) * diff / sum)
}

/// Heat capacity `dm/dT = -beta^2 / (d beta / dm)` with `T = 1/beta`, where the
/// second derivative of the entropy comes from a central difference of the
/// analytic inverse temperature (step [`HEAT_CAPACITY_STEP`]).
pub fn heat_capacity(params: ParamPair, m: f64) -> Result<f64> {
    open_unit("m", m)?;
    let h = HEAT_CAPACITY_STEP;
    if m - h <= 0.0 || m + h >= 1.0 {
        return Err(Error::OutsideDomain(format!(
            "m = {m} too close to the boundary for step {h}"
        )));
    }
    let beta = inverse_temperature(params, m)?;
    let curvature =
        (inverse_temperature(params, m + h)? - inverse_temperature(params, m - h)?) / (2.0 * h);
    Ok(-beta * beta / curvature)
}

/// A two-level state with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelState {
    params: ParamPair,
    p_exc: f64,
    m: f64,
}

impl TwoLevelState {
    pub fn from_p(params: ParamPair, p_exc: f64) -> Result<Self> {
        let m = m_from_p(params, p_exc)?;
        open_unit("m", m)?;
        Ok(Self { params, p_exc, m })
    }

    pub fn from_m(params: ParamPair, m: f64) -> Result<Self> {
        let p_exc = p_from_m(params, m)?;
        open_unit("p", p_exc)?;
        Ok(Self { params, p_exc, m })
    }

    pub fn from_beta(params: ParamPair, beta: f64) -> Result<Self> {
        Self::from_p(params, p_from_beta(params, beta)?)
    }

    pub fn params(&self) -> ParamPair {
        self.params
    }

    pub fn p_exc(&self) -> f64 {
        self.p_exc
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn entropy(&self) -> f64 {
        entropy_of_m(self.params, self.m).expect("m validated at construction")
    }

    pub fn inverse_temperature(&self) -> f64 {
        inverse_temperature(self.params, self.m).expect("m validated at construction")
    }

    pub fn heat_capacity(&self) -> Result<f64> {
        heat_capacity(self.params, self.m)
    }

    /// The state as a distribution on the energies `{0, 1}`.
    pub fn distribution(&self) -> DiscreteDist {
        DiscreteDist::raw(vec![0.0, 1.0], vec![1.0 - self.p_exc, self.p_exc])
    }
}
