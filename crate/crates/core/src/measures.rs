//! Rényi and Tsallis entropies and divergences, their Kullback-Leibler and
//! Shannon limits, and the two-parameter `(a, lambda)` versions built on escort
//! distributions.
//!
//! Divergences return `f64::INFINITY` when absolute continuity fails or an
//! integral diverges; this is a value, not an error.
//!
//! Integrals of powers are accumulated in the log domain. When the log of an
//! integral is close to zero (the regime of near-identical distributions or
//! orders close to one) it is recomputed as `ln_1p` of a sum of `expm1` terms so
//! that the small result keeps its relative accuracy.

use crate::dist::{compensated_sum, Density, ParamPair};
use crate::error::{Error, Result};
use crate::escort::escort;

/// Below this distance from the diagonal (`|q - 1|` or `|a - lambda|`) the
/// analytic limit is returned instead of the 0/0 form.
pub const LIMIT_TOL: f64 = 1e-6;

// Switch to the expm1/ln_1p accumulation when |ln integral| is below this.
const SMALL_LOG: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Renyi,
    Tsallis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Entropy,
    Divergence,
}

/// Which of the four measure types is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureKind {
    pub family: Family,
    pub flavor: Flavor,
}

impl MeasureKind {
    pub fn name(&self) -> &'static str {
        match (self.family, self.flavor) {
            (Family::Renyi, Flavor::Entropy) => "renyi-entropy",
            (Family::Renyi, Flavor::Divergence) => "renyi-divergence",
            (Family::Tsallis, Flavor::Entropy) => "tsallis-entropy",
            (Family::Tsallis, Flavor::Divergence) => "tsallis-divergence",
        }
    }
}

fn check_order(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("order must be > 0, got {q}")))
    }
}

fn check_pair<D: Density>(f: &D, g: &D) -> Result<()> {
    if !f.same_support(g) {
        return Err(Error::IncompatibleSupports);
    }
    f.validate()?;
    g.validate()
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + compensated_sum(terms.iter().map(|t| (t - max).exp())).ln()
}

// Mass residual `integral f - 1`; zero up to rounding for valid inputs.
fn mass_residual<D: Density>(f: &D) -> f64 {
    compensated_sum(
        f.values()
            .iter()
            .enumerate()
            .map(|(i, v)| f.weight(i) * v),
    ) - 1.0
}

/// `ln M_q[f]`, accurate also when the result is close to zero.
fn ln_power_integral<D: Density>(f: &D, q: f64) -> Result<f64> {
    let vals = f.values();
    let logs: Vec<f64> = vals
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(i, &v)| f.weight(i).ln() + q * v.ln())
        .collect();
    let l = log_sum_exp(&logs);
    if !l.is_finite() {
        return Err(Error::GeneratingFunctionDiverges(q));
    }
    if l.abs() >= SMALL_LOG {
        return Ok(l);
    }
    // M_q - 1 = sum w f (f^(q-1) - 1) + (sum w f - 1)
    let excess = compensated_sum(
        vals.iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| f.weight(i) * v * ((q - 1.0) * v.ln()).exp_m1())
            .chain(std::iter::once(mass_residual(f))),
    );
    Ok(excess.ln_1p())
}

/// `ln integral f^q g^(1-q)`; `+inf` when `q > 1` and `g` vanishes where `f`
/// does not, `-inf` when the integrand vanishes identically.
fn ln_cross_integral<D: Density>(f: &D, g: &D, q: f64) -> f64 {
    let (fv, gv) = (f.values(), g.values());
    let mut logs = Vec::with_capacity(fv.len());
    for i in 0..fv.len() {
        if fv[i] == 0.0 {
            continue;
        }
        if gv[i] == 0.0 {
            if q > 1.0 {
                return f64::INFINITY;
            }
            continue;
        }
        logs.push(f.weight(i).ln() + q * fv[i].ln() + (1.0 - q) * gv[i].ln());
    }
    let l = log_sum_exp(&logs);
    if !l.is_finite() || l.abs() >= SMALL_LOG {
        return l;
    }
    let excess = compensated_sum(
        (0..fv.len())
            .filter(|&i| fv[i] > 0.0)
            .map(|i| {
                let wf = f.weight(i) * fv[i];
                if gv[i] == 0.0 {
                    -wf
                } else {
                    wf * ((1.0 - q) * (gv[i].ln() - fv[i].ln())).exp_m1()
                }
            })
            .chain(std::iter::once(mass_residual(f))),
    );
    excess.ln_1p()
}

/// Shannon entropy `-integral f ln f` (differential entropy on a grid).
pub fn shannon_entropy<D: Density>(f: &D) -> Result<f64> {
    f.validate()?;
    Ok(shannon_unchecked(f))
}

fn shannon_unchecked<D: Density>(f: &D) -> f64 {
    -compensated_sum(
        f.values()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| f.weight(i) * v * v.ln()),
    )
}

/// Kullback-Leibler divergence `integral f ln(f/g)`.
pub fn kl_divergence<D: Density>(f: &D, g: &D) -> Result<f64> {
    check_pair(f, g)?;
    Ok(kl_unchecked(f, g))
}

fn kl_unchecked<D: Density>(f: &D, g: &D) -> f64 {
    let (fv, gv) = (f.values(), g.values());
    if (0..fv.len()).any(|i| fv[i] > 0.0 && gv[i] == 0.0) {
        return f64::INFINITY;
    }
    compensated_sum(
        (0..fv.len())
            .filter(|&i| fv[i] > 0.0)
            .map(|i| f.weight(i) * fv[i] * (fv[i].ln() - gv[i].ln())),
    )
}

fn renyi_div_unchecked<D: Density>(f: &D, g: &D, q: f64) -> f64 {
    if (q - 1.0).abs() <= LIMIT_TOL {
        return kl_unchecked(f, g);
    }
    let l = ln_cross_integral(f, g, q);
    if l.is_infinite() {
        return f64::INFINITY;
    }
    l / (q - 1.0)
}

/// Rényi divergence of order `q`: `ln(integral f^q g^(1-q)) / (q - 1)`.
pub fn renyi_divergence<D: Density>(f: &D, g: &D, q: f64) -> Result<f64> {
    check_order(q)?;
    check_pair(f, g)?;
    Ok(renyi_div_unchecked(f, g, q))
}

/// Tsallis divergence of order `q`: `(integral f^q g^(1-q) - 1) / (q - 1)`.
pub fn tsallis_divergence<D: Density>(f: &D, g: &D, q: f64) -> Result<f64> {
    check_order(q)?;
    check_pair(f, g)?;
    if (q - 1.0).abs() <= LIMIT_TOL {
        return Ok(kl_unchecked(f, g));
    }
    let l = ln_cross_integral(f, g, q);
    if l == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok(l.exp_m1() / (q - 1.0))
}

/// Rényi entropy of order `q`: `ln M_q[f] / (1 - q)`.
pub fn renyi_entropy<D: Density>(f: &D, q: f64) -> Result<f64> {
    check_order(q)?;
    f.validate()?;
    if (q - 1.0).abs() <= LIMIT_TOL {
        return Ok(shannon_unchecked(f));
    }
    Ok(ln_power_integral(f, q)? / (1.0 - q))
}

/// Tsallis entropy of order `q`: `(M_q[f] - 1) / (1 - q)`.
pub fn tsallis_entropy<D: Density>(f: &D, q: f64) -> Result<f64> {
    check_order(q)?;
    f.validate()?;
    if (q - 1.0).abs() <= LIMIT_TOL {
        return Ok(shannon_unchecked(f));
    }
    Ok(ln_power_integral(f, q)?.exp_m1() / (1.0 - q))
}

fn escort_pair<D: Density>(f: &D, g: &D, lambda: f64) -> Result<(D, D)> {
    Ok((escort(f, lambda)?, escort(g, lambda)?))
}

/// `(a, lambda)`-Rényi divergence: the order-`a/lambda` Rényi divergence
/// between the order-`lambda` escorts of `f` and `g`.
pub fn al_renyi_divergence<D: Density>(f: &D, g: &D, params: ParamPair) -> Result<f64> {
    check_pair(f, g)?;
    let (fe, ge) = escort_pair(f, g, params.lambda())?;
    if params.gap().abs() <= LIMIT_TOL {
        return Ok(kl_unchecked(&fe, &ge));
    }
    Ok(renyi_div_unchecked(&fe, &ge, params.q()))
}

/// `(a, lambda)`-Tsallis divergence `(R - 1) / (a - lambda)`, where `ln R` is
/// `(a - lambda)` times the `(a, lambda)`-Rényi divergence.
pub fn al_tsallis_divergence<D: Density>(f: &D, g: &D, params: ParamPair) -> Result<f64> {
    let d = al_renyi_divergence(f, g, params)?;
    let k = -params.gap();
    if k.abs() <= LIMIT_TOL {
        return Ok(d);
    }
    if d == f64::INFINITY {
        // R is +inf for a > lambda and 0 for a < lambda.
        return Ok(if k > 0.0 { f64::INFINITY } else { -1.0 / k });
    }
    Ok((k * d).exp_m1() / k)
}

// Log-domain pieces of the developed form. Everything here is evaluated
// straight from f and g, without forming escorts.
struct Developed {
    // ln integral f^a g^(lambda - a)
    ln_cross: f64,
    // ln M_lambda[f], ln M_lambda[g]
    ln_mf: f64,
    ln_mg: f64,
}

fn developed_parts<D: Density>(f: &D, g: &D, params: ParamPair) -> Result<Developed> {
    let (a, lambda) = (params.a(), params.lambda());
    let (fv, gv) = (f.values(), g.values());
    let mut cross = Vec::with_capacity(fv.len());
    let mut cross_infinite = false;
    for i in 0..fv.len() {
        if fv[i] == 0.0 {
            continue;
        }
        if gv[i] == 0.0 {
            if lambda < a {
                cross_infinite = true;
            }
            continue;
        }
        cross.push(f.weight(i).ln() + a * fv[i].ln() + (lambda - a) * gv[i].ln());
    }
    let ln_m = |d: &D| -> Result<f64> {
        let logs: Vec<f64> = d
            .values()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| d.weight(i).ln() + lambda * v.ln())
            .collect();
        let l = log_sum_exp(&logs);
        if l.is_finite() {
            Ok(l)
        } else {
            Err(Error::GeneratingFunctionDiverges(lambda))
        }
    };
    Ok(Developed {
        ln_cross: if cross_infinite {
            f64::INFINITY
        } else {
            log_sum_exp(&cross)
        },
        ln_mf: ln_m(f)?,
        ln_mg: ln_m(g)?,
    })
}

// KL between the order-lambda escorts written directly in terms of f and g:
// lambda * integral f^lambda ln(f/g) / M_lambda[f] - ln M_lambda[f] + ln M_lambda[g].
fn developed_diagonal<D: Density>(f: &D, g: &D, lambda: f64) -> Result<f64> {
    let (fv, gv) = (f.values(), g.values());
    if (0..fv.len()).any(|i| fv[i] > 0.0 && gv[i] == 0.0) {
        return Ok(f64::INFINITY);
    }
    let mf = compensated_sum((0..fv.len()).filter(|&i| fv[i] > 0.0).map(|i| f.weight(i) * fv[i].powf(lambda)));
    let mg = compensated_sum((0..gv.len()).filter(|&i| gv[i] > 0.0).map(|i| g.weight(i) * gv[i].powf(lambda)));
    let num = compensated_sum(
        (0..fv.len())
            .filter(|&i| fv[i] > 0.0)
            .map(|i| f.weight(i) * fv[i].powf(lambda) * (fv[i].ln() - gv[i].ln())),
    );
    if !(mf.is_finite() && mf > 0.0 && mg.is_finite() && mg > 0.0) {
        return Err(Error::GeneratingFunctionDiverges(lambda));
    }
    Ok(lambda * num / mf - mf.ln() + mg.ln())
}

// ln R = lambda ln(cross) - a ln M_lambda[f] - (lambda - a) ln M_lambda[g]
fn developed_ln_ratio(parts: &Developed, params: ParamPair) -> f64 {
    let (a, lambda) = (params.a(), params.lambda());
    if parts.ln_cross == f64::INFINITY {
        return f64::INFINITY;
    }
    if parts.ln_cross == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    lambda * parts.ln_cross - a * parts.ln_mf - (lambda - a) * parts.ln_mg
}

/// `(a, lambda)`-Rényi divergence evaluated from the developed closed form
/// `ln{ [int f^a g^(l-a)]^l / ([int f^l]^a [int g^l]^(l-a)) } / (a - l)`.
///
/// Independent of the escort route in [`al_renyi_divergence`]; the two must
/// agree.
pub fn al_renyi_divergence_developed<D: Density>(f: &D, g: &D, params: ParamPair) -> Result<f64> {
    check_pair(f, g)?;
    if params.gap().abs() <= LIMIT_TOL {
        return developed_diagonal(f, g, params.lambda());
    }
    let parts = developed_parts(f, g, params)?;
    let ln_r = developed_ln_ratio(&parts, params);
    if ln_r.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(ln_r / (params.a() - params.lambda()))
}

/// `(a, lambda)`-Tsallis divergence from the developed closed form.
pub fn al_tsallis_divergence_developed<D: Density>(f: &D, g: &D, params: ParamPair) -> Result<f64> {
    check_pair(f, g)?;
    if params.gap().abs() <= LIMIT_TOL {
        return developed_diagonal(f, g, params.lambda());
    }
    let parts = developed_parts(f, g, params)?;
    let ln_r = developed_ln_ratio(&parts, params);
    let k = params.a() - params.lambda();
    if ln_r == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok(ln_r.exp_m1() / k)
}

// lambda ln M_a - a ln M_lambda
fn entropy_log_argument<D: Density>(f: &D, params: ParamPair) -> Result<f64> {
    let (a, lambda) = (params.a(), params.lambda());
    Ok(lambda * ln_power_integral(f, a)? - a * ln_power_integral(f, lambda)?)
}

/// `(a, lambda)`-Rényi entropy `ln([M_a]^lambda [M_lambda]^-a) / (lambda - a)`:
/// the order-`a/lambda` Rényi entropy of the order-`lambda` escort.
pub fn al_renyi_entropy<D: Density>(f: &D, params: ParamPair) -> Result<f64> {
    f.validate()?;
    if params.gap().abs() <= LIMIT_TOL {
        return Ok(shannon_unchecked(&escort(f, params.lambda())?));
    }
    Ok(entropy_log_argument(f, params)? / params.gap())
}

/// `(a, lambda)`-Tsallis entropy `([M_a]^lambda [M_lambda]^-a - 1) / (lambda - a)`.
pub fn al_tsallis_entropy<D: Density>(f: &D, params: ParamPair) -> Result<f64> {
    f.validate()?;
    if params.gap().abs() <= LIMIT_TOL {
        return Ok(shannon_unchecked(&escort(f, params.lambda())?));
    }
    Ok(entropy_log_argument(f, params)?.exp_m1() / params.gap())
}

/// `(a, lambda)` entropy of the requested family.
pub fn al_entropy<D: Density>(family: Family, f: &D, params: ParamPair) -> Result<f64> {
    match family {
        Family::Renyi => al_renyi_entropy(f, params),
        Family::Tsallis => al_tsallis_entropy(f, params),
    }
}

/// `(a, lambda)` divergence of the requested family (escort route).
pub fn al_divergence<D: Density>(family: Family, f: &D, g: &D, params: ParamPair) -> Result<f64> {
    match family {
        Family::Renyi => al_renyi_divergence(f, g, params),
        Family::Tsallis => al_tsallis_divergence(f, g, params),
    }
}
