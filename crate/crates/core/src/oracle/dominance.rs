use rayon::prelude::*;
use serde::Serialize;

use crate::dist::ParamPair;
use crate::error::{Error, Result};

const DIAGONAL_TOL: f64 = 1e-8;

fn pow0(x: f64, a: f64) -> f64 {
    if x > 0.0 {
        x.powf(a)
    } else {
        0.0
    }
}

/// `(a, lambda)`-Rényi entropy of a probability vector, computed directly.
fn entropy(probs: &[f64], params: ParamPair) -> f64 {
    let (a, lambda) = (params.a(), params.lambda());
    if params.gap().abs() <= DIAGONAL_TOL {
        let ml: f64 = probs.iter().map(|&v| pow0(v, lambda)).sum();
        return -probs
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|&v| {
                let e = v.powf(lambda) / ml;
                e * e.ln()
            })
            .sum::<f64>();
    }
    let ma: f64 = probs.iter().map(|&v| pow0(v, a)).sum();
    let ml: f64 = probs.iter().map(|&v| pow0(v, lambda)).sum();
    (lambda * ma.ln() - a * ml.ln()) / (lambda - a)
}

fn escort_moment(probs: &[f64], powers: &[f64], a: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (&v, &w) in probs.iter().zip(powers) {
        let fa = pow0(v, a);
        num += w * fa;
        den += fa;
    }
    num / den
}

fn gaussian_probs(powers: &[f64], params: ParamPair, beta: f64) -> Vec<f64> {
    let d = params.gap();
    let k: Vec<f64> = powers
        .iter()
        .map(|&t| {
            if d.abs() <= DIAGONAL_TOL {
                (-beta * t).exp()
            } else {
                pow0(1.0 - d * beta * t, 1.0 / d)
            }
        })
        .collect();
    let total: f64 = k.iter().sum();
    k.into_iter().map(|v| v / total).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscreteMaxent {
    pub beta: f64,
    pub probs: Vec<f64>,
    pub entropy: f64,
}

/// The generalized Gaussian on a finite support whose escort moment of order
/// `(p, a)` equals `m`, found by bisection on `beta >= 0`. The moment is
/// nonincreasing in `beta`, so `m` must not exceed the uniform value.
pub fn discrete_maxent(params: ParamPair, p: f64, m: f64, support: &[f64]) -> Result<DiscreteMaxent> {
    if support.len() < 2 {
        return Err(Error::InvalidParameter("support needs at least two atoms".into()));
    }
    let powers: Vec<f64> = support.iter().map(|x| x.abs().powf(p)).collect();
    let a = params.a();
    let moment = |beta: f64| escort_moment(&gaussian_probs(&powers, params, beta), &powers, a);
    let top = moment(0.0);
    let floor = powers.iter().cloned().fold(f64::INFINITY, f64::min);
    if m > top * (1.0 + 1e-14) {
        return Err(Error::RootFinding(format!(
            "target {m} above the beta = 0 value {top}"
        )));
    }
    if m <= floor {
        return Err(Error::RootFinding(format!("target {m} not above the minimum {floor}")));
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut expansions = 0;
    while moment(hi) > m {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::RootFinding("no bracket for beta".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if moment(mid) > m {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let beta = 0.5 * (lo + hi);
    let probs = gaussian_probs(&powers, params, beta);
    let entropy = entropy(&probs, params);
    Ok(DiscreteMaxent { beta, probs, entropy })
}

#[derive(Debug, Clone, Serialize)]
pub struct DominanceReport {
    pub a: f64,
    pub lambda: f64,
    pub p: f64,
    pub m: f64,
    pub support: Vec<f64>,
    pub grid_step: f64,
    pub tolerance: f64,
    pub maximizer: DiscreteMaxent,
    pub feasible_points: usize,
    /// Largest `H(f) - H(G)` over feasible grid points.
    pub max_excess: f64,
    /// `max_excess - tolerance`; nonpositive when the check passes.
    pub margin: f64,
    pub worst: Vec<f64>,
    pub passed: bool,
}

/// Enumerates the probability simplex on a three-atom support at spacing
/// `grid_step` and compares, among points whose escort moment is within
/// `grid_step` of `m`, the largest entropy with the entropy of the discrete
/// generalized Gaussian. Passes when no point exceeds it by more than
/// `10 * grid_step`.
pub fn maxent_dominance(
    params: ParamPair,
    p: f64,
    m: f64,
    support: &[f64],
    grid_step: f64,
) -> Result<DominanceReport> {
    if support.len() != 3 {
        return Err(Error::InvalidParameter("dominance enumeration needs three atoms".into()));
    }
    let n = (1.0 / grid_step).round();
    if !(grid_step > 0.0 && n >= 1.0 && (n * grid_step - 1.0).abs() < 1e-9) {
        return Err(Error::InvalidParameter(format!(
            "grid step {grid_step} must divide 1"
        )));
    }
    let n = n as usize;
    let maximizer = discrete_maxent(params, p, m, support)?;
    let powers: Vec<f64> = support.iter().map(|x| x.abs().powf(p)).collect();
    let a = params.a();

    // (feasible count, best excess, best (i, j))
    let (feasible, best, arg) = (0..=n)
        .into_par_iter()
        .map(|i| {
            let mut count = 0usize;
            let mut best = f64::NEG_INFINITY;
            let mut arg = (usize::MAX, usize::MAX);
            for j in 0..=(n - i) {
                let probs = [
                    i as f64 / n as f64,
                    j as f64 / n as f64,
                    (n - i - j) as f64 / n as f64,
                ];
                if (escort_moment(&probs, &powers, a) - m).abs() > grid_step {
                    continue;
                }
                count += 1;
                let excess = entropy(&probs, params) - maximizer.entropy;
                if excess > best {
                    best = excess;
                    arg = (i, j);
                }
            }
            (count, best, arg)
        })
        .reduce(
            || (0, f64::NEG_INFINITY, (usize::MAX, usize::MAX)),
            |x, y| {
                let take_y = y.1 > x.1 || (y.1 == x.1 && y.2 < x.2);
                let (best, arg) = if take_y { (y.1, y.2) } else { (x.1, x.2) };
                (x.0 + y.0, best, arg)
            },
        );
    if feasible == 0 {
        return Err(Error::Infeasible);
    }
    let tolerance = 10.0 * grid_step;
    let worst = vec![
        arg.0 as f64 / n as f64,
        arg.1 as f64 / n as f64,
        (n - arg.0 - arg.1) as f64 / n as f64,
    ];
    Ok(DominanceReport {
        a,
        lambda: params.lambda(),
        p,
        m,
        support: support.to_vec(),
        grid_step,
        tolerance,
        maximizer,
        feasible_points: feasible,
        max_excess: best,
        margin: best - tolerance,
        worst,
        passed: best <= tolerance,
    })
}
