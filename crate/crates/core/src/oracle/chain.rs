use serde::Serialize;

use crate::dist::{Density, ParamPair};
use crate::error::{Error, Result};

/// Tolerance of the chain relation and of the equality case.
pub const CHAIN_TOL: f64 = 1e-10;

const DIAGONAL_TOL: f64 = 1e-8;

/// The generalized Gaussian `G = A (1 - d beta |x|^p)_+^(1/d)` realized on the
/// support of a template distribution, with `A` chosen so `G` has unit mass
/// there.
#[derive(Debug, Clone)]
pub struct ChainReference<D: Density> {
    g: D,
    params: ParamPair,
    p: f64,
    beta: f64,
    norm: f64,
}

impl<D: Density> ChainReference<D> {
    pub fn new(template: &D, params: ParamPair, p: f64, beta: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite() && beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("need p > 0 and beta > 0, got p = {p}, beta = {beta}")));
        }
        let d = params.gap();
        let kernel: Vec<f64> = (0..template.len())
            .map(|i| {
                let t = beta * template.point(i).abs().powf(p);
                if d.abs() <= DIAGONAL_TOL {
                    (-t).exp()
                } else {
                    let base = 1.0 - d * t;
                    if base <= 0.0 {
                        0.0
                    } else {
                        base.powf(1.0 / d)
                    }
                }
            })
            .collect();
        let mass = template.integrate(&kernel)?;
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::DegenerateDensity(mass));
        }
        let norm = 1.0 / mass;
        let g = template.with_values(kernel.iter().map(|k| k * norm).collect());
        Ok(Self { g, params, p, beta, norm })
    }

    pub fn density(&self) -> &D {
        &self.g
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub a: f64,
    pub lambda: f64,
    pub p: f64,
    pub beta: f64,
    /// `int f^a G^(lambda - a)`.
    pub lhs: f64,
    /// `A^(lambda - a) (1 - (lambda - a) beta m_{p,a}[f]) M_a[f]`.
    pub rhs: f64,
    /// `"lhs >= rhs"` for lambda > a, `"lhs <= rhs"` otherwise.
    pub relation: &'static str,
    /// `sign(lambda - a) (lhs - rhs)`; nonnegative when the relation holds
    /// (and zero for lambda <= a, where the two sides coincide).
    pub oriented_gap: f64,
    /// `|lhs - rhs|`; zero for `f = G`.
    pub equality_residual: f64,
    pub holds: bool,
}

/// Evaluates both sides of the relation bounding the cross integral of `f`
/// against the reference Gaussian.
///
/// For `lambda > a` the kernel is truncated to zero where `1 - d beta |x|^p < 0`,
/// and the factor `(1 - d beta |x|^p)` is negative there, so the cross integral
/// dominates: `lhs >= rhs`, strictly when `f` has mass outside the support of
/// `G`. For `lambda <= a` the kernel is never truncated and the two sides agree,
/// which makes `lhs <= rhs` hold with equality.
pub fn proof_chain_check<D: Density>(f: &D, reference: &ChainReference<D>) -> Result<ChainReport> {
    if !f.same_support(&reference.g) {
        return Err(Error::IncompatibleSupports);
    }
    f.validate()?;
    let (a, lambda) = (reference.params.a(), reference.params.lambda());
    let d = reference.params.gap();
    let (p, beta) = (reference.p, reference.beta);

    let fa: Vec<f64> = f.values().iter().map(|&v| if v > 0.0 { v.powf(a) } else { 0.0 }).collect();
    let cross: Vec<f64> = fa
        .iter()
        .zip(reference.g.values())
        .map(|(&x, &g)| {
            if x == 0.0 {
                0.0
            } else if g == 0.0 {
                // only reachable for d > 0, where 0^d = 0
                0.0
            } else {
                x * g.powf(d)
            }
        })
        .collect();
    let weighted: Vec<f64> = (0..f.len()).map(|i| f.point(i).abs().powf(p) * fa[i]).collect();
    let lhs = f.integrate(&cross)?;
    let ma = f.integrate(&fa)?;
    let mom = f.integrate(&weighted)?;
    let rhs = reference.norm.powf(d) * (ma - d * beta * mom);

    let diff = lhs - rhs;
    let scale = rhs.abs().max(1.0);
    let (relation, oriented_gap, holds) = if d > 0.0 {
        ("lhs >= rhs", diff, diff >= -CHAIN_TOL * scale)
    } else {
        ("lhs <= rhs", -diff, diff <= CHAIN_TOL * scale)
    };
    Ok(ChainReport {
        a,
        lambda,
        p,
        beta,
        lhs,
        rhs,
        relation,
        oriented_gap,
        equality_residual: diff.abs(),
        holds,
    })
}
