//! Escort transforms, the information generating functional `M_q`, and
//! generalized escort moments.
//!
//! Convention: `0^a = 0` for every `a > 0`, so an escort has exactly the
//! support of the original distribution.

use crate::dist::Density;
use crate::error::{Error, Result};

fn check_order(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")))
    }
}

pub(crate) fn pow0(v: f64, q: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v.powf(q)
    }
}

/// `M_q[f] = integral of f^q`.
pub fn info_generating<D: Density>(f: &D, q: f64) -> Result<f64> {
    check_order("q", q)?;
    let powered: Vec<f64> = f.values().iter().map(|&v| pow0(v, q)).collect();
    match f.integrate(&powered) {
        Ok(m) if m.is_finite() && m > 0.0 => Ok(m),
        _ => Err(Error::GeneratingFunctionDiverges(q)),
    }
}

/// Escort of order `a`: `f^a / M_a[f]`. Order 1 returns `f` unchanged.
pub fn escort<D: Density>(f: &D, a: f64) -> Result<D> {
    check_order("a", a)?;
    if a == 1.0 {
        return Ok(f.clone());
    }
    let powered: Vec<f64> = f.values().iter().map(|&v| pow0(v, a)).collect();
    let norm = f
        .integrate(&powered)
        .map_err(|_| Error::EscortUndefined(a))?;
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::EscortUndefined(a));
    }
    Ok(f.with_values(powered.into_iter().map(|v| v / norm).collect()))
}

/// Standard absolute moment of order `p`: integral of `|x|^p f(x)`.
pub fn abs_moment<D: Density>(f: &D, p: f64) -> Result<f64> {
    let integrand: Vec<f64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| if v == 0.0 { 0.0 } else { f.point(i).abs().powf(p) * v })
        .collect();
    match f.integrate(&integrand) {
        Ok(m) if m.is_finite() => Ok(m),
        _ => Err(Error::MomentDiverges),
    }
}

/// Generalized `a`-moment of order `p`: the order-`p` absolute moment of the
/// escort of order `a`.
pub fn gen_moment<D: Density>(f: &D, p: f64, a: f64) -> Result<f64> {
    check_order("p", p)?;
    abs_moment(&escort(f, a)?, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{DiscreteDist, GriddedDensity};

    fn d(probs: &[f64]) -> DiscreteDist {
        DiscreteDist::on_integers(probs.to_vec()).unwrap()
    }

    #[test]
    fn generating_function_values() {
        let u = d(&[0.25; 4]);
        assert!((info_generating(&u, 2.0).unwrap() - 0.25).abs() < 1e-15);
        let f = d(&[0.75, 0.25]);
        assert!((info_generating(&f, 2.0).unwrap() - 0.625).abs() < 1e-15);
        assert!((info_generating(&f, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(info_generating(&f, 0.0).is_err());
    }

    #[test]
    fn zero_atoms_contribute_nothing() {
        let f = d(&[0.0, 0.5, 0.5]);
        assert!((info_generating(&f, 0.3).unwrap() - 2.0 * 0.5f64.powf(0.3)).abs() < 1e-15);
        assert_eq!(escort(&f, 0.3).unwrap().probs()[0], 0.0);
    }

    #[test]
    fn escort_examples() {
        let u = d(&[0.2; 5]);
        for a in [0.3, 2.0, 7.0] {
            for p in escort(&u, a).unwrap().probs() {
                assert!((p - 0.2).abs() < 1e-15);
            }
        }
        let e = escort(&d(&[0.75, 0.25]), 2.0).unwrap();
        assert!((e.probs()[0] - 0.9).abs() < 1e-15);
        assert!((e.probs()[1] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn escort_of_order_one_is_identity() {
        let f = d(&[0.1, 0.2, 0.7]);
        assert_eq!(escort(&f, 1.0).unwrap(), f);
    }

    #[test]
    fn escort_inverse() {
        let f = d(&[0.05, 0.15, 0.3, 0.5]);
        for a in [0.2, 0.7, 2.5] {
            let back = escort(&escort(&f, a).unwrap(), 1.0 / a).unwrap();
            for (x, y) in back.probs().iter().zip(f.probs()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn moment_examples() {
        let f = DiscreteDist::new(vec![0.0, 1.0], vec![0.5, 0.5]).unwrap();
        assert!((gen_moment(&f, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        let f = DiscreteDist::new(vec![0.0, 1.0], vec![0.25, 0.75]).unwrap();
        assert!((gen_moment(&f, 1.0, 2.0).unwrap() - 0.9).abs() < 1e-15);
    }

    #[test]
    fn gaussian_second_moment_on_grid() {
        let beta = 0.7;
        let g = GriddedDensity::from_fn(-12.0, 12.0, 4001, |x| (-beta * x * x).exp()).unwrap();
        let m = gen_moment(&g, 2.0, 1.0).unwrap();
        assert!((m - 1.0 / (2.0 * beta)).abs() < 1e-10, "m = {m}");
    }
}
