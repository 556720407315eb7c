//! Reference computations for the integration tests, written without the
//! library's quadrature or special functions.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Tanh-sinh quadrature of `f` over `[lo, hi]`. `f` receives the point and
/// its distances to both ends, so integrands with endpoint singularities can
/// be evaluated without cancellation.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let half = 0.5 * (hi - lo);
    let mut prev = f64::NAN;
    let mut h = 0.5;
    for _ in 0..8 {
        let mut sum = 0.0;
        let n = (6.0 / h) as i64;
        for k in -n..=n {
            let t = k as f64 * h;
            let u = FRAC_PI_2 * t.sinh();
            let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
            // distance to the nearer end, 1 - |tanh u| = 2 / (e^{2|u|} + 1)
            let gap = half * 2.0 / ((2.0 * u.abs()).exp() + 1.0);
            if gap == 0.0 {
                continue;
            }
            let (dl, dr) = if u < 0.0 { (gap, 2.0 * half - gap) } else { (2.0 * half - gap, gap) };
            let x = lo + dl;
            let v = f(x, dl, dr);
            if v.is_finite() {
                sum += w * v;
            }
        }
        let est = sum * h * half;
        if (est - prev).abs() <= 1e-14 * est.abs() {
            return est;
        }
        prev = est;
        h *= 0.5;
    }
    prev
}

/// Exp-sinh quadrature of `f` over `[0, inf)`, for integrands decaying
/// exponentially or algebraically.
pub fn exp_sinh<F: Fn(f64) -> f64>(f: F) -> f64 {
    let mut prev = f64::NAN;
    let mut h = 0.5;
    for _ in 0..8 {
        let mut sum = 0.0;
        let n = (5.0 / h) as i64;
        for k in -n..=n {
            let t = k as f64 * h;
            let x = (FRAC_PI_2 * t.sinh()).exp();
            let w = x * FRAC_PI_2 * t.cosh();
            if x == 0.0 || !x.is_finite() {
                continue;
            }
            let v = f(x);
            if v.is_finite() {
                sum += w * v;
            }
        }
        let est = sum * h;
        if (est - prev).abs() <= 1e-13 * est.abs() {
            return est;
        }
        prev = est;
        h *= 0.5;
    }
    prev
}

/// Integral over the real line of `|x|^s * kernel(x)^c` for the generalized
/// Gaussian kernel with gap `d = lambda - a`.
pub fn kernel_integral(d: f64, p: f64, beta: f64, s: f64, c: f64) -> f64 {
    if d.abs() <= 1e-8 {
        return 2.0 * exp_sinh(|x| x.powf(s) * (-c * beta * x.powf(p)).exp());
    }
    if d > 0.0 {
        let edge = (d * beta).powf(-1.0 / p);
        // 1 - d beta x^p = 1 - (x/edge)^p, written via the distance to the edge
        return 2.0
            * tanh_sinh(
                |x, _, dr| {
                    let base = -(p * (-dr / edge).ln_1p()).exp_m1();
                    x.powf(s) * base.max(0.0).powf(c / d)
                },
                0.0,
                edge,
            );
    }
    2.0 * exp_sinh(|x| x.powf(s) * (1.0 - d * beta * x.powf(p)).powf(c / d))
}

pub fn partition(d: f64, p: f64, beta: f64) -> f64 {
    kernel_integral(d, p, beta, 0.0, 1.0)
}

/// `m_{p,a}` of the generalized Gaussian, by quadrature.
pub fn escort_moment(a: f64, lambda: f64, p: f64, beta: f64) -> f64 {
    let d = lambda - a;
    kernel_integral(d, p, beta, p, a) / kernel_integral(d, p, beta, 0.0, a)
}

/// Uniform random probability vector with entries bounded away from zero.
pub fn simplex(rng: &mut impl rand::Rng, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln() + 1e-3).collect();
    let t: f64 = e.iter().sum();
    e.into_iter().map(|v| v / t).collect()
}

/// Prints one acceptance line and returns whether it passed.
pub fn report(id: &str, passed: bool, detail: &str) -> bool {
    println!("criterion {id}: {} — {detail}", if passed { "PASS" } else { "FAIL" });
    passed
}
