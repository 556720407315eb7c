//! Log-Gamma and log-Beta evaluation for the partition function closed forms.
//!
//! Arguments such as `1/(lambda - a)` grow without bound near the diagonal, so
//! the Beta function is never formed from Gamma products. For large arguments
//! the difference `ln Gamma(y) - ln Gamma(y + x)` is taken from the Stirling
//! series directly, which avoids cancelling two huge log-Gamma values.

use statrs::function::gamma::ln_gamma;

const STIRLING_MIN: f64 = 20.0;

// Stirling correction ln Gamma(z) - [(z - 1/2) ln z - z + ln(2 pi)/2].
fn stirling_tail(z: f64) -> f64 {
    let r = 1.0 / z;
    let r2 = r * r;
    r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 / 1680.0)))
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma(x)
}

/// `ln Gamma(y) - ln Gamma(y + x)` for `x >= 0`, `y > 0`.
pub fn ln_gamma_diff(y: f64, x: f64) -> f64 {
    if y < STIRLING_MIN {
        return ln_gamma(y) - ln_gamma(y + x);
    }
    // (y - 1/2) ln y - (y + x - 1/2) ln(y + x) + x
    //   = -(y - 1/2) ln(1 + x/y) - x ln(y + x) + x
    -(y - 0.5) * (x / y).ln_1p() - x * (y + x).ln() + x + stirling_tail(y) - stirling_tail(y + x)
}

/// `ln B(x, y)` for positive arguments; the larger argument goes through the
/// Stirling difference when it is large.
pub fn ln_beta(x: f64, y: f64) -> f64 {
    debug_assert!(x > 0.0 && y > 0.0);
    let (small, large) = if x <= y { (x, y) } else { (y, x) };
    ln_gamma(small) + ln_gamma_diff(large, small)
}
