//! Gamma, log-Gamma, k-Gamma, Pochhammer and k-Pochhammer primitives.
//!
//! Γ and ln Γ on the positive axis come from the `libm` port of musl
//! (Lanczos approximation, a few ulp). Everything else is built on top of
//! those two: negative arguments go through the reflection identity and the
//! k-Gamma function uses the scaling identity
//! `Γ_k(x) = k^{x/k - 1} Γ(x/k)`.

use crate::error::{ensure, Error, Result};
use std::f64::consts::PI;

/// Largest argument for which Γ is finite in f64.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// Pochhammer products with more factors than this are accumulated in the
/// log domain.
pub const POCHHAMMER_LOG_THRESHOLD: usize = 170;

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x == x.floor() {
        return 0.0;
    }
    // reduce to r in [-1, 1]
    let r = x - 2.0 * (x * 0.5).round();
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r > 0.75 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.75 {
        -(PI * (1.0 + r)).sin()
    } else if r > 0.0 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (0.5 + r)).cos()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x). Negative non-integer arguments use reflection,
/// Γ(x) = π / (sin(πx) Γ(1 - x)).
pub fn gamma(x: f64) -> Result<f64> {
    ensure(x.is_finite(), "gamma argument must be finite", x)?;
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > 0.0 {
        Ok(libm::tgamma(x))
    } else {
        Ok(PI / (sin_pi(x) * libm::tgamma(1.0 - x)))
    }
}

/// 1/Γ(x), defined everywhere on the real line (zero at the poles of Γ).
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > 0.0 {
        if x < GAMMA_MAX_ARG {
            1.0 / libm::tgamma(x)
        } else {
            (-libm::lgamma(x)).exp()
        }
    } else {
        let g1 = 1.0 - x;
        if g1 < GAMMA_MAX_ARG {
            sin_pi(x) * libm::tgamma(g1) / PI
        } else {
            sin_pi(x) * (libm::lgamma(g1) - PI.ln()).exp()
        }
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    ensure(x > 0.0 && x.is_finite(), "ln_gamma requires x > 0", x)?;
    Ok(libm::lgamma(x))
}

/// The k-Gamma function Γ_k(x) = k^{x/k-1} Γ(x/k), for x > 0 and k > 0.
///
/// With `k == 1` this is exactly [`gamma`].
pub fn gamma_k(x: f64, k: f64) -> Result<f64> {
    ensure(k > 0.0 && k.is_finite(), "k must be positive (k > 0)", k)?;
    ensure(x > 0.0 && x.is_finite(), "gamma_k requires x > 0", x)?;
    if k == 1.0 {
        return gamma(x);
    }
    let y = x / k;
    if y < GAMMA_MAX_ARG - 1.0 {
        let scale = k.powf(y - 1.0);
        let g = libm::tgamma(y);
        let v = scale * g;
        if v.is_finite() && v != 0.0 {
            return Ok(v);
        }
    }
    Ok(ln_gamma_k_unchecked(x, k).exp())
}

/// ln Γ_k(x) for x > 0, k > 0.
pub fn ln_gamma_k(x: f64, k: f64) -> Result<f64> {
    ensure(k > 0.0 && k.is_finite(), "k must be positive (k > 0)", k)?;
    ensure(x > 0.0 && x.is_finite(), "gamma_k requires x > 0", x)?;
    Ok(ln_gamma_k_unchecked(x, k))
}

fn ln_gamma_k_unchecked(x: f64, k: f64) -> f64 {
    let y = x / k;
    (y - 1.0) * k.ln() + libm::lgamma(y)
}

/// Rising factorial (λ)_n = λ(λ+1)···(λ+n-1), with (λ)_0 = 1.
pub fn pochhammer(lam: f64, n: usize) -> f64 {
    pochhammer_k(lam, n, 1.0)
}

/// k-Pochhammer symbol (γ)_{n,k} = γ(γ+k)···(γ+(n-1)k), with (γ)_{0,k} = 1.
///
/// A zero first factor (γ = 0, n ≥ 1) yields 0.
pub fn pochhammer_k(g: f64, n: usize, k: f64) -> f64 {
    if n > POCHHAMMER_LOG_THRESHOLD {
        let (ln_abs, sign) = ln_abs_pochhammer_k(g, n, k);
        return if sign == 0.0 { 0.0 } else { sign * ln_abs.exp() };
    }
    let mut p = 1.0;
    for i in 0..n {
        p *= g + i as f64 * k;
    }
    p
}

/// `(ln |(γ)_{n,k}|, sign)`; the sign is 0 when some factor vanishes.
pub fn ln_abs_pochhammer_k(g: f64, n: usize, k: f64) -> (f64, f64) {
    let mut ln_abs = 0.0;
    let mut sign = 1.0;
    for i in 0..n {
        let f = g + i as f64 * k;
        if f == 0.0 {
            return (f64::NEG_INFINITY, 0.0);
        }
        if f < 0.0 {
            sign = -sign;
        }
        ln_abs += f.abs().ln();
    }
    (ln_abs, sign)
}

/// n! as a float (exact up to 22!).
pub fn factorial(n: usize) -> f64 {
    libm::tgamma(n as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_relative_eq!(gamma(1.5).unwrap(), 0.886_226_925_452_758, max_relative = 1e-15);
    }

    #[test]
    fn gamma_poles_are_errors() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert_eq!(gamma(x), Err(Error::Pole(x)));
        }
        assert!(gamma(f64::NAN).is_err());
    }

    #[test]
    fn gamma_reflection() {
        // Γ(-0.5) = -2√π
        assert_relative_eq!(gamma(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-15);
        // Γ(-2.5) = -8√π/15
        assert_relative_eq!(gamma(-2.5).unwrap(), -8.0 * PI.sqrt() / 15.0, max_relative = 1e-14);
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert_relative_eq!(rgamma(-0.5), -0.5 / PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(rgamma(4.0), 1.0 / 6.0, max_relative = 1e-16);
    }

    #[test]
    fn ln_gamma_examples() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert_eq!(ln_gamma(2.0).unwrap(), 0.0);
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
    }

    #[test]
    fn gamma_k_examples() {
        assert_eq!(gamma_k(5.0, 1.0).unwrap(), 24.0);
        assert_relative_eq!(gamma_k(2.5, 2.5).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            gamma_k(3.0, 2.0).unwrap(),
            1.253_314_137_315_500_3,
            max_relative = 1e-15
        );
    }

    #[test]
    fn gamma_k_domain() {
        assert!(gamma_k(-1.0, 1.0).is_err());
        assert!(gamma_k(0.0, 2.0).is_err());
        assert!(gamma_k(1.0, 0.0).is_err());
        assert!(gamma_k(1.0, -2.0).is_err());
    }

    #[test]
    fn gamma_k_large_argument_uses_log_path() {
        // y = x/k = 200 exceeds the Γ range but the product is finite.
        let v = gamma_k(40.0, 0.2).unwrap();
        let expected = ln_gamma_k(40.0, 0.2).unwrap();
        assert!(v.is_finite());
        assert_relative_eq!(v.ln(), expected, max_relative = 1e-14);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(7.3, 0), 1.0);
        assert_eq!(pochhammer(2.0, 3), 24.0);
        assert_eq!(pochhammer(0.5, 4), 6.5625);
        assert_eq!(pochhammer_k(3.0, 2, 2.0), 15.0);
        assert_eq!(pochhammer_k(2.0, 3, 1.0), 24.0);
        assert_eq!(pochhammer_k(1.5, 3, 0.5), 7.5);
        assert_eq!(pochhammer_k(0.0, 4, 1.3), 0.0);
    }

    #[test]
    fn pochhammer_log_domain_matches_direct_product() {
        // 200 factors of magnitude near 1 stay finite either way.
        let g = 0.9;
        let k = 0.001;
        let mut direct = 1.0;
        for i in 0..200 {
            direct *= g + i as f64 * k;
        }
        assert_relative_eq!(pochhammer_k(g, 200, k), direct, max_relative = 1e-12);
        // sign tracking with negative factors
        let v = pochhammer_k(-180.5, 175, 1.0);
        let (l, s) = ln_abs_pochhammer_k(-180.5, 175, 1.0);
        assert_eq!(s, -1.0);
        assert_relative_eq!(v, s * l.exp(), max_relative = 1e-15);
    }

    #[test]
    fn sin_pi_reduction() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-4.0), 0.0);
        assert_relative_eq!(sin_pi(0.5), 1.0);
        assert_relative_eq!(sin_pi(-0.5), -1.0);
        assert_relative_eq!(sin_pi(1e6 + 0.25), (PI * 0.25).sin(), max_relative = 1e-15);
        assert_relative_eq!(sin_pi(2.9), (PI * 2.9).sin(), max_relative = 1e-13);
    }
}
