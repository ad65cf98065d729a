//! One- and two-parameter Mittag-Leffler functions on the real line.
//!
//! `E_{α,β}(z) = Σ_{n≥0} zⁿ / Γ(αn + β)` is entire; the power series is exact
//! in principle but loses digits to cancellation for negative z. For
//! `z < 0` and `0 < α < 2` the large-|z| expansion
//!
//! ```text
//! E_{α,β}(z) ≈ −Σ_{k=1..K} z^{−k} / Γ(β − αk)  +  saddle-point terms
//! ```
//!
//! takes over. The saddle-point contribution is
//! `(1/α) Σ ζ^{1−β} e^{ζ}` over the roots `ζ = z^{1/α}` lying in
//! `|arg ζ| ≤ π/α`; on the negative axis it is present only for `α ≥ 1`
//! (a conjugate pair for `1 < α < 2`, the single real root `−|z|` for α = 1).

use crate::error::{ensure, Result};
use crate::kspecial::{rgamma, sin_pi, GAMMA_MAX_ARG};
use crate::series::{sum_series, Diagnostics, EvalResult, SeriesControl, Status};
use crate::summation::Accumulator;
use std::f64::consts::PI;

/// Default |z| beyond which negative arguments go to the asymptotic branch.
pub const DEFAULT_Z_SWITCH: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    alpha: f64,
    beta: f64,
}

impl MlParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        ensure(alpha > 0.0 && alpha.is_finite(), "alpha must be positive", alpha)?;
        ensure(beta > 0.0 && beta.is_finite(), "beta must be positive", beta)?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Branch selection for negative arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlConfig {
    pub z_switch: f64,
}

impl Default for MlConfig {
    fn default() -> Self {
        Self {
            z_switch: DEFAULT_Z_SWITCH,
        }
    }
}

/// E_{α,β}(z) with the default branch switch.
pub fn ml(params: MlParams, z: f64, ctrl: SeriesControl) -> EvalResult {
    ml_with(params, z, ctrl, MlConfig::default())
}

/// E_α(z) = E_{α,1}(z).
pub fn ml_one(alpha: f64, z: f64, ctrl: SeriesControl) -> Result<EvalResult> {
    Ok(ml(MlParams::new(alpha, 1.0)?, z, ctrl))
}

/// E_{α,β}(z) with an explicit branch switch.
///
/// The primary branch is the power series for `z ≥ −z_switch` and the
/// asymptotic expansion below it. When the primary branch misses the
/// tolerance and the other one is applicable, both are computed and the one
/// with the smaller error estimate is returned.
pub fn ml_with(params: MlParams, z: f64, ctrl: SeriesControl, cfg: MlConfig) -> EvalResult {
    if !z.is_finite() {
        return EvalResult::domain_error();
    }
    let asymptotic_applies = params.alpha < 2.0 && z < 0.0;
    if asymptotic_applies && z < -cfg.z_switch {
        let a = ml_asymptotic(params, z, ctrl);
        if a.is_converged() {
            return a;
        }
        better(a, ml_series(params, z, ctrl))
    } else {
        let s = ml_series(params, z, ctrl);
        if s.is_converged() || !asymptotic_applies {
            return s;
        }
        better(s, ml_asymptotic(params, z, ctrl))
    }
}

fn better(first: EvalResult, second: EvalResult) -> EvalResult {
    if second.tail_estimate < first.tail_estimate {
        second
    } else {
        first
    }
}

/// Power-series branch.
pub fn ml_series(params: MlParams, z: f64, ctrl: SeriesControl) -> EvalResult {
    if !z.is_finite() {
        return EvalResult::domain_error();
    }
    let MlParams { alpha, beta } = params;
    let ln_abs_z = z.abs().ln();
    let mut pow: f64 = 1.0;
    sum_series(&ctrl, |n| {
        let arg = alpha * n as f64 + beta;
        let t = if n == 0 {
            rgamma(arg)
        } else if z == 0.0 {
            0.0
        } else if arg < GAMMA_MAX_ARG && pow.is_normal() {
            pow * rgamma(arg)
        } else {
            let sign = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            sign * (n as f64 * ln_abs_z - libm::lgamma(arg)).exp()
        };
        pow *= z;
        t
    })
}

/// Large-|z| branch for `z < 0`, `0 < α < 2`, truncated at the smallest term.
pub fn ml_asymptotic(params: MlParams, z: f64, ctrl: SeriesControl) -> EvalResult {
    let MlParams { alpha, beta } = params;
    if !(alpha < 2.0) || !(z < 0.0) || !z.is_finite() {
        return EvalResult::domain_error();
    }
    let x = -z;
    let ln_x = x.ln();

    let saddle = saddle_contribution(alpha, beta, x);
    let mut acc = Accumulator::new(ctrl.compensated);
    acc.add(saddle);

    let mut prev_abs = f64::INFINITY;
    let mut small_run = 0;
    let mut tail = f64::INFINITY;
    let mut converged = false;
    let mut terms = 0;
    for k in 1..=ctrl.max_terms {
        let t = algebraic_term(alpha, beta, x, ln_x, k);
        if !t.is_finite() {
            tail = f64::INFINITY;
            break;
        }
        let abs = t.abs();
        if abs > prev_abs {
            // smallest term passed; this one is the first omitted
            tail = abs;
            break;
        }
        acc.add(t);
        terms = k;
        if abs != 0.0 {
            prev_abs = abs;
        }
        if abs <= ctrl.threshold(acc.value()) {
            small_run += 1;
            if small_run >= 2 {
                tail = abs;
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
        tail = abs;
    }
    let value = acc.value();
    let tail_estimate = tail + f64::EPSILON * acc.abs_sum();
    let status = if tail_estimate <= ctrl.threshold(value) {
        Status::Converged
    } else if converged {
        Status::PrecisionLoss
    } else {
        Status::MaxTermsReached
    };
    EvalResult {
        value,
        terms_used: terms,
        tail_estimate,
        status,
        diagnostics: Diagnostics {
            asymptotic: true,
            ..Diagnostics::default()
        },
    }
}

/// `−z^{−k} / Γ(β − αk)` at `z = −x`. Zero at the poles of Γ.
fn algebraic_term(alpha: f64, beta: f64, x: f64, ln_x: f64, k: usize) -> f64 {
    let s = beta - alpha * k as f64;
    // −(−x)^{−k} = (−1)^{k+1} x^{−k}
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    if s <= 0.0 && s == s.floor() {
        return 0.0;
    }
    let pow = x.powi(-(k as i32));
    let reflected = 1.0 - s;
    if pow.is_normal() && s < GAMMA_MAX_ARG && reflected < GAMMA_MAX_ARG {
        return sign * pow * rgamma(s);
    }
    // log domain: |1/Γ(s)| = |sin πs| Γ(1−s)/π for s < 0
    let (ln_mag, rsign) = if s > 0.0 {
        (-libm::lgamma(s), 1.0)
    } else {
        let sp = sin_pi(s);
        (libm::lgamma(reflected) + sp.abs().ln() - PI.ln(), sp.signum())
    };
    sign * rsign * (ln_mag - k as f64 * ln_x).exp()
}

/// Exponentially small saddle-point terms on the negative real axis.
fn saddle_contribution(alpha: f64, beta: f64, x: f64) -> f64 {
    if alpha < 1.0 {
        return 0.0;
    }
    let r = x.powf(1.0 / alpha);
    let (weight, cos_t, sin_t, theta) = if alpha == 1.0 {
        (1.0, -1.0, 0.0, PI)
    } else {
        let theta = PI / alpha;
        (2.0 / alpha, theta.cos(), theta.sin(), theta)
    };
    let amp = ((1.0 - beta) / alpha * x.ln() + r * cos_t).exp();
    let phase = (1.0 - beta) * theta + r * sin_t;
    weight * amp * phase.cos()
}
