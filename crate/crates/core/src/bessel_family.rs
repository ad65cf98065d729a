//! Series evaluation of the generalized Bessel function `w_{p,b,c}`, its
//! classical specializations, the φ transform, the k-Bessel function and the
//! generalized modified k-Bessel function 𝒥.
//!
//! Every series is generated from its term ratio, so each new term costs
//! O(1); Γ_k ratios use `Γ_k(x + k) = x Γ_k(x)` whenever λ is a whole
//! multiple of k.

use crate::error::{ensure, Result};
use crate::kspecial::{gamma_k, rgamma, GAMMA_MAX_ARG};
use crate::series::{sum_series, Diagnostics, EvalResult, SeriesControl};
use std::f64::consts::PI;

/// Parameters (b, c, γ, λ, μ, k) of the generalized modified k-Bessel
/// function. `g` is γ and `lam` is λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KBesselParams {
    b: f64,
    c: f64,
    g: f64,
    lam: f64,
    mu: f64,
    k: f64,
}

impl KBesselParams {
    pub fn new(b: f64, c: f64, g: f64, lam: f64, mu: f64, k: f64) -> Result<Self> {
        for (v, what) in [
            (b, "b must be finite"),
            (c, "c must be finite"),
            (g, "g must be finite"),
            (mu, "mu must be finite"),
        ] {
            ensure(v.is_finite(), what, v)?;
        }
        ensure(k > 0.0 && k.is_finite(), "k must be positive (k > 0)", k)?;
        ensure(lam > 0.0 && lam.is_finite(), "lam must be positive (lam > 0)", lam)?;
        ensure(mu > -1.0, "mu must exceed -1", mu)?;
        ensure(
            mu + (b + 1.0) / 2.0 > 0.0,
            "mu + (b+1)/2 must be positive",
            mu + (b + 1.0) / 2.0,
        )?;
        Ok(Self { b, c, g, lam, mu, k })
    }

    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn g(&self) -> f64 {
        self.g
    }
    pub fn lam(&self) -> f64 {
        self.lam
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn k(&self) -> f64 {
        self.k
    }

    /// μ + (b+1)/2, the Γ_k argument of the leading term.
    pub fn base_arg(&self) -> f64 {
        self.mu + (self.b + 1.0) / 2.0
    }
}

/// Γ_k(a) / Γ_k(a + λ) for a > 0.
pub(crate) fn gamma_k_ratio(a: f64, lam: f64, k: f64) -> f64 {
    let m = lam / k;
    if m == m.round() && (1.0..=64.0).contains(&m) {
        let mut prod = 1.0;
        for j in 0..m as usize {
            prod *= a + j as f64 * k;
        }
        return 1.0 / prod;
    }
    let (y0, y1) = (a / k, (a + lam) / k);
    let scale = k.powf(-m);
    if y1 < GAMMA_MAX_ARG {
        scale * libm::tgamma(y0) / libm::tgamma(y1)
    } else {
        scale * (libm::lgamma(y0) - libm::lgamma(y1)).exp()
    }
}

fn recip_gamma_k(x: f64, k: f64) -> f64 {
    match gamma_k(x, k) {
        Ok(v) => 1.0 / v,
        Err(_) => f64::NAN,
    }
}

/// Σ (−c)ⁿ (z/2)^{2n+p} / (n! Γ(γ' + n)) with γ' = p + (b+1)/2 > 0.
fn w_series(p: f64, gp: f64, c: f64, z: f64, ctrl: &SeriesControl) -> EvalResult {
    let half = z / 2.0;
    let q = -c * half * half;
    let mut term = half.powf(p) * rgamma(gp);
    sum_series(ctrl, |n| {
        if n > 0 {
            let nf = n as f64;
            term *= q / (nf * (gp + nf - 1.0));
        }
        term
    })
}

/// Generalized Bessel function of the first kind,
/// `w_{p,b,c}(z) = Σ (−1)ⁿ cⁿ (z/2)^{2n+p} / (n! Γ(p + (b+1)/2 + n))`.
pub fn gen_bessel_w(p: f64, b: f64, c: f64, z: f64, ctrl: SeriesControl) -> EvalResult {
    let gp = p + (b + 1.0) / 2.0;
    if !(p > -1.0) || !(gp > 0.0) || !(z > 0.0) || !z.is_finite() || !c.is_finite() {
        return EvalResult::domain_error();
    }
    w_series(p, gp, c, z, &ctrl)
}

/// Bessel function J_p (b = c = 1).
pub fn bessel_j(p: f64, z: f64, ctrl: SeriesControl) -> EvalResult {
    gen_bessel_w(p, 1.0, 1.0, z, ctrl)
}

/// Modified Bessel function I_p (b = 1, c = −1).
pub fn bessel_i(p: f64, z: f64, ctrl: SeriesControl) -> EvalResult {
    gen_bessel_w(p, 1.0, -1.0, z, ctrl)
}

/// Spherical Bessel function `j_p(z) = (√π/2) w_{p,2,1}(z)`, for p > −3/2.
pub fn spherical_j(p: f64, z: f64, ctrl: SeriesControl) -> EvalResult {
    let gp = p + 1.5;
    if !(gp > 0.0) || !(z > 0.0) || !z.is_finite() {
        return EvalResult::domain_error();
    }
    w_series(p, gp, 1.0, z, &ctrl).scaled(PI.sqrt() / 2.0)
}

/// φ_{p,b,c}(z) = z + Σ_{n≥1} (−c)ⁿ z^{n+1} / (n! 4ⁿ (γ')_n), γ' = p + (b+1)/2.
///
/// Equals `2^p Γ(γ') z^{1−p/2} w_p(√z)`.
pub fn phi_transform(p: f64, b: f64, c: f64, z: f64, ctrl: SeriesControl) -> EvalResult {
    let gp = p + (b + 1.0) / 2.0;
    if (gp <= 0.0 && gp == gp.floor()) || !gp.is_finite() || !(z > 0.0) || !z.is_finite() {
        return EvalResult::domain_error();
    }
    let q = -c * z / 4.0;
    let mut term = z;
    sum_series(&ctrl, |n| {
        if n > 0 {
            let nf = n as f64;
            term *= q / (nf * (gp + nf - 1.0));
        }
        term
    })
}

/// k-Bessel function of the first kind,
/// `Σ (γ)_{n,k} (−1)ⁿ (z/2)ⁿ / (Γ_k(λn + μ + 1) (n!)²)`.
///
/// The power of z/2 is n, not 2n + μ.
pub fn k_bessel(k: f64, mu: f64, g: f64, lam: f64, z: f64, ctrl: SeriesControl) -> EvalResult {
    if !(k > 0.0) || !(mu > 0.0) || !(lam > 0.0) || !g.is_finite() || !(z > 0.0) || !z.is_finite() {
        return EvalResult::domain_error();
    }
    let half = z / 2.0;
    let a0 = mu + 1.0;
    let mut term = recip_gamma_k(a0, k);
    sum_series(&ctrl, |n| {
        if n > 0 {
            let m = (n - 1) as f64;
            let a = lam * m + a0;
            term *= -(g + m * k) * half / ((m + 1.0) * (m + 1.0)) * gamma_k_ratio(a, lam, k);
        }
        term
    })
}

/// Generalized modified k-Bessel function of the first kind,
/// `𝒥(z) = Σ cⁿ (γ)_{n,k} (z/2)^{μ+2n} / (Γ_k(λn + μ + (b+1)/2) (n!)²)`.
///
/// Evaluations with μ ≤ 0 set `diagnostics.nonpositive_order`.
pub fn gen_mod_k_bessel(params: &KBesselParams, z: f64, ctrl: SeriesControl) -> EvalResult {
    if !(z > 0.0) || !z.is_finite() {
        return EvalResult::domain_error();
    }
    let KBesselParams { c, g, lam, mu, k, .. } = *params;
    let half = z / 2.0;
    let q = c * half * half;
    let a0 = params.base_arg();
    let mut term = half.powf(mu) * recip_gamma_k(a0, k);
    let r = sum_series(&ctrl, |n| {
        if n > 0 {
            let m = (n - 1) as f64;
            let a = lam * m + a0;
            term *= q * (g + m * k) / ((m + 1.0) * (m + 1.0)) * gamma_k_ratio(a, lam, k);
        }
        term
    });
    r.with_diagnostics(Diagnostics {
        nonpositive_order: mu <= 0.0,
        ..Diagnostics::default()
    })
}
