//! Closed-form solutions of the generalized fractional kinetic equation
//!
//! ```text
//! N(t) − N₀ f(t) = −d^ν ₀D_t^{−ν} N(t)
//! ```
//!
//! for inputs f built from the generalized modified k-Bessel function 𝒥.
//! Every variant is a series `N₀ Σ_n A_n E_{ν,β_n}(−d^ν t^ν)` with
//! `A_n = C_n Γ(β_n) (x/2)^{μ+2n}`; the variants differ in C_n, in β_n, in
//! the power base x and in the destruction rate d.
//!
//! | variant         | C_n            | β_n          | x        | d |
//! |-----------------|----------------|--------------|----------|---|
//! | Thm1            | 𝒥 coefficient  | μ+2n+1       | t        | e |
//! | Thm2Published   | 𝒥 coefficient  | μ+2n+1       | eᵛtᵛ     | e |
//! | Thm2Derived     | 𝒥 coefficient  | ν(μ+2n)+1    | eᵛtᵛ     | e |
//! | Thm3Published   | 𝒥 coefficient  | μ+2n+1       | eᵛtᵛ     | a |
//! | Thm3Derived     | 𝒥 coefficient  | ν(μ+2n)+1    | eᵛtᵛ     | a |
//! | Cor1            | (−c)ⁿ/(n!Γ(n+μ+(b+1)/2)) | μ+2n+1 | t  | e |
//! | Cor2            | (−1)ⁿ/(n!Γ(n+μ+3/2))     | μ+2n+1 | eᵛtᵛ | a |
//!
//! The "derived" rows follow from transforming `f(t) = 𝒥(eᵛtᵛ)` term by
//! term: `L{t^{ν(μ+2n)}} = Γ(ν(μ+2n)+1) p^{−ν(μ+2n)−1}`, dividing by
//! `1 + d^ν p^{−ν}` and inverting with
//! `L^{−1}{p^{−β}/(1 + d^ν p^{−ν})} = t^{β−1} E_{ν,β}(−d^ν t^ν)`.

use crate::bessel_family::{gen_bessel_w, gen_mod_k_bessel, spherical_j, KBesselParams};
use crate::curve::{CurveMeta, SolutionCurve, TimeGrid};
use crate::error::{ensure, Error, Result};
use crate::kspecial::{gamma_k, ln_abs_pochhammer_k, ln_gamma_k, GAMMA_MAX_ARG};
use crate::mittag_leffler::{ml, MlParams};
use crate::series::{Diagnostics, EvalResult, SeriesControl, Status};
use crate::summation::Accumulator;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Which closed form a [`KineticProblem`] is evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Thm1,
    Thm2Published,
    Thm2Derived,
    Thm3Published,
    Thm3Derived,
    Cor1,
    Cor2,
}

impl Variant {
    pub const ALL: [Variant; 7] = [
        Variant::Thm1,
        Variant::Thm2Published,
        Variant::Thm2Derived,
        Variant::Thm3Published,
        Variant::Thm3Derived,
        Variant::Cor1,
        Variant::Cor2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Thm1 => "thm1",
            Variant::Thm2Published => "thm2_published",
            Variant::Thm2Derived => "thm2_derived",
            Variant::Thm3Published => "thm3_published",
            Variant::Thm3Derived => "thm3_derived",
            Variant::Cor1 => "cor1",
            Variant::Cor2 => "cor2",
        }
    }

    /// The published/derived counterpart of a thm2/thm3 variant.
    pub fn counterpart(self) -> Option<Variant> {
        match self {
            Variant::Thm2Published => Some(Variant::Thm2Derived),
            Variant::Thm2Derived => Some(Variant::Thm2Published),
            Variant::Thm3Published => Some(Variant::Thm3Derived),
            Variant::Thm3Derived => Some(Variant::Thm3Published),
            _ => None,
        }
    }

    fn is_derived(self) -> bool {
        matches!(self, Variant::Thm2Derived | Variant::Thm3Derived)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .iter()
            .copied()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown variant '{s}'")))
    }
}

/// Options for the spherical-Bessel corollary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Cor2Options {
    /// Multiply the series by √π/2, the prefactor carried by j_μ.
    pub sqrt_pi_scaled: bool,
    /// Use (n!)² in the coefficient denominator instead of n!.
    pub printed_factorials: bool,
}

/// One instance of the fractional kinetic equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticProblem {
    n0: f64,
    e: f64,
    a: f64,
    nu: f64,
    params: KBesselParams,
    variant: Variant,
    cor2: Cor2Options,
}

impl KineticProblem {
    /// Builds a problem with `a = e`. For `Cor1` the parameters k, γ, λ are
    /// forced to 1; for `Cor2` additionally b = 2 and c = −1.
    pub fn new(n0: f64, e: f64, nu: f64, params: KBesselParams, variant: Variant) -> Result<Self> {
        Self::with_rates(n0, e, e, nu, params, variant)
    }

    pub fn with_rates(n0: f64, e: f64, a: f64, nu: f64, params: KBesselParams, variant: Variant) -> Result<Self> {
        ensure(n0 >= 0.0 && n0.is_finite(), "n0 must be non-negative", n0)?;
        ensure(e > 0.0 && e.is_finite(), "e must be positive", e)?;
        ensure(a > 0.0 && a.is_finite(), "a must be positive", a)?;
        ensure(nu > 0.0 && nu.is_finite(), "nu must be positive", nu)?;
        let params = match variant {
            Variant::Cor1 => KBesselParams::new(params.b(), params.c(), 1.0, 1.0, params.mu(), 1.0)?,
            Variant::Cor2 => KBesselParams::new(2.0, -1.0, 1.0, 1.0, params.mu(), 1.0)?,
            _ => params,
        };
        if variant.is_derived() {
            ensure(
                nu * params.mu() + 1.0 > 0.0,
                "nu*mu + 1 must be positive for the derived series",
                nu * params.mu() + 1.0,
            )?;
        }
        Ok(Self {
            n0,
            e,
            a,
            nu,
            params,
            variant,
            cor2: Cor2Options::default(),
        })
    }

    pub fn with_cor2_options(mut self, opts: Cor2Options) -> Self {
        self.cor2 = opts;
        self
    }

    pub fn with_n0(mut self, n0: f64) -> Result<Self> {
        ensure(n0 >= 0.0 && n0.is_finite(), "n0 must be non-negative", n0)?;
        self.n0 = n0;
        Ok(self)
    }

    /// Same numbers, different closed form (parameters re-forced as needed).
    pub fn with_variant(self, variant: Variant) -> Result<Self> {
        Ok(Self::with_rates(self.n0, self.e, self.a, self.nu, self.params, variant)?.with_cor2_options(self.cor2))
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }
    pub fn e(&self) -> f64 {
        self.e
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn params(&self) -> &KBesselParams {
        &self.params
    }
    pub fn variant(&self) -> Variant {
        self.variant
    }
    pub fn cor2_options(&self) -> Cor2Options {
        self.cor2
    }

    /// Destruction rate d of the equation the variant solves.
    pub fn rate(&self) -> f64 {
        match self.variant {
            Variant::Thm3Published | Variant::Thm3Derived | Variant::Cor2 => self.a,
            _ => self.e,
        }
    }

    pub fn describe(&self) -> String {
        let p = &self.params;
        format!(
            "{} n0={} e={} a={} nu={} b={} c={} g={} lam={} mu={} k={}",
            self.variant,
            self.n0,
            self.e,
            self.a,
            self.nu,
            p.b(),
            p.c(),
            p.g(),
            p.lam(),
            p.mu(),
            p.k()
        )
    }
}

// ---------------------------------------------------------------------------
// coefficients

#[derive(Debug, Clone, Copy)]
enum CoefKind {
    /// cⁿ (γ)_{n,k} / ((n!)² Γ_k(λn + μ + (b+1)/2))
    General,
    /// (−c)ⁿ / (n! Γ(n + μ + (b+1)/2))
    Cor1,
    /// (−1)ⁿ / (n!^m Γ(n + μ + 3/2)), m = 1 or 2
    Cor2 { printed: bool },
}

/// Generates C_0, C_1, … keeping the n-dependent prefix product both as a
/// plain float and as (ln|·|, sign), so the caller can fall back to the log
/// form when the plain one under- or overflows.
struct CoefStream {
    kind: CoefKind,
    p: KBesselParams,
    n: usize,
    prefix: f64,
    ln_prefix: f64,
    sign: f64,
}

#[derive(Debug, Clone, Copy)]
struct Coef {
    value: f64,
    ln_abs: f64,
    sign: f64,
}

impl CoefStream {
    fn new(kind: CoefKind, p: KBesselParams) -> Self {
        Self {
            kind,
            p,
            n: 0,
            prefix: 1.0,
            ln_prefix: 0.0,
            sign: 1.0,
        }
    }

    fn factor(&self, j: f64) -> f64 {
        let p = &self.p;
        match self.kind {
            CoefKind::General => p.c() * (p.g() + j * p.k()) / ((j + 1.0) * (j + 1.0)),
            CoefKind::Cor1 => -p.c() / (j + 1.0),
            CoefKind::Cor2 { printed: false } => -1.0 / (j + 1.0),
            CoefKind::Cor2 { printed: true } => -1.0 / ((j + 1.0) * (j + 1.0)),
        }
    }

    /// (Γ_k argument, k) of the denominator at index n.
    fn gamma_arg(&self, n: f64) -> (f64, f64) {
        let p = &self.p;
        match self.kind {
            CoefKind::General => (p.lam() * n + p.base_arg(), p.k()),
            CoefKind::Cor1 => (n + p.base_arg(), 1.0),
            CoefKind::Cor2 { .. } => (n + p.mu() + 1.5, 1.0),
        }
    }

    fn next(&mut self) -> Coef {
        let n = self.n as f64;
        if self.n > 0 {
            let f = self.factor(n - 1.0);
            self.prefix *= f;
            if f == 0.0 {
                self.sign = 0.0;
                self.ln_prefix = f64::NEG_INFINITY;
            } else {
                self.sign *= f.signum();
                self.ln_prefix += f.abs().ln();
            }
        }
        self.n += 1;
        if self.sign == 0.0 {
            return Coef {
                value: 0.0,
                ln_abs: f64::NEG_INFINITY,
                sign: 0.0,
            };
        }
        let (x, k) = self.gamma_arg(n);
        let ln_g = ln_gamma_k(x, k).unwrap_or(f64::NAN);
        let ln_abs = self.ln_prefix - ln_g;
        let direct = match gamma_k(x, k) {
            Ok(g) => self.prefix / g,
            Err(_) => f64::NAN,
        };
        let value = if direct.is_normal() {
            direct
        } else {
            self.sign * ln_abs.exp()
        };
        Coef {
            value,
            ln_abs,
            sign: self.sign,
        }
    }
}

/// C_n = cⁿ (γ)_{n,k} / ((n!)² Γ_k(λn + μ + (b+1)/2)), the coefficient of
/// (z/2)^{μ+2n} in 𝒥. Indices above 170 are evaluated in the log domain.
pub fn coeff(n: usize, params: &KBesselParams) -> f64 {
    let p = params;
    let arg = p.lam() * n as f64 + p.base_arg();
    if n > crate::kspecial::POCHHAMMER_LOG_THRESHOLD {
        let (ln_poch, sign_poch) = ln_abs_pochhammer_k(p.g(), n, p.k());
        if sign_poch == 0.0 || (p.c() == 0.0 && n > 0) {
            return 0.0;
        }
        let sign = sign_poch * if p.c() < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        let nf = n as f64;
        let ln_abs =
            nf * p.c().abs().ln() + ln_poch - 2.0 * libm::lgamma(nf + 1.0) - ln_gamma_k(arg, p.k()).unwrap_or(f64::NAN);
        return sign * ln_abs.exp();
    }
    let mut s = CoefStream::new(CoefKind::General, *p);
    let mut c = s.next();
    for _ in 0..n {
        c = s.next();
    }
    c.value
}

// ---------------------------------------------------------------------------
// the shared series engine

#[derive(Debug, Clone, Copy)]
struct Layout {
    kind: CoefKind,
    /// x/2, the base of the power (x/2)^{μ+2n}
    half_x: f64,
    derived: bool,
    /// argument of the Mittag-Leffler factors
    ml_z: f64,
    nu: f64,
    mu: f64,
}

fn gamma_pos(x: f64) -> (f64, f64) {
    let ln = libm::lgamma(x);
    let direct = if x < GAMMA_MAX_ARG {
        libm::tgamma(x)
    } else {
        f64::INFINITY
    };
    (direct, ln)
}

/// Σ_n C_n Γ(β_n) (x/2)^{μ+2n} E_{ν,β_n}(z) without the N₀ factor.
fn run_series(layout: Layout, params: KBesselParams, ctrl: &SeriesControl) -> EvalResult {
    let mut coefs = CoefStream::new(layout.kind, params);
    let mut acc = Accumulator::new(ctrl.compensated);
    let mut inner_err = 0.0;
    let mut diag = Diagnostics {
        nonpositive_order: layout.mu <= 0.0,
        singular_at_origin: layout.mu < 0.0,
        ..Diagnostics::default()
    };
    let ln_half = layout.half_x.ln();
    let mut prev_small = false;
    let mut prev_bound = f64::INFINITY;
    let mut last_bound = f64::INFINITY;
    let mut stopped = false;
    let mut terms = 0;
    for n in 0..ctrl.max_terms {
        terms = n + 1;
        let c = coefs.next();
        let power = layout.mu + 2.0 * n as f64;
        let beta = if layout.derived {
            layout.nu * power + 1.0
        } else {
            power + 1.0
        };
        // |C_n| (x/2)^{μ+2n}, which bounds the term since |Γ(β) E_{ν,β}(−x)| ≤ 1
        let bound = if c.sign == 0.0 {
            0.0
        } else {
            (c.ln_abs + power * ln_half).exp()
        };
        let mut term = 0.0;
        if c.sign != 0.0 {
            let (g_direct, g_ln) = gamma_pos(beta);
            let pw = layout.half_x.powf(power);
            let mut a = c.value * g_direct * pw;
            if !a.is_normal() {
                a = c.sign * (c.ln_abs + g_ln + power * ln_half).exp();
            }
            if a != 0.0 {
                let inner_ctrl = SeriesControl {
                    abs_tol: (ctrl.abs_tol / a.abs()).clamp(f64::MIN_POSITIVE, f64::MAX),
                    ..*ctrl
                };
                let params = match MlParams::new(layout.nu, beta) {
                    Ok(p) => p,
                    Err(_) => return EvalResult::domain_error(),
                };
                let e = ml(params, layout.ml_z, inner_ctrl);
                if e.status == Status::DomainError {
                    return EvalResult::domain_error();
                }
                diag = diag.merge(e.diagnostics);
                term = a * e.value;
                inner_err += a.abs() * e.tail_estimate;
            }
        }
        if !term.is_finite() {
            return EvalResult {
                value: f64::NAN,
                terms_used: terms,
                tail_estimate: f64::INFINITY,
                status: Status::PrecisionLoss,
                diagnostics: diag,
            };
        }
        acc.add(term);
        last_bound = bound.max(term.abs());
        let small = last_bound <= ctrl.threshold(acc.value());
        if small && prev_small && last_bound <= prev_bound {
            stopped = true;
            break;
        }
        prev_small = small;
        prev_bound = last_bound;
    }
    let value = acc.value();
    let tail = last_bound + inner_err + f64::EPSILON * acc.abs_sum();
    let status = if !stopped {
        Status::MaxTermsReached
    } else if tail <= ctrl.threshold(value) {
        Status::Converged
    } else {
        Status::PrecisionLoss
    };
    EvalResult {
        value,
        terms_used: terms,
        tail_estimate: tail,
        status,
        diagnostics: diag,
    }
}

fn evaluate(prob: &KineticProblem, t: f64, ctrl: &SeriesControl, variant: Variant) -> EvalResult {
    if !(t > 0.0) || !t.is_finite() || ctrl.validate().is_err() {
        return EvalResult::domain_error();
    }
    let nu = prob.nu;
    let et = (prob.e * t).powf(nu);
    let (kind, x, rate) = match variant {
        Variant::Thm1 => (CoefKind::General, t, prob.e),
        Variant::Thm2Published | Variant::Thm2Derived => (CoefKind::General, et, prob.e),
        Variant::Thm3Published | Variant::Thm3Derived => (CoefKind::General, et, prob.a),
        Variant::Cor1 => (CoefKind::Cor1, t, prob.e),
        Variant::Cor2 => (
            CoefKind::Cor2 {
                printed: prob.cor2.printed_factorials,
            },
            et,
            prob.a,
        ),
    };
    if variant.is_derived() && !(nu * prob.params.mu() + 1.0 > 0.0) {
        return EvalResult::domain_error();
    }
    let layout = Layout {
        kind,
        half_x: x / 2.0,
        derived: variant.is_derived(),
        ml_z: -(rate * t).powf(nu),
        nu,
        mu: prob.params.mu(),
    };
    let mut r = run_series(layout, prob.params, ctrl);
    if variant == Variant::Cor2 && prob.cor2.sqrt_pi_scaled {
        r = r.scaled(PI.sqrt() / 2.0);
    }
    r.scaled(prob.n0)
}

/// `thm1`, input 𝒥(t): `N₀ Σ C_n Γ(μ+2n+1) (t/2)^{μ+2n} E_{ν,μ+2n+1}(−eᵛtᵛ)`.
pub fn solve_thm1(prob: &KineticProblem, t: f64, ctrl: SeriesControl) -> EvalResult {
    evaluate(prob, t, &ctrl, Variant::Thm1)
}

/// `thm2_published`, input 𝒥(eᵛtᵛ), in its published form: the `thm1`
/// series with (t/2) replaced by (eᵛtᵛ/2).
pub fn solve_thm2_published(prob: &KineticProblem, t: f64, ctrl: SeriesControl) -> EvalResult {
    evaluate(prob, t, &ctrl, Variant::Thm2Published)
}

/// `thm2_derived`, input 𝒥(eᵛtᵛ):
/// `N₀ Σ C_n Γ(ν(μ+2n)+1) (eᵛtᵛ/2)^{μ+2n} E_{ν,ν(μ+2n)+1}(−eᵛtᵛ)`.
pub fn solve_thm2_derived(prob: &KineticProblem, t: f64, ctrl: SeriesControl) -> EvalResult {
    evaluate(prob, t, &ctrl, Variant::Thm2Derived)
}

/// `thm3_published`: `thm2_published` with destruction rate a.
pub fn solve_thm3_published(prob: &KineticProblem, t: f64, ctrl: SeriesControl) -> EvalResult {
    evaluate(prob, t, &ctrl, Variant::Thm3Published)
}

/// `thm3_derived`: `thm2_derived` with destruction rate a. With a = e this runs exactly
/// the arithmetic of [`solve_thm2_derived`].
pub fn solve_thm3_derived(prob: &KineticProblem, t: f64, ctrl: SeriesControl) -> EvalResult {
    evaluate(prob, t, &ctrl, Variant::Thm3Derived)
}

/// `cor1`, input w_{μ,b,c}(t): `N₀ Σ (−c)ⁿ Γ(μ+2n+1)/(n! Γ(n+μ+(b+1)/2)) (t/2)^{μ+2n} E_{ν,μ+2n+1}(−eᵛtᵛ)`.
pub fn solve_cor1(prob: &KineticProblem, t: f64, ctrl: SeriesControl) -> EvalResult {
    evaluate(prob, t, &ctrl, Variant::Cor1)
}

/// `cor2`, spherical Bessel input j_μ(eᵛtᵛ). By default the coefficient is
/// `(−1)ⁿ/(n! Γ(n+μ+3/2))` without the √π/2 prefactor; see
/// [`Cor2Options`] for the alternatives.
pub fn solve_cor2(prob: &KineticProblem, t: f64, ctrl: SeriesControl) -> EvalResult {
    evaluate(prob, t, &ctrl, Variant::Cor2)
}

/// Evaluates the problem's own variant at t > 0.
pub fn solve(prob: &KineticProblem, t: f64, ctrl: SeriesControl) -> EvalResult {
    evaluate(prob, t, &ctrl, prob.variant)
}

/// Laplace transform of the `thm1` solution,
/// `N₀ Σ C_n 2^{−(μ+2n)} Γ(μ+2n+1) p^{−(μ+2n+1)} / (1 + (e/p)^ν)`, for p > e.
pub fn laplace_solution_thm1(prob: &KineticProblem, p: f64, ctrl: SeriesControl) -> Result<EvalResult> {
    ensure(p.is_finite() && p > prob.e, "p must exceed e", p)?;
    if prob.variant != Variant::Thm1 {
        return Err(Error::Invalid(format!(
            "the Laplace closed form is defined for thm1, not {}",
            prob.variant
        )));
    }
    ctrl.validate()?;
    let mu = prob.params.mu();
    let mut coefs = CoefStream::new(CoefKind::General, prob.params);
    let ln_2p = (2.0 * p).ln();
    let r = crate::series::sum_series(&ctrl, |n| {
        let c = coefs.next();
        if c.sign == 0.0 {
            return 0.0;
        }
        let s = mu + 2.0 * n as f64;
        c.sign * (c.ln_abs + libm::lgamma(s + 1.0) - s * ln_2p).exp()
    });
    let scale = prob.n0 / (p * (1.0 + (prob.e / p).powf(prob.nu)));
    Ok(r.scaled(scale))
}

/// Evaluates the problem on every grid node (t = h, 2h, …, t_max), in
/// parallel. Failed points are kept with their status and a NaN value.
pub fn curve(prob: &KineticProblem, grid: &TimeGrid, ctrl: SeriesControl) -> SolutionCurve {
    curve_at(prob, &grid.nodes(), ctrl).expect("TimeGrid nodes are positive and increasing")
}

/// Evaluates the problem at arbitrary strictly increasing positive times.
pub fn curve_at(prob: &KineticProblem, times: &[f64], ctrl: SeriesControl) -> Result<SolutionCurve> {
    let results: Vec<EvalResult> = times.par_iter().map(|&t| solve(prob, t, ctrl)).collect();
    SolutionCurve::new(
        times.to_vec(),
        results.iter().map(|r| r.value).collect(),
        results.iter().map(|r| r.status).collect(),
        CurveMeta {
            description: prob.describe(),
            ctrl: Some(ctrl),
        },
    )
}

/// The input N₀ f(t) of the equation the variant solves, as a function of
/// t ≥ 0. At t = 0 the limit is returned (0 for μ > 0, +∞ for μ < 0).
pub fn forcing(prob: &KineticProblem, ctrl: SeriesControl) -> impl Fn(f64) -> f64 + Send + Sync {
    let prob = *prob;
    move |t: f64| {
        let p = &prob.params;
        let mu = p.mu();
        if t == 0.0 {
            return prob.n0 * origin_limit(&prob);
        }
        let et = (prob.e * t).powf(prob.nu);
        let v = match prob.variant {
            Variant::Thm1 => gen_mod_k_bessel(p, t, ctrl).value,
            Variant::Thm2Published | Variant::Thm2Derived | Variant::Thm3Published | Variant::Thm3Derived => {
                gen_mod_k_bessel(p, et, ctrl).value
            }
            Variant::Cor1 => gen_bessel_w(mu, p.b(), p.c(), t, ctrl).value,
            Variant::Cor2 => spherical_j(mu, et, ctrl).value,
        };
        prob.n0 * v
    }
}

fn origin_limit(prob: &KineticProblem) -> f64 {
    let p = &prob.params;
    let mu = p.mu();
    if mu > 0.0 {
        return 0.0;
    }
    if mu < 0.0 {
        return f64::INFINITY;
    }
    match prob.variant {
        Variant::Cor1 => crate::kspecial::rgamma(p.base_arg()),
        Variant::Cor2 => PI.sqrt() / 2.0 * crate::kspecial::rgamma(1.5),
        _ => gamma_k(p.base_arg(), p.k()).map(|g| 1.0 / g).unwrap_or(f64::NAN),
    }
}
