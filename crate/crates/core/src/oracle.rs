//! Brute-force checks of the closed forms: the Volterra solution of the
//! defining equation is computed on a fine grid and sampled where the
//! closed form is evaluated.

use crate::curve::{GridSamples, TimeGrid};
use crate::error::{Error, Result};
use crate::fracops::volterra_solve;
use crate::kinetic::{curve, forcing, Cor2Options, KineticProblem, Variant};
use crate::series::{SeriesControl, Status};

/// Pointwise comparison of a closed form against the Volterra oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub variant: Variant,
    pub times: Vec<f64>,
    pub closed_form: Vec<f64>,
    pub oracle: Vec<f64>,
    pub rel_err: Vec<f64>,
    pub statuses: Vec<Status>,
    pub max_rel_err: f64,
    /// Step of the oracle grid.
    pub oracle_h: f64,
}

impl Comparison {
    pub fn within(&self, tol: f64) -> bool {
        self.max_rel_err <= tol
    }
}

/// Where to compare and how fine the oracle is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSetup {
    /// Points t = t_max·j/m for j = 1..=m.
    pub report: TimeGrid,
    /// log₂(1/h) of the oracle grid.
    pub log2_inv_h: u32,
}

impl OracleSetup {
    /// 128 points on [2⁻⁶, 2], oracle step 2⁻¹².
    pub fn standard() -> Self {
        Self {
            report: TimeGrid::new(2.0, 128).expect("valid grid"),
            log2_inv_h: 12,
        }
    }

    pub fn with_step(mut self, log2_inv_h: u32) -> Self {
        self.log2_inv_h = log2_inv_h;
        self
    }

    fn oracle_grid(&self) -> Result<(TimeGrid, usize)> {
        let fine = TimeGrid::with_step(self.report.t_max(), self.log2_inv_h)?;
        let (m_fine, m_report) = (fine.steps(), self.report.steps());
        if m_fine < m_report || m_fine % m_report != 0 {
            return Err(Error::Invalid(format!(
                "oracle grid ({m_fine} steps) must refine the report grid ({m_report} steps)"
            )));
        }
        Ok((fine, m_fine / m_report))
    }
}

/// Volterra solution of the equation the problem's variant claims to solve.
pub fn oracle_samples(prob: &KineticProblem, grid: &TimeGrid, ctrl: SeriesControl) -> Result<GridSamples> {
    volterra_solve(forcing(prob, ctrl), prob.rate(), prob.nu(), grid)
}

/// Compares `prob` (its own variant) against the oracle of its equation.
pub fn compare(prob: &KineticProblem, setup: &OracleSetup, ctrl: SeriesControl) -> Result<Comparison> {
    let (fine, stride) = setup.oracle_grid()?;
    let oracle_all = oracle_samples(prob, &fine, ctrl)?;
    Ok(compare_against(prob, setup, &oracle_all, stride, ctrl))
}

fn compare_against(
    prob: &KineticProblem,
    setup: &OracleSetup,
    oracle_all: &GridSamples,
    stride: usize,
    ctrl: SeriesControl,
) -> Comparison {
    let closed = curve(prob, &setup.report, ctrl);
    let oracle: Vec<f64> = (1..=setup.report.steps())
        .map(|j| oracle_all.values[j * stride])
        .collect();
    let rel_err: Vec<f64> = closed
        .values()
        .iter()
        .zip(&oracle)
        .map(|(c, o)| (c - o).abs() / o.abs().max(f64::MIN_POSITIVE))
        .collect();
    let max_rel_err = rel_err
        .iter()
        .fold(0.0f64, |m, &e| if e.is_nan() { f64::NAN } else { m.max(e) });
    Comparison {
        variant: prob.variant(),
        times: closed.grid().to_vec(),
        closed_form: closed.values().to_vec(),
        oracle,
        rel_err,
        statuses: closed.statuses().to_vec(),
        max_rel_err,
        oracle_h: oracle_all.grid.h(),
    }
}

/// Outcome of comparing the published and the derived form of thm2 or
/// thm3 against the same oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjudication {
    pub published: Comparison,
    pub derived: Comparison,
    pub tol: f64,
}

impl Adjudication {
    /// The unique variant within tolerance, if exactly one is.
    pub fn verdict(&self) -> Option<Variant> {
        match (self.published.within(self.tol), self.derived.within(self.tol)) {
            (true, false) => Some(self.published.variant),
            (false, true) => Some(self.derived.variant),
            _ => None,
        }
    }

    pub fn verdict_line(&self) -> String {
        let outcome = match self.verdict() {
            Some(v) => format!("matched={v}"),
            None if self.published.within(self.tol) => "matched=both".to_string(),
            None => "matched=none".to_string(),
        };
        format!(
            "{outcome} tol={:e} published_max_rel_err={:.3e} derived_max_rel_err={:.3e}",
            self.tol, self.published.max_rel_err, self.derived.max_rel_err
        )
    }
}

/// Runs both forms of the variant family `prob` belongs to against one oracle
/// solve (the equation does not depend on which form is evaluated).
pub fn adjudicate(prob: &KineticProblem, setup: &OracleSetup, tol: f64, ctrl: SeriesControl) -> Result<Adjudication> {
    let (published, derived) = match prob.variant() {
        Variant::Thm2Published | Variant::Thm2Derived => (Variant::Thm2Published, Variant::Thm2Derived),
        Variant::Thm3Published | Variant::Thm3Derived => (Variant::Thm3Published, Variant::Thm3Derived),
        v => return Err(Error::Invalid(format!("adjudication applies to thm2/thm3, not {v}"))),
    };
    let (fine, stride) = setup.oracle_grid()?;
    let oracle_all = oracle_samples(prob, &fine, ctrl)?;
    let p = prob.with_variant(published)?;
    let d = prob.with_variant(derived)?;
    Ok(Adjudication {
        published: compare_against(&p, setup, &oracle_all, stride, ctrl),
        derived: compare_against(&d, setup, &oracle_all, stride, ctrl),
        tol,
    })
}

/// Error of each spherical-Bessel corollary option against the oracle whose
/// input is j_μ (with its √π/2 prefactor).
pub fn cor2_report(
    prob: &KineticProblem,
    setup: &OracleSetup,
    ctrl: SeriesControl,
) -> Result<Vec<(Cor2Options, Comparison)>> {
    if prob.variant() != Variant::Cor2 {
        return Err(Error::Invalid(format!(
            "cor2 report needs a cor2 problem, got {}",
            prob.variant()
        )));
    }
    let (fine, stride) = setup.oracle_grid()?;
    let oracle_all = oracle_samples(prob, &fine, ctrl)?;
    let mut out = Vec::new();
    for printed_factorials in [false, true] {
        for sqrt_pi_scaled in [false, true] {
            let opts = Cor2Options {
                sqrt_pi_scaled,
                printed_factorials,
            };
            let p = prob.with_cor2_options(opts);
            out.push((opts, compare_against(&p, setup, &oracle_all, stride, ctrl)));
        }
    }
    Ok(out)
}
