//! Executes a validated [`RunConfig`] and builds its output table.

use crate::config::{EvalTask, RunConfig, Task};
use crate::error::CliError;
use crate::output::{fmt_f64, Cell, Table};
use fkin_core::bessel_family as bf;
use fkin_core::curve::TimeGrid;
use fkin_core::fracops::{numeric_laplace, rl_integral_power, standard_decay};
use fkin_core::kinetic::{coeff, curve, laplace_solution_thm1, KineticProblem, Variant};
use fkin_core::kspecial as ks;
use fkin_core::mittag_leffler::{ml_with, MlConfig, MlParams};
use fkin_core::oracle::{adjudicate, compare, OracleSetup};
use fkin_core::{EvalResult, SeriesControl, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 2;

/// Output table plus the exit status the run should end with.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub exit_code: i32,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut table = match &cfg.task {
        Task::Eval { function, task } => eval(function, task, cfg.ctrl, cfg.ml)?,
        Task::Solve { problem, grid } => solve(problem, grid, cfg.ctrl),
        Task::OracleCompare {
            problem,
            report,
            log2_inv_h,
            tol,
        } => oracle_compare(problem, *report, *log2_inv_h, *tol, cfg.ctrl)?,
        Task::LaplaceCheck {
            problem,
            grid,
            p_values,
            tail_exponent,
            tol,
        } => laplace_check(problem, grid, p_values, *tail_exponent, *tol, cfg.ctrl)?,
    };
    let exit_code = match table.meta.iter().find(|(k, _)| k == "within_tolerance") {
        Some((_, v)) if v == "false" => EXIT_TOLERANCE,
        _ => EXIT_OK,
    };
    let mut meta: Vec<(String, String)> = cfg.entries.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    meta.append(&mut table.meta);
    table.meta = meta;
    Ok(Outcome { table, exit_code })
}

fn core(e: fkin_core::Error) -> CliError {
    CliError::Validation(e.to_string())
}

fn eval(function: &str, task: &EvalTask, ctrl: SeriesControl, mlc: MlConfig) -> Result<Table, CliError> {
    let exact = |r: fkin_core::Result<f64>| r.map(EvalResult::exact).map_err(core);
    let r = match *task {
        EvalTask::Gamma { x } => exact(ks::gamma(x))?,
        EvalTask::LnGamma { x } => exact(ks::ln_gamma(x))?,
        EvalTask::GammaK { x, k } => exact(ks::gamma_k(x, k))?,
        EvalTask::Pochhammer { lam, n } => EvalResult::exact(ks::pochhammer(lam, n)),
        EvalTask::PochhammerK { g, n, k } => EvalResult::exact(ks::pochhammer_k(g, n, k)),
        EvalTask::Ml { params, z } => ml_with(params, z, ctrl, mlc),
        EvalTask::MlOne { alpha, z } => ml_with(MlParams::new(alpha, 1.0).map_err(core)?, z, ctrl, mlc),
        EvalTask::GenBesselW { p, b, c, z } => bf::gen_bessel_w(p, b, c, z, ctrl),
        EvalTask::BesselJ { p, z } => bf::bessel_j(p, z, ctrl),
        EvalTask::BesselI { p, z } => bf::bessel_i(p, z, ctrl),
        EvalTask::SphericalJ { p, z } => bf::spherical_j(p, z, ctrl),
        EvalTask::PhiTransform { p, b, c, z } => bf::phi_transform(p, b, c, z, ctrl),
        EvalTask::KBessel { k, mu, g, lam, z } => bf::k_bessel(k, mu, g, lam, z, ctrl),
        EvalTask::GenModKBessel { params, z } => bf::gen_mod_k_bessel(&params, z, ctrl),
        EvalTask::Coeff { n, params } => EvalResult::exact(coeff(n, &params)),
        EvalTask::RlIntegralPower { mu, nu, t } => exact(rl_integral_power(mu, nu, t))?,
        EvalTask::StandardDecay { n0, c, t } => exact(standard_decay(n0, c, t))?,
    };
    let mut t = Table::new(&["function", "value", "terms_used", "tail_estimate", "status"]);
    t.push(vec![
        Cell::Text(function.to_string()),
        Cell::Num(r.value),
        Cell::Int(r.terms_used as u64),
        Cell::Num(r.tail_estimate),
        Cell::Text(r.status.as_str().into()),
    ]);
    Ok(t)
}

fn solve(problem: &KineticProblem, grid: &TimeGrid, ctrl: SeriesControl) -> Table {
    let c = curve(problem, grid, ctrl);
    let mut t = Table::new(&["t", "N", "status"]);
    for (time, value, status) in c.iter() {
        t.push(vec![
            Cell::Num(time),
            Cell::Num(value),
            Cell::Text(status.as_str().into()),
        ]);
    }
    t.meta("points", c.len().to_string());
    t.meta("worst_status", c.worst_status().as_str());
    t
}

fn oracle_compare(
    problem: &KineticProblem,
    report: TimeGrid,
    log2_inv_h: u32,
    tol: f64,
    ctrl: SeriesControl,
) -> Result<Table, CliError> {
    let setup = OracleSetup { report, log2_inv_h };
    if problem.variant().counterpart().is_some() {
        let adj = adjudicate(problem, &setup, tol, ctrl).map_err(core)?;
        let (p, d) = (&adj.published, &adj.derived);
        let mut t = Table::new(&[
            "t",
            "published",
            "derived",
            "oracle",
            "published_rel_err",
            "derived_rel_err",
        ]);
        for i in 0..p.times.len() {
            t.push(vec![
                Cell::Num(p.times[i]),
                Cell::Num(p.closed_form[i]),
                Cell::Num(d.closed_form[i]),
                Cell::Num(p.oracle[i]),
                Cell::Num(p.rel_err[i]),
                Cell::Num(d.rel_err[i]),
            ]);
        }
        t.meta("oracle_h", fmt_f64(p.oracle_h));
        t.meta("published_max_rel_err", fmt_f64(p.max_rel_err));
        t.meta("derived_max_rel_err", fmt_f64(d.max_rel_err));
        t.meta("verdict", adj.verdict_line());
        t.meta("within_tolerance", adj.verdict().is_some().to_string());
        return Ok(t);
    }
    let c = compare(problem, &setup, ctrl).map_err(core)?;
    let mut t = Table::new(&["t", "closed_form", "oracle", "rel_err", "status"]);
    for i in 0..c.times.len() {
        t.push(vec![
            Cell::Num(c.times[i]),
            Cell::Num(c.closed_form[i]),
            Cell::Num(c.oracle[i]),
            Cell::Num(c.rel_err[i]),
            Cell::Text(c.statuses[i].as_str().into()),
        ]);
    }
    t.meta("oracle_h", fmt_f64(c.oracle_h));
    t.meta("max_rel_err", fmt_f64(c.max_rel_err));
    t.meta("within_tolerance", c.within(tol).to_string());
    Ok(t)
}

fn laplace_check(
    problem: &KineticProblem,
    grid: &TimeGrid,
    p_values: &[f64],
    tail_exponent: f64,
    tol: f64,
    ctrl: SeriesControl,
) -> Result<Table, CliError> {
    debug_assert_eq!(problem.variant(), Variant::Thm1);
    let c = curve(problem, grid, ctrl);
    let mut t = Table::new(&["p", "closed_form", "quadrature", "rel_err", "tail_fraction"]);
    let mut ok = true;
    for &p in p_values {
        let closed = laplace_solution_thm1(problem, p, ctrl).map_err(core)?;
        let q = numeric_laplace(&c, tail_exponent, p).map_err(core)?;
        let rel = ((q.value - closed.value) / closed.value).abs();
        ok &= rel <= tol && !q.tail_warning && closed.status != Status::DomainError;
        t.push(vec![
            Cell::Num(p),
            Cell::Num(closed.value),
            Cell::Num(q.value),
            Cell::Num(rel),
            Cell::Num(q.tail_fraction),
        ]);
    }
    t.meta("curve_worst_status", c.worst_status().as_str());
    t.meta("within_tolerance", ok.to_string());
    Ok(t)
}
