//! Flat `key = value` configuration with command-line overrides.

use crate::error::CliError;
use fkin_core::bessel_family::KBesselParams;
use fkin_core::curve::TimeGrid;
use fkin_core::kinetic::{Cor2Options, KineticProblem, Variant};
use fkin_core::mittag_leffler::{MlConfig, MlParams, DEFAULT_Z_SWITCH};
use fkin_core::SeriesControl;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Solve,
    OracleCompare,
    LaplaceCheck,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Solve => "solve",
            Command::OracleCompare => "oracle-compare",
            Command::LaplaceCheck => "laplace-check",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "eval" => Ok(Command::Eval),
            "solve" => Ok(Command::Solve),
            "oracle-compare" => Ok(Command::OracleCompare),
            "laplace-check" => Ok(Command::LaplaceCheck),
            _ => Err(CliError::Validation(format!(
                "unknown command '{s}' (expected eval, solve, oracle-compare or laplace-check)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Validation(format!("format must be csv or json (got '{s}')"))),
        }
    }
}

/// Functions reachable through `eval`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalTask {
    Gamma { x: f64 },
    LnGamma { x: f64 },
    GammaK { x: f64, k: f64 },
    Pochhammer { lam: f64, n: usize },
    PochhammerK { g: f64, n: usize, k: f64 },
    Ml { params: MlParams, z: f64 },
    MlOne { alpha: f64, z: f64 },
    GenBesselW { p: f64, b: f64, c: f64, z: f64 },
    BesselJ { p: f64, z: f64 },
    BesselI { p: f64, z: f64 },
    SphericalJ { p: f64, z: f64 },
    PhiTransform { p: f64, b: f64, c: f64, z: f64 },
    KBessel { k: f64, mu: f64, g: f64, lam: f64, z: f64 },
    GenModKBessel { params: KBesselParams, z: f64 },
    Coeff { n: usize, params: KBesselParams },
    RlIntegralPower { mu: f64, nu: f64, t: f64 },
    StandardDecay { n0: f64, c: f64, t: f64 },
}

const FUNCTIONS: &[(&str, &[&str])] = &[
    ("gamma", &["x"]),
    ("ln_gamma", &["x"]),
    ("gamma_k", &["x", "k"]),
    ("pochhammer", &["lam", "n"]),
    ("pochhammer_k", &["g", "n", "k"]),
    ("ml", &["alpha", "beta", "z", "z_switch"]),
    ("ml_one", &["alpha", "z", "z_switch"]),
    ("gen_bessel_w", &["p", "b", "c", "z"]),
    ("bessel_j", &["p", "z"]),
    ("bessel_i", &["p", "z"]),
    ("spherical_j", &["p", "z"]),
    ("phi_transform", &["p", "b", "c", "z"]),
    ("k_bessel", &["k", "mu", "g", "lam", "z"]),
    ("gen_mod_k_bessel", &["b", "c", "g", "lam", "mu", "k", "z"]),
    ("coeff", &["n", "b", "c", "g", "lam", "mu", "k"]),
    ("rl_integral_power", &["mu", "nu", "t"]),
    ("standard_decay", &["n0", "c", "t"]),
];

/// What a validated configuration asks for.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Eval {
        function: String,
        task: EvalTask,
    },
    Solve {
        problem: KineticProblem,
        grid: TimeGrid,
    },
    OracleCompare {
        problem: KineticProblem,
        report: TimeGrid,
        log2_inv_h: u32,
        tol: f64,
    },
    LaplaceCheck {
        problem: KineticProblem,
        grid: TimeGrid,
        p_values: Vec<f64>,
        tail_exponent: f64,
        tol: f64,
    },
}

/// A fully validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub ctrl: SeriesControl,
    pub ml: MlConfig,
    pub task: Task,
    /// Effective key/value pairs (file values with overrides applied), used
    /// for the metadata echo. `out` is not included.
    pub entries: BTreeMap<String, String>,
}

#[derive(Clone, Copy)]
enum Kind {
    Real,
    Count,
    Flag,
    Text,
}

const COMMON: &[&str] = &[
    "command",
    "format",
    "out",
    "max_terms",
    "abs_tol",
    "rel_tol",
    "compensated",
];
const PROBLEM: &[&str] = &[
    "variant",
    "n0",
    "e",
    "a",
    "nu",
    "b",
    "c",
    "g",
    "lam",
    "mu",
    "k",
    "t_max",
    "steps",
    "cor2_sqrt_pi",
    "cor2_printed",
];

fn kind_of(key: &str) -> Option<Kind> {
    Some(match key {
        "command" | "format" | "out" | "function" | "variant" | "p_values" => Kind::Text,
        "max_terms" | "n" | "steps" | "oracle_log2_inv_h" => Kind::Count,
        "compensated" | "cor2_sqrt_pi" | "cor2_printed" => Kind::Flag,
        "abs_tol" | "rel_tol" | "z_switch" | "x" | "k" | "lam" | "g" | "alpha" | "beta" | "z" | "p" | "b" | "c"
        | "mu" | "nu" | "t" | "n0" | "e" | "a" | "t_max" | "tol" | "tail_exponent" => Kind::Real,
        _ => return None,
    })
}

/// Per-key invariants that hold wherever the key is used.
fn check_domain(key: &str, v: f64) -> Result<(), CliError> {
    let bad = |msg: &str| Err(CliError::Validation(format!("{msg} (got {v})")));
    match key {
        "k" if !(v > 0.0) => bad("k must be positive (k > 0)"),
        "mu" if !(v > -1.0) => bad("mu must exceed -1"),
        "nu" if !(v > 0.0) => bad("nu must be positive"),
        "e" if !(v > 0.0) => bad("e must be positive"),
        "a" if !(v > 0.0) => bad("a must be positive"),
        "n0" if !(v >= 0.0) => bad("n0 must be non-negative"),
        "alpha" if !(v > 0.0) => bad("alpha must be positive"),
        "beta" if !(v > 0.0) => bad("beta must be positive"),
        "t" if !(v > 0.0) => bad("t must be positive"),
        "t_max" if !(v > 0.0) => bad("t_max must be positive"),
        "abs_tol" | "rel_tol" | "tol" if !(v > 0.0) => bad(&format!("{key} must be positive")),
        "z_switch" if !(v > 0.0) => bad("z_switch must be positive"),
        _ => Ok(()),
    }
}

/// Parses `key = value` lines. Blank lines and text after `#` are ignored.
/// Later occurrences of a key replace earlier ones.
pub fn parse_text(source: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in source.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Parse {
            line: line_no,
            msg: format!("expected 'key = value', found '{line}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(CliError::Parse {
                line: line_no,
                msg: "missing key before '='".into(),
            });
        }
        if kind_of(key).is_none() {
            return Err(CliError::Parse {
                line: line_no,
                msg: format!("unknown key '{key}'"),
            });
        }
        if out.insert(key.to_string(), value.to_string()).is_some() {
            return Err(CliError::Parse {
                line: line_no,
                msg: format!("key '{key}' is set twice"),
            });
        }
    }
    Ok(out)
}

/// Parses a configuration text, applies `overrides` (flag values win) and
/// validates the result.
pub fn parse_config(source: &str, overrides: &[(String, String)]) -> Result<RunConfig, CliError> {
    let mut entries = parse_text(source)?;
    for (k, v) in overrides {
        if kind_of(k).is_none() {
            return Err(CliError::Validation(format!("unknown key '{k}'")));
        }
        entries.insert(k.clone(), v.clone());
    }
    validate(entries)
}

struct Values {
    map: BTreeMap<String, String>,
}

impl Values {
    fn real(&self, key: &str) -> Result<Option<f64>, CliError> {
        let Some(s) = self.map.get(key) else { return Ok(None) };
        let v: f64 = s
            .parse()
            .map_err(|_| CliError::Validation(format!("{key} must be a decimal number (got '{s}')")))?;
        if !v.is_finite() {
            return Err(CliError::Validation(format!("{key} must be finite (got '{s}')")));
        }
        Ok(Some(v))
    }

    fn need_real(&self, key: &str) -> Result<f64, CliError> {
        self.real(key)?.ok_or_else(|| missing(key))
    }

    fn count(&self, key: &str) -> Result<Option<usize>, CliError> {
        let Some(s) = self.map.get(key) else { return Ok(None) };
        s.parse()
            .map(Some)
            .map_err(|_| CliError::Validation(format!("{key} must be a non-negative integer (got '{s}')")))
    }

    fn flag(&self, key: &str) -> Result<Option<bool>, CliError> {
        let Some(s) = self.map.get(key) else { return Ok(None) };
        match s.as_str() {
            "true" => Ok(Some(true)),
            "false" => Ok(Some(false)),
            _ => Err(CliError::Validation(format!("{key} must be true or false (got '{s}')"))),
        }
    }

    fn text(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }
}

fn missing(key: &str) -> CliError {
    CliError::Validation(format!("missing required key '{key}'"))
}

fn core(e: fkin_core::Error) -> CliError {
    CliError::Validation(e.to_string())
}

fn validate(map: BTreeMap<String, String>) -> Result<RunConfig, CliError> {
    let v = Values { map };
    // typed parsing and per-key domains first, so bad values are reported
    // even when the key would also be out of place
    for (key, raw) in &v.map {
        match kind_of(key).expect("keys were checked on entry") {
            Kind::Real => check_domain(key, v.real(key)?.expect("present"))?,
            Kind::Count => {
                v.count(key)?;
            }
            Kind::Flag => {
                v.flag(key)?;
            }
            Kind::Text if raw.is_empty() => return Err(CliError::Validation(format!("{key} must not be empty"))),
            Kind::Text => {}
        }
    }
    let command: Command = v.text("command").ok_or_else(|| missing("command"))?.parse()?;
    let format = v.text("format").map(str::parse).transpose()?.unwrap_or_default();
    let out = v.text("out").map(PathBuf::from);

    let mut ctrl = SeriesControl::default();
    if let Some(n) = v.count("max_terms")? {
        ctrl.max_terms = n;
    }
    if let Some(x) = v.real("abs_tol")? {
        ctrl.abs_tol = x;
    }
    if let Some(x) = v.real("rel_tol")? {
        ctrl.rel_tol = x;
    }
    if let Some(b) = v.flag("compensated")? {
        ctrl.compensated = b;
    }
    ctrl.validate().map_err(core)?;
    let ml = MlConfig {
        z_switch: v.real("z_switch")?.unwrap_or(DEFAULT_Z_SWITCH),
    };

    let mut allowed: Vec<&str> = COMMON.to_vec();
    let task = match command {
        Command::Eval => {
            let function = v.text("function").ok_or_else(|| missing("function"))?.to_string();
            let args = FUNCTIONS
                .iter()
                .find(|(name, _)| *name == function)
                .map(|(_, a)| *a)
                .ok_or_else(|| CliError::Validation(format!("unknown function '{function}'")))?;
            allowed.push("function");
            allowed.extend_from_slice(args);
            Task::Eval {
                task: eval_task(&function, &v)?,
                function,
            }
        }
        Command::Solve => {
            allowed.extend_from_slice(PROBLEM);
            Task::Solve {
                problem: problem(&v, command)?,
                grid: grid(&v)?,
            }
        }
        Command::OracleCompare => {
            allowed.extend_from_slice(PROBLEM);
            allowed.extend_from_slice(&["oracle_log2_inv_h", "tol"]);
            let report = grid(&v)?;
            let log2_inv_h = v.count("oracle_log2_inv_h")?.unwrap_or(12);
            if log2_inv_h > 24 {
                return Err(CliError::Validation(format!(
                    "oracle_log2_inv_h must be at most 24 (got {log2_inv_h})"
                )));
            }
            Task::OracleCompare {
                problem: problem(&v, command)?,
                report,
                log2_inv_h: log2_inv_h as u32,
                tol: v.real("tol")?.unwrap_or(5e-4),
            }
        }
        Command::LaplaceCheck => {
            allowed.extend_from_slice(PROBLEM);
            allowed.extend_from_slice(&["p_values", "tail_exponent", "tol"]);
            let problem = problem(&v, command)?;
            let p_values = parse_list(v.text("p_values").ok_or_else(|| missing("p_values"))?)?;
            for &p in &p_values {
                if !(p > problem.e()) {
                    return Err(CliError::Validation(format!("p must exceed e (got {p})")));
                }
            }
            Task::LaplaceCheck {
                problem,
                grid: grid(&v)?,
                p_values,
                tail_exponent: v.real("tail_exponent")?.unwrap_or(0.0),
                tol: v.real("tol")?.unwrap_or(1e-3),
            }
        }
    };
    if let Some(key) = v.map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::Validation(format!(
            "key '{key}' is not used by command {command}"
        )));
    }
    let mut entries = v.map;
    entries.remove("out");
    Ok(RunConfig {
        command,
        format,
        out,
        ctrl,
        ml,
        task,
        entries,
    })
}

fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    let vals: Vec<f64> =
        s.split(',')
            .map(|x| {
                let x = x.trim();
                x.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                    CliError::Validation(format!("p_values must be comma-separated decimals (got '{x}')"))
                })
            })
            .collect::<Result<_, _>>()?;
    if vals.is_empty() {
        return Err(CliError::Validation("p_values must not be empty".into()));
    }
    Ok(vals)
}

fn grid(v: &Values) -> Result<TimeGrid, CliError> {
    let t_max = v.real("t_max")?.unwrap_or(2.0);
    let steps = v.count("steps")?.unwrap_or(128);
    if !steps.is_power_of_two() || steps > 1 << 24 {
        return Err(CliError::Validation(format!(
            "steps must be a power of two no larger than 2^24 (got {steps})"
        )));
    }
    TimeGrid::new(t_max, steps).map_err(core)
}

fn problem(v: &Values, command: Command) -> Result<KineticProblem, CliError> {
    let variant: Variant = match v.text("variant") {
        Some(s) => s.parse().map_err(core)?,
        None if command == Command::LaplaceCheck => Variant::Thm1,
        None => return Err(missing("variant")),
    };
    if command == Command::LaplaceCheck && variant != Variant::Thm1 {
        return Err(CliError::Validation(format!(
            "laplace-check requires variant thm1 (got {variant})"
        )));
    }
    let n0 = v.need_real("n0")?;
    let e = v.need_real("e")?;
    let nu = v.need_real("nu")?;
    let mu = v.need_real("mu")?;
    // parameters forced by the corollaries may be omitted
    let (b, c) = match variant {
        Variant::Cor2 => (v.real("b")?.unwrap_or(2.0), v.real("c")?.unwrap_or(-1.0)),
        _ => (v.need_real("b")?, v.need_real("c")?),
    };
    let (g, lam, k) = match variant {
        Variant::Cor1 | Variant::Cor2 => (
            v.real("g")?.unwrap_or(1.0),
            v.real("lam")?.unwrap_or(1.0),
            v.real("k")?.unwrap_or(1.0),
        ),
        _ => (v.need_real("g")?, v.need_real("lam")?, v.need_real("k")?),
    };
    let a = v.real("a")?.unwrap_or(e);
    let params = KBesselParams::new(b, c, g, lam, mu, k).map_err(core)?;
    let opts = Cor2Options {
        sqrt_pi_scaled: v.flag("cor2_sqrt_pi")?.unwrap_or(false),
        printed_factorials: v.flag("cor2_printed")?.unwrap_or(false),
    };
    Ok(KineticProblem::with_rates(n0, e, a, nu, params, variant)
        .map_err(core)?
        .with_cor2_options(opts))
}

fn eval_task(function: &str, v: &Values) -> Result<EvalTask, CliError> {
    let r = |k: &str| v.need_real(k);
    let n = || v.count("n")?.ok_or_else(|| missing("n"));
    let kparams = || -> Result<KBesselParams, CliError> {
        KBesselParams::new(r("b")?, r("c")?, r("g")?, r("lam")?, r("mu")?, r("k")?).map_err(core)
    };
    Ok(match function {
        "gamma" => EvalTask::Gamma { x: r("x")? },
        "ln_gamma" => EvalTask::LnGamma { x: r("x")? },
        "gamma_k" => EvalTask::GammaK { x: r("x")?, k: r("k")? },
        "pochhammer" => EvalTask::Pochhammer {
            lam: r("lam")?,
            n: n()?,
        },
        "pochhammer_k" => EvalTask::PochhammerK {
            g: r("g")?,
            n: n()?,
            k: r("k")?,
        },
        "ml" => EvalTask::Ml {
            params: MlParams::new(r("alpha")?, r("beta")?).map_err(core)?,
            z: r("z")?,
        },
        "ml_one" => EvalTask::MlOne {
            alpha: r("alpha")?,
            z: r("z")?,
        },
        "gen_bessel_w" => EvalTask::GenBesselW {
            p: r("p")?,
            b: r("b")?,
            c: r("c")?,
            z: positive_z(v)?,
        },
        "bessel_j" => EvalTask::BesselJ {
            p: r("p")?,
            z: positive_z(v)?,
        },
        "bessel_i" => EvalTask::BesselI {
            p: r("p")?,
            z: positive_z(v)?,
        },
        "spherical_j" => EvalTask::SphericalJ {
            p: r("p")?,
            z: positive_z(v)?,
        },
        "phi_transform" => EvalTask::PhiTransform {
            p: r("p")?,
            b: r("b")?,
            c: r("c")?,
            z: positive_z(v)?,
        },
        "k_bessel" => {
            let (mu, lam) = (r("mu")?, r("lam")?);
            if !(mu > 0.0) {
                return Err(CliError::Validation(format!("k_bessel requires mu > 0 (got {mu})")));
            }
            if !(lam > 0.0) {
                return Err(CliError::Validation(format!(
                    "lam must be positive (lam > 0) (got {lam})"
                )));
            }
            EvalTask::KBessel {
                k: r("k")?,
                mu,
                g: r("g")?,
                lam,
                z: positive_z(v)?,
            }
        }
        "gen_mod_k_bessel" => EvalTask::GenModKBessel {
            params: kparams()?,
            z: positive_z(v)?,
        },
        "coeff" => EvalTask::Coeff {
            n: n()?,
            params: kparams()?,
        },
        "rl_integral_power" => EvalTask::RlIntegralPower {
            mu: r("mu")?,
            nu: r("nu")?,
            t: r("t")?,
        },
        "standard_decay" => {
            let c = r("c")?;
            if !(c > 0.0) {
                return Err(CliError::Validation(format!("c must be positive (got {c})")));
            }
            EvalTask::StandardDecay {
                n0: r("n0")?,
                c,
                t: r("t")?,
            }
        }
        other => return Err(CliError::Validation(format!("unknown function '{other}'"))),
    })
}

fn positive_z(v: &Values) -> Result<f64, CliError> {
    let z = v.need_real("z")?;
    if !(z > 0.0) {
        return Err(CliError::Validation(format!("z must be positive (got {z})")));
    }
    Ok(z)
}
