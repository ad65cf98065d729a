//! Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
//! the individual checks, and exits non-zero on any failure that is not a
//! documented precision limit of double arithmetic.

use fkin_core::bessel_family::{gen_mod_k_bessel, phi_transform, KBesselParams};
use fkin_core::curve::{GridSamples, TimeGrid};
use fkin_core::fracops::{
    numeric_laplace, ode_oracle_nu1, rl_integral_grid, rl_integral_power, standard_decay, volterra_solve,
};
use fkin_core::kinetic::{curve, forcing, laplace_solution_thm1, solve, KineticProblem, Variant};
use fkin_core::kspecial::{gamma, gamma_k, ln_abs_pochhammer_k, ln_gamma_k, pochhammer_k};
use fkin_core::mittag_leffler::{ml, ml_asymptotic, ml_series, MlParams};
use fkin_core::oracle::{adjudicate, compare, OracleSetup};
use fkin_core::SeriesControl;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

const SEED: u64 = 0x5eed_f00d;

// tolerances
const KGAMMA_REL: f64 = 1e-12;
const KGAMMA_SCALING_REL: f64 = 1e-13;
const ML_IDENTITY: f64 = 1e-8;
const ML_BRANCH_REL: f64 = 1e-6;
const BESSEL_REL: f64 = 1e-12;
const BESSEL_GOLDEN: f64 = 1e-10;
const PHI_REL: f64 = 1e-10;
const THM1_ORACLE_REL: f64 = 5e-4;
const ADJUDICATION_REL: f64 = 5e-4;
const LATTICE_REL: f64 = 1e-12;
const LAPLACE_REL: f64 = 1e-3;
const LAPLACE_TAIL: f64 = 0.01;
const POWER_RULE_ORDER: f64 = 1.8;
const ODE_AGREEMENT: f64 = 1e-6;

const J0_1: f64 = 0.765_197_686_557_966_6;
const I0_1: f64 = 1.266_065_877_752_008_4;

struct Check {
    name: String,
    pass: bool,
    detail: String,
    /// Failure is a known limit of f64 arithmetic, reported but tolerated.
    precision_limit: bool,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: detail.into(),
        precision_limit: false,
    }
}

fn runtime(limit: Duration, elapsed: Duration) -> Check {
    check(
        format!("runtime < {:?}", limit),
        elapsed < limit,
        format!("{:.3} s", elapsed.as_secs_f64()),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn g1(mu: f64, k: f64) -> KBesselParams {
    KBesselParams::new(1.0, -1.0, 1.0, 1.0, mu, k).unwrap()
}

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

// 1 ------------------------------------------------------------------------

fn kgamma_identities() -> Vec<Check> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut rec, mut scale, mut ratio) = (0.0f64, 0.0f64, 0.0f64);
    let mut same_path = true;
    let mut log_domain = 0;
    for _ in 0..1000 {
        let x = rng.gen_range(0.1..=50.0);
        let k = rng.gen_range(0.1..=5.0);
        let g = rng.gen_range(0.0..10.0f64).max(1e-3);
        let n = rng.gen_range(0..=30usize);

        let lhs = gamma_k(x + k, k).unwrap();
        let rhs = x * gamma_k(x, k).unwrap();
        if lhs.is_finite() && rhs.is_finite() {
            rec = rec.max(rel(lhs, rhs));
        } else {
            log_domain += 1;
            let d = ln_gamma_k(x + k, k).unwrap() - x.ln() - ln_gamma_k(x, k).unwrap();
            rec = rec.max(d.abs());
        }

        same_path &= gamma_k(x, 1.0).unwrap().to_bits() == gamma(x).unwrap().to_bits();
        let direct = k.powf(x / k - 1.0) * gamma(x / k).unwrap();
        let gk = gamma_k(x, k).unwrap();
        if direct.is_finite() && gk.is_finite() {
            scale = scale.max(rel(gk, direct));
        }

        let target = gamma_k(g + n as f64 * k, k).unwrap();
        let prod = pochhammer_k(g, n, k) * gamma_k(g, k).unwrap();
        if target.is_finite() && prod.is_finite() {
            ratio = ratio.max(rel(prod, target));
        } else {
            log_domain += 1;
            let (lp, _) = ln_abs_pochhammer_k(g, n, k);
            let d = lp + ln_gamma_k(g, k).unwrap() - ln_gamma_k(g + n as f64 * k, k).unwrap();
            ratio = ratio.max(d.abs());
        }
    }
    vec![
        check("recurrence", rec <= KGAMMA_REL, format!("max rel err {rec:.2e}")),
        check(
            "k=1 shares the Gamma code path",
            same_path,
            "bitwise equal on all samples",
        ),
        check(
            "scaling identity",
            scale <= KGAMMA_SCALING_REL,
            format!("max rel err {scale:.2e}"),
        ),
        check(
            "k-Pochhammer ratio",
            ratio <= KGAMMA_REL,
            format!("max rel err {ratio:.2e}; {log_domain} overflowing cases compared in log domain"),
        ),
        runtime(Duration::from_secs(1), start.elapsed()),
    ]
}

// 2 ------------------------------------------------------------------------

fn mittag_leffler_identities() -> Vec<Check> {
    let start = Instant::now();
    let e11 = MlParams::new(1.0, 1.0).unwrap();
    let e21 = MlParams::new(2.0, 1.0).unwrap();
    let mut exp_err = 0.0f64;
    for i in 0..=200 {
        let z = -20.0 + 25.0 * i as f64 / 200.0;
        let err = (ml(e11, z, ctrl()).value - z.exp()).abs() / z.exp().max(1.0);
        exp_err = exp_err.max(err);
    }
    let mut cos_err = 0.0f64;
    for i in 0..=200 {
        let x = 10.0 * i as f64 / 200.0;
        cos_err = cos_err.max((ml(e21, -x * x, ctrl()).value - x.cos()).abs());
    }
    let mut checks = vec![
        check(
            "E_{1,1} = exp on [-20, 5]",
            exp_err <= ML_IDENTITY,
            format!("max err {exp_err:.2e}"),
        ),
        check(
            "E_{2,1}(-x^2) = cos x on [0, 10]",
            cos_err <= ML_IDENTITY,
            format!("max err {cos_err:.2e}"),
        ),
    ];
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for alpha in [0.5, 0.75, 1.0, 1.5] {
        for beta in [1.0, 2.0, 3.5] {
            let p = MlParams::new(alpha, beta).unwrap();
            let s = ml_series(p, -30.0, ctrl()).value;
            let a = ml_asymptotic(p, -30.0, ctrl()).value;
            let r = rel(s, a);
            worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
            detail.push(format!("({alpha},{beta}):{r:.1e}"));
        }
    }
    let mut overlap = check(
        "series/asymptotic overlap at z = -30",
        worst <= ML_BRANCH_REL,
        format!("rel gaps {}", detail.join(" ")),
    );
    overlap.precision_limit = true;
    checks.push(overlap);
    checks.push(runtime(Duration::from_secs(1), start.elapsed()));
    checks
}

// 3 ------------------------------------------------------------------------

/// Σ (−1)ⁿ (z/2)^{2n+μ} / (n! Γ(n+μ+1)) with every term built from lgamma.
fn bessel_j_reference(mu: f64, z: f64) -> f64 {
    let ln_half = (z / 2.0).ln();
    let mut sum = 0.0;
    for n in 0..200 {
        let nf = n as f64;
        let mag = ((2.0 * nf + mu) * ln_half - libm::lgamma(nf + 1.0) - libm::lgamma(nf + mu + 1.0)).exp();
        let term = if n % 2 == 0 { mag } else { -mag };
        sum += term;
        if mag < 1e-18 * sum.abs() && n > 2 {
            break;
        }
    }
    sum
}

fn bessel_reductions() -> Vec<Check> {
    let mut worst = 0.0f64;
    for mu in [0.0, 0.5, 1.0, 2.0] {
        let p = KBesselParams::new(1.0, -1.0, 1.0, 1.0, mu, 1.0).unwrap();
        for i in 1..=40 {
            let z = 4.0 * i as f64 / 40.0;
            worst = worst.max(rel(gen_mod_k_bessel(&p, z, ctrl()).value, bessel_j_reference(mu, z)));
        }
    }
    let j0 = fkin_core::bessel_family::bessel_j(0.0, 1.0, ctrl()).value;
    let i0 = fkin_core::bessel_family::bessel_i(0.0, 1.0, ctrl()).value;
    let mut phi = 0.0f64;
    for p in [0.0, 0.5, 1.0] {
        for b in [1.0, 2.0] {
            for c in [-1.0, 1.0] {
                let gp: f64 = p + (b + 1.0) / 2.0;
                for i in 1..=40 {
                    let z = 4.0 * i as f64 / 40.0;
                    let w = fkin_core::bessel_family::gen_bessel_w(p, b, c, z.sqrt(), ctrl()).value;
                    let rhs = 2f64.powf(p) * gamma(gp).unwrap() * z.powf(1.0 - p / 2.0) * w;
                    phi = phi.max(rel(phi_transform(p, b, c, z, ctrl()).value, rhs));
                }
            }
        }
    }
    vec![
        check(
            "generalized modified k-Bessel -> J_mu",
            worst <= BESSEL_REL,
            format!("max rel err {worst:.2e}"),
        ),
        check(
            "J_0(1), I_0(1)",
            rel(j0, J0_1) <= BESSEL_GOLDEN && rel(i0, I0_1) <= BESSEL_GOLDEN,
            format!("rel err {:.1e}, {:.1e}", rel(j0, J0_1), rel(i0, I0_1)),
        ),
        check(
            "phi transform identity",
            phi <= PHI_REL,
            format!("max rel err {phi:.2e}"),
        ),
    ]
}

// 4 ------------------------------------------------------------------------

fn thm1_oracle() -> Vec<Check> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for nu in [0.5, 0.75, 1.0] {
        for mu in [0.5, 1.0] {
            for k in [1.0, 2.0] {
                let prob = KineticProblem::new(1.0, 1.0, nu, g1(mu, k), Variant::Thm1).unwrap();
                let coarse = compare(&prob, &OracleSetup::standard(), ctrl()).unwrap();
                let fine = compare(&prob, &OracleSetup::standard().with_step(13), ctrl()).unwrap();
                checks.push(check(
                    format!("nu={nu} mu={mu} k={k}"),
                    coarse.within(THM1_ORACLE_REL) && fine.max_rel_err < coarse.max_rel_err,
                    format!("h=2^-12: {:.2e}, h=2^-13: {:.2e}", coarse.max_rel_err, fine.max_rel_err),
                ));
            }
        }
    }
    checks.push(runtime(Duration::from_secs(30), start.elapsed()));
    checks
}

// 5 ------------------------------------------------------------------------

fn adjudication() -> Vec<Check> {
    let mut checks = Vec::new();
    for nu in [0.5, 0.8] {
        for e in [0.7, 1.2] {
            for (variant, a) in [(Variant::Thm2Derived, e), (Variant::Thm3Derived, 0.7)] {
                let prob = KineticProblem::with_rates(1.0, e, a, nu, g1(1.0, 1.0), variant).unwrap();
                let first = adjudicate(&prob, &OracleSetup::standard(), ADJUDICATION_REL, ctrl()).unwrap();
                let again = adjudicate(&prob, &OracleSetup::standard(), ADJUDICATION_REL, ctrl()).unwrap();
                let family = if variant == Variant::Thm2Derived {
                    "thm2"
                } else {
                    "thm3"
                };
                checks.push(check(
                    format!("{family} nu={nu} e={e} a={a}"),
                    first.verdict().is_some() && first.verdict_line() == again.verdict_line(),
                    first.verdict_line(),
                ));
            }
        }
    }
    checks
}

// 6 ------------------------------------------------------------------------

struct Sampler(ChaCha8Rng);

impl Sampler {
    fn u(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.gen_range(lo..=hi)
    }
    fn t(&mut self) -> f64 {
        self.u(1.0 / 64.0, 2.0)
    }
}

fn lattice() -> Vec<Check> {
    let mut s = Sampler(ChaCha8Rng::seed_from_u64(SEED ^ 6));
    let (mut cor1, mut thm3, mut cor2, mut nu1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let (b, c, mu, nu, e, t) = (
            s.u(0.5, 2.5),
            s.u(-1.0, 1.0),
            s.u(0.0, 2.0),
            s.u(0.3, 1.0),
            s.u(0.5, 1.5),
            s.t(),
        );
        let p_cor = KBesselParams::new(b, c, 1.0, 1.0, mu, 1.0).unwrap();
        let p_thm = KBesselParams::new(b, -c, 1.0, 1.0, mu, 1.0).unwrap();
        let x = solve(
            &KineticProblem::new(1.0, e, nu, p_cor, Variant::Cor1).unwrap(),
            t,
            ctrl(),
        )
        .value;
        let y = solve(
            &KineticProblem::new(1.0, e, nu, p_thm, Variant::Thm1).unwrap(),
            t,
            ctrl(),
        )
        .value;
        cor1 = cor1.max(rel(x, y));
    }
    for _ in 0..50 {
        let p = KBesselParams::new(
            s.u(0.5, 2.5),
            s.u(-1.0, 1.0),
            s.u(0.5, 2.0),
            s.u(0.5, 2.0),
            s.u(0.0, 2.0),
            s.u(0.5, 2.0),
        )
        .unwrap();
        let (nu, e, t) = (s.u(0.3, 1.0), s.u(0.5, 1.5), s.t());
        for (v2, v3) in [
            (Variant::Thm2Published, Variant::Thm3Published),
            (Variant::Thm2Derived, Variant::Thm3Derived),
        ] {
            let x = solve(&KineticProblem::new(1.0, e, nu, p, v2).unwrap(), t, ctrl()).value;
            let y = solve(&KineticProblem::with_rates(1.0, e, e, nu, p, v3).unwrap(), t, ctrl()).value;
            thm3 = thm3.max(rel(y, x));
        }
    }
    for _ in 0..50 {
        let (mu, nu, e, a, t) = (s.u(0.0, 2.0), s.u(0.3, 1.0), s.u(0.5, 1.5), s.u(0.5, 1.5), s.t());
        let p = KBesselParams::new(2.0, -1.0, 1.0, 1.0, mu, 1.0).unwrap();
        let x = solve(
            &KineticProblem::with_rates(1.0, e, a, nu, p, Variant::Cor2).unwrap(),
            t,
            ctrl(),
        )
        .value;
        let y = solve(
            &KineticProblem::with_rates(1.0, e, a, nu, p, Variant::Thm3Published).unwrap(),
            t,
            ctrl(),
        )
        .value;
        cor2 = cor2.max(rel(x, y));
    }
    for _ in 0..50 {
        let p = KBesselParams::new(
            s.u(0.5, 2.5),
            s.u(-1.0, 1.0),
            s.u(0.5, 2.0),
            s.u(0.5, 2.0),
            s.u(0.0, 2.0),
            s.u(0.5, 2.0),
        )
        .unwrap();
        let (e, a, t) = (s.u(0.5, 1.5), s.u(0.5, 1.5), s.t());
        for (vp, vd) in [
            (Variant::Thm2Published, Variant::Thm2Derived),
            (Variant::Thm3Published, Variant::Thm3Derived),
        ] {
            let x = solve(&KineticProblem::with_rates(1.0, e, a, 1.0, p, vp).unwrap(), t, ctrl()).value;
            let y = solve(&KineticProblem::with_rates(1.0, e, a, 1.0, p, vd).unwrap(), t, ctrl()).value;
            nu1 = nu1.max(rel(x, y));
        }
    }
    vec![
        check(
            "Cor1 = Thm1(k=g=lam=1, c -> -c)",
            cor1 <= LATTICE_REL,
            format!("max rel err {cor1:.2e}"),
        ),
        check(
            "Thm3(a=e) = Thm2, both forms",
            thm3 <= LATTICE_REL,
            format!("max rel err {thm3:.2e}"),
        ),
        check(
            "Cor2 = Thm3Published(b=2, c=-1, k=lam=g=1)",
            cor2 <= LATTICE_REL,
            format!("max rel err {cor2:.2e}"),
        ),
        check(
            "nu=1: published = derived",
            nu1 <= LATTICE_REL,
            format!("max rel err {nu1:.2e}"),
        ),
    ]
}

// 7 ------------------------------------------------------------------------

fn laplace_residual() -> Vec<Check> {
    let prob = KineticProblem::new(1.0, 1.0, 1.0, g1(1.0, 1.0), Variant::Thm1).unwrap();
    let c = curve(&prob, &TimeGrid::new(16.0, 4096).unwrap(), ctrl());
    [2.0, 4.0, 8.0]
        .iter()
        .map(|&p| {
            let closed = laplace_solution_thm1(&prob, p, ctrl()).unwrap().value;
            let q = numeric_laplace(&c, 0.0, p).unwrap();
            let r = rel(q.value, closed);
            check(
                format!("p={p}"),
                r <= LAPLACE_REL && q.tail_fraction < LAPLACE_TAIL,
                format!("rel err {r:.2e}, tail fraction {:.1e}", q.tail_fraction),
            )
        })
        .collect()
}

// 8 ------------------------------------------------------------------------

fn power_rule_error(mu: f64, nu: f64, m: usize) -> f64 {
    let grid = TimeGrid::new(1.0, m).unwrap();
    let f = GridSamples::from_fn(grid, |t| t.powf(mu));
    let approx = rl_integral_grid(&f, nu).unwrap();
    let mut err = 0.0f64;
    let mut norm = 0.0f64;
    for i in 1..=m {
        let exact = rl_integral_power(mu, nu, grid.node(i)).unwrap();
        err = err.max((approx.values[i] - exact).abs());
        norm = norm.max(exact.abs());
    }
    err / norm
}

fn fractional_integral() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut min_order = f64::INFINITY;
    let mut exact_cases = 0;
    for mu in [0.0, 1.0, 2.0] {
        for nu in [0.3, 0.5, 0.9] {
            let errs: Vec<f64> = [64, 128, 256, 512]
                .iter()
                .map(|&m| power_rule_error(mu, nu, m))
                .collect();
            if errs[0] <= 1e-13 {
                // piecewise-linear inputs are integrated exactly
                exact_cases += 1;
                continue;
            }
            for w in errs.windows(2) {
                min_order = min_order.min((w[0] / w[1]).log2());
            }
        }
    }
    checks.push(check(
        "power rule convergence order",
        min_order >= POWER_RULE_ORDER,
        format!("min empirical order {min_order:.3}; {exact_cases} of 9 cases exact to rounding"),
    ));

    let prob = KineticProblem::new(1.0, 1.0, 1.0, g1(1.0, 1.0), Variant::Thm1).unwrap();
    let grid = TimeGrid::with_step(2.0, 12).unwrap();
    let g = forcing(&prob, ctrl());
    let v = volterra_solve(&g, 1.0, 1.0, &grid).unwrap();
    let o = ode_oracle_nu1(&g, 1.0, &grid).unwrap();
    let gap = v
        .values
        .iter()
        .zip(&o.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(check(
        "nu=1 Volterra vs ODE",
        gap <= ODE_AGREEMENT,
        format!("max abs diff {gap:.2e}"),
    ));

    let mut decay = Vec::new();
    for log2_inv_h in [8, 12] {
        let grid = TimeGrid::with_step(2.0, log2_inv_h).unwrap();
        let v = volterra_solve(|_| 1.0, 1.5, 1.0, &grid).unwrap();
        let err = (1..=grid.steps())
            .map(|i| (v.values[i] - standard_decay(1.0, 1.5, grid.node(i)).unwrap()).abs())
            .fold(0.0, f64::max);
        decay.push(err);
    }
    checks.push(check(
        "standard decay is the nu=1 constant-input limit",
        decay[1] < decay[0] && decay[1] <= ODE_AGREEMENT,
        format!("max abs err h=2^-8: {:.2e}, h=2^-12: {:.2e}", decay[0], decay[1]),
    ));
    checks
}

// 9 ------------------------------------------------------------------------

fn cli_determinism() -> Vec<Check> {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let dir = std::env::temp_dir().join(format!("fkin-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut checks = Vec::new();
    for name in ["solve_g1", "oracle_thm1", "oracle_thm2"] {
        let conf = golden.join(format!("{name}.conf"));
        let mut outs = Vec::new();
        for i in 0..2 {
            let out = dir.join(format!("{name}-{i}.csv"));
            let status = Command::new(env!("CARGO_BIN_EXE_fkin"))
                .args(["--config", conf.to_str().unwrap(), "--out", out.to_str().unwrap()])
                .status()
                .unwrap();
            outs.push((status.code(), std::fs::read(&out).unwrap_or_default()));
        }
        let want = std::fs::read(golden.join(format!("{name}.csv"))).unwrap_or_default();
        checks.push(check(
            name,
            outs[0].0 == Some(0) && outs[0].1 == outs[1].1 && outs[0].1 == want,
            format!(
                "{} bytes, two runs identical and equal to the checked-in file",
                want.len()
            ),
        ));
    }
    let _ = std::fs::remove_dir_all(&dir);
    checks
}

fn main() {
    type Criterion = (u8, &'static str, fn() -> Vec<Check>);
    let criteria: [Criterion; 9] = [
        (1, "k-Gamma identity suite", kgamma_identities),
        (2, "Mittag-Leffler identity suite", mittag_leffler_identities),
        (3, "Bessel reduction suite", bessel_reductions),
        (4, "thm1 closed form vs oracle", thm1_oracle),
        (5, "published vs derived adjudication", adjudication),
        (6, "consistency lattice", lattice),
        (7, "Laplace residual", laplace_residual),
        (8, "fractional-integral power rule", fractional_integral),
        (9, "CLI determinism", cli_determinism),
    ];
    let mut hard_failures = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let checks = run();
        let pass = checks.iter().all(|c| c.pass);
        println!(
            "criterion {id} {}: {title} ({:.2} s)",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for c in &checks {
            let tag = match (c.pass, c.precision_limit) {
                (true, _) => "pass",
                (false, true) => "FAIL (beyond f64 precision)",
                (false, false) => "FAIL",
            };
            println!("    {tag}  {}: {}", c.name, c.detail);
            if !c.pass && !c.precision_limit {
                hard_failures += 1;
            }
        }
    }
    if hard_failures > 0 {
        println!("{hard_failures} acceptance check(s) failed");
        std::process::exit(1);
    }
}
