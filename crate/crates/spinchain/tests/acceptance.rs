//! Acceptance criteria, one PASS/FAIL line each.
//!
//! `SPINCHAIN_ACCEPTANCE=3,6` runs a subset. `SPINCHAIN_FULL=1` adds the
//! 20-spin peak positions of criterion 9 (2^18-dimensional solves at Δ = 5,
//! several minutes on one core).
//!
//! Criteria listed in `EXPECTED_FAILURES` are evaluated at full strictness
//! and still print FAIL; they do not fail the test binary. Any other failure
//! does.

use std::error::Error;
use std::process::ExitCode;
use std::time::Instant;

use spinchain_core::eigensolve::{dense_eigenvalues, lanczos_ground};
use spinchain_core::entanglement::{dsb, lambda_analytic, negativity, reduce, von_neumann};
use spinchain_core::models::q_sector;
use spinchain_core::observables::{correlator_x, finite_difference, locate_extremes, magnetization_x, ExtremeKind, Series, SweptParameter};
use spinchain_core::verify::{
    check_constraints_on_ground_state, check_constraints_on_state, check_energy_equivalence, check_link_algebra,
    check_link_algebra_of, compare_pairs, link_set, CheckStatus,
};
use spinchain_core::{
    build_hamiltonian, ground_state, Axis, Complex64, EigenResult, LanczosOptions, ModelKind, ModelParams,
    PauliString, QuantumState, Sector, SpinBasis,
};
use std::sync::Arc;

type Outcome = Result<(bool, String), Box<dyn Error>>;
type Criterion = (u8, &'static str, fn() -> Outcome);

const AT: ModelKind = ModelKind::AshkinTeller;
const XXZ: ModelKind = ModelKind::StaggeredXxz;

const STEP: f64 = 0.025;
const FRONTAL: [usize; 2] = [0, 1];
const QUARTET: [usize; 4] = [0, 1, 2, 3];
const SIGMA_SIGMA: [usize; 2] = [0, 2];
const SIGMA_TAU_CROSS: [usize; 2] = [0, 3];

const EXPECTED_FAILURES: &[(u8, &str)] = &[
    (8, "the quartet state approaches the dimer limit as 1/β, about 6e-4 away at β = 100"),
    (9, "the second dS/dβ maximum of the 8-spin chain sits near β = 1.65"),
];

fn opts() -> LanczosOptions {
    LanczosOptions::default()
}

/// `start, start + step, ..., stop` with both ends included.
fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9).collect()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn solve(model: ModelKind, m: usize, delta: f64, beta: f64) -> Result<(ModelParams, EigenResult), Box<dyn Error>> {
    let p = ModelParams::new(model, m, delta, beta)?;
    let g = ground_state(&p, &opts())?;
    Ok((p, g))
}

fn entropy(psi: &QuantumState, sites: &[usize]) -> Result<f64, Box<dyn Error>> {
    Ok(von_neumann(&reduce(psi, sites)?)?)
}

fn pair_negativity(psi: &QuantumState, sites: &[usize]) -> Result<f64, Box<dyn Error>> {
    Ok(negativity(&reduce(psi, sites)?, &sites[..1])?)
}

fn near(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol + 1e-9
}

/// Energy equivalence on a 5×5 grid for M = 3..6.
fn c1() -> Outcome {
    const TOL: f64 = 1e-8;
    let mut worst = 0.0f64;
    let mut count = 0;
    for m in 3..=6 {
        for &d in &linspace(-0.5, 2.0, 5) {
            for &b in &linspace(0.5, 2.0, 5) {
                worst = worst.max(check_energy_equivalence(d, b, m, &opts())?.max_deviation);
                count += 1;
            }
        }
    }
    Ok((worst <= TOL, format!("max |E0(AT) - E0(XXZ)| = {worst:.2e} over {count} points (tol {TOL:e})")))
}

/// Frontal pair (AT) against intra-dimer pair (XXZ).
fn c2() -> Outcome {
    const ENTROPY_TOL: f64 = 1e-8;
    const EIGEN_TOL: f64 = 1e-9;
    let (mut ds, mut de) = (0.0f64, 0.0f64);
    let mut degenerate = Vec::new();
    for m in 3..=5 {
        for &d in &linspace(-0.5, 2.0, 5) {
            for &b in &linspace(0.5, 2.0, 5) {
                let c = compare_pairs(d, b, m, &opts())?;
                if c.degenerate {
                    degenerate.push(format!("M={m} Δ={d} β={b}"));
                }
                ds = ds.max((c.at_entropy - c.xxz_entropy).abs());
                de = de.max(c.eigenvalue_deviation());
            }
        }
    }
    let pass = ds <= ENTROPY_TOL && de <= EIGEN_TOL && degenerate.is_empty();
    let mut detail = format!("max |ΔS| = {ds:.2e} (tol {ENTROPY_TOL:e}), max eigenvalue deviation = {de:.2e} (tol {EIGEN_TOL:e})");
    if !degenerate.is_empty() {
        detail += &format!("; degenerate ground states at {}", degenerate.join(", "));
    }
    Ok((pass, detail))
}

fn entropy_series(model: ModelKind, m: usize, beta: f64, deltas: &[f64], sites: &[usize]) -> Result<Series, Box<dyn Error>> {
    let mut values = Vec::new();
    for &d in deltas {
        let (_, g) = solve(model, m, d, beta)?;
        values.push(entropy(g.ground_state(), sites)?);
    }
    Ok(Series::new(SweptParameter::Delta, deltas.to_vec(), values, "entropy")?)
}

fn extremes_of(s: &Series, kind: ExtremeKind) -> Vec<f64> {
    locate_extremes(s).into_iter().filter(|e| e.kind == kind).map(|e| e.parameter).collect()
}

/// Unique interior maximum of the frontal-pair entropy at Δ = 1.
fn c3() -> Outcome {
    let deltas = grid(0.5, 1.5, STEP);
    let mut pass = true;
    let mut parts = Vec::new();
    for spins in (8..=16).step_by(2) {
        let s = entropy_series(AT, spins / 2, 1.0, &deltas, &FRONTAL)?;
        let maxima = extremes_of(&s, ExtremeKind::Max);
        let ok = maxima.len() == 1 && near(maxima[0], 1.0, STEP);
        pass &= ok;
        parts.push(format!("{spins}: max at {maxima:?}"));
    }
    Ok((pass, parts.join("; ")))
}

/// Minimum at Δ = 1 for β < 1, maximum for β >= 1 (12 spins).
fn c4() -> Outcome {
    let deltas = grid(0.5, 1.5, STEP);
    let mut pass = true;
    let mut parts = Vec::new();
    for (beta, kind) in [
        (0.5, ExtremeKind::Min),
        (0.75, ExtremeKind::Min),
        (1.0, ExtremeKind::Max),
        (1.25, ExtremeKind::Max),
        (1.75, ExtremeKind::Max),
    ] {
        let s = entropy_series(AT, 6, beta, &deltas, &FRONTAL)?;
        let found = extremes_of(&s, kind);
        let ok = found.iter().any(|&x| near(x, 1.0, STEP));
        pass &= ok;
        parts.push(format!("β={beta}: {kind:?} at {found:?}"));
    }
    Ok((pass, parts.join("; ")))
}

/// Vanishing σ-τ negativities and no extremum of the σ-σ negativity at Δ = 1.
fn c5() -> Outcome {
    const TOL: f64 = 1e-10;
    let deltas = grid(0.0, 2.0, STEP);
    let (mut frontal, mut cross) = (0.0f64, 0.0f64);
    let mut pass = true;
    let mut parts = Vec::new();
    for spins in (8..=16).step_by(2) {
        let mut ss = Vec::new();
        for &d in &deltas {
            let (_, g) = solve(AT, spins / 2, d, 1.0)?;
            let psi = g.ground_state();
            frontal = frontal.max(pair_negativity(psi, &FRONTAL)?);
            cross = cross.max(pair_negativity(psi, &SIGMA_TAU_CROSS)?);
            if (0.9 - 1e-9..=1.1 + 1e-9).contains(&d) {
                ss.push(pair_negativity(psi, &SIGMA_SIGMA)?);
            }
        }
        let diffs: Vec<f64> = ss.windows(2).map(|w| w[1] - w[0]).filter(|x| *x != 0.0).collect();
        let flips = diffs.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        pass &= flips == 0;
        parts.push(format!("{spins}: σσ N(0.9..1.1) {:.4}..{:.4}, {flips} sign changes", ss[0], ss[ss.len() - 1]));
    }
    pass &= frontal <= TOL && cross <= TOL;
    Ok((
        pass,
        format!("max N(σ_j τ_j) = {frontal:.1e}, max N(σ_j τ_j+1) = {cross:.1e} (tol {TOL:e}); {}", parts.join("; ")),
    ))
}

/// Closed-form Λ on both branches and a slope jump at Δ = 1.
fn c6() -> Outcome {
    const TOL: f64 = 1e-8;
    let h = STEP;
    let deltas = [0.5, 1.0 - 2.0 * h, 1.0 - h, 1.0, 1.0 + h, 1.0 + 2.0 * h, 1.5];
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for spins in (8..=20).step_by(2) {
        let mut lambda = Vec::new();
        for &d in &deltas {
            let (p, g) = solve(AT, spins / 2, d, 1.0)?;
            let psi = g.ground_state();
            let l = dsb(&reduce(psi, &FRONTAL)?, &FRONTAL[..1])?;
            let analytic = lambda_analytic(magnetization_x(psi, &p)?, correlator_x(psi, &p)?, d);
            worst = worst.max((l - analytic).abs());
            lambda.push(l);
        }
        let f = &lambda[1..6];
        let left = (f[2] - f[1]) / h;
        let right = (f[3] - f[2]) / h;
        let curvature = ((f[2] - 2.0 * f[1] + f[0]).abs()).max((f[4] - 2.0 * f[3] + f[2]).abs()) / (h * h);
        let uncertainty = h * curvature;
        let jump = (right - left).abs();
        pass &= jump > 10.0 * uncertainty;
        parts.push(format!("{spins}: slopes {left:.4}/{right:.4}, jump/uncertainty = {:.1}", jump / uncertainty));
    }
    pass &= worst <= TOL;
    Ok((pass, format!("max |Λ - Λ_analytic| = {worst:.1e} (tol {TOL:e}); {}", parts.join("; "))))
}

/// XXZ nearest-neighbour negativity at the isotropic point.
fn c7() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for spins in [16, 18, 20] {
        // the 20-spin chain is scanned within four steps of Δ = 1
        let deltas = if spins < 20 { grid(0.5, 1.5, STEP) } else { grid(0.9, 1.1, STEP) };
        let mut values = Vec::new();
        for &d in &deltas {
            let (_, g) = solve(XXZ, spins / 2, d, 1.0)?;
            values.push(pair_negativity(g.ground_state(), &[0, 1])?);
        }
        let at_one = values[deltas.iter().position(|&d| d == 1.0).expect("grid contains 1")];
        let argmax = (0..values.len()).max_by(|&a, &b| values[a].total_cmp(&values[b])).expect("nonempty");
        let ok = (0.35..=0.42).contains(&at_one) && near(deltas[argmax], 1.0, STEP);
        pass &= ok;
        parts.push(format!("{spins}: N(Δ=1) = {at_one:.4}, max at Δ = {}", deltas[argmax]));
    }
    Ok((pass, parts.join("; ")))
}

/// `I/2 ⊗ |t><t| ⊗ I/2` on XXZ spins 1-4, `|t> = (|01> + |10>)/√2` the
/// ground state of a strong bond at Δ = 1. The first site is the most
/// significant index bit.
fn dimer_limit() -> Vec<[f64; 16]> {
    let t = |a: usize, b: usize| if a != b { std::f64::consts::FRAC_1_SQRT_2 } else { 0.0 };
    (0..16)
        .map(|r| {
            let mut row = [0.0; 16];
            for (c, x) in row.iter_mut().enumerate() {
                let bit = |i: usize, k: usize| (i >> (3 - k)) & 1;
                if bit(r, 0) == bit(c, 0) && bit(r, 3) == bit(c, 3) {
                    *x = 0.25 * t(bit(r, 1), bit(r, 2)) * t(bit(c, 1), bit(c, 2));
                }
            }
            row
        })
        .collect()
}

fn dimer_deviation(beta: f64) -> Result<f64, Box<dyn Error>> {
    let (_, g) = solve(XXZ, 6, 1.0, beta)?;
    let rho = reduce(g.ground_state(), &QUARTET)?;
    let limit = dimer_limit();
    let mut worst = 0.0f64;
    for (r, row) in limit.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            worst = worst.max((rho.matrix()[(r, c)] - Complex64::new(*x, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// Dimer limit of the quartet at β = 100 (12 spins).
fn c8() -> Outcome {
    const S_TOL: f64 = 0.02;
    const RHO_TOL: f64 = 1e-6;
    let (_, g) = solve(AT, 6, 1.0, 100.0)?;
    let s = entropy(g.ground_state(), &QUARTET)?;
    let dev = dimer_deviation(100.0)?;
    let dev_1000 = dimer_deviation(1000.0)?;
    Ok((
        (s - 2.0).abs() <= S_TOL && dev <= RHO_TOL,
        format!(
            "S = {s:.6} (|S-2| tol {S_TOL}); max |ρ - ρ_dimer| = {dev:.2e} at β=100 (tol {RHO_TOL:e}), {dev_1000:.2e} at β=1000"
        ),
    ))
}

fn entropy_derivative(m: usize, betas: &[f64]) -> Result<Series, Box<dyn Error>> {
    let mut values = Vec::new();
    for &b in betas {
        let (_, g) = solve(AT, m, 5.0, b)?;
        values.push(entropy(g.ground_state(), &QUARTET)?);
    }
    let s = Series::new(SweptParameter::Beta, betas.to_vec(), values, "entropy")?;
    Ok(finite_difference(&s, 1)?)
}

/// Two maxima of dS/dβ at Δ = 5.
fn c9() -> Outcome {
    let betas = grid(0.05, 2.975, STEP);
    let maxima = extremes_of(&entropy_derivative(4, &betas)?, ExtremeKind::Max);
    let small = maxima.iter().filter(|&&b| b > 0.2 && b < 0.5).count();
    let large = maxima.iter().filter(|&&b| b > 1.8 && b < 2.5).count();
    let pass8 = maxima.len() == 2 && small == 1 && large == 1;
    let mut detail = format!("8 spins: dS/dβ maxima at {maxima:?}");
    let full = std::env::var("SPINCHAIN_FULL").is_ok_and(|v| v == "1");
    let pass20 = if full {
        let mut ok = true;
        for (lo, hi, target) in [(0.2, 0.5, 0.337), (1.9, 2.4, 2.14)] {
            let d = entropy_derivative(10, &grid(lo, hi, STEP))?;
            let peak = locate_extremes(&d)
                .into_iter()
                .filter(|e| e.kind == ExtremeKind::Max)
                .max_by(|a, b| a.value.total_cmp(&b.value))
                .map(|e| e.parameter);
            ok &= peak.is_some_and(|p| near(p, target, 0.05));
            detail += &format!("; 20 spins: peak near {target} at {peak:?}");
        }
        ok
    } else {
        detail += "; 20-spin part not run (SPINCHAIN_FULL=1)";
        false
    };
    Ok((pass8 && pass20, detail))
}

fn sectors(model: ModelKind, m: usize) -> Result<Vec<Sector>, Box<dyn Error>> {
    let mut out = vec![Sector::Full];
    match model {
        ModelKind::AshkinTeller => {
            for q in 0..4 {
                out.push(q_sector(q)?);
            }
        }
        ModelKind::StaggeredXxz => out.extend((0..=2 * m).map(Sector::SzFixed)),
    }
    Ok(out)
}

/// Lanczos against dense for every sector of dimension <= 4096, and
/// ground-sector against full-space ground energies.
fn c10() -> Outcome {
    const TOL: f64 = 1e-9;
    let (mut lanczos_dev, mut sector_dev) = (0.0f64, 0.0f64);
    let mut count = 0;
    for model in [AT, XXZ] {
        for m in 1..=6 {
            for (d, b) in [(1.0, 1.0), (-0.5, 0.5), (2.0, 1.5)] {
                let p = ModelParams::new(model, m, d, b)?;
                let mut full_min = f64::NAN;
                for sector in sectors(model, m)? {
                    let h = build_hamiltonian(&p, sector)?;
                    let dense = dense_eigenvalues(&h)?[0];
                    let lanczos = lanczos_ground(&h, 1, &opts())?.ground_energy();
                    lanczos_dev = lanczos_dev.max((dense - lanczos).abs());
                    count += 1;
                    if sector == Sector::Full {
                        full_min = dense;
                    }
                }
                let e_sector = ground_state(&p, &opts())?.ground_energy();
                sector_dev = sector_dev.max((e_sector - full_min).abs());
            }
        }
    }
    Ok((
        lanczos_dev <= TOL && sector_dev <= TOL,
        format!(
            "{count} Hamiltonians: max |E_lanczos - E_dense| = {lanczos_dev:.1e}, max |E_sector - E_full| = {sector_dev:.1e} (tol {TOL:e})"
        ),
    ))
}

/// Link algebra, ground-state constraints and negative controls.
fn c11() -> Outcome {
    const TOL: f64 = 1e-9;
    let mut algebra = 0.0f64;
    for model in [AT, XXZ] {
        for m in 2..=4 {
            algebra = algebra.max(check_link_algebra(model, m)?.max_deviation);
        }
    }
    let mut constraints = 0.0f64;
    let mut inconclusive = 0;
    for model in [AT, XXZ] {
        for m in 2..=6 {
            for (d, b) in [(1.0, 1.0), (-0.5, 0.5), (2.0, 1.5)] {
                let r = check_constraints_on_ground_state(&ModelParams::new(model, m, d, b)?, &opts())?;
                if r.status == CheckStatus::Inconclusive {
                    inconclusive += 1;
                }
                constraints = constraints.max(r.max_deviation);
            }
        }
    }
    let mut controls = Vec::new();
    for model in [AT, XXZ] {
        let p = ModelParams::new(model, 3, 1.0, 1.0)?;
        let mut set = link_set(&p)?;
        set.gamma[0] = set.gamma[0].product(&PauliString::single(0, Axis::Z));
        controls.push((format!("corrupted γ_1 ({})", model.short_name()), check_link_algebra_of(&set, 6).status));

        let basis = Arc::new(SpinBasis::new(6, Sector::Full)?);
        let amps: Vec<f64> = (0..64).map(|i| ((i * 7 % 5) as f64) - 1.7).collect();
        let psi = QuantumState::from_real(basis, &amps, p.frame())?.normalized()?;
        controls.push((format!("generic state ({})", model.short_name()), check_constraints_on_state(&psi, &p)?.status));
    }
    let p = ModelParams::new(AT, 3, 1.0, 1.0)?;
    let odd = lanczos_ground(&build_hamiltonian(&p, q_sector(1)?)?, 1, &opts())?;
    controls.push(("Q=1 ground state".into(), check_constraints_on_state(odd.ground_state(), &p)?.status));
    let controls_fail = controls.iter().all(|(_, s)| *s == CheckStatus::Fail);
    let failing: Vec<&str> = controls.iter().filter(|(_, s)| *s == CheckStatus::Fail).map(|(n, _)| n.as_str()).collect();
    Ok((
        algebra == 0.0 && constraints <= TOL && inconclusive == 0 && controls_fail,
        format!(
            "algebra deviation {algebra:e} (exact); constraint residual {constraints:.1e} (tol {TOL:e}), {inconclusive} inconclusive; negative controls failing: {}/{} [{}]",
            failing.len(),
            controls.len(),
            failing.join(", ")
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "energy equivalence", c1),
        (2, "pair density equality", c2),
        (3, "entropy maximum at Δ = 1", c3),
        (4, "concavity flip with β", c4),
        (5, "vanishing pairwise negativity", c5),
        (6, "DSB cusp", c6),
        (7, "nearest-neighbour negativity", c7),
        (8, "dimer limit", c8),
        (9, "dS/dβ maxima at Δ = 5", c9),
        (10, "Lanczos against dense", c10),
        (11, "link variables", c11),
    ];
    let selected: Option<Vec<u8>> = std::env::var("SPINCHAIN_ACCEPTANCE")
        .ok()
        .map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        if selected.as_ref().is_some_and(|s| !s.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        let expected = EXPECTED_FAILURES.iter().find(|(i, _)| *i == id);
        let mut line = format!(
            "{} C{id:<2} {title}: {detail} [{:.1}s]",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        if let (false, Some((_, why))) = (pass, expected) {
            line += &format!(" (known: {why})");
        }
        println!("{line}");
        if !pass && expected.is_none() {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
