//! Executable checks of the Ashkin-Teller / staggered XXZ correspondence.
//!
//! Both chains are written through link variables η_k, γ_k (k = 1..=2M)
//! obeying `η_k² = γ_k² = 1`, `[η_j, γ_k] = 0`, and anticommutation of
//! same-kind neighbours (`|j - k| = 1` or the wrap pair `{1, 2M}`). The
//! checks here test that algebra, the periodic constraints and sector
//! conditions on ground states, the equality of ground energies, the
//! inclusion of spectra and the equality of two-spin reduced density
//! matrices.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::eigensolve::{dense_eigenvalues, ground_state, lanczos_ground, LanczosOptions, DENSE_MAX_DIM};
use crate::entanglement::{reduce, von_neumann};
use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::models::{build_hamiltonian, link_variable, q_sector, LinkKind, ModelKind, ModelParams};
use crate::pauli::{Axis, PauliString};
use crate::state::{apply_pauli_string, expectation, QuantumState};
use crate::basis::Sector;
use num_complex::Complex64;

pub const ALGEBRA_TOL: f64 = 0.0;
pub const CONSTRAINT_TOL: f64 = 1e-9;
pub const ENERGY_TOL: f64 = 1e-8;
pub const EIGENVALUE_TOL: f64 = 1e-9;
pub const SPECTRUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check cannot be decided, e.g. on a degenerate ground state.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub m_sites: usize,
    pub parameters: Vec<(String, f64)>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
    pub notes: String,
}

impl VerificationReport {
    /// Pass iff `max_deviation <= tolerance` (a NaN deviation fails).
    pub fn from_deviation(
        check: &str,
        m_sites: usize,
        parameters: Vec<(String, f64)>,
        max_deviation: f64,
        tolerance: f64,
        notes: String,
    ) -> Self {
        let status = if max_deviation <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            check: check.into(),
            m_sites,
            parameters,
            max_deviation,
            tolerance,
            status,
            notes,
        }
    }

    fn inconclusive(check: &str, m_sites: usize, parameters: Vec<(String, f64)>, tolerance: f64, notes: String) -> Self {
        Self {
            check: check.into(),
            m_sites,
            parameters,
            max_deviation: f64::NAN,
            tolerance,
            status: CheckStatus::Inconclusive,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

fn point(delta: f64, beta: f64) -> Vec<(String, f64)> {
    alloc::vec![("delta".into(), delta), ("beta".into(), beta)]
}

/// η_1..η_2M and γ_1..γ_2M as Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkSet {
    pub eta: Vec<PauliString>,
    pub gamma: Vec<PauliString>,
}

pub fn link_set(p: &ModelParams) -> Result<LinkSet> {
    let n = 2 * p.m_sites;
    let collect = |kind| -> Result<Vec<PauliString>> {
        (1..=n).map(|k| Ok(link_variable(kind, k, p)?.realization)).collect()
    };
    Ok(LinkSet {
        eta: collect(LinkKind::Eta)?,
        gamma: collect(LinkKind::Gamma)?,
    })
}

/// Operator-norm distance between `a b` and `sign · b a` (or the identity
/// when `b` is `None`), evaluated column by column on every basis label.
/// Pauli strings permute basis labels, so the largest column deviation is
/// the operator norm.
fn relation_residual(a: &PauliString, b: Option<&PauliString>, sign: f64, n_spins: usize) -> f64 {
    let mut worst = 0.0f64;
    for label in 0..(1u32 << n_spins) {
        let dev = match b {
            None => {
                let (l1, p1) = a.act_on_label(label);
                let (l2, p2) = a.act_on_label(l1);
                if l2 != label {
                    2.0
                } else {
                    (p1 * p2 - Complex64::new(1.0, 0.0)).norm()
                }
            }
            Some(b) => {
                let (l1, p1) = b.act_on_label(label);
                let (ab, p_ab) = a.act_on_label(l1);
                let (l2, p2) = a.act_on_label(label);
                let (ba, p_ba) = b.act_on_label(l2);
                if ab != ba {
                    2.0
                } else {
                    (p1 * p_ab - sign * p2 * p_ba).norm()
                }
            }
        };
        worst = worst.max(dev);
    }
    worst
}

fn neighbours(j: usize, k: usize, n: usize) -> bool {
    j.abs_diff(k) == 1 || (j.min(k) == 1 && j.max(k) == n)
}

/// Exhaustive check of the link algebra for a model of `m_sites` sites,
/// `2 <= m_sites <= 4`.
pub fn check_link_algebra(model: ModelKind, m_sites: usize) -> Result<VerificationReport> {
    if !(2..=4).contains(&m_sites) {
        return Err(Error::Argument(format!("link algebra is checked for 2 <= M <= 4, got {m_sites}")));
    }
    let p = ModelParams::new(model, m_sites, 1.0, 1.0)?;
    let mut report = check_link_algebra_of(&link_set(&p)?, p.n_spins());
    report.check = format!("link-algebra-{}", model.short_name());
    Ok(report)
}

/// Algebra check for an arbitrary realization on `n_spins` spins.
pub fn check_link_algebra_of(set: &LinkSet, n_spins: usize) -> VerificationReport {
    let n = set.eta.len();
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut record = |name: String, dev: f64| {
        if dev > ALGEBRA_TOL && failures.len() < 8 {
            failures.push(name);
        }
        worst = worst.max(dev);
    };
    if set.gamma.len() != n {
        record("eta and gamma sets differ in size".into(), f64::INFINITY);
    }
    for (name, ops) in [("eta", &set.eta), ("gamma", &set.gamma)] {
        for (i, a) in ops.iter().enumerate() {
            record(format!("{name}_{}^2", i + 1), relation_residual(a, None, 1.0, n_spins));
        }
        for j in 0..ops.len() {
            for k in j + 1..ops.len() {
                let sign = if neighbours(j + 1, k + 1, n) { -1.0 } else { 1.0 };
                let dev = relation_residual(&ops[j], Some(&ops[k]), sign, n_spins);
                record(format!("{name}_{} {name}_{}", j + 1, k + 1), dev);
            }
        }
    }
    for (j, a) in set.eta.iter().enumerate() {
        for (k, b) in set.gamma.iter().enumerate() {
            record(format!("[eta_{}, gamma_{}]", j + 1, k + 1), relation_residual(a, Some(b), 1.0, n_spins));
        }
    }
    let notes = if failures.is_empty() {
        String::new()
    } else {
        format!("violated: {}", failures.join(", "))
    };
    VerificationReport::from_deviation("link-algebra", n / 2, Vec::new(), worst, ALGEBRA_TOL, notes)
}

fn product_of(ops: impl IntoIterator<Item = PauliString>) -> PauliString {
    ops.into_iter().fold(PauliString::identity(), |acc, s| acc.product(&s))
}

/// Operators that must act as the identity on the ground state, with names.
///
/// Ashkin-Teller: `Π η_{2j}`, `Π γ_{2j}` and the parities `Π σ^x`, `Π τ^x`.
/// XXZ: `Π η_{2j-1} γ_{2j}`, `Π γ_{2j-1} η_{2j}` and `Q_x = Π σ^x`,
/// `Q_y = Π σ^y`.
pub fn constraint_operators(p: &ModelParams) -> Result<Vec<(&'static str, PauliString)>> {
    let links = link_set(p)?;
    let m = p.m_sites;
    let even = |ops: &Vec<PauliString>| product_of((1..=m).map(|j| ops[2 * j - 1].clone()));
    let odd = |ops: &Vec<PauliString>| product_of((1..=m).map(|j| ops[2 * j - 2].clone()));
    let all = |axis| product_of((0..p.n_spins()).map(|b| PauliString::single(b, axis)));
    Ok(match p.model {
        ModelKind::AshkinTeller => alloc::vec![
            ("prod eta_2j", even(&links.eta)),
            ("prod gamma_2j", even(&links.gamma)),
            ("prod sigma^x", odd(&links.eta)),
            ("prod tau^x", odd(&links.gamma)),
        ],
        ModelKind::StaggeredXxz => alloc::vec![
            (
                "prod eta_2j-1 gamma_2j",
                product_of((1..=m).map(|j| links.eta[2 * j - 2].product(&links.gamma[2 * j - 1]))),
            ),
            (
                "prod gamma_2j-1 eta_2j",
                product_of((1..=m).map(|j| links.gamma[2 * j - 2].product(&links.eta[2 * j - 1]))),
            ),
            ("Q_x", all(Axis::X)),
            ("Q_y", all(Axis::Y)),
        ],
    })
}

/// `max ‖(O - 1) ψ‖` over [`constraint_operators`]. An operator leading out
/// of the state's sector is reported as an infinite deviation.
pub fn check_constraints_on_state(psi: &QuantumState, p: &ModelParams) -> Result<VerificationReport> {
    if psi.n_spins() != p.n_spins() {
        return Err(Error::Argument(format!(
            "state has {} spins, model has {}",
            psi.n_spins(),
            p.n_spins()
        )));
    }
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for (name, op) in constraint_operators(p)? {
        let dev = match apply_pauli_string(&op, psi) {
            Ok(image) => sqrt(
                image
                    .amplitudes()
                    .iter()
                    .zip(psi.amplitudes())
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum(),
            ),
            Err(Error::SectorViolation(_)) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        notes.push(format!("{name}: {dev:.3e}"));
        worst = worst.max(dev);
    }
    Ok(VerificationReport::from_deviation(
        &format!("constraints-{}", p.model.short_name()),
        p.m_sites,
        point(p.delta, p.beta),
        worst,
        CONSTRAINT_TOL,
        notes.join("; "),
    ))
}

/// Constraints evaluated on the model's ground state (`M <= 6`).
pub fn check_constraints_on_ground_state(p: &ModelParams, opts: &LanczosOptions) -> Result<VerificationReport> {
    if p.m_sites > 6 {
        return Err(Error::Argument(format!("constraint check supports M <= 6, got {}", p.m_sites)));
    }
    let ground = ground_state(p, opts)?;
    if ground.degenerate {
        return Ok(VerificationReport::inconclusive(
            &format!("constraints-{}", p.model.short_name()),
            p.m_sites,
            point(p.delta, p.beta),
            CONSTRAINT_TOL,
            format!("degenerate ground state (gap {:e})", ground.gap.unwrap_or(0.0)),
        ));
    }
    check_constraints_on_state(ground.ground_state(), p)
}

fn ground_energy(p: &ModelParams, opts: &LanczosOptions) -> Result<f64> {
    let h = build_hamiltonian(p, p.ground_sector())?;
    Ok(lanczos_ground(&h, 1, opts)?.ground_energy())
}

/// `|E0(AT, M) - E0(XXZ, 2M)|` (`M <= 7`).
pub fn check_energy_equivalence(
    delta: f64,
    beta: f64,
    m_sites: usize,
    opts: &LanczosOptions,
) -> Result<VerificationReport> {
    if m_sites > 7 {
        return Err(Error::Argument(format!("energy check supports M <= 7, got {m_sites}")));
    }
    let at = ModelParams::new(ModelKind::AshkinTeller, m_sites, delta, beta)?;
    let xxz = ModelParams::new(ModelKind::StaggeredXxz, m_sites, delta, beta)?;
    let (e_at, e_xxz) = (ground_energy(&at, opts)?, ground_energy(&xxz, opts)?);
    Ok(VerificationReport::from_deviation(
        "energy-equivalence",
        m_sites,
        point(delta, beta),
        (e_at - e_xxz).abs(),
        ENERGY_TOL,
        format!("E0(AT) = {e_at:.12}, E0(XXZ) = {e_xxz:.12}"),
    ))
}

/// Details of the frontal-pair / intra-dimer comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct PairComparison {
    /// Sorted eigenvalues of the AT frontal pair (σ_1, τ_1).
    pub at_eigenvalues: Vec<f64>,
    /// Sorted eigenvalues of the XXZ pair (1, 2).
    pub xxz_eigenvalues: Vec<f64>,
    pub at_entropy: f64,
    pub xxz_entropy: f64,
    /// `u = <σ^x_1>`, `v = <σ^x_1 τ^x_1>` (AT).
    pub u: f64,
    pub v: f64,
    /// `p = <σ^x_1 σ^x_2>`, `q = <σ^z_1 σ^z_2>` (XXZ).
    pub p: f64,
    pub q: f64,
    pub degenerate: bool,
}

impl PairComparison {
    pub fn eigenvalue_deviation(&self) -> f64 {
        self.at_eigenvalues
            .iter()
            .zip(&self.xxz_eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Reduced density matrices of the AT frontal pair at site 1 and the XXZ
/// intra-dimer pair (1, 2) at the same parameters.
pub fn compare_pairs(delta: f64, beta: f64, m_sites: usize, opts: &LanczosOptions) -> Result<PairComparison> {
    let at = ModelParams::new(ModelKind::AshkinTeller, m_sites, delta, beta)?;
    let xxz = ModelParams::new(ModelKind::StaggeredXxz, m_sites, delta, beta)?;
    let g_at = ground_state(&at, opts)?;
    let g_xxz = ground_state(&xxz, opts)?;
    let (psi_at, psi_xxz) = (g_at.ground_state(), g_xxz.ground_state());
    let rho_at = reduce(psi_at, &[0, 1])?;
    let rho_xxz = reduce(psi_xxz, &[0, 1])?;
    let pair = |a, b| PauliString::new([(0, a), (1, b)]);
    Ok(PairComparison {
        at_eigenvalues: rho_at.eigenvalues(),
        xxz_eigenvalues: rho_xxz.eigenvalues(),
        at_entropy: von_neumann(&rho_at)?,
        xxz_entropy: von_neumann(&rho_xxz)?,
        u: expectation(psi_at, &PauliString::single(0, Axis::X))?,
        v: expectation(psi_at, &pair(Axis::X, Axis::X)?)?,
        p: expectation(psi_xxz, &pair(Axis::X, Axis::X)?)?,
        q: expectation(psi_xxz, &pair(Axis::Z, Axis::Z)?)?,
        degenerate: g_at.degenerate || g_xxz.degenerate,
    })
}

/// Eigenvalues of the AT frontal-pair and XXZ intra-dimer density matrices
/// agree, with `u = p` and `v = -q` (`M <= 6`).
pub fn check_pair_density_equality(
    delta: f64,
    beta: f64,
    m_sites: usize,
    opts: &LanczosOptions,
) -> Result<VerificationReport> {
    if m_sites > 6 {
        return Err(Error::Argument(format!("density check supports M <= 6, got {m_sites}")));
    }
    let c = compare_pairs(delta, beta, m_sites, opts)?;
    let check = "pair-density-equality";
    if c.degenerate {
        return Ok(VerificationReport::inconclusive(
            check,
            m_sites,
            point(delta, beta),
            EIGENVALUE_TOL,
            "degenerate ground state".into(),
        ));
    }
    let (du, dv) = ((c.u - c.p).abs(), (c.v + c.q).abs());
    let deviation = c.eigenvalue_deviation().max(du).max(dv);
    Ok(VerificationReport::from_deviation(
        check,
        m_sites,
        point(delta, beta),
        deviation,
        EIGENVALUE_TOL,
        format!(
            "|u-p| = {du:.3e}, |v+q| = {dv:.3e}, S(AT) = {:.12}, S(XXZ) = {:.12}",
            c.at_entropy, c.xxz_entropy
        ),
    ))
}

/// Matches every element of `sub` to a distinct element of `sup` within
/// `tol`; both sorted ascending. Returns the largest matched distance, or
/// infinity if some element has no partner.
pub fn multiset_inclusion(sub: &[f64], sup: &[f64], tol: f64) -> f64 {
    let mut worst = 0.0f64;
    let mut j = 0;
    for &a in sub {
        while j < sup.len() && sup[j] < a - tol {
            j += 1;
        }
        if j == sup.len() || (sup[j] - a).abs() > tol {
            return f64::INFINITY;
        }
        worst = worst.max((sup[j] - a).abs());
        j += 1;
    }
    worst
}

fn dense_levels(p: &ModelParams, sector: Sector) -> Result<Vec<f64>> {
    let h = build_hamiltonian(p, sector)?;
    if h.dim() > DENSE_MAX_DIM {
        return Err(Error::Capacity(format!("dimension {} exceeds the dense limit", h.dim())));
    }
    dense_eigenvalues(&h)
}

/// Every AT level in `Q = 0` appears in the full XXZ spectrum (`M <= 3`).
pub fn check_spectral_inclusion(delta: f64, beta: f64, m_sites: usize) -> Result<VerificationReport> {
    if m_sites > 3 {
        return Err(Error::Argument(format!("spectral inclusion supports M <= 3, got {m_sites}")));
    }
    let at = ModelParams::new(ModelKind::AshkinTeller, m_sites, delta, beta)?;
    let xxz = ModelParams::new(ModelKind::StaggeredXxz, m_sites, delta, beta)?;
    let q0 = dense_levels(&at, q_sector(0)?)?;
    let full = dense_levels(&xxz, Sector::Full)?;
    Ok(VerificationReport::from_deviation(
        "spectral-inclusion",
        m_sites,
        point(delta, beta),
        multiset_inclusion(&q0, &full, SPECTRUM_TOL),
        SPECTRUM_TOL,
        format!("{} Q=0 levels in {} XXZ levels", q0.len(), full.len()),
    ))
}

/// The σ <-> τ exchange makes the `Q = 1` and `Q = 3` spectra equal (`M <= 3`).
pub fn check_sector_degeneracy(delta: f64, beta: f64, m_sites: usize) -> Result<VerificationReport> {
    if m_sites > 3 {
        return Err(Error::Argument(format!("sector degeneracy supports M <= 3, got {m_sites}")));
    }
    let at = ModelParams::new(ModelKind::AshkinTeller, m_sites, delta, beta)?;
    let q1 = dense_levels(&at, q_sector(1)?)?;
    let q3 = dense_levels(&at, q_sector(3)?)?;
    let deviation = if q1.len() == q3.len() {
        q1.iter().zip(&q3).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(VerificationReport::from_deviation(
        "sector-degeneracy",
        m_sites,
        point(delta, beta),
        deviation,
        SPECTRUM_TOL,
        String::new(),
    ))
}
