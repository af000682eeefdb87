//! Ground states and low spectra.
//!
//! [`dense_spectrum`] diagonalizes small matrices completely and serves as the
//! oracle for [`lanczos_ground`], a Lanczos solver with full
//! reorthogonalization, explicit restarts and deflation of converged vectors.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::math::{axpy, dot, norm, scale};
use crate::models::{build_hamiltonian, ModelParams, SparseHamiltonian};
use crate::state::QuantumState;

/// Largest dimension accepted by [`dense_spectrum`].
pub const DENSE_MAX_DIM: usize = 4096;

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending.
    pub energies: Vec<f64>,
    pub states: Vec<QuantumState>,
    pub converged: Vec<bool>,
    /// `‖H v - E v‖` per pair.
    pub residuals: Vec<f64>,
    /// `E1 - E0` when at least two levels were computed.
    pub gap: Option<f64>,
    /// Set when the two lowest levels are closer than the degeneracy threshold.
    pub degenerate: bool,
    /// Matrix-vector products spent (zero for dense solves).
    pub matvecs: usize,
}

impl EigenResult {
    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn ground_state(&self) -> &QuantumState {
        &self.states[0]
    }

    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Absolute residual target `‖Hv - Ev‖`.
    pub tol: f64,
    /// Budget of matrix-vector products across all restarts and levels.
    pub max_iter: usize,
    pub seed: u64,
    /// Krylov vectors kept before an explicit restart.
    pub krylov_dim: usize,
    /// Levels closer than `gap_rel_tol * |E0|` are flagged degenerate.
    pub gap_rel_tol: f64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 1000,
            seed: 0,
            krylov_dim: 200,
            gap_rel_tol: 1e-8,
        }
    }
}

fn residual(h: &SparseHamiltonian, v: &[f64], e: f64, work: &mut [f64]) -> f64 {
    h.matvec(v, work);
    axpy(-e, v, work);
    norm(work)
}

fn wrap_state(h: &SparseHamiltonian, v: &[f64], e: f64) -> Result<QuantumState> {
    Ok(QuantumState::from_real(h.basis().clone(), v, h.frame())?.with_energy(e))
}

fn finish(
    h: &SparseHamiltonian,
    mut pairs: Vec<(f64, Vec<f64>, f64, bool)>,
    gap_rel_tol: f64,
    matvecs: usize,
) -> Result<EigenResult> {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let energies: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let gap = (energies.len() >= 2).then(|| energies[1] - energies[0]);
    let degenerate = gap.is_some_and(|g| g < gap_rel_tol * energies[0].abs());
    let mut states = Vec::with_capacity(pairs.len());
    let mut residuals = Vec::with_capacity(pairs.len());
    let mut converged = Vec::with_capacity(pairs.len());
    for (e, v, r, c) in pairs {
        states.push(wrap_state(h, &v, e)?);
        residuals.push(r);
        converged.push(c);
    }
    Ok(EigenResult {
        energies,
        states,
        converged,
        residuals,
        gap,
        degenerate,
        matvecs,
    })
}

/// Complete eigendecomposition of a Hamiltonian of dimension at most
/// [`DENSE_MAX_DIM`].
pub fn dense_spectrum(h: &SparseHamiltonian) -> Result<EigenResult> {
    let n = h.dim();
    if n > DENSE_MAX_DIM {
        return Err(Error::Capacity(format!("dense diagonalization of dimension {n} > {DENSE_MAX_DIM}")));
    }
    let eig = SymmetricEigen::new(h.to_dense());
    let mut work = vec![0.0; n];
    let pairs = (0..n)
        .map(|i| {
            let v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
            let e = eig.eigenvalues[i];
            let r = residual(h, &v, e, &mut work);
            (e, v, r, true)
        })
        .collect();
    finish(h, pairs, LanczosOptions::default().gap_rel_tol, 0)
}

/// Eigenvalues only, ascending. Cheaper than [`dense_spectrum`].
pub fn dense_eigenvalues(h: &SparseHamiltonian) -> Result<Vec<f64>> {
    let n = h.dim();
    if n > DENSE_MAX_DIM {
        return Err(Error::Capacity(format!("dense diagonalization of dimension {n} > {DENSE_MAX_DIM}")));
    }
    let mut vals: Vec<f64> = h.to_dense().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Projects `locked` out of `w` twice ("twice is enough").
fn orthogonalize(w: &mut [f64], against: &[Vec<f64>]) {
    for _ in 0..2 {
        for u in against {
            let c = dot(w, u);
            axpy(-c, u, w);
        }
    }
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng, locked: &[Vec<f64>]) -> Result<Vec<f64>> {
    for _ in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        orthogonalize(&mut v, locked);
        let nv = norm(&v);
        if nv > 1e-8 {
            scale(1.0 / nv, &mut v);
            return Ok(v);
        }
    }
    Err(Error::Argument("no vector orthogonal to the converged levels".into()))
}

struct Lowest {
    energy: f64,
    vector: Vec<f64>,
    residual: f64,
}

/// Lowest Ritz pair of one Krylov cycle started from `start`.
fn krylov_cycle(
    h: &SparseHamiltonian,
    start: Vec<f64>,
    locked: &[Vec<f64>],
    opts: &LanczosOptions,
    budget: usize,
    matvecs: &mut usize,
) -> Lowest {
    let n = h.dim();
    let cap = opts.krylov_dim.max(2).min(n - locked.len()).min(budget.max(1));
    let mut basis: Vec<Vec<f64>> = vec![start];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let (theta, s) = loop {
        let j = basis.len() - 1;
        h.matvec(&basis[j], &mut w);
        *matvecs += 1;
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        axpy(-a, &basis[j], &mut w);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut w);
        }
        orthogonalize(&mut w, locked);
        orthogonalize(&mut w, &basis);
        let b = norm(&w);
        let size = alpha.len();
        let exhausted = b <= 1e-13 * (1.0 + a.abs()) || size >= cap;
        if exhausted || size.is_multiple_of(4) || size <= 3 {
            let (theta, s) = lowest_tridiagonal(&alpha, &beta);
            if exhausted || (b * s[size - 1]).abs() <= 0.1 * opts.tol {
                break (theta, s);
            }
        }
        beta.push(b);
        scale(1.0 / b, &mut w);
        basis.push(core::mem::replace(&mut w, vec![0.0; n]));
    };
    let mut v = vec![0.0; n];
    for (coef, q) in s.iter().zip(&basis) {
        axpy(*coef, q, &mut v);
    }
    orthogonalize(&mut v, locked);
    let nv = norm(&v);
    scale(1.0 / nv, &mut v);
    let r = residual(h, &v, theta, &mut w);
    *matvecs += 1;
    Lowest {
        energy: theta,
        vector: v,
        residual: r,
    }
}

/// Lowest eigenpair of the tridiagonal matrix with diagonal `alpha` and
/// off-diagonal `beta` (`beta.len() == alpha.len() - 1`).
fn lowest_tridiagonal(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let m = alpha.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (imin, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    (eig.eigenvalues[imin], eig.eigenvectors.column(imin).iter().copied().collect())
}

/// Lowest `k` (1 or 2) eigenpairs by restarted Lanczos.
///
/// Each level is found by Krylov cycles of at most `krylov_dim` vectors,
/// restarted from the current Ritz vector; a level that stops improving is
/// restarted once from a fresh seeded random vector. Converged levels are
/// locked and projected out of later searches.
pub fn lanczos_ground(h: &SparseHamiltonian, k: usize, opts: &LanczosOptions) -> Result<EigenResult> {
    if !(1..=2).contains(&k) {
        return Err(Error::Argument(format!("k must be 1 or 2, got {k}")));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Argument("tolerance must be positive".into()));
    }
    let n = h.dim();
    if n < k {
        return Err(Error::Argument(format!("dimension {n} is smaller than k = {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut matvecs = 0usize;
    let mut locked: Vec<Vec<f64>> = Vec::new();
    let mut pairs = Vec::new();
    for _ in 0..k {
        let mut start = random_unit(n, &mut rng, &locked)?;
        let mut best: Option<Lowest> = None;
        let mut fresh_restart_used = false;
        loop {
            let budget = opts.max_iter.saturating_sub(matvecs);
            if budget == 0 {
                let best_residual = best.as_ref().map_or(f64::INFINITY, |b| b.residual);
                return Err(Error::Convergence {
                    iterations: matvecs,
                    best_residual,
                });
            }
            let cycle = krylov_cycle(h, start, &locked, opts, budget, &mut matvecs);
            if cycle.residual <= opts.tol {
                best = Some(cycle);
                break;
            }
            let improved = best.as_ref().is_none_or(|b| cycle.residual < 0.5 * b.residual);
            if best.as_ref().is_none_or(|b| cycle.residual < b.residual) {
                best = Some(cycle);
            }
            let best_vector = &best.as_ref().expect("set above").vector;
            start = if improved || fresh_restart_used {
                best_vector.clone()
            } else {
                fresh_restart_used = true;
                random_unit(n, &mut rng, &locked)?
            };
        }
        let found = best.expect("converged level recorded");
        locked.push(found.vector.clone());
        pairs.push((found.energy, found.vector, found.residual, true));
    }
    finish(h, pairs, opts.gap_rel_tol, matvecs)
}

/// Two lowest levels (one if the sector is one-dimensional) of the model in
/// the sector that holds its ground state.
pub fn ground_state(p: &ModelParams, opts: &LanczosOptions) -> Result<EigenResult> {
    let h = build_hamiltonian(p, p.ground_sector())?;
    lanczos_ground(&h, h.dim().min(2), opts)
}
