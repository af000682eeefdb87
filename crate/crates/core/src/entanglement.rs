//! Reduced density matrices, partial transposes, negativity, distance from
//! the separability boundary and von Neumann entropy.
//!
//! A reduced density matrix over `sites = [s0, s1, ...]` is indexed so that
//! `s0` is the most significant bit of the row/column index: for two sites,
//! index `2a + b` is `|a>_{s0} |b>_{s1}`.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{log2, sqrt};
use crate::state::{Frame, QuantumState};

/// Largest reduced block (a dense 2^14 x 2^14 matrix).
pub const MAX_REDUCED_SITES: usize = 14;
/// Tolerance on unit trace and hermiticity of a density matrix.
pub const DENSITY_TOL: f64 = 1e-12;
/// Negative eigenvalues down to `-EIGEN_CLIP` are roundoff; below that the
/// matrix is rejected.
pub const EIGEN_CLIP: f64 = 1e-10;
/// Trace deviation tolerated by [`von_neumann`].
pub const ENTROPY_TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    sites: Vec<usize>,
    matrix: DMatrix<Complex64>,
    frame: Frame,
}

impl DensityMatrix {
    /// Validates shape, unit trace and hermiticity (to [`DENSITY_TOL`]).
    pub fn new(sites: Vec<usize>, matrix: DMatrix<Complex64>, frame: Frame) -> Result<Self> {
        check_sites(&sites, usize::MAX)?;
        let dim = 1usize << sites.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Argument(format!(
                "{} sites need a {dim}x{dim} matrix, got {}x{}",
                sites.len(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let asym = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > DENSITY_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {asym:e})")));
        }
        Ok(Self {
            sites,
            matrix,
            frame,
        })
    }

    /// Real diagonal density matrix.
    pub fn diagonal(sites: Vec<usize>, diag: &[f64], frame: Frame) -> Result<Self> {
        let m = DMatrix::from_fn(diag.len(), diag.len(), |r, c| {
            Complex64::new(if r == c { diag[r] } else { 0.0 }, 0.0)
        });
        Self::new(sites, m, frame)
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self.matrix.clone())
    }
}

fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Vec<f64> {
    let mut vals: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

fn check_sites(sites: &[usize], n_spins: usize) -> Result<()> {
    if sites.is_empty() {
        return Err(Error::Argument("site list is empty".into()));
    }
    for (i, &s) in sites.iter().enumerate() {
        if s >= n_spins {
            return Err(Error::Argument(format!("site {s} out of range for {n_spins} spins")));
        }
        if sites[..i].contains(&s) {
            return Err(Error::Argument(format!("site {s} listed twice")));
        }
    }
    Ok(())
}

/// Collects the bits of `label` at `positions` into a compact index, the
/// first position becoming the most significant bit.
#[inline]
fn gather(label: u32, positions: &[usize]) -> usize {
    positions
        .iter()
        .fold(0usize, |acc, &p| (acc << 1) | ((label >> p) & 1) as usize)
}

/// `Tr_{complement}(|psi><psi|)` over the sites in `keep` (any order, not
/// necessarily contiguous). Sector-restricted states are handled directly.
pub fn reduce(psi: &QuantumState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = psi.n_spins();
    check_sites(keep, n)?;
    if keep.len() > MAX_REDUCED_SITES {
        return Err(Error::Capacity(format!(
            "reduced block of {} sites exceeds {MAX_REDUCED_SITES}",
            keep.len()
        )));
    }
    let norm_sqr = psi.norm() * psi.norm();
    if (norm_sqr - 1.0).abs() > ENTROPY_TRACE_TOL {
        return Err(Error::InvalidState(format!("state norm^2 {norm_sqr} is not 1")));
    }
    let rest: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
    let rows = 1usize << keep.len();
    let cols = 1usize << rest.len();
    // psi as a (kept) x (traced) matrix; rho = Psi Psi^dagger
    let mut amps = DMatrix::<Complex64>::zeros(rows, cols);
    for (&label, &a) in psi.basis().states().iter().zip(psi.amplitudes()) {
        amps[(gather(label, keep), gather(label, &rest))] = a / sqrt(norm_sqr);
    }
    let mut rho = &amps * amps.adjoint();
    // enforce exact hermiticity
    let adj = rho.adjoint();
    rho = (rho + adj) * Complex64::new(0.5, 0.0);
    DensityMatrix::new(keep.to_vec(), rho, psi.frame())
}

fn subsystem_mask(rho: &DensityMatrix, subsystem_a: &[usize]) -> Result<usize> {
    let k = rho.sites.len();
    if subsystem_a.is_empty() || subsystem_a.len() >= k {
        return Err(Error::Argument(format!(
            "partial transpose needs a proper nonempty subset of {k} sites"
        )));
    }
    let mut mask = 0usize;
    for (i, s) in subsystem_a.iter().enumerate() {
        if subsystem_a[..i].contains(s) {
            return Err(Error::Argument(format!("site {s} listed twice")));
        }
        let pos = rho
            .sites
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| Error::Argument(format!("site {s} is not in the density matrix")))?;
        mask |= 1 << (k - 1 - pos);
    }
    Ok(mask)
}

/// `<ab| rho^{T_A} |cd> = <cb| rho |ad>` with `a, c` on `subsystem_a`.
pub fn partial_transpose(rho: &DensityMatrix, subsystem_a: &[usize]) -> Result<DMatrix<Complex64>> {
    let mask = subsystem_mask(rho, subsystem_a)?;
    let d = rho.dim();
    Ok(DMatrix::from_fn(d, d, |i, j| {
        let r = (i & !mask) | (j & mask);
        let c = (j & !mask) | (i & mask);
        rho.matrix[(r, c)]
    }))
}

/// Smallest eigenvalue of the partial transpose.
pub fn min_pt_eigenvalue(rho: &DensityMatrix, subsystem_a: &[usize]) -> Result<f64> {
    let pt = partial_transpose(rho, subsystem_a)?;
    Ok(hermitian_eigenvalues(pt)[0])
}

/// `2 max(0, -λ_min)` of the partial transpose.
pub fn negativity(rho: &DensityMatrix, subsystem_a: &[usize]) -> Result<f64> {
    Ok((-2.0 * min_pt_eigenvalue(rho, subsystem_a)?).max(0.0))
}

/// Distance from the separability boundary, `-2 λ_min` of the partial
/// transpose: positive for entangled, zero for pure separable and negative
/// for mixed separable states.
pub fn dsb(rho: &DensityMatrix, subsystem_a: &[usize]) -> Result<f64> {
    Ok(-2.0 * min_pt_eigenvalue(rho, subsystem_a)?)
}

/// Base-2 von Neumann entropy with `0 log 0 = 0`.
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    let trace = rho.matrix.trace().re;
    if (trace - 1.0).abs() > ENTROPY_TRACE_TOL {
        return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
    }
    let mut s = 0.0;
    for lambda in rho.eigenvalues() {
        if lambda < -EIGEN_CLIP {
            return Err(Error::InvalidState(format!("negative eigenvalue {lambda:e}")));
        }
        let l = lambda.clamp(0.0, 1.0);
        if l > 0.0 {
            s -= l * log2(l);
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub negativity: f64,
    pub dsb: f64,
    pub entropy: f64,
    pub min_pt_eigenvalue: f64,
}

/// All measures for one density matrix and bipartition.
pub fn report(rho: &DensityMatrix, subsystem_a: &[usize]) -> Result<EntanglementReport> {
    let min = min_pt_eigenvalue(rho, subsystem_a)?;
    Ok(EntanglementReport {
        negativity: (-2.0 * min).max(0.0),
        dsb: -2.0 * min,
        entropy: von_neumann(rho)?,
        min_pt_eigenvalue: min,
    })
}

/// Frontal-pair density matrix `diag(u, v, v, w)` in the σ^x eigenbasis from
/// the magnetization `m = <σ^x> = <τ^x>` and correlator `g = <σ^x τ^x>`.
pub fn frontal_pair_analytic(m: f64, g: f64) -> Result<DensityMatrix> {
    let u = 0.25 + 0.5 * m + 0.25 * g;
    let v = 0.25 - 0.25 * g;
    let w = 0.25 - 0.5 * m + 0.25 * g;
    for x in [u, v, w] {
        if !(-EIGEN_CLIP..=1.0 + EIGEN_CLIP).contains(&x) {
            return Err(Error::InconsistentInputs(format!(
                "m = {m}, g = {g} give a diagonal entry {x}"
            )));
        }
    }
    DensityMatrix::diagonal(alloc::vec![0, 1], &[u, v, v, w], Frame::Hadamard)
}

/// Closed form of the frontal-pair DSB: `-1/2 + m - g/2` for `Δ <= 1`,
/// `-1/2 + g/2` above.
pub fn lambda_analytic(m: f64, g: f64, delta: f64) -> f64 {
    if delta <= 1.0 {
        -0.5 + m - 0.5 * g
    } else {
        -0.5 + 0.5 * g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{Sector, SpinBasis};
    use alloc::sync::Arc;

    fn full(n: usize) -> Arc<SpinBasis> {
        Arc::new(SpinBasis::new(n, Sector::Full).unwrap())
    }

    fn singlet() -> QuantumState {
        let h = 1.0 / 2f64.sqrt();
        QuantumState::from_real(full(2), &[0.0, h, -h, 0.0], Frame::Computational).unwrap()
    }

    #[test]
    fn bell_pair_half_is_maximally_mixed() {
        let rho = reduce(&singlet(), &[0]).unwrap();
        assert!((von_neumann(&rho).unwrap() - 1.0).abs() < 1e-14);
        assert!((rho.matrix()[(0, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn product_state_reduces_to_pure() {
        // |a> = cos t|0> + sin t|1> on spin 0, |b> = |1> on spin 1
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let psi = QuantumState::from_real(full(2), &[0.0, 0.0, c, s], Frame::Computational).unwrap();
        let rho = reduce(&psi, &[0]).unwrap();
        assert!((rho.matrix()[(0, 0)].re - c * c).abs() < 1e-15);
        assert!((rho.matrix()[(0, 1)].re - c * s).abs() < 1e-15);
        assert!(von_neumann(&rho).unwrap().abs() < 1e-10);
    }

    #[test]
    fn singlet_negativity() {
        let rho = reduce(&singlet(), &[0, 1]).unwrap();
        assert!((min_pt_eigenvalue(&rho, &[0]).unwrap() + 0.5).abs() < 1e-14);
        assert!((negativity(&rho, &[0]).unwrap() - 1.0).abs() < 1e-14);
        assert!((dsb(&rho, &[0]).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_pair() {
        let rho = DensityMatrix::diagonal(alloc::vec![0, 1], &[0.25; 4], Frame::Computational).unwrap();
        assert_eq!(negativity(&rho, &[0]).unwrap(), 0.0);
        assert!((dsb(&rho, &[0]).unwrap() + 0.5).abs() < 1e-15);
        assert!((von_neumann(&rho).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn transpose_is_involution_and_keeps_diagonal() {
        let rho = reduce(&singlet(), &[0, 1]).unwrap();
        let once = DensityMatrix::new(alloc::vec![0, 1], partial_transpose(&rho, &[0]).unwrap(), Frame::Computational).unwrap();
        let twice = partial_transpose(&once, &[0]).unwrap();
        assert_eq!(&twice, rho.matrix());
        let diag = DensityMatrix::diagonal(alloc::vec![3, 5], &[0.1, 0.2, 0.3, 0.4], Frame::Computational).unwrap();
        assert_eq!(&partial_transpose(&diag, &[5]).unwrap(), diag.matrix());
    }

    #[test]
    fn invalid_subsystems() {
        let rho = reduce(&singlet(), &[0, 1]).unwrap();
        assert!(partial_transpose(&rho, &[]).is_err());
        assert!(partial_transpose(&rho, &[0, 1]).is_err());
        assert!(partial_transpose(&rho, &[2]).is_err());
    }

    #[test]
    fn reduce_argument_checks() {
        let psi = singlet();
        assert!(matches!(reduce(&psi, &[]), Err(Error::Argument(_))));
        assert!(matches!(reduce(&psi, &[0, 0]), Err(Error::Argument(_))));
        assert!(matches!(reduce(&psi, &[2]), Err(Error::Argument(_))));
        let big = QuantumState::basis_state(full(15), 0, Frame::Computational).unwrap();
        let keep: Vec<usize> = (0..15).collect();
        assert!(matches!(reduce(&big, &keep), Err(Error::Capacity(_))));
    }

    #[test]
    fn analytic_frontal_pair() {
        let rho = frontal_pair_analytic(0.0, 1.0).unwrap();
        let d: Vec<f64> = (0..4).map(|i| rho.matrix()[(i, i)].re).collect();
        assert_eq!(d, [0.5, 0.0, 0.0, 0.5]);
        let pure = frontal_pair_analytic(1.0, 1.0).unwrap();
        assert_eq!(pure.matrix()[(0, 0)].re, 1.0);
        assert!(dsb(&pure, &[0]).unwrap().abs() < 1e-15);
        assert_eq!(lambda_analytic(1.0, 1.0, 0.5), 0.0);
        assert_eq!(lambda_analytic(1.0, 1.0, 1.5), 0.0);
        assert!(matches!(frontal_pair_analytic(1.0, -1.0), Err(Error::InconsistentInputs(_))));
    }

    #[test]
    fn entropy_rejects_bad_trace() {
        let m = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.6, 0.0));
        let rho = DensityMatrix { sites: alloc::vec![0], matrix: m, frame: Frame::Computational };
        assert!(matches!(von_neumann(&rho), Err(Error::InvalidState(_))));
    }
}
