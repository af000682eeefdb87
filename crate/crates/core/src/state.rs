//! State vectors over a [`SpinBasis`].

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::basis::{Label, Sector, SpinBasis};
use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::pauli::PauliString;

/// Imaginary parts of expectation values below this are roundoff.
pub const IMAG_TOL: f64 = 1e-10;

/// Single-spin frame in which basis labels are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    /// σ^z eigenbasis.
    Computational,
    /// σ^x eigenbasis (every spin rotated by a Hadamard gate).
    Hadamard,
}

/// Complex amplitudes over a basis, with the frame the labels refer to.
///
/// Pauli strings passed to [`apply_pauli_string`] and [`expectation`] are
/// always written in terms of the physical σ^x, σ^y, σ^z; they are rotated
/// into the state's frame internally.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    basis: Arc<SpinBasis>,
    amplitudes: Vec<Complex64>,
    frame: Frame,
    energy: Option<f64>,
}

impl QuantumState {
    pub fn new(basis: Arc<SpinBasis>, amplitudes: Vec<Complex64>, frame: Frame) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::Argument(format!(
                "{} amplitudes for a basis of {} states",
                amplitudes.len(),
                basis.len()
            )));
        }
        Ok(Self {
            basis,
            amplitudes,
            frame,
            energy: None,
        })
    }

    pub fn from_real(basis: Arc<SpinBasis>, amplitudes: &[f64], frame: Frame) -> Result<Self> {
        let amps = amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        Self::new(basis, amps, frame)
    }

    /// `|label>` on `basis`.
    pub fn basis_state(basis: Arc<SpinBasis>, label: Label, frame: Frame) -> Result<Self> {
        let idx = basis
            .index_of(label)
            .ok_or_else(|| Error::Argument(format!("label {label:#b} is not in the basis")))?;
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.len()];
        amps[idx] = Complex64::new(1.0, 0.0);
        Self::new(basis, amps, frame)
    }

    pub fn with_energy(mut self, energy: f64) -> Self {
        self.energy = Some(energy);
        self
    }

    pub fn basis(&self) -> &Arc<SpinBasis> {
        &self.basis
    }

    pub fn n_spins(&self) -> usize {
        self.basis.n_spins()
    }

    pub fn sector(&self) -> Sector {
        self.basis.sector()
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn energy(&self) -> Option<f64> {
        self.energy
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.amplitudes.iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidState("zero vector cannot be normalized".into()));
        }
        for a in &mut self.amplitudes {
            *a /= n;
        }
        Ok(self)
    }

    /// `<self|other>`; both states must share basis and frame.
    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        if self.basis != other.basis || self.frame != other.frame {
            return Err(Error::Argument("inner product of states on different bases".into()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Same state on the unrestricted basis of the same number of spins.
    pub fn expand_to_full(&self) -> Result<Self> {
        if self.basis.is_full() {
            return Ok(self.clone());
        }
        let full = Arc::new(SpinBasis::new(self.n_spins(), Sector::Full)?);
        let mut amps = vec![Complex64::new(0.0, 0.0); full.len()];
        for (&label, &a) in self.basis.states().iter().zip(&self.amplitudes) {
            amps[label as usize] = a;
        }
        Ok(Self {
            basis: full,
            amplitudes: amps,
            frame: self.frame,
            energy: self.energy,
        })
    }

    fn frame_string(&self, s: &PauliString) -> Result<PauliString> {
        s.check_range(self.n_spins())?;
        Ok(match self.frame {
            Frame::Computational => s.clone(),
            Frame::Hadamard => s.hadamard_conjugate(),
        })
    }
}

fn sector_name(sector: Sector) -> alloc::string::String {
    format!("{sector:?}")
}

/// `s |psi>`, unnormalized.
pub fn apply_pauli_string(s: &PauliString, psi: &QuantumState) -> Result<QuantumState> {
    let s = psi.frame_string(s)?;
    let basis = &psi.basis;
    let mut out = vec![Complex64::new(0.0, 0.0); basis.len()];
    for (&label, &a) in basis.states().iter().zip(&psi.amplitudes) {
        let (image, phase) = s.act_on_label(label);
        let idx = basis
            .index_of(image)
            .ok_or_else(|| Error::SectorViolation(sector_name(basis.sector())))?;
        out[idx] += phase * a;
    }
    Ok(QuantumState {
        basis: Arc::clone(basis),
        amplitudes: out,
        frame: psi.frame,
        energy: None,
    })
}

/// `<psi| s |psi>` for a Hermitian string.
///
/// Terms mapping out of the state's sector contribute nothing. An imaginary
/// part above [`IMAG_TOL`] is reported as [`Error::NonHermitian`].
pub fn expectation(psi: &QuantumState, s: &PauliString) -> Result<f64> {
    let s = psi.frame_string(s)?;
    let basis = &psi.basis;
    let mut acc = Complex64::new(0.0, 0.0);
    if s.is_diagonal() {
        for (&label, &a) in basis.states().iter().zip(&psi.amplitudes) {
            acc += s.act_on_label(label).1 * a.norm_sqr();
        }
    } else {
        for (&label, &a) in basis.states().iter().zip(&psi.amplitudes) {
            let (image, phase) = s.act_on_label(label);
            if let Some(idx) = basis.index_of(image) {
                acc += psi.amplitudes[idx].conj() * phase * a;
            }
        }
    }
    if acc.im.abs() > IMAG_TOL {
        return Err(Error::NonHermitian(acc.im));
    }
    Ok(acc.re)
}
