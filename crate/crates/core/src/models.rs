//! Ashkin-Teller and staggered XXZ Hamiltonians with periodic boundaries.
//!
//! ```text
//! H_AT  = -J Σ_j (σ^x_j + τ^x_j + Δ σ^x_j τ^x_j)
//!         -Jβ Σ_j (σ^z_j σ^z_{j+1} + τ^z_j τ^z_{j+1} + Δ σ^z_j σ^z_{j+1} τ^z_j τ^z_{j+1})
//!
//! H_XXZ = -J Σ_j [σ^x_{2j-1} σ^x_{2j} + σ^y_{2j-1} σ^y_{2j} - Δ σ^z_{2j-1} σ^z_{2j}]
//!         -Jβ Σ_j [σ^x_{2j} σ^x_{2j+1} + σ^y_{2j} σ^y_{2j+1} - Δ σ^z_{2j} σ^z_{2j+1}]
//! ```
//!
//! The Ashkin-Teller chain of `M` sites has `2M` physical spins interleaved
//! as σ_j -> bit `2(j-1)`, τ_j -> bit `2(j-1)+1`, and is assembled in the
//! Hadamard frame where both Z2 parities are diagonal. The XXZ chain has
//! `2M` spins, spin `i` on bit `i-1`, and is assembled in the computational
//! frame where S^z is diagonal.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::{Label, Parity, Sector, SpinBasis, EVEN_BITS, ODD_BITS};
use crate::error::{Error, Result};
use crate::pauli::{Axis, PauliString};
use crate::state::Frame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    AshkinTeller,
    StaggeredXxz,
}

impl ModelKind {
    pub fn frame(self) -> Frame {
        match self {
            ModelKind::AshkinTeller => Frame::Hadamard,
            ModelKind::StaggeredXxz => Frame::Computational,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            ModelKind::AshkinTeller => "at",
            ModelKind::StaggeredXxz => "xxz",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub model: ModelKind,
    /// Ashkin-Teller sites `M`; both chains carry `2M` spins.
    pub m_sites: usize,
    pub j_coupling: f64,
    pub delta: f64,
    pub beta: f64,
}

impl ModelParams {
    /// Parameters with `J = 1`.
    pub fn new(model: ModelKind, m_sites: usize, delta: f64, beta: f64) -> Result<Self> {
        let p = Self {
            model,
            m_sites,
            j_coupling: 1.0,
            delta,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_sites == 0 {
            return Err(Error::Argument("m_sites must be at least 1".into()));
        }
        if 2 * self.m_sites > crate::basis::MAX_SPINS {
            return Err(Error::Capacity(format!(
                "{} spins exceed the supported maximum",
                2 * self.m_sites
            )));
        }
        if !(self.j_coupling > 0.0) {
            return Err(Error::Argument("j_coupling must be positive".into()));
        }
        if !self.delta.is_finite() || !self.beta.is_finite() {
            return Err(Error::Argument("delta and beta must be finite".into()));
        }
        Ok(())
    }

    pub fn n_spins(&self) -> usize {
        2 * self.m_sites
    }

    pub fn frame(&self) -> Frame {
        self.model.frame()
    }

    /// Sector holding the ground state: `Q = 0` (AT) or `n = 0` (XXZ).
    pub fn ground_sector(&self) -> Sector {
        match self.model {
            ModelKind::AshkinTeller => Sector::XParity(Parity::Even, Parity::Even),
            ModelKind::StaggeredXxz => Sector::SzFixed(self.m_sites),
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }
}

/// Bit of σ_j (1-based, periodic) in an Ashkin-Teller chain.
pub fn sigma_bit(j: usize, m_sites: usize) -> usize {
    2 * ((j + m_sites - 1) % m_sites)
}

/// Bit of τ_j (1-based, periodic) in an Ashkin-Teller chain.
pub fn tau_bit(j: usize, m_sites: usize) -> usize {
    sigma_bit(j, m_sites) + 1
}

/// Bit of XXZ spin `i` (1-based, periodic over `2M` spins).
pub fn xxz_bit(i: usize, m_sites: usize) -> usize {
    let n = 2 * m_sites;
    (i + n - 1) % n
}

fn pair(a: (usize, Axis), b: (usize, Axis)) -> PauliString {
    PauliString::single(a.0, a.1).product(&PauliString::single(b.0, b.1))
}

fn scaled(s: PauliString, c: f64) -> PauliString {
    let coefficient = s.coefficient() * c;
    s.with_coefficient(coefficient)
}

/// The Hamiltonian as a sum of physical Pauli strings (coefficients included).
pub fn hamiltonian_terms(p: &ModelParams) -> Vec<PauliString> {
    let m = p.m_sites;
    let (j, d, b) = (p.j_coupling, p.delta, p.beta);
    let mut terms = Vec::new();
    match p.model {
        ModelKind::AshkinTeller => {
            for site in 1..=m {
                let s = sigma_bit(site, m);
                let t = tau_bit(site, m);
                terms.push(scaled(PauliString::single(s, Axis::X), -j));
                terms.push(scaled(PauliString::single(t, Axis::X), -j));
                terms.push(scaled(pair((s, Axis::X), (t, Axis::X)), -j * d));
            }
            for site in 1..=m {
                let zz_s = pair((sigma_bit(site, m), Axis::Z), (sigma_bit(site + 1, m), Axis::Z));
                let zz_t = pair((tau_bit(site, m), Axis::Z), (tau_bit(site + 1, m), Axis::Z));
                terms.push(scaled(zz_s.clone(), -j * b));
                terms.push(scaled(zz_t.clone(), -j * b));
                terms.push(scaled(zz_s.product(&zz_t), -j * b * d));
            }
        }
        ModelKind::StaggeredXxz => {
            for i in 1..=2 * m {
                let coupling = if i % 2 == 1 { j } else { j * b };
                let a = xxz_bit(i, m);
                let c = xxz_bit(i + 1, m);
                terms.push(scaled(pair((a, Axis::X), (c, Axis::X)), -coupling));
                terms.push(scaled(pair((a, Axis::Y), (c, Axis::Y)), -coupling));
                terms.push(scaled(pair((a, Axis::Z), (c, Axis::Z)), coupling * d));
            }
        }
    }
    terms
}

/// Real symmetric matrix in compressed sparse row layout.
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    basis: Arc<SpinBasis>,
    params: ModelParams,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<f64>,
}

impl SparseHamiltonian {
    pub fn basis(&self) -> &Arc<SpinBasis> {
        &self.basis
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn frame(&self) -> Frame {
        self.params.frame()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `(column, value)` pairs of one row, columns ascending.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[range.clone()]
            .iter()
            .zip(&self.values[range])
            .map(|(&c, &v)| (c as usize, v))
    }

    /// `y = H x`
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k] as usize];
            }
            *out = acc;
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for r in 0..n {
            for (c, v) in self.row(r) {
                m[(r, c)] += v;
            }
        }
        m
    }

    /// Largest `|H_rc - H_cr|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim() {
            for (c, v) in self.row(r) {
                let mirror = self.row(c).find(|&(cc, _)| cc == r).map_or(0.0, |(_, w)| w);
                worst = worst.max((v - mirror).abs());
            }
        }
        worst
    }
}

/// Assembles the Hamiltonian on `sector`.
///
/// `SzFixed` is accepted only for the XXZ chain and `XParity` only for the
/// Ashkin-Teller chain; both models accept `Full`.
pub fn build_hamiltonian(p: &ModelParams, sector: Sector) -> Result<SparseHamiltonian> {
    p.validate()?;
    match (p.model, sector) {
        (_, Sector::Full)
        | (ModelKind::StaggeredXxz, Sector::SzFixed(_))
        | (ModelKind::AshkinTeller, Sector::XParity(..)) => {}
        (model, sector) => {
            return Err(Error::Argument(format!("sector {sector:?} is not a symmetry of {model:?}")))
        }
    }
    let basis = Arc::new(SpinBasis::new(p.n_spins(), sector)?);
    let terms: Vec<PauliString> = hamiltonian_terms(p)
        .into_iter()
        .map(|t| match p.frame() {
            Frame::Computational => t,
            Frame::Hadamard => t.hadamard_conjugate(),
        })
        .collect();

    let mut row_ptr = Vec::with_capacity(basis.len() + 1);
    let mut col_idx = Vec::new();
    let mut values = Vec::new();
    let mut scratch: Vec<(Label, Complex64)> = Vec::with_capacity(terms.len());
    row_ptr.push(0);
    // Row r holds <r|H|c>; Pauli strings are Hermitian, so acting on label r
    // gives the entries of column r, which equal row r up to conjugation.
    // Single terms may leave the sector (XX alone does not conserve S^z), so
    // images are summed before the sector lookup.
    for &label in basis.states() {
        scratch.clear();
        scratch.extend(terms.iter().map(|t| {
            let (image, phase) = t.act_on_label(label);
            (image, phase.conj())
        }));
        scratch.sort_by_key(|&(image, _)| image);
        let mut k = 0;
        while k < scratch.len() {
            let image = scratch[k].0;
            let mut v = Complex64::new(0.0, 0.0);
            while k < scratch.len() && scratch[k].0 == image {
                v += scratch[k].1;
                k += 1;
            }
            debug_assert!(v.im.abs() < 1e-12, "Hamiltonian must be real in its frame");
            if v.re == 0.0 {
                continue;
            }
            // labels are sorted, so columns come out in increasing order
            let col = basis
                .index_of(image)
                .ok_or_else(|| Error::SectorViolation(format!("{sector:?} is not invariant under H")))?;
            col_idx.push(col as u32);
            values.push(v.re);
        }
        row_ptr.push(values.len());
    }
    Ok(SparseHamiltonian {
        basis,
        params: *p,
        row_ptr,
        col_idx,
        values,
    })
}

/// Symmetry sector label of a basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectorTag {
    /// Ashkin-Teller parity sector `Q`: 0 = (+,+), 1 = (+,-), 2 = (-,-), 3 = (-,+)
    /// for the eigenvalues of (Π σ^x, Π τ^x).
    Parity(u8),
    /// XXZ magnetization `n = M - r`, `r` the number of set bits.
    Magnetization(i64),
}

/// Sector of a label in the model's own frame.
pub fn classify_sector(label: Label, p: &ModelParams) -> SectorTag {
    match p.model {
        ModelKind::AshkinTeller => {
            let mask: Label = ((1u64 << p.n_spins()) - 1) as Label;
            let p1 = Parity::of_count((label & mask & EVEN_BITS).count_ones());
            let p2 = Parity::of_count((label & mask & ODD_BITS).count_ones());
            SectorTag::Parity(parity_q(p1, p2))
        }
        ModelKind::StaggeredXxz => {
            let r = label.count_ones() as i64;
            SectorTag::Magnetization(p.m_sites as i64 - r)
        }
    }
}

pub fn parity_q(p1: Parity, p2: Parity) -> u8 {
    match (p1, p2) {
        (Parity::Even, Parity::Even) => 0,
        (Parity::Even, Parity::Odd) => 1,
        (Parity::Odd, Parity::Odd) => 2,
        (Parity::Odd, Parity::Even) => 3,
    }
}

/// Parity sector with label `Q`.
pub fn q_sector(q: u8) -> Result<Sector> {
    Ok(match q {
        0 => Sector::XParity(Parity::Even, Parity::Even),
        1 => Sector::XParity(Parity::Even, Parity::Odd),
        2 => Sector::XParity(Parity::Odd, Parity::Odd),
        3 => Sector::XParity(Parity::Odd, Parity::Even),
        _ => return Err(Error::Argument(format!("Q must be 0..=3, got {q}"))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    Eta,
    Gamma,
}

/// One of the bond/site operators η_k, γ_k (k = 1..=2M) through which both
/// Hamiltonians take the same form.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkVariable {
    pub kind: LinkKind,
    pub index: usize,
    pub realization: PauliString,
}

/// Realization of η_index or γ_index in physical Pauli operators.
///
/// Ashkin-Teller: η_{2j-1} = σ^x_j, γ_{2j-1} = τ^x_j, η_{2j} = σ^z_j σ^z_{j+1},
/// γ_{2j} = τ^z_j τ^z_{j+1}.
/// XXZ: η_{2j-1} = σ^x_{2j-1} σ^x_{2j}, γ_{2j-1} = σ^y_{2j-1} σ^y_{2j},
/// η_{2j} = σ^y_{2j} σ^y_{2j+1}, γ_{2j} = σ^x_{2j} σ^x_{2j+1}.
pub fn link_variable(kind: LinkKind, index: usize, p: &ModelParams) -> Result<LinkVariable> {
    let m = p.m_sites;
    if index == 0 || index > 2 * m {
        return Err(Error::Argument(format!("link index {index} outside 1..={}", 2 * m)));
    }
    let j = index.div_ceil(2);
    let odd = index % 2 == 1;
    let realization = match p.model {
        ModelKind::AshkinTeller => {
            let bit = |site| match kind {
                LinkKind::Eta => sigma_bit(site, m),
                LinkKind::Gamma => tau_bit(site, m),
            };
            if odd {
                PauliString::single(bit(j), Axis::X)
            } else {
                pair((bit(j), Axis::Z), (bit(j + 1), Axis::Z))
            }
        }
        ModelKind::StaggeredXxz => {
            let axis = match (kind, odd) {
                (LinkKind::Eta, true) | (LinkKind::Gamma, false) => Axis::X,
                (LinkKind::Eta, false) | (LinkKind::Gamma, true) => Axis::Y,
            };
            // odd links sit on bond (2j-1, 2j), even links on (2j, 2j+1)
            let first = if odd { 2 * j - 1 } else { 2 * j };
            pair((xxz_bit(first, m), axis), (xxz_bit(first + 1, m), axis))
        }
    };
    Ok(LinkVariable {
        kind,
        index,
        realization,
    })
}
