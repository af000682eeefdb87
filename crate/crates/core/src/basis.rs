//! Computational bases of N spin-1/2 sites, optionally restricted to a
//! symmetry sector.
//!
//! Spin `j` occupies bit `j` of a basis label. A cleared bit is the +1
//! eigenvalue of the frame's diagonal Pauli operator (σ^z in the
//! computational frame, σ^x in the Hadamard frame).

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Basis label: bit `j` holds spin `j`.
pub type Label = u32;

/// Largest supported chain. A dense state vector of 2^28 complex amplitudes
/// is 4 GiB.
pub const MAX_SPINS: usize = 28;

/// Mask of the even bits (σ species of an interleaved Ashkin-Teller chain).
pub const EVEN_BITS: Label = 0x5555_5555;
/// Mask of the odd bits (τ species).
pub const ODD_BITS: Label = 0xAAAA_AAAA;

/// Eigenvalue of a Z2 parity operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// +1
    Even,
    /// -1
    Odd,
}

impl Parity {
    pub fn of_count(ones: u32) -> Self {
        if ones.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Which labels a basis keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// All 2^N labels.
    Full,
    /// Labels with exactly this many set bits (fixed total S^z).
    SzFixed(usize),
    /// Labels whose even bits and odd bits have the given popcount parities.
    /// Used in the Hadamard frame, where these are the eigenvalues of
    /// Π σ^x and Π τ^x.
    XParity(Parity, Parity),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinBasis {
    n_spins: usize,
    states: Vec<Label>,
    sector: Sector,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl SpinBasis {
    /// Enumerates the labels of `sector` in increasing order.
    pub fn new(n_spins: usize, sector: Sector) -> Result<Self> {
        if n_spins == 0 || n_spins > MAX_SPINS {
            return Err(Error::Capacity(format!(
                "{n_spins} spins requested, supported range is 1..={MAX_SPINS}"
            )));
        }
        let full: Label = (1 << n_spins) - 1;
        let states = match sector {
            Sector::Full => (0..=full).collect(),
            Sector::SzFixed(set_bits) => {
                if set_bits > n_spins {
                    return Err(Error::Argument(format!(
                        "SzFixed({set_bits}) exceeds {n_spins} spins"
                    )));
                }
                combinations(n_spins, set_bits)
            }
            Sector::XParity(sigma, tau) => {
                if !n_spins.is_multiple_of(2) {
                    return Err(Error::Argument(format!(
                        "parity sectors need an even number of spins, got {n_spins}"
                    )));
                }
                (0..=full)
                    .filter(|&l| {
                        Parity::of_count((l & EVEN_BITS).count_ones()) == sigma
                            && Parity::of_count((l & ODD_BITS).count_ones()) == tau
                    })
                    .collect()
            }
        };
        Ok(Self {
            n_spins,
            states,
            sector,
        })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn states(&self) -> &[Label] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn label(&self, index: usize) -> Label {
        self.states[index]
    }

    /// Dense index of `label`, or `None` when the label is outside the sector.
    pub fn index_of(&self, label: Label) -> Option<usize> {
        match self.sector {
            Sector::Full => {
                let idx = label as usize;
                (idx < self.states.len()).then_some(idx)
            }
            _ => self.states.binary_search(&label).ok(),
        }
    }

    /// Expected size of a sector without enumerating it.
    pub fn sector_size(n_spins: usize, sector: Sector) -> usize {
        match sector {
            Sector::Full => 1usize << n_spins,
            Sector::SzFixed(k) => binomial(n_spins, k),
            Sector::XParity(..) => (1usize << n_spins) / 4,
        }
    }

    pub fn is_full(&self) -> bool {
        self.sector == Sector::Full
    }
}

/// All `n`-bit labels with `k` set bits, ascending (Gosper's hack).
fn combinations(n: usize, k: usize) -> Vec<Label> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k == 0 {
        out.push(0);
        return out;
    }
    let limit: u64 = 1u64 << n;
    let mut x: u64 = (1u64 << k) - 1;
    while x < limit {
        out.push(x as Label);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}
