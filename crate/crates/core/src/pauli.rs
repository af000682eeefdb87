//! Pauli strings on distinct sites, acting on basis labels by bit operations.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::basis::Label;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Product of single-site Pauli operators times a complex coefficient.
///
/// Acting on a label: `X` flips the bit, `Z` multiplies by `(-1)^bit`, and
/// `Y = i X Z` flips the bit with phase `i (-1)^bit`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    terms: Vec<(usize, Axis)>,
    coefficient: Complex64,
    flip: Label,
    sign: Label,
    n_y: u32,
}

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

impl PauliString {
    /// Builds a unit-coefficient string. Sites must be distinct.
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Axis)>,
    {
        let mut terms: Vec<(usize, Axis)> = terms.into_iter().collect();
        terms.sort();
        if let Some(w) = terms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Argument(format!("site {} repeated in Pauli string", w[0].0)));
        }
        if let Some(&(site, _)) = terms.last() {
            if site >= Label::BITS as usize {
                return Err(Error::Argument(format!("site {site} out of label range")));
            }
        }
        Ok(Self::from_sorted(terms, Complex64::new(1.0, 0.0)))
    }

    /// The identity operator.
    pub fn identity() -> Self {
        Self::from_sorted(Vec::new(), Complex64::new(1.0, 0.0))
    }

    /// A single Pauli operator.
    pub fn single(site: usize, axis: Axis) -> Self {
        Self::new([(site, axis)]).expect("single site is always valid")
    }

    fn from_sorted(terms: Vec<(usize, Axis)>, coefficient: Complex64) -> Self {
        let mut flip = 0;
        let mut sign = 0;
        let mut n_y = 0;
        for &(site, axis) in &terms {
            let bit: Label = 1 << site;
            match axis {
                Axis::X => flip |= bit,
                Axis::Y => {
                    flip |= bit;
                    sign |= bit;
                    n_y += 1;
                }
                Axis::Z => sign |= bit,
            }
        }
        Self {
            terms,
            coefficient,
            flip,
            sign,
            n_y,
        }
    }

    pub fn with_coefficient(mut self, coefficient: Complex64) -> Self {
        self.coefficient = coefficient;
        self
    }

    pub fn terms(&self) -> &[(usize, Axis)] {
        &self.terms
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    /// Bits flipped by the string.
    pub fn flip_mask(&self) -> Label {
        self.flip
    }

    pub fn is_diagonal(&self) -> bool {
        self.flip == 0
    }

    /// Fails if any site is outside `0..n_spins`.
    pub fn check_range(&self, n_spins: usize) -> Result<()> {
        match self.terms.last() {
            Some(&(site, _)) if site >= n_spins => Err(Error::Argument(format!(
                "site {site} out of range for {n_spins} spins"
            ))),
            _ => Ok(()),
        }
    }

    /// Image of a basis label: `s |label> = phase |label'>`.
    #[inline]
    pub fn act_on_label(&self, label: Label) -> (Label, Complex64) {
        let mut phase = self.coefficient * I_POWERS[(self.n_y % 4) as usize];
        if (label & self.sign).count_ones() % 2 == 1 {
            phase = -phase;
        }
        (label ^ self.flip, phase)
    }

    /// The same operator expressed in the Hadamard-rotated frame:
    /// `H X H = Z`, `H Z H = X`, `H Y H = -Y`.
    pub fn hadamard_conjugate(&self) -> Self {
        let mut coefficient = self.coefficient;
        let terms = self
            .terms
            .iter()
            .map(|&(site, axis)| {
                let axis = match axis {
                    Axis::X => Axis::Z,
                    Axis::Z => Axis::X,
                    Axis::Y => {
                        coefficient = -coefficient;
                        Axis::Y
                    }
                };
                (site, axis)
            })
            .collect();
        Self::from_sorted(terms, coefficient)
    }

    /// Operator product `self * other`, with the single-site phases
    /// (`XY = iZ`, `YZ = iX`, `ZX = iY`, ...) folded into the coefficient.
    pub fn product(&self, other: &PauliString) -> PauliString {
        let mut coefficient = self.coefficient * other.coefficient;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i).copied();
            let b = other.terms.get(j).copied();
            match (a, b) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    let (phase, axis) = single_product(a.1, b.1);
                    coefficient *= phase;
                    if let Some(axis) = axis {
                        terms.push((a.0, axis));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    terms.push(a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    terms.push(b);
                    j += 1;
                }
                (Some(a), None) => {
                    terms.push(a);
                    i += 1;
                }
                (None, Some(b)) => {
                    terms.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self::from_sorted(terms, coefficient)
    }
}

fn single_product(a: Axis, b: Axis) -> (Complex64, Option<Axis>) {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    match (a, b) {
        (Axis::X, Axis::X) | (Axis::Y, Axis::Y) | (Axis::Z, Axis::Z) => (one, None),
        (Axis::X, Axis::Y) => (i, Some(Axis::Z)),
        (Axis::Y, Axis::X) => (-i, Some(Axis::Z)),
        (Axis::Y, Axis::Z) => (i, Some(Axis::X)),
        (Axis::Z, Axis::Y) => (-i, Some(Axis::X)),
        (Axis::Z, Axis::X) => (i, Some(Axis::Y)),
        (Axis::X, Axis::Z) => (-i, Some(Axis::Y)),
    }
}
