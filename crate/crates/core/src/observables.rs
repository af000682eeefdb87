//! Ashkin-Teller order parameters and discrete analysis of swept curves.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::models::{sigma_bit, tau_bit, ModelKind, ModelParams};
use crate::pauli::{Axis, PauliString};
use crate::state::{expectation, QuantumState};

/// Largest tolerated difference between the σ and τ averages.
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Relative spread of grid steps still accepted as uniform.
pub const UNIFORM_GRID_TOL: f64 = 1e-8;

/// Per-site `<σ^x_j>`, `<τ^x_j>` and `<σ^x_j τ^x_j>`, `j = 1..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteProfile {
    pub sigma_x: Vec<f64>,
    pub tau_x: Vec<f64>,
    pub sigma_tau_x: Vec<f64>,
}

fn check_at_state(psi: &QuantumState, p: &ModelParams) -> Result<()> {
    if p.model != ModelKind::AshkinTeller {
        return Err(Error::Argument("x-magnetization is defined for the Ashkin-Teller chain".into()));
    }
    if psi.n_spins() != p.n_spins() {
        return Err(Error::Argument(format!(
            "state has {} spins, model has {}",
            psi.n_spins(),
            p.n_spins()
        )));
    }
    Ok(())
}

pub fn site_profile(psi: &QuantumState, p: &ModelParams) -> Result<SiteProfile> {
    check_at_state(psi, p)?;
    let m = p.m_sites;
    let mut profile = SiteProfile {
        sigma_x: Vec::with_capacity(m),
        tau_x: Vec::with_capacity(m),
        sigma_tau_x: Vec::with_capacity(m),
    };
    for j in 1..=m {
        let (s, t) = (sigma_bit(j, m), tau_bit(j, m));
        profile.sigma_x.push(expectation(psi, &PauliString::single(s, Axis::X))?);
        profile.tau_x.push(expectation(psi, &PauliString::single(t, Axis::X))?);
        let st = PauliString::new([(s, Axis::X), (t, Axis::X)])?;
        profile.sigma_tau_x.push(expectation(psi, &st)?);
    }
    Ok(profile)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Site-averaged `m = <σ^x> = <τ^x>`. The σ and τ averages must agree to
/// [`SYMMETRY_TOL`].
pub fn magnetization_x(psi: &QuantumState, p: &ModelParams) -> Result<f64> {
    let profile = site_profile(psi, p)?;
    let (ms, mt) = (mean(&profile.sigma_x), mean(&profile.tau_x));
    if (ms - mt).abs() > SYMMETRY_TOL {
        return Err(Error::SymmetryViolation(format!("<σ^x> = {ms}, <τ^x> = {mt}")));
    }
    Ok(0.5 * (ms + mt))
}

/// Site-averaged `G = <σ^x τ^x>`.
pub fn correlator_x(psi: &QuantumState, p: &ModelParams) -> Result<f64> {
    Ok(mean(&site_profile(psi, p)?.sigma_tau_x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweptParameter {
    Delta,
    Beta,
}

impl SweptParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweptParameter::Delta => "delta",
            SweptParameter::Beta => "beta",
        }
    }
}

/// Samples of a quantity on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    parameter: SweptParameter,
    grid: Vec<f64>,
    values: Vec<f64>,
    label: String,
}

impl Series {
    pub fn new(
        parameter: SweptParameter,
        grid: Vec<f64>,
        values: Vec<f64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Argument(format!(
                "{} grid points but {} values",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Argument("grid must be strictly increasing".into()));
        }
        Ok(Self {
            parameter,
            grid,
            values,
            label: label.into(),
        })
    }

    pub fn parameter(&self) -> SweptParameter {
        self.parameter
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Common spacing of a uniform grid.
    pub fn step(&self) -> Result<f64> {
        if self.grid.len() < 2 {
            return Err(Error::Argument("a step needs at least two grid points".into()));
        }
        let h = (self.grid[self.grid.len() - 1] - self.grid[0]) / (self.grid.len() - 1) as f64;
        for w in self.grid.windows(2) {
            if ((w[1] - w[0]) - h).abs() > UNIFORM_GRID_TOL * h {
                return Err(Error::Argument(format!(
                    "grid is not uniform: step {} against mean {h}",
                    w[1] - w[0]
                )));
            }
        }
        Ok(h)
    }

    /// Value at the grid point nearest `x`.
    pub fn nearest(&self, x: f64) -> Option<(f64, f64)> {
        self.grid
            .iter()
            .zip(&self.values)
            .min_by(|a, b| (a.0 - x).abs().total_cmp(&(b.0 - x).abs()))
            .map(|(&g, &v)| (g, v))
    }
}

/// First or second derivative on a uniform grid: central differences inside,
/// second-order one-sided stencils at the ends. The label gains a `d1:` or
/// `d2:` prefix.
pub fn finite_difference(series: &Series, order: u8) -> Result<Series> {
    if !(1..=2).contains(&order) {
        return Err(Error::Argument(format!("derivative order must be 1 or 2, got {order}")));
    }
    let n = series.len();
    if n < 3 {
        return Err(Error::Argument(format!("{n} points are too few for a derivative")));
    }
    let h = series.step()?;
    let f = &series.values;
    let mut out = Vec::with_capacity(n);
    if order == 1 {
        out.push((-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h));
        for i in 1..n - 1 {
            out.push((f[i + 1] - f[i - 1]) / (2.0 * h));
        }
        out.push((3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h));
    } else {
        let h2 = h * h;
        let interior = |i: usize| (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
        if n >= 4 {
            out.push((2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2);
        } else {
            out.push(interior(1));
        }
        for i in 1..n - 1 {
            out.push(interior(i));
        }
        if n >= 4 {
            out.push((2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2);
        } else {
            out.push(interior(n - 2));
        }
    }
    Series::new(
        series.parameter,
        series.grid.clone(),
        out,
        format!("d{order}:{}", series.label),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremeKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extreme {
    pub index: usize,
    pub parameter: f64,
    pub kind: ExtremeKind,
    pub value: f64,
}

/// Interior points where the first difference changes sign. A flat run is
/// reported at its first (smallest-parameter) point.
pub fn locate_extremes(series: &Series) -> Vec<Extreme> {
    let f = &series.values;
    let mut out = Vec::new();
    // sign of the last nonzero difference and the point it ends on
    let mut last: Option<(bool, usize)> = None;
    for i in 0..f.len().saturating_sub(1) {
        let d = f[i + 1] - f[i];
        if d == 0.0 {
            continue;
        }
        let rising = d > 0.0;
        if let Some((was_rising, at)) = last {
            if was_rising != rising {
                out.push(Extreme {
                    index: at,
                    parameter: series.grid[at],
                    kind: if was_rising { ExtremeKind::Max } else { ExtremeKind::Min },
                    value: f[at],
                });
            }
        }
        last = Some((rising, i + 1));
    }
    out
}
