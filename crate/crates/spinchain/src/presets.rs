//! Frozen sweep definitions reproducing each figure.
//!
//! Default sizes stay at or below 16 spins; `full` switches the largest
//! chain to 20 spins. All presets use the Ashkin-Teller chain except the
//! nearest-neighbour negativity, which belongs to the XXZ chain.

use spinchain_core::observables::SweptParameter;
use spinchain_core::{LanczosOptions, ModelKind};

use crate::block::{BlockPreset, BlockSpec};
use crate::error::{Error, Result};
use crate::sweep::{run_sweep, GridRange, Quantity, SweepRow, SweepSpec};

pub const FIGURES: [&str; 7] = ["fig3", "fig4", "fig6", "fig7", "fig8", "fig9", "fig10"];

/// Default grid spacing in Δ and β.
pub const STEP: f64 = 0.025;
/// Lower end of the Δ axis, just above -√2/2.
pub const DELTA_MIN: f64 = -0.7;

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    pub description: &'static str,
    pub sweeps: Vec<SweepSpec>,
}

struct Template {
    swept: SweptParameter,
    range: (f64, f64),
    fixed: f64,
    quantities: &'static [&'static str],
}

fn specs(
    t: &Template,
    blocks: &[BlockPreset],
    spins: &[usize],
    betas: &[f64],
    solver: LanczosOptions,
    threads: Option<usize>,
) -> Vec<SweepSpec> {
    let mut out = Vec::new();
    for &n in spins {
        for &b in blocks {
            for &beta in betas {
                let (delta, beta) = match t.swept {
                    SweptParameter::Delta => (1.0, beta),
                    SweptParameter::Beta => (t.fixed, 1.0),
                };
                out.push(SweepSpec {
                    model: ModelKind::AshkinTeller,
                    m_sites: n / 2,
                    delta,
                    beta,
                    swept: t.swept,
                    range: GridRange::new(t.range.0, t.range.1, STEP).expect("preset ranges are valid"),
                    quantities: t.quantities.iter().map(|q| q.parse().expect("preset quantities parse")).collect(),
                    block: BlockSpec::Preset(b),
                    solver,
                    threads,
                });
            }
        }
    }
    out
}

pub fn figure(name: &str, full: bool, solver: LanczosOptions, threads: Option<usize>) -> Result<FigurePreset> {
    let big = |reduced: usize| if full { 20 } else { reduced };
    let delta_sweep = |range, quantities| Template {
        swept: SweptParameter::Delta,
        range,
        fixed: 1.0,
        quantities,
    };
    use BlockPreset::*;
    let (description, sweeps) = match name {
        "fig3" => (
            "pairwise negativity and DSB of σ_j-σ_{j+1}, σ_j-τ_{j+1}, σ_j-τ_j vs Δ at β = 1",
            specs(
                &delta_sweep((DELTA_MIN, 3.0), &["negativity", "dsb"]),
                &[SigmaSigmaPair, SigmaTauCrossPair, FrontalPair],
                &[big(12)],
                &[1.0],
                solver,
                threads,
            ),
        ),
        "fig4" => (
            "frontal-pair negativity, DSB and its closed form vs Δ at β = 1",
            specs(
                &delta_sweep((DELTA_MIN, 3.0), &["negativity", "dsb", "dsb-analytic", "m", "G"]),
                &[FrontalPair],
                &[6, 8, big(12)],
                &[1.0],
                solver,
                threads,
            ),
        ),
        "fig6" => {
            let mut spins = vec![6, 8, 10, 12, 14, 16];
            if full {
                spins.push(20);
            }
            (
                "frontal-pair entropy and its derivative vs Δ at β = 1 for several chain lengths",
                specs(
                    &delta_sweep((0.0, 2.0), &["entropy", "d1:entropy"]),
                    &[FrontalPair],
                    &spins,
                    &[1.0],
                    solver,
                    threads,
                ),
            )
        }
        "fig7" => (
            "four-site block entropy vs Δ at β = 1 for three sublattice configurations",
            specs(
                &delta_sweep((0.0, 2.0), &["entropy", "d1:entropy"]),
                &[AdjacentPairs, SeparatedPairs, AlternatingQuartet],
                &[big(12)],
                &[1.0],
                solver,
                threads,
            ),
        ),
        "fig8" | "fig9" => (
            if name == "fig8" {
                "frontal-pair entropy vs Δ for β = 1/2, 3/4, 1, 5/4, 7/4"
            } else {
                "quartet entropy vs Δ for β = 1/2, 3/4, 1, 5/4, 7/4"
            },
            specs(
                &delta_sweep((DELTA_MIN, 3.0), &["entropy", "d1:entropy"]),
                &[if name == "fig8" { FrontalPair } else { Quartet }],
                &[big(12)],
                &[0.5, 0.75, 1.0, 1.25, 1.75],
                solver,
                threads,
            ),
        ),
        "fig10" => (
            "quartet entropy and its β-derivative vs β at Δ = 5",
            specs(
                &Template {
                    swept: SweptParameter::Beta,
                    range: (0.05, 3.0),
                    fixed: 5.0,
                    quantities: &["entropy", "d1:entropy"],
                },
                &[Quartet],
                &[8, big(12)],
                &[1.0],
                solver,
                threads,
            ),
        ),
        other => {
            return Err(Error::argument(format!(
                "unknown figure '{other}', expected one of {}",
                FIGURES.join(", ")
            )))
        }
    };
    Ok(FigurePreset {
        name: FIGURES.iter().find(|f| **f == name).expect("matched above"),
        description,
        sweeps,
    })
}

impl FigurePreset {
    /// Every sweep cut to the smallest chain of the preset and a four-point
    /// grid over the same interval.
    pub fn reduced(&self) -> FigurePreset {
        let m_min = self.sweeps.iter().map(|s| s.m_sites).min().unwrap_or(1);
        let mut sweeps: Vec<SweepSpec> = Vec::new();
        for s in &self.sweeps {
            let mut r = s.clone();
            r.m_sites = m_min;
            let width = s.range.stop - s.range.start;
            r.range = GridRange::new(s.range.start, s.range.stop, width / 4.0).expect("valid range");
            if !sweeps.contains(&r) {
                sweeps.push(r);
            }
        }
        FigurePreset {
            name: self.name,
            description: self.description,
            sweeps,
        }
    }

    pub fn quantities(&self) -> Vec<Quantity> {
        self.sweeps.first().map(|s| s.quantities.clone()).unwrap_or_default()
    }

    /// Rows of all sweeps, in preset order.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        let mut rows = Vec::new();
        for s in &self.sweeps {
            rows.extend(run_sweep(s)?);
        }
        Ok(rows)
    }
}
