//! Named and explicit site blocks.
//!
//! Sites are bit indices of the `2M` physical spins. In the Ashkin-Teller
//! chain σ_j sits on bit `2(j-1)` and τ_j on bit `2(j-1)+1`; in the XXZ chain
//! spin `i` sits on bit `i-1`. The same bit list therefore names a block and
//! its image under the spin map between the two chains (σ_j, τ_j ->
//! spins 2j-1, 2j).

use std::fmt;
use std::str::FromStr;

use spinchain_core::entanglement::MAX_REDUCED_SITES;
use spinchain_core::ModelKind;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockPreset {
    /// σ_1, τ_1 (XXZ: spins 1, 2).
    FrontalPair,
    /// Two adjacent frontal pairs (XXZ: four contiguous spins).
    Quartet,
    /// Nearest neighbours along the chain: XXZ spins 1, 2; AT σ_1, σ_2.
    NnPair,
    /// σ_1, σ_2.
    SigmaSigmaPair,
    /// σ_1, τ_2.
    SigmaTauCrossPair,
    /// Four-site configurations with a growing number of bonds between the
    /// block and the rest: frontal pairs 1 and 2; frontal pairs 1 and 3;
    /// σ_1, τ_2, σ_3, τ_4.
    AdjacentPairs,
    SeparatedPairs,
    AlternatingQuartet,
}

pub const PRESETS: [BlockPreset; 8] = [
    BlockPreset::FrontalPair,
    BlockPreset::Quartet,
    BlockPreset::NnPair,
    BlockPreset::SigmaSigmaPair,
    BlockPreset::SigmaTauCrossPair,
    BlockPreset::AdjacentPairs,
    BlockPreset::SeparatedPairs,
    BlockPreset::AlternatingQuartet,
];

impl BlockPreset {
    pub fn name(self) -> &'static str {
        match self {
            BlockPreset::FrontalPair => "frontal-pair",
            BlockPreset::Quartet => "quartet",
            BlockPreset::NnPair => "nn-pair",
            BlockPreset::SigmaSigmaPair => "sigma-sigma-pair",
            BlockPreset::SigmaTauCrossPair => "sigma-tau-cross-pair",
            BlockPreset::AdjacentPairs => "adjacent-pairs",
            BlockPreset::SeparatedPairs => "separated-pairs",
            BlockPreset::AlternatingQuartet => "alternating-quartet",
        }
    }

    pub fn sites(self, model: ModelKind) -> Vec<usize> {
        match self {
            BlockPreset::FrontalPair => vec![0, 1],
            BlockPreset::Quartet | BlockPreset::AdjacentPairs => vec![0, 1, 2, 3],
            BlockPreset::NnPair => match model {
                ModelKind::StaggeredXxz => vec![0, 1],
                ModelKind::AshkinTeller => vec![0, 2],
            },
            BlockPreset::SigmaSigmaPair => vec![0, 2],
            BlockPreset::SigmaTauCrossPair => vec![0, 3],
            BlockPreset::SeparatedPairs => vec![0, 1, 4, 5],
            BlockPreset::AlternatingQuartet => vec![0, 3, 4, 7],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlockSpec {
    Preset(BlockPreset),
    Sites(Vec<usize>),
}

impl FromStr for BlockSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(p) = PRESETS.iter().find(|p| p.name() == s) {
            return Ok(BlockSpec::Preset(*p));
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(BlockSpec::Sites)
            .map_err(|_| Error::argument(format!("unknown block '{s}': expected a preset name or a comma-separated site list")))
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSpec::Preset(p) => f.write_str(p.name()),
            BlockSpec::Sites(s) => {
                let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "sites:{}", parts.join("-"))
            }
        }
    }
}

/// A validated block: its sites and the half used as subsystem A for
/// partial transposes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub label: String,
    pub sites: Vec<usize>,
    /// First `⌊|sites| / 2⌋` sites.
    pub split: Vec<usize>,
}

impl BlockSpec {
    pub fn resolve(&self, model: ModelKind, m_sites: usize) -> Result<Block> {
        let sites = match self {
            BlockSpec::Preset(p) => p.sites(model),
            BlockSpec::Sites(s) => s.clone(),
        };
        let n = 2 * m_sites;
        if sites.is_empty() {
            return Err(Error::argument("block is empty"));
        }
        if sites.len() > MAX_REDUCED_SITES {
            return Err(Error::argument(format!("block of {} sites exceeds {MAX_REDUCED_SITES}", sites.len())));
        }
        for (i, &s) in sites.iter().enumerate() {
            if s >= n {
                return Err(Error::argument(format!("block {self} needs site {s}, chain has {n} spins")));
            }
            if sites[..i].contains(&s) {
                return Err(Error::argument(format!("site {s} repeated in block {self}")));
            }
        }
        if sites.len() == n {
            return Err(Error::argument(format!("block {self} covers the whole chain")));
        }
        let split = sites[..sites.len() / 2].to_vec();
        Ok(Block {
            label: self.to_string(),
            sites,
            split,
        })
    }
}
