//! Run settings from a flat `key = value` file and command-line flags.
//!
//! Keys are the long flag names without dashes (`m-sites`, `delta`, `range`,
//! `quantity`, ...). Blank lines and lines starting with `#` are ignored.
//! `quantity` may be repeated or hold a comma-separated list. Flags given on
//! the command line replace the file's values.

use std::path::PathBuf;

use spinchain_core::observables::SweptParameter;
use spinchain_core::{LanczosOptions, ModelKind};

use crate::block::BlockSpec;
use crate::error::{Error, Result};
use crate::sweep::{GridRange, Quantity, SweepSpec};
use crate::table::parse_model;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub model: Option<ModelKind>,
    pub m_sites: Option<usize>,
    pub delta: Option<f64>,
    pub beta: Option<f64>,
    pub sweep: Option<SweptParameter>,
    pub range: Option<GridRange>,
    pub block: Option<BlockSpec>,
    pub quantities: Vec<Quantity>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub full: bool,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::argument(format!("invalid value '{value}' for {key}")))
}

pub fn parse_swept(s: &str) -> Result<SweptParameter> {
    match s.trim().to_ascii_lowercase().as_str() {
        "delta" => Ok(SweptParameter::Delta),
        "beta" => Ok(SweptParameter::Beta),
        other => Err(Error::argument(format!("cannot sweep '{other}', expected delta or beta"))),
    }
}

fn parse_bool(key: &str, s: &str) -> Result<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "" | "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::argument(format!("invalid boolean '{s}' for {key}"))),
    }
}

impl Settings {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches("--");
        match key {
            "model" => self.model = Some(parse_model(value)?),
            "m-sites" => self.m_sites = Some(parse(key, value)?),
            "delta" => self.delta = Some(parse(key, value)?),
            "beta" => self.beta = Some(parse(key, value)?),
            "sweep" => self.sweep = Some(parse_swept(value)?),
            "range" => self.range = Some(value.trim().parse()?),
            "block" => self.block = Some(value.parse()?),
            "quantity" => {
                for q in value.split(',').filter(|q| !q.trim().is_empty()) {
                    self.quantities.push(q.parse()?);
                }
            }
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "threads" => self.threads = Some(parse(key, value)?),
            "seed" => self.seed = Some(parse(key, value)?),
            "tol" => self.tol = Some(parse(key, value)?),
            "max-iter" => self.max_iter = Some(parse(key, value)?),
            "full" => self.full = parse_bool(key, value)?,
            other => return Err(Error::argument(format!("unknown setting '{other}'"))),
        }
        Ok(())
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::argument(format!("line {}: expected key = value", n + 1)))?;
            s.set(key, value)
                .map_err(|e| Error::argument(format!("line {}: {e}", n + 1)))?;
        }
        Ok(s)
    }

    /// `self` with every value present in `overrides` replaced.
    pub fn merged(mut self, overrides: Settings) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if overrides.$f.is_some() { self.$f = overrides.$f; } )* };
        }
        take!(model, m_sites, delta, beta, sweep, range, block, out, threads, seed, tol, max_iter);
        if !overrides.quantities.is_empty() {
            self.quantities = overrides.quantities;
        }
        self.full |= overrides.full;
        self
    }

    pub fn solver(&self) -> Result<LanczosOptions> {
        let mut o = LanczosOptions::default();
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Error::argument(format!("tolerance must be positive, got {t}")));
            }
            o.tol = t;
        }
        if let Some(s) = self.seed {
            o.seed = s;
        }
        if let Some(m) = self.max_iter {
            o.max_iter = m;
        }
        Ok(o)
    }

    /// Sweep specification; `model`, `m-sites`, `sweep`, `range`, `block`
    /// and at least one `quantity` are required, the fixed parameter
    /// defaults to 1.
    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        let missing = |k: &str| Error::argument(format!("sweep needs --{k}"));
        Ok(SweepSpec {
            model: self.model.ok_or_else(|| missing("model"))?,
            m_sites: self.m_sites.ok_or_else(|| missing("m-sites"))?,
            delta: self.delta.unwrap_or(1.0),
            beta: self.beta.unwrap_or(1.0),
            swept: self.sweep.ok_or_else(|| missing("sweep"))?,
            range: self.range.ok_or_else(|| missing("range"))?,
            quantities: if self.quantities.is_empty() {
                return Err(missing("quantity"));
            } else {
                self.quantities.clone()
            },
            block: self.block.clone().ok_or_else(|| missing("block"))?,
            solver: self.solver()?,
            threads: self.threads,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::BlockPreset;

    const FILE: &str = "
        # frontal pair entropy
        model = at
        m-sites = 4
        sweep = delta
        range = 0.5:1.5:0.25
        block = frontal-pair
        quantity = entropy, d1:entropy
        quantity = dsb
        beta = 0.75
    ";

    #[test]
    fn file_settings() {
        let s = Settings::parse_file(FILE).unwrap();
        assert_eq!(s.model, Some(ModelKind::AshkinTeller));
        assert_eq!(s.quantities.len(), 3);
        let spec = s.sweep_spec().unwrap();
        assert_eq!(spec.beta, 0.75);
        assert_eq!(spec.delta, 1.0);
        assert_eq!(spec.block, BlockSpec::Preset(BlockPreset::FrontalPair));
    }

    #[test]
    fn flags_override_file() {
        let file = Settings::parse_file(FILE).unwrap();
        let mut cli = Settings::default();
        cli.set("--m-sites", "3").unwrap();
        cli.set("quantity", "energy").unwrap();
        let s = file.merged(cli);
        assert_eq!(s.m_sites, Some(3));
        assert_eq!(s.beta, Some(0.75));
        assert_eq!(s.quantities, vec!["energy".parse().unwrap()]);
    }

    #[test]
    fn errors_name_the_line() {
        let e = Settings::parse_file("model = at\nm-sites = four\n").unwrap_err();
        assert!(e.to_string().contains("line 2"));
        assert!(Settings::parse_file("colour = red").is_err());
        assert!(Settings::parse_file("just words").is_err());
        assert!(Settings::default().sweep_spec().is_err());
    }
}
