use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinchain::checks::{format_reports, require_all_pass, run_verify, write_reports, SUITES};
use spinchain::config::Settings;
use spinchain::presets::{figure, FIGURES};
use spinchain::sweep::{memory_estimate, run_sweep, SweepRow, MEMORY_CAP_BYTES};
use spinchain::{block, table, Error, Result};
use spinchain_core::eigensolve::{dense_spectrum, lanczos_ground, DENSE_MAX_DIM};
use spinchain_core::models::q_sector;
use spinchain_core::{build_hamiltonian, ModelKind, ModelParams, Sector, SpinBasis};

#[derive(Parser)]
#[command(name = "spinchain", version, about = "Exact diagonalization of the staggered XXZ and Ashkin-Teller chains")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Flags {
    /// Flat key = value file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// at | xxz
    #[arg(long, global = true)]
    model: Option<String>,
    /// Ashkin-Teller sites M (both chains have 2M spins).
    #[arg(long = "m-sites", visible_alias = "m", global = true)]
    m_sites: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,
    /// delta | beta
    #[arg(long, global = true)]
    sweep: Option<String>,
    /// start:stop:step, stop excluded.
    #[arg(long, global = true, allow_hyphen_values = true)]
    range: Option<String>,
    /// Preset name or comma-separated bit indices.
    #[arg(long, global = true)]
    block: Option<String>,
    /// energy, negativity, dsb, dsb-analytic, entropy, m, G, or d1:/d2: of one.
    #[arg(long, global = true)]
    quantity: Vec<String>,
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true)]
    threads: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    #[arg(long, global = true)]
    tol: Option<String>,
    #[arg(long = "max-iter", global = true)]
    max_iter: Option<String>,
    /// Use 20-spin chains in figure presets.
    #[arg(long, global = true)]
    full: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep Δ or β and write a CSV table.
    Sweep,
    /// Run a figure preset.
    Figure { name: String },
    /// Lowest levels of one Hamiltonian.
    Spectrum {
        /// ground | full | q=<0..3> (AT) | n=<M - set bits> (XXZ)
        #[arg(long, default_value = "ground")]
        sector: String,
        /// Number of levels; more than two needs a dense-sized sector.
        #[arg(long, default_value_t = 2)]
        levels: usize,
    },
    /// Run verification suites.
    Verify { suites: Vec<String> },
    /// Sector sizes, memory estimates and available names.
    Info,
}

impl Flags {
    fn settings(&self) -> Result<Settings> {
        let mut s = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                Settings::parse_file(&text)?
            }
            None => Settings::default(),
        };
        let mut cli = Settings::default();
        let pairs = [
            ("model", &self.model),
            ("m-sites", &self.m_sites),
            ("delta", &self.delta),
            ("beta", &self.beta),
            ("sweep", &self.sweep),
            ("range", &self.range),
            ("block", &self.block),
            ("out", &self.out),
            ("threads", &self.threads),
            ("seed", &self.seed),
            ("tol", &self.tol),
            ("max-iter", &self.max_iter),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cli.set(key, v)?;
            }
        }
        for q in &self.quantity {
            cli.set("quantity", q)?;
        }
        cli.full = self.full;
        s = s.merged(cli);
        Ok(s)
    }
}

fn emit_rows(rows: &[SweepRow], out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            table::write_atomic(path, rows)?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
            Ok(())
        }
        None => table::write_rows(io::stdout().lock(), rows),
    }
}

fn params(s: &Settings) -> Result<ModelParams> {
    let model = s.model.ok_or_else(|| Error::argument("--model is required"))?;
    let m = s.m_sites.ok_or_else(|| Error::argument("--m-sites is required"))?;
    Ok(ModelParams::new(model, m, s.delta.unwrap_or(1.0), s.beta.unwrap_or(1.0))?)
}

fn parse_sector(text: &str, p: &ModelParams) -> Result<Sector> {
    let bad = || Error::argument(format!("unknown sector '{text}'"));
    match text {
        "ground" => Ok(p.ground_sector()),
        "full" => Ok(Sector::Full),
        _ => {
            let (key, value) = text.split_once('=').ok_or_else(bad)?;
            match (key, p.model) {
                ("q", ModelKind::AshkinTeller) => Ok(q_sector(value.parse().map_err(|_| bad())?)?),
                ("n", ModelKind::StaggeredXxz) => {
                    let n: i64 = value.parse().map_err(|_| bad())?;
                    let set_bits = p.m_sites as i64 - n;
                    if !(0..=p.n_spins() as i64).contains(&set_bits) {
                        return Err(Error::argument(format!("n = {n} outside -M..=M")));
                    }
                    Ok(Sector::SzFixed(set_bits as usize))
                }
                _ => Err(bad()),
            }
        }
    }
}

fn spectrum(s: &Settings, sector: &str, levels: usize) -> Result<()> {
    let p = params(s)?;
    let sector = parse_sector(sector, &p)?;
    let h = build_hamiltonian(&p, sector)?;
    let result = if levels > 2 {
        if h.dim() > DENSE_MAX_DIM {
            return Err(Error::argument(format!(
                "{levels} levels need a dense solve, sector dimension {} exceeds {DENSE_MAX_DIM}",
                h.dim()
            )));
        }
        dense_spectrum(&h)?
    } else {
        lanczos_ground(&h, levels.clamp(1, 2).min(h.dim()), &s.solver()?)?
    };
    let mut out = io::stdout().lock();
    let w = |e: io::Error| Error::io("<stdout>", e);
    writeln!(out, "model={} spins={} sector={:?} dim={}", p.model.short_name(), p.n_spins(), sector, h.dim()).map_err(w)?;
    writeln!(out, "delta={} beta={}", p.delta, p.beta).map_err(w)?;
    for (i, e) in result.energies.iter().take(levels.max(1)).enumerate() {
        writeln!(out, "E{i} = {e:.12}  residual {:.2e}", result.residuals[i]).map_err(w)?;
    }
    if let Some(gap) = result.gap {
        writeln!(out, "gap = {gap:.12}{}", if result.degenerate { "  (degenerate)" } else { "" }).map_err(w)?;
    }
    Ok(())
}

fn info(s: &Settings) -> Result<()> {
    let mut out = io::stdout().lock();
    let w = |e: io::Error| Error::io("<stdout>", e);
    writeln!(out, "spinchain {}", env!("CARGO_PKG_VERSION")).map_err(w)?;
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    writeln!(out, "threads available: {threads}; memory cap {} MiB", MEMORY_CAP_BYTES >> 20).map_err(w)?;
    if let Ok(p) = params(s) {
        let ground = SpinBasis::sector_size(p.n_spins(), p.ground_sector());
        writeln!(out, "{} with M = {}: {} spins, full dimension {}, ground sector {:?} dimension {}",
            p.model.short_name(), p.m_sites, p.n_spins(), 1u64 << p.n_spins(), p.ground_sector(), ground).map_err(w)?;
        let est = memory_estimate(p.model, p.m_sites, &s.solver()?);
        writeln!(out, "estimated memory per solve: {:.1} MiB", est as f64 / (1u64 << 20) as f64).map_err(w)?;
    }
    let blocks: Vec<&str> = block::PRESETS.iter().map(|b| b.name()).collect();
    writeln!(out, "block presets: {}", blocks.join(", ")).map_err(w)?;
    writeln!(out, "quantities: energy, negativity, dsb, dsb-analytic, entropy, m, G (prefix d1: or d2: for derivatives)").map_err(w)?;
    writeln!(out, "figures: {}", FIGURES.join(", ")).map_err(w)?;
    writeln!(out, "verify suites: {}", SUITES.join(", ")).map_err(w)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let s = cli.flags.settings()?;
    match cli.command {
        Command::Sweep => {
            let rows = run_sweep(&s.sweep_spec()?)?;
            emit_rows(&rows, s.out.as_ref())
        }
        Command::Figure { name } => {
            let preset = figure(&name, s.full, s.solver()?, s.threads)?;
            eprintln!("{}: {}", preset.name, preset.description);
            let rows = preset.run()?;
            emit_rows(&rows, s.out.as_ref())
        }
        Command::Spectrum { sector, levels } => spectrum(&s, &sector, levels),
        Command::Verify { suites } => {
            let m = s.m_sites.ok_or_else(|| Error::argument("verify needs --m"))?;
            let reports = run_verify(&suites, m, s.delta.unwrap_or(1.0), s.beta.unwrap_or(1.0), &s.solver()?)?;
            print!("{}", format_reports(&reports));
            if let Some(path) = &s.out {
                write_reports(path, &reports)?;
            }
            require_all_pass(&reports)
        }
        Command::Info => info(&s),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
