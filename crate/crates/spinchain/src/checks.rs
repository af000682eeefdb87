//! Named verification suites and their reports.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use spinchain_core::verify::{
    check_pair_density_equality, check_constraints_on_ground_state, check_energy_equivalence,
    check_link_algebra, check_sector_degeneracy, check_spectral_inclusion, CheckStatus, VerificationReport,
};
use spinchain_core::{LanczosOptions, ModelKind, ModelParams};

use crate::error::{Error, Result};

pub const SUITES: [&str; 7] = [
    "link-algebra",
    "constraints",
    "energy",
    "density",
    "spectrum",
    "degeneracy",
    "all",
];

/// Largest `M` each suite handles; larger requests are clamped.
fn size_limit(suite: &str) -> usize {
    match suite {
        "link-algebra" => 4,
        "constraints" | "density" => 6,
        "energy" => 7,
        _ => 3,
    }
}

fn expand(suites: &[String]) -> Result<Vec<&'static str>> {
    let mut out: Vec<&'static str> = Vec::new();
    for s in suites {
        let name = SUITES
            .iter()
            .find(|x| **x == s.as_str())
            .ok_or_else(|| Error::argument(format!("unknown suite '{s}', expected one of {}", SUITES.join(", "))))?;
        let names: &[&'static str] = if *name == "all" { &SUITES[..6] } else { std::slice::from_ref(name) };
        for n in names {
            if !out.contains(n) {
                out.push(n);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::argument("no verification suite named"));
    }
    Ok(out)
}

/// Runs the named suites at `M = m_sites` (clamped to each suite's limit)
/// and the given parameter point.
pub fn run_verify(
    suites: &[String],
    m_sites: usize,
    delta: f64,
    beta: f64,
    solver: &LanczosOptions,
) -> Result<Vec<VerificationReport>> {
    let names = expand(suites)?;
    let mut reports = Vec::new();
    for name in names {
        let m = m_sites.min(size_limit(name)).max(2);
        let mut batch = match name {
            "link-algebra" => vec![
                check_link_algebra(ModelKind::AshkinTeller, m)?,
                check_link_algebra(ModelKind::StaggeredXxz, m)?,
            ],
            "constraints" => [ModelKind::AshkinTeller, ModelKind::StaggeredXxz]
                .into_iter()
                .map(|model| check_constraints_on_ground_state(&ModelParams::new(model, m, delta, beta)?, solver))
                .collect::<spinchain_core::Result<Vec<_>>>()?,
            "energy" => vec![check_energy_equivalence(delta, beta, m, solver)?],
            "density" => vec![check_pair_density_equality(delta, beta, m, solver)?],
            "spectrum" => vec![check_spectral_inclusion(delta, beta, m)?],
            "degeneracy" => vec![check_sector_degeneracy(delta, beta, m)?],
            _ => unreachable!("expanded above"),
        };
        if m != m_sites {
            for r in &mut batch {
                let sep = if r.notes.is_empty() { "" } else { "; " };
                r.notes = format!("{}{sep}run at M = {m} (requested {m_sites})", r.notes);
            }
        }
        reports.extend(batch);
    }
    Ok(reports)
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Inconclusive => "INCONCLUSIVE",
    }
}

/// One line per report plus a summary line.
pub fn format_reports(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            out,
            "{:<12} {:<26} M={} {:<20} deviation={:.3e} tol={:.0e} {}",
            status_word(r.status),
            r.check,
            r.m_sites,
            params.join(" "),
            r.max_deviation,
            r.tolerance,
            r.notes
        );
    }
    let failed = reports.iter().filter(|r| r.status != CheckStatus::Pass).count();
    let _ = writeln!(out, "{} checks, {} not passing", reports.len(), failed);
    out
}

/// Writes `<stem>.txt` (human-readable) and `<stem>.csv` next to `path`.
pub fn write_reports(path: &Path, reports: &[VerificationReport]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let txt = path.with_extension("txt");
    fs::write(&txt, format_reports(reports)).map_err(|e| Error::io(&txt, e))?;
    let csv_path = path.with_extension("csv");
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["check", "m_sites", "parameters", "max_deviation", "tolerance", "status", "notes"])?;
    for r in reports {
        let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        w.write_record([
            r.check.clone(),
            r.m_sites.to_string(),
            params.join(";"),
            format!("{:.6e}", r.max_deviation),
            format!("{:e}", r.tolerance),
            status_word(r.status).to_string(),
            r.notes.clone(),
        ])?;
    }
    w.flush().map_err(|e| Error::io(&csv_path, e))?;
    Ok(())
}

/// `Err(Verification)` unless every report passed.
pub fn require_all_pass(reports: &[VerificationReport]) -> Result<()> {
    let bad: Vec<&str> = reports
        .iter()
        .filter(|r| r.status != CheckStatus::Pass)
        .map(|r| r.check.as_str())
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Verification(bad.join(", ")))
    }
}
