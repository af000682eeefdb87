//! One ground-state solve per grid point, evaluated for a list of
//! quantities and flattened into long-format rows.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use spinchain_core::eigensolve::ground_state;
use spinchain_core::entanglement::{dsb, lambda_analytic, negativity, reduce, von_neumann};
use spinchain_core::observables::{correlator_x, finite_difference, magnetization_x, Series, SweptParameter};
use spinchain_core::{LanczosOptions, ModelKind, ModelParams, SpinBasis};

use crate::block::{Block, BlockSpec};
use crate::error::{Error, Result};

/// Upper bound on the memory of all concurrently running solves.
pub const MEMORY_CAP_BYTES: u64 = 4 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Energy,
    Negativity,
    Dsb,
    /// Frontal-pair DSB from the closed form in `m` and `G` (AT only).
    DsbAnalytic,
    Entropy,
    /// Site-averaged `<σ^x>` (AT only).
    Magnetization,
    /// Site-averaged `<σ^x τ^x>` (AT only).
    Correlator,
}

const OBSERVABLES: [(Observable, &str); 7] = [
    (Observable::Energy, "energy"),
    (Observable::Negativity, "negativity"),
    (Observable::Dsb, "dsb"),
    (Observable::DsbAnalytic, "dsb-analytic"),
    (Observable::Entropy, "entropy"),
    (Observable::Magnetization, "m"),
    (Observable::Correlator, "G"),
];

impl Observable {
    pub fn name(self) -> &'static str {
        OBSERVABLES.iter().find(|o| o.0 == self).expect("listed").1
    }

    fn needs_ashkin_teller(self) -> bool {
        matches!(self, Observable::DsbAnalytic | Observable::Magnetization | Observable::Correlator)
    }

    fn needs_pair_split(self) -> bool {
        matches!(self, Observable::Negativity | Observable::Dsb)
    }
}

/// An observable or its first or second derivative along the sweep,
/// written `entropy`, `d1:entropy`, `d2:entropy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quantity {
    pub observable: Observable,
    pub derivative: u8,
}

impl Quantity {
    pub fn new(observable: Observable) -> Self {
        Self {
            observable,
            derivative: 0,
        }
    }

    pub fn derivative(observable: Observable, order: u8) -> Self {
        Self {
            observable,
            derivative: order,
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (derivative, base) = match s.split_once(':') {
            Some(("d1", rest)) => (1, rest),
            Some(("d2", rest)) => (2, rest),
            Some(_) => return Err(Error::argument(format!("unknown derivative prefix in '{s}'"))),
            None => (0, s),
        };
        let observable = OBSERVABLES
            .iter()
            .find(|o| o.1 == base)
            .map(|o| o.0)
            .ok_or_else(|| {
                let names: Vec<&str> = OBSERVABLES.iter().map(|o| o.1).collect();
                Error::argument(format!("unknown quantity '{base}', expected one of {}", names.join(", ")))
            })?;
        Ok(Self {
            observable,
            derivative,
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.derivative {
            0 => f.write_str(self.observable.name()),
            d => write!(f, "d{d}:{}", self.observable.name()),
        }
    }
}

/// Half-open grid `start, start + step, ...` below `stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridRange {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::argument("range bounds must be finite"));
        }
        if !(step > 0.0) {
            return Err(Error::argument(format!("step must be positive, got {step}")));
        }
        if !(start < stop) {
            return Err(Error::argument(format!("range start {start} must be below stop {stop}")));
        }
        Ok(Self { start, stop, step })
    }

    pub fn points(&self) -> Vec<f64> {
        // a point within 1e-9 steps of stop counts as stop itself
        let n = ((self.stop - self.start) / self.step - 1e-9).ceil().max(1.0) as usize;
        (0..n).map(|i| self.start + self.step * i as f64).collect()
    }
}

impl FromStr for GridRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::argument(format!("range '{s}' must be start:stop:step"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let v: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Self::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub model: ModelKind,
    pub m_sites: usize,
    /// Values of Δ and β; the swept one is overwritten at every grid point.
    pub delta: f64,
    pub beta: f64,
    pub swept: SweptParameter,
    pub range: GridRange,
    pub quantities: Vec<Quantity>,
    pub block: BlockSpec,
    pub solver: LanczosOptions,
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
}

impl SweepSpec {
    pub fn chain_spins(&self) -> usize {
        2 * self.m_sites
    }

    fn params_at(&self, x: f64) -> Result<ModelParams> {
        let (delta, beta) = match self.swept {
            SweptParameter::Delta => (x, self.beta),
            SweptParameter::Beta => (self.delta, x),
        };
        Ok(ModelParams::new(self.model, self.m_sites, delta, beta)?)
    }

    /// Checks everything that can be checked before solving.
    pub fn validate(&self) -> Result<Block> {
        ModelParams::new(self.model, self.m_sites, self.delta, self.beta)?;
        let block = self.block.resolve(self.model, self.m_sites)?;
        if self.quantities.is_empty() {
            return Err(Error::argument("no quantity requested"));
        }
        let n_points = self.range.points().len();
        for q in &self.quantities {
            if q.observable.needs_ashkin_teller() && self.model != ModelKind::AshkinTeller {
                return Err(Error::argument(format!("{q} is defined for the Ashkin-Teller chain only")));
            }
            if q.observable.needs_pair_split() && block.split.is_empty() {
                return Err(Error::argument(format!("{q} needs a block of at least two sites")));
            }
            if !(0..=2).contains(&q.derivative) {
                return Err(Error::argument(format!("derivative order {} not supported", q.derivative)));
            }
            if q.derivative > 0 && n_points < 3 {
                return Err(Error::argument(format!("{q} needs at least three grid points, range gives {n_points}")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::argument("thread count must be positive"));
        }
        Ok(block)
    }
}

/// Bytes held by one solve: the sector basis, the sparse matrix and the
/// Krylov vectors.
pub fn memory_estimate(model: ModelKind, m_sites: usize, solver: &LanczosOptions) -> u64 {
    let p = ModelParams {
        model,
        m_sites,
        j_coupling: 1.0,
        delta: 1.0,
        beta: 1.0,
    };
    let dim = SpinBasis::sector_size(p.n_spins(), p.ground_sector()) as u64;
    let nnz_per_row = 1 + match model {
        ModelKind::AshkinTeller => 3 * m_sites as u64,
        ModelKind::StaggeredXxz => 2 * m_sites as u64,
    };
    let krylov = solver.krylov_dim.min(dim as usize) as u64 + 8;
    dim * (4 + 8 + nnz_per_row * 12 + krylov * 8)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model: ModelKind,
    pub chain_spins: usize,
    pub delta: f64,
    pub beta: f64,
    pub block: String,
    pub quantity: String,
    pub value: f64,
    pub converged: bool,
}

/// Rounds to the 12 significant digits written to CSV, so that emitted
/// files parse back to identical rows.
pub fn round_sig12(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.11e}").parse().expect("formatted float parses")
    } else {
        x
    }
}

struct Point {
    values: Vec<f64>,
    converged: bool,
}

fn evaluate(params: &ModelParams, block: &Block, observables: &[Observable], solver: &LanczosOptions) -> Point {
    let failed = || Point {
        values: vec![f64::NAN; observables.len()],
        converged: false,
    };
    let ground = match ground_state(params, solver) {
        Ok(g) => g,
        Err(_) => return failed(),
    };
    let psi = ground.ground_state();
    let mut rho = None;
    let mut values = Vec::with_capacity(observables.len());
    let mut ok = ground.all_converged() && !ground.degenerate;
    for &o in observables {
        let v = (|| -> spinchain_core::Result<f64> {
            Ok(match o {
                Observable::Energy => ground.ground_energy(),
                Observable::Magnetization => magnetization_x(psi, params)?,
                Observable::Correlator => correlator_x(psi, params)?,
                Observable::DsbAnalytic => {
                    lambda_analytic(magnetization_x(psi, params)?, correlator_x(psi, params)?, params.delta)
                }
                Observable::Negativity | Observable::Dsb | Observable::Entropy => {
                    if rho.is_none() {
                        rho = Some(reduce(psi, &block.sites)?);
                    }
                    let r = rho.as_ref().expect("set above");
                    match o {
                        Observable::Negativity => negativity(r, &block.split)?,
                        Observable::Dsb => dsb(r, &block.split)?,
                        _ => von_neumann(r)?,
                    }
                }
            })
        })();
        values.push(v.unwrap_or_else(|_| {
            ok = false;
            f64::NAN
        }));
    }
    Point { values, converged: ok }
}

/// Runs the sweep and returns rows in grid order, quantities in the order
/// requested. A failed solve yields NaN values flagged as not converged.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let block = spec.validate()?;
    let grid = spec.range.points();
    let params: Vec<ModelParams> = grid.iter().map(|&x| spec.params_at(x)).collect::<Result<_>>()?;

    let per_solve = memory_estimate(spec.model, spec.m_sites, &spec.solver);
    if per_solve > MEMORY_CAP_BYTES {
        return Err(Error::Core(spinchain_core::Error::Capacity(format!(
            "one solve needs about {} MiB, cap is {} MiB",
            per_solve >> 20,
            MEMORY_CAP_BYTES >> 20
        ))));
    }
    let requested = spec
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let threads = requested.min((MEMORY_CAP_BYTES / per_solve.max(1)) as usize).max(1);

    let mut observables: Vec<Observable> = Vec::new();
    for q in &spec.quantities {
        if !observables.contains(&q.observable) {
            observables.push(q.observable);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::argument(format!("thread pool: {e}")))?;
    let points: Vec<Point> = pool.install(|| {
        params
            .par_iter()
            .map(|p| evaluate(p, &block, &observables, &spec.solver))
            .collect()
    });

    let mut columns: Vec<(Vec<f64>, Vec<bool>)> = Vec::with_capacity(spec.quantities.len());
    for q in &spec.quantities {
        let k = observables.iter().position(|&o| o == q.observable).expect("collected above");
        let raw: Vec<f64> = points.iter().map(|p| p.values[k]).collect();
        let conv: Vec<bool> = points.iter().map(|p| p.converged).collect();
        if q.derivative == 0 {
            columns.push((raw, conv));
        } else {
            let series = Series::new(spec.swept, grid.clone(), raw, q.observable.name())?;
            let d = finite_difference(&series, q.derivative)?;
            let conv = (0..grid.len()).map(|i| stencil(i, grid.len()).all(|j| conv[j])).collect();
            columns.push((d.values().to_vec(), conv));
        }
    }

    let mut rows = Vec::with_capacity(grid.len() * spec.quantities.len());
    for (i, p) in params.iter().enumerate() {
        for (q, (values, conv)) in spec.quantities.iter().zip(&columns) {
            rows.push(SweepRow {
                model: spec.model,
                chain_spins: spec.chain_spins(),
                delta: p.delta,
                beta: p.beta,
                block: block.label.clone(),
                quantity: q.to_string(),
                value: round_sig12(values[i]),
                converged: conv[i],
            });
        }
    }
    Ok(rows)
}

/// Grid points entering the finite-difference value at `i`.
fn stencil(i: usize, n: usize) -> std::ops::Range<usize> {
    if i == 0 {
        0..4.min(n)
    } else if i == n - 1 {
        n.saturating_sub(4)..n
    } else {
        i - 1..i + 2
    }
}

/// Values of one quantity as a series along the sweep axis.
pub fn series_of(rows: &[SweepRow], swept: SweptParameter, quantity: &str) -> Result<Series> {
    let (grid, values): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.quantity == quantity)
        .map(|r| {
            let x = match swept {
                SweptParameter::Delta => r.delta,
                SweptParameter::Beta => r.beta,
            };
            (x, r.value)
        })
        .unzip();
    Ok(Series::new(swept, grid, values, quantity)?)
}
