//! Sweep execution and zero-crossing search.

use quarton::couplers::{build, CouplerSpec};
use quarton::kerr::analyze;
use quarton::oracle;
use rayon::prelude::*;

use crate::config::{Output, SweepConfig, SweepVariable};
use crate::SweepError;

/// Numerical results at one circuit point; frequencies in GHz, Kerr in MHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numeric {
    pub f_a: f64,
    pub f_b: f64,
    pub g_ab: Option<f64>,
    pub k_a: Option<f64>,
    pub k_b: Option<f64>,
    pub asym_ab: Option<f64>,
    pub asym_ba: Option<f64>,
}

/// Builds the coupler circuit and extracts the two qubit modes' Kerr terms.
pub fn numeric(spec: &CouplerSpec<f64>) -> quarton::Result<Numeric> {
    let built = build(spec)?;
    let (modes, report) = analyze(&built.graph)?;
    let missing = || quarton::Error::InvalidCoupler("no oscillating mode on a qubit junction".into());
    let a = modes.dominant_mode(built.qubit_branches[0], &[]).ok_or_else(missing)?;
    let b = modes.dominant_mode(built.qubit_branches[1], &[a]).ok_or_else(missing)?;
    Ok(Numeric {
        f_a: modes.modes[a].frequency_ghz,
        f_b: modes.modes[b].frequency_ghz,
        g_ab: report.cross_kerr(a, b),
        k_a: report.self_kerr(a),
        k_b: report.self_kerr(b),
        asym_ab: report.asym(a, b),
        asym_ba: report.asym(b, a),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub e_q: f64,
    pub e_ja: f64,
    pub e_jb: f64,
    /// `ok`, or why some numerical columns are empty.
    pub status: String,
    pub values: Vec<Option<f64>>,
    pub within_guard: Option<bool>,
}

impl Row {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub sweep_variable: SweepVariable,
    pub outputs: Vec<Output>,
    pub guarded: bool,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn columns(&self) -> Vec<&'static str> {
        let mut c = vec!["e_q_ghz", "e_ja_ghz", "e_jb_ghz", "status"];
        c.extend(self.outputs.iter().map(|o| o.column()));
        if self.guarded {
            c.push("within_guard");
        }
        c
    }

    pub fn x(&self, row: &Row) -> f64 {
        match self.sweep_variable {
            SweepVariable::EQ => row.e_q,
            SweepVariable::EJa => row.e_ja,
            SweepVariable::EJb => row.e_jb,
        }
    }

    /// `(x, y)` for one output column, `None` if it was not requested.
    pub fn series(&self, output: Output) -> Option<(Vec<f64>, Vec<Option<f64>>)> {
        let k = self.outputs.iter().position(|&o| o == output)?;
        Some(self.rows.iter().map(|r| (self.x(r), r.values[k])).unzip())
    }

    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok()).count()
    }
}

const MHZ: f64 = 1e3;

fn evaluate(cfg: &SweepConfig, template: &CouplerSpec<f64>, x: f64) -> Row {
    let spec = cfg.sweep_variable.apply(*template, x);
    let mut status = Vec::new();
    let main = numeric(&spec).map_err(|e| status.push(e.to_string())).ok();
    let compare_spec = cfg.compare_kind.map(|kind| CouplerSpec { kind, ..spec });
    let compare = compare_spec.and_then(|s| numeric(&s).map_err(|e| status.push(format!("compare: {e}"))).ok());
    let inputs = spec
        .oracle_inputs()
        .map_err(|e| status.push(format!("oracle: {e}")))
        .ok();
    let self_kerr = spec.oracle_self_kerr().ok().flatten();

    let values = cfg
        .outputs
        .iter()
        .map(|o| match o {
            Output::FA => main.map(|n| n.f_a),
            Output::FB => main.map(|n| n.f_b),
            Output::GAb => main.and_then(|n| n.g_ab),
            Output::KA => main.and_then(|n| n.k_a),
            Output::KB => main.and_then(|n| n.k_b),
            Output::AsymAb => main.and_then(|n| n.asym_ab),
            Output::AsymBa => main.and_then(|n| n.asym_ba),
            Output::OracleG => inputs.map(|i| oracle::g_tilted(&i) * MHZ),
            Output::OracleGQuarton => inputs.map(|i| oracle::g_quarton(&i) * MHZ),
            Output::OracleGCorrected => inputs.map(|i| oracle::g_quarton_corrected(&i) * MHZ),
            Output::OracleGNonquarton => inputs.map(|i| oracle::g_nonquarton(&i) * MHZ),
            Output::OracleKA => self_kerr.map(|k| k.0 * MHZ),
            Output::OracleKB => self_kerr.map(|k| k.1 * MHZ),
            Output::CompareGAb => compare.and_then(|n| n.g_ab),
            Output::CompareOracleG => compare_spec.and_then(|s| s.oracle_g().ok()).map(|g| g * MHZ),
        })
        .collect();

    let within_guard = cfg.anharmonicity_guard.map(|limit| {
        main.is_some_and(|n| {
            [(n.k_a, n.f_a), (n.k_b, n.f_b)]
                .iter()
                .all(|&(k, f)| k.is_some_and(|k| k.abs() / (f * MHZ) <= limit))
        })
    });

    Row {
        e_q: spec.e_q,
        e_ja: spec.qubit_a.e_j,
        e_jb: spec.qubit_b.e_j,
        status: if status.is_empty() {
            "ok".into()
        } else {
            status.join("; ")
        },
        values,
        within_guard,
    }
}

/// Evaluates every sweep point, in parallel when `threads` allows, keeping
/// grid order. Per-point failures are recorded in the row status.
pub fn run_sweep(cfg: &SweepConfig, threads: Option<usize>) -> Result<Table, SweepError> {
    cfg.validate()?;
    let template = cfg.coupler.spec()?;
    let grid = cfg.grid();
    let work = || {
        grid.par_iter()
            .map(|&x| evaluate(cfg, &template, x))
            .collect::<Vec<_>>()
    };
    let rows = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SweepError::Config(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    Ok(Table {
        sweep_variable: cfg.sweep_variable,
        outputs: cfg.outputs.clone(),
        guarded: cfg.anharmonicity_guard.is_some(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroCrossing {
    Found(f64),
    NotFound,
}

impl ZeroCrossing {
    pub fn value(self) -> Option<f64> {
        match self {
            ZeroCrossing::Found(x) => Some(x),
            ZeroCrossing::NotFound => None,
        }
    }
}

const ROOT_RTOL: f64 = 1e-6;

/// Root at the first sign change of `ys` over increasing `xs`. Points with
/// no value are skipped. The linear estimate is refined by bisection on
/// `model` to relative `1e-6` when a model is given.
pub fn find_zero_crossing(xs: &[f64], ys: &[Option<f64>], model: Option<&dyn Fn(f64) -> Option<f64>>) -> ZeroCrossing {
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).filter_map(|(&x, &y)| y.map(|y| (x, y))).collect();
    for w in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if y0 == 0.0 {
            return ZeroCrossing::Found(x0);
        }
        if y0.signum() == y1.signum() || y1 == 0.0 {
            continue;
        }
        let linear = x0 - y0 * (x1 - x0) / (y1 - y0);
        return ZeroCrossing::Found(model.and_then(|f| bisect(f, x0, y0, x1)).unwrap_or(linear));
    }
    match pts.last() {
        Some(&(x, 0.0)) => ZeroCrossing::Found(x),
        _ => ZeroCrossing::NotFound,
    }
}

fn bisect(f: &dyn Fn(f64) -> Option<f64>, mut lo: f64, y_lo: f64, mut hi: f64) -> Option<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= ROOT_RTOL * mid.abs().max(f64::MIN_POSITIVE) {
            return Some(mid);
        }
        let y = f(mid)?;
        if y == 0.0 {
            return Some(mid);
        }
        if y.signum() == y_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
