use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quarton::netlist::Netlist;
use quarton::potentials::classify;
use quarton_sweep::config::{Format, Output, SweepVariable};
use quarton_sweep::run::numeric;
use quarton_sweep::{emit, find_zero_crossing, run_sweep, SweepConfig, SweepError, ZeroCrossing};

#[derive(Parser)]
#[command(name = "quarton", version, about = "Quarton coupler sweeps and circuit analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Output file; overrides the config's output_path. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Place every inductive element and branch of a netlist in the
    /// linear/nonlinear plane.
    Classify {
        #[arg(long)]
        netlist: PathBuf,
    },
    /// Print the normal modes of a netlist.
    Modes {
        #[arg(long)]
        netlist: PathBuf,
    },
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Sweep {
            config,
            format,
            out,
            parallel,
        } => sweep(&config, format, out, parallel),
        Command::Classify { netlist } => classify_netlist(&netlist),
        Command::Modes { netlist } => modes(&netlist),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn sweep(path: &Path, format: Option<Format>, out: Option<PathBuf>, parallel: Option<usize>) -> Result<(), SweepError> {
    if parallel == Some(0) {
        return Err(SweepError::Config("--parallel must be at least 1".into()));
    }
    let cfg = SweepConfig::load(path)?;
    let table = run_sweep(&cfg, parallel)?;
    let out = out.or_else(|| cfg.output_path.clone());
    emit::emit(&table, format.unwrap_or(cfg.format), out.as_deref())?;

    if cfg.sweep_variable == SweepVariable::EQ {
        let template = cfg.coupler.spec()?;
        for (output, pick) in [(Output::KA, 0usize), (Output::KB, 1)] {
            let Some((xs, ys)) = table.series(output) else { continue };
            let model = |e_q: f64| {
                let n = numeric(&quarton::couplers::CouplerSpec { e_q, ..template }).ok()?;
                if pick == 0 {
                    n.k_a
                } else {
                    n.k_b
                }
            };
            match find_zero_crossing(&xs, &ys, Some(&model)) {
                ZeroCrossing::Found(x) => eprintln!("{} crosses zero at E_Q = {x:.6} GHz", output.column()),
                ZeroCrossing::NotFound => eprintln!("{} has no zero crossing in range", output.column()),
            }
        }
    }

    let failed = table.failed_rows();
    if failed > 0 {
        return Err(SweepError::Numerical(format!(
            "{failed} of {} sweep points failed",
            table.rows.len()
        )));
    }
    Ok(())
}

fn load_netlist(path: &Path) -> Result<quarton::Circuit, SweepError> {
    let text = std::fs::read_to_string(path).map_err(|source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Netlist::from_json(&text)
        .and_then(|n| n.to_graph())
        .map_err(|e| SweepError::Config(format!("{}: {e}", path.display())))
}

fn classify_netlist(path: &Path) -> Result<(), SweepError> {
    let graph = load_netlist(path)?;
    println!("element  nodes    c2_ghz         c4_ghz         region                 c4/c2      stable");
    for (i, e) in graph.elements().iter().enumerate() {
        let Some(p) = e.potential() else { continue };
        let c = classify(&p);
        println!(
            "{i:<8} {:<8} {:<14.6e} {:<14.6e} {:<22} {:<10} {}",
            format!("{}-{}", e.nodes.0, e.nodes.1),
            p.c2,
            p.c4,
            c.region.to_string(),
            c.relative_nonlinearity.to_string(),
            c.stable
        );
    }
    println!();
    println!("branch   nodes    c2_ghz         c4_ghz         region                 c4/c2      stable");
    for (i, b) in graph.branches().iter().enumerate() {
        let c = classify(&b.potential);
        println!(
            "{i:<8} {:<8} {:<14.6e} {:<14.6e} {:<22} {:<10} {}",
            format!("{}-{}", b.nodes.0, b.nodes.1),
            b.potential.c2,
            b.potential.c4,
            c.region.to_string(),
            c.relative_nonlinearity.to_string(),
            c.stable
        );
    }
    Ok(())
}

fn modes(path: &Path) -> Result<(), SweepError> {
    let graph = load_netlist(path)?;
    let sol = graph.normal_modes().map_err(|e| SweepError::Numerical(e.to_string()))?;
    let branches = graph.branches();
    println!("mode  f_ghz          phi_zpf        reference_branch");
    for (m, mode) in sol.modes.iter().enumerate() {
        let zpf = mode.phi_zpf.map_or("free".to_string(), |z| format!("{z:.6e}"));
        let reference = mode.reference_branch.map_or("-".to_string(), |b| {
            format!("{b} ({}-{})", branches[b].nodes.0, branches[b].nodes.1)
        });
        println!("{m:<5} {:<14.6e} {zpf:<14} {reference}", mode.frequency_ghz);
    }
    println!();
    println!("branch phase amplitude per mode (reference branch = 1)");
    for (b, branch) in branches.iter().enumerate() {
        let amps: Vec<String> = sol
            .modes
            .iter()
            .map(|m| format!("{:>13.6e}", m.branch_amplitudes[b]))
            .collect();
        println!(
            "{b:<3} {:<6} {}",
            format!("{}-{}", branch.nodes.0, branch.nodes.1),
            amps.join(" ")
        );
    }
    Ok(())
}
