//! `jcd` — batch front end for rate-exponent regions and
//! discrimination-error simulation over discrete memoryless channels.
//!
//! Exit codes: 0 success, 2 validation/usage error, 3 resource-budget
//! error.

mod problem;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jcd_core::dist::FiniteDistribution;
use jcd_core::region::{membership, minimax_frontier, np_frontier, rate_exponent_surface};
use jcd_core::report::{
    entry_from_sample, estimate_json, method_label, surface_csv, tradeoff_csv, SimulationEntry,
    SimulationReport, Units,
};
use jcd_core::sim::{
    exponent_estimate, np_threshold_search, ErrorMethod, PerNMethod, TypeComposition,
};
use jcd_core::simplex::default_px_resolution;
use jcd_core::tilt::DEFAULT_S_RESOLUTION;
use jcd_core::{DistF64, Error as CoreError, ProblemF64};

use problem::{ProblemFile, RunManifest};

#[derive(Parser)]
#[command(
    name = "jcd",
    version,
    about = "Rate-exponent trade-offs for joint communication and channel discrimination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Channel problem description (JSON).
    #[arg(long, value_name = "FILE")]
    problem: PathBuf,
    /// Write the artifact here (atomically) together with a
    /// `<out>.manifest.json` sidecar; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Display units for rates/exponents; computation is in nats.
    #[arg(long, default_value = "nats")]
    units: Units,
}

#[derive(Subcommand)]
enum Command {
    /// Discrimination-exponent frontier at a fixed input distribution,
    /// or the full rate-exponent surface with `--px sweep`.
    Frontier {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated input distribution, or `sweep`.
        #[arg(long)]
        px: String,
        /// Number of tilt-grid points.
        #[arg(long, default_value_t = DEFAULT_S_RESOLUTION)]
        s_points: usize,
        /// Input-lattice resolution for sweeps (default chosen from the
        /// input alphabet size).
        #[arg(long)]
        px_resolution: Option<usize>,
    },
    /// Pareto surface of (rate, e0, e1) over the cost-feasible lattice.
    Surface {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = DEFAULT_S_RESOLUTION)]
        s_points: usize,
        #[arg(long)]
        px_resolution: Option<usize>,
        /// Emit JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Frontier of (rate, common exponent) under the minimax criterion.
    Minimax {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        px_resolution: Option<usize>,
    },
    /// Frontier of (rate, type-II exponent) under the Neyman-Pearson
    /// criterion (independent of the type-I level in (0,1)).
    Np {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        px_resolution: Option<usize>,
    },
    /// Grid-certified membership test for a (rate, e0, e1) query.
    Membership {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        e0: f64,
        #[arg(long)]
        e1: f64,
        #[arg(long, default_value_t = DEFAULT_S_RESOLUTION)]
        s_points: usize,
        #[arg(long)]
        px_resolution: Option<usize>,
    },
    /// Simulate the discrimination test across blocklengths and report
    /// empirical against predicted error decay.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated input distribution (quantized to each
        /// blocklength's nearest type).
        #[arg(long)]
        px: String,
        /// Tilt parameter of the threshold test.
        #[arg(long, conflicts_with = "alpha")]
        s: Option<f64>,
        /// Type-I error budget: scan thresholds instead of fixing a tilt.
        #[arg(long)]
        alpha: Option<f64>,
        /// Comma-separated, strictly increasing blocklengths.
        #[arg(long)]
        n: String,
        /// `exact` or `monte-carlo` (np mode is always exact).
        #[arg(long, default_value = "exact")]
        method: String,
        /// Trials per blocklength for `monte-carlo`.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Base RNG seed; trial `t` uses stream `t`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<(ProblemFile, ProblemF64), CliError> {
    let file = ProblemFile::load(path).map_err(CliError::validation)?;
    let problem = file.to_problem().map_err(CliError::validation)?;
    Ok((file, problem))
}

fn parse_px(text: &str, in_size: usize) -> Result<DistF64, CliError> {
    let values = text
        .split(',')
        .map(|f| f.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::validation(format!("--px: {e}")))?;
    if values.len() != in_size {
        return Err(CliError::validation(format!(
            "--px has {} entries, problem has {} input symbols",
            values.len(),
            in_size
        )));
    }
    FiniteDistribution::new(values).map_err(CliError::from)
}

fn parse_n_list(text: &str) -> Result<Vec<usize>, CliError> {
    let ns = text
        .split(',')
        .map(|f| f.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::validation(format!("--n: {e}")))?;
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::validation(
            "--n must be a non-empty, strictly increasing list",
        ));
    }
    Ok(ns)
}

/// Write the artifact (atomically when a path is given) plus a manifest
/// sidecar; print to stdout otherwise.
fn emit(out: &Option<PathBuf>, data: &str, manifest: &RunManifest) -> Result<(), CliError> {
    match out {
        None => {
            print!("{data}");
            Ok(())
        }
        Some(path) => {
            write_atomic(path, data.as_bytes())?;
            let manifest_path = sidecar_path(path);
            let text = serde_json::to_string_pretty(manifest)
                .expect("manifest serializes");
            write_atomic(&manifest_path, text.as_bytes())?;
            Ok(())
        }
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    path.with_file_name(name)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut tmp_name = path.file_name().unwrap_or_default().to_os_string();
    tmp_name.push(".tmp~");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, bytes)
        .map_err(|e| CliError::validation(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| CliError::validation(format!("cannot rename to {}: {e}", path.display())))?;
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Frontier {
            common,
            px,
            s_points,
            px_resolution,
        } => {
            let (file, problem) = load(&common.problem)?;
            if px.trim() == "sweep" {
                let px_res = px_resolution.unwrap_or_else(|| default_px_resolution(problem.in_size()));
                let surface = rate_exponent_surface(&problem, px_res, s_points)?;
                let data = surface_csv(&surface, common.units);
                let manifest = RunManifest::new(
                    "frontier",
                    serde_json::json!({
                        "px": "sweep",
                        "s_points": s_points,
                        "px_resolution": px_res,
                        "units": common.units.label(),
                    }),
                    None,
                    file.hash(),
                );
                return emit(&common.out, &data, &manifest);
            }
            if s_points < 2 {
                return Err(CliError::validation("--s-points must be at least 2"));
            }
            let px = parse_px(&px, problem.in_size())?;
            let grid = jcd_core::tilt::uniform_grid::<f64>(s_points);
            let rate = jcd_core::info::mutual_information(&px, problem.comm())?;
            let points = jcd_core::tilt::exponent_frontier(&problem, &px, &grid)?;
            let surface = jcd_core::region::ParetoSurface {
                points: points
                    .into_iter()
                    .map(|pt| jcd_core::region::RegionPoint {
                        rate,
                        e0: pt.e0,
                        e1: pt.e1,
                        px: px.clone(),
                        s: pt.s,
                    })
                    .collect(),
                px_resolution: 1,
                s_resolution: s_points,
            };
            let data = surface_csv(&surface, common.units);
            let manifest = RunManifest::new(
                "frontier",
                serde_json::json!({
                    "px": px.probs(),
                    "s_points": s_points,
                    "units": common.units.label(),
                }),
                None,
                file.hash(),
            );
            emit(&common.out, &data, &manifest)
        }

        Command::Surface {
            common,
            s_points,
            px_resolution,
            json,
        } => {
            let (file, problem) = load(&common.problem)?;
            let px_res = px_resolution.unwrap_or_else(|| default_px_resolution(problem.in_size()));
            let surface = rate_exponent_surface(&problem, px_res, s_points)?;
            let data = if json {
                let doc = jcd_core::report::SurfaceJson::from_surface(&surface, common.units);
                serde_json::to_string_pretty(&doc).expect("surface serializes") + "\n"
            } else {
                surface_csv(&surface, common.units)
            };
            let manifest = RunManifest::new(
                "surface",
                serde_json::json!({
                    "s_points": s_points,
                    "px_resolution": px_res,
                    "json": json,
                    "units": common.units.label(),
                }),
                None,
                file.hash(),
            );
            emit(&common.out, &data, &manifest)
        }

        Command::Minimax {
            common,
            px_resolution,
        } => {
            let (file, problem) = load(&common.problem)?;
            let px_res = px_resolution.unwrap_or_else(|| default_px_resolution(problem.in_size()));
            let frontier = minimax_frontier(&problem, px_res)?;
            let data = tradeoff_csv(
                &frontier,
                common.units,
                &["minimax frontier: e = best common exponent of both error types"],
            );
            let manifest = RunManifest::new(
                "minimax",
                serde_json::json!({
                    "px_resolution": px_res,
                    "units": common.units.label(),
                }),
                None,
                file.hash(),
            );
            emit(&common.out, &data, &manifest)
        }

        Command::Np {
            common,
            px_resolution,
        } => {
            let (file, problem) = load(&common.problem)?;
            let px_res = px_resolution.unwrap_or_else(|| default_px_resolution(problem.in_size()));
            let frontier = np_frontier(&problem, px_res)?;
            let data = tradeoff_csv(
                &frontier,
                common.units,
                &["neyman-pearson frontier: region is independent of the type-I level alpha in (0,1)"],
            );
            let manifest = RunManifest::new(
                "np",
                serde_json::json!({
                    "px_resolution": px_res,
                    "units": common.units.label(),
                }),
                None,
                file.hash(),
            );
            emit(&common.out, &data, &manifest)
        }

        Command::Membership {
            common,
            rate,
            e0,
            e1,
            s_points,
            px_resolution,
        } => {
            let (file, problem) = load(&common.problem)?;
            let px_res = px_resolution.unwrap_or_else(|| default_px_resolution(problem.in_size()));
            // Queries arrive in display units; the search runs in nats.
            let to_nats = |v: f64| match common.units {
                Units::Nats => v,
                Units::Bits => v * std::f64::consts::LN_2,
            };
            let witness = membership(
                &problem,
                to_nats(rate),
                to_nats(e0),
                to_nats(e1),
                px_res,
                s_points,
            )?;
            let doc = serde_json::json!({
                "query": { "rate": rate, "e0": e0, "e1": e1, "units": common.units.label() },
                "inside": witness.is_some(),
                "witness": witness.map(|(px, s)| serde_json::json!({
                    "px": px.probs(),
                    "s": s,
                })),
                "note": "membership is grid-certified: a negative answer may be a resolution artifact near the boundary",
            });
            let data = serde_json::to_string_pretty(&doc).expect("membership doc serializes") + "\n";
            let manifest = RunManifest::new(
                "membership",
                serde_json::json!({
                    "rate": rate, "e0": e0, "e1": e1,
                    "s_points": s_points,
                    "px_resolution": px_res,
                    "units": common.units.label(),
                }),
                None,
                file.hash(),
            );
            emit(&common.out, &data, &manifest)
        }

        Command::Simulate {
            common,
            px,
            s,
            alpha,
            n,
            method,
            trials,
            seed,
        } => {
            let (file, problem) = load(&common.problem)?;
            let px = parse_px(&px, problem.in_size())?;
            let n_list = parse_n_list(&n)?;
            if trials == 0 {
                return Err(CliError::validation("--trials must be at least 1"));
            }
            let report = match (s, alpha) {
                (Some(s), None) => simulate_llrt(
                    &problem, &px, s, &n_list, &method, trials, seed, common.units, file.hash(),
                )?,
                (None, Some(alpha)) => {
                    simulate_np(&problem, &px, alpha, &n_list, common.units, file.hash())?
                }
                _ => {
                    return Err(CliError::validation(
                        "simulate needs exactly one of --s or --alpha",
                    ))
                }
            };
            let data = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            let manifest = RunManifest::new(
                "simulate",
                serde_json::json!({
                    "px": px.probs(),
                    "s": s,
                    "alpha": alpha,
                    "n": n_list,
                    "method": report.method,
                    "trials": report.trials,
                    "units": common.units.label(),
                }),
                report.seed,
                file.hash(),
            );
            emit(&common.out, &data, &manifest)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn simulate_llrt(
    problem: &ProblemF64,
    px: &DistF64,
    s: f64,
    n_list: &[usize],
    method: &str,
    trials: u64,
    seed: u64,
    units: Units,
    problem_hash: String,
) -> Result<SimulationReport, CliError> {
    let per_n_method = match method {
        "exact" => PerNMethod::Exact,
        "monte-carlo" | "mc" => PerNMethod::MonteCarlo { trials, seed },
        other => {
            return Err(CliError::validation(format!(
                "--method '{other}' is not 'exact' or 'monte-carlo'"
            )))
        }
    };
    let estimate = exponent_estimate(problem, px, s, n_list, per_n_method)?;
    let entries: Vec<SimulationEntry> = estimate
        .per_n
        .iter()
        .map(|sample| entry_from_sample(sample, units))
        .collect();
    let is_mc = matches!(per_n_method, PerNMethod::MonteCarlo { .. });
    Ok(SimulationReport {
        problem_hash,
        units,
        mode: "llrt".into(),
        s: Some(s),
        alpha: None,
        method: method_label(if is_mc {
            ErrorMethod::MonteCarlo
        } else {
            ErrorMethod::Exact
        })
        .into(),
        trials: is_mc.then_some(trials),
        seed: is_mc.then_some(seed),
        entries,
        estimate: Some(estimate_json(&estimate, units)),
    })
}

fn simulate_np(
    problem: &ProblemF64,
    px: &DistF64,
    alpha: f64,
    n_list: &[usize],
    units: Units,
    problem_hash: String,
) -> Result<SimulationReport, CliError> {
    let mut entries = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let comp = TypeComposition::quantize(px, n)?;
        let (threshold, pair) = np_threshold_search(problem, &comp, alpha)?;
        // At a fixed type-I budget the type-II error decays at the
        // unconstrained divergence rate.
        let stein = jcd_core::tilt::divergence_w_v(problem, &comp.type_distribution())?;
        entries.push(SimulationEntry {
            n,
            comp: comp.counts().to_vec(),
            threshold: units.scale(threshold),
            eps0: pair.eps0,
            eps1: pair.eps1,
            ci_halfwidth: 0.0,
            theory_e0: 0.0,
            theory_e1: units.scale(stein),
        });
    }
    Ok(SimulationReport {
        problem_hash,
        units,
        mode: "np".into(),
        s: None,
        alpha: Some(alpha),
        method: "exact".into(),
        trials: None,
        seed: None,
        entries,
        estimate: None,
    })
}
