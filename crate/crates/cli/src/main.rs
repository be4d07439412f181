//! `ptspin` — command-line front end for the dissipative collective-spin
//! library.
//!
//! Six subcommands cover the standard workflows: trajectory integration
//! (`evolve`), phase classification over a parameter grid (`phase-diagram`),
//! finite-size Liouvillian gaps against their mean-field limits (`gap-sweep`),
//! symmetry verification (`symmetry-check`), fixed-point linearization
//! (`stability-report`), and the two-level gain–loss primer (`pt-demo`).
//!
//! Exit codes: 0 on success, 1 on numerical failure, 2 on usage errors.
//! Identical configuration (including `--seed`) produces byte-identical
//! output.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ptspin::liouville;
use ptspin::meanfield::{self, MeanFieldModel};
use ptspin::rk::Tolerances;
use ptspin::spinops::{self, SpinBasis, SpinModel};
use ptspin::stability::{
    self, CepFlag, ClassifyConfig, FixedPoint, JacobianMethod, PhaseLabel, PtRegime,
};

use config::Cfg;
use output::{render, write_out, Cell, Format, Table};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config, or parameter combinations → exit 2.
    Usage(String),
    /// The requested computation failed → exit 1.
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => write!(f, "{m}"),
        }
    }
}

impl From<ptspin::Error> for CliError {
    fn from(e: ptspin::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Ddm,
    Lmg,
    Waveguide,
    Lattice,
}

impl ModelArg {
    fn as_str(&self) -> &'static str {
        match self {
            ModelArg::Ddm => "ddm",
            ModelArg::Lmg => "lmg",
            ModelArg::Waveguide => "waveguide",
            ModelArg::Lattice => "lattice",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ptspin", version, about = "Dissipative collective-spin models: \
Lindbladian spectra, mean-field flows, and PT-symmetry diagnostics")]
struct Cli {
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads for parameter sweeps (default: 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// RNG seed for commands that sample random states.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON config file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate a mean-field trajectory, or (with --spin) the full
    /// finite-size master equation from a spin-coherent +x state.
    Evolve(EvolveArgs),
    /// Classify the mean-field phase over a dissipation (and optionally
    /// omega) grid.
    PhaseDiagram(PhaseDiagramArgs),
    /// Finite-size Liouvillian gaps against the mean-field prediction.
    GapSweep(GapSweepArgs),
    /// Verify n-PT (mean-field) and L-PT (Lindbladian) symmetry.
    SymmetryCheck(SymmetryCheckArgs),
    /// Fixed points with linearization, classification, and CEP metrics.
    StabilityReport(StabilityReportArgs),
    /// The 2x2 balanced gain-loss Hamiltonian across its exceptional point.
    PtDemo(PtDemoArgs),
}

#[derive(Args, Debug)]
struct ModelParams {
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Coherent drive strength.
    #[arg(long)]
    g: Option<f64>,
    /// Nonlinearity / detuning parameter (ddm, waveguide, lattice).
    #[arg(long)]
    omega: Option<f64>,
    /// Dissipation rate (ddm, lmg, lattice); for the waveguide model this is
    /// the rate usually called gamma.
    #[arg(long)]
    kappa: Option<f64>,
    /// Lattice coordination number.
    #[arg(long)]
    d: Option<u64>,
}

#[derive(Args, Debug)]
struct EvolveArgs {
    #[command(flatten)]
    params: ModelParams,
    /// Spin quantum number S: switches to finite-size master-equation
    /// evolution (ddm, lmg, waveguide only).
    #[arg(long)]
    spin: Option<u64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Sampling interval.
    #[arg(long)]
    stride: Option<f64>,
    /// Mean-field initial state "x,y,z" (spin models) or "rA,rB,dtheta"
    /// (lattice); must satisfy the unit-norm constraint.
    #[arg(long)]
    initial: Option<String>,
}

#[derive(Args, Debug)]
struct PhaseDiagramArgs {
    #[command(flatten)]
    params: ModelParams,
    #[arg(long)]
    kappa_min: Option<f64>,
    #[arg(long)]
    kappa_max: Option<f64>,
    #[arg(long)]
    kappa_steps: Option<u64>,
    /// Sweep omega as well (otherwise it stays at --omega).
    #[arg(long)]
    omega_min: Option<f64>,
    #[arg(long)]
    omega_max: Option<f64>,
    #[arg(long)]
    omega_steps: Option<u64>,
}

#[derive(Args, Debug)]
struct GapSweepArgs {
    #[command(flatten)]
    params: ModelParams,
    /// Comma-separated spin quantum numbers, e.g. "5,10,20".
    #[arg(long)]
    spins: Option<String>,
    #[arg(long)]
    kappa_min: Option<f64>,
    #[arg(long)]
    kappa_max: Option<f64>,
    #[arg(long)]
    kappa_steps: Option<u64>,
}

#[derive(Args, Debug)]
struct SymmetryCheckArgs {
    #[command(flatten)]
    params: ModelParams,
    /// Spin quantum number for the Lindbladian-level check.
    #[arg(long)]
    spin: Option<u64>,
    /// Random mean-field states to probe.
    #[arg(long)]
    n_states: Option<u64>,
    /// Add a symmetry-violating term of this strength (negative control;
    /// ddm only).
    #[arg(long)]
    break_symmetry: Option<f64>,
}

#[derive(Args, Debug)]
struct StabilityReportArgs {
    #[command(flatten)]
    params: ModelParams,
}

#[derive(Args, Debug)]
struct PtDemoArgs {
    #[arg(long)]
    g: Option<f64>,
    /// Single gain-loss rate; alternatively sweep with --gamma-min/max/steps.
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    gamma_min: Option<f64>,
    #[arg(long)]
    gamma_max: Option<f64>,
    #[arg(long)]
    gamma_steps: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Numerical(_) => ExitCode::from(1),
                CliError::Usage(_) => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = Cfg::load(cli.config.as_deref())?;
    let format = match cfg.string(
        "format",
        cli.format.map(|f| match f {
            FormatArg::Csv => "csv",
            FormatArg::Json => "json",
        }),
        Some("csv"),
    )? {
        s if s == "csv" => Format::Csv,
        s if s == "json" => Format::Json,
        s => return Err(CliError::Usage(format!("unknown format `{s}`"))),
    };
    let threads = cfg.u64("threads", cli.threads.map(|t| t as u64), Some(1))? as usize;
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    // Ignore the error if a pool already exists (e.g. under a test harness).
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();

    let table = match &cli.command {
        Command::Evolve(args) => cmd_evolve(args, &mut cfg)?,
        Command::PhaseDiagram(args) => cmd_phase_diagram(args, &mut cfg)?,
        Command::GapSweep(args) => cmd_gap_sweep(args, &mut cfg)?,
        Command::SymmetryCheck(args) => cmd_symmetry_check(args, cli.seed, &mut cfg)?,
        Command::StabilityReport(args) => cmd_stability_report(args, &mut cfg)?,
        Command::PtDemo(args) => cmd_pt_demo(args, &mut cfg)?,
    };

    let text = render(&table, format, &cfg.hash());
    write_out(&text, cli.output.as_deref())
}

// ---------------------------------------------------------------------------
// Parameter resolution
// ---------------------------------------------------------------------------

struct Resolved {
    model: MeanFieldModel,
    g: f64,
    omega: f64,
    kappa: f64,
    d: u64,
}

fn resolve_model(p: &ModelParams, cfg: &mut Cfg) -> Result<Resolved, CliError> {
    let name = cfg.string("model", p.model.map(|m| m.as_str()), None)?;
    let g = cfg.f64("g", p.g, Some(2.0))?;
    let omega = cfg.f64("omega", p.omega, Some(1.0))?;
    let kappa = cfg.f64("kappa", p.kappa, Some(1.0))?;
    let d = cfg.u64("d", p.d, Some(1))?;
    let model = build_mf(&name, g, omega, kappa, d)?;
    Ok(Resolved { model, g, omega, kappa, d })
}

fn build_mf(name: &str, g: f64, omega: f64, kappa: f64, d: u64) -> Result<MeanFieldModel, CliError> {
    match name {
        "ddm" => Ok(MeanFieldModel::Ddm { g, omega, kappa }),
        "lmg" => Ok(MeanFieldModel::Lmg { g, kappa }),
        "waveguide" => Ok(MeanFieldModel::Waveguide { g, omega, gamma: kappa }),
        "lattice" => {
            if d == 0 {
                return Err(CliError::Usage("--d must be at least 1".into()));
            }
            Ok(MeanFieldModel::Lattice { g, omega, kappa, d: d as u32 })
        }
        other => Err(CliError::Usage(format!("unknown model `{other}`"))),
    }
}

fn build_spin_model(name: &str, basis: SpinBasis, r: &Resolved) -> Result<SpinModel, CliError> {
    let m = match name {
        "ddm" => spinops::ddm_model(basis, r.g, r.omega, r.kappa)?,
        "lmg" => spinops::lmg_model(basis, r.g, r.kappa)?,
        "waveguide" => spinops::waveguide_model(basis, r.g, r.omega, r.kappa)?,
        other => {
            return Err(CliError::Usage(format!(
                "model `{other}` has no finite-size Lindbladian"
            )))
        }
    };
    Ok(m)
}

fn basis_from_spin(s: u64) -> Result<SpinBasis, CliError> {
    let s32 = u32::try_from(s).map_err(|_| CliError::Usage(format!("spin {s} is too large")))?;
    SpinBasis::from_spin(s32).map_err(|e| CliError::Usage(e.to_string()))
}

fn grid(min: f64, max: f64, steps: u64) -> Result<Vec<f64>, CliError> {
    if steps < 1 {
        return Err(CliError::Usage("sweep needs at least 1 step".into()));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    if !(max > min) {
        return Err(CliError::Usage(format!("sweep range [{min}, {max}] is empty")));
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps).map(|k| min + h * k as f64).collect())
}

fn c2(v: Complex64) -> (Cell, Cell) {
    (Cell::F(v.re), Cell::F(v.im))
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

fn cmd_evolve(args: &EvolveArgs, cfg: &mut Cfg) -> Result<Table, CliError> {
    let r = resolve_model(&args.params, cfg)?;
    let t_end = cfg.f64("t_end", args.t_end, Some(20.0))?;
    let stride = cfg.f64("stride", args.stride, Some(0.1))?;
    if !(t_end > 0.0) || !(stride > 0.0) {
        return Err(CliError::Usage("--t-end and --stride must be positive".into()));
    }

    if let Some(s) = args.spin {
        cfg.note("spin", serde_json::Value::from(s));
        return evolve_finite(&r, s, t_end, stride);
    }

    let q0 = initial_state(&r.model, args.initial.as_deref(), cfg)?;
    let traj = meanfield::integrate(&r.model, &q0, t_end, &Tolerances::default(), stride)?;

    let columns = if r.model.is_polar() {
        vec!["t", "r_a", "r_b", "dtheta", "norm_residual"]
    } else {
        vec!["t", "m_x", "m_y", "m_z", "norm_residual"]
    };
    let mut table = Table::new(columns);
    for (t, q) in traj.times.iter().zip(traj.states.iter()) {
        table.push(vec![
            Cell::F(*t),
            Cell::F(q[0]),
            Cell::F(q[1]),
            Cell::F(q[2]),
            Cell::F((r.model.conserved(q) - 1.0).abs()),
        ]);
    }
    Ok(table)
}

fn initial_state(
    model: &MeanFieldModel,
    flag: Option<&str>,
    cfg: &mut Cfg,
) -> Result<[f64; 3], CliError> {
    let default = if model.is_polar() { "0.8,0.6,0.5" } else { "0.6,0.0,0.8" };
    let text = cfg.string("initial", flag, Some(default))?;
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("cannot parse initial state `{text}`")))?;
    let q: [f64; 3] = parts
        .try_into()
        .map_err(|_| CliError::Usage("initial state needs exactly 3 components".into()))?;
    if (model.conserved(&q) - 1.0).abs() > 1e-9 {
        return Err(CliError::Usage(format!(
            "initial state violates {} = 1",
            model.conserved_name()
        )));
    }
    Ok(q)
}

fn evolve_finite(r: &Resolved, spin: u64, t_end: f64, stride: f64) -> Result<Table, CliError> {
    let basis = basis_from_spin(spin)?;
    let model = build_spin_model(r.model.name(), basis, r)?;
    let rho0 = liouville::coherent_x_density(basis);
    let traj = liouville::evolve_density(&model, &rho0, t_end, &Tolerances::default(), stride)?;
    let ops = spinops::build_spin_operators(basis);

    let mut table =
        Table::new(vec!["t", "mx_expect", "my_expect", "mz_expect", "trace_residual"]);
    for (t, rho) in traj.times.iter().zip(traj.states.iter()) {
        let ex = liouville::expectation(rho, &ops.m_x)?.re;
        let ey = liouville::expectation(rho, &ops.m_y)?.re;
        let ez = liouville::expectation(rho, &ops.m_z)?.re;
        let tr = ptspin::matrix::trace(rho);
        table.push(vec![
            Cell::F(*t),
            Cell::F(ex),
            Cell::F(ey),
            Cell::F(ez),
            Cell::F((tr - ptspin::matrix::ONE).norm()),
        ]);
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// phase-diagram
// ---------------------------------------------------------------------------

fn cmd_phase_diagram(args: &PhaseDiagramArgs, cfg: &mut Cfg) -> Result<Table, CliError> {
    let r = resolve_model(&args.params, cfg)?;
    let name = r.model.name().to_string();
    let kmin = cfg.f64("kappa_min", args.kappa_min, Some(0.5))?;
    let kmax = cfg.f64("kappa_max", args.kappa_max, Some(3.0))?;
    let ksteps = cfg.u64("kappa_steps", args.kappa_steps, Some(26))?;
    let kappas = grid(kmin, kmax, ksteps)?;

    let omegas = if args.omega_min.is_some() || args.omega_max.is_some() {
        let omin = cfg.f64("omega_min", args.omega_min, None)?;
        let omax = cfg.f64("omega_max", args.omega_max, None)?;
        let osteps = cfg.u64("omega_steps", args.omega_steps, Some(11))?;
        grid(omin, omax, osteps)?
    } else {
        vec![r.omega]
    };

    let points: Vec<(f64, f64)> = omegas
        .iter()
        .flat_map(|&w| kappas.iter().map(move |&k| (w, k)))
        .collect();

    let results: Vec<Result<(PhaseLabel, usize, usize, f64), CliError>> = points
        .par_iter()
        .map(|&(w, k)| {
            let model = build_mf(&name, r.g, w, k, r.d)?;
            let point = stability::phase_classify(&model)?;
            let n_sym = point.fixed_points.iter().filter(|p| p.pt_symmetric).count();
            let n_broken = point.fixed_points.len() - n_sym;
            let metric = max_cep_metric(&model, &point.fixed_points);
            Ok((point.phase, n_sym, n_broken, metric))
        })
        .collect();

    let mut table = Table::new(vec![
        "omega",
        "kappa",
        "phase",
        "n_fp_symmetric",
        "n_fp_broken",
        "cep_metric",
    ]);
    for ((w, k), res) in points.iter().zip(results) {
        let (phase, n_sym, n_broken, metric) = res?;
        table.push(vec![
            Cell::F(*w),
            Cell::F(*k),
            Cell::S(phase.as_str().into()),
            Cell::U(n_sym as u64),
            Cell::U(n_broken as u64),
            Cell::F(metric),
        ]);
    }
    Ok(table)
}

/// Largest eigenvector-coalescence metric over the PT-symmetric fixed
/// points; NaN when none can be linearized.
fn max_cep_metric(model: &MeanFieldModel, points: &[FixedPoint]) -> f64 {
    let cfg = ClassifyConfig::default();
    let mut best = f64::NAN;
    for fp in points.iter().filter(|p| p.pt_symmetric) {
        if let Ok(rep) = stability::stability_report(model, fp, JacobianMethod::FiniteDifference, &cfg)
        {
            if best.is_nan() || rep.cep.metric > best {
                best = rep.cep.metric;
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// gap-sweep
// ---------------------------------------------------------------------------

fn cmd_gap_sweep(args: &GapSweepArgs, cfg: &mut Cfg) -> Result<Table, CliError> {
    let r = resolve_model(&args.params, cfg)?;
    let name = r.model.name().to_string();
    if name != "ddm" && name != "lmg" {
        return Err(CliError::Usage(format!("gap-sweep supports ddm and lmg, not `{name}`")));
    }
    let spins_text = cfg.string("spins", args.spins.as_deref(), Some("5,10,20"))?;
    let spins: Vec<u64> = spins_text
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("cannot parse spin list `{spins_text}`")))?;
    let kmin = cfg.f64("kappa_min", args.kappa_min, Some(1.5))?;
    let kmax = cfg.f64("kappa_max", args.kappa_max, Some(3.0))?;
    let ksteps = cfg.u64("kappa_steps", args.kappa_steps, Some(4))?;
    let kappas = grid(kmin, kmax, ksteps)?;

    let points: Vec<(u64, f64)> = spins
        .iter()
        .flat_map(|&s| kappas.iter().map(move |&k| (s, k)))
        .collect();

    let results: Vec<Result<(f64, f64), CliError>> = points
        .par_iter()
        .map(|&(s, k)| {
            let basis = basis_from_spin(s)?;
            let rs = Resolved { model: r.model, g: r.g, omega: r.omega, kappa: k, d: r.d };
            let model = build_spin_model(&name, basis, &rs)?;
            let sup = liouville::build_liouvillian(&model)?;
            let summary = liouville::spectrum(&sup, liouville::default_lambda_tol(&sup))?;
            let mf = build_mf(&name, r.g, r.omega, k, r.d)?;
            Ok((summary.gap, meanfield_gap(&mf)?))
        })
        .collect();

    let mut table = Table::new(vec!["spin", "kappa", "gap_finite", "gap_meanfield"]);
    for ((s, k), res) in points.iter().zip(results) {
        let (gap_finite, gap_mf) = res?;
        table.push(vec![Cell::U(*s), Cell::F(*k), Cell::F(gap_finite), Cell::F(gap_mf)]);
    }
    Ok(table)
}

/// The mean-field prediction for the Liouvillian gap: zero while any
/// PT-symmetric fixed point survives (the time-crystal phases), otherwise
/// the slowest decay rate of the stable PT-broken fixed point.
fn meanfield_gap(model: &MeanFieldModel) -> Result<f64, CliError> {
    let point = stability::phase_classify(model)?;
    if point.phase != PhaseLabel::Fptb {
        return Ok(0.0);
    }
    let cfg = ClassifyConfig::default();
    let mut slowest: Option<f64> = None;
    for fp in point.fixed_points.iter().filter(|p| !p.pt_symmetric) {
        let rep = stability::stability_report(model, fp, JacobianMethod::FiniteDifference, &cfg)?;
        if rep.classification == stability::Classification::Stable {
            let gap = rep.eigenvalues.iter().map(|l| l.re.abs()).fold(f64::INFINITY, f64::min);
            slowest = Some(slowest.map_or(gap, |prev: f64| prev.min(gap)));
        }
    }
    slowest.ok_or_else(|| {
        CliError::Numerical("no stable PT-broken fixed point in the FPTB phase".into())
    })
}

// ---------------------------------------------------------------------------
// symmetry-check
// ---------------------------------------------------------------------------

fn cmd_symmetry_check(
    args: &SymmetryCheckArgs,
    seed: Option<u64>,
    cfg: &mut Cfg,
) -> Result<Table, CliError> {
    let r = resolve_model(&args.params, cfg)?;
    let name = r.model.name().to_string();
    let spin = cfg.u64("spin", args.spin, Some(10))?;
    let n_states = cfg.u64("n_states", args.n_states, Some(200))?;
    let seed = cfg.u64("seed", seed, Some(7))?;
    let epsilon = match args.break_symmetry {
        Some(e) => Some(cfg.f64("break_symmetry", Some(e), None)?),
        None => None,
    };
    if epsilon.is_some() && name != "ddm" {
        return Err(CliError::Usage("--break-symmetry is only defined for the ddm model".into()));
    }

    let mf_model = match epsilon {
        Some(e) => MeanFieldModel::DdmBroken { g: r.g, omega: r.omega, kappa: r.kappa, epsilon: e },
        None => r.model,
    };

    // Mean-field n-PT over random unit states (uniform on the sphere /
    // constraint surface).
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut npt_max: f64 = 0.0;
    for _ in 0..n_states {
        let q = if mf_model.is_polar() {
            let phi: f64 = rng.gen_range(0.05..std::f64::consts::FRAC_PI_2 - 0.05);
            let dtheta: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            [phi.cos(), phi.sin(), dtheta]
        } else {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let rho = (1.0 - z * z).sqrt();
            [rho * phi.cos(), rho * phi.sin(), z]
        };
        npt_max = npt_max.max(meanfield::npt_residual(&mf_model, &q)?);
    }

    // Lindbladian-level L-PT at finite S.
    let basis = basis_from_spin(spin)?;
    let mut model = build_spin_model(&name, basis, &r)?;
    if let Some(e) = epsilon {
        let ops = spinops::build_spin_operators(basis);
        let h = model.hamiltonian + ops.m_z.mapv(|z| z * (e * basis.spin()));
        model = SpinModel::new(basis, h, model.jumps, model.label)?;
    }
    let lpt = spinops::check_lpt_symmetry(&model, 1e-10)?;

    let mut table = Table::new(vec![
        "model",
        "spin",
        "epsilon",
        "lpt_residual",
        "lpt_symmetric",
        "npt_max_residual",
        "npt_symmetric",
    ]);
    table.push(vec![
        Cell::S(mf_model.name().into()),
        Cell::U(spin),
        Cell::F(epsilon.unwrap_or(0.0)),
        Cell::F(lpt.residual),
        Cell::S(lpt.symmetric.to_string()),
        Cell::F(npt_max),
        Cell::S((npt_max < 1e-12).to_string()),
    ]);
    Ok(table)
}

// ---------------------------------------------------------------------------
// stability-report
// ---------------------------------------------------------------------------

fn cmd_stability_report(args: &StabilityReportArgs, cfg: &mut Cfg) -> Result<Table, CliError> {
    let r = resolve_model(&args.params, cfg)?;
    let point = stability::phase_classify(&r.model)?;
    let ccfg = ClassifyConfig::default();
    let method = JacobianMethod::FiniteDifference;

    let coord_cols = if r.model.is_polar() {
        ["r_a", "r_b", "dtheta"]
    } else {
        ["m_x", "m_y", "m_z"]
    };
    let mut table = Table::new(vec![
        "phase",
        coord_cols[0],
        coord_cols[1],
        coord_cols[2],
        "residual",
        "pt_symmetric",
        "classification",
        "lambda1_re",
        "lambda1_im",
        "lambda2_re",
        "lambda2_im",
        "cep_metric",
        "cep_flag",
    ]);
    for fp in &point.fixed_points {
        let rep = stability::stability_report(&r.model, fp, method, &ccfg)?;
        let (l1r, l1i) = c2(rep.eigenvalues[0]);
        let (l2r, l2i) = c2(rep.eigenvalues[1]);
        let flag = match rep.cep.flag {
            CepFlag::Cep => "cep",
            CepFlag::NoCepDegenerate => "no_cep_degenerate",
            CepFlag::None => "none",
        };
        table.push(vec![
            Cell::S(point.phase.as_str().into()),
            Cell::F(fp.coords[0]),
            Cell::F(fp.coords[1]),
            Cell::F(fp.coords[2]),
            Cell::F(fp.residual),
            Cell::S(fp.pt_symmetric.to_string()),
            Cell::S(rep.classification.as_str().into()),
            l1r,
            l1i,
            l2r,
            l2i,
            Cell::F(rep.cep.metric),
            Cell::S(flag.into()),
        ]);
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// pt-demo
// ---------------------------------------------------------------------------

fn cmd_pt_demo(args: &PtDemoArgs, cfg: &mut Cfg) -> Result<Table, CliError> {
    let g = cfg.f64("g", args.g, Some(1.0))?;
    let gammas = if args.gamma_min.is_some() || args.gamma_max.is_some() {
        let gmin = cfg.f64("gamma_min", args.gamma_min, None)?;
        let gmax = cfg.f64("gamma_max", args.gamma_max, None)?;
        let gsteps = cfg.u64("gamma_steps", args.gamma_steps, Some(21))?;
        grid(gmin, gmax, gsteps)?
    } else {
        vec![cfg.f64("gamma", args.gamma, Some(0.5))?]
    };

    let mut table = Table::new(vec![
        "g",
        "gamma",
        "lambda1_re",
        "lambda1_im",
        "lambda2_re",
        "lambda2_im",
        "regime",
    ]);
    for &gamma in &gammas {
        let demo = stability::nonhermitian_pt_demo(g, gamma);
        let regime = match demo.regime {
            PtRegime::Unbroken => "unbroken",
            PtRegime::Broken => "broken",
            PtRegime::ExceptionalPoint => "exceptional_point",
        };
        let (l1r, l1i) = c2(demo.eigenvalues.0);
        let (l2r, l2i) = c2(demo.eigenvalues.1);
        table.push(vec![
            Cell::F(g),
            Cell::F(gamma),
            l1r,
            l1i,
            l2r,
            l2i,
            Cell::S(regime.into()),
        ]);
    }
    Ok(table)
}
