//! `waveguide`: command-line front end producing CSV/JSON datasets for
//! every observable of the square-well solvers - classical regime maps and
//! trajectories, transmission curves, bound/edge spectra, spectral curves
//! with resonance joins, and normalized spinor profiles.
//!
//! Exit codes: 0 success, 2 flag validation, 3 physical-regime error,
//! 4 range error.

mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use table::{Cell, Envelope, OutputFormat, Table};
use waveguide_core::*;

#[derive(Debug)]
enum CliError {
    Flags(String),
    Regime(String),
    Range(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Flags(_) => 2,
            CliError::Regime(_) => 3,
            CliError::Range(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Flags(m) | CliError::Regime(m) | CliError::Range(m) => m,
        }
    }
}

fn classical_err(e: ClassicalError) -> CliError {
    match e {
        ClassicalError::Forbidden(_)
        | ClassicalError::BoundaryCase(_)
        | ClassicalError::ZeroVelocity
        | ClassicalError::NoRefraction(_) => CliError::Regime(e.to_string()),
        _ => CliError::Flags(e.to_string()),
    }
}

fn scatter_err(e: ScatterError) -> CliError {
    match e {
        ScatterError::NoPropagatingOuter { .. } | ScatterError::SingularMatching { .. } => {
            CliError::Regime(e.to_string())
        }
        _ => CliError::Flags(e.to_string()),
    }
}

fn bound_err(e: BoundError) -> CliError {
    match e {
        BoundError::InvalidGrid(_) | BoundError::EmptyGrid => CliError::Flags(e.to_string()),
        _ => CliError::Regime(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum KindArg {
    Electric,
    Magnetic,
}

impl From<KindArg> for WellKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Electric => WellKind::Electric,
            KindArg::Magnetic => WellKind::Magnetic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum PlaneArg {
    #[value(name = "E-k")]
    #[serde(rename = "E-k")]
    EK,
    #[value(name = "E-v0")]
    #[serde(rename = "E-v0")]
    EV0,
    #[value(name = "E-a0")]
    #[serde(rename = "E-a0")]
    EA0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum SweepArg {
    #[value(name = "alpha")]
    #[serde(rename = "alpha")]
    Alpha,
    #[value(name = "E")]
    #[serde(rename = "E")]
    Energy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum CurvesArg {
    K,
    Strength,
}

/// Shared well flags: the strength option must match the well kind.
#[derive(Debug, Args, Serialize)]
struct WellArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Electric well depth (positive = well, negative = barrier).
    #[arg(long, allow_negative_numbers = true)]
    v0: Option<f64>,
    /// Magnetic well strength (positive = well, negative = barrier).
    #[arg(long, allow_negative_numbers = true)]
    a0: Option<f64>,
    /// Half-width of the well; region boundaries sit at x = +-half-width.
    #[arg(long, default_value_t = 1.0)]
    half_width: f64,
}

impl WellArgs {
    fn config(&self) -> Result<WellConfig, CliError> {
        let strength = match (self.kind, self.v0, self.a0) {
            (KindArg::Electric, Some(v0), None) => v0,
            (KindArg::Magnetic, None, Some(a0)) => a0,
            (KindArg::Electric, _, Some(_)) => {
                return Err(CliError::Flags("--a0 is a magnetic flag; electric wells take --v0".into()))
            }
            (KindArg::Magnetic, Some(_), _) => {
                return Err(CliError::Flags("--v0 is an electric flag; magnetic wells take --a0".into()))
            }
            (KindArg::Electric, None, None) => {
                return Err(CliError::Flags("electric wells need --v0".into()))
            }
            (KindArg::Magnetic, None, None) => {
                return Err(CliError::Flags("magnetic wells need --a0".into()))
            }
        };
        WellConfig::new(self.kind.into(), strength, self.half_width)
            .map_err(|e| CliError::Flags(e.to_string()))
    }
}

#[derive(Debug, Args, Serialize)]
struct ClassicalRegionsArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Fixed well depth when the plane is E-k (electric wells).
    #[arg(long, allow_negative_numbers = true)]
    v0: Option<f64>,
    /// Fixed well strength when the plane is E-k (magnetic wells).
    #[arg(long, allow_negative_numbers = true)]
    a0: Option<f64>,
    /// Fixed y-momentum when the plane is E-v0 or E-a0.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long, value_enum)]
    plane: PlaneArg,
    #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
    e_min: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    e_max: f64,
    #[arg(long, default_value_t = 201)]
    e_steps: usize,
    #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
    param_min: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    param_max: f64,
    #[arg(long, default_value_t = 201)]
    param_steps: usize,
}

#[derive(Debug, Args, Serialize)]
struct TrajectoryArgs {
    #[command(flatten)]
    well: WellArgs,
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    #[arg(long = "E", allow_negative_numbers = true)]
    energy: f64,
    /// Launch point; defaults to the well center for bound motion and to
    /// x = -2 half-widths otherwise.
    #[arg(long, allow_negative_numbers = true)]
    start_x: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    start_y: f64,
    #[arg(long, default_value_t = 30.0)]
    max_length: f64,
}

#[derive(Debug, Args, Serialize)]
struct TransmissionArgs {
    #[command(flatten)]
    well: WellArgs,
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    #[arg(long, value_enum)]
    sweep: SweepArg,
    #[arg(long, default_value_t = 0.02)]
    alpha_min: f64,
    #[arg(long, default_value_t = 1.55)]
    alpha_max: f64,
    #[arg(long, allow_negative_numbers = true)]
    e_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    e_max: Option<f64>,
    #[arg(long, default_value_t = 400)]
    steps: usize,
}

#[derive(Debug, Args, Serialize)]
struct BoundSpectrumArgs {
    #[command(flatten)]
    well: WellArgs,
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    #[arg(long, allow_negative_numbers = true)]
    e_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    e_max: Option<f64>,
    /// Determinant scan density per admissible sub-window.
    #[arg(long, default_value_t = 2000)]
    grid_points: usize,
    /// Emit spectral branches over a parameter sweep instead of one slice.
    #[arg(long, value_enum)]
    curves: Option<CurvesArg>,
    #[arg(long, allow_negative_numbers = true)]
    sweep_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    sweep_max: Option<f64>,
    #[arg(long)]
    sweep_steps: Option<usize>,
    /// Add the resonance loci E_n(k) to a k sweep.
    #[arg(long, default_value_t = false)]
    join_resonances: bool,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
}

#[derive(Debug, Args, Serialize)]
struct WavefunctionArgs {
    #[command(flatten)]
    well: WellArgs,
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    /// Bound level index, counted from the lowest energy.
    #[arg(long)]
    level: usize,
    #[arg(long, allow_negative_numbers = true)]
    x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x_max: Option<f64>,
    #[arg(long, default_value_t = 1201)]
    points: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classical regime of every point of a parameter plane.
    ClassicalRegions(ClassicalRegionsArgs),
    /// Event-driven ray trajectory through the three regions.
    Trajectory(TrajectoryArgs),
    /// Transmission/reflection coefficients along an angle or energy sweep.
    Transmission(TransmissionArgs),
    /// Bound eigenvalues, spectral curves and resonance joins.
    BoundSpectrum(BoundSpectrumArgs),
    /// Normalized spinor profile of one bound level.
    Wavefunction(WavefunctionArgs),
}

#[derive(Debug, Parser)]
#[command(name = "waveguide", version, about = "Square electric and magnetic waveguide datasets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file; a relative path lands under $WAVEGUIDE_OUT_DIR if set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Worker threads for sweep fan-out; output is identical for any count.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

fn linspace(lo: f64, hi: f64, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    if n < 2 {
        return Err(CliError::Flags(format!("{what}: need at least 2 grid points, got {n}")));
    }
    if !(lo < hi) {
        return Err(CliError::Flags(format!("{what}: empty range [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| lo + step * i as f64).collect())
}

fn regime_label(r: Result<ClassicalRegime, ClassicalError>) -> &'static str {
    match r {
        Ok(regime) => regime.as_str(),
        Err(ClassicalError::BoundaryCase(_)) => "boundary",
        Err(_) => "invalid",
    }
}

fn run_classical_regions(args: &ClassicalRegionsArgs) -> Result<(Table, Option<serde_json::Value>), CliError> {
    let e_grid = linspace(args.e_min, args.e_max, args.e_steps, "energy grid")?;
    let p_grid = linspace(args.param_min, args.param_max, args.param_steps, "parameter grid")?;
    let kind: WellKind = args.kind.into();

    let (fixed, param_name) = match (args.plane, args.kind) {
        (PlaneArg::EK, KindArg::Electric) => {
            let v0 = args.v0.ok_or_else(|| CliError::Flags("plane E-k needs --v0".into()))?;
            (FixedParam::Strength(v0), "k")
        }
        (PlaneArg::EK, KindArg::Magnetic) => {
            let a0 = args.a0.ok_or_else(|| CliError::Flags("plane E-k needs --a0".into()))?;
            (FixedParam::Strength(a0), "k")
        }
        (PlaneArg::EV0, KindArg::Electric) | (PlaneArg::EA0, KindArg::Magnetic) => {
            let k = args.k.ok_or_else(|| CliError::Flags("strength planes need --k".into()))?;
            (FixedParam::K(k), if args.plane == PlaneArg::EV0 { "v0" } else { "a0" })
        }
        (PlaneArg::EV0, KindArg::Magnetic) => {
            return Err(CliError::Flags("plane E-v0 applies to electric wells".into()))
        }
        (PlaneArg::EA0, KindArg::Electric) => {
            return Err(CliError::Flags("plane E-a0 applies to magnetic wells".into()))
        }
    };

    let mut tbl = Table::new(vec!["E", param_name, "regime"]);
    for &e in &e_grid {
        for &p in &p_grid {
            let (k, strength) = match fixed {
                FixedParam::Strength(s) => (p, s),
                FixedParam::K(k) => (k, p),
            };
            let qn = QuantumNumbers::new(e, k);
            let regime = match kind {
                WellKind::Electric => classify_electric(qn, strength),
                WellKind::Magnetic => classify_magnetic(qn, strength),
            };
            tbl.push(vec![e.into(), p.into(), regime_label(regime).into()]);
        }
    }
    Ok((tbl, None))
}

fn forbidden_message(well: &WellConfig) -> String {
    match well.kind {
        WellKind::Electric => {
            "classically forbidden: |E| < |k| and |E + v0| < |k| (no real momentum in any region)"
        }
        WellKind::Magnetic => {
            "classically forbidden: |E| < |k| and |E| < |k + a0| (no real momentum in any region)"
        }
    }
    .to_string()
}

fn run_trajectory(args: &TrajectoryArgs) -> Result<(Table, Option<serde_json::Value>), CliError> {
    let well = args.well.config()?;
    let qn = QuantumNumbers::new(args.energy, args.k);
    let regime = classify(qn, &well).map_err(classical_err)?;
    if regime == ClassicalRegime::Forbidden {
        return Err(CliError::Regime(forbidden_message(&well)));
    }
    let start_x = args.start_x.unwrap_or(if regime.is_bound() {
        0.0
    } else {
        -2.0 * well.half_width
    });
    let path = trace_ray(qn, &well, (start_x, args.start_y), args.max_length)
        .map_err(classical_err)?;

    let mut tbl = Table::new(vec!["x", "y", "region"]);
    for (i, v) in path.vertices.iter().enumerate() {
        let seg = i.min(path.segment_regions.len() - 1);
        tbl.push(vec![v.0.into(), v.1.into(), path.segment_regions[seg].as_str().into()]);
    }
    let notes = serde_json::json!({
        "terminated": match path.terminated {
            Termination::ExitedRight => "exited_right",
            Termination::ExitedLeft => "exited_left",
            Termination::TruncatedAtLength => "truncated_at_length",
        },
        "regime": regime.as_str(),
    });
    Ok((tbl, Some(notes)))
}

fn run_transmission(args: &TransmissionArgs) -> Result<(Table, Option<serde_json::Value>), CliError> {
    let well = args.well.config()?;
    match args.sweep {
        SweepArg::Alpha => {
            if !(args.alpha_min > 0.0 && args.alpha_max < std::f64::consts::FRAC_PI_2) {
                return Err(CliError::Flags(
                    "alpha sweep must stay strictly inside (0, pi/2); the endpoints are singular".into(),
                ));
            }
            let grid = linspace(args.alpha_min, args.alpha_max, args.steps, "alpha grid")?;
            let curve = transmission_vs_angle(args.k, &well, &grid).map_err(scatter_err)?;
            let mut tbl =
                Table::new(vec!["alpha", "E", "T", "R", "prob_sum", "classically_allowed"]);
            for s in &curve.samples {
                tbl.push(vec![
                    s.alpha.into(),
                    s.energy.into(),
                    s.transmission().into(),
                    s.reflection().into(),
                    s.probability_check().into(),
                    Cell::Int(s.classically_allowed as i64),
                ]);
            }
            let notes = curve
                .classical_limit
                .map(|a| serde_json::json!({ "classical_limit_alpha": a }));
            Ok((tbl, notes))
        }
        SweepArg::Energy => {
            let lo = args.e_min.unwrap_or(args.k.abs() + 0.02);
            let hi = args.e_max.unwrap_or(args.k.abs() + 10.0);
            let grid = linspace(lo, hi, args.steps, "energy grid")?;
            let mut tbl = Table::new(vec!["E", "T", "R", "prob_sum", "classically_allowed"]);
            for &e in &grid {
                let qn = QuantumNumbers::new(e, args.k);
                let Ok(res) = solve_scattering(qn, &well) else {
                    continue; // below threshold or on a degenerate point
                };
                let allowed = inner_momentum(qn, &well).is_propagating();
                tbl.push(vec![
                    e.into(),
                    res.transmission().into(),
                    res.reflection().into(),
                    res.probability_check().into(),
                    Cell::Int(allowed as i64),
                ]);
            }
            if tbl.rows.is_empty() {
                return Err(CliError::Regime(
                    "no scattering states in the energy range (|E| <= |k| everywhere)".into(),
                ));
            }
            Ok((tbl, None))
        }
    }
}

fn run_bound_spectrum(args: &BoundSpectrumArgs) -> Result<(Table, Option<serde_json::Value>), CliError> {
    if args.join_resonances && args.curves == Some(CurvesArg::Strength) {
        return Err(CliError::Flags(
            "--join-resonances applies to k sweeps (use --curves k)".into(),
        ));
    }
    // parameter sweeps fix the half-width at 1
    if (args.curves.is_some() || args.join_resonances) && args.well.half_width != 1.0 {
        return Err(CliError::Flags("sweep modes run at half-width 1".into()));
    }

    if args.join_resonances {
        let well = args.well.config()?;
        let (lo, hi, steps) = sweep_range(args)?;
        let k_grid = linspace(lo, hi, steps, "k grid")?;
        let data = join_resonance_bound_data(well.kind, well.strength, &k_grid, args.n_max)
            .map_err(bound_err)?;
        let mut tbl = Table::new(vec!["family", "branch", "character", "k", "E"]);
        for c in &data.bound_curves {
            for &(k, e) in &c.samples {
                tbl.push(vec![
                    "bound".into(),
                    Cell::Int(c.branch_id as i64),
                    c.character.as_str().into(),
                    k.into(),
                    e.into(),
                ]);
            }
        }
        for locus in &data.resonances {
            for &(k, e) in &locus.samples {
                tbl.push(vec![
                    "resonance".into(),
                    Cell::Int(locus.n as i64 * i64::from(locus.sign)),
                    "resonance".into(),
                    k.into(),
                    e.into(),
                ]);
            }
        }
        return Ok((tbl, None));
    }

    if let Some(curves) = args.curves {
        let (lo, hi, steps) = sweep_range(args)?;
        let grid = linspace(lo, hi, steps, "sweep grid")?;
        // a k sweep fixes the strength (from --v0/--a0); a strength sweep
        // fixes k and ignores the strength flags entirely
        let (sweep, fixed, param_name) = match curves {
            CurvesArg::K => (SweepParameter::K, args.well.config()?.strength, "k"),
            CurvesArg::Strength => (SweepParameter::Strength, args.k, "strength"),
        };
        let kind: WellKind = args.well.kind.into();
        let curves = spectral_curves(sweep, fixed, &grid, kind).map_err(bound_err)?;
        let mut tbl = Table::new(vec!["branch", "character", param_name, "E"]);
        for c in &curves {
            for &(p, e) in &c.samples {
                tbl.push(vec![
                    Cell::Int(c.branch_id as i64),
                    c.character.as_str().into(),
                    p.into(),
                    e.into(),
                ]);
            }
        }
        return Ok((tbl, None));
    }

    let well = args.well.config()?;
    let band = args.k.abs();
    let window = (args.e_min.unwrap_or(-band), args.e_max.unwrap_or(band));
    let states =
        find_bound_states(args.k, &well, window, args.grid_points).map_err(bound_err)?;
    let mut tbl = Table::new(vec!["level", "E", "character", "exterior_decay"]);
    for (i, st) in states.iter().enumerate() {
        tbl.push(vec![
            Cell::Int(i as i64),
            st.energy.into(),
            st.character.as_str().into(),
            st.exterior_decay.into(),
        ]);
    }
    Ok((tbl, None))
}

fn sweep_range(args: &BoundSpectrumArgs) -> Result<(f64, f64, usize), CliError> {
    match (args.sweep_min, args.sweep_max, args.sweep_steps) {
        (Some(lo), Some(hi), Some(steps)) => Ok((lo, hi, steps)),
        _ => Err(CliError::Flags(
            "sweeps need --sweep-min, --sweep-max and --sweep-steps".into(),
        )),
    }
}

fn run_wavefunction(args: &WavefunctionArgs) -> Result<(Table, Option<serde_json::Value>), CliError> {
    let well = args.well.config()?;
    let band = args.k.abs();
    let states = find_bound_states(args.k, &well, (-band, band), 2000).map_err(bound_err)?;
    let state = states.get(args.level).ok_or_else(|| {
        CliError::Range(format!(
            "level {} out of range: the well holds {} bound states",
            args.level,
            states.len()
        ))
    })?;
    let lo = args.x_min.unwrap_or(-3.0 * well.half_width);
    let hi = args.x_max.unwrap_or(3.0 * well.half_width);
    let grid = linspace(lo, hi, args.points, "x grid")?;
    let samples = sample_wavefunction(state, &grid).map_err(bound_err)?;
    let mut tbl = Table::new(vec!["x", "re_psi1", "im_psi1", "re_psi2", "im_psi2"]);
    for s in &samples {
        tbl.push(vec![
            s.x.into(),
            s.psi1.re.into(),
            s.psi1.im.into(),
            s.psi2.re.into(),
            s.psi2.im.into(),
        ]);
    }
    let notes = serde_json::json!({
        "energy": state.energy,
        "character": state.character.as_str(),
        "exterior_decay": state.exterior_decay,
    });
    Ok((tbl, Some(notes)))
}

fn write_output(
    cli: &Cli,
    command: &str,
    flags: serde_json::Value,
    tbl: Table,
    notes: Option<serde_json::Value>,
) -> Result<(), CliError> {
    let output = cli
        .output
        .as_ref()
        .ok_or_else(|| CliError::Flags("--output is required".into()))?;
    let envelope = Envelope {
        command,
        flags: &flags,
        version: env!("CARGO_PKG_VERSION"),
        units: UnitSystem::NOTE,
        notes,
        table: &tbl,
    };
    let rendered = table::render(cli.format, &envelope)
        .map_err(|e| CliError::Flags(format!("serialization failed: {e}")))?;
    let path = table::resolve_output(output);
    std::fs::write(&path, rendered)
        .map_err(|e| CliError::Flags(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let to_flags = |v: serde_json::Result<serde_json::Value>| {
        v.map_err(|e| CliError::Flags(format!("flag serialization failed: {e}")))
    };
    match &cli.command {
        Command::ClassicalRegions(args) => {
            let (tbl, notes) = run_classical_regions(args)?;
            write_output(cli, "classical-regions", to_flags(serde_json::to_value(args))?, tbl, notes)
        }
        Command::Trajectory(args) => {
            let (tbl, notes) = run_trajectory(args)?;
            write_output(cli, "trajectory", to_flags(serde_json::to_value(args))?, tbl, notes)
        }
        Command::Transmission(args) => {
            let (tbl, notes) = run_transmission(args)?;
            write_output(cli, "transmission", to_flags(serde_json::to_value(args))?, tbl, notes)
        }
        Command::BoundSpectrum(args) => {
            let (tbl, notes) = run_bound_spectrum(args)?;
            write_output(cli, "bound-spectrum", to_flags(serde_json::to_value(args))?, tbl, notes)
        }
        Command::Wavefunction(args) => {
            let (tbl, notes) = run_wavefunction(args)?;
            write_output(cli, "wavefunction", to_flags(serde_json::to_value(args))?, tbl, notes)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot build worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
