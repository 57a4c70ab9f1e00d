//! JSON-configured command runner behind the `abshell` binary.
//!
//! A run is described by one JSON document: which command to execute, the
//! drive, the level scheme, command-specific parameters, and where to put
//! the result. Outputs are deterministic: the same config produces the same
//! bytes.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::acstark::{self, ACStarkParams};
use crate::eit::{self, DipMetric, LambdaSystem};
use crate::error::Error as ModuleError;
use crate::floquet::{
    self, make_drive, DriveParams, Level, LevelScheme, UnitSystem, ELEMENTARY_CHARGE, HBAR,
};
use crate::spectra;
use crate::tdse::{self, TimeGrid};

/// Hard cap on integration points, to keep a bad config from eating the
/// machine.
const MAX_GRID_POINTS: usize = 20_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{module}: {source}")]
    Module {
        module: &'static str,
        #[source]
        source: ModuleError,
    },
    #[error("{module}: {message}")]
    Contract { module: &'static str, message: String },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn module(module: &'static str) -> impl Fn(ModuleError) -> CliError {
        move |source| CliError::Module { module, source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Module { .. } => 2,
            CliError::Contract { .. } => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) | CliError::Module { .. } => "config",
            CliError::Contract { .. } => "contract",
            CliError::Io(_) => "io",
        }
    }

    /// One-line machine-readable error record for stderr.
    pub fn record(&self) -> String {
        let module = match self {
            CliError::Module { module, .. } | CliError::Contract { module, .. } => Some(*module),
            _ => None,
        };
        serde_json::to_string(&serde_json::json!({
            "error": {
                "kind": self.kind(),
                "module": module,
                "message": self.to_string(),
            }
        }))
        .expect("error record serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Sidebands,
    Splitting,
    TdseVerify,
    Acstark,
    GaugeCheck,
    Spectrum,
    Eit,
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveSection {
    pub v0: f64,
    pub omega: f64,
    #[serde(default)]
    pub units: UnitSystem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

/// Command-specific knobs; every field optional, defaults applied per
/// command.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CommandParams {
    /// Sideband truncation order; absent or 0 picks the automatic value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_hi: Option<u32>,
    /// Drive periods to integrate (tdse-verify, gauge-check); default 10.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods: Option<u32>,
    /// Integration points per drive period; default chosen from the
    /// tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps_per_period: Option<u32>,
    /// Acceptance tolerance for the verification commands; default 1e-8.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// AC-Stark electric field amplitude.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e0: Option<f64>,
    /// AC-Stark dipole moment.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    /// AC-Stark polarizability.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// AC-Stark S-sum truncation; absent or 0 picks the automatic value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_hi: Option<u32>,
    /// First sideband index for acstark output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_min: Option<i32>,
    /// Last sideband index for acstark output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<i32>,
    /// Lorentzian full width at half maximum (spectrum).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_width: Option<f64>,
    /// Frequency grid bounds and size (spectrum, eit).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    /// EIT coupling detuning; default 0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_c: Option<f64>,
    /// EIT probe Rabi frequency.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rabi_p: Option<f64>,
    /// EIT coupling Rabi frequency.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rabi_c: Option<f64>,
    /// EIT excited-state decay rate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_3: Option<f64>,
    /// EIT ground-sideband decoherence rate; default 0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_2: Option<f64>,
}

impl CommandParams {
    fn is_default(&self) -> bool {
        *self == CommandParams::default()
    }
}

fn output_is_default(output: &OutputSection) -> bool {
    *output == OutputSection::default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drive: Option<DriveSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<Level>,
    #[serde(default, skip_serializing_if = "CommandParams::is_default")]
    pub params: CommandParams,
    #[serde(default, skip_serializing_if = "output_is_default")]
    pub output: OutputSection,
}

impl RunConfig {
    fn drive(&self) -> Result<DriveParams, CliError> {
        let section = self.drive.ok_or_else(|| {
            CliError::Config("missing `drive` section for this command".into())
        })?;
        make_drive(section.v0, section.omega, section.units)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    /// The configured level scheme, or the default single ground level.
    fn scheme(&self) -> Result<LevelScheme, CliError> {
        let levels = if self.levels.is_empty() {
            vec![Level::new("0", 0.0)]
        } else {
            self.levels.clone()
        };
        LevelScheme::new(levels).map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Parse and fully validate a JSON run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let config: RunConfig = serde_json::from_str(text).map_err(|e| {
        CliError::Config(format!(
            "parse error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    validate(&config)?;
    Ok(config)
}

fn require(param: Option<f64>, name: &str) -> Result<f64, CliError> {
    param.ok_or_else(|| CliError::Config(format!("missing required parameter `{name}`")))
}

fn validate(config: &RunConfig) -> Result<(), CliError> {
    match config.command {
        Command::Sidebands | Command::Splitting => {
            config.drive()?;
            config.scheme()?;
        }
        Command::TdseVerify | Command::GaugeCheck => {
            let drive = config.drive()?;
            let scheme = config.scheme()?;
            verification_grid(config, &drive, &scheme)?;
        }
        Command::Acstark => {
            let drive = config.drive()?;
            if drive.unit_system != UnitSystem::Natural {
                return Err(CliError::Config(
                    "invalid `units`: acstark works in natural units (hbar = 1)".into(),
                ));
            }
            let e0 = require(config.params.e0, "e0")?;
            let d = require(config.params.d, "d")?;
            let beta = require(config.params.beta, "beta")?;
            ACStarkParams::new(e0, d, beta, drive.omega)
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        Command::Spectrum => {
            config.drive()?;
            let scheme = config.scheme()?;
            if scheme.len() < 2 {
                return Err(CliError::Config(
                    "invalid `levels`: spectrum needs a ground and an excited level".into(),
                ));
            }
            let width = require(config.params.base_width, "base_width")?;
            if !(width.is_finite() && width > 0.0) {
                return Err(CliError::Config(format!(
                    "invalid `base_width`: must be positive, got {width}"
                )));
            }
        }
        Command::Eit => {
            eit_system(config)?;
        }
        Command::Constants => {}
    }
    if let (Some(min), Some(max)) = (config.params.grid_min, config.params.grid_max) {
        if !(min < max) {
            return Err(CliError::Config(format!(
                "invalid `grid_min`/`grid_max`: need grid_min < grid_max, got {min} >= {max}"
            )));
        }
    }
    if let Some(points) = config.params.grid_points {
        if points < 2 || points > MAX_GRID_POINTS {
            return Err(CliError::Config(format!(
                "invalid `grid_points`: need 2..={MAX_GRID_POINTS}, got {points}"
            )));
        }
    }
    Ok(())
}

/// Run a validated config: execute the command and write its artifact to
/// the configured destination (stdout when no path is set).
pub fn run(
    config: &RunConfig,
    output_override: Option<&Path>,
    quiet: bool,
) -> Result<(), CliError> {
    let outcome = execute(config, quiet)?;
    let path = output_override.or(config.output.path.as_deref());
    match path {
        Some(path) => {
            std::fs::write(path, outcome.bytes.as_bytes())?;
            if !quiet {
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            std::io::stdout().write_all(outcome.bytes.as_bytes())?;
        }
    }
    match outcome.failure {
        Some((module, message)) => Err(CliError::Contract { module, message }),
        None => Ok(()),
    }
}

struct Outcome {
    bytes: String,
    failure: Option<(&'static str, String)>,
}

impl Outcome {
    fn ok(bytes: String) -> Self {
        Outcome {
            bytes,
            failure: None,
        }
    }
}

/// Execute a command and render its artifact, without touching the
/// filesystem.
pub fn render(config: &RunConfig) -> Result<String, CliError> {
    execute(config, true).map(|outcome| outcome.bytes)
}

fn execute(config: &RunConfig, quiet: bool) -> Result<Outcome, CliError> {
    match config.command {
        Command::Sidebands => run_sidebands(config),
        Command::Splitting => run_splitting(config, quiet),
        Command::TdseVerify => run_tdse_verify(config),
        Command::GaugeCheck => run_gauge_check(config),
        Command::Acstark => run_acstark(config),
        Command::Spectrum => run_spectrum(config),
        Command::Eit => run_eit(config, quiet),
        Command::Constants => run_constants(config),
    }
}

/// Shortest float rendering with an exponent, stable across runs. Negative
/// zero collapses to plain zero.
fn fmt(v: f64) -> String {
    if v == 0.0 {
        return "0e0".to_string();
    }
    format!("{v:e}")
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_pretty<T: Serialize>(value: &T) -> String {
    let mut bytes = serde_json::to_string_pretty(value).expect("artifact serializes");
    bytes.push('\n');
    bytes
}

// ---- sidebands -------------------------------------------------------------

#[derive(Serialize)]
struct SidebandRow<'a> {
    level_label: &'a str,
    n: i32,
    energy: f64,
    amplitude: f64,
    weight: f64,
}

fn run_sidebands(config: &RunConfig) -> Result<Outcome, CliError> {
    let drive = config.drive()?;
    let scheme = config.scheme()?;
    let spectrum = floquet::sideband_spectrum(&scheme, &drive, config.params.n_hi)
        .map_err(CliError::module("floquet"))?;
    let rows: Vec<SidebandRow> = spectrum
        .entries()
        .iter()
        .map(|e| SidebandRow {
            level_label: &scheme.levels()[e.level_index].label,
            n: e.n,
            energy: e.energy,
            amplitude: e.amplitude,
            weight: e.weight,
        })
        .collect();
    let bytes = match config.output.format {
        OutputFormat::Csv => {
            let mut out = String::from("level_label,n,energy,amplitude,weight\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_field(r.level_label),
                    r.n,
                    fmt(r.energy),
                    fmt(r.amplitude),
                    fmt(r.weight)
                ));
            }
            out
        }
        OutputFormat::Json => json_pretty(&rows),
    };
    Ok(Outcome::ok(bytes))
}

// ---- splitting -------------------------------------------------------------

#[derive(Serialize)]
struct SplittingArtifact {
    alpha: f64,
    sideband_order: i64,
    comb_shift: f64,
    potential_shift: f64,
    low_alpha: bool,
    levels: Vec<SplittingRow>,
}

#[derive(Serialize)]
struct SplittingRow {
    level_label: String,
    lower: f64,
    upper: f64,
    shift: f64,
}

fn run_splitting(config: &RunConfig, quiet: bool) -> Result<Outcome, CliError> {
    let drive = config.drive()?;
    let scheme = config.scheme()?;
    let report = floquet::dominant_splitting(&scheme, &drive);
    if report.low_alpha && !quiet {
        eprintln!(
            "note: alpha = {} < 10; the two-sideband splitting picture needs alpha >> 1",
            drive.alpha
        );
    }
    let artifact = SplittingArtifact {
        alpha: drive.alpha,
        sideband_order: report.sideband_order,
        comb_shift: report.comb_shift,
        potential_shift: report.potential_shift,
        low_alpha: report.low_alpha,
        levels: report
            .levels
            .iter()
            .map(|l| SplittingRow {
                level_label: l.label.clone(),
                lower: l.lower,
                upper: l.upper,
                shift: report.potential_shift,
            })
            .collect(),
    };
    let bytes = match config.output.format {
        OutputFormat::Csv => {
            let mut out = String::from("level_label,lower,upper,shift\n");
            for l in &artifact.levels {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_field(&l.level_label),
                    fmt(l.lower),
                    fmt(l.upper),
                    fmt(l.shift)
                ));
            }
            out
        }
        OutputFormat::Json => json_pretty(&artifact),
    };
    Ok(Outcome::ok(bytes))
}

// ---- tdse-verify / gauge-check ----------------------------------------------

#[derive(Serialize)]
struct VerifyReport {
    alpha: f64,
    periods: u32,
    max_error: f64,
    tolerance: f64,
    pass: bool,
}

fn verification_grid(
    config: &RunConfig,
    drive: &DriveParams,
    scheme: &LevelScheme,
) -> Result<(u32, TimeGrid, f64), CliError> {
    let periods = config.params.periods.unwrap_or(10);
    if periods == 0 || periods > 10_000 {
        return Err(CliError::Config(format!(
            "invalid `periods`: need 1..=10000, got {periods}"
        )));
    }
    let tolerance = config.params.tolerance.unwrap_or(1e-8);
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(CliError::Config(format!(
            "invalid `tolerance`: must be positive, got {tolerance}"
        )));
    }
    let spp = match config.params.steps_per_period {
        Some(spp) if spp >= 50 => spp as usize,
        Some(spp) => {
            return Err(CliError::Config(format!(
                "invalid `steps_per_period`: need at least 50, got {spp}"
            )))
        }
        None => auto_steps_per_period(scheme, drive, periods, tolerance),
    };
    let steps = periods as usize * spp + 1;
    if steps > MAX_GRID_POINTS {
        return Err(CliError::Config(format!(
            "grid of {steps} points exceeds the {MAX_GRID_POINTS}-point cap; lower `periods` or `steps_per_period`"
        )));
    }
    let grid = TimeGrid::new(0.0, periods as f64 * drive.period(), steps)
        .map_err(CliError::module("tdse"))?;
    Ok((periods, grid, tolerance))
}

/// Pick a per-period resolution that puts the RK4 phase error an order of
/// magnitude under the tolerance: global error ~ T w_max^5 h^4 / 120.
fn auto_steps_per_period(
    scheme: &LevelScheme,
    drive: &DriveParams,
    periods: u32,
    tolerance: f64,
) -> usize {
    let hbar = drive.unit_system.hbar();
    let charge = drive.unit_system.charge();
    let w_max = scheme
        .levels()
        .iter()
        .map(|l| (l.energy.abs() + charge * l.coupling.abs() * drive.v0) / hbar)
        .fold(drive.omega, f64::max);
    let total_t = periods as f64 * drive.period();
    let h = (120.0 * (tolerance / 10.0) / (total_t * w_max.powi(5))).powf(0.25);
    let spp = (drive.period() / h).ceil() as usize;
    spp.clamp(200, 2_000_000)
}

fn run_tdse_verify(config: &RunConfig) -> Result<Outcome, CliError> {
    let drive = config.drive()?;
    let scheme = config.scheme()?;
    let (periods, grid, tolerance) = verification_grid(config, &drive, &scheme)?;
    let series = tdse::integrate(&scheme, &drive, &grid).map_err(CliError::module("tdse"))?;

    let mut max_error = 0.0_f64;
    for (i, level) in scheme.levels().iter().enumerate() {
        let level_drive = DriveParams {
            alpha: level.coupling * drive.alpha,
            ..drive
        };
        for (k, &c) in series.level(i).iter().enumerate() {
            let expect = floquet::analytic_phase_factor(&level_drive, level.energy, grid.time(k));
            max_error = max_error.max((c - expect).norm());
        }
    }
    finish_verification("tdse", drive.alpha, periods, max_error, tolerance, config)
}

fn run_gauge_check(config: &RunConfig) -> Result<Outcome, CliError> {
    let drive = config.drive()?;
    let scheme = config.scheme()?;
    let (periods, grid, tolerance) = verification_grid(config, &drive, &scheme)?;
    let series = tdse::integrate(&scheme, &drive, &grid).map_err(CliError::module("tdse"))?;
    let transformed = tdse::gauge_transform(&series, &drive, &scheme);

    let hbar = drive.unit_system.hbar();
    let mut max_error = 0.0_f64;
    for (i, level) in scheme.levels().iter().enumerate() {
        for (k, &c) in transformed.level(i).iter().enumerate() {
            let free =
                num_complex::Complex64::from_polar(1.0, -level.energy * grid.time(k) / hbar);
            max_error = max_error.max((c - free).norm());
        }
    }
    finish_verification("tdse", drive.alpha, periods, max_error, tolerance, config)
}

fn finish_verification(
    module: &'static str,
    alpha: f64,
    periods: u32,
    max_error: f64,
    tolerance: f64,
    config: &RunConfig,
) -> Result<Outcome, CliError> {
    let report = VerifyReport {
        alpha,
        periods,
        max_error,
        tolerance,
        pass: max_error < tolerance,
    };
    let _ = &config.output.format; // reports are always JSON
    let bytes = json_pretty(&report);
    let failure = (!report.pass).then(|| {
        (
            module,
            format!("max_error {max_error:e} exceeds tolerance {tolerance:e}"),
        )
    });
    Ok(Outcome { bytes, failure })
}

// ---- acstark ---------------------------------------------------------------

#[derive(Serialize)]
struct AcstarkRow {
    n: i32,
    c_n: f64,
    weight: f64,
}

fn run_acstark(config: &RunConfig) -> Result<Outcome, CliError> {
    let drive = config.drive()?;
    let params = ACStarkParams::new(
        config.params.e0.expect("validated"),
        config.params.d.expect("validated"),
        config.params.beta.expect("validated"),
        drive.omega,
    )
    .map_err(CliError::module("acstark"))?;
    let s_hi = match config.params.s_hi {
        Some(s) if s > 0 => s,
        _ => acstark::default_s_truncation(&params),
    };
    let span = params.linear_argument().abs() + 2.0 * params.quadratic_argument().abs();
    let default_n = (span + 40.0 * span.cbrt().max(1.0)).ceil() as i32;
    let n_min = config.params.n_min.unwrap_or(-default_n);
    let n_max = config.params.n_max.unwrap_or(default_n);
    if n_min > n_max {
        return Err(CliError::Config(format!(
            "invalid `n_min`/`n_max`: need n_min <= n_max, got {n_min} > {n_max}"
        )));
    }
    let mut rows = Vec::with_capacity((n_max - n_min + 1) as usize);
    for n in n_min..=n_max {
        let c = acstark::c_n(&params, n, s_hi).map_err(CliError::module("acstark"))?;
        rows.push(AcstarkRow {
            n,
            c_n: c,
            weight: c * c,
        });
    }
    let bytes = match config.output.format {
        OutputFormat::Csv => {
            let mut out = String::from("n,c_n,weight\n");
            for r in &rows {
                out.push_str(&format!("{},{},{}\n", r.n, fmt(r.c_n), fmt(r.weight)));
            }
            out
        }
        OutputFormat::Json => json_pretty(&rows),
    };
    Ok(Outcome::ok(bytes))
}

// ---- spectrum / eit ----------------------------------------------------------

fn curve_bytes(curve: &spectra::AbsorptionCurve, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("frequency,absorption\n");
            for (f, a) in curve.iter() {
                out.push_str(&format!("{},{}\n", fmt(f), fmt(a)));
            }
            out
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Row {
                frequency: f64,
                absorption: f64,
            }
            let rows: Vec<Row> = curve
                .iter()
                .map(|(frequency, absorption)| Row {
                    frequency,
                    absorption,
                })
                .collect();
            json_pretty(&rows)
        }
    }
}

fn linspace(min: f64, max: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| min + (max - min) * k as f64 / (points - 1) as f64)
        .collect()
}

fn run_spectrum(config: &RunConfig) -> Result<Outcome, CliError> {
    let drive = config.drive()?;
    let scheme = config.scheme()?;
    let width = config.params.base_width.expect("validated");
    let spectrum = floquet::sideband_spectrum(&scheme, &drive, config.params.n_hi)
        .map_err(CliError::module("floquet"))?;
    let lines = spectra::transition_lines(&scheme, &drive, &spectrum, 0, 1, width)
        .map_err(CliError::module("spectra"))?;
    if lines.is_empty() {
        return Err(CliError::Contract {
            module: "spectra",
            message: "every transition line fell below the pruning threshold".into(),
        });
    }
    let lo = lines.iter().map(|l| l.center).fold(f64::INFINITY, f64::min);
    let hi = lines
        .iter()
        .map(|l| l.center)
        .fold(f64::NEG_INFINITY, f64::max);
    let grid_min = config.params.grid_min.unwrap_or(lo - 10.0 * width);
    let grid_max = config.params.grid_max.unwrap_or(hi + 10.0 * width);
    let points = config.params.grid_points.unwrap_or(2001);
    let grid = linspace(grid_min, grid_max, points);
    let curve =
        spectra::lorentzian_profile(&lines, &grid).map_err(CliError::module("spectra"))?;
    Ok(Outcome::ok(curve_bytes(&curve, config.output.format)))
}

fn eit_system(config: &RunConfig) -> Result<LambdaSystem, CliError> {
    let gamma_3 = require(config.params.gamma_3, "gamma_3")?;
    let rabi_p = require(config.params.rabi_p, "rabi_p")?;
    let rabi_c = require(config.params.rabi_c, "rabi_c")?;
    let sideband_offset = match config.drive {
        Some(_) => {
            let drive = config.drive()?;
            // ground-to-image splitting e V0 / hbar straight from the drive
            drive.alpha * drive.omega
        }
        None => 0.0,
    };
    let sys = LambdaSystem {
        delta_p: 0.0,
        delta_c: config.params.delta_c.unwrap_or(0.0),
        rabi_p,
        rabi_c,
        gamma_3,
        gamma_2: config.params.gamma_2.unwrap_or(0.0),
        sideband_offset,
    };
    sys.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(sys)
}

fn run_eit(config: &RunConfig, quiet: bool) -> Result<Outcome, CliError> {
    let sys = eit_system(config)?;
    let grid_min = config.params.grid_min.unwrap_or(-10.0 * sys.gamma_3);
    let grid_max = config.params.grid_max.unwrap_or(10.0 * sys.gamma_3);
    let points = config.params.grid_points.unwrap_or(2001);
    let grid = linspace(grid_min, grid_max, points);
    let curve = eit::transparency_scan(&sys, &grid).map_err(CliError::module("eit"))?;
    if !quiet {
        match eit::dip_metric(&curve) {
            DipMetric::Dip {
                center,
                depth_fraction,
            } => eprintln!(
                "note: transparency dip at delta_p = {center:e}, depth fraction {depth_fraction:.6}"
            ),
            DipMetric::Absent => eprintln!("note: no transparency dip in the scanned window"),
        }
    }
    Ok(Outcome::ok(curve_bytes(&curve, config.output.format)))
}

// ---- constants ---------------------------------------------------------------

fn run_constants(config: &RunConfig) -> Result<Outcome, CliError> {
    let rows = [
        ("elementary_charge", ELEMENTARY_CHARGE),
        ("hbar", HBAR),
        ("e_over_hbar", ELEMENTARY_CHARGE / HBAR),
    ];
    let bytes = match config.output.format {
        OutputFormat::Csv => {
            let mut out = String::from("name,value\n");
            for (name, value) in rows {
                out.push_str(&format!("{},{}\n", name, fmt(value)));
            }
            out
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Row {
                name: &'static str,
                value: f64,
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|&(name, value)| Row { name, value })
                .collect();
            json_pretty(&rows)
        }
    };
    Ok(Outcome::ok(bytes))
}
