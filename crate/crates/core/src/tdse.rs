//! Direct numerical integration of the driven Schroedinger equation.
//!
//! The drive V(t) is diagonal in the unperturbed basis, so each level's
//! amplitude obeys its own scalar equation
//!
//! ```text
//! dc_i/dt = -(i/hbar) (E_i + e coupling_i V(t)) c_i,
//! ```
//!
//! which this module marches with classical RK4. Nothing here assumes the
//! closed-form solution; agreement with `floquet::analytic_phase_factor`,
//! Bessel-weighted sideband amplitudes, and gauge invariance all come out as
//! genuine checks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::floquet::{DriveParams, LevelScheme};

/// A uniform time grid on [t0, t1], t0 >= 0 (the drive turns on at t = 0; no
/// pre-history is simulated).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t1: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t1: f64, steps: usize) -> Result<Self> {
        if !t0.is_finite() || t0 < 0.0 {
            return Err(Error::invalid(
                "t0",
                format!("start time must be finite and >= 0, got {t0}"),
            ));
        }
        if !t1.is_finite() || t1 <= t0 {
            return Err(Error::invalid(
                "t1",
                format!("end time must be finite and > t0, got {t1}"),
            ));
        }
        if steps < 2 {
            return Err(Error::invalid(
                "steps",
                format!("need at least 2 grid points, got {steps}"),
            ));
        }
        Ok(TimeGrid { t0, t1, steps })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn spacing(&self) -> f64 {
        (self.t1 - self.t0) / (self.steps - 1) as f64
    }

    pub fn duration(&self) -> f64 {
        self.t1 - self.t0
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.spacing()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|k| self.time(k))
    }
}

/// Complex level amplitudes over a time grid, c_i(t_k).
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSeries {
    grid: TimeGrid,
    amplitudes: Vec<Vec<Complex64>>,
}

impl AmplitudeSeries {
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn num_levels(&self) -> usize {
        self.amplitudes.len()
    }

    /// The amplitude time series of one level.
    pub fn level(&self, level_index: usize) -> &[Complex64] {
        &self.amplitudes[level_index]
    }
}

/// Instantaneous angular frequency of one level's phase rotation,
/// (E_i + e coupling_i V(t)) / hbar, with the drive on for t >= 0.
fn phase_rate(drive: &DriveParams, energy_rate: f64, drive_rate: f64, t: f64) -> f64 {
    if t < 0.0 {
        energy_rate
    } else {
        energy_rate + drive_rate * (drive.omega * t).cos()
    }
}

/// Integrate every level's amplitude over `grid` with classical RK4,
/// starting from c_i(t0) = 1.
///
/// The grid must resolve both the drive period and the fastest phase
/// rotation; an under-resolved grid is refused with the required spacing in
/// the error.
pub fn integrate(
    scheme: &LevelScheme,
    drive: &DriveParams,
    grid: &TimeGrid,
) -> Result<AmplitudeSeries> {
    drive.validate()?;
    let h = grid.spacing();
    let required = required_spacing(scheme, drive);
    if h > required * (1.0 + 1e-12) {
        return Err(Error::UnderResolvedGrid {
            spacing: h,
            required,
        });
    }

    let hbar = drive.unit_system.hbar();
    let charge = drive.unit_system.charge();
    let amplitudes = scheme
        .levels()
        .iter()
        .map(|level| {
            let energy_rate = level.energy / hbar;
            let drive_rate = charge * level.coupling * drive.v0 / hbar;
            let mut c = Complex64::new(1.0, 0.0);
            let mut series = Vec::with_capacity(grid.steps());
            series.push(c);
            for k in 0..grid.steps() - 1 {
                let t = grid.time(k);
                let w1 = phase_rate(drive, energy_rate, drive_rate, t);
                let w2 = phase_rate(drive, energy_rate, drive_rate, t + 0.5 * h);
                let w4 = phase_rate(drive, energy_rate, drive_rate, t + h);
                let k1 = rotate(w1, c);
                let k2 = rotate(w2, c + 0.5 * h * k1);
                let k3 = rotate(w2, c + 0.5 * h * k2);
                let k4 = rotate(w4, c + h * k3);
                c += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
                series.push(c);
            }
            series
        })
        .collect();

    Ok(AmplitudeSeries {
        grid: *grid,
        amplitudes,
    })
}

#[inline]
fn rotate(w: f64, c: Complex64) -> Complex64 {
    // -i w c
    Complex64::new(w * c.im, -w * c.re)
}

/// Largest admissible grid spacing: fifty samples per drive period and ten
/// samples per radian of the fastest phase rotation.
pub fn required_spacing(scheme: &LevelScheme, drive: &DriveParams) -> f64 {
    let hbar = drive.unit_system.hbar();
    let charge = drive.unit_system.charge();
    let max_rate = scheme
        .levels()
        .iter()
        .map(|level| (level.energy.abs() + charge * level.coupling.abs() * drive.v0) / hbar)
        .fold(0.0_f64, f64::max);
    let period_limit = drive.period() / 50.0;
    if max_rate > 0.0 {
        period_limit.min(0.1 / max_rate)
    } else {
        period_limit
    }
}

/// Project sideband amplitudes out of a numerically integrated series:
///
/// ```text
/// A_n = (1/T) integral c(t) exp(+i (E_i - n hbar Omega) t / hbar) dt
/// ```
///
/// by composite trapezoid over the whole window, which must span a whole
/// number of drive periods for the harmonics to stay orthogonal. For the
/// sinusoidal drive, |A_n| -> |J_n(alpha_i)|.
pub fn extract_sidebands(
    series: &AmplitudeSeries,
    level_index: usize,
    drive: &DriveParams,
    scheme: &LevelScheme,
    n_range: std::ops::RangeInclusive<i32>,
) -> Result<Vec<(i32, Complex64)>> {
    drive.validate()?;
    let grid = series.grid();
    let duration = grid.duration();
    let period = drive.period();
    let cycles = duration / period;
    if cycles < 0.5 || (cycles - cycles.round()).abs() > 1e-9 * cycles.round().max(1.0) {
        return Err(Error::InvalidWindow { duration, period });
    }

    let amplitudes = series.level(level_index);
    let energy_rate = scheme.levels()[level_index].energy / drive.unit_system.hbar();
    let h = grid.spacing();
    let last = grid.steps() - 1;

    let mut out = Vec::new();
    for n in n_range {
        let projector_rate = energy_rate - n as f64 * drive.omega;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in amplitudes.iter().enumerate() {
            let weight = if k == 0 || k == last { 0.5 } else { 1.0 };
            let phase = Complex64::from_polar(1.0, projector_rate * grid.time(k));
            acc += weight * c * phase;
        }
        out.push((n, acc * h / duration));
    }
    Ok(out)
}

/// Remove the scalar-potential gauge phase: multiply each level by
/// exp(+i coupling_i alpha sin(Omega t)), taking the V-gauge solution to the
/// gauge with all potentials zero, where the driven solution must coincide
/// with free evolution exp(-i E_i t / hbar).
pub fn gauge_transform(
    series: &AmplitudeSeries,
    drive: &DriveParams,
    scheme: &LevelScheme,
) -> AmplitudeSeries {
    apply_gauge_phase(series, drive, scheme, 1.0)
}

/// Put the gauge phase back; inverse of [`gauge_transform`].
pub fn gauge_transform_inverse(
    series: &AmplitudeSeries,
    drive: &DriveParams,
    scheme: &LevelScheme,
) -> AmplitudeSeries {
    apply_gauge_phase(series, drive, scheme, -1.0)
}

fn apply_gauge_phase(
    series: &AmplitudeSeries,
    drive: &DriveParams,
    scheme: &LevelScheme,
    sign: f64,
) -> AmplitudeSeries {
    let grid = *series.grid();
    let amplitudes = scheme
        .levels()
        .iter()
        .enumerate()
        .map(|(i, level)| {
            let depth = sign * level.coupling * drive.alpha;
            series
                .level(i)
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    let t = grid.time(k);
                    let lambda_phase = if t < 0.0 {
                        0.0
                    } else {
                        depth * (drive.omega * t).sin()
                    };
                    c * Complex64::from_polar(1.0, lambda_phase)
                })
                .collect()
        })
        .collect();
    AmplitudeSeries { grid, amplitudes }
}
