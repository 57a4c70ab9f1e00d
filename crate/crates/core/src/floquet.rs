//! Drive parameters, the scalar AB phase, and the Jacobi-Anger sideband
//! multiplet of a driven level scheme.
//!
//! A spatially uniform potential V(t) = V0 cos(Omega t) switched on at t = 0
//! multiplies every stationary state by the phase factor
//! exp(-i E t / hbar - i alpha sin(Omega t)) with modulation depth
//! alpha = e V0 / (hbar Omega). Expanding that factor in harmonics splits
//! each level E into the comb E - n hbar Omega weighted by (-1)^n J_n(alpha).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_row, BesselTable};

/// Elementary charge, C (2018 CODATA, exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
/// Reduced Planck constant, J s (2018 CODATA).
pub const HBAR: f64 = 1.054571817e-34;

/// Unit conventions for drive and level energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum UnitSystem {
    /// hbar = 1, e = 1; energies are angular frequencies.
    #[default]
    #[serde(rename = "natural")]
    Natural,
    /// Volts, rad/s, Joules.
    #[serde(rename = "SI", alias = "si")]
    Si,
}

impl UnitSystem {
    pub fn hbar(self) -> f64 {
        match self {
            UnitSystem::Natural => 1.0,
            UnitSystem::Si => HBAR,
        }
    }

    pub fn charge(self) -> f64 {
        match self {
            UnitSystem::Natural => 1.0,
            UnitSystem::Si => ELEMENTARY_CHARGE,
        }
    }
}

/// The sinusoidal scalar-potential drive V(t) = v0 cos(omega t), t >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    /// Potential amplitude (V in SI, energy/charge in natural units).
    pub v0: f64,
    /// Angular drive frequency, rad/s.
    pub omega: f64,
    /// Dimensionless modulation depth e v0 / (hbar omega).
    pub alpha: f64,
    pub unit_system: UnitSystem,
}

impl DriveParams {
    /// One drive period 2 pi / omega.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !self.omega.is_finite() || self.omega <= 0.0 {
            return Err(Error::invalid(
                "omega",
                format!("drive frequency must be positive and finite, got {}", self.omega),
            ));
        }
        if !self.v0.is_finite() || self.v0 < 0.0 {
            return Err(Error::invalid(
                "v0",
                format!("drive amplitude must be non-negative and finite, got {}", self.v0),
            ));
        }
        Ok(())
    }
}

/// Build a validated drive; `alpha` follows the unit system.
pub fn make_drive(v0: f64, omega: f64, unit_system: UnitSystem) -> Result<DriveParams> {
    let drive = DriveParams {
        v0,
        omega,
        alpha: unit_system.charge() * v0 / (unit_system.hbar() * omega),
        unit_system,
    };
    drive.validate()?;
    Ok(drive)
}

/// One unperturbed level of the probe system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub label: String,
    /// Eigenvalue of the undriven Hamiltonian (J in SI, rad/s in natural units).
    pub energy: f64,
    /// Dimensionless charge-coupling factor; scales the modulation depth of
    /// this level to alpha_i = coupling * alpha.
    #[serde(default = "default_coupling")]
    pub coupling: f64,
}

fn default_coupling() -> f64 {
    1.0
}

impl Level {
    pub fn new(label: impl Into<String>, energy: f64) -> Self {
        Level {
            label: label.into(),
            energy,
            coupling: 1.0,
        }
    }

    pub fn with_coupling(label: impl Into<String>, energy: f64, coupling: f64) -> Self {
        Level {
            label: label.into(),
            energy,
            coupling,
        }
    }
}

/// An ordered list of labeled levels.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelScheme {
    levels: Vec<Level>,
}

impl LevelScheme {
    /// Labels must be unique; energies and couplings finite.
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::invalid("levels", "at least one level is required"));
        }
        for (i, level) in levels.iter().enumerate() {
            if !level.energy.is_finite() {
                return Err(Error::invalid(
                    "energy",
                    format!("level `{}` has non-finite energy", level.label),
                ));
            }
            if !level.coupling.is_finite() {
                return Err(Error::invalid(
                    "coupling",
                    format!("level `{}` has non-finite coupling", level.label),
                ));
            }
            if levels[..i].iter().any(|other| other.label == level.label) {
                return Err(Error::invalid(
                    "labels",
                    format!("duplicate level label `{}`", level.label),
                ));
            }
        }
        Ok(LevelScheme { levels })
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// The scalar electric AB phase phi(t) = alpha sin(omega t), zero before the
/// drive turns on at t = 0.
pub fn ab_phase(drive: &DriveParams, t: f64) -> f64 {
    if t < 0.0 {
        0.0
    } else {
        drive.alpha * (drive.omega * t).sin()
    }
}

/// Closed-form phase factor exp(-i E t / hbar - i phi(t)) of a driven level.
/// Unit modulus by construction.
pub fn analytic_phase_factor(drive: &DriveParams, energy: f64, t: f64) -> Complex64 {
    let theta = energy * t / drive.unit_system.hbar() + ab_phase(drive, t);
    Complex64::from_polar(1.0, -theta)
}

/// One component of the sideband multiplet of one level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidebandEntry {
    pub level_index: usize,
    /// Sideband index, -n_hi ..= n_hi.
    pub n: i32,
    /// E_i - n hbar omega.
    pub energy: f64,
    /// (-1)^n J_n(alpha_i).
    pub amplitude: f64,
    /// amplitude^2.
    pub weight: f64,
}

/// The full multiplet {E_i - n hbar omega} over all levels.
#[derive(Debug, Clone, PartialEq)]
pub struct SidebandSpectrum {
    entries: Vec<SidebandEntry>,
    truncation: u32,
    alpha_per_level: Vec<f64>,
}

impl SidebandSpectrum {
    /// All entries, ordered by (level index, ascending n).
    pub fn entries(&self) -> &[SidebandEntry] {
        &self.entries
    }

    /// Truncation order n_hi actually used.
    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Per-level modulation depth alpha_i = coupling_i * alpha.
    pub fn alpha_per_level(&self) -> &[f64] {
        &self.alpha_per_level
    }

    /// The slice of entries belonging to one level.
    pub fn level_entries(&self, level_index: usize) -> &[SidebandEntry] {
        let span = 2 * self.truncation as usize + 1;
        let lo = level_index * span;
        &self.entries[lo..lo + span]
    }

    pub fn num_levels(&self) -> usize {
        self.alpha_per_level.len()
    }
}

/// Expand every level of `scheme` into its sideband multiplet.
///
/// `n_hi = None` (or zero) picks the automatic truncation, which keeps the
/// discarded weight below 1e-12.
pub fn sideband_spectrum(
    scheme: &LevelScheme,
    drive: &DriveParams,
    n_hi: Option<u32>,
) -> Result<SidebandSpectrum> {
    drive.validate()?;
    let n_hi = match n_hi {
        Some(n) if n > 0 => n,
        _ => u32::try_from(auto_truncation(drive)).map_err(|_| {
            Error::invalid("alpha", "modulation depth too large for automatic truncation")
        })?,
    };
    let hbar_omega = drive.unit_system.hbar() * drive.omega;

    let mut entries = Vec::with_capacity(scheme.len() * (2 * n_hi as usize + 1));
    let mut alpha_per_level = Vec::with_capacity(scheme.len());
    for (level_index, level) in scheme.levels().iter().enumerate() {
        let alpha_i = level.coupling * drive.alpha;
        alpha_per_level.push(alpha_i);
        let table = bessel_row(alpha_i.abs(), n_hi)?;
        for n in -(n_hi as i32)..=n_hi as i32 {
            let amplitude = signed_amplitude(&table, alpha_i, n);
            entries.push(SidebandEntry {
                level_index,
                n,
                energy: level.energy - n as f64 * hbar_omega,
                amplitude,
                weight: amplitude * amplitude,
            });
        }
    }
    Ok(SidebandSpectrum {
        entries,
        truncation: n_hi,
        alpha_per_level,
    })
}

/// (-1)^n J_n(alpha_i), honoring J_n(-x) = (-1)^n J_n(x) for negative
/// per-level depths.
fn signed_amplitude(table: &BesselTable, alpha_i: f64, n: i32) -> f64 {
    let mut v = table.value(n);
    if alpha_i < 0.0 && (n.unsigned_abs() & 1) == 1 {
        v = -v;
    }
    if n.unsigned_abs() & 1 == 1 {
        -v
    } else {
        v
    }
}

/// The index of the last non-suppressed sideband, n_max ~ alpha, rounded
/// half-to-even.
pub fn n_max(drive: &DriveParams) -> i64 {
    drive.alpha.round_ties_even() as i64
}

/// Automatic truncation order: ceil(alpha + 40 max(1, alpha^(1/3))), enough
/// margin that the tail weight sum_{|n| > n_hi} J_n(alpha)^2 stays below
/// 1e-12.
pub fn auto_truncation(drive: &DriveParams) -> u64 {
    let alpha = drive.alpha.abs();
    (alpha + 40.0 * alpha.cbrt().round().max(1.0)).ceil() as u64
}

/// Splitting of one level into its pair of dominant sidebands.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSplitting {
    pub label: String,
    /// E_i - n_max hbar omega.
    pub lower: f64,
    /// E_i + n_max hbar omega.
    pub upper: f64,
}

/// The dominant two-sideband splitting of every level.
#[derive(Debug, Clone, PartialEq)]
pub struct SplittingReport {
    pub levels: Vec<LevelSplitting>,
    /// n_max = round(alpha).
    pub sideband_order: i64,
    /// n_max * omega, rad/s: the comb-quantized shift.
    pub comb_shift: f64,
    /// e v0 / hbar = alpha * omega, rad/s: the unrounded shift; equals the
    /// comb shift in the alpha >> 1 regime where the two-sideband picture
    /// applies.
    pub potential_shift: f64,
    /// Set when alpha < 10: the dominant-sideband picture is asymptotic and
    /// this drive is outside that regime.
    pub low_alpha: bool,
}

/// Split each level into E_i +/- n_max hbar omega, the two dominant
/// sidebands when alpha >> 1.
pub fn dominant_splitting(scheme: &LevelScheme, drive: &DriveParams) -> SplittingReport {
    let order = n_max(drive);
    let energy_shift = order as f64 * drive.unit_system.hbar() * drive.omega;
    let levels = scheme
        .levels()
        .iter()
        .map(|level| LevelSplitting {
            label: level.label.clone(),
            lower: level.energy - energy_shift,
            upper: level.energy + energy_shift,
        })
        .collect();
    SplittingReport {
        levels,
        sideband_order: order,
        comb_shift: order as f64 * drive.omega,
        potential_shift: drive.alpha * drive.omega,
        low_alpha: drive.alpha < 10.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn natural_drive(alpha: f64) -> DriveParams {
        make_drive(alpha, 1.0, UnitSystem::Natural).unwrap()
    }

    fn single_level(energy: f64) -> LevelScheme {
        LevelScheme::new(vec![Level::new("g", energy)]).unwrap()
    }

    #[test]
    fn zero_amplitude_gives_zero_alpha() {
        assert_eq!(make_drive(0.0, 1.0, UnitSystem::Natural).unwrap().alpha, 0.0);
    }

    #[test]
    fn natural_alpha_is_direct_ratio() {
        assert_eq!(make_drive(2.0, 1.0, UnitSystem::Natural).unwrap().alpha, 2.0);
        assert_eq!(make_drive(3.0, 2.0, UnitSystem::Natural).unwrap().alpha, 1.5);
    }

    #[test]
    fn si_alpha_for_millivolt_drive() {
        // V0 = 0.5 mV, Omega = 1e8 rad/s: alpha = e V0 / (hbar Omega) ~ 7.6e3
        let drive = make_drive(5e-4, 1e8, UnitSystem::Si).unwrap();
        let expect = ELEMENTARY_CHARGE * 5e-4 / (HBAR * 1e8);
        assert_relative_eq!(drive.alpha, expect, max_relative = 1e-12);
        assert_relative_eq!(drive.alpha, 7.60e3, max_relative = 1e-3);
    }

    #[test]
    fn unit_systems_agree_on_alpha() {
        let si = make_drive(5e-4, 1e8, UnitSystem::Si).unwrap();
        let natural = make_drive(
            ELEMENTARY_CHARGE * 5e-4 / HBAR,
            1e8,
            UnitSystem::Natural,
        )
        .unwrap();
        assert_relative_eq!(si.alpha, natural.alpha, max_relative = 1e-12);
    }

    #[test]
    fn non_positive_frequency_is_rejected() {
        assert!(make_drive(1.0, 0.0, UnitSystem::Natural).is_err());
        assert!(make_drive(1.0, -2.0, UnitSystem::Si).is_err());
    }

    #[test]
    fn negative_amplitude_is_rejected() {
        assert!(make_drive(-1.0, 1.0, UnitSystem::Natural).is_err());
    }

    #[test]
    fn ab_phase_at_time_zero() {
        let drive = natural_drive(3.0);
        assert_eq!(ab_phase(&drive, 0.0), 0.0);
    }

    #[test]
    fn ab_phase_before_turn_on_is_zero() {
        let drive = natural_drive(3.0);
        assert_eq!(ab_phase(&drive, -1.0), 0.0);
    }

    #[test]
    fn ab_phase_quarter_period() {
        let drive = natural_drive(2.0);
        assert_abs_diff_eq!(ab_phase(&drive, FRAC_PI_2), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn ab_phase_half_period_vanishes() {
        let drive = natural_drive(1000.0);
        assert!(ab_phase(&drive, PI).abs() < 1e-9 * 1000.0);
    }

    #[test]
    fn phase_factor_trivial_cases() {
        let undriven = natural_drive(0.0);
        assert_eq!(
            analytic_phase_factor(&undriven, 0.0, 1.7),
            Complex64::new(1.0, 0.0)
        );
        let driven = natural_drive(2.0);
        assert_eq!(
            analytic_phase_factor(&driven, 4.2, 0.0),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn phase_factor_quarter_period() {
        // E = 1, alpha = 2, omega = 1, t = pi/2: exp(-i pi/2 - 2i)
        let drive = natural_drive(2.0);
        let got = analytic_phase_factor(&drive, 1.0, FRAC_PI_2);
        let expect = Complex64::from_polar(1.0, -(FRAC_PI_2 + 2.0));
        assert_abs_diff_eq!((got - expect).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn phase_factor_is_unimodular() {
        let drive = natural_drive(50.0);
        for k in 0..100 {
            let t = 0.13 * k as f64;
            let m = analytic_phase_factor(&drive, 3.7, t).norm();
            assert_abs_diff_eq!(m, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn undriven_spectrum_is_a_single_carrier() {
        let spectrum =
            sideband_spectrum(&single_level(0.0), &natural_drive(0.0), Some(5)).unwrap();
        for entry in spectrum.entries() {
            if entry.n == 0 {
                assert_eq!(entry.weight, 1.0);
            } else {
                assert_eq!(entry.weight, 0.0);
            }
        }
    }

    #[test]
    fn spectrum_peak_near_turning_point_at_alpha_1000() {
        let spectrum =
            sideband_spectrum(&single_level(0.0), &natural_drive(1000.0), Some(1100)).unwrap();
        let peak = spectrum
            .entries()
            .iter()
            .max_by(|a, b| a.weight.total_cmp(&b.weight))
            .unwrap();
        assert!(
            (970..=1000).contains(&peak.n.abs()),
            "peak at n = {}",
            peak.n
        );
    }

    #[test]
    fn spectrum_weights_sum_to_one() {
        let spectrum =
            sideband_spectrum(&single_level(0.0), &natural_drive(2.0), Some(30)).unwrap();
        let total: f64 = spectrum.entries().iter().map(|e| e.weight).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn weight_normalization_at_auto_truncation() {
        for &alpha in &[0.0, 0.5, 2.0, 50.0, 1000.0] {
            let spectrum =
                sideband_spectrum(&single_level(1.0), &natural_drive(alpha), None).unwrap();
            let total: f64 = spectrum.entries().iter().map(|e| e.weight).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn spectrum_symmetry_and_spacing() {
        let drive = natural_drive(5.0);
        let spectrum = sideband_spectrum(&single_level(2.0), &drive, Some(60)).unwrap();
        let entries = spectrum.level_entries(0);
        let hi = spectrum.truncation() as i32;
        for entry in entries {
            let mirror = entries[(hi - entry.n) as usize];
            assert_eq!(mirror.n, -entry.n);
            assert_eq!(mirror.weight, entry.weight);
        }
        for pair in entries.windows(2) {
            // consecutive energies step down by exactly hbar omega
            assert_abs_diff_eq!(pair[0].energy - pair[1].energy, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn argmax_stays_within_turning_region() {
        for &alpha in &[100.0, 1000.0, 1e4] {
            let spectrum =
                sideband_spectrum(&single_level(0.0), &natural_drive(alpha), None).unwrap();
            let peak = spectrum
                .entries()
                .iter()
                .max_by(|a, b| a.weight.total_cmp(&b.weight))
                .unwrap();
            let n_star = peak.n.abs() as f64;
            assert!(
                n_star >= alpha - 3.0 * alpha.cbrt() && n_star <= alpha,
                "alpha = {alpha}: argmax at {n_star}"
            );
        }
    }

    #[test]
    fn per_level_coupling_scales_depth() {
        let scheme = LevelScheme::new(vec![
            Level::with_coupling("g", 0.0, 1.0),
            Level::with_coupling("e", 5.0, 0.0),
        ])
        .unwrap();
        let spectrum = sideband_spectrum(&scheme, &natural_drive(2.0), Some(20)).unwrap();
        assert_eq!(spectrum.alpha_per_level(), &[2.0, 0.0]);
        let excited: f64 = spectrum
            .level_entries(1)
            .iter()
            .filter(|e| e.n != 0)
            .map(|e| e.weight)
            .sum();
        assert_eq!(excited, 0.0);
    }

    #[test]
    fn n_max_examples() {
        assert_eq!(n_max(&natural_drive(0.0)), 0);
        assert_eq!(n_max(&natural_drive(1000.0)), 1000);
        assert_eq!(n_max(&natural_drive(7.6e3)), 7600);
    }

    #[test]
    fn n_max_rounds_half_to_even() {
        assert_eq!(n_max(&natural_drive(2.5)), 2);
        assert_eq!(n_max(&natural_drive(3.5)), 4);
    }

    #[test]
    fn auto_truncation_examples() {
        assert_eq!(auto_truncation(&natural_drive(0.0)), 40);
        assert_eq!(auto_truncation(&natural_drive(2.0)), 42);
        assert_eq!(auto_truncation(&natural_drive(1000.0)), 1400);
    }

    #[test]
    fn degenerate_splitting_at_zero_drive() {
        let report = dominant_splitting(&single_level(0.0), &natural_drive(0.0));
        assert_eq!(report.levels[0].lower, 0.0);
        assert_eq!(report.levels[0].upper, 0.0);
        assert!(report.low_alpha);
    }

    #[test]
    fn splitting_matches_direct_formula() {
        let report = dominant_splitting(&single_level(5.0), &natural_drive(1000.0));
        assert_eq!(report.levels[0].lower, 5.0 - 1000.0);
        assert_eq!(report.levels[0].upper, 5.0 + 1000.0);
        assert!(!report.low_alpha);
    }

    #[test]
    fn si_splitting_magnitude() {
        // V0 = 0.5 mV: shift magnitude e V0 / hbar ~ 7.6e11 rad/s
        let drive = make_drive(5e-4, 1e8, UnitSystem::Si).unwrap();
        let report = dominant_splitting(&single_level(0.0), &drive);
        let expect = ELEMENTARY_CHARGE * 5e-4 / HBAR;
        assert_relative_eq!(report.potential_shift, expect, max_relative = 1e-12);
        assert_relative_eq!(report.potential_shift, 7.6e11, max_relative = 1e-2);
        assert_relative_eq!(report.comb_shift, expect, max_relative = 1e-4);
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        assert!(LevelScheme::new(vec![Level::new("a", 0.0), Level::new("a", 1.0)]).is_err());
    }

    proptest! {
        #[test]
        fn auto_truncation_tail_weight_is_negligible(alpha in 0.0f64..800.0) {
            let drive = natural_drive(alpha);
            let n_hi = auto_truncation(&drive) as u32;
            // brute-force tail: weights in (n_hi, n_hi + 200]
            let table = crate::specfun::bessel_row(alpha, n_hi + 200).unwrap();
            let mut tail = 0.0;
            for n in (n_hi + 1)..=(n_hi + 200) {
                tail += 2.0 * table.value(n as i32).powi(2);
            }
            prop_assert!(tail < 1e-12, "alpha = {}, tail = {}", alpha, tail);
        }

        #[test]
        fn weights_normalize_for_random_alpha(alpha in 0.0f64..200.0) {
            let drive = natural_drive(alpha);
            let spectrum = sideband_spectrum(&single_level(0.0), &drive, None).unwrap();
            let total: f64 = spectrum.entries().iter().map(|e| e.weight).sum();
            prop_assert!((total - 1.0).abs() < 1e-8);
        }

        #[test]
        fn spectrum_is_even_in_n(alpha in 0.0f64..100.0, n_hi in 1u32..80) {
            let drive = natural_drive(alpha);
            let spectrum = sideband_spectrum(&single_level(0.0), &drive, Some(n_hi)).unwrap();
            let entries = spectrum.level_entries(0);
            for entry in entries {
                let mirror = entries[(n_hi as i32 - entry.n) as usize];
                prop_assert_eq!(mirror.weight, entry.weight);
            }
        }
    }
}
