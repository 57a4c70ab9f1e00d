//! Observable absorption spectra built from sideband multiplets.
//!
//! Transitions between a ground and an excited manifold pick up one line per
//! sideband pair (n_g, n_e), weighted by the product of the two Bessel
//! weights. Lines get a peak-normalized Lorentzian profile; no transition
//! dipole model is attached, so relative sideband structure is the whole
//! signal.

use crate::error::{Error, Result};
use crate::floquet::{DriveParams, LevelScheme, SidebandSpectrum};

/// Lines weaker than this never rise above any tolerance used downstream and
/// are dropped.
pub const STRENGTH_PRUNE_THRESHOLD: f64 = 1e-12;

/// One absorption line: center angular frequency, dimensionless strength,
/// full width at half maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub center: f64,
    pub strength: f64,
    pub width: f64,
}

/// Absorption sampled on a strictly increasing frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionCurve {
    frequencies: Vec<f64>,
    absorption: Vec<f64>,
}

impl AbsorptionCurve {
    pub(crate) fn new(frequencies: Vec<f64>, absorption: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::invalid("grid", "frequency grid must be non-empty"));
        }
        if frequencies.iter().any(|f| !f.is_finite()) {
            return Err(Error::invalid("grid", "frequency grid must be finite"));
        }
        if frequencies.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(
                "grid",
                "frequency grid must be strictly increasing",
            ));
        }
        debug_assert_eq!(frequencies.len(), absorption.len());
        debug_assert!(absorption.iter().all(|a| *a >= 0.0));
        Ok(AbsorptionCurve {
            frequencies,
            absorption,
        })
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn absorption(&self) -> &[f64] {
        &self.absorption
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.frequencies
            .iter()
            .zip(&self.absorption)
            .map(|(&f, &a)| (f, a))
    }
}

/// All transition lines between the sideband manifolds of two levels, with
/// strengths below [`STRENGTH_PRUNE_THRESHOLD`] pruned.
///
/// Line centers follow
///
/// ```text
/// [E_e - n_e hbar Omega c_e - E_g + n_g hbar Omega c_g] / hbar
/// ```
///
/// and strengths are the products of the two sideband weights.
pub fn transition_lines(
    scheme: &LevelScheme,
    drive: &DriveParams,
    spectrum: &SidebandSpectrum,
    ground: usize,
    excited: usize,
    base_width: f64,
) -> Result<Vec<SpectralLine>> {
    transition_lines_with_threshold(
        scheme,
        drive,
        spectrum,
        ground,
        excited,
        base_width,
        STRENGTH_PRUNE_THRESHOLD,
    )
}

/// [`transition_lines`] with an explicit pruning threshold (0 keeps every
/// pair).
#[allow(clippy::too_many_arguments)]
pub fn transition_lines_with_threshold(
    scheme: &LevelScheme,
    drive: &DriveParams,
    spectrum: &SidebandSpectrum,
    ground: usize,
    excited: usize,
    base_width: f64,
    threshold: f64,
) -> Result<Vec<SpectralLine>> {
    if !(base_width.is_finite() && base_width > 0.0) {
        return Err(Error::invalid(
            "base_width",
            format!("line width must be positive, got {base_width}"),
        ));
    }
    let num = scheme.len();
    if ground >= num || excited >= num || ground == excited {
        return Err(Error::invalid(
            "levels",
            format!("need two distinct level indices below {num}, got ({ground}, {excited})"),
        ));
    }
    drive.validate()?;

    let hbar = drive.unit_system.hbar();
    let g = &scheme.levels()[ground];
    let e = &scheme.levels()[excited];
    let base = (e.energy - g.energy) / hbar;

    let g_entries = spectrum.level_entries(ground);
    let e_entries = spectrum.level_entries(excited);
    let max_g_weight = g_entries.iter().map(|x| x.weight).fold(0.0_f64, f64::max);
    let max_e_weight = e_entries.iter().map(|x| x.weight).fold(0.0_f64, f64::max);
    // a pair can only clear the threshold if each factor clears it against
    // the other side's best weight
    let e_live: Vec<_> = e_entries
        .iter()
        .filter(|ee| ee.weight * max_g_weight >= threshold)
        .collect();

    let mut lines = Vec::new();
    for eg in g_entries {
        if eg.weight * max_e_weight < threshold {
            continue;
        }
        for ee in &e_live {
            let strength = eg.weight * ee.weight;
            if strength < threshold {
                continue;
            }
            let center = base
                + (eg.n as f64 * g.coupling - ee.n as f64 * e.coupling) * drive.omega;
            lines.push(SpectralLine {
                center,
                strength,
                width: base_width,
            });
        }
    }
    Ok(lines)
}

/// Sum of peak-normalized Lorentzians over a frequency grid:
///
/// ```text
/// absorption(w) = sum_lines strength (width/2)^2 / [(w - center)^2 + (width/2)^2]
/// ```
pub fn lorentzian_profile(lines: &[SpectralLine], grid: &[f64]) -> Result<AbsorptionCurve> {
    for line in lines {
        if !(line.width.is_finite() && line.width > 0.0) {
            return Err(Error::invalid(
                "width",
                format!("line width must be positive, got {}", line.width),
            ));
        }
        if !(line.strength.is_finite() && line.strength >= 0.0) {
            return Err(Error::invalid(
                "strength",
                format!("line strength must be non-negative, got {}", line.strength),
            ));
        }
    }
    let absorption = grid
        .iter()
        .map(|&w| {
            lines
                .iter()
                .map(|line| {
                    let half = 0.5 * line.width;
                    let detuning = w - line.center;
                    line.strength * half * half / (detuning * detuning + half * half)
                })
                .sum()
        })
        .collect();
    AbsorptionCurve::new(grid.to_vec(), absorption)
}
