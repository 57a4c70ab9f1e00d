//! Steady-state Lambda-system model of sideband-enabled transparency.
//!
//! Three states: the ground level, its upper sideband image (offset by
//! e V0 / hbar), and one excited level. A weak probe scans the
//! ground-excited resonance while a coupling field dresses the
//! image-excited leg; the two excitation paths interfere and burn a
//! transparency window into the Lorentzian absorption line. No direct
//! probe coupling exists between ground and image (both share S-wave
//! character), so only the two dipole-allowed legs enter. The perturbative
//! steady-state coherence is
//!
//! ```text
//! response = i (rabi_p/2) / [ (gamma_3/2 - i delta_p)
//!            + (rabi_c/2)^2 / (gamma_2 - i (delta_p - delta_c)) ]
//! ```
//!
//! and the absorption signal is its imaginary part.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectra::AbsorptionCurve;

/// Probe/coupling detunings, Rabi frequencies, and decay rates of the
/// Lambda scheme; all angular frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSystem {
    /// Probe detuning from the ground-excited resonance.
    pub delta_p: f64,
    /// Coupling detuning from the image-excited resonance.
    pub delta_c: f64,
    /// Probe Rabi frequency; must stay perturbative (<= gamma_3 / 10).
    pub rabi_p: f64,
    /// Coupling Rabi frequency.
    pub rabi_c: f64,
    /// Excited-state total decay rate.
    pub gamma_3: f64,
    /// Ground-sideband decoherence rate.
    pub gamma_2: f64,
    /// Ground-to-image splitting e V0 / hbar.
    pub sideband_offset: f64,
}

impl LambdaSystem {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("delta_p", self.delta_p),
            ("delta_c", self.delta_c),
            ("rabi_p", self.rabi_p),
            ("rabi_c", self.rabi_c),
            ("gamma_3", self.gamma_3),
            ("gamma_2", self.gamma_2),
            ("sideband_offset", self.sideband_offset),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        if self.gamma_3 <= 0.0 {
            return Err(Error::invalid(
                "gamma_3",
                format!("excited decay rate must be positive, got {}", self.gamma_3),
            ));
        }
        if self.gamma_2 < 0.0 {
            return Err(Error::invalid(
                "gamma_2",
                format!("decoherence rate must be non-negative, got {}", self.gamma_2),
            ));
        }
        if self.rabi_c < 0.0 {
            return Err(Error::invalid(
                "rabi_c",
                format!("coupling Rabi frequency must be non-negative, got {}", self.rabi_c),
            ));
        }
        if self.rabi_p <= 0.0 || self.rabi_p > self.gamma_3 / 10.0 {
            return Err(Error::invalid(
                "rabi_p",
                format!(
                    "probe Rabi frequency must be in (0, gamma_3/10] = (0, {}], got {}",
                    self.gamma_3 / 10.0,
                    self.rabi_p
                ),
            ));
        }
        Ok(())
    }
}

/// Steady-state optical coherence seen by the probe; absorption is the
/// imaginary part.
pub fn probe_response(sys: &LambdaSystem) -> Result<Complex64> {
    sys.validate()?;
    let numerator = Complex64::new(0.0, 0.5 * sys.rabi_p);
    let direct = Complex64::new(0.5 * sys.gamma_3, -sys.delta_p);
    if sys.rabi_c == 0.0 {
        return Ok(numerator / direct);
    }
    let two_photon = Complex64::new(sys.gamma_2, -(sys.delta_p - sys.delta_c));
    if two_photon.norm_sqr() == 0.0 {
        // lossless dark state: the coupling shunt diverges and the medium is
        // perfectly transparent on two-photon resonance
        return Ok(Complex64::new(0.0, 0.0));
    }
    let shunt = Complex64::new(0.25 * sys.rabi_c * sys.rabi_c, 0.0) / two_photon;
    Ok(numerator / (direct + shunt))
}

/// Probe absorption over a detuning grid (delta_p swept, everything else
/// fixed).
pub fn transparency_scan(sys: &LambdaSystem, detunings: &[f64]) -> Result<AbsorptionCurve> {
    sys.validate()?;
    let mut absorption = Vec::with_capacity(detunings.len());
    for &delta_p in detunings {
        let point = LambdaSystem { delta_p, ..*sys };
        // clamp float dust: the closed form is non-negative for gamma_2 >= 0
        absorption.push(probe_response(&point)?.im.max(0.0));
    }
    AbsorptionCurve::new(detunings.to_vec(), absorption)
}

/// Location and depth of the transparency dip, when one exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DipMetric {
    /// No interior local minimum: a plain absorption line.
    Absent,
    Dip {
        /// Detuning of the interior minimum.
        center: f64,
        /// 1 - min/peak, in [0, 1].
        depth_fraction: f64,
    },
}

/// Locate the interior local minimum between the two absorption maxima of a
/// scanned curve and quantify its depth against the global peak.
pub fn dip_metric(curve: &AbsorptionCurve) -> DipMetric {
    let a = curve.absorption();
    let f = curve.frequencies();
    if a.len() < 3 {
        return DipMetric::Absent;
    }
    let peak = a.iter().fold(0.0_f64, |m, &v| m.max(v));
    if peak <= 0.0 {
        return DipMetric::Absent;
    }

    let mut best: Option<(usize, f64)> = None;
    for i in 1..a.len() - 1 {
        let is_min =
            a[i] <= a[i - 1] && a[i] <= a[i + 1] && (a[i] < a[i - 1] || a[i] < a[i + 1]);
        if !is_min {
            continue;
        }
        // a genuine dip needs a higher shoulder on each side
        let left_peak = a[..i].iter().fold(0.0_f64, |m, &v| m.max(v));
        let right_peak = a[i + 1..].iter().fold(0.0_f64, |m, &v| m.max(v));
        if left_peak <= a[i] || right_peak <= a[i] {
            continue;
        }
        match best {
            Some((_, value)) if value <= a[i] => {}
            _ => best = Some((i, a[i])),
        }
    }

    match best {
        Some((i, value)) => DipMetric::Dip {
            center: f[i],
            depth_fraction: 1.0 - value / peak,
        },
        None => DipMetric::Absent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn base_system() -> LambdaSystem {
        LambdaSystem {
            delta_p: 0.0,
            delta_c: 0.0,
            rabi_p: 0.05,
            rabi_c: 1.0,
            gamma_3: 1.0,
            gamma_2: 0.0,
            sideband_offset: 100.0,
        }
    }

    fn scan_grid(gamma_3: f64, points: usize) -> Vec<f64> {
        let half = 10.0 * gamma_3;
        (0..points)
            .map(|k| -half + 2.0 * half * k as f64 / (points - 1) as f64)
            .collect()
    }

    #[test]
    fn no_coupling_is_a_plain_lorentzian() {
        let sys = LambdaSystem {
            rabi_c: 0.0,
            ..base_system()
        };
        let peak = probe_response(&sys).unwrap().im;
        assert_relative_eq!(peak, 0.5 * sys.rabi_p / (0.5 * sys.gamma_3), max_relative = 1e-12);
        // half maximum at delta_p = +/- gamma_3/2
        for sign in [-1.0, 1.0] {
            let shifted = LambdaSystem {
                delta_p: sign * 0.5 * sys.gamma_3,
                ..sys
            };
            assert_relative_eq!(
                probe_response(&shifted).unwrap().im,
                0.5 * peak,
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn lossless_dark_state_is_exactly_transparent() {
        let sys = base_system();
        assert_eq!(probe_response(&sys).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn small_decoherence_leaves_a_deep_notch() {
        let sys = LambdaSystem {
            gamma_2: 1e-3,
            ..base_system()
        };
        let on_resonance = probe_response(&sys).unwrap().im;
        let no_coupling = probe_response(&LambdaSystem {
            rabi_c: 0.0,
            ..sys
        })
        .unwrap()
        .im;
        assert!(
            on_resonance < 0.1 * no_coupling,
            "residual absorption {on_resonance} vs bare peak {no_coupling}"
        );
    }

    #[test]
    fn absorption_is_non_negative_across_parameters() {
        for gamma_2 in [0.0, 1e-4, 0.1, 1.0] {
            for rabi_c in [0.0, 0.3, 1.0, 3.0] {
                for delta_c in [-0.5, 0.0, 0.8] {
                    let sys = LambdaSystem {
                        gamma_2,
                        rabi_c,
                        delta_c,
                        ..base_system()
                    };
                    for delta_p in scan_grid(1.0, 101) {
                        let point = LambdaSystem { delta_p, ..sys };
                        assert!(
                            probe_response(&point).unwrap().im >= -1e-15,
                            "negative absorption at delta_p={delta_p}, gamma_2={gamma_2}, rabi_c={rabi_c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn scan_without_coupling_has_no_dip() {
        let sys = LambdaSystem {
            rabi_c: 0.0,
            ..base_system()
        };
        let curve = transparency_scan(&sys, &scan_grid(1.0, 801)).unwrap();
        assert_eq!(dip_metric(&curve), DipMetric::Absent);
    }

    #[test]
    fn dip_sits_at_two_photon_resonance() {
        let sys = LambdaSystem {
            delta_c: 2.0,
            ..base_system()
        };
        // odd point count with delta_c on the grid
        let grid: Vec<f64> = (0..2001).map(|k| -10.0 + 0.01 * k as f64).collect();
        let curve = transparency_scan(&sys, &grid).unwrap();
        match dip_metric(&curve) {
            DipMetric::Dip { center, .. } => assert_abs_diff_eq!(center, 2.0, epsilon = 1e-12),
            DipMetric::Absent => panic!("expected a dip"),
        }
    }

    #[test]
    fn lossless_dip_depth_is_total() {
        let curve = transparency_scan(&base_system(), &scan_grid(1.0, 2001)).unwrap();
        match dip_metric(&curve) {
            DipMetric::Dip { center, depth_fraction } => {
                assert_abs_diff_eq!(center, 0.0, epsilon = 1e-12);
                assert!(depth_fraction > 1.0 - 1e-9, "depth {depth_fraction}");
            }
            DipMetric::Absent => panic!("expected a dip"),
        }
    }

    #[test]
    fn weak_decoherence_dip_depth_exceeds_ninety_percent() {
        let sys = LambdaSystem {
            gamma_2: 1e-3,
            ..base_system()
        };
        let curve = transparency_scan(&sys, &scan_grid(1.0, 2001)).unwrap();
        match dip_metric(&curve) {
            DipMetric::Dip { depth_fraction, .. } => {
                assert!(depth_fraction > 0.9, "depth {depth_fraction}")
            }
            DipMetric::Absent => panic!("expected a dip"),
        }
    }

    #[test]
    fn dip_depth_decreases_with_decoherence() {
        let mut last_depth = f64::INFINITY;
        for gamma_2 in [1e-4, 1e-3, 1e-2, 1e-1] {
            let sys = LambdaSystem {
                gamma_2,
                ..base_system()
            };
            let curve = transparency_scan(&sys, &scan_grid(1.0, 2001)).unwrap();
            let depth = match dip_metric(&curve) {
                DipMetric::Dip { depth_fraction, .. } => depth_fraction,
                DipMetric::Absent => 0.0,
            };
            assert!(
                depth < last_depth,
                "depth should shrink with gamma_2: {depth} !< {last_depth}"
            );
            last_depth = depth;
        }
    }

    #[test]
    fn two_level_limit_recovers_the_lorentzian_pointwise() {
        let bare = LambdaSystem {
            rabi_c: 0.0,
            ..base_system()
        };
        for delta_p in scan_grid(1.0, 401) {
            let sys = LambdaSystem { delta_p, ..bare };
            let got = probe_response(&sys).unwrap().im;
            let half = 0.5 * sys.gamma_3;
            let expect = 0.5 * sys.rabi_p * half / (delta_p * delta_p + half * half);
            assert_abs_diff_eq!(got, expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(LambdaSystem {
            gamma_3: 0.0,
            ..base_system()
        }
        .validate()
        .is_err());
        assert!(LambdaSystem {
            gamma_2: -1.0,
            ..base_system()
        }
        .validate()
        .is_err());
        assert!(LambdaSystem {
            rabi_p: 0.2,
            ..base_system()
        }
        .validate()
        .is_err());
        assert!(LambdaSystem {
            rabi_c: -0.1,
            ..base_system()
        }
        .validate()
        .is_err());
    }
}
