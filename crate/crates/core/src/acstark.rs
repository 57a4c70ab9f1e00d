//! AC-Stark weighting coefficients.
//!
//! An atom in an oscillating electric field E0 cos(Omega t) carries both a
//! linear (dipole) and a quadratic (polarizability) interaction, and its
//! spectral weights take the double-Bessel form
//!
//! ```text
//! C_n = sum_S (-1)^n J_S(beta E0^2 / 8 Omega) J_{n+2S}(d E0 / Omega).
//! ```
//!
//! With the quadratic term absent (beta = 0) only S = 0 survives and C_n
//! collapses to (-1)^n J_n(d E0 / Omega) - the same weighting the scalar
//! potential drive produces with d E0 / Omega in place of e V0 / hbar Omega.
//! This module works in natural units (hbar = 1).

use crate::error::{Error, Result};
use crate::specfun::bessel_j_signed;

/// Field, dipole, and polarizability parameters of the driven atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ACStarkParams {
    /// Electric field amplitude.
    pub e0: f64,
    /// Dipole moment.
    pub d: f64,
    /// Polarizability.
    pub beta: f64,
    /// Angular drive frequency.
    pub omega: f64,
}

impl ACStarkParams {
    pub fn new(e0: f64, d: f64, beta: f64, omega: f64) -> Result<Self> {
        let params = ACStarkParams { e0, d, beta, omega };
        params.validate()?;
        Ok(params)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !self.omega.is_finite() || self.omega <= 0.0 {
            return Err(Error::invalid(
                "omega",
                format!("drive frequency must be positive and finite, got {}", self.omega),
            ));
        }
        for (name, v) in [("e0", self.e0), ("d", self.d), ("beta", self.beta)] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// Argument of the linear-term Bessel factor, d E0 / Omega.
    pub fn linear_argument(&self) -> f64 {
        self.d * self.e0 / self.omega
    }

    /// Argument of the quadratic-term Bessel factor, beta E0^2 / (8 Omega).
    pub fn quadratic_argument(&self) -> f64 {
        self.beta * self.e0 * self.e0 / (8.0 * self.omega)
    }
}

/// S-sum truncation at which the result is converged to better than 1e-12:
/// past the turning point of J_S(beta E0^2 / 8 Omega) the terms die
/// super-exponentially.
pub fn default_s_truncation(params: &ACStarkParams) -> u32 {
    let z = params.quadratic_argument().abs();
    (z + 40.0 * z.cbrt().max(1.0)).ceil() as u32
}

/// The weighting coefficient C_n with the S-sum truncated at |S| <= s_hi.
pub fn c_n(params: &ACStarkParams, n: i32, s_hi: u32) -> Result<f64> {
    params.validate()?;
    if s_hi > crate::specfun::MAX_ORDER as u32 {
        return Err(Error::invalid(
            "s_hi",
            format!("truncation {s_hi} exceeds {}", crate::specfun::MAX_ORDER),
        ));
    }
    let z_quad = params.quadratic_argument();
    let z_lin = params.linear_argument();
    let mut sum = 0.0;
    for s in -(s_hi as i64)..=s_hi as i64 {
        let outer = bessel_j_signed(s as i32, z_quad)?;
        if outer == 0.0 {
            continue;
        }
        let order = n as i64 + 2 * s;
        let order = i32::try_from(order)
            .map_err(|_| Error::invalid("n", format!("combined order {order} out of range")))?;
        sum += outer * bessel_j_signed(order, z_lin)?;
    }
    Ok(if n.unsigned_abs() & 1 == 1 { -sum } else { sum })
}

/// Max over `n_range` of |C_n - (-1)^n J_n(d E0 / Omega)|, the discrepancy
/// against the scalar-drive weighting. Defined only for beta = 0, where it
/// must vanish because J_S(0) = 0 for every S except J_0(0) = 1.
pub fn reduction_residual(
    params: &ACStarkParams,
    n_range: std::ops::RangeInclusive<i32>,
) -> Result<f64> {
    params.validate()?;
    if params.beta != 0.0 {
        return Err(Error::invalid(
            "beta",
            format!("reduction residual requires beta = 0, got {}", params.beta),
        ));
    }
    let s_hi = default_s_truncation(params);
    let z_lin = params.linear_argument();
    let mut worst = 0.0_f64;
    for n in n_range {
        let reference = bessel_j_signed(n, z_lin)?;
        let reference = if n.unsigned_abs() & 1 == 1 {
            -reference
        } else {
            reference
        };
        let residual = (c_n(params, n, s_hi)? - reference).abs();
        worst = worst.max(residual);
    }
    Ok(worst)
}
