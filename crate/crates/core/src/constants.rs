//! Physical constants (CODATA 2018) and conversions between lengths and
//! particle-physics energy scales.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Planck constant, in J s. Exact since the 2019 SI redefinition.
pub const H_PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant, in J s.
pub const HBAR: f64 = H_PLANCK / (2.0 * core::f64::consts::PI);

/// Elementary charge, in C. Exact.
pub const E_CHARGE: f64 = 1.602_176_634e-19;

/// Speed of light in vacuum, in m/s. Exact.
pub const C_LIGHT: f64 = 2.997_924_58e8;

/// Electron mass, in kg.
pub const M_ELECTRON: f64 = 9.109_383_701_5e-31;

/// Magnetic flux quantum, in T m^2. Rounded from h/(2e) = 2.0678e-15; all
/// flux ratios in this crate use this rounded value.
pub const FLUX_QUANTUM: f64 = 2.06e-15;

/// Electron Compton wavelength h/(m_e c), in m.
pub const LAMBDA_E: f64 = H_PLANCK / (M_ELECTRON * C_LIGHT);

/// hbar c expressed in GeV m.
pub const HBAR_C_GEV_M: f64 = HBAR * C_LIGHT / (E_CHARGE * 1.0e9);

/// The constants above, widened to the working scalar type.
///
/// All fields are set in [`PhysicalConstants::si`] and never mutated
/// afterwards; two default-constructed instances compare equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants<T> {
    /// Reduced Planck constant, in J s.
    pub hbar: T,
    /// Elementary charge, in C.
    pub e_charge: T,
    /// Speed of light in vacuum, in m/s.
    pub c: T,
    /// Electron mass, in kg.
    pub m_e: T,
    /// Magnetic flux quantum, in T m^2.
    pub phi0: T,
    /// Electron Compton wavelength, in m.
    pub lambda_e: T,
    /// hbar c, in GeV m.
    pub hbar_c_gev_m: T,
}

impl<T: Scalar> PhysicalConstants<T> {
    pub fn si() -> Self {
        Self {
            hbar: T::lit(HBAR),
            e_charge: T::lit(E_CHARGE),
            c: T::lit(C_LIGHT),
            m_e: T::lit(M_ELECTRON),
            phi0: T::lit(FLUX_QUANTUM),
            lambda_e: T::lit(LAMBDA_E),
            hbar_c_gev_m: T::lit(HBAR_C_GEV_M),
        }
    }

    /// hbar c, in TeV m.
    pub fn hbar_c_tev_m(&self) -> T {
        self.hbar_c_gev_m / T::lit(1.0e3)
    }

    /// Converts a length in m to an inverse energy in GeV^-1.
    pub fn length_to_inverse_energy(&self, length_m: T) -> Result<T> {
        if !length_m.is_finite() || length_m < T::zero() {
            return Err(Error::domain("length must be finite and non-negative"));
        }
        Ok(length_m / self.hbar_c_gev_m)
    }

    /// Converts an inverse energy in GeV^-1 back to a length in m.
    pub fn inverse_energy_to_length(&self, inv_gev: T) -> Result<T> {
        if !inv_gev.is_finite() || inv_gev < T::zero() {
            return Err(Error::domain(
                "inverse energy must be finite and non-negative",
            ));
        }
        Ok(inv_gev * self.hbar_c_gev_m)
    }

    /// Energy scale in TeV probed by a noncommutative length sqrt(theta) in m.
    pub fn sqrt_theta_to_energy_scale(&self, sqrt_theta_m: T) -> Result<T> {
        if !sqrt_theta_m.is_finite() || sqrt_theta_m <= T::zero() {
            return Err(Error::domain("sqrt(theta) must be finite and positive"));
        }
        Ok(self.hbar_c_tev_m() / sqrt_theta_m)
    }

    /// Noncommutative length sqrt(theta) in m probed at an energy scale in TeV.
    pub fn energy_scale_to_sqrt_theta(&self, energy_tev: T) -> Result<T> {
        if !energy_tev.is_finite() || energy_tev <= T::zero() {
            return Err(Error::domain("energy scale must be finite and positive"));
        }
        Ok(self.hbar_c_tev_m() / energy_tev)
    }
}
