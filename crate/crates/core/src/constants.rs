//! Physical constants (CODATA 2018 values).
//!
//! These are fixed at compile time so that every run of the simulator is
//! bit-reproducible.

/// Speed of light in vacuum, m/s (exact).
pub const C: f64 = 299_792_458.0;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Newtonian gravitational constant, m³/(kg·s²).
pub const G: f64 = 6.674_30e-11;

/// Standard gravity, m/s².
pub const G0: f64 = 9.806_65;

/// The constant set as a value, for code that wants to pass it around or
/// print it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub c: f64,
    pub hbar: f64,
    pub big_g: f64,
    pub g0: f64,
}

impl Constants {
    pub const CODATA: Constants = Constants {
        c: C,
        hbar: HBAR,
        big_g: G,
        g0: G0,
    };
}

impl Default for Constants {
    fn default() -> Self {
        Self::CODATA
    }
}
