//! Pinned physical constants for the eV / Angstrom / second unit system.
//!
//! All derived quantities in this crate trace back to this one table, so
//! golden test values stay stable regardless of future constant revisions.
//! The speed of light is *derived* from `HBAR_C / HBAR` rather than pinned
//! independently; this keeps the unit system exactly self-consistent.

/// Snapshot of the fundamental constants used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, eV s.
    pub hbar: f64,
    /// hbar * c, eV Angstrom.
    pub hbar_c: f64,
    /// Speed of light, Angstrom / s (equal to `hbar_c / hbar` by construction).
    pub c: f64,
    /// hbar^2 / (2 m0) for the free-electron mass m0, eV Angstrom^2.
    /// The electron rest mass only ever enters through this combination.
    pub hbar2_over_2m0: f64,
}

/// The constants table used by every computation in this crate.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    hbar: 6.582119569e-16,
    hbar_c: 1973.269804,
    c: 1973.269804 / 6.582119569e-16,
    hbar2_over_2m0: 3.80998,
};

/// Seconds per picosecond.
pub const SECONDS_PER_PICOSECOND: f64 = 1e-12;

impl PhysicalConstants {
    /// Canonical text form of the table, hashed into output manifests.
    pub fn canonical_string(&self) -> String {
        format!(
            "hbar={:.17e};hbar_c={:.17e};c={:.17e};hbar2_over_2m0={:.17e}",
            self.hbar, self.hbar_c, self.c, self.hbar2_over_2m0
        )
    }
}
