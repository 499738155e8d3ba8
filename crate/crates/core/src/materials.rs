//! Semiconductor material records, the built-in database, and crystallite
//! configurations.
//!
//! A [`Material`] carries the eight bulk parameters needed by the closed
//! forms; a [`CrystalliteConfig`] pairs one with a sphere radius. Everything
//! is immutable after construction and validated up front.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use crate::decoherence;
use crate::error::{Error, Result};

/// Bulk semiconductor parameters.
///
/// Units: energies in eV, lengths in Angstrom, effective masses in units of
/// the free-electron mass, `epsilon` dimensionless (static dielectric
/// constant), `dipole_ratio` in eV with the meaning |mu_cv|^2 / (epsilon a_B^3).
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    /// Band gap E_g, eV.
    pub e_gap: f64,
    /// Exciton binding energy, eV.
    pub e_bind: f64,
    /// Bulk exciton Bohr radius, Angstrom.
    pub a_bohr: f64,
    /// |mu_cv|^2 / (epsilon a_B^3), eV.
    pub dipole_ratio: f64,
    /// Static dielectric constant (dimensionless).
    pub epsilon: f64,
    /// Electron effective mass, units of m0.
    pub m_e: f64,
    /// Hole effective mass, units of m0.
    pub m_h: f64,
}

impl Material {
    /// Squared interband transition dipole moment |mu_cv|^2, eV Angstrom^3.
    pub fn mu_cv_sq(&self) -> f64 {
        self.dipole_ratio * self.epsilon * self.a_bohr.powi(3)
    }

    /// Center-of-mass mass M = m_e + m_h, units of m0.
    pub fn total_mass(&self) -> f64 {
        self.m_e + self.m_h
    }

    /// Check every field invariant, naming offending fields on failure.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("E_g_eV", self.e_gap),
            ("E_b_exc_eV", self.e_bind),
            ("a_B_angstrom", self.a_bohr),
            ("dipole_ratio_meV", self.dipole_ratio),
            ("epsilon", self.epsilon),
            ("m_e", self.m_e),
            ("m_h", self.m_h),
        ];
        for (field, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::MaterialInvariant {
                    fields: field.to_string(),
                    message: format!("must be strictly positive and finite, got {value}"),
                });
            }
        }
        if self.e_bind >= self.e_gap {
            return Err(Error::MaterialInvariant {
                fields: "E_b_exc_eV, E_g_eV".to_string(),
                message: format!(
                    "binding energy ({} eV) must be below the band gap ({} eV)",
                    self.e_bind, self.e_gap
                ),
            });
        }
        let mu_sq = self.mu_cv_sq();
        if !mu_sq.is_finite() || mu_sq <= 0.0 {
            return Err(Error::MaterialInvariant {
                fields: "dipole_ratio_meV, epsilon, a_B_angstrom".to_string(),
                message: format!("derived |mu_cv|^2 = {mu_sq} is not positive and finite"),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Material {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: E_g = {} eV, E_b_exc = {} eV, a_B = {} A, \
             |mu_cv|^2/(eps a_B^3) = {} eV, eps = {}, m_e = {} m0, m_h = {} m0",
            self.name,
            self.e_gap,
            self.e_bind,
            self.a_bohr,
            self.dipole_ratio,
            self.epsilon,
            self.m_e,
            self.m_h
        )
    }
}

/// The built-in material table, ordered alphabetically by name.
pub fn builtin_materials() -> Vec<Material> {
    vec![
        Material {
            name: "CdS".to_string(),
            e_gap: 2.583,
            e_bind: 0.030,
            a_bohr: 30.0,
            dipole_ratio: 0.25e-3,
            epsilon: 8.0,
            m_e: 0.25,
            m_h: 1.6,
        },
        Material {
            name: "GaAs".to_string(),
            e_gap: 1.52,
            e_bind: 0.005,
            a_bohr: 100.0,
            dipole_ratio: 0.025e-3,
            epsilon: 12.53,
            m_e: 0.0665,
            m_h: 0.45,
        },
    ]
}

/// Look up a built-in material by case-insensitive name.
pub fn builtin_material(name: &str) -> Option<Material> {
    builtin_materials()
        .into_iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
}

const MATERIAL_KEYS: [&str; 8] = [
    "name",
    "E_g_eV",
    "E_b_exc_eV",
    "a_B_angstrom",
    "dipole_ratio_meV",
    "epsilon",
    "m_e",
    "m_h",
];

/// Parse a material from the flat `key = value` text format.
///
/// `#` starts a comment; keys outside the documented set are rejected.
pub fn parse_material(text: &str) -> Result<Material> {
    let mut name: Option<String> = None;
    let mut values: [Option<f64>; 7] = [None; 7];

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::MaterialParse {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if !MATERIAL_KEYS.contains(&key) {
            return Err(Error::UnknownKey {
                key: key.to_string(),
                line: line_no,
            });
        }
        if key == "name" {
            if value.is_empty() {
                return Err(Error::MaterialParse {
                    line: line_no,
                    message: "empty material name".to_string(),
                });
            }
            name = Some(value.to_string());
            continue;
        }
        let parsed: f64 = value.parse().map_err(|_| Error::MaterialParse {
            line: line_no,
            message: format!("cannot parse `{value}` as a number for key `{key}`"),
        })?;
        let slot = MATERIAL_KEYS.iter().position(|k| *k == key).unwrap() - 1;
        values[slot] = Some(parsed);
    }

    let name = name.ok_or_else(|| Error::MissingKey {
        key: "name".to_string(),
    })?;
    let mut numeric = [0.0; 7];
    for (i, v) in values.iter().enumerate() {
        numeric[i] = v.ok_or_else(|| Error::MissingKey {
            key: MATERIAL_KEYS[i + 1].to_string(),
        })?;
    }

    let material = Material {
        name,
        e_gap: numeric[0],
        e_bind: numeric[1],
        a_bohr: numeric[2],
        dipole_ratio: numeric[3] * 1e-3, // file carries meV
        epsilon: numeric[4],
        m_e: numeric[5],
        m_h: numeric[6],
    };
    material.validate()?;
    Ok(material)
}

/// Load and validate a material file.
pub fn load_material(path: &Path) -> Result<Material> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::MaterialParse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_material(&text)
}

/// A material plus the crystallite radius it is embedded in.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalliteConfig {
    pub material: Material,
    /// Sphere radius R0, Angstrom.
    pub r0: f64,
}

impl CrystalliteConfig {
    pub fn new(material: Material, r0: f64) -> Result<Self> {
        material.validate()?;
        if !r0.is_finite() || r0 <= 0.0 {
            return Err(Error::Domain(format!(
                "crystallite radius must be positive and finite, got {r0}"
            )));
        }
        Ok(Self { material, r0 })
    }

    /// Crystallite volume (4/3) pi R0^3, Angstrom^3.
    ///
    /// The volume cancels out of every closed form; it appears explicitly
    /// only in the microscopic coupling construction.
    pub fn volume(&self) -> f64 {
        4.0 / 3.0 * PI * self.r0.powi(3)
    }
}

/// Advisory check of the size window the model is valid in.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub ratio_r0_over_a_bohr: f64,
    pub ratio_r0_over_lambda: f64,
    pub regime_ok: bool,
    pub messages: Vec<String>,
}

/// Default lower bound on R0 / a_B for "much larger than the Bohr radius".
pub const DEFAULT_SIZE_THRESHOLD: f64 = 5.0;

/// Check the regime condition a_B << R0 <= lambda with the default threshold.
///
/// The check is advisory: out-of-regime configurations still evaluate, they
/// just carry warnings.
pub fn check_validity(cfg: &CrystalliteConfig) -> ValidityReport {
    check_validity_with_threshold(cfg, DEFAULT_SIZE_THRESHOLD)
}

/// As [`check_validity`] with an explicit R0 / a_B threshold.
pub fn check_validity_with_threshold(cfg: &CrystalliteConfig, threshold_low: f64) -> ValidityReport {
    let ratio_a = cfg.r0 / cfg.material.a_bohr;
    let lambda = decoherence::wavelength(cfg);
    let ratio_l = cfg.r0 / lambda;
    let mut messages = Vec::new();
    if ratio_a < threshold_low {
        messages.push(format!(
            "R0 is only {ratio_a:.3} * a_B; the bosonic exciton picture assumes R0 >> a_B \
             (threshold {threshold_low})"
        ));
    }
    if ratio_l > 1.0 {
        messages.push(format!(
            "R0 exceeds the transition wavelength ({:.1} A > {lambda:.1} A); \
             retardation and polariton effects become relevant",
            cfg.r0
        ));
    }
    ValidityReport {
        ratio_r0_over_a_bohr: ratio_a,
        ratio_r0_over_lambda: ratio_l,
        regime_ok: messages.is_empty(),
        messages,
    }
}
