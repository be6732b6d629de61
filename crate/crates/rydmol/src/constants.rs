//! CODATA 2018 constants and the derived atomic-unit conversion factors.
//!
//! The primary values are duplicated in `data/constants.toml` so the exact
//! numbers are reviewable outside the source; a test pins the two copies
//! against each other.

/// Version tag recorded in run manifests whenever these constants are used.
pub const CONSTANTS_VERSION: &str = "codata-2018.1";

/// Raw TOML source of the constants table shipped with the crate.
pub const CONSTANTS_TOML: &str = include_str!("../data/constants.toml");

// Primary constants (CODATA 2018).
pub const HARTREE_JOULE: f64 = 4.3597447222071e-18;
pub const PLANCK_JOULE_SECOND: f64 = 6.62607015e-34;
pub const BOHR_RADIUS_METER: f64 = 5.29177210903e-11;
pub const ELEMENTARY_CHARGE_COULOMB: f64 = 1.602176634e-19;
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299792458.0;
pub const BOHR_MAGNETON_JOULE_PER_TESLA: f64 = 9.2740100783e-24;

// Derived conversion factors. Deriving them here instead of freezing decimal
// copies keeps E = h*nu = hbar*omega exact within the table.
pub const HBAR_JOULE_SECOND: f64 = PLANCK_JOULE_SECOND / (2.0 * std::f64::consts::PI);

/// One atomic time unit in seconds (hbar / E_h).
pub const ATOMIC_TIME_SECOND: f64 = HBAR_JOULE_SECOND / HARTREE_JOULE;

/// One Hartree expressed as an ordinary frequency, Hz (E_h / h).
pub const HARTREE_HERTZ: f64 = HARTREE_JOULE / PLANCK_JOULE_SECOND;

/// One atomic electric field unit in V/m (E_h / (e a0)).
pub const ATOMIC_FIELD_VOLT_PER_METER: f64 =
    HARTREE_JOULE / (ELEMENTARY_CHARGE_COULOMB * BOHR_RADIUS_METER);

/// One atomic dipole unit (e a0) in C m.
pub const ATOMIC_DIPOLE_COULOMB_METER: f64 = ELEMENTARY_CHARGE_COULOMB * BOHR_RADIUS_METER;

/// One Debye in C m (1e-21 / c, from the CGS definition 1 D = 1e-18 esu cm).
pub const DEBYE_COULOMB_METER: f64 = 1e-21 / SPEED_OF_LIGHT_M_PER_S;

/// One atomic magnetic induction unit in T (hbar / (e a0^2)).
pub const ATOMIC_MAGNETIC_FIELD_TESLA: f64 =
    HBAR_JOULE_SECOND / (ELEMENTARY_CHARGE_COULOMB * BOHR_RADIUS_METER * BOHR_RADIUS_METER);

/// Bohr magneton as a linear Zeeman coefficient, MHz per Gauss (mu_B / h).
pub const BOHR_MAGNETON_MHZ_PER_GAUSS: f64 =
    BOHR_MAGNETON_JOULE_PER_TESLA / PLANCK_JOULE_SECOND / 1e10;
