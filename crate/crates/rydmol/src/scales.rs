//! Closed-form scaling laws for molecule-molecule and Rydberg-mediated
//! interactions: direct dipole-dipole strength and range, lattice capacity,
//! blockade radii, and the dipole moment of a Rydberg-molecule pair state.
//!
//! Every law is an exact power law evaluated in atomic units; inputs and
//! outputs are [`Quantity`] values so callers choose their unit paths.

use crate::units::{Quantity, Unit, UnitError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScaleError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Unit(#[from] UnitError),
}

/// Validated input bundle for the full scaling-law table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingInput {
    pub mu: Quantity,
    pub r: Quantity,
    pub t_gate: Quantity,
    pub omega: Quantity,
    pub n: u32,
    pub a_coeff: f64,
    pub b_coeff: f64,
}

impl ScalingInput {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        mu: Quantity,
        r: Quantity,
        t_gate: Quantity,
        omega: Quantity,
        n: u32,
        a_coeff: f64,
        b_coeff: f64,
    ) -> Result<Self, ScaleError> {
        for (name, q, dim) in [
            ("mu", mu, Unit::AtomicDipole),
            ("r", r, Unit::Bohr),
            ("t_gate", t_gate, Unit::AtomicTime),
            ("omega", omega, Unit::RadiansPerSecond),
        ] {
            let v = q.convert(dim)?.value();
            if !(v >= 0.0) {
                return Err(ScaleError::Domain(format!("{name} must be non-negative")));
            }
        }
        if !(0.0..=1.0).contains(&a_coeff) || !(0.0..=1.0).contains(&b_coeff) {
            return Err(ScaleError::Domain(
                "mixing amplitudes must lie in [0, 1]".into(),
            ));
        }
        if a_coeff * a_coeff + b_coeff * b_coeff > 1.0 + 1e-12 {
            return Err(ScaleError::Domain(
                "mixing amplitudes must satisfy a^2 + b^2 <= 1".into(),
            ));
        }
        Ok(ScalingInput {
            mu,
            r,
            t_gate,
            omega,
            n,
            a_coeff,
            b_coeff,
        })
    }
}

/// Direct dipole-dipole interaction strength V = mu^2 / (hbar r^3), returned
/// as an angular frequency in rad/s.
pub fn direct_ddi_strength(mu: Quantity, r: Quantity) -> Result<Quantity, ScaleError> {
    let mu_au = mu.convert(Unit::AtomicDipole)?.value();
    let r_au = r.convert(Unit::Bohr)?.value();
    if !(r_au > 0.0) {
        return Err(ScaleError::Domain("separation must be positive".into()));
    }
    let v_au = mu_au * mu_au / (r_au * r_au * r_au);
    Ok(Quantity::from_au(v_au, Unit::RadiansPerSecond))
}

/// Distance at which a dipole-dipole gate of duration `t_gate` accumulates
/// its phase: R = (mu^2 t / (pi hbar))^(1/3).
pub fn gate_range(mu: Quantity, t_gate: Quantity) -> Result<Quantity, ScaleError> {
    let mu_au = mu.convert(Unit::AtomicDipole)?.value();
    let t_au = t_gate.convert(Unit::AtomicTime)?.value();
    if !(t_au > 0.0) {
        return Err(ScaleError::Domain("gate time must be positive".into()));
    }
    let r_au = (mu_au * mu_au * t_au / std::f64::consts::PI).cbrt();
    Ok(Quantity::from_au(r_au, Unit::Bohr))
}

/// Number of lattice sites across a beam: floor((d / (lambda/2))^2).
pub fn lattice_capacity(
    beam_diameter: Quantity,
    lattice_wavelength: Quantity,
) -> Result<u64, ScaleError> {
    let d = beam_diameter.convert(Unit::Meter)?.value();
    let lambda = lattice_wavelength.convert(Unit::Meter)?.value();
    if !(d > 0.0 && lambda > 0.0) {
        return Err(ScaleError::Domain(
            "beam diameter and lattice wavelength must be positive".into(),
        ));
    }
    let per_axis = d / (lambda / 2.0);
    Ok((per_axis * per_axis).floor() as u64)
}

/// Van der Waals blockade radius R_b = (n^11 / Omega)^(1/6) in a.u., with
/// the C6 coefficient estimated by its n^11 scaling.
pub fn vdw_blockade_radius(n: u32, omega: Quantity) -> Result<Quantity, ScaleError> {
    let omega_au = positive_omega_au(omega)?;
    if n < 10 {
        return Err(ScaleError::Domain(format!(
            "n = {n} is below the Rydberg scaling regime (n >= 10)"
        )));
    }
    let c6 = (n as f64).powi(11);
    Ok(Quantity::from_au((c6 / omega_au).powf(1.0 / 6.0), Unit::Bohr))
}

/// Dipole-dipole blockade radius R_b = ((n^2)^2 / Omega)^(1/3) in a.u.,
/// with the Rydberg pair dipole estimated as n^2.
pub fn ddi_blockade_radius(n: u32, omega: Quantity) -> Result<Quantity, ScaleError> {
    let omega_au = positive_omega_au(omega)?;
    if n < 10 {
        return Err(ScaleError::Domain(format!(
            "n = {n} is below the Rydberg scaling regime (n >= 10)"
        )));
    }
    let mu = (n as f64).powi(2);
    Ok(Quantity::from_au((mu * mu / omega_au).cbrt(), Unit::Bohr))
}

/// Dipole moment of the mixed Rydberg-molecule state, d = 1.3 a^2 n^2 a.u.
pub fn rydberg_molecule_dipole(a_coeff: f64, n: u32) -> Result<Quantity, ScaleError> {
    if !(0.0..=1.0).contains(&a_coeff) {
        return Err(ScaleError::Domain(
            "mixing amplitude must lie in [0, 1]".into(),
        ));
    }
    let d_au = 1.3 * a_coeff * a_coeff * (n as f64).powi(2);
    Ok(Quantity::from_au(d_au, Unit::AtomicDipole))
}

fn positive_omega_au(omega: Quantity) -> Result<f64, ScaleError> {
    let omega_au = omega.convert(Unit::RadiansPerSecond)?.to_au();
    if !(omega_au > 0.0) {
        return Err(ScaleError::Domain("Rabi frequency must be positive".into()));
    }
    Ok(omega_au)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn two_pi_khz(f: f64) -> Quantity {
        Quantity::rad_per_s(2.0 * PI * f * 1e3)
    }

    #[test]
    fn ddi_strength_anchor() {
        let v = direct_ddi_strength(Quantity::debye(1.0), Quantity::nanometers(100.0)).unwrap();
        assert_relative_eq!(v.value(), 948_252.157, max_relative = 1e-6);
        // Within factor 2 of the order-of-magnitude anchor 1e6 1/s.
        assert!(v.value() > 5e5 && v.value() < 2e6);
        let zero = direct_ddi_strength(Quantity::debye(0.0), Quantity::nanometers(100.0)).unwrap();
        assert_eq!(zero.value(), 0.0);
    }

    #[test]
    fn ddi_strength_is_cubic() {
        let near = direct_ddi_strength(Quantity::debye(1.0), Quantity::nanometers(50.0)).unwrap();
        let far = direct_ddi_strength(Quantity::debye(1.0), Quantity::nanometers(100.0)).unwrap();
        assert_relative_eq!(near.value() / far.value(), 8.0, max_relative = 1e-12);
    }

    #[test]
    fn gate_range_anchor() {
        let r = gate_range(Quantity::debye(1.0), Quantity::microseconds(1.0)).unwrap();
        assert_relative_eq!(r.value(), 1267.6232, max_relative = 1e-6);
        let r_nm = r.convert(Unit::Nanometer).unwrap().value();
        assert_relative_eq!(r_nm, 67.0797325, max_relative = 1e-6);
        assert!(r_nm > 50.0 && r_nm < 200.0);
        let r8 = gate_range(Quantity::debye(1.0), Quantity::microseconds(8.0)).unwrap();
        assert_relative_eq!(r8.value() / r.value(), 2.0, max_relative = 1e-12);
    }

    #[test]
    fn lattice_capacity_anchors() {
        let mm = Quantity::new(1.0, Unit::Millimeter);
        assert_eq!(lattice_capacity(mm, Quantity::nanometers(1000.0)).unwrap(), 4_000_000);
        assert_eq!(lattice_capacity(mm, Quantity::nanometers(600.0)).unwrap(), 11_111_111);
        let half_wave = Quantity::nanometers(500.0);
        assert_eq!(lattice_capacity(half_wave, Quantity::nanometers(1000.0)).unwrap(), 1);
    }

    #[test]
    fn blockade_radii_anchors() {
        let omega = two_pi_khz(100.0);
        let vdw = vdw_blockade_radius(50, omega).unwrap();
        assert_relative_eq!(vdw.value(), 82_758.481, max_relative = 1e-6);
        assert_relative_eq!(
            vdw.convert(Unit::Micrometer).unwrap().value(),
            4.3793902,
            max_relative = 1e-6
        );
        let ddi = ddi_blockade_radius(50, omega).unwrap();
        assert_relative_eq!(ddi.value(), 743_638.186, max_relative = 1e-6);
        assert_relative_eq!(
            ddi.convert(Unit::Micrometer).unwrap().value(),
            39.3516381,
            max_relative = 1e-6
        );
        assert_relative_eq!(ddi.value() / vdw.value(), 8.9856, max_relative = 1e-3);
    }

    #[test]
    fn blockade_radii_sixth_and_third_root_laws() {
        let omega = two_pi_khz(100.0);
        let omega64 = two_pi_khz(6400.0);
        let omega8 = two_pi_khz(800.0);
        let v1 = vdw_blockade_radius(50, omega).unwrap().value();
        let v2 = vdw_blockade_radius(50, omega64).unwrap().value();
        assert_relative_eq!(v1 / v2, 2.0, max_relative = 1e-12);
        let d1 = ddi_blockade_radius(50, omega).unwrap().value();
        let d2 = ddi_blockade_radius(50, omega8).unwrap().value();
        assert_relative_eq!(d1 / d2, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn rydberg_molecule_dipole_anchor() {
        let d = rydberg_molecule_dipole(0.6, 25).unwrap();
        assert_relative_eq!(d.value(), 292.5, max_relative = 1e-12);
        assert_relative_eq!(
            d.convert(Unit::Debye).unwrap().value(),
            743.4608434,
            max_relative = 1e-6
        );
        assert_eq!(rydberg_molecule_dipole(0.0, 50).unwrap().value(), 0.0);
    }

    #[test]
    fn power_law_exponents_from_log_log_slopes() {
        let slope = |y1: f64, y2: f64, x1: f64, x2: f64| (y2.ln() - y1.ln()) / (x2.ln() - x1.ln());

        let mu = Quantity::debye(1.3);
        let v = |r: f64| direct_ddi_strength(mu, Quantity::nanometers(r)).unwrap().value();
        assert_relative_eq!(slope(v(70.0), v(190.0), 70.0, 190.0), -3.0, epsilon = 1e-10);

        let g = |t: f64| gate_range(mu, Quantity::microseconds(t)).unwrap().value();
        assert_relative_eq!(slope(g(0.3), g(7.0), 0.3, 7.0), 1.0 / 3.0, epsilon = 1e-10);

        let w = |f: f64| vdw_blockade_radius(50, two_pi_khz(f)).unwrap().value();
        assert_relative_eq!(slope(w(20.0), w(900.0), 20.0, 900.0), -1.0 / 6.0, epsilon = 1e-10);

        let dd = |f: f64| ddi_blockade_radius(50, two_pi_khz(f)).unwrap().value();
        assert_relative_eq!(slope(dd(20.0), dd(900.0), 20.0, 900.0), -1.0 / 3.0, epsilon = 1e-10);

        let dn = |n: f64| 1.3 * 0.36 * n * n;
        assert_relative_eq!(slope(dn(20.0), dn(60.0), 20.0, 60.0), 2.0, epsilon = 1e-10);
    }

    #[test]
    fn unit_path_independence() {
        let si = direct_ddi_strength(Quantity::debye(1.0), Quantity::nanometers(100.0)).unwrap();
        let au = direct_ddi_strength(
            Quantity::debye(1.0).convert(Unit::AtomicDipole).unwrap(),
            Quantity::nanometers(100.0).convert(Unit::Bohr).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(si.value(), au.value(), max_relative = 1e-10);

        let t_si = gate_range(Quantity::debye(1.0), Quantity::microseconds(1.0)).unwrap();
        let t_au = gate_range(
            Quantity::debye(1.0),
            Quantity::microseconds(1.0).convert(Unit::AtomicTime).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(t_si.value(), t_au.value(), max_relative = 1e-10);
    }

    #[test]
    fn domain_errors() {
        assert!(direct_ddi_strength(Quantity::debye(1.0), Quantity::nanometers(0.0)).is_err());
        assert!(gate_range(Quantity::debye(1.0), Quantity::microseconds(0.0)).is_err());
        assert!(vdw_blockade_radius(5, two_pi_khz(100.0)).is_err());
        assert!(vdw_blockade_radius(50, Quantity::rad_per_s(0.0)).is_err());
    }

    #[test]
    fn scaling_input_validation() {
        let ok = ScalingInput::new(
            Quantity::debye(1.0),
            Quantity::nanometers(100.0),
            Quantity::microseconds(1.0),
            two_pi_khz(100.0),
            50,
            0.6,
            0.8,
        );
        assert!(ok.is_ok());
        let too_much_weight = ScalingInput::new(
            Quantity::debye(1.0),
            Quantity::nanometers(100.0),
            Quantity::microseconds(1.0),
            two_pi_khz(100.0),
            50,
            0.9,
            0.9,
        );
        assert!(too_much_weight.is_err());
        let negative = ScalingInput::new(
            Quantity::debye(-1.0),
            Quantity::nanometers(100.0),
            Quantity::microseconds(1.0),
            two_pi_khz(100.0),
            50,
            0.6,
            0.8,
        );
        assert!(negative.is_err());
    }
}
