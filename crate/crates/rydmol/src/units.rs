//! Conversions between Hartree atomic units and laboratory units.
//!
//! Energy, frequency and angular frequency form one dimension family related
//! by E = h nu = hbar omega; the canonical internal value for that family is
//! the Hartree. Rabi frequencies and interaction strengths are angular
//! frequencies (rad/s) throughout the crate: the scaling laws in
//! [`crate::scales`] only reproduce their documented anchor values under that
//! reading.

use crate::constants as k;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Energy,
    Frequency,
    AngularFrequency,
    Length,
    ElectricDipole,
    ElectricField,
    MagneticField,
    Time,
    Dimensionless,
}

/// Dimensions that interconvert. Energy, frequency and angular frequency are
/// one family; everything else stands alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    EnergyLike,
    Length,
    ElectricDipole,
    ElectricField,
    MagneticField,
    Time,
    Dimensionless,
}

impl Dimension {
    fn family(self) -> Family {
        match self {
            Dimension::Energy | Dimension::Frequency | Dimension::AngularFrequency => {
                Family::EnergyLike
            }
            Dimension::Length => Family::Length,
            Dimension::ElectricDipole => Family::ElectricDipole,
            Dimension::ElectricField => Family::ElectricField,
            Dimension::MagneticField => Family::MagneticField,
            Dimension::Time => Family::Time,
            Dimension::Dimensionless => Family::Dimensionless,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Hartree,
    Joule,
    Hertz,
    Kilohertz,
    Megahertz,
    Gigahertz,
    RadiansPerSecond,
    Bohr,
    Meter,
    Millimeter,
    Micrometer,
    Nanometer,
    AtomicDipole,
    Debye,
    Kilodebye,
    AtomicField,
    VoltPerMeter,
    VoltPerCentimeter,
    AtomicMagneticField,
    Tesla,
    Gauss,
    AtomicTime,
    Second,
    Microsecond,
    Nanosecond,
    Dimensionless,
}

impl Unit {
    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            Hartree | Joule => Dimension::Energy,
            Hertz | Kilohertz | Megahertz | Gigahertz => Dimension::Frequency,
            RadiansPerSecond => Dimension::AngularFrequency,
            Bohr | Meter | Millimeter | Micrometer | Nanometer => Dimension::Length,
            AtomicDipole | Debye | Kilodebye => Dimension::ElectricDipole,
            AtomicField | VoltPerMeter | VoltPerCentimeter => Dimension::ElectricField,
            AtomicMagneticField | Tesla | Gauss => Dimension::MagneticField,
            AtomicTime | Second | Microsecond | Nanosecond => Dimension::Time,
            Dimensionless => Dimension::Dimensionless,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Unit::*;
        match self {
            Hartree => "E_h",
            Joule => "J",
            Hertz => "Hz",
            Kilohertz => "kHz",
            Megahertz => "MHz",
            Gigahertz => "GHz",
            RadiansPerSecond => "rad/s",
            Bohr => "a0",
            Meter => "m",
            Millimeter => "mm",
            Micrometer => "um",
            Nanometer => "nm",
            AtomicDipole => "e*a0",
            Debye => "D",
            Kilodebye => "kD",
            AtomicField => "E_h/(e*a0)",
            VoltPerMeter => "V/m",
            VoltPerCentimeter => "V/cm",
            AtomicMagneticField => "hbar/(e*a0^2)",
            Tesla => "T",
            Gauss => "G",
            AtomicTime => "t_au",
            Second => "s",
            Microsecond => "us",
            Nanosecond => "ns",
            Dimensionless => "",
        }
    }

    /// Factor turning a value in this unit into the canonical atomic-unit
    /// value of its family (Hartree for the energy family).
    fn au_factor(self) -> f64 {
        use Unit::*;
        match self {
            Hartree => 1.0,
            Joule => 1.0 / k::HARTREE_JOULE,
            Hertz => 1.0 / k::HARTREE_HERTZ,
            Kilohertz => 1e3 / k::HARTREE_HERTZ,
            Megahertz => 1e6 / k::HARTREE_HERTZ,
            Gigahertz => 1e9 / k::HARTREE_HERTZ,
            RadiansPerSecond => k::ATOMIC_TIME_SECOND,
            Bohr => 1.0,
            Meter => 1.0 / k::BOHR_RADIUS_METER,
            Millimeter => 1e-3 / k::BOHR_RADIUS_METER,
            Micrometer => 1e-6 / k::BOHR_RADIUS_METER,
            Nanometer => 1e-9 / k::BOHR_RADIUS_METER,
            AtomicDipole => 1.0,
            Debye => k::DEBYE_COULOMB_METER / k::ATOMIC_DIPOLE_COULOMB_METER,
            Kilodebye => 1e3 * k::DEBYE_COULOMB_METER / k::ATOMIC_DIPOLE_COULOMB_METER,
            AtomicField => 1.0,
            VoltPerMeter => 1.0 / k::ATOMIC_FIELD_VOLT_PER_METER,
            VoltPerCentimeter => 1e2 / k::ATOMIC_FIELD_VOLT_PER_METER,
            AtomicMagneticField => 1.0,
            Tesla => 1.0 / k::ATOMIC_MAGNETIC_FIELD_TESLA,
            Gauss => 1e-4 / k::ATOMIC_MAGNETIC_FIELD_TESLA,
            AtomicTime => 1.0,
            Second => 1.0 / k::ATOMIC_TIME_SECOND,
            Microsecond => 1e-6 / k::ATOMIC_TIME_SECOND,
            Nanosecond => 1e-9 / k::ATOMIC_TIME_SECOND,
            Dimensionless => 1.0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum UnitError {
    #[error("cannot convert {from:?} to {to:?}")]
    DimensionMismatch { from: Dimension, to: Dimension },
}

/// A value tagged with its unit. Immutable; conversions produce new values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    value: f64,
    unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Quantity { value, unit }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn dimension(&self) -> Dimension {
        self.unit.dimension()
    }

    /// Canonical atomic-unit value of this quantity's family. For the energy
    /// family the result is in Hartree regardless of whether the quantity was
    /// given as an energy, a frequency or an angular frequency.
    pub fn to_au(&self) -> f64 {
        self.value * self.unit.au_factor()
    }

    /// Wraps a canonical atomic-unit value back into `target`'s unit.
    pub fn from_au(value_au: f64, target: Unit) -> Self {
        Quantity::new(value_au / target.au_factor(), target)
    }

    pub fn convert(&self, target: Unit) -> Result<Quantity, UnitError> {
        let from = self.unit.dimension();
        let to = target.dimension();
        if from.family() != to.family() {
            return Err(UnitError::DimensionMismatch { from, to });
        }
        Ok(Quantity::from_au(self.to_au(), target))
    }

    pub fn hartree(value: f64) -> Self {
        Quantity::new(value, Unit::Hartree)
    }
    pub fn megahertz(value: f64) -> Self {
        Quantity::new(value, Unit::Megahertz)
    }
    pub fn gigahertz(value: f64) -> Self {
        Quantity::new(value, Unit::Gigahertz)
    }
    pub fn rad_per_s(value: f64) -> Self {
        Quantity::new(value, Unit::RadiansPerSecond)
    }
    pub fn bohr(value: f64) -> Self {
        Quantity::new(value, Unit::Bohr)
    }
    pub fn nanometers(value: f64) -> Self {
        Quantity::new(value, Unit::Nanometer)
    }
    pub fn micrometers(value: f64) -> Self {
        Quantity::new(value, Unit::Micrometer)
    }
    pub fn debye(value: f64) -> Self {
        Quantity::new(value, Unit::Debye)
    }
    pub fn gauss(value: f64) -> Self {
        Quantity::new(value, Unit::Gauss)
    }
    pub fn seconds(value: f64) -> Self {
        Quantity::new(value, Unit::Second)
    }
    pub fn microseconds(value: f64) -> Self {
        Quantity::new(value, Unit::Microsecond)
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.unit == Unit::Dimensionless {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} {}", self.value, self.unit.symbol())
        }
    }
}

/// All units, for exhaustive round-trip testing.
pub const ALL_UNITS: [Unit; 26] = [
    Unit::Hartree,
    Unit::Joule,
    Unit::Hertz,
    Unit::Kilohertz,
    Unit::Megahertz,
    Unit::Gigahertz,
    Unit::RadiansPerSecond,
    Unit::Bohr,
    Unit::Meter,
    Unit::Millimeter,
    Unit::Micrometer,
    Unit::Nanometer,
    Unit::AtomicDipole,
    Unit::Debye,
    Unit::Kilodebye,
    Unit::AtomicField,
    Unit::VoltPerMeter,
    Unit::VoltPerCentimeter,
    Unit::AtomicMagneticField,
    Unit::Tesla,
    Unit::Gauss,
    Unit::AtomicTime,
    Unit::Second,
    Unit::Microsecond,
    Unit::Nanosecond,
    Unit::Dimensionless,
];

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn debye_in_atomic_units() {
        let d = Quantity::debye(1.0).convert(Unit::AtomicDipole).unwrap();
        assert_relative_eq!(d.value(), 0.393430, max_relative = 1e-5);
    }

    #[test]
    fn atomic_field_in_volts_per_cm() {
        let f = Quantity::new(1.0, Unit::AtomicField)
            .convert(Unit::VoltPerCentimeter)
            .unwrap();
        assert_relative_eq!(f.value(), 5.142e9, max_relative = 1e-3);
        let back = f.convert(Unit::AtomicField).unwrap();
        assert_relative_eq!(back.value(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn zero_converts_to_zero() {
        for unit in ALL_UNITS {
            for target in ALL_UNITS {
                if unit.dimension().family() == target.dimension().family() {
                    assert_eq!(Quantity::new(0.0, unit).convert(target).unwrap().value(), 0.0);
                }
            }
        }
    }

    #[test]
    fn planck_relations_exact() {
        // E = h*nu and E = hbar*omega through the table: 1 Hartree maps to
        // HARTREE_HERTZ and to 1/ATOMIC_TIME_SECOND rad/s, up to one rounding
        // of the stored reciprocal factor.
        let one = Quantity::hartree(1.0);
        assert_relative_eq!(
            one.convert(Unit::Hertz).unwrap().value(),
            crate::constants::HARTREE_HERTZ,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            one.convert(Unit::RadiansPerSecond).unwrap().value(),
            1.0 / crate::constants::ATOMIC_TIME_SECOND,
            max_relative = 1e-15
        );
        // omega = 2 pi nu.
        let omega = Quantity::new(1.0, Unit::Hertz)
            .convert(Unit::RadiansPerSecond)
            .unwrap();
        assert_relative_eq!(omega.value(), 2.0 * std::f64::consts::PI, max_relative = 1e-14);
    }

    #[test]
    fn incompatible_dimensions_rejected() {
        let err = Quantity::bohr(1.0).convert(Unit::Tesla).unwrap_err();
        assert_eq!(
            err,
            UnitError::DimensionMismatch {
                from: Dimension::Length,
                to: Dimension::MagneticField
            }
        );
    }

    fn same_family_pairs() -> Vec<(Unit, Unit)> {
        let mut pairs = Vec::new();
        for a in ALL_UNITS {
            for b in ALL_UNITS {
                if a.dimension().family() == b.dimension().family() {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    proptest! {
        #[test]
        fn round_trips(value in -1e12f64..1e12, k in 0usize..10_000) {
            let pairs = same_family_pairs();
            let (a, b) = pairs[k % pairs.len()];
            let q = Quantity::new(value, a);
            let back = q.convert(b).unwrap().convert(a).unwrap();
            prop_assert!((back.value() - value).abs() <= 1e-12 * value.abs());
        }
    }
}
