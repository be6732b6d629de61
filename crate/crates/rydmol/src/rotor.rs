//! Rigid rotor in the shielded-core field: Hamiltonian, Stark shifts, and
//! shift-vs-separation curves for a molecule near a Rydberg atom.
//!
//! Only the m = 0 sector appears: the field direction defines the z axis and
//! the cos(theta) coupling conserves m, so initial m = 0 states stay there.

use crate::rydberg::{shielded_core_field_au, RadialWavefunction, RydbergError};
use crate::units::{Quantity, Unit, UnitError};
use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RotorError {
    #[error("invalid rotor spec: {0}")]
    InvalidSpec(String),
    #[error("ambiguous labeling of eigenstate {state_index}: dominant J = {dominant_j} carries only {weight:.3} of the probability")]
    Labeling {
        state_index: usize,
        dominant_j: usize,
        weight: f64,
    },
    #[error("duplicate dominant label J = {dominant_j} among the reported eigenstates")]
    DuplicateLabel { dominant_j: usize },
    #[error("report J max {requested} exceeds the largest labeled J = {available}")]
    ReportRange { requested: usize, available: usize },
    #[error("field evaluation failed at R = {r_au} a.u.")]
    AtSeparation {
        r_au: f64,
        #[source]
        source: RydbergError,
    },
    #[error(transparent)]
    Unit(#[from] UnitError),
}

/// Convention for the diagonal rotational energy. Under [`Halved`] the
/// constant enters as b_rot * J(J+1)/2 and equals the J=0 -> J=1 spacing;
/// [`Standard`] is the textbook b_rot * J(J+1) spectrum.
///
/// [`Halved`]: RotorConvention::Halved
/// [`Standard`]: RotorConvention::Standard
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RotorConvention {
    #[default]
    Halved,
    Standard,
}

/// Rotor parameters in atomic units plus the basis truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidRotorSpec {
    b_rot_au: f64,
    d0_au: f64,
    j_max: usize,
    convention: RotorConvention,
}

impl RigidRotorSpec {
    pub fn new(b_rot: Quantity, d0: Quantity, j_max: usize) -> Result<Self, RotorError> {
        let b_rot_au = b_rot.convert(Unit::Hartree)?.value();
        let d0_au = d0.convert(Unit::AtomicDipole)?.value();
        if !(b_rot_au > 0.0) {
            return Err(RotorError::InvalidSpec("b_rot must be positive".into()));
        }
        if !(d0_au >= 0.0) {
            return Err(RotorError::InvalidSpec("d0 must be non-negative".into()));
        }
        if j_max < 4 {
            return Err(RotorError::InvalidSpec("j_max must be at least 4".into()));
        }
        Ok(RigidRotorSpec {
            b_rot_au,
            d0_au,
            j_max,
            convention: RotorConvention::Halved,
        })
    }

    pub fn with_convention(mut self, convention: RotorConvention) -> Self {
        self.convention = convention;
        self
    }

    /// Built-in KRb defaults with the given basis truncation.
    pub fn krb(j_max: usize) -> Result<Self, RotorError> {
        let krb = &crate::species::builtin().krb;
        RigidRotorSpec::new(
            Quantity::gigahertz(krb.b_rot_ghz),
            Quantity::new(krb.d0_au, Unit::AtomicDipole),
            j_max,
        )
    }

    pub fn b_rot_au(&self) -> f64 {
        self.b_rot_au
    }

    pub fn d0_au(&self) -> f64 {
        self.d0_au
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn convention(&self) -> RotorConvention {
        self.convention
    }

    /// Zero-field energy of level J in a.u.
    pub fn diagonal_energy(&self, j: usize) -> f64 {
        let jj = (j * (j + 1)) as f64;
        match self.convention {
            RotorConvention::Halved => self.b_rot_au * jj / 2.0,
            RotorConvention::Standard => self.b_rot_au * jj,
        }
    }

    /// Number of eigenstates whose labels are trustworthy: the top three
    /// basis states are truncation-dominated and never reported, so the
    /// largest reported J is j_max - 3.
    pub fn reported_states(&self) -> usize {
        self.j_max - 2
    }
}

/// <J,0|cos(theta)|J',0> = J_> / sqrt((2 J_> - 1)(2 J_> + 1)) for |J-J'| = 1,
/// zero otherwise.
pub fn cos_theta_element(j: u32, jp: u32) -> f64 {
    if j.abs_diff(jp) != 1 {
        return 0.0;
    }
    let jg = j.max(jp) as f64;
    jg / ((2.0 * jg - 1.0) * (2.0 * jg + 1.0)).sqrt()
}

/// Rotor-in-field Hamiltonian in the |J,0> basis, size (j_max+1), real
/// symmetric: diagonal per the rotor's [`RotorConvention`], off-diagonal
/// -F * d0 * <J|cos(theta)|J'>. `f_au` is the field in a.u.
pub fn build_hamiltonian(spec: &RigidRotorSpec, f_au: f64) -> DMatrix<f64> {
    let dim = spec.j_max + 1;
    let mut h = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        h[(j, j)] = spec.diagonal_energy(j);
        if j + 1 < dim {
            let coupling = -f_au * spec.d0_au * cos_theta_element(j as u32, j as u32 + 1);
            h[(j, j + 1)] = coupling;
            h[(j + 1, j)] = coupling;
        }
    }
    h
}

/// One labeled eigenstate of the rotor in a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarkShift {
    /// Zero-field J carrying the largest weight.
    pub dominant_j: usize,
    /// Eigenvalue minus the zero-field energy of `dominant_j`, in a.u.
    pub shift_au: f64,
    /// Probability outside the dominant component, in [0, 1).
    pub mixing: f64,
}

/// Diagonalizes the rotor Hamiltonian and labels the lowest eigenstates by
/// their dominant zero-field J. Returns one entry per J = 0..reported_states,
/// sorted by J. Fails if any reported state has mixing >= 0.5 or two states
/// claim the same label.
pub fn stark_shifts(spec: &RigidRotorSpec, f_au: f64) -> Result<Vec<StarkShift>, RotorError> {
    let h = build_hamiltonian(spec, f_au);
    let eig = SymmetricEigen::new(h);
    let dim = spec.j_max + 1;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let count = spec.reported_states();
    let mut out: Vec<Option<StarkShift>> = vec![None; count];
    for (state_index, &col) in order.iter().take(count).enumerate() {
        let vec = eig.eigenvectors.column(col);
        let mut dominant_j = 0usize;
        let mut weight = 0.0f64;
        for j in 0..dim {
            let w = vec[j] * vec[j];
            // Ties broken toward lower J by the strict inequality.
            if w > weight {
                weight = w;
                dominant_j = j;
            }
        }
        if weight < 0.5 {
            return Err(RotorError::Labeling {
                state_index,
                dominant_j,
                weight,
            });
        }
        if dominant_j >= count || out[dominant_j].is_some() {
            return Err(RotorError::DuplicateLabel { dominant_j });
        }
        out[dominant_j] = Some(StarkShift {
            dominant_j,
            shift_au: eig.eigenvalues[col] - spec.diagonal_energy(dominant_j),
            mixing: 1.0 - weight,
        });
    }
    Ok(out.into_iter().map(|s| s.expect("every J below the cut is labeled")).collect())
}

/// Shift of the Rydberg excitation line versus core-molecule separation, one
/// column per molecular J. A shift here is the change of the molecular level
/// while the atom occupies the Rydberg state, which is also the shift of the
/// excitation line; the J = 0 column is negative (level pushed down). Shifts
/// are stored in MHz, separations in a.u.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftCurve {
    pub r_values_au: Vec<f64>,
    /// shifts_mhz[row][j]: row indexes r_values, j is the dominant J.
    pub shifts_mhz: Vec<Vec<f64>>,
    /// mixing[row][j]: probability outside the dominant J.
    pub mixing: Vec<Vec<f64>>,
}

impl ShiftCurve {
    pub fn j_count(&self) -> usize {
        self.shifts_mhz.first().map_or(0, |row| row.len())
    }

    /// CSV with columns R_nm, shift_J0_MHz, mixing_J0, shift_J1_MHz, ... up
    /// to `jmax_report`.
    pub fn to_csv(&self, jmax_report: usize) -> Result<String, RotorError> {
        let j_count = self.j_count();
        if jmax_report >= j_count {
            return Err(RotorError::ReportRange {
                requested: jmax_report,
                available: j_count.saturating_sub(1),
            });
        }
        let mut out = String::new();
        out.push_str("R_nm");
        for j in 0..=jmax_report {
            out.push_str(&format!(",shift_J{j}_MHz,mixing_J{j}"));
        }
        out.push('\n');
        for (row, r_au) in self.r_values_au.iter().enumerate() {
            let r_nm = Quantity::bohr(*r_au).convert(Unit::Nanometer).expect("length");
            out.push_str(&format!("{:.9e}", r_nm.value()));
            for j in 0..=jmax_report {
                out.push_str(&format!(
                    ",{:.9e},{:.9e}",
                    self.shifts_mhz[row][j], self.mixing[row][j]
                ));
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Evaluates the shielded-core field and the resulting labeled Stark shifts
/// at each separation. Errors carry the offending R.
pub fn shift_scan(
    spec: &RigidRotorSpec,
    wf: &RadialWavefunction,
    r_values_au: &[f64],
) -> Result<ShiftCurve, RotorError> {
    let mut shifts_mhz = Vec::with_capacity(r_values_au.len());
    let mut mixing = Vec::with_capacity(r_values_au.len());
    for &r_au in r_values_au {
        let row = shift_row(spec, wf, r_au)?;
        shifts_mhz.push(row.0);
        mixing.push(row.1);
    }
    Ok(ShiftCurve {
        r_values_au: r_values_au.to_vec(),
        shifts_mhz,
        mixing,
    })
}

/// Single-separation version of [`shift_scan`], usable for parallel scans.
pub fn shift_row(
    spec: &RigidRotorSpec,
    wf: &RadialWavefunction,
    r_au: f64,
) -> Result<(Vec<f64>, Vec<f64>), RotorError> {
    let f_au = shielded_core_field_au(wf, r_au)
        .map_err(|source| RotorError::AtSeparation { r_au, source })?;
    let shifts = stark_shifts(spec, f_au)?;
    let to_mhz = |e_au: f64| {
        Quantity::hartree(e_au)
            .convert(Unit::Megahertz)
            .expect("energy family")
            .value()
    };
    Ok((
        shifts.iter().map(|s| to_mhz(s.shift_au)).collect(),
        shifts.iter().map(|s| s.mixing).collect(),
    ))
}
