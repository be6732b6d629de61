//! Rydberg electron radial problem with quantum defects, and the
//! shielded-core electric field felt by a molecule sitting inside the
//! electron orbit.
//!
//! The radial equation is solved on a square-root-scaled grid x = sqrt(r)
//! with u(r) = sqrt(x) v(x), which turns the Coulomb problem into
//! v'' = g(x) v with
//!   g(x) = 8 x^2 (V(r) - E) + (2l + 1/2)(2l + 3/2) / x^2,   V(r) = -1/r.
//! On that grid the local wavelength of a Rydberg state is nearly uniform,
//! so a fixed step resolves all lobes equally well. Integration runs inward
//! from the outer boundary, where the desired solution is the growing one,
//! keeping the recurrence numerically stable.

use crate::units::{Dimension, Quantity, Unit};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RydbergError {
    #[error("invalid level: {0}")]
    InvalidLevel(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("node count mismatch: expected {expected}, found {found} (grid too coarse or defect inconsistent)")]
    NodeCount { expected: usize, found: usize },
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("field formula requires an s state, got l = {l}")]
    UnsupportedState { l: u32 },
    #[error("separation {r} a.u. outside wavefunction grid [{lo}, {hi}]")]
    OutOfRange { r: f64, lo: f64, hi: f64 },
    #[error(transparent)]
    Unit(#[from] crate::units::UnitError),
}

/// A Rydberg level (n, l) with a quantum defect shifting its energy to
/// -1/(2 (n - defect)^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RydbergLevel {
    n: u32,
    l: u32,
    quantum_defect: f64,
}

impl RydbergLevel {
    pub fn new(n: u32, l: u32, quantum_defect: f64) -> Result<Self, RydbergError> {
        if n < 1 {
            return Err(RydbergError::InvalidLevel("n must be >= 1".into()));
        }
        if l >= n {
            return Err(RydbergError::InvalidLevel(format!("l = {l} must satisfy l < n = {n}")));
        }
        if !(quantum_defect >= 0.0) {
            return Err(RydbergError::InvalidLevel("quantum defect must be >= 0".into()));
        }
        let n_star = n as f64 - quantum_defect;
        if n_star <= l as f64 {
            return Err(RydbergError::InvalidLevel(format!(
                "effective n* = {n_star} must exceed l = {l}"
            )));
        }
        Ok(RydbergLevel { n, l, quantum_defect })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn quantum_defect(&self) -> f64 {
        self.quantum_defect
    }

    pub fn n_star(&self) -> f64 {
        self.n as f64 - self.quantum_defect
    }

    /// Level energy in Hartree, always negative.
    pub fn energy_au(&self) -> f64 {
        -0.5 / (self.n_star() * self.n_star())
    }
}

/// Radial grid parameters. `r_min`/`r_max` are in a.u.; `dx` is the uniform
/// step of the sqrt(r) coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub dx: f64,
}

impl GridSpec {
    /// Default grid for a level: reaches from deep inside the core region to
    /// well past the outer classical turning point at 2 n*^2.
    pub fn for_level(level: &RydbergLevel) -> Self {
        let ns = level.n_star();
        GridSpec {
            r_min: 1e-3,
            r_max: 2.5 * ns * ns + 20.0 * ns,
            dx: 0.01,
        }
    }

    fn validate(&self, level: &RydbergLevel) -> Result<(), RydbergError> {
        let ns = level.n_star();
        if !(self.r_min > 0.0) {
            return Err(RydbergError::InvalidGrid("r_min must be positive".into()));
        }
        if self.r_min > 0.06 {
            return Err(RydbergError::InvalidGrid(format!(
                "r_min = {} a.u. does not reach the near-origin region (need <= 0.06)",
                self.r_min
            )));
        }
        if self.r_max < 2.5 * ns * ns {
            return Err(RydbergError::InvalidGrid(format!(
                "r_max = {} a.u. too small, need >= 2.5 n*^2 = {}",
                self.r_max,
                2.5 * ns * ns
            )));
        }
        if !(self.dx > 0.0 && self.dx < 0.2) {
            return Err(RydbergError::InvalidGrid("dx must be in (0, 0.2)".into()));
        }
        Ok(())
    }
}

/// Normalized reduced radial wavefunction u(r) on its grid, with the
/// cumulative enclosed probability precomputed for field evaluation.
#[derive(Debug, Clone)]
pub struct RadialWavefunction {
    level: RydbergLevel,
    x0: f64,
    dx: f64,
    r: Vec<f64>,
    u: Vec<f64>,
    /// enclosed[i] = integral of u^2 dr from r[0] to r[i]; enclosed[last] = 1.
    enclosed: Vec<f64>,
}

/// Solves the radial problem at the defect-shifted energy by inward Numerov
/// integration and normalizes the result.
pub fn solve_radial(level: RydbergLevel, grid: GridSpec) -> Result<RadialWavefunction, RydbergError> {
    grid.validate(&level)?;
    let x0 = grid.r_min.sqrt();
    let x_max = grid.r_max.sqrt();
    let dx = grid.dx;
    let n = ((x_max - x0) / dx).ceil() as usize + 1;
    if n < 16 {
        return Err(RydbergError::InvalidGrid("grid has fewer than 16 points".into()));
    }

    let energy = level.energy_au();
    let l = level.l as f64;
    let lterm = (2.0 * l + 0.5) * (2.0 * l + 1.5);
    let x: Vec<f64> = (0..n).map(|i| x0 + dx * i as f64).collect();
    let g: Vec<f64> = x
        .iter()
        .map(|&xi| {
            let r = xi * xi;
            8.0 * xi * xi * (-1.0 / r - energy) + lterm / (xi * xi)
        })
        .collect();

    // Inward Numerov for v'' = g v. The outer seed amplitude is arbitrary;
    // normalization fixes it later.
    let h2 = dx * dx;
    let mut v = vec![0.0f64; n];
    v[n - 1] = 1e-15;
    v[n - 2] = 2e-15;
    for i in (1..n - 1).rev() {
        v[i - 1] = (2.0 * (1.0 + 5.0 * h2 * g[i] / 12.0) * v[i]
            - (1.0 - h2 * g[i + 1] / 12.0) * v[i + 1])
            / (1.0 - h2 * g[i - 1] / 12.0);
        if v[i - 1].abs() > 1e100 {
            for w in v[i - 1..].iter_mut() {
                *w *= 1e-100;
            }
        }
    }

    let r: Vec<f64> = x.iter().map(|&xi| xi * xi).collect();
    let mut u: Vec<f64> = x.iter().zip(&v).map(|(&xi, &vi)| xi.sqrt() * vi).collect();

    // Normalize with the cumulative of u^2 dr = (u^2 2x) dx, fourth order at
    // every node: Simpson pairs plus a Newton-Cotes half panel for C[1].
    let f: Vec<f64> = u.iter().zip(&x).map(|(&ui, &xi)| ui * ui * 2.0 * xi).collect();
    let mut c = cumulative(&f, dx);
    let norm = c[n - 1];
    if !norm.is_finite() || norm <= 0.0 {
        return Err(RydbergError::Normalization(format!("norm integral = {norm}")));
    }
    let scale = norm.sqrt();
    for ui in u.iter_mut() {
        *ui /= scale;
    }
    for ci in c.iter_mut() {
        *ci /= norm;
    }

    let wf = RadialWavefunction { level, x0, dx, r, u, enclosed: c };

    let expected = expected_nodes(&level);
    let found = wf.nodes();
    if found != expected {
        return Err(RydbergError::NodeCount { expected, found });
    }
    let max_u = wf.u.iter().fold(0.0f64, |m, &ui| m.max(ui.abs()));
    let tail = wf.u[n - 1].abs().max(wf.u[n - 2].abs());
    if tail > 1e-6 * max_u {
        return Err(RydbergError::InvalidGrid(
            "outer boundary does not decay; extend r_max".into(),
        ));
    }
    // The inner boundary of a penetrating state is not exponentially small,
    // but the probability it carries must be negligible.
    if wf.u[0] * wf.u[0] * wf.r[0] > 1e-3 {
        return Err(RydbergError::InvalidGrid(
            "inner boundary carries non-negligible probability; shrink r_min".into(),
        ));
    }
    Ok(wf)
}

/// Node count of the bound solution at energy -1/(2 n*^2). For integer n*
/// this is the textbook n - l - 1; a fractional defect pushes the energy
/// between hydrogenic levels and the count becomes ceil(n* - l - 1).
fn expected_nodes(level: &RydbergLevel) -> usize {
    (level.n_star() - level.l as f64 - 1.0 - 1e-9).ceil().max(0.0) as usize
}

/// O(h^4) cumulative integral of uniformly sampled f with step h.
fn cumulative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut c = vec![0.0f64; n];
    if n > 2 {
        c[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
    }
    for i in 2..n {
        c[i] = c[i - 2] + h * (f[i - 2] + 4.0 * f[i - 1] + f[i]) / 3.0;
    }
    c
}

impl RadialWavefunction {
    pub fn level(&self) -> &RydbergLevel {
        &self.level
    }

    pub fn r_grid(&self) -> &[f64] {
        &self.r
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn r_min(&self) -> f64 {
        self.r[0]
    }

    pub fn r_max(&self) -> f64 {
        self.r[self.r.len() - 1]
    }

    /// First point of the uniform sqrt(r) grid.
    pub fn sqrt_grid_origin(&self) -> f64 {
        self.x0
    }

    /// Step of the uniform sqrt(r) grid.
    pub fn sqrt_grid_step(&self) -> f64 {
        self.dx
    }

    /// Number of sign changes of u inside the classically allowed region.
    /// Bound-state nodes cannot sit below the inner turning point, and for
    /// l >= 1 the one-shot inward solution picks up an irregular ~r^{-l}
    /// admixture there that carries no probability but can flip sign, so
    /// counting starts just below the turning point.
    pub fn nodes(&self) -> usize {
        let ns = self.level.n_star();
        let ll = (self.level.l * (self.level.l + 1)) as f64;
        let disc = (1.0 - ll / (ns * ns)).max(0.0).sqrt();
        let r_start = 0.9 * ns * ns * (1.0 - disc);
        let max_u = self.u.iter().fold(0.0f64, |m, &ui| m.max(ui.abs()));
        let threshold = 1e-12 * max_u;
        let mut count = 0;
        let mut last = 0.0f64;
        for (&ri, &ui) in self.r.iter().zip(&self.u) {
            if ri < r_start || ui.abs() <= threshold {
                continue;
            }
            if last != 0.0 && ui.signum() != last.signum() {
                count += 1;
            }
            last = ui;
        }
        count
    }

    /// Integral of u^2 dr over the whole grid; 1 by construction.
    pub fn norm_integral(&self) -> f64 {
        self.enclosed[self.enclosed.len() - 1]
    }

    /// Expectation value of r in a.u. (Simpson in the sqrt(r) coordinate).
    pub fn expectation_r(&self) -> f64 {
        let f: Vec<f64> = self
            .u
            .iter()
            .zip(&self.r)
            .map(|(&ui, &ri)| ui * ui * ri * 2.0 * ri.sqrt())
            .collect();
        let c = cumulative(&f, self.dx);
        c[c.len() - 1]
    }

    /// Probability enclosed within radius r_au, measured from the inner grid
    /// boundary. Between nodes the integrand is extended by the local
    /// quadratic through the three nearest samples, keeping the result O(h^4).
    pub fn enclosed_probability(&self, r_au: f64) -> Result<f64, RydbergError> {
        let (lo, hi) = (self.r_min(), self.r_max());
        if !(r_au >= lo && r_au <= hi) {
            return Err(RydbergError::OutOfRange { r: r_au, lo, hi });
        }
        let xq = r_au.sqrt();
        let n = self.u.len();
        let i = (((xq - self.x0) / self.dx).floor() as usize).min(n - 2);
        let t = (xq - (self.x0 + self.dx * i as f64)) / self.dx;
        let fj = |j: usize| {
            let uj = self.u[j];
            uj * uj * 2.0 * (self.x0 + self.dx * j as f64)
        };
        let partial = if i == 0 {
            // Forward quadratic through nodes 0, 1, 2.
            let (f0, f1, f2) = (fj(0), fj(1), fj(2));
            self.dx
                * (f0 * t + (-3.0 * f0 + 4.0 * f1 - f2) * t * t / 4.0
                    + (f0 - 2.0 * f1 + f2) * t * t * t / 6.0)
        } else {
            // Centered quadratic through nodes i-1, i, i+1, integrated from i.
            let (fa, fb, fc) = (fj(i - 1), fj(i), fj(i + 1));
            self.dx
                * (fb * t + (fc - fa) * t * t / 4.0 + (fa - 2.0 * fb + fc) * t * t * t / 6.0)
        };
        Ok((self.enclosed[i] + partial).clamp(0.0, 1.0))
    }

    /// Two-column CSV (r in a.u., u) for debugging.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.r.len() * 32);
        out.push_str("r_au,u\n");
        for (ri, ui) in self.r.iter().zip(&self.u) {
            out.push_str(&format!("{ri:.12e},{ui:.12e}\n"));
        }
        out
    }
}

/// Shielded-core field F(R) in a.u.: the bare-core Coulomb field reduced by
/// the electron charge enclosed within R. For a spherically symmetric ns
/// density the angular part of the field integral collapses by the shell
/// theorem, so F(R) = (1 - P_enc(R)) / R^2, positive along the axis from the
/// core to the molecule. Only the magnitude is physically compared.
pub fn shielded_core_field_au(wf: &RadialWavefunction, r_au: f64) -> Result<f64, RydbergError> {
    if wf.level.l != 0 {
        return Err(RydbergError::UnsupportedState { l: wf.level.l });
    }
    let p = wf.enclosed_probability(r_au)?;
    Ok((1.0 - p) / (r_au * r_au))
}

/// Unit-aware wrapper around [`shielded_core_field_au`].
pub fn shielded_core_field(wf: &RadialWavefunction, r: Quantity) -> Result<Quantity, RydbergError> {
    let r_au = r.convert(Unit::Bohr)?.value();
    let f = shielded_core_field_au(wf, r_au)?;
    debug_assert_eq!(Quantity::new(f, Unit::AtomicField).dimension(), Dimension::ElectricField);
    Ok(Quantity::new(f, Unit::AtomicField))
}
