//! Adaptive integration of the damped-oscillator master equation
//!
//! ```text
//! d rho / dt = -i [Omega b'b, rho] + gamma_pop (b rho b' - {b'b, rho} / 2)
//! ```
//!
//! in a truncated Fock basis. The free rotation commutes with the decay
//! dissipator, so the equation is integrated in the interaction picture
//! (dissipator only) and the rotation `rho_ij -> rho_ij e^{-i Omega t (i-j)}`
//! is applied exactly at each sample time; this keeps the stepper on the
//! slow dissipative timescale while the returned matrices are lab-frame.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::fock::{coherent_fock_amplitudes, FockBasis};
use crate::ode::{integrate, OdeOptions};

/// Configuration of one master-equation run.
#[derive(Debug, Clone, Copy)]
pub struct LindbladSpec {
    pub basis: FockBasis,
    /// Transition angular frequency, s^-1.
    pub omega: f64,
    /// Population decay rate, s^-1.
    pub gamma_pop: f64,
    /// End of the integration window, s.
    pub t_max: f64,
    pub rtol: f64,
    pub atol: f64,
}

impl LindbladSpec {
    pub fn validate(&self) -> Result<()> {
        if self.gamma_pop.is_nan() || self.gamma_pop <= 0.0 {
            return Err(Error::Configuration(format!(
                "gamma_pop must be positive, got {}",
                self.gamma_pop
            )));
        }
        if self.t_max.is_nan() || self.t_max <= 0.0 {
            return Err(Error::Configuration(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        for (name, tol) in [("rtol", self.rtol), ("atol", self.atol)] {
            if !(tol > 0.0 && tol <= 1e-3) {
                return Err(Error::Configuration(format!(
                    "{name} must lie in (0, 1e-3], got {tol}"
                )));
            }
        }
        Ok(())
    }
}

/// Dissipator of the damped oscillator acting on a flattened matrix.
fn dissipator(gamma: f64, dim: usize, rho: &[C64], out: &mut [C64]) {
    for i in 0..dim {
        for j in 0..dim {
            let idx = i * dim + j;
            let mut v = -0.5 * ((i + j) as f64) * rho[idx];
            if i + 1 < dim && j + 1 < dim {
                let amp = (((i + 1) * (j + 1)) as f64).sqrt();
                v += amp * rho[(i + 1) * dim + j + 1];
            }
            out[idx] = gamma * v;
        }
    }
}

/// Integrate the master equation from `rho0`, returning the lab-frame state
/// at each requested sample time.
pub fn integrate_lindblad(
    spec: &LindbladSpec,
    rho0: &DensityMatrix,
    sample_times: &[f64],
) -> Result<Vec<DensityMatrix>> {
    spec.validate()?;
    let dim = spec.basis.dim();
    if rho0.dim() != dim {
        return Err(Error::Configuration(format!(
            "initial state dimension {} does not match basis dimension {dim}",
            rho0.dim()
        )));
    }
    if sample_times.iter().any(|&t| t > spec.t_max * (1.0 + 1e-12)) {
        return Err(Error::Configuration(
            "sample times extend past t_max".to_string(),
        ));
    }

    let y0: Vec<C64> = rho0.matrix().iter().copied().collect(); // column-major
    let gamma = spec.gamma_pop;
    let opts = OdeOptions {
        rtol: spec.rtol,
        atol: spec.atol,
        ..OdeOptions::default()
    };
    // nalgebra stores column-major: entry (i, j) sits at j * dim + i. The
    // dissipator is symmetric under transposition of the index roles, so the
    // same kernel applies with (i, j) read as (row, col) either way.
    let raw = integrate(
        |_t, y, dy| dissipator(gamma, dim, y, dy),
        0.0,
        &y0,
        sample_times,
        &opts,
    )?;

    raw.into_iter()
        .zip(sample_times)
        .map(|(flat, &t)| {
            let mut mat = DMatrix::<C64>::from_vec(dim, dim, flat);
            for i in 0..dim {
                for j in 0..dim {
                    let phase = C64::from_polar(1.0, -spec.omega * t * (i as f64 - j as f64));
                    mat[(i, j)] *= phase;
                }
            }
            DensityMatrix::from_matrix(mat)
        })
        .collect()
}

/// Extract the 2x2 dyad-weight matrix w from
/// `rho = sum_ij w_ij |beta_i><beta_j|` for two coherent branches.
///
/// Solves through the branch Gram matrix (dual-basis projection); fails when
/// the branches are too close to parallel for a stable solve.
pub fn dyad_weights(
    rho: &DensityMatrix,
    beta1: C64,
    beta2: C64,
    basis: FockBasis,
) -> Result<[[C64; 2]; 2]> {
    let b = [
        coherent_fock_amplitudes(beta1, basis)?,
        coherent_fock_amplitudes(beta2, basis)?,
    ];
    if rho.dim() != basis.dim() {
        return Err(Error::Domain(format!(
            "state dimension {} does not match basis dimension {}",
            rho.dim(),
            basis.dim()
        )));
    }
    // Gram matrix s_ab = <beta_a|beta_b> and projections m_ab = <beta_a|rho|beta_b>.
    let mut s = [[C64::new(0.0, 0.0); 2]; 2];
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for c in 0..2 {
            s[a][c] = b[a].iter().zip(&b[c]).map(|(x, y)| x.conj() * y).sum();
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..rho.dim() {
                for j in 0..rho.dim() {
                    acc += b[a][i].conj() * rho.entry(i, j) * b[c][j];
                }
            }
            m[a][c] = acc;
        }
    }
    let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    if det.norm() < 1e-9 {
        return Err(Error::Domain(format!(
            "branch Gram matrix is near singular (det = {:.3e}); branches too parallel",
            det.norm()
        )));
    }
    let inv = [
        [s[1][1] / det, -s[0][1] / det],
        [-s[1][0] / det, s[0][0] / det],
    ];
    // w = S^-1 M S^-1
    let mut tmp = [[C64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for c in 0..2 {
            tmp[a][c] = inv[a][0] * m[0][c] + inv[a][1] * m[1][c];
        }
    }
    let mut w = [[C64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for c in 0..2 {
            w[a][c] = tmp[a][0] * inv[0][c] + tmp[a][1] * inv[1][c];
        }
    }
    Ok(w)
}
