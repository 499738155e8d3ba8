//! Truncated Fock basis and coherent-state expansions.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest Poisson tail probability tolerated when expanding a coherent
/// state in a truncated basis.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// A Fock basis truncated at occupation number `n_max` (dimension n_max + 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis {
    n_max: usize,
}

impl FockBasis {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Domain("n_max must be at least 1".to_string()));
        }
        Ok(Self { n_max })
    }

    /// Basis sized by the deterministic rule
    /// `n_max = ceil(nbar + 10 sqrt(nbar) + 20)` for mean occupation `nbar`.
    ///
    /// The Poisson tail beyond this cutoff is far below [`TAIL_TOLERANCE`]
    /// for every amplitude used in the sweeps.
    pub fn for_mean_occupation(nbar: f64) -> Self {
        Self {
            n_max: required_n_max(nbar),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Matrix dimension, n_max + 1.
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Sizing rule behind [`FockBasis::for_mean_occupation`].
pub fn required_n_max(nbar: f64) -> usize {
    (nbar + 10.0 * nbar.sqrt() + 20.0).ceil() as usize
}

/// Chernoff bound on the Poisson tail P(N > n) at mean `nbar`.
///
/// Used as the truncation guard: cheap, deterministic and rigorous (an
/// upper bound, so a passing basis is genuinely adequate).
pub fn poisson_tail_bound(nbar: f64, n: usize) -> f64 {
    if nbar <= 0.0 {
        return 0.0;
    }
    let k = (n + 1) as f64;
    if k <= nbar {
        return 1.0;
    }
    (-nbar + k * (1.0 + (nbar / k).ln())).exp()
}

/// Coefficients <n|alpha> = exp(-|alpha|^2/2) alpha^n / sqrt(n!) for
/// n = 0 ..= n_max.
///
/// Fails with a truncation error (naming the required n_max) when the basis
/// cannot hold the state to [`TAIL_TOLERANCE`].
pub fn coherent_fock_amplitudes(alpha: C64, basis: FockBasis) -> Result<Vec<C64>> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::Domain(format!(
            "coherent amplitude must be finite, got {alpha}"
        )));
    }
    let nbar = alpha.norm_sqr();
    if poisson_tail_bound(nbar, basis.n_max) > TAIL_TOLERANCE {
        return Err(Error::Truncation {
            nbar,
            actual: basis.n_max,
            required: required_n_max(nbar),
        });
    }
    let mut amps = Vec::with_capacity(basis.dim());
    let mut current = C64::new((-0.5 * nbar).exp(), 0.0);
    amps.push(current);
    for n in 1..=basis.n_max {
        current *= alpha / (n as f64).sqrt();
        amps.push(current);
    }
    Ok(amps)
}
