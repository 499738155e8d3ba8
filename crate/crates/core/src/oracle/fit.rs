//! Least-squares extraction of exponential decay rates from magnitude series.

use crate::error::{Error, Result};

/// Result of a log-linear decay fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Decay rate (negated slope of ln|y| vs t), s^-1.
    pub rate: f64,
    /// Root-mean-square residual of ln|y| about the fitted line.
    pub residual_rms: f64,
}

/// Fit `|y(t)| = A exp(-rate t)` by linear regression on ln|y|.
///
/// Requires at least two points and strictly positive magnitudes.
pub fn fit_decay_rate(times: &[f64], magnitudes: &[f64]) -> Result<DecayFit> {
    if times.len() != magnitudes.len() || times.len() < 2 {
        return Err(Error::Fit(format!(
            "need >= 2 matched samples, got {} times and {} magnitudes",
            times.len(),
            magnitudes.len()
        )));
    }
    if let Some(bad) = magnitudes.iter().find(|&&m| m.is_nan() || m <= 0.0) {
        return Err(Error::Fit(format!(
            "magnitudes must be strictly positive for a log fit, found {bad}"
        )));
    }
    let n = times.len() as f64;
    let t_mean = times.iter().sum::<f64>() / n;
    let logs: Vec<f64> = magnitudes.iter().map(|m| m.ln()).collect();
    let l_mean = logs.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, l) in times.iter().zip(&logs) {
        num += (t - t_mean) * (l - l_mean);
        den += (t - t_mean) * (t - t_mean);
    }
    if den == 0.0 {
        return Err(Error::Fit("all sample times coincide".to_string()));
    }
    let slope = num / den;
    let intercept = l_mean - slope * t_mean;
    let ss: f64 = times
        .iter()
        .zip(&logs)
        .map(|(t, l)| {
            let r = l - (intercept + slope * t);
            r * r
        })
        .sum();
    Ok(DecayFit {
        rate: -slope,
        residual_rms: (ss / n).sqrt(),
    })
}

/// [`fit_decay_rate`] restricted to samples with `t_lo <= t <= t_hi`.
pub fn fit_decay_rate_windowed(
    times: &[f64],
    magnitudes: &[f64],
    t_lo: f64,
    t_hi: f64,
) -> Result<DecayFit> {
    let mut ts = Vec::new();
    let mut ms = Vec::new();
    for (&t, &m) in times.iter().zip(magnitudes) {
        if t >= t_lo && t <= t_hi {
            ts.push(t);
            ms.push(m);
        }
    }
    if ts.len() < 2 {
        return Err(Error::Fit(format!(
            "window [{t_lo:.3e}, {t_hi:.3e}] contains {} samples; need >= 2",
            ts.len()
        )));
    }
    fit_decay_rate(&ts, &ms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_exponential_recovers_rate() {
        let times: Vec<f64> = (0..50).map(|k| k as f64 * 0.1).collect();
        let mags: Vec<f64> = times.iter().map(|t| (-3.0 * t).exp()).collect();
        let fit = fit_decay_rate(&times, &mags).unwrap();
        assert_relative_eq!(fit.rate, 3.0, max_relative = 1e-10);
        assert!(fit.residual_rms < 1e-12);
    }

    #[test]
    fn constant_series_has_zero_rate() {
        let times: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let mags = vec![0.7; 10];
        let fit = fit_decay_rate(&times, &mags).unwrap();
        assert!(fit.rate.abs() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive_magnitudes() {
        assert!(fit_decay_rate(&[0.0, 1.0], &[1.0, 0.0]).is_err());
        assert!(fit_decay_rate(&[0.0, 1.0], &[1.0, -0.5]).is_err());
    }

    #[test]
    fn window_filters_samples() {
        let times: Vec<f64> = (0..100).map(|k| k as f64 * 0.1).collect();
        let mags: Vec<f64> = times
            .iter()
            .map(|&t| if t < 2.0 { 1.0 } else { (-(t - 2.0)).exp() })
            .collect();
        let fit = fit_decay_rate_windowed(&times, &mags, 2.0, 8.0).unwrap();
        assert_relative_eq!(fit.rate, 1.0, max_relative = 1e-9);
        assert!(fit_decay_rate_windowed(&times, &mags, 90.0, 91.0).is_err());
    }
}
