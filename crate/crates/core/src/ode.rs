//! Embedded Dormand-Prince 5(4) integrator with dense output, operating on
//! flat complex state vectors.
//!
//! Coefficients follow the classic DOPRI5 tableau (Dormand & Prince 1980)
//! including the fifth-order interpolant, so requested sample times are
//! evaluated from the local polynomial rather than by stopping the stepper.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Dense-output coefficients for the fifth-order interpolant.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Integration tolerances and limits.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
            max_steps: 50_000_000,
        }
    }
}

fn axpy(out: &mut [C64], y: &[C64], terms: &[(f64, &[C64])], h: f64) {
    for i in 0..out.len() {
        let mut acc = C64::new(0.0, 0.0);
        for (coeff, k) in terms {
            acc += *coeff * k[i];
        }
        out[i] = y[i] + h * acc;
    }
}

/// Integrate `dy/dt = rhs(t, y)` from `t0` to the last entry of
/// `sample_times`, returning the dense-output state at each sample time.
///
/// `sample_times` must be non-decreasing and start at or after `t0`. The
/// right-hand side writes its result into the provided output slice.
pub fn integrate<F>(
    rhs: F,
    t0: f64,
    y0: &[C64],
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<Vec<C64>>>
where
    F: Fn(f64, &[C64], &mut [C64]),
{
    if sample_times.is_empty() {
        return Ok(Vec::new());
    }
    if sample_times.windows(2).any(|w| w[1] < w[0]) || sample_times[0] < t0 {
        return Err(Error::Domain(
            "sample times must be non-decreasing and start at or after t0".to_string(),
        ));
    }
    let t_end = *sample_times.last().unwrap();
    let n = y0.len();
    let mut outputs = Vec::with_capacity(sample_times.len());
    let mut next_sample = 0;

    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k1 = vec![C64::new(0.0, 0.0); n];
    rhs(t, &y, &mut k1);

    // Emit samples that coincide with t0.
    while next_sample < sample_times.len() && sample_times[next_sample] <= t {
        outputs.push(y.clone());
        next_sample += 1;
    }
    if next_sample == sample_times.len() {
        return Ok(outputs);
    }

    // Initial step: conservative fraction of the span, refined by the
    // controller within a few steps.
    let span = t_end - t0;
    if span <= 0.0 {
        return Ok(outputs);
    }
    let mut h = (span * 1e-4).min(span);

    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut k5 = k1.clone();
    let mut k6 = k1.clone();
    let mut k7 = k1.clone();
    let mut stage = y.clone();
    let mut y_new = y.clone();

    let mut steps = 0usize;
    while t < t_end {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::Integration {
                t_reached: t,
                message: format!("exceeded {} steps", opts.max_steps),
            });
        }
        if h < 1e-14 * span {
            return Err(Error::Integration {
                t_reached: t,
                message: "step size underflow".to_string(),
            });
        }
        if t + h > t_end {
            h = t_end - t;
        }

        axpy(&mut stage, &y, &[(A21, &k1)], h);
        rhs(t + h / 5.0, &stage, &mut k2);
        axpy(&mut stage, &y, &[(A31, &k1), (A32, &k2)], h);
        rhs(t + 3.0 * h / 10.0, &stage, &mut k3);
        axpy(&mut stage, &y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h);
        rhs(t + 4.0 * h / 5.0, &stage, &mut k4);
        axpy(&mut stage, &y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h);
        rhs(t + 8.0 * h / 9.0, &stage, &mut k5);
        axpy(
            &mut stage,
            &y,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            h,
        );
        rhs(t + h, &stage, &mut k6);
        axpy(
            &mut y_new,
            &y,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            h,
        );
        rhs(t + h, &y_new, &mut k7);

        // Weighted RMS error of the embedded 4th-order difference.
        let mut err_sq = 0.0;
        for i in 0..n {
            let e = E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i];
            let scale = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
            let ratio = h * e.norm() / scale;
            err_sq += ratio * ratio;
        }
        let err = (err_sq / n as f64).sqrt();

        if err <= 1.0 {
            // Accepted: serve dense output for samples inside (t, t + h].
            while next_sample < sample_times.len() && sample_times[next_sample] <= t + h {
                let ts = sample_times[next_sample];
                let theta = ((ts - t) / h).clamp(0.0, 1.0);
                let mut out = vec![C64::new(0.0, 0.0); n];
                for i in 0..n {
                    let ydiff = y_new[i] - y[i];
                    let bspl = h * k1[i] - ydiff;
                    let r1 = y[i];
                    let r2 = ydiff;
                    let r3 = bspl;
                    let r4 = ydiff - h * k7[i] - bspl;
                    let r5 = h
                        * (D1 * k1[i]
                            + D3 * k3[i]
                            + D4 * k4[i]
                            + D5 * k5[i]
                            + D6 * k6[i]
                            + D7 * k7[i]);
                    out[i] = r1 + theta * (r2 + (1.0 - theta) * (r3 + theta * (r4 + (1.0 - theta) * r5)));
                }
                outputs.push(out);
                next_sample += 1;
            }
            t += h;
            std::mem::swap(&mut y, &mut y_new);
            std::mem::swap(&mut k1, &mut k7); // FSAL
        }

        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }

    // Serve any samples exactly at t_end left over from rounding.
    while next_sample < sample_times.len() {
        outputs.push(y.clone());
        next_sample += 1;
    }
    Ok(outputs)
}
