//! Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.

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
// Fifth-order weights (also the last stage position, FSAL).
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Embedded fourth-order weights.
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

fn axpy<const D: usize>(y: &[f64; D], terms: &[(f64, &[f64; D])], h: f64) -> [f64; D] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..D {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Integrates y' = rhs(t, y) from `t0` to `t_end`, returning the final state.
pub fn integrate<const D: usize>(
    rhs: &impl Fn(f64, &[f64; D]) -> [f64; D],
    t0: f64,
    y0: [f64; D],
    t_end: f64,
    rtol: f64,
    atol: f64,
) -> Result<[f64; D]> {
    let mut sink = |_t: f64, _y: &[f64; D]| {};
    integrate_observed(rhs, t0, y0, t_end, rtol, atol, &mut sink)
}

/// Same as [`integrate`] but calls `observe` after every accepted step.
pub fn integrate_observed<const D: usize>(
    rhs: &impl Fn(f64, &[f64; D]) -> [f64; D],
    t0: f64,
    y0: [f64; D],
    t_end: f64,
    rtol: f64,
    atol: f64,
    observe: &mut impl FnMut(f64, &[f64; D]),
) -> Result<[f64; D]> {
    if t_end == t0 {
        return Ok(y0);
    }
    let span = t_end - t0;
    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let mut h = (span.abs() * 1e-4).min(1e-2).copysign(span);

    loop {
        if (t_end - t).abs() <= 1e-14 * t_end.abs().max(1.0) {
            return Ok(y);
        }
        if (h > 0.0) == (t + h > t_end) {
            h = t_end - t;
        }

        let k2 = rhs(t + C2 * h, &axpy(&y, &[(A21, &k1)], h));
        let k3 = rhs(t + C3 * h, &axpy(&y, &[(A31, &k1), (A32, &k2)], h));
        let k4 = rhs(t + C4 * h, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
        let k5 = rhs(
            t + C5 * h,
            &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
        );
        let k6 = rhs(
            t + h,
            &axpy(
                &y,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                h,
            ),
        );
        let y5 = axpy(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
        let k7 = rhs(t + h, &y5);
        let y4 = axpy(
            &y,
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
            h,
        );

        let mut err: f64 = 0.0;
        for i in 0..D {
            let scale = atol + rtol * y[i].abs().max(y5[i].abs());
            err = err.max((y5[i] - y4[i]).abs() / scale);
        }

        if err <= 1.0 {
            t += h;
            y = y5;
            k1 = k7; // FSAL
            observe(t, &y);
            let grow = (0.9 * err.max(1e-10).powf(-0.2)).min(5.0);
            h *= grow;
        } else {
            h *= (0.9 * err.powf(-0.2)).max(0.1);
        }

        if h.abs() < 1e-14 * t.abs().max(1.0) {
            return Err(Error::NumericFailure {
                what: "ode step size underflow",
                residual: err,
            });
        }
    }
}

/// Integrates and records the state at each of the (sorted, increasing)
/// `targets`, which must all lie in (t0, t_end].
pub fn integrate_to_points<const D: usize>(
    rhs: &impl Fn(f64, &[f64; D]) -> [f64; D],
    t0: f64,
    y0: [f64; D],
    targets: &[f64],
    rtol: f64,
    atol: f64,
) -> Result<Vec<[f64; D]>> {
    let mut out = Vec::with_capacity(targets.len());
    let mut t = t0;
    let mut y = y0;
    for &tk in targets {
        y = integrate(rhs, t, y, tk, rtol, atol)?;
        t = tk;
        out.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_decay() {
        let rhs = |_t: f64, y: &[f64; 1]| [-y[0]];
        let y = integrate(&rhs, 0.0, [1.0], 5.0, 1e-10, 1e-12).unwrap();
        assert_relative_eq!(y[0], (-5.0f64).exp(), max_relative = 1e-9);
    }

    #[test]
    fn harmonic_oscillator_energy() {
        let rhs = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let y = integrate(&rhs, 0.0, [1.0, 0.0], 20.0 * std::f64::consts::PI, 1e-11, 1e-13).unwrap();
        assert_relative_eq!(y[0], 1.0, max_relative = 1e-7);
        assert!(y[1].abs() < 1e-7);
    }

    #[test]
    fn output_points_consistent_with_direct_run() {
        let rhs = |t: f64, y: &[f64; 1]| [t * y[0]];
        let targets: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
        let pts = integrate_to_points(&rhs, 0.0, [1.0], &targets, 1e-11, 1e-13).unwrap();
        for (i, p) in pts.iter().enumerate() {
            let t = targets[i];
            assert_relative_eq!(p[0], (0.5 * t * t).exp(), max_relative = 1e-9);
        }
    }
}
