//! Closed-form large-deflection asymptotics for the power-law problem on
//! the unit ball, and the four-regime solution-multiplicity classifier.
//!
//! After the logarithmic change of variables the shooting ODE becomes an
//! autonomous damped oscillator around the equilibrium amplitude V_e; the
//! sign of the damping discriminant decides whether the voltage branch
//! approaches its asymptote monotonically or oscillates around it.

use serde::Serialize;

/// Roots of the linearization around the equilibrium amplitude: real pair
/// when the discriminant is nonnegative, complex-conjugate pair otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum SigmaPair {
    Real { minus: f64, plus: f64 },
    Complex { re: f64, im: f64 },
}

/// Which of the four solution-multiplicity regimes a parameter pair falls in.
///
/// 1. exactly two solutions below lambda*, one at lambda* (N = 1, alpha <= 1)
/// 2. one solution for small lambda, two near lambda* (N = 1, 1 < alpha <= alpha*)
/// 3. oscillatory branch, multiplicity grows without bound near the asymptote
///    (2 <= N <= 7; N >= 8 with alpha > alpha**; N = 1 with alpha > alpha*)
/// 4. unique solution below lambda*, none at lambda* (N >= 8, alpha <= alpha**)
#[derive(Debug, Clone, Serialize)]
pub struct RegimeReport {
    pub n: u32,
    pub alpha: f64,
    pub discriminant: f64,
    pub sigma: SigmaPair,
    pub equilibrium: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equilibrium_reason: Option<String>,
    pub alpha_star: f64,
    pub alpha_double_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_double_star_reason: Option<String>,
    pub lambda_asymptote: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_asymptote_reason: Option<String>,
    pub regime: u8,
    pub description: String,
}

/// Equilibrium amplitude V_e = (9 / ((2+alpha)(3N+alpha-4)))^{1/3}; present
/// only when the denominator is positive (N >= 2, or N = 1 with alpha > 1).
pub fn equilibrium(n: u32, alpha: f64) -> Option<f64> {
    let d = (2.0 + alpha) * (3.0 * n as f64 + alpha - 4.0);
    if d > 0.0 {
        Some((9.0 / d).cbrt())
    } else {
        None
    }
}

/// Discriminant -8 alpha^2 - (24N - 16) alpha + (9N^2 - 84N + 100) of the
/// linearized oscillation exponents.
pub fn discriminant(n: u32, alpha: f64) -> f64 {
    let nf = n as f64;
    -8.0 * alpha * alpha - (24.0 * nf - 16.0) * alpha + (9.0 * nf * nf - 84.0 * nf + 100.0)
}

/// Oscillation exponents sigma_pm = -(3N + 2 alpha - 2)/6 +- sqrt(Delta)/6.
pub fn sigma_pm(n: u32, alpha: f64) -> SigmaPair {
    let delta = discriminant(n, alpha);
    let re = -(3.0 * n as f64 + 2.0 * alpha - 2.0) / 6.0;
    if delta >= 0.0 {
        let s = delta.sqrt() / 6.0;
        SigmaPair::Real {
            minus: re - s,
            plus: re + s,
        }
    } else {
        SigmaPair::Complex {
            re,
            im: (-delta).sqrt() / 6.0,
        }
    }
}

/// Critical exponent alpha* = -1/2 + sqrt(27/2)/2 for N = 1.
pub fn alpha_star() -> f64 {
    -0.5 + 0.5 * (13.5f64).sqrt()
}

/// Critical exponent alpha** = (4 - 6N + 3 sqrt(6) (N - 2)) / 4, defined for
/// N >= 8; `None` below that.
pub fn alpha_double_star(n: u32) -> Option<f64> {
    if n < 8 {
        return None;
    }
    let nf = n as f64;
    Some((4.0 - 6.0 * nf + 3.0 * 6.0f64.sqrt() * (nf - 2.0)) / 4.0)
}

/// Large-deflection voltage asymptote lambda_* = (2+alpha)(3N+alpha-4)/9,
/// reported only when positive.
pub fn lambda_asymptote(n: u32, alpha: f64) -> Option<f64> {
    let v = (2.0 + alpha) * (3.0 * n as f64 + alpha - 4.0) / 9.0;
    if v > 0.0 {
        Some(v)
    } else {
        None
    }
}

/// Classifies (N, alpha) into the four solution-multiplicity regimes and
/// collects all closed-form asymptotic quantities.
pub fn classify_regime(n: u32, alpha: f64) -> RegimeReport {
    assert!(n >= 1, "dimension must be >= 1");
    assert!(alpha >= 0.0, "exponent must be >= 0");
    let a_star = alpha_star();
    let a_dstar = alpha_double_star(n);

    let (regime, description) = if n == 1 {
        if alpha <= 1.0 {
            let mut d =
                "two solutions below the pull-in voltage, one at it".to_string();
            if alpha == 1.0 {
                // Published boundary descriptions overlap at alpha = 1; kept
                // in regime 1.
                d.push_str("; boundary case alpha = 1 assigned to regime 1");
            }
            (1u8, d)
        } else if alpha <= a_star {
            (
                2,
                "one solution for small voltage, two near pull-in".to_string(),
            )
        } else {
            (
                3,
                "oscillatory branch (N = 1, alpha above alpha*): multiplicity grows \
                 without bound near the asymptote"
                    .to_string(),
            )
        }
    } else if n <= 7 {
        (
            3,
            "oscillatory branch: multiplicity grows without bound near the asymptote"
                .to_string(),
        )
    } else {
        let boundary = a_dstar.expect("alpha** defined for N >= 8");
        if alpha <= boundary {
            (
                4,
                "unique solution below the pull-in voltage, none at it".to_string(),
            )
        } else {
            (
                3,
                "oscillatory branch: multiplicity grows without bound near the asymptote"
                    .to_string(),
            )
        }
    };

    let lam = lambda_asymptote(n, alpha);
    let lambda_asymptote_reason = if lam.is_none() {
        if (2.0 + alpha) * (3.0 * n as f64 + alpha - 4.0) == 0.0 {
            Some("asymptote formula vanishes (boundary case 3N + alpha - 4 = 0)".to_string())
        } else {
            Some("no positive equilibrium: branch voltage decays to zero".to_string())
        }
    } else {
        None
    };

    let eq = equilibrium(n, alpha);
    let equilibrium_reason = eq.is_none().then(|| {
        "no positive equilibrium amplitude (needs N >= 2, or N = 1 with alpha > 1)".to_string()
    });
    let alpha_double_star_reason = a_dstar
        .is_none()
        .then(|| "defined only for N >= 8".to_string());

    RegimeReport {
        n,
        alpha,
        discriminant: discriminant(n, alpha),
        sigma: sigma_pm(n, alpha),
        equilibrium: eq,
        equilibrium_reason,
        alpha_star: a_star,
        alpha_double_star: a_dstar,
        alpha_double_star_reason,
        lambda_asymptote: lam,
        lambda_asymptote_reason,
        regime,
        description,
    }
}
