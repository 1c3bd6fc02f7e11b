//! Bifurcation diagrams for the deflection equation.
//!
//! For power-law profiles on the unit ball the boundary-value problem maps
//! to a single initial-value problem: with u = 1 - w(gamma r)/w(gamma) and
//! w'' + (N-1)/P w' = P^alpha / w^2, w(0) = 1, w'(0) = 0, every gamma > 0
//! yields the branch point u(0) = 1 - 1/w(gamma), lambda = gamma^{2+alpha} /
//! w(gamma)^3. General profiles are traced by pseudo-arclength continuation
//! on the radial finite-difference system.

use crate::asymptotics;
use crate::domain::{Domain, Profile, ProfileKind};
use crate::error::{Error, Result};
use crate::ode;
use crate::radial::{newton_solve, picard_minimal, DiscreteLaplacian, RadialGrid};
use crate::roots::golden_max;

/// State of the shooting ODE at scaled radius P.
#[derive(Debug, Clone, Copy)]
pub struct ShootState {
    pub p: f64,
    pub w: f64,
    pub w_prime: f64,
}

/// One sample of a bifurcation branch.
#[derive(Debug, Clone, Copy)]
pub struct BranchPoint {
    /// Shooting parameter; `None` for continuation-traced points.
    pub gamma: Option<f64>,
    pub lambda: f64,
    /// Center deflection |u(0)|.
    pub u0: f64,
    pub arc_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldKind {
    /// Local maximum of lambda along the branch.
    Max,
    /// Local minimum.
    Min,
}

/// A refined fold (saddle-node) location on a branch.
#[derive(Debug, Clone, Copy)]
pub struct Fold {
    /// Index into `points` of the inserted fold sample.
    pub index: usize,
    pub gamma: Option<f64>,
    pub lambda: f64,
    pub u0: f64,
    pub kind: FoldKind,
}

/// A traced branch: points ordered by increasing center deflection.
#[derive(Debug, Clone)]
pub struct BifurcationBranch {
    pub points: Vec<BranchPoint>,
    pub folds: Vec<Fold>,
    /// Supremum of lambda over the traced branch (the pull-in voltage once
    /// the first fold is inside the traced range).
    pub lambda_star: f64,
    /// Large-deflection asymptote of lambda, when one exists.
    pub lambda_asymptote: Option<f64>,
    /// False when continuation stopped early (corrector failure).
    pub complete: bool,
    /// Human-readable parameter description for serialized output.
    pub descriptor: String,
}

impl BifurcationBranch {
    /// CSV with one row per branch point. Fold rows carry is_fold = 1.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# {} lambda_star={:.17e} lambda_asymptote={}\n",
            self.descriptor,
            self.lambda_star,
            match self.lambda_asymptote {
                Some(v) => format!("{v:.17e}"),
                None => "none".to_string(),
            }
        ));
        out.push_str("gamma,lambda,u0,is_fold\n");
        let fold_set: std::collections::HashSet<usize> =
            self.folds.iter().map(|f| f.index).collect();
        for (i, p) in self.points.iter().enumerate() {
            let g = match p.gamma {
                Some(g) => format!("{g:.17e}"),
                None => String::new(),
            };
            let is_fold = if fold_set.contains(&i) { 1 } else { 0 };
            out.push_str(&format!("{g},{:.17e},{:.17e},{is_fold}\n", p.lambda, p.u0));
        }
        out
    }
}

const SERIES_HANDOFF: f64 = 1e-3;
const SHOOT_RTOL: f64 = 1e-10;
const SHOOT_ATOL: f64 = 1e-12;

/// Series expansion of the shooting solution near P = 0:
/// w = 1 + c P^{2+alpha} + d P^{2(2+alpha)} + ...
fn series_state(n: u32, alpha: f64, p: f64) -> [f64; 2] {
    let nf = n as f64;
    let c = 1.0 / ((2.0 + alpha) * (nf + alpha));
    let m = 2.0 * (2.0 + alpha);
    let d = -2.0 * c / (m * (m + nf - 2.0));
    let w = 1.0 + c * p.powf(2.0 + alpha) + d * p.powf(m);
    let wp = c * (2.0 + alpha) * p.powf(1.0 + alpha) + d * m * p.powf(m - 1.0);
    [w, wp]
}

fn shoot_rhs(n: u32, alpha: f64) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] {
    let nf = n as f64;
    move |p: f64, y: &[f64; 2]| [y[1], -(nf - 1.0) / p * y[1] + p.powf(alpha) / (y[0] * y[0])]
}

/// Integrates the shooting ODE from the series start to P = gamma.
pub fn shoot(n: u32, alpha: f64, gamma: f64) -> Result<ShootState> {
    shoot_from(n, alpha, gamma, SERIES_HANDOFF)
}

/// Same as [`shoot`] with an explicit series handoff point (used by the
/// start-consistency tests).
pub fn shoot_from(n: u32, alpha: f64, gamma: f64, p0: f64) -> Result<ShootState> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "shooting parameter must be positive, got {gamma}"
        )));
    }
    if gamma <= p0 {
        let y = series_state(n, alpha, gamma);
        return Ok(ShootState {
            p: gamma,
            w: y[0],
            w_prime: y[1],
        });
    }
    let rhs = shoot_rhs(n, alpha);
    let y0 = series_state(n, alpha, p0);
    let y = ode::integrate(&rhs, p0, y0, gamma, SHOOT_RTOL, SHOOT_ATOL)?;
    Ok(ShootState {
        p: gamma,
        w: y[0],
        w_prime: y[1],
    })
}

/// Deflection profile u(r) = 1 - w(gamma r)/w(gamma) of the unit-ball
/// power-law solution at shooting parameter gamma, sampled at `radii`
/// (which must be increasing within [0, 1]).
pub fn shoot_deflection_profile(n: u32, alpha: f64, gamma: f64, radii: &[f64]) -> Result<Vec<f64>> {
    let rhs = shoot_rhs(n, alpha);
    let mut w_vals = Vec::with_capacity(radii.len());
    let mut t = SERIES_HANDOFF;
    let mut y = series_state(n, alpha, t);
    for &r in radii {
        let p = gamma * r;
        if p <= SERIES_HANDOFF {
            w_vals.push(series_state(n, alpha, p)[0]);
            continue;
        }
        y = ode::integrate(&rhs, t, y, p, SHOOT_RTOL, SHOOT_ATOL)?;
        t = p;
        w_vals.push(y[0]);
    }
    let w_gamma = if t < gamma {
        ode::integrate(&rhs, t, y, gamma, SHOOT_RTOL, SHOOT_ATOL)?[0]
    } else {
        y[0]
    };
    Ok(w_vals.iter().map(|w| 1.0 - w / w_gamma).collect())
}

/// Applies the branch map to the shoot result at gamma.
pub fn branch_point(n: u32, alpha: f64, gamma: f64) -> Result<BranchPoint> {
    let s = shoot(n, alpha, gamma)?;
    Ok(BranchPoint {
        gamma: Some(gamma),
        lambda: gamma.powf(2.0 + alpha) / (s.w * s.w * s.w),
        u0: 1.0 - 1.0 / s.w,
        arc_index: 0,
    })
}

fn lambda_of_gamma(n: u32, alpha: f64, gamma: f64) -> f64 {
    match shoot(n, alpha, gamma) {
        Ok(s) => gamma.powf(2.0 + alpha) / (s.w * s.w * s.w),
        Err(_) => f64::NAN,
    }
}

/// Traces the unit-ball power-law branch over a log grid of gamma in
/// (0, gamma_max], refining every fold by golden-section search.
pub fn trace_branch(n: u32, alpha: f64, gamma_max: f64, n_samples: usize) -> Result<BifurcationBranch> {
    trace_branch_with_threads(n, alpha, gamma_max, n_samples, 1)
}

/// [`trace_branch`] with the gamma samples evaluated on up to `threads`
/// worker threads. Each sample is shot independently from the series start,
/// so results do not depend on the thread count.
pub fn trace_branch_with_threads(
    n: u32,
    alpha: f64,
    gamma_max: f64,
    n_samples: usize,
    threads: usize,
) -> Result<BifurcationBranch> {
    if n_samples < 100 {
        return Err(Error::InvalidParameter(format!(
            "need at least 100 samples, got {n_samples}"
        )));
    }
    if !(gamma_max > 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "gamma_max must exceed 1e-3, got {gamma_max}"
        )));
    }
    let gamma_min: f64 = 1e-3;
    let log_lo = gamma_min.ln();
    let log_hi = gamma_max.ln();
    let gammas: Vec<f64> = (0..n_samples)
        .map(|i| (log_lo + (log_hi - log_lo) * i as f64 / (n_samples - 1) as f64).exp())
        .collect();

    let threads = threads.max(1).min(n_samples);
    let mut lambdas = vec![0.0f64; n_samples];
    let mut u0s = vec![0.0f64; n_samples];
    if threads == 1 {
        for (i, &g) in gammas.iter().enumerate() {
            let s = shoot(n, alpha, g)?;
            lambdas[i] = g.powf(2.0 + alpha) / (s.w * s.w * s.w);
            u0s[i] = 1.0 - 1.0 / s.w;
        }
    } else {
        let chunk = n_samples.div_ceil(threads);
        let results: Vec<Result<Vec<(f64, f64)>>> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for block in gammas.chunks(chunk) {
                handles.push(scope.spawn(move || {
                    block
                        .iter()
                        .map(|&g| {
                            let s = shoot(n, alpha, g)?;
                            Ok((g.powf(2.0 + alpha) / (s.w * s.w * s.w), 1.0 - 1.0 / s.w))
                        })
                        .collect()
                }));
            }
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut idx = 0;
        for block in results {
            for (lam, u0) in block? {
                lambdas[idx] = lam;
                u0s[idx] = u0;
                idx += 1;
            }
        }
    }

    // Assemble points, then locate and refine folds.
    let mut points: Vec<BranchPoint> = gammas
        .iter()
        .zip(lambdas.iter().zip(&u0s))
        .map(|(&g, (&lam, &u0))| BranchPoint {
            gamma: Some(g),
            lambda: lam,
            u0,
            arc_index: 0,
        })
        .collect();

    // Peak detection with hysteresis: an extremum counts as a fold only
    // once the voltage has moved back by more than the integration noise
    // floor, which keeps the flat approach to an asymptote from spawning
    // spurious folds. The width of that band is the certification limit on
    // the fold count.
    let mut folds = Vec::new();
    let mut refined: Vec<(usize, BranchPoint, FoldKind)> = Vec::new();
    let noise = |lam: f64| 100.0 * SHOOT_RTOL * lam.abs() + 1e-300;
    let mut trend_up = true;
    let mut ext_idx = 0usize;
    let mut bracket_lo = 0usize;
    for i in 1..n_samples {
        let ext = lambdas[ext_idx];
        if trend_up {
            if lambdas[i] > ext {
                ext_idx = i;
            } else if ext - lambdas[i] > noise(ext) {
                if ext_idx > 0 {
                    refined.push((ext_idx, confirm_fold(
                        n,
                        alpha,
                        &gammas,
                        bracket_lo.min(ext_idx.saturating_sub(1)),
                        i,
                        FoldKind::Max,
                    )?, FoldKind::Max));
                }
                bracket_lo = ext_idx;
                ext_idx = i;
                trend_up = false;
            }
        } else if lambdas[i] < ext {
            ext_idx = i;
        } else if lambdas[i] - ext > noise(ext) {
            refined.push((ext_idx, confirm_fold(
                n,
                alpha,
                &gammas,
                bracket_lo.min(ext_idx.saturating_sub(1)),
                i,
                FoldKind::Min,
            )?, FoldKind::Min));
            bracket_lo = ext_idx;
            ext_idx = i;
            trend_up = true;
        }
    }
    // Insert refined fold points at their gamma position, keeping the
    // branch ordered by center deflection.
    for (offset, (_detect_idx, bp, kind)) in refined.into_iter().enumerate() {
        let g = bp.gamma.unwrap();
        let insert_at = gammas.partition_point(|&x| x < g) + offset;
        points.insert(insert_at, bp);
        folds.push(Fold {
            index: insert_at,
            gamma: bp.gamma,
            lambda: bp.lambda,
            u0: bp.u0,
            kind,
        });
    }
    for (i, p) in points.iter_mut().enumerate() {
        p.arc_index = i;
    }

    let lambda_star = points.iter().fold(0.0f64, |a, p| a.max(p.lambda));
    Ok(BifurcationBranch {
        points,
        folds,
        lambda_star,
        lambda_asymptote: asymptotics::lambda_asymptote(n, alpha),
        complete: true,
        descriptor: format!("N={n} alpha={alpha}"),
    })
}

/// Rescales the unit-ball power-law branch to a concrete (domain, profile)
/// pair: lambda scales by R^-(2+alpha)/coefficient, center deflection is
/// scale invariant. Constant profiles are the alpha = 0 case.
pub fn trace_branch_for_domain(
    domain: &Domain,
    profile: &Profile,
    gamma_max: f64,
    n_samples: usize,
    threads: usize,
) -> Result<BifurcationBranch> {
    let (alpha, coefficient) = match profile.kind() {
        ProfileKind::PowerLaw => (profile.alpha(), profile.coefficient()),
        ProfileKind::Constant => (0.0, 1.0),
        // A rate-zero exponential is the uniform profile.
        ProfileKind::Exponential if profile.alpha() == 0.0 => (0.0, 1.0),
        ProfileKind::Exponential => {
            return Err(Error::WrongProfile {
                expected: "power-law or constant",
                got: profile.to_string(),
            })
        }
    };
    let n = domain.dimension();
    let scale = domain.max_radius().powf(-(2.0 + alpha)) / coefficient;
    let mut branch = trace_branch_with_threads(n, alpha, gamma_max, n_samples, threads)?;
    for p in &mut branch.points {
        p.lambda *= scale;
    }
    for f in &mut branch.folds {
        f.lambda *= scale;
    }
    branch.lambda_star *= scale;
    branch.lambda_asymptote = branch.lambda_asymptote.map(|v| v * scale);
    branch.descriptor = format!("domain={domain} profile={profile}");
    Ok(branch)
}

/// Number of branch points with the given voltage: crossings of the traced
/// polyline (which starts at the origin) with the vertical line at lambda.
pub fn count_solutions(branch: &BifurcationBranch, lambda: f64) -> Result<usize> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "voltage must be positive, got {lambda}"
        )));
    }
    let last = branch
        .points
        .last()
        .ok_or_else(|| Error::InsufficientTrace("empty branch".into()))?;
    // A fold-free branch still climbing toward its asymptote can cross
    // beyond the traced range; refuse to answer there.
    if branch.folds.is_empty() && branch.lambda_asymptote.is_some() && lambda > last.lambda {
        return Err(Error::InsufficientTrace(format!(
            "branch traced only up to lambda = {}, query {lambda} lies beyond",
            last.lambda
        )));
    }
    let mut count = 0usize;
    let mut prev = 0.0f64; // branch emanates from the origin
    for p in &branch.points {
        if (prev - lambda) * (p.lambda - lambda) < 0.0 {
            count += 1;
        }
        prev = p.lambda;
    }
    // Tangency at a refined fold counts once.
    for f in &branch.folds {
        if (f.lambda - lambda).abs() <= 1e-12 * lambda.max(1.0) {
            count += 1;
        }
    }
    Ok(count)
}

/// Pseudo-arclength continuation of the radial finite-difference system,
/// for profiles outside the shooting map's reach (exponential kinds).
///
/// Secant predictor, Newton corrector on the bordered system, step length
/// adapted to the corrector iteration count. Steps are refined near every
/// voltage extremum so the returned `lambda_star` resolves the fold tightly.
pub fn continuation_trace(
    domain: &Domain,
    profile: &Profile,
    grid_n: usize,
    max_u0: f64,
) -> Result<BifurcationBranch> {
    let grid = RadialGrid::new(domain, grid_n)?;
    let lap = DiscreteLaplacian::assemble(&grid);
    let lo = match grid.domain().is_slab() {
        true => 1usize,
        false => 0usize,
    };
    let m = grid.n() - 1 - lo;
    let f_full = grid.profile_values(profile);
    let fv: Vec<f64> = f_full[lo..lo + m].to_vec();
    let mf = m as f64;

    let resid = |u: &[f64], lam: f64| -> Vec<f64> {
        let au = lap.apply(u);
        (0..m)
            .map(|i| {
                let d = 1.0 - u[i];
                au[i] - lam * fv[i] / (d * d)
            })
            .collect()
    };
    let max_norm = |v: &[f64]| v.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let res_tol = 1e-10f64.max(crate::radial::residual_floor(&grid));

    // Two seed points at small voltage via the monotone iteration plus a
    // Newton polish.
    let b = crate::bounds::bounds_report(domain, profile)?;
    let lam0 = 1e-3 * b.lower_best;
    let lam1 = 2.0 * lam0;
    let seed = |lam: f64| -> Result<Vec<f64>> {
        let out = picard_minimal(lam, &grid, profile, 10_000, 1e-6)?;
        let sol = out.solution.ok_or(Error::NoConvergence {
            iterations: out.iterations,
            residual: f64::NAN,
        })?;
        let sol = newton_solve(&sol.u, lam, &grid, profile, 1e-12)?;
        Ok(sol.u[lo..lo + m].to_vec())
    };
    let mut u_prev = seed(lam0)?;
    let mut lam_prev = lam0;
    let mut u_cur = seed(lam1)?;
    let mut lam_cur = lam1;

    let mut points: Vec<BranchPoint> = Vec::new();
    let push_point = |points: &mut Vec<BranchPoint>, u: &[f64], lam: f64| {
        let u0 = u.iter().cloned().fold(0.0f64, f64::max);
        points.push(BranchPoint {
            gamma: None,
            lambda: lam,
            u0,
            arc_index: points.len(),
        });
    };
    push_point(&mut points, &u_prev, lam_prev);
    push_point(&mut points, &u_cur, lam_cur);

    let ds_max = 0.05;
    let mut ds: f64 = 0.01;
    let ds_min = 1e-10;
    let mut complete = true;
    // Bracketing triples around each voltage extremum, for parabola fits.
    struct ExtremumTriple {
        s: [f64; 3],
        lam: [f64; 3],
        kind: FoldKind,
        u0: f64,
        /// Index of the mid point of the triple in `points`.
        at: usize,
    }
    let mut folds_raw: Vec<ExtremumTriple> = Vec::new();
    let mut trend: Option<bool> = None; // lambda increasing?

    let mut step_count = 0usize;
    while step_count < 50_000 {
        step_count += 1;
        // Scaled secant tangent.
        let mut t_u: Vec<f64> = (0..m).map(|i| u_cur[i] - u_prev[i]).collect();
        let mut t_l = lam_cur - lam_prev;
        let norm = ((t_u.iter().map(|v| v * v).sum::<f64>()) / mf + t_l * t_l).sqrt();
        if norm == 0.0 {
            break;
        }
        for v in &mut t_u {
            *v /= norm;
        }
        t_l /= norm;

        // Predictor.
        let u_pred: Vec<f64> = (0..m).map(|i| u_cur[i] + ds * t_u[i]).collect();
        let lam_pred = lam_cur + ds * t_l;

        // Corrector on [F = 0; <t, X - X_pred> = 0].
        let mut u_new = u_pred.clone();
        let mut lam_new = lam_pred;
        let mut ok = false;
        'corrector: for _ in 0..12 {
            if u_new.iter().cloned().fold(f64::MIN, f64::max) >= 1.0 - 1e-9 {
                break 'corrector;
            }
            let res = resid(&u_new, lam_new);
            let g: f64 = (0..m)
                .map(|i| t_u[i] * (u_new[i] - u_pred[i]))
                .sum::<f64>()
                / mf
                + t_l * (lam_new - lam_pred);
            if max_norm(&res) < res_tol && g.abs() < 1e-10 {
                ok = true;
                break 'corrector;
            }
            let shift: Vec<f64> = (0..m)
                .map(|i| {
                    let d = 1.0 - u_new[i];
                    -2.0 * lam_new * fv[i] / (d * d * d)
                })
                .collect();
            let neg_res: Vec<f64> = res.iter().map(|r| -r).collect();
            let f_lam: Vec<f64> = (0..m)
                .map(|i| {
                    let d = 1.0 - u_new[i];
                    fv[i] / (d * d)
                })
                .collect();
            let a = match lap.solve_shifted(&shift, &neg_res) {
                Ok(v) => v,
                Err(_) => break 'corrector,
            };
            let bsol = match lap.solve_shifted(&shift, &f_lam) {
                Ok(v) => v,
                Err(_) => break 'corrector,
            };
            let ta: f64 = (0..m).map(|i| t_u[i] * a[i]).sum::<f64>() / mf;
            let tb: f64 = (0..m).map(|i| t_u[i] * bsol[i]).sum::<f64>() / mf;
            let denom = tb + t_l;
            if denom.abs() < 1e-300 {
                break 'corrector;
            }
            let dlam = (-g - ta) / denom;
            for i in 0..m {
                u_new[i] += a[i] + dlam * bsol[i];
            }
            lam_new += dlam;
        }

        if !ok {
            ds *= 0.4;
            if ds < ds_min {
                complete = false;
                break;
            }
            continue;
        }

        // Trend-flip refinement: resolve each voltage extremum with fine
        // steps before stepping across it.
        let new_trend = lam_new > lam_cur;
        if let Some(old) = trend {
            if old != new_trend && ds > 2e-4 {
                ds = (ds * 0.25).max(1e-4);
                continue;
            }
        }
        if let Some(old) = trend {
            if old != new_trend {
                // Extremum bracketed by the last three points; parabola fit.
                let s1 = {
                    let du: f64 =
                        (0..m).map(|i| (u_cur[i] - u_prev[i]).powi(2)).sum::<f64>() / mf;
                    (du + (lam_cur - lam_prev).powi(2)).sqrt()
                };
                let s2 = s1 + {
                    let du: f64 =
                        (0..m).map(|i| (u_new[i] - u_cur[i]).powi(2)).sum::<f64>() / mf;
                    (du + (lam_new - lam_cur).powi(2)).sqrt()
                };
                folds_raw.push(ExtremumTriple {
                    s: [0.0, s1, s2],
                    lam: [lam_prev, lam_cur, lam_new],
                    kind: if old { FoldKind::Max } else { FoldKind::Min },
                    u0: points.last().map(|p| p.u0).unwrap_or(0.0),
                    at: points.len() - 1,
                });
            }
        }
        trend = Some(new_trend);

        u_prev = std::mem::replace(&mut u_cur, u_new);
        lam_prev = lam_cur;
        lam_cur = lam_new;
        push_point(&mut points, &u_cur, lam_cur);

        let u0 = points.last().unwrap().u0;
        if u0 >= max_u0 {
            break;
        }
        // Step adaptation: cheap correctors allow growth.
        ds = (ds * 1.3).min(ds_max);
    }

    // Convert raw fold triples into fold records via parabola vertices.
    let mut folds = Vec::new();
    for t in folds_raw {
        let lam_v = parabola_vertex(t.s[0], t.lam[0], t.s[1], t.lam[1], t.s[2], t.lam[2]);
        folds.push(Fold {
            index: t.at.min(points.len() - 1),
            gamma: None,
            lambda: lam_v,
            u0: t.u0,
            kind: t.kind,
        });
    }

    let mut lambda_star = points.iter().fold(0.0f64, |a, p| a.max(p.lambda));
    for f in &folds {
        if f.kind == FoldKind::Max {
            lambda_star = lambda_star.max(f.lambda);
        }
    }

    Ok(BifurcationBranch {
        points,
        folds,
        lambda_star,
        lambda_asymptote: None,
        complete,
        descriptor: format!("domain={domain} profile={profile}"),
    })
}

/// Golden-section refinement of a detected fold within its sample bracket.
fn confirm_fold(
    n: u32,
    alpha: f64,
    gammas: &[f64],
    lo: usize,
    hi: usize,
    kind: FoldKind,
) -> Result<BranchPoint> {
    let g_lo = gammas[lo];
    let g_hi = gammas[hi.min(gammas.len() - 1)];
    let tol = 1e-8 * g_hi.max(1.0);
    let g_fold = match kind {
        FoldKind::Max => golden_max(|g| lambda_of_gamma(n, alpha, g), g_lo, g_hi, tol).0,
        FoldKind::Min => golden_max(|g| -lambda_of_gamma(n, alpha, g), g_lo, g_hi, tol).0,
    };
    branch_point(n, alpha, g_fold)
}

/// Vertex ordinate of the parabola through three (s, lambda) samples.
fn parabola_vertex(s0: f64, l0: f64, s1: f64, l1: f64, s2: f64, l2: f64) -> f64 {
    // Lagrange coefficients for the quadratic.
    let d0 = (s0 - s1) * (s0 - s2);
    let d1 = (s1 - s0) * (s1 - s2);
    let d2 = (s2 - s0) * (s2 - s1);
    let a = l0 / d0 + l1 / d1 + l2 / d2;
    let b = -(l0 * (s1 + s2) / d0 + l1 * (s0 + s2) / d1 + l2 * (s0 + s1) / d2);
    let c = l0 * s1 * s2 / d0 + l1 * s0 * s2 / d1 + l2 * s0 * s1 / d2;
    if a == 0.0 {
        return l1;
    }
    let sv = -b / (2.0 * a);
    a * sv * sv + b * sv + c
}

/// Pull-in voltage from the shooting map: the refined global maximum of
/// lambda over the branch.
pub fn lambda_star_shooting(domain: &Domain, profile: &Profile, gamma_max: f64) -> Result<f64> {
    let branch = trace_branch_for_domain(domain, profile, gamma_max, 1200, 1)?;
    Ok(branch.lambda_star)
}
