//! Finite-difference radial solver for the stationary deflection equation
//! -Laplace(u) = lambda f / (1 - u)^2 with zero boundary data.
//!
//! Balls are discretized on [0, R] in conservative (flux) form, which keeps
//! the scheme second order, reduces to the symmetry-limit stencil
//! 2N (u0 - u1) / h^2 at the origin, and makes the system matrix similar to
//! a symmetric one under the radial volume weights. The slab keeps its full
//! interval [-1/2, 1/2] with the plain 1-D Laplacian.

use crate::bounds::bounds_report;
use crate::domain::{Domain, DomainKind, Profile};
use crate::error::{Error, Result};
use serde::Serialize;

/// Largest p for which the stress integrand f/(1-u)^3 admits a uniform
/// L^p bound along the minimal branch: 1 + 4/3 + 2 sqrt(2/3).
pub const ENERGY_P_MAX: f64 = 3.9663264951887854;

/// Uniform radial grid whose last node carries the Dirichlet condition.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    domain: Domain,
    nodes: Vec<f64>,
    h: f64,
}

impl RadialGrid {
    /// Uniform grid with `n >= 64` nodes (boundary nodes included).
    pub fn new(domain: &Domain, n: usize) -> Result<RadialGrid> {
        if n < 64 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 64 nodes, got {n}"
            )));
        }
        let (start, end) = match domain.kind() {
            DomainKind::Slab => (-0.5, 0.5),
            DomainKind::Ball => (0.0, domain.max_radius()),
        };
        let h = (end - start) / (n - 1) as f64;
        let nodes = (0..n).map(|i| start + i as f64 * h).collect();
        Ok(RadialGrid {
            domain: *domain,
            nodes,
            h,
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// Index of the first non-Dirichlet node.
    fn first_unknown(&self) -> usize {
        match self.domain.kind() {
            DomainKind::Slab => 1,
            DomainKind::Ball => 0,
        }
    }

    /// Number of unknowns (nodes minus pinned boundary nodes).
    fn n_unknowns(&self) -> usize {
        self.n() - 1 - self.first_unknown()
    }

    /// Profile values at the nodes.
    pub fn profile_values(&self, profile: &Profile) -> Vec<f64> {
        self.nodes.iter().map(|&x| profile.eval(x.abs())).collect()
    }
}

/// Discrete negative Laplacian on the unknown nodes, tridiagonal.
#[derive(Debug, Clone)]
pub(crate) struct DiscreteLaplacian {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    /// Similarity weights making the matrix symmetric; used for Rayleigh
    /// quotients.
    pub weights: Vec<f64>,
}

impl DiscreteLaplacian {
    pub fn assemble(grid: &RadialGrid) -> DiscreteLaplacian {
        let m = grid.n_unknowns();
        let h = grid.h;
        let h2 = h * h;
        let mut sub = vec![0.0; m];
        let mut diag = vec![0.0; m];
        let mut sup = vec![0.0; m];
        let mut weights = vec![1.0; m];
        match grid.domain.kind() {
            DomainKind::Slab => {
                for i in 0..m {
                    sub[i] = -1.0 / h2;
                    diag[i] = 2.0 / h2;
                    sup[i] = -1.0 / h2;
                }
            }
            DomainKind::Ball => {
                let n = grid.domain.dimension() as i32;
                let nf = n as f64;
                // Symmetry-limit row at r = 0.
                diag[0] = 2.0 * nf / h2;
                sup[0] = -2.0 * nf / h2;
                weights[0] = (0.5 * h).powi(n - 1) / (2.0 * nf);
                for i in 1..m {
                    let r = grid.nodes[i];
                    let w = r.powi(n - 1);
                    let am = (r - 0.5 * h).powi(n - 1);
                    let ap = (r + 0.5 * h).powi(n - 1);
                    sub[i] = -am / (w * h2);
                    diag[i] = (am + ap) / (w * h2);
                    sup[i] = -ap / (w * h2);
                    weights[i] = w;
                }
            }
        }
        sub[0] = 0.0;
        sup[m - 1] = 0.0;
        DiscreteLaplacian {
            sub,
            diag,
            sup,
            weights,
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = x.len();
        let mut out = vec![0.0; m];
        for i in 0..m {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.sub[i] * x[i - 1];
            }
            if i + 1 < m {
                v += self.sup[i] * x[i + 1];
            }
            out[i] = v;
        }
        out
    }

    /// Solves (A + diag(shift)) x = rhs by the Thomas algorithm.
    pub fn solve_shifted(&self, shift: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
        let m = rhs.len();
        let mut c = vec![0.0; m];
        let mut d = vec![0.0; m];
        let first = self.diag[0] + shift[0];
        if first == 0.0 || !first.is_finite() {
            return Err(Error::NumericFailure {
                what: "tridiagonal pivot",
                residual: first,
            });
        }
        c[0] = self.sup[0] / first;
        d[0] = rhs[0] / first;
        for i in 1..m {
            let denom = self.diag[i] + shift[i] - self.sub[i] * c[i - 1];
            if denom == 0.0 || !denom.is_finite() {
                return Err(Error::NumericFailure {
                    what: "tridiagonal pivot",
                    residual: denom,
                });
            }
            c[i] = self.sup[i] / denom;
            d[i] = (rhs[i] - self.sub[i] * d[i - 1]) / denom;
        }
        let mut x = vec![0.0; m];
        x[m - 1] = d[m - 1];
        for i in (0..m - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        Ok(x)
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let zeros = vec![0.0; rhs.len()];
        self.solve_shifted(&zeros, rhs)
    }
}

/// A discrete solution of the deflection equation at a fixed voltage.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    pub grid: RadialGrid,
    pub lambda: f64,
    /// Deflection at every node, boundary nodes included.
    pub u: Vec<f64>,
    pub max_u: f64,
    pub residual_norm: f64,
    pub newton_iters: usize,
}

impl RadialSolution {
    fn build(
        grid: &RadialGrid,
        lambda: f64,
        u: Vec<f64>,
        profile: &Profile,
        newton_iters: usize,
    ) -> Result<RadialSolution> {
        let max_u = u.iter().cloned().fold(f64::MIN, f64::max);
        if max_u > 1.0 - 1e-10 {
            return Err(Error::SingularState { max_u });
        }
        let res = residual(&u, lambda, grid, profile)?;
        let residual_norm = res.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        Ok(RadialSolution {
            grid: grid.clone(),
            lambda,
            u,
            max_u,
            residual_norm,
            newton_iters,
        })
    }

    /// Serializes the solution as CSV: a metadata header line followed by
    /// (r, u) rows in full precision.
    pub fn to_csv(&self, profile: &Profile) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# lambda={:.17e} N={} profile={} residual_norm={:.3e}\n",
            self.lambda,
            self.grid.domain().dimension(),
            profile,
            self.residual_norm
        ));
        out.push_str("r,u\n");
        for (r, u) in self.grid.nodes().iter().zip(&self.u) {
            out.push_str(&format!("{:.17e},{:.17e}\n", r, u));
        }
        out
    }
}

/// Outcome of the monotone iteration from u = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MinimalStatus {
    Converged,
    Collapsed,
    IterationLimit,
}

/// Result of [`picard_minimal`].
#[derive(Debug, Clone)]
pub struct MinimalOutcome {
    pub status: MinimalStatus,
    pub solution: Option<RadialSolution>,
    pub iterations: usize,
    pub final_max_u: f64,
    /// Number of pointwise decreases observed across all iterations; the
    /// iteration is provably monotone, so anything nonzero flags a bug.
    pub pointwise_decrease_events: usize,
}

fn check_below_contact(u: &[f64]) -> Result<()> {
    for &v in u {
        if v >= 1.0 {
            return Err(Error::SingularState { max_u: v });
        }
    }
    Ok(())
}

/// Residual of the discrete system at state `u` (full node vector): zero at
/// pinned boundary nodes, A u - lambda f / (1 - u)^2 elsewhere.
pub fn residual(u: &[f64], lambda: f64, grid: &RadialGrid, profile: &Profile) -> Result<Vec<f64>> {
    let f = grid.profile_values(profile);
    residual_with_source(u, lambda, grid, &f)
}

/// Residual against explicit per-node source values; the seam used by the
/// manufactured-solution tests.
pub(crate) fn residual_with_source(
    u: &[f64],
    lambda: f64,
    grid: &RadialGrid,
    f: &[f64],
) -> Result<Vec<f64>> {
    check_below_contact(u)?;
    let lap = DiscreteLaplacian::assemble(grid);
    let lo = grid.first_unknown();
    let m = grid.n_unknowns();
    let interior: Vec<f64> = u[lo..lo + m].to_vec();
    let au = lap.apply(&interior);
    let mut out = vec![0.0; grid.n()];
    for i in 0..m {
        let g = lo + i;
        let denom = 1.0 - u[g];
        out[g] = au[i] - lambda * f[g] / (denom * denom);
    }
    Ok(out)
}

/// Smallest residual max-norm the discrete operator can resolve: rounding
/// noise of the O(1/h^2) difference quotients.
pub(crate) fn residual_floor(grid: &RadialGrid) -> f64 {
    16.0 * f64::EPSILON / (grid.spacing() * grid.spacing())
}

/// Damped Newton iteration on the discrete system, starting from `initial`
/// (full node vector). Steps are halved until the contact constraint holds
/// and the residual decreases. Tolerances below the rounding floor of the
/// residual evaluation are clamped to it.
pub fn newton_solve(
    initial: &[f64],
    lambda: f64,
    grid: &RadialGrid,
    profile: &Profile,
    tol: f64,
) -> Result<RadialSolution> {
    check_below_contact(initial)?;
    let tol = tol.max(residual_floor(grid));
    let f = grid.profile_values(profile);
    let lap = DiscreteLaplacian::assemble(grid);
    let lo = grid.first_unknown();
    let m = grid.n_unknowns();
    let mut u: Vec<f64> = initial[lo..lo + m].to_vec();
    let fv: Vec<f64> = f[lo..lo + m].to_vec();

    let resid = |u: &[f64]| -> Vec<f64> {
        let au = lap.apply(u);
        (0..m)
            .map(|i| {
                let d = 1.0 - u[i];
                au[i] - lambda * fv[i] / (d * d)
            })
            .collect()
    };
    let norm = |v: &[f64]| v.iter().fold(0.0f64, |a, &b| a.max(b.abs()));

    let mut res = resid(&u);
    let mut res_norm = norm(&res);
    for iter in 0..50 {
        if res_norm < tol {
            let mut full = vec![0.0; grid.n()];
            full[lo..lo + m].copy_from_slice(&u);
            return RadialSolution::build(grid, lambda, full, profile, iter);
        }
        // Jacobian shift: derivative of the source term.
        let shift: Vec<f64> = (0..m)
            .map(|i| {
                let d = 1.0 - u[i];
                -2.0 * lambda * fv[i] / (d * d * d)
            })
            .collect();
        let neg_res: Vec<f64> = res.iter().map(|&r| -r).collect();
        let step = lap.solve_shifted(&shift, &neg_res)?;

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = (0..m).map(|i| u[i] + t * step[i]).collect();
            let max_t = trial.iter().cloned().fold(f64::MIN, f64::max);
            if max_t < 1.0 - 1e-12 {
                let trial_res = resid(&trial);
                let trial_norm = norm(&trial_res);
                if trial_norm < res_norm || trial_norm < tol {
                    u = trial;
                    res = trial_res;
                    res_norm = trial_norm;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence {
                iterations: iter,
                residual: res_norm,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: 50,
        residual: res_norm,
    })
}

/// Monotone iteration for the minimal solution: repeated Poisson solves
/// A u_{k+1} = lambda f / (1 - u_k)^2 from u_0 = 0.
pub fn picard_minimal(
    lambda: f64,
    grid: &RadialGrid,
    profile: &Profile,
    max_iter: usize,
    collapse_margin: f64,
) -> Result<MinimalOutcome> {
    if lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "voltage parameter must be nonnegative, got {lambda}"
        )));
    }
    let f = grid.profile_values(profile);
    let lap = DiscreteLaplacian::assemble(grid);
    let lo = grid.first_unknown();
    let m = grid.n_unknowns();
    let fv: Vec<f64> = f[lo..lo + m].to_vec();

    let mut u = vec![0.0; m];
    let mut decreases = 0usize;
    for iter in 1..=max_iter {
        let rhs: Vec<f64> = (0..m)
            .map(|i| {
                let d = 1.0 - u[i];
                lambda * fv[i] / (d * d)
            })
            .collect();
        let v = lap.solve(&rhs)?;
        let max_v = v.iter().cloned().fold(0.0f64, f64::max);
        for i in 0..m {
            if v[i] < u[i] - 1e-12 {
                decreases += 1;
            }
        }
        if max_v >= 1.0 - collapse_margin {
            return Ok(MinimalOutcome {
                status: MinimalStatus::Collapsed,
                solution: None,
                iterations: iter,
                final_max_u: max_v,
                pointwise_decrease_events: decreases,
            });
        }
        let diff = (0..m).fold(0.0f64, |a, i| a.max((v[i] - u[i]).abs()));
        u = v;
        if diff < 1e-10 {
            let mut full = vec![0.0; grid.n()];
            full[lo..lo + m].copy_from_slice(&u);
            let sol = RadialSolution::build(grid, lambda, full, profile, 0)?;
            return Ok(MinimalOutcome {
                status: MinimalStatus::Converged,
                solution: Some(sol),
                iterations: iter,
                final_max_u: max_v,
                pointwise_decrease_events: decreases,
            });
        }
    }
    let final_max_u = u.iter().cloned().fold(0.0f64, f64::max);
    Ok(MinimalOutcome {
        status: MinimalStatus::IterationLimit,
        solution: None,
        iterations: max_iter,
        final_max_u,
        pointwise_decrease_events: decreases,
    })
}

/// Smallest eigenvalue (and positive eigenfunction, on the unknown nodes) of
/// the linearized operator -Laplace - 2 lambda f / (1 - u)^3 with Dirichlet
/// conditions, by shifted inverse power iteration.
pub fn smallest_eigenvalue(
    solution: &RadialSolution,
    profile: &Profile,
) -> Result<(f64, Vec<f64>)> {
    let grid = &solution.grid;
    let f = grid.profile_values(profile);
    let lap = DiscreteLaplacian::assemble(grid);
    let lo = grid.first_unknown();
    let m = grid.n_unknowns();
    let potential: Vec<f64> = (0..m)
        .map(|i| {
            let g = lo + i;
            let d = 1.0 - solution.u[g];
            -2.0 * solution.lambda * f[g] / (d * d * d)
        })
        .collect();

    // Gershgorin lower bound of the operator; the Laplacian rows have zero
    // disk floor in the similarity-weighted sense, so only the potential
    // contributes.
    let floor = potential.iter().cloned().fold(0.0f64, f64::min);
    let sigma = floor - 1.0;
    let shift: Vec<f64> = potential.iter().map(|p| p - sigma).collect();

    let w = &lap.weights;
    let dot = |a: &[f64], b: &[f64]| -> f64 {
        (0..m).map(|i| w[i] * a[i] * b[i]).sum()
    };

    let mut x = vec![1.0; m];
    let mut mu_old = f64::MAX;
    for iter in 0..20_000 {
        let y = lap.solve_shifted(&shift, &x)?;
        let scale = y.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::NumericFailure {
                what: "inverse power iteration",
                residual: scale,
            });
        }
        x = y.iter().map(|v| v / scale).collect();
        // Rayleigh quotient in the similarity weights.
        let lx = {
            let mut v = lap.apply(&x);
            for i in 0..m {
                v[i] += potential[i] * x[i];
            }
            v
        };
        let mu = dot(&x, &lx) / dot(&x, &x);
        if (mu - mu_old).abs() <= 1e-9 * mu.abs().max(1.0) && iter > 2 {
            // Sign convention: eigenfunction positive.
            let s = if x.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
            let x = x.iter().map(|v| s * v).collect();
            return Ok((mu, x));
        }
        mu_old = mu;
    }
    Err(Error::NumericFailure {
        what: "inverse power iteration (no convergence)",
        residual: mu_old,
    })
}

/// Pull-in voltage by bisection on the monotone-iteration verdict, bracketed
/// by the analytic bounds. An iteration-limited verdict shrinks the bracket
/// from above, biasing the estimate low (the safe side for a pull-in value).
pub fn lambda_star_bisection(grid: &RadialGrid, profile: &Profile, tol: f64) -> Result<f64> {
    let report = bounds_report(grid.domain(), profile)?;
    lambda_star_bisection_bracketed(grid, profile, tol, report.lower_best, report.upper_best)
}

/// Bisection with an explicit starting bracket.
pub fn lambda_star_bisection_bracketed(
    grid: &RadialGrid,
    profile: &Profile,
    tol: f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    const MAX_ITER: usize = 10_000;
    const MARGIN: f64 = 1e-6;
    let converged =
        |lam: f64| -> Result<bool> {
            Ok(picard_minimal(lam, grid, profile, MAX_ITER, MARGIN)?.status
                == MinimalStatus::Converged)
        };
    if !converged(lo)? {
        return Err(Error::BoundViolation(format!(
            "no solution found at the analytic lower bound {lo}"
        )));
    }
    if converged(hi)? {
        return Err(Error::BoundViolation(format!(
            "solution exists at the analytic upper bound {hi}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if converged(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// L^p norm of the stress integrand f / (1 - u)^3 over the domain, by
/// composite Simpson quadrature on the solution grid.
pub fn energy_norm(solution: &RadialSolution, profile: &Profile, p: f64) -> f64 {
    assert!(p >= 1.0, "energy norm needs p >= 1");
    let grid = &solution.grid;
    let n = grid.n();
    let g: Vec<f64> = (0..n)
        .map(|i| {
            let r = grid.nodes()[i];
            let d = 1.0 - solution.u[i];
            let val = (profile.eval(r.abs()) / (d * d * d)).abs().powf(p);
            match grid.domain().kind() {
                DomainKind::Slab => val,
                DomainKind::Ball => {
                    let dim = grid.domain().dimension();
                    let w = dim as f64
                        * crate::special::unit_ball_volume(dim as i64).unwrap();
                    val * w * r.abs().powi(dim as i32 - 1)
                }
            }
        })
        .collect();
    simpson(&g, grid.spacing()).powf(1.0 / p)
}

/// Composite Simpson with a trapezoid tail when the interval count is odd.
fn simpson(g: &[f64], h: f64) -> f64 {
    let n = g.len();
    let mut total = 0.0;
    let pairs = (n - 1) / 2;
    for k in 0..pairs {
        let i = 2 * k;
        total += h / 3.0 * (g[i] + 4.0 * g[i + 1] + g[i + 2]);
    }
    if (n - 1) % 2 == 1 {
        total += 0.5 * h * (g[n - 2] + g[n - 1]);
    }
    total
}
