//! Domains (slab and N-ball), permittivity profiles, and first Dirichlet
//! eigenpairs of the Laplacian.
//!
//! Every supported domain is radially symmetric, so volume integrals reduce
//! to one-dimensional quadrature with weight N omega_N r^{N-1} (the slab
//! integrates plainly over [-1/2, 1/2]).

use crate::error::{Error, Result};
use crate::ode;
use crate::quad;
use crate::special::{bessel_j0, bessel_j1, j0_first_zero, unit_ball_volume};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    /// The slab [-1/2, 1/2] in one dimension.
    Slab,
    /// A ball of radius R in R^N.
    Ball,
}

/// A slab or an N-ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    kind: DomainKind,
    dimension: u32,
    radius: f64,
}

impl Domain {
    /// The slab [-1/2, 1/2].
    pub fn slab() -> Domain {
        Domain {
            kind: DomainKind::Slab,
            dimension: 1,
            radius: 0.5,
        }
    }

    /// Ball of radius `radius` in R^N.
    pub fn ball(dimension: i64, radius: f64) -> Result<Domain> {
        if dimension < 1 {
            return Err(Error::InvalidDimension(dimension));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Domain {
            kind: DomainKind::Ball,
            dimension: dimension as u32,
            radius,
        })
    }

    /// Unit ball in R^N.
    pub fn unit_ball(dimension: i64) -> Result<Domain> {
        Domain::ball(dimension, 1.0)
    }

    /// The unit disk (N = 2).
    pub fn disk() -> Domain {
        Domain::unit_ball(2).unwrap()
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn is_slab(&self) -> bool {
        self.kind == DomainKind::Slab
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Largest |x| over the domain: R for balls, 1/2 for the slab.
    pub fn max_radius(&self) -> f64 {
        self.radius
    }

    /// |Omega|: 1 for the slab, omega_N R^N for balls.
    pub fn volume(&self) -> f64 {
        match self.kind {
            DomainKind::Slab => 1.0,
            DomainKind::Ball => {
                unit_ball_volume(self.dimension as i64).unwrap()
                    * self.radius.powi(self.dimension as i32)
            }
        }
    }

    /// Integrates a radial function over the domain.
    pub fn integrate_radial(&self, f: impl Fn(f64) -> f64, rtol: f64) -> f64 {
        match self.kind {
            // Even integrand in x, so twice the half-interval.
            DomainKind::Slab => 2.0 * quad::integrate(f, 0.0, 0.5, rtol),
            DomainKind::Ball => {
                let n = self.dimension;
                let w = n as f64 * unit_ball_volume(n as i64).unwrap();
                quad::integrate(
                    |r| f(r) * w * r.powi(n as i32 - 1),
                    0.0,
                    self.radius,
                    rtol,
                )
            }
        }
    }
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            DomainKind::Slab => write!(f, "slab"),
            DomainKind::Ball => {
                if self.dimension == 2 && self.radius == 1.0 {
                    write!(f, "disk")
                } else if self.radius == 1.0 {
                    write!(f, "ball:{}", self.dimension)
                } else {
                    write!(f, "ball:{}:{}", self.dimension, self.radius)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    PowerLaw,
    Exponential,
    Constant,
}

/// Permittivity profile f with 0 <= f <= 1 on its domain.
///
/// Power-law profiles are coefficient * |x|^alpha; on the slab the paper
/// convention f = |2x|^alpha corresponds to coefficient 2^alpha.
/// Exponential profiles are exp(alpha (|x|^2 - R^2)) with R the domain's
/// boundary radius, so the supremum 1 is attained on the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    kind: ProfileKind,
    alpha: f64,
    coefficient: f64,
    r_max: f64,
}

impl Profile {
    /// The uniform profile f = 1.
    pub fn constant() -> Profile {
        Profile {
            kind: ProfileKind::Constant,
            alpha: 0.0,
            coefficient: 1.0,
            r_max: 1.0,
        }
    }

    /// coefficient * |x|^alpha on `domain`; rejects profiles exceeding 1.
    pub fn power_law(domain: &Domain, alpha: f64, coefficient: f64) -> Result<Profile> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "power-law exponent must be >= 0, got {alpha}"
            )));
        }
        if !(coefficient > 0.0) || !coefficient.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "power-law coefficient must be positive, got {coefficient}"
            )));
        }
        let p = Profile {
            kind: ProfileKind::PowerLaw,
            alpha,
            coefficient,
            r_max: domain.max_radius(),
        };
        p.check_sup()?;
        Ok(p)
    }

    /// Power-law profile scaled so that sup f = 1 on the boundary: |2x|^alpha
    /// on the slab, |x|^alpha on the unit ball.
    pub fn power_law_unit_sup(domain: &Domain, alpha: f64) -> Result<Profile> {
        let coefficient = domain.max_radius().powf(-alpha);
        Profile::power_law(domain, alpha, coefficient)
    }

    /// exp(alpha (|x|^2 - R^2)) on `domain`.
    pub fn exponential(domain: &Domain, alpha: f64) -> Result<Profile> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "exponential rate must be >= 0, got {alpha}"
            )));
        }
        Ok(Profile {
            kind: ProfileKind::Exponential,
            alpha,
            coefficient: 1.0,
            r_max: domain.max_radius(),
        })
    }

    fn check_sup(&self) -> Result<()> {
        if self.sup() > 1.0 + 1e-12 {
            return Err(Error::DegenerateProfile(format!(
                "sup f = {} exceeds 1 on the domain",
                self.sup()
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    /// Pointwise value at radius r (r = |x|).
    pub fn eval(&self, r: f64) -> f64 {
        match self.kind {
            ProfileKind::Constant => 1.0,
            ProfileKind::PowerLaw => self.coefficient * r.powf(self.alpha),
            ProfileKind::Exponential => (self.alpha * (r * r - self.r_max * self.r_max)).exp(),
        }
    }

    /// Supremum of f over the domain (attained on the boundary).
    pub fn sup(&self) -> f64 {
        match self.kind {
            ProfileKind::Constant => 1.0,
            ProfileKind::PowerLaw => self.coefficient * self.r_max.powf(self.alpha),
            ProfileKind::Exponential => 1.0,
        }
    }

    /// Infimum of f over the domain (attained at the center).
    pub fn inf(&self) -> f64 {
        match self.kind {
            ProfileKind::Constant => 1.0,
            ProfileKind::PowerLaw => {
                if self.alpha > 0.0 {
                    0.0
                } else {
                    self.coefficient
                }
            }
            ProfileKind::Exponential => (-self.alpha * self.r_max * self.r_max).exp(),
        }
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            ProfileKind::Constant => write!(f, "const"),
            ProfileKind::Exponential => write!(f, "exp:{}", self.alpha),
            ProfileKind::PowerLaw => {
                let unit_sup = self.r_max.powf(-self.alpha);
                if (self.coefficient - unit_sup).abs() <= 1e-12 * unit_sup {
                    write!(f, "power:{}", self.alpha)
                } else {
                    write!(f, "power:{}:c={}", self.alpha, self.coefficient)
                }
            }
        }
    }
}

/// First Dirichlet eigenpair of -Laplace on a domain.
///
/// `phi` is normalized by integral 1 over the domain, `psi` by supremum 1
/// (attained at the center for these radially decreasing ground states).
#[derive(Debug, Clone)]
pub struct Eigenpair {
    mu: f64,
    mass_norm: f64,
    shape: Shape,
}

#[derive(Debug, Clone)]
enum Shape {
    /// cos(pi x) on [-1/2, 1/2].
    SlabCosine,
    /// cos(pi r / (2R)) on the N = 1 ball (-R, R).
    LineCosine { radius: f64 },
    /// J0(z0 r / R) on the disk of radius R.
    DiskBessel { z0: f64, radius: f64 },
    /// Shooting solution on the unit ball, scaled to radius R.
    /// `vals[i] = [phi, phi']` at r = i * h on [0, 1].
    RadialTable { radius: f64, h: f64, vals: Vec<[f64; 2]> },
}

impl Shape {
    fn eval(&self, r: f64) -> f64 {
        let r = r.abs();
        match self {
            Shape::SlabCosine => (std::f64::consts::PI * r).cos(),
            Shape::LineCosine { radius } => {
                (std::f64::consts::FRAC_PI_2 * r / radius).cos()
            }
            Shape::DiskBessel { z0, radius } => bessel_j0(z0 * r / radius),
            Shape::RadialTable { radius, h, vals } => {
                hermite_eval(vals, *h, (r / radius).min(1.0))
            }
        }
    }
}

/// Cubic Hermite interpolation of a (value, derivative) table on a uniform
/// grid with spacing h.
fn hermite_eval(vals: &[[f64; 2]], h: f64, x: f64) -> f64 {
    let n = vals.len();
    let mut idx = (x / h) as usize;
    if idx >= n - 1 {
        idx = n - 2;
    }
    let t = (x - idx as f64 * h) / h;
    let [p0, m0] = vals[idx];
    let [p1, m1] = vals[idx + 1];
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * p0
        + (t3 - 2.0 * t2 + t) * h * m0
        + (-2.0 * t3 + 3.0 * t2) * p1
        + (t3 - t2) * h * m1
}

impl Eigenpair {
    /// Smallest Dirichlet eigenvalue of -Laplace.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Eigenfunction normalized by integral 1 over the domain.
    pub fn phi(&self, r: f64) -> f64 {
        self.mass_norm * self.shape.eval(r)
    }

    /// Eigenfunction normalized by sup = 1.
    pub fn psi(&self, r: f64) -> f64 {
        self.shape.eval(r)
    }
}

/// First Dirichlet eigenpair of the domain. Slab, N = 1 and N = 2 balls use
/// closed forms; higher-dimensional balls fall back to a radial shooting
/// eigensolve.
pub fn first_eigenpair(domain: &Domain) -> Result<Eigenpair> {
    let pi = std::f64::consts::PI;
    match (domain.kind(), domain.dimension()) {
        (DomainKind::Slab, _) => Ok(Eigenpair {
            mu: pi * pi,
            mass_norm: pi / 2.0,
            shape: Shape::SlabCosine,
        }),
        (DomainKind::Ball, 1) => {
            let r = domain.max_radius();
            let half_pi = std::f64::consts::FRAC_PI_2;
            Ok(Eigenpair {
                mu: (half_pi / r) * (half_pi / r),
                mass_norm: pi / (4.0 * r),
                shape: Shape::LineCosine { radius: r },
            })
        }
        (DomainKind::Ball, 2) => {
            let r = domain.max_radius();
            let z0 = j0_first_zero();
            Ok(Eigenpair {
                mu: z0 * z0 / (r * r),
                mass_norm: z0 / (2.0 * pi * r * r * bessel_j1(z0)),
                shape: Shape::DiskBessel { z0, radius: r },
            })
        }
        (DomainKind::Ball, n) => {
            let (mu_unit, vals, h) = radial_eigen_shoot(n)?;
            let r = domain.max_radius();
            let shape = Shape::RadialTable {
                radius: r,
                h,
                vals,
            };
            // Integral of the center-normalized shape over the domain.
            let mass = domain.integrate_radial(|x| shape.eval(x), 1e-11);
            Ok(Eigenpair {
                mu: mu_unit / (r * r),
                mass_norm: 1.0 / mass,
                shape,
            })
        }
    }
}

/// Radial shooting eigensolve for the unit N-ball: smallest mu with
/// phi'' + (N-1)/r phi' + mu phi = 0, phi(0) = 1, phi'(0) = 0, phi(1) = 0.
/// Returns (mu, Hermite table of [phi, phi'], grid spacing).
fn radial_eigen_shoot(n: u32) -> Result<(f64, Vec<[f64; 2]>, f64)> {
    let nf = n as f64;
    let r0 = 1e-3;

    let boundary_value = |mu: f64| -> Result<f64> {
        let rhs = move |r: f64, y: &[f64; 2]| [y[1], -(nf - 1.0) / r * y[1] - mu * y[0]];
        // Series start past the coordinate singularity.
        let start = [
            1.0 - mu * r0 * r0 / (2.0 * nf) + mu * mu * r0.powi(4) / (8.0 * nf * (nf + 2.0)),
            -mu * r0 / nf + mu * mu * r0.powi(3) / (2.0 * nf * (nf + 2.0)),
        ];
        let y = ode::integrate(&rhs, r0, start, 1.0, 1e-12, 1e-14)?;
        Ok(y[0])
    };

    // Bracket the first sign change of phi(1) in mu.
    let mut lo = 1.0;
    let mut hi = 1.0;
    let mut g_lo = boundary_value(lo)?;
    if g_lo <= 0.0 {
        return Err(Error::NumericFailure {
            what: "eigen bracket start",
            residual: g_lo,
        });
    }
    let mut found = false;
    for _ in 0..60 {
        hi *= 1.4;
        let g = boundary_value(hi)?;
        if g <= 0.0 {
            found = true;
            break;
        }
        lo = hi;
        g_lo = g;
    }
    if !found {
        return Err(Error::NumericFailure {
            what: "eigen bracket scan",
            residual: g_lo,
        });
    }
    while hi - lo > 1e-10 * hi {
        let mid = 0.5 * (lo + hi);
        if boundary_value(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = 0.5 * (lo + hi);

    // Dense table of the eigenfunction at the converged mu.
    let n_nodes = 2049usize;
    let h = 1.0 / (n_nodes - 1) as f64;
    let rhs = move |r: f64, y: &[f64; 2]| [y[1], -(nf - 1.0) / r * y[1] - mu * y[0]];
    let mut vals = Vec::with_capacity(n_nodes);
    vals.push([1.0, 0.0]);
    let first_past = (r0 / h).ceil() as usize;
    // Nodes inside the series region.
    for i in 1..first_past.max(1) {
        let r = i as f64 * h;
        vals.push([
            1.0 - mu * r * r / (2.0 * nf) + mu * mu * r.powi(4) / (8.0 * nf * (nf + 2.0)),
            -mu * r / nf + mu * mu * r.powi(3) / (2.0 * nf * (nf + 2.0)),
        ]);
    }
    let start_idx = vals.len();
    let targets: Vec<f64> = (start_idx..n_nodes).map(|i| i as f64 * h).collect();
    let y0 = [
        1.0 - mu * r0 * r0 / (2.0 * nf) + mu * mu * r0.powi(4) / (8.0 * nf * (nf + 2.0)),
        -mu * r0 / nf + mu * mu * r0.powi(3) / (2.0 * nf * (nf + 2.0)),
    ];
    let pts = ode::integrate_to_points(&rhs, r0, y0, &targets, 1e-12, 1e-14)?;
    vals.extend(pts);
    // Pin the boundary node exactly.
    vals[n_nodes - 1][0] = 0.0;
    Ok((mu, vals, h))
}

/// Integral of f times the mass-normalized first eigenfunction over the
/// domain, by adaptive quadrature.
pub fn integrate_f_phi(domain: &Domain, profile: &Profile) -> Result<f64> {
    let eig = first_eigenpair(domain)?;
    Ok(domain.integrate_radial(|r| profile.eval(r) * eig.phi(r), 1e-10))
}
