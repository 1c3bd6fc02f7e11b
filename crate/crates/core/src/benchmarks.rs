//! Published benchmark values for the two standard profile families on the
//! slab and the unit disk, and the machinery to recompute them.
//!
//! The reference columns are the rounded values from the literature on this
//! problem; the `tables` CLI command regenerates them and reports relative
//! differences.

use crate::bifurcation::{continuation_trace, lambda_star_shooting};
use crate::bounds::bounds_report;
use crate::domain::{Domain, Profile, ProfileKind};
use crate::error::Result;

/// Profile family of a benchmark table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Exponential,
    PowerLaw,
}

/// One benchmark row: a (domain, profile) pair with its published values.
#[derive(Debug, Clone, Copy)]
pub struct BenchmarkRow {
    pub slab: bool,
    pub family: Family,
    pub alpha: f64,
    /// Published best lower bound (the power-law bound where applicable).
    pub printed_lower: f64,
    pub printed_lambda_star: f64,
    /// Published eigenvalue/infimum upper bound; `None` where inf f = 0.
    pub printed_upper_1: Option<f64>,
    pub printed_upper_2: f64,
    /// Row-specific relative tolerance on the upper_2 column.
    pub upper_2_rtol: f64,
    /// True where the published upper_2 entry fails an independent
    /// recomputation of its defining formula (deviations of 0.45% to 25%);
    /// such rows are checked against a closed-form series oracle instead.
    pub upper_2_printed_inconsistent: bool,
}

impl BenchmarkRow {
    pub fn domain(&self) -> Domain {
        if self.slab {
            Domain::slab()
        } else {
            Domain::disk()
        }
    }

    pub fn profile(&self) -> Profile {
        let dom = self.domain();
        match self.family {
            Family::Exponential => Profile::exponential(&dom, self.alpha).unwrap(),
            Family::PowerLaw => {
                if self.alpha == 0.0 {
                    Profile::constant()
                } else {
                    Profile::power_law_unit_sup(&dom, self.alpha).unwrap()
                }
            }
        }
    }
}

const UPPER_2_RTOL: f64 = 3e-3;

/// Benchmark rows for exponential profiles exp(alpha(|x|^2 - R^2)).
pub fn exponential_rows() -> Vec<BenchmarkRow> {
    let row = |slab, alpha, lower, star, u1: f64, u2, inconsistent| BenchmarkRow {
        slab,
        family: Family::Exponential,
        alpha,
        printed_lower: lower,
        printed_lambda_star: star,
        printed_upper_1: Some(u1),
        printed_upper_2: u2,
        upper_2_rtol: UPPER_2_RTOL,
        upper_2_printed_inconsistent: inconsistent,
    };
    vec![
        row(true, 0.0, 1.185, 1.401, 1.462, 3.290, false),
        row(true, 1.0, 1.185, 1.733, 1.878, 4.023, false),
        row(true, 3.0, 1.185, 2.637, 3.095, 5.965, false),
        row(true, 6.0, 1.185, 4.848, 6.553, 10.50, false),
        row(false, 0.0, 0.593, 0.789, 0.857, 1.928, false),
        row(false, 0.5, 0.593, 1.153, 1.413, 2.706, false),
        row(false, 1.0, 0.593, 1.661, 2.329, 3.746, false),
        // The published 11.86 deviates 0.45% from the defining formula.
        row(false, 3.0, 0.593, 6.091, 17.21, 11.86, true),
    ]
}

/// Benchmark rows for power-law profiles (|2x|^alpha on the slab, |x|^alpha
/// on the disk).
pub fn power_law_rows() -> Vec<BenchmarkRow> {
    let row = |slab, alpha, lower, star, u1: Option<f64>, u2, u2_rtol, inconsistent| BenchmarkRow {
        slab,
        family: Family::PowerLaw,
        alpha,
        printed_lower: lower,
        printed_lambda_star: star,
        printed_upper_1: u1,
        printed_upper_2: u2,
        upper_2_rtol: u2_rtol,
        upper_2_printed_inconsistent: inconsistent,
    };
    vec![
        row(true, 0.0, 1.185, 1.401, Some(1.462), 3.290, UPPER_2_RTOL, false),
        // The published 9.044 was computed by numerical quadrature; the
        // closed form gives 9.053, hence the slightly wider tolerance.
        row(true, 1.0, 3.556, 4.388, None, 9.044, 5e-3, false),
        row(true, 3.0, 11.851, 15.189, None, 28.247, UPPER_2_RTOL, false),
        row(true, 6.0, 33.185, 43.087, None, 76.608, UPPER_2_RTOL, false),
        row(false, 0.0, 0.593, 0.789, Some(0.857), 1.928, UPPER_2_RTOL, false),
        // The published disk entries below disagree with the defining
        // formula by 25%, 11%, and 0.88% respectively; a series oracle
        // replaces them as the reference.
        row(false, 1.0, 1.333, 1.775, None, 3.019, UPPER_2_RTOL, true),
        row(false, 5.0, 7.259, 9.676, None, 15.82, UPPER_2_RTOL, true),
        row(false, 20.0, 71.70, 95.66, None, 161.54, UPPER_2_RTOL, true),
    ]
}

/// Recomputed values for one benchmark row.
#[derive(Debug, Clone, Copy)]
pub struct ComputedRow {
    pub lower_best: f64,
    pub lambda_star: f64,
    pub upper_1: Option<f64>,
    pub upper_2: f64,
    /// Largest relative deviation from the published columns.
    pub max_rel_diff: f64,
}

/// Recomputes a benchmark row: bounds from the analytic formulas, pull-in
/// voltage by the method suited to the profile family (shooting map for
/// power laws, pseudo-arclength continuation for exponentials).
pub fn compute_row(row: &BenchmarkRow, grid_n: usize, gamma_max: f64) -> Result<ComputedRow> {
    let dom = row.domain();
    let prof = row.profile();
    let rep = bounds_report(&dom, &prof)?;
    let lambda_star = match prof.kind() {
        ProfileKind::Exponential => continuation_trace(&dom, &prof, grid_n, 0.995)?.lambda_star,
        _ => lambda_star_shooting(&dom, &prof, gamma_max)?,
    };

    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let mut max_rel_diff = rel(rep.lower_best, row.printed_lower)
        .max(rel(lambda_star, row.printed_lambda_star))
        .max(rel(rep.upper_2, row.printed_upper_2));
    match (rep.upper_1, row.printed_upper_1) {
        (Some(a), Some(b)) => max_rel_diff = max_rel_diff.max(rel(a, b)),
        (None, None) => {}
        _ => max_rel_diff = f64::INFINITY,
    }

    Ok(ComputedRow {
        lower_best: rep.lower_best,
        lambda_star,
        upper_1: rep.upper_1,
        upper_2: rep.upper_2,
        max_rel_diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_tables_have_eight_entries_each() {
        assert_eq!(exponential_rows().len(), 8);
        assert_eq!(power_law_rows().len(), 8);
    }

    #[test]
    fn profiles_construct_for_all_rows() {
        for row in exponential_rows().iter().chain(power_law_rows().iter()) {
            let p = row.profile();
            assert!(p.sup() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn printed_lower_bounds_match_closed_forms() {
        // Exponential rows: the ball bound 8N/27 (omega_N/|Omega|)^{2/N}.
        for row in exponential_rows() {
            let rep = bounds_report(&row.domain(), &row.profile()).unwrap();
            assert!(
                (rep.lower_best - row.printed_lower).abs() / row.printed_lower < 1e-3,
                "lower bound mismatch on slab={} alpha={}",
                row.slab,
                row.alpha
            );
        }
        // Power-law rows: the refined exponent-dependent bound.
        for row in power_law_rows() {
            let rep = bounds_report(&row.domain(), &row.profile()).unwrap();
            assert!(
                (rep.lower_best - row.printed_lower).abs() / row.printed_lower < 1e-3,
                "lower bound mismatch on slab={} alpha={}",
                row.slab,
                row.alpha
            );
        }
    }
}
