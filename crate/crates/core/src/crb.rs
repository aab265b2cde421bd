//! Fisher information and Cramér–Rao bounds for joint (angle, range)
//! estimation of a single near-field source.
//!
//! Model: deterministic signal with an unknown scalar complex gain. The gain
//! is a nuisance parameter eliminated by projecting the steering derivatives
//! onto the orthogonal complement of the steering vector, giving
//! `FIM = 2 T snr Re{ D^H (I - a a^H / N) D }` over the parameters
//! `(theta, r)` in that order.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::ArrayLayout;
use crate::nearfield::{spherical_steering, steering_derivatives, SourceParams};
use crate::output::fmt_f64;

/// Condition-number guard: beyond this the FIM is treated as singular.
const CONDITION_LIMIT: f64 = 1e12;

/// Fisher information matrix and the derived bounds for one layout–source
/// pair; parameter order is `(theta, r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrbResult {
    /// 2x2 Fisher information matrix over `(theta, r)`.
    pub fim: [[f64; 2]; 2],
    /// Variance bound on any unbiased angle estimator [rad^2].
    pub crb_theta: f64,
    /// Variance bound on any unbiased range estimator [m^2].
    pub crb_range: f64,
    /// Root of `crb_range` [m]; the headline range-resolution figure.
    pub root_crb_range: f64,
}

/// Computes the 2x2 Fisher information matrix for `(theta, r)`.
///
/// Fails with a `singular-fim` error (carrying the condition number) when
/// the matrix is numerically singular, e.g. in the planar regime where range
/// is unidentifiable.
pub fn fim(layout: &ArrayLayout, src: &SourceParams) -> Result<[[f64; 2]; 2]> {
    if layout.n_elements() < 3 {
        return Err(Error::InvalidCount {
            what: "element count for a two-parameter bound with a gain nuisance",
            min: 3,
            got: layout.n_elements() as u64,
        });
    }
    let a = spherical_steering(layout, src)?;
    let der = steering_derivatives(layout, src)?;
    let n = layout.n_elements() as f64;

    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
        x.iter().zip(y).map(|(xi, yi)| xi.conj() * yi).sum()
    };
    let d = [&der.d_theta, &der.d_range];
    let a_entries = a.entries();
    // projected Gram matrix: D^H D - (D^H a)(a^H D) / N
    let adot = [dot(a_entries, d[0]), dot(a_entries, d[1])];
    let scale = 2.0 * src.snapshots() as f64 * src.snr_linear();
    let mut f = [[0.0f64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let gram = dot(d[i], d[j]);
            let projected = gram - adot[i].conj() * adot[j] / n;
            f[i][j] = scale * projected.re;
        }
    }

    // eigenvalues of the symmetric 2x2 for the condition guard
    let tr = f[0][0] + f[1][1];
    let gap = ((f[0][0] - f[1][1]).powi(2) / 4.0 + f[0][1] * f[1][0])
        .max(0.0)
        .sqrt();
    let (lo, hi) = (tr / 2.0 - gap, tr / 2.0 + gap);
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !condition.is_finite() || condition > CONDITION_LIMIT {
        return Err(Error::SingularFim { condition });
    }
    Ok(f)
}

/// Inverts the Fisher information matrix and extracts the bounds.
pub fn crb(layout: &ArrayLayout, src: &SourceParams) -> Result<CrbResult> {
    let f = fim(layout, src)?;
    let det = f[0][0] * f[1][1] - f[0][1] * f[1][0];
    let crb_theta = f[1][1] / det;
    let crb_range = f[0][0] / det;
    Ok(CrbResult {
        fim: f,
        crb_theta,
        crb_range,
        root_crb_range: crb_range.sqrt(),
    })
}

/// Outcome of one sweep cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CellOutcome {
    /// Root range CRB [m].
    Root(f64),
    /// FIM was numerically singular at this cell; the condition number is
    /// carried for diagnostics.
    Singular { condition: f64 },
}

/// One row of a CRB-versus-range sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub layout: String,
    pub range_m: f64,
    pub outcome: CellOutcome,
}

/// Evaluates the root range CRB over the cartesian product of layouts and
/// ranges; row order is (layout, range) input order. Singular cells are
/// recorded, not fatal.
pub fn crb_range_sweep(
    layouts: &[(&str, &ArrayLayout)],
    ranges_m: &[f64],
    template: &SourceParams,
) -> Result<Vec<SweepRow>> {
    if layouts.is_empty() || ranges_m.is_empty() {
        return Err(Error::InvalidParameter {
            detail: "crb_range_sweep requires at least one layout and one range".to_string(),
        });
    }
    let mut rows = Vec::with_capacity(layouts.len() * ranges_m.len());
    for (name, layout) in layouts {
        for &range in ranges_m {
            let src = template.at_range(range)?;
            let outcome = match crb(layout, &src) {
                Ok(result) => CellOutcome::Root(result.root_crb_range),
                Err(Error::SingularFim { condition }) => CellOutcome::Singular { condition },
                Err(other) => return Err(other),
            };
            rows.push(SweepRow {
                layout: (*name).to_string(),
                range_m: range,
                outcome,
            });
        }
    }
    Ok(rows)
}

/// Renders a sweep as CSV (`layout,range_m,root_crb_range_m`); singular
/// cells carry the literal `singular-fim`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("layout,range_m,root_crb_range_m\n");
    for row in rows {
        let value = match row.outcome {
            CellOutcome::Root(v) => fmt_f64(v),
            CellOutcome::Singular { .. } => "singular-fim".to_string(),
        };
        out.push_str(&format!(
            "{},{},{}\n",
            row.layout,
            fmt_f64(row.range_m),
            value
        ));
    }
    out
}
