//! Spherical-wave line-of-sight MIMO channel construction, singular-value
//! analysis, and effective-rank counting.
//!
//! Geometry: transmit and receive arrays lie on parallel x-axes in the
//! planes `z = 0` and `z = separation_m`, each centered (midpoint of its
//! extreme elements) at `x = 0`. Entries are phase-only:
//! `H(m, n) = exp(-i (2 pi / lambda) d(m, n))` over the exact inter-element
//! distances, so the channel captures wavefront curvature and nothing else.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::ArrayLayout;
use crate::output::fmt_f64;

/// A constructed LoS channel with its singular-value spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct LosChannel {
    tx: ArrayLayout,
    rx: ArrayLayout,
    separation_m: f64,
    matrix: DMatrix<Complex64>,
    /// Non-increasing, normalized so the first entry is 1.
    singular_values: Vec<f64>,
    sigma_max: f64,
}

impl LosChannel {
    /// Transmit-side layout.
    pub fn tx(&self) -> &ArrayLayout {
        &self.tx
    }

    /// Receive-side layout.
    pub fn rx(&self) -> &ArrayLayout {
        &self.rx
    }

    /// Plane-to-plane separation [m].
    pub fn separation_m(&self) -> f64 {
        self.separation_m
    }

    /// Complex channel matrix, receive elements by transmit elements.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Normalized singular values, non-increasing with leading value 1.
    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    /// Largest un-normalized singular value.
    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    /// Count of normalized singular values at or above `threshold`,
    /// `threshold` in `(0, 1]`.
    pub fn effective_rank(&self, threshold: f64) -> Result<usize> {
        if !(threshold.is_finite() && threshold > 0.0 && threshold <= 1.0) {
            return Err(Error::InvalidParameter {
                detail: format!("threshold must lie in (0, 1], got {threshold}"),
            });
        }
        Ok(self
            .singular_values
            .iter()
            .take_while(|&&s| s >= threshold)
            .count())
    }
}

/// Element x-coordinates centered so the midpoint of the extreme elements
/// sits at 0.
fn centered_positions_m(layout: &ArrayLayout) -> Vec<f64> {
    let positions = layout.element_positions_m();
    let center = (positions[0] + positions[positions.len() - 1]) / 2.0;
    positions.into_iter().map(|p| p - center).collect()
}

fn validate_separation(separation_m: f64) -> Result<()> {
    if !(separation_m.is_finite() && separation_m > 0.0) {
        return Err(Error::InvalidParameter {
            detail: format!("separation_m must be positive and finite, got {separation_m}"),
        });
    }
    Ok(())
}

/// Exact pairwise distances `d(m, n) = sqrt(separation^2 + (x_m - x_n)^2)`
/// between centered parallel arrays; rows index receive elements.
pub fn pairwise_distances(
    tx: &ArrayLayout,
    rx: &ArrayLayout,
    separation_m: f64,
) -> Result<DMatrix<f64>> {
    validate_separation(separation_m)?;
    let xt = centered_positions_m(tx);
    let xr = centered_positions_m(rx);
    Ok(DMatrix::from_fn(xr.len(), xt.len(), |m, n| {
        let dx = xr[m] - xt[n];
        (separation_m * separation_m + dx * dx).sqrt()
    }))
}

/// Builds the phase-only LoS channel and its normalized singular-value
/// spectrum. Both layouts must share the carrier wavelength.
pub fn los_channel(tx: &ArrayLayout, rx: &ArrayLayout, separation_m: f64) -> Result<LosChannel> {
    if tx.wavelength_m() != rx.wavelength_m() {
        return Err(Error::WavelengthMismatch {
            tx_m: tx.wavelength_m(),
            rx_m: rx.wavelength_m(),
        });
    }
    let distances = pairwise_distances(tx, rx, separation_m)?;
    let k = 2.0 * std::f64::consts::PI / tx.wavelength_m();
    let matrix = distances.map(|d| Complex64::from_polar(1.0, -k * d));

    let mut sigma: Vec<f64> = matrix.singular_values().iter().copied().collect();
    sigma.sort_unstable_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    let sigma_max = sigma[0];
    let singular_values: Vec<f64> = sigma.iter().map(|s| s / sigma_max).collect();

    Ok(LosChannel {
        tx: tx.clone(),
        rx: rx.clone(),
        separation_m,
        matrix,
        singular_values,
        sigma_max,
    })
}

/// Effective rank of a channel at the given threshold; see
/// [`LosChannel::effective_rank`].
pub fn effective_rank(channel: &LosChannel, threshold: f64) -> Result<usize> {
    channel.effective_rank(threshold)
}

/// One row of a rank-versus-distance sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankRow {
    pub distance_m: f64,
    pub rank: usize,
}

/// Effective rank at each separation, preserving input order.
pub fn rank_vs_distance(
    tx: &ArrayLayout,
    rx: &ArrayLayout,
    distances_m: &[f64],
    threshold: f64,
) -> Result<Vec<RankRow>> {
    if distances_m.is_empty() {
        return Err(Error::InvalidParameter {
            detail: "rank_vs_distance requires at least one distance".to_string(),
        });
    }
    distances_m
        .iter()
        .map(|&distance_m| {
            let channel = los_channel(tx, rx, distance_m)?;
            Ok(RankRow {
                distance_m,
                rank: channel.effective_rank(threshold)?,
            })
        })
        .collect()
}

/// Renders the normalized spectrum as CSV (`k,sigma_normalized`), 1-indexed.
pub fn spectrum_csv(channel: &LosChannel) -> String {
    let mut out = String::from("k,sigma_normalized\n");
    for (i, s) in channel.singular_values().iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, fmt_f64(*s)));
    }
    out
}

/// Rank report emitted next to a spectrum CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    pub layout: String,
    pub distance_m: f64,
    pub threshold: f64,
    pub rank: usize,
    pub spectrum_file: String,
}

impl RankReport {
    /// Renders the report as a JSON document with 17-significant-digit
    /// floats (fixed field order keeps reruns byte-identical).
    pub fn to_json(&self) -> String {
        format!(
            "{{\n  \"layout\": {},\n  \"distance_m\": {},\n  \"threshold\": {},\n  \"rank\": {},\n  \"spectrum_file\": {}\n}}\n",
            serde_json::to_string(&self.layout).expect("string serialization cannot fail"),
            fmt_f64(self.distance_m),
            fmt_f64(self.threshold),
            self.rank,
            serde_json::to_string(&self.spectrum_file).expect("string serialization cannot fail"),
        )
    }
}
