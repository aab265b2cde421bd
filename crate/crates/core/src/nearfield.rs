//! Spherical-wave, Fresnel, and planar steering vectors with analytic
//! derivatives and near-field beampattern evaluation.
//!
//! Geometry: elements on the x-axis at `p_n = indices[n] * spacing_m`,
//! source at `(r sin(theta), r cos(theta))` with `theta` measured from the
//! array broadside. The phase reference is the element at the origin: the
//! exact model uses the propagation-distance difference `r_n - r`, so the
//! spherical vector converges to the planar one as `r` grows, without a
//! global phase drift.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::ArrayLayout;

/// Near-field point source plus signal parameters used by the bounds module.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SourceParams {
    theta_rad: f64,
    range_m: f64,
    snr_db: f64,
    snapshots: u64,
}

impl SourceParams {
    /// Source at `(theta, r)` with the default signal model (0 dB SNR, one
    /// snapshot).
    pub fn new(theta_rad: f64, range_m: f64) -> Result<Self> {
        Self::with_signal(theta_rad, range_m, 0.0, 1)
    }

    /// Source with explicit SNR and snapshot count.
    pub fn with_signal(theta_rad: f64, range_m: f64, snr_db: f64, snapshots: u64) -> Result<Self> {
        if !(theta_rad.is_finite() && theta_rad.abs() < FRAC_PI_2) {
            return Err(Error::InvalidParameter {
                detail: format!(
                    "theta_rad must lie strictly inside (-pi/2, pi/2), got {theta_rad}"
                ),
            });
        }
        if !(range_m.is_finite() && range_m > 0.0) {
            return Err(Error::InvalidParameter {
                detail: format!("range_m must be positive and finite, got {range_m}"),
            });
        }
        if !snr_db.is_finite() {
            return Err(Error::InvalidParameter {
                detail: format!("snr_db must be finite, got {snr_db}"),
            });
        }
        if snapshots < 1 {
            return Err(Error::InvalidParameter {
                detail: "snapshots must be at least 1".to_string(),
            });
        }
        Ok(SourceParams {
            theta_rad,
            range_m,
            snr_db,
            snapshots,
        })
    }

    /// Angle from broadside [rad], strictly inside `(-pi/2, pi/2)`.
    pub fn theta_rad(&self) -> f64 {
        self.theta_rad
    }

    /// Source range from the reference element [m].
    pub fn range_m(&self) -> f64 {
        self.range_m
    }

    /// Per-snapshot signal-to-noise ratio [dB].
    pub fn snr_db(&self) -> f64 {
        self.snr_db
    }

    /// Number of snapshots.
    pub fn snapshots(&self) -> u64 {
        self.snapshots
    }

    /// Linear SNR `10^(snr_db/10)`.
    pub fn snr_linear(&self) -> f64 {
        10f64.powf(self.snr_db / 10.0)
    }

    /// Copy of these parameters at a different range.
    pub fn at_range(&self, range_m: f64) -> Result<Self> {
        Self::with_signal(self.theta_rad, range_m, self.snr_db, self.snapshots)
    }

    /// Copy of these parameters at a different angle.
    pub fn with_theta(&self, theta_rad: f64) -> Result<Self> {
        Self::with_signal(theta_rad, self.range_m, self.snr_db, self.snapshots)
    }
}

/// Propagation model of a steering vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SteeringModel {
    /// Exact spherical wavefront (no series truncation).
    Spherical,
    /// Second-order (quadratic-in-aperture) expansion.
    Fresnel,
    /// Far-field plane wave.
    Planar,
}

/// Unit-modulus steering entries, one per element; entry 0 is always `1+0i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SteeringVector {
    model: SteeringModel,
    entries: Vec<Complex64>,
}

impl SteeringVector {
    /// Propagation model the entries were computed under.
    pub fn model(&self) -> SteeringModel {
        self.model
    }

    /// Complex entries, one per element.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when there are no entries (never holds for valid layouts).
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Squared Euclidean norm; equals the element count for unit-modulus
    /// entries.
    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }
}

/// Per-element propagation distance `r_n` and the cancellation-free
/// reference difference `r_n - r`.
fn propagation(p: f64, sin_theta: f64, r: f64) -> (f64, f64) {
    let rn = (r * r + p * p - 2.0 * r * p * sin_theta).sqrt();
    // algebraically r_n - r, written to avoid catastrophic cancellation when
    // r dwarfs the aperture
    let delta = (p * p - 2.0 * r * p * sin_theta) / (rn + r);
    (rn, delta)
}

/// Exact spherical-wave steering vector:
/// `entry_n = exp(-i (2 pi / lambda) (r_n - r))` with
/// `r_n = sqrt(r^2 + p_n^2 - 2 r p_n sin(theta))`.
pub fn spherical_steering(layout: &ArrayLayout, src: &SourceParams) -> Result<SteeringVector> {
    let k = 2.0 * PI / layout.wavelength_m();
    let sin_theta = src.theta_rad().sin();
    let r = src.range_m();
    let entries = layout
        .element_positions_m()
        .iter()
        .enumerate()
        .map(|(n, &p)| {
            let (rn, delta) = propagation(p, sin_theta, r);
            if rn == 0.0 {
                return Err(Error::SingularGeometry { element: n });
            }
            Ok(Complex64::from_polar(1.0, -k * delta))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SteeringVector {
        model: SteeringModel::Spherical,
        entries,
    })
}

/// Far-field plane-wave steering vector:
/// `entry_n = exp(+i (2 pi / lambda) p_n sin(theta))`, the exact limit of
/// [`spherical_steering`] as `r -> infinity` (elements on the source side of
/// broadside are closer to the source, hence lead in phase).
pub fn planar_steering(layout: &ArrayLayout, theta_rad: f64) -> Result<SteeringVector> {
    if !(theta_rad.is_finite() && theta_rad.abs() < FRAC_PI_2) {
        return Err(Error::InvalidParameter {
            detail: format!("theta_rad must lie strictly inside (-pi/2, pi/2), got {theta_rad}"),
        });
    }
    let k = 2.0 * PI / layout.wavelength_m();
    let sin_theta = theta_rad.sin();
    let entries = layout
        .element_positions_m()
        .iter()
        .map(|&p| Complex64::from_polar(1.0, k * p * sin_theta))
        .collect();
    Ok(SteeringVector {
        model: SteeringModel::Planar,
        entries,
    })
}

/// Second-order Fresnel steering vector:
/// `entry_n = exp(-i (2 pi / lambda) (-p_n sin(theta) + p_n^2 cos^2(theta) / (2 r)))`.
pub fn fresnel_steering(layout: &ArrayLayout, src: &SourceParams) -> Result<SteeringVector> {
    let k = 2.0 * PI / layout.wavelength_m();
    let sin_theta = src.theta_rad().sin();
    let cos_sq = {
        let c = src.theta_rad().cos();
        c * c
    };
    let r = src.range_m();
    let entries = layout
        .element_positions_m()
        .iter()
        .map(|&p| Complex64::from_polar(1.0, -k * (-p * sin_theta + p * p * cos_sq / (2.0 * r))))
        .collect();
    Ok(SteeringVector {
        model: SteeringModel::Fresnel,
        entries,
    })
}

/// Entry-wise derivatives of the spherical steering vector with respect to
/// the source angle and range.
#[derive(Clone, Debug, PartialEq)]
pub struct SteeringDerivatives {
    /// `d a / d theta`, one entry per element.
    pub d_theta: Vec<Complex64>,
    /// `d a / d r`, one entry per element.
    pub d_range: Vec<Complex64>,
}

/// Analytic derivatives of [`spherical_steering`]:
/// `d r_n / d theta = -r p_n cos(theta) / r_n` and
/// `d (r_n - r) / d r = (r - p_n sin(theta)) / r_n - 1`, each applied to the
/// phase as `entry_n * (-i 2 pi / lambda) * (...)`.
pub fn steering_derivatives(
    layout: &ArrayLayout,
    src: &SourceParams,
) -> Result<SteeringDerivatives> {
    let a = spherical_steering(layout, src)?;
    let k = 2.0 * PI / layout.wavelength_m();
    let theta = src.theta_rad();
    let (sin_theta, cos_theta) = (theta.sin(), theta.cos());
    let r = src.range_m();
    let mut d_theta = Vec::with_capacity(a.len());
    let mut d_range = Vec::with_capacity(a.len());
    for (&p, &entry) in layout.element_positions_m().iter().zip(a.entries()) {
        let (rn, _) = propagation(p, sin_theta, r);
        let ddelta_dtheta = -r * p * cos_theta / rn;
        let ddelta_drange = (r - p * sin_theta) / rn - 1.0;
        let factor = Complex64::new(0.0, -k);
        d_theta.push(entry * factor * ddelta_dtheta);
        d_range.push(entry * factor * ddelta_drange);
    }
    Ok(SteeringDerivatives { d_theta, d_range })
}

/// Normalized beampattern of a focus point over a `(theta, r)` grid:
/// `|a(focus)^H a(theta, r)| / N`, in `[0, 1]` with equality 1 at the focus.
pub fn beampattern(
    layout: &ArrayLayout,
    focus: &SourceParams,
    grid: &[(f64, f64)],
) -> Result<Vec<f64>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter {
            detail: "beampattern requires a non-empty (theta, range) grid".to_string(),
        });
    }
    let reference = spherical_steering(layout, focus)?;
    let n = layout.n_elements() as f64;
    grid.iter()
        .map(|&(theta, r)| {
            let probe = spherical_steering(layout, &focus.at_range(r)?.with_theta(theta)?)?;
            let dot: Complex64 = reference
                .entries()
                .iter()
                .zip(probe.entries())
                .map(|(f, g)| f.conj() * g)
                .sum();
            Ok(dot.norm() / n)
        })
        .collect()
}

/// Largest absolute per-entry phase difference `max_n |arg(a_n conj(b_n))|`.
///
/// Anchored at the shared phase reference (element 0), so a residual common
/// phase between the two models counts as error.
pub fn max_phase_error(a: &SteeringVector, b: &SteeringVector) -> Result<f64> {
    phase_differences(a, b).map(|d| d.into_iter().fold(0.0f64, |m, x| m.max(x.abs())))
}

/// Phase deviation after removing the best common phase:
/// `(max_n delta_n - min_n delta_n) / 2` with `delta_n = arg(a_n conj(b_n))`.
///
/// This measures how far the two wavefront shapes differ as observed by the
/// array, which is blind to a common phase; it is the natural far-field
/// convergence metric. Assumes the per-entry differences stay inside one
/// branch of `arg`.
pub fn aligned_phase_deviation(a: &SteeringVector, b: &SteeringVector) -> Result<f64> {
    let diffs = phase_differences(a, b)?;
    let max = diffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = diffs.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((max - min) / 2.0)
}

fn phase_differences(a: &SteeringVector, b: &SteeringVector) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter {
            detail: format!(
                "steering vectors must have equal length, got {} and {}",
                a.len(),
                b.len()
            ),
        });
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x * y.conj()).arg())
        .collect())
}
